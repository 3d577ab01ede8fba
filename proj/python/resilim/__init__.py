"""Control-energy resilience of LTI systems under adversarial disturbance.

The heavy lifting lives in the compiled ``_core`` extension; this package
just re-exports it under stable names.
"""

from ._core import (  # noqa: F401
    EpisodeKind,
    Gramian,
    LemmaCheck,
    LqController,
    LtiSystem,
    MinEnergy,
    NumericalError,
    ParseError,
    PlacementTable,
    ResilienceResult,
    ScenarioReport,
    Trajectory,
    TransferTask,
    UncontrollableError,
    UnreachableError,
    calibrate_lqr_scale,
    characteristic_time,
    controllability,
    defender_tilde_gramian,
    delta_x,
    design_lqr,
    energy_ratio_theoretical,
    episode_csv,
    gramian,
    gramian_infinite,
    is_stable,
    lemma_check,
    load_system,
    matrix_exponential,
    optimal_control,
    optimal_energy,
    pendula,
    placement_table,
    ranking_agreement,
    resilience_index,
    run_lq_episode,
    run_min_energy_episode,
    save_system,
    sweep,
)

__version__ = "0.1.0"
