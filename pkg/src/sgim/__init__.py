"""Goal-babbling learners for a redundant synthetic throwing arm.

The package provides a smooth, redundant 24-parameter arm environment, an
episodic memory with exact task-space nearest-neighbor queries, an
interest-driven region tree for goal self-generation, a two-regime goal
reacher with Nelder-Mead refinement, a scripted demonstration teacher, and
the experiment harness comparing four learning strategies.
"""

from .env import (ACTION_DIM, Bounds, EnvConfig, TASK_DIAMETER, action_bounds,
                  bezier_eval, flatten_action, noiseless, origin_outcome,
                  rest_action, simulate, simulate_batch, unflatten_action)
from .memory import (AUTONOMOUS, DEMONSTRATION, IMITATION, EmptyMemoryError,
                     Exemplar, Memory)
from .regions import (CompetenceParams, GoalAttempt, InterestParams, Region,
                      RegionTree, competence, generate_goal, interest,
                      rescaled_distance, select_region, selection_weights,
                      similarity)
from .reaching import (DirectExecutor, ReachingConfig, ReachingOutcomeRecord,
                       choose_regime, exploit_action, explore_action,
                       nelder_mead, reach)
from .teacher import (Demonstration, TeacherConfig, build_demo_set, imitate,
                      load_demo_set, next_demo, perturbed_replay, save_demo_set)
from .experiment import (Benchmark, EvalCheckpoint, ExperimentConfig,
                         MovementEvent, RunLog, Runner, STRATEGIES,
                         build_benchmark, coverage_cell_indices, evaluate,
                         event_lines, export_runs, load_benchmark,
                         run_strategy, save_benchmark)
from .config import default_config, load_config, save_config

__version__ = "0.1.0"
