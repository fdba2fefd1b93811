import logging
from typing import Any, Dict, Optional, Tuple

from ..core.persistence import RunDirectory
from ..core.problem import default_initial_prior, load_spec, validate, with_epsilon
from ..core.solver import distance_to_final, solve
from ..errors import MIOCPError
from ..interfaces import IEventBus, ISolveService
from ..models import ProblemSpec, RunManifest, SolveConfig, SolveTrace, ToolResponse

logger = logging.getLogger(__name__)

TRACE_COLUMNS = ("iter", "J_total", "J_quadratic", "J_kl", "J_terminal",
                 "prior_step_w2")
HISTORY_ROWS = 2000


def load_manifest_spec(manifest: RunManifest) -> ProblemSpec:
    """The manifest's instance, with a single ``--epsilon`` value applied."""
    spec = validate(load_spec(manifest.spec_path))
    if len(manifest.epsilons) == 1:
        spec = with_epsilon(spec, manifest.epsilons[0])
    return spec


def solve_config(manifest: RunManifest) -> SolveConfig:
    defaults = SolveConfig()
    max_iters = (defaults.max_iters if manifest.max_iters is None
                 else manifest.max_iters)
    return SolveConfig(
        max_iters=max_iters,
        tol_prior_w2=(defaults.tol_prior_w2 if manifest.tol_prior_w2 is None
                      else manifest.tol_prior_w2),
        tol_objective=(defaults.tol_objective if manifest.tol_objective is None
                       else manifest.tol_objective),
        keep_history=True,
        history_every=max(1, -(-max_iters // HISTORY_ROWS)),
    )


class SolveService(ISolveService):
    """Runs the alternating minimization and writes its trace, policy and prior."""

    def __init__(self, event_bus: Optional[IEventBus] = None):
        self._event_bus = event_bus

    def solve(self, manifest: RunManifest) -> ToolResponse:
        try:
            spec = load_manifest_spec(manifest)
            _, summary = self.run(spec, manifest, RunDirectory(manifest.output_dir))
        except (MIOCPError, OSError) as e:
            return ToolResponse.failure(str(e))
        state = "converged" if summary["converged"] else "not converged"
        return ToolResponse(
            "success", summary,
            f"Solved in {summary['iterations']} iterations ({state}), "
            f"J = {summary['final_J']:.10g}")

    def run(self, spec: ProblemSpec, manifest: RunManifest,
            directory: RunDirectory) -> Tuple[SolveTrace, Dict[str, Any]]:
        trace = solve(spec, default_initial_prior(spec), solve_config(manifest),
                      self._event_bus)

        directory.write_csv("trace.csv", TRACE_COLUMNS, (
            (i, o.total, o.quadratic_cost, o.kl_cost, o.terminal_cost, w2)
            for i, o, w2 in zip(trace.iterations, trace.objective,
                                trace.prior_step_w2)))
        directory.write_csv(
            "distance_to_final.csv", ("iter", "distance_to_final_w2"),
            zip(trace.history_iterations, distance_to_final(trace.prior_history)))
        directory.write_json("policy.json", trace.final_policy.to_dict())
        directory.write_json("prior.json", trace.final_prior.to_dict())

        summary = {
            "name": spec.name,
            "epsilon": spec.epsilon,
            "T": spec.T,
            "iterations": trace.iterations_run,
            "converged": trace.converged,
            "final_J": trace.final_objective.total,
            "final_objective": trace.final_objective.to_dict(),
            "final_prior_step_w2": trace.prior_step_w2[-1],
        }
        directory.write_json("summary.json", summary)
        return trace, summary
