import logging
from typing import Any, Dict, Optional

import numpy as np

from ..core.montecarlo import empirical_moments, rollout, terminal_regression
from ..core.persistence import RunDirectory, load_policy
from ..core.prior_update import propagate_moments
from ..errors import MIOCPError
from ..interfaces import IEventBus, ISimulationService
from ..models import AffinePolicy, ProblemSpec, RunManifest, ToolResponse
from .solve_service import SolveService, load_manifest_spec

logger = logging.getLogger(__name__)


def dominant_direction_slope(cov: np.ndarray, coord_x: int = 0, coord_y: int = 1) -> float:
    """Slope of the leading eigenvector of ``cov`` in the (coord_x, coord_y) plane."""
    _, V = np.linalg.eigh(cov)
    lead = V[:, -1]
    return float(lead[coord_y] / lead[coord_x])


class SimulationService(ISimulationService):
    """Rolls out a policy and writes paths, the terminal scatter and its regression line.

    Without ``manifest.policy_path`` the policy is solved first into the same
    output directory.
    """

    def __init__(self,
                 solve_service: SolveService,
                 event_bus: Optional[IEventBus] = None):
        self._solve_service = solve_service
        self._event_bus = event_bus

    def simulate(self, manifest: RunManifest) -> ToolResponse:
        try:
            spec = load_manifest_spec(manifest)
            directory = RunDirectory(manifest.output_dir)
            solve_summary = None
            if manifest.policy_path is not None:
                policy = load_policy(manifest.policy_path)
            else:
                trace, solve_summary = self._solve_service.run(
                    spec, manifest, directory)
                policy = trace.final_policy
            summary = self.run(spec, policy, manifest, directory, solve_summary)
        except (MIOCPError, OSError) as e:
            return ToolResponse.failure(str(e))
        message = f"Simulated {manifest.num_paths} paths"
        if summary["regression"] is not None:
            message += f", terminal slope {summary['regression']['slope']:.4f}"
        return ToolResponse("success", summary, message)

    def run(self, spec: ProblemSpec, policy: AffinePolicy, manifest: RunManifest,
            directory: RunDirectory,
            solve_summary: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
        batch = rollout(spec, policy, manifest.num_paths, manifest.seed,
                        event_bus=self._event_bus)
        n, m = spec.n, spec.m

        def path_rows():
            for p in range(batch.num_paths):
                for k in range(spec.T + 1):
                    u = batch.inputs[p, k].tolist() if k < spec.T else [""] * m
                    yield [p, k] + batch.paths[p, k].tolist() + u

        directory.write_csv(
            "paths.csv",
            ["path_id", "k"] + [f"x{i}" for i in range(n)] + [f"u{j}" for j in range(m)],
            path_rows())
        directory.write_csv(
            "terminal_scatter.csv",
            ["path_id"] + [f"x{i}" for i in range(n)],
            ([p] + batch.terminal_states[p].tolist() for p in range(batch.num_paths)))

        regression = None
        if n > 1:
            slope, intercept = terminal_regression(batch, 0, 1)
            regression = {"coord_x": 0, "coord_y": 1, "slope": slope,
                          "intercept": intercept, "num_paths": batch.num_paths,
                          "seed": batch.seed}
            directory.write_json("terminal_regression.json", regression)
            logger.info("Simulation: terminal slope %.4f, intercept %.4f", slope,
                        intercept)

        empirical = empirical_moments(batch)
        analytic = propagate_moments(spec, policy)
        terminal_cov = empirical.state_cov[-1]
        summary = {
            "num_paths": batch.num_paths,
            "seed": batch.seed,
            "regression": regression,
            "empirical_terminal_mean": empirical.state_mean[-1].tolist(),
            "empirical_terminal_cov": terminal_cov.tolist(),
            "terminal_trace_cov": float(np.trace(terminal_cov)),
            "analytic_terminal_mean": analytic.mu_x[-1].tolist(),
            "analytic_terminal_cov": analytic.sigma_x[-1].tolist(),
        }
        if n > 1:
            summary["analytic_dominant_slope"] = dominant_direction_slope(
                analytic.sigma_x[-1])
        if solve_summary is not None:
            summary["solve"] = solve_summary
        directory.write_json("summary.json", summary)
        return summary
