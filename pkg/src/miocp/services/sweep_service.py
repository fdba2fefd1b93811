import dataclasses
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Dict

from ..config import Settings
from ..core.persistence import RunDirectory
from ..core.problem import load_spec, validate, with_epsilon
from ..errors import MIOCPError
from ..interfaces import ISweepService
from ..models import ProblemSpec, RunManifest, ToolResponse
from .simulation_service import SimulationService
from .solve_service import SolveService

logger = logging.getLogger(__name__)

SUMMARY_COLUMNS = ("epsilon", "iterations", "converged", "J_total",
                   "terminal_trace_cov")


def epsilon_label(epsilon: float) -> str:
    """Directory name for one sweep entry; distinct floats get distinct labels."""
    text = repr(float(epsilon))
    if text.endswith(".0"):
        text = text[:-2]
    return f"eps_{text}"


class SweepService(ISweepService):
    """Solves one instance for several epsilon values, one subdirectory each.

    Paths are simulated too when ``manifest.num_paths`` > 1.
    """

    def __init__(self, solve_service: SolveService,
                 simulation_service: SimulationService):
        self._solve_service = solve_service
        self._simulation_service = simulation_service

    def sweep(self, manifest: RunManifest) -> ToolResponse:
        if not manifest.epsilons:
            return ToolResponse.failure("sweep needs at least one epsilon value")
        labels = [epsilon_label(eps) for eps in manifest.epsilons]
        if len(set(labels)) != len(labels):
            return ToolResponse.failure(
                f"sweep epsilon values must be distinct, got {list(manifest.epsilons)}")
        try:
            base = validate(load_spec(manifest.spec_path))
            root = RunDirectory(manifest.output_dir)
            workers = max(1, min(Settings.from_env().threads, len(manifest.epsilons)))
            with ThreadPoolExecutor(max_workers=workers) as pool:
                futures = [
                    pool.submit(self._run_entry, base, manifest, root, eps)
                    for eps in manifest.epsilons
                ]
                rows = [future.result() for future in futures]
            root.write_csv("sweep_summary.csv", SUMMARY_COLUMNS,
                           ([row[c] for c in SUMMARY_COLUMNS] for row in rows))
        except (MIOCPError, OSError) as e:
            return ToolResponse.failure(str(e))
        return ToolResponse("success", {"entries": rows},
                            f"Swept {len(rows)} epsilon values")

    def _run_entry(self, base: ProblemSpec, manifest: RunManifest, root: RunDirectory,
                   epsilon: float) -> Dict[str, Any]:
        spec = with_epsilon(base, epsilon)
        directory = root.subdirectory(epsilon_label(epsilon))
        entry_manifest = dataclasses.replace(manifest,
                                             output_dir=directory.root,
                                             epsilons=(epsilon, ))
        trace, summary = self._solve_service.run(spec, entry_manifest, directory)
        row: Dict[str, Any] = {
            "epsilon": epsilon,
            "iterations": summary["iterations"],
            "converged": summary["converged"],
            "J_total": summary["final_J"],
            "terminal_trace_cov": "",
        }
        if manifest.num_paths > 1:
            simulated = self._simulation_service.run(spec, trace.final_policy,
                                                     entry_manifest, directory,
                                                     summary)
            row["terminal_trace_cov"] = simulated["terminal_trace_cov"]
        logger.info("Sweep: epsilon=%g done (J=%.10g)", epsilon, row["J_total"])
        return row
