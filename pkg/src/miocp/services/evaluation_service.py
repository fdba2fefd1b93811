from pathlib import Path

from ..core.evaluation import evaluate_objective
from ..core.persistence import RunDirectory, load_policy, load_prior
from ..errors import MIOCPError
from ..interfaces import IEvaluationService
from ..models import RunManifest, ToolResponse
from .solve_service import load_manifest_spec


class EvaluationService(IEvaluationService):
    """Evaluates J for a stored policy/prior pair (defaults: the output directory's
    ``policy.json`` and ``prior.json``)."""

    def evaluate(self, manifest: RunManifest) -> ToolResponse:
        directory = RunDirectory(manifest.output_dir)
        policy_path = manifest.policy_path or directory.path("policy.json")
        prior_path = manifest.prior_path or directory.path("prior.json")
        try:
            spec = load_manifest_spec(manifest)
            objective = evaluate_objective(spec, load_policy(policy_path),
                                           load_prior(prior_path))
            data = objective.to_dict()
            directory.write_json("objective.json", data)
        except (MIOCPError, OSError) as e:
            return ToolResponse.failure(str(e))
        return ToolResponse("success", data,
                            f"J = {objective.total:.10g} for {Path(policy_path).name}")
