"""Problem instances: validation, JSON ingestion and serialization."""
import dataclasses
import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

import numpy as np

from ..errors import ConfigFormatError, DimensionMismatchError, SpecValidationError
from ..models.gaussian_model import Gaussian
from ..models.problem_model import PriorSequence, ProblemSpec
from .linalg import is_positive_definite, reciprocal_condition

logger = logging.getLogger(__name__)

RCOND_THRESHOLD = 1e-12

PER_STEP_FIELDS = ("A", "B", "sigma_w", "R")
REQUIRED_FIELDS = ("T", "A", "B", "sigma_w", "R", "F", "epsilon", "mu_ini",
                   "sigma_ini", "mu_fin")

Problem = Tuple[str, Optional[int], str]


def _shape_problems(spec: ProblemSpec) -> List[Problem]:
    problems: List[Problem] = []
    T = spec.T
    if not isinstance(T, (int, np.integer)) or T < 1:
        return [("T", None, f"T must be a positive integer, got {T!r}")]

    for name in PER_STEP_FIELDS:
        seq = getattr(spec, name)
        if len(seq) != T:
            problems.append(
                (name, None, f"{name} has {len(seq)} entries, expected T={T}"))
    if problems:
        return problems

    n = np.shape(spec.mu_ini)[0] if np.ndim(spec.mu_ini) == 1 else None
    if n is None:
        return [("mu_ini", None, "mu_ini must be a vector")]
    m = np.shape(spec.B[0])[1] if np.ndim(spec.B[0]) == 2 else None
    if m is None:
        return [("B", 0, "B must be an n x m matrix")]

    expected = {"A": (n, n), "B": (n, m), "sigma_w": (n, n), "R": (m, m)}
    for name, shape in expected.items():
        for k, M in enumerate(getattr(spec, name)):
            if np.shape(M) != shape:
                problems.append(
                    (name, k, f"{name} has shape {np.shape(M)}, expected {shape}"))
    for name, shape in (("F", (n, n)), ("sigma_ini", (n, n)), ("mu_fin", (n, ))):
        if np.shape(getattr(spec, name)) != shape:
            problems.append((name, None,
                             f"{name} has shape {np.shape(getattr(spec, name))}, expected {shape}"))
    if spec.prior_init is not None and spec.prior_init.dim != m:
        problems.append(("prior_init", None,
                         f"prior_init has dimension {spec.prior_init.dim}, expected m={m}"))
    return problems


def validate(spec: ProblemSpec) -> ProblemSpec:
    """Check every invariant of the instance and return it marked as validated.

    All violations are collected; the raised error names the first offending
    field and time index.
    """
    problems = _shape_problems(spec)
    if not problems:
        if not (np.isfinite(spec.epsilon) and spec.epsilon > 0):
            problems.append(("epsilon", None,
                             f"epsilon must be positive, got {spec.epsilon}"))
        for name in ("R", "sigma_w"):
            for k, M in enumerate(getattr(spec, name)):
                if not is_positive_definite(M):
                    problems.append((name, k, f"{name} not PD"))
        for name in ("F", "sigma_ini"):
            if not is_positive_definite(getattr(spec, name)):
                problems.append((name, None, f"{name} not PD"))
        for k, A in enumerate(spec.A):
            rcond = reciprocal_condition(A)
            if rcond <= RCOND_THRESHOLD:
                problems.append(
                    ("A", k, f"A_k not invertible (rcond={rcond:.1e})"))

    if problems:
        field, k, _ = problems[0]
        details = "; ".join(
            msg + (f" at k={idx}" if idx is not None else "")
            for _, idx, msg in problems)
        logger.debug("Problem: validation failed: %s", details)
        raise SpecValidationError(details, field=field, k=k)
    checked = dataclasses.replace(spec)
    object.__setattr__(checked, "validated", True)
    return checked


# --------------------------------------------------------------------------
# JSON ingestion
# --------------------------------------------------------------------------


def _as_array(value: Any, field: str) -> np.ndarray:
    try:
        return np.asarray(value, dtype=float)
    except (TypeError, ValueError) as e:
        raise ConfigFormatError(f"not a numeric array: {e}", field=field) from e


def _matrix(value: Any, field: str) -> np.ndarray:
    arr = _as_array(value, field)
    if arr.ndim == 0:
        return arr.reshape(1, 1)
    if arr.ndim != 2:
        raise ConfigFormatError(
            f"expected a matrix, got an array with {arr.ndim} dimensions",
            field=field)
    return arr


def _vector(value: Any, field: str) -> np.ndarray:
    arr = _as_array(value, field)
    if arr.ndim == 0:
        return arr.reshape(1)
    if arr.ndim != 1:
        raise ConfigFormatError(
            f"expected a vector, got an array with {arr.ndim} dimensions",
            field=field)
    return arr


def _per_step(value: Any, field: str, T: int) -> Tuple[np.ndarray, ...]:
    arr = _as_array(value, field)
    if arr.ndim in (0, 2):
        M = _matrix(arr, field)
        return tuple(M.copy() for _ in range(T))
    if arr.ndim == 3:
        if arr.shape[0] != T:
            raise ConfigFormatError(
                f"shape mismatch: {arr.shape[0]} matrices given for T={T}",
                field=field)
        return tuple(arr[k].copy() for k in range(T))
    raise ConfigFormatError(
        "expected one matrix or a list of T matrices", field=field)


def spec_from_dict(data: Dict[str, Any]) -> ProblemSpec:
    if not isinstance(data, dict):
        raise ConfigFormatError("top-level JSON value must be an object")
    for key in REQUIRED_FIELDS:
        if key not in data:
            raise ConfigFormatError("missing field", field=key)

    T = data["T"]
    if isinstance(T, bool) or not isinstance(T, int) or T < 1:
        raise ConfigFormatError(f"T must be a positive integer, got {T!r}",
                                field="T")
    try:
        epsilon = float(data["epsilon"])
    except (TypeError, ValueError) as e:
        raise ConfigFormatError("epsilon must be a number",
                                field="epsilon") from e

    prior_init = None
    if data.get("prior_init") is not None:
        block = data["prior_init"]
        if not isinstance(block, dict) or "mu" not in block or "sigma" not in block:
            raise ConfigFormatError("prior_init needs 'mu' and 'sigma'",
                                    field="prior_init")
        prior_init = Gaussian(_vector(block["mu"], "prior_init.mu"),
                              _matrix(block["sigma"], "prior_init.sigma"))

    spec = ProblemSpec(
        T=T,
        A=_per_step(data["A"], "A", T),
        B=_per_step(data["B"], "B", T),
        sigma_w=_per_step(data["sigma_w"], "sigma_w", T),
        R=_per_step(data["R"], "R", T),
        F=_matrix(data["F"], "F"),
        epsilon=epsilon,
        mu_ini=_vector(data["mu_ini"], "mu_ini"),
        sigma_ini=_matrix(data["sigma_ini"], "sigma_ini"),
        mu_fin=_vector(data["mu_fin"], "mu_fin"),
        prior_init=prior_init,
        name=str(data.get("name", "")),
    )
    problems = _shape_problems(spec)
    if problems:
        field, k, msg = problems[0]
        where = f"{field}[{k}]" if k is not None else field
        raise ConfigFormatError(f"shape mismatch: {msg}", field=where)
    return spec


def load_spec(path: Union[str, Path]) -> ProblemSpec:
    path = Path(path)
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise ConfigFormatError(f"invalid JSON in {path}: {e.msg}",
                                line=e.lineno,
                                column=e.colno) from e
    spec = spec_from_dict(data)
    logger.info("Problem: loaded '%s' (T=%d, n=%d, m=%d, epsilon=%g)",
                path.name, spec.T, spec.n, spec.m, spec.epsilon)
    return spec


def _per_step_to_json(seq: Tuple[np.ndarray, ...]) -> list:
    if all(np.array_equal(seq[0], M) for M in seq[1:]):
        return seq[0].tolist()
    return [M.tolist() for M in seq]


def spec_to_dict(spec: ProblemSpec) -> Dict[str, Any]:
    data: Dict[str, Any] = {}
    if spec.name:
        data["name"] = spec.name
    data.update({
        "T": int(spec.T),
        "A": _per_step_to_json(spec.A),
        "B": _per_step_to_json(spec.B),
        "sigma_w": _per_step_to_json(spec.sigma_w),
        "R": _per_step_to_json(spec.R),
        "F": np.asarray(spec.F).tolist(),
        "epsilon": float(spec.epsilon),
        "mu_ini": np.asarray(spec.mu_ini).tolist(),
        "sigma_ini": np.asarray(spec.sigma_ini).tolist(),
        "mu_fin": np.asarray(spec.mu_fin).tolist(),
    })
    if spec.prior_init is not None:
        data["prior_init"] = spec.prior_init.to_dict()
    return data


def dump_spec(spec: ProblemSpec, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(spec_to_dict(spec), f, indent=2)
    return path


# --------------------------------------------------------------------------
# Convenience constructors
# --------------------------------------------------------------------------


def with_epsilon(spec: ProblemSpec, epsilon: float) -> ProblemSpec:
    return validate(dataclasses.replace(spec, epsilon=float(epsilon)))


def default_initial_prior(spec: ProblemSpec) -> PriorSequence:
    """N(0, I) at every step, or the instance's ``prior_init`` when given."""
    prior = spec.prior_init if spec.prior_init is not None else Gaussian.standard(spec.m)
    return PriorSequence.constant(prior, spec.T)


def two_state_experiment_spec(epsilon: float = 4.0, T: int = 50) -> ProblemSpec:
    A = np.array([[0.9, 0.2], [0.1, 1.1]])
    B = np.array([[0.0], [0.2]])
    return validate(
        ProblemSpec(
            T=T,
            A=tuple(A.copy() for _ in range(T)),
            B=tuple(B.copy() for _ in range(T)),
            sigma_w=tuple(1e-3 * np.eye(2) for _ in range(T)),
            R=tuple(np.eye(1) for _ in range(T)),
            F=10.0 * np.eye(2),
            epsilon=float(epsilon),
            mu_ini=np.zeros(2),
            sigma_ini=np.eye(2),
            mu_fin=np.array([2.0, 2.0]),
            name=f"two-state experiment (epsilon={epsilon:g})",
        ))


def ensure_validated(spec: ProblemSpec) -> ProblemSpec:
    return spec if spec.validated else validate(spec)


def check_prior(spec: ProblemSpec, prior: PriorSequence):
    if len(prior) != spec.T:
        raise DimensionMismatchError(
            f"prior has {len(prior)} steps, expected T={spec.T}")
    for k, rho in enumerate(prior):
        if rho.dim != spec.m:
            raise DimensionMismatchError(
                f"prior at k={k} has dimension {rho.dim}, expected m={spec.m}")
