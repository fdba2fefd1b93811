"""Run output files. Floats are written with ``repr`` so every dump re-loads bit-exactly."""
import csv
import json
import logging
from pathlib import Path
from typing import Any, Dict, Iterable, Sequence, Union

from ..errors import ConfigFormatError
from ..models.problem_model import AffinePolicy, PriorSequence

logger = logging.getLogger(__name__)


class RunDirectory:
    """One output directory of a CLI command."""

    def __init__(self, root: Union[str, Path]):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)

    def path(self, name: str) -> Path:
        return self.root / name

    def subdirectory(self, name: str) -> "RunDirectory":
        return RunDirectory(self.root / name)

    def write_json(self, name: str, data: Dict[str, Any]) -> Path:
        target = self.path(name)
        with open(target, "w") as f:
            json.dump(data, f, indent=2)
        logger.debug("Persistence: wrote %s", target)
        return target

    def write_csv(self, name: str, header: Sequence[str],
                  rows: Iterable[Sequence[Any]]) -> Path:
        target = self.path(name)
        with open(target, "w", newline="") as f:
            writer = csv.writer(f)
            writer.writerow(header)
            writer.writerows(rows)
        logger.debug("Persistence: wrote %s", target)
        return target


def read_json(path: Union[str, Path]) -> Dict[str, Any]:
    path = Path(path)
    try:
        with open(path, "r") as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        raise ConfigFormatError(f"invalid JSON in {path}: {e.msg}",
                                line=e.lineno, column=e.colno) from e


def load_policy(path: Union[str, Path]) -> AffinePolicy:
    data = read_json(path)
    try:
        return AffinePolicy.from_dict(data)
    except KeyError as e:
        raise ConfigFormatError(f"policy file {path} is missing a field",
                                field=str(e.args[0])) from e


def load_prior(path: Union[str, Path]) -> PriorSequence:
    data = read_json(path)
    try:
        return PriorSequence.from_dict(data)
    except KeyError as e:
        raise ConfigFormatError(f"prior file {path} is missing a field",
                                field=str(e.args[0])) from e
