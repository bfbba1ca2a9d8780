"""JSON persistence of fitted models and run outputs."""

import json
import math
from pathlib import Path
from typing import Any

from colatent_em import CoLatentModel
from contingency_table import LatentModelError
from em_model import FitTrace, LatentStructure
from latent_em import LatentModel
from network_em import NetworkCoModel, NetworkLatentModel

_MODEL_KINDS: dict[str, Any] = {
    "latent": LatentModel,
    "colatent": CoLatentModel,
    "network-latent": NetworkLatentModel,
    "network-co": NetworkCoModel,
}


def json_ready(value: Any) -> Any:
    """Replace non-finite floats by None, recursively."""
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, dict):
        return {key: json_ready(item) for key, item in value.items()}
    if isinstance(value, list | tuple):
        return [json_ready(item) for item in value]
    return value


def dump_json(path: Path, payload: Any) -> None:
    path.write_text(json.dumps(json_ready(payload), indent=2) + "\n", encoding="utf-8")


def save_model(model: LatentStructure, path: str | Path) -> Path:
    """Write a fitted model as JSON, arrays group-major."""
    target = Path(path)
    dump_json(target, model.to_dict())
    return target


def load_model(path: str | Path) -> LatentStructure:
    """Read a model written by save_model.

    Raises:
        LatentModelError: Unknown or missing model kind.
    """
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    kind = data.get("kind")
    model_cls = _MODEL_KINDS.get(kind)
    if model_cls is None:
        raise LatentModelError(f"{path}: unknown model kind {kind!r}")
    model: LatentStructure = model_cls.from_dict(data)
    return model


def write_trace(trace: FitTrace, path: Path) -> None:
    """One JSON object per line: {"iter", "kl"} and MH deviation if monitored."""
    lines = [json.dumps(json_ready(row)) for row in trace.records()]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


__all__ = ["dump_json", "json_ready", "load_model", "save_model", "write_trace"]
