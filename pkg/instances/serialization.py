"""Versioned ``.sfsi.json`` instance documents."""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import List, Mapping, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, validator

from core.errors import ParseError
from core.system import CostMatrix, Link, StructuredSystem

logger = logging.getLogger(__name__)

FORMAT_VERSION = 1
FILE_SUFFIX = ".sfsi.json"


class InstanceDocument(BaseModel):
    """On-disk schema; unknown keys are rejected."""

    model_config = ConfigDict(extra="forbid")

    version: int = Field(FORMAT_VERSION, description="Schema version")
    n: int = Field(..., ge=0, description="Number of states")
    state_edges: List[Tuple[int, int]] = Field(default_factory=list, description="[from, to] state pairs")
    inputs: List[int] = Field(default_factory=list, description="State actuated by each input")
    outputs: List[int] = Field(default_factory=list, description="State sensed by each output")
    costs: List[Tuple[int, int, float]] = Field(default_factory=list, description="[input, output, cost] triples")

    @validator('version')
    def validate_version(cls, v):
        if v != FORMAT_VERSION:
            raise ValueError(f"Unsupported instance version {v}; expected {FORMAT_VERSION}")
        return v


def _position(text: str, needle: str) -> Tuple[int, int]:
    offset = text.find(needle)
    if offset < 0:
        return 1, 1
    line = text.count("\n", 0, offset) + 1
    column = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, column


def _number(value: float) -> Union[int, float]:
    return int(value) if float(value).is_integer() else value


def read_instance(data: Union[bytes, str]) -> Tuple[StructuredSystem, CostMatrix]:
    """Decode a document; every failure becomes a ParseError with a line and column."""

    if isinstance(data, bytes):
        try:
            text = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            head = data[: exc.start]
            line = head.count(b"\n") + 1
            column = exc.start - (head.rfind(b"\n") + 1) + 1
            raise ParseError(f"Invalid UTF-8 byte 0x{data[exc.start]:02x}", line, column) from None
    else:
        text = data
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(raw, dict):
        raise ParseError("Instance document must be a JSON object")

    try:
        doc = InstanceDocument(**raw)
    except ValidationError as exc:
        first = exc.errors()[0]
        key = next((str(part) for part in first["loc"] if isinstance(part, str)), "")
        line, column = _position(text, f'"{key}"') if key else (1, 1)
        where = ".".join(str(part) for part in first["loc"])
        raise ParseError(f"{where}: {first['msg']}", line, column) from None

    entries = {}
    for i, j, cost in doc.costs:
        if (i, j) in entries:
            line, column = _position(text, '"costs"')
            raise ParseError(f"Duplicate cost entry for u{i}:y{j}", line, column)
        entries[(i, j)] = cost
    try:
        P = CostMatrix(entries)
        sys = StructuredSystem(doc.n, frozenset(doc.state_edges), tuple(doc.inputs), tuple(doc.outputs))
    except ValueError as exc:
        line, column = _position(text, '"costs"')
        raise ParseError(str(exc), line, column) from None
    return sys, P


def instance_to_json(sys: StructuredSystem, P: Mapping[Link, float]) -> dict:
    return {
        "version": FORMAT_VERSION,
        "n": sys.n,
        "state_edges": [[j, i] for j, i in sys.sorted_edges()],
        "inputs": list(sys.input_state),
        "outputs": list(sys.output_state),
        "costs": [[i, j, _number(P[(i, j)])] for i, j in sorted(P)],
    }


def write_instance(sys: StructuredSystem, P: Mapping[Link, float]) -> bytes:
    """Deterministic encoding: sorted edges and costs, integral costs written as integers."""

    return (json.dumps(instance_to_json(sys, P), indent=2) + "\n").encode("utf-8")


def load_instance(path: Union[str, Path]) -> Tuple[StructuredSystem, CostMatrix]:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Instance file not found: {path}")
    logger.debug("Reading instance %s", path)
    return read_instance(path.read_bytes())


def save_instance(path: Union[str, Path], sys: StructuredSystem, P: Mapping[Link, float]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(write_instance(sys, P))
    return path
