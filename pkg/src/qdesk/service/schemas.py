"""Request/response models for the qdesk service and CLI.

Every response is a Report envelope: command name, toolkit version, the
fully resolved config (seed included) for provenance, and a result object.
Identical (command, seed) pairs serialize to byte-identical JSON.
"""
from __future__ import annotations

from typing import Any, Literal, Optional

from pydantic import BaseModel, Field

OutputMode = Literal["text", "json"]


class NoiseSpec(BaseModel):
    over_rotation_sigma: float = 0.0
    bitflip_p: float = 0.0
    idle_flip_p: float = 0.0


class RunConfig(BaseModel):
    seed: int = 0
    shots: int = Field(default=1000, ge=0)
    noise: Optional[NoiseSpec] = None
    output: OutputMode = "json"
    mode: Literal["statevector", "sampled"] = "sampled"


class Report(BaseModel):
    """Envelope for every service and CLI response."""

    name: str
    version: str
    seed: Optional[int] = None
    config: dict[str, Any]
    result: dict[str, Any]


class RunRequest(BaseModel):
    qasm: str
    shots: int = Field(default=1000, ge=0)
    seed: int = 0
    mode: Literal["statevector", "sampled"] = "sampled"
    noise: Optional[NoiseSpec] = None


class GroverRequest(BaseModel):
    n: int = Field(ge=1, le=8)
    target: int = Field(ge=0)
    seed: int = 0
    iterations: Optional[int] = None
    ceiling_formula: bool = False


class BvRequest(BaseModel):
    hidden: str
    seed: int = 0


class ShorRequest(BaseModel):
    n: int = Field(ge=4)
    seed: int = 0


class HhlRequest(BaseModel):
    matrix: list[list[float]] = Field(default=[[1.5, 0.5], [0.5, 1.5]])
    b: list[float]
    observable: Literal["x", "y", "z"]
    seed: int = 0
    shots: Optional[int] = None


class QaoaRequest(BaseModel):
    graph: Literal["edge", "triangle", "triangle_edge"] | None = None
    edges: Optional[list[tuple[int, int]]] = None
    n_nodes: Optional[int] = None
    gamma: list[float]
    beta: list[float]
    seed: int = 0
    shots: Optional[int] = None


class QaoaGridRequest(BaseModel):
    graph: Literal["edge", "triangle", "triangle_edge"] | None = None
    edges: Optional[list[tuple[int, int]]] = None
    n_nodes: Optional[int] = None
    rounds: int = Field(default=1, ge=1, le=3)
    resolution: float = Field(gt=0)


class WalkRequest(BaseModel):
    nodes: int = Field(default=4, ge=2)
    steps: int = Field(default=1, ge=0)
    start: int = 0
    seed: int = 0
    shots: Optional[int] = None


class VqeRequest(BaseModel):
    n_spins: int = Field(default=4, ge=2, le=10)
    h: float = 1.0
    periodic: bool = True
    ansatz: Literal["product", "entangled"] = "product"
    seed: int = 0
    shots: Optional[int] = None


class IsingExactRequest(BaseModel):
    n_spins: int = Field(default=4, ge=2, le=12)
    h: float = 1.0
    periodic: bool = True


class SchrodingerRequest(BaseModel):
    amplitudes: list[tuple[float, float]]       # [re, im] pairs
    phi: float = 0.0
    steps: int = Field(default=1, ge=0)
    potential: Optional[list[float]] = None


class MinFindRequest(BaseModel):
    values: list[float]
    seed: int = 0


class LayeredRequest(BaseModel):
    adjacency: list[list[int]]
    source: int = 0


class RepElementRequest(BaseModel):
    group: Literal["cyclic", "s3"]
    order: int = Field(default=4, ge=1)          # cyclic groups only
    element: int = 0
    superposition: list[int] = Field(default_factory=lambda: [0])
    part: Literal["real", "imaginary"] = "real"
    seed: int = 0
    shots: Optional[int] = None


class PcaRequest(BaseModel):
    x1: list[float]
    x2: list[float]
    seed: int = 0
    shots: Optional[int] = None


class PottsRequest(BaseModel):
    n_vertices: int = Field(ge=1)
    edges: list[tuple[int, int, float]]
    q: int = Field(default=2, ge=2)
    beta: float = 1.0
    fragment_shots: Optional[int] = None
    seed: int = 0


class PrepStateRequest(BaseModel):
    amplitudes: list[tuple[float, float]]        # [re, im] pairs, length 2/4/16


class SynthGateRequest(BaseModel):
    matrix: list[list[tuple[float, float]]]      # 4x4 of [re, im]


class TomographyRequest(BaseModel):
    """Estimate from a preset state, a QASM circuit's output state, or a
    prerecorded {basis -> {label -> count}} measurement record."""

    state: Literal["plus", "bell"] = "plus"
    qasm: Optional[str] = None
    record: Optional[dict[str, dict[str, int]]] = None
    shots: Optional[int] = None                  # None = exact frequencies
    seed: int = 0


class QecRequest(BaseModel):
    noise_kind: Literal["bitflip", "rotation", "both"] = "bitflip"
    p: float = Field(default=0.1, ge=0, le=1)
    sigma: float = Field(default=0.1, ge=0)
    idle_gates: int = 16
    shots: int = Field(default=100000, ge=1)
    seed: int = 0
