"""Request and response bodies for the service endpoints.

States cross the wire either as structured specs (requests) or as snapshot
text (responses), so the service itself stays stateless: whatever a
response hands back can be fed verbatim into the next request.
"""
from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, Field, model_validator

from ..config import StateSpec

GateName = Literal[
    "discrete_cnot",
    "continuous_cnot",
    "cprime_first_order",
    "cprime_exact",
    "nonunitary_cont",
]


class ComplexModel(BaseModel):
    re: float
    im: float = 0.0

    def to_complex(self) -> complex:
        return complex(self.re, self.im)


class AmplitudeEntry(BaseModel):
    index: int = Field(ge=0)
    re: float
    im: float = 0.0


class StateSpecModel(BaseModel):
    """Exactly one of basis, excited or amplitudes."""

    basis: int | None = Field(default=None, ge=0)
    excited: list[int] | None = None
    amplitudes: list[AmplitudeEntry] | None = None

    @model_validator(mode="after")
    def _exactly_one_form(self) -> "StateSpecModel":
        forms = [
            form
            for form in (self.basis, self.excited, self.amplitudes)
            if form is not None
        ]
        if len(forms) != 1:
            raise ValueError("state spec needs exactly one of basis/excited/amplitudes")
        return self

    def to_spec(self) -> StateSpec:
        if self.basis is not None:
            return StateSpec(kind="basis", basis=self.basis)
        if self.excited is not None:
            return StateSpec(kind="excited", excited=tuple(self.excited))
        assert self.amplitudes is not None
        return StateSpec(
            kind="amplitudes",
            amplitudes=tuple(
                (entry.index, complex(entry.re, entry.im)) for entry in self.amplitudes
            ),
        )

    @classmethod
    def from_spec(cls, spec: StateSpec) -> "StateSpecModel":
        if spec.kind == "basis":
            return cls(basis=spec.basis)
        if spec.kind == "excited":
            return cls(excited=list(spec.excited))
        return cls(
            amplitudes=[
                AmplitudeEntry(index=index, re=value.real, im=value.imag)
                for index, value in spec.amplitudes
            ]
        )


class DominanceEntryModel(BaseModel):
    index: int
    magnitude: float
    re: float
    im: float


class SnapshotModel(BaseModel):
    sweep: int
    text: str


class EvolveRequest(BaseModel):
    n: int = Field(default=3, ge=2)
    gate: GateName = "cprime_exact"
    theta: float = 0.01
    steps: int = Field(default=1000, ge=0)
    renormalize: bool | None = None
    snapshot_every: int = Field(default=0, ge=0)
    initial: StateSpecModel = Field(default_factory=lambda: StateSpecModel(basis=0))
    top_k: int = Field(default=8, ge=1)


class EvolveResponse(BaseModel):
    n: int
    gate: GateName
    theta: float
    steps: int
    final_norm: float
    head: list[DominanceEntryModel]
    snapshots: list[SnapshotModel]


AnalysisKind = Literal["dominance", "backproject", "period", "uniformity"]


class AnalyzeRequest(BaseModel):
    kind: AnalysisKind
    snapshots: list[str] = Field(min_length=1)  # file contents, not paths
    k: int = Field(default=8, ge=1)
    ratio: float = Field(default=0.8, gt=0.0, le=1.0)
    delta: float = Field(default=1e-6, gt=0.0)


class AnalyzeResponse(BaseModel):
    kind: AnalysisKind
    head: list[DominanceEntryModel] | None = None
    dominant_indices: list[int] | None = None
    back_projected: int | None = None
    period: int | None = None
    recurrence_fidelity: float | None = None
    uniformity_deviation: float | None = None


class PrepareRequest(BaseModel):
    n: int = Field(default=3, ge=2)
    a: ComplexModel
    b: ComplexModel
    x: StateSpecModel
    x_prime: StateSpecModel
    top_k: int = Field(default=8, ge=1)


class PrepareResponse(BaseModel):
    n: int
    norm: float
    head: list[DominanceEntryModel]
    snapshot: SnapshotModel


class DetectRequest(BaseModel):
    n: int = Field(default=3, ge=2)
    target: StateSpecModel | None = None
    target_snapshot: str | None = None  # snapshot text, not a path
    iterations: int | None = Field(default=None, ge=0)  # None = optimal
    trials: int = Field(default=1000, ge=1)
    seed: int = Field(default=0, ge=0, lt=2**64)

    @model_validator(mode="after")
    def _exactly_one_target(self) -> "DetectRequest":
        if (self.target is None) == (self.target_snapshot is None):
            raise ValueError("detect needs exactly one of target/target_snapshot")
        return self


class DetectResponse(BaseModel):
    dim: int
    iterations: int
    expected_probability: float
    target_probability: float
    frequency: float
    trials: int
    seed: int


class HealthResponse(BaseModel):
    status: Literal["ok"]
    version: str
