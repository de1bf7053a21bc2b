from fractions import Fraction
from typing import Annotated, Literal
from pydantic import (
    AfterValidator,
    BaseModel as PydanticBaseModel,
    BeforeValidator,
    ConfigDict,
    Field,
    PlainSerializer,
    PositiveInt,
    model_serializer,
    model_validator,
)
from sympy.polys.rings import PolyElement
from constants import (
    A_METHODS,
    B_METHODS,
    BENCH,
    JSON,
    MODEL_A,
    MODEL_B,
    SOLVE,
    TABLE,
    VERIFY,
    X_VAR,
    Z_VAR,
)
from utils.exact import format_rational, to_fraction
from utils.sympoly import poly_from_json, poly_to_json
from validators import is_nonnegative, is_positive


def _upper(val):
    return val.upper() if isinstance(val, str) else val


def _as_label(val):
    return tuple(val) if isinstance(val, (list, tuple)) else val


Rational = Annotated[
    Fraction, BeforeValidator(to_fraction), PlainSerializer(format_rational, return_type=str)
]
PositiveRational = Annotated[Rational, AfterValidator(is_positive)]
Label = Annotated[tuple[int, ...], BeforeValidator(_as_label)]
Method = Literal["theorem1", "theorem2", "bmodel", "sutherland"]


class BaseModel(PydanticBaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)


def _coeff_terms(entries: dict, key: str) -> list[dict]:
    return [
        {key: list(label), "coeff": format_rational(coeff)}
        for label, coeff in sorted(entries.items(), reverse=True)
    ]


class ModelParams(BaseModel):
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    model: Annotated[Literal["A", "B"], BeforeValidator(_upper)]
    N: PositiveInt
    lam: PositiveRational = Field(alias="lambda")
    mu: PositiveRational | None = None

    @model_validator(mode="after")
    def mu_only_for_b(self):
        if self.model == MODEL_B and self.mu is None:
            raise ValueError("Model B needs mu")
        if self.model == MODEL_A and self.mu is not None:
            raise ValueError("Model A takes no mu")
        return self

    @property
    def var(self) -> str:
        return Z_VAR if self.model == MODEL_B else X_VAR

    def with_lambda(self, lam) -> "ModelParams":
        return self.model_copy(update={"lam": to_fraction(lam)})


class ActionRow(BaseModel):
    source: Label
    entries: dict[Label, Rational]

    @model_serializer
    def to_document(self) -> dict:
        return {"source": list(self.source), "entries": _coeff_terms(self.entries, "partition")}


class ConstraintSolution(BaseModel):
    model_config = ConfigDict(frozen=True)

    kappa: tuple[tuple[int, ...], ...]
    nu: tuple[tuple[int, ...], ...]

    @property
    def exponents(self) -> tuple[int, ...]:
        return tuple(sum(row) for row in self.nu)

    def residuals(self, n: tuple[int, ...]) -> tuple[int, ...]:
        N = len(n)
        return tuple(
            n[j]
            - sum(self.kappa[l][j] for l in range(j))
            + sum(self.kappa[j][l] for l in range(j + 1, N))
            - sum(self.nu[l][j] for l in range(N))
            for j in range(N)
        )


class StepDescriptor(BaseModel):
    model_config = ConfigDict(frozen=True)

    j: int
    k: int
    nu: Annotated[int, AfterValidator(is_nonnegative)]
    t: Annotated[int, AfterValidator(is_nonnegative)] = 0
    u: Annotated[int, AfterValidator(is_nonnegative)] = 0
    shift: Label

    @model_validator(mode="after")
    def ordered(self):
        assert self.j <= self.k, "Step indices must satisfy j <= k"
        return self


class CoeffTable(BaseModel):
    target: Label
    entries: dict[Label, Rational]
    method: Method

    @model_validator(mode="after")
    def normalized(self):
        assert self.entries.get(self.target) == 1, "Target coefficient must be 1"
        return self

    @model_serializer
    def to_document(self) -> list[dict]:
        return _coeff_terms(self.entries, "label")


class EigenRecord(BaseModel):
    params: ModelParams
    label: Label
    method: Method
    energy: Rational
    coeffs: CoeffTable
    poly: PolyElement

    @model_serializer
    def to_document(self) -> dict:
        return {
            "model": self.params.model,
            "N": self.params.N,
            "lambda": format_rational(self.params.lam),
            "mu": None if self.params.mu is None else format_rational(self.params.mu),
            "label": list(self.label),
            "method": self.method,
            "energy": format_rational(self.energy),
            "coeffs": self.coeffs.to_document(),
            "poly": poly_to_json(self.poly),
        }

    @classmethod
    def from_document(cls, doc: dict) -> "EigenRecord":
        params = ModelParams(model=doc["model"], N=doc["N"], lam=doc["lambda"], mu=doc["mu"])
        label = tuple(doc["label"])
        entries = {tuple(t["label"]): t["coeff"] for t in doc["coeffs"]}
        return cls(
            params=params,
            label=label,
            method=doc["method"],
            energy=doc["energy"],
            coeffs=CoeffTable(target=label, entries=entries, method=doc["method"]),
            poly=poly_from_json(doc["poly"], params.N, params.var),
        )


class VerifyCheck(BaseModel):
    name: str
    passed: bool
    witness: PolyElement | str | None = None
    detail: str | None = None

    @model_validator(mode="after")
    def no_witness_on_pass(self):
        assert not (self.passed and self.witness is not None), "Passing checks carry no witness"
        return self

    @model_serializer
    def to_document(self) -> dict:
        witness = self.witness
        if isinstance(witness, PolyElement):
            witness = poly_to_json(witness)
        return {"name": self.name, "passed": self.passed, "witness": witness, "detail": self.detail}


class VerifyReport(BaseModel):
    subject: str
    checks: list[VerifyCheck] = []

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @model_serializer
    def to_document(self) -> dict:
        return {
            "subject": self.subject,
            "passed": self.passed,
            "checks": [check.to_document() for check in self.checks],
        }


class JobSpec(BaseModel):
    command: Literal["solve", "table", "verify", "bench"]
    params: ModelParams
    labels: list[Label] = []
    max_weight: int | None = None
    methods: list[Method]
    output_format: Literal["json", "text", "latex"] = JSON
    verify: bool = False
    include_labels: bool = False
    cache_dir: str | None = None
    paranoid: bool = False
    jobs: PositiveInt = 1

    @model_validator(mode="after")
    def has_work(self):
        allowed = B_METHODS if self.params.model == MODEL_B else A_METHODS
        for method in self.methods:
            assert method in allowed, f"{method} does not apply to model {self.params.model}"
        if self.command == SOLVE:
            assert self.labels, "solve needs at least one label"
            for label in self.labels:
                assert len(label) == self.params.N, f"Label {label} must have {self.params.N} entries"
        if self.command in (TABLE, VERIFY, BENCH):
            assert self.max_weight is not None, f"{self.command} needs --max-weight"
            assert self.max_weight >= 0, "--max-weight must be non-negative"
        return self


class CacheEntry(BaseModel):
    key: str
    value: str


class TableRow(BaseModel):
    label: Label
    method: Method
    energy: Rational
    leading: dict[Label, Rational]

    @model_serializer
    def to_document(self) -> dict:
        return {
            "label": list(self.label),
            "method": self.method,
            "energy": format_rational(self.energy),
            "leading": _coeff_terms(self.leading, "partition"),
        }


class BenchRow(BaseModel):
    operation: str
    label: Label
    size: int
    terms: int
    seconds: float
