"""
Verifier report schemas.

Every verifier returns one of these; the CLI serializes them as its JSON verdict.
"""

from typing import Any

from pydantic import Field

from src.schemas.common import BaseSchema

# A report descriptor: [q1, q2] for binary intervals, a list of extreme-point vectors otherwise.
ReportDescriptor = list[Any]


class PairViolation(BaseSchema):
    """A (belief, misreport) pair where truthful reporting is not strictly better."""

    belief: list[float] = Field(..., description="True belief p")
    report: list[float] = Field(..., description="Misreport q")
    truthful_value: float = Field(..., description="E_p[s(p, o)]")
    misreport_value: float = Field(..., description="E_p[s(q, o)]")


class StrictnessReport(BaseSchema):
    """Outcome of sampling (p, q) pairs against a precise scoring rule."""

    rule: str = Field(..., description="Rule name")
    trials: int = Field(..., ge=1, description="Number of sampled pairs")
    seed: int = Field(..., description="Generator seed")
    violations: list[PairViolation] = Field(default_factory=list)

    @property
    def is_strict(self) -> bool:
        return not self.violations


class ProfileViolation(BaseSchema):
    """An axiom violation on one utility profile."""

    profile: list[list[float]] = Field(..., description="k x m utility profile")
    pair: tuple[int, int] = Field(..., description="Input pair (x, y)")
    detail: str = Field(..., description="What went wrong")


class AxiomReport(BaseSchema):
    """Result of checking one social-choice axiom over sampled profiles."""

    axiom: str
    rule: dict[str, Any]
    checked: int = Field(..., ge=0, description="Profiles examined")
    violations: list[ProfileViolation] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations


class DictatorReport(BaseSchema):
    """Result of a grid search for a dictator inside a credal set."""

    found: bool
    dictator: list[float] | None = Field(None, description="Dictator distribution, if found")
    weights: list[float] | None = Field(None, description="Mixture weights over extreme points")
    problems_checked: int = Field(..., ge=0)
    mixture_step: float


class ManipulationReport(BaseSchema):
    """Forecaster value of reporting the dictator instead of the true belief."""

    dictator: list[float] | None
    truthful_value: float
    dictator_value: float | None

    @property
    def costless(self) -> bool:
        return self.dictator_value is not None and abs(self.truthful_value - self.dictator_value) <= 1e-9


class PropernessReport(BaseSchema):
    """Verdict of evaluating V over a report grid for one belief."""

    is_proper: bool
    is_strict: bool
    max_value: float
    truthful_value: float
    argmax: list[ReportDescriptor] = Field(default_factory=list, description="Reports within margin of the max")
    violations: list[ReportDescriptor] = Field(
        default_factory=list, description="Reports strictly beating the truthful one"
    )
    n_reports: int = Field(..., ge=1)


class ImpossibilityReport(BaseSchema):
    """Dominance-properness check of one candidate score table."""

    proper: bool
    constant: bool
    violation: dict[str, Any] | None = Field(None, description="A belief/report pair breaking properness")


class ImpossibilitySummary(BaseSchema):
    """Aggregate of impossibility checks over random and preset tables."""

    lattice_size: int
    random_tables: int
    proper_count: int
    proper_nonconstant_count: int
    constant_tables_passed: bool
    presets: dict[str, ImpossibilityReport] = Field(default_factory=dict)

    @property
    def consistent(self) -> bool:
        """Every proper table found was constant."""
        return self.proper_nonconstant_count == 0 and self.constant_tables_passed
