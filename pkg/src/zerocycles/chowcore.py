"""Chow group of degree-0 zero-cycles from regular-model data.

A model is a special fiber (orbits with multiplicities and orbit sizes)
plus the images of Picard generators of its components, each given as a
column in the basis ``(f_Y)``.  The Chow group is the torsion subgroup of
``Z^n`` modulo the span of those columns.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from .galmod import ComponentOrbit, SpecialFiber, evaluate_xi, xi_weights
from .intlat import IntMatrix, cokernel


class ModelValidationError(ValueError):
    """Raised when model data is not a legal specialization matrix."""

    def __init__(self, message: str, report: "ValidationReport | None" = None):
        super().__init__(message)
        self.report = report


@dataclass(frozen=True)
class DivisorGenerator:
    name: str
    column: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "column", tuple(int(x) for x in self.column))


@dataclass(frozen=True)
class RegularModelData:
    fiber: SpecialFiber
    generators: tuple[DivisorGenerator, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))

    def matrix(self) -> IntMatrix:
        n = len(self.fiber)
        for g in self.generators:
            if len(g.column) != n:
                raise ValueError(
                    f"generator {g.name!r} has {len(g.column)} entries, "
                    f"expected {n} (one per orbit)"
                )
        return IntMatrix.from_columns([g.column for g in self.generators], rows=n)

    def to_json_obj(self) -> dict:
        return {
            "fiber": self.fiber.to_json_obj(),
            "generators": [{"name": g.name, "column": list(g.column)} for g in self.generators],
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "RegularModelData":
        try:
            fiber = SpecialFiber.from_json_obj(obj["fiber"])
            gens = tuple(
                DivisorGenerator(str(g["name"]), tuple(int(x) for x in g["column"]))
                for g in obj.get("generators", [])
            )
        except (KeyError, TypeError, AttributeError) as exc:
            raise ValueError(f"malformed model JSON: {exc}") from None
        return cls(fiber, gens)

    @classmethod
    def from_json(cls, text: str) -> "RegularModelData":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValueError(f"malformed model JSON: {exc}") from None
        return cls.from_json_obj(obj)


@dataclass(frozen=True)
class GeneratorCheck:
    name: str
    xi_value: int

    @property
    def passed(self) -> bool:
        return self.xi_value == 0


@dataclass
class ValidationReport:
    checks: list[GeneratorCheck] = field(default_factory=list)
    issues: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.issues and all(c.passed for c in self.checks)

    @property
    def failing(self) -> list[GeneratorCheck]:
        return [c for c in self.checks if not c.passed]


@dataclass(frozen=True)
class ChowGroupResult:
    free_rank: int
    invariant_factors: tuple[int, ...]
    columns_degree_zero: tuple[bool, ...] = ()

    @property
    def order(self) -> int:
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    def describe(self) -> str:
        if not self.invariant_factors:
            return "0"
        return " x ".join(f"Z/{d}Z" for d in self.invariant_factors)

    def to_json_obj(self) -> dict:
        return {
            "free_rank": self.free_rank,
            "invariant_factors": list(self.invariant_factors),
            "columns_degree_zero": list(self.columns_degree_zero),
        }


def validate(model: RegularModelData) -> ValidationReport:
    """Degree-zero check of every generator plus sanity of the fiber data.

    Dimension mismatches raise ``ValueError``; everything else is reported.
    """
    report = ValidationReport()
    n = len(model.fiber)
    names = [g.name for g in model.generators]
    dup = sorted({x for x in names if names.count(x) > 1})
    if dup:
        report.issues.append(f"duplicate generator names: {', '.join(dup)}")
    for o in model.fiber.orbits:
        # ComponentOrbit already rejects these; kept for data built by hand
        if o.multiplicity < 1 or o.orbit_size < 1:
            report.issues.append(f"orbit {o.name!r} has nonpositive multiplicity or orbit size")
    for g in model.generators:
        if len(g.column) != n:
            raise ValueError(
                f"generator {g.name!r} has {len(g.column)} entries, expected {n}"
            )
        report.checks.append(GeneratorCheck(g.name, evaluate_xi(g.column, model.fiber)))
    return report


def chow_zero_cycles(model: RegularModelData) -> ChowGroupResult:
    """Torsion of ``Hom_k(F, Z) / <columns>``, with the free rank alongside."""
    report = validate(model)
    if not report.passed:
        parts = [f"{c.name} (xi = {c.xi_value})" for c in report.failing]
        msg = "model fails validation"
        if parts:
            msg += "; columns of nonzero degree: " + ", ".join(parts)
        if report.issues:
            msg += "; " + "; ".join(report.issues)
        raise ModelValidationError(msg, report)
    coker = cokernel(model.matrix())
    return ChowGroupResult(
        free_rank=coker.free_rank,
        invariant_factors=coker.invariant_factors,
        columns_degree_zero=tuple(c.passed for c in report.checks),
    )


# Rows ordered A, B, C, D, R, S, M.
_FIXTURE_ORBITS = (
    ("A", 1, 2),
    ("B", 1, 2),
    ("C", 1, 1),
    ("D", 1, 1),
    ("R", 1, 2),
    ("S", 1, 2),
    ("M", 2, 2),
)

_FIXTURE_COLUMNS = (
    ("l_A", (-2, 1, 0, 2, 0, 0, 0)),
    ("d_RA", (-1, 0, 0, 0, 1, 0, 0)),
    ("d_SA", (-1, 0, 0, 0, 0, 1, 0)),
    ("d_MA", (-2, 0, 0, 0, 0, 0, 1)),
    ("f_D", (1, 0, 0, -2, 0, 0, 0)),
    ("l_B", (1, -2, 2, 0, 0, 0, 0)),
    ("d_RB", (0, -1, 0, 0, 1, 0, 0)),
    ("d_SB", (0, -1, 0, 0, 0, 1, 0)),
    ("d_MB", (0, -2, 0, 0, 0, 0, 1)),
    ("f_C", (0, 1, -2, 0, 0, 0, 0)),
)


def paper_fixture() -> RegularModelData:
    """Regular model of the quartic del Pezzo surface with split ``K(sqrt d)``.

    Seven orbits of special-fiber components and the images of the ten
    Picard generators that are not already accounted for by the others.
    """
    fiber = SpecialFiber(tuple(ComponentOrbit(n, m, s) for n, m, s in _FIXTURE_ORBITS))
    gens = tuple(DivisorGenerator(n, c) for n, c in _FIXTURE_COLUMNS)
    return RegularModelData(fiber, gens)


# -- Laurent polynomials in pi -----------------------------------------------

class UnsupportedInputError(ValueError):
    pass


def _inverse_mod(a: int, p: int) -> int:
    return pow(a, -1, p)


class LaurentPoly:
    """Univariate Laurent polynomial in ``pi``.

    Coefficients are exact rationals, or residues mod ``p`` when ``p`` is
    given.
    """

    __slots__ = ("terms", "p")

    def __init__(self, terms: dict[int, int | Fraction] | None = None, p: int | None = None):
        self.p = p
        clean: dict[int, int | Fraction] = {}
        for k, c in (terms or {}).items():
            c = self._coerce(c)
            if c:
                clean[int(k)] = c
        self.terms = clean

    def _coerce(self, c):
        if self.p is None:
            c = Fraction(c)
            return int(c) if c.denominator == 1 else c
        c = Fraction(c)
        return (c.numerator * _inverse_mod(c.denominator % self.p, self.p)) % self.p

    @classmethod
    def constant(cls, c, p: int | None = None) -> "LaurentPoly":
        return cls({0: c}, p)

    @classmethod
    def monomial(cls, c, k: int, p: int | None = None) -> "LaurentPoly":
        return cls({k: c}, p)

    @classmethod
    def pi(cls, p: int | None = None) -> "LaurentPoly":
        return cls({1: 1}, p)

    def _lift(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.p != self.p:
                raise ValueError("mixing coefficient rings")
            return other
        return LaurentPoly.constant(other, self.p)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return LaurentPoly(out, self.p)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({k: -c for k, c in self.terms.items()}, self.p)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        out: dict[int, int | Fraction] = {}
        for a, x in self.terms.items():
            for b, y in other.terms.items():
                out[a + b] = out.get(a + b, 0) + x * y
        return LaurentPoly(out, self.p)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return LaurentPoly.constant(1, self.p).divide_exact(self ** (-n))
        out = LaurentPoly.constant(1, self.p)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.constant(other, self.p)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.p == other.p and self.terms == other.terms

    def __hash__(self):
        return hash((self.p, tuple(sorted(self.terms.items()))))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms):
            c = self.terms[k]
            parts.append(f"{c}" if k == 0 else f"{c}*pi^{k}")
        return " + ".join(parts)

    @property
    def valuation(self) -> int:
        if not self.terms:
            raise ValueError("valuation of zero")
        return min(self.terms)

    def lowest_coefficient(self):
        return self.terms[self.valuation]

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def _div_coeff(self, a, b):
        if self.p is None:
            return Fraction(a) / Fraction(b)
        return (a * _inverse_mod(b % self.p, self.p)) % self.p

    def divide_exact(self, other) -> "LaurentPoly":
        """Quotient in the Laurent ring; raise if ``other`` does not divide."""
        other = self._lift(other)
        if not other:
            raise ZeroDivisionError("division by zero Laurent polynomial")
        if not self:
            return LaurentPoly({}, self.p)
        va, vb = self.valuation, other.valuation
        # polynomials with nonzero constant term
        num = {k - va: c for k, c in self.terms.items()}
        den = {k - vb: c for k, c in other.terms.items()}
        dd = max(den)
        lead = den[dd]
        quot: dict[int, int | Fraction] = {}
        rem = dict(num)
        while rem and max(rem) >= dd:
            top = max(rem)
            c = self._div_coeff(rem[top], lead)
            shift = top - dd
            quot[shift] = c
            for k, x in den.items():
                v = rem.get(k + shift, 0) - c * x
                if self.p is not None:
                    v %= self.p
                if v:
                    rem[k + shift] = v
                else:
                    rem.pop(k + shift, None)
        if rem:
            raise UnsupportedInputError(
                f"({self}) / ({other}) is not a Laurent polynomial in pi"
            )
        return LaurentPoly({k + va - vb: c for k, c in quot.items()}, self.p)


def chatelet_coefficients(gamma: LaurentPoly, beta: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    """Roots ``e1, e2`` of the Chatelet form ``y^2 - d z^2 = x(x - e1)(x - e2)``.

    ``e1 = gamma - pi^2 + pi^3 / beta`` and ``e2 = gamma * pi / beta``.
    ``beta`` must be nonzero and the quotients must be Laurent polynomials,
    which in practice means ``beta`` is a monomial ``c * pi^k``.
    """
    if not beta:
        raise UnsupportedInputError("beta must be nonzero")
    p = beta.p
    pi = LaurentPoly.pi(p)
    e1 = gamma - pi ** 2 + (pi ** 3).divide_exact(beta)
    e2 = (gamma * pi).divide_exact(beta)
    return e1, e2


__all__ = [
    "ChowGroupResult",
    "DivisorGenerator",
    "GeneratorCheck",
    "LaurentPoly",
    "ModelValidationError",
    "RegularModelData",
    "UnsupportedInputError",
    "ValidationReport",
    "chatelet_coefficients",
    "chow_zero_cycles",
    "paper_fixture",
    "validate",
    "xi_weights",
]
