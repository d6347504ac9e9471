# src/curve_series.py
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from sympy import QQ, Poly, Symbol

from .config import get_settings
from .errors import ConfigurationError, ConvergenceError, DomainError, TruncationError
from .exact_arith import (
    SatoGrading,
    TruncSeries,
    check_sato_homogeneous,
    exact,
    to_complex,
    to_fraction,
    variable_table,
)

logger = logging.getLogger(__name__)

RADIUS_FACTOR = 0.3

DEFAULT_ROOTS: Dict[int, Tuple[Fraction, ...]] = {
    1: (Fraction(-1), Fraction(1, 2), Fraction(2)),
    2: tuple(Fraction(k) for k in range(5)),
    3: tuple(Fraction(k, 2) for k in (-3, -2, -1, 0, 1, 2, 4)),
}


def coefficients_from_roots(roots: Sequence[Fraction]) -> List[Fraction]:
    """Coefficients of prod (x - r), highest degree first."""
    coeffs = [Fraction(1)]
    for r in roots:
        nxt = coeffs + [Fraction(0)]
        for i in range(1, len(nxt)):
            nxt[i] -= r * coeffs[i - 1]
        coeffs = nxt
    return coeffs


class CurveSpec(BaseModel):
    """y^2 = x^{2g+1} + l1 x^{2g} + ... + l_{2g+1}, with exact or symbolic coefficients."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    genus: int = Field(..., ge=1, description="Genus g of the curve")
    lambdas: Tuple[Fraction, ...] = Field(
        (), description="l1..l_{2g+1}; floats are read through their decimal spelling"
    )
    symbolic: bool = Field(False, description="Keep the coefficients as indeterminates")

    @field_validator("lambdas", mode="before")
    @classmethod
    def _coerce_lambdas(cls, value: Any) -> Tuple[Fraction, ...]:
        return tuple(to_fraction(v) for v in (value or ()))

    @model_validator(mode="after")
    def _check_length(self) -> "CurveSpec":
        expected = 2 * self.genus + 1
        if self.symbolic:
            if self.lambdas:
                raise ConfigurationError("a symbolic curve takes no numeric coefficients")
            return self
        if not self.lambdas:
            object.__setattr__(self, "lambdas", (Fraction(0),) * expected)
        elif len(self.lambdas) != expected:
            raise ConfigurationError(
                f"genus {self.genus} needs {expected} coefficients, got {len(self.lambdas)}"
            )
        if not self.is_degenerate_limit() and not self.is_smooth():
            raise DomainError(f"f has a repeated root for lambdas {[str(v) for v in self.lambdas]}")
        return self

    @classmethod
    def from_roots(cls, roots: Sequence[Any]) -> "CurveSpec":
        roots = [to_fraction(r) for r in roots]
        if len(roots) % 2 == 0:
            raise ConfigurationError("a hyperelliptic model of this shape has an odd number of roots")
        return cls(genus=(len(roots) - 1) // 2, lambdas=tuple(coefficients_from_roots(roots)[1:]))

    @classmethod
    def default(cls, genus: int) -> "CurveSpec":
        roots = DEFAULT_ROOTS.get(genus) or tuple(Fraction(k) for k in range(2 * genus + 1))
        return cls.from_roots(roots)

    @property
    def domain(self):
        if self.symbolic:
            R, _ = variable_table([f"l{k}" for k in range(1, 2 * self.genus + 2)])
            return R
        return QQ

    def coefficients(self) -> List[Any]:
        """[1, l1, ..., l_{2g+1}] as elements of the coefficient domain."""
        if self.symbolic:
            R = self.domain
            return [R.one] + list(R.gens)
        return [QQ(1)] + [exact(v) for v in self.lambdas]

    def numeric_coefficients(self) -> np.ndarray:
        if self.symbolic:
            raise ConfigurationError("a symbolic curve has no numeric coefficients")
        return np.array([1.0] + [float(v) for v in self.lambdas])

    def f(self, x):
        return np.polyval(self.numeric_coefficients(), x)

    def df(self, x):
        return np.polyval(np.polyder(self.numeric_coefficients()), x)

    def roots(self) -> np.ndarray:
        return np.roots(self.numeric_coefficients())

    def is_smooth(self) -> bool:
        if self.symbolic:
            return True
        x = Symbol("x")
        return Poly([QQ(1)] + [exact(v) for v in self.lambdas], x, domain=QQ).discriminant() != 0

    def is_degenerate_limit(self) -> bool:
        """f = x^{2g+1}, the zero-coefficient limit used by the exact sign derivations."""
        return not self.symbolic and all(v == 0 for v in self.lambdas)


def convergence_radius(curve: CurveSpec) -> float:
    """0.3 * min |r|^(-1/2) over the nonzero roots of f; infinite for f = x^{2g+1}."""
    roots = [r for r in curve.roots() if abs(r) > 1e-14]
    if not roots:
        return math.inf
    return RADIUS_FACTOR * min(abs(r) ** -0.5 for r in roots)


@dataclass(frozen=True)
class LocalExpansions:
    """x, y and u_1..u_g as series in the local parameter t = 1/sqrt(x) at infinity."""

    curve: CurveSpec
    order: int
    x: TruncSeries
    y: TruncSeries
    root: TruncSeries
    u: Tuple[TruncSeries, ...]

    @property
    def genus(self) -> int:
        return self.curve.genus

    def u_series(self, j: int) -> TruncSeries:
        if not 1 <= j <= self.genus:
            raise DomainError(f"u_{j} outside 1..{self.genus}")
        return self.u[j - 1]

    @cached_property
    def t_of_u(self) -> TruncSeries:
        """The inverse series t(u_g)."""
        rev = self.u[-1].reversion()
        return TruncSeries(rev.coeffs, rev.order, rev.domain, "u", rev.valuation)

    def _in_u(self, series: TruncSeries) -> TruncSeries:
        inner = self.t_of_u
        relabelled = TruncSeries(
            series.coeffs, series.order, series.domain, "u", series.valuation
        )
        return relabelled.compose(inner)

    def x_of_u(self) -> TruncSeries:
        return self._in_u(self.x)

    def y_of_u(self) -> TruncSeries:
        return self._in_u(self.y)

    def u_of_ug(self, j: int) -> TruncSeries:
        return self._in_u(self.u_series(j))

    def curve_residual(self) -> TruncSeries:
        """y(t)^2 - f(x(t)); zero to truncation on every curve."""
        coeffs = self.curve.coefficients()
        g = self.genus
        f_of_x = None
        for k, c in enumerate(coeffs):
            term = TruncSeries.monomial(
                -2 * (2 * g + 1 - k), self.y.order, self.curve.domain, coeff=c
            )
            f_of_x = term if f_of_x is None else f_of_x + term
        return self.y * self.y - f_of_x

    def is_odd(self) -> bool:
        return all(e % 2 == 1 for s in self.u for e, _ in s.terms())

    def is_homogeneous(self) -> bool:
        grading = SatoGrading.for_genus(self.genus)
        return all(
            check_sato_homogeneous(s, 2 * (self.genus - j) + 1, grading)
            for j, s in enumerate(self.u, start=1)
        )

    def to_json(self) -> Dict[str, Any]:
        def encode(s: TruncSeries):
            return {
                "order": s.order,
                "terms": [[e, str(c)] for e, c in s.terms()],
            }

        return {
            "genus": self.genus,
            "order": self.order,
            "x": encode(self.x),
            "y": encode(self.y),
            "u": [encode(s) for s in self.u],
        }


@lru_cache(maxsize=32)
def expand_at_infinity(curve: CurveSpec, order: int) -> LocalExpansions:
    """
    Expansions at infinity with y = t^{-(2g+1)} R(t), R = sqrt(1 + l1 t^2 + ...),
    and u_j = -integral t^{2(g-j)} / R dt, so that u_g = -t + O(t^3).
    """
    g = curve.genus
    if order < 2 * g + 3:
        raise TruncationError(f"order {order} below the minimum {2 * g + 3} for genus {g}")
    D = curve.domain
    coeffs = curve.coefficients()
    s = [D.zero] * order
    for k, c in enumerate(coeffs):
        if 2 * k < order:
            s[2 * k] = c
    radicand = TruncSeries(s, order, D)
    root = radicand.sqrt()
    inverse = root.reciprocal()
    x = TruncSeries.monomial(-2, order, D)
    y = root * TruncSeries.monomial(-(2 * g + 1), order, D)
    us = []
    for j in range(1, g + 1):
        integrand = inverse * TruncSeries.monomial(2 * (g - j), order, D)
        us.append(-integrand.integrate().truncate(order))
    logger.debug("expanded genus %d curve at infinity to order %d", g, order)
    return LocalExpansions(curve, order, x, y, root, tuple(us))


@dataclass(frozen=True)
class CurvePoint:
    t: complex
    x: complex
    y: complex
    u: Tuple[complex, ...]

    def involution(self) -> "CurvePoint":
        return CurvePoint(-self.t, self.x, -self.y, tuple(-c for c in self.u))


def _is_exact_scalar(value: Any) -> bool:
    return isinstance(value, (int, Fraction, QQ.dtype)) and not isinstance(value, bool)


def abel_coordinates(
    le: LocalExpansions, t0: Any, tolerance: Optional[float] = None
) -> Tuple[Any, ...]:
    """
    (u_1(t0), ..., u_g(t0)) from the series branch at infinity. Rational t0 on
    an exact curve gives the exact value of the truncated series.
    """
    g = le.genus
    if _is_exact_scalar(t0) and le.curve.domain is QQ:
        if t0 == 0:
            return tuple(QQ(0) for _ in range(g))
        return tuple(s.evaluate(t0) for s in le.u)
    t0 = complex(t0)
    if t0 == 0:
        return tuple(0j for _ in range(g))
    radius = convergence_radius(le.curve)
    if abs(t0) > radius:
        raise ConvergenceError(f"|t0| = {abs(t0):.4g} outside the radius {radius:.4g}")
    values = np.array([s.evaluate(t0) for s in le.u])
    finer = expand_at_infinity(le.curve, 2 * le.order)
    check = np.array([s.evaluate(t0) for s in finer.u])
    tolerance = get_settings().tolerance if tolerance is None else tolerance
    scale = max(1.0, float(np.max(np.abs(check))))
    if float(np.max(np.abs(values - check))) > tolerance * scale:
        raise ConvergenceError(
            f"truncation at order {le.order} misses the doubled expansion at t0={t0}"
        )
    return tuple(complex(c) for c in check)


def curve_point(le: LocalExpansions, t0: complex, tolerance: Optional[float] = None) -> CurvePoint:
    t0 = complex(t0)
    if t0 == 0:
        raise DomainError("t0 = 0 is the point at infinity")
    g = le.genus
    u = abel_coordinates(le, t0, tolerance)
    radicand = sum(
        to_complex(c) * t0 ** (2 * k) for k, c in enumerate(le.curve.coefficients())
    )
    y = np.sqrt(complex(radicand)) * t0 ** -(2 * g + 1)
    return CurvePoint(t0, t0**-2, complex(y), tuple(complex(c) for c in u))


def sample_parameters(
    curve: CurveSpec, count: int, rng: np.random.Generator, low: float = 0.3, high: float = 1.0
) -> List[complex]:
    """Complex t with |t| in [low, high] times the convergence radius."""
    radius = convergence_radius(curve)
    if not math.isfinite(radius):
        radius = 0.5
    moduli = rng.uniform(low, high, size=count) * radius
    angles = rng.uniform(0.0, 2 * np.pi, size=count)
    return [complex(m * np.exp(1j * a)) for m, a in zip(moduli, angles)]


__all__ = [
    "CurveSpec",
    "LocalExpansions",
    "CurvePoint",
    "expand_at_infinity",
    "abel_coordinates",
    "curve_point",
    "convergence_radius",
    "sample_parameters",
    "coefficients_from_roots",
]
