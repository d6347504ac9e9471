# src/sigma.py
import logging
from dataclasses import dataclass, field, replace
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, Field

from .config import get_settings
from .constants import confluent_constant, published_schur_sign, published_sharp_sign, sharp_leading_sign
from .curve_series import (
    CurveSpec,
    LocalExpansions,
    convergence_radius,
    curve_point,
    expand_at_infinity,
)
from .errors import (
    ConditioningError,
    ConvergenceError,
    DomainError,
    NormalizationError,
    StateError,
    UnsupportedRangeError,
)
from .exact_arith import to_complex
from .schur import natural_set, schur_sign, sw_poly
from .theta import PeriodData, ThetaChar, compute_periods, locate_characteristic, theta_jet

logger = logging.getLogger(__name__)

NORMALIZATION_FIT = 1e-4
CHARACTERISTIC_PROBES = 3


# ----------------------------------------------------------- extrapolation


@dataclass(frozen=True)
class Extrapolation:
    value: complex
    error: float
    order: float


def richardson(values: Sequence[complex], power: int = 2, ratio: float = 2.0) -> Extrapolation:
    """
    Limit of f(h_k), h_k = h_0 / ratio^k, for f with an expansion in h^power.
    ``order`` is the observed decay exponent of the raw differences.
    """
    values = [complex(v) for v in values]
    if len(values) < 3:
        raise ConvergenceError("extrapolation needs at least three levels")
    table = [values[:]]
    for m in range(1, len(values)):
        prev = table[-1]
        factor = ratio ** (power * m) - 1
        table.append([prev[k] + (prev[k] - prev[k - 1]) / factor for k in range(1, len(prev))])
    best = table[-1][-1]
    error = abs(best - table[-2][-1])
    d = np.abs(np.diff(values))
    order = float(np.log(d[-2] / d[-1]) / np.log(ratio)) if d[-1] > 0 and d[-2] > 0 else float("inf")
    return Extrapolation(best, float(error), order)


# --------------------------------------------------------------- evaluator


@dataclass(frozen=True)
class SigmaEvaluator:
    """sigma(u) = constant * exp(-u M u / 2) theta[char](omega'^{-1} u; Z)."""

    curve: CurveSpec
    periods: PeriodData
    char: ThetaChar
    constant: Optional[complex] = None
    tolerance: float = 1e-12
    diagnostics: Dict[str, Any] = field(default_factory=dict)

    @property
    def genus(self) -> int:
        return self.curve.genus

    @property
    def normalized(self) -> bool:
        return self.constant is not None

    @property
    def l_sign(self) -> int:
        """L(u, v) = l_sign * u^T (eta' v' + eta'' v'') for the exponential factor used here."""
        return -self.periods.legendre_sign

    def tilde_jet(self, u: Sequence[complex], order: int = 0):
        P = self.periods
        u = np.asarray(u, dtype=complex).reshape(self.genus)
        M, W = P.quadratic, P.omega1_inv
        th, grad, hess = theta_jet(W @ u, P.Z, self.char, self.tolerance, order)
        E = np.exp(-0.5 * (u @ M @ u))
        if order == 0:
            return E * th, None, None
        g1 = -(M @ u)
        G = W.T @ grad
        gradient = E * (g1 * th + G)
        if order == 1:
            return E * th, gradient, None
        H = W.T @ hess @ W
        hessian = E * ((np.outer(g1, g1) - M) * th + np.outer(g1, G) + np.outer(G, g1) + H)
        return E * th, gradient, hessian

    def tilde_deriv(self, u: Sequence[complex], indices: Sequence[int] = ()) -> complex:
        indices = tuple(indices)
        for i in indices:
            if not 1 <= i <= self.genus:
                raise DomainError(f"derivative index {i} outside 1..{self.genus}")
        if len(indices) > 2:
            raise UnsupportedRangeError(f"sigma derivatives of order {len(indices)} are not provided")
        value, grad, hess = self.tilde_jet(u, len(indices))
        if not indices:
            return complex(value)
        if len(indices) == 1:
            return complex(grad[indices[0] - 1])
        return complex(hess[indices[0] - 1, indices[1] - 1])


def sigma(ev: SigmaEvaluator, u: Sequence[complex]) -> complex:
    return sigma_deriv(ev, u, ())


def sigma_deriv(ev: SigmaEvaluator, u: Sequence[complex], indices: Sequence[int] = ()) -> complex:
    if not ev.normalized:
        raise StateError("sigma evaluator used before normalization")
    return ev.constant * ev.tilde_deriv(u, indices)


def natural_indices(g: int, n: int) -> Tuple[int, ...]:
    return natural_set(n, g).indices


def sigma_natural(ev: SigmaEvaluator, u: Sequence[complex], n: int) -> complex:
    """sigma_{natural^n}; sigma_sharp for n = 1, sigma_flat for n = 2, sigma itself for n >= g."""
    return sigma_deriv(ev, u, natural_indices(ev.genus, n))


def hankel_indices(g: int) -> Tuple[int, ...]:
    """The odd indices <= g: their mixed derivative of the Hankel determinant at 0 is 1."""
    return tuple(range(1, g + 1, 2))


def sharp_limit(
    ev: SigmaEvaluator, le: LocalExpansions, t0: Optional[float] = None, levels: int = 4
) -> Extrapolation:
    """lim sigma_sharp(v) / v_g^g as v -> 0 along the curve, by extrapolation in t^2."""
    g = ev.genus
    t0 = 0.5 * convergence_radius(ev.curve) if t0 is None else t0
    values = []
    for k in range(levels):
        point = curve_point(le, t0 / 2**k)
        values.append(sigma_natural(ev, point.u, 1) / point.u[-1] ** g)
    return richardson(values, power=2)


def normalize(ev: SigmaEvaluator, le: LocalExpansions) -> SigmaEvaluator:
    """
    Fix the constant so that the lowest Taylor part at 0 is exactly the Hankel
    determinant, then confirm that sigma_sharp(v) / v_g^g tends to kappa_g
    along the curve.
    """
    g = ev.genus
    indices = hankel_indices(g)
    if len(indices) > 2:
        raise UnsupportedRangeError(f"numeric normalization is provided for g <= 4, got {g}")
    coefficient = ev.tilde_deriv(np.zeros(g), indices)
    if abs(coefficient) < 1e-300:
        raise NormalizationError("the Hankel coefficient of the theta quotient vanishes")
    candidate = replace(ev, constant=1 / coefficient)
    limit = sharp_limit(candidate, le)
    kappa = sharp_leading_sign(g)
    residual = abs(limit.value - kappa)
    if residual > NORMALIZATION_FIT:
        raise NormalizationError(
            f"sigma_sharp / v_g^g tends to {limit.value:.8g}, expected {kappa} (residual {residual:.3g})"
        )
    logger.info("normalized genus %d sigma: constant %s, sharp residual %.3g", g, 1 / coefficient, residual)
    diagnostics = dict(ev.diagnostics)
    diagnostics.update(
        {
            "constant": [float((1 / coefficient).real), float((1 / coefficient).imag)],
            "sharp_limit": [float(limit.value.real), float(limit.value.imag)],
            "sharp_residual": float(residual),
            "kappa": kappa,
            "published_sharp_sign": published_sharp_sign(g),
        }
    )
    return replace(ev, constant=1 / coefficient, diagnostics=diagnostics)


def _characteristic_points(le: LocalExpansions) -> Tuple[List[np.ndarray], List[np.ndarray]]:
    """Sums of g-1 curve points (the theta divisor) and nearby generic points."""
    g = le.genus
    radius = convergence_radius(le.curve)
    on_points, references = [], []
    for k in range(CHARACTERISTIC_PROBES):
        u = np.zeros(g, dtype=complex)
        for i in range(g - 1):
            t = 0.6 * radius * np.exp(1j * (0.4 + 1.1 * k + 2.3 * i))
            u = u + np.asarray(curve_point(le, t).u)
        size = float(np.linalg.norm(u)) + 0.05 * radius
        delta = size * 0.3 * np.exp(1j * (0.9 * np.arange(1, g + 1) + 0.2 * k))
        on_points.append(u)
        references.append(u + delta)
    return on_points, references


def build_evaluator(
    curve: CurveSpec, le: Optional[LocalExpansions] = None, tolerance: Optional[float] = None
) -> SigmaEvaluator:
    settings = get_settings()
    g = curve.genus
    tolerance = settings.theta_tolerance if tolerance is None else tolerance
    le = le or expand_at_infinity(curve, settings.order_for(g))
    periods = compute_periods(curve)
    on_points, references = _characteristic_points(le)
    W = periods.omega1_inv
    char, scores = locate_characteristic(
        periods.Z, [W @ p for p in on_points], [W @ r for r in references], tolerance
    )
    ev = SigmaEvaluator(
        curve,
        periods,
        char,
        None,
        tolerance,
        {
            "characteristic": char.model_dump(),
            "standard_characteristic": ThetaChar.standard(g).model_dump(),
            "characteristic_score": min(scores.values()),
        },
    )
    return normalize(ev, le)


@lru_cache(maxsize=8)
def evaluator_for(curve: CurveSpec) -> SigmaEvaluator:
    return build_evaluator(curve)


# ------------------------------------------------------ lattice machinery


def l_form(ev: SigmaEvaluator, u: Sequence[complex], v: Sequence[complex]) -> complex:
    P = ev.periods
    first, second = P.real_coordinates(v)
    u = np.asarray(u, dtype=complex)
    return complex(ev.l_sign * (u @ (P.eta1 @ first + P.eta2 @ second)))


def chi_and_L(
    ev: SigmaEvaluator, ell: Sequence[complex], u: Sequence[complex], v: Sequence[complex]
) -> Tuple[complex, complex]:
    """chi(ell) = exp(2 pi i (ell'.a - ell''.b) - pi i ell'.ell'') and L(u, v)."""
    first, second = ev.periods.lattice_coordinates(ell)
    a, b = ev.char.arrays()
    chi = np.exp(2j * np.pi * (first @ a - second @ b) - 1j * np.pi * (first @ second))
    return complex(chi), l_form(ev, u, v)


def translation_residual(
    ev: SigmaEvaluator, u: Sequence[complex], ell: Sequence[complex], indices: Sequence[int] = ()
) -> float:
    """Relative defect of sigma_I(u + ell) = chi(ell) sigma_I(u) exp L(u + ell/2, ell)."""
    u = np.asarray(u, dtype=complex)
    ell = np.asarray(ell, dtype=complex)
    lhs = sigma_deriv(ev, u + ell, indices)
    chi, L = chi_and_L(ev, ell, u + ell / 2, ell)
    rhs = chi * sigma_deriv(ev, u, indices) * np.exp(L)
    scale = max(abs(lhs), abs(rhs))
    return float(abs(lhs - rhs) / scale) if scale > 0 else 0.0


def parity_sign(g: int) -> int:
    """sigma(-u) = parity_sign * sigma(u)."""
    return -1 if g % 4 in (1, 2) else 1


def parity_residual(ev: SigmaEvaluator, u: Sequence[complex]) -> float:
    u = np.asarray(u, dtype=complex)
    plus, minus = sigma(ev, u), sigma(ev, -u)
    scale = max(abs(plus), abs(minus))
    return float(abs(minus - parity_sign(ev.genus) * plus) / scale) if scale > 0 else 0.0


def riemann_form(ev: SigmaEvaluator) -> np.ndarray:
    """E(l_i, l_j) / 2 pi i on the generators omega'_1, omega''_1, omega'_2, ..."""
    gens = ev.periods.generators.T
    k = len(gens)
    E = np.zeros((k, k), dtype=complex)
    for i in range(k):
        for j in range(k):
            E[i, j] = l_form(ev, gens[i], gens[j]) - l_form(ev, gens[j], gens[i])
    return E / (2j * np.pi)


def pfaffian(A: np.ndarray) -> complex:
    A = np.asarray(A)
    n = A.shape[0]
    if n % 2:
        return 0.0
    if n == 0:
        return 1.0
    total = 0.0
    rest = list(range(1, n))
    for pos, j in enumerate(rest):
        if A[0, j] == 0:
            continue
        keep = [k for k in rest if k != j]
        total += (-1) ** pos * A[0, j] * pfaffian(A[np.ix_(keep, keep)])
    return total


class LatticeCheck(BaseModel):
    integrality: float = Field(description="Largest distance of E / 2 pi i entries from integers")
    pfaffian: float = Field(description="Pfaffian of E / 2 pi i on the interleaved generators")
    translation: List[float] = Field(description="Translational-formula residual per generator")
    parity: float


def lattice_check(ev: SigmaEvaluator, u: Sequence[complex]) -> LatticeCheck:
    E = riemann_form(ev)
    integrality = float(np.max(np.abs(E - np.rint(E.real))))
    pf = pfaffian(np.rint(E.real))
    residuals = [translation_residual(ev, u, ell) for ell in ev.periods.generators.T]
    return LatticeCheck(
        integrality=integrality,
        pfaffian=float(pf),
        translation=residuals,
        parity=parity_residual(ev, u),
    )


# ---------------------------------------------------------- Brill-Noether


def _point_row(curve: CurveSpec, t: complex) -> np.ndarray:
    g = curve.genus
    t = complex(t)
    radicand = sum(to_complex(c) * t ** (2 * k) for k, c in enumerate(curve.coefficients()))
    x = t**-2
    y = np.sqrt(complex(radicand)) * t ** -(2 * g + 1)
    return np.array([x ** (j - 1) / (2 * y) for j in range(1, g + 1)])


def brill_noether_matrix(
    curve: CurveSpec, points: Sequence[complex], n: int, le: Optional[LocalExpansions] = None
) -> np.ndarray:
    """
    Rows: omega_j at P_1..P_n, then the t^k coefficients (k < g - n) of
    omega_j at infinity in the local parameter t.
    """
    g = curve.genus
    if not 0 <= n <= g or len(points) != n:
        raise DomainError(f"need n = {len(points)} points with 0 <= n <= g = {g}")
    rows = [_point_row(curve, t) for t in points]
    if g - n:
        le = le or expand_at_infinity(curve, max(2 * g + 3, g - n + 1))
        for k in range(g - n):
            rows.append(
                np.array(
                    [to_complex(le.u_series(j).differentiate().coefficient(k)) for j in range(1, g + 1)]
                )
            )
    return np.array(rows, dtype=complex).reshape(g, g)


def expected_rank(g: int, n: int) -> int:
    return n + (g - n + 1) // 2


def brill_noether_rank(
    curve: CurveSpec,
    points: Sequence[complex],
    n: int,
    le: Optional[LocalExpansions] = None,
    threshold: Optional[float] = None,
) -> int:
    threshold = get_settings().rank_threshold if threshold is None else threshold
    points = [complex(t) for t in points]
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            if abs(points[i] - points[j]) < 1e-6 * max(1.0, abs(points[i])):
                raise ConditioningError(f"points {points[i]} and {points[j]} coincide")
    B = brill_noether_matrix(curve, points, n, le)
    norms = np.linalg.norm(B, axis=1)
    B = B[norms > 0] / norms[norms > 0, None]
    if not len(B):
        return 0
    sv = np.linalg.svd(B, compute_uv=False)
    rel = sv / sv[0]
    if np.any((rel > threshold) & (rel < np.sqrt(threshold))):
        raise ConditioningError(f"singular values {rel} leave the rank ambiguous")
    return int(np.sum(rel > threshold))


def linear_system_dimension(curve: CurveSpec, points: Sequence[complex], n: int, **kwargs) -> int:
    """dim Gamma(O(P_1 + ... + P_n + (g - n) inf)) = g + 1 - rank B(D)."""
    return curve.genus + 1 - brill_noether_rank(curve, points, n, **kwargs)


# ----------------------------------------------------------- theta strata


def stratum_point(le: LocalExpansions, ts: Sequence[complex]) -> np.ndarray:
    """u of P_1 + ... + P_n - n inf, a point of the stratum of sums of n points."""
    u = np.zeros(le.genus, dtype=complex)
    for t in ts:
        u = u + np.asarray(curve_point(le, t).u)
    return u


def _index_label(indices: Sequence[int]) -> str:
    return "sigma" + "".join(f"_{i}" for i in indices)


class VanishingProfile(BaseModel):
    n: int
    vanishing: Dict[str, float] = Field(description="|sigma_I(u)| over its largest value at nearby offsets, expected ~ 0")
    nonvanishing: Dict[str, float] = Field(description="Same ratio for sigma_{natural^n}, expected O(1)")


def vanishing_sets(g: int, n: int) -> List[Tuple[int, ...]]:
    """Derivatives that vanish identically on the stratum of sums of n points."""
    sets: List[Tuple[int, ...]] = []
    if n >= 1:
        sets.extend(natural_set(n, g).proper_subsets())
    sets.append(natural_indices(g, n + 1))
    h = 0
    while 2 * h + 1 <= g and h <= 2:
        if n <= g - 2 * h - 1:
            sets.extend(combinations_with_replacement(range(1, g + 1), h))
        h += 1
    seen, unique = set(), []
    for s in sets:
        key = tuple(sorted(s))
        if key not in seen:
            seen.add(key)
            unique.append(key)
    return unique


def vanishing_profile(
    ev: SigmaEvaluator, u: Sequence[complex], n: int, delta: Optional[Sequence[complex]] = None
) -> VanishingProfile:
    g = ev.genus
    u = np.asarray(u, dtype=complex)
    if delta is None:
        size = 0.3 * (float(np.linalg.norm(u)) + 0.05)
        offsets = [
            size * np.exp(1j * (0.7 * np.arange(1, g + 1) + 0.3 + 2 * np.pi * k / 3)) for k in range(3)
        ]
    else:
        offsets = [np.asarray(delta, dtype=complex)]

    def ratio(indices):
        scale = max(abs(sigma_deriv(ev, u + d, indices)) for d in offsets)
        return float(abs(sigma_deriv(ev, u, indices)) / scale) if scale > 0 else float("inf")

    vanishing = {_index_label(s): ratio(s) for s in vanishing_sets(g, n)}
    nonvanishing = {}
    if 1 <= n < g:
        top = natural_indices(g, n)
        nonvanishing[_index_label(top)] = ratio(top)
    return VanishingProfile(n=n, vanishing=vanishing, nonvanishing=nonvanishing)


# ----------------------------------------------------------------- limits


class SchurLimit(BaseModel):
    limit: List[float]
    expected: List[float]
    discrepancy: float
    error_estimate: float
    order: float
    sign: int = Field(description="Sign relating the limit to S(u) in this normalization")
    published_sign: int


def _numeric_poly(poly, values: Sequence[complex]) -> complex:
    total = 0j
    for monom, coeff in poly.terms():
        term = to_complex(coeff)
        for v, e in zip(values, monom):
            term *= complex(v) ** e
        total += term
    return total


def schur_value(g: int, u: Sequence[complex]) -> complex:
    return _numeric_poly(sw_poly(g).u_poly, u)


def _weight_scale(curve: CurveSpec) -> float:
    lam = curve.numeric_coefficients()[1:]
    return max([1.0] + [abs(c) ** (1 / k) for k, c in enumerate(lam, start=1) if c != 0])


def schur_limit(
    ev: SigmaEvaluator,
    u: Sequence[complex],
    eps0: Optional[float] = None,
    levels: Optional[int] = None,
) -> SchurLimit:
    """
    sigma(eps^{w_1} u_1, ..., eps^{w_g} u_g) / eps^{g(g+1)/2} as eps -> 0, with
    w_j the Sato weights, compared against schur_sign(g) * S(u).
    """
    g = ev.genus
    u = np.asarray(u, dtype=complex)
    weights = np.array([2 * (g - j) + 1 for j in range(1, g + 1)])
    total = g * (g + 1) // 2
    eps0 = min(0.3, 0.6 / np.sqrt(_weight_scale(ev.curve))) if eps0 is None else eps0
    levels = (5 if g <= 2 else 4) if levels is None else levels
    values = []
    for k in range(levels):
        eps = eps0 / 2**k
        values.append(sigma(ev, eps**weights * u) / eps**total)
    ext = richardson(values, power=2)
    sign = schur_sign(g)
    expected = sign * schur_value(g, u)
    discrepancy = abs(ext.value - expected) / max(abs(expected), 1e-300)
    return SchurLimit(
        limit=[ext.value.real, ext.value.imag],
        expected=[expected.real, expected.imag],
        discrepancy=float(discrepancy),
        error_estimate=ext.error,
        order=ext.order,
        sign=sign,
        published_sign=published_schur_sign(g),
    )


def confluent_limit(
    ev: SigmaEvaluator, le: LocalExpansions, t: complex, j: int = 1, levels: int = 5
) -> Tuple[Extrapolation, complex]:
    """
    sigma_flat(u - v) / (u_j - v_j) as u -> v along the curve, against
    confluent_constant(g) / x(v)^{j-1}.
    """
    g = ev.genus
    if not 1 <= j <= g:
        raise DomainError(f"j={j} outside 1..{g}")
    v = curve_point(le, t)
    h0 = 0.1 * abs(t) * np.exp(0.5j)
    values = []
    for k in range(levels):
        u = curve_point(le, t + h0 / 2**k)
        diff = np.asarray(u.u) - np.asarray(v.u)
        values.append(sigma_natural(ev, diff, 2) / diff[j - 1])
    return richardson(values, power=1), confluent_constant(g) / v.x ** (j - 1)


__all__ = [
    "Extrapolation",
    "richardson",
    "SigmaEvaluator",
    "sigma",
    "sigma_deriv",
    "sigma_natural",
    "natural_indices",
    "hankel_indices",
    "sharp_limit",
    "normalize",
    "build_evaluator",
    "evaluator_for",
    "l_form",
    "chi_and_L",
    "translation_residual",
    "parity_sign",
    "parity_residual",
    "riemann_form",
    "pfaffian",
    "LatticeCheck",
    "lattice_check",
    "brill_noether_matrix",
    "brill_noether_rank",
    "expected_rank",
    "linear_system_dimension",
    "stratum_point",
    "VanishingProfile",
    "vanishing_sets",
    "vanishing_profile",
    "SchurLimit",
    "schur_value",
    "schur_limit",
    "confluent_limit",
]
