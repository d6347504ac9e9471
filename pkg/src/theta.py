# src/theta.py
import logging
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Any, Dict, List, Optional, Sequence, Tuple

import mpmath
import numpy as np
from numpy.polynomial.legendre import leggauss
from pydantic import BaseModel, ConfigDict, Field

from .config import get_settings
from .curve_series import CurveSpec
from .errors import (
    ConfigurationError,
    ConstructionError,
    DecompositionError,
    PrecisionError,
    UnsupportedRangeError,
)

logger = logging.getLogger(__name__)

QUADRATURE_START = 16
QUADRATURE_MAX = 8192
QUADRATURE_TOLERANCE = 1e-14
RIEMANN_TOLERANCE = 1e-9
SEPARATION = 1e-8
LATTICE_BUDGET = 2_000_000
MAX_RADIUS = 60.0


# ----------------------------------------------------------------- periods


def real_branch_points(curve: CurveSpec) -> np.ndarray:
    """Sorted real roots of f; anything else is outside the supported configuration."""
    if curve.symbolic:
        raise ConfigurationError("periods need numeric coefficients")
    roots = curve.roots()
    scale = max(1.0, float(np.max(np.abs(roots))))
    if np.any(np.abs(roots.imag) > 1e-9 * scale):
        raise UnsupportedRangeError(f"complex branch points {roots[np.abs(roots.imag) > 0]}")
    roots = np.sort(roots.real)
    if np.min(np.diff(roots)) < SEPARATION * scale:
        raise UnsupportedRangeError("coincident branch points")
    return roots


def eta_numerators(curve: CurveSpec) -> List[np.ndarray]:
    """Numerators of eta_j = (1/2y) sum_{k=j}^{2g-j} (k+1-j) l_{2g-k-j} x^k dx, highest power first."""
    g = curve.genus
    lam = curve.numeric_coefficients()
    out = []
    for j in range(1, g + 1):
        coeffs = np.zeros(2 * g - j + 1)
        for k in range(j, 2 * g - j + 1):
            coeffs[k] = (k + 1 - j) * lam[2 * g - k - j]
        out.append(coeffs[::-1])
    return out


def omega_numerators(g: int) -> List[np.ndarray]:
    return [np.eye(1, j, 0)[0] for j in range(1, g + 1)]


def _interval_integrals(
    roots: np.ndarray, m: int, numerators: Sequence[np.ndarray], tolerance: float
) -> np.ndarray:
    """
    Loop integrals of P(x) dx / 2y around the interval (e_m, e_{m+1}). With
    x = mid + w cos(theta) the square-root endpoint singularities cancel and
    the integral becomes int_0^pi P(x) / sqrt(-h(x)) dtheta, h = f / ((x-e_m)(x-e_{m+1})).
    """
    lo, hi = roots[m], roots[m + 1]
    mid, w = (lo + hi) / 2, (hi - lo) / 2
    others = np.delete(roots, [m, m + 1])

    def estimate(k: int) -> np.ndarray:
        nodes, weights = leggauss(k)
        theta = (nodes + 1) * np.pi / 2
        x = mid + w * np.cos(theta)
        h = np.prod(x[:, None] - others[None, :], axis=1)
        root = np.sqrt(-h.astype(complex))
        values = np.array([np.polyval(P, x) for P in numerators]) / root
        return (np.pi / 2) * values @ weights

    k = QUADRATURE_START
    previous = estimate(k)
    while k < QUADRATURE_MAX:
        k *= 2
        current = estimate(k)
        scale = np.maximum(1.0, np.abs(current))
        if np.all(np.abs(current - previous) <= tolerance * scale):
            logger.debug("interval %d converged with %d nodes", m, k)
            return current
        previous = current
    raise PrecisionError(f"quadrature on ({lo:.6g}, {hi:.6g}) did not settle by {k} nodes")


@dataclass(frozen=True)
class PeriodData:
    """Period matrices of omega_j and eta_j on a symplectic basis (a_i, b_i)."""

    omega1: np.ndarray
    omega2: np.ndarray
    eta1: np.ndarray
    eta2: np.ndarray
    legendre_sign: int
    diagnostics: Dict[str, float] = field(default_factory=dict)

    @property
    def genus(self) -> int:
        return self.omega1.shape[0]

    @cached_property
    def omega1_inv(self) -> np.ndarray:
        return np.linalg.inv(self.omega1)

    @cached_property
    def Z(self) -> np.ndarray:
        Z = self.omega1_inv @ self.omega2
        return (Z + Z.T) / 2

    @cached_property
    def quadratic(self) -> np.ndarray:
        """eta' omega'^{-1}, the matrix of the exponential factor."""
        M = self.eta1 @ self.omega1_inv
        return (M + M.T) / 2

    @cached_property
    def generators(self) -> np.ndarray:
        """Columns omega'_1, omega''_1, omega'_2, omega''_2, ... of the period lattice."""
        cols = []
        for i in range(self.genus):
            cols.extend([self.omega1[:, i], self.omega2[:, i]])
        return np.array(cols).T

    def real_coordinates(self, v: Sequence[complex]) -> Tuple[np.ndarray, np.ndarray]:
        """(v', v'') in R^g x R^g with v = omega' v' + omega'' v''."""
        g = self.genus
        A = np.hstack([self.omega1, self.omega2])
        real = np.vstack([A.real, A.imag])
        v = np.asarray(v, dtype=complex)
        coords = np.linalg.solve(real, np.concatenate([v.real, v.imag]))
        return coords[:g], coords[g:]

    def lattice_coordinates(self, ell: Sequence[complex], tolerance: float = 1e-7):
        first, second = self.real_coordinates(ell)
        both = np.concatenate([first, second])
        rounded = np.rint(both)
        if np.max(np.abs(both - rounded)) > tolerance:
            raise DecompositionError(f"{ell} is not a period: coordinates {both}")
        g = self.genus
        return rounded[:g].astype(int), rounded[g:].astype(int)

    def lattice_vector(self, first: Sequence[int], second: Sequence[int]) -> np.ndarray:
        return self.omega1 @ np.asarray(first, dtype=float) + self.omega2 @ np.asarray(
            second, dtype=float
        )

    def to_json(self) -> Dict[str, Any]:
        def encode(M):
            return [[[float(c.real), float(c.imag)] for c in row] for row in np.atleast_2d(M)]

        return {
            "omega1": encode(self.omega1),
            "omega2": encode(self.omega2),
            "eta1": encode(self.eta1),
            "eta2": encode(self.eta2),
            "Z": encode(self.Z),
            "legendre_sign": self.legendre_sign,
            "diagnostics": self.diagnostics,
        }


def _assemble(
    cycles: np.ndarray, signs: Sequence[int], g: int
) -> Tuple[np.ndarray, np.ndarray]:
    """Rows: differentials. a_i is interval 2i-1, b_i the sum of intervals 2k, k >= i."""
    signed = cycles * np.asarray(signs)[:, None]
    first = np.array([signed[2 * i] for i in range(g)]).T
    second = np.array([signed[2 * i + 1 :: 2].sum(axis=0) for i in range(g)]).T
    return first, second


def _is_riemann_matrix(Z: np.ndarray) -> bool:
    if np.max(np.abs(Z - Z.T)) > RIEMANN_TOLERANCE * max(1.0, np.max(np.abs(Z))):
        return False
    return bool(np.all(np.linalg.eigvalsh((Z.imag + Z.imag.T) / 2) > 0))


def compute_periods(curve: CurveSpec, tolerance: float = QUADRATURE_TOLERANCE) -> PeriodData:
    """
    Periods over a canonical basis built from the loops around consecutive
    branch points. The loop orientations are searched so that Z is a Riemann
    matrix; the eta periods use the same loops and must satisfy the
    Legendre relation.
    """
    g = curve.genus
    roots = real_branch_points(curve)
    numerators = omega_numerators(g) + eta_numerators(curve)
    cycles = np.array(
        [_interval_integrals(roots, m, numerators, tolerance) for m in range(2 * g)]
    )
    omega_cycles, eta_cycles = cycles[:, :g], cycles[:, g:]
    for rest in product((1, -1), repeat=2 * g - 1):
        signs = (1,) + rest
        w1, w2 = _assemble(omega_cycles, signs, g)
        if abs(np.linalg.det(w1)) < 1e-300:
            continue
        if _is_riemann_matrix(np.linalg.solve(w1, w2)):
            break
    else:
        raise PrecisionError("no loop orientation gives a symmetric Z with positive imaginary part")
    e1, e2 = _assemble(eta_cycles, signs, g)

    legendre = w1.T @ e2 - e1.T @ w2
    s = np.trace(legendre) / (2j * np.pi * g)
    sign = 1 if s.real > 0 else -1
    residual = float(np.max(np.abs(legendre - sign * 2j * np.pi * np.eye(g))))
    symmetric = float(np.max(np.abs(w1.T @ e1 - e1.T @ w1)))
    if residual > 1e-8 * 2 * np.pi or symmetric > 1e-8 * max(1.0, np.max(np.abs(w1.T @ e1))):
        raise PrecisionError(f"Legendre relation fails: residual {residual:.3g}")
    Z = np.linalg.solve(w1, w2)
    logger.info("periods for genus %d: orientation %s, Legendre sign %d", g, signs, sign)
    return PeriodData(
        w1,
        w2,
        e1,
        e2,
        sign,
        {
            "symmetry": float(np.max(np.abs(Z - Z.T))),
            "min_imag_eigenvalue": float(np.min(np.linalg.eigvalsh((Z.imag + Z.imag.T) / 2))),
            "legendre_residual": residual,
        },
    )


# ------------------------------------------------------------------- theta


class ThetaChar(BaseModel):
    """Half-integer characteristic [a; b] of theta."""

    model_config = ConfigDict(frozen=True)

    a: Tuple[float, ...] = Field(..., description="Shift of the summation index")
    b: Tuple[float, ...] = Field(..., description="Shift of the argument")

    @classmethod
    def standard(cls, g: int) -> "ThetaChar":
        """a = (1/2, ..., 1/2), b = (g/2, (g-1)/2, ..., 1/2)."""
        return cls(a=(0.5,) * g, b=tuple((g - k) / 2 for k in range(g)))

    @classmethod
    def all_half(cls, g: int) -> List["ThetaChar"]:
        halves = [tuple(v) for v in product((0.0, 0.5), repeat=g)]
        return [cls(a=a, b=b) for a in halves for b in halves]

    @property
    def genus(self) -> int:
        return len(self.a)

    def is_odd(self) -> bool:
        return int(round(4 * float(np.dot(self.a, self.b)))) % 2 == 1

    def arrays(self) -> Tuple[np.ndarray, np.ndarray]:
        return np.asarray(self.a, dtype=float), np.asarray(self.b, dtype=float)


def _tail_bound(R: float, rho: float, g: int) -> float:
    if R <= rho / 2:
        return float("inf")
    return float((g / 2) * (2 / rho) ** g * mpmath.gammainc(g / 2, (R - rho / 2) ** 2))


def _derivative_weight(R: float, shift: float, lam_min: float, order: int) -> float:
    if order == 0:
        return 1.0
    return (2 * np.pi * (R / np.sqrt(np.pi * lam_min) + shift + 1)) ** order


def summation_points(
    Z: np.ndarray, a: np.ndarray, z: np.ndarray, tolerance: float, order: int = 0
) -> np.ndarray:
    """
    The vectors n + a inside the ellipsoid ||sqrt(pi) T (n + a + c)|| <= R,
    c = (Im Z)^{-1} Im z, with R grown until the Gaussian tail bound is below
    ``tolerance`` (relative to exp(pi c^T Im Z c)).
    """
    g = Z.shape[0]
    Y = (Z.imag + Z.imag.T) / 2
    lam = np.linalg.eigvalsh(Y)
    if lam[0] <= 0:
        raise ConfigurationError("Im Z is not positive definite")
    Yinv = np.linalg.inv(Y)
    c = Yinv @ np.asarray(z).imag
    rho = float(np.sqrt(np.pi * lam[0]))
    shift = float(np.linalg.norm(c))
    R = rho / 2 + 1.0
    while _tail_bound(R, rho, g) * _derivative_weight(R, shift, lam[0], order) > tolerance:
        R += 0.25
        if R > MAX_RADIUS:
            raise PrecisionError(f"theta tail bound not reached below radius {MAX_RADIUS}")
    centre = -a - c
    half = (R / np.sqrt(np.pi)) * np.sqrt(np.diag(Yinv))
    ranges = [np.arange(np.ceil(lo), np.floor(hi) + 1) for lo, hi in zip(centre - half, centre + half)]
    count = int(np.prod([len(r) for r in ranges]))
    if count > LATTICE_BUDGET:
        raise PrecisionError(f"theta needs {count} lattice points, above the budget")
    if count == 0:
        return np.zeros((0, g))
    grid = np.stack(np.meshgrid(*ranges, indexing="ij"), axis=-1).reshape(-1, g)
    shifted = grid + a
    offset = shifted + c
    inside = np.einsum("ki,ij,kj->k", offset, Y, offset) * np.pi <= R * R
    logger.debug("theta radius %.3g with %d of %d box points", R, int(inside.sum()), count)
    return shifted[inside]


def theta_jet(
    z: Sequence[complex],
    Z: np.ndarray,
    char: Optional[ThetaChar] = None,
    tolerance: Optional[float] = None,
    order: int = 0,
) -> Tuple[complex, Optional[np.ndarray], Optional[np.ndarray]]:
    """theta[a;b](z; Z) with its gradient (order >= 1) and Hessian (order 2)."""
    if order not in (0, 1, 2):
        raise ConfigurationError(f"theta derivatives of order {order} are not provided")
    Z = np.atleast_2d(np.asarray(Z, dtype=complex))
    g = Z.shape[0]
    z = np.asarray(z, dtype=complex).reshape(g)
    if char is None:
        a = b = np.zeros(g)
    else:
        a, b = char.arrays()
    tolerance = get_settings().theta_tolerance if tolerance is None else tolerance
    N = summation_points(Z, a, z, tolerance, order)
    phase = 0.5 * np.einsum("ki,ij,kj->k", N, Z, N) + N @ (z + b)
    terms = np.exp(2j * np.pi * phase)
    value = complex(terms.sum())
    grad = hess = None
    if order >= 1:
        grad = (2j * np.pi) * (N.T @ terms)
    if order == 2:
        hess = (2j * np.pi) ** 2 * np.einsum("ki,kj,k->ij", N, N, terms)
    return value, grad, hess


def theta(z, Z, char: Optional[ThetaChar] = None, tolerance: Optional[float] = None) -> complex:
    return theta_jet(z, Z, char, tolerance, 0)[0]


def theta_grad(z, Z, char: Optional[ThetaChar] = None, tolerance: Optional[float] = None) -> np.ndarray:
    return theta_jet(z, Z, char, tolerance, 1)[1]


def theta_hess(z, Z, char: Optional[ThetaChar] = None, tolerance: Optional[float] = None) -> np.ndarray:
    return theta_jet(z, Z, char, tolerance, 2)[2]


def quasi_period_factor(z, Z, char: ThetaChar, first: Sequence[int], second: Sequence[int]) -> complex:
    """theta(z + m' + Z m'') / theta(z) for integer m', m''."""
    a, b = char.arrays()
    m1 = np.asarray(first, dtype=float)
    m2 = np.asarray(second, dtype=float)
    z = np.asarray(z, dtype=complex)
    exponent = 2j * np.pi * (a @ m1 - b @ m2) - 1j * np.pi * (m2 @ Z @ m2) - 2j * np.pi * (m2 @ z)
    return complex(np.exp(exponent))


def locate_characteristic(
    Z: np.ndarray,
    on_points: Sequence[np.ndarray],
    references: Sequence[np.ndarray],
    tolerance: Optional[float] = None,
    threshold: float = 1e-6,
) -> Tuple[ThetaChar, Dict[str, float]]:
    """
    The half-integer characteristic whose theta vanishes at every point of
    ``on_points`` (points of the theta divisor in theta coordinates), scored
    against nearby reference points off the divisor.
    """
    g = Z.shape[0]
    scores: Dict[str, float] = {}
    ranked = []
    for char in ThetaChar.all_half(g):
        on = max(abs(theta(p, Z, char, tolerance)) for p in on_points)
        off = max(abs(theta(r, Z, char, tolerance)) for r in references)
        score = on / off if off > 0 else float("inf")
        scores[f"{char.a}|{char.b}"] = score
        ranked.append((score, char))
    ranked.sort(key=lambda item: item[0])
    best_score, best = ranked[0]
    runner_up = ranked[1][0] if len(ranked) > 1 else float("inf")
    if best_score > threshold or runner_up < 1e3 * best_score:
        raise ConstructionError(
            f"no characteristic isolates the theta divisor (best {best_score:.3g}, next {runner_up:.3g})"
        )
    logger.info("located characteristic %s (score %.3g)", best, best_score)
    return best, scores


__all__ = [
    "PeriodData",
    "ThetaChar",
    "real_branch_points",
    "eta_numerators",
    "compute_periods",
    "summation_points",
    "theta_jet",
    "theta",
    "theta_grad",
    "theta_hess",
    "quasi_period_factor",
    "locate_characteristic",
]
