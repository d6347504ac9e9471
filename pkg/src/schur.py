# src/schur.py
import logging
from dataclasses import dataclass
from functools import lru_cache
from math import factorial
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union

from sympy import QQ
from sympy.polys.rings import PolyElement, PolyRing

from .errors import ConstructionError, DomainError
from .exact_arith import (
    SatoGrading,
    check_sato_homogeneous,
    det_fraction_free,
    exact,
    lowest_degree_part,
    substitute,
    variable_table,
)

logger = logging.getLogger(__name__)

MAX_EXACT_GENUS = 8


def sato_weight(g: int, j: int) -> int:
    return 2 * (g - j) + 1


def point_table(n: int):
    return variable_table([f"xi{i}" for i in range(1, n + 1)])


def u_table(g: int):
    return variable_table([f"u{j}" for j in range(1, g + 1)])


def power_sum_table(k: int):
    return variable_table([f"p{i}" for i in range(1, k + 1)])


def schur_matrix(g: int, U: Callable[[int], object]) -> List[List[object]]:
    """The g x g staircase matrix with (i, j) entry U_{g-2i+j+1}, U_k = 0 for k < 0."""
    zero = U(-1)
    return [
        [U(g - 2 * i + j + 1) if g - 2 * i + j + 1 >= 0 else zero for j in range(1, g + 1)]
        for i in range(1, g + 1)
    ]


# ------------------------------------------------------ symmetric functions


@dataclass(frozen=True)
class SymFunTable:
    genus: int
    points: int
    ring: PolyRing
    values: Tuple[PolyElement, ...]

    def __call__(self, k: int) -> PolyElement:
        if k < 0:
            return self.ring.zero
        return self.values[k]


def _complete_homogeneous(k: int, variables: Sequence) -> List:
    h = [variables[0] ** 0] + [variables[0] * 0] * k
    for x in variables:
        for m in range(1, k + 1):
            h[m] = h[m] + x * h[m - 1]
    return h


@lru_cache(maxsize=None)
def complete_symmetric(k: int, n: int) -> PolyElement:
    """U_k = (-1)^k h_k in the point variables xi1..xin."""
    if n < 1:
        raise DomainError(f"need at least one point variable, got n={n}")
    R, xs = point_table(n)
    if k < 0:
        return R.zero
    h = _complete_homogeneous(k, xs)[k]
    return -h if k % 2 else h


@lru_cache(maxsize=None)
def sym_fun_table(g: int, n: int) -> SymFunTable:
    R, _ = point_table(n)
    values = tuple(complete_symmetric(k, n) for k in range(0, 2 * g))
    return SymFunTable(g, n, R, values)


def rho_values(xis: Sequence, upto: int) -> List:
    """(-1)^k h_k(xi) for k = 0..upto, for numbers or ring elements."""
    if not len(xis):
        raise DomainError("need at least one point")
    xis = [exact(x) if not isinstance(x, PolyElement) else x for x in xis]
    h = _complete_homogeneous(upto, xis)
    return [-c if k % 2 else c for k, c in enumerate(h)]


def elementary_symmetric(xis: Sequence) -> List:
    """e_0..e_m of the given values."""
    if not len(xis):
        raise DomainError("need at least one point")
    xis = [exact(x) if not isinstance(x, PolyElement) else x for x in xis]
    e = [xis[0] ** 0] + [xis[0] * 0] * len(xis)
    for x in xis:
        for m in range(len(xis), 0, -1):
            e[m] = e[m] + x * e[m - 1]
    return e


@lru_cache(maxsize=None)
def u_k_from_power_sums(k: int) -> PolyElement:
    """
    U_k in the power sums p_1..p_k, from the k x k determinant with -p_{i-j+1}
    on and below the diagonal and i on the superdiagonal, divided by k!.
    """
    if k < 1:
        raise DomainError(f"power-sum form needs k >= 1, got {k}")
    R, ps = power_sum_table(k)
    M = [
        [
            -ps[i - j] if j <= i else (i + 1 if j == i + 1 else 0)
            for j in range(k)
        ]
        for i in range(k)
    ]
    return R(det_fraction_free(M)) * QQ(1, factorial(k))


def embed_power_sums(poly: PolyElement, k: int) -> PolyElement:
    """Move a polynomial in p_1..p_m into QQ[p_1..p_k] for k >= m."""
    R, ps = power_sum_table(k)
    return substitute(poly, list(ps[: poly.ring.ngens]), zero=R.zero)


# ------------------------------------------------------------- S(u) itself


@dataclass(frozen=True)
class SWPoly:
    genus: int
    u_poly: PolyElement

    @property
    def ring(self) -> PolyRing:
        return self.u_poly.ring

    @property
    def weight(self) -> int:
        return self.genus * (self.genus + 1) // 2

    def evaluate(self, u: Sequence):
        return self.u_poly(*[exact(c) for c in u])

    def in_points(self, n: int) -> PolyElement:
        """S(u^(1) + ... + u^(n)) with u_j^(i) = xi_i^w / w, w = 2(g-j)+1."""
        R, xs = point_table(n)
        return substitute(self.u_poly, point_sum_images(self.genus, xs), zero=R.zero)

    def evaluate_points(self, xis: Sequence):
        """Direct staircase determinant of the complete symmetric functions."""
        rho = rho_values(xis, 2 * self.genus)
        zero = QQ(0)
        return det_fraction_free(schur_matrix(self.genus, lambda k: rho[k] if k >= 0 else zero))


def point_sum_images(g: int, gens: Sequence) -> List:
    """u_j of a sum of points with parameters ``gens`` (u_g^(i) = gen_i)."""
    images = []
    for j in range(1, g + 1):
        w = sato_weight(g, j)
        total = None
        for x in gens:
            term = x**w * QQ(1, w)
            total = term if total is None else total + term
        images.append(total)
    return images


def curve_limit_vector(g: int, v) -> List:
    """v = (v^{2g-1}/(2g-1), ..., v^3/3, v) as images of u_1..u_g."""
    return point_sum_images(g, [v])


@lru_cache(maxsize=None)
def sw_poly(g: int) -> SWPoly:
    """
    Schur-Weierstrass polynomial in u_1..u_g, via Newton's identities with the
    even power sums set to zero and p_r = r * u_{g-(r-1)/2} for odd r.
    """
    if not 1 <= g <= MAX_EXACT_GENUS:
        raise DomainError(f"genus {g} outside 1..{MAX_EXACT_GENUS}")
    R, us = u_table(g)
    p: Dict[int, PolyElement] = {}
    for r in range(1, 2 * g):
        p[r] = R(r) * us[g - (r - 1) // 2 - 1] if r % 2 else R.zero
    U = [R.one]
    for k in range(1, 2 * g):
        acc = R.zero
        for r in range(1, k + 1):
            term = p[r] * U[k - r]
            acc = acc - term if r % 2 else acc + term
        U.append(acc * QQ(1, k))
    S = det_fraction_free(schur_matrix(g, lambda k: U[k] if k >= 0 else R.zero))
    logger.debug("S for genus %d has %d terms", g, len(S))
    return SWPoly(g, R(S))


def hankel_determinant(g: int) -> PolyElement:
    R, us = u_table(g)
    m = (g + 1) // 2
    return R(det_fraction_free([[us[i + j] for j in range(m)] for i in range(m)]))


@lru_cache(maxsize=None)
def schur_sign(g: int) -> int:
    """The sign e with lowest-degree part of S equal to e times the Hankel determinant."""
    low = lowest_degree_part(sw_poly(g).u_poly)
    hankel = hankel_determinant(g)
    if low == hankel:
        return 1
    if low == -hankel:
        return -1
    raise ConstructionError(f"lowest part of S is not the Hankel determinant for g={g}")


# -------------------------------------------------------- natural index sets


@dataclass(frozen=True)
class NaturalSet:
    n: int
    g: int
    indices: Tuple[int, ...]

    def __iter__(self):
        return iter(self.indices)

    def __len__(self) -> int:
        return len(self.indices)

    def proper_subsets(self) -> List[Tuple[int, ...]]:
        out: List[Tuple[int, ...]] = []
        k = len(self.indices)
        for mask in range(2**k - 1):
            out.append(tuple(i for b, i in enumerate(self.indices) if mask >> b & 1))
        return out


def natural_set(n: int, g: int) -> NaturalSet:
    if n < 1:
        raise DomainError(f"natural index set needs n >= 1, got {n}")
    indices = tuple(i for i in range(n + 1, g + 1) if (i - n - 1) % 2 == 0)
    return NaturalSet(n, g, indices)


def sw_derivative(S: Union[SWPoly, PolyElement], idx: Iterable[int]) -> PolyElement:
    poly = S.u_poly if isinstance(S, SWPoly) else S
    g = poly.ring.ngens
    gens = poly.ring.gens
    for i in idx:
        if not 1 <= i <= g:
            raise DomainError(f"derivative index {i} outside 1..{g}")
        poly = poly.diff(gens[i - 1])
    return poly


def natural_derivative(g: int, n: int) -> PolyElement:
    """S_{natural^n}; n = 0 or n >= g give S itself."""
    if n < 1:
        return sw_poly(g).u_poly
    return sw_derivative(sw_poly(g), natural_set(n, g))


# ------------------------------------------------------------- identities


@lru_cache(maxsize=None)
def formal_schur(g: int) -> PolyElement:
    """S as a polynomial in formal U_1..U_{2g-1} with U_0 = 1."""
    R, Us = variable_table([f"U{r}" for r in range(1, 2 * g)])
    return det_fraction_free(
        schur_matrix(g, lambda k: R.one if k == 0 else (Us[k - 1] if k > 0 else R.zero))
    )


def power_sum_derivative_check(g: int, k: int, target: Optional[PolyElement] = None) -> bool:
    """
    Both routes of k d/dp_k = (-1)^k sum_r U_r d/dU_{k+r} applied to ``target``
    (default S in formal U's) agree identically in p_1..p_{2g-1}.
    """
    top = 2 * g - 1
    if not 1 <= k <= top:
        raise DomainError(f"k={k} outside 1..{top}")
    F = formal_schur(g) if target is None else target
    RU = F.ring
    Us = RU.gens
    Rp, ps = power_sum_table(top)
    images = [embed_power_sums(u_k_from_power_sums(r), top) for r in range(1, top + 1)]
    lhs = substitute(F, images, zero=Rp.zero).diff(ps[k - 1]) * k
    rhs_u = RU.zero
    for r in range(0, top - k + 1):
        dF = F.diff(Us[k + r - 1])
        rhs_u += dF if r == 0 else Us[r - 1] * dF
    rhs = substitute(rhs_u, images, zero=Rp.zero)
    if k % 2:
        rhs = -rhs
    return lhs == rhs


def fundamental_matrix(xis: Sequence, row_ends: Sequence[int]) -> List[List]:
    """
    Rows are the (m+1)-windows of ..., 0, 0, 1, rho_1, rho_2, ... ending at
    rho_k; k = 0 is the forbidden simple row.
    """
    m = len(xis)
    if 0 in row_ends:
        raise ConstructionError("the simple row (0, ..., 0, 1) is not allowed")
    top = max([k for k in row_ends] + [0])
    rho = rho_values(xis, top)
    zero = rho[0] * 0
    return [
        [rho[k - m + i] if k - m + i >= 0 else zero for i in range(m + 1)]
        for k in row_ends
    ]


def _window_end(row: Sequence, rho: Sequence, m: int) -> Optional[int]:
    for k in range(-1, len(rho)):
        window = [rho[k - m + i] if k - m + i >= 0 else 0 for i in range(m + 1)]
        if all(a == b for a, b in zip(row, window)):
            return k
    return None


def fundamental_matrix_kernel_check(xis: Sequence, M: Sequence[Sequence]) -> bool:
    """M (eps_m, ..., eps_1, 1)^t = 0 for a fundamental matrix without a simple row."""
    m = len(xis)
    rho = rho_values(xis, 4 * m + 32)
    for row in M:
        if len(row) != m + 1:
            raise ConstructionError(f"row of length {len(row)}, expected {m + 1}")
        k = _window_end(row, rho, m)
        if k is None:
            raise ConstructionError("row is not a window of the rho sequence")
        if k == 0:
            raise ConstructionError("the simple row (0, ..., 0, 1) is not allowed")
    e = elementary_symmetric(xis)
    vector = [e[m - i] for i in range(m + 1)]
    return all(sum(a * b for a, b in zip(row, vector)) == 0 for row in M)


def stratum_determinant(g: int, n: int) -> PolyElement:
    table = sym_fun_table(g, n)
    return det_fraction_free(schur_matrix(g, table))


def stratum_vanishing_check(g: int, n: int) -> bool:
    """S(u^(1) + ... + u^(n)) vanishes identically in the n point variables."""
    if n < 1:
        raise DomainError(f"need at least one point, got n={n}")
    return stratum_determinant(g, n) == 0


def sharp_curve_limit(g: int) -> PolyElement:
    """S_sharp(v) on the curve-limit vector, in QQ[v]."""
    R, (v,) = variable_table(["v"])
    return substitute(natural_derivative(g, 1), curve_limit_vector(g, v), zero=R.zero)


def sharp_leading_check(g: int) -> bool:
    R, (v,) = variable_table(["v"])
    sign = -1 if ((g - 1) * (g - 2) * (g - 3) // 2) % 2 else 1
    return sharp_curve_limit(g) == -sign * v**g


def flat_double_check(g: int) -> bool:
    """S_flat(2v) = -(-1)^{g(g-1)(g-2)/2} 2 v^{2g-1}."""
    R, (v,) = variable_table(["v"])
    images = [2 * c for c in curve_limit_vector(g, v)]
    value = substitute(natural_derivative(g, 2), images, zero=R.zero)
    sign = -1 if (g * (g - 1) * (g - 2) // 2) % 2 else 1
    return value == -sign * 2 * v ** (2 * g - 1)


def v_coefficients(poly: PolyElement) -> Dict[int, PolyElement]:
    """Split a polynomial whose last generator is v by the power of v."""
    R = poly.ring
    parts: Dict[int, Dict] = {}
    for monom, coeff in poly.iterterms():
        d = monom[-1]
        parts.setdefault(d, {})[monom[:-1] + (0,)] = coeff
    return {d: R.from_dict(terms) for d, terms in parts.items()}


def leading_term_recursion_check(g: int, n: int) -> bool:
    """
    S_{natural^{n+1}}(u^(1)+...+u^(n)+v) has no v-power below g-n, its
    v^{g-n} coefficient is (-1)^{(g-n)(g-n-1)/2} S_{natural^n}(u^(1)+...+u^(n)),
    the rest having v-degree above g-n.
    """
    if not 1 <= n <= g - 1:
        raise DomainError(f"n={n} outside 1..{g - 1}")
    R, gens = variable_table([f"xi{i}" for i in range(1, n + 1)] + ["v"])
    xs, v = gens[:-1], gens[-1]
    points = point_sum_images(g, xs)
    with_v = [a + b for a, b in zip(points, curve_limit_vector(g, v))]
    upper = substitute(natural_derivative(g, n + 1), with_v, zero=R.zero)
    lower = substitute(natural_derivative(g, n), points, zero=R.zero)
    parts = v_coefficients(upper)
    d = g - n
    if any(deg < d and coeff for deg, coeff in parts.items()):
        return False
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    return parts.get(d, R.zero) == sign * lower


def is_homogeneous(g: int) -> bool:
    S = sw_poly(g)
    return check_sato_homogeneous(S.u_poly, S.weight, SatoGrading.for_genus(g))


__all__ = [
    "SymFunTable",
    "SWPoly",
    "NaturalSet",
    "complete_symmetric",
    "sym_fun_table",
    "u_k_from_power_sums",
    "sw_poly",
    "natural_set",
    "sw_derivative",
    "natural_derivative",
    "power_sum_derivative_check",
    "fundamental_matrix",
    "fundamental_matrix_kernel_check",
    "stratum_vanishing_check",
    "hankel_determinant",
    "schur_sign",
    "sharp_leading_check",
    "flat_double_check",
    "leading_term_recursion_check",
    "curve_limit_vector",
    "point_sum_images",
]
