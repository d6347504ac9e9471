# src/division_polys.py
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Any, Dict, List, Optional, Sequence, Tuple

from pydantic import BaseModel, Field
from sympy import QQ
from sympy.polys.rings import PolyElement, PolyRing

from .curve_series import CurveSpec, LocalExpansions
from .errors import (
    ConfigurationError,
    ConstructionError,
    DomainError,
    UndefinedError,
    UnsupportedRangeError,
)
from .exact_arith import (
    SatoGrading,
    TruncSeries,
    det_fraction_free,
    exact,
    substitute,
    to_complex,
    to_fraction,
    variable_table,
)

logger = logging.getLogger(__name__)


def _lambda_names(curve: CurveSpec) -> List[str]:
    return [f"l{k}" for k in range(1, 2 * curve.genus + 2)] if curve.symbolic else []


@lru_cache(maxsize=None)
def curve_ring(curve: CurveSpec) -> Tuple[PolyRing, PolyElement, PolyElement, PolyElement]:
    """QQ[x] (or QQ[x, l1, ...]) together with x, f(x) and f'(x)."""
    R, gens = variable_table(["x"] + _lambda_names(curve))
    x = gens[0]
    if curve.symbolic:
        coeffs = [R.one] + list(gens[1:])
    else:
        coeffs = [R(c) for c in curve.coefficients()]
    deg = 2 * curve.genus + 1
    f = R.zero
    for k, c in enumerate(coeffs):
        f += c * x ** (deg - k)
    return R, x, f, f.diff(x)


def _divisible_by_x(p: PolyElement) -> bool:
    return all(m[0] >= 1 for m in p.itermonoms())


def _shift_x(p: PolyElement) -> PolyElement:
    return p.ring.from_dict({(m[0] - 1,) + m[1:]: c for m, c in p.iterterms()})


def _canonical(curve: CurveSpec, a: PolyElement, b: PolyElement, m: int, k: int):
    R, x, f, _ = curve_ring(curve)
    if m < 0:
        a, b, m = a * x ** (-m), b * x ** (-m), 0
    if k < 0:
        a, b, k = a * f ** (-k), b * f ** (-k), 0
    if not a and not b:
        return R.zero, R.zero, 0, 0
    while m > 0 and _divisible_by_x(a) and _divisible_by_x(b):
        a, b, m = _shift_x(a), _shift_x(b), m - 1
    while k > 0:
        qa, ra = a.div(f)
        qb, rb = b.div(f)
        if ra or rb:
            break
        a, b, k = qa, qb, k - 1
    return a, b, m, k


@dataclass(frozen=True, eq=False)
class CurveFunction:
    """(a(x) + b(x) y) / (x^xpow f(x)^fpow) modulo y^2 = f(x), kept in lowest terms."""

    curve: CurveSpec
    a: PolyElement
    b: PolyElement
    xpow: int = 0
    fpow: int = 0

    @classmethod
    def make(cls, curve: CurveSpec, a: Any = 0, b: Any = 0, xpow: int = 0, fpow: int = 0):
        R = curve_ring(curve)[0]
        a, b, xpow, fpow = _canonical(curve, R(a), R(b), xpow, fpow)
        return cls(curve, a, b, xpow, fpow)

    @classmethod
    def x(cls, curve: CurveSpec) -> "CurveFunction":
        return cls.make(curve, a=curve_ring(curve)[1])

    @classmethod
    def y(cls, curve: CurveSpec) -> "CurveFunction":
        return cls.make(curve, b=1)

    @classmethod
    def constant(cls, curve: CurveSpec, c: Any) -> "CurveFunction":
        return cls.make(curve, a=exact(c))

    @classmethod
    def monomial(cls, curve: CurveSpec, xdeg: int, ydeg: int) -> "CurveFunction":
        x = curve_ring(curve)[1]
        return cls.make(curve, a=x**xdeg) if ydeg == 0 else cls.make(curve, b=x**xdeg)

    @property
    def ring(self) -> PolyRing:
        return curve_ring(self.curve)[0]

    @property
    def is_polynomial(self) -> bool:
        return self.xpow == 0 and self.fpow == 0

    def is_zero(self) -> bool:
        return not self.a and not self.b

    def _other(self, other: Any) -> "CurveFunction":
        if isinstance(other, CurveFunction):
            if other.curve != self.curve:
                raise DomainError("functions on different curves")
            return other
        return CurveFunction.constant(self.curve, other)

    def _lift(self, m: int, k: int):
        _, x, f, _ = curve_ring(self.curve)
        scale = x ** (m - self.xpow) * f ** (k - self.fpow)
        return self.a * scale, self.b * scale

    def __add__(self, other: Any) -> "CurveFunction":
        other = self._other(other)
        m, k = max(self.xpow, other.xpow), max(self.fpow, other.fpow)
        a1, b1 = self._lift(m, k)
        a2, b2 = other._lift(m, k)
        return CurveFunction.make(self.curve, a1 + a2, b1 + b2, m, k)

    __radd__ = __add__

    def __neg__(self) -> "CurveFunction":
        return CurveFunction(self.curve, -self.a, -self.b, self.xpow, self.fpow)

    def __sub__(self, other: Any) -> "CurveFunction":
        return self + (-self._other(other))

    def __rsub__(self, other: Any) -> "CurveFunction":
        return self._other(other) - self

    def __mul__(self, other: Any) -> "CurveFunction":
        other = self._other(other)
        f = curve_ring(self.curve)[2]
        a = self.a * other.a + self.b * other.b * f
        b = self.a * other.b + self.b * other.a
        return CurveFunction.make(
            self.curve, a, b, self.xpow + other.xpow, self.fpow + other.fpow
        )

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "CurveFunction":
        if e < 0:
            raise DomainError("negative powers of curve functions are not tracked")
        result = CurveFunction.constant(self.curve, 1)
        for _ in range(e):
            result = result * self
        return result

    def scale(self, c: Any) -> "CurveFunction":
        c = exact(c)
        return CurveFunction.make(self.curve, self.a * c, self.b * c, self.xpow, self.fpow)

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, CurveFunction):
            if isinstance(other, (int, Fraction, QQ.dtype)):
                other = CurveFunction.constant(self.curve, other)
            else:
                return NotImplemented
        if other.curve != self.curve:
            return False
        m, k = max(self.xpow, other.xpow), max(self.fpow, other.fpow)
        a1, b1 = self._lift(m, k)
        a2, b2 = other._lift(m, k)
        return a1 == a2 and b1 == b2

    __hash__ = None

    # valuation at infinity
    def pole_order(self) -> int:
        if self.is_zero():
            raise UndefinedError("the zero function has no pole order")
        g = self.curve.genus
        orders = []
        if self.a:
            orders.append(2 * self.a.degree(self.ring.gens[0]))
        if self.b:
            orders.append(2 * self.b.degree(self.ring.gens[0]) + 2 * g + 1)
        return max(orders) - 2 * self.xpow - 2 * (2 * g + 1) * self.fpow

    def sato_weights(self) -> set:
        """Sato weights of every term, with x -> -2, y -> -(2g+1), l_j -> -2j."""
        g = self.curve.genus
        grading = SatoGrading.for_genus(g)
        names = [str(s) for s in self.ring.symbols]
        shift = 2 * self.xpow + 2 * (2 * g + 1) * self.fpow
        weights = {grading.monomial_weight(names, m) + shift for m in self.a.itermonoms()}
        weights |= {
            grading.monomial_weight(names, m) - (2 * g + 1) + shift
            for m in self.b.itermonoms()
        }
        return weights

    # evaluation
    def evaluate(self, x0: Any, y0: Any):
        """Exact for rational (x0, y0) on an exact curve, complex otherwise."""
        if self.curve.symbolic:
            raise DomainError("a symbolic curve function has no numeric value")
        R, _, f, _ = curve_ring(self.curve)
        exact_point = all(
            isinstance(v, (int, Fraction, QQ.dtype)) and not isinstance(v, bool)
            for v in (x0, y0)
        )
        if exact_point:
            x0, y0 = exact(x0), exact(y0)
            den = x0**self.xpow * f(x0) ** self.fpow
            if den == 0:
                raise UndefinedError(f"pole at x = {x0}")
            return (self.a(x0) + self.b(x0) * y0) / den
        x0, y0 = complex(x0), complex(y0)
        den = x0**self.xpow * complex(_polyval(f, x0)) ** self.fpow
        if den == 0:
            raise UndefinedError(f"pole at x = {x0}")
        return (_polyval(self.a, x0) + _polyval(self.b, x0) * y0) / den

    def series(self, le: LocalExpansions) -> TruncSeries:
        """The Laurent series in t of this function along the expansion at infinity."""
        if le.curve != self.curve:
            raise DomainError("expansions belong to another curve")
        numerator = _x_series(self.a, le) + _x_series(self.b, le) * le.y
        if self.xpow:
            numerator = numerator * TruncSeries.monomial(2 * self.xpow, le.order, le.curve.domain)
        if self.fpow:
            numerator = numerator * (le.y * le.y) ** (-self.fpow)
        return numerator

    def to_json(self) -> Dict[str, Any]:
        return {
            "a": _dense_strings(self.a),
            "b": _dense_strings(self.b),
            "x_power": self.xpow,
            "f_power": self.fpow,
        }

    def __repr__(self) -> str:
        den = ""
        if self.xpow or self.fpow:
            den = f" / (x^{self.xpow} f^{self.fpow})"
        return f"CurveFunction(({self.a.as_expr()}) + ({self.b.as_expr()})*y{den})"


def _polyval(p: PolyElement, x0: complex) -> complex:
    total = 0j
    for (e,), c in p.iterterms():
        total += to_complex(c) * x0**e
    return total


def _dense_strings(p: PolyElement) -> List[str]:
    if p.ring.ngens != 1:
        return [f"{p.as_expr()}"]
    coeffs = {m[0]: c for m, c in p.iterterms()}
    deg = max(coeffs) if coeffs else -1
    return [str(coeffs.get(e, 0)) for e in range(deg + 1)]


def _x_series(p: PolyElement, le: LocalExpansions) -> TruncSeries:
    D = le.curve.domain
    acc = TruncSeries((), le.order, D)
    for monom, c in p.iterterms():
        coeff = c if D is QQ else D.from_dict({monom[1:]: c})
        acc = acc + TruncSeries.monomial(-2 * monom[0], le.order, D, coeff=coeff)
    return acc


# ------------------------------------------------------------- derivatives


def ddx(F: CurveFunction) -> CurveFunction:
    """d/dx with dy/dx = f'(x) / (2y), reduced to lowest terms."""
    _, x, f, df = curve_ring(F.curve)
    gx = F.ring.gens[0]
    m, k = F.xpow, F.fpow
    log_part = f * m + x * df * k
    a = (x * f * F.a.diff(gx) - F.a * log_part) * 2
    b = x * (f * F.b.diff(gx) * 2 + F.b * df) - F.b * log_part * 2
    return CurveFunction.make(F.curve, a * QQ(1, 2), b * QQ(1, 2), m + 1, k + 1)


def derivation(F: CurveFunction) -> CurveFunction:
    """d/du_1 = 2y d/dx on polynomial functions: a + by -> (2b'f + bf') + 2a'y."""
    if not F.is_polynomial:
        return ddu(F, 1)
    _, _, f, df = curve_ring(F.curve)
    gx = F.ring.gens[0]
    return CurveFunction.make(
        F.curve, F.b.diff(gx) * f * 2 + F.b * df, F.a.diff(gx) * 2
    )


def ddu(F: CurveFunction, j: int) -> CurveFunction:
    """(2y / x^{j-1}) d/dx, the derivative along the curve in u_j."""
    g = F.curve.genus
    if not 1 <= j <= g:
        raise DomainError(f"u_{j} outside 1..{g}")
    if j == 1 and F.is_polynomial:
        return derivation(F)
    return CurveFunction.make(F.curve, b=2, xpow=j - 1) * ddx(F)


@dataclass(frozen=True)
class DerivativeTable:
    """
    y, y', y'', ... as curve functions, and the coefficients a[m][j] with
    (d/du_1)^m = sum_j a[m][j] (d/dx)^j, whose diagonal is (2y)^m.
    """

    curve: CurveSpec
    order: int
    y_derivs: Tuple[CurveFunction, ...]
    coefficients: Tuple[Tuple[CurveFunction, ...], ...]

    def coefficient(self, m: int, j: int) -> CurveFunction:
        if not 1 <= j <= m <= self.order:
            return CurveFunction.constant(self.curve, 0)
        return self.coefficients[m - 1][j - 1]

    def triangular_check(self, F: CurveFunction, m: int) -> bool:
        if not 1 <= m <= self.order:
            raise DomainError(f"order {m} outside 1..{self.order}")
        lhs = F
        for _ in range(m):
            lhs = ddu(lhs, 1)
        rhs = CurveFunction.constant(self.curve, 0)
        derived = F
        for j in range(1, m + 1):
            derived = ddx(derived)
            rhs = rhs + self.coefficient(m, j) * derived
        diagonal = CurveFunction.make(self.curve, b=2) ** m
        return lhs == rhs and self.coefficient(m, m) == diagonal


@lru_cache(maxsize=None)
def derivative_table(curve: CurveSpec, order: int) -> DerivativeTable:
    y = CurveFunction.y(curve)
    two_y = CurveFunction.make(curve, b=2)
    derivs = [y]
    for _ in range(order):
        derivs.append(ddx(derivs[-1]))
    rows: List[Tuple[CurveFunction, ...]] = [(two_y,)]
    zero = CurveFunction.constant(curve, 0)
    for m in range(1, order):
        prev = rows[-1]
        row = []
        for j in range(1, m + 2):
            term = prev[j - 1] if j <= m else zero
            lower = prev[j - 2] if j >= 2 else zero
            row.append(two_y * ddx(term) + two_y * lower if j <= m else two_y * lower)
        rows.append(tuple(row))
    return DerivativeTable(curve, order, tuple(derivs), tuple(rows))


def cantor_numerators(curve: CurveSpec, top: int) -> List[PolyElement]:
    """P_k with (d/dx)^k y = P_k y / f^k: P_0 = 1, P_{k+1} = f P_k' - (k - 1/2) f' P_k."""
    R, x, f, df = curve_ring(curve)
    P = [R.one]
    for k in range(top):
        P.append(f * P[k].diff(x) - df * P[k] * (QQ(k) - QQ(1, 2)))
    return P


# -------------------------------------------------------- Kiepert and Cantor


def monomial_sequence(g: int, count: int) -> List[Tuple[int, int]]:
    """(x-degree, y-degree) of 1, x, ..., x^g, y, x^{g+1}, xy, ... by pole order."""
    candidates = [(a, b) for b in (0, 1) for a in range(count + 2)]
    candidates.sort(key=lambda ab: 2 * ab[0] + ab[1] * (2 * g + 1))
    return candidates[:count]


def _to_xy(curve: CurveSpec, F: CurveFunction, K: PolyRing):
    gens = K.gens
    images = [gens[0]] + list(gens[2:])
    a = substitute(F.a, images, zero=K.zero)
    b = substitute(F.b, images, zero=K.zero)
    return a + b * gens[1]


def _from_xy(curve: CurveSpec, P: PolyElement) -> Tuple[PolyElement, PolyElement]:
    R, _, f, _ = curve_ring(curve)
    parts: Dict[int, Dict] = {}
    for monom, c in P.iterterms():
        parts.setdefault(monom[1], {})[(monom[0],) + monom[2:]] = c
    a, b = R.zero, R.zero
    for e, terms in parts.items():
        piece = R.from_dict(terms) * f ** (e // 2)
        if e % 2:
            b += piece
        else:
            a += piece
    return a, b


def kiepert_matrix(curve: CurveSpec, n: int, j: int = 1) -> List[List[CurveFunction]]:
    """
    Rows i = 1..n-1 of x^{ij} (d/du_j)^i applied to the first n-1 non-constant
    monomials; for j = 1 the x-power is trivial.
    """
    g = curve.genus
    if n < 2:
        raise DomainError(f"the Kiepert determinant needs n >= 2, got {n}")
    if not 1 <= j <= g:
        raise DomainError(f"u_{j} outside 1..{g}")
    y = CurveFunction.y(curve)
    x = CurveFunction.x(curve)
    columns = [CurveFunction.monomial(curve, a, b) for a, b in monomial_sequence(g, n)[1:]]
    rows: List[List[CurveFunction]] = [[] for _ in range(n - 1)]
    for col in columns:
        G = col
        for i in range(n - 1):
            if j == 1:
                G = derivation(G)
            else:
                G = x * derivation(G) - y * G * (2 * i * j)
            rows[i].append(G)
    return rows


def kiepert_raw(curve: CurveSpec, n: int, j: int = 1) -> CurveFunction:
    """c'_n 1!2!...(n-1)! psi_n as the (n-1) x (n-1) Wronskian-type determinant."""
    rows = kiepert_matrix(curve, n, j)
    K, _ = variable_table(["x", "y"] + _lambda_names(curve))
    M = [[_to_xy(curve, F, K) for F in row] for row in rows]
    det = K(det_fraction_free(M))
    a, b = _from_xy(curve, det)
    xpow = n * (n - 1) // 2 if j > 1 else 0
    return CurveFunction.make(curve, a, b, xpow)


def superfactorial(n: int) -> int:
    """1! 2! ... (n-1)!"""
    out = 1
    for k in range(1, n):
        out *= factorial(k)
    return out


def kiepert_det(
    curve: CurveSpec, n: int, j: int = 1, constant: Optional[int] = None
) -> CurveFunction:
    """psi_n by the Kiepert-type determinant, normalized by c'_n and the superfactorial."""
    if n == 1:
        return CurveFunction.constant(curve, 1)
    if constant is None:
        from .constants import kiepert_constant

        constant = kiepert_constant(curve.genus, n)
    raw = kiepert_raw(curve, n, j)
    return raw.scale(QQ(1, constant * superfactorial(n)))


def cantor_window(g: int, n: int) -> Tuple[int, int, int]:
    """(r, s, a): pure x-power columns, Hankel size, first Hankel index."""
    if n < g:
        raise UnsupportedRangeError(f"the Hankel route needs n >= g, got n={n}, g={g}")
    r = g + (n - g - 1) // 2
    s = n - 1 - r
    return r, s, r + 2 - s


def cantor_psi(curve: CurveSpec, n: int, sign: Optional[int] = None) -> CurveFunction:
    """psi_n = eps_n (2y)^{n(n-1)/2} det[y^<a+i+j-2> / (a+i+j-2)!] over an s x s Hankel window."""
    g = curve.genus
    r, s, a = cantor_window(g, n)
    if sign is None:
        from .constants import cantor_sign

        sign = cantor_sign(g, n)
    R, _, f, _ = curve_ring(curve)
    P = cantor_numerators(curve, a + 2 * s)
    M = [
        [P[a + i + j] * QQ(1, factorial(a + i + j)) for j in range(s)]
        for i in range(s)
    ]
    det = R(det_fraction_free(M)) if s else R.one
    N = n * (n - 1) // 2
    E = s * (a + s - 1)
    ypow = N + s
    num = det * (sign * 2**N)
    f_shift = E - ypow // 2
    if ypow % 2:
        result = CurveFunction.make(curve, b=num, fpow=f_shift)
    else:
        result = CurveFunction.make(curve, a=num, fpow=f_shift)
    if not result.is_polynomial:
        raise ConstructionError(f"Hankel route left a denominator for g={g}, n={n}")
    return result


def pole_order_at_infinity(F: CurveFunction) -> int:
    return F.pole_order()


def expected_pole_order(g: int, n: int) -> int:
    if n >= g:
        return n * n * g - g * (g + 1) // 2
    return n * (n - 1) * (2 * g + 1) // 2


def check_psi_homogeneous(psi: CurveFunction) -> bool:
    """Single Sato weight equal to minus the pole order."""
    return psi.sato_weights() == {-psi.pole_order()}


def psi_series_leading(psi: CurveFunction, le: LocalExpansions) -> Tuple[int, Any]:
    """Leading Laurent term (exponent, coefficient) of psi along the expansion at infinity."""
    lead = psi.series(le).leading_term()
    if lead is None:
        raise ConstructionError("psi vanishes to the truncation order along the curve")
    return lead


# --------------------------------------------------------- elliptic oracle


def _elliptic_ab(curve: CurveSpec) -> Tuple[Fraction, Fraction]:
    if curve.genus != 1 or curve.symbolic or curve.lambdas[0] != 0:
        raise ConfigurationError("the classical recursion needs y^2 = x^3 + a x + b")
    return curve.lambdas[1], curve.lambdas[2]


def elliptic_psi(curve: CurveSpec, n: int) -> CurveFunction:
    """Classical division polynomial with psi_2 = 2y, by the doubling recursion."""
    a, b = (exact(v) for v in _elliptic_ab(curve))
    x = CurveFunction.x(curve)
    y = CurveFunction.y(curve)
    one = CurveFunction.constant(curve, 1)
    memo: Dict[int, CurveFunction] = {
        0: CurveFunction.constant(curve, 0),
        1: one,
        2: y.scale(2),
        3: (x**4).scale(3) + (x**2).scale(6 * a) + x.scale(12 * b) - a * a,
        4: y.scale(4)
        * (
            x**6
            + (x**4).scale(5 * a)
            + (x**3).scale(20 * b)
            - (x**2).scale(5 * a * a)
            - x.scale(4 * a * b)
            - (8 * b * b + a**3)
        ),
    }
    half_over_y = CurveFunction.make(curve, b=QQ(1, 2), fpow=1)

    def psi(k: int) -> CurveFunction:
        if k in memo:
            return memo[k]
        m = k // 2
        if k % 2:
            value = psi(m + 2) * psi(m) ** 3 - psi(m - 1) * psi(m + 1) ** 3
        else:
            value = (
                psi(m)
                * (psi(m + 2) * psi(m - 1) ** 2 - psi(m - 2) * psi(m + 1) ** 2)
                * half_over_y
            )
        memo[k] = value
        return value

    if n < 0:
        raise DomainError(f"n={n} must be non-negative")
    return psi(n)


RationalPoint = Optional[Tuple[Fraction, Fraction]]


def elliptic_add(curve: CurveSpec, P: RationalPoint, Q: RationalPoint) -> RationalPoint:
    """Affine chord-tangent law on y^2 = x^3 + l1 x^2 + l2 x + l3; None is the identity."""
    if curve.genus != 1 or curve.symbolic:
        raise ConfigurationError("the group law is implemented for exact elliptic curves")
    if P is None:
        return Q
    if Q is None:
        return P
    l1, l2, _ = curve.lambdas
    (x1, y1), (x2, y2) = P, Q
    if x1 == x2:
        if y1 + y2 == 0:
            return None
        slope = (3 * x1 * x1 + 2 * l1 * x1 + l2) / (2 * y1)
    else:
        slope = (y2 - y1) / (x2 - x1)
    x3 = slope * slope - l1 - x1 - x2
    return x3, slope * (x1 - x3) - y1


def elliptic_multiply(curve: CurveSpec, P: RationalPoint, n: int) -> RationalPoint:
    result: RationalPoint = None
    for _ in range(n):
        result = elliptic_add(curve, result, P)
    return result


# ----------------------------------------------------------- torsion scan


class TorsionReport(BaseModel):
    genus: int = Field(description="Genus of the curve")
    n: int = Field(description="Order being tested")
    point: Tuple[str, str] = Field(description="The rational point (x0, y0)")
    values: Dict[int, str] = Field(description="psi_m at the point, m = n-g+1 .. n+g-1")
    vanishing: List[int] = Field(description="Indices m with psi_m(P) = 0")
    torsion: bool = Field(description="All of psi_{n-g+1}, ..., psi_{n+g-1} vanish")


def torsion_scan(curve: CurveSpec, point: Sequence[Any], n: int) -> TorsionReport:
    g = curve.genus
    if curve.symbolic:
        raise DomainError("torsion scans need an exact curve over the rationals")
    if n < g:
        raise DomainError(f"n={n} below the genus {g}")
    x0, y0 = (to_fraction(v) for v in point)
    _, _, f, _ = curve_ring(curve)
    if exact(y0) ** 2 != f(exact(x0)):
        raise DomainError(f"({x0}, {y0}) is not on the curve")
    values: Dict[int, str] = {}
    vanishing: List[int] = []
    for m in range(max(1, n - g + 1), n + g):
        value = kiepert_det(curve, m).evaluate(x0, y0)
        values[m] = str(value)
        if value == 0:
            vanishing.append(m)
    logger.info("torsion scan g=%d n=%d at (%s, %s): %s", g, n, x0, y0, vanishing)
    return TorsionReport(
        genus=g,
        n=n,
        point=(str(x0), str(y0)),
        values=values,
        vanishing=vanishing,
        torsion=len(vanishing) == len(values),
    )


__all__ = [
    "CurveFunction",
    "DerivativeTable",
    "TorsionReport",
    "curve_ring",
    "ddx",
    "ddu",
    "derivation",
    "derivative_table",
    "cantor_numerators",
    "monomial_sequence",
    "kiepert_matrix",
    "kiepert_raw",
    "kiepert_det",
    "cantor_window",
    "cantor_psi",
    "pole_order_at_infinity",
    "expected_pole_order",
    "check_psi_homogeneous",
    "psi_series_leading",
    "elliptic_psi",
    "elliptic_add",
    "elliptic_multiply",
    "torsion_scan",
    "superfactorial",
]
