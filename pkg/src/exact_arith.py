# src/exact_arith.py
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np
from sympy import QQ
from sympy.polys.orderings import lex
from sympy.polys.rings import PolyElement, PolyRing, ring

from .errors import ConfigurationError, DimensionError, DomainError, TruncationError

logger = logging.getLogger(__name__)


def exact(value: Any):
    """Convert ints, Fractions, decimal strings and floats to an element of QQ."""
    if isinstance(value, PolyElement):
        return value
    if isinstance(value, QQ.dtype):
        return value
    if isinstance(value, bool):
        raise DomainError(f"not a rational scalar: {value!r}")
    if isinstance(value, (int, np.integer)):
        return QQ(int(value))
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    if isinstance(value, (float, np.floating)):
        # decimal spelling, not the binary expansion
        return exact(Fraction(str(float(value))))
    if isinstance(value, str):
        try:
            return exact(Fraction(value.strip()))
        except ValueError as e:
            raise DomainError(f"not a rational scalar: {value!r}") from e
    try:
        return QQ.convert(value)
    except Exception as e:
        raise DomainError(f"not a rational scalar: {value!r}") from e


def to_fraction(value: Any) -> Fraction:
    if isinstance(value, PolyElement):
        if not value.is_ground:
            raise DomainError(f"polynomial {value} is not a constant")
        value = value.LC if value else QQ(0)
    q = exact(value)
    return Fraction(int(q.numerator), int(q.denominator))


def to_complex(value: Any) -> complex:
    if isinstance(value, (complex, float, int, np.number)) and not isinstance(
        value, bool
    ):
        return complex(value)
    return complex(float(to_fraction(value)))


def variable_table(names: Sequence[str], domain=QQ) -> Tuple[PolyRing, tuple]:
    """
    Polynomial ring over ``domain`` in the named variables, lex ordered with the
    first name as the main variable. Rings are cached by sympy, so equal tables
    give identical rings.
    """
    names = list(names)
    if not names:
        raise ConfigurationError("a variable table needs at least one variable")
    if len(set(names)) != len(names):
        raise ConfigurationError(f"duplicate variable names in {names}")
    R, *gens = ring(names, domain, lex)
    return R, tuple(gens)


def substitute(poly: PolyElement, images: Sequence[Any], zero: Any = None):
    """
    Replace the i-th generator of ``poly``'s ring by ``images[i]``.

    Images may live in another ring or be plain numbers; the result lives
    wherever their arithmetic lands.
    """
    if len(images) != poly.ring.ngens:
        raise DimensionError(
            f"{len(images)} images for {poly.ring.ngens} generators"
        )
    powers: Dict[Tuple[int, int], Any] = {}

    def power(i: int, e: int):
        key = (i, e)
        if key not in powers:
            powers[key] = images[i] ** e
        return powers[key]

    total = zero
    for monom, coeff in poly.iterterms():
        term = coeff
        for i, e in enumerate(monom):
            if e:
                term = term * power(i, e)
        total = term if total is None else total + term
    if total is None:
        return 0
    return total


def poly_to_json(poly: PolyElement) -> Dict[str, Any]:
    """Canonical JSON form: sorted exponent vectors with integer-string coefficients."""
    terms = sorted(
        (list(m), f"{c.numerator}" if c.denominator == 1 else f"{c.numerator}/{c.denominator}")
        for m, c in poly.iterterms()
        if c
    )
    return {"variables": [str(s) for s in poly.ring.symbols], "terms": terms}


def homogeneous_part(poly: PolyElement, degree: int) -> PolyElement:
    R = poly.ring
    return R.from_dict({m: c for m, c in poly.iterterms() if sum(m) == degree})


def lowest_degree_part(poly: PolyElement) -> PolyElement:
    if not poly:
        return poly
    low = min(sum(m) for m in poly.itermonoms())
    return homogeneous_part(poly, low)


# ---------------------------------------------------------------- determinants


def _shape(M: Sequence[Sequence[Any]]) -> int:
    n = len(M)
    for row in M:
        if len(row) != n:
            raise DimensionError(
                f"determinant of a non-square matrix ({n} rows, row of {len(row)})"
            )
    return n


def _lift(entry: Any):
    if isinstance(entry, (PolyElement, QQ.dtype)):
        return entry
    if isinstance(entry, (int, Fraction)) and not isinstance(entry, bool):
        return exact(entry)
    return entry


def _exquo(a: Any, b: Any):
    if isinstance(a, PolyElement):
        if not isinstance(b, PolyElement):
            b = a.ring(b)
        return a.exquo(b)
    if isinstance(b, PolyElement):
        return b.ring(a).exquo(b)
    return a / b


def det_fraction_free(M: Sequence[Sequence[Any]]):
    """
    Determinant by Bareiss elimination with row pivoting.

    Every division is exact in an integral domain, so polynomial entries never
    leave their ring.
    """
    n = _shape(M)
    if n == 0:
        return QQ(1)
    A = [[_lift(e) for e in row] for row in M]
    sign = 1
    prev = None
    for k in range(n - 1):
        if A[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if pivot is None:
                return A[k][k]
            A[k], A[pivot] = A[pivot], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = A[i][j] * A[k][k] - A[i][k] * A[k][j]
                A[i][j] = num if prev is None else _exquo(num, prev)
        prev = A[k][k]
    det = A[n - 1][n - 1]
    return det if sign > 0 else -det


def det_cofactor(M: Sequence[Sequence[Any]]):
    """Laplace expansion along the first row; the oracle for small matrices."""
    n = _shape(M)
    if n == 0:
        return QQ(1)
    if n == 1:
        return _lift(M[0][0])
    total = None
    for j in range(n):
        entry = _lift(M[0][j])
        if entry == 0:
            continue
        minor = [row[:j] + row[j + 1 :] for row in (list(r) for r in M[1:])]
        term = entry * det_cofactor(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total if total is not None else _lift(M[0][0]) * 0


# ------------------------------------------------------------ truncated series


def _is_unit(c: Any) -> bool:
    if isinstance(c, PolyElement):
        return c.is_ground and bool(c)
    return c != 0


def _unit_inverse(c: Any):
    if isinstance(c, PolyElement):
        return c.ring(QQ(1) / c.LC)
    return QQ(1) / c


@dataclass(frozen=True)
class TruncSeries:
    """
    Truncated Laurent series ``sum(coeffs[i] * var**(valuation + i))`` known
    modulo ``var**order``. Coefficients live in ``domain`` (QQ or a sympy
    polynomial ring such as QQ[l1, ..., l5]).
    """

    coeffs: Tuple[Any, ...]
    order: int
    domain: Any = QQ
    var: str = "t"
    valuation: int = 0

    def __post_init__(self):
        width = self.order - self.valuation
        if width < 0:
            raise TruncationError(
                f"truncation order {self.order} below valuation {self.valuation}"
            )
        coeffs = [self._coerce(c) for c in tuple(self.coeffs)[:width]]
        coeffs.extend([self.domain.zero] * (width - len(coeffs)))
        object.__setattr__(self, "coeffs", tuple(coeffs))

    def _coerce(self, c: Any):
        if self.domain is QQ:
            return exact(c)
        if isinstance(c, PolyElement) and c.ring == self.domain:
            return c
        return self.domain(c)

    # constructors
    @classmethod
    def constant(cls, c: Any, order: int, domain=QQ, var: str = "t"):
        return cls((c,), order, domain, var)

    @classmethod
    def monomial(cls, exponent: int, order: int, domain=QQ, var: str = "t", coeff=1):
        if exponent >= order:
            return cls((), order, domain, var, valuation=order)
        return cls((coeff,), order, domain, var, valuation=exponent)

    # access
    @property
    def zero(self):
        return self.domain.zero

    def coefficient(self, exponent: int):
        if exponent >= self.order:
            raise TruncationError(
                f"coefficient of {self.var}^{exponent} beyond truncation {self.order}"
            )
        if exponent < self.valuation:
            return self.zero
        return self.coeffs[exponent - self.valuation]

    def terms(self) -> Iterator[Tuple[int, Any]]:
        for i, c in enumerate(self.coeffs):
            if c != 0:
                yield self.valuation + i, c

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def leading_term(self) -> Optional[Tuple[int, Any]]:
        return next(self.terms(), None)

    def normalized(self) -> "TruncSeries":
        lead = self.leading_term()
        if lead is None:
            return self
        e, _ = lead
        return TruncSeries(
            self.coeffs[e - self.valuation :], self.order, self.domain, self.var, e
        )

    def truncate(self, order: int) -> "TruncSeries":
        order = min(order, self.order)
        valuation = min(self.valuation, order)
        return TruncSeries(self.coeffs, order, self.domain, self.var, valuation)

    def map_coeffs(self, fn: Callable[[Any], Any], domain=None) -> "TruncSeries":
        return TruncSeries(
            tuple(fn(c) for c in self.coeffs),
            self.order,
            domain if domain is not None else self.domain,
            self.var,
            self.valuation,
        )

    # arithmetic
    def _check(self, other: "TruncSeries") -> None:
        if other.var != self.var:
            raise DomainError(
                f"series in {self.var!r} combined with series in {other.var!r}"
            )
        if other.domain != self.domain:
            raise DomainError("series over different coefficient domains")

    def _as_series(self, other: Any) -> "TruncSeries":
        if isinstance(other, TruncSeries):
            self._check(other)
            return other
        return TruncSeries.constant(other, max(self.order, 0), self.domain, self.var)

    def __add__(self, other: Any) -> "TruncSeries":
        other = self._as_series(other)
        order = min(self.order, other.order)
        valuation = min(self.valuation, other.valuation, order)
        coeffs = [
            self._coef0(e) + other._coef0(e) for e in range(valuation, order)
        ]
        return TruncSeries(coeffs, order, self.domain, self.var, valuation)

    __radd__ = __add__

    def _coef0(self, exponent: int):
        if exponent < self.valuation or exponent >= self.order:
            return self.zero
        return self.coeffs[exponent - self.valuation]

    def __neg__(self) -> "TruncSeries":
        return self.map_coeffs(lambda c: -c)

    def __sub__(self, other: Any) -> "TruncSeries":
        return self + (-self._as_series(other))

    def __rsub__(self, other: Any) -> "TruncSeries":
        return self._as_series(other) - self

    def scale(self, c: Any) -> "TruncSeries":
        c = self._coerce(c)
        return self.map_coeffs(lambda a: a * c)

    def __mul__(self, other: Any) -> "TruncSeries":
        if not isinstance(other, TruncSeries):
            return self.scale(other)
        self._check(other)
        a, b = self.normalized(), other.normalized()
        valuation = a.valuation + b.valuation
        order = min(a.order + b.valuation, b.order + a.valuation)
        width = max(order - valuation, 0)
        coeffs = []
        for k in range(width):
            acc = self.zero
            for i in range(min(k + 1, len(a.coeffs))):
                j = k - i
                if j < len(b.coeffs) and a.coeffs[i] != 0 and b.coeffs[j] != 0:
                    acc = acc + a.coeffs[i] * b.coeffs[j]
            coeffs.append(acc)
        return TruncSeries(coeffs, order, self.domain, self.var, min(valuation, order))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "TruncSeries":
        if k < 0:
            return self.reciprocal() ** (-k)
        result = TruncSeries.constant(1, self.order, self.domain, self.var)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def differentiate(self) -> "TruncSeries":
        coeffs = [e * c for e, c in zip(range(self.valuation, self.order), self.coeffs)]
        if self.valuation == 0:
            return TruncSeries(coeffs[1:], self.order - 1, self.domain, self.var, 0)
        return TruncSeries(
            coeffs, self.order - 1, self.domain, self.var, self.valuation - 1
        )

    def integrate(self) -> "TruncSeries":
        coeffs = []
        for e, c in zip(range(self.valuation, self.order), self.coeffs):
            if e == -1:
                if c != 0:
                    raise DomainError("integrating a series with a residue term")
                coeffs.append(self.zero)
                continue
            coeffs.append(c * QQ(1, e + 1))
        return TruncSeries(
            coeffs, self.order + 1, self.domain, self.var, self.valuation + 1
        )

    def reciprocal(self) -> "TruncSeries":
        a = self.normalized()
        lead = a.leading_term()
        if lead is None:
            raise DomainError("reciprocal of a series that is zero to truncation")
        if not _is_unit(lead[1]):
            raise DomainError(f"leading coefficient {lead[1]} is not a unit")
        inv = _unit_inverse(lead[1])
        width = len(a.coeffs)
        b = [inv]
        for k in range(1, width):
            acc = self.zero
            for i in range(1, k + 1):
                if a.coeffs[i] != 0:
                    acc = acc + a.coeffs[i] * b[k - i]
            b.append(-inv * acc)
        return TruncSeries(b, -a.valuation + width, self.domain, self.var, -a.valuation)

    def sqrt(self) -> "TruncSeries":
        a = self.normalized() if not self.is_zero() else self
        if a.valuation != 0 or not a.coeffs or a.coeffs[0] != 1:
            raise DomainError("series square root needs constant term 1")
        r = [a.coeffs[0]]
        half = QQ(1, 2)
        for k in range(1, len(a.coeffs)):
            acc = a.coeffs[k]
            for i in range(1, k):
                acc = acc - r[i] * r[k - i]
            r.append(acc * half)
        return TruncSeries(r, a.order, self.domain, self.var, 0)

    def compose(self, inner: "TruncSeries") -> "TruncSeries":
        """``self(inner(t))``; ``inner`` must have zero constant term."""
        self._check(inner)
        inner_n = inner.normalized()
        lead = inner_n.leading_term()
        if lead is None or lead[0] < 1:
            raise DomainError("composition needs an inner series with zero constant term")
        w = lead[0]
        power = inner ** self.valuation
        acc = None
        for e, c in zip(range(self.valuation, self.order), self.coeffs):
            if c != 0:
                acc = power.scale(c) if acc is None else acc + power.scale(c)
            power = power * inner
        bound = self.order * w if self.order > 0 else self.order
        if acc is None:
            return TruncSeries((), min(power.order, bound), self.domain, self.var, 0)
        return acc.truncate(bound)

    def reversion(self) -> "TruncSeries":
        """Functional inverse g with self(g(t)) = t modulo the truncation order."""
        a = self.normalized()
        lead = a.leading_term()
        if lead is None or lead[0] != 1 or not _is_unit(lead[1]):
            raise DomainError("reversion needs a series t*(unit) + O(t^2)")
        inv = _unit_inverse(lead[1])
        b = [self.zero, inv]
        for k in range(2, self.order):
            partial = TruncSeries(b, k + 1, self.domain, self.var, 0)
            b.append(-inv * a.compose(partial).coefficient(k))
        return TruncSeries(b, self.order, self.domain, self.var, 0)

    def evaluate(self, value: Any):
        """
        Sum the truncated series at ``value``: exact for rational values over
        QQ, complex otherwise.
        """
        if isinstance(value, (int, Fraction, QQ.dtype)) and not isinstance(value, bool):
            if self.domain is not QQ:
                raise DomainError("exact evaluation needs rational coefficients")
            x = exact(value)
            if x == 0 and self.valuation < 0:
                raise DomainError("Laurent series evaluated at 0")
            total = QQ(0)
            for e, c in self.terms():
                total += c * x**e
            return total
        coeffs = np.array([to_complex(c) for c in self.coeffs], dtype=complex)
        z = complex(value)
        if z == 0:
            if self.valuation < 0 and np.any(coeffs != 0):
                raise DomainError("Laurent series evaluated at 0")
            return complex(coeffs[0]) if self.valuation == 0 and len(coeffs) else 0j
        return complex(np.polynomial.polynomial.polyval(z, coeffs) * z**self.valuation)

    def __repr__(self) -> str:
        shown = " + ".join(f"({c})*{self.var}^{e}" for e, c in self.terms()) or "0"
        return f"TruncSeries({shown} + O({self.var}^{self.order}))"


# ----------------------------------------------------------------- Sato weight


@dataclass(frozen=True)
class SatoGrading:
    genus: int
    weights: Tuple[Tuple[str, int], ...] = field(default=())

    @classmethod
    def for_genus(cls, g: int, points: Optional[int] = None, extra=None) -> "SatoGrading":
        points = g if points is None else points
        table: Dict[str, int] = {"x": -2, "y": -(2 * g + 1), "t": 1, "v": 1, "l0": 0}
        for j in range(1, g + 1):
            table[f"u{j}"] = 2 * (g - j) + 1
        for j in range(1, 2 * g + 2):
            table[f"l{j}"] = -2 * j
        for i in range(1, points + 1):
            table[f"xi{i}"] = 1
        for k in range(1, 2 * g):
            table[f"p{k}"] = k
            table[f"U{k}"] = k
        table.update(extra or {})
        return cls(g, tuple(sorted(table.items())))

    def weight(self, name: str) -> int:
        for key, w in self.weights:
            if key == name:
                return w
        raise ConfigurationError(f"variable {name!r} has no Sato weight for genus {self.genus}")

    def monomial_weight(self, names: Sequence[str], monom: Sequence[int]) -> int:
        return sum(e * self.weight(n) for n, e in zip(names, monom) if e)


def check_sato_homogeneous(p: Any, w: int, grading: SatoGrading) -> bool:
    if isinstance(p, TruncSeries):
        step = grading.weight(p.var)
        return all(
            check_sato_homogeneous(c, w - e * step, grading) for e, c in p.terms()
        )
    if isinstance(p, PolyElement):
        names = [str(s) for s in p.ring.symbols]
        return all(
            grading.monomial_weight(names, m) == w for m, c in p.iterterms() if c
        )
    return p == 0 or w == 0


__all__ = [
    "exact",
    "to_fraction",
    "to_complex",
    "variable_table",
    "substitute",
    "poly_to_json",
    "homogeneous_part",
    "lowest_degree_part",
    "det_fraction_free",
    "det_cofactor",
    "TruncSeries",
    "SatoGrading",
    "check_sato_homogeneous",
]
