"""Exact Laurent polynomials in s = q^(1/2) and q-combinatorics.

Every value is an immutable :class:`LaurentPoly` with arbitrary-precision
integer coefficients. Working in ``s`` keeps half-integer powers of ``q``
integral: the exponent ``n`` of ``s`` stands for ``q^(n/2)``.

The balanced conventions are used throughout::

    [n]_q   = s^n - s^-n
    [n]_q!  = [1]_q [2]_q ... [n]_q
    [n m]_q = [n]_q! / ([m]_q! [n-m]_q!)    (0 <= m <= n, else 0)
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Mapping, Union

from . import _backend
from .errors import DivisibilityError, DomainError, PoleError

__all__ = [
    "LaurentPoly",
    "QRational",
    "ZERO",
    "ONE",
    "S",
    "qint",
    "qfact",
    "qbinom",
    "qbinom_ext",
    "subst_power",
    "bar",
    "classical_limit",
    "exact_div",
]


class LaurentPoly:
    """Laurent polynomial in ``s`` with integer coefficients.

    Stored densely as a lowest exponent plus a coefficient tuple whose first
    and last entries are nonzero. The zero polynomial has no coefficients.

    >>> LaurentPoly({1: 1, -1: 1})
    LaurentPoly({-1: 1, 1: 1})
    """

    __slots__ = ("_lo", "_c", "_hash")

    def __init__(self, terms: Union[Mapping[int, int], int, None] = None):
        if terms is None:
            lo, coeffs = 0, ()
        elif isinstance(terms, int):
            lo, coeffs = 0, (terms,)
        else:
            items = [(int(e), int(c)) for e, c in terms.items() if c]
            if not items:
                lo, coeffs = 0, ()
            else:
                lo = min(e for e, _ in items)
                hi = max(e for e, _ in items)
                buf = [0] * (hi - lo + 1)
                for e, c in items:
                    buf[e - lo] += c
                coeffs = tuple(buf)
        self._set(lo, coeffs)

    def _set(self, lo, coeffs):
        i, j = 0, len(coeffs)
        while i < j and not coeffs[i]:
            i += 1
        while j > i and not coeffs[j - 1]:
            j -= 1
        if i == j:
            self._lo, self._c = 0, ()
        else:
            self._lo, self._c = lo + i, tuple(coeffs[i:j])
        self._hash = None

    @classmethod
    def _raw(cls, lo: int, coeffs) -> "LaurentPoly":
        obj = cls.__new__(cls)
        obj._set(lo, coeffs)
        return obj

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> "LaurentPoly":
        """``coeff * s**exponent``."""
        return cls._raw(exponent, (coeff,))

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> dict:
        """Mapping exponent-of-s -> nonzero coefficient."""
        return {self._lo + i: c for i, c in enumerate(self._c) if c}

    def items(self):
        """Ascending ``(exponent, coefficient)`` pairs of nonzero terms."""
        return [(self._lo + i, c) for i, c in enumerate(self._c) if c]

    @property
    def low(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no lowest term")
        return self._lo

    @property
    def high(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no highest term")
        return self._lo + len(self._c) - 1

    def coeff(self, exponent: int) -> int:
        i = exponent - self._lo
        if 0 <= i < len(self._c):
            return self._c[i]
        return 0

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self):
        return bool(self._c)

    def is_monomial(self) -> bool:
        return len(self._c) == 1

    def content(self) -> int:
        """Non-negative gcd of all coefficients (0 for the zero polynomial)."""
        g = 0
        for c in self._c:
            g = gcd(g, c)
            if g == 1:
                break
        return g

    def at_one(self) -> int:
        """Value at ``s = 1`` (so also at ``q = 1``)."""
        return sum(self._c)

    # -- arithmetic -------------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly._raw(0, (other,))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other._c:
            return self
        if not self._c:
            return other
        lo = min(self._lo, other._lo)
        hi = max(self._lo + len(self._c), other._lo + len(other._c))
        buf = [0] * (hi - lo)
        off = self._lo - lo
        for i, c in enumerate(self._c):
            buf[off + i] = c
        off = other._lo - lo
        for i, c in enumerate(other._c):
            buf[off + i] += c
        return LaurentPoly._raw(lo, buf)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw(self._lo, tuple(-c for c in self._c))

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return ZERO
            return LaurentPoly._raw(self._lo, tuple(c * other for c in self._c))
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if not self._c or not other._c:
            return ZERO
        if len(other._c) == 1:
            k = other._c[0]
            return LaurentPoly._raw(self._lo + other._lo, tuple(c * k for c in self._c))
        if len(self._c) == 1:
            k = self._c[0]
            return LaurentPoly._raw(self._lo + other._lo, tuple(c * k for c in other._c))
        return LaurentPoly._raw(
            self._lo + other._lo, _backend.poly_mul(self._c, other._c)
        )

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, other):
        """Division producing a :class:`QRational`; see :func:`exact_div`."""
        if isinstance(other, (LaurentPoly, int)):
            return QRational(self, other)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, int):
            return QRational(LaurentPoly(other), self)
        return NotImplemented

    def shift(self, n: int) -> "LaurentPoly":
        """Multiply by ``s**n``."""
        return LaurentPoly._raw(self._lo + n, self._c)

    def bar(self) -> "LaurentPoly":
        """The involution ``s -> 1/s``."""
        if not self._c:
            return self
        return LaurentPoly._raw(-self.high, self._c[::-1])

    def subst_power(self, k: int) -> "LaurentPoly":
        """The substitution ``q -> q**k``."""
        if k < 1:
            raise DomainError(f"substitution power must be positive, got {k}")
        if k == 1 or not self._c:
            return self
        buf = [0] * ((len(self._c) - 1) * k + 1)
        for i, c in enumerate(self._c):
            buf[i * k] = c
        return LaurentPoly._raw(self._lo * k, buf)

    # -- comparison and display -------------------------------------------

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self._lo == other._lo and self._c == other._c
        if isinstance(other, int):
            if not other:
                return not self._c
            return self._lo == 0 and self._c == (other,)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if not self._c:
                self._hash = hash(0)
            elif self._lo == 0 and len(self._c) == 1:
                self._hash = hash(self._c[0])
            else:
                self._hash = hash((self._lo, self._c))
        return self._hash

    def __repr__(self):
        return f"LaurentPoly({self.terms!r})"

    def __str__(self):
        """Canonical text form ``c*q^{n/2} + ...`` ascending in ``n``."""
        if not self._c:
            return "0"
        return " + ".join(f"{c}*q^{{{e}/2}}" for e, c in self.items())

    def to_json(self) -> dict:
        return {"s_terms": [[e, str(c)] for e, c in self.items()]}

    @classmethod
    def from_json(cls, data) -> "LaurentPoly":
        pairs = data["s_terms"] if isinstance(data, Mapping) else data
        return cls({int(e): int(c) for e, c in pairs})


ZERO = LaurentPoly()
ONE = LaurentPoly(1)
S = LaurentPoly.monomial(1)
_S_MINUS_ONE = LaurentPoly._raw(0, (-1, 1))

PolyLike = Union[LaurentPoly, int]


def _as_poly(p: PolyLike) -> LaurentPoly:
    if isinstance(p, LaurentPoly):
        return p
    if isinstance(p, int):
        return LaurentPoly(p)
    raise TypeError(f"expected LaurentPoly or int, got {type(p).__name__}")


class QRational:
    """A quotient ``num/den`` of Laurent polynomials.

    No polynomial gcd is taken. The pair is normalized only by removing the
    integer content common to ``num`` and ``den`` and making the lowest term
    of ``den`` positive. Equality is decided by cross-multiplication, so
    instances are deliberately unhashable.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: PolyLike, den: PolyLike = 1):
        num, den = _as_poly(num), _as_poly(den)
        if den.is_zero():
            raise ZeroDivisionError("QRational with zero denominator")
        if num.is_zero():
            num, den = ZERO, ONE
        else:
            g = gcd(num.content(), den.content())
            if den.coeff(den.low) < 0:
                g = -g
            if g != 1:
                num = LaurentPoly._raw(num._lo, tuple(c // g for c in num._c))
                den = LaurentPoly._raw(den._lo, tuple(c // g for c in den._c))
        self.num = num
        self.den = den

    @staticmethod
    def _coerce(other):
        if isinstance(other, QRational):
            return other
        if isinstance(other, (LaurentPoly, int)):
            return QRational(other)
        if isinstance(other, Fraction):
            return QRational(other.numerator, other.denominator)
        return NotImplemented

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return QRational(self.num + other.num, self.den)
        return QRational(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return QRational(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return QRational(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by zero QRational")
        return QRational(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num * other.den == other.num * self.den

    __hash__ = None

    def bar(self) -> "QRational":
        return QRational(self.num.bar(), self.den.bar())

    def subst_power(self, k: int) -> "QRational":
        return QRational(self.num.subst_power(k), self.den.subst_power(k))

    def to_laurent(self) -> LaurentPoly:
        """The Laurent polynomial equal to this quotient, if there is one.

        Raises :class:`DivisibilityError` otherwise.
        """
        return exact_div(self.num, self.den)

    def is_laurent(self) -> bool:
        try:
            self.to_laurent()
        except DivisibilityError:
            return False
        return True

    def __repr__(self):
        return f"QRational({self.num!r}, {self.den!r})"

    def __str__(self):
        if self.den == 1:
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data) -> "QRational":
        return cls(LaurentPoly.from_json(data["num"]), LaurentPoly.from_json(data["den"]))


# -- q-combinatorics ------------------------------------------------------


def qint(n: int) -> LaurentPoly:
    """The balanced q-integer ``[n]_q = s^n - s^-n``."""
    if n == 0:
        return ZERO
    return LaurentPoly({n: 1, -n: -1})


@lru_cache(maxsize=None)
def qfact(n: int) -> LaurentPoly:
    """``[n]_q! = [1]_q ... [n]_q``; ``qfact(0) == 1``."""
    if n < 0:
        raise DomainError(f"q-factorial of negative integer {n}")
    if n == 0:
        return ONE
    return qfact(n - 1) * qint(n)


@lru_cache(maxsize=None)
def qbinom(n: int, m: int) -> LaurentPoly:
    """Balanced Gaussian binomial, zero outside ``0 <= m <= n``.

    >>> str(qbinom(2, 1))
    '1*q^{-1/2} + 1*q^{1/2}'
    """
    if n < 0 or m < 0 or m > n:
        return ZERO
    if m == 0 or m == n:
        return ONE
    m = min(m, n - m)
    return exact_div(qfact(n), qfact(m) * qfact(n - m))


def qbinom_ext(n: int, m: int) -> LaurentPoly:
    """Gaussian binomial extended polynomially in the upper argument.

    ``[n]_q [n-1]_q ... [n-m+1]_q / [m]_q!`` for every integer ``n`` and
    ``m >= 0``; zero for ``m < 0``. Agrees with :func:`qbinom` when
    ``n >= 0``. For ``n < 0`` it equals ``(-1)^m [m-n-1, m]_q``, so in
    particular ``[n, 0]_q = 1``.
    """
    if m < 0:
        return ZERO
    if n >= 0:
        return qbinom(n, m)
    b = qbinom(m - n - 1, m)
    return -b if m % 2 else b


def subst_power(p: Union[LaurentPoly, QRational], k: int):
    """Apply ``q -> q**k`` (``s -> s**k``) to a polynomial or rational form."""
    if k < 1:
        raise DomainError(f"substitution power must be positive, got {k}")
    return p.subst_power(k)


def bar(p: Union[LaurentPoly, QRational]):
    """Apply the involution ``q -> 1/q``."""
    return p.bar()


def exact_div(a: PolyLike, b: PolyLike) -> LaurentPoly:
    """Return ``c`` with ``a == b * c``, or raise :class:`DivisibilityError`."""
    a, b = _as_poly(a), _as_poly(b)
    if b.is_zero():
        raise ZeroDivisionError("exact_div by the zero polynomial")
    if a.is_zero():
        return ZERO
    if len(b._c) == 1:
        k = b._c[0]
        out = []
        for c in a._c:
            qc, r = divmod(c, k)
            if r:
                raise DivisibilityError(
                    f"{a} is not divisible by {b} over the integers", remainder=a
                )
            out.append(qc)
        return LaurentPoly._raw(a._lo - b._lo, out)
    quot, rem, integral = _backend.poly_divmod(a._c, b._c)
    remainder = LaurentPoly._raw(a._lo, rem)
    if not integral:
        raise DivisibilityError(
            f"{a} / {b} has a non-integral quotient coefficient", remainder=remainder
        )
    if not remainder.is_zero():
        raise DivisibilityError(f"{a} is not divisible by {b}", remainder=remainder)
    return LaurentPoly._raw(a._lo - b._lo, quot)


def classical_limit(r: Union[QRational, LaurentPoly, int]) -> Fraction:
    """Exact ``q -> 1`` limit of a rational function of ``q``.

    Common zeros at ``s = 1`` are divided out before evaluating.

    >>> classical_limit(QRational(qint(3), qint(1)))
    Fraction(3, 1)
    """
    if not isinstance(r, QRational):
        r = QRational(r)
    num, den = r.num, r.den
    if num.is_zero():
        return Fraction(0)
    while num.at_one() == 0 and den.at_one() == 0:
        num = exact_div(num, _S_MINUS_ONE)
        den = exact_div(den, _S_MINUS_ONE)
    if den.at_one() == 0:
        raise PoleError(f"pole at q = 1 in ({num}) / ({den})")
    return Fraction(num.at_one(), den.at_one())


def poly_sum(values: Iterable[LaurentPoly]) -> LaurentPoly:
    """Sum an iterable of polynomials, accumulating into one buffer."""
    acc: dict = {}
    for v in values:
        lo = v._lo
        for i, c in enumerate(v._c):
            if c:
                acc[lo + i] = acc.get(lo + i, 0) + c
    return LaurentPoly(acc)
