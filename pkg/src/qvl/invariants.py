"""Closed-form log and open generating functions of dP3(0,2).

Curve classes are written ``d = d0 (H-E1-E2-E3) + d1 E1 + d2 E2 + d3 E3``
with boundary ``D1 = H - E1`` and ``D2 = 2H - E2 - E3``, so that
``d.D1 = d1`` and ``d.D2 = d2 + d3``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Tuple

from .errors import DomainError
from .qalg import ONE, ZERO, LaurentPoly, QRational, qbinom, qbinom_ext, qint

__all__ = [
    "CurveClass",
    "GParams",
    "inter",
    "nlog_closed",
    "open_closed",
    "open_from_log",
    "log_open_factor",
    "gtilde",
    "g_closed",
]


def _parse_ints(text: str, n: int, what: str) -> Tuple[int, ...]:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != n:
        raise DomainError(f"{what} needs {n} comma-separated integers, got {text!r}")
    try:
        return tuple(int(p) for p in parts)
    except ValueError:
        raise DomainError(f"{what} must be integers, got {text!r}") from None


@dataclass(frozen=True, order=True)
class CurveClass:
    """Degree vector in the basis {H-E1-E2-E3, E1, E2, E3}."""

    d0: int
    d1: int
    d2: int
    d3: int

    @classmethod
    def parse(cls, text: str) -> "CurveClass":
        return cls(*_parse_ints(text, 4, "degree"))

    def __iter__(self):
        return iter((self.d0, self.d1, self.d2, self.d3))

    def __str__(self):
        return f"{self.d0},{self.d1},{self.d2},{self.d3}"

    @property
    def dD1(self) -> int:
        return self.d1

    @property
    def dD2(self) -> int:
        return self.d2 + self.d3

    def positive(self) -> bool:
        """Both intersection numbers with the boundary are positive."""
        return self.d1 > 0 and self.d2 + self.d3 > 0

    def admissible(self) -> bool:
        """All q-binomial arguments of the closed forms are non-negative."""
        d0, d1, d2, d3 = self
        return (
            0 <= d0 - d1 <= d3
            and 0 <= d0 - d2 <= d3
            and 0 <= d3 <= d0
            and d3 <= d1 + d2 + d3 - d0
        )

    def divide(self, k: int) -> "CurveClass":
        if any(x % k for x in self):
            raise DomainError(f"{k} does not divide the class {self}")
        return CurveClass(self.d0 // k, self.d1 // k, self.d2 // k, self.d3 // k)

    def gparams(self) -> "GParams":
        """Arguments at which the deformation G restricts to the log invariant."""
        d0, d1, d2, d3 = self
        return GParams(d0, d1, d0 - d2, d0 - d3, d2 + d3)


@dataclass(frozen=True, order=True)
class GParams:
    """Integer arguments ``(a, b, c, d, e)`` of the deformation G."""

    a: int
    b: int
    c: int
    d: int
    e: int

    @classmethod
    def parse(cls, text: str) -> "GParams":
        return cls(*_parse_ints(text, 5, "gparams"))

    def __iter__(self):
        return iter((self.a, self.b, self.c, self.d, self.e))

    def __str__(self):
        return ",".join(str(x) for x in self)


def _as_class(dd) -> CurveClass:
    if isinstance(dd, CurveClass):
        return dd
    return CurveClass(*dd)


def _as_gparams(p) -> GParams:
    if isinstance(p, GParams):
        return p
    return GParams(*p)


def inter(dd) -> Tuple[int, int]:
    """Intersection numbers ``(d.D1, d.D2)``."""
    dd = _as_class(dd)
    return dd.dD1, dd.dD2


def _binomial_factors(dd: CurveClass) -> Sequence[LaurentPoly]:
    d0, d1, d2, d3 = dd
    return (
        qbinom(d3, d0 - d1),
        qbinom(d3, d0 - d2),
        qbinom(d0, d3),
        qbinom(d1 + d2 + d3 - d0, d3),
    )


def _product(factors) -> LaurentPoly:
    out = ONE
    for f in factors:
        if f.is_zero():
            return ZERO
        out = out * f
    return out


def nlog_closed(dd) -> QRational:
    """All-genus log invariant from its closed form.

    ``[d1][d2+d3] / ([d0][d1+d2+d3-d0])`` times four q-binomials. Exact 0
    whenever a numerator factor vanishes.
    """
    dd = _as_class(dd)
    d0, d1, d2, d3 = dd
    num = _product((qint(d1), qint(d2 + d3), *_binomial_factors(dd)))
    if num.is_zero():
        return QRational(0)
    return QRational(num, qint(d0) * qint(d1 + d2 + d3 - d0))


def open_closed(dd) -> QRational:
    """All-genus open invariant of the Harvey-Lawson geometry.

    Defined as 0 when ``d1 == 0`` (the ``1/d1`` prefactor is undefined there).
    """
    dd = _as_class(dd)
    d0, d1, d2, d3 = dd
    if d1 == 0:
        return QRational(0)
    num = _product((qint(d1), *_binomial_factors(dd)))
    if num.is_zero():
        return QRational(0)
    if (d1 + d2 + d3) % 2:
        num = -num
    return QRational(num, qint(d0) * qint(d1 + d2 + d3 - d0) * d1)


def log_open_factor(dd) -> QRational:
    """``((-1)^(d.D1-1)/d.D1) * ((-1)^(d.D2-1)/[d.D2]_q)``."""
    dd = _as_class(dd)
    w1, w2 = inter(dd)
    if w1 <= 0 or w2 <= 0:
        raise DomainError(f"class {dd} has a non-positive intersection ({w1}, {w2})")
    sign = -1 if (w1 + w2) % 2 else 1
    return QRational(LaurentPoly(sign), qint(w2) * w1)


def open_from_log(dd, log_value=None) -> QRational:
    """Open invariant obtained from the log invariant by the comparison factor.

    ``log_value`` defaults to :func:`nlog_closed`; any other pipeline value
    (a LaurentPoly or QRational) may be passed instead.
    """
    dd = _as_class(dd)
    factor = log_open_factor(dd)
    if log_value is None:
        log_value = nlog_closed(dd)
    return factor * log_value


def gtilde(p) -> LaurentPoly:
    """Product of the four q-binomials making up the first term of G.

    The two factors depending on ``e`` use the polynomial extension
    :func:`qbinom_ext`, matching the summand of G; the other two keep the
    zero convention, which encodes the support in ``(a, b, c, d)``.
    """
    a, b, c, d, e = _as_gparams(p)
    return _product(
        (
            qbinom_ext(b - a + e, b - c),
            qbinom_ext(c - a + d + e, c),
            qbinom(a - c, d),
            qbinom(a - d, b - d),
        )
    )


def g_closed(p) -> LaurentPoly:
    """Closed form ``gtilde(a,b,c,d,e) - gtilde(a-1,b,c,d,e-2)``."""
    a, b, c, d, e = _as_gparams(p)
    return gtilde((a, b, c, d, e)) - gtilde((a - 1, b, c, d, e - 2))
