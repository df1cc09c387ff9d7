"""BPS-type invariants: Mobius inversion of the log and open series.

Multiple covers ``d/k`` run over ``k | gcd(d0, d1, d2, d3)``. Every function
taking ``log_fn`` (or ``open_fn``) accepts an alternative pipeline for the
underlying generating function; the closed forms are the default.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Callable, Optional

from .errors import DivisibilityError, DomainError, IntegralityError
from .invariants import CurveClass, _as_class, nlog_closed, open_closed
from .qalg import LaurentPoly, QRational, classical_limit, qint

__all__ = [
    "DivisorSet",
    "class_divisors",
    "mobius",
    "genus0_log",
    "local_genus0",
    "open_genus0",
    "gv",
    "lmov",
    "lmov_from_open",
    "lmov_genus0",
    "dt_num",
]


@dataclass(frozen=True)
class DivisorSet:
    """Ascending positive divisors of the gcd of a class's components."""

    divisors: tuple

    def __iter__(self):
        return iter(self.divisors)

    def __len__(self):
        return len(self.divisors)


def class_divisors(dd) -> DivisorSet:
    dd = _as_class(dd)
    g = 0
    for x in dd:
        g = gcd(g, x)
    if g == 0:
        raise DomainError("the zero class has no multiple-cover decomposition")
    return DivisorSet(tuple(k for k in range(1, g + 1) if g % k == 0))


def mobius(k: int) -> int:
    """The Mobius function."""
    if k < 1:
        raise DomainError(f"mobius needs a positive integer, got {k}")
    result = 1
    p = 2
    while p * p <= k:
        if k % p == 0:
            k //= p
            if k % p == 0:
                return 0
            result = -result
        p += 1
    if k > 1:
        result = -result
    return result


def _require_positive(dd: CurveClass):
    if not dd.positive():
        raise DomainError(f"class {dd} needs d.D1 > 0 and d.D2 > 0")


def genus0_log(dd, log_fn: Optional[Callable] = None) -> Fraction:
    """Genus-zero log invariant: the ``q -> 1`` limit of the all-genus series."""
    dd = _as_class(dd)
    _require_positive(dd)
    return classical_limit((log_fn or nlog_closed)(dd))


def local_genus0(dd, log_fn: Optional[Callable] = None) -> Fraction:
    """Genus-zero local invariant of the total space of ``O(-D1) + O(-D2)``."""
    dd = _as_class(dd)
    _require_positive(dd)
    w1, w2 = dd.dD1, dd.dD2
    sign = -1 if (w1 + w2) % 2 else 1
    return Fraction(sign, w1 * w2) * genus0_log(dd, log_fn)


def open_genus0(dd, open_fn: Optional[Callable] = None) -> Fraction:
    """Leading coefficient of the open series, which has a simple pole at ``q = 1``.

    Taken as the limit of ``[1]_q * O_d``; this is the identification
    ``hbar ~ [1]_q`` applied to the ``hbar^-1`` term.
    """
    dd = _as_class(dd)
    _require_positive(dd)
    value = (open_fn or open_closed)(dd)
    return classical_limit(QRational(qint(1)) * value)


def gv(dd, log_fn: Optional[Callable] = None) -> int:
    """Local Gopakumar-Vafa invariant ``sum_k mu(k)/k^2 N_{d/k}``."""
    dd = _as_class(dd)
    _require_positive(dd)
    total = Fraction(0)
    for k in class_divisors(dd):
        mu = mobius(k)
        if mu:
            total += Fraction(mu, k * k) * local_genus0(dd.divide(k), log_fn)
    if total.denominator != 1:
        raise IntegralityError(f"GV invariant of {dd} is not an integer: {total}")
    return total.numerator


def lmov_genus0(dd, open_fn: Optional[Callable] = None) -> Fraction:
    """Genus-zero LMOV invariant ``sum_k mu(k)/k^2 O_{0, d/k}``."""
    dd = _as_class(dd)
    _require_positive(dd)
    total = Fraction(0)
    for k in class_divisors(dd):
        mu = mobius(k)
        if mu:
            total += Fraction(mu, k * k) * open_genus0(dd.divide(k), open_fn)
    return total


def _integral_series(dd: CurveClass, value: QRational, what: str) -> LaurentPoly:
    try:
        poly = value.to_laurent()
    except DivisibilityError as exc:
        raise IntegralityError(f"{what} of {dd} is not a Laurent polynomial: {value}") from exc
    if any(e % 2 for e, _ in poly.items()):
        raise IntegralityError(f"{what} of {dd} has half-integer powers of q: {poly}")
    return poly


def lmov(dd, log_fn: Optional[Callable] = None) -> LaurentPoly:
    """All-genus LMOV invariant assembled from the log series.

    ``[1]^2 / ([d.D1][d.D2]) * sum_k (-1)^((d1+d2+d3)/k) mu(k) N_{d/k}(q^k)``,
    checked to lie in ``Z[q, 1/q]``.
    """
    dd = _as_class(dd)
    _require_positive(dd)
    log_fn = log_fn or nlog_closed
    total = QRational(0)
    for k in class_divisors(dd):
        mu = mobius(k)
        if not mu:
            continue
        sub = dd.divide(k)
        term = QRational._coerce(log_fn(sub)).subst_power(k)
        if (sub.d1 + sub.d2 + sub.d3) % 2:
            mu = -mu
        total = total + term * mu
    prefactor = QRational(qint(1) * qint(1), qint(dd.dD1) * qint(dd.dD2))
    return _integral_series(dd, prefactor * total, "LMOV series")


def lmov_from_open(dd, open_fn: Optional[Callable] = None) -> LaurentPoly:
    """All-genus LMOV invariant assembled from the open series.

    ``[1]^2 (w/[w]) sum_k mu(k)/k O_{d/k}(q^k)`` with winding ``w = d.D1``.
    """
    dd = _as_class(dd)
    _require_positive(dd)
    open_fn = open_fn or open_closed
    total = QRational(0)
    for k in class_divisors(dd):
        mu = mobius(k)
        if not mu:
            continue
        term = QRational._coerce(open_fn(dd.divide(k))).subst_power(k)
        total = total + term * QRational(mu, k)
    w = dd.dD1
    prefactor = QRational(qint(1) * qint(1) * w, qint(w))
    return _integral_series(dd, prefactor * total, "LMOV series")


def dt_num(dd, log_fn: Optional[Callable] = None) -> int:
    """Numerical DT invariant of the associated quiver, ``|GV_d|``."""
    return abs(gv(dd, log_fn))
