"""Direct evaluation of the deformation G by constrained enumeration.

``G(a, b, c, d, e)`` sums over non-negative integer matrices ``k[i, n]``
(``i = 1..4``, ``n >= 1``) subject to::

    a = sum (n + [i == 1]) k[i, n]      b = sum k[i, n]
    c = sum (k[1, n] + k[4, n])         d = sum (k[1, n] + k[3, n])

of a product of q-binomials whose upper arguments depend on the entries in
the later columns. The log invariant is the restriction
``G(d0, d1, d0-d2, d0-d3, d2+d3)``.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Callable, Dict, Iterator, Optional, Tuple

from .errors import DomainError
from .invariants import GParams, _as_class, _as_gparams, gtilde
from .qalg import ONE, ZERO, LaurentPoly, exact_div, poly_sum, qbinom, qbinom_ext, qfact

__all__ = [
    "KMatrix",
    "enumerate_k",
    "g_enum",
    "nlog_scat",
    "recursion_kernel",
    "g_recursion_rhs",
    "gtilde_recursion_check",
    "qps_check",
]

Column = Tuple[int, int, int, int]


class KMatrix:
    """Finitely supported matrix ``(i, n) -> k[i, n]``.

    ``columns[n - 1]`` holds ``(k[1, n], k[2, n], k[3, n], k[4, n])``.
    """

    __slots__ = ("columns",)

    def __init__(self, columns):
        cols = [tuple(int(x) for x in col) for col in columns]
        while cols and not any(cols[-1]):
            cols.pop()
        self.columns: Tuple[Column, ...] = tuple(cols)

    @classmethod
    def from_entries(cls, entries: Dict[Tuple[int, int], int]) -> "KMatrix":
        width = max((n for (_, n), k in entries.items() if k), default=0)
        cols = [[0, 0, 0, 0] for _ in range(width)]
        for (i, n), k in entries.items():
            if k:
                cols[n - 1][i - 1] = k
        return cls(cols)

    @property
    def entries(self) -> Dict[Tuple[int, int], int]:
        return {
            (i + 1, n + 1): k
            for n, col in enumerate(self.columns)
            for i, k in enumerate(col)
            if k
        }

    def __getitem__(self, key):
        i, n = key
        if 1 <= n <= len(self.columns):
            return self.columns[n - 1][i - 1]
        return 0

    def constraint_values(self) -> Tuple[int, int, int, int]:
        """The four linear statistics ``(a, b, c, d)`` of the matrix."""
        a = b = c = d = 0
        for n, (k1, k2, k3, k4) in enumerate(self.columns, start=1):
            a += (n + 1) * k1 + n * (k2 + k3 + k4)
            b += k1 + k2 + k3 + k4
            c += k1 + k4
            d += k1 + k3
        return a, b, c, d

    def __eq__(self, other):
        if isinstance(other, KMatrix):
            return self.columns == other.columns
        return NotImplemented

    def __hash__(self):
        return hash(self.columns)

    def __repr__(self):
        return f"KMatrix({self.entries!r})"


def _enumerate_columns(a: int, b: int, c: int, d: int) -> Iterator[Tuple[Column, ...]]:
    """Depth-first search over columns ``n = a, a-1, ..., 1``.

    Yields tuples of ``a`` columns indexed by ``n - 1``.
    """
    if min(a, b, c, d) < 0:
        return
    if a == 0:
        if b == c == d == 0:
            yield ()
        return
    cols = [(0, 0, 0, 0)] * a

    def column(n, ra, rb, rc, rd):
        if n == 0:
            if ra == rb == rc == rd == 0:
                yield tuple(cols)
            return
        # entries of column n weigh n+1 (i = 1) or n; later columns weigh at most n
        for k1 in range(min(ra // (n + 1), rb, rc, rd) + 1):
            a1, b1, c1, d1 = ra - (n + 1) * k1, rb - k1, rc - k1, rd - k1
            for k4 in range(min(a1 // n, b1, c1) + 1):
                a4, b4, c4 = a1 - n * k4, b1 - k4, c1 - k4
                for k3 in range(min(a4 // n, b4, d1) + 1):
                    a3, b3, d3 = a4 - n * k3, b4 - k3, d1 - k3
                    for k2 in range(min(a3 // n, b3) + 1):
                        a2, b2 = a3 - n * k2, b3 - k2
                        # columns 1..n-1 carry weights in [1, n]
                        if b2 > a2 or a2 > n * b2:
                            continue
                        if c4 > b2 or d3 > b2:
                            continue
                        cols[n - 1] = (k1, k2, k3, k4)
                        yield from column(n - 1, a2, b2, c4, d3)
        cols[n - 1] = (0, 0, 0, 0)

    yield from column(a, a, b, c, d)


def enumerate_k(p) -> Iterator[KMatrix]:
    """All matrices satisfying the four summation constraints of ``p``."""
    a, b, c, d, _ = _as_gparams(p)
    for cols in _enumerate_columns(a, b, c, d):
        yield KMatrix(cols)


def _summand(cols: Tuple[Column, ...], e: int) -> LaurentPoly:
    # upper arguments go negative away from the restriction point; the
    # polynomial extension keeps [n, 0]_q = 1 there
    factors = []
    width = len(cols)
    for n in range(1, width + 1):
        top_a = e
        top_b = e
        for np_ in range(n, width + 1):
            k1, k2, k3, k4 = cols[np_ - 1]
            m = np_ - n
            k12, k34 = k1 + k2, k3 + k4
            if m >= 1:
                top_a -= 2 * m * k12 + (2 * m - 1) * k34
            top_b -= (2 * m + 1) * k12 + 2 * m * k34
        k1, k2, k3, k4 = cols[n - 1]
        for top, k in ((top_a, k1), (top_a, k2), (top_b, k3), (top_b, k4)):
            if not k:
                continue
            f = qbinom_ext(top, k)
            if f.is_zero():
                return ZERO
            factors.append(f)
    out = ONE
    for f in factors:
        out = out * f
    return out


@lru_cache(maxsize=None)
def _g_enum_cached(a: int, b: int, c: int, d: int, e: int) -> LaurentPoly:
    return poly_sum(_summand(cols, e) for cols in _enumerate_columns(a, b, c, d))


def g_enum(p) -> LaurentPoly:
    """G by exhaustive summation over :func:`enumerate_k` (memoized)."""
    return _g_enum_cached(*_as_gparams(p))


def nlog_scat(dd) -> LaurentPoly:
    """Log invariant from the broken-line sum, i.e. G at the restriction point."""
    dd = _as_class(dd)
    if not dd.positive():
        raise DomainError(f"class {dd} needs d.D1 > 0 and d.D2 > 0")
    return g_enum(dd.gparams())


def recursion_kernel(p, ks: Tuple[int, int, int, int]) -> LaurentPoly:
    """Coefficient of the inner G term with first-column entries ``ks``.

    Depends on ``(a, e)`` only through ``e - 2a``.
    """
    a, b, c, d, e = _as_gparams(p)
    k1, k2, k3, k4 = ks
    top12 = e - 2 * a + 2 * b + c + d - k3 - k4
    top34 = e - 2 * a + b + c + d
    out = ONE
    for top, k in ((top12, k1), (top12, k2), (top34, k3), (top34, k4)):
        f = qbinom_ext(top, k)
        if f.is_zero():
            return ZERO
        out = out * f
    return out


def _recursion_sum(p: GParams, inner: Callable[[GParams], LaurentPoly]) -> LaurentPoly:
    a, b, c, d, e = p
    terms = []
    # inner arguments must stay non-negative, otherwise the inner term vanishes
    for k1 in range(min(a - b, b, c, d) + 1):
        for k4 in range(min(b - k1, c - k1) + 1):
            for k3 in range(min(b - k1 - k4, d - k1) + 1):
                for k2 in range(b - k1 - k4 - k3 + 1):
                    kern = recursion_kernel(p, (k1, k2, k3, k4))
                    if kern.is_zero():
                        continue
                    inner_p = GParams(
                        a - b - k1, b - k1 - k2 - k3 - k4, c - k1 - k4, d - k1 - k3, e
                    )
                    val = inner(inner_p)
                    if not val.is_zero():
                        terms.append(kern * val)
    return poly_sum(terms)


def g_recursion_rhs(p, inner: Optional[Callable] = None) -> LaurentPoly:
    """Right-hand side of the first-column recursion for G.

    ``inner`` evaluates the shifted G terms; it defaults to the memoized
    :func:`g_enum` so that comparing against ``g_enum(p)`` is a genuine check.
    """
    p = _as_gparams(p)
    if not (p.a > 0 and p.b > 0 and p.c >= 0 and p.d >= 0):
        raise DomainError(f"recursion needs a > 0, b > 0, c >= 0, d >= 0; got {p}")
    return _recursion_sum(p, inner or g_enum)


def gtilde_recursion_check(p) -> Tuple[LaurentPoly, LaurentPoly]:
    """``(gtilde(p), recursion applied to gtilde)``; the two must agree."""
    p = _as_gparams(p)
    if not (p.a > 0 and p.b > 0):
        raise DomainError(f"recursion needs a > 0 and b > 0; got {p}")
    return gtilde(p), _recursion_sum(p, gtilde)


def qps_check(A: int, B: int, C: int, D: int) -> Tuple[LaurentPoly, LaurentPoly]:
    """Both sides of the terminating q-Pfaff-Saalschutz sum.

    The left side is assembled over the common denominator
    ``[A]! [B]! [C]! [D+K]!`` with ``K = min(A, B, C)``; summands with a
    negative factorial argument are dropped.
    """
    if min(A, B, C, D) < 0:
        raise DomainError("q-Pfaff-Saalschutz arguments must be non-negative")
    K = min(A, B, C)
    common = qfact(A) * qfact(B) * qfact(C) * qfact(D + K)
    numer = []
    for k in range(K + 1):
        den = qfact(k) * qfact(A - k) * qfact(B - k) * qfact(C - k) * qfact(D + k)
        numer.append(qfact(A + B + C + D - k) * exact_div(common, den))
    lhs = exact_div(poly_sum(numer), common)
    rhs = qbinom(A + B + D, B) * qbinom(A + C + D, A) * qbinom(B + C + D, C)
    return lhs, rhs
