"""Quantum scattering diagram of dP3(0,2) and the broken-line tracer.

Walls carry functions ``1 + c z^rho`` with ``c`` a monomial in the
deformation variables ``t, t1, t2, t3`` (stored as an exponent 4-vector).
Only the part of the diagram met by the broken line coming in from the
``D2`` direction is modelled; the crossing order is fixed rather than
derived from wall coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Dict, Iterable, List, Optional, Tuple

from .errors import DomainError
from .invariants import _as_class
from .qalg import ONE, LaurentPoly, poly_sum, qbinom

__all__ = [
    "Wall",
    "TrackedMonomial",
    "INITIAL_WALLS",
    "det",
    "wall_catalog",
    "regenerate_catalog",
    "scatter_simple",
    "scatter_infinite",
    "cross_wall",
    "trace",
    "trace_nlog",
    "dump_catalog",
    "parse_catalog",
    "dump_branches",
]

Vec2 = Tuple[int, int]
TExp = Tuple[int, int, int, int]


def det(u: Vec2, v: Vec2) -> int:
    return u[0] * v[1] - u[1] * v[0]


def _add(u, v, k=1):
    return tuple(a + k * b for a, b in zip(u, v))


@dataclass(frozen=True)
class Wall:
    """A wall with function ``1 + t^t_exp z^rho``; the wall line has direction ``-rho``."""

    rho: Vec2
    t_exp: TExp
    label: str = field(default="", compare=False)
    n: int = field(default=0, compare=False)

    def __post_init__(self):
        rho = tuple(int(x) for x in self.rho)
        t_exp = tuple(int(x) for x in self.t_exp)
        if len(rho) != 2 or len(t_exp) != 4:
            raise DomainError("wall needs a 2-vector rho and a 4-vector t_exp")
        if gcd(*rho) != 1:
            raise DomainError(f"wall exponent {rho} is not primitive")
        if min(t_exp) < 0 or not any(t_exp):
            raise DomainError(f"wall coefficient exponents {t_exp} must be non-negative, not all zero")
        object.__setattr__(self, "rho", rho)
        object.__setattr__(self, "t_exp", t_exp)

    def function_str(self) -> str:
        parts = []
        for name, k in zip(("t", "t1", "t2", "t3"), self.t_exp):
            if k:
                parts.append(name if k == 1 else f"{name}^{k}")
        for name, k in zip(("x", "y"), self.rho):
            if k:
                parts.append(name if k == 1 else f"{name}^{k}")
        return "1 + " + "*".join(parts)


INITIAL_WALLS = {
    "F2": Wall((-1, 0), (1, 0, 0, 0), "F2"),
    "D1": Wall((1, 2), (0, 1, 0, 0), "D1"),
    "D2,1": Wall((0, -1), (0, 0, 1, 0), "D2,1"),
    "D2,2": Wall((0, -1), (0, 0, 0, 1), "D2,2"),
}


@dataclass(frozen=True)
class TrackedMonomial:
    """One branch of a broken line: ``coeff * t^t_exp * z^z_exp``."""

    coeff: LaurentPoly
    t_exp: TExp
    z_exp: Vec2


def _tuple_walls(n: int) -> List[Wall]:
    return [
        Wall((-1, 2 * (n - 1)), (n + 1, n, 1, 1), "W1", n),
        Wall((-1, 2 * (n - 1)), (n, n - 1, 0, 0), "W2", n),
        Wall((-1, 2 * n - 3), (n, n - 1, 0, 1), "W3", n),
        Wall((-1, 2 * n - 3), (n, n - 1, 1, 0), "W4", n),
    ]


def wall_catalog(n_max: int) -> List[Wall]:
    """Walls of tuples ``n_max, ..., 1`` in the order a broken line crosses them."""
    if n_max < 1:
        raise DomainError(f"catalog depth must be positive, got {n_max}")
    walls = []
    for n in range(n_max, 0, -1):
        walls.extend(_tuple_walls(n))
    return walls


def scatter_simple(w1: Wall, w2: Wall) -> Wall:
    """Single outgoing wall for a pair with ``|det| = 1``."""
    dt = det(w1.rho, w2.rho)
    if abs(dt) != 1:
        raise DomainError(f"simple scattering needs |det| = 1, got {dt}")
    return Wall(_add(w1.rho, w2.rho), _add(w1.t_exp, w2.t_exp))


def scatter_infinite(w1: Wall, w2: Wall, n_max: int) -> List[Wall]:
    """Truncated outgoing families for a pair with ``|det| = 2``.

    Returns ``[(n+1) w1 + n w2 for n = 1..n_max]`` followed by
    ``[n w1 + (n+1) w2 for n = 1..n_max]``. The central wall is not produced.
    """
    dt = det(w1.rho, w2.rho)
    if abs(dt) != 2:
        raise DomainError(f"infinite scattering needs |det| = 2, got {dt}")
    if n_max < 1:
        raise DomainError(f"truncation order must be positive, got {n_max}")

    def combo(i, j):
        rho = _add(tuple(i * x for x in w1.rho), w2.rho, j)
        t_exp = _add(tuple(i * x for x in w1.t_exp), w2.t_exp, j)
        return Wall(rho, t_exp)

    first = [combo(n + 1, n) for n in range(1, n_max + 1)]
    second = [combo(n, n + 1) for n in range(1, n_max + 1)]
    return first + second


def regenerate_catalog(n_max: int) -> List[Wall]:
    """Rebuild :func:`wall_catalog` from the four initial walls.

    ``W2(1)`` is the initial ``F2`` wall and ``W2(n+1)`` comes from infinite
    scattering of ``F2`` with ``D1``. ``W4(n)`` and ``W3(n)`` come from simple
    scattering of ``W2(n)`` with the two ``D2`` walls, and ``W1(n)`` from
    scattering ``W2(n+1)`` with both ``D2`` walls in turn.
    """
    f2, d1 = INITIAL_WALLS["F2"], INITIAL_WALLS["D1"]
    d21, d22 = INITIAL_WALLS["D2,1"], INITIAL_WALLS["D2,2"]
    w2 = [f2] + scatter_infinite(f2, d1, n_max)[:n_max]
    walls = []
    for n in range(n_max, 0, -1):
        base = w2[n - 1]
        w1 = scatter_simple(scatter_simple(w2[n], d21), d22)
        walls.extend(
            [
                Wall(w1.rho, w1.t_exp, "W1", n),
                Wall(base.rho, base.t_exp, "W2", n),
                _relabel(scatter_simple(base, d22), "W3", n),
                _relabel(scatter_simple(base, d21), "W4", n),
            ]
        )
    return walls


def _relabel(w: Wall, label: str, n: int) -> Wall:
    return Wall(w.rho, w.t_exp, label, n)


def cross_wall(mono: TrackedMonomial, w: Wall) -> List[TrackedMonomial]:
    """Expand ``mono`` across ``w``: one branch per power of the wall monomial.

    With ``D = |det(rho, m)|`` the crossing multiplies by
    ``prod_l (1 + c q^l z^rho) = sum_k [D, k]_q c^k z^(k rho)``.
    """
    dt = abs(det(w.rho, mono.z_exp))
    if dt == 0:
        return [mono]
    out = []
    for k in range(dt + 1):
        out.append(
            TrackedMonomial(
                mono.coeff * qbinom(dt, k),
                _add(mono.t_exp, w.t_exp, k),
                _add(mono.z_exp, w.rho, k),
            )
        )
    return out


def trace(
    start: TrackedMonomial,
    walls: Iterable[Wall],
    t_bound: Optional[TExp] = None,
) -> List[TrackedMonomial]:
    """Push a broken line across ``walls`` in order.

    Branches reaching the same ``(t_exp, z_exp)`` are merged by adding their
    coefficients. With ``t_bound``, branches whose t-exponent exceeds it in
    some component are dropped (exponents only grow along the line).
    """
    state: Dict[Tuple[TExp, Vec2], LaurentPoly] = {(start.t_exp, start.z_exp): start.coeff}
    for w in walls:
        nxt: Dict[Tuple[TExp, Vec2], list] = {}
        for (t_exp, z_exp), coeff in state.items():
            for br in cross_wall(TrackedMonomial(coeff, t_exp, z_exp), w):
                if t_bound is not None and any(x > b for x, b in zip(br.t_exp, t_bound)):
                    continue
                nxt.setdefault((br.t_exp, br.z_exp), []).append(br.coeff)
        state = {}
        for key, coeffs in nxt.items():
            c = coeffs[0] if len(coeffs) == 1 else poly_sum(coeffs)
            if not c.is_zero():
                state[key] = c
    return [TrackedMonomial(c, t, z) for (t, z), c in sorted(state.items())]


def trace_nlog(dd, depth: Optional[int] = None, prune: bool = True) -> LaurentPoly:
    """Log invariant from the broken line with asymptotic monomial ``y^-(d2+d3)``.

    Sums the end-coefficients of branches ending at ``z^(-d1, -2 d1)`` with
    t-exponent ``(d0, d0-d1, d0-d2, d0-d3)``. ``depth`` defaults to ``d0``
    tuples of walls; deeper tuples cannot contribute.
    """
    dd = _as_class(dd)
    if not dd.positive():
        raise DomainError(f"class {dd} needs d.D1 > 0 and d.D2 > 0")
    d0, d1, d2, d3 = dd
    target_t = (d0, d0 - d1, d0 - d2, d0 - d3)
    if min(target_t) < 0:
        return LaurentPoly()
    target_z = (-d1, -2 * d1)
    start = TrackedMonomial(ONE, (0, 0, 0, 0), (0, -(d2 + d3)))
    if depth is None:
        depth = max(d0, 1)
    branches = trace(start, wall_catalog(depth), target_t if prune else None)
    return poly_sum(b.coeff for b in branches if b.t_exp == target_t and b.z_exp == target_z)


def dump_catalog(walls: Iterable[Wall]) -> str:
    """One wall per line: ``n=<n> label=<label> rho=(a,b) t=(e0,e1,e2,e3)``."""
    lines = []
    for w in walls:
        rho = ",".join(map(str, w.rho))
        t = ",".join(map(str, w.t_exp))
        lines.append(f"n={w.n} label={w.label} rho=({rho}) t=({t})")
    return "\n".join(lines) + ("\n" if lines else "")


def parse_catalog(text: str) -> List[Wall]:
    walls = []
    for line in text.splitlines():
        if not line.strip():
            continue
        fields = dict(part.split("=", 1) for part in line.split())
        rho = tuple(int(x) for x in fields["rho"].strip("()").split(","))
        t = tuple(int(x) for x in fields["t"].strip("()").split(","))
        walls.append(Wall(rho, t, fields["label"], int(fields["n"])))
    return walls


def dump_branches(branches: Iterable[TrackedMonomial]) -> str:
    lines = []
    for b in branches:
        t = ",".join(map(str, b.t_exp))
        z = ",".join(map(str, b.z_exp))
        lines.append(f"t=({t}) z=({z}) coeff={b.coeff}")
    return "\n".join(lines) + ("\n" if lines else "")
