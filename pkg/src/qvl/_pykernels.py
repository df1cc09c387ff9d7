"""Pure-Python coefficient kernels.

Coefficient vectors are tuples of ints in ascending degree order. Both
kernels assume trimmed, nonempty inputs (nonzero first and last entry).
The compiled module ``_ckernels`` exposes the same two functions.
"""

BACKEND = "python"


def poly_mul(a, b):
    """Dense convolution of two coefficient vectors."""
    if len(a) < len(b):
        a, b = b, a
    out = [0] * (len(a) + len(b) - 1)
    for j, bj in enumerate(b):
        if not bj:
            continue
        for i, ai in enumerate(a):
            if ai:
                out[i + j] += ai * bj
    return tuple(out)


def poly_divmod(a, b):
    """Long division of ``a`` by ``b`` from the top degree down.

    Returns ``(quotient, remainder, integral)``. ``integral`` is False when
    a quotient coefficient is not an integer; the division stops there and
    the partial remainder is returned.
    """
    n, m = len(a), len(b)
    if n < m:
        return (), tuple(a), True
    rem = list(a)
    lead = b[-1]
    quot = [0] * (n - m + 1)
    for i in range(n - m, -1, -1):
        top = rem[i + m - 1]
        if not top:
            continue
        c, r = divmod(top, lead)
        if r:
            return tuple(quot), tuple(rem), False
        quot[i] = c
        for j in range(m):
            bj = b[j]
            if bj:
                rem[i + j] -= c * bj
    return tuple(quot), tuple(rem), True
