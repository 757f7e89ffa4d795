"""Exact linear algebra over the integers.

Matrices are immutable tuples of tuples of Python ints, so all arithmetic is
arbitrary precision and nothing can silently wrap. The two normal forms here
are the workhorses of the package: the row-style Hermite normal form gives a
canonical basis for an integer row span, and the Smith normal form diagonal
gives the invariant factors of the quotient group.
"""

from __future__ import annotations

from typing import Optional, Sequence

IntMatrix = tuple[tuple[int, ...], ...]


def int_matrix(rows: Sequence[Sequence[int]]) -> IntMatrix:
    """Validate and freeze a rectangular integer matrix with rows, cols >= 1."""
    frozen = tuple(tuple(row) for row in rows)
    if not frozen or not frozen[0]:
        raise ValueError("matrix needs at least one row and one column")
    width = len(frozen[0])
    for row in frozen:
        if len(row) != width:
            raise ValueError("ragged matrix")
        for x in row:
            # bool passes isinstance(int) but is never a legitimate entry
            if type(x) is not int:
                raise ValueError(f"non-integer entry {x!r}")
    return frozen


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Extended gcd: returns (g, x, y) with g = a*x + b*y and g >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def hermite_normal_form(m: Sequence[Sequence[int]]) -> IntMatrix:
    """Canonical row-style Hermite normal form of an integer matrix.

    The result spans the same set of integer row combinations as the input
    and is the unique representative of that span with: pivots positive,
    pivot columns strictly increasing down the rows, every entry above a
    pivot reduced into [0, pivot), and zero rows collected at the bottom.
    An all-zero input comes back unchanged.
    """
    mat = int_matrix(m)
    nrows = len(mat)
    ncols = len(mat[0])
    work = [list(row) for row in mat]
    top = 0
    for col in range(ncols):
        piv = None
        for i in range(top, nrows):
            if work[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        if piv != top:
            work[top], work[piv] = work[piv], work[top]
        for i in range(top + 1, nrows):
            if work[i][col] == 0:
                continue
            a, b = work[top][col], work[i][col]
            if b % a == 0:
                q = b // a
                work[i] = [x - q * y for x, y in zip(work[i], work[top])]
            else:
                g, x, y = _xgcd(a, b)
                p, q = a // g, b // g
                rt = [x * u + y * v for u, v in zip(work[top], work[i])]
                ri = [-q * u + p * v for u, v in zip(work[top], work[i])]
                work[top], work[i] = rt, ri
        if work[top][col] < 0:
            work[top] = [-x for x in work[top]]
        d = work[top][col]
        for i in range(top):
            q = work[i][col] // d
            if q:
                work[i] = [x - q * y for x, y in zip(work[i], work[top])]
        top += 1
    return tuple(tuple(row) for row in work)


def smith_normal_form(m: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Diagonal of the Smith normal form, as nonnegative invariant factors.

    Returns min(rows, cols) values d_1 | d_2 | ... with zeros past the rank.
    The product of the nonzero values is the order of the torsion subgroup
    of Z^cols modulo the row span.
    """
    mat = int_matrix(m)
    nrows = len(mat)
    ncols = len(mat[0])
    a = [list(row) for row in mat]
    lim = min(nrows, ncols)
    t = 0
    while t < lim:
        piv = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                if a[i][j] != 0:
                    piv = (i, j)
                    break
            if piv:
                break
        if piv is None:
            break
        pi, pj = piv
        if pi != t:
            a[t], a[pi] = a[pi], a[t]
        if pj != t:
            for row in a:
                row[t], row[pj] = row[pj], row[t]
        while True:
            for i in range(t + 1, nrows):
                if a[i][t] == 0:
                    continue
                p, q = a[t][t], a[i][t]
                if q % p == 0:
                    f = q // p
                    a[i] = [x - f * y for x, y in zip(a[i], a[t])]
                else:
                    g, x, y = _xgcd(p, q)
                    pp, qq = p // g, q // g
                    rt = [x * u + y * v for u, v in zip(a[t], a[i])]
                    ri = [-qq * u + pp * v for u, v in zip(a[t], a[i])]
                    a[t], a[i] = rt, ri
            for j in range(t + 1, ncols):
                if a[t][j] == 0:
                    continue
                p, q = a[t][t], a[t][j]
                if q % p == 0:
                    f = q // p
                    for row in a:
                        row[j] -= f * row[t]
                else:
                    g, x, y = _xgcd(p, q)
                    pp, qq = p // g, q // g
                    for row in a:
                        ct, cj = row[t], row[j]
                        row[t] = x * ct + y * cj
                        row[j] = -qq * ct + pp * cj
            col_clear = all(a[i][t] == 0 for i in range(t + 1, nrows))
            row_clear = all(a[t][j] == 0 for j in range(t + 1, ncols))
            if col_clear and row_clear:
                # pivot must divide the whole remaining block
                offender = None
                for i in range(t + 1, nrows):
                    for j in range(t + 1, ncols):
                        if a[i][j] % a[t][t] != 0:
                            offender = i
                            break
                    if offender is not None:
                        break
                if offender is None:
                    break
                a[t] = [x + y for x, y in zip(a[t], a[offender])]
        if a[t][t] < 0:
            a[t][t] = -a[t][t]
        t += 1
    return tuple(abs(a[i][i]) for i in range(lim))


def solve_in_row_span(h: Sequence[Sequence[int]], v: Sequence[int]) -> Optional[tuple[int, ...]]:
    """Integer coefficients c with c . h = v, or None when no such c exists.

    h must be a Hermite normal form whose nonzero rows are independent; the
    returned tuple has one coefficient per row of h, with zeros on zero rows,
    and is unique in that shape. Solved by marching down the pivots with
    exact division, so no intermediate value ever leaves the integers.
    """
    mat = int_matrix(h)
    ncols = len(mat[0])
    if len(v) != ncols:
        raise ValueError("vector length does not match matrix width")
    pivots = _pivot_columns(mat)
    residual = list(v)
    coeffs = [0] * len(mat)
    for i, col in pivots:
        x = residual[col]
        if x == 0:
            continue
        d = mat[i][col]
        if x % d != 0:
            return None
        q = x // d
        coeffs[i] = q
        row = mat[i]
        for j in range(col, ncols):
            residual[j] -= q * row[j]
    if any(residual):
        return None
    return tuple(coeffs)


def _pivot_columns(mat: IntMatrix) -> list[tuple[int, int]]:
    """(row, pivot column) pairs of a Hermite normal form; validates the shape."""
    out: list[tuple[int, int]] = []
    last = -1
    seen_zero = False
    for i, row in enumerate(mat):
        lead = next((j for j, x in enumerate(row) if x != 0), None)
        if lead is None:
            seen_zero = True
            continue
        if seen_zero or lead <= last or row[lead] < 0:
            raise ValueError("matrix is not in Hermite normal form")
        out.append((i, lead))
        last = lead
    return out
