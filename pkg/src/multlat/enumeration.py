"""Exhaustive enumeration engines and the factorization verifier.

Two independent routes are implemented for counting multiplicative
sublattices. The full-rank route walks upper-triangular Hermite bases with a
prescribed determinant. The co-rank route is a brute-force scan over
staircase-shaped bases with bounded entries; it never consults the closed
formula it is later compared against. The verifier pits the two against each
other cell by cell.

Budgets: both engines count every candidate row they visit and abort with
SearchBudgetExceeded once the per-worker budget is crossed, so an oversized
request dies loudly instead of truncating silently.
"""

from __future__ import annotations

import bisect
import itertools
import multiprocessing
from dataclasses import dataclass
from math import gcd, isqrt
from typing import Optional

from .intlinalg import _xgcd
from .lattice import (
    Lattice,
    has_rigid_columns,
    is_multiplicative,
    lattice_from_rows,
    torsion_size,
)
from .partitions import (
    AcceptableMap,
    SetPartition,
    enumerate_ordered_maps,
    apply_map,
    partition_to_map,
    stirling2,
)

ENGINE_VERSION = "0.1.0"

DEFAULT_BUDGET = 50_000_000


class SearchBudgetExceeded(RuntimeError):
    """Raised when an enumeration hits its per-worker candidate budget."""


@dataclass(frozen=True)
class CountRecord:
    """One counting result: method is 'oracle', 'formula' or 'unital'."""

    n: int
    k: int
    r: int
    count: int
    method: str
    engine_version: str

    def __post_init__(self) -> None:
        if self.method not in ("oracle", "formula", "unital"):
            raise ValueError(f"unknown method {self.method!r}")
        if self.r < 1:
            raise ValueError("torsion size must be at least 1")
        if self.count < 0:
            raise ValueError("count must be nonnegative")
        if self.k == 0 and self.method == "formula":
            raise ValueError("full-rank records are counted directly, not by formula")


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of one verification cell.

    status is 'pass' exactly when the scan count equals the formula count and
    every scanned lattice survived the rigidity, decomposition and torsion
    checks.
    """

    n: int
    k: int
    r: int
    oracle_count: int
    formula_count: int
    stirling_factor: int
    full_rank_count: int
    witnesses_checked: int
    status: str

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "r": self.r,
            "oracle_count": self.oracle_count,
            "formula_count": self.formula_count,
            "stirling_factor": self.stirling_factor,
            "full_rank_count": self.full_rank_count,
            "witnesses_checked": self.witnesses_checked,
            "status": self.status,
        }


# ---------------------------------------------------------------------------
# shared low-level helpers (hot path: plain lists, no object churn)


def _insert_row(hnf: list[list[int]], pivots: list[int], v: tuple[int, ...],
                ambient: int) -> Optional[tuple[list[list[int]], list[int]]]:
    """Adjoin v to a Hermite basis; None when the rank does not grow.

    Returns the canonical basis and pivots of span(rows + {v}) without
    mutating the inputs. When v's lead collides with an existing pivot the
    two rows are combined by a unimodular 2x2 step (the pivot becomes the
    gcd) and the remainder cascades rightward. None means v sits in the
    rational row space; such a branch cannot reach full rank and is dead
    for the scan even when v refines the lattice.
    """
    h = [row[:] for row in hnf]
    piv = pivots[:]
    w = list(v)
    while True:
        for t, c in enumerate(piv):
            wc = w[c]
            if wc:
                row = h[t]
                q = wc // row[c]
                if q:
                    for j in range(c, ambient):
                        w[j] -= q * row[j]
        lead = -1
        for j in range(ambient):
            if w[j]:
                lead = j
                break
        if lead < 0:
            return None
        if w[lead] < 0:
            for j in range(lead, ambient):
                w[j] = -w[j]
            continue
        t = bisect.bisect_left(piv, lead)
        if t < len(piv) and piv[t] == lead:
            row = h[t]
            d = row[lead]
            a = w[lead]
            g, s, u = _xgcd(d, a)
            dg = d // g
            ag = a // g
            h[t] = [s * row[j] + u * w[j] for j in range(ambient)]
            w = [ag * row[j] - dg * w[j] for j in range(ambient)]
            continue
        break
    pos = bisect.bisect_left(piv, lead)
    h.insert(pos, w)
    piv.insert(pos, lead)
    # one left-to-right pass re-reduces everything above each pivot
    for t in range(len(piv)):
        c = piv[t]
        prow = h[t]
        d = prow[c]
        for a_i in range(t):
            x = h[a_i][c]
            q = x // d
            if q:
                ra = h[a_i]
                for j in range(c, ambient):
                    ra[j] -= q * prow[j]
    return h, piv


def _in_span(hnf: list[list[int]], pivots: list[int], p: list[int],
             ambient: int) -> bool:
    """Membership of p in the row span of a Hermite basis, by exact division."""
    w = p[:]
    for idx, c in enumerate(pivots):
        wc = w[c]
        if wc:
            row = hnf[idx]
            d = row[c]
            if wc % d:
                return False
            q = wc // d
            for j in range(c, ambient):
                w[j] -= q * row[j]
    for x in w:
        if x:
            return False
    return True


# ---------------------------------------------------------------------------
# full-rank enumeration: upper-triangular Hermite bases with fixed determinant


def _diagonals(n: int, index: int) -> list[tuple[int, ...]]:
    """All length-n tuples of positive integers with the given product."""
    out: list[tuple[int, ...]] = []

    def rec(i: int, rem: int, acc: list[int]) -> None:
        if i == n:
            if rem == 1:
                out.append(tuple(acc))
            return
        d = 1
        while d <= rem:
            if rem % d == 0:
                acc.append(d)
                rec(i + 1, rem // d, acc)
                acc.pop()
            d += 1

    rec(0, index, [])
    return out


def _full_rank_worker(args: tuple[int, int, int, int, int]) -> list[tuple[tuple[int, ...], ...]]:
    n, index, shard, jobs, budget = args
    visited = 0
    keep: list[tuple[tuple[int, ...], ...]] = []
    diags = _diagonals(n, index)
    all_pivots = list(range(n))
    for di, diag in enumerate(diags):
        if di % jobs != shard:
            continue
        slots = [(i, j) for j in range(n) for i in range(j)]
        ranges = [range(diag[j]) for (_, j) in slots]
        for combo in itertools.product(*ranges):
            visited += 1
            if visited > budget:
                raise SearchBudgetExceeded(
                    f"search budget exhausted after {visited} candidates "
                    f"(budget {budget})")
            mat = [[0] * n for _ in range(n)]
            for i in range(n):
                mat[i][i] = diag[i]
            for (i, j), val in zip(slots, combo):
                mat[i][j] = val
            ok = True
            for a in range(n):
                ra = mat[a]
                for b in range(a, n):
                    rb = mat[b]
                    p = [x * y for x, y in zip(ra, rb)]
                    if not _in_span(mat, all_pivots, p, n):
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                keep.append(tuple(tuple(row) for row in mat))
    return keep


def enumerate_full_rank_multiplicative(n: int, index: int, *, jobs: int = 1,
                                       budget: Optional[int] = None) -> list[Lattice]:
    """All full-rank multiplicative sublattices of Z^n with the given index.

    Iterates upper-triangular Hermite bases (positive diagonal with product
    `index`, entries above a pivot reduced modulo that pivot), keeping the
    ones closed under coordinatewise products. Each lattice appears exactly
    once; the result is sorted by basis.
    """
    if n < 1:
        raise ValueError("ambient dimension must be at least 1")
    if index < 1:
        raise ValueError("index must be at least 1")
    if jobs < 1:
        raise ValueError("jobs must be at least 1")
    budget = DEFAULT_BUDGET if budget is None else budget
    if budget < 1:
        raise ValueError("budget must be at least 1")
    tasks = [(n, index, shard, jobs, budget) for shard in range(jobs)]
    if jobs == 1:
        shard_results = [_full_rank_worker(tasks[0])]
    else:
        ctx = multiprocessing.get_context("fork")
        with ctx.Pool(jobs) as pool:
            shard_results = pool.map(_full_rank_worker, tasks)
    bases = sorted(b for chunk in shard_results for b in chunk)
    lats = [Lattice(n, b) for b in bases]
    _reverify(lats, index)
    return lats


def count_full_rank(n: int, index: int, *, jobs: int = 1,
                    budget: Optional[int] = None) -> int:
    """Number of full-rank multiplicative sublattices of Z^n of given index.

    The n = 0 convention: exactly one such lattice for index 1, none else.
    """
    if n == 0:
        if index < 1:
            raise ValueError("index must be at least 1")
        return 1 if index == 1 else 0
    return len(enumerate_full_rank_multiplicative(n, index, jobs=jobs, budget=budget))


def count_unital(n: int, index: int, *, jobs: int = 1,
                 budget: Optional[int] = None) -> int:
    """Number of index-`index` subrings of Z^n containing (1, ..., 1).

    For n = 0 the empty product convention makes Z^0 itself the single
    subring, of index 1.
    """
    if n == 0:
        if index < 1:
            raise ValueError("index must be at least 1")
        return 1 if index == 1 else 0
    ones = (1,) * n
    lats = enumerate_full_rank_multiplicative(n, index, jobs=jobs, budget=budget)
    count = 0
    for lat in lats:
        if _in_span([list(r) for r in lat.basis],
                    [next(j for j, x in enumerate(r) if x) for r in lat.basis],
                    list(ones), n):
            count += 1
    return count


# ---------------------------------------------------------------------------
# co-rank oracle: staircase scan with bounded entries


def _residual_last(h: list[list[int]], piv: list[int], p: list[int],
                   last: int) -> Optional[int]:
    """Eliminate p against an echelon basis whose pivots all sit before `last`.

    Returns None when p is rejected at some column before `last` (a failed
    exact division or a nonzero residual entry); otherwise the residual value
    in column `last`, so membership in the row span holds exactly when that
    value is zero. Mutates p. h need not be reduced above its pivots.
    """
    amb = last + 1
    for t, c in enumerate(piv):
        if c >= last:
            continue
        pc = p[c]
        if pc:
            row = h[t]
            d = row[c]
            if pc % d:
                return None
            q = pc // d
            for j in range(c, amb):
                p[j] -= q * row[j]
    for j in range(last):
        if p[j]:
            return None
    return p[last]


def _det(m: list[list[int]]) -> int:
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = 0
    for i in range(n):
        a = m[i][0]
        if a:
            sub = [row[1:] for t, row in enumerate(m) if t != i]
            s = a * _det(sub)
            total += s if i % 2 == 0 else -s
    return total


def _row_span_torsion(rows: list[list[int]], ambient: int) -> int:
    # gcd of all maximal minors; for independent rows this is the size of
    # the quotient of the rational span's integer points by the row span
    n = len(rows)
    g = 0
    for cols in itertools.combinations(range(ambient), n):
        d = _det([[row[c] for c in cols] for row in rows])
        if d:
            g = gcd(g, d)
            if g == 1:
                return 1
    return g


def _corank_worker(args: tuple[int, int, int, int, int, int, int]) -> set[tuple[tuple[int, ...], ...]]:
    ambient, corank, torsion, bound, shard, jobs, budget = args
    n = ambient - corank
    rng = range(bound + 1)
    found: set[tuple[tuple[int, ...], ...]] = set()
    visited = 0

    def finalize(h2: list[list[int]], p2: list[int]) -> None:
        pivot_prod = 1
        for t, c in enumerate(p2):
            pivot_prod *= h2[t][c]
        # torsion divides every maximal minor, the pivot minor included
        if pivot_prod % torsion:
            return
        if _row_span_torsion(h2, ambient) == torsion:
            found.add(tuple(tuple(r) for r in h2))

    def scan_final(rows: list[tuple[int, ...]],
                   h: list[list[int]], piv: list[int]) -> None:
        # The last row dominates the scan. It is always full width, every
        # prefix pivot sits left of its last column, and every branch
        # decision of the insert cascade and of the eliminations happens
        # left of the last column, so for a fixed head each product's final
        # residual is a polynomial in the last entry x: affine for cross
        # products, monic quadratic for the square. The scan extracts the
        # coefficients by evaluating at x = 0, 1, 2 (asserting polynomial
        # consistency) and visits only the roots, re-verifying each survivor
        # through the generic insert-and-check path. Heads whose extra pivot
        # falls on the last column escape the model and walk the range
        # directly, after an x-independent pre-rejection.
        nonlocal visited
        amb = ambient
        last = amb - 1
        m = len(rows)
        per_head = bound + 1

        def check_candidate(v: tuple[int, ...]) -> None:
            ins = _insert_row(h, piv, v, amb)
            if ins is None:
                return
            h2, p2 = ins
            for u in rows:
                if not _in_span(h2, p2, [a * b for a, b in zip(u, v)], amb):
                    return
            if not _in_span(h2, p2, [a * a for a in v], amb):
                return
            finalize(h2, p2)

        def residuals(h2: list[list[int]], p2: list[int],
                      v: tuple[int, ...]) -> Optional[list[int]]:
            out: list[int] = []
            for u in rows:
                res = _residual_last(h2, p2, [a * b for a, b in zip(u, v)], last)
                if res is None:
                    return None
                out.append(res)
            res = _residual_last(h2, p2, [a * a for a in v], last)
            if res is None:
                return None
            out.append(res)
            return out

        def eval_at(head: tuple[int, ...], x: int, pivot_col: int
                    ) -> Optional[list[int]]:
            v = head + (x,)
            ins = _insert_row(h, piv, v, amb)
            if ins is None:
                raise RuntimeError("internal: insert outcome changed with x")
            h2, p2 = ins
            added = p2[-1]
            for t in range(len(piv)):
                if p2[t] != piv[t]:
                    added = p2[t]
                    break
            if added != pivot_col:
                raise RuntimeError("internal: extra pivot moved with x")
            return residuals(h2, p2, v)

        for head in itertools.product(rng, repeat=last):
            visited += per_head
            if visited > budget:
                raise SearchBudgetExceeded(
                    f"search budget exhausted after {visited} candidates "
                    f"(budget {budget})")
            ins0 = _insert_row(h, piv, head + (0,), amb)
            pivot_col = -1
            if ins0 is not None:
                p2 = ins0[1]
                pivot_col = p2[-1]
                for t in range(len(piv)):
                    if p2[t] != piv[t]:
                        pivot_col = p2[t]
                        break
            if ins0 is None or pivot_col == last:
                # the extra pivot sits on the last column for every x, so
                # the last modulus varies with x; pre-reject on the columns
                # left of it, which do not, then walk the range. A basis
                # with the extension folded in is required here: a collision
                # during the insert can shrink prefix pivot values.
                rep = ins0 if ins0 is not None else _insert_row(
                    h, piv, head + (1,), amb)
                if rep is None:
                    raise RuntimeError(
                        "internal: head dependent for two distinct tails")
                h2r, p2r = rep
                ok = True
                for u in rows:
                    if _residual_last(h2r, p2r,
                                      [a * b for a, b in zip(u, head)] + [0],
                                      last) is None:
                        ok = False
                        break
                if ok and _residual_last(h2r, p2r,
                                         [a * a for a in head] + [0],
                                         last) is None:
                    ok = False
                if not ok:
                    continue
                for x in rng:
                    check_candidate(head + (x,))
                continue
            r0 = residuals(ins0[0], ins0[1], head + (0,))
            if r0 is None:
                continue
            r1 = eval_at(head, 1, pivot_col)
            r2 = eval_at(head, 2, pivot_col)
            if r1 is None or r2 is None:
                raise RuntimeError(
                    "internal: rejection verdict depends on the last entry")
            dead = False
            allowed: Optional[set[int]] = None
            for i in range(m):
                b = r1[i] - r0[i]
                if r2[i] - r1[i] != b:
                    raise RuntimeError(
                        "internal: cross-product residual is not affine")
                if b == 0:
                    if r0[i]:
                        dead = True
                        break
                    continue
                if r0[i] % b:
                    dead = True
                    break
                root = -(r0[i] // b)
                if allowed is None:
                    allowed = {root}
                else:
                    allowed &= {root}
                    if not allowed:
                        dead = True
                        break
            if dead:
                continue
            if r2[m] - 2 * r1[m] + r0[m] != 2:
                raise RuntimeError(
                    "internal: square residual is not a monic quadratic")
            qb = r1[m] - r0[m] - 1
            qa = r0[m]
            disc = qb * qb - 4 * qa
            if disc < 0:
                continue
            s = isqrt(disc)
            if s * s != disc:
                continue
            roots = set()
            for numer in (-qb - s, -qb + s):
                if numer % 2 == 0:
                    roots.add(numer // 2)
            if allowed is not None:
                roots &= allowed
            for x in sorted(roots):
                if 0 <= x <= bound:
                    check_candidate(head + (x,))

    def extend(level: int, rows: list[tuple[int, ...]],
               hnf: list[list[int]], pivots: list[int]) -> None:
        nonlocal visited
        width = min(ambient, level + 1 + corank)
        tail = (0,) * (ambient - width)
        for head in itertools.product(rng, repeat=width):
            visited += 1
            if visited > budget:
                raise SearchBudgetExceeded(
                    f"search budget exhausted after {visited} candidates "
                    f"(budget {budget})")
            v = head + tail
            ins = _insert_row(hnf, pivots, v, ambient)
            if ins is None:
                continue
            h2, p2 = ins
            ok = True
            for u in rows:
                if not _in_span(h2, p2, [x * y for x, y in zip(u, v)], ambient):
                    ok = False
                    break
            if ok and not _in_span(h2, p2, [x * x for x in v], ambient):
                ok = False
            if not ok:
                continue
            # the prefix span is the final lattice cut down to a coordinate
            # section, hence a primitive sublattice of it, so its torsion
            # divides the final torsion
            if torsion % _row_span_torsion(h2, ambient):
                continue
            if level + 2 == n:
                scan_final(rows + [v], h2, p2)
            else:
                extend(level + 1, rows + [v], h2, p2)

    # shard on the first-row candidates
    width0 = min(ambient, 1 + corank)
    tail0 = (0,) * (ambient - width0)
    final0 = n == 1
    idx0 = -1
    for head in itertools.product(rng, repeat=width0):
        idx0 += 1
        if idx0 % jobs != shard:
            continue
        visited += 1
        if visited > budget:
            raise SearchBudgetExceeded(
                f"search budget exhausted after {visited} candidates "
                f"(budget {budget})")
        v = head + tail0
        lead = -1
        for j in range(ambient):
            if v[j]:
                lead = j
                break
        if lead < 0:
            continue
        # rank-1 span is multiplicative iff all nonzero entries are equal
        val = v[lead]
        if any(x and x != val for x in v):
            continue
        # rank-1 torsion is the common value; it must divide the target
        if torsion % val:
            continue
        hnf1 = [list(v)]
        piv1 = [lead]
        if final0:
            if val == torsion:
                found.add((v,))
        elif n == 2:
            scan_final([v], hnf1, piv1)
        else:
            extend(1, [v], hnf1, piv1)
    return found


def enumerate_corank_oracle(ambient: int, corank: int, torsion: int,
                            bound_multiplier: int = 1, *, jobs: int = 1,
                            budget: Optional[int] = None) -> list[Lattice]:
    """Brute-force census of multiplicative sublattices by co-rank and torsion.

    Scans every (ambient-corank) x ambient staircase matrix, where row i may
    be supported only on columns 0..i+corank and entries run over
    [0, bound_multiplier * torsion], keeping row spans that are full rank on
    their rows, multiplicative, and of the requested torsion. Duplicate
    representations collapse through the canonical Hermite basis. The scan
    prunes branches whose prefix rows are dependent or whose prefix span is
    not multiplicative; every surviving lattice is re-verified afterwards
    with the lattice-level membership routine.

    Raising bound_multiplier widens the entry range; a census that is stable
    under widening was not an artifact of the bound.
    """
    if ambient < 0 or not 0 <= corank <= ambient:
        raise ValueError("need 0 <= corank <= ambient")
    if torsion < 1:
        raise ValueError("torsion must be at least 1")
    if bound_multiplier < 1:
        raise ValueError("bound_multiplier must be at least 1")
    if jobs < 1:
        raise ValueError("jobs must be at least 1")
    budget = DEFAULT_BUDGET if budget is None else budget
    if budget < 1:
        raise ValueError("budget must be at least 1")
    n = ambient - corank
    if n == 0:
        lats = [Lattice(ambient, ())] if torsion == 1 else []
        _reverify_corank(lats, torsion, n)
        return lats
    bound = bound_multiplier * torsion
    tasks = [(ambient, corank, torsion, bound, shard, jobs, budget)
             for shard in range(jobs)]
    if jobs == 1:
        shard_results = [_corank_worker(tasks[0])]
    else:
        ctx = multiprocessing.get_context("fork")
        with ctx.Pool(jobs) as pool:
            shard_results = pool.map(_corank_worker, tasks)
    bases = sorted(set().union(*shard_results))
    lats = [Lattice(ambient, b) for b in bases]
    _reverify_corank(lats, torsion, n)
    return lats


def _reverify(lats: list[Lattice], index: int) -> None:
    """Post-hoc check of the full-rank engine output, via the lattice routines."""
    for lat in lats:
        if not lat.is_full_rank or not is_multiplicative(lat):
            raise RuntimeError("internal: engine produced a bad lattice")
        if torsion_size(lat) != index:
            raise RuntimeError("internal: engine produced a wrong index")


def _reverify_corank(lats: list[Lattice], torsion: int, n: int) -> None:
    """Post-hoc check of the scan output, independent of the scan's own math."""
    for lat in lats:
        if lat.rank != n or not is_multiplicative(lat):
            raise RuntimeError("internal: scan produced a bad lattice")
        if torsion_size(lat) != torsion:
            raise RuntimeError("internal: scan produced a wrong torsion")


# ---------------------------------------------------------------------------
# the factorization under test


def count_corank_formula(n: int, k: int, r: int) -> int:
    """Closed-form count: stirling2(n+k+1, n+1) times the full-rank count."""
    if n < 0 or k < 0:
        raise ValueError("n and k must be nonnegative")
    return stirling2(n + k + 1, n + 1) * count_full_rank(n, r)


def decompose(lat: Lattice) -> tuple[AcceptableMap, Lattice]:
    """Split a multiplicative lattice into an ordered map and a full-rank core.

    The canonical basis of a multiplicative lattice has exactly rank-many
    distinct nonzero columns; grouping equal columns yields the partition
    behind an ordered acceptable map g, and reading the basis off one
    representative column per group yields a full-rank multiplicative core L
    with apply_map(g, L) == lat. The pair is unique.
    """
    if not is_multiplicative(lat):
        raise ValueError("lattice is not multiplicative")
    rank = lat.rank
    zero_col = (0,) * rank
    zero_positions: list[int] = []
    groups: dict[tuple[int, ...], list[int]] = {}
    for j in range(lat.ambient_dim):
        col = tuple(row[j] for row in lat.basis)
        if col == zero_col:
            zero_positions.append(j + 1)
        else:
            groups.setdefault(col, []).append(j + 1)
    if len(groups) != rank:
        raise RuntimeError("internal: column count contradicts the rank")
    blocks = [tuple([0] + zero_positions)]
    blocks.extend(sorted((tuple(v) for v in groups.values()), key=lambda b: b[0]))
    blocks.sort(key=lambda b: b[0])
    part = SetPartition(lat.ambient_dim + 1, tuple(blocks))
    g = partition_to_map(part, rank)
    reps = [block[0] - 1 for block in part.blocks[1:]]
    core_rows = [tuple(row[j] for j in reps) for row in lat.basis]
    core = lattice_from_rows(rank, core_rows)
    if core.rank != rank:
        raise RuntimeError("internal: core lattice lost rank")
    if apply_map(g, core) != lat:
        raise RuntimeError("internal: decomposition does not reproduce the lattice")
    return g, core


def reconstruct_from_factorization(n: int, k: int, r: int, *, jobs: int = 1,
                                   budget: Optional[int] = None) -> list[Lattice]:
    """Images of every full-rank index-r lattice under every ordered map.

    Returns the flat list (duplicates included, deterministic order); when
    the factorization holds this list matches the co-rank census exactly.
    """
    if n == 0:
        cores = [Lattice(0, ())] if r == 1 else []
    else:
        cores = enumerate_full_rank_multiplicative(n, r, jobs=jobs, budget=budget)
    out: list[Lattice] = []
    for g in enumerate_ordered_maps(n, n + k):
        for core in cores:
            out.append(apply_map(g, core))
    return out


def verify_corank_factorization(n: int, k: int, r: int,
                                bound_multiplier: int = 1, *, jobs: int = 1,
                                budget: Optional[int] = None) -> VerificationReport:
    """Pit the staircase census against the Stirling-factor formula.

    Checks, for the cell (n, k, r): the census count equals
    stirling2(n+k+1, n+1) * count_full_rank(n, r); every censused lattice has
    rigid columns; decomposing and re-applying reproduces it; and its torsion
    equals the index of its core.
    """
    witnesses = enumerate_corank_oracle(n + k, k, r, bound_multiplier,
                                        jobs=jobs, budget=budget)
    stirling_factor = stirling2(n + k + 1, n + 1)
    full_rank_count = count_full_rank(n, r, jobs=jobs, budget=budget)
    formula_count = stirling_factor * full_rank_count
    ok = len(witnesses) == formula_count
    checked = 0
    for lat in witnesses:
        checked += 1
        if not has_rigid_columns(lat):
            ok = False
            continue
        g, core = decompose(lat)
        if apply_map(g, core) != lat:
            ok = False
        if torsion_size(core) != r or torsion_size(lat) != r:
            ok = False
    return VerificationReport(
        n=n, k=k, r=r,
        oracle_count=len(witnesses),
        formula_count=formula_count,
        stirling_factor=stirling_factor,
        full_rank_count=full_rank_count,
        witnesses_checked=checked,
        status="pass" if ok else "fail",
    )


def find_counterexample(n: int, k: int, r: int, bound_multiplier: int = 1, *,
                        jobs: int = 1, budget: Optional[int] = None
                        ) -> Optional[tuple[Lattice, str]]:
    """First offending lattice of a failing cell, with a reason; None if clean.

    Used by the command line to print something concrete when a verification
    cell fails: either a witness failing one of the per-lattice checks, or an
    element of the symmetric difference between the census and the
    reconstruction through maps.
    """
    witnesses = enumerate_corank_oracle(n + k, k, r, bound_multiplier,
                                        jobs=jobs, budget=budget)
    for lat in witnesses:
        if not has_rigid_columns(lat):
            return lat, "column count differs from rank"
        g, core = decompose(lat)
        if apply_map(g, core) != lat:
            return lat, "decomposition does not round-trip"
        if torsion_size(core) != r:
            return lat, "core index differs from torsion"
    rebuilt = reconstruct_from_factorization(n, k, r, jobs=jobs, budget=budget)
    census = set(witnesses)
    formula_side = set(rebuilt)
    for lat in sorted(census.symmetric_difference(formula_side),
                      key=lambda l: (l.rank, l.basis)):
        if lat in census:
            return lat, "censused but not reachable through any map"
        return lat, "reachable through a map but missed by the census"
    if len(rebuilt) != len(formula_side):
        seen: set[Lattice] = set()
        for lat in rebuilt:
            if lat in seen:
                return lat, "reached through two different map/core pairs"
            seen.add(lat)
    return None
