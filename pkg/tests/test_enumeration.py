"""Counting engines: full-rank enumeration, staircase census, factorization.

The heavier cross-checks pit the pruned engine against the unpruned reference
scan in refimpl; the frozen count tables below were produced by that reference
implementation before the engine existed and must never be edited to make a
test pass.
"""

import random

import pytest

from multlat.enumeration import (
    CountRecord,
    SearchBudgetExceeded,
    VerificationReport,
    count_corank_formula,
    count_full_rank,
    count_unital,
    decompose,
    enumerate_corank_oracle,
    enumerate_full_rank_multiplicative,
    find_counterexample,
    reconstruct_from_factorization,
    verify_corank_factorization,
)
from multlat.enumeration import _det, _row_span_torsion
from multlat.lattice import (
    Lattice,
    distinct_nonzero_columns,
    is_multiplicative,
    lattice_from_rows,
    torsion_size,
)
from multlat.partitions import apply_map, enumerate_ordered_maps, stirling2

from refimpl import (
    bareiss_det,
    rational_rank,
    ref_canonical_key,
    ref_corank_scan,
    ref_count_full_rank_mult,
    ref_count_unital,
    torsion_ref,
)

# computed with the reference scan before the engine was written
FULL_RANK_2 = [1, 3, 3, 4, 3, 9, 3, 6, 4, 9, 3, 12, 3, 9, 9, 10]
FULL_RANK_3 = [1, 6, 6, 13, 6, 36, 6, 25]


# ----------------------------------------------------------- frozen tables

def test_full_rank_counts_dimension_one():
    # Z^1 has exactly one sublattice per index and it is multiplicative
    for r in range(1, 21):
        assert count_full_rank(1, r) == 1


def test_full_rank_counts_dimension_two_frozen():
    got = [count_full_rank(2, r) for r in range(1, 17)]
    assert got == FULL_RANK_2


def test_full_rank_counts_dimension_three_frozen():
    got = [count_full_rank(3, r) for r in range(1, 9)]
    assert got == FULL_RANK_3


def test_full_rank_counts_match_reference_live():
    for n in (1, 2, 3):
        for r in range(1, 7):
            assert count_full_rank(n, r) == ref_count_full_rank_mult(n, r), (n, r)


def test_full_rank_multiplicativity_is_a_real_constraint():
    # there are 7 full-rank index-4 sublattices of Z^2 but only 4 multiplicative
    assert count_full_rank(2, 4) == 4


# ------------------------------------------------------ full-rank censuses

def test_enumerate_full_rank_properties():
    for n, r in ((2, 6), (3, 4)):
        lats = enumerate_full_rank_multiplicative(n, r)
        assert len(set(lats)) == len(lats)
        assert lats == sorted(lats, key=lambda l: l.basis)
        for lat in lats:
            assert lat.ambient_dim == n and lat.is_full_rank
            assert is_multiplicative(lat)
            assert torsion_size(lat) == r


def test_enumerate_full_rank_jobs_split_agrees():
    for n, r in ((2, 12), (3, 6)):
        assert enumerate_full_rank_multiplicative(n, r) == \
            enumerate_full_rank_multiplicative(n, r, jobs=3)


def test_enumerate_full_rank_arg_validation():
    with pytest.raises(ValueError):
        enumerate_full_rank_multiplicative(0, 1)
    with pytest.raises(ValueError):
        enumerate_full_rank_multiplicative(2, 0)
    with pytest.raises(ValueError):
        enumerate_full_rank_multiplicative(2, 2, jobs=0)
    with pytest.raises(ValueError):
        enumerate_full_rank_multiplicative(2, 2, budget=0)


def test_count_full_rank_dimension_zero_convention():
    assert count_full_rank(0, 1) == 1
    assert count_full_rank(0, 5) == 0
    with pytest.raises(ValueError):
        count_full_rank(0, 0)


# ------------------------------------------------------------------ unital

def test_count_unital_matches_reference():
    for n in (1, 2, 3):
        for r in range(1, 7):
            assert count_unital(n, r) == ref_count_unital(n, r), (n, r)


def test_count_unital_shifts_dimension():
    # the unital count in dimension n equals the plain count in dimension n-1
    for r in range(1, 9):
        assert count_unital(2, r) == count_full_rank(1, r)
        assert count_unital(3, r) == count_full_rank(2, r)


def test_count_unital_dimension_one_edge():
    # Z^1 has one subring per index but only index 1 contains the unit
    assert count_unital(1, 1) == 1
    for r in range(2, 9):
        assert count_unital(1, r) == 0


def test_count_unital_dimension_zero_convention():
    assert count_unital(0, 1) == 1
    assert count_unital(0, 3) == 0


# ----------------------------------------------------------- corank census

def test_corank_scan_matches_unpruned_reference():
    # the engine prunes hard; the reference scan does not prune at all
    cells = [
        (2, 1, 1), (2, 1, 2), (2, 1, 3), (2, 1, 4),
        (3, 1, 2), (3, 1, 3),
        (3, 2, 1), (3, 2, 2), (3, 2, 3), (3, 2, 4),
        (4, 2, 2), (4, 2, 3),
        (4, 3, 2), (4, 3, 4),
        (4, 1, 2),
    ]
    for ambient, corank, torsion in cells:
        lats = enumerate_corank_oracle(ambient, corank, torsion)
        mine = {lat.basis for lat in lats}
        ref = ref_corank_scan(ambient, corank, torsion, torsion)
        assert mine == ref, (ambient, corank, torsion)


def test_corank_scan_stable_under_wider_bound():
    cells = [(2, 1, 4), (3, 1, 3), (3, 2, 4), (4, 2, 2)]
    for ambient, corank, torsion in cells:
        narrow = enumerate_corank_oracle(ambient, corank, torsion, 1)
        wide = enumerate_corank_oracle(ambient, corank, torsion, 2)
        assert narrow == wide, (ambient, corank, torsion)


def test_corank_scan_jobs_split_agrees():
    for cell in ((3, 1, 3), (4, 2, 2)):
        ambient, corank, torsion = cell
        assert enumerate_corank_oracle(ambient, corank, torsion) == \
            enumerate_corank_oracle(ambient, corank, torsion, jobs=3)


def test_corank_zero_equals_full_rank_census():
    for n, r in ((2, 4), (3, 3)):
        assert enumerate_corank_oracle(n, 0, r) == \
            enumerate_full_rank_multiplicative(n, r)


def test_corank_census_properties():
    lats = enumerate_corank_oracle(4, 2, 2)
    assert len(lats) == 75
    for lat in lats:
        assert lat.ambient_dim == 4 and lat.rank == 2
        assert is_multiplicative(lat)
        assert torsion_size(lat) == 2
        # rigidity: exactly rank-many distinct nonzero columns
        assert distinct_nonzero_columns(lat) == lat.rank


def test_corank_full_ambient_edge():
    # rank zero: only the zero lattice, and only with trivial torsion
    assert enumerate_corank_oracle(2, 2, 1) == [Lattice(2, ())]
    assert enumerate_corank_oracle(2, 2, 2) == []
    assert enumerate_corank_oracle(0, 0, 1) == [Lattice(0, ())]


def test_corank_one_column_structure():
    # co-rank 1 witnesses drop exactly one column: it is either zero or a
    # duplicate of another column
    for r in (1, 2, 3):
        for lat in enumerate_corank_oracle(3, 1, r):
            cols = [tuple(row[j] for row in lat.basis) for j in range(3)]
            zero = (0,) * lat.rank
            assert any(c == zero for c in cols) or len(set(cols)) < 3


def test_corank_arg_validation():
    with pytest.raises(ValueError):
        enumerate_corank_oracle(2, 3, 1)
    with pytest.raises(ValueError):
        enumerate_corank_oracle(2, -1, 1)
    with pytest.raises(ValueError):
        enumerate_corank_oracle(2, 1, 0)
    with pytest.raises(ValueError):
        enumerate_corank_oracle(2, 1, 2, 0)


# ------------------------------------------------------------------ budget

def test_budget_exhaustion_raises():
    with pytest.raises(SearchBudgetExceeded) as exc:
        enumerate_corank_oracle(3, 0, 8, budget=50)
    assert "budget" in str(exc.value)
    with pytest.raises(SearchBudgetExceeded):
        count_full_rank(3, 8, budget=50)


def test_budget_large_enough_changes_nothing():
    small = enumerate_corank_oracle(2, 1, 3, budget=10_000)
    assert small == enumerate_corank_oracle(2, 1, 3)


# ----------------------------------------------------- formula and records

def test_count_corank_formula_values():
    assert count_corank_formula(2, 2, 2) == 75
    assert count_corank_formula(3, 1, 2) == stirling2(5, 4) * 6
    assert count_corank_formula(1, 1, 5) == stirling2(3, 2) * 1
    # k = 0 degenerates to the plain full-rank count
    assert count_corank_formula(2, 0, 4) == 4
    with pytest.raises(ValueError):
        count_corank_formula(-1, 1, 2)


def test_count_record_validation():
    CountRecord(2, 1, 3, 18, "oracle", "0.1.0")
    with pytest.raises(ValueError):
        CountRecord(2, 1, 3, 18, "guess", "0.1.0")
    with pytest.raises(ValueError):
        CountRecord(2, 1, 0, 18, "oracle", "0.1.0")
    with pytest.raises(ValueError):
        CountRecord(2, 1, 3, -1, "oracle", "0.1.0")
    with pytest.raises(ValueError):
        CountRecord(2, 0, 3, 3, "formula", "0.1.0")


def test_verification_report_dict():
    rep = VerificationReport(2, 1, 2, 18, 18, 6, 3, 18, "pass")
    d = rep.as_dict()
    assert d["oracle_count"] == 18 and d["status"] == "pass"
    assert list(d) == ["n", "k", "r", "oracle_count", "formula_count",
                      "stirling_factor", "full_rank_count",
                      "witnesses_checked", "status"]


# ----------------------------------------------------------- factorization

def test_decompose_round_trip_small():
    for n in (1, 2):
        for k in (0, 1, 2):
            for r in (1, 2, 3, 4):
                cores = enumerate_full_rank_multiplicative(n, r)
                for g in enumerate_ordered_maps(n, n + k):
                    for core in cores:
                        lat = apply_map(g, core)
                        assert decompose(lat) == (g, core)


def test_decompose_full_rank_is_identity_map():
    lat = lattice_from_rows(2, [(1, 1), (0, 2)])
    g, core = decompose(lat)
    assert g.assignment == (1, 2)
    assert core == lat


def test_decompose_zero_lattice():
    g, core = decompose(Lattice(3, ()))
    assert g.assignment == (0, 0, 0)
    assert core == Lattice(0, ())


def test_decompose_rejects_non_multiplicative():
    with pytest.raises(ValueError):
        decompose(lattice_from_rows(2, [(1, 2)]))


def test_reconstruction_matches_census():
    for n, k, r in ((1, 1, 4), (1, 2, 3), (2, 1, 2), (2, 2, 2)):
        rebuilt = reconstruct_from_factorization(n, k, r)
        census = enumerate_corank_oracle(n + k, k, r)
        assert len(rebuilt) == len(set(rebuilt)), "duplicate image"
        assert set(rebuilt) == set(census), (n, k, r)


def test_verify_passes_on_small_cells():
    for n, k, r in ((1, 1, 5), (1, 2, 2), (2, 1, 3), (2, 2, 2)):
        rep = verify_corank_factorization(n, k, r)
        assert rep.status == "pass", (n, k, r)
        assert rep.oracle_count == rep.formula_count
        assert rep.formula_count == rep.stirling_factor * rep.full_rank_count
        assert rep.witnesses_checked == rep.oracle_count


def test_verify_with_wider_bound():
    rep = verify_corank_factorization(2, 1, 2, bound_multiplier=2)
    assert rep.status == "pass"
    assert rep.oracle_count == 18


def test_find_counterexample_clean_cells():
    assert find_counterexample(1, 1, 3) is None
    assert find_counterexample(2, 1, 2) is None


# ----------------------------------------------------- low-level internals

def test_det_matches_reference():
    rng = random.Random(931)
    for _ in range(300):
        n = rng.randint(1, 4)
        m = [[rng.randint(-6, 6) for _ in range(n)] for _ in range(n)]
        assert _det(m) == bareiss_det(m)


def test_row_span_torsion_matches_reference():
    rng = random.Random(932)
    checked = 0
    while checked < 200:
        nrows = rng.randint(1, 3)
        ncols = rng.randint(nrows, 4)
        m = [[rng.randint(-5, 5) for _ in range(ncols)] for _ in range(nrows)]
        if rational_rank(m) < nrows:
            continue
        assert _row_span_torsion([list(r) for r in m], ncols) == torsion_ref(m)
        checked += 1


def test_canonical_key_matches_package_basis():
    rng = random.Random(933)
    for _ in range(150):
        rows = [[rng.randint(-5, 5) for _ in range(3)]
                for _ in range(rng.randint(1, 3))]
        lat = lattice_from_rows(3, rows)
        assert lat.basis == ref_canonical_key(rows, 3)
