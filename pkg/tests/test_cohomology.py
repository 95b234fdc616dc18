import json

import pytest
from hypothesis import given, settings, strategies as st

from dlcohomology.characters import dl_induce, nabla
from dlcohomology.cohomology import (
    GUARANTEED,
    NOT_GUARANTEED,
    REMARK_EXCEPTION,
    cohomology_mod_ell,
    cohomology_trivial_table,
    cohomology_with_coeffs,
    eigen_cut,
    expected_zero_gap,
    les_euler_check,
    mod_ell_label_check,
    structural_check,
    table_invariants,
    to_C_normalization,
    to_X_normalization,
    torsion_free_gate,
    zero_gap,
)
from dlcohomology.errors import InvalidArgument, PreconditionViolation
from dlcohomology.partitions import Partition, hook, is_m_core, partition, partitions_of

CELLS = [(n, d) for n in range(1, 15) for d in range(1, n + 1)]


def as_rows(t):
    return [[deg, e, list(next(iter(v.labels())).parts)] for (deg, e), v in t.table.items()]


def test_golden_5_4():
    t = cohomology_with_coeffs(5, 4)
    assert as_rows(t) == [[5, 0, [1, 1, 1, 1, 1]], [6, 2, [2, 2, 1]], [7, 3, [3, 2]], [10, 5, [5]]]
    assert all(v == nabla(next(iter(v.labels()))) for _, v in t.table.items())


def test_matches_frozen_oracle(frozen):
    for row in frozen["tables"]:
        t = cohomology_with_coeffs(row["n"], row["d"], Partition(tuple(row["mu"])))
        want = sorted(tuple(e[:2]) + (tuple(e[2]),) for e in row["entries"])
        got = sorted((deg, e, next(iter(v.labels())).parts) for (deg, e), v in t.table.items())
        assert got == want, row


@pytest.mark.parametrize("n, d", CELLS)
def test_first_entry_is_bottom_hook(n, d):
    t = cohomology_with_coeffs(n, d)
    (deg, e), v = t.table.items()[0]
    if d < n:
        assert (deg, e) == (2 * n - 1 - d, n - d - 1)
        assert v == nabla(Partition((n - d,) + (1,) * d))
    else:
        # Coxeter case: empty coefficient partition, Steinberg at exponent 0
        assert (deg, e) == (n - 1, 0)
        assert v == nabla((1,) * n)


@pytest.mark.parametrize("n, d", CELLS)
def test_trivial_table_cross_checks(n, d):
    t = cohomology_trivial_table(n, d)
    assert zero_gap(t.table) == expected_zero_gap(n, d)
    assert bool(t.notes) == (n >= 2 * d)


@pytest.mark.parametrize("n, d", [(n, d) for n, d in CELLS if n < 2 * d])
def test_zero_gap_printed_count_below_2d(n, d):
    assert zero_gap(cohomology_with_coeffs(n, d).table) == 2 * n - 2 * d


def test_zero_gap_5_4():
    assert cohomology_with_coeffs(5, 4).degrees() == [5, 6, 7, 10]


@pytest.mark.parametrize("n", range(1, 12))
def test_coxeter_has_no_gap(n):
    assert zero_gap(cohomology_with_coeffs(n, n).table) == 0


@pytest.mark.parametrize("n, d", CELLS)
def test_structural_check_all_but_gap(n, d):
    rep = structural_check(n, d)
    assert [f for f in rep.failures if not f.startswith("zero gap")] == []


@pytest.mark.parametrize("n, d", CELLS)
def test_table_invariants(n, d):
    rep = table_invariants(n, d)
    assert rep.passed, rep.failures


def test_invariants_examples():
    assert table_invariants(5, 4).details["top_degree"] == 10
    t = cohomology_with_coeffs(6, 6)
    assert t.table[(5, 0)] == nabla((1,) * 6)
    assert table_invariants(7, 1).details["top_degree"] == 24


def test_bad_coefficient_size():
    with pytest.raises(InvalidArgument):
        cohomology_with_coeffs(5, 4, partition(2))


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 8).flatmap(lambda n: st.tuples(st.just(n), st.integers(1, n))).flatmap(
    lambda nd: st.tuples(st.just(nd), st.sampled_from(partitions_of(nd[0] - nd[1])))), st.integers(0, 5))
def test_beta_set_size_independence(ndmu, extra):
    (n, d), mu = ndmu
    base = cohomology_with_coeffs(n, d, mu)
    assert cohomology_with_coeffs(n, d, mu, s=len(mu) + d + extra).table == base.table


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 8).flatmap(lambda n: st.tuples(st.just(n), st.integers(1, n))).flatmap(
    lambda nd: st.tuples(st.just(nd), st.sampled_from(partitions_of(nd[0] - nd[1])))))
def test_labels_are_the_dl_induction(ndmu):
    (n, d), mu = ndmu
    t = cohomology_with_coeffs(n, d, mu)
    labels = {lam for _, v in t.table.items() for lam in v.labels()}
    assert labels == set(dl_induce(mu, d).labels())


def test_c_normalization_5_4():
    c = to_C_normalization(cohomology_with_coeffs(5, 4))
    assert list(c.table.keys()) == [(0, 0), (1, 2), (2, 3), (5, 5)]
    assert to_X_normalization(c).table == cohomology_with_coeffs(5, 4).table


@pytest.mark.parametrize("n, d", CELLS)
def test_c_normalization_top(n, d):
    c = to_C_normalization(cohomology_with_coeffs(n, d))
    assert list(c.table.keys())[-1] == (2 * n - d - 1, n)


def test_eigen_cut_examples():
    t = cohomology_with_coeffs(5, 4)
    assert eigen_cut(t, 5, 0).degrees() == [5, 10]
    assert eigen_cut(t, 5, 2).degrees() == [6]
    assert eigen_cut(t, 5, 4).degrees() == []


@pytest.mark.parametrize("triple, tag", [
    ((5, 4, 5), REMARK_EXCEPTION),
    ((4, 3, 4), NOT_GUARANTEED),
    ((20, 5, 7), NOT_GUARANTEED),
    ((8, 4, 7), GUARANTEED),
    ((12, 8, 9), GUARANTEED),
])
def test_gate(triple, tag):
    assert torsion_free_gate(*triple) == tag


def test_mod_ell_refuses_without_override():
    with pytest.raises(PreconditionViolation):
        cohomology_mod_ell(4, 3, 4)


def test_mod_ell_5_4_5():
    t = cohomology_mod_ell(5, 4, 5)
    j = t.to_json()
    assert j["ring_tag"] == "modular(5)" and j["normalization"] == "C"
    assert [(r["degree"], r["eigen_exp"]) for r in j["entries"]] == [(0, 0), (1, 2), (2, 3), (5, 5)]
    assert j["entries"][0]["labels"] == {"1+1+1+1+1": 1}
    assert "Omega" in j["entries"][0]["module"]
    json.dumps(j)


def test_mod_ell_4_3_4_override():
    t = cohomology_mod_ell(4, 3, 4, override=True)
    cut = eigen_cut(t, 4, 0)
    assert cut.table[(0, 0)] == nabla((1, 1, 1, 1))
    assert any("override" in n for n in t.notes)


@pytest.mark.parametrize("n, d, m", [(5, 4, 6), (6, 3, 7), (7, 2, 9)])
def test_mod_ell_large_m_is_char_zero(n, d, m):
    t = cohomology_mod_ell(n, d, m, override=True)
    assert t.table == to_C_normalization(cohomology_with_coeffs(n, d)).table


GATED = [(n, d, m) for n in range(2, 15) for d in range(1, n + 1) for m in range(2, 16)
         if torsion_free_gate(n, d, m) != NOT_GUARANTEED]


@pytest.mark.parametrize("n, d, m", [c for c in GATED if c[2] <= c[0]])
def test_mod_ell_two_entry_cut(n, d, m):
    t = cohomology_mod_ell(n, d, m)
    assert list(eigen_cut(t, m, n % m).table.keys()) == [(n - m, n - m), (2 * n - d - 1, n)]


@pytest.mark.parametrize("n, d, m", [c for c in GATED if c[2] <= c[0] < 2 * c[2]])
def test_mod_ell_labels(n, d, m):
    rep = mod_ell_label_check(n, d, m)
    assert rep.passed, rep.failures


def test_off_principal_labels_are_cores_8_4_7():
    t = cohomology_mod_ell(8, 4, 7)
    for (deg, e), v in t.table.items():
        if e % 7 != 8 % 7:
            assert all(is_m_core(lam, 7) for lam in v.labels())


def test_les_examples():
    assert les_euler_check(5, 4, partition(1)).passed
    assert les_euler_check(2, 1, partition(1)).passed
    assert les_euler_check(4, 4).passed


def test_les_d1_is_ungraded():
    rep = les_euler_check(5, 1, hook(4, 1))
    assert rep.passed and rep.details["mode"] == "ungraded"


def test_les_detects_corruption(monkeypatch):
    import dlcohomology.cohomology as coh

    real = coh.les_sides

    def broken(n, d, mu):
        lhs, rhs = real(n, d, mu)
        return lhs, rhs.shift(1, 0)

    monkeypatch.setattr(coh, "les_sides", broken)
    rep = coh.les_euler_check(5, 4, partition(1))
    assert not rep.passed and rep.failures


@pytest.mark.parametrize("n", range(2, 11))
def test_les_sweep(n):
    for d in range(1, n + 1):
        if n - d > 6:
            continue
        for mu in partitions_of(n - d):
            rep = les_euler_check(n, d, mu)
            assert rep.passed, (n, d, mu, rep.failures)
