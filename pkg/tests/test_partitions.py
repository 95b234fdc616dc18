import pytest
from hypothesis import given, settings, strategies as st

import oracles
from dlcohomology.errors import InvalidArgument, InvalidHook
from dlcohomology.partitions import (
    BetaSet,
    Partition,
    add_hook,
    addable_hooks,
    all_m_cores_by_any_order,
    beta_set,
    dominates,
    gamma_d,
    grouped_mu_star,
    hook,
    hook_multiset,
    is_m_core,
    largest_hook,
    leg_count,
    m_core,
    partition,
    partition_of,
    partitions_of,
    pi_d,
    remove_hook,
    removable_corners,
)

X54 = BetaSet.of([5, 3, 2, 1, 0])


def test_partition_basics():
    lam = partition(3, 2)
    assert lam.n == 5 and str(lam) == "3+2"
    assert str(Partition(())) == "0"
    assert lam.conjugate() == partition(2, 2, 1)
    assert Partition.parse("2^2+1") == partition(2, 2, 1)
    assert Partition.parse("3,1") == Partition.parse("3 1") == partition(3, 1)
    assert hook(5, 2) == partition(3, 1, 1)


@pytest.mark.parametrize("bad", [(1, 2), (-1,), (2, -1)])
def test_partition_rejects(bad):
    with pytest.raises(InvalidArgument):
        Partition(bad)


@pytest.mark.parametrize("n", range(0, 11))
def test_partitions_of_count(n):
    assert [p.parts for p in partitions_of(n)] == oracles.partitions(n)


def test_beta_set_example():
    assert beta_set(partition(1), 5) == X54


def test_beta_set_too_small():
    with pytest.raises(InvalidArgument):
        beta_set(partition(2, 1), 1)


def test_partition_of_derived():
    assert partition_of(BetaSet.of([7, 5, 2, 1, 0])) == partition(3, 2)


def test_addable_hooks_examples():
    assert [h.x for h in addable_hooks(X54, 4)] == [5, 3, 2, 0]
    n, d = 9, 4
    X = BetaSet.of([n] + list(range(d)))
    assert [h.x for h in addable_hooks(X, d)] == list(X.elements)


@pytest.mark.parametrize("x, lam", [(2, (2, 2, 1)), (5, (5,)), (3, (3, 2)), (0, (1, 1, 1, 1, 1))])
def test_add_hook_examples(x, lam):
    assert add_hook(X54, x, 4) == Partition(lam)


def test_add_hook_occupied():
    with pytest.raises(InvalidHook):
        add_hook(X54, 1, 4)


@pytest.mark.parametrize("x, leg", [(0, 3), (2, 2), (3, 1), (5, 0)])
def test_leg_count(x, leg):
    assert leg_count(X54, x, 4) == leg


@pytest.mark.parametrize("x, deg", [(5, 10), (0, 5), (2, 6), (3, 7)])
def test_pi_d(x, deg):
    assert pi_d(X54, x, 5, 4) == deg


@pytest.mark.parametrize("x, e", [(5, 5), (0, 0), (2, 2), (3, 3)])
def test_gamma_d(x, e):
    assert gamma_d(X54, x, 5) == e


def test_largest_hook_examples():
    assert largest_hook(partition(2, 2, 1)) == 4
    assert largest_hook(partition(1, 1, 1, 1, 1)) == 5


def test_core_examples():
    assert is_m_core(partition(3, 2), 5)
    # (n-d, x+1, 1^(d-x-1)) with x = n-m is not an m-core
    n, d, m = 8, 5, 6
    x = n - m
    assert not is_m_core(Partition((n - d, x + 1) + (1,) * (d - x - 1)), m)
    # (x, n-d+1, 1^(d-x-1)) with m > d; x = n-d is not an addable site, so start above it
    n, d, m = 8, 6, 7
    X = beta_set(partition(n - d), d + 1)
    for x in range(n - d + 1, d - 1):
        lam = Partition((x, n - d + 1) + (1,) * (d - x - 1))
        assert add_hook(X, x, d) == lam
        assert largest_hook(lam) == d and is_m_core(lam, m)


def test_removable_corners_example():
    assert set(removable_corners(partition(2, 2, 1))) == {partition(2, 1, 1), partition(2, 2)}


def test_grouped_mu_star_boundary():
    # the grouped closed form says nothing at x = d - 1 for (5, 4); the abacus gives (3, 2)
    assert grouped_mu_star(5, 4, 3) is None
    assert grouped_mu_star(5, 4, 5) == partition(5)


def test_cores_match_frozen(frozen):
    for m, cores in frozen["cores"].items():
        got = [lam.parts for lam in partitions_of(8) if is_m_core(lam, int(m))]
        assert got == [tuple(c) for c in cores]


partitions_st = st.integers(0, 12).flatmap(lambda n: st.sampled_from(partitions_of(n)))


@given(partitions_st, st.integers(1, 6), st.integers(0, 6))
def test_shift_invariance_of_hook_data(mu, d, pad):
    def data(s):
        X = beta_set(mu, s)
        n = mu.n + d
        return {(add_hook(X, h.x, d), pi_d(X, h.x, n, d), gamma_d(X, h.x, n), leg_count(X, h.x, d))
                for h in addable_hooks(X, d)}

    assert data(len(mu) + d) == data(len(mu) + d + pad)


@given(partitions_st, st.integers(1, 6))
def test_add_hooks_match_rim_hook_oracle(mu, d):
    X = beta_set(mu, len(mu) + d)
    got = {(add_hook(X, h.x, d).parts, leg_count(X, h.x, d)) for h in addable_hooks(X, d)}
    want = {(lam, leg) for lam, leg, _ in oracles.rim_hooks_added(mu.parts, d)}
    assert got == want


@given(partitions_st, st.integers(1, 6))
def test_remove_inverts_add(mu, d):
    X = beta_set(mu, len(mu) + d)
    for h in addable_hooks(X, d):
        lam = add_hook(X, h.x, d)
        Y = beta_set(lam, len(X))
        assert remove_hook(Y, h.x + d, d) == mu


@given(partitions_st)
def test_hook_multiset_matches_oracle(lam):
    assert sorted(hook_multiset(lam).elements()) == oracles.hook_length_multiset(lam.parts)


@settings(max_examples=50)
@given(partitions_st, st.integers(2, 5))
def test_core_is_order_independent(lam, m):
    cores = all_m_cores_by_any_order(lam, m)
    assert cores == {m_core(lam, m)}
    assert is_m_core(m_core(lam, m), m)


@given(partitions_st)
def test_dominance_conjugation(lam):
    for mu in partitions_of(lam.n):
        assert dominates(lam, mu) == dominates(mu.conjugate(), lam.conjugate())
