import pytest
from hypothesis import given, strategies as st

import oracles
from dlcohomology.characters import (
    GradedChar,
    VirtualChar,
    dl_induce,
    hc_restrict,
    nabla,
    phi_d_blocks,
    phi_d_blocks_by_core,
    principal_block_labels,
)
from dlcohomology.errors import UnsupportedRegime
from dlcohomology.partitions import Partition, hook, partition, partitions_of


def test_virtual_char_arithmetic():
    a = nabla((2, 1)) + nabla((3,))
    b = a - nabla((3,))
    assert b == nabla((2, 1))
    assert (a - a) == VirtualChar.zero(3)
    assert a.scale(2)[partition(2, 1)] == 2
    assert repr(nabla((2, 1))) == "N(2+1)"
    assert VirtualChar.from_json(3, a.to_json()) == a


def test_graded_char_shift():
    g = GradedChar(3).with_entry(2, 1, nabla((3,)))
    h = g.shift(2, 1)
    assert list(h.keys()) == [(4, 2)]


def test_hc_restrict_example():
    assert hc_restrict(nabla((2, 2, 1))) == nabla((2, 1, 1)) + nabla((2, 2))


def test_hc_restrict_several_summands():
    n, d = 5, 4
    lam = Partition((n - d + 1, n - d) + (1,) * (2 * d - n - 1))
    assert len(hc_restrict(nabla(lam)).labels()) >= 2


def test_dl_induce_example():
    want = nabla((5,)) - nabla((3, 2)) + nabla((2, 2, 1)) - nabla((1,) * 5)
    assert dl_induce(partition(1), 4) == want


@pytest.mark.parametrize("n, d", [(5, 4), (6, 3), (7, 2), (8, 3)])
def test_dl_induce_trivial_summand_count(n, d):
    # X' = X if n - d >= d, otherwise X minus {n - d}
    size = d + 1 if n - d >= d else d
    assert len(dl_induce(partition(n - d), d).labels()) == size


def test_block_of_core_one():
    blocks = phi_d_blocks_by_core(5, 4)
    assert blocks[partition(1)] == {partition(5), partition(3, 2), partition(2, 2, 1), partition(1, 1, 1, 1, 1)}


@pytest.mark.parametrize("n, d", [(6, 2), (7, 3), (8, 4)])
def test_blocks_partition_everything(n, d):
    blocks = phi_d_blocks(n, d)
    union = set().union(*blocks)
    assert union == set(partitions_of(n))
    assert sum(len(b) for b in blocks) == len(union)


@pytest.mark.parametrize("n, m, want", [
    (5, 5, {hook(5, k) for k in range(5)}),
    (4, 4, {hook(4, k) for k in range(4)}),
])
def test_principal_block_examples(n, m, want):
    assert principal_block_labels(n, m) == want


@pytest.mark.parametrize("n, m", [(n, m) for m in range(2, 8) for n in range(m, 2 * m)])
def test_principal_block_size(n, m):
    assert len(principal_block_labels(n, m)) == m


def test_principal_block_outside_regime():
    with pytest.raises(UnsupportedRegime):
        principal_block_labels(10, 4)


@given(st.integers(1, 9).flatmap(lambda n: st.sampled_from(partitions_of(n))), st.integers(1, 5))
def test_dl_induce_matches_rim_hooks(mu, d):
    got = dl_induce(mu, d)
    want = VirtualChar.zero(mu.n + d)
    for lam, leg, _ in oracles.rim_hooks_added(mu.parts, d):
        want = want + nabla(lam).scale((-1) ** leg)
    assert got == want
