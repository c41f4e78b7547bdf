from itertools import permutations, product

import pytest

from gisemi.core import classify, is_isomorphic, validate
from gisemi.errors import OrderBoundExceeded
from gisemi.workbench.enumerate import (
    band_tables,
    canonical_form,
    enumerate_semigroups,
    naive_classes,
    relabel,
    semigroup_tables,
    squaring_representatives,
)

# isomorphism classes of semigroups of order 1..4, and of bands
SEMIGROUPS = [1, 5, 24, 188]
BANDS = [1, 3, 10, 46]


def test_counts():
    assert [len(semigroup_tables(n)) for n in range(1, 5)] == SEMIGROUPS
    assert [len(band_tables(n)) for n in range(1, 5)] == BANDS


def test_functional_graphs():
    # isomorphism classes of maps from an n-set to itself
    assert [len(squaring_representatives(n)) for n in range(1, 5)] == [1, 3, 7, 19]


@pytest.mark.parametrize("n", [1, 2, 3])
def test_against_naive(n):
    naive = naive_classes(n)
    mine = {canonical_form(m.semigroup) for m in enumerate_semigroups(n)}
    assert mine == naive


def test_bands_by_idempotent_tables():
    n = 3
    found = set()
    for flat in product(range(n), repeat=n * n):
        T = [flat[i * n:(i + 1) * n] for i in range(n)]
        if any(T[a][a] != a for a in range(n)):
            continue
        if all(T[T[a][b]][c] == T[a][T[b][c]] for a in range(n) for b in range(n) for c in range(n)):
            found.add(min(relabel(T, p) for p in permutations(range(n))))
    assert len(found) == len(enumerate_semigroups(3, "band"))


def test_members_pairwise_non_isomorphic():
    members = list(enumerate_semigroups(3))
    for i, a in enumerate(members):
        for b in members[i + 1:]:
            assert not is_isomorphic(a.semigroup, b.semigroup)


def test_filters():
    assert len(enumerate_semigroups(2, "right_normal_band")) == 2
    assert len(enumerate_semigroups(2, "inverse")) == 2
    gi = enumerate_semigroups(3, "generalized_inverse")
    assert all(classify(m.semigroup).generalized_inverse for m in gi)


def test_bounds(monkeypatch):
    with pytest.raises(OrderBoundExceeded):
        enumerate_semigroups(6)
    with pytest.raises(OrderBoundExceeded):
        enumerate_semigroups(0)
    monkeypatch.setenv("GIS_MAX_ORDER", "2")
    with pytest.raises(OrderBoundExceeded):
        enumerate_semigroups(3)
