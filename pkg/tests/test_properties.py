"""Randomised checks over the enumerated corpus and random relabellings."""
from hypothesis import given, settings, strategies as st

from gisemi.congruence import gamma, quotient
from gisemi.core import FiniteSemigroup, classify, find_isomorphism, green
from gisemi.presheaf import band_roundtrip
from gisemi.workbench.enumerate import enumerate_semigroups, relabel
from gisemi.workbench.io import format_sgp, parse_sgp

CORPUS = [m.semigroup for n in range(1, 5) for m in enumerate_semigroups(n)]


def _relabelled(S, perm):
    flat = relabel(S.table, perm)
    n = S.order
    return FiniteSemigroup(tuple(flat[i * n:(i + 1) * n] for i in range(n)))


members = st.sampled_from(CORPUS)


@st.composite
def member_and_perm(draw):
    S = draw(members)
    return S, draw(st.permutations(range(S.order)))


@settings(max_examples=150, deadline=None)
@given(member_and_perm())
def test_classification_is_invariant(case):
    S, perm = case
    S2 = _relabelled(S, perm)
    assert classify(S) == classify(S2)
    assert find_isomorphism(S, S2) is not None


@settings(max_examples=150, deadline=None)
@given(member_and_perm())
def test_green_transported(case):
    S, perm = case
    g, h = green(S), green(_relabelled(S, perm))
    for a in S.elements:
        for b in S.elements:
            assert g.D.same(a, b) == h.D.same(perm[a], perm[b])
            assert g.L.same(a, b) == h.L.same(perm[a], perm[b])


@settings(max_examples=100, deadline=None)
@given(members)
def test_sgp_roundtrip(S):
    assert parse_sgp(format_sgp(S)).table == S.table


@settings(max_examples=100, deadline=None)
@given(members)
def test_gamma_quotient_inverse(S):
    c = classify(S)
    if c.orthodox:
        Q, proj = quotient(S, gamma(S))
        assert classify(Q).inverse
        assert len(set(proj)) == Q.order


@settings(max_examples=100, deadline=None)
@given(member_and_perm())
def test_right_normal_band_roundtrip_any_labelling(case):
    S, perm = case
    if classify(S).is_band and classify(S).right_normal:
        assert band_roundtrip(_relabelled(S, perm)).ok
