"""Orbit and label-set combinatorics, checked against brute force.

The oracles here count orbits and stabilizers by direct group sweeps,
independently of the closed-form label sets and product formulas under
test.
"""

import itertools
from math import comb, factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hilbtaut.combinat import (
    MultiIndexMap,
    act,
    all_permutations,
    canonical_section,
    compare_refined,
    composition_stabilizer,
    enumerate_compositions,
    enumerate_multiindex_maps,
    enumerate_partitions,
    in_Ip,
    m_mu,
    multiindex_invariants,
    nu_of_composition,
    orbits,
    phi,
    psi,
    quotient_A,
    quotient_A0,
    quotient_B,
    sign_epsilon,
    stabilizer_order,
)


# --- oracles -----------------------------------------------------------


def stab_order_direct(a, group):
    """Count stabilizer elements by sweeping the whole group."""
    count = 0
    taus = all_permutations(a.k)
    sigmas = all_permutations(a.n) if group == "GxH" else [None]
    for sigma in sigmas:
        for tau in taus:
            if act(a, sigma, tau) == a:
                count += 1
    return count


def mmap(n, *sets):
    return MultiIndexMap.from_sets(n, sets)


# --- compositions and partitions --------------------------------------


def test_composition_counts_and_order():
    assert enumerate_compositions(2, 2) == [(2, 0), (1, 1), (0, 2)]
    assert len(enumerate_compositions(3, 3)) == 10 == comb(5, 2)
    assert len(enumerate_compositions(4, 4)) == 35 == comb(7, 3)
    for c in enumerate_compositions(3, 4):
        assert sum(c) == 4 and len(c) == 3


def test_composition_order_is_rlex():
    cs = enumerate_compositions(3, 3)
    assert cs == sorted(cs, reverse=True)


def test_partition_enumeration():
    assert enumerate_partitions(4, 4) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    assert enumerate_partitions(3, 2) == [(3,), (2, 1)]
    assert enumerate_partitions(0, 5) == [()]


def test_refined_order_chain_weight_six():
    chain = [
        (6,), (5, 1), (4, 2), (3, 3), (4, 1, 1), (3, 2, 1), (2, 2, 2),
        (3, 1, 1, 1), (2, 2, 1, 1), (2, 1, 1, 1, 1), (1, 1, 1, 1, 1, 1),
    ]
    assert enumerate_partitions(6, 6) == chain
    for a, b in itertools.combinations(chain, 2):
        assert compare_refined(a, b) == -1
        assert compare_refined(b, a) == 1
    assert compare_refined((3, 3), (4, 1, 1)) == -1
    assert compare_refined((2, 2), (2, 2)) == 0
    with pytest.raises(ValueError):
        compare_refined((2,), (3,))


def test_refined_agrees_with_rlex_up_to_weight_five():
    for w in range(1, 6):
        parts = enumerate_partitions(w, w)
        assert parts == sorted(parts, reverse=True)


def test_m_mu():
    assert m_mu((4,)) == 0
    assert m_mu((2, 2)) == 2
    assert m_mu((2, 1, 1)) == 1
    with pytest.raises(ValueError):
        m_mu(())


# --- multi-index invariants -------------------------------------------


def test_invariants_worked_examples():
    inv = multiindex_invariants(mmap(2, {1, 2}, {1}, {1}))
    assert inv.A == {1, 2} and inv.S0 == {1} and inv.J == {1}
    assert inv.lam == (2, 0) and inv.l == 1 and inv.t == 1

    inv = multiindex_invariants(mmap(2, {1}, {1}, {2}))
    assert inv.A == frozenset() and inv.J == {1, 2}
    assert inv.lam == (2, 1) and inv.l == 0 and inv.t == 0

    inv = multiindex_invariants(mmap(3, {1, 2}, {1, 2}))
    assert inv.A == {1, 2} and inv.J == frozenset() and inv.S0 == {1, 2}
    assert inv.l == 2 and inv.t == 0


def test_Ip_membership():
    assert in_Ip(mmap(2, {1, 2}, {1}, {1}), 1)
    assert not in_Ip(mmap(2, {1, 2}, {1}, {1}), 0)
    # two different doubletons push |A| to 3, so k(a) = 4 excludes the map
    assert not in_Ip(mmap(3, {1, 2}, {1, 3}), 2)


# --- label sets vs brute force ----------------------------------------


def test_B_at_level_zero_is_compositions():
    for n, k in [(2, 3), (3, 2), (4, 4)]:
        labels = quotient_B(k, 0, n)
        assert [lam for lam, _ in labels] == enumerate_compositions(n, k)
        assert all(A == frozenset() for _, A in labels)


def test_B_spot_counts():
    # the H-orbits of I^1 at (k,n)=(3,2) are the singleton-value multisets
    # {1,1}, {1,2}, {2,2}: three of them
    assert len(quotient_B(3, 1, 2)) == 3 == len(orbits(2, 3, 1, "H"))
    assert len(quotient_B(4, 1, 3)) == len(enumerate_compositions(3, 3)) * 3 == 30
    assert len(quotient_B(4, 1, 3)) == len(orbits(3, 4, 1, "H"))


def test_A0_listed_sets():
    assert quotient_A0(3, 1, 4) == [((2,), ()), ((1,), (1,))]
    assert quotient_A0(4, 1, 5) == [
        ((3,), ()),
        ((2, 1), ()),
        ((2,), (1,)),
        ((1,), (2,)),
        ((1,), (1, 1)),
    ]
    assert quotient_A0(4, 3, 4) == [((1,), ())]


def test_A0_small_n_drops_long_mu():
    # at n=3 there is a single point outside A, so mu=(1,1) cannot occur
    assert ((1,), (1, 1)) not in quotient_A0(4, 1, 3)
    assert len(quotient_A0(4, 1, 3)) == 4


@pytest.mark.parametrize("n,k", [(2, 3), (2, 4), (3, 3), (3, 4)])
def test_quotients_match_orbit_counts(n, k):
    for l in range(0, k + 1):
        h_orbits = orbits(n, k, l, "H")
        gh_orbits = orbits(n, k, l, "GxH")
        assert len(quotient_B(k, l, n)) == len(h_orbits)
        assert len(quotient_A(k, l, n)) == len(gh_orbits)
        order = factorial(n) * factorial(k)
        for orb in gh_orbits:
            rep = orb[0]
            assert stabilizer_order(rep, "GxH") * len(orb) == order
        for orb in h_orbits:
            rep = orb[0]
            assert stabilizer_order(rep, "H") * len(orb) == factorial(k)


def test_psi_label_classifies_H_orbits():
    for orb in orbits(3, 4, 2, "H"):
        labels = {psi(a) for a in orb}
        assert len(labels) == 1
    all_labels = {psi(orb[0]) for orb in orbits(3, 4, 2, "H")}
    assert all_labels == set(quotient_B(4, 2, 3))


def test_phi_label_classifies_GxH_orbits():
    for orb in orbits(3, 4, 1, "GxH"):
        assert len({phi(a) for a in orb}) == 1
    all_labels = {phi(orb[0]) for orb in orbits(3, 4, 1, "GxH")}
    assert all_labels == set(quotient_A(4, 1, 3))


# --- stabilizers -------------------------------------------------------


def test_stabilizer_examples():
    a = mmap(2, {1, 2}, {1}, {1})
    assert stabilizer_order(a, "H") == 2 == stab_order_direct(a, "H")
    b = mmap(3, {1}, {1}, {2})
    assert stabilizer_order(b, "H") == 2 == stab_order_direct(b, "H")
    c = mmap(3, {1}, {2}, {3})
    assert stabilizer_order(c, "H") == 1
    assert stabilizer_order(a, "GxH") == stab_order_direct(a, "GxH")
    assert stabilizer_order(b, "GxH") == stab_order_direct(b, "GxH")
    with pytest.raises(ValueError):
        stabilizer_order(mmap(3, {1, 2}, {1, 3}), "H")


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_orbit_stabilizer_identity(data):
    n = data.draw(st.integers(2, 3), label="n")
    k = data.draw(st.integers(2, 4), label="k")
    pool = enumerate_multiindex_maps(n, k)
    pool = [a for a in pool if multiindex_invariants(a).k <= 2]
    a = data.draw(st.sampled_from(pool), label="a")
    orbit = set()
    frontier = [a]
    orbit.add(a)
    while frontier:
        nxt = []
        for x in frontier:
            for sigma in all_permutations(n):
                for tau in all_permutations(k):
                    y = act(x, sigma, tau)
                    if y not in orbit:
                        orbit.add(y)
                        nxt.append(y)
        frontier = nxt
    assert len(orbit) * stabilizer_order(a, "GxH") == factorial(n) * factorial(k)


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_psi_equivariance(data):
    n, k = 3, 3
    pool = [a for a in enumerate_multiindex_maps(n, k)
            if multiindex_invariants(a).k <= 2]
    a = data.draw(st.sampled_from(pool))
    sigma = data.draw(st.sampled_from(all_permutations(n)))
    tau = data.draw(st.sampled_from(all_permutations(k)))
    lam, A = psi(a)
    lam2, A2 = psi(act(a, sigma, tau))
    # H-invariant, G-equivariant: sigma.(lam, A) = (lam o sigma^-1, sigma(A))
    assert A2 == frozenset(sigma[j - 1] for j in A)
    assert lam2 == tuple(lam[sigma.index(i + 1)] for i in range(n))


# --- sections, signs, composition stabilizers -------------------------


def test_canonical_section_roundtrip():
    for k, l, n in [(3, 1, 2), (4, 2, 3), (5, 1, 4), (4, 0, 3)]:
        for lam, A in quotient_B(k, l, n):
            a = canonical_section(lam, A, k)
            assert in_Ip(a, l)
            assert psi(a) == (lam, A)


def test_sign_epsilon():
    assert sign_epsilon(1, {1, 4, 6}) == 1
    assert sign_epsilon(5, {2, 5}) == -1
    assert sign_epsilon(3, {1, 3, 5}) == -1
    with pytest.raises(ValueError):
        sign_epsilon(2, {1, 3})


def test_composition_stabilizer():
    stab = composition_stabilizer((1, 1, 0))
    assert len(stab) == 2
    for sigma in stab:
        assert tuple((1, 1, 0)[sigma.index(i + 1)] for i in range(3)) == (1, 1, 0)
    assert len(composition_stabilizer((2, 0, 0, 0))) == 6
    assert len(composition_stabilizer((3, 2, 1))) == 1


def test_nu_of_composition():
    assert nu_of_composition((0, 2, 1, 0, 2)) == (2, 2, 1)
    assert nu_of_composition((0, 0)) == ()
