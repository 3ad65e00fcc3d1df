"""Compositions, partitions, multi-index maps and their orbit bookkeeping.

Two symmetric groups act throughout: G = S_n permutes the n points and
H = S_k permutes the k tensor factors, with (sigma, tau).a = sigma a tau^-1
on maps a from factor slots to point subsets.  This module fixes the
enumeration orders once (reverse lexicographic for compositions, refined
order for partitions), unfolds the invariants A, J, S0, lambda, l, k, t
of a multi-index map, builds the label sets B(k,l), A(k,l), A0(k,l) that
index every direct-sum decomposition downstream, and evaluates stabilizer
orders in closed form.

A capped brute-force orbit enumerator is included; it exists so tests can
cross-check the closed-form counts against an independent computation.

Points are 1-based everywhere.  A permutation of {1..m} is a tuple p of
length m with p[i-1] = p(i).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import factorial

BRUTE_FORCE_GROUP_CAP = 100_000


@lru_cache(maxsize=None)
def _compositions(n: int, k: int) -> tuple[tuple[int, ...], ...]:
    if n == 1:
        return ((k,),)
    out = []
    for first in range(k, -1, -1):
        out.extend((first,) + rest for rest in _compositions(n - 1, k - first))
    return tuple(out)


def enumerate_compositions(n: int, k: int) -> list[tuple[int, ...]]:
    """All length-n vectors of nonnegative integers summing to k.

    Ordered reverse-lexicographically: (2,0), (1,1), (0,2).
    """
    if n < 1:
        raise ValueError("range n must be at least 1")
    if k < 0:
        raise ValueError("weight k must be nonnegative")
    return list(_compositions(n, k))


@lru_cache(maxsize=None)
def _partitions(k: int, max_part: int, max_len: int) -> tuple[tuple[int, ...], ...]:
    if k == 0:
        return ((),)
    if max_len == 0 or max_part == 0:
        return ()
    out = []
    for first in range(min(k, max_part), 0, -1):
        out.extend(
            (first,) + rest for rest in _partitions(k - first, first, max_len - 1)
        )
    return tuple(out)


def refined_key(mu) -> tuple:
    """Sort key realizing the refined order: length first, then rlex."""
    return (len(mu), tuple(-p for p in mu))


def compare_refined(mu1, mu2) -> int:
    """Compare two partitions of the same weight in the refined order.

    Shorter partitions come first; equal lengths are ordered reverse
    lexicographically, so (5,1) precedes (4,2) precedes (3,3).  Returns
    -1, 0 or +1.  Raises on a weight mismatch.
    """
    if sum(mu1) != sum(mu2):
        raise ValueError("cannot compare partitions of different weights")
    a, b = refined_key(tuple(mu1)), refined_key(tuple(mu2))
    return (a > b) - (a < b)


def enumerate_partitions(k: int, n: int) -> list[tuple[int, ...]]:
    """Partitions of k with at most n parts, listed in refined order."""
    if k < 0:
        raise ValueError("weight k must be nonnegative")
    if n < 1:
        raise ValueError("length bound n must be at least 1")
    return sorted(_partitions(k, k, n), key=refined_key)


def m_mu(mu) -> int:
    """The exponent datum of a partition: 0 for one part, else the last part.

    For mu with l(mu) >= 2 the parts are weakly decreasing, so the last
    part is min over the parts from the second on.
    """
    mu = tuple(mu)
    if not mu:
        raise ValueError("m_mu is undefined for the empty partition")
    return 0 if len(mu) == 1 else mu[-1]


def nu_of_composition(c) -> tuple[int, ...]:
    """The partition in the G-orbit of a composition: nonzero values, sorted."""
    return tuple(sorted((v for v in c if v), reverse=True))


# ---------------------------------------------------------------------------
# multi-index maps


@dataclass(frozen=True)
class MultiIndexMap:
    """A map a from factor slots {1..k} to nonempty subsets of {1..n}."""

    n: int
    images: tuple[frozenset[int], ...]

    def __post_init__(self):
        for im in self.images:
            if not im:
                raise ValueError("images must be nonempty")
            if not all(1 <= j <= self.n for j in im):
                raise ValueError("image out of range")

    @property
    def k(self) -> int:
        return len(self.images)

    @classmethod
    def from_sets(cls, n: int, sets) -> "MultiIndexMap":
        return cls(n, tuple(frozenset(s) for s in sets))


@dataclass(frozen=True)
class MapInvariants:
    """The derived quantities of a multi-index map.

    A: union of all images of size >= 2.
    J: union of all singleton images.
    S0: slots whose image equals A itself.
    lam: dense length-n vector, lam[j-1] = number of slots with image {j}.
    l: total image size minus k.  k: max(0, 2(|A|-1)).  t: |A & J|.
    """

    A: frozenset[int]
    J: frozenset[int]
    S0: frozenset[int]
    lam: tuple[int, ...]
    l: int
    k: int
    t: int


def multiindex_invariants(a: MultiIndexMap) -> MapInvariants:
    big = [im for im in a.images if len(im) >= 2]
    A = frozenset().union(*big) if big else frozenset()
    singles = [im for im in a.images if len(im) == 1]
    J = frozenset().union(*singles) if singles else frozenset()
    lam = tuple(
        sum(1 for im in a.images if len(im) == 1 and j in im)
        for j in range(1, a.n + 1)
    )
    S0 = frozenset(i for i in range(1, a.k + 1) if a.images[i - 1] == A and A)
    l = sum(len(im) for im in a.images) - a.k
    kk = max(0, 2 * (len(A) - 1))
    return MapInvariants(A=A, J=J, S0=S0, lam=lam, l=l, k=kk, t=len(A & J))


def in_Ip(a: MultiIndexMap, p: int) -> bool:
    """Membership in I^p: l(a) = p and k(a) <= 2."""
    inv = multiindex_invariants(a)
    return inv.l == p and inv.k <= 2


def act(a: MultiIndexMap, sigma=None, tau=None) -> MultiIndexMap:
    """The (G x H)-action (sigma, tau).a = sigma a tau^-1.

    Either permutation may be None (identity).  sigma permutes points
    inside each image, tau^-1 reindexes the slots.
    """
    images = a.images
    if tau is not None:
        inv_tau = [0] * len(tau)
        for i, v in enumerate(tau, start=1):
            inv_tau[v - 1] = i
        images = tuple(images[inv_tau[i - 1] - 1] for i in range(1, len(images) + 1))
    if sigma is not None:
        images = tuple(frozenset(sigma[j - 1] for j in im) for im in images)
    return MultiIndexMap(a.n, images)


def psi(a: MultiIndexMap) -> tuple[tuple[int, ...], frozenset[int]]:
    """The H-invariant label (lambda(a), A(a)) of a map."""
    inv = multiindex_invariants(a)
    return inv.lam, inv.A


def phi(a: MultiIndexMap) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """The (G x H)-invariant label: partitions of lambda restricted to A
    and to its complement."""
    inv = multiindex_invariants(a)
    nu_A = nu_of_composition(inv.lam[j - 1] for j in sorted(inv.A))
    nu_rest = nu_of_composition(
        inv.lam[j - 1] for j in range(1, a.n + 1) if j not in inv.A
    )
    return nu_A, nu_rest


# ---------------------------------------------------------------------------
# label sets


def quotient_B(k: int, l: int, n: int) -> list[tuple[tuple[int, ...], frozenset[int]]]:
    """The label set B(k,l) of H-orbits on I^l.

    Pairs (lambda, A) with lambda a composition of k-l of range n and
    |A| = min(2, 2l).  Ordering: pairs A lexicographically, compositions
    in rlex within each A.
    """
    if not 0 <= l <= k:
        raise ValueError("need 0 <= l <= k")
    if l == 0:
        return [(lam, frozenset()) for lam in enumerate_compositions(n, k)]
    if n < 2:
        return []
    out = []
    for pair in itertools.combinations(range(1, n + 1), 2):
        A = frozenset(pair)
        out.extend((lam, A) for lam in enumerate_compositions(n, k - l))
    return out


def _A_sort_key(pair):
    lam, mu = pair
    return (sum(mu), refined_key(lam), refined_key(mu))


def quotient_A(k: int, l: int, n: int) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """The label set A(k,l) of (G x H)-orbits on I^l.

    Pairs of partitions (lam, mu) with |lam| + |mu| = k - l, l(lam) at
    most min(2, 2l), and mu fitting on the points outside A (length at
    most n - |A|).  Ordered by |mu| ascending, then refined order on lam,
    then on mu.
    """
    if not 0 <= l <= k:
        raise ValueError("need 0 <= l <= k")
    if l == 0:
        return [((), mu) for mu in enumerate_partitions(k, n)]
    if n < 2:
        return []
    out = []
    for wl in range(0, k - l + 1):
        for lam in _partitions(wl, wl, 2):
            for mu in _partitions(k - l - wl, k - l - wl, n - 2):
                out.append((lam, mu))
    return sorted(out, key=_A_sort_key)


def quotient_A0(
    k: int, l: int, n: int
) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """A0(k,l): the labels of A(k,l) with lam nonzero and not of shape (h,h)."""
    if not 1 <= l <= k - 1:
        raise ValueError("need 1 <= l <= k-1")
    return [
        (lam, mu)
        for (lam, mu) in quotient_A(k, l, n)
        if lam and not (len(lam) == 2 and lam[0] == lam[1])
    ]


def canonical_section(lam, A, k: int) -> MultiIndexMap:
    """The fixed section (lambda, A) -> a of the label map.

    The first l = k - |lambda| slots map to A; the remaining slots map to
    singletons in weakly increasing point order.  Any section would do;
    this one is fixed for determinism.
    """
    lam = tuple(lam)
    n = len(lam)
    l = k - sum(lam)
    if l < 0:
        raise ValueError("weight of lambda exceeds k")
    A = frozenset(A)
    if l == 0:
        if A:
            raise ValueError("A must be empty when l = 0")
        images = []
    else:
        if len(A) != 2:
            raise ValueError("A must be a 2-element subset when l >= 1")
        images = [A] * l
    for j in range(1, n + 1):
        images.extend([frozenset((j,))] * lam[j - 1])
    return MultiIndexMap(n, tuple(images))


# ---------------------------------------------------------------------------
# stabilizers


def _block_factor(values) -> int:
    """Product of (multiplicity)! over groups of equal values."""
    out = 1
    for _, grp in itertools.groupby(sorted(values)):
        out *= factorial(sum(1 for _ in grp))
    return out


def stabilizer_order(a: MultiIndexMap, group: str = "H") -> int:
    """Order of the stabilizer of a, by the closed product formula.

    For H: |S0|! times the product of lam_j! over singleton points j.
    For GxH: additionally the permutations of untouched points, of
    points of A carrying no singleton, and the diagonal shuffles of
    equal-multiplicity points inside A & J and J - A.

    Only maps with k(a) <= 2 are accepted; the formula is proved on I^l,
    where every image of size >= 2 equals A itself.
    """
    inv = multiindex_invariants(a)
    if inv.k > 2:
        raise ValueError("stabilizer formula requires k(a) <= 2")
    h_order = factorial(len(inv.S0))
    for j in inv.J:
        h_order *= factorial(inv.lam[j - 1])
    if group == "H":
        return h_order
    if group != "GxH":
        raise ValueError("group must be 'H' or 'GxH'")
    untouched = a.n - len(inv.A | inv.J)
    order = h_order * factorial(untouched) * factorial(len(inv.A - inv.J))
    order *= _block_factor(inv.lam[j - 1] for j in inv.A & inv.J)
    order *= _block_factor(inv.lam[j - 1] for j in inv.J - inv.A)
    return order


def sign_epsilon(i: int, J) -> int:
    """The sign (-1)^(number of elements of J below i); i must lie in J."""
    J = frozenset(J)
    if i not in J:
        raise ValueError("i must be an element of J")
    return -1 if sum(1 for j in J if j < i) % 2 else 1


# ---------------------------------------------------------------------------
# stabilizers of compositions inside G, and plain permutation helpers


def composition_stabilizer(c) -> list[tuple[int, ...]]:
    """All sigma in S_n with c o sigma = c, as explicit permutations.

    These are the products of permutations of equal-value positions
    (zero positions included).
    """
    c = tuple(c)
    n = len(c)
    blocks: dict[int, list[int]] = {}
    for pos, v in enumerate(c, start=1):
        blocks.setdefault(v, []).append(pos)
    perms = [tuple(range(1, n + 1))]
    for positions in blocks.values():
        new = []
        for base in perms:
            for reordering in itertools.permutations(positions):
                p = list(base)
                for src, dst in zip(positions, reordering):
                    p[src - 1] = base[dst - 1]
                new.append(tuple(p))
        perms = new
    return sorted(set(perms))


def all_permutations(m: int) -> list[tuple[int, ...]]:
    return [tuple(p) for p in itertools.permutations(range(1, m + 1))]


# ---------------------------------------------------------------------------
# brute-force orbit enumeration (test oracle)


def _subset_pool(n: int) -> list[frozenset[int]]:
    return [frozenset(s) for m in range(1, n + 1)
            for s in itertools.combinations(range(1, n + 1), m)]


@lru_cache(maxsize=None)
def _maps_by_level(n: int, k: int) -> dict[int, tuple[MultiIndexMap, ...]]:
    """All maps with k(a) <= 2, bucketed by l(a).

    Depth-first over image tuples, pruning a branch as soon as the union
    of non-singleton images exceeds two points; the k(a) <= 2 condition
    is exactly that the union stays within two.  Visit order matches the
    plain product walk restricted to the survivors.
    """
    subsets = _subset_pool(n)
    buckets: dict[int, list[MultiIndexMap]] = {}
    prefix: list[frozenset[int]] = []

    def walk(depth: int, level: int, union_big: frozenset[int]):
        if depth == k:
            buckets.setdefault(level, []).append(MultiIndexMap(n, tuple(prefix)))
            return
        for im in subsets:
            if len(im) >= 2:
                merged = union_big | im
                if len(merged) > 2:
                    continue
            else:
                merged = union_big
            prefix.append(im)
            walk(depth + 1, level + len(im) - 1, merged)
            prefix.pop()

    walk(0, 0, frozenset())
    return {lv: tuple(ms) for lv, ms in buckets.items()}


def enumerate_multiindex_maps(n: int, k: int, l: int | None = None) -> list[MultiIndexMap]:
    """Every map {1..k} -> nonempty subsets of {1..n}; restricted to I^l
    (l(a) = l, k(a) <= 2) when l is given.

    The unrestricted walk visits all (2^n - 1)^k raw maps, so keep n and
    k small; the I^l case prunes to the survivors and is cached.
    """
    if l is not None:
        return list(_maps_by_level(n, k).get(l, ()))
    subsets = _subset_pool(n)
    return [MultiIndexMap(n, images)
            for images in itertools.product(subsets, repeat=k)]


def orbits(n: int, k: int, l: int, group: str = "GxH") -> list[list[MultiIndexMap]]:
    """Brute-force orbit partition of I^l under H or G x H.

    Uses adjacent transpositions as generators and a breadth-first sweep,
    entirely independent of the label-set constructions above.  Hard
    error when n! * k! exceeds the cap: this enumeration exists only as
    a test oracle.
    """
    if factorial(n) * factorial(k) > BRUTE_FORCE_GROUP_CAP:
        raise ValueError("group too large for brute-force enumeration")
    if group not in ("H", "GxH"):
        raise ValueError("group must be 'H' or 'GxH'")
    maps = enumerate_multiindex_maps(n, k, l)
    index = {a: i for i, a in enumerate(maps)}

    gens = []
    ident_n = tuple(range(1, n + 1))
    ident_k = tuple(range(1, k + 1))
    for i in range(1, k):
        tau = list(ident_k)
        tau[i - 1], tau[i] = tau[i], tau[i - 1]
        gens.append((None, tuple(tau)))
    if group == "GxH":
        for i in range(1, n):
            sig = list(ident_n)
            sig[i - 1], sig[i] = sig[i], sig[i - 1]
            gens.append((tuple(sig), None))

    seen = [False] * len(maps)
    out = []
    for start in range(len(maps)):
        if seen[start]:
            continue
        orbit = [start]
        seen[start] = True
        frontier = [maps[start]]
        while frontier:
            nxt = []
            for a in frontier:
                for sigma, tau in gens:
                    b = act(a, sigma, tau)
                    j = index[b]
                    if not seen[j]:
                        seen[j] = True
                        orbit.append(j)
                        nxt.append(b)
            frontier = nxt
        out.append([maps[j] for j in sorted(orbit)])
    return out
