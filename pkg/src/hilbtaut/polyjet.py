"""Truncated polynomial algebra on n points in the plane.

The coordinate ring of n plane points is modeled as rational polynomials
in x_1..x_n, y_1..y_n, cut off at a chosen total degree.  Exponent
vectors are tuples of length 2n, x-block first.  Everything is exact:
coefficients are Fractions and no computation leaves the truncation.

The point of the module is ideal-power membership for the pairwise
diagonal ideals I_A = (x_{a0}-x_{a1}, y_{a0}-y_{a1}).  For a pair A the
unimodular change of coordinates

    u = x_{a0}-x_{a1},  s = x_{a0}+x_{a1}   (same with v, t for y)

turns I_A^m into the monomial ideal (u, v)^m, so membership in degree
<= D is a finite set of linear conditions: the coefficients of all
substituted monomials of u-v-degree below m must vanish.  No Groebner
bases, and every condition is homogeneous in total degree, which lets
all dimension counts run degree by degree.

The symmetric group acts by permuting point labels; symmetrize applies
sigma_* (x_i goes to x_{sigma^-1(i)}) to a polynomial, or the induced
action to an indexed family of polynomials.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from .linalg import nullspace


@lru_cache(maxsize=None)
def _exponents(nvars: int, total: int) -> tuple:
    if nvars == 1:
        return ((total,),)
    out = []
    for first in range(total, -1, -1):
        for rest in _exponents(nvars - 1, total - first):
            out.append((first,) + rest)
    return tuple(out)


class PolyRing:
    """Polynomials in 2n variables, truncated at a total degree."""

    def __init__(self, n: int, max_deg: int):
        if n < 1:
            raise ValueError("need at least one point")
        if max_deg < 0:
            raise ValueError("truncation degree must be nonnegative")
        self.n = n
        self.max_deg = max_deg
        self.nvars = 2 * n

    def monomials(self, degree: int) -> tuple:
        """All exponent vectors of one exact total degree, in a fixed
        lexicographic order."""
        if not 0 <= degree <= self.max_deg:
            raise ValueError(f"degree {degree} outside truncation")
        return _exponents(self.nvars, degree)

    def monomials_up_to(self, degree: int | None = None):
        if degree is None:
            degree = self.max_deg
        for d in range(degree + 1):
            yield from self.monomials(d)

    def monomial_count(self) -> int:
        return comb(self.nvars + self.max_deg, self.nvars)

    def poly(self, coeffs: dict) -> "TruncPoly":
        return TruncPoly(self, coeffs)

    def zero(self) -> "TruncPoly":
        return TruncPoly(self, {})

    def one(self) -> "TruncPoly":
        return TruncPoly(self, {(0,) * self.nvars: Fraction(1)})

    def x(self, i: int) -> "TruncPoly":
        return self._var(i - 1)

    def y(self, i: int) -> "TruncPoly":
        return self._var(self.n + i - 1)

    def _var(self, pos: int) -> "TruncPoly":
        if not 0 <= pos < self.nvars:
            raise ValueError("variable index out of range")
        e = [0] * self.nvars
        e[pos] = 1
        return TruncPoly(self, {tuple(e): Fraction(1)})

    def __repr__(self):
        return f"PolyRing(n={self.n}, max_deg={self.max_deg})"


class TruncPoly:
    """A sparse polynomial bound to its ring; products drop any term
    beyond the ring's degree cap."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: PolyRing, coeffs: dict):
        clean = {}
        for e, c in coeffs.items():
            c = Fraction(c)
            if not c:
                continue
            if len(e) != ring.nvars:
                raise ValueError("exponent vector has wrong length")
            if sum(e) <= ring.max_deg:
                clean[tuple(e)] = c
        self.ring = ring
        self.coeffs = clean

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.coeffs), default=-1)

    def __add__(self, other):
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            nc = out.get(e, 0) + c
            if nc:
                out[e] = nc
            else:
                del out[e]
        return TruncPoly(self.ring, out)

    def __neg__(self):
        return TruncPoly(self.ring, {e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, TruncPoly):
            c = Fraction(other)
            return TruncPoly(
                self.ring, {e: c * v for e, v in self.coeffs.items()}
            )
        cap = self.ring.max_deg
        out: dict = {}
        for e1, c1 in self.coeffs.items():
            d1 = sum(e1)
            for e2, c2 in other.coeffs.items():
                if d1 + sum(e2) > cap:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                nc = out.get(e, 0) + c1 * c2
                if nc:
                    out[e] = nc
                else:
                    del out[e]
        return TruncPoly(self.ring, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, TruncPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __repr__(self):
        if not self.coeffs:
            return "TruncPoly(0)"
        parts = [f"{c}*{e}" for e, c in sorted(self.coeffs.items())]
        return "TruncPoly(" + " + ".join(parts) + ")"


@dataclass(frozen=True)
class DiagonalIdeal:
    """The ideal of the locus where points a0 and a1 collide."""

    ring: PolyRing
    pair: tuple

    def __post_init__(self):
        a0, a1 = self.pair
        if not (1 <= a0 < a1 <= self.ring.n):
            raise ValueError("pair must satisfy 1 <= a0 < a1 <= n")

    @property
    def u(self) -> TruncPoly:
        a0, a1 = self.pair
        return self.ring.x(a0) - self.ring.x(a1)

    @property
    def v(self) -> TruncPoly:
        a0, a1 = self.pair
        return self.ring.y(a0) - self.ring.y(a1)


def _resolve(A, ring):
    if isinstance(A, DiagonalIdeal):
        return A.pair, A.ring
    a0, a1 = sorted(A)
    if ring is None:
        raise ValueError("a plain pair needs an explicit ring")
    return (a0, a1), ring


def jet_conditions(A, order: int, ring: PolyRing | None = None) -> list:
    """Linear functionals whose common kernel is I_A^order, truncated.

    Each functional is a dict pairing exponent vectors with rational
    weights; a polynomial lies in the ideal power exactly when every
    functional evaluates to zero on its coefficients.  Functionals are
    indexed by substituted-basis monomials of u-v-degree below the
    requested order and are homogeneous in total degree.
    """
    (a0, a1), ring = _resolve(A, ring)
    if order < 1:
        raise ValueError("order must be at least 1")
    n = ring.n
    ix0, ix1 = a0 - 1, a1 - 1
    iy0, iy1 = n + a0 - 1, n + a1 - 1
    rows: dict = {}
    for old in ring.monomials_up_to():
        p0, p1, q0, q1 = old[ix0], old[ix1], old[iy0], old[iy1]
        denom = 2 ** (p0 + p1 + q0 + q1)
        for i0 in range(p0 + 1):
            for i1 in range(p1 + 1):
                udeg = i0 + i1
                if udeg >= order:
                    continue
                cu = comb(p0, i0) * comb(p1, i1) * (-1) ** i1
                for j0 in range(q0 + 1):
                    for j1 in range(q1 + 1):
                        if udeg + j0 + j1 >= order:
                            continue
                        cv = comb(q0, j0) * comb(q1, j1) * (-1) ** j1
                        new = list(old)
                        new[ix0] = udeg
                        new[ix1] = p0 + p1 - udeg
                        new[iy0] = j0 + j1
                        new[iy1] = q0 + q1 - j0 - j1
                        key = tuple(new)
                        row = rows.setdefault(key, {})
                        row[old] = row.get(old, 0) + Fraction(cu * cv, denom)
    ordered = sorted(rows, key=lambda e: (sum(e), e))
    out = []
    for key in ordered:
        row = {e: c for e, c in rows[key].items() if c}
        if row:
            out.append(row)
    return out


def evaluate_functional(functional: dict, p: TruncPoly) -> Fraction:
    return sum(
        (c * p.coeffs[e] for e, c in functional.items() if e in p.coeffs),
        Fraction(0),
    )


def membership(p: TruncPoly, A, order: int, ring: PolyRing | None = None) -> bool:
    """Is p in the order-th power of the diagonal ideal of A?"""
    if isinstance(A, DiagonalIdeal):
        ring = A.ring
    return all(
        evaluate_functional(row, p) == 0
        for row in jet_conditions(A, order, ring)
    )


def intersect_ideal_powers(pairs, ring: PolyRing) -> list:
    """Exact basis of the intersection of diagonal-ideal powers.

    pairs is a list of (A, exponent); exponent 0 contributes nothing.
    The basis comes out homogeneous, ordered by degree, each vector from
    the deterministic nullspace of the stacked jet conditions in that
    degree.
    """
    conditions = []
    for A, e in pairs:
        if e < 0:
            raise ValueError("exponents must be nonnegative")
        if e == 0:
            continue
        conditions.extend(jet_conditions(A, e, ring))
    by_degree: dict = {}
    for row in conditions:
        d = sum(next(iter(row)))
        by_degree.setdefault(d, []).append(row)
    basis = []
    for d in range(ring.max_deg + 1):
        monos = ring.monomials(d)
        index = {e: i for i, e in enumerate(monos)}
        rows = [
            {index[e]: c for e, c in row.items()}
            for row in by_degree.get(d, [])
        ]
        for vec in nullspace(rows, len(monos)):
            basis.append(
                TruncPoly(ring, {monos[i]: c for i, c in enumerate(vec) if c})
            )
    return basis


def permute_composition(lam, sigma):
    """The reindexed composition: entry i becomes entry sigma(i)."""
    return tuple(lam[sigma[i] - 1] for i in range(len(lam)))


def symmetrize(t, sigma):
    """Apply the point-relabeling action of sigma.

    On a polynomial, sigma_* substitutes x_i by x_{sigma^-1(i)} (same
    for y), i.e. exponent slot j receives the old slot sigma(j).  On a
    mapping indexed by compositions, entry lambda of the result is
    sigma_* of entry lambda compose sigma.
    """
    if isinstance(t, TruncPoly):
        n = t.ring.n
        out = {}
        for e, c in t.coeffs.items():
            new = tuple(e[sigma[j] - 1] for j in range(n)) + tuple(
                e[n + sigma[j] - 1] for j in range(n)
            )
            out[new] = c
        return TruncPoly(t.ring, out)
    if isinstance(t, dict):
        return {
            lam: symmetrize(t[permute_composition(lam, sigma)], sigma)
            for lam in t
        }
    raise TypeError("symmetrize expects a TruncPoly or a composition-indexed dict")
