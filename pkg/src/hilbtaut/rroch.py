"""Surface lattice models, Riemann-Roch, and the closed chi formulas.

A surface is modeled by its Picard-lattice slice: an intersection form,
the canonical class K, chi of the structure sheaf, and the Euler number
c2, tied together by Noether's relation K^2 + c2 = 12 chiO.  Bundle
classes are lattice vectors; twisted Euler characteristics come out of
Hirzebruch-Riemann-Roch with exact integer arithmetic.

On top of that sit the closed formulas for chi of the symmetric powers
S^k of a tautological bundle, twisted by the natural line bundle of a
class A (numerically: A tensored into every factor):

* a two-point formula valid for every k,
* one-formula-per-k expressions for k <= 4 valid for every number of
  points, with the convention that binomials with negative lower index
  vanish (which silently drops the terms that need more points than
  available),
* the per-partition graded pieces in the two-point case, whose sum
  telescopes to the first formula.

The k = 2 any-n formula is *derived* (two-step filtration plus the sign
of the flip on the conormal ideal), not quoted; it specializes to the
two-point formula exactly and is cross-checked in the tests.

All formulas are lattice-generic, so randomized cross-validation over
models is meaningful.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

Vec = tuple[int, ...]


def binom_int(x: int, h: int) -> int:
    """The binomial as an integer polynomial in x: zero when h < 0."""
    if h < 0:
        return 0
    num = 1
    for i in range(h):
        num *= x - i
    return num // factorial(h)


@dataclass(frozen=True)
class SurfaceModel:
    """Numerical invariants of a smooth projective surface.

    intersection is the Gram matrix of the modeled Picard slice; K the
    canonical class in that basis.  Noether's relation is enforced at
    construction, so an inconsistent model never produces a chi.
    """

    name: str
    rank: int
    intersection: tuple[tuple[int, ...], ...]
    K: Vec
    chiO: int
    c2: int

    def __post_init__(self):
        m = self.intersection
        if len(m) != self.rank or any(len(row) != self.rank for row in m):
            raise ValueError("intersection matrix must be rank x rank")
        for i in range(self.rank):
            for j in range(self.rank):
                if m[i][j] != m[j][i]:
                    raise ValueError("intersection matrix must be symmetric")
        if len(self.K) != self.rank:
            raise ValueError("K must have one coordinate per lattice generator")
        if self.dot(self.K, self.K) + self.c2 != 12 * self.chiO:
            raise ValueError(
                f"model {self.name!r} violates Noether: "
                f"K^2 + c2 = {self.dot(self.K, self.K) + self.c2}, "
                f"12 chiO = {12 * self.chiO}"
            )

    def dot(self, u, v) -> int:
        return sum(
            u[i] * self.intersection[i][j] * v[j]
            for i in range(self.rank)
            for j in range(self.rank)
        )

    def zero(self) -> Vec:
        return (0,) * self.rank


def _vec(v, rank: int) -> Vec:
    v = tuple(int(x) for x in v)
    if len(v) != rank:
        raise ValueError(f"bundle class must have {rank} coordinates")
    return v


def vec_add(*vs) -> Vec:
    return tuple(sum(comps) for comps in zip(*vs))


def vec_scale(c: int, v) -> Vec:
    return tuple(c * x for x in v)


BUILTIN_SURFACES = {
    "p2": SurfaceModel("p2", 1, ((1,),), (-3,), 1, 3),
    "p1xp1": SurfaceModel("p1xp1", 2, ((0, 1), (1, 0)), (-2, -2), 1, 4),
    "k3": SurfaceModel("k3", 1, ((4,),), (0,), 2, 24),
    "abelian": SurfaceModel("abelian", 1, ((2,),), (0,), 0, 0),
}


def get_surface(name: str) -> SurfaceModel:
    try:
        return BUILTIN_SURFACES[name]
    except KeyError:
        raise ValueError(
            f"unknown surface {name!r}; builtins: {sorted(BUILTIN_SURFACES)}"
        ) from None


def load_surface(source) -> SurfaceModel:
    """Build a SurfaceModel from a JSON file path or an already-parsed dict.

    Expected object: {"name": str, "rank": int, "intersection": [[int]],
    "K": [int], "chiO": int, "c2": int}.  Noether violations are
    rejected here, at load time.
    """
    if isinstance(source, dict):
        data = source
    else:
        with open(source) as fh:
            data = json.load(fh)
    try:
        return SurfaceModel(
            name=str(data["name"]),
            rank=int(data["rank"]),
            intersection=tuple(tuple(int(x) for x in row) for row in data["intersection"]),
            K=tuple(int(x) for x in data["K"]),
            chiO=int(data["chiO"]),
            c2=int(data["c2"]),
        )
    except KeyError as missing:
        raise ValueError(f"surface model missing field {missing}") from None


# ---------------------------------------------------------------------------
# Riemann-Roch


def chi_line(s: SurfaceModel, M) -> int:
    """chi of a line bundle: chiO + M.(M - K)/2."""
    M = _vec(M, s.rank)
    twice = s.dot(M, M) - s.dot(M, s.K)
    if twice % 2:
        raise ValueError("non-integral chi; inconsistent model")
    return s.chiO + twice // 2


@dataclass(frozen=True)
class ChernData:
    """rank, first Chern class (lattice vector), and the c2 number."""

    rank: int
    c1: Vec
    c2num: int


def line_chern(s: SurfaceModel, M) -> ChernData:
    return ChernData(1, _vec(M, s.rank), 0)


def chern_sym_omega(s: SurfaceModel, l: int) -> ChernData:
    """Chern data of the l-th symmetric power of the cotangent bundle.

    Splitting principle on the two Chern roots of Omega: the l+1 roots of
    S^l are i*a + (l-i)*b, summed exactly.
    """
    if l < 0:
        raise ValueError("l must be nonnegative")
    K2 = s.dot(s.K, s.K)
    half = l * (l + 1) // 2
    c1 = vec_scale(half, s.K)
    sq_sum = Fraction(l * (l + 1) * (2 * l + 1), 6) * (K2 - 2 * s.c2) + Fraction(
        l * (l + 1) * (l - 1), 3
    ) * s.c2
    c2num = (Fraction(half * half * K2) - sq_sum) / 2
    if c2num.denominator != 1:
        raise ValueError("non-integral c2; inconsistent model")
    return ChernData(l + 1, c1, int(c2num))


def tensor_chern(s: SurfaceModel, E: ChernData, F: ChernData) -> ChernData:
    """Chern data of a tensor product, through the rank-generic ch2 rule."""
    rank = E.rank * F.rank
    c1 = vec_add(vec_scale(F.rank, E.c1), vec_scale(E.rank, F.c1))
    ch2_E = Fraction(s.dot(E.c1, E.c1) - 2 * E.c2num, 2)
    ch2_F = Fraction(s.dot(F.c1, F.c1) - 2 * F.c2num, 2)
    ch2 = F.rank * ch2_E + s.dot(E.c1, F.c1) + E.rank * ch2_F
    c2num = Fraction(s.dot(c1, c1), 2) - ch2
    if c2num.denominator != 1:
        raise ValueError("non-integral c2 in tensor product")
    return ChernData(rank, c1, int(c2num))


def chi_twisted(s: SurfaceModel, E: ChernData, M) -> int:
    """chi of E tensor a line bundle M, via Hirzebruch-Riemann-Roch."""
    M = _vec(M, s.rank)
    c1 = vec_add(E.c1, vec_scale(E.rank, M))
    c2 = (
        E.c2num
        + (E.rank - 1) * s.dot(E.c1, M)
        + binom_int(E.rank, 2) * s.dot(M, M)
    )
    val = (
        Fraction(E.rank * s.chiO)
        + Fraction(s.dot(c1, c1) - 2 * c2, 2)
        - Fraction(s.dot(c1, s.K), 2)
    )
    if val.denominator != 1:
        raise ValueError("non-integral chi; inconsistent input")
    return int(val)


# ---------------------------------------------------------------------------
# the closed chi formulas


def _lines(s, L, A):
    """chi(L^p otimes A^q) as a function of (p, q)."""
    L = _vec(L, s.rank)
    A = _vec(A, s.rank)

    def chi_pq(p: int, q: int) -> int:
        return chi_line(s, vec_add(vec_scale(p, L), vec_scale(q, A)))

    return chi_pq


def _chi_sym_omega_twist(s, l: int, L, A, p: int, q: int) -> int:
    """chi(S^l Omega otimes L^p otimes A^q)."""
    M = vec_add(vec_scale(p, _vec(L, s.rank)), vec_scale(q, _vec(A, s.rank)))
    return chi_twisted(s, chern_sym_omega(s, l), M)


def chi_sym_power_n2(s: SurfaceModel, k: int, L, A) -> int:
    """The two-point formula, any k >= 0."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    chi = _lines(s, L, A)
    total = 0
    if k % 2 == 0:
        total += binom_int(chi(k // 2, 1) + 1, 2)
    for i in range((k - 1) // 2 + 1):
        total += chi(k - i, 1) * chi(i, 1)
    for j in range(k - 1):
        total -= ((k - j) // 2) * _chi_sym_omega_twist(s, j, L, A, k, 2)
    return total


def chi_sym_power_smallk(s: SurfaceModel, n: int, k: int, L, A) -> int:
    """The per-k formulas, k <= 4, any n >= 1.

    Each term carries a binomial prefactor in chi(A) whose lower index
    shrinks with the number of points the term occupies; for small n the
    prefactor vanishes, which is exactly the right truncation.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if not 0 <= k <= 4:
        raise ValueError("closed per-k formulas exist for k <= 4 only")
    chi = _lines(s, L, A)
    om = lambda l, p, q: _chi_sym_omega_twist(s, l, L, A, p, q)
    cA = chi(0, 1)
    if k == 0:
        return binom_int(cA + n - 1, n)
    if k == 1:
        return chi(1, 1) * binom_int(cA + n - 2, n - 1)
    if k == 2:
        return chi(2, 1) * binom_int(cA + n - 2, n - 1) + (
            binom_int(chi(1, 1) + 1, 2) - chi(2, 2)
        ) * binom_int(cA + n - 3, n - 2)
    if k == 3:
        return (
            binom_int(cA + n - 2, n - 1) * chi(3, 1)
            + binom_int(cA + n - 3, n - 2)
            * (chi(2, 1) * chi(1, 1) - chi(3, 2) - om(1, 3, 2))
            + binom_int(cA + n - 4, n - 3)
            * (
                binom_int(chi(1, 1) + 2, 3)
                - chi(2, 2) * chi(1, 1)
                + om(1, 3, 3)
            )
        )
    # k == 4
    omega = chern_sym_omega(s, 1)
    omega_sq = tensor_chern(s, omega, omega)
    L4A3 = vec_add(vec_scale(4, _vec(L, s.rank)), vec_scale(3, _vec(A, s.rank)))
    chi_omom = chi_twisted(s, omega_sq, L4A3)
    chi_K = chi_line(
        s, vec_add(s.K, vec_scale(4, _vec(L, s.rank)), vec_scale(4, _vec(A, s.rank)))
    )
    return (
        binom_int(cA + n - 2, n - 1) * chi(4, 1)
        + binom_int(cA + n - 3, n - 2)
        * (
            chi(3, 1) * chi(1, 1)
            - 2 * chi(4, 2)
            - om(1, 4, 2)
            + binom_int(chi(2, 1) + 1, 2)
            - om(2, 4, 2)
        )
        + binom_int(cA + n - 4, n - 3)
        * (
            chi(2, 1) * binom_int(chi(1, 1) + 1, 2)
            - chi(3, 2) * chi(1, 1)
            - chi(2, 2) * chi(2, 1)
            + chi(4, 3)
            - om(1, 3, 2) * chi(1, 1)
            + 2 * om(1, 4, 3)
            + chi_omom
            + om(3, 4, 3)
        )
        + binom_int(cA + n - 5, n - 4)
        * (
            binom_int(chi(1, 1) + 3, 4)
            - chi(2, 2) * binom_int(chi(1, 1) + 1, 2)
            + binom_int(chi(2, 2), 2)
            + om(1, 3, 3) * chi(1, 1)
            - om(1, 4, 4)
            - chi_K
            - om(3, 4, 4)
        )
    )


def chi_sym_power(s: SurfaceModel, n: int, k: int, L, A) -> int:
    """chi of the k-th symmetric power on n points, twisted by A.

    Supported: n = 2 with any k >= 0, or 0 <= k <= 4 with any n >= 1.
    Everything else has no closed formula here and raises.
    """
    if n == 2:
        return chi_sym_power_n2(s, k, L, A)
    if n >= 1 and 0 <= k <= 4:
        return chi_sym_power_smallk(s, n, k, L, A)
    raise ValueError(f"unsupported (n, k) = ({n}, {k}): need n = 2 or k <= 4")


def chi_graded_piece_n2(s: SurfaceModel, k: int, j: int, L, A) -> int:
    """chi of the graded piece labeled (k-j, j) in the two-point filtration.

    Distinct parts pair the two line-bundle factors and subtract the full
    string of cotangent corrections below 2j; equal parts take the
    symmetric square and only the even half of the string survives the
    flip.
    """
    if not 0 <= 2 * j <= k:
        raise ValueError("need 0 <= j <= k/2")
    chi = _lines(s, L, A)
    a, b = k - j, j
    if a > b:
        total = chi(a, 1) * chi(b, 1)
        for l in range(2 * j):
            total -= _chi_sym_omega_twist(s, l, L, A, k, 2)
        return total
    total = binom_int(chi(a, 1) + 1, 2)
    for l in range(0, 2 * j, 2):
        total -= _chi_sym_omega_twist(s, l, L, A, k, 2)
    return total


def chi_A4(s: SurfaceModel, M) -> int:
    """chi of the rank-binom(chi(M),2) sheaf built from second exterior
    powers of sections of M on the fourth symmetric product."""
    return binom_int(chi_line(s, M), 2)
