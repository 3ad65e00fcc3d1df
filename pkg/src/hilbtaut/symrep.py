"""Sign-isotypic dimensions for wedge powers, and two tensor identities.

First half: for V of dimension 2, the dimensions of the anti-invariant
parts of Lambda^q(V (x) R_k) and Lambda^q(V (x) rho_k), where R_k is the
permutation representation of S_k and rho_k the standard one.  These are
plain character averages, run over cycle types with exact integer
polynomial arithmetic; a non-integral average would mean a bug and is
detected immediately.

Second half: small wedge and symmetric powers are realized inside honest
tensor powers over Q (wedges and symmetric products as unnormalized
alternating and symmetrizing sums, hats meaning division by the
factorial that makes a basis vector primitive).  In that model the code
checks, coefficient by coefficient,

* two closed expressions for the sign generator omega_{k-1} of the top
  wedge of rho_k, and
* that the induced map out of the sum of one-letter-deleted wedge
  spaces restricts, on invariants and in the hatted bases, to exactly
  (k-1) times symmetrization.

The identification used in the second check depends on a choice of
basis vectors and is canonical only up to a positive scalar; whatever
scalar comes out is returned, never silently absorbed.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations
from math import factorial

from .linalg import nullspace

# ---------------------------------------------------------------------------
# character arithmetic over cycle types


def cycle_types(k: int):
    """All cycle types of S_k as (partition, class size, sign) triples."""

    def parts(rest, cap):
        if rest == 0:
            yield ()
            return
        for p in range(min(rest, cap), 0, -1):
            for tail in parts(rest - p, p):
                yield (p,) + tail

    out = []
    for lam in parts(k, k):
        z = 1
        mult: dict[int, int] = {}
        for p in lam:
            mult[p] = mult.get(p, 0) + 1
        for p, m in mult.items():
            z *= p**m * factorial(m)
        size = factorial(k) // z
        sign = (-1) ** (k - len(lam))
        out.append((lam, size, sign))
    return out


def _poly_mul(p, q):
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return out


def _poly_div_exact(p, d):
    """Quotient of p by d in Z[t]; raises if the division leaves a remainder."""
    p = list(p)
    deg_d = len(d) - 1
    if len(p) < len(d):
        if any(p):
            raise ValueError("inexact polynomial division")
        return [0]
    quot = [0] * (len(p) - deg_d)
    for i in range(len(quot) - 1, -1, -1):
        c = p[i + deg_d]
        if c % d[-1]:
            raise ValueError("inexact polynomial division")
        c //= d[-1]
        quot[i] = c
        if c:
            for j, b in enumerate(d):
                p[i + j] -= c * b
    if any(p):
        raise ValueError("inexact polynomial division")
    return quot


def _det_one_plus_t(lam, dim_v: int):
    """det(1 + t sigma) on V (x) R_k for sigma of cycle type lam:
    the product over cycles of (1 - (-t)^c), raised to dim V."""
    poly = [1]
    for c in lam:
        cyc = [0] * (c + 1)
        cyc[0] = 1
        cyc[c] = -((-1) ** c)
        for _ in range(dim_v):
            poly = _poly_mul(poly, cyc)
    return poly


def antiinv_dims_R(k: int, dim_v: int = 2) -> tuple[int, ...]:
    """Anti-invariant dimensions of Lambda^q(V (x) R_k), all q at once.

    Entry q of the result is the coefficient of t^q in the averaged
    signed characteristic polynomial; the average must clear k!.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    total = [0] * (dim_v * k + 1)
    for lam, size, sign in cycle_types(k):
        poly = _det_one_plus_t(lam, dim_v)
        for q, c in enumerate(poly):
            total[q] += size * sign * c
    kfac = factorial(k)
    if any(c % kfac for c in total):
        raise ArithmeticError("character average is not integral")
    return tuple(c // kfac for c in total)


def antiinv_dims_rho(k: int, dim_v: int = 2) -> tuple[int, ...]:
    """Same as antiinv_dims_R but for the standard summand rho_k.

    Each class's characteristic polynomial is divided exactly by
    (1 + t)^dim_v, the contribution of the invariant line.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    denom = [1]
    for _ in range(dim_v):
        denom = _poly_mul(denom, [1, 1])
    total = [0] * (dim_v * (k - 1) + 1)
    for lam, size, sign in cycle_types(k):
        poly = _poly_div_exact(_det_one_plus_t(lam, dim_v), denom)
        for q, c in enumerate(poly):
            total[q] += size * sign * c
    kfac = factorial(k)
    if any(c % kfac for c in total):
        raise ArithmeticError("character average is not integral")
    return tuple(c // kfac for c in total)


# ---------------------------------------------------------------------------
# explicit tensor model

# tensors are sparse dicts {word: Fraction}; a word is a tuple of basis
# letters, one per slot


def _add_into(acc, d, c=1):
    for w, v in d.items():
        nv = acc.get(w, 0) + c * v
        if nv:
            acc[w] = nv
        else:
            acc.pop(w, None)


def _scale(d, c):
    if not c:
        return {}
    return {w: c * v for w, v in d.items()}


def _tensor(d1, d2):
    out = {}
    for w1, v1 in d1.items():
        for w2, v2 in d2.items():
            out[w1 + w2] = out.get(w1 + w2, 0) + v1 * v2
    return {w: v for w, v in out.items() if v}


def _perm_sign(pi) -> int:
    sign = 1
    for i in range(len(pi)):
        for j in range(i + 1, len(pi)):
            if pi[i] > pi[j]:
                sign = -sign
    return sign


def _alt_unnorm(d, m: int):
    """Sum over all slot permutations with sign, no normalization."""
    out: dict = {}
    for pi in permutations(range(m)):
        s = _perm_sign(pi)
        for w, v in d.items():
            nw = tuple(w[pi[i]] for i in range(m))
            nv = out.get(nw, 0) + s * v
            if nv:
                out[nw] = nv
            else:
                out.pop(nw, None)
    return out


def _sym_unnorm(letters):
    """Unnormalized symmetrization of a word, as a tensor."""
    out: dict = {}
    for pi in permutations(letters):
        out[pi] = out.get(pi, 0) + 1
    return out


def _wedge_letters(letters):
    """Unnormalized wedge of distinct letters, in the given order."""
    out = {}
    for pi in permutations(range(len(letters))):
        out[tuple(letters[i] for i in pi)] = _perm_sign(pi)
    return out if letters else {(): 1}


def omega_on(letters) -> dict:
    """The alternating generator on a letter set: the signed sum of the
    wedges of all one-letter-deleted subwords."""
    letters = tuple(letters)
    m = len(letters)
    out: dict = {}
    for i in range(m):
        sub = letters[:i] + letters[i + 1 :]
        _add_into(out, _wedge_letters(sub), (-1) ** (m - 1 - i))
    return out


def _map_letters(d, f):
    return {tuple(f(x) for x in w): v for w, v in d.items()}


def _transposition(i: int, k: int):
    def f(j):
        if j == i:
            return k
        if j == k:
            return i
        return j

    return f


def verify_omega(k: int) -> bool:
    """Check both closed expressions for omega_{k-1} exactly.

    One: the signed sum over all of S_k acting on the first k-1 basis
    letters.  Two: the signed sum over coset representatives (i k) of
    the last-letter-deleted omega tensored with the invariant vector.
    Raises on any mismatch.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    omega = omega_on(range(1, k + 1))
    signed: dict = {}
    base = tuple(range(1, k))
    for tau in permutations(range(1, k + 1)):
        word = tuple(tau[x - 1] for x in base)
        s = _perm_sign(tau)
        nv = signed.get(word, 0) + s
        if nv:
            signed[word] = nv
        else:
            signed.pop(word, None)
    if signed != omega:
        raise AssertionError(f"signed-sum expression fails at k={k}")
    if k >= 2:
        inner = _tensor(
            omega_on(range(1, k)), {(j,): 1 for j in range(1, k)}
        )
        recursed: dict = {}
        for i in range(1, k + 1):
            moved = _map_letters(inner, _transposition(i, k))
            _add_into(recursed, moved, 1 if i == k else -1)
        if recursed != omega:
            raise AssertionError(f"coset-sum expression fails at k={k}")
    return True


def _reshuffle(sym_tensor, wedge_tensor):
    """Pair two degree-m tensors slot by slot into one with paired letters."""
    out: dict = {}
    for w1, v1 in sym_tensor.items():
        for w2, v2 in wedge_tensor.items():
            word = tuple(zip(w1, w2))
            nv = out.get(word, 0) + v1 * v2
            if nv:
                out[word] = nv
            else:
                out.pop(word, None)
    return out


def verify_sym_map(k: int) -> Fraction:
    """Reproduce the induced-map computation on invariants and compare
    with (k-1) times symmetrization.

    For every monomial generator u (x) v of S^(k-2)V (x) V the element

        sum over cosets (i k), with sign, of the wedge-embedded
        u . omega-hat tensor v . sigma

    is formed in the tensor power of V (x) R_k and decomposed against
    the embedded monomial basis of S^(k-1)V.  The decomposition must be
    a single multiple of the expected product monomial, with one common
    constant across all generators; that constant is returned (the
    identification is only pinned up to a positive scalar, so it is
    reported rather than asserted to be 1).
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    omega_hat_small = _scale(
        omega_on(range(1, k)), Fraction(1, factorial(k - 2))
    )
    sigma_small = {(j,): Fraction(1) for j in range(1, k)}

    targets = []
    omega_hat_big = _scale(omega_on(range(1, k + 1)), Fraction(1, factorial(k - 1)))
    for a in range(k - 1, -1, -1):
        mono = (0,) * a + (1,) * (k - 1 - a)
        targets.append(_reshuffle(_sym_unnorm(mono), omega_hat_big))

    constant = None
    for ua in range(k - 2, -1, -1):
        u = (0,) * ua + (1,) * (k - 2 - ua)
        for v in (0, 1):
            embedded = _reshuffle(_sym_unnorm(u), omega_hat_small)
            appended = _tensor(embedded, {((v, j),): c for (j,), c in sigma_small.items()})
            wedge = _scale(
                _alt_unnorm(appended, k - 1), Fraction(1, factorial(k - 2))
            )
            f0 = _scale(wedge, Fraction(1, k - 1))
            total: dict = {}
            for i in range(1, k + 1):
                tr = _transposition(i, k)
                moved = {
                    tuple((vl, tr(rl)) for vl, rl in w): c for w, c in f0.items()
                }
                _add_into(total, moved, 1 if i == k else -1)
            # anti-invariance under the full group is a structural must
            swap12 = _map_pair_letters(total, _transposition(1, 2))
            if _scale(swap12, -1) != total:
                raise AssertionError(f"image not anti-invariant at k={k}")
            coords = _decompose(total, targets)
            expect_at = (k - 1) - (ua + (1 if v == 0 else 0))
            for pos, c in enumerate(coords):
                if pos != expect_at and c:
                    raise AssertionError(
                        f"off-monomial component at k={k}, generator {(u, v)}"
                    )
            c = coords[expect_at]
            if constant is None:
                constant = c
            elif c != constant:
                raise AssertionError(
                    f"generator-dependent factor at k={k}: {c} vs {constant}"
                )
    if constant is None or constant <= 0:
        raise AssertionError(f"no positive global factor at k={k}")
    return constant


def _map_pair_letters(d, f):
    return {tuple((vl, f(rl)) for vl, rl in w): c for w, c in d.items()}


def _decompose(target, basis_vectors):
    """Coordinates of target in the span of basis_vectors, via one
    rational elimination on the stacked columns; raises if not in the
    span or if the basis is degenerate."""
    words = sorted(set().union(target, *basis_vectors))
    ncols = len(basis_vectors) + 1
    rows = []
    for w in words:
        row = {
            j: Fraction(vec.get(w, 0))
            for j, vec in enumerate(basis_vectors)
            if vec.get(w, 0)
        }
        if target.get(w, 0):
            row[ncols - 1] = Fraction(target[w])
        rows.append(row)
    kernel = nullspace(rows, ncols)
    solutions = [vec for vec in kernel if vec[-1] != 0]
    if len(solutions) != 1 or len(kernel) != 1:
        raise AssertionError("decomposition not unique; embedding degenerate")
    vec = solutions[0]
    scale = -1 / vec[-1]
    return [c * scale for c in vec[:-1]]
