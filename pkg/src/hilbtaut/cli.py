"""Command-line front end: batch chi tables, kernel and graded dimensions,
Toeplitz and representation queries, and the verification suites.

Machine-readable by default in spirit: every command renders to csv, json
or text from the same computed payload, enumeration orders are fixed by
the library, and randomized sweeps take an explicit seed which is echoed
back in the output.  Identical invocations produce identical bytes, with
the one caveat that verification reports carry wall-clock timings.

Exit codes: 0 success, 1 verification failure, 2 usage or config error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import factorial

from .combinat import (
    orbits,
    quotient_A,
    quotient_A0,
    quotient_B,
    stabilizer_order,
)
from .linalg import leading_principal_minors
from .rroch import (
    BUILTIN_SURFACES,
    chi_graded_piece_n2,
    chi_sym_power,
    chi_sym_power_n2,
    chi_sym_power_smallk,
    get_surface,
    load_surface,
)
from .symrep import antiinv_dims_R, antiinv_dims_rho, verify_omega, verify_sym_map
from .tautops import (
    EXPONENT_RULES,
    graded_dims,
    kernel_nullity,
    verify_filtration,
    verify_invariant_local_formula,
    verify_recursion,
    verify_transition,
)
from .toeplitz import column_rank, det_exact, r_matrix, t_even, t_odd

SUITES = (
    "all",
    "toeplitz",
    "reps",
    "recursion",
    "chi-consistency",
    "kernel-vs-graded",
    "combinatorics",
)

FORMATS = ("text", "csv", "json")


class UsageError(Exception):
    """Bad parameters or config; maps to exit code 2."""


@dataclass(frozen=True)
class RunConfig:
    """Everything a command needs, validated before dispatch."""

    command: str
    fmt: str = "text"
    surface: str = "p2"
    n: int | None = None
    k: int | None = None
    max_degree: int | None = None
    l: int | None = None
    j: int | None = None
    m: int | None = None
    L: tuple[tuple[int, ...], ...] = ()
    A: tuple[tuple[int, ...], ...] = ()
    invariant: bool = True
    exploratory: bool = False
    kind: str = "T"
    parity: str = "even"
    show: str = "det"
    rule: str = "uniform_2m_mu"
    suite: str = "all"
    seed: int = 0

    def validate(self) -> None:
        if self.fmt not in FORMATS:
            raise UsageError(f"format must be one of {FORMATS}")
        for name in ("n", "k", "max_degree", "l", "j"):
            value = getattr(self, name)
            if value is not None and value < 0:
                raise UsageError(f"--{name.replace('_', '-')} must be nonnegative")
        if self.n is not None and self.n == 0:
            raise UsageError("--n must be at least 1")
        if self.m is not None and self.m < 1:
            raise UsageError("--m must be at least 1")
        if self.suite not in SUITES:
            raise UsageError(f"suite must be one of {SUITES}")
        if self.rule not in EXPONENT_RULES:
            raise UsageError(f"rule must be one of {EXPONENT_RULES}")

    def in_proven_range(self) -> bool:
        return (self.n is not None and self.n <= 2) or (
            self.k is not None and self.k <= 4
        )


# ---------------------------------------------------------------------------
# small rendering helpers


def _vec_str(v) -> str:
    return ":".join(str(x) for x in v)


def _parse_vec(text: str) -> tuple[int, ...]:
    parts = text.replace(",", ":").split(":")
    try:
        return tuple(int(p) for p in parts)
    except ValueError:
        raise UsageError(f"bad bundle vector {text!r}; want ints joined by ':'")


def _series(dims) -> str:
    terms = []
    for q, c in enumerate(dims):
        if not c:
            continue
        if q == 0:
            terms.append(str(c))
        elif q == 1:
            terms.append(f"{c} t")
        else:
            terms.append(f"{c} t^{q}")
    return " + ".join(terms) if terms else "0"


def _emit(cfg: RunConfig, payload: dict, text_lines, csv_lines) -> None:
    if cfg.fmt == "json":
        print(json.dumps(payload, indent=2))
    elif cfg.fmt == "csv":
        print("\n".join(csv_lines))
    else:
        print("\n".join(text_lines))


def _load(cfg: RunConfig):
    if cfg.surface in BUILTIN_SURFACES:
        return get_surface(cfg.surface)
    try:
        return load_surface(cfg.surface)
    except OSError as exc:
        raise UsageError(f"cannot read surface model: {exc}")
    except (ValueError, KeyError, json.JSONDecodeError) as exc:
        raise UsageError(f"bad surface model {cfg.surface!r}: {exc}")


def _require(cfg: RunConfig, *names: str) -> None:
    for name in names:
        if getattr(cfg, name) is None:
            raise UsageError(f"--{name.replace('_', '-')} is required")


def _gate_range(cfg: RunConfig) -> None:
    if not cfg.in_proven_range() and not cfg.exploratory:
        raise UsageError(
            f"(n, k) = ({cfg.n}, {cfg.k}) is outside the established range "
            "(n <= 2 or k <= 4); pass --exploratory to compute anyway"
        )


# ---------------------------------------------------------------------------
# table commands


def cmd_chi(cfg: RunConfig) -> int:
    _require(cfg, "n", "k")
    if not cfg.L or not cfg.A:
        raise UsageError("--L and --A are required (repeat for a batch)")
    s = _load(cfg)
    graded = cfg.n == 2
    half = (cfg.k or 0) // 2
    header = "surface,n,k,L,A,chi"
    if graded:
        header += "," + ",".join(f"gr_{j}" for j in range(half + 1))
    rows = []
    for L in cfg.L:
        for A in cfg.A:
            try:
                value = chi_sym_power(s, cfg.n, cfg.k, L, A)
            except ValueError as exc:
                raise UsageError(str(exc))
            row = {
                "surface": s.name,
                "n": cfg.n,
                "k": cfg.k,
                "L": list(L),
                "A": list(A),
                "chi": value,
            }
            if graded:
                row["gr"] = [
                    chi_graded_piece_n2(s, cfg.k, j, L, A) for j in range(half + 1)
                ]
            rows.append(row)
    csv_lines = [header]
    text_lines = []
    for row in rows:
        cells = [
            row["surface"],
            str(row["n"]),
            str(row["k"]),
            _vec_str(row["L"]),
            _vec_str(row["A"]),
            str(row["chi"]),
        ]
        if graded:
            cells.extend(str(g) for g in row["gr"])
        csv_lines.append(",".join(cells))
        line = (
            f"{row['surface']} n={row['n']} k={row['k']} "
            f"L={_vec_str(row['L'])} A={_vec_str(row['A'])} chi={row['chi']}"
        )
        if graded:
            line += " gr=" + _vec_str(row["gr"])
        text_lines.append(line)
    _emit(cfg, {"command": "chi", "rows": rows}, text_lines, csv_lines)
    return 0


def cmd_kernel(cfg: RunConfig) -> int:
    _require(cfg, "n", "k", "max_degree")
    _gate_range(cfg)
    dims = kernel_nullity(cfg.n, cfg.k, cfg.max_degree, invariant=cfg.invariant)
    payload = {
        "command": "kernel",
        "n": cfg.n,
        "k": cfg.k,
        "max_degree": cfg.max_degree,
        "invariant": cfg.invariant,
        "cumulative": list(dims),
    }
    if not cfg.in_proven_range():
        payload["conjectural"] = True
    mode = "invariant" if cfg.invariant else "full"
    text = (
        f"kernel n={cfg.n} k={cfg.k} {mode} cumulative by degree: {list(dims)}"
    )
    if not cfg.in_proven_range():
        text += " (conjectural)"
    header = "n,k,invariant," + ",".join(
        f"deg_{d}" for d in range(cfg.max_degree + 1)
    )
    row = ",".join(
        [str(cfg.n), str(cfg.k), str(int(cfg.invariant))]
        + [str(d) for d in dims]
    )
    _emit(cfg, payload, [text], [header, row])
    return 0


def cmd_graded(cfg: RunConfig) -> int:
    _require(cfg, "n", "k", "max_degree")
    _gate_range(cfg)
    pieces = graded_dims(cfg.n, cfg.k, cfg.max_degree, exponent_rule=cfg.rule)
    totals = [
        sum(dims[d] for dims in pieces.values())
        for d in range(cfg.max_degree + 1)
    ]
    payload = {
        "command": "graded",
        "n": cfg.n,
        "k": cfg.k,
        "max_degree": cfg.max_degree,
        "rule": cfg.rule,
        "pieces": [
            {"mu": list(mu), "cumulative": list(dims)}
            for mu, dims in pieces.items()
        ],
        "totals": totals,
    }
    if not cfg.in_proven_range():
        payload["conjectural"] = True
    header = "mu," + ",".join(f"deg_{d}" for d in range(cfg.max_degree + 1))
    csv_lines = [header]
    text_lines = [f"graded pieces n={cfg.n} k={cfg.k} rule={cfg.rule}"]
    for mu, dims in pieces.items():
        csv_lines.append(_vec_str(mu) + "," + ",".join(str(d) for d in dims))
        text_lines.append(f"  mu={_vec_str(mu)}: {list(dims)}")
    csv_lines.append("total," + ",".join(str(t) for t in totals))
    text_lines.append(f"  total: {totals}")
    if not cfg.in_proven_range():
        text_lines.append("  (conjectural)")
    _emit(cfg, payload, text_lines, csv_lines)
    return 0


def cmd_toeplitz(cfg: RunConfig) -> int:
    if cfg.kind == "T":
        _require(cfg, "n", "m")
        matrix = t_even(cfg.n, cfg.m) if cfg.parity == "even" else t_odd(cfg.n, cfg.m)
        payload = {
            "command": "toeplitz",
            "kind": "T",
            "parity": cfg.parity,
            "n": cfg.n,
            "m": cfg.m,
        }
        if cfg.show == "minors":
            minors = leading_principal_minors(matrix)
            payload["minors"] = minors
            value_text = f"minors = {minors}"
            csv_lines = [
                "kind,parity,n,m,minors",
                f"T,{cfg.parity},{cfg.n},{cfg.m},{_vec_str(minors)}",
            ]
        else:
            det = det_exact(matrix)
            payload["det"] = det
            value_text = f"det = {det}"
            csv_lines = [
                "kind,parity,n,m,det",
                f"T,{cfg.parity},{cfg.n},{cfg.m},{det}",
            ]
        text = [f"T_{cfg.parity}({cfg.n}, {cfg.m}): {value_text}"]
        _emit(cfg, payload, text, csv_lines)
        return 0
    _require(cfg, "l", "k", "j")
    try:
        matrix = r_matrix(cfg.l, cfg.k, cfg.j)
    except ValueError as exc:
        raise UsageError(str(exc))
    rank = column_rank(matrix)
    payload = {
        "command": "toeplitz",
        "kind": "R",
        "l": cfg.l,
        "k": cfg.k,
        "j": cfg.j,
        "rank": rank,
        "cols": len(matrix[0]),
    }
    text = [f"R({cfg.l}, {cfg.k}, {cfg.j}): rank = {rank} of {len(matrix[0])} columns"]
    csv_lines = ["kind,l,k,j,rank,cols", f"R,{cfg.l},{cfg.k},{cfg.j},{rank},{len(matrix[0])}"]
    _emit(cfg, payload, text, csv_lines)
    return 0


def cmd_reps(cfg: RunConfig) -> int:
    _require(cfg, "k")
    if cfg.k < 1:
        raise UsageError("--k must be at least 1")
    rho = antiinv_dims_rho(cfg.k)
    full = antiinv_dims_R(cfg.k)
    payload = {
        "command": "reps",
        "k": cfg.k,
        "rho": {"dims": list(rho), "series": _series(rho)},
        "R": {"dims": list(full), "series": _series(full)},
    }
    text = [
        f"anti-invariants of wedge^q(V x rho_{cfg.k}): {_series(rho)}",
        f"anti-invariants of wedge^q(V x R_{cfg.k}): {_series(full)}",
    ]
    csv_lines = [
        "summand,dims",
        f"rho,{_vec_str(rho)}",
        f"R,{_vec_str(full)}",
    ]
    _emit(cfg, payload, text, csv_lines)
    return 0


# ---------------------------------------------------------------------------
# verification suites

# each case is (key, thunk); thunks return a detail dict and raise on
# failure, so a suite result is reproducible and sortable by key


def _suite_toeplitz(cfg: RunConfig):
    cases = []
    for n in range(1, 7):
        def check_even(n=n):
            for m in range(1, 13):
                minors = leading_principal_minors(t_even(n, m))
                if any(d <= 0 for d in minors):
                    raise AssertionError(f"nonpositive minor at n={n}, m={m}")
            return {"m_max": 12}

        def check_odd(n=n):
            for m in range(1, 13):
                if det_exact(t_odd(n, m)) == 0:
                    raise AssertionError(f"singular odd matrix at n={n}, m={m}")
            return {"m_max": 12}

        cases.append((f"even minors n={n}", check_even))
        cases.append((f"odd dets n={n}", check_odd))
    for k in range(2, 13):
        def check_ranks(k=k):
            count = 0
            for j in range(1, k // 2 + 1):
                for l in range(0, 2 * j + 1):
                    rank = column_rank(r_matrix(l, k, j))
                    if rank != k - 2 * j + 1:
                        raise AssertionError(f"rank drop at (l,k,j)=({l},{k},{j})")
                    count += 1
                if r_matrix(2 * j, k, j) != t_even(j, k + 1 - 2 * j):
                    raise AssertionError(f"R(2j,k,j) != T_even at (k,j)=({k},{j})")
            return {"rank_checks": count}

        cases.append((f"R ranks k={k}", check_ranks))
    return cases


def _suite_reps(cfg: RunConfig):
    cases = []
    for k in range(1, 8):
        def check_dims(k=k):
            rho = antiinv_dims_rho(k)
            for q, dim in enumerate(rho):
                want = k if q == k - 1 else 0
                if dim != want:
                    raise AssertionError(f"rho_{k} dim {dim} at q={q}, want {want}")
            full = antiinv_dims_R(k)
            for q, dim in enumerate(full):
                want = {k - 1: k, k: 2 * k, k + 1: k}.get(q, 0)
                if dim != want:
                    raise AssertionError(f"R_{k} dim {dim} at q={q}, want {want}")
            return {"q_max": 2 * k}

        cases.append((f"anti-invariant dims k={k}", check_dims))
    for k in range(2, 7):
        def check_omega(k=k):
            if not verify_omega(k):
                raise AssertionError(f"omega recursion failed at k={k}")
            return {}

        cases.append((f"omega recursion k={k}", check_omega))
    for k in (2, 3, 4):
        def check_sym(k=k):
            constant = verify_sym_map(k)
            if constant <= 0:
                raise AssertionError(f"nonpositive sym constant {constant} at k={k}")
            return {"constant": str(constant)}

        cases.append((f"sym map k={k}", check_sym))
    return cases


def _suite_recursion(cfg: RunConfig):
    def check_recursion():
        return {k: v for k, v in verify_recursion(8).items()}

    def check_transition():
        return {k: v for k, v in verify_transition(4).items()}

    def check_local(k):
        constants = verify_invariant_local_formula(k)
        values = set(constants.values())
        if len(values) != 1:
            raise AssertionError(f"local constants disagree at k={k}: {constants}")
        constant = values.pop()
        if constant <= 0:
            raise AssertionError(f"nonpositive local constant {constant} at k={k}")
        return {"constant": str(constant), "operators": sorted(constants)}

    return [
        ("difference recursion l<=8", check_recursion),
        ("rescaling transition l<=4", check_transition),
        ("local formulas k=3", lambda: check_local(3)),
        ("local formulas k=4", lambda: check_local(4)),
    ]


def _suite_chi_consistency(cfg: RunConfig):
    cases = []
    for name in sorted(BUILTIN_SURFACES):
        for k in (3, 4):
            def check(name=name, k=k):
                s = get_surface(name)
                rng = random.Random(f"{cfg.seed}:{name}:{k}")
                checks = 0
                for _ in range(25):
                    L = tuple(rng.randrange(-4, 5) for _ in range(s.rank))
                    A = tuple(rng.randrange(-4, 5) for _ in range(s.rank))
                    two_point = chi_sym_power_n2(s, k, L, A)
                    general = chi_sym_power_smallk(s, 2, k, L, A)
                    if two_point != general:
                        raise AssertionError(
                            f"chi mismatch on {name}, k={k}, L={L}, A={A}: "
                            f"{two_point} != {general}"
                        )
                    checks += 1
                return {"checks": checks}

            cases.append((f"chi routes {name} k={k}", check))
    return cases


def _suite_kernel_vs_graded(cfg: RunConfig):
    cases = []
    for n, k in ((2, 2), (2, 3), (2, 4), (3, 3), (3, 4)):
        degree = cfg.max_degree
        if degree is None:
            degree = 4 if n == 2 else 3
        def check(n=n, k=k, degree=degree):
            report = verify_filtration(n, k, degree)
            if not report.passed:
                raise AssertionError(f"mismatches: {report.mismatches}")
            detail = {
                "max_degree": degree,
                "invariant": list(report.invariant_nullities[-1]),
                "graded_total": list(report.graded_totals()),
            }
            if n == 2 and k == 2 and degree >= 2:
                spot = list(report.invariant_nullities[-1][:3])
                if spot != [1, 5, 18]:
                    raise AssertionError(f"spot vector off: {spot}")
                detail["spot"] = spot
            return detail

        cases.append((f"kernel=graded n={n} k={k}", check))
    return cases


def _suite_combinatorics(cfg: RunConfig):
    cases = []
    for n in range(1, 5):
        for k in range(1, 6):
            def check(n=n, k=k):
                order_h = factorial(k)
                order_gh = factorial(n) * order_h
                checked = 0
                for l in range(0, k + 1):
                    h_orbits = orbits(n, k, l, "H")
                    gh_orbits = orbits(n, k, l, "GxH")
                    if len(quotient_B(k, l, n)) != len(h_orbits):
                        raise AssertionError(f"B count off at l={l}")
                    if len(quotient_A(k, l, n)) != len(gh_orbits):
                        raise AssertionError(f"A count off at l={l}")
                    if 1 <= l <= k - 1:
                        sub = len(quotient_A0(k, l, n))
                        if sub > len(gh_orbits):
                            raise AssertionError(f"A0 exceeds A at l={l}")
                    for orb in h_orbits:
                        if stabilizer_order(orb[0], "H") * len(orb) != order_h:
                            raise AssertionError(f"H stabilizer off at l={l}")
                    for orb in gh_orbits:
                        if stabilizer_order(orb[0], "GxH") * len(orb) != order_gh:
                            raise AssertionError(f"GxH stabilizer off at l={l}")
                    checked += len(h_orbits) + len(gh_orbits)
                return {"orbit_checks": checked}

            cases.append((f"orbit counts n={n} k={k}", check))

    def check_listed():
        if quotient_A0(3, 1, 4) != [((2,), ()), ((1,), (1,))]:
            raise AssertionError("A0(3,1) summands off")
        if quotient_A0(4, 1, 5) != [
            ((3,), ()),
            ((2, 1), ()),
            ((2,), (1,)),
            ((1,), (2,)),
            ((1,), (1, 1)),
        ]:
            raise AssertionError("A0(4,1) summands off")
        return {"sets": 2}

    cases.append(("listed summand sets", check_listed))
    return cases


_SUITE_BUILDERS = {
    "toeplitz": _suite_toeplitz,
    "reps": _suite_reps,
    "recursion": _suite_recursion,
    "chi-consistency": _suite_chi_consistency,
    "kernel-vs-graded": _suite_kernel_vs_graded,
    "combinatorics": _suite_combinatorics,
}


def _run_cases(cases):
    """Run every case, in parallel, and report sorted by case key."""

    def run(pair):
        key, thunk = pair
        start = time.perf_counter()
        try:
            detail = thunk() or {}
            ok = True
        except Exception as exc:
            detail = {"error": str(exc)}
            ok = False
        return key, ok, detail, time.perf_counter() - start

    with ThreadPoolExecutor(max_workers=min(8, max(1, len(cases)))) as pool:
        results = list(pool.map(run, cases))
    results.sort(key=lambda r: r[0])
    return results


def cmd_verify(cfg: RunConfig) -> int:
    if cfg.suite == "all":
        names = [s for s in SUITES if s != "all"]
    else:
        names = [cfg.suite]
    cases = []
    for name in names:
        for key, thunk in _SUITE_BUILDERS[name](cfg):
            cases.append((f"{name}: {key}", thunk))
    results = _run_cases(cases)
    passed = sum(1 for _, ok, _, _ in results if ok)
    failed = len(results) - passed
    payload = {
        "command": "verify",
        "suite": cfg.suite,
        "seed": cfg.seed,
        "cases": [
            {"key": key, "status": "pass" if ok else "fail",
             "seconds": round(sec, 3), **detail}
            for key, ok, detail, sec in results
        ],
        "passed": passed,
        "failed": failed,
        "ok": failed == 0,
    }
    text = []
    csv_lines = ["key,status,seconds"]
    for key, ok, detail, sec in results:
        status = "PASS" if ok else "FAIL"
        line = f"{status} {key} ({sec:.3f}s)"
        if not ok:
            line += f" :: {detail.get('error', '')}"
        text.append(line)
        csv_lines.append(f"{key.replace(',', ';')},{status.lower()},{sec:.3f}")
    text.append(
        f"suite {cfg.suite} [seed {cfg.seed}]: {passed} passed, {failed} failed"
    )
    _emit(cfg, payload, text, csv_lines)
    return 0 if failed == 0 else 1


# ---------------------------------------------------------------------------
# argument parsing


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hilbtaut",
        description="Exact tables and checks for symmetric powers of "
        "tautological bundles.",
    )
    fmt_parent = argparse.ArgumentParser(add_help=False)
    fmt_parent.add_argument(
        "--format", default="text", choices=FORMATS, dest="fmt",
        help="output format (default text)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_chi = sub.add_parser("chi", help="Euler characteristic table",
                           parents=[fmt_parent])
    p_chi.add_argument("--surface", default="p2",
                       help="builtin name or JSON model path")
    p_chi.add_argument("--n", type=int, required=True)
    p_chi.add_argument("--k", type=int, required=True)
    p_chi.add_argument("--L", action="append", required=True,
                       help="line bundle class, ints joined by ':' (repeatable)")
    p_chi.add_argument("--A", action="append", required=True,
                       help="twist class, same shape as --L (repeatable)")

    p_ker = sub.add_parser("kernel", help="cumulative kernel dimensions",
        parents=[fmt_parent])
    p_ker.add_argument("--n", type=int, required=True)
    p_ker.add_argument("--k", type=int, required=True)
    p_ker.add_argument("--max-degree", type=int, required=True)
    group = p_ker.add_mutually_exclusive_group()
    group.add_argument("--invariant", action="store_true", default=True,
                       help="symmetric tuples only (default)")
    group.add_argument("--full", dest="invariant", action="store_false",
                       help="all tuples, no symmetry")
    p_ker.add_argument("--exploratory", action="store_true")

    p_gr = sub.add_parser("graded", help="graded piece dimensions",
       parents=[fmt_parent])
    p_gr.add_argument("--n", type=int, required=True)
    p_gr.add_argument("--k", type=int, required=True)
    p_gr.add_argument("--max-degree", type=int, required=True)
    p_gr.add_argument("--rule", default="uniform_2m_mu", choices=EXPONENT_RULES)
    p_gr.add_argument("--exploratory", action="store_true")

    p_toe = sub.add_parser("toeplitz", help="banded binomial matrices",
        parents=[fmt_parent])
    p_toe.add_argument("--kind", default="T", choices=("T", "R"))
    parity = p_toe.add_mutually_exclusive_group()
    parity.add_argument("--even", dest="parity", action="store_const",
                        const="even", default="even")
    parity.add_argument("--odd", dest="parity", action="store_const",
                        const="odd")
    p_toe.add_argument("--n", type=int)
    p_toe.add_argument("--m", type=int)
    p_toe.add_argument("--l", type=int)
    p_toe.add_argument("--k", type=int)
    p_toe.add_argument("--j", type=int)
    what = p_toe.add_mutually_exclusive_group()
    what.add_argument("--det", dest="show", action="store_const",
                      const="det", default="det")
    what.add_argument("--minors", dest="show", action="store_const",
                      const="minors")

    p_reps = sub.add_parser("reps", help="anti-invariant dimension series",
         parents=[fmt_parent])
    p_reps.add_argument("--k", type=int, required=True)

    p_ver = sub.add_parser("verify", help="run a verification suite",
        parents=[fmt_parent])
    p_ver.add_argument("--suite", default="all", choices=SUITES)
    p_ver.add_argument("--seed", type=int, default=0,
                       help="seed for randomized sweeps (echoed in output)")
    p_ver.add_argument("--max-degree", type=int, default=None,
                       help="override the per-case degree in kernel-vs-graded")
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    fields = {"command": args.command, "fmt": args.fmt}
    for name in ("surface", "n", "k", "l", "j", "m", "invariant",
                 "exploratory", "kind", "parity", "show", "rule",
                 "suite", "seed"):
        if hasattr(args, name):
            fields[name] = getattr(args, name)
    if hasattr(args, "max_degree"):
        fields["max_degree"] = args.max_degree
    if getattr(args, "L", None):
        fields["L"] = tuple(_parse_vec(v) for v in args.L)
    if getattr(args, "A", None):
        fields["A"] = tuple(_parse_vec(v) for v in args.A)
    cfg = RunConfig(**fields)
    cfg.validate()
    return cfg


_HANDLERS = {
    "chi": cmd_chi,
    "kernel": cmd_kernel,
    "graded": cmd_graded,
    "toeplitz": cmd_toeplitz,
    "reps": cmd_reps,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config_from_args(args)
        return _HANDLERS[cfg.command](cfg)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
