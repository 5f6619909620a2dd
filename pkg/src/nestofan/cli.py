"""Command line entry point.

Exit codes: 0 when the command succeeds and every check passes, 1 when a
check fails (the report is still written), 2 on input errors.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from pathlib import Path

from . import io
from .geometry import Fan, FanError, f_vector, fan_equal, is_unimodular, simplex_fan, validate_fan
from .moduli import (
    as_plain,
    b_A,
    blowup_fan,
    check_lemma_join,
    is_toric_chamber,
    lm_fan,
    lm_weights,
    product_fan_symmetries,
    sym_fan,
    unmatched_singletons,
    validate_weight,
    verify_thm3_part1,
    verify_thm3_part2,
)
from .nesto import (
    OVER_POLYTOPE,
    complete_building_set,
    minkowski_nestohedron_oracle,
    nested_fan,
    order_independence_check,
    sym_building_set,
    validate_building_set,
)
from .render import render_svg

BUDGET_ENV = "NESTOFAN_BUDGET_MS"


class InputError(Exception):
    pass


def _read(path: str | None, what: str) -> str:
    if not path:
        raise InputError(f"--{what} FILE is required")
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _load_building_set(args):
    b = io.loads_building_set(_read(args.building_set, "building-set"))
    problems = validate_building_set(b)
    if problems:
        raise InputError("invalid building set: " + "; ".join(problems))
    return b


def _load_weights(args, *, toric: bool = True):
    a = io.loads_weight(_read(args.weights, "weights"))
    if not validate_weight(a):
        raise InputError("weight vector violates the bounds w_i <= a_i <= 1")
    if toric and not is_toric_chamber(a):
        raise InputError("weight vector is not in the toric chamber")
    return a


def _require_dn(args) -> tuple[int, int]:
    if args.d is None or args.n is None:
        raise InputError("--d and --n are required")
    if args.d < 1 or args.n <= args.d + 2:
        raise InputError("requires n > d+2")
    return args.d, args.n


def _emit(args, text: str) -> None:
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _emit_fan(args, fan: Fan) -> int:
    if args.format == "svg":
        _emit(args, render_svg(fan))
    else:
        _emit(args, io.dumps_fan(fan))
    return 0


def _emit_report(args, report: dict) -> int:
    _emit(args, io.dumps(report))
    return 0 if io.report_passed(report) else 1


def _fan_checks(fan: Fan) -> list[dict]:
    problems = validate_fan(fan)
    return [
        {"name": "valid_fan", "pass": not problems, "detail": "; ".join(problems[:5])},
        {"name": "unimodular", "pass": is_unimodular(fan), "detail": ""},
    ]


# ---------------------------------------------------------------------------
# commands


def cmd_simplex_fan(args) -> int:
    if args.ground:
        ground = [io.label_from_str(x) for x in args.ground.split(",")]
    elif args.n:
        ground = list(range(1, args.n + 1))
    else:
        raise InputError("--ground LABELS or --n M is required")
    return _emit_fan(args, simplex_fan(ground))


def cmd_nested_fan(args) -> int:
    return _emit_fan(args, nested_fan(_load_building_set(args)))


def cmd_symprod(args) -> int:
    if args.d is None or args.d < 1:
        raise InputError("--d must be a positive integer")
    b = _load_building_set(args)
    if b.mode == OVER_POLYTOPE:
        raise InputError("symprod takes a plain building set")
    return _emit_fan(args, sym_fan(b, args.d))


def cmd_lm_fan(args) -> int:
    d, n = _require_dn(args)
    return _emit_fan(args, lm_fan(d, n))


def cmd_blowup_fan(args) -> int:
    return _emit_fan(args, blowup_fan(_load_weights(args)))


def _thm1_report(d: int, n: int) -> dict:
    lhs = blowup_fan(lm_weights(d, n))
    rhs = sym_fan(complete_building_set(range(d + 2, n + 1)), d)
    checks = [{"name": "blowup_equals_symmetric_product", "pass": fan_equal(lhs, rhs),
               "detail": f"f_vector {list(f_vector(lhs))} vs {list(f_vector(rhs))}"}]
    checks += _fan_checks(lhs)
    return io.make_report({"theorem": 1, "d": d, "n": n}, checks)


def _thm2_report(a) -> dict:
    lhs = blowup_fan(a)
    rhs = sym_fan(as_plain(b_A(a)), a.d)
    missing = unmatched_singletons(a)
    detail = f"f_vector {list(f_vector(lhs))} vs {list(f_vector(rhs))}"
    if missing:
        detail += f"; singletons {missing} have a_(d+1) + a_i <= 1 but are duplicated by the symmetric product"
    checks = [{"name": "blowup_equals_symmetric_product", "pass": fan_equal(lhs, rhs), "detail": detail}]
    checks += _fan_checks(lhs)
    return io.make_report({"theorem": 2, **io.weight_to_json(a)}, checks)


def _lemma_report(fan: Fan, instance: dict, m: int | None = None, d: int | None = None) -> dict:
    syms = product_fan_symmetries(fan, m, d) if m and d else []
    res = check_lemma_join(fan, syms)
    detail = (f"{res.cones} cones, {res.representatives} orbit representatives, "
              f"{res.pairs} pairs covered by the {res.method} method")
    if res.failures:
        detail += f"; first failure {res.failures[0]}"
    return io.make_report(instance, [{"name": "orbit_closure_intersection", "pass": res.ok, "detail": detail}])


def cmd_verify(args) -> int:
    what = args.what
    if what == "thm1":
        d, n = _require_dn(args)
        return _emit_report(args, _thm1_report(d, n))
    if what == "thm2":
        return _emit_report(args, _thm2_report(_load_weights(args)))
    if what == "thm3":
        a = _load_weights(args)
        report = verify_thm3_part1(a)
        checks = list(report["checks"])
        if not (a.d == 1 and a.n == 3):
            checks.append({"name": "nested_fan_between_simplex_and_permutohedral",
                           "pass": verify_thm3_part2(a), "detail": ""})
        return _emit_report(args, io.make_report(report["instance"], checks))
    if what == "lemma":
        if args.fan:
            fan = io.loads_fan(_read(args.fan, "fan"))
            problems = validate_fan(fan)
            if problems:
                raise InputError("invalid fan: " + "; ".join(problems[:3]))
            return _emit_report(args, _lemma_report(fan, {"fan": args.fan}))
        d, n = _require_dn(args)
        return _emit_report(args, _lemma_report(lm_fan(d, n), {"d": d, "n": n}, n - d - 1, d))
    if what == "order":
        b = _load_building_set(args)
        ok = order_independence_check(b, trials=args.trials, seed=args.seed)
        return _emit_report(args, io.make_report({"building_set": args.building_set}, [
            {"name": "order_independence", "pass": ok, "detail": f"seed {args.seed}"}]))
    if what == "oracle":
        b = _load_building_set(args)
        if b.mode == OVER_POLYTOPE:
            raise InputError("the oracle takes a plain building set")
        try:
            oracle = minkowski_nestohedron_oracle(b, seed=args.seed)
        except FanError as exc:
            raise InputError(str(exc)) from None
        ok = fan_equal(oracle, nested_fan(b))
        return _emit_report(args, io.make_report({"building_set": args.building_set}, [
            {"name": "minkowski_oracle_matches_nested_fan", "pass": ok,
             "detail": f"f_vector {list(f_vector(oracle))}"}]))
    raise InputError(f"unknown verification {what!r}")  # pragma: no cover


def cmd_render(args) -> int:
    fan = io.loads_fan(_read(args.fan, "fan"))
    try:
        _emit(args, render_svg(fan))
    except FanError as exc:
        raise InputError(str(exc)) from None
    return 0


def _parse_range(text: str | None) -> list[int]:
    if text is None or not text.strip():
        return []
    out = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            lo, hi = part.split("..")
            out.extend(range(int(lo), int(hi) + 1))
        elif part:
            out.append(int(part))
    return sorted(set(out))


def estimate_ms(d: int, n: int) -> float:
    """Rough cost of one sweep instance in milliseconds.

    Fitted to single-core timings on the 1 <= d <= 3, n <= 8 grid, where each
    step in n multiplies the cost by roughly 12 to 20; it errs high.
    """
    return 2.0 * 17.0 ** max(0, n - 5)


def sweep(ds: list[int], ns: list[int], *, seed: int = 0, timing: bool = False) -> dict:
    instances = []
    for d in ds:
        for n in ns:
            if n <= d + 2:
                continue
            start = time.perf_counter()
            lm = lm_fan(d, n)
            thm1 = fan_equal(lm, sym_fan(complete_building_set(range(d + 2, n + 1)), d))
            lemma = check_lemma_join(lm, product_fan_symmetries(lm, n - d - 1, d))
            order = order_independence_check(
                sym_building_set(complete_building_set(range(d + 2, n + 1)), d), seed=seed)
            entry = {
                "d": d, "n": n,
                "f_vector": list(f_vector(lm)),
                "checks": [
                    {"name": "thm1", "pass": thm1, "detail": ""},
                    {"name": "lemma_join", "pass": lemma.ok,
                     "detail": f"{lemma.cones} cones, {lemma.method} method"},
                    {"name": "order_independence", "pass": order, "detail": f"seed {seed}"},
                ],
            }
            if timing:
                entry["ms"] = round(1000 * (time.perf_counter() - start), 1)
            instances.append(entry)
    return {
        "instances": instances,
        "pass": all(c["pass"] for inst in instances for c in inst["checks"]),
    }


def cmd_sweep(args) -> int:
    try:
        ds, ns = _parse_range(args.d_range), _parse_range(args.n_range)
    except ValueError:
        raise InputError("ranges are comma lists of integers or a..b") from None
    budget = os.environ.get(BUDGET_ENV)
    if budget:
        try:
            budget_ms = float(budget)
        except ValueError:
            raise InputError(f"{BUDGET_ENV} must be a number of milliseconds") from None
        est = sum(estimate_ms(d, n) for d in ds for n in ns if n > d + 2)
        if est > budget_ms:
            raise InputError(f"sweep estimated at {est:.0f} ms exceeds budget {budget_ms:.0f} ms")
    report = sweep(ds, ns, seed=args.seed, timing=args.timing)
    _emit(args, io.dumps(report))
    return 0 if report["pass"] else 1


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nestofan", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, *, fmt=False):
        p.add_argument("--out", help="write output to FILE instead of stdout")
        p.add_argument("--seed", type=int, default=0)
        if fmt:
            p.add_argument("--format", choices=("json", "svg"), default="json")

    p = sub.add_parser("simplex-fan", help="normal fan of a simplex")
    p.add_argument("--ground", help="comma-separated labels")
    p.add_argument("--n", type=int, help="use labels 1..N")
    common(p, fmt=True)
    p.set_defaults(func=cmd_simplex_fan)

    p = sub.add_parser("nested-fan", help="nested fan of a building set")
    p.add_argument("--building-set")
    common(p, fmt=True)
    p.set_defaults(func=cmd_nested_fan)

    p = sub.add_parser("symprod", help="fan of the d-th symmetric product")
    p.add_argument("--building-set")
    p.add_argument("--d", type=int)
    common(p, fmt=True)
    p.set_defaults(func=cmd_symprod)

    p = sub.add_parser("lm-fan", help="Losev-Manin fan for given d, n")
    p.add_argument("--d", type=int)
    p.add_argument("--n", type=int)
    common(p, fmt=True)
    p.set_defaults(func=cmd_lm_fan)

    p = sub.add_parser("blowup-fan", help="fan of the weighted blow-up")
    p.add_argument("--weights")
    common(p, fmt=True)
    p.set_defaults(func=cmd_blowup_fan)

    p = sub.add_parser("verify", help="run a verification and write a JSON report")
    p.add_argument("what", choices=("thm1", "thm2", "thm3", "lemma", "order", "oracle"))
    p.add_argument("--d", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--weights")
    p.add_argument("--building-set")
    p.add_argument("--fan")
    p.add_argument("--trials", type=int, default=100)
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("render", help="SVG of a rank-2 fan and its dual polygon")
    p.add_argument("--fan")
    common(p)
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("sweep", help="verify theorem 1, the join lemma and order independence on a grid")
    p.add_argument("--d", dest="d_range", help="e.g. 1,2 or 1..3")
    p.add_argument("--n", dest="n_range", help="e.g. 5,6 or 5..8")
    p.add_argument("--timing", action="store_true", help="include per-instance milliseconds")
    common(p)
    p.set_defaults(func=cmd_sweep)
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (InputError, ValueError, FanError) as exc:
        print(f"nestofan: error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
