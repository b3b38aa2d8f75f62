"""Command-line driver.

    niho13 verify --p 13 --n 3 --i 0 --all
    niho13 distribution --p 7 --n 5 --i 0 --format csv
    niho13 periods --p 7 --n 2

Exit status of ``verify``: 0 when every check passes, 1 on any mismatch,
2 on invalid parameters.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time

from . import closed_form, codes, cyclotomy, sequences
from .field import DEFAULT_MAX_Q, FieldError, build_field
from .parallel import default_workers
from .parameters import ParameterError, is_prime, validate_params
from .report import SCHEMA, VerifyConfig, default_tol, match_predictions, params_json, verify

EXIT_OK, EXIT_MISMATCH, EXIT_INVALID = 0, 1, 2


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, required=True)
    common.add_argument("--n", type=int, required=True)
    common.add_argument("--i", type=int, default=0)
    common.add_argument("--workers", type=int, default=None,
                        help="worker processes (default: $NIHO13_WORKERS or 1)")
    common.add_argument("--tol", type=float, default=None,
                        help="absolute matching tolerance (default 1e-6 * p^(n/2))")
    common.add_argument("--max-q", type=int, default=DEFAULT_MAX_Q)
    common.add_argument("--format", choices=("json", "csv", "text"), default="text")
    common.add_argument("--out", default=None, help="write the report here instead of stdout")
    common.add_argument("--timings", action="store_true", help="print phase timings to stderr")

    ap = argparse.ArgumentParser(prog="niho13", description=__doc__.split("\n")[0])
    sub = ap.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", parents=[common], help="brute force vs closed forms")
    v.add_argument("--skip-codes", action="store_true")
    v.add_argument("--all", action="store_true",
                   help="also cyclotomy, Gaussian periods, partition oracle and triple sums")
    for name, text in [
        ("distribution", "cross-correlation distribution"),
        ("periods", "Gaussian periods"),
        ("cyclotomy", "cyclotomic pair counts"),
        ("quad", "quadratic partition, theta, E and O"),
        ("code-weights", "weight enumerator of C_{1,d}"),
        ("emit-sequence", "the m-sequence and its decimation"),
    ]:
        sub.add_parser(name, parents=[common], help=text)
    return ap


def _field_only(args):
    """Commands that only need F_{p^n}: any prime p = 1 (mod 3), any n >= 1."""
    if not is_prime(args.p) or args.p % 3 != 1 or args.n < 1:
        raise ParameterError(f"need a prime p = 1 (mod 3) and n >= 1, got p={args.p}, n={args.n}")
    return build_field(args.p, args.n, max_q=args.max_q)


def _emit(args, payload: dict, text: str, csv_text: str | None = None) -> None:
    if args.format == "json":
        out = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    elif args.format == "csv":
        out = csv_text if csv_text is not None else text
    else:
        out = text
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def _rows_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def cmd_verify(args) -> int:
    params = validate_params(args.p, args.n, args.i)
    cfg = VerifyConfig(workers=args.workers, tol=args.tol, max_q=args.max_q,
                       codes=not args.skip_codes, extended=args.all)
    report, ok, timings = verify(params, cfg)
    lines = [f"(p, n, i) = ({params.p}, {params.n}, {params.i})  d = {params.d}  {params.case.value}"]
    for name, check in report["checks"].items():
        status = check.get("ok", check.get("matches", check.get("verdict") == "Verified"))
        lines.append(f"  {name:16s} {'PASS' if status else 'FAIL'}")
    lines.append(report["verdict"])
    rows = [[name, bool(c.get("ok", c.get("matches", c.get("verdict") == "Verified")))]
            for name, c in report["checks"].items()]
    _emit(args, report, "\n".join(lines) + "\n", _rows_csv(["check", "ok"], rows))
    if args.timings:
        for phase, secs in timings.items():
            print(f"{phase}: {secs:.3f}s", file=sys.stderr)
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_distribution(args) -> int:
    params = validate_params(args.p, args.n, args.i)
    ctx = build_field(params.p, params.n, max_q=args.max_q)
    t0 = time.perf_counter()
    dist = sequences.cross_corr_distribution(ctx, params.d, workers=args.workers)
    quad = closed_form.solve_quad_partition(ctx)
    tol = args.tol if args.tol is not None else default_tol(params.p, params.n)
    match = match_predictions(dist, closed_form.correlation_table(params, quad), tol)
    payload = {"schema": SCHEMA, "command": "distribution", "params": params_json(params),
               "observed": dist.to_json(), "match": match.to_json()}
    rows = []
    text = []
    for value, freq in dist.sorted_items():
        m = value.as_integer()
        z = value.eval_numeric().real
        rows.append([m if m is not None else repr(z), freq])
        text.append(f"{(str(m) if m is not None else f'{z:.9f}'):>20s}  {freq}")
    text.append(f"match: {match.verdict.value}")
    _emit(args, payload, "\n".join(text) + "\n", _rows_csv(["value", "frequency"], rows))
    if args.timings:
        print(f"distribution: {time.perf_counter() - t0:.3f}s", file=sys.stderr)
    return EXIT_OK


def cmd_periods(args) -> int:
    ctx = _field_only(args)
    quad = closed_form.solve_quad_partition(ctx)
    periods = cyclotomy.gaussian_periods(ctx)
    obs = cyclotomy.observed_period_sets(periods)
    pred = cyclotomy.closed_period_sets(quad, args.n)
    payload = {"schema": SCHEMA, "command": "periods", "p": args.p, "n": args.n,
               "three_eta": [x.to_json() for x in periods.three_eta],
               "numeric": list(periods.numeric), "observed_sets": obs, "closed_sets": pred}
    text = [f"eta_{j} = {e:.12f}" for j, e in enumerate(periods.numeric)]
    text += [f"{k}: gap {cyclotomy.multiset_distance(obs[k], pred[k]):.3e}" for k in obs]
    rows = [[j, e] for j, e in enumerate(periods.numeric)]
    _emit(args, payload, "\n".join(text) + "\n", _rows_csv(["j", "eta"], rows))
    return EXIT_OK


def cmd_cyclotomy(args) -> int:
    ctx = _field_only(args)
    quad = closed_form.solve_quad_partition(ctx)
    brute = cyclotomy.count_cij_brute(ctx)
    closed = cyclotomy.closed_cij(quad, args.n)
    payload = {"schema": SCHEMA, "command": "cyclotomy", "p": args.p, "n": args.n,
               "brute": brute.to_json(), "closed": closed.to_json(), "ok": brute == closed}
    rows = [[i, j, brute[i, j], closed[i, j]] for i in range(3) for j in range(3)]
    text = [f"C[{i},{j}] = {b} (closed {c})" for i, j, b, c in rows]
    _emit(args, payload, "\n".join(text) + "\n", _rows_csv(["i", "j", "brute", "closed"], rows))
    return EXIT_OK if brute == closed else EXIT_MISMATCH


def cmd_quad(args) -> int:
    ctx = _field_only(args)
    quad = closed_form.solve_quad_partition(ctx)
    E = closed_form.eval_E(quad.u, quad.v, args.n)
    O = closed_form.eval_O(quad.u, quad.v, args.n)
    payload = {"schema": SCHEMA, "command": "quad", "p": args.p, "n": args.n, "omega_p": quad.omega_p,
               "u": quad.u, "v": quad.v, "theta": quad.theta, "E": str(E), "O": str(O)}
    text = f"omega = {quad.omega_p}  u = {quad.u}  v = {quad.v}  theta = {quad.theta!r}\nE = {E}  O = {O}\n"
    _emit(args, payload, text, _rows_csv(["u", "v", "theta", "E", "O"], [[quad.u, quad.v, quad.theta, E, O]]))
    return EXIT_OK


def cmd_code_weights(args) -> int:
    params = validate_params(args.p, args.n, args.i)
    ctx = build_field(params.p, params.n, max_q=args.max_q)
    quad = closed_form.solve_quad_partition(ctx)
    brute = codes.weight_distribution_brute(ctx, params.d, workers=args.workers, max_q=args.max_q)
    cmp = codes.compare_weights(brute, closed_form.weight_table(params, quad))
    payload = {"schema": SCHEMA, "command": "code-weights", "params": params_json(params),
               "observed": brute.to_json(), **cmp.to_json()}
    text = [f"{w:>10d}  {c}" for w, c in sorted(brute.weights.items())]
    text += [f"mismatch at weight {w}: observed {o}, predicted {p_}, witness {wit}"
             for w, o, p_, wit in cmp.mismatches]
    _emit(args, payload, "\n".join(text) + "\n", brute.to_csv())
    return EXIT_OK if cmp.matches else EXIT_MISMATCH


def cmd_emit_sequence(args) -> int:
    params = validate_params(args.p, args.n, args.i)
    ctx = build_field(params.p, params.n, max_q=args.max_q)
    s = sequences.m_sequence(ctx)
    s2 = sequences.decimated_sequence(ctx, params.d)
    payload = {"schema": SCHEMA, "command": "emit-sequence", "params": params_json(params),
               "s": s.tolist(), "s_decimated": s2.tolist()}
    rows = [[t, int(a), int(b)] for t, (a, b) in enumerate(zip(s, s2))]
    text = "s : " + "".join(map(str, s.tolist())) + "\ns': " + "".join(map(str, s2.tolist())) + "\n"
    _emit(args, payload, text, _rows_csv(["t", "s", "s_decimated"], rows))
    return EXIT_OK


COMMANDS = {
    "verify": cmd_verify,
    "distribution": cmd_distribution,
    "periods": cmd_periods,
    "cyclotomy": cmd_cyclotomy,
    "quad": cmd_quad,
    "code-weights": cmd_code_weights,
    "emit-sequence": cmd_emit_sequence,
}


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    if args.workers is None:
        args.workers = default_workers()
    try:
        return COMMANDS[args.command](args)
    except (ParameterError, FieldError) as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
