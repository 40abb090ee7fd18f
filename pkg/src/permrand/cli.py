"""Batch front end.

Exit status: 0 ok, 1 a checked property failed, 2 bad input or a violated
precondition, 3 a brute-force budget was exhausted.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import closure, documents, martingale as mg, scan
from .constructions import bpp, prop_s
from .errors import BudgetExceeded, DescriptorError, PreconditionError
from .rational import format_q

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


def _doc(arg):
    """Inline JSON if it looks like JSON, otherwise a path to a document."""
    if arg is None:
        return None
    text = arg.strip()
    if text[:1] in "{[":
        try:
            return json.loads(text)
        except json.JSONDecodeError as err:
            raise DescriptorError(f"inline document is not valid JSON ({err})") from None
    return documents.load(arg)


def cmd_check(args):
    m = documents.martingale_from_doc(_doc(args.martingale))
    report = mg.fairness_check(m, args.depth)
    return report.to_doc(), report.ok


def cmd_trace(args):
    m = documents.martingale_from_doc(_doc(args.martingale))
    z = documents.oracle_from_doc(_doc(args.sequence))
    return mg.trace_csv(m, z, args.steps), True


def cmd_avg(args):
    G = documents.strategy_from_doc(_doc(args.strategy), args.budget)
    out = {"average": closure.average_report(G, args.w, args.t).to_doc()}
    ok = True
    if args.t2 is not None:
        t1 = args.t if args.t is not None else G.g(len(args.w))
        same = closure.t_independence_check(G, args.w, t1, args.t2)
        out["t_independence"] = {"t1": t1, "t2": args.t2, "ok": same}
        ok &= same
    if args.fairness_depth is not None:
        lemma = closure.fairness_lemma_check(G, args.fairness_depth)
        out["fairness_lemma"] = lemma.to_doc()
        ok &= lemma.ok
    return out, ok


def cmd_fill(args):
    v = documents.scanner_from_doc(_doc(args.scanner))
    g = documents.bound_from_doc(_doc(args.g))
    ns = range(args.n, (args.n_max if args.n_max is not None else args.n) + 1)
    reports = [scan.filling_check(v, g, n, args.budget) for n in ns]
    ok = all(r.ok for r in reports)
    if len(reports) == 1:
        return reports[0].to_doc(), ok
    return {"ok": ok, "reports": [r.to_doc() for r in reports]}, ok


def cmd_path(args):
    L = documents.martingale_from_doc(_doc(args.martingale))
    z = prop_s.leftmost_path(L, args.length)
    trace = [L.value(z[:m]) for m in range(args.length + 1)]
    ok = all(b <= a for a, b in zip(trace, trace[1:]))
    return {"bits": z, "trace": [format_q(v) for v in trace], "non_increasing": ok}, ok


def _alg(args):
    doc = _doc(args.alg)
    return bpp.SyntheticBPP() if doc is None else documents.alg_from_doc(doc)


def cmd_pipeline(args):
    alg = _alg(args)
    b = documents.oracle_from_doc(_doc(args.sequence)) if args.sequence else None
    report = bpp.run_pipeline(alg, args.blocks, b)
    doc = {"alg": alg.to_doc(), **report.to_doc()}
    return doc, report.layout_matches


def cmd_bins(args):
    alg = _alg(args)
    n = args.n
    measure = bpp.bad_block_measure(alg, n, args.budget)
    bound = mg.Fraction(1, 2 ** (2 * n + 1))
    bins = bpp.BinMartingale(alg)
    bad = bins.bad_set(n)
    lo, hi = alg.p.prefix_sum(n), alg.p.prefix_sum(n + 1)
    width = hi - lo
    demo = []
    good = next((y for y in range(2 ** width) if y not in set(bad)), None)
    for label, y in (("bad", bad[0] if bad else None), ("good", good)):
        if y is None:
            continue
        ybits = format(y, f"0{width}b") if width else ""
        x = "0" * lo + ybits
        demo.append({"y": ybits, "kind": label,
                     "bin_capital": format_q(bins.bin_capital(x, n)),
                     "total": format_q(bins.value(x))})
    ok = measure <= bound and alg.certificate_violation(n, args.budget) is None
    return {"n": n, "p_n": alg.p(n), "bad_block_measure": format_q(measure),
            "bound": format_q(bound), "bad_strings": len(bad), "within_bound": measure <= bound,
            "demo": demo}, ok


def cmd_dishonest(args):
    s = prop_s.DishonestPermutation()
    table = [[n, s.forward(n)] for n in range(args.size)]
    witnesses = {str(k): s.witnesses(k, args.size)[: args.max_witnesses]
                 for k in range(args.k_max + 1)}
    ok = scan.check_bijection(s, args.size) is None and all(witnesses.values())
    return {"size": args.size, "pairs": table, "witnesses": witnesses, "bijective": ok}, ok


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="permrand", description=__doc__.splitlines()[0])
    parser.add_argument("-o", "--output", help="write the result here instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="fairness check of a martingale")
    p.add_argument("martingale")
    p.add_argument("--depth", type=int, default=6)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("trace", help="capital along a sequence, as CSV")
    p.add_argument("martingale")
    p.add_argument("--sequence", required=True)
    p.add_argument("--steps", type=int, default=16)
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("avg", help="averaging martingale of a betting strategy")
    p.add_argument("strategy")
    p.add_argument("--w", default="")
    p.add_argument("--t", type=int)
    p.add_argument("--t2", type=int, help="also compare against this larger t")
    p.add_argument("--fairness-depth", type=int)
    p.add_argument("--budget", type=int, default=closure.DEFAULT_BUDGET)
    p.set_defaults(func=cmd_avg)

    p = sub.add_parser("fill", help="g-filling check of a scanner")
    p.add_argument("scanner")
    p.add_argument("--g", required=True, help="polynomial or filling-bound document")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--n-max", type=int)
    p.add_argument("--budget", type=int, default=scan.DEFAULT_BUDGET)
    p.set_defaults(func=cmd_fill)

    p = sub.add_parser("path", help="leftmost non-ascending path")
    p.add_argument("martingale")
    p.add_argument("--length", type=int, default=12)
    p.set_defaults(func=cmd_path)

    p = sub.add_parser("pipeline", help="rearranged-sequence run with bins and predictor")
    p.add_argument("--alg")
    p.add_argument("--sequence", help="sequence supplying the random bits B")
    p.add_argument("--blocks", type=int, default=2)
    p.set_defaults(func=cmd_pipeline)

    p = sub.add_parser("bins", help="bad-block measure and bin capital at one block")
    p.add_argument("--alg")
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--budget", type=int, default=bpp.DEFAULT_BUDGET)
    p.set_defaults(func=cmd_bins)

    p = sub.add_parser("dishonest", help="dishonest permutation table and witnesses")
    p.add_argument("--size", type=int, default=1000)
    p.add_argument("--k-max", type=int, default=3)
    p.add_argument("--max-witnesses", type=int, default=5)
    p.set_defaults(func=cmd_dishonest)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        result, ok = args.func(args)
    except BudgetExceeded as err:
        print(f"budget exhausted: {err}", file=sys.stderr)
        return EXIT_BUDGET
    except (DescriptorError, PreconditionError, OSError, ValueError, TypeError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT
    text = result if isinstance(result, str) else documents.dumps(result)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if ok else EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
