"""Command-line entry point: one subcommand group per module.

Reports are JSON with a schema version and no timestamps, so identical
runs of exact modules produce identical bytes.  Findings go to the JSONL
ledger.  Exit status: 0 clean, 2 violations recorded, 1 error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import descartes, expsum, fields, hb, jensen, meshops, rolle, sos, tropical
from .errors import PolyconjError
from .ledger import ARTIFACT_VERSION, INFO, SCHEMA_VERSION, Ledger, replay_finding
from .polycore import RatPoly


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _degree_range(text: str) -> tuple[int, int]:
    lo, _, hi = text.partition("..")
    lo, hi = int(lo), int(hi or lo)
    if lo > hi:
        raise argparse.ArgumentTypeError("empty degree range")
    return lo, hi


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", "--trials", dest="budget", type=int, default=None,
                   help="trial budget (defaults depend on the command)")
    p.add_argument("--out", default=None, help="report path (default: stdout)")
    p.add_argument("--ledger", default=None, help="findings ledger (default: $POLYCONJ_LEDGER or ./polyconj-ledger.jsonl)")
    p.add_argument("--tol", type=float, default=None, help="numeric tolerance override")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    top = _Parser(prog="polyconj", description="Experiments on real-rooted polynomials and related conjectures.")
    top.add_argument("--version", action="version", version=ARTIFACT_VERSION)
    groups = top.add_subparsers(dest="group", required=True, parser_class=_Parser)

    def group(name, help_):
        g = groups.add_parser(name, help=help_)
        return g.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    g = group("descartes", "sign patterns and realizability")
    c = g.add_parser("survey", parents=[common])
    c.add_argument("--degree", type=int, required=True)
    c.add_argument("--L", type=float, default=6, help="coefficient magnitudes 10^[-L, L]")
    c.add_argument("--expand", action="store_true", help="list every pattern, not orbit representatives")

    g = group("tropical", "tropical and log-concavity bounds")
    c = g.add_parser("check", parents=[common])
    c.add_argument("--degree-range", type=_degree_range, default=(2, 10))
    c.add_argument("--L", type=float, default=6)
    c.add_argument("--distinct", action="store_true", help="count distinct zeros instead of with multiplicity")

    g = group("mesh", "difference operators and the bullet product")
    c = g.add_parser("conj8", parents=[common])
    c.add_argument("--op", required=True, help="comma-separated a_0,...,a_k")
    c.add_argument("--m", type=int, required=True)
    c = g.add_parser("conj9", parents=[common])
    c.add_argument("--d", type=int, required=True)

    g = group("jensen", "Jensen polynomials and real-zero counts")
    c = g.add_parser("run", parents=[common])
    c.add_argument("--conjecture", choices=sorted(jensen.CHECKS), required=True)
    c.add_argument("--degree-range", type=_degree_range, default=(2, 6))
    c.add_argument("--poly", default=None, help="check a single polynomial instead of sampling")

    g = group("rolle", "configurations and symbolic sequences")
    c = g.add_parser("enumerate", parents=[common])
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--words", action="store_true", help="include the words in the report")
    c = g.add_parser("realize", parents=[common])
    c.add_argument("--n", type=int, required=True)

    g = group("hb", "Hermite-Biehler data")
    c = g.add_parser("scan", parents=[common])
    c.add_argument("--degree", type=int, required=True)

    g = group("maxwell", "equilibria of point charges")
    c = g.add_parser("find", parents=[common])
    src = c.add_mutually_exclusive_group(required=True)
    src.add_argument("--config", help="JSON file {positions: [[..]], charges: [..]}")
    src.add_argument("--square", action="store_true", help="the four-charge square example")
    c.add_argument("--grid", type=int, default=7)
    c.add_argument("--dedupe", type=float, default=1e-6)
    c.add_argument("--exponent", type=float, default=3)

    g = group("psi", "local maxima of the 1-D potential")
    c = g.add_parser("maxima", parents=[common])
    c.add_argument("--config", default=None, help="JSON file {points: [[x, y]..], charges: [..], alpha: a}")
    c.add_argument("--n", type=int, default=3, help="charges per random configuration (census mode)")
    c.add_argument("--alpha", type=float, default=1.0)
    c.add_argument("--random-charges", action="store_true")
    c.add_argument("--method", choices=("auto", "exact", "grid"), default="auto")

    g = group("expsum", "real zeros of exponential sums")
    c = g.add_parser("search", parents=[common])
    c.add_argument("--k", type=int, default=3)

    g = group("sos", "sum-of-squares grid construction")
    c = g.add_parser("build", parents=[common])
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--l", type=int, required=True)
    c.add_argument("--roots", default=None, help="comma-separated axis roots (default 0..k-1)")

    g = group("ledger", "findings ledger")
    c = g.add_parser("list", parents=[common])
    c.add_argument("--conjecture", default=None, help="filter by conjecture id prefix")
    c = g.add_parser("replay", parents=[common])
    c.add_argument("finding_id")
    return top


# ---- handlers: each returns (result dict, findings) ------------------------


def _budget(args, default):
    return default if args.budget is None else args.budget


def _descartes(args):
    budget = _budget(args, 10**4)
    rows = descartes.survey_degree(args.degree, budget, args.seed, args.L)
    open_rows = [r for r in rows if r["status"] == "OPEN"]
    if args.expand:
        rows = descartes.expand_survey(rows)
    res = {"degree": args.degree, "rows": rows,
           "open": [{"pattern": r["pattern"], "pair": r["pair"]} for r in open_rows]}
    return res, descartes.conj11_findings(open_rows, args.seed, budget)


def _tropical(args):
    out = tropical.run_check(_budget(args, 1000), args.seed, args.degree_range, args.L, not args.distinct)
    return out, out.pop("findings")


def _conj8(args):
    rep = meshops.check_conj8(meshops.DiffOp.parse(args.op), args.m, _budget(args, 1000), args.seed)
    return rep.to_json(), rep.findings


def _conj9(args):
    out = meshops.check_conj9(_budget(args, 1000), args.d, args.seed)
    return out, out.pop("findings")


def _jensen(args):
    name = args.conjecture
    if args.poly is not None:
        p = RatPoly.parse(args.poly)
        rec = jensen.CHECKS[name][0](p)
        fs = [] if rec.holds else [jensen.finding_for(name, p, rec, args.seed)]
        return {"check": name, "p": p.to_list(), "record": rec.to_json()}, fs
    lo, hi = args.degree_range
    out = jensen.run_conjecture(name, _budget(args, 1000), args.seed, hi, lo)
    return out, out.pop("findings")


def _rolle_enum(args):
    words = sorted(str(w) for w in rolle.enumerate_sequences(args.n))
    res = {"n": args.n, "count": len(words), "flat_count": rolle.flat_count(args.n)}
    if args.words:
        res["words"] = words
    return res, []


def _rolle_realize(args):
    tab = rolle.realized_sequences(args.n, _budget(args, 1000), args.seed)
    return tab.to_json(), rolle.realization_findings(tab)


def _hb(args):
    rows = hb.fisk_scan(args.degree, _budget(args, 100), args.seed)
    if args.out:
        n = hb.write_corpus(rows, args.out)
        args.out = None  # the summary goes to stdout
        return {"degree": args.degree, "rows": n, "corpus": True}, []
    return {"degree": args.degree, "rows": list(rows)}, []


def _maxwell(args):
    if args.square:
        cfg = fields.square_config()
    else:
        with open(args.config) as fh:
            cfg = fields.ChargeConfig.from_json(json.load(fh))
    opts = fields.EquilibriumOptions(grid=args.grid, random_starts=_budget(args, 2000), seed=args.seed,
                                     dedupe=args.dedupe, exponent=args.exponent,
                                     res_tol=args.tol if args.tol is not None else 1e-10)
    eq = fields.find_equilibria(cfg, opts)
    res = {"config": cfg.to_json(), "bound": fields.maxwell_bound(cfg.N), **eq.to_json()}
    fs = []
    if not eq.suspected_curve and eq.count > fields.maxwell_bound(cfg.N):
        fs.append(fields.maxwell_finding(cfg, opts, args.seed))
    return res, fs


def _psi(args):
    if args.config:
        with open(args.config) as fh:
            d = json.load(fh)
        alpha = d.get("alpha", args.alpha)
        r = fields.psi_local_maxima(d["points"], d["charges"], alpha, args.method)
        fs = []
        if r.count > len(d["charges"]):
            fs.append(fields.psi_finding(d["points"], d["charges"], alpha, args.method, args.seed))
        return {"N": len(d["charges"]), **r.to_json()}, fs
    out = fields.psi_census(args.n, _budget(args, 1000), args.seed, args.alpha, not args.random_charges, args.method)
    return out, out.pop("findings")


def _expsum(args):
    rec = expsum.max_zero_search(args.k, _budget(args, 1000), args.seed)
    return rec.to_json(), expsum.search_findings(rec)


def _sos(args):
    roots = [Fraction(t) for t in args.roots.split(",")] if args.roots else None
    g = sos.grid_sos(args.k, args.l, roots)
    rep = sos.verify_isolated(g)
    return {"grid": g.to_json(), "verified": rep.ok, "checks": vars(rep),
            "bounds": sos.bounds_table(args.k, args.l).to_json()}, []


def _ledger_list(args):
    items = [f.to_json() for f in Ledger(args.ledger)
             if args.conjecture is None or f.conjecture_id.startswith(args.conjecture)]
    return {"count": len(items), "findings": items}, []


HANDLERS = {
    ("descartes", "survey"): _descartes,
    ("tropical", "check"): _tropical,
    ("mesh", "conj8"): _conj8,
    ("mesh", "conj9"): _conj9,
    ("jensen", "run"): _jensen,
    ("rolle", "enumerate"): _rolle_enum,
    ("rolle", "realize"): _rolle_realize,
    ("hb", "scan"): _hb,
    ("maxwell", "find"): _maxwell,
    ("psi", "maxima"): _psi,
    ("expsum", "search"): _expsum,
    ("sos", "build"): _sos,
    ("ledger", "list"): _ledger_list,
}


def _config(args) -> dict:
    return {k: (list(v) if isinstance(v, tuple) else v) for k, v in sorted(vars(args).items())
            if k not in ("group", "cmd")}


def _emit(report: dict, out) -> None:
    text = json.dumps(report, sort_keys=True, indent=2, default=str) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if (args.group, args.cmd) == ("ledger", "replay"):
            tol = {"tol": args.tol} if args.tol is not None else None
            finding = Ledger(args.ledger).get(args.finding_id)
            status = replay_finding(finding, tol)
            _emit({"schema_version": SCHEMA_VERSION, "id": args.finding_id, "status": status}, args.out)
            return 0 if status == "CONFIRMED" else 2
        config = _config(args)
        result, findings = HANDLERS[(args.group, args.cmd)](args)
        ids = Ledger(args.ledger).extend(findings) if findings else []
        serious = [f for f in findings if f.severity != INFO]
        report = {
            "schema_version": SCHEMA_VERSION,
            "artifact_version": ARTIFACT_VERSION,
            "command": f"{args.group} {args.cmd}",
            "config": config,
            "result": result,
            "findings": ids,
            "violations_recorded": len(serious),
        }
        _emit(report, args.out)
        return 2 if serious else 0
    except (PolyconjError, ArithmeticError, ValueError, KeyError, OSError) as e:
        print(f"polyconj: error: {type(e).__name__}: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
