"""Command line: build graphs, evaluate closed forms, run the oracle, compare, scan."""
from __future__ import annotations

import argparse
import itertools
import json
import os
import re
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .betti import CapExceeded
from .closed_form import NoClosedForm, beta_p_plus2_cone, cone_formula_values, cone_is_degenerate, \
    hvector_fm, invariants_closed, linear_strand
from .expr import BipartiteFm, Cone, ExprError, build, parse_expr, to_str
from .graphs import Graph, GraphError, classify, clique_complex
from .grobner import DEFAULT_CHAR
from .hilbert import hilbert_function, numerator_from_betti, series_coefficients, verify_hilbert_lemmas
from .oracle import METHODS, OracleConfig, OracleResult, run_oracle

INVARIANTS = ("reg", "projdim", "extremal_betti", "cm_type")
EXIT_OK, EXIT_USAGE, EXIT_MISMATCH, EXIT_NOT_COMPUTABLE = 0, 1, 2, 3


@dataclass
class Check:
    name: str
    verdict: str
    detail: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "verdict": self.verdict, "detail": self.detail}


@dataclass
class VerificationReport:
    expr: str
    mode: str
    closed: object = None  # InvariantReport
    oracle: OracleResult | None = None
    verdicts: dict[str, str] = field(default_factory=dict)
    checks: list[Check] = field(default_factory=list)
    discrepancies: list[dict] = field(default_factory=list)
    missing: list[str] = field(default_factory=list)  # single-sided modes: invariants without a value
    notes: list[str] = field(default_factory=list)
    timings: dict[str, float] = field(default_factory=dict)

    @property
    def exit_code(self) -> int:
        verdicts = list(self.verdicts.values()) + [c.verdict for c in self.checks]
        if "mismatch" in verdicts:
            return EXIT_MISMATCH
        if "not-computable" in verdicts or self.missing:
            return EXIT_NOT_COMPUTABLE
        return EXIT_OK

    def to_json(self) -> dict:
        return {"expr": self.expr, "mode": self.mode,
                "closed": self.closed.to_json() if self.closed is not None else None,
                "oracle": self.oracle.to_json() if self.oracle is not None else None,
                "verdicts": dict(self.verdicts), "checks": [c.to_json() for c in self.checks],
                "discrepancies": list(self.discrepancies), "missing": list(self.missing),
                "notes": list(self.notes),
                "timings": dict(self.timings), "exit_code": self.exit_code}


def _verdict(a, b) -> str:
    if a is None or b is None:
        return "not-computable"
    return "match" if a == b else "mismatch"


# -- target handling ------------------------------------------------------------

def load_target(text: str):
    """(expression or None, graph): a family expression or a path to graph JSON."""
    if text.endswith(".json") or os.path.isfile(text):
        with open(text) as fh:
            return None, Graph.from_json(json.load(fh))
    e = parse_expr(text)
    return e, build(e)


# -- pipelines ------------------------------------------------------------------

def run_invariants(text: str, mode: str = "both", cfg: OracleConfig | None = None,
                   conjectural: bool = False) -> VerificationReport:
    e, g = load_target(text)
    rep = VerificationReport(to_str(e) if e is not None else text, mode)
    cfg = cfg or OracleConfig()
    if mode in ("closed", "both"):
        t = time.perf_counter()
        if e is None:
            rep.notes.append("closed forms need a family expression, not a bare graph")
        else:
            rep.closed = invariants_closed(e, conjectural)
        rep.timings["closed"] = time.perf_counter() - t
    if mode in ("oracle", "both"):
        t = time.perf_counter()
        try:
            rep.oracle = run_oracle(g, cfg)
        except CapExceeded as err:
            rep.notes.append(f"oracle refused: {err}")
        rep.timings["oracle"] = time.perf_counter() - t
    for name in INVARIANTS:
        c = getattr(rep.closed, name) if rep.closed is not None else None
        o = getattr(rep.oracle, name) if rep.oracle is not None else None
        if mode == "both":
            rep.verdicts[name] = _verdict(c, o)
        elif (c if mode == "closed" else o) is None:
            rep.missing.append(name)
    if isinstance(e, Cone) and mode == "both":
        _cone_extras(e, rep)
    if "mismatch" in rep.verdicts.values() and rep.oracle is not None:
        _second_prime(g, cfg, rep)
    return rep


def _cone_extras(e: Cone, rep: VerificationReport) -> None:
    o = rep.oracle
    jt = o.j_table if o is not None else None
    try:
        c = beta_p_plus2_cone(e)
    except NoClosedForm as err:
        rep.notes.append(f"beta_p_p2: {err}")
    else:
        ov = jt.get(o.projdim, o.projdim + 2) if jt is not None and jt.complete else None
        rep.verdicts["beta_p_p2"] = _verdict(c, ov)
    try:
        degenerate = cone_is_degenerate(e)
    except NoClosedForm:
        return
    if degenerate:
        lit = cone_formula_values(e)["cm_type"]
        oracle_ct = o.cm_type if o is not None else None
        adjudication = "not-computable"
        if oracle_ct is not None:
            if oracle_ct == rep.closed.cm_type and oracle_ct != lit:
                adjudication = "decomposable product"
            elif oracle_ct == lit:
                adjudication = "cone formula"
            else:
                adjudication = "neither"
        rep.discrepancies.append({"invariant": "cm_type", "cone_formula": lit,
                                  "decomposable_product": rep.closed.cm_type, "oracle": oracle_ct,
                                  "adjudication": adjudication})


def _second_prime(g: Graph, cfg: OracleConfig, rep: VerificationReport) -> None:
    other = 101 if cfg.char != 101 else DEFAULT_CHAR
    try:
        res = run_oracle(g, OracleConfig(other, cfg.method, cfg.threads, cfg.max_degree))
    except CapExceeded:
        return
    same = all(getattr(res, k) == getattr(rep.oracle, k) for k in INVARIANTS)
    rep.notes.append(f"mismatch re-checked at characteristic {other}: oracle values "
                     f"{'unchanged' if same else 'differ'}")


def run_verify(text: str, cfg: OracleConfig | None = None, conjectural: bool = False) -> VerificationReport:
    """Invariants in both modes plus the structural identities on the oracle tables."""
    cfg = cfg or OracleConfig()
    rep = run_invariants(text, "both", cfg, conjectural)
    rep.mode = "both"
    o = rep.oracle
    if o is None:
        return rep
    e, g = load_target(text)
    t0 = time.perf_counter()
    jt, it = o.j_table, o.inj_table
    if jt is not None and jt.complete:
        bad = [i for i in range(1, g.n + 1) if jt.linear_strand(i) != linear_strand(g, i)]
        rep.checks.append(Check("linear_strand", "mismatch" if bad else "match",
                                f"failing i: {bad}" if bad else "beta_{i,i+1} = i f_i for all i"))
        if it.complete:
            same = jt.corners().corners == it.corners().corners
            rep.checks.append(Check("corner_equality", "match" if same else "mismatch",
                                    f"J {jt.corners().corners} vs in(J) {it.corners().corners}"))
            over = [ij for ij, v in jt.entries.items() if v > it.get(*ij)]
            rep.checks.append(Check("semicontinuity", "mismatch" if over else "match",
                                    f"cells above in(J): {over}" if over else "J <= in(J) entrywise"))
    table = jt if jt is not None and jt.complete else (it if it.complete else None)
    if table is not None:
        hd = o.hilbert
        lem = verify_hilbert_lemmas(table, hd)
        rep.checks.append(Check("hilbert_lemmas", "match" if lem.passed else "mismatch",
                                json.dumps(lem.to_json())))
        same = numerator_from_betti(table) == hd.numerator
        rep.checks.append(Check("hilbert_numerator", "match" if same else "mismatch",
                                f"p(t) = {list(hd.numerator)}"))
        window = 8 if o.nvars <= 12 else 5
        hf = [hilbert_function(_inj(g, cfg), k) for k in range(window + 1)]
        ok = hf == series_coefficients(hd.numerator, o.nvars, window)
        rep.checks.append(Check("hilbert_function", "match" if ok else "mismatch", f"H(0..{window}) = {hf}"))
    if isinstance(e, BipartiteFm) and e.m >= 2:
        cf = hvector_fm(e.m)
        rep.checks.append(Check("hvector_fm", _verdict(cf.h, o.hilbert.h),
                                f"closed {list(cf.h)} vs oracle {list(o.hilbert.h)}"))
    rep.timings["checks"] = time.perf_counter() - t0
    return rep


def _inj(g: Graph, cfg: OracleConfig):
    from .grobner import groebner_of_graph
    return groebner_of_graph(g, cfg.char)[2]


# -- scanning -------------------------------------------------------------------

def parse_param(text: str) -> tuple[str, list[str]]:
    """``m=2..4``, ``m=2,3,5`` or ``A=K(2)|fan(2;1)``."""
    name, sep, values = text.partition("=")
    if not sep or not re.fullmatch(r"[A-Za-z_]\w*", name):
        raise ExprError(f"bad parameter {text!r}: expected NAME=VALUES")
    rng = re.fullmatch(r"\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*", values)
    if rng:
        lo, hi = int(rng.group(1)), int(rng.group(2))
        return name, [str(v) for v in range(lo, hi + 1)]
    sep = "|" if "|" in values or not re.fullmatch(r"[\d,\s]+", values) else ","
    return name, [v.strip() for v in values.split(sep) if v.strip()]


def instantiate(template: str, binding: dict[str, str]) -> str:
    out = template
    for name, value in binding.items():
        out = re.sub(rf"(?<![A-Za-z_]){re.escape(name)}(?![A-Za-z_\d])", value, out)
    return out


def conjecture_status(res: OracleResult | None) -> str:
    """Does beta_{p,p+j} vanish for j < r, i.e. CM-type = extremal Betti number?"""
    if res is None or res.projdim is None or res.reg is None:
        return "untested"
    p, r = res.projdim, res.reg
    jt = res.j_table
    if jt is not None and jt.complete:
        return "holds" if all(jt.get(p, p + l) == 0 for l in range(r)) else "fails"
    it = res.inj_table
    if it.complete and all(it.get(p, p + l) == 0 for l in range(r)):
        return "holds"  # J's entries are bounded by in(J)'s
    return "untested"


def scan(template: str, params: list[str], mode: str = "both", cfg: OracleConfig | None = None,
         conjecture: bool = False) -> dict:
    cfg = cfg or OracleConfig()
    parsed = [parse_param(p) for p in params]
    names = [n for n, _ in parsed]
    bindings = [dict(zip(names, combo)) for combo in itertools.product(*(v for _, v in parsed))]
    inner = OracleConfig(cfg.char, cfg.method, 1, cfg.max_degree)

    def one(binding):
        text = instantiate(template, binding)
        row = {"params": binding, "expr": text, "closed": None, "oracle": None, "verdicts": {},
               "conjecture": None}
        try:
            rep = run_invariants(text, mode, inner, conjectural=conjecture)
        except (ExprError, GraphError) as err:
            row["error"] = str(err)
            return row
        row["expr"] = rep.expr
        row["closed"] = rep.closed.to_json() if rep.closed is not None else None
        row["oracle"] = rep.oracle.to_json() if rep.oracle is not None else None
        row["verdicts"] = rep.verdicts
        if conjecture:
            row["conjecture"] = conjecture_status(rep.oracle)
        notes = rep.notes + [f"{d['invariant']}: cone formula {d['cone_formula']}, product "
                             f"{d['decomposable_product']}, oracle {d['oracle']} -> {d['adjudication']}"
                             for d in rep.discrepancies]
        if notes:
            row["notes"] = notes
        return row

    if cfg.threads > 1:
        with ThreadPoolExecutor(cfg.threads) as pool:
            rows = list(pool.map(one, bindings))  # map keeps parameter order
    else:
        rows = [one(b) for b in bindings]
    return {"template": template, "rows": rows}


# -- rendering ------------------------------------------------------------------

def _fmt(v) -> str:
    return "-" if v is None else str(v)


def render_report(rep: VerificationReport) -> str:
    lines = [f"{rep.expr}  [{rep.mode}]"]
    c, o = rep.closed, rep.oracle
    if rep.mode != "both":
        side = c if rep.mode == "closed" else o
        for name in INVARIANTS:
            lines.append(f"  {name:<15} {_fmt(getattr(side, name, None))}")
    for name, verdict in rep.verdicts.items():
        cv = getattr(c, name, None) if c is not None else None
        ov = getattr(o, name, None) if o is not None else None
        if name == "beta_p_p2":
            cv = beta_p_plus2_cone(parse_expr(rep.expr))
            ov = o.j_table.get(o.projdim, o.projdim + 2) if o and o.j_table is not None else None
        lines.append(f"  {name:<15} closed={_fmt(cv):<6} oracle={_fmt(ov):<6} {verdict}")
    for ch in rep.checks:
        lines.append(f"  check {ch.name:<18} {ch.verdict}  {ch.detail}")
    for d in rep.discrepancies:
        lines.append(f"  discrepancy {d['invariant']}: cone formula {d['cone_formula']}, decomposable product "
                     f"{d['decomposable_product']}, oracle {_fmt(d['oracle'])} -> {d['adjudication']}")
    for note in (c.notes if c is not None else []) + (o.notes if o is not None else []) + rep.notes:
        lines.append(f"  note: {note}")
    lines.append("  timings: " + ", ".join(f"{k} {v:.3f}s" for k, v in rep.timings.items()))
    return "\n".join(lines)


def render_scan(result: dict) -> str:
    head = ["params", "expr", "reg c/o", "beta c/o", "cm c/o", "verdicts", "conjecture"]
    body = []
    for row in result["rows"]:
        c, o = row["closed"] or {}, row["oracle"] or {}
        pair = lambda k: f"{_fmt(c.get(k))}/{_fmt(o.get(k))}"
        verdicts = ",".join(f"{k}:{v}" for k, v in row["verdicts"].items() if v != "match") or "all match"
        if "error" in row:
            verdicts = "error: " + row["error"]
        body.append([" ".join(f"{k}={v}" for k, v in row["params"].items()), row["expr"],
                     pair("reg"), pair("extremal_betti"), pair("cm_type"), verdicts,
                     _fmt(row["conjecture"])])
    widths = [max(len(r[k]) for r in [head] + body) for k in range(len(head))]
    lines = ["  ".join(x.ljust(w) for x, w in zip(r, widths)).rstrip() for r in [head] + body]
    for row in result["rows"]:
        for note in row.get("notes", []):
            lines.append(f"note [{row['expr']}]: {note}")
    return "\n".join(lines)


# -- argparse -------------------------------------------------------------------

def _prime_or_zero(text: str) -> int:
    v = int(text)
    if v != 0 and (v < 2 or any(v % d == 0 for d in range(2, int(v ** 0.5) + 1))):
        raise argparse.ArgumentTypeError(f"{v} is neither prime nor 0")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--char", type=_prime_or_zero, default=DEFAULT_CHAR,
                        help="field characteristic (prime, or 0 for rationals)")
    common.add_argument("--max-degree", type=int, default=None, help="internal degree bound for Koszul tables")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--format", choices=("json", "table"), default="table")
    common.add_argument("--method", choices=METHODS, default="auto")

    ap = argparse.ArgumentParser(prog="binedge", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", parents=[common], help="construct a family graph")
    p.add_argument("target")
    p.add_argument("--classify", action="store_true", help="also report leaves, free vertices and pieces")

    p = sub.add_parser("invariants", parents=[common], help="closed-form and/or oracle invariants")
    p.add_argument("target")
    p.add_argument("--mode", choices=("closed", "oracle", "both"), default="both")
    p.add_argument("--conjecture", action="store_true", help="report conjectural CM-types")

    p = sub.add_parser("betti", parents=[common], help="oracle Betti table")
    p.add_argument("target")
    p.add_argument("--subject", choices=("J", "inJ"), default="J")

    p = sub.add_parser("hilbert", parents=[common], help="Hilbert series data")
    p.add_argument("target")
    p.add_argument("--upto", type=int, default=8, help="Hilbert function window")

    p = sub.add_parser("verify", parents=[common], help="invariants plus structural identities")
    p.add_argument("target")
    p.add_argument("--conjecture", action="store_true")

    p = sub.add_parser("scan", parents=[common], help="run a template over parameter ranges")
    p.add_argument("template", help='e.g. "Fm(m)" or "cone(A, B)"')
    p.add_argument("params", nargs="+", help="NAME=lo..hi, NAME=a,b,c or NAME=expr1|expr2")
    p.add_argument("--mode", choices=("closed", "oracle", "both"), default="both")
    p.add_argument("--conjecture", action="store_true",
                   help="test whether beta_{p,p+j} = 0 for j < r (CM-type = extremal Betti number)")
    return ap


def _emit(args, payload: dict, text: str) -> None:
    print(json.dumps(payload, indent=2) if args.format == "json" else text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = OracleConfig(args.char, args.method, max(1, args.threads), args.max_degree)
    try:
        return _dispatch(args, cfg)
    except (ExprError, GraphError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except CapExceeded as err:
        print(f"refused: {err}", file=sys.stderr)
        return EXIT_NOT_COMPUTABLE


def _dispatch(args, cfg: OracleConfig) -> int:
    if args.command == "build":
        e, g = load_target(args.target)
        payload = g.to_json()
        if e is not None:
            payload["expr"] = to_str(e)
        if g.provenance:
            payload["provenance"] = json.loads(json.dumps(g.provenance, default=str))
        text = f"n={g.n} edges={len(g.edges)}\n" + " ".join(f"{u}-{v}" for u, v in g.sorted_edges())
        if args.classify:
            cl = classify(g)
            info = {"leaves": cl.leaves, "free_vertices": cl.free_vertices, "cutpoints": cl.cutpoints,
                    "pieces": [sorted(back.values()) for _, back in cl.pieces],
                    "f_vector": clique_complex(g)[1]}
            payload["classification"] = info
            text += "\n" + "\n".join(f"{k}: {v}" for k, v in info.items())
        _emit(args, payload, text)
        return EXIT_OK

    if args.command in ("invariants", "verify"):
        if args.command == "verify":
            rep = run_verify(args.target, cfg, args.conjecture)
        else:
            rep = run_invariants(args.target, args.mode, cfg, args.conjecture)
        _emit(args, rep.to_json(), render_report(rep))
        return rep.exit_code

    if args.command == "betti":
        _, g = load_target(args.target)
        res = run_oracle(g, cfg)
        t = res.j_table if args.subject == "J" else res.inj_table
        if t is None:
            print(f"refused: the J-table needs a Koszul run (2n <= 16 and --method koszul/auto); "
                  f"have the in(J) {res.mode} table", file=sys.stderr)
            return EXIT_NOT_COMPUTABLE
        payload = t.to_json()
        text = t.grid() if t.complete else "\n".join(f"beta_{i},{j} = {t[(i, j)]}" for i, j in sorted(t.cells))
        _emit(args, payload, text)
        return EXIT_OK

    if args.command == "hilbert":
        e, g = load_target(args.target)
        from .grobner import groebner_of_graph
        from .hilbert import hilbert_data
        inj = groebner_of_graph(g, cfg.char)[2]
        hd = hilbert_data(inj)
        payload = {"expr": to_str(e) if e is not None else args.target, "hilbert": hd.to_json(),
                   "closed_form": None, "lemmas": None,
                   "hilbert_function": [hilbert_function(inj, k) for k in range(args.upto + 1)]}
        code = EXIT_OK
        if isinstance(e, BipartiteFm) and e.m >= 2:
            cf = hvector_fm(e.m)
            payload["closed_form"] = cf.to_json()
            code = EXIT_OK if cf.h == hd.h and cf.d == hd.d else EXIT_MISMATCH
        if 2 * g.n <= 14:
            res = run_oracle(g, OracleConfig(cfg.char, "hochster", cfg.threads))
            try:
                payload["lemmas"] = verify_hilbert_lemmas(res.inj_table, hd).to_json()
            except ValueError as err:
                payload["lemmas"] = {"error": str(err)}
        text = "\n".join([f"p(t) = {list(hd.numerator)}", f"h = {list(hd.h)}", f"d = {hd.d}",
                          f"a = {hd.a_invariant}",
                          f"H(0..{args.upto}) = {payload['hilbert_function']}"]
                         + ([f"closed form h = {payload['closed_form']['h']}"] if payload["closed_form"] else [])
                         + ([f"lemmas: {payload['lemmas']}"] if payload["lemmas"] else []))
        _emit(args, payload, text)
        return code

    if args.command == "scan":
        result = scan(args.template, args.params, args.mode, cfg, args.conjecture)
        _emit(args, result, render_scan(result))
        return EXIT_OK
    raise AssertionError(args.command)


if __name__ == "__main__":
    sys.exit(main())
