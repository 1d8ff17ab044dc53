"""Extremal Betti numbers of F_m from the oracle next to the sum of squares.

Koszul tables for small m, Hochster corner mode once 2n passes 14.
"""
import argparse
import json
import time

from binedge.closed_form import sum_of_squares
from binedge.graphs import bipartite_fm
from binedge.oracle import OracleConfig, run_oracle


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--m", type=int, nargs="+", default=[2, 3, 4])
    ap.add_argument("--char", type=int, default=32003)
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()

    rows = []
    for m in args.m:
        t = time.perf_counter()
        res = run_oracle(bipartite_fm(m), OracleConfig(char=args.char, threads=args.threads))
        rows.append({"m": m, "nvars": res.nvars, "mode": res.mode, "corners": res.corners,
                     "oracle": res.extremal_betti, "closed": sum_of_squares(m),
                     "seconds": round(time.perf_counter() - t, 2)})
    if args.json:
        print(json.dumps(rows, indent=2))
        return
    for r in rows:
        flag = "ok" if r["oracle"] == r["closed"] else "MISMATCH"
        print(f"m={r['m']:<2} 2n={r['nvars']:<3} {r['mode']:<6} corners={r['corners']} "
              f"oracle={r['oracle']} closed={r['closed']} {flag} ({r['seconds']}s)")


if __name__ == "__main__":
    main()
