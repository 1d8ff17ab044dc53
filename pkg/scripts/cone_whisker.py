"""Cone formulas against the oracle, including the degenerate whisker cones."""
import argparse

from binedge.cli import render_report, run_invariants
from binedge.oracle import OracleConfig


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("exprs", nargs="*",
                    default=["cone(fan(2;1), K(2))", "cone(K(2), K(1))", "cone(K(3), K(1))", "cone(K(2), K(2))"])
    ap.add_argument("--char", type=int, default=32003)
    args = ap.parse_args()
    for text in args.exprs:
        rep = run_invariants(text, "both", OracleConfig(char=args.char))
        print(render_report(rep))
        print()


if __name__ == "__main__":
    main()
