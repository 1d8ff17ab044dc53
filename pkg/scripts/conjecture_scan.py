"""Does the CM-type equal the extremal Betti number on F_m and pure fans?

Checks beta_{p,p+j} = 0 for j < r on every instance the oracle can reach.
"""
import argparse

from binedge.cli import render_scan, scan
from binedge.oracle import OracleConfig


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()
    cfg = OracleConfig(threads=args.threads)
    for template, params in (("Fm(m)", ["m=2..3"]), ("fan(m; 1)", ["m=2..5"]),
                             ("fan(m; 2)", ["m=3..5"]), ("fan(m; 1,1)", ["m=3..5"])):
        print(render_scan(scan(template, params, "both", cfg, conjecture=True)))
        print()


if __name__ == "__main__":
    main()
