#!/usr/bin/env python3
"""Run the three falsification campaigns (type2, type1, control) and print a
compact summary.  Outputs land in out/search/ as CSV + JSON."""

import argparse

from hypmin.cli import main as cli_main


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seeds", type=int, default=20)
    ap.add_argument("--seed", type=int, default=1234)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--out", default="out/search")
    args = ap.parse_args()
    for kind in ("type2", "type1", "control"):
        code = cli_main(
            [
                "search",
                "--kind",
                kind,
                "--seeds",
                str(args.seeds),
                "--seed",
                str(args.seed),
                "--workers",
                str(args.workers),
                "--out",
                args.out,
            ]
        )
        if code != 0:
            return code
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
