"""Batch figure rendering from hopenergy CSV files.

    plot --spec job.json
    plot --figure fig-energy-ppp --in sweep.csv --out fig.png

Exit codes: 0 rendered (including empty-axes renders of header-only CSVs),
2 bad invocation or schema mismatch.
"""

from __future__ import annotations

import argparse
import sys

from .figures import FIGURES
from .render import FigureSpec, SchemaError, render


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="plot", description=__doc__)
    parser.add_argument("--spec", help="JSON rendering job")
    parser.add_argument("--figure", choices=sorted(FIGURES), help="figure id")
    parser.add_argument("--in", dest="inputs", action="append", default=[],
                        help="input CSV (repeat for multi-panel)")
    parser.add_argument("--out", help="output image path (.png or .svg)")
    args = parser.parse_args(argv)

    try:
        if args.spec:
            spec = FigureSpec.from_json(args.spec)
        else:
            if not (args.figure and args.inputs and args.out):
                parser.error("need --spec or all of --figure/--in/--out")
            spec = FigureSpec(args.figure, tuple(args.inputs), args.out)
        render(spec)
    except (SchemaError, OSError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
