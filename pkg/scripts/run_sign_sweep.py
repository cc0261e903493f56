"""Sweep two initial strengths and dump the contribution-sign map as CSV.

The default settings rebuild the grid behind the sign-flip example: removal
contributions of {d}, {f} and {d,f} toward topic a while tau(d) and tau(f)
run over the unit square.
"""

import argparse
import sys

from qbaglab.contributions import sign_map
from qbaglab.fixtures import fixture
from qbaglab.graph import load_graph
from qbaglab.semantics import semantics_from_spec


def parse_sets(text):
    return [tuple(part.split(",")) for part in text.split("|")]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--graph", default="fig1a", help="fixture id or JSON path")
    ap.add_argument("--semantics", default="QE")
    ap.add_argument("--function", default="removal")
    ap.add_argument("--topic", default="a")
    ap.add_argument("--sweep", default="d,f", help="two ids, comma separated")
    ap.add_argument("--sets", default="d|f|d,f", help="sets like 'd|f|d,f'")
    ap.add_argument("--step", type=float, default=0.05)
    ap.add_argument("-o", "--output", default=None, help="CSV path (default stdout)")
    args = ap.parse_args(argv)

    try:
        g = fixture(args.graph)
    except KeyError:
        g = load_graph(args.graph)
    sem = semantics_from_spec(args.semantics)
    x1, x2 = args.sweep.split(",")

    result = sign_map(g, sem, args.topic, parse_sets(args.sets), (x1, x2),
                      step=args.step, function=args.function)
    text = result.to_csv()
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
        print(f"wrote {len(result.rows)} grid points to {args.output}")
    else:
        sys.stdout.write(text)


if __name__ == "__main__":
    main()
