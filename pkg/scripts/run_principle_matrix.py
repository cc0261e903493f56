"""Rebuild the principle-by-semantics verdict matrix and print it.

Expected violations must reproduce on their designated fixture; expected
satisfactions must survive the fixture corpus plus a seeded random corpus
without a counterexample. Exits 1 if any cell disagrees.
"""

import argparse
import sys

from qbaglab.principles import SearchConfig, run_matrix


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--random-graphs", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-args", type=int, default=6)
    args = ap.parse_args(argv)

    cfg = SearchConfig(random_graphs=args.random_graphs, seed=args.seed,
                       max_exhaustive_args=args.max_args)
    report = run_matrix(cfg=cfg)
    print(report.render())
    bad = report.mismatches()
    print(f"{len(report.cells)} cells, {len(bad)} mismatch(es)")
    for cell in bad:
        print(f"  MISMATCH {cell.principle.value} / {cell.fn} / {cell.semantics}")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
