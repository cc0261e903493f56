"""Run the review-aggregation pipeline end to end and print the result.

Evaluates the comment layer of the bundled peer-review graph, normalizes the
aspect strengths into a decision graph, and reports removal, Shapley and
gradient contributions of the chosen focus set toward the decision node.
"""

import argparse
import json

from qbaglab.fixtures import FIG8_MANIFEST, fixture
from qbaglab.graph import load_graph
from qbaglab.review import aspect_model, evaluate_text_layer, report_contributions


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--graph", default="fig8", help="fixture id or JSON path")
    ap.add_argument("--manifest", default=None,
                    help="JSON file naming the aspect arguments")
    ap.add_argument("--focus", default="NOV,IMP",
                    help="focus set, comma separated")
    args = ap.parse_args(argv)

    if args.manifest:
        with open(args.manifest) as fh:
            manifest = json.load(fh)
        g = load_graph(args.graph)
    else:
        manifest = FIG8_MANIFEST
        g = fixture(args.graph)

    model = aspect_model(g, manifest)
    print("aspect strengths from the comment layer:")
    for aspect, sigma in evaluate_text_layer(model).items():
        print(f"  {aspect}: {sigma}")

    report = report_contributions(model, tuple(args.focus.split(",")))
    print(f"decision {report.decision_id}: tau {report.decision_tau} "
          f"-> sigma {report.sigma_decision}")
    print(report.to_csv())


if __name__ == "__main__":
    main()
