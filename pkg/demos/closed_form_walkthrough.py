"""Step-by-step expected-utility walkthrough on a fixed outcomes matrix.

Builds the baseline screening matrix by hand, partitions it into aided and
unaided confusion matrices, then assembles the usage value one term at a
time so each contribution is visible: outcome value, the expected charge
from discovered changed verdicts, and the unaided baseline.
"""

from cfx import (
    CellKind,
    CounterfactualMatrix,
    UtilityModel,
    build_report,
    counter_eu,
    discovery_analysis,
    outcome_eu,
    partition,
    sensitivity,
    specificity,
    unaided_eu,
    usage_eu,
)

MATRIX = CounterfactualMatrix(
    NTP=0.135, CTP=0.025, CFN=0.01, NFN=0.03,
    NFP=0.09, CFP=0.07, CTN=0.09, NTN=0.55,
)


def show_partition(matrix):
    aided, unaided = partition(matrix)
    print("aided   TP=%.3f FN=%.3f FP=%.3f TN=%.3f" % (aided.TP, aided.FN, aided.FP, aided.TN))
    print("unaided TP=%.3f FN=%.3f FP=%.3f TN=%.3f" % (unaided.TP, unaided.FN, unaided.FP, unaided.TN))
    print("aided   sens=%.3f spec=%.3f" % (sensitivity(aided), specificity(aided)))
    print("unaided sens=%.3f spec=%.3f" % (sensitivity(unaided), specificity(unaided)))


def show_counter_terms(matrix, utilities, mode):
    cu = utilities.counterfactual(mode)
    d = utilities.discovery
    print("\nexpected charge per changed-verdict cell (p * discovery * utility):")
    for cell in (CellKind.CTP, CellKind.CFN, CellKind.CFP, CellKind.CTN):
        p = matrix.value(cell)
        term = p * d.value(cell) * cu.value(cell)
        print("  %s p=%.3f d=%.2f u=%+6.1f -> %+.5f" % (cell.value, p, d.value(cell), cu.value(cell), term))


def main():
    utilities = UtilityModel()
    mode = "reviewed"

    show_partition(MATRIX)

    print("\noutcome_eu = %r" % outcome_eu(MATRIX, utilities))
    show_counter_terms(MATRIX, utilities, mode)
    print("counter_eu = %r" % counter_eu(MATRIX, utilities, mode))
    print("usage_eu   = %r" % usage_eu(MATRIX, utilities, mode))
    print("unaided_eu = %r" % unaided_eu(MATRIX, utilities))

    report = build_report(MATRIX, utilities, mode)
    print("\nrelative to working unaided:")
    print("  rel_outcome_eu = %+.5f" % report.relative_outcome_eu)
    print("  rel_counter_eu = %+.5f" % report.relative_counter_eu)
    print("  rel_usage_eu   = %+.5f" % report.relative_usage_eu)

    analysis = discovery_analysis(MATRIX, utilities, mode)
    print("\ndiscovery exposure is one-sided negative: %s" % analysis.one_sided_negative)
    print("largest contribution comes from %s" % analysis.dominant_cell.value)
    print("\nthe aided matrix is better on both sensitivity and specificity,")
    print("yet the blame attached to discovered assisted misses eats the gain.")


if __name__ == "__main__":
    main()
