"""How the discovery profile decides whether a tool is worth deploying.

Loads two configs that share a matrix and outcome utilities and differ only
in which changed verdicts ever become visible. When only assisted misses
can surface, exposure is one-sided: the tool can only be blamed, never
credited. Logging recommendations next to decisions makes saves visible
too and turns the same matrix into a friendlier deal.

Ends with a sensitivity line: usage value as the miss-discovery chance
climbs from never to always.
"""

from pathlib import Path

from cfx import build_report, discovery_analysis, usage_eu
from cfx.io import load_scenario

CONFIG_DIR = Path(__file__).resolve().parent.parent / "configs"


def describe(path):
    doc = load_scenario(path)
    report = build_report(doc.matrix, doc.utilities, doc.mode)
    analysis = discovery_analysis(doc.matrix, doc.utilities, doc.mode)

    print(f"== {doc.name}")
    print(f"  rel_outcome_eu     {report.relative_outcome_eu:+.4f}")
    print(f"  rel_counter_eu     {report.relative_counter_eu:+.4f}")
    print(f"  rel_usage_eu       {report.relative_usage_eu:+.4f}")
    print(f"  one_sided_negative {analysis.one_sided_negative}")
    for cell in analysis.cells:
        if cell.discovery > 0:
            print(f"  {cell.cell.value}: p={cell.probability:.3f} discovery={cell.discovery:.2f}"
                  f" utility={cell.utility:+.0f} contribution={cell.contribution:+.4f}")
    return doc


def miss_discovery_sensitivity(doc):
    print("\nusage value vs. chance a changed-verdict miss is discovered")
    print(f"({doc.name}, all other discovery chances held)")
    for chance in (0.0, 0.1, 0.25, 0.5, 0.75, 1.0):
        discovery = doc.utilities.discovery.model_copy(update={"CFN": chance})
        utilities = doc.utilities.model_copy(update={"discovery": discovery})
        value = usage_eu(doc.matrix, utilities, doc.mode)
        print(f"  CFN discovery {chance:4.2f} -> usage_eu {value:+.4f}")


if __name__ == "__main__":
    replacement = describe(CONFIG_DIR / "parole_replacement.json")
    print()
    describe(CONFIG_DIR / "parole_side_by_side.json")
    miss_discovery_sensitivity(replacement)
