"""Run one scenario under each of the five use patterns and compare.

Same problem domain, same judges, same seed. Only the collaboration recipe
changes, and with it the branch mix, the workload, and where the usage
value lands relative to working unaided.
"""

import argparse

from cfx import Scenario, UsePattern, run_scenario


def tour(n_cases, seed, workers):
    rows = []
    for pattern in UsePattern:
        scenario = Scenario(use_pattern=pattern)
        result = run_scenario(scenario, n_cases, seed, workers=workers)
        rows.append((pattern.value, result))

    print(f"{'pattern':8} {'rel_outcome':>12} {'rel_counter':>12} {'rel_usage':>12} {'workload':>9}  branch mix")
    for name, result in rows:
        r = result.report
        mix = " ".join(
            f"{branch}={count / result.n_cases:.2f}"
            for branch, count in result.branch_counts.items()
            if count
        )
        print(
            f"{name:8} {r.relative_outcome_eu:>12.4f} {r.relative_counter_eu:>12.4f}"
            f" {r.relative_usage_eu:>12.4f} {result.mean_workload:>9.2f}  {mix}"
        )

    print("\nunaided verdicts never depend on the pattern, so every row is")
    print("measured against the same baseline at this seed.")


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--cases", type=int, default=200_000)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--workers", type=int, default=4)
    args = parser.parse_args()
    tour(args.cases, args.seed, args.workers)
