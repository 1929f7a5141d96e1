/**
 * Episode table helpers: filtering sampled cases by cell or branch and
 * tallying counts for the summary strip.
 */

import type { EpisodeJson } from "./types.js";

export interface EpisodeFilter {
  cell?: string;
  branch?: string;
  discoveredOnly?: boolean;
}

export function filterEpisodes(
  episodes: readonly EpisodeJson[],
  filter: EpisodeFilter,
): EpisodeJson[] {
  return episodes.filter((ep) => {
    if (filter.cell !== undefined && ep.cell !== filter.cell) return false;
    if (filter.branch !== undefined && ep.branch !== filter.branch) return false;
    if (filter.discoveredOnly && !ep.discovered) return false;
    return true;
  });
}

export function countBy(
  episodes: readonly EpisodeJson[],
  key: "cell" | "branch",
): Record<string, number> {
  const counts: Record<string, number> = {};
  for (const ep of episodes) {
    const bucket = ep[key];
    counts[bucket] = (counts[bucket] ?? 0) + 1;
  }
  return counts;
}

export interface EpisodeRow {
  index: number;
  cell: string;
  branch: string;
  verdict: string;
  groundTruth: string;
  discovered: string;
  workload: string;
}

export function episodeRow(ep: EpisodeJson): EpisodeRow {
  return {
    index: ep.case_index,
    cell: ep.cell,
    branch: ep.branch,
    verdict: ep.aided_verdict === "T" ? "positive" : "negative",
    groundTruth: ep.gt,
    discovered: ep.discovered ? "yes" : "no",
    workload: ep.workload.toFixed(3),
  };
}
