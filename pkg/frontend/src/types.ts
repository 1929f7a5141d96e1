/**
 * JSON shapes exchanged with the cfx service. These mirror the wire format
 * exactly; the UI never computes expected utilities itself, it only carries
 * these payloads between the service and the screen.
 */

export type CellName =
  | "NTP" | "CTP" | "CFN" | "NFN"
  | "NFP" | "CFP" | "CTN" | "NTN";

export const CELL_ORDER: readonly CellName[] = [
  "NTP", "CTP", "CFN", "NFN", "NFP", "CFP", "CTN", "NTN",
];

// cells where the aided and unaided verdicts differ
export const COUNTERFACTUAL_CELLS: ReadonlySet<CellName> = new Set([
  "CTP", "CFN", "CFP", "CTN",
]);

export type BranchName =
  | "auto_accept" | "dm_solo" | "dm_review_ai" | "dm_solo_then_ai";

export type Verdict = "T" | "F";

export type JsonValue =
  | string | number | boolean | null | JsonValue[] | { [key: string]: JsonValue };
export type JsonObject = { [key: string]: JsonValue };

export interface ParameterMeta {
  path: string;
  group: string;
  kind: "float" | "choice";
  /** absent for choice parameters, null for unbounded floats */
  minimum?: number | null;
  maximum?: number | null;
  choices?: string[];
  default: number | string;
  doc: string;
}

export interface SchemaResponse {
  schema_version: number;
  groups: string[];
  parameters: ParameterMeta[];
}

/** On-disk / exported configuration bundle, kept as plain JSON so the key
 * order of a loaded document survives round trips. */
export interface ScenarioDocumentJson extends JsonObject {
  schema_version: number;
  name: string;
}

export interface PresetsResponse {
  presets: ScenarioDocumentJson[];
}

export interface ConfusionMatrixJson {
  TP: number;
  FN: number;
  FP: number;
  TN: number;
}

export interface EUReportJson {
  outcome_eu: number;
  counter_eu: number;
  usage_eu: number;
  unaided_eu: number;
  relative_outcome_eu: number;
  relative_counter_eu: number;
  relative_usage_eu: number;
  aided: ConfusionMatrixJson;
  unaided: ConfusionMatrixJson;
  sensitivity_aided: number | null;
  specificity_aided: number | null;
  sensitivity_unaided: number | null;
  specificity_unaided: number | null;
}

export interface EpisodeJson {
  case_index: number;
  gt: Verdict;
  base_strength: number;
  ai_strength: number;
  dm_strength: number;
  ai_verdict: Verdict;
  unaided_verdict: Verdict;
  aided_verdict: Verdict;
  branch: BranchName;
  cell: CellName;
  discovered: boolean;
  workload: number;
}

export interface ScenarioResultJson {
  scenario: JsonObject;
  n_cases: number;
  seed: number;
  cell_counts: Record<CellName, number>;
  branch_counts: Record<string, number>;
  joint_counts: Record<string, Record<CellName, number>>;
  discovered_counts: Record<CellName, number>;
  matrix: Record<CellName, number>;
  report: EUReportJson;
  mean_workload: number;
  episodes: EpisodeJson[];
}

export interface SweepPayload {
  param_path: string;
  values: number[];
  seed_policy: "shared" | "per_value";
  results: ScenarioResultJson[];
  relative_outcome_eu: number[];
  relative_counter_eu: number[];
  relative_usage_eu: number[];
}

export interface SimulateResponse {
  result: ScenarioResultJson;
}

export interface SweepResponse {
  sweep: SweepPayload;
}

export interface CompareResponse {
  results: ScenarioResultJson[];
  names: string[];
}

export interface CalibrationJson {
  pos_threshold: number;
  neg_threshold: number;
  target_rate: number;
  achieved_rate: number;
}

export interface ApiErrorBody {
  code: string;
  message: string;
  field_path: string;
}
