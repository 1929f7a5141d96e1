/**
 * Thin typed client for the cfx JSON API. All numbers displayed anywhere in
 * the UI come out of these responses untouched.
 */

import type {
  ApiErrorBody,
  CalibrationJson,
  CompareResponse,
  JsonObject,
  PresetsResponse,
  SchemaResponse,
  SimulateResponse,
  SweepResponse,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    readonly fieldPath: string,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

/** Network-level failure: the service is unreachable, not complaining. */
export class OfflineError extends Error {
  constructor(cause: unknown) {
    super(`service unreachable: ${cause instanceof Error ? cause.message : String(cause)}`);
    this.name = "OfflineError";
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private readonly base: string = "",
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  schema(): Promise<SchemaResponse> {
    return this.request("/api/schema");
  }

  presets(): Promise<PresetsResponse> {
    return this.request("/api/presets");
  }

  eu(body: JsonObject): Promise<JsonObject> {
    return this.post("/api/eu", body);
  }

  simulate(body: JsonObject): Promise<SimulateResponse> {
    return this.post("/api/simulate", body);
  }

  sweep(body: JsonObject): Promise<SweepResponse> {
    return this.post("/api/sweep", body);
  }

  compare(body: JsonObject): Promise<CompareResponse> {
    return this.post("/api/compare", body);
  }

  calibrate(body: JsonObject): Promise<{ calibration: CalibrationJson }> {
    return this.post("/api/calibrate", body);
  }

  private post<T>(path: string, body: JsonObject): Promise<T> {
    return this.request(path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    let resp: Response;
    try {
      resp = await this.fetchFn(this.base + path, init);
    } catch (cause) {
      throw new OfflineError(cause);
    }
    if (!resp.ok) {
      let body: ApiErrorBody | null = null;
      try {
        body = (await resp.json()) as ApiErrorBody;
      } catch {
        body = null;
      }
      throw new ApiError(
        resp.status,
        body?.code ?? "http_error",
        body?.field_path ?? "",
        body?.message ?? `HTTP ${resp.status}`,
      );
    }
    return (await resp.json()) as T;
  }
}
