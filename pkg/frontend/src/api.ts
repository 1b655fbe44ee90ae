import type { EvaluateResponse, HeatmapResponse, ScenarioBody, UseCasesResponse } from "./types.js";

// Thin client over the stateless service. Each endpoint keeps at most one
// request in flight: starting a new one aborts the old (latest wins), so a
// drag can never interleave stale verdicts over fresh ones.

export class ApiClient {
  private controllers = new Map<string, AbortController>();

  constructor(readonly baseUrl: string) {}

  private async post<T>(path: string, body: unknown): Promise<T> {
    this.controllers.get(path)?.abort();
    const controller = new AbortController();
    this.controllers.set(path, controller);
    const resp = await fetch(this.baseUrl + path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
      signal: controller.signal,
    });
    if (!resp.ok) {
      throw new Error(`${path} failed: ${resp.status} ${await resp.text()}`);
    }
    return (await resp.json()) as T;
  }

  async useCases(): Promise<UseCasesResponse> {
    const resp = await fetch(this.baseUrl + "/use-cases");
    if (!resp.ok) throw new Error(`/use-cases failed: ${resp.status}`);
    return (await resp.json()) as UseCasesResponse;
  }

  evaluate(scenario: ScenarioBody, useCases: string[] | "all"): Promise<EvaluateResponse> {
    return this.post<EvaluateResponse>("/evaluate", { scenario, use_case: useCases });
  }

  heatmap(scenario: ScenarioBody, metric: string): Promise<HeatmapResponse> {
    return this.post<HeatmapResponse>("/heatmap", { scenario, metric });
  }
}

export function isAbortError(err: unknown): boolean {
  return err instanceof DOMException && err.name === "AbortError";
}
