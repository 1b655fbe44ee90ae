import { ApiClient, isAbortError } from "./api.js";
import { debounce, type Debounced } from "./debounce.js";
import type { MapView } from "./map.js";
import { renderPanel } from "./panel.js";
import type { PlannerStore } from "./state.js";
import type { EvaluateResponse } from "./types.js";

export const DEBOUNCE_MS = 150;

// Glue between edits and the service. Every state change schedules a
// debounced round-trip; responses land verbatim in the panel and the
// heatmap overlay. A failed round-trip keeps the last data on screen and
// raises the stale banner; nothing is ever recomputed client-side.

export class PlannerController {
  lastResponse: EvaluateResponse | null = null;
  readonly refresh: Debounced<[]>;
  private generation = 0;

  constructor(
    readonly store: PlannerStore,
    readonly api: ApiClient,
    readonly panel: HTMLElement,
    readonly banner: HTMLElement,
    readonly map: MapView | null = null,
  ) {
    this.refresh = debounce(() => void this.refreshNow(), DEBOUNCE_MS);
    store.subscribe(() => this.refresh());
    if (map) map.onDragEnd = () => this.refresh.flush();
  }

  async refreshNow(): Promise<void> {
    const generation = ++this.generation;
    const body = this.store.evaluateBody();
    try {
      const [reports, heatmap] = await Promise.all([
        this.api.evaluate(body.scenario, body.use_case),
        this.api.heatmap(body.scenario, this.store.view.metric),
      ]);
      if (generation !== this.generation) return; // a newer edit superseded us
      this.lastResponse = reports;
      renderPanel(this.panel, reports.reports);
      this.map?.setHeatmap(heatmap);
      this.banner.hidden = true;
    } catch (err) {
      if (isAbortError(err)) return;
      if (generation !== this.generation) return;
      // Keep stale verdicts visible, but say so.
      this.banner.hidden = false;
    }
  }
}
