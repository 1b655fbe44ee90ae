import type { NodeBody, ObstacleBody, ScenarioBody } from "./types.js";

// Scenario state plus view state. The scenario part is always a valid
// /evaluate request body; edits go through actions so subscribers (the
// refresh loop, the renderers) see every change.

export interface ViewState {
  metric: string;
  useCases: string[];
  selectedNode: number | null;
}

export function defaultScenario(): ScenarioBody {
  return {
    signal: {
      bandwidth_hz: 2e9,
      waveform: "ofdm",
      coherent: true,
      shaping: ["freq", "time", "space"],
      streams: 1,
      se_cap_bps_per_hz: 6,
      subcarriers: 4096,
      cp_overhead: 0.07,
      symbols_per_slot: 14,
    },
    hardware: {
      carrier_hz: 28e9,
      channelized: false,
      phase_coherent: true,
      full_duplex_isolation: true,
      ptx_per_element_dbm: 0,
      in_elements_per_dim: 16,
      in_dims: 2,
      in_element_gain_dbi: 0,
      in_spacing_wavelengths: 0.5,
      ue_elements_per_dim: 16,
      ue_dims: 2,
      ue_element_gain_dbi: 0,
      ue_spacing_wavelengths: 0.5,
      in_noise_figure_db: 5,
      ue_noise_figure_db: 10,
      impl_loss_db: 20,
      pathloss_exponent: 2,
    },
    deployment: {
      ue_x_m: 0,
      ue_y_m: 0,
      ue_z_m: 0,
      mix: ["tdoa"],
      sigma_tdoa_s: 2e-11,
      region_min_x_m: -10,
      region_min_y_m: -10,
      region_max_x_m: 10,
      region_max_y_m: 10,
      region_resolution_m: 1,
    },
    nodes: [],
    obstacles: [],
    overrides: {
      alpha_range: 24.0,
      alpha_angle: 96.09384164222874,
      detection_threshold_db: 10,
      rcs_m2: null,
      latency_budget_fraction: 0.3,
      verdict_rtol: 0.05,
    },
  };
}

export function makeNode(x: number, y: number): NodeBody {
  return {
    x_m: x,
    y_m: y,
    z_m: 3,
    kind: "bs",
    yaw_deg: 0,
    pitch_deg: 0,
    roll_deg: 0,
    elements_per_dim: 16,
    dims: 2,
    element_gain_dbi: 0,
    sync_error_s: 5e-11,
    position_error_m: 0.5e-3,
    orientation_error_deg: 0.05,
  };
}

type Listener = () => void;

export class PlannerStore {
  scenario: ScenarioBody = defaultScenario();
  view: ViewState = { metric: "peb", useCases: [], selectedNode: null };
  private listeners: Listener[] = [];

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  private emit(): void {
    for (const listener of this.listeners) listener();
  }

  addNode(x: number, y: number): void {
    this.scenario.nodes.push(makeNode(x, y));
    this.view.selectedNode = this.scenario.nodes.length - 1;
    this.emit();
  }

  moveNode(index: number, x: number, y: number): void {
    const node = this.scenario.nodes[index];
    if (!node) return;
    node.x_m = x;
    node.y_m = y;
    this.emit();
  }

  deleteNode(index: number): void {
    if (index < 0 || index >= this.scenario.nodes.length) return;
    this.scenario.nodes.splice(index, 1);
    this.view.selectedNode = null;
    this.emit();
  }

  setNodeKind(index: number, kind: "bs" | "ris"): void {
    const node = this.scenario.nodes[index];
    if (!node) return;
    node.kind = kind;
    this.emit();
  }

  addObstacle(obstacle: ObstacleBody): void {
    this.scenario.obstacles.push(obstacle);
    this.emit();
  }

  deleteObstacle(index: number): void {
    this.scenario.obstacles.splice(index, 1);
    this.emit();
  }

  setKnob(section: "signal" | "hardware" | "deployment" | "overrides", key: string, value: unknown): void {
    (this.scenario[section] as unknown as Record<string, unknown>)[key] = value;
    this.emit();
  }

  toggleUseCase(id: string): void {
    const selected = this.view.useCases;
    this.view.useCases = selected.includes(id) ? selected.filter((u) => u !== id) : [...selected, id];
    this.emit();
  }

  setMetric(metric: string): void {
    this.view.metric = metric;
    this.emit();
  }

  selectNode(index: number | null): void {
    this.view.selectedNode = index;
    this.emit();
  }

  /** The exact /evaluate request body for the current state. */
  evaluateBody(): { scenario: ScenarioBody; use_case: string[] | "all" } {
    const ids = this.view.useCases;
    return { scenario: this.scenario, use_case: ids.length ? ids : "all" };
  }
}
