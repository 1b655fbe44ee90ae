// Typed mirror of the service's JSON wire format. Field names match the
// scenario-file keys one for one; the planner never invents its own units.

export interface SignalBody {
  bandwidth_hz: number;
  waveform: string;
  coherent: boolean;
  shaping: string[];
  streams: number;
  se_cap_bps_per_hz: number;
  subcarriers: number;
  cp_overhead: number;
  symbols_per_slot: number;
}

export interface HardwareBody {
  carrier_hz: number;
  channelized: boolean;
  phase_coherent: boolean;
  full_duplex_isolation: boolean;
  ptx_per_element_dbm: number;
  in_elements_per_dim: number;
  in_dims: number;
  in_element_gain_dbi: number;
  in_spacing_wavelengths: number;
  ue_elements_per_dim: number;
  ue_dims: number;
  ue_element_gain_dbi: number;
  ue_spacing_wavelengths: number;
  in_noise_figure_db: number;
  ue_noise_figure_db: number;
  impl_loss_db: number;
  pathloss_exponent: number;
}

export interface DeploymentBody {
  ue_x_m: number;
  ue_y_m: number;
  ue_z_m: number;
  mix: string[];
  sigma_toa_s?: number;
  sigma_tdoa_s?: number;
  sigma_rtt_s?: number;
  sigma_aoa_deg?: number;
  region_min_x_m: number;
  region_min_y_m: number;
  region_max_x_m: number;
  region_max_y_m: number;
  region_resolution_m: number;
}

export interface NodeBody {
  x_m: number;
  y_m: number;
  z_m: number;
  kind: "bs" | "ris";
  yaw_deg: number;
  pitch_deg: number;
  roll_deg: number;
  elements_per_dim: number;
  dims: number;
  element_gain_dbi: number;
  sync_error_s: number;
  position_error_m: number;
  orientation_error_deg: number;
}

export interface ObstacleBody {
  vertices_m: [number, number][];
}

export interface OverridesBody {
  alpha_range: number;
  alpha_angle: number;
  detection_threshold_db: number;
  rcs_m2: number | null;
  latency_budget_fraction: number;
  verdict_rtol: number;
}

export interface ScenarioBody {
  signal: SignalBody;
  hardware: HardwareBody;
  deployment: DeploymentBody;
  nodes: NodeBody[];
  obstacles: ObstacleBody[];
  overrides: OverridesBody;
}

export type Verdict = "pass" | "fail" | "warn";

export interface CheckRow {
  name: string;
  required: number | string | null;
  achieved: number | string | null;
  margin: number | null;
  verdict: Verdict;
  paper_row: string;
  note: string;
}

export interface Report {
  use_case: string;
  overall: "pass" | "fail";
  checks: CheckRow[];
  limiting_constraint: string | null;
}

export interface EvaluateResponse {
  reports: Report[];
}

export interface HeatmapResponse {
  metric: string;
  xs_m: number[];
  ys_m: number[];
  values: (number | null)[][];
}

export interface UseCaseInfo {
  id: string;
  description: string;
  kind: string;
}

export interface UseCasesResponse {
  use_cases: UseCaseInfo[];
}
