import { ApiClient } from "./api.js";
import { PlannerController } from "./controller.js";
import { MapView, type Tool } from "./map.js";
import { PlannerStore } from "./state.js";

const SERVICE_URL = new URLSearchParams(location.search).get("service") ?? "http://127.0.0.1:8099";

const KNOBS: [string, "signal" | "hardware", string, number][] = [
  ["bandwidth (GHz)", "signal", "bandwidth_hz", 1e9],
  ["carrier (GHz)", "hardware", "carrier_hz", 1e9],
  ["tx power / element (dBm)", "hardware", "ptx_per_element_dbm", 1],
  ["anchor array / dim", "hardware", "in_elements_per_dim", 1],
  ["device array / dim", "hardware", "ue_elements_per_dim", 1],
];

function el<K extends keyof HTMLElementTagNameMap>(tag: K, parent: HTMLElement, text?: string) {
  const node = document.createElement(tag);
  if (text) node.textContent = text;
  parent.appendChild(node);
  return node;
}

export function mountApp(root: HTMLElement, serviceUrl: string = SERVICE_URL): PlannerController {
  const store = new PlannerStore();

  const banner = el("div", root);
  banner.id = "stale-banner";
  banner.textContent = "service unreachable - showing stale results";
  banner.hidden = true;

  const layout = el("div", root);
  layout.className = "layout";

  const mapPane = el("div", layout);
  mapPane.className = "map-pane";
  const toolbar = el("div", mapPane);
  const canvas = el("canvas", mapPane);
  canvas.width = 640;
  canvas.height = 640;
  const map = new MapView(canvas, store);

  for (const tool of ["select", "anchor", "ris", "obstacle"] as Tool[]) {
    const button = el("button", toolbar, tool);
    button.dataset.tool = tool;
    button.addEventListener("click", () => {
      map.tool = tool;
      toolbar.querySelectorAll("button").forEach((b) => b.classList.toggle("active", b === button));
    });
  }

  const side = el("div", layout);
  side.className = "side-pane";

  const caseBox = el("fieldset", side);
  el("legend", caseBox, "use cases");
  for (const id of ["C1", "C2", "L1", "L2", "L3", "S1", "S2"]) {
    const label = el("label", caseBox);
    const box = el("input", label) as HTMLInputElement;
    box.type = "checkbox";
    box.dataset.useCase = id;
    box.addEventListener("change", () => store.toggleUseCase(id));
    label.appendChild(document.createTextNode(id));
  }

  const metricBox = el("fieldset", side);
  el("legend", metricBox, "heatmap metric");
  const metric = el("select", metricBox) as HTMLSelectElement;
  for (const m of ["peb", "gdop", "visible_count", "rate", "sensing_snr"]) {
    const option = el("option", metric, m) as HTMLOptionElement;
    option.value = m;
  }
  metric.addEventListener("change", () => store.setMetric(metric.value));

  const knobBox = el("fieldset", side);
  el("legend", knobBox, "signal & hardware");
  for (const [label, section, key, scale] of KNOBS) {
    const row = el("label", knobBox, label + " ");
    const input = el("input", row) as HTMLInputElement;
    input.type = "number";
    input.dataset.knob = `${section}.${key}`;
    input.value = String((store.scenario[section] as unknown as Record<string, number>)[key]! / scale);
    input.addEventListener("change", () => {
      store.setKnob(section, key, Number(input.value) * scale);
    });
  }

  const panel = el("div", side);
  panel.id = "verdict-panel";

  const api = new ApiClient(serviceUrl);
  const controller = new PlannerController(store, api, panel, banner, map);
  map.render();
  controller.refresh();
  return controller;
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  mountApp(document.getElementById("app")!);
}
