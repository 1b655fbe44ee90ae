"""Stateless HTTP service exposing the engine to the planner UI.

Every request carries the full scenario, so the service keeps no session
state and requests may be handled concurrently. Responses are JSON; the
evaluate endpoint returns byte-identical output to the CLI's --json report.
"""

from __future__ import annotations

import json
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

from . import deployment, emitters, scenario, usecases
from .deployment import ConfigurationError
from .scenario import ScenarioParseError

MAX_BODY_BYTES = 4 * 1024 * 1024


def _use_case_payload() -> str:
    cases = []
    for uc in usecases.builtin_use_cases().values():
        sensing = None
        if uc.sensing is not None:
            sensing = {
                "mode": uc.sensing.mode,
                "max_range_m": uc.sensing.max_range_m,
                "update_rate_hz": uc.sensing.update_rate_hz,
                "range_res_m": uc.sensing.range_res_m,
                "range_acc_m": uc.sensing.range_acc_m,
                "ang_res_deg": uc.sensing.ang_res_deg,
                "ang_acc_deg": uc.sensing.ang_acc_deg,
                "velocity_m_s": uc.sensing.velocity_m_s,
            }
        cases.append(
            {
                "id": uc.id,
                "description": uc.description,
                "kind": uc.kind,
                "link_range_m": uc.link_range_m,
                "rate_bps": uc.rate_bps,
                "e2e_latency_s": uc.e2e_latency_s,
                "loc_acc_m": uc.loc_acc_m,
                "orient_acc_deg": uc.orient_acc_deg,
                "update_rate_hz": uc.update_rate_hz,
                "coherent_required": uc.coherent_required,
                "sensing": sensing,
            }
        )
    return json.dumps({"use_cases": cases}, indent=2, allow_nan=False) + "\n"


def handle_evaluate(body: dict) -> str:
    scn = scenario.scenario_from_dict(body.get("scenario", {}))
    selector = body.get("use_case", "all")
    if selector == "all":
        ids = None
    elif isinstance(selector, str):
        ids = [selector]
    else:
        ids = list(selector)
    return emitters.reports_json(usecases.evaluate_all(scn, ids))


def handle_heatmap(body: dict) -> str:
    scn = scenario.scenario_from_dict(body.get("scenario", {}))
    metric = body.get("metric", "peb")
    from . import channel

    rcs = scn.overrides.rcs_m2 if scn.overrides.rcs_m2 is not None else 1.0
    link = deployment.LinkContext(
        ue_array=scn.hardware.ue_array,
        pathloss=scn.hardware.pathloss,
        noise=scn.hardware.ue_noise,
        bandwidth_hz=scn.signal.bandwidth_hz,
        ptx_per_element_dbm=scn.hardware.ptx_per_element_dbm,
        rate_model=scn.signal.rate_model,
        target=channel.RadarTarget(rcs_m2=rcs),
        sensing_noise=scn.hardware.in_noise,
        impl_loss_db=scn.hardware.impl_loss_db,
    )
    heatmap = deployment.coverage_heatmap(
        scn.deployment.region,
        list(scn.deployment.nodes),
        scn.deployment.mix,
        scn.deployment.obstacles,
        metric,
        link,
    )
    return json.dumps(emitters.heatmap_to_dict(heatmap), indent=2, allow_nan=False) + "\n"


def handle_sweep(body: dict) -> str:
    scn = scenario.scenario_from_dict(body.get("scenario", {}))
    result = emitters.run_sweep(
        scn,
        body["param"],
        float(body["from"]),
        float(body["to"]),
        int(body.get("points", 21)),
        body.get("target", "rate"),
        body.get("use_case", "C2"),
    )
    payload = {
        "param": result.param,
        "column": result.column,
        "rows": [
            {"value": v, "solved": s, "feasible": ok}
            for v, s, ok in zip(result.values, result.solved, result.feasible)
        ],
        "csv": result.to_csv(),
    }
    return json.dumps(payload, indent=2, allow_nan=False) + "\n"


class _Handler(BaseHTTPRequestHandler):
    server_version = "isacplan"

    def log_message(self, fmt, *args):  # quiet by default
        pass

    def _send(self, status: int, text: str) -> None:
        data = text.encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(data)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
        self.end_headers()
        self.wfile.write(data)

    def _error(self, status: int, message: str, diagnostics=None) -> None:
        payload = {"error": message}
        if diagnostics:
            payload["diagnostics"] = [str(d) for d in diagnostics]
        self._send(status, json.dumps(payload, indent=2) + "\n")

    def do_OPTIONS(self):
        self._send(204, "")

    def do_GET(self):
        if self.path == "/healthz":
            self._send(200, json.dumps({"status": "ok"}) + "\n")
        elif self.path == "/use-cases":
            self._send(200, _use_case_payload())
        else:
            self._error(404, f"unknown path {self.path}")

    def do_POST(self):
        handlers = {
            "/evaluate": handle_evaluate,
            "/heatmap": handle_heatmap,
            "/sweep": handle_sweep,
        }
        handler = handlers.get(self.path)
        if handler is None:
            self._error(404, f"unknown path {self.path}")
            return
        length = int(self.headers.get("Content-Length", 0))
        if length > MAX_BODY_BYTES:
            self._error(413, "request body too large")
            return
        try:
            body = json.loads(self.rfile.read(length) or b"{}")
        except json.JSONDecodeError as exc:
            self._error(400, f"invalid JSON body: {exc}")
            return
        try:
            self._send(200, handler(body))
        except ScenarioParseError as exc:
            self._error(400, "scenario rejected", exc.diagnostics)
        except (ConfigurationError, KeyError, TypeError, ValueError) as exc:
            self._error(400, f"bad request: {exc}")


def make_server(host: str = "127.0.0.1", port: int = 8099) -> ThreadingHTTPServer:
    return ThreadingHTTPServer((host, port), _Handler)


def serve(host: str = "127.0.0.1", port: int = 8099) -> None:
    server = make_server(host, port)
    print(f"isacplan service listening on http://{host}:{server.server_address[1]}")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()


def serve_background(host: str = "127.0.0.1", port: int = 0) -> tuple[ThreadingHTTPServer, int]:
    """Start the service on a daemon thread; used by tests."""
    server = make_server(host, port)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    return server, server.server_address[1]
