"""Command-line interface.

Exit codes: 0 success, 1 when the only problem is an infeasible or failing
result, 2 on errors (bad arguments, unparseable scenario, I/O).
"""

from __future__ import annotations

import argparse
import sys

from . import deployment, emitters, scenario, usecases
from .deployment import ConfigurationError
from .scenario import ScenarioParseError


def _load(path: str | None) -> usecases.ScenarioConfig:
    if path is None:
        return usecases.default_scenario()
    return scenario.load_scenario(path)


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def cmd_report(args) -> int:
    scn = _load(args.scenario)
    ids = None if args.use_case == "all" else [args.use_case]
    reports = usecases.evaluate_all(scn, ids)
    for report in reports:
        sys.stdout.write(emitters.report_to_text(report))
    if args.json:
        _write(args.json, emitters.reports_json(reports))
    return 0 if all(r.overall == "pass" for r in reports) else 1


def cmd_sweep(args) -> int:
    scn = _load(args.scenario)
    result = emitters.run_sweep(
        scn, args.param, args.start, args.stop, args.points, args.target, args.use_case
    )
    _write(args.out, result.to_csv())
    return 0 if all(result.feasible) else 1


def cmd_curve(args) -> int:
    scn = _load(args.scenario)
    if args.figure == "fig2":
        _write(args.out, emitters.error_curve_csv(scn))
    else:
        _write(args.out, emitters.bandwidth_power_curve_csv(scn))
    return 0


def cmd_heatmap(args) -> int:
    scn = _load(args.scenario)
    link = deployment.LinkContext(
        ue_array=scn.hardware.ue_array,
        pathloss=scn.hardware.pathloss,
        noise=scn.hardware.ue_noise,
        bandwidth_hz=scn.signal.bandwidth_hz,
        ptx_per_element_dbm=scn.hardware.ptx_per_element_dbm,
        rate_model=scn.signal.rate_model,
        target=_heatmap_target(scn),
        sensing_noise=scn.hardware.in_noise,
        impl_loss_db=scn.hardware.impl_loss_db,
    )
    heatmap = deployment.coverage_heatmap(
        scn.deployment.region,
        list(scn.deployment.nodes),
        scn.deployment.mix,
        scn.deployment.obstacles,
        args.metric,
        link,
    )
    _write(args.out, emitters.heatmap_to_csv(heatmap))
    if args.pgm:
        _write(args.pgm, emitters.heatmap_to_pgm(heatmap))
    return 0


def _heatmap_target(scn: usecases.ScenarioConfig):
    from . import channel

    rcs = scn.overrides.rcs_m2 if scn.overrides.rcs_m2 is not None else 1.0
    return channel.RadarTarget(rcs_m2=rcs)


def cmd_recommend(args) -> int:
    ids = ["C1", "C2", "L1", "L2", "L3", "S1", "S2"] if args.use_cases == "all" else args.use_cases.split(",")
    rec = usecases.recommend(ids)
    for note in rec.notes:
        sys.stdout.write(f"- {note}\n")
    if args.out:
        _write(args.out, scenario.scenario_to_text(rec.scenario))
    if args.json:
        _write(args.json, emitters.reports_json(list(rec.reports)))
    return 0 if rec.all_pass else 1


def cmd_serve(args) -> int:
    from . import service

    service.serve(args.host, args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="isacplan",
        description="Feasibility engine for joint communication, localization, and sensing radio design",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("report", help="evaluate a scenario against use-case targets")
    p.add_argument("scenario", nargs="?", help="scenario file (defaults apply when omitted)")
    p.add_argument("--use-case", default="all", help="use case id or 'all'")
    p.add_argument("--json", help="also write the report set as JSON to this path")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("sweep", help="solve required power/bandwidth over a parameter grid")
    p.add_argument("scenario", nargs="?")
    p.add_argument("--param", required=True, help="dotted scenario key, e.g. signal.bandwidth_hz")
    p.add_argument("--from", dest="start", type=float, required=True)
    p.add_argument("--to", dest="stop", type=float, required=True)
    p.add_argument("--points", type=int, default=21)
    p.add_argument("--target", choices=["rate", "peb"], default="rate")
    p.add_argument("--use-case", default="C2")
    p.add_argument("--out", help="CSV output path (stdout when omitted)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("curve", help="emit one of the preset trade-off curves as CSV")
    p.add_argument("scenario", nargs="?")
    p.add_argument("--figure", choices=["fig2", "fig3"], required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("heatmap", help="evaluate a coverage metric over the scenario region")
    p.add_argument("scenario", nargs="?")
    p.add_argument(
        "--metric",
        choices=["peb", "gdop", "visible_count", "rate", "sensing_snr"],
        default="peb",
    )
    p.add_argument("--out", help="CSV output path (stdout when omitted)")
    p.add_argument("--pgm", help="also write a P2 grayscale image to this path")
    p.set_defaults(func=cmd_heatmap)

    p = sub.add_parser("recommend", help="joint requirement envelope over selected use cases")
    p.add_argument("--use-cases", default="all", help="comma-separated ids or 'all'")
    p.add_argument("--out", help="write the recommended scenario file here")
    p.add_argument("--json", help="write the verification reports here")
    p.set_defaults(func=cmd_recommend)

    p = sub.add_parser("serve", help="run the stateless HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8099)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ScenarioParseError as exc:
        for diag in exc.diagnostics:
            sys.stderr.write(f"error: {diag}\n")
        return 2
    except (ConfigurationError, OSError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
