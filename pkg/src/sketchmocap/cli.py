"""Command-line front door: dataset building, headless queries, composition,
export, evaluation, the latency benchmark, demo data, and the HTTP server.

Exit codes: 0 success, 1 data error (unusable dataset/result), 2 usage error
(bad flags or unreadable input files).
"""

from __future__ import annotations

import argparse
import json
import statistics
import sys
import time
from pathlib import Path

from . import __version__
from .bvh import load_bvh, write_bvh
from .camera import Camera, default_global_camera, default_local_camera
from .compose import make_assignment
from .dataset import (
    DEFAULT_FRAME_COUNT,
    DatasetIndex,
    RoleMap,
    build_index,
    load_index,
    save_index,
)
from .errors import SketchMocapError
from .evaluate import mse_report
from .frechet import warmup
from .retrieval import DEFAULT_TOP_N, RetrievalConfig, query
from .stroke import DEFAULT_SAMPLE_COUNT, Stroke2D, resample_stroke

USAGE_ERROR = 2
DATA_ERROR = 1


class CliError(Exception):
    def __init__(self, message: str, code: int = DATA_ERROR):
        super().__init__(message)
        self.code = code


def _load_index(path: str) -> DatasetIndex:
    try:
        return load_index(path)
    except (OSError, ValueError, KeyError) as exc:
        raise CliError(f"cannot load index {path}: {exc}", USAGE_ERROR)


def _load_stroke_points(path: str) -> list[list[float]]:
    try:
        payload = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise CliError(f"cannot read stroke file {path}: {exc}", USAGE_ERROR)
    if isinstance(payload, dict):
        payload = payload.get("points")
    if (
        not isinstance(payload, list)
        or len(payload) < 2
        or not all(isinstance(p, (list, tuple)) and len(p) == 2 for p in payload)
    ):
        raise CliError(f"stroke file {path} is not a [[x,y],...] polyline", USAGE_ERROR)
    return payload


def _load_camera(path: str | None, stage: str) -> Camera:
    if path is None:
        if stage == "global":
            return default_global_camera()
        return default_local_camera(target=(0.0, 0.0, 0.0), height=30.0)
    try:
        camera = Camera.from_json(json.loads(Path(path).read_text()))
    except (OSError, json.JSONDecodeError, KeyError, SketchMocapError) as exc:
        raise CliError(f"cannot read camera file {path}: {exc}", USAGE_ERROR)
    return camera


def cmd_build(args) -> int:
    try:
        roles = RoleMap.from_file(args.roles)
    except (OSError, json.JSONDecodeError, KeyError, SketchMocapError) as exc:
        raise CliError(f"cannot read roles file {args.roles}: {exc}", USAGE_ERROR)
    index = build_index(args.input, roles, frame_count=args.frames, out=args.out)
    print(f"{len(index)} entries -> {args.out}")
    for skip in index.skipped:
        print(f"skipped {skip['source']}: {skip['reason']}")
    return 0


def cmd_query(args) -> int:
    index = _load_index(args.index)
    camera = _load_camera(args.camera, args.stage)
    cfg = RetrievalConfig(
        top_n=args.top, sample_count=args.resample, stage=args.stage, role=args.role
    )
    raw = _load_stroke_points(args.stroke)
    stroke = resample_stroke(raw, count=cfg.sample_count)
    candidates = query(stroke, camera, index, cfg)
    if args.report:
        from .reporting import write_query_report

        for path in write_query_report(args.report, stroke, candidates):
            print(f"wrote {path}", file=sys.stderr)
    if args.json:
        print(json.dumps([c.to_json() for c in candidates]))
    else:
        print(f"{'rank':>4}  {'motion_id':<24} {'role':<12} {'similarity (px)':>16}")
        for c in candidates:
            print(f"{c.rank:>4}  {c.motion_id:<24} {c.joint_role:<12} {c.similarity:>16.4f}")
    return 0


def cmd_compose(args) -> int:
    index = _load_index(args.index)
    try:
        global_entry = index.entry(args.global_id)
    except KeyError as exc:
        raise CliError(str(exc))
    from .dataset import LOCAL_ROLES

    assignments = []
    seen = set()
    for spec in args.assign or []:
        role, _, motion_id = spec.partition("=")
        if not motion_id:
            raise CliError(f"--assign expects role=MOTION_ID, got {spec!r}", USAGE_ERROR)
        if role not in LOCAL_ROLES:
            raise CliError(
                f"unknown role {role!r}; expected one of {', '.join(LOCAL_ROLES)}",
                USAGE_ERROR,
            )
        if role in seen:
            raise CliError(f"role {role!r} assigned more than once", USAGE_ERROR)
        seen.add(role)
        try:
            index.entry(motion_id)
        except KeyError as exc:
            raise CliError(str(exc))
        assignments.append(
            make_assignment(global_entry.motion.skeleton, role, motion_id, index.roles)
        )
    from .compose import compose as compose_motions

    result = compose_motions(global_entry.motion, assignments, index)
    Path(args.out).write_text(write_bvh(result))
    print(f"wrote {args.out} ({result.frame_count} frames)")
    return 0


def cmd_eval(args) -> int:
    try:
        designed = load_bvh(args.designed)
        reference = load_bvh(args.reference)
    except (OSError, SketchMocapError) as exc:
        raise CliError(f"cannot load motion: {exc}", USAGE_ERROR)
    try:
        report = mse_report(designed, reference, wrap_degrees=args.wrap)
    except SketchMocapError as exc:
        raise CliError(str(exc), USAGE_ERROR)
    if args.report:
        from .reporting import write_eval_report

        for path in write_eval_report(args.report, report):
            print(f"wrote {path}", file=sys.stderr)
    if args.json:
        print(json.dumps(report.to_json()))
    else:
        print(f"motion: {designed.id}  vs  {reference.id}")
        print(f"mse: {report.mse:.6f} deg^2 over {report.frame_count} frames, "
              f"{report.joint_count} joints")
        print("worst joints:")
        for joint, value in report.top_offenders(5):
            print(f"  {joint:<20} {value:>12.6f}")
    return 0


def run_bench(
    index: DatasetIndex, queries: int = 100, top_n: int = DEFAULT_TOP_N
) -> dict:
    """Timed synthetic global queries; strokes replay entry projections.

    One untimed warmup query absorbs JIT compilation.  Returns latency
    stats in seconds plus the raw per-query samples.
    """
    from .retrieval import stage_polyline

    camera = default_global_camera()
    cfg = RetrievalConfig(top_n=top_n, stage="global")
    strokes = []
    for i in range(queries):
        entry = index.entries[i % len(index)]
        polyline = stage_polyline(entry, camera, cfg)
        strokes.append(resample_stroke(polyline.points, count=cfg.sample_count))
    warmup()
    query(strokes[0], camera, index, cfg)
    latencies = []
    for stroke in strokes:
        start = time.perf_counter()
        query(stroke, camera, index, cfg)
        latencies.append(time.perf_counter() - start)
    latencies_sorted = sorted(latencies)
    p95 = latencies_sorted[min(len(latencies) - 1, int(0.95 * len(latencies)))]
    return {
        "queries": queries,
        "entries": len(index),
        "mean_s": statistics.fmean(latencies),
        "median_s": statistics.median(latencies),
        "p95_s": p95,
        "latencies_s": latencies,
    }


def cmd_bench(args) -> int:
    index = _load_index(args.index)
    stats = run_bench(index, queries=args.queries, top_n=args.top)
    if args.report:
        from .reporting import write_bench_report

        for path in write_bench_report(args.report, stats["latencies_s"]):
            print(f"wrote {path}", file=sys.stderr)
    if args.json:
        del stats["latencies_s"]
        print(json.dumps(stats))
    else:
        print(f"{stats['queries']} queries over {stats['entries']} entries")
        print(f"mean:   {stats['mean_s'] * 1000:8.2f} ms")
        print(f"median: {stats['median_s'] * 1000:8.2f} ms")
        print(f"p95:    {stats['p95_s'] * 1000:8.2f} ms")
    return 0


def cmd_demo_data(args) -> int:
    from .demo_data import write_demo_corpus

    paths = write_demo_corpus(args.out, count=args.count, frames=args.frames)
    print(f"wrote {len(paths)} BVH files and roles.json to {args.out}")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    index = _load_index(args.index)
    dataset_id = args.dataset_id or Path(args.index).stem
    if args.ui and not Path(args.ui).is_dir():
        raise CliError(f"--ui directory {args.ui} does not exist", USAGE_ERROR)
    app = create_app({dataset_id: index}, ui_dir=args.ui)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sketchmocap",
        description="Sketch-driven motion-capture retrieval and composition",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="build a dataset index from a BVH directory")
    p.add_argument("--input", required=True, help="directory of .bvh files")
    p.add_argument("--roles", required=True, help="role-mapping JSON file")
    p.add_argument("--frames", type=int, default=DEFAULT_FRAME_COUNT,
                   help="frames per entry (default 100)")
    p.add_argument("--out", required=True, help="output index file")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("query", help="rank database entries against a stroke")
    p.add_argument("--index", required=True)
    p.add_argument("--stroke", required=True, help="JSON [[x,y],...] stroke file")
    p.add_argument("--camera", help="camera JSON file (defaults per stage)")
    p.add_argument("--stage", choices=["global", "local"], default="global")
    p.add_argument("--role", choices=["head", "left_hand", "right_hand"])
    p.add_argument("--top", type=int, default=DEFAULT_TOP_N)
    p.add_argument("--resample", type=int, default=DEFAULT_SAMPLE_COUNT)
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--report", help="directory for CSV + figure report")
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("compose", help="graft limb motions onto a global motion")
    p.add_argument("--index", required=True)
    p.add_argument("--global", dest="global_id", required=True, metavar="ID")
    p.add_argument("--assign", action="append", metavar="ROLE=ID",
                   help="e.g. --assign left_hand=demo_005 (repeatable)")
    p.add_argument("--out", required=True, help="output .bvh path")
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("eval", help="MSE between a designed and a reference BVH")
    p.add_argument("--designed", required=True)
    p.add_argument("--reference", required=True)
    p.add_argument("--wrap", action="store_true",
                   help="fold angle differences into (-180, 180]")
    p.add_argument("--json", action="store_true")
    p.add_argument("--report", help="directory for CSV + figure report")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("bench", help="measure retrieval latency")
    p.add_argument("--index", required=True)
    p.add_argument("--queries", type=int, default=100)
    p.add_argument("--top", type=int, default=DEFAULT_TOP_N)
    p.add_argument("--json", action="store_true")
    p.add_argument("--report", help="directory for CSV + figure report")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("demo-data", help="generate a synthetic BVH corpus")
    p.add_argument("--out", required=True)
    p.add_argument("--count", type=int, default=55)
    p.add_argument("--frames", type=int, default=160)
    p.set_defaults(func=cmd_demo_data)

    p = sub.add_parser("serve", help="run the HTTP design service")
    p.add_argument("--index", required=True)
    p.add_argument("--dataset-id", help="dataset name (default: index file stem)")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8008)
    p.add_argument("--ui", help="serve a built browser client from this directory at /ui")
    p.set_defaults(func=cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "query" and args.stage == "local" and not args.role:
        parser.error("--stage local requires --role")
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except SketchMocapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return DATA_ERROR


if __name__ == "__main__":
    sys.exit(main())
