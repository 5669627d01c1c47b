"""Command-line client for the chart service.

The CLI never computes anything itself: it builds request models, talks
to the service (in-process by default, or a remote instance via
--server), and handles all file I/O on the client side.  Exit codes are a
stable contract: 0 success, 1 verification failure, 2 input/format error,
3 budget exhaustion.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from pathlib import Path
from typing import Optional

import httpx

from .charts import Chart
from .config import ConfigError, load_config
from .svgchart import render_svg

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_BUDGET = 3


def make_client(server: Optional[str]) -> httpx.Client:
    if server:
        return httpx.Client(base_url=server, timeout=600.0)
    # in-process transport against the bundled service app; no network
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DeprecationWarning)
        from fastapi.testclient import TestClient

    from .service import app

    return TestClient(app)


def atomic_write(path: Path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name + ".")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        atomic_write(Path(out), text)
    else:
        sys.stdout.write(text)


def _print_report(report: dict) -> None:
    for check in report["checks"]:
        status = "PASS" if check["ok"] else "FAIL"
        detail = f"  [{check['detail']}]" if check["detail"] else ""
        print(f"{status} {report['name']}: {check['label']}{detail}")


def _request(client: httpx.Client, path: str, payload: dict) -> Optional[dict]:
    response = client.post(path, json=payload)
    if response.status_code != 200:
        try:
            detail = response.json().get("detail", response.text)
        except (ValueError, AttributeError):
            detail = response.text
        print(f"error: {detail}", file=sys.stderr)
        return None
    return response.json()


# -- subcommands ----------------------------------------------------------------


def cmd_ext(args, client: httpx.Client) -> int:
    cfg = load_config(args.config, workers=args.workers, budget_cells=args.budget_cells,
                      checkpoint_dir=args.checkpoint_dir)
    checkpoint_path = Path(args.checkpoint or Path(cfg.checkpoint_dir) / f"ext_s{args.max_s}.ckpt")
    resume_text = None
    if args.resume:
        if not checkpoint_path.exists():
            print(f"error: checkpoint {checkpoint_path} not found", file=sys.stderr)
            return EXIT_INPUT_ERROR
        resume_text = checkpoint_path.read_text()
    body = _request(client, "/ext", {
        "max_s": args.max_s,
        "max_t": args.max_t,
        "oracle": args.oracle,
        "workers": cfg.workers,
        "budget_cells": cfg.budget_cells,
        "resume_checkpoint": resume_text,
    })
    if body is None:
        return EXIT_INPUT_ERROR
    atomic_write(checkpoint_path, body["checkpoint"])
    chart_text = body["chart_tsv"]
    if body["status"] == "budget_exhausted":
        frontier = body["frontier"]
        chart_text += (
            f"# frontier: max_s={frontier['max_s']} t_done={frontier['t_done']}"
            " (budget exhausted)\n"
        )
        _emit(chart_text, args.out)
        print(
            f"budget exhausted at t={frontier['t_done']}; partial chart and "
            f"checkpoint written ({checkpoint_path})",
            file=sys.stderr,
        )
        return EXIT_BUDGET
    _emit(chart_text, args.out)
    if args.oracle:
        if body["oracle_agrees"]:
            print("oracle: minimal resolution and cobar complex agree", file=sys.stderr)
        else:
            for line in body["mismatches"]:
                print(f"oracle mismatch: {line}", file=sys.stderr)
            return EXIT_VERIFY_FAILED
    return EXIT_OK


def cmd_crho(args, client: httpx.Client) -> int:
    body = _request(client, "/crho", {
        "max_s": args.max_s,
        "max_t": args.max_t,
        "workers": args.workers or 1,
    })
    if body is None:
        return EXIT_INPUT_ERROR
    if args.svg:
        chart = Chart.from_tsv(body["chart_tsv"])
        _emit(render_svg(chart, title=f"cofiber chart s<={args.max_s} t<={args.max_t}"), args.out)
    else:
        _emit(body["chart_tsv"], args.out)
    _print_report(body["vanishing"])
    return EXIT_OK if body["vanishing"]["passed"] else EXIT_VERIFY_FAILED


def cmd_verify(args, client: httpx.Client) -> int:
    cfg = load_config(args.config)
    suite = args.suite
    if suite == "presentations":
        payload = {
            "window": args.window if args.window is not None else cfg.window,
            "samples": args.samples,
            "seed": args.seed,
        }
    elif suite == "smash":
        payload = {
            "n": args.n,
            "max_s": args.max_s if args.max_s is not None else cfg.max_s,
            "max_t": args.max_t if args.max_t is not None else cfg.max_t,
        }
    elif suite == "bpbp":
        payload = {
            "n_max": args.n,
            "degree_bound": args.degree_bound if args.degree_bound is not None else cfg.bpbp_degree,
        }
    elif suite == "fibers":
        payload = {"max_stem": args.max_stem, "max_s": args.max_s if args.max_s is not None else 12}
        if args.differentials:
            payload["differentials"] = Path(args.differentials).read_text()
        if args.e2:
            payload["e2_chart_tsv"] = Path(args.e2).read_text()
    else:  # pragma: no cover - argparse restricts choices
        return EXIT_INPUT_ERROR
    body = _request(client, f"/verify/{suite}", payload)
    if body is None:
        return EXIT_INPUT_ERROR
    _print_report(body["report"])
    return EXIT_OK if body["passed"] else EXIT_VERIFY_FAILED


def cmd_assemble(args, client: httpx.Client) -> int:
    try:
        differentials = Path(args.differentials).read_text()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    payload = {
        "differentials": differentials,
        "max_stem": args.max_stem,
        "max_s": args.max_s,
    }
    if args.e2:
        payload["e2_chart_tsv"] = Path(args.e2).read_text()
    body = _request(client, "/assemble", payload)
    if body is None:
        return EXIT_INPUT_ERROR
    _emit(body["towers_tsv"], args.out)
    _print_report(body["special"])
    _print_report(body["generic"])
    return EXIT_OK if body["passed"] else EXIT_VERIFY_FAILED


def cmd_bpbp_structure(args, client: httpx.Client) -> int:
    body = _request(client, "/bpbp/structure", {"degree_bound": args.degree_bound})
    if body is None:
        return EXIT_INPUT_ERROR
    _emit(json.dumps(body, indent=2, sort_keys=True) + "\n", args.out)
    return EXIT_OK


def cmd_serve(args, _client) -> int:
    import uvicorn

    from .service import app

    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


# -- argument parsing -------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="isochart",
        description="Charts for the rho-deformation between Adams E2 data and stable stems",
    )
    parser.add_argument("--server", help="remote service URL (default: in-process)")
    parser.add_argument("--config", help="key=value configuration file")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ext", help="compute the Ext chart by minimal resolution")
    p.add_argument("max_s", type=int)
    p.add_argument("max_t", type=int)
    p.add_argument("--oracle", action="store_true",
                   help="cross-check against the cobar complex; exit 1 on mismatch")
    p.add_argument("--resume", action="store_true", help="resume from the checkpoint file")
    p.add_argument("--checkpoint", help="checkpoint path (default: <checkpoint_dir>/ext_s<max_s>.ckpt)")
    p.add_argument("--checkpoint-dir", default=None)
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--budget-cells", type=int, default=None)
    p.add_argument("--out", help="chart output path (default: stdout)")
    p.set_defaults(func=cmd_ext)

    p = sub.add_parser("crho", help="regrade the Ext chart to the cofiber-of-rho chart")
    p.add_argument("max_s", type=int)
    p.add_argument("max_t", type=int)
    p.add_argument("--svg", action="store_true", help="emit a static SVG instead of TSV")
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--out", help="output path (default: stdout)")
    p.set_defaults(func=cmd_crho)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=["presentations", "smash", "bpbp", "fibers"])
    p.add_argument("--window", type=int, default=None)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n", type=int, default=4, help="smash power / bpbp index bound")
    p.add_argument("--degree-bound", type=int, default=None)
    p.add_argument("--max-stem", type=int, default=20)
    p.add_argument("--max-s", type=int, default=None)
    p.add_argument("--max-t", type=int, default=None)
    p.add_argument("--differentials", help="differential records file (fibers)")
    p.add_argument("--e2", help="E2 chart TSV file (fibers)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("assemble", help="assemble the rho-module chart from differentials")
    p.add_argument("differentials", help="differential records file ('r src dst' lines)")
    p.add_argument("--e2", help="E2 chart TSV (default: computed for the requested window)")
    p.add_argument("--max-stem", type=int, default=20)
    p.add_argument("--max-s", type=int, default=12)
    p.add_argument("--out", help="tower chart output path (default: stdout)")
    p.set_defaults(func=cmd_assemble)

    p = sub.add_parser("bpbp-structure", help="dump the co-operations structure maps as JSON")
    p.add_argument("--degree-bound", type=int, default=14)
    p.add_argument("--out")
    p.set_defaults(func=cmd_bpbp_structure)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8423)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "serve":
            return cmd_serve(args, None)
        with make_client(args.server) as client:
            return args.func(args, client)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
