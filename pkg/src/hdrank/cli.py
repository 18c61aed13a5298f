"""Command-line client for the testing service.

The CLI parses local CSV files, sends requests to the HTTP service and
renders the responses.  By default it talks to an in-process instance of
the application, so no server needs to be running; ``--server URL`` points
it at a remote instance instead.

Exit statuses: 0 success, 2 input or configuration error, 3 method
precondition violated, 4 numerical or internal failure.
"""

from __future__ import annotations

import argparse
import asyncio
import sys
from typing import Any

import httpx

from . import __version__, io
from .errors import ValidationError
from .simulate import DEFAULT_SIGNAL_GRID

OK, EXIT_INPUT, EXIT_PRECONDITION, EXIT_NUMERICAL = 0, 2, 3, 4


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hdrank",
        description="Rank-based high-dimensional mean tests and Monte Carlo studies.",
    )
    parser.add_argument("--version", action="version", version=f"hdrank {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    one = sub.add_parser("one-sample", help="test a zero location vector on one CSV dataset")
    one.add_argument("--input", "-i", required=True, help="CSV file, rows = samples")
    _common_test_flags(one)
    one.set_defaults(handler=cmd_one_sample)

    two = sub.add_parser("two-sample", help="compare the locations of two CSV datasets")
    two.add_argument("--x", required=True, help="first sample CSV file")
    two.add_argument("--y", required=True, help="second sample CSV file")
    _common_test_flags(two)
    two.set_defaults(handler=cmd_two_sample)

    sim = sub.add_parser("simulate", help="run a Monte Carlo size or power study")
    sim.add_argument("--problem", choices=["one-sample", "two-sample"], default="one-sample")
    sim.add_argument("--n", type=int, default=100, help="first sample size")
    sim.add_argument("--m", type=int, default=None, help="second sample size (two-sample only)")
    sim.add_argument("--p", type=int, default=200, help="dimension")
    sim.add_argument("--scenario", choices=["identity", "ar1"], default="identity")
    sim.add_argument("--rho", type=float, default=None, help="AR(1) correlation (ar1 only)")
    sim.add_argument("--dist", choices=["normal", "t3"], default="normal")
    sim.add_argument(
        "--m-signal",
        default="0",
        help="comma-separated sparsity grid; 0 = size study, 'default' = standard power grid",
    )
    sim.add_argument("--reps", type=int, default=1000)
    sim.add_argument("--alpha", type=float, default=0.05)
    sim.add_argument("--seed", type=int, default=0, help="master seed for the replication streams")
    sim.add_argument("--bandwidth", type=int, default=None)
    sim.add_argument("--method", choices=["max", "sum", "com", "all"], default="all")
    sim.add_argument("--threads", type=int, default=None, help="worker threads (default: HDRANK_THREADS or CPU count)")
    sim.add_argument("--format", choices=["csv", "json"], default="csv", help="stdout format when --output is not given")
    sim.add_argument("--output", "-o", default=None, help="path prefix; writes PREFIX.csv and PREFIX.json")
    sim.add_argument("--server", default=None, help="base URL of a running service")
    sim.set_defaults(handler=cmd_simulate)

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    serve.set_defaults(handler=cmd_serve)
    return parser


def _common_test_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--method", choices=["max", "sum", "com", "all"], default="all")
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--bandwidth", type=int, default=None)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--output", "-o", default=None, help="write the report here instead of stdout")
    p.add_argument("--server", default=None, help="base URL of a running service")


def cmd_one_sample(args) -> int:
    matrix = _read_matrix(args.input)
    payload = {
        "data": matrix.tolist(),
        "method": args.method,
        "alpha": args.alpha,
        "bandwidth": args.bandwidth,
    }
    body = _post("/v1/tests/one-sample", payload, args.server)
    _emit_report(body["results"], args)
    return OK


def cmd_two_sample(args) -> int:
    x = _read_matrix(args.x)
    y = _read_matrix(args.y)
    if x.shape[1] != y.shape[1]:
        raise CliError(
            EXIT_INPUT,
            f"column counts differ: {args.x} has {x.shape[1]}, {args.y} has {y.shape[1]}",
        )
    payload = {
        "x": x.tolist(),
        "y": y.tolist(),
        "method": args.method,
        "alpha": args.alpha,
        "bandwidth": args.bandwidth,
    }
    body = _post("/v1/tests/two-sample", payload, args.server)
    _emit_report(body["results"], args)
    return OK


def cmd_simulate(args) -> int:
    if args.scenario == "identity" and args.rho is not None:
        raise CliError(EXIT_INPUT, "--rho only applies to --scenario ar1")
    if args.scenario == "ar1" and args.rho is None:
        raise CliError(EXIT_INPUT, "--scenario ar1 needs --rho")
    if args.problem == "one-sample" and args.m is not None:
        raise CliError(EXIT_INPUT, "--m only applies to --problem two-sample")
    payload = {
        "problem": args.problem.replace("-", "_"),
        "n": args.n,
        "m": args.m,
        "p": args.p,
        "scenario": args.scenario,
        "rho": args.rho,
        "distribution": args.dist,
        "m_signal": _parse_signal_grid(args.m_signal, args.p),
        "reps": args.reps,
        "alpha": args.alpha,
        "seed": args.seed,
        "bandwidth": args.bandwidth,
        "method": args.method,
        "threads": args.threads,
    }
    body = _post("/v1/simulations", payload, args.server)
    csv_text = io.study_csv_text(body)
    json_text = io.study_json_text(body)
    if args.output:
        with open(args.output + ".csv", "w", encoding="utf-8") as fh:
            fh.write(csv_text)
        with open(args.output + ".json", "w", encoding="utf-8") as fh:
            fh.write(json_text)
        for cell in body["cells"]:
            print(
                f"{cell['method']} n={cell['n']} m={cell['m']} p={cell['p']} "
                f"{cell['distribution']} {cell['scenario']} m_signal={cell['m_signal']}: "
                f"rejection {cell['rejection_rate']:.4g} "
                f"(mc se {cell['mc_stderr']:.2g})"
            )
    else:
        sys.stdout.write(csv_text if args.format == "csv" else json_text)
    return OK


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port)
    return OK


def _read_matrix(path: str):
    try:
        return io.read_matrix_csv(path)
    except OSError as exc:
        raise CliError(EXIT_INPUT, f"cannot read {path}: {exc}") from exc


def _parse_signal_grid(text: str, p: int) -> list[int]:
    if text.strip() == "default":
        return sorted({min(ms, p) for ms in DEFAULT_SIGNAL_GRID})
    try:
        grid = [int(part) for part in text.split(",") if part.strip() != ""]
    except ValueError:
        raise CliError(EXIT_INPUT, f"--m-signal must be a comma-separated integer list, got {text!r}") from None
    if not grid:
        raise CliError(EXIT_INPUT, "--m-signal must not be empty")
    return grid


def _emit_report(records: list[dict[str, Any]], args) -> None:
    text = (
        io.report_json_text(records)
        if args.format == "json"
        else io.report_csv_text(records)
    )
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _post(path: str, payload: dict, server: str | None) -> dict:
    if server:
        try:
            with httpx.Client(base_url=server, timeout=None) as client:
                resp = client.post(path, json=payload)
        except httpx.HTTPError as exc:
            raise CliError(EXIT_NUMERICAL, f"request to {server} failed: {exc}") from exc
        return _handle_response(resp.status_code, resp.json())
    return _handle_response(*asyncio.run(_post_in_process(path, payload)))


async def _post_in_process(path: str, payload: dict) -> tuple[int, dict]:
    from .service import create_app

    transport = httpx.ASGITransport(app=create_app())
    async with httpx.AsyncClient(
        transport=transport, base_url="http://hdrank.internal", timeout=None
    ) as client:
        resp = await client.post(path, json=payload)
        return resp.status_code, resp.json()


def _handle_response(status: int, body: dict) -> dict:
    if status == 200:
        return body
    detail = body.get("detail")
    if isinstance(detail, dict):
        code = detail.get("code")
        message = detail.get("message", str(detail))
        if code == "invalid_input":
            raise CliError(EXIT_INPUT, message)
        if code == "method_precondition":
            raise CliError(EXIT_PRECONDITION, message)
        raise CliError(EXIT_NUMERICAL, message)
    if status == 422:
        raise CliError(EXIT_INPUT, f"invalid request: {detail}")
    raise CliError(EXIT_NUMERICAL, f"service error {status}: {detail}")


if __name__ == "__main__":
    sys.exit(main())
