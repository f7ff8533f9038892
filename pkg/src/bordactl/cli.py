"""Command-line client.

The CLI is a thin client of the HTTP service: each subcommand reads its
input files, posts them to the service, prints the returned report and
exits with the report's code (0 feasible/true, 1 infeasible/false,
2 usage or input error).  By default the service app is invoked
in-process over an ASGI transport, so no server is needed; pass
`--server http://host:port` to talk to a running instance instead.
"""

from __future__ import annotations

import argparse
import asyncio
import sys
from pathlib import Path

import httpx


def _post(server: str | None, path: str, payload: dict) -> httpx.Response:
    if server:
        return httpx.post(server.rstrip("/") + path, json=payload, timeout=600.0)

    async def go() -> httpx.Response:
        from .service import app

        transport = httpx.ASGITransport(app=app)
        async with httpx.AsyncClient(
            transport=transport, base_url="http://bordactl"
        ) as client:
            return await client.post(path, json=payload, timeout=600.0)

    return asyncio.run(go())


def _call(server: str | None, path: str, payload: dict) -> dict | int:
    """POST and return the JSON body, or an error exit code."""
    try:
        resp = _post(server, path, payload)
    except httpx.HTTPError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if resp.status_code != 200:
        try:
            detail = resp.json().get("detail", resp.text)
        except ValueError:
            detail = resp.text
        print(f"error: {detail}", file=sys.stderr)
        return 2
    return resp.json()


def _read(path: str) -> str | int:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def _cmd_score(args: argparse.Namespace) -> int:
    text = _read(args.election_file)
    if isinstance(text, int):
        return text
    data = _call(args.server, "/score", {"election": text})
    if isinstance(data, int):
        return data
    print(data["text"], end="")
    return data["exit_code"]


def _cmd_solve(args: argparse.Namespace) -> int:
    text = _read(args.instance_file)
    if isinstance(text, int):
        return text
    data = _call(
        args.server,
        "/solve",
        {"instance": text, "solver": args.solver, "model": args.model},
    )
    if isinstance(data, int):
        return data
    print(data["text"], end="")
    return data["exit_code"]


def _cmd_verify(args: argparse.Namespace) -> int:
    text = _read(args.instance_file)
    if isinstance(text, int):
        return text
    data = _call(
        args.server,
        "/verify",
        {"instance": text, "picks": args.picks, "model": args.model},
    )
    if isinstance(data, int):
        return data
    print(data["text"], end="")
    return data["exit_code"]


def _cmd_reduce(args: argparse.Namespace) -> int:
    text = _read(args.graph_file)
    if isinstance(text, int):
        return text
    data = _call(
        args.server,
        "/reduce",
        {"graph": text, "k": args.k, "target": args.target, "force": args.force},
    )
    if isinstance(data, int):
        return data
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    instance_path = out_dir / f"{args.target}.instance"
    witness_path = out_dir / f"{args.target}.witness"
    instance_path.write_text(data["instance_text"], encoding="utf-8")
    witness_path.write_text(data["witness_text"], encoding="utf-8")
    print(data["text"], end="")
    print(f"wrote\t{instance_path}")
    print(f"wrote\t{witness_path}")
    return data["exit_code"]


def _cmd_gen(args: argparse.Namespace) -> int:
    data = _call(
        args.server,
        "/gen",
        {
            "seed": args.seed,
            "m": args.m,
            "n": args.n,
            "t": args.t,
            "rule": args.rule,
            "kind": args.kind,
            "budget": args.budget,
            "pool": args.pool,
        },
    )
    if isinstance(data, int):
        return data
    if args.out:
        Path(args.out).write_text(data["instance_text"], encoding="utf-8")
    else:
        print(data["instance_text"], end="")
    return data["exit_code"]


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    uvicorn.run("bordactl.service:app", host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bordactl",
        description="Exact Borda control solving over election files",
    )
    parser.add_argument(
        "--server",
        default=None,
        help="base URL of a running service (default: in-process)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("score", help="score an election file and report winners")
    p.add_argument("election_file")
    p.set_defaults(func=_cmd_score)

    p = sub.add_parser("solve", help="solve a control instance file")
    p.add_argument("instance_file")
    p.add_argument("--solver", choices=["brute", "fpt", "auto"], default="auto")
    p.add_argument("--model", choices=["unique", "cowinner"], default="unique")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("verify", help="check a proposed solution")
    p.add_argument("instance_file")
    p.add_argument("picks", nargs="*", help="candidate labels or vote indices")
    p.add_argument("--model", choices=["unique", "cowinner"], default="unique")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("reduce", help="build a control instance from a graph")
    p.add_argument("graph_file")
    p.add_argument("-k", type=int, required=True, help="dominating set budget")
    p.add_argument(
        "--target",
        required=True,
        choices=["ccdv", "ccac", "ccdc", "2ccac-up", "2ccdc-down", "2ccdc-up", "2ccac-down"],
    )
    p.add_argument("--out", default=".", help="output directory")
    p.add_argument("--force", action="store_true", help="override the size guard")
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("gen", help="generate a seeded random instance")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--m", type=int, required=True, help="registered candidates")
    p.add_argument("--n", type=int, required=True, help="registered votes")
    p.add_argument("--t", type=int, required=True, help="truncation cap")
    p.add_argument("--rule", choices=["borda", "up", "down", "av"], required=True)
    p.add_argument("--kind", choices=["ccav", "ccdv", "ccac", "ccdc"], required=True)
    p.add_argument("--budget", type=int, required=True)
    p.add_argument("--pool", type=int, default=None, help="pool size (ccav/ccac)")
    p.add_argument("--out", default=None, help="output file (default: stdout)")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=_cmd_serve)

    return parser


def run(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
