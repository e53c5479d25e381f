"""Thin command-line client for the service.

Every subcommand builds one HTTP request and prints the JSON response.
Without --url the service app is mounted in-process (no server needed);
with --url the same requests go to a running instance.  Exit codes:
0 success, 1 domain error (structured error JSON on stdout), 2 usage.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

import httpx


def _load_tree(path: str) -> dict:
    with open(path) as fh:
        return json.load(fh)


def _csv_labels(text: str) -> list:
    from .labels import parse_label

    return [parse_label(tok.strip()) for tok in text.split(",") if tok.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stablecurves",
        description="Exact invariants of stable rational curves: trees, "
        "cross-ratios, orbit forms, Hilbert polynomials, Chow classes, "
        "signatures, and verification suites.",
    )
    parser.add_argument(
        "--url",
        default=None,
        help="base URL of a running service; defaults to an in-process app",
    )
    parser.add_argument(
        "--json",
        action="store_true",
        help="emit machine-readable JSON (the default; kept for scripts)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    for name, help_text in [
        ("type-of", "partition of coordinates by coincidence"),
        ("cross-ratio", "cross-ratio of four distinct points"),
        ("orbit-form", "multihomogeneous form cutting out the orbit closure"),
    ]:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("points", help="comma-separated points, e.g. 0,1,inf,2/3")

    p = sub.add_parser("stabilize", help="forget markings and contract")
    p.add_argument("--tree", required=True, help="tree JSON file")
    p.add_argument("--keep", required=True, help="comma-separated markings to keep")

    p = sub.add_parser("glue", help="join two trees at their starred legs")
    p.add_argument("--tree-k", required=True, help="left tree JSON file")
    p.add_argument("--tree-l", required=True, help="right tree JSON file")

    p = sub.add_parser("enumerate-trees", help="all stable tree types on n markings")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--count-only", action="store_true")

    p = sub.add_parser("hilbert-poly", help="Hilbert polynomial of a tree")
    p.add_argument("--tree", required=True, help="tree JSON file")
    p.add_argument("--eval", dest="eval_at", default=None, help="comma-separated integers")

    p = sub.add_parser("chow-class", help="cycle class by type or by tree")
    p.add_argument("--type", dest="type_string", default=None, help='partition, e.g. "1,2|3|4|5"')
    p.add_argument("--tree", default=None, help="tree JSON file")

    p = sub.add_parser("signature", help="quartet signature of a decorated tree")
    p.add_argument("--tree", required=True, help="tree JSON file")

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=["hilbert", "chow", "degeneration", "boundary", "operads"])
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--prime", type=int, default=None)
    p.add_argument("--max-n", type=int, default=None)
    p.add_argument("--samples", type=int, default=None)

    return parser


def _request(args) -> tuple:
    """(method, path, payload) for the parsed arguments."""
    if args.command in ("type-of", "cross-ratio", "orbit-form"):
        points = [tok.strip() for tok in args.points.split(",") if tok.strip()]
        return "POST", f"/{args.command}", {"points": points}
    if args.command == "stabilize":
        return "POST", "/stabilize", {
            "tree": _load_tree(args.tree),
            "keep": _csv_labels(args.keep),
        }
    if args.command == "glue":
        return "POST", "/glue", {
            "tree_k": _load_tree(args.tree_k),
            "tree_l": _load_tree(args.tree_l),
        }
    if args.command == "enumerate-trees":
        return "POST", "/enumerate-trees", {"n": args.n}
    if args.command == "hilbert-poly":
        payload = {"tree": _load_tree(args.tree)}
        if args.eval_at is not None:
            payload["eval"] = [int(tok) for tok in args.eval_at.split(",") if tok.strip()]
        return "POST", "/hilbert-poly", payload
    if args.command == "chow-class":
        return "POST", "/chow-class", {
            "type": args.type_string,
            "tree": _load_tree(args.tree) if args.tree else None,
        }
    if args.command == "signature":
        return "POST", "/signature", {"tree": _load_tree(args.tree)}
    if args.command == "verify":
        payload = {"seed": args.seed}
        for key in ("n", "prime", "samples"):
            if getattr(args, key) is not None:
                payload[key] = getattr(args, key)
        if args.max_n is not None:
            payload["max_n"] = args.max_n
        return "POST", f"/verify/{args.suite}", payload
    raise AssertionError(f"unhandled command {args.command}")


def _send_remote(url: str, method: str, path: str, payload) -> httpx.Response:
    with httpx.Client(base_url=url, timeout=600.0) as client:
        return client.request(method, path, json=payload)


def _send_in_process(method: str, path: str, payload) -> httpx.Response:
    """Mount the ASGI app directly; same requests, no server needed."""
    import asyncio

    from .service import app

    async def go():
        transport = httpx.ASGITransport(app=app)
        async with httpx.AsyncClient(
            transport=transport, base_url="http://stablecurves.local", timeout=600.0
        ) as client:
            return await client.request(method, path, json=payload)

    return asyncio.run(go())


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        method, path, payload = _request(args)
    except (OSError, json.JSONDecodeError, ValueError) as exc:
        print(json.dumps({"error": "InputError", "detail": str(exc)}))
        return 1
    try:
        if args.url:
            response = _send_remote(args.url, method, path, payload)
        else:
            response = _send_in_process(method, path, payload)
    except httpx.HTTPError as exc:
        print(json.dumps({"error": "ConnectionError", "detail": str(exc)}))
        return 1
    body = response.json()
    if args.command == "enumerate-trees" and args.count_only and response.is_success:
        body = {"n": body["n"], "count": body["count"]}
    print(json.dumps(body))
    return 0 if response.is_success else 1


if __name__ == "__main__":
    sys.exit(main())
