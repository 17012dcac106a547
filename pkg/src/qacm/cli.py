"""qacm command line: a thin client for the qacm service.

By default requests are answered in-process (the FastAPI app is mounted on
an ASGI transport, no socket involved); --server points the same client at
a remote instance.  Exit codes: 0 ok, 1 user/input error, 2 internal
invariant violation.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import sys

import httpx

EXIT_OK = 0
EXIT_USER = 1
EXIT_INTERNAL = 2

OPS = {
    "gb": "/v1/gb",
    "etype": "/v1/etype",
    "hilbert": "/v1/hilbert",
    "cohomology-table": "/v1/cohomology-table",
    "acm-check": "/v1/acm-check",
    "mcm-check": "/v1/mcm-check",
    "regularity": "/v1/regularity",
    "construct-e0": "/v1/construct-e0",
    "mf": "/v1/mf",
    "periodicity": "/v1/periodicity",
    "decompose": "/v1/decompose",
    "link": "/v1/link",
    "fingerprint": "/v1/fingerprint",
    "same-class": "/v1/same-class",
    "degree-genus": "/v1/degree-genus",
}

NEEDS_ABOUT = {
    "gb", "etype", "hilbert", "cohomology-table", "acm-check", "mcm-check",
    "regularity", "decompose", "link", "fingerprint", "same-class",
    "degree-genus",
}

HAS_WINDOW = {"etype", "hilbert", "cohomology-table", "periodicity"}


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; that code is reserved for engine bugs
    def error(self, message):
        self.exit(EXIT_USER, f"{self.prog}: error: {message}\n")


def build_parser() -> _Parser:
    parser = _Parser(prog="qacm", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    for name in OPS:
        p = sub.add_parser(name)
        p.add_argument("--session", help="session file (default: canonical)")
        p.add_argument("--format", choices=("tsv", "json"), default="tsv")
        p.add_argument("--seed", type=int, default=None,
                       help="seed for randomized property checks (reserved; "
                            "shipped operations are deterministic)")
        p.add_argument("--server", help="URL of a running qacm service")
        if name in NEEDS_ABOUT:
            p.add_argument("--about", required=True,
                           help="named ideal or module from the session")
        elif name in ("mf", "periodicity"):
            p.add_argument("--about", default="E0",
                           help="module to factor (default: E0)")
        if name in HAS_WINDOW:
            p.add_argument("--range", dest="range_", metavar="a..b",
                           help="degree window, e.g. 0..8 or =-2..10")
        if name == "link":
            p.add_argument("--ci", required=True,
                           help="the complete intersection, e.g. \"x0,x4\"")
        if name == "same-class":
            p.add_argument("--other", required=True)
        if name == "construct-e0":
            p.add_argument("--line", default=None,
                           help="named line ideal (default: the session's L)")

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    return parser


def _parse_range(text: str):
    lo, sep, hi = text.partition("..")
    if not sep:
        raise ValueError
    return int(lo), int(hi)


def build_payload(args) -> dict:
    payload = {}
    if args.session:
        with open(args.session, "r", encoding="utf-8") as fh:
            payload["session_text"] = fh.read()
    if args.seed is not None:
        payload["seed"] = args.seed
    if args.command in NEEDS_ABOUT or args.command in ("mf", "periodicity"):
        payload["about"] = args.about
    if args.command in HAS_WINDOW and args.range_:
        try:
            payload["window"] = _parse_range(args.range_)
        except ValueError:
            raise SystemExit2(EXIT_USER, f"bad --range value {args.range_!r}")
    if args.command == "link":
        parts = [p.strip() for p in args.ci.split(",")]
        if len(parts) != 2:
            raise SystemExit2(EXIT_USER, "--ci needs exactly two polynomials")
        payload["ci"] = parts
    if args.command == "same-class":
        payload["other"] = args.other
    if args.command == "construct-e0" and args.line:
        payload["line"] = args.line
    return payload


class SystemExit2(Exception):
    def __init__(self, code, message):
        self.code = code
        self.message = message


def post(path: str, payload: dict, server: str | None):
    async def go():
        if server:
            async with httpx.AsyncClient(base_url=server, timeout=600) as client:
                r = await client.post(path, json=payload)
                return r.status_code, r.json()
        from .service.app import app

        transport = httpx.ASGITransport(app=app)
        async with httpx.AsyncClient(transport=transport,
                                     base_url="http://qacm.internal",
                                     timeout=600) as client:
            r = await client.post(path, json=payload)
            return r.status_code, r.json()

    return asyncio.run(go())


# ------------------------------------------------------------ tsv rendering


def _b(x) -> str:
    return "true" if x else "false"


def _join(xs) -> str:
    return ",".join(str(x) for x in xs)


def _table(header, rows):
    return "\n".join(["\t".join(header)] + ["\t".join(str(c) for c in r)
                                            for r in rows])


def _betti_rows(betti: dict):
    rows = []
    for step in sorted(betti, key=int):
        cell = _join(f"{d}:{c}" for d, c in sorted(betti[step].items(),
                                                   key=lambda t: int(t[0])))
        rows.append((f"betti[{step}]", cell))
    return rows


def render_tsv(command: str, p: dict) -> str:
    if command == "gb":
        return _table(("generator",), [(g,) for g in p["basis"]])
    if command == "hilbert":
        lo, hi = p["window"]
        return _table(("n", "h0"),
                      list(zip(range(lo, hi + 1), p["values"])))
    if command == "cohomology-table":
        lo, hi = p["window"]
        rows = [(n, v, p["h1"], p["h2"])
                for n, v in zip(range(lo, hi + 1), p["h0"])]
        return _table(("n", "h0", "h1", "h2"), rows)
    if command == "acm-check":
        rows = [("acm", _b(p["acm"])), ("saturated", _b(p["saturated"])),
                ("pd_S", p["pd_s"])] + _betti_rows(p["betti"])
        return _table(("key", "value"), rows)
    if command == "mcm-check":
        rows = [("mcm", _b(p["mcm"])), ("pd_S", p["pd_s"]),
                ("hilbert_degree", p["hilbert_degree"])] + _betti_rows(p["betti"])
        return _table(("key", "value"), rows)
    if command == "regularity":
        return _table(("key", "value"), [("regularity", p["regularity"])])
    if command == "etype":
        rows = [("middle_twists", _join(p["middle_twists"]))]
        rows += [("kernel_generator", g) for g in p["kernel_generators"]]
        rows += [
            ("kernel_generator_degrees", _join(p["kernel_generator_degrees"])),
            ("kernel_relation_degrees", _join(p["kernel_relation_degrees"])),
        ]
        return _table(("key", "value"), rows)
    if command == "construct-e0":
        rows = [("generator_degrees", _join(p["generator_degrees"]))]
        rows += [("generator", g) for g in p["generators"]]
        pres = p["presentation"]
        for i, row in enumerate(pres["entries"]):
            rows.append((f"presentation[{i}]", ", ".join(row)))
        return _table(("key", "value"), rows)
    if command == "mf":
        rows = [("free", _b(p["free"])), ("size", p["size"]),
                ("quadric", p["quadric"])]
        for label in ("a", "b"):
            block = p[label]
            if block is None:
                continue
            for i, row in enumerate(block["entries"]):
                rows.append((f"{label}[{i}]", ", ".join(row)))
        return _table(("key", "value"), rows)
    if command == "periodicity":
        return _table(("key", "value"), [("periodic", _b(p["periodic"]))])
    if command == "decompose":
        rows = [("matched", _b(p["matched"])),
                ("free_twists", _join(p["free_twists"])),
                ("e0_twists", _join(p["e0_twists"]))]
        if p["detail"]:
            rows.append(("detail", p["detail"]))
        return _table(("key", "value"), rows)
    if command == "link":
        rows = [("linked", g) for g in p["linked_generators"]]
        rows += [("ci_degrees", _join(p["ci_degrees"])),
                 ("degree_sum", p["degree_sum"]),
                 ("ci_degree", p["ci_degree"]),
                 ("degrees_add_up", _b(p["degrees_add_up"]))]
        return _table(("key", "value"), rows)
    if command == "fingerprint":
        return _table(("key", "value"),
                      [("ci_class", _b(p["ci_class"])),
                       ("e0_shifts", _join(p["e0_shifts"]))])
    if command == "same-class":
        return _table(("key", "value"),
                      [("same", _b(p["same"])),
                       ("left", _join(p["left"]["e0_shifts"])),
                       ("right", _join(p["right"]["e0_shifts"]))])
    if command == "degree-genus":
        return _table(("key", "value"),
                      [("degree", p["degree"]), ("genus", p["genus"])])
    raise SystemExit2(EXIT_INTERNAL, f"no renderer for {command}")


# -------------------------------------------------------------------- main


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "serve":
        import uvicorn

        from .service.app import app

        uvicorn.run(app, host=args.host, port=args.port)
        return EXIT_OK
    try:
        payload = build_payload(args)
    except SystemExit2 as exc:
        print(exc.message, file=sys.stderr)
        return exc.code
    except OSError as exc:
        print(f"cannot read session file: {exc}", file=sys.stderr)
        return EXIT_USER
    try:
        status, body = post(OPS[args.command], payload, args.server)
    except httpx.HTTPError as exc:
        print(f"cannot reach the qacm service: {exc}", file=sys.stderr)
        return EXIT_USER
    if status != 200:
        detail = body.get("detail", body) if isinstance(body, dict) else body
        print(f"error: {detail}", file=sys.stderr)
        return EXIT_USER if status < 500 else EXIT_INTERNAL
    if args.format == "json":
        print(json.dumps(body, indent=2, sort_keys=True))
    else:
        print(render_tsv(args.command, body))
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
