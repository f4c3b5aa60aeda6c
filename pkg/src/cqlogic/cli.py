"""Command-line front end.

The CLI is a thin client of the HTTP service: arguments and file
contents are marshalled into the service's request models and the
responses formatted back. By default the service runs in-process (no
network, no server to start); pass --server to talk to a remote one.

Exit codes: 0 for success / a positive answer, 1 for a definite
negative answer (invalid, infeasible, not subadditive, failed suite),
2 for usage or I/O errors. Results go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Any, Optional

import httpx

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_ERROR = 2


class ServiceClient:
    """Minimal JSON-over-HTTP client; in-process ASGI unless a URL is given."""

    def __init__(self, server: Optional[str] = None):
        self._server = server
        self._client: Optional[httpx.Client] = None
        self._app = None
        if server:
            self._client = httpx.Client(base_url=server, timeout=300.0)
        else:
            from .service import create_app

            self._app = create_app()

    def post(self, path: str, payload: dict[str, Any]) -> dict[str, Any]:
        if self._client is not None:
            response = self._client.post(path, json=payload)
        else:
            import asyncio

            response = asyncio.run(self._post_in_process(path, payload))
        if response.status_code != 200:
            try:
                detail = response.json().get("detail", response.text)
            except ValueError:
                detail = response.text
            raise ClientError(f"{path}: {detail}")
        return response.json()

    async def _post_in_process(self, path: str, payload: dict[str, Any]) -> httpx.Response:
        transport = httpx.ASGITransport(app=self._app)
        async with httpx.AsyncClient(
            transport=transport, base_url="http://cqlogic.local", timeout=300.0
        ) as client:
            return await client.post(path, json=payload)

    def close(self) -> None:
        if self._client is not None:
            self._client.close()


class ClientError(Exception):
    pass


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ClientError(f"cannot read {path}: {exc.strerror or exc}") from exc


def _write_text(path: Optional[str], text: str) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise ClientError(f"cannot write {path}: {exc.strerror or exc}") from exc


def _state_payload(args) -> dict[str, str]:
    return {
        "logic_qlf": _read_text(args.logic),
        "state_qsf": _read_text(args.state),
    }


def _cmd_even_logic(client: ServiceClient, args) -> int:
    data = client.post("/logic/even", {"n": args.n})
    _write_text(args.out, data["qlf"])
    print(f"even logic on {args.n} points: {data['member_count']} members", file=sys.stderr)
    return EXIT_OK


def _cmd_closure(client: ServiceClient, args) -> int:
    data = client.post("/logic/closure", {
        "mode": args.mode,
        "generators_qlf": _read_text(args.generators),
    })
    _write_text(args.out, data["qlf"])
    print(f"{args.mode} closure: {data['member_count']} members", file=sys.stderr)
    return EXIT_OK


def _cmd_check_logic(client: ServiceClient, args) -> int:
    data = client.post("/logic/validate", {"qlf": _read_text(args.file)})
    print(f"LOGIC {'true' if data['is_logic'] else 'false'}")
    print(f"contains-X {str(data['contains_x']).lower()}")
    line = f"complement-closed {str(data['complement_closed']).lower()}"
    if data["complement_violation"]:
        line += f" violation {data['complement_violation']}"
    print(line)
    line = f"disjoint-union-closed {str(data['disjoint_union_closed']).lower()}"
    if data["disjoint_union_violation"]:
        pair = data["disjoint_union_violation"]
        line += f" violation {pair[0]} {pair[1]}"
    print(line)
    print(f"difference-closed {str(data['difference_closed']).lower()}")
    return EXIT_OK if data["is_logic"] else EXIT_NEGATIVE


def _cmd_check_state(client: ServiceClient, args) -> int:
    data = client.post("/state/validate", _state_payload(args))
    if data["valid"]:
        print("STATE valid")
        return EXIT_OK
    print(f"STATE invalid: {data['violation']}")
    return EXIT_NEGATIVE


def _cmd_subadditive(client: ServiceClient, args) -> int:
    data = client.post("/state/subadditive", _state_payload(args))
    if data["status"] == "invalid_state":
        print(f"INVALID {data['violation']}")
        return EXIT_NEGATIVE
    if data["subadditive"]:
        print("SUBADDITIVE true")
        return EXIT_OK
    a, b = data["witness"]
    print(f"SUBADDITIVE false witness {a} {b}")
    return EXIT_NEGATIVE


def _cmd_extend(client: ServiceClient, args) -> int:
    payload = _state_payload(args)
    payload["kind"] = args.kind
    data = client.post("/extend", payload)
    if data["status"] == "invalid_state":
        print(f"INVALID {data['violation']}")
        return EXIT_NEGATIVE
    if args.format == "machine":
        print(data["machine"])
    elif data["status"] == "feasible":
        uniqueness = "the unique" if data["unique"] else "a (non-unique)"
        print(f"Extendable: {uniqueness} point-mass witness is {', '.join(data['masses'])}.")
    else:
        print(f"Not extendable as a {args.kind} measure over the power set.")
        if data["certificate"]:
            terms = ", ".join(f"{e['coefficient']} x member[{e['index']}]"
                              for e in data["certificate"])
            print(f"Certificate: {terms} vanishes pointwise but not against the state.")
    return EXIT_OK if data["status"] == "feasible" else EXIT_NEGATIVE


def _cmd_classify(client: ServiceClient, args) -> int:
    data = client.post("/classify", _state_payload(args))
    if data["status"] == "invalid_state":
        print(f"INVALID {data['violation']}")
        return EXIT_NEGATIVE
    print(f"signed-extendable {str(data['signed_extendable']).lower()}")
    print(f"state-extendable {str(data['state_extendable']).lower()}")
    sub = data["subadditive"]
    print(f"subadditive {'n/a' if sub is None else str(sub).lower()}")
    print(f"two-valued {str(data['two_valued']).lower()}")
    dirac = data["dirac"]
    print(f"dirac {'none' if dirac is None else dirac}")
    return EXIT_OK


def _cmd_sample(client: ServiceClient, args) -> int:
    logic_out = args.logic_out or str(Path(args.out).with_suffix(".qlf"))
    data = client.post("/state/sample", {
        "n": args.n,
        "seed": args.seed,
        "mode": args.mode,
        "logic_path": logic_out,
    })
    _write_text(logic_out, data["logic_qlf"])
    _write_text(args.out, data["state_qsf"])
    print(f"wrote {args.out} (over {logic_out})", file=sys.stderr)
    return EXIT_OK


def _cmd_paper_suite(client: ServiceClient, args) -> int:
    data = client.post("/suite/paper", {"samples_per_size": args.samples})
    for check in data["checks"]:
        status = "PASS" if check["passed"] else "FAIL"
        print(f"{status} {check['locus']:5s} {check['name']} [{check['detail']}]")
    if data["all_passed"]:
        print(f"all {len(data['checks'])} checks passed")
        return EXIT_OK
    failed = sum(1 for c in data["checks"] if not c["passed"])
    print(f"{failed} of {len(data['checks'])} checks FAILED")
    return EXIT_NEGATIVE


def _cmd_serve(client: ServiceClient, args) -> int:
    import uvicorn

    uvicorn.run("cqlogic.service.app:app", host=args.host, port=args.port)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cqlogic",
        description="Finite concrete quantum logics: closures, states, exact extension.",
    )
    parser.add_argument("--server", metavar="URL", default=None,
                        help="talk to a running service instead of computing in-process")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("even-logic", help="write the even-set logic as a QLF file")
    p.add_argument("-n", type=int, required=True, help="even universe size (2..20)")
    p.add_argument("--out", help="output QLF path (stdout if omitted)")
    p.set_defaults(handler=_cmd_even_logic)

    p = sub.add_parser("closure", help="close a generator file into a logic")
    p.add_argument("--mode", choices=["concrete", "delta"], required=True,
                   help="concrete: complements + disjoint unions; delta: symmetric differences")
    p.add_argument("--generators", required=True, metavar="QLF",
                   help="QLF file whose sets are the generators")
    p.add_argument("--out", help="output QLF path (stdout if omitted)")
    p.set_defaults(handler=_cmd_closure)

    p = sub.add_parser("check-logic", help="verify the concrete-logic axioms")
    p.add_argument("file", metavar="QLF")
    p.set_defaults(handler=_cmd_check_logic)

    p = sub.add_parser("check-state", help="verify the state axioms")
    p.add_argument("--logic", required=True, metavar="QLF")
    p.add_argument("--state", required=True, metavar="QSF")
    p.set_defaults(handler=_cmd_check_state)

    p = sub.add_parser("subadditive", help="test subadditivity on a difference-closed logic")
    p.add_argument("--logic", required=True, metavar="QLF")
    p.add_argument("--state", required=True, metavar="QSF")
    p.set_defaults(handler=_cmd_subadditive)

    p = sub.add_parser("extend", help="decide signed-measure / state extendability")
    p.add_argument("--logic", required=True, metavar="QLF")
    p.add_argument("--state", required=True, metavar="QSF")
    p.add_argument("--kind", choices=["signed", "state"], required=True)
    p.add_argument("--format", choices=["human", "machine"], default="human")
    p.set_defaults(handler=_cmd_extend)

    p = sub.add_parser("classify", help="summarize extendability and state structure")
    p.add_argument("--logic", required=True, metavar="QLF")
    p.add_argument("--state", required=True, metavar="QSF")
    p.set_defaults(handler=_cmd_classify)

    p = sub.add_parser("sample", help="draw a seeded random state on the even-set logic")
    p.add_argument("-n", type=int, required=True, help="even universe size (4..12)")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--mode", choices=["nonneg", "one_negative"], required=True)
    p.add_argument("--out", required=True, metavar="QSF")
    p.add_argument("--logic-out", metavar="QLF",
                   help="companion logic path (default: out with .qlf suffix)")
    p.set_defaults(handler=_cmd_sample)

    p = sub.add_parser("paper-suite", help="replay the worked examples and theorem checks")
    p.add_argument("--samples", type=int, default=20,
                   help="sampled states per universe size (default 20)")
    p.set_defaults(handler=_cmd_paper_suite)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(handler=_cmd_serve)

    return parser


def run(argv: list[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 0 for --help, 2 for usage errors
        return int(exc.code or 0)
    client = ServiceClient(args.server) if args.command != "serve" else None
    try:
        return args.handler(client, args)
    except ClientError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except httpx.HTTPError as exc:
        print(f"error: cannot reach service: {exc}", file=sys.stderr)
        return EXIT_ERROR
    finally:
        if client is not None:
            client.close()


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
