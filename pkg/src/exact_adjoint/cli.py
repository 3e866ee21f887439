"""Command-line front end; a thin client of the HTTP service.

Every command builds a request, sends it to the service (an in-process
ASGI transport by default, or a remote instance via --server), and writes
the response bytes verbatim in --json mode, so CLI output and raw API
output are identical.

Exit codes: 0 success, 2 parse error, 3 invariant violation, 4 oracle
mismatch beyond tolerance under --verify, 5 fixture-table disagreement.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import os
import sys
from typing import Optional

import httpx

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_INVARIANT = 3
EXIT_ORACLE = 4
EXIT_TABLE = 5

_KIND_EXIT = {"parse": EXIT_PARSE, "invariant": EXIT_INVARIANT, "oracle_cap": EXIT_INVARIANT}


class ServiceClient:
    """Synchronous POST facade over either a remote URL or the in-process app."""

    def __init__(self, server: Optional[str] = None):
        self.server = server

    def post(self, path: str, payload: dict) -> httpx.Response:
        if self.server:
            with httpx.Client(base_url=self.server, timeout=600.0) as client:
                return client.post(path, json=payload)

        async def _go() -> httpx.Response:
            from .service import app

            transport = httpx.ASGITransport(app=app)
            async with httpx.AsyncClient(transport=transport,
                                         base_url="http://engine") as client:
                return await client.post(path, json=payload)

        return asyncio.run(_go())


def _read_source(value: str) -> str:
    """Inline text, or the contents of an existing file; ';' separates lines."""
    if value is not None and os.path.isfile(value):
        with open(value, "r", encoding="utf-8") as fh:
            return fh.read()
    return value.replace(";", "\n") if value is not None else value


def _emit(args, body: bytes, payload: dict, text_field: str | None,
          human_lines) -> None:
    wrote = None
    if getattr(args, "output", None) and text_field and payload.get(text_field) is not None:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(payload[text_field] + "\n")
        with open(args.output + ".json", "wb") as fh:
            fh.write(body + b"\n")
        wrote = args.output
    if args.json:
        sys.stdout.buffer.write(body + b"\n")
        sys.stdout.flush()
    else:
        for line in human_lines(payload):
            if wrote and line == payload.get(text_field):
                line = f"wrote {wrote} (+ {wrote}.json)"
            print(line)


def _request(args, path: str, payload: dict):
    client = ServiceClient(getattr(args, "server", None))
    response = client.post(path, payload)
    if response.status_code != 200:
        try:
            detail = response.json()
        except json.JSONDecodeError:
            detail = {"detail": response.text}
        kind = detail.get("kind", "parse")
        print(f"error: {detail.get('detail', 'request failed')}", file=sys.stderr)
        sys.exit(_KIND_EXIT.get(kind, EXIT_PARSE))
    return response.content, response.json()


def cmd_transform(args) -> int:
    payload = {
        "generator": _read_source(args.generator) if args.generator else None,
        "ucc": args.ucc,
        "hamiltonian": _read_source(args.hamiltonian) if args.hamiltonian else None,
        "fragment": args.fragment,
        "theta": args.theta,
        "verify": args.verify,
        "tolerance": args.tolerance,
        "max_qubits": args.max_qubits,
    }
    body, result = _request(args, "/transform", payload)

    def lines(res):
        yield f"S = {res['S']}"
        yield f"coefficients = {res['coefficients']}"
        yield f"n_commutators = {res['n_commutators']}"
        if res.get("oracle_residual") is not None:
            yield f"oracle_residual = {res['oracle_residual']:.3e}"
        yield res["transformed_operator"]

    _emit(args, body, result, "transformed_operator", lines)
    if args.verify and result.get("oracle_residual") is not None:
        if result["oracle_residual"] > args.tolerance:
            print(f"verify failed: residual {result['oracle_residual']:.3e} "
                  f"> tolerance {args.tolerance:.3e}", file=sys.stderr)
            return EXIT_ORACLE
    return EXIT_OK


def cmd_verify(args) -> int:
    payload = {
        "generator": _read_source(args.generator) if args.generator else None,
        "ucc": args.ucc,
        "hamiltonian": _read_source(args.hamiltonian) if args.hamiltonian else None,
        "fragment": args.fragment,
        "theta": args.theta,
        "tolerance": args.tolerance,
        "max_qubits": args.max_qubits,
    }
    body, result = _request(args, "/verify", payload)
    _emit(args, body, result, None, lambda res: [
        f"oracle_residual = {res['oracle_residual']:.3e}",
        f"ok = {res['ok']}",
    ])
    return EXIT_OK if result["ok"] else EXIT_ORACLE


def cmd_classify(args) -> int:
    body, result = _request(args, "/classify", {"ucc": args.ucc, "fragment": args.fragment})
    _emit(args, body, result, None, lambda res: [
        f"case = {res['case_label']}",
        f"vanishing blocks = {res['vanishing_blocks']}",
        f"S = {res['S']}",
        f"n_commutators = {res['n_commutators']}",
    ])
    return EXIT_OK


def cmd_coeffs(args) -> int:
    s_values = [float(tok) for tok in args.s.replace(",", " ").split()]
    body, result = _request(args, "/coeffs", {"S": s_values, "theta": args.theta})
    _emit(args, body, result, None, lambda res: [
        f"S = {res['S']}",
        f"coefficients = {res['coefficients']}",
    ])
    return EXIT_OK


def cmd_rotate(args) -> int:
    payload = {
        "matrix": _read_source(args.matrix),
        "tensors": _read_source(args.tensors),
        "verify": args.verify,
        "tolerance": args.tolerance,
    }
    body, result = _request(args, "/rotate", payload)

    def lines(res):
        if res.get("oracle_residual") is not None:
            yield f"oracle_residual = {res['oracle_residual']:.3e}"
        yield res["tensors"]

    _emit(args, body, result, "tensors", lines)
    if args.verify and result.get("oracle_residual") is not None:
        if result["oracle_residual"] > args.tolerance:
            print("verify failed", file=sys.stderr)
            return EXIT_ORACLE
    return EXIT_OK


def cmd_table1(args) -> int:
    body, result = _request(args, "/table1", {"extended": args.extended})

    def lines(res):
        for row in res["rows"]:
            mark = "ok" if row["agrees"] else "DISAGREES"
            yield (f"row {row['row']}: case={row['case_label']} S={row['S']} "
                   f"vanishing={row['vanishing_blocks']} [{mark}]")
        if "extended_checked" in res:
            yield f"extended corpus: {res['extended_agree']}/{res['extended_checked']} agree"
        yield f"all rows reproduced: {res['all_agree']}"

    _emit(args, body, result, None, lines)
    return EXIT_OK if result["all_agree"] else EXIT_TABLE


def cmd_serve(args) -> int:
    import uvicorn

    uvicorn.run("exact_adjoint.service:app", host=args.host, port=args.port)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--server", default=None,
                        help="base URL of a running service (default: in-process)")
    common.add_argument("--json", action="store_true", help="print the raw JSON response")
    common.add_argument("--tolerance", type=float, default=1e-9)

    parser = argparse.ArgumentParser(prog="exact-adjoint",
                                     description="exact unitary conjugations of many-body operators")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("transform", parents=[common],
                       help="conjugate an operator by exp(iθG)")
    p.add_argument("--generator", help="Pauli-sum text (inline or file); 1 term = single "
                                       "Pauli, several terms = anticommuting sum")
    p.add_argument("--ucc", help="fermionic excitation word, e.g. '3^ 2^ 1 0'")
    p.add_argument("--hamiltonian", help="Pauli-sum operator (inline or file)")
    p.add_argument("--fragment", help="fermionic string word for the fragment")
    p.add_argument("--theta", type=float, required=True, help="angle in radians")
    p.add_argument("--verify", action="store_true", help="cross-check against the dense oracle")
    p.add_argument("--max-qubits", type=int, default=None, dest="max_qubits")
    p.add_argument("--output", help="write the operator here (JSON sidecar at PATH.json)")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("verify", parents=[common],
                       help="run a transform through the dense oracle and report the residual")
    p.add_argument("--generator")
    p.add_argument("--ucc")
    p.add_argument("--hamiltonian")
    p.add_argument("--fragment")
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--max-qubits", type=int, default=None, dest="max_qubits")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("classify", parents=[common],
                       help="block classification of a UCC generator/fragment pair")
    p.add_argument("--ucc", required=True)
    p.add_argument("--fragment", required=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("coeffs", parents=[common],
                       help="solve the Vandermonde system for a difference set")
    p.add_argument("--s", required=True, help="comma- or space-separated gaps, e.g. '-2,0,2'")
    p.add_argument("--theta", type=float, required=True)
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("rotate", parents=[common],
                       help="rotate electronic tensors by an orbital rotation")
    p.add_argument("--matrix", required=True, help="Hermitian generator matrix file")
    p.add_argument("--tensors", required=True, help="tensor file (norb header + quadruples)")
    p.add_argument("--verify", action="store_true")
    p.add_argument("--output", help="write rotated tensors here")
    p.set_defaults(func=cmd_rotate)

    p = sub.add_parser("table1", parents=[common],
                       help="reproduce the block-classification fixture table")
    p.add_argument("--extended", action="store_true",
                   help="also sweep a generated corpus and report agreement")
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8321)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
