"""Command-line front end: single queries and JSONL batches.

Every query is first turned into a ``Request`` and answered by ``run``, so a
flag-driven call and the equivalent batch line produce identical JSON.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from importlib import resources
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Iterable, TextIO

from .bundle import bundles_equivalent, classify_monodromy
from .degrees import BundleSpec, Kind, contains, descriptor, enumerate_degrees, realize, reverses_orientation
from .errors import CapabilityError, InputError
from .intmat import IntMat2, parse_matrix
from .oracle import bundle_oracle, semibundle_oracle
from .semibundle import (
    double_cover_monodromy,
    geometry_semibundle,
    is_also_torus_bundle,
    normal_form,
    semibundles_equivalent,
)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_CAPABILITY = 2
EXIT_IO = 3

COMMANDS = ("classify", "degrees", "member", "oracle", "orient", "equiv")
BOUND_KEYS = ("bound_scale", "K", "B", "M_bound", "N_bound")
DEFAULT_BOUNDS = {"bound_scale": 1, "K": 6, "B": 6, "M_bound": 6, "N_bound": 8}
SEMIBUNDLE_DEFAULT_K = 4
# oracle searches are cubic in the box; refuse requests that would run for hours
MAX_BUNDLE_BOX = 60
MAX_ORACLE_K = 64


@dataclass
class Request:
    command: str
    kind: Kind
    matrix: IntMat2
    matrix2: IntMat2 | None = None
    l: int | None = None
    N: int | None = None
    bounds: dict[str, int] = field(default_factory=dict)

    def bound(self, key: str) -> int:
        return self.bounds.get(key, DEFAULT_BOUNDS[key])


def _matrix(value: Any, name: str) -> IntMat2:
    if isinstance(value, str):
        return parse_matrix(value)
    if isinstance(value, (dict, list)):
        return IntMat2.from_json(value)
    raise InputError(f"{name} must be a string, object or list, got {type(value).__name__}")


def _int(value: Any, name: str, positive: bool = False) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InputError(f"{name} must be an integer, got {value!r}")
    if positive and value < 1:
        raise InputError(f"{name} must be positive, got {value}")
    return value


def parse_request(obj: Any) -> Request:
    if not isinstance(obj, dict):
        raise InputError("request must be a JSON object")
    command = obj.get("command")
    if command not in COMMANDS:
        raise InputError(f"command must be one of {', '.join(COMMANDS)}, got {command!r}")
    for key in ("kind", "matrix"):
        if key not in obj:
            raise InputError(f"missing required field {key!r}")
    spec = BundleSpec(obj["kind"], _matrix(obj["matrix"], "matrix"))
    req = Request(command, spec.kind, spec.phi)
    if command == "equiv":
        if "matrix2" not in obj:
            raise InputError("equiv needs 'matrix2'")
        req.matrix2 = BundleSpec(spec.kind, _matrix(obj["matrix2"], "matrix2")).phi
    if command == "member":
        if "l" not in obj:
            raise InputError("member needs 'l'")
        req.l = _int(obj["l"], "l")
    if obj.get("N") is not None:
        req.N = _int(obj["N"], "N", positive=True)
    bounds = obj.get("bounds") or {}
    if not isinstance(bounds, dict):
        raise InputError("bounds must be an object")
    for key, value in bounds.items():
        if key not in BOUND_KEYS:
            raise InputError(f"unknown bound {key!r}")
        req.bounds[key] = _int(value, key, positive=True)
    return req


def _spec(req: Request) -> BundleSpec:
    return BundleSpec(req.kind, req.matrix)


def _classify(req: Request) -> dict:
    spec = _spec(req)
    out: dict = {"descriptor": descriptor(spec).to_json()}
    if req.kind is Kind.BUNDLE:
        out.update(classify_monodromy(req.matrix).to_json())
    else:
        out["geometry"] = geometry_semibundle(req.matrix).value
        out["normal_form"] = normal_form(req.matrix).to_json()
        out["also_torus_bundle"] = is_also_torus_bundle(req.matrix)
        out["double_cover_monodromy"] = double_cover_monodromy(req.matrix).to_json()
    return out


def _degrees(req: Request) -> dict:
    spec = _spec(req)
    desc = descriptor(spec)
    out: dict = {"descriptor": desc.to_json(), "description": desc.describe()}
    if req.N is None:
        return out
    en = enumerate_degrees(spec, req.N, req.bound("bound_scale"))
    out.update(
        N=req.N,
        yes=en.yes,
        unknown=en.unknown,
        witnesses=[{"l": l, "witness": en.results[l].witness.to_json()} for l in en.yes],
    )
    return out


def _member(req: Request) -> dict:
    spec = _spec(req)
    m = contains(spec, req.l, req.bound("bound_scale"))
    out = {"l": req.l, "membership": m.to_json()}
    if m.is_yes and req.l != 0:
        w = realize(spec, req.l)
        if w is not None:
            out["realization"] = w.to_json()
    return out


def _oracle(req: Request) -> dict:
    K = req.bounds.get("K", DEFAULT_BOUNDS["K"] if req.kind is Kind.BUNDLE else SEMIBUNDLE_DEFAULT_K)
    if K > MAX_ORACLE_K:
        raise CapabilityError(f"oracle K={K} exceeds the limit {MAX_ORACLE_K}")
    if req.kind is Kind.BUNDLE:
        B = req.bound("B")
        if B > MAX_BUNDLE_BOX:
            raise CapabilityError(f"oracle entry bound {B} exceeds the limit {MAX_BUNDLE_BOX}")
        report = bundle_oracle(req.matrix, K, B)
    else:
        report = semibundle_oracle(req.matrix, K, req.bound("M_bound"), req.bound("N_bound"))
    return report.to_json()


def _orient(req: Request) -> dict:
    return {"membership": reverses_orientation(_spec(req), req.bound("bound_scale")).to_json()}


def _equiv(req: Request) -> dict:
    if req.kind is Kind.BUNDLE:
        return {"membership": bundles_equivalent(req.matrix, req.matrix2).to_json()}
    return {
        "equivalent": semibundles_equivalent(req.matrix, req.matrix2),
        "normal_forms": [normal_form(req.matrix).to_json(), normal_form(req.matrix2).to_json()],
    }


_HANDLERS = {
    "classify": _classify,
    "degrees": _degrees,
    "member": _member,
    "oracle": _oracle,
    "orient": _orient,
    "equiv": _equiv,
}


def run(req: Request) -> dict:
    return {"command": req.command, **_HANDLERS[req.command](req)}


def respond(obj: Any) -> tuple[dict, int]:
    """Answer one raw request object; errors become error responses."""
    try:
        req = parse_request(obj)
        return {"request": obj, "status": "ok", "result": run(req)}, EXIT_OK
    except InputError as exc:
        code, kind, msg = EXIT_INPUT, "input", str(exc)
    except CapabilityError as exc:
        code, kind, msg = EXIT_CAPABILITY, "capability", str(exc)
    return {"request": obj, "status": "error", "error": {"type": kind, "message": msg}}, code


def load_schema() -> dict:
    text = resources.files("torusdeg").joinpath("schemas/response.schema.json").read_text(encoding="utf-8")
    return json.loads(text)


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _answer_line(line: str) -> str:
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        resp = {"request": line, "status": "error", "error": {"type": "input", "message": f"invalid JSON: {exc}"}}
        return dumps(resp)
    return dumps(respond(obj)[0])


def run_batch(lines: Iterable[str], out: TextIO, workers: int = 1) -> int:
    """One response line per non-blank request line, in input order."""
    todo = [ln for ln in (raw.strip() for raw in lines) if ln]
    if workers > 1 and len(todo) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            answers = pool.map(_answer_line, todo, chunksize=max(1, len(todo) // (4 * workers)))
            for ans in answers:
                out.write(ans + "\n")
    else:
        for ln in todo:
            out.write(_answer_line(ln) + "\n")
    out.flush()
    return EXIT_OK


# -- human output --------------------------------------------------------------


def _fmt(value: Any) -> str:
    if isinstance(value, dict) and set(value) == {"a", "b", "c", "d"}:
        return IntMat2.from_json(value).to_text()
    if isinstance(value, (dict, list)):
        return dumps(value)
    return str(value)


def render_table(resp: dict) -> str:
    if resp["status"] != "ok":
        return f"error ({resp['error']['type']}): {resp['error']['message']}"
    result = dict(resp["result"])
    rows = []
    if "degrees" in result and isinstance(result["degrees"], list) and result.get("command") == "oracle":
        degs = result.pop("degrees")
        rows.append(("degrees", " ".join(str(d["l"]) for d in degs)))
        rows.extend((f"  l={d['l']}", _fmt(d["witness"])) for d in degs)
    result.pop("witnesses", None)
    for key in sorted(result):
        val = result[key]
        if key in ("yes", "unknown") and isinstance(val, list):
            val = " ".join(map(str, val)) or "-"
        rows.append((key, _fmt(val)))
    width = max(len(k) for k, _ in rows)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows)


# -- argument handling ---------------------------------------------------------


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="torusdeg", description="Self-map degrees of torus bundles and semi-bundles.")
    p.add_argument("command", choices=COMMANDS + ("batch",))
    p.add_argument("kind_pos", nargs="?", metavar="kind")
    p.add_argument("matrix_pos", nargs="?", metavar="matrix")
    p.add_argument("--kind", choices=[k.value for k in Kind])
    p.add_argument("--matrix", help='"a,b,c,d" row-major or "[[a,b],[c,d]]"')
    p.add_argument("--matrix2")
    p.add_argument("--degree", type=int, dest="l")
    p.add_argument("--max", type=int, dest="N")
    p.add_argument("--bound-scale", type=int)
    p.add_argument("--oracle-k", type=int)
    p.add_argument("--oracle-entries", type=int)
    p.add_argument("--oracle-m", type=int)
    p.add_argument("--oracle-n", type=int)
    p.add_argument("--input", help="batch input file (default stdin)")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--json", action="store_true", help="machine-readable output")
    return p


_NEG_MATRIX = re.compile(r"^[-\u2212]\d.*,")


def _protect_negative_matrices(argv: list[str]) -> list[str]:
    """argparse reads "-1,0,0,-1" as an option; bind such tokens explicitly."""
    out: list[str] = []
    for tok in argv:
        if _NEG_MATRIX.match(tok):
            if out and out[-1] in ("--matrix", "--matrix2"):
                out[-1] = f"{out[-1]}={tok}"
                continue
            tok = f"--matrix={tok}"
        out.append(tok)
    return out


def _request_from_args(args: argparse.Namespace) -> dict:
    obj: dict = {"command": args.command}
    kind = args.kind or args.kind_pos
    matrix = args.matrix or args.matrix_pos
    if kind is not None:
        obj["kind"] = kind
    if matrix is not None:
        obj["matrix"] = matrix
    if args.matrix2 is not None:
        obj["matrix2"] = args.matrix2
    if args.l is not None:
        obj["l"] = args.l
    if args.N is not None:
        obj["N"] = args.N
    bounds = {
        "bound_scale": args.bound_scale,
        "K": args.oracle_k,
        "B": args.oracle_entries,
        "M_bound": args.oracle_m,
        "N_bound": args.oracle_n,
    }
    bounds = {k: v for k, v in bounds.items() if v is not None}
    if bounds:
        obj["bounds"] = bounds
    return obj


def main(argv: list[str] | None = None, stdin: TextIO | None = None, stdout: TextIO | None = None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = _parser().parse_args(_protect_negative_matrices(argv))
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    if args.command == "batch":
        try:
            if args.input:
                with open(args.input, encoding="utf-8") as fh:
                    return run_batch(fh, stdout, args.workers)
            return run_batch(stdin, stdout, args.workers)
        except OSError as exc:
            print(f"batch I/O failure: {exc}", file=sys.stderr)
            return EXIT_IO
    resp, code = respond(_request_from_args(args))
    stdout.write((dumps(resp) if args.json else render_table(resp)) + "\n")
    return code


if __name__ == "__main__":
    raise SystemExit(main())
