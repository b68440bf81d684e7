"""Command-line front end: ``lrlab verify|extend|gen|recover``.

Every command writes one JSON document per line. Exit codes: 0 when every
instance verified, 1 when some instance was falsified (the line carries the
reason), 2 on malformed input or invalid flags.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Any, Iterator

import numpy as np

from .decomp import Decomposition
from .errors import (
    AttemptsExhausted,
    LRLabError,
    NoScalarRelation,
    NotDirectSum,
    NotLRPair,
    NotLRTriple,
    OddD,
    ParseError,
    PreconditionFailed,
)
from .field import FieldSpec
from .gen import BIPARTITE, GenConfig, GenStats, gen_bipartite_triple, gen_lr_pair, gen_triple
from .linalg import Matrix
from .lrpair import find_lr_decomposition
from .lrtriple import (
    extend_pair,
    extend_pair_II,
    joint_extension,
    out_in_split,
    recover_gamma_nonbipartite,
    recover_gammas_bipartite,
    verify_triple,
)

EXIT_OK, EXIT_FALSIFIED, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


# parsing ---------------------------------------------------------------------------

def _read_documents(path: str) -> list[Any]:
    """A single JSON document, or one document per nonblank line."""
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    try:
        return [json.loads(text)]
    except json.JSONDecodeError:
        pass
    docs = []
    for n, line in enumerate(text.splitlines(), 1):
        if line.strip():
            try:
                docs.append(json.loads(line))
            except json.JSONDecodeError as exc:
                raise InputError(f"line {n}: malformed JSON ({exc.msg})") from exc
    if not docs:
        raise InputError("no JSON documents in input")
    return docs


def _is_int(x: Any) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def _matrix(obj: Any, field: FieldSpec, n: int, name: str) -> Matrix:
    if not isinstance(obj, list) or len(obj) != n or \
            not all(isinstance(r, list) and len(r) == n for r in obj):
        raise InputError(f"{name} must be a {n}x{n} array of arrays")
    for r in obj:
        for x in r:
            if not _is_int(x) or not 0 <= x < field.p:
                raise InputError(f"{name} has entry {x!r} outside [0, {field.p})")
    return Matrix(field, tuple(tuple(r) for r in obj))


def _decomposition(obj: Any, field: FieldSpec, n: int, name: str) -> Decomposition:
    if not isinstance(obj, list) or len(obj) != n or \
            not all(isinstance(v, list) and len(v) == n and all(_is_int(x) for x in v) for v in obj):
        raise InputError(f"{name} must be a list of {n} integer vectors of length {n}")
    try:
        return Decomposition.from_vectors(field, obj)
    except (NotDirectSum, ValueError) as exc:
        raise InputError(f"{name} is not a decomposition: {exc}") from exc


class Instance:
    def __init__(self, doc: Any):
        if not isinstance(doc, dict):
            raise InputError("instance must be a JSON object")
        try:
            self.field = FieldSpec.from_json(doc.get("field"))
        except ParseError as exc:
            raise InputError(str(exc)) from exc
        d = doc.get("d")
        if not _is_int(d) or d < 0:
            raise InputError("d must be a nonnegative integer")
        self.d = d
        n = d + 1
        mats = doc.get("matrices")
        if not isinstance(mats, dict) or "A" not in mats or "B" not in mats:
            raise InputError("matrices must hold at least A and B")
        self.A = _matrix(mats["A"], self.field, n, "A")
        self.B = _matrix(mats["B"], self.field, n, "B")
        self.C = _matrix(mats["C"], self.field, n, "C") if "C" in mats else None
        ct = doc.get("Ctilde", mats.get("Ctilde"))
        self.Ctilde = _matrix(ct, self.field, n, "Ctilde") if ct is not None else None
        decs = doc.get("decompositions") or {}
        if not isinstance(decs, dict):
            raise InputError("decompositions must be an object")
        self.Vprime = _decomposition(decs["Vprime"], self.field, n, "Vprime") \
            if "Vprime" in decs else None
        self.Vdoubleprime = _decomposition(decs["Vdoubleprime"], self.field, n, "Vdoubleprime") \
            if "Vdoubleprime" in decs else None


# commands ---------------------------------------------------------------------------

def _falsified(exc: LRLabError) -> dict:
    out = {"status": "falsified", "error": type(exc).__name__, "message": str(exc)}
    for attr in ("pair", "reason"):
        if hasattr(exc, attr):
            out[attr] = getattr(exc, attr)
    return out


def cmd_verify(inst: Instance) -> tuple[int, dict]:
    try:
        if inst.C is None:
            pair = find_lr_decomposition(inst.A, inst.B)
            return EXIT_OK, {"status": "verified", "kind": "pair", "pair": pair.to_json()}
        cert = verify_triple(inst.A, inst.B, inst.C)
        return EXIT_OK, {"status": "verified", "kind": "triple", "certificate": cert.to_json()}
    except (NotLRPair, NotLRTriple) as exc:
        return EXIT_FALSIFIED, _falsified(exc)


def cmd_extend(inst: Instance, mode: str) -> tuple[int, dict]:
    need = {"I": ("Vprime",), "II": ("Vdoubleprime",), "joint": ("Vprime", "Vdoubleprime")}[mode]
    for name in need:
        if getattr(inst, name) is None:
            raise InputError(f"--mode {mode} needs decompositions.{name}")
    try:
        if mode == "I":
            C = extend_pair(inst.A, inst.B, inst.Vprime)
        elif mode == "II":
            C = extend_pair_II(inst.A, inst.B, inst.Vdoubleprime)
        else:
            C = joint_extension(inst.A, inst.B, inst.Vprime, inst.Vdoubleprime)
    except PreconditionFailed as exc:
        return EXIT_FALSIFIED, _falsified(exc)
    cert = verify_triple(inst.A, inst.B, C)
    return EXIT_OK, {"status": "verified", "mode": mode, "C": C.to_list(), "certificate": cert.to_json()}


def cmd_recover(inst: Instance) -> tuple[int, dict]:
    if inst.C is None or inst.Ctilde is None:
        raise InputError("recover needs matrices A, B, C and Ctilde")
    try:
        cert = verify_triple(inst.A, inst.B, inst.C)
        if cert.bipartite:
            g_out, g_in = recover_gammas_bipartite(cert, inst.Ctilde)
            split = out_in_split(cert, inst.C)
            residual = inst.Ctilde - split.x_out.scale(g_out) - split.x_in.scale(g_in)
            out = {"gamma_out": g_out.value, "gamma_in": g_in.value}
        else:
            g = recover_gamma_nonbipartite(cert, inst.Ctilde)
            residual = inst.Ctilde - inst.C.scale(g)
            out = {"gamma": g.value}
    except (NotLRTriple, PreconditionFailed, NoScalarRelation) as exc:
        return EXIT_FALSIFIED, _falsified(exc)
    return EXIT_OK, {"status": "verified", "bipartite": cert.bipartite, **out,
                     "residual": residual.to_list(), "residual_zero": residual.is_zero()}


def _instance_seed(seed: int, k: int) -> int:
    return int(np.random.SeedSequence(seed, spawn_key=(k,)).generate_state(1, np.uint64)[0])


def cmd_gen(kind: str, d: int, p: int, seed: int, count: int) -> Iterator[dict]:
    field = FieldSpec(p)
    for k in range(count):
        cfg = GenConfig(d, field, _instance_seed(seed, k))
        stats = GenStats()
        doc: dict[str, Any] = {"field": field.to_json(), "d": d}
        if kind == "pair":
            pair = gen_lr_pair(cfg, stats=stats)
            doc["matrices"] = {"A": pair.A.to_list(), "B": pair.B.to_list()}
            doc["pair"] = pair.to_json()
        else:
            cert = gen_bipartite_triple(cfg, stats) if kind == BIPARTITE else gen_triple(cfg, stats=stats)
            doc["matrices"] = {"A": cert.A.to_list(), "B": cert.B.to_list(), "C": cert.C.to_list()}
            doc["decompositions"] = {"Vprime": cert.decomposition("AC").to_json(),
                                     "Vdoubleprime": cert.decomposition("BC").to_json()}
            doc["certificate"] = cert.to_json()
        doc["gen_meta"] = {"base_seed": seed, "index": k, **stats.meta(cfg)}
        yield doc


# driver ---------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lrlab", description="LR pairs and LR triples over GF(p)")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", metavar="PATH", help="write to PATH instead of standard output")
    common.add_argument("--pretty", action="store_true", help="indent the JSON output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="verify an LR pair or LR triple")
    p.add_argument("input", help="instance file, or - for standard input")

    p = sub.add_parser("extend", parents=[common], help="extend an LR pair to an LR triple")
    p.add_argument("input")
    p.add_argument("--mode", choices=("I", "II", "joint"), default="I")

    p = sub.add_parser("gen", parents=[common], help="generate random instances")
    p.add_argument("--kind", choices=("pair", "triple", "bipartite"), required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=1)

    p = sub.add_parser("recover", parents=[common], help="recover the scalars relating C~ to C")
    p.add_argument("input")
    return parser


def _emit(docs: list[dict], args) -> None:
    indent = 2 if args.pretty else None
    text = "".join(json.dumps(doc, indent=indent) + "\n" for doc in docs)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _fail_input(message: str) -> int:
    print(f"lrlab: error: {message}", file=sys.stderr)
    return EXIT_INPUT


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK

    try:
        if args.command == "gen":
            seed = args.seed
            env = os.environ.get("LRLAB_SEED")
            if env is not None:
                try:
                    seed = int(env)
                except ValueError:
                    return _fail_input(f"LRLAB_SEED is not an integer: {env!r}")
            if args.count < 1:
                return _fail_input("--count must be positive")
            if not 0 <= args.d <= 32:
                return _fail_input("--d must lie in 0..32")
            if not 0 <= seed < 2**64:
                return _fail_input("seed must be a 64-bit unsigned integer")
            if args.kind == BIPARTITE and args.d % 2:
                return _fail_input(f"bipartite LR triples need even d, got {args.d}")
            try:
                FieldSpec(args.p)
            except (TypeError, ValueError) as exc:
                return _fail_input(str(exc))
            try:
                docs = list(cmd_gen(args.kind, args.d, args.p, seed, args.count))
            except OddD as exc:
                return _fail_input(str(exc))
            except AttemptsExhausted as exc:
                _emit([_falsified(exc)], args)
                return EXIT_FALSIFIED
            _emit(docs, args)
            return EXIT_OK

        instances = [Instance(doc) for doc in _read_documents(args.input)]
        results = []
        for inst in instances:
            if args.command == "verify":
                results.append(cmd_verify(inst))
            elif args.command == "extend":
                results.append(cmd_extend(inst, args.mode))
            else:
                results.append(cmd_recover(inst))
    except InputError as exc:
        return _fail_input(str(exc))
    _emit([doc for _, doc in results], args)
    return max(code for code, _ in results)


if __name__ == "__main__":
    sys.exit(main())
