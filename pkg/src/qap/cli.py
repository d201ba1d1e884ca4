"""Command line entry point: ``python3 -m qap {build,verify,cartans,split,decompose}``."""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from . import cartan, kak, partition
from .lambdas import width_for
from .linear import Span, parse_gen

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_CLOSURE = 2
EXIT_IO = 3
EXIT_PARSE = 4
EXIT_NOT_UNITARY = 5


@dataclass
class RunConfig:
    command: str
    dim: Optional[int] = None
    p: Optional[int] = None
    seed_order: str = "canonical"
    tolerance: float = kak.FULL_TOL
    input: Optional[Path] = None
    output: Optional[Path] = None
    format: str = "json"
    selection: Optional[str] = None
    form: Optional[str] = None

    def __post_init__(self):
        if self.dim is not None and self.dim < 2:
            raise ValueError("--dim must be at least 2")
        if self.dim is not None and self.p is None:
            self.p = width_for(self.dim)
        if self.tolerance <= 0:
            raise ValueError("--tolerance must be positive")
        if self.input is not None and self.output is not None and \
                Path(self.input).resolve() == Path(self.output).resolve():
            raise ValueError("input and output paths must differ")

    @property
    def resolved_form(self) -> str:
        if self.form:
            return self.form
        return "spinor" if self.dim == 1 << self.p else "lambda"


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.output is None:
        sys.stdout.write(text)
    else:
        Path(cfg.output).write_text(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _size_summary(q: partition.QuotientAlgebra) -> str:
    sizes: dict = {}
    for w, h in q.pairs.values():
        key = f"{w.dim}/{h.dim}"
        sizes[key] = sizes.get(key, 0) + 1
    parts = ", ".join(f"{k} x{v}" for k, v in sizes.items())
    return f"su({q.dim}): center {q.center.dim}, {len(q.pairs)} pairs ({parts})"


def cmd_build(cfg: RunConfig) -> int:
    if cfg.dim is None:
        raise ValueError("build needs --dim")
    center = partition.intrinsic_center(cfg.dim, cfg.resolved_form)
    seeds = None
    if cfg.seed_order != "canonical":
        seeds = [parse_gen(t, cfg.dim) for t in cfg.seed_order.split(",") if t.strip()]
    try:
        q = partition.build_qap(center, seeds)
    except partition.ClosureError as exc:
        print(f"closure failure: {exc}", file=sys.stderr)
        return EXIT_CLOSURE
    text = partition.format_table(q) + "\n" if cfg.format == "text" else _dump(partition.qap_to_dict(q))
    _emit(cfg, text)
    print(_size_summary(q), file=sys.stderr)
    return EXIT_OK


def load_qap(path: Path) -> partition.QuotientAlgebra:
    data = json.loads(Path(path).read_text())
    return partition.qap_from_dict(data)


def cmd_verify(cfg: RunConfig) -> int:
    if cfg.input is None:
        raise ValueError("verify needs --in")
    try:
        q = load_qap(cfg.input)
    except (json.JSONDecodeError, ValueError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    problems = []
    n = q.dim
    if q.generator_count() != n * n - 1:
        problems.append(f"generator count {q.generator_count()} != {n * n - 1}")
    total = Span([g for s in q.subspaces() for g in s.basis])
    if len(total) != q.generator_count():
        problems.append("generators are linearly dependent")
    report = partition.verify_closure(q)
    for v in report.violations:
        problems.append(f"{v.left} x {v.right} -> expected {v.expected}: {v.witness}")
    lines = [f"checked {report.checked} brackets over {len(q.subspaces())} subspaces"]
    lines += problems or ["closure and conjugate partition verified"]
    _emit(cfg, "\n".join(lines) + "\n")
    return EXIT_FAIL if problems else EXIT_OK


def cmd_cartans(cfg: RunConfig) -> int:
    if cfg.p is None:
        raise ValueError("cartans needs --p")
    if not 1 <= cfg.p <= 4:
        raise ValueError("--p must lie in 1..4")
    e = cartan.enumerate_cartans(cfg.p)
    if cfg.format == "text":
        lines = [f"p={cfg.p}: shells {e.counts}, total {e.total}"]
        for k, shell in enumerate(e.shells):
            for c in shell:
                lines.append(f"{k} " + " ".join(c.words()))
        text = "\n".join(lines) + "\n"
    else:
        text = _dump({"p": cfg.p, "counts": e.counts, "total": e.total,
                      "shells": [[[s.short() for s in c.sorted()] for c in shell] for shell in e.shells]})
    _emit(cfg, text)
    print(f"p={cfg.p}: shells {e.counts}, total {e.total}", file=sys.stderr)
    return EXIT_OK


def _selection(q: partition.QuotientAlgebra, text: Optional[str]) -> cartan.CartanSelection:
    if text:
        return cartan.resolve_selection(q, cartan.parse_selection(text, q.p))
    return kak.default_split(q).selection


def cmd_split(cfg: RunConfig) -> int:
    if cfg.dim is None:
        raise ValueError("split needs --dim")
    q = partition.build_qap(partition.intrinsic_center(cfg.dim, cfg.resolved_form))
    split = cartan.make_split(_selection(q, cfg.selection))
    report = cartan.verify_split(split)
    data = {"dim": cfg.dim, "selection": split.selection.describe(),
            "t": {s.name: [str(g) for g in s.basis] for s in split.t},
            "p": {s.name: [str(g) for g in s.basis] for s in split.p},
            "verified": report.ok, "type_ai": report.type_ai}
    _emit(cfg, _dump(data))
    for f in report.failures:
        print(f, file=sys.stderr)
    return EXIT_OK if report.ok and report.type_ai else EXIT_FAIL


def read_matrix(path: Path) -> np.ndarray:
    """JSON (nested ``[re, im]`` pairs, optionally under ``"matrix"``) or raw little-endian complex128."""
    path = Path(path)
    raw = path.read_bytes()
    if path.suffix == ".json":
        data = json.loads(raw)
        if isinstance(data, dict):
            data = data["matrix"]
        arr = np.asarray(data, dtype=float)
        if arr.ndim != 3 or arr.shape[2] != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError("expected an N x N array of [re, im] pairs")
        return arr[..., 0] + 1j * arr[..., 1]
    vals = np.frombuffer(raw, dtype="<f8")
    n = int(round(np.sqrt(len(vals) / 2)))
    if 2 * n * n != len(vals):
        raise ValueError("binary matrix size is not 2 N^2 doubles")
    return (vals[0::2] + 1j * vals[1::2]).reshape(n, n)


def write_matrix(path: Path, U: np.ndarray) -> None:
    path = Path(path)
    if path.suffix == ".json":
        path.write_text(json.dumps({"matrix": [[[z.real, z.imag] for z in row] for row in U]}))
    else:
        out = np.empty(2 * U.size, dtype="<f8")
        out[0::2], out[1::2] = U.real.ravel(), U.imag.ravel()
        path.write_bytes(out.tobytes())


def cmd_decompose(cfg: RunConfig) -> int:
    if cfg.input is None:
        raise ValueError("decompose needs --in")
    try:
        U = read_matrix(cfg.input)
    except (json.JSONDecodeError, ValueError, KeyError, TypeError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        U = kak.check_unitary(U)
    except kak.NotUnitaryError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_NOT_UNITARY
    n = U.shape[0]
    if cfg.dim is not None and cfg.dim != n:
        raise ValueError(f"--dim {cfg.dim} does not match the {n} x {n} input")
    p = width_for(n)
    q = partition.build_qap(partition.intrinsic_center(1 << p))
    seq = kak.canonical_sequence(q, _selection(q, cfg.selection))
    tree = kak.recursive_factor(U, seq)
    gates = kak.emit_gates(tree)
    data = [{"tau": g.tau, "generator": g.generator.short(), "angle": g.angle} for g in gates]
    _emit(cfg, _dump(data))
    print(f"factors {len(tree.factors)}, gates {len(gates)}, residual {tree.reconstruction_error:.3e}",
          file=sys.stderr)
    return EXIT_OK if tree.reconstruction_error <= cfg.tolerance else EXIT_FAIL


COMMANDS = {"build": cmd_build, "verify": cmd_verify, "cartans": cmd_cartans,
            "split": cmd_split, "decompose": cmd_decompose}


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qap", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--dim", type=int)
        sp.add_argument("--p", type=int)
        sp.add_argument("--seed-order", default="canonical",
                        help="'canonical' or a comma separated list of generators")
        sp.add_argument("--tolerance", type=float, default=kak.FULL_TOL)
        sp.add_argument("--format", choices=("json", "text"), default="json")
        sp.add_argument("--in", dest="input", type=Path)
        sp.add_argument("--out", dest="output", type=Path)
        sp.add_argument("--selection", help="e.g. 001:W,010:W,100:hat")
        sp.add_argument("--form", choices=("spinor", "lambda"))
    return parser


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        cfg = RunConfig(**vars(args))
        return COMMANDS[cfg.command](cfg)
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
