"""Command-line interface.

Every subcommand is pure given its inputs and --seed: identical invocations
produce byte-identical outputs.  Results go to stdout (or -o FILE); logs go
to stderr.  Exit codes: 0 success, 1 stall or invalid/failed decomposition,
2 usage or input errors.
"""

from __future__ import annotations

import argparse
import io
import json
import sys

import numpy as np

from . import pipeline
from .objectives import (
    build_holistic,
    build_step_f2,
    build_step_real,
)
from .pbpoly import PseudoBooleanPolynomial
from .quadratize import (
    IntegerEncoding,
    encode_integer_log,
    encode_integer_ternary_pair,
    reduce_min_selection,
    reduce_substitution,
    to_qubo_text,
)
from .solvers import SolverConfig, solve
from .tensors import (
    FIELD_F2,
    FIELD_R,
    Decomposition,
    MatMulShape,
    Tensor3,
    standard_tensor,
)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


def _field_tag(name: str) -> str:
    return FIELD_F2 if name == "f2" else FIELD_R


def _parse_encoding(spec: str) -> IntegerEncoding:
    if spec == "ternary":
        return encode_integer_ternary_pair()
    if spec.startswith("log:"):
        n = int(spec.split(":", 1)[1])
        return encode_integer_log(n, offset=-(n // 2))
    raise UsageError(f"unknown encoding {spec!r}; use 'ternary' or 'log:N'")


def _solver_config(args) -> SolverConfig:
    if getattr(args, "solver_config", None):
        with open(args.solver_config) as fh:
            return SolverConfig.from_json_obj(json.load(fh))
    return SolverConfig(
        kind=args.solver,
        seed=args.seed,
        restarts=args.restarts,
        sweeps=args.sweeps,
        t_initial=args.t_initial,
        t_final=args.t_final,
        tabu_tenure=args.tabu_tenure,
        exhaustive_guard=args.exhaustive_guard,
    )


def _emit(args, text: str) -> None:
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(args, obj) -> None:
    _emit(args, json.dumps(obj, separators=(",", ":")) + "\n")


def _read_input(path: str | None):
    if path is None or path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _log(msg: str) -> None:
    print(msg, file=sys.stderr)


def _add_common_output(p) -> None:
    p.add_argument("-o", "--output", default=None, help="output file (default stdout)")


def _add_shape_args(p) -> None:
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-m", type=int, required=True)
    p.add_argument("-p", type=int, required=True)


def _add_solver_args(p) -> None:
    p.add_argument("--solver", choices=("exhaustive", "anneal", "tabu"), default="exhaustive")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--restarts", type=int, default=8)
    p.add_argument("--sweeps", type=int, default=200)
    p.add_argument("--t-initial", type=float, default=8.0)
    p.add_argument("--t-final", type=float, default=0.05)
    p.add_argument("--tabu-tenure", type=int, default=8)
    p.add_argument("--exhaustive-guard", type=int, default=26)
    p.add_argument("--solver-config", default=None,
                   help="JSON file with a full solver config (overrides the flags above)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="mmsearch",
        description="Matrix-multiplication algorithm discovery via binary optimization",
    )
    ap.add_argument("--threads", type=int, default=0, help="cap worker threads (0 = auto)")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("standard-tensor", help="emit the standard multiplication tensor")
    _add_shape_args(p)
    p.add_argument("--field", choices=("f2", "r"), default="r")
    _add_common_output(p)

    p = sub.add_parser("build-step", help="build a single-step objective")
    p.add_argument("--target", required=True, help="target tensor JSON file")
    p.add_argument("--source", required=True, help="source tensor JSON file")
    p.add_argument("--field", choices=("f2", "r"), default="f2")
    p.add_argument("--encoding", default="ternary")
    _add_common_output(p)

    p = sub.add_parser("build-holistic", help="build the fixed-rank objective")
    _add_shape_args(p)
    p.add_argument("--rank", "-R", type=int, required=True)
    p.add_argument("--encoding", default="ternary")
    _add_common_output(p)

    p = sub.add_parser("reduce", help="quadratize an objective to qbsolv text")
    p.add_argument("--input", "-i", default=None, help="polynomial/objective JSON (default stdin)")
    p.add_argument("--method", choices=("min-selection", "substitution"), default="min-selection")
    p.add_argument("--penalty", type=float, default=None)
    _add_common_output(p)

    p = sub.add_parser("solve", help="minimize a polynomial/objective JSON")
    p.add_argument("--input", "-i", default=None)
    _add_solver_args(p)
    _add_common_output(p)

    p = sub.add_parser("decompose", help="run the decompositional search")
    p.add_argument("--hp", default=None, help="high-energy point JSON (default stdin)")
    p.add_argument("--field", choices=("f2", "r"), default="f2")
    p.add_argument("--encoding", default="ternary")
    p.add_argument("--max-iter", type=int, default=64)
    _add_solver_args(p)
    _add_common_output(p)

    p = sub.add_parser("holistic", help="run the fixed-rank search")
    _add_shape_args(p)
    p.add_argument("--rank", "-R", type=int, required=True)
    p.add_argument("--encoding", default="ternary")
    p.add_argument("--reduction", choices=("none", "min-selection", "substitution"), default="none")
    p.add_argument("--penalty", type=float, default=None)
    p.add_argument("--warm-start", default=None, help="file with a 0/1 assignment string")
    _add_solver_args(p)
    _add_common_output(p)

    p = sub.add_parser("verify", help="verify a decomposition JSON")
    p.add_argument("--input", "-i", default=None)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    _add_common_output(p)

    p = sub.add_parser("estimate", help="variable/interaction accounting")
    _add_shape_args(p)
    p.add_argument("--rank", "-R", type=int, required=True)
    p.add_argument("-k", type=int, default=2, help="binaries per integer variable")
    p.add_argument("--field", choices=("f2", "r"), default="r")
    _add_common_output(p)

    p = sub.add_parser("landscape", help="sample the holistic energy landscape as CSV")
    _add_shape_args(p)
    p.add_argument("--rank", "-R", type=int, required=True)
    p.add_argument("--chunks", type=int, default=64)
    p.add_argument("--per-chunk", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--insert-optima", action="store_true",
                   help="insert the known (2,2,2) rank-7 optima at their positions")
    p.add_argument("--center", type=int, default=None,
                   help="neighborhood mode: evaluate all points around this position")
    p.add_argument("--width", type=int, default=32)
    _add_common_output(p)

    p = sub.add_parser("fixture", help="emit a shipped fixture as JSON")
    p.add_argument("name", choices=("strassen", "standard"),
                   help="'strassen': 2x2 starting point; 'standard': degenerate start")
    p.add_argument("-n", type=int, default=2)
    p.add_argument("-m", type=int, default=2)
    p.add_argument("-p", type=int, default=2)
    _add_common_output(p)

    return ap


def _load_poly(text: str) -> PseudoBooleanPolynomial:
    obj = json.loads(text)
    return PseudoBooleanPolynomial.from_json_obj(obj)


def _cmd_standard_tensor(args) -> int:
    shape = MatMulShape(args.n, args.m, args.p)
    t = standard_tensor(shape, _field_tag(args.field))
    _emit(args, t.to_json() + "\n")
    return EXIT_OK


def _cmd_build_step(args) -> int:
    target = Tensor3.from_json(_read_input(args.target))
    source = Tensor3.from_json(_read_input(args.source))
    if args.field == "f2":
        obj = build_step_f2(target.to_field(FIELD_F2), source.to_field(FIELD_F2))
    else:
        obj = build_step_real(target, source, _parse_encoding(args.encoding))
    _emit_json(args, obj.to_json_obj())
    return EXIT_OK


def _cmd_build_holistic(args) -> int:
    shape = MatMulShape(args.n, args.m, args.p)
    t_s = standard_tensor(shape, FIELD_R)
    obj = build_holistic(t_s, args.rank, _parse_encoding(args.encoding))
    _emit_json(args, obj.to_json_obj())
    return EXIT_OK


def _cmd_reduce(args) -> int:
    poly = _load_poly(_read_input(args.input))
    if args.method == "min-selection":
        qm, report = reduce_min_selection(poly)
    else:
        qm, report = reduce_substitution(poly, args.penalty)
    _log(
        f"reduced {report.original_vars} vars with {report.ancilla_count} ancillas "
        f"({report.method})"
    )
    _emit(args, to_qubo_text(qm, comment=f"mmsearch {report.method} reduction"))
    return EXIT_OK


def _cmd_solve(args) -> int:
    poly = _load_poly(_read_input(args.input))
    result = solve(poly, _solver_config(args))
    _emit(args, result.to_json() + "\n")
    return EXIT_OK


def _cmd_decompose(args) -> int:
    doc = json.loads(_read_input(args.hp))
    if "high_energy_point" in doc:
        doc = doc["high_energy_point"]
    hp = pipeline.HighEnergyPoint.from_json_obj(doc)
    shape = hp.tensor.shape
    field = _field_tag(args.field)
    encoding = _parse_encoding(args.encoding)
    max_workers = args.threads if args.threads > 0 else 2
    try:
        run = pipeline.run_decompositional(
            shape, field, hp, _solver_config(args),
            max_iter=args.max_iter, encoding=encoding, max_workers=max_workers,
        )
    except pipeline.StallError as exc:
        _log(f"stall: {exc}")
        if exc.partial.decomposition is not None:
            _emit(args, exc.partial.decomposition.to_json() + "\n")
        return EXIT_FAILURE
    for rec in run.records:
        _log(
            f"loop {rec.loop}: distance {rec.distance_before} -> "
            f"{rec.distance_after} (energy {rec.energy:g})"
        )
    _emit(args, run.decomposition.to_json() + "\n")
    return EXIT_OK


def _cmd_holistic(args) -> int:
    shape = MatMulShape(args.n, args.m, args.p)
    init = None
    if args.warm_start:
        text = _read_input(args.warm_start).strip()
        init = np.array([int(ch) for ch in text], dtype=np.uint8)
    run = pipeline.run_holistic(
        shape,
        args.rank,
        _solver_config(args),
        reduction=args.reduction,
        penalty_weight=args.penalty,
        initial_assignment=init,
        encoding=_parse_encoding(args.encoding),
    )
    if run.success:
        _log(f"energy 0: valid rank-{run.decomposition.rank()} decomposition")
        _emit(args, run.decomposition.to_json() + "\n")
        return EXIT_OK
    _log(f"no valid decomposition found; best energy {run.energy:g}")
    _emit_json(args, {
        "valid": False,
        "energy": int(run.energy) if float(run.energy).is_integer() else run.energy,
        "assignment": run.solver_result.assignment_string() if run.solver_result else None,
    })
    return EXIT_FAILURE


def _cmd_verify(args) -> int:
    d = Decomposition.from_json(_read_input(args.input))
    report = pipeline.verify_decomposition(d, trials=args.trials, seed=args.seed)
    _emit_json(args, report.to_json_obj())
    return EXIT_OK if report.valid else EXIT_FAILURE


def _cmd_estimate(args) -> int:
    shape = MatMulShape(args.n, args.m, args.p)
    est = pipeline.estimate_resources(shape, args.rank, args.k, _field_tag(args.field))
    _emit(
        args,
        f"variables={est.holistic_variables} interaction_bound={est.interaction_bound}\n"
        f"step_variables={est.step_variables} ancilla_bound={est.ancilla_bound}\n",
    )
    return EXIT_OK


def _cmd_landscape(args) -> int:
    shape = MatMulShape(args.n, args.m, args.p)
    t_s = standard_tensor(shape, FIELD_R)
    obj = build_holistic(t_s, args.rank, encode_integer_ternary_pair())
    if args.center is not None:
        rows = pipeline.sample_neighborhood(obj, args.center, args.width)
    else:
        optima = None
        if args.insert_optima:
            optima = pipeline.strassen_landscape_optima(obj)
        rows = pipeline.sample_landscape(
            obj, args.chunks, per_chunk=args.per_chunk, seed=args.seed,
            known_optima=optima,
        )
    buf = io.StringIO()
    pipeline.write_landscape_csv(rows, buf)
    _emit(args, buf.getvalue())
    return EXIT_OK


def _cmd_fixture(args) -> int:
    if args.name == "strassen":
        fx = pipeline.strassen_fixture()
        _emit_json(args, {
            "high_energy_point": fx.hp.to_json_obj(),
            "decomposition": fx.decomposition.to_json_obj(),
            "pairing": [list(g) for g in fx.pairing],
        })
    else:
        shape = MatMulShape(args.n, args.m, args.p)
        hp = pipeline.standard_recovery_point(shape)
        _emit_json(args, {"high_energy_point": hp.to_json_obj()})
    return EXIT_OK


_COMMANDS = {
    "standard-tensor": _cmd_standard_tensor,
    "build-step": _cmd_build_step,
    "build-holistic": _cmd_build_holistic,
    "reduce": _cmd_reduce,
    "solve": _cmd_solve,
    "decompose": _cmd_decompose,
    "holistic": _cmd_holistic,
    "verify": _cmd_verify,
    "estimate": _cmd_estimate,
    "landscape": _cmd_landscape,
    "fixture": _cmd_fixture,
}


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except BrokenPipeError:
        return EXIT_OK
    except (UsageError, json.JSONDecodeError, KeyError, ValueError, OSError) as exc:
        _log(f"error: {exc}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
