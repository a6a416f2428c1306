"""Command-line front end emitting JSON reports.

Every analysis subcommand writes a single JSON report (stdout or -o) that
echoes the tool version and the effective configuration, so results are
reproducible from the report alone. gen and apply write state files in the
same format the other subcommands consume. Exit codes: 0 success, 2 for
malformed input or incompatible parameters, 3 when two internal routes to
the same answer disagree (a tolerance inconsistency).
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import __version__
from .classify import (
    DEFAULT_COMPARE_TOL,
    classify_acin,
    classify_three,
    classify_two,
    family_label,
    lu_compare,
    slocc_compare,
)
from .coeffmat import QubitPartition, local_rank
from .errors import ToleranceInconsistency, ValidationError
from .flip import verify_congruence
from .invariants import (
    DEFAULT_RANK_TOL,
    default_rows,
    invariant_profile,
    rank_profile,
)
from .states import (
    AcinForm,
    LocalOperator,
    PureState,
    acin_state,
    apply_local,
    parse_operator,
    parse_state,
    random_state,
    serialize_state,
    standard_state,
)

TOOL_NAME = "spinflip"

DEFAULT_RESIDUAL_TOL = 1e-8


def _format_float(x: float) -> str:
    # 17 significant digits round-trip IEEE doubles exactly
    return format(float(x), ".17g")


def _emit_json(value, indent: int = 0) -> str:
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if isinstance(value, dict):
        if not value:
            return "{}"
        rows = ",\n".join(
            f'{inner}"{key}": {_emit_json(val, indent + 1)}'
            for key, val in value.items()
        )
        return "{\n" + rows + "\n" + pad + "}"
    if isinstance(value, (list, tuple)):
        if len(value) == 0:
            return "[]"
        flat = all(not isinstance(v, (dict, list, tuple, complex)) for v in value)
        if flat:
            return "[" + ", ".join(_emit_json(v, indent) for v in value) + "]"
        rows = ",\n".join(f"{inner}{_emit_json(v, indent + 1)}" for v in value)
        return "[\n" + rows + "\n" + pad + "]"
    if isinstance(value, str):
        return json.dumps(value)
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return _format_float(value)
    if isinstance(value, (complex, np.complexfloating)):
        z = complex(value)
        return f"[{_format_float(z.real)}, {_format_float(z.imag)}]"
    if isinstance(value, np.ndarray):
        return _emit_json(value.tolist(), indent)
    raise TypeError(f"cannot serialize {type(value)!r}")


def _write_output(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(path, "w") as handle:
            handle.write(text if text.endswith("\n") else text + "\n")


def _read_state(path: str) -> PureState:
    try:
        with open(path) as handle:
            text = handle.read()
    except OSError as exc:
        raise ValidationError(f"cannot read state file {path}: {exc}") from exc
    return parse_state(text)


def _read_operator(path: str) -> LocalOperator:
    try:
        with open(path) as handle:
            text = handle.read()
    except OSError as exc:
        raise ValidationError(f"cannot read operator file {path}: {exc}") from exc
    return parse_operator(text)


def _parse_rows(spec: str | None, n: int) -> QubitPartition:
    if spec is None:
        return QubitPartition(default_rows(n), n)
    try:
        rows = tuple(int(part) for part in spec.split(","))
    except ValueError as exc:
        raise ValidationError(f"--rows must be comma-separated integers: {spec!r}") from exc
    return QubitPartition(rows, n)


def _parse_acin(spec: str, phi: float) -> AcinForm:
    try:
        lams = [float(part) for part in spec.split(",")]
    except ValueError as exc:
        raise ValidationError(f"--acin must be five comma-separated reals: {spec!r}") from exc
    if len(lams) != 5:
        raise ValidationError(f"--acin needs exactly five weights, got {len(lams)}")
    return AcinForm(*lams, phi=phi)


def _config(args, command: str, rows, **extras) -> dict:
    cfg = {
        "rows": list(rows) if rows is not None else None,
        "max_power": getattr(args, "max_power", None),
        "tol": getattr(args, "tol", None),
        "seed": getattr(args, "seed", None),
        "output": args.output,
    }
    cfg.update(extras)
    return {"tool": TOOL_NAME, "version": __version__, "command": command, "config": cfg}


def _witness_payload(witness) -> dict | None:
    if witness is None:
        return None
    payload = {"kind": witness.kind}
    if witness.rows is not None:
        payload["rows"] = list(witness.rows)
    if witness.power is not None:
        payload["power"] = witness.power
    payload["value_a"] = witness.value_a
    payload["value_b"] = witness.value_b
    return payload


def _cmd_invariants(args) -> int:
    state = _read_state(args.state)
    partition = _parse_rows(args.rows, state.n)
    report = _config(args, "invariants", partition.rows)
    report["n"] = state.n
    report["normalized"] = state.normalized
    if state.normalized:
        profile = invariant_profile(state, [partition], args.max_power, args.tol)
        part = profile.partitions[0]
        report["ranks"] = list(part.rank_profile.ranks)
        report["partitions"] = [
            {
                "rows": list(partition.rows),
                "ranks": list(part.rank_profile.ranks),
                "tolerance": part.rank_profile.tolerance,
                "powers": [
                    {
                        "power": idx + 1,
                        "singular_values": part.singular_values[idx],
                        "abs_det": part.abs_dets[idx],
                    }
                    for idx in range(args.max_power)
                ],
            }
        ]
        if profile.concurrence is not None:
            report["concurrence"] = profile.concurrence
        if profile.odd is not None:
            odd = profile.odd
            report["ntangle"] = odd.ntangle
            report["odd"] = {
                "e11": odd.e11, "e12": odd.e12, "e22": odd.e22,
                "delta": odd.delta, "dee": odd.dee,
                "t1": odd.t1, "t2": odd.t2, "ntangle": odd.ntangle,
            }
        if profile.s_value is not None:
            report["s"] = profile.s_value
    else:
        # ranks and singular values are scale-invariant facts; closed forms
        # need unit norm, so they are omitted
        rp = rank_profile(state, partition, args.max_power, args.tol)
        report["ranks"] = list(rp.ranks)
        report["partitions"] = [
            {"rows": list(partition.rows), "ranks": list(rp.ranks), "tolerance": rp.tolerance}
        ]
    _write_output(_emit_json(report), args.output)
    return 0


def _cmd_classify(args) -> int:
    state = _read_state(args.state)
    if state.n == 2:
        label = classify_two(state, args.tol)
        partition = QubitPartition((1,), 2)
    elif state.n == 3:
        label = classify_three(state, args.tol)
        partition = QubitPartition((1, 2), 3)
    else:
        raise ValidationError("classify handles 2- and 3-qubit states only")
    ranks = rank_profile(state, partition, 3, args.tol).ranks
    report = _config(args, "classify", partition.rows)
    report["n"] = state.n
    report["class"] = label.label
    report["ranks"] = list(ranks)
    if state.n == 3:
        report["local_ranks"] = [local_rank(state, q, args.tol) for q in (1, 2, 3)]
    _write_output(_emit_json(report), args.output)
    return 0


def _cmd_classify_acin(args) -> int:
    form = _parse_acin(args.acin, args.phi)
    label, triple, s_value = classify_acin(form, args.tol)
    report = _config(args, "classify-acin", (1, 2))
    report["lambdas"] = list(form.lambdas())
    report["phi"] = form.phi
    report["class"] = label.label
    report["ranks"] = list(triple)
    report["s"] = s_value
    _write_output(_emit_json(report), args.output)
    return 0


def _cmd_compare_lu(args) -> int:
    a, b = _read_state(args.state_a), _read_state(args.state_b)
    partition = _parse_rows(args.rows, a.n)
    verdict = lu_compare(
        a, b, [partition], args.max_power, args.compare_tol, args.tol
    )
    report = _config(
        args, "compare-lu", partition.rows, compare_tol=args.compare_tol
    )
    report["relation"] = verdict.relation
    report["witness"] = _witness_payload(verdict.witness)
    _write_output(_emit_json(report), args.output)
    return 0


def _cmd_compare_slocc(args) -> int:
    a, b = _read_state(args.state_a), _read_state(args.state_b)
    verdict = slocc_compare(a, b, args.tol)
    report = _config(args, "compare-slocc", default_rows(a.n))
    report["relation"] = verdict.relation
    report["witness"] = _witness_payload(verdict.witness)
    _write_output(_emit_json(report), args.output)
    return 0


def _cmd_family(args) -> int:
    state = _read_state(args.state)
    label = family_label(state, args.tol)
    rows = default_rows(state.n) if state.n == 3 else None
    report = _config(args, "family", rows)
    report["kind"] = label.kind
    report["value"] = label.value
    if label.slocc_class is not None:
        report["class"] = label.slocc_class
    _write_output(_emit_json(report), args.output)
    return 0


def _cmd_gen(args) -> int:
    chosen = [args.state is not None, args.random, args.acin is not None]
    if sum(chosen) != 1:
        raise ValidationError("gen needs exactly one of --state, --random, --acin")
    if args.state is not None:
        if args.n is None and args.state in ("ghz", "w", "zeros"):
            raise ValidationError(f"--state {args.state} requires --n")
        state = standard_state(args.state, args.n)
    elif args.random:
        if args.n is None:
            raise ValidationError("--random requires --n")
        state = random_state(args.n, args.seed)
    else:
        state = acin_state(_parse_acin(args.acin, args.phi))
    _write_output(serialize_state(state), args.output)
    return 0


def _cmd_apply(args) -> int:
    state = _read_state(args.state)
    op = _read_operator(args.operator)
    _write_output(serialize_state(apply_local(state, op)), args.output)
    return 0


def _cmd_verify_congruence(args) -> int:
    state = _read_state(args.state)
    op = _read_operator(args.operator)
    partition = _parse_rows(args.rows, state.n)
    outcome = verify_congruence(state, op, partition, args.power)
    report = _config(
        args, "verify-congruence", partition.rows,
        power=args.power, residual_tol=args.residual_tol,
    )
    report["alpha"] = outcome.alpha
    report["beta"] = outcome.beta
    report["residual"] = outcome.residual
    report["passed"] = bool(outcome.residual < args.residual_tol)
    _write_output(_emit_json(report), args.output)
    return 0


def _add_common(parser, rows=False, power=False, compare=False):
    parser.add_argument("--tol", type=float, default=DEFAULT_RANK_TOL,
                        help="rank / zero-test tolerance (default 1e-10)")
    parser.add_argument("-o", "--output", default=None, help="write to file instead of stdout")
    if rows:
        parser.add_argument("--rows", default=None,
                            help="row qubits, comma-separated (default 1,2 from n=3 up, else 1)")
    if power:
        parser.add_argument("--max-power", type=int, default=3,
                            help="highest power to compute (default 3)")
    if compare:
        parser.add_argument("--compare-tol", type=float, default=DEFAULT_COMPARE_TOL,
                            help="invariant-difference threshold (default 1e-9)")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=TOOL_NAME,
        description="Spin-flipping matrix invariants and classification of n-qubit states",
    )
    parser.add_argument("--version", action="version", version=f"{TOOL_NAME} {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariants", help="ranks, singular values, |det|, closed forms")
    p.add_argument("state", help="state JSON file")
    _add_common(p, rows=True, power=True)
    p.set_defaults(func=_cmd_invariants)

    p = sub.add_parser("classify", help="SLOCC class of a 2- or 3-qubit state")
    p.add_argument("state")
    _add_common(p)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("classify-acin", help="SLOCC class of a canonical form")
    p.add_argument("--acin", required=True, help="five weights, comma-separated")
    p.add_argument("--phi", type=float, default=0.0, help="phase in [0, pi] (default 0)")
    _add_common(p)
    p.set_defaults(func=_cmd_classify_acin)

    p = sub.add_parser("compare-lu", help="necessary-condition comparison under local unitaries")
    p.add_argument("state_a")
    p.add_argument("state_b")
    _add_common(p, rows=True, power=True, compare=True)
    p.set_defaults(func=_cmd_compare_lu)

    p = sub.add_parser("compare-slocc", help="necessary-condition comparison under SLOCC")
    p.add_argument("state_a")
    p.add_argument("state_b")
    _add_common(p)
    p.set_defaults(func=_cmd_compare_slocc)

    p = sub.add_parser("family", help="LU family label")
    p.add_argument("state")
    _add_common(p)
    p.set_defaults(func=_cmd_family)

    p = sub.add_parser("gen", help="write a state file")
    p.add_argument("--state", default=None,
                   help="named state: ghz, w, bell, zeros, xi, vartheta, w1, w2")
    p.add_argument("--random", action="store_true", help="Haar-random state")
    p.add_argument("--acin", default=None, help="five canonical weights, comma-separated")
    p.add_argument("--phi", type=float, default=0.0)
    p.add_argument("--n", type=int, default=None, help="qubit count")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("apply", help="apply a local operator, write the new state file")
    p.add_argument("state")
    p.add_argument("operator", help="operator JSON file")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_apply)

    p = sub.add_parser("verify-congruence", help="check the local-transformation congruence")
    p.add_argument("state")
    p.add_argument("operator")
    p.add_argument("--power", type=int, default=1)
    p.add_argument("--residual-tol", type=float, default=DEFAULT_RESIDUAL_TOL,
                   help="pass threshold on the relative residual (default 1e-8)")
    _add_common(p, rows=True)
    p.set_defaults(func=_cmd_verify_congruence)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad flags, 0 on --help
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ToleranceInconsistency as exc:
        print(f"{TOOL_NAME}: tolerance inconsistency: {exc}", file=sys.stderr)
        return 3
    except ValidationError as exc:
        print(f"{TOOL_NAME}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
