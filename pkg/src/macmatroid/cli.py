"""Command-line front door.

Verbs: umif, make, matroid, recover, quasi, bridge.  Human output is
TSV-first with a --json escape hatch; identical invocations produce
byte-identical output.

Exit codes: 0 ok, 2 parse/usage error, 3 cap violation, 4 rank-axiom
violation, 5 channel rejected (not extremal / not quasi-extremal).
"""

from __future__ import annotations

import argparse
import json
import sys

from .channel import (
    Channel,
    TooLarge,
    additive_noise,
    linear_deterministic,
    single_user_joint,
    mutual_information,
)
from .extremal import NotExtremal, bridge_forms_to_umif, bridge_umif_to_forms, certify_extremal, integer_umif_matroid
from .extremal import InfeasibleVector
from .gf2 import F2Matrix, find_representation, is_binary_tutte, is_binary_whitney
from .matroid import AxiomViolation, Matroid, dual, has_minor, is_polymatroid
from .quasi import NotQuasiExtremal, PremiseViolated, check_pinsker_concentration, quasi_integer_classify
from . import formats
from .subsets import render

EXIT_PARSE = 2
EXIT_TOO_LARGE = 3
EXIT_AXIOM = 4
EXIT_REJECTED = 5


def _print(text: str) -> None:
    sys.stdout.write(text)


def _emit(args, payload: dict, human: str) -> None:
    if getattr(args, "json", False):
        _print(formats.dumps_canonical(payload))
    else:
        _print(human)


def _load_channel(path: str) -> Channel:
    return formats.channel_from_dict(formats.read_json(path))


def _load_matroid(path: str) -> Matroid:
    return formats.matroid_from_dict(formats.read_json(path))


def _describe_matroid(M: Matroid) -> str:
    r = M.full_rank
    if all(M.rank[s] == min(s.bit_count(), r) for s in range(1 << M.m)):
        return f"U_{{{r},{M.m}}}"
    return "rank " + " ".join(str(v) for v in M.rank)


def _write_out(args, text: str) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        _print(text)


def cmd_umif(args) -> int:
    W = _load_channel(args.channel)
    rounding = integer_umif_matroid(W, tol=args.tol)
    f = rounding.umif
    poly = is_polymatroid(f, tol=max(args.tol, 1e-9))
    lines = [f"{render(s, W.m)}\t{value:.12g}" for s, value in enumerate(f.values)]
    matroid = rounding.matroid
    binary = None
    matrix = None
    if matroid is not None:
        matrix = find_representation(matroid)
        binary = matrix is not None
    out = list(lines)
    out.append(f"polymatroid: {'yes' if poly else 'no'}")
    if matroid is not None:
        out.append(f"matroid: yes ({_describe_matroid(matroid)})")
        out.append(f"binary: {'yes' if binary else 'no'}")
        out.append(f"matrix: {matrix.to_text() if binary else 'none'}")
    else:
        out.append(
            f"matroid: no (residual {rounding.max_residual:.6g} at "
            f"{render(rounding.worst_subset, W.m)})"
        )
    payload = {
        "m": W.m,
        "q": W.q,
        "umif": list(f.values),
        "polymatroid": bool(poly),
        "matroid": formats.matroid_to_dict(matroid) if matroid is not None else None,
        "residual_max": rounding.max_residual,
        "worst_subset": render(rounding.worst_subset, W.m),
        "binary": binary,
        "matrix": matrix.to_text() if matrix is not None else None,
    }
    _emit(args, payload, "\n".join(out) + "\n")
    return 0


def cmd_make(args) -> int:
    if args.kind == "linear":
        if not args.matrix:
            raise ValueError("make linear requires --matrix")
        A = F2Matrix.from_text(args.matrix)
        W = linear_deterministic(A)
    else:
        if not args.noise:
            raise ValueError("make additive requires --noise")
        probs = formats.noise_from_dict(formats.read_json(args.noise))
        W = additive_noise(probs)
    _write_out(args, formats.dumps_canonical(formats.channel_to_dict(W)))
    return 0


def cmd_matroid(args) -> int:
    M = _load_matroid(args.matroid)
    if args.sub == "check":
        tutte = is_binary_tutte(M)
        whitney = is_binary_whitney(M)
        yn = lambda b: "yes" if b else "no"
        human = (
            f"valid matroid; binary: {yn(tutte)} (Tutte), {yn(whitney)} (Whitney)\n"
        )
        payload = {
            "valid": True,
            "m": M.m,
            "rank_full": M.full_rank,
            "binary_tutte": tutte,
            "binary_whitney": whitney,
        }
        _emit(args, payload, human)
        return 0
    if args.sub == "dual":
        D = dual(M)
        _write_out(args, formats.dumps_canonical(formats.matroid_to_dict(D)))
        return 0
    if args.sub == "minor":
        if not args.target:
            raise ValueError("matroid minor requires --target")
        N = _load_matroid(args.target)
        witness = has_minor(M, N)
        if witness is None:
            _emit(args, {"found": False}, "none\n")
        else:
            payload = {
                "found": True,
                "restrict": render(witness.restrict_set, M.m),
                "contract": render(witness.contract_set, M.m),
            }
            _emit(
                args,
                payload,
                f"restrict {render(witness.restrict_set, M.m)} "
                f"contract {render(witness.contract_set, M.m)}\n",
            )
        return 0
    # represent
    A = find_representation(M)
    if A is None:
        _emit(args, {"binary": False, "matrix": None}, "not binary\n")
    else:
        _emit(args, {"binary": True, "matrix": A.to_text()}, A.to_text() + "\n")
    return 0


def cmd_recover(args) -> int:
    W = _load_channel(args.channel)
    try:
        cert = certify_extremal(W, tol=args.tol)
    except NotExtremal as exc:
        if args.json:
            _print(
                formats.dumps_canonical(
                    {"error": "not_extremal", "output": exc.output, "reason": exc.reason}
                )
            )
        else:
            sys.stderr.write(f"error: {exc}\n")
        return EXIT_REJECTED
    _print(formats.dumps_canonical(formats.certificate_to_dict(cert)))
    return 0


def cmd_quasi(args) -> int:
    W = _load_channel(args.channel)
    try:
        report = quasi_integer_classify(W, epsilon=args.eps)
    except NotQuasiExtremal as exc:
        if args.json:
            _print(
                formats.dumps_canonical(
                    {
                        "error": "not_quasi_extremal",
                        "subset": render(exc.subset, W.m),
                        "residual": exc.residual,
                    }
                )
            )
        else:
            sys.stderr.write(f"error: {exc}\n")
        return EXIT_REJECTED
    concentration = []
    for i in range(1, W.m + 1):
        joint = single_user_joint(W, i)
        mi = mutual_information(joint)
        try:
            c = check_pinsker_concentration(joint, args.eps)
            concentration.append(
                {
                    "user": i,
                    "mutual_info": c.mutual_info,
                    "epsilon": c.epsilon,
                    "threshold": c.stated.threshold,
                    "mass": float(c.stated.deviating_mass),
                    "bound_stated": c.stated.bound,
                    "bound_derived": c.derived.bound,
                    "pass_stated": c.stated.passed,
                    "pass_derived": c.derived.passed,
                    "threshold_derived": c.derived.threshold,
                    "mass_derived": float(c.derived.deviating_mass),
                }
            )
        except PremiseViolated:
            concentration.append({"user": i, "mutual_info": mi, "premise": False})
    human = [
        f"matroid: {_describe_matroid(report.matroid)}",
        f"delta_max: {report.max_residual:.6g}",
    ]
    for fc in report.forms:
        human.append(
            f"form {render(fc.subset, W.m)}\t{fc.value:.12g}\t-> {fc.bit} "
            f"(distance {fc.distance:.6g})"
        )
    for entry in concentration:
        if entry.get("premise") is False:
            human.append(
                f"user {entry['user']}: premise violated "
                f"(I = {entry['mutual_info']:.6g} >= eps)"
            )
        else:
            human.append(
                f"user {entry['user']}: mass {entry['mass']:.6g} "
                f"stated {'pass' if entry['pass_stated'] else 'fail'} "
                f"derived {'pass' if entry['pass_derived'] else 'fail'}"
            )
    payload = {
        "matroid": formats.matroid_to_dict(report.matroid),
        "delta_max": report.max_residual,
        "forms": [
            {
                "subset": render(fc.subset, W.m),
                "value": fc.value,
                "bit": fc.bit,
                "distance": fc.distance,
            }
            for fc in report.forms
        ],
        "concentration": concentration,
    }
    _emit(args, payload, "\n".join(human) + "\n")
    return 0


def cmd_bridge(args) -> int:
    if (args.i is None) == (args.j is None):
        raise ValueError("bridge requires exactly one of --i or --j")
    raw = args.i if args.i is not None else args.j
    try:
        triple = tuple(int(part) for part in raw.split(","))
    except ValueError:
        raise ValueError(f"bad triple {raw!r}; expected three comma-separated integers")
    if len(triple) != 3:
        raise ValueError(f"bad triple {raw!r}; expected three components")
    result = bridge_umif_to_forms(triple) if args.i is not None else bridge_forms_to_umif(triple)
    _print(",".join(str(v) for v in result) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="macmatroid",
        description="Mutual information functions of finite MACs and their matroid structure.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    def add_common(p, tol=True, threads=True, json_flag=True):
        if tol:
            p.add_argument("--tol", type=float, default=1e-6, help="integer-detection tolerance")
        if threads:
            p.add_argument(
                "--threads",
                type=int,
                default=1,
                help="worker count for exhaustive scans (current implementation is serial; "
                "output does not depend on this value)",
            )
        if json_flag:
            p.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("umif", help="UMIF table and matroid/binary verdicts for a channel")
    p.add_argument("channel", help="channel JSON file")
    add_common(p)
    p.set_defaults(func=cmd_umif)

    p = sub.add_parser("make", help="write a channel JSON from a constructor")
    p.add_argument("kind", choices=("linear", "additive"))
    p.add_argument("--matrix", help="F2 matrix text, rows ';'-separated, e.g. 101;011")
    p.add_argument("--noise", help="noise JSON file with fields m, probs")
    p.add_argument("--out", help="output path (default: stdout)")
    p.set_defaults(func=cmd_make)

    p = sub.add_parser("matroid", help="check/dual/minor/represent on matroid JSON files")
    p.add_argument("sub", choices=("check", "dual", "minor", "represent"))
    p.add_argument("matroid", help="matroid JSON file")
    p.add_argument("--target", help="target matroid JSON file (minor)")
    p.add_argument("--out", help="output path (default: stdout)")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.set_defaults(func=cmd_matroid)

    p = sub.add_parser("recover", help="emit the extremal certificate of a channel")
    p.add_argument("channel", help="channel JSON file")
    add_common(p)
    p.set_defaults(func=cmd_recover)

    p = sub.add_parser("quasi", help="near-integer classification and concentration reports")
    p.add_argument("channel", help="channel JSON file")
    p.add_argument("--eps", type=float, required=True, help="classification tolerance")
    add_common(p, tol=False)
    p.set_defaults(func=cmd_quasi)

    p = sub.add_parser("bridge", help="two-user profile lookup")
    p.add_argument("--i", help="UMIF triple a,b,c: I(X1;Y X2),I(X2;Y X1),I(X1 X2;Y)")
    p.add_argument("--j", help="form triple a,b,c: I(X1;Y),I(X2;Y),I(X1+X2;Y)")
    p.set_defaults(func=cmd_bridge)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "threads", 1) < 1:
        parser.error("--threads must be >= 1")
    try:
        return args.func(args)
    except TooLarge as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_TOO_LARGE
    except AxiomViolation as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_AXIOM
    except InfeasibleVector as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_PARSE
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
