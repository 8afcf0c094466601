"""Command line: enumerate | sset | check | reconstruct | verify-theorem.

Exit codes: 0 success, 1 mathematical rejection, 2 input error,
3 internal verification failure.
"""

from __future__ import annotations

import argparse
import sys

from .errors import ConditionSError, InputError, InternalVerificationError
from .forms import BilinearForm, format_gram, is_non_singular, is_symplectic, parse_gram
from .gfcore import field_of_order
from .reconstruct import DIRECT, DUAL, reconstruct_form, verify_theorem
from .singsets import HYPERPLANE, LINE, PlaneSet, check_condition_s, format_plane_set, parse_plane_set, singular_set
from .subspace import enumerate_grassmannian

EXIT_OK, EXIT_REJECTED, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _block(s) -> list[str]:
    return [" ".join(map(str, r)) for r in s.rows]


def _check_nk(n: int, k: int) -> None:
    if n < 1:
        raise InputError(f"--n must be positive, got {n}")
    if not 0 <= k <= n:
        raise InputError(f"need 0 <= k <= n, got k={k}")


def cmd_enumerate(args, out) -> int:
    F = field_of_order(args.q)
    _check_nk(args.n, args.k)
    X = PlaneSet(F, args.n, args.k, tuple(enumerate_grassmannian(F, args.n, args.k)))
    out.write(format_plane_set(X))
    return EXIT_OK


def cmd_sset(args, out, err) -> int:
    gram = parse_gram(_read(args.gram))
    if (gram.field.q, gram.nrows) != (args.q, args.n):
        raise InputError(f"Gram file is over q={gram.field.q}, n={gram.nrows}; flags say q={args.q}, n={args.n}")
    omega = BilinearForm.plain(gram)
    if not is_symplectic(omega):
        err.write("error: not symplectic (Gram is not alternating)\n")
        return EXIT_INPUT
    if not is_non_singular(omega):
        err.write("error: not non-singular (Gram is not invertible)\n")
        return EXIT_INPUT
    if not 1 <= args.k <= args.n - 1:
        raise InputError(f"need 1 <= k <= n-1, got k={args.k}")
    if args.k % 2:
        err.write(f"note: k={args.k} is odd, every {args.k}-plane is singular\n")
    out.write(format_plane_set(singular_set(omega, args.k)))
    return EXIT_OK


def _write_rejection(exc: ConditionSError, out) -> None:
    out.write(f"rejected {exc.reason}: {exc}\n")
    if exc.witness is not None:
        out.write(("hyperplane:" if exc.witness.dim > 1 else "line:") + "\n")
        out.write("\n".join(_block(exc.witness)) + "\n")
    if exc.plane is not None:
        out.write("plane:\n")
        out.write("\n".join(_block(exc.plane)) + "\n")


def cmd_check(args, out, err) -> int:
    X = parse_plane_set(_read(args.set))
    try:
        W = check_condition_s(X, args.direction)
    except ConditionSError as exc:
        _write_rejection(exc, out)
        return EXIT_REJECTED
    lines = [f"accepted {W.direction} {len(W)}"]
    for s, t in W.items():
        lines.append("")
        lines.extend(_block(s))
        lines.append("->")
        lines.extend(_block(t))
    if args.pass_through:
        # report aside, the accepted set goes on so the next command can read it
        err.write("\n".join(lines) + "\n")
        out.write(format_plane_set(X))
    else:
        out.write("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_reconstruct(args, out, err) -> int:
    X = parse_plane_set(_read(args.set))
    try:
        report = reconstruct_form(X, args.via)
    except ConditionSError as exc:
        _write_rejection(exc, err)
        return EXIT_REJECTED
    if not report.form.is_plain:
        # Gram files carry trivial automorphisms only
        out.write(f"# sigma=Frob^{report.form.sigma1.e}\n")
    out.write(format_gram(report.form.gram))
    for line in report.summary_lines():
        out.write(f"# {line}\n")
    err.write(f"elapsed {report.elapsed:.3f}s\n")
    return EXIT_OK


def cmd_verify_theorem(args, out) -> int:
    summary = verify_theorem(args.q, args.n, args.k, args.mode, args.samples, args.seed, args.via)
    out.write(summary.line() + "\n")
    for msg in summary.messages:
        out.write(msg + "\n")
    return EXIT_OK if summary.failures == 0 else EXIT_INTERNAL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="symsets", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="list every k-subspace of GF(q)^n")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)

    p = sub.add_parser("sset", help="planes where a symplectic form restricts singularly")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--gram", required=True, help="Gram file, '-' for stdin")

    p = sub.add_parser("check", help="decide condition S and print the witness map")
    p.add_argument("--set", required=True, help="plane-set file, '-' for stdin")
    p.add_argument("--direction", choices=[HYPERPLANE, LINE], default=None)
    p.add_argument(
        "--pass-through",
        action="store_true",
        help="on acceptance copy the set to stdout and send the witness report to stderr",
    )

    p = sub.add_parser("reconstruct", help="recover a symplectic form from a condition-S set")
    p.add_argument("--set", required=True, help="plane-set file, '-' for stdin")
    p.add_argument("--via", choices=[DIRECT, DUAL], default=None)

    p = sub.add_parser("verify-theorem", help="check both implications over many forms")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--mode", choices=["exhaustive", "sampled"], default="exhaustive")
    p.add_argument("--samples", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--via", choices=[DIRECT, DUAL], default=None)
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        if args.command == "enumerate":
            return cmd_enumerate(args, out)
        if args.command == "sset":
            return cmd_sset(args, out, err)
        if args.command == "check":
            return cmd_check(args, out, err)
        if args.command == "reconstruct":
            return cmd_reconstruct(args, out, err)
        return cmd_verify_theorem(args, out)
    except InputError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT
    except InternalVerificationError as exc:
        err.write(f"internal verification failure: {exc}\n")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
