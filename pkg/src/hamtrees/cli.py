"""Command-line interface: ``hamtrees <subcommand> ...``.

Tree operands are given inline (``"(()())"``, ``"free:(()())"``) or as
``@path`` to read them from a file. A file operand may also hold a
combination, one ``<rational> <tree>`` per line. Exit status is 0 on success
and passing checks, 1 on failed checks, 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import bseries, verify
from .algebra import Combination, as_combination, diamond, lie_bracket, parse_combination, xtilde
from .poly import parse_polynomial
from .trees import (
    DEFAULT_CAP,
    DEFAULT_COLORED_CAP,
    CapExceededError,
    FreeTree,
    RootedTree,
    canonical_representative,
    enumerate_free,
    enumerate_rooted,
    format_tree,
    free_symmetry_factor,
    is_superfluous,
    murua_compare,
    parse_tree,
    project,
    superfluous_witness,
    symmetry_factor,
)

log = logging.getLogger("hamtrees")

UNSAFE_CAP = 10**6


class UsageError(Exception):
    pass


def _read_text(arg: str) -> str:
    if arg.startswith("@"):
        try:
            return Path(arg[1:]).read_text()
        except OSError as exc:
            raise UsageError(f"cannot read {arg[1:]}: {exc.strerror}") from None
    return arg


def _operand(arg: str) -> RootedTree | FreeTree | Combination:
    text = _read_text(arg)
    stripped = "\n".join(ln for ln in text.splitlines() if not ln.strip().startswith("#")).strip()
    try:
        return parse_tree(stripped)
    except ValueError as first:
        if not arg.startswith("@"):
            raise UsageError(str(first)) from None
    try:
        return parse_combination(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _free_operand(arg: str) -> Combination:
    x = _operand(arg)
    if isinstance(x, RootedTree):
        x = project(x)
    x = as_combination(x)
    if x and x.kind is not FreeTree:
        raise UsageError(f"{arg}: expected free trees")
    return x


def _rooted_operand(arg: str) -> Combination:
    x = as_combination(_operand(arg))
    if x and x.kind is not RootedTree:
        raise UsageError(f"{arg}: expected rooted trees")
    return x


def _cap(args, colors: int) -> int:
    default = DEFAULT_CAP if colors == 1 else DEFAULT_COLORED_CAP
    if getattr(args, "unsafe_n", False):
        if args.n > default:
            log.warning("n=%d exceeds the default cap %d; running anyway", args.n, default)
        return UNSAFE_CAP
    return default


def _print_combination(x: Combination) -> None:
    sys.stdout.write(x.format() if x else "0\n")


# ---------------------------------------------------------------------------
# subcommands


def cmd_enumerate(args) -> int:
    cap = _cap(args, args.colors)
    if args.free:
        trees = enumerate_free(args.n, args.colors, cap)
        if args.superfluous_only:
            trees = [t for t in trees if is_superfluous(t)]
        lines = [format_tree(t.rep) for t in trees]
    else:
        if args.superfluous_only:
            trees = [t for t in enumerate_rooted(args.n, args.colors, cap) if is_superfluous(project(t))]
        else:
            trees = enumerate_rooted(args.n, args.colors, cap)
        lines = [format_tree(t) for t in trees]
    if args.count:
        print(len(lines))
    else:
        for line in lines:
            print(line)
    return 0


def cmd_order_cmp(args) -> int:
    s, t = _operand(args.s), _operand(args.t)
    if not (isinstance(s, RootedTree) and isinstance(t, RootedTree)):
        raise UsageError("order-cmp takes two rooted trees")
    print({-1: "LT", 0: "EQ", 1: "GT"}[murua_compare(s, t)])
    return 0


def cmd_canonical_rep(args) -> int:
    tau = _operand(args.tree)
    if isinstance(tau, RootedTree):
        tau = project(tau)
    if not isinstance(tau, FreeTree):
        raise UsageError("canonical-rep takes a single tree")
    rep, vertex = canonical_representative(tau)
    print(f"{format_tree(rep)} {vertex}")
    return 0


def cmd_superfluous(args) -> int:
    tau = _operand(args.tree)
    if isinstance(tau, RootedTree):
        tau = project(tau)
    if not isinstance(tau, FreeTree):
        raise UsageError("superfluous takes a single tree")
    s = superfluous_witness(tau)
    print(f"true {format_tree(s)}" if s is not None else "false")
    return 0


def cmd_sym(args) -> int:
    t = _operand(args.tree)
    if isinstance(t, RootedTree):
        print(symmetry_factor(t))
    elif isinstance(t, FreeTree):
        print(free_symmetry_factor(t))
    else:
        raise UsageError("sym takes a single tree")
    return 0


def cmd_xtilde(args) -> int:
    _print_combination(xtilde(_free_operand(args.tree)))
    return 0


def cmd_diamond(args) -> int:
    _print_combination(diamond(_free_operand(args.left), _free_operand(args.right)))
    return 0


def cmd_bracket(args) -> int:
    _print_combination(lie_bracket(_rooted_operand(args.left), _rooted_operand(args.right)))
    return 0


def cmd_verify(args) -> int:
    name = args.result
    colors = args.colors
    cap = _cap(args, colors)
    if name == "prop5":
        hams = None
        if args.hamiltonian:
            text = Path(args.hamiltonian).read_text()
            blocks = [b for b in text.split("\n\n") if b.split("#", 1)[0].strip()]
            nv = args.dim or max(parse_polynomial(b).nvars for b in blocks)
            hams = [parse_polynomial(b, nv + nv % 2) for b in blocks]
        res = verify.prop5(args.n, hams, require_zero=args.require_zero)
    elif name in ("lemma1", "prop2"):
        res = verify.DRIVERS[name](args.n, colors, cap=cap)
    else:
        res = verify.DRIVERS[name](args.n, colors, workers=args.workers, cap=cap)
    sys.stdout.write(res.format())
    return 0 if res.passed else 1


def _load_coefficients(path: str) -> bseries.CoefficientMap:
    try:
        return bseries.parse_coefficients(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def cmd_check(args) -> int:
    alpha = _load_coefficients(args.file)
    check = {
        "hamiltonian": bseries.check_hamiltonian_condition,
        "canonical": bseries.check_canonical_condition,
        "signs": bseries.check_sign_consistency,
    }[args.condition]
    report = check(alpha, args.n)
    sys.stdout.write(report.format())
    return 0 if report.passed else 1


def cmd_compress(args) -> int:
    alpha = _load_coefficients(args.file)
    try:
        beta = bseries.compress(alpha, args.n)
    except bseries.SignInconsistencyError as exc:
        sys.stdout.write(str(exc) + "\n")
        return 1
    sys.stdout.write(beta.format())
    return 0


def cmd_weights(args) -> int:
    if args.tableau:
        tab = bseries.parse_tableau(Path(args.tableau).read_text())
    else:
        tab = bseries.TABLEAUX[args.method]
    sys.stdout.write(bseries.rk_coefficient_map(tab, args.n).format())
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hamtrees", description="Rooted trees, free trees and hamiltonian B-series.")
    sub = p.add_subparsers(dest="command", required=True)

    def sized(sp, default=None):
        sp.add_argument("-n", type=int, required=default is None, default=default, help="size bound")
        sp.add_argument("--colors", type=int, default=1)
        sp.add_argument("--unsafe-n", action="store_true", help="allow n above the default caps")

    sp = sub.add_parser("enumerate", help="list rooted or free trees in Murua order")
    kind = sp.add_mutually_exclusive_group()
    kind.add_argument("--rooted", action="store_true", default=True)
    kind.add_argument("--free", action="store_true")
    sized(sp)
    sp.add_argument("--count", action="store_true")
    sp.add_argument("--superfluous-only", action="store_true")
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("order-cmp", help="compare two rooted trees")
    sp.add_argument("s")
    sp.add_argument("t")
    sp.set_defaults(func=cmd_order_cmp)

    for name, func, helptext in [
        ("canonical-rep", cmd_canonical_rep, "canonical representative and its root vertex"),
        ("superfluous", cmd_superfluous, "superfluous test with witness"),
        ("sym", cmd_sym, "automorphism group order"),
        ("xtilde", cmd_xtilde, "signed sum of rootings of a free tree or combination"),
    ]:
        sp = sub.add_parser(name, help=helptext)
        sp.add_argument("tree")
        sp.set_defaults(func=func)

    for name, func, helptext in [
        ("diamond", cmd_diamond, "diamond product of free trees"),
        ("bracket", cmd_bracket, "Lie bracket of rooted trees"),
    ]:
        sp = sub.add_parser(name, help=helptext)
        sp.add_argument("left")
        sp.add_argument("right")
        sp.set_defaults(func=func)

    sp = sub.add_parser("verify", help="exhaustively verify an identity")
    sp.add_argument("result", choices=sorted(verify.DRIVERS))
    sized(sp)
    sp.add_argument("--hamiltonian", metavar="FILE", help="polynomial file (prop5); blank-line separated for several colours")
    sp.add_argument("--dim", type=int, help="number of variables of the hamiltonian (default: inferred, rounded up to even)")
    sp.add_argument("--require-zero", action="store_true", help="prop5: treat nonzero constant offsets as failures")
    sp.add_argument("--workers", type=int, default=1)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("check", help="audit a coefficient file")
    cond = sp.add_mutually_exclusive_group(required=True)
    for c in ("hamiltonian", "canonical", "signs"):
        cond.add_argument(f"--{c}", dest="condition", action="store_const", const=c)
    sp.add_argument("file")
    sp.add_argument("-n", type=int, required=True)
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("compress", help="regroup a sign-consistent coefficient file by free trees")
    sp.add_argument("file")
    sp.add_argument("-n", type=int, required=True)
    sp.set_defaults(func=cmd_compress)

    sp = sub.add_parser("weights", help="Runge-Kutta elementary weights as a coefficient file")
    src = sp.add_mutually_exclusive_group()
    src.add_argument("--method", choices=sorted(bseries.TABLEAUX), default="midpoint")
    src.add_argument("--tableau", metavar="FILE", help="rows of A then the row b")
    sp.add_argument("-n", type=int, required=True)
    sp.set_defaults(func=cmd_weights)
    return p


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(format="%(name)s: %(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, CapExceededError, bseries.UndefinedCoefficientError, ValueError, TypeError) as exc:
        print(f"hamtrees: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
