"""
Command-line front end.

    check <file> [--json]
    verify --max-x N --max-u M [--jobs K] [--json]
    decompose <file> --set i1,i2,... [--json]
    search --x N --u M [--jobs K]
    atoms <file> [--json]

Exit codes: 0 success / sides equal, 1 negative finding, 2 input or usage
error. Reports go to stdout, diagnostics to stderr.
"""

import argparse
import logging
import sys
from typing import Iterable, List, Optional, Sequence

from .config import get_settings
from .core import SubsetMask
from .distributivity import (
    DistributivityReport,
    DistributivityVerifier,
    check,
    expected_triple_count,
)
from .errors import NotInProduct, SigmaError
from .lattice import meet
from .problem_file import (
    AtomsReport,
    CheckReport,
    DecompositionPair,
    DecompositionReport,
    ProblemFile,
    StratumModel,
    VerificationReport,
    dump_problem,
    load_problem,
    to_json,
)
from .product import ProductSpace, intersection_decomposition, product_sigma, union_of_rectangles

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2

RULE = "=" * 70
THIN_RULE = "-" * 70

logger = logging.getLogger(__name__)


# ----------------------------------------------------------------------
# Rendering helpers
# ----------------------------------------------------------------------


def _pairs(indices: Iterable[int], u_size: int) -> List[tuple]:
    return [divmod(i, u_size) for i in indices]


def format_product_set(indices: Sequence[int], u_size: int) -> str:
    """Flat indices followed by their (x,u) pairs."""
    pairs = " ".join(f"({x},{u})" for x, u in _pairs(indices, u_size))
    return f"{list(indices)}  {pairs or '∅'}"


def _print_atoms(title: str, atoms: List[List[int]], u_size: Optional[int] = None) -> None:
    print(f"{title} ({len(atoms)}):")
    for atom in atoms:
        if u_size is None:
            print(f"  {atom}")
        else:
            print(f"  {format_product_set(atom, u_size)}")


def _flag(value: bool) -> str:
    return "true" if value else "false"


# ----------------------------------------------------------------------
# Commands
# ----------------------------------------------------------------------


def _check_report_model(report: DistributivityReport) -> CheckReport:
    data = report.to_dict()
    witness = data["witness"]
    return CheckReport(
        **data,
        witness_pairs=_pairs(witness, report.u_size) if witness is not None else None,
    )


def cmd_check(path: str, json_flag: bool = False) -> int:
    """Compare (A⊗F)∩(A⊗G) with A⊗(F∩G) for the problem in `path`."""
    problem = load_problem(path)
    A, F, G = problem.algebras()
    report = check(A, F, G)

    if json_flag:
        print(to_json(_check_report_model(report)))
    else:
        print(RULE)
        print(f"DISTRIBUTIVITY CHECK  |X| = {problem.x_size}, |U| = {problem.u_size}")
        print(RULE)
        print(f"  equal: {_flag(report.equal)}")
        print(f"  same_atoms: {_flag(report.same_atoms)}")
        print(f"  lhs_atoms_are_rectangles: {_flag(report.lhs_atoms_are_rectangles)}")
        print(f"  inclusion_holds: {_flag(report.inclusion_holds)}")
        if report.witness is None:
            print("  witness: none")
        else:
            print(f"  witness: {format_product_set(report.witness.indices(), report.u_size)}")
        print(THIN_RULE)
        _print_atoms("lhs atoms", report.lhs.atom_lists(), report.u_size)
        _print_atoms("rhs atoms", report.rhs.atom_lists(), report.u_size)
        print(RULE)

    return EXIT_OK if report.equal else EXIT_NEGATIVE


def cmd_verify(max_x: int, max_u: int, jobs: Optional[int] = None, json_flag: bool = False) -> int:
    """Exhaustive verification over every triple up to the given sizes."""
    verifier = DistributivityVerifier(jobs=jobs)
    summary = verifier.verify_all(max_x, max_u)

    if json_flag:
        data = summary.to_dict()
        report = VerificationReport(
            max_x=data["max_x"],
            max_u=data["max_u"],
            triples_checked=data["triples_checked"],
            expected_triples=data["expected_triples"],
            failures=data["failures"],
            strata=[StratumModel(**s) for s in data["strata"]],
            first_failure=data["first_failure"],
        )
        print(to_json(report))
    else:
        print(RULE)
        print(f"EXHAUSTIVE VERIFICATION  |X| <= {max_x}, |U| <= {max_u}")
        print(RULE)
        print(f"{'|X|':>4} {'|U|':>4} {'triples':>10} {'failures':>10}")
        print(THIN_RULE)
        for s in summary.strata:
            print(f"{s.x_size:>4} {s.u_size:>4} {s.triples:>10,} {s.failures:>10,}")
        print(THIN_RULE)
        print(f"  triples_checked: {summary.triples_checked:,}")
        print(f"  expected: {expected_triple_count(max_x, max_u):,}")
        print(f"  failures: {summary.failures:,}")
        if summary.failures == 0:
            print("✓ distributivity and join identity hold on every triple")
        else:
            failure = summary.first_failure
            print(f"✗ first failure at {failure.x_size}x{failure.u_size}, ranks {failure.ranks}")
            print(f"    reasons: {', '.join(failure.reasons)}")
            print(f"    A atoms: {failure.A.atom_lists()}")
            print(f"    F atoms: {failure.F.atom_lists()}")
            print(f"    G atoms: {failure.G.atom_lists()}")
            if failure.witness is not None:
                print(f"    witness: {format_product_set(failure.witness.indices(), failure.u_size)}")
        print(RULE)

    return EXIT_OK if summary.failures == 0 else EXIT_NEGATIVE


def parse_index_list(text: str) -> List[int]:
    """'1,2,5' -> [1, 2, 5]; the empty string is the empty set."""
    text = text.strip()
    if not text:
        return []
    try:
        return [int(part) for part in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def cmd_decompose(path: str, set_spec: Sequence[int], json_flag: bool = False) -> int:
    """Write B as ⋃ A_i × H_i over the atoms H_i of F∩G."""
    problem = load_problem(path)
    A, F, G = problem.algebras()
    space = ProductSpace(problem.x_size, problem.u_size)
    B = SubsetMask.from_indices(space.size, set_spec)
    indices = B.indices()

    try:
        pairs = intersection_decomposition(B, A, F, G)
    except NotInProduct as e:
        print(f"NotInProduct: {e}", file=sys.stderr)
        if json_flag:
            print(to_json(DecompositionReport(set=indices, in_product=False, error=str(e))))
        else:
            print(f"B = {format_product_set(indices, space.right)}")
            print("✗ B is not a member of both A⊗F and A⊗G (NotInProduct)")
        return EXIT_NEGATIVE

    reconstructed = union_of_rectangles(pairs, space.left, space.right) == B

    if json_flag:
        print(to_json(DecompositionReport(
            set=indices,
            in_product=True,
            pairs=[DecompositionPair(A_i=a.indices(), H_i=h.indices()) for a, h in pairs],
            reconstructed=reconstructed,
        )))
    else:
        print(RULE)
        print(f"DECOMPOSITION OVER THE ATOMS OF F∩G  |X| = {space.left}, |U| = {space.right}")
        print(RULE)
        print(f"B = {format_product_set(indices, space.right)}")
        print(THIN_RULE)
        print(f"{'i':>3}  {'A_i':<24} {'H_i':<24}")
        for i, (a, h) in enumerate(pairs):
            print(f"{i:>3}  {str(a.indices()):<24} {str(h.indices()):<24}")
        print(THIN_RULE)
        mark = "✓" if reconstructed else "✗"
        print(f"{mark} reconstruction: {_flag(reconstructed)}")
        print(RULE)

    return EXIT_OK if reconstructed else EXIT_NEGATIVE


def cmd_search(nx: int, nu: int, jobs: Optional[int] = None) -> int:
    """Search every triple at |X| = nx, |U| = nu for a distributivity failure."""
    verifier = DistributivityVerifier(jobs=jobs)
    found = verifier.search_counterexample(nx, nu)
    if found is None:
        print("none")
        return EXIT_OK
    print(dump_problem(ProblemFile.from_algebras(found.A, found.F, found.G)))
    witness = found.witness.indices() if found.witness is not None else []
    print(f"witness: {format_product_set(witness, nu)}")
    return EXIT_NEGATIVE


def cmd_atoms(path: str, json_flag: bool = False) -> int:
    """Atoms of A, F, G and of the derived products and meet."""
    problem = load_problem(path)
    A, F, G = problem.algebras()
    H = meet(F, G)
    report = AtomsReport(
        A=A.atom_lists(),
        F=F.atom_lists(),
        G=G.atom_lists(),
        F_meet_G=H.atom_lists(),
        A_times_F=product_sigma(A, F).atom_lists(),
        A_times_G=product_sigma(A, G).atom_lists(),
        A_times_F_meet_G=product_sigma(A, H).atom_lists(),
    )

    if json_flag:
        print(to_json(report))
    else:
        print(RULE)
        print(f"ATOMS  |X| = {problem.x_size}, |U| = {problem.u_size}")
        print(RULE)
        _print_atoms("A", report.A)
        _print_atoms("F", report.F)
        _print_atoms("G", report.G)
        _print_atoms("F∩G", report.F_meet_G)
        _print_atoms("A⊗F", report.A_times_F, problem.u_size)
        _print_atoms("A⊗G", report.A_times_G, problem.u_size)
        _print_atoms("A⊗(F∩G)", report.A_times_F_meet_G, problem.u_size)
        print(RULE)
    return EXIT_OK


# ----------------------------------------------------------------------
# Argument parsing
# ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sigma-distrib",
        description="Distributivity of product sigma-algebras over intersection on finite sets",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="check one problem file")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("verify", help="exhaustive verification up to given sizes")
    p.add_argument("--max-x", type=int, required=True)
    p.add_argument("--max-u", type=int, required=True)
    p.add_argument("--jobs", type=int, default=None,
                   help="worker processes (default: SIGMA_JOBS or 1)")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("decompose", help="decompose a product set over the atoms of F∩G")
    p.add_argument("file")
    p.add_argument("--set", dest="set_spec", type=parse_index_list, required=True,
                   help="comma-separated product indices i = x*|U| + u")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("search", help="search for a counterexample at fixed sizes")
    p.add_argument("--x", dest="nx", type=int, required=True)
    p.add_argument("--u", dest="nu", type=int, required=True)
    p.add_argument("--jobs", type=int, default=None)

    p = sub.add_parser("atoms", help="print atoms of the declared sigma-algebras")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")

    return parser


def configure_logging(verbose: bool = False) -> None:
    level = logging.INFO if verbose else get_settings().log_level
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    try:
        configure_logging(args.verbose)
        logger.debug("running %s", args.command)
        if args.command == "check":
            return cmd_check(args.file, args.json)
        if args.command == "verify":
            return cmd_verify(args.max_x, args.max_u, args.jobs, args.json)
        if args.command == "decompose":
            return cmd_decompose(args.file, args.set_spec, args.json)
        if args.command == "search":
            return cmd_search(args.nx, args.nu, args.jobs)
        if args.command == "atoms":
            return cmd_atoms(args.file, args.json)
    except SigmaError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE

    parser.print_usage(sys.stderr)
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
