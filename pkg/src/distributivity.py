"""
Distributivity of the product sigma-algebra over intersection.

For A on X and F, G on U this module compares

    lhs = (A ⊗ F) ∩ (A ⊗ G)        and        rhs = A ⊗ (F ∩ G)

on X×U. rhs ⊆ lhs always holds; on finite sets the two coincide, so the
exhaustive verifier and the counterexample search are expected to come up
empty. They still report a concrete witness set when something disagrees,
which is how an injected fault in the product-space meet is caught.

Verification fans out over a multiprocessing pool. The triple space of each
(|X|, |U|) stratum is sharded by the enumeration rank of A; shard results
are merged in rank order, so every jobs value gives the same summary.
"""

import logging
import time
from dataclasses import dataclass, field
from functools import lru_cache
from multiprocessing import Pool
from typing import Any, Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from .config import capacity_limit, get_settings
from .core import SigmaAlgebra, SubsetMask, check_same_ground, contains
from .errors import CapacityExceeded, EmptyGroundSet, SigmaError
from .lattice import bell_number, enumerate_sigma_algebras, is_separated, is_sub, join, meet
from .product import diagonal, is_rectangle, product_sigma

logger = logging.getLogger(__name__)

ProductMeet = Callable[[SigmaAlgebra, SigmaAlgebra], SigmaAlgebra]


# ----------------------------------------------------------------------
# The two sides
# ----------------------------------------------------------------------


def lhs_sigma(
    A: SigmaAlgebra,
    F: SigmaAlgebra,
    G: SigmaAlgebra,
    *,
    product_meet: ProductMeet = meet,
) -> SigmaAlgebra:
    """(A ⊗ F) ∩ (A ⊗ G); product_meet intersects on X×U."""
    check_same_ground(F, G)
    return product_meet(product_sigma(A, F), product_sigma(A, G))


def rhs_sigma(A: SigmaAlgebra, F: SigmaAlgebra, G: SigmaAlgebra) -> SigmaAlgebra:
    """A ⊗ (F ∩ G)."""
    return product_sigma(A, meet(F, G))


# ----------------------------------------------------------------------
# Single-triple check
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class DistributivityReport:
    """
    Outcome of comparing both sides for one triple.

    equal, same_atoms and lhs_atoms_are_rectangles form the atom chain;
    witness is a member of lhs outside rhs whenever the sides differ
    (or, if even rhs ⊆ lhs fails, an rhs atom outside lhs).
    """

    lhs: SigmaAlgebra
    rhs: SigmaAlgebra
    u_size: int
    equal: bool
    same_atoms: bool
    lhs_atoms_are_rectangles: bool
    inclusion_holds: bool
    witness: Optional[SubsetMask] = None

    @property
    def x_size(self) -> int:
        return self.lhs.size // self.u_size

    def to_dict(self) -> Dict[str, Any]:
        return {
            "equal": self.equal,
            "same_atoms": self.same_atoms,
            "lhs_atoms_are_rectangles": self.lhs_atoms_are_rectangles,
            "inclusion_holds": self.inclusion_holds,
            "witness": self.witness.indices() if self.witness is not None else None,
            "lhs_atoms": self.lhs.atom_lists(),
            "rhs_atoms": self.rhs.atom_lists(),
        }


def _witness(lhs: SigmaAlgebra, rhs: SigmaAlgebra) -> Optional[SubsetMask]:
    for atom in lhs.block_masks:
        if not contains(rhs, atom):
            return atom
    for atom in rhs.block_masks:
        if not contains(lhs, atom):
            return atom
    return None


def check(
    A: SigmaAlgebra,
    F: SigmaAlgebra,
    G: SigmaAlgebra,
    *,
    product_meet: ProductMeet = meet,
) -> DistributivityReport:
    """Compare both sides of the distributivity equation for (A, F, G)."""
    lhs = lhs_sigma(A, F, G, product_meet=product_meet)
    rhs = rhs_sigma(A, F, G)
    equal = lhs == rhs
    return DistributivityReport(
        lhs=lhs,
        rhs=rhs,
        u_size=F.size,
        equal=equal,
        same_atoms=set(lhs.block_bits) == set(rhs.block_bits),
        lhs_atoms_are_rectangles=all(is_rectangle(atom, F.size) for atom in lhs.block_masks),
        inclusion_holds=is_sub(rhs, lhs),
        witness=None if equal else _witness(lhs, rhs),
    )


def check_join(A: SigmaAlgebra, F: SigmaAlgebra, G: SigmaAlgebra) -> bool:
    """(A ⊗ F) ∨ (A ⊗ G) == A ⊗ (F ∨ G)."""
    check_same_ground(F, G)
    return join(product_sigma(A, F), product_sigma(A, G)) == product_sigma(A, join(F, G))


def failure_reasons(report: DistributivityReport, join_ok: bool) -> List[str]:
    """Everything that went wrong for one triple; empty when all is well."""
    reasons = []
    if not report.equal:
        reasons.append("sides differ")
    if not report.inclusion_holds:
        reasons.append("rhs not contained in lhs")
    if not report.equal == report.same_atoms == report.lhs_atoms_are_rectangles:
        reasons.append("atom chain flags disagree")
    if not join_ok:
        reasons.append("join identity fails")
    return reasons


# ----------------------------------------------------------------------
# Exhaustive verification
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class TripleFailure:
    """First failing triple of a run, identified by enumeration ranks."""

    x_size: int
    u_size: int
    ranks: Tuple[int, int, int]
    A: SigmaAlgebra
    F: SigmaAlgebra
    G: SigmaAlgebra
    reasons: Tuple[str, ...]
    witness: Optional[SubsetMask]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "x_size": self.x_size,
            "u_size": self.u_size,
            "ranks": list(self.ranks),
            "A": self.A.atom_lists(),
            "F": self.F.atom_lists(),
            "G": self.G.atom_lists(),
            "reasons": list(self.reasons),
            "witness": self.witness.indices() if self.witness is not None else None,
        }


@dataclass(frozen=True)
class StratumResult:
    x_size: int
    u_size: int
    triples: int
    failures: int


@dataclass(frozen=True)
class VerificationSummary:
    """Aggregate of an exhaustive run over all strata up to (max_x, max_u)."""

    max_x: int
    max_u: int
    triples_checked: int
    failures: int
    strata: Tuple[StratumResult, ...] = ()
    first_failure: Optional[TripleFailure] = None
    elapsed: float = field(default=0.0, compare=False)

    @property
    def sizes(self) -> Tuple[int, int]:
        return self.max_x, self.max_u

    def to_dict(self, *, include_timing: bool = False) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "max_x": self.max_x,
            "max_u": self.max_u,
            "triples_checked": self.triples_checked,
            "expected_triples": expected_triple_count(self.max_x, self.max_u),
            "failures": self.failures,
            "strata": [
                {"x_size": s.x_size, "u_size": s.u_size, "triples": s.triples, "failures": s.failures}
                for s in self.strata
            ],
            "first_failure": self.first_failure.to_dict() if self.first_failure else None,
        }
        if include_timing:
            data["elapsed_seconds"] = round(self.elapsed, 3)
        return data


@dataclass(frozen=True)
class Counterexample:
    """A triple violating the distributivity equation, with its witness set."""

    A: SigmaAlgebra
    F: SigmaAlgebra
    G: SigmaAlgebra
    ranks: Tuple[int, int, int]
    witness: Optional[SubsetMask]


def expected_triple_count(max_x: int, max_u: int) -> int:
    """Σ B(nX) · B(nU)² over 1 ≤ nX ≤ max_x, 1 ≤ nU ≤ max_u."""
    left = sum(bell_number(n) for n in range(1, max_x + 1))
    right = sum(bell_number(n) ** 2 for n in range(1, max_u + 1))
    return left * right


@lru_cache(maxsize=None)
def _algebras(n: int) -> Tuple[SigmaAlgebra, ...]:
    return tuple(enumerate_sigma_algebras(n))


# A shard is one A (by rank) in one stratum; workers get plain tuples so the
# pool can pickle them.
ShardTask = Tuple[int, int, int, ProductMeet]


def _verify_shard(task: ShardTask) -> Tuple[int, int, Optional[TripleFailure]]:
    x_size, u_size, a_rank, product_meet = task
    A = _algebras(x_size)[a_rank]
    right = _algebras(u_size)
    triples = failures = 0
    first: Optional[TripleFailure] = None
    for f_rank, F in enumerate(right):
        for g_rank, G in enumerate(right):
            triples += 1
            report = check(A, F, G, product_meet=product_meet)
            reasons = failure_reasons(report, check_join(A, F, G))
            if reasons:
                failures += 1
                if first is None:
                    first = TripleFailure(
                        x_size, u_size, (a_rank, f_rank, g_rank), A, F, G,
                        tuple(reasons), report.witness,
                    )
    return triples, failures, first


def _search_shard(task: ShardTask) -> Optional[Counterexample]:
    x_size, u_size, a_rank, product_meet = task
    A = _algebras(x_size)[a_rank]
    right = _algebras(u_size)
    for f_rank, F in enumerate(right):
        for g_rank, G in enumerate(right):
            report = check(A, F, G, product_meet=product_meet)
            if not report.equal:
                return Counterexample(A, F, G, (a_rank, f_rank, g_rank), report.witness)
    return None


def _check_sizes(x_size: int, u_size: int) -> None:
    if x_size < 1 or u_size < 1:
        raise EmptyGroundSet(f"sizes must be at least 1, got {x_size} and {u_size}")
    limit = capacity_limit()
    if x_size * u_size > limit:
        raise CapacityExceeded(x_size * u_size, limit)


class DistributivityVerifier:
    """
    Exhaustive verifier and counterexample search over all triples of
    sigma-algebras up to given sizes.
    """

    def __init__(self, *, jobs: Optional[int] = None, product_meet: ProductMeet = meet) -> None:
        """
        Params
        ------
        jobs : int or None
            Worker processes; None takes SIGMA_JOBS from the settings.
        product_meet : callable
            Intersection used on X×U for the left-hand side. Must be a
            module-level function when jobs > 1.
        """
        self.jobs = jobs if jobs is not None else get_settings().jobs
        if self.jobs < 1:
            raise SigmaError(f"jobs must be at least 1, got {self.jobs}")
        self.product_meet = product_meet

    def _run(self, worker: Callable[[ShardTask], Any], tasks: Sequence[ShardTask]) -> Iterator[Any]:
        """Shard results in task order, produced lazily so callers may stop early."""
        if self.jobs == 1 or len(tasks) <= 1:
            for task in tasks:
                yield worker(task)
            return
        with Pool(processes=min(self.jobs, len(tasks))) as pool:
            yield from pool.imap(worker, tasks)

    def _tasks(self, x_size: int, u_size: int) -> List[ShardTask]:
        return [
            (x_size, u_size, a_rank, self.product_meet)
            for a_rank in range(bell_number(x_size))
        ]

    def verify_all(self, max_x: int, max_u: int) -> VerificationSummary:
        """Check every triple on every stratum 1..max_x × 1..max_u."""
        _check_sizes(max_x, max_u)
        started = time.perf_counter()
        strata = []
        total = failed = 0
        first: Optional[TripleFailure] = None
        for x_size in range(1, max_x + 1):
            for u_size in range(1, max_u + 1):
                tasks = self._tasks(x_size, u_size)
                logger.debug("stratum %dx%d: %d shards", x_size, u_size, len(tasks))
                triples = failures = 0
                for shard_triples, shard_failures, shard_first in self._run(_verify_shard, tasks):
                    triples += shard_triples
                    failures += shard_failures
                    if first is None and shard_first is not None:
                        first = shard_first
                strata.append(StratumResult(x_size, u_size, triples, failures))
                total += triples
                failed += failures
        elapsed = time.perf_counter() - started
        logger.info(
            "verified %d triples up to %dx%d in %.2fs with %d job(s): %d failure(s)",
            total, max_x, max_u, elapsed, self.jobs, failed,
        )
        return VerificationSummary(
            max_x=max_x,
            max_u=max_u,
            triples_checked=total,
            failures=failed,
            strata=tuple(strata),
            first_failure=first,
            elapsed=elapsed,
        )

    def search_counterexample(self, x_size: int, u_size: int) -> Optional[Counterexample]:
        """First triple (in enumeration order) where the two sides differ."""
        _check_sizes(x_size, u_size)
        started = time.perf_counter()
        results = self._run(_search_shard, self._tasks(x_size, u_size))
        found = next((result for result in results if result is not None), None)
        results.close()
        logger.info(
            "searched %dx%d in %.2fs with %d job(s): %s",
            x_size, u_size, time.perf_counter() - started, self.jobs,
            "counterexample found" if found else "none",
        )
        return found


def verify_all(
    max_x: int, max_u: int, jobs: int = 1, *, product_meet: ProductMeet = meet
) -> VerificationSummary:
    return DistributivityVerifier(jobs=jobs, product_meet=product_meet).verify_all(max_x, max_u)


def search_counterexample(
    x_size: int, u_size: int, jobs: int = 1, *, product_meet: ProductMeet = meet
) -> Optional[Counterexample]:
    return DistributivityVerifier(jobs=jobs, product_meet=product_meet).search_counterexample(
        x_size, u_size
    )


# ----------------------------------------------------------------------
# Diagonal obstruction
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class DiagonalPlacement:
    """Where Δ lands for A = B ∨ D, F = B, G = D on one n-point set."""

    in_lhs: bool
    in_rhs: bool
    b_separated: bool
    d_separated: bool
    meet_separated: bool

    @property
    def obstruction(self) -> bool:
        """Δ separates the two sides (never on finite sets)."""
        return self.in_lhs and not self.in_rhs


def diagonal_obstruction(B: SigmaAlgebra, D: SigmaAlgebra) -> DiagonalPlacement:
    """
    Locate the diagonal for the construction that yields counterexamples on
    uncountable sets: Δ lies in (A ⊗ B) ∩ (A ⊗ D) when B and D separate
    points, and outside A ⊗ (B ∩ D) when B ∩ D does not.
    """
    n = check_same_ground(B, D)
    A = join(D, B)
    delta = diagonal(n)
    H = meet(B, D)
    return DiagonalPlacement(
        in_lhs=contains(lhs_sigma(A, B, D), delta),
        in_rhs=contains(rhs_sigma(A, B, D), delta),
        b_separated=is_separated(B),
        d_separated=is_separated(D),
        meet_separated=is_separated(H),
    )


__all__ = [
    "ProductMeet",
    "lhs_sigma",
    "rhs_sigma",
    "DistributivityReport",
    "check",
    "check_join",
    "failure_reasons",
    "TripleFailure",
    "StratumResult",
    "VerificationSummary",
    "Counterexample",
    "expected_triple_count",
    "DistributivityVerifier",
    "verify_all",
    "search_counterexample",
    "DiagonalPlacement",
    "diagonal_obstruction",
]
