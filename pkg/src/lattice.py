"""
Lattice operations on finite sigma-algebras.

Generation from a family of sets, intersection (meet), join, the
refinement order, atoms, separators and exhaustive enumeration of every
sigma-algebra on an n-point set.

Meet is computed with a disjoint-set forest over the atoms of the first
operand: two of its atoms end up in the same class whenever some atom of
the second operand touches both. This is the finest common coarsening of
the two atom partitions, i.e. the atoms of the intersection.
"""

import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, Iterator, List, Set, Tuple

from .config import capacity_limit
from .core import (
    GroundSet,
    Partition,
    SigmaAlgebra,
    SubsetMask,
    canonicalize,
    check_same_ground,
)
from .errors import CapacityExceeded, EmptyGroundSet, GroundSetMismatch, PointOutOfRange

logger = logging.getLogger(__name__)

# Largest ground set the fixpoint closure oracle accepts (2**10 members).
CLOSURE_LIMIT = 10


# ----------------------------------------------------------------------
# Set families
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class SetFamily:
    """
    An ordered family of subsets of one ground set.

    Used both as a generating family and as a candidate separator.
    Duplicates and empty members are allowed and change nothing.
    """

    size: int
    members: Tuple[SubsetMask, ...] = ()

    def __post_init__(self) -> None:
        members = tuple(self.members)
        object.__setattr__(self, "members", members)
        GroundSet(self.size)
        for m in members:
            if m.size != self.size:
                raise GroundSetMismatch(self.size, m.size, "family member")

    @classmethod
    def from_indices(cls, size: int, sets: Iterable[Iterable[int]]) -> "SetFamily":
        return cls(size, tuple(SubsetMask.from_indices(size, s) for s in sets))

    @classmethod
    def singletons(cls, size: int) -> "SetFamily":
        return cls(size, tuple(SubsetMask(size, 1 << x) for x in range(size)))

    @property
    def bits(self) -> Tuple[int, ...]:
        return tuple(m.bits for m in self.members)

    def __iter__(self) -> Iterator[SubsetMask]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)


class DisjointSet:
    """Union-find over 0..n-1 with path halving and union by size."""

    def __init__(self, n: int) -> None:
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, x: int, y: int) -> bool:
        """Merge the classes of x and y; False if they were already one."""
        x, y = self.find(x), self.find(y)
        if x == y:
            return False
        if self.size[x] < self.size[y]:
            x, y = y, x
        self.parent[y] = x
        self.size[x] += self.size[y]
        return True


# ----------------------------------------------------------------------
# Generation and lattice operations
# ----------------------------------------------------------------------


def generate(family: SetFamily) -> SigmaAlgebra:
    """
    Smallest sigma-algebra containing every member of the family.

    Two points share an atom iff every member contains both or neither,
    so the atom of x is determined by the membership signature of x.
    """
    member_bits = family.bits
    signatures = []
    for x in range(family.size):
        sig = 0
        for j, bits in enumerate(member_bits):
            if bits >> x & 1:
                sig |= 1 << j
        signatures.append(sig)
    return SigmaAlgebra(canonicalize(signatures))


def meet(C: SigmaAlgebra, D: SigmaAlgebra) -> SigmaAlgebra:
    """Intersection C ∩ D: the largest sigma-algebra contained in both."""
    check_same_ground(C, D)
    forest = DisjointSet(C.block_count)
    first_c_for_d: Dict[int, int] = {}
    for c, d in zip(C.labels, D.labels):
        seen = first_c_for_d.get(d)
        if seen is None:
            first_c_for_d[d] = c
        else:
            forest.union(seen, c)
    return SigmaAlgebra(canonicalize(forest.find(c) for c in C.labels))


def join(C: SigmaAlgebra, D: SigmaAlgebra) -> SigmaAlgebra:
    """C ∨ D: atoms are the nonempty intersections of a C-atom with a D-atom."""
    check_same_ground(C, D)
    return SigmaAlgebra(canonicalize(zip(C.labels, D.labels)))


def is_sub(C: SigmaAlgebra, D: SigmaAlgebra) -> bool:
    """True iff C ⊆ D, i.e. every D-atom lies inside a single C-atom."""
    check_same_ground(C, D)
    owner: Dict[int, int] = {}
    for c, d in zip(C.labels, D.labels):
        if owner.setdefault(d, c) != c:
            return False
    return True


def atoms_of(C: SigmaAlgebra) -> List[SubsetMask]:
    """Minimal nonempty members, ordered by minimum element."""
    return list(C.block_masks)


def is_atomic(C: SigmaAlgebra) -> bool:
    """The atoms cover the ground set."""
    covered = 0
    for b in C.block_bits:
        covered |= b
    return covered == C.ground.full_bits


def is_separated(C: SigmaAlgebra) -> bool:
    """On a finite set, C separates points iff every atom is a singleton."""
    return C.is_discrete()


# ----------------------------------------------------------------------
# Separators
# ----------------------------------------------------------------------


def singleton_from_separator(family: SetFamily, x: int) -> SubsetMask:
    """
    Intersect the members containing x with the complements of the members
    missing x. The intersection over no sets is the whole ground set.
    """
    if not 0 <= x < family.size:
        raise PointOutOfRange(x, family.size)
    full = (1 << family.size) - 1
    result = full
    for bits in family.bits:
        result &= bits if bits >> x & 1 else full ^ bits
    return SubsetMask(family.size, result)


def generators_separate(family: SetFamily) -> bool:
    """True iff every pair of distinct points is split by some member."""
    seen: Set[Tuple[int, ...]] = set()
    member_bits = family.bits
    for x in range(family.size):
        signature = tuple(bits >> x & 1 for bits in member_bits)
        if signature in seen:
            return False
        seen.add(signature)
    return True


# ----------------------------------------------------------------------
# Enumeration
# ----------------------------------------------------------------------


def restricted_growth_strings(n: int) -> Iterator[Tuple[int, ...]]:
    """All restricted-growth strings of length n, in lexicographic order."""
    labels = [0] * n
    # prefix_max[i] is max(labels[:i]) for i >= 1
    prefix_max = [0] * n
    while True:
        yield tuple(labels)
        i = n - 1
        while i > 0 and labels[i] > prefix_max[i]:
            i -= 1
        if i <= 0:
            return
        labels[i] += 1
        top = max(prefix_max[i], labels[i])
        for j in range(i + 1, n):
            labels[j] = 0
            prefix_max[j] = top


def enumerate_sigma_algebras(n: int) -> Iterator[SigmaAlgebra]:
    """
    Every sigma-algebra on an n-point set exactly once, in lexicographic
    restricted-growth order. There are bell_number(n) of them.
    """
    if n < 1:
        raise EmptyGroundSet(f"cannot enumerate sigma-algebras on {n} points")
    limit = capacity_limit()
    if n > limit:
        raise CapacityExceeded(n, limit)
    logger.debug("enumerating sigma-algebras on %d points", n)
    for labels in restricted_growth_strings(n):
        yield SigmaAlgebra(Partition(labels))


def bell_number(n: int) -> int:
    """Number of partitions of an n-element set (Bell triangle)."""
    if n < 0:
        raise ValueError(f"bell_number needs n >= 0, got {n}")
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for value in row:
            nxt.append(nxt[-1] + value)
        row = nxt
    return row[0]


def sub_sigma_algebras(C: SigmaAlgebra) -> Iterator[SigmaAlgebra]:
    """
    Every sigma-algebra contained in C, each exactly once.

    These are the coarsenings of C's atom partition, one per set partition
    of the atom indices.
    """
    for grouping in restricted_growth_strings(C.block_count):
        yield SigmaAlgebra(canonicalize(grouping[label] for label in C.labels))


# ----------------------------------------------------------------------
# Members and the closure oracle
# ----------------------------------------------------------------------


def members(C: SigmaAlgebra) -> Iterator[SubsetMask]:
    """All 2 ** block_count members, as unions of atoms."""
    atom_bits = C.block_bits
    unions = [0]
    for b in atom_bits:
        unions.extend(u | b for u in list(unions))
    for bits in unions:
        yield SubsetMask(C.size, bits)


def closure_members(family: SetFamily) -> FrozenSet[int]:
    """
    Close {∅, X} ∪ family under complement and pairwise union by fixpoint
    iteration and return the member bit patterns.

    Only for small ground sets.
    """
    if family.size > CLOSURE_LIMIT:
        raise CapacityExceeded(family.size, CLOSURE_LIMIT)
    full = (1 << family.size) - 1
    found: Set[int] = {0, full}
    pending = list(found | set(family.bits))
    found.update(pending)
    while pending:
        current = pending.pop()
        candidates = [full ^ current] + [current | other for other in found]
        for candidate in candidates:
            if candidate not in found:
                found.add(candidate)
                pending.append(candidate)
    return frozenset(found)


# ----------------------------------------------------------------------
# Blackwell properties (finite instance)
# ----------------------------------------------------------------------


def is_blackwell(C: SigmaAlgebra) -> bool:
    """C is separated and no proper sub-sigma-algebra of C is separated."""
    if not is_separated(C):
        return False
    return all(S == C or not is_separated(S) for S in sub_sigma_algebras(C))


def minimal_members(C: SigmaAlgebra) -> List[SubsetMask]:
    """
    Nonempty members with no nonempty proper subset in C, found by scanning
    the member list rather than reading the atom partition.
    """
    nonempty = sorted((m.bits for m in members(C) if not m.is_empty()), key=lambda b: b.bit_count())
    minimal: List[int] = []
    for bits in nonempty:
        if not any(smaller & bits == smaller for smaller in minimal):
            minimal.append(bits)
    return sorted((SubsetMask(C.size, bits) for bits in minimal), key=lambda m: m.indices())


def is_strongly_blackwell(C: SigmaAlgebra) -> bool:
    """
    C is separated and any two sub-sigma-algebras with the same atoms coincide.

    Atoms are recomputed from each member family with minimal_members and the
    member families themselves are compared, so the check does not lean on
    the canonical label form.
    """
    if C.size > CLOSURE_LIMIT:
        raise CapacityExceeded(C.size, CLOSURE_LIMIT)
    if not is_separated(C):
        return False
    by_atoms: Dict[FrozenSet[int], FrozenSet[int]] = {}
    for S in sub_sigma_algebras(C):
        key = frozenset(m.bits for m in minimal_members(S))
        family = frozenset(m.bits for m in members(S))
        if by_atoms.setdefault(key, family) != family:
            return False
    return True


__all__ = [
    "SetFamily",
    "DisjointSet",
    "generate",
    "meet",
    "join",
    "is_sub",
    "atoms_of",
    "is_atomic",
    "is_separated",
    "singleton_from_separator",
    "generators_separate",
    "restricted_growth_strings",
    "enumerate_sigma_algebras",
    "bell_number",
    "sub_sigma_algebras",
    "members",
    "closure_members",
    "is_blackwell",
    "minimal_members",
    "is_strongly_blackwell",
    "CLOSURE_LIMIT",
]
