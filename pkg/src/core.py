"""
Core data model: ground sets, subsets as bit vectors, partitions and
partition-given sigma-algebras.

On a finite set every sigma-algebra is given by the partition into its
atoms, so a SigmaAlgebra is stored as that partition in restricted-growth
form (labels numbered by first occurrence). Two sigma-algebras are equal
exactly when their label tuples are equal.

Subsets are Python ints used as bit vectors: bit i is set when point i
belongs to the subset.
"""

from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Hashable, Iterable, Iterator, List, Tuple

from .config import capacity_limit
from .errors import (
    CapacityExceeded,
    EmptyGroundSet,
    GroundSetMismatch,
    InvalidPartition,
    PointOutOfRange,
    SigmaError,
)


def _check_size(size: int) -> None:
    if size < 1:
        raise EmptyGroundSet(f"ground set must have at least one point, got size {size}")
    limit = capacity_limit()
    if size > limit:
        raise CapacityExceeded(size, limit)


# ----------------------------------------------------------------------
# Ground sets and subsets
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class GroundSet:
    """The points 0..size-1."""

    size: int

    def __post_init__(self) -> None:
        _check_size(self.size)

    @property
    def full_bits(self) -> int:
        return (1 << self.size) - 1

    def check_point(self, x: int) -> None:
        if not 0 <= x < self.size:
            raise PointOutOfRange(x, self.size)

    def __iter__(self) -> Iterator[int]:
        return iter(range(self.size))

    def __len__(self) -> int:
        return self.size


@dataclass(frozen=True)
class SubsetMask:
    """
    A subset of a finite ground set, stored as an int bit vector.

    Supports the usual set operators (|, &, -, ~) between masks over the
    same ground set; ~S is the complement within the ground set.
    """

    size: int
    bits: int = 0

    def __post_init__(self) -> None:
        _check_size(self.size)
        if self.bits < 0:
            raise SigmaError(f"subset bits must be non-negative, got {self.bits}")
        if self.bits >> self.size:
            raise PointOutOfRange(self.bits.bit_length() - 1, self.size)

    @classmethod
    def empty(cls, size: int) -> "SubsetMask":
        return cls(size, 0)

    @classmethod
    def full(cls, size: int) -> "SubsetMask":
        return cls(size, (1 << size) - 1)

    @classmethod
    def from_indices(cls, size: int, indices: Iterable[int]) -> "SubsetMask":
        """Build a mask from point indices; duplicates are harmless."""
        bits = 0
        for i in indices:
            if not 0 <= i < size:
                raise PointOutOfRange(i, size)
            bits |= 1 << i
        return cls(size, bits)

    @property
    def ground(self) -> GroundSet:
        return GroundSet(self.size)

    def indices(self) -> List[int]:
        """Member points in increasing order."""
        out = []
        bits = self.bits
        while bits:
            low = bits & -bits
            out.append(low.bit_length() - 1)
            bits ^= low
        return out

    def is_empty(self) -> bool:
        return self.bits == 0

    def issubset(self, other: "SubsetMask") -> bool:
        self._same_ground(other)
        return self.bits & ~other.bits == 0

    def _same_ground(self, other: "SubsetMask") -> None:
        if other.size != self.size:
            raise GroundSetMismatch(self.size, other.size, "subset")

    def __contains__(self, x: int) -> bool:
        return 0 <= x < self.size and bool(self.bits >> x & 1)

    def __iter__(self) -> Iterator[int]:
        return iter(self.indices())

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __invert__(self) -> "SubsetMask":
        return complement(self)

    def __or__(self, other: "SubsetMask") -> "SubsetMask":
        self._same_ground(other)
        return SubsetMask(self.size, self.bits | other.bits)

    def __and__(self, other: "SubsetMask") -> "SubsetMask":
        self._same_ground(other)
        return SubsetMask(self.size, self.bits & other.bits)

    def __sub__(self, other: "SubsetMask") -> "SubsetMask":
        self._same_ground(other)
        return SubsetMask(self.size, self.bits & ~other.bits)

    def __repr__(self) -> str:
        return f"SubsetMask(size={self.size}, {set(self.indices()) or '{}'})"


def complement(S: SubsetMask) -> SubsetMask:
    """Pointwise negation within the ground set."""
    return SubsetMask(S.size, ((1 << S.size) - 1) ^ S.bits)


# ----------------------------------------------------------------------
# Partitions
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class Partition:
    """
    A set partition in restricted-growth form.

    labels[i] is the block of point i; labels[0] == 0 and every label is at
    most one more than the largest label before it. Blocks are therefore
    numbered in order of their minimum element.
    """

    labels: Tuple[int, ...]
    block_count: int = field(init=False, compare=False)

    def __post_init__(self) -> None:
        labels = tuple(self.labels)
        object.__setattr__(self, "labels", labels)
        if not labels:
            raise EmptyGroundSet("a partition needs at least one point")
        _check_size(len(labels))
        top = -1
        for i, label in enumerate(labels):
            if label < 0 or label > top + 1:
                raise InvalidPartition(
                    f"labels {list(labels)} are not a restricted-growth string "
                    f"(position {i} has label {label})"
                )
            if label > top:
                top = label
        object.__setattr__(self, "block_count", top + 1)

    @property
    def size(self) -> int:
        return len(self.labels)

    def __len__(self) -> int:
        return len(self.labels)


def canonicalize(labels: Iterable[Hashable]) -> Partition:
    """
    Relabel by first occurrence.

    Any hashable labels are accepted; points with equal labels end up in the
    same block. The result is idempotent under repeated canonicalization.
    """
    mapping: Dict[Hashable, int] = {}
    out = []
    for label in labels:
        new = mapping.get(label)
        if new is None:
            new = mapping[label] = len(mapping)
        out.append(new)
    if not out:
        raise EmptyGroundSet("cannot canonicalize an empty label sequence")
    return Partition(tuple(out))


def block_bits(P: Partition) -> Tuple[int, ...]:
    """Block bit patterns, indexed by label."""
    bits = [0] * P.block_count
    for i, label in enumerate(P.labels):
        bits[label] |= 1 << i
    return tuple(bits)


def blocks(P: Partition) -> List[SubsetMask]:
    """Blocks as masks, ordered by minimum element."""
    return [SubsetMask(P.size, b) for b in block_bits(P)]


# ----------------------------------------------------------------------
# Sigma-algebras
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class SigmaAlgebra:
    """
    A sigma-algebra on a finite ground set, given by its atom partition.

    Members are exactly the unions of atom blocks, so there are
    2 ** block_count of them.
    """

    atoms: Partition
    ground: GroundSet = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        if not isinstance(self.atoms, Partition):
            object.__setattr__(self, "atoms", canonicalize(self.atoms))
        object.__setattr__(self, "ground", GroundSet(self.atoms.size))

    # -- constructors -------------------------------------------------

    @classmethod
    def from_labels(cls, labels: Iterable[Hashable]) -> "SigmaAlgebra":
        return cls(canonicalize(labels))

    @classmethod
    def from_blocks(cls, size: int, block_list: Iterable[Iterable[int]]) -> "SigmaAlgebra":
        """
        Build from explicit blocks, which must be nonempty, disjoint and
        cover 0..size-1.
        """
        _check_size(size)
        labels: List[int] = [-1] * size
        for b, block in enumerate(block_list):
            members = list(block)
            if not members:
                raise InvalidPartition(f"block {b} is empty")
            for x in members:
                if not 0 <= x < size:
                    raise PointOutOfRange(x, size)
                if labels[x] != -1:
                    raise InvalidPartition(f"point {x} appears in more than one block")
                labels[x] = b
        missing = [x for x, label in enumerate(labels) if label == -1]
        if missing:
            raise InvalidPartition(f"blocks do not cover points {missing}")
        return cls.from_labels(labels)

    @classmethod
    def discrete(cls, size: int) -> "SigmaAlgebra":
        _check_size(size)
        return cls(Partition(tuple(range(size))))

    @classmethod
    def trivial(cls, size: int) -> "SigmaAlgebra":
        _check_size(size)
        return cls(Partition((0,) * size))

    # -- shape --------------------------------------------------------

    @property
    def size(self) -> int:
        return self.atoms.size

    @property
    def labels(self) -> Tuple[int, ...]:
        return self.atoms.labels

    @property
    def block_count(self) -> int:
        return self.atoms.block_count

    @property
    def cardinality(self) -> int:
        """Number of member sets."""
        return 2 ** self.block_count

    def is_discrete(self) -> bool:
        return self.block_count == self.size

    def is_trivial(self) -> bool:
        return self.block_count == 1

    @cached_property
    def block_bits(self) -> Tuple[int, ...]:
        return block_bits(self.atoms)

    @cached_property
    def block_masks(self) -> Tuple[SubsetMask, ...]:
        return tuple(SubsetMask(self.size, b) for b in self.block_bits)

    def atom_lists(self) -> List[List[int]]:
        """Atoms as sorted index lists, ordered by first element."""
        return [m.indices() for m in self.block_masks]

    def __repr__(self) -> str:
        return f"SigmaAlgebra(size={self.size}, atoms={self.atom_lists()})"


def contains(C: SigmaAlgebra, S: SubsetMask) -> bool:
    """True iff S is a union of atoms of C, i.e. S splits no atom."""
    if S.size != C.size:
        raise GroundSetMismatch(C.size, S.size, "subset")
    bits = S.bits
    for b in C.block_bits:
        inside = bits & b
        if inside and inside != b:
            return False
    return True


def check_same_ground(*algebras: SigmaAlgebra) -> int:
    """Return the common ground size or raise GroundSetMismatch."""
    size = algebras[0].size
    for other in algebras[1:]:
        if other.size != size:
            raise GroundSetMismatch(size, other.size, "sigma-algebra")
    return size


__all__ = [
    "GroundSet",
    "SubsetMask",
    "Partition",
    "SigmaAlgebra",
    "canonicalize",
    "complement",
    "blocks",
    "block_bits",
    "contains",
    "check_same_ground",
]
