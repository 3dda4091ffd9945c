"""
Product spaces and product sigma-algebras.

Points of X×U are laid out row-major: (x, u) has index x * |U| + u. Every
product-space mask, decomposition and report in the toolkit uses this one
layout, so the x-section of a set B is a contiguous run of |U| bits.
"""

from dataclasses import dataclass
from typing import Dict, Iterator, List, Tuple

from .config import capacity_limit
from .core import SigmaAlgebra, SubsetMask, canonicalize
from .errors import (
    CapacityExceeded,
    EmptyGroundSet,
    GroundSetMismatch,
    NotInProduct,
    PointOutOfRange,
)
from .lattice import SetFamily, meet


@dataclass(frozen=True)
class ProductSpace:
    """X×U with X = 0..left-1 and U = 0..right-1."""

    left: int
    right: int

    def __post_init__(self) -> None:
        if self.left < 1 or self.right < 1:
            raise EmptyGroundSet(
                f"product factors must be nonempty, got {self.left}×{self.right}"
            )
        limit = capacity_limit()
        if self.left * self.right > limit:
            raise CapacityExceeded(self.left * self.right, limit)

    @property
    def size(self) -> int:
        return self.left * self.right

    def index(self, x: int, u: int) -> int:
        if not 0 <= x < self.left:
            raise PointOutOfRange(x, self.left)
        if not 0 <= u < self.right:
            raise PointOutOfRange(u, self.right)
        return x * self.right + u

    def point(self, i: int) -> Tuple[int, int]:
        if not 0 <= i < self.size:
            raise PointOutOfRange(i, self.size)
        return divmod(i, self.right)

    def points(self) -> Iterator[Tuple[int, int]]:
        for x in range(self.left):
            for u in range(self.right):
                yield x, u


def _space_for(B: SubsetMask, u_size: int) -> ProductSpace:
    if u_size < 1 or B.size % u_size:
        raise GroundSetMismatch(u_size, B.size, "product set (size not a multiple of |U|)")
    return ProductSpace(B.size // u_size, u_size)


def _sections(bits: int, x_size: int, u_size: int) -> List[int]:
    row = (1 << u_size) - 1
    return [bits >> (x * u_size) & row for x in range(x_size)]


def _splits_an_atom(block_bits: Tuple[int, ...], bits: int) -> bool:
    for b in block_bits:
        inside = bits & b
        if inside and inside != b:
            return True
    return False


# ----------------------------------------------------------------------
# Product sigma-algebras and rectangles
# ----------------------------------------------------------------------


def product_sigma(A: SigmaAlgebra, F: SigmaAlgebra) -> SigmaAlgebra:
    """
    A ⊗ F on X×U.

    Built directly from atoms: the atoms of the product are the rectangles
    a × f over atoms a of A and f of F.
    """
    ProductSpace(A.size, F.size)
    width = F.block_count
    labels = [a * width + f for a in A.labels for f in F.labels]
    return SigmaAlgebra(canonicalize(labels))


def rectangle(a: SubsetMask, f: SubsetMask) -> SubsetMask:
    """The mask of a × f."""
    space = ProductSpace(a.size, f.size)
    bits = 0
    for x in a.indices():
        bits |= f.bits << (x * space.right)
    return SubsetMask(space.size, bits)


def union_of_rectangles(pairs: List[Tuple[SubsetMask, SubsetMask]], x_size: int, u_size: int) -> SubsetMask:
    """Union of a_i × f_i over the given pairs (empty list gives ∅)."""
    space = ProductSpace(x_size, u_size)
    bits = 0
    for a, f in pairs:
        bits |= rectangle(a, f).bits
    return SubsetMask(space.size, bits)


def section(B: SubsetMask, x: int, u_size: int) -> SubsetMask:
    """The x-section {u : (x, u) ∈ B}."""
    space = _space_for(B, u_size)
    if not 0 <= x < space.left:
        raise PointOutOfRange(x, space.left)
    return SubsetMask(u_size, B.bits >> (x * u_size) & ((1 << u_size) - 1))


def is_rectangle(B: SubsetMask, u_size: int) -> bool:
    """True iff B = S × T for some S ⊆ X and T ⊆ U (∅ counts)."""
    space = _space_for(B, u_size)
    rows = {s for s in _sections(B.bits, space.left, u_size) if s}
    return len(rows) <= 1


# ----------------------------------------------------------------------
# Membership and decompositions
# ----------------------------------------------------------------------


def _check_product_ground(B: SubsetMask, A: SigmaAlgebra, F: SigmaAlgebra) -> None:
    if B.size != A.size * F.size:
        raise GroundSetMismatch(A.size * F.size, B.size, "product set")


def _common_sections(B: SubsetMask, A: SigmaAlgebra, F: SigmaAlgebra) -> Dict[int, int]:
    """
    Map each A-atom index to the shared section of its points.

    Raises NotInProduct when two points of one atom have different sections
    or a section is not a member of F.
    """
    _check_product_ground(B, A, F)
    by_atom: Dict[int, int] = {}
    first_point: Dict[int, int] = {}
    for x, (a, s) in enumerate(zip(A.labels, _sections(B.bits, A.size, F.size))):
        shared = by_atom.setdefault(a, s)
        if shared != s:
            raise NotInProduct(
                f"sections differ inside atom {a}: points {first_point[a]} and {x}"
            )
        first_point.setdefault(a, x)
    for a, s in by_atom.items():
        if _splits_an_atom(F.block_bits, s):
            raise NotInProduct(
                f"section over atom {a} ({SubsetMask(F.size, s).indices()}) "
                f"is not a member of the right factor"
            )
    return by_atom


def in_product(B: SubsetMask, A: SigmaAlgebra, F: SigmaAlgebra) -> bool:
    """True iff B ∈ A ⊗ F."""
    try:
        _common_sections(B, A, F)
    except NotInProduct:
        return False
    return True


@dataclass(frozen=True)
class RectangleDecomposition:
    """
    B = ⋃ (atom_i × fiber_i), one entry per atom of the left factor, in atom
    order. Fibers may be empty.
    """

    entries: Tuple[Tuple[int, SubsetMask], ...]

    def reconstruct(self, A: SigmaAlgebra) -> SubsetMask:
        u_size = self.entries[0][1].size
        atoms = A.block_masks
        pairs = [(atoms[i], fiber) for i, fiber in self.entries]
        return union_of_rectangles(pairs, A.size, u_size)


def rectangle_decomposition(
    B: SubsetMask, A: SigmaAlgebra, F: SigmaAlgebra
) -> RectangleDecomposition:
    """The unique representation of B ∈ A ⊗ F over the atoms of A."""
    by_atom = _common_sections(B, A, F)
    return RectangleDecomposition(
        tuple((a, SubsetMask(F.size, by_atom[a])) for a in range(A.block_count))
    )


def intersection_decomposition(
    B: SubsetMask, A: SigmaAlgebra, F: SigmaAlgebra, G: SigmaAlgebra
) -> List[Tuple[SubsetMask, SubsetMask]]:
    """
    Certify B ∈ A ⊗ (F ∩ G) for B in both A ⊗ F and A ⊗ G.

    Returns the pairs (A_i, H_i) where H_i runs over the atoms of F ∩ G and
    A_i = {x : B_x ⊇ H_i}. Each A_i is a member of A and the rectangles
    A_i × H_i reunite to B.
    """
    _common_sections(B, A, F)
    _common_sections(B, A, G)
    H = meet(F, G)
    sections = _sections(B.bits, A.size, F.size)
    pairs = []
    for h in H.block_bits:
        a_bits = 0
        for x, s in enumerate(sections):
            if s & h == h:
                a_bits |= 1 << x
        pairs.append((SubsetMask(A.size, a_bits), SubsetMask(F.size, h)))
    return pairs


# ----------------------------------------------------------------------
# Diagonal
# ----------------------------------------------------------------------


def diagonal(n: int) -> SubsetMask:
    """Δ = {(x, x)} in the n×n product."""
    space = ProductSpace(n, n)
    bits = 0
    for x in range(n):
        bits |= 1 << (x * n + x)
    return SubsetMask(space.size, bits)


def diagonal_identity(family: SetFamily) -> SubsetMask:
    """
    Evaluate ⋂_i ((A_i × A_i) ∪ (A_i^c × A_i^c)) over the family, term by
    term. Always contains Δ; equals Δ exactly when the family separates
    points. The empty intersection is the whole product.
    """
    n = family.size
    space = ProductSpace(n, n)
    result = SubsetMask.full(space.size)
    for a in family:
        ac = ~a
        result = result & (rectangle(a, a) | rectangle(ac, ac))
    return result


__all__ = [
    "ProductSpace",
    "RectangleDecomposition",
    "product_sigma",
    "rectangle",
    "union_of_rectangles",
    "section",
    "is_rectangle",
    "in_product",
    "rectangle_decomposition",
    "intersection_decomposition",
    "diagonal",
    "diagonal_identity",
]
