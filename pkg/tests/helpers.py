"""Shared builders for the test suite."""

import itertools
from pathlib import Path
from typing import Iterator, List

from src.core import SigmaAlgebra, SubsetMask
from src.lattice import SetFamily, enumerate_sigma_algebras

PROBLEMS_DIR = Path(__file__).resolve().parent.parent / "data" / "problems"


def all_algebras(n: int) -> List[SigmaAlgebra]:
    """Every sigma-algebra on n points, in enumeration order."""
    return list(enumerate_sigma_algebras(n))


def all_subsets(n: int) -> List[SubsetMask]:
    return [SubsetMask(n, bits) for bits in range(2 ** n)]


def small_families(n: int, max_members: int = 3) -> Iterator[SetFamily]:
    """Every family of at most max_members subsets of an n-point set (as multisets)."""
    for k in range(max_members + 1):
        for combo in itertools.combinations_with_replacement(range(2 ** n), k):
            yield SetFamily(n, tuple(SubsetMask(n, bits) for bits in combo))


def atoms(size: int, *block_list) -> SigmaAlgebra:
    """Shorthand: atoms(4, [0, 1], [2, 3])."""
    return SigmaAlgebra.from_blocks(size, block_list)


def mask(size: int, *indices: int) -> SubsetMask:
    return SubsetMask.from_indices(size, indices)


def pairwise_separates(family: SetFamily) -> bool:
    """Literal check: every pair x != y is split by some member."""
    for x in range(family.size):
        for y in range(x + 1, family.size):
            if not any((x in m) != (y in m) for m in family):
                return False
    return True
