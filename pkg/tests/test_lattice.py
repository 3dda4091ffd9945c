import itertools

import pytest

from src.core import SigmaAlgebra, blocks, contains
from src.errors import CapacityExceeded, EmptyGroundSet, GroundSetMismatch, PointOutOfRange
from src.lattice import (
    CLOSURE_LIMIT,
    DisjointSet,
    SetFamily,
    atoms_of,
    bell_number,
    enumerate_sigma_algebras,
    generate,
    generators_separate,
    is_atomic,
    is_blackwell,
    is_separated,
    is_strongly_blackwell,
    is_sub,
    minimal_members,
    join,
    meet,
    restricted_growth_strings,
    singleton_from_separator,
    sub_sigma_algebras,
)
from tests.helpers import all_algebras, all_subsets, atoms, mask, pairwise_separates, small_families


class TestDisjointSet:
    """Union-find bookkeeping."""

    def test_union_reports_merges(self):
        """Should return True only on the merge that joins two classes."""
        forest = DisjointSet(4)
        assert forest.union(0, 1) is True
        assert forest.union(1, 0) is False
        assert forest.union(2, 3) is True
        assert forest.find(0) == forest.find(1)
        assert forest.find(0) != forest.find(2)

    def test_chain_collapses_to_one_root(self):
        """Should leave one root after chaining every point."""
        forest = DisjointSet(6)
        for i in range(5):
            forest.union(i, i + 1)
        assert len({forest.find(i) for i in range(6)}) == 1


class TestGenerate:
    """generate builds the smallest sigma-algebra containing a family."""

    def test_overlapping_pair_is_discrete(self):
        """Should separate every point."""
        assert generate(SetFamily.from_indices(3, [[0, 1], [1, 2]])) == SigmaAlgebra.discrete(3)

    def test_empty_family_is_trivial(self):
        """Should give the trivial sigma-algebra."""
        assert generate(SetFamily(3)) == SigmaAlgebra.trivial(3)

    def test_single_set_and_complement(self):
        """Should add the complement."""
        assert generate(SetFamily.from_indices(4, [[0, 1]])) == atoms(4, [0, 1], [2, 3])

    def test_duplicates_change_nothing(self):
        """Should ignore repeated and empty generators."""
        once = generate(SetFamily.from_indices(4, [[0, 3]]))
        twice = generate(SetFamily.from_indices(4, [[0, 3], [3, 0], []]))
        assert once == twice

    def test_mixed_ground_sets_rejected(self):
        """Should refuse members on different ground sets."""
        with pytest.raises(GroundSetMismatch):
            SetFamily(3, (mask(3, 0), mask(4, 0)))

    def test_family_on_oversized_ground_set(self):
        """Should apply the capacity limit to the family's ground set."""
        with pytest.raises(CapacityExceeded):
            SetFamily(10**9)

    def test_round_trip_through_blocks(self):
        """Should regenerate C from its own atoms."""
        for n in range(1, 6):
            for C in all_algebras(n):
                assert generate(SetFamily(n, tuple(blocks(C.atoms)))) == C


class TestMeetAndJoin:
    """Intersection and join of two sigma-algebras."""

    def test_meet_collapses_to_trivial(self, four_point_pair):
        """Should collapse crossing partitions to the trivial sigma-algebra."""
        C, D = four_point_pair
        assert meet(C, D) == SigmaAlgebra.trivial(4)

    def test_meet_idempotent_and_absorbing(self, four_point_pair):
        """Should return C with itself and trivial with trivial."""
        C, _ = four_point_pair
        assert meet(C, C) == C
        assert meet(C, SigmaAlgebra.trivial(4)) == SigmaAlgebra.trivial(4)

    def test_join_of_crossing_pairs_is_discrete(self):
        """Should separate every point."""
        C = atoms(4, [0, 1], [2, 3])
        D = atoms(4, [0, 2], [1, 3])
        assert join(C, D) == SigmaAlgebra.discrete(4)

    def test_join_identity_and_idempotence(self, four_point_pair):
        """Trivial is the join identity."""
        C, _ = four_point_pair
        assert join(C, SigmaAlgebra.trivial(4)) == C
        assert join(C, C) == C

    def test_mismatched_grounds(self):
        """Should refuse operands on different ground sets."""
        with pytest.raises(GroundSetMismatch):
            meet(SigmaAlgebra.trivial(3), SigmaAlgebra.trivial(4))
        with pytest.raises(GroundSetMismatch):
            join(SigmaAlgebra.trivial(3), SigmaAlgebra.trivial(4))

    def test_meet_membership_matches_brute_force(self):
        """Should contain exactly the sets in both operands."""
        for n in range(1, 5):
            subsets = all_subsets(n)
            algebras = all_algebras(n)
            for C, D in itertools.product(algebras, repeat=2):
                H = meet(C, D)
                for s in subsets:
                    assert contains(H, s) == (contains(C, s) and contains(D, s))

    def test_bounds(self):
        """Should sit between meet and join."""
        for C, D in itertools.product(all_algebras(4), repeat=2):
            assert is_sub(meet(C, D), C)
            assert is_sub(C, join(C, D))


class TestOrderAndAtoms:
    """is_sub, atoms_of, is_separated."""

    def test_trivial_below_everything(self, four_point_pair):
        """Trivial below C, D below discrete."""
        C, D = four_point_pair
        assert is_sub(SigmaAlgebra.trivial(4), C)
        assert is_sub(D, SigmaAlgebra.discrete(4))

    def test_incomparable(self):
        """Should reject crossing partitions in either direction."""
        assert not is_sub(atoms(3, [0, 1], [2]), atoms(3, [0], [1, 2]))

    def test_is_sub_matches_membership(self):
        """Should agree with member inclusion on 3 points."""
        for C, D in itertools.product(all_algebras(3), repeat=2):
            expected = all(contains(D, s) for s in all_subsets(3) if contains(C, s))
            assert is_sub(C, D) == expected

    def test_atoms_of(self):
        """Should list atoms by smallest point."""
        assert atoms_of(SigmaAlgebra.discrete(3)) == [mask(3, 0), mask(3, 1), mask(3, 2)]
        assert atoms_of(SigmaAlgebra.trivial(3)) == [mask(3, 0, 1, 2)]
        assert atoms_of(atoms(3, [0, 2], [1])) == [mask(3, 0, 2), mask(3, 1)]

    def test_finite_algebras_are_atomic(self):
        """Every finite sigma-algebra is atomic."""
        assert all(is_atomic(C) for C in all_algebras(5))

    def test_is_separated(self):
        """Only the discrete sigma-algebra separates points."""
        assert is_separated(SigmaAlgebra.discrete(4))
        assert not is_separated(SigmaAlgebra.trivial(2))
        assert not is_separated(atoms(3, [0, 1], [2]))


class TestSeparators:
    """Singletons recovered from separators, and generator separation."""

    def test_singleton_from_overlapping_pair(self):
        """Should isolate the shared point."""
        family = SetFamily.from_indices(3, [[0, 1], [1, 2]])
        assert singleton_from_separator(family, 1) == mask(3, 1)

    def test_empty_family_gives_full_set(self):
        """Should return the full set when nothing separates."""
        assert singleton_from_separator(SetFamily(3), 0) == mask(3, 0, 1, 2)

    def test_single_constraint(self):
        """Should keep the unseparated neighbour."""
        family = SetFamily.from_indices(3, [[0, 1]])
        assert singleton_from_separator(family, 0) == mask(3, 0, 1)

    def test_point_out_of_range(self):
        """Should reject a point past the ground set."""
        with pytest.raises(PointOutOfRange):
            singleton_from_separator(SetFamily(3), 3)

    @pytest.mark.parametrize(
        "sets, expected",
        [([[0], [1]], True), ([[0, 1]], False), ([[0], [1], [2]], True)],
    )
    def test_generators_separate(self, sets, expected):
        """Should report whether the generators split every pair."""
        assert generators_separate(SetFamily.from_indices(3, sets)) is expected

    def test_separator_suite(self):
        """Singleton recovery, pairwise splitting and discreteness agree on every small family."""
        violations = 0
        checked = 0
        for n in range(1, 5):
            for family in small_families(n, 3):
                checked += 1
                separates = generators_separate(family)
                singletons = all(
                    singleton_from_separator(family, x) == mask(n, x) for x in range(n)
                )
                if not (separates == singletons == is_separated(generate(family)) == pairwise_separates(family)):
                    violations += 1
        assert violations == 0
        assert checked > 1000


class TestEnumeration:
    """Exhaustive enumeration and Bell numbers."""

    @pytest.mark.parametrize("n, count", [(1, 1), (2, 2), (3, 5), (4, 15), (5, 52), (6, 203)])
    def test_counts(self, n, count):
        """Should yield Bell-number many distinct sigma-algebras."""
        algebras = list(enumerate_sigma_algebras(n))
        assert len(algebras) == count
        assert len(set(algebras)) == count
        assert bell_number(n) == count

    def test_lexicographic_order(self):
        """Should list restricted-growth strings lexicographically."""
        strings = list(restricted_growth_strings(3))
        assert strings == [(0, 0, 0), (0, 0, 1), (0, 1, 0), (0, 1, 1), (0, 1, 2)]

    def test_first_is_trivial_last_is_discrete(self):
        """Should start trivial and end discrete."""
        algebras = all_algebras(4)
        assert algebras[0] == SigmaAlgebra.trivial(4)
        assert algebras[-1] == SigmaAlgebra.discrete(4)

    def test_bell_zero(self):
        """B(0) = 1."""
        assert bell_number(0) == 1

    def test_rejects_empty(self):
        """Should reject zero points."""
        with pytest.raises(EmptyGroundSet):
            list(enumerate_sigma_algebras(0))

    def test_rejects_beyond_capacity(self, capacity):
        """Should respect a lowered capacity."""
        capacity(3)
        with pytest.raises(CapacityExceeded):
            list(enumerate_sigma_algebras(4))


class TestSubAlgebrasAndBlackwell:
    """Sub-sigma-algebras and the finite Blackwell properties."""

    def test_sub_algebra_count_is_bell_of_atoms(self):
        """Should yield one sub-sigma-algebra per grouping of the atoms."""
        C = atoms(5, [0, 1], [2], [3, 4])
        subs = list(sub_sigma_algebras(C))
        assert len(subs) == 5
        assert len(set(subs)) == 5
        assert all(is_sub(S, C) for S in subs)

    def test_sub_algebras_match_filter(self):
        """Should match filtering all sigma-algebras by inclusion."""
        for C in all_algebras(4):
            expected = {S for S in all_algebras(4) if is_sub(S, C)}
            assert set(sub_sigma_algebras(C)) == expected

    def test_discrete_spaces_are_blackwell(self):
        """Should satisfy both Blackwell properties."""
        for n in range(1, 5):
            D = SigmaAlgebra.discrete(n)
            assert is_blackwell(D)
            assert is_strongly_blackwell(D)

    def test_non_separated_is_not_blackwell(self):
        """Should fail both properties without point separation."""
        C = atoms(3, [0, 1], [2])
        assert not is_blackwell(C)
        assert not is_strongly_blackwell(C)

    def test_minimal_members_are_the_atoms(self):
        """Should recover the atom partition from the member family alone."""
        for n in range(1, 5):
            for C in all_algebras(n):
                assert minimal_members(C) == atoms_of(C)

    def test_minimal_members_of_trivial(self):
        """Whole set only."""
        assert minimal_members(SigmaAlgebra.trivial(3)) == [mask(3, 0, 1, 2)]

    def test_strongly_blackwell_over_closure_limit_rejected(self):
        """Should refuse ground sets past the member enumeration limit."""
        with pytest.raises(CapacityExceeded):
            is_strongly_blackwell(SigmaAlgebra.discrete(CLOSURE_LIMIT + 1))
