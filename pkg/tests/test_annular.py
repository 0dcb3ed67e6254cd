"""Annular families, partitioned permutations, and inflation."""

import pytest
from hypothesis import given, strategies as st

from ncfree.annular import (
    AnnulusShape,
    Composition,
    PartitionedPermutation,
    count_snc_pairings,
    element_record,
    enumerate_nc,
    enumerate_psnc,
    enumerate_snc,
    fatten,
    gamma_pq,
    is_nc_disc,
    is_snc,
    kreweras,
    kreweras_cycle_ids,
    main_summand_filter,
    pp_leq,
    pp_product,
    tau_of,
)
from ncfree.perm import Permutation, SetPartition, compose, full_cycle
from ncfree.spaces import catalan


def annular_count(p, q):
    """Closed form for |S_NC(p, q)|, cross-checked against enumeration."""
    from math import comb

    return 2 * p * q * comb(2 * p - 1, p - 1) * comb(2 * q - 1, q - 1) // (p + q)


class TestShapesAndCompositions:
    def test_gamma(self):
        assert gamma_pq(2, 1).cycles == ((1, 2), (3,))
        assert gamma_pq(3, 2) == Permutation.parse("(1,2,3)(4,5)")
        assert AnnulusShape(3, 2).total == 5

    def test_shape_validation(self):
        with pytest.raises(ValueError):
            AnnulusShape(0, 2)

    def test_composition_basics(self):
        comp = Composition((2, 3, 4))
        assert comp.total == 9
        assert comp.part_count == 3
        assert comp.boundary_points == (2, 5, 9)

    def test_split_composition(self):
        comp = Composition((1, 2, 2), split=2)
        assert (comp.p, comp.q) == (3, 2)
        assert comp.shape() == AnnulusShape(3, 2)

    def test_split_validation(self):
        with pytest.raises(ValueError):
            Composition((1, 2), split=0)
        with pytest.raises(ValueError):
            Composition((1, 2), split=2)
        with pytest.raises(ValueError):
            Composition((1, 0, 2))

    def test_unsplit_has_no_circles(self):
        with pytest.raises(ValueError):
            Composition((1, 2)).shape()

    def test_tau_is_the_interval_permutation(self):
        assert tau_of(Composition((2, 3))) == Permutation.parse("(1,2)(3,4,5)")


class TestDiscFamily:
    def test_counts_are_catalan(self):
        for n in range(1, 8):
            assert len(enumerate_nc(n)) == catalan(n)

    def test_membership(self):
        assert is_nc_disc(full_cycle(4))
        assert is_nc_disc(Permutation.parse("(1,2)(3,4)"))
        assert not is_nc_disc(Permutation.parse("(1,3)(2,4)"))

    def test_enumeration_is_sorted_and_cached(self):
        a = enumerate_nc(5)
        assert list(a) == sorted(a)
        assert enumerate_nc(5) is a

    def test_bound_guard(self):
        with pytest.raises(ValueError):
            enumerate_nc(11)
        with pytest.raises(ValueError):
            enumerate_nc(6, bound=5)


class TestAnnularFamily:
    def test_known_counts(self):
        for p in range(1, 4):
            for q in range(1, 4):
                assert len(enumerate_snc(AnnulusShape(p, q))) == annular_count(p, q)

    def test_members_need_a_through_cycle(self):
        # gamma itself stays on its own circles, so it is not annular.
        shape = AnnulusShape(2, 2)
        assert not is_snc(gamma_pq(2, 2), shape)
        assert is_snc(Permutation.parse("(1,2,3,4)"), shape)

    def test_symmetry_in_the_circles(self):
        assert len(enumerate_snc(AnnulusShape(1, 3))) == len(
            enumerate_snc(AnnulusShape(3, 1))
        )

    def test_disc_crossing_can_be_annular(self):
        a = Permutation.parse("(1,3)(2,4)")
        assert not is_nc_disc(a)
        assert is_snc(a, AnnulusShape(2, 2))


class TestKreweras:
    def test_complement_is_inverse_times_gamma(self):
        shape = AnnulusShape(2, 2)
        a = Permutation.parse("(1,2,3,4)")
        assert kreweras(shape, a) == compose(a.inverse(), gamma_pq(2, 2))

    def test_cycle_ids_label_complement_cycles(self):
        shape = AnnulusShape(2, 1)
        ids = kreweras_cycle_ids(shape, gamma_pq(2, 1))
        assert len(ids) == 3 and len(set(ids)) == 3

    def test_annular_complement_identity(self):
        # #(a) + #(a^-1 gamma) = p + q for annular members.
        shape = AnnulusShape(3, 2)
        for a in enumerate_snc(shape):
            assert a.cycle_count + kreweras(shape, a).cycle_count == shape.total


class TestPartitionedPermutations:
    def test_partition_must_dominate_cycles(self):
        with pytest.raises(ValueError):
            PartitionedPermutation(
                SetPartition(3, [(1,), (2, 3)]), Permutation.parse("(1,2)(3)")
            )

    def test_disc_constructor(self):
        vp = PartitionedPermutation.disc(Permutation.parse("(1,2)(3)"))
        assert vp.kind == "disc"
        assert vp.partition == SetPartition(3, [(1, 2), (3,)])
        assert vp.length == 1

    def test_tunnel_length_adds_two(self):
        vp = PartitionedPermutation(SetPartition.full(2), Permutation.identity(2))
        assert vp.kind == "tunnel"
        assert vp.length == 2

    def test_block_cycles_groups_by_block(self):
        vp = PartitionedPermutation(
            SetPartition(3, [(1, 3), (2,)]), Permutation.identity(3)
        )
        groups = vp.block_cycles()
        assert ((1,), (3,)) in groups and ((2,),) in groups

    def test_family_sizes(self):
        assert len(enumerate_psnc(AnnulusShape(1, 1))) == 2
        assert len(enumerate_psnc(AnnulusShape(2, 1))) == 7
        shape = AnnulusShape(2, 2)
        disc = [vp for vp in enumerate_psnc(shape) if vp.kind == "disc"]
        assert len(disc) == annular_count(2, 2)

    def test_records_round_trip(self):
        for vp in enumerate_psnc(AnnulusShape(2, 1)):
            rec = element_record(vp)
            assert rec["kind"] == vp.kind
            assert Permutation.parse(rec["perm"], size=3) == vp.perm
            assert SetPartition(3, rec["partition"]) == vp.partition


class TestProductAndOrder:
    def test_product_adds_lengths_or_is_none(self):
        shape = AnnulusShape(2, 1)
        elements = enumerate_psnc(shape)
        for a in elements:
            for b in elements:
                prod = pp_product(a, b)
                if prod is not None:
                    assert prod.length == a.length + b.length

    def test_order_is_witnessed_by_a_product(self):
        shape = AnnulusShape(2, 1)
        elements = enumerate_psnc(shape)
        top = PartitionedPermutation(SetPartition.full(3), gamma_pq(2, 1))
        assert all(pp_leq(vp, top) for vp in elements)
        assert sum(pp_leq(top, vp) for vp in elements) == 1

    def test_tunnels_never_sit_below_discs(self):
        elements = enumerate_psnc(AnnulusShape(2, 1))
        for a in elements:
            for b in elements:
                if a.kind == "tunnel" and b.kind == "disc":
                    assert not pp_leq(a, b)


class TestMainSummandFilter:
    def test_trivial_grouping_passes_only_the_top(self):
        shape = AnnulusShape(2, 1)
        comp = Composition((1, 1, 1), split=2)
        passing = [
            vp for vp in enumerate_psnc(shape) if main_summand_filter(shape, comp, vp)
        ]
        assert passing == [
            PartitionedPermutation(SetPartition.full(3), gamma_pq(2, 1))
        ]

    def test_one_group_per_circle(self):
        # N = {2, 3}; the complement of (1,3,2) is (1,3)(2) and separates,
        # the other three disc complements each keep 2 and 3 together, and
        # both tunnel complements equal gamma itself, which separates.
        shape = AnnulusShape(2, 1)
        comp = Composition((2, 1), split=1)
        passing = {
            vp for vp in enumerate_psnc(shape) if main_summand_filter(shape, comp, vp)
        }
        e3 = Permutation.identity(3)
        assert passing == {
            PartitionedPermutation.disc(Permutation.parse("(1,3,2)")),
            PartitionedPermutation(SetPartition.full(3), gamma_pq(2, 1)),
            PartitionedPermutation(SetPartition(3, [(1, 3), (2,)]), e3),
            PartitionedPermutation(SetPartition(3, [(1,), (2, 3)]), e3),
        }


class TestFattening:
    def test_worked_example(self):
        got = fatten(Permutation.parse("(1,3)(2)"), Composition((2, 3, 4)))
        assert got == Permutation.parse("(1,2,6,7,8,9)(3,4,5)")

    def test_all_singleton_parts_do_nothing(self):
        a = Permutation.parse("(1,3,2)")
        assert fatten(a, Composition((1, 1, 1))) == a

    def test_part_count_must_match(self):
        with pytest.raises(ValueError):
            fatten(Permutation.identity(2), Composition((1, 1, 1)))

    def test_identity_fattens_to_interval_cycles(self):
        comp = Composition((2, 3))
        assert fatten(Permutation.identity(2), comp) == tau_of(comp)

    @given(
        st.integers(2, 4).flatmap(
            lambda r: st.tuples(
                st.permutations(range(1, r + 1)).map(Permutation),
                st.lists(st.integers(1, 3), min_size=r, max_size=r).map(tuple),
            )
        )
    )
    def test_cycle_count_is_preserved(self, case):
        # Every cycle of parts becomes one cycle of letters.
        a, parts = case
        comp = Composition(parts)
        fat = fatten(a, comp)
        assert fat.cycle_count == a.cycle_count
        assert fat.size == comp.total


class TestPairingCounts:
    def test_small_values(self):
        assert count_snc_pairings(1, 1) == 1
        assert count_snc_pairings(2, 2) == 2
        assert count_snc_pairings(3, 1) == 3
        assert count_snc_pairings(1, 3) == 3

    def test_odd_totals_vanish(self):
        assert count_snc_pairings(2, 1) == 0

    def test_separation_filter_reduces_the_count(self):
        full = count_snc_pairings(2, 2)
        sep = count_snc_pairings(2, 2, separated_at=(2, 4))
        assert 0 < sep <= full
