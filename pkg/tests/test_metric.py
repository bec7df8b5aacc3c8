import random

import pytest

import cayleydist as cd
from cayleydist.errors import (
    DimensionMismatch,
    HypothesisNotMet,
    InputError,
    MTooSmall,
    NotPrime,
    OrderTooSmall,
)

from conftest import cyclic, dihedral, oracle_dist, oracle_mf, random_permutation


class TestDist:
    def test_paper_distance_18(self, z7, paper_f7):
        prof = cd.dist(z7, cd.transport(z7, paper_f7))
        assert prof.total == 18
        assert prof.total < cd.delta0(z7) == 24

    def test_self_distance(self, z7):
        prof = cd.dist(z7, z7)
        assert prof.total == 0
        assert prof.agreement == tuple(range(7))
        assert prof.m == 0

    def test_z5_transposition(self, z5):
        moved = cd.transport(z5, cd.Permutation.transposition(5, 2, 3))
        assert cd.dist(z5, moved).total == 12

    def test_total_is_row_sum_and_symmetric(self, z7):
        rng = random.Random(2)
        for _ in range(25):
            moved = cd.transport(z7, random_permutation(7, rng))
            prof = cd.dist(z7, moved)
            assert prof.total == sum(prof.row)
            assert prof.total == oracle_dist(z7, moved)
            assert cd.dist(moved, z7).total == prof.total

    def test_m_absent_when_identities_differ(self, z5):
        moved = cd.transport(z5, cd.Permutation((1, 0, 2, 3, 4)))
        assert moved.identity == 1
        assert cd.dist(z5, moved).m is None

    def test_dimension_mismatch(self, z5, z7):
        with pytest.raises(DimensionMismatch):
            cd.dist(z5, z7)


class TestHomDistance:
    def test_identity_map(self, z7):
        assert cd.hom_distance(cd.Permutation.identity(7), z7, z7) == 0

    def test_constant_identity_map(self, z7):
        assert cd.hom_distance([0] * 7, z7, z7) == 0

    def test_transposition_on_z5(self, z5):
        f = cd.Permutation.transposition(5, 2, 3)
        assert cd.hom_distance(f, z5, z5) == 12
        assert cd.hom_distance(f, z5, z5) == cd.dist(z5, cd.transport(z5, f)).total

    def test_non_bijective_against_oracle(self, z5):
        rng = random.Random(4)
        for _ in range(20):
            img = [rng.randrange(5) for _ in range(5)]
            assert cd.hom_distance(img, z5, z5) == sum(
                img[z5.cells[a][b]] != z5.cells[img[a]][img[b]]
                for a in range(5)
                for b in range(5)
            )

    def test_image_out_of_range(self, z5):
        with pytest.raises(InputError):
            cd.hom_distance([0, 1, 2, 3, 7], z5, z5)


class TestDelta0:
    def test_branches(self):
        assert cd.delta0(cyclic(7)) == 24
        assert cd.delta0(dihedral(5)) == 40
        assert cd.delta0(cyclic(8)) == 24
        assert cd.delta0(cyclic(9)) == 36
        assert cd.delta0(dihedral(3)) == 16
        assert cd.delta0(cyclic(10)) == 36

    def test_too_small(self):
        with pytest.raises(OrderTooSmall):
            cd.delta0(cyclic(4))


class TestLightSet:
    def test_identical_tables(self, z7):
        assert cd.light_set(z7, z7) == list(range(7))

    def test_z7_paper_pair(self, z7, paper_f7):
        moved = cd.transport(z7, paper_f7)
        prof = cd.dist(z7, moved)
        # at odd order each row distance is 0 or >= 3, so K is the agreement set
        assert cd.light_set(z7, moved) == [
            g for g in range(7) if prof.row[g] == 0
        ]

    def test_strict_threshold(self, z5):
        moved = cd.transport(z5, cd.Permutation.transposition(5, 2, 3))
        prof = cd.dist(z5, moved)
        assert prof.total == 12
        K = cd.light_set(z5, moved)
        assert all(3 * prof.row[g] < 5 for g in K)
        assert all(3 * prof.row[g] >= 5 for g in range(5) if g not in K)


class TestReconstruct:
    def test_equal_tables_give_identity(self, z7):
        assert cd.reconstruct_isomorphism(z7, z7) == cd.Permutation.identity(7)

    def test_recovers_transposition_at_29(self):
        z29 = cyclic(29)
        f = cd.Permutation.transposition(29, 2, 5)
        moved = cd.transport(z29, f)
        assert cd.reconstruct_isomorphism(z29, moved) == f

    def test_recovers_random_transpositions(self):
        z13 = cyclic(13)
        for u, v in [(1, 7), (3, 4), (2, 11)]:
            f = cd.Permutation.transposition(13, u, v)
            assert cd.reconstruct_isomorphism(z13, cd.transport(z13, f)) == f

    def test_hypothesis_not_met_on_paper_pair(self, z7, paper_f7):
        with pytest.raises(HypothesisNotMet):
            cd.reconstruct_isomorphism(z7, cd.transport(z7, paper_f7))


class TestMinTransposition:
    def test_z5(self, z5):
        value, witness = cd.min_transposition_mf(z5)
        assert value == 12
        # (2, 3) is among the minimizers
        assert cd.hom_distance(cd.Permutation.transposition(5, 2, 3), z5, z5) == 12
        assert cd.hom_distance(witness, z5, z5) == 12

    def test_z7(self, z7):
        assert cd.min_transposition_mf(z7)[0] == 24 == cd.delta0(z7)

    def test_dihedral5(self):
        d5 = dihedral(5)
        assert cd.min_transposition_mf(d5)[0] == 40 == cd.delta0(d5)

    def test_matches_exhaustive_oracle(self, z5):
        best = min(
            oracle_mf(cd.Permutation.transposition(5, u, v), z5, z5)
            for u in range(5)
            for v in range(u + 1, 5)
        )
        assert cd.min_transposition_mf(z5)[0] == best

    def test_too_small(self):
        with pytest.raises(OrderTooSmall):
            cd.min_transposition_mf(cyclic(4))


class TestEstimates:
    @pytest.mark.parametrize("n,m,expected", [(11, 3, 33), (13, 4, 52), (31, 3, 154)])
    def test_estim1(self, n, m, expected):
        assert cd.estim1_bound(n, m) == expected

    def test_estim2_examples(self):
        assert cd.estim2_bounds(13, 5, 3) == (54, None)
        assert cd.estim2_bounds(13, 5, 3)[0] == 8 * 13 - 50
        b1, b2 = cd.estim2_bounds(19, 4, 3)
        assert b1 == 93 == 7 * 19 - 40 and b2 is None

    def test_estim2_degenerate_l(self):
        for n, m in [(11, 3), (17, 5), (23, 4)]:
            b1, _ = cd.estim2_bounds(n, m, 0)
            assert b1 == (n - 1) * m

    def test_estim2_l_bounds(self):
        with pytest.raises(InputError):
            cd.estim2_bounds(11, 3, 4)


class TestMaxDisjointSubset:
    def test_power_positions_m5(self):
        z11 = cyclic(11)
        disagree = [1, 3, 5, 7, 9]  # powers of h=1 with i0 > 0
        Y = cd.max_disjoint_subset(z11, 1, disagree)
        assert len(Y) >= 3
        assert {z11.cells[1][y] for y in Y}.isdisjoint(Y)

    def test_adjacent_pairs_cap_at_two(self):
        z11 = cyclic(11)
        Y = cd.max_disjoint_subset(z11, 1, [1, 2, 5, 6])
        assert len(Y) == 2

    def test_singleton(self, z7):
        assert cd.max_disjoint_subset(z7, 1, [3]) == [3]

    def test_exhaustive_against_oracle(self):
        z11 = cyclic(11)
        rng = random.Random(6)
        from itertools import combinations

        for _ in range(40):
            disagree = rng.sample(range(11), 5)
            Y = cd.max_disjoint_subset(z11, 1, disagree)
            best = 0
            for size in range(1, 6):
                for sub in combinations(sorted(disagree), size):
                    if {(1 + y) % 11 for y in sub}.isdisjoint(sub):
                        best = max(best, size)
            assert len(Y) == best

    def test_any_five_powers_allow_three(self):
        # the m = 5 exclusion relies on a guaranteed 3-element subset
        from itertools import combinations

        z11 = cyclic(11)
        for pos in combinations(range(1, 11), 5):
            assert len(cd.max_disjoint_subset(z11, 1, list(pos))) >= 3


class TestAnalyticBounds:
    def test_p13_m5_excluded_by_row_floor(self):
        rep = cd.analytic_lower_bound(13, 5)
        assert rep.best == 60 == 6 * 13 - 18
        assert rep.excluded

    def test_p37_m3_corollary_value(self):
        rep = cd.analytic_lower_bound(37, 3)
        values = dict(rep.bounds)
        assert values["disjoint_pairs_quarter_l2"] == 224
        assert rep.excluded and rep.best >= 6 * 37 - 18 == 204

    def test_p11_m4_not_excluded(self):
        rep = cd.analytic_lower_bound(11, 4)
        assert dict(rep.bounds)["disjoint_pairs_l3"] == 7 * 11 - 40 == 37
        assert rep.best == 40 < 48  # the row floor wins but stays below 6p-18
        assert not rep.excluded

    def test_best_is_max(self):
        for p in (11, 13, 31, 101):
            for m in (3, 4, 5, 6):
                rep = cd.analytic_lower_bound(p, m)
                assert rep.best == max(v for _, v in rep.bounds)
                assert rep.excluded == (rep.best >= 6 * p - 18)

    def test_errors(self):
        with pytest.raises(NotPrime):
            cd.analytic_lower_bound(15, 3)
        with pytest.raises(NotPrime):
            cd.analytic_lower_bound(7, 3)
        with pytest.raises(MTooSmall):
            cd.analytic_lower_bound(11, 2)


class TestCheckLemmas:
    def test_paper_pair_clean(self, z7, paper_f7):
        assert cd.check_lemmas(z7, cd.transport(z7, paper_f7)) == []

    def test_self_pair_clean(self):
        for t in [cyclic(9), dihedral(4)]:
            assert cd.check_lemmas(t, t) == []

    def test_random_z9_transports_clean(self):
        z9 = cyclic(9)
        rng = random.Random(99)
        for _ in range(200):
            moved = cd.transport(z9, random_permutation(9, rng))
            assert cd.check_lemmas(z9, moved) == []
            prof = cd.dist(z9, moved)
            assert all(d not in (1, 2) for d in prof.row)

    def test_agreement_set_is_subgroup(self):
        rng = random.Random(17)
        for n in (9, 11):
            t = cyclic(n)
            for _ in range(100):
                moved = cd.transport(t, random_permutation(n, rng))
                prof = cd.dist(t, moved)
                if t.identity != moved.identity:
                    continue
                H = set(prof.agreement)
                assert t.identity in H
                assert all(t.cells[x][y] in H for x in H for y in H)
                assert all(t.inverse(x) in H for x in H)


def test_estim2_monotone_in_m():
    for n in (11, 19, 31, 97):
        for l in (0, 1, 2, 3):
            prev = None
            for m in range(l, 12):
                b1, b2 = cd.estim2_bounds(n, m, l)
                if prev is not None:
                    assert b1 >= prev[0]
                    if prev[1] is not None and b2 is not None:
                        assert b2 >= prev[1]
                prev = (b1, b2)
