import random
from itertools import combinations

import pytest

from algval.algmat import EliminationOracle, Matroid, bases, circuits
from algval.toric import IntMatrix, linear_valuated_matroid
from algval.valmat import Valuation
from algval.flock import (
    FlockSlice,
    check_flock_axioms,
    default_box_radius,
    flock_slice,
    g,
)

from conftest import NONFANO_A, S

ALPHA_MINUS = (-1, -1, -1, 0, 0, 0, -1)


@pytest.fixture(scope="module")
def nonfano_valuation():
    return linear_valuated_matroid(IntMatrix(NONFANO_A), 2)


class TestG:
    def test_zero_direction(self, nonfano_valuation):
        assert g(nonfano_valuation, (0,) * 7) == 0

    def test_worked_direction(self, nonfano_valuation):
        assert g(nonfano_valuation, ALPHA_MINUS) == -1

    def test_all_ones_shift_adds_rank(self, nonfano_valuation):
        rng = random.Random(2)
        for _ in range(20):
            alpha = tuple(rng.randrange(-3, 4) for _ in range(7))
            shifted = tuple(a + 1 for a in alpha)
            assert g(nonfano_valuation, shifted) == g(nonfano_valuation, alpha) + 3

    def test_length_checked(self, nonfano_valuation):
        with pytest.raises(ValueError):
            g(nonfano_valuation, (0, 0))


class TestFlockSlice:
    def test_zero_direction_drops_special_basis(self, nonfano_valuation):
        got = flock_slice(nonfano_valuation, (0,) * 7)
        assert got.g_value == 0
        assert len(got.matroid.bases) == 28
        assert S(4, 5, 6) not in set(got.matroid.bases)
        assert set(got.matroid.bases) == set(nonfano_valuation.values) - {S(4, 5, 6)}

    def test_worked_direction_membership(self, nonfano_valuation):
        got = flock_slice(nonfano_valuation, ALPHA_MINUS)
        family = set(got.matroid.bases)
        assert S(4, 5, 6) in family
        assert S(3, 5, 6) in family
        heavy = S(1, 2, 3, 7)
        for b in family:
            assert len(b & heavy) < 2

    def test_single_basis_valuation(self):
        m = Matroid(3, [{0, 1, 2}])
        v = Valuation(m, {frozenset({0, 1, 2}): 0})
        for alpha in [(0, 0, 0), (2, -1, 5), (-3, -3, -3)]:
            got = flock_slice(v, alpha)
            assert got.matroid.bases == (frozenset({0, 1, 2}),)

    def test_slices_are_matroids(self, nonfano_valuation):
        rng = random.Random(31)
        for _ in range(15):
            alpha = tuple(rng.randrange(-2, 3) for _ in range(7))
            got = flock_slice(nonfano_valuation, alpha)
            assert isinstance(got, FlockSlice)
            assert got.matroid.rank == 3


class TestFlockAxioms:
    def test_nonfano_box_radius_one(self, nonfano_valuation):
        report = check_flock_axioms(nonfano_valuation, radius=1)
        assert report.ok, report.violations[:5]
        assert report.directions == 3**7

    def test_default_radius_respects_budget(self, nonfano_valuation):
        r = default_box_radius(nonfano_valuation)
        assert r == 1
        assert (2 * r + 1) ** 7 * 7 * 29 <= 10**6

    def test_perturbed_valuation_violates(self, nonfano_valuation):
        # bumping one basis value yields slices that are no longer
        # matroids; the family identities alone hold for any weighting,
        # so the exchange check inside the slices is what trips
        tampered = dict(nonfano_valuation.values)
        tampered[S(1, 2, 3)] = 1
        broken = Valuation(nonfano_valuation.matroid, tampered)
        report = check_flock_axioms(broken, radius=1)
        assert not report.ok
        assert any("not a matroid" in v for v in report.violations)

    def test_single_element_ground_set(self):
        m = Matroid(1, [{0}])
        v = Valuation(m, {frozenset({0}): 0})
        report = check_flock_axioms(v, radius=2)
        assert report.ok
        assert report.directions == 5

    def test_explicit_direction_list(self, nonfano_valuation):
        report = check_flock_axioms(
            nonfano_valuation, alphas=[(0,) * 7, ALPHA_MINUS]
        )
        assert report.ok
        assert report.directions == 2

    def test_gr_route_matches_matrix_route(self, nonfano_ideal, nonfano_valuation):
        from algval.valmat import valuated_circuits, valuation_from_circuits

        oracle = EliminationOracle(nonfano_ideal)
        matroid = bases(nonfano_ideal, oracle=oracle)
        records = circuits(nonfano_ideal, oracle=oracle)
        derived = valuation_from_circuits(matroid, valuated_circuits(records, 2))
        assert flock_slice(derived, ALPHA_MINUS).matroid == flock_slice(
            nonfano_valuation, ALPHA_MINUS
        ).matroid
