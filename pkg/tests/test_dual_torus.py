"""Test cases for diagonalizable groups, X_T and the sandwich chain"""

from fractions import Fraction

import pytest

from src.catalog import arithmetic_variant, catalog_keys, preset, random_lattice
from src.cohomology import CoefficientModule, cohomology_group
from src.dual_torus import (
    DiagonalizableGroup,
    archimedean_character_space,
    character_torus_data,
    coinvariant_group,
    component_group,
    dual_torus_of,
    fixed_points,
    frobenius_coinvariant_group,
    identity_component,
    sandwich_report,
    torus_summary,
    unramified_character_torus,
    xs_comparison,
)
from src.exceptions import InvalidArithmeticData
from src.galois_lattice import (
    FiniteGroup,
    admissible_arithmetic,
    coinvariants,
    dual_module,
    invariants,
    projection_lattice,
)
from src.integer_linalg import FinGenAbGroup, IntegerMatrix, RationalLattice

HALF = RationalLattice.from_generators([[Fraction(1, 2), Fraction(1, 2)]], 2)


@pytest.fixture
def swap():
    return preset('weil_restriction', n=2)[0]


@pytest.fixture
def sign():
    return preset('sign')[0]


class TestDiagonalizableGroups:
    """Test suite for the character-group calculus"""

    def test_dual_torus_rank(self, sign):
        assert dual_torus_of(preset('split', rank=2)[0]).dimension == 2
        assert dual_torus_of(preset('norm_one_cyclic', n=3)[0]).dimension == 2
        T_hat = dual_torus_of(sign)
        assert T_hat.dimension == 1
        assert T_hat.action == (IntegerMatrix([[1]]), IntegerMatrix([[-1]]))

    def test_fixed_points(self, sign, swap):
        fixed = fixed_points(sign)
        assert fixed.character_group == FinGenAbGroup(torsion=(2,))
        assert component_group(fixed) == FinGenAbGroup(torsion=(2,))
        assert fixed.is_finite()

        swap_fixed = fixed_points(swap)
        assert swap_fixed.dimension == 1
        assert swap_fixed.is_connected()

        assert fixed_points(preset('split', rank=3)[0]).character_group == FinGenAbGroup(free_rank=3)

    def test_coinvariant_group(self, sign, swap):
        assert coinvariant_group(sign).dimension == 0
        assert coinvariant_group(swap).dimension == 1
        assert coinvariant_group(preset('split', rank=3)[0]).dimension == 3

    def test_identity_and_component_group(self):
        D = DiagonalizableGroup(FinGenAbGroup(free_rank=1, torsion=(2,)))
        assert identity_component(D).dimension == 1
        assert identity_component(D).is_connected()
        assert component_group(D) == FinGenAbGroup(torsion=(2,))

        connected = DiagonalizableGroup(FinGenAbGroup(free_rank=2))
        assert component_group(connected).is_trivial()

        finite = DiagonalizableGroup(FinGenAbGroup(torsion=(3,)))
        assert identity_component(finite).character_group.is_trivial()

    def test_fixed_points_and_coinvariants_exchanged_by_duality(self):
        for key in catalog_keys():
            X, _ = preset(key)
            assert fixed_points(dual_module(X)).character_group == coinvariants(X)

    def test_component_group_is_h1_for_presets(self):
        for key in catalog_keys():
            X, _ = preset(key)
            H1 = cohomology_group(X.group, CoefficientModule.lattice(X), 1).group
            assert component_group(fixed_points(X)) == H1

    def test_component_group_is_h1_for_random_lattices(self):
        groups = [FiniteGroup.cyclic(n) for n in (2, 3, 4)] + [preset('a2_weyl')[0].group]
        for group in groups:
            for seed in range(3):
                X = random_lattice(group, 4, seed)
                H1 = cohomology_group(group, CoefficientModule.lattice(X), 1).group
                assert component_group(fixed_points(X)) == H1


class TestCharacterTorus:
    """Test suite for X_T"""

    def test_norm_one_unramified(self):
        X, arith = preset('norm_one_cyclic', arithmetic='unramified', n=2)
        torus, cochar = unramified_character_torus(X, arith)
        assert torus.dimension == 0
        assert cochar == RationalLattice.zero(1)

    def test_swap_unramified(self, swap):
        arith = arithmetic_variant(swap.group, 'unramified')
        data = character_torus_data(swap, arith)
        assert data.pairing_index == 2
        assert data.cocharacters == HALF
        assert data.cocharacters == projection_lattice(swap)

    def test_split_torus(self):
        X, arith = preset('split', arithmetic='unramified', rank=2)
        torus, cochar = unramified_character_torus(X, arith)
        assert torus.dimension == 2
        assert cochar == invariants(X) == projection_lattice(X) == RationalLattice.standard(2)

    def test_frobenius_invariants_of_inertia_coinvariants(self, sign):
        unramified = frobenius_coinvariant_group(sign, arithmetic_variant(sign.group, 'unramified'))
        assert unramified.character_group.is_trivial()
        ramified = frobenius_coinvariant_group(sign, arithmetic_variant(sign.group, 'totally_ramified'))
        assert ramified.character_group == FinGenAbGroup(torsion=(2,))

    def test_arithmetic_from_other_group(self, sign):
        other = arithmetic_variant(FiniteGroup.cyclic(3), 'unramified')
        with pytest.raises(InvalidArithmeticData, match="different group"):
            character_torus_data(sign, other)


class TestSandwich:
    """Test suite for X^Γ ⊆ X_*(X_T) ⊆ Pr_Γ(X)"""

    def test_swap_indices(self, swap):
        report = sandwich_report(swap, arithmetic_variant(swap.group, 'unramified'))
        assert (report.index_xt_over_x_gamma, report.index_pr_over_xt) == (2, 1)
        assert report.xt_rank == 1
        assert report.lattice_a is None

    def test_split_rank_one(self):
        X, arith = preset('split', arithmetic='unramified', rank=1)
        report = sandwich_report(X, arith)
        assert (report.index_xt_over_x_gamma, report.index_pr_over_xt) == (1, 1)

    def test_rank_zero(self):
        X, arith = preset('norm_one_cyclic', arithmetic='unramified', n=2)
        report = sandwich_report(X, arith)
        assert report.x_gamma.rank == report.cochar_xt.rank == report.pr_lattice.rank == 0
        assert (report.index_xt_over_x_gamma, report.index_pr_over_xt) == (1, 1)

    def test_every_preset_and_arithmetic(self):
        for key in catalog_keys():
            X, _ = preset(key)
            for arith in admissible_arithmetic(X.group):
                report = sandwich_report(X, arith)
                assert report.x_gamma_in_xt and report.xt_in_pr
                assert report.xt_rank == invariants(X).rank

    def test_cyclic_families(self):
        for n in range(2, 6):
            for key in ('norm_one_cyclic', 'weil_restriction'):
                X, _ = preset(key, n=n)
                for arith in admissible_arithmetic(X.group):
                    assert sandwich_report(X, arith).xt_in_pr


class TestXsComparison:
    """Test suite for the comparison of X_T with X_S"""

    def test_swap_unramified(self, swap):
        report = xs_comparison(swap, arithmetic_variant(swap.group, 'unramified'))
        assert report.lattices_equal
        assert report.unramified_equality_holds is True
        assert report.kernel_order == 1

    def test_a2_weyl(self):
        X, arith = preset('a2_weyl', arithmetic='totally_ramified')
        report = xs_comparison(X, arith)
        assert report.xt_rank == report.xs_rank == 0
        assert report.ranks_equal
        assert report.unramified_equality_holds is None

    def test_unramified_equality_on_cyclic_families(self):
        for n in range(2, 6):
            for key in ('norm_one_cyclic', 'weil_restriction'):
                X, arith = preset(key, arithmetic='unramified', n=n)
                assert xs_comparison(X, arith).unramified_equality_holds

    def test_ranks_agree_for_every_preset(self):
        for key in catalog_keys():
            X, _ = preset(key)
            for arith in admissible_arithmetic(X.group):
                assert xs_comparison(X, arith).ranks_equal


class TestSummary:
    """Test suite for torus summaries"""

    def test_sign_summary(self, sign):
        summary = torus_summary(sign)
        assert summary.anisotropic
        assert not summary.split
        assert summary.dimensions_agree
        assert summary.fixed_component_group == FinGenAbGroup(torsion=(2,))

    def test_split_summary(self):
        summary = torus_summary(preset('split', rank=2)[0])
        assert summary.split
        assert summary.split_rank == 2
        assert summary.coinvariant_connected

    def test_dimensions_agree_for_every_preset(self):
        for key in catalog_keys():
            assert torus_summary(preset(key)[0]).dimensions_agree

    def test_archimedean_dimension(self, swap):
        assert archimedean_character_space(swap) == 1
