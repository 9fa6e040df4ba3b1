"""Test cases for group cohomology with lattice and finite coefficients"""

import pytest

from src.catalog import catalog_keys, preset
from src.cohomology import (
    CoefficientModule,
    brute_force_cohomology,
    cochain_complex,
    cohomology_group,
    corestriction_restriction_check,
    cyclic_oracle,
    inflation_restriction_check,
    is_coboundary,
    is_cocycle,
    restriction,
    tate_cohomology,
)
from src.exceptions import BadParams, BudgetExceeded, InvalidLattice, NotCyclic
from src.galois_lattice import (
    FiniteGroup,
    GaloisLattice,
    Subgroup,
    coinvariants,
    conjugate,
    direct_sum,
    dual_module,
    regular_module,
)
from src.integer_linalg import FinGenAbGroup, IntegerMatrix

Z2 = FinGenAbGroup(torsion=(2,))
ZERO = FinGenAbGroup.trivial()


def _character(group: FiniteGroup, kernel) -> GaloisLattice:
    return GaloisLattice(group, [IntegerMatrix([[1 if g in kernel else -1]]) for g in group.elements])


@pytest.fixture
def c2():
    return FiniteGroup.cyclic(2)


@pytest.fixture
def sign_module():
    X, _ = preset('sign')
    return CoefficientModule.lattice(X)


@pytest.fixture
def trivial_z(c2):
    return CoefficientModule.lattice(GaloisLattice.trivial_action(c2, 1))


@pytest.fixture
def inversion_mod4():
    """ℤ/4 with σ ∈ ℤ/4 acting by −1"""
    group = FiniteGroup.cyclic(4)
    matrices = [IntegerMatrix([[(-1) ** g]]) for g in group.elements]
    return group, CoefficientModule.from_mod_action(group, matrices, 4)


class TestCoefficientModule:
    """Test suite for coefficient modules"""

    def test_finite_reduction(self, sign_module):
        X, _ = preset('sign')
        finite = CoefficientModule.finite(X, 4)
        assert finite.kind == 'finite'
        assert finite.size == 4
        assert finite.action[1] == IntegerMatrix([[3]])
        assert sign_module.kind == 'lattice'
        assert sign_module.size is None

    def test_rejects_non_homomorphism(self, c2):
        with pytest.raises(InvalidLattice, match="homomorphism"):
            CoefficientModule.from_mod_action(c2, [IntegerMatrix([[1]]), IntegerMatrix([[2]])], 4)

    def test_rejects_small_modulus(self, c2):
        with pytest.raises(BadParams, match="at least 2"):
            CoefficientModule.from_mod_action(c2, [IntegerMatrix([[1]])] * 2, 1)


class TestCochainComplex:
    """Test suite for the bar complex"""

    def test_composition_vanishes(self):
        modules = [preset(key)[0] for key in ('sign', 'weil_restriction', 'a2_weyl')]
        for X in modules:
            d = cochain_complex(X.group, CoefficientModule.lattice(X), 2)
            for k in range(len(d) - 1):
                assert (d[k + 1] @ d[k]).is_zero()

    def test_shapes(self, sign_module, c2):
        d = cochain_complex(c2, sign_module, 2)
        assert [m.shape for m in d] == [(2, 1), (4, 2), (8, 4)]

    def test_degree_cap(self, sign_module, c2):
        with pytest.raises(BadParams, match="complex degree"):
            cochain_complex(c2, sign_module, 4)

    def test_trivial_group_differentials(self):
        group = FiniteGroup.trivial()
        M = CoefficientModule.lattice(GaloisLattice.trivial_action(group, 2))
        d = cochain_complex(group, M, 3)
        assert d[0].is_zero()
        assert cohomology_group(group, M, 1).group == ZERO
        assert cohomology_group(group, M, 2).group == ZERO

    def test_cocycle_and_coboundary(self, sign_module, c2):
        assert is_cocycle(c2, sign_module, 1, (0, 1))
        assert not is_coboundary(c2, sign_module, 1, (0, 1))
        assert is_coboundary(c2, sign_module, 1, (0, 2))
        assert not is_cocycle(c2, sign_module, 1, (1, 0))


class TestCohomologyGroup:
    """Test suite for H^n from the resolution"""

    def test_sign_h1(self, sign_module, c2):
        assert cohomology_group(c2, sign_module, 1).group == Z2

    def test_regular_module_h1(self, c2):
        M = CoefficientModule.lattice(regular_module(c2))
        assert cohomology_group(c2, M, 1).group == ZERO

    def test_h0_trivial_action(self, trivial_z, c2):
        assert cohomology_group(c2, trivial_z, 0).group == FinGenAbGroup(free_rank=1)
        split, _ = preset('split', rank=3)
        M = CoefficientModule.lattice(split)
        assert cohomology_group(split.group, M, 0).group == FinGenAbGroup(free_rank=3)

    def test_h2_trivial_z(self, trivial_z, c2):
        assert cohomology_group(c2, trivial_z, 2).group == Z2

    def test_entries_beyond_64_bits(self, c2):
        P = IntegerMatrix([[1, 10 ** 10], [0, 1]])
        P_inv = IntegerMatrix([[1, -10 ** 10], [0, 1]])
        swap = regular_module(c2)
        Y = conjugate(swap, P, P_inv)
        assert max(abs(v) for row in Y.action[1].to_lists() for v in row) > 2 ** 63
        M = CoefficientModule.lattice(Y)
        assert cohomology_group(c2, M, 1).group == ZERO
        assert cohomology_group(c2, M, 2).group == cohomology_group(c2, CoefficientModule.lattice(swap), 2).group

    def test_large_change_of_basis_keeps_cohomology(self, c2):
        X = direct_sum(preset('sign')[0], GaloisLattice.trivial_action(c2, 1))
        P = IntegerMatrix([[1, 3 * 10 ** 9], [0, 1]])
        Y = conjugate(X, P, IntegerMatrix([[1, -3 * 10 ** 9], [0, 1]]))
        for n in (1, 2):
            assert cohomology_group(c2, CoefficientModule.lattice(Y), n).group == Z2

    def test_finite_examples(self, c2, inversion_mod4):
        trivial_mod2 = CoefficientModule.from_mod_action(c2, [IntegerMatrix([[1]])] * 2, 2)
        assert cohomology_group(c2, trivial_mod2, 1).group == Z2
        assert brute_force_cohomology(c2, trivial_mod2, 1) == Z2

        group, M = inversion_mod4
        inversion_c2 = CoefficientModule.from_mod_action(c2, [IntegerMatrix([[1]]), IntegerMatrix([[-1]])], 4)
        assert cohomology_group(c2, inversion_c2, 1).group == Z2
        assert brute_force_cohomology(c2, inversion_c2, 1) == Z2
        assert cohomology_group(group, M, 1).group == brute_force_cohomology(group, M, 1)

    def test_finite_trivial_group_h2(self):
        group = FiniteGroup.trivial()
        M = CoefficientModule.from_mod_action(group, [IntegerMatrix([[1, 0], [0, 1]])], 3)
        assert cohomology_group(group, M, 2).group == ZERO
        assert brute_force_cohomology(group, M, 2) == ZERO

    def test_degree_out_of_range(self, sign_module, c2):
        with pytest.raises(BadParams, match="degree"):
            cohomology_group(c2, sign_module, 3)

    def test_module_over_other_group(self, sign_module):
        with pytest.raises(BadParams, match="different group"):
            cohomology_group(FiniteGroup.cyclic(3), sign_module, 1)

    def test_representatives(self, sign_module, c2):
        H1 = cohomology_group(c2, sign_module, 1, representatives=True)
        assert len(H1.representatives) == 1
        generator = H1.representatives[0]
        assert is_cocycle(c2, sign_module, 1, generator)
        assert not H1.is_zero_class(generator)
        assert H1.is_zero_class((0, 2))

    def test_class_of_needs_representatives(self, sign_module, c2):
        with pytest.raises(BadParams, match="representatives"):
            cohomology_group(c2, sign_module, 1).class_of((0, 1))

    def test_sign_fault_is_visible(self, trivial_z, c2):
        faulty = cohomology_group(c2, trivial_z, 1, sign_fault=True).group
        assert faulty == Z2
        assert faulty != cyclic_oracle(c2, trivial_z, 1)


class TestOracles:
    """Test suite for the independent cohomology oracles"""

    def test_cyclic_oracle_examples(self, sign_module, trivial_z, c2):
        assert cyclic_oracle(c2, sign_module, 1) == Z2
        assert cyclic_oracle(c2, sign_module, 2) == ZERO
        assert cyclic_oracle(c2, trivial_z, 1) == ZERO
        assert cyclic_oracle(c2, trivial_z, 2) == Z2

    def test_cyclic_oracle_matches_resolution(self):
        for n in range(2, 7):
            for key in ('norm_one_cyclic', 'weil_restriction'):
                X, _ = preset(key, n=n)
                M = CoefficientModule.lattice(X)
                for degree in (1, 2):
                    assert cohomology_group(X.group, M, degree).group == cyclic_oracle(X.group, M, degree)

    def test_norm_one_cyclic_h1(self):
        X, _ = preset('norm_one_cyclic', n=5)
        M = CoefficientModule.lattice(X)
        assert cohomology_group(X.group, M, 1).group == FinGenAbGroup(torsion=(5,))
        assert cohomology_group(X.group, M, 2).group == ZERO

    def test_periodicity(self):
        for n in (2, 3, 4):
            group = FiniteGroup.cyclic(n)
            modules = [
                CoefficientModule.lattice(preset('norm_one_cyclic', n=n)[0]),
                CoefficientModule.lattice(GaloisLattice.trivial_action(group, 1)),
            ]
            for M in modules:
                for degree in (1, 2):
                    assert cohomology_group(group, M, degree).group == cyclic_oracle(group, M, degree + 2)

    def test_non_generator_rejected(self):
        group = FiniteGroup.cyclic(4)
        M = CoefficientModule.lattice(GaloisLattice.trivial_action(group, 1))
        with pytest.raises(NotCyclic, match="does not generate"):
            cyclic_oracle(group, M, 1, generator=2)

    def test_enumeration_matches_resolution(self):
        s3 = preset('a2_weyl')[0].group
        a3 = [g for g in s3.elements if s3.element_order(g) in (1, 3)]
        cases = [
            (FiniteGroup.cyclic(2), preset('weil_restriction')[0], 2, (1, 2)),
            (FiniteGroup.cyclic(3), preset('norm_one_cyclic')[0], 2, (1, 2)),
            (FiniteGroup.cyclic(2), preset('sign')[0], 3, (1, 2)),
            (s3, _character(s3, a3), 3, (1,)),
            (s3, _character(s3, a3), 2, (1,)),
        ]
        for group, X, modulus, degrees in cases:
            M = CoefficientModule.finite(X, modulus)
            for n in degrees:
                assert cohomology_group(group, M, n).group == brute_force_cohomology(group, M, n)

    def test_enumeration_budget(self, c2):
        X, _ = preset('sign')
        M = CoefficientModule.finite(X, 2)
        with pytest.raises(BudgetExceeded, match="budget"):
            brute_force_cohomology(c2, M, 2, budget=10)

    def test_enumeration_needs_finite_module(self, sign_module, c2):
        with pytest.raises(BadParams, match="finite"):
            brute_force_cohomology(c2, sign_module, 1)

    def test_shapiro_vanishing(self):
        groups = [FiniteGroup.cyclic(n) for n in (2, 3, 4)] + [preset('a2_weyl')[0].group]
        for group in groups:
            M = CoefficientModule.lattice(regular_module(group))
            for n in (1, 2):
                assert cohomology_group(group, M, n).group == ZERO

    def test_h1_matches_dual_coinvariant_torsion(self):
        for key in catalog_keys():
            X, _ = preset(key)
            H1 = cohomology_group(X.group, CoefficientModule.lattice(X), 1).group
            assert H1.order == coinvariants(dual_module(X)).torsion_order


class TestTateCohomology:
    """Test suite for Tate cohomology in degrees -1 and 0"""

    def test_examples(self, sign_module, trivial_z, c2):
        assert tate_cohomology(c2, sign_module, 0) == ZERO
        assert tate_cohomology(c2, trivial_z, -1) == ZERO
        assert tate_cohomology(c2, trivial_z, 0) == Z2
        group = FiniteGroup.cyclic(3)
        assert tate_cohomology(group, CoefficientModule.lattice(regular_module(group)), -1) == ZERO

    def test_agrees_with_cyclic_formula(self):
        for n in (2, 3, 4):
            M = CoefficientModule.lattice(preset('norm_one_cyclic', n=n)[0])
            group = FiniteGroup.cyclic(n)
            assert tate_cohomology(group, M, 0) == cyclic_oracle(group, M, 2)
            assert tate_cohomology(group, M, -1) == cyclic_oracle(group, M, 1)

    def test_other_degrees(self, sign_module, c2):
        with pytest.raises(BadParams, match="-1 and 0"):
            tate_cohomology(c2, sign_module, 1)


class TestRestrictionMaps:
    """Test suite for restriction, corestriction and inflation"""

    def test_restriction_to_trivial_subgroup(self, sign_module, c2):
        H1 = cohomology_group(c2, sign_module, 1, representatives=True)
        trivial = Subgroup.trivial(c2)
        restricted = restriction(c2, trivial, sign_module, 1, H1.representatives[0])
        assert is_coboundary(trivial.as_group(), sign_module.restrict(trivial), 1, restricted)

    def test_cor_res_on_sign(self, sign_module, c2):
        report = corestriction_restriction_check(c2, Subgroup.trivial(c2), sign_module, 1)
        assert report.passed
        assert report.details['index'] == 2

    def test_cor_res_cyclic4(self, inversion_mod4):
        group, M = inversion_mod4
        sub = Subgroup(group, [0, 2])
        lattice = CoefficientModule.lattice(_character(group, {0, 2}))
        for module in (M, lattice):
            for n in (1, 2):
                report = corestriction_restriction_check(group, sub, module, n)
                assert report.passed, report.failures

    def test_cor_res_s3(self):
        X, _ = preset('a2_weyl')
        s3 = X.group
        a3 = s3.generated_subgroup([next(g for g in s3.elements if s3.element_order(g) == 3)])
        for module in (CoefficientModule.lattice(X), CoefficientModule.finite(X, 3)):
            assert corestriction_restriction_check(s3, a3, module, 1).passed

    def test_inflation_restriction(self, inversion_mod4):
        group, M = inversion_mod4
        report = inflation_restriction_check(group, Subgroup(group, [0, 2]), M)
        assert report.passed, report.failures
        assert report.details['H1_group'] == 2

    def test_inflation_restriction_needs_finite_module(self, sign_module, c2):
        with pytest.raises(BadParams, match="finite"):
            inflation_restriction_check(c2, Subgroup.trivial(c2), sign_module)
