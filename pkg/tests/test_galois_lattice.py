"""Test cases for finite groups, Galois lattices and local arithmetic data"""

from fractions import Fraction

import pytest

from src.catalog import preset
from src.exceptions import (
    InvalidArithmeticData,
    InvalidGroup,
    InvalidLattice,
    NotASubgroup,
    NotNormal,
)
from src.galois_lattice import (
    FiniteGroup,
    GaloisLattice,
    LocalArithmeticData,
    Subgroup,
    admissible_arithmetic,
    coinvariants,
    conjugate,
    direct_sum,
    dual_module,
    induce,
    invariants,
    norm_matrix,
    projection_lattice,
    regular_module,
    restrict_module,
)
from src.integer_linalg import FinGenAbGroup, IntegerMatrix, RationalLattice


@pytest.fixture
def s3():
    """S3 acting on the A2 root lattice"""
    return preset('a2_weyl')[0].group


@pytest.fixture
def sign_lattice():
    return preset('sign')[0]


@pytest.fixture
def regular_z2():
    return regular_module(FiniteGroup.cyclic(2))


class TestFiniteGroup:
    """Test suite for FiniteGroup"""

    def test_cyclic_table(self):
        G = FiniteGroup.cyclic(3)
        assert G.mult_table == [[0, 1, 2], [1, 2, 0], [2, 0, 1]]
        assert G.inv(1) == 2
        assert G.power(1, 5) == 2
        assert G.element_order(1) == 3
        assert G.is_cyclic() and G.is_abelian()

    def test_trivial_group(self):
        G = FiniteGroup.trivial()
        assert G.order == 1
        assert G.cyclic_generator() == 0

    def test_missing_inverse(self):
        with pytest.raises(InvalidGroup, match="inverse"):
            FiniteGroup([[0, 1], [1, 1]])

    def test_entries_out_of_range(self):
        with pytest.raises(InvalidGroup, match="out of range"):
            FiniteGroup([[0, 2], [2, 0]])

    def test_identity_must_be_identity(self):
        with pytest.raises(InvalidGroup, match="identity"):
            FiniteGroup([[1, 0], [0, 1]], identity_index=0)

    def test_matrix_generators(self, s3):
        assert s3.order == 6
        assert not s3.is_abelian()
        assert not s3.is_cyclic()

        group, matrices = FiniteGroup.from_matrix_generators([IntegerMatrix([[-1]])])
        assert group == FiniteGroup.cyclic(2)
        assert matrices == [IntegerMatrix([[1]]), IntegerMatrix([[-1]])]

    def test_non_unimodular_generator(self):
        with pytest.raises(InvalidGroup, match="unimodular"):
            FiniteGroup.from_matrix_generators([IntegerMatrix([[2]])])

    def test_subgroup_lattice_of_s3(self, s3):
        assert len(s3.subgroups()) == 6
        assert [s.order for s in s3.normal_subgroups()] == [1, 3, 6]


class TestSubgroup:
    """Test suite for Subgroup"""

    def test_not_closed(self):
        with pytest.raises(NotASubgroup, match="closed"):
            Subgroup(FiniteGroup.cyclic(4), [0, 1])

    def test_identity_first(self):
        sub = Subgroup(FiniteGroup.cyclic(4), [2, 0])
        assert sub.elements == (0, 2)
        assert sub.order == 2
        assert sub.index == 2
        assert sub.as_group() == FiniteGroup.cyclic(2)

    def test_whole_group(self):
        G = FiniteGroup.cyclic(2)
        assert Subgroup.whole(G).as_group() == G

    def test_cosets_and_quotient(self):
        sub = Subgroup(FiniteGroup.cyclic(4), [0, 2])
        assert sub.left_cosets() == [(0, 2), (1, 3)]
        assert sub.left_transversal() == [0, 1]
        quotient, projection = sub.quotient()
        assert quotient == FiniteGroup.cyclic(2)
        assert projection == [0, 1, 0, 1]

    def test_non_normal_quotient(self, s3):
        involution = next(g for g in s3.elements if s3.element_order(g) == 2)
        sub = s3.generated_subgroup([involution])
        assert not sub.is_normal()
        with pytest.raises(NotNormal):
            sub.quotient()


class TestGaloisLattice:
    """Test suite for lattices with a group action"""

    def test_validate_rejects_non_homomorphism(self):
        bad = GaloisLattice(FiniteGroup.cyclic(2), [IntegerMatrix([[1]]), IntegerMatrix([[2]])], check=False)
        report = bad.validate()
        assert not report.valid
        assert any("invertible" in f for f in report.failures)
        with pytest.raises(InvalidLattice):
            GaloisLattice(FiniteGroup.cyclic(2), [IntegerMatrix([[1]]), IntegerMatrix([[2]])])

    def test_validate_wrong_length(self):
        report = GaloisLattice(FiniteGroup.cyclic(3), [IntegerMatrix([[1]])] * 2, check=False).validate()
        assert not report.valid
        assert "expected 3 matrices" in report.failures[0]

    def test_sign_invariants_and_coinvariants(self, sign_lattice):
        assert invariants(sign_lattice).rank == 0
        assert coinvariants(sign_lattice) == FinGenAbGroup(torsion=(2,))
        assert projection_lattice(sign_lattice) == RationalLattice.zero(1)

    def test_regular_module(self, regular_z2):
        assert regular_z2.action[1] == IntegerMatrix([[0, 1], [1, 0]])
        assert invariants(regular_z2).basis == ((1, 1),)
        assert coinvariants(regular_z2) == FinGenAbGroup(free_rank=1)
        assert projection_lattice(regular_z2).basis == ((Fraction(1, 2), Fraction(1, 2)),)

    def test_norm_matrix(self, sign_lattice, regular_z2):
        assert norm_matrix(sign_lattice) == IntegerMatrix([[0]])
        assert norm_matrix(regular_z2) == IntegerMatrix([[1, 1], [1, 1]])
        assert norm_matrix(GaloisLattice.trivial_action(FiniteGroup.cyclic(3), 2)) == IntegerMatrix([[3, 0], [0, 3]])

    def test_trivial_action(self):
        X = GaloisLattice.trivial_action(FiniteGroup.cyclic(3), 2)
        assert X.acts_trivially()
        assert invariants(X) == RationalLattice.standard(2)
        assert coinvariants(X) == FinGenAbGroup(free_rank=2)
        assert projection_lattice(X) == RationalLattice.standard(2)

    def test_invariants_inside_projection(self):
        for name in ('sign', 'norm_one_cyclic', 'weil_restriction', 'a2_weyl', 'dihedral_plane'):
            X, _ = preset(name)
            assert invariants(X).is_sublattice_of(projection_lattice(X))

    def test_dual_module(self, sign_lattice):
        assert dual_module(sign_lattice) == sign_lattice
        X, _ = preset('a2_weyl')
        X_hat = dual_module(X)
        assert X_hat.validate().valid
        assert dual_module(X_hat) == X

    def test_induce_from_whole_group(self, sign_lattice):
        whole = Subgroup.whole(sign_lattice.group)
        assert induce(whole, sign_lattice) == sign_lattice

    def test_induce_from_trivial_subgroup(self):
        G = FiniteGroup.cyclic(2)
        trivial = Subgroup.trivial(G)
        induced = induce(trivial, GaloisLattice.trivial_action(trivial.as_group(), 1))
        assert induced.action[1] == IntegerMatrix([[0, 1], [1, 0]])

    def test_induce_rejects_foreign_module(self):
        G = FiniteGroup.cyclic(4)
        sub = Subgroup(G, [0, 2])
        with pytest.raises(NotASubgroup):
            induce(sub, GaloisLattice.trivial_action(FiniteGroup.cyclic(3), 1))

    def test_induced_module_is_valid_for_s3(self, s3):
        sub = s3.generated_subgroup([next(g for g in s3.elements if s3.element_order(g) == 3)])
        module = GaloisLattice(sub.as_group(), [IntegerMatrix([[1]])] * 3)
        induced = induce(sub, module)
        assert induced.rank == 2
        assert induced.validate().valid

    def test_restrict_module(self):
        X = regular_module(FiniteGroup.cyclic(4))
        restricted = restrict_module(X, Subgroup(X.group, [0, 2]))
        assert restricted.group.order == 2
        assert invariants(restricted).rank == 2

    def test_direct_sum_and_conjugate(self, sign_lattice, regular_z2):
        doubled = direct_sum(sign_lattice, sign_lattice)
        assert doubled.rank == 2
        assert coinvariants(doubled) == FinGenAbGroup(torsion=(2, 2))

        P = IntegerMatrix([[1, 1], [0, 1]])
        P_inv = IntegerMatrix([[1, -1], [0, 1]])
        assert coinvariants(conjugate(regular_z2, P, P_inv)) == coinvariants(regular_z2)
        with pytest.raises(InvalidLattice, match="inverse"):
            conjugate(regular_z2, P, P)


class TestLocalArithmeticData:
    """Test suite for inertia and Frobenius data"""

    def test_admissible_cyclic(self):
        data = admissible_arithmetic(FiniteGroup.cyclic(2))
        assert [(d.label, d.frobenius) for d in data] == [('unramified', 1), ('totally_ramified', 0)]
        assert len(admissible_arithmetic(FiniteGroup.cyclic(4))) == 4

    def test_admissible_s3(self, s3):
        labels = [d.label for d in admissible_arithmetic(s3)]
        assert labels == ['mixed', 'totally_ramified']

    def test_residue_degree(self):
        data = LocalArithmeticData(FiniteGroup.cyclic(4), [0], 1)
        assert data.residue_degree == 4
        assert data.is_unramified()

    def test_inertia_not_a_subgroup(self):
        with pytest.raises(InvalidArithmeticData, match="not a subgroup"):
            LocalArithmeticData(FiniteGroup.cyclic(4), [0, 1], 1)

    def test_frobenius_out_of_range(self):
        with pytest.raises(InvalidArithmeticData, match="not a group element"):
            LocalArithmeticData(FiniteGroup.cyclic(2), [0], 5)

    def test_frobenius_must_generate(self):
        with pytest.raises(InvalidArithmeticData, match="generate"):
            LocalArithmeticData(FiniteGroup.cyclic(4), [0], 2)

    def test_non_cyclic_quotient(self, s3):
        with pytest.raises(InvalidArithmeticData, match="generate"):
            LocalArithmeticData(s3, [0], 1)

    def test_non_normal_inertia(self, s3):
        involution = next(g for g in s3.elements if s3.element_order(g) == 2)
        with pytest.raises(InvalidArithmeticData, match="normal"):
            LocalArithmeticData(s3, [0, involution], 0)
