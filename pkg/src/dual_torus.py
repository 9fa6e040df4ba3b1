"""Diagonalizable groups attached to a torus and the unramified character torus.

A complex diagonalizable group is represented by its character group. For
T̂ = Hom(X̂, ℂ*) the duality rules are: the character group of T̂^Γ is X̂_Γ,
that of T̂_Γ is X̂^Γ, the identity component keeps the free part and the
component group is the torsion part.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple
import logging

from .exceptions import InvalidArithmeticData, InvariantViolation
from .galois_lattice import (
    GaloisLattice,
    LocalArithmeticData,
    coinvariants,
    dual_module,
    invariants,
    projection_lattice,
)
from .integer_linalg import (
    INFINITE,
    FinGenAbGroup,
    IndexValue,
    IntegerMatrix,
    RationalLattice,
    dual_lattice,
    kernel_lattice,
    lattice_index,
    lattice_quotient,
)

logger = logging.getLogger(__name__)

IOTA_NOTE = "modeling choice iota: [y] -> (x -> <x, y>) for x in X^Gamma"


@dataclass(frozen=True)
class DiagonalizableGroup:
    character_group: FinGenAbGroup
    generators: Optional[Tuple[Tuple[Fraction, ...], ...]] = field(default=None, compare=False)
    action: Optional[Tuple[IntegerMatrix, ...]] = field(default=None, compare=False, repr=False)

    @property
    def dimension(self) -> int:
        return self.character_group.free_rank

    def is_connected(self) -> bool:
        return not self.character_group.torsion

    def is_finite(self) -> bool:
        return self.character_group.free_rank == 0


def dual_torus_of(X: GaloisLattice) -> DiagonalizableGroup:
    """T̂: character group X̂, free of rank X.rank, with the contragredient action kept"""
    X_hat = dual_module(X)
    return DiagonalizableGroup(FinGenAbGroup(free_rank=X.rank), action=X_hat.action)


def fixed_points(X: GaloisLattice) -> DiagonalizableGroup:
    """T̂^Γ, whose character group is X̂_Γ"""
    return DiagonalizableGroup(coinvariants(dual_module(X)))


def coinvariant_group(X: GaloisLattice) -> DiagonalizableGroup:
    """T̂_Γ, whose character group is X̂^Γ"""
    X_hat_gamma = invariants(dual_module(X))
    return DiagonalizableGroup(FinGenAbGroup(free_rank=X_hat_gamma.rank), generators=X_hat_gamma.basis)


def identity_component(D: DiagonalizableGroup) -> DiagonalizableGroup:
    return DiagonalizableGroup(D.character_group.free_quotient(), generators=D.generators)


def component_group(D: DiagonalizableGroup) -> FinGenAbGroup:
    return D.character_group.torsion_subgroup()


# ---------------------------------------------------------------------------
# X_T
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CharacterTorusData:
    """Everything computed on the way to X_*(X_T).

    ``lifts`` is the lattice of ŷ ∈ X̂ whose class in X̂_I is Fr-invariant,
    ``pairing_image`` is L_T = ι(lifts) in Hom(X^Γ, ℤ) = ℤ^k written in the
    basis of X^Γ, and ``cocharacters`` is its dual carried back to ℚ⊗X.
    """

    character_group: FinGenAbGroup
    lifts: RationalLattice
    pairing_image: RationalLattice
    pairing_index: IndexValue
    cocharacters: RationalLattice


def _pairing_lattice(X_gamma: RationalLattice, lifts: RationalLattice) -> RationalLattice:
    """ι(lifts) ⊆ ℤ^k, k = rank X^Γ"""
    k = X_gamma.rank
    images = [
        [sum(b_i * y_i for b_i, y_i in zip(b, y)) for b in X_gamma.basis]
        for y in lifts.basis
    ]
    return RationalLattice.from_generators(images, k)


def _to_ambient(X_gamma: RationalLattice, lattice: RationalLattice) -> RationalLattice:
    basis = X_gamma.basis
    vectors = [
        [sum(c * b[j] for c, b in zip(coefficients, basis)) for j in range(X_gamma.ambient_dim)]
        for coefficients in lattice.basis
    ]
    return RationalLattice.from_generators(vectors, X_gamma.ambient_dim)


def _cocharacters(X_gamma: RationalLattice, lifts: RationalLattice) -> Tuple[RationalLattice, RationalLattice]:
    image = _pairing_lattice(X_gamma, lifts)
    if X_gamma.rank == 0:
        return image, RationalLattice.zero(X_gamma.ambient_dim)
    dual = dual_lattice(image, IntegerMatrix.identity(X_gamma.rank))
    return image, _to_ambient(X_gamma, dual)


def _check_arithmetic(X: GaloisLattice, arith: LocalArithmeticData):
    if arith.group != X.group:
        raise InvalidArithmeticData("arithmetic data belongs to a different group")


def character_torus_data(X: GaloisLattice, arith: LocalArithmeticData) -> CharacterTorusData:
    _check_arithmetic(X, arith)
    X_hat = dual_module(X)
    r = X.rank
    identity = IntegerMatrix.identity(r)
    inertia_span = IntegerMatrix.hstack(
        [X_hat.action[i] - identity for i in arith.inertia.elements], r
    )
    frobenius = X_hat.action[arith.frobenius] - identity
    joint = kernel_lattice(IntegerMatrix.hstack([frobenius, inertia_span], r))
    lifts = RationalLattice.from_generators([v[:r] for v in joint.basis], r)
    character_group = lattice_quotient(lifts, RationalLattice.column_span(inertia_span))

    X_gamma = invariants(X)
    image, cocharacters = _cocharacters(X_gamma, lifts)
    index = lattice_index(image, RationalLattice.standard(X_gamma.rank))
    logger.debug(f"(T^I)_Fr character group {character_group}, [Z^k : L_T] = {index}")
    return CharacterTorusData(character_group, lifts, image, index, cocharacters)


def frobenius_coinvariant_group(X: GaloisLattice, arith: LocalArithmeticData) -> DiagonalizableGroup:
    """(T̂^I)_Fr, torsion included"""
    data = character_torus_data(X, arith)
    return DiagonalizableGroup(data.character_group, generators=data.lifts.basis)


def unramified_character_torus(X: GaloisLattice,
                               arith: LocalArithmeticData) -> Tuple[DiagonalizableGroup, RationalLattice]:
    """X_T = ((T̂^I)_Fr)° and its cocharacter lattice inside ℚ⊗X^Γ"""
    data = character_torus_data(X, arith)
    torus = identity_component(DiagonalizableGroup(data.character_group, generators=data.lifts.basis))
    return torus, data.cocharacters


def split_cocharacters(X: GaloisLattice) -> RationalLattice:
    """Cocharacter lattice of X_S (character lattice X̂^Γ) under the same ι"""
    return _cocharacters(invariants(X), invariants(dual_module(X)))[1]


@dataclass
class SandwichReport:
    x_gamma: RationalLattice
    cochar_xt: RationalLattice
    pr_lattice: RationalLattice
    x_gamma_in_xt: bool
    xt_in_pr: bool
    index_xt_over_x_gamma: IndexValue
    index_pr_over_xt: IndexValue
    xt_rank: int
    arithmetic: str
    lattice_a: None = None
    notes: List[str] = field(default_factory=lambda: [IOTA_NOTE, "lattice A not computed"])


def sandwich_report(X: GaloisLattice, arith: LocalArithmeticData) -> SandwichReport:
    """X^Γ ⊆ X_*(X_T) ⊆ Pr_Γ(X) with both indices"""
    x_gamma = invariants(X)
    _, cochar = unramified_character_torus(X, arith)
    pr = projection_lattice(X)
    lower = x_gamma.is_sublattice_of(cochar)
    upper = cochar.is_sublattice_of(pr)
    if not (lower and upper):
        raise InvariantViolation(
            f"sandwich inclusions fail for {arith!r}: X^G in X_*(X_T) {lower}, X_*(X_T) in Pr {upper}"
        )
    report = SandwichReport(
        x_gamma=x_gamma,
        cochar_xt=cochar,
        pr_lattice=pr,
        x_gamma_in_xt=lower,
        xt_in_pr=upper,
        index_xt_over_x_gamma=lattice_index(x_gamma, cochar),
        index_pr_over_xt=lattice_index(cochar, pr),
        xt_rank=cochar.rank,
        arithmetic=arith.label,
    )
    if report.xt_rank != x_gamma.rank:
        raise InvariantViolation(f"rank X_*(X_T) = {report.xt_rank} but rank X^G = {x_gamma.rank}")
    if INFINITE in (report.index_xt_over_x_gamma, report.index_pr_over_xt):
        raise InvariantViolation("sandwich indices must be finite")
    return report


@dataclass
class XsComparison:
    xt_rank: int
    xs_rank: int
    ranks_equal: bool
    lattices_equal: bool
    inertia_trivial: bool
    kernel_order: IndexValue
    cochar_xt: RationalLattice
    cochar_xs: RationalLattice

    @property
    def unramified_equality_holds(self) -> Optional[bool]:
        return self.lattices_equal if self.inertia_trivial else None


def xs_comparison(X: GaloisLattice, arith: LocalArithmeticData) -> XsComparison:
    """Compare X_T with X_S ≈ T̂_Γ; the kernel of X_T → X_S has order [X_*(X_S) : X_*(X_T)]"""
    _, cochar_xt = unramified_character_torus(X, arith)
    cochar_xs = split_cocharacters(X)
    xs = coinvariant_group(X)
    return XsComparison(
        xt_rank=cochar_xt.rank,
        xs_rank=xs.dimension,
        ranks_equal=cochar_xt.rank == xs.dimension == cochar_xs.rank,
        lattices_equal=cochar_xt == cochar_xs,
        inertia_trivial=arith.is_unramified(),
        kernel_order=lattice_index(cochar_xt, cochar_xs),
        cochar_xt=cochar_xt,
        cochar_xs=cochar_xs,
    )


# ---------------------------------------------------------------------------
# Summaries
# ---------------------------------------------------------------------------

@dataclass
class TorusSummary:
    rank: int
    split_rank: int
    anisotropic: bool
    split: bool
    lie_invariant_dim: int
    projection_rank: int
    fixed_identity_dim: int
    coinvariant_dim: int
    coinvariant_connected: bool
    fixed_component_group: FinGenAbGroup

    @property
    def dimensions_agree(self) -> bool:
        return len({self.split_rank, self.lie_invariant_dim, self.projection_rank,
                    self.fixed_identity_dim, self.coinvariant_dim}) == 1


def torus_summary(X: GaloisLattice) -> TorusSummary:
    """Ranks that the exponential sequences force to agree, plus connectedness data"""
    x_gamma = invariants(X)
    fixed = fixed_points(X)
    coinv = coinvariant_group(X)
    return TorusSummary(
        rank=X.rank,
        split_rank=x_gamma.rank,
        anisotropic=x_gamma.rank == 0,
        split=X.acts_trivially(),
        lie_invariant_dim=x_gamma.rank,
        projection_rank=projection_lattice(X).rank,
        fixed_identity_dim=identity_component(fixed).dimension,
        coinvariant_dim=coinv.dimension,
        coinvariant_connected=coinv.is_connected(),
        fixed_component_group=component_group(fixed),
    )


def archimedean_character_space(X: GaloisLattice) -> int:
    """Complex dimension of the unramified characters when the value group is ℝ"""
    return invariants(X).rank
