"""Unramified quotient of the relative Weil group and its explicit cocycles.

The model group is ℤ: the element m maps to Fr^m in Γ and has
log_q|ω| = FROBENIUS_LOG_SIGN·m. Lie vectors are rational vectors in ℚ⊗X,
torsion points of T̂ = X⊗ℂ* are rational vectors taken mod 1, and the
exponential is reduction mod 1.
"""

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Dict, Iterable, List, Optional, Sequence, Tuple
import logging

import numpy as np

from .config import config
from .exceptions import BadParams, InvariantViolation, NotCyclic, NotInvariant
from .galois_lattice import GaloisLattice, LocalArithmeticData, invariants
from .integer_linalg import (
    FinGenAbGroup,
    IntegerMatrix,
    RationalLattice,
    kernel_mod,
    lattice_quotient,
    rational_solve,
)

logger = logging.getLogger(__name__)

FROBENIUS_LOG_SIGN = int(config.get('weil.frobenius_log_sign', -1))

LieVector = Tuple[Fraction, ...]
TorsionPoint = Tuple[Fraction, ...]


def _rational_vector(values: Iterable) -> Tuple[Fraction, ...]:
    return tuple(v if isinstance(v, Fraction) else Fraction(v) for v in values)


def reduce_mod_one(vector: Iterable) -> TorsionPoint:
    """The normalized exponential e(x) = x mod 1, coordinatewise"""
    return tuple(v - (v.numerator // v.denominator) for v in _rational_vector(vector))


def _apply(matrix: IntegerMatrix, vector: Sequence[Fraction]) -> Tuple[Fraction, ...]:
    rows = matrix.to_lists()
    return tuple(sum((a * v for a, v in zip(row, vector)), Fraction(0)) for row in rows)


@dataclass(frozen=True)
class WeilModelElement:
    m: int

    def __mul__(self, other: 'WeilModelElement') -> 'WeilModelElement':
        return WeilModelElement(self.m + other.m)

    @property
    def log_abs(self) -> int:
        """log_q |ω|"""
        return FROBENIUS_LOG_SIGN * self.m


class UnramifiedWeilModel:
    """ℤ → ⟨Fr⟩ = Γ acting on a torus over a cyclic group"""

    def __init__(self, torus: GaloisLattice, frobenius: Optional[int] = None):
        group = torus.group
        if frobenius is None:
            frobenius = group.cyclic_generator()
        if group.element_order(frobenius) != group.order:
            raise NotCyclic(f"element {frobenius} does not generate a group of order {group.order}")
        self.torus = torus
        self.frobenius = frobenius
        self.degree = group.order

    @classmethod
    def from_arithmetic(cls, torus: GaloisLattice, arith: LocalArithmeticData) -> 'UnramifiedWeilModel':
        if not arith.is_unramified():
            raise NotCyclic("the Weil model needs unramified arithmetic data")
        return cls(torus, arith.frobenius)

    def galois_image(self, omega: WeilModelElement) -> int:
        return self.torus.group.power(self.frobenius, omega.m % self.degree)

    def frobenius_matrix(self, m: int) -> IntegerMatrix:
        return self.torus.action[self.torus.group.power(self.frobenius, m % self.degree)]

    def is_invariant(self, nu: Sequence) -> bool:
        nu = _rational_vector(nu)
        return all(_apply(a, nu) == nu for a in self.torus.action)

    def is_invariant_torsion(self, s: Sequence) -> bool:
        s = reduce_mod_one(s)
        return all(reduce_mod_one(_apply(a, s)) == s for a in self.torus.action)

    def sample_pairs(self, bound: Optional[int] = None) -> List[Tuple[WeilModelElement, WeilModelElement]]:
        bound = config.get('weil.sample_bound', 10) if bound is None else bound
        steps = range(-bound, bound + 1)
        return [(WeilModelElement(a), WeilModelElement(b)) for a in steps for b in steps]


def _zeta(nu: LieVector, omega: WeilModelElement) -> LieVector:
    return tuple(omega.log_abs * v for v in nu)


def zeta(nu: Sequence, omega: WeilModelElement, model: UnramifiedWeilModel) -> LieVector:
    """ζ_ν(ω) = (log_q|ω|)·ν"""
    nu = _rational_vector(nu)
    if not model.is_invariant(nu):
        raise NotInvariant(f"{nu} is not Galois invariant")
    return _zeta(nu, omega)


def z_cocycle(s: Sequence, omega: WeilModelElement, model: UnramifiedWeilModel) -> TorsionPoint:
    """z_s(ω) = s^{log_q|ω|}, written additively mod 1"""
    s = reduce_mod_one(s)
    if not model.is_invariant_torsion(s):
        raise NotInvariant(f"{s} is not a Galois-invariant torsion point")
    return reduce_mod_one(omega.log_abs * v for v in s)


@dataclass
class CocycleCheckReport:
    passed: bool
    checked: int
    first_failure: Optional[Tuple[int, int]] = None


def verify_zeta_cocycle(nu: Sequence, model: UnramifiedWeilModel,
                        pairs: Optional[Sequence[Tuple[WeilModelElement, WeilModelElement]]] = None) -> CocycleCheckReport:
    """ζ(ω₁ω₂) = ζ(ω₁) + Fr^{m₁}·ζ(ω₂) on every pair; ν is not required to be invariant"""
    nu = _rational_vector(nu)
    pairs = model.sample_pairs() if pairs is None else pairs
    for checked, (w1, w2) in enumerate(pairs):
        left = _zeta(nu, w1 * w2)
        twisted = _apply(model.frobenius_matrix(w1.m), _zeta(nu, w2))
        right = tuple(a + b for a, b in zip(_zeta(nu, w1), twisted))
        if left != right:
            return CocycleCheckReport(False, checked + 1, (w1.m, w2.m))
    return CocycleCheckReport(True, len(pairs))


def verify_z_cocycle(s: Sequence, model: UnramifiedWeilModel,
                     pairs: Optional[Sequence[Tuple[WeilModelElement, WeilModelElement]]] = None) -> CocycleCheckReport:
    s = reduce_mod_one(s)
    pairs = model.sample_pairs() if pairs is None else pairs

    def raw(omega: WeilModelElement) -> TorsionPoint:
        return reduce_mod_one(omega.log_abs * v for v in s)

    for checked, (w1, w2) in enumerate(pairs):
        left = raw(w1 * w2)
        twisted = _apply(model.frobenius_matrix(w1.m), raw(w2))
        right = reduce_mod_one(a + b for a, b in zip(raw(w1), twisted))
        if left != right:
            return CocycleCheckReport(False, checked + 1, (w1.m, w2.m))
    return CocycleCheckReport(True, len(pairs))


def is_coboundary_zeta(nu: Sequence, model: UnramifiedWeilModel) -> bool:
    """Whether ζ_ν = Fr^m·μ − μ for some μ ∈ ℚ⊗X.

    A cocycle on ℤ is determined by its value at the generator, so this is
    solvability of (Fr − 1)μ = ζ_ν(1).
    """
    nu = _rational_vector(nu)
    if not model.is_invariant(nu):
        raise NotInvariant(f"{nu} is not Galois invariant")
    F = model.frobenius_matrix(1) - IntegerMatrix.identity(model.torus.rank)
    target = _zeta(nu, WeilModelElement(1))
    return rational_solve(F.to_lists(), list(target)) is not None


def exp_compatibility(nu: Sequence, model: UnramifiedWeilModel,
                      bound: Optional[int] = None) -> CocycleCheckReport:
    """e(ζ_ν(ω)) = z_{e(ν)}(ω) for every |m| ≤ bound"""
    nu = _rational_vector(nu)
    bound = config.get('weil.sample_bound', 10) if bound is None else bound
    s = reduce_mod_one(nu)
    steps = list(range(-bound, bound + 1))
    for checked, m in enumerate(steps):
        omega = WeilModelElement(m)
        if reduce_mod_one(_zeta(nu, omega)) != z_cocycle(s, omega, model):
            return CocycleCheckReport(False, checked + 1, (m, 0))
    return CocycleCheckReport(True, len(steps))


# ---------------------------------------------------------------------------
# H¹ of ⟨Fr⟩ with torsion coefficients
# ---------------------------------------------------------------------------

@dataclass
class FrobeniusH1Report:
    modulus: int
    group: FinGenAbGroup
    enumerated: FinGenAbGroup

    @property
    def agree(self) -> bool:
        return self.group == self.enumerated

    @property
    def count(self) -> int:
        return self.group.order


def _inertia_fixed(X: GaloisLattice, inertia: Sequence[int], m: int) -> RationalLattice:
    identity = IntegerMatrix.identity(X.rank)
    stacked = IntegerMatrix.vstack([X.action[i] - identity for i in inertia], X.rank)
    return kernel_mod(stacked, m)


def frobenius_h1_count(X: GaloisLattice, arith: LocalArithmeticData, m: int) -> FrobeniusH1Report:
    """(T̂[m]^I)_Fr from Smith normal form and from listing classes a ~ a + (Fr−1)b"""
    if m < 2:
        raise BadParams(f"modulus must be at least 2, got {m}")
    r = X.rank
    fixed = _inertia_fixed(X, arith.inertia.elements, m)
    F = X.action[arith.frobenius] - IntegerMatrix.identity(r)
    images = [F.apply([int(v) for v in b]) for b in fixed.basis]
    scaled = [[m * int(i == j) for j in range(r)] for i in range(r)]
    group = lattice_quotient(fixed, RationalLattice.from_generators(images + scaled, r))

    elements = [
        v for v in product(range(m), repeat=r)
        if all(all(x % m == 0 for x in (X.action[i] - IntegerMatrix.identity(r)).apply(v))
               for i in arith.inertia.elements)
    ]
    boundaries = {tuple(x % m for x in F.apply(b)) for b in elements}
    orders = []
    for a in elements:
        k, w = 1, a
        while w not in boundaries:
            w = tuple((x + y) % m for x, y in zip(w, a))
            k += 1
        orders.append(k)
    element_orders = []
    for order, count in Counter(orders).items():
        element_orders.extend([order] * (count // len(boundaries)))
    enumerated = FinGenAbGroup.from_element_orders(element_orders)
    logger.debug(f"Frobenius coinvariants mod {m}: {group} (enumerated {enumerated})")
    return FrobeniusH1Report(m, group, enumerated)


def model_h1_count(model: UnramifiedWeilModel, m: int) -> FinGenAbGroup:
    """H¹(ℤ, T̂[m]) = T̂[m]_Fr, cross-checked against class enumeration"""
    arith = LocalArithmeticData(model.torus.group, [model.torus.group.identity_index],
                                model.frobenius, label='unramified')
    report = frobenius_h1_count(model.torus, arith, m)
    if not report.agree:
        raise InvariantViolation(
            f"Frobenius coinvariants {report.group} disagree with enumeration {report.enumerated}"
        )
    return report.group


# ---------------------------------------------------------------------------
# Sample generators
# ---------------------------------------------------------------------------

def invariant_spanning_set(X: GaloisLattice) -> List[LieVector]:
    return [tuple(b) for b in invariants(X).basis]


def random_invariant_vectors(X: GaloisLattice, count: int, seed: int,
                             denominator_bound: Optional[int] = None) -> List[LieVector]:
    """Seeded random rational combinations of a basis of X^Γ"""
    denominator_bound = config.get('weil.denominator_bound', 12) if denominator_bound is None else denominator_bound
    basis = invariant_spanning_set(X)
    if not basis:
        return []
    rng = np.random.default_rng(seed)
    vectors = []
    for _ in range(count):
        coefficients = [
            Fraction(int(rng.integers(-5, 6)), int(rng.integers(1, denominator_bound + 1)))
            for _ in basis
        ]
        vectors.append(tuple(sum((c * b[j] for c, b in zip(coefficients, basis)), Fraction(0))
                             for j in range(X.rank)))
    return vectors


def invariant_vectors_with_denominators(X: GaloisLattice, denominator_bound: int) -> List[LieVector]:
    """b/d and (Σ b)/d for every basis vector b of X^Γ and d ≤ denominator_bound"""
    basis = invariant_spanning_set(X)
    vectors = []
    for d in range(1, denominator_bound + 1):
        for b in basis:
            vectors.append(tuple(v / d for v in b))
        if len(basis) > 1:
            vectors.append(tuple(sum(column) / d for column in zip(*basis)))
    return vectors


def invariant_torsion_points(X: GaloisLattice, order: int, cap: int = 20000) -> List[TorsionPoint]:
    """Invariant points s with order·s = 0; only lattice generators when there are too many"""
    fixed = _inertia_fixed(X, list(X.group.elements), order)
    if order ** X.rank > cap:
        return [reduce_mod_one(Fraction(int(v), order) for v in b) for b in fixed.basis]
    points = []
    for v in product(range(order), repeat=X.rank):
        if fixed.contains(v):
            points.append(reduce_mod_one(Fraction(x, order) for x in v))
    return points


def conventions() -> Dict[str, object]:
    return {
        'frobenius_log_sign': FROBENIUS_LOG_SIGN,
        'exponential': 'e(x) = x mod 1',
        'units': 'quotiented away; the model group is Z',
    }
