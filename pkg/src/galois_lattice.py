"""Finite groups, lattices with a finite group action, and local arithmetic data"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple
import logging

import numpy as np

from .exceptions import (
    InvalidArithmeticData,
    InvalidGroup,
    InvalidLattice,
    NotASubgroup,
    NotCyclic,
    NotNormal,
)
from .integer_linalg import (
    FinGenAbGroup,
    IntegerMatrix,
    RationalLattice,
    cokernel,
    kernel_lattice,
)

logger = logging.getLogger(__name__)


class FiniteGroup:
    """Finite group given by its multiplication table.

    Elements are the indices ``0 .. order-1``; ``mult_table[a][b]`` is the
    index of the product ``ab``. The table is fully checked at construction.
    """

    def __init__(self, mult_table: Sequence[Sequence[int]], identity_index: int = 0,
                 labels: Optional[Sequence[str]] = None):
        table = np.array([list(row) for row in mult_table], dtype=np.int64)
        n = len(mult_table)
        if n == 0:
            raise InvalidGroup("a group needs at least one element")
        if table.shape != (n, n):
            raise InvalidGroup(f"multiplication table must be {n}x{n}")
        if table.min() < 0 or table.max() >= n:
            raise InvalidGroup("multiplication table entries out of range")
        if not 0 <= identity_index < n:
            raise InvalidGroup(f"identity index {identity_index} out of range")
        e = identity_index
        elements = np.arange(n)
        if not (np.array_equal(table[e], elements) and np.array_equal(table[:, e], elements)):
            raise InvalidGroup(f"element {e} is not a two-sided identity")
        lhs = table[table]
        rhs = table[np.arange(n)[:, None, None], table[None, :, :]]
        if not np.array_equal(lhs, rhs):
            raise InvalidGroup("multiplication is not associative")
        inverse = []
        for a in range(n):
            right = np.flatnonzero(table[a] == e)
            if len(right) != 1 or table[right[0], a] != e:
                raise InvalidGroup(f"element {a} has no two-sided inverse")
            inverse.append(int(right[0]))

        self._table = table
        self._table.flags.writeable = False
        self.order = n
        self.identity_index = e
        self.inverse_table = tuple(inverse)
        self.labels = tuple(labels) if labels is not None else tuple(f"g{i}" for i in range(n))

    @classmethod
    def trivial(cls) -> 'FiniteGroup':
        return cls([[0]], 0, labels=["1"])

    @classmethod
    def cyclic(cls, n: int) -> 'FiniteGroup':
        """ℤ/n with element i standing for σ^i"""
        if n < 1:
            raise InvalidGroup("cyclic group order must be positive")
        table = [[(a + b) % n for b in range(n)] for a in range(n)]
        labels = ["1"] + [f"s^{i}" if i > 1 else "s" for i in range(1, n)]
        return cls(table, 0, labels=labels)

    @classmethod
    def from_matrix_generators(cls, generators: Sequence[IntegerMatrix],
                               max_order: int = 1000) -> Tuple['FiniteGroup', List[IntegerMatrix]]:
        """Close a set of invertible integer matrices under multiplication.

        Returns the group (identity first, then breadth-first order) together
        with the matrix of each element, i.e. a faithful action.
        """
        if not generators:
            raise InvalidGroup("at least one generator is required")
        rank = generators[0].rows
        for g in generators:
            if g.shape != (rank, rank) or not g.is_unimodular():
                raise InvalidGroup("generators must be square unimodular matrices of equal size")
        identity = IntegerMatrix.identity(rank)
        elements = [identity]
        index = {identity: 0}
        queue = [identity]
        while queue:
            current = queue.pop(0)
            for g in generators:
                product = current @ g
                if product not in index:
                    index[product] = len(elements)
                    elements.append(product)
                    queue.append(product)
                    if len(elements) > max_order:
                        raise InvalidGroup(f"generated group exceeds order {max_order}")
        table = [[index[a @ b] for b in elements] for a in elements]
        return cls(table, 0), elements

    def mul(self, a: int, b: int) -> int:
        return int(self._table[a, b])

    def inv(self, a: int) -> int:
        return self.inverse_table[a]

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        result = self.identity_index
        for _ in range(k):
            result = self.mul(result, a)
        return result

    def product(self, elements: Iterable[int]) -> int:
        result = self.identity_index
        for g in elements:
            result = self.mul(result, g)
        return result

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity_index:
            x = self.mul(x, a)
            k += 1
        return k

    @property
    def elements(self) -> range:
        return range(self.order)

    @property
    def mult_table(self) -> List[List[int]]:
        return self._table.tolist()

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self._table, self._table.T))

    def cyclic_generator(self) -> int:
        """Smallest element generating the whole group"""
        for g in self.elements:
            if self.element_order(g) == self.order:
                return g
        raise NotCyclic(f"group of order {self.order} is not cyclic")

    def is_cyclic(self) -> bool:
        return any(self.element_order(g) == self.order for g in self.elements)

    def generated_subgroup(self, generators: Iterable[int]) -> 'Subgroup':
        members = {self.identity_index}
        frontier = list(members)
        generators = list(generators)
        while frontier:
            x = frontier.pop()
            for g in generators:
                y = self.mul(x, g)
                if y not in members:
                    members.add(y)
                    frontier.append(y)
        return Subgroup(self, members)

    def subgroups(self) -> List['Subgroup']:
        """All subgroups, ordered by size then by element list"""
        found: Dict[FrozenSet[int], Subgroup] = {}
        trivial = self.generated_subgroup([])
        found[trivial.members] = trivial
        frontier = [trivial]
        while frontier:
            sub = frontier.pop()
            for g in self.elements:
                if g in sub.members:
                    continue
                bigger = self.generated_subgroup(list(sub.elements) + [g])
                if bigger.members not in found:
                    found[bigger.members] = bigger
                    frontier.append(bigger)
        return sorted(found.values(), key=lambda s: (s.order, s.elements))

    def normal_subgroups(self) -> List['Subgroup']:
        return [s for s in self.subgroups() if s.is_normal()]

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return (self.identity_index == other.identity_index
                and np.array_equal(self._table, other._table))

    def __hash__(self) -> int:
        return hash((self.order, self.identity_index, self._table.tobytes()))

    def __repr__(self) -> str:
        return f"FiniteGroup(order={self.order})"


class Subgroup:
    """A subset of a parent group, checked to be closed under products and inverses"""

    def __init__(self, parent: FiniteGroup, members: Iterable[int]):
        members = frozenset(int(m) for m in members)
        if parent.identity_index not in members:
            raise NotASubgroup("subgroup must contain the identity")
        for a in members:
            if not 0 <= a < parent.order:
                raise NotASubgroup(f"element {a} is not in the group")
            if parent.inv(a) not in members:
                raise NotASubgroup(f"subgroup is not closed under inverting {a}")
            for b in members:
                if parent.mul(a, b) not in members:
                    raise NotASubgroup(f"subgroup is not closed under {a}*{b}")
        self.parent = parent
        self.members = members
        rest = sorted(members - {parent.identity_index})
        # local index 0 is the identity
        self.elements: Tuple[int, ...] = tuple([parent.identity_index] + rest)
        self._local = {g: i for i, g in enumerate(self.elements)}
        self._group: Optional[FiniteGroup] = None

    @classmethod
    def whole(cls, group: FiniteGroup) -> 'Subgroup':
        return cls(group, group.elements)

    @classmethod
    def trivial(cls, group: FiniteGroup) -> 'Subgroup':
        return cls(group, [group.identity_index])

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def index(self) -> int:
        return self.parent.order // self.order

    def local(self, parent_element: int) -> int:
        try:
            return self._local[parent_element]
        except KeyError:
            raise NotASubgroup(f"element {parent_element} is not in the subgroup")

    def as_group(self) -> FiniteGroup:
        """The subgroup as a group in its own right, local indices following ``elements``"""
        if self._group is None:
            table = [[self._local[self.parent.mul(a, b)] for b in self.elements] for a in self.elements]
            self._group = FiniteGroup(table, 0, labels=[self.parent.labels[g] for g in self.elements])
        return self._group

    def is_normal(self) -> bool:
        p = self.parent
        return all(
            p.mul(p.mul(g, h), p.inv(g)) in self.members
            for g in p.elements for h in self.elements
        )

    def left_cosets(self) -> List[Tuple[int, ...]]:
        """Cosets gH as sorted tuples, ordered by smallest element (the identity coset first)"""
        p = self.parent
        seen = set()
        cosets = []
        for g in sorted(p.elements, key=lambda x: (x != p.identity_index, x)):
            if g in seen:
                continue
            coset = tuple(sorted(p.mul(g, h) for h in self.elements))
            seen.update(coset)
            cosets.append(coset)
        return cosets

    def right_cosets(self) -> List[Tuple[int, ...]]:
        p = self.parent
        seen = set()
        cosets = []
        for g in sorted(p.elements, key=lambda x: (x != p.identity_index, x)):
            if g in seen:
                continue
            coset = tuple(sorted(p.mul(h, g) for h in self.elements))
            seen.update(coset)
            cosets.append(coset)
        return cosets

    def left_transversal(self) -> List[int]:
        """One representative per left coset, the identity for H itself"""
        p = self.parent
        return [p.identity_index if p.identity_index in c else c[0] for c in self.left_cosets()]

    def right_transversal(self) -> List[int]:
        p = self.parent
        return [p.identity_index if p.identity_index in c else c[0] for c in self.right_cosets()]

    def quotient(self) -> Tuple[FiniteGroup, List[int]]:
        """Γ/N together with the projection Γ → Γ/N; requires normality"""
        if not self.is_normal():
            raise NotNormal("quotient by a non-normal subgroup")
        cosets = self.left_cosets()
        projection = [0] * self.parent.order
        for i, coset in enumerate(cosets):
            for g in coset:
                projection[g] = i
        reps = [c[0] for c in cosets]
        table = [[projection[self.parent.mul(a, b)] for b in reps] for a in reps]
        return FiniteGroup(table, 0), projection

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.parent == other.parent and self.members == other.members

    def __hash__(self) -> int:
        return hash(self.members)

    def __repr__(self) -> str:
        return f"Subgroup({list(self.elements)} of order {self.order})"


@dataclass
class ValidationReport:
    valid: bool
    failures: List[str] = field(default_factory=list)


def validate_action(group: FiniteGroup, action: Sequence[IntegerMatrix]) -> ValidationReport:
    """Check that ``action`` is a homomorphism Γ → GL_n(ℤ); never raises"""
    failures = []
    if len(action) != group.order:
        return ValidationReport(False, [f"expected {group.order} matrices, got {len(action)}"])
    shapes = {m.shape for m in action}
    if len(shapes) != 1 or not action[0].is_square():
        return ValidationReport(False, ["action matrices must be square and of one size"])
    rank = action[0].rows
    identity = IntegerMatrix.identity(rank)
    if action[group.identity_index] != identity:
        failures.append("identity element does not act as the identity matrix")
    for g in group.elements:
        if abs(action[g].determinant()) != 1:
            failures.append(f"action of element {g} is not invertible over Z")
    for g in group.elements:
        for h in group.elements:
            if action[g] @ action[h] != action[group.mul(g, h)]:
                failures.append(f"homomorphism check fails at ({g}, {h})")
    return ValidationReport(not failures, failures)


class GaloisLattice:
    """ℤ^rank with a finite group acting by integer matrices"""

    def __init__(self, group: FiniteGroup, action: Sequence[IntegerMatrix], check: bool = True):
        self.group = group
        self.action: Tuple[IntegerMatrix, ...] = tuple(
            m if isinstance(m, IntegerMatrix) else IntegerMatrix(m) for m in action
        )
        self.rank = self.action[0].rows if self.action else 0
        if check:
            report = self.validate()
            if not report.valid:
                raise InvalidLattice("; ".join(report.failures))

    @classmethod
    def trivial_action(cls, group: FiniteGroup, rank: int) -> 'GaloisLattice':
        identity = IntegerMatrix.identity(rank)
        return cls(group, [identity] * group.order)

    def validate(self) -> ValidationReport:
        return validate_action(self.group, self.action)

    def matrix(self, g: int) -> IntegerMatrix:
        return self.action[g]

    def act(self, g: int, vector: Sequence[int]) -> Tuple[int, ...]:
        return self.action[g].apply(vector)

    def acts_trivially(self) -> bool:
        identity = IntegerMatrix.identity(self.rank)
        return all(m == identity for m in self.action)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GaloisLattice):
            return NotImplemented
        return self.group == other.group and self.action == other.action

    def __repr__(self) -> str:
        return f"GaloisLattice(rank={self.rank}, group_order={self.group.order})"


class LocalArithmeticData:
    """Inertia subgroup and Frobenius element of a local Galois group.

    The inertia must be normal with cyclic quotient generated by the image of
    the Frobenius; this is enforced here rather than at use sites.
    """

    def __init__(self, group: FiniteGroup, inertia: Iterable[int], frobenius: int,
                 label: str = "custom"):
        try:
            self.inertia = Subgroup(group, inertia)
        except NotASubgroup as e:
            raise InvalidArithmeticData(f"inertia is not a subgroup: {e}")
        if not 0 <= frobenius < group.order:
            raise InvalidArithmeticData(f"frobenius {frobenius} is not a group element")
        if not self.inertia.is_normal():
            raise InvalidArithmeticData("inertia must be a normal subgroup")
        quotient, projection = self.inertia.quotient()
        image = projection[frobenius]
        if quotient.element_order(image) != quotient.order:
            raise InvalidArithmeticData(
                "frobenius must generate group/inertia, which must be cyclic"
            )
        self.group = group
        self.frobenius = frobenius
        self.label = label
        self.quotient = quotient
        self.projection = projection

    @property
    def residue_degree(self) -> int:
        return self.quotient.order

    def is_unramified(self) -> bool:
        return self.inertia.order == 1

    def __repr__(self) -> str:
        return (f"LocalArithmeticData({self.label}, inertia={list(self.inertia.elements)}, "
                f"frobenius={self.frobenius})")


def admissible_arithmetic(group: FiniteGroup) -> List[LocalArithmeticData]:
    """Every (inertia, Frobenius coset) pair the group admits.

    The Frobenius is the smallest element of its coset, so the list is
    canonical and contains each admissible datum once.
    """
    data = []
    for inertia in group.normal_subgroups():
        quotient, projection = inertia.quotient()
        if not quotient.is_cyclic():
            continue
        for q in quotient.elements:
            if quotient.element_order(q) != quotient.order:
                continue
            frobenius = min(g for g in group.elements if projection[g] == q)
            label = "unramified" if inertia.order == 1 else (
                "totally_ramified" if inertia.order == group.order else "mixed")
            data.append(LocalArithmeticData(group, inertia.elements, frobenius, label=label))
    return data


def _identity_differences(X: GaloisLattice) -> List[IntegerMatrix]:
    identity = IntegerMatrix.identity(X.rank)
    return [m - identity for m in X.action]


def invariants(X: GaloisLattice) -> RationalLattice:
    """X^Γ as the saturated kernel of the stacked (action(g) − id)"""
    stacked = IntegerMatrix.vstack(_identity_differences(X), X.rank)
    return kernel_lattice(stacked)


def coinvariants(X: GaloisLattice) -> FinGenAbGroup:
    """X_Γ as the cokernel of the concatenated (action(g) − id)"""
    concatenated = IntegerMatrix.hstack(_identity_differences(X), X.rank)
    return cokernel(concatenated, X.rank)


def norm_matrix(X: GaloisLattice) -> IntegerMatrix:
    total = IntegerMatrix.zeros(X.rank, X.rank)
    for m in X.action:
        total = total + m
    return total


def projection_lattice(X: GaloisLattice) -> RationalLattice:
    """Pr_Γ(X) = (1/|Γ|)·N_Γ(X) inside ℚ⊗X^Γ"""
    N = norm_matrix(X)
    scale = Fraction(1, X.group.order)
    return RationalLattice.from_generators(
        [[scale * v for v in column] for column in N.columns()], X.rank
    )


def dual_module(X: GaloisLattice) -> GaloisLattice:
    """X̂ = Hom(X, ℤ): g acts by the transpose of action(g⁻¹)"""
    action = [X.action[X.group.inv(g)].T for g in X.group.elements]
    return GaloisLattice(X.group, action)


def restrict_module(X: GaloisLattice, sub: Subgroup) -> GaloisLattice:
    """X regarded as a module over ``sub.as_group()``"""
    if sub.parent != X.group:
        raise NotASubgroup("subgroup of a different group")
    return GaloisLattice(sub.as_group(), [X.action[g] for g in sub.elements])


def induce(sub: Subgroup, M: GaloisLattice) -> GaloisLattice:
    """Ind_H^Γ M, with blocks indexed by the left transversal Γ = ⊔ tH.

    If g·t_i = t_j·h then g maps block i to block j through M's action of h.
    """
    if M.group != sub.as_group():
        raise NotASubgroup("module is not defined over the given subgroup")
    parent = sub.parent
    transversal = sub.left_transversal()
    position = {}
    for i, coset in enumerate(sub.left_cosets()):
        for g in coset:
            position[g] = i
    k, r = len(transversal), M.rank
    action = []
    for g in parent.elements:
        blocks = [[IntegerMatrix.zeros(r, r) for _ in range(k)] for _ in range(k)]
        for i, t in enumerate(transversal):
            gt = parent.mul(g, t)
            j = position[gt]
            h = parent.mul(parent.inv(transversal[j]), gt)
            blocks[j][i] = M.action[sub.local(h)]
        rows = [IntegerMatrix.hstack(row, r) for row in blocks]
        action.append(IntegerMatrix.vstack(rows, k * r))
    logger.debug(f"induced rank-{r} module along index {k}")
    return GaloisLattice(parent, action)


def regular_module(group: FiniteGroup) -> GaloisLattice:
    """ℤ[Γ], induced from the trivial subgroup"""
    trivial = Subgroup.trivial(group)
    return induce(trivial, GaloisLattice.trivial_action(trivial.as_group(), 1))


def direct_sum(X: GaloisLattice, Y: GaloisLattice) -> GaloisLattice:
    if X.group != Y.group:
        raise InvalidLattice("direct sum of modules over different groups")
    action = []
    for a, b in zip(X.action, Y.action):
        top = IntegerMatrix.hstack([a, IntegerMatrix.zeros(X.rank, Y.rank)], X.rank)
        bottom = IntegerMatrix.hstack([IntegerMatrix.zeros(Y.rank, X.rank), b], Y.rank)
        action.append(IntegerMatrix.vstack([top, bottom], X.rank + Y.rank))
    return GaloisLattice(X.group, action)


def conjugate(X: GaloisLattice, P: IntegerMatrix, P_inv: IntegerMatrix) -> GaloisLattice:
    """The isomorphic module with action P·A_g·P⁻¹ (a change of basis)"""
    if P @ P_inv != IntegerMatrix.identity(X.rank):
        raise InvalidLattice("P_inv is not the inverse of P")
    return GaloisLattice(X.group, [P @ m @ P_inv for m in X.action])
