"""Cohomology of finite groups with lattice and finite coefficients.

H^n is computed from the inhomogeneous (non-normalized) bar complex reduced by
Smith normal form. Two independent oracles are provided: the closed formulas
for cyclic groups and exhaustive enumeration of cocycles for small finite
modules. Cochains in C^k = Maps(Γ^k, M) are flat integer vectors whose
coordinate ``t * rank + c`` is coordinate c of the value on the k-tuple with
lexicographic index t.
"""

from collections import Counter
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, List, Optional, Sequence, Set, Tuple
import logging

import numpy as np

from .config import config
from .exceptions import BadParams, BudgetExceeded, InvalidLattice, NotASubgroup, NotCyclic
from .galois_lattice import FiniteGroup, GaloisLattice, Subgroup, invariants
from .integer_linalg import (
    FinGenAbGroup,
    IntegerMatrix,
    RationalLattice,
    invariant_factors,
    kernel_lattice,
    kernel_mod,
    lattice_quotient,
    smith_normal_form,
    solve_integral,
)

logger = logging.getLogger(__name__)

Cochain = Tuple[int, ...]


# ---------------------------------------------------------------------------
# Coefficient modules
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CoefficientModule:
    """A Γ-lattice (modulus None) or (ℤ/m)^rank with an action defined mod m"""

    group: FiniteGroup
    action: Tuple[IntegerMatrix, ...]
    modulus: Optional[int] = None

    def __post_init__(self):
        if self.modulus is not None:
            if self.modulus < 2:
                raise BadParams(f"modulus must be at least 2, got {self.modulus}")
            reduced = tuple(m.mod(self.modulus) for m in self.action)
            object.__setattr__(self, 'action', reduced)
            identity = IntegerMatrix.identity(self.rank).mod(self.modulus)
            if reduced[self.group.identity_index] != identity:
                raise InvalidLattice("identity must act trivially")
            for g in self.group.elements:
                for h in self.group.elements:
                    if (reduced[g] @ reduced[h]).mod(self.modulus) != reduced[self.group.mul(g, h)]:
                        raise InvalidLattice(f"action is not a homomorphism mod {self.modulus} at ({g}, {h})")

    @classmethod
    def lattice(cls, X: GaloisLattice) -> 'CoefficientModule':
        return cls(X.group, X.action)

    @classmethod
    def finite(cls, X: GaloisLattice, modulus: int) -> 'CoefficientModule':
        """X/mX = X ⊗ ℤ/m"""
        return cls(X.group, X.action, modulus)

    @classmethod
    def from_mod_action(cls, group: FiniteGroup, matrices: Sequence[IntegerMatrix],
                        modulus: int) -> 'CoefficientModule':
        return cls(group, tuple(matrices), modulus)

    @property
    def kind(self) -> str:
        return 'lattice' if self.modulus is None else 'finite'

    @property
    def rank(self) -> int:
        return self.action[0].rows

    @property
    def size(self) -> Optional[int]:
        return None if self.modulus is None else self.modulus ** self.rank

    def restrict(self, sub: Subgroup) -> 'CoefficientModule':
        if sub.parent != self.group:
            raise NotASubgroup("subgroup of a different group")
        return CoefficientModule(sub.as_group(), tuple(self.action[g] for g in sub.elements), self.modulus)

    def reduce(self, vector: Sequence[int]) -> Cochain:
        if self.modulus is None:
            return tuple(int(v) for v in vector)
        return tuple(int(v) % self.modulus for v in vector)


# ---------------------------------------------------------------------------
# Bar complex
# ---------------------------------------------------------------------------

def tuple_index(elements: Sequence[int], order: int) -> int:
    index = 0
    for g in elements:
        index = index * order + g
    return index


def _faces(group: FiniteGroup, T: Tuple[int, ...]) -> List[Tuple[int, int, int]]:
    """Terms (acting element, k-tuple index, sign) of (df)(T) for a (k+1)-tuple T"""
    G = group.order
    k = len(T) - 1
    terms = [(T[0], tuple_index(T[1:], G), 1)]
    for i in range(k):
        merged = T[:i] + (group.mul(T[i], T[i + 1]),) + T[i + 2:]
        terms.append((group.identity_index, tuple_index(merged, G), (-1) ** (i + 1)))
    terms.append((group.identity_index, tuple_index(T[:k], G), (-1) ** (k + 1)))
    return terms


def coboundary_matrix(group: FiniteGroup, action: Sequence[IntegerMatrix], k: int,
                      sign_fault: bool = False) -> IntegerMatrix:
    """d^k : C^k → C^{k+1}.

    ``sign_fault`` flips the sign of the last face; it exists only so the
    oracle harness can prove that it detects a broken complex.
    """
    G = group.order
    r = action[0].rows
    # object dtype keeps Python ints; entries may exceed 64 bits
    A = [m.entries for m in action]
    I = IntegerMatrix.identity(r).entries
    D = np.zeros((G ** (k + 1) * r, G ** k * r), dtype=object)
    for row, T in enumerate(product(range(G), repeat=k + 1)):
        rows = slice(row * r, (row + 1) * r)
        terms = _faces(group, T)
        if sign_fault:
            g, index, sign = terms[-1]
            terms[-1] = (g, index, -sign)
        for g, index, sign in terms:
            block = A[g] if g != group.identity_index else I
            D[rows, index * r:(index + 1) * r] += sign * block
    logger.debug(f"d^{k} for |G| = {G}, rank {r}: {D.shape[0]}x{D.shape[1]}")
    return IntegerMatrix._wrap(D)


def cochain_complex(group: FiniteGroup, M: CoefficientModule, n_max: int,
                    sign_fault: bool = False) -> List[IntegerMatrix]:
    """[d⁰, ..., d^{n_max}] of the inhomogeneous cochain complex"""
    max_degree = config.get('cohomology.max_complex_degree', 3)
    if not 0 <= n_max <= max_degree:
        raise BadParams(f"complex degree must be in [0, {max_degree}], got {n_max}")
    _check_group(group, M)
    return [coboundary_matrix(group, M.action, k, sign_fault) for k in range(n_max + 1)]


def _check_group(group: FiniteGroup, M: CoefficientModule):
    if M.group != group:
        raise BadParams("coefficient module is defined over a different group")


def _check_degree(n: int):
    max_degree = config.get('cohomology.max_degree', 2)
    if not 0 <= n <= max_degree:
        raise BadParams(f"cohomological degree must be in [0, {max_degree}], got {n}")


# ---------------------------------------------------------------------------
# Class groups
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _Presentation:
    """outer / inner with outer given by a basis (None: standard basis of ℤ^N)"""

    U: IntegerMatrix
    outer: Optional[RationalLattice]
    torsion_indices: Tuple[int, ...]
    torsion_factors: Tuple[int, ...]
    free_indices: Tuple[int, ...]

    def coordinates(self, cochain: Sequence[int]) -> Tuple[int, ...]:
        if self.outer is None:
            c = [int(v) for v in cochain]
        else:
            coefficients = self.outer.coordinates(cochain)
            if coefficients is None or any(q.denominator != 1 for q in coefficients):
                raise BadParams("cochain is not a cocycle")
            c = [int(q) for q in coefficients]
        y = self.U.apply(c)
        return tuple(
            [y[i] % d for i, d in zip(self.torsion_indices, self.torsion_factors)]
            + [y[i] for i in self.free_indices]
        )


@dataclass(frozen=True)
class CohomologyClassGroup:
    degree: int
    group: FinGenAbGroup
    representatives: Optional[Tuple[Cochain, ...]] = None
    presentation: Optional[_Presentation] = field(default=None, repr=False, compare=False)

    @property
    def order(self) -> Optional[int]:
        return self.group.order

    def class_of(self, cocycle: Sequence[int]) -> Tuple[int, ...]:
        """Coordinates of a cocycle's class against ``representatives``"""
        if self.presentation is None:
            raise BadParams("class coordinates need representatives=True")
        return self.presentation.coordinates(cocycle)

    def is_zero_class(self, cocycle: Sequence[int]) -> bool:
        return not any(self.class_of(cocycle))


def _present(Y: IntegerMatrix, outer: Optional[RationalLattice], keep_free: bool,
             modulus: Optional[int]) -> Tuple[FinGenAbGroup, Tuple[Cochain, ...], _Presentation]:
    """Cokernel of Y (columns = inner generators in outer coordinates) with generators"""
    snf = smith_normal_form(Y)
    diagonal = snf.diagonal
    k = Y.rows
    torsion = [i for i, d in enumerate(diagonal) if d > 1]
    free = [i for i in range(k) if i >= len(diagonal) or diagonal[i] == 0] if keep_free else []
    basis = outer.basis if outer is not None else None
    representatives = []
    for i in torsion + free:
        column = snf.U_inv.column(i)
        if basis is None:
            vector = list(column)
        else:
            vector = [sum(c * b[j] for c, b in zip(column, basis)) for j in range(outer.ambient_dim)]
            vector = [int(v) for v in vector]
        if modulus is not None:
            vector = [v % modulus for v in vector]
        representatives.append(tuple(vector))
    presentation = _Presentation(
        U=snf.U,
        outer=outer,
        torsion_indices=tuple(torsion),
        torsion_factors=tuple(diagonal[i] for i in torsion),
        free_indices=tuple(free),
    )
    group = FinGenAbGroup(free_rank=len(free), torsion=tuple(diagonal[i] for i in torsion))
    return group, tuple(representatives), presentation


def _with_modulus(generators: List[Sequence[int]], dim: int, modulus: int) -> RationalLattice:
    scaled = [[modulus * int(i == j) for j in range(dim)] for i in range(dim)]
    return RationalLattice.from_generators(list(generators) + scaled, dim)


def _quotient_matrix(outer: RationalLattice, inner: RationalLattice) -> IntegerMatrix:
    rows = []
    for vector in inner.basis:
        coefficients = outer.coordinates(vector)
        rows.append([int(c) for c in coefficients])
    return IntegerMatrix(rows, rows=len(rows), cols=outer.rank).T


def cohomology_group(group: FiniteGroup, M: CoefficientModule, n: int,
                     representatives: bool = False, sign_fault: bool = False) -> CohomologyClassGroup:
    """H^n(Γ, M) for n ≤ 2.

    For lattices and n ≥ 1 the group is the torsion of coker(d^{n-1}): |Γ|
    kills H^n and ker(d^n) is saturated, so d^n itself is never built.
    """
    _check_group(group, M)
    _check_degree(n)
    r = M.rank
    G = group.order

    if M.modulus is None:
        if n == 0:
            X_gamma = invariants(GaloisLattice(group, M.action, check=False))
            if not representatives:
                return CohomologyClassGroup(0, FinGenAbGroup(free_rank=X_gamma.rank))
            Y = IntegerMatrix.zeros(X_gamma.rank, 0)
            result, reps, pres = _present(Y, X_gamma, keep_free=True, modulus=None)
            return CohomologyClassGroup(0, result, reps, pres)
        d_prev = coboundary_matrix(group, M.action, n - 1, sign_fault)
        if not representatives:
            torsion = tuple(d for d in invariant_factors(d_prev) if d > 1)
            return CohomologyClassGroup(n, FinGenAbGroup(torsion=torsion))
        result, reps, pres = _present(d_prev, None, keep_free=False, modulus=None)
        return CohomologyClassGroup(n, result, reps, pres)

    m = M.modulus
    if n == 0:
        identity = IntegerMatrix.identity(r)
        stacked = IntegerMatrix.vstack([a - identity for a in M.action], r)
        cocycles = kernel_mod(stacked, m)
        coboundaries = _with_modulus([], r, m)
    else:
        d_n = coboundary_matrix(group, M.action, n, sign_fault)
        d_prev = coboundary_matrix(group, M.action, n - 1, sign_fault)
        cocycles = kernel_mod(d_n, m)
        coboundaries = _with_modulus(d_prev.columns(), G ** n * r, m)
    if not representatives:
        return CohomologyClassGroup(n, lattice_quotient(cocycles, coboundaries))
    Y = _quotient_matrix(cocycles, coboundaries)
    result, reps, pres = _present(Y, cocycles, keep_free=False, modulus=m)
    return CohomologyClassGroup(n, result, reps, pres)


def is_coboundary(group: FiniteGroup, M: CoefficientModule, n: int, cochain: Sequence[int]) -> bool:
    """Whether the n-cochain lies in B^n (mod m for finite modules)"""
    _check_group(group, M)
    if n == 0:
        return all(v == 0 for v in M.reduce(cochain))
    d_prev = coboundary_matrix(group, M.action, n - 1)
    if M.modulus is not None:
        d_prev = IntegerMatrix.hstack(
            [d_prev, IntegerMatrix.identity(d_prev.rows) * M.modulus], d_prev.rows
        )
    return solve_integral(d_prev, list(cochain)) is not None


def is_cocycle(group: FiniteGroup, M: CoefficientModule, n: int, cochain: Sequence[int]) -> bool:
    image = coboundary_matrix(group, M.action, n).apply(cochain)
    return all(v == 0 for v in M.reduce(image))


# ---------------------------------------------------------------------------
# Closed formulas: cyclic groups and Tate cohomology
# ---------------------------------------------------------------------------

def _norm(M: CoefficientModule) -> IntegerMatrix:
    total = IntegerMatrix.zeros(M.rank, M.rank)
    for a in M.action:
        total = total + a
    return total


def _span(matrix: IntegerMatrix, modulus: Optional[int]) -> RationalLattice:
    if modulus is None:
        return RationalLattice.column_span(matrix)
    return _with_modulus(matrix.columns(), matrix.rows, modulus)


def _kernel(matrix: IntegerMatrix, modulus: Optional[int]) -> RationalLattice:
    return kernel_lattice(matrix) if modulus is None else kernel_mod(matrix, modulus)


def cyclic_oracle(group: FiniteGroup, M: CoefficientModule, n: int,
                  generator: Optional[int] = None) -> FinGenAbGroup:
    """H^n of a cyclic group from the periodic resolution.

    odd n: ker N / im(σ−1); even n ≥ 2: M^Γ / N(M); n = 0: M^Γ.
    """
    _check_group(group, M)
    if n < 0:
        raise BadParams("degree must be nonnegative")
    sigma = group.cyclic_generator() if generator is None else generator
    if group.element_order(sigma) != group.order:
        raise NotCyclic(f"element {sigma} does not generate the group")
    m = M.modulus
    S = M.action[sigma] - IntegerMatrix.identity(M.rank)
    fixed = _kernel(S, m)
    if n == 0:
        if m is None:
            return FinGenAbGroup(free_rank=fixed.rank)
        return lattice_quotient(fixed, _with_modulus([], M.rank, m))
    N = _norm(M)
    if n % 2:
        return lattice_quotient(_kernel(N, m), _span(S, m))
    return lattice_quotient(fixed, _span(N, m))


def tate_cohomology(group: FiniteGroup, M: CoefficientModule, n: int) -> FinGenAbGroup:
    """Ĥ⁰ = M^Γ / N(M) and Ĥ⁻¹ = ker N / I_Γ·M for any finite group"""
    _check_group(group, M)
    m = M.modulus
    identity = IntegerMatrix.identity(M.rank)
    differences = [a - identity for a in M.action]
    N = _norm(M)
    if n == 0:
        fixed = _kernel(IntegerMatrix.vstack(differences, M.rank), m)
        return lattice_quotient(fixed, _span(N, m))
    if n == -1:
        augmentation = _span(IntegerMatrix.hstack(differences, M.rank), m)
        return lattice_quotient(_kernel(N, m), augmentation)
    raise BadParams(f"Tate cohomology is available in degrees -1 and 0, got {n}")


# ---------------------------------------------------------------------------
# Enumeration oracle
# ---------------------------------------------------------------------------

class _ElementTables:
    """Addition and action tables on an explicit finite set of module elements"""

    def __init__(self, group: FiniteGroup, matrices: Sequence[IntegerMatrix], modulus: int,
                 elements: Optional[Sequence[Tuple[int, ...]]] = None):
        rank = matrices[0].rows
        if elements is None:
            elements = list(product(range(modulus), repeat=rank))
        self.elements = [tuple(e) for e in elements]
        self.code = {v: i for i, v in enumerate(self.elements)}
        self.modulus = modulus
        self.zero = self.code[tuple([0] * rank)]
        self.add = [[self.code[tuple((a + b) % modulus for a, b in zip(v, w))] for w in self.elements]
                    for v in self.elements]
        self.neg = [self.code[tuple((-a) % modulus for a in v)] for v in self.elements]
        self.act = [[self.code[tuple(x % modulus for x in matrices[g].apply(v))] for v in self.elements]
                    for g in group.elements]

    def __len__(self) -> int:
        return len(self.elements)

    def add_cochains(self, f: Cochain, h: Cochain) -> Cochain:
        return tuple(self.add[a][b] for a, b in zip(f, h))

    def flatten(self, f: Cochain) -> Cochain:
        return tuple(x for code in f for x in self.elements[code])

    def encode(self, vector: Sequence[int]) -> Cochain:
        rank = len(self.elements[0])
        return tuple(
            self.code[tuple(int(x) % self.modulus for x in vector[i:i + rank])]
            for i in range(0, len(vector), rank)
        )


def _evaluate(tables: _ElementTables, terms, values) -> int:
    total = tables.zero
    for g, index, sign in terms:
        v = tables.act[g][values[index]]
        total = tables.add[total][v if sign > 0 else tables.neg[v]]
    return total


def _differential(group: FiniteGroup, tables: _ElementTables, f: Cochain, k: int) -> Cochain:
    return tuple(
        _evaluate(tables, _faces(group, T), f) for T in product(range(group.order), repeat=k + 1)
    )


def _check_budget(count: int, budget: Optional[int]):
    limit = config.enumeration_budget(budget)
    if count > limit:
        raise BudgetExceeded(f"enumeration needs {count} candidate cochains, budget is {limit}")


def _enumerate_cocycles(group: FiniteGroup, tables: _ElementTables, n: int,
                        budget: Optional[int] = None) -> List[Cochain]:
    """All n-cocycles by backtracking, checking each cocycle identity as soon as it is determined"""
    G = group.order
    size = G ** n
    _check_budget(len(tables) ** size, budget)
    conditions: List[List] = [[] for _ in range(size)]
    for T in product(range(G), repeat=n + 1):
        terms = _faces(group, T)
        conditions[max(index for _, index, _ in terms)].append(terms)

    values = [tables.zero] * size
    found: List[Cochain] = []

    def extend(position: int):
        if position == size:
            found.append(tuple(values))
            return
        for v in range(len(tables)):
            values[position] = v
            if all(_evaluate(tables, terms, values) == tables.zero for terms in conditions[position]):
                extend(position + 1)

    extend(0)
    return found


def _enumerate_coboundaries(group: FiniteGroup, tables: _ElementTables, n: int,
                            budget: Optional[int] = None) -> Set[Cochain]:
    if n == 0:
        return {(tables.zero,)}
    size = group.order ** (n - 1)
    _check_budget(len(tables) ** size, budget)
    return {
        _differential(group, tables, f, n - 1)
        for f in product(range(len(tables)), repeat=size)
    }


def _quotient_structure(tables: _ElementTables, cocycles: Sequence[Cochain],
                        coboundaries: Set[Cochain]) -> FinGenAbGroup:
    orders = []
    for z in cocycles:
        k, w = 1, z
        while w not in coboundaries:
            w = tables.add_cochains(w, z)
            k += 1
        orders.append(k)
    per_coset = len(coboundaries)
    counts = Counter(orders)
    element_orders = []
    for order, count in counts.items():
        element_orders.extend([order] * (count // per_coset))
    return FinGenAbGroup.from_element_orders(element_orders)


def brute_force_cohomology(group: FiniteGroup, M: CoefficientModule, n: int,
                           budget: Optional[int] = None) -> FinGenAbGroup:
    """H^n(Γ, M) for a finite module by listing every cocycle and coboundary"""
    _check_group(group, M)
    _check_degree(n)
    if M.modulus is None:
        raise BadParams("enumeration needs a finite coefficient module")
    _check_budget(M.size ** (group.order ** n), budget)
    tables = _ElementTables(group, M.action, M.modulus)
    cocycles = _enumerate_cocycles(group, tables, n, budget)
    coboundaries = _enumerate_coboundaries(group, tables, n, budget)
    logger.debug(f"enumerated |Z^{n}| = {len(cocycles)}, |B^{n}| = {len(coboundaries)}")
    if len(cocycles) % len(coboundaries):
        raise InvalidLattice("coboundaries do not form a subgroup of the cocycles")
    return _quotient_structure(tables, cocycles, coboundaries)


# ---------------------------------------------------------------------------
# Restriction, corestriction, inflation
# ---------------------------------------------------------------------------

def _value(cochain: Sequence[int], index: int, rank: int) -> List[int]:
    return list(cochain[index * rank:(index + 1) * rank])


def restriction(group: FiniteGroup, sub: Subgroup, M: CoefficientModule, n: int,
                cochain: Sequence[int]) -> Cochain:
    """Evaluate a Γ-cochain on tuples from the subgroup (local indices in the result)"""
    if sub.parent != group:
        raise NotASubgroup("subgroup of a different group")
    r = M.rank
    values = []
    for T in product(sub.elements, repeat=n):
        values.extend(_value(cochain, tuple_index(T, group.order), r))
    return M.reduce(values)


def corestriction(sub: Subgroup, group: FiniteGroup, M: CoefficientModule, n: int,
                  cochain: Sequence[int]) -> Cochain:
    """cor f(g₁..gₙ) = Σ_r r⁻¹·F(h(r), h(rg₁), ..., h(rg₁⋯gₙ)) over right cosets Hr.

    Here x = h(x)·rep(x) and F is the homogeneous form of the H-cochain f,
    F(h₀, ..., hₙ) = h₀·f(h₀⁻¹h₁, ..., hₙ₋₁⁻¹hₙ).
    """
    if sub.parent != group:
        raise NotASubgroup("subgroup of a different group")
    r = M.rank
    H = sub.order
    transversal = sub.right_transversal()
    rep_of = {}
    for coset, t in zip(sub.right_cosets(), transversal):
        for x in coset:
            rep_of[x] = t

    def h_part(x: int) -> int:
        return group.mul(x, group.inv(rep_of[x]))

    result = []
    for T in product(group.elements, repeat=n):
        total = [0] * r
        for t in transversal:
            points = [t]
            for g in T:
                points.append(group.mul(points[-1], g))
            hs = [h_part(x) for x in points]
            local = tuple(sub.local(group.mul(group.inv(a), b)) for a, b in zip(hs, hs[1:]))
            value = _value(cochain, tuple_index(local, H), r)
            value = M.action[hs[0]].apply(value)
            value = M.action[group.inv(t)].apply(value)
            total = [a + b for a, b in zip(total, value)]
        result.extend(total)
    return M.reduce(result)


def inflation(normal: Subgroup, M: CoefficientModule, n: int, cochain: Sequence[int]) -> Cochain:
    """(inf f)(g₁..gₙ) = f(ḡ₁..ḡₙ) for f on Γ/N with values in M^N"""
    group = normal.parent
    quotient, projection = normal.quotient()
    r = M.rank
    result = []
    for T in product(group.elements, repeat=n):
        image = tuple(projection[g] for g in T)
        result.extend(_value(cochain, tuple_index(image, quotient.order), r))
    return M.reduce(result)


@dataclass
class CheckReport:
    passed: bool
    details: Dict[str, object] = field(default_factory=dict)
    failures: List[str] = field(default_factory=list)


def corestriction_restriction_check(group: FiniteGroup, sub: Subgroup, M: CoefficientModule,
                                    n: int) -> CheckReport:
    """cor∘res acts on H^n(Γ, M) as multiplication by [Γ:H], checked on generators"""
    H_n = cohomology_group(group, M, n, representatives=True)
    restricted = M.restrict(sub)
    index = sub.index
    failures = []
    for i, z in enumerate(H_n.representatives):
        image = corestriction(sub, group, M, n, restriction(group, sub, M, n, z))
        if not is_cocycle(group, M, n, image):
            failures.append(f"cor(res(generator {i})) is not a cocycle")
            continue
        expected = tuple(index * c for c in H_n.class_of(z))
        expected = tuple(
            e % d for e, d in zip(expected, H_n.group.torsion)
        ) + expected[len(H_n.group.torsion):]
        if H_n.class_of(image) != expected:
            failures.append(f"cor(res(generator {i})) has class {H_n.class_of(image)}, expected {expected}")
    details = {'degree': n, 'index': index, 'group': str(H_n.group),
               'subgroup_order': restricted.group.order, 'generators_checked': len(H_n.representatives)}
    if failures:
        logger.warning(f"corestriction-restriction check failed: {failures}")
    return CheckReport(not failures, details, failures)


def _fixed_elements(M: CoefficientModule, normal: Subgroup) -> List[Tuple[int, ...]]:
    return [
        v for v in product(range(M.modulus), repeat=M.rank)
        if all(M.reduce(M.action[g].apply(v)) == tuple(v) for g in normal.elements)
    ]


def _coset_key(tables: _ElementTables, z: Cochain, coboundaries: Set[Cochain]) -> Cochain:
    return min(tables.add_cochains(z, b) for b in coboundaries)


def inflation_restriction_check(group: FiniteGroup, normal: Subgroup, M: CoefficientModule,
                                budget: Optional[int] = None) -> CheckReport:
    """Five-term exactness 0 → H¹(Γ/N, M^N) → H¹(Γ, M) → H¹(N, M)^{Γ/N} → H²(Γ/N, M^N) → H²(Γ, M).

    Everything except the last step is verified on explicitly enumerated
    cocycles; the kernel of inflation in degree 2 uses an integral solve.
    """
    if M.modulus is None:
        raise BadParams("inflation-restriction check needs a finite coefficient module")
    _check_group(group, M)
    quotient, projection = normal.quotient()
    lifts = [min(g for g in group.elements if projection[g] == q) for q in quotient.elements]
    N_group = normal.as_group()
    restricted = M.restrict(normal)

    full = _ElementTables(group, M.action, M.modulus)
    sub_tables = _ElementTables(N_group, restricted.action, M.modulus)
    fixed_tables = _ElementTables(quotient, [M.action[g] for g in lifts], M.modulus,
                                  elements=_fixed_elements(M, normal))

    Z1 = _enumerate_cocycles(group, full, 1, budget)
    B1 = _enumerate_coboundaries(group, full, 1, budget)
    Z1_N = _enumerate_cocycles(N_group, sub_tables, 1, budget)
    B1_N = _enumerate_coboundaries(N_group, sub_tables, 1, budget)
    Z1_Q = _enumerate_cocycles(quotient, fixed_tables, 1, budget)
    B1_Q = _enumerate_coboundaries(quotient, fixed_tables, 1, budget)
    Z2_Q = _enumerate_cocycles(quotient, fixed_tables, 2, budget)
    B2_Q = _enumerate_coboundaries(quotient, fixed_tables, 2, budget)

    failures = []

    def inflate(z: Cochain, n: int) -> Cochain:
        flat = inflation(normal, M, n, fixed_tables.flatten(z))
        return full.encode(flat)

    def restrict(z: Cochain) -> Cochain:
        return sub_tables.encode(restriction(group, normal, M, 1, full.flatten(z)))

    for z in Z1_Q:
        if z not in B1_Q and inflate(z, 1) in B1:
            failures.append("inflation is not injective on H^1")
            break

    inflated = {_coset_key(full, inflate(z, 1), B1) for z in Z1_Q}
    kernel = {_coset_key(full, z, B1) for z in Z1 if restrict(z) in B1_N}
    if inflated != kernel:
        failures.append("image of inflation differs from kernel of restriction")

    def conjugate_class(z: Cochain, g: int) -> Cochain:
        values = []
        for local_n in N_group.elements:
            n_parent = normal.elements[local_n]
            conjugated = normal.local(group.mul(group.mul(group.inv(g), n_parent), g))
            vector = sub_tables.elements[z[conjugated]]
            values.extend(M.reduce(M.action[g].apply(vector)))
        return sub_tables.encode(values)

    restriction_classes = {_coset_key(sub_tables, restrict(z), B1_N) for z in Z1}
    for key in restriction_classes:
        if any(_coset_key(sub_tables, conjugate_class(key, g), B1_N) != key for g in lifts):
            failures.append("restriction leaves the Γ/N-invariant classes")
            break

    all_classes = {_coset_key(sub_tables, z, B1_N) for z in Z1_N}
    invariant_classes = {
        key for key in all_classes
        if all(_coset_key(sub_tables, conjugate_class(key, g), B1_N) == key for g in lifts)
    }
    H2_Q_classes = {_coset_key(fixed_tables, z, B2_Q) for z in Z2_Q}
    kernel_inf2 = [
        key for key in H2_Q_classes
        if is_coboundary(group, M, 2, full.flatten(inflate(key, 2)))
    ]
    lhs = len(invariant_classes)
    rhs = len(restriction_classes) * len(kernel_inf2)
    if lhs != rhs:
        failures.append(f"five-term count fails: |H^1(N,M)^(G/N)| = {lhs} but |im res|·|ker inf| = {rhs}")

    details = {
        'H1_quotient': len(Z1_Q) // len(B1_Q),
        'H1_group': len(Z1) // len(B1),
        'H1_normal_invariant': lhs,
        'image_restriction': len(restriction_classes),
        'kernel_inflation_2': len(kernel_inf2),
    }
    if failures:
        logger.warning(f"inflation-restriction check failed: {failures}")
    return CheckReport(not failures, details, failures)
