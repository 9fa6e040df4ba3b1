"""Exact integer and rational linear algebra.

Matrices are numpy ``dtype=object`` arrays of Python ints, so entries never
overflow and no floating point is involved anywhere. Rational quantities use
``fractions.Fraction``.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union
import logging

import numpy as np
from sympy import factorint

from .exceptions import BadParams, DegeneratePairing, NotASublattice

logger = logging.getLogger(__name__)

INFINITE = "infinite"

IndexValue = Union[int, str]


def _exact_int(value) -> int:
    if isinstance(value, (bool, np.bool_)):
        return int(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, Fraction) and value.denominator == 1:
        return int(value.numerator)
    if isinstance(value, str):
        return int(value.strip())
    raise TypeError(f"exact integer expected, got {value!r}")


def _zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=object)


def _eye(n: int) -> np.ndarray:
    arr = _zeros(n, n)
    for i in range(n):
        arr[i, i] = 1
    return arr


def _matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.shape[1] != b.shape[0]:
        raise BadParams(f"shape mismatch {a.shape} @ {b.shape}")
    if a.shape[1] == 0 or a.shape[0] == 0 or b.shape[1] == 0:
        return _zeros(a.shape[0], b.shape[1])
    return a @ b


class IntegerMatrix:
    """Immutable rectangular matrix of unbounded integers"""

    __slots__ = ("_entries",)

    def __init__(self, entries, rows: Optional[int] = None, cols: Optional[int] = None):
        if isinstance(entries, IntegerMatrix):
            arr = entries._entries.copy()
        elif isinstance(entries, np.ndarray) and entries.ndim == 2:
            arr = _zeros(*entries.shape)
            for idx, value in np.ndenumerate(entries):
                arr[idx] = _exact_int(value)
        else:
            row_list = [list(r) for r in entries]
            n_rows = len(row_list) if rows is None else rows
            if len(row_list) != n_rows:
                raise BadParams(f"expected {n_rows} rows, got {len(row_list)}")
            if cols is None:
                cols = len(row_list[0]) if row_list else 0
            arr = _zeros(n_rows, cols)
            for i, row in enumerate(row_list):
                if len(row) != cols:
                    raise BadParams(f"row {i} has {len(row)} entries, expected {cols}")
                for j, value in enumerate(row):
                    arr[i, j] = _exact_int(value)
        arr.flags.writeable = False
        self._entries = arr

    @classmethod
    def _wrap(cls, arr: np.ndarray) -> 'IntegerMatrix':
        obj = cls.__new__(cls)
        arr = arr.copy()
        arr.flags.writeable = False
        obj._entries = arr
        return obj

    @classmethod
    def identity(cls, n: int) -> 'IntegerMatrix':
        return cls._wrap(_eye(n))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> 'IntegerMatrix':
        return cls._wrap(_zeros(rows, cols))

    @classmethod
    def diagonal(cls, values: Sequence[int], rows: Optional[int] = None,
                 cols: Optional[int] = None) -> 'IntegerMatrix':
        rows = len(values) if rows is None else rows
        cols = len(values) if cols is None else cols
        arr = _zeros(rows, cols)
        for i, value in enumerate(values):
            arr[i, i] = _exact_int(value)
        return cls._wrap(arr)

    @classmethod
    def hstack(cls, blocks: Sequence['IntegerMatrix'], rows: int) -> 'IntegerMatrix':
        """Concatenate side by side; ``rows`` fixes the shape when blocks is empty"""
        if not blocks:
            return cls.zeros(rows, 0)
        return cls._wrap(np.concatenate([b._entries for b in blocks], axis=1))

    @classmethod
    def vstack(cls, blocks: Sequence['IntegerMatrix'], cols: int) -> 'IntegerMatrix':
        if not blocks:
            return cls.zeros(0, cols)
        return cls._wrap(np.concatenate([b._entries for b in blocks], axis=0))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> 'IntegerMatrix':
        return cls([list(c) for c in columns], rows=len(columns), cols=rows).T

    @property
    def rows(self) -> int:
        return self._entries.shape[0]

    @property
    def cols(self) -> int:
        return self._entries.shape[1]

    @property
    def shape(self) -> Tuple[int, int]:
        return self._entries.shape

    @property
    def entries(self) -> np.ndarray:
        """Read-only object array view"""
        return self._entries

    @property
    def T(self) -> 'IntegerMatrix':
        return IntegerMatrix._wrap(self._entries.T)

    def to_lists(self) -> List[List[int]]:
        return [[int(v) for v in row] for row in self._entries]

    def row(self, i: int) -> Tuple[int, ...]:
        return tuple(int(v) for v in self._entries[i])

    def column(self, j: int) -> Tuple[int, ...]:
        return tuple(int(v) for v in self._entries[:, j])

    def columns(self) -> List[Tuple[int, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def __getitem__(self, index):
        value = self._entries[index]
        if isinstance(value, np.ndarray):
            return IntegerMatrix._wrap(value if value.ndim == 2 else value.reshape(1, -1))
        return int(value)

    def __matmul__(self, other: 'IntegerMatrix') -> 'IntegerMatrix':
        return IntegerMatrix._wrap(_matmul(self._entries, other._entries))

    def __add__(self, other: 'IntegerMatrix') -> 'IntegerMatrix':
        if self.shape != other.shape:
            raise BadParams(f"shape mismatch {self.shape} + {other.shape}")
        return IntegerMatrix._wrap(self._entries + other._entries)

    def __sub__(self, other: 'IntegerMatrix') -> 'IntegerMatrix':
        if self.shape != other.shape:
            raise BadParams(f"shape mismatch {self.shape} - {other.shape}")
        return IntegerMatrix._wrap(self._entries - other._entries)

    def __neg__(self) -> 'IntegerMatrix':
        return IntegerMatrix._wrap(-self._entries)

    def __mul__(self, scalar: int) -> 'IntegerMatrix':
        return IntegerMatrix._wrap(self._entries * _exact_int(scalar))

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntegerMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.all(self._entries == other._entries))

    def __hash__(self) -> int:
        return hash((self.shape, tuple(tuple(r) for r in self.to_lists())))

    def __repr__(self) -> str:
        return f"IntegerMatrix({self.to_lists()})"

    def apply(self, vector: Sequence[int]) -> Tuple[int, ...]:
        """Matrix times column vector"""
        column = _zeros(len(vector), 1)
        for i, value in enumerate(vector):
            column[i, 0] = _exact_int(value)
        return tuple(int(v) for v in _matmul(self._entries, column)[:, 0])

    def mod(self, m: int) -> 'IntegerMatrix':
        return IntegerMatrix._wrap(self._entries % m)

    def is_zero(self) -> bool:
        return bool(np.all(self._entries == 0))

    def is_square(self) -> bool:
        return self.rows == self.cols

    def determinant(self) -> int:
        if not self.is_square():
            raise BadParams("determinant of a non-square matrix")
        return _bareiss_determinant(self._entries)

    def is_unimodular(self) -> bool:
        return self.is_square() and abs(self.determinant()) == 1


def _bareiss_determinant(arr: np.ndarray) -> int:
    n = arr.shape[0]
    if n == 0:
        return 1
    a = [[int(v) for v in row] for row in arr]
    sign = 1
    previous = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // previous
        previous = a[k][k]
    return sign * a[n - 1][n - 1]


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SnfDecomposition:
    """U @ M @ V == D with U, V unimodular; ``U_inv`` is the inverse of U"""

    U: IntegerMatrix
    D: IntegerMatrix
    V: IntegerMatrix
    U_inv: IntegerMatrix

    @property
    def diagonal(self) -> Tuple[int, ...]:
        return tuple(self.D[i, i] for i in range(min(self.D.rows, self.D.cols)))

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)


def _smallest_nonzero(block: np.ndarray) -> Optional[Tuple[int, int]]:
    units = np.argwhere((block == 1) | (block == -1))
    if len(units):
        return int(units[0][0]), int(units[0][1])
    positions = np.argwhere(block != 0)
    if not len(positions):
        return None
    best = min(positions, key=lambda p: abs(block[p[0], p[1]]))
    return int(best[0]), int(best[1])


def _snf_arrays(M: np.ndarray, track_left: bool, track_right: bool):
    A = M.copy()
    r, c = A.shape
    U = _eye(r) if track_left else None
    U_inv = _eye(r) if track_left else None
    V = _eye(c) if track_right else None

    def swap_rows(i, j):
        if i == j:
            return
        A[[i, j]] = A[[j, i]]
        if track_left:
            U[[i, j]] = U[[j, i]]
            U_inv[:, [i, j]] = U_inv[:, [j, i]]

    def swap_cols(i, j):
        if i == j:
            return
        A[:, [i, j]] = A[:, [j, i]]
        if track_right:
            V[:, [i, j]] = V[:, [j, i]]

    t = 0
    while t < min(r, c):
        found = _smallest_nonzero(A[t:, t:])
        if found is None:
            break
        swap_rows(t, t + found[0])
        swap_cols(t, t + found[1])

        while True:
            p = A[t, t]
            q = A[t + 1:, t] // p
            if q.size and np.any(q != 0):
                A[t + 1:, t:] -= q[:, None] * A[t, t:][None, :]
                if track_left:
                    U[t + 1:] -= q[:, None] * U[t][None, :]
                    U_inv[:, t] += _matmul(U_inv[:, t + 1:], q[:, None])[:, 0]
            q = A[t, t + 1:] // p
            if q.size and np.any(q != 0):
                A[t:, t + 1:] -= A[t:, t][:, None] * q[None, :]
                if track_right:
                    V[:, t + 1:] -= V[:, t][:, None] * q[None, :]

            column_rest = np.argwhere(A[t + 1:, t] != 0)
            row_rest = np.argwhere(A[t, t + 1:] != 0)
            if len(column_rest) or len(row_rest):
                candidates = [(abs(A[t + 1 + k[0], t]), 'row', t + 1 + int(k[0])) for k in column_rest]
                candidates += [(abs(A[t, t + 1 + k[0]]), 'col', t + 1 + int(k[0])) for k in row_rest]
                _, kind, index = min(candidates)
                if kind == 'row':
                    swap_rows(t, index)
                else:
                    swap_cols(t, index)
                continue

            remainders = np.argwhere(A[t + 1:, t + 1:] % p != 0)
            if len(remainders):
                i = t + 1 + int(remainders[0][0])
                A[t, t:] += A[i, t:]
                if track_left:
                    U[t] += U[i]
                    U_inv[:, i] -= U_inv[:, t]
                continue
            break

        if A[t, t] < 0:
            A[t, t:] = -A[t, t:]
            if track_left:
                U[t] = -U[t]
                U_inv[:, t] = -U_inv[:, t]
        t += 1

    return U, A, V, U_inv


def smith_normal_form(M: IntegerMatrix) -> SnfDecomposition:
    """Smith normal form with both unimodular transforms"""
    logger.debug(f"SNF of {M.rows}x{M.cols} matrix")
    U, D, V, U_inv = _snf_arrays(M.entries, track_left=True, track_right=True)
    return SnfDecomposition(
        U=IntegerMatrix._wrap(U),
        D=IntegerMatrix._wrap(D),
        V=IntegerMatrix._wrap(V),
        U_inv=IntegerMatrix._wrap(U_inv),
    )


def invariant_factors(M: IntegerMatrix) -> Tuple[int, ...]:
    """SNF diagonal only; skips the transforms for large coboundary matrices"""
    _, D, _, _ = _snf_arrays(M.entries, track_left=False, track_right=False)
    return tuple(int(D[i, i]) for i in range(min(D.shape)))


# ---------------------------------------------------------------------------
# Finitely generated abelian groups
# ---------------------------------------------------------------------------

def _prime_power_parts(n: int) -> Dict[int, int]:
    return {p: p ** e for p, e in factorint(n).items()}


@dataclass(frozen=True)
class FinGenAbGroup:
    """ℤ^free_rank ⊕ ℤ/d₁ ⊕ ... ⊕ ℤ/d_k with d₁ | d₂ | ... | d_k, each d_i ≥ 2"""

    free_rank: int = 0
    torsion: Tuple[int, ...] = ()

    def __post_init__(self):
        torsion = tuple(int(d) for d in self.torsion)
        object.__setattr__(self, 'torsion', torsion)
        object.__setattr__(self, 'free_rank', int(self.free_rank))
        if self.free_rank < 0:
            raise BadParams("free rank must be nonnegative")
        for d in torsion:
            if d < 2:
                raise BadParams(f"invariant factor {d} < 2")
        for a, b in zip(torsion, torsion[1:]):
            if b % a:
                raise BadParams(f"invariant factors {torsion} do not form a divisibility chain")

    @classmethod
    def trivial(cls) -> 'FinGenAbGroup':
        return cls()

    @classmethod
    def from_cyclic_orders(cls, orders: Iterable[int], free_rank: int = 0) -> 'FinGenAbGroup':
        """Direct sum of ℤ/n for each n (n = 0 meaning ℤ), in invariant-factor form"""
        by_prime: Dict[int, List[int]] = {}
        for n in orders:
            n = abs(int(n))
            if n == 0:
                free_rank += 1
                continue
            for p, q in _prime_power_parts(n).items():
                by_prime.setdefault(p, []).append(q)
        length = max((len(v) for v in by_prime.values()), default=0)
        factors = [1] * length
        for powers in by_prime.values():
            powers.sort(reverse=True)
            for i, q in enumerate(powers):
                factors[i] *= q
        return cls(free_rank=free_rank, torsion=tuple(sorted(factors)))

    @classmethod
    def from_element_orders(cls, orders: Iterable[int]) -> 'FinGenAbGroup':
        """Isomorphism type of a finite abelian group from the multiset of its element orders.

        The number of elements killed by p^j determines the p-primary partition.
        """
        orders = list(orders)
        size = len(orders)
        cyclic = []
        for p, total in factorint(size).items():
            previous = 0
            at_least = []
            j = 0
            while previous < total:
                j += 1
                count = sum(1 for o in orders if (p ** j) % o == 0 and _is_p_power(o, p))
                exponent = _exact_log(count, p)
                at_least.append(exponent - previous)
                previous = exponent
            # at_least[j-1] = number of cyclic factors of order >= p^j
            for j, count in enumerate(at_least, start=1):
                following = at_least[j] if j < len(at_least) else 0
                cyclic.extend([p ** j] * (count - following))
        return cls.from_cyclic_orders(cyclic)

    @property
    def elementary_divisors(self) -> Tuple[int, ...]:
        parts = []
        for d in self.torsion:
            parts.extend(_prime_power_parts(d).values())
        return tuple(sorted(parts))

    @property
    def torsion_order(self) -> int:
        order = 1
        for d in self.torsion:
            order *= d
        return order

    @property
    def order(self) -> Optional[int]:
        """Group order, or None when infinite"""
        return None if self.free_rank else self.torsion_order

    @property
    def exponent(self) -> Optional[int]:
        if self.free_rank:
            return None
        return self.torsion[-1] if self.torsion else 1

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def is_finite(self) -> bool:
        return self.free_rank == 0

    def torsion_subgroup(self) -> 'FinGenAbGroup':
        return FinGenAbGroup(torsion=self.torsion)

    def free_quotient(self) -> 'FinGenAbGroup':
        return FinGenAbGroup(free_rank=self.free_rank)

    def direct_sum(self, other: 'FinGenAbGroup') -> 'FinGenAbGroup':
        return FinGenAbGroup.from_cyclic_orders(
            self.torsion + other.torsion, free_rank=self.free_rank + other.free_rank
        )

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " x ".join(parts) if parts else "0"


def _is_p_power(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def _exact_log(n: int, p: int) -> int:
    e = 0
    while n > 1:
        if n % p:
            raise BadParams(f"{n} is not a power of {p}")
        n //= p
        e += 1
    return e


# ---------------------------------------------------------------------------
# Lattices in ℚ^n
# ---------------------------------------------------------------------------

def _hnf_rows(G: np.ndarray) -> np.ndarray:
    """Row Hermite normal form: echelon, positive pivots, entries above pivots in [0, pivot)"""
    A = G.copy()
    k, n = A.shape
    pivot_row = 0
    for j in range(n):
        if pivot_row == k:
            break
        while True:
            nonzero = [i for i in range(pivot_row, k) if A[i, j] != 0]
            if not nonzero:
                break
            best = min(nonzero, key=lambda i: abs(A[i, j]))
            if best != pivot_row:
                A[[pivot_row, best]] = A[[best, pivot_row]]
            p = A[pivot_row, j]
            q = A[pivot_row + 1:, j] // p
            if q.size:
                A[pivot_row + 1:] -= q[:, None] * A[pivot_row][None, :]
            if not np.any(A[pivot_row + 1:, j] != 0):
                break
        if A[pivot_row, j] == 0:
            continue
        if A[pivot_row, j] < 0:
            A[pivot_row] = -A[pivot_row]
        p = A[pivot_row, j]
        for i in range(pivot_row):
            q = A[i, j] // p
            if q:
                A[i] -= q * A[pivot_row]
        pivot_row += 1
    return A[:pivot_row]


def hermite_normal_form(M: IntegerMatrix) -> IntegerMatrix:
    """Row-style HNF of the row span of M, zero rows dropped"""
    return IntegerMatrix._wrap(_hnf_rows(M.entries))


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return Fraction(value.strip())
    return Fraction(_exact_int(value))


@dataclass(frozen=True)
class RationalLattice:
    """(1/denominator)·rowspan(numerators) ⊂ ℚ^ambient_dim, stored canonically.

    ``numerators`` is in row Hermite normal form and the denominator is
    minimal, so two lattices are equal iff their representations are equal.
    """

    ambient_dim: int
    denominator: int
    numerators: Tuple[Tuple[int, ...], ...]

    @classmethod
    def from_generators(cls, vectors: Iterable[Sequence], ambient_dim: int) -> 'RationalLattice':
        rows = [[_fraction(v) for v in vec] for vec in vectors]
        for row in rows:
            if len(row) != ambient_dim:
                raise BadParams(f"vector of length {len(row)} in ambient dimension {ambient_dim}")
        denominator = 1
        for row in rows:
            for v in row:
                denominator = _lcm(denominator, v.denominator)
        arr = _zeros(len(rows), ambient_dim)
        for i, row in enumerate(rows):
            for j, v in enumerate(row):
                arr[i, j] = int(v * denominator)
        hnf = _hnf_rows(arr)
        common = denominator
        for v in hnf.flat:
            common = gcd(common, int(v))
        numerators = tuple(tuple(int(v) // common for v in row) for row in hnf)
        return cls(ambient_dim=ambient_dim, denominator=denominator // common, numerators=numerators)

    @classmethod
    def zero(cls, ambient_dim: int) -> 'RationalLattice':
        return cls(ambient_dim=ambient_dim, denominator=1, numerators=())

    @classmethod
    def standard(cls, ambient_dim: int) -> 'RationalLattice':
        return cls.from_generators(IntegerMatrix.identity(ambient_dim).to_lists(), ambient_dim)

    @classmethod
    def column_span(cls, M: IntegerMatrix) -> 'RationalLattice':
        return cls.from_generators(M.columns(), M.rows)

    @property
    def rank(self) -> int:
        return len(self.numerators)

    @property
    def basis(self) -> Tuple[Tuple[Fraction, ...], ...]:
        return tuple(tuple(Fraction(v, self.denominator) for v in row) for row in self.numerators)

    def is_integral(self) -> bool:
        return self.denominator == 1

    def _pivots(self) -> List[int]:
        return [next(j for j, v in enumerate(row) if v != 0) for row in self.numerators]

    def coordinates(self, vector: Sequence) -> Optional[Tuple[Fraction, ...]]:
        """Coefficients of ``vector`` in the canonical basis, or None off the rational span"""
        target = [_fraction(v) * self.denominator for v in vector]
        if len(target) != self.ambient_dim:
            raise BadParams("vector dimension does not match the lattice")
        coefficients = []
        residual = list(target)
        for row, pivot in zip(self.numerators, self._pivots()):
            c = residual[pivot] / row[pivot]
            coefficients.append(c)
            if c:
                residual = [r - c * v for r, v in zip(residual, row)]
        if any(residual):
            return None
        return tuple(coefficients)

    def contains(self, vector: Sequence) -> bool:
        coefficients = self.coordinates(vector)
        return coefficients is not None and all(c.denominator == 1 for c in coefficients)

    def is_sublattice_of(self, other: 'RationalLattice') -> bool:
        if self.ambient_dim != other.ambient_dim:
            return False
        return all(other.contains(v) for v in self.basis)

    def scaled(self, factor) -> 'RationalLattice':
        factor = _fraction(factor)
        return RationalLattice.from_generators(
            [[v * factor for v in row] for row in self.basis], self.ambient_dim
        )

    def __str__(self) -> str:
        if not self.numerators:
            return "0"
        vectors = ", ".join(
            "(" + ", ".join(str(v) for v in row) + ")" for row in self.basis
        )
        return f"span_Z{{{vectors}}}"


def kernel_lattice(M: IntegerMatrix) -> RationalLattice:
    """Saturated lattice ker(M) ∩ ℤ^cols"""
    if M.cols == 0:
        return RationalLattice.zero(0)
    if M.rows == 0:
        return RationalLattice.standard(M.cols)
    _, D, V, _ = _snf_arrays(M.entries, track_left=False, track_right=True)
    rank = sum(1 for i in range(min(D.shape)) if D[i, i] != 0)
    return RationalLattice.from_generators(
        [list(V[:, j]) for j in range(rank, M.cols)], M.cols
    )


def kernel_mod(M: IntegerMatrix, m: int) -> RationalLattice:
    """Lattice {x ∈ ℤ^cols : Mx ≡ 0 mod m}; always contains mℤ^cols"""
    if m < 1:
        raise BadParams("modulus must be positive")
    if M.cols == 0:
        return RationalLattice.zero(0)
    if M.rows == 0:
        return RationalLattice.standard(M.cols)
    _, D, V, _ = _snf_arrays(M.entries, track_left=False, track_right=True)
    generators = []
    for j in range(M.cols):
        d = int(D[j, j]) if j < min(D.shape) else 0
        scale = m // gcd(m, d) if d else 1
        generators.append([int(v) * scale for v in V[:, j]])
    return RationalLattice.from_generators(generators, M.cols)


def cokernel(M: IntegerMatrix, target_rank: Optional[int] = None) -> FinGenAbGroup:
    """ℤ^target_rank / column-span(M) in invariant-factor form"""
    target_rank = M.rows if target_rank is None else target_rank
    if M.rows != target_rank:
        raise BadParams(f"matrix has {M.rows} rows, expected {target_rank}")
    if M.cols == 0 or M.rows == 0:
        return FinGenAbGroup(free_rank=target_rank)
    diagonal = invariant_factors(M)
    nonzero = [d for d in diagonal if d != 0]
    return FinGenAbGroup(
        free_rank=target_rank - len(nonzero),
        torsion=tuple(d for d in nonzero if d > 1),
    )


def _integer_coordinates(inner: RationalLattice, outer: RationalLattice) -> List[List[int]]:
    if inner.ambient_dim != outer.ambient_dim:
        raise BadParams("lattices live in different ambient spaces")
    rows = []
    for vector in inner.basis:
        coefficients = outer.coordinates(vector)
        if coefficients is None or any(c.denominator != 1 for c in coefficients):
            raise NotASublattice(f"{inner} is not contained in {outer}")
        rows.append([int(c) for c in coefficients])
    return rows


def lattice_index(inner: RationalLattice, outer: RationalLattice) -> IndexValue:
    """[outer : inner], or INFINITE when inner ⊆ outer has smaller rank"""
    rows = _integer_coordinates(inner, outer)
    if inner.rank < outer.rank:
        return INFINITE
    if inner.rank == 0:
        return 1
    return abs(IntegerMatrix(rows).determinant())


def lattice_quotient(outer: RationalLattice, inner: RationalLattice) -> FinGenAbGroup:
    """outer / inner as an abstract group; inner must be contained in outer"""
    rows = _integer_coordinates(inner, outer)
    if outer.rank == 0:
        return FinGenAbGroup.trivial()
    coordinates = IntegerMatrix(rows, rows=len(rows), cols=outer.rank).T
    return cokernel(coordinates, outer.rank)


# ---------------------------------------------------------------------------
# Rational helpers
# ---------------------------------------------------------------------------

def _rref(rows: List[List[Fraction]]) -> Tuple[List[List[Fraction]], List[int]]:
    A = [list(r) for r in rows]
    pivots = []
    r = 0
    n_cols = len(A[0]) if A else 0
    for j in range(n_cols):
        pivot = next((i for i in range(r, len(A)) if A[i][j] != 0), None)
        if pivot is None:
            continue
        A[r], A[pivot] = A[pivot], A[r]
        p = A[r][j]
        A[r] = [v / p for v in A[r]]
        for i in range(len(A)):
            if i != r and A[i][j] != 0:
                f = A[i][j]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(j)
        r += 1
        if r == len(A):
            break
    return A, pivots


def rational_rank(rows: Sequence[Sequence]) -> int:
    if not rows:
        return 0
    _, pivots = _rref([[_fraction(v) for v in row] for row in rows])
    return len(pivots)


def rational_inverse(rows: Sequence[Sequence]) -> List[List[Fraction]]:
    n = len(rows)
    augmented = [
        [_fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)]
        for i, row in enumerate(rows)
    ]
    reduced, pivots = _rref(augmented)
    if pivots[:n] != list(range(n)):
        raise DegeneratePairing("matrix is singular")
    return [row[n:] for row in reduced]


def rational_solve(matrix: Sequence[Sequence], rhs: Sequence) -> Optional[Tuple[Fraction, ...]]:
    """Some x ∈ ℚ^cols with matrix·x = rhs, or None when inconsistent"""
    n_cols = len(matrix[0]) if matrix else 0
    augmented = [[_fraction(v) for v in row] + [_fraction(b)] for row, b in zip(matrix, rhs)]
    if not augmented:
        return tuple()
    reduced, pivots = _rref(augmented)
    if n_cols in pivots:
        return None
    solution = [Fraction(0)] * n_cols
    for row, pivot in zip(reduced, pivots):
        solution[pivot] = row[n_cols]
    return tuple(solution)


def dual_lattice(L: RationalLattice, pairing: Optional[IntegerMatrix] = None) -> RationalLattice:
    """{v ∈ span(L) : pairing(v, ℓ) ∈ ℤ for all ℓ ∈ L}; identity pairing by default"""
    n = L.ambient_dim
    G = IntegerMatrix.identity(n) if pairing is None else pairing
    if G.shape != (n, n):
        raise BadParams(f"pairing must be {n}x{n}")
    if L.rank == 0:
        return RationalLattice.zero(n)
    B = [list(row) for row in L.basis]
    G_rows = G.to_lists()
    BG = [[sum(b[k] * G_rows[k][j] for k in range(n)) for j in range(n)] for b in B]
    gram = [[sum(x * y for x, y in zip(bg, b)) for b in B] for bg in BG]
    try:
        inverse = rational_inverse(gram)
    except DegeneratePairing:
        raise DegeneratePairing(f"pairing is singular on the span of {L}")
    dual_rows = [[sum(c * B[i][j] for i, c in enumerate(row)) for j in range(n)] for row in inverse]
    return RationalLattice.from_generators(dual_rows, n)


def solve_integral(A: IntegerMatrix, b: Sequence[int]) -> Optional[Tuple[int, ...]]:
    """Some x ∈ ℤ^cols with A·x = b, or None when no integral solution exists"""
    if len(b) != A.rows:
        raise BadParams(f"right-hand side has length {len(b)}, expected {A.rows}")
    if A.cols == 0:
        return () if all(_exact_int(v) == 0 for v in b) else None
    snf = smith_normal_form(A)
    transformed = snf.U.apply(b)
    diagonal = snf.diagonal
    y = [0] * A.cols
    for i, value in enumerate(transformed):
        d = diagonal[i] if i < len(diagonal) else 0
        if d == 0:
            if value != 0:
                return None
            continue
        if value % d:
            return None
        y[i] = value // d
    return snf.V.apply(y)
