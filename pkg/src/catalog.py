"""Preset torus data and seeded random Galois lattices"""

from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple
import logging

import numpy as np
import pandas as pd

from .config import config
from .exceptions import BadParams, InvalidArithmeticData, NotCyclic, UnknownPreset
from .galois_lattice import (
    FiniteGroup,
    GaloisLattice,
    LocalArithmeticData,
    Subgroup,
    conjugate,
    direct_sum,
    induce,
    regular_module,
)
from .integer_linalg import IntegerMatrix

logger = logging.getLogger(__name__)

ARITHMETIC_VARIANTS = ("unramified", "totally_ramified")


@dataclass(frozen=True)
class PresetInfo:
    key: str
    description: str
    params: Tuple[str, ...]
    builder: Callable[..., GaloisLattice]


def _check_int_param(name: str, value, minimum: int) -> int:
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
        raise BadParams(f"parameter {name} must be an integer, got {value!r}")
    maximum = config.get('catalog.max_parameter', 12)
    if not minimum <= value <= maximum:
        raise BadParams(f"parameter {name}={value} outside [{minimum}, {maximum}]")
    return int(value)


def _split(rank: int) -> GaloisLattice:
    rank = _check_int_param('rank', rank, 1)
    return GaloisLattice.trivial_action(FiniteGroup.trivial(), rank)


def _sign() -> GaloisLattice:
    group = FiniteGroup.cyclic(2)
    return GaloisLattice(group, [IntegerMatrix([[1]]), IntegerMatrix([[-1]])])


def _norm_one_cyclic(n: int) -> GaloisLattice:
    """ℤ[ℤ/n]/(norm) in the basis e_0..e_{n-2}, with σ·e_{n-2} = −(e_0 + ... + e_{n-2})"""
    n = _check_int_param('n', n, 2)
    rank = n - 1
    columns = []
    for i in range(rank):
        if i < rank - 1:
            columns.append([int(j == i + 1) for j in range(rank)])
        else:
            columns.append([-1] * rank)
    sigma = IntegerMatrix.from_columns(columns, rank)
    action = [IntegerMatrix.identity(rank)]
    for _ in range(1, n):
        action.append(action[-1] @ sigma)
    return GaloisLattice(FiniteGroup.cyclic(n), action)


def _weil_restriction(n: int) -> GaloisLattice:
    n = _check_int_param('n', n, 2)
    return regular_module(FiniteGroup.cyclic(n))


def _from_generators(generators: Sequence[Sequence[Sequence[int]]]) -> GaloisLattice:
    group, matrices = FiniteGroup.from_matrix_generators([IntegerMatrix(g) for g in generators])
    return GaloisLattice(group, matrices)


def _a2_weyl() -> GaloisLattice:
    # order-3 rotation of the A2 root lattice and the reflection swapping simple roots
    return _from_generators([[[0, -1], [1, -1]], [[0, 1], [1, 0]]])


def _dihedral_plane() -> GaloisLattice:
    return _from_generators([[[0, -1], [1, 0]], [[1, 0], [0, -1]]])


CATALOG: Dict[str, PresetInfo] = {
    info.key: info for info in [
        PresetInfo('split', 'trivial group on Z^rank', ('rank',), _split),
        PresetInfo('sign', 'Z/2 acting by -1 on Z (norm-one torus of a quadratic extension)', (), _sign),
        PresetInfo('norm_one_cyclic', 'Z[Z/n]/(norm), character lattice of the norm-one torus, rank n-1',
                   ('n',), _norm_one_cyclic),
        PresetInfo('weil_restriction', 'regular representation Z[Z/n]', ('n',), _weil_restriction),
        PresetInfo('a2_weyl', 'S3 acting on the A2 root lattice Z^2', (), _a2_weyl),
        PresetInfo('dihedral_plane', 'dihedral group of order 8 acting on Z^2', (), _dihedral_plane),
    ]
}


def catalog_keys() -> List[str]:
    return list(CATALOG)


def arithmetic_variant(group: FiniteGroup, variant: str) -> LocalArithmeticData:
    """Named inertia/Frobenius choice: 'unramified' needs a cyclic group"""
    if variant == 'unramified':
        try:
            frobenius = group.cyclic_generator()
        except NotCyclic:
            raise InvalidArithmeticData(
                f"unramified data needs a cyclic group; group of order {group.order} is not cyclic"
            )
        return LocalArithmeticData(group, [group.identity_index], frobenius, label=variant)
    if variant == 'totally_ramified':
        return LocalArithmeticData(group, group.elements, group.identity_index, label=variant)
    raise InvalidArithmeticData(
        f"unknown arithmetic variant {variant!r}; expected one of {ARITHMETIC_VARIANTS}"
    )


def available_variants(group: FiniteGroup) -> List[str]:
    variants = []
    for variant in ARITHMETIC_VARIANTS:
        try:
            arithmetic_variant(group, variant)
            variants.append(variant)
        except InvalidArithmeticData:
            continue
    return variants


def preset(name: str, arithmetic: Optional[str] = None,
           **params) -> Tuple[GaloisLattice, Optional[LocalArithmeticData]]:
    """Build a catalog entry, optionally paired with an arithmetic variant"""
    if name not in CATALOG:
        raise UnknownPreset(f"unknown preset {name!r}; known presets: {', '.join(CATALOG)}")
    info = CATALOG[name]
    unexpected = set(params) - set(info.params)
    if unexpected:
        raise BadParams(f"preset {name!r} takes no parameter(s) {sorted(unexpected)}")
    defaults = dict(config.get(f'catalog.defaults.{name}', {}) or {})
    defaults.update(params)
    lattice = info.builder(**{k: defaults[k] for k in info.params})
    arith = arithmetic_variant(lattice.group, arithmetic) if arithmetic else None
    logger.debug(f"built preset {name} {defaults} (rank {lattice.rank}, |G| = {lattice.group.order})")
    return lattice, arith


def catalog_instances(max_cyclic_order: Optional[int] = None) -> List[Tuple[str, Dict[str, int], GaloisLattice]]:
    """Every preset at its default parameters plus the cyclic families up to ``max_cyclic_order``"""
    instances = []
    for name, info in CATALOG.items():
        if 'n' in info.params and max_cyclic_order is not None:
            for n in range(2, max_cyclic_order + 1):
                instances.append((name, {'n': n}, preset(name, n=n)[0]))
        else:
            lattice, _ = preset(name)
            defaults = dict(config.get(f'catalog.defaults.{name}', {}) or {})
            instances.append((name, defaults, lattice))
    return instances


def catalog_frame() -> pd.DataFrame:
    """Listing of the catalog with group order, rank and admissible variants"""
    rows = []
    for name, info in CATALOG.items():
        lattice, _ = preset(name)
        rows.append({
            'key': name,
            'description': info.description,
            'params': ','.join(info.params),
            'group_order': lattice.group.order,
            'rank': lattice.rank,
            'variants': ','.join(available_variants(lattice.group)),
        })
    return pd.DataFrame(rows)


def catalog_groups(max_order: int) -> List[Tuple[str, FiniteGroup]]:
    """Distinct groups appearing in the catalog, including the cyclic families, of order ≤ max_order"""
    groups: List[Tuple[str, FiniteGroup]] = [('trivial', FiniteGroup.trivial())]
    for n in range(2, max_order + 1):
        groups.append((f'cyclic_{n}', FiniteGroup.cyclic(n)))
    for name in ('a2_weyl', 'dihedral_plane'):
        group = preset(name)[0].group
        if group.order <= max_order:
            groups.append((name, group))
    return groups


# ---------------------------------------------------------------------------
# Random modules
# ---------------------------------------------------------------------------

def _random_unimodular(rank: int, rng: np.random.Generator, steps: int = 6) -> Tuple[IntegerMatrix, IntegerMatrix]:
    """Product of random elementary matrices and its inverse"""
    P = IntegerMatrix.identity(rank)
    P_inv = IntegerMatrix.identity(rank)
    if rank < 2:
        return P, P_inv
    for _ in range(steps):
        i, j = rng.choice(rank, size=2, replace=False)
        c = int(rng.integers(-2, 3))
        E = [[int(a == b) for b in range(rank)] for a in range(rank)]
        E_inv = [row[:] for row in E]
        E[i][j] = c
        E_inv[i][j] = -c
        P = P @ IntegerMatrix(E)
        P_inv = IntegerMatrix(E_inv) @ P_inv
    return P, P_inv


def _sign_character(group: FiniteGroup, kernel: Subgroup) -> GaloisLattice:
    action = [IntegerMatrix([[1 if g in kernel.members else -1]]) for g in group.elements]
    return GaloisLattice(group, action)


def building_blocks(group: FiniteGroup, max_rank: int) -> List[Tuple[str, GaloisLattice]]:
    """Labelled small modules: trivial, sign characters and permutation modules ℤ[Γ/H]"""
    blocks = [("trivial", GaloisLattice.trivial_action(group, 1))]
    for sub in group.subgroups():
        members = "".join(str(g) for g in sub.elements)
        if sub.index == 2 and sub.is_normal():
            blocks.append((f"sign[{members}]", _sign_character(group, sub)))
        if 2 <= sub.index <= max_rank:
            blocks.append((f"perm[{members}]", induce(sub, GaloisLattice.trivial_action(sub.as_group(), 1))))
    return blocks


def random_lattice(group: FiniteGroup, max_rank: int, seed: int) -> GaloisLattice:
    """Seeded random Γ-lattice: a direct sum of building blocks in a random basis"""
    rng = np.random.default_rng(seed)
    blocks = [b for _, b in building_blocks(group, max_rank)]
    chosen = blocks[int(rng.integers(len(blocks)))]
    while True:
        fitting = [b for b in blocks if b.rank + chosen.rank <= max_rank]
        if not fitting or rng.random() < 0.4:
            break
        chosen = direct_sum(chosen, fitting[int(rng.integers(len(fitting)))])
    P, P_inv = _random_unimodular(chosen.rank, rng)
    return conjugate(chosen, P, P_inv)


def minimal_generators(group: FiniteGroup) -> List[int]:
    generators: List[int] = []
    span = group.generated_subgroup(generators)
    for g in group.elements:
        if g not in span.members:
            generators.append(g)
            span = group.generated_subgroup(generators)
    return generators


def random_mod_actions(group: FiniteGroup, rank: int, modulus: int, count: int,
                       rng: np.random.Generator, attempts: int = 400) -> List[List[IntegerMatrix]]:
    """Up to ``count`` distinct homomorphisms Γ → GL_rank(ℤ/modulus) found by random generator images"""
    generators = minimal_generators(group)
    found: List[List[IntegerMatrix]] = []
    seen = set()
    identity = IntegerMatrix.identity(rank)
    for _ in range(attempts):
        if len(found) >= count:
            break
        images = {g: IntegerMatrix(rng.integers(0, modulus, size=(rank, rank)).tolist())
                  for g in generators}
        action: Dict[int, IntegerMatrix] = {group.identity_index: identity}
        queue = [group.identity_index]
        consistent = True
        while queue and consistent:
            x = queue.pop(0)
            for s in generators:
                y = group.mul(x, s)
                image = (action[x] @ images[s]).mod(modulus)
                if y in action:
                    if action[y] != image:
                        consistent = False
                        break
                else:
                    action[y] = image
                    queue.append(y)
        if not consistent or len(action) != group.order:
            continue
        matrices = [action[g] for g in group.elements]
        if any((matrices[a] @ matrices[b]).mod(modulus) != matrices[group.mul(a, b)]
               for a in group.elements for b in group.elements):
            continue
        key = tuple(m for m in matrices)
        if key in seen:
            continue
        seen.add(key)
        found.append(matrices)
    return found
