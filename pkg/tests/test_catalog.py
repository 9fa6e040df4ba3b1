"""Test cases for the preset catalog and random lattice generation"""

import numpy as np
import pytest

from src.catalog import (
    available_variants,
    building_blocks,
    catalog_frame,
    catalog_instances,
    catalog_keys,
    preset,
    random_lattice,
    random_mod_actions,
)
from src.exceptions import BadParams, InvalidArithmeticData, UnknownPreset
from src.galois_lattice import FiniteGroup
from src.integer_linalg import IntegerMatrix


class TestPresets:
    """Test suite for named presets"""

    def test_keys(self):
        assert catalog_keys() == [
            'split', 'sign', 'norm_one_cyclic', 'weil_restriction', 'a2_weyl', 'dihedral_plane'
        ]

    def test_default_parameters(self):
        split, _ = preset('split')
        assert split.rank == 2
        assert split.group.order == 1
        assert preset('norm_one_cyclic')[0].rank == 2
        assert preset('weil_restriction')[0].rank == 2

    def test_group_orders(self):
        assert preset('a2_weyl')[0].group.order == 6
        assert preset('dihedral_plane')[0].group.order == 8
        assert preset('sign')[0].group.order == 2

    def test_explicit_parameters(self):
        X, _ = preset('split', rank=3)
        assert X.rank == 3
        Y, _ = preset('norm_one_cyclic', n=2)
        assert Y.action == (IntegerMatrix([[1]]), IntegerMatrix([[-1]]))
        Z, _ = preset('weil_restriction', n=4)
        assert Z.rank == 4 and Z.group.order == 4

    def test_every_preset_validates(self):
        for key in catalog_keys():
            X, _ = preset(key)
            assert X.validate().valid

    def test_unknown_preset(self):
        with pytest.raises(UnknownPreset, match="unknown preset"):
            preset('nope')

    def test_bad_params(self):
        with pytest.raises(BadParams, match="outside"):
            preset('split', rank=0)
        with pytest.raises(BadParams, match="must be an integer"):
            preset('split', rank='3')
        with pytest.raises(BadParams, match="takes no parameter"):
            preset('sign', n=2)
        with pytest.raises(BadParams):
            preset('norm_one_cyclic', n=1)

    def test_arithmetic_variants(self):
        X, arith = preset('sign', arithmetic='unramified')
        assert arith.is_unramified()
        assert arith.frobenius == 1
        _, ramified = preset('sign', arithmetic='totally_ramified')
        assert ramified.inertia.order == 2

    def test_unramified_needs_cyclic_group(self):
        with pytest.raises(InvalidArithmeticData, match="cyclic"):
            preset('a2_weyl', arithmetic='unramified')
        with pytest.raises(InvalidArithmeticData, match="unknown arithmetic variant"):
            preset('sign', arithmetic='wild')

    def test_available_variants(self):
        assert available_variants(preset('a2_weyl')[0].group) == ['totally_ramified']
        assert available_variants(FiniteGroup.cyclic(3)) == ['unramified', 'totally_ramified']


class TestCatalogListing:
    """Test suite for catalog enumeration helpers"""

    def test_catalog_frame(self):
        frame = catalog_frame()
        assert len(frame) == 6
        assert list(frame.columns) == ['key', 'description', 'params', 'group_order', 'rank', 'variants']
        assert frame.set_index('key').loc['a2_weyl', 'variants'] == 'totally_ramified'

    def test_catalog_instances(self):
        instances = catalog_instances(3)
        names = [name for name, _, _ in instances]
        assert names.count('norm_one_cyclic') == 2
        assert names.count('weil_restriction') == 2
        assert len(instances) == 8


class TestRandomLattices:
    """Test suite for seeded random modules"""

    def test_building_blocks_of_z2(self):
        labels = [label for label, _ in building_blocks(FiniteGroup.cyclic(2), 2)]
        assert labels == ['trivial', 'sign[0]', 'perm[0]']

    def test_random_lattice_is_deterministic(self):
        group = preset('a2_weyl')[0].group
        first = random_lattice(group, 4, seed=7)
        second = random_lattice(group, 4, seed=7)
        assert first == second
        assert first.rank <= 4
        assert first.validate().valid

    def test_random_lattices_validate(self):
        for order in (2, 3, 4):
            group = FiniteGroup.cyclic(order)
            for seed in range(5):
                assert random_lattice(group, 4, seed).validate().valid

    def test_random_mod_actions(self):
        rng = np.random.default_rng(0)
        actions = random_mod_actions(FiniteGroup.cyclic(2), 1, 3, 2, rng)
        images = sorted(action[1][0, 0] for action in actions)
        assert images == [1, 2]
