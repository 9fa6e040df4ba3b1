"""Test cases for the oracle harness"""

import pandas as pd
import pytest

from src.exceptions import BadParams, WorkbenchError
from src.oracle import MISMATCH, PASS, SKIPPED, OracleHarness, OracleScope


@pytest.fixture
def small_scope():
    """Scope small enough for the whole enumeration sweep to run in a unit test"""
    return OracleScope(
        max_group_order=3,
        max_modulus=3,
        max_rank=1,
        seed=0,
        random_modules_per_group=1,
        cyclic_max_order=5,
    )


@pytest.fixture
def harness(small_scope):
    return OracleHarness(small_scope)


class TestOracleScope:
    """Test suite for OracleScope"""

    def test_from_config_defaults(self):
        scope = OracleScope.from_config()
        assert scope.max_group_order == 6
        assert scope.max_modulus == 4
        assert scope.cyclic_max_order == 12

    def test_overrides_ignore_none(self):
        scope = OracleScope.from_config(max_modulus=2, seed=None)
        assert scope.max_modulus == 2
        assert scope.seed == 0

    def test_rejects_scope_without_modules(self):
        with pytest.raises(BadParams, match="max_modulus must be at least 2"):
            OracleScope.from_config(max_modulus=1)
        with pytest.raises(BadParams, match="max_rank"):
            OracleScope.from_config(max_rank=0)


class TestOracleHarness:
    """Test suite for the equivalence sweeps"""

    def test_enumeration_sweep(self, harness):
        frame = harness.resolution_vs_enumeration()
        assert not frame.empty
        assert {'group', 'module', 'modulus', 'degree', 'resolution', 'oracle', 'status'} <= set(frame.columns)
        assert (frame['status'] == PASS).all()
        assert set(frame['group']) == {'trivial', 'cyclic_2', 'cyclic_3'}

    def test_enumeration_is_deterministic(self, small_scope):
        first = OracleHarness(small_scope).resolution_vs_enumeration()
        second = OracleHarness(small_scope).resolution_vs_enumeration()
        pd.testing.assert_frame_equal(first, second)

    def test_cyclic_sweep(self, harness):
        frame = harness.resolution_vs_cyclic()
        assert (frame['status'] == PASS).all()
        assert frame['order'].max() == 5

    def test_sign_fault_is_detected(self, small_scope):
        faulty = OracleHarness(small_scope, sign_fault=True)
        frame = faulty.resolution_vs_cyclic()
        assert (frame['status'] == MISMATCH).any()
        assert faulty.mismatches > 0

    def test_budget_refusals_are_skipped(self, small_scope):
        frame = OracleHarness(small_scope, budget=1).resolution_vs_enumeration()
        assert (frame['status'] == SKIPPED).all()

    def test_sandwich_sweep(self, harness):
        frame = harness.sandwich_sweep()
        assert (frame['status'] == PASS).all()
        swap = frame[(frame['preset'] == 'weil_restriction') & (frame['params'] == 'n=2')
                     & (frame['inertia'] == 1)]
        assert swap[['index_lower', 'index_upper']].values.tolist() == [['2', '1']]

    def test_maps_suite(self, harness):
        frame = harness.maps_suite()
        assert (frame['status'] == PASS).all()
        assert set(frame['check']) == {'cor_res_1', 'cor_res_2', 'inflation_restriction'}

    def test_weil_suite(self, harness):
        frame = harness.weil_suite()
        assert (frame['status'] == PASS).all()
        assert len(frame) == 6

    def test_summary(self, harness):
        harness.run(['cyclic', 'sandwich'])
        summary = harness.summary()
        assert list(summary.columns) == ['sweep', 'cases', 'passed', 'mismatches', 'skipped']
        assert list(summary['sweep']) == ['cyclic', 'sandwich']
        assert harness.mismatches == 0

    def test_unknown_sweep(self, harness):
        with pytest.raises(WorkbenchError, match="unknown sweep"):
            harness.run(['bogus'])

    def test_empty_summary(self, harness):
        assert harness.summary().empty
        assert harness.mismatches == 0
