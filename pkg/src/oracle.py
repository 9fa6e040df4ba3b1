"""Cross-checks of the resolution-based computations against independent oracles"""

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple
import logging

import numpy as np
import pandas as pd

from .catalog import (
    building_blocks,
    catalog_groups,
    catalog_instances,
    preset,
    random_mod_actions,
)
from .cohomology import (
    CoefficientModule,
    brute_force_cohomology,
    cohomology_group,
    corestriction_restriction_check,
    cyclic_oracle,
    inflation_restriction_check,
)
from .config import config
from .dual_torus import sandwich_report
from .exceptions import BadParams, BudgetExceeded, InvariantViolation, WorkbenchError
from .galois_lattice import (
    FiniteGroup,
    GaloisLattice,
    Subgroup,
    admissible_arithmetic,
    direct_sum,
)
from .integer_linalg import IntegerMatrix
from .weil_model import (
    UnramifiedWeilModel,
    exp_compatibility,
    frobenius_h1_count,
    invariant_spanning_set,
    invariant_torsion_points,
    invariant_vectors_with_denominators,
    is_coboundary_zeta,
    model_h1_count,
    random_invariant_vectors,
    verify_z_cocycle,
    verify_zeta_cocycle,
)

logger = logging.getLogger(__name__)

PASS = 'pass'
MISMATCH = 'mismatch'
SKIPPED = 'budget_exceeded'


@dataclass
class OracleScope:
    max_group_order: int
    max_modulus: int
    max_rank: int
    seed: int
    random_modules_per_group: int
    cyclic_max_order: int

    def __post_init__(self):
        minimums = {'max_group_order': 1, 'max_modulus': 2, 'max_rank': 1,
                    'random_modules_per_group': 0, 'cyclic_max_order': 1}
        for name, minimum in minimums.items():
            if getattr(self, name) < minimum:
                raise BadParams(f"oracle scope {name} must be at least {minimum}, got {getattr(self, name)}")

    @classmethod
    def from_config(cls, **overrides) -> 'OracleScope':
        oracle_cfg = config.oracle_config
        values = {
            'max_group_order': oracle_cfg.get('max_group_order', 6),
            'max_modulus': oracle_cfg.get('max_modulus', 4),
            'max_rank': oracle_cfg.get('max_rank', 2),
            'seed': oracle_cfg.get('seed', 0),
            'random_modules_per_group': oracle_cfg.get('random_modules_per_group', 2),
            'cyclic_max_order': oracle_cfg.get('cyclic_max_order', 12),
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)


class OracleHarness:
    """Runs the equivalence sweeps and collects one row per case"""

    def __init__(self, scope: Optional[OracleScope] = None, sign_fault: bool = False,
                 budget: Optional[int] = None):
        self.scope = scope or OracleScope.from_config()
        self.sign_fault = sign_fault
        self.budget = budget
        self.results: Dict[str, pd.DataFrame] = {}

    # -- module generation -------------------------------------------------

    def _lattices_for(self, group: FiniteGroup) -> List[Tuple[str, GaloisLattice]]:
        max_rank = self.scope.max_rank
        blocks = [(label, X) for label, X in building_blocks(group, max_rank) if X.rank <= max_rank]
        lattices = list(blocks)
        rank_one = [(label, X) for label, X in blocks if X.rank == 1]
        for i, (label_a, A) in enumerate(rank_one):
            for label_b, B in rank_one[i:]:
                if A.rank + B.rank <= max_rank:
                    lattices.append((f"{label_a}+{label_b}", direct_sum(A, B)))
        for name, _, X in catalog_instances(max_cyclic_order=self.scope.max_group_order):
            if X.group == group and X.rank <= max_rank:
                lattices.append((f"preset:{name}", X))
        return lattices

    def finite_modules(self, group: FiniteGroup,
                       rng: np.random.Generator) -> List[Tuple[str, CoefficientModule]]:
        """Reductions of small lattices plus seeded random actions mod m, deduplicated"""
        modules = []
        seen = set()
        for m in range(2, self.scope.max_modulus + 1):
            candidates = [(f"{label} mod {m}", CoefficientModule.finite(X, m))
                          for label, X in self._lattices_for(group)]
            for rank in range(1, self.scope.max_rank + 1):
                actions = random_mod_actions(group, rank, m, self.scope.random_modules_per_group, rng)
                for i, matrices in enumerate(actions):
                    candidates.append((f"random{rank}.{i} mod {m}",
                                       CoefficientModule.from_mod_action(group, matrices, m)))
            for label, M in candidates:
                key = (M.modulus, M.action)
                if key in seen:
                    continue
                seen.add(key)
                modules.append((label, M))
        return modules

    # -- sweeps --------------------------------------------------------------

    def resolution_vs_enumeration(self) -> pd.DataFrame:
        """Bar-resolution H^n against exhaustive enumeration for small finite modules"""
        logger.info(f"Resolution vs enumeration sweep: |G| <= {self.scope.max_group_order}, "
                    f"m <= {self.scope.max_modulus}, rank <= {self.scope.max_rank}")
        rng = np.random.default_rng(self.scope.seed)
        rows = []
        for group_name, group in catalog_groups(self.scope.max_group_order):
            for label, M in self.finite_modules(group, rng):
                for n in (1, 2):
                    row = {'group': group_name, 'order': group.order, 'module': label,
                           'modulus': M.modulus, 'rank': M.rank, 'degree': n}
                    resolution = cohomology_group(group, M, n, sign_fault=self.sign_fault).group
                    row['resolution'] = str(resolution)
                    try:
                        enumerated = brute_force_cohomology(group, M, n, budget=self.budget)
                    except BudgetExceeded as e:
                        logger.debug(f"skipped {group_name} {label} H^{n}: {e}")
                        row.update(oracle='-', status=SKIPPED)
                        rows.append(row)
                        continue
                    row['oracle'] = str(enumerated)
                    row['status'] = PASS if enumerated == resolution else MISMATCH
                    if row['status'] == MISMATCH:
                        logger.warning(f"H^{n}({group_name}, {label}): resolution {resolution}, "
                                       f"enumeration {enumerated}")
                    rows.append(row)
        frame = pd.DataFrame(rows)
        self.results['enumeration'] = frame
        logger.info(f"Enumeration sweep finished: {len(frame)} cases")
        return frame

    def resolution_vs_cyclic(self) -> pd.DataFrame:
        """Bar-resolution H^1, H^2 against the periodic formulas for every cyclic catalog lattice"""
        logger.info(f"Cyclic sweep up to order {self.scope.cyclic_max_order}")
        rows = []
        for name, params, X in catalog_instances(max_cyclic_order=self.scope.cyclic_max_order):
            if not X.group.is_cyclic():
                continue
            M = CoefficientModule.lattice(X)
            for n in (1, 2):
                resolution = cohomology_group(X.group, M, n, sign_fault=self.sign_fault).group
                formula = cyclic_oracle(X.group, M, n)
                periodic = cyclic_oracle(X.group, M, n + 2)
                agree = resolution == formula == periodic
                rows.append({
                    'preset': name, 'params': _format_params(params), 'order': X.group.order,
                    'rank': X.rank, 'degree': n, 'resolution': str(resolution),
                    'oracle': str(formula), 'status': PASS if agree else MISMATCH,
                })
                if not agree:
                    logger.warning(f"H^{n} of {name}{params}: resolution {resolution}, "
                                   f"cyclic formula {formula}, shifted {periodic}")
        frame = pd.DataFrame(rows)
        self.results['cyclic'] = frame
        return frame

    def sandwich_sweep(self) -> pd.DataFrame:
        """X^Γ ⊆ X_*(X_T) ⊆ Pr_Γ(X) for every catalog entry and admissible arithmetic datum"""
        logger.info("Sandwich sweep over the catalog")
        rows = []
        for name, params, X in catalog_instances(max_cyclic_order=self.scope.cyclic_max_order):
            for arith in admissible_arithmetic(X.group):
                row = {'preset': name, 'params': _format_params(params),
                       'inertia': len(arith.inertia.elements), 'frobenius': arith.frobenius}
                try:
                    report = sandwich_report(X, arith)
                except InvariantViolation as e:
                    logger.warning(f"sandwich violation for {name}{params}: {e}")
                    row.update(status=MISMATCH)
                    rows.append(row)
                    continue
                row.update(
                    index_lower=str(report.index_xt_over_x_gamma),
                    index_upper=str(report.index_pr_over_xt),
                    xt_rank=report.xt_rank,
                    status=PASS,
                )
                rows.append(row)
        frame = pd.DataFrame(rows)
        self.results['sandwich'] = frame
        return frame

    def weil_suite(self) -> pd.DataFrame:
        """Cocycle identities, coboundary test and exponential square on cyclic presets; H¹ counts on all"""
        weil_cfg = config.weil_config
        samples = weil_cfg.get('random_invariant_samples', 100)
        denominators = weil_cfg.get('denominator_bound', 12)
        max_torsion = weil_cfg.get('max_torsion_order', 12)
        logger.info("Weil-model suite over the catalog entries")
        rows = []
        for name, params, X in catalog_instances():
            failures = self._h1_count_failures(X)
            if not X.group.is_cyclic():
                rows.append({'preset': name, 'params': _format_params(params), 'failures': len(failures),
                             'status': PASS if not failures else MISMATCH})
                continue
            model = UnramifiedWeilModel(X)
            spanning = invariant_spanning_set(X)
            random_vectors = random_invariant_vectors(X, samples, self.scope.seed, denominators)
            torsion_pairs = model.sample_pairs()
            for nu in spanning + random_vectors:
                if not verify_zeta_cocycle(nu, model).passed:
                    failures.append(f"zeta cocycle {nu}")
                if is_coboundary_zeta(nu, model) != (not any(nu)):
                    failures.append(f"coboundary test {nu}")
            if not is_coboundary_zeta([0] * X.rank, model):
                failures.append("zero is not a coboundary")
            for order in range(1, max_torsion + 1):
                for s in invariant_torsion_points(X, order):
                    if not verify_z_cocycle(s, model, torsion_pairs).passed:
                        failures.append(f"z cocycle {s}")
            for nu in invariant_vectors_with_denominators(X, denominators):
                if not exp_compatibility(nu, model).passed:
                    failures.append(f"exp square {nu}")
            if failures:
                logger.warning(f"Weil suite failures for {name}: {failures[:3]}")
            rows.append({'preset': name, 'params': _format_params(params), 'failures': len(failures),
                         'status': PASS if not failures else MISMATCH})
        frame = pd.DataFrame(rows)
        self.results['weil'] = frame
        return frame

    @staticmethod
    def _h1_count_failures(X: GaloisLattice) -> List[str]:
        failures = []
        for arith in admissible_arithmetic(X.group):
            for m in range(2, 7):
                report = frobenius_h1_count(X, arith, m)
                if not report.agree:
                    failures.append(f"H1 count mod {m} ({arith.label}): {report.group} vs {report.enumerated}")
        if X.group.is_cyclic():
            model = UnramifiedWeilModel(X)
            for m in range(2, 7):
                try:
                    model_h1_count(model, m)
                except InvariantViolation as e:
                    failures.append(str(e))
        return failures

    def maps_suite(self) -> pd.DataFrame:
        """cor∘res = [Γ:H] and the five-term sequence on (ℤ/4, ℤ/2) and (S₃, A₃)"""
        logger.info("Restriction/corestriction/inflation suite")
        rows = []
        for label, group, normal, modules in _map_cases():
            for module_label, M in modules:
                for n in (1, 2):
                    report = corestriction_restriction_check(group, normal, M, n)
                    rows.append({'case': label, 'module': module_label, 'check': f'cor_res_{n}',
                                 'status': PASS if report.passed else MISMATCH})
                if M.modulus is not None:
                    try:
                        report = inflation_restriction_check(group, normal, M, budget=self.budget)
                        status = PASS if report.passed else MISMATCH
                    except BudgetExceeded:
                        status = SKIPPED
                    rows.append({'case': label, 'module': module_label,
                                 'check': 'inflation_restriction', 'status': status})
        frame = pd.DataFrame(rows)
        self.results['maps'] = frame
        return frame

    def run(self, sweeps: Optional[List[str]] = None) -> Dict[str, pd.DataFrame]:
        available = {
            'enumeration': self.resolution_vs_enumeration,
            'cyclic': self.resolution_vs_cyclic,
            'sandwich': self.sandwich_sweep,
            'weil': self.weil_suite,
            'maps': self.maps_suite,
        }
        for name in sweeps or list(available):
            if name not in available:
                raise WorkbenchError(f"unknown sweep {name!r}; expected one of {list(available)}")
            available[name]()
        return self.results

    def summary(self) -> pd.DataFrame:
        rows = []
        for name, frame in self.results.items():
            statuses = frame['status'] if 'status' in frame else pd.Series(dtype=str)
            rows.append({
                'sweep': name,
                'cases': len(frame),
                'passed': int((statuses == PASS).sum()),
                'mismatches': int((statuses == MISMATCH).sum()),
                'skipped': int((statuses == SKIPPED).sum()),
            })
        return pd.DataFrame(rows, columns=['sweep', 'cases', 'passed', 'mismatches', 'skipped'])

    @property
    def mismatches(self) -> int:
        return int(self.summary()['mismatches'].sum()) if self.results else 0


def _format_params(params: Dict[str, int]) -> str:
    return ",".join(f"{k}={v}" for k, v in sorted(params.items()))


def _power_character(group: FiniteGroup, generator: int, value: int, modulus: int) -> List[IntegerMatrix]:
    matrices = [None] * group.order
    x, v = group.identity_index, 1
    for _ in range(group.order):
        matrices[x] = IntegerMatrix([[v % modulus]])
        x, v = group.mul(x, generator), v * value
    return matrices


def _map_cases() -> List[Tuple[str, FiniteGroup, Subgroup, List[Tuple[str, CoefficientModule]]]]:
    cyclic4 = FiniteGroup.cyclic(4)
    half = cyclic4.generated_subgroup([2])
    regular4 = preset('weil_restriction', n=4)[0]
    cyclic_modules = [
        ('trivial mod 2', CoefficientModule.finite(GaloisLattice.trivial_action(cyclic4, 1), 2)),
        ('inversion mod 4', CoefficientModule.from_mod_action(cyclic4, _power_character(cyclic4, 1, -1, 4), 4)),
        ('regular mod 2', CoefficientModule.finite(regular4, 2)),
        ('regular', CoefficientModule.lattice(regular4)),
    ]
    weyl = preset('a2_weyl')[0]
    s3 = weyl.group
    rotations = s3.generated_subgroup([g for g in s3.elements if s3.element_order(g) == 3])
    sign = [IntegerMatrix([[1 if g in rotations.members else -1]]) for g in s3.elements]
    s3_modules = [
        ('a2 mod 2', CoefficientModule.finite(weyl, 2)),
        ('a2 mod 3', CoefficientModule.finite(weyl, 3)),
        ('sign mod 3', CoefficientModule.from_mod_action(s3, sign, 3)),
        ('a2', CoefficientModule.lattice(weyl)),
    ]
    return [
        ('Z/4 > Z/2', cyclic4, half, cyclic_modules),
        ('S3 > A3', s3, rotations, s3_modules),
    ]
