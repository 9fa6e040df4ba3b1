"""Full analysis pipeline for one torus: lattices, cohomology, dual torus, X_T and cross-checks"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional
import logging

from .cohomology import (
    CoefficientModule,
    brute_force_cohomology,
    cohomology_group,
    cyclic_oracle,
    tate_cohomology,
)
from .config import config
from .dual_torus import (
    IOTA_NOTE,
    CharacterTorusData,
    DiagonalizableGroup,
    SandwichReport,
    TorusSummary,
    XsComparison,
    character_torus_data,
    coinvariant_group,
    component_group,
    dual_torus_of,
    fixed_points,
    identity_component,
    sandwich_report,
    torus_summary,
    xs_comparison,
)
from .exceptions import BudgetExceeded
from .galois_lattice import (
    GaloisLattice,
    LocalArithmeticData,
    coinvariants,
    dual_module,
    invariants,
    projection_lattice,
)
from .integer_linalg import FinGenAbGroup, RationalLattice
from .weil_model import conventions

logger = logging.getLogger(__name__)


@dataclass
class CrossCheck:
    name: str
    status: str
    expected: str
    observed: str


@dataclass
class AnalysisResult:
    lattice: GaloisLattice
    arithmetic: Optional[LocalArithmeticData]
    x_gamma: RationalLattice
    x_coinvariants: FinGenAbGroup
    projection: RationalLattice
    cohomology: Dict[int, FinGenAbGroup]
    dual_cohomology: Dict[int, FinGenAbGroup]
    tate: Dict[int, FinGenAbGroup]
    dual_torus: DiagonalizableGroup
    fixed: DiagonalizableGroup
    fixed_component_group: FinGenAbGroup
    coinvariant: DiagonalizableGroup
    summary: TorusSummary
    character_torus: Optional[CharacterTorusData] = None
    xt_rank: Optional[int] = None
    sandwich: Optional[SandwichReport] = None
    xs: Optional[XsComparison] = None
    checks: List[CrossCheck] = field(default_factory=list)
    notes: Dict[str, Any] = field(default_factory=dict)

    @property
    def mismatches(self) -> List[CrossCheck]:
        return [c for c in self.checks if c.status == 'mismatch']


class TorusAnalyzer:
    """Runs every computation the workbench offers on a single (X, arithmetic) pair"""

    def __init__(self, budget: Optional[int] = None, check_modulus: int = 2):
        self.budget = budget
        self.check_modulus = check_modulus
        self.max_degree = config.get('cohomology.max_degree', 2)

    def analyze(self, X: GaloisLattice, arith: Optional[LocalArithmeticData] = None) -> AnalysisResult:
        logger.info(f"Analyzing torus of rank {X.rank} over a group of order {X.group.order}")
        X_hat = dual_module(X)
        M = CoefficientModule.lattice(X)
        M_hat = CoefficientModule.lattice(X_hat)
        degrees = range(self.max_degree + 1)

        cohomology = {n: cohomology_group(X.group, M, n).group for n in degrees}
        dual_cohomology = {n: cohomology_group(X.group, M_hat, n).group for n in degrees}
        tate = {n: tate_cohomology(X.group, M, n) for n in (-1, 0)}
        logger.debug(f"H^n(X) = {[str(g) for g in cohomology.values()]}")

        fixed = fixed_points(X)
        result = AnalysisResult(
            lattice=X,
            arithmetic=arith,
            x_gamma=invariants(X),
            x_coinvariants=coinvariants(X),
            projection=projection_lattice(X),
            cohomology=cohomology,
            dual_cohomology=dual_cohomology,
            tate=tate,
            dual_torus=dual_torus_of(X),
            fixed=fixed,
            fixed_component_group=component_group(fixed),
            coinvariant=coinvariant_group(X),
            summary=torus_summary(X),
            notes={**conventions(), 'iota': IOTA_NOTE, 'lattice_a': 'not computed'},
        )

        if arith is not None:
            logger.info(f"Computing X_T for {arith.label} arithmetic data")
            data = character_torus_data(X, arith)
            result.character_torus = data
            result.xt_rank = identity_component(DiagonalizableGroup(data.character_group)).dimension
            result.sandwich = sandwich_report(X, arith)
            result.xs = xs_comparison(X, arith)

        result.checks = self._cross_checks(result)
        logger.info(f"Analysis complete: {len(result.checks)} cross-checks, "
                    f"{len(result.mismatches)} mismatches")
        return result

    def _cross_checks(self, result: AnalysisResult) -> List[CrossCheck]:
        X = result.lattice
        checks = [_compare('component_group_vs_h1', result.cohomology[1], result.fixed_component_group)]
        checks.append(_compare('summary_dimensions', True, result.summary.dimensions_agree))

        if X.group.is_cyclic():
            for label, lattice, table in (('X', X, result.cohomology), ('dual', dual_module(X), result.dual_cohomology)):
                module = CoefficientModule.lattice(lattice)
                for n in range(1, self.max_degree + 1):
                    checks.append(_compare(f'cyclic_formula_{label}_H{n}',
                                           cyclic_oracle(X.group, module, n), table[n]))

        finite = CoefficientModule.finite(X, self.check_modulus)
        for n in range(1, self.max_degree + 1):
            name = f'enumeration_mod{self.check_modulus}_H{n}'
            resolution = cohomology_group(X.group, finite, n).group
            try:
                enumerated = brute_force_cohomology(X.group, finite, n, budget=self.budget)
            except BudgetExceeded as e:
                logger.debug(f"{name} skipped: {e}")
                checks.append(CrossCheck(name, 'budget_exceeded', str(resolution), '-'))
                continue
            checks.append(_compare(name, resolution, enumerated))

        if result.xs is not None and result.xs.unramified_equality_holds is not None:
            checks.append(_compare('unramified_xt_equals_xs', True, result.xs.unramified_equality_holds))

        for check in checks:
            if check.status == 'mismatch':
                logger.warning(f"cross-check {check.name}: expected {check.expected}, got {check.observed}")
        return checks


def _compare(name: str, expected, observed) -> CrossCheck:
    status = 'pass' if expected == observed else 'mismatch'
    return CrossCheck(name, status, str(expected), str(observed))
