"""Command-line front end of the torus workbench"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from pydantic import ValidationError

from src.analyzer import TorusAnalyzer
from src.catalog import ARITHMETIC_VARIANTS, arithmetic_variant, catalog_frame, preset
from src.cohomology import CoefficientModule, cohomology_group
from src.config import config
from src.dual_torus import sandwich_report, xs_comparison
from src.exceptions import InvalidArithmeticData, InvariantViolation, WorkbenchError
from src.galois_lattice import GaloisLattice, LocalArithmeticData, dual_module
from src.oracle import OracleHarness, OracleScope
from src.weil_model import (
    UnramifiedWeilModel,
    conventions,
    exp_compatibility,
    invariant_spanning_set,
    invariant_torsion_points,
    invariant_vectors_with_denominators,
    is_coboundary_zeta,
    model_h1_count,
    random_invariant_vectors,
    verify_z_cocycle,
    verify_zeta_cocycle,
)

from .schemas import (
    AnalysisReport,
    ArithmeticInput,
    CatalogEntryDoc,
    CatalogReport,
    CohomologyReport,
    GroupDoc,
    IdentityCheckDoc,
    OracleReport,
    SandwichCommandReport,
    SandwichDoc,
    SweepSummaryDoc,
    WeilReport,
    XsDoc,
    fmt_int,
    parse_input,
    render_analysis_text,
    render_json,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INVARIANT = 2
EXIT_MISMATCH = 3


class CommandError(WorkbenchError):
    """Bad command-line usage that argparse cannot detect"""


# ---------------------------------------------------------------------------
# Source resolution
# ---------------------------------------------------------------------------

def _parse_params(values: Optional[Sequence[str]]) -> Dict[str, int]:
    params = {}
    for item in values or []:
        key, sep, raw = item.partition('=')
        if not sep:
            raise CommandError(f"preset parameter {item!r} must look like key=value")
        try:
            params[key.strip()] = int(raw)
        except ValueError:
            raise CommandError(f"preset parameter {key} must be an integer, got {raw!r}")
    return params


def load_source(source: str, params: Optional[Dict[str, int]] = None,
                arith_spec: Optional[str] = None) -> Tuple[GaloisLattice, Optional[LocalArithmeticData]]:
    """A preset key or a TorusInputDocument path, plus an optional arithmetic variant or file"""
    path = Path(source)
    if path.suffix == '.json' or path.exists():
        logger.info(f"Loading torus input document {path}")
        X, arith = parse_input(path.read_text()).to_objects()
        if params:
            raise CommandError("preset parameters are not accepted with an input file")
    else:
        X, arith = preset(source, **(params or {}))
    if arith_spec is None:
        return X, arith
    if arith_spec in ARITHMETIC_VARIANTS:
        return X, arithmetic_variant(X.group, arith_spec)
    arith_path = Path(arith_spec)
    if not arith_path.exists():
        raise InvalidArithmeticData(
            f"--arith must be one of {ARITHMETIC_VARIANTS} or a JSON file, got {arith_spec!r}"
        )
    doc = ArithmeticInput.model_validate_json(arith_path.read_text())
    return X, LocalArithmeticData(X.group, doc.inertia, doc.frobenius, label='file')


def _emit(text: str):
    sys.stdout.write(text)


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def cmd_analyze(args) -> int:
    X, arith = load_source(args.source, _parse_params(args.param), args.arith)
    result = TorusAnalyzer(budget=args.budget).analyze(X, arith)
    report = AnalysisReport.from_result(args.source, result)
    _emit(render_analysis_text(report) if args.text else render_json('analyze', report))
    return EXIT_MISMATCH if result.mismatches else EXIT_OK


def cmd_cohomology(args) -> int:
    X, _ = load_source(args.source, _parse_params(args.param))
    if args.dual:
        X = dual_module(X)
    M = CoefficientModule.lattice(X) if args.mod is None else CoefficientModule.finite(X, args.mod)
    H = cohomology_group(X.group, M, args.degree, representatives=True)
    report = CohomologyReport(
        source=args.source,
        degree=fmt_int(args.degree),
        dual=args.dual,
        modulus=None if args.mod is None else fmt_int(args.mod),
        group=GroupDoc.of(H.group),
        representatives=[[fmt_int(v) for v in z] for z in H.representatives],
    )
    _emit(render_json('cohomology', report))
    return EXIT_OK


def cmd_sandwich(args) -> int:
    X, arith = load_source(args.source, _parse_params(args.param), args.arith)
    if arith is None:
        raise InvalidArithmeticData("sandwich needs arithmetic data (--arith or an input file with it)")
    report = SandwichCommandReport(
        source=args.source,
        sandwich=SandwichDoc.of(sandwich_report(X, arith)),
        xs_comparison=XsDoc.of(xs_comparison(X, arith)),
        conventions={k: str(v) for k, v in conventions().items()},
    )
    _emit(render_json('sandwich', report))
    return EXIT_OK


def _identity_check(name: str, items, check) -> IdentityCheckDoc:
    failures = [str(item) for item in items if not check(item)]
    return IdentityCheckDoc(name=name, checked=fmt_int(len(items)), failures=failures[:10])


def cmd_weil(args) -> int:
    X, arith = load_source(args.source, _parse_params(args.param), args.arith or 'unramified')
    model = UnramifiedWeilModel.from_arithmetic(X, arith)
    samples = config.get('weil.random_invariant_samples', 100)
    vectors = invariant_spanning_set(X) + random_invariant_vectors(X, samples, args.seed, args.den)
    torsion = [s for order in range(1, args.mod + 1) for s in invariant_torsion_points(X, order)]
    checks = [
        _identity_check('zeta_cocycle', vectors, lambda nu: verify_zeta_cocycle(nu, model).passed),
        _identity_check('zeta_coboundary_iff_zero', vectors,
                        lambda nu: is_coboundary_zeta(nu, model) == (not any(nu))),
        _identity_check('z_cocycle', torsion, lambda s: verify_z_cocycle(s, model).passed),
        _identity_check('exp_compatibility', invariant_vectors_with_denominators(X, args.den),
                        lambda nu: exp_compatibility(nu, model).passed),
    ]
    h1 = {fmt_int(m): GroupDoc.of(model_h1_count(model, m)) for m in range(2, args.mod + 1)}
    report = WeilReport(
        source=args.source,
        modulus=fmt_int(args.mod),
        denominator_bound=fmt_int(args.den),
        frobenius=fmt_int(model.frobenius),
        checks=checks,
        h1=h1,
        passed=not any(c.failures for c in checks),
        conventions={k: str(v) for k, v in conventions().items()},
    )
    _emit(render_json('weil', report))
    return EXIT_OK if report.passed else EXIT_MISMATCH


def cmd_oracle(args) -> int:
    scope = OracleScope.from_config(max_group_order=args.max_group, max_modulus=args.max_mod,
                                    max_rank=args.max_rank, seed=args.seed,
                                    cyclic_max_order=args.cyclic_max)
    harness = OracleHarness(scope, sign_fault=args.inject_fault, budget=args.budget)
    harness.run(args.sweep)
    summary = harness.summary()
    mismatched = {}
    for name, frame in harness.results.items():
        if frame.empty or 'status' not in frame:
            mismatched[name] = []
            continue
        bad = frame[frame['status'] == 'mismatch']
        mismatched[name] = [{k: str(v) for k, v in row.items()} for row in bad.to_dict('records')]
    report = OracleReport(
        scope={k: str(v) for k, v in vars(scope).items()},
        sign_fault=args.inject_fault,
        summary=[SweepSummaryDoc(**{k: str(v) for k, v in row.items()}) for row in summary.to_dict('records')],
        mismatched_cases=mismatched,
        passed=harness.mismatches == 0,
    )
    _emit(render_json('oracle', report))
    return EXIT_OK if report.passed else EXIT_MISMATCH


def cmd_catalog(args) -> int:
    entries = [
        CatalogEntryDoc(
            key=row['key'],
            description=row['description'],
            params=[p for p in row['params'].split(',') if p],
            group_order=fmt_int(row['group_order']),
            rank=fmt_int(row['rank']),
            variants=[v for v in row['variants'].split(',') if v],
        )
        for row in catalog_frame().to_dict('records')
    ]
    _emit(render_json('catalog', CatalogReport(entries=entries)))
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='torus-workbench',
                                     description="Exact cohomology and dual-torus computations for algebraic tori")
    parser.add_argument('--log-level', default=config.get('logging.level', 'INFO'),
                        choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'])
    parser.add_argument('--budget', type=int, default=None,
                        help="Cap on candidate cochains for enumeration (overrides TORUS_ENUM_BUDGET)")
    commands = parser.add_subparsers(dest='command', required=True)

    def source_command(name: str, help_text: str, arith: bool = True) -> argparse.ArgumentParser:
        sub = commands.add_parser(name, help=help_text)
        sub.add_argument('source', help="Preset key or path to a torus input document")
        sub.add_argument('-p', '--param', action='append', metavar='KEY=VALUE',
                         help="Preset parameter, e.g. -p n=3")
        if arith:
            sub.add_argument('--arith', default=None,
                             help=f"One of {', '.join(ARITHMETIC_VARIANTS)} or an arithmetic JSON file")
        return sub

    analyze = source_command('analyze', "Full analysis report")
    output = analyze.add_mutually_exclusive_group()
    output.add_argument('--json', dest='text', action='store_false', help="JSON report (default)")
    output.add_argument('--text', dest='text', action='store_true', help="Human-readable report")
    analyze.set_defaults(handler=cmd_analyze, text=False)

    cohomology = source_command('cohomology', "H^n of X, its dual, or X/mX", arith=False)
    cohomology.add_argument('--degree', type=int, choices=[0, 1, 2], required=True)
    cohomology.add_argument('--dual', action='store_true')
    cohomology.add_argument('--mod', type=int, default=None)
    cohomology.set_defaults(handler=cmd_cohomology)

    sandwich = source_command('sandwich', "X^Γ ⊆ X_*(X_T) ⊆ Pr_Γ(X) and the X_S comparison")
    sandwich.set_defaults(handler=cmd_sandwich)

    weil = source_command('weil', "Explicit cocycles of the unramified Weil model")
    weil.add_argument('--mod', type=int, default=2)
    weil.add_argument('--den', type=int, default=config.get('weil.denominator_bound', 12))
    weil.add_argument('--seed', type=int, default=config.get('oracle.seed', 0))
    weil.set_defaults(handler=cmd_weil)

    oracle = commands.add_parser('oracle', help="Cross-check sweeps against independent oracles")
    oracle.add_argument('--max-group', type=int, default=None)
    oracle.add_argument('--max-mod', type=int, default=None)
    oracle.add_argument('--max-rank', type=int, default=None)
    oracle.add_argument('--seed', type=int, default=None)
    oracle.add_argument('--cyclic-max', type=int, default=None,
                        help="Largest cyclic group order in the cyclic and sandwich sweeps")
    oracle.add_argument('--sweep', action='append', choices=['enumeration', 'cyclic', 'sandwich', 'weil', 'maps'],
                        help="Sweep to run (repeatable); defaults to enumeration and cyclic")
    oracle.add_argument('--inject-fault', action='store_true',
                        help="Flip a coboundary sign in the resolution computation")
    oracle.set_defaults(handler=cmd_oracle)

    catalog = commands.add_parser('catalog', help="List the preset catalog")
    catalog.set_defaults(handler=cmd_catalog)
    return parser


def configure_logging(level: str):
    logging.basicConfig(
        level=getattr(logging, level),
        format=config.get('logging.format', '%(asctime)s %(name)s %(levelname)s %(message)s'),
        stream=sys.stderr,
        force=True,
    )


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.log_level)
    if getattr(args, 'sweep', None) is None and args.command == 'oracle':
        args.sweep = ['enumeration', 'cyclic']
    try:
        return args.handler(args)
    except ValidationError as e:
        logger.error(f"Invalid input document:\n{e}")
        return EXIT_INPUT
    except (OSError, WorkbenchError) as e:
        logger.error(f"{type(e).__name__}: {e}")
        return EXIT_INPUT
    except (InvariantViolation, AssertionError) as e:
        logger.error(f"Internal invariant violated: {e}")
        return EXIT_INVARIANT


if __name__ == '__main__':
    sys.exit(main())
