"""Pydantic schemas for input documents and JSON reports"""

from fractions import Fraction
import json
import re
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.analyzer import AnalysisResult, CrossCheck
from src.config import config
from src.dual_torus import CharacterTorusData, DiagonalizableGroup, SandwichReport, TorusSummary, XsComparison
from src.galois_lattice import FiniteGroup, GaloisLattice, LocalArithmeticData
from src.integer_linalg import FinGenAbGroup, IntegerMatrix, RationalLattice

REPORT_VERSION = int(config.get('report.version', 1))

_INTEGER = re.compile(r'^-?\d+$')


def fmt_int(value) -> str:
    return str(int(value))


def fmt_rational(value) -> str:
    """Integers as decimal strings, other rationals as 'p/q'"""
    return str(Fraction(value))


def fmt_index(value) -> str:
    return value if isinstance(value, str) else fmt_int(value)


class _Document(BaseModel):
    model_config = ConfigDict(extra='forbid', frozen=True)


# ---------------------------------------------------------------------------
# Input
# ---------------------------------------------------------------------------

class GroupInput(_Document):
    order: int = Field(..., ge=1, le=1000, description="Number of group elements")
    mult_table: List[List[int]] = Field(..., description="Row-major product indices")
    identity_index: int = Field(0, ge=0)

    @model_validator(mode='after')
    def table_shape(self) -> 'GroupInput':
        if len(self.mult_table) != self.order:
            raise ValueError(f"mult_table has {len(self.mult_table)} rows, expected {self.order}")
        for i, row in enumerate(self.mult_table):
            if len(row) != self.order:
                raise ValueError(f"mult_table row {i} has {len(row)} entries, expected {self.order}")
            for j, v in enumerate(row):
                if not 0 <= v < self.order:
                    raise ValueError(f"mult_table[{i}][{j}] = {v} is not an element index")
        if self.identity_index >= self.order:
            raise ValueError(f"identity_index {self.identity_index} out of range")
        return self


class ArithmeticInput(_Document):
    inertia: List[int] = Field(..., min_length=1, description="Element indices of the inertia subgroup")
    frobenius: int = Field(..., ge=0, description="Element index of a Frobenius lift")


class TorusInputDocument(_Document):
    """A finite group, its integral action and optional arithmetic data"""

    group: GroupInput
    action: List[List[List[str]]] = Field(..., min_length=1, description="One rank×rank matrix per element")
    arithmetic: Optional[ArithmeticInput] = None

    @field_validator('action', mode='before')
    @classmethod
    def entries_as_strings(cls, value):
        if not isinstance(value, list):
            return value
        return [
            [[str(v) if isinstance(v, int) and not isinstance(v, bool) else v for v in row]
             if isinstance(row, list) else row for row in matrix]
            if isinstance(matrix, list) else matrix
            for matrix in value
        ]

    @field_validator('action')
    @classmethod
    def decimal_entries(cls, value: List[List[List[str]]]) -> List[List[List[str]]]:
        rank = len(value[0])
        for g, matrix in enumerate(value):
            if len(matrix) != rank:
                raise ValueError(f"matrix {g} has {len(matrix)} rows, expected {rank}")
            for i, row in enumerate(matrix):
                if len(row) != rank:
                    raise ValueError(f"matrix {g} row {i} has {len(row)} entries, expected {rank}")
                for j, entry in enumerate(row):
                    if not _INTEGER.match(entry):
                        raise ValueError(f"matrix {g} entry [{i}][{j}] = {entry!r} is not a decimal integer")
        return value

    @model_validator(mode='after')
    def one_matrix_per_element(self) -> 'TorusInputDocument':
        if len(self.action) != self.group.order:
            raise ValueError(f"action has {len(self.action)} matrices for a group of order {self.group.order}")
        if self.arithmetic is not None:
            for g in self.arithmetic.inertia + [self.arithmetic.frobenius]:
                if g >= self.group.order:
                    raise ValueError(f"arithmetic element {g} out of range")
        return self

    def to_objects(self) -> Tuple[GaloisLattice, Optional[LocalArithmeticData]]:
        group = FiniteGroup(self.group.mult_table, self.group.identity_index)
        action = [IntegerMatrix([[int(v) for v in row] for row in matrix]) for matrix in self.action]
        X = GaloisLattice(group, action)
        arith = None
        if self.arithmetic is not None:
            arith = LocalArithmeticData(group, self.arithmetic.inertia, self.arithmetic.frobenius, label='file')
        return X, arith

    @classmethod
    def from_objects(cls, X: GaloisLattice, arith: Optional[LocalArithmeticData] = None) -> 'TorusInputDocument':
        arithmetic = None
        if arith is not None:
            arithmetic = ArithmeticInput(inertia=list(arith.inertia.elements), frobenius=arith.frobenius)
        return cls(
            group=GroupInput(order=X.group.order, mult_table=X.group.mult_table,
                             identity_index=X.group.identity_index),
            action=[[[fmt_int(v) for v in row] for row in m.to_lists()] for m in X.action],
            arithmetic=arithmetic,
        )


# ---------------------------------------------------------------------------
# Report building blocks
# ---------------------------------------------------------------------------

class GroupDoc(_Document):
    free_rank: str
    torsion: List[str]
    order: str
    text: str

    @classmethod
    def of(cls, group: FinGenAbGroup) -> 'GroupDoc':
        order = group.order
        return cls(
            free_rank=fmt_int(group.free_rank),
            torsion=[fmt_int(d) for d in group.torsion],
            order='infinite' if order is None else fmt_int(order),
            text=str(group),
        )


class LatticeDoc(_Document):
    ambient_dim: str
    rank: str
    basis: List[List[str]]

    @classmethod
    def of(cls, lattice: RationalLattice) -> 'LatticeDoc':
        return cls(
            ambient_dim=fmt_int(lattice.ambient_dim),
            rank=fmt_int(lattice.rank),
            basis=[[fmt_rational(v) for v in row] for row in lattice.basis],
        )


class DiagonalizableDoc(_Document):
    character_group: GroupDoc
    dimension: str
    component_group: GroupDoc
    connected: bool

    @classmethod
    def of(cls, D: DiagonalizableGroup) -> 'DiagonalizableDoc':
        return cls(
            character_group=GroupDoc.of(D.character_group),
            dimension=fmt_int(D.dimension),
            component_group=GroupDoc.of(D.character_group.torsion_subgroup()),
            connected=D.is_connected(),
        )


class ArithmeticDoc(_Document):
    label: str
    inertia: List[str]
    frobenius: str
    residue_degree: str

    @classmethod
    def of(cls, arith: LocalArithmeticData) -> 'ArithmeticDoc':
        return cls(
            label=arith.label,
            inertia=[fmt_int(g) for g in arith.inertia.elements],
            frobenius=fmt_int(arith.frobenius),
            residue_degree=fmt_int(arith.residue_degree),
        )


class SandwichDoc(_Document):
    arithmetic: str
    x_gamma: LatticeDoc
    cochar_xt: LatticeDoc
    pr_lattice: LatticeDoc
    x_gamma_in_xt: bool
    xt_in_pr: bool
    index_xt_over_x_gamma: str
    index_pr_over_xt: str
    xt_rank: str
    lattice_a: Optional[LatticeDoc] = None
    notes: List[str]

    @classmethod
    def of(cls, report: SandwichReport) -> 'SandwichDoc':
        return cls(
            arithmetic=report.arithmetic,
            x_gamma=LatticeDoc.of(report.x_gamma),
            cochar_xt=LatticeDoc.of(report.cochar_xt),
            pr_lattice=LatticeDoc.of(report.pr_lattice),
            x_gamma_in_xt=report.x_gamma_in_xt,
            xt_in_pr=report.xt_in_pr,
            index_xt_over_x_gamma=fmt_index(report.index_xt_over_x_gamma),
            index_pr_over_xt=fmt_index(report.index_pr_over_xt),
            xt_rank=fmt_int(report.xt_rank),
            notes=list(report.notes),
        )


class XsDoc(_Document):
    xt_rank: str
    xs_rank: str
    ranks_equal: bool
    lattices_equal: bool
    inertia_trivial: bool
    kernel_order: str
    cochar_xs: LatticeDoc

    @classmethod
    def of(cls, comparison: XsComparison) -> 'XsDoc':
        return cls(
            xt_rank=fmt_int(comparison.xt_rank),
            xs_rank=fmt_int(comparison.xs_rank),
            ranks_equal=comparison.ranks_equal,
            lattices_equal=comparison.lattices_equal,
            inertia_trivial=comparison.inertia_trivial,
            kernel_order=fmt_index(comparison.kernel_order),
            cochar_xs=LatticeDoc.of(comparison.cochar_xs),
        )


class CharacterTorusDoc(_Document):
    arithmetic: ArithmeticDoc
    frobenius_coinvariant_characters: GroupDoc
    character_lifts: LatticeDoc
    xt_rank: str
    cocharacter_lattice: LatticeDoc
    pairing_image: LatticeDoc
    pairing_index: str

    @classmethod
    def of(cls, arith: LocalArithmeticData, data: CharacterTorusData, xt_rank: int) -> 'CharacterTorusDoc':
        return cls(
            arithmetic=ArithmeticDoc.of(arith),
            frobenius_coinvariant_characters=GroupDoc.of(data.character_group),
            character_lifts=LatticeDoc.of(data.lifts),
            xt_rank=fmt_int(xt_rank),
            cocharacter_lattice=LatticeDoc.of(data.cocharacters),
            pairing_image=LatticeDoc.of(data.pairing_image),
            pairing_index=fmt_index(data.pairing_index),
        )


class SummaryDoc(_Document):
    rank: str
    split_rank: str
    anisotropic: bool
    split: bool
    projection_rank: str
    fixed_identity_dim: str
    coinvariant_dim: str
    coinvariant_connected: bool
    dimensions_agree: bool

    @classmethod
    def of(cls, summary: TorusSummary) -> 'SummaryDoc':
        return cls(
            rank=fmt_int(summary.rank),
            split_rank=fmt_int(summary.split_rank),
            anisotropic=summary.anisotropic,
            split=summary.split,
            projection_rank=fmt_int(summary.projection_rank),
            fixed_identity_dim=fmt_int(summary.fixed_identity_dim),
            coinvariant_dim=fmt_int(summary.coinvariant_dim),
            coinvariant_connected=summary.coinvariant_connected,
            dimensions_agree=summary.dimensions_agree,
        )


class CheckDoc(_Document):
    name: str
    status: str
    expected: str
    observed: str

    @classmethod
    def of(cls, check: CrossCheck) -> 'CheckDoc':
        return cls(name=check.name, status=check.status, expected=check.expected, observed=check.observed)


class DualTorusDoc(_Document):
    rank: str
    fixed_points: DiagonalizableDoc
    coinvariant_group: DiagonalizableDoc


# ---------------------------------------------------------------------------
# Command reports
# ---------------------------------------------------------------------------

class AnalysisReport(_Document):
    source: str
    input: TorusInputDocument
    invariants: LatticeDoc
    coinvariants: GroupDoc
    projection: LatticeDoc
    cohomology: Dict[str, GroupDoc]
    dual_cohomology: Dict[str, GroupDoc]
    tate: Dict[str, GroupDoc]
    dual_torus: DualTorusDoc
    summary: SummaryDoc
    character_torus: Optional[CharacterTorusDoc] = None
    sandwich: Optional[SandwichDoc] = None
    xs_comparison: Optional[XsDoc] = None
    checks: List[CheckDoc]
    conventions: Dict[str, str]

    @classmethod
    def from_result(cls, source: str, result: AnalysisResult) -> 'AnalysisReport':
        character_torus = None
        if result.character_torus is not None:
            character_torus = CharacterTorusDoc.of(result.arithmetic, result.character_torus, result.xt_rank)
        return cls(
            source=source,
            input=TorusInputDocument.from_objects(result.lattice, result.arithmetic),
            invariants=LatticeDoc.of(result.x_gamma),
            coinvariants=GroupDoc.of(result.x_coinvariants),
            projection=LatticeDoc.of(result.projection),
            cohomology={str(n): GroupDoc.of(g) for n, g in result.cohomology.items()},
            dual_cohomology={str(n): GroupDoc.of(g) for n, g in result.dual_cohomology.items()},
            tate={str(n): GroupDoc.of(g) for n, g in result.tate.items()},
            dual_torus=DualTorusDoc(
                rank=fmt_int(result.dual_torus.dimension),
                fixed_points=DiagonalizableDoc.of(result.fixed),
                coinvariant_group=DiagonalizableDoc.of(result.coinvariant),
            ),
            summary=SummaryDoc.of(result.summary),
            character_torus=character_torus,
            sandwich=SandwichDoc.of(result.sandwich) if result.sandwich is not None else None,
            xs_comparison=XsDoc.of(result.xs) if result.xs is not None else None,
            checks=[CheckDoc.of(c) for c in result.checks],
            conventions={k: str(v) for k, v in result.notes.items()},
        )


class CohomologyReport(_Document):
    source: str
    degree: str
    dual: bool
    modulus: Optional[str] = None
    group: GroupDoc
    representatives: List[List[str]]


class SandwichCommandReport(_Document):
    source: str
    sandwich: SandwichDoc
    xs_comparison: XsDoc
    conventions: Dict[str, str]


class IdentityCheckDoc(_Document):
    name: str
    checked: str
    failures: List[str]


class WeilReport(_Document):
    source: str
    modulus: str
    denominator_bound: str
    frobenius: str
    checks: List[IdentityCheckDoc]
    h1: Dict[str, GroupDoc]
    passed: bool
    conventions: Dict[str, str]


class SweepSummaryDoc(_Document):
    sweep: str
    cases: str
    passed: str
    mismatches: str
    skipped: str


class OracleReport(_Document):
    scope: Dict[str, str]
    sign_fault: bool
    summary: List[SweepSummaryDoc]
    mismatched_cases: Dict[str, List[Dict[str, str]]]
    passed: bool


class CatalogEntryDoc(_Document):
    key: str
    description: str
    params: List[str]
    group_order: str
    rank: str
    variants: List[str]


class CatalogReport(_Document):
    entries: List[CatalogEntryDoc]


class ReportEnvelope(_Document):
    version: int = REPORT_VERSION
    command: str
    report: Dict[str, Any]


def render_json(command: str, report: BaseModel) -> str:
    """Canonical JSON: sorted keys and fixed indent so equal reports are byte-identical"""
    envelope = ReportEnvelope(command=command, report=report.model_dump(mode='json'))
    return json.dumps(envelope.model_dump(mode='json'), sort_keys=True,
                      indent=config.get('report.indent', 2), ensure_ascii=False) + "\n"


def parse_report(text: str, schema: type) -> Tuple[ReportEnvelope, BaseModel]:
    envelope = ReportEnvelope.model_validate_json(text)
    return envelope, schema.model_validate(envelope.report)


def parse_input(text: str) -> TorusInputDocument:
    return TorusInputDocument.model_validate_json(text)


# ---------------------------------------------------------------------------
# Text rendering
# ---------------------------------------------------------------------------

def _lattice_text(doc: LatticeDoc) -> str:
    if not doc.basis:
        return "0"
    return "span_Z{" + ", ".join("(" + ", ".join(row) + ")" for row in doc.basis) + "}"


def render_analysis_text(report: AnalysisReport) -> str:
    lines = [
        f"source: {report.source}",
        f"rank X = {report.summary.rank}, |Γ| = {report.input.group.order}",
        f"X^Γ        = {_lattice_text(report.invariants)}",
        f"X_Γ        = {report.coinvariants.text}",
        f"Pr_Γ(X)    = {_lattice_text(report.projection)}",
    ]
    for n, group in sorted(report.cohomology.items()):
        lines.append(f"H^{n}(Γ, X)  = {group.text}")
    for n, group in sorted(report.dual_cohomology.items()):
        lines.append(f"H^{n}(Γ, X̂)  = {group.text}")
    lines.append(f"Ĥ^-1(Γ, X) = {report.tate['-1'].text}")
    lines.append(f"Ĥ^0(Γ, X)  = {report.tate['0'].text}")
    fixed = report.dual_torus.fixed_points
    lines.append(f"T̂^Γ: characters {fixed.character_group.text}, "
                 f"dim {fixed.dimension}, π0 = {fixed.component_group.text}")
    lines.append(f"T̂_Γ: characters {report.dual_torus.coinvariant_group.character_group.text}")
    lines.append(f"split rank {report.summary.split_rank}, anisotropic {report.summary.anisotropic}")
    if report.character_torus is not None:
        ct = report.character_torus
        lines.append(f"arithmetic: {ct.arithmetic.label} (inertia {ct.arithmetic.inertia}, Fr = {ct.arithmetic.frobenius})")
        lines.append(f"(T̂^I)_Fr characters = {ct.frobenius_coinvariant_characters.text}, rank X_T = {ct.xt_rank}")
        lines.append(f"X_*(X_T)   = {_lattice_text(ct.cocharacter_lattice)}")
    if report.sandwich is not None:
        s = report.sandwich
        lines.append(f"X^Γ ⊆ X_*(X_T) ⊆ Pr_Γ(X): indices {s.index_xt_over_x_gamma}, {s.index_pr_over_xt}")
    if report.xs_comparison is not None:
        xs = report.xs_comparison
        lines.append(f"X_T vs X_S: ranks {xs.xt_rank}/{xs.xs_rank}, lattices equal {xs.lattices_equal}, "
                     f"kernel order {xs.kernel_order}")
    for check in report.checks:
        lines.append(f"check {check.name}: {check.status}")
    for key, value in sorted(report.conventions.items()):
        lines.append(f"convention {key}: {value}")
    return "\n".join(lines) + "\n"
