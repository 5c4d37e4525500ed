"""
report.py - JSON 보고서 모델
--json 출력의 구조입니다. 필드 순서가 고정되어 있어 같은 입력이면 같은 바이트를 냅니다.
JSON 스키마는 Report.model_json_schema() 이며 tests/data/report.schema.json 에 커밋되어 있습니다.
"""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel

from src.algebra.group import Group
from src.cover.covering import CoverConnectivity, CoverOrigami
from src.cover.voltage import FlatReport
from src.realize.heuristics import MonsterReport
from src.realize.pipeline import BoundedCertificate, ExactCertificate, RealizationCertificate
from src.surface.automorphism import AutVerdict, RefutedAtDepth, Total
from src.surface.origami import Origami, Singularity, genus, euler_characteristic, singularities
from src.cli.svg import square_label


class VertexModel(BaseModel):
    cycle: list[str]
    degree: int


class OrigamiModel(BaseModel):
    name: Optional[str] = None
    squares: Optional[int] = None
    countable: bool = False
    sigma: Optional[str] = None
    tau: Optional[str] = None
    connectivity: str


class SurfaceModel(BaseModel):
    profile: list[int]
    genus: int
    chi: int
    vertices: list[VertexModel]


class VerdictModel(BaseModel):
    seed: str
    verdict: Literal["total", "certified", "refuted"]
    depth: Optional[int] = None
    conflict: Optional[str] = None


class AutModel(BaseModel):
    mode: Literal["exact", "bounded"]
    order: Optional[int] = None
    permutations: list[str] = []
    radius: Optional[int] = None
    verdicts: list[VerdictModel] = []
    note: Optional[str] = None


class CoverModel(BaseModel):
    group: str
    sheets: Optional[int] = None
    squares: Optional[int] = None
    flat: bool
    flat_vertices: int
    connectivity: str
    connectivity_witness: Optional[str] = None
    connectivity_note: Optional[str] = None
    sigma: Optional[str] = None
    tau: Optional[str] = None


class CertificateModel(BaseModel):
    kind: Literal["exact", "bounded"]
    group: str
    base: Optional[str] = None
    attempts: Optional[int] = None
    order: Optional[int] = None
    aut: list[str] = []
    deck: list[str] = []
    radius: Optional[int] = None
    seed_radius: Optional[int] = None
    seeds_examined: Optional[int] = None
    refuted_seed_count: Optional[int] = None
    max_refutation_depth: Optional[int] = None
    flat_vertex_count: Optional[int] = None
    verified_deck_elements: list[str] = []
    surviving_seeds: list[str] = []
    marker_fiber_checked: Optional[int] = None
    note: Optional[str] = None


class RadiusModel(BaseModel):
    radius: int
    ball_size: int
    branch_vertices: int


class HeuristicsModel(BaseModel):
    rows: list[RadiusModel]
    disclaimer: str


class ErrorModel(BaseModel):
    type: str
    message: str
    exit_code: int


class Report(BaseModel):
    command: str
    ok: bool = True
    origami: Optional[OrigamiModel] = None
    surface: Optional[SurfaceModel] = None
    aut: Optional[AutModel] = None
    cover: Optional[CoverModel] = None
    certificate: Optional[CertificateModel] = None
    heuristics: Optional[HeuristicsModel] = None
    output: Optional[str] = None
    error: Optional[ErrorModel] = None

    def to_json(self) -> str:
        return self.model_dump_json(indent=2, exclude_none=True) + "\n"


# ── 변환 ─────────────────────────────────────────────────────────────

def vertex_model(s: Singularity) -> VertexModel:
    return VertexModel(cycle=[square_label(p) for p in s.cycle], degree=s.degree)


def origami_model(o: Origami) -> OrigamiModel:
    if o.is_finite:
        return OrigamiModel(
            name=o.name or None,
            squares=o.n,
            sigma=str(o.sigma),
            tau=str(o.tau),
            connectivity=o.validation.connectivity.value,
        )
    return OrigamiModel(name=o.name or None, countable=True, connectivity=o.validation.connectivity.value)


def surface_model(o: Origami) -> SurfaceModel:
    vertices = singularities(o)
    return SurfaceModel(
        profile=sorted(s.degree for s in vertices),
        genus=genus(o),
        chi=euler_characteristic(o),
        vertices=[vertex_model(s) for s in vertices],
    )


def verdict_model(seed: object, verdict: AutVerdict) -> VerdictModel:
    if isinstance(verdict, RefutedAtDepth):
        return VerdictModel(
            seed=square_label(seed),
            verdict="refuted",
            depth=verdict.depth,
            conflict=verdict.conflict.describe(),
        )
    if isinstance(verdict, Total):
        return VerdictModel(seed=square_label(seed), verdict="total")
    return VerdictModel(seed=square_label(seed), verdict="certified", depth=verdict.radius)


def cover_model(
    cover: CoverOrigami,
    flat: FlatReport,
    connectivity: CoverConnectivity,
) -> CoverModel:
    o = cover.origami
    return CoverModel(
        group=cover.group.label,
        sheets=cover.sheets,
        squares=o.n,
        flat=flat.flat,
        flat_vertices=flat.vertex_count,
        connectivity=connectivity.status.value,
        connectivity_witness=None if connectivity.witness is None else square_label(connectivity.witness),
        connectivity_note=connectivity.note or None,
        sigma=str(o.sigma) if o.is_finite else None,
        tau=str(o.tau) if o.is_finite else None,
    )


def certificate_model(cert: RealizationCertificate, group: Group) -> CertificateModel:
    if isinstance(cert, ExactCertificate):
        return CertificateModel(
            kind="exact",
            group=group.label,
            base=cert.base_label,
            attempts=cert.attempts,
            order=cert.order,
            aut=[str(p) for p in cert.aut],
            deck=[str(p) for p in cert.deck],
        )
    assert isinstance(cert, BoundedCertificate)
    return CertificateModel(
        kind="bounded",
        group=group.label,
        radius=cert.radius,
        seed_radius=cert.seed_radius,
        seeds_examined=cert.seeds_examined,
        refuted_seed_count=cert.refuted_seed_count,
        max_refutation_depth=cert.max_refutation_depth,
        flat_vertex_count=cert.flat_vertex_count,
        verified_deck_elements=[str(g) for g in cert.verified_deck_elements],
        surviving_seeds=[square_label(s) for s in cert.surviving_seeds],
        marker_fiber_checked=cert.marker_fiber_checked,
        note=f"no obstruction found within radius {cert.radius}",
    )


def heuristics_model(report: MonsterReport) -> HeuristicsModel:
    return HeuristicsModel(
        rows=[RadiusModel(radius=r.radius, ball_size=r.ball_size, branch_vertices=r.branch_vertices) for r in report.rows],
        disclaimer=report.disclaimer,
    )
