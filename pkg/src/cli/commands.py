"""
commands.py - 명령줄 인터페이스
validate / info / aut / cover / lemma1 / realize / render 명령을 실행하고 종료 코드를 돌려줍니다.

종료 코드: 0 성공, 2 검증/입력 오류, 3 인증 실패, 64 사용법 오류
표준 출력에는 명령 결과만 씁니다 (로그는 stderr).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence, TextIO

from loguru import logger

from src.algebra.group import Group
from src.cli.report import (
    AutModel,
    ErrorModel,
    Report,
    certificate_model,
    cover_model,
    heuristics_model,
    origami_model,
    surface_model,
    verdict_model,
)
from src.cli.svg import render_svg, square_label
from src.cli.text_format import parse_group_spec, parse_origami_text, parse_voltages, render_text
from src.cover.covering import build_cover, check_cover_connected
from src.cover.voltage import check_flat
from src.errors import (
    CertificateFailed,
    FlatnessFailed,
    NotFound,
    NotGenerating,
    OrigamiError,
)
from src.realize.heuristics import monster_heuristics
from src.realize.pipeline import ExactCertificate, realize_countable, realize_finite
from src.settings import Settings, load_settings
from src.surface.automorphism import automorphism_group, bounded_aut_search
from src.surface.builtins import lemma1_origami
from src.surface.origami import Origami, ball, singularities_meeting

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_CERTIFICATE = 3
EXIT_USAGE = 64

HEURISTIC_RADII = (2, 4, 6, 8)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """사용법 오류를 종료 대신 예외로 돌려 64 로 매핑합니다."""

    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="JSON 보고서 출력")
    common.add_argument("--config", default=None, help="설정 파일 경로 (기본: config/settings.yaml)")

    parser = _Parser(prog="origami", description="오리가미 자기동형 실현 도구")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("validate", parents=[common], help="오리가미 파일 검증")
    p.add_argument("file")

    p = sub.add_parser("info", parents=[common], help="꼭짓점 차수, 종수, 오일러 지표")
    p.add_argument("file")

    p = sub.add_parser("aut", parents=[common], help="평행이동 자기동형군")
    p.add_argument("file")
    p.add_argument("--radius", type=int, default=None, help="무한 오리가미의 탐색 반경")

    p = sub.add_parser("cover", parents=[common], help="전압 피복 생성")
    p.add_argument("base")
    p.add_argument("voltages")
    p.add_argument("group", help="군 명세 (예: 'perm: (1,2)', Z, Z^2, F_2)")

    p = sub.add_parser("lemma1", parents=[common], help="계단 오리가미 탐색")
    p.add_argument("--ball", type=int, default=4, help="정사각형 1 에서의 반경")

    p = sub.add_parser("realize", parents=[common], help="Aut(O) ≅ G 인 오리가미 만들기")
    p.add_argument("group", help="군 명세")
    p.add_argument("--radius", type=int, default=None, help="무한 군 인증 반경")
    p.add_argument("--budget", type=int, default=None, help="평탄성을 확인할 꼭짓점 수")

    p = sub.add_parser("render", parents=[common], help="SVG 그리기")
    p.add_argument("file")
    p.add_argument("-o", "--output", required=True, help="출력 SVG 경로")
    p.add_argument("--ball", type=int, default=None, help="무한 오리가미를 그릴 반경")
    return parser


def exit_code_for(exc: OrigamiError) -> int:
    if isinstance(exc, (CertificateFailed, FlatnessFailed, NotGenerating, NotFound)):
        return EXIT_CERTIFICATE
    return EXIT_INVALID


def _profile_text(degrees: Sequence[int]) -> str:
    return "{" + ", ".join(str(d) for d in sorted(degrees)) + "}"


def _read_origami(path: str, settings: Settings) -> Origami:
    text = Path(path).read_text(encoding="utf-8")
    return parse_origami_text(
        text,
        cycle_budget=settings.budgets.cycle_budget,
        checked=settings.debug.check_bijections,
    )


# ── 명령 ─────────────────────────────────────────────────────────────

def _cmd_validate(args: argparse.Namespace, settings: Settings, report: Report) -> list[str]:
    o = _read_origami(args.file, settings)
    report.origami = origami_model(o)
    record = o.validation
    if o.is_finite:
        return [f"valid: {o.n} squares, {record.connectivity.value}"]
    return [
        f"valid: countable {o.name}, connectivity {record.connectivity.value}",
        f"commutator cycles closed for {record.squares_sampled} sampled squares (budget {record.cycle_budget})"
        if record.commutator_finite
        else f"commutator cycle did not close within budget {record.cycle_budget}",
    ]


def _cmd_info(args: argparse.Namespace, settings: Settings, report: Report) -> list[str]:
    o = _read_origami(args.file, settings)
    report.origami = origami_model(o)
    if not o.is_finite:
        heuristics = monster_heuristics(o, HEURISTIC_RADII, budget=settings.budgets.cycle_budget)
        report.heuristics = heuristics_model(heuristics)
        lines = [f"countable origami {o.name}"]
        lines += [
            f"radius {row.radius}: {row.ball_size} squares, {row.branch_vertices} vertices of degree >= 2"
            for row in heuristics.rows
        ]
        lines.append(heuristics.disclaimer)
        return lines
    surface = surface_model(o)
    report.surface = surface
    return [
        f"squares: {o.n}",
        f"sigma: {o.sigma}",
        f"tau: {o.tau}",
        f"profile: {_profile_text(surface.profile)}",
        "vertices: " + " ".join("(" + ",".join(v.cycle) + ")" for v in surface.vertices),
        f"genus: {surface.genus}",
        f"chi: {surface.chi}",
    ]


def _cmd_aut(args: argparse.Namespace, settings: Settings, report: Report) -> list[str]:
    o = _read_origami(args.file, settings)
    report.origami = origami_model(o)
    if o.is_finite:
        group = automorphism_group(o)
        report.aut = AutModel(mode="exact", order=len(group), permutations=[str(p) for p in group])
        return [f"order: {len(group)}"] + [f"  {p}" for p in group]

    radius = args.radius if args.radius is not None else settings.realize.radius
    seeds = ball(o, 1, min(settings.realize.seed_radius, radius))
    verdicts = bounded_aut_search(o, 1, radius, seeds.squares, settings.budgets.cycle_budget)
    models = [verdict_model(seed, v) for seed, v in verdicts.items()]
    note = f"no obstruction found within radius {radius}"
    report.aut = AutModel(mode="bounded", radius=radius, verdicts=models, note=note)
    lines = [f"bounded search from square 1, radius {radius}, {len(models)} seeds"]
    for m in models:
        if m.verdict == "refuted":
            lines.append(f"  {m.seed}: refuted at depth {m.depth} ({m.conflict})")
        else:
            lines.append(f"  {m.seed}: {note}")
    return lines


def _cmd_cover(args: argparse.Namespace, settings: Settings, report: Report) -> list[str]:
    base = _read_origami(args.base, settings)
    group = parse_group_spec(args.group)
    voltages = parse_voltages(
        Path(args.voltages).read_text(encoding="utf-8"), group, base.n if base.is_finite else None
    )
    flat = check_flat(base, voltages, budget=settings.budgets.cycle_budget)
    cover = build_cover(base, voltages, budget=settings.budgets.cycle_budget)
    connectivity = check_cover_connected(cover, settings.budgets.connectivity_budget)
    report.origami = origami_model(base)
    report.cover = cover_model(cover, flat, connectivity)
    lines = [
        f"group: {group.label}",
        f"flat: {flat.vertex_count} vertices checked",
        f"connectivity: {connectivity.status.value}"
        + (f" (witness {square_label(connectivity.witness)})" if connectivity.witness is not None else ""),
    ]
    if cover.origami.is_finite:
        lines.append(render_text(cover.origami).rstrip("\n"))
    return lines


def _cmd_lemma1(args: argparse.Namespace, settings: Settings, report: Report) -> list[str]:
    o = lemma1_origami(checked=settings.debug.check_bijections)
    region = ball(o, 1, args.ball)
    vertices = singularities_meeting(o, region.squares, settings.budgets.cycle_budget)
    heuristics = monster_heuristics(o, HEURISTIC_RADII, budget=settings.budgets.cycle_budget)
    report.origami = origami_model(o)
    report.heuristics = heuristics_model(heuristics)
    lines = [f"ball(1, {args.ball}): " + " ".join(str(s) for s in sorted(region.squares))]
    for s in vertices:
        lines.append(f"  ({','.join(str(p) for p in s.cycle)}) degree {s.degree}")
    lines += [f"radius {row.radius}: {row.branch_vertices} vertices of degree >= 2" for row in heuristics.rows]
    lines.append(heuristics.disclaimer)
    return lines


def _cmd_realize(args: argparse.Namespace, settings: Settings, report: Report) -> list[str]:
    group: Group = parse_group_spec(args.group)
    realize = settings.realize.model_copy(
        update={
            k: v
            for k, v in (("radius", args.radius), ("vertex_budget", args.budget))
            if v is not None
        }
    )
    if group.is_finite:
        cover, cert = realize_finite(group, realize, settings.budgets)
    else:
        cover, cert = realize_countable(group, realize, settings.budgets)
    report.origami = origami_model(cover.origami)
    report.certificate = certificate_model(cert, group)
    if isinstance(cert, ExactCertificate):
        lines = [
            f"group: {group.label} (order {cert.order})",
            f"marker base: {cert.base_label} ({cover.base.n} squares), attempts {cert.attempts}",
            f"cover: {cover.origami.n} squares",
            f"certificate: exact, |Aut| = {cert.order} = |deck|",
            render_text(cover.origami).rstrip("\n"),
        ]
        return lines
    return [
        f"group: {group.label}",
        "base: lemma1",
        f"flatness verified on {cert.flat_vertex_count} vertices",
        f"deck elements verified on radius {cert.radius}: " + ", ".join(str(g) for g in cert.verified_deck_elements),
        f"seeds: {cert.seeds_examined} in radius {cert.seed_radius}, {cert.refuted_seed_count} refuted "
        f"(max depth {cert.max_refutation_depth}), {len(cert.surviving_seeds)} deck",
        f"certificate: bounded, no obstruction found within radius {cert.radius}",
    ]


def _cmd_render(args: argparse.Namespace, settings: Settings, report: Report) -> list[str]:
    o = _read_origami(args.file, settings)
    region = ball(o, 1, args.ball) if args.ball is not None else None
    svg = render_svg(o, region, unit=settings.svg.unit, margin=settings.svg.margin)
    Path(args.output).write_text(svg, encoding="utf-8")
    report.origami = origami_model(o)
    report.output = args.output
    return [f"wrote {args.output}"]


COMMANDS = {
    "validate": _cmd_validate,
    "info": _cmd_info,
    "aut": _cmd_aut,
    "cover": _cmd_cover,
    "lemma1": _cmd_lemma1,
    "realize": _cmd_realize,
    "render": _cmd_render,
}


def run_command(
    argv: Sequence[str],
    settings: Optional[Settings] = None,
    out: Optional[TextIO] = None,
) -> int:
    """
    명령 하나를 실행합니다.

    Args:
        argv: 프로그램 이름을 뺀 인자 목록
        settings: 미리 읽은 설정 (--config 가 있으면 다시 읽음)
        out: 결과를 쓸 스트림 (기본 stdout)

    Returns:
        종료 코드
    """
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except UsageError as exc:
        sys.stderr.write(str(exc))
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)

    if args.config is not None:
        settings = load_settings(args.config)
    settings = settings or load_settings()

    report = Report(command=args.command)
    try:
        lines = COMMANDS[args.command](args, settings, report)
        code = EXIT_OK
    except OrigamiError as exc:
        code = exit_code_for(exc)
        logger.error(f"{args.command} 실패: {exc}")
        report = Report(
            command=args.command,
            ok=False,
            error=ErrorModel(type=type(exc).__name__, message=str(exc), exit_code=code),
        )
        lines = [f"error: {type(exc).__name__}: {exc}"]
    except OSError as exc:
        code = EXIT_INVALID
        logger.error(f"{args.command} 실패: {exc}")
        report = Report(
            command=args.command,
            ok=False,
            error=ErrorModel(type=type(exc).__name__, message=str(exc), exit_code=code),
        )
        lines = [f"error: {exc}"]

    if args.json:
        out.write(report.to_json())
    elif code == EXIT_OK:
        out.write("\n".join(lines) + "\n")
    else:
        sys.stderr.write("\n".join(lines) + "\n")
    return code
