"""
svg.py - 오리가미 SVG 렌더링
정사각형 1 (또는 공의 중심)을 원점에 두고 BFS 로 배치합니다. σ 는 오른쪽(+x), τ 는 위쪽(+y).
이미 차지된 칸에 놓여야 할 정사각형은 새 구성요소로 떼어 내고 점선으로 잇습니다.
인접하게 그려지지 않은 접합은 오른쪽/위쪽 변에 상대 정사각형 번호를 적습니다.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional

from src.errors import ValidationError
from src.surface.origami import Ball, Origami

Cell = tuple[int, int]


@dataclass
class _Component:
    cells: dict[Cell, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class Layout:
    """전역 칸 좌표 (왼쪽 아래가 (0,0)), 점선 연결, 전체 칸 크기."""

    positions: dict
    order: tuple
    links: tuple[tuple[Any, Any], ...]
    width: int
    height: int


def layout_squares(o: Origami, region: Optional[Ball] = None) -> Layout:
    """
    정사각형 배치를 계산합니다.

    앞방향(σ 다음 τ) BFS 로 배치하고, 큐가 비면 배치된 순서대로 σ⁻¹, τ⁻¹ 이웃 중
    아직 놓이지 않은 정사각형을 하나 놓고 BFS 를 이어 갑니다.
    """
    if region is None:
        if not o.is_finite:
            raise ValidationError("무한 오리가미는 공(--ball)으로만 그릴 수 있음")
        squares = list(o.squares())
        start = 1
    else:
        squares = list(region.squares)
        start = region.base
    inside = set(squares)

    components = [_Component()]
    where: dict[Any, tuple[int, Cell]] = {}
    order: list[Any] = []
    links: list[tuple[Any, Any]] = []

    def place(square: Any, comp: int, cell: Cell, source: Any = None) -> None:
        if cell in components[comp].cells:
            components.append(_Component())
            comp, cell = len(components) - 1, (0, 0)
            links.append((source, square))
        components[comp].cells[cell] = square
        where[square] = (comp, cell)
        order.append(square)

    place(start, 0, (0, 0))
    queue = [start]
    while True:
        while queue:
            s = queue.pop(0)
            comp, (x, y) = where[s]
            for move, cell in ((o.right, (x + 1, y)), (o.up, (x, y + 1))):
                t = move(s)
                if t in inside and t not in where:
                    place(t, comp, cell, s)
                    queue.append(t)
        if len(where) == len(inside):
            break
        for p in list(order):
            comp, (x, y) = where[p]
            extended = False
            for move, cell in ((o.left, (x - 1, y)), (o.down, (x, y - 1))):
                t = move(p)
                if t in inside and t not in where:
                    place(t, comp, cell, p)
                    queue.append(t)
                    extended = True
                    break
            if extended:
                break
        else:
            raise ValidationError("그릴 영역이 연결되어 있지 않음")

    positions: dict[Any, Cell] = {}
    offset = 0
    height = 0
    for comp in components:
        xs = [c[0] for c in comp.cells]
        ys = [c[1] for c in comp.cells]
        min_x, min_y = min(xs), min(ys)
        for (x, y), square in comp.cells.items():
            positions[square] = (offset + x - min_x, y - min_y)
        offset += max(xs) - min_x + 2
        height = max(height, max(ys) - min_y + 1)
    return Layout(positions, tuple(order), tuple(links), offset - 1, height)


def square_label(square: Any) -> str:
    if isinstance(square, tuple):
        i, g = square
        return f"{i}:{g}"
    return str(square)


def render_svg(
    o: Origami,
    region: Optional[Ball] = None,
    unit: int = 40,
    margin: int = 20,
) -> str:
    """SVG 1.1 문자열. 같은 입력에 대해 바이트 단위로 같은 결과를 냅니다."""
    layout = layout_squares(o, region)
    inside = set(layout.positions)
    width = 2 * margin + layout.width * unit
    height = 2 * margin + layout.height * unit
    half = unit // 2

    def corner(square: Any) -> tuple[int, int]:
        x, y = layout.positions[square]
        return margin + x * unit, margin + (layout.height - 1 - y) * unit

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
    ]
    for s in layout.order:
        px, py = corner(s)
        gx, gy = layout.positions[s]
        out.append(f'<rect x="{px}" y="{py}" width="{unit}" height="{unit}" fill="white" stroke="black"/>')
        out.append(
            f'<text x="{px + half}" y="{py + half + 5}" font-size="14" text-anchor="middle">'
            f"{square_label(s)}</text>"
        )
        right = o.right(s)
        if right not in inside or layout.positions[right] != (gx + 1, gy):
            out.append(
                f'<text x="{px + unit - 4}" y="{py + half + 3}" font-size="9" text-anchor="end">'
                f"{square_label(right)}</text>"
            )
        up = o.up(s)
        if up not in inside or layout.positions[up] != (gx, gy + 1):
            out.append(
                f'<text x="{px + half}" y="{py + 10}" font-size="9" text-anchor="middle">'
                f"{square_label(up)}</text>"
            )
    for a, b in layout.links:
        ax, ay = corner(a)
        bx, by = corner(b)
        out.append(
            f'<line x1="{ax + half}" y1="{ay + half}" x2="{bx + half}" y2="{by + half}" '
            f'stroke="gray" stroke-dasharray="4 3"/>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
