"""
text_format.py - 오리가미/군/전압 텍스트 형식
오리가미 파일:
    # 주석
    n: 3
    sigma: (1,2)
    tau: (1,3)
또는 내장 무한 오리가미: `n: countable lemma1`

군 명세: `perm: (1,2)(3,4); (1,3)`, `Z`, `Z^2`, `F_2`, `1`
전압 파일: `h <정사각형> <원소>` / `v <정사각형> <원소>` 줄들
"""

from __future__ import annotations

import re
from typing import Optional

from src.algebra.group import Group, GroupElem, GroupKind, free_word, perm_elem, vector
from src.algebra.perm import FinitePerm
from src.cover.voltage import VoltageAssignment
from src.errors import GroupSpecError, MixedGroupKinds, ParseError, SemanticError, ValidationError
from src.surface.builtins import builtin_countable
from src.surface.origami import Finite, Origami, make_origami

_INT = re.compile(r"-?\d+")
_KEY = re.compile(r"\s*([A-Za-z_]+)\s*:")

# (값, 1부터 세는 열 번호)
Located = tuple[int, int]


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0]


def _skip_ws(text: str, pos: int) -> int:
    while pos < len(text) and text[pos].isspace():
        pos += 1
    return pos


def scan_cycles(text: str, line: int = 1, offset: int = 0) -> list[list[Located]]:
    """
    `(1,2)(3)` 형식의 순환 목록을 위치 정보와 함께 읽습니다.

    Args:
        text: 순환 표기 문자열
        line: 오류 보고용 줄 번호
        offset: text 앞에 잘린 글자 수 (열 번호 보정)
    """
    cycles: list[list[Located]] = []
    pos = _skip_ws(text, 0)
    while pos < len(text):
        if text[pos] != "(":
            raise ParseError(line, offset + pos + 1, f"'(' 가 필요한데 {text[pos]!r} 이 있음")
        pos = _skip_ws(text, pos + 1)
        cycle: list[Located] = []
        if pos < len(text) and text[pos] == ")":
            cycles.append(cycle)
            pos = _skip_ws(text, pos + 1)
            continue
        while True:
            match = _INT.match(text, pos)
            if not match:
                raise ParseError(line, offset + pos + 1, "정수가 필요함")
            cycle.append((int(match.group()), offset + pos + 1))
            pos = _skip_ws(text, match.end())
            if pos >= len(text):
                raise ParseError(line, offset + pos + 1, "닫는 ')' 가 없음")
            if text[pos] == ",":
                pos = _skip_ws(text, pos + 1)
                continue
            if text[pos] == ")":
                pos += 1
                break
            raise ParseError(line, offset + pos + 1, f"',' 또는 ')' 가 필요한데 {text[pos]!r} 이 있음")
        cycles.append(cycle)
        pos = _skip_ws(text, pos)
    return cycles


def cycles_to_perm(cycles: list[list[Located]], n: int, line: int = 1) -> FinitePerm:
    """범위와 중복을 검사하고 순열을 만듭니다 (빠진 점은 고정점)."""
    seen: set[int] = set()
    for cycle in cycles:
        for value, column in cycle:
            if not 1 <= value <= n:
                raise SemanticError(line, column, f"인덱스 {value} 가 1..{n} 범위 밖")
            if value in seen:
                raise SemanticError(line, column, f"인덱스 {value} 가 중복됨")
            seen.add(value)
    return FinitePerm.from_cycles([[v for v, _ in c] for c in cycles], n)


# ── 오리가미 ────────────────────────────────────────────────────────

def parse_origami_text(
    text: str,
    *,
    require_connected: bool = True,
    cycle_budget: int = 10_000,
    checked: bool = False,
) -> Origami:
    """
    오리가미 텍스트를 읽습니다.

    `n:` 이 없으면 n 은 가장 큰 인덱스이고, 이때는 고정점도 모두 적어야 합니다.

    Raises:
        ParseError: 문법 오류 (줄, 열 포함)
        SemanticError: 범위 밖이거나 중복된 인덱스, 알 수 없는 내장 이름
        ValidationError: 연결되지 않음 등 오리가미 검증 실패
    """
    fields: dict[str, tuple[int, int, str]] = {}
    lines = text.splitlines()
    for line_no, raw in enumerate(lines, start=1):
        body = _strip_comment(raw)
        if not body.strip():
            continue
        match = _KEY.match(body)
        if not match:
            column = _skip_ws(body, 0) + 1
            raise ParseError(line_no, column, "'키: 값' 형식이 아님")
        key = match.group(1).lower()
        if key not in ("n", "sigma", "tau"):
            raise ParseError(line_no, match.start(1) + 1, f"알 수 없는 키 {key!r}")
        if key in fields:
            raise ParseError(line_no, match.start(1) + 1, f"키 {key!r} 가 두 번 나옴")
        fields[key] = (line_no, match.end(), body[match.end():])

    if "n" in fields:
        line_no, offset, value = fields["n"]
        words = value.split()
        if len(words) == 2 and words[0] == "countable":
            if "sigma" in fields or "tau" in fields:
                line_no = fields.get("sigma", fields.get("tau"))[0]
                raise ParseError(line_no, 1, "내장 무한 오리가미에는 sigma/tau 줄을 쓸 수 없음")
            try:
                origami = builtin_countable(words[1])
            except ValidationError as exc:
                raise SemanticError(line_no, offset + value.index(words[1]) + 1, str(exc)) from None
            if checked:
                return make_origami(
                    origami.sigma.with_checks(), origami.tau.with_checks(), origami.domain,
                    known_connected=True, cycle_budget=cycle_budget, name=origami.name,
                )
            return origami
        if len(words) != 1 or not words[0].isdigit():
            column = offset + _skip_ws(value, 0) + 1
            raise ParseError(line_no, column, "n 은 양의 정수 또는 'countable <이름>' 이어야 함")
        n: Optional[int] = int(words[0])
        if n == 0:
            raise SemanticError(line_no, offset + value.index(words[0]) + 1, "정사각형이 하나도 없음")
    else:
        n = None

    # 줄마다 바로 범위와 중복을 검사해서 줄이 빠진 것보다 먼저 보고합니다
    parsed: dict[str, tuple[int, list[list[Located]]]] = {}
    for key in ("sigma", "tau"):
        if key not in fields:
            continue
        line_no, offset, value = fields[key]
        cycles = scan_cycles(value, line_no, offset)
        listed = [v for c in cycles for v, _ in c]
        cycles_to_perm(cycles, n if n is not None else max(listed, default=1), line_no)
        parsed[key] = (line_no, cycles)
    for key in ("sigma", "tau"):
        if key not in parsed:
            raise ParseError(len(lines) + 1, 1, f"{key} 줄이 없음")

    if n is None:
        values = [v for _, cycles in parsed.values() for c in cycles for v, _ in c]
        n = max(values, default=0)
        if n < 1:
            raise SemanticError(1, 1, "n 을 정할 수 없음")
        for key, (line_no, cycles) in parsed.items():
            listed = {v for c in cycles for v, _ in c}
            missing = [i for i in range(1, n + 1) if i not in listed]
            if missing:
                raise SemanticError(
                    line_no, 1, f"n 이 없으면 {key} 에 고정점도 적어야 함 (빠진 정사각형 {missing[0]})"
                )

    sigma = cycles_to_perm(parsed["sigma"][1], n, parsed["sigma"][0])
    tau = cycles_to_perm(parsed["tau"][1], n, parsed["tau"][0])
    return make_origami(sigma, tau, Finite(n), require_connected=require_connected)


def render_text(o: Origami) -> str:
    """parse_origami_text 의 역. 고정점도 모두 적습니다."""
    if not o.is_finite:
        return f"n: countable {o.name}\n"
    return f"n: {o.n}\nsigma: {o.sigma}\ntau: {o.tau}\n"


# ── 군 ───────────────────────────────────────────────────────────────

_FREE_ABELIAN = re.compile(r"^Z(?:\^(\d+))?$")
_FREE = re.compile(r"^F_?(\d+)$")


def parse_group_spec(text: str) -> Group:
    """
    군 명세를 읽습니다.

    Raises:
        GroupSpecError: 알 수 없는 형식
    """
    spec = text.strip()
    if spec in ("1", "trivial"):
        return Group.trivial()
    match = _FREE_ABELIAN.match(spec)
    if match:
        k = int(match.group(1) or 1)
        if k < 1:
            raise GroupSpecError(f"Z^k 의 k 는 1 이상: {spec}")
        return Group.free_abelian(k)
    match = _FREE.match(spec)
    if match:
        r = int(match.group(1))
        if r < 1:
            raise GroupSpecError(f"F_r 의 r 은 1 이상: {spec}")
        return Group.free(r)
    if spec.startswith("perm:"):
        parts = [p for p in spec[len("perm:"):].split(";")]
        try:
            cycle_lists = [scan_cycles(p) for p in parts]
        except ParseError as exc:
            raise GroupSpecError(f"순열 생성원을 읽을 수 없음: {exc.message}") from None
        if not any(c for cycles in cycle_lists for c in cycles):
            raise GroupSpecError("순열 생성원이 없음")
        degree = max((v for cycles in cycle_lists for c in cycles for v, _ in c), default=1)
        try:
            gens = [cycles_to_perm(cycles, max(degree, 1)) for cycles in cycle_lists]
        except SemanticError as exc:
            raise GroupSpecError(f"순열 생성원 오류: {exc.message}") from None
        return Group.permutation(gens)
    raise GroupSpecError(f"알 수 없는 군 명세: {spec!r} (perm: …, Z, Z^k, F_r, 1)")


_WORD = re.compile(r"^[A-Za-z]+$")


def parse_group_element(text: str, group: Group) -> GroupElem:
    """
    group 의 원소 하나를 읽습니다.

    순열: 순환 표기, `()` 는 항등원. ℤᵏ: `3`, `(1,0)`, `1,0`. F_r: `aB`, `1` 은 항등원.
    """
    spec = text.strip()
    if group.kind == GroupKind.PERMUTATION:
        try:
            return perm_elem(cycles_to_perm(scan_cycles(spec), group.rank))
        except (ParseError, SemanticError) as exc:
            raise GroupSpecError(f"{group.label} 의 원소가 아님: {spec!r} ({exc.message})") from None
    if group.kind == GroupKind.FREE_ABELIAN:
        inner = spec[1:-1] if spec.startswith("(") and spec.endswith(")") else spec
        parts = [p.strip() for p in inner.split(",")]
        if not all(_INT.fullmatch(p) for p in parts):
            raise GroupSpecError(f"정수 벡터가 아님: {spec!r}")
        if len(parts) != group.rank:
            raise GroupSpecError(f"{group.label} 의 원소는 성분이 {group.rank} 개여야 함: {spec!r}")
        return vector([int(p) for p in parts])
    if spec == "1":
        return group.identity()
    if not _WORD.match(spec):
        raise GroupSpecError(f"자유군 워드가 아님: {spec!r}")
    letters = []
    for ch in spec:
        index = ord(ch.lower()) - ord("a") + 1
        if index > group.rank:
            raise GroupSpecError(f"{group.label} 에 없는 글자 {ch!r}")
        letters.append(index if ch.islower() else -index)
    return free_word(letters, group.rank)


# ── 전압 ─────────────────────────────────────────────────────────────

_VOLTAGE = re.compile(r"\s*([hv])\s+(\S+)\s+(\S.*?)\s*$")


def parse_voltages(text: str, group: Group, n: Optional[int] = None) -> VoltageAssignment:
    """
    전압 파일을 읽습니다. n 이 주어지면 정사각형 번호의 범위도 검사합니다.

    Raises:
        ParseError: 문법 오류 또는 읽을 수 없는 군 원소
        SemanticError: 범위 밖이거나 두 번 지정된 정사각형
    """
    tables: dict[str, dict[int, GroupElem]] = {"h": {}, "v": {}}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        body = _strip_comment(raw)
        if not body.strip():
            continue
        match = _VOLTAGE.match(body)
        if not match:
            raise ParseError(line_no, _skip_ws(body, 0) + 1, "'h <정사각형> <원소>' 또는 'v <정사각형> <원소>' 형식이 아님")
        kind, square_text, elem_text = match.groups()
        square_column = match.start(2) + 1
        if not square_text.isdigit():
            raise ParseError(line_no, square_column, f"정사각형 번호가 아님: {square_text!r}")
        square = int(square_text)
        if square < 1 or (n is not None and square > n):
            raise SemanticError(line_no, square_column, f"정사각형 {square} 이 범위 밖")
        if square in tables[kind]:
            raise SemanticError(line_no, square_column, f"{kind} {square} 가 두 번 지정됨")
        try:
            tables[kind][square] = parse_group_element(elem_text, group)
        except GroupSpecError as exc:
            raise ParseError(line_no, match.start(3) + 1, str(exc)) from None
    try:
        return VoltageAssignment(group, wh=tables["h"], wv=tables["v"])
    except MixedGroupKinds as exc:
        raise SemanticError(1, 1, str(exc)) from None
