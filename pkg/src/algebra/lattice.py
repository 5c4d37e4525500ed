"""
lattice.py - 정수 격자 행 축약
ℤᵏ 의 생성원 행렬을 정수 행 연산(확장 유클리드 방식)으로 사다리꼴로 축약합니다.
변환 계수를 함께 추적하므로 격자 원소를 원래 생성원의 정수 결합으로 표현할 수 있습니다.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence


@dataclass
class _Row:
    vec: list[int]
    coeffs: list[int]  # 원래 생성원들에 대한 결합 계수

    def minus(self, q: int, other: "_Row") -> "_Row":
        return _Row(
            [a - q * b for a, b in zip(self.vec, other.vec)],
            [a - q * b for a, b in zip(self.coeffs, other.coeffs)],
        )

    def negated(self) -> "_Row":
        return _Row([-a for a in self.vec], [-a for a in self.coeffs])


@dataclass(frozen=True)
class EchelonBasis:
    """축약 결과: 피벗 열과 행, 각 행의 원래 생성원 결합 계수."""

    dimension: int
    pivots: tuple[int, ...]
    rows: tuple[tuple[int, ...], ...]
    coeffs: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.rows)

    def index(self) -> int:
        """ℤᵏ 안에서의 지수. 계수(rank)가 k 보다 작으면 0 (무한 지수)."""
        if self.rank < self.dimension:
            return 0
        result = 1
        for row, col in zip(self.rows, self.pivots):
            result *= row[col]
        return abs(result)


def row_reduce(vectors: Sequence[Sequence[int]], dimension: int) -> EchelonBasis:
    """
    정수 행 연산만으로 행 사다리꼴을 만듭니다.

    Args:
        vectors: ℤᵏ 의 벡터 목록
        dimension: k

    Returns:
        EchelonBasis (피벗은 양수로 정규화)
    """
    m = len(vectors)
    rows = [
        _Row([int(x) for x in v], [1 if j == i else 0 for j in range(m)])
        for i, v in enumerate(vectors)
    ]
    for v in rows:
        if len(v.vec) != dimension:
            raise ValueError(f"차원 {dimension} 과 맞지 않는 벡터: {v.vec}")

    pivot = 0
    pivots: list[int] = []
    for col in range(dimension):
        if pivot >= len(rows):
            break
        while True:
            candidates = [r for r in range(pivot, len(rows)) if rows[r].vec[col] != 0]
            if not candidates:
                break
            best = min(candidates, key=lambda r: (abs(rows[r].vec[col]), r))
            rows[pivot], rows[best] = rows[best], rows[pivot]
            a = rows[pivot].vec[col]
            for r in range(pivot + 1, len(rows)):
                q = rows[r].vec[col] // a
                if q:
                    rows[r] = rows[r].minus(q, rows[pivot])
            if all(rows[r].vec[col] == 0 for r in range(pivot + 1, len(rows))):
                break
        if rows[pivot].vec[col] != 0:
            if rows[pivot].vec[col] < 0:
                rows[pivot] = rows[pivot].negated()
            pivots.append(col)
            pivot += 1

    return EchelonBasis(
        dimension=dimension,
        pivots=tuple(pivots),
        rows=tuple(tuple(r.vec) for r in rows[:pivot]),
        coeffs=tuple(tuple(r.coeffs) for r in rows[:pivot]),
    )


def lattice_coefficients(
    vectors: Sequence[Sequence[int]],
    target: Sequence[int],
    dimension: int,
) -> Optional[list[int]]:
    """
    target 을 vectors 의 정수 결합으로 표현하는 계수를 구합니다.

    Returns:
        계수 목록 (len == len(vectors)), 격자 밖이면 None
    """
    basis = row_reduce(vectors, dimension)
    rest = [int(x) for x in target]
    result = [0] * len(vectors)
    for row, col, coeffs in zip(basis.rows, basis.pivots, basis.coeffs):
        if rest[col] % row[col] != 0:
            return None
        q = rest[col] // row[col]
        if q:
            rest = [a - q * b for a, b in zip(rest, row)]
            result = [a + q * b for a, b in zip(result, coeffs)]
    if any(rest):
        return None
    return result


def spans_full_lattice(vectors: Sequence[Sequence[int]], dimension: int) -> bool:
    """vectors 가 ℤᵏ 전체를 생성하는지 (지수 1) 판정합니다."""
    return row_reduce(vectors, dimension).index() == 1
