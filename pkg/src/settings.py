"""
settings.py - 설정 로드 모듈
config/settings.yaml 을 읽어 pydantic 모델로 검증합니다. 파일이나 섹션이 없으면 기본값을 사용합니다.
"""

from __future__ import annotations

from pathlib import Path
from typing import Optional

import yaml
from loguru import logger
from pydantic import BaseModel, Field


class BudgetSettings(BaseModel):
    cycle_budget: int = Field(default=10_000, ge=1)
    closure_cap: int = Field(default=1_000_000, ge=1)
    connectivity_budget: int = Field(default=10_000, ge=1)


class RealizeSettings(BaseModel):
    radius: int = Field(default=6, ge=0)
    vertex_budget: int = Field(default=200, ge=1)
    seed_radius: int = Field(default=3, ge=0)
    retry_budget: int = Field(default=3, ge=1)
    max_marker_squares: int = Field(default=50, ge=3)
    exhaustive_limit: int = Field(default=4, ge=1)


class SvgSettings(BaseModel):
    unit: int = Field(default=40, ge=8)
    margin: int = Field(default=20, ge=0)


class DebugSettings(BaseModel):
    check_bijections: bool = False


class LoggingSettings(BaseModel):
    level: str = "INFO"
    file: Optional[str] = None
    rotation: str = "10 MB"
    retention: str = "7 days"


class Settings(BaseModel):
    """settings.yaml 전체 구조."""

    budgets: BudgetSettings = Field(default_factory=BudgetSettings)
    realize: RealizeSettings = Field(default_factory=RealizeSettings)
    svg: SvgSettings = Field(default_factory=SvgSettings)
    debug: DebugSettings = Field(default_factory=DebugSettings)
    logging: LoggingSettings = Field(default_factory=LoggingSettings)


def load_settings(path: str | Path = "config/settings.yaml") -> Settings:
    """
    설정 파일을 로드합니다.

    Args:
        path: YAML 설정 파일 경로

    Returns:
        검증된 Settings 객체 (파일이 없으면 기본값)
    """
    settings_path = Path(path)
    if not settings_path.exists():
        logger.debug(f"설정 파일이 없어 기본값 사용: {settings_path}")
        return Settings()

    with open(settings_path, "r", encoding="utf-8") as f:
        raw = yaml.safe_load(f) or {}

    return Settings.model_validate(raw)
