"""
main.py - 메인 실행 진입점
설정을 읽고 로깅을 구성한 뒤 명령줄 명령을 실행합니다.
"""

from __future__ import annotations

import sys

from loguru import logger

from src.cli.commands import run_command
from src.settings import LoggingSettings, load_settings


def configure_logging(config: LoggingSettings) -> None:
    """로깅 설정을 구성합니다. 표준 출력은 명령 결과 전용이므로 로그는 stderr 와 파일로만 보냅니다."""
    logger.remove()  # 기본 핸들러 제거
    logger.add(
        sys.stderr,
        format="<green>{time:HH:mm:ss}</green> | <level>{level: <8}</level> | {message}",
        level=config.level,
    )
    if config.file:
        logger.add(
            config.file,
            rotation=config.rotation,
            retention=config.retention,
            encoding="utf-8",
            level="DEBUG",
        )


def main() -> None:
    """메인 실행 함수."""
    settings = load_settings()
    configure_logging(settings.logging)
    logger.debug(f"명령 실행: {' '.join(sys.argv[1:])}")
    sys.exit(run_command(sys.argv[1:], settings))


if __name__ == "__main__":
    main()
