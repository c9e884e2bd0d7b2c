"""Командная строка конвейера: ingest -> label -> train / eval / cv / compare -> report.

Коды выхода: 0 успех, 1 ошибка выполнения, 2 ошибка использования или разбора.
"""

import argparse
import logging
import sys
from collections.abc import Sequence

from pydantic import ValidationError

from .commands import COMMANDS
from .config import load_settings
from .core.errors import WbcdError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wbcd",
        description="Нечеткая разметка WBCD и классификаторы ELM-RBF / Linear-SVM",
    )
    parser.add_argument("--config", default=None, help="Файл key=value с настройками WBCD_*")
    parser.add_argument("--log-level", default=None, help="Уровень логирования (INFO, DEBUG)")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in COMMANDS:
        command.register(subparsers)
    return parser


def _configure_logging(args: argparse.Namespace) -> None:
    level = args.log_level
    if level is None:
        try:
            level = load_settings(args.config).log_level
        except WbcdError:
            level = "INFO"
    logging.basicConfig(
        level=level.upper(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    _configure_logging(args)
    try:
        return args.run(args)
    except WbcdError as e:
        print(f"❌ Ошибка: {e}", file=sys.stderr)
        return EXIT_USAGE if e.usage_error else EXIT_FAILURE
    except ValidationError as e:
        print(f"❌ Некорректная конфигурация: {e}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as e:
        print(f"❌ Файл не найден: {e}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as e:
        logger.exception("Критическая ошибка: %s", e)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
