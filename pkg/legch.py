#!/usr/bin/env python
"""Точка входа CLI: python legch.py <command> [options]"""
import logging
import os
import sys

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'legch_site.settings')
import django
django.setup()

from django.conf import settings
from django.core.management import call_command
from django.core.management.base import CommandError

from cli.management.commands.legch import SUBCOMMANDS, USAGE

logger = logging.getLogger(__name__)


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    # Логи только в stderr, stdout остаётся детерминированным
    logging.basicConfig(
        level=settings.LEGCH_LOG_LEVEL,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        stream=sys.stderr,
    )

    if argv and argv[0] in ('-h', '--help'):
        sys.stdout.write(USAGE)
        return 0
    if not argv or argv[0] not in SUBCOMMANDS:
        if argv:
            sys.stderr.write(f"legch: неизвестная команда {argv[0]!r}\n")
        sys.stderr.write(USAGE)
        return 1

    try:
        call_command('legch', *argv)
    except CommandError as exc:
        logger.debug(f"Команда {argv[0]} завершилась с кодом {exc.returncode}")
        sys.stderr.write(f"legch: {exc}\n")
        return exc.returncode
    return 0


if __name__ == '__main__':
    sys.exit(main())
