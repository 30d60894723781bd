"""Shared plumbing of the hullcert management commands.

Every command reads its JSON inputs through DRF serializers, runs one
geometry operation and writes artifacts that embed a provenance block
(command, mode, seed, tolerance and the digests of every input).
"""
import json
import logging
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from core.constants import Mode
from core.exceptions import HullcertError, MalformedInputError
from core.geometry.scalar import context_for
from core.models import RunRecord
from core.utils import artifacts
from core.utils.digest import content_digest

logger = logging.getLogger(__name__)


def parse_scalar(value: str):
    """argparse type for ``--eps``-style flags: a decimal or ``p/q`` string, kept as text."""
    try:
        Fraction(value)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f'not a number: {value!r}')
    return value


class HullcertCommand(BaseCommand):
    """Base class: run flags, input loading, error mapping and artifact output."""

    requires_migrations_checks = False
    requires_system_checks = []

    def add_arguments(self, parser):
        config = settings.HULLCERT
        parser.add_argument('--mode', choices=[m.value for m in Mode], default=config['MODE'],
                            help='Numeric mode for inputs that do not name one')
        parser.add_argument('--seed', type=int, default=0, help='Seed of every randomized step')
        parser.add_argument('--tol', type=float, default=config['TOLERANCE'],
                            help='Relative zero-test tolerance in f64 mode')
        parser.add_argument('--out', default=config['OUTPUT_DIR'], help='Directory receiving the artifacts')
        parser.add_argument('--record', action='store_true', default=config['RECORD_RUNS'],
                            help='Store a RunRecord row for this run')
        self.add_command_arguments(parser)

    def add_command_arguments(self, parser):
        pass

    @property
    def command_name(self) -> str:
        return self.__module__.rsplit('.', 1)[-1]

    @property
    def settings(self) -> dict:
        return settings.HULLCERT

    def handle(self, *args, **options):
        self.options = options
        self.mode = Mode(options['mode'])
        self.ctx = context_for(self.mode, options['tol'])
        self.inputs: Dict[str, str] = {}
        self.written: List[Path] = []
        try:
            summary = self.run(**options)
        except HullcertError as e:
            logger.warning('%s failed: %s', self.command_name, e)
            raise CommandError(f'{type(e).__name__}: {e}', returncode=e.exit_status)
        if options['record']:
            RunRecord.from_provenance(self.provenance(), self.written, summary or {})
        return None

    def run(self, **options) -> Optional[dict]:
        raise NotImplementedError('subclasses of HullcertCommand must provide a run() method')

    def serializer_context(self) -> dict:
        return {'mode': self.mode, 'tolerance': self.options['tol']}

    def load_input(self, name: str, path: str, serializer_class, **context):
        """Parse ``path`` with ``serializer_class`` and record its content digest under ``name``."""
        try:
            raw = Path(path).read_text(encoding='utf-8')
        except OSError as e:
            raise MalformedInputError(f'{name}: cannot read {path}: {e.strerror}', path=str(path))
        try:
            data = json.loads(raw)
        except json.JSONDecodeError as e:
            raise MalformedInputError(
                f'{name}: invalid JSON at line {e.lineno} column {e.colno}: {e.msg}',
                line=e.lineno, column=e.colno,
            )
        serializer = serializer_class(data=data, context={**self.serializer_context(), **context})
        if not serializer.is_valid():
            errors = json.loads(json.dumps(serializer.errors))
            raise MalformedInputError(f'{name}: {self._first_error(errors)}', fields=errors)
        self.inputs[name] = content_digest(data)
        return serializer.save()

    @staticmethod
    def _first_error(errors, prefix='') -> str:
        if isinstance(errors, dict):
            for key, value in errors.items():
                return HullcertCommand._first_error(value, f'{prefix}{key}.')
        if isinstance(errors, list) and errors:
            if all(isinstance(item, str) for item in errors):
                return f'{prefix.rstrip(".") or "input"}: {errors[0]}'
            for index, item in enumerate(errors):
                if item:
                    return HullcertCommand._first_error(item, f'{prefix}{index}.')
        return f'{prefix.rstrip(".")}: {errors}'

    def provenance(self) -> dict:
        return artifacts.provenance(self.command_name, self.mode, self.options['seed'], self.options['tol'],
                                    self.inputs)

    def output_path(self, suffix: str, stem: Optional[str] = None) -> Path:
        return Path(self.options['out']) / f'{stem or self.command_name}.{suffix}'

    def write_json(self, payload: dict, stem: Optional[str] = None) -> Path:
        path = artifacts.write_json(self.output_path('json', stem), payload, self.provenance())
        self.written.append(path)
        return path

    def write_csv(self, columns, rows, stem: Optional[str] = None) -> Path:
        path = artifacts.write_csv(self.output_path('csv', stem), columns, rows, self.provenance())
        self.written.append(path)
        return path

    def write_svg(self, polylines, stem: Optional[str] = None, **kwargs) -> Path:
        path = artifacts.write_svg(self.output_path('svg', stem), polylines, self.provenance(), **kwargs)
        self.written.append(path)
        return path

    def report(self, message: str):
        self.stdout.write(self.style.SUCCESS(f'{self.command_name}: {message}'))
