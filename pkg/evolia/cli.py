import argparse
import dataclasses
import sys
from pathlib import Path
from typing import List, Optional, TextIO

from jina.logging.logger import JinaLogger

from .config import Settings
from .errors import EvoliaError, InvariantViolation, ParseError
from .jobs import emit, parse_job, parse_report, run_job, verify_certificate
from .storage import StorageFactory

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INVARIANT = 2


def _job_file(value: str) -> str:
    if not Path(value).is_file():
        raise argparse.ArgumentTypeError(f'{value} is not a file')
    return value


class _ArgumentParser(argparse.ArgumentParser):
    """Report usage errors as :class:`ParseError`."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        raise ParseError(message, self.prog)


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog='evolia', description='Nil and nilpotency certificates for evolution algebras'
    )
    parser.add_argument('--config', help='YAML file overriding the default settings')
    commands = parser.add_subparsers(dest='command', required=True)

    analyze = commands.add_parser('analyze', help='run the analyses of a job file')
    analyze.add_argument('job', type=_job_file)
    analyze.add_argument('--format', choices=('human', 'machine'), default='human')
    analyze.add_argument('--parallel', action='store_true', help='split exhaustive scans over threads')
    analyze.add_argument('--cap', type=int, help='largest |R|^N scanned by the nil criterion')
    analyze.add_argument('--store', help='archive the report: `lmdb` or an SQLAlchemy URL')
    analyze.add_argument('--workspace', help='directory of the LMDB archive')

    verify = commands.add_parser('verify', help='re-check the certificates of a report')
    verify.add_argument('report', type=_job_file)
    verify.add_argument('job', type=_job_file)
    verify.add_argument('--cap', type=int, help='the cap the report was produced with')

    power = commands.add_parser('power', help='run the element-power analyses of a job file')
    power.add_argument('job', type=_job_file)
    power.add_argument('--format', choices=('human', 'machine'), default='human')

    archive = commands.add_parser('archive', help='inspect archived reports')
    archive.add_argument('action', choices=('list', 'show', 'clear'))
    archive.add_argument('key', nargs='?', help='algebra hash for `show`')
    archive.add_argument('--store', help='`lmdb` or an SQLAlchemy URL')
    archive.add_argument('--workspace', help='directory of the LMDB archive')
    archive.add_argument('--format', choices=('human', 'machine'), default='machine')
    return parser


class EvoliaCli:
    def __init__(self, settings: Settings, out: TextIO = sys.stdout):
        self.settings = settings
        self.out = out
        self.logger = JinaLogger(self.__class__.__name__)

    def _storage(self, args):
        backend = args.store or self.settings.storage_backend
        workspace = Path(args.workspace or self.settings.workspace)
        self.logger.info(f'Using "{backend}" as the storage backend')
        return StorageFactory.open(backend, db_path=str(workspace / 'reports.lmdb'))

    def analyze(self, args) -> int:
        job = parse_job(args.job)
        report = run_job(
            job, self.settings, parallel=args.parallel, overrides={'nil_cap': args.cap}
        )
        self.out.write(emit(report, args.format))
        if args.store:
            storage = self._storage(args)
            try:
                storage.put([report])
            finally:
                storage.close()
        return EXIT_OK

    def verify(self, args) -> int:
        report = parse_report(args.report)
        job = parse_job(args.job)
        if verify_certificate(report, job, self.settings, {'nil_cap': args.cap}):
            self.out.write('verified\n')
            return EXIT_OK
        self.out.write('rejected\n')
        return EXIT_ERROR

    def power(self, args) -> int:
        job = parse_job(args.job)
        if 'element-power' not in job.analyses:
            raise ParseError('the job has no element-power analysis', 'analyses')
        job = dataclasses.replace(job, analyses=('element-power',))
        self.out.write(emit(run_job(job, self.settings), args.format))
        return EXIT_OK

    def archive(self, args) -> int:
        storage = self._storage(args)
        try:
            return self._archive(storage, args)
        finally:
            storage.close()

    def _archive(self, storage, args) -> int:
        if args.action == 'list':
            for key in storage.keys():
                self.out.write(f'{key}\n')
        elif args.action == 'show':
            if not args.key:
                raise ParseError('`show` needs an algebra hash', 'key')
            reports = storage.get(args.key)
            if not reports:
                self.logger.error(f'No report archived for {args.key}')
                return EXIT_ERROR
            self.out.write(emit(reports[0], args.format))
        else:
            storage.clear()
        return EXIT_OK


def main(argv: Optional[List[str]] = None, out: Optional[TextIO] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        cli = EvoliaCli(Settings.load(args.config), out or sys.stdout)
        return getattr(cli, args.command)(args)
    except InvariantViolation as ex:
        sys.stderr.write(f'internal invariant violated: {ex}\n')
        return EXIT_INVARIANT
    except (EvoliaError, ValueError, OSError) as ex:
        sys.stderr.write(f'error: {ex}\n')
        return EXIT_ERROR
