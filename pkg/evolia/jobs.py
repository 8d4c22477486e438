"""Job files, reports and certificate verification.

A job names a coefficient ring, an algebra (a finite structure matrix given
row by row, or a shift rule) and the analyses to run. Running it yields a
:class:`Report` whose results carry re-checkable certificates.
"""
import dataclasses
import hashlib
import itertools
import json
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from jina.logging.logger import JinaLogger

from . import analysis
from .algebra import EvolutionAlgebra, build_algebra_from_rows
from .analysis import oracles
from .config import Settings
from .errors import (
    BoundRequiredError,
    CertificateMismatchError,
    EvoliaError,
    GuardExceeded,
    InvariantViolation,
    ParseError,
    RingError,
)
from .infinite import (
    ShiftRule,
    nil_exponent_shift,
    plenary_certificate,
    plenary_power_sparse,
    principal_power_sparse,
    window,
)
from .rings import Ring, RingDescriptor, make_ring

SCHEMA_VERSION = 1

ANALYSES = ('nil', 'nilpotent', 'strongly-nilpotent', 'filtration', 'element-power')
MODES = ('finite', 'shift')
OPTIONS = ('cap', 'bound', 'element', 'power', 'power_kind', 'window', 'plenary_cap')
POWER_KINDS = ('principal', 'plenary')
CONVENTION = {'input': 'rows', 'internal': 'columns'}


def canonical_digest(obj: Any) -> str:
    text = json.dumps(obj, sort_keys=True, separators=(',', ':'))
    return hashlib.sha256(text.encode('utf-8')).hexdigest()


# -- jobs -------------------------------------------------------------------


@dataclass(frozen=True)
class JobSpec:
    ring: RingDescriptor
    mode: str
    analyses: Tuple[str, ...]
    matrix: Optional[Tuple[tuple, ...]] = None
    nu: Any = None
    labels: Optional[Tuple[str, ...]] = None
    options: Dict[str, Any] = field(default_factory=dict, hash=False)

    def make_ring(self) -> Ring:
        return make_ring(self.ring)

    def algebra(self) -> EvolutionAlgebra:
        """The finite algebra; the input rows become columns of ``C``."""
        return build_algebra_from_rows(self.make_ring(), self.matrix, self.labels)

    def rule(self, bound: int = 4096) -> ShiftRule:
        ring = self.make_ring()
        return ShiftRule(ring, ring.decode(self.nu), bound)

    def subject_json(self) -> dict:
        if self.mode == 'finite':
            return self.algebra().to_json()
        return self.rule().to_json()

    @property
    def digest(self) -> str:
        return canonical_digest(self.subject_json())


def _read(source: Union[str, Path]) -> str:
    if isinstance(source, Path):
        return source.read_text(encoding='utf-8')
    if not source.lstrip().startswith('{') and Path(source).is_file():
        return Path(source).read_text(encoding='utf-8')
    return source


def _load_json(source: Union[str, Path]) -> dict:
    text = _read(source)
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as ex:
        raise ParseError(ex.msg, f'line {ex.lineno} column {ex.colno}') from None
    if not isinstance(raw, dict):
        raise ParseError('expected a JSON object', 'line 1')
    return raw


def _positive_int(value, context: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise ParseError(f'expected a positive integer, got {value!r}', context)
    return value


def _parse_options(raw, analyses) -> Dict[str, Any]:
    if raw is None:
        raw = {}
    if not isinstance(raw, dict):
        raise ParseError('expected an object', 'options')
    unknown = sorted(set(raw) - set(OPTIONS))
    if unknown:
        raise ParseError(f'unknown options: {", ".join(unknown)}', 'options')
    options = dict(raw)
    for key in ('cap', 'bound', 'power', 'window', 'plenary_cap'):
        if key in options:
            _positive_int(options[key], f'options.{key}')
    kind = options.setdefault('power_kind', 'principal')
    if kind not in POWER_KINDS:
        raise ParseError(f'expected one of {", ".join(POWER_KINDS)}, got {kind!r}', 'options.power_kind')
    if 'element-power' in analyses:
        for key in ('element', 'power'):
            if key not in options:
                raise ParseError(f'element-power needs `{key}`', 'options')
    return options


def parse_job(source: Union[str, Path]) -> JobSpec:
    """Parse and validate a job from a file path or from its JSON text."""
    raw = _load_json(source)
    try:
        ring_descriptor = RingDescriptor.from_json(raw.get('ring'))
    except RingError as ex:
        raise ParseError(str(ex), 'ring') from None
    ring = make_ring(ring_descriptor)

    mode = raw.get('mode', 'finite')
    if mode not in MODES:
        raise ParseError(f'unknown mode {mode!r}', 'mode')

    analyses = raw.get('analyses')
    if not isinstance(analyses, list) or not analyses:
        raise ParseError('expected a nonempty list', 'analyses')
    for i, name in enumerate(analyses, start=1):
        if name not in ANALYSES:
            raise ParseError(f'unknown analysis {name!r}', f'analyses[{i}]')
    options = _parse_options(raw.get('options'), analyses)

    labels = raw.get('labels')
    if labels is not None:
        if not isinstance(labels, list) or not all(isinstance(x, str) for x in labels):
            raise ParseError('expected a list of strings', 'labels')
        if len(set(labels)) != len(labels):
            raise ParseError('labels must be distinct', 'labels')
        labels = tuple(labels)

    if mode == 'shift':
        if 'nu' not in raw:
            raise ParseError('shift mode needs `nu`', 'nu')
        job = JobSpec(ring_descriptor, mode, tuple(analyses), nu=raw['nu'], options=options)
        try:
            job.rule()
        except RingError as ex:
            raise ParseError(str(ex), 'nu') from None
        return job

    matrix = raw.get('matrix')
    if not isinstance(matrix, list) or not matrix:
        raise ParseError('expected a nonempty list of rows', 'matrix')
    n = len(matrix)
    dimension = raw.get('dimension', n)
    if dimension != n:
        raise ParseError(f'{n} rows for dimension {dimension}', 'matrix')
    for k, row in enumerate(matrix, start=1):
        if not isinstance(row, list) or len(row) != n:
            raise ParseError(f'ragged row {k}', 'matrix')
        for j, value in enumerate(row, start=1):
            try:
                ring.decode(value)
            except RingError as ex:
                raise ParseError(str(ex), f'matrix[{k}][{j}]') from None
    if labels is not None and len(labels) != n:
        raise ParseError(f'{len(labels)} labels for dimension {n}', 'labels')
    return JobSpec(
        ring_descriptor,
        mode,
        tuple(analyses),
        matrix=tuple(tuple(row) for row in matrix),
        labels=labels,
        options=options,
    )


# -- reports ----------------------------------------------------------------


@dataclass(frozen=True)
class AnalysisResult:
    analysis: str
    status: str
    verdict: Optional[str] = None
    payload: Dict[str, Any] = field(default_factory=dict, hash=False)
    scope: str = 'algebra'
    error: Optional[str] = None
    elapsed: float = field(default=0.0, compare=False)

    def to_json(self) -> dict:
        return {
            'analysis': self.analysis,
            'status': self.status,
            'verdict': self.verdict,
            'payload': self.payload,
            'scope': self.scope,
            'error': self.error,
        }

    @classmethod
    def from_json(cls, obj: dict) -> 'AnalysisResult':
        return cls(
            obj['analysis'],
            obj['status'],
            obj.get('verdict'),
            obj.get('payload') or {},
            obj.get('scope', 'algebra'),
            obj.get('error'),
        )


@dataclass(frozen=True)
class Report:
    algebra_hash: str
    ring: dict = field(hash=False)
    mode: str
    results: Tuple[AnalysisResult, ...]
    v: int = SCHEMA_VERSION
    convention: Dict[str, str] = field(default_factory=lambda: dict(CONVENTION), hash=False)

    def to_json(self) -> dict:
        return {
            'v': self.v,
            'algebra_hash': self.algebra_hash,
            'ring': self.ring,
            'mode': self.mode,
            'convention': self.convention,
            'results': [r.to_json() for r in self.results],
        }

    @classmethod
    def from_json(cls, obj: dict) -> 'Report':
        version = obj.get('v')
        if version != SCHEMA_VERSION:
            raise ParseError(f'unsupported report version {version!r}', 'v')
        try:
            return cls(
                obj['algebra_hash'],
                obj['ring'],
                obj['mode'],
                tuple(AnalysisResult.from_json(r) for r in obj['results']),
                version,
                obj.get('convention') or dict(CONVENTION),
            )
        except (KeyError, TypeError) as ex:
            raise ParseError(f'malformed report: {ex}', 'results') from None


def parse_report(source: Union[str, Path]) -> Report:
    return Report.from_json(_load_json(source))


# -- running ----------------------------------------------------------------


def _enc_path(path) -> Optional[list]:
    return list(path) if path is not None else None


def effective_settings(
    settings: Settings, job: JobSpec, overrides: Optional[Dict[str, Any]] = None
) -> Settings:
    """Job options override ``settings``; ``overrides`` (the CLI flags) override both."""
    return settings.override(
        nil_cap=job.options.get('cap'),
        iteration_bound=job.options.get('bound'),
        plenary_cap=job.options.get('plenary_cap'),
    ).override(**(overrides or {}))


class JobRunner:
    """Run the analyses of a job one after the other.

    Precondition failures of one analysis become an error entry of that
    analysis; an :class:`InvariantViolation` aborts the whole job.
    """

    def __init__(
        self,
        settings: Optional[Settings] = None,
        parallel: bool = False,
        overrides: Optional[Dict[str, Any]] = None,
    ):
        self.settings = settings or Settings()
        self.parallel = parallel
        self.overrides = overrides or {}
        self.logger = JinaLogger(self.__class__.__name__)

    def run(self, job: JobSpec) -> Report:
        settings = effective_settings(self.settings, job, self.overrides)
        self.logger.info(f'Run {len(job.analyses)} analyses over {job.ring} ({job.mode})')
        if job.mode == 'finite':
            subject = job.algebra()
            digest = subject.digest
        else:
            subject = job.rule(settings.iteration_bound)
            digest = canonical_digest(subject.to_json())

        results = []
        for name in job.analyses:
            start = time.perf_counter()
            try:
                verdict, payload, scope = self._dispatch(name, job, subject, settings)
                result = AnalysisResult(name, 'ok', verdict, payload, scope)
            except InvariantViolation:
                raise
            except EvoliaError as ex:
                self.logger.error(f'{name} failed: {ex}')
                result = AnalysisResult(name, 'error', error=str(ex))
            results.append(
                dataclasses.replace(result, elapsed=time.perf_counter() - start)
            )
        return Report(digest, job.ring.to_json(), job.mode, tuple(results))

    def _dispatch(self, name: str, job: JobSpec, subject, settings: Settings):
        if job.mode == 'finite':
            return self._finite(name, job, subject, settings) + ('algebra',)
        if name == 'element-power':
            return self._shift_power(job, subject, settings) + ('rule',)
        if name == 'nil' and 'element' in job.options:
            return self._shift_nil(job, subject) + ('rule',)
        if 'window' in job.options:
            return self._finite(name, job, window(subject, job.options['window']), settings) + (
                'window',
            )
        if name == 'nilpotent':
            return self._shift_nilpotent(subject, settings) + ('rule',)
        raise BoundRequiredError(f'{name} on the infinite algebra needs the `window` option')

    # finite algebras

    def _finite(self, name: str, job: JobSpec, algebra: EvolutionAlgebra, settings: Settings):
        if name == 'nil':
            if 'element' in job.options:
                return self._nil_element(job, algebra, settings)
            return self._nil_algebra(algebra, settings)
        if name == 'nilpotent':
            return self._nilpotent(job, algebra, settings)
        if name == 'strongly-nilpotent':
            return self._strong(algebra)
        if name == 'filtration':
            return self._filtration(algebra)
        return self._power(job, algebra, settings)

    def _nil_element(self, job, algebra, settings):
        ring = algebra.ring
        a = algebra.decode_element(job.options['element'])
        verdict = analysis.is_nil_element(
            a, None if ring.is_finite else settings.iteration_bound
        )
        payload = {'element': algebra.encode_element(a), 'element_text': str(a)}
        if isinstance(verdict, analysis.Nil):
            payload['exponent'] = verdict.exponent
        elif isinstance(verdict, analysis.NotNil):
            payload.update(start=verdict.start, end=verdict.end)
        else:
            self.logger.warning(f'{a} undecided within {verdict.bound} powers')
            payload['bound'] = verdict.bound
        return type(verdict).__name__, payload

    def _nil_algebra(self, algebra, settings):
        diag = analysis.diag_nil_precheck(algebra, settings.iteration_bound)
        verdict = analysis.is_nil_algebra(
            algebra,
            cap=settings.nil_cap,
            parallel=self.parallel,
            workers=settings.workers,
            prepass_steps=settings.vector_prepass_steps,
        )
        payload: Dict[str, Any] = {
            'diag': 'pass' if isinstance(diag, analysis.DiagPass) else diag.index
        }
        if isinstance(verdict, analysis.NilAlgebra):
            payload.update(max_exponent=verdict.max_exponent, checked=verdict.checked)
        elif isinstance(verdict, analysis.NotNilAlgebra):
            payload.update(
                witness=algebra.encode_element(verdict.witness),
                witness_text=str(verdict.witness),
                start=verdict.verdict.start,
                end=verdict.verdict.end,
            )
        else:
            payload.update(reason=verdict.reason, size=verdict.size)
        if isinstance(diag, analysis.DiagFail) and isinstance(verdict, analysis.NilAlgebra):
            raise InvariantViolation(f'c_{diag.index}{diag.index} is not nilpotent in a nil algebra')
        return type(verdict).__name__, payload

    def _nilpotent(self, job, algebra, settings):
        ring = algebra.ring
        verdict = analysis.is_nilpotent(
            algebra, job.options.get('bound'), step_guard=settings.dp_step_guard
        )
        if isinstance(verdict, analysis.Nilpotent):
            payload = {
                'exponent': verdict.exponent,
                'path': _enc_path(verdict.path),
                'product': None if verdict.product is None else ring.encode(verdict.product),
                'method': verdict.method,
            }
        elif isinstance(verdict, analysis.NotNilpotent):
            payload = {
                'path': list(verdict.path),
                'product': ring.encode(verdict.product),
                'cycle_start': verdict.cycle_start,
                'cycle_end': verdict.cycle_end,
                'method': verdict.method,
            }
        else:
            payload = {'bound': verdict.bound}
        return type(verdict).__name__, payload

    def _strong(self, algebra):
        verdict = analysis.is_strongly_nilpotent(algebra)
        if isinstance(verdict, analysis.StronglyNilpotent):
            payload = {
                'exponent': verdict.exponent,
                'associated_index': verdict.associated_index,
                'chain': list(verdict.chain),
            }
        elif isinstance(verdict, analysis.NotStronglyNilpotent):
            payload = {'chain': list(verdict.chain), 'stable_step': verdict.stable_step}
        else:
            payload = {'reason': verdict.reason}
        return type(verdict).__name__, payload

    def _filtration(self, algebra):
        filtration = analysis.compute_filtration(algebra)
        payload = {
            'layers': [list(layer) for layer in filtration.layers],
            'residue': list(filtration.residue),
            'complete': filtration.complete,
            'permutation': _enc_path(filtration.order),
        }
        return 'Filtration', payload

    def _power(self, job, algebra, settings):
        a = algebra.decode_element(job.options['element'])
        n = job.options['power']
        if job.options['power_kind'] == 'plenary':
            result = algebra.plenary_power(a, n, settings.plenary_cap)
        else:
            result = algebra.principal_power(a, n)
        return 'Power', {
            'element': algebra.encode_element(a),
            'element_text': str(a),
            'power': n,
            'kind': job.options['power_kind'],
            'result': algebra.encode_element(result),
            'result_text': str(result),
        }

    # shift rules

    def _shift_power(self, job, rule, settings):
        a = rule.decode_element(job.options['element'])
        n = job.options['power']
        if job.options['power_kind'] == 'plenary':
            result = plenary_power_sparse(a, n, settings.plenary_cap)
        else:
            result = principal_power_sparse(a, n)
        return 'Power', {
            'element': a.encode(),
            'element_text': str(a),
            'power': n,
            'kind': job.options['power_kind'],
            'result': result.encode(),
            'result_text': str(result),
        }

    def _shift_nil(self, job, rule):
        a = rule.decode_element(job.options['element'])
        k = nil_exponent_shift(a)
        return 'Nil', {'element': a.encode(), 'element_text': str(a), 'exponent': k}

    def _shift_nilpotent(self, rule, settings):
        stages = settings.plenary_cap
        stage, top = plenary_certificate(rule, stages, settings.plenary_cap)
        return 'NotNilpotent', {
            'method': 'plenary',
            'stages': stages,
            'top': top,
            'stage': stage.encode(),
        }


def run_job(
    job: JobSpec,
    settings: Optional[Settings] = None,
    parallel: bool = False,
    overrides: Optional[Dict[str, Any]] = None,
) -> Report:
    return JobRunner(settings, parallel, overrides).run(job)


# -- verification -----------------------------------------------------------


class _Verifier:
    def __init__(self, job: JobSpec, settings: Settings, logger: JinaLogger):
        self.job = job
        self.settings = settings
        self.logger = logger

    def check(self, result: AnalysisResult) -> bool:
        job = self.job
        if job.mode == 'finite':
            subject = job.algebra()
        else:
            subject = job.rule(self.settings.iteration_bound)
        if result.status != 'ok':
            return self._fails_again(result, subject)
        prefix = '_finite_'
        if job.mode != 'finite':
            if result.scope == 'window':
                subject = window(subject, job.options['window'])
            else:
                prefix = '_shift_'
        if result.verdict in ('Unknown', 'Skipped', 'Unsupported'):
            return prefix == '_finite_' and self._undecided(result, subject)
        method = getattr(self, f'{prefix}{result.verdict}', None)
        if method is None:
            return False
        return method(subject, result.payload)

    def _fails_again(self, result: AnalysisResult, subject) -> bool:
        """An error entry stands only if the analysis fails again with the same message."""
        runner = JobRunner(self.settings)
        try:
            runner._dispatch(result.analysis, self.job, subject, self.settings)
        except InvariantViolation:
            raise
        except EvoliaError as ex:
            return str(ex) == result.error
        return False

    def _undecided(self, result: AnalysisResult, algebra: EvolutionAlgebra) -> bool:
        ring = algebra.ring
        payload = result.payload
        if result.verdict == 'Unsupported':
            return result.analysis == 'strongly-nilpotent' and not ring.is_field
        if result.verdict == 'Skipped':
            size = payload['size']
            return (
                result.analysis == 'nil'
                and 'element' not in self.job.options
                and ring.is_finite
                and size == ring.cardinality**algebra.dimension
                and size > self.settings.nil_cap
            )
        bound = payload['bound']
        if result.analysis == 'nilpotent':
            verdict = analysis.is_nilpotent(
                algebra, self.job.options.get('bound'), step_guard=self.settings.dp_step_guard
            )
        elif result.analysis == 'nil' and not ring.is_finite:
            a = algebra.decode_element(self.job.options['element'])
            verdict = analysis.is_nil_element(a, self.settings.iteration_bound)
        else:
            return False
        return verdict == analysis.Unknown(bound)

    # finite algebras

    def _paths_empty(self, algebra, length: int) -> bool:
        try:
            return not oracles.brute_force_path_products(algebra, length, self.settings.path_guard)
        except GuardExceeded:
            self.logger.debug(f'path oracle over the guard at length {length}, using states')
            return not oracles.path_product_states(algebra, length)[-1]

    def _finite_Nilpotent(self, algebra, payload) -> bool:
        n = payload['exponent']
        if algebra.dimension == 0:
            return n == 1
        if n < 2 or not self._paths_empty(algebra, n - 1):
            return False
        if n > 2 and self._paths_empty(algebra, n - 2):
            return False
        path = payload.get('path')
        if path is None:
            return n == 2
        product = oracles.path_product(algebra, path)
        ring = algebra.ring
        return (
            len(path) == n - 1
            and not ring.is_zero(product)
            and product == ring.decode(payload['product'])
        )

    def _finite_NotNilpotent(self, algebra, payload) -> bool:
        ring = algebra.ring
        path = payload['path']
        if any(not 1 <= i <= algebra.dimension for i in path):
            return False
        product = oracles.path_product(algebra, path)
        if ring.is_zero(product) or product != ring.decode(payload['product']):
            return False
        if payload['method'] == 'domain':
            return ring.is_domain and len(path) >= 2 and path[0] == path[-1]
        start, end = payload['cycle_start'], payload['cycle_end']
        if not 1 <= start < end or len(path) != end + 1:
            return False
        states = oracles.path_product_states(algebra, end)
        if not all(states) or states[start - 1] != states[end - 1]:
            return False
        # the claimed cycle closes at the first repetition
        return len(set(states[: end - 1])) == end - 1

    def _finite_Nil(self, algebra, payload) -> bool:
        a = algebra.decode_element(payload['element'])
        return oracles.naive_nil_element(a) == analysis.Nil(payload['exponent'])

    def _finite_NotNil(self, algebra, payload) -> bool:
        a = algebra.decode_element(payload['element'])
        return oracles.naive_nil_element(a) == analysis.NotNil(payload['start'], payload['end'])

    def _finite_NilAlgebra(self, algebra, payload) -> bool:
        ring = algebra.ring
        total = ring.cardinality**algebra.dimension
        if payload['checked'] != total:
            return False
        elements = list(ring.elements())
        highest = 1
        for coeffs in itertools.product(elements, repeat=algebra.dimension):
            verdict = oracles.naive_nil_element(algebra.element(coeffs))
            if not isinstance(verdict, analysis.Nil):
                return False
            highest = max(highest, verdict.exponent)
        return highest == payload['max_exponent']

    def _finite_NotNilAlgebra(self, algebra, payload) -> bool:
        a = algebra.decode_element(payload['witness'])
        return oracles.naive_nil_element(a) == analysis.NotNil(payload['start'], payload['end'])

    def _finite_StronglyNilpotent(self, algebra, payload) -> bool:
        n = payload['exponent']
        if algebra.dimension == 0:
            return n == 1
        chain, vanishes = analysis.associated_power_chain(algebra)
        if not vanishes or list(chain) != payload['chain'] or len(chain) != payload['associated_index']:
            return False
        basis = [algebra.basis(i) for i in range(1, algebra.dimension + 1)]
        try:
            return oracles.brute_force_parenthesized_products(
                algebra, n, basis, self.settings.parenthesized_max_length, self.settings.path_guard
            ) and not oracles.brute_force_parenthesized_products(
                algebra, n - 1, basis, self.settings.parenthesized_max_length, self.settings.path_guard
            )
        except GuardExceeded:
            return analysis.strong.strong_exponent(algebra, 2 ** len(chain) + 1) == n

    def _finite_NotStronglyNilpotent(self, algebra, payload) -> bool:
        chain, vanishes = analysis.associated_power_chain(algebra)
        return not vanishes and list(chain) == payload['chain'] and len(chain) == payload['stable_step']

    def _finite_Filtration(self, algebra, payload) -> bool:
        filtration = analysis.compute_filtration(algebra)
        if [list(layer) for layer in filtration.layers] != payload['layers']:
            return False
        if list(filtration.residue) != payload['residue']:
            return False
        order = payload['permutation']
        if order is None:
            return not filtration.complete
        reordered = algebra.reordered(order)
        ring = algebra.ring
        n = reordered.dimension
        return all(
            ring.is_zero(reordered.coefficient(k, i))
            for k in range(1, n + 1)
            for i in range(1, k + 1)
        )

    def _finite_Power(self, algebra, payload) -> bool:
        a = algebra.decode_element(payload['element'])
        n = payload['power']
        current = a
        if payload['kind'] == 'plenary':
            for _ in range(n):
                current = current * current
        else:
            for _ in range(n - 1):
                current = current * a
        return current == algebra.decode_element(payload['result'])

    # shift rules

    def _shift_Power(self, rule, payload) -> bool:
        a = rule.decode_element(payload['element'])
        n = payload['power']
        current = a
        if payload['kind'] == 'plenary':
            for _ in range(n):
                current = current * current
        else:
            for _ in range(n - 1):
                current = current * a
        return current == rule.decode_element(payload['result'])

    def _shift_Nil(self, rule, payload) -> bool:
        a = rule.decode_element(payload['element'])
        k = payload['exponent']
        if k == 1:
            return a.is_zero
        return (
            k >= 2
            and principal_power_sparse(a, k).is_zero
            and not principal_power_sparse(a, k - 1).is_zero
        )

    def _shift_NotNilpotent(self, rule, payload) -> bool:
        stages = payload['stages']
        current = rule.basis(1)
        for _ in range(stages):
            current = current * current
        top = payload['top']
        return (
            top == stages + 1
            and current.max_support == top
            and current[top] == rule.ring.one
            and current == rule.decode_element(payload['stage'])
        )


def verify_certificate(
    report: Report,
    job: JobSpec,
    settings: Optional[Settings] = None,
    overrides: Optional[Dict[str, Any]] = None,
) -> bool:
    """Re-derive every certificate of ``report`` from ``job`` alone.

    Verdicts without a certificate (``Unknown``, ``Skipped``, ``Unsupported``)
    and error entries are re-checked against the job under the same settings.
    """
    if report.v != SCHEMA_VERSION:
        raise ParseError(f'unsupported report version {report.v!r}', 'v')
    if report.algebra_hash != job.digest:
        raise CertificateMismatchError('certificate for different algebra')
    logger = JinaLogger('Verifier')
    if tuple(r.analysis for r in report.results) != tuple(job.analyses):
        logger.warning('report results do not match the analyses of the job')
        return False
    verifier = _Verifier(job, effective_settings(settings or Settings(), job, overrides), logger)
    ok = True
    for result in report.results:
        try:
            passed = verifier.check(result)
        except InvariantViolation:
            raise
        except (EvoliaError, KeyError, TypeError, ValueError) as ex:
            logger.warning(f'{result.analysis}: malformed certificate ({ex})')
            passed = False
        if not passed:
            logger.warning(f'{result.analysis}: {result.verdict} does not re-verify')
        ok = ok and passed
    return ok


# -- output -----------------------------------------------------------------


def _short_path(path: List[int]) -> str:
    shown = ','.join(str(i) for i in path[:4])
    return f'[{shown},...]' if len(path) > 4 else f'[{shown}]'


def _human_line(result: AnalysisResult) -> str:
    name = result.analysis
    if result.scope == 'window':
        name = f'{name} (window)'
    if result.status != 'ok':
        return f'{name}: ERROR {result.error}'
    p = result.payload
    verdict = result.verdict
    if verdict == 'Nilpotent':
        return f'{name}: YES exponent={p["exponent"]}'
    if verdict == 'NotNilpotent':
        if p.get('method') == 'plenary':
            return f'{name}: NO plenary-stage={p["stages"]} top=x{p["top"]}'
        return f'{name}: NO witness-path={_short_path(p["path"])}'
    if verdict == 'NilAlgebra':
        return f'{name}: YES max-exponent={p["max_exponent"]} checked={p["checked"]}'
    if verdict == 'NotNilAlgebra':
        return f'{name}: NO witness={p["witness_text"]}'
    if verdict == 'Nil':
        return f'{name}: YES element={p["element_text"]} exponent={p["exponent"]}'
    if verdict == 'NotNil':
        return f'{name}: NO element={p["element_text"]} cycle=({p["start"]},{p["end"]})'
    if verdict == 'StronglyNilpotent':
        return (
            f'{name}: YES exponent={p["exponent"]} '
            f'associated-index={p["associated_index"]}'
        )
    if verdict == 'NotStronglyNilpotent':
        return f'{name}: NO chain={p["chain"]}'
    if verdict == 'Filtration':
        if p['complete']:
            return f'{name}: COMPLETE layers={p["layers"]} permutation={p["permutation"]}'
        return f'{name}: INCOMPLETE layers={p["layers"]} residue={p["residue"]}'
    if verdict == 'Power':
        exponent = f'[{p["power"]}]' if p['kind'] == 'plenary' else str(p['power'])
        return f'{name}: ({p["element_text"]})^{exponent} = {p["result_text"]}'
    if verdict == 'Unknown':
        return f'{name}: UNKNOWN bound={p["bound"]}'
    if verdict == 'Skipped':
        return f'{name}: SKIPPED size={p["size"]}'
    return f'{name}: UNSUPPORTED {p.get("reason", "")}'


def emit(report: Report, fmt: str = 'human') -> str:
    if fmt == 'machine':
        return json.dumps(report.to_json(), sort_keys=True, indent=2) + '\n'
    if fmt == 'human':
        return '\n'.join(_human_line(r) for r in report.results) + '\n'
    raise ValueError(f'unknown format `{fmt}`, expected human or machine')
