"""
Run configuration shared by the management commands, the API and the task.
"""
import logging
from dataclasses import asdict, dataclass

from django.conf import settings

from apps.algebra.exceptions import ParseError
from apps.algebra.services.scalars import parse_scalar

logger = logging.getLogger(__name__)

MODES = ('envelope', 'exterior')
OUTPUTS = ('text', 'json')
OMEGA_SQUARES = ('zero', 'nonzero')


@dataclass(frozen=True)
class ScenarioConfig:
    """
    Options of one scenario, suite or export run.

    Scalar options (t, lam, mu_value) are kept as text in the scalars
    grammar so the configuration stays JSON-serializable for the task queue.
    """

    scenario: str = ''
    group: str | None = None
    calculus: str | None = None
    bundle: str | None = None
    cap: int = 4
    mode: str | None = None
    mu_value: str | None = None
    t: str | None = None
    lam: str | None = None
    output: str = 'text'
    pack: str | None = None
    omega_sq: str = 'zero'
    degree: int = 0

    def __post_init__(self):
        if self.cap < 2:
            raise ParseError(f'degree cap must be at least 2, got {self.cap}')
        if self.mode is not None and self.mode not in MODES:
            raise ParseError(f'unknown quotient mode {self.mode!r}')
        if self.output not in OUTPUTS:
            raise ParseError(f'unknown output format {self.output!r}')
        if self.omega_sq not in OMEGA_SQUARES:
            raise ParseError(f'--omega-sq must be zero or nonzero, got {self.omega_sq!r}')
        if self.degree < 0:
            raise ParseError(f'degree must be non-negative, got {self.degree}')
        for name in ('t', 'lam', 'mu_value'):
            value = getattr(self, name)
            if value is not None:
                parse_scalar(value)

    @classmethod
    def from_options(cls, scenario: str = '', **options) -> 'ScenarioConfig':
        """
        Build a configuration from command or query options; missing values
        fall back to the BUNDLECALC_* settings.
        """
        mu_value = options.get('mu_value') or getattr(settings, 'BUNDLECALC_MU_VALUE', '') or None
        config = cls(
            scenario=scenario,
            group=options.get('group'),
            calculus=options.get('calculus'),
            bundle=options.get('bundle'),
            cap=int(options.get('cap') or settings.BUNDLECALC_DEGREE_CAP),
            mode=options.get('mode') or settings.BUNDLECALC_QUOTIENT_MODE,
            mu_value=mu_value,
            t=options.get('t'),
            lam=options.get('lam'),
            output=options.get('output') or 'text',
            pack=options.get('pack'),
            omega_sq=options.get('omega_sq') or 'zero',
            degree=int(options.get('degree') or 0),
        )
        logger.debug(f'Scenario configuration: {config}')
        return config

    def to_dict(self) -> dict:
        return asdict(self)

    @property
    def hopf_cap(self) -> int:
        return settings.BUNDLECALC_HOPF_CAP
