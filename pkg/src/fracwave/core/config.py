import logging
import math
import os
from datetime import datetime, timezone
from typing import Annotated, Any, Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator
from pydantic_yaml import parse_yaml_raw_as, to_yaml_str

from .errors import ConfigValueError, ConstraintViolationError, UnknownConfigKeyError
from .models import SpectralField

logger = logging.getLogger(__name__)

Alpha = Annotated[float, Field(gt=0, le=1)]
Hurst = Annotated[float, Field(gt=0.5, lt=1)]
Resolution = Annotated[int, Field(ge=1)]

# Initial data of the reference experiments: u0 = sin(2 pi x)/sqrt(2), v0 = sin(3 pi x)/(2 sqrt(2)).
DEFAULT_U0 = {2: 1 / math.sqrt(2)}
DEFAULT_V0 = {3: 1 / (2 * math.sqrt(2))}


def import_object(path: str) -> Any:
    """Import an attribute from its dotted path.

    Args:
        path: The import path, e.g. ``package.module.function``

    Returns:
        The imported attribute

    Raises:
        ImportError: If the module cannot be imported or lacks the attribute
    """
    import importlib

    module_parts = path.split('.')
    if len(module_parts) < 2:
        raise ImportError(f"Not a dotted import path: {path!r}")
    attribute_name = module_parts[-1]
    module = importlib.import_module('.'.join(module_parts[:-1]))
    try:
        return getattr(module, attribute_name)
    except AttributeError as e:
        raise ImportError(f"Module {module.__name__!r} has no attribute {attribute_name!r}") from e


class ModelConfig(BaseModel):
    """Everything needed to run one trajectory of one scheme.

    `u0` and `v0` are sine series amplitudes {j: a_j} describing sum_j a_j sin(j pi x);
    modes above `modes` are dropped.
    """

    model_config = ConfigDict(frozen=True)

    alpha: Alpha
    hurst: Hurst = 0.8
    rho: float = Field(0.25, ge=0)
    horizon: float = Field(0.5, gt=0)
    steps: int = Field(64, ge=1)
    modes: int = Field(64, ge=1)
    scheme: Literal["low", "high"] = "low"
    nonlinearity: str = "sin"
    u0: Dict[int, float] = Field(default_factory=lambda: dict(DEFAULT_U0))
    v0: Dict[int, float] = Field(default_factory=lambda: dict(DEFAULT_V0))
    epsilon: float = Field(0.01, gt=0)
    collocation: Optional[int] = None
    noise: bool = True

    @field_validator("u0", "v0")
    @classmethod
    def _positive_modes(cls, value: Dict[int, float]) -> Dict[int, float]:
        for mode in value:
            if mode < 1:
                raise ValueError(f"sine modes are 1-based, got {mode}")
        return value

    @model_validator(mode="after")
    def _check_collocation(self):
        if self.collocation is not None and self.collocation < 2 * self.modes:
            raise ValueError(
                f"collocation size {self.collocation} is below 2 * modes = {2 * self.modes}"
            )
        return self

    @property
    def collocation_size(self) -> int:
        return self.collocation if self.collocation is not None else 4 * self.modes

    @property
    def tau(self) -> float:
        return self.horizon / self.steps

    def initial_fields(self) -> tuple[SpectralField, SpectralField]:
        from fracwave.primitives.modules.spectral import project_sine_series

        return (
            project_sine_series(self.u0, self.modes),
            project_sine_series(self.v0, self.modes),
        )

    def predicted_rates(self):
        from fracwave.primitives.modules.schemes.rates import gamma_param

        return gamma_param(self.alpha, self.rho, self.epsilon, hurst=self.hurst)

    def check_regime(self) -> bool:
        """Warn when gamma lies outside the regime the chosen scheme is analysed for.

        Returns:
            True if the configuration is inside the theoretical regime
        """
        if not self.noise:
            return True
        gamma = self.predicted_rates().gamma
        if self.scheme == "low" and not (0 < gamma <= self.alpha):
            logger.warning(
                f"gamma = {gamma:.4g} is outside (0, alpha = {self.alpha}]; "
                "the low order rate is not covered by theory"
            )
            return False
        if self.scheme == "high" and not gamma > self.alpha:
            logger.warning(
                f"gamma = {gamma:.4g} does not exceed alpha = {self.alpha}; "
                "the high order rate is not covered by theory"
            )
            return False
        return True


class ExperimentPlan(BaseModel):
    """A Monte Carlo strong convergence study over a geometric list of resolutions."""

    model_config = ConfigDict(frozen=True)

    config: ModelConfig
    resolutions: List[Resolution]
    refinement: int = Field(2, ge=2)
    samples: int = Field(200, ge=1)
    seed: int = Field(0, ge=0)
    workers: int = Field(1, ge=1)

    @model_validator(mode="after")
    def _check_resolutions(self):
        if not self.resolutions:
            raise ValueError("resolutions must not be empty")
        for coarse, fine in zip(self.resolutions, self.resolutions[1:]):
            if fine != coarse * self.refinement:
                raise ValueError(
                    f"resolutions must grow by the refinement factor {self.refinement}: "
                    f"got {coarse} followed by {fine}"
                )
        return self

    @property
    def scheme(self) -> str:
        return self.config.scheme

    @property
    def finest_steps(self) -> int:
        return self.refinement * max(self.resolutions)

    def config_for(self, steps: int) -> ModelConfig:
        return self.config.model_copy(update={"steps": steps})


class StudySettings(BaseModel):
    """Flat key/value settings as they appear in a configuration file or on the command line.

    An unset `scheme` means the low order scheme; the deterministic study runs both instead.
    """

    model_config = ConfigDict(extra="forbid")

    alpha: List[Alpha] = [0.6, 0.8, 1.0]
    hurst: List[Hurst] = [0.8]
    rho: float = Field(0.25, ge=0)
    T: float = Field(0.5, gt=0)
    N_list: List[Resolution] = [32, 64, 128]
    M: int = Field(256, ge=1)
    samples: int = Field(200, ge=1)
    seed: int = Field(0, ge=0)
    scheme: Optional[Literal["low", "high"]] = None
    f: str = "sin"
    epsilon: float = Field(0.01, gt=0)
    a: int = Field(2, ge=2)
    outdir: str = "results"
    workers: Optional[int] = Field(None, ge=1)
    collocation: Optional[int] = None

    @field_validator("alpha", "hurst", "N_list", mode="before")
    @classmethod
    def _scalar_to_list(cls, value):
        if isinstance(value, str):
            return [part for part in value.replace(",", " ").split()]
        if not isinstance(value, (list, tuple)):
            return [value]
        return value

    @classmethod
    def from_yaml(cls, yaml_str: str) -> "StudySettings":
        """Load settings from a YAML (or JSON) string.

        A persisted run manifest is accepted as well; its `settings` block is used.
        """
        return cls(**_load_mapping(yaml_str))

    def to_yaml(self) -> str:
        return to_yaml_str(self)

    @property
    def resolved_workers(self) -> int:
        """Configured worker count, or the machine parallelism when unset."""
        return self.workers or os.cpu_count() or 1

    def build_model_config(self, alpha: float, hurst: float, steps: int = 64, noise: bool = True) -> ModelConfig:
        return ModelConfig(
            alpha=alpha,
            hurst=hurst,
            rho=self.rho,
            horizon=self.T,
            steps=steps,
            modes=self.M,
            scheme=self.scheme or "low",
            nonlinearity=self.f,
            epsilon=self.epsilon,
            collocation=self.collocation,
            noise=noise,
        )

    def plans(self) -> list[ExperimentPlan]:
        """One plan per (hurst, alpha) pair, in that nesting order."""
        return [
            ExperimentPlan(
                config=self.build_model_config(alpha, hurst),
                resolutions=self.N_list,
                refinement=self.a,
                samples=self.samples,
                seed=self.seed,
                workers=self.resolved_workers,
            )
            for hurst in self.hurst
            for alpha in self.alpha
        ]


class RunManifest(BaseModel):
    """Fully resolved description of one CLI run, persisted next to its results."""

    command: str
    settings: StudySettings
    seed: int
    outdir: str
    timestamp: str = Field(default_factory=lambda: datetime.now(timezone.utc).isoformat())
    version: str = "unknown"


def classify_validation_error(error: ValidationError) -> Exception:
    """Map a pydantic validation error onto the configuration error hierarchy."""
    details = error.errors()
    types = [d["type"] for d in details]
    fields = ", ".join(".".join(str(p) for p in d["loc"]) for d in details)
    message = "; ".join(
        f"{'.'.join(str(p) for p in d['loc'])}: {d['msg']}" for d in details
    )
    if "extra_forbidden" in types:
        return UnknownConfigKeyError(f"Unknown configuration key(s): {fields}")
    if any(t.endswith("_parsing") or t.endswith("_type") or t == "int_from_float" for t in types):
        return ConfigValueError(f"Could not parse configuration value(s): {message}")
    return ConstraintViolationError(f"Invalid configuration value(s): {message}")


def _load_mapping(text: str) -> Dict[str, Any]:
    if not text.strip():
        return {}
    try:
        data = parse_yaml_raw_as(Dict[str, Any], text) or {}
    except ValidationError as e:
        raise ConfigValueError(f"Configuration file is not a key/value mapping: {e}") from e
    except Exception as e:
        raise ConfigValueError(f"Configuration file could not be parsed: {e}") from e
    if "settings" in data and "command" in data:
        data = data["settings"]
    return data


def resolve_settings(
        defaults: Dict[str, Any],
        file_text: Optional[str] = None,
        overrides: Optional[Dict[str, Any]] = None
) -> StudySettings:
    """Merge command defaults, an optional configuration file and flag overrides.

    Args:
        defaults: Per-command default values
        file_text: Contents of a YAML/JSON configuration file or run manifest
        overrides: Values given on the command line; None entries are ignored

    Returns:
        The validated settings

    Raises:
        UnknownConfigKeyError: If a key is not a known setting
        ConfigValueError: If a value cannot be parsed
        ConstraintViolationError: If a value is out of range
    """
    merged: Dict[str, Any] = dict(defaults)
    if file_text is not None:
        merged.update(_load_mapping(file_text))
    for key, value in (overrides or {}).items():
        if value is not None:
            merged[key] = value
    try:
        settings = StudySettings(**merged)
        # plan-level checks (geometric resolutions) surface as constraint violations too
        settings.plans()
    except ValidationError as e:
        raise classify_validation_error(e) from e
    return settings

