from .config import ModelConfig, ExperimentPlan, StudySettings, RunManifest, resolve_settings
from .errors import (
    ConfigurationError,
    UnknownConfigKeyError,
    ConfigValueError,
    ConstraintViolationError,
    FactorizationError,
    StudyError,
)
from .study import ConvergenceStudy
