try:
    from importlib.metadata import version, PackageNotFoundError
    __version__ = version("fracwave")
except PackageNotFoundError:
    __version__ = "unknown"

from .core import ModelConfig, ExperimentPlan, StudySettings, RunManifest, ConvergenceStudy

__all__ = [
    "__version__",
    "ModelConfig",
    "ExperimentPlan",
    "StudySettings",
    "RunManifest",
    "ConvergenceStudy",
]
