import logging
from typing import Callable, Optional

import numpy as np

from fracwave.core.config import ModelConfig, import_object
from fracwave.core.models import SpectralField
from fracwave.core.protocols import NonlinearityProtocol
from fracwave.primitives.modules.spectral import SineTransform

__all__ = ["Nonlinearity", "resolve_nonlinearity", "evaluate_nonlinearity"]

logger = logging.getLogger(__name__)


class Nonlinearity(NonlinearityProtocol):
    """A pointwise source term with an optional declared Lipschitz constant."""

    def __init__(self, name: str, func: Optional[Callable[[np.ndarray], np.ndarray]],
                 lipschitz: Optional[float] = None):
        self.name = name
        self.func = func
        self.lipschitz = lipschitz

    @property
    def is_zero(self) -> bool:
        return self.func is None

    def __call__(self, values: np.ndarray) -> np.ndarray:
        if self.func is None:
            return np.zeros_like(values)
        return np.asarray(self.func(values), dtype=float)


def resolve_nonlinearity(name: str) -> Nonlinearity:
    """Look up `sin`, `zero`, or import a custom callable from a dotted path.

    A custom callable declares its Lipschitz bound through a `lipschitz` attribute.

    Raises:
        ImportError: If the dotted path cannot be imported
    """
    if name == "sin":
        return Nonlinearity("sin", np.sin, lipschitz=1.0)
    if name == "zero":
        return Nonlinearity("zero", None, lipschitz=0.0)
    func = import_object(name)
    lipschitz = getattr(func, "lipschitz", None)
    if lipschitz is None:
        logger.warning(f"Nonlinearity {name} declares no Lipschitz bound; stability is not guaranteed")
    return Nonlinearity(name, func, lipschitz=lipschitz)


def evaluate_nonlinearity(
        u: SpectralField,
        config: ModelConfig,
        transform: Optional[SineTransform] = None,
        nonlinearity: Optional[Nonlinearity] = None,
) -> SpectralField:
    """Coefficients of f(u), computed as project(f(evaluate(u))) on the collocation grid."""
    nonlinearity = nonlinearity or resolve_nonlinearity(config.nonlinearity)
    if nonlinearity.is_zero:
        return SpectralField.zeros(u.mode_count)
    transform = transform or SineTransform(config.modes, config.collocation_size)
    return SpectralField(coeffs=transform.project(nonlinearity(transform.evaluate(u.coeffs))))
