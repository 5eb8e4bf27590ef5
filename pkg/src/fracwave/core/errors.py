class ConfigurationError(ValueError):
    """Raised when a configuration value cannot be used to set up a run."""

    exit_code = 4


class UnknownConfigKeyError(ConfigurationError):
    """A configuration file or override names a key that does not exist."""

    exit_code = 2


class ConfigValueError(ConfigurationError):
    """A configuration value could not be parsed into the expected type."""

    exit_code = 3


class ConstraintViolationError(ConfigurationError):
    """A configuration value parsed fine but lies outside its admissible range."""

    exit_code = 4


class FactorizationError(RuntimeError):
    """The noise covariance could not be factorized, even after jitter retries."""

    exit_code = 5


class StudyError(RuntimeError):
    """A Monte Carlo sample failed; the whole study is aborted."""

    exit_code = 5
