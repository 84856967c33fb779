"""Exception types shared across the package."""


class ConfigurationError(ValueError):
    """A model or scenario parameter is out of its legal range."""


class ConfigParseError(ConfigurationError):
    """A configuration document could not be parsed.

    Carries the offending line number (1-based) when known.
    """

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
