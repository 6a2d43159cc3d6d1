"""Exception hierarchy.

Input problems raise :class:`ValidationError` (CLI exit code 2); numerical
breakdowns raise :class:`NumericalError` (CLI exit code 3).
"""


class ValidationError(ValueError):
    """An argument violates a documented precondition."""


class TooFewSamples(ValidationError):
    pass


class NumericalError(RuntimeError):
    """A numerical procedure could not produce a trustworthy result."""


class NoSignChange(NumericalError):
    pass


class SamplerFailure(NumericalError):
    pass
