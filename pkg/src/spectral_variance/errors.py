"""Exception hierarchy.

Domain errors carry a short machine-readable ``code`` used by the CLI.
"""


class SpectralError(Exception):
    code = "SpectralError"


class NotDivisible(SpectralError, ArithmeticError):
    code = "NotDivisible"


class NotInteger(SpectralError, ArithmeticError):
    code = "NotInteger"


class InvalidWeights(SpectralError, ValueError):
    code = "InvalidWeights"


class InvalidSpectrum(SpectralError, ValueError):
    code = "InvalidSpectrum"


class BadExponent(SpectralError, ValueError):
    code = "BadExponent"


class OutOfRange(SpectralError, ValueError):
    code = "OutOfRange"


class BadParams(SpectralError, ValueError):
    code = "BadParams"


class OnCaustic(SpectralError, ValueError):
    code = "OnCaustic"


class PathOnCaustic(OnCaustic):
    code = "PathOnCaustic"


class DegenerateMetric(SpectralError, ValueError):
    code = "DegenerateMetric"


class ZeroEta(SpectralError, ZeroDivisionError):
    code = "ZeroEta"


class NoConvergence(SpectralError, RuntimeError):
    code = "NoConvergence"
