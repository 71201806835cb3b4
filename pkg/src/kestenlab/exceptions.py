"""Exception types shared across the laboratory modules."""


class KestenLabError(Exception):
    """Base class for all laboratory errors."""


class InvalidModel(KestenLabError):
    """Model violates a precondition of the requested analysis (e.g. E log A >= 0)."""


class NoRoot(KestenLabError):
    """The moment equation E A**h = 1 has no root in the searched bracket."""


class NonPositiveRho(KestenLabError):
    """Computed drift E(A**alpha log A) is not positive; the alpha solve is suspect."""


class InsufficientTail(KestenLabError):
    """Too few tail exceedances to estimate a tail quantity."""


class DegenerateTails(KestenLabError):
    """c_plus + c_minus <= 0, so the limit constant is undefined."""


class DegenerateWeights(KestenLabError):
    """Importance-sampling weights carry too little effective sample size."""


class EmptyRegion(KestenLabError):
    """Large-deviation region has x_lo >= x_hi."""


class SchemeInvalid(KestenLabError):
    """Block-scheme indices are inconsistent at the requested x."""


class HypothesisViolated(KestenLabError):
    """Hypotheses of the ruin asymptote do not hold for this model."""


class PathOverflow(KestenLabError):
    """Path state exceeded the overflow guard; simulation aborted loudly."""


class ConfigError(KestenLabError):
    """Experiment configuration is malformed; carries key/line diagnostics."""

    def __init__(self, message: str, key: str | None = None, line: int | None = None):
        where = []
        if key is not None:
            where.append(f"key '{key}'")
        if line is not None:
            where.append(f"line {line}")
        suffix = f" ({', '.join(where)})" if where else ""
        super().__init__(message + suffix)
        self.key = key
        self.line = line
