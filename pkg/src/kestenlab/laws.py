"""Distribution catalog for the recurrence coefficients A and B.

A-laws are strictly positive.  Each one knows its moment function
``psi(h) = E A**h`` in closed form, the derivative ``psi'(h)``, ``E log A``,
and how to draw from the power-tilted law ``dP~ = A**alpha dP`` used by the
importance sampler (a probability law exactly when ``E A**alpha = 1``).

B-laws know their mean and absolute moments ``E|B|**p`` (possibly infinite).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate, special


# ---------------------------------------------------------------------------
# A-laws (multiplier)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LognormalA:
    """log A ~ Normal(mu, sigma2); psi(h) = exp(h mu + h^2 sigma2 / 2)."""

    mu: float
    sigma2: float

    def sample(self, rng: np.random.Generator, size=None):
        return rng.lognormal(self.mu, math.sqrt(self.sigma2), size)

    def sample_tilted(self, alpha: float, rng: np.random.Generator, size=None):
        # tilting a lognormal by A**alpha shifts the log-mean by alpha*sigma2
        return rng.lognormal(self.mu + alpha * self.sigma2,
                             math.sqrt(self.sigma2), size)

    def psi(self, h: float) -> float:
        return math.exp(h * self.mu + 0.5 * h * h * self.sigma2)

    def psi_prime(self, h: float) -> float:
        return self.psi(h) * (self.mu + h * self.sigma2)

    def e_log(self) -> float:
        return self.mu

    def var_log(self) -> float:
        return self.sigma2

    nonarithmetic = True

    def label(self) -> str:
        return f"lognormal(mu={self.mu:g}, sigma2={self.sigma2:g})"


@dataclass(frozen=True)
class UniformA:
    """A ~ Uniform(0, hi); psi(h) = hi**h / (h + 1)."""

    hi: float

    def __post_init__(self):
        if self.hi <= 0:
            raise ValueError("UniformA needs hi > 0")

    def sample(self, rng: np.random.Generator, size=None):
        # 1 - U lies in (0, 1], keeping A strictly positive
        return self.hi * (1.0 - rng.random(size))

    def sample_tilted(self, alpha: float, rng: np.random.Generator, size=None):
        # tilted density (alpha+1) a**alpha / hi**(alpha+1) on (0, hi)
        return self.hi * (1.0 - rng.random(size)) ** (1.0 / (alpha + 1.0))

    def psi(self, h: float) -> float:
        return self.hi**h / (h + 1.0)

    def psi_prime(self, h: float) -> float:
        return self.psi(h) * (math.log(self.hi) - 1.0 / (h + 1.0))

    def e_log(self) -> float:
        return math.log(self.hi) - 1.0

    def var_log(self) -> float:
        return 1.0

    nonarithmetic = True

    def label(self) -> str:
        return f"uniform(0, {self.hi:g})"


@dataclass(frozen=True)
class GammaScaledA:
    """A ~ Gamma(shape, scale); psi(h) = scale**h Gamma(shape+h)/Gamma(shape)."""

    shape: float
    scale: float

    def __post_init__(self):
        if self.shape <= 0 or self.scale <= 0:
            raise ValueError("GammaScaledA needs shape > 0 and scale > 0")

    def sample(self, rng: np.random.Generator, size=None):
        return rng.gamma(self.shape, self.scale, size)

    def sample_tilted(self, alpha: float, rng: np.random.Generator, size=None):
        # a**alpha tilt of a Gamma density raises the shape by alpha
        return rng.gamma(self.shape + alpha, self.scale, size)

    def psi(self, h: float) -> float:
        return math.exp(h * math.log(self.scale)
                        + special.gammaln(self.shape + h)
                        - special.gammaln(self.shape))

    def psi_prime(self, h: float) -> float:
        return self.psi(h) * (math.log(self.scale) + special.digamma(self.shape + h))

    def e_log(self) -> float:
        return special.digamma(self.shape) + math.log(self.scale)

    def var_log(self) -> float:
        return float(special.polygamma(1, self.shape))

    nonarithmetic = True

    def label(self) -> str:
        return f"gamma(shape={self.shape:g}, scale={self.scale:g})"


@dataclass(frozen=True)
class ConstA:
    """A identically equal to ``value``.

    Arithmetic log A, so the model fails the nonarithmeticity check; admitted
    only for unit fixtures, never for tail-index analysis.
    """

    value: float

    def __post_init__(self):
        if self.value <= 0:
            raise ValueError("ConstA needs value > 0")

    def sample(self, rng: np.random.Generator, size=None):
        return self.value if size is None else np.full(size, self.value)

    def sample_tilted(self, alpha: float, rng: np.random.Generator, size=None):
        # the tilt of a point mass is the same point mass
        return self.sample(rng, size)

    def psi(self, h: float) -> float:
        return self.value**h

    def psi_prime(self, h: float) -> float:
        return self.value**h * math.log(self.value)

    def e_log(self) -> float:
        return math.log(self.value)

    def var_log(self) -> float:
        return 0.0

    nonarithmetic = False

    def label(self) -> str:
        return f"const({self.value:g})"


# ---------------------------------------------------------------------------
# B-laws (shift)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConstB:
    value: float

    def sample(self, rng: np.random.Generator, size=None):
        return self.value if size is None else np.full(size, self.value)

    def mean(self) -> float:
        return self.value

    def abs_moment(self, p: float) -> float:
        return abs(self.value) ** p

    @property
    def nonnegative(self) -> bool:
        return self.value >= 0

    is_const = True

    def label(self) -> str:
        return f"const({self.value:g})"


@dataclass(frozen=True)
class NormalB:
    mu: float
    sigma2: float

    def sample(self, rng: np.random.Generator, size=None):
        return rng.normal(self.mu, math.sqrt(self.sigma2), size)

    def mean(self) -> float:
        return self.mu

    def abs_moment(self, p: float) -> float:
        sigma = math.sqrt(self.sigma2)
        if self.mu == 0.0:
            return sigma**p * 2 ** (p / 2) * math.gamma((p + 1) / 2) / math.sqrt(math.pi)
        val, _ = integrate.quad(
            lambda t: abs(self.mu + sigma * t) ** p
            * math.exp(-t * t / 2) / math.sqrt(2 * math.pi),
            -np.inf, np.inf)
        return val

    nonnegative = False
    is_const = False

    def label(self) -> str:
        return f"normal(mu={self.mu:g}, sigma2={self.sigma2:g})"


@dataclass(frozen=True)
class ParetoB:
    """P(B > x) = (scale/x)**index for x >= scale; support [scale, inf)."""

    index: float
    scale: float = 1.0

    def __post_init__(self):
        if self.index <= 0 or self.scale <= 0:
            raise ValueError("ParetoB needs index > 0 and scale > 0")

    def sample(self, rng: np.random.Generator, size=None):
        return self.scale * (1.0 - rng.random(size)) ** (-1.0 / self.index)

    def mean(self) -> float:
        if self.index <= 1:
            return math.inf
        return self.index * self.scale / (self.index - 1.0)

    def abs_moment(self, p: float) -> float:
        if p >= self.index:
            return math.inf
        return self.index * self.scale**p / (self.index - p)

    nonnegative = True
    is_const = False

    def label(self) -> str:
        return f"pareto(index={self.index:g}, scale={self.scale:g})"


@dataclass(frozen=True)
class ExponentialB:
    rate: float

    def __post_init__(self):
        if self.rate <= 0:
            raise ValueError("ExponentialB needs rate > 0")

    def sample(self, rng: np.random.Generator, size=None):
        return rng.exponential(1.0 / self.rate, size)

    def mean(self) -> float:
        return 1.0 / self.rate

    def abs_moment(self, p: float) -> float:
        return math.gamma(p + 1.0) / self.rate**p

    nonnegative = True
    is_const = False

    def label(self) -> str:
        return f"exponential(rate={self.rate:g})"


# ---------------------------------------------------------------------------
# i.i.d. step laws for the independent-summand baselines
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ParetoIID:
    """One-sided Pareto steps: P(Y > x) = (scale/x)**alpha, x >= scale."""

    alpha: float
    scale: float = 1.0

    def sample(self, rng: np.random.Generator, size=None):
        return self.scale * (1.0 - rng.random(size)) ** (-1.0 / self.alpha)

    def mean(self) -> float:
        if self.alpha <= 1:
            return math.inf
        return self.alpha * self.scale / (self.alpha - 1.0)

    def abs_tail(self, x: float) -> float:
        """Exact P(|Y| > x)."""
        if x <= self.scale:
            return 1.0
        return (self.scale / x) ** self.alpha

    def upper_tail(self, x: float) -> float:
        return self.abs_tail(x)

    p_balance = 1.0

    def label(self) -> str:
        return f"pareto-iid(alpha={self.alpha:g}, scale={self.scale:g})"


@dataclass(frozen=True)
class SymmetricParetoIID:
    """Symmetrized Pareto steps: |Y| Pareto, independent random sign."""

    alpha: float
    scale: float = 1.0

    def sample(self, rng: np.random.Generator, size=None):
        mag = self.scale * (1.0 - rng.random(size)) ** (-1.0 / self.alpha)
        sign = rng.integers(0, 2, size) * 2 - 1
        return mag * sign

    def mean(self) -> float:
        return 0.0

    def abs_tail(self, x: float) -> float:
        if x <= self.scale:
            return 1.0
        return (self.scale / x) ** self.alpha

    def upper_tail(self, x: float) -> float:
        return 0.5 * self.abs_tail(x)

    p_balance = 0.5

    def label(self) -> str:
        return f"sym-pareto-iid(alpha={self.alpha:g}, scale={self.scale:g})"


A_LAWS = (LognormalA, UniformA, GammaScaledA, ConstA)
B_LAWS = (ConstB, NormalB, ParetoB, ExponentialB)
IID_LAWS = (ParetoIID, SymmetricParetoIID)
