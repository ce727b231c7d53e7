"""Chord-length law of a hypersphere in N dimensions.

For two points drawn independently and uniformly from the surface of a
sphere of radius R in N-dimensional space, the distance d between them
follows a fixed law supported on [0, 2R]. Everything here reduces to the
regularized incomplete beta function with shape pair ((N-1)/2, 1/2). The
reduction runs through the scaled chord t = d/R, the cosine-like variable
u = 1 - t^2/2 (the cosine of the colatitude subtended by the chord) and
the beta argument x = 1 - u^2. Working through u rather than expanding
d^2/R^2 - d^4/4R^4 keeps the median chord sqrt(2)R landing on x = 1
exactly and avoids cancellation in the upper tail.

Array-valued companions (`cdf_array` and friends) mirror the scalar
operations for bulk evaluation; results agree with the scalar path to a
few ulp.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, SingularityError, UnsupportedDimensionError
from .specfun import (
    inv_reg_inc_beta,
    inv_reg_inc_beta_array,
    log_beta,
    reg_inc_beta,
    reg_inc_beta_array,
)

_LN2 = 0.6931471805599453


@dataclass(frozen=True)
class ChordDistribution:
    """Distribution of the chord length between two uniform surface points.

    dim is the ambient coordinate count (a circle is dim=2), radius the
    sphere radius in whatever length unit the caller uses. Instances are
    immutable and all methods are pure, so sharing across threads is safe.
    """

    dim: int
    radius: float = 1.0

    def __post_init__(self) -> None:
        if isinstance(self.dim, bool) or not isinstance(self.dim, (int, np.integer)):
            raise UnsupportedDimensionError(
                f"dim must be an integer, got {self.dim!r}"
            )
        object.__setattr__(self, "dim", int(self.dim))
        if self.dim < 2:
            raise UnsupportedDimensionError(f"dim must be >= 2, got {self.dim}")
        try:
            radius = float(self.radius)
        except (TypeError, ValueError) as exc:
            raise DomainError(f"radius must be a real number, got {self.radius!r}") from exc
        if not math.isfinite(radius) or radius <= 0.0:
            raise DomainError(f"radius must be positive and finite, got {radius!r}")
        object.__setattr__(self, "radius", radius)

    @property
    def _a(self) -> float:
        # first beta shape parameter; the second is always 1/2
        return 0.5 * (self.dim - 1)

    @staticmethod
    def _beta_arg(t: float) -> float:
        # x = t^2 (1 - t^2/4), switching forms so neither tail cancels:
        # below t = 1/2 the product form is exact to a few ulp, above it
        # 1 - u^2 keeps the upper tail sharp and rounds to 1 at the median
        if t <= 0.5:
            return t * t * (1.0 - 0.25 * t * t)
        u = 1.0 - 0.5 * t * t
        return 1.0 - u * u

    def _scaled(self, d: float) -> float:
        d = float(d)
        if not math.isfinite(d):
            raise DomainError(f"chord length must be finite, got {d!r}")
        return d / self.radius

    def _scaled_in_support(self, d: float) -> float:
        t = self._scaled(d)
        if t < 0.0 or t > 2.0:
            raise DomainError(
                f"chord length {d!r} outside the support [0, {2.0 * self.radius}]"
            )
        return t

    # -- cap geometry -------------------------------------------------

    def cap_radius(self, d: float) -> float:
        """Radius of the hyperspherical cap cut off by a chord of length d."""
        t = self._scaled_in_support(d)
        return self.radius * math.sqrt(self._beta_arg(t))

    def cap_height(self, d: float) -> float:
        """Height of that cap, measured along the axis: d^2 / 2R."""
        t = self._scaled_in_support(d)
        return self.radius * (0.5 * t * t)

    def colatitude(self, d: float) -> float:
        """Polar angle subtended by a chord of length d, in [0, pi]."""
        t = self._scaled_in_support(d)
        return math.acos(1.0 - 0.5 * t * t)

    def cap_area_fraction(self, phi: float) -> float:
        """Fraction of the sphere surface inside the cap of colatitude phi.

        For phi <= pi/2 this is half the regularized incomplete beta of
        sin^2(phi); larger caps are handled through the complement, so the
        result is exactly 1/2 at the hemisphere and 1 at the full sphere.
        """
        phi = float(phi)
        if not math.isfinite(phi) or phi < 0.0 or phi > math.pi:
            raise DomainError(f"colatitude must lie in [0, pi], got {phi!r}")
        if phi <= 0.5 * math.pi:
            s = math.sin(phi)
            return 0.5 * reg_inc_beta(s * s, self._a, 0.5)
        s = math.sin(math.pi - phi)
        return 1.0 - 0.5 * reg_inc_beta(s * s, self._a, 0.5)

    # -- distribution functions ---------------------------------------

    def cdf(self, d: float) -> float:
        """P(chord <= d). Clamps below 0 and above 2R."""
        t = self._scaled(d)
        if t <= 0.0:
            return 0.0
        if t >= 2.0:
            return 1.0
        u = 1.0 - 0.5 * t * t
        half = 0.5 * reg_inc_beta(self._beta_arg(t), self._a, 0.5)
        # u >= 0 is the short-chord side of the median; ties take it too
        return half if u >= 0.0 else 1.0 - half

    def pdf(self, d: float) -> float:
        """Density of the chord length at d; zero outside the open support.

        Evaluated in log space so the t^(N-2) and (1 - t^2/4)^((N-3)/2)
        factors never overflow or underflow on the way to an O(1) result.
        At the exact support endpoints the dim=2 density is unbounded and
        raises instead of returning infinity; higher dimensions take their
        finite limits there.
        """
        t = self._scaled(d)
        if t < 0.0 or t > 2.0:
            return 0.0
        if t == 0.0 or t == 2.0:
            if self.dim == 2:
                raise SingularityError(
                    f"dim=2 chord density is unbounded at d={d!r}"
                )
            if self.dim == 3:
                return 0.0 if t == 0.0 else 1.0 / self.radius
            return 0.0
        log_f = (
            (self.dim - 2) * math.log(t)
            + 0.5 * (self.dim - 3) * (math.log1p(-0.5 * t) + math.log1p(0.5 * t))
            - math.log(self.radius)
            - log_beta(self._a, 0.5)
        )
        return math.exp(log_f)

    def quantile(self, p: float) -> float:
        """Chord length d with cdf(d) = p.

        Inverts the incomplete beta on the branch containing p and maps
        back through d^2 = 2R^2(1 -+ sqrt(1-x)); the lower branch uses the
        rationalized form 2x/(1 + sqrt(1-x)) to stay accurate near p = 0.
        The median p = 1/2 comes out as sqrt(2)R exactly.
        """
        p = float(p)
        if not (0.0 <= p <= 1.0):
            raise DomainError(f"quantile probability must lie in [0, 1], got {p!r}")
        if p <= 0.5:
            x = inv_reg_inc_beta(2.0 * p, self._a, 0.5)
            return self.radius * math.sqrt(2.0 * x / (1.0 + math.sqrt(1.0 - x)))
        x = inv_reg_inc_beta(2.0 * (1.0 - p), self._a, 0.5)
        return self.radius * math.sqrt(2.0 * (1.0 + math.sqrt(1.0 - x)))

    # -- moments -------------------------------------------------------

    def moment(self, k: int) -> float:
        """k-th raw moment of the chord length, k a positive integer.

        The k = 2 case collapses to 2R^2 for every dimension (a gamma
        duplication identity) and is returned in that exact form; other
        orders evaluate the closed-form beta ratio in log space.
        """
        if isinstance(k, bool) or not isinstance(k, (int, np.integer)):
            raise DomainError(f"moment order must be an integer, got {k!r}")
        k = int(k)
        if k < 1:
            raise DomainError(f"moment order must be >= 1, got {k}")
        if k == 2:
            return 2.0 * self.radius * self.radius
        n = self.dim
        log_m = (
            (k + n - 2) * _LN2
            + log_beta(0.5 * (k + n - 1), 0.5 * (n - 1))
            - log_beta(self._a, 0.5)
            + k * math.log(self.radius)
        )
        return math.exp(log_m)

    def mean(self) -> float:
        """Expected chord length, always below sqrt(2)R and tending to it."""
        return self._unit_mean() * self.radius

    def variance(self) -> float:
        """Chord-length variance, (2 - (mean/R)^2) R^2."""
        mu = self._unit_mean()
        return (2.0 - mu * mu) * self.radius * self.radius

    def _unit_mean(self) -> float:
        n = self.dim
        return math.exp(
            log_beta(0.5 * n, 0.5 * n) - log_beta(n - 0.5, 0.5) + (n - 1) * _LN2
        )

    def bertrand_probability(self) -> float:
        """P(chord <= R): the Bertrand-style ratio, 1/3 on the circle."""
        return 0.5 * reg_inc_beta(0.75, self._a, 0.5)

    # -- closed forms for low dimensions -------------------------------

    def closed_form_cdf(self, d: float) -> float:
        """Dedicated elementary cdf for dim 2..5, an oracle for cdf().

        dim 2 is the arc-fraction arccos(u)/pi, dim 3 the parabola t^2/4,
        dim 5 a polynomial in t^2. The dim 4 form integrates the density
        directly: arccos(u)/pi - u sqrt(1-u^2)/pi.
        """
        if self.dim not in (2, 3, 4, 5):
            raise UnsupportedDimensionError(
                f"closed forms cover dim 2..5 only, got {self.dim}"
            )
        t = self._scaled(d)
        if t <= 0.0:
            return 0.0
        if t >= 2.0:
            return 1.0
        u = 1.0 - 0.5 * t * t
        if self.dim == 2:
            return math.acos(u) / math.pi
        if self.dim == 3:
            return 0.25 * t * t
        if self.dim == 4:
            return (math.acos(u) - u * math.sqrt(self._beta_arg(t))) / math.pi
        t2 = t * t
        return (6.0 - t2) * t2 * t2 / 32.0

    # -- array companions ----------------------------------------------

    def cdf_array(self, d: np.ndarray) -> np.ndarray:
        """Vectorized cdf; same clamping as the scalar version."""
        t = self._scaled_array(d)
        out = np.empty_like(t)
        lo = t <= 0.0
        hi = t >= 2.0
        out[lo] = 0.0
        out[hi] = 1.0
        mid = ~(lo | hi)
        tm = t[mid]
        u = 1.0 - 0.5 * tm * tm
        x = np.where(tm <= 0.5, tm * tm * (1.0 - 0.25 * tm * tm), 1.0 - u * u)
        half = 0.5 * reg_inc_beta_array(x, self._a, 0.5)
        out[mid] = np.where(u >= 0.0, half, 1.0 - half)
        return out

    def pdf_array(self, d: np.ndarray) -> np.ndarray:
        """Vectorized pdf with the same endpoint policy as pdf()."""
        t = self._scaled_array(d)
        out = np.zeros_like(t)
        edge = (t == 0.0) | (t == 2.0)
        if np.any(edge):
            if self.dim == 2:
                raise SingularityError("dim=2 chord density is unbounded at the support endpoints")
            if self.dim == 3:
                out[t == 2.0] = 1.0 / self.radius
        mid = (t > 0.0) & (t < 2.0)
        tm = t[mid]
        log_f = (
            (self.dim - 2) * np.log(tm)
            + 0.5 * (self.dim - 3) * (np.log1p(-0.5 * tm) + np.log1p(0.5 * tm))
            - math.log(self.radius)
            - log_beta(self._a, 0.5)
        )
        out[mid] = np.exp(log_f)
        return out

    def quantile_array(self, p: np.ndarray) -> np.ndarray:
        """Vectorized quantile."""
        arr = np.asarray(p, dtype=float)
        if arr.size and (not np.all(np.isfinite(arr)) or arr.min() < 0.0 or arr.max() > 1.0):
            raise DomainError("quantile probabilities must lie in [0, 1]")
        out = np.empty_like(arr)
        low = arr <= 0.5
        x = inv_reg_inc_beta_array(2.0 * arr[low], self._a, 0.5)
        out[low] = self.radius * np.sqrt(2.0 * x / (1.0 + np.sqrt(1.0 - x)))
        x = inv_reg_inc_beta_array(2.0 * (1.0 - arr[~low]), self._a, 0.5)
        out[~low] = self.radius * np.sqrt(2.0 * (1.0 + np.sqrt(1.0 - x)))
        return out

    def _scaled_array(self, d: np.ndarray) -> np.ndarray:
        arr = np.asarray(d, dtype=float)
        if arr.size and not np.all(np.isfinite(arr)):
            raise DomainError("chord lengths must be finite")
        return arr / self.radius
