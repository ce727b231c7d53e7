"""Dot-product law for independent uniform unit vectors.

If u1 and u2 are independent and uniform on the unit sphere in N
dimensions, their dot product c lives on [-1, 1] with density
proportional to (1 - c^2)^((N-3)/2). The law is tied to the chord law
through d^2 = 2 - 2c, so its cdf is the mirrored chord cdf at radius 1:
F_C(c) = P(chord >= sqrt(2 - 2c)). The radius is fixed at 1 here; scale
handling belongs to callers.

The sign convention to keep straight: large chords correspond to
negative dot products, so the lower beta branch serves c <= 0 and the
reflected branch c >= 0.
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


@dataclass(frozen=True)
class DotProductDistribution:
    """Law of the dot product of two independent uniform unit vectors."""

    dim: int

    def __post_init__(self) -> None:
        if isinstance(self.dim, bool) or not isinstance(self.dim, (int, np.integer)):
            raise UnsupportedDimensionError(f"dim must be an integer, got {self.dim!r}")
        object.__setattr__(self, "dim", int(self.dim))
        if self.dim < 2:
            raise UnsupportedDimensionError(f"dim must be >= 2, got {self.dim}")

    @property
    def _a(self) -> float:
        return 0.5 * (self.dim - 1)

    @staticmethod
    def _checked(c: float) -> float:
        c = float(c)
        if not math.isfinite(c):
            raise DomainError(f"dot product must be finite, got {c!r}")
        return c

    def cdf(self, c: float) -> float:
        """P(dot product <= c); clamps outside [-1, 1].

        Exact at the three anchor points: 0 at -1, 1/2 at 0, 1 at 1.
        Works through the reflected tail I_{c^2}(1/2, (N-1)/2), which is
        the same law as the half of I_{1-c^2}((N-1)/2, 1/2) on either
        side of zero but keeps c^2 exact where the density peaks.
        """
        c = self._checked(c)
        if c <= -1.0:
            return 0.0
        if c >= 1.0:
            return 1.0
        tail = 0.5 * reg_inc_beta(c * c, 0.5, self._a)
        return 0.5 + tail if c >= 0.0 else 0.5 - tail

    def pdf(self, c: float) -> float:
        """Density at c, symmetric in sign and zero outside the support.

        dim=2 blows up at the endpoints (the arccos density) and raises
        there; dim=3 is flat at 1/2 including the endpoints; dim >= 4
        vanishes at them.
        """
        c = self._checked(c)
        if c < -1.0 or c > 1.0:
            return 0.0
        if c == -1.0 or c == 1.0:
            if self.dim == 2:
                raise SingularityError(f"dim=2 dot-product density is unbounded at c={c!r}")
            return 0.5 if self.dim == 3 else 0.0
        log_f = 0.5 * (self.dim - 3) * (math.log1p(-c) + math.log1p(c)) - log_beta(
            self._a, 0.5
        )
        return math.exp(log_f)

    def even_moment(self, order: int) -> float:
        """E[c^(2*order)] as a beta ratio; order=1 gives exactly 1/N."""
        if isinstance(order, bool) or not isinstance(order, (int, np.integer)):
            raise DomainError(f"moment order must be an integer, got {order!r}")
        order = int(order)
        if order < 1:
            raise DomainError(f"moment order must be >= 1, got {order}")
        return math.exp(
            log_beta(order + 0.5, self._a) - log_beta(0.5, self._a)
        )

    def quantile(self, p: float) -> float:
        """Dot product c with cdf(c) = p; antisymmetric around p = 1/2."""
        p = float(p)
        if not (0.0 <= p <= 1.0):
            raise DomainError(f"quantile probability must lie in [0, 1], got {p!r}")
        if p <= 0.5:
            x = inv_reg_inc_beta(1.0 - 2.0 * p, 0.5, self._a)
            return -math.sqrt(x) + 0.0
        x = inv_reg_inc_beta(2.0 * p - 1.0, 0.5, self._a)
        return math.sqrt(x)

    # -- array companions ----------------------------------------------

    def cdf_array(self, c: np.ndarray) -> np.ndarray:
        arr = np.asarray(c, dtype=float)
        if arr.size and not np.all(np.isfinite(arr)):
            raise DomainError("dot products must be finite")
        out = np.empty_like(arr)
        lo = arr <= -1.0
        hi = arr >= 1.0
        out[lo] = 0.0
        out[hi] = 1.0
        mid = ~(lo | hi)
        cm = arr[mid]
        tail = 0.5 * reg_inc_beta_array(cm * cm, 0.5, self._a)
        out[mid] = np.where(cm >= 0.0, 0.5 + tail, 0.5 - tail)
        return out

    def pdf_array(self, c: np.ndarray) -> np.ndarray:
        arr = np.asarray(c, dtype=float)
        if arr.size and not np.all(np.isfinite(arr)):
            raise DomainError("dot products must be finite")
        out = np.zeros_like(arr)
        edge = (arr == -1.0) | (arr == 1.0)
        if np.any(edge):
            if self.dim == 2:
                raise SingularityError("dim=2 dot-product density is unbounded at c = +-1")
            if self.dim == 3:
                out[edge] = 0.5
        mid = (arr > -1.0) & (arr < 1.0)
        cm = arr[mid]
        out[mid] = np.exp(
            0.5 * (self.dim - 3) * (np.log1p(-cm) + np.log1p(cm))
            - log_beta(self._a, 0.5)
        )
        return out

    def quantile_array(self, p: np.ndarray) -> np.ndarray:
        arr = np.asarray(p, dtype=float)
        if arr.size and (not np.all(np.isfinite(arr)) or arr.min() < 0.0 or arr.max() > 1.0):
            raise DomainError("quantile probabilities must lie in [0, 1]")
        out = np.empty_like(arr)
        low = arr <= 0.5
        x = inv_reg_inc_beta_array(1.0 - 2.0 * arr[low], 0.5, self._a)
        out[low] = -np.sqrt(x) + 0.0
        x = inv_reg_inc_beta_array(2.0 * arr[~low] - 1.0, 0.5, self._a)
        out[~low] = np.sqrt(x)
        return out
