"""Seeded sampling of uniform sphere points, chord lengths, and dot products.

Points are vectors of independent standard normal deviates scaled to the
requested radius, which is uniform on the sphere surface in any dimension.
All randomness flows from numpy's PCG-64 generator (`numpy.random.default_rng`)
seeded with the caller's 64-bit integer, and a fixed spec draws the stream
in a fixed order, so every sample sequence is bitwise reproducible across
runs and chunk boundaries.

Dot products are derived from the same normalized point pairs as the
corresponding chord sample via c = 1 - d^2/2, so for radius 1 the identity
d*d + 2*c == 2.0 holds exactly, sample by sample.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, UnsupportedDimensionError

# keep per-chunk normal draws around 32 MiB regardless of dimension
_CHUNK_ELEMENTS = 1 << 22


class SampleMethod(enum.Enum):
    """How chord lengths are generated."""

    PAIRWISE_POINTS = "pairwise-points"
    INVERSE_CDF = "inverse-cdf"


@dataclass(frozen=True)
class SampleSpec:
    """Fully determined sampling request; equal specs give equal samples."""

    dim: int
    radius: float = 1.0
    count: int = 1
    seed: int = 0
    method: SampleMethod = SampleMethod.PAIRWISE_POINTS

    def __post_init__(self) -> None:
        if isinstance(self.dim, bool) or not isinstance(self.dim, (int, np.integer)):
            raise UnsupportedDimensionError(f"dim must be an integer, got {self.dim!r}")
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
        if isinstance(self.count, bool) or not isinstance(self.count, (int, np.integer)):
            raise DomainError(f"count must be an integer, got {self.count!r}")
        object.__setattr__(self, "count", int(self.count))
        if self.count < 1:
            raise DomainError(f"count must be >= 1, got {self.count}")
        if isinstance(self.seed, bool) or not isinstance(self.seed, (int, np.integer)):
            raise DomainError(f"seed must be an integer, got {self.seed!r}")
        object.__setattr__(self, "seed", int(self.seed))
        if not (0 <= self.seed < 2**64):
            raise DomainError(f"seed must fit in 64 unsigned bits, got {self.seed}")
        if isinstance(self.method, str):
            try:
                object.__setattr__(self, "method", SampleMethod(self.method))
            except ValueError as exc:
                names = ", ".join(m.value for m in SampleMethod)
                raise DomainError(
                    f"unknown method {self.method!r}; expected one of: {names}"
                ) from exc
        elif not isinstance(self.method, SampleMethod):
            raise DomainError(f"method must be a SampleMethod, got {self.method!r}")


def sample_sphere_point(dim: int, radius: float, rng: np.random.Generator) -> np.ndarray:
    """One point uniform on the sphere surface, as a length-dim array.

    The caller owns the generator; successive calls walk its stream.
    """
    if isinstance(dim, bool) or not isinstance(dim, (int, np.integer)) or dim < 2:
        raise UnsupportedDimensionError(f"dim must be an integer >= 2, got {dim!r}")
    radius = float(radius)
    if not math.isfinite(radius) or radius <= 0.0:
        raise DomainError(f"radius must be positive and finite, got {radius!r}")
    if not isinstance(rng, np.random.Generator):
        raise DomainError(f"rng must be a numpy Generator, got {type(rng).__name__}")
    while True:
        vec = rng.standard_normal(int(dim))
        norm = math.sqrt(float(vec @ vec))
        if norm > 0.0:  # a zero draw is all-but-impossible but not impossible
            return vec * (radius / norm)


def _pairwise_chords(spec: SampleSpec) -> np.ndarray:
    rng = np.random.default_rng(spec.seed)
    out = np.empty(spec.count)
    rows_per_chunk = max(1, _CHUNK_ELEMENTS // (2 * spec.dim))
    done = 0
    while done < spec.count:
        rows = min(rows_per_chunk, spec.count - done)
        pts = rng.standard_normal((rows, 2, spec.dim))
        norms = np.linalg.norm(pts, axis=2, keepdims=True)
        while True:
            bad = norms == 0.0
            if not np.any(bad):
                break
            redraw = rng.standard_normal((int(bad.sum()), spec.dim))
            pts[bad[:, :, 0]] = redraw
            norms = np.linalg.norm(pts, axis=2, keepdims=True)
        pts *= spec.radius / norms
        d = np.linalg.norm(pts[:, 0, :] - pts[:, 1, :], axis=1)
        out[done : done + rows] = np.minimum(d, 2.0 * spec.radius)
        done += rows
    return out


def sample_chords(spec: SampleSpec) -> np.ndarray:
    """Chord-length sample of size spec.count, drawn per spec.method.

    pairwise-points measures distances between independent uniform point
    pairs; inverse-cdf pushes uniform deviates through the analytic
    quantile. The two agree in law, and a fixed spec pins the output
    bitwise either way.
    """
    if spec.method is SampleMethod.PAIRWISE_POINTS:
        return _pairwise_chords(spec)
    from .chord import ChordDistribution

    rng = np.random.default_rng(spec.seed)
    dist = ChordDistribution(spec.dim, spec.radius)
    return dist.quantile_array(rng.random(spec.count))


def sample_dot_products(dim: int, count: int, seed: int) -> np.ndarray:
    """Dot products of independent uniform unit-vector pairs.

    Reuses the pairwise chord stream at radius 1 with the same seed, so
    each value c pairs with the chord d of the same index through
    c = 1 - d^2/2 (exactly, in that rounding order).
    """
    d = sample_chords(SampleSpec(dim=dim, radius=1.0, count=count, seed=seed))
    return 1.0 - 0.5 * (d * d)
