"""Dirichlet spectra of unit-volume boxes, computed by exact lattice counting.

The eigenvalues of a box with sides ``(a1, a2, a3)`` are
``pi^2 * (i1^2/a1^2 + i2^2/a2^2 + i3^2/a3^2)`` over positive integer triples,
so every spectral query here reduces to counting lattice points inside an
ellipsoid octant.  Membership is decided by one canonical floating-point
predicate (inclusive at the boundary, relative tolerance ``COUNT_EPS``) that
all counters in the package share; the unit cube takes a pure integer path
that is exactly equivalent to that predicate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

PI = math.pi
PI_SQUARED = math.pi**2

# A lattice triple is counted as inside E(lambda) when its eigenvalue is
# <= lambda * (1 + COUNT_EPS).  Inclusive counting avoids undercounting at
# exact eigenvalues under round-off; the boundary set is closed.
COUNT_EPS = 1e-10

# Eigenvalues whose relative gap is below this merge into one spectral point.
DEGENERACY_RTOL = 1e-9

# Construction rejects side triples whose product strays further than this
# from unit volume.
VOLUME_TOL = 1e-12

# Default ceiling on the number of enumerated candidate eigenvalues.
DEFAULT_CANDIDATE_CAP = 50_000_000

# Below this slice width the scalar inner loop beats numpy dispatch.
_VECTOR_MIN = 24


class ResourceLimitError(RuntimeError):
    """An eigenvalue query would enumerate more candidates than allowed."""


@dataclass(frozen=True)
class Cuboid:
    """Unit-volume box with sides sorted ascending.

    Use :meth:`from_sides` to build one from two free side lengths; the third
    side comes from the volume constraint and the triple is then sorted.
    Direct construction validates the invariants and rejects bad triples.
    """

    a1: float
    a2: float
    a3: float

    def __post_init__(self) -> None:
        if not (self.a1 > 0.0 and math.isfinite(self.a3)):
            raise ValueError(f"sides must be positive finite, got {self}")
        if not (self.a1 <= self.a2 <= self.a3):
            raise ValueError(f"sides must be sorted ascending, got {self}")
        if abs(self.a1 * self.a2 * self.a3 - 1.0) > VOLUME_TOL:
            raise ValueError(f"volume must be 1, got sides {self.sides}")

    @classmethod
    def from_sides(cls, a1: float, a2: float) -> "Cuboid":
        """Box with sides ``a1``, ``a2`` and ``1/(a1*a2)``, sorted."""
        if not (a1 > 0.0 and a2 > 0.0 and math.isfinite(a1) and math.isfinite(a2)):
            raise ValueError(f"sides must be positive finite, got {a1}, {a2}")
        s1, s2, s3 = sorted((a1, a2, 1.0 / (a1 * a2)))
        return cls(s1, s2, s3)

    @property
    def sides(self) -> tuple[float, float, float]:
        return (self.a1, self.a2, self.a3)

    @cached_property
    def inv_sq(self) -> tuple[float, float, float]:
        # Hot loops consume inverse squared sides (one multiply-add per axis).
        return (1.0 / self.a1**2, 1.0 / self.a2**2, 1.0 / self.a3**2)

    @property
    def is_cube(self) -> bool:
        return self.a1 == 1.0 and self.a2 == 1.0 and self.a3 == 1.0


UNIT_CUBE = Cuboid(1.0, 1.0, 1.0)


@dataclass(frozen=True)
class SpectralPoint:
    """One eigenvalue with every lattice triple attaining it."""

    value: float
    indices: tuple[tuple[int, int, int], ...]

    @property
    def multiplicity(self) -> int:
        return len(self.indices)


@dataclass(frozen=True)
class EllipsoidSpec:
    """The ellipsoid whose positive-octant lattice points are the spectrum up to ``lam``."""

    lam: float
    cuboid: Cuboid

    @property
    def semi_axes(self) -> tuple[float, float, float]:
        r = math.sqrt(self.lam) / PI
        a1, a2, a3 = self.cuboid.sides
        return (a1 * r, a2 * r, a3 * r)

    @property
    def volume(self) -> float:
        return 4.0 / (3.0 * PI_SQUARED) * self.lam**1.5


def eigenvalue_of_index(cuboid: Cuboid, i1: int, i2: int, i3: int) -> float:
    """Eigenvalue of the mode with lattice index ``(i1, i2, i3)``."""
    if i1 < 1 or i2 < 1 or i3 < 1:
        raise ValueError(f"indices must be >= 1, got ({i1}, {i2}, {i3})")
    q1, q2, q3 = cuboid.inv_sq
    return PI_SQUARED * ((i1 * i1) * q1 + (i2 * i2) * q2 + (i3 * i3) * q3)


def cube_upper_bound(k: int) -> float:
    """Upper bound 3*pi^2*k^2 for the k-th eigenvalue of the unit cube."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return 3.0 * PI_SQUARED * k * k


# ---------------------------------------------------------------------------
# Canonical membership predicate and its counting kernels.
#
# A point contributes the term (n*n)*q per axis; terms add left to right and
# the sum is scaled by pi^2.  The scalar and vector kernels below perform the
# identical float64 operations, so they agree bit for bit, and a first guess
# from sqrt is always corrected against the predicate itself.
# ---------------------------------------------------------------------------


def _nmax_scalar(c: float, q: float, lam_eff: float) -> int:
    """Largest n >= 0 with pi^2*(c + n^2*q) <= lam_eff."""
    n = int(math.sqrt(max((lam_eff / PI_SQUARED - c) / q, 0.0)))
    while PI_SQUARED * (c + float((n + 1) * (n + 1)) * q) <= lam_eff:
        n += 1
    while n > 0 and PI_SQUARED * (c + float(n * n) * q) > lam_eff:
        n -= 1
    return n


def _nmax_vec(c: np.ndarray, q: float, lam_eff: float) -> np.ndarray:
    g = np.sqrt(np.maximum((lam_eff / PI_SQUARED - c) / q, 0.0)).astype(np.int64)
    while True:
        t = (g + 1).astype(np.float64)
        ok = PI_SQUARED * (c + (t * t) * q) <= lam_eff
        if not ok.any():
            break
        g += ok.astype(np.int64)
    while True:
        t = g.astype(np.float64)
        bad = (g > 0) & (PI_SQUARED * (c + (t * t) * q) > lam_eff)
        if not bad.any():
            break
        g -= bad.astype(np.int64)
    return g


def _slice_third_counts(c1: float, q2: float, q3: float, lam_eff: float) -> np.ndarray:
    """For i2 = 1, 2, ... the count of i3 >= 1 with (i1, i2, i3) inside.

    The returned array covers the full feasible i2 range (its last entry is
    zero or the range was empty).
    """
    rem = lam_eff / PI_SQUARED - c1 - q3
    width = int(math.sqrt(max(rem, 0.0) / q2)) + 2
    if width <= _VECTOR_MIN:
        counts = []
        i2 = 1
        while True:
            n = _nmax_scalar(c1 + float(i2 * i2) * q2, q3, lam_eff)
            if n == 0:
                break
            counts.append(n)
            i2 += 1
        return np.asarray(counts, dtype=np.int64)
    while True:
        i2 = np.arange(1, width + 1, dtype=np.int64)
        t2 = i2.astype(np.float64)
        c12 = c1 + (t2 * t2) * q2
        g = _nmax_vec(c12, q3, lam_eff)
        if g[-1] == 0:
            return g
        width *= 2


def _octant_count(inv: tuple[float, float, float], lam_eff: float) -> int:
    q1, q2, q3 = inv
    total = 0
    i1 = 1
    while True:
        g = _slice_third_counts(float(i1 * i1) * q1, q2, q3, lam_eff)
        n = int(g.sum())
        if n == 0:
            break
        total += n
        i1 += 1
    return total


def _octant_values(inv: tuple[float, float, float], lam_eff: float) -> np.ndarray:
    """Eigenvalues of every octant point inside the ellipsoid, unsorted."""
    q1, q2, q3 = inv
    chunks = []
    i1 = 1
    while True:
        c1 = float(i1 * i1) * q1
        g = _slice_third_counts(c1, q2, q3, lam_eff)
        total = int(g.sum())
        if total == 0:
            break
        nz = g > 0
        reps = g[nz]
        i2 = np.nonzero(nz)[0] + 1
        t2 = i2.astype(np.float64)
        c12 = np.repeat(c1 + (t2 * t2) * q2, reps)
        starts = np.concatenate(([0], np.cumsum(reps)[:-1]))
        i3 = (np.arange(total, dtype=np.int64) - np.repeat(starts, reps) + 1).astype(
            np.float64
        )
        chunks.append(PI_SQUARED * (c12 + (i3 * i3) * q3))
        i1 += 1
    if not chunks:
        return np.empty(0, dtype=np.float64)
    return np.concatenate(chunks)


# Integer path for the unit cube: the predicate reduces exactly to
# i1^2 + i2^2 + i3^2 <= m with m below.


def _cube_cutoff(lam_eff: float) -> int:
    m = max(int(lam_eff / PI_SQUARED), 0)
    while PI_SQUARED * float(m + 1) <= lam_eff:
        m += 1
    while m > 0 and PI_SQUARED * float(m) > lam_eff:
        m -= 1
    return m


def _cube_octant_count(m: int) -> int:
    if m < 3:
        return 0
    total = 0
    for i1 in range(1, math.isqrt(m - 2) + 1):
        r1 = m - i1 * i1
        for i2 in range(1, math.isqrt(r1 - 1) + 1):
            total += math.isqrt(r1 - i2 * i2)
    return total


def _cube_octant_hist(m: int) -> np.ndarray:
    """hist[s] = number of positive triples with i1^2+i2^2+i3^2 == s, s <= m."""
    hist = np.zeros(m + 1, dtype=np.int64)
    if m < 3:
        return hist
    for i1 in range(1, math.isqrt(m - 2) + 1):
        r1 = m - i1 * i1
        for i2 in range(1, math.isqrt(r1 - 1) + 1):
            jmax = math.isqrt(r1 - i2 * i2)
            if jmax:
                j = np.arange(1, jmax + 1, dtype=np.int64)
                np.add.at(hist, i1 * i1 + i2 * i2 + j * j, 1)
    return hist


def count_upto(cuboid: Cuboid, lam: float) -> int:
    """Number of eigenvalues (with multiplicity) at most ``lam``.

    Equals the number of positive lattice triples inside the closed ellipsoid
    E(lam); counting is inclusive at the boundary within ``COUNT_EPS``.
    """
    if lam < 0.0 or not math.isfinite(lam):
        raise ValueError(f"lambda must be finite and >= 0, got {lam}")
    lam_eff = lam * (1.0 + COUNT_EPS)
    if cuboid.is_cube:
        return _cube_octant_count(_cube_cutoff(lam_eff))
    return _octant_count(cuboid.inv_sq, lam_eff)


def _cluster_indices(cuboid: Cuboid, value: float) -> tuple[tuple[int, int, int], ...]:
    """All positive triples whose eigenvalue is within DEGENERACY_RTOL of value."""
    lo = value * (1.0 - DEGENERACY_RTOL)
    hi = value * (1.0 + DEGENERACY_RTOL)
    q1, q2, q3 = cuboid.inv_sq
    found = []
    i1 = 1
    while True:
        c1 = float(i1 * i1) * q1
        if PI_SQUARED * (c1 + q2 + q3) > hi:
            break
        i2 = 1
        while True:
            c12 = c1 + float(i2 * i2) * q2
            if PI_SQUARED * (c12 + q3) > hi:
                break
            top = _nmax_scalar(c12, q3, hi)
            for i3 in range(1, top + 1):
                eig = PI_SQUARED * (c12 + float(i3 * i3) * q3)
                if eig >= lo:
                    found.append((i1, i2, i3))
            i2 += 1
        i1 += 1
    return tuple(sorted(found))


def _search_ceiling(cuboid: Cuboid, k: int) -> float:
    lam = min(cube_upper_bound(k), 4.0 * (6.0 * PI_SQUARED * k) ** (2.0 / 3.0))
    while count_upto(cuboid, lam) < k:
        lam *= 2.0
    return lam


def kth_eigenvalue(
    cuboid: Cuboid, k: int, candidate_cap: int = DEFAULT_CANDIDATE_CAP
) -> SpectralPoint:
    """The k-th eigenvalue (1-based, with multiplicity) of ``cuboid``.

    Enumerates every candidate eigenvalue below a doubling search ceiling and
    selects the k-th by partial sort.  Raises :class:`ResourceLimitError` when
    the enumeration would exceed ``candidate_cap`` candidates, which guards
    against pathologically thin boxes.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    lam = _search_ceiling(cuboid, k)
    n_candidates = count_upto(cuboid, lam)
    if n_candidates > candidate_cap:
        raise ResourceLimitError(
            f"{n_candidates} candidates exceed cap {candidate_cap} "
            f"for k={k} on {cuboid.sides}"
        )
    lam_eff = lam * (1.0 + COUNT_EPS)
    if cuboid.is_cube:
        hist = _cube_octant_hist(_cube_cutoff(lam_eff))
        cum = np.cumsum(hist)
        s = int(np.searchsorted(cum, k))
        value = PI_SQUARED * float(s)
    else:
        values = _octant_values(cuboid.inv_sq, lam_eff)
        value = float(np.partition(values, k - 1)[k - 1])
    return SpectralPoint(value=value, indices=_cluster_indices(cuboid, value))


def spectrum_points(
    cuboid: Cuboid, k_max: int, candidate_cap: int = DEFAULT_CANDIDATE_CAP
) -> list[SpectralPoint]:
    """Distinct spectral points covering eigenvalues 1..k_max.

    Points are sorted ascending; their multiplicities sum to at least
    ``k_max``.  Near-degenerate values merge per ``DEGENERACY_RTOL``.
    """
    if k_max < 1:
        raise ValueError(f"k_max must be >= 1, got {k_max}")
    lam = _search_ceiling(cuboid, k_max)
    n_candidates = count_upto(cuboid, lam)
    if n_candidates > candidate_cap:
        raise ResourceLimitError(
            f"{n_candidates} candidates exceed cap {candidate_cap}"
        )
    lam_eff = lam * (1.0 + COUNT_EPS)
    if cuboid.is_cube:
        hist = _cube_octant_hist(_cube_cutoff(lam_eff))
        cum = np.cumsum(hist)
        points = []
        covered = 0
        for s in np.nonzero(hist)[0]:
            if covered >= k_max:
                break
            value = PI_SQUARED * float(s)
            points.append(
                SpectralPoint(value=value, indices=_cluster_indices(cuboid, value))
            )
            covered = int(cum[s])
        return points
    values = np.sort(_octant_values(cuboid.inv_sq, lam_eff))
    points = []
    covered = 0
    while covered < k_max:
        value = float(values[covered])
        indices = _cluster_indices(cuboid, value)
        points.append(SpectralPoint(value=value, indices=indices))
        # advance past every candidate inside this cluster's window
        covered = int(
            np.searchsorted(values, value * (1.0 + DEGENERACY_RTOL), side="right")
        )
    return points


def cube_spectrum_table(k_max: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Per-k data for the unit cube: (nu_k/pi^2, multiplicity, N(nu_k)).

    Arrays are 1-based on k (index 0 unused) and run up to ``k_max``.  All
    three are exact integers.
    """
    if k_max < 1:
        raise ValueError(f"k_max must be >= 1, got {k_max}")
    m = 8
    while True:
        hist = _cube_octant_hist(m)
        cum = np.cumsum(hist)
        if cum[-1] >= k_max:
            break
        m *= 2
    ks = np.arange(1, k_max + 1)
    s = np.searchsorted(cum, ks)
    table_m = np.concatenate(([0], s))
    table_theta = np.concatenate(([0], hist[s]))
    table_count = np.concatenate(([0], cum[s]))
    return table_m, table_theta, table_count
