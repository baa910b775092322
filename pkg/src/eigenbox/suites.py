"""Batch verification suites: seeded sampling of the named inequalities and
exact identities, producing :class:`~eigenbox.bounds.BoundReport` rows.

These back the ``verify`` CLI subcommand and the acceptance tests.
"""

from __future__ import annotations

import math
import random
from typing import Iterable

from . import lattice
from .bounds import (
    BoundQuery,
    BoundReport,
    a1_lower_bound,
    cube_eigenvalue_bound,
    lemma31_rhs,
    lemma32_rhs,
    lemma41_rhs,
    lemma_sum,
    polya_lower_bound,
)
from .spectrum import (
    PI_SQUARED,
    Cuboid,
    count_upto,
    cube_spectrum_table,
    kth_eigenvalue,
)

SUITE_NAMES = (
    "lemma31",
    "lemma32",
    "lemma41",
    "identity",
    "cube-chain",
    "polya",
)

OMEGA_3 = 4.0 * math.pi / 3.0


def sample_cuboid(rng: random.Random) -> Cuboid:
    """A box drawn uniformly from the optimiser's search domain."""
    a1 = rng.uniform(a1_lower_bound(), 1.0)
    a2 = rng.uniform(a1, math.sqrt(1.0 / a1))
    return Cuboid.from_sides(a1, a2)


def _sample_query(rng: random.Random, n_choices: Iterable[int]) -> BoundQuery:
    y = rng.uniform(0.0, 1.0e6)
    a = 10.0 ** rng.uniform(-2.0, 2.0)
    n = rng.choice(list(n_choices))
    return BoundQuery(y=y, a=a, n=n)


def lemma31_suite(samples: int, seed: int = 0) -> list[BoundReport]:
    rng = random.Random(seed)
    reports = []
    for _ in range(samples):
        q = _sample_query(rng, (1, 2))
        reports.append(
            BoundReport(
                "lemma31",
                {"y": q.y, "a": q.a, "n": q.n},
                lemma_sum(q),
                lemma31_rhs(q),
            )
        )
    return reports


def lemma32_suite(samples: int, seed: int = 0) -> list[BoundReport]:
    rng = random.Random(seed)
    reports = []
    for _ in range(samples):
        q = _sample_query(rng, range(1, 7))
        reports.append(
            BoundReport(
                "lemma32",
                {"y": q.y, "a": q.a, "n": q.n},
                lemma_sum(q),
                lemma32_rhs(q),
            )
        )
    return reports


def lemma41_suite(
    n_cuboids: int, seed: int = 0, lam_per_cuboid: int = 10, lam_max: float = 1.0e4
) -> list[BoundReport]:
    rng = random.Random(seed)
    reports = []
    for _ in range(n_cuboids):
        c = sample_cuboid(rng)
        for _ in range(lam_per_cuboid):
            lam = rng.uniform(0.0, lam_max)
            reports.append(
                BoundReport(
                    "lemma41",
                    {"a1": c.a1, "a2": c.a2, "a3": c.a3, "lam": lam},
                    float(count_upto(c, lam)),
                    lemma41_rhs(c, lam),
                )
            )
    return reports


def identity_suite(
    samples: int, seed: int = 0, lam_max: float = 1.0e4
) -> list[BoundReport]:
    """Exact symmetry decomposition T = 8N + 4*sum T+ + 2*sum floor + 1.

    lhs is T from the full-lattice counter, rhs the reassembled right side;
    any nonzero residual is a bug, so expected slack is exactly 0.
    """
    rng = random.Random(seed)
    reports = []
    for _ in range(samples):
        c = sample_cuboid(rng)
        lam = rng.uniform(0.0, lam_max)
        b = lattice.count_bundle(c, lam)
        rhs = float(b.t - b.octant_identity_residual())
        reports.append(
            BoundReport(
                "identity",
                {"a1": c.a1, "a2": c.a2, "a3": c.a3, "lam": lam},
                float(b.t),
                rhs,
            )
        )
    return reports


def cube_chain_suite(k_max: int) -> list[BoundReport]:
    """Unit-cube counting chain for every k <= k_max.

    Per k: k <= N(nu_k) <= k + Theta_k - 1 (exact integers), the Gauss octant
    lower bound on N(nu_k), and the eigenvalue growth bound on nu_k^{3/2}.
    """
    table_m, table_theta, table_count = cube_spectrum_table(k_max)
    reports = []
    for k in range(1, k_max + 1):
        m = int(table_m[k])
        theta = int(table_theta[k])
        n_at_nu = int(table_count[k])
        nu = PI_SQUARED * float(m)
        reports.append(
            BoundReport("cube_chain_lower", {"k": k, "m": m}, float(k), float(n_at_nu))
        )
        reports.append(
            BoundReport(
                "cube_chain_upper",
                {"k": k, "m": m, "theta": theta},
                float(n_at_nu),
                float(k + theta - 1),
            )
        )
        gauss = (OMEGA_3 / 8.0) * max(math.sqrt(nu) / math.pi - math.sqrt(3.0), 0.0) ** 3
        reports.append(
            BoundReport("gauss_octant", {"k": k, "m": m}, gauss, float(n_at_nu))
        )
        reports.append(cube_eigenvalue_bound(k, nu))
    return reports


def polya_suite(samples: int, seed: int = 0, k_max: int = 1000) -> list[BoundReport]:
    rng = random.Random(seed)
    reports = []
    for _ in range(samples):
        c = sample_cuboid(rng)
        k = rng.randint(1, k_max)
        lam_k = kth_eigenvalue(c, k).value
        reports.append(
            BoundReport(
                "polya",
                {"a1": c.a1, "a2": c.a2, "a3": c.a3, "k": k},
                polya_lower_bound(k),
                lam_k,
            )
        )
    return reports


def remainder_constant_estimates(
    cuboid: Cuboid,
    lam_values: Iterable[float],
    exponents: lattice.RemainderExponents = lattice.RemainderExponents(),
) -> dict[str, float]:
    """Empirical scale of the sphere- and circle-count remainders.

    Returns the largest observed |T - main term| / lam^(beta/2) and the
    analogue for the x1 plane section with exponent theta.  Descriptive
    statistics only: the true constants exist but are not known analytically,
    so nothing here is a pass/fail criterion.
    """
    c_hat = 0.0
    d_hat = 0.0
    a2a3 = cuboid.a2 * cuboid.a3
    for lam in lam_values:
        if lam <= 0.0:
            continue
        t = lattice.count_full(cuboid, lam)
        main3 = 4.0 / (3.0 * PI_SQUARED) * lam**1.5
        c_hat = max(c_hat, abs(t - main3) / lam ** (exponents.beta / 2.0))
        t1 = lattice.count_plane(cuboid, lam, 1)
        main2 = a2a3 / math.pi * lam
        d_hat = max(d_hat, abs(t1 - main2) / lam ** (exponents.theta / 2.0))
    return {
        "c_hat": c_hat,
        "d_hat": d_hat,
        "beta": exponents.beta,
        "theta": exponents.theta,
    }


def run_suite(name: str, samples: int, seed: int = 0) -> list[BoundReport]:
    """Dispatch one named suite; ``samples`` is the k range for cube-chain."""
    if name == "lemma31":
        return lemma31_suite(samples, seed)
    if name == "lemma32":
        return lemma32_suite(samples, seed)
    if name == "lemma41":
        return lemma41_suite(samples, seed)
    if name == "identity":
        return identity_suite(samples, seed)
    if name == "cube-chain":
        return cube_chain_suite(samples)
    if name == "polya":
        return polya_suite(samples, seed)
    raise ValueError(f"unknown suite {name!r}")
