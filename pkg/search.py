"""Sampling searches for the open questions about spectra.

Nothing here is asserted: each search draws seeded samples from a few element
families and tabulates what it sees.

    eig1-dims   which dimensions dim Eig_1(a) takes in A_n
    zd-spectra  which spectra zero-divisors of A_n have
    lambda-min  how the least eigenvalue of (b, c) relates to those of b and c
"""
from __future__ import annotations

import logging
import math
from collections import Counter, defaultdict
from typing import Callable

import numpy as np
import pandas as pd

import config
from algebra_core import CDElement, ComplexScalar, join, parse_element
from eigentheory import WITNESS, Spectrum, batch_spectra, pair_element, top_zero_divisor
from errors import LevelError, PreconditionError
from rng import SplitMix64, random_complex, random_element, random_perp

logger = logging.getLogger(__name__)

MIN_LEVEL = 4

Family = Callable[[SplitMix64, int], CDElement]


def _generic(rng: SplitMix64, n: int) -> CDElement:
    return random_element(rng, n)


def _perp(rng: SplitMix64, n: int) -> CDElement:
    return random_perp(rng, n)


def _pair(rng: SplitMix64, n: int) -> CDElement:
    return pair_element(random_perp(rng, n - 1), random_complex(rng), random_complex(rng))


def _dependent_pair(rng: SplitMix64, n: int) -> CDElement:
    alpha = random_complex(rng)
    return pair_element(random_perp(rng, n - 1), alpha, rng.normal() * alpha)


def _sparse(rng: SplitMix64, n: int) -> CDElement:
    # a few basis vectors with coefficients ±1 land on the degenerate strata
    coeffs = np.zeros(1 << n)
    for _ in range(2 + rng.below(3)):
        coeffs[rng.below(1 << n)] = 1.0 if rng.below(2) else -1.0
    if not coeffs.any():
        coeffs[1] = 1.0
    return CDElement(n, coeffs)


def _orthogonal_pair(rng: SplitMix64, n: int) -> CDElement:
    """(alpha a, beta a) with |alpha × beta| = (|alpha|^2 + |beta|^2) / 2: always a zero-divisor."""
    phi = rng.angle(0.0, 2.0 * math.pi)
    alpha = ComplexScalar(math.cos(phi), math.sin(phi))
    return pair_element(random_perp(rng, n - 1, unit=True), alpha, alpha * ComplexScalar(0.0, 1.0))


def _pair_over_zero_divisor(rng: SplitMix64, n: int) -> CDElement:
    if n - 1 < MIN_LEVEL:
        return _orthogonal_pair(rng, n)
    base = _orthogonal_pair(rng, n - 1)
    return pair_element(base, random_complex(rng), random_complex(rng))


def _top(rng: SplitMix64, n: int) -> CDElement:
    return top_zero_divisor(n, 1 if rng.below(2) else -1)


EIG1_FAMILIES: dict[str, Family] = {
    "generic": _generic,
    "perp": _perp,
    "pair": _pair,
    "dependent-pair": _dependent_pair,
    "sparse": _sparse,
    "orthogonal-pair": _orthogonal_pair,
}

ZERO_DIVISOR_FAMILIES: dict[str, Family] = {
    "orthogonal-pair": _orthogonal_pair,
    "pair-over-zero-divisor": _pair_over_zero_divisor,
    "top": _top,
}


def _check_level(n: int) -> None:
    if not MIN_LEVEL <= n <= config.MAX_LEVEL:
        raise LevelError(f"searches run at levels {MIN_LEVEL}..{config.MAX_LEVEL}, got {n}")


def _draw(rng: SplitMix64, n: int, samples: int, families: dict[str, Family]) -> list[tuple[str, CDElement]]:
    names = list(families)
    return [(names[k % len(names)], families[names[k % len(names)]](rng, n)) for k in range(samples)]


def _spectrum_key(spec: Spectrum, tol: float) -> tuple[tuple[float, int], ...]:
    return tuple((round(c.value / tol) * tol, c.multiplicity) for c in spec.clusters)


def _format_key(key: tuple[tuple[float, int], ...]) -> str:
    return " ".join(f"{value:.6g}:{mult}" for value, mult in key)


def eig1_dims(n: int, samples: int, seed: int) -> pd.DataFrame:
    """One row per observed dim Eig_1 with its count and the families that produced it.

    The `conjectured_excluded` column flags 2^n - 12 and 2^n - 4, the two
    dimensions conjectured never to occur.
    """
    _check_level(n)
    rng = SplitMix64(seed)
    drawn = _draw(rng, n, samples, EIG1_FAMILIES)
    if n == 5:
        witness = parse_element(WITNESS, 5)
        drawn.append(("catalogue", witness))
    spectra = batch_spectra([x for _, x in drawn])

    counts: Counter[int] = Counter()
    sources: dict[int, set[str]] = defaultdict(set)
    for (family, _), spec in zip(drawn, spectra):
        dim = spec.multiplicity_of(1.0)
        counts[dim] += 1
        sources[dim].add(family)

    excluded = {(1 << n) - 12, (1 << n) - 4}
    rows = [
        {
            "dim_eig1": dim,
            "count": counts[dim],
            "families": ";".join(sorted(sources[dim])),
            "conjectured_excluded": dim in excluded,
        }
        for dim in sorted(counts)
    ]
    hits = [r["dim_eig1"] for r in rows if r["conjectured_excluded"]]
    if hits:
        logger.warning("observed dim Eig_1 in the conjectured-excluded set: %s", hits)
    return pd.DataFrame(rows, columns=["dim_eig1", "count", "families", "conjectured_excluded"])


def zd_spectra(n: int, samples: int, seed: int) -> pd.DataFrame:
    """Distinct spectra of sampled zero-divisors, values rounded to the cluster tolerance."""
    _check_level(n)
    rng = SplitMix64(seed)
    drawn = _draw(rng, n, samples, ZERO_DIVISOR_FAMILIES)
    spectra = batch_spectra([x for _, x in drawn])

    tol = config.CLUSTER_TOL
    counts: Counter = Counter()
    sources: dict = defaultdict(set)
    extremes: dict = {}
    for (family, _), spec in zip(drawn, spectra):
        if not spec.is_zero_divisor():
            logger.warning("%s sample is not a zero-divisor (lambda_min %.3g)", family, spec.lambda_min)
            continue
        key = _spectrum_key(spec, tol)
        counts[key] += 1
        sources[key].add(family)
        extremes[key] = spec.lambda_max

    rows = [
        {
            "spectrum": _format_key(key),
            "dim_eig0": key[0][1],
            "lambda_max": extremes[key],
            "count": counts[key],
            "families": ";".join(sorted(sources[key])),
        }
        for key in sorted(counts)
    ]
    return pd.DataFrame(rows, columns=["spectrum", "dim_eig0", "lambda_max", "count", "families"])


def lambda_min(n: int, samples: int, seed: int) -> pd.DataFrame:
    """lambda_min of b, c and (b, c) for sampled b, c in A_{n-1}."""
    _check_level(n)
    rng = SplitMix64(seed)
    families = {"generic": _generic}
    if n - 1 >= MIN_LEVEL:
        families.update({"orthogonal-pair": _orthogonal_pair, "perp": _perp})
    names = list(families)

    halves = []
    for k in range(samples):
        b = families[names[k % len(names)]](rng, n - 1)
        c = families[names[(k // len(names)) % len(names)]](rng, n - 1)
        halves.append((b, c))
    spectra = batch_spectra([x for pair in halves for x in pair] + [join(b, c) for b, c in halves])
    half_spectra, pair_spectra = spectra[: 2 * samples], spectra[2 * samples:]

    rows = []
    for k in range(samples):
        spec_b, spec_c, spec_bc = half_spectra[2 * k], half_spectra[2 * k + 1], pair_spectra[k]
        rows.append({
            "sample": k,
            "lambda_min_b": spec_b.lambda_min,
            "lambda_min_c": spec_c.lambda_min,
            "lambda_min_pair": spec_bc.lambda_min,
            "pair_is_zero_divisor": spec_bc.is_zero_divisor(),
        })
    return pd.DataFrame(
        rows, columns=["sample", "lambda_min_b", "lambda_min_c", "lambda_min_pair", "pair_is_zero_divisor"]
    )


SEARCHES = {
    "eig1-dims": eig1_dims,
    "zd-spectra": zd_spectra,
    "lambda-min": lambda_min,
}


def run_search(question: str, n: int, samples: int, seed: int = 0) -> pd.DataFrame:
    if question not in SEARCHES:
        raise PreconditionError(f"unknown question {question!r}; choose from {', '.join(SEARCHES)}")
    if samples < 1:
        raise PreconditionError("samples must be positive")
    logger.info("search %s at level %d: %d samples, seed %d", question, n, samples, seed)
    return SEARCHES[question](n, samples, seed)
