"""Eigenvalues of Cayley-Dickson elements.

The eigenvalues of a non-zero a in A_n are those of M_a = L_{a*} L_a / |a|^2.
This module clusters them into a Spectrum, splits vectors along the
eigenspaces, detects zero-divisors, solves a x = b through the
eigendecomposition, predicts spectra in closed form for pairs (alpha a, beta a)
and for A_4, and builds elements with prescribed eigenvalues.
"""
from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

import config
from algebra_core import (
    CDElement,
    ComplexScalar,
    basis_element,
    complex_action,
    conjugate,
    cross,
    inner_real,
    join,
    multiply,
    norm,
    unit_imaginary,
)
from errors import (
    ConstructionError,
    LevelError,
    NoSolutionError,
    PreconditionError,
    ZeroElementError,
)
from linops import EigenPairList, batch_symmetric_eigen, m_operator, symmetric_eigen
from subalgebra import generated_subalgebra

logger = logging.getLogger(__name__)

MERGE_TOL = 1e-9
SOLVE_TOL = 1e-7
SQRT2 = math.sqrt(2.0)

# Element of A_5 whose 1-eigenspace has dimension 4
WITNESS = "((0,t),(t+it,1+i+j))"


@dataclass(frozen=True, eq=False)
class EigenCluster:
    value: float
    multiplicity: int
    basis: tuple[CDElement, ...]

    def matrix(self) -> np.ndarray:
        return np.column_stack([v.coeffs for v in self.basis])

    def projector(self) -> np.ndarray:
        q = self.matrix()
        return q @ q.T


@dataclass(frozen=True, eq=False)
class Spectrum:
    level: int
    clusters: tuple[EigenCluster, ...]

    @property
    def lambda_min(self) -> float:
        return self.clusters[0].value

    @property
    def lambda_max(self) -> float:
        return self.clusters[-1].value

    def values(self) -> list[float]:
        return [c.value for c in self.clusters]

    def multiplicities(self) -> list[tuple[float, int]]:
        return [(c.value, c.multiplicity) for c in self.clusters]

    def cluster_at(self, value: float, tol: float | None = None) -> EigenCluster | None:
        tol = config.CLUSTER_TOL if tol is None else tol
        for cluster in self.clusters:
            if abs(cluster.value - value) <= tol:
                return cluster
        return None

    def multiplicity_of(self, value: float, tol: float | None = None) -> int:
        cluster = self.cluster_at(value, tol)
        return cluster.multiplicity if cluster else 0

    def projector(self, value: float, tol: float | None = None) -> np.ndarray:
        cluster = self.cluster_at(value, tol)
        if cluster is None:
            return np.zeros((1 << self.level, 1 << self.level))
        return cluster.projector()

    def is_zero_divisor(self, tol: float | None = None) -> bool:
        tol = config.ZD_TOL if tol is None else tol
        return self.lambda_min <= tol

    def as_dict(self, bases: bool = False) -> dict:
        clusters = []
        for c in self.clusters:
            entry = {"value": c.value, "multiplicity": c.multiplicity}
            if bases:
                entry["basis"] = [[float(x) for x in v.coeffs] for v in c.basis]
            clusters.append(entry)
        return {
            "level": self.level,
            "clusters": clusters,
            "is_zero_divisor": self.is_zero_divisor(),
            "lambda_min": self.lambda_min,
            "lambda_max": self.lambda_max,
        }

    def to_json(self, bases: bool = False) -> str:
        return json.dumps(self.as_dict(bases))


@dataclass(frozen=True)
class SpectrumPrediction:
    """Closed-form (value, multiplicity) list and the rule that produced it."""

    level: int
    entries: tuple[tuple[float, int], ...]
    provenance: str

    @property
    def total(self) -> int:
        return sum(m for _, m in self.entries)

    def deviation(self, spectrum: Spectrum) -> float:
        """Largest value error against a numerical spectrum; inf on any multiplicity mismatch."""
        if len(self.entries) != len(spectrum.clusters):
            return math.inf
        worst = 0.0
        for (value, mult), cluster in zip(self.entries, spectrum.clusters):
            if mult != cluster.multiplicity:
                return math.inf
            worst = max(worst, abs(value - cluster.value))
        return worst

    def matches(self, spectrum: Spectrum, value_tol: float = 1e-7) -> bool:
        return self.deviation(spectrum) <= value_tol

    def as_dict(self) -> dict:
        return {
            "level": self.level,
            "provenance": self.provenance,
            "entries": [{"value": v, "multiplicity": m} for v, m in self.entries],
        }


def _merge_entries(entries: Iterable[tuple[float, int]], tol: float = MERGE_TOL) -> tuple[tuple[float, int], ...]:
    merged: list[list] = []
    for value, mult in sorted(e for e in entries if e[1] > 0):
        if merged and value - merged[-1][0] <= tol:
            merged[-1][1] += mult
        else:
            merged.append([value, mult])
    return tuple((float(v), int(m)) for v, m in merged)


def _cluster(pairs: EigenPairList, level: int, cluster_tol: float) -> Spectrum:
    values = pairs.values
    groups: list[list[int]] = []
    for k, value in enumerate(values):
        if groups and value - values[groups[-1][-1]] <= cluster_tol:
            groups[-1].append(k)
        else:
            groups.append([k])

    clusters = []
    for group in groups:
        # re-orthonormalize inside the cluster
        q, _ = np.linalg.qr(pairs.vectors[:, group])
        basis = tuple(CDElement(level, q[:, j]) for j in range(len(group)))
        clusters.append(EigenCluster(float(np.mean(values[group])), len(group), basis))
    return Spectrum(level, tuple(clusters))


def spectrum(a: CDElement, cluster_tol: float | None = None) -> Spectrum:
    cluster_tol = config.CLUSTER_TOL if cluster_tol is None else cluster_tol
    pairs = symmetric_eigen(m_operator(a))
    return _cluster(pairs, a.level, cluster_tol)


def batch_spectra(elements: list[CDElement], cluster_tol: float | None = None) -> list[Spectrum]:
    cluster_tol = config.CLUSTER_TOL if cluster_tol is None else cluster_tol
    solved = batch_symmetric_eigen([m_operator(a) for a in elements])
    return [_cluster(pairs, a.level, cluster_tol) for a, pairs in zip(elements, solved)]


def check_spectrum_invariants(spec: Spectrum) -> dict[str, float]:
    """Residual of each structural invariant a Spectrum must satisfy (0 means exact)."""
    n = spec.level
    dim = 1 << n
    total = sum(c.multiplicity for c in spec.clusters)
    trace = sum(c.value * c.multiplicity for c in spec.clusters)
    out = {
        "multiplicity-total": float(abs(total - dim)),
        "eigenvalue-sum": abs(trace - dim) / dim,
        "mod-4": 0.0,
        "range": 0.0,
        "orthogonality": 0.0,
    }
    if n >= 2:
        out["mod-4"] = float(sum(c.multiplicity % 4 for c in spec.clusters))
    if n >= 3:
        upper = 2.0 ** (n - 3)
        out["range"] = max(0.0, -spec.lambda_min - 1e-9, spec.lambda_max - upper - 1e-6)
    mats = [c.matrix() for c in spec.clusters]
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            out["orthogonality"] = max(out["orthogonality"], float(np.max(np.abs(mats[i].T @ mats[j]))))
    return out


def eigendecompose(
    x: CDElement, a: CDElement, spec: Spectrum | None = None
) -> list[tuple[float, CDElement]]:
    """x = sum of its components in the eigenspaces of a; zero components are dropped."""
    if x.level != a.level:
        raise LevelError(f"level mismatch: {x.level} vs {a.level}")
    spec = spec or spectrum(a)
    size = norm(x)
    parts = []
    for cluster in spec.clusters:
        q = cluster.matrix()
        component = CDElement(x.level, q @ (q.T @ x.coeffs))
        if norm(component) > 1e-9 * size:
            parts.append((cluster.value, component))
    return parts


def extreme_eigenvalues(a: CDElement) -> tuple[float, float]:
    values = symmetric_eigen(m_operator(a)).values
    return float(values[0]), float(values[-1])


def is_zero_divisor(a: CDElement, tol: float | None = None) -> bool:
    tol = config.ZD_TOL if tol is None else tol
    return extreme_eigenvalues(a)[0] <= tol


def cancel_solve(a: CDElement, b: CDElement, tol: float = SOLVE_TOL, spec: Spectrum | None = None) -> CDElement:
    """Solve a x = b one eigenspace at a time: x_i = a* b_i / (lambda_i |a|^2).

    Components of b on the 0-eigenspace are skipped, so when a is a
    zero-divisor the result is the solution of least norm (orthogonal to
    Eig_0(a)); if b is not in the image of L_a, NoSolutionError is raised.
    """
    sq = norm(a) ** 2
    if sq == 0.0:
        raise ZeroElementError("cannot cancel a = 0")
    if b.level != a.level:
        raise LevelError(f"level mismatch: {a.level} vs {b.level}")
    spec = spec or spectrum(a)
    a_star = conjugate(a)
    x = CDElement.zero(a.level)
    for value, component in eigendecompose(b, a, spec):
        if value <= config.ZD_TOL:
            continue
        x = x + (1.0 / (value * sq)) * multiply(a_star, component)

    residual = norm(multiply(a, x) - b)
    if residual > tol * norm(b):
        raise NoSolutionError(
            f"a x = b has no solution (residual {residual:.3g}); b leaves the image of L_a", residual
        )
    return x


def verify_eig_norm(
    a: CDElement, x: CDElement, lam: float, tol: float = 1e-8, operator_condition: bool = True
) -> bool:
    """|ax| = sqrt(lam)|a||x| and |M_a x| = lam |x|.

    For the extreme eigenvalues the first condition alone decides membership;
    pass operator_condition=False to test only that one.
    """
    na, nx = norm(a), norm(x)
    if na == 0.0:
        raise ZeroElementError("a must be non-zero")
    if lam < 0:
        raise PreconditionError("eigenvalues are non-negative")
    first = abs(norm(multiply(a, x)) - math.sqrt(lam) * na * nx) <= tol * na * nx
    if not operator_condition:
        return first
    mx = m_operator(a).apply(x)
    second = abs(norm(mx) - lam * nx) <= tol * max(1.0, lam) * nx
    return first and second


# =========================
# Closed forms
# =========================

def _require_perp(a: CDElement, tol: float = 1e-9) -> None:
    if a.level < 2:
        raise PreconditionError("C_n^⊥ is zero below level 2")
    size = norm(a)
    if size == 0.0:
        raise ZeroElementError("a must be non-zero")
    if math.hypot(a.coeffs[0], a.coeffs[a.dim // 2]) > tol * size:
        raise PreconditionError("a must be orthogonal to C_n")


def predict_pair_spectrum(
    a: CDElement,
    alpha: ComplexScalar,
    beta: ComplexScalar,
    base: Spectrum | None = None,
) -> SpectrumPrediction:
    """Spectrum of (alpha a, beta a) from the spectrum of a, for a orthogonal to C_{n-1}.

    With r = 2|alpha × beta| / (|alpha|^2 + |beta|^2) > 0 the eigenspaces are:
    value 1 on <<a, i_{n-1}, i_n>> (dim 8); 1 ± r on pairs (x, ∓gamma x) with x
    in Eig_1(a) orthogonal to <<a, i_{n-1}>> (dim Eig_1(a) - 4 each); and
    (1 ± r) lambda for every other eigenvalue lambda of a (dim Eig_lambda(a)
    each).  r = 1 is the zero-divisor case.  When alpha and beta are
    dependent the spectrum of a is kept with every multiplicity doubled.
    """
    _require_perp(a)
    n_sq = alpha.norm() ** 2 + beta.norm() ** 2
    if n_sq == 0.0:
        raise PreconditionError("alpha and beta cannot both vanish")
    base = base or spectrum(a)
    gamma = abs(alpha.cross(beta))
    r = 2.0 * gamma / n_sq

    if gamma <= 1e-12 * n_sq:
        entries = [(c.value, 2 * c.multiplicity) for c in base.clusters]
        provenance = "dependent-pair"
    else:
        d1 = base.multiplicity_of(1.0)
        entries = [(1.0, 8), (1.0 + r, d1 - 4), (1.0 - r, d1 - 4)]
        for c in base.clusters:
            if abs(c.value - 1.0) > config.CLUSTER_TOL:
                entries.append(((1.0 + r) * c.value, c.multiplicity))
                entries.append(((1.0 - r) * c.value, c.multiplicity))
        provenance = "orthogonal-equal-pair" if abs(r - 1.0) <= MERGE_TOL else "independent-pair"
    return SpectrumPrediction(a.level + 1, _merge_entries(entries), provenance)


def pair_element(a: CDElement, alpha: ComplexScalar, beta: ComplexScalar) -> CDElement:
    """(alpha a, beta a) in A_{n+1}."""
    return join(complex_action(alpha, a), complex_action(beta, a))


def _require_octonion_imaginary(*elements: CDElement, tol: float = 1e-9) -> None:
    for x in elements:
        if x.level != 3:
            raise LevelError("expected an element of A_3")
        if abs(x.coeffs[0]) > tol * max(1.0, norm(x)):
            raise PreconditionError("expected an imaginary element")


def a4_spectrum(a: CDElement, b: CDElement, tol: float = 1e-9) -> SpectrumPrediction:
    """Spectrum of (a, b) in A_4 for imaginary a, b in A_3: values 1, 1 ± s with multiplicities 8, 4, 4,
    s = 2|a||b| sin(theta) / (|a|^2 + |b|^2)."""
    _require_octonion_imaginary(a, b)
    na, nb = norm(a), norm(b)
    if na == 0.0 and nb == 0.0:
        raise ZeroElementError("a and b cannot both vanish")
    if na == 0.0 or nb == 0.0 or norm(cross(a, b)) <= tol * na * nb:
        return SpectrumPrediction(4, ((1.0, 16),), "linearly-dependent")
    cos_t = max(-1.0, min(1.0, inner_real(a, b) / (na * nb)))
    s = 2.0 * na * nb * math.sqrt(1.0 - cos_t * cos_t) / (na * na + nb * nb)
    entries = [(1.0, 8), (1.0 + s, 4), (1.0 - s, 4)]
    return SpectrumPrediction(4, _merge_entries(entries), "octonion-pair")


def a4_zero_divisor_criterion(a: CDElement, b: CDElement, tol: float = 1e-9) -> bool:
    """(a, b) with a, b imaginary in A_3 is a zero-divisor iff a ⟂ b and |a| = |b| ≠ 0."""
    _require_octonion_imaginary(a, b)
    na, nb = norm(a), norm(b)
    if na == 0.0 or nb == 0.0:
        return False
    return abs(inner_real(a, b)) <= tol * na * nb and abs(na - nb) <= tol * max(na, nb)


def a4_eigenbasis(a: CDElement, b: CDElement, residual_tol: float = 1e-8) -> Spectrum:
    """Explicit eigenspaces of the zero-divisor (a, b) in A_4.

    With S = <<a, b>> and c = ab/|ab|:
    Eig_0 = {(x, -c x) : x ⟂ S}, Eig_1 = S × S, Eig_2 = {(x, c x) : x ⟂ S}.
    """
    _require_octonion_imaginary(a, b)
    na, nb = norm(a), norm(b)
    if na == 0.0 or abs(na - nb) > 1e-9 * na or abs(inner_real(a, b)) > 1e-9 * na * nb:
        raise PreconditionError("a and b must be orthogonal, non-zero and of equal norm")

    sub = generated_subalgebra([a, b])
    if sub.dim != 4:
        raise ConstructionError(f"<<a, b>> has dim {sub.dim}, expected 4")
    # orthonormal basis of the complement of S in A_3
    values, vectors = np.linalg.eigh(np.eye(8) - sub.projector())
    complement = [CDElement(3, vectors[:, k]) for k in range(8) if values[k] > 0.5]

    c = multiply(a, b)
    c = c / norm(c)
    zero = CDElement.zero(3)
    eig0 = [join(x, -multiply(c, x)) / SQRT2 for x in complement]
    eig1 = [join(u, zero) for u in sub.basis] + [join(zero, u) for u in sub.basis]
    eig2 = [join(x, multiply(c, x)) / SQRT2 for x in complement]

    m = m_operator(join(a, b))
    clusters = []
    for value, vecs in ((0.0, eig0), (1.0, eig1), (2.0, eig2)):
        for v in vecs:
            residual = norm(m.apply(v) - value * v)
            if residual > residual_tol:
                raise ConstructionError(f"constructed {value}-eigenvector has residual {residual:.3g}")
        clusters.append(EigenCluster(value, len(vecs), tuple(vecs)))
    return Spectrum(4, tuple(clusters))


# =========================
# Constructors
# =========================

def top_zero_divisor(n: int, sign: int = 1) -> CDElement:
    """Unit zero-divisor of A_n whose 0-eigenspace has the maximal dimension 2^n - 4n + 4.

    Seed (i, j)/sqrt(2) in A_4, then a -> (a, ±i_{n-1} a)/sqrt(2).
    """
    if n < 4:
        raise PreconditionError("top-dimensional zero-divisors need level >= 4")
    if sign not in (1, -1):
        raise PreconditionError("sign must be +1 or -1")
    z = join(basis_element(3, 1), basis_element(3, 2)) / SQRT2
    for level in range(5, n + 1):
        z = join(z, sign * multiply(unit_imaginary(level - 1), z)) / SQRT2
    return z


def top_spectrum_table(n: int) -> tuple[tuple[float, int], ...]:
    """Expected spectrum of a top-dimensional zero-divisor: 0 (2^n - 4n + 4), 1 (8), 2^k (4) for 1 <= k <= n-3."""
    entries = [(0.0, (1 << n) - 4 * n + 4), (1.0, 8)]
    entries += [(float(1 << k), 4) for k in range(1, n - 2)]
    return tuple(entries)


def realize_eigenvalue(n: int, lam: float) -> CDElement:
    """Element of A_n with lam as an eigenvalue: z cos(theta) + sin(theta) for a top zero-divisor z.

    The eigenvalues move to sin^2(theta) + mu cos^2(theta); mu = 0 covers
    lam <= 1 and mu = 2^(n-3) covers lam >= 1.
    """
    top = 2.0 ** (n - 3)
    if n < 4:
        raise PreconditionError("eigenvalue realization needs level >= 4")
    if not 0.0 <= lam <= top:
        raise PreconditionError(f"lambda must lie in [0, {top:g}]")
    z = top_zero_divisor(n)
    if lam <= 1.0:
        theta = math.asin(math.sqrt(lam))
    else:
        theta = math.acos(math.sqrt((lam - 1.0) / (top - 1.0)))
    return math.cos(theta) * z + math.sin(theta) * CDElement.one(n)
