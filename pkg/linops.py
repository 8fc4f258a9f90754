"""Dense matrices of L_a, R_a and M_a, plus the symmetric eigensolvers."""
from __future__ import annotations

import json
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

import config
from algebra_core import CDElement, ComplexScalar, conjugate, norm, product_rows
from errors import (
    EigenSolverError,
    LevelError,
    NotSymmetricError,
    PreconditionError,
    ZeroElementError,
)

logger = logging.getLogger(__name__)

SYMMETRY_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class OperatorMatrix:
    entries: np.ndarray
    symmetric: bool = False

    def __post_init__(self):
        entries = np.array(self.entries, dtype=float)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise PreconditionError(f"operator matrix must be square, got {entries.shape}")
        if self.symmetric:
            scale = float(np.max(np.abs(entries))) if entries.size else 0.0
            asym = float(np.max(np.abs(entries - entries.T))) if entries.size else 0.0
            if asym > SYMMETRY_TOL * scale:
                raise NotSymmetricError(f"asymmetry {asym:.3g} exceeds tolerance")
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def apply(self, x: CDElement) -> CDElement:
        if x.dim != self.dim:
            raise LevelError(f"operator of dim {self.dim} applied to level {x.level}")
        return CDElement(x.level, self.entries @ x.coeffs)

    def to_json(self) -> str:
        return json.dumps({"dim": self.dim, "rows": self.entries.tolist()})


@dataclass(frozen=True, eq=False)
class EigenPairList:
    """Raw solver output: ascending values, unit eigenvectors as columns."""

    values: np.ndarray
    vectors: np.ndarray

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self) -> Iterator[tuple[float, np.ndarray]]:
        for k, value in enumerate(self.values):
            yield float(value), self.vectors[:, k]

    def reconstruct(self) -> np.ndarray:
        return (self.vectors * self.values) @ self.vectors.T

    def residual(self, matrix: OperatorMatrix) -> float:
        diff = matrix.entries @ self.vectors - self.vectors * self.values
        return float(np.max(np.linalg.norm(diff, axis=0))) if len(self) else 0.0

    def orthonormality_error(self) -> float:
        gram = self.vectors.T @ self.vectors
        return float(np.max(np.abs(gram - np.eye(len(self))))) if len(self) else 0.0


def mult_matrix(a: CDElement, side: str = "left") -> OperatorMatrix:
    """Matrix of L_a (column k = a e_k) or R_a (column k = e_k a)."""
    eye = np.eye(a.dim)
    if side == "left":
        rows = product_rows(a.coeffs, eye)
    elif side == "right":
        rows = product_rows(eye, a.coeffs)
    else:
        raise PreconditionError(f"side must be 'left' or 'right', got {side!r}")
    return OperatorMatrix(rows.T)


def m_operator(a: CDElement) -> OperatorMatrix:
    """M_a = L_{a*} L_a / |a|^2."""
    sq = norm(a) ** 2
    if sq == 0.0:
        raise ZeroElementError("M_a is undefined for a = 0")
    m = mult_matrix(conjugate(a)).entries @ mult_matrix(a).entries / sq
    return OperatorMatrix(0.5 * (m + m.T), symmetric=True)


def mixed_m_operator(a: CDElement, beta: ComplexScalar, theta: float, tol: float = 1e-9) -> OperatorMatrix:
    """M of a cos(theta) + beta sin(theta), as I sin^2(theta) + M_a cos^2(theta)."""
    if a.level < 2:
        raise PreconditionError("C_n^⊥ is zero below level 2")
    if abs(norm(a) - 1.0) > tol or abs(beta.norm() - 1.0) > tol:
        raise PreconditionError("a and beta must be unit length")
    if max(abs(a.coeffs[0]), abs(a.coeffs[a.dim // 2])) > tol:
        raise PreconditionError("a must be orthogonal to C_n")
    s2, c2 = math.sin(theta) ** 2, math.cos(theta) ** 2
    m = s2 * np.eye(a.dim) + c2 * m_operator(a).entries
    return OperatorMatrix(m, symmetric=True)


def trace_pairing(x: CDElement, y: CDElement) -> float:
    """tr(L_{x*} L_y)."""
    if x.level != y.level:
        raise LevelError(f"level mismatch: {x.level} vs {y.level}")
    lx = mult_matrix(conjugate(x)).entries
    ly = mult_matrix(y).entries
    return float(np.sum(lx * ly.T))


# =========================
# Eigensolvers
# =========================

def _round_robin(size: int) -> list[tuple[np.ndarray, np.ndarray]]:
    # every index pair exactly once per sweep, in rounds of disjoint pairs
    m = size + size % 2
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        pairs = [(players[i], players[m - 1 - i]) for i in range(m // 2)]
        pairs = [(min(p, q), max(p, q)) for p, q in pairs if max(p, q) < size]
        rounds.append((
            np.array([p for p, _ in pairs], dtype=int),
            np.array([q for _, q in pairs], dtype=int),
        ))
        players = [players[0], players[-1]] + players[1:-1]
    return rounds


def _jacobi(entries: np.ndarray, max_sweeps: int) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic Jacobi; each round rotates a set of disjoint (p, q) planes at once."""
    a = np.array(entries, dtype=float)
    size = a.shape[0]
    v = np.eye(size)
    total = float(np.linalg.norm(a))
    rounds = _round_robin(size)

    for sweep in range(max_sweeps + 1):
        off = float(np.linalg.norm(a - np.diag(np.diag(a))))
        if off <= 1e-12 * total:
            logger.debug("jacobi converged after %d sweeps", sweep)
            return np.diag(a).copy(), v
        if sweep == max_sweeps:
            break
        for p, q in rounds:
            apq = a[p, q]
            active = apq != 0.0
            theta = (a[q, q] - a[p, p]) / (2.0 * np.where(active, apq, 1.0))
            t = np.where(theta >= 0.0, 1.0, -1.0) / (np.abs(theta) + np.hypot(theta, 1.0))
            c = np.where(active, 1.0 / np.sqrt(t * t + 1.0), 1.0)
            s = np.where(active, t * c, 0.0)

            ap, aq = a[:, p], a[:, q]
            a[:, p], a[:, q] = c * ap - s * aq, s * ap + c * aq
            ap, aq = a[p, :], a[q, :]
            a[p, :], a[q, :] = c[:, None] * ap - s[:, None] * aq, s[:, None] * ap + c[:, None] * aq
            vp, vq = v[:, p], v[:, q]
            v[:, p], v[:, q] = c * vp - s * vq, s * vp + c * vq

    raise EigenSolverError(f"jacobi did not converge in {max_sweeps} sweeps (off-diagonal {off:.3g})")


def symmetric_eigen(matrix: OperatorMatrix, solver: str | None = None) -> EigenPairList:
    if not matrix.symmetric:
        raise NotSymmetricError("symmetric_eigen needs a matrix flagged symmetric")
    solver = solver or config.EIGEN_SOLVER
    if matrix.dim > config.COST_WARNING_DIM:
        logger.warning("eigensolve at dim %d (%s) may be slow", matrix.dim, solver)

    if solver == "eigh":
        values, vectors = np.linalg.eigh(matrix.entries)
    elif solver == "jacobi":
        values, vectors = _jacobi(matrix.entries, config.JACOBI_MAX_SWEEPS)
        order = np.argsort(values, kind="stable")
        values, vectors = values[order], vectors[:, order]
    else:
        raise PreconditionError(f"unknown eigen solver {solver!r}")

    # M_a is positive semi-definite; tiny negatives are rounding noise
    values = np.where(np.abs(values) <= config.ZERO_CLAMP, 0.0, values)
    return EigenPairList(values, vectors)


def batch_symmetric_eigen(
    matrices: Iterable[OperatorMatrix], workers: int | None = None
) -> list[EigenPairList]:
    """Eigensolve many matrices; results come back in input order."""
    workers = workers or config.WORKERS
    if workers == 1:
        return [symmetric_eigen(m) for m in matrices]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(symmetric_eigen, matrices))
