"""Subalgebras generated by a set of elements, closed under product and conjugation."""
from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from algebra_core import CDElement, conjugate, norm, product_rows
from errors import LevelError, PreconditionError, SubalgebraError

logger = logging.getLogger(__name__)

RANK_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class Subalgebra:
    level: int
    basis: tuple[CDElement, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def matrix(self) -> np.ndarray:
        """Basis vectors as columns."""
        return np.column_stack([u.coeffs for u in self.basis])

    def projector(self) -> np.ndarray:
        q = self.matrix()
        return q @ q.T

    def project(self, x: CDElement) -> CDElement:
        if x.level != self.level:
            raise LevelError(f"level mismatch: {x.level} vs {self.level}")
        q = self.matrix()
        return CDElement(x.level, q @ (q.T @ x.coeffs))

    def as_dict(self) -> dict:
        return {
            "level": self.level,
            "dim": self.dim,
            "basis": [[float(c) for c in u.coeffs] for u in self.basis],
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict())


def _gram_schmidt_extend(basis: list[np.ndarray], candidates: np.ndarray, tol: float) -> list[np.ndarray]:
    """Modified Gram-Schmidt (two passes) of candidates against basis; returns the new vectors."""
    added: list[np.ndarray] = []
    if basis:
        q = np.array(basis)
        residual = candidates - (candidates @ q.T) @ q
    else:
        residual = np.array(candidates, dtype=float)
    scales = np.linalg.norm(candidates, axis=1)
    for w, scale in zip(residual, scales):
        # candidates already inside the span are skipped without the slow loop
        if scale == 0.0 or np.linalg.norm(w) <= tol * scale:
            continue
        w = w.copy()
        for _ in range(2):
            for u in basis:
                w -= (u @ w) * u
            for u in added:
                w -= (u @ w) * u
        length = np.linalg.norm(w)
        if length > tol * scale:
            added.append(w / length)
    return added


def generated_subalgebra(gens: Sequence[CDElement], tol: float = RANK_TOL) -> Subalgebra:
    """Smallest subalgebra containing 1 and gens."""
    if not gens:
        raise PreconditionError("need at least one generator")
    levels = {g.level for g in gens}
    if len(levels) > 1:
        raise LevelError(f"generators live at different levels: {sorted(levels)}")
    level = gens[0].level
    dim = 1 << level

    seed = np.array([CDElement.one(level).coeffs] + [g.coeffs for g in gens])
    basis = _gram_schmidt_extend([], seed, tol)

    for sweep in range(dim):
        k = len(basis)
        rows = np.array(basis)
        conjugates = np.array([conjugate(CDElement(level, u)).coeffs for u in basis])
        # pairs (u_i, u_j) in lexicographic order
        products = product_rows(np.repeat(rows, k, axis=0), np.tile(rows, (k, 1)))
        added = _gram_schmidt_extend(basis, np.vstack([conjugates, products]), tol)
        if not added:
            logger.debug("closure reached dim %d after %d sweeps", k, sweep)
            return Subalgebra(level, tuple(CDElement(level, u) for u in basis))
        basis.extend(added)

    raise SubalgebraError(f"closure did not stabilise within {dim} sweeps (dim {len(basis)})")


def contains(sub: Subalgebra, x: CDElement, tol: float = RANK_TOL) -> bool:
    if x.level != sub.level:
        raise LevelError(f"level mismatch: {x.level} vs {sub.level}")
    return norm(x - sub.project(x)) <= tol * norm(x)
