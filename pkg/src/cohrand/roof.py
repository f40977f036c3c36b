"""Convex-roof evaluation of the intrinsic-randomness measure.

The mixed-state value is the minimum, over all pure-state decompositions of
rho, of the ensemble average of the pure-state randomness. Decompositions of
size m are parameterized by m x r isometries applied to the support
eigendecomposition; the optimizer runs a multi-start descent on that
manifold. A brute-force grid over 2x2 mixing unitaries serves as an
independent qubit oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import _kernels
from .errors import DimensionNot2, NotIsometry, RankMismatch
from .measures import r_pure
from .states import DensityMatrix, PureState

RANK_THRESHOLD = 1e-10
ELEMENT_DROP_THRESHOLD = 1e-12


@dataclass(frozen=True)
class Decomposition:
    """Weighted pure-state ensemble mixing to a target density matrix."""

    elements: list  # list of (p_e, PureState)
    target_dim: int

    def mixture(self) -> np.ndarray:
        acc = np.zeros((self.target_dim, self.target_dim), dtype=complex)
        for p, psi in self.elements:
            acc += p * np.outer(psi.amps, psi.amps.conj())
        return acc

    def total_weight(self) -> float:
        return float(sum(p for p, _ in self.elements))


@dataclass(frozen=True)
class RoofConfig:
    ensemble_size: Optional[int] = None  # default r**2
    restarts: int = 16
    max_iterations: int = 2000
    tolerance: float = 1e-8
    seed: int = 0
    grad_step: float = 1e-6


@dataclass(frozen=True)
class RoofResult:
    value: float
    best_decomposition: Decomposition
    converged: bool
    restarts_used: int


def _support_eigendecomposition(rho: DensityMatrix):
    lam, vec = np.linalg.eigh(rho.mat)
    keep = lam > RANK_THRESHOLD
    return lam[keep], vec[:, keep]


def support_rank(rho: DensityMatrix) -> int:
    lam, _ = _support_eigendecomposition(rho)
    return int(lam.shape[0])


def decomposition_from_isometry(rho: DensityMatrix, W: np.ndarray) -> Decomposition:
    """Ensemble |psi_e> = sum_j W_ej sqrt(lam_j) |v_j> from the support
    eigendecomposition of rho; p_e is the squared norm of each row."""
    W = np.asarray(W, dtype=complex)
    lam, vec = _support_eigendecomposition(rho)
    r = lam.shape[0]
    if W.ndim != 2 or W.shape[1] != r:
        raise RankMismatch(
            f"isometry has {W.shape[1] if W.ndim == 2 else '?'} columns, support rank is {r}"
        )
    dev = float(np.max(np.abs(W.conj().T @ W - np.eye(r))))
    if dev > 1e-10:
        raise NotIsometry(f"max |W^dag W - I| = {dev:.3e} > 1e-10")
    bt = (vec * np.sqrt(lam)).T  # row j = sqrt(lam_j) v_j
    unnormalized = W @ bt
    elements = []
    for row in unnormalized:
        p = float(np.sum(np.abs(row) ** 2))
        if p < ELEMENT_DROP_THRESHOLD:
            continue
        elements.append((p, PureState(row / math.sqrt(p))))
    decomp = Decomposition(elements, rho.dim)
    recon_dev = float(np.max(np.abs(decomp.mixture() - rho.mat)))
    if recon_dev > 1e-8:  # pragma: no cover - construction guarantees this
        raise NotIsometry(f"ensemble reconstructs rho only to {recon_dev:.3e}")
    return decomp


def roof_objective(decomp: Decomposition) -> float:
    """Ensemble average of the pure-state randomness, in bits."""
    return float(sum(p * r_pure(psi).value for p, psi in decomp.elements))


def optimize_roof(rho: DensityMatrix, config: RoofConfig = RoofConfig()) -> RoofResult:
    """Minimize the roof objective over size-m decompositions.

    Multi-start descent; restarts use seeds derived deterministically from
    the master seed and are merged by lowest value, then lowest restart
    index. The returned value is an upper estimate of the true roof (the
    descent approaches it from above).
    """
    lam, vec = _support_eigendecomposition(rho)
    r = lam.shape[0]
    bt = np.ascontiguousarray((vec * np.sqrt(lam)).T)
    if r == 1:
        decomp = decomposition_from_isometry(rho, np.eye(1, dtype=complex))
        return RoofResult(roof_objective(decomp), decomp, True, 0)
    m = config.ensemble_size if config.ensemble_size is not None else r * r
    if m < r:
        raise ValueError(f"ensemble size {m} < support rank {r}")
    tol_nats = config.tolerance * _kernels.LN2
    children = np.random.SeedSequence(config.seed).spawn(config.restarts)
    best = None
    for i in range(config.restarts):
        rng = np.random.default_rng(children[i])
        g = rng.standard_normal((m, r)) + 1j * rng.standard_normal((m, r))
        w0, _ = np.linalg.qr(g)
        value, w_final, converged = _kernels.roof_descent(
            bt,
            np.ascontiguousarray(w0),
            config.max_iterations,
            tol_nats,
            config.grad_step,
        )
        if best is None or value < best[0]:
            best = (value, w_final, converged)
    _, w_best, converged = best
    decomp = decomposition_from_isometry(rho, w_best)
    return RoofResult(roof_objective(decomp), decomp, converged, config.restarts)


def brute_force_roof_qubit(rho: DensityMatrix, grid_n: int) -> float:
    """Independent oracle: exhaustive grid over 2x2 mixing unitaries
    (three angles, grid_n points each) applied to the eigendecomposition."""
    if rho.dim != 2:
        raise DimensionNot2(f"brute-force oracle needs d=2, got d={rho.dim}")
    lam, vec = _support_eigendecomposition(rho)
    if lam.shape[0] == 1:
        return r_pure(PureState(vec[:, 0])).value
    bt = (vec * np.sqrt(lam)).T
    return float(
        _kernels.qubit_grid_min(
            complex(bt[0, 0]), complex(bt[0, 1]), complex(bt[1, 0]), complex(bt[1, 1]), grid_n
        )
    )
