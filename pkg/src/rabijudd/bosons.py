"""Truncated Fock-space boson algebra.

Ladder operators on the lowest M+1 number states, displacement matrices via
scaling-and-squaring of the truncated generator, squeeze parameters on the
physical branch, and the displaced / squeezed oscillator Hamiltonians whose
exact spectra anchor the validation suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

#: Highest retained occupation number (basis size 101) used throughout
#: validation; large enough that coherent-state tails at the couplings of
#: interest fall below the verification tolerances.
DEFAULT_CUTOFF = 100


def ladder_matrices(cutoff: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Create, annihilate, and number matrices on the (M+1)-state basis.

    <n+1|b+|n> = sqrt(n+1), annihilate is the exact transpose, and the
    number operator is diagonal {0..M}.
    """
    M = int(cutoff)
    if M < 0:
        raise ValueError("cutoff must be non-negative")
    root = np.sqrt(np.arange(1.0, M + 1.0))
    create = np.diag(root, -1)
    annihilate = create.T.copy()
    number = np.diag(np.arange(M + 1.0))
    return create, annihilate, number


def displacement_matrix(z: float, cutoff: int) -> np.ndarray:
    """Matrix of exp(z (b+ - b)) on the truncated basis.

    Scaling-and-squaring of the truncated antisymmetric generator: the scaled
    one-norm is brought below 1/2, the exponential is summed by Taylor series,
    and the result squared back up. Antisymmetry of the generator makes the
    output orthogonal up to truncation, and column 0 carries the coherent-state
    amplitudes exp(-z^2/2) z^n / sqrt(n!).

    Raises ValueError when z^2 > M/4: beyond that the displaced vacuum has
    non-negligible weight above the cutoff and the represented columns would
    be silently corrupted.
    """
    M = int(cutoff)
    z = float(z)
    if not math.isfinite(z):
        raise ValueError("displacement amplitude must be finite")
    if z * z > M / 4.0:
        raise ValueError(
            f"displacement z={z} too large for cutoff {M}: need z^2 <= M/4"
        )
    create, annihilate, _ = ladder_matrices(M)
    G = z * (create - annihilate)

    one_norm = float(np.max(np.sum(np.abs(G), axis=0))) if M > 0 else 0.0
    squarings = 0
    while one_norm > 0.5:
        one_norm *= 0.5
        squarings += 1
    X = G / float(2**squarings)

    D = np.eye(M + 1)
    term = np.eye(M + 1)
    for k in range(1, 40):
        term = term @ X / k
        D += term
        if float(np.max(np.abs(term))) < 1e-17:
            break
    else:
        raise RuntimeError("displacement Taylor series failed to converge")
    for _ in range(squarings):
        D = D @ D
    return D


@dataclass(frozen=True)
class SqueezeParams:
    """Physical-branch squeeze parameters for coupling strength lam.

    Omega = sqrt(1 - 4 lam^2) is the squeezed-oscillator frequency and sigma
    the Bogoliubov amplitude, |sigma| < 1. The polar fields follow
    sigma = -exp(-i theta) tanh(rho / 2) with real beta = 0; they document the
    operator form and are never read by any computation here.
    """

    lam: float
    sigma: float
    Omega: float
    rho: float
    theta: float
    beta: float


def squeeze_params(lam: float) -> SqueezeParams:
    """Squeeze parameters on the physical branch; requires |lam| < 1/2."""
    lam = float(lam)
    if not abs(lam) < 0.5:
        raise ValueError(f"|lam| must be below 1/2, got {lam}")
    Omega = math.sqrt(1.0 - 4.0 * lam * lam)
    sigma = 0.0 if lam == 0.0 else (1.0 - Omega) / (2.0 * lam)
    rho = 2.0 * math.atanh(abs(sigma))
    theta = math.pi if sigma > 0.0 else 0.0
    return SqueezeParams(lam=lam, sigma=sigma, Omega=Omega, rho=rho, theta=theta, beta=0.0)


def displaced_osc_hamiltonian(lam: float, cutoff: int) -> np.ndarray:
    """b+b + lam (b+ + b) + 1/2 + lam^2 on the truncated basis.

    The c-number completes the square, so the exact spectrum is n + 1/2
    independent of lam.
    """
    lam = float(lam)
    if not math.isfinite(lam):
        raise ValueError("lam must be finite")
    M = int(cutoff)
    n = np.arange(M + 1.0)
    H = np.diag(n + 0.5 + lam * lam)
    if M > 0:
        off = lam * np.sqrt(np.arange(1.0, M + 1.0))
        H += np.diag(off, 1) + np.diag(off, -1)
    return H


def squeezed_osc_hamiltonian(lam: float, cutoff: int) -> np.ndarray:
    """b+b + 1/2 + lam (b+^2 + b^2) on the truncated basis; needs |lam| < 1/2."""
    lam = float(lam)
    if not abs(lam) < 0.5:
        raise ValueError(f"|lam| must be below 1/2, got {lam}")
    M = int(cutoff)
    n = np.arange(M + 1.0)
    H = np.diag(n + 0.5)
    if M > 1:
        pair = lam * np.sqrt(np.arange(1.0, M) * np.arange(2.0, M + 1.0))
        H += np.diag(pair, 2) + np.diag(pair, -2)
    return H
