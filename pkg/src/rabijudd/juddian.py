"""Isolated exact eigenstates on the baselines E = N - lam^2.

The two-component eigenproblem is transformed to coherent bosons a = b -/+ lam,
where a finite Ansatz (N coefficients p alongside N+1 coefficients q) closes
the Schroedinger equation exactly provided a compatibility determinant in
x = lam^2 vanishes. This module builds that system, extracts its roots,
reconstructs the finite states in the original Fock basis, and verifies each
point against an independent truncated-basis diagonalization.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .bosons import DEFAULT_CUTOFF, displacement_matrix
from .numerics import (
    Polynomial,
    RootCountError,
    null_vector,
    poly_eval,
    poly_real_roots,
    sym_eig,
    tridiag_det_poly,
)
from .rabi import ModelParams, build_rabi, parity_blocks

_RESONANCE_TOL = 1e-12
_SQRT_HALF = math.sqrt(0.5)


def baseline_energy(N: int, lam: float) -> float:
    """Energy of the N-th baseline, E = N - lam^2 (scaled units)."""
    if int(N) < 1:
        raise ValueError("N must be a positive integer")
    lam = float(lam)
    return N - lam * lam


def build_full_system(N: int, omega_tilde: float, x: float, lam_sign: int = 1) -> np.ndarray:
    """The (2N+1)-dimensional linear system on (p_0..p_{N-1}, q_0..q_N).

    Rows are the coefficient equations of the two spinor components after the
    coherent transform, with E = N - x substituted and lam = sqrt(x):

        A_n: wt q_n + (n - N + 4x) p_n + 2 lam sqrt(n) p_{n-1}
                                       + 2 lam sqrt(n+1) p_{n+1}   (n = 0..N-1)
        A_N: wt q_N + 2 lam sqrt(N) p_{N-1}
        B_n: wt p_n + (n - N) q_n                                   (n = 0..N-1)

    lam_sign = -1 builds the mirrored branch a = b + lam (lam -> -lam), whose
    determinant is identical since the sign flip is a similarity by
    diag((-1)^n).
    """
    N = int(N)
    if N < 1:
        raise ValueError("N must be a positive integer")
    x = float(x)
    if x < 0.0:
        raise ValueError("x = lam^2 cannot be negative")
    if lam_sign not in (1, -1):
        raise ValueError("lam_sign must be +1 or -1")
    wt = float(omega_tilde)
    lam = lam_sign * math.sqrt(x)

    dim = 2 * N + 1
    A = np.zeros((dim, dim))
    for m in range(N + 1):
        A[m, N + m] = wt
        if m <= N - 1:
            A[m, m] = m - N + 4.0 * x
        if m >= 1:
            A[m, m - 1] += 2.0 * lam * math.sqrt(m)
        if m + 1 <= N - 1:
            A[m, m + 1] += 2.0 * lam * math.sqrt(m + 1.0)
    for m in range(N):
        A[N + 1 + m, m] = wt
        A[N + 1 + m, N + m] = m - N
    return A


def _reduced_matrix(N: int, omega_tilde: float, x: float) -> np.ndarray:
    wt = float(omega_tilde)
    n = np.arange(N, dtype=float)
    diag = n - N + 4.0 * x + wt * wt / (N - n)
    A = np.diag(diag)
    if N > 1:
        off = 2.0 * math.sqrt(x) * np.sqrt(n[1:])
        A += np.diag(off, 1) + np.diag(off, -1)
    return A


@dataclass(frozen=True)
class CompatibilitySystem:
    """A builder for the compatibility matrix at given x = lam^2.

    form "full" is the (2N+1)-dimensional system straight from the
    coefficient equations; form "reduced" is the N x N tridiagonal system on
    p alone, obtained by eliminating q_n = wt p_n / (N - n) and
    q_N = -2 lam sqrt(N) p_{N-1} / wt. The reduced form is certified only by
    the root-set equivalence checks against the full form.
    """

    N: int
    omega_tilde: float
    form: str
    builder: Callable[[float], np.ndarray] = field(repr=False)


def compatibility_system(N: int, omega_tilde: float, form: str = "reduced") -> CompatibilitySystem:
    N = int(N)
    if N < 1:
        raise ValueError("N must be a positive integer")
    if form == "full":
        builder = lambda x: build_full_system(N, omega_tilde, x)
    elif form == "reduced":
        builder = lambda x: _reduced_matrix(N, omega_tilde, x)
    else:
        raise ValueError(f"unknown form {form!r}")
    return CompatibilitySystem(N=N, omega_tilde=omega_tilde, form=form, builder=builder)


def compatibility_polynomial(N: int, omega_tilde: float) -> Polynomial:
    """Degree-N polynomial in x = lam^2 whose positive roots locate the points.

    Determinant of the reduced tridiagonal system: diagonal entries
    n - N + 4x + wt^2/(N - n) are linear in x and the squared off-diagonals
    4(n+1)x are as well, so the three-term recurrence assembles the
    coefficients directly. Leading coefficient is 4^N > 0.
    """
    N = int(N)
    if N < 1:
        raise ValueError("N must be a positive integer")
    wt = float(omega_tilde)
    diag = [
        Polynomial((n - N + wt * wt / (N - n), 4.0)) for n in range(N)
    ]
    offdiag_sq = [Polynomial((0.0, 4.0 * (n + 1.0))) for n in range(N - 1)]
    return tridiag_det_poly(diag, offdiag_sq=offdiag_sq)


@dataclass
class JuddianPoint:
    """One isolated exact solution and its verification diagnostics.

    E = N - lam*lam holds as a floating-point identity by construction.
    degeneracy_gap is filled by verify_point; displacement_sign selects the
    coherent branch (a = b - lam for +1, a = b + lam for -1) used when the
    state is reconstructed.
    """

    N: int
    root_index: int
    lam: float
    g: float
    E: float
    det_residual: float
    omega_tilde: float
    displacement_sign: int = 1
    degeneracy_gap: float | None = None

    def model_params(self) -> ModelParams:
        """Physical parameters this point belongs to (omega from g / lam)."""
        omega = 2.0 * self.g / self.lam
        return ModelParams(omega=omega, omega0=2.0 * self.omega_tilde * omega, g=self.g)


def juddian_points(N: int, params: ModelParams) -> list[JuddianPoint]:
    """All Juddian points of order N for the given model, ascending in g.

    Positive roots x of the compatibility polynomial are isolated in
    (1e-12, N) - expanding once to (1e-12, 2N) if needed - then mapped to
    lam = sqrt(x), g = lam omega / 2, E = N - lam^2. At resonance
    (omega_tilde = 1/2) exactly N roots must exist, so a shortfall raises;
    off resonance a shortfall only warns and the found roots are returned.

    omega_tilde <= 0 is rejected: that limit solves every coupling exactly
    and has no isolated points.
    """
    N = int(N)
    if N < 1:
        raise ValueError("N must be a positive integer")
    wt = params.omega_tilde
    if wt <= 0.0:
        raise ValueError(
            "omega_tilde must be positive: the omega0 = 0 limit is exactly "
            "solvable at every coupling and has no isolated points"
        )
    poly = compatibility_polynomial(N, wt)
    resonant = abs(wt - 0.5) <= _RESONANCE_TOL
    try:
        roots = poly_real_roots(poly, (1e-12, float(N)), expected_count=N)
    except RootCountError as err:
        if resonant:
            raise
        warnings.warn(
            f"found {len(err.found)} of {N} compatibility roots at "
            f"omega_tilde={wt:g}; proceeding with those",
            stacklevel=2,
        )
        roots = err.found

    scale = max(abs(c) for c in poly.coeffs)
    points = []
    for idx, x in enumerate(roots):
        lam = math.sqrt(x)
        xx = lam * lam  # evaluate residual at the representable square
        residual = abs(poly_eval(poly, xx)) / (scale * max(1.0, xx) ** poly.degree)
        points.append(
            JuddianPoint(
                N=N,
                root_index=idx,
                lam=lam,
                g=0.5 * lam * params.omega,
                E=N - lam * lam,
                det_residual=residual,
                omega_tilde=wt,
            )
        )
    return points


@dataclass
class JuddianState:
    """Finite coherent-basis coefficients and their Fock-basis image.

    p (length N) weights the coupled spinor component, q (length N+1) the
    diagonal one; for displacement_sign = +1 these are the first and second
    components, for -1 the roles are interchanged. fock_vector is the unit
    state on the assembly basis (index 2n for spin up, 2n+1 for down).
    """

    p: np.ndarray
    q: np.ndarray
    displacement_sign: int
    fock_vector: np.ndarray


def reconstruct_state(point: JuddianPoint, cutoff: int = DEFAULT_CUTOFF) -> JuddianState:
    """Null vector of the full system, assembled in the original Fock basis.

    The (p, q) split solves the full (2N+1) system on the point's coherent
    branch. Columns of the displacement matrix at sign * lam supply the
    coherent number states; the two spinor components are then rotated from
    the coupling-diagonal representation to the assembly basis (the Hadamard
    map up = (c1 + c2)/sqrt(2), down = (c1 - c2)/sqrt(2)) and normalized.
    """
    M = int(cutoff)
    N = point.N
    if M < N:
        raise ValueError(f"cutoff {M} too small for Ansatz order {N}")
    sign = point.displacement_sign
    x = point.lam * point.lam

    system = build_full_system(N, point.omega_tilde, x, lam_sign=sign)
    v = null_vector(system)
    p = v[:N].copy()
    q = v[N:].copy()
    for comp in p:
        if abs(comp) > 1e-12:
            if comp < 0.0:
                p, q = -p, -q
            break
    if abs(q[N]) <= 1e-12:
        raise RuntimeError("degenerate null vector: q_N vanished")

    D = displacement_matrix(sign * point.lam, M)
    coupled = D[:, :N] @ p
    diagonal = D[:, : N + 1] @ q
    if sign == 1:
        comp1, comp2 = coupled, diagonal
    else:
        comp1, comp2 = diagonal, coupled

    fock = np.empty(2 * (M + 1))
    fock[0::2] = _SQRT_HALF * (comp1 + comp2)
    fock[1::2] = _SQRT_HALF * (comp1 - comp2)
    fock /= math.sqrt(float(fock @ fock))
    return JuddianState(p=p, q=q, displacement_sign=sign, fock_vector=fock)


def alternate_branch(point: JuddianPoint) -> JuddianPoint:
    """The same point on the mirrored coherent branch (a = b + lam for -1)."""
    flipped = JuddianPoint(
        N=point.N,
        root_index=point.root_index,
        lam=point.lam,
        g=point.g,
        E=point.E,
        det_residual=point.det_residual,
        omega_tilde=point.omega_tilde,
        displacement_sign=-point.displacement_sign,
        degeneracy_gap=point.degeneracy_gap,
    )
    return flipped


@dataclass(frozen=True)
class VerificationReport:
    """Independent diagnostics for one point at a given cutoff."""

    point: JuddianPoint
    cutoff: int
    energy_plus: float
    energy_minus: float
    level_plus: int
    level_minus: int
    degeneracy_gap: float
    eigen_residual: float


def verify_point(point: JuddianPoint, cutoff: int = DEFAULT_CUTOFF) -> VerificationReport:
    """Cross-check one point against truncated-basis diagonalization.

    Diagonalizes both parity blocks at g = point.g, selects the eigenvalue
    nearest E in each, and records the opposite-parity gap |E+ - E-| (also
    written back to point.degeneracy_gap). The reconstructed state's
    eigen-residual ||(H - E) psi|| on the same cutoff is included.

    Raises RuntimeError when neither block has an eigenvalue within 1e-3 of
    E - the signature of an under-sized cutoff or an invalid point.
    """
    M = int(cutoff)
    params = point.model_params()
    block_plus, block_minus = parity_blocks(params, M)

    nearest = []
    for block in (block_plus, block_minus):
        values = sym_eig(block.matrix).values
        idx = int(np.argmin(np.abs(values - point.E)))
        dist = abs(values[idx] - point.E)
        if dist > 1e-3:
            raise RuntimeError(
                f"no eigenvalue within 1e-3 of E={point.E:.6f} in the "
                f"parity {block.parity:+d} block at cutoff {M}; increase the cutoff"
            )
        nearest.append((idx, float(values[idx])))
    (idx_p, e_p), (idx_m, e_m) = nearest
    gap = abs(e_p - e_m)

    state = reconstruct_state(point, M)
    H = build_rabi(params, M, scaled=True)
    resid = H @ state.fock_vector - point.E * state.fock_vector
    eigen_residual = math.sqrt(float(resid @ resid))

    point.degeneracy_gap = gap
    return VerificationReport(
        point=point,
        cutoff=M,
        energy_plus=e_p,
        energy_minus=e_m,
        level_plus=idx_p,
        level_minus=idx_m,
        degeneracy_gap=gap,
        eigen_residual=eigen_residual,
    )
