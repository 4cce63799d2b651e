"""Rabi Hamiltonian on the truncated basis: assembly, parity decomposition,
spectrum sweeps, and opposite-parity level-crossing detection.

Basis ordering is (n, spin) lexicographic with the spin-up (sigma_z = +1)
state first, so index(n, up) = 2n and index(n, down) = 2n + 1; output files
built on this ordering are reproducible bit-for-bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .bosons import DEFAULT_CUTOFF, ladder_matrices
from .numerics import _sturm_eigval_index, _sturm_lowest_batch

_SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]])
_SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]])


@dataclass(frozen=True)
class ModelParams:
    """Physical couplings (omega, omega0, g) with the rescaled derived pair.

    omega_tilde = omega0 / (2 omega) and lam = 2 g / omega are properties, so
    they can never go stale. Energies of the scaled Hamiltonian are in units
    of omega.
    """

    omega: float = 1.0
    omega0: float = 1.0
    g: float = 0.0

    def __post_init__(self):
        for name in ("omega", "omega0", "g"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if self.omega <= 0.0:
            raise ValueError("omega must be positive")

    @property
    def omega_tilde(self) -> float:
        return self.omega0 / (2.0 * self.omega)

    @property
    def lam(self) -> float:
        return 2.0 * self.g / self.omega

    def with_g(self, g: float) -> "ModelParams":
        return replace(self, g=float(g))


@dataclass(frozen=True)
class ParityBlock:
    """One parity sector: the states it contains and its tridiagonal matrix.

    basis_map[k] = (n, s) is the Fock level and sigma_z eigenvalue of the
    k-th block basis state; every entry satisfies -s cos(pi n) = parity.
    """

    parity: int
    basis_map: list[tuple[int, int]]
    matrix: np.ndarray


def build_rabi(params: ModelParams, cutoff: int = DEFAULT_CUTOFF, scaled: bool = True) -> np.ndarray:
    """Rabi Hamiltonian as a dense symmetric 2(M+1) matrix.

    Scaled form: omega_tilde sigma_z + b+b + lam (b+ + b) sigma_x.
    Unscaled multiplies by omega, restoring the physical energy units.
    """
    M = int(cutoff)
    create, annihilate, number = ladder_matrices(M)
    eye_f = np.eye(M + 1)
    eye_s = np.eye(2)
    H = (
        params.omega_tilde * np.kron(eye_f, _SIGMA_Z)
        + np.kron(number, eye_s)
        + params.lam * np.kron(create + annihilate, _SIGMA_X)
    )
    if not scaled:
        H *= params.omega
    return H


def parity_matrix(cutoff: int) -> np.ndarray:
    """Diagonal parity operator -sigma_z cos(pi b+b) on the assembly basis."""
    M = int(cutoff)
    diag = np.empty(2 * (M + 1))
    signs = (-1.0) ** np.arange(M + 1)
    diag[0::2] = -signs  # spin up: -(+1) cos(pi n)
    diag[1::2] = signs
    return np.diag(diag)


def _block_arrays(params: ModelParams, cutoff: int, parity: int) -> tuple[np.ndarray, np.ndarray]:
    M = int(cutoff)
    n = np.arange(M + 1)
    spins = -parity * (-1.0) ** n
    diag = n + params.omega_tilde * spins
    off = params.lam * np.sqrt(np.arange(1.0, M + 1.0))
    return diag, off


def parity_blocks(params: ModelParams, cutoff: int = DEFAULT_CUTOFF) -> tuple[ParityBlock, ParityBlock]:
    """The two exact parity sectors, (+1 block, -1 block), each of dim M+1.

    Within the sector of parity pi, Fock level n carries spin
    s = -pi (-1)^n; the coupling changes n by one and flips the spin, so it
    stays inside the sector even after truncation.
    """
    blocks = []
    for parity in (1, -1):
        diag, off = _block_arrays(params, cutoff, parity)
        matrix = np.diag(diag)
        if diag.size > 1:
            matrix += np.diag(off, 1) + np.diag(off, -1)
        basis_map = [(int(n), int(-parity * (-1) ** n)) for n in range(int(cutoff) + 1)]
        blocks.append(ParityBlock(parity=parity, basis_map=basis_map, matrix=matrix))
    return blocks[0], blocks[1]


@dataclass(frozen=True)
class SpectrumTable:
    """Lowest-k energies per parity over a strictly increasing g grid.

    levels_plus[m] / levels_minus[m] are ascending within each row. Energies
    are eigenvalues of the scaled Hamiltonian unless scaled=False, in which
    case they carry the omega factor.
    """

    g_values: np.ndarray
    levels_plus: np.ndarray
    levels_minus: np.ndarray
    params: ModelParams
    cutoff: int
    scaled: bool = True


@dataclass(frozen=True)
class Crossing:
    """A degeneracy between level i of the + block and level j of the - block."""

    g_star: float
    E_star: float
    level_plus: int
    level_minus: int


def spectrum_sweep(
    params: ModelParams,
    g_grid,
    cutoff: int = DEFAULT_CUTOFF,
    levels_per_block: int = 8,
    scaled: bool = True,
) -> SpectrumTable:
    """Lowest levels_per_block energies of each parity at every grid point.

    Grid points are independent of one another; they are evaluated in one
    lockstep Sturm bisection per parity purely as an optimization.
    """
    g_values = np.asarray(g_grid, dtype=float)
    if g_values.ndim != 1 or g_values.size == 0:
        raise ValueError("g grid must be a nonempty 1-D sequence")
    if g_values.size > 1 and not np.all(np.diff(g_values) > 0):
        raise ValueError("g grid must be strictly increasing")
    M = int(cutoff)
    k = int(levels_per_block)
    if not 1 <= k <= M + 1:
        raise ValueError(f"levels_per_block={k} out of range for cutoff {M}")

    lams = 2.0 * g_values / params.omega
    e_base = np.sqrt(np.arange(1.0, M + 1.0))
    e2_rows = (lams[:, None] * e_base[None, :]) ** 2
    out = []
    for parity in (1, -1):
        diag, _ = _block_arrays(params, cutoff, parity)
        levels = _sturm_lowest_batch(diag, e2_rows, k)
        out.append(levels if scaled else params.omega * levels)
    return SpectrumTable(
        g_values=g_values,
        levels_plus=out[0],
        levels_minus=out[1],
        params=params,
        cutoff=M,
        scaled=scaled,
    )


def _eigval_at(
    params: ModelParams, cutoff: int, parity: int, index: int, scaled: bool
) -> float:
    diag, off = _block_arrays(params, cutoff, parity)
    e2 = off * off
    radius = np.zeros(diag.size)
    if diag.size > 1:
        radius[:-1] += np.abs(off)
        radius[1:] += np.abs(off)
    lo = float(np.min(diag - radius))
    hi = float(np.max(diag + radius))
    val = _sturm_eigval_index(diag.tolist(), e2.tolist(), index, lo, hi)
    return val if scaled else params.omega * val


def find_crossings(
    table: SpectrumTable,
    params: ModelParams | None = None,
    cutoff: int | None = None,
    tol: float = 1e-9,
) -> list[Crossing]:
    """Opposite-parity degeneracies found on the table and refined in g.

    Every (i, j) pair among the tracked levels is scanned for sign changes of
    E+_i - E-_j between adjacent grid points; each sign change is refined by
    safeguarded bisection (with secant acceleration) until |E+ - E-| <= tol.
    Results are ascending in g_star.

    Raises RuntimeError, naming the grid cell and level pair, if a bracket
    collapses without reaching tol - the symptom of a non-isolated crossing
    relative to the grid resolution.
    """
    if params is None:
        params = table.params
    if cutoff is None:
        cutoff = table.cutoff
    k = table.levels_plus.shape[1]
    g = table.g_values
    crossings: list[Crossing] = []

    for i in range(k):
        for j in range(k):
            diff = table.levels_plus[:, i] - table.levels_minus[:, j]
            exact = diff == 0.0
            for m in np.nonzero(exact)[0]:
                crossings.append(
                    Crossing(
                        g_star=float(g[m]),
                        E_star=float(table.levels_plus[m, i]),
                        level_plus=i,
                        level_minus=j,
                    )
                )
            neg = diff < 0.0
            for m in range(g.size - 1):
                if exact[m] or exact[m + 1] or neg[m] == neg[m + 1]:
                    continue
                crossings.append(
                    _refine_crossing(
                        params, cutoff, table.scaled,
                        i, j,
                        float(g[m]), float(g[m + 1]),
                        float(diff[m]), float(diff[m + 1]),
                        tol,
                    )
                )

    crossings.sort(key=lambda c: (c.g_star, c.level_plus, c.level_minus))
    deduped: list[Crossing] = []
    for c in crossings:
        if deduped and (
            c.level_plus == deduped[-1].level_plus
            and c.level_minus == deduped[-1].level_minus
            and abs(c.g_star - deduped[-1].g_star) <= 1e-12 * max(1.0, abs(c.g_star))
        ):
            continue
        deduped.append(c)
    return deduped


def _refine_crossing(
    params: ModelParams,
    cutoff: int,
    scaled: bool,
    i: int,
    j: int,
    ga: float,
    gb: float,
    fa: float,
    fb: float,
    tol: float,
) -> Crossing:
    cell = (ga, gb)

    def gap(gv: float) -> tuple[float, float, float]:
        p = params.with_g(gv)
        ep = _eigval_at(p, cutoff, 1, i, scaled)
        em = _eigval_at(p, cutoff, -1, j, scaled)
        return ep - em, ep, em

    side = 0
    for _ in range(120):
        # regula falsi with the Illinois anti-stall weighting, safeguarded
        # inside the shrinking bracket
        if fb != fa:
            gs = (ga * fb - gb * fa) / (fb - fa)
            if not ga < gs < gb:
                gs = 0.5 * (ga + gb)
        else:
            gs = 0.5 * (ga + gb)
        fm, ep, em = gap(gs)
        if abs(fm) <= tol:
            return Crossing(
                g_star=gs, E_star=0.5 * (ep + em), level_plus=i, level_minus=j
            )
        if (fm < 0.0) == (fa < 0.0):
            ga, fa = gs, fm
            if side == -1:
                fb *= 0.5
            side = -1
        else:
            gb, fb = gs, fm
            if side == 1:
                fa *= 0.5
            side = 1
        if gb - ga <= 1e-15 * max(1.0, abs(gb)):
            break
    raise RuntimeError(
        f"crossing of levels (+{i}, -{j}) in cell g = [{cell[0]:.6g}, {cell[1]:.6g}] "
        f"did not resolve to |dE| <= {tol:g}; grid too coarse or crossing not isolated"
    )
