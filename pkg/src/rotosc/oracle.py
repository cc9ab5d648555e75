"""Independent finite-difference eigensolver for the radial equation.

Three-point differences on a Dirichlet box (0, q_max) give a symmetric
tridiagonal matrix with diagonal 2/h^2 + V(q_k) and off-diagonal -1/h^2.  Its
lowest eigenvalues are found by Sturm-count bisection, then one Richardson
step between spacings h and h/2 removes the O(h^2) error.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigvalsh_tridiagonal

DEFAULT_POINTS = 4000


@dataclass(frozen=True)
class FdGrid:
    """Interior nodes q_k = k h, k = 1..points, with h = q_max / (points + 1)."""

    q_max: float
    points: int

    def __post_init__(self) -> None:
        if not self.q_max > 0:
            raise ValueError(f"q_max must be positive, got {self.q_max}")
        if self.points < 1:
            raise ValueError(f"need at least one grid point, got {self.points}")

    @classmethod
    def default(cls, a: float, points: int = DEFAULT_POINTS) -> FdGrid:
        return cls(q_max=max(12.0, a + 12.0), points=points)

    @property
    def spacing(self) -> float:
        return self.q_max / (self.points + 1)

    @property
    def nodes(self) -> np.ndarray:
        return self.spacing * np.arange(1, self.points + 1)

    def halved(self) -> FdGrid:
        """Same box with exactly half the spacing."""
        return FdGrid(self.q_max, 2 * self.points + 1)

    def is_resolved(self, a: float) -> bool:
        """h^2 max|a q - q^2| < 1; the centrifugal term is excluded since
        h^2 l(l+1)/h^2 = l(l+1) at the first node for any h."""
        q = self.nodes
        return float(self.spacing**2 * np.max(np.abs(q * q - a * q))) < 1.0


def fd_matrix(l: int, a: float, grid: FdGrid) -> tuple[np.ndarray, np.ndarray]:
    """(diagonal, off-diagonal) of the discretised operator."""
    h = grid.spacing
    q = grid.nodes
    diag = 2.0 / h**2 + l * (l + 1) / q**2 - a * q + q * q
    off = np.full(grid.points - 1, -1.0 / h**2)
    return diag, off


def sturm_count(diag: np.ndarray, off: np.ndarray, x: float) -> int:
    """Number of eigenvalues of the tridiagonal matrix strictly below x."""
    count = 0
    d = 1.0
    tiny = np.finfo(float).tiny
    for k in range(len(diag)):
        e2 = off[k - 1] ** 2 if k else 0.0
        d = diag[k] - x - e2 / d
        if d == 0.0:
            d = -tiny
        if d < 0.0:
            count += 1
    return count


def tridiagonal_lowest(diag: np.ndarray, off: np.ndarray, count: int) -> np.ndarray:
    """Lowest ``count`` eigenvalues by bisection on the Sturm count (LAPACK stebz)."""
    return eigvalsh_tridiagonal(
        diag, off, select="i", select_range=(0, count - 1), lapack_driver="stebz", tol=0.0
    )


def fd_raw(l: int, a: float, grid: FdGrid, count: int) -> np.ndarray:
    if count > grid.points:
        raise ValueError(f"asked for {count} eigenvalues from {grid.points} grid modes")
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    diag, off = fd_matrix(l, a, grid)
    return tridiagonal_lowest(diag, off, count)


def fd_spectrum(
    l: int, a: float, grid: FdGrid | None = None, count: int = 4, extrapolate: bool = True
) -> np.ndarray:
    """Lowest ``count`` eigenvalues, Richardson-extrapolated from h and h/2."""
    grid = FdGrid.default(a) if grid is None else grid
    coarse = fd_raw(l, a, grid, count)
    if not extrapolate:
        return coarse
    fine = fd_raw(l, a, grid.halved(), count)
    return (4.0 * fine - coarse) / 3.0
