"""Linear variational (Ritz) eigenvalues in the basis u_i(q) = q^(i+l+1) e^(-q^2/2).

Every matrix element reduces to the half-range Gaussian moments

    M(k) = int_0^inf q^k e^(-q^2) dq = Gamma((k+1)/2) / 2,

so with m_i = i + l + 1 and p = m_i + m_j

    S_ij = M(p),   Q_ij = <u_i|q|u_j> = M(p+1),
    H_ij = m_i m_j M(p-2) - p M(p) + M(p+2)          (kinetic, weak form)
           + l(l+1) M(p-2) - a M(p+1) + M(p+2).

The overlap of this basis loses roughly 1.15 decimal digits per function, so
the default path assembles S, H and Q in extended precision (mpmath),
canonically orthogonalises there, and hands the well-conditioned reduced
matrices C0 and Cq to a double-precision symmetric eigensolver.  Because H is
affine in a, C(a) = C0 - a Cq and one reduction serves every coupling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import mpmath
import numpy as np

from rotosc.errors import ConditioningError

DEFAULT_SIZE = 40
DOUBLE_TAU = 1e-12


def half_gamma_moment(k: int) -> float:
    """M(k) by the recursion M(k) = (k-1)/2 M(k-2), M(0) = sqrt(pi)/2, M(1) = 1/2."""
    if k < 0:
        raise ValueError(f"moment order must be >= 0, got {k}")
    m = math.sqrt(math.pi) / 2.0 if k % 2 == 0 else 0.5
    for j in range(k % 2 + 2, k + 1, 2):
        m *= (j - 1) / 2.0
    return m


def _moments(kmax: int, ctx=None) -> list:
    """M(0..kmax) as floats, or as mpf numbers when an mpmath context is given."""
    if ctx is None:
        out = [math.sqrt(math.pi) / 2.0, 0.5]
        half = 0.5
    else:
        out = [ctx.sqrt(ctx.pi) / 2, ctx.mpf(1) / 2]
        half = ctx.mpf(1) / 2
    for k in range(2, kmax + 1):
        out.append((k - 1) * half * out[k - 2])
    return out[: kmax + 1]


@dataclass(frozen=True)
class GaussianBasis:
    """Non-orthogonal functions q^(i+l+1) exp(-q^2/2), i = 0..size-1."""

    l: int
    size: int

    def __post_init__(self) -> None:
        if self.size < 1:
            raise ValueError(f"basis size must be >= 1, got {self.size}")
        if self.l < 0:
            raise ValueError(f"l must be >= 0, got {self.l}")

    @property
    def exponents(self) -> list[int]:
        return [i + self.l + 1 for i in range(self.size)]

    def evaluate(self, i: int, q):
        return np.asarray(q, dtype=float) ** (i + self.l + 1) * np.exp(-np.asarray(q) ** 2 / 2)

    def _max_moment(self) -> int:
        return 2 * (self.size + self.l) + 2

    def _assemble(self, moments, zeros):
        """(S, K, Q) with H(a) = K - a Q, filled from a moment table."""
        m = self.exponents
        l2 = self.l * (self.l + 1)
        S, K, Q = zeros(), zeros(), zeros()
        for i, mi in enumerate(m):
            for j in range(i, self.size):
                mj = m[j]
                p = mi + mj
                s = moments[p]
                k = (mi * mj + l2) * moments[p - 2] - p * s + 2 * moments[p + 2]
                qv = moments[p + 1]
                S[i, j] = S[j, i] = s
                K[i, j] = K[j, i] = k
                Q[i, j] = Q[j, i] = qv
        return S, K, Q

    def matrices(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        n = self.size
        return self._assemble(_moments(self._max_moment()), lambda: np.zeros((n, n)))


def overlap_matrix(basis: GaussianBasis) -> np.ndarray:
    return basis.matrices()[0]


def position_matrix(basis: GaussianBasis) -> np.ndarray:
    """<u_i| q |u_j>, the a-derivative of -H."""
    return basis.matrices()[2]


def hamiltonian_matrix(basis: GaussianBasis, a: float) -> np.ndarray:
    _, K, Q = basis.matrices()
    return K - a * Q


def solve_generalized(
    H: np.ndarray,
    S: np.ndarray,
    tau: float = DOUBLE_TAU,
    vectors: bool = False,
):
    """Eigenvalues of H v = W S v, ascending, by canonical orthogonalisation.

    S is first scaled to unit diagonal; eigendirections of the scaled S below
    ``tau`` times its largest eigenvalue are dropped.  Returns
    ``(eigenvalues, effective_size)`` or, with ``vectors=True``,
    ``(eigenvalues, effective_size, V)`` where the columns of V are
    S-orthonormal eigenvectors in the original basis.
    """
    H = np.asarray(H, dtype=float)
    S = np.asarray(S, dtype=float)
    if H.shape != S.shape or H.ndim != 2 or H.shape[0] != H.shape[1]:
        raise ValueError(f"pencil shapes do not match: {H.shape} vs {S.shape}")
    diag = np.diag(S)
    if np.any(diag <= 0):
        bad = float(diag.min())
        raise ConditioningError(f"overlap has non-positive diagonal entry {bad:.3e}")
    d = 1.0 / np.sqrt(diag)
    Ss = S * np.outer(d, d)
    Hs = H * np.outer(d, d)
    s, U = np.linalg.eigh(Ss)
    top = s[-1]
    if s[0] < -tau * top:
        raise ConditioningError(
            f"overlap is indefinite: eigenvalue {s[0]:.3e} against largest {top:.3e}"
        )
    keep = s > tau * top
    if not keep.any():
        raise ConditioningError(f"no overlap eigenvalue above {tau:.1e} x {top:.3e}")
    X = U[:, keep] / np.sqrt(s[keep])
    C = X.T @ Hs @ X
    C = (C + C.T) / 2
    if not vectors:
        return np.linalg.eigvalsh(C), int(keep.sum())
    w, Y = np.linalg.eigh(C)
    return w, int(keep.sum()), (d[:, None] * (X @ Y))


@dataclass(frozen=True)
class RitzSpectrum:
    l: int
    a: float
    basis_size: int
    eigenvalues: tuple[float, ...]
    effective_size: int

    def __getitem__(self, nu: int) -> float:
        return self.eigenvalues[nu]

    def __len__(self) -> int:
        return len(self.eigenvalues)


@dataclass(frozen=True)
class ReducedPencil:
    """Canonically orthogonalised pencil: C(a) = C0 - a Cq in an orthonormal frame."""

    l: int
    size: int
    dps: int
    C0: np.ndarray
    Cq: np.ndarray
    effective_size: int

    def matrix(self, a: float) -> np.ndarray:
        C = self.C0 - a * self.Cq
        return (C + C.T) / 2

    def eigenvalues(self, a: float) -> np.ndarray:
        return np.linalg.eigvalsh(self.matrix(a))

    def eigh(self, a: float) -> tuple[np.ndarray, np.ndarray]:
        return np.linalg.eigh(self.matrix(a))


def default_dps(size: int, l: int) -> int:
    """Working digits: the overlap loses about 1.15 digits per function."""
    return 30 + math.ceil(1.2 * (size + l))


@lru_cache(maxsize=64)
def reduced_pencil(l: int, size: int, dps: int | None = None) -> ReducedPencil:
    basis = GaussianBasis(l, size)
    dps = default_dps(size, l) if dps is None else dps
    ctx = mpmath.MPContext()
    ctx.dps = dps
    S, K, Q = basis._assemble(_moments(basis._max_moment(), ctx), lambda: ctx.zeros(size, size))
    d = [1 / ctx.sqrt(S[i, i]) for i in range(size)]
    for i in range(size):
        for j in range(size):
            f = d[i] * d[j]
            S[i, j] *= f
            K[i, j] *= f
            Q[i, j] *= f
    E, U = ctx.eigsy(S)
    top = max(E)
    # filter threshold scales with working precision so the reduced matrices
    # carry double-precision accuracy
    tau = ctx.mpf(10) ** (16 - dps)
    if min(E) < -tau * top:
        raise ConditioningError(
            f"overlap is indefinite at {dps} digits: eigenvalue {float(min(E)):.3e}"
        )
    keep = [k for k in range(size) if E[k] > tau * top]
    X = ctx.matrix(size, len(keep))
    for c, k in enumerate(keep):
        scale = 1 / ctx.sqrt(E[k])
        for i in range(size):
            X[i, c] = U[i, k] * scale
    XT = X.T
    C0 = XT * K * X
    Cq = XT * Q * X
    to_np = lambda M: np.array(M.tolist(), dtype=float)  # noqa: E731
    return ReducedPencil(l, size, dps, to_np(C0), to_np(Cq), len(keep))


def ritz_spectrum(
    l: int, a: float, size: int = DEFAULT_SIZE, precision: str = "extended"
) -> RitzSpectrum:
    """Ascending variational eigenvalues W_nu(a) for a basis of ``size`` functions.

    ``precision="double"`` assembles and reduces in float64 with the 1e-12
    conditioning filter instead; expect only ~18 usable functions that way.
    """
    if size < 1:
        raise ValueError(f"basis size must be >= 1, got {size}")
    if precision == "extended":
        pencil = reduced_pencil(l, size)
        w = pencil.eigenvalues(a)
        eff = pencil.effective_size
    elif precision == "double":
        basis = GaussianBasis(l, size)
        S, K, Q = basis.matrices()
        w, eff = solve_generalized(K - a * Q, S)
    else:
        raise ValueError(f"unknown precision {precision!r}")
    return RitzSpectrum(l=l, a=float(a), basis_size=size,
                        eigenvalues=tuple(float(x) for x in w), effective_size=eff)


def ritz_expectation_q(l: int, a: float, nu: int, size: int = DEFAULT_SIZE) -> float:
    """<q> in the nu-th Ritz eigenvector; equals -dW_nu/da for the Ritz curve."""
    pencil = reduced_pencil(l, size)
    _, Y = pencil.eigh(a)
    y = Y[:, nu]
    return float(y @ pencil.Cq @ y)
