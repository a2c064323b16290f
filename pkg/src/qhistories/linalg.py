"""Dense complex linear algebra: Hermitian spectra with degeneracy clustering,
unitary propagators from piecewise-constant Hamiltonians, tensor products.

All operators are dense ``complex128`` matrices. Degenerate eigenvalues are
grouped into clusters because degeneracy decides which virtual paths are
allowed to interfere; the clustering tolerance is therefore an explicit,
caller-overridable knob rather than something hidden in the eigensolver.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionCapError, EigensolverError, NotHermitianError

HERMITICITY_TOL = 1e-10
DEFAULT_CLUSTER_TOL = 1e-9
DEFAULT_DIM_CAP = 4096


def _frozen(a: np.ndarray) -> np.ndarray:
    out = np.array(a, dtype=complex, order="C")
    out.setflags(write=False)
    return out


def as_matrix(m, dim: int | None = None) -> np.ndarray:
    """Coerce to a finite square complex matrix, optionally of size ``dim``."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a.view(float))):
        raise ValueError("matrix has non-finite entries")
    if dim is not None and a.shape[0] != dim:
        raise ValueError(f"expected a {dim}x{dim} matrix, got {a.shape[0]}x{a.shape[1]}")
    return a


def as_vector(v, dim: int | None = None) -> np.ndarray:
    """Coerce to a finite 1-D complex vector, optionally of length ``dim``."""
    a = np.asarray(v, dtype=complex).reshape(-1)
    if a.size == 0:
        raise ValueError("empty vector")
    if not np.all(np.isfinite(a.view(float))):
        raise ValueError("vector has non-finite entries")
    if dim is not None and a.size != dim:
        raise ValueError(f"expected a vector of length {dim}, got {a.size}")
    return a


def normalized(v, tol: float = HERMITICITY_TOL) -> np.ndarray:
    """Return ``v`` if its norm is 1 within ``tol``, else raise."""
    a = as_vector(v)
    n = np.linalg.norm(a)
    if abs(n - 1.0) > tol:
        raise ValueError(f"vector is not normalized: |norm - 1| = {abs(n - 1.0):.3e}")
    return a


def max_asymmetry(m: np.ndarray) -> float:
    """max |H - H^dagger| over entries."""
    return float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0


def require_hermitian(m, *, tol: float = HERMITICITY_TOL, name: str = "matrix") -> np.ndarray:
    a = as_matrix(m)
    asym = max_asymmetry(a)
    if asym > tol:
        raise NotHermitianError(
            f"{name} is not Hermitian: max |H - H^dagger| entry = {asym:.3e} (tol {tol:.1e})",
            asym,
        )
    return a


def fix_phase(v: np.ndarray) -> np.ndarray:
    """Rotate a vector's global phase so its largest-magnitude component is
    real and positive (ties broken by lowest index).

    Individual path amplitudes are gauge dependent; this pins one gauge so
    repeated runs produce identical amplitudes.
    """
    idx = int(np.argmax(np.abs(v)))
    pivot = v[idx]
    mag = abs(pivot)
    if mag == 0.0:
        return v
    out = v * (pivot.conjugate() / mag)
    out[idx] = mag
    return out


@dataclass(frozen=True, eq=False)
class EigenCluster:
    """One (possibly degenerate) eigenvalue: its eigenspace and projector.

    ``basis`` holds orthonormal eigenvectors as columns, in the fixed gauge.
    """

    eigenvalue: float
    multiplicity: int
    basis: np.ndarray
    projector: np.ndarray


@dataclass(frozen=True, eq=False)
class SpectralDecomposition:
    """Clustered eigendecomposition of a Hermitian matrix.

    Clusters are sorted by ascending eigenvalue. The concatenated cluster
    bases form a full orthonormal eigenbasis; ``flat_basis`` has those
    vectors as columns and ``cluster_of`` maps each column to its cluster.
    """

    clusters: tuple[EigenCluster, ...]
    flat_basis: np.ndarray = field(repr=False)
    flat_eigenvalues: np.ndarray = field(repr=False)
    cluster_of: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return self.flat_basis.shape[0]

    @property
    def cluster_count(self) -> int:
        return len(self.clusters)

    def members(self, cluster_index: int) -> np.ndarray:
        """Indices into the flat eigenbasis belonging to one cluster."""
        return np.flatnonzero(self.cluster_of == cluster_index)

    def reconstruct(self) -> np.ndarray:
        """Sum of eigenvalue * projector over clusters."""
        dim = self.dim
        out = np.zeros((dim, dim), dtype=complex)
        for c in self.clusters:
            out += c.eigenvalue * c.projector
        return out


def spectral_decompose(
    matrix,
    cluster_tol: float = DEFAULT_CLUSTER_TOL,
    *,
    hermiticity_tol: float = HERMITICITY_TOL,
) -> SpectralDecomposition:
    """Eigendecompose a Hermitian matrix, merging near-equal eigenvalues.

    Eigenvalues whose consecutive gap is at most ``cluster_tol * max(1, |H|)``
    (|H| = spectral norm, i.e. the largest eigenvalue magnitude) are merged
    into one cluster and reported at their mean. Each eigenvector is phase
    fixed, so the output is deterministic for identical input.
    """
    if cluster_tol <= 0.0:
        raise ValueError("cluster_tol must be positive")
    h = require_hermitian(matrix, tol=hermiticity_tol)
    try:
        eigenvalues, vectors = np.linalg.eigh(h)
    except np.linalg.LinAlgError as exc:
        raise EigensolverError(f"eigensolver did not converge on a {h.shape[0]}x{h.shape[0]} matrix: {exc}") from exc

    scale = max(1.0, float(np.max(np.abs(eigenvalues))) if eigenvalues.size else 0.0)
    gap = cluster_tol * scale

    # Consecutive-gap merging; eigh already returns ascending eigenvalues.
    boundaries = [0]
    for i in range(1, eigenvalues.size):
        if eigenvalues[i] - eigenvalues[i - 1] > gap:
            boundaries.append(i)
    boundaries.append(eigenvalues.size)

    clusters = []
    flat_cols = []
    cluster_of = np.empty(eigenvalues.size, dtype=int)
    for ci in range(len(boundaries) - 1):
        lo, hi = boundaries[ci], boundaries[ci + 1]
        block = np.stack([fix_phase(vectors[:, j].copy()) for j in range(lo, hi)], axis=1)
        projector = block @ block.conj().T
        projector = (projector + projector.conj().T) / 2.0
        clusters.append(
            EigenCluster(
                eigenvalue=float(np.mean(eigenvalues[lo:hi])),
                multiplicity=hi - lo,
                basis=_frozen(block),
                projector=_frozen(projector),
            )
        )
        flat_cols.append(block)
        cluster_of[lo:hi] = ci

    flat = np.concatenate(flat_cols, axis=1)
    flat_vals = np.concatenate([[c.eigenvalue] * c.multiplicity for c in clusters])
    cluster_of.setflags(write=False)
    return SpectralDecomposition(
        clusters=tuple(clusters),
        flat_basis=_frozen(flat),
        flat_eigenvalues=np.asarray(flat_vals, dtype=float),
        cluster_of=cluster_of,
    )


@dataclass(frozen=True, eq=False)
class HermitianObservable:
    """A measured quantity: Hermitian matrix plus its clustered spectrum."""

    matrix: np.ndarray
    spectrum: SpectralDecomposition
    label: str = ""

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def cluster_count(self) -> int:
        return self.spectrum.cluster_count

    def eigenvalues(self) -> tuple[float, ...]:
        return tuple(c.eigenvalue for c in self.spectrum.clusters)


def observable(
    matrix,
    label: str = "",
    cluster_tol: float = DEFAULT_CLUSTER_TOL,
    basis=None,
) -> HermitianObservable:
    """Build a HermitianObservable (validates Hermiticity, clusters spectrum).

    ``basis`` optionally supplies the diagonalizing eigenbasis to use for
    virtual paths, as columns ordered in ascending-eigenvalue cluster blocks.
    Any orthonormal basis diagonalizing the matrix is admissible; outcome
    probabilities do not depend on the choice, but individual path
    amplitudes do, and the worked examples pin their natural product bases.
    """
    h = require_hermitian(matrix, name=f"observable {label!r}" if label else "observable")
    spectrum = spectral_decompose(h, cluster_tol)
    if basis is not None:
        spectrum = _with_basis(h, spectrum, as_matrix(basis, h.shape[0]))
    return HermitianObservable(matrix=_frozen(h), spectrum=spectrum, label=label)


def _with_basis(h: np.ndarray, spectrum: SpectralDecomposition, basis: np.ndarray) -> SpectralDecomposition:
    """Rebuild a decomposition around a caller-chosen diagonalizing basis."""
    dim = h.shape[0]
    gram_dev = float(np.max(np.abs(basis.conj().T @ basis - np.eye(dim))))
    if gram_dev > HERMITICITY_TOL:
        raise ValueError(f"supplied eigenbasis is not orthonormal: max |gram - I| = {gram_dev:.3e}")
    scale = max(1.0, float(np.max(np.abs(spectrum.flat_eigenvalues))))
    clusters = []
    flat_cols = []
    col = 0
    for c in spectrum.clusters:
        block = basis[:, col : col + c.multiplicity]
        residual = float(np.max(np.abs(h @ block - c.eigenvalue * block)))
        if residual > 1e-8 * scale:
            raise ValueError(
                f"supplied eigenbasis columns {col}..{col + c.multiplicity - 1} do not span the "
                f"eigenvalue-{c.eigenvalue:.6g} eigenspace (residual {residual:.3e})"
            )
        projector = block @ block.conj().T
        projector = (projector + projector.conj().T) / 2.0
        clusters.append(
            EigenCluster(
                eigenvalue=c.eigenvalue,
                multiplicity=c.multiplicity,
                basis=_frozen(block),
                projector=_frozen(projector),
            )
        )
        flat_cols.append(block)
        col += c.multiplicity
    return SpectralDecomposition(
        clusters=tuple(clusters),
        flat_basis=_frozen(np.concatenate(flat_cols, axis=1)),
        flat_eigenvalues=spectrum.flat_eigenvalues,
        cluster_of=spectrum.cluster_of,
    )


@dataclass(frozen=True, eq=False)
class Propagator:
    """A unitary evolution over a time interval."""

    matrix: np.ndarray
    interval: tuple[float, float]

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


def segment_unitary(hamiltonian, duration: float) -> np.ndarray:
    """exp(-i H dt) for one Hermitian segment, via the spectral decomposition.

    Diagonalizing instead of series-expanding keeps the result unitary to
    eigensolver accuracy.
    """
    h = require_hermitian(hamiltonian, name="hamiltonian segment")
    if duration < 0.0:
        raise ValueError(f"segment duration must be >= 0, got {duration}")
    if duration == 0.0:
        return np.eye(h.shape[0], dtype=complex)
    try:
        eigenvalues, vectors = np.linalg.eigh(h)
    except np.linalg.LinAlgError as exc:
        raise EigensolverError(f"eigensolver did not converge on a hamiltonian segment: {exc}") from exc
    phases = np.exp(-1j * eigenvalues * duration)
    return (vectors * phases) @ vectors.conj().T


def propagator(segments, *, t_start: float = 0.0) -> Propagator:
    """Time-ordered product of segment exponentials.

    ``segments`` is an ordered list of ``(hamiltonian, duration)`` pairs,
    earliest first; the later segment's exponential is applied on the left.
    """
    segs = list(segments)
    if not segs:
        raise ValueError("propagator needs at least one segment")
    dim = as_matrix(segs[0][0]).shape[0]
    u = np.eye(dim, dtype=complex)
    total = 0.0
    for ham, duration in segs:
        u = segment_unitary(as_matrix(ham, dim), float(duration)) @ u
        total += float(duration)
    return Propagator(matrix=_frozen(u), interval=(t_start, t_start + total))


def tensor_product(a, b, *, dim_cap: int = DEFAULT_DIM_CAP) -> np.ndarray:
    """Kronecker product of two vectors or two matrices.

    The first operand indexes the slower (major) axis, so
    ``tensor_product(x, y)[i*dim(y) + j] = x[i] * y[j]``.
    """
    aa = np.asarray(a, dtype=complex)
    bb = np.asarray(b, dtype=complex)
    if aa.ndim != bb.ndim or aa.ndim not in (1, 2):
        raise ValueError(f"operands must both be vectors or both matrices, got ndim {aa.ndim} and {bb.ndim}")
    out_dim = aa.shape[0] * bb.shape[0]
    if out_dim > dim_cap:
        raise DimensionCapError(f"tensor product dimension {out_dim} exceeds cap {dim_cap}")
    return np.kron(aa, bb)


@dataclass(frozen=True, eq=False)
class DensityOperator:
    """A density matrix: Hermitian, unit trace, positive semidefinite."""

    matrix: np.ndarray

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


def density_operator(matrix, *, tol: float = HERMITICITY_TOL) -> DensityOperator:
    """Validate and wrap a density matrix."""
    rho = require_hermitian(matrix, tol=tol, name="density operator")
    trace = complex(np.trace(rho))
    if abs(trace - 1.0) > tol:
        raise ValueError(f"density operator trace is {trace:.12g}, expected 1 within {tol:.1e}")
    eigenvalues = np.linalg.eigvalsh(rho)
    if float(eigenvalues.min()) < -tol:
        raise ValueError(f"density operator has negative eigenvalue {eigenvalues.min():.3e}")
    return DensityOperator(matrix=_frozen(rho))


def density_branches(rho: DensityOperator | np.ndarray, *, weight_tol: float = 1e-14) -> list[tuple[float, np.ndarray]]:
    """Decompose a density operator into (weight, pure state) branches.

    Zero-weight branches are dropped; weights sum to 1 up to the dropped mass.
    """
    m = rho.matrix if isinstance(rho, DensityOperator) else as_matrix(rho)
    eigenvalues, vectors = np.linalg.eigh(m)
    branches = []
    for i in range(eigenvalues.size):
        w = float(eigenvalues[i])
        if w > weight_tol:
            branches.append((w, fix_phase(vectors[:, i].copy())))
    return branches
