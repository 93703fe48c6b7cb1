"""Dense Hermitian operator algebra.

Operators are plain complex numpy arrays of shape (d, d).  The d*d Hermitian
operators on a d-level system form a real inner-product space under the
Hilbert-Schmidt product tr(A^dag B); everything in this package lives in that
space.  This module provides the inner product, Hermitian eigendecomposition
with a fixed (descending) spectral order, Gram-Schmidt orthogonalization of
operator sequences, and the generalized Gell-Mann basis.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, InvalidOperatorError, RankDeficientError

__all__ = [
    "OperatorBasis",
    "require_hermitian",
    "hs_inner",
    "hs_norm",
    "hs_gram",
    "eig_hermitian",
    "gram_schmidt_operators",
    "gell_mann_basis",
    "random_hermitian",
]

HERMITICITY_TOL = 1e-12


def require_hermitian(a, tol=HERMITICITY_TOL, name="operator"):
    """Return ``a`` as a complex square array, raising if it is not Hermitian.

    The array is returned read-only; entries are never symmetrized, a
    deviation larger than ``tol`` is an error.
    """
    arr = np.asarray(a, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise DimensionError(f"{name} must be a square matrix, got shape {arr.shape}")
    dev = float(np.max(np.abs(arr - arr.conj().T))) if arr.size else 0.0
    if dev > tol:
        raise InvalidOperatorError(
            f"{name} is not Hermitian: max |A - A^dag| = {dev:.3e} > {tol:.1e}"
        )
    out = arr.copy()
    out.setflags(write=False)
    return out


def hs_inner(a, b):
    """Hilbert-Schmidt inner product tr(A^dag B).

    Returns a complex scalar; for Hermitian arguments the imaginary part is
    zero up to rounding.
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise DimensionError(f"operator shapes differ: {a.shape} vs {b.shape}")
    return complex(np.sum(a.conj() * b))


def hs_norm(a):
    """Hilbert-Schmidt (Frobenius) norm ||A|| = sqrt(tr A^dag A)."""
    return float(np.linalg.norm(np.asarray(a)))


def hs_gram(ops):
    """Gram matrix G[i, j] = tr(A_i^dag A_j), complex, for a stack of operators."""
    stack = np.asarray(ops, dtype=complex)
    return np.einsum("aij,bij->ab", stack.conj(), stack)


def eig_hermitian(a, tol=HERMITICITY_TOL):
    """Eigendecomposition of a Hermitian operator, eigenvalues descending.

    Parameters
    ----------
    a : array_like
        Hermitian matrix (validated within ``tol``).
    tol : float
        Maximum allowed deviation |A - A^dag|.

    Returns
    -------
    (eigenvalues, eigenvectors)
        Real eigenvalues sorted in descending order, and the matching
        orthonormal eigenvectors as the columns of the second array.  The
        minimum eigenvalue is always the last entry.
    """
    arr = require_hermitian(a, tol=tol)
    w, v = np.linalg.eigh(arr)
    order = np.argsort(w)[::-1]
    return w[order], v[:, order]


@dataclass(frozen=True)
class OperatorBasis:
    """An ordered set of Hermitian operators in a common dimension.

    ``kind`` tags the role of the set: "orthonormal" sets are checked for
    tr(T_i T_j) = delta_ij on construction; "cob" and "other" sets are not.
    A basis is *complete* when it has dim**2 elements; partial orthonormal
    sets (e.g. Gram-Schmidt output of a short sequence) are allowed.
    """

    dim: int
    elements: np.ndarray
    kind: str = "other"

    _ORTHO_TOL = 1e-10

    def __post_init__(self):
        stack = np.asarray(self.elements, dtype=complex)
        if stack.ndim != 3 or stack.shape[1] != self.dim or stack.shape[2] != self.dim:
            raise DimensionError(
                f"expected shape (n, {self.dim}, {self.dim}), got {stack.shape}"
            )
        if self.kind not in ("orthonormal", "cob", "other"):
            raise ValueError(f"unknown basis kind {self.kind!r}")
        herm_dev = float(np.max(np.abs(stack - stack.conj().transpose(0, 2, 1))))
        if herm_dev > HERMITICITY_TOL:
            raise InvalidOperatorError(
                f"basis elements not Hermitian: max deviation {herm_dev:.3e}"
            )
        if self.kind == "orthonormal":
            gram = hs_gram(stack)
            dev = float(np.max(np.abs(gram - np.eye(len(stack)))))
            if dev > self._ORTHO_TOL:
                raise InvalidOperatorError(
                    f"set is not orthonormal: max |Gram - I| = {dev:.3e}"
                )
        stack = stack.copy()
        stack.setflags(write=False)
        object.__setattr__(self, "elements", stack)

    @property
    def is_complete(self):
        return len(self.elements) == self.dim * self.dim

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i):
        return self.elements[i]


def gram_schmidt_operators(seq, tol=1e-10):
    """Orthonormalize a sequence of Hermitian operators.

    Modified Gram-Schmidt with one re-orthogonalization pass, over the real
    Hilbert-Schmidt inner product.  The output spans the same space; the
    first element is the normalized first input.  Each output is scaled so
    that its leading nonzero coefficient against the input sequence is
    positive, which makes the result reproducible across backends.

    Raises
    ------
    RankDeficientError
        If some input lies in the span of its predecessors (residual norm
        below ``tol``).
    """
    mats = [require_hermitian(m, name=f"input {i}") for i, m in enumerate(seq)]
    if not mats:
        raise RankDeficientError("empty input sequence")
    dim = mats[0].shape[0]
    for i, m in enumerate(mats):
        if m.shape[0] != dim:
            raise DimensionError(f"input {i} has dimension {m.shape[0]}, expected {dim}")

    out = []
    for i, m in enumerate(mats):
        v = m.astype(complex)
        for _ in range(2):  # second pass controls loss of orthogonality
            for u in out:
                v = v - np.real(hs_inner(u, v)) * u
        norm = hs_norm(v)
        if norm < tol:
            raise RankDeficientError(
                f"input {i} is linearly dependent on its predecessors "
                f"(residual norm {norm:.3e} < {tol:.1e})"
            )
        v = v / norm
        # Sign convention: leading nonzero coefficient against the inputs > 0.
        for m_in in mats:
            c = np.real(hs_inner(v, m_in))
            if abs(c) > tol:
                if c < 0:
                    v = -v
                break
        out.append(v)
    return OperatorBasis(dim=dim, elements=np.stack(out), kind="orthonormal")


def gell_mann_basis(d):
    """Generalized Gell-Mann basis for the Hermitian operators on C^d.

    Element 0 is I/sqrt(d).  The rest are, in order: for every index pair
    n < m in lexicographic order, the symmetric element
    (|n><m| + |m><n|)/sqrt(2) followed by the antisymmetric element
    i(|m><n| - |n><m|)/sqrt(2); then the diagonal elements
    (|1><1| + ... + |n><n| - n |n+1><n+1|)/sqrt(n(n+1)) for n = 1..d-1.
    For d = 2 this is exactly {I, sigma_x, sigma_y, sigma_z}/sqrt(2).
    """
    if d < 2:
        raise DimensionError(f"dimension must be >= 2, got {d}")
    elements = [np.eye(d, dtype=complex) / np.sqrt(d)]
    for n in range(d):
        for m in range(n + 1, d):
            sym = np.zeros((d, d), dtype=complex)
            sym[n, m] = sym[m, n] = 1 / np.sqrt(2)
            asym = np.zeros((d, d), dtype=complex)
            asym[m, n] = 1j / np.sqrt(2)
            asym[n, m] = -1j / np.sqrt(2)
            elements.append(sym)
            elements.append(asym)
    for n in range(1, d):
        diag = np.zeros((d, d), dtype=complex)
        diag[np.arange(n), np.arange(n)] = 1.0
        diag[n, n] = -float(n)
        elements.append(diag / np.sqrt(n * (n + 1)))
    return OperatorBasis(dim=d, elements=np.stack(elements), kind="orthonormal")


def random_hermitian(d, rng):
    """Gaussian random Hermitian d x d matrix (GUE-type, unnormalized)."""
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return (g + g.conj().T) / 2
