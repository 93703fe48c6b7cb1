"""Constructions of complete orthogonal bases.

Three routes are provided:

1. :func:`construction1` rotates any orthonormal operator basis whose first
   element is I/sqrt(d) by a real orthogonal matrix with constant first row.
   Every COB arises this way.
2. :func:`construction2` needs only the operator basis: it is the special
   case where the rotation comes from Gram-Schmidt on
   {sum_i T_i, T_1, ..., T_{D-1}}, and it has a closed form.
3. :func:`construction3` builds a COB from a complete set of mutually
   unbiased bases paired with a complete set of mutually unbiased striations
   of a d**2-point grid.

The module also provides Weyl-Heisenberg displacement operators and the
verification (not search) of fiducial vectors/operators whose group orbits
form SIC POVMs / COBs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cob import validate_cob
from .errors import (
    ConstraintError,
    DimensionError,
    NotFiducialError,
    UnsupportedDimensionError,
)
from .operators import gram_schmidt_operators, hs_inner, require_hermitian

__all__ = [
    "MubSet",
    "MusSet",
    "WeylHeisenbergSet",
    "orthogonal_matrix_fixed_row",
    "construction1",
    "construction2",
    "construction2_via_gram_schmidt",
    "mub_prime",
    "mus_prime",
    "line_index",
    "construction3",
    "weyl_heisenberg",
    "is_fiducial_vector",
    "covariant_cob",
    "qubit_fiducial_operator",
    "is_prime",
]

_ORTHO_TOL = 1e-10


def is_prime(n):
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def orthogonal_matrix_fixed_row(size, rng=None):
    """Real orthogonal size x size matrix whose first row is constant 1/sqrt(size).

    The remaining rows complete the constant row by Gram-Schmidt over the
    standard basis vectors (deterministic) or, if ``rng`` is given, over
    random Gaussian vectors; candidates that fall in the span of earlier rows
    are skipped.
    """
    if size < 1:
        raise DimensionError(f"size must be >= 1, got {size}")
    rows = [np.full(size, 1.0 / np.sqrt(size))]

    def candidates():
        if rng is None:
            for i in range(size):
                e = np.zeros(size)
                e[i] = 1.0
                yield e
        else:
            while True:
                yield rng.standard_normal(size)

    for cand in candidates():
        if len(rows) == size:
            break
        v = cand.astype(float)
        for _ in range(2):
            for u in rows:
                v = v - (u @ v) * u
        norm = np.linalg.norm(v)
        if norm < 1e-10:
            continue  # dependent candidate, try the next one
        rows.append(v / norm)
    return np.stack(rows)


def _check_first_element_identity(basis, tol):
    d = basis.dim
    dev = float(np.max(np.abs(basis[0] - np.eye(d) / np.sqrt(d))))
    if dev > tol:
        raise ConstraintError(
            f"basis element 0 must be I/sqrt(d); max deviation {dev:.3e}"
        )


def construction1(basis, orthogonal, tol=1e-9):
    """COB from an orthonormal operator basis and a fixed-first-row rotation.

    Parameters
    ----------
    basis : OperatorBasis
        Complete orthonormal basis with element 0 equal to I/sqrt(d).
    orthogonal : array_like
        Real orthogonal d**2 x d**2 matrix O with O[0, j] = 1/d for all j
        (i.e. 1/sqrt(d**2)).
    tol : float
        Validation tolerance for the resulting COB.

    Returns the COB with elements A_i = (1/sqrt(d)) sum_j O[j, i] T_j.
    """
    d = basis.dim
    size = d * d
    if not basis.is_complete:
        raise DimensionError(f"basis has {len(basis)} elements, expected {size}")
    _check_first_element_identity(basis, tol)

    o = np.asarray(orthogonal, dtype=float)
    if o.shape != (size, size):
        raise DimensionError(f"orthogonal matrix must be {size}x{size}, got {o.shape}")
    ortho_dev = float(np.max(np.abs(o @ o.T - np.eye(size))))
    if ortho_dev > _ORTHO_TOL:
        raise ConstraintError(f"matrix is not orthogonal: max |OO^T - I| = {ortho_dev:.3e}")
    row_dev = float(np.max(np.abs(o[0] - 1.0 / size**0.5)))
    if row_dev > _ORTHO_TOL:
        raise ConstraintError(
            f"first row must be constant 1/{size**0.5:g}; max deviation {row_dev:.3e}"
        )

    elements = np.einsum("ji,jkl->ikl", o, basis.elements) / np.sqrt(d)
    return validate_cob(elements, tol=tol)


def _construction2_factor(d, j):
    size = d * d
    return d / np.sqrt((size - j) * (size - (j - 1)))


def construction2(basis, tol=1e-9):
    """COB from an orthonormal operator basis alone (closed form).

    With f(j) = d / sqrt((d^2-j)(d^2-j+1)) the elements are

        A_0 = (T_0 - sum_{j>=1} f(j) T_j) / (d sqrt(d)),
        A_i = (T_0 - sum_{j<i} f(j) T_j + (d^2-i) f(i) T_i) / (d sqrt(d)).

    Equivalent to :func:`construction2_via_gram_schmidt`; the two are kept
    separate so each can check the other.
    """
    d = basis.dim
    size = d * d
    if not basis.is_complete:
        raise DimensionError(f"basis has {len(basis)} elements, expected {size}")
    _check_first_element_identity(basis, tol)

    t = basis.elements
    pref = 1.0 / (d * np.sqrt(d))
    f = [0.0] + [_construction2_factor(d, j) for j in range(1, size)]

    elements = np.empty_like(t)
    running = np.zeros_like(t[0])  # sum_{j<i} f(j) T_j
    a0 = t[0].astype(complex)
    for j in range(1, size):
        a0 = a0 - f[j] * t[j]
    elements[0] = pref * a0
    for i in range(1, size):
        elements[i] = pref * (t[0] - running + (size - i) * f[i] * t[i])
        running = running + f[i] * t[i]
    return validate_cob(elements, tol=tol)


def construction2_via_gram_schmidt(basis, tol=1e-9):
    """Gram-Schmidt route to the same COB as :func:`construction2`.

    Orthonormalizes {sum_i T_i, T_1, ..., T_{D-1}} into (S_j) and forms
    A_i = (1/sqrt(d)) sum_j <S_j, T_i> T_j.
    """
    d = basis.dim
    size = d * d
    if not basis.is_complete:
        raise DimensionError(f"basis has {len(basis)} elements, expected {size}")
    _check_first_element_identity(basis, tol)

    seq = [basis.elements.sum(axis=0)] + [basis[j] for j in range(1, size)]
    s = gram_schmidt_operators(seq)
    coeffs = np.array(
        [[np.real(hs_inner(s[j], basis[i])) for i in range(size)] for j in range(size)]
    )
    elements = np.einsum("ji,jkl->ikl", coeffs, basis.elements) / np.sqrt(d)
    return validate_cob(elements, tol=tol)


@dataclass(frozen=True)
class MubSet:
    """A complete set of d+1 mutually unbiased bases.

    ``bases`` has shape (d+1, d, d); ``bases[J, i]`` is the i-th unit vector
    of basis J.  Cross-basis squared overlaps must all equal 1/d.
    """

    dim: int
    bases: np.ndarray

    _TOL = 1e-10

    def __post_init__(self):
        b = np.asarray(self.bases, dtype=complex)
        d = self.dim
        if b.shape != (d + 1, d, d):
            raise DimensionError(f"expected shape {(d + 1, d, d)}, got {b.shape}")
        flat = b.reshape((d + 1) * d, d)
        overlaps = np.abs(flat @ flat.conj().T) ** 2
        target = np.full_like(overlaps, 1.0 / d)
        for j in range(d + 1):
            block = slice(j * d, (j + 1) * d)
            target[block, block] = np.eye(d)
        dev = float(np.max(np.abs(overlaps - target)))
        if dev > self._TOL:
            raise ConstraintError(f"bases are not mutually unbiased: deviation {dev:.3e}")
        b = b.copy()
        b.setflags(write=False)
        object.__setattr__(self, "bases", b)


@dataclass(frozen=True)
class MusSet:
    """A complete set of d+1 mutually unbiased striations of {1, ..., d**2}.

    Each striation is a partition of the point set into d lines of d points;
    lines from different striations meet in exactly one point.  Lines are
    stored as frozensets of 1-based point labels.
    """

    dim: int
    striations: tuple

    def __post_init__(self):
        d = self.dim
        points = frozenset(range(1, d * d + 1))
        strats = tuple(tuple(frozenset(line) for line in s) for s in self.striations)
        if len(strats) != d + 1:
            raise ConstraintError(f"expected {d + 1} striations, got {len(strats)}")
        for s in strats:
            if len(s) != d or any(len(line) != d for line in s):
                raise ConstraintError("each striation needs d lines of d points")
            if frozenset().union(*s) != points:
                raise ConstraintError("striation is not a partition of the point set")
        for j1 in range(d + 1):
            for j2 in range(j1 + 1, d + 1):
                for l1 in strats[j1]:
                    for l2 in strats[j2]:
                        if len(l1 & l2) != 1:
                            raise ConstraintError(
                                "lines of distinct striations must share one point"
                            )
        object.__setattr__(self, "striations", strats)
        lookup = tuple(
            {k: i + 1 for i, line in enumerate(s) for k in line} for s in strats
        )
        object.__setattr__(self, "_line_of_point", lookup)


def mub_prime(d):
    """Complete set of d+1 MUBs for prime d.

    For d = 2 these are the eigenbases of sigma_x, sigma_y, sigma_z (the
    computational basis last).  For odd primes, basis a (a = 0..d-1) has
    vectors with components omega^(a m^2 + i m)/sqrt(d), omega = exp(2 pi i/d),
    followed by the computational basis.
    """
    if not is_prime(d):
        raise UnsupportedDimensionError(f"MUB generation requires prime d, got {d}")
    if d == 2:
        s = 1 / np.sqrt(2)
        bases = np.array(
            [
                [[s, s], [s, -s]],
                [[s, 1j * s], [s, -1j * s]],
                [[1, 0], [0, 1]],
            ],
            dtype=complex,
        )
        return MubSet(dim=2, bases=bases)
    omega = np.exp(2j * np.pi / d)
    m = np.arange(d)
    bases = np.empty((d + 1, d, d), dtype=complex)
    for a in range(d):
        for i in range(d):
            bases[a, i] = omega ** ((a * m * m + i * m) % d) / np.sqrt(d)
    bases[d] = np.eye(d)
    return MubSet(dim=d, bases=bases)


def mus_prime(d):
    """Complete set of d+1 mutually unbiased striations for prime d.

    Points are labeled k = x*d + y + 1 for (x, y) in Z_d x Z_d.  The first
    striation collects the vertical lines {(i, y) : y}, followed by the
    slope-J striations with lines {(x, J x + i mod d) : x} for J = 0..d-1.
    """
    if not is_prime(d):
        raise UnsupportedDimensionError(f"striation generation requires prime d, got {d}")

    def label(x, y):
        return x * d + y + 1

    striations = [
        tuple(frozenset(label(i, y) for y in range(d)) for i in range(d))
    ]
    for slope in range(d):
        striations.append(
            tuple(
                frozenset(label(x, (slope * x + i) % d) for x in range(d))
                for i in range(d)
            )
        )
    return MusSet(dim=d, striations=tuple(striations))


def line_index(mus, k, striation):
    """Index i of the unique line of striation J containing point k (all 1-based)."""
    return mus._line_of_point[striation - 1][k]


def construction3(mubs, mus, tol=1e-9):
    """COB from complete MUB and striation sets of matching dimension.

    Point k is assigned the operator

        A_k = (sum_J |J, s(k,J)><J, s(k,J)| - I) / d,

    where s(k, J) picks the line of striation J through k.  Any complete
    pair works; the pairing of basis index with striation index only changes
    the labeling of the output.
    """
    d = mubs.dim
    if mus.dim != d:
        raise DimensionError(f"dimension mismatch: bases {d}, striations {mus.dim}")
    identity = np.eye(d, dtype=complex)
    elements = np.empty((d * d, d, d), dtype=complex)
    for k in range(1, d * d + 1):
        acc = -identity.copy()
        for j in range(1, d + 2):
            ket = mubs.bases[j - 1, line_index(mus, k, j) - 1]
            acc += np.outer(ket, ket.conj())
        elements[k - 1] = acc / d
    return validate_cob(elements, tol=tol)


@dataclass(frozen=True)
class WeylHeisenbergSet:
    """Weyl-Heisenberg displacement unitaries indexed by Z_d x Z_d.

    ``unitaries[j*d + k]`` is D_(j,k); the identity sits at index 0.  The
    set is Hilbert-Schmidt orthogonal: tr(D_g^dag D_h) = d delta_gh.
    """

    dim: int
    unitaries: np.ndarray

    def __post_init__(self):
        u = np.asarray(self.unitaries, dtype=complex)
        d = self.dim
        if u.shape != (d * d, d, d):
            raise DimensionError(f"expected shape {(d * d, d, d)}, got {u.shape}")
        u = u.copy()
        u.setflags(write=False)
        object.__setattr__(self, "unitaries", u)

    @property
    def labels(self):
        d = self.dim
        return tuple((j, k) for j in range(d) for k in range(d))

    def __len__(self):
        return len(self.unitaries)

    def __iter__(self):
        return iter(self.unitaries)

    def __getitem__(self, i):
        return self.unitaries[i]


def weyl_heisenberg(d):
    """Displacement operators D_(j,k) = w^(jk/2) sum_m w^(jm) |k+m mod d><m|.

    w = exp(2 pi i/d); the half power is taken on the principal branch,
    w^(1/2) = exp(pi i/d), for every d.
    """
    if d < 2:
        raise DimensionError(f"dimension must be >= 2, got {d}")
    omega = np.exp(2j * np.pi / d)
    half = np.exp(1j * np.pi / d)
    ms = np.arange(d)
    unitaries = np.zeros((d * d, d, d), dtype=complex)
    for j in range(d):
        phases = omega ** (j * ms)
        for k in range(d):
            mat = np.zeros((d, d), dtype=complex)
            mat[(k + ms) % d, ms] = phases
            unitaries[j * d + k] = half ** (j * k) * mat
    return WeylHeisenbergSet(dim=d, unitaries=unitaries)


def is_fiducial_vector(phi, wh, tol=1e-10):
    """Check |<phi|D_g phi>|^2 = 1/(d+1) for every non-identity displacement.

    Returns ``(ok, residuals)`` where ``residuals[g-1]`` is the deviation for
    the g-th non-identity element.  A vector passing this check seeds a SIC
    POVM through its orbit (|D_g phi><D_g phi| / d)_g.
    """
    phi = np.asarray(phi, dtype=complex).reshape(-1)
    d = wh.dim
    if phi.shape != (d,):
        raise DimensionError(f"vector must have length {d}, got {phi.shape}")
    norm = np.linalg.norm(phi)
    if abs(norm - 1.0) > 1e-10:
        raise ConstraintError(f"vector must be normalized, got norm {norm:.12f}")
    overlaps = np.abs(np.einsum("i,gij,j->g", phi.conj(), wh.unitaries, phi)) ** 2
    residuals = overlaps[1:] - 1.0 / (d + 1)
    return bool(np.max(np.abs(residuals)) <= tol), residuals


def covariant_cob(a, wh, tol=1e-9):
    """COB as the orbit (U_g A U_g^dag)_g of a fiducial operator A.

    A Hermitian A qualifies when tr A^2 = 1/d and tr(A U_g^dag A U_g) = 0
    for every g != e; orthogonality of the orbit then follows from the
    fiducial condition and completeness from the twirl identity of the
    displacement set.

    Raises :class:`NotFiducialError` with the residuals when A fails.
    """
    a = require_hermitian(a, name="fiducial operator")
    d = wh.dim
    if a.shape[0] != d:
        raise DimensionError(f"operator dimension {a.shape[0]} != {d}")
    residuals = {"norm": abs(float(np.trace(a @ a).real) - 1.0 / d)}
    for g in range(1, d * d):
        u = wh.unitaries[g]
        residuals[f"overlap_{g}"] = abs(complex(np.trace(a @ u.conj().T @ a @ u)))
    worst = max(residuals.values())
    if worst > tol:
        bad = {k: v for k, v in residuals.items() if v > tol}
        raise NotFiducialError(
            f"operator fails the fiducial conditions (worst residual {worst:.3e})", bad
        )
    orbit = np.stack([u @ a @ u.conj().T for u in wh.unitaries])
    return validate_cob(orbit, tol=tol)


def qubit_fiducial_operator():
    """The d = 2 fiducial operator (I + sigma_x + sigma_y + sigma_z)/4.

    Equals sqrt(3) (|phi><phi|/2 - (1 - 1/sqrt(3)) I/4) for the pure state
    with Bloch vector (1,1,1)/sqrt(3); its Weyl-Heisenberg orbit is a COB
    whose canonical mixing is a SIC POVM.
    """
    return np.array([[0.5, 0.25 - 0.25j], [0.25 + 0.25j, 0.0]], dtype=complex)
