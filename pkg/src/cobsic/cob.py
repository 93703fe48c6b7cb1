"""Complete orthogonal bases (COBs) of Hermitian operators.

A COB in dimension d is a set of d**2 Hermitian operators A_i with

    sub-orthonormality: tr(A_i A_j) = delta_ij / d,
    completeness:       sum_i A_i = I.

These imply tr A_i = 1/d and force every element to have a strictly negative
minimum eigenvalue.  The spectral profile of a COB collects those minima
m_i, the worst one tau = max_i |m_i|, the largest mixing weight
lambda* = 1/(1 + d^2 tau) that keeps every A_i mixable into a positive
operator, and the quasiprobability negativity d*tau.  lambda* is capped at
1/sqrt(d+1); a COB whose canonical mixing reaches the cap yields a SIC POVM,
and the cap is met exactly when every element has the two-point spectrum
returned by :func:`saturating_spectrum`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CountError, DimensionError, ValidationFailure
from .operators import hs_gram, require_hermitian

__all__ = [
    "Cob",
    "SpectralProfile",
    "SicCriterionReport",
    "validate_cob",
    "spectral_profile",
    "min_eigenvalue_bound",
    "saturating_spectrum",
    "sic_trace_targets",
    "sic_criterion",
    "quasiprobability",
    "state_negativity",
    "negativity_oracle",
]


@dataclass(frozen=True)
class Cob:
    """A validated complete orthogonal basis: d**2 Hermitian operators.

    Instances are produced by :func:`validate_cob` (directly or through the
    construction routines); ``elements`` has shape (d**2, d, d) and is
    read-only.
    """

    dim: int
    elements: np.ndarray

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i):
        return self.elements[i]


@dataclass(frozen=True)
class SpectralProfile:
    """Minimum eigenvalues of the COB elements and derived scalars."""

    min_eigenvalues: tuple
    tau: float
    lambda_star: float
    negativity: float


@dataclass(frozen=True)
class SicCriterionReport:
    """Diagnostics for whether canonical mixing of a COB yields a SIC POVM.

    ``is_sic_capable`` is decided by the lambda* gap alone (the three
    equivalent conditions cannot disagree, so one authoritative test avoids
    tolerance mismatches); the trace-power and per-element spectrum residuals
    are reported as diagnostics.
    """

    is_sic_capable: bool
    lambda_star_gap: float
    trace_power_residuals: tuple
    spectrum_residuals: tuple


def validate_cob(ops, tol=1e-9):
    """Check sub-orthonormality and completeness; return a :class:`Cob`.

    Parameters
    ----------
    ops : sequence of array_like
        Candidate elements, all d x d Hermitian.
    tol : float
        Absolute tolerance on the Gram deviations and on the Frobenius norm
        of the completeness residual.

    Raises
    ------
    CountError
        If the number of operators is not dim**2.
    ValidationFailure
        If any constraint is violated; ``violations`` lists each failed
        constraint with its worst deviation.
    """
    ops = list(ops)
    if not ops:
        raise CountError("empty operator list")
    first = np.asarray(ops[0], dtype=complex)
    if first.ndim != 2 or first.shape[0] != first.shape[1]:
        raise DimensionError(f"elements must be square matrices, got {first.shape}")
    d = first.shape[0]
    if len(ops) != d * d:
        raise CountError(f"expected {d * d} elements for dimension {d}, got {len(ops)}")

    stack = np.stack([np.asarray(m, dtype=complex) for m in ops])
    if stack.shape[1:] != (d, d):
        raise DimensionError("elements have inconsistent shapes")

    herm_dev = float(np.max(np.abs(stack - stack.conj().transpose(0, 2, 1))))
    gram = hs_gram(stack)
    target = np.eye(d * d) / d
    ortho_dev = float(np.max(np.abs(gram - target)))
    comp_dev = float(np.linalg.norm(stack.sum(axis=0) - np.eye(d)))

    violations = {}
    if herm_dev > tol:
        violations["hermiticity"] = herm_dev
    if ortho_dev > tol:
        violations["sub_orthonormality"] = ortho_dev
    if comp_dev > tol:
        violations["completeness"] = comp_dev
    if violations:
        detail = ", ".join(f"{k}: {v:.3e}" for k, v in violations.items())
        raise ValidationFailure(f"not a complete orthogonal basis ({detail})", violations)

    stack = stack.copy()
    stack.setflags(write=False)
    return Cob(dim=d, elements=stack)


def spectral_profile(cob):
    """Minimum eigenvalues, tau, lambda*, and negativity of a COB."""
    mins = tuple(float(np.linalg.eigvalsh(a)[0]) for a in cob.elements)
    tau = max(abs(m) for m in mins)
    d = cob.dim
    lambda_star = 1.0 / (1.0 + d * d * tau)
    return SpectralProfile(
        min_eigenvalues=mins,
        tau=tau,
        lambda_star=lambda_star,
        negativity=d * tau,
    )


def min_eigenvalue_bound(d):
    """Lower bound (sqrt(d+1) - 1)/d^2 on |min eigenvalue| over COB elements.

    Holds for any real d-tuple with sum x_i = sum x_i^2 = 1/d, hence for the
    spectrum of every COB element.
    """
    if d < 2:
        raise DimensionError(f"dimension must be >= 2, got {d}")
    return (np.sqrt(d + 1.0) - 1.0) / (d * d)


def saturating_spectrum(d):
    """The unique spectrum meeting the bound: (x1, x2) with x2 repeated d-1 times.

    x1 = (1 + (d-1) sqrt(d+1))/d^2 > 0 and x2 = (1 - sqrt(d+1))/d^2 < 0.
    """
    if d < 2:
        raise DimensionError(f"dimension must be >= 2, got {d}")
    root = np.sqrt(d + 1.0)
    return (1.0 + (d - 1) * root) / (d * d), (1.0 - root) / (d * d)


def sic_trace_targets(d):
    """Trace-power targets tr A^n, n = 3..d, required for SIC capability.

    A canonical construction yields a SIC POVM exactly when every element
    has the saturating spectrum, i.e. tr A^n = x1^n + (d-1) x2^n for all
    n = 3..d (the n = 1, 2 values, 1/d each, hold for every COB).  Empty for
    d = 2, where every canonical construction is a SIC.
    """
    if d < 2:
        raise DimensionError(f"dimension must be >= 2, got {d}")
    x1, x2 = saturating_spectrum(d)
    return [x1**n + (d - 1) * x2**n for n in range(3, d + 1)]


def sic_criterion(cob, tol=1e-8):
    """Decide SIC capability of a COB's canonical mixing and report diagnostics.

    ``is_sic_capable`` holds iff lambda* is within ``tol`` of the cap
    1/sqrt(d+1).  ``trace_power_residuals`` holds, for each power n = 3..d,
    the worst |tr A_i^n - target_n| over elements; ``spectrum_residuals``
    holds each element's max eigenvalue deviation from the saturating
    spectrum.
    """
    d = cob.dim
    profile = spectral_profile(cob)
    gap = 1.0 / np.sqrt(d + 1.0) - profile.lambda_star

    x1, x2 = saturating_spectrum(d)
    ideal = np.concatenate(([x1], np.full(d - 1, x2)))
    spectrum_residuals = []
    eigs_all = []
    for a in cob.elements:
        w = np.linalg.eigvalsh(a)[::-1]  # descending
        eigs_all.append(w)
        spectrum_residuals.append(float(np.max(np.abs(w - ideal))))

    targets = sic_trace_targets(d)
    trace_residuals = []
    for n, target in zip(range(3, d + 1), targets):
        worst = max(abs(float(np.sum(w**n)) - target) for w in eigs_all)
        trace_residuals.append(worst)

    return SicCriterionReport(
        is_sic_capable=bool(abs(gap) <= tol),
        lambda_star_gap=float(gap),
        trace_power_residuals=tuple(trace_residuals),
        spectrum_residuals=tuple(spectrum_residuals),
    )


def quasiprobability(cob, rho):
    """Quasiprobability vector mu_i(rho) = tr(A_i rho); sums to tr rho."""
    rho = require_hermitian(rho, name="state")
    if rho.shape[0] != cob.dim:
        raise DimensionError(
            f"state dimension {rho.shape[0]} != basis dimension {cob.dim}"
        )
    return np.real(np.einsum("ijk,kj->i", cob.elements, rho))


def state_negativity(cob, rho):
    """Negativity d * max(0, -min_i mu_i(rho)) of one state's quasiprobability."""
    mu = quasiprobability(cob, rho)
    return cob.dim * max(0.0, -float(mu.min()))


def negativity_oracle(cob, samples, seed, include_min_eigenvector_states=True):
    """Lower estimate of the COB negativity by maximizing over sampled states.

    Maximizes the single-state negativity over ``samples`` Haar-random pure
    states and, unless disabled, the d**2 pure states built from each
    element's minimum-eigenvalue eigenvector.  The estimate never exceeds
    d * tau; with the eigenvector states included it attains it, because the
    eigenvector state of the element realizing tau already exhibits the most
    negative quasiprobability.

    Deterministic for a fixed ``seed``.
    """
    d = cob.dim
    rng = np.random.default_rng(seed)
    best = 0.0
    for _ in range(samples):
        psi = rng.standard_normal(d) + 1j * rng.standard_normal(d)
        psi /= np.linalg.norm(psi)
        best = max(best, state_negativity(cob, np.outer(psi, psi.conj())))
    if include_min_eigenvector_states:
        for a in cob.elements:
            _, v = np.linalg.eigh(a)
            psi = v[:, 0]  # eigenvector of the minimum eigenvalue
            best = max(best, state_negativity(cob, np.outer(psi, psi.conj())))
    return best
