"""Linear state tomography with informationally complete POVMs.

Given an IC POVM (P_i) there are dual operators (Theta_i) with
rho = sum_i p_i Theta_i for every state, p_i = tr(P_i rho).  Estimating the
probabilities by frequencies over N copies and plugging them into that
expansion gives the linear estimator; its mean squared Hilbert-Schmidt error
scales as 1/N with the constant

    E(rho) = sum_i p_i tr(Theta_i^2) - tr(rho^2),

the *scaled MSE*.  This module builds the canonical dual (the frame-map
inverse), evaluates E and its exact worst case over unitary orbits, the
purity-based lower bound on that worst case, and runs seeded Monte Carlo
experiments whose empirical N * ||rho - rho_hat||^2 converges to E(rho).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import (
    InvalidStateError,
    NotInformationallyCompleteError,
    RangeError,
)
from .gsic import average_purity
from .operators import require_hermitian

__all__ = [
    "DualFrame",
    "TomographyReport",
    "canonical_dual",
    "scaled_mse",
    "max_scaled_mse",
    "gsic_max_mse",
    "zhu_bound",
    "simulate_tomography",
    "random_pure_state",
    "random_density_matrix",
    "maximally_mixed",
]

_CONDITION_WARN = 1e12


@dataclass(frozen=True)
class DualFrame:
    """Dual operators Theta_i paired with their source POVM.

    Satisfies the reconstruction identity
    sum_i tr(P_i X) Theta_i = X for every operator X.
    """

    dim: int
    povm: np.ndarray
    elements: np.ndarray

    def __len__(self):
        return len(self.elements)


@dataclass(frozen=True)
class TomographyReport:
    """Closed-form and Monte Carlo scaled-MSE values for one POVM and state."""

    scaled_mse: float
    closed_form_max: float
    zhu_bound: float | None
    empirical_mse: float
    empirical_se: float
    copies: int
    trials: int
    seed: int


def canonical_dual(povm):
    """Invert the frame map F(X) = sum_i tr(P_i X) P_i on each element.

    Theta_i = F^{-1}(P_i).  Requires the POVM to span the operator space;
    otherwise the frame map is singular and
    :class:`NotInformationallyCompleteError` is raised.  A condition number
    above 1e12 triggers a warning and a pseudo-inverse fallback.
    """
    stack = np.stack([np.asarray(m, dtype=complex) for m in povm])
    n, d = stack.shape[0], stack.shape[1]
    vecs = stack.reshape(n, d * d).T  # columns are vectorized elements
    frame = vecs @ vecs.conj().T
    w = np.linalg.eigvalsh(frame)
    rank = int(np.sum(w > max(d * d, n) * np.finfo(float).eps * w[-1]))
    if rank < d * d:
        raise NotInformationallyCompleteError(
            f"POVM spans only {rank} of {d * d} operator dimensions"
        )
    cond = w[-1] / w[0]
    if cond > _CONDITION_WARN:
        warnings.warn(
            f"frame map condition number {cond:.3e}; using pseudo-inverse",
            stacklevel=2,
        )
        theta_vecs = np.linalg.pinv(frame) @ vecs
    else:
        theta_vecs = np.linalg.solve(frame, vecs)
    theta = theta_vecs.T.reshape(n, d, d)
    theta = (theta + theta.conj().transpose(0, 2, 1)) / 2  # clean rounding noise
    theta.setflags(write=False)
    stack = stack.copy()
    stack.setflags(write=False)
    return DualFrame(dim=d, povm=stack, elements=theta)


def _require_density_matrix(rho, d, tol=1e-10):
    rho = require_hermitian(np.asarray(rho), tol=tol, name="state")
    if rho.shape[0] != d:
        raise InvalidStateError(f"state dimension {rho.shape[0]} != POVM dimension {d}")
    if abs(float(np.trace(rho).real) - 1.0) > tol:
        raise InvalidStateError(f"state trace {np.trace(rho).real!r} != 1")
    min_eig = float(np.linalg.eigvalsh(rho)[0])
    if min_eig < -tol:
        raise InvalidStateError(f"state has negative eigenvalue {min_eig:.3e}")
    return rho


def _outcome_probabilities(povm, rho):
    p = np.real(np.einsum("iab,ba->i", povm, rho))
    total = float(p.sum())
    if abs(total - 1.0) > 1e-9:
        raise InvalidStateError(f"outcome probabilities sum to {total!r}, not 1")
    return np.clip(p, 0.0, None)


def scaled_mse(dual, rho):
    """E(rho) = sum_i p_i tr(Theta_i^2) - tr(rho^2) for the dual's POVM."""
    rho = _require_density_matrix(rho, dual.dim)
    p = _outcome_probabilities(dual.povm, rho)
    norms = np.real(np.einsum("iab,iba->i", dual.elements, dual.elements))
    return float(p @ norms - np.trace(rho @ rho).real)


def max_scaled_mse(dual, rho):
    """Exact maximum of E over the unitary orbit of ``rho``.

    E depends on the state only through tr(rho M) with
    M = sum_i tr(Theta_i^2) P_i, so the orbit maximum pairs the sorted
    eigenvalues of rho and M.  For a pure state this is
    lambda_max(M) - 1; for a GSIC POVM M is proportional to the identity
    and the value reduces to the closed form of :func:`gsic_max_mse`.
    """
    rho = _require_density_matrix(rho, dual.dim)
    norms = np.real(np.einsum("iab,iba->i", dual.elements, dual.elements))
    m = np.einsum("i,iab->ab", norms, dual.povm)
    m_eigs = np.linalg.eigvalsh((m + m.conj().T) / 2)[::-1]
    rho_eigs = np.linalg.eigvalsh(rho)[::-1]
    return float(rho_eigs @ m_eigs - np.trace(rho @ rho).real)


def gsic_max_mse(lam, d, state_purity):
    """Worst-case scaled MSE (d^2-1)/(d lam^2) + 1/d - purity of a GSIC POVM.

    Decreasing in the mixing weight; at the cap lam = 1/sqrt(d+1) it reaches
    the global optimum (d^2-1)(1+d)/d + 1/d - purity attained by SIC POVMs.
    """
    if d < 2:
        raise RangeError(f"dimension must be >= 2, got {d}")
    if not (0.0 < lam <= 1.0 / np.sqrt(d + 1.0) + 1e-12):
        raise RangeError(
            f"mixing weight must lie in (0, {1.0 / np.sqrt(d + 1.0):.12g}], got {lam}"
        )
    if not (1.0 / d - 1e-12 <= state_purity <= 1.0 + 1e-12):
        raise RangeError(f"state purity must lie in [1/{d}, 1], got {state_purity}")
    return (d * d - 1.0) / (d * lam * lam) + 1.0 / d - state_purity


def zhu_bound(d, avg_purity, state_purity):
    """Purity lower bound (d^2-1)^2 / (d^2 p - d) + 1/d - purity on the worst case.

    Holds for every minimal IC POVM with average purity ``avg_purity`` and is
    attained exactly by GSIC POVMs.  The average purity must exceed 1/d (the
    non-IC limit, where the bound diverges).
    """
    if d < 2:
        raise RangeError(f"dimension must be >= 2, got {d}")
    if not (1.0 / d < avg_purity <= 1.0 + 1e-12):
        raise RangeError(f"average purity must lie in (1/{d}, 1], got {avg_purity}")
    return (d * d - 1.0) ** 2 / (d * d * avg_purity - d) + 1.0 / d - state_purity


def _sample_counts(rng, cdf, copies):
    # Inverse-CDF sampling keeps each trial a pure function of its substream.
    u = rng.random(copies)
    idx = np.searchsorted(cdf, u, side="right")
    idx = np.minimum(idx, len(cdf) - 1)
    return np.bincount(idx, minlength=len(cdf))


def simulate_tomography(dual, rho, copies, trials, seed):
    """Monte Carlo estimate of the scaled MSE, with closed forms for context.

    Each trial draws ``copies`` outcomes from the POVM statistics of ``rho``
    (inverse-CDF over the outcome probabilities), reconstructs
    rho_hat = sum_i f_i Theta_i from the frequencies, and records
    copies * ||rho - rho_hat||^2.  The report carries the mean and standard
    error over trials next to E(rho), the exact orbit maximum, and the purity
    lower bound (the latter only for minimal POVMs with average purity above
    1/d).

    Trial t uses the substream seeded by (seed, 0, t), so runs are
    reproducible and trials could be distributed without changing results.
    """
    if copies < 1 or trials < 1:
        raise RangeError("copies and trials must both be >= 1")
    rho = _require_density_matrix(rho, dual.dim)
    p = _outcome_probabilities(dual.povm, rho)
    cdf = np.cumsum(p)
    theta = dual.elements

    errors = np.empty(trials)
    for t in range(trials):
        rng = np.random.default_rng([seed, 0, t])
        freqs = _sample_counts(rng, cdf, copies) / copies
        rho_hat = np.einsum("i,iab->ab", freqs, theta)
        errors[t] = copies * np.linalg.norm(rho - rho_hat) ** 2

    d = dual.dim
    zhu = None
    if len(dual.povm) == d * d:
        purity = average_purity(dual.povm)
        if purity > 1.0 / d:
            zhu = zhu_bound(d, purity, float(np.trace(rho @ rho).real))
    return TomographyReport(
        scaled_mse=scaled_mse(dual, rho),
        closed_form_max=max_scaled_mse(dual, rho),
        zhu_bound=zhu,
        empirical_mse=float(errors.mean()),
        empirical_se=float(errors.std(ddof=1) / np.sqrt(trials)) if trials > 1 else float("nan"),
        copies=int(copies),
        trials=int(trials),
        seed=int(seed),
    )


def random_pure_state(d, rng):
    """Haar-random pure state as a d x d density matrix."""
    psi = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    psi /= np.linalg.norm(psi)
    return np.outer(psi, psi.conj())


def random_density_matrix(d, rng):
    """Hilbert-Schmidt-random full-rank density matrix (Ginibre G G^dag)."""
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def maximally_mixed(d):
    return np.eye(d, dtype=complex) / d
