"""GSIC POVMs and their two-way correspondence with COBs.

A general symmetric informationally complete POVM in dimension d is a set of
d**2 positive operators G_i summing to the identity with constant pairwise
overlaps: tr G_i^2 = a' for all i and tr G_i G_j = b' for all i != j.  The
constants obey a' + (d**2 - 1) b' = 1/d and 1/d**3 < a' <= 1/d**2, with the
upper bound attained exactly by SIC POVMs (all elements rank 1).

Mixing a COB with the maximally mixed operator,

    G_i = lam * A_i + (1 - lam) * I / d**2,    0 < lam <= lambda*,

always yields a GSIC POVM with a' = lam^2/d + (1 - lam^2)/d^3 and
b' = (1 - lam^2)/d^3; conversely every GSIC POVM arises this way with
lam = sqrt(1 - b' d^3) = sqrt((d^3 a' - 1)/(d^2 - 1)).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cob import spectral_profile, validate_cob
from .errors import (
    CountError,
    DegenerateElementError,
    DegenerateGsicError,
    DimensionError,
    LambdaRangeError,
    ValidationFailure,
)
from .operators import hs_gram

__all__ = [
    "GsicPovm",
    "PovmValidationReport",
    "gsic_constants",
    "cob_to_gsic",
    "canonical_gsic",
    "gsic_to_cob",
    "validate_povm",
    "is_informationally_complete",
    "average_purity",
]

_LAMBDA_SLACK = 1e-12
_RANK1_RATIO = 1e-8


@dataclass(frozen=True)
class GsicPovm:
    """A GSIC POVM together with its mixing weight and symmetry constants."""

    dim: int
    elements: np.ndarray
    lam: float
    a_prime: float
    b_prime: float

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i):
        return self.elements[i]


@dataclass(frozen=True)
class PovmValidationReport:
    """Classification of an operator list: POVM / IC / GSIC / SIC.

    ``a_prime``/``b_prime`` are fitted as the means of the diagonal and
    off-diagonal pairwise traces; ``residuals`` records the worst deviation
    per constraint and ``gram_rank`` the rank of the pairwise-trace Gram
    matrix (d**2 rank is equivalent to informational completeness).
    """

    dim: int
    count: int
    is_povm: bool
    is_ic: bool
    is_gsic: bool
    is_sic: bool
    a_prime: float
    b_prime: float
    gram_rank: int
    residuals: dict


def gsic_constants(lam, d):
    """Symmetry constants (a', b') of the COB mixing at weight ``lam``.

    Valid for 0 < lam <= 1/sqrt(d+1); satisfies a' + (d^2-1) b' = 1/d
    identically.
    """
    if d < 2:
        raise DimensionError(f"dimension must be >= 2, got {d}")
    if not (0.0 < lam <= 1.0 / np.sqrt(d + 1.0) + _LAMBDA_SLACK):
        raise LambdaRangeError(
            f"mixing weight must lie in (0, {1.0 / np.sqrt(d + 1.0):.12g}], got {lam}"
        )
    b = (1.0 - lam * lam) / d**3
    return lam * lam / d + b, b


def cob_to_gsic(cob, lam):
    """Mix a COB toward the maximally mixed operator to obtain a GSIC POVM.

    ``lam`` must lie in (0, lambda*] for this COB; anything larger would give
    some element a negative eigenvalue and is rejected, not clamped.
    """
    profile = spectral_profile(cob)
    d = cob.dim
    if not (0.0 < lam <= profile.lambda_star + _LAMBDA_SLACK):
        worst = min(lam * m + (1.0 - lam) / d**2 for m in profile.min_eigenvalues)
        raise LambdaRangeError(
            f"mixing weight {lam} outside (0, {profile.lambda_star:.12g}]"
            + (f"; would give minimum eigenvalue {worst:.3e}" if lam > 0 else "")
        )
    eye = np.eye(d, dtype=complex)
    elements = lam * cob.elements + (1.0 - lam) / d**2 * eye
    a_prime, b_prime = gsic_constants(lam, d)
    elements = elements.copy()
    elements.setflags(write=False)
    return GsicPovm(dim=d, elements=elements, lam=float(lam), a_prime=a_prime, b_prime=b_prime)


def canonical_gsic(cob):
    """The extreme mixing lam = lambda*: the canonical GSIC POVM of a COB."""
    return cob_to_gsic(cob, spectral_profile(cob).lambda_star)


def _fit_symmetry_constants(gram):
    n = gram.shape[0]
    diag = np.real(np.diag(gram))
    off = np.real(gram[~np.eye(n, dtype=bool)])
    a_prime = float(diag.mean())
    b_prime = float(off.mean()) if off.size else 0.0
    dev_a = float(np.max(np.abs(diag - a_prime)))
    dev_b = float(np.max(np.abs(off - b_prime))) if off.size else 0.0
    return a_prime, b_prime, dev_a, dev_b


def gsic_to_cob(povm, tol=1e-9):
    """Recover the COB and mixing weight behind a GSIC POVM.

    Accepts a :class:`GsicPovm` or a raw operator sequence.  The weight is
    recovered from the cross-overlap constant, lam = sqrt(1 - b' d^3), and
    cross-checked against the self-overlap form sqrt((d^3 a' - 1)/(d^2 - 1));
    a disagreement beyond 1e-8 means the constants are inconsistent.

    Returns ``(cob, lam)``.

    Raises
    ------
    DegenerateGsicError
        If b' d^3 >= 1 (the weight would vanish: all elements equal to
        I/d**2, which is not informationally complete).
    ValidationFailure
        If the inputs are not a GSIC POVM within ``tol``, or the recovered
        operators fail COB validation.
    """
    if isinstance(povm, GsicPovm):
        elements = povm.elements
        d = povm.dim
    else:
        elements = np.stack([np.asarray(m, dtype=complex) for m in povm])
        d = elements.shape[1]
    n = len(elements)
    if n != d * d:
        raise CountError(f"expected {d * d} elements for dimension {d}, got {n}")

    gram = hs_gram(elements)
    a_prime, b_prime, dev_a, dev_b = _fit_symmetry_constants(gram)

    if 1.0 - b_prime * d**3 <= 0.0:
        raise DegenerateGsicError(
            f"cross overlap b' = {b_prime:.12g} at or above 1/d^3 = {1.0 / d**3:.12g}: "
            "self overlap sits at the informationally incomplete lower bound"
        )
    lam = float(np.sqrt(1.0 - b_prime * d**3))
    num = d**3 * a_prime - 1.0
    lam_from_a = float(np.sqrt(num / (d * d - 1.0))) if num > 0 else 0.0
    if abs(lam - lam_from_a) > 1e-8:
        raise ValidationFailure(
            "inconsistent symmetry constants: weight from b' is "
            f"{lam:.12g} but from a' is {lam_from_a:.12g}",
            {"lambda_mismatch": abs(lam - lam_from_a)},
        )
    if max(dev_a, dev_b) > tol:
        raise ValidationFailure(
            f"pairwise traces are not symmetric within {tol:.1e}",
            {"symmetry_self": dev_a, "symmetry_cross": dev_b},
        )
    positivity = min(float(np.linalg.eigvalsh(m)[0]) for m in elements)
    comp_dev = float(np.linalg.norm(elements.sum(axis=0) - np.eye(d)))
    if positivity < -tol or comp_dev > tol:
        raise ValidationFailure(
            "input is not a POVM",
            {"positivity": max(0.0, -positivity), "completeness": comp_dev},
        )

    eye = np.eye(d, dtype=complex)
    recovered = (elements - (1.0 - lam) / d**2 * eye) / lam
    return validate_cob(recovered, tol=tol), lam


def validate_povm(ops, tol=1e-9):
    """Classify an operator list as POVM / IC / GSIC / SIC with residuals.

    POVM: Hermitian, positive within ``tol``, summing to the identity.
    IC: the elements span the operator space (Gram rank d**2).
    GSIC: a POVM of d**2 elements with constant pairwise traces within
    ``tol`` (constant self-overlap a', cross-overlap b'); such a set is
    automatically IC.
    SIC: a GSIC whose elements are all rank 1 (equivalently a' = 1/d**2).
    """
    ops = list(ops)
    if not ops:
        raise CountError("empty operator list")
    stack = np.stack([np.asarray(m, dtype=complex) for m in ops])
    if stack.ndim != 3 or stack.shape[1] != stack.shape[2]:
        raise DimensionError(f"elements must be square matrices, got {stack.shape}")
    d = stack.shape[1]
    n = len(stack)

    herm_dev = float(np.max(np.abs(stack - stack.conj().transpose(0, 2, 1))))
    sym = (stack + stack.conj().transpose(0, 2, 1)) / 2
    min_eigs = np.array([np.linalg.eigvalsh(m)[0] for m in sym])
    positivity = float(min_eigs.min())
    comp_dev = float(np.linalg.norm(stack.sum(axis=0) - np.eye(d)))
    is_povm = herm_dev <= tol and positivity >= -tol and comp_dev <= tol

    gram = hs_gram(stack)
    gram_rank = int(np.linalg.matrix_rank(gram, hermitian=True))
    is_ic = gram_rank == d * d

    a_prime, b_prime, dev_a, dev_b = _fit_symmetry_constants(gram)
    symmetric = max(dev_a, dev_b) <= tol
    is_gsic = is_povm and n == d * d and symmetric and is_ic

    rank_one = True
    for m in sym:
        w = np.linalg.eigvalsh(m)[::-1]
        if w[0] <= 0 or (len(w) > 1 and w[1] > _RANK1_RATIO * w[0]):
            rank_one = False
            break
    is_sic = is_gsic and rank_one and abs(a_prime - 1.0 / d**2) <= tol

    return PovmValidationReport(
        dim=d,
        count=n,
        is_povm=is_povm,
        is_ic=is_ic,
        is_gsic=is_gsic,
        is_sic=is_sic,
        a_prime=a_prime,
        b_prime=b_prime,
        gram_rank=gram_rank,
        residuals={
            "hermiticity": herm_dev,
            "positivity": max(0.0, -positivity),
            "completeness": comp_dev,
            "symmetry_self": dev_a,
            "symmetry_cross": dev_b,
        },
    )


def is_informationally_complete(ops):
    """True when the operators span the full operator space (Gram rank d**2)."""
    stack = np.stack([np.asarray(m, dtype=complex) for m in ops])
    d = stack.shape[1]
    return int(np.linalg.matrix_rank(hs_gram(stack), hermitian=True)) == d * d


def average_purity(ops):
    """Trace-weighted mean element purity sum_i (tr P_i^2 / tr P_i) / d.

    Equals d**2 a' for a GSIC POVM.  Elements with (numerically) zero trace
    have undefined purity and are rejected.
    """
    stack = np.stack([np.asarray(m, dtype=complex) for m in ops])
    d = stack.shape[1]
    traces = np.real(np.einsum("ikk->i", stack))
    if np.any(traces < 1e-12):
        raise DegenerateElementError("POVM element with non-positive trace")
    sq = np.real(np.einsum("iab,iba->i", stack, stack))
    return float(np.sum(sq / traces) / d)
