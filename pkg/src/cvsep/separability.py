"""Separability decisions for two-mode Gaussian states.

The total-variance inequality gives a sufficient entanglement test for any
state; for Gaussian states the decision becomes exact after reduction to
standard form II, where separability is equivalent to positive
semidefiniteness of ``M - I`` and, in the separable regime, a Gaussian
P-representation serves as a constructive certificate.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from .core import EPS_PSD, CorrelationMatrix, EprPair, Llubo, variance_pair
from .exceptions import CvsepError, DegenerateForm, NotInSeparableRegime
from .standard_form import EPS_FORM, StandardFormII, to_standard_form_II

EPS_DECIDE = 1e-7  # half-width of the boundary band (relative to form scale)


class Decision(str, enum.Enum):
    """Three-valued separability verdict."""

    ENTANGLED = "entangled"
    SEPARABLE = "separable"
    BOUNDARY = "boundary"


class TotalVarianceResult(NamedTuple):
    violated: bool
    total_variance: float
    bound: float


@dataclass(frozen=True, eq=False)
class PRepresentation:
    """Gaussian parameters of a positive P-distribution.

    ``covariance`` is the covariance of the coherent-state labels in
    quadrature coordinates, ``(M - I)/2`` of the reduced matrix (with the
    original mode labels); ``transform_back`` maps label space back to the
    original frame, so ``transform_back (2*cov + I) transform_back^T``
    reconstructs the input matrix.
    """

    covariance: np.ndarray
    transform_back: Llubo


@dataclass(frozen=True, eq=False)
class SeparabilityVerdict:
    """Decision plus its witnesses.

    ``margin = bound - total_variance`` is positive for entangled states.
    ``witness`` is the optimal pair when the form is non-degenerate and
    ``None`` otherwise (the variance data then refer to the fallback a = 1
    pair and are informational only; the decision always comes from the
    spectrum of ``M_II - I``).
    """

    decision: Decision
    total_variance: float
    bound: float
    witness: Optional[EprPair]
    margin: float
    certificate: Optional[PRepresentation]
    form: StandardFormII
    min_eigenvalue: float


def total_variance_check(
    state: CorrelationMatrix, pair: EprPair, tol: float = EPS_DECIDE
) -> TotalVarianceResult:
    """Sufficient entanglement test from the total-variance inequality.

    Separable states obey ``total_variance >= a**2 + 1/a**2``; a violation
    (beyond ``tol``) certifies entanglement of any state, Gaussian or not.
    """
    bound = pair.a * pair.a + 1.0 / (pair.a * pair.a)
    total = variance_pair(state, pair)
    return TotalVarianceResult(total < bound - tol, total, bound)


def construct_epr_pair(form: StandardFormII) -> EprPair:
    """Optimal witness pair for a non-degenerate standard form II.

    ``a0**2 = sqrt((m1-1)/(n1-1))`` with the mode-2 signs opposing the
    intermode correlations: ``u = a0 x1 - sgn(c1)/a0 x2`` and
    ``v = a0 p1 - sgn(c2)/a0 p2``.

    Raises:
        DegenerateForm: a mode at vacuum purity or a vanishing intermode
            coefficient; callers must fall back to the spectral decision.
    """
    if form.degenerate:
        raise DegenerateForm("trivial form has no optimal pair")
    if form.n1 - 1.0 <= EPS_FORM or form.m1 - 1.0 <= EPS_FORM:
        raise DegenerateForm("a mode at vacuum purity has no optimal pair")
    if form.c1 == 0.0 or form.c2 == 0.0:
        raise DegenerateForm("vanishing intermode coefficient")
    a0_sq = math.sqrt((form.m1 - 1.0) / (form.n1 - 1.0))
    if form.n2 - 1.0 > EPS_FORM and form.m2 - 1.0 > EPS_FORM:
        alt = math.sqrt((form.m2 - 1.0) / (form.n2 - 1.0))
        if abs(a0_sq - alt) > EPS_FORM * max(1.0, a0_sq):
            raise CvsepError(
                f"inconsistent standard form: a0^2 = {a0_sq!r} vs {alt!r}"
            )
    return EprPair(
        a=math.sqrt(a0_sq),
        sign_u=-1 if form.c1 > 0.0 else 1,
        sign_v=-1 if form.c2 > 0.0 else 1,
    )


def _fallback_pair(form: StandardFormII) -> EprPair:
    # a = 1 with signs opposing whatever correlations exist; the correlated
    # EPR choice (-1, +1) when they vanish.
    sign_u = -1 if form.c1 >= 0.0 else 1
    sign_v = 1 if form.c2 <= 0.0 else -1
    return EprPair(1.0, sign_u, sign_v)


def _variance_on_form(form: StandardFormII, pair: EprPair) -> float:
    a2 = pair.a * pair.a
    return 0.5 * (
        a2 * (form.n1 + form.n2)
        + (form.m1 + form.m2) / a2
        + 2.0 * pair.sign_u * form.c1
        + 2.0 * pair.sign_v * form.c2
    )


def _block_min_eig(p: float, q: float, r: float) -> float:
    """Smallest eigenvalue of [[p, q], [q, r]]."""
    return 0.5 * (p + r) - math.hypot(0.5 * (p - r), q)


def _form_spectrum(form: StandardFormII) -> tuple[float, float]:
    """(min eigenvalue of M_II - I, entry scale of M_II - I)."""
    lam_x = _block_min_eig(form.n1 - 1.0, form.c1, form.m1 - 1.0)
    lam_p = _block_min_eig(form.n2 - 1.0, form.c2, form.m2 - 1.0)
    scale = max(
        abs(form.n1 - 1.0),
        abs(form.n2 - 1.0),
        abs(form.m1 - 1.0),
        abs(form.m2 - 1.0),
        abs(form.c1),
        abs(form.c2),
    )
    return min(lam_x, lam_p), scale


def decide_separability(
    state: CorrelationMatrix, tol_decide: float = EPS_DECIDE
) -> SeparabilityVerdict:
    """Exact three-valued separability decision for a Gaussian state.

    Reduces to standard form II and tests ``M_II - I >= 0``; the boundary
    band is ``tol_decide`` relative to the entry scale of ``M_II - I``, so
    exactly reducible families (vacuum-bath decay, TMSV) are decided at
    their intrinsic precision.  Non-degenerate forms also carry the optimal
    witness pair, whose variance margin is asserted consistent with the
    spectral decision.  Separable verdicts carry a P-representation
    certificate.
    """
    form = to_standard_form_II(state)
    lam_min, scale = _form_spectrum(form)
    band = tol_decide * scale
    if lam_min < -band:
        decision = Decision.ENTANGLED
    elif lam_min >= band:
        decision = Decision.SEPARABLE
    elif form.c1 == 0.0 and form.c2 == 0.0 and lam_min >= 0.0:
        # Reduced form is exactly diagonal (product state); positive
        # semidefiniteness holds structurally, not by an eigenvalue margin.
        decision = Decision.SEPARABLE
    else:
        decision = Decision.BOUNDARY

    try:
        witness: Optional[EprPair] = construct_epr_pair(form)
    except DegenerateForm:
        witness = None
    pair = witness if witness is not None else _fallback_pair(form)
    total = _variance_on_form(form, pair)
    bound = pair.a * pair.a + 1.0 / (pair.a * pair.a)
    margin = bound - total

    if witness is not None:
        # The optimal pair's variance margin and the spectral test are
        # equivalent formulations; their signs must agree away from the edge.
        slack = 1e-11 * max(1.0, scale, abs(total))
        if decision is Decision.ENTANGLED and margin < -slack:
            raise CvsepError("witness margin contradicts spectral decision")
        if decision is Decision.SEPARABLE and margin > slack:
            raise CvsepError("witness margin contradicts spectral decision")

    certificate = (
        p_representation(form) if decision is Decision.SEPARABLE else None
    )
    return SeparabilityVerdict(
        decision=decision,
        total_variance=total,
        bound=bound,
        witness=witness,
        margin=margin,
        certificate=certificate,
        form=form,
        min_eigenvalue=lam_min,
    )


def p_representation(form: StandardFormII) -> PRepresentation:
    """Gaussian P-distribution parameters of a separable standard form II.

    The distribution of coherent-state labels is the centered Gaussian with
    covariance ``(M_II - I)/2`` (original mode labels); eigenvalues within
    tolerance of zero are clipped to keep the covariance PSD.

    Raises:
        NotInSeparableRegime: ``M_II - I`` has an eigenvalue below
            ``-EPS_PSD`` relative tolerance (entangled regime).
    """
    lam_min, scale = _form_spectrum(form)
    if lam_min < -EPS_PSD * max(1.0, scale):
        raise NotInSeparableRegime(
            f"M_II - I has eigenvalue {lam_min:.3e}; no positive P exists"
        )
    cov = 0.5 * (form.unswapped_matrix() - np.eye(4))
    w, v = np.linalg.eigh(cov)
    if w[0] < 0.0:
        cov = (v * np.clip(w, 0.0, None)) @ v.T
        cov = 0.5 * (cov + cov.T)
    inv1 = _inv2(form.transform.h1)
    inv2 = _inv2(form.transform.h2)
    if form.swapped_modes:
        back = Llubo(inv2, inv1)
    else:
        back = Llubo(inv1, inv2)
    cov = np.array(cov)
    cov.flags.writeable = False
    return PRepresentation(covariance=cov, transform_back=back)


def reconstruct_analytic(cert: PRepresentation) -> np.ndarray:
    """Exact mixture covariance implied by a P-certificate.

    Each coherent label contributes identity covariance (matrix units) plus
    its mean, so the reconstruction is ``T (2*cov + I) T^T``.
    """
    t = cert.transform_back.block_diagonal()
    return t @ (2.0 * cert.covariance + np.eye(4)) @ t.T


def _inv2(a: np.ndarray) -> np.ndarray:
    return np.array([[a[1, 1], -a[0, 1]], [-a[1, 0], a[0, 0]]])
