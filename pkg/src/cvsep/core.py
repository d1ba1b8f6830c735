"""Core types and operations for two-mode Gaussian correlation matrices.

Conventions (fixed once, used everywhere):

* Quadrature ordering is ``(x1, p1, x2, p2)``; row/column ``i`` of a
  correlation matrix pairs with that list.
* Scaling is "vacuum = identity": entry ``M[i, j]`` equals twice the
  symmetrized second moment ``<{dxi_i, dxi_j}>/2``, so operator variances
  are matrix entries divided by two and every physical matrix satisfies
  ``M + i*Omega >= 0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import (
    InvalidLlubo,
    NotFinite,
    NotPhysical,
    NotSymmetric,
    ZeroCoefficient,
)

# Tolerances (double-precision headroom on 4x4 problems).
EPS_SYM = 1e-10  # absolute asymmetry allowed before rejection
EPS_PSD = 1e-9  # physicality slack, relative to the largest diagonal entry
EPS_DET = 1e-10  # allowed departure of local-block determinants from 1
EPS_INV = 1e-9  # relative tolerance on the four local invariants

_J = np.array([[0.0, 1.0], [-1.0, 0.0]])

#: Symplectic form for two modes in (x1, p1, x2, p2) ordering.
OMEGA = np.block([[_J, np.zeros((2, 2))], [np.zeros((2, 2)), _J]])
OMEGA.flags.writeable = False


def _frozen(arr: np.ndarray) -> np.ndarray:
    out = np.array(arr, dtype=float)
    out.flags.writeable = False
    return out


def det2(a: np.ndarray) -> float:
    """Determinant of a 2x2 matrix, computed directly."""
    return float(a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0])


def min_eig_hermitian_pair(a: np.ndarray, b: np.ndarray) -> float:
    """Smallest eigenvalue of the Hermitian matrix A + iB.

    Uses the real symmetric embedding ``[[A, -B], [B, A]]``, whose spectrum
    is the spectrum of ``A + iB`` doubled, so no complex eigensolver is
    needed.
    """
    emb = np.block([[a, -b], [b, a]])
    return float(np.linalg.eigvalsh(emb)[0])


@dataclass(frozen=True, eq=False)
class CorrelationMatrix:
    """Validated 4x4 correlation matrix of a two-mode Gaussian state.

    Construct through :func:`validate`; the wrapped array is read-only.
    """

    m: np.ndarray

    @property
    def g1(self) -> np.ndarray:
        """Mode-1 diagonal block (rows/cols 0..1)."""
        return self.m[:2, :2]

    @property
    def g2(self) -> np.ndarray:
        """Mode-2 diagonal block (rows/cols 2..3)."""
        return self.m[2:, 2:]

    @property
    def c(self) -> np.ndarray:
        """Intermode block (rows 0..1, cols 2..3)."""
        return self.m[:2, 2:]

    def __repr__(self) -> str:  # pragma: no cover - cosmetic
        return f"CorrelationMatrix({self.m.tolist()!r})"


@dataclass(frozen=True, eq=False)
class Llubo:
    """Local linear unitary Bogoliubov operation.

    A pair of unit-determinant 2x2 real matrices acting independently on the
    two modes; it acts on a correlation matrix by congruence with
    ``blockdiag(h1, h2)``.
    """

    h1: np.ndarray
    h2: np.ndarray

    def __post_init__(self) -> None:
        for name in ("h1", "h2"):
            blk = np.asarray(getattr(self, name), dtype=float)
            if blk.shape != (2, 2):
                raise InvalidLlubo(f"{name} must be 2x2, got {blk.shape}")
            if not np.all(np.isfinite(blk)):
                raise InvalidLlubo(f"{name} has non-finite entries")
            if abs(det2(blk) - 1.0) > EPS_DET:
                raise InvalidLlubo(
                    f"det({name}) = {det2(blk)!r} differs from 1 beyond {EPS_DET}"
                )
            object.__setattr__(self, name, _frozen(blk))

    @classmethod
    def identity(cls) -> "Llubo":
        return cls(np.eye(2), np.eye(2))

    def block_diagonal(self) -> np.ndarray:
        """The 4x4 matrix blockdiag(h1, h2)."""
        out = np.zeros((4, 4))
        out[:2, :2] = self.h1
        out[2:, 2:] = self.h2
        return out

    def inverse(self) -> "Llubo":
        """Element-wise inverse pair (adjugate; the blocks have det 1)."""
        return Llubo(_adj2(self.h1), _adj2(self.h2))

    def compose(self, first: "Llubo") -> "Llubo":
        """The operation 'apply ``first``, then ``self``'."""
        return Llubo(self.h1 @ first.h1, self.h2 @ first.h2)


def _adj2(a: np.ndarray) -> np.ndarray:
    return np.array([[a[1, 1], -a[0, 1]], [-a[1, 0], a[0, 0]]])


@dataclass(frozen=True)
class LluboInvariants:
    """The four determinants preserved by local operations."""

    det_g1: float
    det_g2: float
    det_c: float
    det_m: float

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.det_g1, self.det_g2, self.det_c, self.det_m)


@dataclass(frozen=True)
class EprPair:
    """Coefficients of the EPR-type operator pair.

    ``u = |a| x1 + sign_u (1/|a|) x2`` and ``v = |a| p1 + sign_v (1/|a|) p2``;
    the signs multiply the mode-2 terms.  The generic correlated choice
    ``u = x1 + x2, v = p1 - p2`` is ``EprPair(1.0, +1, -1)``.
    """

    a: float
    sign_u: int = 1
    sign_v: int = -1

    def __post_init__(self) -> None:
        if not math.isfinite(self.a):
            raise ZeroCoefficient("coefficient a must be a finite nonzero real")
        if self.a == 0.0:
            raise ZeroCoefficient("coefficient a must be nonzero")
        if self.sign_u not in (-1, 1) or self.sign_v not in (-1, 1):
            raise ValueError("signs must be -1 or +1")


def validate(m: np.ndarray) -> CorrelationMatrix:
    """Validate a 4x4 array as a physical two-mode correlation matrix.

    The input is symmetrized as ``(m + m.T)/2`` (rejection only beyond
    ``EPS_SYM``) and physicality ``M + i*Omega >= 0`` is checked through the
    real symmetric embedding, with the smallest eigenvalue allowed down to
    ``-EPS_PSD`` relative to the largest diagonal entry.

    Raises:
        NotFinite: non-finite entries.
        NotSymmetric: asymmetry beyond ``EPS_SYM``.
        NotPhysical: uncertainty relation violated beyond tolerance.
    """
    arr = np.asarray(m, dtype=float)
    if arr.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise NotFinite("correlation matrix has non-finite entries")
    asym = float(np.max(np.abs(arr - arr.T)))
    if asym > EPS_SYM:
        raise NotSymmetric(f"asymmetry {asym:.3e} exceeds {EPS_SYM}")
    sym = 0.5 * (arr + arr.T)
    lam_min = min_eig_hermitian_pair(sym, OMEGA)
    scale = max(float(np.max(np.diag(sym))), 1.0)
    if lam_min < -EPS_PSD * scale:
        raise NotPhysical(
            f"M + i*Omega has eigenvalue {lam_min:.3e}; state violates the "
            "uncertainty relation"
        )
    return CorrelationMatrix(_frozen(sym))


def apply_llubo(state: CorrelationMatrix, op: Llubo) -> CorrelationMatrix:
    """Congruence action of a local operation on the correlation matrix.

    Returns ``blockdiag(h1, h2) @ M @ blockdiag(h1, h2).T`` revalidated.
    """
    b = op.block_diagonal()
    return validate(b @ state.m @ b.T)


def llubo_invariants(state: CorrelationMatrix) -> LluboInvariants:
    """The four local invariants (det G1, det G2, det C, det M)."""
    return LluboInvariants(
        det_g1=det2(state.g1),
        det_g2=det2(state.g2),
        det_c=det2(state.c),
        det_m=float(np.linalg.det(state.m)),
    )


def variance_pair(state: CorrelationMatrix, pair: EprPair) -> float:
    """Total variance ``<(du)^2> + <(dv)^2>`` of an EPR-type pair.

    Evaluated directly from second moments; the factor 1/2 converts matrix
    entries to operator variances.  Depends on ``a`` only through ``a**2``.
    """
    if pair.a == 0.0:
        raise ZeroCoefficient("coefficient a must be nonzero")
    m = state.m
    a2 = pair.a * pair.a
    total = (
        a2 * (m[0, 0] + m[1, 1])
        + (m[2, 2] + m[3, 3]) / a2
        + 2.0 * pair.sign_u * m[0, 2]
        + 2.0 * pair.sign_v * m[1, 3]
    )
    return 0.5 * float(total)
