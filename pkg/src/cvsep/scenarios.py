"""Two-mode squeezed vacuum under independent thermal noise.

The worked scenario: a squeezed pair decoheres in two identical thermal
channels, staying in the symmetric standard-form family, and the exact
entanglement lifetime has a closed form.  Only the product ``eta * t``
enters the physics (eta carries inverse time, t carries time).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, NamedTuple, Union

from .core import CorrelationMatrix, validate
from .separability import Decision, decide_separability
from .standard_form import form_i_layout


class _Infinite:
    """Marker for an unbounded entanglement lifetime (vacuum bath)."""

    _instance = None

    def __new__(cls) -> "_Infinite":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "Infinite"


#: Returned by :func:`threshold_time` when the state never disentangles.
INFINITE = _Infinite()


@dataclass(frozen=True)
class ThermalScenario:
    """Squeezing r, damping eta, mean thermal occupation nbar, elapsed t."""

    r: float
    eta: float
    nbar: float
    t: float

    def __post_init__(self) -> None:
        if self.r < 0.0:
            raise ValueError("squeezing parameter r must be >= 0")
        if self.eta <= 0.0:
            raise ValueError("damping coefficient eta must be > 0")
        if self.nbar < 0.0:
            raise ValueError("thermal occupation nbar must be >= 0")
        if self.t < 0.0:
            raise ValueError("elapsed time t must be >= 0")


def tmsv_matrix(r: float) -> CorrelationMatrix:
    """Two-mode squeezed vacuum: n = m = cosh 2r, c = -c' = sinh 2r."""
    if r < 0.0:
        raise ValueError("squeezing parameter r must be >= 0")
    n = math.cosh(2.0 * r)
    c = math.sinh(2.0 * r)
    return validate(form_i_layout(n, n, c, -c))


def evolve_thermal(scenario: ThermalScenario) -> CorrelationMatrix:
    """Correlation matrix after time t in independent thermal channels.

    ``n = m = cosh(2r) e^{-2 eta t} + (2 nbar + 1)(1 - e^{-2 eta t})`` and
    ``c = -c' = sinh(2r) e^{-2 eta t}``; t = 0 reproduces the squeezed
    vacuum and t -> infinity the thermal product state.
    """
    decay = math.exp(-2.0 * scenario.eta * scenario.t)
    n = math.cosh(2.0 * scenario.r) * decay + (2.0 * scenario.nbar + 1.0) * (
        1.0 - decay
    )
    c = math.sinh(2.0 * scenario.r) * decay
    return validate(form_i_layout(n, n, c, -c))


def threshold_time(
    r: float, eta: float, nbar: float
) -> Union[float, _Infinite]:
    """Closed-form entanglement lifetime of the thermal scenario.

    The state is entangled exactly while
    ``t < ln(1 + (1 - e^{-2r}) / (2 nbar)) / (2 eta)``.  A vacuum bath
    (nbar = 0) never disentangles the state, reported as :data:`INFINITE`.
    """
    if r <= 0.0:
        raise ValueError("squeezing parameter r must be > 0")
    if eta <= 0.0:
        raise ValueError("damping coefficient eta must be > 0")
    if nbar < 0.0:
        raise ValueError("thermal occupation nbar must be >= 0")
    if nbar == 0.0:
        return INFINITE
    return math.log1p((1.0 - math.exp(-2.0 * r)) / (2.0 * nbar)) / (2.0 * eta)


class ScanPoint(NamedTuple):
    t: float
    margin: float
    decision: Decision


def scan_boundary(
    r: float,
    eta: float,
    nbar: float,
    t_max: float,
    resolution: int,
    t_min: float = 0.0,
) -> List[ScanPoint]:
    """Decision pipeline evaluated on a uniform time grid.

    Returns ``(t, margin, decision)`` per grid point over
    ``[t_min, t_max]``; with nbar > 0 and a grid straddling the threshold,
    the sign change of the margin brackets the closed form within one step.
    """
    if resolution < 2:
        raise ValueError("resolution must be >= 2")
    if t_min < 0.0 or t_max < t_min:
        raise ValueError("need 0 <= t_min <= t_max")
    points = []
    for i in range(resolution):
        t = t_min + (t_max - t_min) * i / (resolution - 1)
        verdict = decide_separability(
            evolve_thermal(ThermalScenario(r=r, eta=eta, nbar=nbar, t=t))
        )
        points.append(ScanPoint(t=t, margin=verdict.margin, decision=verdict.decision))
    return points
