"""Scenario parameters and the scalar quantities derived from them.

A measurement scenario is fully described by the coherent amplitude
``alpha = r * exp(i*theta)``, the preselection angles ``(delta, phi)``,
the coupling ratio ``s`` (integrated coupling strength over pointer beam
width) and the Fock truncation dimension.  The two-level system never
appears explicitly anywhere else: postselecting on the horizontal
polarisation reduces it to the complex weak value and the success
probability computed here.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace

from .errors import DegeneratePostselection, RangeError

DEFAULT_TRUNC = 128

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class ExperimentParams:
    """One parameter point: amplitude, angles, coupling and truncation.

    r : coherent amplitude modulus, >= 0
    theta : coherent amplitude phase, in [0, 2*pi)
    delta : preselection relative phase, in [0, 2*pi]
    phi : preselection polar angle, in [0, pi); phi = pi would make the
        postselection overlap cos(phi/2) vanish
    s : coupling ratio g0/sigma, >= 0; s < 1 is the weak-measurement regime
    trunc : Fock truncation dimension, >= 2
    """

    r: float
    theta: float
    delta: float
    phi: float
    s: float
    trunc: int = DEFAULT_TRUNC

    @property
    def alpha(self) -> complex:
        return self.r * cmath.exp(1j * self.theta)

    def with_(self, **changes) -> "ExperimentParams":
        """Return a copy with the given fields replaced."""
        return replace(self, **changes)


#: Parameter point every figure is built around (r and s vary per sweep).
FIGURE_PRESET = ExperimentParams(
    r=1.0,
    theta=math.pi / 4,
    delta=math.pi / 6,
    phi=7 * math.pi / 9,
    s=0.5,
)


def validate(params: ExperimentParams) -> ExperimentParams:
    """Check all range invariants, returning the params unchanged if valid.

    Raises RangeError naming the offending field, or
    DegeneratePostselection for phi >= pi.
    """
    if not math.isfinite(params.r) or params.r < 0:
        raise RangeError("r", f"coherent amplitude modulus must be >= 0, got {params.r}")
    if not math.isfinite(params.theta) or not 0 <= params.theta < TWO_PI:
        raise RangeError("theta", f"phase must lie in [0, 2*pi), got {params.theta}")
    if not math.isfinite(params.delta) or not 0 <= params.delta <= TWO_PI:
        raise RangeError("delta", f"phase must lie in [0, 2*pi], got {params.delta}")
    if not math.isfinite(params.phi) or params.phi < 0:
        raise RangeError("phi", f"polar angle must be >= 0, got {params.phi}")
    if params.phi >= math.pi:
        raise DegeneratePostselection(
            f"phi = {params.phi} >= pi: pre- and postselection are orthogonal"
        )
    if not math.isfinite(params.s) or params.s < 0:
        raise RangeError("s", f"coupling ratio must be >= 0, got {params.s}")
    if not isinstance(params.trunc, int) or params.trunc < 2:
        raise RangeError("trunc", f"truncation dimension must be an integer >= 2, got {params.trunc}")
    return params


def weak_value(delta: float, phi: float) -> complex:
    """Conditioned expectation of the measured spin component.

    Equals exp(i*delta) * tan(phi/2): modulus tan(phi/2), phase delta.
    Unbounded as phi approaches pi, which is what makes large "weak value
    amplification" possible at the price of a small success probability.
    """
    if phi < 0:
        raise RangeError("phi", f"polar angle must be >= 0, got {phi}")
    if phi >= math.pi:
        raise DegeneratePostselection(f"phi = {phi} >= pi: weak value diverges")
    return cmath.exp(1j * delta) * math.tan(phi / 2)


def postselection_probability(phi: float) -> float:
    """Success probability cos(phi/2)**2 of the postselection, in (0, 1]."""
    if phi < 0:
        raise RangeError("phi", f"polar angle must be >= 0, got {phi}")
    if phi >= math.pi:
        raise DegeneratePostselection(f"phi = {phi} >= pi: postselection never succeeds")
    return math.cos(phi / 2) ** 2
