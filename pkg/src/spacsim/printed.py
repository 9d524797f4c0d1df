"""Verbatim implementation of the printed closed-form expressions.

This module transcribes, symbol for symbol, the published analytic
results for the conditioned pointer state: the normalisation
coefficient, the five field moments with their helper functions
t1, t3, w1, q1, q2, f1, f3, h1, h2, and the closed-form Wigner
function.  Nothing here is corrected or simplified; the point is to
audit the printed text against the exact Fock-space oracle, so every
suspected misprint is carried over as written and the few genuinely
ambiguous readings are resolved minimally and recorded in
TRANSCRIPTION_NOTES.md at the repository root.

Known readings (details in the notes file):

* the normalisation writes |<sx>|^2 without the weak-value subscript;
  read as the squared modulus of the weak value,
* a doubled "+" in the <a> expression is read as a single plus,
* the <adag^2 a^2> expression references an undefined f2; read as f1,
  mirroring the (s, -s) pairing of every other moment,
* the sign argument of the Wigner helper w is read as the sign of s.

Do not "fix" values coming out of here: disagreement with the oracle
is signal, not a bug.  The audit harness quantifies it per quantity.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import NonPositiveNorm
from .params import ExperimentParams, validate, weak_value


@dataclass(frozen=True)
class PrintedMomentSet:
    """The five printed moments plus the printed normalisation kappa^2."""

    m_a: complex
    m_a2: complex
    m_a4: complex
    n_mean: float
    m_a2d2: float
    kappa_sq: float


def _gamma_sq(alpha: complex) -> float:
    return 1.0 / (1.0 + abs(alpha) ** 2)


def printed_kappa_sq(params: ExperimentParams) -> float:
    """Printed normalisation coefficient kappa^2.

    Inverse of 1 + |w|^2 + g^2 e^{-s^2/2} Re[(1+w*)(1-w)
    (1/g^2 - s^2 + alpha s - alpha* s) e^{2 s i Im(alpha)}] with
    g^2 = 1/(1+|alpha|^2).  Collapses to 1/2 at s = 0.
    """
    validate(params)
    alpha, s = params.alpha, params.s
    w = weak_value(params.delta, params.phi)
    g2 = _gamma_sq(alpha)
    bracket = (1.0 / g2) - s * s + alpha * s - alpha.conjugate() * s
    cross = (1 + w.conjugate()) * (1 - w) * bracket * cmath.exp(2j * s * alpha.imag)
    inv = 1.0 + abs(w) ** 2 + g2 * math.exp(-s * s / 2.0) * cross.real
    if inv <= 0.0:
        raise NonPositiveNorm(f"printed normalisation expression is {inv} at {params}")
    return 1.0 / inv


# --- helper functions, one per printed symbol ------------------------------
# All take the coherent amplitude and the signed coupling; gamma^2 is
# rebuilt inside each helper exactly as the factors appear in print.


def t1(alpha: complex, s: float) -> float:
    """Diagonal helper of the printed <adag a>."""
    g2 = _gamma_sq(alpha)
    aa = abs(alpha) ** 2
    return g2 * ((2 + aa * aa + s * aa) * alpha.real + 3 * aa + 1) + s * s / 4.0


def t3(alpha: complex, s: float) -> complex:
    """Cross helper of the printed <adag a>."""
    g2 = _gamma_sq(alpha)
    ac = alpha.conjugate()
    aa = abs(alpha) ** 2
    poly = (
        4 * aa * aa
        - 6 * s * alpha * aa
        + 2 * (6 * alpha * ac + s * ac * ac * (3 * alpha + s) + s * alpha.real * (8 - 9 * s * alpha - 3 * s * s))
        + 11 * alpha * alpha * s * s
        + s**4
        + 6 * alpha * s**3
        - 5 * s * s
        - 16 * alpha * s
        + 4
    )
    return 0.25 * g2 * cmath.exp(2j * s * alpha.imag) * math.exp(-s * s / 2.0) * poly


def w1(alpha: complex, s: float) -> complex:
    """Cross helper of the printed <a>."""
    ac = alpha.conjugate()
    poly = (
        4 * alpha
        + ac * (s - 2 * alpha) * (s - alpha)
        + 2 * alpha * alpha * s
        + s**3
        - 3 * alpha * s * s
        - 3 * s
    )
    return 0.5 * cmath.exp(2j * s * alpha.imag) * math.exp(-s * s / 2.0) * poly


def q1(alpha: complex, s: float) -> complex:
    """Diagonal helper of the printed <a^2>."""
    g2 = _gamma_sq(alpha)
    aa = abs(alpha) ** 2
    return 0.25 * g2 * (2 * alpha + s) * (6 * alpha + aa * (2 * alpha + s) + s)


def q2(alpha: complex, s: float) -> complex:
    """Cross helper of the printed <a^2>."""
    g2 = _gamma_sq(alpha)
    ac = alpha.conjugate()
    poly = (
        6 * alpha
        + ac * (s - 2 * alpha) * (s - alpha)
        + 2 * alpha * alpha * s
        + s**3
        - 3 * alpha * s * s
        - 5 * s
    )
    return -0.25 * cmath.exp(2j * s * alpha.imag) * math.exp(-s * s / 2.0) * g2 * (s - 2 * alpha) * poly


def f1(alpha: complex, s: float) -> float:
    """Diagonal helper of the printed <adag^2 a^2> (also read for f2)."""
    g2 = _gamma_sq(alpha)
    aa = abs(alpha) ** 2
    re_a = alpha.real
    re_a2 = (alpha * alpha).real
    big = (
        2 * aa**3
        + s * aa * ((s * s + 16) * re_a + s * re_a2)
        + 2 * aa * aa * (2 * s * re_a + s * s + 5)
        + 8 * aa
        + 6 * s * s * aa
        + (2 * s**3 + 8 * s) * re_a
        + 3 * s * s * re_a2
    )
    return 0.5 * g2 * big + s**4 / 16.0 + g2 * s * s


def f3(alpha: complex, s: float) -> complex:
    """Cross helper of the printed <adag^2 a^2>."""
    g2 = _gamma_sq(alpha)
    ac = alpha.conjugate()
    aa = abs(alpha) ** 2
    inner = (
        2 * ac * ac * (s - 2 * alpha) * (s - alpha)
        + 20 * aa
        + 3 * s * ac * (s - 2 * alpha) * (s - alpha)
        + 28j * s * alpha.imag
        + s * s * (2 * alpha * alpha + s * s - 3 * alpha * s - 9)
        + 16 * cmath.exp(-0.5 * s * (s - 4j * alpha.imag))
    )
    return -g2 / 16.0 * (s - 2 * alpha) * (2 * ac + s) * inner


def h1(alpha: complex, s: float) -> complex:
    """Diagonal helper of the printed <a^4>."""
    g2 = _gamma_sq(alpha)
    aa = abs(alpha) ** 2
    return (
        8 * alpha * g2 * aa * (alpha + s) * (2 * alpha * alpha + s * s + 2 * alpha * s)
        + s**4
        + 8 * alpha * g2 * (10 * alpha**3 + 2 * s**3 + 9 * alpha * s * s + 16 * alpha * alpha * s)
    ) / 16.0


def h2(alpha: complex, s: float) -> complex:
    """Cross helper of the printed <a^4>."""
    g2 = _gamma_sq(alpha)
    ac = alpha.conjugate()
    poly = (
        10 * alpha
        + ac * (s - 2 * alpha) * (s - alpha)
        + 2 * alpha * alpha * s
        + s**3
        - 3 * alpha * s * s
        - 9 * s
    )
    return -g2 / 16.0 * cmath.exp(2j * s * alpha.imag) * math.exp(-s * s / 2.0) * (s - 2 * alpha) ** 3 * poly


def printed_moments(params: ExperimentParams) -> PrintedMomentSet:
    """All five printed moments of the conditioned pointer state.

    Combines the helpers with the printed branch weights
    |1+w|^2, |1-w|^2 and the (1+-w)(1-+w)* cross coefficients, scaled
    by the printed kappa^2.  Values are returned exactly as the text
    gives them; the audit harness owns any comparison to the oracle.
    """
    validate(params)
    alpha, s = params.alpha, params.s
    w = weak_value(params.delta, params.phi)
    k2 = printed_kappa_sq(params)
    g2 = _gamma_sq(alpha)
    dp = abs(1 + w) ** 2
    dm = abs(1 - w) ** 2
    cpm = (1 - w) * (1 + w).conjugate()   # (1-w)(1+w)*
    cmp_ = cpm.conjugate()                # (1+w)(1-w)*

    n_mean = k2 * (dp * t1(alpha, s) + dm * t1(alpha, -s) + 2 * (cpm * t3(alpha, s)).real)

    m_a = (
        k2
        * g2
        * (
            dp * (2 * alpha + alpha * abs(alpha) ** 2 + s / (2 * g2))
            + dm * (2 * alpha + alpha * abs(alpha) ** 2 - s / (2 * g2))
            + cpm * w1(alpha, s)
            + cmp_ * w1(alpha, -s)
        )
    )

    m_a2 = k2 * (dp * q1(alpha, s) + dm * q1(alpha, -s) + cpm * q2(alpha, s) + cmp_ * q2(alpha, -s))

    # the second diagonal term is printed as f2(-s) with f2 undefined; f1 is used
    m_a2d2 = k2 * (dp * f1(alpha, s) + dm * f1(alpha, -s) + 2 * (cpm * f3(alpha, s)).real)

    m_a4 = k2 * (dp * h1(alpha, s) + dm * h1(alpha, -s) + cmp_.conjugate() * h2(alpha, s) + cmp_ * h2(alpha, -s))

    return PrintedMomentSet(
        m_a=complex(m_a),
        m_a2=complex(m_a2),
        m_a4=complex(m_a4),
        n_mean=float(n_mean),
        m_a2d2=float(m_a2d2),
        kappa_sq=k2,
    )


def _w_helper(alpha: complex, s: float, z: complex) -> float:
    """Printed Wigner helper w(.); the sign of s selects the branch."""
    shifted = abs(2 * z - alpha) ** 2
    return (
        math.exp(-s * s / 2.0)
        * math.exp(-2.0 * (alpha.real - z.real) * s)
        * (-1.0 + shifted + 2 * s * (alpha.real - 2 * z.real + s / 2.0))
    )


def printed_wigner(params: ExperimentParams, z: complex) -> float:
    """Closed-form Wigner function exactly as printed."""
    validate(params)
    alpha, s = params.alpha, params.s
    z = complex(z)
    w = weak_value(params.delta, params.phi)
    k2 = printed_kappa_sq(params)
    cross = (1 + w).conjugate() * (1 - w) * cmath.exp(2j * s * z.imag)
    brace = (
        abs(1 + w) ** 2 * _w_helper(alpha, s, z)
        + abs(1 - w) ** 2 * _w_helper(alpha, -s, z)
        + 2.0 * (-1.0 + abs(2 * z - alpha) ** 2) * cross.real
    )
    prefactor = 2.0 * k2 / (math.pi * (1.0 + abs(alpha) ** 2))
    return prefactor * math.exp(-2.0 * abs(z - alpha) ** 2) * brace


def printed_wigner_values(params: ExperimentParams, zs: np.ndarray) -> np.ndarray:
    """Vectorised :func:`printed_wigner` over an array of points."""
    zs = np.asarray(zs, dtype=np.complex128)
    flat = np.array([printed_wigner(params, z) for z in zs.ravel()])
    return flat.reshape(zs.shape)
