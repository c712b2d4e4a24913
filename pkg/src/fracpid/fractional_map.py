"""Conformal mapping of PID controller zeros between the s- and w-planes.

A PID controller whose integral and derivative actions share a fractional
order ``q`` has two zeros in the w-plane (``w = s^q``). On the primary
Riemann sheet a w-plane zero at angle ``phi`` maps to an s-plane zero at
angle ``phi/q``, so sweeping ``q`` moves the controller zeros through the
s-plane while the w-plane geometry stays fixed. Only zeros inside the wedge
``pi*q/2 < phi < pi*q`` map to conventional oscillatory dynamics; the
equivalent integer-order PID of such a controller follows in closed form.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .pole_placement import PidGains

__all__ = [
    "WZeros",
    "WedgeClass",
    "RealZeros",
    "OutsideWedge",
    "w_zeros",
    "classify_wedge",
    "s_zeros",
    "equivalent_pid",
    "Q_SWEEP_HIGH",
    "Q_SWEEP_LOW",
]

# default fractional-order sweep range
Q_SWEEP_HIGH = 1.3
Q_SWEEP_LOW = 0.7


class RealZeros(ValueError):
    """Controller zeros are real in the w-plane (ultra-damped, not usable)."""


class OutsideWedge(ValueError):
    """The w-plane zeros fall outside the under-damped wedge for this order."""


class WedgeClass(enum.Enum):
    """Classification of a w-plane zero angle against the order-q wedge."""

    UNSTABLE = "unstable"
    UNDER_DAMPED = "under-damped"
    HYPER_DAMPED = "hyper-damped"
    ULTRA_DAMPED = "ultra-damped"


@dataclass(frozen=True)
class WZeros:
    """Conjugate w-plane zero pair in cartesian and polar form.

    ``phi`` is the principal angle of the upper zero, in (0, pi].
    """

    w1: complex
    w2: complex
    r: float
    phi: float


def _check_q(q: float) -> None:
    if not 0.0 < q <= 2.0:
        raise ValueError(f"fractional order q={q!r} outside (0, 2]")


def w_zeros(gains: PidGains) -> WZeros:
    """w-plane zeros of ``kd*w^2 + kp*w + ki``.

    Requires positive ki and kd and a negative discriminant, otherwise the
    zeros are real (RealZeros). The angle is computed with the two-argument
    arctangent so it stays correct for kp <= 0.
    """
    kp, ki, kd = gains.kp, gains.ki, gains.kd
    if kd <= 0.0 or ki <= 0.0:
        raise ValueError("w_zeros requires ki > 0 and kd > 0")
    disc = 4.0 * ki * kd - kp * kp
    if disc <= 0.0:
        raise RealZeros(
            f"kp^2 >= 4*ki*kd for {gains}; zeros lie on the real w-axis"
        )
    re = -kp / (2.0 * kd)
    im = math.sqrt(disc) / (2.0 * kd)
    w1 = complex(re, im)
    return WZeros(w1=w1, w2=w1.conjugate(), r=math.sqrt(ki / kd), phi=math.atan2(im, re))


def classify_wedge(phi: float, q: float) -> WedgeClass:
    """Place a w-plane zero angle against the order-q stability wedge.

    Boundaries are conservative: ``phi == pi*q/2`` counts as unstable and
    ``phi == pi*q`` is labelled ultra-damped, so only strictly interior
    angles qualify as under-damped.
    """
    _check_q(q)
    if not 0.0 < phi <= math.pi:
        raise ValueError(f"phi={phi!r} outside (0, pi]")
    if phi <= math.pi * q / 2.0:
        return WedgeClass.UNSTABLE
    if phi < math.pi * q:
        return WedgeClass.UNDER_DAMPED
    if phi == math.pi * q:
        return WedgeClass.ULTRA_DAMPED
    return WedgeClass.HYPER_DAMPED


def s_zeros(gains: PidGains, q: float) -> tuple[complex, complex]:
    """Map the controller zeros back to the s-plane on the primary sheet.

    Returns the conjugate pair (upper, lower). Requires the under-damped
    wedge classification, otherwise the mapped zeros would not produce
    stable oscillatory dynamics (OutsideWedge).
    """
    wz = w_zeros(gains)
    wedge = classify_wedge(wz.phi, q)
    if wedge is not WedgeClass.UNDER_DAMPED:
        raise OutsideWedge(f"zeros classify as {wedge.value} at q={q:g}")
    mag = (gains.ki / gains.kd) ** (1.0 / (2.0 * q))
    angle = wz.phi / q
    upper = complex(mag * math.cos(angle), mag * math.sin(angle))
    return upper, upper.conjugate()


def equivalent_pid(gains: PidGains, q: float) -> PidGains:
    """Integer-order PID with its zeros at the order-q mapped positions.

    Identity at q=1. Inside the under-damped wedge ``cos(phi/q)`` is
    negative, so all three equivalent gains come out positive.
    """
    wz = w_zeros(gains)
    wedge = classify_wedge(wz.phi, q)
    if wedge is not WedgeClass.UNDER_DAMPED:
        raise OutsideWedge(f"zeros classify as {wedge.value} at q={q:g}")
    return PidGains(
        kp=-2.0 * (gains.ki * gains.kd) ** (1.0 / (2.0 * q)) * math.cos(wz.phi / q),
        ki=gains.ki ** (1.0 / q),
        kd=gains.kd ** (1.0 / q),
    )
