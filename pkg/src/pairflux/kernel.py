"""Closed-form spectral kernel for two-boson vacuum emission.

A medium whose optical length oscillates harmonically (pump frequency
omega0, maximal boundary velocity v in units of c) converts zero-point
fluctuations into pairs of quanta with frequencies omega and 1 - omega
(units omega0 = hbar = c = 1 throughout).  The emission spectrum is a
resolvent resummation of the mode-mixing interaction,

    rate(omega) = (v / 2 pi)^2 * omega (1 - omega)
                  / |1 - v^2 G*(omega) G(1 - omega)|^2,

where G is the band Green function of the continuum of modes below the
pump frequency.  Everything in this module is a pure function of its
arguments; grid drivers live in pairflux.spectrum.
"""

from __future__ import annotations

import math

TWO_PI = 2.0 * math.pi

# |resolvent factor| below this is reported as a divergence (rate = inf)
# rather than an overflowing float; the divergence at the resonant pump
# velocity is physical and must stay visible.
DEFAULT_DENOMINATOR_FLOOR = 1e-12


class SingularArgument(ValueError):
    """Evaluation exactly on a logarithmic branch point of the Green function."""


def green_function(omega: float) -> complex:
    """Band Green function G(omega) of the sub-pump mode continuum.

    G(omega) = (1/pi) [1 + (omega/2) ln(|1-omega| / |1+omega|)]
               + i (omega/2) Theta(1 - |omega|)

    Real for |omega| > 1; the imaginary part omega/2 inside the band is
    the absorptive (mode-density) piece.  Satisfies G(-omega) = conj(G(omega)).

    Raises SingularArgument at |omega| = 1, the logarithmic branch point.
    """
    if not math.isfinite(omega):
        raise ValueError(f"omega must be finite, got {omega!r}")
    a = abs(1.0 - omega)
    if a == 0.0 or abs(1.0 + omega) == 0.0:
        raise SingularArgument(f"G(omega) has a log singularity at |omega| = 1 (omega = {omega!r})")
    re = (1.0 + 0.5 * omega * math.log(a / abs(1.0 + omega))) / math.pi
    im = 0.5 * omega if abs(omega) < 1.0 else 0.0
    return complex(re, im)


def shifted_green_function(omega: float, mass: float) -> complex:
    """Mass-shifted companion G1 entering the massive (Klein-Gordon) spectrum.

    Obtained from G by moving the band-edge factor 1 - omega to
    2*mass - omega, literally:  ln|1-omega| -> ln|2m-omega| and the band
    indicator Theta(1-omega) -> Theta(2m-omega), with the |1+omega|
    factor untouched.  Defined on the physical domain omega >= 0 with
    0 <= mass <= 1/2; at mass = 1/2 it coincides with G.

    Raises SingularArgument at omega = 2*mass (shifted branch point).
    """
    if not math.isfinite(omega) or omega < 0.0:
        raise ValueError(f"omega must be finite and >= 0, got {omega!r}")
    if not 0.0 <= mass <= 0.5:
        raise ValueError(f"mass must lie in [0, 1/2] (pair threshold), got {mass!r}")
    a = abs(2.0 * mass - omega)
    if a == 0.0:
        raise SingularArgument(f"G1 has a log singularity at omega = 2*mass (omega = {omega!r})")
    re = (1.0 + 0.5 * omega * math.log(a / abs(1.0 + omega))) / math.pi
    im = 0.5 * omega if omega < 2.0 * mass else 0.0
    return complex(re, im)


def effective_green_function(omega: float, mass: float | None = None) -> complex:
    """G for the photon branch (mass None), G - G1 for a massive boson.

    Identically zero at the pair-creation threshold mass = 1/2: the
    shifted function then equals G and the emission channel closes.
    """
    g = green_function(omega)
    if mass is None:
        return g
    return g - shifted_green_function(omega, mass)


def resolvent_factor(
    omega: float, velocity: float, mass: float | None = None
) -> complex:
    """Resolvent denominator factor 1 - v^2 Geff*(omega) Geff(1-omega).

    Its squared modulus divides the pair spectrum; its zero at
    (omega = 1/2, v = v_r) is the resonant enhancement of the emission.
    """
    if velocity < 0.0:
        raise ValueError(f"velocity must be >= 0, got {velocity!r}")
    if not 0.0 < omega < 1.0:
        raise ValueError(f"omega must lie in (0, 1), got {omega!r}")
    g_w = effective_green_function(omega, mass)
    g_p = effective_green_function(1.0 - omega, mass)
    return 1.0 - velocity * velocity * g_w.conjugate() * g_p


def emission_rate(
    omega: float,
    velocity: float,
    mass: float | None = None,
    denominator_floor: float = DEFAULT_DENOMINATOR_FLOOR,
) -> float:
    """Pair emission rate per unit time and frequency at omega in [0, 1].

    Photon branch: (v/2pi)^2 omega(1-omega) / |1 - v^2 G*(omega) G(1-omega)|^2.

    The numerator is the product of the absorptive parts of the effective
    Green function at the two pair frequencies, 4 Im Geff(omega) Im
    Geff(1-omega); for photons this is exactly omega(1-omega), and for a
    massive boson it carries the mass dependence so that the rate
    vanishes identically at the threshold mass = 1/2 (Geff == 0 there).

    Endpoints omega in {0, 1} return 0 by limit.  A denominator modulus
    below `denominator_floor` is reported as float('inf') - a flagged
    divergence, not an error.
    """
    if not 0.0 <= omega <= 1.0:
        raise ValueError(f"omega must lie in [0, 1], got {omega!r}")
    if velocity < 0.0:
        raise ValueError(f"velocity must be >= 0, got {velocity!r}")
    if denominator_floor <= 0.0:
        raise ValueError("denominator_floor must be > 0")
    if omega == 0.0 or omega == 1.0:
        return 0.0
    g_w = effective_green_function(omega, mass)
    g_p = effective_green_function(1.0 - omega, mass)
    numerator = (velocity / TWO_PI) ** 2 * 4.0 * g_w.imag * g_p.imag
    if numerator == 0.0:
        return 0.0
    factor = 1.0 - velocity * velocity * g_w.conjugate() * g_p
    if abs(factor) < denominator_floor:
        return math.inf
    return numerator / abs(factor) ** 2


def perturbative_rate(omega: float, velocity: float) -> float:
    """Weak-pump limit (v/2pi)^2 omega(1-omega) of the photon spectrum.

    Coincides with ordinary time-dependent perturbation theory; the full
    rate approaches it quadratically as v -> 0.
    """
    if not 0.0 <= omega <= 1.0:
        raise ValueError(f"omega must lie in [0, 1], got {omega!r}")
    if velocity < 0.0:
        raise ValueError(f"velocity must be >= 0, got {velocity!r}")
    return (velocity / TWO_PI) ** 2 * omega * (1.0 - omega)
