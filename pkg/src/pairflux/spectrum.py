"""Grid drivers over the spectral kernel: profiles, integrated rates,
resonance location, 2D pump scans, stimulated/phase-conjugate bookkeeping,
and the pump-intensity estimate.

All heavy lifting is delegated to the pure functions in pairflux.kernel;
this module owns discretization and quadrature policy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import kernel
from .kernel import DEFAULT_DENOMINATOR_FLOOR

# pump velocity at which the omega = 1/2 resolvent factor vanishes:
# 4 pi / sqrt(pi^2 + (4 - ln 3)^2), about 2.9385
RESONANCE_VELOCITY_PHOTON = 4.0 * math.pi / math.sqrt(
    math.pi**2 + (4.0 - math.log(3.0)) ** 2
)

_PLACEMENTS = ("open-uniform", "gauss-legendre")


class NoResonance(Exception):
    """The effective Green function vanishes at omega = 1/2; no finite pump
    velocity nulls the resolvent (threshold mass)."""


class QuadratureNotConverged(Exception):
    """Adaptive refinement exhausted without convergence or divergence flag."""


@dataclass(frozen=True)
class PumpConfig:
    """Physical pump parameters: dimensionless velocity v = V/c and the
    emitted-boson mass (None = photon), plus the divergence floor."""

    v: float
    mass: float | None = None
    denominator_floor: float = DEFAULT_DENOMINATOR_FLOOR

    def __post_init__(self):
        if self.v < 0.0 or not math.isfinite(self.v):
            raise ValueError(f"pump velocity must be finite and >= 0, got {self.v!r}")
        if self.mass is not None and not 0.0 <= self.mass <= 0.5:
            raise ValueError(f"mass must lie in [0, 1/2], got {self.mass!r}")
        if self.denominator_floor <= 0.0:
            raise ValueError("denominator_floor must be > 0")


@dataclass(frozen=True)
class SpectralGrid:
    """Frequency discretization on [omega_min, omega_max] inside [0, 1].

    'open-uniform' is a midpoint grid (never touches the interval ends);
    'gauss-legendre' places Gauss nodes (open as well).
    """

    omega_min: float = 0.0
    omega_max: float = 1.0
    points: int = 256
    placement: str = "gauss-legendre"

    def __post_init__(self):
        if not 0.0 <= self.omega_min < self.omega_max <= 1.0:
            raise ValueError(
                f"need 0 <= omega_min < omega_max <= 1, got [{self.omega_min}, {self.omega_max}]"
            )
        if self.points < 2:
            raise ValueError(f"points must be >= 2, got {self.points}")
        if self.placement not in _PLACEMENTS:
            raise ValueError(f"placement must be one of {_PLACEMENTS}, got {self.placement!r}")

    def nodes(self) -> np.ndarray:
        if self.placement == "open-uniform":
            h = (self.omega_max - self.omega_min) / self.points
            return self.omega_min + h * (np.arange(self.points) + 0.5)
        x, _ = _leggauss(self.points)
        return self._map_from_unit(x)

    def nodes_weights(self) -> tuple[np.ndarray, np.ndarray]:
        if self.placement == "open-uniform":
            h = (self.omega_max - self.omega_min) / self.points
            return self.nodes(), np.full(self.points, h)
        x, w = _leggauss(self.points)
        half = 0.5 * (self.omega_max - self.omega_min)
        return self._map_from_unit(x), w * half

    def _map_from_unit(self, x: np.ndarray) -> np.ndarray:
        mid = 0.5 * (self.omega_min + self.omega_max)
        half = 0.5 * (self.omega_max - self.omega_min)
        return mid + half * x


@dataclass
class SpectrumResult:
    """Rates sampled on a grid.  flags holds (index, reason) for nodes that
    diverged ('resonant-divergence') or sat on a branch point ('singular')."""

    omega: np.ndarray
    rate: np.ndarray
    pump: PumpConfig
    flags: list[tuple[int, str]] = field(default_factory=list)


_leggauss_cache: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _leggauss(n: int) -> tuple[np.ndarray, np.ndarray]:
    if n not in _leggauss_cache:
        _leggauss_cache[n] = np.polynomial.legendre.leggauss(n)
    return _leggauss_cache[n]


def spectrum_grid(pump: PumpConfig, grid: SpectralGrid) -> SpectrumResult:
    """Evaluate the emission rate at every grid node.

    Divergent or singular nodes are flagged and do not abort the grid.
    A node exactly at omega = 1/2 is nudged off by a fraction of the
    spacing when the pump sits at its resonance velocity, so open grids
    never sample the divergent point itself.
    """
    omega = grid.nodes().copy()
    if pump.v > 0.0:
        try:
            v_res = resonance_velocity(pump.mass)
        except NoResonance:
            v_res = None
        if v_res is not None and abs(pump.v - v_res) < pump.denominator_floor:
            spacing = (grid.omega_max - grid.omega_min) / grid.points
            omega[omega == 0.5] += 1e-3 * spacing
    rate = np.empty_like(omega)
    flags: list[tuple[int, str]] = []
    for i, w in enumerate(omega):
        try:
            r = kernel.emission_rate(float(w), pump.v, pump.mass, pump.denominator_floor)
        except kernel.SingularArgument:
            rate[i] = math.nan
            flags.append((i, "singular"))
            continue
        rate[i] = r
        if math.isinf(r):
            flags.append((i, "resonant-divergence"))
    return SpectrumResult(omega=omega, rate=rate, pump=pump, flags=flags)


def _panel_gauss(f, a: float, b: float, n: int = 16) -> float:
    x, w = _leggauss(n)
    mid, half = 0.5 * (a + b), 0.5 * (b - a)
    total = 0.0
    for xi, wi in zip(x, w):
        total += wi * f(mid + half * xi)
    return total * half


def _adaptive_panel(f, a: float, b: float, rel_tol: float, depth: int) -> float:
    whole = _panel_gauss(f, a, b)
    if math.isinf(whole) or math.isnan(whole):
        return math.inf
    mid = 0.5 * (a + b)
    left = _panel_gauss(f, a, mid)
    right = _panel_gauss(f, mid, b)
    if math.isinf(left) or math.isinf(right) or math.isnan(left) or math.isnan(right):
        return math.inf
    halves = left + right
    if abs(halves - whole) <= rel_tol * (abs(halves) + 1e-300):
        return halves
    if depth <= 0:
        raise QuadratureNotConverged(
            f"panel [{a}, {b}] did not converge and no divergence was flagged"
        )
    return _adaptive_panel(f, a, mid, rel_tol, depth - 1) + _adaptive_panel(
        f, mid, b, rel_tol, depth - 1
    )


def integrated_rate(
    pump: PumpConfig,
    quadrature: SpectralGrid | None = None,
    rel_tol: float = 1e-4,
    max_depth: int = 48,
) -> float:
    """Total emission rate: integral of the spectrum over the grid range
    (default the full pair band [0, 1]).

    Gauss-Legendre base rule; when the pump velocity is within 0.1 of the
    resonance velocity the central region around omega = 1/2 is refined
    by adaptive bisection.  Returns float('inf') when the refinement runs
    into the divergence floor (resonant pump); raises
    QuadratureNotConverged when refinement stalls without a divergence.
    """
    if quadrature is None:
        quadrature = SpectralGrid()
    if pump.v == 0.0:
        return 0.0

    def f(w: float) -> float:
        return kernel.emission_rate(w, pump.v, pump.mass, pump.denominator_floor)

    try:
        v_res = resonance_velocity(pump.mass)
    except NoResonance:
        v_res = None
    near_resonance = v_res is not None and abs(pump.v - v_res) < 0.1

    if not near_resonance:
        omega, w = quadrature.nodes_weights()
        vals = np.array([f(float(x)) for x in omega])
        if np.isinf(vals).any():
            return math.inf
        return float(np.dot(w, vals))

    # the resonant peak lives at omega = 1/2; refine its neighbourhood and
    # keep the fixed rule on the smooth wings
    lo = max(quadrature.omega_min, 0.35)
    hi = min(quadrature.omega_max, 0.65)
    total = 0.0
    for a, b in ((quadrature.omega_min, lo), (hi, quadrature.omega_max)):
        if b > a:
            wing = SpectralGrid(a, b, quadrature.points, "gauss-legendre")
            omega, w = wing.nodes_weights()
            vals = np.array([f(float(x)) for x in omega])
            if np.isinf(vals).any():
                return math.inf
            total += float(np.dot(w, vals))
    centre = _adaptive_panel(f, lo, hi, rel_tol, max_depth)
    if math.isinf(centre):
        return math.inf
    return total + centre


def resonance_velocity(mass: float | None = None) -> float:
    """Pump velocity nulling the omega = 1/2 resolvent factor, 1/|Geff(1/2)|.

    Photon branch: equals 4 pi / sqrt(pi^2 + (4 - ln 3)^2) ~ 2.94.
    Raises NoResonance when Geff(1/2) vanishes (threshold mass = 1/2).
    """
    g = kernel.effective_green_function(0.5, mass)
    modulus = abs(g)
    if modulus == 0.0:
        raise NoResonance(f"effective Green function vanishes at omega = 1/2 for mass {mass!r}")
    return 1.0 / modulus


def scan_2d(
    v_values, grid: SpectralGrid, mass: float | None = None,
    denominator_floor: float = DEFAULT_DENOMINATOR_FLOOR,
) -> np.ndarray:
    """Rate matrix over pump velocities (rows) and frequencies (columns).

    Linear rates; divergent cells carry float('inf').  Downstream emitters
    apply any log scaling.
    """
    rows = []
    for v in v_values:
        pump = PumpConfig(v=float(v), mass=mass, denominator_floor=denominator_floor)
        rows.append(spectrum_grid(pump, grid).rate)
    return np.vstack(rows)


def stimulated_rate(
    omega: float, pump: PumpConfig, n_q: float
) -> tuple[float, float]:
    """Emission rates with n_q quanta already occupying the input mode.

    The occupation enhances emission by the bosonic factor 1 + n_q into
    both the same wavevector and the phase-conjugate partner -alpha q, so
    both returned rates equal (1 + n_q) * spontaneous.
    """
    if n_q < 0.0:
        raise ValueError(f"mode occupation must be >= 0, got {n_q!r}")
    spontaneous = kernel.emission_rate(omega, pump.v, pump.mass, pump.denominator_floor)
    enhanced = (1.0 + n_q) * spontaneous
    return enhanced, enhanced


def conjugate_partner(omega: float) -> tuple[float, float]:
    """Pair partner frequency 1 - omega and wavevector ratio alpha = 1/omega - 1.

    At omega = 1/2 the partner is the phase-conjugate reflection at the
    same frequency (alpha = 1).
    """
    if not 0.0 < omega < 1.0:
        raise ValueError(f"omega must lie in (0, 1), got {omega!r}")
    return 1.0 - omega, 1.0 / omega - 1.0


def required_intensity(n2: float, omega_l_over_c: float, v_target: float) -> float:
    """Pump laser intensity (W/cm^2) reaching a target optical-length velocity.

    Inverts v = n'_0 omega0 L0 / c with the Kerr response n'_0 = n2 * I:
    I = v / (n2 * omega_l_over_c).
    """
    if n2 <= 0.0 or omega_l_over_c <= 0.0 or v_target <= 0.0:
        raise ValueError("n2, omega_l_over_c and v_target must all be > 0")
    return v_target / (n2 * omega_l_over_c)
