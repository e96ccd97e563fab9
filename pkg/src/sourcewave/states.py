"""Initial states on a grid and their momentum-space amplitudes.

Two state families are provided:

* the ground state of an infinite well of width D = b - a confined to
  [a, b] with a < b <= 0, optionally boosted to mean momentum <p>;
* a minimum-uncertainty Gaussian (Delta_x * Delta_p = hbar/2).

Both come with momentum amplitudes psi~(p) = h^(-1/2) Int dx e^(-ipx/hbar)
psi(x):  as an analytic closed form evaluable at *complex* p (needed by the
energy-domain formalism, which continues p onto the positive imaginary
axis), and as sampled data obtained by discrete transform of a grid field.
For a state supported in x < 0 the analytic amplitude decays to zero as
|p| -> oo in the upper half p-plane.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .constants import ATOMIC_UNITS, PhysicalConstants
from .errors import DomainError, GeometryError

__all__ = [
    "Grid1D",
    "WaveField",
    "WellStateSpec",
    "GaussianStateSpec",
    "MomentumAmplitude",
    "AnalyticAmplitude",
    "SampledAmplitude",
    "well_ground_state",
    "gaussian_state",
    "momentum_amplitude_well",
    "momentum_amplitude_gaussian",
    "well_amplitude",
    "gaussian_amplitude",
    "momentum_transform",
]


@dataclass(frozen=True)
class Grid1D:
    """Uniform spatial grid on [x_min, x_max) with n points (n a power of
    two, endpoint excluded as usual for periodic transforms)."""

    x_min: float
    x_max: float
    n: int

    def __post_init__(self):
        if not (self.x_min < self.x_max):
            raise GeometryError(f"x_min must be < x_max, got [{self.x_min}, {self.x_max}]")
        if self.n < 2 or (self.n & (self.n - 1)) != 0:
            raise GeometryError(f"n must be a power of two >= 2, got {self.n}")

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / self.n

    @property
    def x(self) -> np.ndarray:
        return self.x_min + self.dx * np.arange(self.n)

    def momenta(self, constants: PhysicalConstants = ATOMIC_UNITS) -> np.ndarray:
        """Momentum samples 2*pi*hbar*fftfreq(n, dx), in FFT order."""
        return 2.0 * np.pi * constants.hbar * np.fft.fftfreq(self.n, d=self.dx)

    def index_of(self, x0: float) -> int:
        """Index of the grid point closest to x0 (must lie within dx/2)."""
        idx = int(round((x0 - self.x_min) / self.dx))
        if not (0 <= idx < self.n) or abs(self.x_min + idx * self.dx - x0) > 0.5 * self.dx:
            raise GeometryError(f"x = {x0} is not a grid point of {self}")
        return idx


@dataclass(frozen=True)
class WaveField:
    """Complex wave function sampled on a grid at one instant.

    ``values`` is frozen after construction (read-only array view); all
    evolution operations return new fields.
    """

    grid: Grid1D
    values: np.ndarray
    time: float = 0.0

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.complex128)
        if values.shape != (self.grid.n,):
            raise GeometryError(
                f"values length {values.shape} does not match grid n = {self.grid.n}"
            )
        if not np.all(np.isfinite(values.real)) or not np.all(np.isfinite(values.imag)):
            raise DomainError("wave field contains non-finite values")
        values = values.copy()
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    def norm_squared(self) -> float:
        """Int |psi|^2 dx by the grid rectangle rule (exact for band-limited
        fields, consistent with the discrete Parseval identity)."""
        return float(np.sum(np.abs(self.values) ** 2) * self.grid.dx)

    def density(self) -> np.ndarray:
        return np.abs(self.values) ** 2

    def position_mean(self) -> float:
        w = self.density()
        return float(np.sum(self.grid.x * w) * self.grid.dx / self.norm_squared())

    def momentum_mean(self, constants: PhysicalConstants = ATOMIC_UNITS) -> float:
        amp = momentum_transform(self, constants)
        w = np.abs(amp.values) ** 2
        return float(np.sum(amp.p * w) * amp.dp / (np.sum(w) * amp.dp))

    def momentum_variance(self, constants: PhysicalConstants = ATOMIC_UNITS) -> float:
        amp = momentum_transform(self, constants)
        w = np.abs(amp.values) ** 2
        w /= np.sum(w)
        mean = float(np.sum(amp.p * w))
        return float(np.sum((amp.p - mean) ** 2 * w))


@dataclass(frozen=True)
class WellStateSpec:
    """Ground state of an infinite well on [a, b], a < b <= 0, boosted to
    mean momentum p_avg."""

    a: float
    b: float
    p_avg: float = 0.0

    def __post_init__(self):
        if not (self.a < self.b <= 0.0):
            raise GeometryError(f"well needs a < b <= 0, got a={self.a}, b={self.b}")

    @property
    def width(self) -> float:
        return self.b - self.a

    @property
    def k_w(self) -> float:
        """Ground-state wavenumber pi / D."""
        return math.pi / self.width

    def p_w(self, constants: PhysicalConstants = ATOMIC_UNITS) -> float:
        """Ground-state momentum hbar * pi / D."""
        return constants.hbar * self.k_w


@dataclass(frozen=True)
class GaussianStateSpec:
    """Minimum-uncertainty Gaussian: Delta_x * Delta_p = hbar / 2."""

    x0: float
    p_avg: float
    delta_x: float

    def __post_init__(self):
        if not (self.delta_x > 0.0):
            raise GeometryError(f"delta_x must be positive, got {self.delta_x}")

    def delta_p(self, constants: PhysicalConstants = ATOMIC_UNITS) -> float:
        return 0.5 * constants.hbar / self.delta_x


class MomentumAmplitude:
    """Base for momentum-space amplitudes psi~(p)."""

    kind = "abstract"


@dataclass(frozen=True)
class AnalyticAmplitude(MomentumAmplitude):
    """Closed-form amplitude, evaluable at any complex p (vectorised)."""

    evaluate: "callable"
    label: str
    constants: PhysicalConstants = ATOMIC_UNITS

    kind = "analytic"

    def __call__(self, p):
        return self.evaluate(p)


@dataclass(frozen=True)
class SampledAmplitude(MomentumAmplitude):
    """Amplitude known only at real grid momenta (ascending)."""

    p: np.ndarray
    values: np.ndarray
    constants: PhysicalConstants = ATOMIC_UNITS

    kind = "sampled"

    def __post_init__(self):
        p = np.asarray(self.p, dtype=np.float64)
        v = np.asarray(self.values, dtype=np.complex128)
        if p.shape != v.shape or p.ndim != 1:
            raise GeometryError("p grid and values must be 1D arrays of equal length")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "values", v)

    @property
    def dp(self) -> float:
        return float(self.p[1] - self.p[0])


def well_ground_state(
    spec: WellStateSpec,
    grid: Grid1D,
    constants: PhysicalConstants = ATOMIC_UNITS,
) -> WaveField:
    """Sample the (optionally boosted) well ground state on a grid.

    psi(x, 0) = (2/D)^(1/2) sin[(x - a) pi / D] on [a, b], zero elsewhere,
    times the boost phase exp(i <p> x / hbar).

    Raises GeometryError when the well is outside the grid or resolved by
    fewer than 32 grid points.
    """
    if not (grid.x_min <= spec.a and spec.b <= grid.x_max):
        raise GeometryError(
            f"well [{spec.a}, {spec.b}] outside grid [{grid.x_min}, {grid.x_max}]"
        )
    x = grid.x
    inside = (x > spec.a) & (x < spec.b)
    if int(np.count_nonzero(inside)) < 32:
        raise GeometryError("grid resolves the well with fewer than 32 points")
    psi = np.zeros(grid.n, dtype=np.complex128)
    psi[inside] = math.sqrt(2.0 / spec.width) * np.sin((x[inside] - spec.a) * spec.k_w)
    if spec.p_avg != 0.0:
        psi = psi * np.exp(1j * spec.p_avg * x / constants.hbar)
    return WaveField(grid=grid, values=psi, time=0.0)


def gaussian_state(
    spec: GaussianStateSpec,
    grid: Grid1D,
    constants: PhysicalConstants = ATOMIC_UNITS,
    tail_tolerance: float = 1e-12,
) -> WaveField:
    """Sample a normalised minimum-uncertainty Gaussian on a grid.

    Raises GeometryError if the envelope at the grid edges exceeds
    ``tail_tolerance`` relative to the peak (truncation would then corrupt
    norm and transforms).
    """
    # both edges must be deep in the tail
    worst = max(
        math.exp(-((grid.x_min - spec.x0) ** 2) / (4.0 * spec.delta_x**2)),
        math.exp(-((grid.x_max - grid.dx - spec.x0) ** 2) / (4.0 * spec.delta_x**2)),
    )
    if worst > tail_tolerance:
        raise GeometryError(
            f"Gaussian tails at grid edges ({worst:.2e}) above tolerance {tail_tolerance:.0e}"
        )
    x = grid.x
    norm = (2.0 * math.pi * spec.delta_x**2) ** -0.25
    psi = norm * np.exp(
        -((x - spec.x0) ** 2) / (4.0 * spec.delta_x**2)
        + 1j * spec.p_avg * x / constants.hbar
    )
    return WaveField(grid=grid, values=psi, time=0.0)


def _difference_quotient(z, a, b, hbar):
    """(exp(-i z b / hbar) - exp(-i z a / hbar)) / z with a series branch
    near the removable singularity z = 0."""
    z = np.asarray(z, dtype=np.complex128)
    scale = max(abs(a), abs(b)) / hbar
    small = np.abs(z) * scale < 1e-6
    safe = np.where(small, 1.0, z)
    direct = (np.exp(-1j * safe * b / hbar) - np.exp(-1j * safe * a / hbar)) / safe
    if np.any(small):
        series = np.zeros_like(z)
        term_a, term_b = 1.0 + 0.0j, 1.0 + 0.0j
        for k in range(1, 7):
            term_a = term_a * (-1j * a / hbar)
            term_b = term_b * (-1j * b / hbar)
            series = series + (term_b - term_a) / math.factorial(k) * z ** (k - 1)
        direct = np.where(small, series, direct)
    return direct


def momentum_amplitude_well(
    spec: WellStateSpec,
    p,
    constants: PhysicalConstants = ATOMIC_UNITS,
):
    """Closed-form momentum amplitude of the well ground state, evaluable
    at complex p (boost shifts the argument, psi~_boosted(p) = psi~(p - <p>)).

    The removable singularities at p - <p> = +-(hbar pi / D) are filled by
    their analytic limits.
    """
    hbar = constants.hbar
    h = constants.h
    p = np.asarray(p, dtype=np.complex128)
    shifted = p - spec.p_avg
    p_w = spec.p_w(constants)
    prefactor = -math.sqrt(2.0 * h) / (4.0 * math.pi * math.sqrt(spec.width))
    total = np.zeros_like(shifted)
    for alpha in (+1.0, -1.0):
        quotient = _difference_quotient(shifted + alpha * p_w, spec.a, spec.b, hbar)
        total = total + alpha * quotient * np.exp(1j * alpha * p_w * spec.a / hbar)
    result = prefactor * total
    if np.ndim(p) == 0:
        return complex(result[()])
    return result


def momentum_amplitude_gaussian(
    spec: GaussianStateSpec,
    p,
    constants: PhysicalConstants = ATOMIC_UNITS,
):
    """Closed-form momentum amplitude of the minimum-uncertainty Gaussian,
    entire in p:

    psi~(p) = (2 pi dp^2)^(-1/4) exp[-(p - p0)^2 / (4 dp^2)] exp[-i (p - p0) x0 / hbar]
    """
    hbar = constants.hbar
    dp = spec.delta_p(constants)
    p = np.asarray(p, dtype=np.complex128)
    shifted = p - spec.p_avg
    result = (
        (2.0 * math.pi * dp**2) ** -0.25
        * np.exp(-(shifted**2) / (4.0 * dp**2) - 1j * shifted * spec.x0 / hbar)
    )
    if np.ndim(p) == 0:
        return complex(result[()])
    return result


def well_amplitude(
    spec: WellStateSpec, constants: PhysicalConstants = ATOMIC_UNITS
) -> AnalyticAmplitude:
    """Analytic MomentumAmplitude for a well state."""
    return AnalyticAmplitude(
        evaluate=lambda p: momentum_amplitude_well(spec, p, constants),
        label=f"well[a={spec.a}, b={spec.b}, p_avg={spec.p_avg}]",
        constants=constants,
    )


def gaussian_amplitude(
    spec: GaussianStateSpec, constants: PhysicalConstants = ATOMIC_UNITS
) -> AnalyticAmplitude:
    """Analytic MomentumAmplitude for a Gaussian state."""
    return AnalyticAmplitude(
        evaluate=lambda p: momentum_amplitude_gaussian(spec, p, constants),
        label=f"gaussian[x0={spec.x0}, p_avg={spec.p_avg}, dx={spec.delta_x}]",
        constants=constants,
    )


def momentum_transform(
    field: WaveField, constants: PhysicalConstants = ATOMIC_UNITS
) -> SampledAmplitude:
    """Discrete momentum amplitude psi~(p) = h^(-1/2) Int dx e^(-ipx/hbar) psi(x).

    Momentum sampling follows the grid convention p in [-pi hbar/dx,
    pi hbar/dx); the discrete Parseval identity
    sum |psi~|^2 dp = sum |psi|^2 dx holds exactly.
    """
    grid = field.grid
    hbar = constants.hbar
    p = grid.momenta(constants)
    # e^(-i p x / hbar) with x = x_min + k dx reduces to a DFT times a
    # p-dependent boundary phase
    coeff = grid.dx / math.sqrt(constants.h) * np.exp(-1j * p * grid.x_min / hbar)
    values = coeff * np.fft.fft(field.values)
    order = np.fft.fftshift
    return SampledAmplitude(
        p=order(p), values=order(values), constants=constants
    )
