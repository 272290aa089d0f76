"""Parameter records shared by the cavity and free-space models.

Cavity quantities are in units of the cavity leak rate ``kappa`` (time in
``1/kappa``); free-space quantities in units of the bare decay rate ``gamma``.
"""

import math
from dataclasses import dataclass, field
from typing import Optional


class ParameterError(ValueError):
    """Invalid model parameter; ``field`` names the offending input."""

    def __init__(self, field_name, message):
        super().__init__(f"{field_name}: {message}")
        self.field = field_name


class ConvergenceError(RuntimeError):
    """Truncation search did not converge."""


def _finite(name, value):
    value = float(value)
    if not math.isfinite(value):
        raise ParameterError(name, f"must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class CavityParams:
    """Emitter coupled to a broadband lossy cavity, frequency-modulated.

    ``chi = b/omega`` is the modulation index, ``delta_c`` the
    cavity-emitter detuning and ``phi`` the absolute modulation phase.
    """

    g: float = 0.3
    kappa: float = 1.0
    delta_c: float = 0.0
    omega: float = 0.12
    chi: float = 0.0
    phi: float = 0.0

    def __post_init__(self):
        for name in ("g", "kappa", "delta_c", "omega", "chi", "phi"):
            object.__setattr__(self, name, _finite(name, getattr(self, name)))
        if self.kappa <= 0:
            raise ParameterError("kappa", "must be > 0")
        if self.omega <= 0:
            raise ParameterError("omega", "must be > 0 (chi = b/omega is undefined otherwise)")
        if self.g < 0:
            raise ParameterError("g", "must be >= 0")
        if self.chi < 0:
            raise ParameterError("chi", "must be >= 0")

    @property
    def gamma0(self):
        """Unmodulated near-resonance decay rate ``g**2 / kappa``."""
        return self.g**2 / self.kappa


@dataclass(frozen=True)
class Truncation:
    """Symmetric cutoff ``|m|, |n| <= n_bar`` of the sideband sums."""

    n_bar: int
    auto: bool = False
    achieved_tol: Optional[float] = None

    def __post_init__(self):
        if int(self.n_bar) != self.n_bar or self.n_bar < 0:
            raise ParameterError("nbar", f"must be a non-negative integer, got {self.n_bar!r}")
        object.__setattr__(self, "n_bar", int(self.n_bar))


def as_truncation(trunc):
    if isinstance(trunc, Truncation):
        return trunc
    return Truncation(trunc)


@dataclass(frozen=True)
class FreeSpaceParams:
    """Emitter in free space modulated by a weak low-frequency classical drive.

    ``rho = 2*Omega_Rabi/omega`` is the drive index and
    ``omega0_over_omega`` the ratio of the bare transition frequency to the
    drive frequency.  ``omega`` is the drive frequency in units of
    ``gamma_fs``.  ``n0`` and ``m0`` truncate the two-photon (index ``chi``)
    and four-photon (index ``chi_prime``) sideband sums.

    A nonzero ``phi`` enters as ``2*omega*t + phi`` and ``4*omega*t + 2*phi``;
    the drive Hamiltonian itself carries no phase, so this is an
    experimental extension.
    """

    rho: float = 0.2
    omega0_over_omega: float = 2e4
    gamma_fs: float = 1.0
    omega: float = 1.0
    n0: int = 1
    m0: int = 0
    phi: float = 0.0
    drop_four_photon: bool = False
    _drive: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        for name in ("rho", "omega0_over_omega", "gamma_fs", "omega", "phi"):
            object.__setattr__(self, name, _finite(name, getattr(self, name)))
        for name in ("n0", "m0"):
            value = getattr(self, name)
            if int(value) != value or value < 0:
                raise ParameterError(name, f"must be a non-negative integer, got {value!r}")
            object.__setattr__(self, name, int(value))
        if self.gamma_fs <= 0:
            raise ParameterError("gamma", "must be > 0")
        if self.omega <= 0:
            raise ParameterError("omega", "must be > 0")
        if self.omega0_over_omega <= 0:
            raise ParameterError("omega0_over_omega", "must be > 0")
        object.__setattr__(self, "_drive", map_drive(self.rho, self.omega0_over_omega))

    @property
    def b(self):
        """Two-photon modulation depth, in units of ``omega``."""
        return self._drive[0]

    @property
    def b_prime(self):
        """Four-photon modulation depth, in units of ``omega``."""
        return self._drive[1]

    @property
    def chi(self):
        return self._drive[2]

    @property
    def chi_prime(self):
        return 0.0 if self.drop_four_photon else self._drive[3]

    @property
    def shift_factor(self):
        """Ratio of the drive-shifted transition frequency to the bare one."""
        return self._drive[4]


def map_drive(rho, omega0_over_omega):
    """Map a weak drive to modulation parameters.

    Returns ``(b, b_prime, chi, chi_prime, shift_factor)`` with ``b`` and
    ``b_prime`` in units of the drive frequency:
    ``b = w0 rho^2/4``, ``b' = w0 rho^4/192``, ``chi = b/2``,
    ``chi' = b'/4`` and ``shift_factor = 1 - rho^2/4``.
    """
    rho = _finite("rho", rho)
    ratio = _finite("omega0_over_omega", omega0_over_omega)
    if not 0 <= rho < 1:
        raise ParameterError("rho", f"weak-drive expansion needs 0 <= rho < 1, got {rho}")
    b = ratio * rho**2 / 4.0
    b_prime = ratio * rho**4 / 192.0
    return b, b_prime, b / 2.0, b_prime / 4.0, 1.0 - rho**2 / 4.0
