"""
Quantum-optical control unitaries on truncated Fock spaces: the displacer,
the squeezer, the two-mode squeezer and displacer, the SU(2) interferometer,
and the Kerr Hamiltonian with its evolution.

Every unitary is built by exponentiating its generator on the modes it acts
on and embedding the result into the full space. Operator definitions follow
the exponent expressions verbatim, e.g. D(λ) = exp(λa† - λ̄a). The
conjugation identities that follow from them are recorded in
_holokerr.conventions.
"""

import cmath
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from _holokerr.fock_core import (
    Operator,
    embed_operator,
    expm_antihermitian,
    ladder_matrix,
    warn_truncation,
)

# Guards on the effective squeezing: S(μ) squeezes by 2|μ|, M(ζ) by |ζ|.
SQUEEZE_GUARD = 2.0


class ModeCollisionError(Exception):
    """
    Raised when a two-mode operator is asked to act on a single mode twice.
    """

    pass


class KerrConfigError(Exception):
    """
    Raised for an invalid Kerr configuration, or when the free-field
    frequency is needed but not set.
    """

    pass


def wrap_angle(theta):
    """
    Maps an angle into (-π, π].
    """
    wrapped = math.remainder(theta, 2 * math.pi)
    if wrapped == -math.pi:
        return math.pi
    return wrapped


@dataclass(frozen=True)
class DisplaceParam:
    """
    The displacement amplitude λ = x + iy = r0 e^{iθ0}.
    """

    value: complex

    def __post_init__(self):
        object.__setattr__(self, "value", complex(self.value))

    @classmethod
    def from_cartesian(cls, x, y):
        return cls(complex(x, y))

    @classmethod
    def from_polar(cls, r0, theta0):
        if r0 < 0:
            raise ValueError(f"Displacement modulus must be non-negative, got {r0}")
        return cls(cmath.rect(r0, theta0))

    @property
    def x(self):
        return self.value.real

    @property
    def y(self):
        return self.value.imag

    @property
    def r0(self):
        return abs(self.value)

    @property
    def theta0(self):
        return cmath.phase(self.value)


@dataclass(frozen=True)
class SqueezeParam:
    """
    The squeezing amplitude μ = r1 e^{iθ1}, with θ1 stored in (-π, π].
    """

    r1: float
    theta1: float = 0.0

    def __post_init__(self):
        if self.r1 < 0:
            raise ValueError(f"Squeezing modulus must be non-negative, got {self.r1}")
        object.__setattr__(self, "theta1", wrap_angle(self.theta1))

    @property
    def value(self):
        return cmath.rect(self.r1, self.theta1)


@dataclass(frozen=True)
class TwoModeParams:
    """
    ζ = r2 e^{iθ2} for the two-mode squeezer and ξ = r3 e^{iθ3} for the
    two-mode displacer.
    """

    r2: float = 0.0
    theta2: float = 0.0
    r3: float = 0.0
    theta3: float = 0.0

    def __post_init__(self):
        if self.r2 < 0 or self.r3 < 0:
            raise ValueError(
                f"Two-mode moduli must be non-negative, got r2={self.r2}, r3={self.r3}"
            )

    @property
    def zeta(self):
        return cmath.rect(self.r2, self.theta2)

    @property
    def xi(self):
        return cmath.rect(self.r3, self.theta3)


@dataclass(frozen=True)
class SU2Angles:
    alpha: float = 0.0
    beta: float = 0.0
    gamma: float = 0.0


@dataclass(frozen=True)
class KerrConfig:
    """
    :param coupling: The Kerr coupling X (inverse time, ħ = 1).
    :param omega: Optional free-field frequency, only needed by
        degenerate_lattice_points.
    """

    coupling: float = 1.0
    omega: Optional[float] = None

    def __post_init__(self):
        if self.coupling < 0:
            raise KerrConfigError(
                f"Kerr coupling must be non-negative, got {self.coupling}"
            )
        if self.omega is not None and self.omega <= 0:
            raise KerrConfigError(f"omega must be positive, got {self.omega}")


def coherent_edge_population(amplitude, cutoff):
    mean = abs(amplitude) ** 2
    if mean == 0.0:
        return 0.0
    top = cutoff - 1
    return math.exp(-mean + top * math.log(mean) - math.lgamma(top + 1))


def _squeezed_edge_population(squeezing, cutoff):
    """
    Population of the highest even level kept, for a vacuum squeezed by
    the given amount.
    """
    k = (cutoff - 1) // 2
    if squeezing == 0.0 or k == 0:
        return 0.0
    t = math.tanh(squeezing)
    log_p = (
        2 * k * math.log(t)
        + math.lgamma(2 * k + 1)
        - 2 * math.lgamma(k + 1)
        - 2 * k * math.log(2)
        - math.log(math.cosh(squeezing))
    )
    return math.exp(log_p)


def _check_distinct(modes):
    first, second = modes
    if first == second:
        raise ModeCollisionError(f"Two-mode operator needs distinct modes, got {modes}")


def _two_mode_ladders(cutoff):
    a = ladder_matrix(cutoff)
    identity = np.eye(cutoff, dtype=complex)
    return np.kron(a, identity), np.kron(identity, a)


def displacement_generator(cutoff, lam):
    a = ladder_matrix(cutoff)
    return lam * a.conj().T - np.conj(lam) * a


def displacer(space, mode, lam):
    """
    D(λ) = exp(λa† - λ̄a) on the given mode.

    Warns with TruncationWarning when |λ| exceeds cutoff/4.
    """
    lam = complex(lam)
    space.check_mode(mode)
    if abs(lam) > space.cutoff / 4:
        warn_truncation(
            f"Displacement |λ|={abs(lam):.3f}",
            coherent_edge_population(lam, space.cutoff),
        )
    generator = displacement_generator(space.cutoff, lam)
    return embed_operator(space, [mode], expm_antihermitian(generator))


def squeezer(space, mode, mu):
    """
    S(μ) = exp(μa†² - μ̄a²) on the given mode.

    Warns with TruncationWarning when the squeezing 2|μ| exceeds 2.
    """
    mu = complex(mu)
    space.check_mode(mode)
    if 2 * abs(mu) > SQUEEZE_GUARD:
        warn_truncation(
            f"Squeezing 2r={2 * abs(mu):.3f}",
            _squeezed_edge_population(2 * abs(mu), space.cutoff),
        )
    a = ladder_matrix(space.cutoff)
    a_squared = a @ a
    generator = mu * a_squared.conj().T - np.conj(mu) * a_squared
    return embed_operator(space, [mode], expm_antihermitian(generator))


def two_mode_squeezer(space, modes, zeta):
    """
    M(ζ) = exp(ζa₁†a₂† - ζ̄a₁a₂) on the ordered pair of modes.
    """
    zeta = complex(zeta)
    _check_distinct(modes)
    if abs(zeta) > SQUEEZE_GUARD:
        warn_truncation(
            f"Two-mode squeezing r={abs(zeta):.3f}",
            math.tanh(abs(zeta)) ** (2 * (space.cutoff - 1)),
        )
    a1, a2 = _two_mode_ladders(space.cutoff)
    pair = a1 @ a2
    generator = zeta * pair.conj().T - np.conj(zeta) * pair
    return embed_operator(space, modes, expm_antihermitian(generator))


def two_mode_displacer(space, modes, xi):
    """
    N(ξ) = exp(ξa₁†a₂ - ξ̄a₁a₂†) on the ordered pair of modes. Conserves
    n₁ + n₂ exactly, also under truncation.
    """
    xi = complex(xi)
    _check_distinct(modes)
    a1, a2 = _two_mode_ladders(space.cutoff)
    hop = a1.conj().T @ a2
    generator = xi * hop - np.conj(xi) * hop.conj().T
    return embed_operator(space, modes, expm_antihermitian(generator))


def _su2_matrices(cutoff):
    a1, a2 = _two_mode_ladders(cutoff)
    hop = a1.conj().T @ a2
    n1 = a1.conj().T @ a1
    n2 = a2.conj().T @ a2
    jx = 0.5 * (hop + hop.conj().T)
    jy = -0.5j * (hop - hop.conj().T)
    jz = 0.5 * (n1 - n2)
    return jx, jy, jz, n1 + n2


def su2_generators(space, modes):
    """
    The Schwinger operators on an ordered pair of modes,

        Jx = (a₁†a₂ + a₂†a₁)/2, Jy = -i(a₁†a₂ - a₂†a₁)/2,
        Jz = (n₁ - n₂)/2, N = n₁ + n₂.

    :returns: Tuple of Operators (Jx, Jy, Jz, N) on the full space.
    """
    _check_distinct(modes)
    return tuple(
        embed_operator(space, modes, matrix) for matrix in _su2_matrices(space.cutoff)
    )


def su2_unitary(space, modes, angles):
    """
    U = exp(iαJx) exp(iβJy) exp(iγJz) on an ordered pair of modes.
    """
    _check_distinct(modes)
    jx, jy, jz, _ = _su2_matrices(space.cutoff)
    unitary = (
        expm_antihermitian(1j * angles.alpha * jx)
        @ expm_antihermitian(1j * angles.beta * jy)
        @ expm_antihermitian(1j * angles.gamma * jz)
    )
    return embed_operator(space, modes, unitary)


def kerr_energies(space, coupling):
    """
    The diagonal of H = X Σ_l n_l(n_l - 1) in flat basis order.
    """
    levels = np.arange(space.cutoff, dtype=float)
    single = levels * (levels - 1)
    energies = np.zeros(1)
    for _ in range(space.n_modes):
        energies = np.add.outer(energies, single).ravel()
    return coupling * energies


def kerr_hamiltonian(space, config):
    return Operator(space, np.diag(kerr_energies(space, config.coupling)))


def kerr_evolution(space, config, dt):
    """
    exp(-iHΔt), computed on the diagonal.
    """
    return Operator(
        space, np.diag(np.exp(-1j * kerr_energies(space, config.coupling) * dt))
    )


def degenerate_lattice_points(config, k_max, light_speed=1.0):
    """
    Optical path positions x_k = 2πck/ω, k = 0..k_max, where the free-field
    phase exp(-iωx/c) is trivial.
    """
    if config.omega is None:
        raise KerrConfigError("degenerate_lattice_points requires omega to be set")
    k = np.arange(k_max + 1, dtype=float)
    return 2 * np.pi * light_speed * k / config.omega


def free_phase(config, position, light_speed=1.0):
    if config.omega is None:
        raise KerrConfigError("free_phase requires omega to be set")
    return np.exp(-1j * config.omega * position / light_speed)
