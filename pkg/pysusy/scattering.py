import math
import numpy as np
from .numerics import DomainError
from .utility import *
color = "red"

MAP_TOL = 1e-8


class SubThresholdError(SusyError, ValueError):
    pass


class NoBoundStateError(SusyError):
    pass


def _pair(z):
    return (z.real, z.imag)


def _complex(pair):
    return complex(pair[0], pair[1])


class ScatteringSolution:
    """ Plane-wave solution of V = g^2 -/+ 2 g delta(x), incident from the
    left with unit amplitude.

    Attributes:
        sector (Sector): MINUS is the delta well, PLUS the barrier.
        g (float): Coupling, > 0.
        E (float): Energy, > g^2.
        k (float): Wave number sqrt(E - g^2).
        reflected (tuple): B/A as (re, im).
        transmitted (tuple): C/A as (re, im).
        R (float): Reflection coefficient |B/A|^2.
        T (float): Transmission coefficient |C/A|^2.
    """
    def __init__(self, sector, g, E):
        if not g > 0:
            raise DomainError("coupling g must be positive")
        if not E > g * g:
            raise SubThresholdError("E = %g is not above the threshold "
                                    "g^2 = %g" % (E, g * g))
        self.sector = sector
        self.g = float(g)
        self.E = float(E)
        self.k = math.sqrt(E - g * g)
        # strength of the attractive delta term: g for the well, -g for
        # the barrier
        gamma = -sector.sign * self.g
        ratio = 1j * gamma / self.k
        self.reflected = _pair(ratio / (1.0 - ratio))
        self.transmitted = _pair(1.0 / (1.0 - ratio))
        self.R = abs(_complex(self.reflected)) ** 2
        self.T = abs(_complex(self.transmitted)) ** 2

    def psi(self, x):
        """ Complex wavefunction at the points x. """
        x = np.asarray(x, dtype=float)
        b = _complex(self.reflected)
        c = _complex(self.transmitted)
        ik = 1j * self.k
        left = np.exp(ik * x) + b * np.exp(-ik * x)
        right = c * np.exp(ik * x)
        return np.where(x < 0.0, left, right)

    def dpsi(self, x):
        """ Exact derivative of psi away from x = 0. """
        x = np.asarray(x, dtype=float)
        b = _complex(self.reflected)
        c = _complex(self.transmitted)
        ik = 1j * self.k
        left = ik * (np.exp(ik * x) - b * np.exp(-ik * x))
        right = ik * c * np.exp(ik * x)
        return np.where(x < 0.0, left, right)


def bound_state(g, sector=Sector.MINUS):
    """ (E_0, psi_0) of the delta well: E_0 = 0, psi_0 = sqrt(g) e^(-g|x|). """
    if not g > 0:
        raise DomainError("coupling g must be positive")
    if sector != Sector.MINUS:
        raise NoBoundStateError("the delta barrier has no bound state")
    root = math.sqrt(g)

    def psi0(x):
        return root * np.exp(-g * np.abs(x))
    return 0.0, psi0


def scatter(sector, g, E):
    sol = ScatteringSolution(sector, g, E)
    print_time("Scattering (%s) g = %g, E = %g: R = %.6f, T = %.6f"
               % (sector.name.lower(), g, E, sol.R, sol.T), color)
    return sol


def wavefunction(sol, xs):
    return sol.psi(xs)


def transfer_table(g, energies, sector=Sector.MINUS):
    rows = []
    for E in energies:
        sol = scatter(sector, g, E)
        rows.append((E, sol.R, sol.T))
    return rows


class MapReport:
    """ Outcome of the intertwining check A psi- = kappa psi+.

    Attributes:
        constant (tuple): Fitted kappa as (re, im).
        expected (tuple): ik - g, the analytic constant.
        max_deviation (float): Largest |A psi-/psi+ - kappa|/|kappa| over
            the samples.
        bound_state_residual (float): max |A psi_0| over the samples.
    """
    def __init__(self, constant, expected, max_deviation,
                 bound_state_residual):
        self.constant = constant
        self.expected = expected
        self.max_deviation = max_deviation
        self.bound_state_residual = bound_state_residual

    @property
    def passed(self):
        return (self.max_deviation <= MAP_TOL
                and abs(_complex(self.constant) - _complex(self.expected))
                <= MAP_TOL * abs(_complex(self.expected))
                and self.bound_state_residual <= MAP_TOL)


def susy_map_check(g, E, grid):
    """ Applies A = g eps(x) + d/dx to the well solution and compares it
    with the barrier solution at the same energy. x = 0 is skipped.
    """
    xs = grid.points
    xs = xs[xs != 0.0]
    well = ScatteringSolution(Sector.MINUS, g, E)
    barrier = ScatteringSolution(Sector.PLUS, g, E)
    eps = np.sign(xs)
    mapped = g * eps * well.psi(xs) + well.dpsi(xs)
    ratios = mapped / barrier.psi(xs)
    kappa = complex(np.mean(ratios))
    deviation = float(np.max(np.abs(ratios - kappa)) / abs(kappa))
    _, psi0 = bound_state(g)
    d_psi0 = -g * eps * psi0(xs)
    residual = float(np.max(np.abs(g * eps * psi0(xs) + d_psi0)))
    report = MapReport(_pair(kappa), _pair(complex(-g, well.k)), deviation,
                       residual)
    print_time("A maps well to barrier with constant %s (deviation %.2e)"
               % (kappa, deviation), color)
    return report
