import math
from enum import Enum
import numpy as np
from .numerics import (GridFunction, MatrixPencil, DomainError, gamma_fn,
                       integrate, sample, solve_pencil)
from .utility import *
color = "cyan"

# Ground energy of -d^2/dx^2 + x^4/4 used as the comparison reference
QUARTIC_REFERENCE = 0.667986

# Rows printed for the eps(x) x^2 problem at g = 1, keyed by (sector, m)
REFERENCE_ENERGIES = {
    (Sector.MINUS, 1): (0.0,),
    (Sector.MINUS, 3): (0.0, 2.04441, 5.76541),
    (Sector.MINUS, 10): (0.0, 1.96963, 5.50842, 9.39868, 13.90148, 18.73498,
                         24.43194, 30.18755),
    (Sector.PLUS, 1): (2.31447,),
    (Sector.PLUS, 10): (1.97235, 5.51007, 9.41524, 13.89369, 18.85787,
                        24.13659, 30.72924),
}

QUARTIC_REFERENCE_LADDER = {1: 0.6875, 3: 0.680159, 5: 0.668530}

PENCIL_TOL = 1e-11
# coefficients below this fraction of the largest are parity-neutral zeros
SUPPORT_FLOOR = 1e-12


class Envelope(Enum):
    CUBIC_EXP = "cubic-exp"
    GAUSSIAN = "gaussian"

    def value(self, x):
        if self == Envelope.CUBIC_EXP:
            return np.exp(-np.abs(x) ** 3 / 3.0)
        return np.exp(-np.square(x) / 2.0)

    def log_slope(self, x):
        """ e'(x)/e(x). """
        if self == Envelope.CUBIC_EXP:
            return -x * np.abs(x)
        return -np.asarray(x, dtype=float)

    def curvature(self, x):
        """ e''(x)/e(x). """
        if self == Envelope.CUBIC_EXP:
            return np.power(x, 4) - 2.0 * np.abs(x)
        return np.square(x) - 1.0


class BasisSpec:
    """ Monomial-times-envelope trial basis f_j(x) = x^(j-1) e(x).

    Attributes:
        envelope (Envelope, required): Common decaying factor.
        m (int, required): Number of basis functions, >= 1.
    """
    def __init__(self, envelope, m):
        if int(m) != m or m < 1:
            raise DomainError("basis size must be a positive integer")
        self.envelope = envelope
        self.m = int(m)

    def f(self, j, x):
        return np.power(x, j - 1) * self.envelope.value(x)

    def f2(self, j, x):
        """ f_j'' from the product rule. """
        p = j - 1
        e = self.envelope
        acc = np.power(x, p) * e.curvature(x)
        if p >= 1:
            acc = acc + 2.0 * p * np.power(x, p - 1) * e.log_slope(x)
        if p >= 2:
            acc = acc + p * (p - 1) * np.power(x, p - 2)
        return acc * e.value(x)

    def __repr__(self):
        return "BasisSpec(%s, m=%d)" % (self.envelope.value, self.m)


class VariationalResult:
    """ Ascending Rayleigh-Ritz levels of one pencil.

    Attributes:
        energies (list of float): Approximate levels.
        coefficients (list of ndarray): S-normalized vectors, one per level.
        parities (list of Parity): Parity of each level, read off the
            coefficient support.
        basis (BasisSpec): Basis the coefficients refer to.
        sector (Sector): Sector of the pencil, None for a plain problem.
    """
    def __init__(self, energies, coefficients, parities, basis, sector=None):
        self.energies = energies
        self.coefficients = coefficients
        self.parities = parities
        self.basis = basis
        self.sector = sector

    def __len__(self):
        return len(self.energies)

    def wavefunction(self, n, grid):
        alpha = self.coefficients[n]
        xs = grid.points
        values = np.zeros_like(xs)
        for j, a in enumerate(alpha, start=1):
            if a != 0.0:
                values += a * self.basis.f(j, xs)
        return GridFunction(grid.x0, grid.dx, values)

    def scaled(self, g):
        """ Levels at coupling g from a g = 1 result. """
        return scale_energies(self.energies, g)


def build_pencil_eps_x2(m, sector):
    """ Closed-form pencil of w = eps(x) x^2 (g = 1) in the cubic basis.

    Only entries with k + l even survive; k + l = 3 never occurs there.
    """
    if int(m) != m or m < 1:
        raise DomainError("basis size must be a positive integer")
    sign = sector.sign
    S = np.zeros((m, m))
    H = np.zeros((m, m))
    for k in range(1, m + 1):
        for l in range(1, m + 1):
            s = k + l
            if s % 2:
                continue
            S[k - 1, l - 1] = 1.5 ** ((s - 4) / 3.0) * gamma_fn((s - 1) / 3.0)
            bracket = ((l - 1) * (l - 2) - (l + sign) * (s - 3)) / (s - 3)
            H[k - 1, l - 1] = (-2.0 * 1.5 ** ((s - 3) / 3.0) * bracket
                               * gamma_fn(s / 3.0))
    # the closed form is symmetric only up to rounding
    H = 0.5 * (H + H.T)
    print_time("Closed-form %s pencil, m = %d" % (sector.name.lower(), m),
               color)
    return MatrixPencil(S, H)


def _is_even(V):
    xs = np.array([0.3, 0.7, 1.1, 1.9, 2.6])
    left = sample(V, -xs)
    right = sample(V, xs)
    return bool(np.all(np.abs(left - right)
                       <= 1e-12 * np.maximum(1.0, np.abs(right))))


def build_pencil_quadrature(basis, V, tol=PENCIL_TOL):
    """ S and H of the basis by adaptive quadrature over the whole line. """
    even = _is_even(V)
    m = basis.m
    S = np.zeros((m, m))
    H = np.zeros((m, m))
    for k in range(1, m + 1):
        for l in range(1, m + 1):
            if even and (k + l) % 2:
                continue

            def overlap(x, k=k, l=l):
                return basis.f(k, x) * basis.f(l, x)

            def energy(x, k=k, l=l):
                return basis.f(k, x) * (-basis.f2(l, x) + V(x) * basis.f(l, x))

            if even:
                if l >= k:
                    S[k - 1, l - 1] = 2.0 * integrate(overlap, 0.0, math.inf,
                                                      tol)
                H[k - 1, l - 1] = 2.0 * integrate(energy, 0.0, math.inf, tol)
            else:
                if l >= k:
                    S[k - 1, l - 1] = integrate(overlap, -math.inf, math.inf,
                                                tol, points=(0.0,))
                H[k - 1, l - 1] = integrate(energy, -math.inf, math.inf, tol,
                                            points=(0.0,))
    S = np.triu(S) + np.triu(S, 1).T
    H = 0.5 * (H + H.T)
    print_time("Quadrature pencil for %r" % (basis,), color)
    return MatrixPencil(S, H)


def _parity_of(alpha):
    floor = SUPPORT_FLOOR * float(np.max(np.abs(alpha)))
    support = [j for j, a in enumerate(alpha) if abs(a) > floor]
    if all(j % 2 == 0 for j in support):
        return Parity.EVEN
    if all(j % 2 == 1 for j in support):
        return Parity.ODD
    return None


def solve_variational(p, basis, sector=None):
    """ Solves the pencil and labels the levels.

    Ties in energy put even parity first. The sign of each vector is
    fixed so that its first nonzero coefficient is positive.
    """
    pairs = solve_pencil(p)
    rows = []
    for energy, alpha in pairs:
        floor = SUPPORT_FLOOR * float(np.max(np.abs(alpha)))
        lead = next(a for a in alpha if abs(a) > floor)
        if lead < 0:
            alpha = -alpha
        parity = _parity_of(alpha)
        rows.append((energy, parity, alpha))
    rows.sort(key=lambda r: (round(r[0], 12),
                             0 if r[1] != Parity.ODD else 1))
    print_time("Variational levels: " + ", ".join("%.6f" % r[0]
                                                  for r in rows), color)
    return VariationalResult([r[0] for r in rows], [r[2] for r in rows],
                             [r[1] for r in rows], basis, sector)


def eps_x2_levels(m, sector):
    basis = BasisSpec(Envelope.CUBIC_EXP, m)
    return solve_variational(build_pencil_eps_x2(m, sector), basis, sector)


def quartic_levels(m):
    basis = BasisSpec(Envelope.GAUSSIAN, m)
    return solve_variational(
        build_pencil_quadrature(basis, lambda x: np.power(x, 4) / 4.0), basis)


def residual(phi, E, V):
    """ -phi'' + (V - E) phi by central differences on the interior. """
    inner = phi.interior()
    d2 = phi.second_derivative()
    values = -d2.values + (sample(V, inner.x) - E) * inner.values
    return GridFunction(inner.x0, inner.dx, values)


def percent_deviation(value, reference):
    if reference == 0:
        raise DomainError("deviation against a zero reference")
    return 100.0 * abs(value - reference) / abs(reference)


def scale_energies(energies, g):
    if not g > 0:
        raise DomainError("coupling g must be positive")
    return [g ** (2.0 / 3.0) * e for e in energies]


def level_diagram(results):
    """ (sector, level, energy, parity) rows for the level scheme. """
    rows = []
    for result in results:
        name = result.sector.name.lower() if result.sector else "plain"
        for n, (energy, parity) in enumerate(zip(result.energies,
                                                 result.parities)):
            rows.append((name, n, energy,
                         parity.name.lower() if parity else "mixed"))
    return rows
