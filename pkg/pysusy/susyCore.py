import math
from enum import Enum
import numpy as np
from scipy.integrate import cumulative_trapezoid
from .numerics import GridFunction, DomainError, gamma_fn, sample
from .utility import *
color = "green"

# Window used by the asymptotic sign test on the whole line
X_BIG = 20.0
# apply_A / apply_Adag warn above this spacing
COARSE_DX = 0.1


class SusyBrokenError(SusyError):
    pass


class SusyState(Enum):
    PRESERVED = 1
    BROKEN = 0


class Superpotential:
    """ Base class of the superpotential families.

    Subclasses provide w(x), w'(x) and an antiderivative of w; every
    evaluator accepts scalars as well as numpy arrays.

    Attributes:
        family (str): Family tag, e.g. "odd-monomial".
        domain (tuple): (lower, upper) end of the configuration space.
        delta_weight (float): Weight c of a c*delta(x) term hidden in w'
            at the origin, 0 if there is none.
    """
    family = None
    domain = (-math.inf, math.inf)
    delta_weight = 0.0

    def w(self, x):
        raise NotImplementedError

    def wp(self, x):
        raise NotImplementedError

    def integral(self, x):
        """ An antiderivative of w, vanishing at 0 when 0 is regular. """
        raise NotImplementedError

    def __call__(self, x):
        return self.w(x)

    def end_signs(self):
        """ Signs of w near the lower and upper ends of the domain. """
        lo, hi = self.domain
        x_lo = -X_BIG if math.isinf(lo) else lo + 1e-9 * (hi - lo)
        x_hi = X_BIG if math.isinf(hi) else hi - 1e-9 * (hi - lo)
        return (int(np.sign(self.w(x_lo))), int(np.sign(self.w(x_hi))))

    def negated(self):
        return Scaled(self, -1.0)

    def __repr__(self):
        return "%s(%s)" % (type(self).__name__, ", ".join(
            "%s=%r" % kv for kv in vars(self).items()))


class OddMonomial(Superpotential):
    """ w(x) = g x^(2n+1). """
    family = "odd-monomial"

    def __init__(self, g, n=0):
        _check_g_n(g, n)
        self.g = float(g)
        self.n = int(n)

    def w(self, x):
        return self.g * np.power(x, 2 * self.n + 1)

    def wp(self, x):
        return self.g * (2 * self.n + 1) * np.power(x, 2 * self.n)

    def integral(self, x):
        p = 2 * self.n + 2
        return self.g * np.power(x, p) / p


class SignMonomial(Superpotential):
    """ w(x) = g eps(x) x^(2n), with eps(0) = 0. """
    family = "sign-monomial"

    def __init__(self, g, n=0):
        _check_g_n(g, n)
        self.g = float(g)
        self.n = int(n)
        # eps'(x) = 2 delta(x) only survives for n = 0
        self.delta_weight = 2.0 * self.g if self.n == 0 else 0.0

    def w(self, x):
        return self.g * np.sign(x) * np.power(np.abs(x), 2 * self.n)

    def wp(self, x):
        if self.n == 0:
            return 0.0 * np.asarray(x, dtype=float)
        return 2 * self.n * self.g * np.power(np.abs(x), 2 * self.n - 1)

    def integral(self, x):
        p = 2 * self.n + 1
        return self.g * np.power(np.abs(x), p) / p


class EvenMonomial(Superpotential):
    """ w(x) = g x^(2n), n >= 1; the textbook case of broken SUSY. """
    family = "even-monomial"

    def __init__(self, g, n=1):
        _check_g_n(g, n)
        if n < 1:
            raise DomainError("even monomial needs n >= 1")
        self.g = float(g)
        self.n = int(n)

    def w(self, x):
        return self.g * np.power(x, 2 * self.n)

    def wp(self, x):
        return 2 * self.n * self.g * np.power(x, 2 * self.n - 1)

    def integral(self, x):
        p = 2 * self.n + 1
        return self.g * np.power(x, p) / p


class CoulombRadial(Superpotential):
    """ Radial hydrogen member j: w(r) = e^2/(2k) - k/r with k = l + j + 1.

    Attributes:
        e2 (float, required): Coupling e^2 > 0.
        l (int, required): Angular momentum.
        j (int): Position in the hierarchy, 0 for the physical potential.
    """
    family = "coulomb-radial"
    domain = (0.0, math.inf)

    def __init__(self, e2, l, j=0):
        if not e2 > 0:
            raise DomainError("e2 must be positive")
        if l < 0 or j < 0:
            raise DomainError("l and j must be non-negative")
        self.e2 = float(e2)
        self.l = int(l)
        self.j = int(j)

    @property
    def k(self):
        return self.l + self.j + 1

    def w(self, r):
        return self.e2 / (2.0 * self.k) - self.k / np.asarray(r, dtype=float)

    def wp(self, r):
        return self.k / np.asarray(r, dtype=float) ** 2

    def integral(self, r):
        return self.e2 * np.asarray(r) / (2.0 * self.k) - self.k * np.log(r)

    def end_signs(self):
        return (-1, 1)


class WellCotangent(Superpotential):
    """ w(x) = -(pi/L) cot(pi x/L) on (0, L). """
    family = "well-cotangent"

    def __init__(self, L):
        if not L > 0:
            raise DomainError("well width must be positive")
        self.L = float(L)
        self.domain = (0.0, self.L)

    @property
    def kappa(self):
        return math.pi / self.L

    def w(self, x):
        return -self.kappa / np.tan(self.kappa * np.asarray(x, dtype=float))

    def wp(self, x):
        return self.kappa ** 2 / np.sin(self.kappa * np.asarray(x)) ** 2

    def integral(self, x):
        return -np.log(np.sin(self.kappa * np.asarray(x, dtype=float)))


class Tabulated(Superpotential):
    """ Superpotential known only through samples of w and w'.

    Attributes:
        values (GridFunction, required): Samples of w.
        derivative (GridFunction, required): Samples of w'.
    """
    family = "tabulated"

    def __init__(self, values, derivative):
        self.values = values
        self.derivative = derivative
        self.domain = (values.x0, values.x_end)

    @staticmethod
    def from_function(fn, grid):
        values = GridFunction.from_function(fn, grid)
        slope = np.gradient(values.values, values.dx)
        return Tabulated(values, GridFunction(values.x0, values.dx, slope))

    def w(self, x):
        return np.interp(x, self.values.x, self.values.values)

    def wp(self, x):
        return np.interp(x, self.derivative.x, self.derivative.values)

    def integral(self, x):
        cumulative = cumulative_trapezoid(self.values.values,
                                          dx=self.values.dx, initial=0.0)
        if self.values.x0 < 0.0 < self.values.x_end:
            cumulative = cumulative - np.interp(0.0, self.values.x, cumulative)
        return np.interp(x, self.values.x, cumulative)

    def end_signs(self):
        v = self.values.values
        return (int(np.sign(v[0])), int(np.sign(v[-1])))

    def __repr__(self):
        return "Tabulated(%g..%g, dx=%g)" % (self.values.x0,
                                             self.values.x_end,
                                             self.values.dx)


class Scaled(Superpotential):
    """ c * w for another superpotential w. """

    def __init__(self, base, factor):
        self.base = base
        self.factor = float(factor)
        self.family = base.family
        self.domain = base.domain
        self.delta_weight = self.factor * base.delta_weight

    def w(self, x):
        return self.factor * self.base.w(x)

    def wp(self, x):
        return self.factor * self.base.wp(x)

    def integral(self, x):
        return self.factor * self.base.integral(x)

    def end_signs(self):
        lo, hi = self.base.end_signs()
        s = int(np.sign(self.factor))
        return (s * lo, s * hi)


def _check_g_n(g, n):
    if not g > 0:
        raise DomainError("coupling g must be positive, got %r" % g)
    if int(n) != n or n < 0:
        raise DomainError("monomial index n must be a non-negative integer")


class DeltaSpike:
    """ Distributional part of the partner potentials at x = position:
        V-/+ contain weight_minus/plus * delta(x - position).
    """
    def __init__(self, weight, position=0.0):
        self.weight_minus = -float(weight)
        self.weight_plus = float(weight)
        self.position = position

    def weight(self, sector):
        return self.weight_minus if sector == Sector.MINUS else self.weight_plus

    def __repr__(self):
        return "DeltaSpike(%+g/%+g at %g)" % (self.weight_minus,
                                              self.weight_plus, self.position)


class PartnerPair:
    """ The two Riccati partners V-/+ = w^2 -/+ w' of a superpotential.

    Attributes:
        superpotential (Superpotential, required): Generating w.
        spike (DeltaSpike): Delta term at the origin, None if absent.
    """
    def __init__(self, superpotential):
        self.superpotential = superpotential
        weight = superpotential.delta_weight
        self.spike = DeltaSpike(weight) if weight != 0.0 else None

    def V_minus(self, x):
        w = self.superpotential
        return w.w(x) ** 2 - w.wp(x)

    def V_plus(self, x):
        w = self.superpotential
        return w.w(x) ** 2 + w.wp(x)

    def potential(self, sector):
        return self.V_minus if sector == Sector.MINUS else self.V_plus


class SusyStatus:
    """ Attributes:
        state (SusyState): Preserved or broken.
        sector (Sector): Sector holding the normalizable zero mode, None
            when broken.
    """
    def __init__(self, state, sector=None):
        self.state = state
        self.sector = sector

    @property
    def preserved(self):
        return self.state == SusyState.PRESERVED

    def __eq__(self, other):
        return (isinstance(other, SusyStatus) and self.state == other.state
                and self.sector == other.sector)

    def __repr__(self):
        if self.sector is None:
            return "SusyStatus(%s)" % self.state.name
        return "SusyStatus(%s, %s)" % (self.state.name, self.sector.name)


def partner_potentials(w):
    pair = PartnerPair(w)
    if pair.spike is not None:
        print_time("Partner pair of %r carries %r" % (w, pair.spike), color)
    return pair


def susy_status(w):
    """ Classifies SUSY by the sign of w at the two ends of its domain.

    exp(-int w) is normalizable when w is negative on the left and positive
    on the right (zero mode in H-); the reverse puts it in H+; equal signs
    leave neither normalizable.
    """
    left, right = w.end_signs()
    if left < 0 < right:
        return SusyStatus(SusyState.PRESERVED, Sector.MINUS)
    if right < 0 < left:
        return SusyStatus(SusyState.PRESERVED, Sector.PLUS)
    return SusyStatus(SusyState.BROKEN)


def ground_state(w, grid):
    """ Normalized zero mode exp(-/+ int_0^x w) of H-/+ on the grid. """
    status = susy_status(w)
    if not status.preserved:
        raise SusyBrokenError("%r breaks SUSY: no normalizable zero mode"
                              % (w,))
    exponent = status.sector.sign * sample(w.integral, grid.points)
    if not np.all(np.isfinite(exponent)):
        raise DomainError("grid leaves the domain of %r" % (w,))
    exponent = exponent - np.max(exponent)
    psi = GridFunction(grid.x0, grid.dx, np.exp(exponent))
    print_time("Zero mode of %r in the %s sector"
               % (w, status.sector.name.lower()), color)
    return psi.normalized()


def odd_monomial_norm(g, n):
    if not g > 0:
        raise DomainError("coupling g must be positive")
    p = 2 * (n + 1)
    return (g * (n + 1) ** (2 * n + 1) / gamma_fn(1.0 / p) ** p) ** (0.5 / p)


def _interior_w(w, psi):
    if psi.dx > COARSE_DX:
        print_warning("grid spacing %g is too coarse for the ladder "
                      "operators (> %g)" % (psi.dx, COARSE_DX))
    return sample(w.w, psi.x[1:-1])


def apply_A(w, psi):
    """ (w + d/dx) psi on the interior grid. """
    wx = _interior_w(w, psi)
    d = psi.derivative()
    return GridFunction(d.x0, d.dx, wx * psi.values[1:-1] + d.values)


def apply_Adag(w, psi):
    """ (w - d/dx) psi on the interior grid. """
    wx = _interior_w(w, psi)
    d = psi.derivative()
    return GridFunction(d.x0, d.dx, wx * psi.values[1:-1] - d.values)


def energy_scaling(energy_at_unit_g, g, power):
    """ Rescales an energy computed at g = 1 for |w| ~ g |x|^power. """
    if not g > 0:
        raise DomainError("coupling g must be positive")
    return g ** (2.0 / (power + 1)) * energy_at_unit_g
