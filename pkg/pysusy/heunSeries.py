import math
import numpy as np
from numpy.polynomial import Polynomial
from .numerics import GridFunction, DomainError
from .utility import *
color = "magenta"

DEFAULT_J_MAX = 200
OVERFLOW_GUARD = 1e300
# the series is only trusted inside this window
SERIES_WINDOW = 3.0


class HeunParameters:
    """ Triconfluent Heun parameters of F'' - 2g eps(x) x^2 F' + E F = 0
    on the x > 0 branch.

    Attributes:
        alpha (float): (3/(2g))^(2/3) E.
        beta (float): 3.
        gamma (float): 0.
        z_scale (float): z = z_scale * x, z_scale = (2g/3)^(1/3).
    """
    def __init__(self, alpha, beta, gamma, z_scale):
        self.alpha = alpha
        self.beta = beta
        self.gamma = gamma
        self.z_scale = z_scale

    def as_tuple(self):
        return (self.alpha, self.beta, self.gamma, self.z_scale)

    def in_x(self, x):
        """ Coefficients (of F', of F) after rewriting the z-equation
            y'' - (gamma + 3 z^2) y' + (alpha + (beta - 3) z) y = 0 in x.
        """
        s = self.z_scale
        x = np.asarray(x, dtype=float)
        drift = -(self.gamma * s + 3.0 * s ** 3 * x * x)
        weight = s * s * (self.alpha + (self.beta - 3.0) * s * x)
        return drift, weight


def heun_parameters(g, E):
    if not g > 0:
        raise DomainError("coupling g must be positive")
    return HeunParameters((3.0 / (2.0 * g)) ** (2.0 / 3.0) * E, 3.0, 0.0,
                          (2.0 * g / 3.0) ** (1.0 / 3.0))


def recurrence_coeffs(a0, a1, E, g, sigma, j_max=DEFAULT_J_MAX):
    """ a_0..a_jmax of F = sum a_j x^j on the branch where eps(x) = sigma. """
    if j_max < 2:
        raise DomainError("j_max must be at least 2")
    if sigma not in (1, -1):
        raise DomainError("branch sign must be +1 or -1")
    a = np.zeros(j_max + 1)
    a[0] = a0
    a[1] = a1
    a[2] = -0.5 * E * a0
    for j in range(3, j_max + 1):
        a[j] = (2.0 * g * sigma * (j - 3) * a[j - 3]
                - E * a[j - 2]) / (j * (j - 1))
        if not abs(a[j]) < OVERFLOW_GUARD:
            print_warning("series coefficients overflow at j = %d" % j)
            return a[:j]
    return a


class FrobeniusSeries:
    """ Both branches of F(x) stitched at 0 through a_0 and a_1.

    Attributes:
        a0, a1 (float): Value and slope of F at the origin.
        E (float): Energy.
        g (float): Coupling.
        j_max (int): Highest coefficient index.
        coefficients (dict): sigma -> ndarray of a_j.
    """
    def __init__(self, a0, a1, E, g=1.0, j_max=DEFAULT_J_MAX):
        if not g > 0:
            raise DomainError("coupling g must be positive")
        self.a0 = float(a0)
        self.a1 = float(a1)
        self.E = float(E)
        self.g = float(g)
        self.j_max = int(j_max)
        self.coefficients = {
            s: recurrence_coeffs(a0, a1, E, g, s, j_max) for s in (1, -1)}

    def polynomial(self, sigma):
        return Polynomial(self.coefficients[sigma])

    def F(self, x):
        x = np.asarray(x, dtype=float)
        right = self.polynomial(1)(x)
        left = self.polynomial(-1)(x)
        return np.where(x < 0.0, left, right)

    def psi(self, x):
        x = np.asarray(x, dtype=float)
        return self.F(x) * np.exp(-self.g * np.abs(x) ** 3 / 3.0)


def evaluate_candidate(series, grid):
    """ psi = F(x) exp(-g |x|^3/3) on the grid. """
    xs = grid.points
    if np.max(np.abs(xs)) > SERIES_WINDOW:
        print_warning("series evaluated beyond |x| = %g" % SERIES_WINDOW)
    values = series.psi(xs)
    if not np.all(np.isfinite(values)):
        raise DomainError("series overflows on the grid; shrink the range")
    return GridFunction(grid.x0, grid.dx, values)


def truncation_scan(series, sigma=1):
    """ Degree of F when the series terminates, otherwise None.

    Returns the smallest j with a_{j+1} = a_{j+2} = a_{j+3} = 0; the three
    term recurrence keeps every later coefficient at zero from there on.
    """
    a = series.coefficients[sigma]
    for j in range(-1, len(a) - 3):
        if a[j + 1] == 0.0 and a[j + 2] == 0.0 and a[j + 3] == 0.0:
            print_time("Series terminates at degree %d" % j, color)
            return j
    return None


def heun_residual(series, xs):
    """ F'' - 2g eps(x) x^2 F' + E F for the truncated series. """
    xs = np.asarray(xs, dtype=float)
    out = np.empty_like(xs)
    for sigma in (1, -1):
        F = series.polynomial(sigma)
        mask = (xs >= 0.0) if sigma == 1 else (xs < 0.0)
        x = xs[mask]
        out[mask] = (F.deriv(2)(x) - 2.0 * series.g * sigma * x * x
                     * F.deriv(1)(x) + series.E * F(x))
    return out


def first_dropped_term(series, x, sigma=1):
    """ |a_{J+1} x^(J+1)| estimated from the next recurrence step. """
    a = series.coefficients[sigma]
    J = len(a) - 1
    nxt = (2.0 * series.g * sigma * (J - 2) * a[J - 2]
           - series.E * a[J - 1]) / ((J + 1) * J)
    return abs(nxt) * abs(x) ** (J + 1)
