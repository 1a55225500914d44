import math
import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.interpolate import CubicSpline
from .numerics import (Grid, GridFunction, DomainError, digamma, integrate,
                       sample)
from .utility import *
color = "blue"

# W_n grid: [-X, X] with this X and spacing by default
DEFAULT_EXTENT = 6.0
DEFAULT_DX = 1e-3
DEFAULT_ORDER = 3
# W_n is integrated on a wider half line so the tail integrals do not see
# the cut-off inside the published grid
TAIL_MARGIN = 3.0
# beyond this |x| the integral for W_n runs in from the tail
TAIL_SWITCH = 1.0
UNDERFLOW_FLOOR = 1e-280
QUAD_TOL = 1e-12
# residual checks skip the logarithmic cusp at the origin
RESIDUAL_EXCLUDE = 0.25

# (1/4)^(1/3): quartic reparametrization scale
QUARTIC_SCALE = 0.25 ** (1.0 / 3.0)

_GAUSS_NODES, _GAUSS_WEIGHTS = leggauss(3)


class UnsupportedBaseline(SusyError):
    pass


class BrokenTruncation(SusyError):
    pass


class Reparametrization:
    """ A potential V(x; delta) with a harmonic baseline at delta = 0 and
    the target potential at delta = 1.

    Subclasses implement ``V`` and ``taylor``.

    Attributes:
        name (str): Family name.
        sector (Sector): Partner sector, None for a plain potential.
    """
    name = None
    sector = None

    def V(self, x, delta):
        raise NotImplementedError

    def taylor(self, m):
        """ The coefficient V_m(x) of delta^m, as a callable. """
        raise NotImplementedError

    def target(self, x):
        return self.V(x, 1.0)

    def __repr__(self):
        if self.sector is None:
            return "%s()" % type(self).__name__
        return "%s(%s)" % (type(self).__name__, self.sector.name.lower())


class EpsX2(Reparametrization):
    """ x^2 (x^2)^delta -/+ 2^delta |x|^delta: the partners x^4 -/+ 2|x| of
    w = eps(x) x^2 at delta = 1 and shifted oscillators at delta = 0.
    """
    name = "eps-x2"

    def __init__(self, sector):
        self.sector = sector

    def V(self, x, delta):
        x = np.asarray(x, dtype=float)
        return (np.power(x * x, 1.0 + delta)
                + self.sector.sign * np.power(2.0, delta)
                * np.power(np.abs(x), delta))

    def taylor(self, m):
        sign = self.sector.sign
        fact = math.factorial(m)

        def V_m(x):
            x = np.asarray(x, dtype=float)
            with np.errstate(divide="ignore", invalid="ignore"):
                log_x2 = np.log(x * x)
                smooth = np.where(x == 0.0, 0.0, x * x * log_x2 ** m)
                shifted = (math.log(2.0) + 0.5 * log_x2) ** m
            return (smooth + sign * shifted) / fact
        return V_m


class Quartic(Reparametrization):
    """ c^(2+delta) (x^2)^(1+delta) with c = (1/4)^(1/3): c^2 x^2 at
    delta = 0 and x^4/4 at delta = 1.
    """
    name = "quartic"

    def V(self, x, delta):
        x = np.asarray(x, dtype=float)
        c = QUARTIC_SCALE
        return c ** (2.0 + delta) * np.power(x * x, 1.0 + delta)

    def taylor(self, m):
        c = QUARTIC_SCALE
        fact = math.factorial(m)

        def V_m(x):
            x = np.asarray(x, dtype=float)
            with np.errstate(divide="ignore", invalid="ignore"):
                out = c * c * x * x * np.log(c * x * x) ** m / fact
            return np.where(x == 0.0, 0.0, out)
        return V_m


def taylor_potential(rep, n):
    if int(n) != n or n < 0:
        raise DomainError("expansion order must be a non-negative integer")
    return [rep.taylor(m) for m in range(n + 1)]


def harmonic_baseline(rep):
    """ (c, B_0) with V_0(x) = c^2 x^2 - c + B_0, i.e. W_0 = c x. """
    V0 = rep.taylor(0)
    xs = np.array([0.5, 1.0, 1.5, 2.0, 3.0])
    values = sample(V0, xs)
    b = (values[1] - values[0]) / (xs[1] ** 2 - xs[0] ** 2)
    a = values[0] - b * xs[0] ** 2
    fitted = a + b * xs ** 2
    if not b > 0 or np.max(np.abs(values - fitted)) > 1e-10 * max(
            1.0, float(np.max(np.abs(values)))):
        raise UnsupportedBaseline("order-0 potential of %r is not a "
                                  "harmonic oscillator" % (rep,))
    c = math.sqrt(b)
    return c, a + c


class DeltaExpansion:
    """ LPT coefficients B_m and W_m(x) of one reparametrization.

    W_m are kept on the half line [0, X + TAIL_MARGIN] and published as
    odd grid functions on [-X, X].

    Attributes:
        rep (Reparametrization): Expanded potential.
        B (list of float): Energy coefficients B_0..B_n.
        W (list of GridFunction): Superpotential coefficients on [-X, X].
        phi0 (GridFunction): Normalized baseline ground state on [-X, X].
        potentials (list of callable): V_0..V_n.
    """
    def __init__(self, rep, c, B0, extent=DEFAULT_EXTENT, dx=DEFAULT_DX):
        self.rep = rep
        self.c = c
        self.extent = float(extent)
        self.dx = float(dx)
        self.grid = Grid(-extent, extent, dx)
        inner = extent + TAIL_MARGIN
        if self.phi_squared(inner) < UNDERFLOW_FLOOR:
            inner = math.sqrt(-math.log(UNDERFLOW_FLOOR / math.sqrt(c / math.pi))
                              / c)
            print_warning("baseline underflows; W_n restricted to |x| <= %g"
                          % inner)
            if inner < extent:
                raise DomainError("grid extent %g exceeds the representable "
                                  "range of the baseline" % extent)
        self.half = dx * np.arange(int(math.floor(inner / dx + 1e-9)) + 1)
        self.B = [B0]
        self.potentials = [rep.taylor(0)]
        self._W_half = [c * self.half]
        self._splines = [CubicSpline(self.half, self._W_half[0])]
        self.W = [self._publish(self._W_half[0])]
        self.phi0 = GridFunction.from_function(
            lambda x: np.sqrt(self.phi_squared(x)), self.grid)

    @property
    def order(self):
        return len(self.B) - 1

    def phi_squared(self, x):
        return math.sqrt(self.c / math.pi) * np.exp(-self.c * np.square(x))

    def _publish(self, half_values):
        n = self.grid.size // 2
        right = half_values[:n + 1]
        values = np.concatenate([-right[:0:-1], right])
        return GridFunction(self.grid.x0, self.dx, values)

    def sigma(self, n):
        """ sum_{k=1}^{n-1} W_k W_{n-k} as a callable on x >= 0. """
        pairs = [(self._splines[k], self._splines[n - k])
                 for k in range(1, n)]

        def fn(x):
            acc = np.zeros_like(np.asarray(x, dtype=float))
            for left, right in pairs:
                acc = acc + left(x) * right(x)
            return acc
        return fn

    def append(self, B_n, W_half, V_n):
        self.B.append(float(B_n))
        self.potentials.append(V_n)
        self._W_half.append(W_half)
        self._splines.append(CubicSpline(self.half, W_half))
        self.W.append(self._publish(W_half))

    def total_superpotential(self, delta):
        return sum(w * delta ** m for m, w in enumerate(self._W_half))


def _seed(rep, extent, dx):
    c, B0 = harmonic_baseline(rep)
    print_time("Order 0 of %r: W_0 = %.6f x, B_0 = %.6f" % (rep, c, B0),
               color)
    return DeltaExpansion(rep, c, B0, extent, dx)


def order0_solve(rep, extent=DEFAULT_EXTENT, dx=DEFAULT_DX):
    """ (W_0, B_0, phi_0) of the harmonic baseline. """
    exp = _seed(rep, extent, dx)
    return exp.W[0], exp.B[0], exp.phi0


def _cell_integrals(fn, xs):
    """ Three-point Gauss-Legendre integral of fn over each [x_i, x_i+1]. """
    h = xs[1] - xs[0]
    left = xs[:-1]
    total = np.zeros_like(left)
    for t, w in zip(_GAUSS_NODES, _GAUSS_WEIGHTS):
        total += 0.5 * h * w * fn(left + 0.5 * h * (1.0 + t))
    return total


def order_n_step(exp, V_n):
    """ Next coefficient pair (B_n, W_n) of the expansion.

    W_n phi_0^2 is the integral of phi_0^2 [B_n - V_n + sigma_n] from the
    origin for |x| <= TAIL_SWITCH and minus the integral to infinity
    beyond, which avoids cancellation where phi_0 is small.
    """
    n = exp.order + 1
    sigma = exp.sigma(n)
    xs = exp.half

    def weighted(x):
        return exp.phi_squared(x) * (V_n(x) - sigma(x))

    if n == 1:
        B_n = 2.0 * integrate(weighted, 0.0, math.inf, QUAD_TOL)
    else:
        B_n = 2.0 * integrate(weighted, 0.0, float(xs[-1]), QUAD_TOL)

    def source(x):
        return exp.phi_squared(x) * (B_n - V_n(x) + sigma(x))

    cells = _cell_integrals(source, xs)
    # the first cell holds the logarithmic singularity of V_n
    cells[0] = integrate(lambda x: float(source(x)), 0.0, float(xs[1]),
                         QUAD_TOL)
    forward = np.concatenate([[0.0], np.cumsum(cells)])
    tail = -np.concatenate([np.cumsum(cells[::-1])[::-1], [0.0]])
    product = np.where(xs <= TAIL_SWITCH, forward, tail)
    W_half = product / exp.phi_squared(xs)
    W_half[0] = 0.0
    print_time("Order %d of %r: B_%d = %.8f" % (n, exp.rep, n, B_n), color)
    return B_n, W_half


def expand(rep, order=DEFAULT_ORDER, extent=DEFAULT_EXTENT, dx=DEFAULT_DX):
    if int(order) != order or order < 0:
        raise DomainError("expansion order must be a non-negative integer")
    potentials = taylor_potential(rep, order)
    exp = _seed(rep, extent, dx)
    for n in range(1, order + 1):
        B_n, W_half = order_n_step(exp, potentials[n])
        exp.append(B_n, W_half, potentials[n])
    return exp


def energy_at(exp, delta):
    return sum(b * delta ** m for m, b in enumerate(exp.B))


def wavefunction_at(exp, delta, grid=None):
    """ Normalized exp(-int_0^x sum_m W_m delta^m) on the grid. """
    if grid is None:
        grid = exp.grid
    xs = grid.points
    if np.max(np.abs(xs)) > exp.half[-1] + 1e-12:
        raise DomainError("grid leaves the range of the expansion")
    W_total = exp.total_superpotential(delta)
    if W_total[-1] <= 0.0:
        raise BrokenTruncation("truncated superpotential of %r at delta = %g "
                               "does not confine" % (exp.rep, delta))
    exponent = CubicSpline(exp.half, W_total).antiderivative()(np.abs(xs))
    exponent = exponent - np.min(exponent)
    return GridFunction(grid.x0, grid.dx, np.exp(-exponent)).normalized()


def residual_order(exp, n, exclude=RESIDUAL_EXCLUDE):
    """ -W_n' + sum_k W_k W_{n-k} + B_n - V_n on the interior grid.

    Samples with |x| < exclude are set to zero.
    """
    if n > exp.order:
        raise DomainError("order %d not computed yet" % n)
    W = exp.W
    slope = W[n].derivative()
    xs = slope.x
    products = sum(W[k].values[1:-1] * W[n - k].values[1:-1]
                   for k in range(n + 1))
    with np.errstate(divide="ignore", invalid="ignore"):
        values = (-slope.values + products + exp.B[n]
                  - exp.potentials[n](xs))
    values = np.where(np.abs(xs) < exclude, 0.0, values)
    return GridFunction(slope.x0, slope.dx, values)


def digamma_first_order(sector):
    """ Closed-form B_1 of the eps(x) x^2 reparametrization. """
    return (0.5 * digamma(1.5) + sector.sign * (0.5 * digamma(0.5)
                                                + math.log(2.0)))


def quartic_first_order():
    """ Closed-form B_0 + B_1 of the quartic reparametrization. """
    return QUARTIC_SCALE * (1.0 + 0.5 * digamma(1.5))
