import math
import numpy as np
from .numerics import (Grid, GridFunction, BracketError, DomainError,
                       DivergenceSignal, bisect, numerov_integrate, sample)
from .susyCore import SignMonomial, partner_potentials
from .utility import *
color = "yellow"

DEFAULT_DX = 1e-3
LEVEL_TOL = 1e-7
# divergence is declared once |psi| passes this with psi(0) or psi'(0) = 1
DIVERGENCE_LIMIT = 1e6
# |psi(x_max)| below this fraction of the peak counts as decayed
DECAY_FRACTION = 1e-3
# x_max needs V - E at least this large, and this much WKB action past
# the turning point
WALL_HEIGHT = 50.0
WALL_ACTION = 15.0
BRACKET_HALF_WIDTH = 0.5
# times a bracket without a sign change is stepped outward
BRACKET_STEPS = 6

# Levels 1..7 of x^4 - 2|x| (equal to levels 0..6 of x^4 + 2|x|)
REFERENCE_LEVELS = (1.96951, 5.50718, 9.39427, 13.85837, 18.64598, 23.80719,
                    29.23255)


class InconclusiveShot(SusyError):
    pass


class MislabeledLevel(SusyError):
    """ Raised when a converged level has the wrong number of nodes.

    Attributes:
        expected (int): Requested half-line node count.
        measured (int): Node count of the converged solution.
        energy (float): Converged energy.
    """
    def __init__(self, expected, measured, energy):
        super().__init__("level at E = %.6f has %d half-line nodes, "
                         "expected %d" % (energy, measured, expected))
        self.expected = expected
        self.measured = measured
        self.energy = energy


def choose_x_max(V, E, step=0.05, limit=100.0):
    """ Smallest x with V - E >= WALL_HEIGHT and enough action past the
        last classical turning point.
    """
    x = 0.0
    action = 0.0
    while x < limit:
        x += step
        excess = float(V(x)) - E
        if excess > 0:
            action += math.sqrt(excess) * step
        else:
            action = 0.0
        if excess >= WALL_HEIGHT and action >= WALL_ACTION:
            return x
    raise DomainError("potential does not confine energies near %g" % E)


class ShootingProblem:
    """ An even potential shot on the half line with a parity condition.

    Attributes:
        V (callable, required): Even potential.
        parity (Parity, required): Boundary condition at x = 0.
        bracket (tuple, required): (E_lo, E_hi) energy bracket.
        x_max (float): Outer end of the half line, chosen from V and E_hi
            when omitted.
        dx (float): Numerov step.
    """
    def __init__(self, V, parity, bracket, x_max=None, dx=DEFAULT_DX):
        E_lo, E_hi = bracket
        if not E_hi > E_lo:
            raise DomainError("empty energy bracket %r" % (bracket,))
        xs = np.linspace(0.1, 3.0, 7)
        left = sample(V, -xs)
        right = sample(V, xs)
        if np.any(np.abs(left - right)
                  > 1e-12 * np.maximum(1.0, np.abs(right))):
            raise DomainError("shooting needs an even potential")
        self.V = V
        self.parity = parity
        self.bracket = (float(E_lo), float(E_hi))
        self.dx = float(dx)
        if x_max is None:
            x_max = choose_x_max(V, E_hi)
        if float(V(x_max)) - E_hi < 10.0:
            raise DomainError("x_max = %g is not deep enough in the wall"
                              % x_max)
        self.x_max = float(x_max)

    @property
    def grid(self):
        return Grid(0.0, self.x_max, self.dx)

    def start(self):
        if self.parity == Parity.EVEN:
            return (1.0, 0.0)
        return (0.0, 1.0)

    def widened(self, factor=1.25):
        return ShootingProblem(self.V, self.parity, self.bracket,
                               self.x_max * factor, self.dx)


def _shoot(p, E):
    psi_start, dpsi_start = p.start()
    return numerov_integrate(p.V, E, p.grid, psi_start, dpsi_start)


def divergence_sign(p, E):
    """ Sign of the runaway tail at energy E; 0 when the solution decays. """
    try:
        psi = _shoot(p, E)
    except DivergenceSignal as signal:
        return signal.sign
    v = psi.values
    runaway = np.nonzero(np.abs(v) > DIVERGENCE_LIMIT)[0]
    if runaway.size:
        return int(np.sign(v[runaway[0]]))
    peak = float(np.max(np.abs(v)))
    if abs(v[-1]) <= DECAY_FRACTION * peak:
        return 0
    if abs(v[-1]) > abs(v[-2]):
        return int(np.sign(v[-1]))
    raise InconclusiveShot("neither divergence nor decay at E = %g up to "
                           "x = %g" % (E, p.x_max))


def turning_point(V, E, x_max, dx):
    xs = Grid(0.0, x_max, dx).points
    allowed = np.nonzero(sample(V, xs) < E)[0]
    if allowed.size == 0:
        return 0.0
    return float(xs[allowed[-1]])


def half_line_nodes(p, E, psi=None):
    """ Zeros of psi on (0, x_t], x_t the outer turning point. """
    if psi is None:
        psi = _shoot(p, E)
    x_t = turning_point(p.V, E, p.x_max, p.dx)
    if x_t <= p.dx:
        return 0
    return psi.restrict(p.dx, x_t).node_count()


def extended_bracket(p, steps=BRACKET_STEPS):
    """ A problem whose bracket shows a divergence sign change.

    The bracket is stepped outward by its own width, below first and
    then above, until one of the new strips has a sign change.
    """
    lo, hi = p.bracket
    width = hi - lo
    s_lo = divergence_sign(p, lo)
    s_hi = divergence_sign(p, hi)
    if s_lo != s_hi or s_lo == 0:
        return p
    below, above = (lo, s_lo), (hi, s_hi)
    for _ in range(steps):
        E = below[0] - width
        s = divergence_sign(p, E)
        if s != below[1] or s == 0:
            print_time("Extending bracket down to [%g, %g]" % (E, below[0]),
                       color)
            return ShootingProblem(p.V, p.parity, (E, below[0]), p.x_max,
                                   p.dx)
        below = (E, s)
        E = above[0] + width
        x_max = max(p.x_max, choose_x_max(p.V, E))
        q = ShootingProblem(p.V, p.parity, (above[0], E), x_max, p.dx)
        s = divergence_sign(q, E)
        if s != above[1] or s == 0:
            print_time("Extending bracket up to [%g, %g]" % (above[0], E),
                       color)
            return q
        above = (E, s)
        p = q
    raise BracketError("no sign change within %d steps of [%g, %g]"
                       % (steps, lo, hi))


def find_level(p, node_target, tol=LEVEL_TOL):
    """ Bisects the divergence sign inside p.bracket.

    A bracket without a sign change is first stepped outward. An
    inconclusive shot widens x_max and restarts, at most three times.
    """
    for attempt in range(4):
        try:
            p = extended_bracket(p)
            energy = bisect(lambda E: divergence_sign(p, E), p.bracket[0],
                            p.bracket[1], tol)
            break
        except InconclusiveShot:
            if attempt == 3:
                raise
            p = p.widened()
            print_time("Widening x_max to %g" % p.x_max, color)
    measured = half_line_nodes(p, energy)
    if measured != node_target:
        raise MislabeledLevel(node_target, measured, energy)
    print_time("Level with %d half-line nodes (%s): E = %.8f"
               % (node_target, p.parity.name.lower(), energy), color)
    return energy


def problem_for_level(V, n, seed, dx=DEFAULT_DX,
                      half_width=BRACKET_HALF_WIDTH):
    return ShootingProblem(V, Parity.of_level(n),
                           (seed - half_width, seed + half_width), dx=dx)


def spectrum(V, levels, seeds, dx=DEFAULT_DX):
    """ Energies of the given levels; seeds[i] centres the bracket of
        levels[i].
    """
    energies = []
    for n, seed in zip(levels, seeds):
        energies.append(find_level(problem_for_level(V, n, seed, dx), n // 2))
    return energies


def eps_x2_potential(sector, g=1.0):
    """ x^4 -/+ 2|x| scaled by g, the partners of g eps(x) x^2. """
    return partner_potentials(SignMonomial(g, 1)).potential(sector)


def variational_seeds(sector, levels, m=10):
    from .variational import eps_x2_levels
    energies = eps_x2_levels(m, sector).energies
    return [energies[n] for n in levels]


def wavefunction(p, E):
    """ Full-line normalized solution at E, mirrored by parity.

    The half-line sample is cut where the runaway tail starts.
    """
    psi = _shoot(p, E)
    v = psi.values
    x_t = turning_point(p.V, E, p.x_max, p.dx)
    i_t = min(int(round(x_t / p.dx)), v.size - 1)
    cut = i_t + int(np.argmin(np.abs(v[i_t:])))
    half = v[:cut + 1]
    mirror = half[:0:-1] if p.parity == Parity.EVEN else -half[:0:-1]
    full = np.concatenate([mirror, half])
    out = GridFunction(-cut * p.dx, p.dx, full)
    return out.normalized()
