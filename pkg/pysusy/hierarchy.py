import math
import numpy as np
from numpy.polynomial import Polynomial
from .numerics import Grid, GridFunction, DomainError, sample, log_gamma
from .susyCore import (CoulombRadial, OddMonomial, Tabulated, WellCotangent,
                       apply_A, ground_state)
from . import shooting
from .utility import *
color = "green"

SHAPE_TOL = 1e-9


class ShapeInvarianceError(SusyError):
    pass


class NoPartnerError(SusyError):
    pass


class RadialGridError(DomainError):
    pass


class HierarchyMember:
    """ One Hamiltonian H_k = A_k^dag A_k + E0 of a hierarchy.

    Attributes:
        w (Superpotential, required): W_k.
        E0 (float, required): Ground energy of H_k.
    """
    def __init__(self, w, E0):
        self.w = w
        self.E0 = float(E0)

    def potential(self, x):
        return self.w.w(x) ** 2 - self.w.wp(x) + self.E0

    def partner(self, x):
        return self.w.w(x) ** 2 + self.w.wp(x) + self.E0


class HierarchyChain:
    """ Hamiltonians H_0, H_1, ... where H_(k+1) is the partner of H_k.

    Potentials are derived on demand from (W_k, E0_k).
    """
    def __init__(self, members):
        if len(members) < 1:
            raise DomainError("a hierarchy needs at least one member")
        energies = [m.E0 for m in members]
        if any(b < a - 1e-12 for a, b in zip(energies, energies[1:])):
            raise DomainError("ground energies must not decrease along the "
                              "chain")
        self.members = list(members)

    def __len__(self):
        return len(self.members)

    def __getitem__(self, k):
        return self.members[k]

    def potential(self, k):
        return self.members[k].potential

    @property
    def ground_energies(self):
        return [m.E0 for m in self.members]


def sho_chain(depth):
    """ W_k = x and E0_k = 2k for k < depth. """
    if depth < 1:
        raise DomainError("depth must be positive")
    w = OddMonomial(1.0, 0)
    return HierarchyChain([HierarchyMember(w, 2.0 * k) for k in range(depth)])


def chain_from_superpotential(w, depth, seeds, dx=shooting.DEFAULT_DX):
    """ Builds the hierarchy of an even problem by shooting.

    seeds[k] estimates the ground energy of member k + 1; its
    superpotential is tabulated as -psi'/psi of the shot ground state.
    """
    if len(seeds) < depth - 1:
        raise DomainError("need %d seed energies" % (depth - 1))
    members = [HierarchyMember(w, 0.0)]
    for k in range(1, depth):
        V = members[-1].partner
        p = shooting.problem_for_level(V, 0, seeds[k - 1], dx)
        E0 = shooting.find_level(p, 0)
        psi = shooting.wavefunction(p, E0)
        log_slope = -psi.derivative().values / psi.values[1:-1]
        values = GridFunction(psi.x0 + psi.dx, psi.dx, log_slope)
        slope = GridFunction(values.x0, values.dx,
                             np.gradient(values.values, values.dx))
        members.append(HierarchyMember(Tabulated(values, slope), E0))
        print_time("Hierarchy member %d: E0 = %.6f" % (k, E0), color)
    return HierarchyChain(members)


def potential_via_superpotentials(chain, j):
    """ V_j = V_0 + 2 sum_{k<j} W_k'. """
    def V(x):
        acc = chain[0].potential(x)
        for k in range(j):
            acc = acc + 2.0 * chain[k].w.wp(x)
        return acc
    return V


def potential_via_ground_states(chain, j, grid):
    """ V_j = V_0 - 2 d^2/dx^2 ln(psi_0^0 ... psi_0^(j-1)) on the interior
        grid.
    """
    log_product = np.zeros(grid.size)
    for k in range(j):
        log_product += np.log(ground_state(chain[k].w, grid).values)
    logs = GridFunction(grid.x0, grid.dx, log_product)
    curvature = logs.second_derivative()
    base = sample(chain[0].potential, curvature.x)
    return GridFunction(curvature.x0, curvature.dx,
                        base - 2.0 * curvature.values)


class PairingRow:
    """ E^n_k measured on member n against E^(n+j)_(k-j) on member n+j. """
    def __init__(self, n, k, j, energy, paired_energy):
        self.n = n
        self.k = k
        self.j = j
        self.energy = energy
        self.paired_energy = paired_energy

    @property
    def deviation(self):
        return abs(self.energy - self.paired_energy)

    def as_tuple(self):
        return (self.n, self.k, self.j, self.energy, self.paired_energy,
                self.deviation)


def shoot_member_level(chain, member, level, dx=shooting.DEFAULT_DX):
    """ Level of one member by shooting, bracketed by the chain's own
        prediction E0 of member + level.
    """
    seed = chain[member + level].E0
    p = shooting.problem_for_level(chain.potential(member), level, seed, dx)
    return shooting.find_level(p, level // 2)


def chain_energies(chain, k, level_of=None):
    """ Table checking E^(n+j)_(k-j) = E^n_k for every member n with
        n + k inside the chain.

    level_of(chain, member, level) measures a level; shooting by default.
    """
    if len(chain) < 2:
        raise DomainError("pairing needs a chain of length >= 2")
    if level_of is None:
        level_of = shoot_member_level
    rows = []
    for n in range(len(chain) - k):
        energy = level_of(chain, n, k)
        for j in range(k + 1):
            paired = energy if j == 0 else level_of(chain, n + j, k - j)
            rows.append(PairingRow(n, k, j, energy, paired))
    return rows


class ShapeInvariantModel:
    """ Superpotential family W(x; a) with V+(x; a) = V-(x; f(a)) + R(f(a)).

    Attributes:
        superpotential (callable, required): a -> Superpotential.
        shift (callable, required): Parameter map a -> f(a).
        remainder (callable, required): R(a).
        domain (tuple): Sampling window used by the invariance check.
    """
    def __init__(self, superpotential, shift, remainder, domain=(-3.0, 3.0)):
        self.superpotential = superpotential
        self.shift = shift
        self.remainder = remainder
        self.domain = domain

    def V_minus(self, a):
        w = self.superpotential(a)
        return lambda x: w.w(x) ** 2 - w.wp(x)

    def V_plus(self, a):
        w = self.superpotential(a)
        return lambda x: w.w(x) ** 2 + w.wp(x)

    def sample_points(self, count=7):
        lo, hi = self.domain
        return np.linspace(lo, hi, count + 2)[1:-1]


def sho_model():
    return ShapeInvariantModel(lambda a: OddMonomial(1.0, 0),
                               lambda a: a, lambda a: 2.0)


def hydrogen_model(e2, l=0):
    """ W(r; l) = e^2/(2(l+1)) - (l+1)/r, l -> l + 1,
        R(l) = e^4/(4 l^2) - e^4/(4 (l+1)^2).
    """
    e4 = e2 * e2
    return ShapeInvariantModel(
        lambda a: CoulombRadial(e2, a, 0), lambda a: a + 1,
        lambda a: e4 / (4.0 * a * a) - e4 / (4.0 * (a + 1) ** 2),
        domain=(0.5, 12.0))


def check_shape_invariance(model, a, xs=None):
    """ max |V+(x; a) - V-(x; f(a)) - R(f(a))| over xs. """
    if xs is None:
        xs = model.sample_points()
    xs = np.asarray(xs, dtype=float)
    if xs.size < 5:
        raise DomainError("shape invariance needs at least 5 sample points")
    nxt = model.shift(a)
    gap = (sample(model.V_plus(a), xs) - sample(model.V_minus(nxt), xs)
           - model.remainder(nxt))
    deviation = float(np.max(np.abs(gap)))
    scale = max(1.0, float(np.max(np.abs(sample(model.V_plus(a), xs)))))
    if deviation > SHAPE_TOL * scale:
        raise ShapeInvarianceError("V+(x; %r) - V-(x; %r) is not constant "
                                   "(deviation %.3e)" % (a, nxt, deviation))
    return deviation


def shape_invariant_spectrum(model, a_n, levels):
    """ E_0 = 0 and E_j = sum_{k=n}^{n+j-1} R(a_(k+1)) for j <= levels. """
    check_shape_invariance(model, a_n)
    energies = [0.0]
    a = a_n
    for j in range(levels):
        a = model.shift(a)
        energies.append(energies[-1] + model.remainder(a))
    return energies


def hydrogen_levels(l, j, e2):
    """ Bound level of the radial problem from the shape-invariant ladder.

    Subtracts the e^4/(4(l+1)^2) shift between V-(r; l) and the physical
    effective potential; equals -1/(a^2 (l+j+1)^2) with a = 2/e^2.
    """
    ladder = shape_invariant_spectrum(hydrogen_model(e2, l), l, j)
    return ladder[j] - e2 * e2 / (4.0 * (l + 1) ** 2)


def hydrogen_levels_closed(l, j, e2):
    a = 2.0 / e2
    return -1.0 / (a * a * (l + j + 1) ** 2)


def radial_grid(l, j, e2, dx=None):
    """ r in [dx, 40 a n] with dx = 1e-3 a, n = l + j + 1. """
    a = 2.0 / e2
    n = l + j + 1
    if dx is None:
        dx = 1e-3 * a
    return Grid(dx, 40.0 * a * n, dx)


def _apply_Adag_polynomial(P, k, e2, beta):
    """ (W - d/dr)(P e^(-beta r)) = Q e^(-beta r), W = e^2/(2k) - k/r. """
    coef = P.coef
    if abs(coef[0]) > 1e-12 * float(np.max(np.abs(coef))):
        raise DomainError("ladder polynomial does not vanish at r = 0")
    over_r = Polynomial(coef[1:]) if coef.size > 1 else Polynomial([0.0])
    return (e2 / (2.0 * k) + beta) * P - k * over_r - P.deriv()


def hydrogen_wavefunction(l, j, e2=2.0, grid=None):
    """ Radial function of level j for angular momentum l.

    Starts from the zero mode r^n e^(-r/(a n)) of member j, n = l + j + 1,
    normalized in closed form, and applies A^dag of members j-1, ..., 0 as
    exact polynomial operations. Each A^dag carries the prefactor
    (E_j - E_m)^(-1/2) from the shape-invariant spectrum.
    """
    if grid is None:
        grid = radial_grid(l, j, e2)
    if grid.x0 <= 0.0:
        raise RadialGridError("radial grid must start at r > 0")
    a = 2.0 / e2
    n = l + j + 1
    beta = 1.0 / (a * n)
    log_norm = log_gamma(2 * n + 1) + (2 * n + 1) * math.log(a * n / 2.0)
    P = Polynomial([0.0] * n + [1.0]) * math.exp(-0.5 * log_norm)
    ladder = shape_invariant_spectrum(hydrogen_model(e2, l), l, j)
    for m in range(j - 1, -1, -1):
        P = _apply_Adag_polynomial(P, l + m + 1, e2, beta)
        P = P / math.sqrt(ladder[j] - ladder[m])
    rs = grid.points
    values = P(rs) * np.exp(-beta * rs)
    psi = GridFunction(grid.x0, grid.dx, values)
    print_time("Hydrogen l = %d, j = %d: norm on grid %.8f"
               % (l, j, psi.norm()), color)
    return psi


def infinite_well_partner(L, n, grid):
    """ (E-_n, psi-_n, E+_(n-1), psi+_(n-1)) of the well partner pair. """
    if n < 1:
        raise NoPartnerError("the zero mode of H- has no partner in H+")
    if not (grid.x0 > 0.0 and grid.x_end < L):
        raise DomainError("grid must lie inside (0, L)")
    kappa = math.pi / L
    xs = grid.points
    energy = kappa ** 2 * n * (n + 2)
    minus = math.sqrt(2.0 / L) * np.sin((n + 1) * kappa * xs)
    plus = math.sqrt(2.0 / (n * (n + 2) * L)) * (
        -np.sin((n + 1) * kappa * xs) / np.tan(kappa * xs)
        + (n + 1) * np.cos((n + 1) * kappa * xs))
    return (energy, GridFunction(grid.x0, grid.dx, minus), energy,
            GridFunction(grid.x0, grid.dx, plus))


def well_partner_deviation(L, n, grid):
    """ max |closed-form psi+ - A psi-/sqrt(E)| after normalization. """
    energy, minus, _, plus = infinite_well_partner(L, n, grid)
    mapped = apply_A(WellCotangent(L), minus).normalized()
    closed = plus.interior().normalized()
    return mapped.max_abs_difference(closed)
