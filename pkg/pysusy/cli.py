import argparse
import asyncio
import sys
from . import (heunSeries, hierarchy, lpt, scattering, shooting, superalgebra,
               susyCore, variational)
from .emitters import Table, emit
from .numerics import Grid
from .runConfig import (RunConfig, ConfigError, FAMILIES, FORMATS, PROBLEMS,
                        SECTORS)
from .utility import *
color = "green"

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

# above this basis size the overlap matrix is close to singular
CONDITIONING_LIMIT = 20
PLOT_EXTENT = 3.0
RADIAL_EXTENT = 20.0
# variational basis used to seed the shooting brackets
SEED_BASIS = 10


def run_jobs(fn, jobs):
    """ Runs fn(*job) for every job on the default executor and returns
        the results in submission order.
    """
    loop = asyncio.new_event_loop()
    try:
        futures = [loop.run_in_executor(None, fn, *job) for job in jobs]
        return loop.run_until_complete(asyncio.gather(*futures))
    finally:
        loop.close()


def _sectors(cfg, default="minus"):
    """ Sectors named by --sector; default applies when it was not given. """
    name = cfg["sector"] or default
    if name == "both":
        return [Sector.MINUS, Sector.PLUS]
    return [Sector.parse(name)]


def _coupling(cfg):
    return 1.0 if cfg["g"] is None else float(cfg["g"])


def _name(sector):
    return sector.name.lower()


def _deviation(value, reference):
    if reference is None or reference == 0:
        return None
    return variational.percent_deviation(value, reference)


def _abs_deviation(value, reference):
    if reference is None:
        return None
    return abs(value - reference)


# partner

def _superpotential(cfg):
    family = cfg["family"]
    if family is None:
        raise ConfigError("partner needs --family")
    if family in ("odd-monomial", "sign-monomial", "even-monomial"):
        if cfg["g"] is None:
            raise ConfigError("--g is required for the %s family" % family)
        cls = {"odd-monomial": susyCore.OddMonomial,
               "sign-monomial": susyCore.SignMonomial,
               "even-monomial": susyCore.EvenMonomial}[family]
        return cls(float(cfg["g"]), int(cfg["n"]))
    if family == "well-cotangent":
        return susyCore.WellCotangent(float(cfg["L"]))
    return susyCore.CoulombRadial(float(cfg["e2"]), int(cfg["l"]),
                                  int(cfg["n"]))


def _partner_grid(cfg, w):
    dx = float(cfg["dx"])
    if isinstance(w, susyCore.WellCotangent):
        lo, hi = dx, w.L - dx
    elif isinstance(w, susyCore.CoulombRadial):
        lo, hi = dx, RADIAL_EXTENT
    else:
        lo, hi = -PLOT_EXTENT, PLOT_EXTENT
    if cfg["x-min"] is not None:
        lo = float(cfg["x-min"])
    if cfg["x-max"] is not None:
        hi = float(cfg["x-max"])
    return Grid(lo, hi, dx)


def cmd_partner(cfg):
    w = _superpotential(cfg)
    pair = susyCore.partner_potentials(w)
    xs = _partner_grid(cfg, w).points
    columns = zip(xs, pair.V_minus(xs), pair.V_plus(xs), w.w(xs))
    notes = ["susy %s" % _describe_status(susyCore.susy_status(w))]
    if pair.spike is not None:
        notes.append("delta x=%g minus=%.6f plus=%.6f"
                     % (pair.spike.position, pair.spike.weight_minus,
                        pair.spike.weight_plus))
    return Table("partner", ("x", "V_minus", "V_plus", "W"),
                 [tuple(float(v) for v in row) for row in columns], notes)


def _describe_status(status):
    if status.preserved:
        return "preserved (zero mode in the %s sector)" % _name(status.sector)
    return "broken"


# variational

def _variational_job(problem, m, sector):
    if problem == "quartic":
        return variational.quartic_levels(m)
    return variational.eps_x2_levels(m, sector)


def cmd_variational(cfg):
    sizes = cfg["sweep"] or [cfg["m"]]
    for m in sizes:
        if m > CONDITIONING_LIMIT:
            print_warning("basis size %d > %d: the overlap matrix is badly "
                          "conditioned and Cholesky may fail"
                          % (m, CONDITIONING_LIMIT))
    if cfg["problem"] == "quartic":
        jobs = [("quartic", m, None) for m in sizes]
    else:
        jobs = [("eps-x2", m, s) for s in _sectors(cfg) for m in sizes]
    results = run_jobs(_variational_job, jobs)
    if cfg["coefficients"]:
        return _coefficient_table(jobs, results)
    if cfg["problem"] == "quartic":
        return _quartic_table(cfg, sizes, results)
    g = _coupling(cfg)
    header = ["sector", "m", "level", "energy", "parity"]
    if cfg["compare-thesis"]:
        header += ["published", "abs_deviation"]
    table = Table("variational", header)
    for (_, m, sector), result in zip(jobs, results):
        energies = result.scaled(g)
        reference = variational.REFERENCE_ENERGIES.get((sector, m), ())
        for n, (energy, parity) in enumerate(zip(energies, result.parities)):
            row = [_name(sector), m, n, energy,
                   parity.name.lower() if parity else "mixed"]
            if cfg["compare-thesis"]:
                published = reference[n] if n < len(reference) and g == 1.0 \
                    else None
                row += [published, _abs_deviation(energy, published)]
            table.append(row)
    return table


def _quartic_table(cfg, sizes, results):
    header = ["m", "level", "energy", "reference", "deviation_percent"]
    if cfg["compare-thesis"]:
        header += ["published", "abs_deviation"]
    table = Table("variational", header)
    for m, result in zip(sizes, results):
        for n, energy in enumerate(result.energies):
            reference = variational.QUARTIC_REFERENCE if n == 0 else None
            row = [m, n, energy, reference, _deviation(energy, reference)]
            if cfg["compare-thesis"]:
                published = variational.QUARTIC_REFERENCE_LADDER.get(m) \
                    if n == 0 else None
                row += [published, _abs_deviation(energy, published)]
            table.append(row)
    return table


def _coefficient_table(jobs, results):
    table = Table("variational",
                  ("sector", "m", "level", "energy", "j", "coefficient"))
    for (_, m, sector), result in zip(jobs, results):
        name = _name(sector) if sector else "plain"
        for n, alpha in enumerate(result.coefficients):
            for j, a in enumerate(alpha, start=1):
                table.append((name, m, n, result.energies[n], j, float(a)))
    return table


# shoot

def _shoot_levels(sector, count):
    """ Minus-sector levels 1..count (level 0 is the zero mode), plus-sector
        levels 0..count-1.
    """
    if sector == Sector.MINUS:
        return list(range(1, count + 1))
    return list(range(count))


def _published_level(sector, n):
    i = n - 1 if sector == Sector.MINUS else n
    if 0 <= i < len(shooting.REFERENCE_LEVELS):
        return shooting.REFERENCE_LEVELS[i]
    return None


def _shoot_job(sector, n, seed, g, dx, tol):
    V = shooting.eps_x2_potential(sector, g)
    p = shooting.problem_for_level(V, n, seed, dx)
    return shooting.find_level(p, n // 2, tol)


def cmd_shoot(cfg):
    g = _coupling(cfg)
    dx = float(cfg["dx"])
    tol = shooting.LEVEL_TOL if cfg["tol"] is None else float(cfg["tol"])
    jobs = []
    seeds = {}
    for sector in _sectors(cfg):
        levels = _shoot_levels(sector, cfg["levels"])
        m = max(SEED_BASIS, levels[-1] + 3)
        seeds[sector] = variational.scale_energies(
            shooting.variational_seeds(sector, levels, m), g)
        jobs += [(sector, n, seed, g, dx, tol)
                 for n, seed in zip(levels, seeds[sector])]
    energies = run_jobs(_shoot_job, jobs)
    header = ["sector", "level", "energy", "variational", "deviation_percent"]
    if cfg["compare-thesis"]:
        header += ["published", "abs_deviation"]
    table = Table("shoot", header)
    found = {}
    for (sector, n, seed, _, _, _), energy in zip(jobs, energies):
        found[(sector, n)] = energy
        row = [_name(sector), n, energy, seed, _deviation(seed, energy)]
        if cfg["compare-thesis"]:
            published = _published_level(sector, n) if g == 1.0 else None
            row += [published, _abs_deviation(energy, published)]
        table.append(row)
    pairs = [abs(found[(Sector.MINUS, n + 1)] - found[(Sector.PLUS, n)])
             for n in range(cfg["levels"])
             if (Sector.MINUS, n + 1) in found and (Sector.PLUS, n) in found]
    if pairs:
        table.notes.append("pairing max |E-(n+1) - E+(n)| = %.3e"
                           % max(pairs))
    return table


# lpt

def _lpt_job(problem, sector, order, extent, dx):
    rep = lpt.Quartic() if problem == "quartic" else lpt.EpsX2(sector)
    return lpt.expand(rep, order, extent, dx)


def _first_order_closed(problem, sector, B0):
    if problem == "quartic":
        return lpt.quartic_first_order() - B0
    return lpt.digamma_first_order(sector)


def cmd_lpt(cfg):
    problem = cfg["problem"]
    extent = lpt.DEFAULT_EXTENT if cfg["x-max"] is None else float(
        cfg["x-max"])
    sectors = [None] if problem == "quartic" else _sectors(cfg, "both")
    jobs = [(problem, s, cfg["order"], extent, float(cfg["dx"]))
            for s in sectors]
    expansions = run_jobs(_lpt_job, jobs)
    delta = float(cfg["delta"])
    table = Table("lpt", ("problem", "sector", "order", "delta", "energy",
                          "first_order_closed", "deviation_percent"))
    for sector, exp in zip(sectors, expansions):
        energy = lpt.energy_at(exp, delta)
        closed = exp.B[0] + delta * _first_order_closed(problem, sector,
                                                        exp.B[0])
        table.append((problem, _name(sector) if sector else "plain",
                      exp.order, delta, energy, closed,
                      _deviation(energy, closed)))
    return table


# scatter

def cmd_scatter(cfg):
    if cfg["E"] is None:
        raise ConfigError("scatter needs --E")
    g = _coupling(cfg)
    table = Table("scatter", ("sector", "g", "E", "k", "R", "T", "R_plus_T",
                              "B_re", "B_im", "C_re", "C_im"))
    for sector in _sectors(cfg):
        sol = scattering.scatter(sector, g, float(cfg["E"]))
        table.append((_name(sector), g, sol.E, sol.k, sol.R, sol.T,
                      sol.R + sol.T) + sol.reflected + sol.transmitted)
    return table


# hydrogen

def _hydrogen_job(l, j, e2):
    energy = hierarchy.hydrogen_levels(l, j, e2)
    psi = hierarchy.hydrogen_wavefunction(l, j, e2)
    return energy, psi.norm(), psi.node_count()


def cmd_hydrogen(cfg):
    l = int(cfg["l"])
    e2 = float(cfg["e2"])
    jobs = [(l, j, e2) for j in range(cfg["levels"])]
    results = run_jobs(_hydrogen_job, jobs)
    table = Table("hydrogen", ("l", "j", "n", "energy", "closed_form",
                               "deviation_percent", "norm", "nodes"))
    for (_, j, _), (energy, norm, nodes) in zip(jobs, results):
        closed = hierarchy.hydrogen_levels_closed(l, j, e2)
        table.append((l, j, l + j + 1, energy, closed,
                      _deviation(energy, closed), norm, nodes))
    return table


# heun

def cmd_heun(cfg):
    if cfg["E"] is None:
        raise ConfigError("heun needs --E")
    g = _coupling(cfg)
    series = heunSeries.FrobeniusSeries(cfg["a0"], cfg["a1"], float(cfg["E"]),
                                        g, cfg["j-max"])
    params = heunSeries.heun_parameters(g, series.E)
    notes = ["heun alpha=%.6f beta=%.6f gamma=%.6f" % params.as_tuple()[:3]]
    for sigma in (1, -1):
        degree = heunSeries.truncation_scan(series, sigma)
        branch = "x>0" if sigma == 1 else "x<0"
        notes.append("%s %s" % (branch, "no truncation" if degree is None
                                else "truncates at degree %d" % degree))
    right = series.coefficients[1]
    left = series.coefficients[-1]
    rows = []
    for j in range(max(right.size, left.size)):
        rows.append((j, float(right[j]) if j < right.size else None,
                     float(left[j]) if j < left.size else None))
    return Table("heun", ("j", "a_j_right", "a_j_left"), rows, notes)


# superalgebra

def cmd_superalgebra(cfg):
    n_max = int(cfg["n-max"])
    if cfg["degeneracy"]:
        return Table("superalgebra", ("level", "multiplicity"),
                     superalgebra.degeneracy_table(n_max))
    report = superalgebra.check_superalgebra(n_max)
    return Table("superalgebra", ("identity", "max_deviation", "passed"),
                 report.rows())


# well

def _well_job(L, n, dx):
    grid = Grid(dx, L - dx, dx)
    energy, _, partner_energy, _ = hierarchy.infinite_well_partner(L, n, grid)
    return energy, partner_energy, hierarchy.well_partner_deviation(L, n, grid)


def cmd_well(cfg):
    L = float(cfg["L"])
    jobs = [(L, n, float(cfg["dx"])) for n in range(1, cfg["levels"] + 1)]
    results = run_jobs(_well_job, jobs)
    return Table("well", ("n", "E_minus", "E_plus", "max_deviation"),
                 [(n,) + tuple(r) for (_, n, _), r in zip(jobs, results)])


# levels and wavefunctions

def cmd_levels(cfg):
    jobs = [(cfg["problem"], cfg["m"], s) for s in _sectors(cfg)]
    results = run_jobs(_variational_job, jobs)
    if cfg["problem"] == "quartic":
        results = results[:1]
    return Table("levels", ("sector", "level", "energy", "parity"),
                 variational.level_diagram(results))


def cmd_wavefunctions(cfg):
    sectors = _sectors(cfg)
    if len(sectors) != 1:
        raise ConfigError("wavefunctions needs a single sector")
    sector = sectors[0]
    result = _variational_job(cfg["problem"], cfg["m"], sector)
    if cfg["problem"] == "quartic":
        V = lambda x: x ** 4 / 4.0  # noqa: E731
    else:
        V = shooting.eps_x2_potential(sector)
    extent = PLOT_EXTENT if cfg["x-max"] is None else float(cfg["x-max"])
    grid = Grid(-extent, extent, float(cfg["dx"]))
    count = min(cfg["levels"], len(result))
    columns = []
    for n in range(count):
        phi = result.wavefunction(n, grid)
        if cfg["residual"]:
            phi = variational.residual(phi, result.energies[n], V)
        columns.append(phi)
    prefix = "residual" if cfg["residual"] else "psi"
    header = ["x"] + ["%s_%d" % (prefix, n) for n in range(count)]
    xs = columns[0].x
    rows = zip(xs, *[c.values for c in columns])
    return Table("wavefunctions", header,
                 [tuple(float(v) for v in row) for row in rows])


COMMAND_TABLE = {
    "partner": cmd_partner,
    "variational": cmd_variational,
    "shoot": cmd_shoot,
    "lpt": cmd_lpt,
    "scatter": cmd_scatter,
    "hydrogen": cmd_hydrogen,
    "heun": cmd_heun,
    "superalgebra": cmd_superalgebra,
    "well": cmd_well,
    "levels": cmd_levels,
    "wavefunctions": cmd_wavefunctions,
}


def build_parser():
    S = argparse.SUPPRESS
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--verbose", action="store_true", default=S,
                        help="log progress to standard error")
    common.add_argument("--config", default=S,
                        help="JSON file with a \"pysusy:run\" object")
    common.add_argument("--format", choices=FORMATS, default=S)
    common.add_argument("--output", default=S,
                        help="output file (default: standard output)")
    common.add_argument("--compare-thesis", action="store_true", default=S,
                        help="add reference values and absolute deviations")
    common.add_argument("--dx", type=float, default=S)
    common.add_argument("--tol", type=float, default=S)

    parser = argparse.ArgumentParser(
        prog="pysusy", parents=[common],
        description="Numerical supersymmetric quantum mechanics")
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True

    def add(name, help_text, *options):
        p = sub.add_parser(name, parents=[common], help=help_text)
        for flags, kwargs in options:
            p.add_argument(*flags, default=S, **kwargs)
        return p

    sector = (("--sector",), {"choices": SECTORS})
    problem = (("--problem",), {"choices": PROBLEMS})
    m = (("--m",), {"type": int})
    g = (("--g",), {"type": float})
    n = (("--n",), {"type": int})
    levels = (("--levels",), {"type": int})
    x_min = (("--x-min",), {"type": float})
    x_max = (("--x-max",), {"type": float})
    energy = (("--E",), {"type": float})

    add("partner", "partner potentials of a superpotential family",
        (("--family",), {"choices": FAMILIES}), g, n,
        (("--L",), {"type": float}), (("--e2",), {"type": float}),
        (("--l",), {"type": int}), x_min, x_max)
    add("variational", "Rayleigh-Ritz levels", sector, problem, m, g,
        (("--sweep",), {"help": "basis sizes, e.g. 1..10"}),
        (("--coefficients",), {"action": "store_true"}))
    add("shoot", "Numerov shooting levels of x^4 -/+ 2|x|", sector, levels, g)
    add("lpt", "logarithmic perturbation theory", sector, problem,
        (("--order",), {"type": int}), (("--delta",), {"type": float}),
        x_max)
    add("scatter", "delta well and barrier scattering", sector, g, energy)
    add("hydrogen", "radial hydrogen levels from shape invariance",
        (("--l",), {"type": int}), (("--e2",), {"type": float}), levels)
    add("heun", "Frobenius series of the triconfluent Heun equation", g,
        energy, (("--a0",), {"type": float}), (("--a1",), {"type": float}),
        (("--j-max",), {"type": int}))
    add("superalgebra", "truncated SUSY oscillator checks",
        (("--n-max",), {"type": int}),
        (("--degeneracy",), {"action": "store_true"}))
    add("well", "infinite well partner check", (("--L",), {"type": float}),
        levels)
    add("levels", "level diagram data", sector, problem, m)
    add("wavefunctions", "wavefunction and residual columns", sector,
        problem, m, levels, x_max,
        (("--residual",), {"action": "store_true"}))
    return parser


def load_config(given, environ=None):
    """ RunConfig from the optional --config file overlaid with flags. """
    fname = given.pop("config", None)
    if fname:
        cfg = RunConfig.from_jsonfile(fname, environ)
    else:
        cfg = RunConfig(environ)
    for prop, value in given.items():
        cfg.set(prop, value)
    return cfg.validate()


def write_table(table, cfg):
    if cfg["output"]:
        with open(cfg["output"], "w", newline="", encoding="utf-8") as out:
            emit(table, cfg["format"], out)
        print_time("Results written to %s" % cfg["output"], color)
    else:
        emit(table, cfg["format"], sys.stdout)


def main(argv=None, environ=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return err.code
    given = {k.replace("_", "-"): v for k, v in vars(args).items()}
    try:
        cfg = load_config(given, environ)
        set_verbose(cfg["verbose"])
        print_time("Running %s" % cfg["command"], color)
        table = COMMAND_TABLE[cfg["command"]](cfg)
        table.config = cfg.as_dict()
        write_table(table, cfg)
    except ConfigError as err:
        print_error(str(err))
        return EXIT_USAGE
    except OSError as err:
        print_error(str(err))
        return EXIT_FAILURE
    except SusyError as err:
        print_error(str(err))
        return EXIT_FAILURE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
