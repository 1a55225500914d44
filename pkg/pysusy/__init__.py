from .utility import (SusyError, Sector, Parity, print_time, set_verbose,
                      is_verbose)
from .numerics import (Grid, GridFunction, MatrixPencil, DomainError,
                       AccuracyError, ConditioningError, BracketError,
                       DivergenceSignal, uniform_grid, gamma_fn, log_gamma,
                       digamma, integrate, solve_pencil, numerov_integrate,
                       bisect)
from .susyCore import (Superpotential, OddMonomial, SignMonomial,
                       EvenMonomial, CoulombRadial, WellCotangent, Tabulated,
                       PartnerPair, DeltaSpike, SusyStatus, SusyState,
                       SusyBrokenError, partner_potentials, susy_status,
                       ground_state, apply_A, apply_Adag, odd_monomial_norm,
                       energy_scaling)
from .superalgebra import (FockOperators, AlgebraReport, AlgebraViolation,
                           build_operators, check_superalgebra,
                           degeneracy_table)
from .hierarchy import (HierarchyChain, HierarchyMember, ShapeInvariantModel,
                        sho_chain, chain_from_superpotential, chain_energies,
                        hydrogen_model, check_shape_invariance,
                        shape_invariant_spectrum, hydrogen_levels,
                        hydrogen_wavefunction, infinite_well_partner)
from .variational import (BasisSpec, Envelope, VariationalResult,
                          build_pencil_eps_x2, build_pencil_quadrature,
                          solve_variational, eps_x2_levels, quartic_levels)
from .lpt import EpsX2, Quartic, DeltaExpansion, expand, energy_at
from .shooting import ShootingProblem, find_level, divergence_sign
from .scattering import ScatteringSolution, scatter, bound_state
from .heunSeries import FrobeniusSeries, heun_parameters, truncation_scan
from .runConfig import RunConfig, ConfigError
from .emitters import Table, emit
