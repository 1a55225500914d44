import numpy as np
from .numerics import DomainError
from .utility import *
color = "magenta"

ALGEBRA_TOL = 1e-12


class AlgebraViolation(SusyError):
    """ Raised when a super-algebra identity fails on the safe block.

    Attributes:
        entries (list): (identity, row, column, value) of each offending
            matrix entry.
    """
    def __init__(self, entries):
        shown = ", ".join("%s[%d,%d]=%.3e" % e for e in entries[:5])
        more = "" if len(entries) <= 5 else " (+%d more)" % (len(entries) - 5)
        super().__init__("super-algebra violated: " + shown + more)
        self.entries = entries


class FockOperators:
    """ Truncated SUSY oscillator on |n, m>, n < N_max, m in {0, 1}.

    The basis index of |n, m> is n + N_max*m.

    Attributes:
        N_max (int, required): Bosonic truncation, >= 2.
        a, adag, b, bdag, Q, Qdag, H (ndarray): (2 N_max) x (2 N_max)
            matrices.
    """
    def __init__(self, N_max):
        if int(N_max) != N_max or N_max < 2:
            raise DomainError("bosonic truncation must be >= 2")
        self.N_max = N = int(N_max)
        boson = np.diag(np.sqrt(np.arange(1, N, dtype=float)), 1)
        fermion = np.array([[0.0, 1.0], [0.0, 0.0]])
        self.a = np.kron(np.eye(2), boson)
        self.adag = self.a.T.copy()
        self.b = np.kron(fermion, np.eye(N))
        self.bdag = self.b.T.copy()
        self.H = self.adag @ self.a + self.bdag @ self.b
        self.Q = self.adag @ self.b
        self.Qdag = self.bdag @ self.a

    def index(self, n, m):
        return n + self.N_max * m

    def basis_vector(self, n, m):
        v = np.zeros(2 * self.N_max)
        v[self.index(n, m)] = 1.0
        return v

    def safe_indices(self):
        """ Indices with n <= N_max - 2, where a a^dag is faithful. """
        N = self.N_max
        return np.array([self.index(n, m) for m in (0, 1)
                         for n in range(N - 1)])

    def as_dict(self):
        return {"a": self.a, "adag": self.adag, "b": self.b,
                "bdag": self.bdag, "Q": self.Q, "Qdag": self.Qdag,
                "H": self.H}


def build_operators(N_max):
    ops = FockOperators(N_max)
    print_time("Built SUSY oscillator operators, N_max = %d" % N_max, color)
    return ops


class AlgebraReport:
    """ Maximum absolute deviation of each checked identity.

    Attributes:
        N_max (int): Truncation the report refers to.
        deviations (dict): identity name -> max |entry|.
    """
    def __init__(self, N_max):
        self.N_max = N_max
        self.deviations = {}

    @property
    def passed(self):
        return all(d <= ALGEBRA_TOL for d in self.deviations.values())

    def rows(self):
        return [(name, dev, dev <= ALGEBRA_TOL)
                for name, dev in self.deviations.items()]


def _anticommutator(x, y):
    return x @ y + y @ x


def _commutator(x, y):
    return x @ y - y @ x


def _identities(ops):
    eye = np.eye(2 * ops.N_max)
    safe = ops.safe_indices()
    block = np.ix_(safe, safe)
    every = np.ix_(np.arange(2 * ops.N_max), np.arange(2 * ops.N_max))
    return [
        ("{Q,Qdag}-H", _anticommutator(ops.Q, ops.Qdag) - ops.H, block),
        ("Q^2", ops.Q @ ops.Q, every),
        ("Qdag^2", ops.Qdag @ ops.Qdag, every),
        ("[Q,H]", _commutator(ops.Q, ops.H), block),
        ("[Qdag,H]", _commutator(ops.Qdag, ops.H), block),
        ("[a,adag]-1", _commutator(ops.a, ops.adag) - eye, block),
        ("{b,bdag}-1", _anticommutator(ops.b, ops.bdag) - eye, every),
        ("b^2", ops.b @ ops.b, every),
    ]


def check_superalgebra(N_max):
    """ Verifies the super-algebra on the truncation-safe block.

    Raises AlgebraViolation listing every entry above ALGEBRA_TOL.
    """
    if N_max < 3:
        raise DomainError("algebra checks need N_max >= 3")
    ops = build_operators(N_max)
    report = AlgebraReport(N_max)
    offending = []
    for name, matrix, region in _identities(ops):
        sub = matrix[region]
        report.deviations[name] = float(np.max(np.abs(sub)))
        rows, cols = np.nonzero(np.abs(sub) > ALGEBRA_TOL)
        for r, c in zip(rows, cols):
            offending.append((name, int(region[0][r, 0]),
                              int(region[1][0, c]), float(sub[r, c])))
    if offending:
        raise AlgebraViolation(offending)
    print_time("Super-algebra holds for N_max = %d" % N_max, color)
    return report


def number_operators(ops):
    """ Diagonals of a^dag a and b^dag b. """
    return (np.diag(ops.adag @ ops.a).copy(), np.diag(ops.bdag @ ops.b).copy())


def degeneracy_table(N_max):
    """ (level, multiplicity) for the levels fully inside the safe block. """
    ops = build_operators(N_max)
    safe = ops.safe_indices()
    energies = np.linalg.eigvalsh(ops.H[np.ix_(safe, safe)])
    levels = np.rint(energies).astype(int)
    return [(k, int(np.count_nonzero(levels == k)))
            for k in range(N_max - 1)]
