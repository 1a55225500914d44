import math
import numpy as np
from scipy.integrate import trapezoid
from .utility import *
color = "blue"

# Lanczos approximation, g = 7, nine terms
LANCZOS_G = 7
LANCZOS_COEFFS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)

# B_2k / (2k) for the digamma asymptotic series
DIGAMMA_ASYMPTOTIC = (
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
)

SIMPSON_MAX_DEPTH = 50
# offset in the substituted variable used to extrapolate to an endpoint
ENDPOINT_OFFSET = 1e-4
ROUNDOFF = 64 * np.finfo(float).eps
NUMEROV_OVERFLOW = 1e300


class DomainError(SusyError, ValueError):
    pass


class AccuracyError(SusyError):
    """ Raised when adaptive quadrature hits its depth limit.

    Attributes:
        estimate (float): Best estimate of the integral at the time
            the limit was reached.
    """
    def __init__(self, msg, estimate):
        super().__init__(msg + " (best estimate %.17g)" % estimate)
        self.estimate = estimate


class ConditioningError(SusyError):
    pass


class BracketError(SusyError, ValueError):
    pass


class DivergenceSignal(SusyError):
    """ Raised by the Numerov integrator when the solution overflows.

    Attributes:
        sign (int): Sign of the last finite sample.
        x (float): Abscissa at which the overflow was detected.
    """
    def __init__(self, sign, x):
        super().__init__("solution diverged (sign %+d) at x = %g" % (sign, x))
        self.sign = sign
        self.x = x


class Grid:
    """ Uniform grid on [x_min, x_max].

    If the interval contains the origin, x = 0 is a sample point and the
    grid is built outward from it, so the end points may fall up to one
    spacing short of the requested ones.

    Attributes:
        x_min (float, required): Left end of the interval.
        x_max (float, required): Right end of the interval.
        dx (float, required): Spacing, > 0.
    """
    def __init__(self, x_min, x_max, dx):
        if not dx > 0:
            raise DomainError("grid spacing must be positive, got %r" % dx)
        if not x_max > x_min:
            raise DomainError("empty grid interval [%g, %g]" % (x_min, x_max))
        self.dx = float(dx)
        eps = 1e-9
        if x_min < 0.0 < x_max:
            n_left = int(math.floor(-x_min / dx + eps))
            n_right = int(math.floor(x_max / dx + eps))
            self.x0 = -n_left * self.dx
            self.size = n_left + n_right + 1
        else:
            self.x0 = float(x_min)
            self.size = int(math.floor((x_max - x_min) / dx + eps)) + 1

    @property
    def points(self):
        return self.x0 + self.dx * np.arange(self.size)

    @property
    def x_end(self):
        return self.x0 + self.dx * (self.size - 1)

    def index_of(self, x):
        return int(round((x - self.x0) / self.dx))

    def __repr__(self):
        return "Grid(%g, %g, dx=%g)" % (self.x0, self.x_end, self.dx)


def uniform_grid(x_min, x_max, dx):
    return Grid(x_min, x_max, dx)


def sample(fn, xs):
    """ Evaluates fn on the array xs, vectorised when fn allows it. """
    xs = np.asarray(xs, dtype=float)
    try:
        values = np.asarray(fn(xs), dtype=float)
        if values.shape == xs.shape:
            return values
    except (TypeError, ValueError):
        pass
    return np.array([fn(float(x)) for x in xs], dtype=float)


class GridFunction:
    """ A real function sampled on a uniform grid.

    Attributes:
        x0 (float, required): Left end point.
        dx (float, required): Spacing, > 0.
        values (sequence of float, required): Samples, all finite.
    """
    def __init__(self, x0, dx, values):
        values = np.asarray(values, dtype=float)
        if values.ndim != 1 or values.size == 0:
            raise DomainError("grid function needs a non-empty 1-D sample")
        if not dx > 0:
            raise DomainError("grid spacing must be positive, got %r" % dx)
        if not np.all(np.isfinite(values)):
            raise DomainError("grid function samples must be finite")
        self.x0 = float(x0)
        self.dx = float(dx)
        self.values = values

    @staticmethod
    def from_function(fn, grid):
        return GridFunction(grid.x0, grid.dx, sample(fn, grid.points))

    @property
    def x(self):
        return self.x0 + self.dx * np.arange(self.values.size)

    @property
    def x_end(self):
        return self.x0 + self.dx * (self.values.size - 1)

    def __len__(self):
        return self.values.size

    def scaled(self, factor):
        return GridFunction(self.x0, self.dx, factor * self.values)

    def norm(self):
        """ dx-weighted trapezoid of |psi|^2. """
        return float(trapezoid(self.values ** 2, dx=self.dx))

    def normalized(self):
        n = self.norm()
        if not n > 0:
            raise DomainError("cannot normalize a vanishing grid function")
        return self.scaled(1.0 / math.sqrt(n))

    def _overlap(self, other):
        if abs(self.dx - other.dx) > 1e-12 * self.dx:
            raise DomainError("grid functions live on different spacings")
        shift = int(round((other.x0 - self.x0) / self.dx))
        lo = max(0, shift)
        hi = min(self.values.size, shift + other.values.size)
        if hi <= lo:
            raise DomainError("grid functions do not overlap")
        return self.values[lo:hi], other.values[lo - shift:hi - shift]

    def inner(self, other):
        """ Trapezoid inner product over the overlapping samples. """
        a, b = self._overlap(other)
        return float(trapezoid(a * b, dx=self.dx))

    def max_abs_difference(self, other):
        a, b = self._overlap(other)
        return float(np.max(np.abs(a - b)))

    def derivative(self):
        """ Central first difference, sampled on the interior grid. """
        v = self.values
        return GridFunction(self.x0 + self.dx, self.dx,
                            (v[2:] - v[:-2]) / (2.0 * self.dx))

    def second_derivative(self):
        v = self.values
        return GridFunction(self.x0 + self.dx, self.dx,
                            (v[2:] - 2.0 * v[1:-1] + v[:-2]) / self.dx ** 2)

    def interior(self):
        return GridFunction(self.x0 + self.dx, self.dx, self.values[1:-1])

    def restrict(self, x_lo, x_hi):
        xs = self.x
        mask = (xs >= x_lo - 1e-12) & (xs <= x_hi + 1e-12)
        idx = np.nonzero(mask)[0]
        if idx.size == 0:
            raise DomainError("restriction [%g, %g] is empty" % (x_lo, x_hi))
        return GridFunction(xs[idx[0]], self.dx, self.values[idx])

    def node_count(self, rel_floor=1e-10):
        """ Counts sign changes, ignoring samples below rel_floor*max. """
        v = self.values
        floor = rel_floor * float(np.max(np.abs(v)))
        signs = np.sign(v[np.abs(v) > floor])
        return int(np.count_nonzero(signs[1:] != signs[:-1]))

    def at(self, x):
        """ Linear interpolation at x. """
        return float(np.interp(x, self.x, self.values))


# ---------------------------------------------------------------- special

def gamma_fn(x):
    """ Gamma function for x > 0 (Lanczos, g = 7). """
    x = float(x)
    if not x > 0:
        raise DomainError("gamma_fn needs a positive argument, got %r" % x)
    if x < 0.5:
        # reflection keeps the series in its accurate range
        return math.pi / (math.sin(math.pi * x) * gamma_fn(1.0 - x))
    return math.exp(log_gamma(x))


def log_gamma(x):
    x = float(x)
    if not x > 0:
        raise DomainError("log_gamma needs a positive argument, got %r" % x)
    if x < 0.5:
        return (math.log(math.pi / math.sin(math.pi * x))
                - log_gamma(1.0 - x))
    z = x - 1.0
    acc = LANCZOS_COEFFS[0]
    for i in range(1, len(LANCZOS_COEFFS)):
        acc += LANCZOS_COEFFS[i] / (z + i)
    t = z + LANCZOS_G + 0.5
    return (0.5 * math.log(2.0 * math.pi) + (z + 0.5) * math.log(t) - t
            + math.log(acc))


def digamma(x):
    """ psi(x) = Gamma'(x)/Gamma(x) for x > 0. """
    x = float(x)
    if not x > 0:
        raise DomainError("digamma needs a positive argument, got %r" % x)
    shift = 0.0
    while x <= 6.0:
        shift -= 1.0 / x
        x += 1.0
    inv2 = 1.0 / (x * x)
    series = 0.0
    power = inv2
    for coeff in DIGAMMA_ASYMPTOTIC:
        series += coeff * power
        power *= inv2
    return shift + math.log(x) - 0.5 / x - series


# ---------------------------------------------------------------- quadrature

def _guarded(f):
    def g(x):
        try:
            v = f(x)
        except (OverflowError, ZeroDivisionError):
            return math.nan
        return float(v)
    return g


def _mapped(f, a, b):
    """ Returns (g, lo, hi) with int_a^b f = int_lo^hi g. """
    f = _guarded(f)
    a_inf = math.isinf(a)
    b_inf = math.isinf(b)
    if not a_inf and not b_inf:
        return f, a, b

    if a_inf and b_inf:
        origin, lo, hi = 0.0, -1.0, 1.0
    elif b_inf:
        origin, lo, hi = a, 0.0, 1.0
    else:
        origin, lo, hi = b, -1.0, 0.0

    def g(t):
        d = 1.0 - t * t
        if d <= 0.0:
            return 0.0
        x = origin + t / d
        v = f(x)
        if v == 0.0:
            return 0.0
        v *= (1.0 + t * t) / (d * d)
        if math.isnan(v) and abs(t) > 0.5:
            # far tail: the integrand has decayed below representability
            return 0.0
        return v
    return g, lo, hi


def _endpoint_regular(g, lo, hi):
    """ Splits off endpoint singularities with a quadratic substitution. """
    left_bad = not math.isfinite(g(lo))
    right_bad = not math.isfinite(g(hi))
    if left_bad and right_bad:
        mid = 0.5 * (lo + hi)
        return (_endpoint_regular(g, lo, mid)
                + _endpoint_regular(g, mid, hi))
    width = hi - lo
    if left_bad:
        return [(_extrapolated_at_zero(
            lambda s: g(lo + width * s * s) * 2.0 * width * s), 0.0, 1.0)]
    if right_bad:
        return [(_extrapolated_at_zero(
            lambda s: g(hi - width * s * s) * 2.0 * width * s), 0.0, 1.0)]
    return [(g, lo, hi)]


def _extrapolated_at_zero(h):
    """ h with h(0) replaced by the linear extrapolation 2h(d) - h(2d). """
    def wrapped(s):
        if s != 0.0:
            return h(s)
        limit = 2.0 * h(ENDPOINT_OFFSET) - h(2.0 * ENDPOINT_OFFSET)
        return limit if math.isfinite(limit) else 0.0
    return wrapped


def _simpson(g, lo, hi, tol, max_depth):
    """ Iterative adaptive Simpson; returns (estimate, converged). """
    mid = 0.5 * (lo + hi)
    f_lo, f_mid, f_hi = g(lo), g(mid), g(hi)
    whole = (hi - lo) / 6.0 * (f_lo + 4.0 * f_mid + f_hi)
    total = 0.0
    converged = True
    stack = [(lo, hi, f_lo, f_mid, f_hi, whole, tol, 0)]
    while stack:
        a, b, fa, fm, fb, s_ab, eps, depth = stack.pop()
        m = 0.5 * (a + b)
        lm = 0.5 * (a + m)
        rm = 0.5 * (m + b)
        flm = g(lm)
        frm = g(rm)
        s_left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
        s_right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
        delta = s_left + s_right - s_ab
        if not math.isfinite(delta):
            raise DomainError("integrand is not finite on [%g, %g]" % (a, b))
        # below the round-off floor further halving cannot help
        eps = max(eps, ROUNDOFF * abs(s_left + s_right))
        if abs(delta) <= 15.0 * eps or depth >= max_depth:
            if depth >= max_depth and abs(delta) > 15.0 * eps:
                converged = False
            total += s_left + s_right + delta / 15.0
            continue
        stack.append((m, b, fm, frm, fb, s_right, 0.5 * eps, depth + 1))
        stack.append((a, m, fa, flm, fm, s_left, 0.5 * eps, depth + 1))
    return total, converged


def _scale_estimate(g, lo, hi, panels=32):
    ts = np.linspace(lo, hi, panels + 1)
    vals = np.array([g(t) for t in ts])
    vals[~np.isfinite(vals)] = 0.0
    return abs(float(trapezoid(vals, ts)))


def integrate(f, a, b, tol=1e-10, points=(), max_depth=SIMPSON_MAX_DEPTH):
    """ Adaptive Simpson quadrature of f over [a, b].

    Infinite limits are mapped through x = t/(1 - t^2). Integrable
    singularities at finite end points are removed by a quadratic change
    of variable. ``points`` lists interior break points (kinks,
    logarithmic singularities) at which the interval is split.

    The accepted error is tol * max(1, |integral|).
    """
    if not tol > 0:
        raise DomainError("quadrature tolerance must be positive")
    if a == b:
        return 0.0
    if a > b:
        return -integrate(f, b, a, tol, points, max_depth)
    cuts = [p for p in sorted(points) if a < p < b]
    if cuts:
        edges = [a] + cuts + [b]
        return sum(integrate(f, lo, hi, tol / (len(cuts) + 1), (), max_depth)
                   for lo, hi in zip(edges[:-1], edges[1:]))

    g, lo, hi = _mapped(f, a, b)
    pieces = _endpoint_regular(g, lo, hi)
    estimate = 0.0
    converged = True
    for h, p_lo, p_hi in pieces:
        scale = max(1.0, _scale_estimate(h, p_lo, p_hi))
        value, ok = _simpson(h, p_lo, p_hi, tol * scale / len(pieces),
                             max_depth)
        estimate += value
        converged = converged and ok
    if not converged:
        raise AccuracyError("quadrature on [%g, %g] did not converge" % (a, b),
                            estimate)
    return estimate


# ---------------------------------------------------------------- pencil

class MatrixPencil:
    """ Symmetric pencil (S, H) of the generalized problem H a = E S a.

    Attributes:
        S (array, required): m x m overlap matrix, symmetric positive
            definite.
        H (array, required): m x m Hamiltonian matrix, symmetric.
    """
    def __init__(self, S, H):
        S = np.array(S, dtype=float)
        H = np.array(H, dtype=float)
        if S.ndim != 2 or S.shape[0] != S.shape[1] or S.shape != H.shape:
            raise DomainError("pencil matrices must be square and of equal "
                              "size, got %s and %s" % (S.shape, H.shape))
        if S.shape[0] < 1:
            raise DomainError("pencil size must be at least 1")
        for name, M in (("S", S), ("H", H)):
            scale = max(1.0, float(np.max(np.abs(M))))
            if np.max(np.abs(M - M.T)) > 1e-12 * scale:
                raise DomainError(name + " is not symmetric")
        self.S = 0.5 * (S + S.T)
        self.H = 0.5 * (H + H.T)

    @property
    def size(self):
        return self.S.shape[0]


def cholesky_lower(S):
    n = S.shape[0]
    L = np.zeros_like(S)
    for j in range(n):
        d = S[j, j] - np.dot(L[j, :j], L[j, :j])
        if not d > 0:
            raise ConditioningError("overlap matrix is not positive definite "
                                    "(pivot %d = %.3e)" % (j, d))
        L[j, j] = math.sqrt(d)
        L[j + 1:, j] = (S[j + 1:, j] - L[j + 1:, :j] @ L[j, :j]) / L[j, j]
    return L


def _forward_substitution(L, B):
    Y = np.zeros_like(B)
    for i in range(L.shape[0]):
        Y[i] = (B[i] - L[i, :i] @ Y[:i]) / L[i, i]
    return Y


def _back_substitution(U, B):
    n = U.shape[0]
    X = np.zeros_like(B)
    for i in range(n - 1, -1, -1):
        X[i] = (B[i] - U[i, i + 1:] @ X[i + 1:]) / U[i, i]
    return X


def jacobi_eigh(A, tol=1e-14, max_sweeps=100):
    """ Cyclic Jacobi eigensolver for a symmetric matrix.

    Exactly-zero off-diagonal entries are never rotated, so block
    structure (e.g. parity) survives into the eigenvectors.
    """
    A = np.array(A, dtype=float, copy=True)
    n = A.shape[0]
    V = np.eye(n)
    scale = max(1.0, float(np.max(np.abs(A))))
    for sweep in range(max_sweeps):
        off = math.sqrt(2.0 * float(np.sum(np.triu(A, 1) ** 2)))
        if off <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if apq == 0.0:
                    continue
                if abs(apq) <= 1e-300:
                    A[p, q] = A[q, p] = 0.0
                    continue
                tau = (A[q, q] - A[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, tau) / (abs(tau) + math.hypot(1.0, tau))
                c = 1.0 / math.hypot(1.0, t)
                s = t * c
                col_p = A[:, p].copy()
                col_q = A[:, q].copy()
                A[:, p] = c * col_p - s * col_q
                A[:, q] = s * col_p + c * col_q
                row_p = A[p, :].copy()
                row_q = A[q, :].copy()
                A[p, :] = c * row_p - s * row_q
                A[q, :] = s * row_p + c * row_q
                A[p, q] = A[q, p] = 0.0
                vp = V[:, p].copy()
                vq = V[:, q].copy()
                V[:, p] = c * vp - s * vq
                V[:, q] = s * vp + c * vq
    else:
        raise ConditioningError("Jacobi sweeps did not converge")
    print_time("Jacobi converged after %d sweeps" % sweep, color)
    return np.diag(A).copy(), V


def solve_pencil(p):
    """ Solves H a = E S a by Cholesky reduction and Jacobi rotations.

    Returns a list of (eigenvalue, coefficient vector) pairs in ascending
    order; each vector satisfies a^T S a = 1.
    """
    L = cholesky_lower(p.S)
    C = _forward_substitution(L, p.H)
    C = _forward_substitution(L, C.T).T
    C = 0.5 * (C + C.T)
    values, Y = jacobi_eigh(C)
    vectors = _back_substitution(L.T, Y)
    pairs = []
    for i in np.argsort(values, kind="stable"):
        alpha = vectors[:, i]
        alpha = alpha / math.sqrt(float(alpha @ p.S @ alpha))
        pairs.append((float(values[i]), alpha))
    return pairs


# ---------------------------------------------------------------- Numerov

def numerov_integrate(V, E, grid, psi_start, dpsi_start,
                      overflow=NUMEROV_OVERFLOW):
    """ Integrates -psi'' + (V - E) psi = 0 across the grid.

    The second sample comes from a third-order Taylor step, which stays
    accurate when V has a kink at the starting point.
    """
    h = grid.dx
    xs = grid.points
    q = E - sample(V, xs)
    if not np.all(np.isfinite(q)):
        raise DomainError("potential is not finite on the grid")
    # one-sided slope of V at the start
    dV = -(q[1] - q[0]) / h
    u0 = -q[0]
    psi1 = (psi_start + h * dpsi_start + 0.5 * h * h * u0 * psi_start
            + h ** 3 / 6.0 * (dV * psi_start + u0 * dpsi_start))
    f = (1.0 + h * h * q / 12.0).tolist()
    psi = [0.0] * len(f)
    psi[0] = float(psi_start)
    psi[1] = float(psi1)
    for i in range(1, len(f) - 1):
        nxt = ((12.0 - 10.0 * f[i]) * psi[i] - f[i - 1] * psi[i - 1]) / f[i + 1]
        if not abs(nxt) < overflow:
            last = psi[i] if math.isfinite(psi[i]) else psi[i - 1]
            raise DivergenceSignal(1 if last >= 0 else -1, float(xs[i + 1]))
        psi[i + 1] = nxt
    return GridFunction(grid.x0, h, psi)


def bisect(f, lo, hi, tol=1e-6, max_iter=200):
    """ Bisection on a sign-valued function; returns the final midpoint. """
    s_lo = np.sign(f(lo))
    s_hi = np.sign(f(hi))
    if s_lo == 0:
        return float(lo)
    if s_hi == 0:
        return float(hi)
    if s_lo == s_hi:
        raise BracketError("no sign change on [%g, %g]" % (lo, hi))
    for _ in range(max_iter):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        s_mid = np.sign(f(mid))
        if s_mid == 0:
            return float(mid)
        if s_mid == s_lo:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
