"""Numerical checks of the amortized decay analysis.

The recursion's error contracts in the potential ``phi(x) = ln ln(1 + x)``.
This module evaluates the per-step decay rate ``kappa`` and its symmetrized
single-variable bound ``kappa_hat``, maximizes the latter case by case
(number of light and heavy second-layer vertices), and spot-checks the
intermediate inequalities by sampling.  Nothing here is a proof; it is a
smoke alarm for transcription errors and for parameter choices that break
the argument.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import DomainError, VerificationFailure

ALPHA = 0.9616
M = 45
X_LO = 1 / 16
X_HI = 1.0
S_HAT_MAX = 1 - 1e-9

GOLDEN = (math.sqrt(5) - 1) / 2


@dataclass(frozen=True)
class DecayParams:
    alpha: float = ALPHA
    M: int = M
    x_lo: float = X_LO
    x_hi: float = X_HI

    def __post_init__(self):
        if not 0 < self.alpha < 1:
            raise DomainError(f"alpha must lie in (0, 1), got {self.alpha}")
        if self.M < 2:
            raise DomainError(f"M must be at least 2, got {self.M}")
        if not 0 < self.x_lo < self.x_hi:
            raise DomainError("need 0 < x_lo < x_hi")


@dataclass(frozen=True)
class KappaPoint:
    """One configuration of a two-layer step, in the collapsed ``s`` variables.

    ``s_values[i]`` is ``(1 + prod_j (1 + x_ij)^-1)^-1`` for first-layer
    neighbour ``i`` and ``w_values[i]`` its second-layer degree.
    """

    d1: int
    d2: int
    s_values: tuple[float, ...]
    w_values: tuple[int, ...]


@dataclass
class DecayReport:
    check: str
    max_value: float
    bound: float
    bound_satisfied: bool
    case_id: tuple[int, int] | None = None
    s_star: float | None = None
    grid_points: int | None = None
    witness: object = None
    detail: str = ""

    def __post_init__(self):
        self.max_value = float(self.max_value)
        self.bound = float(self.bound)
        self.bound_satisfied = bool(self.bound_satisfied)
        if self.s_star is not None:
            self.s_star = float(self.s_star)

    def row(self) -> str:
        case = "" if self.case_id is None else f"({self.case_id[0]},{self.case_id[1]})"
        s = "" if self.s_star is None else f"{self.s_star:.6f}"
        status = "PASS" if self.bound_satisfied else "FAIL"
        return (f"{status:4}  {self.check:<22} {case:<6} s*={s:<9} "
                f"max={self.max_value:.6g} bound={self.bound:.6g}  {self.detail}")


# ---------------------------------------------------------------- potential

def _check_positive(x):
    if np.any(np.asarray(x) <= 0):
        raise DomainError("phi/Phi are defined for x > 0 only")


def phi(x):
    """``ln(ln(1 + x))``; strictly increasing on ``x > 0``."""
    _check_positive(x)
    return np.log(np.log1p(x)) if isinstance(x, np.ndarray) else math.log(math.log1p(x))


def Phi(x):
    """Derivative of :func:`phi`: ``1 / ((1 + x) ln(1 + x))``."""
    _check_positive(x)
    if isinstance(x, np.ndarray):
        return 1 / ((1 + x) * np.log1p(x))
    return 1 / ((1 + x) * math.log1p(x))


def phi_inv(y):
    if isinstance(y, np.ndarray):
        return np.expm1(np.exp(y))
    return math.expm1(math.exp(y))


def phi_inv_derivative(y):
    """``d phi^{-1}/dy = (1 + x) ln(1 + x)`` with ``x = phi^{-1}(y)``."""
    x = phi_inv(y)
    if isinstance(x, np.ndarray):
        return (1 + x) * np.log1p(x)
    return (1 + x) * math.log1p(x)


# ---------------------------------------------------------------- depth rule

def ceil_log(x: int, base: int) -> int:
    """Smallest ``k >= 0`` with ``base**k >= x``, in exact integer arithmetic."""
    if x < 1:
        raise DomainError(f"ceil_log needs x >= 1, got {x}")
    k, p = 0, 1
    while p < x:
        p *= base
        k += 1
    return k


def depth_cost(w: int, base: int = M) -> int:
    """Budget consumed by stepping through a second-layer vertex of degree ``w``."""
    return ceil_log(w + 1, base)


def alpha_weight(w: int, params: DecayParams = DecayParams()) -> float:
    """``alpha ** -ceil(log_M(w + 1))``."""
    return params.alpha ** -depth_cost(w, params.M)


def alpha_weight_bound(w: int, params: DecayParams = DecayParams()) -> float:
    """Real-valued upper bound ``alpha ** (-log_M(w + 1) - 1)``."""
    return params.alpha ** (-math.log(w + 1, params.M) - 1)


# ---------------------------------------------------------------- decay rates

def s_from_x(x_row: Sequence[float]) -> float:
    """``(1 + prod_j (1 + x_j)^-1)^-1``; an empty row gives 1/2."""
    p = 1.0
    for x in x_row:
        p /= 1 + x
    return 1 / (1 + p)


def _tail_term(s):
    """``(1 - s) ln(s / (1 - s))``."""
    if isinstance(s, np.ndarray):
        return (1 - s) * np.log(s / (1 - s))
    return (1 - s) * math.log(s / (1 - s))


def h_prefactor(h):
    """``h / ((1 + h) ln(1 + h))``, decreasing in ``h`` and at most 1 on (0, 1]."""
    if isinstance(h, np.ndarray):
        return h / ((1 + h) * np.log1p(h))
    return h / ((1 + h) * math.log1p(h))


def kappa(point: KappaPoint, params: DecayParams = DecayParams()) -> float:
    """Collapsed single-layer decay rate for one configuration."""
    s = point.s_values
    if len(s) != len(point.w_values):
        raise DomainError("s_values and w_values must have the same length")
    if any(not 0 < si < 1 for si in s):
        raise DomainError(f"every s_i must lie in (0, 1), got {s}")
    h = math.prod(s)
    total = math.fsum(alpha_weight(w, params) * _tail_term(si) for si, w in zip(s, point.w_values))
    return h_prefactor(h) * total


def kappa_from_x(x_rows: Sequence[Sequence[float]], params: DecayParams = DecayParams()) -> float:
    """The two-layer decay rate straight from its definition.

    ``sum_ij |dh/dx_ij| * Phi(h) / Phi(x_ij) * alpha_i``, with the partial
    derivatives of ``h(x) = prod_i (1 + prod_j (1 + x_ij)^-1)^-1`` written out
    by hand.  Used to cross-check :func:`kappa`.
    """
    s = [s_from_x(row) for row in x_rows]
    h = math.prod(s)
    total = 0.0
    for row, si in zip(x_rows, s):
        a = alpha_weight(len(row), params)
        p = 1 / si - 1  # prod_j (1 + x_ij)^-1
        for x in row:
            # dh/dx_ij = h * s_i * p / (1 + x_ij)
            dh = h * si * p / (1 + x)
            total += dh * Phi(h) / Phi(x) * a
    return total


def kappa_hat(d1: int, d2: int, s_hat, params: DecayParams = DecayParams()):
    """Symmetrized decay-rate bound for ``d1`` light and ``d2`` heavy neighbours.

    Accepts a float or an array of ``s_hat`` values in ``[1/2, 1)``.
    """
    s = np.asarray(s_hat, dtype=float)
    if np.any(s < 0.5) or np.any(s >= 1):
        raise DomainError("s_hat must lie in [1/2, 1)")
    t = s ** d1
    num = t * d1 * (1 - s) * np.log(s / (1 - s))
    den = params.alpha * (2.0 ** d2 + t) * np.log1p(2.0 ** -d2 * t)
    out = num / den + d2 / 5
    return float(out) if out.ndim == 0 else out


def gamma(w, params: DecayParams = DecayParams()):
    """Bound on a heavy neighbour's contribution, ``w (16/17)^w ln(17/16) alpha^(-log_M(w+1)-1)``."""
    w = np.asarray(w, dtype=float)
    out = w * (16 / 17) ** w * math.log(17 / 16) * params.alpha ** (-np.log(w + 1) / math.log(params.M) - 1)
    return float(out) if out.ndim == 0 else out


def log_gamma(w, params: DecayParams = DecayParams()):
    """Natural log of :func:`gamma`; stays finite where ``gamma`` underflows."""
    w = np.asarray(w, dtype=float)
    out = (np.log(w) + w * math.log(16 / 17) + math.log(math.log(17 / 16))
           - (np.log(w + 1) / math.log(params.M) + 1) * math.log(params.alpha))
    return float(out) if out.ndim == 0 else out


def tail_max_term(s_hat):
    """``f(s) = (1 - s) ln(s / (1 - s))``, the per-neighbour factor in ``kappa``."""
    return _tail_term(np.asarray(s_hat, dtype=float)) if not np.isscalar(s_hat) else _tail_term(s_hat)


# ---------------------------------------------------------------- maximization

def golden_section_max(f: Callable[[float], float], a: float, b: float, tol: float = 1e-10,
                       max_iter: int = 200) -> tuple[float, float]:
    """Maximize a unimodal ``f`` on ``[a, b]``; returns ``(x*, f(x*))``."""
    x1 = b - GOLDEN * (b - a)
    x2 = a + GOLDEN * (b - a)
    f1, f2 = f(x1), f(x2)
    for _ in range(max_iter):
        if b - a <= tol:
            break
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + GOLDEN * (b - a)
            f2 = f(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - GOLDEN * (b - a)
            f1 = f(x1)
    x = (a + b) / 2
    return x, f(x)


def grid_then_golden(f_vec: Callable, f_scalar: Callable, lo: float, hi: float,
                     grid_points: int = 100_000, tol: float = 1e-10) -> tuple[float, float]:
    """Locate the global maximum by a uniform grid, then refine the best cell."""
    grid = np.linspace(lo, hi, grid_points)
    vals = f_vec(grid)
    k = int(np.argmax(vals))
    a = grid[max(k - 1, 0)]
    b = grid[min(k + 1, grid_points - 1)]
    x, fx = golden_section_max(f_scalar, a, b, tol=tol)
    if vals[k] > fx:  # flat function or maximum on the boundary
        return float(grid[k]), float(vals[k])
    return x, fx


def maximize_kappa_hat(d1: int, d2: int, params: DecayParams = DecayParams(),
                       grid_points: int = 100_000) -> DecayReport:
    """Maximize ``kappa_hat`` over ``[1/2, 1 - 1e-9]`` for one ``(d1, d2)`` case.

    The bound is 1 for ``d1 + d2 = 4`` and 3 for ``d1 + d2 = 5``.
    """
    if d1 < 0 or d2 < 0 or d1 + d2 not in (4, 5):
        raise DomainError(f"cases need d1 + d2 in {{4, 5}}, got ({d1}, {d2})")
    s_star, value = grid_then_golden(
        lambda s: kappa_hat(d1, d2, s, params),
        lambda s: kappa_hat(d1, d2, s, params),
        0.5, S_HAT_MAX, grid_points,
    )
    bound = 1.0 if d1 + d2 == 4 else 3.0
    return DecayReport(
        check=f"kappa_hat_{d1 + d2}", case_id=(d1, d2), s_star=s_star, max_value=value,
        bound=bound, bound_satisfied=value < bound, grid_points=grid_points,
    )


# ---------------------------------------------------------------- sampling

def sample_kappa_points(rng: np.random.Generator, size: int, d: int, d2: int,
                        params: DecayParams = DecayParams(), w_max: int = 10**6):
    """Draw ``size`` legal configurations with ``d2`` heavy neighbours among ``d``.

    Returns ``(q, w)`` arrays of shape ``(size, d)`` where ``q = 1 - s``
    (kept explicitly because ``s`` rounds to 1 for heavy neighbours).  Each
    ``q_i`` is drawn below its largest legal value
    ``(16/17)^w / (1 + (16/17)^w)``, half uniformly and half log-uniformly
    over twelve decades.
    """
    d1 = d - d2
    w_light = rng.integers(0, params.M, size=(size, d1))
    log_heavy = rng.uniform(math.log(params.M), math.log(w_max), size=(size, d2))
    w_heavy = np.floor(np.exp(log_heavy)).astype(np.int64)
    w = np.concatenate([w_light, w_heavy], axis=1)
    r = (16 / 17) ** w.astype(float)
    q_max = r / (1 + r)
    u = rng.uniform(0, 1, size=(size, d))
    log_u = 10.0 ** rng.uniform(-12, 0, size=(size, d))
    frac = np.where(rng.uniform(size=(size, d)) < 0.5, 1 - u, log_u)  # 1-u lies in (0, 1]
    q = q_max * frac
    # an isolated second-layer vertex forces s = 1/2 exactly
    q = np.where(w == 0, 0.5, q)
    return q, w


def kappa_from_q(q: np.ndarray, w: np.ndarray, params: DecayParams = DecayParams()) -> np.ndarray:
    """Vectorized :func:`kappa` in terms of ``q = 1 - s`` (rows are points)."""
    s = 1 - q
    log_h = np.sum(np.log1p(-q), axis=1)
    h = np.exp(log_h)
    cost = np.zeros(w.shape, dtype=float)
    # vectorized exact ceil(log_M(w + 1)); w + 1 <= 10**6 + 1 needs few powers
    power = np.ones(w.shape, dtype=np.int64)
    while True:
        short = power < w + 1
        if not short.any():
            break
        cost += short
        power = np.where(short, power * params.M, power)
    weights = params.alpha ** -cost
    # q underflows to 0 for very heavy neighbours, where the term's limit is 0
    safe = np.where(q > 0, q, 0.5)
    terms = np.where(q > 0, weights * safe * (np.log1p(-q) - np.log(safe)), 0.0)
    return h_prefactor(h) * terms.sum(axis=1)


# ---------------------------------------------------------------- the suite

def _fail(report: DecayReport, raise_on_failure: bool):
    if raise_on_failure and not report.bound_satisfied:
        raise VerificationFailure(report.check, report.witness if report.witness is not None
                                  else report.case_id, report.detail or report.row())


def verify_claims(params: DecayParams = DecayParams(), samples: int = 10**6, seed: int = 0,
                  grid_points: int = 100_000, raise_on_failure: bool = True) -> list[DecayReport]:
    """Run every numerical check of the decay analysis.

    With ``raise_on_failure`` the first violated check raises
    :class:`VerificationFailure`; otherwise all reports are returned and the
    caller inspects ``bound_satisfied``.
    """
    reports: list[DecayReport] = []

    def add(rep: DecayReport):
        reports.append(rep)
        _fail(rep, raise_on_failure)

    # potential: base-case spread and the slope of phi^{-1}
    spread = phi(1.0) - phi(1 / 32)
    add(DecayReport("base_spread", spread, 4.0, spread < 4,
                    detail="phi(1) - phi(1/32)"))
    ys = np.linspace(phi(1 / 32), phi(1.0), 10_001)
    slope = float(np.max(phi_inv_derivative(ys)))
    add(DecayReport("phi_inv_slope", slope, 2 * math.log(2), slope <= 2 * math.log(2) * (1 + 1e-12),
                    detail="max d(phi^-1)/dy on [phi(1/32), phi(1)]"))

    # (a) every split of d = 4, and the d = 5 splits against the looser bound
    maxima: dict[tuple[int, int], float] = {}
    for d in (4, 5):
        for d2 in range(d + 1):
            rep = maximize_kappa_hat(d - d2, d2, params, grid_points)
            maxima[(d - d2, d2)] = rep.max_value
            add(rep)

    # monotonicity of kappa_hat in d1 and d2 at fixed s_hat
    grid = np.linspace(0.5, S_HAT_MAX, 2001)
    worst = 0.0
    where = None
    for d1 in range(6):
        for d2 in range(6 - d1):
            base = kappa_hat(d1, d2, grid, params)
            for a, b in ((d1 + 1, d2), (d1, d2 + 1)):
                if a + b <= 5:
                    gap = float(np.max(base - kappa_hat(a, b, grid, params)))
                    if gap > worst:
                        worst, where = gap, ((d1, d2), (a, b))
    add(DecayReport("kappa_hat_monotone", worst, 1e-12, worst <= 1e-12, witness=where,
                    detail="max decrease when d1 or d2 grows"))

    # (b) all-light bound for the root step
    s_f, f_max = grid_then_golden(tail_max_term, tail_max_term, 0.5, S_HAT_MAX, grid_points)
    add(DecayReport("tail_max", f_max, 0.3, f_max < 0.3, s_star=s_f,
                    grid_points=grid_points, detail="max (1-s) ln(s/(1-s))"))
    k5 = 5 * f_max / params.alpha + 1
    add(DecayReport("kappa_5_bound", k5, 3.0, k5 < 3, s_star=s_f,
                    detail="5 f(s*)/alpha + 1"))

    # heavy neighbours: gamma(45) and its monotone decrease
    g45 = gamma(params.M, params)
    add(DecayReport("gamma_at_M", g45, 0.2, g45 < 0.2, detail=f"gamma({params.M})"))
    ws = np.unique(np.round(np.logspace(math.log10(params.M), 6, 4000)).astype(np.int64))
    gs = log_gamma(ws, params)
    rises = np.nonzero(np.diff(gs) >= 0)[0]
    add(DecayReport("gamma_decreasing", float(np.max(np.diff(gs))), 0.0, rises.size == 0,
                    witness=None if rises.size == 0 else int(ws[rises[0]]),
                    detail=f"{ws.size} sampled w in [{params.M}, 1e6], log scale"))
    ceil_gap = max(alpha_weight(w, params) / alpha_weight_bound(w, params) for w in range(1, 100_000))
    add(DecayReport("ceil_weight_bound", ceil_gap, 1.0, ceil_gap <= 1 + 1e-12,
                    detail="alpha^-ceil(log_M(w+1)) / alpha^(-log_M(w+1)-1)"))
    # heavy term bounded by gamma, checked where the s lower bound is tight
    w_heavy = np.arange(params.M, 5000)
    r = (16 / 17) ** w_heavy.astype(float)
    q_lo = r / (1 + r)
    heavy = np.array([alpha_weight(int(w), params) for w in w_heavy]) * q_lo * np.log((1 - q_lo) / q_lo)
    excess = float(np.max(heavy - gamma(w_heavy, params)))
    add(DecayReport("heavy_term_le_gamma", excess, 0.0, excess <= 1e-15,
                    detail="max heavy term minus gamma(w), w in [M, 5000)"))

    # (c) lower bound on s_i from x_ij >= 1/16
    rng = np.random.default_rng(seed)
    n9 = 20_000
    w9 = rng.integers(1, 201, size=n9)
    worst9 = -math.inf
    witness9 = None
    for k in range(n9):
        x = rng.uniform(params.x_lo, params.x_hi, size=w9[k])
        log_p = -float(np.sum(np.log1p(x)))  # ln prod (1+x)^-1
        slack = log_p - w9[k] * math.log(16 / 17)  # must be <= 0
        if slack > worst9:
            worst9, witness9 = slack, (int(w9[k]), x.tolist())
        if not math.isfinite(log_p):
            worst9, witness9 = math.inf, (int(w9[k]), x.tolist())
            break
    add(DecayReport("s_lower_bound", worst9, 0.0, worst9 <= 1e-12,
                    witness=None if worst9 <= 1e-12 else witness9,
                    detail=f"{n9} samples, w <= 200"))

    # (d) sampled kappa never beats the symmetrized maximum of its case
    per_case = max(1, samples // 20)
    worst_d = -math.inf
    worst_abs = {4: -math.inf, 5: -math.inf}
    witness_d = None
    for d in range(1, 6):
        for d2 in range(d + 1):
            d1 = d - d2
            q, w = sample_kappa_points(rng, per_case, d, d2, params)
            kap = kappa_from_q(q, w, params)
            ref = _case_max(d1, d2, params, maxima, grid_points)
            gap = kap - ref
            k = int(np.argmax(gap))
            if gap[k] > worst_d:
                worst_d = float(gap[k])
                witness_d = KappaPoint(d1, d2, tuple((1 - q[k]).tolist()), tuple(w[k].tolist()))
            bucket = 4 if d <= 4 else 5
            worst_abs[bucket] = max(worst_abs[bucket], float(np.max(kap)))
    add(DecayReport("kappa_le_kappa_hat", worst_d, 1e-9, worst_d <= 1e-9,
                    witness=None if worst_d <= 1e-9 else witness_d,
                    detail=f"{per_case * 20} sampled points, max kappa - max kappa_hat"))
    add(DecayReport("kappa_d_le_1", worst_abs[4], 1.0, worst_abs[4] <= 1.0,
                    detail="sampled d <= 4"))
    add(DecayReport("kappa_5_lt_3", worst_abs[5], 3.0, worst_abs[5] < 3.0,
                    detail="sampled d = 5"))

    # (e) concavity of (1 - e^x)(x - ln(1 - e^x)) on [-ln 2, 0)
    xs = np.linspace(-math.log(2), -1e-4, 20_001)
    step = xs[1] - xs[0]
    fx = _jensen_f(xs)
    second = (fx[2:] - 2 * fx[1:-1] + fx[:-2]) / step ** 2
    closed = _jensen_f2(xs)
    add(DecayReport("jensen_concavity", float(np.max(second)), 0.0,
                    bool(np.max(second) <= 1e-6 and np.max(closed) <= 0),
                    detail="max second difference on [-ln 2, -1e-4]"))

    # (f) h / ((1 + h) ln(1 + h)) <= 1 on (0, 1]
    hs = np.linspace(1e-6, 1.0, 100_001)
    hmax = float(np.max(h_prefactor(hs)))
    mono = bool(np.all(np.diff(h_prefactor(hs)) < 0))
    add(DecayReport("h_prefactor_le_1", hmax, 1.0, hmax <= 1.0 and mono,
                    detail="and strictly decreasing on the grid"))

    return reports


def _case_max(d1, d2, params, cache, grid_points):
    if (d1, d2) not in cache:
        if d1 == 0:
            cache[(d1, d2)] = d2 / 5
        else:
            s, v = grid_then_golden(lambda s: kappa_hat(d1, d2, s, params),
                                    lambda s: kappa_hat(d1, d2, s, params),
                                    0.5, S_HAT_MAX, grid_points)
            cache[(d1, d2)] = v
    return cache[(d1, d2)]


def _jensen_f(x):
    e = np.exp(x)
    return (1 - e) * (x - np.log1p(-e))


def _jensen_f2(x):
    e = np.exp(x)
    return -e * (1 + (1 - e) * np.log(e / (1 - e))) / (1 - e)


def all_passed(reports: Sequence[DecayReport]) -> bool:
    return all(r.bound_satisfied for r in reports)
