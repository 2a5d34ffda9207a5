"""Numerical falsification harness.

Tries to *find* minimal translation surfaces by damped least squares
(Levenberg-Marquardt) over a cubic-spline ansatz for (f, g), with a
smoothing-penalty continuation: early stages add a ramped-down penalty on
f'' and g'' so rough random seeds are pulled into the smooth basin before
the unregularized final stage.  For type II the optimizer collapses onto
the geodesic-plane family; for type I a positive residual floor remains.
A Euclidean control objective (which does have solutions) demonstrates
that the harness finds them when they exist.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np
from scipy.integrate import solve_ivp
from scipy.interpolate import BSpline

from . import surfaces
from .algebra import build_named
from .surfaces import Kind, TranslationSurface


class InfeasibleSeedError(ValueError):
    """Type-I seed violates the positivity floor f+g >= zFloor."""


class NonFiniteResidualError(FloatingPointError):
    """The optimizer produced a non-finite residual."""


# -- spline ansatz -----------------------------------------------------


def clamped_knots(domain: tuple[float, float], n_interior: int, degree: int = 3) -> np.ndarray:
    lo, hi = domain
    inner = np.linspace(lo, hi, n_interior + 2)
    return np.concatenate([[lo] * degree, inner, [hi] * degree])


def n_coeffs(n_interior: int, degree: int = 3) -> int:
    return n_interior + degree + 1


@dataclass(frozen=True)
class SplineAnsatz:
    kind: Kind
    f_coeffs: np.ndarray
    g_coeffs: np.ndarray
    f_domain: tuple[float, float]
    g_domain: tuple[float, float]
    n_interior: int = 12
    degree: int = 3

    def f_spline(self) -> BSpline:
        return BSpline(clamped_knots(self.f_domain, self.n_interior, self.degree), self.f_coeffs, self.degree)

    def g_spline(self) -> BSpline:
        return BSpline(clamped_knots(self.g_domain, self.n_interior, self.degree), self.g_coeffs, self.degree)

    def surface(self) -> TranslationSurface:
        f = surfaces.from_bspline(self.f_spline(), self.f_domain)
        g = surfaces.from_bspline(self.g_spline(), self.g_domain)
        return TranslationSurface(self.kind, f, g, (self.f_domain, self.g_domain))

    def with_coeffs(self, packed: np.ndarray) -> "SplineAnsatz":
        nf = len(self.f_coeffs)
        return replace(self, f_coeffs=packed[:nf].copy(), g_coeffs=packed[nf:].copy())

    def packed(self) -> np.ndarray:
        return np.concatenate([self.f_coeffs, self.g_coeffs])


@dataclass(frozen=True)
class SearchConfig:
    grid: tuple[int, int] = (33, 33)
    z_floor: float = 0.2
    z_ceil: float = 5.0
    barrier_weight: float = 10.0
    barrier_ramp: float = 10.0
    smoothing_weights: tuple[float, ...] = (30.0, 3.0, 0.3, 0.03, 0.0)
    max_iterations: int = 500
    rel_tol: float = 1e-12
    euclidean_control: bool = False
    check_grid: int = 101


@dataclass(frozen=True)
class SearchResult:
    ansatz: SplineAnsatz
    sup_residual: float
    mean_square_residual: float
    plane_distance: float | None
    iterations: int
    converged: bool
    stage_costs: tuple[tuple[float, ...], ...] = ()


def random_ansatz(
    rng: np.random.Generator,
    kind: Kind,
    f_domain: tuple[float, float],
    g_domain: tuple[float, float],
    n_interior: int = 12,
    scale: float = 0.5,
    lift: float = 0.0,
) -> SplineAnsatz:
    """Coefficients ~ U(-scale, scale); `lift` shifts f upward (partition of
    unity makes this an exact constant shift), used to keep type-I seeds
    feasible."""
    m = n_coeffs(n_interior)
    fc = rng.uniform(-scale, scale, m) + lift
    gc = rng.uniform(-scale, scale, m)
    return SplineAnsatz(kind, fc, gc, f_domain, g_domain, n_interior)


# -- basis design matrices (coefficient-independent, cached) -----------

_DESIGN_CACHE: dict[tuple, tuple[np.ndarray, np.ndarray, np.ndarray]] = {}


def _design_matrices(domain, n_interior, degree, ts: np.ndarray):
    key = (domain, n_interior, degree, len(ts), float(ts[0]), float(ts[-1]))
    hit = _DESIGN_CACHE.get(key)
    if hit is not None:
        return hit
    knots = clamped_knots(domain, n_interior, degree)
    m = n_coeffs(n_interior, degree)
    mats = []
    for order in (0, 1, 2):
        cols = []
        for j in range(m):
            unit = np.zeros(m)
            unit[j] = 1.0
            sp = BSpline(knots, unit, degree)
            if order:
                sp = sp.derivative(order)
            cols.append(sp(ts))
        mats.append(np.column_stack(cols))
    mats = tuple(mats)
    _DESIGN_CACHE[key] = mats
    return mats


def _grid(ansatz: SplineAnsatz, cfg: SearchConfig):
    nx, nz = cfg.grid
    xs = np.linspace(*ansatz.f_domain, nx)
    vs = np.linspace(*ansatz.g_domain, nz)
    return xs, vs


def _bases(ansatz: SplineAnsatz, cfg: SearchConfig):
    xs, vs = _grid(ansatz, cfg)
    bf = _design_matrices(ansatz.f_domain, ansatz.n_interior, ansatz.degree, xs)
    bg = _design_matrices(ansatz.g_domain, ansatz.n_interior, ansatz.degree, vs)
    return xs, vs, bf, bg


def residual_grid(ansatz: SplineAnsatz, cfg: SearchConfig):
    """Residual values and partials w.r.t. the six local quantities.

    Returns (R, dR) with R of shape (nx, nz) and dR a dict of same-shape
    arrays keyed by f, fp, fpp, g, gp, gpp.
    """
    xs, vs, (Bf, Bf1, Bf2), (Bg, Bg1, Bg2) = _bases(ansatz, cfg)
    f0, f1, f2 = Bf @ ansatz.f_coeffs, Bf1 @ ansatz.f_coeffs, Bf2 @ ansatz.f_coeffs
    g0, g1, g2 = Bg @ ansatz.g_coeffs, Bg1 @ ansatz.g_coeffs, Bg2 @ ansatz.g_coeffs
    fp = f1[:, None]
    fpp = f2[:, None]
    gp = g1[None, :]
    gpp = g2[None, :]
    P = 1.0 + fp ** 2
    Q = 1.0 + gp ** 2
    shape = (len(xs), len(vs))
    zeros = np.zeros(shape)
    if cfg.euclidean_control:
        # Euclidean type-I minimality: (1+g'^2) f'' + (1+f'^2) g''
        R = Q * fpp + P * gpp + zeros
        dR = {
            "f": zeros,
            "fp": 2.0 * fp * gpp + zeros,
            "fpp": Q + zeros,
            "g": zeros,
            "gp": 2.0 * gp * fpp + zeros,
            "gpp": P + zeros,
        }
        return R, dR

    W2 = P + gp ** 2
    W = np.sqrt(W2)
    S = Q * fpp + P * gpp
    if ansatz.kind is Kind.TYPE_I:
        zv = f0[:, None] + g0[None, :]
        He = S / (2.0 * W ** 3)
        N3 = 1.0 / W
        R = zv * He + N3 + zeros
        dHe_dfp = fp * gpp / W ** 3 - 1.5 * fp * S / W ** 5
        dHe_dgp = gp * fpp / W ** 3 - 1.5 * gp * S / W ** 5
        dR = {
            "f": He + zeros,
            "fp": zv * dHe_dfp - fp / W ** 3 + zeros,
            "fpp": zv * Q / (2.0 * W ** 3) + zeros,
            "g": He + zeros,
            "gp": zv * dHe_dgp - gp / W ** 3 + zeros,
            "gpp": zv * P / (2.0 * W ** 3) + zeros,
        }
        return R, dR

    z = vs[None, :]
    He = -S / (2.0 * W ** 3)
    N3 = gp / W
    R = z * He + N3 + zeros
    dHe_dfp = -fp * gpp / W ** 3 + 1.5 * fp * S / W ** 5
    dHe_dgp = -gp * fpp / W ** 3 + 1.5 * gp * S / W ** 5
    dR = {
        "f": zeros,
        "fp": z * dHe_dfp - gp * fp / W ** 3 + zeros,
        "fpp": -z * Q / (2.0 * W ** 3) + zeros,
        "g": zeros,
        "gp": z * dHe_dgp + P / W ** 3 + zeros,
        "gpp": -z * P / (2.0 * W ** 3) + zeros,
    }
    return R, dR


def residual_and_jacobian(
    ansatz: SplineAnsatz,
    cfg: SearchConfig,
    barrier_weight: float = 0.0,
    smoothing_weight: float = 0.0,
):
    """Flattened residual vector and its Jacobian w.r.t. packed coefficients.

    Optional extra residual blocks: the type-I positivity barrier
    sqrt(w) * max(0, zFloor - (f+g)) and the continuation smoothing penalty
    sqrt(w) * f'' (resp. g'') on the grid lines.
    """
    xs, vs, (Bf, Bf1, Bf2), (Bg, Bg1, Bg2) = _bases(ansatz, cfg)
    R, dR = residual_grid(ansatz, cfg)
    nx, nz = R.shape
    mf = Bf.shape[1]
    mg = Bg.shape[1]
    Jf = (
        np.einsum("ij,ik->ijk", dR["f"], Bf)
        + np.einsum("ij,ik->ijk", dR["fp"], Bf1)
        + np.einsum("ij,ik->ijk", dR["fpp"], Bf2)
    ).reshape(nx * nz, mf)
    Jg = (
        np.einsum("ij,jk->ijk", dR["g"], Bg)
        + np.einsum("ij,jk->ijk", dR["gp"], Bg1)
        + np.einsum("ij,jk->ijk", dR["gpp"], Bg2)
    ).reshape(nx * nz, mg)
    r_blocks = [R.reshape(-1)]
    J_blocks = [np.hstack([Jf, Jg])]

    if ansatz.kind is Kind.TYPE_I and not cfg.euclidean_control and barrier_weight > 0.0:
        # Slab constraint zFloor <= f+g <= zCeil: the floor keeps the graph in
        # the half-space, the ceiling compactifies the search (otherwise the
        # optimizer escapes toward the vertical-plane limit, where H -> 0
        # degenerately).
        zv = (Bf @ ansatz.f_coeffs)[:, None] + (Bg @ ansatz.g_coeffs)[None, :]
        w = math.sqrt(barrier_weight)
        deficit = np.maximum(0.0, cfg.z_floor - zv)
        excess = np.maximum(0.0, zv - cfg.z_ceil)
        slack = w * (deficit - excess)
        sign = -w * ((deficit > 0.0) | (excess > 0.0)).astype(float)
        Jbf = np.einsum("ij,ik->ijk", sign, Bf).reshape(nx * nz, mf)
        Jbg = np.einsum("ij,jk->ijk", sign, Bg).reshape(nx * nz, mg)
        r_blocks.append(slack.reshape(-1))
        J_blocks.append(np.hstack([Jbf, Jbg]))

    if smoothing_weight > 0.0:
        sw = math.sqrt(smoothing_weight)
        r_blocks.append(np.concatenate([sw * (Bf2 @ ansatz.f_coeffs), sw * (Bg2 @ ansatz.g_coeffs)]))
        Js = np.zeros((nx + nz, mf + mg))
        Js[:nx, :mf] = sw * Bf2
        Js[nx:, mf:] = sw * Bg2
        J_blocks.append(Js)

    return np.concatenate(r_blocks), np.vstack(J_blocks)


# -- damped least squares with continuation ---------------------------


def _lm_stage(ansatz, cfg, barrier_weight, smoothing_weight, budget):
    """One continuation stage: damped least squares on the normal equations.

    Hand-rolled Levenberg-Marquardt (diagonal-scaled damping, multiplicative
    update) so every arithmetic step is plain numpy and runs are bit-for-bit
    reproducible across processes.  Returns (ansatz, nfev, converged,
    cost_trace); the trace records accepted costs only, so it is
    non-increasing by construction.
    """

    def eval_at(x):
        r, J = residual_and_jacobian(
            ansatz.with_coeffs(x), cfg, barrier_weight, smoothing_weight
        )
        if not np.all(np.isfinite(r)):
            raise NonFiniteResidualError("non-finite residual during optimization")
        return r, J

    x = ansatz.packed()
    r, J = eval_at(x)
    cost = float(r @ r)
    trace = [cost]
    nfev = 1
    mu = 1e-3
    converged = False
    while nfev < budget:
        A = J.T @ J
        g = J.T @ r
        d = np.maximum(np.diag(A), 1e-12)
        step_taken = False
        while nfev < budget:
            try:
                delta = np.linalg.solve(A + mu * np.diag(d), -g)
            except np.linalg.LinAlgError:
                mu = min(mu * 10.0, 1e15)
                continue
            x_new = x + delta
            r_new, J_new = eval_at(x_new)
            nfev += 1
            cost_new = float(r_new @ r_new)
            if cost_new < cost:
                x, r, J, cost = x_new, r_new, J_new, cost_new
                trace.append(cost)
                mu = max(mu / 3.0, 1e-15)
                step_taken = True
                break
            mu = min(mu * 4.0, 1e15)
            if mu >= 1e15:
                break
        if not step_taken:
            converged = True
            break
        if trace[-2] - trace[-1] <= cfg.rel_tol * max(trace[-1], 1e-300):
            converged = True
            break
    return ansatz.with_coeffs(x), nfev, converged, tuple(trace)


def _stats(ansatz: SplineAnsatz, cfg: SearchConfig) -> tuple[float, float]:
    R, _ = residual_grid(ansatz, cfg)
    return float(np.max(np.abs(R))), float(np.mean(R ** 2))


def _check_feasible(ansatz: SplineAnsatz, cfg: SearchConfig) -> None:
    if ansatz.kind is not Kind.TYPE_I or cfg.euclidean_control:
        return
    xs = np.linspace(*ansatz.f_domain, cfg.check_grid)
    vs = np.linspace(*ansatz.g_domain, cfg.check_grid)
    zv = ansatz.f_spline()(xs)[:, None] + ansatz.g_spline()(vs)[None, :]
    if float(zv.min()) < cfg.z_floor:
        raise InfeasibleSeedError(
            f"min(f+g) = {float(zv.min()):.6g} < zFloor = {cfg.z_floor}"
        )


def minimize_residual(seed: SplineAnsatz, cfg: SearchConfig = SearchConfig()) -> SearchResult:
    """Optimize the ansatz; deterministic given (seed, cfg)."""
    _check_feasible(seed, cfg)
    current = seed
    total_nfev = 0
    converged = False
    traces = []
    barrier = (
        cfg.barrier_weight
        if seed.kind is Kind.TYPE_I and not cfg.euclidean_control
        else 0.0
    )
    for smooth_w in cfg.smoothing_weights:
        current, nfev, converged, trace = _lm_stage(
            current, cfg, barrier, smooth_w, cfg.max_iterations
        )
        total_nfev += nfev
        traces.append(trace)
        if barrier > 0.0:
            barrier *= cfg.barrier_ramp
    sup_r, msr = _stats(current, cfg)
    plane_d = None
    if current.kind is Kind.TYPE_II and not cfg.euclidean_control:
        plane_d = surfaces.plane_family_distance(current.surface())
    return SearchResult(current, sup_r, msr, plane_d, total_nfev, converged, tuple(traces))


# -- seed fan-out ------------------------------------------------------


def generate_seeds(
    n: int,
    kind: Kind,
    generator_seed: int,
    f_domain: tuple[float, float],
    g_domain: tuple[float, float],
    n_interior: int = 12,
    euclidean_control: bool = False,
) -> list[SplineAnsatz]:
    rng = np.random.default_rng(generator_seed)
    lift = 1.5 if kind is Kind.TYPE_I and not euclidean_control else 0.0
    return [
        random_ansatz(rng, kind, f_domain, g_domain, n_interior, lift=lift)
        for _ in range(n)
    ]


def _run_one(args) -> SearchResult:
    seed, cfg = args
    return minimize_residual(seed, cfg)


def run_seeds(
    seeds: list[SplineAnsatz], cfg: SearchConfig, workers: int = 1
) -> list[SearchResult]:
    """Run all seeds; results are merged in seed order regardless of workers."""
    if workers <= 1:
        return [minimize_residual(s, cfg) for s in seeds]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_one, [(s, cfg) for s in seeds]))


# -- ODE experiments ---------------------------------------------------

BLOW_UP_LIMIT = 1e6


@dataclass(frozen=True)
class OdeReport:
    xs: np.ndarray
    f: np.ndarray
    fp: np.ndarray
    max_defect: float
    blew_up: bool
    x_end: float


def integrate_first_integral(a: float, p0: float, x_range: tuple[float, float]) -> OdeReport:
    """Integrate f'' = a(1+f'^2)^2 adaptively, stopping at blow-up, and
    report the factorization defect |-4 f' f''^2 + (1+f'^2) f'''| along the
    trajectory (f''' = 4 a f' f'' (1+f'^2))."""

    def rhs(x, y):
        f, p = y
        return [p, a * (1.0 + p * p) ** 2]

    def blow_up(x, y):
        return abs(y[1]) - BLOW_UP_LIMIT

    blow_up.terminal = True
    sol = solve_ivp(
        rhs,
        x_range,
        [0.0, p0],
        method="RK45",
        rtol=1e-10,
        atol=1e-12,
        events=blow_up,
    )
    xs = sol.t
    f, p = sol.y
    one_p2 = 1.0 + p * p
    fpp = a * one_p2 ** 2
    fppp = 4.0 * a * p * fpp * one_p2
    defect = np.abs(-4.0 * p * fpp ** 2 + one_p2 * fppp)
    # status < 0 is step-size underflow at the finite-time singularity: the
    # slope explodes faster than the event threshold can be reached.
    blew_up = len(sol.t_events[0]) > 0 or sol.status < 0
    return OdeReport(xs, f, p, float(defect.max()), blew_up, float(xs[-1]))


@dataclass(frozen=True)
class BranchReport:
    zs: np.ndarray
    roots: np.ndarray
    g: np.ndarray
    b_values: np.ndarray
    infeasibility: np.ndarray  # per b: max over z of |q1| + |q2|
    min_infeasibility: float


def real_cubic_roots(a: float, z: float) -> np.ndarray:
    """Real roots of X^3 - a z X^2 - a z = 0."""
    roots = np.roots([1.0, -a * z, 0.0, -a * z])
    return np.sort(roots[np.abs(roots.imag) < 1e-9].real)


def trace_type2_branch(
    a: float,
    z_range: tuple[float, float],
    b_values=None,
    n_z: int = 101,
) -> BranchReport:
    """Follow the real branch g'(z) of the cubic constraint and measure, for
    each candidate separation constant b, how far (q1, q2) are from vanishing
    jointly along it."""
    if a == 0.0:
        raise ValueError("trace_type2_branch requires a != 0")
    if z_range[0] <= 0.0:
        raise ValueError("z range must stay in z > 0")
    if b_values is None:
        b_values = np.arange(-2.0, 2.0 + 1e-9, 0.1)
    b_values = np.asarray(b_values, dtype=float)
    zs = np.linspace(*z_range, n_z)
    roots = np.empty(n_z)
    prev = None
    for i, z in enumerate(zs):
        cand = real_cubic_roots(a, z)
        if prev is None:
            roots[i] = cand[-1] if a > 0 else cand[0]
        else:
            roots[i] = cand[np.argmin(np.abs(cand - prev))]
        prev = roots[i]
    g = np.concatenate([[0.0], np.cumsum((roots[1:] + roots[:-1]) / 2.0 * np.diff(zs))])

    q1 = build_named("q1")
    q2 = build_named("q2")

    def q(poly, b, z, X):
        total = 0.0
        for (ea, eb, ez, eX), c in poly.terms.items():
            total += float(c) * a ** ea * b ** eb * z ** ez * X ** eX
        return total

    infeas = np.empty(len(b_values))
    for k, b in enumerate(b_values):
        vals = np.array([abs(q(q1, b, z, X)) + abs(q(q2, b, z, X)) for z, X in zip(zs, roots)])
        infeas[k] = float(vals.max())
    return BranchReport(zs, roots, g, b_values, infeas, float(infeas.min()))


def b0_branch_check(a: float, zs: np.ndarray) -> np.ndarray:
    """Substitute the b=0 candidate X = 4az/5 into the cubic constraint;
    equals -16/125 a^3 z^3 - a z identically."""
    X = 4.0 * a * zs / 5.0
    return X ** 3 - a * zs * X ** 2 - a * zs
