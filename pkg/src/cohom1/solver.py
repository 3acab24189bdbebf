"""Double shooting for the singular boundary value problems.

Both endpoints of [0, pi/G] are regular-singular: the leading coefficient
4 sin^2(Gt) vanishes there, and the smooth solution branch through each
endpoint is a one-parameter family r ~ a*t + c3(a)*t^3 (no quadratic term;
the linear-order terms of the ODE cancel for every slope a, which is what
makes the slope a free shooting parameter).  Integration therefore starts a
small offset eps away from each endpoint on a numerically fitted cubic and
the two trajectories are matched in the interior, where the problem is as
well-conditioned as it gets.

The integrator is an embedded Dormand-Prince 5(4) pair with PI-free step
control, first-same-as-last reuse, optional exact landing on output nodes,
a blow-up cap that converts runaway trajectories into TrajectoryEscaped,
and a step-underflow guard that raises IntegratorStall.  Everything is
plain-float arithmetic in a fixed order, so identical inputs give
bit-identical results on a fixed platform.
"""

from __future__ import annotations

import enum
import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import ode
from .errors import IntegratorStall, NoConvergence, TrajectoryEscaped
from .ode import BvpSpec, TensionSample

GAP_TOL_FACTOR = 1e-9          # convergence: |gaps| <= GAP_TOL_FACTOR*(1+|k|)
MIN_PROFILE_POINTS = 257
_MAX_STEPS = 5_000_000


class Endpoint(enum.Enum):
    LEFT = "left"
    RIGHT = "right"


@dataclass(frozen=True)
class ShootingConfig:
    """Knobs of the shooting procedure; defaults suit every classified case."""

    eps0: float = 1e-5          # offset of the left series start
    eps1: float = 1e-5          # offset of the right series start
    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    match_point: float | None = None      # None -> pi/(2G)
    bracket: tuple[float, float] | None = None  # None -> [-4|k|-4, 4|k|+4]
    sweep_points: int = 512
    max_newton: int = 50
    blowup_cap: float = 1e6

    def validate(self, spec: BvpSpec) -> None:
        quarter = spec.length / 4.0
        if not (0.0 < self.eps0 < quarter and 0.0 < self.eps1 < quarter):
            raise ValueError(
                f"eps0/eps1 must lie in (0, pi/(4G)) = (0, {quarter:g}), "
                f"got {self.eps0!r}, {self.eps1!r}"
            )
        if self.rel_tol <= 0.0 or self.abs_tol <= 0.0:
            raise ValueError("tolerances must be positive")
        match = self.resolved_match(spec)
        if not (self.eps0 < match < spec.length - self.eps1):
            raise ValueError(f"match point {match!r} outside the open domain")
        lo, hi = self.resolved_bracket(spec)
        if not lo < hi:
            raise ValueError(f"empty bracket ({lo!r}, {hi!r})")
        if self.sweep_points < 2:
            raise ValueError("sweep needs at least 2 grid points")
        if self.max_newton < 1 or self.blowup_cap <= 0.0:
            raise ValueError("max_newton must be >= 1 and blowup_cap positive")

    def resolved_match(self, spec: BvpSpec) -> float:
        return spec.length / 2.0 if self.match_point is None else self.match_point

    def resolved_bracket(self, spec: BvpSpec) -> tuple[float, float]:
        if self.bracket is None:
            w = 4.0 * abs(spec.k) + 4.0
            return (-w, w)
        return (float(self.bracket[0]), float(self.bracket[1]))

    def to_dict(self, spec: BvpSpec | None = None) -> dict:
        d = {
            "eps0": self.eps0,
            "eps1": self.eps1,
            "rel_tol": self.rel_tol,
            "abs_tol": self.abs_tol,
            "match_point": self.match_point,
            "bracket": list(self.bracket) if self.bracket is not None else None,
            "sweep_points": self.sweep_points,
            "max_newton": self.max_newton,
            "blowup_cap": self.blowup_cap,
        }
        if spec is not None:
            d["match_point"] = self.resolved_match(spec)
            d["bracket"] = list(self.resolved_bracket(spec))
        return d


@dataclass(frozen=True)
class SolutionProfile:
    """A converged solution sampled on [eps0, pi/G - eps1]."""

    spec: BvpSpec
    samples: np.ndarray          # (n, 3) columns t, r, rdot
    slope0: float
    slope1: float
    match_gap: tuple[float, float]
    residual: float

    def max_linear_deviation(self) -> float:
        """max_t |r(t) - k t| over the samples."""
        t, r = self.samples[:, 0], self.samples[:, 1]
        return float(np.max(np.abs(r - self.spec.k * t)))

    def write_csv(self, path) -> None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("t,r,rdot\n")
            for t, r, v in self.samples:
                fh.write(f"{t:.17g},{r:.17g},{v:.17g}\n")

    def metadata(self, config: ShootingConfig | None = None) -> dict:
        d = {
            "spec": self.spec.to_dict(),
            "slope0": self.slope0,
            "slope1": self.slope1,
            "match_gap": list(self.match_gap),
            "residual": self.residual,
            "samples": int(self.samples.shape[0]),
        }
        if config is not None:
            d["config"] = config.to_dict(self.spec)
        return d


@dataclass(frozen=True)
class SweepPoint:
    """One grid point of a single-ended sweep.

    ``sign_change`` flags a bracket between this grid point and its left
    neighbour.  Escaped trajectories carry gap = +/-inf by the sign of r at
    escape (a documented heuristic); a stalled integration carries NaN.
    """

    a: float
    sign_change: bool
    gap: float


# Dormand-Prince 5(4) tableau.
_C2, _C3, _C4, _C5 = 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0
_A21 = 1.0 / 5.0
_A31, _A32 = 3.0 / 40.0, 9.0 / 40.0
_A41, _A42, _A43 = 44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0
_A51, _A52, _A53, _A54 = (
    19372.0 / 6561.0,
    -25360.0 / 2187.0,
    64448.0 / 6561.0,
    -212.0 / 729.0,
)
_A61, _A62, _A63, _A64, _A65 = (
    9017.0 / 3168.0,
    -355.0 / 33.0,
    46732.0 / 5247.0,
    49.0 / 176.0,
    -5103.0 / 18656.0,
)
_B1, _B3, _B4, _B5, _B6 = (
    35.0 / 384.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
)
_E1, _E3, _E4, _E5, _E6, _E7 = (
    71.0 / 57600.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
)

# Quartic dense-output weights w_s(theta) = sum_j P[s][j] * theta^(j+1).
# Columns sum to (1, 0, 0, 0), so constant-derivative (linear) solutions are
# interpolated exactly; row sums equal the propagation weights, so
# u(1) = y_new.
_P = (
    (1.0, -8048581381 / 2820520608, 8663915743 / 2820520608, -12715105075 / 11282082432),
    (0.0, 0.0, 0.0, 0.0),
    (0.0, 131558114200 / 32700410799, -68118460800 / 10900136933, 87487479700 / 32700410799),
    (0.0, -1754552775 / 470086768, 14199869525 / 1410260304, -10690763975 / 1880347072),
    (0.0, 127303824393 / 49829197408, -318862633887 / 49829197408, 701980252875 / 199316789632),
    (0.0, -282668133 / 205662961, 2019193451 / 616988883, -1453857185 / 822651844),
    (0.0, 40617522 / 29380423, -110615467 / 29380423, 69997945 / 29380423),
)

_MIN_STEP = 1e-14
_SAFETY, _MIN_FACTOR, _MAX_FACTOR = 0.9, 0.2, 5.0


def _integrate(
    accel,
    t0: float,
    r0: float,
    v0: float,
    t_end: float,
    rel_tol: float,
    abs_tol: float,
    blowup_cap: float,
    nodes=None,
    record=None,
):
    """Advance (r, v) from t0 to t_end; optionally record states at nodes.

    ``nodes`` must be sorted in the direction of integration and lie in
    (t0, t_end]; they are evaluated from the dense-output interpolant of
    each accepted step, so recorded samples stay smooth at node spacing
    regardless of the step sequence.  Returns the final (r, v).
    """
    t, r, v = t0, r0, v0
    direction = 1.0 if t_end >= t0 else -1.0
    span = abs(t_end - t0)
    if span == 0.0:
        return r, v
    node_iter = iter(nodes) if nodes is not None else None
    next_node = next(node_iter, None) if node_iter is not None else None

    h = direction * min(span * 1e-3, 1e-3)
    k1r = v
    k1v = accel(t, r, v)
    steps = 0
    while (t_end - t) * direction > 0.0:
        if (t + h - t_end) * direction > 0.0:
            h = t_end - t

        tr = r + h * _A21 * k1r
        tv = v + h * _A21 * k1v
        k2r, k2v = tv, accel(t + _C2 * h, tr, tv)
        tr = r + h * (_A31 * k1r + _A32 * k2r)
        tv = v + h * (_A31 * k1v + _A32 * k2v)
        k3r, k3v = tv, accel(t + _C3 * h, tr, tv)
        tr = r + h * (_A41 * k1r + _A42 * k2r + _A43 * k3r)
        tv = v + h * (_A41 * k1v + _A42 * k2v + _A43 * k3v)
        k4r, k4v = tv, accel(t + _C4 * h, tr, tv)
        tr = r + h * (_A51 * k1r + _A52 * k2r + _A53 * k3r + _A54 * k4r)
        tv = v + h * (_A51 * k1v + _A52 * k2v + _A53 * k3v + _A54 * k4v)
        k5r, k5v = tv, accel(t + _C5 * h, tr, tv)
        tr = r + h * (_A61 * k1r + _A62 * k2r + _A63 * k3r + _A64 * k4r + _A65 * k5r)
        tv = v + h * (_A61 * k1v + _A62 * k2v + _A63 * k3v + _A64 * k4v + _A65 * k5v)
        k6r, k6v = tv, accel(t + h, tr, tv)
        r_new = r + h * (_B1 * k1r + _B3 * k3r + _B4 * k4r + _B5 * k5r + _B6 * k6r)
        v_new = v + h * (_B1 * k1v + _B3 * k3v + _B4 * k4v + _B5 * k5v + _B6 * k6v)
        t_new = t + h
        k7r, k7v = v_new, accel(t_new, r_new, v_new)

        err_r = h * (_E1 * k1r + _E3 * k3r + _E4 * k4r + _E5 * k5r + _E6 * k6r + _E7 * k7r)
        err_v = h * (_E1 * k1v + _E3 * k3v + _E4 * k4v + _E5 * k5v + _E6 * k6v + _E7 * k7v)
        sc_r = abs_tol + rel_tol * max(abs(r), abs(r_new))
        sc_v = abs_tol + rel_tol * max(abs(v), abs(v_new))
        e0, e1 = err_r / sc_r, err_v / sc_v
        err = math.sqrt(0.5 * (e0 * e0 + e1 * e1))

        if err <= 1.0:
            while next_node is not None and (t_new - next_node) * direction >= 0.0:
                th = (next_node - t) / h
                th2 = th * th
                th3 = th2 * th
                th4 = th3 * th
                ur = r
                uv = v
                for ks_r, ks_v, row in (
                    (k1r, k1v, _P[0]),
                    (k3r, k3v, _P[2]),
                    (k4r, k4v, _P[3]),
                    (k5r, k5v, _P[4]),
                    (k6r, k6v, _P[5]),
                    (k7r, k7v, _P[6]),
                ):
                    w = row[0] * th + row[1] * th2 + row[2] * th3 + row[3] * th4
                    ur += h * w * ks_r
                    uv += h * w * ks_v
                if record is not None:
                    record.append((next_node, ur, uv))
                next_node = next(node_iter, None)
            t, r, v = t_new, r_new, v_new
            k1r, k1v = k7r, k7v
            if abs(r) > blowup_cap or abs(v) > blowup_cap:
                raise TrajectoryEscaped(t, r, v)
            factor = _SAFETY * err ** -0.2 if err > 0.0 else _MAX_FACTOR
        else:
            if not (err == err):  # NaN: shrink hard
                factor = _MIN_FACTOR
            else:
                factor = _SAFETY * err ** -0.2
        h *= min(_MAX_FACTOR, max(_MIN_FACTOR, factor))
        if abs(h) < _MIN_STEP:
            raise IntegratorStall(t)
        steps += 1
        if steps > _MAX_STEPS:
            raise IntegratorStall(t, detail="step budget exhausted")
    return r, v


def series_start(
    spec: BvpSpec, endpoint: Endpoint, slope: float, eps: float
) -> tuple[float, float, float]:
    """Smooth-branch starting data (t, r, rdot) an offset eps off an endpoint.

    The cubic coefficient is fitted numerically from the ODE itself: probe
    the acceleration at 2*eps on the linear ray, read off c3 from
    r'' ~ 6*c3*t, and refine once with the corrected state.  This keeps the
    expansion formula-agnostic in (G, M0, M1); the Richardson property of
    the starts is asserted by the test suite instead of by algebra.
    """
    accel = ode.rhs(spec)
    if endpoint is Endpoint.LEFT:
        tp = 2.0 * eps
        c3 = accel(tp, slope * tp, slope) / (6.0 * tp)
        c3 = accel(tp, slope * tp + c3 * tp**3, slope + 3.0 * c3 * tp * tp) / (6.0 * tp)
        t = eps
        r = slope * eps + c3 * eps**3
        v = slope + 3.0 * c3 * eps * eps
        rdd = 6.0 * c3 * eps
    else:
        L = spec.length
        r_end = spec.k * L
        tp = L - 2.0 * eps
        s = 2.0 * eps
        d3 = -accel(tp, r_end - slope * s, slope) / (6.0 * s)
        d3 = -accel(tp, r_end - slope * s - d3 * s**3, slope + 3.0 * d3 * s * s) / (
            6.0 * s
        )
        t = L - eps
        r = r_end - slope * eps - d3 * eps**3
        v = slope + 3.0 * d3 * eps * eps
        rdd = -6.0 * d3 * eps

    # Leading-order consistency: the start must already nearly satisfy the
    # ODE (the O(t) terms cancel for every slope, so the residual is O(eps)).
    ct = ode.closed_tension(spec, TensionSample(t, r, v, rdd))
    scale = 4.0 * spec.G * (spec.M0 + spec.M1) * (1.0 + abs(slope) + abs(spec.k))
    if abs(ct) > 100.0 * eps * scale:  # pragma: no cover - diagnostic only
        warnings.warn(
            f"series start at {endpoint.value} endpoint violates leading-order "
            f"consistency: |tension|={abs(ct):.3g} at eps={eps:g}",
            RuntimeWarning,
            stacklevel=2,
        )
    return t, r, v


def shoot(
    spec: BvpSpec, config: ShootingConfig, a: float, b: float
) -> tuple[float, float]:
    """Mismatch (value, derivative) at the match point between the trajectory
    started from the left with slope a and from the right with slope b."""
    config.validate(spec)
    accel = ode.rhs(spec)
    match = config.resolved_match(spec)
    tl, rl, vl = series_start(spec, Endpoint.LEFT, a, config.eps0)
    rl, vl = _integrate(
        accel, tl, rl, vl, match, config.rel_tol, config.abs_tol, config.blowup_cap
    )
    tr, rr, vr = series_start(spec, Endpoint.RIGHT, b, config.eps1)
    rr, vr = _integrate(
        accel, tr, rr, vr, match, config.rel_tol, config.abs_tol, config.blowup_cap
    )
    return rl - rr, vl - vr


def _gap_norm(gap: tuple[float, float]) -> float:
    return math.hypot(gap[0], gap[1])


def solve(
    spec: BvpSpec,
    config: ShootingConfig | None = None,
    init: tuple[float, float] | None = None,
    profile_points: int = 513,
) -> SolutionProfile:
    """Damped-Newton double shooting on the endpoint slopes (a, b).

    Starts from ``init`` or from the linear candidate (k, k).  The Jacobian
    is a forward finite difference; steps are halved up to 20 times until
    the gap norm decreases.  An escape during a probe or a damped trial is
    treated as a failed trial; only an escape of the very first shot
    surfaces as TrajectoryEscaped.  On convergence the solution is
    re-integrated once over a dense output grid and the interior residual
    is measured by finite-difference reconstruction of r''.

    Raises NoConvergence (with the final gaps and iterate) or
    TrajectoryEscaped.
    """
    config = config or ShootingConfig()
    config.validate(spec)
    k = spec.k
    a, b = (float(init[0]), float(init[1])) if init is not None else (float(k), float(k))
    tol = GAP_TOL_FACTOR * (1.0 + abs(k))

    gap = shoot(spec, config, a, b)
    norm = _gap_norm(gap)
    iterations = 0
    while norm > tol:
        if iterations >= config.max_newton:
            raise NoConvergence(gap, (a, b), iterations, "iteration cap reached")
        ha = 1e-7 * (1.0 + abs(a))
        hb = 1e-7 * (1.0 + abs(b))
        try:
            gap_a = shoot(spec, config, a + ha, b)
            gap_b = shoot(spec, config, a, b + hb)
        except (TrajectoryEscaped, IntegratorStall) as exc:
            raise NoConvergence(
                gap, (a, b), iterations, f"jacobian probe failed ({exc})"
            ) from exc
        j00 = (gap_a[0] - gap[0]) / ha
        j10 = (gap_a[1] - gap[1]) / ha
        j01 = (gap_b[0] - gap[0]) / hb
        j11 = (gap_b[1] - gap[1]) / hb
        det = j00 * j11 - j01 * j10
        if det == 0.0 or not math.isfinite(det):
            raise NoConvergence(gap, (a, b), iterations, "singular jacobian")
        da = (j11 * gap[0] - j01 * gap[1]) / det
        db = (j00 * gap[1] - j10 * gap[0]) / det

        lam = 1.0
        for _ in range(20):
            trial = (a - lam * da, b - lam * db)
            try:
                trial_gap = shoot(spec, config, *trial)
            except (TrajectoryEscaped, IntegratorStall):
                lam *= 0.5
                continue
            trial_norm = _gap_norm(trial_gap)
            if trial_norm < norm:
                a, b = trial
                gap, norm = trial_gap, trial_norm
                break
            lam *= 0.5
        else:
            raise NoConvergence(gap, (a, b), iterations, "damping failed to reduce gap")
        iterations += 1

    return _dense_profile(spec, config, a, b, gap, max(profile_points, MIN_PROFILE_POINTS))


def _dense_profile(spec, config, a, b, gap, n_points) -> SolutionProfile:
    """Sample the converged solution on a uniform grid.

    The two shooting halves are joined with a C^2 blend over an interior
    overlap window rather than butted at a single node: the converged match
    gap, although below tolerance, would otherwise enter the sampled data
    as a kink that finite differencing amplifies by 1/h^2.  Both halves
    solve the ODE, so the blend's residual is of order gap / window^2.
    """
    accel = ode.rhs(spec)
    match = config.resolved_match(spec)
    L = spec.length
    span = L - config.eps0 - config.eps1
    half_w = min(
        0.15 * span, 0.8 * (match - config.eps0), 0.8 * (L - config.eps1 - match)
    )
    lo, hi = match - half_w, match + half_w
    nodes = np.linspace(config.eps0, L - config.eps1, n_points)
    left_nodes = [float(x) for x in nodes if x <= hi]
    right_nodes = [float(x) for x in nodes if x >= lo]
    n_overlap = len(left_nodes) + len(right_nodes) - n_points

    tl, rl, vl = series_start(spec, Endpoint.LEFT, a, config.eps0)
    left_rec: list[tuple[float, float, float]] = [(tl, rl, vl)]
    if len(left_nodes) > 1:
        _integrate(
            accel, tl, rl, vl, left_nodes[-1],
            config.rel_tol, config.abs_tol, config.blowup_cap,
            nodes=left_nodes[1:], record=left_rec,
        )
    tr, rr, vr = series_start(spec, Endpoint.RIGHT, b, config.eps1)
    right_rec: list[tuple[float, float, float]] = [(tr, rr, vr)]
    if len(right_nodes) > 1:
        _integrate(
            accel, tr, rr, vr, right_nodes[0],
            config.rel_tol, config.abs_tol, config.blowup_cap,
            nodes=right_nodes[-2::-1], record=right_rec,
        )
    left = np.array(left_rec, dtype=float)
    right = np.array(right_rec[::-1], dtype=float)

    samples = np.empty((n_points, 3))
    n_left_only = len(left_nodes) - n_overlap
    samples[:n_left_only] = left[:n_left_only]
    samples[len(left_nodes):] = right[n_overlap:]
    if n_overlap > 0:
        lseg = left[n_left_only:]
        rseg = right[:n_overlap]
        t_seg = lseg[:, 0]
        x = (t_seg - lo) / (hi - lo)
        s = x * x * x * (10.0 + x * (-15.0 + 6.0 * x))     # smootherstep
        ds = 30.0 * x * x * (1.0 + x * (-2.0 + x)) / (hi - lo)
        w, dw = 1.0 - s, -ds
        samples[n_left_only:len(left_nodes), 0] = t_seg
        samples[n_left_only:len(left_nodes), 1] = w * lseg[:, 1] + (1 - w) * rseg[:, 1]
        samples[n_left_only:len(left_nodes), 2] = (
            w * lseg[:, 2] + (1 - w) * rseg[:, 2] + dw * (lseg[:, 1] - rseg[:, 1])
        )

    residual = ode.residual_norm(spec, samples)[0]
    return SolutionProfile(
        spec=spec,
        samples=samples,
        slope0=a,
        slope1=b,
        match_gap=(gap[0], gap[1]),
        residual=residual,
    )


def _terminal_gap(spec, config, accel, a: float):
    """Single-ended mismatch at pi/G - eps1 for left slope a.

    Returns (gap, terminal rdot or None).  The boundary target is linearised
    with the trajectory's own terminal slope.
    """
    t_end = spec.length - config.eps1
    tl, rl, vl = series_start(spec, Endpoint.LEFT, a, config.eps0)
    try:
        r_end, v_end = _integrate(
            accel, tl, rl, vl, t_end,
            config.rel_tol, config.abs_tol, config.blowup_cap,
        )
    except TrajectoryEscaped as esc:
        return math.copysign(math.inf, esc.r if esc.r != 0.0 else 1.0), None
    except IntegratorStall:
        return math.nan, None
    target = spec.k * spec.length - v_end * config.eps1
    return r_end - target, v_end


def sweep(
    spec: BvpSpec, config: ShootingConfig | None = None, threads: int = 1
) -> list[SweepPoint]:
    """Single-ended slope sweep over the bracket grid.

    Grid points are independent; with ``threads`` > 1 they are evaluated in
    a thread pool.  The result is ordered by a regardless of scheduling.
    """
    config = config or ShootingConfig()
    config.validate(spec)
    accel = ode.rhs(spec)
    lo, hi = config.resolved_bracket(spec)
    grid = np.linspace(lo, hi, config.sweep_points)

    def one(a: float) -> float:
        return _terminal_gap(spec, config, accel, float(a))[0]

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            gaps = list(pool.map(one, grid))
    else:
        gaps = [one(a) for a in grid]

    points = []
    for i, (a, gap) in enumerate(zip(grid, gaps)):
        change = i > 0 and gaps[i - 1] * gap < 0.0
        points.append(SweepPoint(a=float(a), sign_change=bool(change), gap=gap))
    return points


def _right_slope_estimate(spec, config, accel, a: float) -> float | None:
    """Boundary slope of the trajectory with left slope a, extrapolated from
    states clear of the right pole.

    Terminal derivatives at pi/G - eps1 are useless for this: the singular
    branch amplifies integrator noise by 1/eps1^2 there.  On the smooth
    branch v(s) = b + 3*c3*s^2 + O(s^4) in the distance s from the
    endpoint, so sampling at s and s/2 and eliminating the s^2 term gives b
    with only O(s^4) bias and no pole amplification.
    """
    s1 = spec.length / 4.0
    tl, rl, vl = series_start(spec, Endpoint.LEFT, a, config.eps0)
    try:
        r1, v1 = _integrate(
            accel, tl, rl, vl, spec.length - s1,
            config.rel_tol, config.abs_tol, config.blowup_cap,
        )
        _r2, v2 = _integrate(
            accel, spec.length - s1, r1, v1, spec.length - s1 / 2.0,
            config.rel_tol, config.abs_tol, config.blowup_cap,
        )
    except (TrajectoryEscaped, IntegratorStall):
        return None
    return (4.0 * v2 - v1) / 3.0


def refine_brackets(
    spec: BvpSpec,
    config: ShootingConfig | None = None,
    points: list[SweepPoint] | None = None,
    bisect_steps: int = 60,
) -> list[SolutionProfile]:
    """Refine every sweep bracket with bisection, then full double shooting.

    The bisected left slope seeds a; the right slope is seeded from the
    pole-clear extrapolation of that trajectory, falling back to the
    symmetric guess b = a and to the linear guess b = k.  Brackets whose
    refinement fails to converge are dropped.  Profiles are reported
    ordered by |slope0 - k|.
    """
    config = config or ShootingConfig()
    points = points if points is not None else sweep(spec, config)
    accel = ode.rhs(spec)
    profiles = []
    for i, pt in enumerate(points):
        if not pt.sign_change:
            continue
        lo, hi = points[i - 1].a, pt.a
        glo = _terminal_gap(spec, config, accel, lo)[0]
        for _ in range(bisect_steps):
            mid = 0.5 * (lo + hi)
            gmid, _v = _terminal_gap(spec, config, accel, mid)
            if gmid != gmid:  # NaN: give up on this bracket
                lo = hi = math.nan
                break
            if (gmid < 0.0) == (glo < 0.0):
                lo, glo = mid, gmid
            else:
                hi = mid
        if lo != lo:
            continue
        a_root = 0.5 * (lo + hi)
        b_guesses = []
        b_extrap = _right_slope_estimate(spec, config, accel, a_root)
        if b_extrap is not None and math.isfinite(b_extrap):
            b_guesses.append(b_extrap)
        b_guesses.extend([a_root, float(spec.k)])
        for b_init in b_guesses:
            try:
                profiles.append(solve(spec, config, init=(a_root, b_init)))
                break
            except (NoConvergence, TrajectoryEscaped, IntegratorStall):
                continue
    profiles.sort(key=lambda p: abs(p.slope0 - spec.k))
    return profiles
