"""Right-hand sides and residuals of the singular boundary value problems.

The normal tension of an equivariant map r(t) on a (G, M0, M1)-problem is,
after clearing denominators,

    4 sin^2(Gt) r''(t)
      + (G(M0+M1) sin(2Gt) + 2G(M0-M1) sin(Gt)) r'(t)
      - G(G-2) sin(2(r-t)) (M0+M1 + (M0-M1) cos(Gt))
      - 2G sin(2(r-t)+Gt) ((M0+M1) cos(Gt) + M0-M1)

on the interval (0, pi/G) with boundary limits r -> 0 and r -> k*pi/G.  This
module evaluates that closed form, its equal-multiplicity simplification,
and the un-simplified sums over the curvature directions that the closed
form compresses, so each can serve as an independent check on the others.

All trigonometric arguments are reduced modulo 2*pi before evaluation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import actions
from .errors import PoleProximity, ProfileTooCoarse, UnequalMultiplicities

TAU = 2.0 * math.pi

#: Evaluation points closer than this to a pole of the coefficients are
#: rejected; the solver handles the singular endpoints by series starts.
DEFAULT_POLE_MARGIN = 1e-8


def _reduce(x: float) -> float:
    # IEEE remainder is exact, so reduction adds no rounding error.
    return math.remainder(x, TAU)


def pole_distance(t: float, G: int) -> float:
    """Distance from t to the pole set (pi/G) * Z."""
    step = math.pi / G
    return abs(t - round(t / step) * step)


def _require_regular(t: float, G: int, margin: float) -> None:
    if pole_distance(t, G) < margin:
        raise PoleProximity(
            f"t={t!r} is within {margin:g} of a pole of the (G={G}) problem"
        )


@dataclass(frozen=True)
class BvpSpec:
    """A concrete (G, M0, M1, k) boundary value problem on [0, pi/G].

    k is any integer here; specs generated from an action via an admissible
    j automatically satisfy k = j*g + 1.
    """

    G: int
    M0: int
    M1: int
    k: int

    def __post_init__(self):
        for name in ("G", "M0", "M1"):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 1:
                raise ValueError(f"{name} must be a positive integer, got {value!r}")
        if not isinstance(self.k, int):
            raise ValueError(f"k must be an integer, got {self.k!r}")

    @property
    def length(self) -> float:
        return math.pi / self.G

    @property
    def domain(self) -> tuple[float, float]:
        return (0.0, self.length)

    @property
    def boundary(self) -> tuple[float, float]:
        return (0.0, self.k * self.length)

    @classmethod
    def from_action(cls, action: actions.ActionDescriptor, j: int) -> "BvpSpec":
        """The problem solved by the j-th equivariant self-map of ``action``."""
        k = actions.admissible_k(action, j)
        return cls(G=action.bvp_g, M0=action.m0, M1=action.m1, k=k)

    def to_dict(self) -> dict:
        return {"G": self.G, "M0": self.M0, "M1": self.M1, "k": self.k}


@dataclass(frozen=True)
class TensionSample:
    """Candidate values (r, r', r'') at an interior time t."""

    t: float
    r: float
    rdot: float
    rddot: float


def _tension_parts(G, M0, M1, t, r, rdot):
    """Scalar (A, N) with closed tension = A * rddot + N.  Hot path."""
    s = M0 + M1
    d = M0 - M1
    Gt = G * t
    sg = math.sin(_reduce(Gt))
    cg = math.cos(_reduce(Gt))
    s2g = math.sin(_reduce(2.0 * Gt))
    u = 2.0 * (r - t)
    su = math.sin(_reduce(u))
    sug = math.sin(_reduce(u + Gt))
    A = 4.0 * sg * sg
    N = (
        (G * s * s2g + 2.0 * G * d * sg) * rdot
        - G * (G - 2.0) * su * (s + d * cg)
        - 2.0 * G * sug * (s * cg + d)
    )
    return A, N


def _tension_parts_np(G, M0, M1, t, r, rdot):
    """Vectorised twin of :func:`_tension_parts`."""
    s = M0 + M1
    d = M0 - M1
    t = np.asarray(t, dtype=float)
    r = np.asarray(r, dtype=float)
    rdot = np.asarray(rdot, dtype=float)
    Gt = G * t
    sg = np.sin(np.remainder(Gt, TAU))
    cg = np.cos(np.remainder(Gt, TAU))
    s2g = np.sin(np.remainder(2.0 * Gt, TAU))
    u = 2.0 * (r - t)
    su = np.sin(np.remainder(u, TAU))
    sug = np.sin(np.remainder(u + Gt, TAU))
    A = 4.0 * sg * sg
    N = (
        (G * s * s2g + 2.0 * G * d * sg) * rdot
        - G * (G - 2.0) * su * (s + d * cg)
        - 2.0 * G * sug * (s * cg + d)
    )
    return A, N


def closed_tension(
    spec: BvpSpec, sample: TensionSample, margin: float = DEFAULT_POLE_MARGIN
) -> float:
    """Cleared-denominator normal tension at ``sample``.

    Zero means the normal component of the tension field vanishes there.
    """
    _require_regular(sample.t, spec.G, margin)
    A, N = _tension_parts(spec.G, spec.M0, spec.M1, sample.t, sample.r, sample.rdot)
    return A * sample.rddot + N


def closed_tension_grid(
    spec: BvpSpec, t, r, rdot, rddot, margin: float = DEFAULT_POLE_MARGIN
) -> np.ndarray:
    """Vectorised closed tension over sample arrays."""
    t = np.asarray(t, dtype=float)
    step = math.pi / spec.G
    dist = np.abs(t - np.round(t / step) * step)
    if np.any(dist < margin):
        raise PoleProximity(f"grid contains points within {margin:g} of a pole")
    A, N = _tension_parts_np(spec.G, spec.M0, spec.M1, t, r, rdot)
    return A * np.asarray(rddot, dtype=float) + N


def closed_tension_equal_m(
    spec: BvpSpec, sample: TensionSample, margin: float = DEFAULT_POLE_MARGIN
) -> float:
    """Simplified form for equal multiplicities; half of :func:`closed_tension`.

        2 sin^2(Gt) r'' + mG sin(2Gt) r' - mG ((G-1) sin 2(r-t) + sin 2(r+(G-1)t))
    """
    if spec.M0 != spec.M1:
        raise UnequalMultiplicities(
            f"equal-multiplicity form needs M0 == M1, got ({spec.M0},{spec.M1})"
        )
    _require_regular(sample.t, spec.G, margin)
    G, m = spec.G, spec.M0
    t, r = sample.t, sample.r
    sg = math.sin(_reduce(G * t))
    return (
        2.0 * sg * sg * sample.rddot
        + m * G * math.sin(_reduce(2.0 * G * t)) * sample.rdot
        - m
        * G
        * (
            (G - 1.0) * math.sin(_reduce(2.0 * (r - t)))
            + math.sin(_reduce(2.0 * r + 2.0 * (G - 1.0) * t))
        )
    )


def raw_tension_sphere(
    g: int,
    m0: int,
    m1: int,
    sample: TensionSample,
    margin: float = DEFAULT_POLE_MARGIN,
) -> float:
    """Un-simplified normal tension: the sum over curvature directions.

        r'' + sum_i m_i cot(t - i pi/g) r'
            - 1/2 sum_i m_i sin 2(r - i pi/g) / sin^2(t - i pi/g)

    with multiplicities alternating m0, m1 by index parity.  Multiplying by
    4 sin^2(gt) recovers :func:`closed_tension` (for odd g this requires
    m0 == m1, the only case in which the alternating sum is geometric).
    """
    _require_regular(sample.t, g, margin)
    t, r = sample.t, sample.r
    total = sample.rddot
    forcing = 0.0
    for i in range(g):
        x = _reduce(t - i * math.pi / g)
        sx = math.sin(x)
        mi = m0 if i % 2 == 0 else m1
        total += mi * (math.cos(x) / sx) * sample.rdot
        forcing += mi * math.sin(_reduce(2.0 * r - 2.0 * i * math.pi / g)) / (sx * sx)
    return total - 0.5 * forcing


def raw_tension_so(
    g: int,
    m0: int,
    m1: int,
    sample: TensionSample,
    margin: float = DEFAULT_POLE_MARGIN,
) -> float:
    """Raw normal tension of the reparametrised lifted map on the rotation group.

    Equals the sphere sum with twice the curvature count (step pi/(2g), 2g
    terms), which is exactly how the lifted problems reduce to sphere
    problems; realised by delegation.  The returned value is twice the
    lifted map's normal tension; only its zero set matters for harmonicity.
    """
    return raw_tension_sphere(2 * g, m0, m1, sample, margin)


def rhs(
    spec: BvpSpec, margin: float = DEFAULT_POLE_MARGIN
) -> Callable[[float, float, float], float]:
    """Explicit second-derivative function (t, r, r') -> r''.

    Solves closed_tension == 0 for r''.  The body repeats the
    :func:`_tension_parts` arithmetic with bound locals because this is the
    integrator's innermost call; the round-trip test pins the two paths
    together.
    """
    G, M0, M1 = spec.G, spec.M0, spec.M1
    step = math.pi / G
    cs = G * (M0 + M1)          # rdot coefficient scale, sin(2Gt) part
    cd = 2.0 * G * (M0 - M1)    # rdot coefficient scale, sin(Gt) part
    f1 = G * (G - 2.0)
    f2 = 2.0 * G
    s = M0 + M1
    d = M0 - M1

    def accel(
        t: float,
        r: float,
        rdot: float,
        sin=math.sin,
        cos=math.cos,
        rem=math.remainder,
    ) -> float:
        if abs(t - round(t / step) * step) < margin:
            raise PoleProximity(
                f"t={t!r} is within {margin:g} of a pole of the (G={G}) problem"
            )
        Gt = G * t
        sg = sin(rem(Gt, TAU))
        cg = cos(rem(Gt, TAU))
        s2g = sin(rem(2.0 * Gt, TAU))
        u = 2.0 * (r - t)
        su = sin(rem(u, TAU))
        sug = sin(rem(u + Gt, TAU))
        N = (
            (cs * s2g + cd * sg) * rdot
            - f1 * su * (s + d * cg)
            - f2 * sug * (s * cg + d)
        )
        return -N / (4.0 * sg * sg)

    return accel


def _as_sample_array(profile) -> np.ndarray:
    samples = getattr(profile, "samples", profile)
    arr = np.asarray(samples, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 3:
        raise ValueError("profile samples must be an (n, 3) array of (t, r, rdot)")
    return arr


def residual_norm(
    spec: BvpSpec, profile, margin: float = DEFAULT_POLE_MARGIN
) -> tuple[float, tuple[float, float]]:
    """Max interior |closed tension| of a sampled profile, plus boundary errors.

    r'' is reconstructed with the centred second-order stencil on the
    profile's own (possibly non-uniform) grid; r and r' are taken from the
    samples.  Boundary errors compare the first/last samples against the
    boundary targets under the endpoint linearisations r ~ a*t and
    r ~ k*pi/G - b*(pi/G - t), with slopes estimated from the adjacent
    sample pair.
    """
    arr = _as_sample_array(profile)
    t, r, v = arr[:, 0], arr[:, 1], arr[:, 2]
    if t.shape[0] - 2 < 16:
        raise ProfileTooCoarse(
            f"need at least 16 interior samples, got {max(t.shape[0] - 2, 0)}"
        )
    if np.any(np.diff(t) <= 0):
        raise ValueError("profile samples must be strictly increasing in t")
    L = spec.length
    if t[0] <= 0.0 or t[-1] >= L:
        raise ValueError("profile must be sampled strictly inside (0, pi/G)")

    hm = t[1:-1] - t[:-2]
    hp = t[2:] - t[1:-1]
    rdd = 2.0 * (hm * r[2:] - (hm + hp) * r[1:-1] + hp * r[:-2]) / (
        hm * hp * (hm + hp)
    )
    values = closed_tension_grid(spec, t[1:-1], r[1:-1], v[1:-1], rdd, margin)
    max_abs = float(np.max(np.abs(values)))

    slope0 = (r[1] - r[0]) / (t[1] - t[0])
    err0 = abs(r[0] - slope0 * t[0])
    slope1 = (r[-1] - r[-2]) / (t[-1] - t[-2])
    err1 = abs(r[-1] - (spec.k * L - slope1 * (L - t[-1])))
    return max_abs, (float(err0), float(err1))
