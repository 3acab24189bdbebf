"""Numerical oracles for the trigonometric identities behind the ODE forms.

Four closed summation identities justify collapsing the per-direction sums
into the compact boundary value problem coefficients:

  sin-square   sum_i sin^2(r - i pi/g) / sin^2(t - i pi/g) * sin^2(gt)
                 = g ((g-1) sin^2(r-t) + sin^2(r + (g-1) t))
  sin-double   the r-derivative of the line above (sin 2(...) numerators)
  cotangent    g cot(gt) = sum_i cot(t - i pi/g)
  half-sum     sum_i m_i cot(t - i pi/g)
                 = (g/2) ((m0+m1) cot(gt) + (m0-m1) / sin(gt)),  g even,

all sums over i = 0..g-1 with multiplicities alternating by index parity.
Both sides are evaluated independently and returned for comparison; the
deviation |lhs - rhs| <= tol * (1 + |lhs|) is the mixed relative/absolute
acceptance everywhere, which copes with magnitudes from ~0 up to the large
values near the (excluded) poles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import OddG, PoleProximity

TAU = 2.0 * math.pi

#: Seed of the default sampling streams; configurable in every entry point.
DEFAULT_SEED = 375011

DEFAULT_SAMPLE_MARGIN = 1e-3


@dataclass(frozen=True)
class IdentitySample:
    g: int
    r: float
    t: float


def _check_g(g: int) -> int:
    # Sums over i = 0..g-1 only make sense for positive g.
    if not isinstance(g, int) or g < 1:
        raise ValueError(f"g must be a positive integer, got {g!r}")
    return g


def _check_regular(g: int, t, margin: float) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    step = math.pi / g
    dist = np.abs(t - np.round(t / step) * step)
    if np.any(dist < margin):
        raise PoleProximity(
            f"t within {margin:g} of the pole set (pi/{g})*Z"
        )
    return t


def _unpack(g, r, t):
    # the single-sample form passes an IdentitySample as the only argument
    if isinstance(g, IdentitySample):
        if r is not None or t is not None:
            raise TypeError("pass either an IdentitySample or explicit (g, r, t)")
        return g.g, g.r, g.t
    return g, r, t


def lemma_sin_sq(g, r=None, t=None, margin: float = 1e-8):
    """Both sides of the sin-square summation identity."""
    g, r, t = _unpack(g, r, t)
    g = _check_g(g)
    t = _check_regular(g, t, margin)
    r = np.asarray(r, dtype=float)
    sin_gt_sq = np.sin(np.remainder(g * t, TAU)) ** 2
    lhs = np.zeros(np.broadcast(r, t).shape)
    for i in range(g):
        off = i * math.pi / g
        lhs = lhs + np.sin(np.remainder(r - off, TAU)) ** 2 / np.sin(
            np.remainder(t - off, TAU)
        ) ** 2
    lhs = lhs * sin_gt_sq
    rhs = g * (
        (g - 1) * np.sin(np.remainder(r - t, TAU)) ** 2
        + np.sin(np.remainder(r + (g - 1) * t, TAU)) ** 2
    )
    return lhs, rhs


def lemma_sin_2r(g, r=None, t=None, margin: float = 1e-8):
    """Both sides of the sin-double-angle summation identity."""
    g, r, t = _unpack(g, r, t)
    g = _check_g(g)
    t = _check_regular(g, t, margin)
    r = np.asarray(r, dtype=float)
    sin_gt_sq = np.sin(np.remainder(g * t, TAU)) ** 2
    lhs = np.zeros(np.broadcast(r, t).shape)
    for i in range(g):
        off = i * math.pi / g
        lhs = lhs + np.sin(np.remainder(2.0 * (r - off), TAU)) / np.sin(
            np.remainder(t - off, TAU)
        ) ** 2
    lhs = lhs * sin_gt_sq
    rhs = g * (
        (g - 1) * np.sin(np.remainder(2.0 * (r - t), TAU))
        + np.sin(np.remainder(2.0 * (r + (g - 1) * t), TAU))
    )
    return lhs, rhs


def cotangent_identity(g, t, margin: float = 1e-8):
    """g*cot(gt) against the sum of shifted cotangents."""
    g = _check_g(g)
    t = _check_regular(g, t, margin)
    lhs = g * np.cos(np.remainder(g * t, TAU)) / np.sin(np.remainder(g * t, TAU))
    rhs = np.zeros(np.shape(t))
    for i in range(g):
        x = np.remainder(t - i * math.pi / g, TAU)
        rhs = rhs + np.cos(x) / np.sin(x)
    return lhs, rhs


def half_sum_split(g, m0, m1, t, margin: float = 1e-8):
    """Alternating cotangent sum against its two-term closed split (even g)."""
    g = _check_g(g)
    if g % 2 != 0:
        raise OddG(f"half-sum split requires even g, got {g}")
    t = _check_regular(g, t, margin)
    m0 = np.asarray(m0, dtype=float)
    m1 = np.asarray(m1, dtype=float)
    direct = np.zeros(np.broadcast(np.asarray(t), m0, m1).shape)
    for i in range(g):
        x = np.remainder(t - i * math.pi / g, TAU)
        mi = m0 if i % 2 == 0 else m1
        direct = direct + mi * np.cos(x) / np.sin(x)
    gt = np.remainder(g * np.asarray(t, dtype=float), TAU)
    split = 0.5 * g * ((m0 + m1) * np.cos(gt) / np.sin(gt) + (m0 - m1) / np.sin(gt))
    return direct, split


def mixed_deviation(lhs, rhs) -> float:
    """max |lhs - rhs| / (1 + |lhs|) over the arrays."""
    lhs = np.asarray(lhs, dtype=float)
    rhs = np.asarray(rhs, dtype=float)
    return float(np.max(np.abs(lhs - rhs) / (1.0 + np.abs(lhs))))


def sample_regular_t(
    g: int, n: int, rng: np.random.Generator, margin: float
) -> np.ndarray:
    """n points uniform in (0, pi), rejected until clear of the pole set."""
    step = math.pi / g
    t = rng.uniform(0.0, math.pi, size=n)
    while True:
        dist = np.abs(t - np.round(t / step) * step)
        bad = dist < margin
        if not np.any(bad):
            return t
        t[bad] = rng.uniform(0.0, math.pi, size=int(np.count_nonzero(bad)))


def identity_suite(
    g_max: int = 12,
    samples: int = 10_000,
    seed: int = DEFAULT_SEED,
    margin: float = DEFAULT_SAMPLE_MARGIN,
) -> dict[str, dict]:
    """Evaluate all four identities over seeded random samples.

    Each identity receives at least ``samples`` points spread over
    g = 1..g_max (even g only for the half-sum split).  Returns the maximum
    mixed deviation and sample count per identity.
    """
    rng = np.random.default_rng(seed)
    names = ("lemma_sin_sq", "lemma_sin_2r", "cotangent_identity", "half_sum_split")
    dev = {name: 0.0 for name in names}
    count = {name: 0 for name in names}

    per_g = -(-samples // g_max)  # ceil
    even_gs = [g for g in range(1, g_max + 1) if g % 2 == 0]
    per_even = -(-samples // max(len(even_gs), 1))
    for g in range(1, g_max + 1):
        t = sample_regular_t(g, per_g, rng, margin)
        r = rng.uniform(0.0, math.pi, size=per_g)
        dev["lemma_sin_sq"] = max(dev["lemma_sin_sq"], mixed_deviation(*lemma_sin_sq(g, r, t)))
        dev["lemma_sin_2r"] = max(dev["lemma_sin_2r"], mixed_deviation(*lemma_sin_2r(g, r, t)))
        dev["cotangent_identity"] = max(
            dev["cotangent_identity"], mixed_deviation(*cotangent_identity(g, t))
        )
        for name in ("lemma_sin_sq", "lemma_sin_2r", "cotangent_identity"):
            count[name] += per_g
        if g % 2 == 0:
            th = sample_regular_t(g, per_even, rng, margin)
            m0 = rng.integers(1, 10, size=per_even)
            m1 = rng.integers(1, 10, size=per_even)
            dev["half_sum_split"] = max(
                dev["half_sum_split"], mixed_deviation(*half_sum_split(g, m0, m1, th))
            )
            count["half_sum_split"] += per_even

    return {
        name: {"max_mixed_deviation": dev[name], "samples": count[name]}
        for name in names
    }
