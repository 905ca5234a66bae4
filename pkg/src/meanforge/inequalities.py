"""Registry of the verified norm inequalities, the suite runner and the
out-of-range counterexample fuzzer.

Every inequality is encoded as a list of comparison steps.  A step says
that an affine combination of Ky Fan norms on the left is dominated by
one on the right; its margins (right minus left, one per Ky Fan order)
must all be nonnegative up to a relative tolerance whenever the case
parameters lie inside the registered validity ranges.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass, field

import numpy as np

from .dmap import DMap, KernelSpec
from .errors import RangeViolationError, UnknownCaseError
from .linalg import HpdMatrix, random_complex, random_hpd, svd_values
from .means import (heinz, heinz_nu_average, heinz_p_diff, heinz_p_sum,
                    heron, integral_mean)

DEFAULT_TOLERANCE = 1e-9
DEFAULT_CONDITION_RANGE = (0.05, 20.0)

# Unbounded alpha ranges are sampled on [1/2, ALPHA_CAP]; the Heron mean
# grows linearly in alpha, so small alpha is the tight regime.
ALPHA_CAP = 10.0

Term = tuple[float, np.ndarray]


@dataclass(frozen=True)
class Step:
    lhs: list[Term]
    rhs: list[Term]


@dataclass(frozen=True)
class InstanceTriple:
    a: HpdMatrix
    b: HpdMatrix
    x: np.ndarray
    seed: tuple = ()

    @property
    def dim(self) -> int:
        return self.a.dim


@dataclass(frozen=True)
class InequalityCase:
    id: str
    ranges: dict
    sampler: object  # rng -> params dict
    builder: object  # (InstanceTriple, params) -> list[Step]
    description: str = ""

    def in_range(self, params: dict) -> bool:
        for name, (lo, hi) in self.ranges.items():
            value = params.get(name)
            if value is None or not (lo <= value <= hi):
                return False
        return True


def step_margins(steps: list[Step]) -> tuple[list[np.ndarray], list[float]]:
    """Ky Fan margins and normalization scales for a list of steps.

    Singular values are computed once per distinct matrix object, so
    grid cases that reuse matrices across steps stay cheap.
    """
    cache: dict[int, np.ndarray] = {}

    def cumulative(m: np.ndarray) -> np.ndarray:
        c = cache.get(id(m))
        if c is None:
            c = np.cumsum(svd_values(m))
            cache[id(m)] = c
        return c

    margins, scales = [], []
    for step in steps:
        total = None
        for coef, m in step.rhs:
            contrib = coef * cumulative(m)
            total = contrib if total is None else total + contrib
        # normalization: 1 + trace norm of the right-hand side combination
        scale = 1.0 + float(total[-1])
        for coef, m in step.lhs:
            total = total - coef * cumulative(m)
        margins.append(total)
        scales.append(scale)
    return margins, scales


def evaluate(case: InequalityCase, inst: InstanceTriple, params: dict,
             override: bool = False) -> list[np.ndarray]:
    """Per-step, per-Ky-Fan-order margins for one instance."""
    if not override and not case.in_range(params):
        raise RangeViolationError(
            f"{case.id}: parameters {params} outside validity ranges")
    steps = case.builder(inst, params)
    margins, _ = step_margins(steps)
    return margins


# ---------------------------------------------------------------------------
# Builders

def _geo(inst: InstanceTriple) -> np.ndarray:
    return inst.a.power(0.5) @ inst.x @ inst.b.power(0.5)


def _sample_alpha(rng) -> float:
    # boundary point alpha = 1/2 drawn with positive probability
    if rng.uniform() < 0.1:
        return 0.5
    return float(rng.uniform(0.5, ALPHA_CAP))


def _build_eq11(inst, p):
    a, b, x = inst.a, inst.b, inst.x
    t = p["t"]
    lhs = heinz_p_sum(a, x, b, p["nu"], 1.0)
    rhs = a.matrix @ x + x @ b.matrix + t * _geo(inst)
    return [Step([(1.0, lhs)], [(2.0 / (2.0 + t), rhs)])]


def _build_eq12(inst, p):
    h = heinz(inst.a, inst.x, inst.b, p["nu"])
    f = heron(inst.a, inst.x, inst.b, p["alpha"])
    return [Step([(1.0, h)], [(1.0, f)])]


def _build_eq13(inst, p):
    g = _geo(inst)
    h = heinz(inst.a, inst.x, inst.b, p["nu"])
    f = heron(inst.a, inst.x, inst.b, p["alpha"])
    return [Step([(1.0, g)], [(1.0, h)]), Step([(1.0, h)], [(1.0, f)])]


def _build_ref_ali(inst, p):
    nu = p["nu"]
    r0 = min(nu, 1.0 - nu)
    h = heinz(inst.a, inst.x, inst.b, nu)
    f = heron(inst.a, inst.x, inst.b, p["alpha"])
    return [Step([(1.0, h)],
                 [(4.0 * r0 - 1.0, _geo(inst)), (2.0 * (1.0 - 2.0 * r0), f)])]


def _build_eq14_chain(inst, p):
    g = _geo(inst)
    im = integral_mean(inst.a, inst.x, inst.b)
    f = heron(inst.a, inst.x, inst.b, p["alpha"])
    return [Step([(1.0, g)], [(1.0, im)]), Step([(1.0, im)], [(1.0, f)])]


ALPHA_MONO_GRID = tuple(np.round(np.arange(0.5, 10.01, 0.5), 10))
ALPHA_SMALL_GRID = (0.0, 0.1, 0.2, 0.3, 0.4)


def _build_alpha_mono(inst, p):
    herons = {alpha: heron(inst.a, inst.x, inst.b, alpha)
              for alpha in ALPHA_MONO_GRID + ALPHA_SMALL_GRID}
    steps = [Step([(1.0, herons[a1])], [(1.0, herons[a2])])
             for a1, a2 in zip(ALPHA_MONO_GRID, ALPHA_MONO_GRID[1:])]
    half = herons[ALPHA_MONO_GRID[0]]
    steps += [Step([(1.0, herons[a])], [(1.0, half)])
              for a in ALPHA_SMALL_GRID]
    return steps


def _convex_chain(inst, p, mids):
    """H_nu <= mid_1 <= ... <= mid_k <= F_alpha as successive steps."""
    h = heinz(inst.a, inst.x, inst.b, p["nu"])
    f = heron(inst.a, inst.x, inst.b, p["alpha"])
    chain = [h] + mids + [f]
    return [Step([(1.0, lo)], [(1.0, hi)])
            for lo, hi in zip(chain, chain[1:])]


def _build_eq22(inst, p):
    beta = p["beta"]
    mid = ((1.0 - beta) * _geo(inst)
           + beta * heinz(inst.a, inst.x, inst.b, 0.25))
    return _convex_chain(inst, p, [mid])


def _build_eq23(inst, p):
    beta = p["beta"]
    mid = ((1.0 - beta) * heinz(inst.a, inst.x, inst.b, 3 / 8)
           + beta * heinz(inst.a, inst.x, inst.b, 0.25))
    return _convex_chain(inst, p, [mid])


def _build_eq27(inst, p):
    beta = p["beta"]
    mid = ((1.0 - beta) * heinz(inst.a, inst.x, inst.b, 5 / 16)
           + beta * heinz(inst.a, inst.x, inst.b, 0.25))
    return _convex_chain(inst, p, [mid])


def _build_eq28(inst, p):
    beta, gamma = p["beta"], p["gamma"]
    h38 = heinz(inst.a, inst.x, inst.b, 3 / 8)
    mid1 = (1.0 - gamma) * h38 + gamma * heinz(inst.a, inst.x, inst.b, 5 / 16)
    mid2 = (1.0 - beta) * h38 + beta * heinz(inst.a, inst.x, inst.b, 0.25)
    return _convex_chain(inst, p, [mid1, mid2])


def _build_eq29(inst, p):
    m1 = 0.5 * (heinz(inst.a, inst.x, inst.b, 1 / 8)
                + heinz(inst.a, inst.x, inst.b, 3 / 8))
    im = integral_mean(inst.a, inst.x, inst.b)
    m2 = 0.5 * (heinz(inst.a, inst.x, inst.b, 0.25)
                + heron(inst.a, inst.x, inst.b, 0.5))
    return _convex_chain(inst, p, [m1, im, m2])


def _make_avg_builder(lo, hi, factor):
    def build(inst, p):
        avg = heinz_nu_average(inst.a, inst.x, inst.b, lo, hi)
        f = heron(inst.a, inst.x, inst.b, p["alpha"])
        return [Step([(1.0, avg)], [(factor, f)])]
    return build


def _build_eq210(inst, p):
    a, b, x = inst.a, inst.b, inst.x
    pw, nu, r, t = p["p"], p["nu"], p["r"], p["t"]
    lhs = heinz_p_sum(a, x, b, r, pw)
    rhs = (a.power(pw) @ x + x @ b.power(pw)
           + t * heinz_p_sum(a, x, b, nu, pw))
    return [Step([(1.0 + t, lhs)], [(1.0, rhs)])]


def _build_eq211(inst, p):
    # perturbation written as t (A^(p-nu) X B^nu - A^nu X B^(p-nu)) so the
    # underlying kernel is sinh(pD) + t sinh((p-2 nu)D) for nu <= p/2
    a, b, x = inst.a, inst.b, inst.x
    pw, nu, r, t = p["p"], p["nu"], p["r"], p["t"]
    lhs = heinz_p_diff(a, x, b, r, pw)
    rhs = (a.power(pw) @ x - x @ b.power(pw)
           + t * heinz_p_diff(a, x, b, pw - nu, pw))
    return [Step([(1.0 + t, lhs)], [(abs(pw - 2.0 * r), rhs)])]


def _build_eq212(inst, p):
    a, b, x = inst.a, inst.b, inst.x
    pw, nu, r, t = p["p"], p["nu"], p["r"], p["t"]
    big = heinz_p_sum(a, x, b, r, pw)
    small = (a.power(pw) @ x + x @ b.power(pw)
             + t * heinz_p_sum(a, x, b, nu, pw))
    return [Step([(1.0, small)], [(1.0 + t, big)])]


def _build_eq213(inst, p):
    a, b, x = inst.a, inst.b, inst.x
    pw, nu, r, t = p["p"], p["nu"], p["r"], p["t"]
    big = heinz_p_diff(a, x, b, r, pw)
    small = (a.power(pw) @ x - x @ b.power(pw)
             + t * heinz_p_diff(a, x, b, nu, pw))
    factor = ((1.0 + t) * pw - 2.0 * t * nu) / (pw - 2.0 * r)
    return [Step([(1.0, small)], [(factor, big)])]


F_NU_GRID_POINTS = 41


def _build_f_nu_shape(inst, p):
    pw = p["p"]
    grid = np.linspace(pw / 2.0 - 1.0, pw / 2.0 + 1.0, F_NU_GRID_POINTS)
    mats = [heinz_p_sum(inst.a, inst.x, inst.b, nu, pw) for nu in grid]
    center = F_NU_GRID_POINTS // 2
    steps = []
    # nonincreasing left of p/2, nondecreasing right of it
    for i in range(center):
        steps.append(Step([(1.0, mats[i + 1])], [(1.0, mats[i])]))
    for i in range(center, F_NU_GRID_POINTS - 1):
        steps.append(Step([(1.0, mats[i])], [(1.0, mats[i + 1])]))
    # midpoint convexity on consecutive triples
    for i in range(1, F_NU_GRID_POINTS - 1):
        steps.append(Step([(2.0, mats[i])],
                          [(1.0, mats[i - 1]), (1.0, mats[i + 1])]))
    return steps


_PROP_KINDS = {
    "prop2.1-1": "coshRatioT",
    "prop2.1-2": "coshComboRatio",
    "prop2.1-3": "sinhRatioT",
    "prop2.1-4": "sinhComboRatio",
}


def _make_prop_builder(kind):
    keys = {"coshRatioT": ("r", "s1", "s2", "t"),
            "coshComboRatio": ("r", "rp", "s1", "s2", "alpha", "beta"),
            "sinhRatioT": ("r", "s1", "s2", "t"),
            "sinhComboRatio": ("r", "rp", "s1", "s2", "alpha", "beta")}[kind]

    def build(inst, p):
        spec = KernelSpec(kind, {k: p[k] for k in keys})
        frame = DMap(inst.a, inst.b)
        t_base = frame.base(inst.x)
        mapped = frame.apply(spec, inst.x)
        return [Step([(1.0, mapped)], [(1.0, t_base)])]
    return build


# ---------------------------------------------------------------------------
# Samplers

def _sample_prop_cosh(rng, combo):
    s2 = float(rng.uniform(0.0, 1.0))
    s1 = float(rng.uniform(s2, s2 + 1.0))
    m = 0.5 * (s1 + s2)
    p = {"s1": s1, "s2": s2, "r": float(rng.uniform(-m, m))}
    if combo:
        p["rp"] = float(rng.uniform(-m, m))
        p["alpha"] = float(rng.uniform(0.0, 1.0))
        p["beta"] = float(rng.uniform(0.5, 1.0))
    else:
        p["t"] = float(rng.uniform(-0.999, 1.0))
    return p


def _sample_prop_sinh(rng, combo):
    s2 = float(rng.uniform(0.0, 2.0))
    lo = max(s2, 2.0 - s2)
    s1 = float(rng.uniform(lo, lo + 1.0))
    m = 0.5 * (s1 + s2)
    p = {"s1": s1, "s2": s2, "r": float(rng.uniform(-m, m))}
    if combo:
        p["rp"] = float(rng.uniform(-m, m))
        p["alpha"] = float(rng.uniform(0.0, 1.0))
        p["beta"] = float(rng.uniform(0.5, 1.0))
    else:
        p["t"] = float(rng.uniform(-0.999, 1.0))
    return p


def _sample_eq210(rng):
    pw = float(rng.uniform(0.05, 2.0))
    nu = float(rng.uniform(0.0, pw))
    r = float(rng.uniform(nu / 2.0, pw / 2.0))
    return {"p": pw, "nu": nu, "r": r, "t": float(rng.uniform(-1.0, 1.0))}


def _sample_eq211(rng):
    pw = float(rng.uniform(1.0, 3.0))
    nu = float(rng.uniform(0.0, min(pw / 2.0, pw - 1.0)))
    r = float(rng.uniform(nu / 2.0, pw / 2.0))
    return {"p": pw, "nu": nu, "r": r, "t": float(rng.uniform(-1.0, 1.0))}


def _sample_eq212(rng):
    r = float(rng.uniform(-1.5, 0.0))
    pw = float(rng.uniform(0.05, 2.0))
    nu = float(rng.uniform(r, pw / 2.0))
    return {"p": pw, "nu": nu, "r": r, "t": float(rng.uniform(0.0, 8.0))}


def _window_sampler(nu_lo, nu_hi, beta=False, gamma=False):
    def sample(rng):
        p = {"nu": float(rng.uniform(nu_lo, nu_hi)),
             "alpha": _sample_alpha(rng)}
        if beta:
            p["beta"] = float(rng.uniform(0.5, 1.0))
        if gamma:
            p["gamma"] = float(rng.uniform(0.5, 1.0))
        return p
    return sample


# ---------------------------------------------------------------------------
# Registry

def _build_registry() -> dict[str, InequalityCase]:
    cases = [
        InequalityCase(
            "eq1.1", {"nu": (0.25, 0.75), "t": (-2.0, 2.0)},
            lambda rng: {"nu": float(rng.uniform(0.25, 0.75)),
                         "t": float(rng.uniform(-1.999, 2.0))},
            _build_eq11,
            "un-halved Heinz sum vs weighted arithmetic/geometric mix"),
        InequalityCase(
            "eq1.2", {"nu": (0.25, 0.75), "alpha": (0.5, np.inf)},
            _window_sampler(0.25, 0.75), _build_eq12,
            "Heinz mean dominated by Heron mean"),
        InequalityCase(
            "eq1.3", {"nu": (0.25, 0.75), "alpha": (0.5, np.inf)},
            _window_sampler(0.25, 0.75), _build_eq13,
            "geometric <= Heinz <= Heron chain"),
        InequalityCase(
            "refAli", {"nu": (0.25, 0.75), "alpha": (0.5, np.inf)},
            _window_sampler(0.25, 0.75), _build_ref_ali,
            "convex refinement with weight 4 r0 - 1"),
        InequalityCase(
            "eq1.4-chain", {"alpha": (0.5, np.inf)},
            lambda rng: {"alpha": _sample_alpha(rng)}, _build_eq14_chain,
            "geometric <= integral mean <= Heron"),
        InequalityCase(
            "eq1.4-alpha-mono", {},
            lambda rng: {}, _build_alpha_mono,
            "Heron norm nondecreasing in alpha past 1/2"),
        InequalityCase(
            "eq2.2", {"nu": (3 / 8, 5 / 8), "beta": (0.5, 1.0),
                      "alpha": (0.5, np.inf)},
            _window_sampler(3 / 8, 5 / 8, beta=True), _build_eq22,
            "interpolant (1-b) geometric + b H_{1/4}"),
        InequalityCase(
            "eq2.3", {"nu": (5 / 16, 11 / 16), "beta": (0.5, 1.0),
                      "alpha": (0.5, np.inf)},
            _window_sampler(5 / 16, 11 / 16, beta=True), _build_eq23,
            "interpolant (1-b) H_{3/8} + b H_{1/4}"),
        InequalityCase(
            "eq2.7", {"nu": (9 / 32, 23 / 32), "beta": (0.5, 1.0),
                      "alpha": (0.5, np.inf)},
            _window_sampler(9 / 32, 23 / 32, beta=True), _build_eq27,
            "interpolant (1-b) H_{5/16} + b H_{1/4}"),
        InequalityCase(
            "eq2.8", {"nu": (11 / 32, 21 / 32), "beta": (0.5, 1.0),
                      "gamma": (0.5, 1.0), "alpha": (0.5, np.inf)},
            _window_sampler(11 / 32, 21 / 32, beta=True, gamma=True),
            _build_eq28,
            "double interpolant chain"),
        InequalityCase(
            "eq2.9", {"nu": (0.25, 0.75), "alpha": (0.5, np.inf)},
            _window_sampler(0.25, 0.75), _build_eq29,
            "four-step refinement through the integral mean"),
        InequalityCase(
            "avg-12", {"alpha": (0.5, np.inf)},
            lambda rng: {"alpha": _sample_alpha(rng)},
            _make_avg_builder(0.25, 0.75, 0.5),
            "nu-average over [1/4, 3/4] vs (1/2) Heron"),
        InequalityCase(
            "avg-14", {"alpha": (0.5, np.inf)},
            lambda rng: {"alpha": _sample_alpha(rng)},
            _make_avg_builder(3 / 8, 5 / 8, 0.25),
            "nu-average over [3/8, 5/8] vs (1/4) Heron"),
        InequalityCase(
            "avg-716", {"alpha": (0.5, np.inf)},
            lambda rng: {"alpha": _sample_alpha(rng)},
            _make_avg_builder(9 / 32, 23 / 32, 7 / 16),
            "nu-average over [9/32, 23/32] vs (7/16) Heron"),
        InequalityCase(
            "avg-516", {"alpha": (0.5, np.inf)},
            lambda rng: {"alpha": _sample_alpha(rng)},
            _make_avg_builder(11 / 32, 21 / 32, 5 / 16),
            "nu-average over [11/32, 21/32] vs (5/16) Heron"),
        InequalityCase(
            "eq2.10", {"t": (-1.0, 1.0)},
            _sample_eq210, _build_eq210,
            "(1+t) p-Heinz sum vs endpoint sum plus t perturbation"),
        InequalityCase(
            "eq2.11", {"t": (-1.0, 1.0)},
            _sample_eq211, _build_eq211,
            "p-Heinz difference vs |p-2r| scaled endpoint difference"),
        InequalityCase(
            "eq2.12", {"t": (0.0, np.inf)},
            _sample_eq212, _build_eq212,
            "reversed sum inequality for r <= 0 <= p"),
        InequalityCase(
            "eq2.13", {"t": (0.0, np.inf)},
            _sample_eq212, _build_eq213,
            "reversed difference inequality with the (p, nu, r) factor"),
        InequalityCase(
            "f-nu-shape", {"p": (0.5, 2.0)},
            lambda rng: {"p": float(rng.uniform(0.5, 2.0))},
            _build_f_nu_shape,
            "nu profile of the p-Heinz sum norm: V-shape and convexity"),
    ]
    for cid, kind in _PROP_KINDS.items():
        combo = kind.endswith("ComboRatio")
        sampler = ((lambda rng, c=combo: _sample_prop_sinh(rng, c))
                   if kind.startswith("sinh")
                   else (lambda rng, c=combo: _sample_prop_cosh(rng, c)))
        cases.append(InequalityCase(
            cid, {}, sampler, _make_prop_builder(kind),
            f"sampled contractivity of the {kind} kernel family"))
    return {c.id: c for c in cases}


REGISTRY = _build_registry()
CASE_IDS = tuple(REGISTRY)


def get_case(case_id: str) -> InequalityCase:
    try:
        return REGISTRY[case_id]
    except KeyError:
        raise UnknownCaseError(case_id) from None


# ---------------------------------------------------------------------------
# Suite runner

@dataclass
class CaseResult:
    id: str
    min_margin: float = np.inf
    violations: int = 0
    worst_seed: list = field(default_factory=lambda: [0, 0])
    steps: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"id": self.id, "minMargin": self.min_margin,
                "violations": self.violations, "worstSeed": self.worst_seed,
                "steps": self.steps}

    @classmethod
    def from_dict(cls, d: dict) -> "CaseResult":
        return cls(d["id"], d["minMargin"], d["violations"],
                   list(d["worstSeed"]), list(d["steps"]))

    def merge(self, other: "CaseResult") -> None:
        if other.min_margin < self.min_margin:
            self.min_margin = other.min_margin
            self.worst_seed = other.worst_seed
        self.violations += other.violations
        if not self.steps:
            self.steps = list(other.steps)
        else:
            self.steps = [min(s, o) for s, o in zip(self.steps, other.steps)]


@dataclass
class VerificationReport:
    seed: int
    dims: list
    samples: int
    tolerance: float
    cases: list
    elapsed_seconds: float = 0.0

    @property
    def total_violations(self) -> int:
        return sum(c.violations for c in self.cases)

    def to_dict(self, include_timing: bool = True) -> dict:
        d = {"seed": self.seed, "dims": list(self.dims),
             "samples": self.samples, "tolerance": self.tolerance,
             "cases": [c.to_dict() for c in self.cases]}
        if include_timing:
            d["elapsedSeconds"] = self.elapsed_seconds
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "VerificationReport":
        return cls(d["seed"], list(d["dims"]), d["samples"], d["tolerance"],
                   [CaseResult.from_dict(c) for c in d["cases"]],
                   d.get("elapsedSeconds", 0.0))


def make_instance(seed: int, case_index: int, dim: int, sample: int,
                  condition_range=DEFAULT_CONDITION_RANGE
                  ) -> tuple[InstanceTriple, np.random.Generator]:
    """Instance and parameter stream for one (case, dim, sample) cell.

    Counter-derived from the master seed, so any subset of the suite
    reproduces exactly the same instances.
    """
    ss = np.random.SeedSequence(seed, spawn_key=(case_index, dim, sample))
    rng = np.random.default_rng(ss)
    a = random_hpd(dim, rng, condition_range)
    b = random_hpd(dim, rng, condition_range)
    x = random_complex(dim, rng)
    return InstanceTriple(a, b, x, seed=(case_index, dim, sample)), rng


def _run_case_dim(args) -> CaseResult:
    case_id, case_index, dim, samples, seed, tolerance, condition_range = args
    case = REGISTRY[case_id]
    result = CaseResult(case_id)
    for sample in range(samples):
        inst, rng = make_instance(seed, case_index, dim, sample,
                                  condition_range)
        params = case.sampler(rng)
        steps = case.builder(inst, params)
        margins, scales = step_margins(steps)
        if not result.steps:
            result.steps = [np.inf] * len(margins)
        worst = np.inf
        for i, (m, scale) in enumerate(zip(margins, scales)):
            normalized = float(np.min(m)) / scale
            result.steps[i] = min(result.steps[i], normalized)
            worst = min(worst, normalized)
            if normalized < -tolerance:
                result.violations += 1
        if worst < result.min_margin:
            result.min_margin = worst
            result.worst_seed = [dim, sample]
    return result


def run_suite(dims, samples: int, seed: int,
              tolerance: float = DEFAULT_TOLERANCE,
              case_ids=None,
              condition_range=DEFAULT_CONDITION_RANGE,
              workers: int | None = None) -> VerificationReport:
    """Sample every requested case over every dimension and report the
    worst normalized Ky Fan margins.  Deterministic given the seed."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    if case_ids is None:
        case_ids = list(CASE_IDS)
    for cid in case_ids:
        get_case(cid)
    if workers is None:
        workers = int(os.environ.get("MEANFORGE_THREADS", "1"))

    start = time.perf_counter()
    tasks = [(cid, CASE_IDS.index(cid), dim, samples, seed, tolerance,
              tuple(condition_range))
             for cid in case_ids for dim in dims]
    if workers > 1 and len(tasks) > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=workers) as pool:
            partials = list(pool.map(_run_case_dim, tasks))
    else:
        partials = [_run_case_dim(t) for t in tasks]

    by_case: dict[str, CaseResult] = {}
    for partial in partials:
        if partial.id in by_case:
            by_case[partial.id].merge(partial)
        else:
            by_case[partial.id] = partial
    cases = [by_case[cid] for cid in case_ids]
    elapsed = time.perf_counter() - start
    return VerificationReport(seed, list(dims), samples, tolerance,
                              cases, elapsed)


# ---------------------------------------------------------------------------
# Fuzzer

@dataclass
class FuzzFinding:
    case_id: str
    params: dict
    margin: float
    normalized_margin: float
    violation: bool
    instance: InstanceTriple
    evaluations: int


def _instance_margin(case, inst, params) -> tuple[float, float]:
    steps = case.builder(inst, params)
    margins, scales = step_margins(steps)
    raw = min(float(np.min(m)) for m in margins)
    normalized = min(float(np.min(m)) / s for m, s in zip(margins, scales))
    return raw, normalized


def fuzz(case: InequalityCase, overrides: dict, budget: int,
         rng: np.random.Generator, dim: int = 1,
         tolerance: float = DEFAULT_TOLERANCE,
         condition_range=(1e-3, 1e3)) -> FuzzFinding:
    """Hunt for negative margins: random restarts followed by coordinate
    descent on log-eigenvalues and the entries of X."""
    params = dict(case.sampler(rng))
    params.update(overrides)

    evals = 0
    best = None  # (raw, normalized, loga, logb, va, vb, x)

    def score(loga, logb, va, vb, x):
        nonlocal evals
        evals += 1
        inst = InstanceTriple(HpdMatrix.from_spectrum(np.exp(loga), va),
                              HpdMatrix.from_spectrum(np.exp(logb), vb), x)
        return _instance_margin(case, inst, params)

    n_random = max(1, budget // 3)
    while evals < n_random:
        a = random_hpd(dim, rng, condition_range)
        b = random_hpd(dim, rng, condition_range)
        x = random_complex(dim, rng)
        inst = InstanceTriple(a, b, x)
        raw, normalized = _instance_margin(case, inst, params)
        evals += 1
        state = (raw, normalized, np.log(a.eigenvalues),
                 np.log(b.eigenvalues), a.eigenvectors, b.eigenvectors, x)
        if best is None or raw < best[0]:
            best = state

    raw, normalized, loga, logb, va, vb, x = best
    loga, logb, x = loga.copy(), logb.copy(), x.copy()
    step = 0.5
    x_scale = max(1.0, float(np.max(np.abs(x))))
    while evals < budget and step > 1e-6:
        improved = False
        coords = ([("a", i) for i in range(dim)]
                  + [("b", i) for i in range(dim)]
                  + [("xr", ij) for ij in np.ndindex(dim, dim)]
                  + [("xi", ij) for ij in np.ndindex(dim, dim)])
        for kind, idx in coords:
            if evals >= budget:
                break
            for sign in (1.0, -1.0):
                if evals >= budget:
                    break
                la, lb, xx = loga.copy(), logb.copy(), x.copy()
                # eigenvalues kept inside e^+-80 so powers never overflow
                if kind == "a":
                    la[idx] = np.clip(la[idx] + sign * step, -80.0, 80.0)
                elif kind == "b":
                    lb[idx] = np.clip(lb[idx] + sign * step, -80.0, 80.0)
                elif kind == "xr":
                    xx[idx] += sign * step * x_scale
                else:
                    xx[idx] += 1j * sign * step * x_scale
                cand_raw, cand_norm = score(la, lb, va, vb, xx)
                if cand_raw < raw - 1e-15:
                    raw, normalized = cand_raw, cand_norm
                    loga, logb, x = la, lb, xx
                    improved = True
                    break
        if not improved:
            step *= 0.5

    inst = InstanceTriple(HpdMatrix.from_spectrum(np.exp(loga), va),
                          HpdMatrix.from_spectrum(np.exp(logb), vb), x)
    return FuzzFinding(case.id, params, raw, normalized,
                       normalized < -tolerance, inst, evals)
