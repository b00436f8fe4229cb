"""Floating-point sampling checks for statements outside the exact engine.

Covers the invariant-field formula on the group of invertible elements,
group multiplicativity of arbitrary (possibly non-polynomial) brackets, and
the logarithmic bracket on componentwise R^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .algebra import Algebra, AlgebraError
from .poisson import PolyTensor, evaluate
from .yang_baxter import RMatrix

DET_THRESHOLD = 1e-12


@dataclass(frozen=True)
class SamplePlan:
    seed: int = 0
    samples: int = 100
    low: float = -2.0
    high: float = 2.0
    tol: float = 1e-9

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError("sample count must be at least 1")
        if not self.tol > 0:
            raise ValueError("tolerance must be positive")
        if not self.low < self.high:
            raise ValueError("sampling range is empty")

    def rng(self) -> np.random.Generator:
        return np.random.default_rng(self.seed)


@dataclass
class NumericReport:
    name: str
    passed: bool
    max_abs: float
    max_rel: float
    worst_point: list | None
    samples: int
    tol: float
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "check": self.name,
            "pass": self.passed,
            "max_abs_residual": self.max_abs,
            "max_rel_residual": self.max_rel,
            "worst_point": self.worst_point,
            "samples": self.samples,
            "tol": self.tol,
            **self.extra,
        }


def structure_array(alg: Algebra) -> np.ndarray:
    a = np.zeros((alg.dim,) * 3)
    for (i, j, k), v in alg.structure.items():
        a[i, j, k] = float(v)
    return a


def left_mult(a: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Matrix of ``y -> x y``: entry [k, j] = sum_i x^i a[i, j, k]."""
    return np.einsum("i,ijk->kj", x, a)


def right_mult(a: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Matrix of ``y -> y x``."""
    return np.einsum("j,ijk->ki", x, a)


def is_invertible(a: np.ndarray, x: np.ndarray) -> bool:
    return abs(np.linalg.det(left_mult(a, x))) > DET_THRESHOLD


def r_array(r: RMatrix) -> np.ndarray:
    out = np.zeros((r.dim, r.dim))
    for (i, j), v in r.data.items():
        out[i, j] = float(v)
    return out


def drinfeld_tensor(alg: Algebra, r: RMatrix, x) -> np.ndarray:
    """``r^{pq} ((x e_p) (x) (x e_q) - (e_p x) (x) (e_q x))`` at an invertible x.

    Left-invariant fields are ``E_p(x) = x e_p``, right-invariant ones
    ``E'_p(x) = e_p x``.
    """
    a = structure_array(alg)
    x = np.asarray(x, dtype=float)
    if not is_invertible(a, x):
        raise AlgebraError("point is not invertible in the algebra")
    lx = left_mult(a, x)  # column p is x e_p
    rx = right_mult(a, x)  # column p is e_p x
    rm = r_array(r)
    return lx @ rm @ lx.T - rx @ rm @ rx.T


def _rel(residual: float, scale: float) -> float:
    return residual / scale if scale > 1 else residual


def _sample_invertible(rng, a, plan: SamplePlan, count: int, max_tries: int = 1000):
    n = a.shape[0]
    out = []
    tries = 0
    while len(out) < count:
        tries += 1
        if tries > max_tries * count:
            break
        x = rng.uniform(plan.low, plan.high, size=n)
        if is_invertible(a, x):
            out.append(x)
    return out


def drinfeld_proportionality(alg: Algebra, r: RMatrix, qt: PolyTensor, plan: SamplePlan = SamplePlan(),
                             normalize: bool = False) -> NumericReport:
    """Measure the constant ``kappa`` with ``drinfeld_tensor = kappa * qt(x)``.

    ``kappa`` is fixed at the first sample; the report carries the mean and
    variance of the per-sample least-squares ratio and the worst residual of
    ``D(x) - kappa * pi(x)``.  With ``normalize`` samples are scaled to unit
    Euclidean norm.
    """
    a = structure_array(alg)
    rng = plan.rng()
    points = _sample_invertible(rng, a, plan, plan.samples)
    if not points:
        raise AlgebraError("sampling produced no invertible points")
    if normalize:
        points = [p / np.linalg.norm(p) for p in points]
    ratios, pairs = [], []
    for x in points:
        d = drinfeld_tensor(alg, r, x)
        p = np.array(evaluate(qt, [float(v) for v in x]), dtype=float)
        denom = float(np.sum(p * p))
        ratios.append(float(np.sum(d * p)) / denom if denom > 0 else math.nan)
        pairs.append((x, d, p))
    finite = [k for k in ratios if not math.isnan(k)]
    if not finite:
        # identically zero bracket: proportionality is vacuous, residual is |D|
        kappa = 0.0
    else:
        kappa = finite[0]
    worst_abs, worst_rel, worst = 0.0, 0.0, None
    for x, d, p in pairs:
        res = float(np.max(np.abs(d - kappa * p)))
        rel = _rel(res, float(np.max(np.abs(p))))
        if rel > worst_rel or worst is None:
            worst_rel, worst_abs, worst = rel, res, x
    variance = float(np.var(finite)) if finite else 0.0
    passed = worst_rel <= plan.tol and variance < 1e-18
    return NumericReport(
        "drinfeld", passed, worst_abs, worst_rel, [float(v) for v in worst], len(points), plan.tol,
        {"kappa": kappa, "kappa_mean": float(np.mean(finite)) if finite else 0.0, "kappa_variance": variance},
    )


BracketEvaluator = Callable[[np.ndarray], np.ndarray]


def polynomial_evaluator(pi: PolyTensor) -> BracketEvaluator:
    def ev(x):
        return np.array(evaluate(pi, [float(v) for v in x]), dtype=float)

    return ev


def log_bracket(x) -> np.ndarray:
    """``{x, y} = x y log|x|`` on componentwise R^2."""
    v = x[0] * x[1] * math.log(abs(x[0]))
    return np.array([[0.0, v], [-v, 0.0]])


def multiplicativity_defect(a: np.ndarray, bracket: BracketEvaluator, y, z) -> np.ndarray:
    """``pi(y z) - R_z pi(y) R_z^T - L_y pi(z) L_y^T`` at one pair."""
    y = np.asarray(y, dtype=float)
    z = np.asarray(z, dtype=float)
    yz = np.einsum("i,j,ijk->k", y, z, a)
    rz = right_mult(a, z)
    ly = left_mult(a, y)
    return bracket(yz) - rz @ bracket(y) @ rz.T - ly @ bracket(z) @ ly.T


def group_multiplicativity_sample(alg: Algebra, bracket: BracketEvaluator, plan: SamplePlan = SamplePlan()) -> NumericReport:
    a = structure_array(alg)
    rng = plan.rng()
    ys = _sample_invertible(rng, a, plan, plan.samples)
    zs = _sample_invertible(rng, a, plan, plan.samples)
    if not ys or not zs:
        raise AlgebraError("sampling produced no invertible pairs; widen the range")
    worst_abs, worst_rel, worst = 0.0, 0.0, None
    for y, z in zip(ys, zs):
        d = multiplicativity_defect(a, bracket, y, z)
        res = float(np.max(np.abs(d)))
        yz = np.einsum("i,j,ijk->k", y, z, a)
        rel = _rel(res, float(np.max(np.abs(bracket(yz)))))
        if worst is None or rel > worst_rel:
            worst_abs, worst_rel, worst = res, rel, [float(v) for v in y] + [float(v) for v in z]
    return NumericReport("group", worst_rel <= plan.tol, worst_abs, worst_rel, worst, len(ys), plan.tol)


def iso_pushforward(x: float, y: float) -> tuple[float, float]:
    """Push the log bracket through ``xi = log x, eta = log y``.

    Returns ``({xi, eta}, xi)``; the chain rule gives
    ``{xi, eta} = (1/x)(1/y) x y log x``.
    """
    if x <= 0 or y <= 0:
        raise AlgebraError("pushforward needs positive coordinates")
    bracket = x * y * math.log(x)
    return (1.0 / x) * (1.0 / y) * bracket, math.log(x)


def iso_pushforward_check(plan: SamplePlan = SamplePlan(low=0.05, high=2.0)) -> NumericReport:
    if plan.low <= 0:
        raise AlgebraError("pushforward check needs a positive sampling range")
    rng = plan.rng()
    worst_abs, worst_rel, worst = 0.0, 0.0, None
    for _ in range(plan.samples):
        x, y = (float(v) for v in rng.uniform(plan.low, plan.high, size=2))
        pushed, xi = iso_pushforward(x, y)
        res = abs(pushed - xi)
        rel = _rel(res, abs(xi))
        if worst is None or rel > worst_rel:
            worst_abs, worst_rel, worst = res, rel, [float(x), float(y)]
    return NumericReport("iso", bool(worst_rel <= plan.tol), worst_abs, worst_rel, worst, plan.samples, plan.tol)
