"""Weighted shift operator on finitely supported sequences.

With nonincreasing weights alpha_1 >= alpha_2 >= ..., the operator
(T x)_j = alpha_j * x_{j+1} has operator norm of T^l equal to the product
of the first l weights, in every l^p norm: the window product starting at
j = 1 dominates every later window, and the basis vector e_{l+1} attains
it.  The l-th roots of those products are geometric means of the weights
and converge to the tail weight, the infimum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .reports import ConvergenceReport, build_report, fmt17


@dataclass(frozen=True)
class WeightedShift:
    """Nonincreasing weight prefix; the weight is constant past the prefix."""

    weights: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(float(w) for w in self.weights))
        if not self.weights:
            raise ValueError("need at least one weight")
        prev = math.inf
        for i, w in enumerate(self.weights):
            if not w >= 0.0:
                raise ValueError("weight alpha_%d = %r is negative or NaN" % (i + 1, w))
            if w > prev:
                raise ValueError(
                    "weights must be nonincreasing: alpha_%d = %r > alpha_%d = %r"
                    % (i + 1, w, i, prev)
                )
            prev = w

    @property
    def tail(self) -> float:
        """The constant continuation value, which is also the weight infimum."""
        return self.weights[-1]

    def weight(self, j: int) -> float:
        """alpha_j for j >= 1, constant at the last stored value beyond the prefix."""
        if j < 1:
            raise ValueError("weight indices start at 1")
        return self.weights[min(j, len(self.weights)) - 1]


@dataclass(frozen=True)
class FiniteVector:
    """Finitely supported sequence (indices >= 1) with an attached p-norm."""

    values: dict[int, complex]
    p: float

    def __post_init__(self):
        if not (self.p >= 1.0):
            raise ValueError("p must be in [1, inf]")
        vals = {}
        for j, v in self.values.items():
            if int(j) < 1:
                raise ValueError("indices start at 1, got %r" % (j,))
            z = complex(v)
            if z != 0:
                vals[int(j)] = z
        object.__setattr__(self, "values", vals)

    def norm(self) -> float:
        if not self.values:
            return 0.0
        mags = [abs(v) for v in self.values.values()]
        if self.p == math.inf:
            return max(mags)
        return math.fsum(m**self.p for m in mags) ** (1.0 / self.p)


def unit_vector(j: int, p: float) -> FiniteVector:
    return FiniteVector({j: 1.0 + 0j}, p)


def apply_power(shift: WeightedShift, x: FiniteVector, power: int) -> FiniteVector:
    """T^l x, computed directly: (T^l x)_j = (prod of alpha_j..alpha_{j+l-1}) * x_{j+l}."""
    if power < 1:
        raise ValueError("power must be >= 1")
    out: dict[int, complex] = {}
    for m, v in x.values.items():
        j = m - power
        if j < 1:
            continue  # shifted off the front
        coeff = 1.0
        for i in range(j, m):
            coeff *= shift.weight(i)
            if coeff == 0.0:
                break
        if coeff != 0.0:
            out[j] = coeff * v
    return FiniteVector(out, x.p)


def power_norm_formula(shift: WeightedShift, power: int) -> float:
    """Operator norm of T^l: the product of the first l weights.

    Evaluated as the exponential of summed logs (a zero weight
    short-circuits to 0), since thousands of sub-unit factors underflow
    a direct product.
    """
    if power < 1:
        raise ValueError("power must be >= 1")
    total = 0.0
    for j in range(1, power + 1):
        w = shift.weight(j)
        if w == 0.0:
            return 0.0
        total += math.log(w)
    return math.exp(total)


def op_norm_empirical(
    shift: WeightedShift,
    power: int,
    p: float,
    trials: int,
    seed: int = 0,
) -> tuple[float, float]:
    """Attained operator norm of T^l plus the best random Rayleigh-type ratio.

    The basis vector e_{l+1} is extremal (the leading window product
    dominates when weights are nonincreasing), so ``attained`` equals the
    product formula.  ``max_random_ratio`` samples random finitely
    supported vectors and never exceeds attained beyond float rounding.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    attained = apply_power(shift, unit_vector(power + 1, p), power).norm()
    rng = np.random.default_rng(seed)
    best = 0.0
    for _ in range(trials):
        size = int(rng.integers(1, 12))
        indices = rng.integers(1, power + 40, size=size)
        values: dict[int, complex] = {}
        for idx in indices:
            values[int(idx)] = complex(rng.standard_normal(), rng.standard_normal())
        x = FiniteVector(values, p)
        nx = x.norm()
        if nx == 0.0:
            continue
        best = max(best, apply_power(shift, x, power).norm() / nx)
    return attained, best


def shift_limit_experiment(shift: WeightedShift, max_power: int) -> ConvergenceReport:
    """Roots of the power-norm products for l = 1..max_power.

    The roots are geometric means of the leading weights; their running
    minimum converges to the tail weight, which is the infimum of the
    (nonincreasing) weight sequence.
    """
    if max_power < 1:
        raise ValueError("max_power must be >= 1")
    logs = []
    total = 0.0
    for l in range(1, max_power + 1):
        if total != -math.inf:
            w = shift.weight(l)
            total = total + math.log(w) if w > 0.0 else -math.inf
        logs.append(total)
    return build_report(logs, value_header="norm")


# --- closed-form weight families ------------------------------------------

def constant_weights(c: float, m: int) -> WeightedShift:
    return WeightedShift((c,) * m)


def geometric_weights(r: float, m: int) -> WeightedShift:
    """alpha_j = r^j; needs r <= 1 to be nonincreasing."""
    return WeightedShift(tuple(r**j for j in range(1, m + 1)))


def harmonic_weights(a: float, b: float, m: int) -> WeightedShift:
    """alpha_j = a + b/j, decaying toward a; needs a, b >= 0."""
    if a < 0 or b < 0:
        raise ValueError("need a, b >= 0 for nonnegative nonincreasing weights")
    return WeightedShift(tuple(a + b / j for j in range(1, m + 1)))


# --- CSV interface ----------------------------------------------------------

def weights_to_csv(shift: WeightedShift) -> str:
    lines = ["j,alpha"]
    for j, w in enumerate(shift.weights, start=1):
        lines.append("%d,%s" % (j, fmt17(w)))
    return "\n".join(lines) + "\n"


def read_weights_csv(text: str) -> WeightedShift:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0].lower().replace(" ", "") != "j,alpha":
        raise ValueError("expected header 'j,alpha'")
    weights = []
    for i, ln in enumerate(lines[1:], start=1):
        parts = ln.split(",")
        if len(parts) != 2:
            raise ValueError("bad row %r" % ln)
        if int(parts[0]) != i:
            raise ValueError("weight indices must run 1..M in order")
        weights.append(float(parts[1]))
    return WeightedShift(tuple(weights))
