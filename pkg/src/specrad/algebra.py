"""Generic engine over a unital normed algebra instance.

Every operation here is parameterized over an :class:`Algebra` supplying
add / scale / mul / norm plus the identity and zero elements, so the same
code drives dense matrices and Wiener-algebra elements.  High powers are
carried in renormalized form (unit-norm direction plus accumulated log
magnitude) so that norm(x^k) can be reported for k far beyond the point
where the raw power would overflow or underflow.
"""

from __future__ import annotations

import abc
import math
from dataclasses import dataclass
from typing import Any

from .errors import BudgetExceeded, NotConvergent
from .reports import ConvergenceReport, build_report

DEFAULT_PROBE_DEPTH = 32


class Algebra(abc.ABC):
    """Operations a concrete unital normed algebra must supply.

    Instances are expected to satisfy norm(one) == 1, absolute
    homogeneity, the triangle inequality, and submultiplicativity
    norm(mul(x, y)) <= norm(x) * norm(y).  Elements are treated as
    immutable values; no operation may mutate its inputs.
    """

    @property
    @abc.abstractmethod
    def one(self) -> Any: ...

    @property
    @abc.abstractmethod
    def zero(self) -> Any: ...

    @abc.abstractmethod
    def add(self, x, y): ...

    @abc.abstractmethod
    def scale(self, alpha, x): ...

    @abc.abstractmethod
    def mul(self, x, y): ...

    @abc.abstractmethod
    def norm(self, x) -> float: ...

    @abc.abstractmethod
    def is_zero(self, x) -> bool:
        """Structural test for the zero element (not norm-based)."""

    def sub(self, x, y):
        return self.add(x, self.scale(-1.0, y))

    def power(self, x, n: int):
        """x^n by repeated multiplication; n = 0 gives the identity."""
        if n < 0:
            raise ValueError("negative powers are not defined here")
        acc = self.one
        for _ in range(n):
            acc = self.mul(acc, x)
        return acc

    def close(self, x, y, rtol: float = 1e-9, floor: float = 1e-12) -> bool:
        """norm(x - y) relative to the larger operand norm, with an absolute floor."""
        d = self.norm(self.sub(x, y))
        return d <= max(rtol * max(self.norm(x), self.norm(y)), floor)


@dataclass(frozen=True)
class NormalizedPower:
    """Overflow-safe carrier for x^k: unit-norm direction plus log magnitude.

    The true power is exp(log_norm) * direction; log_norm == -inf encodes
    an exactly zero power.
    """

    direction: Any
    log_norm: float

    def reconstruct(self, alg: Algebra):
        if self.log_norm == -math.inf:
            return alg.zero
        return alg.scale(math.exp(self.log_norm), self.direction)


def normalized_powers(alg: Algebra, x, n: int):
    """Yield NormalizedPower carriers for x^1 .. x^n."""
    if n < 1:
        raise ValueError("need n >= 1")
    nx = alg.norm(x)
    if nx == 0.0 and not alg.is_zero(x):
        raise ValueError("norm(x) = 0 for a nonzero x: instance violates the norm axioms")
    if nx == 0.0:
        for _ in range(n):
            yield NormalizedPower(alg.zero, -math.inf)
        return
    direction = alg.scale(1.0 / nx, x)
    log_norm = math.log(nx)
    yield NormalizedPower(direction, log_norm)
    for _ in range(2, n + 1):
        w = alg.mul(direction, x)
        nw = alg.norm(w)
        if nw == 0.0:
            log_norm = -math.inf
            direction = alg.zero
        else:
            log_norm += math.log(nw)
            direction = alg.scale(1.0 / nw, w)
        yield NormalizedPower(direction, log_norm)


def power_norms(alg: Algebra, x, n: int) -> ConvergenceReport:
    """Table of norm(x^k), its k-th root, and the running minimum, k = 1..n.

    The value sequence is submultiplicative (up to roundoff), so the
    running minimum is a certified upper bound for the limit of the roots
    and hence for the spectral radius.
    """
    logs = [p.log_norm for p in normalized_powers(alg, x, n)]
    return build_report(logs, value_header="norm")


def spectral_radius_upper(alg: Algebra, x, n: int) -> float:
    """min over k <= n of norm(x^k)^(1/k): certified spectral radius bound."""
    return power_norms(alg, x, n).certified_upper


def neumann_inverse(
    alg: Algebra,
    x,
    tol: float = 1e-10,
    max_terms: int = 100_000,
    probe_depth: int = DEFAULT_PROBE_DEPTH,
):
    """Inverse of (e - x) as the truncated geometric series sum of x^j.

    Powers up to ``probe_depth`` are probed for a certificate
    q = norm(x^k) < 1; without one the series has no convergence
    guarantee and NotConvergent is raised.  With a certificate, partial
    sums grouped in blocks of k have tail bounded by
    B * q^M / (1 - q) after M blocks, where B is the sum of norm(x^r)
    over r < k, and M is chosen to push that bound below ``tol``.  The
    returned sum y then satisfies norm((e - x) * y - e) <= tol.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if probe_depth < 1:
        raise ValueError("probe_depth must be >= 1")

    # Probe powers, keeping the certificate k with the fastest per-term decay.
    norms = [1.0]  # norm(x^0)
    term = alg.one
    best_k = None
    best_rate = math.inf
    for k in range(1, probe_depth + 1):
        term = alg.mul(term, x)
        nk = alg.norm(term)
        if nk == 0.0:
            # x is nilpotent at k: the series is the exact finite sum.
            partial = alg.one
            t = alg.one
            for _ in range(1, k):
                t = alg.mul(t, x)
                partial = alg.add(partial, t)
            return partial
        norms.append(nk)
        if nk < 1.0:
            rate = math.log(nk) / k
            if rate < best_rate:
                best_rate = rate
                best_k = k
    if best_k is None:
        min_root = min(norms[k] ** (1.0 / k) for k in range(1, probe_depth + 1))
        raise NotConvergent(
            "no k <= %d has norm(x^k) < 1 (min norm(x^k)^(1/k) = %.6g)"
            % (probe_depth, min_root)
        )

    k = best_k
    q = norms[k]
    head = math.fsum(norms[:k])  # sum of norm(x^r), r < k
    # smallest M with head * q^M / (1 - q) <= tol
    target = tol * (1.0 - q) / head
    blocks = 1 if target >= 1.0 else math.ceil(math.log(target) / math.log(q))
    blocks = max(blocks, 1)
    n_terms = blocks * k  # indices j = 0 .. n_terms - 1
    if n_terms > max_terms:
        raise BudgetExceeded(
            "tail bound needs %d terms (k=%d, q=%.6g) but max_terms=%d"
            % (n_terms, k, q, max_terms)
        )

    total = alg.one
    term = alg.one
    for _ in range(1, n_terms):
        term = alg.mul(term, x)
        if alg.is_zero(term):
            break
        total = alg.add(total, term)
    return total


def invert_near(alg: Algebra, x_inv, x, y, tol: float = 1e-10):
    """Inverse of y from a known inverse of a nearby x.

    Requires the open-set margin norm(y - x) < 1 / norm(x_inv); then
    y = x (e + x^{-1} (y - x)) reduces the problem to a Neumann series in
    -x^{-1}(y - x).  The result satisfies norm(y * result - e) <= 10*tol
    for moderately conditioned x.
    """
    inv_norm = alg.norm(x_inv)
    if inv_norm == 0.0:
        raise ValueError("x_inv has norm 0 and cannot be an inverse")
    delta = alg.sub(y, x)
    margin = alg.norm(delta)
    if margin * inv_norm >= 1.0:
        raise ValueError(
            "perturbation too large: norm(y - x) = %.6g >= 1/norm(x_inv) = %.6g"
            % (margin, 1.0 / inv_norm)
        )
    w = alg.scale(-1.0, alg.mul(x_inv, delta))
    series = neumann_inverse(alg, w, tol)
    return alg.mul(series, x_inv)


def resolvent(alg: Algebra, x, lam: complex, tol: float = 1e-10):
    """(lam*e - x)^{-1} via the instance's direct solver or a Neumann series.

    A direct solver is used whenever the instance provides one (raising
    Singular at spectrum points).  Otherwise |lam| must exceed the
    certified radius bound from 32 probed powers, and the factorization
    lam*e - x = lam*(e - x/lam) reduces the job to a Neumann series.
    """
    direct = getattr(alg, "direct_inverse", None)
    if direct is not None:
        shifted = alg.sub(alg.scale(lam, alg.one), x)
        return direct(shifted, tol)
    upper = spectral_radius_upper(alg, x, DEFAULT_PROBE_DEPTH)
    if abs(lam) <= upper:
        raise NotConvergent(
            "|lambda| = %.6g is not above the certified radius bound %.6g"
            % (abs(lam), upper)
        )
    series = neumann_inverse(alg, alg.scale(1.0 / lam, x), tol)
    return alg.scale(1.0 / lam, series)


def telescope_check(alg: Algebra, x, n: int) -> float:
    """Defect of the telescoping identity (e - x) * sum_{j<=n} x^j = e - x^{n+1}.

    Both the left- and right-factored forms are evaluated; the larger of
    the two defect norms is returned.  It should sit at machine scale
    (growing roughly linearly in n) for any element.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    partial = alg.one
    term = alg.one
    for _ in range(n):
        term = alg.mul(term, x)
        partial = alg.add(partial, term)
    x_next = alg.mul(term, x)  # x^{n+1}
    rhs = alg.sub(alg.one, x_next)
    e_minus_x = alg.sub(alg.one, x)
    left = alg.norm(alg.sub(alg.mul(e_minus_x, partial), rhs))
    right = alg.norm(alg.sub(alg.mul(partial, e_minus_x), rhs))
    return max(left, right)
