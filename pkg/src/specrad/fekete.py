"""Engine for submultiplicative sequences.

A nonnegative sequence a_1, a_2, ... is submultiplicative when
a_{j+l} <= a_j * a_l for every j, l >= 1.  The k-th roots a_k^{1/k} of
such a sequence converge to the infimum of all the roots, so any finite
prefix certifies an upper bound for the limit: the minimum root seen so
far.  A prefix can never certify a lower bound, because the infimum may
be approached only at unseen indices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .reports import RootReport, build_report, fmt17

DEFAULT_TOL_REL = 1e-9


@dataclass(frozen=True)
class PrefixSequence:
    """Finite prefix a_1..a_N of a nonnegative sequence.

    ``has_unit_head`` marks the convention that an implicit a_0 = 1
    precedes the stored entries.  Index 1 always maps to values[0];
    the head is never stored as an array entry.
    """

    values: tuple[float, ...]
    has_unit_head: bool = False

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        for i, v in enumerate(self.values):
            if not v >= 0.0:  # also rejects NaN
                raise ValueError("entry a_%d = %r is negative or NaN" % (i + 1, v))

    def __len__(self) -> int:
        return len(self.values)

    def a(self, j: int) -> float:
        """Entry a_j, with a_0 = 1 under the unit-head convention."""
        if j == 0:
            if not self.has_unit_head:
                raise ValueError("a_0 requested but has_unit_head is not set")
            return 1.0
        return self.values[j - 1]


def check_submultiplicative(
    seq: PrefixSequence, tol_rel: float = DEFAULT_TOL_REL
) -> list[tuple[int, int]]:
    """Return all pairs (j, l), j <= l, with a_{j+l} > a_j * a_l * (1 + tol_rel).

    An empty result means the prefix is consistent with being the start
    of a submultiplicative sequence.  The relative tolerance absorbs
    representation error in user-supplied floating data; (l, j) mirrors
    are omitted since the product a_j * a_l is symmetric.
    """
    a = seq.values
    n = len(a)
    violations = []
    for j in range(1, n // 2 + 1):
        for l in range(j, n - j + 1):
            if a[j + l - 1] > a[j - 1] * a[l - 1] * (1.0 + tol_rel):
                violations.append((j, l))
    return violations


def _log_or_neg_inf(v: float) -> float:
    return math.log(v) if v > 0.0 else -math.inf


def root_report(seq: PrefixSequence) -> RootReport:
    """Roots a_k^(1/k) with their running minimum, row per k.

    Roots are evaluated as exp(log(a_k)/k) so that large k neither
    overflows nor underflows; a_k = 0 maps to root 0 directly.
    """
    return build_report(
        [_log_or_neg_inf(v) for v in seq.values],
        value_header="value",
        values=list(seq.values),
    )


def limit_bracket(
    seq: PrefixSequence, tol_rel: float = DEFAULT_TOL_REL
) -> tuple[float, float]:
    """Certified upper bound and heuristic estimate for lim a_k^(1/k).

    The upper bound is the minimum root over the prefix, rigorous because
    the limit equals the infimum over *all* indices.  The estimate is the
    last root, a heuristic with no certificate attached.  Raises
    ValueError when the prefix violates submultiplicativity, since the
    bracket is meaningless then.
    """
    violations = check_submultiplicative(seq, tol_rel)
    if violations:
        j, l = violations[0]
        raise ValueError(
            "prefix is not submultiplicative: a_%d > a_%d * a_%d (first of %d violations)"
            % (j + l, j, l, len(violations))
        )
    report = root_report(seq)
    return report.certified_upper, report.last_root


def binomial_convolve(a: PrefixSequence, b: PrefixSequence, n_out: int) -> PrefixSequence:
    """Binomial convolution c_n = sum_j C(n,j) * a_j * b_{n-j} for n = 1..n_out.

    Both inputs must carry the unit head (a_0 = b_0 = 1) and reach length
    n_out.  Terms are combined through log-scale binomial coefficients and
    a max-pivot exponential sum, so c_n stays finite well past the point
    where direct evaluation of C(n,j) overflows.  The output carries the
    implied c_0 = 1 as its unit head.
    """
    if n_out < 1:
        raise ValueError("n_out must be >= 1")
    if not (a.has_unit_head and b.has_unit_head):
        raise ValueError("binomial_convolve requires has_unit_head on both inputs")
    if len(a) < n_out or len(b) < n_out:
        raise ValueError(
            "prefixes too short: need %d terms, have %d and %d" % (n_out, len(a), len(b))
        )

    # log a_j, log b_j for j = 0..n_out (head included); None marks a zero entry
    log_a = [0.0] + [_log_or_neg_inf(v) for v in a.values[:n_out]]
    log_b = [0.0] + [_log_or_neg_inf(v) for v in b.values[:n_out]]
    # accumulated log-factorials: lf[n] = log(n!)
    lf = [0.0] * (n_out + 1)
    for i in range(2, n_out + 1):
        lf[i] = lf[i - 1] + math.log(i)

    out = []
    for n in range(1, n_out + 1):
        terms = []
        for j in range(0, n + 1):
            la, lb = log_a[j], log_b[n - j]
            if la == -math.inf or lb == -math.inf:
                continue
            terms.append(lf[n] - lf[j] - lf[n - j] + la + lb)
        if not terms:
            out.append(0.0)
            continue
        pivot = max(terms)
        out.append(math.exp(pivot) * math.fsum(math.exp(t - pivot) for t in terms))
    return PrefixSequence(tuple(out), has_unit_head=True)


def max_sum_bound(t: list[float]) -> tuple[float, float, bool]:
    """Max, sum, and whether max <= sum <= m * max holds for nonnegative t."""
    if not t:
        raise ValueError("max_sum_bound needs at least one entry")
    for v in t:
        if not v >= 0.0:
            raise ValueError("entries must be nonnegative, got %r" % (v,))
    m = max(t)
    s = math.fsum(t)
    return m, s, m <= s <= len(t) * m


# --- closed-form generator families -------------------------------------

def poly_sequence(c: float, n: int) -> PrefixSequence:
    """a_j = (j+1)^c; submultiplicative for c >= 0 with limit 1."""
    return PrefixSequence(
        tuple(float(j + 1) ** c for j in range(1, n + 1)), has_unit_head=True
    )


def geometric_sequence(r: float, n: int) -> PrefixSequence:
    """a_j = r^j; roots are constantly r."""
    if r < 0:
        raise ValueError("ratio must be nonnegative")
    return PrefixSequence(
        tuple(float(r) ** j for j in range(1, n + 1)), has_unit_head=True
    )


def subadd_sequence(c: float, d: float, n: int) -> PrefixSequence:
    """a_j = exp(c*j + d*sqrt(j)) with d >= 0; limit of the roots is e^c.

    Submultiplicative because sqrt is subadditive, which makes this an
    inexhaustible randomized test family with a known limit.
    """
    if d < 0:
        raise ValueError("d must be >= 0 (sqrt term must stay subadditive)")
    return PrefixSequence(
        tuple(math.exp(c * j + d * math.sqrt(j)) for j in range(1, n + 1)),
        has_unit_head=True,
    )


# --- CSV interface -------------------------------------------------------

def sequence_to_csv(seq: PrefixSequence) -> str:
    lines = ["k,value"]
    for k, v in enumerate(seq.values, start=1):
        lines.append("%d,%s" % (k, fmt17(v)))
    return "\n".join(lines) + "\n"


def read_sequence_csv(text: str, has_unit_head: bool = False) -> PrefixSequence:
    """Parse `k,value` rows (header required, k must run 1..N in order)."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0].lower().replace(" ", "") != "k,value":
        raise ValueError("expected header 'k,value'")
    values = []
    for i, ln in enumerate(lines[1:], start=1):
        parts = ln.split(",")
        if len(parts) != 2:
            raise ValueError("bad row %r" % ln)
        k = int(parts[0])
        if k != i:
            raise ValueError("row %d has index k = %d; indices must run 1..N" % (i, k))
        values.append(float(parts[1]))
    return PrefixSequence(tuple(values), has_unit_head=has_unit_head)
