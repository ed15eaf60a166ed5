"""Wiener-algebra elements: absolutely summable Laurent coefficient maps.

An element is a finite dict {degree: complex coefficient}, negative
degrees allowed; it stands for the circle function
f(e^{i*theta}) = sum_j a_j e^{i*j*theta}.  The norm is the coefficient
l1 sum, multiplication is coefficient convolution, and evaluation at any
circle point is a nonzero algebra homomorphism.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .algebra import Algebra, neumann_inverse, power_norms
from .errors import BudgetExceeded, NotConvergent
from .reports import ConvergenceReport, fmt17

Element = dict[int, complex]

COEFF_CAP = 10**6
DEFAULT_GRID = 4096


def clean(coeffs) -> Element:
    """Canonical element: int degrees, complex values, zero entries pruned."""
    out: Element = {}
    for k, v in coeffs.items():
        z = complex(v)
        if z != 0:
            out[int(k)] = z
    return out


def identity() -> Element:
    return {0: 1.0 + 0j}


def _support_span(f: Element) -> int:
    return max(f) - min(f) + 1 if f else 0


def _content_key(f: Element):
    items = tuple(sorted((k, v.real, v.imag) for k, v in f.items()))
    return (len(f), items)


def multiply(f: Element, g: Element, cap: int = COEFF_CAP) -> Element:
    """Coefficient convolution (f*g)_k = sum_j f_j g_{k-j}.

    The operand order is canonicalized before convolving so that
    multiply(f, g) and multiply(g, f) are the same float computation,
    making commutativity exact coefficient-wise.  Raises BudgetExceeded
    when the output support span would exceed ``cap``.
    """
    f, g = clean(f), clean(g)
    if not f or not g:
        return {}
    span = _support_span(f) + _support_span(g) - 1
    if span > cap:
        raise BudgetExceeded(
            "product support span %d exceeds coefficient cap %d" % (span, cap)
        )
    if _content_key(g) < _content_key(f):
        f, g = g, f
    off_f, off_g = min(f), min(g)
    arr_f = np.zeros(_support_span(f), dtype=complex)
    for k, v in f.items():
        arr_f[k - off_f] = v
    arr_g = np.zeros(_support_span(g), dtype=complex)
    for k, v in g.items():
        arr_g[k - off_g] = v
    conv = np.convolve(arr_f, arr_g)
    base = off_f + off_g
    return {base + i: complex(z) for i, z in enumerate(conv) if z != 0}


def add(f: Element, g: Element) -> Element:
    out = dict(f)
    for k, v in g.items():
        out[k] = out.get(k, 0j) + v
    return clean(out)


def scale(alpha: complex, f: Element) -> Element:
    return clean({k: alpha * v for k, v in f.items()})


def l1_norm(f: Element) -> float:
    """sum of |a_j| (exact rounded sum, order-independent)."""
    return math.fsum(abs(v) for v in f.values())


def evaluate(f: Element, theta: float) -> complex:
    """f at the circle point e^{i*theta}: sum a_j e^{i*j*theta}.

    This is a nonzero algebra homomorphism, so its modulus is bounded by
    every power-norm root of f.  Terms are summed in degree order with
    exact rounded partial sums, so equal elements evaluate identically.
    """
    re = math.fsum((v * cmath.exp(1j * k * theta)).real for k, v in sorted(f.items()))
    im = math.fsum((v * cmath.exp(1j * k * theta)).imag for k, v in sorted(f.items()))
    return complex(re, im)


class WienerAlgebra(Algebra):
    """The Wiener algebra as an engine instance; elements are coefficient dicts."""

    def __init__(self, cap: int = COEFF_CAP):
        self.cap = cap

    @property
    def one(self) -> Element:
        return identity()

    @property
    def zero(self) -> Element:
        return {}

    def add(self, x, y):
        return add(x, y)

    def scale(self, alpha, x):
        return scale(alpha, x)

    def mul(self, x, y):
        return multiply(x, y, cap=self.cap)

    def norm(self, x) -> float:
        return l1_norm(x)

    def is_zero(self, x) -> bool:
        return all(v == 0 for v in x.values())


@dataclass(frozen=True)
class SupEstimate:
    """Certified bracket for the sup of |f| over the circle.

    grid_max is the max of |f| over the sampling grid and is a lower
    bound for the sup; the certified upper end adds the derivative bound
    (pi/M) * sum |j*a_j| for grid size M, clipped at the l1 norm (which
    dominates the sup outright).  The bracket is exact up to float
    rounding in the samples (~1e-15 relative).
    """

    grid_max: float
    certified_upper_error: float
    upper: float

    @property
    def interval(self) -> tuple[float, float]:
        return (self.grid_max, self.upper)

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.grid_max + self.upper)


def sup_norm(f: Element, grid_size: int = DEFAULT_GRID) -> SupEstimate:
    """Sample |f| on an equispaced circle grid and certify the sup bracket."""
    if grid_size < 8:
        raise ValueError("grid_size must be >= 8")
    f = clean(f)
    if not f:
        return SupEstimate(0.0, 0.0, 0.0)
    l1 = l1_norm(f)
    degs = np.array(sorted(f), dtype=float)
    coeffs = np.array([f[int(d)] for d in degs])
    theta = 2.0 * math.pi * np.arange(grid_size) / grid_size
    samples = np.abs(np.exp(1j * np.outer(theta, degs)) @ coeffs)
    # |f| <= l1 pointwise; any float excess in the samples is rounding noise
    grid_max = min(float(samples.max()), l1)
    err = (math.pi / grid_size) * math.fsum(abs(k * v) for k, v in f.items())
    return SupEstimate(grid_max, err, min(grid_max + err, l1))


def wiener_spectral_radius(
    f: Element, n: int, cap: int = COEFF_CAP
) -> ConvergenceReport:
    """Roots of the l1 norms of f^k for k = 1..n; the running minimum
    converges to the sup norm of f (downward, being an upper bound at
    every k)."""
    return power_norms(WienerAlgebra(cap), clean(f), n)


def wiener_inverse(f: Element, tol: float = 1e-10, cap: int = COEFF_CAP) -> Element:
    """Reciprocal in the Wiener algebra with l1 residual below tol.

    Factors f = c * (e - g) with c the degree-0 coefficient, widening the
    plain norm(f - e) < 1 hypothesis, then runs the Neumann series on g.
    Raises NotConvergent when no probed power of g has l1 norm below 1;
    the factorization needs a nonzero degree-0 coefficient to start.
    """
    f = clean(f)
    c = f.get(0, 0j)
    if c == 0:
        raise NotConvergent(
            "degree-0 coefficient is zero; cannot factor f = c*(e - g)"
        )
    g = {k: -v / c for k, v in f.items() if k != 0}
    series = neumann_inverse(WienerAlgebra(cap), g, tol)
    return scale(1.0 / c, series)


# --- I/O -------------------------------------------------------------------

def element_to_csv(f: Element) -> str:
    lines = ["degree,re,im"]
    for k in sorted(clean(f)):
        v = f[k]
        lines.append("%d,%s,%s" % (k, fmt17(v.real), fmt17(v.imag)))
    return "\n".join(lines) + "\n"


def read_element_csv(text: str) -> Element:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0].lower().replace(" ", "") != "degree,re,im":
        raise ValueError("expected header 'degree,re,im'")
    out: Element = {}
    for ln in lines[1:]:
        parts = ln.split(",")
        if len(parts) != 3:
            raise ValueError("bad row %r" % ln)
        out[int(parts[0])] = complex(float(parts[1]), float(parts[2]))
    return clean(out)


def element_to_json(f: Element) -> str:
    f = clean(f)
    rows = [
        '"%d": [%s, %s]' % (k, fmt17(f[k].real), fmt17(f[k].imag)) for k in sorted(f)
    ]
    return "{" + ", ".join(rows) + "}\n"


def parse_inline(spec: str) -> Element:
    """Parse 'deg:coeff,deg:coeff' pairs; coefficients in complex syntax."""
    out: Element = {}
    for chunk in spec.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        deg_text, _, coeff_text = chunk.partition(":")
        if not coeff_text:
            raise ValueError("expected deg:coeff, got %r" % chunk)
        out[int(deg_text)] = complex(coeff_text)
    return clean(out)
