"""Dense complex square matrices as the concrete noncommutative instance.

Only the induced infinity norm (max row sum) and induced 1-norm (max
column sum) are offered: both give the identity norm exactly 1, which the
engine assumes throughout.  The Frobenius norm would not.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .algebra import Algebra, spectral_radius_upper
from .errors import Singular, Unsupported
from .reports import fmt17

PIVOT_RTOL = 1e-12
ORACLE_MAX_DIM = 4


def as_matrix(a) -> np.ndarray:
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise ValueError("expected a square matrix, got shape %r" % (m.shape,))
    return m


def inf_norm(a) -> float:
    """Induced infinity norm: max absolute row sum."""
    return float(np.abs(as_matrix(a)).sum(axis=1).max())


def one_norm(a) -> float:
    """Induced 1-norm: max absolute column sum."""
    return float(np.abs(as_matrix(a)).sum(axis=0).max())


NORMS = {"inf": inf_norm, "one": one_norm}


class MatrixAlgebra(Algebra):
    """n x n complex matrices under a chosen induced norm."""

    def __init__(self, n: int, norm_kind: str = "inf"):
        if n < 1:
            raise ValueError("dimension must be >= 1")
        if norm_kind not in NORMS:
            raise ValueError("norm_kind must be one of %s" % sorted(NORMS))
        self.n = n
        self.norm_kind = norm_kind
        self._norm = NORMS[norm_kind]

    @property
    def one(self) -> np.ndarray:
        return np.eye(self.n, dtype=complex)

    @property
    def zero(self) -> np.ndarray:
        return np.zeros((self.n, self.n), dtype=complex)

    def add(self, x, y):
        return x + y

    def scale(self, alpha, x):
        return alpha * x

    def mul(self, x, y):
        return x @ y

    def norm(self, x) -> float:
        return self._norm(x)

    def is_zero(self, x) -> bool:
        return bool((np.asarray(x) == 0).all())

    def direct_inverse(self, x, tol: float = 1e-10):
        return direct_inverse(x, tol, norm_kind=self.norm_kind)


def _gauss_inverse(a: np.ndarray, pivot_floor: float):
    """Gaussian elimination with partial pivoting on [a | I].

    Returns (inverse, min_abs_pivot); the inverse is None when the best
    available pivot falls below ``pivot_floor`` (or is exactly zero), in
    which case min_abs_pivot is that failing pivot's magnitude.
    """
    n = a.shape[0]
    aug = np.hstack([a.astype(complex, copy=True), np.eye(n, dtype=complex)])
    min_pivot = math.inf
    for col in range(n):
        rows = np.abs(aug[col:, col])
        best = col + int(np.argmax(rows))
        pivot_mag = float(abs(aug[best, col]))
        if pivot_mag < pivot_floor or pivot_mag == 0.0:
            return None, pivot_mag
        min_pivot = min(min_pivot, pivot_mag)
        if best != col:
            aug[[col, best]] = aug[[best, col]]
        aug[col] = aug[col] / aug[col, col]
        for r in range(n):
            if r != col and aug[r, col] != 0:
                aug[r] = aug[r] - aug[r, col] * aug[col]
    return aug[:, n:], min_pivot


def direct_inverse(a, tol: float = 1e-10, norm_kind: str = "inf") -> np.ndarray:
    """Matrix inverse by partial-pivot elimination, with a residual contract.

    Raises Singular when a pivot falls below 1e-12 * norm(a) (a
    scale-invariant cutoff) or when the computed inverse fails the
    residual bound norm(a @ inv - I) <= tol.
    """
    a = as_matrix(a)
    norm = NORMS[norm_kind]
    floor = PIVOT_RTOL * norm(a)
    inv, min_pivot = _gauss_inverse(a, floor)
    if inv is None:
        raise Singular(
            "pivot magnitude %.6g below threshold %.6g" % (min_pivot, floor)
        )
    residual = norm(a @ inv - np.eye(a.shape[0]))
    if residual > tol:
        raise Singular(
            "inverse residual %.6g exceeds tol %.6g (min pivot %.6g)"
            % (residual, tol, min_pivot)
        )
    return inv


# --- eigenvalue oracle (independent of the power-norm machinery) ---------

def charpoly(a) -> list[complex]:
    """Coefficients of det(lambda*I - A) in ascending powers, monic."""
    a = as_matrix(a)
    n = a.shape[0]
    eye = np.eye(n, dtype=complex)
    coeffs: list[complex] = [0j] * (n + 1)
    coeffs[n] = 1.0 + 0j
    m = np.zeros_like(a)
    c = 1.0 + 0j
    for k in range(1, n + 1):
        m = a @ m + c * eye
        c = -np.trace(a @ m) / k
        coeffs[n - k] = c
    return coeffs


def _peval(p: list[complex], z: complex) -> tuple[complex, complex]:
    """Horner evaluation of p and p' at z (ascending coefficients)."""
    val = 0j
    dval = 0j
    for c in reversed(p):
        dval = dval * z + val
        val = val * z + c
    return val, dval


def _newton_root(p: list[complex]) -> complex | None:
    bound = 1.0 + max(abs(c) for c in p[:-1])
    scale = max(abs(c) for c in p)
    starts = [0.35 * bound * cmath.exp(1j * (0.7 + 1.9 * s)) for s in range(10)]
    starts.append(0j)
    for z0 in starts:
        z = z0
        for _ in range(200):
            val, dval = _peval(p, z)
            if dval == 0:
                z += 0.11 + 0.07j
                continue
            step = val / dval
            z -= step
            if abs(step) <= 1e-15 * (1.0 + abs(z)):
                return z
        val, _ = _peval(p, z)
        if abs(val) <= 1e-12 * scale * max(1.0, abs(z)) ** (len(p) - 1):
            return z
    return None


def _durand_kerner(p: list[complex]) -> list[complex]:
    deg = len(p) - 1
    bound = 1.0 + max(abs(c) for c in p[:-1])
    zs = [0.7 * bound * cmath.exp(1j * (2 * math.pi * m / deg + 0.4)) for m in range(deg)]
    for _ in range(500):
        moved = 0.0
        for m in range(deg):
            val, _ = _peval(p, zs[m])
            denom = 1.0 + 0j
            for l in range(deg):
                if l != m:
                    denom *= zs[m] - zs[l]
            if denom == 0:
                zs[m] += 1e-8
                continue
            step = val / denom
            zs[m] -= step
            moved = max(moved, abs(step))
        if moved <= 1e-15 * (1.0 + max(abs(z) for z in zs)):
            break
    return zs


def _deflate(p: list[complex], root: complex) -> list[complex]:
    """Synthetic division of p by (z - root); p is monic, so is the quotient."""
    deg = len(p) - 1
    q = [0j] * deg
    q[deg - 1] = p[deg]
    for i in range(deg - 2, -1, -1):
        q[i] = p[i + 1] + root * q[i + 1]
    return q


def _polish(p: list[complex], z: complex) -> complex:
    best = z
    best_val = abs(_peval(p, z)[0])
    for _ in range(50):
        val, dval = _peval(p, z)
        if dval == 0:
            break
        z = z - val / dval
        v = abs(_peval(p, z)[0])
        if v < best_val:
            best, best_val = z, v
        else:
            break
    return best


def _poly_roots(p: list[complex]) -> list[complex]:
    deg = len(p) - 1
    if deg == 0:
        return []
    if deg == 1:
        return [-p[0]]
    if deg == 2:
        half = -p[1] / 2.0
        disc = cmath.sqrt(half * half - p[0])
        r1, r2 = half + disc, half - disc
        # Vieta refinement: recover the smaller root from the product
        if abs(r1) >= abs(r2) and r1 != 0:
            r2 = p[0] / r1
        elif r2 != 0:
            r1 = p[0] / r2
        return [r1, r2]
    work = list(p)
    roots: list[complex] = []
    failed = False
    while len(work) - 1 > 2:
        z = _newton_root(work)
        if z is None:
            failed = True
            break
        roots.append(z)
        work = _deflate(work, z)
    if failed:
        roots = _durand_kerner(p)
    else:
        roots.extend(_poly_roots(work))
    return [_polish(p, z) for z in roots]


def eigen_oracle(a) -> list[complex]:
    """Eigenvalues of a small matrix via its characteristic polynomial.

    Restricted to n <= 4 so the oracle stays independent of the
    power-norm machinery it cross-checks: triangular matrices read their
    diagonal exactly, closed forms anchor n <= 2, and Newton deflation
    with final polishing covers n in {3, 4}.  Accuracy is about 1e-8 on
    well-conditioned desk-scale inputs; repeated eigenvalues of a full
    matrix sit at the rootfinding conditioning floor (~eps^(1/m)).
    """
    a = as_matrix(a)
    if a.shape[0] > ORACLE_MAX_DIM:
        raise Unsupported("eigen_oracle supports n <= %d only" % ORACLE_MAX_DIM)
    if (a == np.triu(a)).all() or (a == np.tril(a)).all():
        roots = [complex(z) for z in np.diag(a)]
    else:
        roots = _poly_roots(charpoly(a))
    return sorted(roots, key=lambda z: (z.real, z.imag))


def oracle_radius(a) -> float:
    """Spectral radius from the eigenvalue oracle (n <= 4)."""
    return max((abs(z) for z in eigen_oracle(a)), default=0.0)


def spectral_mapping_check(a, n: int, tol: float = 1e-6) -> bool:
    """Each oracle eigenvalue lambda of A has lambda^n among the oracle
    eigenvalues of A^n, within tol * max(1, |lambda|^n)."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    eig_a = eigen_oracle(a)
    eig_an = eigen_oracle(np.linalg.matrix_power(as_matrix(a), n))
    for lam in eig_a:
        target = lam**n
        allowance = tol * max(1.0, abs(target))
        if not any(abs(target - mu) <= allowance for mu in eig_an):
            return False
    return True


# --- spectrum grid scan ---------------------------------------------------

@dataclass(frozen=True)
class GridSpec:
    """Rectangular lambda grid: [re_min, re_max] x [im_min, im_max], spacing step."""

    re_min: float
    re_max: float
    im_min: float
    im_max: float
    step: float

    def __post_init__(self):
        if self.step <= 0:
            raise ValueError("step must be positive")
        if self.re_max < self.re_min or self.im_max < self.im_min:
            raise ValueError("empty grid range")

    def _points(self, lo: float, hi: float) -> list[float]:
        count = int(math.floor((hi - lo) / self.step + 1e-9)) + 1
        return [lo + i * self.step for i in range(count)]

    def re_points(self) -> list[float]:
        return self._points(self.re_min, self.re_max)

    def im_points(self) -> list[float]:
        return self._points(self.im_min, self.im_max)


@dataclass(frozen=True)
class ScanCell:
    """One grid point: invertibility of lambda*I - A and its margin.

    For eliminated cells the margin is the smallest absolute pivot; for
    cells certified invertible from the radius bound without elimination
    it is the certificate slack |lambda| - radius_bound.
    """

    lam: complex
    invertible: bool
    margin: float


@dataclass
class SpectrumGrid:
    spec: GridSpec
    cells: list[ScanCell]

    def noninvertible(self) -> list[complex]:
        return [c.lam for c in self.cells if not c.invertible]

    def to_csv(self) -> str:
        lines = ["re,im,invertible,margin"]
        for c in self.cells:
            lines.append(
                "%s,%s,%s,%s"
                % (
                    fmt17(c.lam.real),
                    fmt17(c.lam.imag),
                    "true" if c.invertible else "false",
                    fmt17(c.margin),
                )
            )
        return "\n".join(lines) + "\n"


def spectrum_scan(
    a,
    grid: GridSpec,
    norm_kind: str = "inf",
    certify_outside: bool = True,
    probe_depth: int = 32,
) -> SpectrumGrid:
    """Classify every grid point as resolvent or spectrum candidate.

    Cells with |lambda| above the certified radius bound are marked
    invertible without elimination; the rest get a partial-pivot
    elimination of lambda*I - A, declaring noninvertibility when a pivot
    falls below 1e-12 * norm(lambda*I - A).  Cells are emitted row-major:
    re ascending outer, im ascending inner.
    """
    a = as_matrix(a)
    n = a.shape[0]
    norm = NORMS[norm_kind]
    upper = math.inf
    if certify_outside:
        upper = spectral_radius_upper(MatrixAlgebra(n, norm_kind), a, probe_depth)
        # the bound is computed through exp/log and may sit an ulp below
        # the true radius: inflate before using it to skip elimination
        upper *= 1.0 + 1e-12
    eye = np.eye(n, dtype=complex)
    cells = []
    for re in grid.re_points():
        for im in grid.im_points():
            lam = complex(re, im)
            if abs(lam) > upper:
                cells.append(ScanCell(lam, True, abs(lam) - upper))
                continue
            shifted = lam * eye - a
            inv, pivot = _gauss_inverse(shifted, PIVOT_RTOL * norm(shifted))
            cells.append(ScanCell(lam, inv is not None, pivot))
    return SpectrumGrid(grid, cells)


# --- I/O -------------------------------------------------------------------

def format_complex(z: complex) -> str:
    re, im = complex(z).real, complex(z).imag
    sign = "+" if im >= 0 or math.isnan(im) else "-"
    return "%s%s%sj" % (fmt17(re), sign, fmt17(abs(im)))


def matrix_to_csv(a) -> str:
    a = as_matrix(a)
    lines = [",".join(format_complex(z) for z in row) for row in a]
    return "\n".join(lines) + "\n"


def read_matrix_csv(text: str) -> np.ndarray:
    rows = []
    for ln in text.splitlines():
        ln = ln.strip()
        if not ln:
            continue
        rows.append([complex(tok.strip().replace(" ", "")) for tok in ln.split(",")])
    if not rows:
        raise ValueError("empty matrix input")
    return as_matrix(rows)


def matrix_to_json(a) -> str:
    a = as_matrix(a)
    row_texts = []
    for row in a:
        cells = ", ".join("[%s, %s]" % (fmt17(z.real), fmt17(z.imag)) for z in row)
        row_texts.append("  [%s]" % cells)
    return "[\n" + ",\n".join(row_texts) + "\n]\n"


def read_matrix_json(text: str) -> np.ndarray:
    import json

    data = json.loads(text)
    rows = []
    for row in data:
        rows.append([complex(cell[0], cell[1]) for cell in row])
    return as_matrix(rows)
