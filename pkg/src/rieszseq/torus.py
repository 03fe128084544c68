"""Finite arc unions on the circle and exact Fourier coefficients of their indicators.

The circle is normalized to [0, 1) with total measure 1, and frequencies pair
with e^{2*pi*i*k*x}.  Arcs are half-open [start, end); an arc crossing the
wrap point is stored split, which makes the canonical form unique and set
equality testable.  All values are immutable after construction and every
operation is a pure function.
"""

from __future__ import annotations

import hashlib
import json
import math
from bisect import bisect_right
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import EmptyInput, InvalidArc, OverlapError, ResolutionError

MEASURE_TOL = 1e-12

# largest coefficient table we will materialize (two dense arrays of this length)
TABLE_INDEX_CAP = 2 ** 25


@dataclass(frozen=True, order=True)
class Arc:
    """Half-open arc [start, end) with 0 <= start < end <= 1."""

    start: float
    end: float

    def __post_init__(self):
        if not (0.0 <= self.start < self.end <= 1.0):
            raise InvalidArc(f"arc ({self.start}, {self.end}) is not in canonical form")

    @property
    def length(self) -> float:
        return self.end - self.start


@dataclass(frozen=True)
class IntervalSet:
    """Disjoint arcs sorted by start, with their total length cached.

    May be empty (measure 0); constructors that reject degenerate input do so
    explicitly, the type itself allows it so complements are closed.
    """

    arcs: tuple[Arc, ...]
    measure: float

    def __post_init__(self):
        for a, b in zip(self.arcs, self.arcs[1:]):
            if b.start < a.end:
                raise InvalidArc("arcs must be disjoint and sorted by start")

    def is_empty(self) -> bool:
        return not self.arcs

    def _endpoints(self) -> tuple[np.ndarray, np.ndarray]:
        cached = self.__dict__.get("_eps_cache")
        if cached is None:
            starts = np.array([a.start for a in self.arcs], dtype=np.float64)
            ends = np.array([a.end for a in self.arcs], dtype=np.float64)
            cached = (starts, ends)
            object.__setattr__(self, "_eps_cache", cached)
        return cached


@dataclass(frozen=True)
class CoefficientTable:
    """Fourier coefficients c_hat(k) of an indicator for 0 <= k <= max_index.

    Negative indices resolve through conjugate symmetry, so the table behaves
    as a map on |k| <= max_index.  ``power(k)`` is |c_hat(k)|^2.
    """

    max_index: int
    values: np.ndarray

    def get(self, k: int) -> complex:
        kk = abs(int(k))
        if kk > self.max_index:
            raise IndexError(f"|k| = {kk} exceeds table limit {self.max_index}")
        v = complex(self.values[kk])
        return v.conjugate() if k < 0 else v

    def power(self, k: int) -> float:
        return abs(self.get(k)) ** 2

    def power_array(self) -> np.ndarray:
        """|c_hat(k)|^2 for 0 <= k <= max_index (cached)."""
        cached = self.__dict__.get("_pow_cache")
        if cached is None:
            cached = np.abs(self.values) ** 2
            object.__setattr__(self, "_pow_cache", cached)
        return cached


def normalize(raw_arcs: Iterable[Sequence[float]]) -> IntervalSet:
    """Canonicalize raw (start, end) pairs into a disjoint sorted arc union.

    Coordinates are taken mod 1; a pair runs counterclockwise from start to
    end, so its length is end - start and must lie in (0, 1].  Wrap-crossing
    pairs are split, overlapping or touching pairs are merged.
    """
    pairs = [(float(a), float(b)) for a, b in raw_arcs]
    if not pairs:
        raise EmptyInput("no arcs given")
    total = 0.0
    pieces: list[tuple[float, float]] = []
    for a, b in pairs:
        length = b - a
        if length <= 0.0:
            raise InvalidArc(f"arc ({a}, {b}) reduces to a point or runs backwards")
        if length > 1.0 + MEASURE_TOL:
            raise InvalidArc(f"arc ({a}, {b}) is longer than the circle")
        total += length
        if length >= 1.0:
            pieces.append((0.0, 1.0))
            continue
        s = a - math.floor(a)
        if s >= 1.0:  # float guard: a barely below an integer
            s = 0.0
        e = s + length
        if e <= 1.0:
            pieces.append((s, e))
        else:
            pieces.append((s, 1.0))
            if e - 1.0 > 0.0:
                pieces.append((0.0, e - 1.0))
    if total > 1.0 + MEASURE_TOL:
        raise InvalidArc(f"total raw length {total} exceeds the circle")
    pieces.sort()
    merged = [list(pieces[0])]
    for s, e in pieces[1:]:
        if s <= merged[-1][1]:
            merged[-1][1] = max(merged[-1][1], e)
        else:
            merged.append([s, e])
    arcs = tuple(Arc(s, e) for s, e in merged)
    return IntervalSet(arcs, math.fsum(a.length for a in arcs))


def complement(s: IntervalSet) -> IntervalSet:
    """Complement within the circle; may be empty."""
    if s.is_empty():
        return IntervalSet((Arc(0.0, 1.0),), 1.0)
    gaps = []
    prev = 0.0
    for arc in s.arcs:
        if arc.start > prev:
            gaps.append(Arc(prev, arc.start))
        prev = arc.end
    if prev < 1.0:
        gaps.append(Arc(prev, 1.0))
    return IntervalSet(tuple(gaps), math.fsum(g.length for g in gaps))


def scale_periodize(delta: float, ell: int) -> IntervalSet:
    """Union of ell arcs of half-width delta/ell centered at k/ell, k = 0..ell-1.

    This is the 1/ell-scaled periodization of the arc (-delta, delta); its
    measure is exactly 2*delta.  Copies must stay disjoint, which needs
    delta < 1/(2*ell).
    """
    ell = int(ell)
    if ell < 1:
        raise InvalidArc(f"ell must be a positive integer, got {ell}")
    if not (0.0 < delta < 0.5):
        raise InvalidArc(f"delta must lie in (0, 1/2), got {delta}")
    if delta >= 1.0 / (2 * ell):
        raise OverlapError(f"delta = {delta} >= 1/(2*{ell}); periodized copies would overlap")
    half = delta / ell
    raw = [(k / ell - half, k / ell + half) for k in range(ell)]
    return normalize(raw)


def contains(s: IntervalSet, x: float) -> bool:
    """Membership of x mod 1, with the half-open [start, end) convention."""
    xm = x - math.floor(x)
    if xm >= 1.0:
        xm = 0.0
    starts, ends = s._endpoints()
    if starts.size == 0:
        return False
    i = bisect_right(starts, xm) - 1
    return i >= 0 and xm < ends[i]


def fourier_coeff_many(s: IntervalSet, ks) -> np.ndarray:
    """Vectorized c_hat(k) = sum over arcs of (e^{-2pi i k a} - e^{-2pi i k b}) / (2pi i k).

    Exact closed form, no quadrature; c_hat(0) is the measure.  The phase
    k*x is reduced mod 1 before exponentiating, so endpoints at exact
    rationals (full circle, half circle) yield exact zeros.  Evaluation is
    chunked over k so large requests stay within a bounded working set.
    """
    ks = np.atleast_1d(np.asarray(ks, dtype=np.int64))
    out = np.empty(ks.shape[0], dtype=np.complex128)
    starts, ends = s._endpoints()
    zero = ks == 0
    out[zero] = s.measure
    kk = ks[~zero].astype(np.float64)
    if kk.size:
        if starts.size == 0:
            out[~zero] = 0.0
        else:
            # evaluate at |k| and conjugate, so c_hat(-k) == conj(c_hat(k)) bitwise
            kk_abs = np.abs(kk)
            res = np.empty(kk.shape[0], dtype=np.complex128)
            chunk = max(1, (1 << 21) // starts.size)
            for i in range(0, kk_abs.shape[0], chunk):
                kc = kk_abs[i : i + chunk]
                frac_a = np.mod(kc[:, None] * starts[None, :], 1.0)
                frac_b = np.mod(kc[:, None] * ends[None, :], 1.0)
                block = np.exp((-2j * np.pi) * frac_a)
                block -= np.exp((-2j * np.pi) * frac_b)
                res[i : i + chunk] = block.sum(axis=1) / (2j * np.pi * kc)
            out[~zero] = np.where(kk < 0, np.conj(res), res)
    return out


def fourier_coeff(s: IntervalSet, k: int) -> complex:
    """Closed-form indicator coefficient c_hat(k) for a single integer k."""
    return complex(fourier_coeff_many(s, [int(k)])[0])


def fourier_table(s: IntervalSet, max_index: int) -> CoefficientTable:
    """Table of c_hat(k) for |k| <= max_index (stored for k >= 0)."""
    max_index = int(max_index)
    if max_index < 0:
        raise InvalidArc(f"max_index must be >= 0, got {max_index}")
    if max_index > TABLE_INDEX_CAP:
        raise InvalidArc(
            f"max_index {max_index} exceeds cap {TABLE_INDEX_CAP} "
            f"(~{16 * max_index / 1e9:.1f} GB of coefficients)"
        )
    return CoefficientTable(max_index, fourier_coeff_many(s, np.arange(max_index + 1)))


def quadrature_coeff(s: IntervalSet, k: int, points_per_unit: int) -> complex:
    """Composite-midpoint approximation of c_hat(k); error O(points_per_unit^-2).

    Test oracle for the closed form.  Requires points_per_unit >= 10*|k| + 10
    so the grid resolves the oscillation.
    """
    k = int(k)
    points_per_unit = int(points_per_unit)
    if points_per_unit < 10 * abs(k) + 10:
        raise ResolutionError(
            f"points_per_unit = {points_per_unit} < 10*|k|+10 = {10 * abs(k) + 10}"
        )
    total = 0.0 + 0.0j
    for arc in s.arcs:
        n = max(1, int(math.ceil(arc.length * points_per_unit)))
        h = arc.length / n
        mids = arc.start + (np.arange(n) + 0.5) * h
        total += complex(np.exp((-2j * np.pi * k) * mids).sum()) * h
    return complex(total)


def set_digest(s: IntervalSet) -> str:
    """Short stable hash of the canonical arc list."""
    payload = json.dumps([[a.start, a.end] for a in s.arcs]).encode()
    return hashlib.sha256(payload).hexdigest()[:16]


def to_dict(s: IntervalSet) -> dict:
    return {"arcs": [[a.start, a.end] for a in s.arcs]}


def from_dict(d: dict) -> IntervalSet:
    return normalize(d["arcs"])


def save_set(s: IntervalSet, path) -> None:
    """Write the canonical {"arcs": [[a, b], ...]} JSON form."""
    with open(path, "w") as fh:
        json.dump(to_dict(s), fh, sort_keys=True)
        fh.write("\n")


def load_set(path) -> IntervalSet:
    """Read a set file; arbitrary [0, 1] coordinates are normalized on load."""
    with open(path) as fh:
        return from_dict(json.load(fh))
