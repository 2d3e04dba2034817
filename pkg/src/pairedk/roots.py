"""Polynomial root extraction and classification relative to the unit circle."""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from . import tolerances as tol
from .errors import DegreeOverflow
from .laurent import MAX_DEGREE, LaurentPoly

LOC_IN = "in"
LOC_ON = "on"
LOC_OUT = "out"


@dataclass(frozen=True)
class Root:
    value: complex
    mult: int
    loc: str


@dataclass(frozen=True)
class RootSet:
    roots: Tuple[Root, ...]

    @property
    def degree(self) -> int:
        return sum(r.mult for r in self.roots)

    def values(self):
        out = []
        for r in self.roots:
            out.extend([r.value] * r.mult)
        return out


def classify(value: complex) -> str:
    m = abs(value)
    if m > 1.0 + tol.EPS_CIRCLE:
        return LOC_OUT
    if m < 1.0 - tol.EPS_CIRCLE:
        return LOC_IN
    return LOC_ON


def _cluster(values: np.ndarray) -> List[Tuple[complex, int]]:
    """Greedy clustering of near-identical roots; centroid representative."""
    order = sorted(range(len(values)), key=lambda i: (values[i].real, values[i].imag))
    clusters: List[List[complex]] = []
    for i in order:
        v = values[i]
        placed = False
        for c in clusters:
            ref = c[0]
            if abs(v - ref) <= tol.EPS_CLUSTER * max(1.0, abs(ref)):
                c.append(v)
                placed = True
                break
        if not placed:
            clusters.append([v])
    out = []
    for c in clusters:
        centroid = sum(c) / len(c)
        out.append((centroid, len(c)))
    out.sort(key=lambda t: (t[0].real, t[0].imag))
    return out


def _polish(coeffs_desc: np.ndarray, roots: np.ndarray) -> np.ndarray:
    """One guarded Newton step per root against the original polynomial."""
    deriv = np.polyder(np.poly1d(coeffs_desc)).coeffs
    out = roots.copy()
    scale = np.max(np.abs(coeffs_desc))
    for i, r in enumerate(roots):
        pv = np.polyval(coeffs_desc, r)
        dv = np.polyval(deriv, r) if len(deriv) else 0.0
        if abs(dv) <= 1e-8 * scale * max(1.0, abs(r)) ** max(0, len(deriv) - 1):
            continue  # near-multiple root; Newton would wander
        step = pv / dv
        cand = r - step
        if abs(np.polyval(coeffs_desc, cand)) < abs(pv):
            out[i] = cand
    return out


def poly_roots(p: LaurentPoly) -> RootSet:
    """All roots of the polynomial part of p (the monomial z^lo factored out).

    Companion-matrix eigenvalues refined by a guarded Newton step, then
    clustered into multiplicities.  Raises DegreeOverflow above degree 64.
    """
    if p.is_zero:
        raise ValueError("cannot take roots of the zero polynomial")
    lo, arr = p.to_array()
    deg = len(arr) - 1
    if deg > MAX_DEGREE:
        raise DegreeOverflow(f"degree {deg} exceeds {MAX_DEGREE}")
    if deg == 0:
        return RootSet(())
    desc = arr[::-1].copy()
    raw = np.roots(desc)
    raw = _polish(desc, raw)
    clustered = _cluster(raw)
    roots = tuple(Root(v, m, classify(v)) for v, m in clustered)
    return RootSet(roots)


def reconstruct(rs: RootSet, lead: complex = 1.0) -> LaurentPoly:
    """Expand the root set back into coefficients (for round-trip checks)."""
    return LaurentPoly.from_roots(rs.values(), lead)
