"""Sparse Laurent polynomials sum_k c_k z^k with complex coefficients.

These are the exact building blocks: every rational function on the circle
is a quotient of two of them.  Instances are immutable and hashable by
identity; all arithmetic returns fresh objects.
"""

from __future__ import annotations

import math
from typing import Dict, Iterable, Mapping, Tuple

import numpy as np

from . import tolerances as tol
from .errors import DegreeOverflow

MAX_DEGREE = 64
_SPAN_LIMIT = 4096  # runaway-product guard, far above anything legitimate


def _check_finite(v: complex) -> complex:
    if not (math.isfinite(v.real) and math.isfinite(v.imag)):
        raise ValueError("non-finite coefficient")
    return v


class LaurentPoly:
    """Finite Laurent polynomial stored as {exponent: coefficient}.

    Coefficients of modulus <= EPS_DROP * scale are pruned, where scale is
    the largest coefficient magnitude (or an explicit, larger reference
    supplied by cancellation-aware callers).  The zero polynomial is the one
    with an empty map.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, complex] | None = None, *, scale: float = 0.0):
        c: Dict[int, complex] = {}
        if coeffs:
            cmax = 0.0
            for v in coeffs.values():
                av = abs(v)
                if av > cmax:
                    cmax = av
            thr = tol.EPS_DROP * max(cmax, scale)
            for k, v in coeffs.items():
                v = _check_finite(complex(v))
                if v != 0 and abs(v) > thr:
                    c[int(k)] = v
        self._c = c
        if c:
            span = max(c) - min(c)
            if span > _SPAN_LIMIT:
                raise DegreeOverflow(f"Laurent support span {span} exceeds limit")

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({0: 1.0})

    @classmethod
    def monomial(cls, k: int, c: complex = 1.0) -> "LaurentPoly":
        return cls({k: c})

    @classmethod
    def from_roots(cls, roots: Iterable[complex], lead: complex = 1.0) -> "LaurentPoly":
        """Expand lead * prod (z - r) over the given roots (with repeats)."""
        arr = np.array([lead], dtype=complex)
        for r in sorted(roots, key=lambda w: (w.real, w.imag)):
            arr = np.convolve(arr, np.array([-r, 1.0], dtype=complex))
        return cls({k: v for k, v in enumerate(arr)})

    # -- basic queries ------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self._c

    @property
    def lo(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no support")
        return min(self._c)

    @property
    def hi(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no support")
        return max(self._c)

    def coeff(self, k: int) -> complex:
        return self._c.get(k, 0.0 + 0.0j)

    def items(self):
        return self._c.items()

    def support(self):
        return sorted(self._c)

    def norm_inf(self) -> float:
        return max((abs(v) for v in self._c.values()), default=0.0)

    def norm_l2(self) -> float:
        return math.sqrt(sum(abs(v) ** 2 for v in self._c.values()))

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        c = dict(self._c)
        for k, v in other._c.items():
            c[k] = c.get(k, 0.0) + v
        return LaurentPoly(c, scale=max(self.norm_inf(), other.norm_inf()))

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        c = dict(self._c)
        for k, v in other._c.items():
            c[k] = c.get(k, 0.0) - v
        return LaurentPoly(c, scale=max(self.norm_inf(), other.norm_inf()))

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({k: -v for k, v in self._c.items()})

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        if self.is_zero or other.is_zero:
            return LaurentPoly()
        c: Dict[int, complex] = {}
        for k1, v1 in self._c.items():
            for k2, v2 in other._c.items():
                k = k1 + k2
                c[k] = c.get(k, 0.0) + v1 * v2
        return LaurentPoly(c, scale=self.norm_inf() * other.norm_inf())

    def scale(self, a: complex) -> "LaurentPoly":
        a = complex(a)
        if a == 0:
            return LaurentPoly()
        return LaurentPoly({k: a * v for k, v in self._c.items()})

    def shift(self, n: int) -> "LaurentPoly":
        """Multiply by z^n (exact index shift)."""
        return LaurentPoly({k + n: v for k, v in self._c.items()})

    def conj_reflect(self) -> "LaurentPoly":
        """The polynomial z -> conj(p(z)) for |z| = 1: negate indices, conjugate."""
        return LaurentPoly({-k: v.conjugate() for k, v in self._c.items()})

    def reflect_indices(self) -> "LaurentPoly":
        """The substitution z -> 1/z: negate indices, keep coefficients."""
        return LaurentPoly({-k: v for k, v in self._c.items()})

    # -- evaluation / conversion ---------------------------------------

    def eval(self, z: complex) -> complex:
        """Evaluate by Horner in z over k >= 0 plus Horner in 1/z over k < 0."""
        if not self._c:
            return 0.0 + 0.0j
        pos = 0.0 + 0.0j
        if self.hi >= 0:
            for k in range(self.hi, -1, -1):
                pos = pos * z + self._c.get(k, 0.0)
        neg = 0.0 + 0.0j
        if self.lo < 0:
            w = 1.0 / z
            for k in range(self.lo, 0):
                neg = neg * w + self._c.get(k, 0.0)
            neg = neg * w
        return pos + neg

    def to_array(self) -> Tuple[int, np.ndarray]:
        """Return (lo, ascending coefficient array) for the support block."""
        if self.is_zero:
            return 0, np.zeros(0, dtype=complex)
        lo, hi = self.lo, self.hi
        arr = np.zeros(hi - lo + 1, dtype=complex)
        for k, v in self._c.items():
            arr[k - lo] = v
        return lo, arr

    @classmethod
    def from_array(cls, lo: int, arr: np.ndarray) -> "LaurentPoly":
        return cls({lo + i: v for i, v in enumerate(arr)})

    def allclose(self, other: "LaurentPoly", rel: float | None = None) -> bool:
        rel = tol.EPS_EQ if rel is None else rel
        diff = self - other
        scale = max(self.norm_inf(), other.norm_inf())
        if scale == 0.0:
            return diff.is_zero
        return diff.norm_inf() <= rel * scale

    def degree_span(self) -> int:
        return 0 if self.is_zero else self.hi - self.lo

    # -- misc -----------------------------------------------------------

    def __repr__(self) -> str:
        if self.is_zero:
            return "LaurentPoly(0)"
        parts = []
        for k in self.support():
            v = self._c[k]
            if k == 0:
                parts.append(f"({v:.4g})")
            elif k > 0:
                parts.append(f"({v:.4g})z^{k}")
            else:
                parts.append(f"({v:.4g})z^{k}")
        return "LaurentPoly(" + " + ".join(parts) + ")"


def lp_arith(op: str, f: LaurentPoly, g) -> LaurentPoly:
    """Dispatch helper: op in {add, sub, mul, scale}."""
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    if op == "scale":
        return f.scale(g)
    raise ValueError(f"unknown op {op!r}")
