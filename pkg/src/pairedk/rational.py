"""Rational functions on the unit circle in zero-pole-gain form.

A symbol is stored as  gain * z^zpow * prod (z - z_i)^{m_i} / prod (z - p_j)^{n_j}
with all listed zeros and poles nonzero (powers of z live in ``zpow``).  The
factored form is authoritative; coefficient caches, partial fractions, Fourier
coefficients and Riesz projections are derived from it.  Every value is
immutable after construction and every operation is a pure function.
"""

from __future__ import annotations

import cmath
import enum
import math
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from . import tolerances as tol
from .errors import PoleOnCircle, ZeroDenominator
from .laurent import LaurentPoly
from .roots import LOC_IN, LOC_ON, LOC_OUT, Root, classify, poly_roots

_GOLDEN_FRAC = 0.3819660112501051


def probe_points(n: int = 16) -> List[complex]:
    """Deterministic probe points on the circle, offset off the usual suspects."""
    return [cmath.exp(2j * cmath.pi * (j + _GOLDEN_FRAC) / n) for j in range(n)]


class SpaceTag(enum.Enum):
    L2 = "L2"
    H2PLUS = "H2plus"
    H2MINUS = "H2minus"
    HINF = "Hinf"
    HINF_BAR = "HinfBar"
    INNER_PLUS = "InnerPlus"
    OUTER_PLUS = "OuterPlus"
    OUTER_MINUS = "OuterMinus"


def _sorted_roots(roots: Iterable[Root]) -> Tuple[Root, ...]:
    return tuple(sorted(roots, key=lambda r: (r.value.real, r.value.imag, r.mult)))


def _match_cancel(zeros: List[Root], poles: List[Root], report: bool = False):
    """Cancel zero/pole pairs whose values coincide within the cluster radius."""
    zs = [[r.value, r.mult, r.loc] for r in zeros]
    ps = [[r.value, r.mult, r.loc] for r in poles]
    dropped_z: List[complex] = []
    dropped_p: List[complex] = []
    for p in ps:
        for z in zs:
            if z[1] == 0 or p[1] == 0:
                continue
            if abs(z[0] - p[0]) <= tol.EPS_CANCEL * max(1.0, abs(p[0])):
                c = min(z[1], p[1])
                z[1] -= c
                p[1] -= c
                dropped_z.extend([z[0]] * c)
                dropped_p.extend([p[0]] * c)
    new_z = [Root(v, m, loc) for v, m, loc in zs if m > 0]
    new_p = [Root(v, m, loc) for v, m, loc in ps if m > 0]
    if report:
        return new_z, new_p, dropped_z, dropped_p
    return new_z, new_p


def _merge_union(a: Sequence[Root], b: Sequence[Root]) -> List[Root]:
    """Multiset union with cluster matching; multiplicity is the max per value."""
    out = [[r.value, r.mult, r.loc] for r in a]
    for r in b:
        for o in out:
            if abs(o[0] - r.value) <= tol.EPS_CANCEL * max(1.0, abs(r.value)):
                o[1] = max(o[1], r.mult)
                break
        else:
            out.append([r.value, r.mult, r.loc])
    return [Root(v, m, loc) for v, m, loc in out]


def _deficit(union: Sequence[Root], have: Sequence[Root]) -> List[complex]:
    """Root multiset union \\ have, as a flat list of values."""
    vals: List[complex] = []
    for u in union:
        m = u.mult
        for h in have:
            if abs(h.value - u.value) <= tol.EPS_CANCEL * max(1.0, abs(u.value)):
                m -= h.mult
                break
        vals.extend([u.value] * max(0, m))
    return vals


class RationalSymbol:
    __slots__ = ("gain", "zpow", "zeros", "poles", "_num", "_den", "_invden")

    def __init__(self, gain: complex, zpow: int, zeros: Iterable[Root], poles: Iterable[Root]):
        gain = complex(gain)
        if not (math.isfinite(gain.real) and math.isfinite(gain.imag)):
            raise ValueError("non-finite gain")
        if gain == 0:
            self.gain = 0.0 + 0.0j
            self.zpow = 0
            self.zeros = ()
            self.poles = ()
        else:
            self.gain = gain
            self.zpow = int(zpow)
            self.zeros = _sorted_roots(zeros)
            self.poles = _sorted_roots(poles)
        self._num = None
        self._den = None
        self._invden = None

    # ------------------------------------------------------------------
    # constructors

    @classmethod
    def zero(cls) -> "RationalSymbol":
        return cls(0.0, 0, (), ())

    @classmethod
    def const(cls, c: complex) -> "RationalSymbol":
        return cls(c, 0, (), ())

    @classmethod
    def monomial(cls, k: int, c: complex = 1.0) -> "RationalSymbol":
        return cls(c, k, (), ())

    @classmethod
    def from_coeffs(cls, coeffs: Dict[int, complex]) -> "RationalSymbol":
        return cls.from_fraction(LaurentPoly(coeffs), LaurentPoly.one())

    @classmethod
    def from_laurent(cls, lp: LaurentPoly) -> "RationalSymbol":
        return cls.from_fraction(lp, LaurentPoly.one())

    @classmethod
    def from_zpk(cls, gain: complex, zpow: int, zeros: Iterable[Root], poles: Iterable[Root]) -> "RationalSymbol":
        zs, ps = _match_cancel(list(zeros), list(poles))
        for r in zs + ps:
            if r.value == 0:
                raise ValueError("zeros/poles at the origin belong in zpow")
        return cls(gain, zpow, zs, ps)

    @classmethod
    def from_fraction(
        cls,
        num: LaurentPoly,
        den: LaurentPoly,
        den_roots: Optional[Sequence[Root]] = None,
        verify: bool = False,
    ) -> "RationalSymbol":
        """Normalize num/den: cancel common roots, factor, classify locations."""
        if den.is_zero:
            raise ZeroDenominator("denominator is identically zero")
        if num.is_zero:
            return cls.zero()
        n_lo, n_arr = num.to_array()
        d_lo, d_arr = den.to_array()
        zpow = n_lo - d_lo
        if den_roots is None:
            den_roots_list = list(poly_roots(den).roots)
        else:
            den_roots_list = list(den_roots)
        # Cancellation is confirmed by the numerator genuinely vanishing at
        # the pole (relative to its Horner magnitude), not by proximity of
        # re-discovered roots: a rediscovered root can land within any fixed
        # radius of a pole without the function being regular there.
        d_lead = d_arr[-1]
        p_arr = n_arr.copy()
        kept_poles: List[Root] = []
        dp: List[complex] = []
        for r in den_roots_list:
            mult = r.mult
            for _ in range(r.mult):
                if len(p_arr) <= 1:
                    break
                val = _polyval_asc(p_arr, r.value)
                mag = _polymag_asc(p_arr, r.value)
                if mag == 0.0 or abs(val) > tol.EPS_EQ * mag:
                    break
                p_arr = _deflate_root(p_arr, r.value)
                dp.append(r.value)
                mult -= 1
            if mult > 0:
                kept_poles.append(Root(r.value, mult, r.loc))
        q_arr = d_arr
        for v in dp:
            q_arr = _deflate_root(q_arr, v)
        num_roots = list(poly_roots(LaurentPoly.from_array(0, p_arr)).roots) if len(p_arr) > 1 else []
        gain = p_arr[-1] / d_lead
        sym = cls(gain, zpow, num_roots, kept_poles)
        # exact coefficient caches from the caller's data, deflation included
        sym._num = LaurentPoly.from_array(0, p_arr / d_lead).shift(zpow)
        sym._den = LaurentPoly.from_array(0, q_arr / d_lead)
        if verify:
            _verify_probe(sym, num, den)
        return sym

    # ------------------------------------------------------------------
    # derived coefficient forms

    @property
    def num(self) -> LaurentPoly:
        """gain * z^zpow * prod (z - z_i)^{m_i} as a Laurent polynomial."""
        if self._num is None:
            if self.is_zero:
                self._num = LaurentPoly.zero()
            else:
                vals: List[complex] = []
                for r in self.zeros:
                    vals.extend([r.value] * r.mult)
                self._num = LaurentPoly.from_roots(vals, self.gain).shift(self.zpow)
        return self._num

    @property
    def den(self) -> LaurentPoly:
        """Monic denominator prod (z - p_j)^{n_j}; never vanishes at 0."""
        if self._den is None:
            vals: List[complex] = []
            for r in self.poles:
                vals.extend([r.value] * r.mult)
            self._den = LaurentPoly.from_roots(vals, 1.0)
        return self._den

    # ------------------------------------------------------------------
    # structure queries

    @property
    def is_zero(self) -> bool:
        return self.gain == 0

    @property
    def delta_infinity(self) -> int:
        """Growth order at infinity: f ~ z^delta."""
        return self.zpow + sum(r.mult for r in self.zeros) - sum(r.mult for r in self.poles)

    def poles_at(self, loc: str) -> int:
        return sum(r.mult for r in self.poles if r.loc == loc)

    def zeros_at(self, loc: str) -> int:
        return sum(r.mult for r in self.zeros if r.loc == loc)

    @property
    def has_circle_pole(self) -> bool:
        return self.poles_at(LOC_ON) > 0

    @property
    def has_circle_zero(self) -> bool:
        return self.zeros_at(LOC_ON) > 0

    def circle_zeros(self) -> List[Root]:
        return [r for r in self.zeros if r.loc == LOC_ON]

    def max_decay_radius(self) -> float:
        """max(|p| inside, 1/|p| outside) over poles; controls Fourier tails."""
        r = 0.0
        for p in self.poles:
            a = abs(p.value)
            r = max(r, a if a < 1 else 1.0 / a)
        return r

    # ------------------------------------------------------------------
    # arithmetic

    def __mul__(self, other) -> "RationalSymbol":
        if isinstance(other, (int, float, complex)):
            if other == 0:
                return RationalSymbol.zero()
            out = RationalSymbol(self.gain * other, self.zpow, self.zeros, self.poles)
            if self._num is not None:
                out._num = self._num.scale(other)
            out._den = self._den
            return out
        if self.is_zero or other.is_zero:
            return RationalSymbol.zero()
        zeros = list(self.zeros) + list(other.zeros)
        poles = list(self.poles) + list(other.poles)
        num_prod = self.num * other.num
        den_prod = self.den * other.den
        # cancellation must be confirmed by the product numerator genuinely
        # vanishing at the pole; a zero kept next to a pole by an operand was
        # already adjudicated and must not be re-matched by distance
        near = any(
            abs(z.value - p.value) <= 1e-6 * max(1.0, abs(p.value))
            for z in zeros
            for p in poles
        )
        if near:
            lo = num_prod.lo
            arr = _asc_from_zero(num_prod.shift(-lo))
            kept_poles: List[Root] = []
            cancelled: List[complex] = []
            for p in poles:
                mult = p.mult
                for _ in range(p.mult):
                    if len(arr) <= 1:
                        break
                    val = _polyval_asc(arr, p.value)
                    mag = _polymag_asc(arr, p.value)
                    if mag == 0.0 or abs(val) > tol.EPS_EQ * mag:
                        break
                    arr = _deflate_root(arr, p.value)
                    cancelled.append(p.value)
                    mult -= 1
                if mult > 0:
                    kept_poles.append(Root(p.value, mult, p.loc))
            num_prod = LaurentPoly.from_array(0, arr).shift(lo)
            d_arr = _asc_from_zero(den_prod)
            for v in cancelled:
                d_arr = _deflate_root(d_arr, v)
            den_prod = LaurentPoly.from_array(0, d_arr)
            kept_zeros: List[Root] = []
            remaining = list(cancelled)
            for z in zeros:
                mult = z.mult
                for _ in range(z.mult):
                    hit = None
                    for i, v in enumerate(remaining):
                        if abs(z.value - v) <= 1e-6 * max(1.0, abs(v)):
                            hit = i
                            break
                    if hit is None:
                        break
                    remaining.pop(hit)
                    mult -= 1
                if mult > 0:
                    kept_zeros.append(Root(z.value, mult, z.loc))
            zeros, poles = kept_zeros, kept_poles
        zs = _combine_repeats(zeros)
        ps = _combine_repeats(poles)
        out = RationalSymbol(self.gain * other.gain, self.zpow + other.zpow, zs, ps)
        out._num = num_prod
        out._den = den_prod
        return out

    __rmul__ = __mul__

    def reciprocal(self) -> "RationalSymbol":
        if self.is_zero:
            raise ZeroDenominator("reciprocal of the zero function")
        out = RationalSymbol(1.0 / self.gain, -self.zpow, self.poles, self.zeros)
        out._num = self.den.scale(1.0 / self.gain).shift(-self.zpow)
        out._den = self.num.shift(-self.zpow).scale(1.0 / self.gain)
        return out

    def __truediv__(self, other) -> "RationalSymbol":
        if isinstance(other, (int, float, complex)):
            return self * (1.0 / other)
        return self * other.reciprocal()

    def __pow__(self, n: int) -> "RationalSymbol":
        if n < 0:
            return self.reciprocal() ** (-n)
        out = RationalSymbol.const(1.0)
        for _ in range(n):
            out = out * self
        return out

    def __neg__(self) -> "RationalSymbol":
        return self * (-1.0)

    def __add__(self, other) -> "RationalSymbol":
        if isinstance(other, (int, float, complex)):
            other = RationalSymbol.const(other)
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        union = _merge_union(self.poles, other.poles)
        ex_self = LaurentPoly.from_roots(_deficit(union, self.poles))
        ex_other = LaurentPoly.from_roots(_deficit(union, other.poles))
        a = self.num * ex_self
        b = other.num * ex_other
        scale = a.norm_inf() + b.norm_inf()
        csum: Dict[int, complex] = {}
        for k, v in a.items():
            csum[k] = csum.get(k, 0.0) + v
        for k, v in b.items():
            csum[k] = csum.get(k, 0.0) + v
        num = LaurentPoly(csum, scale=scale)
        if num.is_zero or num.norm_inf() <= tol.EPS_EQ * scale:
            return RationalSymbol.zero()
        den = LaurentPoly.from_roots([v for r in union for v in [r.value] * r.mult])
        return RationalSymbol.from_fraction(num, den, den_roots=union)

    __radd__ = __add__

    def __sub__(self, other) -> "RationalSymbol":
        if isinstance(other, (int, float, complex)):
            other = RationalSymbol.const(other)
        return self + (-other)

    def __rsub__(self, other) -> "RationalSymbol":
        return (-self) + other

    def conj_circle(self) -> "RationalSymbol":
        """The function z -> conj(f(z)) on |z| = 1, again rational."""
        if self.is_zero:
            return self
        gain = self.gain.conjugate()
        zpow = -self.zpow
        flip = {LOC_IN: LOC_OUT, LOC_OUT: LOC_IN, LOC_ON: LOC_ON}
        zeros = []
        for r in self.zeros:
            v = r.value.conjugate()
            gain *= (-v) ** r.mult
            zpow -= r.mult
            zeros.append(Root(1.0 / v, r.mult, flip[r.loc]))
        poles = []
        for r in self.poles:
            v = r.value.conjugate()
            gain /= (-v) ** r.mult
            zpow += r.mult
            poles.append(Root(1.0 / v, r.mult, flip[r.loc]))
        out = RationalSymbol(gain, zpow, zeros, poles)
        # exact caches: conj-reflect and re-normalize against the den constant
        den = self.den
        deg = den.degree_span()
        d0 = den.coeff(0)
        out._num = self.num.conj_reflect().shift(deg).scale(1.0 / d0.conjugate())
        out._den = den.conj_reflect().shift(deg).scale(1.0 / d0.conjugate())
        return out

    def reflect(self) -> "RationalSymbol":
        """The substitution z -> 1/z (no conjugation)."""
        if self.is_zero:
            return self
        gain = self.gain
        zpow = -self.zpow
        flip = {LOC_IN: LOC_OUT, LOC_OUT: LOC_IN, LOC_ON: LOC_ON}
        zeros = []
        for r in self.zeros:
            gain *= (-r.value) ** r.mult
            zpow -= r.mult
            zeros.append(Root(1.0 / r.value, r.mult, flip[r.loc]))
        poles = []
        for r in self.poles:
            gain /= (-r.value) ** r.mult
            zpow += r.mult
            poles.append(Root(1.0 / r.value, r.mult, flip[r.loc]))
        out = RationalSymbol(gain, zpow, zeros, poles)
        den = self.den
        deg = den.degree_span()
        d0 = den.coeff(0)
        out._num = self.num.reflect_indices().shift(deg).scale(1.0 / d0)
        out._den = den.reflect_indices().shift(deg).scale(1.0 / d0)
        return out

    def derivative(self) -> "RationalSymbol":
        """d/dz, via the logarithmic derivative of the factored form."""
        if self.is_zero:
            return self
        logd = RationalSymbol.zero()
        if self.zpow:
            logd = logd + RationalSymbol(self.zpow, -1, (), ())
        for r in self.zeros:
            logd = logd + RationalSymbol(r.mult, 0, (), (Root(r.value, 1, r.loc),))
        for r in self.poles:
            logd = logd + RationalSymbol(-r.mult, 0, (), (Root(r.value, 1, r.loc),))
        return self * logd

    # ------------------------------------------------------------------
    # evaluation and equality

    def eval(self, z: complex) -> complex:
        # coefficient caches are exact where present; expansion from separated
        # roots is the fallback (clustered numerical roots never feed eval)
        if self.is_zero:
            return 0.0 + 0.0j
        return self.num.eval(z) / self.den.eval(z)

    def equals(self, other, rel: float | None = None) -> bool:
        """Exact equality as rational functions.

        Primary test: cross-multiplied coefficient residual.  When that lands
        in the marginal band just above the tolerance (the cross product can
        amplify conditioning of clustered roots), fall back to comparing
        Fourier coefficient windows, which are computed stably.
        """
        rel = tol.EPS_EQ if rel is None else rel
        if isinstance(other, (int, float, complex)):
            other = RationalSymbol.const(other)
        if self.is_zero and other.is_zero:
            return True
        a = self.num * other.den
        b = other.num * self.den
        scale = a.norm_inf() + b.norm_inf()
        if scale == 0.0:
            return True
        resid = (a - b).norm_inf() / scale
        if resid <= rel:
            return True
        if resid > 1e4 * rel or self.has_circle_pole or other.has_circle_pole:
            return False
        return self._window_close(other, rel)

    def _window_close(self, other: "RationalSymbol", rel: float) -> bool:
        r = max(self.max_decay_radius(), other.max_decay_radius())
        if r >= 1.0:
            return False
        K = 48 if r == 0.0 else min(400, max(48, int(math.ceil(-16.0 * math.log(10.0) / math.log(r)))))
        wa = self.fourier_range(-K, K)
        wb = other.fourier_range(-K, K)
        scale = max(float(np.abs(wa).max()), float(np.abs(wb).max()))
        if scale == 0.0:
            return True
        return float(np.abs(wa - wb).max()) <= rel * scale

    def residual_vs(self, other) -> float:
        """Relative cross-multiplied residual against another symbol."""
        if isinstance(other, (int, float, complex)):
            other = RationalSymbol.const(other)
        a = self.num * other.den
        b = other.num * self.den
        scale = a.norm_inf() + b.norm_inf()
        if scale == 0.0:
            return 0.0
        return (a - b).norm_inf() / scale

    # ------------------------------------------------------------------
    # Fourier data
    #
    # Coefficient extraction rests on the two-sided split of the inverse
    # denominator: 1/den = A/D_in + B/D_out with D_in the inside factor and
    # D_out the outside factor.  A and B come from a Bezout (Sylvester)
    # solve whose conditioning is set by the separation of the two root
    # GROUPS across the circle, never by distances within a group.  The
    # coefficient streams of A/D_in (negative indices) and B/D_out
    # (nonnegative indices) follow from series-division recurrences that are
    # stable precisely because of where the roots live.  Coefficients of f
    # itself are finite convolutions of the exact numerator with these
    # streams.

    def _invden_split(self):
        """(A ascending, D_in ascending, B ascending, D_out ascending)."""
        if self._invden is not None:
            return self._invden
        in_vals: List[complex] = []
        out_vals: List[complex] = []
        for r in self.poles:
            (in_vals if r.loc == LOC_IN else out_vals).extend([r.value] * r.mult)
        d_in = _asc_from_zero(LaurentPoly.from_roots(in_vals))
        d_out = _asc_from_zero(LaurentPoly.from_roots(out_vals))
        n_in, n_out = len(in_vals), len(out_vals)
        if n_in == 0 and n_out == 0:
            a_arr = np.zeros(0, dtype=complex)
            b_arr = np.zeros(0, dtype=complex)
        elif n_in == 0:
            a_arr = np.zeros(0, dtype=complex)
            b_arr = np.zeros(n_out, dtype=complex)
            b_arr[0] = 1.0
        elif n_out == 0:
            a_arr = np.zeros(n_in, dtype=complex)
            a_arr[0] = 1.0
            b_arr = np.zeros(0, dtype=complex)
        else:
            # solve A*D_out + B*D_in = 1 with deg A < n_in, deg B < n_out
            size = n_in + n_out
            M = np.zeros((size, size), dtype=complex)
            for j in range(n_in):  # columns for A coefficients
                M[j : j + n_out + 1, j] = d_out
            for j in range(n_out):  # columns for B coefficients
                M[j : j + n_in + 1, n_in + j] = d_in
            rhs = np.zeros(size, dtype=complex)
            rhs[0] = 1.0
            sol = np.linalg.solve(M, rhs)
            a_arr = sol[:n_in]
            b_arr = sol[n_in:]
        self._invden = (a_arr, d_in, b_arr, d_out)
        return self._invden

    def _invden_window(self, lo: int, hi: int) -> np.ndarray:
        """Fourier coefficients of 1/den on [lo, hi] via stable recurrences.

        A/D_in at z = 1/w equals w * rev(A)(w)/rev(D_in)(w), whose Taylor
        stream gives the coefficients at -1, -2, ...; B/D_out is its own
        Taylor series at the origin.
        """
        a_arr, d_in, b_arr, d_out = self._invden_split()
        if not len(a_arr) and not len(b_arr):
            out = np.zeros(hi - lo + 1, dtype=complex)
            if lo <= 0 <= hi:
                out[-lo] = 1.0  # den = 1
            return out
        return self._stream_inside(a_arr, d_in, lo, hi) + self._stream_outside(
            b_arr, d_out, lo, hi
        )

    def fourier_range(self, lo: int, hi: int) -> np.ndarray:
        """Fourier coefficients hat f(k) for k in [lo, hi]."""
        out = np.zeros(hi - lo + 1, dtype=complex)
        if self.is_zero:
            return out
        if self.has_circle_pole:
            raise PoleOnCircle("Fourier coefficients need a pole-free circle")
        num = self.num
        if not self.poles:
            for k, v in num.items():
                if lo <= k <= hi:
                    out[k - lo] += v
            return out
        w = self._invden_window(lo - num.hi, hi - num.lo)
        for t, v in num.items():
            # hat f(k) += v * hat(1/den)(k - t) for k in [lo, hi]
            start = lo - t - (lo - num.hi)
            out += v * w[start : start + len(out)]
        return out

    def fourier(self, k: int) -> complex:
        return complex(self.fourier_range(k, k)[0])

    def riesz(self, side: str) -> "RationalSymbol":
        """Riesz projection: 'plus' keeps indices >= 0, 'minus' the rest."""
        if side not in ("plus", "minus"):
            raise ValueError("side must be 'plus' or 'minus'")
        if self.is_zero:
            return self
        if self.has_circle_pole:
            raise PoleOnCircle("Riesz projection needs a pole-free circle")
        minus = self._assemble_minus()
        if side == "minus":
            return minus
        return self - minus

    def _assemble_minus(self) -> "RationalSymbol":
        """P- f = (num*A/D_in - its nonneg window) + negative window of
        num*B/D_out, using the two-sided inverse-denominator split."""
        num = self.num
        if not self.poles:
            neg = LaurentPoly({k: v for k, v in num.items() if k < 0})
            if neg.is_zero:
                return RationalSymbol.zero()
            return RationalSymbol.from_fraction(neg, LaurentPoly.one(), den_roots=[])
        a_arr, d_in_arr, b_arr, d_out_arr = self._invden_split()
        inside_roots = [r for r in self.poles if r.loc == LOC_IN]
        d_in = LaurentPoly.from_array(0, d_in_arr)
        total = LaurentPoly.zero()
        if len(a_arr):
            num_i = LaurentPoly.from_array(0, a_arr)
            prod = num * num_i
            total = total + prod
            if num.hi >= 1:
                # nonneg window of num*A/D_in: convolution with its stream
                w_in = self._stream_inside(a_arr, d_in_arr, -num.hi, num.hi - num.lo)
                plus_window: Dict[int, complex] = {}
                for t, v in num.items():
                    for k in range(0, num.hi):
                        idx = k - t + num.hi
                        if 0 <= idx < len(w_in):
                            plus_window[k] = plus_window.get(k, 0.0) + v * w_in[idx]
                plus_poly = LaurentPoly(plus_window, scale=prod.norm_inf())
                total = total - plus_poly * d_in
        if len(b_arr) and num.lo <= -1:
            w_out = self._stream_outside(b_arr, d_out_arr, 0, -1 - num.lo)
            neg_window: Dict[int, complex] = {}
            for t, v in num.items():
                for k in range(num.lo, 0):
                    idx = k - t
                    if 0 <= idx < len(w_out):
                        neg_window[k] = neg_window.get(k, 0.0) + v * w_out[idx]
            neg_poly = LaurentPoly(neg_window, scale=num.norm_inf())
            total = total + neg_poly * d_in
        if total.is_zero:
            return RationalSymbol.zero()
        return RationalSymbol.from_fraction(total, d_in, den_roots=inside_roots)

    @staticmethod
    def _stream_inside(a_arr, d_in_arr, lo: int, hi: int) -> np.ndarray:
        """Coefficients of A/D_in on [lo, hi] (supported on k <= -1)."""
        ks = np.arange(lo, hi + 1)
        out = np.zeros(len(ks), dtype=complex)
        if lo < 0 and len(a_arr):
            n_in = len(d_in_arr) - 1
            a_rev = np.zeros(n_in, dtype=complex)
            a_rev[: len(a_arr)] = a_arr
            a_rev = a_rev[::-1]
            stream = _series_div(a_rev, d_in_arr[::-1], -lo)
            neg = ks < 0
            out[neg] = stream[(-ks[neg] - 1).astype(int)]
        return out

    @staticmethod
    def _stream_outside(b_arr, d_out_arr, lo: int, hi: int) -> np.ndarray:
        """Coefficients of B/D_out on [lo, hi] (supported on k >= 0)."""
        ks = np.arange(lo, hi + 1)
        out = np.zeros(len(ks), dtype=complex)
        if hi >= 0 and len(b_arr):
            stream = _series_div(b_arr, d_out_arr, hi + 1)
            pos = ks >= 0
            out[pos] = stream[ks[pos].astype(int)]
        return out

    # ------------------------------------------------------------------
    # membership

    def membership(self, tag: SpaceTag) -> bool:
        if tag == SpaceTag.L2:
            return not self.has_circle_pole
        if tag == SpaceTag.H2PLUS:
            return (not self.has_circle_pole) and self.poles_at(LOC_IN) == 0 and self.zpow >= 0
        if tag == SpaceTag.H2MINUS:
            return (
                (not self.has_circle_pole)
                and self.poles_at(LOC_OUT) == 0
                and (self.is_zero or self.delta_infinity < 0)
            )
        if tag == SpaceTag.HINF:
            return (not self.has_circle_pole) and self.poles_at(LOC_IN) == 0 and self.zpow >= 0
        if tag == SpaceTag.HINF_BAR:
            return (
                (not self.has_circle_pole)
                and self.poles_at(LOC_OUT) == 0
                and (self.is_zero or self.delta_infinity <= 0)
            )
        if tag == SpaceTag.INNER_PLUS:
            return self._is_inner_plus()
        if tag == SpaceTag.OUTER_PLUS:
            return (
                (not self.is_zero)
                and self.membership(SpaceTag.H2PLUS)
                and self.zeros_at(LOC_IN) == 0
                and self.zpow == 0
            )
        if tag == SpaceTag.OUTER_MINUS:
            if self.is_zero or not self.membership(SpaceTag.H2MINUS):
                return False
            reflected = self.conj_circle() * RationalSymbol.monomial(-1)
            return reflected.membership(SpaceTag.OUTER_PLUS)
        raise ValueError(f"unknown space tag {tag}")

    def _is_inner_plus(self) -> bool:
        if self.is_zero or not self.membership(SpaceTag.HINF):
            return False
        if self.zpow < 0 or any(r.loc != LOC_IN for r in self.zeros):
            return False
        # poles must mirror the zeros at 1/conj(z) with equal multiplicity
        needed = {(r.value, r.mult) for r in self.zeros}
        mirrored = []
        for v, m in needed:
            w = 1.0 / v.conjugate()
            ok = any(
                abs(p.value - w) <= 1e-8 * max(1.0, abs(w)) and p.mult == m for p in self.poles
            )
            if not ok:
                return False
            mirrored.append(w)
        if sum(r.mult for r in self.poles) != sum(r.mult for r in self.zeros):
            return False
        for t in probe_points(16):
            if abs(abs(self.eval(t)) - 1.0) > 1e-9:
                return False
        return True

    # ------------------------------------------------------------------
    # circle norms

    def sup_circle(self, n: int = 8192) -> float:
        """sup |f| on the circle, grid search plus Newton refinement."""
        if self.is_zero:
            return 0.0
        if self.has_circle_pole:
            raise PoleOnCircle("unbounded on the circle")
        mod2 = self * self.conj_circle()  # real and nonnegative on |z|=1
        thetas = np.linspace(0.0, 2.0 * math.pi, n, endpoint=False)
        vals = np.array([mod2.eval(cmath.exp(1j * t)).real for t in thetas])
        i0 = int(np.argmax(vals))
        theta = float(thetas[i0])
        d1 = mod2.derivative()
        d2 = d1.derivative()
        for _ in range(4):
            z = cmath.exp(1j * theta)
            u1 = (1j * z * d1.eval(z)).real
            u2 = (-(z * z) * d2.eval(z) - z * d1.eval(z)).real
            if u2 >= 0 or not math.isfinite(u1) or not math.isfinite(u2):
                break
            step = u1 / u2
            if abs(step) > 2.0 * math.pi / n:
                break
            theta -= step
        best = max(float(np.max(vals)), mod2.eval(cmath.exp(1j * theta)).real)
        return math.sqrt(max(best, 0.0))

    # ------------------------------------------------------------------
    # serialization

    def to_json(self):
        if self.is_zero:
            return {"coeffs": {}}
        if not self.poles:
            return {
                "coeffs": {
                    str(k): [float(v.real), float(v.imag)] for k, v in sorted(self.num.items())
                }
            }
        return {
            "gain": [float(self.gain.real), float(self.gain.imag)],
            "zpow": self.zpow,
            "zeros": [
                {"z": [float(r.value.real), float(r.value.imag)], "m": r.mult, "loc": r.loc}
                for r in self.zeros
            ],
            "poles": [
                {"z": [float(r.value.real), float(r.value.imag)], "m": r.mult, "loc": r.loc}
                for r in self.poles
            ],
        }

    @classmethod
    def from_json(cls, data) -> "RationalSymbol":
        if "coeffs" in data:
            coeffs = {int(k): complex(v[0], v[1]) for k, v in data["coeffs"].items()}
            return cls.from_coeffs(coeffs)
        gain = complex(data["gain"][0], data["gain"][1])
        zpow = int(data.get("zpow", 0))

        def load(entries):
            out = []
            for e in entries:
                v = complex(e["z"][0], e["z"][1])
                loc = e.get("loc")
                if loc is None:
                    loc = classify(v)
                elif loc not in (LOC_IN, LOC_ON, LOC_OUT):
                    raise ValueError(f"bad location tag {loc!r}")
                out.append(Root(v, int(e.get("m", 1)), loc))
            return out

        return cls.from_zpk(gain, zpow, load(data.get("zeros", [])), load(data.get("poles", [])))

    def __repr__(self) -> str:
        if self.is_zero:
            return "RationalSymbol(0)"
        zs = ", ".join(f"{r.value:.4g}^{r.mult}{r.loc[0]}" for r in self.zeros)
        ps = ", ".join(f"{r.value:.4g}^{r.mult}{r.loc[0]}" for r in self.poles)
        return f"RationalSymbol(gain={self.gain:.4g}, z^{self.zpow}, zeros=[{zs}], poles=[{ps}])"


def _combine_repeats(roots: List[Root]) -> List[Root]:
    """Merge root entries that refer to the same clustered value."""
    out: List[List] = []
    for r in sorted(roots, key=lambda t: (t.value.real, t.value.imag)):
        for o in out:
            if abs(o[0] - r.value) <= tol.EPS_CANCEL * max(1.0, abs(r.value)):
                o[1] += r.mult
                break
        else:
            out.append([r.value, r.mult, r.loc])
    return [Root(v, m, loc) for v, m, loc in out]


def _asc_from_zero(lp: LaurentPoly) -> np.ndarray:
    """Ascending coefficient array indexed from 0 (requires lo >= 0)."""
    if lp.is_zero:
        return np.zeros(1, dtype=complex)
    if lp.lo < 0:
        raise ValueError("negative support where an ordinary polynomial was expected")
    arr = np.zeros(lp.hi + 1, dtype=complex)
    for k, val in lp.items():
        arr[k] = val
    return arr


def _polyval_asc(arr: np.ndarray, v: complex) -> complex:
    out = 0.0 + 0.0j
    for c in arr[::-1]:
        out = out * v + c
    return out


def _polymag_asc(arr: np.ndarray, v: complex) -> float:
    """Horner magnitude sum |c_k| |v|^k: the natural scale for value tests."""
    out = 0.0
    av = abs(v)
    for c in arr[::-1]:
        out = out * av + abs(c)
    return out


def _syndiv(coeffs_asc: np.ndarray, v: complex):
    """Divide polynomial (ascending coeffs) by (z - v): return (remainder, quotient)."""
    n = len(coeffs_asc)
    if n == 0:
        return 0.0 + 0.0j, coeffs_asc
    q = np.zeros(n - 1, dtype=complex)
    acc = coeffs_asc[-1]
    for j in range(n - 2, -1, -1):
        q[j] = acc
        acc = coeffs_asc[j] + acc * v
    return acc, q


def _deflate_root(coeffs_asc: np.ndarray, v: complex) -> np.ndarray:
    """Divide by (z - v) assuming v is a root.

    Forward synthetic division is stable for |v| <= 1; for larger roots the
    recursion must run from the constant term upward (dividing by v damps
    the rounding instead of amplifying it)."""
    n = len(coeffs_asc)
    if n <= 1:
        return np.zeros(0, dtype=complex)
    if abs(v) <= 1.0:
        _, q = _syndiv(coeffs_asc, v)
        return q
    q = np.zeros(n - 1, dtype=complex)
    acc = -coeffs_asc[0] / v
    q[0] = acc
    for j in range(1, n - 1):
        acc = (acc - coeffs_asc[j]) / v
        q[j] = acc
    return q


def _series_div(num: np.ndarray, den: np.ndarray, order: int) -> np.ndarray:
    """Power-series quotient num/den to the given order (den[0] != 0)."""
    out = np.zeros(order, dtype=complex)
    d0 = den[0]
    for i in range(order):
        acc = num[i] if i < len(num) else 0.0
        for j in range(1, i + 1):
            if j < len(den):
                acc -= den[j] * out[i - j]
        out[i] = acc / d0
    return out


def _verify_probe(sym: RationalSymbol, num: LaurentPoly, den: LaurentPoly):
    checked = 0
    for t in probe_points(16):
        dv = den.eval(t)
        if abs(dv) < 1e-6 * max(den.norm_inf(), 1e-300):
            continue
        want = num.eval(t) / dv
        got = sym.eval(t)
        scale = max(abs(want), abs(got), 1.0)
        if abs(want - got) > 1e-7 * scale:
            raise ArithmeticError(
                f"normalization drifted at probe {t:.4f}: {want} vs {got}"
            )
        checked += 1
    if checked < 4:
        raise ArithmeticError("too few usable probe points (denominator vanishes)")


def rf_normalize(num: LaurentPoly, den: LaurentPoly) -> RationalSymbol:
    """Public normalizer: cancel, factor, and certify by probe evaluation."""
    return RationalSymbol.from_fraction(num, den, verify=True)


def circle_conjugate(f: RationalSymbol) -> RationalSymbol:
    return f.conj_circle()


def fourier_coefficient(f: RationalSymbol, k: int) -> complex:
    return f.fourier(k)


def riesz_project(f: RationalSymbol, side: str) -> RationalSymbol:
    return f.riesz(side)


def membership(f: RationalSymbol, space: SpaceTag) -> bool:
    return f.membership(space)


def inner_product(f: RationalSymbol, g: RationalSymbol) -> complex:
    """L2 inner product <f, g> as the 0th Fourier coefficient of f * conj(g)."""
    prod = f * g.conj_circle()
    if prod.is_zero:
        return 0.0 + 0.0j
    return prod.fourier(0)
