"""Exact kernels of Toeplitz, paired, and transposed paired operators with
rational symbols, plus the numerical kernel oracle.

For a regular quotient g = a/b (no zeros or poles on the circle) with winding
index kappa = -n < 0 and Wiener-Hopf data g = g_minus z^kappa g_plus:

* ker T_g           = span{ z^j / g_plus : 0 <= j < n }
* ker (a P+ + b P-) = { phi_+ + phi_- : phi_+ in ker T_g, phi_- = -g phi_+ }
* ker (P+ a + P- b) = { p(z) / (g_plus b) : deg p < n,
                        p vanishing at each circle zero of b to its order }

The last description is what makes the transposed kernel computable exactly:
writing psi in the kernel as psi = (b psi)/b forces b*psi into ker T_g, and
membership of psi in L2 is exactly the vanishing condition at the circle
zeros of b.  Symbols whose *quotient* carries circle zeros or poles are
routed to the numerical oracle instead of being enumerated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from . import tolerances as tol
from .errors import (
    DegenerateInput,
    DegenerateSymbol,
    NotInKernel,
    NotInner,
    NotInHardySpaces,
    OracleIndeterminate,
    PartitionOfUnityFails,
    PoleOnCircle,
    SymbolNotBounded,
    TrivialKernel,
)
from .factorization import blaschke, inner_outer, wiener_hopf, winding_index
from .operators import bandwidth, build, truncate
from .rational import RationalSymbol, SpaceTag
from .roots import LOC_IN, LOC_OUT, Root

H2P, H2M = SpaceTag.H2PLUS, SpaceTag.H2MINUS

STATUS_EXACT = "exact"
STATUS_EMPTY = "empty"
STATUS_NEEDS_ORACLE = "needs_oracle"


@dataclass(frozen=True)
class SymbolPair:
    """Symbols (a, b), both bounded, both nonzero a.e. on the circle."""

    a: RationalSymbol
    b: RationalSymbol

    def __post_init__(self):
        if self.a.is_zero or self.b.is_zero:
            raise DegenerateSymbol("both symbols must be nonzero a.e.")
        if self.a.has_circle_pole or self.b.has_circle_pole:
            raise SymbolNotBounded("symbols must be essentially bounded")

    @property
    def nondegenerate(self) -> bool:
        return not self.a.equals(self.b)

    def quotient(self) -> RationalSymbol:
        return self.a / self.b

    def swap(self) -> "SymbolPair":
        return SymbolPair(self.b, self.a)


@dataclass(frozen=True)
class PairedElement:
    plus: RationalSymbol
    minus: RationalSymbol

    @property
    def total(self) -> RationalSymbol:
        return self.plus + self.minus


@dataclass(frozen=True)
class KernelBasis:
    elements: tuple
    status: str
    dimension: Optional[int]
    certificate: dict = field(default_factory=dict)

    @property
    def is_empty(self) -> bool:
        return self.status == STATUS_EMPTY

    def totals(self) -> List[RationalSymbol]:
        out = []
        for e in self.elements:
            out.append(e.total if isinstance(e, PairedElement) else e)
        return out

    def to_json(self):
        basis = []
        for e in self.elements:
            if isinstance(e, PairedElement):
                basis.append({"plus": e.plus.to_json(), "minus": e.minus.to_json()})
            else:
                basis.append(e.to_json())
        payload = {
            "status": self.status,
            "dimension": self.dimension,
            "basis": basis,
        }
        if self.certificate:
            payload["certificate"] = self.certificate
        return payload


# ----------------------------------------------------------------------
# membership tests (exact, valid for every rational symbol pair)


def member_S(f: RationalSymbol, p: SymbolPair) -> bool:
    """Exact test a*P+f + b*P-f == 0."""
    if f.has_circle_pole:
        raise PoleOnCircle("membership test needs an L2 input")
    if f.is_zero:
        return True
    lhs = p.a * f.riesz("plus")
    rhs = -(p.b * f.riesz("minus"))
    return lhs.equals(rhs)


def member_Sigma(f: RationalSymbol, p: SymbolPair) -> bool:
    """Exact test P+(a f) == 0 and P-(b f) == 0."""
    if f.has_circle_pole:
        raise PoleOnCircle("membership test needs an L2 input")
    if f.is_zero:
        return True
    af = p.a * f
    bf = p.b * f
    return af.membership(H2M) and bf.membership(H2P)


# ----------------------------------------------------------------------
# exact kernels


def toeplitz_kernel(g: RationalSymbol) -> KernelBasis:
    """Kernel of f -> P+(g f) on the plus Hardy space (domain-filtered)."""
    if g.is_zero:
        raise DegenerateSymbol("Toeplitz symbol must be nonzero a.e.")
    if g.has_circle_pole or g.has_circle_zero:
        return KernelBasis(
            (),
            STATUS_NEEDS_ORACLE,
            None,
            {"reason": "symbol has zeros or poles on the circle; no exact enumeration"},
        )
    kappa = winding_index(g)
    if kappa >= 0:
        return KernelBasis((), STATUS_EMPTY, 0, {"kappa": kappa})
    fac = wiener_hopf(g)
    inv_plus = fac.g_plus.reciprocal()
    elements = []
    for j in range(-kappa):
        e = inv_plus * RationalSymbol.monomial(j)
        img = g * e
        if not (img.membership(H2M) and e.membership(H2P)):
            raise ArithmeticError("constructed Toeplitz kernel element fails verification")
        elements.append(e)
    return KernelBasis(tuple(elements), STATUS_EXACT, -kappa, {"kappa": kappa})


def paired_kernel(p: SymbolPair) -> KernelBasis:
    """Kernel of a P+ + b P- as pairs (phi_+, phi_-)."""
    if not p.nondegenerate:
        # multiplication by a nonzero a.e. function is injective
        return KernelBasis((), STATUS_EMPTY, 0, {"reason": "degenerate pair: multiplication operator"})
    g = p.quotient()
    tk = toeplitz_kernel(g)
    if tk.status == STATUS_NEEDS_ORACLE:
        return KernelBasis((), STATUS_NEEDS_ORACLE, None, tk.certificate)
    elements = []
    for phi_plus in tk.elements:
        phi_minus = -(g * phi_plus)
        if not (phi_minus.membership(H2M) and not phi_minus.has_circle_pole):
            continue  # quotient domain filtering
        el = PairedElement(phi_plus, phi_minus)
        if not member_S(el.total, p):
            raise ArithmeticError("constructed paired kernel element fails verification")
        elements.append(el)
    status = STATUS_EXACT if elements else STATUS_EMPTY
    return KernelBasis(tuple(elements), status, len(elements), dict(tk.certificate))


def _circle_zero_poly(sym: RationalSymbol) -> Tuple[RationalSymbol, int]:
    """(monic polynomial through the circle zeros of sym, total multiplicity)."""
    roots = sym.circle_zeros()
    m = sum(r.mult for r in roots)
    if m == 0:
        return RationalSymbol.const(1.0), 0
    return RationalSymbol(1.0, 0, tuple(roots), ()), m


def _sigma_side_conditions(p: SymbolPair, fac) -> dict:
    """L2 side conditions for the canonical representation of the quotient."""
    o_minus_over_a = fac.g_minus / p.a
    o_plus_over_b = fac.g_plus.reciprocal() / p.b
    return {
        "O_minus_over_a_in_L2": o_minus_over_a.membership(SpaceTag.L2),
        "O_plus_over_b_in_L2": o_plus_over_b.membership(SpaceTag.L2),
    }


def transposed_kernel(p: SymbolPair) -> KernelBasis:
    """Kernel of P+ a + P- b, enumerated exactly for regular quotients."""
    if not p.nondegenerate:
        # a f in H2+ and H2- simultaneously forces a f = 0, hence f = 0
        return KernelBasis((), STATUS_EMPTY, 0, {"reason": "degenerate pair: kernel is {0}"})
    g = p.quotient()
    if g.has_circle_pole or g.has_circle_zero:
        return KernelBasis(
            (),
            STATUS_NEEDS_ORACLE,
            None,
            {"reason": "quotient has zeros or poles on the circle; no exact enumeration"},
        )
    kappa = winding_index(g)
    if kappa >= 0:
        return KernelBasis(
            (), STATUS_EMPTY, 0, {"kappa": kappa, "reason": "paired kernel already trivial"}
        )
    fac = wiener_hopf(g)
    n = -kappa
    qsym, m_on = _circle_zero_poly(p.b)
    cert = {
        "kappa": kappa,
        "circle_zero_mult_b": m_on,
        "side_conditions": _sigma_side_conditions(p, fac),
    }
    if n <= m_on:
        cert["reason"] = (
            "every candidate (b psi)/b leaves L2: the circle zeros of b absorb "
            "the whole Toeplitz kernel"
        )
        return KernelBasis((), STATUS_EMPTY, 0, cert)
    base = qsym / (fac.g_plus * p.b)
    elements = []
    for j in range(n - m_on):
        e = base * RationalSymbol.monomial(j)
        if not member_Sigma(e, p):
            raise ArithmeticError("constructed transposed kernel element fails verification")
        elements.append(e)
    return KernelBasis(tuple(elements), STATUS_EXACT, n - m_on, cert)


# ----------------------------------------------------------------------
# nontriviality with witnesses


@dataclass(frozen=True)
class NontrivialityResult:
    status: object  # True | False | "needs_oracle"
    witness: Optional[RationalSymbol]
    certificate: dict

    def __bool__(self):
        return self.status is True


def nontrivial_S(p: SymbolPair) -> NontrivialityResult:
    """Decide ker(a P+ + b P-) != {0}; on success return a verified witness."""
    if not p.nondegenerate:
        return NontrivialityResult(False, None, {"reason": "degenerate pair"})
    g = p.quotient()
    if g.has_circle_pole or g.has_circle_zero:
        return NontrivialityResult(
            "needs_oracle", None, {"reason": "quotient has circle zeros or poles"}
        )
    kappa = winding_index(g)
    if kappa >= 0:
        return NontrivialityResult(False, None, {"kappa": kappa})
    fac = wiener_hopf(g)
    # witness O_+ - I_- O_- from the factored quotient
    witness = fac.g_plus.reciprocal() - RationalSymbol.monomial(kappa) * fac.g_minus
    if not member_S(witness, p):
        raise ArithmeticError("nontriviality witness fails membership")
    return NontrivialityResult(True, witness, {"kappa": kappa})


def nontrivial_Sigma(p: SymbolPair) -> NontrivialityResult:
    """Decide ker(P+ a + P- b) != {0} with witness O_+/b when nontrivial."""
    if not p.nondegenerate:
        raise DegenerateSymbol("nondegenerate pair required")
    g = p.quotient()
    if g.has_circle_pole or g.has_circle_zero:
        return NontrivialityResult(
            "needs_oracle", None, {"reason": "quotient has circle zeros or poles"}
        )
    kappa = winding_index(g)
    if kappa >= 0:
        return NontrivialityResult(False, None, {"kappa": kappa})
    fac = wiener_hopf(g)
    n = -kappa
    qsym, m_on = _circle_zero_poly(p.b)
    cert = {
        "kappa": kappa,
        "circle_zero_mult_b": m_on,
        "side_conditions": _sigma_side_conditions(p, fac),
    }
    if n <= m_on:
        cert["reason"] = "L2 side conditions fail for every admissible outer pair"
        return NontrivialityResult(False, None, cert)
    witness = qsym / (fac.g_plus * p.b)  # = O_+/b with O_+ = q/g_plus outer
    if not member_Sigma(witness, p):
        raise ArithmeticError("nontriviality witness fails membership")
    return NontrivialityResult(True, witness, cert)


def kernels_equal_S(p: SymbolPair, q: SymbolPair) -> bool:
    """For a nontrivial paired kernel: equality holds iff a*b~ == a~*b."""
    res = nontrivial_S(p)
    if res.status is not True:
        raise TrivialKernel("equality criterion requires a nontrivial kernel")
    return (p.a * q.b).equals(q.a * p.b)


# ----------------------------------------------------------------------
# the unique paired kernel through a given function


def symbols_from_function(phi_plus: RationalSymbol, phi_minus: RationalSymbol) -> SymbolPair:
    """Construct the symbol pair whose paired kernel contains phi_+ + phi_-.

    Build conj(I_+)/O_+ and -conj(I_-)/O_- from inner-outer data, then clear
    circle zeros of the outer parts with a common polynomial so both symbols
    stay bounded.  The output passes the exact kernel membership test.
    """
    if phi_plus.is_zero or phi_minus.is_zero:
        raise DegenerateInput("a kernel element has both halves nonzero")
    if not phi_plus.membership(H2P) or not phi_minus.membership(H2M):
        raise NotInHardySpaces("inputs must lie in their Hardy spaces")
    io_p = inner_outer(phi_plus, "plus")
    io_m = inner_outer(phi_minus, "minus")
    clear_roots = tuple(io_p.outer.circle_zeros()) + tuple(io_m.outer.circle_zeros())
    w = RationalSymbol(1.0, 0, clear_roots, ()) if clear_roots else RationalSymbol.const(1.0)
    a = io_p.inner.conj_circle() * w / io_p.outer
    b = -(io_m.inner.conj_circle()) * w / io_m.outer
    pair = SymbolPair(a, b)
    if not member_S(phi_plus + phi_minus, pair):
        raise ArithmeticError("constructed pair fails the kernel membership")
    return pair


# ----------------------------------------------------------------------
# the map between the two kernel types


def j_map(
    psi: RationalSymbol,
    p: SymbolPair,
    inverse: bool = False,
    a_prime: Optional[RationalSymbol] = None,
    b_prime: Optional[RationalSymbol] = None,
) -> RationalSymbol:
    """Forward: psi in ker(P+ a + P- b) -> (a-b) psi in ker(a P+ + b P-).

    Inverse: needs a', b' with a a' + b b' = 1; then a' P- - b' P+ maps the
    paired kernel back.  When b (or a) has no circle zeros the witnesses
    (0, 1/b) (resp. (1/a, 0)) are supplied automatically.
    """
    if not p.nondegenerate:
        raise DegenerateSymbol("nondegenerate pair required")
    if not inverse:
        if not member_Sigma(psi, p):
            raise NotInKernel("input is not in the transposed kernel")
        out = (p.a - p.b) * psi
        if not member_S(out, p):
            raise ArithmeticError("forward image fails paired membership")
        return out
    if not member_S(psi, p):
        raise NotInKernel("input is not in the paired kernel")
    if a_prime is None and b_prime is None:
        if not p.b.has_circle_zero:
            a_prime, b_prime = RationalSymbol.zero(), p.b.reciprocal()
        elif not p.a.has_circle_zero:
            a_prime, b_prime = p.a.reciprocal(), RationalSymbol.zero()
        else:
            raise PartitionOfUnityFails(
                "no automatic witnesses: both symbols vanish on the circle"
            )
    a_prime = a_prime if a_prime is not None else RationalSymbol.zero()
    b_prime = b_prime if b_prime is not None else RationalSymbol.zero()
    if a_prime.has_circle_pole or b_prime.has_circle_pole:
        raise PartitionOfUnityFails("witnesses must be bounded")
    if not (p.a * a_prime + p.b * b_prime).equals(RationalSymbol.const(1.0)):
        raise PartitionOfUnityFails("a a' + b b' != 1")
    out = a_prime * psi.riesz("minus") - b_prime * psi.riesz("plus")
    if not member_Sigma(out, p):
        raise ArithmeticError("inverse image fails transposed membership")
    return out


# ----------------------------------------------------------------------
# inclusion of transposed kernels


def _has_plus_inner_factor(h: RationalSymbol) -> bool:
    """Nonconstant inner factor of a rational bounded-analytic function."""
    return h.zpow > 0 or h.zeros_at(LOC_IN) > 0


def _has_minus_inner_factor(h: RationalSymbol) -> bool:
    """Nonconstant inner factor of conj(h) for h in the conjugate algebra."""
    return h.delta_infinity < 0 or h.zeros_at(LOC_OUT) > 0


def sigma_inclusion(p: SymbolPair, q: SymbolPair) -> str:
    """Compare ker(P+ a + P- b) for two pairs: subset / equal / no_subset / unknown."""
    res = nontrivial_Sigma(p)
    if res.status is False:
        raise TrivialKernel("inclusion criterion requires a nontrivial kernel")
    kb_p = transposed_kernel(p)
    kb_q = transposed_kernel(q)
    if kb_p.status != STATUS_NEEDS_ORACLE and kb_q.status != STATUS_NEEDS_ORACLE:
        forward = all(member_Sigma(e, q) for e in kb_p.elements)
        backward = all(member_Sigma(e, p) for e in kb_q.elements)
        if forward and backward and kb_p.dimension == kb_q.dimension:
            return "equal"
        if forward:
            return "subset"
        return "no_subset"
    h_minus = q.a / p.a
    h_plus = q.b / p.b
    if h_minus.membership(SpaceTag.HINF_BAR) and h_plus.membership(SpaceTag.HINF):
        strict = _has_minus_inner_factor(h_minus) or _has_plus_inner_factor(h_plus)
        return "subset" if strict else "equal"
    r_minus = p.a / q.a
    r_plus = p.b / q.b
    if r_minus.membership(SpaceTag.HINF_BAR) and r_plus.membership(SpaceTag.HINF):
        if _has_minus_inner_factor(r_minus) or _has_plus_inner_factor(r_plus):
            return "no_subset"
        return "equal"
    return "unknown"


# ----------------------------------------------------------------------
# model spaces


def model_space_basis(theta: RationalSymbol) -> KernelBasis:
    """Basis of the model space K_theta = ker(P+ conj(theta) + P- 1)."""
    if not theta.membership(SpaceTag.INNER_PLUS):
        raise NotInner("model spaces need an inner function")
    pair = SymbolPair(theta.conj_circle(), RationalSymbol.const(1.0))
    factors: List[RationalSymbol] = []
    kernels: List[RationalSymbol] = []
    for _ in range(theta.zpow):
        factors.append(RationalSymbol.monomial(1))
        kernels.append(RationalSymbol.const(1.0))
    for r in theta.zeros:
        refl = 1.0 / r.value.conjugate()
        k_a = RationalSymbol(-1.0 / r.value.conjugate(), 0, (), (Root(refl, 1, LOC_OUT),))
        for _ in range(r.mult):
            factors.append(blaschke(r.value))
            kernels.append(k_a)
    elements = []
    prefix = RationalSymbol.const(1.0)
    for fac, ker in zip(factors, kernels):
        e = prefix * ker
        if not member_Sigma(e, pair):
            raise ArithmeticError("model space element fails membership")
        elements.append(e)
        prefix = prefix * fac
    dim = len(elements)
    return KernelBasis(tuple(elements), STATUS_EXACT if dim else STATUS_EMPTY, dim, {})


# ----------------------------------------------------------------------
# linear-algebra helpers over coefficient windows


def decay_window(elems: Sequence[RationalSymbol], floor: int = 48, cap: int = 400) -> int:
    """Window half-width so that coefficient tails are below machine noise."""
    r = 0.0
    for e in elems:
        r = max(r, e.max_decay_radius())
    if r <= 0.0:
        return floor
    need = int(math.ceil(-16.0 * math.log(10.0) / math.log(r))) if r < 1 else cap
    return max(floor, min(cap, need))


def coeff_matrix(elems: Sequence[RationalSymbol], half_width: Optional[int] = None) -> np.ndarray:
    elems = list(elems)
    if not elems:
        return np.zeros((0, 1), dtype=complex)
    K = decay_window(elems) if half_width is None else half_width
    return np.vstack([e.fourier_range(-K, K) for e in elems])


def span_rank(elems: Sequence[RationalSymbol], rank_tol: Optional[float] = None) -> int:
    from .operators import numerical_rank

    M = coeff_matrix(elems)
    if M.shape[0] == 0:
        return 0
    res = numerical_rank(M, rank_tol)
    if res.indeterminate:
        raise OracleIndeterminate("span rank lacks a spectral gap", res)
    return res.rank


def linearly_independent(elems: Sequence[RationalSymbol]) -> bool:
    elems = list(elems)
    return span_rank(elems) == len(elems)


def span_defect(
    basis: Sequence[RationalSymbol],
    images: Sequence[RationalSymbol],
    rank_tol: Optional[float] = None,
) -> int:
    """dim(span(basis + images)) - dim(span(basis)), gap-certified."""
    basis = list(basis)
    images = list(images)
    if not images:
        return 0
    K = decay_window(basis + images)
    M0 = coeff_matrix(basis, K)
    M1 = coeff_matrix(basis + images, K)
    from .operators import numerical_rank

    r0 = numerical_rank(M0, rank_tol) if len(basis) else None
    r1 = numerical_rank(M1, rank_tol)
    if (r0 is not None and r0.indeterminate) or r1.indeterminate:
        raise OracleIndeterminate("defect computation lacks a spectral gap", r1)
    return r1.rank - (r0.rank if r0 is not None else 0)


# ----------------------------------------------------------------------
# numerical kernel oracle


@dataclass(frozen=True)
class OracleResult:
    dim_estimate: int
    gap: float
    candidates: np.ndarray  # rows: kernel candidates over kept column indices
    kept_indices: np.ndarray
    stable: Optional[bool]
    sigma_max: float

    def to_json(self):
        return {
            "dim_estimate": self.dim_estimate,
            "gap": self.gap if math.isfinite(self.gap) else "inf",
            "stable": self.stable,
            "sigma_max": self.sigma_max,
        }


def _oracle_once(node, N: int, rank_tol: float):
    M = truncate(node, N)
    d = bandwidth(node)
    keep = np.ones(len(M.in_indices), dtype=bool)
    if d > 0:
        lo_real = M.in_indices[0] <= -N  # artificial window edge on the low side
        hi_real = M.in_indices[-1] >= N
        if lo_real:
            keep &= M.in_indices >= M.in_indices[0] + d
        if hi_real:
            keep &= M.in_indices <= M.in_indices[-1] - d
    A = M.entries[:, keep]
    kept = M.in_indices[keep]
    u, s, vh = np.linalg.svd(A)
    smax = float(s[0]) if len(s) else 0.0
    thr = rank_tol * smax
    if smax == 0.0:
        dim = A.shape[1]
        gap = float("inf")
        cands = np.eye(A.shape[1], dtype=complex)
    else:
        small = s < thr
        dim = int(np.sum(small))
        if dim == 0:
            gap = float(s[-1]) / thr if thr > 0 else float("inf")
        else:
            above = float(s[len(s) - dim - 1]) if len(s) > dim else float("inf")
            below = float(s[len(s) - dim])
            gap = float("inf") if below == 0.0 else above / below
        cands = vh[len(s) - dim :].conj() if dim else np.zeros((0, A.shape[1]), dtype=complex)
    return dim, gap, cands, kept, smax


def kernel_oracle(node, N: int, rank_tol: Optional[float] = None) -> OracleResult:
    """SVD-based kernel dimension estimate with an edge buffer and a
    stability cross-check at half the window size."""
    node = build(node)
    d = bandwidth(node)
    if N < 2 * max(d, 1):
        raise ValueError("oracle window must be at least twice the bandwidth")
    rank_tol = tol.RANK_TOL if rank_tol is None else rank_tol
    dim, gap, cands, kept, smax = _oracle_once(node, N, rank_tol)
    stable = None
    if N // 2 >= 2 * max(d, 1):
        dim_half, _, _, _, _ = _oracle_once(node, N // 2, rank_tol)
        stable = dim_half == dim
    result = OracleResult(dim, gap, cands, kept, stable, smax)
    if gap < tol.GAP_MIN:
        raise OracleIndeterminate(f"kernel oracle gap {gap:.3g} below certificate", result)
    return result


def principal_angle(
    oracle: OracleResult, exact: Sequence[RationalSymbol]
) -> float:
    """Largest principal angle between the oracle candidates and the exact span."""
    exact = list(exact)
    if not exact or oracle.dim_estimate == 0:
        return 0.0 if not exact and oracle.dim_estimate == 0 else float("nan")
    lo, hi = int(oracle.kept_indices[0]), int(oracle.kept_indices[-1])
    B = np.vstack([e.fourier_range(lo, hi) for e in exact])
    A = oracle.candidates
    qa, _ = np.linalg.qr(A.T)
    qb, _ = np.linalg.qr(B.T)
    svals = np.linalg.svd(qa.conj().T @ qb, compute_uv=False)
    svals = np.clip(svals, -1.0, 1.0)
    return float(np.arccos(np.min(svals)))
