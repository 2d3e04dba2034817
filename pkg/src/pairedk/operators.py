"""Operator expressions over L2 of the circle, exact application, and
rectangular truncations used as the numerical oracle.

The expression language covers multiplication-projection operators
(a P+ + b P-, P+ a + P- b), their Toeplitz/Hankel compressions, multiplication
operators, projections, and the usual algebra (compose, sum, scale, adjoint,
commutator).  Truncations are rectangular: the domain window is [-N..N]
(intersected with the domain space) while the codomain window is padded by
the expression bandwidth, so polynomial inputs are mapped exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from . import tolerances as tol
from .errors import (
    DomainMismatch,
    PoleOnCircle,
    SymbolNotBounded,
    WindowOverflow,
)
from .rational import RationalSymbol, SpaceTag, inner_product

L2, H2P, H2M = SpaceTag.L2, SpaceTag.H2PLUS, SpaceTag.H2MINUS


# ----------------------------------------------------------------------
# AST nodes (plain constructors; build() validates and normalizes)


@dataclass(frozen=True)
class Paired:
    a: RationalSymbol
    b: RationalSymbol


@dataclass(frozen=True)
class Transposed:
    a: RationalSymbol
    b: RationalSymbol


@dataclass(frozen=True)
class Toeplitz:
    a: RationalSymbol


@dataclass(frozen=True)
class DualToeplitz:
    a: RationalSymbol


@dataclass(frozen=True)
class Hankel:
    a: RationalSymbol


@dataclass(frozen=True)
class HankelTilde:
    a: RationalSymbol


@dataclass(frozen=True)
class Mult:
    eta: RationalSymbol


@dataclass(frozen=True)
class ProjPlus:
    pass


@dataclass(frozen=True)
class ProjMinus:
    pass


@dataclass(frozen=True)
class Compose:
    x: object
    y: object


@dataclass(frozen=True)
class Sum:
    x: object
    y: object


@dataclass(frozen=True)
class Scale:
    lam: complex
    x: object


@dataclass(frozen=True)
class Adjoint:
    x: object


@dataclass(frozen=True)
class Commutator:
    x: object
    y: object


def identity() -> Mult:
    return Mult(RationalSymbol.const(1.0))


_SYMBOL_NODES = (Paired, Transposed, Toeplitz, DualToeplitz, Hankel, HankelTilde, Mult)


def _symbols_of(node) -> List[RationalSymbol]:
    if isinstance(node, (Paired, Transposed)):
        return [node.a, node.b]
    if isinstance(node, (Toeplitz, DualToeplitz, Hankel, HankelTilde)):
        return [node.a]
    if isinstance(node, Mult):
        return [node.eta]
    return []


def _adjoint(node):
    if isinstance(node, Paired):
        return Transposed(node.a.conj_circle(), node.b.conj_circle())
    if isinstance(node, Transposed):
        return Paired(node.a.conj_circle(), node.b.conj_circle())
    if isinstance(node, Toeplitz):
        return Toeplitz(node.a.conj_circle())
    if isinstance(node, DualToeplitz):
        return DualToeplitz(node.a.conj_circle())
    if isinstance(node, Hankel):
        return HankelTilde(node.a.conj_circle())
    if isinstance(node, HankelTilde):
        return Hankel(node.a.conj_circle())
    if isinstance(node, Mult):
        return Mult(node.eta.conj_circle())
    if isinstance(node, (ProjPlus, ProjMinus)):
        return node
    if isinstance(node, Compose):
        return Compose(_adjoint(node.y), _adjoint(node.x))
    if isinstance(node, Sum):
        return Sum(_adjoint(node.x), _adjoint(node.y))
    if isinstance(node, Scale):
        return Scale(complex(node.lam).conjugate(), _adjoint(node.x))
    if isinstance(node, Commutator):
        return Commutator(_adjoint(node.y), _adjoint(node.x))
    if isinstance(node, Adjoint):
        return _normalize(node.x)
    raise TypeError(f"unknown node {node!r}")


def _normalize(node):
    """Push adjoints to the leaves; returns an Adjoint-free tree."""
    if isinstance(node, Adjoint):
        return _adjoint(_normalize(node.x))
    if isinstance(node, Compose):
        return Compose(_normalize(node.x), _normalize(node.y))
    if isinstance(node, Sum):
        return Sum(_normalize(node.x), _normalize(node.y))
    if isinstance(node, Scale):
        return Scale(complex(node.lam), _normalize(node.x))
    if isinstance(node, Commutator):
        return Commutator(_normalize(node.x), _normalize(node.y))
    return node


def spaces(node) -> Tuple[SpaceTag, SpaceTag]:
    """(domain, codomain) tags of a normalized node."""
    if isinstance(node, (Paired, Transposed, Mult, ProjPlus, ProjMinus)):
        return (L2, L2)
    if isinstance(node, Toeplitz):
        return (H2P, H2P)
    if isinstance(node, DualToeplitz):
        return (H2M, H2M)
    if isinstance(node, Hankel):
        return (H2P, H2M)
    if isinstance(node, HankelTilde):
        return (H2M, H2P)
    if isinstance(node, Compose):
        dx, cx = spaces(node.x)
        dy, cy = spaces(node.y)
        if not _fits(cy, dx):
            raise DomainMismatch("composition spaces do not chain")
        return (dy, cx)
    if isinstance(node, Sum):
        dx, cx = spaces(node.x)
        dy, cy = spaces(node.y)
        if dx != dy:
            raise DomainMismatch("summands must share a domain")
        return (dx, cx if cx == cy else L2)
    if isinstance(node, Scale):
        return spaces(node.x)
    if isinstance(node, Commutator):
        dx, cx = spaces(node.x)
        dy, cy = spaces(node.y)
        if not (dx == cx == dy == cy):
            raise DomainMismatch("commutator needs two endomorphisms of one space")
        return (dx, cx)
    raise TypeError(f"unknown node {node!r}")


def _fits(cod: SpaceTag, dom: SpaceTag) -> bool:
    return cod == dom or dom == L2


def _symbol_bandwidth(s: RationalSymbol) -> int:
    if s.is_zero:
        return 0
    num = s.num
    return max(abs(num.lo), abs(num.hi), s.den.degree_span())


def bandwidth(node) -> int:
    if isinstance(node, _SYMBOL_NODES):
        return max([_symbol_bandwidth(s) for s in _symbols_of(node)] + [0])
    if isinstance(node, (ProjPlus, ProjMinus)):
        return 0
    if isinstance(node, (Compose, Commutator)):
        return bandwidth(node.x) + bandwidth(node.y)
    if isinstance(node, Sum):
        return max(bandwidth(node.x), bandwidth(node.y))
    if isinstance(node, Scale):
        return bandwidth(node.x)
    raise TypeError(f"unknown node {node!r}")


def build(node):
    """Validate an expression: bounded symbols, coherent spaces, no Adjoint."""
    norm = _normalize(node)

    def _walk(n):
        for s in _symbols_of(n):
            if s.has_circle_pole:
                raise SymbolNotBounded("symbol has a pole on the circle")
        for child in _children(n):
            _walk(child)

    _walk(norm)
    spaces(norm)  # raises DomainMismatch on incoherent trees
    return norm


def _children(node):
    if isinstance(node, (Compose, Sum, Commutator)):
        return (node.x, node.y)
    if isinstance(node, Scale):
        return (node.x,)
    if isinstance(node, Adjoint):
        return (node.x,)
    return ()


def nondegenerate(node) -> bool:
    """Standing assumption for a paired/transposed node: a, b nonzero and
    either a == b or a - b nonzero a.e. (automatic for rational data)."""
    if not isinstance(node, (Paired, Transposed)):
        raise TypeError("nondegeneracy applies to paired/transposed nodes")
    if node.a.is_zero or node.b.is_zero:
        return False
    return not node.a.equals(node.b)


# ----------------------------------------------------------------------
# exact application


def apply_exact(node, f: RationalSymbol, _check: bool = True) -> RationalSymbol:
    """Apply the operator to a rational L2 function, exactly."""
    node = _normalize(node)
    if _check:
        if f.has_circle_pole:
            raise PoleOnCircle("input lies outside L2")
        dom, _ = spaces(node)
        if dom != L2 and not f.membership(dom):
            raise DomainMismatch(f"input not in declared domain {dom.value}")
    return _apply(node, f)


def _apply(node, f: RationalSymbol) -> RationalSymbol:
    if isinstance(node, Paired):
        return node.a * f.riesz("plus") + node.b * f.riesz("minus")
    if isinstance(node, Transposed):
        return (node.a * f).riesz("plus") + (node.b * f).riesz("minus")
    if isinstance(node, Toeplitz):
        return (node.a * f).riesz("plus")
    if isinstance(node, DualToeplitz):
        return (node.a * f).riesz("minus")
    if isinstance(node, Hankel):
        return (node.a * f).riesz("minus")
    if isinstance(node, HankelTilde):
        return (node.a * f).riesz("plus")
    if isinstance(node, Mult):
        return node.eta * f
    if isinstance(node, ProjPlus):
        return f.riesz("plus")
    if isinstance(node, ProjMinus):
        return f.riesz("minus")
    if isinstance(node, Compose):
        return _apply(node.x, _apply(node.y, f))
    if isinstance(node, Sum):
        return _apply(node.x, f) + _apply(node.y, f)
    if isinstance(node, Scale):
        return _apply(node.x, f) * node.lam
    if isinstance(node, Commutator):
        return _apply(node.x, _apply(node.y, f)) - _apply(node.y, _apply(node.x, f))
    raise TypeError(f"unknown node {node!r}")


# ----------------------------------------------------------------------
# truncation


@dataclass(frozen=True)
class TruncationMatrix:
    entries: np.ndarray
    in_indices: np.ndarray
    out_indices: np.ndarray


def _window(tag: SpaceTag, lo: int, hi: int) -> np.ndarray:
    ks = np.arange(lo, hi + 1)
    if tag == H2P:
        return ks[ks >= 0]
    if tag == H2M:
        return ks[ks < 0]
    return ks


def truncate(node, N: int) -> TruncationMatrix:
    """Rectangular truncation; column j holds the exact Fourier window of the
    image of z^j."""
    node = build(node)
    d = bandwidth(node)
    if N < d:
        raise WindowOverflow(f"window N={N} below expression bandwidth {d}")
    if N > 4096:
        raise WindowOverflow("window too large")
    dom, cod = spaces(node)
    in_idx = _window(dom, -N, N)
    out_idx = _window(cod, -N - d, N + d)
    entries = _columns(node, in_idx, int(out_idx[0]), int(out_idx[-1]))
    return TruncationMatrix(entries, in_idx, out_idx)


def _stream(sym: RationalSymbol, lo: int, hi: int) -> Tuple[int, np.ndarray]:
    return lo, sym.fourier_range(lo, hi)


def _columns(node, in_idx: np.ndarray, out_lo: int, out_hi: int) -> np.ndarray:
    rows = out_hi - out_lo + 1
    cols = len(in_idx)
    M = np.zeros((rows, cols), dtype=complex)
    ks = np.arange(out_lo, out_hi + 1)
    if isinstance(node, (Paired, Transposed, Toeplitz, DualToeplitz, Hankel, HankelTilde, Mult)):
        jmin, jmax = int(in_idx[0]), int(in_idx[-1])
        slo, shi = out_lo - jmax, out_hi - jmin

        def stream(sym):
            if sym.is_zero:
                return np.zeros(shi - slo + 1, dtype=complex)
            return sym.fourier_range(slo, shi)

        if isinstance(node, Paired):
            sa, sb = stream(node.a), stream(node.b)
            for c, j in enumerate(in_idx):
                src = sa if j >= 0 else sb
                M[:, c] = src[out_lo - j - slo : out_hi - j - slo + 1]
            return M
        if isinstance(node, Transposed):
            sa, sb = stream(node.a), stream(node.b)
            pos = ks >= 0
            for c, j in enumerate(in_idx):
                block_a = sa[out_lo - j - slo : out_hi - j - slo + 1]
                block_b = sb[out_lo - j - slo : out_hi - j - slo + 1]
                M[pos, c] = block_a[pos]
                M[~pos, c] = block_b[~pos]
            return M
        sym = node.eta if isinstance(node, Mult) else node.a
        ssym = stream(sym)
        for c, j in enumerate(in_idx):
            M[:, c] = ssym[out_lo - j - slo : out_hi - j - slo + 1]
        return M
    if isinstance(node, ProjPlus):
        for c, j in enumerate(in_idx):
            if j >= 0 and out_lo <= j <= out_hi:
                M[j - out_lo, c] = 1.0
        return M
    if isinstance(node, ProjMinus):
        for c, j in enumerate(in_idx):
            if j < 0 and out_lo <= j <= out_hi:
                M[j - out_lo, c] = 1.0
        return M
    if isinstance(node, Sum):
        return _columns(node.x, in_idx, out_lo, out_hi) + _columns(node.y, in_idx, out_lo, out_hi)
    if isinstance(node, Scale):
        return node.lam * _columns(node.x, in_idx, out_lo, out_hi)
    if isinstance(node, (Compose, Commutator)):
        for c, j in enumerate(in_idx):
            img = _apply(node, RationalSymbol.monomial(int(j)))
            if not img.is_zero:
                M[:, c] = img.fourier_range(out_lo, out_hi)
        return M
    raise TypeError(f"unknown node {node!r}")


# ----------------------------------------------------------------------
# norms / ranks / adjoint residuals


@dataclass(frozen=True)
class RankResult:
    rank: int
    gap: float
    indeterminate: bool
    sigma_max: float


def operator_norm(node, N: int) -> float:
    """Largest singular value of the truncation: a lower bound for the norm,
    nondecreasing in N."""
    M = truncate(node, N)
    if M.entries.size == 0:
        return 0.0
    return float(np.linalg.svd(M.entries, compute_uv=False)[0])


def numerical_rank(M, rank_tol: Optional[float] = None) -> RankResult:
    """Certified numerical rank: singular values above rank_tol * sigma_max,
    with the spectral gap between last kept and first discarded."""
    rank_tol = tol.RANK_TOL if rank_tol is None else rank_tol
    entries = M.entries if isinstance(M, TruncationMatrix) else np.asarray(M)
    if entries.size == 0:
        return RankResult(0, float("inf"), False, 0.0)
    s = np.linalg.svd(entries, compute_uv=False)
    smax = float(s[0])
    if smax == 0.0:
        return RankResult(0, float("inf"), False, 0.0)
    thr = rank_tol * smax
    rank = int(np.sum(s > thr))
    if rank == len(s):
        gap = float("inf")
    else:
        below = float(s[rank])
        top = float(s[rank - 1]) if rank > 0 else thr
        gap = float("inf") if below == 0.0 else top / below
    return RankResult(rank, gap, gap < tol.GAP_MIN, smax)


def adjoint_residual(node_x, node_y, probes: Sequence[Tuple[RationalSymbol, RationalSymbol]]) -> float:
    """max over probes (f, g) of |<Xf, g> - <f, Yg>| from exact inner products."""
    x = build(node_x)
    y = build(node_y)
    worst = 0.0
    for f, g in probes:
        lhs = inner_product(apply_exact(x, f), g)
        rhs = inner_product(f, apply_exact(y, g))
        worst = max(worst, abs(lhs - rhs))
    return worst


def monomial_probes(k: int = 8) -> List[Tuple[RationalSymbol, RationalSymbol]]:
    ms = [RationalSymbol.monomial(j) for j in range(-k, k + 1)]
    return [(f, g) for f in ms for g in ms]


# ----------------------------------------------------------------------
# JSON wire format


def ast_to_json(node):
    node = _normalize(node)
    if isinstance(node, Paired):
        return {"op": "paired", "a": node.a.to_json(), "b": node.b.to_json()}
    if isinstance(node, Transposed):
        return {"op": "transposed", "a": node.a.to_json(), "b": node.b.to_json()}
    if isinstance(node, Toeplitz):
        return {"op": "toeplitz", "a": node.a.to_json()}
    if isinstance(node, DualToeplitz):
        return {"op": "dual_toeplitz", "a": node.a.to_json()}
    if isinstance(node, Hankel):
        return {"op": "hankel", "a": node.a.to_json()}
    if isinstance(node, HankelTilde):
        return {"op": "hankel_tilde", "a": node.a.to_json()}
    if isinstance(node, Mult):
        return {"op": "mult", "eta": node.eta.to_json()}
    if isinstance(node, ProjPlus):
        return {"op": "proj_plus"}
    if isinstance(node, ProjMinus):
        return {"op": "proj_minus"}
    if isinstance(node, Compose):
        return {"op": "compose", "x": ast_to_json(node.x), "y": ast_to_json(node.y)}
    if isinstance(node, Sum):
        return {"op": "sum", "x": ast_to_json(node.x), "y": ast_to_json(node.y)}
    if isinstance(node, Scale):
        return {"op": "scale", "lambda": [node.lam.real, node.lam.imag], "x": ast_to_json(node.x)}
    if isinstance(node, Commutator):
        return {"op": "commutator", "x": ast_to_json(node.x), "y": ast_to_json(node.y)}
    raise TypeError(f"unknown node {node!r}")


def ast_from_json(data):
    op = data["op"]
    S = RationalSymbol.from_json
    if op == "paired":
        return Paired(S(data["a"]), S(data["b"]))
    if op == "transposed":
        return Transposed(S(data["a"]), S(data["b"]))
    if op == "toeplitz":
        return Toeplitz(S(data["a"]))
    if op == "dual_toeplitz":
        return DualToeplitz(S(data["a"]))
    if op == "hankel":
        return Hankel(S(data["a"]))
    if op == "hankel_tilde":
        return HankelTilde(S(data["a"]))
    if op == "mult":
        return Mult(S(data["eta"]))
    if op == "proj_plus":
        return ProjPlus()
    if op == "proj_minus":
        return ProjMinus()
    if op == "compose":
        return Compose(ast_from_json(data["x"]), ast_from_json(data["y"]))
    if op == "sum":
        return Sum(ast_from_json(data["x"]), ast_from_json(data["y"]))
    if op == "scale":
        lam = complex(data["lambda"][0], data["lambda"][1])
        return Scale(lam, ast_from_json(data["x"]))
    if op == "adjoint":
        return Adjoint(ast_from_json(data["x"]))
    if op == "commutator":
        return Commutator(ast_from_json(data["x"]), ast_from_json(data["y"]))
    raise ValueError(f"unknown op {op!r}")
