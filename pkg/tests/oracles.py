"""Independent numerical oracles for the test suite.

Everything here goes through dense boundary sampling and the FFT, never
through the package's partial-fraction machinery, so agreement between the
two is a genuine cross-check.
"""

import numpy as np


def grid(n=4096):
    return np.exp(2j * np.pi * np.arange(n) / n)


def sample_boundary(sym, n=4096):
    zs = grid(n)
    return np.array([sym.eval(z) for z in zs])


def fft_fourier(sym, k, n=4096):
    """k-th Fourier coefficient by the trapezoid rule (exact up to aliasing)."""
    vals = sample_boundary(sym, n)
    c = np.fft.fft(vals) / n
    return complex(c[k % n])


def fft_fourier_window(sym, lo, hi, n=4096):
    vals = sample_boundary(sym, n)
    c = np.fft.fft(vals) / n
    return np.array([c[k % n] for k in range(lo, hi + 1)])


def fft_project(vals, side, n=None):
    """Boundary-value Riesz projection: split the FFT spectrum by index sign."""
    n = len(vals)
    c = np.fft.fft(vals) / n
    if side == "plus":
        c[n // 2 :] = 0.0
    else:
        c[: n // 2] = 0.0
        # indices >= n/2 represent negative frequencies
    return np.fft.ifft(c) * n


def fft_inner_product(f_sym, g_sym, n=8192):
    fv = sample_boundary(f_sym, n)
    gv = sample_boundary(g_sym, n)
    return complex(np.mean(fv * np.conj(gv)))


def brute_paired_apply(a_sym, b_sym, f_sym, n=8192):
    """Boundary-sampled action of a P+ + b P-."""
    zs = grid(n)
    fa = np.array([f_sym.eval(z) for z in zs])
    av = np.array([a_sym.eval(z) for z in zs])
    bv = np.array([b_sym.eval(z) for z in zs])
    return av * fft_project(fa, "plus") + bv * fft_project(fa, "minus")


def brute_transposed_apply(a_sym, b_sym, f_sym, n=8192):
    zs = grid(n)
    fa = np.array([f_sym.eval(z) for z in zs])
    av = np.array([a_sym.eval(z) for z in zs])
    bv = np.array([b_sym.eval(z) for z in zs])
    return fft_project(av * fa, "plus") + fft_project(bv * fa, "minus")


def winding_number_by_argument(sym, n=16384):
    """Net winding of the boundary curve around 0 by phase accumulation."""
    vals = sample_boundary(sym, n)
    phases = np.angle(vals)
    jumps = np.diff(np.concatenate([phases, phases[:1]]))
    jumps = (jumps + np.pi) % (2 * np.pi) - np.pi
    return int(round(jumps.sum() / (2 * np.pi)))
