import numpy as np
import pytest

from pairedk import (
    Adjoint,
    Commutator,
    Compose,
    Hankel,
    HankelTilde,
    Mult,
    Paired,
    ProjMinus,
    ProjPlus,
    RationalSymbol,
    Scale,
    Sum,
    Toeplitz,
    Transposed,
    adjoint_residual,
    apply_exact,
    ast_from_json,
    ast_to_json,
    bandwidth,
    build,
    monomial_probes,
    nondegenerate,
    numerical_rank,
    operator_norm,
    truncate,
)
from pairedk.errors import DomainMismatch, SymbolNotBounded, WindowOverflow

from oracles import brute_paired_apply, brute_transposed_apply, grid

R = RationalSymbol


def C(d):
    return R.from_coeffs(d)


A_CZ = C({0: 1, -1: 1})  # 1 + 1/z
B_CZ = C({0: 1, 1: 1})  # z + 1


# ---------------------------------------------------------------- build


def test_build_validates_and_flags():
    node = build(Paired(A_CZ, B_CZ))
    assert nondegenerate(node)


def test_build_rejects_circle_pole_symbol():
    with pytest.raises(SymbolNotBounded):
        build(Paired(B_CZ.reciprocal(), R.const(1)))


def test_adjoint_normalizes_to_transposed():
    node = build(Adjoint(Paired(R.monomial(1), R.const(1))))
    assert isinstance(node, Transposed)
    assert node.a.equals(R.monomial(-1))
    assert node.b.equals(R.const(1))


def test_adjoint_of_transposed_and_hankel():
    assert isinstance(build(Adjoint(Transposed(A_CZ, B_CZ))), Paired)
    assert isinstance(build(Adjoint(Hankel(A_CZ))), HankelTilde)


def test_compose_domain_mismatch():
    with pytest.raises(DomainMismatch):
        build(Compose(Toeplitz(A_CZ.conj_circle()), Hankel(B_CZ)))


# ---------------------------------------------------------------- apply


def test_apply_circle_zero_pair_annihilates():
    f = C({0: 1, -1: -1})
    assert apply_exact(Paired(A_CZ, B_CZ), f).is_zero


def test_apply_toeplitz_kills_negative_shift():
    assert apply_exact(Toeplitz(R.monomial(-1)), R.const(1)).is_zero


def test_apply_commutator_rank_one_action():
    out = apply_exact(Commutator(Paired(R.monomial(1), R.const(1)), Mult(R.monomial(1))), R.monomial(-1))
    assert out.equals(C({1: 1, 0: -1}))


def test_apply_matches_boundary_sampling():
    a = C({0: 1, 1: 0.5j}) / C({0: 2.4, 1: 1})
    b = C({0: 1, -1: -0.3}) / C({0: -0.4 + 0.1j, 1: 1})
    f = C({-2: 1, 1: 1j}) / C({0: 3.0, 1: 1})
    got = apply_exact(Paired(a, b), f)
    want = brute_paired_apply(a, b, f)
    vals = np.array([got.eval(z) for z in grid(8192)])
    assert np.abs(vals - want).max() < 1e-10
    got2 = apply_exact(Transposed(a, b), f)
    want2 = brute_transposed_apply(a, b, f)
    vals2 = np.array([got2.eval(z) for z in grid(8192)])
    assert np.abs(vals2 - want2).max() < 1e-10


def test_apply_domain_check():
    with pytest.raises(DomainMismatch):
        apply_exact(Toeplitz(A_CZ.conj_circle()), R.monomial(-2))


# ---------------------------------------------------------------- truncation


def test_truncate_shift_matrix():
    M = truncate(Mult(R.monomial(1)), 1)
    assert M.entries.shape == (5, 3)
    for c, j in enumerate(M.in_indices):
        col = M.entries[:, c]
        k = np.where(np.abs(col) > 0)[0]
        assert list(M.out_indices[k]) == [j + 1]


def test_truncate_signature_matrix():
    M = truncate(Paired(R.const(1), R.const(-1)), 8)
    assert M.entries.shape == (17, 17)
    diag = np.diag(M.entries)
    signs = np.where(M.in_indices >= 0, 1.0, -1.0)
    assert np.abs(diag - signs).max() == 0.0


def test_truncate_commutator_rank_one():
    node = Commutator(Paired(R.monomial(1), R.const(1)), Mult(R.monomial(1)))
    res = numerical_rank(truncate(node, 16))
    assert res.rank == 1 and not res.indeterminate


def test_truncate_polynomial_exactness():
    # integer-coefficient inputs map exactly: matvec equals exact image window
    node = Paired(A_CZ, B_CZ)
    M = truncate(node, 6)
    f = C({-3: 2, 0: 1, 4: -3})
    vec = np.zeros(len(M.in_indices), dtype=complex)
    for k, v in f.num.items():
        vec[np.where(M.in_indices == k)[0][0]] = v
    got = M.entries @ vec
    img = apply_exact(node, f)
    want = img.fourier_range(int(M.out_indices[0]), int(M.out_indices[-1]))
    assert np.abs(got - want).max() == 0.0


def test_truncate_window_guard():
    with pytest.raises(WindowOverflow):
        truncate(Mult(R.monomial(3)), 1)
    with pytest.raises(WindowOverflow):
        truncate(Mult(R.monomial(1)), 5000)


def test_toeplitz_windows_respect_domain():
    M = truncate(Toeplitz(A_CZ.conj_circle()), 4)
    assert M.in_indices.min() == 0
    assert M.out_indices.min() == 0


# ---------------------------------------------------------------- norms/ranks


def test_operator_norm_examples():
    assert operator_norm(Paired(R.const(1), R.const(-1)), 8) == pytest.approx(1.0)
    assert operator_norm(Mult(R.const(2)), 8) == pytest.approx(2.0)
    n = operator_norm(Paired(A_CZ, B_CZ), 128)
    assert 2.0 <= n <= 2.0 * np.sqrt(2.0) + 1e-9


def test_numerical_rank_zero_matrix():
    res = numerical_rank(np.zeros((4, 4)))
    assert res.rank == 0 and res.gap == float("inf")


def test_numerical_rank_commuting_case():
    # all four symbols split analytically: the paired operators commute
    a = C({0: 1, 1: 0.5}) / C({0: -3, 1: 1})
    at = C({0: 2, 2: 0.25}) / C({0: 1.9, 1: 1})
    b = a.conj_circle()
    bt = at.conj_circle()
    node = Commutator(Paired(a, b), Paired(at, bt))
    res = numerical_rank(truncate(node, 24), 1e-8)
    assert res.rank == 0


# ---------------------------------------------------------------- adjoints


def test_adjoint_residual_constant_difference():
    X = Paired(C({0: 1, 1: 1}), R.monomial(1))
    Y = Paired(C({0: 1, -1: 1}), R.monomial(-1))
    assert adjoint_residual(X, Y, monomial_probes(8)) <= 1e-12


def test_adjoint_residual_true_adjoint():
    X = Paired(R.monomial(1), R.const(1))
    Y = Transposed(R.monomial(-1), R.const(1))
    assert adjoint_residual(X, Y, monomial_probes(8)) <= 1e-12


def test_adjoint_residual_wrong_candidate():
    X = Paired(R.monomial(1), R.const(1))
    Y = Paired(R.monomial(-1), R.const(1))
    assert adjoint_residual(X, Y, monomial_probes(8)) > 0.5


# ---------------------------------------------------------------- wire form


def test_ast_json_round_trip():
    node = Commutator(
        Compose(Paired(A_CZ, B_CZ), Scale(2.0 - 1j, Sum(ProjPlus(), ProjMinus()))),
        Mult(R.monomial(1)),
    )
    back = ast_from_json(ast_to_json(node))
    f = C({-2: 1, 3: -2})
    assert apply_exact(back, f).equals(apply_exact(node, f))


def test_bandwidth_accumulates():
    assert bandwidth(Mult(R.monomial(1))) == 1
    assert bandwidth(Compose(Mult(R.monomial(2)), Mult(R.monomial(1)))) == 3
