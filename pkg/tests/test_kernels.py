import numpy as np
import pytest

from pairedk import (
    Paired,
    RationalSymbol,
    SpaceTag,
    SymbolPair,
    Toeplitz,
    Transposed,
    apply_exact,
    j_map,
    kernel_oracle,
    kernels_equal_S,
    linearly_independent,
    member_S,
    member_Sigma,
    model_space_basis,
    nontrivial_S,
    nontrivial_Sigma,
    paired_kernel,
    principal_angle,
    sigma_inclusion,
    symbols_from_function,
    toeplitz_kernel,
    transposed_kernel,
)
from pairedk.errors import (
    DegenerateInput,
    DegenerateSymbol,
    NotInKernel,
    NotInner,
    PartitionOfUnityFails,
    TrivialKernel,
)
from pairedk.sampling import SamplerProfile, sample_pair_with_kernel, trial_rng

R = RationalSymbol


def C(d):
    return R.from_coeffs(d)


CIRCLE_PAIR = SymbolPair(C({0: 1, -1: 1}), C({0: 1, 1: 1}))  # a = 1+1/z, b = z+1


# ---------------------------------------------------------------- membership


def test_member_S_circle_zero_pair():
    assert member_S(C({0: 1, -1: -1}), CIRCLE_PAIR)
    assert not member_S(R.const(1), CIRCLE_PAIR)


def test_member_S_rejects_plus_functions():
    # no nonzero analytic function sits in a paired kernel
    f = C({0: 1, 1: 1}) / C({0: -2, 1: 1})
    assert not member_S(f, CIRCLE_PAIR)
    assert not member_S(f, SymbolPair(R.monomial(1), R.const(1)))


def test_member_Sigma_examples():
    assert member_Sigma(R.monomial(1), SymbolPair(R.monomial(-2), R.const(1)))
    assert not member_Sigma(C({0: 1, -1: -1}), CIRCLE_PAIR)
    assert member_Sigma(R.monomial(-1), SymbolPair(R.const(1), R.monomial(2)))


def test_zero_function_is_everywhere():
    assert member_S(R.zero(), CIRCLE_PAIR)
    assert member_Sigma(R.zero(), CIRCLE_PAIR)


# ---------------------------------------------------------------- Toeplitz


def test_toeplitz_kernel_monomial():
    kb = toeplitz_kernel(R.monomial(-1))
    assert kb.status == "exact" and kb.dimension == 1
    assert kb.elements[0].equals(R.const(1))


def test_toeplitz_kernel_mixed():
    g = C({0: -2, 1: 1}) / C({0: -0.5, 1: 1})
    kb = toeplitz_kernel(g)
    assert kb.dimension == 1
    assert kb.elements[0].equals(C({0: -2, 1: 1}).reciprocal())
    assert (g * kb.elements[0]).membership(SpaceTag.H2MINUS)


def test_toeplitz_kernel_positive_winding_empty():
    kb = toeplitz_kernel(C({0: -0.5, 1: 1}))
    assert kb.is_empty and kb.certificate["kappa"] == 1


def test_toeplitz_kernel_circle_zero_routes_to_oracle():
    kb = toeplitz_kernel(C({0: 1, 1: 1}))
    assert kb.status == "needs_oracle"


def test_toeplitz_kernel_dimension_formula():
    rng = trial_rng(3, 0)
    prof = SamplerProfile(class_constraint="invertible", degree_bound=2)
    from pairedk.sampling import sample_quotient_with_winding
    from pairedk import winding_index

    for i in range(20):
        kappa = int(rng.integers(-3, 4))
        g = sample_quotient_with_winding(prof, rng, kappa)
        kb = toeplitz_kernel(g)
        assert kb.dimension == max(0, -winding_index(g))
        if kb.dimension:
            assert linearly_independent(kb.elements)


# ---------------------------------------------------------------- paired


def test_paired_kernel_basic():
    kb = paired_kernel(SymbolPair(R.const(1), R.monomial(1)))
    assert kb.dimension == 1
    el = kb.elements[0]
    assert el.plus.equals(R.const(1)) and el.minus.equals(R.monomial(-1, -1))


def test_paired_kernel_circle_zero_pair():
    kb = paired_kernel(CIRCLE_PAIR)
    assert kb.dimension == 1
    assert member_S(kb.elements[0].total, CIRCLE_PAIR)
    assert kb.elements[0].total.equals(C({0: 1, -1: -1}))


def test_paired_kernel_coburn_side_empty():
    kb = paired_kernel(SymbolPair(R.monomial(1), R.const(1)))
    assert kb.is_empty


def test_paired_kernel_halves_vanish_together():
    rng = trial_rng(23, 1)
    for i in range(5):
        pair = sample_pair_with_kernel(
            SamplerProfile(degree_bound=2), rng, int(rng.integers(1, 4)), "invertible"
        )
        kb = paired_kernel(pair)
        for el in kb.elements:
            assert not el.plus.is_zero and not el.minus.is_zero
            assert not el.total.membership(SpaceTag.H2PLUS)
            assert not el.total.membership(SpaceTag.H2MINUS)


# ---------------------------------------------------------------- transposed


def test_transposed_kernel_model_space():
    kb = transposed_kernel(SymbolPair(R.monomial(-2), R.const(1)))
    assert kb.dimension == 2
    want = [R.const(1), R.monomial(1)]
    for w in want:
        assert any(e.equals(w) for e in kb.elements)


def test_transposed_kernel_circle_zero_pair_empty_with_certificate():
    kb = transposed_kernel(CIRCLE_PAIR)
    assert kb.is_empty and kb.dimension == 0
    side = kb.certificate["side_conditions"]
    assert side["O_minus_over_a_in_L2"] is False
    assert side["O_plus_over_b_in_L2"] is False


def test_transposed_kernel_reflected_model_space():
    kb = transposed_kernel(SymbolPair(R.const(1), R.monomial(2)))
    assert kb.dimension == 2
    for w in [R.monomial(-1), R.monomial(-2)]:
        assert any(e.equals(w) for e in kb.elements)
    for e in kb.elements:
        assert member_Sigma(e, SymbolPair(R.const(1), R.monomial(2)))


def test_transposed_kernel_partial_circle_zero_absorption():
    # quotient winding -2, one circle zero in b: dimension drops to 1
    a = C({-2: 1, -1: 1})  # (1+z)/z^2
    b = C({0: 1, 1: 1})
    kb = transposed_kernel(SymbolPair(a, b))
    assert kb.status == "exact" and kb.dimension == 1
    assert kb.elements[0].equals(R.const(1))


def test_transposed_kernel_degenerate_pair():
    kb = transposed_kernel(SymbolPair(C({0: 1, 1: 0.5}), C({0: 1, 1: 0.5})))
    assert kb.is_empty


# ---------------------------------------------------------------- nontriviality


def test_nontrivial_S_examples():
    res = nontrivial_S(SymbolPair(R.const(1), R.monomial(3)))
    assert res.status is True
    assert res.witness.equals(C({0: 1, -3: -1}))
    assert nontrivial_S(SymbolPair(R.monomial(1), R.const(1))).status is False
    res2 = nontrivial_S(CIRCLE_PAIR)
    assert res2.status is True and res2.witness.equals(C({0: 1, -1: -1}))


def test_nontrivial_Sigma_examples():
    res = nontrivial_Sigma(SymbolPair(R.monomial(-2), R.const(1)))
    assert res.status is True and res.witness.equals(R.const(1))
    assert nontrivial_Sigma(CIRCLE_PAIR).status is False
    # an invertible denominator keeps the kernel alive even off the textbook case
    res3 = nontrivial_Sigma(SymbolPair(R.const(1), C({0: -0.5, 1: 1})))
    assert res3.status is True
    assert member_Sigma(res3.witness, SymbolPair(R.const(1), C({0: -0.5, 1: 1})))
    assert res3.witness.equals(C({0: -0.5, 1: 1}).reciprocal())


def test_nontrivial_Sigma_requires_nondegenerate():
    with pytest.raises(DegenerateSymbol):
        nontrivial_Sigma(SymbolPair(R.const(1), R.const(1)))


def test_sigma_implies_paired():
    rng = trial_rng(29, 2)
    prof = SamplerProfile(degree_bound=2)
    from pairedk.sampling import sample_quotient_with_winding, sample_symbol

    for i in range(20):
        kappa = int(rng.integers(-3, 3))
        g = sample_quotient_with_winding(prof, rng, kappa)
        b = sample_symbol(prof.tighter(class_constraint="invertible"), rng)
        pair = SymbolPair(g * b, b)
        res_sig = nontrivial_Sigma(pair)
        res_s = nontrivial_S(pair)
        if res_sig.status is True:
            assert res_s.status is True


# ---------------------------------------------------------------- equality


def test_kernels_equal_examples():
    p = SymbolPair(R.const(1), R.monomial(1))
    eta = C({0: 2, 1: 1})
    q = SymbolPair(eta, eta * R.monomial(1))
    assert kernels_equal_S(p, q)
    assert not kernels_equal_S(p, SymbolPair(R.const(1), R.monomial(2)))
    assert kernels_equal_S(CIRCLE_PAIR, SymbolPair(R.const(1), R.monomial(1)))


def test_kernels_equal_needs_nontrivial():
    with pytest.raises(TrivialKernel):
        kernels_equal_S(SymbolPair(R.monomial(1), R.const(1)), CIRCLE_PAIR)


# ---------------------------------------------------------------- construction


def test_symbols_from_function_basic():
    pair = symbols_from_function(R.const(1), R.monomial(-1))
    assert member_S(C({0: 1, -1: 1}), pair)
    # for these trivial inner-outer data the construction gives (1, -z)
    assert pair.a.equals(R.const(1))
    assert pair.b.equals(R.monomial(1, -1))


def test_symbols_from_function_degenerate_half():
    with pytest.raises(DegenerateInput):
        symbols_from_function(R.monomial(1), R.zero())


def test_symbols_from_function_generic():
    phi_p = C({0: -2, 1: 1}).reciprocal()
    phi_m = R.monomial(-1)
    pair = symbols_from_function(phi_p, phi_m)
    assert member_S(phi_p + phi_m, pair)
    assert not pair.a.has_circle_pole and not pair.b.has_circle_pole


def test_symbols_from_function_circle_zero_outer():
    # outer parts with circle zeros force the clearing polynomial into play
    phi_p = C({0: 1, 1: 1}) / C({0: -3, 1: 1})
    phi_m = R.monomial(-1)
    pair = symbols_from_function(phi_p, phi_m)
    assert member_S(phi_p + phi_m, pair)


# ---------------------------------------------------------------- the J map


def test_j_map_forward():
    p = SymbolPair(R.monomial(-2), R.const(1))
    out = j_map(R.const(1), p)
    assert out.equals(C({-2: 1, 0: -1}))
    assert member_S(out, p)


def test_j_map_forward_rejects_nonmembers():
    with pytest.raises(NotInKernel):
        j_map(R.monomial(2), SymbolPair(R.monomial(-2), R.const(1)))


def test_j_map_inverse_explicit_witnesses():
    p = SymbolPair(R.const(1), R.monomial(1))
    phi = C({0: 1, -1: -1})
    out = j_map(phi, p, inverse=True, a_prime=R.const(1), b_prime=R.zero())
    assert out.equals(R.monomial(-1, -1))
    assert member_Sigma(out, p)


def test_j_map_inverse_auto_witness_and_round_trip():
    rng = trial_rng(31, 4)
    pair = sample_pair_with_kernel(SamplerProfile(degree_bound=2), rng, 2, "invertible")
    kb = paired_kernel(pair)
    for el in kb.elements:
        psi = j_map(el.total, pair, inverse=True)
        assert member_Sigma(psi, pair)
        assert j_map(psi, pair).equals(el.total)


def test_j_map_partition_of_unity_guard():
    p = SymbolPair(R.const(1), R.monomial(1))
    with pytest.raises(PartitionOfUnityFails):
        j_map(C({0: 1, -1: -1}), p, inverse=True, a_prime=R.const(2), b_prime=R.zero())


# ---------------------------------------------------------------- inclusion


def test_sigma_inclusion_inner_multiplier_strict():
    p = SymbolPair(R.monomial(-2), R.const(1))
    q = SymbolPair(p.a * R.monomial(-1), p.b * R.monomial(1))
    assert sigma_inclusion(p, q) == "subset"


def test_sigma_inclusion_outer_multipliers_equal():
    p = SymbolPair(R.monomial(-2), R.const(1))
    h_minus = C({0: 1, -1: 0.5})  # 1 + 1/(2z), co-analytic outer
    h_plus = C({0: 2, 1: 1})  # z + 2, outer
    q = SymbolPair(p.a * h_minus, p.b * h_plus)
    assert sigma_inclusion(p, q) == "equal"


def test_sigma_inclusion_nested_model_spaces():
    small = SymbolPair(R.monomial(-1), R.const(1))
    big = SymbolPair(R.monomial(-2), R.const(1))
    assert sigma_inclusion(small, big) == "subset"
    assert sigma_inclusion(big, small) == "no_subset"


def test_sigma_inclusion_requires_nontrivial():
    with pytest.raises(TrivialKernel):
        sigma_inclusion(SymbolPair(R.monomial(2), R.const(1)), CIRCLE_PAIR)


# ---------------------------------------------------------------- model spaces


def test_model_space_monomial():
    kb = model_space_basis(R.monomial(3))
    assert kb.dimension == 3
    for w in (R.const(1), R.monomial(1), R.monomial(2)):
        assert any(e.equals(w) for e in kb.elements)


def test_model_space_mixed_blaschke():
    theta = R.monomial(1) * (C({0: -0.5, 1: 1}) / C({0: 1, 1: -0.5}))
    kb = model_space_basis(theta)
    assert kb.dimension == 2
    pair = SymbolPair(theta.conj_circle(), R.const(1))
    for e in kb.elements:
        assert member_Sigma(e, pair)
    # spans {1, z/(1 - z/2)}
    want = R.monomial(1) / C({0: 1, 1: -0.5})
    assert any(e.equals(want) or e.equals(want * (-2)) for e in kb.elements)


def test_model_space_single_blaschke():
    theta = C({0: -0.5, 1: 1}) / C({0: 1, 1: -0.5})
    kb = model_space_basis(theta)
    assert kb.dimension == 1
    assert kb.elements[0].equals(C({0: 1, 1: -0.5}).reciprocal())


def test_model_space_rejects_non_inner():
    with pytest.raises(NotInner):
        model_space_basis(C({0: -0.5, 1: 1}))


# ---------------------------------------------------------------- the oracle


def test_oracle_simple_pair():
    res = kernel_oracle(Paired(R.const(1), R.monomial(1)), 64)
    assert res.dim_estimate == 1
    kb = paired_kernel(SymbolPair(R.const(1), R.monomial(1)))
    ang = principal_angle(res, [el.total for el in kb.elements])
    assert ang < 1e-8


def test_oracle_circle_zero_pair_dims():
    assert kernel_oracle(Transposed(CIRCLE_PAIR.a, CIRCLE_PAIR.b), 64).dim_estimate == 0
    assert kernel_oracle(Paired(CIRCLE_PAIR.a, CIRCLE_PAIR.b), 64).dim_estimate >= 1


def test_oracle_toeplitz_trivial():
    assert kernel_oracle(Toeplitz(R.monomial(1)), 64).dim_estimate == 0


def test_oracle_agreement_with_exact_kernels():
    rng = trial_rng(37, 5)
    prof = SamplerProfile(degree_bound=2, inside_annulus=(0.25, 0.6), outside_annulus=(1.6, 4.0))
    for i in range(10):
        pair = sample_pair_with_kernel(prof, rng, int(rng.integers(1, 4)), "invertible")
        kb = paired_kernel(pair)
        res = kernel_oracle(Paired(pair.a, pair.b), 64)
        assert res.dim_estimate == kb.dimension
        assert res.gap >= 1e3
        ang = principal_angle(res, [el.total for el in kb.elements])
        assert ang <= 1e-7


def test_oracle_stability_flag():
    res = kernel_oracle(Paired(R.const(1), R.monomial(1)), 64)
    assert res.stable is True
