from fractions import Fraction as F

import numpy as np
import pytest

from tautsig._gaussian import G_I, G_ONE, GaussianRational, QiMatrix
from tautsig.clifford import (
    CliffordError,
    CliffordModule,
    bott_generator_module,
    bott_reduce,
    build_exterior,
    compatible_pair,
    epsilon_sign,
    exterior_tensor_iso,
    graded_operator_tensor,
    graded_tensor,
    standard_indefinite_pair,
    verify_exterior_identities,
    verify_twisted_involution,
    volume_element,
)


def direct_sum(a, b):
    out = QiMatrix(a.nrows + b.nrows, a.ncols + b.ncols)
    for i, j, v in a.entries():
        out.put(i, j, v)
    for i, j, v in b.entries():
        out.put(a.nrows + i, a.ncols + j, v)
    return out


# -- construction -------------------------------------------------------------


def test_build_exterior_range_guard():
    with pytest.raises(CliffordError):
        build_exterior(0)
    with pytest.raises(CliffordError):
        build_exterior(9)


def test_star_normalization_dim_one():
    _, hodge = build_exterior(1)
    assert hodge.star.entry(1, 0) == G_ONE  # star 1 = e1
    assert hodge.star.entry(0, 1) == G_ONE  # star e1 = 1


def test_star_square_sign_dim_two():
    _, hodge = build_exterior(2)
    square = hodge.star @ hodge.star
    proj = hodge.degree_projector(1)
    assert square @ proj == proj.scale(F(-1))


def test_orientation_flip_negates_star():
    _, plus = build_exterior(3, orientation=1)
    _, minus = build_exterior(3, orientation=-1)
    assert minus.star == -plus.star


@pytest.mark.parametrize("n", range(1, 7))
def test_sign_identity_suite(n):
    results = verify_exterior_identities(n)
    failures = [r for r in results if not r["ok"]]
    assert not failures, failures


@pytest.mark.parametrize("n", range(1, 7))
def test_module_contract(n):
    module, _ = build_exterior(n)
    module.verify_contract()


# -- volume element ------------------------------------------------------------


def test_volume_square_signs():
    _, h1 = build_exterior(1)
    omega = volume_element(h1)
    assert omega @ omega == QiMatrix.identity(2).scale(F(-1))
    _, h4 = build_exterior(4)
    omega4 = volume_element(h4)
    assert omega4 @ omega4 == QiMatrix.identity(16)


def test_tau_from_volume_dim_three():
    _, h3 = build_exterior(3)
    assert h3.tau == volume_element(h3).scale(F(-1))  # i^6 = -1


def test_volume_vs_star_degreewise_dim_four():
    _, h4 = build_exterior(4)
    omega = volume_element(h4)
    for p in range(5):
        proj = h4.degree_projector(p)
        sign = F((-1) ** ((p * (p - 1) // 2 + 4 * p) % 2))
        assert omega @ proj == (h4.star @ proj).scale(sign)


# -- graded tensor ---------------------------------------------------------------


def test_tensor_generators_anticommute():
    a, _ = build_exterior(1)
    b, _ = build_exterior(1)
    tens = graded_tensor(a, b)
    tens.verify_contract()


@pytest.mark.parametrize("dims", [(1, 1), (1, 3), (3, 3)])
def test_exterior_tensor_isomorphism(dims):
    n0, n1 = dims
    a, ha = build_exterior(n0)
    b, hb = build_exterior(n1)
    tens = graded_tensor(a, b)
    iso = exterior_tensor_iso(n0, n1)
    big, hbig = build_exterior(n0 + n1)
    for j in range(n0):
        assert iso @ tens.generators[j] == hbig.clifford[j] @ iso
    for j in range(n1):
        assert iso @ tens.generators[n0 + j] == hbig.clifford[n0 + j] @ iso
    assert iso @ tens.iota == big.iota @ iso
    # Volume elements correspond.
    omega_tensor = graded_operator_tensor(
        volume_element(ha), volume_element(hb), a.iota, parity_b=n1
    )
    assert iso @ omega_tensor == volume_element(hbig) @ iso


def test_operator_sum_square_rule():
    a, ha = build_exterior(1)
    b, hb = build_exterior(2)
    for d_op in ha.clifford:
        for b_op in hb.clifford:
            left = graded_operator_tensor(d_op, QiMatrix.identity(b.dim), a.iota, 0)
            right = graded_operator_tensor(QiMatrix.identity(a.dim), b_op, a.iota, 1)
            total = left + right
            expected = (d_op @ d_op).kron(QiMatrix.identity(b.dim)) + QiMatrix.identity(
                a.dim
            ).kron(b_op @ b_op)
            assert total @ total == expected


def test_tensor_associativity_is_literal():
    mods = [build_exterior(1)[0], build_exterior(1)[0], build_exterior(2)[0]]
    left = graded_tensor(graded_tensor(mods[0], mods[1]), mods[2])
    right = graded_tensor(mods[0], graded_tensor(mods[1], mods[2]))
    assert left.iota == right.iota
    assert len(left.generators) == len(right.generators)
    for ga, gb in zip(left.generators, right.generators):
        assert ga == gb


# -- epsilon table -----------------------------------------------------------------


@pytest.mark.parametrize("m0", [0, 1, 2])
@pytest.mark.parametrize("m1", [0, 1, 2])
def test_epsilon_sign_table(m0, m1):
    sign, cert = epsilon_sign(m0, m1)
    assert sign == (1 if (m0 + m1) % 2 == 0 else -1)
    assert cert["eq5_matches"]
    assert cert["volume_correspondence"]


def test_epsilon_range_guard():
    with pytest.raises(CliffordError):
        epsilon_sign(3, 0)


# -- bott reduction ---------------------------------------------------------------


def test_bott_generator_index_one():
    module, zero = bott_generator_module()
    red = bott_reduce(module, zero)
    assert red.graded_index == 1
    assert red.operator.nrows == 1


def test_bott_invertible_odd_index_zero():
    m3, h3 = build_exterior(3)
    two_gen = CliffordModule(dim=m3.dim, iota=m3.iota, generators=h3.clifford[:2])
    d_op = h3.clifford[2].scale(G_I)
    assert bott_reduce(two_gen, d_op).graded_index == 0


def test_bott_direct_sum_additivity():
    module, _ = bott_generator_module()
    doubled = CliffordModule(
        dim=4,
        iota=direct_sum(module.iota, module.iota),
        generators=[direct_sum(g, g) for g in module.generators],
    )
    assert bott_reduce(doubled, QiMatrix.zero(4, 4)).graded_index == 2


def test_bott_rejects_bad_operator():
    module, _ = bott_generator_module()
    bad = QiMatrix.identity(2)  # commutes, does not anticommute
    with pytest.raises(CliffordError, match="entry"):
        bott_reduce(module, bad)


# -- compatible pairs ---------------------------------------------------------------


def test_pair_definite_identity():
    pair = compatible_pair(np.eye(2))
    assert np.allclose(pair.sigma, np.eye(2))
    assert np.allclose(pair.h, np.eye(2))


def test_pair_diagonal_indefinite():
    pair = compatible_pair(np.diag([1.0, -1.0]))
    assert np.allclose(pair.sigma, np.diag([1.0, -1.0]))
    assert np.allclose(pair.h, np.eye(2))


def test_pair_random_signature_one_one():
    rng = np.random.default_rng(12)
    for _ in range(5):
        g = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        eta = g @ np.diag([1.0, -1.0]) @ g.conj().T
        pair = compatible_pair(eta, tolerance=1e-12)
        pair.verify()
        assert np.allclose(pair.sigma @ pair.sigma, np.eye(2), atol=1e-12)
        assert np.allclose(pair.h, eta @ pair.sigma, atol=1e-12)


def test_pair_continuity_under_h0_perturbation():
    rng = np.random.default_rng(5)
    g = rng.normal(size=(2, 2))
    eta = g @ np.diag([1.0, -1.0]) @ g.T
    base = compatible_pair(eta)
    for scale in (1e-6, 1e-8):
        h0 = np.eye(2) + scale * np.array([[0.0, 1.0], [1.0, 0.5]])
        moved = compatible_pair(eta, h0=h0)
        assert np.max(np.abs(moved.sigma - base.sigma)) < 100 * scale
        assert np.max(np.abs(moved.h - base.h)) < 100 * scale


def test_pair_rejects_singular_eta():
    with pytest.raises(CliffordError):
        compatible_pair(np.zeros((2, 2)))


# -- twisted involution -----------------------------------------------------------


@pytest.mark.parametrize("n", range(1, 7))
def test_twisted_involution_identities(n):
    sigmas = [
        QiMatrix.identity(1),
        standard_indefinite_pair(1, 1)[1],
        QiMatrix.from_rows([[F(3, 5), F(4, 5)], [F(4, 5), F(-3, 5)]]),
    ]
    for sigma in sigmas:
        assert verify_twisted_involution(n, sigma)["ok"]


# -- scalar arithmetic -------------------------------------------------------------


def test_gaussian_rational_field_ops():
    a = GaussianRational(F(1, 2), F(-1, 3))
    b = GaussianRational(2, 1)
    assert (a * b) / b == a
    assert a + (-a) == GaussianRational(0, 0)
    assert (G_I * G_I) == GaussianRational(-1, 0)
    assert a.conj().conj() == a
