import math
import random
from fractions import Fraction as F

import pytest

from tautsig.graded_ring import circle, cross, product_space, torus
from tautsig.mult_seq import (
    BundleData,
    CharClassPolynomial,
    FormalSeries,
    GenusError,
    SeriesError,
    chern_character,
    chern_character_polynomial,
    expand_series,
    genus_components,
    l_class,
    super_chern_character,
)

from oracles import genus_weight_oracle, power_sum_oracle, x_over_tanh_oracle


# ---------------------------------------------------------------------------
# Series expansion
# ---------------------------------------------------------------------------


def test_x_over_tanh_matches_bernoulli_oracle():
    s = expand_series("L-hirzebruch", 12)
    oracle = x_over_tanh_oracle(12)
    assert list(s.coeffs) == oracle
    # Frozen values computed from the oracle.
    assert s[2] == F(1, 3) and s[4] == F(-1, 45) and s[6] == F(2, 945)


def test_halved_series_is_substituted_oracle():
    s = expand_series("L-atiyah-singer", 10)
    oracle = x_over_tanh_oracle(10)
    assert list(s.coeffs) == [c / F(2) ** k for k, c in enumerate(oracle)]
    assert s[2] == F(1, 12)


def test_exp_series():
    assert expand_series("exp", 2).coeffs == (F(1), F(1), F(1, 2))


def test_series_order_cap():
    with pytest.raises(SeriesError):
        expand_series("L-hirzebruch", 21)
    with pytest.raises(SeriesError):
        expand_series("nope", 4)


def test_series_cache_round_trip(tmp_path, monkeypatch):
    monkeypatch.setenv("TAUTSIG_CACHE", str(tmp_path))
    first = expand_series("L-hirzebruch", 6)
    cached = expand_series("L-hirzebruch", 6)
    assert first == cached
    assert any(p.name.startswith("series_") for p in tmp_path.iterdir())


def test_series_arithmetic():
    f = FormalSeries([1, 1, F(1, 2), F(1, 6)])
    g = f.log()
    assert g.coeffs[:3] == (F(0), F(1), F(0))


# ---------------------------------------------------------------------------
# Genus components
# ---------------------------------------------------------------------------


def test_weight_one_components_frozen():
    l1 = genus_components(expand_series("L-hirzebruch", 2), 1)
    assert dict(l1.terms) == {(1,): F(1, 3)}
    cl1 = genus_components(expand_series("L-atiyah-singer", 2), 1)
    assert dict(cl1.terms) == {(1,): F(1, 12)}


def test_weight_zero_is_unit():
    f = expand_series("L-hirzebruch", 2)
    assert dict(genus_components(f, 0).terms) == {(): F(1)}


def test_genus_requires_unit_constant_term():
    with pytest.raises(GenusError, match="not a genus"):
        genus_components(FormalSeries([2, 0, 1]), 1)


def test_genus_matches_root_expansion_oracle():
    for k in range(1, 5):
        f = expand_series("L-hirzebruch", 2 * k)
        got = genus_components(f, k)
        oracle = genus_weight_oracle(list(f.coeffs), k)
        assert dict(got.terms) == oracle, k


def test_power_of_two_ratio():
    for k in range(5):
        lk = genus_components(expand_series("L-hirzebruch", 2 * max(k, 1)), k)
        clk = genus_components(expand_series("L-atiyah-singer", 2 * max(k, 1)), k)
        ratio = F(2) ** (2 * k)
        assert lk == clk.scale(ratio)
        # The exponent really is 2k: scaling by any other power of two fails.
        if k:
            assert lk != clk.scale(ratio * 2)


def test_char_class_polynomial_weight_guard():
    with pytest.raises(SeriesError):
        CharClassPolynomial(2, "p", {(1,): F(1)})


def test_polynomial_json_form():
    l2 = genus_components(expand_series("L-hirzebruch", 4), 2)
    assert l2.to_json() == {"p2": "7/45", "p1^2": "-1/45"}


# ---------------------------------------------------------------------------
# Chern character
# ---------------------------------------------------------------------------


def test_ch2_newton_oracle():
    ch2 = chern_character_polynomial(2)
    assert dict(ch2.terms) == {(2,): F(1, 2), (0, 1): F(-1)}
    for m in range(1, 5):
        assert dict(chern_character_polynomial(m).terms) == {
            e: c / math.factorial(m) for e, c in power_sum_oracle(m).items()
        }


def test_line_bundle_character_on_torus():
    t2 = product_space(circle(), circle())
    uu = cross(circle().gen("u"), circle().gen("u"))
    line = BundleData.line(t2, uu)
    assert chern_character(line) == t2.one() + uu


def test_trivial_rank_n_character():
    t2 = torus(2)
    trivial = BundleData(space=t2, kind="complex", rank=5)
    assert chern_character(trivial) == t2.one() * 5


def test_character_multiplicative_on_line_bundles():
    rng = random.Random(3)
    t4 = torus(4)
    deg2 = t4.basis(2)
    for _ in range(20):
        c1a = sum(
            (F(rng.randint(-2, 2)) * t4.gen(t4.generators[m[0]][0]) * t4.gen(t4.generators[m[1]][0])
             for m in deg2),
            t4.zero(),
        )
        c1b = sum(
            (F(rng.randint(-2, 2)) * t4.gen(t4.generators[m[0]][0]) * t4.gen(t4.generators[m[1]][0])
             for m in deg2),
            t4.zero(),
        )
        la, lb = BundleData.line(t4, c1a), BundleData.line(t4, c1b)
        lab = BundleData.line(t4, c1a + c1b)
        assert chern_character(lab) == chern_character(la) * chern_character(lb)


# ---------------------------------------------------------------------------
# Multiplicative class on bundle data
# ---------------------------------------------------------------------------


def test_trivial_bundle_total_class():
    t2 = torus(2)
    assert l_class(BundleData.trivial_real(t2)) == t2.one()


def test_missing_classes_flagged():
    t8 = torus(8)
    notes = []
    p1 = t8.gen("u1") * t8.gen("u2") * t8.gen("u3") * t8.gen("u4")
    data = BundleData(space=t8, kind="real-oriented", pontryagin_classes=[p1])
    result = l_class(data, max_k=2, notes=notes)
    assert notes, "padding must be reported"
    assert result.homogeneous_part(4) == p1 * F(1, 12)


def test_genus_multiplicative_on_whitney_sums():
    rng = random.Random(17)
    ta, tb = torus(4), torus(4)
    prod = product_space(ta, tb)
    for _ in range(10):
        pa = sum(
            (F(rng.randint(-2, 2)) * GradedClassFrom(ta, m) for m in ta.basis(4)),
            ta.zero(),
        )
        pb = sum(
            (F(rng.randint(-2, 2)) * GradedClassFrom(tb, m) for m in tb.basis(4)),
            tb.zero(),
        )
        va = BundleData(space=ta, kind="real-oriented", pontryagin_classes=[pa])
        vb = BundleData(space=tb, kind="real-oriented", pontryagin_classes=[pb])
        vsum = BundleData(
            space=prod,
            kind="real-oriented",
            pontryagin_classes=[
                cross(pa, tb.one()) + cross(ta.one(), pb),
                cross(pa, pb),
            ],
        )
        lhs = l_class(vsum, max_k=2)
        rhs = cross(l_class(va, max_k=2), l_class(vb, max_k=2))
        assert lhs == rhs


def GradedClassFrom(space, mon):
    from tautsig.graded_ring import GradedClass

    return GradedClass.from_monomial(space, mon)


# ---------------------------------------------------------------------------
# Super character
# ---------------------------------------------------------------------------


def test_super_character_cancels_equal_split():
    t2 = product_space(circle(), circle())
    uu = cross(circle().gen("u"), circle().gen("u"))
    v = BundleData.line(t2, uu)
    split = BundleData(space=t2, kind="complex", signature=(1, 1), splitting=(v, v))
    assert super_chern_character(split).is_zero()


def test_super_equals_plain_for_trivial_grading():
    t2 = product_space(circle(), circle())
    uu = cross(circle().gen("u"), circle().gen("u"))
    v_plus = BundleData.line(t2, uu)
    v_minus = BundleData(space=t2, kind="complex", rank=0)
    split = BundleData(space=t2, kind="complex", splitting=(v_plus, v_minus))
    assert super_chern_character(split) == chern_character(v_plus)


def test_super_degree_zero_is_signature_difference():
    t2 = torus(2)
    v_plus = BundleData(space=t2, kind="complex", rank=1)
    v_minus = BundleData(space=t2, kind="complex", rank=1)
    split = BundleData(
        space=t2, kind="complex", signature=(1, 1), splitting=(v_plus, v_minus)
    )
    sch = super_chern_character(split)
    assert sch.homogeneous_part(0).is_zero()


def test_super_requires_splitting():
    with pytest.raises(SeriesError):
        super_chern_character(BundleData(space=torus(2), kind="complex", rank=2))
