import random
from fractions import Fraction as F
from itertools import product as iproduct

import pytest

from tautsig.graded_ring import (
    GYSIN_CIRCLE_SIGN,
    GradedClass,
    SpaceError,
    circle,
    cross,
    evaluate,
    gysin_project,
    load_model_space,
    model_space,
    point,
    product_space,
    pullback,
    space_from_descriptor,
    surface,
    torus,
)


def rand_class(rng, space, maxdeg=None, density=0.5):
    maxdeg = space.top_degree if maxdeg is None else maxdeg
    comps = {}
    for d in range(maxdeg + 1):
        for mon in space.basis(d):
            if rng.random() < density:
                c = rng.randint(-3, 3)
                if c:
                    comps.setdefault(d, {})[mon] = F(c)
    return GradedClass(space, comps)


def rand_monomial_class(rng, space, degree):
    basis = space.basis(degree)
    if not basis:
        return None
    return GradedClass.from_monomial(space, rng.choice(basis))


# -- multiplication ---------------------------------------------------------


def test_circle_truncation():
    u = circle().gen("u")
    assert (u * u).is_zero()


def test_surface_intersection_signs():
    sg = surface(2)
    a1, b1 = sg.gen("a1"), sg.gen("b1")
    z = sg.gen("z")
    assert a1 * b1 == z
    assert b1 * a1 == -z
    assert (sg.gen("a1") * sg.gen("a2")).is_zero()
    assert (sg.gen("b1") * sg.gen("b2")).is_zero()


def test_torus_koszul_sign():
    s1 = circle()
    t2 = product_space(s1, s1)
    u1 = pullback(s1.gen("u"), t2, [0])
    u2 = pullback(s1.gen("u"), t2, [1])
    uu = cross(s1.gen("u"), s1.gen("u"))
    assert u1 * u2 == uu
    assert u2 * u1 == -uu


def test_mul_space_mismatch():
    with pytest.raises(SpaceError, match="space mismatch"):
        circle().gen("u") * torus(2).gen("u1")


def test_graded_commutativity_sampled():
    rng = random.Random(11)
    spaces = [circle(), torus(3), surface(2), product_space(torus(2), torus(2))]
    for space in spaces:
        for _ in range(40):
            da = rng.randint(0, min(4, space.top_degree))
            db = rng.randint(0, min(4, space.top_degree))
            a = rand_monomial_class(rng, space, da)
            b = rand_monomial_class(rng, space, db)
            if a is None or b is None:
                continue
            sign = F(-1) if (da * db) % 2 else F(1)
            assert a * b == (b * a) * sign


# -- cross products ---------------------------------------------------------


def test_cross_unit():
    one = point().one()
    assert cross(one, one) == point().one()
    u = circle().gen("u")
    assert cross(u, point().one()) == u


def test_cross_torus_generator():
    uu = cross(circle().gen("u"), circle().gen("u"))
    assert uu.degree() == 2
    assert evaluate(uu) == 1


def test_cross_koszul_expansion_two_ways():
    # (a x b)(a' x b') = (-1)^(|b||a'|) (a a') x (b b') on random monomials.
    rng = random.Random(23)
    t2 = torus(2)
    for _ in range(60):
        da, db = rng.randint(0, 2), rng.randint(0, 2)
        da2, db2 = rng.randint(0, 2 - da), rng.randint(0, 2 - db)
        a, b = rand_monomial_class(rng, t2, da), rand_monomial_class(rng, t2, db)
        a2, b2 = rand_monomial_class(rng, t2, da2), rand_monomial_class(rng, t2, db2)
        if None in (a, b, a2, b2):
            continue
        sign = F(-1) if (db * da2) % 2 else F(1)
        assert cross(a, b) * cross(a2, b2) == cross(a * a2, b * b2) * sign


# -- gysin ------------------------------------------------------------------


def test_gysin_circle_generator_sign():
    s1 = circle()
    uu = cross(s1.gen("u"), s1.gen("u"))
    total = uu.space.one() + uu
    k = gysin_project(total, [1])
    assert k == s1.gen("u") * F(GYSIN_CIRCLE_SIGN)
    assert GYSIN_CIRCLE_SIGN in (1, -1)


def test_gysin_kills_low_fiber_degree():
    s1 = circle()
    assert gysin_project(cross(s1.gen("u"), s1.one()), [1]).is_zero()


def test_gysin_requires_fundamental_class():
    free = product_space(
        circle(),
        model_space("circle"),
    )
    no_fund = space_from_descriptor(
        {
            "name": "open",
            "generators": [{"symbol": "x", "degree": 1}],
            "relations": [],
            "top_degree": 1,
        }
    )
    cls = cross(circle().gen("u"), no_fund.gen("x"))
    with pytest.raises(SpaceError, match="fundamental"):
        gysin_project(cls, [1])
    assert free.top_degree == 2


def test_cross_gysin_sign_law_full_enumeration():
    # All monomial pairs on circle-power models with up to four factors.
    s1 = circle()
    checked = 0
    for a0, f0, a1, f1 in iproduct(range(0, 3), range(1, 3), range(0, 3), range(1, 3)):
        if a0 + f0 > 4 or a1 + f1 > 4:
            continue
        e0 = product_space(*([s1] * (a0 + f0)))
        e1 = product_space(*([s1] * (a1 + f1)))
        for d0 in range(a0 + f0 + 1):
            for m0 in e0.basis(d0):
                x0 = GradedClass.from_monomial(e0, m0)
                for d1 in range(a1 + f1 + 1):
                    for m1 in e1.basis(d1):
                        x1 = GradedClass.from_monomial(e1, m1)
                        fiber = list(range(a0, a0 + f0)) + list(
                            range(a0 + f0 + a1, a0 + f0 + a1 + f1)
                        )
                        lhs = gysin_project(cross(x0, x1), fiber)
                        sign = F(-1) if (f1 * (d0 - f0)) % 2 else F(1)
                        rhs = cross(
                            gysin_project(x0, range(a0, a0 + f0)),
                            gysin_project(x1, range(a1, a1 + f1)),
                        ) * sign
                        assert lhs == rhs
                        checked += 1
    assert checked > 1000


def test_projection_formula_sampled():
    rng = random.Random(7)
    s1 = circle()
    base = product_space(s1, surface(2))
    total = product_space(s1, surface(2), torus(2))
    for _ in range(40):
        x = rand_class(rng, total, maxdeg=4)
        y = rand_class(rng, base, maxdeg=3)
        lhs = gysin_project(x * pullback(y, total, [0, 1]), [2])
        rhs = gysin_project(x, [2]) * y
        assert lhs == rhs


def test_gysin_functoriality_iterated():
    rng = random.Random(13)
    total = product_space(circle(), circle(), torus(2))
    for _ in range(40):
        x = rand_class(rng, total, maxdeg=4)
        direct = gysin_project(x, [1, 2])
        step = gysin_project(gysin_project(x, [1]), [1])
        assert direct == step


# -- evaluation --------------------------------------------------------------


def test_evaluate_normalizations():
    uu = cross(circle().gen("u"), circle().gen("u"))
    assert evaluate(uu) == 1
    assert evaluate(circle().one()) == 0
    sg = surface(2)
    total = sg.gen("a1") * sg.gen("b1") + sg.gen("a2") * sg.gen("b2")
    assert evaluate(total) == 2


def test_evaluate_needs_fundamental_class():
    open_space = space_from_descriptor(
        {
            "name": "open",
            "generators": [{"symbol": "x", "degree": 1}],
            "relations": [],
            "top_degree": 1,
        }
    )
    with pytest.raises(SpaceError, match="fundamental"):
        evaluate(open_space.gen("x"))


# -- torus model vs product of circles ---------------------------------------


def test_torus_matches_circle_product():
    t3 = torus(3)
    p3 = product_space(circle(), circle(), circle())

    def to_product(mon):
        return tuple((0,) if i in mon else () for i in range(3))

    rng = random.Random(5)
    for _ in range(50):
        d1, d2 = rng.randint(0, 3), rng.randint(0, 3)
        b1, b2 = t3.basis(d1), t3.basis(d2)
        if not b1 or not b2:
            continue
        m1, m2 = rng.choice(b1), rng.choice(b2)
        lhs = t3.mul_monomials(m1, m2)
        rhs = p3.mul_monomials(to_product(m1), to_product(m2))
        assert {to_product(m): c for m, c in lhs.items()} == rhs


# -- descriptors --------------------------------------------------------------


def test_descriptor_surface_round_trip(tmp_path):
    import json

    desc = {
        "name": "sigma2",
        "generators": [
            {"symbol": s, "degree": 1} for s in ("a1", "b1", "a2", "b2")
        ] + [{"symbol": "z", "degree": 2}],
        "relations": [
            {"lhs": ["a1", "b1"], "rhs": {"z": "1"}},
            {"lhs": ["a2", "b2"], "rhs": {"z": "1"}},
            {"lhs": ["a1", "a2"], "rhs": {}},
            {"lhs": ["a1", "b2"], "rhs": {}},
            {"lhs": ["b1", "a2"], "rhs": {}},
            {"lhs": ["b1", "b2"], "rhs": {}},
        ],
        "top_degree": 2,
        "fundamental_class": ["z"],
    }
    path = tmp_path / "sigma2.json"
    path.write_text(json.dumps(desc))
    loaded = load_model_space(path)
    ref = surface(2)
    for d in range(3):
        for m1 in ref.basis(d):
            for m2 in ref.basis(2 - d):
                assert loaded.mul_monomials(m1, m2) == ref.mul_monomials(m1, m2)
    assert evaluate(loaded.gen("a1") * loaded.gen("b1")) == 1


def test_presets_by_name():
    assert model_space("point") == point()
    assert model_space("circle") == circle()
    assert model_space("torus(4)") == torus(4)
    assert model_space("surface(3)") == surface(3)
    with pytest.raises(SpaceError):
        model_space("sphere(2)")
