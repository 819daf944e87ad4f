"""Exact graded-commutative cohomology rings of model spaces.

Supported spaces are finite presentations (point, circle, torus, closed
oriented surface) and flattened products of those.  Classes are stored by
homogeneous components with exact rational coefficients; no floating point
enters this module.

Sign conventions
----------------
* Monomials in a presented space are tuples of generator indices in
  nondecreasing order; sorting a product into normal form accumulates a
  Koszul sign (one flip per transposition of two odd-degree generators).
* A product-space monomial is one factor monomial per factor; the product
  of two such monomials carries the Koszul sign
  ``(-1)**sum(|b_i| * |a_j| for i < j)``.
* Fiber integration along a projection collapses the fiber factors in
  ascending position order; collapsing factor ``j`` of fiber dimension
  ``n_j`` contributes ``(-1)**(n_j * d)`` where ``d`` is the total degree
  of the *retained* factors to the left of ``j``.  With this convention
  the cross-product law

      (pi_0 x pi_1)_!(x_0 x x_1)
          = (-1)**(n_1 * (|x_0| - n_0)) pi_0!(x_0) x pi_1!(x_1)

  holds identically on monomials, as does the projection formula.  The
  leftover orientation ambiguity of products shows up only as the global
  sign of values such as ``(proj_1)_!(u x u) = -u``, which is recorded in
  :data:`GYSIN_CIRCLE_SIGN` and asserted by the test suite.
"""

from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from itertools import product as iter_product
from typing import Iterable, Mapping, Sequence, Union

__all__ = [
    "SpaceError",
    "ModelSpace",
    "ProductSpace",
    "GradedClass",
    "cross",
    "gysin_project",
    "pullback",
    "evaluate",
    "point",
    "circle",
    "torus",
    "surface",
    "model_space",
    "space_from_descriptor",
    "load_model_space",
    "product_space",
    "GYSIN_CIRCLE_SIGN",
]

# Global sign produced by this module's conventions for the generator
# integral (proj_1)_!(u x u) on the two-torus; pinned by tests.
GYSIN_CIRCLE_SIGN = -1

_MAX_REWRITE_DEPTH = 64


class SpaceError(ValueError):
    pass


Monomial = tuple  # generator-index tuple (ModelSpace) or factor tuple (ProductSpace)


class ModelSpace:
    """Finitely presented graded-commutative Q-algebra.

    ``relations`` maps a sorted tuple of generator indices to the normal
    form of that product, expressed as ``{monomial: coefficient}``.  A
    product of two odd generators not listed in any relation is a basis
    monomial; odd squares vanish automatically and so does anything above
    ``top_degree``.
    """

    def __init__(
        self,
        name: str,
        generators: Sequence[tuple[str, int]],
        relations: Mapping[tuple, Mapping[tuple, Fraction]] | None = None,
        top_degree: int = 0,
        fundamental_class: tuple | None = None,
    ):
        self.name = name
        self.generators = tuple((str(s), int(d)) for s, d in generators)
        for sym, deg in self.generators:
            if deg < 1:
                raise SpaceError(f"generator {sym} must have degree >= 1")
        self.gen_index = {s: i for i, (s, _) in enumerate(self.generators)}
        if len(self.gen_index) != len(self.generators):
            raise SpaceError("duplicate generator symbols")
        self.top_degree = int(top_degree)
        self.relations = {
            tuple(sorted(lhs)): {tuple(m): Fraction(c) for m, c in rhs.items() if c}
            for lhs, rhs in (relations or {}).items()
        }
        for lhs in self.relations:
            if len(lhs) < 2:
                raise SpaceError("relation left-hand sides need at least two factors")
        self.fundamental_monomial = (
            tuple(fundamental_class) if fundamental_class is not None else None
        )
        if self.fundamental_monomial is not None:
            if self.monomial_degree(self.fundamental_monomial) != self.top_degree:
                raise SpaceError("fundamental class must live in the top degree")
        self._norm_cache: dict[tuple, dict] = {}
        self._check_graded_relations()

    # -- structure ------------------------------------------------------

    def gen_degree(self, idx: int) -> int:
        return self.generators[idx][1]

    def monomial_degree(self, mon: Monomial) -> int:
        return sum(self.gen_degree(i) for i in mon)

    def monomial_str(self, mon: Monomial) -> str:
        if not mon:
            return "1"
        return "*".join(self.generators[i][0] for i in mon)

    def _check_graded_relations(self) -> None:
        for lhs, rhs in self.relations.items():
            d = self.monomial_degree(lhs)
            for mon in rhs:
                if self.monomial_degree(mon) != d:
                    raise SpaceError(
                        f"relation {lhs} -> {mon} does not respect the grading"
                    )

    # -- normal form ------------------------------------------------------

    def _sort_with_sign(self, seq: Sequence[int]) -> tuple[tuple, int]:
        """Insertion sort counting odd-odd transpositions."""
        out: list[int] = []
        sign = 1
        for g in seq:
            pos = len(out)
            while pos > 0 and out[pos - 1] > g:
                pos -= 1
            passed_odd = sum(
                1 for h in out[pos:] if self.gen_degree(h) % 2 == 1
            )
            if self.gen_degree(g) % 2 == 1 and passed_odd % 2 == 1:
                sign = -sign
            out.insert(pos, g)
        return tuple(out), sign

    def _find_relation(self, mon: tuple) -> tuple | None:
        for lhs in sorted(self.relations):
            if _is_submultiset(lhs, mon):
                return lhs
        return None

    def _extract(self, mon: tuple, lhs: tuple) -> tuple[tuple, int]:
        """Pull the generators of ``lhs`` to the front of ``mon``.

        Returns (remaining monomial, Koszul sign of the extraction).
        """
        remaining = list(mon)
        sign = 1
        for g in lhs:
            pos = remaining.index(g)
            if self.gen_degree(g) % 2 == 1:
                odd_before = sum(
                    1 for h in remaining[:pos] if self.gen_degree(h) % 2 == 1
                )
                if odd_before % 2 == 1:
                    sign = -sign
            del remaining[pos]
        return tuple(remaining), sign

    def normalize(self, seq: Sequence[int], _depth: int = 0) -> dict[tuple, Fraction]:
        """Normal form of a raw generator product, as {monomial: coefficient}."""
        if _depth > _MAX_REWRITE_DEPTH:
            raise SpaceError("relation rewriting does not terminate")
        key = tuple(seq)
        cached = self._norm_cache.get(key)
        if cached is not None:
            return dict(cached)
        mon, sign = self._sort_with_sign(seq)
        result: dict[tuple, Fraction]
        if self.monomial_degree(mon) > self.top_degree:
            result = {}
        elif any(
            a == b and self.gen_degree(a) % 2 == 1 for a, b in zip(mon, mon[1:])
        ):
            result = {}
        else:
            lhs = self._find_relation(mon)
            if lhs is None:
                result = {mon: Fraction(sign)}
            else:
                remaining, esign = self._extract(mon, lhs)
                result = {}
                for sub, coeff in self.relations[lhs].items():
                    for m2, c2 in self.normalize(sub + remaining, _depth + 1).items():
                        acc = result.get(m2, Fraction(0)) + sign * esign * coeff * c2
                        if acc:
                            result[m2] = acc
                        else:
                            result.pop(m2, None)
        if _depth == 0:
            self._norm_cache[key] = dict(result)
        return result

    def mul_monomials(self, m1: Monomial, m2: Monomial) -> dict[Monomial, Fraction]:
        return self.normalize(tuple(m1) + tuple(m2))

    # -- basis ------------------------------------------------------------

    def basis(self, degree: int) -> list[Monomial]:
        """Normal-form basis monomials of the given degree."""
        if degree < 0 or degree > self.top_degree:
            return []
        found: list[Monomial] = []
        for mon in self._candidate_monomials(degree):
            norm = self.normalize(mon)
            if norm == {mon: Fraction(1)}:
                found.append(mon)
        return found

    def _candidate_monomials(self, degree: int, start: int = 0):
        if degree == 0:
            yield ()
            return
        for i in range(start, len(self.generators)):
            d = self.gen_degree(i)
            if d > degree:
                continue
            max_rep = 1 if d % 2 == 1 else degree // d
            for rep in range(1, max_rep + 1):
                if rep * d > degree:
                    break
                for rest in self._candidate_monomials(degree - rep * d, i + 1):
                    yield (i,) * rep + rest

    # -- class constructors -----------------------------------------------

    def zero(self) -> "GradedClass":
        return GradedClass(self, {})

    def one(self) -> "GradedClass":
        return GradedClass(self, {0: {(): Fraction(1)}})

    def gen(self, symbol: str) -> "GradedClass":
        idx = self.gen_index.get(symbol)
        if idx is None:
            raise SpaceError(f"unknown generator {symbol!r} on {self.name}")
        deg = self.gen_degree(idx)
        return GradedClass(self, {deg: {(idx,): Fraction(1)}})

    # -- equality ----------------------------------------------------------

    def _key(self):
        return (
            "model",
            self.name,
            self.generators,
            tuple(sorted((l, tuple(sorted(r.items()))) for l, r in self.relations.items())),
            self.top_degree,
            self.fundamental_monomial,
        )

    def __eq__(self, other):
        return isinstance(other, ModelSpace) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"ModelSpace({self.name!r})"


def _is_submultiset(sub: tuple, mon: tuple) -> bool:
    it = iter(mon)
    for g in sub:
        for h in it:
            if h == g:
                break
            if h > g:
                return False
        else:
            return False
    return True


class ProductSpace:
    """Flattened product of model spaces with Koszul multiplication."""

    def __init__(self, factors: Sequence[ModelSpace]):
        if not factors:
            raise SpaceError("a product needs at least one factor")
        self.factors = tuple(factors)
        if not all(isinstance(f, ModelSpace) for f in self.factors):
            raise SpaceError("product factors must be model spaces")
        self.top_degree = sum(f.top_degree for f in self.factors)
        if all(f.fundamental_monomial is not None for f in self.factors):
            self.fundamental_monomial = tuple(
                f.fundamental_monomial for f in self.factors
            )
        else:
            self.fundamental_monomial = None
        self.name = " x ".join(f.name for f in self.factors)

    def monomial_degree(self, mon: Monomial) -> int:
        return sum(f.monomial_degree(m) for f, m in zip(self.factors, mon))

    def monomial_str(self, mon: Monomial) -> str:
        return " x ".join(f.monomial_str(m) for f, m in zip(self.factors, mon))

    def mul_monomials(self, m1: Monomial, m2: Monomial) -> dict[Monomial, Fraction]:
        # Koszul sign for interleaving: each m2[i] passes every m1[j], j > i.
        exp = 0
        for i, f in enumerate(self.factors):
            d2 = f.monomial_degree(m2[i])
            if d2 % 2 == 0:
                continue
            exp += sum(
                self.factors[j].monomial_degree(m1[j]) for j in range(i + 1, len(self.factors))
            )
        sign = Fraction(-1 if exp % 2 else 1)
        partials = [
            f.mul_monomials(a, b) for f, a, b in zip(self.factors, m1, m2)
        ]
        result: dict[Monomial, Fraction] = {}
        for combo in iter_product(*(p.items() for p in partials)):
            mon = tuple(m for m, _ in combo)
            coeff = sign
            for _, c in combo:
                coeff *= c
            acc = result.get(mon, Fraction(0)) + coeff
            if acc:
                result[mon] = acc
            else:
                result.pop(mon, None)
        return result

    def basis(self, degree: int) -> list[Monomial]:
        out: list[Monomial] = []

        def rec(i: int, deg_left: int, prefix: tuple):
            if i == len(self.factors):
                if deg_left == 0:
                    out.append(prefix)
                return
            f = self.factors[i]
            for d in range(0, min(deg_left, f.top_degree) + 1):
                for m in f.basis(d):
                    rec(i + 1, deg_left - d, prefix + (m,))

        rec(0, degree, ())
        return out

    def zero(self) -> "GradedClass":
        return GradedClass(self, {})

    def one(self) -> "GradedClass":
        unit = tuple(() for _ in self.factors)
        return GradedClass(self, {0: {unit: Fraction(1)}})

    def _key(self):
        return ("product", tuple(f._key() for f in self.factors))

    def __eq__(self, other):
        return isinstance(other, ProductSpace) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"ProductSpace({self.name!r})"


Space = Union[ModelSpace, ProductSpace]


class GradedClass:
    """Cohomology class on a model space, stored by homogeneous components."""

    __slots__ = ("space", "components")

    def __init__(self, space: Space, components: Mapping[int, Mapping[Monomial, Fraction]]):
        self.space = space
        comps: dict[int, dict[Monomial, Fraction]] = {}
        for deg, mons in components.items():
            if deg < 0 or deg > space.top_degree:
                continue
            clean = {tuple(m): Fraction(c) for m, c in mons.items() if c}
            if clean:
                comps[int(deg)] = clean
        self.components = comps

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_monomial(cls, space: Space, mon: Monomial, coeff=1) -> "GradedClass":
        deg = space.monomial_degree(mon)
        return cls(space, {deg: {tuple(mon): Fraction(coeff)}})

    # -- inspection ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.components

    def degrees(self) -> list[int]:
        return sorted(self.components)

    def is_homogeneous(self) -> bool:
        return len(self.components) <= 1

    def degree(self) -> int:
        """Degree of a homogeneous class (0 for the zero class)."""
        if not self.components:
            return 0
        if len(self.components) != 1:
            raise SpaceError("class is not homogeneous")
        return next(iter(self.components))

    def homogeneous_part(self, degree: int) -> "GradedClass":
        part = self.components.get(degree)
        return GradedClass(self.space, {degree: part} if part else {})

    def coefficient(self, mon: Monomial) -> Fraction:
        deg = self.space.monomial_degree(mon)
        return self.components.get(deg, {}).get(tuple(mon), Fraction(0))

    # -- ring operations --------------------------------------------------

    def _require_same_space(self, other: "GradedClass") -> None:
        if self.space != other.space:
            raise SpaceError("space mismatch")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.space.one() * other
        self._require_same_space(other)
        comps: dict[int, dict[Monomial, Fraction]] = {
            d: dict(m) for d, m in self.components.items()
        }
        for d, mons in other.components.items():
            dst = comps.setdefault(d, {})
            for m, c in mons.items():
                acc = dst.get(m, Fraction(0)) + c
                if acc:
                    dst[m] = acc
                else:
                    dst.pop(m, None)
        return GradedClass(self.space, comps)

    __radd__ = __add__

    def __neg__(self):
        return self * Fraction(-1)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.space.one() * other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            s = Fraction(other)
            return GradedClass(
                self.space,
                {
                    d: {m: c * s for m, c in mons.items()}
                    for d, mons in self.components.items()
                },
            )
        self._require_same_space(other)
        comps: dict[int, dict[Monomial, Fraction]] = {}
        for d1, m1s in self.components.items():
            for d2, m2s in other.components.items():
                d = d1 + d2
                if d > self.space.top_degree:
                    continue
                dst = comps.setdefault(d, {})
                for m1, c1 in m1s.items():
                    for m2, c2 in m2s.items():
                        for m, c in self.space.mul_monomials(m1, m2).items():
                            acc = dst.get(m, Fraction(0)) + c1 * c2 * c
                            if acc:
                                dst[m] = acc
                            else:
                                dst.pop(m, None)
        return GradedClass(self.space, comps)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise SpaceError("negative powers are not defined")
        out = self.space.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.space.one() * other
        if not isinstance(other, GradedClass):
            return NotImplemented
        return self.space == other.space and (self - other).is_zero()

    def __hash__(self):
        raise TypeError("GradedClass is unhashable")

    def __repr__(self):
        if self.is_zero():
            return "0"
        terms = []
        for d in sorted(self.components):
            for m, c in sorted(self.components[d].items()):
                terms.append(f"{c}*{self.space.monomial_str(m)}")
        return " + ".join(terms)


# ---------------------------------------------------------------------------
# Cross products, fiber integration, evaluation
# ---------------------------------------------------------------------------


def _factor_list(space: Space) -> tuple[ModelSpace, ...]:
    return space.factors if isinstance(space, ProductSpace) else (space,)


def _as_product_monomial(space: Space, mon: Monomial) -> tuple:
    return mon if isinstance(space, ProductSpace) else (mon,)


def _collapse(factors: Sequence[ModelSpace]) -> Space:
    """Drop unit (point) factors; a product of nothing is the point."""
    kept = [f for f in factors if f != point()]
    if not kept:
        return point()
    if len(kept) == 1:
        return kept[0]
    return ProductSpace(kept)


def _recompose_monomial(target: Space, parts: Sequence[Monomial]) -> Monomial:
    if isinstance(target, ProductSpace):
        return tuple(parts)
    if parts:
        return parts[0]
    return ()


def product_space(*spaces: Space) -> Space:
    factors: list[ModelSpace] = []
    for s in spaces:
        factors.extend(_factor_list(s))
    return _collapse(factors)


def cross(a: GradedClass, b: GradedClass) -> GradedClass:
    """External product; lands on the flattened product of the two spaces."""

    def nonpoint_parts(space: Space, mon: Monomial) -> list[Monomial]:
        return [
            m
            for f, m in zip(_factor_list(space), _as_product_monomial(space, mon))
            if f != point()
        ]

    target = product_space(a.space, b.space)
    comps: dict[int, dict[Monomial, Fraction]] = {}
    for d1, m1s in a.components.items():
        for d2, m2s in b.components.items():
            dst = comps.setdefault(d1 + d2, {})
            for m1, c1 in m1s.items():
                for m2, c2 in m2s.items():
                    parts = nonpoint_parts(a.space, m1) + nonpoint_parts(b.space, m2)
                    mon = _recompose_monomial(target, parts)
                    acc = dst.get(mon, Fraction(0)) + c1 * c2
                    if acc:
                        dst[mon] = acc
                    else:
                        dst.pop(mon, None)
    return GradedClass(target, comps)


def gysin_project(x: GradedClass, fiber_indices: Iterable[int]) -> GradedClass:
    """Fiber integration along the projection that drops the given factors."""
    fiber = tuple(sorted(set(int(i) for i in fiber_indices)))
    factors = _factor_list(x.space)
    for j in fiber:
        if j < 0 or j >= len(factors):
            raise SpaceError(f"factor index {j} out of range")
        if factors[j].fundamental_monomial is None:
            raise SpaceError(
                f"factor {factors[j].name} has no fundamental class"
            )
    kept = [i for i in range(len(factors)) if i not in fiber]
    target = _collapse([factors[i] for i in kept])
    comps: dict[int, dict[Monomial, Fraction]] = {}
    for mons in x.components.values():
        for mon, coeff in mons.items():
            pmon = _as_product_monomial(x.space, mon)
            sign_exp = 0
            kept_left_deg = 0
            kept_parts: list = []
            dead = False
            for i, f in enumerate(factors):
                part = pmon[i]
                if i in fiber:
                    if part != f.fundamental_monomial:
                        dead = True
                        break
                    sign_exp += f.top_degree * kept_left_deg
                else:
                    kept_left_deg += f.monomial_degree(part)
                    if f != point():
                        kept_parts.append(part)
            if dead:
                continue
            out_mon = _recompose_monomial(target, kept_parts)
            c = coeff if sign_exp % 2 == 0 else -coeff
            deg = target.monomial_degree(out_mon)
            dst = comps.setdefault(deg, {})
            acc = dst.get(out_mon, Fraction(0)) + c
            if acc:
                dst[out_mon] = acc
            else:
                dst.pop(out_mon, None)
    return GradedClass(target, comps)


def pullback(y: GradedClass, target: ProductSpace, positions: Sequence[int]) -> GradedClass:
    """Pull a class back along the projection keeping the given positions."""
    src_factors = _factor_list(y.space)
    positions = tuple(int(p) for p in positions)
    if len(positions) != len(src_factors):
        raise SpaceError("one target position per source factor is required")
    for p, f in zip(positions, src_factors):
        if target.factors[p] != f:
            raise SpaceError("space mismatch")
    comps: dict[int, dict[Monomial, Fraction]] = {}
    for d, mons in y.components.items():
        dst = comps.setdefault(d, {})
        for mon, c in mons.items():
            pmon = _as_product_monomial(y.space, mon)
            out = [() for _ in target.factors]
            for p, part in zip(positions, pmon):
                out[p] = part
            dst[tuple(out)] = c
    return GradedClass(target, comps)


def evaluate(x: GradedClass) -> Fraction:
    """Pair against the fundamental class: coefficient of its monomial."""
    fund = x.space.fundamental_monomial
    if fund is None:
        raise SpaceError(f"{x.space.name} has no fundamental class")
    return x.components.get(x.space.top_degree, {}).get(fund, Fraction(0))


# ---------------------------------------------------------------------------
# Presets and descriptors
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def point() -> ModelSpace:
    return ModelSpace("point", [], {}, top_degree=0, fundamental_class=())


@lru_cache(maxsize=None)
def circle() -> ModelSpace:
    return ModelSpace(
        "circle", [("u", 1)], {}, top_degree=1, fundamental_class=(0,)
    )


@lru_cache(maxsize=None)
def torus(n: int) -> ModelSpace:
    """Exterior algebra on n degree-one generators u1..un."""
    if n < 1:
        raise SpaceError("torus dimension must be >= 1")
    gens = [(f"u{i + 1}", 1) for i in range(n)]
    return ModelSpace(
        f"torus({n})", gens, {}, top_degree=n, fundamental_class=tuple(range(n))
    )


@lru_cache(maxsize=None)
def surface(g: int) -> ModelSpace:
    """Closed oriented genus-g surface with its intersection form."""
    if g < 1:
        raise SpaceError("surface genus must be >= 1")
    gens: list[tuple[str, int]] = []
    for i in range(g):
        gens.append((f"a{i + 1}", 1))
        gens.append((f"b{i + 1}", 1))
    gens.append(("z", 2))
    z = 2 * g
    relations: dict[tuple, dict[tuple, Fraction]] = {}
    for i in range(2 * g):
        for j in range(i + 1, 2 * g):
            if j == i + 1 and i % 2 == 0:
                relations[(i, j)] = {(z,): Fraction(1)}  # a_k b_k = z
            else:
                relations[(i, j)] = {}
    return ModelSpace(
        f"surface({g})", gens, relations, top_degree=2, fundamental_class=(z,)
    )


def model_space(preset: str) -> ModelSpace:
    """Resolve a preset name: point | circle | torus(n) | surface(g)."""
    preset = preset.strip()
    if preset == "point":
        return point()
    if preset == "circle":
        return circle()
    for prefix, builder in (("torus", torus), ("surface", surface)):
        if preset.startswith(prefix + "(") and preset.endswith(")"):
            try:
                arg = int(preset[len(prefix) + 1 : -1])
            except ValueError as exc:
                raise SpaceError(f"bad preset argument in {preset!r}") from exc
            return builder(arg)
    raise SpaceError(f"unknown model space {preset!r}")


def space_from_descriptor(data: Mapping) -> ModelSpace:
    """Build a model space from its JSON descriptor dictionary."""
    try:
        name = data["name"]
        generators = [(g["symbol"], int(g["degree"])) for g in data["generators"]]
        top = int(data["top_degree"])
    except (KeyError, TypeError) as exc:
        raise SpaceError(f"malformed space descriptor: {exc}") from exc
    index = {s: i for i, (s, _) in enumerate(generators)}
    relations: dict[tuple, dict[tuple, Fraction]] = {}
    for rel in data.get("relations", []):
        lhs = tuple(sorted(index[s] for s in rel["lhs"]))
        rhs: dict[tuple, Fraction] = {}
        for mon_str, coeff in rel.get("rhs", {}).items():
            mon = () if mon_str == "1" else tuple(
                index[s] for s in mon_str.split("*")
            )
            rhs[mon] = Fraction(coeff)
        relations[lhs] = rhs
    fund = data.get("fundamental_class")
    fund_mon = tuple(index[s] for s in fund) if fund is not None else None
    return ModelSpace(name, generators, relations, top, fund_mon)


def load_model_space(path) -> ModelSpace:
    with open(path, "r", encoding="utf-8") as fh:
        return space_from_descriptor(json.load(fh))
