"""Multiplicative characteristic classes from generating power series.

The module expands the genus series x/tanh(x) (Hirzebruch) and its halved
variant (x/2)/tanh(x/2), turns an even series with constant term 1 into
its weight-k polynomials in Pontryagin classes, and provides the Chern
character and super Chern character.  All coefficients are exact
rationals.

The weight-k polynomial of a genus f is computed through the logarithm:
with log f(x) = sum_j c_j x^(2j) and p_j the elementary symmetric
functions of the squared formal roots, the total class is
exp(sum_j c_j s_j(p)) where s_j is the j-th power sum rewritten via the
Newton identities.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from .graded_ring import GradedClass, Space

__all__ = [
    "SeriesError",
    "GenusError",
    "ORDER_CAP",
    "GENUS_WEIGHT_CAP",
    "FormalSeries",
    "expand_series",
    "CharClassPolynomial",
    "genus_components",
    "power_sum_polynomial",
    "BundleData",
    "l_class",
    "chern_character",
    "chern_character_polynomial",
    "super_chern_character",
]

ORDER_CAP = 20
GENUS_WEIGHT_CAP = 5


class SeriesError(ValueError):
    pass


class GenusError(ValueError):
    pass


class FormalSeries:
    """Truncated one-variable power series with exact rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence):
        self.coeffs = tuple(Fraction(c) for c in coeffs)
        if not self.coeffs:
            raise SeriesError("a series needs at least the constant term")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def is_even(self) -> bool:
        return all(c == 0 for c in self.coeffs[1::2])

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k <= self.order else Fraction(0)

    def truncate(self, order: int) -> "FormalSeries":
        coeffs = list(self.coeffs[: order + 1])
        coeffs += [Fraction(0)] * (order + 1 - len(coeffs))
        return FormalSeries(coeffs)

    def __eq__(self, other):
        if not isinstance(other, FormalSeries):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other: "FormalSeries") -> "FormalSeries":
        n = min(self.order, other.order)
        return FormalSeries([self[k] + other[k] for k in range(n + 1)])

    def __sub__(self, other: "FormalSeries") -> "FormalSeries":
        n = min(self.order, other.order)
        return FormalSeries([self[k] - other[k] for k in range(n + 1)])

    def __mul__(self, other) -> "FormalSeries":
        if isinstance(other, (int, Fraction)):
            return FormalSeries([c * Fraction(other) for c in self.coeffs])
        n = min(self.order, other.order)
        out = [Fraction(0)] * (n + 1)
        for i in range(n + 1):
            for j in range(n + 1 - i):
                out[i + j] += self[i] * other[j]
        return FormalSeries(out)

    __rmul__ = __mul__

    def __truediv__(self, other: "FormalSeries") -> "FormalSeries":
        if other[0] == 0:
            raise SeriesError("division requires an invertible constant term")
        n = min(self.order, other.order)
        out = [Fraction(0)] * (n + 1)
        for k in range(n + 1):
            acc = self[k]
            for j in range(1, k + 1):
                acc -= other[j] * out[k - j]
            out[k] = acc / other[0]
        return FormalSeries(out)

    def scale_variable(self, s) -> "FormalSeries":
        """Substitute x -> s*x."""
        s = Fraction(s)
        return FormalSeries([c * s**k for k, c in enumerate(self.coeffs)])

    def log(self) -> "FormalSeries":
        """log of a series with constant term 1, via g' = f'/f."""
        if self[0] != 1:
            raise SeriesError("log requires constant term 1")
        n = self.order
        deriv = FormalSeries([self[k + 1] * (k + 1) for k in range(n)] or [0])
        quot = deriv / self.truncate(max(n - 1, 0))
        out = [Fraction(0)] * (n + 1)
        for k in range(1, n + 1):
            out[k] = quot[k - 1] / k
        return FormalSeries(out)

    def __repr__(self):
        terms = [f"{c}*x^{k}" for k, c in enumerate(self.coeffs) if c]
        return " + ".join(terms) if terms else "0"


def _exp_series(order: int) -> FormalSeries:
    return FormalSeries([Fraction(1, math.factorial(k)) for k in range(order + 1)])


def _x_over_tanh(order: int) -> FormalSeries:
    # x/tanh(x) = cosh(x) / (sinh(x)/x), both unit series.
    cosh = FormalSeries(
        [Fraction(1, math.factorial(k)) if k % 2 == 0 else Fraction(0) for k in range(order + 1)]
    )
    sinh_over_x = FormalSeries(
        [Fraction(1, math.factorial(k + 1)) if k % 2 == 0 else Fraction(0) for k in range(order + 1)]
    )
    return cosh / sinh_over_x


_SERIES_BUILDERS = {
    "L-hirzebruch": _x_over_tanh,
    "L-atiyah-singer": lambda order: _x_over_tanh(order).scale_variable(Fraction(1, 2)),
    "exp": _exp_series,
}


def expand_series(name: str, order: int) -> FormalSeries:
    """Exact truncated expansion of a named genus series."""
    if name not in _SERIES_BUILDERS:
        raise SeriesError(f"unknown series {name!r}")
    if order < 0 or order > ORDER_CAP:
        raise SeriesError(f"order {order} outside [0, {ORDER_CAP}]")
    cache_dir = os.environ.get("TAUTSIG_CACHE")
    cache_path = None
    if cache_dir:
        cache_path = os.path.join(cache_dir, f"series_{name}_{order}.json")
        if os.path.exists(cache_path):
            with open(cache_path, "r", encoding="utf-8") as fh:
                return FormalSeries([Fraction(c) for c in json.load(fh)])
    series = _SERIES_BUILDERS[name](order)
    if cache_path:
        os.makedirs(cache_dir, exist_ok=True)
        with open(cache_path, "w", encoding="utf-8") as fh:
            json.dump([str(c) for c in series.coeffs], fh)
    return series


# ---------------------------------------------------------------------------
# Weighted polynomials in p_1, p_2, ... (or c_1, c_2, ...)
# ---------------------------------------------------------------------------

ExpVector = tuple  # exponents of v_1..v_k, trailing zeros stripped


def _weight(exps: ExpVector) -> int:
    return sum((i + 1) * e for i, e in enumerate(exps))


def _strip(exps: Sequence[int]) -> ExpVector:
    exps = list(exps)
    while exps and exps[-1] == 0:
        exps.pop()
    return tuple(exps)


def _poly_mul(a: Mapping[ExpVector, Fraction], b: Mapping[ExpVector, Fraction], cap: int):
    out: dict[ExpVector, Fraction] = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            n = max(len(e1), len(e2))
            e = _strip([ (e1[i] if i < len(e1) else 0) + (e2[i] if i < len(e2) else 0) for i in range(n) ])
            if _weight(e) > cap:
                continue
            acc = out.get(e, Fraction(0)) + c1 * c2
            if acc:
                out[e] = acc
            else:
                out.pop(e, None)
    return out


def _poly_add(a, b):
    out = dict(a)
    for e, c in b.items():
        acc = out.get(e, Fraction(0)) + c
        if acc:
            out[e] = acc
        else:
            out.pop(e, None)
    return out


def _poly_exp(p: Mapping[ExpVector, Fraction], cap: int):
    """exp of a polynomial with no constant term, truncated by weight."""
    out = {(): Fraction(1)}
    term = {(): Fraction(1)}
    for m in range(1, cap + 1):
        term = _poly_mul(term, p, cap)
        if not term:
            break
        out = _poly_add(out, {e: c / math.factorial(m) for e, c in term.items()})
    return out


def power_sum_polynomial(m: int) -> dict[ExpVector, Fraction]:
    """m-th power sum as a polynomial in elementary symmetric functions.

    Newton identity: s_m = (-1)^(m-1) m e_m + sum_{i=1}^{m-1} (-1)^(i-1) e_i s_{m-i}.
    """
    if m == 0:
        raise SeriesError("power sums start at m = 1")
    table: list[dict[ExpVector, Fraction]] = [{}]
    for mm in range(1, m + 1):
        e_mm = _strip([0] * (mm - 1) + [1])
        acc: dict[ExpVector, Fraction] = {
            e_mm: Fraction(mm) * (1 if (mm - 1) % 2 == 0 else -1)
        }
        for i in range(1, mm):
            e_i = _strip([0] * (i - 1) + [1])
            sign = 1 if (i - 1) % 2 == 0 else -1
            contrib = _poly_mul({e_i: Fraction(sign)}, table[mm - i], 10**9)
            acc = _poly_add(acc, contrib)
        table.append(acc)
    return table[m]


@dataclass(frozen=True)
class CharClassPolynomial:
    """Homogeneous weight-k polynomial in p_1..p_k (or c_1..c_k)."""

    weight: int
    variable: str  # "p" or "c"
    terms: Mapping[ExpVector, Fraction]

    def __post_init__(self):
        for e in self.terms:
            if _weight(e) != self.weight:
                raise SeriesError(
                    f"term {e} has weight {_weight(e)}, expected {self.weight}"
                )

    def monomial_str(self, exps: ExpVector) -> str:
        if not exps:
            return "1"
        parts = []
        for i, e in enumerate(exps):
            if e == 1:
                parts.append(f"{self.variable}{i + 1}")
            elif e > 1:
                parts.append(f"{self.variable}{i + 1}^{e}")
        return "*".join(parts) if parts else "1"

    def to_json(self) -> dict[str, str]:
        return {
            self.monomial_str(e): str(c)
            for e, c in sorted(self.terms.items())
        }

    def __eq__(self, other):
        if not isinstance(other, CharClassPolynomial):
            return NotImplemented
        return (
            self.weight == other.weight
            and self.variable == other.variable
            and dict(self.terms) == dict(other.terms)
        )

    def scale(self, s) -> "CharClassPolynomial":
        s = Fraction(s)
        return CharClassPolynomial(
            self.weight, self.variable, {e: c * s for e, c in self.terms.items() if c * s}
        )

    def evaluate(self, classes: Sequence[GradedClass], space: Space) -> GradedClass:
        """Plug graded classes in for the variables (index i -> v_{i+1})."""
        result = space.zero()
        for exps, coeff in self.terms.items():
            term = space.one() * coeff
            for i, e in enumerate(exps):
                if e == 0:
                    continue
                if i >= len(classes):
                    term = space.zero()
                    break
                term = term * (classes[i] ** e)
            result = result + term
        return result


def genus_components(f: FormalSeries, k: int) -> CharClassPolynomial:
    """Weight-k Pontryagin polynomial of the genus generated by f."""
    if f[0] != 1:
        raise GenusError("not a genus")
    if not f.is_even():
        raise GenusError("genus series must be even")
    if k < 0 or k > GENUS_WEIGHT_CAP:
        raise GenusError(f"weight {k} outside [0, {GENUS_WEIGHT_CAP}]")
    if k == 0:
        return CharClassPolynomial(0, "p", {(): Fraction(1)})
    if f.order < 2 * k:
        raise GenusError(f"series order {f.order} too small for weight {k}")
    logf = f.log()
    exponent: dict[ExpVector, Fraction] = {}
    for j in range(1, k + 1):
        c_j = logf[2 * j]
        if c_j == 0:
            continue
        exponent = _poly_add(
            exponent,
            {e: c_j * c for e, c in power_sum_polynomial(j).items()},
        )
    exponent = {e: c for e, c in exponent.items() if _weight(e) <= k}
    total = _poly_exp(exponent, k)
    terms = {e: c for e, c in total.items() if _weight(e) == k}
    return CharClassPolynomial(k, "p", terms)


def chern_character_polynomial(m: int) -> CharClassPolynomial:
    """ch_m = s_m(c_1..c_m) / m! as a weight-m Chern polynomial."""
    if m == 0:
        return CharClassPolynomial(0, "c", {(): Fraction(1)})
    s_m = power_sum_polynomial(m)
    return CharClassPolynomial(
        m, "c", {e: c / math.factorial(m) for e, c in s_m.items()}
    )


# ---------------------------------------------------------------------------
# Bundle data
# ---------------------------------------------------------------------------


@dataclass
class BundleData:
    """Characteristic-class data of a bundle over a model space.

    ``chern_classes[i]`` is c_{i+1} (degree 2i+2); ``pontryagin_classes[i]``
    is p_{i+1} (degree 4i+4).  Classes that are not listed count as zero,
    which matches stably trivial bundles; ``l_class`` flags the padding.
    """

    space: Space
    kind: str  # "complex" | "real-oriented"
    rank: int = 0
    chern_classes: list = field(default_factory=list)
    pontryagin_classes: list = field(default_factory=list)
    signature: Optional[tuple[int, int]] = None
    splitting: Optional[tuple["BundleData", "BundleData"]] = None

    def __post_init__(self):
        if self.kind not in ("complex", "real-oriented"):
            raise SeriesError(f"unknown bundle kind {self.kind!r}")
        for i, c in enumerate(self.chern_classes):
            if not c.is_zero() and c.degree() != 2 * (i + 1):
                raise SeriesError(f"c_{i + 1} must have degree {2 * (i + 1)}")
        for i, p in enumerate(self.pontryagin_classes):
            if not p.is_zero() and p.degree() != 4 * (i + 1):
                raise SeriesError(f"p_{i + 1} must have degree {4 * (i + 1)}")

    @classmethod
    def trivial_real(cls, space: Space, rank: int = 0) -> "BundleData":
        return cls(space=space, kind="real-oriented", rank=rank)

    @classmethod
    def line(cls, space: Space, c1: GradedClass) -> "BundleData":
        return cls(space=space, kind="complex", rank=1, chern_classes=[c1])


def l_class(
    bundle: BundleData,
    max_k: int | None = None,
    series: str = "L-atiyah-singer",
    notes: list | None = None,
) -> GradedClass:
    """Total multiplicative class of the given series on Pontryagin data."""
    if bundle.kind != "real-oriented":
        raise SeriesError("l_class needs real-oriented bundle data")
    space = bundle.space
    if max_k is None:
        max_k = min(space.top_degree // 4, GENUS_WEIGHT_CAP)
    f = expand_series(series, 2 * max_k if max_k else 2)
    result = space.one()
    padded = False
    for k in range(1, max_k + 1):
        poly = genus_components(f, k)
        needed = max((len(e) for e in poly.terms), default=0)
        if needed > len(bundle.pontryagin_classes):
            padded = True
        result = result + poly.evaluate(bundle.pontryagin_classes, space)
    if padded and notes is not None:
        notes.append(
            "missing Pontryagin classes treated as zero (stably trivial convention)"
        )
    return result


def chern_character(bundle: BundleData, max_m: int | None = None) -> GradedClass:
    """rank + sum of ch_m evaluated on the bundle's Chern classes."""
    if bundle.kind != "complex":
        raise SeriesError("chern_character needs complex bundle data")
    space = bundle.space
    if max_m is None:
        max_m = space.top_degree // 2
    result = space.one() * Fraction(bundle.rank)
    for m in range(1, max_m + 1):
        poly = chern_character_polynomial(m)
        result = result + poly.evaluate(bundle.chern_classes, space)
    return result


def super_chern_character(bundle: BundleData, max_m: int | None = None) -> GradedClass:
    """ch(V+) - ch(V-) for split bundle data; degree 0 part is p - q."""
    if bundle.splitting is None:
        raise SeriesError("super_chern_character needs a splitting (V+, V-)")
    plus, minus = bundle.splitting
    return chern_character(plus, max_m) - chern_character(minus, max_m)
