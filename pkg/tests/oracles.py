"""Independent oracles shared by the test modules.

Everything here is computed by routes the package itself does not use:
Bernoulli recurrences, literal root expansions reduced to the elementary
symmetric basis, and closed-form twisted spectra.
"""

import math
from fractions import Fraction as F
from itertools import combinations

import numpy as np

UNIT = 2.0 * math.pi


def bernoulli_numbers(count):
    """B_0..B_{count-1} via the defining recurrence (B_1 = -1/2)."""
    bs = []
    for m in range(count):
        if m == 0:
            bs.append(F(1))
            continue
        acc = F(0)
        for j in range(m):
            acc += F(math.comb(m + 1, j)) * bs[j]
        bs.append(-acc / (m + 1))
    return bs


def x_over_tanh_oracle(order):
    """x/tanh(x) = sum 4^k B_{2k} x^{2k} / (2k)!."""
    bs = bernoulli_numbers(order + 2)
    coeffs = [F(0)] * (order + 1)
    for k in range(order // 2 + 1):
        coeffs[2 * k] = F(4) ** k * bs[2 * k] / math.factorial(2 * k)
    return coeffs


def poly_mul(a, b, nvars):
    out = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            out[e] = out.get(e, F(0)) + c1 * c2
    return {e: c for e, c in out.items() if c}


def elementary_symmetric(j, nvars):
    out = {}
    for combo in combinations(range(nvars), j):
        e = tuple(1 if i in combo else 0 for i in range(nvars))
        out[e] = F(1)
    return out


def to_elementary_basis(poly, nvars):
    """Symmetric polynomial -> polynomial in e_1..e_nvars by leading terms."""
    es = [None] + [elementary_symmetric(j, nvars) for j in range(1, nvars + 1)]
    result = {}
    work = dict(poly)
    while work:
        lead = max(work)
        coeff = work[lead]
        lam = list(lead) + [0]
        mults = [lam[i] - lam[i + 1] for i in range(nvars)]
        if any(m < 0 for m in mults):
            raise AssertionError("polynomial is not symmetric")
        eterm = {tuple([0] * nvars): F(1)}
        for i, m in enumerate(mults):
            for _ in range(m):
                eterm = poly_mul(eterm, es[i + 1], nvars)
        result[tuple(mults)] = result.get(tuple(mults), F(0)) + coeff
        for e, c in eterm.items():
            acc = work.get(e, F(0)) - coeff * c
            if acc:
                work[e] = acc
            else:
                work.pop(e, None)
    return {e: c for e, c in result.items() if c}


def _trim(exps):
    out = list(exps)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def genus_weight_oracle(series_coeffs, k):
    """Weight-k part of prod f(x_i) over k roots, in e_j(x_i^2) variables."""
    nvars = k
    prod = {tuple([0] * nvars): F(1)}
    for i in range(nvars):
        fi = {}
        for j in range(k + 1):
            c = series_coeffs[2 * j] if 2 * j < len(series_coeffs) else F(0)
            if c:
                fi[tuple(j if t == i else 0 for t in range(nvars))] = c
        prod = poly_mul(prod, fi, nvars)
        prod = {e: c for e, c in prod.items() if sum(e) <= k}
    weight_k = {e: c for e, c in prod.items() if sum(e) == k}
    return {_trim(e): c for e, c in to_elementary_basis(weight_k, nvars).items()}


def power_sum_oracle(m):
    """sum x_i^m over m roots, rewritten in e_1..e_m."""
    nvars = m
    poly = {tuple(m if t == i else 0 for t in range(nvars)): F(1) for i in range(nvars)}
    return {_trim(e): c for e, c in to_elementary_basis(poly, nvars).items()}


def circle_spectrum_oracle(theta, cutoff):
    """Eigenvalues of the twisted circle operator: +-2*pi*|k + theta|."""
    vals = []
    for k in range(-cutoff, cutoff + 1):
        vals.extend([UNIT * abs(k + theta), -UNIT * abs(k + theta)])
    return np.sort(np.array(vals))


def twisted_circle_cohomology_oracle(theta):
    """Total twisted cohomology rank of the circle, character exp(2*pi*i*theta)."""
    return 2 if abs(theta - round(theta)) < 1e-12 else 0
