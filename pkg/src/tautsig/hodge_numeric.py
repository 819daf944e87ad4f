"""Finite Fourier truncation of twisted de Rham operators on flat tori.

A flat bundle on the torus R^n/Z^n with commuting monodromies is presented
through commuting connection matrices A_1..A_n with exp(2*pi*i*A_j) equal
to the j-th monodromy.  In the Fourier basis the operator d + d^* then
decomposes into independent blocks indexed by the frequency lattice: on
the block of frequency k it is

    2*pi * sum_j  ext_j (x) i*(k_j + A_j)        (plus the adjoint),

so truncating to |k_j| <= N restricts to an invariant subspace and the
truncated spectrum is a subset of the exact one.  The scalar 2*pi is kept
as a separate unit factor; block matrices are built from the raw values
k_j + A_j, which keeps the structural anticommutation identities exact in
floating point.

Spectral flow follows the restriction of alpha(e_1) D to the even-parity
subspace, a self-adjoint family with no residual symmetry.  Crossings are
counted through ordered spectra on an adaptively refined grid; zeros at
the endpoints of a loop must be pushed off zero by a reported +- shift.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

import numpy as np
import scipy.linalg

from .clifford import build_exterior, compatible_pair

__all__ = [
    "HodgeError",
    "IndeterminateKernelError",
    "EndpointKernelError",
    "RefinementBudgetError",
    "MonodromyBundle",
    "TruncatedOperator",
    "OperatorFamily",
    "SpectralFlowResult",
    "assemble",
    "kernel_dimension",
    "euler_index",
    "even_signature_index",
    "spectral_flow",
    "spectral_flow_both",
    "kernel_constancy_report",
    "grid_nodes",
    "line_bundle",
    "lusztig_bundle",
    "lusztig_family",
    "constant_family",
    "lusztig_pair_family",
    "bundle_from_descriptor",
    "family_from_descriptor",
    "load_descriptor",
]

UNIT = 2.0 * math.pi
DEFAULT_CUTOFF = 8
DEFAULT_TOL = 1e-8


class HodgeError(ValueError):
    pass


class IndeterminateKernelError(HodgeError):
    pass


class EndpointKernelError(HodgeError):
    pass


class RefinementBudgetError(HodgeError):
    pass


# ---------------------------------------------------------------------------
# Bundles
# ---------------------------------------------------------------------------


def _as_complex_matrix(m) -> np.ndarray:
    arr = np.array(m, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise HodgeError("expected a square matrix")
    return arr


@dataclass
class MonodromyBundle:
    """Flat U(p,q)-bundle on T^n given by commuting eta-preserving monodromies.

    ``connection`` holds the commuting logarithms A_j; if omitted they are
    derived by simultaneous diagonalization (principal branch).
    """

    n: int
    eta: np.ndarray
    monodromies: list
    connection: Optional[list] = None
    p: int = 0
    q: int = 0
    fibrewise_flat: bool = True
    globally_flat: bool = False
    atol: float = 1e-10
    label: str = ""

    def __post_init__(self):
        self.eta = _as_complex_matrix(self.eta)
        self.monodromies = [_as_complex_matrix(m) for m in self.monodromies]
        if len(self.monodromies) != self.n:
            raise HodgeError("one monodromy per circle factor is required")
        r = self.eta.shape[0]
        if not np.allclose(self.eta, self.eta.conj().T, atol=self.atol):
            raise HodgeError("eta must be hermitian")
        eigs = np.linalg.eigvalsh(self.eta)
        if np.min(np.abs(eigs)) < 1e3 * np.finfo(float).eps * max(1.0, np.max(np.abs(eigs))):
            raise HodgeError("eta is singular")
        if not (self.p or self.q):
            self.p = int(np.sum(eigs > 0))
            self.q = int(np.sum(eigs < 0))
        if self.p + self.q != r:
            raise HodgeError("signature does not match the rank of eta")
        for a, m in enumerate(self.monodromies):
            if m.shape != (r, r):
                raise HodgeError("monodromy rank mismatch")
            if not np.allclose(m.conj().T @ self.eta @ m, self.eta, atol=self.atol):
                raise HodgeError(f"monodromy {a + 1} does not preserve eta")
            for b in range(a + 1, self.n):
                other = self.monodromies[b]
                if not np.allclose(m @ other, other @ m, atol=self.atol):
                    raise HodgeError(f"monodromies {a + 1}, {b + 1} do not commute")
        if self.connection is not None:
            self.connection = [_as_complex_matrix(a) for a in self.connection]
            for a_mat, m in zip(self.connection, self.monodromies):
                if not np.allclose(
                    scipy.linalg.expm(2j * math.pi * a_mat), m, atol=1e-8
                ):
                    raise HodgeError("connection does not exponentiate to monodromy")
        else:
            self.connection = self._derive_connection()

    @property
    def rank(self) -> int:
        return self.p + self.q

    def _derive_connection(self) -> list:
        r = self.rank
        if all(np.allclose(m, np.diag(np.diag(m)), atol=self.atol) for m in self.monodromies):
            vecs = np.eye(r, dtype=complex)
        else:
            rng = np.random.default_rng(0)
            combo = sum(c * m for c, m in zip(rng.normal(size=self.n), self.monodromies))
            _, vecs = np.linalg.eig(combo)
            for m in self.monodromies:
                test = np.linalg.solve(vecs, m @ vecs)
                if not np.allclose(test, np.diag(np.diag(test)), atol=1e-8):
                    raise HodgeError(
                        "monodromies are not simultaneously diagonalizable; "
                        "provide connection matrices explicitly"
                    )
        inv = np.linalg.inv(vecs)
        out = []
        for m in self.monodromies:
            diag = np.diag(inv @ m @ vecs)
            logs = np.array([cmath.log(z) / (2j * math.pi) for z in diag])
            out.append(vecs @ np.diag(logs) @ inv)
        return out

    @classmethod
    def from_connection(cls, eta, connection, **kwargs) -> "MonodromyBundle":
        connection = [_as_complex_matrix(a) for a in connection]
        monodromies = [scipy.linalg.expm(2j * math.pi * a) for a in connection]
        return cls(
            n=len(connection),
            eta=eta,
            monodromies=monodromies,
            connection=connection,
            **kwargs,
        )


def line_bundle(thetas: Sequence[float], globally_flat: bool = True,
                label: str = "") -> MonodromyBundle:
    """Positive-definite flat line bundle with monodromies exp(2*pi*i*theta_j)."""
    conns = [np.array([[complex(t)]]) for t in thetas]
    return MonodromyBundle.from_connection(
        np.eye(1), conns, globally_flat=globally_flat,
        label=label or f"line{tuple(float(t) for t in thetas)}",
    )


def lusztig_bundle(t) -> MonodromyBundle:
    """Fiber of the monodromy-z line family on the circle at parameter t."""
    return line_bundle([float(t)], globally_flat=False, label=f"lusztig(t={t})")


# ---------------------------------------------------------------------------
# Truncated operators
# ---------------------------------------------------------------------------


def _frequency_lattice(n: int, cutoff: int) -> np.ndarray:
    axes = [np.arange(-cutoff, cutoff + 1)] * n
    grids = np.meshgrid(*axes, indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=-1)


def _pick_pair(eta: np.ndarray, atol: float) -> tuple[np.ndarray, np.ndarray]:
    r = eta.shape[0]
    if np.allclose(eta, np.eye(r), atol=atol):
        return np.eye(r, dtype=complex), np.eye(r, dtype=complex)
    diag = np.diag(eta)
    if np.allclose(eta, np.diag(diag), atol=atol) and np.allclose(
        np.abs(diag), 1.0, atol=atol
    ):
        return np.eye(r, dtype=complex), np.diag(diag).astype(complex)
    pair = compatible_pair(eta)
    return pair.h, pair.sigma


@dataclass
class TruncatedOperator:
    """Blockwise Fourier truncation of D = d + d^* with its gradings."""

    bundle: MonodromyBundle
    cutoff: int
    freqs: np.ndarray          # (B, n) integer lattice points
    blocks: np.ndarray         # (B, d, d) stacked D in lattice units
    iota: np.ndarray           # (d,) +-1 parity vector
    tau_v: np.ndarray          # (d, d)
    metric: np.ndarray         # (d, d) positive inner product G
    h: np.ndarray              # (r, r) coefficient metric
    form_dim: int
    _eig: Optional[tuple] = field(default=None, repr=False)

    @property
    def block_count(self) -> int:
        return self.blocks.shape[0]

    @property
    def dim(self) -> int:
        return self.blocks.shape[0] * self.blocks.shape[1]

    def _metric_is_standard(self) -> bool:
        return np.allclose(self.metric, np.eye(self.metric.shape[0]), atol=1e-12)

    def eigen_system(self) -> tuple[np.ndarray, np.ndarray]:
        """Per-block eigenvalues (B, d) in physical units and eigenvectors."""
        if self._eig is None:
            if self._metric_is_standard():
                vals, vecs = np.linalg.eigh(self.blocks)
            else:
                vals_list, vecs_list = [], []
                for blk in self.blocks:
                    v, w = scipy.linalg.eigh(self.metric @ blk, self.metric)
                    vals_list.append(v)
                    vecs_list.append(w)
                vals, vecs = np.array(vals_list), np.array(vecs_list)
            self._eig = (vals * UNIT, vecs)
        return self._eig

    def eigenvalues(self) -> np.ndarray:
        vals, _ = self.eigen_system()
        return np.sort(vals.ravel())

    def check_contracts(self, atol: float = 0.0) -> dict:
        """Structural identities; these hold to exact floating zero."""
        d = self.blocks
        iota = self.iota
        adj = np.conj(np.swapaxes(d, 1, 2))
        if self._metric_is_standard():
            selfadj = float(np.max(np.abs(d - adj)))
        else:
            g = self.metric
            selfadj = float(np.max(np.abs(g @ d - np.conj(np.swapaxes(g @ d, 1, 2)))))
        graded = float(np.max(np.abs(d * iota[None, None, :] + d * iota[None, :, None])))
        report = {"selfadjoint": selfadj, "iota_anticommute": graded}
        if self.bundle.n % 2 == 1:
            t = self.tau_v
            report["tau_commute"] = float(np.max(np.abs(d @ t - t @ d)))
        else:
            t = self.tau_v
            report["tau_anticommute"] = float(np.max(np.abs(d @ t + t @ d)))
        for key, value in report.items():
            if value > atol:
                raise HodgeError(f"contract {key} violated: residual {value}")
        return report

    def restricted_odd_stack(self) -> np.ndarray:
        """(alpha_1 D) restricted to the even-parity subspace, per block."""
        if self.bundle.n % 2 == 0:
            raise HodgeError("the odd restriction needs an odd-dimensional torus")
        alpha1 = np.diag(self.iota).astype(complex) @ self.tau_v
        even = np.where(self.iota > 0)[0]
        stack = alpha1[None, :, :] @ self.blocks
        restricted = stack[:, even][:, :, even]
        herm = np.max(np.abs(restricted - np.conj(np.swapaxes(restricted, 1, 2))))
        if herm > 1e-10:
            raise HodgeError(f"restricted operator is not self-adjoint ({herm})")
        return restricted

    def ellipticity_profile(self) -> dict[int, float]:
        """Smallest |eigenvalue| per sup-norm frequency shell (physical units)."""
        vals, _ = self.eigen_system()
        shells = np.max(np.abs(self.freqs), axis=1)
        out: dict[int, float] = {}
        for s in range(self.cutoff + 1):
            mask = shells == s
            if mask.any():
                out[s] = float(np.min(np.abs(vals[mask])))
        return out


def assemble(bundle: MonodromyBundle, cutoff: int = DEFAULT_CUTOFF) -> TruncatedOperator:
    """Build the truncated twisted operator; blocks are exact in lattice units."""
    if cutoff < 1:
        raise HodgeError("cutoff must be >= 1")
    n, r = bundle.n, bundle.rank
    from .clifford import _ext_matrix

    _, hodge = build_exterior(n)
    ext_np = [_ext_matrix(n, j).to_numpy() for j in range(n)]
    iota_vec = np.array(
        [1.0 if bin(s).count("1") % 2 == 0 else -1.0 for s in range(1 << n)]
    )
    tau_np = hodge.tau.to_numpy()
    h, sigma = _pick_pair(bundle.eta, bundle.atol)
    metric = np.kron(np.eye(1 << n, dtype=complex), h)
    tau_v = np.kron(tau_np, sigma)
    iota_full = np.repeat(iota_vec, r)

    freqs = _frequency_lattice(n, cutoff)
    d_const = sum(
        np.kron(e, 1j * a) for e, a in zip(ext_np, bundle.connection)
    )
    d_lattice = np.stack([np.kron(e, 1j * np.eye(r, dtype=complex)) for e in ext_np])
    k = freqs.astype(float)
    d_stack = d_const[None, :, :] + np.einsum("bj,jkl->bkl", k, d_lattice)
    if np.allclose(metric, np.eye(metric.shape[0]), atol=1e-14):
        adj = np.conj(np.swapaxes(d_stack, 1, 2))
    else:
        ginv = np.linalg.inv(metric)
        adj = ginv[None] @ np.conj(np.swapaxes(d_stack, 1, 2)) @ metric[None]
    blocks = d_stack + adj
    return TruncatedOperator(
        bundle=bundle,
        cutoff=cutoff,
        freqs=freqs,
        blocks=blocks,
        iota=iota_full,
        tau_v=tau_v,
        metric=metric,
        h=h,
        form_dim=1 << n,
    )


# ---------------------------------------------------------------------------
# Kernel and index quantities
# ---------------------------------------------------------------------------


def _kernel_guard(values: np.ndarray, tol: float) -> None:
    nonzero = np.abs(values)[np.abs(values) >= tol]
    if nonzero.size and np.min(nonzero) < 10 * tol:
        raise IndeterminateKernelError(
            f"indeterminate: smallest nonzero eigenvalue {np.min(nonzero):.3e} "
            f"is within a factor 10 of tol {tol:.3e}"
        )


def kernel_dimension(op: TruncatedOperator, tol: float = DEFAULT_TOL) -> int:
    """Number of eigenvalues below tol in absolute value (physical units)."""
    vals = op.eigenvalues()
    _kernel_guard(vals, tol)
    return int(np.sum(np.abs(vals) < tol))


def _kernel_vectors(op: TruncatedOperator, tol: float):
    vals, vecs = op.eigen_system()
    _kernel_guard(vals.ravel(), tol)
    hits = []
    for b in range(op.block_count):
        for j in np.where(np.abs(vals[b]) < tol)[0]:
            hits.append((b, vecs[b][:, j]))
    return hits


def euler_index(op: TruncatedOperator, tol: float = DEFAULT_TOL) -> int:
    """Graded kernel count with respect to the parity grading iota."""
    total = 0.0
    for _, vec in _kernel_vectors(op, tol):
        weighted = op.metric @ (op.iota * vec)
        total += float(np.real(np.vdot(vec, weighted) / np.vdot(vec, op.metric @ vec)))
    rounded = round(total)
    if abs(total - rounded) > 1e-6:
        raise IndeterminateKernelError(f"graded count {total} is not near an integer")
    return int(rounded)


def even_signature_index(op: TruncatedOperator, tol: float = DEFAULT_TOL) -> int:
    """Signature of the pairing <x, tau_V y> on the numerical kernel."""
    if op.bundle.n % 2 != 0:
        raise HodgeError("even signature needs an even-dimensional torus")
    hits = _kernel_vectors(op, tol)
    if not hits:
        return 0
    signature = 0
    blocks = sorted(set(b for b, _ in hits))
    for b in blocks:
        vecs = [v for bb, v in hits if bb == b]
        m = len(vecs)
        form = np.zeros((m, m), dtype=complex)
        for i in range(m):
            for j in range(m):
                form[i, j] = np.vdot(vecs[i], op.metric @ (op.tau_v @ vecs[j]))
        if np.max(np.abs(form - form.conj().T)) > 1e-9:
            raise HodgeError("kernel pairing is not hermitian")
        eigs = np.linalg.eigvalsh(form)
        scale = max(1.0, float(np.max(np.abs(eigs))))
        if np.any(np.abs(eigs) < 1e-9 * scale):
            raise IndeterminateKernelError("kernel pairing is numerically degenerate")
        signature += int(np.sum(eigs > 0)) - int(np.sum(eigs < 0))
    return signature


# ---------------------------------------------------------------------------
# Families and spectral flow
# ---------------------------------------------------------------------------


def grid_nodes(resolution: int) -> list[Fraction]:
    return [Fraction(i, resolution) for i in range(resolution + 1)]


@dataclass
class OperatorFamily:
    """One-parameter family t in [0,1] of monodromy bundles."""

    generator: Callable[[Fraction], MonodromyBundle]
    grid: list
    loop: bool = False
    cutoff: int = DEFAULT_CUTOFF
    label: str = ""

    def bundle(self, t) -> MonodromyBundle:
        return self.generator(Fraction(t))

    def operator(self, t) -> TruncatedOperator:
        return assemble(self.bundle(t), self.cutoff)

    def verify_loop(self, atol: float = 1e-8) -> None:
        """Exhibit a conjugating map between the endpoint bundles.

        Equal monodromies conjugate by the identity; otherwise a joint
        eigenbasis match produces an explicit intertwiner, which must also
        preserve the hermitian form.
        """
        b0, b1 = self.bundle(0), self.bundle(1)
        if all(
            np.allclose(m0, m1, atol=atol)
            for m0, m1 in zip(b0.monodromies, b1.monodromies)
        ):
            return
        conjugator = _match_joint_eigensystem(b0, b1, atol)
        if conjugator is None:
            raise HodgeError("family endpoints are not conjugate: not a loop")
        if not np.allclose(
            conjugator.conj().T @ b1.eta @ conjugator, b0.eta, atol=1e-6
        ):
            raise HodgeError("endpoint conjugator does not preserve eta")


def _match_joint_eigensystem(b0: MonodromyBundle, b1: MonodromyBundle,
                             atol: float):
    """Invertible map U with U M_j(0) U^{-1} = M_j(1), or None."""
    if b0.rank != b1.rank:
        return None

    def joint_basis(bundle):
        vecs = np.eye(bundle.rank, dtype=complex)
        if not all(
            np.allclose(m, np.diag(np.diag(m)), atol=atol) for m in bundle.monodromies
        ):
            rng = np.random.default_rng(1)
            combo = sum(
                c * m for c, m in zip(rng.normal(size=bundle.n), bundle.monodromies)
            )
            _, vecs = np.linalg.eig(combo)
        inv = np.linalg.inv(vecs)
        tuples = [
            tuple(np.round(np.diag(inv @ m @ vecs), 8)) for m in bundle.monodromies
        ]
        return vecs, list(zip(*tuples))

    v0, t0 = joint_basis(b0)
    v1, t1 = joint_basis(b1)
    used = set()
    perm = []
    for tup in t0:
        hit = next(
            (
                j
                for j, other in enumerate(t1)
                if j not in used
                and np.allclose(np.array(tup), np.array(other), atol=1e-6)
            ),
            None,
        )
        if hit is None:
            return None
        used.add(hit)
        perm.append(hit)
    p_mat = np.zeros((b0.rank, b0.rank), dtype=complex)
    for i, j in enumerate(perm):
        p_mat[j, i] = 1.0
    conjugator = v1 @ p_mat @ np.linalg.inv(v0)
    for m0, m1 in zip(b0.monodromies, b1.monodromies):
        if not np.allclose(conjugator @ m0, m1 @ conjugator, atol=1e-6):
            return None
    return conjugator


def lusztig_family(cutoff: int = DEFAULT_CUTOFF, resolution: int = 64,
                   speed: int = 1) -> OperatorFamily:
    """The monodromy-z line family on the circle, traversed ``speed`` times."""

    def gen(t: Fraction) -> MonodromyBundle:
        return lusztig_bundle(float(t) * speed)

    return OperatorFamily(
        generator=gen,
        grid=grid_nodes(resolution),
        loop=True,
        cutoff=cutoff,
        label=f"lusztig-x{speed}" if speed != 1 else "lusztig",
    )


def constant_family(bundle: MonodromyBundle, cutoff: int = DEFAULT_CUTOFF,
                    resolution: int = 64) -> OperatorFamily:
    if not bundle.globally_flat:
        raise HodgeError("constant families model globally flat bundles")
    return OperatorFamily(
        generator=lambda t: bundle,
        grid=grid_nodes(resolution),
        loop=True,
        cutoff=cutoff,
        label=f"constant({bundle.label})",
    )


def lusztig_pair_family(cutoff: int = DEFAULT_CUTOFF,
                        resolution: int = 64) -> OperatorFamily:
    """Rank-2 direct sum of the line family with its conjugate-inverse twist."""

    def gen(t: Fraction) -> MonodromyBundle:
        tf = float(t)
        conn = [np.diag([tf, -tf]).astype(complex)]
        return MonodromyBundle.from_connection(
            np.eye(2), conn, globally_flat=False, label=f"lusztig-pair(t={t})"
        )

    return OperatorFamily(
        generator=gen,
        grid=grid_nodes(resolution),
        loop=True,
        cutoff=cutoff,
        label="lusztig-pair",
    )


@dataclass
class SpectralFlowResult:
    flow_plus: int
    flow_minus: int
    nodes_used: int
    refinements: int

    @property
    def magnitude(self) -> int:
        if abs(self.flow_plus) != abs(self.flow_minus):
            raise HodgeError(
                "endpoint shift changes |flow|; report both values separately"
            )
        return abs(self.flow_plus)


def _family_spectra(family: OperatorFamily):
    cache: dict[Fraction, np.ndarray] = {}

    def spectra(t: Fraction) -> np.ndarray:
        if t not in cache:
            op = family.operator(t)
            stack = op.restricted_odd_stack()
            cache[t] = np.sort(np.linalg.eigvalsh(stack).ravel()) * UNIT
        return cache[t]

    return spectra


def _distinct_gap(values: np.ndarray, cluster: float) -> float:
    diffs = np.diff(values)
    real = diffs[diffs > cluster]
    return float(np.min(real)) if real.size else math.inf


def spectral_flow(
    family: OperatorFamily,
    tol: float = DEFAULT_TOL,
    endpoint_shift: Optional[int] = None,
    max_nodes: int = 4096,
    _counters: Optional[dict] = None,
) -> int:
    """Net signed zero crossings of the restricted odd family over [0,1].

    A positive-slope crossing counts +1.  If an endpoint eigenvalue sits
    within tol of zero, the whole family must be shifted off zero by
    ``endpoint_shift`` (+1 or -1) times 10*tol; with no shift requested
    this raises :class:`EndpointKernelError`.
    """
    if not family.loop:
        raise HodgeError("spectral flow is defined for loop families")
    family.verify_loop()
    spectra = _family_spectra(family)
    shift = 0.0
    ends = [spectra(Fraction(0)), spectra(Fraction(1))]
    if any(np.min(np.abs(e)) < tol for e in ends):
        if endpoint_shift is None:
            raise EndpointKernelError(
                "perturb endpoints: zero eigenvalue at t in {0, 1}"
            )
        shift = float(endpoint_shift) * 10.0 * tol
    for e in ends:
        if np.min(np.abs(e + shift)) < tol:
            raise EndpointKernelError("endpoint shift failed to clear the kernel")

    nodes = [Fraction(t) for t in family.grid]
    if nodes[0] != 0 or nodes[-1] != 1:
        raise HodgeError("family grid must span [0, 1]")
    refinements = 0
    flow = 0
    i = 0
    while i < len(nodes) - 1:
        a, b = nodes[i], nodes[i + 1]
        va, vb = spectra(a) + shift, spectra(b) + shift
        move = float(np.max(np.abs(va - vb)))
        gap = min(_distinct_gap(va, tol), _distinct_gap(vb, tol))
        if move > gap / 2 and len(nodes) < max_nodes:
            nodes.insert(i + 1, (a + b) / 2)
            refinements += 1
            continue
        if move > gap / 2:
            raise RefinementBudgetError(
                f"refinement budget exhausted between t={a} and t={b}"
            )
        flow += int(np.sum(vb > 0)) - int(np.sum(va > 0))
        i += 1
    if _counters is not None:
        _counters["nodes"] = len(nodes)
        _counters["refinements"] = refinements
    return flow


def spectral_flow_both(
    family: OperatorFamily, tol: float = DEFAULT_TOL, max_nodes: int = 4096
) -> SpectralFlowResult:
    """Flow with both endpoint shifts; equal magnitudes are the robust output."""
    counters: dict = {}
    try:
        plus = spectral_flow(family, tol, endpoint_shift=None, max_nodes=max_nodes,
                             _counters=counters)
        minus = plus
    except EndpointKernelError:
        plus = spectral_flow(family, tol, endpoint_shift=+1, max_nodes=max_nodes,
                             _counters=counters)
        minus = spectral_flow(family, tol, endpoint_shift=-1, max_nodes=max_nodes)
    return SpectralFlowResult(
        flow_plus=plus,
        flow_minus=minus,
        nodes_used=counters.get("nodes", len(family.grid)),
        refinements=counters.get("refinements", 0),
    )


def kernel_constancy_report(
    family: OperatorFamily,
    grid: Optional[Sequence] = None,
    tol: float = DEFAULT_TOL,
) -> dict:
    """Kernel dimension along the grid; constancy forces zero flow."""
    nodes = [Fraction(t) for t in (grid if grid is not None else family.grid)]
    profile: list = []
    flagged: list = []
    for t in nodes:
        op = family.operator(t)
        try:
            profile.append(kernel_dimension(op, tol))
        except IndeterminateKernelError:
            profile.append(None)
            flagged.append(str(t))
    known = [d for d in profile if d is not None]
    constant = bool(known) and all(d == known[0] for d in known) and not flagged
    report = {
        "label": family.label,
        "grid": [str(t) for t in nodes],
        "profile": profile,
        "constant": constant,
        "indeterminate_points": flagged,
    }
    if constant and family.loop:
        result = spectral_flow_both(family, tol)
        report["flow_plus"] = result.flow_plus
        report["flow_minus"] = result.flow_minus
        if result.flow_plus != 0 or result.flow_minus != 0:
            raise HodgeError(
                "constant kernel profile with nonzero spectral flow: "
                f"{result.flow_plus}/{result.flow_minus}"
            )
    return report


# ---------------------------------------------------------------------------
# Descriptors
# ---------------------------------------------------------------------------

_EVAL_NAMESPACE = {
    "exp": cmath.exp,
    "cos": cmath.cos,
    "sin": cmath.sin,
    "sqrt": cmath.sqrt,
    "pi": math.pi,
    "i": 1j,
    "j": 1j,
}


def _eval_entry(entry, t: Optional[float] = None) -> complex:
    if isinstance(entry, (int, float)):
        return complex(entry)
    if isinstance(entry, (list, tuple)) and len(entry) == 2:
        return complex(entry[0], entry[1])
    if isinstance(entry, str):
        namespace = dict(_EVAL_NAMESPACE)
        if t is not None:
            namespace["t"] = t
        try:
            return complex(eval(entry, {"__builtins__": {}}, namespace))
        except Exception as exc:
            raise HodgeError(f"cannot evaluate entry {entry!r}: {exc}") from exc
    raise HodgeError(f"unsupported matrix entry {entry!r}")


def _eval_matrix(rows, t: Optional[float] = None) -> np.ndarray:
    return np.array([[_eval_entry(e, t) for e in row] for row in rows], dtype=complex)


def bundle_from_descriptor(data: dict) -> MonodromyBundle:
    try:
        n = int(data["n"])
        eta = _eval_matrix(data["eta"])
        monodromies = [_eval_matrix(m) for m in data["monodromies"]]
    except KeyError as exc:
        raise HodgeError(f"descriptor missing field {exc}") from exc
    connection = None
    if "connection" in data:
        connection = [_eval_matrix(m) for m in data["connection"]]
    return MonodromyBundle(
        n=n,
        eta=eta,
        monodromies=monodromies,
        connection=connection,
        p=int(data.get("p", 0)),
        q=int(data.get("q", 0)),
        fibrewise_flat=bool(data.get("fibrewise_flat", True)),
        globally_flat=bool(data.get("globally_flat", False)),
        label=str(data.get("label", "descriptor")),
    )


def family_from_descriptor(data: dict, cutoff: int = DEFAULT_CUTOFF,
                           resolution: int = 64) -> OperatorFamily:
    """Family whose entries are expressions in the parameter t.

    Families may present either ``connection`` entries (preferred; no
    branch ambiguity) or diagonal ``monodromies``.
    """
    fam = data.get("family")
    if not fam:
        raise HodgeError("descriptor has no family section")
    eta = _eval_matrix(data["eta"])
    flags = {
        "fibrewise_flat": bool(data.get("fibrewise_flat", True)),
        "globally_flat": bool(data.get("globally_flat", False)),
    }

    if "connection" in fam:
        rows = fam["connection"]

        def gen(t: Fraction) -> MonodromyBundle:
            conn = [_eval_matrix(m, float(t)) for m in rows]
            return MonodromyBundle.from_connection(eta, conn, **flags)

    elif "monodromies" in fam:
        rows = fam["monodromies"]

        def gen(t: Fraction) -> MonodromyBundle:
            mons = [_eval_matrix(m, float(t)) for m in rows]
            for m in mons:
                if not np.allclose(m, np.diag(np.diag(m)), atol=1e-12):
                    raise HodgeError(
                        "family monodromies must be diagonal; provide a "
                        "connection section for the general case"
                    )
            return MonodromyBundle(n=len(mons), eta=eta, monodromies=mons, **flags)

    else:
        raise HodgeError("family section needs connection or monodromies entries")

    return OperatorFamily(
        generator=gen,
        grid=grid_nodes(int(fam.get("grid", resolution))),
        loop=bool(fam.get("loop", False)),
        cutoff=cutoff,
        label=str(data.get("label", "descriptor-family")),
    )


def load_descriptor(path) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)
