"""Svetlichny operator construction, evaluation, and maximization.

The operator for settings (a, a', b, b', c, c') is

    S = A((B + B')C + (B - B')C') + A'((B - B')C - (B + B')C')

with each factor a Bloch observable v . sigma.  Expectation values are
multilinear in the six unit vectors, which the optimizer and the grid
oracle both exploit through the correlation tensor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import OptimizerOptions
from .correlations import PAULIS, correlation_tensor
from .errors import DomainError, InvalidArityError
from .qstate import DensityMatrix

__all__ = [
    "BlochVector",
    "SvetlichnySettings",
    "BbDecomposition",
    "SvetlichnyMaximum",
    "observable",
    "svetlichny_operator",
    "svetlichny_value",
    "maximize_svetlichny",
    "svetlichny_grid_search",
    "decompose_bb",
    "lagrange_max",
]

@dataclass(frozen=True)
class BlochVector:
    """Measurement direction given by polar and azimuthal angles."""

    theta: float
    phi: float = 0.0

    @property
    def cartesian(self) -> np.ndarray:
        st = math.sin(self.theta)
        return np.array([st * math.cos(self.phi), st * math.sin(self.phi),
                         math.cos(self.theta)])

    @classmethod
    def from_cartesian(cls, v) -> "BlochVector":
        v = np.asarray(v, dtype=float)
        norm = np.linalg.norm(v)
        if abs(norm - 1.0) > 1e-9:
            raise DomainError(f"direction has norm {norm!r}, expected 1")
        v = v / norm
        # atan2 of the transverse radius stays accurate near the poles,
        # where acos(z) would flush small x, y components to zero.
        return cls(math.atan2(math.hypot(v[0], v[1]), v[2]),
                   math.atan2(v[1], v[0]))


X_DIR = BlochVector(math.pi / 2.0, 0.0)
Y_DIR = BlochVector(math.pi / 2.0, math.pi / 2.0)
Z_DIR = BlochVector(0.0, 0.0)


@dataclass(frozen=True)
class SvetlichnySettings:
    """Six measurement directions, two per party."""

    a: BlochVector
    a_p: BlochVector
    b: BlochVector
    b_p: BlochVector
    c: BlochVector
    c_p: BlochVector

    def angles(self) -> np.ndarray:
        out = np.empty(12)
        for k, v in enumerate((self.a, self.a_p, self.b, self.b_p, self.c, self.c_p)):
            out[2 * k] = v.theta
            out[2 * k + 1] = v.phi
        return out

    @classmethod
    def from_angles(cls, x) -> "SvetlichnySettings":
        x = np.asarray(x, dtype=float)
        if x.shape != (12,):
            raise InvalidArityError(f"expected 12 angles, got shape {x.shape}")
        vs = [BlochVector(x[2 * k], x[2 * k + 1]) for k in range(6)]
        return cls(*vs)

    def to_dict(self) -> dict:
        return {
            name: {"theta": v.theta, "phi": v.phi}
            for name, v in zip(("a", "a_p", "b", "b_p", "c", "c_p"),
                               (self.a, self.a_p, self.b, self.b_p, self.c, self.c_p))
        }


@dataclass(frozen=True)
class BbDecomposition:
    """Orthogonal sum/difference frame of a settings pair.

    Satisfies 2*cos(omega)*d = b + b' and 2*sin(omega)*d' = b - b' with
    d . d' = 0; omega lies in [0, pi/2].
    """

    d: BlochVector
    d_p: BlochVector
    omega: float


def observable(v: BlochVector) -> np.ndarray:
    """Traceless Hermitian 2x2 matrix v . sigma with eigenvalues +-1."""
    return np.einsum("i,ijk->jk", v.cartesian, PAULIS)


def _kron3(a: np.ndarray, b: np.ndarray, c: np.ndarray) -> np.ndarray:
    return np.kron(np.kron(a, b), c)


def svetlichny_operator(s: SvetlichnySettings) -> np.ndarray:
    """Hermitian 8x8 Svetlichny operator for the given settings."""
    A, Ap = observable(s.a), observable(s.a_p)
    B, Bp = observable(s.b), observable(s.b_p)
    C, Cp = observable(s.c), observable(s.c_p)
    d = B + Bp
    dp = B - Bp
    return (_kron3(A, d, C) + _kron3(A, dp, Cp)
            + _kron3(Ap, dp, C) - _kron3(Ap, d, Cp))


def svetlichny_value(rho: DensityMatrix, s: SvetlichnySettings) -> float:
    """Expectation Tr(S rho); always within [-4*sqrt(2), 4*sqrt(2)]."""
    if rho.num_qubits != 3:
        raise InvalidArityError(f"need a 3-qubit state, got {rho.num_qubits} qubits")
    val = complex(np.trace(svetlichny_operator(s) @ rho.entries))
    if abs(val.imag) > 1e-10:
        raise DomainError(f"expectation has imaginary residue {val.imag!r}")
    return val.real


def _tensor_value(m: np.ndarray, x: np.ndarray) -> float:
    # Same expectation as svetlichny_value, expressed through the
    # correlation tensor; this is the optimizer's hot path.
    th = x[0::2]
    ph = x[1::2]
    st = np.sin(th)
    v = np.empty((6, 3))
    v[:, 0] = st * np.cos(ph)
    v[:, 1] = st * np.sin(ph)
    v[:, 2] = np.cos(th)
    a, ap, b, bp, c, cp = v
    k1 = m @ c
    k2 = m @ cp
    dp = b + bp
    dm = b - bp
    return float(a @ (k1 @ dp) + a @ (k2 @ dm) + ap @ (k1 @ dm) - ap @ (k2 @ dp))


def _nelder_mead(fn, x0: np.ndarray, max_iter: int, xatol: float,
                 initial_step: float = 0.4):
    """Downhill simplex minimization; returns (x, fx, converged, evals)."""
    n = x0.size
    sim = np.tile(x0, (n + 1, 1))
    for k in range(n):
        sim[k + 1, k] += initial_step
    fx = np.array([fn(p) for p in sim])
    evals = n + 1
    converged = False
    for _ in range(max_iter):
        order = np.argsort(fx)
        sim = sim[order]
        fx = fx[order]
        if np.max(np.abs(sim[1:] - sim[0])) < xatol:
            converged = True
            break
        centroid = sim[:-1].mean(axis=0)
        xr = centroid + (centroid - sim[-1])
        fr = fn(xr)
        evals += 1
        if fr < fx[0]:
            xe = centroid + 2.0 * (centroid - sim[-1])
            fe = fn(xe)
            evals += 1
            if fe < fr:
                sim[-1], fx[-1] = xe, fe
            else:
                sim[-1], fx[-1] = xr, fr
        elif fr < fx[-2]:
            sim[-1], fx[-1] = xr, fr
        else:
            if fr < fx[-1]:
                xc = centroid + 0.5 * (xr - centroid)
            else:
                xc = centroid + 0.5 * (sim[-1] - centroid)
            fc = fn(xc)
            evals += 1
            if fc < min(fr, fx[-1]):
                sim[-1], fx[-1] = xc, fc
            else:
                sim[1:] = sim[0] + 0.5 * (sim[1:] - sim[0])
                fx[1:] = [fn(p) for p in sim[1:]]
                evals += n
    best = int(np.argmin(fx))
    return sim[best], fx[best], converged, evals


@dataclass(frozen=True)
class SvetlichnyMaximum:
    """Result of a settings search: value, argmax, and convergence state."""

    value: float
    settings: SvetlichnySettings
    converged: bool
    evaluations: int
    restarts: int


def maximize_svetlichny(rho: DensityMatrix,
                        opts: OptimizerOptions | None = None) -> SvetlichnyMaximum:
    """Maximize Tr(S rho) over all settings by multi-start simplex search.

    Restart k draws its starting angles from a generator seeded
    deterministically by (opts.seed, k), so enlarging the restart budget
    keeps the earlier starts unchanged.  If the best restart hit the
    iteration cap before its simplex collapsed, the best value found so
    far is still returned with converged set to False.
    """
    if opts is None:
        opts = OptimizerOptions()
    if opts.restarts < 1:
        raise DomainError("need at least one restart")
    if rho.num_qubits != 3:
        raise InvalidArityError(f"need a 3-qubit state, got {rho.num_qubits} qubits")
    m = correlation_tensor(rho).m

    def neg(x: np.ndarray) -> float:
        return -_tensor_value(m, x)

    lo = np.array([0.0, 0.0] * 6)
    hi = np.array([math.pi, 2.0 * math.pi] * 6)
    best_x = None
    best_f = math.inf
    best_conv = False
    total_evals = 0
    for child in np.random.SeedSequence(opts.seed).spawn(opts.restarts):
        rng = np.random.default_rng(child)
        x0 = rng.uniform(lo, hi)
        x, fx, conv, ev = _nelder_mead(neg, x0, opts.max_iter, opts.tol)
        total_evals += ev
        if fx < best_f:
            best_x, best_f, best_conv = x, fx, conv
    settings = SvetlichnySettings.from_angles(best_x)
    value = svetlichny_value(rho, settings)
    return SvetlichnyMaximum(value=value, settings=settings, converged=best_conv,
                             evaluations=total_evals, restarts=opts.restarts)


def _grid_directions(step: float) -> np.ndarray:
    if step <= 0:
        raise DomainError("grid step must be positive")
    thetas = np.arange(0.0, math.pi + 0.5 * step, step)
    phis = np.arange(0.0, 2.0 * math.pi - 0.5 * step, step)
    dirs = [np.array([0.0, 0.0, 1.0]), np.array([0.0, 0.0, -1.0])]
    for th in thetas:
        if th < 1e-12 or th > math.pi - 1e-12:
            continue
        for ph in phis:
            dirs.append(np.array([math.sin(th) * math.cos(ph),
                                  math.sin(th) * math.sin(ph),
                                  math.cos(th)]))
    return np.array(dirs)


def svetlichny_grid_search(rho: DensityMatrix, step: float = math.pi / 8.0,
                           chunk: int = 512) -> float:
    """Grid lower bound on the Svetlichny maximum.

    Enumerates every pair of grid directions for the second and third
    parties and solves the first party's directions exactly (for fixed
    others the expectation is a . u + a' . w, maximized by unit vectors
    along u and w).  The result therefore dominates a full product grid
    over all six directions at the same step, while staying feasible:
    the product grid itself has ~1e13 points at step pi/8.
    """
    if rho.num_qubits != 3:
        raise InvalidArityError(f"need a 3-qubit state, got {rho.num_qubits} qubits")
    m = correlation_tensor(rho).m
    dirs = _grid_directions(step)
    n = len(dirs)
    if n > 4000:
        raise DomainError(f"grid step {step!r} yields {n} directions; too fine")
    # Unordered (b, b') pairs suffice: swapping them negates the difference
    # vector, which maps onto negating c', and the direction grid is closed
    # under negation.
    iu, ju = np.triu_indices(n)
    dp = dirs[iu] + dirs[ju]
    dm = dirs[iu] - dirs[ju]
    best = 0.0
    for start in range(0, dp.shape[0], chunk):
        sl = slice(start, start + chunk)
        # K[p, i, k] = sum_j m[i, j, k] * d[p, j]
        k_plus = np.einsum("ijk,pj->pik", m, dp[sl])
        k_minus = np.einsum("ijk,pj->pik", m, dm[sl])
        # A1[p, q, i]: contribution of c-grid direction q through b + b'.
        a1 = dirs @ k_plus.transpose(0, 2, 1)
        a2 = dirs @ k_minus.transpose(0, 2, 1)
        n1 = np.einsum("pqi,pqi->pq", a1, a1)
        n2 = np.einsum("pqi,pqi->pq", a2, a2)
        cross = a1 @ a2.transpose(0, 2, 1)
        # u(c, c') = A1[c] + A2[c'], w(c, c') = A2[c] - A1[c'].
        u_sq = n1[:, :, None] + 2.0 * cross + n2[:, None, :]
        w_sq = n2[:, :, None] - 2.0 * np.swapaxes(cross, 1, 2) + n1[:, None, :]
        np.maximum(u_sq, 0.0, out=u_sq)
        np.maximum(w_sq, 0.0, out=w_sq)
        np.sqrt(u_sq, out=u_sq)
        np.sqrt(w_sq, out=w_sq)
        u_sq += w_sq
        best = max(best, float(u_sq.max()))
    return best


def _orthogonal_pick(fixed: np.ndarray) -> np.ndarray:
    """Deterministic unit vector orthogonal to the given direction.

    Gram-Schmidt of the x axis against the fixed direction; falls back
    to the y axis when the fixed direction is collinear with x.
    """
    x = np.array([1.0, 0.0, 0.0])
    resid = x - (x @ fixed) * fixed
    norm = np.linalg.norm(resid)
    if norm < 1e-8:
        y = np.array([0.0, 1.0, 0.0])
        resid = y - (y @ fixed) * fixed
        norm = np.linalg.norm(resid)
    return resid / norm


def decompose_bb(b: BlochVector, b_p: BlochVector) -> BbDecomposition:
    """Split a settings pair into orthogonal sum/difference directions.

    Returns (d, d', omega) with b + b' = 2*cos(omega)*d and
    b - b' = 2*sin(omega)*d'.  When b = b' (or b = -b') one direction is
    unconstrained and is chosen deterministically, orthogonal to the
    fixed one.
    """
    bv, bpv = b.cartesian, b_p.cartesian
    s = bv + bpv
    diff = bv - bpv
    ns = float(np.linalg.norm(s))
    nd = float(np.linalg.norm(diff))
    omega = math.atan2(nd / 2.0, ns / 2.0)
    if ns > 1e-12:
        d = s / ns
        if nd > 1e-12:
            # Exactly orthogonal in exact arithmetic; for nearly equal
            # pairs the normalization amplifies rounding, so project the
            # residual out explicitly.
            d_p = diff / nd
            d_p = d_p - (d_p @ d) * d
            d_p = d_p / np.linalg.norm(d_p)
        else:
            d_p = _orthogonal_pick(d)
    else:
        d_p = diff / nd
        d = _orthogonal_pick(d_p)
    return BbDecomposition(BlochVector.from_cartesian(d),
                           BlochVector.from_cartesian(d_p), omega)


def lagrange_max(u, v) -> float:
    """Maximum of sum(u_i x_i) + sum(v_j y_j) over the unit sphere.

    The constraint is sum(x_j^2 + y_j^2) = 1; the maximum is the
    Euclidean norm of the stacked coefficient vector.
    """
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if u.shape != (4,) or v.shape != (4,):
        raise InvalidArityError("coefficient arrays must each have length 4")
    return math.sqrt(float(u @ u + v @ v))
