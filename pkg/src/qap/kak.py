"""Recursive type-AI Cartan (KAK) factorization of special-unitary matrices.

The first level writes ``U = K1 exp(ia) K2`` with ``a`` in the center and the
K-parts in the group of the selected subalgebra ``t``.  A diagonal phase
frame ``D = diag(i^f(k))`` turns ``t`` into ``so(N)``, so the level reduces
to diagonalizing the symmetric unitary ``U'^T U'`` by a real orthogonal
matrix.  Deeper levels split each real orthogonal K-part again with real
cosine-sine decompositions, in a frame adapted to the Pauli operator that
implements the level's involution.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from scipy.linalg import cossin, expm, schur

from . import spinor
from .cartan import CartanSelection, CartanSplit, make_split, resolve_selection, unit_labels
from .partition import QuotientAlgebra, diagonalizer
from .spinor import BitString, Spinor, commutes

UNITARY_TOL = 1e-10
LEVEL_TOL = 1e-8
FULL_TOL = 1e-7
CLUSTER_GAP = 1e-8


class NotUnitaryError(ValueError):
    pass


class SequenceError(ValueError):
    pass


class ClusteringError(ArithmeticError):
    def __init__(self, achieved: float):
        self.achieved = achieved
        super().__init__(f"eigenphase clustering left a residual of {achieved:.3e}")


def check_unitary(U: np.ndarray, tol: float = UNITARY_TOL) -> np.ndarray:
    U = np.asarray(U, dtype=complex)
    if U.ndim != 2 or U.shape[0] != U.shape[1]:
        raise NotUnitaryError("matrix must be square")
    err = np.linalg.norm(U.conj().T @ U - np.eye(U.shape[0]))
    if err > tol * max(1, U.shape[0]):
        raise NotUnitaryError(f"matrix is not unitary (|U^dag U - I| = {err:.3e})")
    return U


def project_su(U: np.ndarray) -> np.ndarray:
    """Divide by the principal N-th root of the determinant."""
    U = check_unitary(U)
    d = np.linalg.det(U)
    return U / np.exp(1j * np.angle(d) / U.shape[0])


def frame_phases(sel: CartanSelection, dim: int) -> np.ndarray:
    """Diagonal of ``D``: ``i^f(k)`` where ``f`` is the linear form of the selection."""
    p = sel.q.p
    c = 0
    for e in unit_labels(p):
        if sel.f(e):
            c |= e.value
    return np.array([1j ** ((k & c).bit_count() & 1) for k in range(dim)])


def _symmetric_unitary_eig(M: np.ndarray, gap: float = CLUSTER_GAP):
    """Real orthogonal ``O`` and phases ``phi`` with ``O M O^T = diag(exp(i phi))``.

    Eigenphases closer than ``gap`` are clustered; every cluster spans a
    conjugation-invariant subspace that carries a real orthonormal basis.
    """
    T, Z = schur(M, output="complex")
    ang = np.angle(np.diag(T))
    order = np.argsort(ang)
    clusters = [[order[0]]]
    for a, b in zip(order[:-1], order[1:]):
        if ang[b] - ang[a] > gap:
            clusters.append([b])
        else:
            clusters[-1].append(b)
    if len(clusters) > 1 and ang[order[0]] + 2 * np.pi - ang[order[-1]] <= gap:
        clusters[0] = clusters.pop() + clusters[0]
    cols = []
    for idx in clusters:
        V = Z[:, idx]
        R = np.hstack([V.real, V.imag])
        u, s, _ = np.linalg.svd(R)
        cols.append(u[:, :len(idx)])
    Q = np.hstack(cols)
    u, _, vt = np.linalg.svd(Q)
    Q = u @ vt
    out_cols, phis = [], []
    start = 0
    for idx in clusters:
        m = len(idx)
        B = Q[:, start:start + m]
        start += m
        Mb = B.T @ M @ B
        mean = np.angle(np.trace(Mb)) if abs(np.trace(Mb)) > 1e-12 else np.angle(Mb[0, 0])
        rot = np.exp(-1j * mean) * Mb
        H = (rot.imag + rot.imag.T) / 2 + 1e-3 * (rot.real + rot.real.T) / 2
        _, vec = np.linalg.eigh(H)
        Bv = B @ vec
        out_cols.append(Bv)
        phis.extend(np.angle(np.einsum("ij,ik,kj->j", Bv, M, Bv)))
    O = np.hstack(out_cols).T
    return O, np.array(phis)


@dataclass
class KAKResult:
    k1: np.ndarray
    a: np.ndarray
    k2: np.ndarray
    residual: float

    def __iter__(self):
        return iter((self.k1, self.a, self.k2))


def _ai_frame(Up: np.ndarray):
    """Real orthogonal factorization ``Up = K1 diag(exp(i theta)) K2`` of a frame-rotated matrix."""
    M = Up.T @ Up
    O, phi = _symmetric_unitary_eig(M)
    off = np.linalg.norm(O @ M @ O.T - np.diag(np.exp(1j * phi)))
    if off > LEVEL_TOL * 10:
        raise ClusteringError(off)
    if np.linalg.det(O) < 0:
        O[0] = -O[0]
    theta = phi / 2
    K1 = Up @ O.T @ np.diag(np.exp(-1j * theta))
    if np.linalg.det(K1).real < 0:
        theta[0] += np.pi
        K1 = Up @ O.T @ np.diag(np.exp(-1j * theta))
    # make the abelian element traceless
    shift = np.round(theta.sum() / (2 * np.pi))
    theta[0] -= 2 * np.pi * shift
    return K1, theta, O


def kak_ai(U: np.ndarray, split: CartanSplit) -> KAKResult:
    """``U = K1 exp(ia) K2`` with ``K1, K2`` in ``exp(t)`` and diagonal ``a`` in the center."""
    q = split.q
    if not q.intrinsic:
        raise ValueError("kak_ai needs a split of an intrinsic partition")
    U = project_su(U)
    n = U.shape[0]
    if n != q.dim:
        raise ValueError(f"matrix dimension {n} does not match su({q.dim})")
    d = frame_phases(split.selection, n)
    Up = d.conj()[:, None] * U * d[None, :]
    K1p, theta, O = _ai_frame(Up)
    K1 = d[:, None] * K1p * d.conj()[None, :]
    K2 = d[:, None] * O * d.conj()[None, :]
    a = np.diag(theta)
    residual = float(np.linalg.norm(K1 @ np.diag(np.exp(1j * theta)) @ K2 - U))
    if residual > LEVEL_TOL:
        raise ClusteringError(residual)
    return KAKResult(K1, a, K2, residual)


def cartan_involution(split: CartanSplit, K: np.ndarray) -> np.ndarray:
    """Group involution whose fixed points are ``exp(t)``: ``S conj(K) S``."""
    d = frame_phases(split.selection, K.shape[0])
    s = (d * d).real
    return s[:, None] * K.conj() * s[None, :]


# decomposition sequences ------------------------------------------------------


@dataclass(frozen=True)
class TauIndex:
    string: BitString
    level: int
    position: int

    def __str__(self):
        return str(self.string)


def tau_order(p: int) -> list[TauIndex]:
    """All ``(p+1)``-digit strings in ascending order (in-order tree traversal)."""
    if p < 1:
        raise ValueError("p must be positive")
    out = []
    counters: dict = {}
    for v in range(1, 1 << (p + 1)):
        low = (v & -v).bit_length()  # digit of the first 1 from the right
        level = p + 1 - low
        counters[level] = counters.get(level, 0) + 1
        out.append(TauIndex(BitString(v, p + 1), level, counters[level]))
    return out


@dataclass
class DecompositionSequence:
    """Nested type-AI splits of an intrinsic spinor partition.

    ``subalgebras[l]`` is the abelian subalgebra used at tree level ``l``:
    the center at level 0, ``A_[l+1]`` below it and the final abelian
    ``t_[p]`` at level ``p``.  ``algebras[l]`` lists the spinors of ``t_[l]``.
    """

    q: QuotientAlgebra
    selection: CartanSelection
    order: list  # unit labels in peeling order
    subalgebras: list = field(default_factory=list)
    algebras: list = field(default_factory=list)

    @property
    def p(self) -> int:
        return self.q.p


def canonical_sequence(q: QuotientAlgebra, selection: Optional[CartanSelection] = None,
                       order: Optional[Sequence[BitString]] = None) -> DecompositionSequence:
    """Default sequence: all-hat selection (``so(N)``), peeling label bits left to right."""
    if not q.intrinsic or not all(isinstance(g.leading(), Spinor) for g in q.center.basis):
        raise SequenceError("recursive factorization needs an intrinsic spinor partition")
    p = q.p
    if selection is None:
        selection = resolve_selection(q, [(e, True) for e in unit_labels(p)])
    order = list(order) if order is not None else unit_labels(p)
    if sorted(z.value for z in order) != sorted(e.value for e in unit_labels(p)):
        raise SequenceError("order must be a permutation of the single-bit labels")
    chosen = {z: q.subspace(z, selection.hat[z]).atoms() for z in q.labels()}
    seq = DecompositionSequence(q, selection, order)
    seq.subalgebras.append(q.center.atoms())
    seq.algebras.append([s for z in q.labels() for s in chosen[z]])
    peeled = 0
    for e in order[:-1]:
        peeled |= e.value
        seq.subalgebras.append(chosen[e])
        seq.algebras.append([s for z in q.labels() if not z.value & peeled for s in chosen[z]])
    seq.subalgebras.append(seq.algebras[-1])
    validate_sequence(seq)
    return seq


def validate_sequence(seq: DecompositionSequence) -> None:
    """Each ``A_[l]`` is abelian, lies in ``t_[l-1]`` and is maximal abelian in ``p_[l]``."""
    p = seq.p
    if len(seq.subalgebras) != p + 1 or len(seq.algebras) != p:
        raise SequenceError("sequence needs p+1 subalgebras and p nested algebras")
    for l in range(1, p + 1):
        A = seq.subalgebras[l]
        for i, a in enumerate(A):
            for b in A[i + 1:]:
                if not commutes(a, b):
                    raise SequenceError(f"level {l} subalgebra is not abelian")
        parent = set(seq.algebras[l - 1])
        if not set(A) <= parent:
            raise SequenceError(f"level {l} subalgebra leaves t_[{l - 1}]")
        if l == p:
            if set(A) != parent:
                raise SequenceError("final subalgebra must equal t_[p]")
            continue
        rest = parent - set(seq.algebras[l]) - set(A)
        for h in rest:
            if all(commutes(h, a) for a in A):
                raise SequenceError(f"level {l} subalgebra is not maximal abelian ({h.pauli()} commutes)")


# recursive factorization ------------------------------------------------------------


@dataclass
class Factor:
    tau: TauIndex
    terms: list  # (Spinor, omega)
    matrix: np.ndarray

    def element(self) -> np.ndarray:
        n = self.matrix.shape[0]
        return sum((w * spinor.to_matrix(s) for s, w in self.terms), np.zeros((n, n), complex))


@dataclass
class FactorTree:
    factors: list
    reconstruction_error: float
    dim: int

    def product(self) -> np.ndarray:
        out = np.eye(self.factors[0].matrix.shape[0], dtype=complex)
        for f in self.factors:
            out = out @ f.matrix
        return out


class _Engine:
    def __init__(self, seq: DecompositionSequence):
        self.seq = seq
        p = seq.p
        self.n = n = 1 << p
        self.d = frame_phases(seq.selection, n)
        self.mats = {}
        self.P = [None, None]  # P[l] for l >= 2
        self.paulis: dict = {}
        self.frames = [None, None]
        for l in range(2, p + 1):
            P = self._find_involution(l)
            self.P.append(P)
            self.frames.append(self._adapted_frame(l))
        if p == 1:
            self.leaf_frames = [np.eye(2)]
        else:
            self.leaf_frames = [B for bp, bm in self.frames[p] for B in (bp, bm)]

    def frame(self, s: Spinor) -> np.ndarray:
        """Matrix of ``s`` in the D-frame."""
        if s not in self.mats:
            m = self.d.conj()[:, None] * spinor.to_matrix(s) * self.d[None, :]
            self.mats[s] = m
        return self.mats[s]

    def rot(self, s: Spinor) -> np.ndarray:
        """Real antisymmetric ``-i s'`` for an element of ``t``."""
        m = -1j * self.frame(s)
        if np.abs(m.imag).max() > 1e-12:
            raise SequenceError(f"{s.pauli()} is not in so(N) in the phase frame")
        return m.real

    def _find_involution(self, l: int) -> np.ndarray:
        seq = self.seq
        parent = seq.algebras[l - 2]
        child = set(seq.algebras[l - 1])
        prev = [self.paulis[k] for k in range(2, l)]
        for cand in spinor.all_spinors(seq.p):
            if any(commutes(cand, h) != (h in child) for h in parent):
                continue
            if any(not commutes(cand, r) for r in prev):
                continue
            m = self.frame(cand)
            if np.abs(m.imag).max() > 1e-12:
                continue
            self.paulis[l] = cand
            return m.real
        raise SequenceError(f"no Pauli operator realizes the level-{l} involution")

    def _adapted_frame(self, l: int):
        A = self.seq.subalgebras[l - 1]
        R0 = self.rot(A[0])
        family = [self.P[k] for k in range(2, l + 1)] + [R0 @ self.rot(h) for h in A[1:]]
        V = diagonalizer(family).T  # columns are joint eigenvectors
        plus = [v for v in V.T if v @ self.P[l] @ v > 0]
        groups: dict = {}
        for v in plus:
            key = tuple(int(np.sign(v @ self.P[k] @ v)) for k in range(2, l))
            groups.setdefault(key, []).append(v)
        out = []
        for key in sorted(groups):
            Bp = np.array(groups[key]).T
            out.append((Bp, R0 @ Bp))
        return out

    def _plane_coeffs(self, frames: list, angles: np.ndarray, A: list) -> np.ndarray:
        """Solve ``angle_s = sum_h c_h(s) omega_h`` for the coefficients of ``A``."""
        C = np.zeros((len(frames), len(A)))
        for j, h in enumerate(A):
            G = -self.rot(h)
            for s, F in enumerate(frames):
                C[s, j] = (F.T @ G @ F)[1, 0]
        omega, *_ = np.linalg.lstsq(C, angles, rcond=None)
        if np.linalg.matrix_rank(C) < len(A):
            raise SequenceError("abelian generators do not separate the rotation planes")
        return omega

    def center_coeffs(self, theta: np.ndarray) -> list:
        n = self.n
        a = np.diag(theta)
        return [(h, float(np.trace(spinor.to_matrix(h) @ a).real) / n) for h in self.seq.subalgebras[0]]

    def leaf(self, K: np.ndarray) -> list:
        A = self.seq.subalgebras[-1]
        frames, angles = [], []
        for F in self.leaf_frames:
            k = F.T @ K @ F
            frames.append(F)
            angles.append(np.arctan2(k[1, 0], k[0, 0]))
        return list(zip(A, self._plane_coeffs(frames, np.array(angles), A)))

    def split(self, K: np.ndarray, l: int):
        """``K = K1 M K2`` at level ``l`` with ``M`` generated by ``A_[l]``."""
        n = self.n
        K1, K2 = np.zeros((n, n)), np.zeros((n, n))
        planes, angles = [], []
        for Bp, Bm in self.frames[l]:
            m = Bp.shape[1]
            F = np.hstack([Bp, Bm])
            Kb = F.T @ K @ F
            (u1, u2), th, (v1, v2) = cossin(Kb, p=m, q=m, separate=True)
            th = np.array(th, dtype=float)
            J = np.ones(m)
            J[0] = -1
            if np.linalg.det(u1) < 0:
                u1 = u1 * J[None, :]
                v1 = J[:, None] * v1
                th[0] = -th[0]
            if np.linalg.det(u2) < 0:
                u2 = u2 * J[None, :]
                v2 = J[:, None] * v2
                th[0] = -th[0]
            if np.linalg.det(v1) < 0:  # then det(v2) < 0 as well
                v1 = J[:, None] * v1
                v2 = J[:, None] * v2
                th[0] += np.pi
            K1 += F @ np.block([[u1, np.zeros((m, m))], [np.zeros((m, m)), u2]]) @ F.T
            K2 += F @ np.block([[v1, np.zeros((m, m))], [np.zeros((m, m)), v2]]) @ F.T
            for k in range(m):
                planes.append(np.stack([Bp[:, k], Bm[:, k]], axis=1))
                angles.append(th[k])
        A = self.seq.subalgebras[l - 1]
        coeffs = list(zip(A, self._plane_coeffs(planes, np.array(angles), A)))
        return K1, coeffs, K2

    def recurse(self, K: np.ndarray, l: int) -> list:
        """In-order list of coefficient lists for ``K`` in ``exp(t_[l])``."""
        if l == self.seq.p:
            return [self.leaf(K)]
        K1, mid, K2 = self.split(K, l + 1)
        return self.recurse(K1, l + 1) + [mid] + self.recurse(K2, l + 1)


def recursive_factor(U: np.ndarray, seq: DecompositionSequence) -> FactorTree:
    """Fully recursive factorization into ``2^(p+1) - 1`` abelian factors in tau order.

    Smaller dimensions are embedded as ``U + I`` and the residual is measured on
    the original block.
    """
    U = project_su(U)
    n0 = U.shape[0]
    p = seq.p
    n = 1 << p
    if not (n >> 1) < n0 <= n:
        raise ValueError(f"dimension {n0} does not fit the su({n}) sequence")
    if n0 < n:
        big = np.eye(n, dtype=complex)
        big[:n0, :n0] = U
        U = big
    validate_sequence(seq)
    eng = _Engine(seq)
    d = eng.d
    Up = d.conj()[:, None] * U * d[None, :]
    K1p, theta, O = _ai_frame(Up)
    K1r = K1p.real
    if np.abs(K1p.imag).max() > 1e-6:
        raise ClusteringError(float(np.abs(K1p.imag).max()))
    coeff_lists = eng.recurse(K1r, 1) + [eng.center_coeffs(theta)] + eng.recurse(O, 1)
    taus = tau_order(p)
    factors = []
    for tau, terms in zip(taus, coeff_lists):
        a = sum((w * spinor.to_matrix(s) for s, w in terms), np.zeros((n, n), complex))
        factors.append(Factor(tau, terms, expm(1j * a)))
    tree = FactorTree(factors, 0.0, n0)
    prod = tree.product()
    tree.reconstruction_error = float(np.linalg.norm(prod[:n0, :n0] - U[:n0, :n0]))
    if tree.reconstruction_error > FULL_TOL:
        raise ClusteringError(tree.reconstruction_error)
    return tree


# gates ----------------------------------------------------------------------


@dataclass(frozen=True)
class GateTerm:
    tau: str
    generator: Spinor
    angle: float

    @property
    def locality(self) -> str:
        return classify(self.generator)


def classify(s: Spinor) -> str:
    """Single-qubit generators are local; anything wider is nonlocal."""
    return "local" if s.support() == 1 else "nonlocal"


def emit_gates(tree: FactorTree, basis: Optional[Sequence[Spinor]] = None, tol: float = 1e-12) -> list[GateTerm]:
    """Expand every factor as ``prod exp(i omega g)`` over commuting spinors.

    With an explicit ``basis`` each factor is re-expanded on it and must be
    spanned by it.
    """
    out = []
    for f in tree.factors:
        terms = f.terms
        if basis is not None:
            terms = _reexpand(f, basis)
        for s, w in terms:
            if abs(w) > tol:
                out.append(GateTerm(str(f.tau), s, float(w)))
    return out


def _reexpand(f: Factor, basis: Sequence[Spinor]) -> list:
    a = f.element()
    n = a.shape[0]
    terms = [(s, float(np.trace(spinor.to_matrix(s) @ a).real) / n) for s in basis]
    rest = a - sum((w * spinor.to_matrix(s) for s, w in terms), np.zeros_like(a))
    if np.linalg.norm(rest) > 1e-9:
        raise ValueError(f"basis does not span the factor at tau {f.tau}")
    return terms


def gates_product(gates: Sequence[GateTerm], dim: int) -> np.ndarray:
    out = np.eye(dim, dtype=complex)
    for g in gates:
        out = out @ expm(1j * g.angle * spinor.to_matrix(g.generator))
    return out


def default_split(q: QuotientAlgebra) -> CartanSplit:
    """All-hat selection: ``t`` is the real orthogonal algebra."""
    return make_split(resolve_selection(q, [(e, True) for e in unit_labels(q.p)]))
