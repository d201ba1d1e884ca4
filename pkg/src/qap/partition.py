"""Quotient algebra partitions of su(N).

A partition splits su(N) into a Cartan subalgebra C (the center) and
conjugate pairs ``W_z, What_z`` of abelian subspaces labelled by nonzero
p-bit strings.  Pairs are grown from seeds by bracketing with the center and
merged by label.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np

from . import lambdas, spinor
from .lambdas import LambdaGen, width_for
from .linear import Atom, Gen, Span, parse_gen
from .spinor import BitString, Spinor

HAT = "Ŵ"  # W with circumflex


@dataclass
class Subspace:
    label: BitString
    hat: bool
    basis: list
    _span: Optional[Span] = field(default=None, repr=False, compare=False)

    @property
    def is_center(self) -> bool:
        return not self.label

    @property
    def name(self) -> str:
        if self.is_center:
            return "C"
        return f"{HAT if self.hat else 'W'}_{self.label}"

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def exact(self) -> bool:
        return all(isinstance(g, Gen) for g in self.basis)

    def span(self) -> Span:
        if self._span is None:
            self._span = Span(self.basis)
        return self._span

    def contains(self, g) -> bool:
        if isinstance(g, Gen):
            return self.span().contains(g)
        return _dense_contains(self.matrices(), g)

    def matrices(self) -> list[np.ndarray]:
        return [g.to_matrix() if isinstance(g, Gen) else np.asarray(g) for g in self.basis]

    def atoms(self) -> list[Atom]:
        out = [g.single_atom() for g in self.basis]
        if any(a is None for a in out):
            raise ValueError(f"{self.name} is not spanned by single atoms")
        return out


@dataclass
class QuotientAlgebra:
    dim: int
    center: Subspace
    pairs: dict  # BitString -> (W, What)
    intrinsic: bool = False

    @property
    def p(self) -> int:
        return self.center.label.width

    @property
    def exact(self) -> bool:
        return self.center.exact and all(w.exact and h.exact for w, h in self.pairs.values())

    def labels(self) -> list[BitString]:
        return sorted(self.pairs)

    def subspace(self, label: BitString, hat: bool) -> Subspace:
        if not label:
            return self.center
        w, h = self.pairs[label]
        return h if hat else w

    def subspaces(self) -> list[Subspace]:
        out = [self.center]
        for z in self.labels():
            out.extend(self.pairs[z])
        return out

    def generator_count(self) -> int:
        return sum(s.dim for s in self.subspaces())


class ClosureError(ValueError):
    def __init__(self, report: "ClosureReport"):
        self.report = report
        v = report.violations[0]
        super().__init__(f"closure fails: [{v.left}, {v.right}] leaves {v.expected} via {v.witness}")


class CenterExtensionCandidate(ValueError):
    """The seed commutes with the whole center, so it extends the Cartan subalgebra."""


class InconsistentLabel(ValueError):
    def __init__(self, first: BitString, second: BitString):
        self.first, self.second = first, second
        super().__init__(f"mixed binary-partitioning labels {first} and {second}")


@dataclass
class Violation:
    left: str
    right: str
    expected: str
    witness: str


@dataclass
class ClosureReport:
    ok: bool
    violations: list[Violation]
    checked: int = 0


# centers and labels ---------------------------------------------------------


def intrinsic_center(dim: int, form: str = "spinor") -> Subspace:
    """Diagonal Cartan subalgebra: ``S^zeta_0`` spinors or ``d(1,l)``."""
    p = width_for(dim)
    if form == "spinor":
        if dim != 1 << p:
            raise ValueError("spinor form needs a power-of-two dimension")
        basis = [Gen.atom(Spinor.hermitized(BitString(z, p), BitString.zero(p))) for z in range(1, dim)]
    elif form == "lambda":
        basis = [Gen.atom(LambdaGen("d", 1, l, dim)) for l in range(2, dim + 1)]
    else:
        raise ValueError(f"unknown form {form!r}")
    return Subspace(BitString.zero(p), False, basis)


def _atom_label(a: Atom, p: int) -> BitString:
    if isinstance(a, Spinor):
        return a.alpha
    return BitString(a.label, p)


def binary_label(x, width: Optional[int] = None) -> BitString:
    """Binary-partitioning label of an atom, generator or collection of them.

    Spinors carry their ``alpha``; lambda-generators ``(i-1) xor (j-1)``.
    Mixed labels raise ``InconsistentLabel``.
    """
    if isinstance(x, (Spinor, LambdaGen)):
        atoms = [x]
    elif isinstance(x, Gen):
        atoms = list(x.terms)
    else:
        atoms = [a for g in x for a in ([g] if isinstance(g, (Spinor, LambdaGen)) else g.terms)]
    if not atoms:
        raise ValueError("no atoms to label")
    if width is None:
        a = atoms[0]
        width = a.width if isinstance(a, Spinor) else width_for(a.dim)
    labels = []
    for a in atoms:
        z = _atom_label(a, width)
        if labels and z != labels[0]:
            raise InconsistentLabel(labels[0], z)
        labels.append(z)
    return labels[0]


def _gf2_basis(vectors: Iterable[int]) -> list[int]:
    """Reduced echelon basis of integer bit-vectors, highest pivot first."""
    rows: list[int] = []
    for v in vectors:
        for r in rows:
            v = min(v, v ^ r)
        if v:
            rows = [min(r, r ^ v) for r in rows]
            rows.append(v)
            rows.sort(reverse=True)
    # fully reduce
    for i, r in enumerate(rows):
        top = 1 << (r.bit_length() - 1)
        for j in range(len(rows)):
            if j != i and rows[j] & top:
                rows[j] ^= r
    return sorted(rows, reverse=True)


def _symplectic(s: Spinor, v: int, p: int) -> int:
    z, a = v >> p, v & ((1 << p) - 1)
    return ((s.zeta.value & a).bit_count() + (s.alpha.value & z).bit_count()) & 1


class SpinorLabeler:
    """Labels spinors by their commutation syndrome against center generators.

    For the intrinsic center the syndrome equals ``alpha``.
    """

    def __init__(self, center_atoms: Sequence[Spinor]):
        p = center_atoms[0].width
        self.p = p
        self.generators = _gf2_basis((s.zeta.value << p) | s.alpha.value for s in center_atoms)
        if len(self.generators) != p:
            raise ValueError("center spinors do not generate a rank-p group")

    def __call__(self, g) -> BitString:
        atoms = [g] if isinstance(g, Spinor) else list(g.terms)
        out = None
        for a in atoms:
            bits = 0
            for v in self.generators:
                bits = (bits << 1) | _symplectic(a, v, self.p)
            if out is not None and out != bits:
                raise InconsistentLabel(BitString(out, self.p), BitString(bits, self.p))
            out = bits
        return BitString(out, self.p)


def _is_intrinsic(center: Subspace) -> bool:
    atoms = [g.single_atom() for g in center.basis] if center.exact else [None]
    if any(a is None for a in atoms):
        return False
    if isinstance(atoms[0], Spinor):
        return all(not a.alpha for a in atoms)
    return all(a.kind == "d" for a in atoms)


def _make_labeler(center: Subspace, intrinsic: bool):
    if intrinsic:
        p = center.label.width
        return lambda g: binary_label(g, p)
    atoms = center.atoms()
    if not all(isinstance(a, Spinor) for a in atoms):
        raise ValueError("non-intrinsic centers must be spanned by spinors")
    return SpinorLabeler(atoms)


def _intrinsic_hat(g: Gen) -> bool:
    a = g.leading()
    if isinstance(a, Spinor):
        return bool(a.zeta.dot2(a.alpha))
    return a.kind == "Lh"


# construction ---------------------------------------------------------------


def _ambient(center: Subspace) -> list[Gen]:
    a = center.basis[0].leading()
    if isinstance(a, Spinor):
        return [Gen.atom(s) for s in spinor.all_spinors(a.width)]
    n = a.dim
    return [Gen.atom(LambdaGen(k, i, j, n)) for i in range(1, n + 1) for j in range(i + 1, n + 1)
            for k in ("L", "Lh")]


def normalized(g: Gen) -> Gen:
    """Scale so the leading coefficient is 1."""
    return g.scale(1 / g.terms[g.leading()]) if g else g


def _extend(span: Span, basis: list, g: Gen):
    g = normalized(g)
    if span.add(g):
        basis.append(g)


def grow_pair(seed: Gen, center: Subspace) -> tuple[list[Gen], list[Gen]]:
    """Grow the conjugate pair of ``seed``: ``What = [seed, C]``, ``W = [What, C]``.

    Iterates until both sides are stable under bracketing with the center.
    """
    if isinstance(seed, (Spinor, LambdaGen)):
        seed = Gen.atom(seed)
    if center.contains(seed):
        raise ValueError(f"seed {seed} lies in the center")
    w_span, h_span = Span(), Span()
    w, h = [], []
    _extend(w_span, w, seed)
    done_w = done_h = 0
    while done_w < len(w) or done_h < len(h):
        for g in w[done_w:]:
            for c in center.basis:
                b = g.bracket(c)
                if b:
                    _extend(h_span, h, b)
        done_w = len(w)
        for g in h[done_h:]:
            for c in center.basis:
                b = g.bracket(c)
                if b:
                    _extend(w_span, w, b)
        done_h = len(h)
    if not h:
        raise CenterExtensionCandidate(f"seed {seed} commutes with the center")
    return w, h


def build_qap(center: Subspace, seeds: Optional[Sequence[Gen]] = None,
              verify: bool = True) -> QuotientAlgebra:
    """Partition the algebra around ``center``.

    Seeds are taken in the given order, followed by the canonical ambient
    order; pairs sharing a label are merged with plain and hat sides aligned.
    """
    first = center.basis[0].leading()
    dim = (1 << first.width) if isinstance(first, Spinor) else first.dim
    intrinsic = _is_intrinsic(center)
    labeler = _make_labeler(center, intrinsic)
    covered = Span(center.basis)
    raw = []
    for seed in list(seeds or []) + _ambient(center):
        if isinstance(seed, (Spinor, LambdaGen)):
            seed = Gen.atom(seed)
        if covered.contains(seed):
            continue
        w, h = grow_pair(seed, center)
        for g in w + h:
            covered.add(g)
        raw.append((w, h))

    merged: dict = {}
    for w, h in raw:
        z = labeler(w[0])
        if intrinsic and _intrinsic_hat(w[0]):
            w, h = h, w
        if z in merged:
            merged[z] = (merged[z][0] + w, merged[z][1] + h)
        else:
            merged[z] = (w, h)
    pairs = {z: (Subspace(z, False, list(w)), Subspace(z, True, list(h)))
             for z, (w, h) in sorted(merged.items())}
    q = QuotientAlgebra(dim, center, pairs, intrinsic)
    if not intrinsic:
        orient_pairs(q)
    if q.generator_count() != dim * dim - 1:
        raise ValueError(f"partition covers {q.generator_count()} of {dim * dim - 1} generators")
    if verify:
        report = verify_closure(q)
        if not report.ok:
            raise ClosureError(report)
    return q


def _bracket_any(x, y):
    if isinstance(x, Gen):
        return x.bracket(y)
    return -1j * (x @ y - y @ x)


def _nonzero(b) -> bool:
    if isinstance(b, Gen):
        return bool(b)
    return np.linalg.norm(b) > 1e-10


def orient_pairs(q: QuotientAlgebra) -> None:
    """Choose plain/hat sides so that ``[W,W] -> What``, ``[W,What] -> W``.

    Sides on single-bit labels are kept; every other label is oriented by the
    bracket of two already oriented labels.
    """
    known = {z for z in q.pairs if z.weight() == 1}
    pending = [z for z in q.pairs if z not in known]
    while pending:
        progress = False
        for z in list(pending):
            for a in list(known):
                b = a ^ z
                if b not in known:
                    continue
                side = _landing_side(q, a, b, z)
                if side is None:
                    continue
                w, h = q.pairs[z]
                if side == "W":  # [W_a, W_b] must land in the hat side
                    w, h = h, w
                q.pairs[z] = (Subspace(z, False, w.basis), Subspace(z, True, h.basis))
                known.add(z)
                pending.remove(z)
                progress = True
                break
        if not progress:
            raise ValueError(f"cannot orient labels {[str(z) for z in pending]}")


def _landing_side(q, a, b, z) -> Optional[str]:
    wa, wb = q.pairs[a][0], q.pairs[b][0]
    w, h = q.pairs[z]
    for x in wa.basis:
        for y in wb.basis:
            r = _bracket_any(x, y)
            if _nonzero(r):
                if w.contains(r):
                    return "W"
                if h.contains(r):
                    return "H"
                return None
    return None


def expected_target(q: QuotientAlgebra, x: Subspace, y: Subspace) -> Optional[Subspace]:
    """Subspace that must contain ``[x, y]``; None means the bracket must vanish."""
    if x.is_center and y.is_center:
        return None
    if x.is_center or y.is_center:
        s = y if x.is_center else x
        return q.subspace(s.label, not s.hat)
    if x.label == y.label:
        return None if x.hat == y.hat else q.center
    hat = not (x.hat != y.hat)
    return q.subspace(x.label ^ y.label, hat)


def verify_closure(q: QuotientAlgebra, tol: float = 1e-10) -> ClosureReport:
    subs = q.subspaces()
    violations = []
    checked = 0
    for i, x in enumerate(subs):
        for y in subs[i:]:
            target = expected_target(q, x, y)
            for gx in x.basis:
                for gy in y.basis:
                    checked += 1
                    r = _bracket_any(gx, gy)
                    if not _nonzero(r) if isinstance(r, Gen) else np.linalg.norm(r) <= tol:
                        continue
                    if target is not None and target.contains(r):
                        continue
                    violations.append(Violation(x.name, y.name, "0" if target is None else target.name,
                                                f"[{_text(gx)}, {_text(gy)}]"))
    return ClosureReport(not violations, violations, checked)


def _text(g) -> str:
    return str(g) if isinstance(g, Gen) else "<matrix>"


def _dense_contains(mats: list[np.ndarray], g: np.ndarray, tol: float = 1e-9) -> bool:
    if not mats:
        return np.linalg.norm(g) <= tol
    A = np.array([m.ravel() for m in mats]).T
    coef, *_ = np.linalg.lstsq(A, g.ravel(), rcond=None)
    return np.linalg.norm(A @ coef - g.ravel()) <= tol * max(1.0, np.linalg.norm(g))


# removing process -------------------------------------------------------------


def spinor_gen_to_lambda(g: Gen, dim: Optional[int] = None) -> Gen:
    """Rewrite a spinor combination in lambda atoms (diagonal in ``d(1,l)``)."""
    terms = []
    for s, c in g.terms.items():
        for gc, lg in lambdas.spinor_to_lambdas(s):
            terms.append((gc * c, lg))
    return Gen.from_terms((c.real(), a) for c, a in lambdas.lgens_to_lambda(terms, dim))


def _truncate(g: Gen, n: int) -> Gen:
    return Gen({a.with_dim(n): c for a, c in g.terms.items() if a.j <= n})


def remove_process(q: QuotientAlgebra, n: int) -> QuotientAlgebra:
    """Restrict an intrinsic partition of su(2^p) to su(n) by deleting levels above ``n``."""
    if not q.intrinsic:
        raise ValueError("conjugate the partition to the intrinsic center first")
    if not 2 <= n <= q.dim:
        raise ValueError(f"target dimension must lie in 2..{q.dim}")
    if width_for(n) != q.p and n != q.dim:
        raise ValueError(f"su({n}) needs {width_for(n)} qubits, not {q.p}")

    def cut(sub: Subspace, hat: bool) -> Subspace:
        span, out = Span(), []
        for g in sub.basis:
            a = g.leading()
            lg = spinor_gen_to_lambda(g) if isinstance(a, Spinor) else g
            _extend(span, out, _truncate(lg, n))
        return Subspace(sub.label, hat, span.rref() if out else [])

    center = cut(q.center, False)
    pairs = {}
    for z, (w, h) in q.pairs.items():
        cw, ch = cut(w, False), cut(h, True)
        if cw.dim != ch.dim:
            raise ValueError(f"pair {z} lost its conjugate balance")
        if cw.dim:
            pairs[z] = (cw, ch)
    out = QuotientAlgebra(n, center, pairs, True)
    if out.generator_count() != n * n - 1:
        raise ValueError("removal did not leave n^2-1 generators")
    return out


# conjugation and diagonalization -----------------------------------------------


def _is_unitary(U: np.ndarray, tol: float = 1e-10) -> bool:
    return U.ndim == 2 and U.shape[0] == U.shape[1] and \
        np.linalg.norm(U.conj().T @ U - np.eye(U.shape[0])) <= tol * U.shape[0]


def _pauli_gen(m: np.ndarray, p: int) -> Optional[Gen]:
    """Exact spinor expansion of a hermitian matrix, if its coefficients are simple rationals."""
    terms = {}
    n = 1 << p
    for s in spinor.all_spinors(p):
        c = np.trace(spinor.to_matrix(s) @ m) / n
        if abs(c.imag) > 1e-10:
            return None
        if abs(c.real) > 1e-12:
            f = Fraction(c.real).limit_denominator(1 << 12)
            if abs(float(f) - c.real) > 1e-10:
                return None
            terms[s] = f
    return Gen(terms)


def conjugate_qap(q: QuotientAlgebra, U: np.ndarray) -> QuotientAlgebra:
    """Apply ``g -> U^dag g U`` to every generator.

    For power-of-two dimensions the result is re-expressed exactly in spinors
    whenever the coefficients are simple rationals.
    """
    U = np.asarray(U, dtype=complex)
    if U.shape != (q.dim, q.dim) or not _is_unitary(U):
        raise ValueError("conjugating matrix must be unitary of the algebra dimension")
    p = q.p
    exact = q.dim == 1 << p

    def conj(sub: Subspace) -> Subspace:
        mats = [U.conj().T @ m @ U for m in sub.matrices()]
        gens = [(_pauli_gen(m, p) if exact else None) for m in mats]
        gens = [normalized(g) if g is not None else None for g in gens]
        basis = gens if all(g is not None for g in gens) else mats
        return Subspace(sub.label, sub.hat, basis)

    pairs = {z: (conj(w), conj(h)) for z, (w, h) in q.pairs.items()}
    center = conj(q.center)
    return QuotientAlgebra(q.dim, center, pairs, center.exact and _is_intrinsic(center))


def diagonalizer(mats: Sequence, tol: float = 1e-10) -> np.ndarray:
    """Unitary ``U`` with ``U m U^dag`` diagonal for every commuting hermitian ``m``.

    Real symmetric inputs give a real orthogonal ``U``; ``det U = 1`` always.
    Eigenspaces are refined one matrix at a time.
    """
    mats = [m.to_matrix() if isinstance(m, Gen) else np.asarray(m) for m in mats]
    if not mats:
        raise ValueError("nothing to diagonalize")
    n = mats[0].shape[0]
    for a in mats:
        if np.linalg.norm(a - a.conj().T) > tol * max(1.0, np.linalg.norm(a)):
            raise ValueError("inputs must be hermitian")
    for i, a in enumerate(mats):
        for b in mats[i + 1:]:
            if np.linalg.norm(a @ b - b @ a) > tol * max(1.0, np.linalg.norm(a) * np.linalg.norm(b)):
                raise ValueError("inputs do not commute")
    real = all(np.allclose(m.imag, 0, atol=tol) for m in mats)
    if real:
        mats = [m.real for m in mats]
    V = np.eye(n, dtype=float if real else complex)
    blocks = [np.arange(n)]
    gap = max(tol, 1e-8) * max(1.0, max(np.linalg.norm(m, 2) for m in mats))
    keys = [[] for _ in range(n)]
    for m in mats:
        new_blocks = []
        for idx in blocks:
            sub = V[:, idx]
            h = sub.conj().T @ m @ sub
            w, vec = np.linalg.eigh((h + h.conj().T) / 2)
            V[:, idx] = sub @ vec
            start = 0
            for k in range(1, len(idx) + 1):
                if k == len(idx) or w[k] - w[k - 1] > gap:
                    new_blocks.append(idx[start:k])
                    for c in idx[start:k]:
                        keys[c].append(round(float(np.mean(w[start:k])) / gap) * gap)
                    start = k
        blocks = new_blocks
    order = sorted(range(n), key=lambda c: keys[c])
    U = V[:, order].conj().T
    d = np.linalg.det(U)
    U[0] = U[0] * (np.conj(d) / abs(d))
    return U


# serialization -----------------------------------------------------------------


def qap_to_dict(q: QuotientAlgebra) -> dict:
    if not q.exact:
        raise ValueError("only exact partitions can be serialized")
    return {
        "dim": q.dim,
        "center": [str(g) for g in q.center.basis],
        "pairs": {str(z): {"W": [str(g) for g in w.basis], HAT: [str(g) for g in h.basis]}
                  for z, (w, h) in sorted(q.pairs.items())},
    }


def qap_from_dict(data: dict) -> QuotientAlgebra:
    """Inverse of ``qap_to_dict``; raises ``ValueError`` on malformed input."""
    try:
        dim = int(data["dim"])
        p = width_for(dim)
        center = Subspace(BitString.zero(p), False, [parse_gen(t, dim) for t in data["center"]])
        pairs = {}
        for key, sides in data["pairs"].items():
            z = BitString.from_str(key)
            if z.width != p or not z:
                raise ValueError(f"bad label {key!r}")
            pairs[z] = (Subspace(z, False, [parse_gen(t, dim) for t in sides["W"]]),
                        Subspace(z, True, [parse_gen(t, dim) for t in sides[HAT]]))
    except (KeyError, TypeError, AttributeError) as exc:
        raise ValueError(f"malformed partition: {exc!r}") from exc
    return QuotientAlgebra(dim, center, dict(sorted(pairs.items())), _is_intrinsic(center))


def format_table(q: QuotientAlgebra) -> str:
    """Text table with columns ``W | C | What``, one row per label.

    The k-th center generator is printed on the k-th row.
    """
    rows = []
    for k, z in enumerate(q.labels()):
        w, h = q.pairs[z]
        c = _text(q.center.basis[k]) if k < q.center.dim else ""
        rows.append((f"W_{z}: " + ", ".join(_text(g) for g in w.basis), c,
                     f"{HAT}_{z}: " + ", ".join(_text(g) for g in h.basis)))
    for c in q.center.basis[len(rows):]:
        rows.append(("", _text(c), ""))
    wl = max(len(r[0]) for r in rows)
    cl = max(len(r[1]) for r in rows)
    return "\n".join(f"{a:<{wl}} | {b:<{cl}} | {c}".rstrip() for a, b, c in rows)
