import numpy as np
import pytest
from scipy.stats import unitary_group

from qap import kak
from qap.cartan import enumerate_selections, make_split, resolve_selection
from qap.partition import build_qap, intrinsic_center
from qap.spinor import all_spinors, commutes, to_matrix


def spinor_qap(n):
    return build_qap(intrinsic_center(n, "spinor" if n & (n - 1) == 0 else "lambda"), verify=False)


@pytest.mark.parametrize("n", [2, 4, 6, 8])
def test_kak_ai_every_selection(n, rng):
    q = spinor_qap(n)
    for sel in enumerate_selections(q):
        split = make_split(sel)
        U = unitary_group.rvs(n, random_state=rng)
        k1, a, k2 = res = kak.kak_ai(U, split)
        assert res.residual <= 1e-8
        assert np.allclose(a, np.diag(np.diag(a)))
        assert abs(np.trace(a)) < 1e-9
        for K in (k1, k2):
            assert np.allclose(kak.cartan_involution(split, K), K)
            assert np.isclose(np.linalg.det(K), 1)


def test_kak_ai_degenerate_inputs():
    q = spinor_qap(8)
    split = kak.default_split(q)
    for U in (np.eye(8), -np.eye(8), np.kron(np.eye(4), [[0, 1], [1, 0]]), np.diag(np.exp(1j * np.arange(8)))):
        assert kak.kak_ai(U.astype(complex), split).residual <= 1e-8


def test_kak_ai_errors():
    split = kak.default_split(spinor_qap(4))
    with pytest.raises(kak.NotUnitaryError):
        kak.kak_ai(2 * np.eye(4), split)
    with pytest.raises(ValueError):
        kak.kak_ai(np.eye(8), split)


def test_tau_order():
    assert [str(t) for t in kak.tau_order(1)] == ["01", "10", "11"]
    taus = kak.tau_order(2)
    assert [str(t) for t in taus if t.level == 0] == ["100"]
    assert len(taus) == 7
    assert [str(t) for t in taus] == sorted(str(t) for t in taus)
    with pytest.raises(ValueError):
        kak.tau_order(0)


@pytest.mark.parametrize("n", [2, 4, 8, 16])
def test_recursive_factor(n, rng):
    q = spinor_qap(n)
    seq = kak.canonical_sequence(q)
    p = q.p
    U = unitary_group.rvs(n, random_state=rng)
    tree = kak.recursive_factor(U, seq)
    assert len(tree.factors) == 2 ** (p + 1) - 1
    assert tree.reconstruction_error <= 1e-7
    target = kak.project_su(U)
    assert np.linalg.norm(tree.product() - target) <= 1e-7
    for f in tree.factors:
        mats = [to_matrix(s) for s, _ in f.terms]
        for a in mats:
            for b in mats:
                assert np.linalg.norm(a @ b - b @ a) <= 1e-10


def test_factor_levels_use_sequence_subalgebras(rng):
    q = spinor_qap(8)
    seq = kak.canonical_sequence(q)
    tree = kak.recursive_factor(unitary_group.rvs(8, random_state=rng), seq)
    for f in tree.factors:
        allowed = set(seq.subalgebras[f.tau.level])
        assert {s for s, _ in f.terms} <= allowed


@pytest.mark.parametrize("sel_index", range(4))
def test_recursive_factor_other_selections(sel_index, rng):
    q = spinor_qap(4)
    sel = enumerate_selections(q)[sel_index]
    seq = kak.canonical_sequence(q, sel)
    tree = kak.recursive_factor(unitary_group.rvs(4, random_state=rng), seq)
    assert tree.reconstruction_error <= 1e-7


def test_special_matrices():
    q = spinor_qap(8)
    seq = kak.canonical_sequence(q)
    H = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
    cnot = np.eye(4)[[0, 1, 3, 2]]
    cases = [np.eye(8), -np.eye(8), np.kron(np.kron(H, H), H), np.kron(cnot, np.eye(2)),
             np.diag(np.exp(1j * np.linspace(0, 3, 8))), np.eye(8)[[3, 1, 0, 2, 7, 6, 4, 5]]]
    for U in cases:
        tree = kak.recursive_factor(U.astype(complex), seq)
        assert tree.reconstruction_error <= 1e-7


def test_identity_gives_zero_angles():
    seq = kak.canonical_sequence(spinor_qap(8))
    tree = kak.recursive_factor(np.eye(8, dtype=complex), seq)
    assert all(abs(w) < 1e-12 for f in tree.factors for _, w in f.terms)
    assert kak.emit_gates(tree) == []


def test_block_diagonal_input(rng):
    seq = kak.canonical_sequence(spinor_qap(8))
    a, b = unitary_group.rvs(4, random_state=rng), unitary_group.rvs(4, random_state=rng)
    U = np.block([[a, np.zeros((4, 4))], [np.zeros((4, 4)), b]])
    assert kak.recursive_factor(U, seq).reconstruction_error <= 1e-7


def test_su6_embedding(rng):
    seq = kak.canonical_sequence(spinor_qap(8))
    U = unitary_group.rvs(6, random_state=rng)
    tree = kak.recursive_factor(U, seq)
    assert tree.dim == 6
    assert tree.reconstruction_error <= 1e-7
    with pytest.raises(ValueError):
        kak.recursive_factor(unitary_group.rvs(3, random_state=rng), seq)


def test_emit_gates_round_trip(rng):
    seq = kak.canonical_sequence(spinor_qap(8))
    U = unitary_group.rvs(8, random_state=rng)
    tree = kak.recursive_factor(U, seq)
    gates = kak.emit_gates(tree)
    assert np.linalg.norm(kak.gates_product(gates, 8) - kak.project_su(U)) <= 1e-7
    assert {g.locality for g in gates} <= {"local", "nonlocal"}
    assert all(g.locality == ("local" if g.generator.support() == 1 else "nonlocal") for g in gates)
    regrouped = kak.emit_gates(tree, basis=all_spinors(3))
    assert np.linalg.norm(kak.gates_product(regrouped, 8) - kak.project_su(U)) <= 1e-7
    with pytest.raises(ValueError):
        kak.emit_gates(tree, basis=all_spinors(3)[:2])


def test_determinism(rng):
    seq = kak.canonical_sequence(spinor_qap(8))
    U = unitary_group.rvs(8, random_state=rng)
    a = kak.emit_gates(kak.recursive_factor(U, seq))
    b = kak.emit_gates(kak.recursive_factor(U, seq))
    assert a == b


def test_sequence_errors():
    q = spinor_qap(8)
    with pytest.raises(kak.SequenceError):
        kak.canonical_sequence(build_qap(intrinsic_center(6, "lambda")))
    with pytest.raises(kak.SequenceError):
        kak.canonical_sequence(q, order=[q.labels()[0]] * 3)
    seq = kak.canonical_sequence(q)
    seq.subalgebras[1] = seq.subalgebras[1][:-1] + [s for s in all_spinors(3) if s.pauli() == "XXX"]
    with pytest.raises(kak.SequenceError):
        kak.validate_sequence(seq)


def test_sequence_levels_abelian():
    q = spinor_qap(16)
    for sel in enumerate_selections(q)[:4]:
        seq = kak.canonical_sequence(q, sel)
        for A in seq.subalgebras:
            assert all(commutes(a, b) for a in A for b in A)


def test_frame_phases_all_hat_is_trivial():
    q = spinor_qap(8)
    sel = resolve_selection(q, [(1, True), (2, True), (4, True)])
    assert np.allclose(kak.frame_phases(sel, 8), 1)
