import itertools
from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, strategies as st

from reference_tables import SU4_SUBSCRIPT_ROWS, SU8_SUBSCRIPT_ROWS, SU8_SWAPPED_ROWS
from qap import lambdas as lm
from qap.spinor import BitString, Spinor, all_spinors, to_matrix as spinor_matrix


def every_gen(dim):
    out = []
    for i, j in itertools.combinations(range(1, dim + 1), 2):
        out += [lm.LambdaGen("L", i, j, dim), lm.LambdaGen("Lh", i, j, dim), lm.LambdaGen("d", i, j, dim)]
    return out


def dense(terms, dim, fn=lm.to_matrix):
    out = np.zeros((dim, dim), dtype=complex)
    for c, g in terms:
        out += complex(c) * fn(g)
    return out


def every_lgen(p):
    return [lm.LGen(e, BitString(w, p), BitString(a, p))
            for e in (0, 1) for w in range(1 << p) for a in range(1 << p)]


def test_matrices():
    assert np.allclose(lm.to_matrix(lm.LambdaGen("L", 1, 2, 2)), [[0, 1], [1, 0]])
    assert np.allclose(lm.to_matrix(lm.LambdaGen("Lh", 1, 2, 2)), [[0, -1j], [1j, 0]])
    assert np.allclose(lm.to_matrix(lm.LambdaGen("d", 1, 2, 2)), [[1, 0], [0, -1]])
    assert lm.LambdaGen("L", 3, 8, 8).label == 0b101


@pytest.mark.parametrize("dim", [2, 3, 4, 5, 6, 7, 8])
def test_commutators_exhaustive(dim):
    gens = every_gen(dim)
    mats = {g: lm.to_matrix(g) for g in gens}
    for a in gens:
        for b in gens:
            expect = mats[a] @ mats[b] - mats[b] @ mats[a]
            assert np.allclose(dense(lm.lambda_commutator(a, b), dim), expect), (a, b)


@pytest.mark.parametrize("dim", [3, 6])
def test_hermitian_bracket_is_real_in_d1l_basis(dim):
    gens = every_gen(dim)
    for a in gens:
        for b in gens:
            terms = lm.hermitian_bracket(a, b)
            assert all(isinstance(c, Fraction) for c, _ in terms)
            assert all(g.kind != "d" or g.i == 1 for _, g in terms)
            comm = lm.to_matrix(a) @ lm.to_matrix(b) - lm.to_matrix(b) @ lm.to_matrix(a)
            assert np.allclose(dense(terms, dim), -1j * comm)


def test_canonical_swaps():
    assert lm.canonical("Lh", 4, 2, 5) == (-1, lm.LambdaGen("Lh", 2, 4, 5))
    assert lm.canonical("L", 4, 2, 5) == (1, lm.LambdaGen("L", 2, 4, 5))
    assert lm.canonical("d", 3, 3, 5) == (0, None)
    with pytest.raises(ValueError):
        lm.LambdaGen("L", 2, 2, 4)
    with pytest.raises(ValueError):
        lm.lambda_commutator(lm.LambdaGen("L", 1, 2, 3), lm.LambdaGen("L", 1, 2, 4))


@pytest.mark.parametrize("p", [1, 2, 3])
def test_lgen_brackets_exhaustive(p):
    gens = every_lgen(p)
    n = 1 << p
    for a in gens:
        A = lm.lgen_matrix(a)
        for b in gens:
            B = lm.lgen_matrix(b)
            assert np.allclose(dense(lm.lgen_commutator(a, b), n, lm.lgen_matrix), A @ B - B @ A)
            assert np.allclose(dense(lm.lgen_anticommutator(a, b), n, lm.lgen_matrix), A @ B + B @ A)


@pytest.mark.parametrize("p", [1, 2, 3])
def test_lgen_spinor_round_trip(p):
    n = 1 << p
    for g in every_lgen(p):
        m = dense(lm.lambda_to_spinors(g), n, spinor_matrix)
        assert np.allclose(m, lm.lgen_matrix(g))
    for s in all_spinors(p):
        assert np.allclose(dense(lm.spinor_to_lambdas(s), n, lm.lgen_matrix), spinor_matrix(s))
        terms = lm.lgens_to_lambda(lm.spinor_to_lambdas(s))
        assert np.allclose(dense(terms, n), spinor_matrix(s))


def test_lambda_to_lgens_round_trip():
    for g in every_gen(8):
        assert np.allclose(dense(lm.lambda_to_lgens(g), 8, lm.lgen_matrix), lm.to_matrix(g))
    with pytest.raises(ValueError):
        lm.lambda_to_lgens(lm.LambdaGen("L", 1, 2, 6))


def test_lgens_to_lambda_truncation():
    # I x X restricted to six levels must not reach levels 7 and 8
    s = Spinor.from_pauli("IIX")
    with pytest.raises(ValueError):
        lm.lgens_to_lambda(lm.spinor_to_lambdas(s), 6)
    s = Spinor.from_pauli("ZZI")
    with pytest.raises(ValueError):
        lm.lgens_to_lambda(lm.spinor_to_lambdas(s), 6)


def test_gellmann_basis():
    basis = lm.gellmann_basis()
    assert basis[7].scale == 1 / sympy.sqrt(3)
    mats = [b.to_matrix() for b in basis]
    for a, b in itertools.product(range(8), repeat=2):
        assert np.isclose(np.trace(mats[a] @ mats[b]), 2 * (a == b))
    assert np.allclose(mats[7], np.diag([1, 1, -2]) / np.sqrt(3))


@pytest.mark.parametrize("dim", [3, 4, 6, 9])
def test_orthogonal_diagonal_basis(dim):
    basis = lm.orthogonal_diagonal_basis(dim)
    mats = [b.to_matrix() for b in basis]
    gram = np.array([[np.trace(x @ y) for y in mats] for x in mats])
    assert np.allclose(gram, 2 * np.eye(dim - 1))


def test_diagonal_to_d():
    terms = lm.diagonal_to_d([3, -1, -2, 0], 4)
    assert np.allclose(dense(terms, 4), np.diag([3, -1, -2, 0]))
    with pytest.raises(ValueError):
        lm.diagonal_to_d([1, 0, 0], 3)


def test_subscript_products():
    assert lm.subscript_multiply((1, 2), (2, 3)) == (1, 3)
    assert lm.subscript_multiply((1, 2), (3, 4)) == lm.DISJOINT
    assert lm.subscript_multiply((2, 1), (1, 2)) == lm.SAME
    with pytest.raises(ValueError):
        lm.subscript_multiply((1, 1), (1, 2))


def test_binary_table_matches_transcription():
    assert set(lm.binary_table(8).rows) >= {tuple(r) for r in SU8_SUBSCRIPT_ROWS}
    for dim in range(2, 17):
        t = lm.binary_table(dim)
        assert t.complete
        assert lm.table_closure_check(t).closed


def test_complete_from_beginning_rows():
    t = lm.complete_table(8, SU8_SUBSCRIPT_ROWS)
    assert t == lm.binary_table(8)
    assert lm.complete_table(4, SU4_SUBSCRIPT_ROWS[:2]) == lm.binary_table(4)


def test_swapped_rows_are_rejected():
    with pytest.raises(lm.TableClosureError):
        lm.complete_table(8, SU8_SWAPPED_ROWS)
    partial = lm.SubscriptTable(8, tuple(map(tuple, SU8_SWAPPED_ROWS)))
    report = lm.table_closure_check(partial)
    assert not report.closed
    assert {(a, b) for a, b, _ in report.violations} == {(0, 3), (1, 3)}


def test_glue_tables():
    t4 = lm.binary_table(4)
    assert lm.glue_tables(t4, t4, [(1, 5), (2, 6), (3, 7), (4, 8)]) == lm.binary_table(8)
    with pytest.raises(lm.InteractionError):
        lm.glue_tables(t4, t4, [(1, 5), (2, 7), (3, 6), (4, 8)])


def test_table_validation():
    with pytest.raises(ValueError):
        lm.SubscriptTable(4, (((1, 2), (2, 3)),))
    with pytest.raises(ValueError):
        lm.SubscriptTable(4, (((1, 2),), ((1, 2),)))


@given(st.integers(2, 12), st.data())
def test_commutator_antisymmetric(dim, data):
    gens = every_gen(dim)
    a = data.draw(st.sampled_from(gens))
    b = data.draw(st.sampled_from(gens))
    ab = dict((g, c) for c, g in lm.lambda_commutator(a, b))
    ba = dict((g, c) for c, g in lm.lambda_commutator(b, a))
    assert ab.keys() == ba.keys()
    assert all(ab[g] == -ba[g] for g in ab)


@given(st.integers(2, 10), st.data())
def test_commutator_labels_xor(dim, data):
    gens = [g for g in every_gen(dim) if g.kind != "d"]
    a = data.draw(st.sampled_from(gens))
    b = data.draw(st.sampled_from(gens))
    for _, g in lm.lambda_commutator(a, b):
        assert g.label == a.label ^ b.label
