import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def pauli_matrix(word: str) -> np.ndarray:
    """Dense Pauli word built independently of the package."""
    out = np.eye(1, dtype=complex)
    for c in word:
        out = np.kron(out, PAULI[c])
    return out


def span_equal(mats_a, mats_b, tol=1e-9) -> bool:
    A = np.array([np.asarray(m).ravel() for m in mats_a]).T
    B = np.array([np.asarray(m).ravel() for m in mats_b]).T
    ra = np.linalg.matrix_rank(A, tol)
    rb = np.linalg.matrix_rank(B, tol)
    rab = np.linalg.matrix_rank(np.hstack([A, B]), tol)
    return ra == rb == rab


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def _gellmann():
    m = {k: np.zeros((3, 3), dtype=complex) for k in range(1, 9)}
    m[1][0, 1] = m[1][1, 0] = 1
    m[2][0, 1], m[2][1, 0] = -1j, 1j
    m[3][0, 0], m[3][1, 1] = 1, -1
    m[4][0, 2] = m[4][2, 0] = 1
    m[5][0, 2], m[5][2, 0] = -1j, 1j
    m[6][1, 2] = m[6][2, 1] = 1
    m[7][1, 2], m[7][2, 1] = -1j, 1j
    m[8] = np.diag([1, 1, -2]).astype(complex) / np.sqrt(3)
    return m


GELLMANN = _gellmann()


def mu_sigma(text: str) -> np.ndarray:
    """``"m3 Z"`` is mu_3 (x) Z; ``"I X"`` is I_3 (x) X."""
    left, right = text.split()
    a = np.eye(3, dtype=complex) if left == "I" else GELLMANN[int(left[1:])]
    return np.kron(a, PAULI[right])
