"""Tensor indestructibility: order-two nilpotents survive any tensor
partner, anything else is destroyed by the explicit 3x3 witness.

Witness oracle with (alpha, beta) = (1, 2) and the word y x x:
substituting x = B, y = B* gives B* B B with single entry alpha^2 beta = 2;
swapping the roles gives B B* B* with single entry alpha beta^2 = 4.
"""

import numpy as np
import pytest

from csokit.certify import is_c_symmetric
from csokit.ensembles import random_complex, random_nilpotent2, stream
from csokit.errors import InputError, PreconditionError
from csokit.indestructible import (
    DESTRUCTOR_WORD,
    destructor_witness,
    factor_swap,
    is_nilpotent2,
    nilpotent2_tensor_conjugation,
    shift_coshift_product,
    shift_coshift_truncation,
    shift_tensor_coshift_blocks,
    swap_conjugation,
    witness_matrix,
)
from csokit.linalg import Conjugation, operator_norm, singular_values, tensor
from csokit.words import eval_word


def jordan(n):
    J = np.zeros((n, n), dtype=complex)
    for i in range(n - 1):
        J[i + 1, i] = 1.0
    return J


def test_is_nilpotent2():
    assert is_nilpotent2(np.zeros((2, 2)))
    assert is_nilpotent2(jordan(2))
    assert not is_nilpotent2(jordan(3))
    assert not is_nilpotent2(np.eye(2))


def test_witness_matrix_layout_and_validation():
    B = witness_matrix(1.0, 2.0)
    assert B[0, 1] == 1.0 and B[1, 2] == 2.0
    assert np.count_nonzero(B) == 2
    for bad in ((0.0, 1.0), (1.0, -2.0), (1.5, 1.5)):
        with pytest.raises(InputError):
            witness_matrix(*bad)


def test_destructor_word_norms_exact():
    B = witness_matrix(1.0, 2.0)
    assert DESTRUCTOR_WORD == "yxx"
    assert operator_norm(eval_word("yxx", B, B.conj().T)) == pytest.approx(2.0, abs=1e-12)
    assert operator_norm(eval_word("yxx", B.conj().T, B)) == pytest.approx(4.0, abs=1e-12)


def test_destructor_destroys_higher_order_nilpotent():
    cert = destructor_witness(jordan(3), 1.0, 2.0)
    assert cert.conclusion == "destroyed"
    assert cert.word == "yxx"
    assert cert.norm_wB == pytest.approx(2.0, abs=1e-10)
    assert cert.norm_wB_rev == pytest.approx(4.0, abs=1e-10)
    assert cert.norm_wA == pytest.approx(1.0, abs=1e-10)


def test_destructor_spares_order_two_nilpotent():
    rng = stream(13, 0)
    cert = destructor_witness(random_nilpotent2(rng, 4), 1.0, 2.0)
    assert cert.conclusion == "indestructible_sampled"


def test_tensor_conjugation_for_order_two_factor():
    rng = stream(13, 1)
    A = random_nilpotent2(rng, 4, rank=2)
    B = random_complex(rng, 3, 3)
    C = nilpotent2_tensor_conjugation(A, B)
    C.validate()
    ok, res = is_c_symmetric(tensor(A, B), C)
    assert ok and res <= 1e-9


def test_tensor_conjugation_requires_square_zero():
    with pytest.raises(PreconditionError):
        nilpotent2_tensor_conjugation(jordan(3), np.eye(2))


def test_factor_swap_exchanges_kron_order():
    rng = stream(13, 2)
    A = random_complex(rng, 3, 3)
    B = random_complex(rng, 3, 3)
    S = factor_swap(3)
    assert np.allclose(S @ np.kron(A, B) @ S.T, np.kron(B, A))
    assert np.allclose(S @ S.T, np.eye(9))


def test_swap_conjugation_certifies_product_with_reflected_adjoint():
    rng = stream(13, 3)
    J = Conjugation.identity(4)
    A = random_complex(rng, 4, 4)
    T = shift_coshift_product(J, A)
    C = swap_conjugation(J, 4)
    C.validate()
    ok, res = is_c_symmetric(T, C)
    assert ok and res <= 1e-9
    with pytest.raises(InputError):
        swap_conjugation(J, 3)


def test_reflected_adjoint_under_entrywise_conjugation_is_transpose():
    # with J = entrywise conjugation the partner J A* J equals A^t, so the
    # product is A kron A^t
    rng = stream(13, 4)
    A = random_complex(rng, 3, 3)
    T = shift_coshift_product(Conjugation.identity(3), A)
    assert np.allclose(T, np.kron(A, A.T))


def test_shift_coshift_truncation_blocks():
    N = 6
    blocks = shift_tensor_coshift_blocks(N)
    assert [d for d, _ in blocks] == list(range(1, N + 1))
    full = shift_coshift_truncation(N)
    stacked = np.concatenate([singular_values(M) for _, M in blocks])
    sv_blocks = np.sort(stacked)[::-1]
    sv_full = singular_values(full)
    assert sv_full.shape == sv_blocks.shape
    assert np.max(np.abs(sv_full - sv_blocks)) <= 1e-10


def test_shift_coshift_blocks_are_single_chains():
    for d, M in shift_tensor_coshift_blocks(5):
        assert M.shape == (d, d)
        # one Jordan chain: rank d-1 and M^d = 0 with M^(d-1) != 0
        assert np.linalg.matrix_rank(M, tol=1e-10) == d - 1
        P = np.eye(d, dtype=complex)
        for _ in range(d - 1):
            P = P @ M
        if d > 1:
            assert operator_norm(P) > 1e-10
        assert operator_norm(P @ M) <= 1e-12
