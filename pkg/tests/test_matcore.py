import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sepscope.errors import DimensionMismatch, NonHermitian, NonSquare
from sepscope.matcore import (hermitian_eigenvalues, kron, partial_trace,
                              partial_transpose, random_unitary, realign,
                              singular_values, trace_norm, unvec, vec)
from tests.conftest import random_complex, random_hermitian

S2, S6 = np.sqrt(2), np.sqrt(6)


def bell(d=2):
    phi = np.eye(d).reshape(-1) / np.sqrt(d)
    return np.outer(phi, phi)


def brute_partial_trace_b(m, da, db):
    out = np.zeros((da, da), dtype=complex)
    for i in range(da):
        for j in range(da):
            out[i, j] = sum(m[i * db + k, j * db + k] for k in range(db))
    return out


def brute_partial_transpose_b(m, da, db):
    out = np.zeros_like(m)
    for i in range(da):
        for j in range(da):
            for k in range(db):
                for l in range(db):
                    out[i * db + k, j * db + l] = m[i * db + l, j * db + k]
    return out


def brute_realign(m, da, db):
    out = np.zeros((da * da, db * db), dtype=complex)
    for i in range(da):
        for j in range(da):
            for k in range(db):
                for l in range(db):
                    out[i + da * j, k + db * l] = m[i * db + k, j * db + l]
    return out


class TestEigenvalues:
    def test_identity(self):
        np.testing.assert_allclose(hermitian_eigenvalues(np.eye(3)), [1, 1, 1])

    def test_diagonal(self):
        ev = hermitian_eigenvalues(np.diag([1, 1, -2]) / S6)
        np.testing.assert_allclose(ev, [-2 / S6, 1 / S6, 1 / S6], atol=1e-15)

    def test_gell_mann_offdiagonal(self):
        g = np.array([[0, 1, 0], [1, 0, 0], [0, 0, 0]]) / S2
        np.testing.assert_allclose(hermitian_eigenvalues(g), [-1 / S2, 0, 1 / S2], atol=1e-15)

    def test_errors(self):
        with pytest.raises(NonHermitian):
            hermitian_eigenvalues(np.array([[0, 1], [0, 0]]))
        with pytest.raises(NonSquare):
            hermitian_eigenvalues(np.ones((2, 3)))

    def test_reconstruction_and_unitary_invariance(self, rng):
        for d in (2, 3, 5, 9):
            h = random_hermitian(rng, d)
            w, v = np.linalg.eigh(h)
            assert np.linalg.norm(h - v @ np.diag(w) @ v.conj().T) <= 1e-10 * max(1, np.linalg.norm(h))
            u = random_unitary(d, rng)
            np.testing.assert_allclose(hermitian_eigenvalues(u @ h @ u.conj().T),
                                       hermitian_eigenvalues(h), atol=1e-9)


class TestTraceNorm:
    def test_examples(self):
        assert trace_norm(np.diag([3, -4])) == pytest.approx(7)
        assert trace_norm(np.ones((2, 2))) == pytest.approx(2)
        assert trace_norm(np.zeros((0, 0))) == 0

    def test_rank_one(self, rng):
        u, v = random_complex(rng, 4), random_complex(rng, 6)
        assert trace_norm(np.outer(u, v)) == pytest.approx(np.linalg.norm(u) * np.linalg.norm(v))

    def test_unitary_invariance_and_adjoint(self, rng):
        m = random_complex(rng, (5, 5))
        u, v = random_unitary(5, rng), random_unitary(5, rng)
        assert trace_norm(u @ m @ v) == pytest.approx(trace_norm(m), abs=1e-9)
        assert trace_norm(m.conj().T) == pytest.approx(trace_norm(m), abs=1e-12)

    @settings(max_examples=60, deadline=None)
    @given(rows=st.integers(1, 12), cols=st.integers(1, 12), seed=st.integers(0, 2**32 - 1))
    def test_svd_matches_gram_path(self, rows, cols, seed):
        m = random_complex(np.random.default_rng(seed), (rows, cols))
        sv = singular_values(m, "svd")
        gram = singular_values(m, "gram")
        np.testing.assert_allclose(sv, gram, atol=1e-9)
        # independent oracle on the smaller Gram matrix, so no spurious zero modes
        g = m.conj().T @ m if cols <= rows else m @ m.conj().T
        oracle = np.sum(np.sqrt(np.clip(np.linalg.eigvals(g).real, 0, None)))
        assert trace_norm(m) == pytest.approx(oracle, abs=1e-9)


class TestKron:
    def test_examples(self, rng):
        np.testing.assert_array_equal(kron(np.eye(2), np.eye(3)), np.eye(6))
        np.testing.assert_array_equal(kron(np.diag([1, 2]), np.diag([3, 4])), np.diag([3, 4, 6, 8]))
        a, b = random_complex(rng, (3, 3)), random_complex(rng, (3, 3))
        assert np.trace(kron(a, b)) == pytest.approx(np.trace(a) * np.trace(b))

    def test_index_convention(self):
        e = np.eye(3)
        # |i>|j> -> row 3i + j
        v = kron(e[:, [1]], e[:, [2]])
        assert np.argmax(v) == 3 * 1 + 2


class TestPartialTrace:
    def test_product_state(self, rng):
        ra, rb = random_hermitian(rng, 3), random_hermitian(rng, 3)
        ra, rb = ra @ ra, rb @ rb
        ra, rb = ra / np.trace(ra), rb / np.trace(rb)
        m = np.kron(ra, rb)
        np.testing.assert_allclose(partial_trace(m, [3, 3], [0]), ra, atol=1e-12)
        np.testing.assert_allclose(partial_trace(m, [3, 3], [1]), rb, atol=1e-12)

    def test_maximally_mixed_and_bell(self):
        np.testing.assert_allclose(partial_trace(np.eye(9) / 9, [3, 3], [1]), np.eye(3) / 3)
        for keep in (0, 1):
            np.testing.assert_allclose(partial_trace(bell(3), [3, 3], [keep]), np.eye(3) / 3,
                                       atol=1e-15)

    def test_matches_index_summation(self, rng):
        m = random_complex(rng, (6, 6))
        np.testing.assert_allclose(partial_trace(m, [2, 3], [0]), brute_partial_trace_b(m, 2, 3))

    def test_tripartite_consistency(self, rng):
        m = random_complex(rng, (12, 12))
        ab = partial_trace(m, [2, 3, 2], [0, 1])
        np.testing.assert_allclose(partial_trace(ab, [2, 3], [1]),
                                   partial_trace(m, [2, 3, 2], [1]), atol=1e-12)
        assert np.trace(ab) == pytest.approx(np.trace(m), abs=1e-12)

    def test_errors(self):
        with pytest.raises(DimensionMismatch):
            partial_trace(np.eye(6), [3, 3], [0])
        with pytest.raises(DimensionMismatch):
            partial_trace(np.eye(9), [3, 3], [])


class TestPartialTranspose:
    def test_product(self, rng):
        a, b = random_complex(rng, (2, 2)), random_complex(rng, (3, 3))
        np.testing.assert_allclose(partial_transpose(np.kron(a, b), [2, 3], 1), np.kron(a, b.T))
        np.testing.assert_allclose(partial_transpose(np.kron(a, b), [2, 3], 0), np.kron(a.T, b))

    def test_involution_and_oracle(self, rng):
        m = random_complex(rng, (6, 6))
        np.testing.assert_allclose(partial_transpose(partial_transpose(m, [2, 3]), [2, 3]), m)
        np.testing.assert_allclose(partial_transpose(m, [2, 3]), brute_partial_transpose_b(m, 2, 3))

    def test_bell_min_eigenvalue(self):
        pt = brute_partial_transpose_b(bell(2), 2, 2)
        assert np.linalg.eigvalsh(pt)[0] == pytest.approx(-0.5)
        assert hermitian_eigenvalues(partial_transpose(bell(2), [2, 2]))[0] == pytest.approx(-0.5)


class TestVecRealign:
    def test_vec(self, rng):
        np.testing.assert_array_equal(vec(np.eye(2)), [1, 0, 0, 1])
        e12 = np.zeros((2, 2))
        e12[0, 1] = 1
        np.testing.assert_array_equal(vec(e12), [0, 0, 1, 0])
        m = random_complex(rng, (3, 4))
        assert np.linalg.norm(vec(m)) == pytest.approx(np.linalg.norm(m))
        np.testing.assert_array_equal(unvec(vec(m), 3, 4), m)

    def test_realign_product_convention(self, rng):
        worst = 0.0
        for _ in range(100):
            a, b = random_complex(rng, (2, 2)), random_complex(rng, (3, 3))
            worst = max(worst, np.max(np.abs(realign(np.kron(a, b), [2, 3])
                                              - np.outer(vec(a), vec(b)))))
        assert worst <= 1e-12

    def test_realign_oracle_and_linearity(self, rng):
        m1, m2 = random_complex(rng, (6, 6)), random_complex(rng, (6, 6))
        np.testing.assert_allclose(realign(m1, [2, 3]), brute_realign(m1, 2, 3))
        np.testing.assert_allclose(realign(2 * m1 - 3j * m2, [2, 3]),
                                   2 * realign(m1, [2, 3]) - 3j * realign(m2, [2, 3]))

    def test_realign_norms(self):
        assert trace_norm(realign(np.eye(4) / 4, [2, 2])) == pytest.approx(0.5)
        for d in (2, 3):
            assert trace_norm(brute_realign(bell(d), d, d)) == pytest.approx(d)
            assert trace_norm(realign(bell(d), [d, d])) == pytest.approx(d)
