import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import qmonogamy as qm
from qmonogamy.qlinalg import fingerprint


def bell_state():
    return qm.state_family("Bell", 2)


def test_partial_trace_bell_marginal_is_maximally_mixed():
    rho = qm.partial_trace(bell_state(), {0})
    np.testing.assert_allclose(rho.matrix, np.eye(2) / 2, atol=1e-14)
    assert rho.qubit_labels == (0,)


def test_partial_trace_product_state():
    rho = qm.partial_trace(qm.state_family("product", 2), {1})
    expected = np.zeros((2, 2))
    expected[0, 0] = 1.0
    np.testing.assert_allclose(rho.matrix, expected, atol=1e-14)


def test_partial_trace_w3_pair():
    # Hand expansion of the nine amplitude products: the (q2=0) block gives
    # the symmetric one-excitation pair state with weight 2/3, the (q2=1)
    # block leaves |00> with weight 1/3.
    plus = np.zeros(4, dtype=complex)
    plus[1] = plus[2] = 1 / np.sqrt(2)
    e00 = np.zeros(4, dtype=complex)
    e00[0] = 1.0
    expected = (2 / 3) * np.outer(plus, plus.conj()) + (1 / 3) * np.outer(e00, e00.conj())
    rho = qm.partial_trace(qm.state_family("W", 3), {0, 1})
    np.testing.assert_allclose(rho.matrix, expected, atol=1e-12)


def test_partial_trace_rejects_bad_keep():
    psi = qm.state_family("GHZ", 3)
    with pytest.raises(ValueError):
        qm.partial_trace(psi, set())
    with pytest.raises(ValueError):
        qm.partial_trace(psi, {3})
    rho = qm.partial_trace(psi, {0, 1})
    with pytest.raises(ValueError):
        qm.partial_trace(rho, {2})


@settings(deadline=None, max_examples=40)
@given(seed=st.integers(0, 10**6), n=st.integers(3, 6))
def test_partial_trace_composition(seed, n):
    psi = qm.haar_random_pure(n, seed)
    via_pair = qm.partial_trace(qm.partial_trace(psi, {0, 1}), {0})
    direct = qm.partial_trace(psi, {0})
    assert np.max(np.abs(via_pair.matrix - direct.matrix)) < 1e-12


def test_pure_bipartite_marginal_spectra_match():
    for seed in range(20):
        for n in (2, 3, 5):
            psi = qm.haar_random_pure(n, seed)
            cut = {0} if n == 2 else {0, 1}
            rest = set(range(n)) - cut
            wa, _ = qm.hermitian_eig(qm.partial_trace(psi, cut).matrix)
            wb, _ = qm.hermitian_eig(qm.partial_trace(psi, rest).matrix)
            k = min(wa.size, wb.size)
            assert np.max(np.abs(wa[:k] - wb[:k])) < 1e-10
            assert all(abs(x) < 1e-10 for x in wa[k:]) and all(
                abs(x) < 1e-10 for x in wb[k:]
            )


def test_hermitian_eig_examples():
    w, _ = qm.hermitian_eig(np.eye(2) / 2)
    np.testing.assert_allclose(w, [0.5, 0.5], atol=1e-14)

    w, _ = qm.hermitian_eig(np.diag([3.0, 1.0, 2.0, 0.0]))
    np.testing.assert_allclose(w, [3, 2, 1, 0], atol=1e-14)

    pauli_x = np.array([[0, 1], [1, 0]], dtype=complex)
    w, v = qm.hermitian_eig(pauli_x)
    np.testing.assert_allclose(w, [1, -1], atol=1e-14)
    plus = np.array([1, 1]) / np.sqrt(2)
    minus = np.array([1, -1]) / np.sqrt(2)
    assert abs(abs(np.vdot(plus, v[:, 0])) - 1) < 1e-12
    assert abs(abs(np.vdot(minus, v[:, 1])) - 1) < 1e-12


def test_hermitian_eig_reconstruction_and_orthonormality():
    rng = np.random.default_rng(11)
    for n in (2, 4, 8, 16):
        g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        h = (g + g.conj().T) / 2
        w, v = qm.hermitian_eig(h)
        assert np.all(np.diff(w) <= 1e-15)
        assert np.max(np.abs(h - (v * w) @ v.conj().T)) < 1e-10
        assert np.max(np.abs(v.conj().T @ v - np.eye(n))) < 1e-10


def test_hermitian_eig_rejects_non_hermitian():
    with pytest.raises(ValueError):
        qm.hermitian_eig(np.array([[0.0, 1.0], [0.0, 0.0]]))
    with pytest.raises(ValueError):
        qm.hermitian_eig(np.ones((2, 3)))


def test_psd_sqrt_examples():
    np.testing.assert_allclose(qm.psd_sqrt(np.eye(4) / 4), np.eye(4) / 2, atol=1e-12)

    v = np.array([1, 1j, 0, -1]) / np.sqrt(3)
    proj = np.outer(v, v.conj())
    np.testing.assert_allclose(qm.psd_sqrt(proj), proj, atol=1e-11)

    np.testing.assert_allclose(
        qm.psd_sqrt(np.diag([4.0, 1.0, 0.0, 0.0])), np.diag([2.0, 1.0, 0.0, 0.0]), atol=1e-12
    )


def test_psd_sqrt_squares_back():
    rng = np.random.default_rng(7)
    for _ in range(1000):
        g = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        mat = g @ g.conj().T
        mat /= np.trace(mat).real
        s = qm.psd_sqrt(mat)
        assert np.max(np.abs(s @ s - mat)) < 1e-9


def test_psd_sqrt_rejects_indefinite():
    with pytest.raises(ValueError):
        qm.psd_sqrt(np.diag([1.5, -0.5]))


def test_haar_random_pure_deterministic():
    a = qm.haar_random_pure(3, 7)
    b = qm.haar_random_pure(3, 7)
    np.testing.assert_array_equal(a.amplitudes, b.amplitudes)
    c = qm.haar_random_pure(3, 8)
    assert np.max(np.abs(a.amplitudes - c.amplitudes)) > 1e-3


@settings(deadline=None, max_examples=40)
@given(seed=st.integers(0, 10**9))
def test_haar_random_pure_normalized(seed):
    psi = qm.haar_random_pure(2, seed)
    assert abs(np.sum(np.abs(psi.amplitudes) ** 2) - 1) < 1e-12


def test_haar_single_qubit_weight_symmetry():
    total = 0.0
    for seed in range(10_000):
        total += abs(qm.haar_random_pure(1, seed).amplitudes[0]) ** 2
    assert 0.48 < total / 10_000 < 0.52


def test_haar_random_pure_range():
    with pytest.raises(ValueError):
        qm.haar_random_pure(0, 1)
    with pytest.raises(ValueError):
        qm.haar_random_pure(13, 1)


def test_state_family_examples():
    w3 = qm.state_family("W", 3)
    expected = np.zeros(8, dtype=complex)
    expected[[1, 2, 4]] = 1 / np.sqrt(3)
    np.testing.assert_allclose(w3.amplitudes, expected, atol=1e-15)

    ghz4 = qm.state_family("GHZ", 4)
    assert abs(ghz4.amplitudes[0] - 1 / np.sqrt(2)) < 1e-15
    assert abs(ghz4.amplitudes[15] - 1 / np.sqrt(2)) < 1e-15
    assert np.sum(np.abs(ghz4.amplitudes) > 0) == 2

    bell = qm.state_family("Bell", 2)
    np.testing.assert_allclose(
        bell.amplitudes, np.array([1, 0, 0, 1]) / np.sqrt(2), atol=1e-15
    )

    with pytest.raises(ValueError):
        qm.state_family("Bell", 3)
    with pytest.raises(ValueError):
        qm.state_family("cluster", 4)
    with pytest.raises(ValueError):
        qm.state_family("W", 1)


def test_sample_decomposition_of_pure_state():
    rho = bell_state().density_matrix()
    d = qm.sample_decomposition(rho, 4, seed=3)
    assert abs(d.weights.sum() - 1) < 1e-12
    target = bell_state().amplitudes
    for j in range(4):
        if d.weights[j] > 1e-12:
            assert abs(abs(np.vdot(target, d.states[j])) - 1) < 1e-10


def test_sample_decomposition_identity_unitary():
    rho = qm.DensityMatrix((0, 1), np.eye(4) / 4)
    d = qm.sample_decomposition(rho, 4, unitary=np.eye(4))
    np.testing.assert_allclose(d.weights, np.full(4, 0.25), atol=1e-14)
    np.testing.assert_allclose(np.abs(d.states), np.eye(4), atol=1e-14)


def test_sample_decomposition_reconstructs():
    for seed in range(100):
        psi = qm.haar_random_pure(4, seed)
        rho = qm.partial_trace(psi, {0, 1})
        d = qm.sample_decomposition(rho, 6, seed=seed)
        assert np.max(np.abs(d.reconstruct() - rho.matrix)) < 1e-10


def test_sample_decomposition_size_below_rank():
    rho = qm.DensityMatrix((0, 1), np.eye(4) / 4)
    with pytest.raises(ValueError):
        qm.sample_decomposition(rho, 3, seed=0)


def test_apply_single_qubit_unitary_matches_kron():
    u = qm.haar_random_unitary(2, 9)
    psi = qm.haar_random_pure(2, 5)
    on_q0 = qm.apply_single_qubit_unitary(psi, 0, u)
    np.testing.assert_allclose(
        on_q0.amplitudes, np.kron(np.eye(2), u) @ psi.amplitudes, atol=1e-12
    )
    on_q1 = qm.apply_single_qubit_unitary(psi, 1, u)
    np.testing.assert_allclose(
        on_q1.amplitudes, np.kron(u, np.eye(2)) @ psi.amplitudes, atol=1e-12
    )


def test_haar_random_unitary_is_unitary():
    for dim in (2, 4, 6):
        u = qm.haar_random_unitary(dim, 13)
        assert np.max(np.abs(u.conj().T @ u - np.eye(dim))) < 1e-12


def test_permute_qubits():
    psi = qm.PureState(2, np.array([0, 1, 0, 0], dtype=complex))  # qubit 0 excited
    swapped = qm.permute_qubits(psi, [1, 0])
    np.testing.assert_allclose(swapped.amplitudes, [0, 0, 1, 0], atol=1e-15)

    state = qm.haar_random_pure(4, 17)
    perm = [2, 0, 3, 1]
    once = qm.permute_qubits(state, perm)
    inv = [perm.index(i) for i in range(4)]
    np.testing.assert_allclose(
        qm.permute_qubits(once, inv).amplitudes, state.amplitudes, atol=1e-15
    )
    with pytest.raises(ValueError):
        qm.permute_qubits(state, [0, 0, 1, 2])


def test_state_file_roundtrip(tmp_path):
    psi = qm.haar_random_pure(3, 21)
    path = tmp_path / "state.json"
    qm.write_state_file(path, psi)
    loaded = qm.read_state_file(path)
    assert loaded.n_qubits == 3
    np.testing.assert_array_equal(loaded.amplitudes, psi.amplitudes)


def test_state_file_rejects_non_normalized(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"n_qubits": 1, "amplitudes": [[0.98, 0.0], [0.0, 0.0]]}')
    with pytest.raises(ValueError, match="norm"):
        qm.read_state_file(path)


def test_state_file_rejects_malformed(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"n_qubits": 2, "amplitudes": [[1.0, 0.0]]}')
    with pytest.raises(ValueError):
        qm.read_state_file(path)
    path.write_text('{"amplitudes": []}')
    with pytest.raises(ValueError, match="malformed"):
        qm.read_state_file(path)


def test_pure_state_validation():
    with pytest.raises(ValueError, match="norm"):
        qm.PureState(1, np.array([0.7, 0.7]))
    with pytest.raises(ValueError):
        qm.PureState(2, np.array([1.0, 0.0]))


def test_density_matrix_validation():
    with pytest.raises(ValueError, match="Hermitian"):
        qm.DensityMatrix((0,), np.array([[0.5, 0.5], [0.0, 0.5]]))
    with pytest.raises(ValueError, match="trace"):
        qm.DensityMatrix((0,), np.eye(2))


def test_fingerprint_stability():
    a = qm.haar_random_pure(2, 1).amplitudes
    assert fingerprint(a) == fingerprint(a.copy())
    assert fingerprint(a) != fingerprint(qm.haar_random_pure(2, 2).amplitudes)
    assert len(fingerprint(a)) == 16
