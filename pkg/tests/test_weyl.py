import numpy as np
import pytest

from qps import weyl
from qps.errors import NotUnitaryError, SingularGError, UnsupportedDimensionError
from qps.phase_space import PhasePoint, make_point


def test_weyl_operator_basics():
    assert np.abs(weyl.weyl_operator(make_point(0, 0, 3), 3) - np.eye(3)).max() == 0
    z = weyl.weyl_operator(make_point(1, 0, 3), 3)
    om = np.exp(2j * np.pi / 3)
    assert np.abs(z - np.diag([1, om, om**2])).max() < 1e-12
    # qubit Weyls are I, X, Y, Z up to labels
    y = weyl.weyl_operator(make_point(1, 1, 2), 2)
    assert np.abs(y - np.array([[0, -1j], [1j, 0]])).max() < 1e-12


@pytest.mark.parametrize("d", [3, 5, 7])
def test_commutation_odd(d):
    rng = np.random.default_rng(d)
    for _ in range(25):
        x = PhasePoint.from_vec(rng.integers(0, d, 2))
        y = PhasePoint.from_vec(rng.integers(0, d, 2))
        lhs = weyl.weyl_operator(x, d) @ weyl.weyl_operator(y, d)
        s = make_point(x.p[0] + y.p[0], x.q[0] + y.q[0], d)
        rhs = weyl.commutation_phase(x, y, d) * weyl.weyl_operator(s, d)
        assert np.abs(lhs - rhs).max() < 1e-12


def test_commutation_qubit_literal():
    # the qubit formula needs unreduced integer labels: w(1,2) = -Z, not Z
    assert np.abs(weyl.weyl_literal([1], [2], 2) + weyl.zmat(2)).max() < 1e-12
    for n in (1, 2):
        rng = np.random.default_rng(n)
        for _ in range(40):
            x = PhasePoint.from_vec(rng.integers(0, 2, 2 * n))
            y = PhasePoint.from_vec(rng.integers(0, 2, 2 * n))
            lhs = weyl.weyl_operator(x, 2) @ weyl.weyl_operator(y, 2)
            ps = np.array(x.p) + np.array(y.p)
            qs = np.array(x.q) + np.array(y.q)
            rhs = weyl.commutation_phase(x, y, 2) * weyl.weyl_literal(ps, qs, 2)
            assert np.abs(lhs - rhs).max() < 1e-12


@pytest.mark.parametrize("d,n", [(2, 1), (3, 1), (5, 1), (2, 2), (3, 2), (5, 2)])
def test_orthonormality(d, n):
    D = d**n
    vecs = np.indices((d,) * (2 * n)).reshape(2 * n, -1).T
    mats = np.stack([weyl.weyl_operator(PhasePoint.from_vec(v), d).reshape(-1) for v in vecs])
    gram = (mats.conj() @ mats.T) / D
    assert np.abs(gram - np.eye(len(vecs))).max() < 1e-12


def test_parity_and_phase_point():
    t0 = weyl.parity_operator(3, 1)
    want = np.zeros((3, 3), complex)
    for j in range(3):
        want[(-j) % 3, j] = 1
    assert np.abs(t0 - want).max() == 0
    # definitional symplectic sum agrees with the covariance construction
    for p in range(3):
        for q in range(3):
            x = make_point(p, q, 3)
            acc = np.zeros((3, 3), complex)
            for u in range(3):
                for v in range(3):
                    y = make_point(u, v, 3)
                    from qps.phase_space import symplectic_inner
                    acc += complex(weyl.chi(symplectic_inner(x, y, 3), 3)) * weyl.weyl_operator(y, 3)
            T = weyl.phase_point_operator(x, 3)
            assert np.abs(acc / 3 - T).max() < 1e-12
            assert np.abs(T - T.conj().T).max() < 1e-12
    # orthonormality of the T basis
    Ts = [weyl.phase_point_operator(make_point(p, q, 3), 3) for p in range(3) for q in range(3)]
    for i, A in enumerate(Ts):
        for j, B in enumerate(Ts):
            val = np.trace(A.conj().T @ B).real / 3
            assert abs(val - (1.0 if i == j else 0.0)) < 1e-12
    with pytest.raises(UnsupportedDimensionError):
        weyl.phase_point_operator(make_point(0, 0, 2), 2)


def test_key_unitary_examples():
    assert np.abs(weyl.key_unitary(np.eye(2, dtype=int), 1, 3) - np.eye(9)).max() == 0
    U = weyl.key_unitary([[1, 0], [1, 1]], 1, 2)
    cnot21 = np.zeros((4, 4), complex)
    for i in range(2):
        for j in range(2):
            cnot21[((i + j) % 2) * 2 + j, i * 2 + j] = 1
    assert np.abs(U - cnot21).max() == 0
    with pytest.raises(SingularGError):
        weyl.key_unitary([[1, 1], [1, 1]], 1, 2)


@pytest.mark.parametrize("G", [[[1, 1], [1, 2]], [[2, 1], [1, 1]], [[0, 1], [1, 1]], [[1, 0], [1, 1]]])
def test_key_unitary_weyl_covariance(G):
    d = 3
    from qps.phase_space import field_inv

    g = np.array(G) % d
    det = int(g[0, 0] * g[1, 1] - g[0, 1] * g[1, 0]) % d
    N = field_inv(det, d)
    U = weyl.key_unitary(G, 1, d)
    for x1 in range(d):
        for y1 in range(d):
            for x2 in range(d):
                for y2 in range(d):
                    w1 = weyl.weyl_operator(make_point(x1, y1, d), d)
                    w2 = weyl.weyl_operator(make_point(x2, y2, d), d)
                    lhs = U @ np.kron(w1, w2) @ U.conj().T
                    a = make_point(g[0, 0] * x1 + g[0, 1] * x2, N * (g[1, 1] * y1 - g[1, 0] * y2), d)
                    b = make_point(g[1, 0] * x1 + g[1, 1] * x2, N * (-g[0, 1] * y1 + g[0, 0] * y2), d)
                    rhs = np.kron(weyl.weyl_operator(a, d), weyl.weyl_operator(b, d))
                    assert np.abs(lhs - rhs).max() < 1e-12


def test_is_weyl_up_to_phase():
    lab = weyl.is_weyl_up_to_phase(weyl.zmat(3), 3, 1)
    assert lab.point == PhasePoint((1,), (0,)) and abs(lab.phase - 1) < 1e-10
    assert weyl.is_weyl_up_to_phase(weyl.fourier_gate(2), 2, 1) is None
    lab = weyl.is_weyl_up_to_phase(np.exp(1j * np.pi / 7) * weyl.xmat(2), 2, 1)
    assert lab.point == PhasePoint((0,), (1,))
    assert abs(lab.phase - np.exp(1j * np.pi / 7)) < 1e-10


def test_is_clifford():
    assert weyl.is_clifford(weyl.weyl_operator(make_point(1, 2, 3), 3), 3, 1)
    assert weyl.is_clifford(weyl.key_unitary([[1, 1], [1, 2]], 1, 3), 3, 2)
    assert not weyl.is_clifford(weyl.t_gate(), 2, 1)
    for d in (2, 3, 5):
        assert weyl.is_clifford(weyl.fourier_gate(d), d, 1)
        assert weyl.is_clifford(weyl.phase_gate(d), d, 1)
    assert weyl.is_clifford(weyl.multiplier_gate(3, 5), 5, 1)
    with pytest.raises(NotUnitaryError):
        weyl.is_clifford(np.diag([1.0, 2.0]).astype(complex), 2, 1)


def test_random_clifford():
    assert np.abs(weyl.random_clifford(1, 3, 0, seed=0) - np.eye(3)).max() == 0
    for seed in range(5):
        U = weyl.random_clifford(2, 3, 9, seed=seed)
        assert weyl.is_clifford(U, 3, 2)
    a = weyl.random_clifford(2, 2, 7, seed=3)
    b = weyl.random_clifford(2, 2, 7, seed=3)
    assert a.tobytes() == b.tobytes()


def test_embed_two_site_matches_kron():
    g = weyl.cnot_gate(2)
    full = weyl.embed_two_site(g, 0, 1, 2, 2)
    assert np.abs(full - g).max() < 1e-12
    # swapping the sites conjugates by SWAP
    swapped = weyl.embed_two_site(g, 1, 0, 2, 2)
    S = np.zeros((4, 4), complex)
    for i in range(2):
        for j in range(2):
            S[j * 2 + i, i * 2 + j] = 1
    assert np.abs(swapped - S @ g @ S).max() < 1e-12
