import math

import numpy as np
import pytest

from qps import channels as ch
from qps import convolution as cv
from qps import mean_magic as mm
from qps import states, weyl
from qps.errors import NotTracePreservingError, UnsupportedGError


def test_choi_constructions():
    ident = ch.identity_channel(3, 1)
    phi = np.zeros(9, complex)
    for j in range(3):
        phi[j * 3 + j] = 1 / np.sqrt(3)
    assert np.abs(ident.choi.mat - np.outer(phi, phi.conj())).max() < 1e-12
    r = ch.depolarizing_channel(3, 1)
    assert np.abs(r.choi.mat - np.eye(9) / 9).max() < 1e-14
    with pytest.raises(NotTracePreservingError):
        ch.choi_from_kraus([0.5 * np.eye(3)], 3, 1)


def test_channel_apply():
    rho = states.random_state(1, 3, seed=2)
    U = weyl.random_clifford(1, 3, 5, seed=1)
    uc = ch.unitary_channel(U, 3, 1)
    assert np.abs(ch.channel_apply(uc, rho).mat - U @ rho.mat @ U.conj().T).max() < 1e-12
    c = ch.random_channel(1, 3, seed=3)
    direct = sum(k @ rho.mat @ k.conj().T for k in c.kraus)
    assert np.abs(ch.channel_apply(c, rho).mat - direct).max() < 1e-10
    r = ch.depolarizing_channel(3, 1)
    assert np.abs(ch.channel_apply(r, rho).mat - np.eye(3) / 3).max() < 1e-12


def test_convolve_channels_routes_agree():
    # internal cross-check raises on any disagreement beyond 1e-9
    for seed in range(4):
        c1 = ch.random_channel(1, 3, seed=seed)
        c2 = ch.random_channel(1, 3, seed=50 + seed)
        for G in ([[1, 1], [1, 2]], [[0, 1], [1, 1]], [[1, 0], [1, 1]]):
            out = ch.convolve_channels(c1, c2, G)
            D = 3
            marg = np.einsum("ajbj->ab", out.choi.mat.reshape(D, D, D, D))
            assert np.abs(marg - np.eye(D) / D).max() < 1e-9
    with pytest.raises(UnsupportedGError):
        ch.convolve_channels(c1, c2, [[1, 0], [0, 1]])


def test_depolarizing_absorbs():
    c = ch.random_channel(1, 3, seed=7)
    r = ch.depolarizing_channel(3, 1)
    out = ch.convolve_channels(c, r, [[0, 1], [1, 1]])  # odd-parity positive
    assert np.abs(out.choi.mat - np.eye(9) / 9).max() < 1e-10
    out = ch.convolve_channels(r, c, [[1, 0], [1, 1]])  # even-parity positive
    assert np.abs(out.choi.mat - np.eye(9) / 9).max() < 1e-10


def test_weyl_channels_compose():
    G = [[1, 1], [1, 2]]
    pm = cv.classify(G, 3)
    x1, y1, x2, y2 = 1, 2, 2, 1
    out = ch.convolve_channels(
        ch.weyl_conjugation_channel((x1, y1), 3), ch.weyl_conjugation_channel((x2, y2), 3), G
    )
    xc = (pm.g00 * x1 + pm.g01 * x2) % 3
    yc = (pm.n_inv * pm.g11 * y1 - pm.n_inv * pm.g10 * y2) % 3
    pred = ch.weyl_conjugation_channel((xc, yc), 3)
    assert np.abs(out.choi.mat - pred.choi.mat).max() < 1e-10


def test_identity_convolution_reproduces_state_example():
    # id ⊠ id applied to |0><0| at d = 7, (s,t) = (2,2) gives back |0><0|
    ident = ch.identity_channel(7, 1)
    out = ch.convolve_channels(ident, ident, cv.beam_splitter_params(2, 2, 7), cross_check=False)
    s0 = states.basis_state(0, 7)
    assert np.abs(ch.channel_apply(out, s0).mat - s0.mat).max() < 1e-10


def test_mean_channel():
    tch = ch.unitary_channel(weyl.t_gate(), 2, 1)
    mt = ch.mean_channel(tch)
    assert mm.is_msps(mt.choi)
    cl = ch.unitary_channel(weyl.random_clifford(1, 3, 6, seed=7), 3, 1)
    assert np.abs(ch.mean_channel(cl).choi.mat - cl.choi.mat).max() < 1e-9
    r = ch.depolarizing_channel(3, 1)
    assert np.abs(ch.mean_channel(r).choi.mat - r.choi.mat).max() < 1e-12


def test_channel_entropy():
    ident = ch.identity_channel(3, 1)
    r = ch.depolarizing_channel(3, 1)
    for a in (0.5, 1, 2, math.inf):
        assert abs(ch.channel_entropy(ident, a) + math.log2(3)) < 1e-9
        assert abs(ch.channel_entropy(r, a) - math.log2(3)) < 1e-9
    # convolution increases channel entropy (proxy), positive G
    c1 = ch.random_channel(1, 3, seed=1)
    c2 = ch.random_channel(1, 3, seed=2)
    out = ch.convolve_channels(c1, c2, cv.hadamard_params(3))
    for a in (0.5, 1, 2, math.inf):
        assert ch.channel_entropy(out, a) >= max(
            ch.channel_entropy(c1, a), ch.channel_entropy(c2, a)
        ) - 1e-8


def test_channel_second_law_proxy():
    bs = cv.beam_splitter_params(2, 2, 7)
    lam = ch.random_mixed_unitary_channel(1, 7, seed=21)
    cur = lam
    prev = None
    for _ in range(5):
        h = ch.channel_entropy(cur, 1)
        if prev is not None:
            assert h >= prev - 1e-8
        prev = h
        cur = ch.channel_from_choi(cv.convolve(cur.choi, lam.choi, bs))


def test_mean_channel_extremality_proxy():
    lam = ch.random_mixed_unitary_channel(1, 7, seed=5)
    mean = ch.mean_channel(lam)
    for a in (0.5, 1, 2, math.inf):
        assert ch.channel_entropy(mean, a) >= ch.channel_entropy(lam, a) - 1e-9


def test_zero_mean_channel_and_corollary(t_state):
    ident = ch.identity_channel(3, 1)
    assert ch.is_zero_mean_channel(ident)
    assert ch.channel_magic_gap(ident) == 0.0
    tch = ch.unitary_channel(weyl.t_gate(), 2, 1)
    assert abs(ch.channel_magic_gap(tch) - (1 - 2**-0.5)) < 1e-12
    wch = ch.weyl_conjugation_channel((1, 0), 3)
    assert not ch.is_zero_mean_channel(wch)
    # corollary: zero mean iff all Weyl-image char values in {0, 1}
    for channel, expect in ((ident, True), (wch, False)):
        vals = ch.weyl_image_char_values(channel)
        in01 = all(
            (abs(v) < 1e-8 or abs(v - 1) < 1e-6)
            for tab in vals.values()
            for v in np.ravel(tab)
        )
        assert in01 == expect
    label, shifted = ch.zero_mean_channel_shift(wch)
    assert ch.is_zero_mean_channel(shifted)


def test_channel_clt():
    # stabilizer channel: distance identically zero
    cl = ch.unitary_channel(weyl.random_clifford(1, 7, 6, seed=1), 7, 1)
    rep = ch.channel_clt(cl, (2, 2), 4)
    assert rep.ok and all(row.distance < 1e-9 for row in rep.rows)
    # random zero-mean channel: geometric decay within the bound
    lam = ch.random_mixed_unitary_channel(1, 7, seed=11)
    rep = ch.channel_clt(lam, (2, 2), 6)
    assert rep.ok
    assert rep.rows[-1].distance <= rep.rows[-1].bound + 1e-9
    assert rep.rows[-1].diamond_bound == pytest.approx(49 * rep.rows[-1].bound)


def test_unitary_min_entropy():
    rep = ch.check_unitary_min_entropy(cv.hadamard_params(3), 3, 1, seed=0, pairs=4)
    assert rep.ok
    assert abs(rep.matched_max + math.log2(3)) < 1e-8
    assert rep.generic_min > -math.log2(3) + 1e-4
    # d = 2 sufficiency direction through the CNOT family
    rep = ch.check_unitary_min_entropy(cv.cnot_family(1), 2, 1, seed=1, pairs=4)
    assert abs(rep.matched_max + 1.0) < 1e-8


def test_stabilizer_channel_closure():
    def stab_channel(seed):
        rng = np.random.default_rng(seed)
        weights = rng.dirichlet(np.ones(3))
        kraus = [
            np.sqrt(w) * weyl.random_clifford(1, 3, 6, seed=rng.integers(2**31))
            for w in weights
        ]
        return ch.choi_from_kraus(kraus, 3, 1)

    for seed in range(2):
        a, b = stab_channel(seed), stab_channel(100 + seed)
        out = ch.convolve_channels(a, b, cv.hadamard_params(3))
        for st, _ in states.enumerate_pure_stabilizers(1, 3):
            img = ch.channel_apply(out, st)
            assert states.wigner(img).values.min() > -1e-10
