"""Choi-based channels: convolution, mean channel, entropy proxy, channel CLT.

Channels are stored Choi-first: J = (id ⊗ Λ)|Φ><Φ| on 2n qudits with
Tr_{A'}[J] = I/d^n.  Channel convolution is state convolution of Choi
states; the exact formula E ∘ (Λ1 ⊗ Λ2) ∘ E^{-1} is the independent
cross-check.  Channel Renyi entropy is evaluated on the Choi proxy
H_alpha(J) - n log d.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import config
from .convolution import (
    as_param_matrix,
    beam_splitter_params,
    conv_channel_apply,
    conv_channel_inverse,
    convolve,
)
from .errors import (
    IncompatibleError,
    InternalInconsistencyError,
    NotTracePreservingError,
    UnsupportedGError,
)
from .mean_magic import is_zero_mean, magic_gap, mean_state, zero_mean_shift
from .states import State, char_function, make_state, maximally_mixed
from .weyl import WeylLabel, weyl_operator


@dataclass(frozen=True)
class Channel:
    """An n-qudit channel represented by its Choi state."""

    d: int
    n: int
    choi: State
    kraus: tuple = ()

    @property
    def dim(self) -> int:
        return self.d**self.n


def _check_choi_marginal(choi: State, d: int, n: int) -> None:
    D = d**n
    t = choi.mat.reshape(D, D, D, D)
    marg = np.einsum("ajbj->ab", t)
    if np.abs(marg - np.eye(D) / D).max() > 1e-9:
        raise NotTracePreservingError("Choi marginal Tr_out[J] is not I/d^n")


def channel_from_choi(choi: State, kraus: tuple = ()) -> Channel:
    if choi.n % 2 != 0:
        raise IncompatibleError("a Choi state lives on 2n qudits")
    d, n = choi.d, choi.n // 2
    _check_choi_marginal(choi, d, n)
    return Channel(d=d, n=n, choi=choi, kraus=tuple(kraus))


def choi_from_kraus(kraus, d: int, n: int) -> Channel:
    """J = sum_K (I ⊗ K) |Φ><Φ| (I ⊗ K)^dag; completeness checked."""
    D = d**n
    ks = [np.asarray(k, dtype=complex) for k in kraus]
    comp = sum(k.conj().T @ k for k in ks)
    if np.abs(comp - np.eye(D)).max() > 1e-9:
        raise NotTracePreservingError("Kraus operators do not sum to the identity")
    J = np.zeros((D * D, D * D), dtype=complex)
    for k in ks:
        # (I ⊗ K)|Φ> as a D x D matrix over (row, out) indices: K^T / sqrt(D)
        v = (k.T / math.sqrt(D)).reshape(-1)
        J += np.outer(v, v.conj())
    choi = make_state(J, d, 2 * n)
    return channel_from_choi(choi, kraus=tuple(ks))


def identity_channel(d: int, n: int) -> Channel:
    return choi_from_kraus([np.eye(d**n)], d, n)


def depolarizing_channel(d: int, n: int) -> Channel:
    """The completely depolarizing R(rho) = Tr[rho] I/d^n; Choi = I/d^2n."""
    choi = maximally_mixed(d, 2 * n)
    return channel_from_choi(choi)


def unitary_channel(U: np.ndarray, d: int, n: int) -> Channel:
    return choi_from_kraus([U], d, n)


def weyl_conjugation_channel(point, d: int, n: int | None = None) -> Channel:
    from .phase_space import PhasePoint

    if not isinstance(point, PhasePoint):
        point = PhasePoint.from_vec(point)
    if n is None:
        n = point.n
    return unitary_channel(weyl_operator(point, d), d, n)


def channel_apply(channel: Channel, rho: State) -> State:
    """Λ(rho) = d^n Tr_A[J (rho^T ⊗ I)]."""
    if (rho.d, rho.n) != (channel.d, channel.n):
        raise IncompatibleError("state and channel live on different systems")
    D = channel.dim
    t = channel.choi.mat.reshape(D, D, D, D)
    out = D * np.einsum("iI,ioIO->oO", rho.mat, t)
    return make_state(out, channel.d, channel.n)


def _apply_pair_to_joint_mat(ch1: Channel, ch2: Channel, joint: np.ndarray) -> np.ndarray:
    """(Λ1 ⊗ Λ2) on a joint 2n-qudit matrix, via the Choi tensors."""
    D = ch1.dim
    t1 = ch1.choi.mat.reshape(D, D, D, D)
    t2 = ch2.choi.mat.reshape(D, D, D, D)
    rho = joint.reshape(D, D, D, D)  # (a, b | a', b') row/col pairs
    out = D * D * np.einsum("abAB,aoAO,bpBP->opOP", rho, t1, t2)
    return out.reshape(D * D, D * D)


def convolve_channels(ch1: Channel, ch2: Channel, params, cross_check: bool = True) -> Channel:
    """Channel convolution: Choi route, cross-checked by the exact formula.

    The Choi of Λ1 ⊠ Λ2 is J1 ⊠ J2 (state convolution on 2n qudits); the
    exact formula E ∘ (Λ1 ⊗ Λ2) ∘ E^{-1} is recomputed independently and
    the two must agree to 1e-9.  G must be nontrivial so the result is
    again a Choi state.
    """
    if (ch1.d, ch1.n) != (ch2.d, ch2.n):
        raise IncompatibleError("channels live on different systems")
    d, n = ch1.d, ch1.n
    pm = as_param_matrix(params, d)
    if not pm.nontrivial:
        raise UnsupportedGError("channel convolution needs a nontrivial G")
    choi = convolve(ch1.choi, ch2.choi, pm)
    out = channel_from_choi(choi)
    if cross_check:
        exact = _convolve_channels_exact(ch1, ch2, pm)
        gap = np.abs(exact.choi.mat - choi.mat).max()
        if gap > 1e-9:
            raise InternalInconsistencyError(
                f"Choi and exact-formula routes disagree by {gap:.2e}"
            )
    return out


def _convolve_channels_exact(ch1: Channel, ch2: Channel, pm) -> Channel:
    """Choi state of E ∘ (Λ1 ⊗ Λ2) ∘ E^{-1} built column by column."""
    from .convolution import _e_apply_mat, _e_inverse_mat

    d, n = ch1.d, ch1.n
    D = d**n
    J = np.zeros((D * D, D * D), dtype=complex)
    for i in range(D):
        for j in range(D):
            unit = np.zeros((D, D), dtype=complex)
            unit[i, j] = 1.0
            mid = _apply_pair_to_joint_mat(ch1, ch2, _e_inverse_mat(unit, pm, d, n))
            J[i * D : (i + 1) * D, j * D : (j + 1) * D] = _e_apply_mat(mid, pm, d, n) / D
    choi = make_state(J, d, 2 * n)
    return channel_from_choi(choi)


def convolution_route_gap(ch1: Channel, ch2: Channel, params) -> float:
    """Max |Choi route - exact-formula route| for the channel convolution."""
    d = ch1.d
    pm = as_param_matrix(params, d)
    choi = convolve(ch1.choi, ch2.choi, pm)
    exact = _convolve_channels_exact(ch1, ch2, pm)
    return float(np.abs(choi.mat - exact.choi.mat).max())


def mean_channel(channel: Channel) -> Channel:
    """The channel whose Choi state is M(J); always a stabilizer channel."""
    mean = mean_state(channel.choi).mean
    return channel_from_choi(mean)


def channel_entropy(channel: Channel, alpha) -> float:
    """Choi-proxy Renyi entropy H_alpha(J) - n log d."""
    from .entropy import renyi_entropy

    return renyi_entropy(channel.choi, alpha) - channel.n * math.log2(channel.d)


def is_zero_mean_channel(channel: Channel) -> bool:
    return is_zero_mean(channel.choi)


def channel_magic_gap(channel: Channel) -> float:
    return magic_gap(channel.choi).gap


def zero_mean_channel_shift(channel: Channel):
    """Weyl label and shifted channel whose Choi state has zero mean."""
    label, shifted = zero_mean_shift(channel.choi)
    return label, channel_from_choi(shifted)


def weyl_image_char_values(channel: Channel):
    """Normalized Weyl coefficients of Λ(w(x)) for every x.

    Coefficients are Tr[Λ(w(x)) w(-y)] / d^n; the channel has zero mean
    iff every listed value is 0 or 1 (Choi-predicate cross-check).
    """
    from .phase_space import PhasePoint
    from .states import char_table_of

    d, n = channel.d, channel.n
    D = d**n
    t = channel.choi.mat.reshape(D, D, D, D)
    out = {}
    for flat in np.ndindex(*((d,) * (2 * n))):
        point = PhasePoint(tuple(flat[:n]), tuple(flat[n:]))
        w = weyl_operator(point, d)
        img = D * np.einsum("iI,ioIO->oO", w, t)  # Λ(w) via the Choi formula
        out[point] = char_table_of(img, d, n).values / D
    return out


@dataclass(frozen=True)
class ChannelCltRow:
    step: int
    distance: float
    bound: float
    diamond_bound: float


@dataclass(frozen=True)
class ChannelCltReport:
    rows: tuple
    magic_gap: float
    shifted: bool
    shift_label: WeylLabel | None
    ok: bool


def channel_clt(channel: Channel, st, N: int) -> ChannelCltReport:
    """Choi 2-norm trajectory of ⊠^N Λ against the (1 - MG)^N bound.

    st is a beam-splitter pair (s, t) over Z_d; non-zero-mean channels
    are Weyl-shifted first (reported).  Each step asserts
    distance <= bound + 1e-9; the diamond column is d^{2n} x bound.
    """
    d, n = channel.d, channel.n
    s, t = st
    params = beam_splitter_params(s, t, d)
    shifted = False
    label = None
    work = channel
    if not is_zero_mean_channel(channel):
        label, work = zero_mean_channel_shift(channel)
        shifted = True
        if not is_zero_mean_channel(work):
            raise InternalInconsistencyError("channel failed to shift to zero mean")
    j0 = work.choi
    mean = mean_state(j0).mean
    mg = magic_gap(j0).gap
    base = float(np.linalg.norm(j0.mat - mean.mat))
    rows = []
    ok = True
    current = j0
    for step in range(N + 1):
        dist = float(np.linalg.norm(current.mat - mean.mat))
        bound = (1.0 - mg) ** step * base
        rows.append(
            ChannelCltRow(
                step=step,
                distance=dist,
                bound=bound,
                diamond_bound=d ** (2 * n) * bound,
            )
        )
        ok = ok and dist <= bound + 1e-9
        if step < N:
            current = convolve(current, j0, params)
    return ChannelCltReport(
        rows=tuple(rows), magic_gap=mg, shifted=shifted, shift_label=label, ok=ok
    )


@dataclass(frozen=True)
class UnitaryMinEntropyReport:
    matched_max: float
    generic_min: float
    absorb_gap: float
    ok: bool


def check_unitary_min_entropy(params, d: int, n: int = 1, seed=0, pairs: int = 5):
    """Minimal channel entropy -n log d exactly for matched Clifford pairs.

    Weyl-conjugation pairs satisfy the matched-image condition for any
    nontrivial G, so their convolution is unitary with proxy entropy
    -n log d; Haar-generic unitary pairs must land strictly above.  Also
    checks the absorbing identity Λ ⊠ R = R (entropy n log d) on the
    parity side G supports.
    """
    pm = as_param_matrix(params, d)
    rng = np.random.default_rng(seed)
    target = -n * math.log2(d)
    matched_max = -math.inf
    generic_min = math.inf
    for _ in range(pairs):
        pt1 = rng.integers(0, d, 2 * n)
        pt2 = rng.integers(0, d, 2 * n)
        ch = convolve_channels(
            weyl_conjugation_channel(pt1, d, n), weyl_conjugation_channel(pt2, d, n), pm
        )
        matched_max = max(matched_max, channel_entropy(ch, 1))
        u1, _ = np.linalg.qr(rng.standard_normal((d**n, d**n)) + 1j * rng.standard_normal((d**n, d**n)))
        u2, _ = np.linalg.qr(rng.standard_normal((d**n, d**n)) + 1j * rng.standard_normal((d**n, d**n)))
        ch = convolve_channels(unitary_channel(u1, d, n), unitary_channel(u2, d, n), pm)
        generic_min = min(generic_min, channel_entropy(ch, 1))
    r = depolarizing_channel(d, n)
    some = weyl_conjugation_channel(rng.integers(0, d, 2 * n), d, n)
    if pm.odd_parity_positive:
        absorbed = convolve_channels(some, r, pm)
    else:
        absorbed = convolve_channels(r, some, pm)
    absorb_gap = abs(channel_entropy(absorbed, 1) - n * math.log2(d))
    ok = (
        abs(matched_max - target) <= 1e-8
        and generic_min > target + 1e-4
        and absorb_gap <= 1e-8
    )
    return UnitaryMinEntropyReport(
        matched_max=matched_max, generic_min=generic_min, absorb_gap=absorb_gap, ok=ok
    )


def random_channel(n: int, d: int, seed, n_kraus: int | None = None) -> Channel:
    """Seeded random channel from a Haar-ish isometry (Stinespring cut)."""
    D = d**n
    if n_kraus is None:
        n_kraus = D
    rng = np.random.default_rng(seed)
    m = rng.standard_normal((D * n_kraus, D)) + 1j * rng.standard_normal((D * n_kraus, D))
    q, _ = np.linalg.qr(m)  # isometry D*n_kraus x D
    kraus = [q[k * D : (k + 1) * D, :] for k in range(n_kraus)]
    return choi_from_kraus(kraus, d, n)


def random_mixed_unitary_channel(n: int, d: int, seed, terms: int = 3) -> Channel:
    """Seeded random mixture of unitary conjugations."""
    rng = np.random.default_rng(seed)
    D = d**n
    weights = rng.dirichlet(np.ones(terms))
    kraus = []
    for w in weights:
        u, _ = np.linalg.qr(rng.standard_normal((D, D)) + 1j * rng.standard_normal((D, D)))
        kraus.append(math.sqrt(w) * u)
    return choi_from_kraus(kraus, d, n)
