"""The parameterized convolution rho ⊠ sigma and its named families.

G is a 2x2 invertible matrix over Z_d.  The convolution is
Tr_B[U (rho ⊗ sigma) U^dag] with U the key unitary; because U permutes
basis states, the partial trace is evaluated by index gathering without
materializing the d^{2n}-dimensional conjugation.  The characteristic
route (convolution-multiplication duality) is an independent fast path
and is never silently substituted for the operator route.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    IncompatibleError,
    SingularGError,
    TooLargeError,
    UnsupportedGError,
)
from .phase_space import PhaseSubgroup, check_prime, field_inv, subgroup_generators
from .states import CharTable, State, WignerTable, make_state
from .weyl import digit_table, encode_digits


@dataclass(frozen=True)
class ParamMatrix:
    """An invertible G = [[g00, g01], [g10, g11]] over Z_d with its parity flags."""

    d: int
    g00: int
    g01: int
    g10: int
    g11: int
    det: int
    n_inv: int  # N = det^{-1} mod d
    nontrivial: bool
    odd_parity_positive: bool
    even_parity_positive: bool
    positive: bool

    def as_array(self) -> np.ndarray:
        return np.array([[self.g00, self.g01], [self.g10, self.g11]], dtype=np.int64)


def classify(G, d: int) -> ParamMatrix:
    """Classify a 2x2 parameter matrix; raises SingularGError when det = 0."""
    check_prime(d)
    g = np.array(G, dtype=np.int64) % d
    if g.shape != (2, 2):
        raise IncompatibleError("G must be 2x2")
    g00, g01, g10, g11 = int(g[0, 0]), int(g[0, 1]), int(g[1, 0]), int(g[1, 1])
    det = (g00 * g11 - g01 * g10) % d
    if det == 0:
        raise SingularGError(f"G = {g.tolist()} is singular mod {d}")
    zeros = sum(1 for v in (g00, g01, g10, g11) if v == 0)
    nontrivial = zeros <= 1
    odd = nontrivial and g01 != 0 and g10 != 0
    even = nontrivial and g00 != 0 and g11 != 0
    return ParamMatrix(
        d=d,
        g00=g00,
        g01=g01,
        g10=g10,
        g11=g11,
        det=det,
        n_inv=field_inv(det, d),
        nontrivial=nontrivial,
        odd_parity_positive=odd,
        even_parity_positive=even,
        positive=odd and even,
    )


@dataclass(frozen=True)
class ConvParams:
    """A parameter matrix tagged with the family it came from."""

    family: str
    matrix: ParamMatrix
    params: tuple = ()


def hadamard_params(d: int) -> ConvParams:
    """G = [[1, 1], [1, -1]]; positive for every odd prime d."""
    if d == 2:
        raise UnsupportedGError("the Hadamard convolution needs odd d")
    return ConvParams("hadamard", classify([[1, 1], [1, d - 1]], d))


def beam_splitter_params(s: int, t: int, d: int) -> ConvParams:
    """G = [[s, t], [t, -s]] with s^2 + t^2 = 1 mod d."""
    s, t = int(s) % d, int(t) % d
    if (s * s + t * t) % d != 1:
        raise UnsupportedGError(f"(s, t) = ({s}, {t}) violates s^2 + t^2 = 1 mod {d}")
    return ConvParams("beam_splitter", classify([[s, t], [t, (-s) % d]], d), (s, t))


def amplifier_params(l: int, m: int, d: int) -> ConvParams:
    """G = [[l, -m], [-m, l]] with l^2 - m^2 = 1 mod d."""
    l, m = int(l) % d, int(m) % d
    if (l * l - m * m) % d != 1:
        raise UnsupportedGError(f"(l, m) = ({l}, {m}) violates l^2 - m^2 = 1 mod {d}")
    return ConvParams("amplifier", classify([[l, (-m) % d], [(-m) % d, l]], d), (l, m))


_CNOT_MATRICES = {
    1: [[1, 0], [1, 1]],  # CNOT_{2->1}
    2: [[1, 1], [0, 1]],  # CNOT_{1->2}
    3: [[0, 1], [1, 1]],  # SWAP . CNOT_{1->2}
    4: [[1, 1], [1, 0]],  # SWAP . CNOT_{2->1}
}


def cnot_family(index: int) -> ConvParams:
    """The four nontrivial qubit convolutions (d = 2)."""
    if index not in _CNOT_MATRICES:
        raise IncompatibleError("cnot_family index must be 1..4")
    return ConvParams(f"cnot_{index}", classify(_CNOT_MATRICES[index], 2), (index,))


def as_param_matrix(params, d: int) -> ParamMatrix:
    if isinstance(params, ConvParams):
        params = params.matrix
    if isinstance(params, ParamMatrix):
        if params.d != d:
            raise IncompatibleError(f"G is over Z_{params.d}, states over Z_{d}")
        return params
    return classify(params, d)


def _gather_indices(pm: ParamMatrix, d: int, n: int):
    """Index arrays A, B with A[x, j] = enc(g00 x + g10 j), B = enc(g01 x + g11 j)."""
    dig = digit_table(d, n)
    a = encode_digits((pm.g00 * dig[:, None, :] + pm.g10 * dig[None, :, :]) % d, d)
    b = encode_digits((pm.g01 * dig[:, None, :] + pm.g11 * dig[None, :, :]) % d, d)
    return a, b


def _convolve_mats(rho: np.ndarray, sigma: np.ndarray, pm: ParamMatrix, d: int, n: int) -> np.ndarray:
    D = d**n
    A, B = _gather_indices(pm, d, n)
    out = np.zeros((D, D), dtype=complex)
    for j in range(D):
        ra, rb = A[:, j], B[:, j]
        out += rho[np.ix_(ra, ra)] * sigma[np.ix_(rb, rb)]
    return out


def convolve(rho: State, sigma: State, params) -> State:
    """rho ⊠ sigma = Tr_B[U (rho ⊗ sigma) U^dag], operator route."""
    if (rho.d, rho.n) != (sigma.d, sigma.n):
        raise IncompatibleError(
            f"states live on (d, n) = ({rho.d}, {rho.n}) and ({sigma.d}, {sigma.n})"
        )
    d, n = rho.d, rho.n
    pm = as_param_matrix(params, d)
    return make_state(_convolve_mats(rho.mat, sigma.mat, pm, d, n), d, n)


def convolve_char(tr: CharTable, ts: CharTable, params) -> CharTable:
    """Duality route: Xi_out(p, q) = Xi_rho(N g11 p, g00 q) Xi_sigma(-N g10 p, g01 q)."""
    if (tr.d, tr.n) != (ts.d, ts.n):
        raise IncompatibleError("characteristic tables have mismatched (d, n)")
    d, n = tr.d, tr.n
    pm = as_param_matrix(params, d)
    idx = np.arange(d)

    def remap(table, cp, cq):
        axes = [(cp * idx) % d] * n + [(cq * idx) % d] * n
        return table[np.ix_(*axes)]

    left = remap(tr.values, (pm.n_inv * pm.g11) % d, pm.g00)
    right = remap(ts.values, (-pm.n_inv * pm.g10) % d, pm.g01)
    vals = left * right
    vals.setflags(write=False)
    return CharTable(d=d, n=n, values=vals)


def _e_apply_mat(mat: np.ndarray, pm: ParamMatrix, d: int, n: int) -> np.ndarray:
    """E on an arbitrary 2n-qudit matrix (index-gather partial trace)."""
    D = d**n
    A, B = _gather_indices(pm, d, n)
    joint = A * D + B  # flat index into the 2n-qudit register
    out = np.zeros((D, D), dtype=complex)
    for j in range(D):
        r = joint[:, j]
        out += mat[np.ix_(r, r)]
    return out


def _e_inverse_mat(mat: np.ndarray, pm: ParamMatrix, d: int, n: int) -> np.ndarray:
    """E^{-1} = U^dag ((.) ⊗ I/d^n) U on an arbitrary n-qudit matrix."""
    D = d**n
    if D * D > 4096:
        raise TooLargeError("E^{-1} materializes a d^{2n}-dim matrix; dimension too large")
    dig = digit_table(d, n)
    N = pm.n_inv
    a1 = encode_digits((N * (pm.g11 * dig[:, None, :] - pm.g10 * dig[None, :, :])) % d, d)
    a2 = encode_digits((N * (-pm.g01 * dig[:, None, :] + pm.g00 * dig[None, :, :])) % d, d)
    a1f, a2f = a1.reshape(-1), a2.reshape(-1)
    return mat[np.ix_(a1f, a1f)] * (a2f[:, None] == a2f[None, :]) / D


def conv_channel_apply(rho_ab: State, params) -> State:
    """The convolutional channel E on a joint 2n-qudit input."""
    if rho_ab.n % 2 != 0:
        raise IncompatibleError("E needs an input on 2n qudits")
    d, n = rho_ab.d, rho_ab.n // 2
    pm = as_param_matrix(params, d)
    return make_state(_e_apply_mat(rho_ab.mat, pm, d, n), d, n)


def conv_channel_inverse(rho: State, params) -> State:
    """E^{-1}(rho) = U^dag (rho ⊗ I/d^n) U, a 2n-qudit state."""
    d, n = rho.d, rho.n
    pm = as_param_matrix(params, d)
    return make_state(_e_inverse_mat(rho.mat, pm, d, n), d, 2 * n)


def convolve_wigner(wr: WignerTable, ws: WignerTable, params) -> WignerTable:
    """Wigner-function convolution; needs a positive G (all entries invertible)."""
    if (wr.d, wr.n) != (ws.d, ws.n):
        raise IncompatibleError("Wigner tables have mismatched (d, n)")
    d, n = wr.d, wr.n
    pm = as_param_matrix(params, d)
    if not pm.positive:
        raise UnsupportedGError("the Wigner convolution formula needs positive G")
    if d ** (4 * n) > 2 * 10**8:
        raise TooLargeError("Wigner convolution is quadratic in the table size")
    i00 = field_inv(pm.g00, d)
    i01 = field_inv(pm.g01, d)
    i11 = field_inv((pm.n_inv * pm.g11) % d, d)
    i10 = field_inv((pm.n_inv * pm.g10) % d, d)
    grid = np.indices((d,) * (2 * n))  # output (u, v)
    out = np.zeros((d,) * (2 * n), dtype=float)
    for flat in range(d ** (2 * n)):
        uv1 = np.unravel_index(flat, (d,) * (2 * n))
        u1 = np.array(uv1[:n])
        v1 = np.array(uv1[n:])
        wrho = wr.values[tuple((i00 * u1) % d) + tuple((i11 * v1) % d)]
        # W_sigma(g01^{-1}(u - u1), (N g10)^{-1}(v1 - v)) over the whole (u, v) grid
        su = [(i01 * (grid[k] - u1[k])) % d for k in range(n)]
        sv = [(i10 * (v1[k] - grid[n + k])) % d for k in range(n)]
        out += wrho * ws.values[tuple(su) + tuple(sv)]
    out.setflags(write=False)
    return WignerTable(d=d, n=n, values=out)


def iterate(rho: State, params, N: int) -> list[State]:
    """The trajectory [⊠^0 rho, ..., ⊠^N rho] with ⊠^{k+1} = (⊠^k) ⊠ rho.

    params may be a single parameter set or a per-step sequence of length
    at least N.
    """
    if N < 0:
        raise IncompatibleError("N must be >= 0")
    if isinstance(params, (ConvParams, ParamMatrix)) or np.shape(params) == (2, 2):
        seq = [params] * N
    else:
        seq = list(params)
    if len(seq) < N:
        raise IncompatibleError(f"need {N} parameter sets, got {len(seq)}")
    out = [rho]
    for k in range(N):
        out.append(convolve(out[-1], rho, seq[k]))
    return out


@dataclass(frozen=True)
class SolutionClass:
    """An equivalence class of (s, t) parameter pairs."""

    representative: tuple
    members: tuple


def solve_params(d: int, family: str) -> list[SolutionClass]:
    """All (s, t) classes with s^2 +/- t^2 = 1 mod d and s not in {0, +-1}.

    circle: classes {(+-s, +-t), (+-t, +-s)}; hyperbola: {(+-s, +-t)}
    (swapping does not preserve s^2 - t^2 = 1).  Brute force; the class
    counts match floor((d+1)/8) and floor((d-3)/4) respectively.
    """
    check_prime(d)
    if family not in ("circle", "hyperbola"):
        raise IncompatibleError("family must be 'circle' or 'hyperbola'")
    sign = 1 if family == "circle" else -1
    banned = {0, 1, (d - 1) % d}
    raw = set()
    for s in range(d):
        if s in banned:
            continue
        for t in range(d):
            if (s * s + sign * t * t) % d == 1:
                raw.add((s, t))
    classes = []
    seen = set()
    for pair in sorted(raw):
        if pair in seen:
            continue
        s, t = pair
        members = {((es * s) % d, (et * t) % d) for es in (1, -1) for et in (1, -1)}
        if family == "circle":
            members |= {((es * t) % d, (et * s) % d) for es in (1, -1) for et in (1, -1)}
        members &= raw
        seen |= members
        members = tuple(sorted(members))
        classes.append(SolutionClass(representative=members[0], members=members))
    classes.sort(key=lambda c: c.representative)
    return classes


def transformed_stabilizer_group(group: PhaseSubgroup, params) -> PhaseSubgroup:
    """{(-g10^{-1} g11 p, g01^{-1} g00 q) : (p, q) in S}; needs odd-parity G."""
    d = group.d
    pm = as_param_matrix(params, d)
    if pm.g10 == 0 or pm.g01 == 0:
        raise UnsupportedGError("the group transform divides by g10 and g01")
    cp = (-field_inv(pm.g10, d) * pm.g11) % d
    cq = (field_inv(pm.g01, d) * pm.g00) % d
    n = group.n
    vecs = []
    for gen in group.generators:
        p = (cp * np.array(gen.p)) % d
        q = (cq * np.array(gen.q)) % d
        vecs.append(np.concatenate([p, q]))
    return subgroup_generators(vecs, d, n)
