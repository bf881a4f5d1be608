"""Divergence-based Fisher information, dephasing, heat semigroup, de Bruijn.

J(rho; H) = Tr[rho [H, [H, log rho]]] with base-2 logarithms, so the de
Bruijn identity dH/dt = J/4 holds with the package-wide entropy
convention.  Derivatives are evaluated in natural log internally and
converted once at the end; rank-deficient states are rejected rather
than silently regularized (use smooth()).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .config import config
from .convolution import as_param_matrix, convolve
from .errors import (
    IncompatibleError,
    NegativeTimeError,
    SingularStateError,
)
from .states import CharTable, State, char_function, from_char, make_state, maximally_mixed
from .weyl import fourier_gate

LN2 = math.log(2.0)


def smooth(state: State, eta: float) -> State:
    """(1 - eta) rho + eta I/d^n; the caller owns reporting eta."""
    mixed = maximally_mixed(state.d, state.n)
    return make_state((1 - eta) * state.mat + eta * mixed.mat, state.d, state.n)


def _site_basis(axis: str, d: int) -> np.ndarray:
    """Columns = the rank-1 eigenbasis of the site operator (Z or X)."""
    if axis == "Z":
        return np.eye(d, dtype=complex)
    if axis == "X":
        # |j>_X = d^{-1/2} sum_k chi(-jk) |k> = F^dag |j>
        return fourier_gate(d).conj().T
    raise IncompatibleError(f"axis must be 'X' or 'Z', got {axis!r}")


def dephasing_projector(axis: str, site: int, j: int, d: int, n: int) -> np.ndarray:
    """H_j^R = |j><j|_R on the chosen site, embedded in the register."""
    from .weyl import embed_one_site

    col = _site_basis(axis, d)[:, j]
    return embed_one_site(np.outer(col, col.conj()), site, n, d)


def _dephase_mat(mat: np.ndarray, d: int, n: int, axis: str, site: int) -> np.ndarray:
    basis = _site_basis(axis, d)
    from .weyl import embed_one_site

    u = embed_one_site(basis, site, n, d)
    rotated = u.conj().T @ mat @ u
    D = d**n
    t = rotated.reshape((d ** site, d, d ** (n - site - 1), d ** site, d, d ** (n - site - 1)))
    mask = np.eye(d)[None, :, None, None, :, None]
    t = t * mask
    return u @ t.reshape(D, D) @ u.conj().T


def dephase(state: State, axis: str, site: int = 0) -> State:
    """The completely dephasing channel Delta_R in the X or Z site basis."""
    out = _dephase_mat(state.mat, state.d, state.n, axis, site)
    return make_state(out, state.d, state.n)


def _log_state(state: State) -> np.ndarray:
    """log2(rho) via eigendecomposition; errors below the spectrum floor."""
    vals, vecs = np.linalg.eigh(state.mat)
    if vals.min() <= config.tol_spec:
        raise SingularStateError(
            f"state has eigenvalue {vals.min():.2e} at/below the floor; smooth() it first"
        )
    return (vecs * np.log2(vals)) @ vecs.conj().T


def fisher_single(state: State, H: np.ndarray) -> float:
    """J(rho; H) = Tr[rho [H, [H, log rho]]], clamped real."""
    L = _log_state(state)
    inner = H @ L - L @ H
    outer = H @ inner - inner @ H
    val = np.trace(state.mat @ outer)
    if abs(val.imag) > 1e-9:
        raise SingularStateError(f"Fisher trace has imaginary part {val.imag:.2e}")
    return float(val.real)


def _fisher_total_commutator(state: State) -> float:
    d, n = state.d, state.n
    total = 0.0
    for site in range(n):
        for axis in ("X", "Z"):
            basis = _site_basis(axis, d)
            for j in range(d):
                from .weyl import embed_one_site

                H = embed_one_site(np.outer(basis[:, j], basis[:, j].conj()), site, n, d)
                total += fisher_single(state, H)
    return total


def _fisher_total_dephasing(state: State) -> float:
    # 2 sum_k [ D(rho || Delta rho) + D(Delta rho || rho) ] over both axes
    from .entropy import renyi_relative

    total = 0.0
    for site in range(state.n):
        for axis in ("X", "Z"):
            deph = dephase(state, axis, site)
            total += 2.0 * (renyi_relative(state, deph, 1) + renyi_relative(deph, state, 1))
    return total


def fisher_total(state: State) -> float:
    """Total Fisher information; the two routes must agree to 1e-8."""
    a = _fisher_total_commutator(state)
    b = _fisher_total_dephasing(state)
    if abs(a - b) > 1e-8 * max(1.0, abs(a)):
        raise SingularStateError(
            f"Fisher routes disagree: commutator {a!r} vs dephasing {b!r}"
        )
    return a


@lru_cache(maxsize=None)
def weyl_weight_grid(d: int, n: int) -> np.ndarray:
    """Number of nonzero coordinates of (p, q), shape (d,)*2n."""
    grid = np.indices((d,) * (2 * n))
    w = (grid != 0).sum(axis=0)
    w.setflags(write=False)
    return w


def _semigroup_values(table: CharTable, t: float) -> CharTable:
    damp = np.exp(-0.5 * weyl_weight_grid(table.d, table.n) * t)
    return CharTable(d=table.d, n=table.n, values=table.values * damp)


def heat_semigroup(state: State, t: float) -> State:
    """e^{tL} rho: the characteristic value at x decays as exp(-|x| t / 2)."""
    if t < 0:
        raise NegativeTimeError("the heat semigroup is defined for t >= 0")
    out = from_char(_semigroup_values(char_function(state), t))
    return make_state(out, state.d, state.n)


def liouvillean(mat: np.ndarray, d: int, n: int) -> np.ndarray:
    """L(A) = -n A + (1/2) sum_k (Delta_{X_k} A + Delta_{Z_k} A)."""
    out = -n * mat.astype(complex)
    for site in range(n):
        for axis in ("X", "Z"):
            out += 0.5 * _dephase_mat(mat, d, n, axis, site)
    return out


def de_bruijn_check(state: State, h: float = 1e-4) -> tuple[float, float]:
    """(dH/dt at t = 0 by central difference, J(rho)/4); base-2 entropy.

    The difference uses the semigroup at +-h; a full-rank input keeps the
    t = -h point a valid state for small h.
    """
    from .entropy import renyi_entropy

    vals = np.linalg.eigvalsh(state.mat)
    if vals.min() <= config.tol_spec:
        raise SingularStateError("de Bruijn check needs a full-rank state; smooth() it")
    table = char_function(state)

    def entropy_at(t):
        mat = from_char(_semigroup_values(table, t))
        return renyi_entropy(make_state(mat, state.d, state.n), 1)

    lhs = (entropy_at(+h) - entropy_at(-h)) / (2 * h)
    rhs = fisher_total(state) / 4.0
    return float(lhs), float(rhs)


@dataclass(frozen=True)
class FisherConvolutionReport:
    j_out: float
    j_rho: float
    j_sigma: float
    bound: float
    slack: float
    ok: bool


def check_fisher_convolution(rho: State, sigma: State, params) -> FisherConvolutionReport:
    """J(rho ⊠ sigma) against the parity-matched bound, slack flagged at 1e-7."""
    pm = as_param_matrix(params, rho.d)
    j_rho = fisher_total(rho)
    j_sigma = fisher_total(sigma)
    out = convolve(rho, sigma, pm)
    j_out = fisher_total(out)
    if pm.positive:
        bound = min(j_rho, j_sigma)
    elif pm.even_parity_positive:
        bound = j_rho
    elif pm.odd_parity_positive:
        bound = j_sigma
    else:
        raise IncompatibleError("the Fisher inequality needs a nontrivial parity class")
    slack = bound - j_out
    return FisherConvolutionReport(
        j_out=j_out, j_rho=j_rho, j_sigma=j_sigma, bound=bound, slack=slack,
        ok=slack >= -1e-7,
    )
