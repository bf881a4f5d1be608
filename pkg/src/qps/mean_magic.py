"""Mean states, zero-mean shifts, the magic gap, and MSPS extremality.

The mean state M(rho) keeps Xi_rho exactly on the unit-modulus set
S = {x : |Xi_rho(x)| = 1} and zeroes it elsewhere; numerically, S is the
set where |Xi| >= 1 - tol_one and retained values snap to the unit
circle.  All entropy-like quantities here use base-2 logarithms.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import config
from .errors import (
    InternalInconsistencyError,
    PhaseNotRootOfUnityError,
    UnsupportedDimensionError,
)
from .phase_space import (
    PhasePoint,
    PhaseSubgroup,
    lex_smallest_solution,
    subgroup_generators,
)
from .states import CharTable, State, char_function, from_char, make_state, pauli_rank
from .weyl import (
    chi,
    embed_one_site,
    embed_two_site,
    fourier_gate,
    is_weyl_up_to_phase,
    phase_gate,
    t_gate,
    weyl_operator,
)


@dataclass(frozen=True)
class MeanStateReport:
    """M(rho) together with its group S, generators, and phase exponents."""

    mean: State
    group: PhaseSubgroup
    generators: tuple
    phases: tuple

    @property
    def rank(self) -> int:
        return len(self.generators)


@dataclass(frozen=True)
class MagicGapReport:
    gap: float
    log_gap: float
    second_max: float
    support_size: int


def _phase_exponent(value: complex, d: int) -> int:
    """Round a unit-modulus value to chi(k); error if the residual is large."""
    k = int(np.round(d * np.angle(value) / (2 * np.pi))) % d
    residual = abs(value - complex(chi(k, d)))
    if residual > config.phase_residual:
        raise PhaseNotRootOfUnityError(
            f"characteristic value {value} is {residual:.2e} from any d-th root of unity"
        )
    return k


def mean_state(state: State) -> MeanStateReport:
    """The mean state M(rho): Xi kept where |Xi| = 1, zeroed elsewhere."""
    d, n = state.d, state.n
    table = char_function(state)
    mags = np.abs(table.values)
    on = mags >= 1 - config.tol_one
    vecs = np.argwhere(on)
    group = subgroup_generators(list(vecs), d, n)
    if group.size != len(vecs):
        raise InternalInconsistencyError(
            f"unit-modulus set of size {len(vecs)} is not a group (span {group.size})"
        )
    kept = np.zeros_like(table.values)
    kept[on] = table.values[on] / mags[on]
    mean_mat = from_char(CharTable(d=d, n=n, values=kept))
    mean = make_state(mean_mat, d, n)
    phases = tuple(
        _phase_exponent(table.value(g), d) for g in group.generators
    )
    return MeanStateReport(mean=mean, group=group, generators=group.generators, phases=phases)


def is_msps(state: State) -> bool:
    """True iff every |Xi| is 0 or 1 (within tolerance) and rho = M(rho)."""
    mags = np.abs(char_function(state).values)
    mid = (mags > config.tol_supp) & (mags < 1 - config.tol_one)
    if mid.any():
        return False
    report = mean_state(state)
    return np.abs(report.mean.mat - state.mat).max() <= 1e-9


def mean_value_vector(state: State) -> np.ndarray:
    """(k_1, ..., k_r) with Xi(x_i) = chi(k_i) on the computed generators."""
    return np.array(mean_state(state).phases, dtype=np.int64)


def is_zero_mean(state: State) -> bool:
    """True iff Xi takes the value 1 on the whole mean-state group."""
    report = mean_state(state)
    table = char_function(state)
    return all(
        abs(table.values[tuple(v)] - 1.0) < config.phase_residual
        for v in report.group.elements
    )


def zero_mean_shift(state: State):
    """A Weyl label (a, b) and the zero-mean conjugate w rho w^dag.

    Solves <(a,b), (p_i,q_i)>_s = -k_i over Z_d; the lexicographically
    smallest solution is returned.  Existence is guaranteed, so an
    unsolvable system marks numerically broken input.
    """
    from .weyl import WeylLabel

    d, n = state.d, state.n
    report = mean_state(state)
    if not report.generators:
        label = WeylLabel(point=PhasePoint((0,) * n, (0,) * n), phase=1.0 + 0j)
        return label, state
    rows = []
    rhs = []
    for gen, k in zip(report.generators, report.phases):
        # unknown x = [a | b]: <(a,b),(p,q)>_s = a.q - b.p
        rows.append(np.concatenate([np.array(gen.q), -np.array(gen.p)]) % d)
        rhs.append((-k) % d)
    sol = lex_smallest_solution(np.array(rows), np.array(rhs), d)
    if sol is None:
        raise InternalInconsistencyError("zero-mean shift system is inconsistent")
    point = PhasePoint.from_vec(sol)
    w = weyl_operator(point, d)
    shifted = make_state(w @ state.mat @ w.conj().T, d, n)
    if not is_zero_mean(shifted):
        raise InternalInconsistencyError("shifted state failed the zero-mean check")
    return WeylLabel(point=point, phase=1.0 + 0j), shifted


def magic_gap(state: State) -> MagicGapReport:
    """Gap between 1 and the second-largest |Xi| on the support."""
    mags = np.abs(char_function(state).values)
    support = mags > config.tol_supp
    below = support & (mags < 1 - config.tol_one)
    if below.any():
        second = float(mags[below].max())
        gap = 1.0 - second
        log_gap = float(-np.log2(second))
    else:
        second, gap, log_gap = 1.0, 0.0, 0.0
    return MagicGapReport(
        gap=gap,
        log_gap=log_gap,
        second_max=second,
        support_size=int(np.count_nonzero(support)),
    )


def magic_gap_upper_bound(state: State):
    """The Pauli-rank bound 1 - sqrt((d^n Tr rho^2 - d^k)/(R_P - d^k)).

    Defined for k < n where d^k is the unit-modulus set size; returns
    None at k = n (the bound degenerates there; the gap is 0 anyway).
    """
    d, n = state.d, state.n
    report = mean_state(state)
    k = report.rank
    if k >= n:
        return None
    rp = pauli_rank(state)
    num = d**n * state.purity() - d**k
    den = rp - d**k
    if den <= 0:
        return None
    return 1.0 - float(np.sqrt(max(num, 0.0) / den))


def closest_msps(state: State, alpha: float):
    """Brute-force minimizer of D_alpha(rho || sigma) over all MSPS.

    Returns (sigma_star, value); +inf divergences are skipped.  Oracle
    for the extremality theorem, so it never consults mean_state.
    """
    from .entropy import renyi_relative
    from .states import enumerate_msps

    if alpha < 1:
        raise UnsupportedDimensionError("extremality is stated for alpha >= 1")
    best = None
    best_val = np.inf
    for sigma in enumerate_msps(state.n, state.d):
        val = renyi_relative(state, sigma, alpha)
        if val < best_val:
            best, best_val = sigma, val
    return best, float(best_val)


# --- qubit Clifford+T words (magic-gap synthesis bound) ---

_QUBIT_GATES = ("H", "S", "T", "X", "Z", "CNOT")


def apply_qubit_word(state: State, word) -> State:
    """Apply a Clifford+T gate word to a qubit register.

    Tokens: ("H", k), ("S", k), ("T", k), ("X", k), ("Z", k),
    ("CNOT", control, target).
    """
    if state.d != 2:
        raise UnsupportedDimensionError("gate words are defined for d = 2")
    n = state.n
    mat = state.mat
    singles = {"H": fourier_gate(2), "S": phase_gate(2), "T": t_gate()}
    from .phase_space import make_point

    for token in word:
        name = token[0]
        if name == "CNOT":
            _, c, t = token
            g = np.zeros((4, 4), dtype=complex)
            for i in range(2):  # control bit on the first slot
                for j in range(2):
                    g[2 * i + (i + j) % 2, 2 * i + j] = 1.0
            full = embed_two_site(g, c, t, n, 2)
        elif name in singles:
            full = embed_one_site(singles[name], token[1], n, 2)
        elif name == "X":
            full = weyl_operator(make_point([1 if k == token[1] else 0 for k in range(n)],
                                            [0] * n, 2), 2)
        elif name == "Z":
            full = weyl_operator(make_point([0] * n,
                                            [1 if k == token[1] else 0 for k in range(n)], 2), 2)
        else:
            raise ValueError(f"unknown gate {name}")
        mat = full @ mat @ full.conj().T
    return make_state(mat, 2, n)


def random_clifford_t_word(n: int, length: int, seed) -> list:
    """A seeded random word over {H, S, T, X, Z, CNOT} on n qubits."""
    rng = np.random.default_rng(seed)
    word = []
    for _ in range(length):
        name = _QUBIT_GATES[rng.integers(len(_QUBIT_GATES) - (0 if n >= 2 else 1))]
        if name == "CNOT":
            c, t = rng.choice(n, size=2, replace=False)
            word.append(("CNOT", int(c), int(t)))
        else:
            word.append((name, int(rng.integers(n))))
    return word


def lmg_t_count_check(state: State, word):
    """(LMG of the circuit output, LMG(rho) + T-count/2), base-2 logs."""
    if state.d != 2:
        raise UnsupportedDimensionError("the T-count bound is a qubit statement")
    out = apply_qubit_word(state, word)
    n_t = sum(1 for token in word if token[0] == "T")
    lhs = magic_gap(out).log_gap
    rhs = magic_gap(state).log_gap + n_t / 2.0
    return lhs, rhs
