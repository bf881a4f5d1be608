"""Entropy functionals, majorization, and the convolution-inequality harnesses.

Base-2 logarithms everywhere.  The Renyi entropy follows the generalized
(sign-corrected) definition, so it is Schur concave for every order in
[-inf, +inf]; in particular H_alpha is negative for alpha < 0 and the
alpha -> -inf limit is log2(lambda_min).  The relative entropy is the
sandwiched divergence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import config
from .convolution import (
    as_param_matrix,
    convolve,
    iterate,
    transformed_stabilizer_group,
)
from .errors import (
    NotComparableError,
    UnsupportedAlphaError,
    UnsupportedGError,
)
from .mean_magic import is_msps, mean_state
from .states import (
    State,
    basis_state,
    enumerate_pure_stabilizers,
    make_state,
    maximally_mixed,
    msps_from_group,
    random_state,
)

LOG2 = math.log(2.0)


def clean_spectrum(state_or_values) -> np.ndarray:
    """Eigenvalues sorted descending, clipped at 0 and renormalized to 1."""
    if isinstance(state_or_values, State):
        vals = np.linalg.eigvalsh(state_or_values.mat)
    else:
        vals = np.asarray(state_or_values, dtype=float)
    if vals.min() < -config.tol_state:
        raise NotComparableError(f"eigenvalue {vals.min()} below the state floor")
    vals = np.clip(vals, 0.0, None)
    vals = np.sort(vals)[::-1]
    return vals / vals.sum()


def renyi_entropy_spectrum(spec: np.ndarray, alpha) -> float:
    """Generalized Renyi entropy of a cleaned spectrum, base-2 logs."""
    spec = np.asarray(spec, dtype=float)
    pos = spec[spec > config.tol_spec]
    if alpha == 1:
        return float(-(pos * np.log2(pos)).sum())
    if alpha == 0:
        return float(np.log2(len(pos)))
    if alpha == math.inf:
        return float(-np.log2(pos.max()))
    if alpha == -math.inf:
        if len(pos) < len(spec):
            return -math.inf
        return float(np.log2(pos.min()))
    if alpha < 0:
        if len(pos) < len(spec):
            return -math.inf
        return float(-np.log2((pos**alpha).sum()) / (1 - alpha))
    return float(np.log2((pos**alpha).sum()) / (1 - alpha))


def renyi_entropy(state: State, alpha) -> float:
    """H_alpha(rho) = sgn(alpha)/(1-alpha) log2 sum lambda^alpha."""
    return renyi_entropy_spectrum(clean_spectrum(state), alpha)


def von_neumann(state: State) -> float:
    return renyi_entropy(state, 1)


def _support_projector(vals, vecs):
    mask = vals > config.tol_spec
    return vecs[:, mask], vals[mask]


def renyi_relative(rho: State, sigma: State, alpha) -> float:
    """Sandwiched Renyi relative entropy D_alpha(rho || sigma), alpha >= 1/2.

    +inf when supp(rho) is not contained in supp(sigma) and alpha >= 1;
    for alpha in [1/2, 1) the divergence is finite whenever the sandwiched
    trace is positive.
    """
    if alpha < 0.5:
        raise UnsupportedAlphaError("sandwiched divergence needs alpha >= 1/2")
    svals, svecs = np.linalg.eigh(sigma.mat)
    vb, lb = _support_projector(svals, svecs)
    # rho compressed onto supp(sigma); support violation = trace deficit
    r_in = vb.conj().T @ rho.mat @ vb
    deficit = 1.0 - np.trace(r_in).real
    if alpha >= 1 and deficit > config.tol_spec * rho.dim:
        return math.inf
    if alpha == 1:
        rvals, rvecs = np.linalg.eigh(rho.mat)
        pos = rvals > config.tol_spec
        tr_rlogr = float((rvals[pos] * np.log2(rvals[pos])).sum())
        logsig = (vb * np.log2(lb)) @ vb.conj().T
        return tr_rlogr - float(np.trace(rho.mat @ logsig).real)
    if alpha == math.inf:
        isq = (vb * (lb**-0.5)) @ vb.conj().T
        m = isq @ rho.mat @ isq
        return float(np.log2(np.linalg.eigvalsh(m)[-1]))
    e = (1 - alpha) / (2 * alpha)
    half = (vb * (lb**e)) @ vb.conj().T
    m = half @ rho.mat @ half
    mvals = np.clip(np.linalg.eigvalsh(m), 0.0, None)
    total = float((mvals[mvals > 0] ** alpha).sum())
    if total <= config.tol_spec:
        return math.inf
    return float(np.log2(total) / (alpha - 1))


@dataclass(frozen=True)
class SubentropyInfo:
    value: float
    perturbation: float  # magnitude of the symmetric tie-break, 0 when exact


def subentropy_info(state: State) -> SubentropyInfo:
    """Q(rho) = -sum_i lambda_i^D log2(lambda_i) / prod_{j != i}(lambda_i - lambda_j).

    Degenerate spectra are coalesced at 1e-9 and broken by a recorded
    symmetric perturbation of +-1e-7 per index; zero eigenvalues enter
    through the same limit.
    """
    spec = clean_spectrum(state)
    dim = len(spec)
    if dim == 1:
        return SubentropyInfo(0.0, 0.0)
    eps = 1e-7
    gaps = np.abs(np.diff(spec))
    needs = bool((gaps < 1e-9).any() or spec[-1] < 1e-9)
    vals = spec
    if needs:
        # strictly decreasing positive shifts keep the sorted values distinct
        vals = spec + eps * np.arange(dim, 0, -1)
        vals = vals / vals.sum()
    total = 0.0
    for i in range(dim):
        denom = 1.0
        for j in range(dim):
            if j != i:
                denom *= vals[i] - vals[j]
        total += vals[i] ** dim * math.log2(vals[i]) / denom
    return SubentropyInfo(value=-total, perturbation=eps if needs else 0.0)


def subentropy(state: State) -> float:
    return subentropy_info(state).value


def majorizes(a, b) -> bool:
    """True iff a is majorized by b (partial sums of b dominate a's).

    Inputs are spectra (any order); the shorter is zero-padded.  Sums must
    agree within 1e-8, else NotComparableError.
    """
    av = np.sort(np.asarray(a, dtype=float))[::-1]
    bv = np.sort(np.asarray(b, dtype=float))[::-1]
    size = max(len(av), len(bv))
    av = np.pad(av, (0, size - len(av)))
    bv = np.pad(bv, (0, size - len(bv)))
    if abs(av.sum() - bv.sum()) > 1e-8:
        raise NotComparableError(f"sums differ: {av.sum()} vs {bv.sum()}")
    return bool(np.all(np.cumsum(bv) - np.cumsum(av) >= -1e-9))


@dataclass(frozen=True)
class SecondLawReport:
    alphas: tuple
    table: np.ndarray  # (N+1, len(alphas)) entropies along the trajectory
    violations: tuple  # (step, alpha, drop) triples beyond the slack
    ok: bool


def check_second_law(rho: State, params, N: int, alphas) -> SecondLawReport:
    """Entropies H_alpha along the iterated convolution; flags decreases."""
    alphas = tuple(alphas)
    traj = iterate(rho, params, N)
    table = np.array([[renyi_entropy(s, a) for a in alphas] for s in traj])
    violations = []
    for step in range(N):
        for col, a in enumerate(alphas):
            drop = table[step + 1, col] - table[step, col]
            if drop < -1e-8:
                violations.append((step, a, float(drop)))
    return SecondLawReport(
        alphas=alphas, table=table, violations=tuple(violations), ok=not violations
    )


def second_law_counterexample(d: int, n: int = 1, alpha=1):
    """The g10 = 0 construction where H_alpha(rho ⊠ sigma) < H_alpha(sigma).

    G = [[1, 1], [0, 1]] is not odd-parity positive; rho = |0><0|^n (the
    Z-line stabilizer) and sigma = I/d^n give H(rho ⊠ sigma) = 0 while
    H(sigma) = n log d.
    """
    G = [[1, 1], [0, 1]]
    rho = basis_state(0, d, n)
    sigma = maximally_mixed(d, n)
    out = convolve(rho, sigma, G)
    return {
        "h_out": renyi_entropy(out, alpha),
        "h_sigma": renyi_entropy(sigma, alpha),
        "h_rho": renyi_entropy(rho, alpha),
        "output_equals_rho": bool(np.abs(out.mat - rho.mat).max() < 1e-10),
    }


def check_equality_case(sigma: State, params, alpha, seed=0) -> dict:
    """Equality H_alpha(rho ⊠ sigma) = H_alpha(rho) on the fixed algebra.

    sigma must be an MSPS; rho is drawn as a random convex mixture of the
    MSPS associated with the transformed group S, where equality must hold
    to 1e-8.  A generic random state must show a strict increase > 1e-6.
    """
    d, n = sigma.d, sigma.n
    pm = as_param_matrix(params, d)
    if not pm.positive:
        raise UnsupportedGError("the equality case is stated for positive G")
    if not is_msps(sigma):
        raise NotComparableError("sigma must be an MSPS")
    group = mean_state(sigma).group
    s_trans = transformed_stabilizer_group(group, pm)
    rng = np.random.default_rng(seed)
    weights = rng.dirichlet(np.ones(d**s_trans.rank)) if s_trans.rank else np.array([1.0])
    mix = np.zeros((d**n, d**n), dtype=complex)
    from itertools import product

    for w, chars in zip(weights, product(range(d), repeat=s_trans.rank)):
        mix += w * msps_from_group(s_trans, chars).mat
    rho = make_state(mix, d, n)
    h_in = renyi_entropy(rho, alpha)
    h_out = renyi_entropy(convolve(rho, sigma, pm), alpha)
    outside = random_state(n, d, seed=rng.integers(2**31))
    h_in2 = renyi_entropy(outside, alpha)
    h_out2 = renyi_entropy(convolve(outside, sigma, pm), alpha)
    return {
        "equality_gap": abs(h_out - h_in),
        "equality_holds": abs(h_out - h_in) <= 1e-8,
        "strict_increase": h_out2 - h_in2,
        "strictly_increases": (h_out2 - h_in2) > 1e-6,
        "ok": abs(h_out - h_in) <= 1e-8 and (h_out2 - h_in2) > 1e-6,
    }


def holevo_bounds(sigma: State, params) -> tuple[float, float]:
    """Bounds on the Holevo capacity of the convolution channel E_sigma.

    Positive G: (n log d - H(M(sigma)), n log d - H(sigma)); the two
    coincide iff sigma is an MSPS.  Odd-parity-only G: the one-sided
    bound (0, H(I/d^n ⊠ sigma) - H(sigma)).
    """
    d, n = sigma.d, sigma.n
    pm = as_param_matrix(params, d)
    full = n * math.log2(d)
    if pm.positive:
        lower = full - renyi_entropy(mean_state(sigma).mean, 1)
        upper = full - renyi_entropy(sigma, 1)
        return lower, upper
    if pm.odd_parity_positive:
        mixed_out = convolve(maximally_mixed(d, n), sigma, pm)
        return 0.0, renyi_entropy(mixed_out, 1) - renyi_entropy(sigma, 1)
    raise UnsupportedGError("Holevo bounds need an (at least) odd-parity positive G")


@dataclass(frozen=True)
class MinOutputEntropyReport:
    ok: bool
    n_pairs: int
    n_matched: int
    max_entropy_on_matched: float
    min_entropy_on_unmatched: float


def check_min_output_entropy(params, d: int, n: int = 1, seed=0) -> MinOutputEntropyReport:
    """Exhaustive pure-stabilizer scan of the minimal-output-entropy law.

    H(rho ⊠ sigma) vanishes exactly on pairs whose stabilizer groups
    satisfy S_rho = transformed(S_sigma); every other pair (and random
    magic pairs) must come out strictly positive.
    """
    pm = as_param_matrix(params, d)
    if not pm.positive:
        raise UnsupportedGError("the minimal-output-entropy law needs positive G")
    stabs = enumerate_pure_stabilizers(n, d)
    matched_max = 0.0
    unmatched_min = math.inf
    n_matched = 0
    ok = True
    for rho, g_rho in stabs:
        for sig, g_sig in stabs:
            h = renyi_entropy(convolve(rho, sig, pm), 1)
            matched = g_rho == transformed_stabilizer_group(g_sig, pm)
            if matched:
                n_matched += 1
                matched_max = max(matched_max, h)
                ok = ok and h <= 1e-8
            else:
                unmatched_min = min(unmatched_min, h)
                ok = ok and h > 1e-6
    rng = np.random.default_rng(seed)
    for _ in range(5):
        a = random_state(n, d, seed=rng.integers(2**31), rank=1)
        b = random_state(n, d, seed=rng.integers(2**31), rank=1)
        h = renyi_entropy(convolve(a, b, pm), 1)
        unmatched_min = min(unmatched_min, h)
        ok = ok and h > 1e-6
    return MinOutputEntropyReport(
        ok=ok,
        n_pairs=len(stabs) ** 2,
        n_matched=n_matched,
        max_entropy_on_matched=matched_max,
        min_entropy_on_unmatched=unmatched_min,
    )
