"""Theorem-check suites behind `qps verify`.

Every check returns a CheckResult with a signed slack: the margin left
before the stated tolerance is violated (negative = failure).  Suites
fan out over independent seeds; results merge by seed index so reports
are byte-stable for a fixed configuration.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from functools import partial

import numpy as np

from . import channels as chn
from . import convolution as cv
from . import entropy as ent
from . import fisher as fi
from . import mean_magic as mm
from . import states as st
from . import weyl
from .errors import QpsError
from .phase_space import PhasePoint, make_point

SUITES = ("weyl", "duality", "majorization", "entropy", "fisher", "hudson", "channels")


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    slack: float
    detail: str = ""

    def to_json(self) -> dict:
        return asdict(self)


def _result(name: str, slack: float, detail: str = "") -> CheckResult:
    return CheckResult(name=name, passed=bool(slack >= 0), slack=float(slack), detail=detail)


def _map_tasks(fn, seeds, jobs: int):
    if jobs and jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(fn, seeds))
    else:
        chunks = [fn(s) for s in seeds]
    return [r for chunk in chunks for r in chunk]


_PARITY_CLASSES = ("trivial", "even_only", "odd_only", "positive")


def sample_parity_matrix(rng, d: int, klass: str):
    """A seeded random invertible G in the requested parity class."""
    while True:
        g = rng.integers(0, d, size=(2, 2))
        try:
            pm = cv.classify(g, d)
        except QpsError:
            continue
        if klass == "trivial" and not pm.nontrivial:
            return pm
        if klass == "even_only" and pm.even_parity_positive and not pm.odd_parity_positive:
            return pm
        if klass == "odd_only" and pm.odd_parity_positive and not pm.even_parity_positive:
            return pm
        if klass == "positive" and pm.positive:
            return pm


def _positive_params(d: int):
    """A canonical positive G: the beam splitter when it exists, else Hadamard."""
    classes = cv.solve_params(d, "circle")
    if classes:
        s, t = classes[0].representative
        return cv.beam_splitter_params(s, t, d)
    return cv.hadamard_params(d)


# --- weyl ---

def suite_weyl(d: int, n: int, seeds: int, jobs: int = 1):
    out = []
    # commutation relation, exhaustive at n = 1
    worst = 0.0
    for pv in np.ndindex(d, d):
        for qv in np.ndindex(d, d):
            x = make_point(pv[0], qv[0], d)
            y = make_point(pv[1], qv[1], d)
            lhs = weyl.weyl_operator(x, d) @ weyl.weyl_operator(y, d)
            if d == 2:
                rhs = weyl.commutation_phase(x, y, d) * weyl.weyl_literal(
                    [x.p[0] + y.p[0]], [x.q[0] + y.q[0]], d
                )
            else:
                rhs = weyl.commutation_phase(x, y, d) * weyl.weyl_operator(
                    make_point(x.p[0] + y.p[0], x.q[0] + y.q[0], d), d
                )
            worst = max(worst, float(np.abs(lhs - rhs).max()))
    out.append(_result("weyl.commutation_exhaustive_n1", 1e-12 - worst, f"d={d}"))
    # orthonormality of the full basis at (d, n)
    D = d**n
    mats = np.stack(
        [weyl.weyl_operator(PhasePoint.from_vec(v), d).reshape(-1)
         for v in np.indices((d,) * (2 * n)).reshape(2 * n, -1).T]
    )
    gram = (mats.conj() @ mats.T) / D
    worst = float(np.abs(gram - np.eye(d ** (2 * n))).max())
    out.append(_result("weyl.orthonormality", 1e-10 - worst, f"d={d} n={n}"))
    # key unitary conjugation identities for sampled G
    rng = np.random.default_rng(20_000 + d)
    worst = 0.0
    for _ in range(max(3, seeds // 8)):
        pm = sample_parity_matrix(rng, d, "even_only" if d == 2 else "positive")
        U = weyl.key_unitary(pm.as_array(), 1, d)
        Z, X, eye = weyl.zmat(d), weyl.xmat(d), np.eye(d)
        pairs = [
            (np.kron(X, eye), np.kron(_pow(X, pm.n_inv * pm.g11, d), _pow(X, -pm.n_inv * pm.g01, d))),
            (np.kron(eye, X), np.kron(_pow(X, -pm.n_inv * pm.g10, d), _pow(X, pm.n_inv * pm.g00, d))),
            (np.kron(Z, eye), np.kron(_pow(Z, pm.g00, d), _pow(Z, pm.g10, d))),
            (np.kron(eye, Z), np.kron(_pow(Z, pm.g01, d), _pow(Z, pm.g11, d))),
        ]
        for a, b in pairs:
            worst = max(worst, float(np.abs(U @ a @ U.conj().T - b).max()))
    out.append(_result("weyl.key_unitary_generators", 1e-12 - worst))
    if d != 2:
        t0 = weyl.parity_operator(d, 1)
        acc = sum(
            weyl.weyl_operator(make_point(p, q, d), d) for p in range(d) for q in range(d)
        ) / d
        out.append(_result("weyl.parity_sum", 1e-12 - float(np.abs(acc - t0).max())))
        worst = 0.0
        for p in range(d):
            for q in range(d):
                T = weyl.phase_point_operator(make_point(p, q, d), d)
                worst = max(worst, float(np.abs(T - T.conj().T).max()))
        out.append(_result("weyl.phase_point_hermitian", 1e-12 - worst))
    U = weyl.random_clifford(n, d, 10, seed=7)
    out.append(_result("weyl.random_clifford_closes", 0.0 if weyl.is_clifford(U, d, n) else -1.0))
    return out


def _pow(mat, k, d):
    return np.linalg.matrix_power(mat, int(k) % d)


# --- duality ---

def _duality_task(args):
    d, n, seed = args
    rng = np.random.default_rng(seed)
    rho = st.random_state(n, d, seed=rng.integers(2**31))
    sig = st.random_state(n, d, seed=rng.integers(2**31))
    tr, ts = st.char_function(rho), st.char_function(sig)
    out = []
    for klass in _PARITY_CLASSES:
        if d == 2 and klass == "positive":
            continue
        pm = sample_parity_matrix(rng, d, klass)
        left = st.char_function(cv.convolve(rho, sig, pm))
        right = cv.convolve_char(tr, ts, pm)
        gap = float(np.abs(left.values - right.values).max())
        out.append(_result(f"duality.{klass}.seed{seed}", 1e-10 - gap, f"d={d} n={n}"))
    return out


def suite_duality(d: int, n: int, seeds: int, jobs: int = 1):
    return _map_tasks(_duality_task, [(d, n, s) for s in range(seeds)], jobs)


# --- majorization ---

def _majorization_task(args):
    d, n, seed = args
    rng = np.random.default_rng(1000 + seed)
    rho = st.random_state(n, d, seed=rng.integers(2**31))
    sig = st.random_state(n, d, seed=rng.integers(2**31))
    out = []
    for klass in ("even_only", "odd_only", "positive", "trivial"):
        if d == 2 and klass == "positive":
            continue
        pm = sample_parity_matrix(rng, d, klass)
        conv = cv.convolve(rho, sig, pm)
        sides = []
        if klass in ("even_only", "positive") or (klass == "trivial" and pm.g00 != 0):
            sides.append(("rho", rho))
        if klass in ("odd_only", "positive") or (klass == "trivial" and pm.g00 == 0):
            sides.append(("sigma", sig))
        for tag, ref in sides:
            a = ent.clean_spectrum(conv)
            b = ent.clean_spectrum(ref)
            slack = float(np.min(np.cumsum(np.sort(b)[::-1]) - np.cumsum(np.sort(a)[::-1])))
            out.append(
                _result(f"majorization.{klass}.{tag}.seed{seed}", slack + 1e-9, f"d={d}")
            )
    # generalized extremality: spec(M(rho)) ≺ spec(rho)
    rep = mm.mean_state(rho)
    a = ent.clean_spectrum(rep.mean)
    b = ent.clean_spectrum(rho)
    slack = float(np.min(np.cumsum(np.sort(b)[::-1]) - np.cumsum(np.sort(a)[::-1])))
    out.append(_result(f"majorization.mean_state.seed{seed}", slack + 1e-9))
    return out


def suite_majorization(d: int, n: int, seeds: int, jobs: int = 1):
    return _map_tasks(_majorization_task, [(d, n, s) for s in range(seeds)], jobs)


# --- entropy ---

def _entropy_task(args):
    d, n, seed = args
    rng = np.random.default_rng(2000 + seed)
    rho = st.random_state(n, d, seed=rng.integers(2**31))
    sig = st.random_state(n, d, seed=rng.integers(2**31))
    alphas = (-2.0, 0.5, 1.0, 2.0, math.inf)
    out = []
    for klass in ("even_only", "odd_only", "positive"):
        if d == 2 and klass == "positive":
            continue
        pm = sample_parity_matrix(rng, d, klass)
        conv = cv.convolve(rho, sig, pm)
        for a in alphas:
            h_out = ent.renyi_entropy(conv, a)
            bounds = []
            if klass in ("even_only", "positive"):
                bounds.append(ent.renyi_entropy(rho, a))
            if klass in ("odd_only", "positive"):
                bounds.append(ent.renyi_entropy(sig, a))
            slack = h_out - max(bounds)
            out.append(_result(f"entropy.increase.{klass}.a{a}.seed{seed}", slack + 1e-8))
    # extremality restatement H_a(M) = H_a + D_a(rho || M)
    rep = mm.mean_state(rho)
    for a in (1.0, 2.0, math.inf):
        lhs = ent.renyi_entropy(rep.mean, a)
        rhs = ent.renyi_entropy(rho, a) + ent.renyi_relative(rho, rep.mean, a)
        out.append(_result(f"entropy.extremality.a{a}.seed{seed}", 1e-8 - abs(lhs - rhs)))
    # additivity
    for a in (0.5, 2.0):
        gap = abs(
            ent.renyi_entropy(st.tensor(rho, sig), a)
            - ent.renyi_entropy(rho, a)
            - ent.renyi_entropy(sig, a)
        )
        out.append(_result(f"entropy.additivity.a{a}.seed{seed}", 1e-9 - gap))
    # subentropy Schur consistency
    q_rho = ent.subentropy(rho)
    q_mean = ent.subentropy(rep.mean)
    out.append(_result(f"entropy.subentropy_mean.seed{seed}", q_mean - q_rho + 1e-6))
    return out


def suite_entropy(d: int, n: int, seeds: int, jobs: int = 1):
    out = _map_tasks(_entropy_task, [(d, n, s) for s in range(seeds)], jobs)
    ce = ent.second_law_counterexample(d, n)
    out.append(
        _result(
            "entropy.counterexample_g10_zero",
            ce["h_sigma"] - ce["h_out"] - 1e-6,
            "H(rho ⊠ sigma) < H(sigma) when G is not odd-parity positive",
        )
    )
    rep = ent.check_second_law(st.random_state(n, d, seed=99), _positive_params(d), 8, (0.5, 1, 2))
    out.append(_result("entropy.second_law", 0.0 if rep.ok else -1.0))
    if d ** (2 * n) <= 100:
        eq = ent.check_equality_case(st.basis_state(0, d, n), _positive_params(d), 2, seed=3)
        out.append(_result("entropy.equality_case", 0.0 if eq["ok"] else -1.0))
    return out


# --- fisher ---

def _fisher_task(args):
    d, n, seed = args
    rng = np.random.default_rng(3000 + seed)
    eta = 1e-3
    rho = fi.smooth(st.random_state(n, d, seed=rng.integers(2**31)), eta)
    sig = fi.smooth(st.random_state(n, d, seed=rng.integers(2**31)), eta)
    out = []
    params = _positive_params(d) if d != 2 else cv.cnot_family(1)
    rep = fi.check_fisher_convolution(rho, sig, params)
    out.append(_result(f"fisher.convolution.seed{seed}", rep.slack + 1e-7, f"eta={eta}"))
    lhs, rhs = fi.de_bruijn_check(rho)
    out.append(_result(f"fisher.de_bruijn.seed{seed}", 1e-3 - abs(lhs - rhs)))
    # dephasing commutation for an even-parity G
    pm = sample_parity_matrix(rng, d, "even_only")
    worst = 0.0
    for axis in ("X", "Z"):
        left = fi.dephase(cv.convolve(rho, sig, pm), axis, 0)
        right = cv.convolve(fi.dephase(rho, axis, 0), sig, pm)
        worst = max(worst, float(np.abs(left.mat - right.mat).max()))
    out.append(_result(f"fisher.dephase_commutes.seed{seed}", 1e-10 - worst))
    if d != 2:
        pm = _positive_params(d)
        ta, tb = 0.3, 0.7
        left = cv.convolve(fi.heat_semigroup(rho, ta), fi.heat_semigroup(sig, tb), pm)
        right = fi.heat_semigroup(cv.convolve(rho, sig, pm), ta + tb)
        gap = float(np.abs(left.mat - right.mat).max())
        out.append(_result(f"fisher.semigroup_intertwines.seed{seed}", 1e-9 - gap))
    return out


def suite_fisher(d: int, n: int, seeds: int, jobs: int = 1):
    out = _map_tasks(_fisher_task, [(d, n, s) for s in range(seeds)], jobs)
    rng = np.random.default_rng(77)
    D = d**n
    a = rng.standard_normal((D, D)) + 1j * rng.standard_normal((D, D))
    b = rng.standard_normal((D, D)) + 1j * rng.standard_normal((D, D))
    a, b = a + a.conj().T, b + b.conj().T
    gap = abs(
        np.trace(fi.liouvillean(a, d, n) @ b) - np.trace(a @ fi.liouvillean(b, d, n))
    )
    out.append(_result("fisher.liouvillean_hermitian", 1e-9 - float(gap)))
    return out


# --- hudson ---

def suite_hudson(d: int, n: int, seeds: int, jobs: int = 1):
    out = []
    worst = 0.0
    for state, _ in st.enumerate_pure_stabilizers(1, d):
        worst = min(worst, float(st.wigner(state).values.min()))
    out.append(_result("hudson.stabilizers_nonnegative", worst + 1e-12, f"d={d}"))
    trials = max(seeds, 100)
    negative = 0
    for s in range(trials):
        psi = st.random_pure(1, d, seed=s)
        if st.wigner(psi).values.min() < -1e-10:
            negative += 1
    out.append(
        _result(
            "hudson.random_pure_negative",
            negative - math.ceil(0.95 * trials),
            f"{negative}/{trials} with a negative entry",
        )
    )
    return out


# --- channels ---

def _channels_task(args):
    d, n, seed = args
    rng = np.random.default_rng(4000 + seed)
    c1 = chn.random_channel(n, d, seed=rng.integers(2**31))
    c2 = chn.random_channel(n, d, seed=rng.integers(2**31))
    out = []
    for klass in ("even_only", "odd_only") + (() if d == 2 else ("positive",)):
        pm = sample_parity_matrix(rng, d, klass)
        try:
            conv = chn.convolve_channels(c1, c2, pm)
            gap = 0.0
        except QpsError as exc:  # route disagreement
            out.append(_result(f"channels.routes.{klass}.seed{seed}", -1.0, str(exc)))
            continue
        D = d**n
        marg = np.einsum("ajbj->ab", conv.choi.mat.reshape(D, D, D, D))
        gap = float(np.abs(marg - np.eye(D) / D).max())
        out.append(_result(f"channels.routes_marginal.{klass}.seed{seed}", 1e-9 - gap))
    pm = sample_parity_matrix(rng, d, "odd_only")
    absorbed = chn.convolve_channels(c1, chn.depolarizing_channel(d, n), pm)
    gap = float(np.abs(absorbed.choi.mat - np.eye(d ** (2 * n)) / d ** (2 * n)).max())
    out.append(_result(f"channels.absorb.seed{seed}", 1e-10 - gap))
    mean = chn.mean_channel(c1)
    for a in (0.5, 1.0, 2.0, math.inf):
        slack = chn.channel_entropy(mean, a) - chn.channel_entropy(c1, a)
        out.append(_result(f"channels.mean_extremality.a{a}.seed{seed}", slack + 1e-9))
    return out


def suite_channels(d: int, n: int, seeds: int, jobs: int = 1):
    out = _map_tasks(_channels_task, [(d, n, s) for s in range(seeds)], jobs)
    wch = chn.weyl_conjugation_channel((1,) * n + (0,) * n, d, n)
    vals = chn.weyl_image_char_values(wch)
    in_01 = all(
        (abs(v) < 1e-8 or abs(v - 1) < 1e-6) for tab in vals.values() for v in np.ravel(tab)
    )
    agrees = in_01 == chn.is_zero_mean_channel(wch)
    out.append(_result("channels.zero_mean_corollary", 0.0 if agrees else -1.0))
    return out


_SUITE_FNS = {
    "weyl": suite_weyl,
    "duality": suite_duality,
    "majorization": suite_majorization,
    "entropy": suite_entropy,
    "fisher": suite_fisher,
    "hudson": suite_hudson,
    "channels": suite_channels,
}


def run_suite(name: str, d: int, n: int, seeds: int, jobs: int = 1):
    """Run one suite (or 'all'); returns an ordered list of CheckResults."""
    if name == "all":
        out = []
        for key in SUITES:
            if key == "hudson" and d == 2:
                continue
            out.extend(_SUITE_FNS[key](d, n, seeds, jobs))
        return out
    return _SUITE_FNS[name](d, n, seeds, jobs)
