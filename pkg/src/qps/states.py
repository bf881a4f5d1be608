"""Density operators, characteristic and Wigner tables, MSPS enumeration.

A State is an immutable (d, n, matrix) triple validated as a density
operator.  Characteristic tables hold Xi(x) = Tr[rho w(-x)] over all of
V^n, shape (d,)*2n with the p coordinates on the first n axes.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .config import config, ensure_table_size
from .errors import (
    IncompatibleError,
    NotStateError,
    TooLargeError,
    UnsupportedDimensionError,
)
from .phase_space import (
    PhasePoint,
    PhaseSubgroup,
    check_prime,
    subgroup_generators,
    symplectic_inner,
)
from .weyl import (
    chi,
    matrix_from_weyl_table,
    weyl_coefficient_table,
    weyl_operator,
)


@dataclass(frozen=True)
class State:
    """A validated n-qudit density operator."""

    d: int
    n: int
    mat: np.ndarray

    @property
    def dim(self) -> int:
        return self.d**self.n

    def purity(self) -> float:
        return float(np.trace(self.mat @ self.mat).real)


def hermitize(mat: np.ndarray) -> np.ndarray:
    return 0.5 * (mat + mat.conj().T)


def make_state(mat, d: int, n: int | None = None, validate: bool = True) -> State:
    """Wrap a matrix as a State, re-Hermitizing and checking the invariants.

    Hermiticity to 1e-10, eigenvalues >= -1e-10, unit trace to 1e-10.
    """
    check_prime(d)
    mat = np.asarray(mat, dtype=complex)
    if n is None:
        n = round(np.log(mat.shape[0]) / np.log(d))
    if mat.shape != (d**n, d**n):
        raise IncompatibleError(f"matrix shape {mat.shape} is not ({d**n}, {d**n})")
    tol = config.tol_state
    if validate:
        if np.abs(mat - mat.conj().T).max() > tol:
            raise NotStateError("matrix is not Hermitian within tolerance")
        mat = hermitize(mat)
        tr = np.trace(mat).real
        if abs(tr - 1.0) > tol:
            raise NotStateError(f"trace {tr} is not 1 within tolerance")
        lo = np.linalg.eigvalsh(mat)[0]
        if lo < -tol:
            raise NotStateError(f"negative eigenvalue {lo}")
    else:
        mat = hermitize(mat)
    mat = mat.copy()
    mat.setflags(write=False)
    return State(d=d, n=int(n), mat=mat)


def maximally_mixed(d: int, n: int) -> State:
    D = d**n
    return make_state(np.eye(D) / D, d, n, validate=False)


def pure_state(vec, d: int, n: int | None = None) -> State:
    v = np.asarray(vec, dtype=complex).ravel()
    v = v / np.linalg.norm(v)
    return make_state(np.outer(v, v.conj()), d, n, validate=False)


def basis_state(k: int, d: int, n: int = 1) -> State:
    v = np.zeros(d**n, dtype=complex)
    v[k] = 1.0
    return pure_state(v, d, n)


def tensor(a: State, b: State) -> State:
    if a.d != b.d:
        raise IncompatibleError("tensor factors must share d")
    return make_state(np.kron(a.mat, b.mat), a.d, a.n + b.n, validate=False)


@dataclass(frozen=True)
class CharTable:
    """Characteristic function Xi: V^n -> C as a dense (d,)*2n array."""

    d: int
    n: int
    values: np.ndarray

    def value(self, point: PhasePoint) -> complex:
        return complex(self.values[tuple(point.vec() % self.d)])

    def flat(self) -> np.ndarray:
        return self.values.reshape(-1)


@dataclass(frozen=True)
class WignerTable:
    """Discrete Wigner function as a dense real (d,)*2n array (odd d)."""

    d: int
    n: int
    values: np.ndarray

    def value(self, point: PhasePoint) -> float:
        return float(self.values[tuple(point.vec() % self.d)])

    def flat(self) -> np.ndarray:
        return self.values.reshape(-1)


def char_function(state: State) -> CharTable:
    """Xi_rho(x) = Tr[rho w(-x)] over all of V^n."""
    vals = weyl_coefficient_table(state.mat, state.d, state.n)
    origin = abs(vals[(0,) * (2 * state.n)] - 1.0)
    if origin > 1e-9:
        raise NotStateError(f"Xi(0) = 1 violated by {origin:.2e}")
    if np.abs(vals).max() > 1 + 1e-9:
        raise NotStateError("characteristic value exceeds unit modulus")
    vals.setflags(write=False)
    return CharTable(d=state.d, n=state.n, values=vals)


def char_table_of(mat: np.ndarray, d: int, n: int) -> CharTable:
    """Characteristic table of an arbitrary operator (no state checks)."""
    vals = weyl_coefficient_table(mat, d, n)
    vals.setflags(write=False)
    return CharTable(d=d, n=n, values=vals)


def from_char(table: CharTable) -> np.ndarray:
    """(1/d^n) sum_x Xi(x) w(x); not validated as a state."""
    return matrix_from_weyl_table(table.values, table.d, table.n)


def wigner(state: State) -> WignerTable:
    """W_rho(x) = (1/d^n) Tr[rho T(x)], via the symplectic transform of Xi."""
    if state.d == 2:
        raise UnsupportedDimensionError("discrete Wigner functions need odd d")
    table = char_function(state)
    vals = _wigner_from_char_values(table.values, state.d, state.n)
    if np.abs(vals.imag).max() > 1e-9:
        raise NotStateError("Wigner table has a non-real entry")
    out = vals.real
    if abs(out.sum() - 1.0) > 1e-9:
        raise NotStateError("Wigner table does not sum to 1")
    out.setflags(write=False)
    return WignerTable(d=state.d, n=state.n, values=out)


def _wigner_from_char_values(xi: np.ndarray, d: int, n: int) -> np.ndarray:
    # W(u, v) = (1/d^2n) sum_{p,q} Xi(p,q) chi(p.v - q.u)
    paxes = tuple(range(n))
    qaxes = tuple(range(n, 2 * n))
    r = np.fft.ifftn(xi, axes=paxes)  # p -> v, carries 1/d^n
    r = np.fft.fftn(r, axes=qaxes)  # q -> u
    r = np.moveaxis(r, qaxes + paxes, paxes + qaxes)  # reorder to (u, v)
    return r / d**n


def char_from_wigner(wt: WignerTable) -> CharTable:
    """Invert the symplectic transform (exact inverse of wigner)."""
    d, n = wt.d, wt.n
    paxes = tuple(range(n))
    qaxes = tuple(range(n, 2 * n))
    r = np.moveaxis(wt.values.astype(complex), paxes + qaxes, qaxes + paxes)
    r = np.fft.ifftn(r, axes=qaxes) * d**n
    r = np.fft.fftn(r, axes=paxes)
    vals = r
    vals.setflags(write=False)
    return CharTable(d=d, n=n, values=vals)


def state_from_wigner(wt: WignerTable) -> np.ndarray:
    """Reconstruct the matrix sum_x W(x) T(x)."""
    return from_char(char_from_wigner(wt))


def pauli_rank(state: State) -> int:
    """Number of phase-space points where |Xi| exceeds the support threshold."""
    table = char_function(state)
    return int(np.count_nonzero(np.abs(table.values) > config.tol_supp))


def random_state(n: int, d: int, seed, rank: int | None = None) -> State:
    """Seeded Haar-ish mixed state G G^dag / Tr with G complex Gaussian."""
    D = d**n
    if rank is None:
        rank = D
    if rank > D:
        raise IncompatibleError(f"rank {rank} exceeds dimension {D}")
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((D, rank)) + 1j * rng.standard_normal((D, rank))
    mat = g @ g.conj().T
    return make_state(mat / np.trace(mat).real, d, n, validate=False)


def random_pure(n: int, d: int, seed) -> State:
    return random_state(n, d, seed, rank=1)


def enumerate_isotropic_subgroups(n: int, d: int) -> list[PhaseSubgroup]:
    """All isotropic (abelian-Weyl) subgroups of V^n, deterministically ordered.

    Breadth-first closure over the subgroup lattice; capped at
    d^{2n} <= max_enumeration.
    """
    if d ** (2 * n) > config.max_enumeration:
        raise TooLargeError(f"d^2n = {d ** (2 * n)} exceeds the enumeration cap")
    from .weyl import digit_table

    all_vecs = np.indices((d,) * (2 * n)).reshape(2 * n, -1).T
    nonzero = [v for v in all_vecs if v.any()]
    trivial = subgroup_generators([], d, n)
    found = {trivial.element_set(): trivial}
    frontier = [trivial]
    while frontier:
        nxt = []
        for grp in frontier:
            gen_pts = [PhasePoint.from_vec(v) for v in grp.elements]
            for v in nonzero:
                if v in grp:
                    continue
                x = PhasePoint.from_vec(v)
                if any(symplectic_inner(x, g, d) != 0 for g in grp.generators):
                    continue
                bigger = subgroup_generators(list(grp.generators) + [x], d, n)
                key = bigger.element_set()
                if key not in found:
                    found[key] = bigger
                    nxt.append(bigger)
        frontier = nxt
    groups = list(found.values())
    groups.sort(key=lambda g: (g.size, g.elements.tobytes()))
    return groups


def msps_from_group(group: PhaseSubgroup, chars, d: int | None = None) -> State:
    """The MSPS fixed by a subgroup and one character tuple.

    chars[i] selects the chi(chars[i]) eigenspace of w(generator_i); the
    state is the product of the averaged eigenprojectors, normalized.
    """
    d = group.d if d is None else d
    D = d**group.n
    P = np.eye(D, dtype=complex)
    for gen, k in zip(group.generators, chars):
        w = weyl_operator(gen, d)
        a = complex(chi(-int(k), d)) * w
        acc = np.eye(D, dtype=complex)
        cur = np.eye(D, dtype=complex)
        for _ in range(d - 1):
            cur = cur @ a
            acc = acc + cur
        P = P @ (acc / d)
    tr = np.trace(P).real
    if tr < 0.5:  # independent generators always leave dim d^{n-r} >= 1
        raise IncompatibleError("character tuple annihilates the projector")
    return make_state(hermitize(P) / tr, d, group.n, validate=False)


def iter_msps(n: int, d: int):
    """Yield (state, group, chars) for every MSPS, deterministically."""
    for group in enumerate_isotropic_subgroups(n, d):
        for chars in product(range(d), repeat=group.rank):
            yield msps_from_group(group, chars), group, chars


def enumerate_msps(n: int, d: int) -> list[State]:
    """All minimal stabilizer-projection states at (n, d)."""
    return [s for s, _, _ in iter_msps(n, d)]


def enumerate_pure_stabilizers(n: int, d: int) -> list[tuple[State, PhaseSubgroup]]:
    """The pure stabilizer states (maximal isotropic groups) with groups."""
    out = []
    for state, group, _ in iter_msps(n, d):
        if group.size == d**n:
            out.append((state, group))
    return out
