"""Weyl operators, phase-space point operators, the key unitary, Cliffords.

Single-site Weyl operators are chi(-2^{-1} p q) Z^p X^q for odd prime d
and i^{-pq} Z^p X^q for d = 2, with X|k> = |k+1> and Z|k> = chi(k)|k>;
multi-site operators are tensor products.  The qubit convention is taken
literally: phases of products are governed by integer exponents of i
(see ``weyl_literal`` and ``commutation_phase``).

Dense matrices throughout; Weyl operators are built from explicit shift
and clock factors, never matrix exponentials.  The Weyl-coefficient
transform (matrix -> table of Tr[M w(-x)]) runs through one FFT per
diagonal stripe, which is exact up to float rounding.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .config import config, ensure_table_size
from .errors import (
    IncompatibleError,
    NotUnitaryError,
    SingularGError,
    UnsupportedDimensionError,
)
from .phase_space import PhasePoint, check_prime, field_inv, make_point, symplectic_inner


@dataclass(frozen=True)
class WeylLabel:
    """A Weyl operator up to phase: w = phase * w(point)."""

    point: PhasePoint
    phase: complex


@lru_cache(maxsize=None)
def omega_table(d: int) -> np.ndarray:
    """The d-th roots of unity chi(k) = exp(2 pi i k / d), k = 0..d-1."""
    table = np.exp(2j * np.pi * np.arange(d) / d)
    table.setflags(write=False)
    return table


def chi(k, d: int):
    """chi(k) for an integer or integer array k (reduced mod d)."""
    return omega_table(d)[np.asarray(k) % d]


@lru_cache(maxsize=None)
def digit_table(d: int, n: int) -> np.ndarray:
    """(d^n, n) table of base-d digits, site 0 most significant."""
    idx = np.indices((d,) * n).reshape(n, -1).T
    idx = np.ascontiguousarray(idx.astype(np.int64))
    idx.setflags(write=False)
    return idx


@lru_cache(maxsize=None)
def _radix(d: int, n: int) -> np.ndarray:
    r = d ** np.arange(n - 1, -1, -1, dtype=np.int64)
    r.setflags(write=False)
    return r


def encode_digits(digs: np.ndarray, d: int) -> np.ndarray:
    """Flat indices of digit rows (inverse of digit_table lookup)."""
    n = digs.shape[-1]
    return digs @ _radix(d, n)


def zmat(d: int) -> np.ndarray:
    return np.diag(omega_table(d)).astype(complex)


def xmat(d: int) -> np.ndarray:
    X = np.zeros((d, d), dtype=complex)
    X[(np.arange(d) + 1) % d, np.arange(d)] = 1.0
    return X


def _site_phase(p: int, q: int, d: int) -> complex:
    if d == 2:
        return (-1j) ** (p * q)
    inv2 = field_inv(2, d)
    return complex(chi(-inv2 * p * q, d))


@lru_cache(maxsize=None)
def _site_weyl_table(d: int) -> np.ndarray:
    """All single-site Weyl matrices, shape (d, d, d, d) indexed [p, q]."""
    table = np.zeros((d, d, d, d), dtype=complex)
    om = omega_table(d)
    k = np.arange(d)
    for p in range(d):
        for q in range(d):
            # (Z^p X^q)[m, k] = chi(p (k+q)) delta_{m, k+q}
            m = (k + q) % d
            mat = np.zeros((d, d), dtype=complex)
            mat[m, k] = om[(p * m) % d]
            table[p, q] = _site_phase(p, q, d) * mat
    table.setflags(write=False)
    return table


def weyl_operator(point: PhasePoint, d: int) -> np.ndarray:
    """The unitary w(p, q) on d^n dimensions."""
    table = _site_weyl_table(d)
    out = np.array([[1.0 + 0j]])
    for pk, qk in zip(point.p, point.q):
        out = np.kron(out, table[pk % d, qk % d])
    return out


def weyl_literal(p_ints, q_ints, d: int) -> np.ndarray:
    """w at unreduced integer labels, following the defining formula.

    For odd d this equals weyl_operator at the reduced label.  For d = 2
    the phase i^{-pq} uses the integer products, so e.g. the label (1, 2)
    gives -Z rather than Z; the commutation relation holds in this form.
    """
    out = np.array([[1.0 + 0j]])
    Z, X = zmat(d), xmat(d)
    for pk, qk in zip(np.atleast_1d(p_ints), np.atleast_1d(q_ints)):
        pk, qk = int(pk), int(qk)
        if d == 2:
            phase = (-1j) ** (pk * qk)
        else:
            phase = _site_phase(pk % d, qk % d, d)
        site = phase * (
            np.linalg.matrix_power(Z, pk % d) @ np.linalg.matrix_power(X, qk % d)
        )
        out = np.kron(out, site)
    return out


def commutation_phase(x: PhasePoint, y: PhasePoint, d: int) -> complex:
    """The scalar c in w(x) w(y) = c * w(x + y).

    Odd d: chi(2^{-1} <x,y>_s); d = 2: i to the integer symplectic
    product, with w(x + y) read literally at the unreduced label.
    """
    if d == 2:
        s_int = sum(px * qy - qx * py for px, qx, py, qy in zip(x.p, x.q, y.p, y.q))
        return 1j**s_int
    inv2 = field_inv(2, d)
    return complex(chi(inv2 * symplectic_inner(x, y, d), d))


@lru_cache(maxsize=None)
def weyl_phase_grid(d: int, n: int) -> np.ndarray:
    """phase(p, q) of w(p, q) over the full V^n grid, shape (d,)*2n."""
    grid = np.indices((d,) * (2 * n))
    pq_sum = sum(grid[k] * grid[n + k] for k in range(n))
    if d == 2:
        out = (-1j) ** pq_sum
    else:
        inv2 = field_inv(2, d)
        out = chi(-inv2 * pq_sum, d)
    out = np.asarray(out, dtype=complex)
    out.setflags(write=False)
    return out


def weyl_coefficient_table(mat: np.ndarray, d: int, n: int) -> np.ndarray:
    """Tr[mat * w(-x)] for every x in V^n, as an array of shape (d,)*2n.

    Dividing by d^n gives the coefficients of mat in the Weyl basis.
    """
    ensure_table_size(d, n)
    D = d**n
    dig = digit_table(d, n)
    # stripes[k, q] = mat[(k + q) mod d, k]
    row = encode_digits((dig[:, None, :] + dig[None, :, :]) % d, d)
    stripes = mat[row, np.arange(D)[:, None]]
    stripes = stripes.reshape((d,) * (2 * n))
    f = np.fft.fftn(stripes, axes=tuple(range(n)))
    return weyl_phase_grid(d, n) * f


def matrix_from_weyl_table(table: np.ndarray, d: int, n: int) -> np.ndarray:
    """Inverse of weyl_coefficient_table: (1/d^n) sum_x table[x] w(x)."""
    D = d**n
    a = np.asarray(table, dtype=complex) * weyl_phase_grid(d, n)
    b = (D * np.fft.ifftn(a, axes=tuple(range(n)))).reshape(D, D)
    dig = digit_table(d, n)
    qidx = encode_digits((dig[:, None, :] - dig[None, :, :]) % d, d)
    return b[np.arange(D)[:, None], qidx] / D


def parity_operator(d: int, n: int) -> np.ndarray:
    """T(0, 0) = sum_j |-j><j| in the computational basis."""
    D = d**n
    dig = digit_table(d, n)
    P = np.zeros((D, D), dtype=complex)
    P[encode_digits((-dig) % d, d), np.arange(D)] = 1.0
    return P


def phase_point_operator(point: PhasePoint, d: int, n: int | None = None) -> np.ndarray:
    """T(x) = w(x) T(0,0) w(x)^dag; Hermitian, defined for odd prime d."""
    if d == 2:
        raise UnsupportedDimensionError("phase-space point operators need odd d")
    check_prime(d)
    if n is None:
        n = point.n
    w = weyl_operator(point, d)
    return w @ parity_operator(d, n) @ w.conj().T


def is_unitary(mat: np.ndarray, tol: float = 1e-10) -> bool:
    D = mat.shape[0]
    return np.abs(mat.conj().T @ mat - np.eye(D)).max() < tol


def is_hermitian(mat: np.ndarray, tol: float = 1e-10) -> bool:
    return np.abs(mat - mat.conj().T).max() < tol


def is_weyl_up_to_phase(
    A: np.ndarray, d: int, n: int, one_tol: float | None = None, zero_tol: float | None = None
):
    """The WeylLabel of A when A is a Weyl operator up to phase, else None.

    A is expanded in the Weyl basis; the label is accepted only when
    exactly one coefficient has modulus >= 1 - one_tol and every other
    coefficient has modulus <= zero_tol.
    """
    one_tol = config.weyl_coeff_one if one_tol is None else one_tol
    zero_tol = config.weyl_coeff_zero if zero_tol is None else zero_tol
    coeffs = weyl_coefficient_table(A, d, n) / d**n
    mags = np.abs(coeffs)
    hits = np.argwhere(mags >= 1 - one_tol)
    if len(hits) != 1:
        return None
    rest = mags.copy()
    rest[tuple(hits[0])] = 0.0
    if rest.max() > zero_tol:
        return None
    idx = tuple(int(v) for v in hits[0])
    point = PhasePoint(idx[:n], idx[n:])
    c = coeffs[tuple(hits[0])]
    return WeylLabel(point=point, phase=c / abs(c))


def embed_one_site(gate: np.ndarray, site: int, n: int, d: int) -> np.ndarray:
    """Single-site gate lifted to the n-qudit register."""
    left = np.eye(d**site, dtype=complex)
    right = np.eye(d ** (n - site - 1), dtype=complex)
    return np.kron(np.kron(left, gate), right)


def _site_permutation(d: int, n: int, order) -> np.ndarray:
    """Permutation matrix moving site order[k] of the input to slot k."""
    D = d**n
    dig = digit_table(d, n)
    newidx = encode_digits(dig[:, list(order)], d)
    P = np.zeros((D, D), dtype=complex)
    P[newidx, np.arange(D)] = 1.0
    return P


def embed_two_site(gate: np.ndarray, site_a: int, site_b: int, n: int, d: int) -> np.ndarray:
    """Two-site gate (on d^2 dims) lifted to act on sites (site_a, site_b)."""
    if site_a == site_b:
        raise IncompatibleError("two-site gate needs distinct sites")
    order = [site_a, site_b] + [k for k in range(n) if k not in (site_a, site_b)]
    P = _site_permutation(d, n, order)
    full = np.kron(gate, np.eye(d ** (n - 2), dtype=complex))
    return P.conj().T @ full @ P


def fourier_gate(d: int) -> np.ndarray:
    """F|j> = d^{-1/2} sum_k chi(jk) |k>."""
    j = np.arange(d)
    return omega_table(d)[np.outer(j, j) % d] / np.sqrt(d)


def phase_gate(d: int) -> np.ndarray:
    """diag(chi(2^{-1} j (j-1))) for odd d; diag(1, i) for d = 2."""
    if d == 2:
        return np.diag([1.0, 1j]).astype(complex)
    inv2 = field_inv(2, d)
    j = np.arange(d)
    return np.diag(chi(inv2 * j * (j - 1), d))


def multiplier_gate(a: int, d: int) -> np.ndarray:
    """M_a |j> = |a j mod d>, a invertible mod d."""
    a = int(a) % d
    field_inv(a, d)  # raises on a = 0; any nonzero a is invertible mod prime
    M = np.zeros((d, d), dtype=complex)
    M[(a * np.arange(d)) % d, np.arange(d)] = 1.0
    return M


def cnot_gate(d: int) -> np.ndarray:
    """Two-qudit entangler: the key unitary for G = [[1, 0], [1, 1]].

    For d = 2 this is CNOT with control on the second qubit.
    """
    return key_unitary([[1, 0], [1, 1]], 1, d)


def t_gate() -> np.ndarray:
    """The qubit T gate diag(1, e^{i pi/4}) (not Clifford)."""
    return np.diag([1.0, np.exp(1j * np.pi / 4)]).astype(complex)


def key_unitary(G, n: int, d: int) -> np.ndarray:
    """The key unitary U for parameter matrix G, on 2n qudits.

    U maps |i>|j> to |N g11 i - N g10 j> |-N g01 i + N g00 j> per site,
    with N = (det G)^{-1}; a permutation of the d^{2n} basis states.
    """
    g = np.array(G, dtype=np.int64) % d
    det = int(g[0, 0] * g[1, 1] - g[0, 1] * g[1, 0]) % d
    if det == 0:
        raise SingularGError(f"G = {g.tolist()} is singular mod {d}")
    N = field_inv(det, d)
    D = d**n
    dig = digit_table(d, n)
    U = np.zeros((D * D, D * D), dtype=complex)
    for a in range(D):
        i = dig[a]
        ip = (N * (g[1, 1] * i[None, :] - g[1, 0] * dig)) % d  # rows: j
        jp = (N * (-g[0, 1] * i[None, :] + g[0, 0] * dig)) % d
        src = a * D + np.arange(D)
        dst = encode_digits(ip, d) * D + encode_digits(jp, d)
        U[dst, src] = 1.0
    return U


def is_clifford(U: np.ndarray, d: int, n: int) -> bool:
    """True iff U maps every Weyl generator to a Weyl operator up to phase."""
    if not is_unitary(U):
        raise NotUnitaryError("is_clifford requires a unitary input")
    Udag = U.conj().T
    for site in range(n):
        for gate in (xmat(d), zmat(d)):
            g = embed_one_site(gate, site, n, d)
            if is_weyl_up_to_phase(U @ g @ Udag, d, n) is None:
                return False
    return True


def random_clifford(n: int, d: int, word_length: int, seed) -> np.ndarray:
    """Product of word_length random Clifford generators (seeded).

    Generators: Fourier, phase gate, multiplier, Weyl operators, and the
    two-qudit entangler when n >= 2.
    """
    check_prime(d)
    rng = np.random.default_rng(seed)
    D = d**n
    U = np.eye(D, dtype=complex)
    kinds = ["fourier", "phase", "weyl"]
    if d > 2:
        kinds.append("mult")
    if n >= 2:
        kinds.append("cnot")
    for _ in range(word_length):
        kind = kinds[rng.integers(len(kinds))]
        if kind == "fourier":
            g = embed_one_site(fourier_gate(d), int(rng.integers(n)), n, d)
        elif kind == "phase":
            g = embed_one_site(phase_gate(d), int(rng.integers(n)), n, d)
        elif kind == "mult":
            a = int(rng.integers(2, d))
            g = embed_one_site(multiplier_gate(a, d), int(rng.integers(n)), n, d)
        elif kind == "weyl":
            vec = rng.integers(0, d, size=2 * n)
            g = weyl_operator(PhasePoint.from_vec(vec), d)
        else:
            a, b = rng.choice(n, size=2, replace=False)
            g = embed_two_site(cnot_gate(d), int(a), int(b), n, d)
        U = g @ U
    return U
