"""Finite-dimensional checks of the generalized uncertainty relation.

Operators are Hermitian numpy matrices and states are unit vectors.  The
position/momentum pair is represented by truncated ladder operators, which
is exact on states that keep away from the top of the truncated basis.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

ALG_TOL = 1e-10


class DimensionMismatchError(ValueError):
    pass


class ConsistencyError(ArithmeticError):
    """A quantity that must be real or non-negative came out otherwise."""


class StationaryObservableError(ValueError):
    """d<A>/dt vanishes, so the time scale delta_t is undefined."""


def hermitian(m, tol: float = 1e-12) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 2:
        raise ValueError(f"operator must be a square matrix of size >= 2, got shape {m.shape}")
    if not np.allclose(m, m.conj().T, rtol=0, atol=tol * max(1.0, np.abs(m).max())):
        raise ValueError("operator is not Hermitian")
    return m


def state(psi, tol: float = 1e-12) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    if abs(np.linalg.norm(psi) - 1.0) > tol:
        raise ValueError(f"state must be normalized (norm = {np.linalg.norm(psi)!r})")
    return psi


def _check_dims(*ops, psi=None):
    n = {op.shape[0] for op in ops}
    if psi is not None:
        n.add(psi.shape[0])
    if len(n) != 1:
        raise DimensionMismatchError(f"dimension mismatch: {sorted(n)}")


def expectation(A, psi) -> float:
    A, psi = hermitian(A), state(psi)
    _check_dims(A, psi=psi)
    val = np.vdot(psi, A @ psi)
    if abs(val.imag) > ALG_TOL * max(1.0, abs(val.real)):
        raise ConsistencyError(f"<A> has imaginary part {val.imag!r}")
    return float(val.real)


def variance(A, psi) -> float:
    """<A^2> - <A>^2, clamped at zero for round-off."""
    A, psi = hermitian(A), state(psi)
    _check_dims(A, psi=psi)
    mean = expectation(A, psi)
    Apsi = A @ psi
    var = float(np.vdot(Apsi, Apsi).real) - mean ** 2
    if var < -ALG_TOL * max(1.0, mean ** 2):
        raise ConsistencyError(f"negative variance {var!r}")
    return max(var, 0.0)


def std_dev(A, psi) -> float:
    return float(np.sqrt(variance(A, psi)))


def eigen_variance(A, psi) -> float:
    """Variance from the eigen-expansion sum (a_n - <A>)^2 |c_n|^2."""
    A, psi = hermitian(A), state(psi)
    _check_dims(A, psi=psi)
    a, vecs = np.linalg.eigh(A)
    weights = np.abs(vecs.conj().T @ psi) ** 2
    mean = float(np.sum(a * weights))
    return float(np.sum((a - mean) ** 2 * weights))


def commutator_c(A, B) -> np.ndarray:
    """C with [A, B] = iC.  C is Hermitian whenever A and B are."""
    A, B = hermitian(A), hermitian(B)
    _check_dims(A, B)
    C = -1j * (A @ B - B @ A)
    scale = max(1.0, np.abs(C).max())
    if not np.allclose(C, C.conj().T, rtol=0, atol=ALG_TOL * scale):
        raise ConsistencyError("C = -i[A, B] is not Hermitian")
    return (C + C.conj().T) / 2


class UncertaintyResult(NamedTuple):
    lhs: float
    rhs: float
    holds: bool
    discriminant: float


def uncertainty_check(A, B, psi) -> UncertaintyResult:
    """delta_A * delta_B against |<C>|/2.

    ``discriminant`` is <C>^2 - 4 delta_A^2 delta_B^2 of the quadratic
    lambda^2 delta_B^2 + lambda <C> + delta_A^2, which is never negative, so the
    discriminant must be <= 0.
    """
    C = commutator_c(A, B)
    c_mean = expectation(C, psi)
    va, vb = variance(A, psi), variance(B, psi)
    lhs = float(np.sqrt(va * vb))
    rhs = 0.5 * abs(c_mean)
    return UncertaintyResult(lhs, rhs, lhs >= rhs - ALG_TOL, c_mean ** 2 - 4 * va * vb)


def quadratic_form(A, B, psi, lam: float) -> float:
    """lambda^2 delta_B^2 + lambda <C> + delta_A^2 (the squared norm of (A1 - i lambda B1)psi)."""
    return lam ** 2 * variance(B, psi) + lam * expectation(commutator_c(A, B), psi) + variance(A, psi)


def evolve(H, psi, t: float, hbar: float = 1.0) -> np.ndarray:
    """exp(-i H t / hbar) psi via the eigendecomposition of H."""
    H, psi = hermitian(H), state(psi)
    _check_dims(H, psi=psi)
    e, v = np.linalg.eigh(H)
    return v @ (np.exp(-1j * e * t / hbar) * (v.conj().T @ psi))


def ehrenfest_rate(A, H, psi, hbar: float = 1.0) -> float:
    """-(i/hbar) <[A, H]> = <C>/hbar where [A, H] = iC."""
    return expectation(commutator_c(A, H), psi) / hbar


class EhrenfestResult(NamedTuple):
    lhs: float
    rhs: float
    rel_err: float


def ehrenfest_check(A, H, psi, dt: float, hbar: float = 1.0) -> EhrenfestResult:
    """Centered finite difference of <A>(t) under exact evolution vs the commutator rate."""
    if not dt > 0:
        raise ValueError(f"dt must be > 0 (got {dt})")
    A, H, psi = hermitian(A), hermitian(H), state(psi)
    _check_dims(A, H, psi=psi)
    plus = expectation(A, evolve(H, psi, dt, hbar))
    minus = expectation(A, evolve(H, psi, -dt, hbar))
    lhs = (plus - minus) / (2 * dt)
    rhs = ehrenfest_rate(A, H, psi, hbar)
    err = abs(lhs - rhs)
    rel = err / abs(rhs) if rhs != 0 else err
    return EhrenfestResult(lhs, rhs, rel)


class EnergyTimeResult(NamedTuple):
    delta_E: float
    delta_t: float
    holds: bool


def energy_time_check(A, H, psi, hbar: float = 1.0, rate_floor: float = 1e-12) -> EnergyTimeResult:
    """delta_E * delta_t >= hbar/2 with delta_t = delta_A / |d<A>/dt|."""
    rate = ehrenfest_rate(A, H, psi, hbar)
    if abs(rate) <= rate_floor:
        raise StationaryObservableError("d<A>/dt = 0; delta_t is undefined for a stationary observable")
    delta_E = std_dev(H, psi)
    delta_t = std_dev(A, psi) / abs(rate)
    return EnergyTimeResult(delta_E, delta_t, delta_E * delta_t >= hbar / 2 - ALG_TOL)


PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)


def annihilation(n_levels: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1, n_levels)), 1).astype(complex)


def oscillator_xp(n_levels: int = 40, hbar: float = 1.0, mass: float = 1.0, omega: float = 1.0):
    """Truncated position and momentum matrices in the number basis."""
    a = annihilation(n_levels)
    ad = a.conj().T
    x = np.sqrt(hbar / (2 * mass * omega)) * (a + ad)
    p = 1j * np.sqrt(hbar * mass * omega / 2) * (ad - a)
    return x, p


def fock_state(n_levels: int, k: int = 0) -> np.ndarray:
    psi = np.zeros(n_levels, dtype=complex)
    psi[k] = 1.0
    return psi


def coherent_state(n_levels: int, alpha: complex) -> np.ndarray:
    """Truncated coherent state, renormalized; keep |alpha|^2 well below n_levels."""
    if alpha == 0:
        return fock_state(n_levels)
    k = np.arange(n_levels)
    log_fact = np.concatenate([[0.0], np.cumsum(np.log(k[1:]))])
    psi = np.exp(k * np.log(complex(alpha)) - 0.5 * log_fact)
    return psi / np.linalg.norm(psi)


def random_hermitian(n: int, rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
    m = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return scale * (m + m.conj().T) / 2


def random_state(n: int, rng: np.random.Generator) -> np.ndarray:
    psi = rng.normal(size=n) + 1j * rng.normal(size=n)
    return psi / np.linalg.norm(psi)


def random_suite(n_cases: int, seed: int | None = None, dims=range(2, 9)) -> list[UncertaintyResult]:
    """uncertainty_check on random Hermitian pairs and random states."""
    rng = np.random.default_rng(seed)
    dims = list(dims)
    out = []
    for _ in range(n_cases):
        n = int(rng.choice(dims))
        A, B = random_hermitian(n, rng), random_hermitian(n, rng)
        out.append(uncertainty_check(A, B, random_state(n, rng)))
    return out
