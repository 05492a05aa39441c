"""Matrix recovery for the Schroedinger representation of the finite
Heisenberg group on Z_n (n >= 2, not necessarily prime).

The central variable is dropped throughout: pi(k, l) acts on C^n by
(pi(k,l) f)(y) = e^{2 pi i l y/n} f(y-k).  The rescaled matrices
n^{-1/2} pi(k,l) form an orthonormal basis of C^{n x n}, and a generator
phi admits matrix recovery iff its ambiguity function
A_phi(k,l) = n^{-1/2} <phi, pi(k,l) phi> vanishes nowhere.  Recovery is a
two-step Fourier inversion over Z_n^2.
"""

from __future__ import annotations

import numpy as np

from .errors import InadmissibleGeneratorError

#: "nowhere vanishing" threshold, relative to ||phi||^2
AMBIGUITY_RTOL = 1e-10


def _check_n(n: int) -> None:
    if not isinstance(n, (int, np.integer)) or n < 2:
        raise ValueError(f"need integer n >= 2, got {n}")


def _check_phi(phi) -> np.ndarray:
    phi = np.asarray(phi, dtype=complex)
    if phi.ndim != 1 or len(phi) < 2:
        raise ValueError("generator must be a vector on Z_n with n >= 2")
    return phi


def schrodinger_matrix(k: int, l: int, n: int) -> np.ndarray:
    """Unitary matrix of pi(k, l) on C^n."""
    _check_n(n)
    k, l = k % n, l % n
    M = np.zeros((n, n), dtype=complex)
    y = np.arange(n)
    M[y, (y - k) % n] = np.exp(2j * np.pi * l * y / n)
    return M


def ambiguity(phi) -> np.ndarray:
    """Ambiguity table A_phi(k,l) = n^{-1/2} <phi, pi(k,l) phi> on Z_n^2."""
    phi = _check_phi(phi)
    n = len(phi)
    A = np.empty((n, n), dtype=complex)
    for k in range(n):
        for l in range(n):
            A[k, l] = np.vdot(schrodinger_matrix(k, l, n) @ phi, phi)
    return A / np.sqrt(n)


def check_generator_h(phi) -> bool:
    """True iff the ambiguity function of phi is nowhere vanishing
    (min |A_phi| > AMBIGUITY_RTOL * ||phi||^2)."""
    phi = _check_phi(phi)
    norm2 = float(np.vdot(phi, phi).real)
    if norm2 == 0:
        return False
    return bool(np.min(np.abs(ambiguity(phi))) > AMBIGUITY_RTOL * norm2)


def h_forward(A, phi) -> np.ndarray:
    """Measurements F(k,l) = <A pi(k,l) phi, pi(k,l) phi> on Z_n^2."""
    phi = _check_phi(phi)
    n = len(phi)
    A = np.asarray(A, dtype=complex)
    if A.shape != (n, n):
        raise ValueError(f"matrix must be {n}x{n}, got {A.shape}")
    F = np.empty((n, n), dtype=complex)
    for k in range(n):
        for l in range(n):
            w = schrodinger_matrix(k, l, n) @ phi
            F[k, l] = np.vdot(w, A @ w)
    return F


def h_recover(F, phi) -> np.ndarray:
    """Two-step inversion of :func:`h_forward`.

    (i) F_hat(k',l') = sum_{k,l} F(k,l) e^{-2 pi i (l'k - l k')/n};
    (ii) A = sum_{k',l'} n^{-2} F_hat(k',l') / <pi(k',l') phi, phi> * pi(k',l').

    The mixed-sign kernel in (i) matches the conjugation action
    pi(k,l)^* pi(k',l') pi(k,l) = e^{2 pi i (l'k - lk')/n} pi(k',l').
    """
    phi = _check_phi(phi)
    n = len(phi)
    F = np.asarray(F, dtype=complex)
    if F.shape != (n, n):
        raise ValueError(f"measurements must be {n}x{n}, got {F.shape}")
    amb = ambiguity(phi)
    norm2 = float(np.vdot(phi, phi).real)
    bad = np.argwhere(np.abs(amb) <= AMBIGUITY_RTOL * max(norm2, np.finfo(float).tiny))
    if len(bad):
        k0, l0 = (int(v) for v in bad[0])
        raise InadmissibleGeneratorError(
            f"ambiguity function vanishes at (k,l) = ({k0},{l0})"
        )
    idx = np.arange(n)
    E = np.exp(-2j * np.pi * np.outer(idx, idx) / n)
    # F_hat[k', l'] = sum_{k,l} F[k,l] e^{-2 pi i l'k/n} e^{+2 pi i lk'/n}
    F_hat = E.conj() @ F.T @ E.T
    A = np.zeros((n, n), dtype=complex)
    for kp in range(n):
        for lp in range(n):
            pi_m = schrodinger_matrix(kp, lp, n)
            denom = np.vdot(phi, pi_m @ phi)  # <pi phi, phi>
            A += F_hat[kp, lp] / denom * pi_m
    return A / n**2
