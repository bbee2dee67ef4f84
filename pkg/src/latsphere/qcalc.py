"""Exact integer arithmetic for q-binomial coefficients and prime powers.

Everything returns plain Python ints.  The quantities counted downstream
routinely exceed 64 bits (e.g. subspace counts in F_2^20), so no floating
point appears anywhere in this package.
"""

from __future__ import annotations


def gaussian_binomial(l: int, k: int, q: int) -> int:
    """The q-binomial coefficient [l choose k]_q as an exact integer.

    Counts the k-dimensional subspaces of an l-dimensional space over a field
    with q elements.  Returns 0 for k outside 0..l.  The product is evaluated
    incrementally; every prefix is itself a q-binomial, so each division is
    exact.
    """
    if q < 2:
        raise ValueError(f"q must be at least 2, got {q}")
    if l < 0:
        raise ValueError(f"l must be nonnegative, got {l}")
    if k < 0 or k > l:
        return 0
    k = min(k, l - k)
    out = 1
    for i in range(1, k + 1):
        out, rem = divmod(out * (q ** (l - k + i) - 1), q**i - 1)
        if rem:  # unreachable by the q-Pascal identity
            raise ArithmeticError(f"inexact division in [{l} choose {k}]_{q}")
    return out


def ppow(p: int, e: int) -> int:
    """Exact p**e for nonnegative e."""
    if p < 2:
        raise ValueError(f"base must be at least 2, got {p}")
    if e < 0:
        raise ValueError(f"exponent must be nonnegative, got {e}")
    return p**e


def is_prime(n: int) -> bool:
    """Trial-division primality test; fine for the small moduli used here."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True
