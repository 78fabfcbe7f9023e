"""Small integer-arithmetic helpers shared by the numerics and arith layers.

Everything here is exact integer work: factorization by trial division,
Moebius/divisor tables, Kronecker symbols and fundamental-discriminant
splitting.  Kept dependency-free so both `geodex.numerics` and `geodex.arith`
can import it without cycles.
"""

from __future__ import annotations

import math
from functools import lru_cache

from .errors import DomainError


@lru_cache(maxsize=200_000)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of |n| as ((p, e), ...) with p strictly increasing."""
    if n == 0:
        raise DomainError("factorize(0) is undefined")
    m = abs(n)
    out = []
    for p in (2, 3):
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
    # wheel over 6k +/- 1
    p = 5
    while p * p <= m:
        for q in (p, p + 2):
            if m % q == 0:
                e = 0
                while m % q == 0:
                    m //= q
                    e += 1
                out.append((q, e))
        p += 6
    if m > 1:
        out.append((m, 1))
    out.sort()
    return tuple(out)


def divisors(n: int) -> list[int]:
    """All positive divisors of |n|, sorted."""
    ds = [1]
    for p, e in factorize(n):
        ds = [d * p**k for d in ds for k in range(e + 1)]
    return sorted(ds)


def mobius(n: int) -> int:
    if n < 1:
        raise DomainError("mobius expects n >= 1")
    if n == 1:
        return 1
    mu = 1
    for _, e in factorize(n):
        if e > 1:
            return 0
        mu = -mu
    return mu


def tau0(n: int) -> int:
    """Divisor count d(|n|)."""
    t = 1
    for _, e in factorize(n):
        t *= e + 1
    return t


def squarefree_part(n: int) -> int:
    """Signed squarefree kernel: n = squarefree_part(n) * square."""
    s = 1 if n > 0 else -1
    for p, e in factorize(n):
        if e % 2:
            s *= p
    return s


def is_square(n: int) -> bool:
    if n < 0:
        return False
    r = math.isqrt(n)
    return r * r == n


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n) for arbitrary integers."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    if n < 0:
        return (-1 if a < 0 else 1) * kronecker(a, -n)
    # strip factors of 2 from n
    t = 0
    while n % 2 == 0:
        n //= 2
        t += 1
    if t:
        if a % 2 == 0:
            return 0
        # (a/2)^t = ((-1)^((a^2-1)/8))^t
        s = 1 if (a % 8 in (1, 7)) else -1
        acc = s**t
    else:
        acc = 1
    a %= n
    # Jacobi symbol (a/n) for odd n > 0
    result = acc
    while a != 0:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def is_fundamental_discriminant(d: int) -> bool:
    """True for d = 1 and every fundamental quadratic field discriminant."""
    if d == 0:
        return False
    if d % 4 == 1:
        return abs(squarefree_part(d)) == abs(d)
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and abs(squarefree_part(m)) == abs(m)
    return False


def fundamental_decomposition(n: int) -> tuple[int, int]:
    """Split n = D0 * f**2 with D0 a fundamental discriminant (or 1), f >= 1.

    Requires n != 0 and n = 0, 1 (mod 4); raises DomainError otherwise.
    """
    if n == 0:
        raise DomainError("n = 0 has no fundamental decomposition")
    if n % 4 not in (0, 1):
        raise DomainError(f"n = {n} is not a discriminant (n mod 4 must be 0 or 1)")
    d1 = squarefree_part(n)
    if d1 % 4 == 1:
        d0 = d1
    else:
        d0 = 4 * d1
    q, r = divmod(n, d0)
    if r != 0 or not is_square(q):
        raise DomainError(f"cannot split n = {n} as D0*f^2")
    return d0, math.isqrt(q)


def gcd3(a: int, b: int, c: int) -> int:
    return math.gcd(math.gcd(abs(a), abs(b)), abs(c))
