"""Exact algebra of multiplicative arithmetic functions.

Everything here is exact integer arithmetic: factorization by trial
division, multiplicative functions given by their rule on prime powers,
Dirichlet convolution and inverse computed at the prime-power level,
Gaussian binomial coefficients, and the signed sequence families whose
normalized values are the reduced equivariant Euler characteristics of
partition posets of symmetric groups.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb, isqrt
from typing import Callable

from .errors import ConsistencyError, DomainError, UsageError

Factorization = tuple[tuple[int, int], ...]


def is_prime(n: int) -> bool:
    """Deterministic primality by trial division (intended scope n <= 1e8)."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d <= isqrt(n):
        if n % d == 0:
            return False
        d += 2
    return True


def factorize(n: int) -> Factorization:
    """Prime factorization of n >= 1 as ((p, e), ...) with primes increasing."""
    if not isinstance(n, int) or n < 1:
        raise DomainError(f"factorize requires a positive integer, got {n!r}")
    out = []
    m = n
    for p in (2, 3):
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
    d = 5
    step = 2
    while d * d <= m:
        if m % d == 0:
            e = 0
            while m % d == 0:
                m //= d
                e += 1
            out.append((d, e))
        d += step
        step = 6 - step  # alternate 5,7,11,13,... (skip multiples of 2,3)
    if m > 1:
        out.append((m, 1))
    return tuple(out)


def divisors(n: int) -> list[int]:
    """All positive divisors of n, ascending."""
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


class MultiplicativeFunction:
    """Integer-valued multiplicative function defined by its rule on prime powers.

    The rule maps (p, e) with e >= 1 to an exact integer; the value at 1 is
    implicitly 1, which makes every instance multiplicative by construction.
    """

    __slots__ = ("name", "rule")

    def __init__(self, name: str, rule: Callable[[int, int], int]):
        self.name = name
        self.rule = lru_cache(maxsize=None)(rule)

    def __call__(self, n: int) -> int:
        return evaluate(self, n)

    def __repr__(self):
        return f"MultiplicativeFunction({self.name})"


def evaluate(f: MultiplicativeFunction, n: int) -> int:
    """Value f(n) as the product of the rule over the prime powers of n."""
    value = 1
    for p, e in factorize(n):
        value *= f.rule(p, e)
    return value


moebius = MultiplicativeFunction("moebius", lambda p, e: -1 if e == 1 else 0)
one = MultiplicativeFunction("one", lambda p, e: 1)
delta = MultiplicativeFunction("delta", lambda p, e: 0)
# sign sequence: -1 at even numbers, +1 at odd numbers
a_function = MultiplicativeFunction("a", lambda p, e: -1 if p == 2 else 1)


@lru_cache(maxsize=None)
def id_k(k: int) -> MultiplicativeFunction:
    """The power function n -> n**k as a multiplicative function."""
    if k < 0:
        raise DomainError(f"id_k requires k >= 0, got {k}")
    return MultiplicativeFunction(f"id_{k}", lambda p, e: p ** (k * e))


def named_function(name: str) -> MultiplicativeFunction:
    """Look up a multiplicative function by name.

    Known names: moebius, one, delta, a, id_<k> (e.g. id_0, id_2).
    """
    table = {"moebius": moebius, "mu": moebius, "one": one, "delta": delta,
             "a": a_function}
    if name in table:
        return table[name]
    if name.startswith("id_"):
        try:
            return id_k(int(name[3:]))
        except ValueError:
            pass
    raise UsageError(f"unknown multiplicative function {name!r}")


def dirichlet_convolve(f: MultiplicativeFunction,
                       g: MultiplicativeFunction) -> MultiplicativeFunction:
    """Dirichlet convolution f*g, computed on prime powers.

    (f*g)(p^e) = sum over i of f(p^i) g(p^(e-i)); globally this agrees with
    the divisor sum sum_{d|n} f(d) g(n/d).
    """

    def rule(p, e):
        total = g.rule(p, e) + f.rule(p, e)
        for i in range(1, e):
            total += f.rule(p, i) * g.rule(p, e - i)
        return total

    return MultiplicativeFunction(f"({f.name}*{g.name})", rule)


def dirichlet_inverse(f: MultiplicativeFunction) -> MultiplicativeFunction:
    """The Dirichlet inverse of f, so that f * inverse(f) = delta.

    Well defined because f(1) = 1 holds for every MultiplicativeFunction.
    """

    def rule(p, e, _memo={}):
        key = (f, p, e)
        if key in _memo:
            return _memo[key]
        # g(p^e) = -sum_{i=1..e} f(p^i) g(p^(e-i)), with g(p^0) = 1
        total = -f.rule(p, e)
        for i in range(1, e):
            total -= f.rule(p, i) * rule(p, e - i)
        _memo[key] = total
        return total

    return MultiplicativeFunction(f"inv({f.name})", rule)


@lru_cache(maxsize=None)
def gaussian_binomial(r: int, d: int, p: int) -> int:
    """Number of d-dimensional subspaces of a rank-r vector space over the
    p-element field; 1 for d = 0 and 0 for d < 0 or d > r."""
    if not is_prime(p):
        raise DomainError(f"gaussian_binomial requires a prime, got p={p}")
    if d < 0 or d > r:
        return 0
    if d == 0:
        return 1
    num = 1
    den = 1
    for i in range(d):
        num *= p**r - p**i
        den *= p**d - p**i
    q, rem = divmod(num, den)
    if rem:
        raise ConsistencyError("gaussian binomial division not exact")
    return q


@lru_cache(maxsize=None)
def b_of(r: int) -> MultiplicativeFunction:
    """The multiplicative family b_r with rule
    (p, e) -> (-1)^e * p^C(e,2) * gaussian_binomial(r, e, p).

    b_of(1) coincides with the Moebius function.
    """
    if r < 1:
        raise DomainError(f"b_of requires r >= 1, got {r}")

    def rule(p, e):
        return (-1) ** e * p ** comb(e, 2) * gaussian_binomial(r, e, p)

    return MultiplicativeFunction(f"b_{r}", rule)


@lru_cache(maxsize=None)
def c_of(r: int) -> MultiplicativeFunction:
    """The convolution c_r = a * b_r; c_of(1) is the sequence 1, -2, 0, 0, ..."""
    if r < 1:
        raise DomainError(f"c_of requires r >= 1, got {r}")
    f = dirichlet_convolve(a_function, b_of(r))
    f.name = f"c_{r}"
    return f


def chi_tilde_closed(r: int, n: int) -> int:
    """Closed form c_r(n)/n for the r-th reduced equivariant Euler
    characteristic of the proper partition poset on n letters."""
    if n < 2:
        raise DomainError(f"chi_tilde_closed requires n >= 2, got {n}")
    if r < 1:
        raise DomainError(f"chi_tilde_closed requires r >= 1, got {r}")
    value = evaluate(c_of(r), n)
    q, rem = divmod(value, n)
    if rem:
        raise ConsistencyError(f"c_{r}({n}) = {value} is not divisible by {n}")
    return q
