"""Brute-force oracles, written without the package, used to freeze expected values."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import isqrt

import numpy as np


# --------------------------------------------------------------------------- integers
def squarefree_int(x: Fraction) -> int:
    """The squarefree integer in the square class of a nonzero rational."""
    x = Fraction(x)
    n = x.numerator * x.denominator
    sign = -1 if n < 0 else 1
    n = abs(n)
    out, p = 1, 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e % 2:
            out *= p
        p += 1
    return sign * out * n


def valuation(n: int, p: int) -> int:
    if n == 0:
        return 99
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def is_int_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


# --------------------------------------------------------------------------- Hilbert symbols
def hilbert_oracle(a, b, p) -> int:
    """Solvability of z^2 = a x^2 + b y^2 over Q_p (p prime) or R (p = "real").

    For a prime p the search runs mod p^k over primitive triples, keeping a
    solution only when Hensel's lemma lifts it: some variable has partial
    derivative of valuation m with k >= 2m + 1.  With squarefree a, b every
    primitive p-adic solution has a unit coordinate whose partial has
    m <= v(2) + max(v(a), v(b)), so k = 2m + 1 for that bound suffices.
    """
    a, b = squarefree_int(a), squarefree_int(b)
    if p == "real":
        return 1 if a > 0 or b > 0 else -1
    return _hilbert_padic(a, b, p)


@lru_cache(maxsize=None)
def _hilbert_padic(a: int, b: int, p: int) -> int:
    v2 = 1 if p == 2 else 0
    va, vb = valuation(abs(a), p), valuation(abs(b), p)
    mmax = v2 + max(va, vb)
    k = 2 * mmax + 1
    N = p**k
    r = np.arange(N, dtype=np.int64)
    sq = (r * r) % N
    vals = np.array([valuation(int(x), p) if x else k for x in r])
    is_sq = np.zeros(N, dtype=bool)
    is_sq[sq] = True
    unit_sq = np.zeros(N, dtype=bool)
    unit_sq[sq[vals == 0]] = True  # z a unit: partial -2z has valuation v(2)
    X, Y = np.meshgrid(r, r, indexing="ij")
    s = (a % N * sq[X] + b % N * sq[Y]) % N
    vx, vy = vals[X], vals[Y]
    primitive = (vx == 0) | (vy == 0)
    # z-partial valuation v2 <= mmax always qualifies when z is a unit
    ok_z = unit_sq[s]
    ok_x = is_sq[s] & (v2 + va + vx <= mmax) & primitive
    ok_y = is_sq[s] & (v2 + vb + vy <= mmax) & primitive
    return 1 if bool(np.any(ok_z | ok_x | ok_y)) else -1


# --------------------------------------------------------------------------- sums of two squares
def sum_of_two_squares_oracle(a: Fraction, zbound: int = 50) -> bool:
    """Search X^2 + Y^2 = n Z^2 with n = numerator * denominator and 1 <= Z <= zbound."""
    a = Fraction(a)
    n = a.numerator * a.denominator
    if n <= 0:
        return False
    for Z in range(1, zbound + 1):
        target = n * Z * Z
        for X in range(isqrt(target) + 1):
            if is_int_square(target - X * X):
                return True
    return False


# --------------------------------------------------------------------------- polynomials over Z
def eisenstein(coeffs_low_to_high: list[int], p: int) -> bool:
    *rest, lead = coeffs_low_to_high
    return lead % p != 0 and all(c % p == 0 for c in rest) and coeffs_low_to_high[0] % (p * p) != 0


def _mul(f: list[int], g: list[int]) -> list[int]:
    out = [0] * (len(f) + len(g) - 1)
    for i, x in enumerate(f):
        for j, y in enumerate(g):
            out[i + j] += x * y
    return out


def x_pow_minus_a_reducible(a: int, deg: int, bound: int = 12) -> bool:
    """Whether X^deg - a (deg 2 or 4) has a monic factor of degree 1 or 2 over Z."""
    target = [-a] + [0] * (deg - 1) + [1]
    for r in range(-bound, bound + 1):
        if r**deg == a:
            return True
    if deg == 4:
        for c0, c1 in product(range(-2 * bound, 2 * bound + 1), range(-bound, bound + 1)):
            if c0 == 0 or a % c0:
                continue
            d0 = -a // c0
            for d1 in range(-bound, bound + 1):
                if _mul([c0, c1, 1], [d0, d1, 1]) == target:
                    return True
    return False


def dickson(n: int) -> list[int]:
    """D_n(x) with D_n(u + 1/u) = u^n + u^-n, coefficients low -> high."""
    d0, d1 = [2], [0, 1]
    if n == 0:
        return d0
    for _ in range(n - 1):
        xd1 = [0] + d1
        d0p = d0 + [0] * (len(xd1) - len(d0))
        d0, d1 = d1, [u - v for u, v in zip(xd1, d0p)]
    return d1


def poly_mul(f: list[int], g: list[int]) -> list[int]:
    return _mul(f, g)


# --------------------------------------------------------------------------- square classes as sets
def span_sets(vectors: list[frozenset]) -> set[frozenset]:
    out = {frozenset()}
    for v in vectors:
        out |= {w ^ v for w in out}
    return out


def intersection_oracle(A: list[frozenset], B: list[frozenset]) -> set[frozenset]:
    return (span_sets(A) & span_sets(B)) - {frozenset()}


# --------------------------------------------------------------------------- permutation groups
def perm_closure(gens: list[tuple]) -> set[tuple]:
    if not gens:
        return {()}
    n = len(gens[0])
    ident = tuple(range(n))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for h in gens:
                gh = tuple(g[h[x]] for x in range(n))
                if gh not in seen:
                    seen.add(gh)
                    nxt.append(gh)
        frontier = nxt
    return seen


def perm_order(g: tuple) -> int:
    ident = tuple(range(len(g)))
    k, x = 1, g
    while x != ident:
        x = tuple(g[i] for i in x)
        k += 1
    return k


def perm_stats(gens: list[tuple]) -> tuple[int, int, int]:
    """(order, exponent, number of involutions) of the generated group."""
    elems = perm_closure(gens)
    orders = [perm_order(g) for g in elems] if elems != {()} else [1]
    exp = 1
    for o in orders:
        exp = max(exp, o)  # 2-groups: lcm of powers of two is the max
    return len(elems), exp, sum(1 for o in orders if o == 2)


# --------------------------------------------------------------------------- finite fields (prime)
def squares_mod(p: int) -> set[int]:
    return {x * x % p for x in range(1, p)}


def witt_oracle_prime(q: int) -> tuple[int, int]:
    """(size, additive exponent) of W(F_q), q prime, from value sets of small diagonal forms."""
    sq = squares_mod(q)
    nonsq = next(x for x in range(1, q) if x not in sq)

    def isotropic(form):
        for v in product(range(q), repeat=len(form)):
            if any(v) and sum(c * x * x for c, x in zip(form, v)) % q == 0:
                return True
        return False

    # anisotropic classes: 0, <1>, <nonsq>, and any anisotropic binary form up to isometry
    classes = 1 + 2
    binary = [(1, 1), (1, nonsq), (nonsq, nonsq)]
    anis = []
    for f in binary:
        if isotropic(f):
            continue
        disc_sq = (f[0] * f[1]) % q in sq
        if disc_sq not in anis:
            anis.append(disc_sq)
    classes += len(anis)
    # <1,1> is hyperbolic iff isotropic; otherwise 2<1> != 0 while 4<1> = 0 (q odd)
    exp = 2 if isotropic((1, 1)) else 4
    return classes, exp
