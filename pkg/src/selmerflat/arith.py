"""Shared integer arithmetic helpers: symbols, valuations, factoring, roots mod p."""

import math
import random

from sympy import GF, Poly, Symbol

TRIAL_BOUND = 10 ** 6


def valuation(n, p):
    """Exponent of p in n; n must be nonzero."""
    assert n != 0
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def legendre(a, p):
    """Legendre symbol (a/p) for odd prime p, in {-1, 0, 1}."""
    assert p > 2
    a %= p
    if a == 0:
        return 0
    r = pow(a, (p - 1) // 2, p)
    return 1 if r == 1 else -1


def kronecker(a, n):
    """Kronecker symbol (a/n), extending Legendre to all integers n."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    sign = 1
    if n < 0:
        n = -n
        if a < 0:
            sign = -1
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v:
        if a % 2 == 0:
            return 0
        if v % 2 and a % 8 in (3, 5):
            sign = -sign
    # now n is odd; quadratic reciprocity loop
    a %= n
    while a != 0:
        v = 0
        while a % 2 == 0:
            a //= 2
            v += 1
        if v % 2 and n % 8 in (3, 5):
            sign = -sign
        if a % 4 == 3 and n % 4 == 3:
            sign = -sign
        a, n = n % a, a
    return sign if n == 1 else 0


def is_probable_prime(n):
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n, rng):
    if n % 2 == 0:
        return 2
    while True:
        c = rng.randrange(1, n)
        x = y = rng.randrange(2, n)
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d


class FactorError(ValueError):
    """Raised when a cofactor resists factoring within the effort cap."""


def factorize(n, max_rounds=64):
    """Prime factorization of n as a sorted dict {p: e}.

    Trial division up to TRIAL_BOUND, then Pollard rho on the cofactor.
    Raises FactorError if the cofactor does not crack within max_rounds
    rho rounds (much bigger inputs belong in a real factoring package).
    """
    assert n != 0
    n = abs(n)
    out = {}
    for p in range(2, TRIAL_BOUND + 1):
        if p * p > n:
            break
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    if n > 1:
        rng = random.Random(0xF0F0 ^ n)
        stack, rounds = [n], 0
        while stack:
            m = stack.pop()
            if is_probable_prime(m):
                out[m] = out.get(m, 0) + 1
                continue
            rounds += 1
            if rounds > max_rounds:
                raise FactorError("cofactor %d did not factor within the effort cap" % m)
            d = _pollard_rho(m, rng)
            stack.extend([d, m // d])
    return dict(sorted(out.items()))


def prime_divisors(n):
    return sorted(factorize(n))


def squarefree_part(n):
    """The unique squarefree d with n = d * (square), preserving sign."""
    assert n != 0
    sign = -1 if n < 0 else 1
    d = 1
    for p, e in factorize(n).items():
        if e % 2:
            d *= p
    return sign * d


def roots_modp(coeffs, p):
    """Roots in F_p of the polynomial with integer coefficients (ascending order)."""
    x = Symbol("x")
    poly = Poly(list(reversed([c % p for c in coeffs])), x, domain=GF(p))
    if poly.degree() < 0:
        return list(range(p))
    roots = []
    for factor, _ in poly.factor_list()[1]:
        if factor.degree() == 1:
            a, b = factor.all_coeffs()
            # a*x + b = 0 mod p
            r = (-b * pow(int(a), -1, p)) % p
            roots.append(int(r))
    return sorted(set(roots))


def root_multiplicities(coeffs, p):
    """Roots in F_p with multiplicities, for integer coefficients in ascending order."""
    x = Symbol("x")
    poly = Poly(list(reversed([c % p for c in coeffs])), x, domain=GF(p))
    assert poly.degree() >= 1, "polynomial vanishes mod p"
    out = {}
    for factor, mult in poly.factor_list()[1]:
        if factor.degree() == 1:
            a, b = factor.all_coeffs()
            r = (-int(b) * pow(int(a), -1, p)) % p
            out[r] = mult
    return out


def sqrt_modp(a, p):
    """A square root of a mod odd prime p, or None (Tonelli-Shanks)."""
    a %= p
    if a == 0:
        return 0
    if legendre(a, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    # Tonelli-Shanks
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = next(z for z in range(2, p) if legendre(z, p) == -1)
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, tt = 0, t
        while tt != 1:
            tt = tt * tt % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r
