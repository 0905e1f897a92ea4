"""Local data of elliptic curves over Q: minimal models, Kodaira types, Tamagawa numbers.

Implements the classical prime-by-prime Tate algorithm in full, including the
p = 2 and p = 3 special cases, and records the component group of the special
fibre as a FrobModule so fixed-point counts and Tamagawa numbers come from one
representation.
"""

from dataclasses import dataclass
from fractions import Fraction

from .arith import legendre, prime_divisors, root_multiplicities, valuation
from .frobmod import ENUM_CAP, FrobModule, fixed_points

_INF = 10 ** 9  # stand-in valuation for a zero coefficient


class NotApplicableError(ValueError):
    """The requested local invariant does not apply to this curve."""


class WeierstrassCurve:
    """Integral Weierstrass model y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6."""

    def __init__(self, a1, a2, a3, a4, a6):
        self.a1, self.a2, self.a3, self.a4, self.a6 = (int(a1), int(a2), int(a3), int(a4), int(a6))
        a1, a2, a3, a4, a6 = self.a1, self.a2, self.a3, self.a4, self.a6
        self.b2 = a1 * a1 + 4 * a2
        self.b4 = 2 * a4 + a1 * a3
        self.b6 = a3 * a3 + 4 * a6
        self.b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        self.c4 = self.b2 ** 2 - 24 * self.b4
        self.c6 = -self.b2 ** 3 + 36 * self.b2 * self.b4 - 216 * self.b6
        self.disc = -self.b2 ** 2 * self.b8 - 8 * self.b4 ** 3 - 27 * self.b6 ** 2 + 9 * self.b2 * self.b4 * self.b6
        if self.disc == 0:
            raise ValueError("singular Weierstrass model (discriminant zero)")
        assert 4 * self.b8 == self.b2 * self.b6 - self.b4 ** 2
        assert 1728 * self.disc == self.c4 ** 3 - self.c6 ** 2
        self.j = Fraction(self.c4 ** 3, self.disc)

    def ainvs(self):
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    def transform(self, u, r, s, t):
        """Substituted model x = u^2 x' + r, y = u^3 y' + u^2 s x' + t (must stay integral)."""
        a1, a2, a3, a4, a6 = self.ainvs()
        n1 = a1 + 2 * s
        n2 = a2 - s * a1 + 3 * r - s * s
        n3 = a3 + r * a1 + 2 * t
        n4 = a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t
        n6 = a6 + r * a4 + r * r * a2 + r ** 3 - t * a3 - t * t - r * t * a1
        for val, pw in ((n1, 1), (n2, 2), (n3, 3), (n4, 4), (n6, 6)):
            assert val % u ** pw == 0, "substitution leaves the integral model"
        return WeierstrassCurve(n1 // u, n2 // u ** 2, n3 // u ** 3, n4 // u ** 4, n6 // u ** 6)

    def to_json(self):
        return list(self.ainvs())

    @classmethod
    def from_json(cls, data):
        a1, a2, a3, a4, a6 = data
        return cls(a1, a2, a3, a4, a6)

    def __repr__(self):
        return "WeierstrassCurve%r" % (self.ainvs(),)

    def __eq__(self, other):
        return isinstance(other, WeierstrassCurve) and self.ainvs() == other.ainvs()

    def __hash__(self):
        return hash(self.ainvs())


@dataclass(frozen=True)
class LocalData:
    p: int
    kodaira: str
    v_min_disc: int
    kind: str  # good | split-mult | nonsplit-mult | additive
    tamagawa: int
    semiabelian: bool
    pot_good: bool
    component_group: FrobModule

    def to_json(self):
        return {"p": self.p, "kodaira": self.kodaira, "v_min_disc": self.v_min_disc,
                "kind": self.kind, "tamagawa": self.tamagawa,
                "semiabelian": self.semiabelian, "pot_good": self.pot_good,
                "component_group": self.component_group.to_json()}


def _vp(x, p):
    return _INF if x == 0 else valuation(x, p)


def _cyclic(n, unit=1, enum_cap=ENUM_CAP):
    if n <= 1:
        return FrobModule([], [], enum_cap=enum_cap)
    return FrobModule([n], [[unit % n]], enum_cap=enum_cap)


def _group_I0star(n_rational):
    # (Z/2)^2 with Frobenius permuting the three nonzero elements like the roots
    if n_rational == 3:
        return FrobModule([2, 2], [[1, 0], [0, 1]])
    if n_rational == 1:
        return FrobModule([2, 2], [[0, 1], [1, 0]])
    return FrobModule([2, 2], [[0, 1], [1, 1]])


def _group_Imstar(m, c):
    if m % 2 == 1:
        return FrobModule([4], [[1 if c == 4 else 3]])
    if c == 4:
        return FrobModule([2, 2], [[1, 0], [0, 1]])
    return FrobModule([2, 2], [[1, 1], [0, 1]])


def _singular_point(E, p):
    """The unique singular point of the reduction mod p, as residues (x0, y0)."""
    if p <= 3:
        for x in range(p):
            for y in range(p):
                eq = y * y + E.a1 * x * y + E.a3 * y - (x ** 3 + E.a2 * x * x + E.a4 * x + E.a6)
                dx = E.a1 * y - (3 * x * x + 2 * E.a2 * x + E.a4)
                dy = 2 * y + E.a1 * x + E.a3
                if eq % p == 0 and dx % p == 0 and dy % p == 0:
                    return x, y
        raise AssertionError("no singular point found on a curve with v_p(disc) > 0")
    # odd p: complete the square; x0 is the repeated root of the quartic's cubic part
    mults = root_multiplicities([E.b6, 2 * E.b4, E.b2, 4], p)
    x0 = next(r for r, m in mults.items() if m >= 2)
    y0 = (-(E.a1 * x0 + E.a3) * pow(2, -1, p)) % p
    return x0, y0


def _quadratic_roots_split(alpha, beta, p):
    """(separable, rational) for Y^2 + alpha*Y - beta over F_p."""
    if p == 2:
        sep = alpha % 2 == 1
        rat = sep and beta % 2 == 0
        return sep, rat
    disc = (alpha * alpha + 4 * beta) % p
    if disc == 0:
        return False, False
    return True, legendre(disc, p) == 1


def tate_algorithm(curve, p, enum_cap=ENUM_CAP):
    """Full local classification at p; total for every integral model."""
    ld, _, _ = _tate_with_transform(curve, p, enum_cap)
    return ld


def _tate_with_transform(curve, p, enum_cap=ENUM_CAP):
    """(LocalData, minimal curve, total rescale exponent k with u = p^k)."""
    assert p >= 2
    E = curve
    pot_good = _vp(curve.j.denominator, p) == 0
    rescales = 0

    def done(kodaira, kind, c, group):
        n = _vp(E.disc, p)
        sem = kind in ("good", "split-mult", "nonsplit-mult")
        assert c == fixed_points(group)
        return (LocalData(p, kodaira, n, kind, c, sem, pot_good, group), E, rescales)

    for _restart in range(64):
        n = _vp(E.disc, p)
        # step 1: good reduction
        if n == 0:
            return done("I0", "good", 1, _cyclic(1, enum_cap=enum_cap))
        # step 2: translate the singular point of the reduction to the origin
        x0, y0 = _singular_point(E, p)
        E = E.transform(1, x0, 0, y0)
        assert E.a3 % p == 0 and E.a4 % p == 0 and E.a6 % p == 0
        # step 3: multiplicative reduction
        if E.b2 % p != 0:
            if p == 2:
                split = E.a2 % 2 == 0
            else:
                split = legendre(E.b2 % p, p) == 1
            if split:
                return done("I%d" % n, "split-mult", n, _cyclic(n, 1, enum_cap))
            c = 2 if n % 2 == 0 else 1
            return done("I%d" % n, "nonsplit-mult", c, _cyclic(n, -1, enum_cap))
        # step 4
        if _vp(E.a6, p) < 2:
            return done("II", "additive", 1, _cyclic(1, enum_cap=enum_cap))
        # step 5
        if _vp(E.b8, p) < 3:
            return done("III", "additive", 2, _cyclic(2, 1, enum_cap))
        # step 6
        if _vp(E.b6, p) < 3:
            sep, rat = _quadratic_roots_split(E.a3 // p, E.a6 // (p * p), p)
            assert sep, "type IV quadratic must be separable"
            return done("IV", "additive", 3 if rat else 1, _cyclic(3, 1 if rat else -1, enum_cap))
        # normalize: v(a1) >= 1, v(a2) >= 1, v(a3) >= 2, v(a4) >= 2, v(a6) >= 3
        if p == 2:
            assert E.a1 % 2 == 0
            E = E.transform(1, 0, E.a2 % 2, 0)
            assert E.a3 % 4 == 0 and E.a6 % 4 == 0
            E = E.transform(1, 0, 0, 2 * ((E.a6 // 4) % 2))
        else:
            s = (-E.a1 * pow(2, -1, p)) % p
            E = E.transform(1, 0, s, 0)
            t = (-E.a3 * pow(2, -1, p * p)) % (p * p)
            E = E.transform(1, 0, 0, t)
        assert (_vp(E.a1, p) >= 1 and _vp(E.a2, p) >= 1 and _vp(E.a3, p) >= 2
                and _vp(E.a4, p) >= 2 and _vp(E.a6, p) >= 3)
        # step 7: cubic P(T) = T^3 + a2/p T^2 + a4/p^2 T + a6/p^3 over F_p
        mults = root_multiplicities([E.a6 // p ** 3, E.a4 // p ** 2, E.a2 // p, 1], p)
        worst = max(mults.values(), default=1)
        if worst == 1:
            n_rat = len(mults)
            assert n_rat in (0, 1, 3)
            return done("I0*", "additive", 1 + n_rat, _group_I0star(n_rat))
        if worst == 2:
            theta = next(r for r, m in mults.items() if m == 2)
            E = E.transform(1, p * theta, 0, 0)
            assert _vp(E.a2, p) == 1 and _vp(E.a4, p) >= 3 and _vp(E.a6, p) >= 4
            k = 1
            while True:
                assert (_vp(E.a3, p) >= k + 1 and _vp(E.a4, p) >= k + 2
                        and _vp(E.a6, p) >= 2 * k + 2)
                # Y-step: Y^2 + a3/p^(k+1) Y - a6/p^(2k+2)
                alpha = E.a3 // p ** (k + 1)
                beta = E.a6 // p ** (2 * k + 2)
                sep, rat = _quadratic_roots_split(alpha, beta, p)
                if sep:
                    m = 2 * k - 1
                    c = 4 if rat else 2
                    return done("I%d*" % m, "additive", c, _group_Imstar(m, c))
                y0 = (beta % 2) if p == 2 else (-alpha * pow(2, -1, p)) % p
                E = E.transform(1, 0, 0, p ** (k + 1) * y0)
                assert _vp(E.a3, p) >= k + 2 and _vp(E.a6, p) >= 2 * k + 3
                # X-step: a2/p T^2 + a4/p^(k+2) T + a6/p^(2k+3)
                qa = E.a2 // p
                qb = E.a4 // p ** (k + 2)
                qc = E.a6 // p ** (2 * k + 3)
                if p == 2:
                    sep = qb % 2 == 1
                    rat = sep and qc % 2 == 0
                else:
                    disc = (qb * qb - 4 * qa * qc) % p
                    sep = disc != 0
                    rat = sep and legendre(disc, p) == 1
                if sep:
                    m = 2 * k
                    c = 4 if rat else 2
                    return done("I%d*" % m, "additive", c, _group_Imstar(m, c))
                x0 = (qc % 2) if p == 2 else (-qb * pow(2 * qa, -1, p)) % p
                E = E.transform(1, p ** (k + 1) * x0, 0, 0)
                k += 1
                assert k <= n + 2, "I_m* subloop escaped"
        # triple root
        theta = next(r for r, m in mults.items() if m == 3)
        E = E.transform(1, p * theta, 0, 0)
        assert _vp(E.a2, p) >= 2 and _vp(E.a4, p) >= 3 and _vp(E.a6, p) >= 4
        # step 8: Y^2 + a3/p^2 Y - a6/p^4
        sep, rat = _quadratic_roots_split(E.a3 // p ** 2, E.a6 // p ** 4, p)
        if sep:
            return done("IV*", "additive", 3 if rat else 1, _cyclic(3, 1 if rat else -1, enum_cap))
        y0 = ((E.a6 // p ** 4) % 2) if p == 2 else (-(E.a3 // p ** 2) * pow(2, -1, p)) % p
        E = E.transform(1, 0, 0, p * p * y0)
        assert _vp(E.a3, p) >= 3 and _vp(E.a6, p) >= 5
        # step 9
        if _vp(E.a4, p) < 4:
            return done("III*", "additive", 2, _cyclic(2, 1, enum_cap))
        # step 10
        if _vp(E.a6, p) < 6:
            return done("II*", "additive", 1, _cyclic(1, enum_cap=enum_cap))
        # step 11: the model was not minimal; rescale and start over
        assert _vp(E.a1, p) >= 1 and _vp(E.a2, p) >= 2 and _vp(E.a3, p) >= 3
        E = E.transform(p, 0, 0, 0)
        rescales += 1
    raise AssertionError("algorithm failed to terminate")


def minimal_model_at(curve, p):
    """A p-minimal integral model; the input comes back unchanged if already minimal."""
    _, E, rescales = _tate_with_transform(curve, p)
    if rescales == 0:
        return curve
    u = p ** rescales
    a1, a2, a3, a4, a6 = curve.ainvs()
    if (a1 % u == 0 and a2 % u ** 2 == 0 and a3 % u ** 3 == 0
            and a4 % u ** 4 == 0 and a6 % u ** 6 == 0):
        return curve.transform(u, 0, 0, 0)
    return E


def bad_primes(curve):
    """Sorted (p, LocalData) at every prime where the minimal model is bad."""
    out = []
    for p in prime_divisors(curve.disc):
        ld = tate_algorithm(curve, p)
        if ld.kind != "good":
            out.append((p, ld))
    return out


def count_points_modp(curve, p):
    """#E(F_p) of the reduction, counting the point at infinity (small p)."""
    a1, a2, a3, a4, a6 = curve.ainvs()
    total = 1
    for x in range(p):
        for y in range(p):
            if (y * y + a1 * x * y + a3 * y - (x ** 3 + a2 * x * x + a4 * x + a6)) % p == 0:
                total += 1
    return total


def nonsingular_point_count_modp(curve, p):
    """#E_ns(F_p): smooth locus of the reduction, plus the point at infinity."""
    a1, a2, a3, a4, a6 = curve.ainvs()
    total = 1
    for x in range(p):
        for y in range(p):
            if (y * y + a1 * x * y + a3 * y - (x ** 3 + a2 * x * x + a4 * x + a6)) % p:
                continue
            dx = (a1 * y - (3 * x * x + 2 * a2 * x + a4)) % p
            dy = (2 * y + a1 * x + a3) % p
            if dx or dy:
                total += 1
    return total


def is_supersingular_at_2(curve):
    """Whether the reduction at 2 is supersingular; requires good reduction at 2."""
    E = minimal_model_at(curve, 2)
    if E.disc % 2 == 0:
        raise NotApplicableError("curve has bad reduction at 2")
    return count_points_modp(E, 2) % 2 == 1


def curve_from_json(data):
    return WeierstrassCurve.from_json(data)
