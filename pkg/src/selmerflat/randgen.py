"""Seeded random FrobModule/FrobHom instances for property and acceptance tests.

Two kinds of corpora:

* random_frob_module: an arbitrary module with a random automorphism, built
  from elementary operations so validity is by construction.

* random_isogeny_pair: a pair of equivariant maps f: A -> B, g: B -> A with
  g.f = f.g = multiplication by n. This is the structural shape a degree-n
  isogeny and its dual induce on component groups, and it is exactly what the
  coprimality criteria presuppose, so these instances can never falsify them
  spuriously.

All generators take an explicit random.Random for reproducibility.
"""

import math

from . import intlinalg
from .frobmod import ENUM_CAP, FrobHom, FrobModule


def _random_divisor_chain(rng, max_order, max_rank):
    divisors = []
    order = 1
    d = 1
    for _ in range(rng.randint(0, max_rank)):
        step = d * rng.choice([1, 1, 2, 2, 2, 3, 4, 5]) if d > 1 else rng.choice([2, 2, 2, 3, 4, 5, 6])
        if step < 2 or order * step > max_order:
            break
        d = step
        divisors.append(d)
        order *= d
    return divisors


def _random_unit(rng, d):
    while True:
        u = rng.randrange(1, d)
        if math.gcd(u, d) == 1:
            return u


def _random_automorphism(rng, divisors, steps=8):
    """Integer matrix of a random automorphism of the chain module, with its inverse map.

    Both matrices are products of elementary operations (generator scalings by
    units, shears respecting the generator orders, swaps of equal-order
    generators), so they are automorphisms by construction. The second matrix
    represents the inverse map modulo the divisors.
    """
    k = len(divisors)
    F = intlinalg.identity_matrix(k)
    Finv = intlinalg.identity_matrix(k)
    if k == 0:
        return F, Finv

    def reduce_rows(M):
        return [[M[i][j] % divisors[i] for j in range(k)] for i in range(k)]

    for _ in range(steps):
        op = rng.choice(["scale", "shear", "swap"])
        E = intlinalg.identity_matrix(k)
        Einv = intlinalg.identity_matrix(k)
        if op == "scale":
            i = rng.randrange(k)
            u = _random_unit(rng, divisors[i])
            E[i][i] = u
            Einv[i][i] = pow(u, -1, divisors[i])
        elif op == "shear":
            if k < 2:
                continue
            i, j = rng.sample(range(k), 2)
            need = divisors[i] // math.gcd(divisors[i], divisors[j])
            c = need * rng.randint(1, 3)
            E[i][j] = c
            Einv[i][j] = -c
        else:
            eq = [(i, j) for i in range(k) for j in range(i + 1, k) if divisors[i] == divisors[j]]
            if not eq:
                continue
            i, j = rng.choice(eq)
            for M in (E, Einv):
                M[i][i] = M[j][j] = 0
                M[i][j] = M[j][i] = 1
        # new op composes on the left; the inverse composes on the right
        F = reduce_rows(intlinalg.mat_mul(E, F))
        Finv = reduce_rows(intlinalg.mat_mul(Finv, Einv))
    return F, Finv


def random_frob_module(rng, max_order=10 ** 4, max_rank=3, enum_cap=ENUM_CAP):
    divisors = _random_divisor_chain(rng, max_order, max_rank)
    F, _ = _random_automorphism(rng, divisors)
    return FrobModule(divisors, F, enum_cap=enum_cap)


def _normalize_with_transport(moduli, F):
    """Chain-form presentation of (moduli, F) plus the change-of-basis data."""
    k = len(moduli)
    D = [[moduli[i] if i == j else 0 for j in range(k)] for i in range(k)]
    U, S, _ = intlinalg.snf(D)
    lam = [S[i][i] for i in range(k)]
    Uinv = intlinalg.invert_unimodular(U)
    UFU = intlinalg.mat_mul(intlinalg.mat_mul(U, F), Uinv)
    keep = [i for i in range(k) if lam[i] >= 2]
    div = [lam[i] for i in keep]
    frob = [[UFU[i][j] % lam[i] for j in keep] for i in keep]
    return div, frob, U, Uinv, keep


def _transport_hom(mat, U_tgt, keep_tgt, Uinv_src, keep_src, div_tgt):
    big = intlinalg.mat_mul(intlinalg.mat_mul(U_tgt, mat), Uinv_src)
    return [[big[i][j] % div_tgt[r] for j in keep_src] for r, i in enumerate(keep_tgt)]


def _gl2(rng, d):
    for _ in range(100):
        M = [[rng.randrange(d) for _ in range(2)] for _ in range(2)]
        if math.gcd(M[0][0] * M[1][1] - M[0][1] * M[1][0], d) == 1:
            return M
    return intlinalg.identity_matrix(2)


def random_isogeny_pair(rng, n=None, max_order=10 ** 4, enum_cap=ENUM_CAP):
    """Random (f, g, n) with g.f and f.g both equal to multiplication by n.

    f: A -> B and g: B -> A are FrobHoms between freshly generated modules.
    """
    if n is None:
        n = rng.choice([1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 15, 25])
    n = int(n)
    assert n >= 1
    n_divs = [d for d in range(2, n + 1) if n % d == 0]

    mod_a, mod_b = [], []
    fa, fb = [], []  # per-block Frobenius blocks
    fblocks, gblocks = [], []  # per-block hom matrices (rect)
    order_a = order_b = 1
    for _ in range(rng.randint(1, 3)):
        kinds = ["matched", "matched", "matched2"]
        if n_divs:
            kinds += ["kill", "create"]
        kind = rng.choice(kinds)
        if kind == "matched":
            d = rng.choice([2, 3, 4, 5, 6, 7, 8, 9, 12, 25])
            if order_a * d > max_order or order_b * d > max_order:
                continue
            u = _random_unit(rng, d)
            m = rng.choice([m for m in range(1, n + 1) if n % m == 0])
            mod_a.append([d]); mod_b.append([d])
            fa.append([[u]]); fb.append([[u]])
            fblocks.append([[m]]); gblocks.append([[n // m]])
            order_a *= d; order_b *= d
        elif kind == "matched2":
            d = rng.choice([2, 2, 3, 4, 5])
            if order_a * d * d > max_order or order_b * d * d > max_order:
                continue
            S = _gl2(rng, d)
            m = rng.choice([m for m in range(1, n + 1) if n % m == 0])
            mod_a.append([d, d]); mod_b.append([d, d])
            fa.append(S); fb.append(S)
            fblocks.append([[m, 0], [0, m]])
            gblocks.append([[n // m, 0], [0, n // m]])
            order_a *= d * d; order_b *= d * d
        elif kind == "kill":
            d = rng.choice(n_divs)
            if order_a * d > max_order:
                continue
            mod_a.append([d]); mod_b.append([])
            fa.append([[_random_unit(rng, d)]]); fb.append([])
            fblocks.append([[] for _ in range(0)])  # 0 x 1
            gblocks.append([[]])                    # 1 x 0
            order_a *= d
        else:  # create
            d = rng.choice(n_divs)
            if order_b * d > max_order:
                continue
            mod_a.append([]); mod_b.append([d])
            fa.append([]); fb.append([[_random_unit(rng, d)]])
            fblocks.append([[]])                    # 1 x 0
            gblocks.append([[] for _ in range(0)])  # 0 x 1
            order_b *= d

    def assemble(mods, blocks):
        flat = [d for blk in mods for d in blk]
        k = len(flat)
        M = [[0] * k for _ in range(k)]
        off = 0
        for blk, mat in zip(mods, blocks):
            r = len(blk)
            for i in range(r):
                for j in range(r):
                    M[off + i][off + j] = mat[i][j]
            off += r
        return flat, M

    def assemble_hom(mods_t, mods_s, blocks):
        rows = sum(len(b) for b in mods_t)
        cols = sum(len(b) for b in mods_s)
        M = [[0] * cols for _ in range(rows)]
        ro = co = 0
        for bt, bs, mat in zip(mods_t, mods_s, blocks):
            for i in range(len(bt)):
                for j in range(len(bs)):
                    M[ro + i][co + j] = mat[i][j]
            ro += len(bt)
            co += len(bs)
        return M

    flat_a, FA = assemble(mod_a, fa)
    flat_b, FB = assemble(mod_b, fb)
    fmat = assemble_hom(mod_b, mod_a, fblocks)
    gmat = assemble_hom(mod_a, mod_b, gblocks)

    div_a, frob_a, UA, UAinv, keep_a = _normalize_with_transport(flat_a, FA)
    div_b, frob_b, UB, UBinv, keep_b = _normalize_with_transport(flat_b, FB)
    fmat = _transport_hom(fmat, UB, keep_b, UAinv, keep_a, div_b)
    gmat = _transport_hom(gmat, UA, keep_a, UBinv, keep_b, div_a)

    # scramble coordinates on both sides by a tracked-inverse automorphism
    CA, CAinv = _random_automorphism(rng, div_a)
    CB, CBinv = _random_automorphism(rng, div_b)
    frob_a = intlinalg.mat_mul(intlinalg.mat_mul(CA, frob_a), CAinv)
    frob_b = intlinalg.mat_mul(intlinalg.mat_mul(CB, frob_b), CBinv)
    fmat = intlinalg.mat_mul(intlinalg.mat_mul(CB, fmat), CAinv)
    gmat = intlinalg.mat_mul(intlinalg.mat_mul(CA, gmat), CBinv)

    A = FrobModule(div_a, frob_a, enum_cap=enum_cap)
    B = FrobModule(div_b, frob_b, enum_cap=enum_cap)
    f = FrobHom(A, B, fmat)
    g = FrobHom(B, A, gmat)
    return f, g, n


def compose(g, f):
    """Composite FrobHom g.f (apply f first)."""
    assert f.target is g.source or f.target.divisors == g.source.divisors
    ks, km, kt = f.source.rank, f.target.rank, g.target.rank
    mat = [[sum(g.matrix[i][t] * f.matrix[t][j] for t in range(km)) for j in range(ks)]
           for i in range(kt)]
    return FrobHom(f.source, g.target, mat)


def scalar_hom(M, c):
    """Multiplication by c as a FrobHom M -> M."""
    return FrobHom(M, M, [[c if i == j else 0 for j in range(M.rank)] for i in range(M.rank)])
