"""Finite abelian groups with a Frobenius action: fixed points, subquotients, index bounds.

A FrobModule is a group M = Z/d_1 + ... + Z/d_k (divisor chain d_1 | ... | d_k)
together with an automorphism given by an integer matrix acting on generator
column vectors, read modulo the divisor of the target coordinate. FrobHom is an
equivariant homomorphism between two such modules.

Cardinalities of fixed points are computed by explicit enumeration (vectorized
through the selected backend kernel); structural claims (bijectivity,
equivariance, stability) are additionally checked by exact lattice arithmetic,
so enumeration never silently validates an ill-formed object.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import intlinalg
from ._backend import apply_matrix_codes

ENUM_CAP = 10 ** 6


class TooLargeError(ValueError):
    """Group order exceeds the enumeration cap."""


class NotStableError(ValueError):
    """Generators do not span a Frobenius-stable submodule."""


def _validated_matrix(rows, nrows, ncols, what):
    M = [[int(x) for x in row] for row in rows]
    if len(M) != nrows or any(len(row) != ncols for row in M):
        raise ValueError("%s must be a %d x %d integer matrix" % (what, nrows, ncols))
    return M


class FrobModule:
    """Finite abelian group with an automorphism ("Frobenius") in matrix form."""

    def __init__(self, divisors, frobenius, enum_cap=ENUM_CAP, ambient=None, ambient_generators=None):
        divisors = tuple(int(d) for d in divisors)
        if any(d < 2 for d in divisors):
            raise ValueError("elementary divisors must all be >= 2")
        for a, b in zip(divisors, divisors[1:]):
            if b % a != 0:
                raise ValueError("elementary divisors must form a divisibility chain")
        k = len(divisors)
        F = _validated_matrix(frobenius, k, k, "frobenius")
        # entry (i, j) only matters modulo the target divisor d_i
        F = [[F[i][j] % divisors[i] for j in range(k)] for i in range(k)]
        for i in range(k):
            for j in range(k):
                need = divisors[i] // math.gcd(divisors[i], divisors[j])
                if F[i][j] % need:
                    raise ValueError(
                        "matrix entry (%d,%d) does not respect the generator orders" % (i, j))
        self.divisors = divisors
        self.frobenius = tuple(tuple(row) for row in F)
        self.enum_cap = int(enum_cap)
        self.order = math.prod(divisors)
        self.rank = k
        # optional embedding data: generator vectors inside an ambient module
        self.ambient = ambient
        self.ambient_generators = (
            None if ambient_generators is None
            else tuple(tuple(int(x) for x in g) for g in ambient_generators))
        self._div_np = np.array(divisors, dtype=np.int64)
        self._frob_np = np.array(F, dtype=np.int64).reshape(k, k)
        if k and not self._is_bijective_exact():
            raise ValueError("matrix is not an automorphism of the group")
        self._frob_map = None
        if self.order <= self.enum_cap:
            fmap = apply_matrix_codes(self._div_np, self._frob_np, self._div_np)
            # the exact lattice check above already proved bijectivity; the
            # enumeration must agree, otherwise a kernel backend is broken
            assert np.unique(fmap).size == self.order
            self._frob_map = fmap

    def _is_bijective_exact(self):
        # surjective on the finite group <=> columns of F plus diag(d) span Z^k
        k = self.rank
        aug = [list(self.frobenius[i]) + [self.divisors[i] if i == j else 0 for j in range(k)]
               for i in range(k)]
        _, S, _ = intlinalg.snf(aug)
        return all(S[i][i] == 1 for i in range(k))

    def frob_map(self):
        """Array over element codes giving the code of the Frobenius image."""
        if self._frob_map is None:
            raise TooLargeError("group order %d is too large to enumerate (cap %d)"
                                % (self.order, self.enum_cap))
        return self._frob_map

    def map_of_matrix(self, matrix, target):
        """Code array of the map to `target` given by an integer matrix."""
        if self.order > self.enum_cap or target.order > target.enum_cap:
            raise TooLargeError("group order too large to enumerate")
        mat = np.array(matrix, dtype=np.int64).reshape(target.rank, self.rank)
        return apply_matrix_codes(self._div_np, mat, target._div_np)

    def apply(self, x):
        """Frobenius image of a single element given as a coordinate sequence."""
        x = [int(c) for c in x]
        assert len(x) == self.rank
        return tuple(
            sum(self.frobenius[i][j] * x[j] for j in range(self.rank)) % self.divisors[i]
            for i in range(self.rank))

    def elements(self):
        """Iterator over all elements as coordinate tuples (small groups only)."""
        if self.order > self.enum_cap:
            raise TooLargeError("group order %d is too large to enumerate" % self.order)
        # match the code order of the backend: last coordinate fastest
        def lex(i):
            if i == self.rank:
                yield ()
                return
            for c in range(self.divisors[i]):
                for rest in lex(i + 1):
                    yield (c,) + rest
        return lex(0)

    def to_json(self):
        return {"divisors": list(self.divisors),
                "frobenius": [list(row) for row in self.frobenius]}

    @classmethod
    def from_json(cls, data, enum_cap=ENUM_CAP):
        return cls(data["divisors"], data["frobenius"], enum_cap=enum_cap)

    def __repr__(self):
        return "FrobModule(divisors=%r)" % (list(self.divisors),)


def trivial_module(enum_cap=ENUM_CAP):
    return FrobModule([], [], enum_cap=enum_cap)


class FrobHom:
    """Equivariant homomorphism between two FrobModules, as an integer matrix."""

    def __init__(self, source, target, matrix):
        assert isinstance(source, FrobModule) and isinstance(target, FrobModule)
        self.source = source
        self.target = target
        kt, ks = target.rank, source.rank
        M = _validated_matrix(matrix, kt, ks, "matrix")
        M = [[M[i][j] % target.divisors[i] for j in range(ks)] for i in range(kt)]
        for i in range(kt):
            for j in range(ks):
                need = target.divisors[i] // math.gcd(target.divisors[i], source.divisors[j])
                if M[i][j] % need:
                    raise ValueError(
                        "matrix entry (%d,%d) does not respect the generator orders" % (i, j))
        self.matrix = tuple(tuple(row) for row in M)
        # equivariance Phi . F_src = F_tgt . Phi; for linear maps it is enough
        # to compare on generators, i.e. entrywise modulo the target divisors
        A = intlinalg.mat_mul(M, [list(r) for r in source.frobenius])
        B = intlinalg.mat_mul([list(r) for r in target.frobenius], M)
        for i in range(kt):
            for j in range(ks):
                if (A[i][j] - B[i][j]) % target.divisors[i]:
                    raise ValueError("matrix does not commute with the Frobenius actions")
        if source.order <= source.enum_cap and target.order <= target.enum_cap:
            phi = source.map_of_matrix(M, target)
            assert np.array_equal(phi[source.frob_map()], target.frob_map()[phi])
            self._map = phi
        else:
            self._map = None

    def element_map(self):
        """Array over source codes giving the target code of the image."""
        if self._map is None:
            raise TooLargeError("group order too large to enumerate")
        return self._map

    def apply(self, x):
        x = [int(c) for c in x]
        assert len(x) == self.source.rank
        return tuple(
            sum(self.matrix[i][j] * x[j] for j in range(self.source.rank)) % self.target.divisors[i]
            for i in range(self.target.rank))

    def to_json(self):
        return {"source": self.source.to_json(), "target": self.target.to_json(),
                "matrix": [list(row) for row in self.matrix]}

    @classmethod
    def from_json(cls, data, enum_cap=ENUM_CAP):
        return cls(FrobModule.from_json(data["source"], enum_cap),
                   FrobModule.from_json(data["target"], enum_cap),
                   data["matrix"])

    def __repr__(self):
        return "FrobHom(%r -> %r)" % (list(self.source.divisors), list(self.target.divisors))


def identity_hom(M):
    return FrobHom(M, M, intlinalg.identity_matrix(M.rank))


def fixed_points(M):
    """#M(F): the number of elements fixed by the Frobenius."""
    if M.rank == 0:
        return 1
    fmap = M.frob_map()
    return int(np.count_nonzero(fmap == np.arange(M.order, dtype=np.int64)))


def _image_size_of_matrix(M, matrix, target):
    """#image of the map M -> target with the given matrix, by enumeration."""
    if target.rank == 0:
        return 1
    return int(np.unique(M.map_of_matrix(matrix, target)).size)


def h1_size(M):
    """#H^1(F, M), which for Frobenius-cyclic actions equals #M(F).

    Computes the fixed points and, independently, the coinvariants
    #M / #((F - 1)M), and asserts the two cardinalities agree.
    """
    inv = fixed_points(M)
    k = M.rank
    fm1 = [[M.frobenius[i][j] - (1 if i == j else 0) for j in range(k)] for i in range(k)]
    coinv = M.order // _image_size_of_matrix(M, fm1, M)
    assert inv == coinv, "invariants and coinvariants differ: %d vs %d" % (inv, coinv)
    return inv


def submodule(N, generators, *, check_stable=True):
    """Submodule of N spanned by the given coordinate vectors, in normal form.

    The result carries the ambient module and normalized generators, so it can
    be fed to quotient_module. Raises NotStableError if the span is not
    Frobenius-stable.
    """
    k = N.rank
    gens = [list(map(int, g)) for g in generators]
    assert all(len(g) == k for g in gens)
    if k == 0:
        return FrobModule([], [], enum_cap=N.enum_cap, ambient=N, ambient_generators=[])
    D = [[N.divisors[i] if i == j else 0 for j in range(k)] for i in range(k)]
    G = [[g[i] for g in gens] for i in range(k)]
    B = intlinalg.column_basis([G[i] + D[i] for i in range(k)])
    # B has k independent columns because the lattice contains diag(divisors)
    R = intlinalg.solve_integer(B, [[D[i][j] for i in range(k)] for j in range(k)])
    assert R is not None
    R = [list(col) for col in zip(*R)]  # columns back to rows
    U, S, _ = intlinalg.snf(R)
    Uinv = intlinalg.invert_unimodular(U)
    C = intlinalg.mat_mul(B, Uinv)
    lam = [S[i][i] for i in range(k)]
    Fbig = [list(row) for row in N.frobenius]
    FC = intlinalg.mat_mul(Fbig, C)
    W = intlinalg.solve_integer(B, [[FC[i][j] for i in range(k)] for j in range(k)])
    if W is None:
        raise NotStableError("submodule is not Frobenius-stable")
    W = [list(col) for col in zip(*W)]
    UW = intlinalg.mat_mul(U, W)
    keep = [i for i in range(k) if lam[i] >= 2]
    div = [lam[i] for i in keep]
    frob = [[UW[i][j] % lam[i] for j in keep] for i in keep]
    amb_gens = [[C[r][i] % N.divisors[r] for r in range(k)] for i in keep]
    return FrobModule(div, frob, enum_cap=N.enum_cap, ambient=N, ambient_generators=amb_gens)


def image_module(f):
    """Image of f inside its target, with the induced Frobenius."""
    cols = [[f.matrix[i][j] for i in range(f.target.rank)] for j in range(f.source.rank)]
    return submodule(f.target, cols)


def kernel_module(f):
    """Kernel of f inside its source, with the induced Frobenius."""
    ks, kt = f.source.rank, f.target.rank
    if ks == 0:
        return submodule(f.source, [])
    if kt == 0:
        return submodule(f.source, intlinalg.identity_matrix(ks))
    aug = [[f.matrix[i][j] for j in range(ks)]
           + [-(f.target.divisors[i]) if i == t else 0 for t in range(kt)]
           for i in range(kt)]
    basis = intlinalg.kernel_basis(aug)
    gens = [vec[:ks] for vec in basis]
    return submodule(f.source, gens)


def quotient_module(N, S):
    """Quotient of N by a Frobenius-stable submodule S built inside N."""
    if S.ambient is not N:
        raise ValueError("S was not constructed as a submodule of N")
    k = N.rank
    if k == 0:
        return FrobModule([], [], enum_cap=N.enum_cap)
    gens = [list(g) for g in (S.ambient_generators or [])]
    D = [[N.divisors[i] if i == j else 0 for j in range(k)] for i in range(k)]
    G = [[g[i] for g in gens] for i in range(k)]
    # stability of the generator span (defence against hand-built S)
    if gens:
        B = intlinalg.column_basis([G[i] + D[i] for i in range(k)])
        FG = intlinalg.mat_mul([list(r) for r in N.frobenius], G)
        if intlinalg.solve_integer(B, [[FG[i][j] for i in range(k)] for j in range(len(gens))]) is None:
            raise NotStableError("submodule is not Frobenius-stable")
    U, S_, _ = intlinalg.snf([G[i] + D[i] for i in range(k)])
    lam = [S_[i][i] for i in range(k)]
    assert all(lam), "quotient lattice lost full rank"
    Uinv = intlinalg.invert_unimodular(U)
    UF = intlinalg.mat_mul([list(r) for r in U], [list(r) for r in N.frobenius])
    UFU = intlinalg.mat_mul(UF, Uinv)
    keep = [i for i in range(k) if lam[i] >= 2]
    div = [lam[i] for i in keep]
    frob = [[UFU[i][j] % lam[i] for j in keep] for i in keep]
    return FrobModule(div, frob, enum_cap=N.enum_cap)


def normalize_presentation(moduli, matrix, enum_cap=ENUM_CAP):
    """FrobModule from arbitrary moduli (>= 1, any order) and a compatible matrix.

    The moduli need not form a divisor chain; the presentation is brought to
    elementary-divisor form by a change of basis.
    """
    moduli = [int(m) for m in moduli]
    assert all(m >= 1 for m in moduli)
    k = len(moduli)
    M = _validated_matrix(matrix, k, k, "matrix")
    D = [[moduli[i] if i == j else 0 for j in range(k)] for i in range(k)]
    U, S, _ = intlinalg.snf(D)
    lam = [S[i][i] for i in range(k)]
    Uinv = intlinalg.invert_unimodular(U)
    UFU = intlinalg.mat_mul(intlinalg.mat_mul([list(r) for r in U], M), Uinv)
    keep = [i for i in range(k) if lam[i] >= 2]
    div = [lam[i] for i in keep]
    frob = [[UFU[i][j] % lam[i] for j in keep] for i in keep]
    return FrobModule(div, frob, enum_cap=enum_cap)


def direct_sum(M1, M2):
    """Direct sum with the block-diagonal Frobenius, renormalized to chain form."""
    moduli = list(M1.divisors) + list(M2.divisors)
    k1, k2 = M1.rank, M2.rank
    blk = [[M1.frobenius[i][j] if i < k1 and j < k1 else
            (M2.frobenius[i - k1][j - k1] if i >= k1 and j >= k1 else 0)
            for j in range(k1 + k2)] for i in range(k1 + k2)]
    return normalize_presentation(moduli, blk, enum_cap=min(M1.enum_cap, M2.enum_cap))


@dataclass(frozen=True)
class LocalIndices:
    left_index: Fraction
    right_index: Fraction
    bound_left: int
    bound_right: int


def local_indices(f):
    """Fixed-point index data of f viewed as a component-group homomorphism.

    left_index  = #source(F) / #image(F), bounded by #kernel(F);
    right_index = #target(F) / #image(F), bounded by #(target/image)(F).
    Both indices are asserted to be positive integers within their bounds.
    """
    im = image_module(f)
    ker = kernel_module(f)
    quo = quotient_module(f.target, im)
    n_src, n_tgt, n_im = fixed_points(f.source), fixed_points(f.target), fixed_points(im)
    left = Fraction(n_src, n_im)
    right = Fraction(n_tgt, n_im)
    assert left.denominator == 1 and left >= 1
    assert right.denominator == 1 and right >= 1
    bound_left = fixed_points(ker)
    bound_right = fixed_points(quo)
    assert left <= bound_left, "left index %s exceeds its bound %d" % (left, bound_left)
    assert right <= bound_right, "right index %s exceeds its bound %d" % (right, bound_right)
    return LocalIndices(left, right, bound_left, bound_right)


@dataclass(frozen=True)
class CoprimalityReport:
    b_holds: "bool | None"
    c_holds: "bool | None"
    e_holds: "bool | None"
    witnesses: dict


def check_coprimality_criteria(f, n):
    """Fixed-point equalities guaranteed when an isogeny degree n is coprime.

    b: gcd(n, #target(F)) = 1 should force #target(F) = #image(F);
    c: gcd(n, #source(F)) = 1 should force #source(F) = #image(F);
    e: both. A criterion whose gcd hypothesis fails is reported None
    ("not applicable"), never False.
    """
    n = int(n)
    assert n >= 1
    c_a = fixed_points(f.source)
    c_b = fixed_points(f.target)
    n_im = fixed_points(image_module(f))
    b_holds = (c_b == n_im) if math.gcd(n, c_b) == 1 else None
    c_holds = (c_a == n_im) if math.gcd(n, c_a) == 1 else None
    e_holds = None if (b_holds is None or c_holds is None) else (b_holds and c_holds)
    witnesses = {"source_fixed": c_a, "target_fixed": c_b, "image_fixed": n_im, "n": n}
    return CoprimalityReport(b_holds, c_holds, e_holds, witnesses)
