"""Finite-dimensional modules as quiver representations.

A :class:`Representation` assigns a vector space ``k^{d_v}`` to each vertex
and a matrix of shape ``d_{t(a)} x d_{s(a)}`` to each arrow.  Morphisms are
vertex-indexed families of matrices.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import lcm

from .errors import AlgebraMismatch, InvalidModule, UnsupportedField, ZeroGenerator, ZeroModule
from .exactlin import (Matrix, block_diag, column_space, hstack, inverse, is_invertible,
                       nullspace, quotient_basis, rank, solve)
from .quiver import BoundQuiverAlgebra, Path


class Representation:
    def __init__(self, algebra: BoundQuiverAlgebra, dims: dict, maps: dict | None = None, check=True):
        self.algebra = algebra
        F = algebra.field
        self.dims = {v: int(dims.get(v, 0)) for v in algebra.vertices}
        if any(d < 0 for d in self.dims.values()):
            raise InvalidModule("negative vertex dimension")
        maps = maps or {}
        self.maps = {}
        for a in algebra.quiver.arrows:
            shape = (self.dims[a.target], self.dims[a.source])
            m = maps.get(a.name)
            if m is None:
                m = Matrix.zeros(F, *shape)
            elif not isinstance(m, Matrix):
                m = Matrix(F, shape[0], shape[1], m)
            if m.shape != shape:
                raise InvalidModule(f"map for {a.name} has shape {m.shape}, expected {shape}")
            self.maps[a.name] = m
        unknown = set(maps) - set(self.maps)
        if unknown:
            raise InvalidModule(f"maps given for unknown arrows {sorted(unknown)}")
        if check:
            bad = self.violated_relation()
            if bad is not None:
                raise InvalidModule(f"relation {bad.label()} does not hold")

    @property
    def field(self):
        return self.algebra.field

    @property
    def dim(self):
        return sum(self.dims.values())

    @property
    def dim_vector(self):
        return tuple(self.dims[v] for v in self.algebra.vertices)

    def is_zero(self):
        return self.dim == 0

    def path_matrix(self, p: Path) -> Matrix:
        m = Matrix.identity(self.field, self.dims[p.source])
        for name in p.arrows:
            m = self.maps[name] @ m
        return m

    def violated_relation(self):
        for r in self.algebra.relations:
            acc = Matrix.zeros(self.field, self.dims[r.target], self.dims[r.source])
            for c, p in r.terms:
                acc = acc + self.path_matrix(p).scale(c)
            if not acc.is_zero():
                return r
        return None

    def offsets(self):
        out, k = {}, 0
        for v in self.algebra.vertices:
            out[v] = k
            k += self.dims[v]
        return out

    def __repr__(self):
        return f"Representation(dims={self.dim_vector})"


def _same_algebra(*mods):
    a = mods[0].algebra
    for m in mods[1:]:
        if m.algebra is not a:
            raise AlgebraMismatch("modules live over different algebras")
    return a


@dataclass(frozen=True, eq=False)
class Morphism:
    source: Representation
    target: Representation
    blocks: dict  # vertex -> Matrix of shape target.dims[v] x source.dims[v]

    def __matmul__(self, other: "Morphism") -> "Morphism":
        """``self ∘ other``."""
        return Morphism(other.source, self.target,
                        {v: self.blocks[v] @ other.blocks[v] for v in self.blocks})

    def __add__(self, other):
        return Morphism(self.source, self.target, {v: self.blocks[v] + other.blocks[v] for v in self.blocks})

    def __sub__(self, other):
        return Morphism(self.source, self.target, {v: self.blocks[v] - other.blocks[v] for v in self.blocks})

    def scale(self, c):
        return Morphism(self.source, self.target, {v: b.scale(c) for v, b in self.blocks.items()})

    def flatten(self):
        return [x for v in self.source.algebra.vertices for x in self.blocks[v].flatten()]

    def is_zero(self):
        return all(b.is_zero() for b in self.blocks.values())

    def is_invertible(self):
        return all(is_invertible(b) for b in self.blocks.values())

    def inverse(self) -> "Morphism":
        return Morphism(self.target, self.source, {v: inverse(b) for v, b in self.blocks.items()})

    def full_matrix(self) -> Matrix:
        vs = self.source.algebra.vertices
        return block_diag(self.source.field, [self.blocks[v] for v in vs])

    def is_homomorphism(self):
        M, N = self.source, self.target
        for a in M.algebra.quiver.arrows:
            if not (N.maps[a.name] @ self.blocks[a.source] == self.blocks[a.target] @ M.maps[a.name]):
                return False
        return True


def identity_morphism(M: Representation) -> Morphism:
    return Morphism(M, M, {v: Matrix.identity(M.field, d) for v, d in M.dims.items()})


def zero_morphism(M, N) -> Morphism:
    return Morphism(M, N, {v: Matrix.zeros(M.field, N.dims[v], M.dims[v]) for v in M.dims})


def zero_module(algebra) -> Representation:
    return Representation(algebra, {}, check=False)


def linear_combination(basis, coeffs, source, target) -> Morphism:
    acc = zero_morphism(source, target)
    for c, f in zip(coeffs, basis):
        if c != 0:
            acc = acc + f.scale(c)
    return acc


class HomSpace:
    """Basis of the intertwiners ``M -> N``."""

    def __init__(self, source, target, basis):
        self.source = source
        self.target = target
        self.basis = basis
        self._phom = None

    @property
    def dim(self):
        return len(self.basis)

    def coordinates_matrix(self) -> Matrix:
        F = self.source.field
        n = sum(self.source.dims[v] * self.target.dims[v] for v in self.source.dims)
        return Matrix.from_columns(F, n, [f.flatten() for f in self.basis])

    def coordinates(self, f: Morphism):
        flat = f.flatten()
        x = solve(self.coordinates_matrix(), Matrix.from_columns(self.source.field, len(flat), [flat]))
        return None if x is None else x.col(0)

    def combination(self, coeffs) -> Morphism:
        return linear_combination(self.basis, coeffs, self.source, self.target)

    @property
    def proj_factor_subbasis(self) -> list:
        """Maps ``M -> N`` that factor through a projective module.

        Every such map factors through the projective cover ``P(N) -> N``,
        so the subspace is spanned by ``pi_N ∘ g`` for ``g`` in a basis of
        ``Hom(M, P(N))``.
        """
        if self._phom is None:
            if self.target.is_zero() or self.source.is_zero():
                self._phom = []
            else:
                cov = projective_cover(self.target)
                gs = hom(self.source, cov.cover).basis
                comps = [cov.map @ g for g in gs]
                F = self.source.field
                n = sum(self.source.dims[v] * self.target.dims[v] for v in self.source.dims)
                if not comps:
                    self._phom = []
                else:
                    span = column_space(Matrix.from_columns(F, n, [c.flatten() for c in comps]))
                    self._phom = [_unflatten(col, self.source, self.target) for col in span.columns()]
        return self._phom


def _unflatten(vec, M, N) -> Morphism:
    F = M.field
    blocks, k = {}, 0
    for v in M.algebra.vertices:
        r, c = N.dims[v], M.dims[v]
        rows = [vec[k + i * c: k + (i + 1) * c] for i in range(r)]
        blocks[v] = Matrix(F, r, c, rows)
        k += r * c
    return Morphism(M, N, blocks)


def hom(M: Representation, N: Representation) -> HomSpace:
    """All module maps ``M -> N``, as the nullspace of the intertwiner system."""
    A = _same_algebra(M, N)
    F = A.field
    off, n = {}, 0
    for v in A.vertices:
        off[v] = n
        n += N.dims[v] * M.dims[v]
    rows = []
    for a in A.quiver.arrows:
        s, t = a.source, a.target
        Na, Ma = N.maps[a.name], M.maps[a.name]
        ms, mt, ns, nt = M.dims[s], M.dims[t], N.dims[s], N.dims[t]
        # (N_a f_s - f_t M_a)[r, c] = 0 for r < nt, c < ms
        for r in range(nt):
            for c in range(ms):
                row = {}
                for k in range(ns):
                    x = Na[r, k]
                    if x != 0:
                        j = off[s] + k * ms + c
                        row[j] = row.get(j, 0) + x
                for k in range(mt):
                    x = Ma[k, c]
                    if x != 0:
                        j = off[t] + r * mt + k
                        row[j] = row.get(j, 0) - x
                if row:
                    dense = [F.zero] * n
                    for j, x in row.items():
                        dense[j] = F(x)
                    rows.append(dense)
    ns_ = nullspace(Matrix(F, len(rows), n, rows)) if rows else Matrix.identity(F, n)
    return HomSpace(M, N, [_unflatten(col, M, N) for col in ns_.columns()])


def subrepresentation(M: Representation, spans: dict):
    """Submodule spanned at each vertex by the given columns, with its inclusion."""
    F = M.field
    basis = {v: column_space(spans[v]) if spans.get(v) is not None and spans[v].ncols else Matrix(F, M.dims[v], 0)
             for v in M.algebra.vertices}
    return _sub_from_basis(M, basis)


def _sub_from_basis(M, basis):
    F = M.field
    maps = {}
    for a in M.algebra.quiver.arrows:
        Bs, Bt = basis[a.source], basis[a.target]
        img = M.maps[a.name] @ Bs
        if Bt.ncols == 0:
            if not img.is_zero():
                raise InvalidModule("subspaces are not closed under the arrows")
            maps[a.name] = Matrix(F, 0, Bs.ncols)
            continue
        x = solve(Bt, img)
        if x is None:
            raise InvalidModule("subspaces are not closed under the arrows")
        maps[a.name] = x
    S = Representation(M.algebra, {v: basis[v].ncols for v in basis}, maps, check=False)
    return S, Morphism(S, M, dict(basis))


def quotient_representation(M: Representation, spans: dict):
    """``M / U`` for a submodule ``U`` given by spanning columns; returns the projection too."""
    F = M.field
    proj, lift = {}, {}
    for v in M.algebra.vertices:
        S = spans.get(v)
        if S is None:
            S = Matrix(F, M.dims[v], 0)
        proj[v], lift[v] = quotient_basis(M.dims[v], S)
    maps = {a.name: proj[a.target] @ M.maps[a.name] @ lift[a.source] for a in M.algebra.quiver.arrows}
    Q = Representation(M.algebra, {v: proj[v].nrows for v in proj}, maps, check=False)
    return Q, Morphism(M, Q, proj)


def kernel(f: Morphism):
    M = f.source
    return _sub_from_basis(M, {v: nullspace(f.blocks[v]) for v in M.algebra.vertices})


def image(f: Morphism):
    return subrepresentation(f.target, {v: f.blocks[v] for v in f.target.algebra.vertices})


def projective(A: BoundQuiverAlgebra, i) -> Representation:
    """``A e_i``: basis paths starting at ``i``, arrows acting by left multiplication."""
    i = str(i)
    key = ("projective", i)
    if key in A._cache:
        return A._cache[key]
    F = A.field
    dims = {j: len(A.basis_at[(i, j)]) for j in A.vertices}
    maps = {}
    for a in A.quiver.arrows:
        src = A.basis_at[(i, a.source)]
        tgt = A.basis_at[(i, a.target)]
        cols = []
        step = Path(a.source, a.target, (a.name,))
        for k in src:
            nf = A.normal_form(A.basis[k].then(step))
            cols.append([nf[m] for m in tgt])
        maps[a.name] = Matrix.from_columns(F, len(tgt), cols) if cols else Matrix(F, len(tgt), 0)
    P = Representation(A, dims, maps, check=False)
    A._cache[key] = P
    return P


def regular_module(A: BoundQuiverAlgebra) -> Representation:
    return direct_sum(*[projective(A, v) for v in A.vertices])


def cyclic_module(A: BoundQuiverAlgebra, p: Path) -> Representation:
    """The left ideal ``A p``, as a submodule of ``A e_{s(p)}``."""
    F = A.field
    if A.is_zero_path(p):
        raise ZeroGenerator(f"{p.label()} is zero in the algebra")
    P = projective(A, p.source)
    spans = {}
    for j in A.vertices:
        tgt = A.basis_at[(p.source, j)]
        cols = []
        for k in A.basis_at[(p.target, j)]:
            q = A.basis[k]
            nf = A.normal_form(p.then(q))
            cols.append([nf[m] for m in tgt])
        spans[j] = Matrix.from_columns(F, len(tgt), cols) if cols else Matrix(F, len(tgt), 0)
    sub, _ = subrepresentation(P, spans)
    return sub


def yoneda_map(A, i, M: Representation, m) -> Morphism:
    """The map ``A e_i -> M`` sending ``e_i`` to the vector ``m`` of ``M_i``."""
    i = str(i)
    P = projective(A, i)
    F = A.field
    mcol = Matrix.from_columns(F, M.dims[i], [list(m)])
    blocks = {}
    for j in A.vertices:
        cols = [(M.path_matrix(A.basis[k]) @ mcol).col(0) for k in A.basis_at[(i, j)]]
        blocks[j] = Matrix.from_columns(F, M.dims[j], cols) if cols else Matrix(F, M.dims[j], 0)
    return Morphism(P, M, blocks)


def direct_sum(*mods) -> Representation:
    if not mods:
        raise ValueError("direct_sum needs at least one module")
    A = _same_algebra(*mods)
    F = A.field
    dims = {v: sum(m.dims[v] for m in mods) for v in A.vertices}
    maps = {a.name: block_diag(F, [m.maps[a.name] for m in mods]) for a in A.quiver.arrows}
    return Representation(A, dims, maps, check=False)


def direct_sum_injections(*mods):
    """Canonical inclusions of the summands into ``direct_sum(*mods)``."""
    S = direct_sum(*mods)
    F = S.field
    out = []
    off = {v: 0 for v in S.dims}
    for m in mods:
        blocks = {}
        for v in S.dims:
            b = Matrix(F, S.dims[v], m.dims[v])
            for k in range(m.dims[v]):
                b._rows[off[v] + k][k] = F.one
            blocks[v] = b
            off[v] += m.dims[v]
        out.append(Morphism(m, S, blocks))
    return S, out


def radical(M: Representation):
    """``JM`` with its inclusion."""
    F = M.field
    A = M.algebra
    spans = {}
    for v in A.vertices:
        into = [M.maps[a.name] for a in A.quiver.arrows_to(v)]
        spans[v] = hstack(F, M.dims[v], into) if into else Matrix(F, M.dims[v], 0)
    return subrepresentation(M, spans)


def top(M: Representation):
    R, incl = radical(M)
    return quotient_representation(M, incl.blocks)


@dataclass(eq=False)
class CoverData:
    cover: Representation
    map: Morphism
    kernel: Representation
    inclusion: Morphism
    summands: list  # vertex of each indecomposable summand of the cover, in order


def projective_cover(M: Representation) -> CoverData:
    if M.is_zero():
        raise ZeroModule("the zero module has no projective cover")
    cached = getattr(M, "_cover_cache", None)
    if cached is not None:
        return cached
    A = M.algebra
    F = M.field
    R, incl = radical(M)
    gens = []
    for v in A.vertices:
        _, lift = quotient_basis(M.dims[v], incl.blocks[v])
        for col in lift.columns():
            gens.append((v, col))
    maps = [yoneda_map(A, v, M, col) for v, col in gens]
    cover, injections = direct_sum_injections(*[f.source for f in maps])
    blocks = {v: hstack(F, M.dims[v], [f.blocks[v] for f in maps]) for v in A.vertices}
    pi = Morphism(cover, M, blocks)
    K, kincl = kernel(pi)
    data = CoverData(cover, pi, K, kincl, [v for v, _ in gens])
    M._cover_cache = data
    return data


def syzygy(M: Representation, i: int = 1) -> Representation:
    if i < 0:
        raise ValueError("syzygy index must be non-negative")
    for _ in range(i):
        if M.is_zero():
            return M
        M = projective_cover(M).kernel
    return M


def is_projective(M: Representation) -> bool:
    return M.is_zero() or projective_cover(M).kernel.is_zero()


class Iso(enum.Enum):
    YES = "yes"
    NO = "no"
    PROBABLY_NO = "probably_no"


@dataclass(frozen=True, eq=False)
class IsoResult:
    verdict: Iso
    witness: Morphism | None = None
    reason: str = ""

    def __bool__(self):
        return self.verdict is Iso.YES


def _random_coeffs(rng, n, radius):
    return [rng.randint(-radius, radius) for _ in range(n)]


def is_isomorphic(M: Representation, N: Representation, trials: int = 30, seed: int = 0) -> IsoResult:
    """Look for an invertible intertwiner ``M -> N``.

    ``YES`` carries a verified witness.  ``NO`` is backed by a dimension
    count.  ``PROBABLY_NO`` means every sampled combination of a basis of
    ``Hom(M, N)`` was singular.
    """
    _same_algebra(M, N)
    if M.dim_vector != N.dim_vector:
        return IsoResult(Iso.NO, reason="dimension vectors differ")
    if M.is_zero():
        return IsoResult(Iso.YES, zero_morphism(M, N))
    H = hom(M, N)
    if H.dim == 0:
        return IsoResult(Iso.NO, reason="Hom(M, N) = 0")
    if hom(N, M).dim != H.dim:
        return IsoResult(Iso.NO, reason="dim Hom(M, N) != dim Hom(N, M)")
    if hom(M, M).dim != H.dim:
        return IsoResult(Iso.NO, reason="dim Hom(M, N) != dim End(M)")
    for f in H.basis:
        if f.is_invertible():
            return IsoResult(Iso.YES, f)
    rng = random.Random(seed)
    for t in range(trials):
        f = H.combination(_random_coeffs(rng, H.dim, 1 + t))
        if f.is_invertible():
            return IsoResult(Iso.YES, f)
    return IsoResult(Iso.PROBABLY_NO, reason=f"{trials} random samples were singular")


def split_pair(M: Representation, X: Representation, basis_x_to_m=None):
    """Maps ``f: X -> M``, ``g: M -> X`` with ``g∘f`` invertible, or ``None``.

    Exact when ``End(X)`` is local: there ``g∘f`` is invertible iff its image
    in ``End(X)/rad`` is nonzero, a bilinear condition in ``(f, g)``, so it
    suffices to scan pairs of basis elements.
    """
    if X.is_zero() or M.is_zero():
        return None
    fs = basis_x_to_m if basis_x_to_m is not None else hom(X, M).basis
    if not fs:
        return None
    gs = hom(M, X).basis
    for f in fs:
        for g in gs:
            if (g @ f).is_invertible():
                return f, g
    return None


def _yoneda_basis(M, i):
    A = M.algebra
    F = M.field
    out = []
    for k in range(M.dims[i]):
        e = [F.zero] * M.dims[i]
        e[k] = F.one
        out.append(yoneda_map(A, i, M, e))
    return out


def split_off(M: Representation, X: Representation, basis_x_to_m=None):
    """If ``X`` (with local endomorphism ring) is a summand of ``M``, return the
    complement ``ker g`` with its inclusion; otherwise ``None``."""
    pair = split_pair(M, X, basis_x_to_m)
    if pair is None:
        return None
    _, g = pair
    return kernel(g)


@dataclass(eq=False)
class Stripped:
    core: Representation
    peeled: list
    inclusion: Morphism  # core -> original module

    def __iter__(self):
        return iter((self.core, self.peeled))


def strip_projectives(M: Representation) -> Stripped:
    """Split off indecomposable projective summands until none is left."""
    A = M.algebra
    core, incl = M, identity_morphism(M)
    peeled = []
    changed = True
    while changed and not core.is_zero():
        changed = False
        for v in A.vertices:
            if core.dims[v] == 0:
                continue
            res = split_off(core, projective(A, v), _yoneda_basis(core, v))
            if res is not None:
                core, sub_incl = res
                incl = incl @ sub_incl
                peeled.append(v)
                changed = True
                break
    return Stripped(core, peeled, incl)


class Decomp(enum.Enum):
    YES = "yes"
    NO = "no"
    UNDETERMINED = "undetermined"


def endomorphism_radical(M: Representation):
    """Basis of ``End(M)`` and of its Jacobson radical (trace-form kernel, char 0)."""
    if M.field.characteristic != 0:
        raise UnsupportedField("the trace-form radical needs characteristic 0")
    E = hom(M, M).basis
    mats = [f.full_matrix() for f in E]
    F = M.field
    n = len(mats)
    gram = Matrix(F, n, n, [[_trace(a @ b) for b in mats] for a in mats])
    rad = nullspace(gram)
    return E, rad


def _trace(m):
    acc = 0
    for i in range(m.nrows):
        acc = acc + m[i, i]
    return acc


def _charpoly(m: Matrix):
    # Faddeev-LeVerrier; characteristic 0 only.  Coefficients c_0..c_n, c_n = 1.
    n = m.nrows
    F = m.field
    coeffs = [F.zero] * (n + 1)
    coeffs[n] = F.one
    Mk = Matrix.zeros(F, n, n)
    I = Matrix.identity(F, n)
    for k in range(1, n + 1):
        Mk = m @ Mk + I.scale(coeffs[n - k + 1])
        coeffs[n - k] = -_trace(m @ Mk) / k
    return coeffs


def _divisors(n, limit=10 ** 7):
    n = abs(n)
    out = set()
    d = 1
    while d * d <= n:
        if d > limit:
            return None
        if n % d == 0:
            out.add(d)
            out.add(n // d)
        d += 1
    return sorted(out)


def _rational_roots(coeffs):
    coeffs = [Fraction(c) for c in coeffs]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    roots = []
    if len(coeffs) <= 1:
        return roots
    if coeffs[0] == 0:
        roots.append(Fraction(0))
        while coeffs and coeffs[0] == 0:
            coeffs.pop(0)
    if len(coeffs) <= 1:
        return roots
    den = lcm(*[c.denominator for c in coeffs])
    ints = [int(c * den) for c in coeffs]
    ps, qs = _divisors(ints[0]), _divisors(ints[-1])
    if ps is None or qs is None:
        return roots
    for p in ps:
        for q in qs:
            for s in (1, -1):
                x = Fraction(s * p, q)
                if x not in roots and sum(c * x ** k for k, c in enumerate(ints)) == 0:
                    roots.append(x)
    return sorted(roots)


def _fitting_idempotent(phi: Matrix):
    n = phi.nrows
    F = phi.field
    pw = Matrix.identity(F, n)
    for _ in range(n):
        pw = phi @ pw
    if pw.is_zero() or rank(pw) == n:
        return None
    im = column_space(pw)
    ker = nullspace(pw)
    B = hstack(F, n, [im, ker])
    D = Matrix.zeros(F, n, n)
    for i in range(im.ncols):
        D._rows[i][i] = F.one
    return B @ D @ inverse(B)


def is_indecomposable(M: Representation, seed: int = 0, trials: int = 20):
    """``(Decomp, idempotent_or_None)``.

    ``YES`` when ``End(M)/rad`` is one-dimensional, ``NO`` when a nontrivial
    idempotent was found by Fitting decomposition of an endomorphism shifted
    by a rational eigenvalue, ``UNDETERMINED`` otherwise.
    """
    if M.field.characteristic != 0:
        raise UnsupportedField("is_indecomposable needs characteristic 0")
    if M.is_zero():
        return Decomp.NO, None
    E, rad = endomorphism_radical(M)
    if len(E) - rad.ncols == 1:
        return Decomp.YES, None
    F = M.field
    mats = [f.full_matrix() for f in E]
    rng = random.Random(seed)
    candidates = list(mats)
    for t in range(trials):
        cs = _random_coeffs(rng, len(mats), 2 + t)
        acc = Matrix.zeros(F, M.dim, M.dim)
        for c, m in zip(cs, mats):
            acc = acc + m.scale(c)
        candidates.append(acc)
    I = Matrix.identity(F, M.dim)
    for phi in candidates:
        for lam in _rational_roots(_charpoly(phi)):
            e = _fitting_idempotent(phi - I.scale(lam))
            if e is not None:
                blocks, off = {}, M.offsets()
                for v in M.algebra.vertices:
                    rng_v = range(off[v], off[v] + M.dims[v])
                    blocks[v] = e.submatrix(rng_v, rng_v)
                return Decomp.NO, Morphism(M, M, blocks)
    return Decomp.UNDETERMINED, None
