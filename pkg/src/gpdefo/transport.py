"""Bimodules between bound quiver algebras, the functor ``X ⊗_A -``, and a
check that deformation rings survive transport along a bimodule that is
projective on both sides.

A ``G``-``A`` bimodule stores ``X[(j, i)] = e_j X e_i`` for vertices ``j`` of
``G`` and ``i`` of ``A``.  A ``G``-arrow ``g: j -> j'`` acts on the left,
``X[(j, i)] -> X[(j', i)]``; an ``A``-arrow ``a: s -> t`` acts on the right,
``X[(j, t)] -> X[(j, s)]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import AlgebraMismatch, InvalidModule, PrerequisiteFails
from .exactlin import Matrix, block_diag, vstack
from .homology import Verdict, is_gorenstein_projective, stable_hom
from .deformation import RingReport, classify_defo_ring
from .quiver import BoundQuiverAlgebra, Path
from .repmod import Representation, is_projective, quotient_representation, strip_projectives


def _zero(F, r, c):
    return Matrix(F, r, c)


class Bimodule:
    def __init__(self, left: BoundQuiverAlgebra, right: BoundQuiverAlgebra, dims: dict,
                 left_maps: dict | None = None, right_maps: dict | None = None, check=True):
        if left.field != right.field:
            raise AlgebraMismatch("the two algebras have different fields")
        self.left, self.right = left, right
        F = left.field
        self.dims = {(j, i): int(dims.get((j, i), 0)) for j in left.vertices for i in right.vertices}
        left_maps = left_maps or {}
        right_maps = right_maps or {}
        self.left_maps, self.right_maps = {}, {}
        for g in left.quiver.arrows:
            for i in right.vertices:
                shape = (self.dims[(g.target, i)], self.dims[(g.source, i)])
                self.left_maps[(g.name, i)] = self._coerce(left_maps.get((g.name, i)), shape, F)
        for a in right.quiver.arrows:
            for j in left.vertices:
                shape = (self.dims[(j, a.source)], self.dims[(j, a.target)])
                self.right_maps[(a.name, j)] = self._coerce(right_maps.get((a.name, j)), shape, F)
        if check:
            self.validate()

    @staticmethod
    def _coerce(m, shape, F):
        if m is None:
            return _zero(F, *shape)
        if not isinstance(m, Matrix):
            m = Matrix(F, shape[0], shape[1], m)
        if m.shape != shape:
            raise InvalidModule(f"bimodule map has shape {m.shape}, expected {shape}")
        return m

    @property
    def field(self):
        return self.left.field

    def as_left_module(self) -> Representation:
        """Restriction to the left algebra."""
        G, A = self.left, self.right
        dims = {j: sum(self.dims[(j, i)] for i in A.vertices) for j in G.vertices}
        maps = {g.name: block_diag(self.field, [self.left_maps[(g.name, i)] for i in A.vertices])
                for g in G.quiver.arrows}
        return Representation(G, dims, maps)

    def as_right_module(self) -> Representation:
        """Restriction to the right algebra, as a left module over its opposite."""
        G, A = self.left, self.right
        dims = {i: sum(self.dims[(j, i)] for j in G.vertices) for i in A.vertices}
        maps = {a.name: block_diag(self.field, [self.right_maps[(a.name, j)] for j in G.vertices])
                for a in A.quiver.arrows}
        return Representation(A.opposite(), dims, maps)

    def validate(self):
        self.as_left_module()
        self.as_right_module()
        for g in self.left.quiver.arrows:
            for a in self.right.quiver.arrows:
                lhs = self.left_maps[(g.name, a.source)] @ self.right_maps[(a.name, g.source)]
                rhs = self.right_maps[(a.name, g.target)] @ self.left_maps[(g.name, a.target)]
                if lhs != rhs:
                    raise InvalidModule(f"left {g.name} and right {a.name} actions do not commute")

    def is_projective_one_sided(self, side: str) -> bool:
        if side == "left":
            return is_projective(self.as_left_module())
        if side == "right":
            return is_projective(self.as_right_module())
        raise ValueError("side must be 'left' or 'right'")

    def __repr__(self):
        return f"Bimodule(dims={self.dims})"


def _path_action_matrix(A, src_paths, tgt_paths, step_fn):
    """Matrix of a linear map on spans of basis paths given by ``step_fn``."""
    F = A.field
    cols = []
    for k in src_paths:
        nf = A.normal_form(step_fn(A.basis[k]))
        cols.append([nf[m] for m in tgt_paths])
    return Matrix.from_columns(F, len(tgt_paths), cols) if cols else Matrix(F, len(tgt_paths), 0)


def twisted_regular(G: BoundQuiverAlgebra, A: BoundQuiverAlgebra, vertex_map: dict | None = None,
                    arrow_map: dict | None = None) -> Bimodule:
    """``G`` as a ``G``-``A`` bimodule, ``A`` acting through an isomorphism
    ``A -> G`` given on vertices and arrows (identity maps by default)."""
    vmap = {v: str((vertex_map or {}).get(v, v)) for v in A.vertices}
    amap = {a.name: (arrow_map or {}).get(a.name, a.name) for a in A.quiver.arrows}
    for a in A.quiver.arrows:
        g = G.quiver.arrow(amap[a.name])
        if (g.source, g.target) != (vmap[a.source], vmap[a.target]):
            raise AlgebraMismatch(f"arrow {a.name} is not sent to a parallel arrow")
    for r in A.relations:
        acc = list(G.zero())
        for c, p in r.terms:
            image = G.quiver.path([amap[n] for n in p.arrows], vertex=vmap[p.source])
            acc = [x + G.field(c) * y for x, y in zip(acc, G.normal_form(image))]
        if any(x != 0 for x in acc):
            raise AlgebraMismatch(f"relation {r.label()} is not sent to zero")
    dims = {(j, i): len(G.basis_at[(vmap[i], j)]) for j in G.vertices for i in A.vertices}
    left_maps, right_maps = {}, {}
    for g in G.quiver.arrows:
        step = Path(g.source, g.target, (g.name,))
        for i in A.vertices:
            left_maps[(g.name, i)] = _path_action_matrix(
                G, G.basis_at[(vmap[i], g.source)], G.basis_at[(vmap[i], g.target)], lambda p, s=step: p.then(s))
    for a in A.quiver.arrows:
        g = G.quiver.arrow(amap[a.name])
        step = Path(g.source, g.target, (g.name,))
        for j in G.vertices:
            right_maps[(a.name, j)] = _path_action_matrix(
                G, G.basis_at[(vmap[a.target], j)], G.basis_at[(vmap[a.source], j)], lambda p, s=step: s.then(p))
    return Bimodule(G, A, dims, left_maps, right_maps)


def regular_bimodule(A: BoundQuiverAlgebra) -> Bimodule:
    return twisted_regular(A, A)


def outer_bimodule(L: Representation, R: Representation) -> Bimodule:
    """``L ⊗_k R`` for a left ``G``-module ``L`` and a right ``A``-module ``R``
    (given as a left module over the opposite of ``A``)."""
    G = L.algebra
    A = R.algebra.opposite()
    F = G.field
    dims = {(j, i): L.dims[j] * R.dims[i] for j in G.vertices for i in A.vertices}
    left_maps = {(g.name, i): L.maps[g.name].kron(Matrix.identity(F, R.dims[i]))
                 for g in G.quiver.arrows for i in A.vertices}
    right_maps = {(a.name, j): Matrix.identity(F, L.dims[j]).kron(R.maps[a.name])
                  for a in A.quiver.arrows for j in G.vertices}
    return Bimodule(G, A, dims, left_maps, right_maps)


def tensor(X: Bimodule, V: Representation) -> Representation:
    """``X ⊗_A V`` as a left module over the left algebra of ``X``."""
    if V.algebra is not X.right:
        raise AlgebraMismatch("V is not a module over the right algebra of X")
    G, A = X.left, X.right
    F = X.field

    def block(j, i):
        return X.dims[(j, i)] * V.dims[i]

    dims = {j: sum(block(j, i) for i in A.vertices) for j in G.vertices}
    maps = {g.name: block_diag(F, [X.left_maps[(g.name, i)].kron(Matrix.identity(F, V.dims[i]))
                                   for i in A.vertices])
            for g in G.quiver.arrows}
    free = Representation(G, dims, maps, check=False)
    spans = {}
    for j in G.vertices:
        cols = []
        for a in A.quiver.arrows:
            s, t = a.source, a.target
            # x a (x) v - x (x) a v, for x in X[j, t] and v in V_s
            ncols = X.dims[(j, t)] * V.dims[s]
            if ncols == 0:
                continue
            parts = []
            for i in A.vertices:
                m = Matrix(F, block(j, i), ncols)
                if i == s:
                    m = m + X.right_maps[(a.name, j)].kron(Matrix.identity(F, V.dims[s]))
                if i == t:
                    m = m - Matrix.identity(F, X.dims[(j, t)]).kron(V.maps[a.name])
                parts.append(m)
            cols.extend(vstack(F, ncols, parts).columns())
        spans[j] = Matrix.from_columns(F, dims[j], cols) if cols else Matrix(F, dims[j], 0)
    Q, _ = quotient_representation(free, spans)
    bad = Q.violated_relation()
    if bad is not None:
        raise AssertionError(f"tensor product violates {bad.label()}")
    return Q


@dataclass
class TransportReport:
    passed: bool
    transported: Representation
    transported_gproj: Verdict
    stable_end_dim: int | None
    source_ring: RingReport
    target_ring: RingReport
    peeled: list = field(default_factory=list)

    def to_json(self):
        return {
            "result": "PASS" if self.passed else "FAIL",
            "transported_dims": dict(self.transported.dims),
            "peeled_projectives": list(self.peeled),
            "transported_gproj": self.transported_gproj.value,
            "stable_end_dim": self.stable_end_dim,
            "source_ring": self.source_ring.to_json(),
            "target_ring": self.target_ring.to_json(),
        }


def transport_check(X: Bimodule, V: Representation, cutoff: int | None = None, seed: int = 0,
                    order_cutoff: int = 6) -> TransportReport:
    """Transport ``V`` along ``X`` and compare the deformation rings.

    Raises :class:`PrerequisiteFails` naming ``left_projective``,
    ``right_projective`` or ``module_gproj`` when a precondition fails.
    """
    if V.algebra is not X.right:
        raise AlgebraMismatch("V is not a module over the right algebra of X")
    if not X.is_projective_one_sided("left"):
        raise PrerequisiteFails("left_projective", "X is not projective as a left module")
    if not X.is_projective_one_sided("right"):
        raise PrerequisiteFails("right_projective", "X is not projective as a right module")
    gp = is_gorenstein_projective(V, cutoff, seed=seed)
    if gp.verdict is not Verdict.TRUE:
        raise PrerequisiteFails("module_gproj", f"V is not certified Gorenstein-projective ({gp.verdict.value})")
    T = tensor(X, V)
    stripped = strip_projectives(T) if not T.is_zero() else None
    core = stripped.core if stripped else T
    peeled = stripped.peeled if stripped else []
    if core.is_zero():
        core_gp, st = Verdict.TRUE, 0
    else:
        core_gp = is_gorenstein_projective(core, cutoff, seed=seed).verdict
        st = stable_hom(core, core).dim
    src = classify_defo_ring(V, order_cutoff, seed=seed, homological_cutoff=cutoff)
    tgt = classify_defo_ring(core, order_cutoff, seed=seed, homological_cutoff=cutoff)
    passed = src.ring == tgt.ring and src.ring.kind != "undetermined"
    return TransportReport(passed, core, core_gp, st, src, tgt, peeled)
