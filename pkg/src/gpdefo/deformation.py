"""Lifts of representations over ``k[t]/(t^{n+1})``, the tangent space, and a
classifier for the versal deformation ring of a Gorenstein-projective module.

A lift of ``V`` of order ``n`` assigns to every arrow a matrix polynomial
``V_a + t C_a^(1) + ... + t^n C_a^(n)`` satisfying each relation modulo
``t^{n+1}``.  Extending by one order is a linear problem whose right-hand side
is the defect of the current lift; inconsistency is an obstruction.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import HypothesisFails, InvalidLift, ZeroModule
from .exactlin import Matrix, hstack, nullspace, quotient_basis, rank, solve, vstack
from .homology import Verdict, ext1, is_gorenstein, is_gorenstein_projective, stable_hom
from .quiver import Path
from .repmod import Iso, Representation, is_isomorphic, projective_cover, strip_projectives, syzygy

DEFAULT_ORDER_CUTOFF = 6


# -- matrix polynomials ------------------------------------------------------

def _poly_mul(F, a: list, b: list, degree: int) -> list:
    """Product of matrix polynomials (coefficient lists), truncated above ``degree``."""
    out = [None] * (degree + 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            if i + j > degree:
                break
            z = x @ y
            out[i + j] = z if out[i + j] is None else out[i + j] + z
    rows, cols = a[0].nrows, b[0].ncols
    return [m if m is not None else Matrix(F, rows, cols) for m in out]


def _relation_poly(V: Representation, arrow_polys: dict, rel, degree: int) -> list:
    F = V.field
    acc = [Matrix(F, V.dims[rel.target], V.dims[rel.source]) for _ in range(degree + 1)]
    for c, p in rel.terms:
        prod = [Matrix.identity(F, V.dims[p.source])]
        for name in p.arrows:
            prod = _poly_mul(F, arrow_polys[name], prod, degree)
        acc = [x + y.scale(c) for x, y in zip(acc, prod)]
    return acc


# -- the linearized relation system -------------------------------------------

def _arrow_layout(V: Representation):
    """Column offset of each arrow's correction inside the unknown vector."""
    out, k = {}, 0
    for a in V.algebra.quiver.arrows:
        out[a.name] = k
        k += V.dims[a.target] * V.dims[a.source]
    return out, k


def _relation_layout(V: Representation):
    out, k = [], 0
    for r in V.algebra.relations:
        out.append(k)
        k += V.dims[r.target] * V.dims[r.source]
    return out, k


def _linearization(V: Representation) -> Matrix:
    """Matrix of ``(C_a) -> (sum_k c L_k C_{a_k} R_k)_r``, the t-linear term
    of every relation; row-major vectorization throughout."""
    F = V.field
    cols, nvars = _arrow_layout(V)
    rows, neqs = _relation_layout(V)
    out = [[F.zero] * nvars for _ in range(neqs)]
    for r, r0 in zip(V.algebra.relations, rows):
        for c, p in r.terms:
            mats = [V.maps[name] for name in p.arrows]
            for k, name in enumerate(p.arrows):
                left = Matrix.identity(F, V.dims[p.target])
                for m in reversed(mats[k + 1:]):
                    left = left @ m
                right = Matrix.identity(F, V.dims[p.source])
                for m in mats[:k]:
                    right = m @ right
                block = left.kron(right.T).scale(c)
                c0 = cols[name]
                for i in range(block.nrows):
                    row = out[r0 + i]
                    for j, x in enumerate(block.row(i)):
                        if x:
                            row[c0 + j] = row[c0 + j] + x
    return Matrix(F, neqs, nvars, out)


def _coboundary_matrix(V: Representation) -> Matrix:
    """Columns: ``a -> X_{t(a)} V_a - V_a X_{s(a)}`` for elementary ``X``."""
    F = V.field
    cols_at, nvars = _arrow_layout(V)
    columns = []
    for v in V.algebra.vertices:
        d = V.dims[v]
        for i in range(d):
            for j in range(d):
                E = Matrix.unit(F, d, d, i, j)
                vec = [F.zero] * nvars
                for a in V.algebra.quiver.arrows:
                    m = Matrix(F, V.dims[a.target], V.dims[a.source])
                    if a.target == v:
                        m = m + E @ V.maps[a.name]
                    if a.source == v:
                        m = m - V.maps[a.name] @ E
                    for k, x in enumerate(m.flatten()):
                        vec[cols_at[a.name] + k] = x
                columns.append(vec)
    return Matrix.from_columns(F, nvars, columns) if columns else Matrix(F, nvars, 0)


def _unflatten_arrows(V: Representation, vec) -> dict:
    F = V.field
    cols_at, _ = _arrow_layout(V)
    out = {}
    for a in V.algebra.quiver.arrows:
        r, c = V.dims[a.target], V.dims[a.source]
        flat = vec[cols_at[a.name]:cols_at[a.name] + r * c]
        out[a.name] = Matrix(F, r, c, [flat[i * c:(i + 1) * c] for i in range(r)])
    return out


def _flatten_arrows(V: Representation, maps: dict) -> list:
    out = []
    for a in V.algebra.quiver.arrows:
        out.extend(maps[a.name].flatten())
    return out


@dataclass(eq=False)
class TangentSpace:
    module: Representation
    cocycles: Matrix  # columns: basis of first-order corrections
    coboundaries: Matrix  # columns: spanning set of trivial corrections
    classes: list  # correction dicts whose classes form a basis of the quotient

    @property
    def quotient_dim(self) -> int:
        return len(self.classes)

    def is_coboundary(self, corrections: dict) -> bool:
        vec = Matrix.from_columns(self.module.field, self.coboundaries.nrows,
                                  [_flatten_arrows(self.module, corrections)])
        return solve(self.coboundaries, vec) is not None


def tangent_space(V: Representation) -> TangentSpace:
    if V.is_zero():
        raise ZeroModule("tangent space of the zero module")
    F = V.field
    Z = nullspace(_linearization(V))
    B = _coboundary_matrix(V)
    if Z.ncols == 0:
        return TangentSpace(V, Z, B, [])
    coords = []
    for col in B.columns():
        x = solve(Z, Matrix.from_columns(F, Z.nrows, [col]))
        coords.append(x.col(0))
    sub = Matrix.from_columns(F, Z.ncols, coords) if coords else Matrix(F, Z.ncols, 0)
    _, lift = quotient_basis(Z.ncols, sub)
    classes = [_unflatten_arrows(V, (Z @ Matrix.from_columns(F, Z.ncols, [c])).col(0))
               for c in lift.columns()]
    return TangentSpace(V, Z, B, classes)


# -- lifts -------------------------------------------------------------------

@dataclass(eq=False)
class LiftOrderN:
    base: Representation
    corrections: list = field(default_factory=list)  # one {arrow: Matrix} per order 1..n

    @property
    def order(self) -> int:
        return len(self.corrections)

    def arrow_polys(self) -> dict:
        return {name: [m] + [c[name] for c in self.corrections] for name, m in self.base.maps.items()}

    def defect(self, degree: int) -> list:
        """Coefficient of ``t^degree`` of every relation, one matrix per relation."""
        polys = self.arrow_polys()
        F = self.base.field
        for name, poly in polys.items():
            while len(poly) <= degree:
                poly.append(Matrix(F, *poly[0].shape))
        return [_relation_poly(self.base, polys, r, degree)[degree] for r in self.base.algebra.relations]

    def is_valid(self) -> bool:
        if self.base.violated_relation() is not None:
            return False
        for c in self.corrections:
            if set(c) != set(self.base.maps) or any(c[n].shape != m.shape for n, m in self.base.maps.items()):
                return False
        return all(m.is_zero() for d in range(1, self.order + 1) for m in self.defect(d))


def trivial_lift(V: Representation, order: int = 1) -> LiftOrderN:
    F = V.field
    zero = {n: Matrix(F, *m.shape) for n, m in V.maps.items()}
    return LiftOrderN(V, [dict(zero) for _ in range(order)])


def first_order_lift(V: Representation, corrections: dict) -> LiftOrderN:
    L = LiftOrderN(V, [dict(corrections)])
    if not L.is_valid():
        raise InvalidLift("corrections do not satisfy the linearized relations")
    return L


def extend_lift(L: LiftOrderN) -> LiftOrderN | None:
    """Extend ``L`` by one order, or ``None`` if the next defect is obstructed."""
    if not L.is_valid():
        raise InvalidLift("the given lift does not satisfy the relations to its order")
    V = L.base
    F = V.field
    n = L.order + 1
    rhs = [x for m in L.defect(n) for x in m.flatten()]
    lin = _linearization(V)
    if lin.nrows == 0:
        x = [F.zero] * lin.ncols
    else:
        sol = solve(lin, Matrix.from_columns(F, lin.nrows, [[-x for x in rhs]]))
        if sol is None:
            return None
        x = sol.col(0)
    out = LiftOrderN(V, L.corrections + [_unflatten_arrows(V, x)])
    assert out.is_valid()
    return out


def canonical_selfext_lift(V: Representation, seed: int = 0) -> LiftOrderN:
    """The order-one lift carried by the projective cover when ``ΩV ≅ V``.

    With ``ι: V ≅ ΩV -> P(V)`` and a vertexwise section ``s`` of the cover map
    ``π``, ``P(V)`` is free over ``k[ε]`` on ``s(V)`` with ``ε = ι∘π``, and an
    arrow acts as ``V_a + ε c_a`` where ``ι c_a = P_a s - s V_a``.
    """
    if V.is_zero():
        raise HypothesisFails("the zero module")
    cov = projective_cover(V)
    K = cov.kernel
    if K.is_zero():
        raise HypothesisFails("V is projective, so its syzygy is zero")
    iso = is_isomorphic(K, V, seed=seed)
    if iso.verdict is not Iso.YES:
        raise HypothesisFails("the syzygy of V is not isomorphic to V")
    phi_inv = iso.witness.inverse()
    iota = cov.inclusion @ phi_inv
    F = V.field
    A = V.algebra
    section = {}
    for v in A.vertices:
        if V.dims[v] == 0:
            section[v] = Matrix(F, cov.cover.dims[v], 0)
            continue
        section[v] = solve(cov.map.blocks[v], Matrix.identity(F, V.dims[v]))
    corr = {}
    for a in A.quiver.arrows:
        s, t = a.source, a.target
        diff = cov.cover.maps[a.name] @ section[s] - section[t] @ V.maps[a.name]
        if V.dims[t] == 0 or V.dims[s] == 0:
            corr[a.name] = Matrix(F, V.dims[t], V.dims[s])
            continue
        c = solve(iota.blocks[t], diff)
        if c is None:
            raise AssertionError("cover difference does not lie in the kernel")
        corr[a.name] = c
    return first_order_lift(V, corr)


# -- ring classification -------------------------------------------------------

@dataclass(frozen=True)
class RingTag:
    kind: str  # "trivial", "truncated", "undetermined"
    n: int | None = None  # for "truncated": the ring is k[[t]]/(t^n)

    @classmethod
    def trivial(cls):
        return cls("trivial")

    @classmethod
    def truncated(cls, n: int):
        if n < 2:
            raise ValueError("k[[t]]/(t^n) needs n >= 2")
        return cls("truncated", n)

    @classmethod
    def dual_numbers(cls):
        return cls.truncated(2)

    @classmethod
    def undetermined(cls):
        return cls("undetermined")

    def __str__(self):
        if self.kind == "trivial":
            return "k"
        if self.kind == "truncated":
            return f"k[[t]]/(t^{self.n})"
        return "undetermined"


@dataclass
class RingReport:
    ring: RingTag
    route: str
    tangent_dim: int | None = None
    obstruction_order: int | None = None
    peeled: list = field(default_factory=list)
    detail: str = ""

    def to_json(self):
        return {"ring": str(self.ring), "route": self.route, "tangent_dim": self.tangent_dim,
                "obstruction_order": self.obstruction_order, "peeled_projectives": list(self.peeled),
                "detail": self.detail}


def obstruction_order(L: LiftOrderN, cutoff: int = DEFAULT_ORDER_CUTOFF) -> int | None:
    """The order at which the extension ladder starting from ``L`` fails, or
    ``None`` if it reaches ``cutoff``."""
    cur = L
    while cur.order < cutoff:
        nxt = extend_lift(cur)
        if nxt is None:
            return cur.order + 1
        cur = nxt
    return None


def _probe_lift(V: Representation, T: TangentSpace, seed: int) -> LiftOrderN:
    try:
        return canonical_selfext_lift(V, seed)
    except HypothesisFails:
        return first_order_lift(V, T.classes[0])


def classify_defo_ring(V: Representation, cutoff: int = DEFAULT_ORDER_CUTOFF, route: str | None = None,
                       seed: int = 0, homological_cutoff: int | None = None) -> RingReport:
    """Versal deformation ring of ``V`` after removing projective summands.

    Route ``"monomial"``: monomial algebra without overlaps and ``V`` (up to
    projectives) an indecomposable ``A p`` with ``p`` perfect; the ring is
    ``k`` or the dual numbers according to ``Ext^1(V, V)``.
    Route ``"gorenstein"``: Gorenstein algebra, ``V`` Gorenstein-projective
    with one-dimensional stable endomorphisms; the ring is read off the
    tangent dimension and the first obstructed order.
    """
    A = V.algebra
    stripped = strip_projectives(V) if not V.is_zero() else None
    if stripped is None or stripped.core.is_zero():
        return RingReport(RingTag.trivial(), "projective", 0, None, stripped.peeled if stripped else [])
    core, peeled = stripped.core, stripped.peeled

    if route is None:
        route = "monomial" if A.is_monomial else "gorenstein"

    if route == "monomial":
        from .monomial import gproj_indecomposables, overlaps
        if not A.is_monomial:
            return RingReport(RingTag.undetermined(), route, None, None, peeled, "algebra not monomial")
        if overlaps(A):
            return RingReport(RingTag.undetermined(), route, None, None, peeled, "the algebra has overlaps")
        match = next((e for e in gproj_indecomposables(A, seed)
                      if e.module.dims == core.dims and is_isomorphic(e.module, core, seed=seed).verdict is Iso.YES),
                     None)
        if match is None:
            return RingReport(RingTag.undetermined(), route, None, None, peeled,
                              "not an indecomposable non-projective Gorenstein-projective")
        e = ext1(core, core)
        if e == 0:
            return RingReport(RingTag.trivial(), route, 0, None, peeled)
        order = obstruction_order(_probe_lift(core, tangent_space(core), seed), cutoff)
        return RingReport(RingTag.dual_numbers(), route, e, order, peeled)

    if route == "gorenstein":
        g = is_gorenstein(A, homological_cutoff)
        if g.verdict is not Verdict.TRUE:
            return RingReport(RingTag.undetermined(), route, None, None, peeled, "algebra not certified Gorenstein")
        gp = is_gorenstein_projective(core, homological_cutoff, route="gorenstein", seed=seed)
        if gp.verdict is not Verdict.TRUE:
            return RingReport(RingTag.undetermined(), route, None, None, peeled, "not Gorenstein-projective")
        if stable_hom(core, core).dim != 1:
            return RingReport(RingTag.undetermined(), route, None, None, peeled,
                              "stable endomorphism ring is not k")
        T = tangent_space(core)
        if T.quotient_dim == 0:
            return RingReport(RingTag.trivial(), route, 0, None, peeled)
        if T.quotient_dim > 1:
            return RingReport(RingTag.undetermined(), route, T.quotient_dim, None, peeled,
                              "tangent dimension above one")
        order = obstruction_order(_probe_lift(core, T, seed), cutoff)
        if order is None:
            return RingReport(RingTag.undetermined(), route, 1, None, peeled,
                              f"no obstruction up to order {cutoff}")
        return RingReport(RingTag.truncated(order), route, 1, order, peeled)

    raise ValueError(f"unknown route {route!r}")


@dataclass
class LadderStep:
    class_index: int
    obstruction_order: int | None  # None: extended through the requested order


def lift_probe(V: Representation, order: int, seed: int = 0):
    """Tangent basis of ``V`` and, for each basis class, the first order at
    which its extension ladder is obstructed (up to ``order``)."""
    T = tangent_space(V)
    steps = []
    for k, corr in enumerate(T.classes):
        L = first_order_lift(V, corr)
        steps.append(LadderStep(k, obstruction_order(L, order)))
    return T, steps


@dataclass
class SyzygyComparison:
    generator: Path
    ring: RingTag
    syzygy_ring: RingTag

    @property
    def agree(self) -> bool:
        return self.ring == self.syzygy_ring


def compare_with_syzygy(A, cutoff: int = DEFAULT_ORDER_CUTOFF, seed: int = 0) -> list[SyzygyComparison]:
    """Rings of ``A p`` and of its syzygy for every classified ``A p`` over a
    monomial algebra.  An experiment only: agreement on a sample says nothing
    in general."""
    from .monomial import gproj_indecomposables
    out = []
    for e in gproj_indecomposables(A, seed):
        r = classify_defo_ring(e.module, cutoff, seed=seed).ring
        s = classify_defo_ring(syzygy(e.module, 1), cutoff, seed=seed).ring
        out.append(SyzygyComparison(e.generator, r, s))
    return out
