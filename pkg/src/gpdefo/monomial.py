"""Perfect pairs, perfect paths and overlaps of monomial algebras, and the
classification of indecomposable non-projective Gorenstein-projectives as the
cyclic modules ``A p`` for perfect ``p``.

The pair conditions are phrased on written products (``pq`` means "apply q,
then p").  Paths are stored in application order, so a written left factor is
an application-order suffix and a written right factor a prefix.
"""

from __future__ import annotations

from dataclasses import dataclass

import networkx as nx

from .errors import NotMonomial, NotPerfect
from .quiver import BoundQuiverAlgebra, Path
from .repmod import (Iso, Representation, cyclic_module, is_isomorphic, projective, split_off,
                     strip_projectives)


def _require_monomial(A):
    if not A.is_monomial:
        raise NotMonomial("the algebra is not monomial")


def _written_product(A, left: Path, right: Path) -> Path | None:
    """``left * right`` as a path (``right`` applied first), or ``None`` if the
    endpoints do not match."""
    return right.then(left)


def _is_app_prefix(x: Path, p: Path) -> bool:
    return x.source == p.source and p.arrows[:len(x.arrows)] == x.arrows


def _is_app_suffix(x: Path, p: Path) -> bool:
    return x.target == p.target and (not x.arrows or p.arrows[len(p.arrows) - len(x.arrows):] == x.arrows)


def _nontrivial_paths(A) -> list[Path]:
    return [p for p in A.nonzero_paths() if not p.is_trivial]


def is_perfect_pair(A: BoundQuiverAlgebra, p: Path, q: Path) -> bool:
    _require_monomial(A)
    if p.is_trivial or q.is_trivial or A.is_zero_path(p) or A.is_zero_path(q):
        return False
    pq = _written_product(A, p, q)
    if pq is None or not A.is_zero_path(pq):
        return False
    for r in _nontrivial_paths(A):
        # every nonzero q' into s(p) killed by p is q q''
        if r.target == p.source and A.is_zero_path(r.then(p)) and not _is_app_suffix(q, r):
            return False
        # every nonzero p' out of t(q) killing q is p'' p
        if r.source == q.target and A.is_zero_path(q.then(r)) and not _is_app_prefix(p, r):
            return False
    return True


def _perfect_graph(A) -> nx.DiGraph:
    paths = _nontrivial_paths(A)
    G = nx.DiGraph()
    for p in paths:
        for q in paths:
            if is_perfect_pair(A, p, q):
                G.add_edge(p, q)
    return G


def _canonical_cycle(cycle):
    k = min(range(len(cycle)), key=lambda i: cycle[i].sort_key())
    return tuple(cycle[k:] + cycle[:k])


def perfect_cycles(A: BoundQuiverAlgebra) -> list[tuple[Path, ...]]:
    """All elementary cycles of the perfect-pair graph, each rotated to start
    at its smallest member; sorted."""
    _require_monomial(A)
    if "perfect_cycles" not in A._cache:
        G = _perfect_graph(A)
        cycles = {_canonical_cycle(c) for c in nx.simple_cycles(G)}
        A._cache["perfect_cycles"] = sorted(cycles, key=lambda c: [p.sort_key() for p in c])
    return A._cache["perfect_cycles"]


def perfect_paths(A: BoundQuiverAlgebra) -> list[Path]:
    seen = {p for c in perfect_cycles(A) for p in c}
    return sorted(seen, key=lambda p: p.sort_key())


def syzygy_of_perfect(A: BoundQuiverAlgebra, p: Path) -> Path:
    """The perfect path ``r`` with ``Ω(A p) ≅ A r``: the ``r`` making ``(r, p)``
    a perfect pair."""
    _require_monomial(A)
    for c in perfect_cycles(A):
        if p in c:
            return c[c.index(p) - 1]
    raise NotPerfect(f"{p.label()} is not a perfect path")


@dataclass(frozen=True)
class Overlap:
    p: Path
    q: Path
    x: Path
    p_rest: Path  # p = p_rest x (written)
    q_rest: Path  # q = x q_rest (written)
    kind: str  # "O1" or "O2"

    @property
    def strict(self) -> bool:
        """Whether both outer factors are non-trivial."""
        return not self.p_rest.is_trivial and not self.q_rest.is_trivial


def overlaps(A: BoundQuiverAlgebra) -> list[Overlap]:
    """Every overlap between (ordered pairs of) perfect paths, under the
    literal reading where only the shared factor ``x`` must be non-trivial when
    ``p != q``; see :attr:`Overlap.strict` for the stricter reading."""
    _require_monomial(A)
    Q = A.quiver
    out = []
    perf = perfect_paths(A)
    for p in perf:
        for q in perf:
            # x: app-prefix of p and app-suffix of q, of length 1..min
            for k in range(1, min(len(p), len(q)) + 1):
                x_arrows = p.arrows[:k]
                if q.arrows[len(q) - k:] != x_arrows:
                    continue
                x = Q.path(x_arrows)
                p_rest = Q.path(p.arrows[k:], vertex=x.target)
                q_rest = Q.path(q.arrows[:len(q) - k], vertex=q.source)
                if p == q and (p_rest.is_trivial or q_rest.is_trivial):
                    continue
                whole = q_rest.then(x).then(p_rest)
                if A.is_zero_path(whole):
                    continue
                out.append(Overlap(p, q, x, p_rest, q_rest, "O1" if p == q else "O2"))
    return out


@dataclass(frozen=True)
class GprojEntry:
    generator: Path
    module: Representation
    syzygy_generator: Path


def gproj_indecomposables(A: BoundQuiverAlgebra, seed: int = 0) -> list[GprojEntry]:
    """One entry ``A p`` per perfect path, up to isomorphism."""
    out = []
    for p in perfect_paths(A):
        M = cyclic_module(A, p)
        if any(e.module.dims == M.dims and is_isomorphic(e.module, M, seed=seed).verdict is Iso.YES
               for e in out):
            continue
        out.append(GprojEntry(p, M, syzygy_of_perfect(A, p)))
    return out


def indecomposable_projectives(A: BoundQuiverAlgebra) -> list[Representation]:
    return [projective(A, v) for v in A.vertices]


def is_gproj_monomial(M: Representation, seed: int = 0) -> bool:
    """Exact test over a monomial algebra: ``M`` is Gorenstein-projective iff
    after removing projective summands it splits into modules ``A p`` with
    ``p`` perfect."""
    A = M.algebra
    _require_monomial(A)
    core = strip_projectives(M).core
    gens = [e.module for e in gproj_indecomposables(A, seed)]
    changed = True
    while changed and not core.is_zero():
        changed = False
        for X in gens:
            if any(X.dims[v] > core.dims[v] for v in A.vertices):
                continue
            res = split_off(core, X)
            if res is not None:
                core = res[0]
                changed = True
                break
    return core.is_zero()
