"""Quivers, paths and finite-dimensional bound quiver algebras.

Paths are stored in application order: ``Path(1, 1, ("a", "b"))`` first
applies ``a`` and then ``b``.  In the usual right-to-left notation this path
is written ``ba``.  :meth:`Path.written` and :meth:`Quiver.path_written`
translate between the two.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import MalformedRelation, NotAdmissible
from .exactlin import QQ, Matrix


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class Path:
    source: str
    target: str
    arrows: tuple[str, ...] = ()

    @staticmethod
    def trivial(vertex) -> "Path":
        return Path(vertex, vertex, ())

    def __len__(self):
        return len(self.arrows)

    @property
    def is_trivial(self):
        return not self.arrows

    def written(self) -> tuple[str, ...]:
        """Arrow names left to right as in ``p = a_n ... a_1``."""
        return tuple(reversed(self.arrows))

    def sort_key(self):
        return (len(self.arrows), self.arrows, self.source)

    def then(self, other: "Path") -> "Path | None":
        """``self`` followed by ``other``; ``None`` when they do not compose."""
        if self.target != other.source:
            return None
        return Path(self.source, other.target, self.arrows + other.arrows)

    def __mul__(self, other: "Path") -> "Path | None":
        # written product: self * other applies other first
        return other.then(self)

    def label(self) -> str:
        if not self.arrows:
            return f"e{self.source}"
        names = self.written()
        sep = "" if all(len(n) == 1 for n in names) else "*"
        return sep.join(names)

    def __repr__(self):
        return f"Path({self.label()})"


class Quiver:
    def __init__(self, vertices: Sequence, arrows: Iterable):
        self.vertices = [str(v) for v in vertices]
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex identifiers")
        self.arrows: list[Arrow] = []
        for a in arrows:
            if not isinstance(a, Arrow):
                a = Arrow(str(a[0]), str(a[1]), str(a[2]))
            else:
                a = Arrow(str(a.name), str(a.source), str(a.target))
            self.arrows.append(a)
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise ValueError("arrow names must be unique")
        for a in self.arrows:
            if a.source not in self.vertices or a.target not in self.vertices:
                raise ValueError(f"arrow {a.name} uses an undeclared vertex")
        self._by_name = {a.name: a for a in self.arrows}

    def arrow(self, name: str) -> Arrow:
        return self._by_name[name]

    def arrows_from(self, v):
        return [a for a in self.arrows if a.source == v]

    def arrows_to(self, v):
        return [a for a in self.arrows if a.target == v]

    def path(self, names: Sequence[str], vertex=None) -> Path:
        """Path from arrow names in application order."""
        names = tuple(names)
        if not names:
            if vertex is None:
                raise ValueError("a trivial path needs its vertex")
            vertex = str(vertex)
            if vertex not in self.vertices:
                raise ValueError(f"unknown vertex {vertex}")
            return Path.trivial(vertex)
        try:
            arrs = [self._by_name[n] for n in names]
        except KeyError as exc:
            raise ValueError(f"unknown arrow {exc.args[0]}") from None
        for x, y in zip(arrs, arrs[1:]):
            if x.target != y.source:
                raise ValueError(f"arrows {x.name} and {y.name} do not compose")
        return Path(arrs[0].source, arrs[-1].target, names)

    def path_written(self, names: Sequence[str], vertex=None) -> Path:
        """Path from arrow names in written (right-to-left) order."""
        return self.path(tuple(reversed(tuple(names))), vertex)

    def paths_of_length(self, n: int) -> list[Path]:
        cur = [Path.trivial(v) for v in self.vertices]
        for _ in range(n):
            cur = [Path(p.source, a.target, p.arrows + (a.name,))
                   for p in cur for a in self.arrows_from(p.target)]
        return sorted(cur, key=Path.sort_key)

    def opposite(self) -> "Quiver":
        return Quiver(self.vertices, [Arrow(a.name, a.target, a.source) for a in self.arrows])

    def __repr__(self):
        arr = ", ".join(f"{a.name}:{a.source}->{a.target}" for a in self.arrows)
        return f"Quiver(vertices={self.vertices}, arrows=[{arr}])"


@dataclass(frozen=True)
class Relation:
    terms: tuple  # of (coefficient, Path)

    def __post_init__(self):
        if not self.terms:
            raise MalformedRelation("a relation needs at least one term")
        s, t = self.terms[0][1].source, self.terms[0][1].target
        for _, p in self.terms:
            if len(p) < 2:
                raise MalformedRelation(f"relation term {p.label()} has length < 2")
            if (p.source, p.target) != (s, t):
                raise MalformedRelation("relation terms are not parallel paths")

    @property
    def source(self):
        return self.terms[0][1].source

    @property
    def target(self):
        return self.terms[0][1].target

    def reversed(self) -> "Relation":
        return Relation(tuple((c, Path(p.target, p.source, tuple(reversed(p.arrows))))
                              for c, p in self.terms))

    def label(self) -> str:
        return " + ".join(f"{c}*{p.label()}" for c, p in self.terms)


MAX_PATHS = 20000


def _paths_up_to(quiver, L):
    out = []
    cur = [Path.trivial(v) for v in quiver.vertices]
    out.extend(cur)
    for _ in range(L):
        cur = [Path(p.source, a.target, p.arrows + (a.name,))
               for p in cur for a in quiver.arrows_from(p.target)]
        out.extend(cur)
    return out


@dataclass(eq=False)
class BoundQuiverAlgebra:
    """``kQ/I`` with a path basis, a normal-form table and helpers."""

    quiver: Quiver
    relations: list
    field: object
    basis: list  # of Path, ordered shortest-lexicographic first
    bound: int  # every path of length >= bound is zero
    is_monomial: bool
    _nf: dict = dc_field(repr=False)  # Path -> tuple of coefficients
    _truncation: int = dc_field(repr=False, default=0)
    _opposite: object = dc_field(repr=False, default=None)
    _cache: dict = dc_field(repr=False, default_factory=dict)

    @property
    def dim(self):
        return len(self.basis)

    @property
    def vertices(self):
        return self.quiver.vertices

    @cached_property
    def index(self) -> dict:
        return {p: i for i, p in enumerate(self.basis)}

    @cached_property
    def basis_at(self) -> dict:
        """``(source, target) -> [basis indices]``, i.e. a basis of ``e_t A e_s``."""
        out = {(i, j): [] for i in self.vertices for j in self.vertices}
        for k, p in enumerate(self.basis):
            out[(p.source, p.target)].append(k)
        return out

    def zero(self):
        return tuple([self.field.zero] * self.dim)

    def basis_element(self, k):
        v = [self.field.zero] * self.dim
        v[k] = self.field.one
        return tuple(v)

    def normal_form(self, p: Path) -> tuple:
        if len(p) > self._truncation:
            return self.zero()
        return self._nf[p]

    def is_zero_path(self, p: Path) -> bool:
        return all(x == 0 for x in self.normal_form(p))

    def element(self, terms) -> tuple:
        """Residue of a linear combination ``[(coeff, Path), ...]``."""
        acc = [self.field.zero] * self.dim
        for c, p in terms:
            c = self.field(c)
            for k, x in enumerate(self.normal_form(p)):
                if x != 0:
                    acc[k] = acc[k] + c * x
        return tuple(acc)

    @cached_property
    def _table(self):
        tab = {}
        for i, p in enumerate(self.basis):
            for j, q in enumerate(self.basis):
                pq = q.then(p)  # written p*q: q first
                if pq is not None:
                    nf = self.normal_form(pq)
                    if any(x != 0 for x in nf):
                        tab[(i, j)] = nf
        return tab

    def multiply(self, u, v) -> tuple:
        acc = [self.field.zero] * self.dim
        tab = self._table
        for i, a in enumerate(u):
            if a == 0:
                continue
            for j, b in enumerate(v):
                if b == 0:
                    continue
                nf = tab.get((i, j))
                if nf is None:
                    continue
                ab = a * b
                for k, x in enumerate(nf):
                    if x != 0:
                        acc[k] = acc[k] + ab * x
        return tuple(acc)

    def nonzero_paths(self) -> list[Path]:
        """All nonzero paths for a monomial algebra; the basis paths otherwise."""
        return list(self.basis)

    @cached_property
    def zero_relations(self) -> list[Path]:
        """Minimal zero paths (monomial generators of the ideal)."""
        out = []
        for L in range(2, self.bound + 1):
            for p in self.quiver.paths_of_length(L):
                if p in self.index:
                    continue
                if not self.is_zero_path(p):
                    continue
                if any(_contains(p.arrows, g.arrows) for g in out):
                    continue
                out.append(p)
        return out

    def identity(self):
        acc = [self.field.zero] * self.dim
        for v in self.vertices:
            acc[self.index[Path.trivial(v)]] = self.field.one
        return tuple(acc)

    def opposite(self) -> "BoundQuiverAlgebra":
        if self._opposite is None:
            op = build_algebra(self.quiver.opposite(), [r.reversed() for r in self.relations],
                               field=self.field, max_degree=max(self._truncation, 2))
            op._opposite = self
            self._opposite = op
        return self._opposite

    def describe(self) -> str:
        return f"algebra of dim {self.dim} on {len(self.vertices)} vertices"


def _contains(word, sub):
    n, m = len(word), len(sub)
    return any(word[i:i + m] == sub for i in range(n - m + 1))


def make_relation(quiver: Quiver, terms, field=QQ, written=True) -> Relation:
    """Relation from ``[(coeff, [arrow names]), ...]``."""
    out = []
    for c, names in terms:
        p = quiver.path_written(names) if written else quiver.path(names)
        out.append((field(c), p))
    return Relation(tuple(out))


def _insert_row(pivots: dict, vec: dict, field):
    """Reduce a sparse row against the echelon ``pivots`` (leading column ->
    normalized row) and add it if it survives."""
    while vec:
        c = min(vec)
        row = pivots.get(c)
        if row is None:
            inv = field.one / vec[c]
            pivots[c] = {k: x * inv for k, x in vec.items()}
            return
        f = vec[c]
        for k, x in row.items():
            y = vec.get(k, field.zero) - f * x
            if y == 0:
                vec.pop(k, None)
            else:
                vec[k] = y


def _back_substitute(pivots: dict):
    """Clear every pivot column from the other rows (reduced echelon form)."""
    for c in sorted(pivots, reverse=True):
        prow = pivots[c]
        for c2, row in pivots.items():
            if c2 < c and c in row:
                f = row[c]
                for k, x in prow.items():
                    y = row.get(k, 0) - f * x
                    if y == 0:
                        row.pop(k, None)
                    else:
                        row[k] = y


def build_algebra(quiver: Quiver, relations: Sequence[Relation], field=QQ,
                  max_degree: int | None = None) -> BoundQuiverAlgebra:
    """Finite-dimensional quotient ``kQ/I`` of the path algebra.

    For each length cap ``L`` the two-sided ideal is computed inside
    ``kQ / J^(L+1)`` as the span of all ``u r w`` (terms longer than ``L``
    dropped) and row reduced with the longest paths as leading columns.
    The first ``L`` for which every path of length ``L`` reduces to zero is
    an admissibility witness; the quotient is then stable in ``L``.
    """
    relations = list(relations)
    for r in relations:
        for c, p in r.terms:
            for a in p.arrows:
                quiver.arrow(a)
    if max_degree is None:
        max_degree = 2 + 8 * len(quiver.arrows)
    if max_degree < 2:
        raise ValueError("max_degree must be at least 2")

    for L in range(2, max_degree + 1):
        paths = _paths_up_to(quiver, L)
        if len(paths) > MAX_PATHS:
            raise NotAdmissible(f"more than {MAX_PATHS} paths of length <= {L} and no admissibility witness yet")
        order = sorted(paths, key=Path.sort_key, reverse=True)
        col = {p: i for i, p in enumerate(order)}
        ncols = len(order)
        by_target = {v: [] for v in quiver.vertices}
        by_source = {v: [] for v in quiver.vertices}
        for p in paths:
            by_source[p.source].append(p)
            by_target[p.target].append(p)

        pivots = {}
        for r in relations:
            shortest = min(len(p) for _, p in r.terms)
            for w in by_target[r.source]:
                if len(w) + shortest > L:
                    continue
                for u in by_source[r.target]:
                    if len(w) + len(u) + shortest > L:
                        continue
                    vec = {}
                    for c, p in r.terms:
                        full = w.arrows + p.arrows + u.arrows
                        if len(full) > L:
                            continue
                        j = col[Path(w.source, u.target, full)]
                        vec[j] = vec.get(j, field.zero) + field(c)
                    _insert_row(pivots, {j: x for j, x in vec.items() if x != 0}, field)
        _back_substitute(pivots)

        top = [p for p in paths if len(p) == L]
        if all(len(pivots.get(col[p], ())) == 1 for p in top):
            basis_cols = sorted((j for j in range(ncols) if j not in pivots), key=lambda j: order[j].sort_key())
            pos = {j: k for k, j in enumerate(basis_cols)}

            def nf_of(j):
                v = [field.zero] * len(basis_cols)
                if j in pos:
                    v[pos[j]] = field.one
                else:
                    for c, x in pivots[j].items():
                        if c != j:
                            v[pos[c]] = -x
                return tuple(v)

            nf = {p: nf_of(col[p]) for p in paths}
            monomial = all(len(row) == 1 for row in pivots.values())
            bound = L
            while bound > 1 and all(
                    all(x == 0 for x in nf[p]) for p in paths if len(p) == bound - 1):
                bound -= 1
            return BoundQuiverAlgebra(
                quiver=quiver, relations=relations, field=field,
                basis=[order[j] for j in basis_cols], bound=max(bound, 1),
                is_monomial=monomial, _nf=nf, _truncation=L)
    raise NotAdmissible(f"no degree <= {max_degree} has all paths in the ideal")
