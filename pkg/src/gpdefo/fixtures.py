"""Built-in algebras and modules used by the CLI and the test suite.

Relations are given on written words: ``["b", "a"]`` is the path ``b a``
(apply ``a`` first).
"""

from __future__ import annotations

from functools import lru_cache

from .exactlin import Matrix, field_from_spec
from .quiver import BoundQuiverAlgebra, Quiver, build_algebra, make_relation
from .repmod import Representation, cyclic_module, projective, radical

ALGEBRAS = {
    "lambda": {
        "vertices": ["1", "2"],
        "arrows": [("a", "1", "2"), ("b", "2", "1")],
        "relations": [[(1, ["b", "a", "b", "a"])]],
    },
    "gamma": {
        "vertices": ["1'", "2'"],
        "arrows": [("x", "1'", "2'"), ("y", "2'", "1'"), ("z", "2'", "2'")],
        "relations": [[(1, ["y", "x"])], [(1, ["z", "x"])], [(1, ["y", "z"])],
                      [(1, ["z", "z"]), (-1, ["x", "y"])]],
    },
    "dual": {
        "vertices": ["1"],
        "arrows": [("a", "1", "1")],
        "relations": [[(1, ["a", "a"])]],
    },
    "a2": {
        "vertices": ["1", "2"],
        "arrows": [("a", "1", "2")],
        "relations": [],
    },
    "cycle3": {
        "vertices": ["1", "2", "3"],
        "arrows": [("a", "1", "2"), ("b", "2", "3"), ("c", "3", "1")],
        "relations": [[(1, ["b", "a"])], [(1, ["c", "b"])], [(1, ["a", "c"])]],
    },
    "point": {
        "vertices": ["1"],
        "arrows": [],
        "relations": [],
    },
}


def fixture_names() -> list[str]:
    return sorted(ALGEBRAS)


@lru_cache(maxsize=None)
def _fixture(name: str, field) -> BoundQuiverAlgebra:
    spec = ALGEBRAS[name]
    Q = Quiver(spec["vertices"], spec["arrows"])
    rels = [make_relation(Q, terms, field) for terms in spec["relations"]]
    return build_algebra(Q, rels, field)


def fixture(name: str, field="Q") -> BoundQuiverAlgebra:
    if name not in ALGEBRAS:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(fixture_names())}")
    return _fixture(name, field_from_spec(field))


def simple(A: BoundQuiverAlgebra, v) -> Representation:
    return Representation(A, {str(v): 1})


def module_W(G: BoundQuiverAlgebra) -> Representation:
    """The module of dimension vector (1, 2) over ``gamma`` with ``x`` onto the
    first basis vector and ``z`` sending the second to the first."""
    F = G.field
    return Representation(G, {"1'": 1, "2'": 2}, {
        "x": Matrix.from_rows(F, [[F.one], [F.zero]]),
        "z": Matrix.from_rows(F, [[F.zero, F.one], [F.zero, F.zero]]),
    })


def module_V(L: BoundQuiverAlgebra) -> Representation:
    """``lambda · ba``: the cyclic module generated by the path ``b a``."""
    return cyclic_module(L, L.quiver.path_written(["b", "a"]))


NAMED_MODULES = {
    ("gamma", "W"): module_W,
    ("lambda", "V"): module_V,
}


def module_zoo(A: BoundQuiverAlgebra, algebra_name: str | None = None) -> dict:
    """Simples ``S<v>``, indecomposable projectives ``P<v>``, their nonzero
    radicals ``radP<v>``, and the named modules of the fixture."""
    out = {}
    for v in A.vertices:
        out[f"S{v}"] = simple(A, v)
    for v in A.vertices:
        out[f"P{v}"] = projective(A, v)
        R, _ = radical(projective(A, v))
        if not R.is_zero():
            out[f"radP{v}"] = R
    for (alg, mod), fn in NAMED_MODULES.items():
        if alg == algebra_name:
            out[mod] = fn(A)
    return out


def named_module(algebra_name: str | None, module_name: str, A: BoundQuiverAlgebra) -> Representation:
    fn = NAMED_MODULES.get((algebra_name, module_name))
    if fn is not None:
        return fn(A)
    zoo = module_zoo(A, algebra_name)
    if module_name not in zoo:
        raise KeyError(f"no built-in module {module_name!r}; known: {', '.join(zoo)}")
    return zoo[module_name]


def fixture_modules(name: str, field="Q") -> dict:
    return module_zoo(fixture(name, field), name)
