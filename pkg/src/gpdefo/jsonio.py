"""JSON reading and writing for algebras, modules and bimodules.

Paths in JSON are lists of arrow names in written order: ``["b", "a"]`` is
``b a``, which applies ``a`` first.  Scalars are ints or strings such as
``"-3/4"``.

Algebra::

    {"vertices": ["1", "2"],
     "arrows": [{"name": "a", "source": "1", "target": "2"}, ...],
     "relations": [["b", "a", "b", "a"],
                   [{"coeff": 1, "path": ["z", "z"]}, {"coeff": -1, "path": ["x", "y"]}]]}

or a fixture name (``"lambda"``), ``{"fixture": "lambda"}``, or
``{"opposite": <algebra>}``.

Module: ``{"dims": {"1": 1}, "maps": {"a": [[1]]}}``, ``{"generator": [...]}``
or the name of a built-in module; an optional ``"algebra"`` key is allowed.

Bimodule: ``{"regular": <algebra>}``, ``{"twisted": {"left": .., "right": ..,
"vertex_map": {}, "arrow_map": {}}}``, or explicit::

    {"left": <algebra>, "right": <algebra>,
     "spaces": [{"left": "1", "right": "2", "dim": 2}, ...],
     "left_maps": [{"arrow": "x", "right_vertex": "1", "matrix": [[..]]}, ...],
     "right_maps": [{"arrow": "a", "left_vertex": "1", "matrix": [[..]]}, ...]}
"""

from __future__ import annotations

import json
from pathlib import Path as FsPath

from .errors import AlgebraError, FieldError, ParseError
from .exactlin import Matrix, field_from_spec
from .fixtures import ALGEBRAS, fixture, named_module
from .quiver import Quiver, build_algebra, make_relation
from .repmod import Representation, cyclic_module
from .transport import Bimodule, twisted_regular


def load_json(source):
    """Parse a JSON file (or an already-decoded object)."""
    if not isinstance(source, (str, FsPath)):
        return source
    p = FsPath(source)
    try:
        text = p.read_text()
    except OSError as exc:
        raise ParseError(str(p), f"cannot read file ({exc.strerror})") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{p}:{exc.lineno}:{exc.colno}", exc.msg) from None


def _expect(cond, where, message):
    if not cond:
        raise ParseError(where, message)


def _scalar(F, x, where):
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise ParseError(where, f"scalar must be an int or a string, got {x!r}")
    try:
        return F(x)
    except FieldError as exc:
        raise ParseError(where, str(exc)) from None


def _matrix(F, rows, nrows, ncols, where):
    _expect(isinstance(rows, list), where, "matrix must be a list of rows")
    if nrows == 0:
        _expect(rows == [] or all(r == [] for r in rows), where, "expected an empty matrix")
        return Matrix(F, 0, ncols)
    _expect(len(rows) == nrows, where, f"expected {nrows} rows, got {len(rows)}")
    out = []
    for i, r in enumerate(rows):
        _expect(isinstance(r, list) and len(r) == ncols, f"{where}[{i}]", f"expected a row of length {ncols}")
        out.append([_scalar(F, x, f"{where}[{i}][{j}]") for j, x in enumerate(r)])
    return Matrix(F, nrows, ncols, out)


def _names(obj, where):
    _expect(isinstance(obj, list) and all(isinstance(n, str) for n in obj), where,
            "a path must be a list of arrow names")
    return obj


def parse_algebra(obj, field="Q", where="algebra"):
    """Return ``(name, algebra)``; ``name`` is the fixture name or ``None``."""
    if isinstance(obj, str):
        _expect(obj in ALGEBRAS, where, f"unknown fixture {obj!r}; known: {', '.join(sorted(ALGEBRAS))}")
        return obj, fixture(obj, field)
    _expect(isinstance(obj, dict), where, "expected an object or a fixture name")
    if "fixture" in obj:
        return parse_algebra(obj["fixture"], field, f"{where}.fixture")
    if "opposite" in obj:
        _, A = parse_algebra(obj["opposite"], field, f"{where}.opposite")
        return None, A.opposite()
    for key in ("vertices", "arrows"):
        _expect(key in obj, where, f"missing field {key!r}")
    verts = obj["vertices"]
    _expect(isinstance(verts, list) and verts, f"{where}.vertices", "expected a non-empty list")
    verts = [str(v) for v in verts]
    arrows = []
    for k, a in enumerate(obj["arrows"]):
        w = f"{where}.arrows[{k}]"
        if isinstance(a, dict):
            for key in ("name", "source", "target"):
                _expect(key in a, w, f"missing field {key!r}")
            a = (a["name"], a["source"], a["target"])
        _expect(isinstance(a, (list, tuple)) and len(a) == 3, w, "expected name, source, target")
        name, s, t = str(a[0]), str(a[1]), str(a[2])
        _expect(s in verts, f"{w}.source", f"unknown vertex {s!r}")
        _expect(t in verts, f"{w}.target", f"unknown vertex {t!r}")
        arrows.append((name, s, t))
    try:
        Q = Quiver(verts, arrows)
    except (ValueError, AlgebraError) as exc:
        raise ParseError(f"{where}.arrows", str(exc)) from None
    F = field_from_spec(field)
    rels = []
    for k, r in enumerate(obj.get("relations", [])):
        w = f"{where}.relations[{k}]"
        if isinstance(r, dict):
            _expect("terms" in r, w, "missing field 'terms'")
            r = r["terms"]
        _expect(isinstance(r, list) and r, w, "a relation must be a non-empty list")
        if all(isinstance(x, str) for x in r):
            terms = [(1, r)]
        else:
            terms = []
            for m, t in enumerate(r):
                wt = f"{w}[{m}]"
                _expect(isinstance(t, dict) and "path" in t, wt, "a term needs 'coeff' and 'path'")
                terms.append((t.get("coeff", 1), _names(t["path"], f"{wt}.path")))
        try:
            rels.append(make_relation(Q, [(_scalar(F, c, w), names) for c, names in terms], F))
        except (ValueError, AlgebraError) as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(w, str(exc)) from None
    return None, build_algebra(Q, rels, F)


def parse_module(obj, A, algebra_name=None, where="module") -> Representation:
    F = A.field
    if isinstance(obj, str):
        try:
            return named_module(algebra_name, obj, A)
        except KeyError as exc:
            raise ParseError(where, exc.args[0]) from None
    _expect(isinstance(obj, dict), where, "expected an object or a module name")
    if "generator" in obj:
        names = _names(obj["generator"], f"{where}.generator")
        try:
            return cyclic_module(A, A.quiver.path_written(names))
        except ValueError as exc:
            if isinstance(exc, AlgebraError):
                raise
            raise ParseError(f"{where}.generator", str(exc)) from None
    _expect("dims" in obj, where, "missing field 'dims'")
    dims = obj["dims"]
    _expect(isinstance(dims, dict), f"{where}.dims", "expected an object vertex -> dimension")
    for v, d in dims.items():
        _expect(v in A.vertices, f"{where}.dims", f"unknown vertex {v!r}")
        _expect(isinstance(d, int) and not isinstance(d, bool) and d >= 0, f"{where}.dims.{v}",
                "expected a non-negative integer")
    dims = {v: dims.get(v, 0) for v in A.vertices}
    maps = {}
    given = obj.get("maps", {})
    _expect(isinstance(given, dict), f"{where}.maps", "expected an object arrow -> matrix")
    for name, rows in given.items():
        a = _arrow(A.quiver, name, f"{where}.maps")
        maps[name] = _matrix(F, rows, dims[a.target], dims[a.source], f"{where}.maps.{name}")
    return Representation(A, dims, maps)


def _arrow(Q, name, where):
    try:
        return Q.arrow(name)
    except (KeyError, ValueError):
        raise ParseError(where, f"unknown arrow {name!r}") from None


def parse_bimodule(obj, field="Q", where="bimodule"):
    """Return ``(bimodule, right_name)``; ``right_name`` is the fixture name of
    the right algebra, if it is one, so that built-in modules can be found."""
    if isinstance(obj, str):
        return parse_bimodule({"regular": obj}, field, where)
    _expect(isinstance(obj, dict), where, "expected an object")
    if "regular" in obj:
        name, A = parse_algebra(obj["regular"], field, f"{where}.regular")
        return twisted_regular(A, A), name
    if "twisted" in obj:
        t = obj["twisted"]
        w = f"{where}.twisted"
        _expect(isinstance(t, dict) and "left" in t and "right" in t, w, "needs 'left' and 'right'")
        _, G = parse_algebra(t["left"], field, f"{w}.left")
        name, A = parse_algebra(t["right"], field, f"{w}.right")
        try:
            return twisted_regular(G, A, t.get("vertex_map"), t.get("arrow_map")), name
        except (KeyError, ValueError) as exc:
            if isinstance(exc, AlgebraError):
                raise
            raise ParseError(w, str(exc)) from None
    for key in ("left", "right", "spaces"):
        _expect(key in obj, where, f"missing field {key!r}")
    _, G = parse_algebra(obj["left"], field, f"{where}.left")
    name, A = parse_algebra(obj["right"], field, f"{where}.right")
    F = G.field
    dims = {}
    for k, s in enumerate(obj["spaces"]):
        w = f"{where}.spaces[{k}]"
        _expect(isinstance(s, dict) and {"left", "right", "dim"} <= set(s), w, "needs 'left', 'right', 'dim'")
        _expect(s["left"] in G.vertices, f"{w}.left", f"unknown vertex {s['left']!r}")
        _expect(s["right"] in A.vertices, f"{w}.right", f"unknown vertex {s['right']!r}")
        _expect(isinstance(s["dim"], int) and s["dim"] >= 0, f"{w}.dim", "expected a non-negative integer")
        dims[(s["left"], s["right"])] = s["dim"]
    left_maps, right_maps = {}, {}
    for k, m in enumerate(obj.get("left_maps", [])):
        w = f"{where}.left_maps[{k}]"
        _expect(isinstance(m, dict) and {"arrow", "right_vertex", "matrix"} <= set(m), w,
                "needs 'arrow', 'right_vertex', 'matrix'")
        g = _arrow(G.quiver, m["arrow"], f"{w}.arrow")
        i = m["right_vertex"]
        _expect(i in A.vertices, f"{w}.right_vertex", f"unknown vertex {i!r}")
        left_maps[(g.name, i)] = _matrix(F, m["matrix"], dims.get((g.target, i), 0), dims.get((g.source, i), 0),
                                         f"{w}.matrix")
    for k, m in enumerate(obj.get("right_maps", [])):
        w = f"{where}.right_maps[{k}]"
        _expect(isinstance(m, dict) and {"arrow", "left_vertex", "matrix"} <= set(m), w,
                "needs 'arrow', 'left_vertex', 'matrix'")
        a = _arrow(A.quiver, m["arrow"], f"{w}.arrow")
        j = m["left_vertex"]
        _expect(j in G.vertices, f"{w}.left_vertex", f"unknown vertex {j!r}")
        right_maps[(a.name, j)] = _matrix(F, m["matrix"], dims.get((j, a.source), 0), dims.get((j, a.target), 0),
                                          f"{w}.matrix")
    return Bimodule(G, A, dims, left_maps, right_maps), name


# -- writing -------------------------------------------------------------------

def path_json(p) -> list:
    return list(p.written())


def matrix_json(m: Matrix) -> list:
    return [[m.field.format(x) for x in row] for row in m.rows()]


def module_json(M: Representation) -> dict:
    return {"dims": dict(M.dims), "maps": {name: matrix_json(m) for name, m in M.maps.items()}}


def bimodule_json(X: Bimodule, left=None, right=None) -> dict:
    return {
        "left": left if left is not None else algebra_json(X.left),
        "right": right if right is not None else algebra_json(X.right),
        "spaces": [{"left": j, "right": i, "dim": d} for (j, i), d in X.dims.items()],
        "left_maps": [{"arrow": g, "right_vertex": i, "matrix": matrix_json(m)}
                      for (g, i), m in X.left_maps.items()],
        "right_maps": [{"arrow": a, "left_vertex": j, "matrix": matrix_json(m)}
                       for (a, j), m in X.right_maps.items()],
    }


def algebra_json(A) -> dict:
    F = A.field
    return {
        "vertices": list(A.vertices),
        "arrows": [{"name": a.name, "source": a.source, "target": a.target} for a in A.quiver.arrows],
        "relations": [[{"coeff": F.format(c), "path": path_json(p)} for c, p in r.terms] for r in A.relations],
    }
