import itertools
import math

import pytest
from hypothesis import assume, given, strategies as st

from gpdefo.errors import AlgebraMismatch, InvalidModule, UnsupportedField, ZeroGenerator, ZeroModule
from gpdefo.exactlin import Matrix, inverse, is_invertible
from gpdefo.fixtures import fixture, fixture_modules, simple
from gpdefo.quiver import Path
from gpdefo.repmod import (Decomp, Iso, Representation, cyclic_module, direct_sum, hom,
                           is_indecomposable, is_isomorphic, is_projective, projective,
                           projective_cover, radical, strip_projectives, syzygy, top, zero_module)


def brute_force_hom_dim(M, N):
    """Count intertwiners over a finite field by enumeration."""
    F = M.field
    p = F.p
    verts = M.algebra.vertices
    shapes = [(N.dims[v], M.dims[v]) for v in verts]
    n_entries = sum(r * c for r, c in shapes)
    count = 0
    for flat in itertools.product(range(p), repeat=n_entries):
        blocks, k = {}, 0
        for v, (r, c) in zip(verts, shapes):
            blocks[v] = Matrix(F, r, c, [[F(flat[k + i * c + j]) for j in range(c)] for i in range(r)])
            k += r * c
        if all(N.maps[a.name] @ blocks[a.source] == blocks[a.target] @ M.maps[a.name]
               for a in M.algebra.quiver.arrows):
            count += 1
    d = round(math.log(count, p))
    assert p ** d == count
    return d


def _small_pairs(name):
    zoo = fixture_modules(name, "Fp:2")
    mods = sorted(zoo.items())
    for (a, M), (b, N) in itertools.product(mods, mods):
        if sum(M.dims[v] * N.dims[v] for v in M.algebra.vertices) <= 12:
            yield f"{name}:{a}->{b}", M, N


@pytest.mark.parametrize("label,M,N", [t for n in ("lambda", "gamma", "dual", "cycle3") for t in _small_pairs(n)],
                         ids=lambda x: x if isinstance(x, str) else "")
def test_hom_dim_matches_brute_force_over_f2(label, M, N):
    assert hom(M, N).dim == brute_force_hom_dim(M, N)


def test_projective_dims(lam, gam):
    assert projective(lam, "1").dims == {"1": 2, "2": 2}
    assert projective(lam, "2").dim == 5
    assert projective(gam, "1'").dims == {"1'": 1, "2'": 1}


def test_cyclic_module_examples(lam, dual_alg):
    V = cyclic_module(lam, lam.quiver.path_written(["b", "a"]))
    assert V.dims == {"1": 1, "2": 1}
    assert is_isomorphic(cyclic_module(lam, Path.trivial("1")), projective(lam, "1"))
    S = cyclic_module(dual_alg, dual_alg.quiver.path_written(["a"]))
    assert S.dim == 1
    with pytest.raises(ZeroGenerator):
        cyclic_module(lam, lam.quiver.path_written(["b", "a", "b", "a"]))


def test_hom_examples(lam, V):
    assert hom(V, V).dim == 1
    assert hom(simple(lam, "1"), simple(lam, "2")).dim == 0
    with pytest.raises(AlgebraMismatch):
        hom(V, simple(fixture("gamma"), "1'"))


def test_hom_basis_elements_are_homomorphisms(gam, W):
    for M in fixture_modules("gamma").values():
        for f in hom(M, W).basis:
            assert f.is_homomorphism()


def test_yoneda_count(lam, gam):
    for name, A in (("lambda", lam), ("gamma", gam)):
        for M in fixture_modules(name).values():
            for v in A.vertices:
                assert hom(projective(A, v), M).dim == M.dims[v]


def test_radical_examples(lam, W):
    R, _ = radical(projective(lam, "1"))
    assert R.dim == 3
    assert radical(direct_sum(simple(lam, "1"), simple(lam, "2")))[0].dim == 0
    RW, _ = radical(W)
    assert RW.dims == {"1'": 0, "2'": 1}


def test_projective_cover_examples(lam, V, W):
    c = projective_cover(V)
    assert c.cover.dim == 4 and c.kernel.dim == 2
    assert is_isomorphic(c.kernel, V)
    c = projective_cover(W)
    assert c.cover.dim == 6 and sorted(c.summands) == ["1'", "2'"]
    assert c.kernel.dim == 3 and is_isomorphic(c.kernel, W)
    assert projective_cover(projective(lam, "2")).kernel.is_zero()
    with pytest.raises(ZeroModule):
        projective_cover(zero_module(lam))


def test_cover_is_minimal_and_surjective():
    for name in ("lambda", "gamma", "dual", "cycle3", "a2"):
        for M in fixture_modules(name).values():
            c = projective_cover(M)
            T, _ = top(M)
            assert top(c.cover)[0].dims == T.dims
            for v in M.algebra.vertices:
                assert c.map.blocks[v].shape == (M.dims[v], c.cover.dims[v])
            assert c.map.is_homomorphism()
            assert c.kernel.dim == c.cover.dim - M.dim


def test_syzygy(lam, gam, V, W):
    assert syzygy(V, 0) is V
    assert is_isomorphic(syzygy(W, 2), W)
    with pytest.raises(ValueError):
        syzygy(V, -1)
    for name in ("lambda", "gamma", "a2"):
        for M in fixture_modules(name).values():
            assert syzygy(M, 1).is_zero() == is_projective(M)


def test_direct_sum(lam, V):
    S = direct_sum(V, projective(lam, "1"))
    assert S.dims == {"1": 3, "2": 3}
    assert is_isomorphic(direct_sum(V, zero_module(lam)), V)


def test_is_isomorphic_verdicts(lam, V):
    assert is_isomorphic(V, V).verdict is Iso.YES
    assert is_isomorphic(V, simple(lam, "1")).verdict is Iso.NO
    r = is_isomorphic(syzygy(V, 1), V)
    assert r.verdict is Iso.YES and r.witness.is_invertible() and r.witness.is_homomorphism()
    # same dimension vector, not isomorphic
    assert is_isomorphic(V, direct_sum(simple(lam, "1"), simple(lam, "2"))).verdict is not Iso.YES


def test_invalid_module_rejected(lam):
    F = lam.field
    one = Matrix.from_rows(F, [[1]])
    with pytest.raises(InvalidModule):
        Representation(lam, {"1": 1, "2": 1}, {"a": one, "b": one})
    with pytest.raises(InvalidModule):
        Representation(lam, {"1": 1, "2": 1}, {"a": Matrix.from_rows(F, [[1, 0]])})
    with pytest.raises(InvalidModule):
        Representation(lam, {"1": 1}, {"c": one})


def test_strip_projectives_examples(lam, V):
    core, peeled = strip_projectives(projective(lam, "1"))
    assert core.is_zero() and peeled == ["1"]
    core, peeled = strip_projectives(V)
    assert peeled == [] and is_isomorphic(core, V)
    core, peeled = strip_projectives(direct_sum(V, projective(lam, "2")))
    assert peeled == ["2"] and is_isomorphic(core, V)


def test_strip_projectives_invariants():
    for name in ("lambda", "gamma", "cycle3"):
        A = fixture(name)
        zoo = fixture_modules(name)
        for M in zoo.values():
            for v in A.vertices:
                N = direct_sum(M, projective(A, v))
                s = strip_projectives(N)
                if not s.core.is_zero():
                    assert strip_projectives(s.core).peeled == []
                rebuilt = direct_sum(s.core, *[projective(A, u) for u in s.peeled])
                assert is_isomorphic(N, rebuilt)
                assert s.inclusion.is_homomorphism()


def test_is_indecomposable(lam, V):
    assert is_indecomposable(simple(lam, "1"))[0] is Decomp.YES
    assert is_indecomposable(V)[0] is Decomp.YES
    verdict, e = is_indecomposable(direct_sum(V, V))
    assert verdict is Decomp.NO
    assert e.is_homomorphism() and (e @ e).full_matrix() == e.full_matrix()
    assert not e.is_zero() and not e.is_invertible()
    with pytest.raises(UnsupportedField):
        is_indecomposable(fixture_modules("lambda", "Fp:3")["V"])


_ZOO = [(n, k) for n in ("lambda", "gamma", "cycle3") for k in sorted(fixture_modules(n))]


@st.composite
def conjugated(draw):
    name, key = draw(st.sampled_from(_ZOO))
    M = fixture_modules(name)[key]
    F = M.field
    gs = {}
    for v, d in M.dims.items():
        entries = draw(st.lists(st.lists(st.integers(-3, 3), min_size=d, max_size=d), min_size=d, max_size=d))
        g = Matrix(F, d, d, entries)
        assume(is_invertible(g))
        gs[v] = g
    maps = {a.name: gs[a.target] @ M.maps[a.name] @ inverse(gs[a.source]) for a in M.algebra.quiver.arrows}
    return M, Representation(M.algebra, M.dims, maps)


@given(conjugated())
def test_conjugate_modules_are_isomorphic(pair):
    M, N = pair
    r = is_isomorphic(M, N)
    assert r.verdict is Iso.YES
    assert r.witness.is_homomorphism() and r.witness.is_invertible()
