import itertools

import pytest
from hypothesis import given, strategies as st

from gpdefo.deformation import (LiftOrderN, RingTag, canonical_selfext_lift,
                                classify_defo_ring, compare_with_syzygy, extend_lift, first_order_lift,
                                lift_probe, obstruction_order, tangent_space, trivial_lift)
from gpdefo.errors import HypothesisFails, InvalidLift, ZeroModule
from gpdefo.exactlin import Matrix
from gpdefo.fixtures import fixture, fixture_modules, simple
from gpdefo.homology import ext1
from gpdefo.monomial import gproj_indecomposables
from gpdefo.repmod import Iso, direct_sum, is_isomorphic, projective, syzygy, zero_module


# -- brute-force lifting oracle over F_p --------------------------------------

def _all_families(V):
    F = V.field
    arrows = V.algebra.quiver.arrows
    shapes = [V.maps[a.name].shape for a in arrows]
    n = sum(r * c for r, c in shapes)
    for flat in itertools.product(range(F.p), repeat=n):
        out, k = {}, 0
        for a, (r, c) in zip(arrows, shapes):
            out[a.name] = Matrix(F, r, c, [[F(flat[k + i * c + j]) for j in range(c)] for i in range(r)])
            k += r * c
        yield out


def _relations_hold(V, orders, n):
    """Expand every relation with arrow maps ``sum_j t^j orders[j][a]`` and
    check the coefficients of ``t^0..t^n``."""
    F = V.field
    for rel in V.algebra.relations:
        total = [Matrix(F, V.dims[rel.target], V.dims[rel.source]) for _ in range(n + 1)]
        for c, p in rel.terms:
            poly = [Matrix.identity(F, V.dims[p.source])] + [Matrix(F, V.dims[p.source], V.dims[p.source])] * n
            for name in p.arrows:
                new = []
                for d in range(n + 1):
                    acc = None
                    for j in range(d + 1):
                        term = orders[j][name] @ poly[d - j]
                        acc = term if acc is None else acc + term
                    new.append(acc)
                poly = new
            total = [t + q.scale(F(c)) for t, q in zip(total, poly)]
        if any(not m.is_zero() for m in total):
            return False
    return True


def brute_force_second_order(V):
    """``(cocycle count, whether any first-order lift with a non-trivial class
    extends to order two)``."""
    T = tangent_space(V)
    base = V.maps
    cocycles = [c for c in _all_families(V) if _relations_hold(V, [base, c], 1)]
    extendable = False
    for c1 in cocycles:
        if T.is_coboundary(c1):
            continue
        if any(_relations_hold(V, [base, c1, c2], 2) for c2 in _all_families(V)):
            extendable = True
    return len(cocycles), extendable


@pytest.mark.parametrize("name,key", [("lambda", "V"), ("dual", "S1"), ("lambda", "S1"), ("cycle3", "radP1")])
def test_second_order_obstruction_matches_brute_force_over_f2(name, key):
    V = fixture_modules(name, "Fp:2")[key]
    T = tangent_space(V)
    count, extendable = brute_force_second_order(V)
    assert count == 2 ** T.cocycles.ncols
    if T.quotient_dim == 0:
        assert not extendable
    else:
        ours = [extend_lift(first_order_lift(V, c)) is not None for c in T.classes]
        assert any(ours) == extendable


def test_w_cocycle_count_over_f2():
    W = fixture_modules("gamma", "Fp:2")["W"]
    T = tangent_space(W)
    cocycles = sum(1 for c in _all_families(W) if _relations_hold(W, [W.maps, c], 1))
    assert cocycles == 2 ** T.cocycles.ncols


# -- tangent space -------------------------------------------------------------

@pytest.mark.parametrize("name", ["lambda", "gamma", "dual", "cycle3", "a2"])
def test_tangent_dimension_equals_ext1(name):
    for key, M in fixture_modules(name).items():
        assert tangent_space(M).quotient_dim == ext1(M, M), key


def test_tangent_examples(lam, V, W):
    assert tangent_space(projective(lam, "1")).quotient_dim == 0
    assert tangent_space(V).quotient_dim == 1
    assert tangent_space(W).quotient_dim == 1
    with pytest.raises(ZeroModule):
        tangent_space(zero_module(lam))


# -- lifts ---------------------------------------------------------------------

def test_trivial_lift_extends(V, W):
    for M in (V, W):
        L = trivial_lift(M)
        for _ in range(4):
            L = extend_lift(L)
            assert L is not None and L.is_valid()
        assert L.order == 5


def test_invalid_lift_rejected(V):
    F = V.field
    bad = {"a": Matrix.from_rows(F, [[1]]), "b": Matrix.from_rows(F, [[1]])}
    with pytest.raises(InvalidLift):
        extend_lift(LiftOrderN(V, [bad, bad, bad]))
    with pytest.raises(InvalidLift):
        first_order_lift(V, {"a": Matrix.from_rows(F, [[1, 0]]), "b": Matrix.from_rows(F, [[0]])})


def test_canonical_lift_is_nontrivial_and_obstructed(V, W):
    for M in (V, W):
        L = canonical_selfext_lift(M)
        assert L.order == 1 and L.is_valid()
        assert not tangent_space(M).is_coboundary(L.corrections[0])
        assert extend_lift(L) is None
        assert obstruction_order(L) == 2


def test_canonical_lift_needs_periodic_module(lam, cyc):
    with pytest.raises(HypothesisFails):
        canonical_selfext_lift(projective(lam, "2"))
    M = fixture_modules("cycle3")["radP1"]
    assert not is_isomorphic(syzygy(M, 1), M)
    with pytest.raises(HypothesisFails):
        canonical_selfext_lift(M)


@given(st.lists(st.integers(-3, 3), min_size=2, max_size=2), st.integers(-3, 3))
def test_gauge_invariance_of_obstruction(hs, scale):
    """Adding a coboundary to a first-order lift does not change whether it extends."""
    V = fixture_modules("lambda")["V"]
    F = V.field
    T = tangent_space(V)
    base = T.classes[0]
    h = {"1": Matrix.from_rows(F, [[hs[0]]]), "2": Matrix.from_rows(F, [[hs[1]]])}
    shifted = {a.name: base[a.name].scale(scale) + V.maps[a.name] @ h[a.source] - h[a.target] @ V.maps[a.name]
               for a in V.algebra.quiver.arrows}
    L = first_order_lift(V, shifted)
    expected = scale == 0  # the zero class is trivial and extends
    assert (extend_lift(L) is not None) == expected


# -- ring classification ---------------------------------------------------------

def test_ring_examples(lam, V, W):
    r = classify_defo_ring(V)
    assert (str(r.ring), r.route, r.tangent_dim) == ("k[[t]]/(t^2)", "monomial", 1)
    r = classify_defo_ring(V, route="gorenstein")
    assert (str(r.ring), r.obstruction_order) == ("k[[t]]/(t^2)", 2)
    r = classify_defo_ring(W)
    assert (str(r.ring), r.route, r.obstruction_order) == ("k[[t]]/(t^2)", "gorenstein", 2)
    for v in lam.vertices:
        r = classify_defo_ring(projective(lam, v))
        assert r.ring == RingTag.trivial() and r.route == "projective"
    assert r.to_json()["ring"] == "k"


def test_ring_tags():
    assert str(RingTag.truncated(4)) == "k[[t]]/(t^4)"
    assert RingTag.dual_numbers() == RingTag.truncated(2)
    with pytest.raises(ValueError):
        RingTag.truncated(1)


def test_projective_summand_invariance():
    for name, key in (("lambda", "V"), ("gamma", "W"), ("cycle3", "radP2")):
        A = fixture(name)
        M = fixture_modules(name)[key]
        base = classify_defo_ring(M)
        for v in A.vertices:
            r = classify_defo_ring(direct_sum(M, projective(A, v)))
            assert r.ring == base.ring
            assert r.peeled == [v]


def test_undetermined_outside_hypotheses(lam):
    r = classify_defo_ring(simple(lam, "1"))
    assert r.ring == RingTag.undetermined() and r.detail
    r = classify_defo_ring(simple(lam, "1"), route="gorenstein")
    assert r.ring == RingTag.undetermined()


def test_dichotomy_sweep():
    for name in ("lambda", "dual", "cycle3"):
        for e in gproj_indecomposables(fixture(name)):
            periodic = is_isomorphic(syzygy(e.module, 1), e.module).verdict is Iso.YES
            expected = RingTag.dual_numbers() if periodic else RingTag.trivial()
            assert classify_defo_ring(e.module).ring == expected


def test_lift_probe_ladder(V, cyc):
    T, steps = lift_probe(V, 4)
    assert T.quotient_dim == 1
    assert [s.obstruction_order for s in steps] == [2]
    T, steps = lift_probe(fixture_modules("cycle3")["radP1"], 4)
    assert steps == []


def test_syzygy_comparison_experiment():
    for name in ("lambda", "dual", "cycle3"):
        rows = compare_with_syzygy(fixture(name))
        assert rows and all(r.agree for r in rows)
