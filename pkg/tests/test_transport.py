import pytest

from gpdefo.errors import AlgebraMismatch, InvalidModule, PrerequisiteFails
from gpdefo.exactlin import Matrix
from gpdefo.fixtures import fixture, fixture_modules, simple
from gpdefo.homology import Verdict
from gpdefo.quiver import Quiver, build_algebra, make_relation
from gpdefo.repmod import direct_sum, is_isomorphic, projective
from gpdefo.transport import (Bimodule, outer_bimodule, regular_bimodule, tensor, transport_check,
                              twisted_regular)


def right_projective(A, v):
    """``e_v A`` as a left module over the opposite algebra."""
    return projective(A.opposite(), v)


def test_regular_bimodule_is_projective_both_sides(lam, gam):
    for A in (lam, gam):
        X = regular_bimodule(A)
        assert X.is_projective_one_sided("left") and X.is_projective_one_sided("right")
        assert is_isomorphic(X.as_left_module(), direct_sum(*[projective(A, v) for v in A.vertices]))
    with pytest.raises(ValueError):
        regular_bimodule(lam).is_projective_one_sided("middle")


def test_outer_bimodules(lam):
    X = outer_bimodule(projective(lam, "1"), right_projective(lam, "1"))
    assert X.is_projective_one_sided("left") and X.is_projective_one_sided("right")
    Y = outer_bimodule(simple(lam, "2"), right_projective(lam, "1"))
    assert not Y.is_projective_one_sided("left")


@pytest.mark.parametrize("name", ["lambda", "gamma", "cycle3"])
def test_tensor_with_regular_is_identity(name):
    X = regular_bimodule(fixture(name))
    for key, M in fixture_modules(name).items():
        assert is_isomorphic(tensor(X, M), M), key


def test_tensor_with_projective_picks_column(lam):
    X = outer_bimodule(projective(lam, "1"), right_projective(lam, "1"))
    for v in lam.vertices:
        T = tensor(X, projective(lam, v))
        # X e_v = P1 (x) (e_1 A e_v)
        k = len(lam.basis_at[(v, "1")])
        expected = direct_sum(*[projective(lam, "1")] * k) if k else None
        assert T.dim == 4 * k
        if expected is not None:
            assert is_isomorphic(T, expected)


def test_tensor_outer_projective_with_v(lam, V):
    X = outer_bimodule(projective(lam, "1"), right_projective(lam, "1"))
    T = tensor(X, V)
    assert is_isomorphic(T, projective(lam, "1"))


def test_tensor_is_additive(gam, W):
    X = regular_bimodule(gam)
    zoo = fixture_modules("gamma")
    for M in zoo.values():
        lhs = tensor(X, direct_sum(M, W))
        assert is_isomorphic(lhs, direct_sum(tensor(X, M), tensor(X, W)))


def test_bimodule_validation(lam):
    F = lam.field
    one = Matrix.from_rows(F, [[1]])
    dims = {("1", "1"): 1, ("2", "1"): 1}
    # left a: (1,1) -> (2,1); right action of a: X[(j, 2)] -> X[(j, 1)] is zero here
    X = Bimodule(lam, lam, dims, left_maps={("a", "1"): one})
    assert X.dims[("1", "2")] == 0
    with pytest.raises(InvalidModule):
        Bimodule(lam, lam, dims, left_maps={("a", "1"): Matrix.from_rows(F, [[1, 1]])})
    with pytest.raises(AlgebraMismatch):
        Bimodule(lam, fixture("lambda", "Fp:3"), {})


def test_twisted_regular_rejects_bad_maps(lam, cyc):
    with pytest.raises(AlgebraMismatch):
        twisted_regular(lam, lam, arrow_map={"a": "b", "b": "a"})
    # the rotation of the 3-cycle preserves the relations
    rot = {"1": "2", "2": "3", "3": "1"}
    X = twisted_regular(cyc, cyc, vertex_map=rot, arrow_map={"a": "b", "b": "c", "c": "a"})
    assert X.is_projective_one_sided("left")
    # lambda^op with the identity names is not parallel
    with pytest.raises(AlgebraMismatch):
        twisted_regular(lam.opposite(), lam)
    # a -> a is parallel, but a^2 = 0 does not hold in k[a]/(a^3)
    Q = Quiver(["1"], [("a", "1", "1")])
    cube = build_algebra(Q, [make_relation(Q, [(1, ["a", "a", "a"])])])
    with pytest.raises(AlgebraMismatch, match="not sent to zero"):
        twisted_regular(cube, fixture("dual"))


def test_transport_identity(V, W):
    for M in (V, W):
        rep = transport_check(regular_bimodule(M.algebra), M)
        assert rep.passed
        assert is_isomorphic(rep.transported, M)
        assert rep.transported_gproj is Verdict.TRUE
        assert rep.stable_end_dim == 1
        assert str(rep.source_ring.ring) == "k[[t]]/(t^2)"
        assert rep.to_json()["result"] == "PASS"


def test_transport_along_opposite_twist(lam, V):
    X = twisted_regular(lam.opposite(), lam, arrow_map={"a": "b", "b": "a"})
    rep = transport_check(X, V)
    assert rep.passed and rep.transported.algebra is lam.opposite()
    assert str(rep.target_ring.ring) == "k[[t]]/(t^2)"


def test_transport_peels_projectives(lam, V):
    X = outer_bimodule(projective(lam, "1"), right_projective(lam, "1"))
    rep = transport_check(X, V)
    assert rep.peeled == ["1"] and rep.transported.is_zero()
    assert str(rep.target_ring.ring) == "k"
    assert not rep.passed


def test_transport_preconditions(lam, V):
    bad = outer_bimodule(simple(lam, "2"), right_projective(lam, "1"))
    with pytest.raises(PrerequisiteFails) as exc:
        transport_check(bad, V)
    assert exc.value.condition == "left_projective"
    bad = outer_bimodule(projective(lam, "1"), simple(lam.opposite(), "1"))
    with pytest.raises(PrerequisiteFails) as exc:
        transport_check(bad, V)
    assert exc.value.condition == "right_projective"
    with pytest.raises(PrerequisiteFails) as exc:
        transport_check(regular_bimodule(lam), simple(lam, "1"))
    assert exc.value.condition == "module_gproj"
