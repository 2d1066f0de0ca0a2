import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import Q
from logcurve import linalg
from logcurve.cohomology import CocycleError, Hypercocycle, h1_log_basis, normalize_cocycle
from logcurve.dual_graph import Component, LogCurveModel, ModelError, betti1, flip_orientation
from logcurve.exact_arith import RatForm, parse_ratfunc
from logcurve.families import banana, chain, cycle, random_model, theta
from logcurve.monodromy import (
    dubois_h1,
    monodromy_apply,
    monodromy_edge_vector,
    monodromy_matrix,
    nilpotency_check,
    orientation_invariance_check,
    sp_matrix,
    uniformizer_invariance_check,
    verify_invariant_cycles,
)


def eta_cocycle():
    """(eta_v, -eta_w, 0) on banana_2 with nodes {0, 1} on both sides."""
    return Hypercocycle({"v0": RatForm(parse_ratfunc("1/z - 1/(z-1)")),
                         "v1": RatForm(parse_ratfunc("-1/z + 1/(z-1)"))}, {})


def with_genus(model: LogCurveModel, genus: dict) -> LogCurveModel:
    comps = tuple(Component(c.id, genus.get(c.id, 0)) for c in model.components)
    return LogCurveModel(comps, model.edges)


def test_apply_banana_eta():
    m = banana(2)
    basis = h1_log_basis(m)
    c = eta_cocycle()
    assert monodromy_edge_vector(m, c) == [1, -1]
    image = monodromy_apply(m, basis, c)
    # (1, -1) is not in Im alpha = span(1, 1), so the class is nonzero
    assert image[:basis.n_coker] != [0] * basis.n_coker
    assert image[basis.n_coker:] == [0] * basis.n_kerbeta


def test_apply_pure_scalars_is_zero():
    m = theta()
    basis = h1_log_basis(m)
    c = Hypercocycle({}, {"e1": Q(3), "e3": Q("-1/2")})
    assert monodromy_apply(m, basis, c) == [0] * basis.dim


def test_apply_on_tree_is_empty():
    m = chain(2)
    assert monodromy_apply(m, h1_log_basis(m), Hypercocycle({}, {"e1": Q(1)})) == []


def test_apply_rejects_non_cocycle():
    m = banana(2)
    with pytest.raises(CocycleError):
        monodromy_apply(m, h1_log_basis(m), Hypercocycle({"v0": RatForm(parse_ratfunc("1/z - 1/(z-1)"))}, {}))


def test_matrix_banana():
    m = banana(2)
    op = monodromy_matrix(m)
    assert op.rank == 1
    nonzero = [(i, j) for i in range(2) for j in range(2) if op.matrix[i][j] != 0]
    assert op.labels() == ["coker:e2", "kerbeta:0"]
    assert nonzero == [(0, 1)]
    # the Ker beta generator is (eta_v, -eta_w) itself
    assert normalize_cocycle(m, op.basis, eta_cocycle()) == [0, 1]


def test_matrix_tree_and_theta():
    op = monodromy_matrix(chain(4))
    assert op.dim == 0 and op.matrix == []
    op = monodromy_matrix(theta())
    assert (op.dim, op.rank) == (4, 2)


def test_block_structure():
    for m in (theta(), cycle(5), random_model(6, 9, 3)):
        op = monodromy_matrix(m)
        nc = op.basis.n_coker
        for i in range(op.dim):
            for j in range(op.dim):
                if i >= nc or j < nc:
                    assert op.matrix[i][j] == 0


def test_dubois_examples():
    assert dubois_h1(banana(2)).dim == 1
    assert dubois_h1(chain(3)).dim == 0
    lone = LogCurveModel((Component("v", 1),))
    assert dubois_h1(lone).dim == 2


def test_sp_examples():
    m = banana(2)
    sp = sp_matrix(m)
    assert sp == [[1], [0]]
    assert sp_matrix(chain(3)) == []
    lone = LogCurveModel((Component("v", 1),))
    assert sp_matrix(lone) == [[1, 0], [0, 1]]
    assert monodromy_matrix(lone).matrix == [[0, 0], [0, 0]]


@pytest.mark.parametrize("model,h1,db,ker", [
    (banana(2), 2, 1, 1),
    (theta(), 4, 2, 2),
    (with_genus(cycle(4), {"v2": 1}), 4, 3, 3),
])
def test_invariant_cycles(model, h1, db, ker):
    rep = verify_invariant_cycles(model)
    assert rep.passed
    assert (rep.dim_h1_log, rep.dim_h1_db, rep.dim_ker_monodromy) == (h1, db, ker)
    assert rep.rank_monodromy == betti1(model)


def test_nilpotency_examples():
    assert nilpotency_check(banana(2))
    assert nilpotency_check(theta())


def test_orientation_examples():
    m = banana(2)
    assert orientation_invariance_check(m, ["e1"])
    assert orientation_invariance_check(m, [])
    assert orientation_invariance_check(cycle(3), ["e1", "e2", "e3"])
    with pytest.raises(ModelError):
        orientation_invariance_check(m, ["e7"])


def test_orientation_flip_negates_by_hand():
    """After flipping e1 the residue taken on A(e1) changes side and sign."""
    m = banana(2)
    f = flip_orientation(m, "e1")
    c = eta_cocycle()
    assert monodromy_edge_vector(m, c) == [1, -1]
    assert monodromy_edge_vector(f, c) == [-1, -1]


def test_uniformizer_invariance_examples():
    for m in (banana(2), theta(), with_genus(cycle(4), {"v2": 1})):
        assert uniformizer_invariance_check(m, random.Random(5), trials=3, coboundaries=3).passed


# properties

@st.composite
def models(draw, max_v=6, max_e=9, genus=False):
    v = draw(st.integers(2, max_v))
    e = draw(st.integers(v - 1, max_e))
    m = random_model(v, e, draw(st.integers(0, 10**6)))
    if genus:
        g = draw(st.dictionaries(st.sampled_from(m.vertex_ids), st.integers(0, 2), max_size=2))
        m = with_genus(m, g)
    return m


@given(models(genus=True))
def test_exact_sequence_and_dimensions(m):
    rep = verify_invariant_cycles(m)
    g2 = sum(2 * c.genus for c in m.components)
    b1 = betti1(m)
    assert rep.passed
    assert rep.dim_h1_log == 2 * b1 + g2
    assert rep.dim_h1_db == b1 + g2 == rep.dim_ker_monodromy
    assert rep.rank_monodromy == b1


@given(models(genus=True))
def test_square_is_zero(m):
    assert nilpotency_check(m)


@given(models(genus=True), st.data())
def test_orientation_invariance(m, data):
    flips = data.draw(st.sets(st.sampled_from(m.edge_ids)))
    assert orientation_invariance_check(m, flips)


@settings(max_examples=15)
@given(models(max_v=5, max_e=7, genus=True), st.integers(0, 10**6))
def test_uniformizer_invariance(m, seed):
    assert uniformizer_invariance_check(m, random.Random(seed), trials=2, coboundaries=2).passed


@given(models())
def test_sp_is_injective_with_image_the_kernel(m):
    op = monodromy_matrix(m)
    sp = sp_matrix(m, op.basis)
    ncols = dubois_h1(m, op.basis).dim
    assert linalg.rank(sp, ncols) == ncols
    ker = linalg.nullspace(op.matrix, op.dim)
    assert linalg.same_span(ker, [linalg.column(sp, j) for j in range(ncols)], op.dim)
