"""Combinatorial monodromy, Du Bois cohomology and the invariant-cycles check."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Optional

from . import linalg
from .cohomology import (
    CocycleError,
    CohomBasis,
    FormClass,
    Hypercocycle,
    Units,
    coboundary,
    edge_residues,
    h1_log_basis,
    h1dr_dim,
    normalize_cocycle,
)
from .dual_graph import LogCurveModel, betti1, flip_orientation
from .exact_arith import Poly, RatFunc
from .exact_arith.rational import Rational


@dataclass(frozen=True)
class Operator:
    matrix: linalg.Matrix
    basis: CohomBasis

    @property
    def dim(self) -> int:
        return self.basis.dim

    @property
    def rank(self) -> int:
        return linalg.rank(self.matrix, self.dim)

    def labels(self) -> list[str]:
        return self.basis.labels()


@dataclass(frozen=True)
class DuBoisSpace:
    dim: int
    coker_edges: tuple[int, ...]
    genus_part: tuple[tuple[str, int], ...]

    def labels(self, model: LogCurveModel) -> list[str]:
        eids = model.edge_ids
        return (["coker:%s" % eids[e] for e in self.coker_edges]
                + ["genus:%s:%d" % (v, j) for v, j in self.genus_part])


def monodromy_apply(model: LogCurveModel, basis: CohomBasis, c: Hypercocycle) -> list[Rational]:
    """Coordinates of the class of (0, (Res at the source node of w_source)_e)."""
    a = monodromy_edge_vector(model, c)
    return basis.reduce_edge_vector(a) + [Rational(0)] * basis.n_kerbeta


def monodromy_edge_vector(model: LogCurveModel, c: Hypercocycle) -> list[Rational]:
    """The residue edge vector before cohomological reduction."""
    out = []
    for e, (a, b) in zip(model.edges, edge_residues(model, c)):
        if a + b != 0:
            raise CocycleError(e.id, a, b)
        out.append(a)
    return out


def monodromy_matrix(model: LogCurveModel, basis: Optional[CohomBasis] = None) -> Operator:
    if basis is None:
        basis = h1_log_basis(model)
    cols = [monodromy_apply(model, basis, basis.representative(k)) for k in range(basis.dim)]
    return Operator(linalg.columns_to_matrix(cols, basis.dim), basis)


def dubois_h1(model: LogCurveModel, basis: Optional[CohomBasis] = None) -> DuBoisSpace:
    # Coker of the incidence map is the same whether read in Du Bois or log terms
    if basis is None:
        basis = h1_log_basis(model)
    genus = tuple((c.id, j) for c in model.components for j in range(2 * c.genus))
    return DuBoisSpace(basis.n_coker + len(genus), basis.coker_edges, genus)


def sp_matrix(model: LogCurveModel, basis: Optional[CohomBasis] = None) -> linalg.Matrix:
    """dim H^1_log x dim H^1_DB matrix of the specialization map."""
    if basis is None:
        basis = h1_log_basis(model)
    db = dubois_h1(model, basis)
    cols = []
    for k in range(basis.n_coker):
        cols.append([Rational(int(i == k)) for i in range(basis.dim)])
    kb = [list(v) for v in basis.kerbeta_reps]
    for vid, j in db.genus_part:
        vi = model.vertex_index(vid)
        vec = [Rational(0)] * basis.offsets[-1]
        vec[basis.offsets[vi] + j] = Rational(1)
        y = linalg.solve_in_span(vec, kb)
        if y is None:
            raise AssertionError("genus axis of %r is not in Ker beta" % vid)
        cols.append([Rational(0)] * basis.n_coker + y)
    return linalg.columns_to_matrix(cols, basis.dim)


@dataclass(frozen=True)
class InvariantCyclesReport:
    dim_h1_log: int
    dim_h1_db: int
    rank_sp: int
    rank_monodromy: int
    dim_ker_monodromy: int
    sp_injective: bool
    monodromy_kills_sp: bool
    kernel_equals_image: bool

    @property
    def passed(self) -> bool:
        return self.sp_injective and self.monodromy_kills_sp and self.kernel_equals_image


def verify_invariant_cycles(model: LogCurveModel, basis: Optional[CohomBasis] = None,
                            op: Optional[Operator] = None) -> InvariantCyclesReport:
    """Check 0 -> H1_DB -> H1_log -> H1_log (sp, then monodromy) is exact."""
    if basis is None:
        basis = h1_log_basis(model)
    if op is None:
        op = monodromy_matrix(model, basis)
    n = basis.dim
    sp = sp_matrix(model, basis)
    m = dubois_h1(model, basis).dim
    rank_sp = linalg.rank(sp, m)
    composite = linalg.matmul(op.matrix, sp, n, m)
    ker = linalg.nullspace(op.matrix, n)
    image = [linalg.column(sp, j) for j in range(m)]
    return InvariantCyclesReport(
        dim_h1_log=n,
        dim_h1_db=m,
        rank_sp=rank_sp,
        rank_monodromy=op.rank,
        dim_ker_monodromy=len(ker),
        sp_injective=rank_sp == m,
        monodromy_kills_sp=linalg.is_zero(composite),
        kernel_equals_image=len(ker) == rank_sp and linalg.same_span(ker, image, n),
    )


def nilpotency_check(model: LogCurveModel, op: Optional[Operator] = None) -> bool:
    if op is None:
        op = monodromy_matrix(model)
    return linalg.is_zero(linalg.matmul(op.matrix, op.matrix, op.dim, op.dim))


def _negate_edges(c: Hypercocycle, flips: set[str]) -> Hypercocycle:
    return Hypercocycle(c.forms, {e: (-x if e in flips else x) for e, x in c.edge_scalars.items()})


def orientation_invariance_check(model: LogCurveModel, flips: Iterable[str]) -> bool:
    """The monodromy of the reoriented model is conjugate by the sign change.

    Negating the scalars of flipped edges is an isomorphism of total
    complexes; S is its matrix between the two canonical bases, and the
    check is N_flipped * S == S * N exactly.
    """
    flips = set(flips)
    flipped = model
    for eid in sorted(flips, key=model.edge_index):
        flipped = flip_orientation(flipped, eid)
    basis = h1_log_basis(model)
    fbasis = h1_log_basis(flipped)
    if basis.dim != fbasis.dim:
        return False
    n = basis.dim
    op = monodromy_matrix(model, basis)
    fop = monodromy_matrix(flipped, fbasis)
    cols = [normalize_cocycle(flipped, fbasis, _negate_edges(basis.representative(k), flips))
            for k in range(n)]
    s = linalg.columns_to_matrix(cols, n)
    if linalg.rank(s, n) != n:
        return False
    return linalg.matmul(fop.matrix, s, n, n) == linalg.matmul(s, op.matrix, n, n)


def random_unit(rng: random.Random, p: Rational) -> RatFunc:
    """A rational function regular and nonzero at p, of small height."""
    while True:
        num = Poly([rng.randint(-4, 4) for _ in range(rng.randint(1, 3))])
        den = Poly([rng.randint(-4, 4) for _ in range(rng.randint(1, 2))])
        if num.is_zero() or den.is_zero() or num(p) == 0 or den(p) == 0:
            continue
        return RatFunc(num, den)


def random_units(model: LogCurveModel, rng: random.Random) -> dict:
    units = {}
    for e in model.edges:
        for is_source, vid, p in ((True, e.source, e.coord_from), (False, e.target, e.coord_to)):
            if not model.component(vid).is_virtual:
                units[(e.id, is_source)] = random_unit(rng, p)
    return units


def random_node_function(model: LogCurveModel, vid: str, rng: random.Random, max_order: int = 3) -> RatFunc:
    """Random element of O(U_v): constant plus poles of order <= max_order at nodes."""
    f = RatFunc(Rational(rng.randint(-5, 5), rng.randint(1, 3)))
    for p in model.node_coords(vid):
        for j in range(1, rng.randint(0, max_order) + 1):
            c = Rational(rng.randint(-5, 5), rng.randint(1, 4))
            if c:
                f = f + RatFunc.pole(p, j) * c
    return f


def random_coboundary(model: LogCurveModel, rng: random.Random, units: Optional[Units] = None,
                      max_order: int = 3) -> Hypercocycle:
    funcs = {c.id: random_node_function(model, c.id, rng, max_order)
             for c in model.components if not c.is_virtual}
    return coboundary(model, funcs, units)


@dataclass(frozen=True)
class UnitInvarianceResult:
    trials: int
    matrix_identical: bool
    coboundaries_vanish: bool
    representatives_stable: bool

    @property
    def passed(self) -> bool:
        return self.matrix_identical and self.coboundaries_vanish and self.representatives_stable


def uniformizer_invariance_check(model: LogCurveModel, rng: random.Random, trials: int = 5,
                                 coboundaries: int = 2) -> UnitInvarianceResult:
    """Re-run the monodromy with random uniformizer units at every node.

    Each trial perturbs every basis representative by a coboundary built with
    the trial's units, then normalizes and applies the monodromy under those
    same units.  The matrix must match the default one bit for bit, and pure
    coboundaries must normalize to zero.
    """
    basis = h1_log_basis(model)
    ref = monodromy_matrix(model, basis).matrix
    n = basis.dim
    same, vanish, stable = True, True, True
    for _ in range(trials):
        units = random_units(model, rng)
        for _ in range(coboundaries):
            b = random_coboundary(model, rng, units)
            if any(x != 0 for x in normalize_cocycle(model, basis, b, units)):
                vanish = False
        cols = []
        for k in range(n):
            rep = basis.representative(k) + random_coboundary(model, rng, units)
            coords = normalize_cocycle(model, basis, rep, units)
            if coords != [Rational(int(i == k)) for i in range(n)]:
                stable = False
            cols.append(monodromy_apply(model, basis, rep))
        if linalg.columns_to_matrix(cols, n) != ref:
            same = False
    return UnitInvarianceResult(trials, same, vanish, stable)


def expected_dims(model: LogCurveModel) -> dict:
    """Dimensions forced by the two exact sequences."""
    b1 = betti1(model)
    g2 = sum(2 * c.genus for c in model.components)
    return {"h1_log": 2 * b1 + g2, "h1_db": b1 + g2, "rank_monodromy": b1}


__all__ = [
    "DuBoisSpace",
    "FormClass",
    "InvariantCyclesReport",
    "Operator",
    "UnitInvarianceResult",
    "dubois_h1",
    "expected_dims",
    "h1dr_dim",
    "monodromy_apply",
    "monodromy_edge_vector",
    "monodromy_matrix",
    "nilpotency_check",
    "orientation_invariance_check",
    "random_coboundary",
    "random_units",
    "sp_matrix",
    "uniformizer_invariance_check",
    "verify_invariant_cycles",
]
