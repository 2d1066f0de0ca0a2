"""H^0 and H^1 of the total complex of global sections.

In degree 1 a class is a hypercocycle ``((w_v)_v, (f_e)_e)``: a regular
1-form on each open U_v (component minus its nodes) and a scalar per node,
subject to the residue matching ``Res_x(w_source) + Res_y(w_target) = 0``.
Coboundaries are ``(df_v, f_source|_e - f_target|_e)`` with the restriction
taken as the constant Laurent coefficient in a chosen uniformizer.

Coordinates on H^1_dR(U_v):

* concrete component with nodes p_1..p_n (edge order): the forms
  ``eta_i = dz/(z - p_i) - dz/(z - p_n)`` for i < n;
* virtual component of genus g with n sides: 2g genus axes (zero residues)
  followed by n - 1 residue axes whose residue vector is ``e_i - e_n``.

H^1 is reported in the basis ``coker block + kerbeta block``: unit edge
vectors at the non-pivot edges of RREF(Im alpha), then the RREF basis of Ker
beta lifted as ``(forms, 0)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence, Union

from . import linalg
from .dual_graph import LogCurveModel, ModelError, Side, connected_components, image_alpha
from .exact_arith import (
    ArithError,
    NonRationalPoleError,
    Poly,
    RatForm,
    RatFunc,
    Uniformizer,
    as_fraction,
    eval_eps,
    fstr,
    laurent_expand,
    parse_ratfunc,
    rational_roots,
    residue_at,
    residues_all,
)
from .exact_arith.rational import Rational


class IrregularFormError(ArithError):
    """The form has a pole off the node set or at infinity."""


class CocycleError(ValueError):
    def __init__(self, edge: str, res_from: Rational, res_to: Rational):
        self.edge = edge
        self.res_from = res_from
        self.res_to = res_to
        super().__init__("cocycle condition violated at edge %r: residues %s and %s do not cancel"
                         % (edge, fstr(res_from), fstr(res_to)))


@dataclass(frozen=True)
class FormClass:
    vertex: str
    coords: tuple[Rational, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(Rational(c) for c in self.coords))


FormData = Union[RatForm, FormClass]
# (edge id, True for the source side) -> unit of the uniformizer at that node
Units = Mapping[tuple[str, bool], RatFunc]


@dataclass(frozen=True)
class Hypercocycle:
    forms: Mapping[str, FormData] = field(default_factory=dict)
    edge_scalars: Mapping[str, Rational] = field(default_factory=dict)

    def form(self, vid: str) -> Optional[FormData]:
        return self.forms.get(vid)

    def scalar(self, eid: str) -> Rational:
        return Rational(self.edge_scalars.get(eid, 0))

    def __add__(self, other: "Hypercocycle") -> "Hypercocycle":
        forms = dict(self.forms)
        for v, w in other.forms.items():
            if v in forms:
                forms[v] = _add_form(forms[v], w)
            else:
                forms[v] = w
        scalars = {e: self.scalar(e) for e in self.edge_scalars}
        for e in other.edge_scalars:
            scalars[e] = scalars.get(e, Rational(0)) + other.scalar(e)
        return Hypercocycle(forms, scalars)


def _add_form(a: FormData, b: FormData) -> FormData:
    if isinstance(a, RatForm) and isinstance(b, RatForm):
        return a + b
    if isinstance(a, FormClass) and isinstance(b, FormClass):
        return FormClass(a.vertex, tuple(x + y for x, y in zip(a.coords, b.coords)))
    raise TypeError("cannot add a concrete form to an abstract class")


# per-vertex de Rham data

def h1dr_dim(model: LogCurveModel, vid: str) -> int:
    n = len(model.sides(vid))
    return 2 * model.component(vid).genus + max(n - 1, 0)


def h1dr_basis(model: LogCurveModel, vid: str) -> list[FormData]:
    """Canonical basis of H^1_dR(U_v): forms for concrete v, unit axes for virtual v."""
    comp = model.component(vid)
    if comp.is_virtual:
        d = h1dr_dim(model, vid)
        return [FormClass(vid, tuple(Rational(int(i == j)) for i in range(d))) for j in range(d)]
    ps = model.node_coords(vid)
    if len(ps) < 2:
        return []
    last = RatFunc.pole(ps[-1])
    return [RatForm(RatFunc.pole(p) - last) for p in ps[:-1]]


def class_residues(model: LogCurveModel, vid: str, coords: Sequence[Rational]) -> list[Rational]:
    """Residue at each side of vid (edge order) of the class with these coordinates."""
    n = len(model.sides(vid))
    if n == 0:
        return []
    r = list(coords[2 * model.component(vid).genus:])
    return r + [-sum(r, Rational(0))]


def form_from_class(model: LogCurveModel, vid: str, coords: Sequence[Rational]) -> FormData:
    """Representative form of the class (abstract for virtual components)."""
    if model.component(vid).is_virtual:
        return FormClass(vid, tuple(coords))
    total = RatFunc(0)
    for c, eta in zip(coords, h1dr_basis(model, vid)):
        if c != 0:
            total = total + eta.coeff * c
    return RatForm(total)


def _check_poles(model: LogCurveModel, vid: str, w: RatForm) -> None:
    den = w.coeff.den
    rest = den
    for p in model.node_coords(vid):
        lin = Poly.linear(p)
        while rest.degree > 0:
            quo, rem = rest.divmod(lin)
            if not rem.is_zero():
                break
            rest = quo
    if rest.degree > 0:
        roots = rational_roots(rest)
        if roots:
            p = min(roots)
            raise IrregularFormError("form not regular on U_%s: pole at z = %s is not a node" % (vid, fstr(p)))
        raise NonRationalPoleError("non-rational pole: denominator factor %s of a form on %s" % (rest, vid))
    if w.coeff.num.degree > den.degree - 2:
        raise IrregularFormError("form not regular on U_%s: pole at infinity" % vid)


def reduce_form(model: LogCurveModel, vid: str, w: RatForm) -> tuple[FormClass, RatFunc]:
    """Split w = d(primitive) + sum class_i eta_i on a concrete component.

    The primitive is the sum of the integrated higher-order principal parts,
    so it has poles only at nodes and vanishes at infinity.
    """
    if model.component(vid).is_virtual:
        raise ValueError("component %r is virtual; it carries no concrete forms" % vid)
    dim = h1dr_dim(model, vid)
    if w.is_zero():
        return FormClass(vid, (Rational(0),) * dim), RatFunc(0)
    _check_poles(model, vid, w)
    ps = model.node_coords(vid)
    primitive = RatFunc(0)
    residues = []
    for p in ps:
        pre = laurent_expand(w.coeff, Uniformizer.standard(p), -1)
        residues.append(pre.coeff(-1))
        for j in range(2, 1 - pre.low):
            c = pre.coeff(-j)
            if c != 0:
                primitive = primitive + RatFunc.pole(p, j - 1) * (c / (1 - j))
    cls = FormClass(vid, tuple(residues[:-1]))
    rebuilt = primitive.derivative() + form_from_class(model, vid, cls.coords).coeff
    assert rebuilt == w.coeff, "partial-fraction reduction failed"
    return cls, primitive


# global linear algebra

def vertex_offsets(model: LogCurveModel) -> list[int]:
    """Start of each vertex block in the stacked H^1_dR coordinates (plus total)."""
    out = [0]
    for c in model.components:
        out.append(out[-1] + h1dr_dim(model, c.id))
    return out


def _side_position(model: LogCurveModel, vid: str, edge: int, is_source: bool) -> int:
    for k, s in enumerate(model.sides(vid)):
        if s.edge == edge and s.is_source == is_source:
            return k
    raise KeyError((vid, edge, is_source))


def beta_matrix(model: LogCurveModel) -> linalg.Matrix:
    """|E| x total H^1_dR matrix; row e is Res_source + Res_target."""
    offs = vertex_offsets(model)
    out = linalg.zeros(len(model.edges), offs[-1])
    for vi, c in enumerate(model.components):
        sides = model.sides(c.id)
        g2 = 2 * c.genus
        n = len(sides)
        for k in range(n - 1):
            col = offs[vi] + g2 + k
            out[sides[k].edge][col] += 1
            out[sides[n - 1].edge][col] -= 1
    return out


def h0_log(model: LogCurveModel) -> int:
    return len(connected_components(model))


@dataclass(frozen=True)
class CohomBasis:
    model: LogCurveModel
    im_alpha: linalg.Matrix
    im_pivots: tuple[int, ...]
    coker_edges: tuple[int, ...]
    kerbeta_reps: tuple[tuple[Rational, ...], ...]
    offsets: tuple[int, ...]

    @property
    def n_coker(self) -> int:
        return len(self.coker_edges)

    @property
    def n_kerbeta(self) -> int:
        return len(self.kerbeta_reps)

    @property
    def dim(self) -> int:
        return self.n_coker + self.n_kerbeta

    @property
    def coker_alpha_reps(self) -> list[list[Rational]]:
        n = len(self.model.edges)
        return [[Rational(int(i == e)) for i in range(n)] for e in self.coker_edges]

    def labels(self) -> list[str]:
        eids = self.model.edge_ids
        return (["coker:%s" % eids[e] for e in self.coker_edges]
                + ["kerbeta:%d" % k for k in range(self.n_kerbeta)])

    def reduce_edge_vector(self, a: Sequence[Rational]) -> list[Rational]:
        """Coker-alpha coordinates of an edge vector."""
        r = linalg.reduce_mod(list(a), self.im_alpha, self.im_pivots)
        return [r[e] for e in self.coker_edges]

    def kerbeta_forms(self, k: int) -> dict[str, FormData]:
        """Per-vertex forms of the k-th Ker beta generator (zero blocks omitted)."""
        vec = self.kerbeta_reps[k]
        out = {}
        for vi, c in enumerate(self.model.components):
            block = vec[self.offsets[vi]:self.offsets[vi + 1]]
            if any(x != 0 for x in block):
                out[c.id] = form_from_class(self.model, c.id, block)
        return out

    def representative(self, k: int) -> Hypercocycle:
        """Hypercocycle lifting the k-th basis vector."""
        if k < self.n_coker:
            eid = self.model.edges[self.coker_edges[k]].id
            return Hypercocycle({}, {eid: Rational(1)})
        return Hypercocycle(self.kerbeta_forms(k - self.n_coker), {})


def h1_log_basis(model: LogCurveModel) -> CohomBasis:
    red, pivots = image_alpha(model)
    pset = set(pivots)
    coker = tuple(i for i in range(len(model.edges)) if i not in pset)
    offs = vertex_offsets(model)
    # RREF of the kernel: each generator has a leading 1
    kb, _ = linalg.row_space(linalg.nullspace(beta_matrix(model), offs[-1]), offs[-1])
    return CohomBasis(model, red, tuple(pivots), coker,
                      tuple(tuple(v) for v in kb), tuple(offs))


def side_uniformizer(model: LogCurveModel, side: Side, units: Optional[Units]) -> Uniformizer:
    eid = model.edges[side.edge].id
    unit = None if units is None else units.get((eid, side.is_source))
    if unit is None:
        return Uniformizer.standard(side.coord)
    return Uniformizer(side.coord, unit)


def _form_residue(model: LogCurveModel, vid: str, form: Optional[FormData], side: Side) -> Rational:
    if form is None:
        return Rational(0)
    if isinstance(form, FormClass):
        if not model.component(vid).is_virtual:
            raise TypeError("abstract class given for concrete component %r" % vid)
        k = _side_position(model, vid, side.edge, side.is_source)
        return class_residues(model, vid, form.coords)[k]
    if model.component(vid).is_virtual:
        raise TypeError("concrete form given for virtual component %r" % vid)
    return residue_at(form, side.coord)


def edge_residues(model: LogCurveModel, c: Hypercocycle) -> list[tuple[Rational, Rational]]:
    """(Res on the source side, Res on the target side) for every edge."""
    out = []
    for i, e in enumerate(model.edges):
        s_from = Side(i, True, e.coord_from)
        s_to = Side(i, False, e.coord_to)
        out.append((_form_residue(model, e.source, c.form(e.source), s_from),
                    _form_residue(model, e.target, c.form(e.target), s_to)))
    return out


def check_cocycle(model: LogCurveModel, c: Hypercocycle) -> None:
    for e, (a, b) in zip(model.edges, edge_residues(model, c)):
        if a + b != 0:
            raise CocycleError(e.id, a, b)


def coboundary(model: LogCurveModel, functions: Mapping[str, RatFunc],
               units: Optional[Units] = None) -> Hypercocycle:
    """(df_v, f_source|_e - f_target|_e) for functions regular on each U_v."""
    forms = {}
    for vid, f in functions.items():
        if model.component(vid).is_virtual:
            raise ValueError("component %r is virtual; it carries no concrete functions" % vid)
        forms[vid] = RatForm.exact(f)
    scalars = {}
    for i, e in enumerate(model.edges):
        val = Rational(0)
        f = functions.get(e.source)
        if f is not None:
            val += eval_eps(f, side_uniformizer(model, Side(i, True, e.coord_from), units))
        f = functions.get(e.target)
        if f is not None:
            val -= eval_eps(f, side_uniformizer(model, Side(i, False, e.coord_to), units))
        scalars[e.id] = val
    return Hypercocycle(forms, scalars)


def normalize_cocycle(model: LogCurveModel, basis: CohomBasis, c: Hypercocycle,
                      units: Optional[Units] = None) -> list[Rational]:
    """Coordinates of [c] in basis."""
    check_cocycle(model, c)
    classes: list[Rational] = []
    primitives = {}
    for comp in model.components:
        form = c.form(comp.id)
        dim = h1dr_dim(model, comp.id)
        if form is None:
            classes.extend([Rational(0)] * dim)
        elif isinstance(form, FormClass):
            if len(form.coords) != dim:
                raise ValueError("class on %r needs %d coordinates, got %d" % (comp.id, dim, len(form.coords)))
            classes.extend(form.coords)
        else:
            cls, prim = reduce_form(model, comp.id, form)
            classes.extend(cls.coords)
            if not prim.is_zero():
                primitives[comp.id] = prim
    shift = coboundary(model, primitives, units) if primitives else None
    a = [c.scalar(e.id) - (shift.scalar(e.id) if shift else 0) for e in model.edges]
    y = linalg.solve_in_span(classes, [list(v) for v in basis.kerbeta_reps])
    if y is None:
        raise AssertionError("form part of a cocycle lies outside Ker beta")
    return basis.reduce_edge_vector(a) + y



# hypercocycle JSON: {"forms": {"v": "<dz-coefficient>" | [rationals]}, "edge_scalars": {"e": "2/3"}}

def hypercocycle_from_dict(model: LogCurveModel, data: Mapping) -> Hypercocycle:
    """Concrete forms are dz-coefficient expressions, virtual ones coordinate lists."""
    if not isinstance(data, Mapping):
        raise ModelError("hypercocycle must be a JSON object")
    extra = set(data) - {"forms", "edge_scalars"}
    if extra:
        raise ModelError("hypercocycle: unknown keys %s" % sorted(extra))
    forms: dict[str, FormData] = {}
    for vid, val in (data.get("forms") or {}).items():
        comp = model.component(vid)
        if comp.is_virtual:
            if not isinstance(val, list):
                raise ModelError("forms[%r]: virtual component needs a list of rational strings" % vid)
            coords = tuple(_rational_field(x, "forms[%r]" % vid) for x in val)
            dim = h1dr_dim(model, vid)
            if len(coords) != dim:
                raise ModelError("forms[%r]: expected %d coordinates, got %d" % (vid, dim, len(coords)))
            forms[vid] = FormClass(vid, coords)
        else:
            if not isinstance(val, str):
                raise ModelError("forms[%r]: expected an expression string" % vid)
            forms[vid] = RatForm(parse_ratfunc(val))
    scalars = {}
    for eid, val in (data.get("edge_scalars") or {}).items():
        model.edge_index(eid)
        scalars[eid] = _rational_field(val, "edge_scalars[%r]" % eid)
    return Hypercocycle(forms, scalars)


def _rational_field(value, where: str) -> Rational:
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise ModelError("%s: rationals must be given as strings" % where)
    text = str(value).strip()
    if "." in text or "e" in text.lower():
        raise ModelError("%s: decimal value %r; use a fraction" % (where, value))
    try:
        return as_fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ModelError("%s: malformed rational %r" % (where, value)) from None


def hypercocycle_to_dict(model: LogCurveModel, c: Hypercocycle) -> dict:
    forms = {}
    for comp in model.components:
        f = c.form(comp.id)
        if f is None:
            continue
        if isinstance(f, FormClass):
            forms[comp.id] = [fstr(x) for x in f.coords]
        else:
            forms[comp.id] = str(f.coeff)
    scalars = {e.id: fstr(c.scalar(e.id)) for e in model.edges if c.scalar(e.id) != 0}
    return {"forms": forms, "edge_scalars": scalars}


def random_form(model: LogCurveModel, vid: str, rng: random.Random) -> RatForm:
    """Random form with poles at the nodes of vid, at a spare point and at infinity.

    Nothing forces the residues to cancel, so summing them is a real test.
    """
    ps = model.node_coords(vid)
    spare = max(ps, default=Rational(0)) + rng.randint(1, 3)
    g = RatFunc(Poly([rng.randint(-3, 3) for _ in range(rng.randint(0, 3))]))
    for p in list(ps) + [spare]:
        for j in range(1, rng.randint(1, 3) + 1):
            c = Rational(rng.randint(-5, 5), rng.randint(1, 4))
            if c:
                g = g + RatFunc.pole(p, j) * c
    if len(ps) >= 2:
        # a product term whose residues are not visible term by term
        g = g + RatFunc(Rational(rng.randint(1, 5)), Poly.linear(ps[0]) * Poly.linear(ps[1]) ** 2)
    return RatForm(g)


def residue_theorem_check(model: LogCurveModel, rng: random.Random, per_component: int = 5) -> dict[str, bool]:
    """Sum of all residues (infinity included) vanishes, per concrete component."""
    out = {}
    for comp in model.components:
        if comp.is_virtual:
            continue
        ok = True
        for _ in range(per_component):
            res = residues_all(random_form(model, comp.id, rng))
            if sum(res.values(), Rational(0)) != 0:
                ok = False
        out[comp.id] = ok
    return out


# independent check: brute-force rank-nullity on a truncated complex

@dataclass(frozen=True)
class OracleResult:
    D: int
    h0: int
    h1: int
    h2: int
    dims: tuple[int, int, int]


def _principal_coords(g: RatFunc, ps: Sequence[Rational], depth: int) -> list[Rational]:
    """Coefficients of (z-p)^-1 .. (z-p)^-depth of g at each node."""
    out = []
    for p in ps:
        pre = laurent_expand(g, Uniformizer.standard(p), -1)
        out.extend(pre.coeff(-j) for j in range(1, depth + 1))
    return out


def h1_truncated_oracle(model: LogCurveModel, D: int = 3) -> OracleResult:
    """Cohomology of Tot(B) with functions cut to pole order <= D at each node.

    Forms are cut to pole order <= D + 1 and must be regular at infinity.
    Every matrix entry comes from generic Laurent expansion, evaluation and
    residue routines; nothing is shared with the partial-fraction reduction.
    """
    if D < 1:
        raise ValueError("truncation order must be >= 1")
    if not model.is_concrete:
        raise ValueError("truncation oracle needs all components of genus 0")
    funcs: list[tuple[int, RatFunc]] = []
    forms: list[tuple[int, RatFunc]] = []
    for vi, c in enumerate(model.components):
        ps = model.node_coords(c.id)
        funcs.append((vi, RatFunc(1)))
        for p in ps:
            for j in range(1, D + 1):
                funcs.append((vi, RatFunc.pole(p, j)))
        for p in ps:
            for j in range(2, D + 2):
                forms.append((vi, RatFunc.pole(p, j)))
        for p in ps[:-1]:
            forms.append((vi, RatFunc.pole(p) - RatFunc.pole(ps[-1])))
    nE = len(model.edges)
    n0, nf = len(funcs), len(forms)
    n1 = nf + nE

    # coordinates of forms via principal parts, per vertex
    form_cols_by_vertex: dict[int, list[int]] = {}
    for k, (vi, _) in enumerate(forms):
        form_cols_by_vertex.setdefault(vi, []).append(k)
    pp_basis = {}
    for vi, cols in form_cols_by_vertex.items():
        ps = model.node_coords(model.components[vi].id)
        pp_basis[vi] = [_principal_coords(forms[k][1], ps, D + 1) for k in cols]

    d0 = linalg.zeros(n1, n0)
    for col, (vi, f) in enumerate(funcs):
        vid = model.components[vi].id
        df = f.derivative()
        if not df.is_zero():
            ps = model.node_coords(vid)
            x = linalg.solve_in_span(_principal_coords(df, ps, D + 1), pp_basis[vi])
            if x is None:
                raise AssertionError("truncated complex not closed under d")
            for k, xk in zip(form_cols_by_vertex[vi], x):
                d0[k][col] = xk
        for i, e in enumerate(model.edges):
            if e.source == vid:
                d0[nf + i][col] += eval_eps(f, Uniformizer.standard(e.coord_from))
            if e.target == vid:
                d0[nf + i][col] -= eval_eps(f, Uniformizer.standard(e.coord_to))

    d1 = linalg.zeros(nE, n1)
    for col, (vi, g) in enumerate(forms):
        vid = model.components[vi].id
        w = RatForm(g)
        for i, e in enumerate(model.edges):
            if e.source == vid:
                d1[i][col] += residue_at(w, e.coord_from)
            if e.target == vid:
                d1[i][col] += residue_at(w, e.coord_to)

    if not linalg.is_zero(linalg.matmul(d1, d0, n1, n0)):
        raise AssertionError("truncated total complex: D1 o D0 != 0")
    r0 = linalg.rank(d0, n0)
    r1 = linalg.rank(d1, n1)
    return OracleResult(D, n0 - r0, n1 - r1 - r0, nE - r1, (n0, n1, nE))
