"""Dual graphs of nodal curves.

Vertices are the irreducible components, edges are the nodes.  Each edge
is oriented arbitrarily (``source`` -> ``target``) and carries the node's
coordinate on both components' standard charts.  Genus-0 components are
*concrete*: their function field is Q(z) and every node sits at a finite
rational coordinate.  Components of positive genus are *virtual*: they only
contribute linear-algebra data and their coordinates are placeholders.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from typing import Any, Iterable, Optional, Union

from . import linalg
from .exact_arith import INFINITY, PointOnLine, as_fraction, fstr
from .exact_arith.rational import Rational

Coord = Union[Rational, PointOnLine, None]


class ModelError(ValueError):
    """The curve description violates a structural hypothesis."""


@dataclass(frozen=True)
class Component:
    id: str
    genus: int = 0

    @property
    def is_virtual(self) -> bool:
        return self.genus > 0


@dataclass(frozen=True)
class Edge:
    id: str
    source: str
    target: str
    coord_from: Coord = None
    coord_to: Coord = None

    def flipped(self) -> "Edge":
        return replace(self, source=self.target, target=self.source,
                       coord_from=self.coord_to, coord_to=self.coord_from)


@dataclass(frozen=True)
class Side:
    """One end of an edge, seen from the component it lands on."""

    edge: int
    is_source: bool
    coord: Coord


@dataclass(frozen=True)
class LogCurveModel:
    components: tuple[Component, ...]
    edges: tuple[Edge, ...] = ()
    _index: dict = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        object.__setattr__(self, "edges", tuple(self.edges))
        object.__setattr__(self, "_index", {c.id: i for i, c in enumerate(self.components)})

    @property
    def vertex_ids(self) -> list[str]:
        return [c.id for c in self.components]

    @property
    def edge_ids(self) -> list[str]:
        return [e.id for e in self.edges]

    def vertex_index(self, vid: str) -> int:
        try:
            return self._index[vid]
        except KeyError:
            raise ModelError("unknown component %r" % vid) from None

    def component(self, vid: str) -> Component:
        return self.components[self.vertex_index(vid)]

    def edge_index(self, eid: str) -> int:
        for i, e in enumerate(self.edges):
            if e.id == eid:
                return i
        raise ModelError("unknown edge %r" % eid)

    def sides(self, vid: str) -> list[Side]:
        """Edge-sides landing on vid, in input edge order."""
        out = []
        for i, e in enumerate(self.edges):
            if e.source == vid:
                out.append(Side(i, True, e.coord_from))
            if e.target == vid:
                out.append(Side(i, False, e.coord_to))
        return out

    def node_coords(self, vid: str) -> list[Rational]:
        return [s.coord for s in self.sides(vid)]

    @property
    def is_concrete(self) -> bool:
        return not any(c.is_virtual for c in self.components)


def validate(model: LogCurveModel) -> None:
    seen = set()
    for c in model.components:
        if c.id in seen:
            raise ModelError("duplicate component id %r" % c.id)
        seen.add(c.id)
        if not isinstance(c.genus, int) or c.genus < 0:
            raise ModelError("component %r: genus must be a nonnegative integer" % c.id)
    eseen = set()
    for e in model.edges:
        if e.id in eseen:
            raise ModelError("duplicate edge id %r" % e.id)
        eseen.add(e.id)
        for end in (e.source, e.target):
            if end not in seen:
                raise ModelError("dangling edge endpoint: edge %r names unknown component %r" % (e.id, end))
        if e.source == e.target:
            raise ModelError("loop edge: edge %r joins %r to itself" % (e.id, e.source))
    for c in model.components:
        if c.is_virtual:
            continue
        coords = set()
        for s in model.sides(c.id):
            eid = model.edges[s.edge].id
            if s.coord is None:
                raise ModelError("edge %r: missing node coordinate on component %r" % (eid, c.id))
            if isinstance(s.coord, PointOnLine):
                if s.coord.is_infinity:
                    raise ModelError("edge %r: node at infinity on component %r" % (eid, c.id))
                raise ModelError("edge %r: malformed coordinate" % eid)
            if s.coord in coords:
                raise ModelError("duplicate node coordinate %s on component %r (edge %r)"
                                 % (fstr(s.coord), c.id, eid))
            coords.add(s.coord)


def connected_components(model: LogCurveModel) -> list[list[int]]:
    """Vertex index lists, ordered by first vertex."""
    parent = list(range(len(model.components)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for e in model.edges:
        a, b = find(model.vertex_index(e.source)), find(model.vertex_index(e.target))
        if a != b:
            parent[max(a, b)] = min(a, b)
    groups: dict[int, list[int]] = {}
    for i in range(len(model.components)):
        groups.setdefault(find(i), []).append(i)
    return list(groups.values())


def betti1(model: LogCurveModel) -> int:
    return len(model.edges) - len(model.components) + len(connected_components(model))


def incidence_alpha(model: LogCurveModel) -> linalg.Matrix:
    """|E| x |V| matrix of (a_v) -> (a_source - a_target)."""
    out = linalg.zeros(len(model.edges), len(model.components))
    for i, e in enumerate(model.edges):
        out[i][model.vertex_index(e.source)] += 1
        out[i][model.vertex_index(e.target)] -= 1
    return out


def image_alpha(model: LogCurveModel) -> tuple[linalg.Matrix, list[int]]:
    """RREF basis of Im(alpha) inside the edge space."""
    alpha = incidence_alpha(model)
    cols = [linalg.column(alpha, j) for j in range(len(model.components))]
    return linalg.row_space(cols, len(model.edges))


def flow_space(model: LogCurveModel) -> list[linalg.Vector]:
    """Edge vectors with zero net outflow at every vertex."""
    alpha = incidence_alpha(model)
    return linalg.nullspace(linalg.transpose(alpha, len(model.components)), len(model.edges))


def lemma_intersection_check(model: LogCurveModel) -> bool:
    """Im(alpha) meets the flow space trivially, on every connected component."""
    for verts in connected_components(model):
        sub = restrict(model, verts)
        n = len(sub.edges)
        if n == 0:
            continue
        im = image_alpha(sub)[0]
        flows = flow_space(sub)
        if len(im) + len(flows) != linalg.rank(im + flows, n):
            return False
    return True


def restrict(model: LogCurveModel, vertex_indices: Iterable[int]) -> LogCurveModel:
    keep = {model.components[i].id for i in vertex_indices}
    comps = [c for c in model.components if c.id in keep]
    edges = [e for e in model.edges if e.source in keep]
    return LogCurveModel(tuple(comps), tuple(edges))


def flip_orientation(model: LogCurveModel, eid: str) -> LogCurveModel:
    i = model.edge_index(eid)
    edges = list(model.edges)
    edges[i] = edges[i].flipped()
    return LogCurveModel(model.components, tuple(edges))


def disjoint_union(*models: LogCurveModel) -> LogCurveModel:
    comps, edges = [], []
    for m in models:
        comps.extend(m.components)
        edges.extend(m.edges)
    return LogCurveModel(tuple(comps), tuple(edges))


# JSON curve description

_COMPONENT_KEYS = {"id", "genus"}
_EDGE_KEYS = {"id", "from", "to", "coord_from", "coord_to"}
_TOP_KEYS = {"components", "edges", "cocycles"}


def _parse_coord(value: Any, where: str) -> Coord:
    if value is None:
        return None
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise ModelError("%s: coordinates must be rational strings" % where)
    text = str(value).strip().replace("−", "-")
    if text.lower() in ("inf", "infinity", "oo", "∞"):
        return INFINITY
    if "." in text or "e" in text.lower():
        raise ModelError("%s: decimal coordinate %r; use a fraction like \"-3/2\"" % (where, value))
    try:
        return as_fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ModelError("%s: malformed rational %r" % (where, value)) from None


def model_from_dict(data: dict) -> LogCurveModel:
    if not isinstance(data, dict):
        raise ModelError("curve description must be a JSON object")
    extra = set(data) - _TOP_KEYS
    if extra:
        raise ModelError("unknown keys %s" % sorted(extra))
    comps = []
    for k, c in enumerate(data.get("components", [])):
        if not isinstance(c, dict):
            raise ModelError("components[%d] must be an object" % k)
        extra = set(c) - _COMPONENT_KEYS
        if extra:
            raise ModelError("components[%d]: unknown keys %s" % (k, sorted(extra)))
        if "id" not in c:
            raise ModelError("components[%d]: missing id" % k)
        genus = c.get("genus", 0)
        if isinstance(genus, bool) or not isinstance(genus, int):
            raise ModelError("components[%d]: genus must be an integer" % k)
        comps.append(Component(str(c["id"]), genus))
    edges = []
    for k, e in enumerate(data.get("edges", [])):
        if not isinstance(e, dict):
            raise ModelError("edges[%d] must be an object" % k)
        extra = set(e) - _EDGE_KEYS
        if extra:
            raise ModelError("edges[%d]: unknown keys %s" % (k, sorted(extra)))
        for key in ("id", "from", "to"):
            if key not in e:
                raise ModelError("edges[%d]: missing %r" % (k, key))
        where = "edges[%d] (%s)" % (k, e["id"])
        edges.append(Edge(str(e["id"]), str(e["from"]), str(e["to"]),
                          _parse_coord(e.get("coord_from"), where),
                          _parse_coord(e.get("coord_to"), where)))
    model = LogCurveModel(tuple(comps), tuple(edges))
    validate(model)
    return model


def _coord_json(c: Coord) -> Optional[str]:
    if c is None:
        return None
    if isinstance(c, PointOnLine):
        return str(c)
    return fstr(c)


def model_to_dict(model: LogCurveModel) -> dict:
    comps = []
    for c in model.components:
        comps.append({"id": c.id, "genus": c.genus})
    edges = []
    for e in model.edges:
        d = {"id": e.id, "from": e.source, "to": e.target}
        if e.coord_from is not None:
            d["coord_from"] = _coord_json(e.coord_from)
        if e.coord_to is not None:
            d["coord_to"] = _coord_json(e.coord_to)
        edges.append(d)
    return {"components": comps, "edges": edges}


def load_model(text: str) -> LogCurveModel:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelError("invalid JSON: %s" % exc) from None
    return model_from_dict(data)
