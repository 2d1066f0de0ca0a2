"""Built-in dual-graph families.

Node coordinates are handed out per component in edge order: the first
edge-side landing on a component sits at 0, the next at 1, and so on.  The
random family instead draws distinct small integers per component.
"""

from __future__ import annotations

import random
import re
from typing import Sequence

from .dual_graph import Component, Edge, LogCurveModel, ModelError, validate
from .exact_arith.rational import Rational


def _assemble(vertices: Sequence[str], pairs: Sequence[tuple[str, str]],
              coords: dict | None = None, genus: dict | None = None) -> LogCurveModel:
    genus = genus or {}
    counters = {v: 0 for v in vertices}
    edges = []
    for k, (a, b) in enumerate(pairs):
        if coords is None:
            ca, cb = counters[a], counters[b]
            counters[a] += 1
            counters[b] += 1
        else:
            ca, cb = coords[a].pop(0), coords[b].pop(0)
        cf = None if genus.get(a, 0) else Rational(ca)
        ct = None if genus.get(b, 0) else Rational(cb)
        edges.append(Edge("e%d" % (k + 1), a, b, cf, ct))
    model = LogCurveModel(tuple(Component(v, genus.get(v, 0)) for v in vertices), tuple(edges))
    validate(model)
    return model


def chain(n: int) -> LogCurveModel:
    if n < 1:
        raise ModelError("chain needs at least one component")
    vs = ["v%d" % i for i in range(n)]
    return _assemble(vs, [(vs[i], vs[i + 1]) for i in range(n - 1)])


def cycle(n: int, genus: dict | None = None) -> LogCurveModel:
    if n < 2:
        raise ModelError("cycle needs at least two components (loops are not allowed)")
    vs = ["v%d" % i for i in range(n)]
    return _assemble(vs, [(vs[i], vs[(i + 1) % n]) for i in range(n)], genus=genus)


def banana(m: int) -> LogCurveModel:
    """Two components meeting in m nodes, all oriented v0 -> v1."""
    if m < 1:
        raise ModelError("banana needs at least one edge")
    return _assemble(["v0", "v1"], [("v0", "v1")] * m)


def theta() -> LogCurveModel:
    return banana(3)


def random_model(n_vertices: int, n_edges: int, seed: int = 0) -> LogCurveModel:
    """Connected loop-free multigraph: random spanning tree plus extra edges."""
    if n_vertices < 1:
        raise ModelError("random family needs at least one component")
    if n_edges < n_vertices - 1:
        raise ModelError("infeasible random parameters: E=%d < V-1=%d" % (n_edges, n_vertices - 1))
    if n_vertices == 1 and n_edges > 0:
        raise ModelError("infeasible random parameters: one component admits no loop-free edge")
    rng = random.Random(seed)
    vs = ["v%d" % i for i in range(n_vertices)]
    pairs = []
    for i in range(1, n_vertices):
        pairs.append((vs[i], vs[rng.randrange(i)]))
    while len(pairs) < n_edges:
        a, b = rng.sample(range(n_vertices), 2)
        pairs.append((vs[a], vs[b]))
    rng.shuffle(pairs)
    pairs = [(a, b) if rng.random() < 0.5 else (b, a) for a, b in pairs]
    degree = {v: 0 for v in vs}
    for a, b in pairs:
        degree[a] += 1
        degree[b] += 1
    coords = {}
    for v in vs:
        span = max(3, 2 * degree[v])
        coords[v] = rng.sample(range(-span, span + 1), degree[v])
    return _assemble(vs, pairs, coords=coords)


_FAMILY = re.compile(r"^(chain|cycle|banana|theta|random)(?:[_ ]?(\d+))?(?:\((.*)\))?$")


def generate(family: str, *params: int, seed: int = 0) -> LogCurveModel:
    """Build a family member from a name like ``cycle_5`` or ``random(4,6,seed=7)``."""
    m = _FAMILY.match(family.strip().replace("-", "_"))
    if not m:
        raise ModelError("unknown family %r" % family)
    name, size, args = m.groups()
    nums = list(params)
    if size is not None:
        nums.insert(0, int(size))
    if args:
        for part in args.split(","):
            part = part.strip()
            if part.startswith("seed="):
                seed = int(part[5:])
            elif part:
                nums.append(int(part))
    if name == "theta":
        if nums:
            raise ModelError("theta takes no parameters")
        return theta()
    if name == "random":
        if len(nums) == 3:
            seed = nums.pop()
        if len(nums) != 2:
            raise ModelError("random family needs V and E")
        return random_model(nums[0], nums[1], seed)
    if len(nums) != 1:
        raise ModelError("%s family needs exactly one size parameter" % name)
    return {"chain": chain, "cycle": cycle, "banana": banana}[name](nums[0])
