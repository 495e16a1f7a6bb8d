"""Multigraphs with stable edge labels, minors and spanning trees."""

from __future__ import annotations

import json
import random
from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path


class GraphError(ValueError):
    pass


class DisconnectedGraphError(GraphError):
    def __init__(self, msg="disconnected"):
        super().__init__(msg)


@dataclass(frozen=True)
class Multigraph:
    """Undirected multigraph; loops and parallel edges allowed.

    ``labels[i]`` is the stable id of ``edges[i]`` and doubles as the
    variable index of that edge in graph polynomials.
    """

    vertex_count: int
    edges: tuple[tuple[int, int], ...]
    labels: tuple[int, ...] = field(default=None)

    def __post_init__(self):
        edges = tuple((int(a), int(b)) for a, b in self.edges)
        object.__setattr__(self, "edges", edges)
        if self.labels is None:
            object.__setattr__(self, "labels", tuple(range(1, len(edges) + 1)))
        else:
            object.__setattr__(self, "labels", tuple(int(x) for x in self.labels))
        if len(self.labels) != len(edges):
            raise GraphError("one label per edge required")
        if len(set(self.labels)) != len(self.labels):
            raise GraphError("edge labels must be unique")
        for a, b in edges:
            if not (0 <= a < self.vertex_count and 0 <= b < self.vertex_count):
                raise GraphError(f"edge ({a}, {b}) has an endpoint outside 0..{self.vertex_count - 1}")

    @property
    def n(self) -> int:
        return len(self.edges)

    @cached_property
    def edge_map(self) -> dict[int, tuple[int, int]]:
        return dict(zip(self.labels, self.edges))

    def endpoints(self, label: int) -> tuple[int, int]:
        try:
            return self.edge_map[label]
        except KeyError:
            raise GraphError(f"unknown edge id {label}") from None

    def incident(self, v: int) -> list[int]:
        return [lab for lab, (a, b) in zip(self.labels, self.edges) if a == v or b == v]

    def degree(self, v: int) -> int:
        return sum((a == v) + (b == v) for a, b in self.edges)

    def is_loop(self, label: int) -> bool:
        a, b = self.endpoints(label)
        return a == b

    def relabeled(self, mapping: dict[int, int]) -> Multigraph:
        return Multigraph(self.vertex_count, self.edges, tuple(mapping[x] for x in self.labels))

    def __str__(self):
        body = ", ".join(f"{lab}:{a}-{b}" for lab, (a, b) in zip(self.labels, self.edges))
        return f"Multigraph(v={self.vertex_count}; {body})"


@dataclass(frozen=True)
class MinorSpec:
    deleted: frozenset = frozenset()
    contracted: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "deleted", frozenset(self.deleted))
        object.__setattr__(self, "contracted", frozenset(self.contracted))
        if self.deleted & self.contracted:
            raise GraphError("deleted and contracted edge sets must be disjoint")


def _components(vertex_count: int, edges) -> list[int]:
    parent = list(range(vertex_count))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    return [find(v) for v in range(vertex_count)]


def component_count(g: Multigraph) -> int:
    return len(set(_components(g.vertex_count, g.edges)))


def is_connected(g: Multigraph) -> bool:
    return g.vertex_count <= 1 or component_count(g) == 1


def cycle_rank(g: Multigraph) -> int:
    """Number of independent cycles h1 = n - v + #components."""
    return g.n - g.vertex_count + component_count(g)


def delete_edges(g: Multigraph, labels) -> Multigraph:
    labels = set(labels)
    for lab in labels:
        g.endpoints(lab)
    keep = [(e, lab) for e, lab in zip(g.edges, g.labels) if lab not in labels]
    return Multigraph(g.vertex_count, tuple(e for e, _ in keep), tuple(lab for _, lab in keep))


def minor(g: Multigraph, spec: MinorSpec | None = None, *, deleted=(), contracted=()) -> Multigraph:
    """Delete and contract edges; surviving edges keep their labels.

    Contraction identifies endpoints and keeps the resulting parallel edges.
    Contracting an edge that is (or has become) a loop raises GraphError.
    """
    if spec is None:
        spec = MinorSpec(frozenset(deleted), frozenset(contracted))
    for lab in spec.deleted | spec.contracted:
        g.endpoints(lab)
    parent = list(range(g.vertex_count))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for lab in sorted(spec.contracted):
        a, b = g.endpoints(lab)
        ra, rb = find(a), find(b)
        if ra == rb:
            raise GraphError(f"cannot contract edge {lab}: it is a loop")
        parent[max(ra, rb)] = min(ra, rb)
    roots = sorted({find(v) for v in range(g.vertex_count)})
    index = {r: i for i, r in enumerate(roots)}
    edges, labels = [], []
    for (a, b), lab in zip(g.edges, g.labels):
        if lab in spec.deleted or lab in spec.contracted:
            continue
        edges.append((index[find(a)], index[find(b)]))
        labels.append(lab)
    return Multigraph(len(roots), tuple(edges), tuple(labels))


def drop_isolated_vertices(g: Multigraph) -> Multigraph:
    used = sorted({v for e in g.edges for v in e})
    if len(used) == g.vertex_count:
        return g
    if not used:
        return Multigraph(1, (), ())
    index = {v: i for i, v in enumerate(used)}
    return Multigraph(len(used), tuple((index[a], index[b]) for a, b in g.edges), g.labels)


def is_bridge(g: Multigraph, label: int) -> bool:
    a, b = g.endpoints(label)
    if a == b:
        return False
    rest = [e for e, lab in zip(g.edges, g.labels) if lab != label]
    comp = _components(g.vertex_count, rest)
    return comp[a] != comp[b]


def spanning_trees(g: Multigraph) -> list[frozenset]:
    """All spanning trees as sets of edge labels (deletion/contraction)."""
    if not is_connected(g):
        raise DisconnectedGraphError()
    trees = _trees(g)
    return sorted(trees, key=lambda t: sorted(t))


def _trees(g: Multigraph) -> list[frozenset]:
    # loops never lie in a spanning tree
    edges = [(e, lab) for e, lab in zip(g.edges, g.labels) if e[0] != e[1]]
    if len(edges) != g.n:
        g = Multigraph(g.vertex_count, tuple(e for e, _ in edges), tuple(lab for _, lab in edges))
    if g.vertex_count == 1:
        return [frozenset()]
    if not g.edges:
        return []
    lab = g.labels[0]
    with_e = [t | {lab} for t in _trees(minor(g, contracted=(lab,)))]
    if is_bridge(g, lab):
        return with_e
    return _trees(delete_edges(g, (lab,))) + with_e


def _bareiss_det(m: list[list[int]]) -> int:
    m = [row[:] for row in m]
    n = len(m)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def matrix_tree_count(g: Multigraph) -> int:
    """Number of spanning trees from the reduced Laplacian determinant."""
    v = g.vertex_count
    lap = [[0] * v for _ in range(v)]
    for a, b in g.edges:
        if a == b:
            continue
        lap[a][a] += 1
        lap[b][b] += 1
        lap[a][b] -= 1
        lap[b][a] -= 1
    return _bareiss_det([row[1:] for row in lap[1:]])


@dataclass(frozen=True)
class StructuralProbe:
    is_simple: bool
    vertex_connectivity_ge_2: bool
    three_valent_vertices: list  # (v, (e1, e2, e3))
    triangles_at_3valent: list  # (v, (e1, e2, e3, e4)); 2, 3, 4 form a triangle


def is_simple(g: Multigraph) -> bool:
    seen = set()
    for a, b in g.edges:
        if a == b:
            return False
        key = (min(a, b), max(a, b))
        if key in seen:
            return False
        seen.add(key)
    return True


def is_two_connected(g: Multigraph) -> bool:
    """Vertex connectivity >= 2, by removing each vertex in turn."""
    if g.vertex_count < 3 or not is_connected(g):
        return False
    for v in range(g.vertex_count):
        rest = [(a, b) for a, b in g.edges if a != v and b != v]
        comp = _components(g.vertex_count, rest)
        if len({comp[u] for u in range(g.vertex_count) if u != v}) > 1:
            return False
    return True


def structural_probe(g: Multigraph) -> StructuralProbe:
    three = []
    triangles = []
    for v in range(g.vertex_count):
        inc = [lab for lab in g.incident(v) if not g.is_loop(lab)]
        if g.degree(v) != 3 or len(inc) != 3:
            continue
        inc = sorted(inc)
        three.append((v, tuple(inc)))
        other = {lab: (set(g.endpoints(lab)) - {v}).pop() for lab in inc}
        for i in range(3):
            for j in range(3):
                if i == j:
                    continue
                e2, e3 = inc[i], inc[j]
                if e2 > e3:
                    continue
                a, b = other[e2], other[e3]
                e1 = next(lab for lab in inc if lab not in (e2, e3))
                for lab, (x, y) in zip(g.labels, g.edges):
                    if {x, y} == {a, b} and a != b:
                        triangles.append((v, (e1, e2, e3, lab)))
    return StructuralProbe(is_simple(g), is_two_connected(g), three, triangles)


# -- named families -----------------------------------------------------------


def cycle_graph(k: int) -> Multigraph:
    return Multigraph(k, tuple((i, (i + 1) % k) for i in range(k)))


def complete_graph(k: int) -> Multigraph:
    return Multigraph(k, tuple((i, j) for i in range(k) for j in range(i + 1, k)))


def wheel_graph(spokes: int) -> Multigraph:
    """Hub 0 joined to a rim cycle 1..spokes."""
    edges = [(0, i) for i in range(1, spokes + 1)]
    edges += [(i, i % spokes + 1) for i in range(1, spokes + 1)]
    return Multigraph(spokes + 1, tuple(edges))


def bubble_graph() -> Multigraph:
    return Multigraph(2, ((0, 1), (0, 1)))


def theta_graph() -> Multigraph:
    return Multigraph(2, ((0, 1), (0, 1), (0, 1)))


def path_graph(k: int) -> Multigraph:
    return Multigraph(k + 1, tuple((i, i + 1) for i in range(k)))


def circulant_graph(k: int, steps=(1, 2)) -> Multigraph:
    edges = set()
    for i in range(k):
        for s in steps:
            j = (i + s) % k
            edges.add((min(i, j), max(i, j)))
    return Multigraph(k, tuple(sorted(edges)))


def delete_vertex(g: Multigraph, v: int) -> Multigraph:
    """Remove vertex v and its edges; remaining edges are relabelled 1..n."""
    keep = [(a, b) for a, b in g.edges if a != v and b != v]
    shift = lambda x: x - (x > v)  # noqa: E731
    return Multigraph(g.vertex_count - 1, tuple((shift(a), shift(b)) for a, b in keep))


def primitive_phi4(k: int, steps=(1, 2)) -> Multigraph:
    """A 4-regular circulant with one vertex removed (so 2 h1 = n)."""
    return delete_vertex(circulant_graph(k, steps), 0)


# -- file formats ---------------------------------------------------------------


def parse_graph_text(text: str) -> Multigraph:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines or not lines[0].startswith("v"):
        raise GraphError("graph text must start with 'v <vertex_count>'")
    try:
        v = int(lines[0].split()[1])
        edges = tuple(tuple(int(x) for x in ln.split()) for ln in lines[1:])
    except (IndexError, ValueError) as exc:
        raise GraphError(f"malformed graph text: {exc}") from None
    if any(len(e) != 2 for e in edges):
        raise GraphError("each edge line must hold two vertex ids")
    return Multigraph(v, edges)


def graph_to_text(g: Multigraph) -> str:
    return "\n".join([f"v {g.vertex_count}"] + [f"{a} {b}" for a, b in g.edges]) + "\n"


def graph_from_json(obj) -> Multigraph:
    if isinstance(obj, str):
        obj = json.loads(obj)
    try:
        return Multigraph(int(obj["vertices"]), tuple(tuple(e) for e in obj["edges"]))
    except (KeyError, TypeError) as exc:
        raise GraphError(f"malformed graph json: {exc}") from None


def graph_to_json(g: Multigraph) -> dict:
    return {"vertices": g.vertex_count, "edges": [list(e) for e in g.edges]}


def read_graph(path) -> Multigraph:
    text = Path(path).read_text()
    if text.lstrip().startswith("{"):
        return graph_from_json(text)
    return parse_graph_text(text)


# -- corpus ---------------------------------------------------------------------


def _nx(g: Multigraph):
    import networkx as nx

    h = nx.Graph()
    h.add_nodes_from(range(g.vertex_count))
    h.add_edges_from(g.edges)
    return h


class _IsoBucket:
    def __init__(self):
        self.buckets = defaultdict(list)

    def add(self, g: Multigraph) -> bool:
        import networkx as nx

        h = _nx(g)
        key = (g.vertex_count, g.n, tuple(sorted(d for _, d in h.degree())),
               nx.weisfeiler_lehman_graph_hash(h, iterations=3))
        for other in self.buckets[key]:
            if nx.is_isomorphic(h, other):
                return False
        self.buckets[key].append(h)
        return True


def _normal(vertex_count: int, edges) -> Multigraph:
    return Multigraph(vertex_count, tuple(sorted((min(a, b), max(a, b)) for a, b in edges)))


def connected_simple_graphs(max_edges: int) -> list[Multigraph]:
    """Every connected simple graph with 1..max_edges edges, up to isomorphism.

    Each connected graph arises from a smaller one by adding a chord or a
    pendant edge, so growing edge by edge is exhaustive.
    """
    layer = [Multigraph(2, ((0, 1),))]
    out = list(layer)
    for _ in range(max_edges - 1):
        seen = _IsoBucket()
        nxt = []
        for g in layer:
            present = {(min(a, b), max(a, b)) for a, b in g.edges}
            cands = [_normal(g.vertex_count, g.edges + ((a, b),))
                     for a in range(g.vertex_count) for b in range(a + 1, g.vertex_count)
                     if (a, b) not in present]
            cands += [_normal(g.vertex_count + 1, g.edges + ((a, g.vertex_count),))
                      for a in range(g.vertex_count)]
            for c in cands:
                if seen.add(c):
                    nxt.append(c)
        layer = nxt
        out.extend(layer)
    return out


def random_connected_simple_graph(rng: random.Random, n_edges: int, n_vertices: int) -> Multigraph:
    if not (n_vertices - 1 <= n_edges <= n_vertices * (n_vertices - 1) // 2):
        raise GraphError("edge count out of range for a simple connected graph")
    order = list(range(n_vertices))
    rng.shuffle(order)
    edges = set()
    for i in range(1, n_vertices):
        a, b = order[i], order[rng.randrange(i)]
        edges.add((min(a, b), max(a, b)))
    while len(edges) < n_edges:
        a, b = rng.sample(range(n_vertices), 2)
        edges.add((min(a, b), max(a, b)))
    return Multigraph(n_vertices, tuple(sorted(edges)))


def named_families() -> dict[str, Multigraph]:
    fam = {}
    for k in range(3, 9):
        fam[f"C{k}"] = cycle_graph(k)
    for k in range(3, 6):
        fam[f"K{k}"] = complete_graph(k)
    for k in range(3, 7):
        fam[f"W{k}"] = wheel_graph(k)
    for k in range(5, 9):
        fam[f"P_circ{k}"] = primitive_phi4(k)
    return fam


def corpus(size: int = 500, max_edges: int = 12, exhaustive_edges: int = 8, seed: int = 2009) -> list[Multigraph]:
    """Deterministic corpus: all connected simple graphs up to ``exhaustive_edges``
    edges, the named families, then seeded random graphs up to ``max_edges``."""
    rng = random.Random(seed)
    seen = _IsoBucket()
    out = []
    for g in list(named_families().values()) + connected_simple_graphs(exhaustive_edges):
        if g.n <= max_edges and seen.add(g) and len(out) < size:
            out.append(g)
    tries = 0
    while len(out) < size and tries < 100 * size:
        tries += 1
        m = rng.randint(exhaustive_edges + 1, max_edges)
        vmin = 2
        while vmin * (vmin - 1) // 2 < m:
            vmin += 1
        v = rng.randint(vmin, m + 1)
        g = random_connected_simple_graph(rng, m, v)
        if seen.add(g):
            out.append(g)
    return out
