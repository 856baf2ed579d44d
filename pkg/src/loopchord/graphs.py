"""Intersection graphs of chord diagrams and their realization.

The intersection graph has one vertex per chord and an edge whenever the two
chords cross.  Every intersection graph is a circle graph; the converse fails
first at 6 vertices, which the realization machinery here detects by
exhaustive grouping.  Isomorphism classes are identified by an exact
canonical certificate (equal keys iff isomorphic).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .diagrams import ChordDiagram, chords_intersect, enumerate_diagrams

#: Certificates are only supported for small graphs.
KEY_VERTEX_LIMIT = 12


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1."""

    n: int
    edges: frozenset[tuple[int, int]]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        norm = set()
        for u, v in edges:
            if u == v:
                raise ValueError("self-loop at vertex %d" % u)
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError("edge (%d, %d) out of range" % (u, v))
            norm.add((min(u, v), max(u, v)))
        return cls(n, frozenset(norm))

    @classmethod
    def from_text(cls, text: str) -> "Graph":
        """Parse the text format: first line vertex count, then '1-indexed u v' lines."""
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise ValueError("empty graph text")
        n = int(lines[0])
        edges = []
        for ln in lines[1:]:
            u, v = (int(tok) for tok in ln.split())
            edges.append((u - 1, v - 1))
        return cls.from_edges(n, edges)

    def to_text(self) -> str:
        lines = [str(self.n)]
        lines.extend("%d %d" % (u + 1, v + 1) for u, v in sorted(self.edges))
        return "\n".join(lines) + "\n"

    def adjacency(self) -> list[set[int]]:
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def components(self) -> list[list[int]]:
        adj = self.adjacency()
        seen: set[int] = set()
        comps = []
        for start in range(self.n):
            if start in seen:
                continue
            comp = [start]
            seen.add(start)
            stack = [start]
            while stack:
                v = stack.pop()
                for u in adj[v]:
                    if u not in seen:
                        seen.add(u)
                        comp.append(u)
                        stack.append(u)
            comps.append(sorted(comp))
        return comps

    def betti(self) -> int:
        return len(self.edges) - self.n + len(self.components())


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(k: int) -> Graph:
    if k < 3:
        raise ValueError("cycle length must be at least 3")
    return Graph.from_edges(k, [(i, (i + 1) % k) for i in range(k)])


def tadpole_graph(n: int, k: int) -> Graph:
    """Cycle of length k with a pendant path of n - k vertices hung on vertex 0."""
    if not 3 <= k <= n:
        raise ValueError("need 3 <= k <= n, got k=%d n=%d" % (k, n))
    edges = [(i, (i + 1) % k) for i in range(k)]
    prev = 0
    for v in range(k, n):
        edges.append((prev, v))
        prev = v
    return Graph.from_edges(n, edges)


def intersection_graph(d: ChordDiagram) -> Graph:
    """Vertex i corresponds to chord label i + 1 of the canonical word."""
    n = d.degree
    edges = [
        (c1 - 1, c2 - 1)
        for c1 in range(1, n + 1)
        for c2 in range(c1 + 1, n + 1)
        if chords_intersect(d, c1, c2)
    ]
    return Graph.from_edges(n, edges)


def _refine_colors(n: int, adj: list[set[int]]) -> list[int]:
    """Stable vertex colors under iterated neighbor-degree refinement."""
    colors = [len(adj[v]) for v in range(n)]
    while True:
        sigs = [(colors[v], tuple(sorted(colors[u] for u in adj[v]))) for v in range(n)]
        order = {sig: i for i, sig in enumerate(sorted(set(sigs)))}
        new = [order[s] for s in sigs]
        if new == colors:
            return colors
        colors = new


def graph_class_key(g: Graph) -> bytes:
    """Canonical certificate: equal keys iff isomorphic (n <= 12).

    Colors vertices by iterated degree refinement, then minimizes the
    adjacency matrix bitstring over color-respecting orderings with
    branch-and-bound.
    """
    n = g.n
    if n > KEY_VERTEX_LIMIT:
        raise ValueError("certificates support at most %d vertices" % KEY_VERTEX_LIMIT)
    if n == 0:
        return b"\x00"
    adj = g.adjacency()
    colors = _refine_colors(n, adj)
    target = sorted(colors)
    by_color: dict[int, list[int]] = {}
    for v, c in enumerate(colors):
        by_color.setdefault(c, []).append(v)

    best: list[int] | None = None

    def rec(placed: list[int], bits: list[int]) -> None:
        nonlocal best
        i = len(placed)
        if i == n:
            if best is None or bits < best:
                best = list(bits)
            return
        used = set(placed)
        for v in by_color[target[i]]:
            if v in used:
                continue
            row = [1 if p in adj[v] else 0 for p in placed]
            newbits = bits + row
            # a strict prefix inequality settles every completion
            if best is not None and newbits > best[: len(newbits)]:
                continue
            rec(placed + [v], newbits)

    rec([], [])
    assert best is not None
    packed = bytearray([n])
    acc = 0
    nbits = 0
    for b in best:
        acc = (acc << 1) | b
        nbits += 1
        if nbits == 8:
            packed.append(acc)
            acc = 0
            nbits = 0
    if nbits:
        packed.append(acc << (8 - nbits))
    return bytes(packed)


@dataclass(frozen=True)
class CycleRank:
    betti: int
    kind: str  # forest | unicyclic | other


def cycle_rank_classify(g: Graph) -> CycleRank:
    b = g.betti()
    kind = "forest" if b == 0 else "unicyclic" if b == 1 else "other"
    return CycleRank(b, kind)


def _insert_straddling(word: list[int], parent: int, child: int) -> None:
    """Insert the child's two endpoints around the parent's first endpoint.

    The new chord crosses the parent and nothing else, regardless of the
    surrounding word.
    """
    i = word.index(parent)
    word[i : i + 1] = [child, parent, child]


def _attach_tree(word: list[int], adj: list[set[int]], root: int, skip: set[int]) -> None:
    """DFS-insert the subtree hanging below ``root``, avoiding ``skip``."""
    stack = [(root, sorted(adj[root] - skip))]
    seen = set(skip) | {root}
    while stack:
        parent, children = stack.pop()
        for c in children:
            if c in seen:
                continue
            seen.add(c)
            _insert_straddling(word, parent, c)
            stack.append((c, sorted(adj[c] - {parent})))


def _realize_component(g: Graph, comp: list[int]) -> list[int]:
    adj = g.adjacency()
    sub_edges = [(u, v) for u, v in g.edges if u in comp]
    b = len(sub_edges) - len(comp) + 1
    if b == 0:
        root = min(comp)
        word = [root, root]
        _attach_tree(word, adj, root, set())
        return word
    if b != 1:
        raise ValueError("component %s has cycle rank %d > 1" % (comp, b))
    # peel leaves to find the unique cycle
    deg = {v: len(adj[v] & set(comp)) for v in comp}
    leaves = [v for v in comp if deg[v] == 1]
    alive = set(comp)
    while leaves:
        v = leaves.pop()
        alive.discard(v)
        for u in adj[v]:
            if u in alive:
                deg[u] -= 1
                if deg[u] == 1:
                    leaves.append(u)
    start = min(alive)
    cyc = [start]
    prev = None
    while True:
        nxt = min(u for u in adj[cyc[-1]] if u in alive and u != prev)
        if nxt == start:
            break
        prev = cyc[-1]
        cyc.append(nxt)
    k = len(cyc)
    # chord i of the cycle occupies positions (2i, 2i + 3 mod 2k)
    word = [0] * (2 * k)
    for i, v in enumerate(cyc):
        word[2 * i] = v
        word[(2 * i + 3) % (2 * k)] = v
    cycset = set(cyc)
    for v in cyc:
        _attach_tree(word, adj, v, cycset - {v})
    return word


def realize_graph(g: Graph) -> ChordDiagram:
    """Build a chord diagram whose intersection graph is isomorphic to ``g``.

    Every component must be a tree or unicyclic.  The construction is
    self-checked against the certificate of the result's intersection graph
    and fails loudly on a mismatch.
    """
    words = []
    for comp in sorted(g.components(), key=min):
        words.append(_realize_component(g, comp))
    flat: list[int] = []
    base = 0
    for w in words:
        remap = {}
        for v in w:
            if v not in remap:
                remap[v] = base + len(remap) + 1
        flat.extend(remap[v] for v in w)
        base += len(remap)
    result = ChordDiagram.from_word(flat)
    if graph_class_key(intersection_graph(result)) != graph_class_key(g):
        raise RuntimeError("realization self-check failed for %s" % (g,))
    return result


def realizations_of(
    g: Graph, n: int, *, override_limits: bool = False
) -> tuple[ChordDiagram, ...]:
    """All canonical degree-n diagrams whose intersection graph is isomorphic
    to ``g``; an empty result means the graph is not realizable."""
    if n != g.n:
        raise ValueError("degree %d does not match vertex count %d" % (n, g.n))
    key = graph_class_key(g)
    return tuple(
        d
        for d in enumerate_diagrams(n, override_limits=override_limits)
        if graph_class_key(intersection_graph(d)) == key
    )


def class_table(n: int, *, override_limits: bool = False) -> dict:
    """Group the degree-n diagrams by intersection-graph class.

    Returns the JSON-ready structure
    ``{"degree": n, "classes": [{"key", "betti", "diagrams"}]}`` with classes
    sorted by certificate.
    """
    groups: dict[bytes, list[ChordDiagram]] = {}
    betti: dict[bytes, int] = {}
    for d in enumerate_diagrams(n, override_limits=override_limits):
        g = intersection_graph(d)
        key = graph_class_key(g)
        groups.setdefault(key, []).append(d)
        betti.setdefault(key, g.betti())
    return {
        "degree": n,
        "classes": [
            {
                "key": key.hex(),
                "betti": betti[key],
                "diagrams": [str(d) for d in sorted(members)],
            }
            for key, members in sorted(groups.items())
        ],
    }
