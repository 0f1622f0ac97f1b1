"""Finite simple digraphs and the editing operations everything else builds on.

A :class:`Digraph` is immutable after construction: vertices are opaque
integer ids, edges are (tail, head) pairs, and an optional side map attaches a
human-readable string label to a vertex (generators use this to expose grid
coordinates).  Loops are rejected, parallel edges are collapsed, and every
operation returns a fresh graph.

The canonical JSON form used across the package and the CLI is

    {"vertices": [0, 1, ...], "edges": [[u, v], ...], "labels": {"0": "x_1_1"}}

with vertices ascending and edges in lexicographic order, so serialisation is
bit-stable.
"""

from __future__ import annotations

import json
from functools import cached_property
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple

Edge = Tuple[int, int]


class Digraph:
    """Immutable finite simple digraph over integer vertex ids."""

    def __init__(
        self,
        vertices: Iterable[int] = (),
        edges: Iterable[Edge] = (),
        labels: Optional[Mapping[int, str]] = None,
    ):
        vs = tuple(sorted({int(v) for v in vertices}))
        vset = set(vs)
        eset = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"loop edge ({u},{v}) not allowed")
            if u not in vset or v not in vset:
                raise ValueError(f"edge ({u},{v}) has an endpoint outside the vertex set")
            eset.add((u, v))
        self.vertices: Tuple[int, ...] = vs
        self.edges: Tuple[Edge, ...] = tuple(sorted(eset))
        lab = dict(labels or {})
        for v in lab:
            if v not in vset:
                raise ValueError(f"label attached to unknown vertex {v}")
        self.labels: Dict[int, str] = lab

    # -- basic accessors ---------------------------------------------------

    @cached_property
    def vertex_set(self) -> frozenset:
        return frozenset(self.vertices)

    @cached_property
    def edge_set(self) -> frozenset:
        return frozenset(self.edges)

    @cached_property
    def _succ(self) -> Dict[int, Tuple[int, ...]]:
        d: Dict[int, list] = {v: [] for v in self.vertices}
        for u, v in self.edges:
            d[u].append(v)
        return {v: tuple(sorted(ws)) for v, ws in d.items()}

    @cached_property
    def _pred(self) -> Dict[int, Tuple[int, ...]]:
        d: Dict[int, list] = {v: [] for v in self.vertices}
        for u, v in self.edges:
            d[v].append(u)
        return {v: tuple(sorted(ws)) for v, ws in d.items()}

    def successors(self, v: int) -> Tuple[int, ...]:
        return self._succ[v]

    def predecessors(self, v: int) -> Tuple[int, ...]:
        return self._pred[v]

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self.edge_set

    def num_vertices(self) -> int:
        return len(self.vertices)

    def num_edges(self) -> int:
        return len(self.edges)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Digraph):
            return NotImplemented
        return (
            self.vertices == other.vertices
            and self.edges == other.edges
            and self.labels == other.labels
        )

    def __hash__(self) -> int:
        return hash((self.vertices, self.edges))

    def __repr__(self) -> str:
        return f"Digraph(|V|={len(self.vertices)}, |E|={len(self.edges)})"


class BlockGraph:
    """Condensation of a digraph: strong components plus arc multiplicities.

    ``component_vertex_sets`` lists the components in a topological order of
    the condensation (ties broken by smallest contained vertex id) and
    ``arcs`` maps a pair of component indices to the number of original edges
    between them.  Multiplicities are kept so "no parallel component arcs"
    is testable without a multigraph type.
    """

    def __init__(self, component_vertex_sets: Sequence[frozenset], arcs: Mapping[Tuple[int, int], int]):
        self.component_vertex_sets: Tuple[frozenset, ...] = tuple(component_vertex_sets)
        self.arcs: Dict[Tuple[int, int], int] = dict(arcs)
        self._where: Dict[int, int] = {}
        for i, comp in enumerate(self.component_vertex_sets):
            for v in comp:
                self._where[v] = i

    def component_of(self, v: int) -> int:
        return self._where[v]

    def num_components(self) -> int:
        return len(self.component_vertex_sets)

    def successors_of(self, i: int) -> Tuple[int, ...]:
        return tuple(sorted(j for (a, j) in self.arcs if a == i))

    def predecessors_of(self, i: int) -> Tuple[int, ...]:
        return tuple(sorted(a for (a, j) in self.arcs if j == i))

    def is_simple_directed_path(self) -> bool:
        """True if the condensation is a directed path without parallel arcs."""
        n = self.num_components()
        if n == 1:
            return True
        if any(mult > 1 for mult in self.arcs.values()):
            return False
        expected = {(i, i + 1) for i in range(n - 1)}
        # components are already stored in topological order, but a path may
        # be numbered differently when incomparable ties exist; check shape.
        if set(self.arcs) == expected:
            return True
        outs: Dict[int, int] = {}
        ins: Dict[int, int] = {}
        for (a, b) in self.arcs:
            outs[a] = outs.get(a, 0) + 1
            ins[b] = ins.get(b, 0) + 1
        if len(self.arcs) != n - 1:
            return False
        return all(outs.get(i, 0) <= 1 and ins.get(i, 0) <= 1 for i in range(n))


# -- structural operations -------------------------------------------------


def strong_components(G: Digraph) -> BlockGraph:
    """Strong components of G in topological order of the condensation.

    Deterministic: among components with no remaining predecessors the one
    containing the smallest vertex id comes first.
    """
    index: Dict[int, int] = {}
    low: Dict[int, int] = {}
    on_stack: Dict[int, bool] = {}
    stack: list = []
    comps: list = []
    counter = [0]

    for root in G.vertices:
        if root in index:
            continue
        # iterative Tarjan
        work = [(root, iter(G.successors(root)))]
        index[root] = low[root] = counter[0]
        counter[0] += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter[0]
                    counter[0] += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, iter(G.successors(w))))
                    advanced = True
                    break
                elif on_stack.get(w, False):
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                pv = work[-1][0]
                low[pv] = min(low[pv], low[v])
            if low[v] == index[v]:
                comp = set()
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.add(w)
                    if w == v:
                        break
                comps.append(frozenset(comp))

    where = {}
    for i, comp in enumerate(comps):
        for v in comp:
            where[v] = i
    mult: Dict[Tuple[int, int], int] = {}
    for u, v in G.edges:
        a, b = where[u], where[v]
        if a != b:
            mult[(a, b)] = mult.get((a, b), 0) + 1

    # Kahn toposort with min-vertex tie break.
    indeg = {i: 0 for i in range(len(comps))}
    for (a, b) in mult:
        indeg[b] += 1
    ready = sorted((min(comps[i]), i) for i in indeg if indeg[i] == 0)
    order: list = []
    import heapq

    heapq.heapify(ready)
    while ready:
        _, i = heapq.heappop(ready)
        order.append(i)
        for (a, b) in mult:
            if a == i:
                indeg[b] -= 1
                if indeg[b] == 0:
                    heapq.heappush(ready, (min(comps[b]), b))
    renum = {old: new for new, old in enumerate(order)}
    new_comps = [comps[i] for i in order]
    new_arcs = {(renum[a], renum[b]): m for (a, b), m in mult.items()}
    return BlockGraph(new_comps, new_arcs)


def is_vertex_cyclic(G: Digraph) -> bool:
    """True iff every vertex lies on a directed cycle (no trivial strong
    component).  The empty graph counts as vertex cyclic by convention."""
    return all(len(c) > 1 for c in strong_components(G).component_vertex_sets)


def is_weakly_connected(G: Digraph) -> bool:
    """Connectivity of the underlying undirected graph; empty graph -> True."""
    if not G.vertices:
        return True
    seen = {G.vertices[0]}
    frontier = [G.vertices[0]]
    while frontier:
        v = frontier.pop()
        for w in G.successors(v) + G.predecessors(v):
            if w not in seen:
                seen.add(w)
                frontier.append(w)
    return len(seen) == len(G.vertices)


def degrees(G: Digraph, v: int) -> Tuple[int, int, int]:
    """(in_degree, out_degree, total) of a vertex."""
    if v not in G.vertex_set:
        raise ValueError(f"unknown vertex {v}")
    din = len(G.predecessors(v))
    dout = len(G.successors(v))
    return din, dout, din + dout


def max_total_degree(G: Digraph) -> int:
    return max((degrees(G, v)[2] for v in G.vertices), default=0)


def subdivide_edge(G: Digraph, e: Edge, n: int) -> Digraph:
    """Replace e=(u,v) by u -> s_1 -> ... -> s_n -> v with n fresh vertices.

    n = 0 returns the graph unchanged.  Fresh ids continue from max(V)+1.
    """
    if n < 0:
        raise ValueError("subdivision count must be >= 0")
    e = (int(e[0]), int(e[1]))
    if e not in G.edge_set:
        raise ValueError(f"unknown edge {e}")
    if n == 0:
        return G
    u, v = e
    base = max(G.vertices) + 1
    fresh = [base + i for i in range(n)]
    edges = [x for x in G.edges if x != e]
    chain = [u] + fresh + [v]
    edges.extend(zip(chain, chain[1:]))
    return Digraph(G.vertices + tuple(fresh), edges, G.labels)


def delete_vertices(G: Digraph, S: Iterable[int]) -> Digraph:
    """Induced subgraph on V(G) - S; labels of surviving vertices kept."""
    S = set(S)
    unknown = S - set(G.vertices)
    if unknown:
        raise ValueError(f"unknown vertices {sorted(unknown)}")
    keep = [v for v in G.vertices if v not in S]
    return induced_subgraph(G, keep)


def induced_subgraph(G: Digraph, S: Iterable[int]) -> Digraph:
    S = set(S)
    unknown = S - set(G.vertices)
    if unknown:
        raise ValueError(f"unknown vertices {sorted(unknown)}")
    edges = [(u, v) for (u, v) in G.edges if u in S and v in S]
    labels = {v: s for v, s in G.labels.items() if v in S}
    return Digraph(sorted(S), edges, labels)


def delete_edges(G: Digraph, dead: Iterable[Edge]) -> Digraph:
    dead = {(int(u), int(v)) for u, v in dead}
    unknown = dead - G.edge_set
    if unknown:
        raise ValueError(f"unknown edges {sorted(unknown)}")
    return Digraph(G.vertices, [e for e in G.edges if e not in dead], G.labels)


def is_butterfly_contractible(G: Digraph, e: Edge) -> Tuple[bool, str]:
    """Whether e=(u,v) may be contracted: e is the only out-edge of u or the
    only in-edge of v.  Returns (ok, reason) where reason names the failing
    side when not ok."""
    u, v = int(e[0]), int(e[1])
    if (u, v) not in G.edge_set:
        raise ValueError(f"unknown edge {(u, v)}")
    if len(G.successors(u)) == 1:
        return True, "only out-edge of tail"
    if len(G.predecessors(v)) == 1:
        return True, "only in-edge of head"
    return (
        False,
        f"tail {u} has {len(G.successors(u))} out-edges and head {v} has "
        f"{len(G.predecessors(v))} in-edges",
    )


def butterfly_contract(G: Digraph, e: Edge) -> Digraph:
    """Contract a butterfly-contractible edge.

    u and v are replaced by a fresh vertex inheriting all neighbours of both;
    parallel edges collapse and a loop arising from a digon is dropped so the
    no-loops invariant is preserved.
    """
    u, v = int(e[0]), int(e[1])
    ok, reason = is_butterfly_contractible(G, (u, v))
    if not ok:
        raise ValueError(f"edge ({u},{v}) is not butterfly-contractible: {reason}")
    x = max(G.vertices) + 1
    edges = set()
    for a, b in G.edges:
        a2 = x if a in (u, v) else a
        b2 = x if b in (u, v) else b
        if a2 != b2:
            edges.add((a2, b2))
    vertices = [w for w in G.vertices if w not in (u, v)] + [x]
    labels = {w: s for w, s in G.labels.items() if w not in (u, v)}
    return Digraph(vertices, edges, labels)


# -- reachability helpers ----------------------------------------------------


def reachable_from(G: Digraph, sources: Iterable[int], forbidden: Iterable[int] = ()) -> frozenset:
    """Vertices reachable from any source in G minus the forbidden set
    (sources outside the forbidden set are included)."""
    forb = set(forbidden)
    seen = {s for s in sources if s not in forb}
    frontier = list(seen)
    while frontier:
        v = frontier.pop()
        for w in G.successors(v):
            if w not in seen and w not in forb:
                seen.add(w)
                frontier.append(w)
    return frozenset(seen)


def reaches(G: Digraph, sources: Iterable[int], targets: Iterable[int], forbidden: Iterable[int] = ()) -> bool:
    targets = set(targets)
    return bool(reachable_from(G, sources, forbidden) & targets)


# -- bit-level adjacency view ------------------------------------------------


class BitGraph:
    """Bitmask adjacency over 0..n-1 indices; the shared substrate of the
    exhaustive searches.  ``ids[i]`` maps an index back to the vertex id."""

    def __init__(self, G: Digraph):
        self.ids: Tuple[int, ...] = G.vertices
        self.index: Dict[int, int] = {v: i for i, v in enumerate(G.vertices)}
        n = len(self.ids)
        self.n = n
        self.out = [0] * n
        self.inn = [0] * n
        out_lists: list = [[] for _ in range(n)]
        in_lists: list = [[] for _ in range(n)]
        for u, v in G.edges:
            iu, iv = self.index[u], self.index[v]
            self.out[iu] |= 1 << iv
            self.inn[iv] |= 1 << iu
            out_lists[iu].append(iv)
            in_lists[iv].append(iu)
        self.out_lists = [tuple(sorted(l)) for l in out_lists]
        self.in_lists = [tuple(sorted(l)) for l in in_lists]
        self.full = (1 << n) - 1

    def mask_of(self, vertices: Iterable[int]) -> int:
        m = 0
        for v in vertices:
            m |= 1 << self.index[v]
        return m

    def ids_of(self, mask: int) -> Tuple[int, ...]:
        out = []
        i = 0
        while mask:
            if mask & 1:
                out.append(self.ids[i])
            mask >>= 1
            i += 1
        return tuple(out)

    def reach(self, start_mask: int, allowed: int) -> int:
        """Mask of vertices reachable from start_mask inside allowed
        (start vertices outside allowed are dropped)."""
        seen = start_mask & allowed
        frontier = seen
        while frontier:
            nxt = 0
            f = frontier
            while f:
                b = f & -f
                f ^= b
                nxt |= self.out[b.bit_length() - 1]
            frontier = nxt & allowed & ~seen
            seen |= frontier
        return seen

    def reach_back(self, start_mask: int, allowed: int) -> int:
        seen = start_mask & allowed
        frontier = seen
        while frontier:
            nxt = 0
            f = frontier
            while f:
                b = f & -f
                f ^= b
                nxt |= self.inn[b.bit_length() - 1]
            frontier = nxt & allowed & ~seen
            seen |= frontier
        return seen


def bits_iter(mask: int):
    """Iterate set bit positions of a mask in ascending order."""
    while mask:
        b = mask & -mask
        mask ^= b
        yield b.bit_length() - 1


# -- isomorphism --------------------------------------------------------------


def is_isomorphic(G: Digraph, H: Digraph) -> bool:
    """Exact digraph isomorphism via degree refinement plus backtracking.
    Labels are ignored; only structure counts."""
    if len(G.vertices) != len(H.vertices) or len(G.edges) != len(H.edges):
        return False
    if not G.vertices:
        return True

    def refine(X: Digraph) -> Dict[int, int]:
        color = {v: hash((len(X.predecessors(v)), len(X.successors(v)))) for v in X.vertices}
        for _ in range(len(X.vertices)):
            new = {}
            for v in X.vertices:
                sig = (
                    color[v],
                    tuple(sorted(color[w] for w in X.successors(v))),
                    tuple(sorted(color[w] for w in X.predecessors(v))),
                )
                new[v] = hash(sig)
            if new == color:
                break
            color = new
        return color

    cg, ch = refine(G), refine(H)
    if sorted(cg.values()) != sorted(ch.values()):
        return False

    g_order = sorted(G.vertices, key=lambda v: (cg[v], v))
    candidates = {v: sorted(w for w in H.vertices if ch[w] == cg[v]) for v in G.vertices}

    mapping: Dict[int, int] = {}
    used = set()

    def bt(i: int) -> bool:
        if i == len(g_order):
            return True
        v = g_order[i]
        for w in candidates[v]:
            if w in used:
                continue
            ok = True
            for u in mapping:
                if G.has_edge(u, v) != H.has_edge(mapping[u], w):
                    ok = False
                    break
                if G.has_edge(v, u) != H.has_edge(w, mapping[u]):
                    ok = False
                    break
            if ok:
                mapping[v] = w
                used.add(w)
                if bt(i + 1):
                    return True
                del mapping[v]
                used.discard(w)
        return False

    return bt(0)


# -- serialization ------------------------------------------------------------


def to_json_dict(G: Digraph) -> dict:
    d: dict = {
        "vertices": list(G.vertices),
        "edges": [[u, v] for u, v in G.edges],
    }
    if G.labels:
        d["labels"] = {str(v): G.labels[v] for v in sorted(G.labels)}
    return d


def to_json(G: Digraph) -> str:
    return json.dumps(to_json_dict(G), separators=(",", ":"))


def from_json_dict(d: Mapping) -> Digraph:
    labels = {int(k): v for k, v in d.get("labels", {}).items()}
    return Digraph(d["vertices"], [tuple(e) for e in d["edges"]], labels)


def from_json(s: str) -> Digraph:
    return from_json_dict(json.loads(s))


def to_dot(G: Digraph) -> str:
    """DOT export, one line per edge, stable ordering."""
    lines = ["digraph G {"]
    for v in G.vertices:
        if v in G.labels:
            lines.append(f'  {v} [label="{G.labels[v]}"];')
        elif not G.successors(v) and not G.predecessors(v):
            lines.append(f"  {v};")
    for u, v in G.edges:
        lines.append(f"  {u} -> {v};")
    lines.append("}")
    return "\n".join(lines)


# -- small constructors used throughout the tests and the CLI ----------------


def cycle_graph(length: int, start: int = 0) -> Digraph:
    """Directed cycle v_start -> v_start+1 -> ... -> v_start."""
    if length < 2:
        raise ValueError("a simple digraph cycle needs length >= 2")
    vs = list(range(start, start + length))
    es = [(vs[i], vs[(i + 1) % length]) for i in range(length)]
    return Digraph(vs, es)


def path_graph(length: int, start: int = 0) -> Digraph:
    """Directed path with `length` edges."""
    vs = list(range(start, start + length + 1))
    return Digraph(vs, list(zip(vs, vs[1:])))
