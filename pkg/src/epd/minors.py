"""Butterfly- and topological-minor witnesses, validators and searches.

A topological model maps pattern vertices injectively to host vertices and
pattern edges to directed host paths that are internally disjoint from
everything else.  A butterfly model is kept in tree-like normal form: every
pattern vertex maps to the union of an in-branching and an out-branching that
share only their root, heads of incoming edge images land in the in-branching
and tails of outgoing edge images in the out-branching.  Searching tree-like
models only is complete, so the finders below enumerate exactly that shape.

The searches are exhaustive backtracking over host structures; they are exact
up to a configurable host-size cutoff and the decomposition-guided finder in
:mod:`epd.dtd` takes over beyond it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Set, Tuple

from .digraph import (
    BitGraph,
    Digraph,
    Edge,
    induced_subgraph,
    strong_components,
    subdivide_edge,
)

DEFAULT_SEARCH_BOUND = 14


@dataclass
class TopologicalModel:
    """Witness for pattern <= host in the topological order."""

    vertex_map: Dict[int, int]
    edge_map: Dict[Edge, Tuple[int, ...]]

    def image_vertices(self) -> Set[int]:
        out = set(self.vertex_map.values())
        for path in self.edge_map.values():
            out.update(path)
        return out


@dataclass
class ButterflyModel:
    """Tree-like witness for pattern <= host in the butterfly order."""

    roots: Dict[int, int]
    in_edges: Dict[int, Tuple[Edge, ...]]
    out_edges: Dict[int, Tuple[Edge, ...]]
    edge_map: Dict[Edge, Edge]

    def vertex_image(self, v: int) -> Set[int]:
        out = {self.roots[v]}
        for a, b in self.in_edges.get(v, ()):
            out.update((a, b))
        for a, b in self.out_edges.get(v, ()):
            out.update((a, b))
        return out

    def image_vertices(self) -> Set[int]:
        out: Set[int] = set()
        for v in self.roots:
            out |= self.vertex_image(v)
        return out


# ---------------------------------------------------------------------------
# validators (never raise; they report violations)
# ---------------------------------------------------------------------------


def validate_topological_model(H: Digraph, G: Digraph, m: TopologicalModel) -> List[str]:
    """All violated model conditions, empty iff the model is valid."""
    bad: List[str] = []
    if set(m.vertex_map) != set(H.vertices):
        bad.append("vertex_map keys differ from the pattern vertex set")
        return bad
    if set(m.edge_map) != set(H.edges):
        bad.append("edge_map keys differ from the pattern edge set")
        return bad
    images = list(m.vertex_map.values())
    if len(set(images)) != len(images):
        bad.append("vertex_map is not injective")
    for v, g in m.vertex_map.items():
        if g not in G.vertex_set:
            bad.append(f"image of vertex {v} is not a host vertex")
    internals_seen: Dict[int, Edge] = {}
    image_set = set(images)
    for e in sorted(m.edge_map):
        path = m.edge_map[e]
        u, v = e
        if len(path) < 2:
            bad.append(f"edge {e}: path has fewer than two vertices")
            continue
        if path[0] != m.vertex_map[u] or path[-1] != m.vertex_map[v]:
            bad.append(f"edge {e}: path does not link the endpoint images")
        if len(set(path)) != len(path):
            bad.append(f"edge {e}: path repeats a vertex")
        for a, b in zip(path, path[1:]):
            if not G.has_edge(a, b):
                bad.append(f"edge {e}: ({a},{b}) is not a host edge")
                break
        for w in path[1:-1]:
            if w in image_set:
                bad.append(f"edge {e}: internal vertex {w} is a mapped vertex image")
            if w in internals_seen:
                bad.append(f"edges {internals_seen[w]} and {e}: paths intersect internally at {w}")
            internals_seen[w] = e
    # an endpoint image may not appear inside another path either; covered by
    # the internal checks above, but paths may also collide endpoint-vs-internal
    for e in sorted(m.edge_map):
        path = m.edge_map[e]
        for w in (path[0], path[-1]):
            if w in internals_seen and internals_seen[w] != e:
                bad.append(
                    f"edge {internals_seen[w]}: internal vertex {w} is an endpoint of edge {e}"
                )
    return bad


def _check_branching(edges: Sequence[Edge], root: int, inward: bool) -> Tuple[Optional[Set[int]], str]:
    """Vertex set of a valid branching, or (None, reason)."""
    vs = {root}
    for a, b in edges:
        vs.update((a, b))
    if not edges:
        return vs, ""
    if len(edges) != len(vs) - 1:
        return None, "edge count does not match a tree"
    # inward: every non-root vertex has exactly one out-edge, root has none,
    # and everything reaches the root.  outward is the mirror image.
    deg: Dict[int, int] = {v: 0 for v in vs}
    nxt: Dict[int, int] = {}
    for a, b in edges:
        key = a if inward else b
        deg[key] += 1
        nxt[key] = b if inward else a
    if deg[root] != 0:
        return None, "root is not the sink of the branching" if inward else "root is not the source of the branching"
    for v in vs:
        if v != root and deg[v] != 1:
            return None, f"vertex {v} does not have a unique branching edge"
    for v in vs:
        seen = {v}
        w = v
        while w != root:
            w = nxt[w]
            if w in seen:
                return None, "branching contains a cycle"
            seen.add(w)
    return vs, ""


def validate_butterfly_model(H: Digraph, G: Digraph, m: ButterflyModel) -> List[str]:
    """All violated tree-like model conditions, empty iff valid."""
    bad: List[str] = []
    if set(m.roots) != set(H.vertices):
        bad.append("roots keys differ from the pattern vertex set")
        return bad
    if set(m.edge_map) != set(H.edges):
        bad.append("edge_map keys differ from the pattern edge set")
        return bad
    in_sets: Dict[int, Set[int]] = {}
    out_sets: Dict[int, Set[int]] = {}
    for v in sorted(H.vertices):
        r = m.roots[v]
        if r not in G.vertex_set:
            bad.append(f"vertex {v}: root {r} is not a host vertex")
            continue
        for edges, inward, store, name in (
            (m.in_edges.get(v, ()), True, in_sets, "in-branching"),
            (m.out_edges.get(v, ()), False, out_sets, "out-branching"),
        ):
            for a, b in edges:
                if not G.has_edge(a, b):
                    bad.append(f"vertex {v}: {name} edge ({a},{b}) is not a host edge")
            vs, reason = _check_branching(edges, r, inward)
            if vs is None:
                bad.append(f"vertex {v}: {name} invalid: {reason}")
                store[v] = {r}
            else:
                store[v] = vs
        if v in in_sets and v in out_sets and in_sets[v] & out_sets[v] != {m.roots[v]}:
            bad.append(f"vertex {v}: branchings share more than the root")
    images = {v: in_sets.get(v, set()) | out_sets.get(v, set()) for v in H.vertices}
    verts = sorted(H.vertices)
    for i, u in enumerate(verts):
        for v in verts[i + 1 :]:
            if images[u] & images[v]:
                bad.append(f"vertex images of {u} and {v} intersect")
    for e in sorted(m.edge_map):
        u, v = e
        ge = m.edge_map[e]
        if ge not in G.edge_set:
            bad.append(f"edge {e}: image ({ge[0]},{ge[1]}) is not a host edge")
            continue
        if ge[0] not in out_sets.get(u, set()):
            bad.append(f"edge {e}: tail not in out-branching of {u}")
        if ge[1] not in in_sets.get(v, set()):
            bad.append(f"edge {e}: head not in in-branching of {v}")
    return bad


# ---------------------------------------------------------------------------
# search machinery
# ---------------------------------------------------------------------------


class _HostMeta:
    def __init__(self, G: Digraph):
        self.bits = BitGraph(G)
        blocks = strong_components(G)
        self.scc: Dict[int, int] = {}
        self.scc_size: Dict[int, int] = {}
        for ci, comp in enumerate(blocks.component_vertex_sets):
            for v in comp:
                idx = self.bits.index[v]
                self.scc[idx] = ci
                self.scc_size[idx] = len(comp)


def _pattern_vertex_order(H: Digraph) -> List[int]:
    """Connected exploration order, most-constrained (highest degree) first."""
    remaining = set(H.vertices)
    order: List[int] = []

    def deg(v: int) -> int:
        return len(H.successors(v)) + len(H.predecessors(v))

    while remaining:
        seed = max(sorted(remaining), key=deg)
        frontier = [seed]
        remaining.discard(seed)
        order.append(seed)
        while frontier:
            nxt = []
            for v in frontier:
                for w in sorted(set(H.successors(v)) | set(H.predecessors(v))):
                    if w in remaining:
                        remaining.discard(w)
                        order.append(w)
                        nxt.append(w)
            frontier = nxt
    return order


def iter_topological_models(H: Digraph, G: Digraph) -> Iterator[TopologicalModel]:
    """Exhaustive enumeration of topological models, deterministic order.

    Backtracking over injective vertex images interleaved with immediate
    routing of every edge whose endpoints are both placed.
    """
    if not H.vertices:
        yield TopologicalModel({}, {})
        return
    meta = _HostMeta(G)
    bits = meta.bits
    n = bits.n
    if n < len(H.vertices):
        return
    horder = _pattern_vertex_order(H)
    hpos = {v: i for i, v in enumerate(horder)}
    hcomp_blocks = strong_components(H)
    hcomp = {v: hcomp_blocks.component_of(v) for v in H.vertices}
    hcomp_size = {v: len(hcomp_blocks.component_vertex_sets[hcomp[v]]) for v in H.vertices}
    # edges grouped by the later endpoint in the placement order
    edges_at: Dict[int, List[Edge]] = {v: [] for v in H.vertices}
    for e in sorted(H.edges):
        u, v = e
        later = u if hpos[u] > hpos[v] else v
        edges_at[later].append(e)

    assign: Dict[int, int] = {}
    paths: Dict[Edge, Tuple[int, ...]] = {}
    used = 0

    hdeg_out = {v: len(H.successors(v)) for v in H.vertices}
    hdeg_in = {v: len(H.predecessors(v)) for v in H.vertices}

    def candidates(hv: int) -> List[int]:
        comp_mates = [assign[w] for w in assign if hcomp[w] == hcomp[hv]]
        out: List[int] = []
        for gi in range(n):
            if used >> gi & 1:
                continue
            if len(bits.out_lists[gi]) < hdeg_out[hv] or len(bits.in_lists[gi]) < hdeg_in[hv]:
                continue
            if hcomp_size[hv] > 1 and meta.scc_size[gi] < hcomp_size[hv]:
                continue
            if comp_mates and meta.scc[gi] != meta.scc[comp_mates[0]]:
                continue
            out.append(gi)
        return out

    def route(edge_list: List[Edge], ei: int, vi: int) -> Iterator[TopologicalModel]:
        nonlocal used
        if ei == len(edge_list):
            yield from place(vi + 1)
            return
        e = edge_list[ei]
        a, b = assign[e[0]], assign[e[1]]
        free = ~used & bits.full
        # quick prune: b must be reachable from a through free vertices
        if not (bits.reach(bits.out[a] & (free | 1 << b), free | 1 << b) | (bits.out[a] & 1 << b)) & (1 << b):
            return

        path: List[int] = [a]

        def extend(cur: int) -> Iterator[TopologicalModel]:
            nonlocal used
            for nxt in bits.out_lists[cur]:
                if nxt == b:
                    paths[e] = tuple(bits.ids[i] for i in path) + (bits.ids[b],)
                    yield from route(edge_list, ei + 1, vi)
                    del paths[e]
                elif not (used >> nxt & 1):
                    used |= 1 << nxt
                    path.append(nxt)
                    yield from extend(nxt)
                    path.pop()
                    used &= ~(1 << nxt)

        yield from extend(a)

    def place(vi: int) -> Iterator[TopologicalModel]:
        nonlocal used
        if vi == len(horder):
            yield TopologicalModel(
                {v: bits.ids[assign[v]] for v in assign}, dict(paths)
            )
            return
        hv = horder[vi]
        for gi in candidates(hv):
            assign[hv] = gi
            used |= 1 << gi
            yield from route(sorted(edges_at[hv]), 0, vi)
            used &= ~(1 << gi)
            del assign[hv]

    yield from place(0)


def find_topological_model(
    H: Digraph, G: Digraph, max_vertices: int = DEFAULT_SEARCH_BOUND
) -> Optional[TopologicalModel]:
    """First topological model in canonical search order, or None.

    Exact both ways for hosts within the exhaustive bound; larger hosts must
    go through the decomposition-guided finder (dtd.find_model_bounded_dtw).
    """
    if len(G.vertices) > max_vertices:
        raise ValueError(
            f"host has {len(G.vertices)} vertices, above the exhaustive search "
            f"bound {max_vertices}; supply a directed tree decomposition and "
            "use dtd.find_model_bounded_dtw"
        )
    return next(iter_topological_models(H, G), None)


# -- butterfly search --------------------------------------------------------


class _TreeState:
    __slots__ = ("root", "in_vs", "out_vs", "in_edges", "out_edges")

    def __init__(self, root: int):
        self.root = root
        self.in_vs = {root}
        self.out_vs = {root}
        self.in_edges: List[Tuple[int, int]] = []
        self.out_edges: List[Tuple[int, int]] = []


def _butterfly_edge_order(H: Digraph) -> Tuple[List[Edge], List[int]]:
    """Edges ordered so the explored pattern stays weakly connected; isolated
    pattern vertices are returned separately."""
    edges = sorted(H.edges)
    remaining = set(edges)
    order: List[Edge] = []
    touched: Set[int] = set()
    while remaining:
        pick = None
        for e in sorted(remaining):
            if not order or e[0] in touched or e[1] in touched:
                pick = e
                break
        if pick is None:
            pick = min(remaining)
        order.append(pick)
        remaining.discard(pick)
        touched.update(pick)
    isolated = [v for v in sorted(H.vertices) if not H.successors(v) and not H.predecessors(v)]
    return order, isolated


def iter_butterfly_models(H: Digraph, G: Digraph) -> Iterator[ButterflyModel]:
    """Exhaustive enumeration of tree-like butterfly models.

    Edge images are chosen in a connected order; the branchings of each
    pattern vertex grow incrementally as union-of-paths trees, which reaches
    every tree-like model exactly once per decomposition into root-anchored
    path extensions.
    """
    meta = _HostMeta(G)
    bits = meta.bits
    n = bits.n
    if n < len(H.vertices):
        return
    edge_order, isolated = _butterfly_edge_order(H)
    hcomp_blocks = strong_components(H)
    hcomp = {v: hcomp_blocks.component_of(v) for v in H.vertices}
    hcomp_size = {v: len(hcomp_blocks.component_vertex_sets[hcomp[v]]) for v in H.vertices}

    trees: Dict[int, _TreeState] = {}
    edge_map: Dict[Edge, Tuple[int, int]] = {}
    used = 0

    def root_ok(hv: int, gi: int) -> bool:
        if hcomp_size[hv] > 1 and meta.scc_size[gi] < hcomp_size[hv]:
            return False
        for w, st in trees.items():
            if hcomp[w] == hcomp[hv]:
                return meta.scc[st.root] == meta.scc[gi]
        return True

    def finish(idx: int) -> Iterator[ButterflyModel]:
        nonlocal used
        if idx == len(isolated):
            yield ButterflyModel(
                roots={v: bits.ids[st.root] for v, st in trees.items()},
                in_edges={
                    v: tuple((bits.ids[a], bits.ids[b]) for a, b in st.in_edges)
                    for v, st in trees.items()
                },
                out_edges={
                    v: tuple((bits.ids[a], bits.ids[b]) for a, b in st.out_edges)
                    for v, st in trees.items()
                },
                edge_map={e: (bits.ids[x], bits.ids[y]) for e, (x, y) in edge_map.items()},
            )
            return
        hv = isolated[idx]
        for gi in range(n):
            if used >> gi & 1 or not root_ok(hv, gi):
                continue
            trees[hv] = _TreeState(gi)
            used |= 1 << gi
            yield from finish(idx + 1)
            used &= ~(1 << gi)
            del trees[hv]

    def step(ei: int) -> Iterator[ButterflyModel]:
        nonlocal used
        if ei == len(edge_order):
            yield from finish(0)
            return
        e = edge_order[ei]
        hu, hv = e
        if hu not in trees:
            for gi in range(n):
                if used >> gi & 1 or not root_ok(hu, gi):
                    continue
                trees[hu] = _TreeState(gi)
                used |= 1 << gi
                yield from step(ei)
                used &= ~(1 << gi)
                del trees[hu]
            return

        tu = trees[hu]

        def attach_head(x: int, y: int) -> Iterator[ButterflyModel]:
            # y must end up in the in-branching of hv
            nonlocal used
            if hv in trees:
                tv = trees[hv]
                if y in tv.in_vs:
                    edge_map[e] = (x, y)
                    yield from step(ei + 1)
                    del edge_map[e]
                elif not (used >> y & 1):
                    # grow a fresh path from y that must reach tv.in_vs
                    path = [y]
                    used |= 1 << y
                    tv.in_vs.add(y)

                    def grow_in(cur: int) -> Iterator[ButterflyModel]:
                        nonlocal used
                        for nxt in bits.out_lists[cur]:
                            if nxt in tv.in_vs and nxt not in path:
                                tv.in_edges.append((cur, nxt))
                                edge_map[e] = (x, y)
                                yield from step(ei + 1)
                                del edge_map[e]
                                tv.in_edges.pop()
                            elif not (used >> nxt & 1):
                                used |= 1 << nxt
                                path.append(nxt)
                                tv.in_vs.add(nxt)
                                tv.in_edges.append((cur, nxt))
                                yield from grow_in(nxt)
                                tv.in_edges.pop()
                                tv.in_vs.discard(nxt)
                                path.pop()
                                used &= ~(1 << nxt)

                    yield from grow_in(y)
                    tv.in_vs.discard(y)
                    used &= ~(1 << y)
            else:
                if used >> y & 1:
                    return
                # introduce hv: its in-branching is a path from y to a root
                # chosen as the path end; every prefix end is a candidate root
                used |= 1 << y
                path = [y]

                def grow_new(cur: int) -> Iterator[ButterflyModel]:
                    nonlocal used
                    if root_ok(hv, cur):
                        st = _TreeState(cur)
                        st.in_vs = set(path)
                        st.in_edges = list(zip(path, path[1:]))
                        trees[hv] = st
                        edge_map[e] = (x, y)
                        yield from step(ei + 1)
                        del edge_map[e]
                        del trees[hv]
                    for nxt in bits.out_lists[cur]:
                        if not (used >> nxt & 1):
                            used |= 1 << nxt
                            path.append(nxt)
                            yield from grow_new(nxt)
                            path.pop()
                            used &= ~(1 << nxt)

                yield from grow_new(y)
                used &= ~(1 << y)

        def from_tail(x: int) -> Iterator[ButterflyModel]:
            for y in bits.out_lists[x]:
                yield from attach_head(x, y)

        # the tail may sit anywhere in the current out-branching or at the end
        # of a fresh extension path grown from it
        def grow_out(cur: int) -> Iterator[ButterflyModel]:
            nonlocal used
            yield from from_tail(cur)
            for nxt in bits.out_lists[cur]:
                if not (used >> nxt & 1):
                    used |= 1 << nxt
                    tu.out_vs.add(nxt)
                    tu.out_edges.append((cur, nxt))
                    yield from grow_out(nxt)
                    tu.out_edges.pop()
                    tu.out_vs.discard(nxt)
                    used &= ~(1 << nxt)

        for s in sorted(tu.out_vs):
            yield from grow_out(s)

    yield from step(0)


def find_butterfly_model(
    H: Digraph, G: Digraph, max_vertices: int = DEFAULT_SEARCH_BOUND
) -> Optional[ButterflyModel]:
    """First tree-like butterfly model in canonical order, or None."""
    if len(G.vertices) > max_vertices:
        raise ValueError(
            f"host has {len(G.vertices)} vertices, above the exhaustive search "
            f"bound {max_vertices}; supply a directed tree decomposition and "
            "use dtd.find_model_bounded_dtw"
        )
    return next(iter_butterfly_models(H, G), None)


def find_model(H: Digraph, G: Digraph, kind: str, max_vertices: int = DEFAULT_SEARCH_BOUND):
    if kind == "butterfly":
        return find_butterfly_model(H, G, max_vertices)
    if kind == "topological":
        return find_topological_model(H, G, max_vertices)
    raise ValueError(f"unknown minor kind {kind!r}")


# ---------------------------------------------------------------------------
# degree-3 conversion
# ---------------------------------------------------------------------------


def butterfly_to_topological(H: Digraph, G: Digraph, m: ButterflyModel) -> TopologicalModel:
    """Convert a tree-like butterfly model of a pattern with maximum total
    degree 3 into a topological model.

    Each vertex image is pruned to the paths actually carrying edge images;
    the pruned tree has at most 3 leaves, so some junction serves as the
    single topological image and the edge images extend to paths through it.
    """
    if any(len(H.successors(v)) + len(H.predecessors(v)) > 3 for v in H.vertices):
        raise ValueError("pattern has a vertex of total degree above 3")
    bad = validate_butterfly_model(H, G, m)
    if bad:
        raise ValueError("invalid butterfly model: " + "; ".join(bad))

    vertex_map: Dict[int, int] = {}
    routes: Dict[Tuple[int, str], Dict[int, Tuple[int, ...]]] = {}

    for v in sorted(H.vertices):
        root = m.roots[v]
        in_next = {a: b for a, b in m.in_edges.get(v, ())}
        out_prev = {b: a for a, b in m.out_edges.get(v, ())}
        heads = sorted({m.edge_map[e][1] for e in H.edges if e[1] == v})
        tails = sorted({m.edge_map[e][0] for e in H.edges if e[0] == v})

        def in_path(h: int) -> Tuple[int, ...]:
            seq = [h]
            while seq[-1] != root:
                seq.append(in_next[seq[-1]])
            return tuple(seq)

        def out_path(t: int) -> Tuple[int, ...]:
            seq = [t]
            while seq[0] != root:
                seq.insert(0, out_prev[seq[0]])
            return tuple(seq)

        in_paths = {h: in_path(h) for h in heads}
        out_paths = {t: out_path(t) for t in tails}
        tree_vertices = sorted(m.vertex_image(v))

        def works(w: int) -> Optional[Tuple[Dict[int, Tuple[int, ...]], Dict[int, Tuple[int, ...]]]]:
            # route every head to w and w to every tail inside the tree,
            # pairwise disjoint apart from w itself
            ins: Dict[int, Tuple[int, ...]] = {}
            outs: Dict[int, Tuple[int, ...]] = {}
            for h in heads:
                full = in_paths[h]
                if w in full:
                    ins[h] = full[: full.index(w) + 1]
                else:
                    out_tail = out_paths.get(w)
                    # w may lie in the out-branching: continue through the root
                    if w in out_prev or w == root:
                        ins[h] = full + out_path(w)[1:]
                    else:
                        return None
            for t in tails:
                full = out_paths[t]
                if w in full:
                    outs[t] = full[full.index(w) :]
                elif w in in_next or w == root:
                    # climb from w to the root, then descend
                    climb = in_path(w)
                    outs[t] = climb + full[1:]
                else:
                    return None
            segs = list(ins.values()) + list(outs.values())
            seen: Set[int] = set()
            for seg in segs:
                for x in seg:
                    if x == w:
                        continue
                    if x in seen:
                        return None
                    seen.add(x)
            return ins, outs

        chosen = None
        for w in tree_vertices:
            res = works(w)
            if res is not None:
                chosen = (w, res)
                break
        if chosen is None:
            raise ValueError(
                f"vertex {v}: no single junction routes all edge images disjointly; "
                "the conversion needs fewer than three edges on one side"
            )
        w, (ins, outs) = chosen
        vertex_map[v] = w
        routes[(v, "in")] = ins
        routes[(v, "out")] = outs

    edge_paths: Dict[Edge, Tuple[int, ...]] = {}
    for e in sorted(H.edges):
        u, v = e
        t, h = m.edge_map[e]
        out_seg = routes[(u, "out")][t]
        in_seg = routes[(v, "in")][h]
        edge_paths[e] = out_seg + in_seg

    model = TopologicalModel(vertex_map, edge_paths)
    bad = validate_topological_model(H, G, model)
    if bad:
        raise ValueError("conversion produced an invalid model: " + "; ".join(bad))
    return model


# ---------------------------------------------------------------------------
# s-embeddability and ultra-homogeneity
# ---------------------------------------------------------------------------


def is_s_embeddable(H: Digraph, G: Digraph, kind: str) -> bool:
    """True iff some edge of G, subdivided |V(H)| times, hosts H under the
    given minor order."""
    n = len(H.vertices)
    for e in G.edges:
        Ge = subdivide_edge(G, e, n)
        if find_model(H, Ge, kind, max_vertices=len(Ge.vertices)) is not None:
            return True
    return False


def is_ultra_homogeneous(H: Digraph, kind: str) -> Tuple[bool, str]:
    """Block graph a simple directed path, components pairwise s-embeddable,
    and (for three or more components) middles equal-sized and no smaller
    than the ends.  The reason names the first failed clause."""
    blocks = strong_components(H)
    if any(mult > 1 for mult in blocks.arcs.values()):
        return False, "parallel arcs between components"
    if not blocks.is_simple_directed_path():
        return False, "block graph is not a simple directed path"
    comps = [induced_subgraph(H, c) for c in blocks.component_vertex_sets]
    for i, a in enumerate(comps):
        for j, b in enumerate(comps):
            if i != j and not is_s_embeddable(a, b, kind):
                return False, f"component {i} is not s-embeddable into component {j}"
    if len(comps) >= 3:
        sizes = [len(c.vertices) for c in comps]
        middle = sizes[1:-1]
        if len(set(middle)) > 1:
            return False, "middle components differ in size"
        if middle and (middle[0] < sizes[0] or middle[0] < sizes[-1]):
            return False, "a middle component is smaller than the first or last"
    return True, "ultra-homogeneous"


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def _edge_key(e: Edge) -> str:
    return f"{e[0]}->{e[1]}"


def _parse_edge_key(s: str) -> Edge:
    u, v = s.split("->")
    return int(u), int(v)


def model_to_json_dict(m) -> dict:
    if isinstance(m, TopologicalModel):
        return {
            "kind": "topological",
            "vertex_map": {str(v): g for v, g in sorted(m.vertex_map.items())},
            "edge_map": {_edge_key(e): list(p) for e, p in sorted(m.edge_map.items())},
        }
    if isinstance(m, ButterflyModel):
        return {
            "kind": "butterfly",
            "vertex_map": {
                str(v): sorted(m.vertex_image(v)) for v in sorted(m.roots)
            },
            "roots": {str(v): r for v, r in sorted(m.roots.items())},
            "in_edges": {str(v): [list(e) for e in m.in_edges.get(v, ())] for v in sorted(m.roots)},
            "out_edges": {str(v): [list(e) for e in m.out_edges.get(v, ())] for v in sorted(m.roots)},
            "edge_map": {_edge_key(e): list(g) for e, g in sorted(m.edge_map.items())},
        }
    raise TypeError(f"not a model: {m!r}")


def model_to_json(m) -> str:
    return json.dumps(model_to_json_dict(m), separators=(",", ":"))


def model_from_json_dict(d: dict):
    if d.get("kind") == "topological":
        return TopologicalModel(
            {int(v): g for v, g in d["vertex_map"].items()},
            {_parse_edge_key(k): tuple(p) for k, p in d["edge_map"].items()},
        )
    if d.get("kind") == "butterfly":
        return ButterflyModel(
            roots={int(v): r for v, r in d["roots"].items()},
            in_edges={int(v): tuple(tuple(e) for e in es) for v, es in d["in_edges"].items()},
            out_edges={int(v): tuple(tuple(e) for e in es) for v, es in d["out_edges"].items()},
            edge_map={_parse_edge_key(k): tuple(g) for k, g in d["edge_map"].items()},
        )
    raise ValueError("model JSON must carry kind 'topological' or 'butterfly'")


def model_from_json(s: str):
    return model_from_json_dict(json.loads(s))
