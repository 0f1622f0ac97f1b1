"""Deterministic constructors for the named graph families.

Cylindrical grids and walls, acyclic grids, and the attachment constructions
that wire modified pattern copies onto a grid substrate.  All constructors are
total and deterministic: the same arguments produce bit-identical JSON.

Vertex labelling conventions:

* cylindrical grid of order k: ``x_{i}_{j}`` is the common vertex of cycle
  C_i (i = 1..k, inner to outer) and path P_j (j = 1..2k).
* wall: a split vertex ``x_{i}_{j}`` becomes ``x_{i}_{j}_t`` (receives the
  in-edges) and ``x_{i}_{j}_h`` (carries the out-edges).
* acyclic grid of order k: ``v_{i}_{j}`` is the common vertex of row path
  P_i and column path Q_j; row edges run left to right, column edges top to
  bottom.
* attachment copies: copy i of the pattern H names its fresh vertices
  ``H{i}::{original id}``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .digraph import Digraph, Edge, cycle_graph, strong_components


@dataclass
class GridLabeling:
    """Coordinate map plus cycle/path membership lists for a generated grid.

    ``cycles[i]`` lists the vertices of C_{i+1} in traversal order; for the
    acyclic grid ``paths`` holds the k row paths followed by the k column
    paths.
    """

    coordinates: Dict[str, int] = field(default_factory=dict)
    cycles: Tuple[Tuple[int, ...], ...] = ()
    paths: Tuple[Tuple[int, ...], ...] = ()


def cylindrical_grid(k: int) -> Tuple[Digraph, GridLabeling]:
    """Cylindrical grid of order k: k concentric directed cycles of length 2k
    crossed by 2k paths alternating outward (odd) and inward (even)."""
    if k < 1:
        raise ValueError("grid order must be >= 1")
    # vertex id of x_{i,j}: rows i = 1..k, columns j = 1..2k
    def vid(i: int, j: int) -> int:
        return (i - 1) * 2 * k + (j - 1)

    vertices = []
    labels = {}
    for i in range(1, k + 1):
        for j in range(1, 2 * k + 1):
            v = vid(i, j)
            vertices.append(v)
            labels[v] = f"x_{i}_{j}"
    edges = []
    cycles = []
    for i in range(1, k + 1):
        ring = [vid(i, j) for j in range(1, 2 * k + 1)]
        cycles.append(tuple(ring))
        edges.extend((ring[a], ring[(a + 1) % (2 * k)]) for a in range(2 * k))
    paths = []
    for j in range(1, 2 * k + 1):
        if j % 2 == 1:
            seq = [vid(i, j) for i in range(1, k + 1)]
        else:
            seq = [vid(i, j) for i in range(k, 0, -1)]
        paths.append(tuple(seq))
        edges.extend(zip(seq, seq[1:]))
    G = Digraph(vertices, edges, labels)
    lab = GridLabeling(
        coordinates={labels[v]: v for v in vertices},
        cycles=tuple(cycles),
        paths=tuple(paths),
    )
    return G, lab


def cylindrical_wall(k: int) -> Tuple[Digraph, GridLabeling]:
    """Wall of order k: the cylindrical grid with every total-degree-4 vertex
    v split into v_t -> v_h, capping the maximum total degree at 3."""
    G, lab = cylindrical_grid(k)
    split = [v for v in G.vertices if len(G.predecessors(v)) + len(G.successors(v)) == 4]
    nxt = max(G.vertices) + 1
    tail_of: Dict[int, int] = {}  # v -> v_t (receives in-edges)
    head_of: Dict[int, int] = {}  # v -> v_h (kept out-edges)
    vertices = [v for v in G.vertices if v not in split]
    labels = {v: G.labels[v] for v in vertices}
    for v in split:
        vt, vh = nxt, nxt + 1
        nxt += 2
        tail_of[v], head_of[v] = vt, vh
        vertices.extend([vt, vh])
        labels[vt] = G.labels[v] + "_t"
        labels[vh] = G.labels[v] + "_h"
    edges = []
    for u, v in G.edges:
        a = head_of.get(u, u)
        b = tail_of.get(v, v)
        edges.append((a, b))
    edges.extend((tail_of[v], head_of[v]) for v in split)

    def expand(seq: Sequence[int]) -> Tuple[int, ...]:
        out: List[int] = []
        for v in seq:
            if v in tail_of:
                out.extend([tail_of[v], head_of[v]])
            else:
                out.append(v)
        return tuple(out)

    W = Digraph(vertices, edges, labels)
    wl = GridLabeling(
        coordinates={labels[v]: v for v in vertices},
        cycles=tuple(expand(c) for c in lab.cycles),
        paths=tuple(expand(p) for p in lab.paths),
    )
    return W, wl


def acyclic_grid(k: int) -> Tuple[Digraph, GridLabeling]:
    """Acyclic grid of order k: k row paths and k column paths meeting in
    single vertices v_{i,j}, all edges forward."""
    if k < 1:
        raise ValueError("grid order must be >= 1")

    def vid(i: int, j: int) -> int:
        return (i - 1) * k + (j - 1)

    vertices = []
    labels = {}
    for i in range(1, k + 1):
        for j in range(1, k + 1):
            v = vid(i, j)
            vertices.append(v)
            labels[v] = f"v_{i}_{j}"
    edges = []
    rows = []
    cols = []
    for i in range(1, k + 1):
        row = [vid(i, j) for j in range(1, k + 1)]
        rows.append(tuple(row))
        edges.extend(zip(row, row[1:]))
    for j in range(1, k + 1):
        col = [vid(i, j) for i in range(1, k + 1)]
        cols.append(tuple(col))
        edges.extend(zip(col, col[1:]))
    G = Digraph(vertices, edges, labels)
    lab = GridLabeling(
        coordinates={labels[v]: v for v in vertices},
        cycles=(),
        paths=tuple(rows) + tuple(cols),
    )
    return G, lab


# -- attachments ---------------------------------------------------------------


def _copy_pattern(
    H: Digraph,
    copy_idx: int,
    next_id: int,
    merged: Dict[int, int],
    dropped_edges: Sequence[Edge],
) -> Tuple[Dict[int, int], List[Edge], Dict[int, str], int]:
    """Fresh copy of H with some vertices merged onto existing ids and some
    edges dropped.  Returns (old->new map, edge list, labels, next free id)."""
    vmap: Dict[int, int] = {}
    labels: Dict[int, str] = {}
    for v in H.vertices:
        if v in merged:
            vmap[v] = merged[v]
        else:
            vmap[v] = next_id
            labels[next_id] = f"H{copy_idx}::{H.labels.get(v, v)}"
            next_id += 1
    dead = set(dropped_edges)
    edges = [(vmap[u], vmap[v]) for (u, v) in H.edges if (u, v) not in dead]
    return vmap, edges, labels, next_id


def attach_to_grid(H: Digraph, e: Edge, k: int) -> Digraph:
    """Attachment of H to the cylindrical grid of order k.

    In each of k disjoint copies of H the edge e=(u,v) is deleted; on the
    outer cycle the edges (x_{k,2i-1}, x_{k,2i}) are deleted and replaced by
    the detour x_{k,2i-1} -> v_i ... u_i -> x_{k,2i} through copy i.
    """
    return _attach_to_ring(cylindrical_grid(k), H, e, k)


def attach_to_wall(H: Digraph, e: Edge, k: int) -> Digraph:
    """Same attachment over the wall W_k (its outer cycle has no split
    vertices, so the construction carries over unchanged)."""
    return _attach_to_ring(cylindrical_wall(k), H, e, k)


def _attach_to_ring(sub: Tuple[Digraph, GridLabeling], H: Digraph, e: Edge, k: int) -> Digraph:
    G, lab = sub
    u, v = int(e[0]), int(e[1])
    if (u, v) not in H.edge_set:
        raise ValueError(f"edge {(u, v)} not in the pattern")
    coords = lab.coordinates
    vertices = list(G.vertices)
    labels = dict(G.labels)
    edges = set(G.edges)
    next_id = max(G.vertices) + 1
    for i in range(1, k + 1):
        a = coords[f"x_{k}_{2 * i - 1}"]
        b = coords[f"x_{k}_{2 * i}"]
        edges.discard((a, b))
        vmap, new_edges, new_labels, next_id = _copy_pattern(H, i, next_id, {}, [(u, v)])
        vertices.extend(sorted(vmap[w] for w in H.vertices))
        labels.update(new_labels)
        edges.update(new_edges)
        edges.add((vmap[u], b))
        edges.add((a, vmap[v]))
    return Digraph(vertices, edges, labels)


def _component_cycle_check(H: Digraph, cid: int, blocks) -> frozenset:
    comps = blocks.component_vertex_sets
    if not (0 <= cid < len(comps)):
        raise ValueError(f"unknown component id {cid}")
    return comps[cid]


def left_acyclic_attachment(
    H: Digraph, c1: int, c2: int, e: Edge, e2: Edge, n: int
) -> Digraph:
    """Left acyclic attachment of order n.

    e=(u,v) runs from component c1 to component c2 of H and e2=(x,y) is an
    edge of c2 incident to v.  Per copy i both edges are deleted, the edge
    (u_i, v_{i,1}) into row i is added, and x_i / y_i are identified with the
    top v_{1,i} and bottom v_{n,i} of column i.
    """
    if n < 1:
        raise ValueError("order must be >= 1")
    blocks = strong_components(H)
    C1 = _component_cycle_check(H, c1, blocks)
    C2 = _component_cycle_check(H, c2, blocks)
    u, v = int(e[0]), int(e[1])
    x, y = int(e2[0]), int(e2[1])
    if (u, v) not in H.edge_set or u not in C1 or v not in C2:
        raise ValueError("e must run from component c1 to component c2")
    if (x, y) not in H.edge_set or x not in C2 or y not in C2:
        raise ValueError("e2 must be an edge of component c2")
    if v not in (x, y):
        raise ValueError("e2 must be incident to the head of e")
    A, lab = acyclic_grid(n)
    coords = lab.coordinates
    vertices = list(A.vertices)
    labels = dict(A.labels)
    edges = set(A.edges)
    next_id = max(A.vertices) + 1
    for i in range(1, n + 1):
        top = coords[f"v_1_{i}"]
        bottom = coords[f"v_{n}_{i}"]
        merged = {x: top, y: bottom}
        vmap, new_edges, new_labels, next_id = _copy_pattern(H, i, next_id, merged, [(u, v), (x, y)])
        vertices.extend(sorted(vmap[w] for w in H.vertices if w not in merged))
        labels.update(new_labels)
        edges.update(new_edges)
        edges.add((vmap[u], coords[f"v_{i}_1"]))
    return Digraph(vertices, edges, labels)


def right_acyclic_attachment(
    H: Digraph, c1: int, c2: int, e: Edge, e1: Edge, n: int
) -> Digraph:
    """Mirror of the left attachment: e=(u,v) is replaced per copy by the
    edge (v_{i,n}, v_i) out of the end of row i, and the endpoints of
    e1=(x,y), an edge of c1 incident to u, are identified with the top and
    bottom of column i."""
    if n < 1:
        raise ValueError("order must be >= 1")
    blocks = strong_components(H)
    C1 = _component_cycle_check(H, c1, blocks)
    C2 = _component_cycle_check(H, c2, blocks)
    u, v = int(e[0]), int(e[1])
    x, y = int(e1[0]), int(e1[1])
    if (u, v) not in H.edge_set or u not in C1 or v not in C2:
        raise ValueError("e must run from component c1 to component c2")
    if (x, y) not in H.edge_set or x not in C1 or y not in C1:
        raise ValueError("e1 must be an edge of component c1")
    if u not in (x, y):
        raise ValueError("e1 must be incident to the tail of e")
    A, lab = acyclic_grid(n)
    coords = lab.coordinates
    vertices = list(A.vertices)
    labels = dict(A.labels)
    edges = set(A.edges)
    next_id = max(A.vertices) + 1
    for i in range(1, n + 1):
        top = coords[f"v_1_{i}"]
        bottom = coords[f"v_{n}_{i}"]
        merged = {x: top, y: bottom}
        vmap, new_edges, new_labels, next_id = _copy_pattern(H, i, next_id, merged, [(u, v), (x, y)])
        vertices.extend(sorted(vmap[w] for w in H.vertices if w not in merged))
        labels.update(new_labels)
        edges.update(new_edges)
        edges.add((coords[f"v_{i}_{n}"], vmap[v]))
    return Digraph(vertices, edges, labels)


def two_edge_attachment(H: Digraph, e1: Edge, e2: Edge, k: int) -> Digraph:
    """Attachment for a pattern with two distinct edges e1=(s1,t1), e2=(s2,t2)
    from component C to component C'.

    Over the acyclic grid of order 2k, copy i deletes both edges and wires
    s1 into the start of row 2i-1 (whose forced realisation is the full row,
    exiting at v_{2i-1,2k} into t1) and s2 into the start of row 2i (exiting
    at the bottom v_{2k,2i} of column 2i into t2).
    """
    if k < 1:
        raise ValueError("order must be >= 1")
    s1, t1 = int(e1[0]), int(e1[1])
    s2, t2 = int(e2[0]), int(e2[1])
    if (s1, t1) == (s2, t2):
        raise ValueError("the two edges must be distinct")
    if (s1, t1) not in H.edge_set or (s2, t2) not in H.edge_set:
        raise ValueError("both edges must belong to the pattern")
    blocks = strong_components(H)
    if (
        blocks.component_of(s1) != blocks.component_of(s2)
        or blocks.component_of(t1) != blocks.component_of(t2)
        or blocks.component_of(s1) == blocks.component_of(t1)
    ):
        raise ValueError("edges must run from one component to another common component")
    A, lab = acyclic_grid(2 * k)
    coords = lab.coordinates
    vertices = list(A.vertices)
    labels = dict(A.labels)
    edges = set(A.edges)
    next_id = max(A.vertices) + 1
    for i in range(1, k + 1):
        vmap, new_edges, new_labels, next_id = _copy_pattern(
            H, i, next_id, {}, [(s1, t1), (s2, t2)]
        )
        vertices.extend(sorted(vmap[w] for w in H.vertices))
        labels.update(new_labels)
        edges.update(new_edges)
        edges.add((vmap[s1], coords[f"v_{2 * i - 1}_1"]))
        edges.add((vmap[s2], coords[f"v_{2 * i}_1"]))
        edges.add((coords[f"v_{2 * i - 1}_{2 * k}"], vmap[t1]))
        edges.add((coords[f"v_{2 * k}_{2 * i}"], vmap[t2]))
    return Digraph(vertices, edges, labels)


def three_component_attachment(H: Digraph, e1: Edge, e2: Edge, k: int) -> Digraph:
    """Attachment for a pattern with consecutive components C1 -> C2 -> C3
    where the middle component is smaller than C1 or C3.

    e1=(u,v) links C1 to C2 and e2=(x,y) links C2 to C3.  Copy i deletes both
    and adds u -> v_{2i-1,1}, v_{2i-1,2k} -> v, x -> v_{2i,1} and
    v_{2k,2i-1} -> y over the acyclic grid of order 2k.
    """
    if k < 1:
        raise ValueError("order must be >= 1")
    u, v = int(e1[0]), int(e1[1])
    x, y = int(e2[0]), int(e2[1])
    if (u, v) not in H.edge_set or (x, y) not in H.edge_set:
        raise ValueError("both edges must belong to the pattern")
    blocks = strong_components(H)
    cu, cv = blocks.component_of(u), blocks.component_of(v)
    cx, cy = blocks.component_of(x), blocks.component_of(y)
    if cv != cx or len({cu, cv, cy}) != 3:
        raise ValueError("edges must form a chain C1 -> C2 -> C3 of three distinct components")
    mid = len(blocks.component_vertex_sets[cv])
    first = len(blocks.component_vertex_sets[cu])
    last = len(blocks.component_vertex_sets[cy])
    if not (mid < last or mid < first):
        raise ValueError("middle component must be smaller than the first or the last")
    A, lab = acyclic_grid(2 * k)
    coords = lab.coordinates
    vertices = list(A.vertices)
    labels = dict(A.labels)
    edges = set(A.edges)
    next_id = max(A.vertices) + 1
    for i in range(1, k + 1):
        vmap, new_edges, new_labels, next_id = _copy_pattern(H, i, next_id, {}, [(u, v), (x, y)])
        vertices.extend(sorted(vmap[w] for w in H.vertices))
        labels.update(new_labels)
        edges.update(new_edges)
        edges.add((vmap[u], coords[f"v_{2 * i - 1}_1"]))
        edges.add((coords[f"v_{2 * i - 1}_{2 * k}"], vmap[v]))
        edges.add((vmap[x], coords[f"v_{2 * i}_1"]))
        edges.add((coords[f"v_{2 * k}_{2 * i - 1}"], vmap[y]))
    return Digraph(vertices, edges, labels)


# -- pattern builders ----------------------------------------------------------


def two_cycles_pattern(l: int, s: int, start: int = 0) -> Digraph:
    """Two disjoint directed cycles of lengths l and s joined by a single
    edge from the first cycle to the second."""
    a = cycle_graph(l, start)
    b = cycle_graph(s, start + l)
    return Digraph(
        a.vertices + b.vertices,
        list(a.edges) + list(b.edges) + [(start, start + l)],
    )


def digon_pattern() -> Digraph:
    return Digraph([0, 1], [(0, 1), (1, 0)])


# -- seeded random corpus helpers (tests and verify-claims only) ---------------


def random_digraph(rng: random.Random, n: int, m: int) -> Digraph:
    """Uniform-ish random simple digraph with n vertices and up to m edges."""
    vertices = list(range(n))
    pool = [(u, v) for u in vertices for v in vertices if u != v]
    rng.shuffle(pool)
    return Digraph(vertices, pool[: min(m, len(pool))])


def _pattern_pool() -> List[Digraph]:
    return [
        digon_pattern(),
        cycle_graph(3),
        cycle_graph(4),
        two_cycles_pattern(2, 2),
        two_cycles_pattern(3, 2),
        Digraph([0, 1], [(0, 1)]),
        Digraph([0, 1, 2], [(0, 1), (1, 2)]),
    ]


def corpus_minor_pairs(seed: int, count: int, max_g: int = 10, max_m: int = 13) -> List[Tuple[Digraph, Digraph]]:
    """Seeded corpus of (pattern, host) pairs for the oracle equivalence runs."""
    rng = random.Random(seed)
    pool = _pattern_pool()
    out = []
    for _ in range(count):
        H = rng.choice(pool)
        n = rng.randint(3, max_g)
        m = rng.randint(n - 1, min(max_m, n * (n - 1)))
        out.append((H, random_digraph(rng, n, m)))
    return out


def corpus_graphs(seed: int, count: int, max_n: int = 10, max_m: int = 14) -> List[Digraph]:
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(2, max_n)
        m = rng.randint(n - 1, min(max_m, n * (n - 1)))
        out.append(random_digraph(rng, n, m))
    return out
