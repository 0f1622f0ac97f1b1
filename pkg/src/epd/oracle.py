"""Exponential-time ground-truth procedures.

Every polynomial-path algorithm in the package is validated against these at
desk scale.  The procedures stay deliberately blunt; the only structural
shortcut is the cycle-chain reduction below, which is derived directly from
the minor definitions and is re-validated against the blunt strategies on
the random corpus.

Butterfly containment has two independent strategies that must agree:

* ``replay``: enumerate subgraph/contraction sequences directly from the
  definition (delete an edge, delete an isolated vertex, or contract a
  butterfly-contractible edge) with exact-state memoisation.
* ``treelike``: enumerate tree-like images by assigning each host vertex to
  (pattern vertex, branching side) classes and checking branching existence
  per class.

Cycle-chain reduction: when every strong component of the pattern induces a
simple directed cycle and the bridge endpoints inside each component are at
most two distinct vertices, a minimal model (either order) consists of one
host cycle per component, no shorter than it, plus one host path per bridge
that starts on the tail component's cycle and ends on the head component's
cycle, internally disjoint from everything else.  Membership of the access
points in a feasible arc split of the cycle is checked exactly during
assembly and every assembled witness is run through the model validators, so
the reduction cannot over-accept; completeness follows because pruning a
tree-like image of such a pattern to the through-cycles and access paths
preserves the witness.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, Iterator, List, Optional, Sequence, Set, Tuple

from .digraph import BitGraph, Digraph, Edge, induced_subgraph, is_isomorphic, strong_components
from .minors import (
    ButterflyModel,
    TopologicalModel,
    validate_butterfly_model,
    validate_topological_model,
)


class BudgetExceeded(RuntimeError):
    """An oracle budget was exhausted; no answer was produced."""


@dataclass
class OracleBudget:
    """Hard resource limits; exceeding one aborts rather than mis-answering."""

    max_vertices: int = 12
    max_subset_size: Optional[int] = None
    timeout: Optional[float] = None

    def __post_init__(self):
        if self.timeout is None:
            env = os.environ.get("EPD_BUDGET_SECONDS")
            if env:
                self.timeout = float(env)
        if self.max_vertices <= 0:
            raise ValueError("max_vertices must be positive")
        if self.timeout is not None and self.timeout <= 0:
            raise ValueError("timeout must be positive")

    def deadline(self) -> Optional[float]:
        return None if self.timeout is None else time.monotonic() + self.timeout


def _check_deadline(deadline: Optional[float]) -> None:
    if deadline is not None and time.monotonic() > deadline:
        raise BudgetExceeded("oracle timeout exhausted")


def _check_size(G: Digraph, budget: OracleBudget) -> None:
    if len(G.vertices) > budget.max_vertices:
        raise BudgetExceeded(
            f"host has {len(G.vertices)} vertices, budget allows {budget.max_vertices}"
        )


# ---------------------------------------------------------------------------
# simple cycle enumeration (anchored, each cycle exactly once)
# ---------------------------------------------------------------------------


def _iter_cycles(
    bits: BitGraph,
    allowed: int,
    min_len: int,
    anchor_min: int = 0,
    deadline: Optional[float] = None,
) -> Iterator[Tuple[int, ...]]:
    """All simple directed cycles (as index tuples starting at their smallest
    index) of length >= min_len inside the allowed mask."""
    for a in range(anchor_min, bits.n):
        if not allowed >> a & 1:
            continue
        path = [a]
        on = 1 << a

        def dfs(cur: int) -> Iterator[Tuple[int, ...]]:
            nonlocal on
            _check_deadline(deadline)
            for nxt in bits.out_lists[cur]:
                if nxt == a:
                    if len(path) >= min_len:
                        yield tuple(path)
                elif nxt > a and allowed >> nxt & 1 and not on >> nxt & 1:
                    on |= 1 << nxt
                    path.append(nxt)
                    yield from dfs(nxt)
                    path.pop()
                    on &= ~(1 << nxt)

        yield from dfs(a)


# ---------------------------------------------------------------------------
# cycle-chain patterns
# ---------------------------------------------------------------------------


@dataclass
class _Chain:
    comps: List[Tuple[int, ...]]          # pattern vertices in cycle order
    bridges: List[Tuple[Edge, int, int]]  # (edge, tail comp, head comp)
    pos: Dict[int, Tuple[int, int]]       # pattern vertex -> (comp, offset)


def chain_structure(H: Digraph) -> Optional[_Chain]:
    """Cycle-chain analysis of a pattern, or None when it does not apply."""
    if not H.vertices:
        return None
    blocks = strong_components(H)
    comps: List[Tuple[int, ...]] = []
    for comp in blocks.component_vertex_sets:
        if len(comp) < 2:
            return None
        sub = induced_subgraph(H, comp)
        if len(sub.edges) != len(comp):
            return None
        if any(len(sub.successors(v)) != 1 or len(sub.predecessors(v)) != 1 for v in comp):
            return None
        start = min(comp)
        order = [start]
        while True:
            nxt = sub.successors(order[-1])[0]
            if nxt == start:
                break
            order.append(nxt)
        if len(order) != len(comp):
            return None
        comps.append(tuple(order))
    pos: Dict[int, Tuple[int, int]] = {}
    for ci, order in enumerate(comps):
        for off, v in enumerate(order):
            pos[v] = (ci, off)
    bridges: List[Tuple[Edge, int, int]] = []
    endpoint_roles: Dict[int, List[int]] = {i: [] for i in range(len(comps))}
    for e in sorted(H.edges):
        u, v = e
        cu, cv = pos[u][0], pos[v][0]
        if cu == cv:
            continue
        bridges.append((e, cu, cv))
        endpoint_roles[cu].append(u)
        endpoint_roles[cv].append(v)
    for ci, marks in endpoint_roles.items():
        if len(marks) != len(set(marks)):
            return None
        if len(marks) > 2:
            return None
    return _Chain(comps, bridges, pos)


def _chain_structures(
    chain: _Chain,
    bits: BitGraph,
    used0: int,
    first_anchor_min: int = 0,
    deadline: Optional[float] = None,
) -> Iterator[Tuple[int, Dict[int, Tuple[int, ...]], List[Tuple[int, ...]]]]:
    """Candidate supports: one host cycle per component plus one host path per
    bridge, pairwise disjoint, all avoiding used0.  Yields
    (mask, cycles by comp, bridge paths aligned with chain.bridges)."""
    ncomp = len(chain.comps)
    cycles: Dict[int, Tuple[int, ...]] = {}

    def place_comp(ci: int, used: int) -> Iterator:
        _check_deadline(deadline)
        if ci == ncomp:
            yield from place_bridge(0, used, [])
            return
        need = len(chain.comps[ci])
        amin = first_anchor_min if ci == 0 else 0
        for cyc in _iter_cycles(bits, ~used & bits.full, need, amin, deadline):
            m = 0
            for i in cyc:
                m |= 1 << i
            cycles[ci] = cyc
            yield from place_comp(ci + 1, used | m)
            del cycles[ci]

    def place_bridge(bi: int, used: int, paths: List[Tuple[int, ...]]) -> Iterator:
        _check_deadline(deadline)
        if bi == len(chain.bridges):
            yield used & ~used0, dict(cycles), list(paths)
            return
        _, ca, cb = chain.bridges[bi]
        target = set(cycles[cb])
        free = ~used & bits.full

        def dfs(cur: int, path: List[int], pmask: int) -> Iterator:
            _check_deadline(deadline)
            for nxt in bits.out_lists[cur]:
                if nxt in target:
                    paths.append(tuple(path) + (nxt,))
                    yield from place_bridge(bi + 1, used | pmask, paths)
                    paths.pop()
                elif free >> nxt & 1 and not pmask >> nxt & 1:
                    path.append(nxt)
                    yield from dfs(nxt, path, pmask | 1 << nxt)
                    path.pop()

        for z in sorted(cycles[ca]):
            yield from dfs(z, [z], 0)

    yield from place_comp(0, used0)


def _gap_ok(chain: _Chain, ci: int, marks: Dict[int, int], cyc_len: int) -> bool:
    comp = chain.comps[ci]
    L = len(comp)
    if cyc_len < L:
        return False
    items = sorted(marks.items())
    if len(items) <= 1:
        return True
    (m1, p1), (m2, p2) = items
    if p1 == p2:
        return False
    d12 = (chain.pos[m2][1] - chain.pos[m1][1]) % L
    d21 = L - d12
    g12 = (p2 - p1) % cyc_len
    g21 = cyc_len - g12
    return g12 >= d12 and g21 >= d21


def _comp_marks(
    chain: _Chain, cycles: Dict[int, Tuple[int, ...]], paths: Sequence[Tuple[int, ...]]
) -> Optional[Dict[int, Dict[int, int]]]:
    """Access positions per component: pattern vertex -> index into its host
    cycle.  None when the same position would serve two marks or a gap
    condition fails."""
    marks: Dict[int, Dict[int, int]] = {ci: {} for ci in range(len(chain.comps))}
    for (e, ca, cb), path in zip(chain.bridges, paths):
        u, v = e
        pu = cycles[ca].index(path[0])
        pv = cycles[cb].index(path[-1])
        if u in marks[ca] or v in marks[cb]:
            return None
        marks[ca][u] = pu
        marks[cb][v] = pv
    for ci in marks:
        if len(set(marks[ci].values())) != len(marks[ci]):
            return None
        if not _gap_ok(chain, ci, marks[ci], len(cycles[ci])):
            return None
    return marks


def _principal_positions(
    chain: _Chain, ci: int, marks: Dict[int, int], cyc_len: int
) -> Dict[int, int]:
    """Place every component vertex on its host cycle, marked vertices at
    their access positions, respecting the cyclic order."""
    comp = chain.comps[ci]
    L = len(comp)
    if not marks:
        return {comp[k]: k for k in range(L)}
    items = sorted(marks.items(), key=lambda kv: chain.pos[kv[0]][1])
    out: Dict[int, int] = {}
    if len(items) == 1:
        (m, p) = items[0]
        off = chain.pos[m][1]
        for k in range(L):
            out[comp[(off + k) % L]] = (p + k) % cyc_len
        return out
    (m1, p1), (m2, p2) = items
    o1, o2 = chain.pos[m1][1], chain.pos[m2][1]
    d12 = (o2 - o1) % L
    out[m1] = p1
    for k in range(1, d12):
        out[comp[(o1 + k) % L]] = (p1 + k) % cyc_len
    out[m2] = p2
    for k in range(1, L - d12):
        out[comp[(o2 + k) % L]] = (p2 + k) % cyc_len
    return out


def _assemble_chain_model(
    chain: _Chain,
    bits: BitGraph,
    cycles: Dict[int, Tuple[int, ...]],
    paths: Sequence[Tuple[int, ...]],
    kind: str,
):
    """Build an explicit witness on the chosen support, or None when the
    access points admit no feasible split of some cycle."""
    marks = _comp_marks(chain, cycles, paths)
    if marks is None:
        return None
    placement: Dict[int, Dict[int, int]] = {}
    for ci in range(len(chain.comps)):
        placement[ci] = _principal_positions(chain, ci, marks[ci], len(cycles[ci]))

    if kind == "topological":
        vmap: Dict[int, int] = {}
        for ci, comp in enumerate(chain.comps):
            cyc = cycles[ci]
            for v in comp:
                vmap[v] = bits.ids[cyc[placement[ci][v]]]
        emap: Dict[Edge, Tuple[int, ...]] = {}
        for ci, comp in enumerate(chain.comps):
            cyc = cycles[ci]
            n = len(cyc)
            L = len(comp)
            for k in range(L):
                u, v = comp[k], comp[(k + 1) % L]
                pu, pv = placement[ci][u], placement[ci][v]
                seq = []
                p = pu
                while True:
                    seq.append(bits.ids[cyc[p]])
                    if p == pv and len(seq) > 1:
                        break
                    p = (p + 1) % n
                emap[(u, v)] = tuple(seq)
        for (e, _, _), path in zip(chain.bridges, paths):
            emap[e] = tuple(bits.ids[i] for i in path)
        return TopologicalModel(vmap, emap)

    # butterfly: the arc between consecutive principal positions becomes the
    # branchings of its vertex; a bridge splits right after its first vertex,
    # so the tail's arc is realised as an out-branching rooted at the access
    # point and the rest of the bridge path feeds the head's in-branching.
    arcs: Dict[int, List[int]] = {}
    for ci, comp in enumerate(chain.comps):
        cyc = cycles[ci]
        n = len(cyc)
        order = sorted(comp, key=lambda v: placement[ci][v])
        for idx, v in enumerate(order):
            start = placement[ci][v]
            end = (placement[ci][order[(idx + 1) % len(order)]] - 1) % n
            arc = []
            p = start
            while True:
                arc.append(cyc[p])
                if p == end:
                    break
                p = (p + 1) % n
            arcs[v] = arc

    def arc_edges(v: int) -> List[Edge]:
        a = arcs[v]
        return [(bits.ids[a[i]], bits.ids[a[i + 1]]) for i in range(len(a) - 1)]

    roots: Dict[int, int] = {v: bits.ids[arcs[v][-1]] for v in arcs}
    in_edges: Dict[int, List[Edge]] = {v: arc_edges(v) for v in arcs}
    out_edges: Dict[int, List[Edge]] = {v: [] for v in arcs}
    edge_map: Dict[Edge, Edge] = {}
    for ci, comp in enumerate(chain.comps):
        L = len(comp)
        for k in range(L):
            u, v = comp[k], comp[(k + 1) % L]
            edge_map[(u, v)] = (bits.ids[arcs[u][-1]], bits.ids[arcs[v][0]])
    for (e, ca, cb), path in zip(chain.bridges, paths):
        u, v = e
        host = [bits.ids[i] for i in path]
        edge_map[e] = (host[0], host[1])
        # tail side: re-root at the access point (the arc start)
        roots[u] = bits.ids[arcs[u][0]]
        out_edges[u] = arc_edges(u)
        in_edges[u] = []
        # head side: host[-1] is the arc start of v; the suffix joins T_i(v)
        in_edges[v] = list(zip(host[1:], host[2:])) + in_edges[v]
    return ButterflyModel(
        roots=roots,
        in_edges={v: tuple(es) for v, es in in_edges.items()},
        out_edges={v: tuple(es) for v, es in out_edges.items()},
        edge_map=edge_map,
    )


def _chain_find_packing(
    H: Digraph,
    chain: _Chain,
    G: Digraph,
    k: int,
    kind: str,
    deadline: Optional[float],
) -> Optional[List]:
    """k pairwise disjoint validated witnesses, or None after exhausting the
    search.  Successive witnesses are anchored at strictly increasing first
    cycle anchors, which loses no packings."""
    bits = BitGraph(G)
    found: List = []

    def build(i: int, used: int, anchor_min: int) -> bool:
        if i == k:
            return True
        for mask, cycles, paths in _chain_structures(chain, bits, used, anchor_min, deadline):
            model = _assemble_chain_model(chain, bits, cycles, paths, kind)
            if model is None:
                continue
            bad = (
                validate_topological_model(H, G, model)
                if kind == "topological"
                else validate_butterfly_model(H, G, model)
            )
            if bad:
                continue
            found.append(model)
            if build(i + 1, used | mask, cycles[0][0] + 1):
                return True
            found.pop()
        return False

    if k == 0:
        return []
    return found if build(0, 0, 0) else None


# ---------------------------------------------------------------------------
# plain topological enumeration
# ---------------------------------------------------------------------------


def _iter_topo_plain(H: Digraph, G: Digraph, deadline: Optional[float]) -> Iterator[TopologicalModel]:
    """Injective image assignment in plain vertex order, then path routing in
    plain edge order.  No shortcuts beyond degree feasibility."""
    bits = BitGraph(G)
    n = bits.n
    hverts = sorted(H.vertices)
    hedges = sorted(H.edges)
    assign: Dict[int, int] = {}
    used = 0
    paths: Dict[Edge, Tuple[int, ...]] = {}

    def route(ei: int) -> Iterator[TopologicalModel]:
        nonlocal used
        _check_deadline(deadline)
        if ei == len(hedges):
            yield TopologicalModel({v: bits.ids[g] for v, g in assign.items()}, dict(paths))
            return
        e = hedges[ei]
        a, b = assign[e[0]], assign[e[1]]
        seq = [a]

        def extend(cur: int) -> Iterator[TopologicalModel]:
            nonlocal used
            for nxt in bits.out_lists[cur]:
                if nxt == b:
                    paths[e] = tuple(bits.ids[i] for i in seq) + (bits.ids[b],)
                    yield from route(ei + 1)
                    del paths[e]
                elif not used >> nxt & 1:
                    used |= 1 << nxt
                    seq.append(nxt)
                    yield from extend(nxt)
                    seq.pop()
                    used &= ~(1 << nxt)

        yield from extend(a)

    def place(i: int) -> Iterator[TopologicalModel]:
        nonlocal used
        _check_deadline(deadline)
        if i == len(hverts):
            yield from route(0)
            return
        v = hverts[i]
        need_out = len(H.successors(v))
        need_in = len(H.predecessors(v))
        for g in range(n):
            if used >> g & 1:
                continue
            if len(bits.out_lists[g]) < need_out or len(bits.in_lists[g]) < need_in:
                continue
            assign[v] = g
            used |= 1 << g
            yield from place(i + 1)
            used &= ~(1 << g)
            del assign[v]

    yield from place(0)


# ---------------------------------------------------------------------------
# tree-like butterfly enumeration via class assignment
# ---------------------------------------------------------------------------


def _closed_sets(bits: BitGraph, root: int, avail: int, toward: bool, deadline) -> Iterator[int]:
    """All masks S inside avail such that every vertex of S reaches the root
    (toward=True, via edges inside S + root) or is reached from it."""
    seen = set()

    def grow(cur: int) -> Iterator[int]:
        _check_deadline(deadline)
        if cur in seen:
            return
        seen.add(cur)
        yield cur
        for w in range(bits.n):
            if not avail >> w & 1 or cur >> w & 1:
                continue
            links = bits.out[w] if toward else bits.inn[w]
            if links & (cur | 1 << root):
                yield from grow(cur | 1 << w)

    yield from grow(0)


def _iter_butterfly_plain(H: Digraph, G: Digraph, deadline: Optional[float]) -> Iterator[ButterflyModel]:
    """Enumerate tree-like images by per-vertex (root, in-set, out-set)
    choices; branching existence inside each class is what makes the image
    tree-like, and edge images are read off between classes at the end."""
    bits = BitGraph(G)
    hverts = sorted(H.vertices)
    cls: Dict[int, Tuple[int, int, int]] = {}  # v -> (root, in_mask, out_mask)

    def in_tree_edges(root: int, mask: int) -> List[Edge]:
        # reverse BFS from the root gives each class vertex a parent toward it
        edges: List[Edge] = []
        reached = 1 << root
        frontier = [root]
        while frontier:
            nxt = []
            for x in frontier:
                for w in bits.in_lists[x]:
                    if mask >> w & 1 and not reached >> w & 1:
                        reached |= 1 << w
                        edges.append((bits.ids[w], bits.ids[x]))
                        nxt.append(w)
            frontier = nxt
        return edges

    def out_tree_edges(root: int, mask: int) -> List[Edge]:
        edges: List[Edge] = []
        reached = 1 << root
        frontier = [root]
        while frontier:
            nxt = []
            for x in frontier:
                for w in bits.out_lists[x]:
                    if mask >> w & 1 and not reached >> w & 1:
                        reached |= 1 << w
                        edges.append((bits.ids[x], bits.ids[w]))
                        nxt.append(w)
            frontier = nxt
        return edges

    def finish() -> Iterator[ButterflyModel]:
        edge_map: Dict[Edge, Edge] = {}
        for e in sorted(H.edges):
            u, v = e
            ru, inu, outu = cls[u]
            rv, inv, outv = cls[v]
            tails = outu | 1 << ru
            heads = inv | 1 << rv
            pick = None
            for x in sorted(t for t in range(bits.n) if tails >> t & 1):
                for y in bits.out_lists[x]:
                    if heads >> y & 1:
                        pick = (bits.ids[x], bits.ids[y])
                        break
                if pick:
                    break
            if pick is None:
                return
            edge_map[e] = pick
        model = ButterflyModel(
            roots={v: bits.ids[cls[v][0]] for v in hverts},
            in_edges={v: tuple(in_tree_edges(cls[v][0], cls[v][1])) for v in hverts},
            out_edges={v: tuple(out_tree_edges(cls[v][0], cls[v][2])) for v in hverts},
            edge_map=edge_map,
        )
        if not validate_butterfly_model(H, G, model):
            yield model

    def edge_feasible(u: int, v: int) -> bool:
        ru, inu, outu = cls[u]
        rv, inv, outv = cls[v]
        tails = outu | 1 << ru
        heads = inv | 1 << rv
        t = tails
        while t:
            b = t & -t
            t ^= b
            if bits.out[b.bit_length() - 1] & heads:
                return True
        return False

    def place(i: int, used: int) -> Iterator[ButterflyModel]:
        _check_deadline(deadline)
        if i == len(hverts):
            yield from finish()
            return
        v = hverts[i]
        placed = set(hverts[:i])
        checks = [e for e in H.edges if (e[0] == v and e[1] in placed) or (e[1] == v and e[0] in placed)]
        for root in range(bits.n):
            if used >> root & 1:
                continue
            avail = ~(used | 1 << root) & bits.full
            for in_mask in _closed_sets(bits, root, avail, True, deadline):
                for out_mask in _closed_sets(bits, root, avail & ~in_mask, False, deadline):
                    cls[v] = (root, in_mask, out_mask)
                    if all(edge_feasible(*e) for e in checks):
                        yield from place(i + 1, used | 1 << root | in_mask | out_mask)
                    del cls[v]

    yield from place(0, 0)


# ---------------------------------------------------------------------------
# contraction-sequence replay
# ---------------------------------------------------------------------------


def _replay_has_butterfly(H: Digraph, G: Digraph, deadline: Optional[float]) -> bool:
    """Decide pattern <= host by exhaustive delete/contract move sequences
    with exact-state memoisation."""
    hv, he = len(H.vertices), len(H.edges)
    h_isolated = sum(1 for v in H.vertices if not H.successors(v) and not H.predecessors(v))
    hdeg = sorted(
        (len(H.predecessors(v)), len(H.successors(v))) for v in H.vertices
    )

    seen: Set[Tuple[frozenset, frozenset]] = set()

    def matches(alive: frozenset, arcs: frozenset) -> bool:
        if len(alive) != hv or len(arcs) != he:
            return False
        indeg: Dict[int, int] = {v: 0 for v in alive}
        outdeg: Dict[int, int] = {v: 0 for v in alive}
        for (a, b) in arcs:
            outdeg[a] += 1
            indeg[b] += 1
        if sorted((indeg[v], outdeg[v]) for v in alive) != hdeg:
            return False
        return is_isomorphic(Digraph(sorted(alive), sorted(arcs)), H)

    def step(alive: frozenset, arcs: frozenset) -> bool:
        _check_deadline(deadline)
        if len(alive) < hv or len(arcs) < he:
            return False
        key = (alive, arcs)
        if key in seen:
            return False
        seen.add(key)
        if matches(alive, arcs):
            return True
        outdeg: Dict[int, int] = {}
        indeg: Dict[int, int] = {}
        for (a, b) in arcs:
            outdeg[a] = outdeg.get(a, 0) + 1
            indeg[b] = indeg.get(b, 0) + 1
        # contractions first: they shrink the state fastest toward matches
        for (a, b) in sorted(arcs):
            if outdeg.get(a, 0) == 1 or indeg.get(b, 0) == 1:
                rep = min(a, b)
                gone = max(a, b)
                new_arcs = set()
                for (x, y) in arcs:
                    x2 = rep if x in (a, b) else x
                    y2 = rep if y in (a, b) else y
                    if x2 != y2:
                        new_arcs.add((x2, y2))
                if step(alive - {gone}, frozenset(new_arcs)):
                    return True
        for arc in sorted(arcs):
            new_arcs = arcs - {arc}
            new_alive = alive
            if h_isolated == 0:
                # isolated vertices can never regain edges; drop them eagerly
                drop = set()
                live = set()
                for (x, y) in new_arcs:
                    live.add(x)
                    live.add(y)
                drop = set(new_alive) - live
                new_alive = frozenset(live)
            if step(new_alive, new_arcs):
                return True
        if h_isolated:
            for v in sorted(alive):
                if not any(v in arc for arc in arcs):
                    if step(alive - {v}, arcs):
                        return True
        return False

    alive0 = frozenset(G.vertices)
    if h_isolated == 0:
        live = {x for e in G.edges for x in e}
        alive0 = frozenset(live)
    return step(alive0, frozenset(G.edges))


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------


def _kind_check(kind: str) -> None:
    if kind not in ("butterfly", "topological"):
        raise ValueError(f"unknown minor kind {kind!r}")


def oracle_has_minor(
    H: Digraph,
    G: Digraph,
    kind: str,
    budget: Optional[OracleBudget] = None,
    strategy: str = "auto",
) -> bool:
    """Exact minor containment by exhaustive enumeration.

    Butterfly strategies: "replay" (contraction sequences), "treelike"
    (class-assignment enumeration), "structured" (cycle-chain reduction,
    when applicable), "both" (replay and treelike must agree) or "auto".
    Topological strategies: "plain", "structured" or "auto".
    """
    _kind_check(kind)
    budget = budget or OracleBudget()
    _check_size(G, budget)
    deadline = budget.deadline()
    chain = chain_structure(H)

    if strategy == "auto":
        if chain is not None:
            strategy = "structured"
        elif len(G.vertices) > 12:
            strategy = "guided"
        else:
            strategy = "replay" if kind == "butterfly" else "plain"

    if strategy == "structured":
        if chain is None:
            raise ValueError("pattern is not a cycle chain; structured strategy unavailable")
        return _chain_find_packing(H, chain, G, 1, kind, deadline) is not None
    if strategy == "guided":
        from . import minors as _minors

        it = (
            _minors.iter_topological_models(H, G)
            if kind == "topological"
            else _minors.iter_butterfly_models(H, G)
        )
        return next(it, None) is not None
    if kind == "topological":
        if strategy != "plain":
            raise ValueError(f"unknown topological strategy {strategy!r}")
        return next(_iter_topo_plain(H, G, deadline), None) is not None
    if strategy == "replay":
        return _replay_has_butterfly(H, G, deadline)
    if strategy == "treelike":
        return next(_iter_butterfly_plain(H, G, deadline), None) is not None
    if strategy == "both":
        a = _replay_has_butterfly(H, G, deadline)
        b = next(_iter_butterfly_plain(H, G, deadline), None) is not None
        if a != b:
            raise AssertionError(
                f"butterfly strategies disagree (replay={a}, treelike={b})"
            )
        return a
    raise ValueError(f"unknown butterfly strategy {strategy!r}")


def _all_minimal_model_sets(
    H: Digraph, G: Digraph, kind: str, deadline: Optional[float], guided: bool = False
) -> List[Tuple[frozenset, object]]:
    """Inclusion-minimal witness vertex sets with one representative model
    each, in canonical order.

    guided=True swaps the blunt enumerators for the pruned searches of
    :mod:`epd.minors`; agreement between the two is part of the corpus
    checks, which is what licenses using the pruned ones at sizes the blunt
    ones cannot reach.
    """
    reps: Dict[frozenset, object] = {}
    if guided:
        from . import minors as _minors

        it = (
            _minors.iter_topological_models(H, G)
            if kind == "topological"
            else _minors.iter_butterfly_models(H, G)
        )
    else:
        it = (
            _iter_topo_plain(H, G, deadline)
            if kind == "topological"
            else _iter_butterfly_plain(H, G, deadline)
        )
    for model in it:
        _check_deadline(deadline)
        vs = frozenset(model.image_vertices())
        if vs not in reps:
            reps[vs] = model
    sets = sorted(reps, key=lambda s: (len(s), tuple(sorted(s))))
    minimal: List[Tuple[frozenset, object]] = []
    for s in sets:
        if not any(t < s for t, _ in minimal):
            minimal.append((s, reps[s]))
    return minimal


def oracle_max_packing(
    H: Digraph, G: Digraph, kind: str, budget: Optional[OracleBudget] = None,
    strategy: str = "auto",
) -> Tuple[int, List]:
    """Exact maximum number of pairwise vertex-disjoint models, with a
    witness packing.

    auto picks the cycle-chain search when the pattern allows it, the blunt
    enumerators for small hosts and the corpus-validated guided enumeration
    otherwise.
    """
    _kind_check(kind)
    budget = budget or OracleBudget()
    _check_size(G, budget)
    deadline = budget.deadline()
    chain = chain_structure(H)
    if chain is not None and strategy in ("auto", "structured"):
        best: List = []
        k = 1
        while True:
            _check_deadline(deadline)
            models = _chain_find_packing(H, chain, G, k, kind, deadline)
            if models is None:
                return len(best), best
            best = models
            k += 1
            if k > len(G.vertices):
                return len(best), best
    if strategy == "structured":
        raise ValueError("pattern is not a cycle chain; structured strategy unavailable")
    guided = strategy == "guided" or (strategy == "auto" and len(G.vertices) > 12)
    # collect minimal witness sets, then exact set packing
    minimal = _all_minimal_model_sets(H, G, kind, deadline, guided=guided)
    masks = [s for s, _ in minimal]
    best_sel: List[int] = []

    def bb(i: int, chosen: List[int], usedset: frozenset):
        nonlocal best_sel
        if len(chosen) > len(best_sel):
            best_sel = list(chosen)
        if i == len(masks):
            return
        if len(chosen) + (len(masks) - i) <= len(best_sel):
            return
        for j in range(i, len(masks)):
            _check_deadline(deadline)
            if not (masks[j] & usedset):
                chosen.append(j)
                bb(j + 1, chosen, usedset | masks[j])
                chosen.pop()

    bb(0, [], frozenset())
    return len(best_sel), [minimal[j][1] for j in best_sel]


def oracle_min_hitting_set(
    H: Digraph, G: Digraph, kind: str, budget: Optional[OracleBudget] = None
) -> List[int]:
    """Minimum-cardinality vertex set whose removal leaves no model; subsets
    are tried in increasing size, lexicographic within a size."""
    _kind_check(kind)
    budget = budget or OracleBudget()
    _check_size(G, budget)
    deadline = budget.deadline()
    if not oracle_has_minor(H, G, kind, budget):
        return []
    cap = budget.max_subset_size or len(G.vertices)
    from .digraph import delete_vertices

    for size in range(1, cap + 1):
        for S in combinations(G.vertices, size):
            _check_deadline(deadline)
            if not oracle_has_minor(H, delete_vertices(G, S), kind, budget):
                return list(S)
    raise BudgetExceeded("no hitting set within the subset-size budget")


def oracle_min_l_cycle_hitting(
    G: Digraph, l: int, budget: Optional[OracleBudget] = None
) -> List[int]:
    """Minimum vertex set meeting every directed cycle of length >= l."""
    budget = budget or OracleBudget(max_vertices=max(12, len(G.vertices)))
    deadline = budget.deadline()
    bits = BitGraph(G)
    cycles = [frozenset(c) for c in _iter_cycles(bits, bits.full, max(2, l), 0, deadline)]
    cycles = sorted(set(cycles), key=lambda s: (len(s), tuple(sorted(s))))
    if not cycles:
        return []

    def solve(limit: int, hit: Set[int], idx: int) -> Optional[Set[int]]:
        _check_deadline(deadline)
        rest = [c for c in cycles if not (c & hit)]
        if not rest:
            return set(hit)
        if limit == 0:
            return None
        target = min(rest, key=lambda s: (len(s), tuple(sorted(s))))
        for x in sorted(target):
            hit.add(x)
            got = solve(limit - 1, hit, idx + 1)
            if got is not None:
                return got
            hit.discard(x)
        return None

    for size in range(1, len(G.vertices) + 1):
        got = solve(size, set(), 0)
        if got is not None:
            return sorted(bits.ids[i] for i in got)
    return sorted(G.vertices)


def oracle_sigma_linkage(
    G: Digraph, sigma: Sequence[Tuple[int, int]], budget: Optional[OracleBudget] = None
) -> Optional[List[Tuple[int, ...]]]:
    """Exhaustive search for pairwise vertex-disjoint paths realising the
    requested (source, sink) pairs; a pair (u, u) is realised by the trivial
    one-vertex path."""
    budget = budget or OracleBudget()
    _check_size(G, budget)
    deadline = budget.deadline()
    bits = BitGraph(G)
    for s, t in sigma:
        if s not in bits.index or t not in bits.index:
            raise ValueError(f"linkage endpoint {s if s not in bits.index else t} not in the graph")
    pairs = [(bits.index[s], bits.index[t]) for s, t in sigma]
    out: List[Tuple[int, ...]] = []

    def place(i: int, used: int) -> bool:
        _check_deadline(deadline)
        if i == len(pairs):
            return True
        s, t = pairs[i]
        if used >> s & 1 or used >> t & 1:
            return False
        if s == t:
            out.append((bits.ids[s],))
            if place(i + 1, used | 1 << s):
                return True
            out.pop()
            return False
        seq = [s]

        def extend(cur: int, pmask: int) -> bool:
            _check_deadline(deadline)
            for nxt in bits.out_lists[cur]:
                if nxt == t:
                    out.append(tuple(bits.ids[i] for i in seq) + (bits.ids[t],))
                    if place(i + 1, used | pmask | 1 << s | 1 << t):
                        return True
                    out.pop()
                elif not (used | pmask) >> nxt & 1 and nxt != s:
                    seq.append(nxt)
                    if extend(nxt, pmask | 1 << nxt):
                        return True
                    seq.pop()
            return False

        return extend(s, 0)

    return out if place(0, 0) else None
