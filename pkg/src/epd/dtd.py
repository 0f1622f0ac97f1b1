"""Directed tree decompositions.

A decomposition is an arborescence with bags partitioning the host vertices
and guards on the tree edges such that every subtree's bag union is
guard-normal: no directed walk avoiding the guard may leave the union and
return.  Width is the largest |Gamma(t)| - 1 where Gamma(t) collects the bag
of t and the guards of its incident tree edges.

This module houses representation and validation, exact desk-scale width
search, the special normal form used by the two-cycles engine, exact
sigma-linkage solving (plain and guard-pruned) and the decomposition-guided
minor-model finder.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Set, Tuple

from .digraph import (
    BitGraph,
    Digraph,
    Edge,
    delete_vertices,
    induced_subgraph,
    reachable_from,
    strong_components,
)
from . import minors as _minors


# ---------------------------------------------------------------------------
# types
# ---------------------------------------------------------------------------


@dataclass
class Arborescence:
    """Rooted tree with edges directed away from the root."""

    nodes: Tuple[int, ...]
    root: int
    parent: Dict[int, int]

    def validate(self) -> List[str]:
        bad = []
        nodes = set(self.nodes)
        if self.root not in nodes:
            bad.append("root is not a node")
            return bad
        if set(self.parent) != nodes - {self.root}:
            bad.append("parent map must cover exactly the non-root nodes")
            return bad
        for t in self.parent:
            seen = {t}
            cur = t
            while cur != self.root:
                cur = self.parent.get(cur)
                if cur is None or cur in seen:
                    bad.append(f"node {t} has no simple path from the root")
                    return bad
                seen.add(cur)
        return bad

    def children(self, t: int) -> Tuple[int, ...]:
        return tuple(sorted(c for c, p in self.parent.items() if p == t))

    def preorder(self) -> List[int]:
        out = []
        stack = [self.root]
        while stack:
            t = stack.pop()
            out.append(t)
            stack.extend(reversed(self.children(t)))
        return out

    def subtree(self, t: int) -> List[int]:
        out = []
        stack = [t]
        while stack:
            s = stack.pop()
            out.append(s)
            stack.extend(self.children(s))
        return out

    def height(self, t: int) -> int:
        kids = self.children(t)
        return 0 if not kids else 1 + max(self.height(c) for c in kids)


@dataclass
class DirectedTreeDecomposition:
    """(tree, beta, gamma) with gamma keyed by the child node of each edge."""

    tree: Arborescence
    beta: Dict[int, FrozenSet[int]]
    gamma: Dict[int, FrozenSet[int]]

    def bag(self, t: int) -> FrozenSet[int]:
        return self.beta.get(t, frozenset())

    def guard(self, child: int) -> FrozenSet[int]:
        return self.gamma.get(child, frozenset())

    def gamma_at(self, t: int) -> FrozenSet[int]:
        out = set(self.bag(t))
        if t != self.tree.root:
            out |= self.guard(t)
        for c in self.tree.children(t):
            out |= self.guard(c)
        return frozenset(out)

    def width(self) -> int:
        return max(len(self.gamma_at(t)) for t in self.tree.nodes) - 1

    def beta_subtree(self, t: int) -> FrozenSet[int]:
        out: Set[int] = set()
        for s in self.tree.subtree(t):
            out |= self.bag(s)
        return frozenset(out)


@dataclass
class Linkage:
    """Pairwise vertex-disjoint directed paths realising (source, sink)
    pairs; a (u, u) pair is realised by the one-vertex path."""

    pairs: Tuple[Tuple[int, int], ...]
    paths: Tuple[Tuple[int, ...], ...]


def validate_linkage(G: Digraph, link: Linkage) -> List[str]:
    bad = []
    if len(link.pairs) != len(link.paths):
        return ["pair/path counts differ"]
    seen: Set[int] = set()
    for (s, t), path in zip(link.pairs, link.paths):
        if not path or path[0] != s or path[-1] != t:
            bad.append(f"path for ({s},{t}) does not link its endpoints")
            continue
        if len(set(path)) != len(path):
            bad.append(f"path for ({s},{t}) repeats a vertex")
        for a, b in zip(path, path[1:]):
            if not G.has_edge(a, b):
                bad.append(f"path for ({s},{t}) uses a non-edge ({a},{b})")
                break
        for v in path:
            if v in seen:
                bad.append(f"vertex {v} is shared between paths")
            seen.add(v)
    return bad


# ---------------------------------------------------------------------------
# normality
# ---------------------------------------------------------------------------


def is_z_normal(G: Digraph, Z, S, method: str = "both") -> bool:
    """Whether S is Z-normal: no directed walk in G - Z with first and last
    vertex in S that uses a vertex outside Z and S.

    "walk" searches for an offending excursion directly; "intervals" uses the
    component characterisation (S must be a union of strong components of
    G - Z with no outside component both reachable from and reaching S);
    "both" runs the two and asserts agreement.
    """
    Z = frozenset(Z)
    S = frozenset(S)
    if S - set(G.vertices) or Z - set(G.vertices):
        raise ValueError("Z and S must be vertex sets of the graph")
    if S & Z:
        raise ValueError("S must be disjoint from Z")

    def by_walk() -> bool:
        if not S:
            return True
        rest = set(G.vertices) - Z - S
        fwd = reachable_from(G, S, forbidden=Z)
        back = _reachable_to(G, S, forbidden=Z)
        return not any(x in fwd and x in back for x in rest)

    def by_intervals() -> bool:
        if not S:
            return True
        sub = delete_vertices(G, Z)
        blocks = strong_components(sub)
        comps = blocks.component_vertex_sets
        s_comps = set()
        for i, comp in enumerate(comps):
            inter = comp & S
            if inter and inter != comp:
                return False
            if inter:
                s_comps.add(i)
        # condensation reachability
        n = len(comps)
        succ: Dict[int, Set[int]] = {i: set() for i in range(n)}
        for (a, b) in blocks.arcs:
            succ[a].add(b)

        def creach(srcs: Set[int]) -> Set[int]:
            seen = set(srcs)
            stack = list(srcs)
            while stack:
                i = stack.pop()
                for j in succ[i]:
                    if j not in seen:
                        seen.add(j)
                        stack.append(j)
            return seen

        from_s = creach(s_comps)
        to_s = {i for i in range(n) if creach({i}) & s_comps}
        return not any(i not in s_comps and i in from_s and i in to_s for i in range(n))

    if method == "walk":
        return by_walk()
    if method == "intervals":
        return by_intervals()
    if method == "both":
        a, b = by_walk(), by_intervals()
        if a != b:
            raise AssertionError(f"normality implementations disagree (walk={a}, intervals={b})")
        return a
    raise ValueError(f"unknown method {method!r}")


def _reachable_to(G: Digraph, targets, forbidden=()) -> frozenset:
    forb = set(forbidden)
    seen = {t for t in targets if t not in forb}
    stack = list(seen)
    while stack:
        v = stack.pop()
        for w in G.predecessors(v):
            if w not in seen and w not in forb:
                seen.add(w)
                stack.append(w)
    return frozenset(seen)


def _normality_witness(G: Digraph, Z: frozenset, S: frozenset) -> Optional[List[int]]:
    """An offending walk (as a vertex list) for a non-normal set, or None."""
    rest = set(G.vertices) - Z - S
    fwd = reachable_from(G, S, forbidden=Z)
    back = _reachable_to(G, S, forbidden=Z)
    for x in sorted(rest):
        if x in fwd and x in back:
            first = _short_path(G, S, {x}, Z)
            second = _short_path(G, {x}, S, Z)
            return first + second[1:]
    return None


def _short_path(G: Digraph, sources, targets, forbidden) -> List[int]:
    from collections import deque

    forb = set(forbidden)
    prev: Dict[int, Optional[int]] = {s: None for s in sources if s not in forb}
    q = deque(sorted(prev))
    targets = set(targets)
    while q:
        v = q.popleft()
        if v in targets:
            out = [v]
            while prev[out[-1]] is not None:
                out.append(prev[out[-1]])
            return list(reversed(out))
        for w in G.successors(v):
            if w not in prev and w not in forb:
                prev[w] = v
                q.append(w)
    return []


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------


@dataclass
class DtdReport:
    violations: List[str] = field(default_factory=list)
    width: Optional[int] = None

    @property
    def ok(self) -> bool:
        return not self.violations


def validate_dtd(G: Digraph, D: DirectedTreeDecomposition) -> DtdReport:
    """Check the partition and normality conditions; width reported when
    valid.  Guards may intersect bags; normality is then checked for the bag
    union minus the guard."""
    bad = D.tree.validate()
    if bad:
        return DtdReport(bad)
    nodes = set(D.tree.nodes)
    if set(D.beta) - nodes:
        bad.append("beta assigns bags to unknown nodes")
    if set(D.gamma) - (nodes - {D.tree.root}):
        bad.append("gamma must be keyed by non-root nodes")
    seen: Dict[int, int] = {}
    for t in sorted(nodes):
        for v in D.bag(t):
            if v not in G.vertex_set:
                bad.append(f"bag of node {t} contains unknown vertex {v}")
            if v in seen:
                bad.append(f"vertex {v} appears in bags of nodes {seen[v]} and {t}")
            seen[v] = t
    missing = set(G.vertices) - set(seen)
    if missing:
        bad.append(f"vertices {sorted(missing)} appear in no bag")
    for c in sorted(nodes - {D.tree.root}):
        for v in D.guard(c):
            if v not in G.vertex_set:
                bad.append(f"guard of edge into {c} contains unknown vertex {v}")
    if bad:
        return DtdReport(bad)
    for c in sorted(nodes - {D.tree.root}):
        Z = D.guard(c)
        S = D.beta_subtree(c) - Z
        if not is_z_normal(G, Z, S, method="walk"):
            walk = _normality_witness(G, Z, S)
            bad.append(
                f"edge ({D.tree.parent[c]},{c}): bag union below is not guard-normal; "
                f"offending walk {walk}"
            )
    if bad:
        return DtdReport(bad)
    return DtdReport([], D.width())


def validate_special_dtd(G: Digraph, D: DirectedTreeDecomposition) -> DtdReport:
    """validate_dtd plus the special conditions: every subtree bag union is a
    strong component of G minus its guard, and bags strictly below a node
    avoid the guards of its incident edges."""
    rep = validate_dtd(G, D)
    if not rep.ok:
        return rep
    bad: List[str] = []
    for c in sorted(set(D.tree.nodes) - {D.tree.root}):
        Z = D.guard(c)
        S = D.beta_subtree(c)
        comps = strong_components(delete_vertices(G, Z & frozenset(G.vertices))).component_vertex_sets
        if S not in comps:
            bad.append(f"edge ({D.tree.parent[c]},{c}): bag union below is not a strong component of G minus the guard")
    for t in sorted(D.tree.nodes):
        below = D.beta_subtree(t) - D.bag(t)
        incident: Set[int] = set()
        if t != D.tree.root:
            incident |= D.guard(t)
        for c in D.tree.children(t):
            incident |= D.guard(c)
        if below & incident:
            bad.append(
                f"node {t}: bags strictly below intersect incident guards at {sorted(below & incident)}"
            )
    if bad:
        return DtdReport(bad)
    return DtdReport([], rep.width)


def restrict_dtd(D: DirectedTreeDecomposition, keep) -> DirectedTreeDecomposition:
    """Restriction to a vertex subset: intersect every bag and guard."""
    keep = frozenset(keep)
    return DirectedTreeDecomposition(
        tree=D.tree,
        beta={t: D.bag(t) & keep for t in D.tree.nodes},
        gamma={c: D.guard(c) & keep for c in D.gamma},
    )


def single_node_dtd(G: Digraph) -> DirectedTreeDecomposition:
    return DirectedTreeDecomposition(
        tree=Arborescence((0,), 0, {}),
        beta={0: frozenset(G.vertices)},
        gamma={},
    )


# ---------------------------------------------------------------------------
# exact width search
# ---------------------------------------------------------------------------

DTD_EXACT_BOUND = 12


def compute_dtd_exact(
    G: Digraph, w: int, max_vertices: int = DTD_EXACT_BOUND
) -> Optional[DirectedTreeDecomposition]:
    """A decomposition of width <= w, or None iff none exists.

    Branch and bound over (bag, child region, guard) choices; child regions
    are guard-normal sets containing the smallest uncovered vertex, guards
    range over all small vertex subsets, and memoisation is on the
    (region, incoming guard) pair.  Exactness holds at desk scale only.
    """
    if len(G.vertices) > max_vertices:
        raise ValueError(
            f"host has {len(G.vertices)} vertices, above the exact-search bound {max_vertices}"
        )
    if w < -1:
        return None
    if not G.vertices:
        return DirectedTreeDecomposition(Arborescence((0,), 0, {}), {0: frozenset()}, {})
    bits = BitGraph(G)
    n = bits.n
    full = bits.full
    cap = w + 1

    def popcount(m: int) -> int:
        return m.bit_count()

    def scc_masks(allowed: int) -> Tuple[List[int], List[int]]:
        """Strong components inside the allowed mask, with condensation
        reachability masks (over component indices)."""
        comps: List[int] = []
        where = {}
        seen = 0
        index = {}
        low = {}
        on = {}
        counter = [0]
        stack: List[int] = []
        for root in range(n):
            if not allowed >> root & 1 or root in index:
                continue
            work = [(root, iter(bits.out_lists[root]))]
            index[root] = low[root] = counter[0]
            counter[0] += 1
            stack.append(root)
            on[root] = True
            while work:
                v, it = work[-1]
                advanced = False
                for x in it:
                    if not allowed >> x & 1:
                        continue
                    if x not in index:
                        index[x] = low[x] = counter[0]
                        counter[0] += 1
                        stack.append(x)
                        on[x] = True
                        work.append((x, iter(bits.out_lists[x])))
                        advanced = True
                        break
                    elif on.get(x):
                        low[v] = min(low[v], index[x])
                if advanced:
                    continue
                work.pop()
                if work:
                    low[work[-1][0]] = min(low[work[-1][0]], low[v])
                if low[v] == index[v]:
                    cm = 0
                    while True:
                        x = stack.pop()
                        on[x] = False
                        cm |= 1 << x
                        where[x] = len(comps)
                        if x == v:
                            break
                    comps.append(cm)
        k = len(comps)
        succ = [0] * k
        for u in range(n):
            if not allowed >> u & 1:
                continue
            cu = where[u]
            f = bits.out[u] & allowed
            while f:
                b = f & -f
                f ^= b
                cv = where[b.bit_length() - 1]
                if cv != cu:
                    succ[cu] |= 1 << cv
        reach = [0] * k
        for i in range(k):
            r = 1 << i
            frontier = r
            while frontier:
                nxt = 0
                ff = frontier
                while ff:
                    b = ff & -ff
                    ff ^= b
                    nxt |= succ[b.bit_length() - 1]
                frontier = nxt & ~r
                r |= frontier
            reach[i] = r
        return comps, reach

    comps_cache: Dict[int, Tuple[List[int], List[int]]] = {}

    def comps_of(guard: int):
        if guard not in comps_cache:
            comps_cache[guard] = scc_masks(full & ~guard)
        return comps_cache[guard]

    guards_pool: List[int] = [0]
    for size in range(1, cap + 1):
        for c in combinations(range(n), size):
            m = 0
            for i in c:
                m |= 1 << i
            guards_pool.append(m)

    def convex_unions(guard: int, inside: int, anchor: int) -> Iterator[int]:
        """Guard-normal submasks of `inside` containing `anchor`, built from
        whole components of the graph minus guard plus guard vertices."""
        comps, reach = comps_of(guard)
        k = len(comps)
        idx_ok = [i for i in range(k) if comps[i] & inside == comps[i]]
        extra = guard & inside
        if guard >> anchor & 1:
            base: Tuple[int, ...] = ()
        else:
            base = tuple(i for i in idx_ok if comps[i] >> anchor & 1)
            if not base:
                return

        def convex(selmask: int) -> bool:
            for i in range(k):
                if selmask >> i & 1:
                    continue
                hit_from = False
                f = selmask
                while f:
                    b = f & -f
                    f ^= b
                    if reach[b.bit_length() - 1] >> i & 1:
                        hit_from = True
                        break
                if hit_from and reach[i] & selmask:
                    return False
            return True

        extras: List[int] = [0]
        e = extra
        elems = []
        while e:
            b = e & -e
            e ^= b
            elems.append(b)
        for r in range(1, len(elems) + 1):
            for c in combinations(elems, r):
                mm = 0
                for x in c:
                    mm |= x
                extras.append(mm)

        seen_yield: Set[int] = set()
        base_mask = 0
        for i in base:
            base_mask |= 1 << i

        def emit(selmask: int) -> Iterator[int]:
            if not convex(selmask):
                return
            core = 0
            f = selmask
            while f:
                b = f & -f
                f ^= b
                core |= comps[b.bit_length() - 1]
            for xm in extras:
                cand = core | xm
                if not cand or not cand >> anchor & 1:
                    continue
                if cand in seen_yield:
                    continue
                seen_yield.add(cand)
                yield cand

        pool = [i for i in idx_ok if not base_mask >> i & 1]

        def grow(selmask: int, start: int) -> Iterator[int]:
            yield from emit(selmask)
            for j in range(start, len(pool)):
                yield from grow(selmask | 1 << pool[j], j + 1)

        yield from grow(base_mask, 0)

    memo: Dict[Tuple[int, int], Optional[dict]] = {}
    cover_memo: Dict[Tuple[int, int], Optional[list]] = {}
    normal_guards_cache: Dict[int, List[int]] = {}
    closure_cache: Dict[Tuple[int, int], List[Tuple[int, int]]] = {}

    def submasks_by_size(region: int, max_size: int) -> Iterator[int]:
        elems = []
        r = region
        while r:
            b = r & -r
            r ^= b
            elems.append(b)
        for size in range(0, min(max_size, len(elems)) + 1):
            for c in combinations(elems, size):
                m = 0
                for x in c:
                    m |= x
                yield m

    def normal_guards(cand: int) -> List[int]:
        """Guards under which cand is a normal set (a convex union of whole
        components plus guard vertices)."""
        if cand in normal_guards_cache:
            return normal_guards_cache[cand]
        anchor = (cand & -cand).bit_length() - 1
        out = []
        for guard in guards_pool:
            for c2 in convex_unions(guard, cand, anchor):
                if c2 == cand:
                    out.append(guard)
                    break
        normal_guards_cache[cand] = out
        return out

    def guard_closure(cand: int, gamma_acc: int) -> List[Tuple[int, int]]:
        """(entry guard, subtree guard) pairs reachable through chains of
        empty-bag relay nodes over cand: consecutive chain guards must fit in
        the width cap together and every chain guard keeps cand normal.  The
        entry guard is what the parent's width sees; the subtree is built
        under the final guard."""
        key = (cand, gamma_acc)
        if key in closure_cache:
            return closure_cache[key]
        pool = normal_guards(cand)
        sources = [g for g in pool if popcount(gamma_acc | g) <= cap]
        pred: Dict[int, Optional[int]] = {}
        frontier = []
        for g in sources:
            if g not in pred:
                pred[g] = None
                frontier.append(g)
        while frontier:
            nxt = []
            for g in frontier:
                for h in pool:
                    if h not in pred and popcount(g | h) <= cap:
                        pred[h] = g
                        nxt.append(h)
            frontier = nxt

        def chain_of(g: int) -> Tuple[int, ...]:
            seq = [g]
            while pred[seq[-1]] is not None:
                seq.append(pred[seq[-1]])
            return tuple(reversed(seq))

        result = sorted(
            (chain_of(g) for g in pred), key=lambda ch: (popcount(ch[-1]), ch[-1])
        )
        closure_cache[key] = result
        return result

    def decompose(region: int, gp: int) -> Optional[dict]:
        """Subtree covering `region` whose incoming edge carries guard gp."""
        key = (region, gp)
        if key in memo:
            return memo[key]
        result = None
        for bag in submasks_by_size(region, cap):
            if popcount(bag | gp) > cap:
                continue
            rest = region & ~bag
            if not rest:
                result = {"bag": bag, "children": []}
                break
            got = cover(rest, bag | gp, region if bag == 0 else 0)
            if got is not None:
                result = {"bag": bag, "children": got}
                break
        memo[key] = result
        return result

    def cover(rest: int, gamma_acc: int, forbid: int):
        """Partition `rest` into guard-normal child regions; a child equal to
        `forbid` (the caller's whole region under an empty bag) is expressed
        through the guard closure instead, which keeps regions shrinking."""
        if not rest:
            return []
        key = (rest, gamma_acc, forbid)
        if key in cover_memo:
            return cover_memo[key]
        anchor = (rest & -rest).bit_length() - 1
        result = None
        seen_cands: Set[int] = set()
        for guard in guards_pool:
            if result is not None:
                break
            if popcount(gamma_acc | guard) > cap:
                continue
            for cand in convex_unions(guard, rest, anchor):
                if cand == forbid or cand in seen_cands:
                    continue
                seen_cands.add(cand)
                for chain in guard_closure(cand, gamma_acc):
                    sub = decompose(cand, chain[-1])
                    if sub is None:
                        continue
                    tail = cover(rest & ~cand, gamma_acc | chain[0], 0)
                    if tail is not None:
                        result = [(chain, cand, sub)] + tail
                        break
                if result is not None:
                    break
        cover_memo[key] = result
        return result

    structure = decompose(full, 0)
    if structure is None:
        return None

    nodes: List[int] = []
    beta: Dict[int, frozenset] = {}
    gamma: Dict[int, frozenset] = {}
    parent: Dict[int, int] = {}

    def to_ids(mask: int) -> frozenset:
        return frozenset(bits.ids_of(mask))

    def build(struct: dict, parent_id: Optional[int], chain) -> int:
        # materialise relay nodes for multi-step guard chains
        attach = parent_id
        for g in (chain or ())[:-1]:
            nid = len(nodes)
            nodes.append(nid)
            beta[nid] = frozenset()
            parent[nid] = attach
            gamma[nid] = to_ids(g)
            attach = nid
        nid = len(nodes)
        nodes.append(nid)
        beta[nid] = to_ids(struct["bag"])
        if attach is not None:
            parent[nid] = attach
            gamma[nid] = to_ids(chain[-1] if chain else 0)
        for ch, _cand, sub in struct["children"]:
            build(sub, nid, ch)
        return nid

    build(structure, None, None)
    D = DirectedTreeDecomposition(Arborescence(tuple(nodes), 0, parent), beta, gamma)
    rep = validate_dtd(G, D)
    if not rep.ok or rep.width > w:
        raise AssertionError(f"exact search produced an invalid decomposition: {rep.violations or rep.width}")
    return D


def exact_dtw(G: Digraph, max_vertices: int = DTD_EXACT_BOUND) -> Tuple[int, DirectedTreeDecomposition]:
    """Smallest width with a witness decomposition (desk scale)."""
    w = 0
    while True:
        D = compute_dtd_exact(G, w, max_vertices)
        if D is not None:
            return w, D
        w += 1


# ---------------------------------------------------------------------------
# special decompositions
# ---------------------------------------------------------------------------


def compute_special_dtd(G: Digraph) -> DirectedTreeDecomposition:
    """Special decomposition by recursive strong-component splitting.

    Every subtree bag union is a strong component of the host minus its
    (greedily minimised) guard and strictly-below bags avoid incident guards.
    Width is whatever the splitter choices produce; it is measured, not
    certified against any bound.
    """
    nodes: List[int] = []
    beta: Dict[int, frozenset] = {}
    gamma: Dict[int, frozenset] = {}
    parent: Dict[int, int] = {}

    def comp_of(vertex: int, guard: frozenset) -> frozenset:
        sub = delete_vertices(G, guard & frozenset(G.vertices))
        for comp in strong_components(sub).component_vertex_sets:
            if vertex in comp:
                return comp
        return frozenset()

    def minimise_guard(region: frozenset, guard: frozenset) -> frozenset:
        """Drop guard vertices while the region stays a maximal strong
        component of G minus the guard."""
        g = set(guard)
        for v in sorted(guard):
            trial = frozenset(g - {v})
            if comp_of(min(region), trial) == region:
                g.discard(v)
        return frozenset(g)

    def splitter(region: frozenset) -> frozenset:
        sub = induced_subgraph(G, region)
        if len(region) == 1:
            return frozenset(region)
        best = None
        for v in sorted(region):
            comps = strong_components(delete_vertices(sub, [v])).component_vertex_sets
            largest = max((len(c) for c in comps), default=0)
            if best is None or largest < best[0]:
                best = (largest, v)
        return frozenset({best[1]})

    def build(region: frozenset, context: frozenset, parent_id: Optional[int], guard: Optional[frozenset]):
        nid = len(nodes)
        nodes.append(nid)
        if parent_id is not None:
            parent[nid] = parent_id
            gamma[nid] = guard
        sub = induced_subgraph(G, region)
        strongly = len(strong_components(sub).component_vertex_sets) == 1
        if region and strongly:
            bag = splitter(region)
        else:
            bag = frozenset()
        beta[nid] = bag
        remainder = region - bag
        if not remainder:
            return
        blocks = strong_components(induced_subgraph(G, remainder))
        for comp in blocks.component_vertex_sets:
            g = minimise_guard(comp, context | bag)
            build(comp, g, nid, g)

    build(frozenset(G.vertices), frozenset(), None, None)
    D = DirectedTreeDecomposition(Arborescence(tuple(nodes), 0, parent), beta, gamma)
    rep = validate_special_dtd(G, D)
    if not rep.ok:
        raise AssertionError(f"special construction failed validation: {rep.violations}")
    return D


# ---------------------------------------------------------------------------
# guard-pruned routing
# ---------------------------------------------------------------------------


class _RegionPrune:
    """Per-vertex region/guard masks derived from a decomposition.

    For every tree edge, once a path leaves the bag union below it without
    touching the guard, it can never re-enter; tracking (inside, out-clean)
    masks per path makes that an O(1) step filter.
    """

    def __init__(self, G: Digraph, D: DirectedTreeDecomposition, bits: BitGraph):
        children = [c for c in D.tree.nodes if c != D.tree.root]
        self.regmask = [0] * bits.n
        self.guardmask = [0] * bits.n
        for ei, c in enumerate(children):
            guard = D.guard(c)
            region = D.beta_subtree(c) - guard
            for v in region:
                if v in bits.index:
                    self.regmask[bits.index[v]] |= 1 << ei
            for v in guard:
                if v in bits.index:
                    self.guardmask[bits.index[v]] |= 1 << ei

    def start(self, v: int) -> Tuple[int, int]:
        return self.regmask[v], 0

    def step(self, state: Tuple[int, int], w: int) -> Optional[Tuple[int, int]]:
        inside, out_clean = state
        regs = self.regmask[w]
        guards = self.guardmask[w]
        if out_clean & regs:
            return None
        out_clean = (out_clean | (inside & ~regs)) & ~guards
        return regs, out_clean


def _route_segments(
    G: Digraph,
    requests: Sequence[Tuple[int, int]],
    D: Optional[DirectedTreeDecomposition] = None,
    shared_ok: bool = True,
    dynamic_targets: Optional[dict] = None,
) -> Optional[List[Tuple[int, ...]]]:
    """Route all requested (source, sink) segments with backtracking.

    shared_ok=False demands fully vertex-disjoint paths (the sigma-linkage
    semantics); otherwise segments may share endpoints that are identical
    vertices, and internal vertices stay private everywhere.
    """
    bits = BitGraph(G)
    prune = _RegionPrune(G, D, bits) if D is not None else None
    n = bits.n
    endpoints = set()
    for s, t in requests:
        endpoints.add(s)
        endpoints.add(t)
    if not shared_ok:
        flat = [x for st in requests for x in (st[0], st[1])]
        per_pair_dupes = sum(1 for (s, t) in requests if s == t)
        if len(set(flat)) != len(flat) - per_pair_dupes:
            return None
    end_mask = 0
    for v in endpoints:
        if v not in bits.index:
            raise ValueError(f"endpoint {v} is not a vertex of the graph")
        end_mask |= 1 << bits.index[v]

    paths: List[Tuple[int, ...]] = []
    used_internal = 0
    used_endpoints = 0

    def place(i: int) -> bool:
        nonlocal used_internal, used_endpoints
        if i == len(requests):
            return True
        s, t = requests[i]
        si, ti = bits.index[s], bits.index[t]
        if not shared_ok and (used_endpoints >> si & 1 or used_endpoints >> ti & 1):
            return False
        if s == t:
            if used_internal >> si & 1:
                return False
            paths.append((s,))
            used_endpoints |= 1 << si
            if place(i + 1):
                return True
            used_endpoints &= ~(1 << si)
            paths.pop()
            return False

        seq = [si]

        def extend(cur: int, pmask: int, pstate) -> bool:
            nonlocal used_internal, used_endpoints
            for nxt in bits.out_lists[cur]:
                if pmask >> nxt & 1:
                    continue
                if prune is not None:
                    nstate = prune.step(pstate, nxt)
                    if nstate is None:
                        continue
                else:
                    nstate = None
                if nxt == ti:
                    paths.append(tuple(bits.ids[j] for j in seq) + (t,))
                    add_end = (1 << si) | (1 << ti)
                    used_endpoints |= add_end
                    used_internal |= pmask & ~(1 << si)
                    if place(i + 1):
                        return True
                    used_internal &= ~(pmask & ~(1 << si))
                    paths.pop()
                elif not (used_internal >> nxt & 1) and not (used_endpoints >> nxt & 1) and not (end_mask >> nxt & 1):
                    seq.append(nxt)
                    if extend(nxt, pmask | 1 << nxt, nstate):
                        return True
                    seq.pop()
            return False

        if used_internal >> si & 1 or used_internal >> ti & 1:
            return False
        start_state = prune.start(si) if prune is not None else None
        return extend(si, 1 << si, start_state)

    return paths if place(0) else None


def sigma_linkage(
    G: Digraph,
    sigma: Sequence[Tuple[int, int]],
    D: Optional[DirectedTreeDecomposition] = None,
    max_vertices: int = 16,
) -> Optional[Linkage]:
    """Exact sigma-linkage: pairwise vertex-disjoint paths realising sigma.

    Without a decomposition this is exhaustive routing, gated by
    max_vertices; with one, the guard-derived no-re-entry filter prunes the
    same search and the size gate is waived.
    """
    for s, t in sigma:
        if s not in G.vertex_set or t not in G.vertex_set:
            raise ValueError(f"linkage endpoint outside the graph in pair ({s},{t})")
    if D is None and len(G.vertices) > max_vertices:
        raise ValueError(
            f"host has {len(G.vertices)} vertices, above the routing bound "
            f"{max_vertices}; supply a directed tree decomposition"
        )
    if D is not None:
        rep = validate_dtd(G, D)
        if not rep.ok:
            raise ValueError("invalid decomposition: " + "; ".join(rep.violations))
    got = _route_segments(G, list(sigma), D, shared_ok=False)
    if got is None:
        return None
    return Linkage(tuple((s, t) for s, t in sigma), tuple(got))


# ---------------------------------------------------------------------------
# decomposition-guided model finding
# ---------------------------------------------------------------------------


def find_model_bounded_dtw(
    H: Digraph,
    G: Digraph,
    D: DirectedTreeDecomposition,
    kind: str,
):
    """Minor-model search guided by a decomposition: enumerate the edge
    images (and vertex images) of a normal-form witness, then complete the
    skeleton with disjoint path segments routed under the guard-derived
    no-re-entry filter.  Exact: returns None iff no model exists."""
    rep = validate_dtd(G, D)
    if not rep.ok:
        raise ValueError("invalid decomposition: " + "; ".join(rep.violations))
    if kind == "topological":
        return _guided_topological(H, G, D)
    if kind == "butterfly":
        return _guided_butterfly(H, G, D)
    raise ValueError(f"unknown minor kind {kind!r}")


def _guided_topological(H: Digraph, G: Digraph, D) -> Optional[_minors.TopologicalModel]:
    bits = BitGraph(G)
    prune = _RegionPrune(G, D, bits)
    hblocks = strong_components(H)
    hcomp = {v: hblocks.component_of(v) for v in H.vertices}
    hsize = {v: len(hblocks.component_vertex_sets[hcomp[v]]) for v in H.vertices}
    gblocks = strong_components(G)
    gscc = {v: gblocks.component_of(v) for v in G.vertices}
    gscc_size = {v: len(gblocks.component_vertex_sets[gscc[v]]) for v in G.vertices}

    horder = _minors._pattern_vertex_order(H)
    hpos = {v: i for i, v in enumerate(horder)}
    edges_at: Dict[int, List[Edge]] = {v: [] for v in H.vertices}
    for e in sorted(H.edges):
        u, v = e
        later = u if hpos[u] > hpos[v] else v
        edges_at[later].append(e)

    assign: Dict[int, int] = {}
    used: Set[int] = set()
    paths: Dict[Edge, Tuple[int, ...]] = {}

    def route(edge_list: List[Edge], ei: int, vi: int) -> Optional[_minors.TopologicalModel]:
        if ei == len(edge_list):
            return place(vi + 1)
        e = edge_list[ei]
        a, b = assign[e[0]], assign[e[1]]
        si, ti = bits.index[a], bits.index[b]
        seq = [si]

        def extend(cur: int, pstate) -> Optional[_minors.TopologicalModel]:
            for nxt in bits.out_lists[cur]:
                nstate = prune.step(pstate, nxt)
                if nstate is None:
                    continue
                vid = bits.ids[nxt]
                if nxt == ti:
                    paths[e] = tuple(bits.ids[j] for j in seq) + (vid,)
                    got = route(edge_list, ei + 1, vi)
                    if got is not None:
                        return got
                    del paths[e]
                elif vid not in used and nxt not in seq:
                    seq.append(nxt)
                    used.add(vid)
                    got = extend(nxt, nstate)
                    if got is not None:
                        return got
                    used.discard(vid)
                    seq.pop()
            return None

        return extend(si, prune.start(si))

    def place(vi: int) -> Optional[_minors.TopologicalModel]:
        if vi == len(horder):
            return _minors.TopologicalModel(dict(assign), dict(paths))
        hv = horder[vi]
        mates = [assign[w] for w in assign if hcomp[w] == hcomp[hv]]
        for g in G.vertices:
            if g in used:
                continue
            if len(G.successors(g)) < len(H.successors(hv)):
                continue
            if len(G.predecessors(g)) < len(H.predecessors(hv)):
                continue
            if hsize[hv] > 1 and gscc_size[g] < hsize[hv]:
                continue
            if mates and gscc[g] != gscc[mates[0]]:
                continue
            assign[hv] = g
            used.add(g)
            got = route(sorted(edges_at[hv]), 0, vi)
            if got is not None:
                return got
            used.discard(g)
            del assign[hv]
        return None

    return place(0)


def _guided_butterfly(H: Digraph, G: Digraph, D) -> Optional[_minors.ButterflyModel]:
    """Edge images first, then roots, then branchings grown by routing each
    terminal into the growing tree under the no-re-entry filter."""
    bits = BitGraph(G)
    prune = _RegionPrune(G, D, bits)
    hedges = sorted(H.edges)
    hverts = sorted(H.vertices)
    gedges = sorted(G.edges)
    hblocks = strong_components(H)
    hcomp = {v: hblocks.component_of(v) for v in H.vertices}
    hsize = {v: len(hblocks.component_vertex_sets[hcomp[v]]) for v in H.vertices}
    gblocks = strong_components(G)
    gscc = {v: gblocks.component_of(v) for v in G.vertices}
    gscc_size = {v: len(gblocks.component_vertex_sets[gscc[v]]) for v in G.vertices}

    owner: Dict[int, int] = {}
    emap: Dict[Edge, Edge] = {}

    def pick_edges(i: int) -> Optional[_minors.ButterflyModel]:
        if i == len(hedges):
            return pick_roots(0, {})
        hu, hv = hedges[i]
        for ge in gedges:
            x, y = ge
            if owner.get(x, hu) != hu or owner.get(y, hv) != hv:
                continue
            if hsize[hu] > 1 and gscc_size[x] < hsize[hu]:
                continue
            if hsize[hv] > 1 and gscc_size[y] < hsize[hv]:
                continue
            took = []
            if x not in owner:
                owner[x] = hu
                took.append(x)
            if y not in owner:
                owner[y] = hv
                took.append(y)
            emap[(hu, hv)] = ge
            got = pick_edges(i + 1)
            if got is not None:
                return got
            del emap[(hu, hv)]
            for z in took:
                del owner[z]
        return None

    def pick_roots(i: int, roots: Dict[int, int]) -> Optional[_minors.ButterflyModel]:
        if i == len(hverts):
            return grow_trees(roots)
        v = hverts[i]
        mates = [roots[w] for w in roots if hcomp[w] == hcomp[v]]
        for g in G.vertices:
            if owner.get(g, v) != v:
                continue
            if g in roots.values():
                continue
            if hsize[v] > 1 and gscc_size[g] < hsize[v]:
                continue
            if mates and gscc[g] != gscc[mates[0]]:
                continue
            roots[v] = g
            got = pick_roots(i + 1, roots)
            if got is not None:
                return got
            del roots[v]
        return None

    def grow_trees(roots: Dict[int, int]) -> Optional[_minors.ButterflyModel]:
        # vertices claimed by some branching (roots included); terminals join
        # as their routing jobs complete
        used: Set[int] = set(roots.values())
        tree_in: Dict[int, Set[int]] = {v: {roots[v]} for v in hverts}
        tree_out: Dict[int, Set[int]] = {v: {roots[v]} for v in hverts}
        in_edges: Dict[int, List[Edge]] = {v: [] for v in hverts}
        out_edges: Dict[int, List[Edge]] = {v: [] for v in hverts}
        jobs: List[Tuple[int, str, int]] = []
        for v in hverts:
            for e in sorted(H.edges):
                if e[1] == v:
                    jobs.append((v, "in", emap[e][1]))
                if e[0] == v:
                    jobs.append((v, "out", emap[e][0]))

        def run(j: int) -> Optional[_minors.ButterflyModel]:
            if j == len(jobs):
                model = _minors.ButterflyModel(
                    roots=dict(roots),
                    in_edges={v: tuple(in_edges[v]) for v in hverts},
                    out_edges={v: tuple(out_edges[v]) for v in hverts},
                    edge_map=dict(emap),
                )
                if _minors.validate_butterfly_model(H, G, model):
                    return None
                return model
            v, side, terminal = jobs[j]
            tree = tree_in[v] if side == "in" else tree_out[v]
            other = tree_out[v] if side == "in" else tree_in[v]
            if terminal in tree:
                return run(j + 1)
            if terminal in other or terminal in used:
                return None
            # route the terminal into the growing tree: forward walks for the
            # in-branching, backward walks for the out-branching; every
            # intermediate vertex joins the tree
            si = bits.index[terminal]
            seq = [si]

            def extend(cur: int, pstate) -> Optional[_minors.ButterflyModel]:
                nxts = bits.out_lists[cur] if side == "in" else bits.in_lists[cur]
                for nxt in nxts:
                    if side == "in":
                        nstate = prune.step(pstate, nxt)
                        if nstate is None:
                            continue
                    else:
                        nstate = None
                    gid = bits.ids[nxt]
                    if gid in tree:
                        added = [bits.ids[q] for q in seq]
                        newly_used = [q for q in added if q not in used]
                        tree.update(added)
                        used.update(added)
                        walk = [bits.ids[q] for q in seq] + [gid]
                        if side == "in":
                            new_edges = list(zip(walk, walk[1:]))
                            in_edges[v].extend(new_edges)
                        else:
                            rev = list(reversed(walk))
                            new_edges = list(zip(rev, rev[1:]))
                            out_edges[v].extend(new_edges)
                        got = run(j + 1)
                        if got is not None:
                            return got
                        for _ in new_edges:
                            (in_edges if side == "in" else out_edges)[v].pop()
                        for q in added:
                            tree.discard(q)
                        for q in newly_used:
                            used.discard(q)
                    elif gid not in used and gid not in other and nxt not in seq and owner.get(gid, v) == v:
                        seq.append(nxt)
                        got = extend(nxt, nstate)
                        if got is not None:
                            return got
                        seq.pop()
                return None

            return extend(si, prune.start(si) if side == "in" else None)

        return run(0)

    return pick_edges(0)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def dtd_to_json_dict(D: DirectedTreeDecomposition) -> dict:
    return {
        "tree": {
            "root": D.tree.root,
            "parent": {str(c): p for c, p in sorted(D.tree.parent.items())},
        },
        "beta": {str(t): sorted(D.bag(t)) for t in sorted(D.tree.nodes)},
        "gamma": {str(c): sorted(D.guard(c)) for c in sorted(D.gamma)},
    }


def dtd_to_json(D: DirectedTreeDecomposition) -> str:
    return json.dumps(dtd_to_json_dict(D), separators=(",", ":"))


def dtd_from_json_dict(d: dict) -> DirectedTreeDecomposition:
    parent = {int(c): p for c, p in d["tree"]["parent"].items()}
    root = d["tree"]["root"]
    nodes = tuple(sorted({root} | set(parent) | set(parent.values())))
    if not nodes:
        nodes = (root,)
    return DirectedTreeDecomposition(
        tree=Arborescence(nodes, root, parent),
        beta={int(t): frozenset(vs) for t, vs in d["beta"].items()},
        gamma={int(c): frozenset(vs) for c, vs in d.get("gamma", {}).items()},
    )


def dtd_from_json(s: str) -> DirectedTreeDecomposition:
    return dtd_from_json_dict(json.loads(s))
