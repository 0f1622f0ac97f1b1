"""Oracle-backed claim suites.

Each suite re-derives a family of structural or counterexample claims at
small orders with the brute-force oracles and reports one result per claim.
The CLI ``verify-claims`` command and the acceptance tests both run these.

Two families of claims about the grid attachments are recorded as stated
even though the oracle refutes them; see the claim details and the project
notes.  The refutations are themselves oracle-verified witnesses, so those
claims stay red honestly rather than being weakened.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple

from . import dtd as _dtd
from . import engine as _engine
from . import minors as _minors
from . import oracle as _oracle
from .digraph import (
    Digraph,
    cycle_graph,
    delete_vertices,
    induced_subgraph,
    is_isomorphic,
    is_vertex_cyclic,
    max_total_degree,
    path_graph,
    strong_components,
)
from .generators import (
    acyclic_grid,
    attach_to_grid,
    attach_to_wall,
    corpus_graphs,
    corpus_minor_pairs,
    cylindrical_grid,
    cylindrical_wall,
    digon_pattern,
    left_acyclic_attachment,
    random_digraph,
    three_component_attachment,
    two_cycles_pattern,
    two_edge_attachment,
)


@dataclass
class ClaimResult:
    name: str
    ok: bool
    detail: str = ""


def _budget(timeout: Optional[float]) -> _oracle.OracleBudget:
    return _oracle.OracleBudget(max_vertices=80, timeout=timeout)


# -- the named patterns used across the suites --------------------------------


def pattern_degree4() -> Digraph:
    """Two triangles sharing a vertex; the shared vertex has total degree 4."""
    return Digraph(range(5), [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)])


def pattern_branching() -> Digraph:
    """A digon with edges into two other digons (block graph branches)."""
    return Digraph(range(6), [(0, 1), (1, 0), (2, 3), (3, 2), (4, 5), (5, 4), (0, 2), (1, 4)])


def pattern_double_edge() -> Digraph:
    """Two digons linked by two distinct edges."""
    return Digraph(range(4), [(0, 1), (1, 0), (2, 3), (3, 2), (0, 2), (1, 3)])


def pattern_theta_digon() -> Digraph:
    """A theta component (not embeddable into a subdivided digon) with an
    edge to a digon."""
    theta = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 6), (6, 3)]
    return Digraph(range(9), theta + [(7, 8), (8, 7), (4, 7)])


def pattern_small_middle() -> Digraph:
    """Triangle -> digon -> triangle; the middle component is smaller."""
    return Digraph(
        range(8),
        [(0, 1), (1, 2), (2, 0), (3, 4), (4, 3), (5, 6), (6, 7), (7, 5), (0, 3), (4, 5)],
    )


# ---------------------------------------------------------------------------
# attachment claims (packing numbers and deletion robustness)
# ---------------------------------------------------------------------------


def _packing_claim(name, H, G, kind, expected, budget, out, strategy="auto"):
    got, _ = _oracle.oracle_max_packing(H, G, kind, budget, strategy=strategy)
    ok = got == expected
    detail = f"max packing {got}" + ("" if ok else f", claim states {expected}")
    out.append(ClaimResult(name, ok, detail))
    return got


def _robust_claim(name, H, G, kind, budget, out, strategy="auto"):
    missing = []
    for v in G.vertices:
        if not _oracle.oracle_has_minor(H, delete_vertices(G, [v]), kind, budget, strategy):
            missing.append(v)
    out.append(
        ClaimResult(
            name,
            not missing,
            "pattern embeds after every single-vertex deletion"
            if not missing
            else f"fails after deleting {missing[:5]}",
        )
    )


def suite_attachments(max_order: int = 3, seed: int = 0, timeout: Optional[float] = None) -> List[ClaimResult]:
    budget = _budget(timeout)
    out: List[ClaimResult] = []

    # grid attachments, butterfly, order 3, as stated (cycle patterns): the
    # no-two-disjoint-models half is refuted by the surviving concentric
    # cycles; the oracle value is reported in the detail
    for hname, H in (("3cycle", cycle_graph(3)), ("digon", digon_pattern())):
        G = attach_to_grid(H, min(H.edges), 3)
        _packing_claim(
            f"grid-attachment[{hname},k=3] packing=1 (as stated; hypothesis "
            "needs a pattern outside all grids)", H, G, "butterfly", 1, budget, out,
        )
        _robust_claim(
            f"grid-attachment[{hname},k=3] single-deletion robust",
            H, G, "butterfly", budget, out,
        )

    # wall attachments with the degree-4 pattern (the construction's actual
    # hypothesis): both halves hold
    H4 = pattern_degree4()
    for k in range(2, max_order + 1):
        W = attach_to_wall(H4, (0, 1), k)
        _packing_claim(
            f"wall-attachment[degree4,k={k}] packing=1",
            H4, W, "topological", 1, budget, out, strategy="guided",
        )
        _robust_claim(
            f"wall-attachment[degree4,k={k}] single-deletion robust",
            H4, W, "topological", budget, out, strategy="guided",
        )

    # two-edge attachments (double-edge pattern), butterfly
    H2e = pattern_double_edge()
    for k in range(2, max_order + 1):
        G = two_edge_attachment(H2e, (0, 2), (1, 3), k)
        _packing_claim(
            f"two-edge-attachment[k={k}] packing=1", H2e, G, "butterfly", 1, budget, out,
        )
        _robust_claim(
            f"two-edge-attachment[k={k}] single-deletion robust",
            H2e, G, "butterfly", budget, out,
        )

    # three-component attachments (small middle), butterfly: at order 3 two
    # models weave through distinct copies, which the oracle then reports
    H5 = pattern_small_middle()
    for k in range(2, max_order + 1):
        G = three_component_attachment(H5, (0, 3), (4, 5), k)
        _packing_claim(
            f"three-component-attachment[k={k}] packing=1"
            + ("" if k == 2 else " (as stated; refuted by cross-copy weaving)"),
            H5, G, "butterfly", 1, budget, out,
        )
        _robust_claim(
            f"three-component-attachment[k={k}] single-deletion robust",
            H5, G, "butterfly", budget, out,
        )

    # left acyclic attachments: packing for the branching pattern, plus the
    # embeds-after-small-deletion claim for the benign two-cycles pattern
    H1 = pattern_branching()
    for n in range(2, max_order + 1):
        G = left_acyclic_attachment(H1, 0, 1, (0, 2), (3, 2), n)
        _packing_claim(
            f"left-acyclic-attachment[branching,n={n}] packing=1",
            H1, G, "butterfly", 1, budget, out,
        )
        _robust_claim(
            f"left-acyclic-attachment[branching,n={n}] single-deletion robust",
            H1, G, "butterfly", budget, out,
        )

    H3 = pattern_theta_digon()
    res = _engine.classify_vertex_cyclic(H3, "topological")
    for n in range(2, max_order + 1):
        G = res.generator(n)
        _packing_claim(
            f"left-acyclic-attachment[theta,n={n}] packing=1",
            H3, G, "topological", 1, budget, out, strategy="guided",
        )
        _robust_claim(
            f"left-acyclic-attachment[theta,n={n}] single-deletion robust",
            H3, G, "topological", budget, out, strategy="guided",
        )

    H2 = two_cycles_pattern(3, 3)
    for n in range(2, max_order + 1):
        G = left_acyclic_attachment(H2, 0, 1, (0, 3), (5, 3), n)
        ok = _oracle.oracle_has_minor(H2, G, "topological", budget)
        out.append(ClaimResult(f"left-acyclic-attachment[two-cycles,n={n}] embeds", ok))
        _robust_claim(
            f"left-acyclic-attachment[two-cycles,n={n}] single-deletion robust",
            H2, G, "topological", budget, out,
        )
    return out


# ---------------------------------------------------------------------------
# structural audits
# ---------------------------------------------------------------------------


def suite_structure(max_order: int = 5, seed: int = 2024, timeout: Optional[float] = None) -> List[ClaimResult]:
    out: List[ClaimResult] = []
    for k in range(1, max_order + 1):
        G, lab = cylindrical_grid(k)
        ok = (
            len(G.vertices) == 2 * k * k
            and len(G.edges) == 4 * k * k - 2 * k
            and all(len(set(c) & set(p)) == 1 for c in lab.cycles for p in lab.paths)
        )
        out.append(ClaimResult(f"grid[{k}] counts and crossings", ok,
                               f"|V|={len(G.vertices)}, |E|={len(G.edges)}"))
    for k in range(1, max_order + 1):
        W, _ = cylindrical_wall(k)
        G, _ = cylindrical_grid(k)
        contracted = W
        changed = True
        while changed:
            changed = False
            for e in sorted(contracted.edges):
                u, v = e
                lu = contracted.labels.get(u, "")
                lv = contracted.labels.get(v, "")
                if lu.endswith("_t") and lv.endswith("_h") and lu[:-2] == lv[:-2]:
                    contracted = _split_contract(contracted, e)
                    changed = True
                    break
        ok = max_total_degree(W) <= 3 and is_isomorphic(contracted, G)
        out.append(ClaimResult(f"wall[{k}] degree cap and contraction to the grid", ok))
    for k in range(1, max_order + 1):
        A, lab = acyclic_grid(k)
        acyclic = all(len(c) == 1 for c in strong_components(A).component_vertex_sets)
        rows_ok = all(
            A.has_edge(p[i], p[i + 1]) for p in lab.paths for i in range(len(p) - 1)
        )
        out.append(ClaimResult(f"acyclic-grid[{k}] acyclic with ordered rows/columns",
                               acyclic and rows_ok))
    # decomposition validator: accepted and corrupted instances
    rng = random.Random(seed)
    accepted = 0
    rejected = 0
    graphs = corpus_graphs(seed, 10, max_n=8, max_m=12)
    for i, G in enumerate(graphs):
        D = _dtd.compute_special_dtd(G)
        if _dtd.validate_dtd(G, D).ok:
            accepted += 1
        bad = _corrupt_dtd(G, D, rng, i)
        if bad is not None and not _dtd.validate_dtd(G, bad).ok:
            rejected += 1
    out.append(ClaimResult("validator accepts 10 valid decompositions", accepted == 10, f"{accepted}/10"))
    out.append(ClaimResult("validator rejects 10 corrupted decompositions", rejected == 10, f"{rejected}/10"))
    # guard-coverage property: on every valid decomposition, every node of
    # the minimal subtree spanning a strongly connected subgraph meets it
    ok = True
    detail = ""
    for G in corpus_graphs(seed + 1, 12, max_n=8, max_m=12):
        D = _dtd.compute_special_dtd(G)
        for comp in strong_components(G).component_vertex_sets:
            if len(comp) < 2:
                continue
            sub = induced_subgraph(G, comp)
            if not _subtree_guard_property(G, D, sub):
                ok = False
                detail = f"failed on |V|={len(G.vertices)} component {sorted(comp)}"
    out.append(ClaimResult("guard sets meet every spanned strongly connected subgraph", ok, detail))
    return out


def _split_contract(G: Digraph, e) -> Digraph:
    from .digraph import butterfly_contract

    return butterfly_contract(G, e)


def _corrupt_dtd(G: Digraph, D: _dtd.DirectedTreeDecomposition, rng: random.Random, i: int):
    """Deterministically break either the partition or a guard."""
    beta = {t: set(D.bag(t)) for t in D.tree.nodes}
    gamma = {c: set(D.guard(c)) for c in D.gamma}
    mode = i % 3
    if mode == 0 and len(G.vertices) >= 1:
        # duplicate a vertex into a second bag (or drop it when single node)
        v = min(G.vertices)
        targets = [t for t in D.tree.nodes if v not in beta[t]]
        if targets:
            beta[targets[0]].add(v)
        else:
            beta[D.tree.root].discard(v)
    elif mode == 1 and gamma:
        # erase the largest guard entirely
        c = max(gamma, key=lambda c: (len(gamma[c]), c))
        if not gamma[c]:
            return _corrupt_dtd(G, D, rng, i + 2)
        gamma[c] = set()
        # guard removal only breaks normality when the region really needed
        # it; fall back to a partition break otherwise
        cand = _dtd.DirectedTreeDecomposition(
            D.tree,
            {t: frozenset(bs) for t, bs in beta.items()},
            {c2: frozenset(gs) for c2, gs in gamma.items()},
        )
        if _dtd.validate_dtd(G, cand).ok:
            return _corrupt_dtd(G, D, rng, i + 2)
    else:
        v = max(G.vertices)
        for t in D.tree.nodes:
            beta[t].discard(v)
    return _dtd.DirectedTreeDecomposition(
        D.tree,
        {t: frozenset(bs) for t, bs in beta.items()},
        {c: frozenset(gs) for c, gs in gamma.items()},
    )


def _subtree_guard_property(G, D, H) -> bool:
    touched = [t for t in D.tree.nodes if D.bag(t) & H.vertex_set]
    if not touched:
        return True
    # minimal subtree spanning the touched nodes
    paths = []
    for t in touched:
        path = [t]
        while path[-1] != D.tree.root:
            path.append(D.tree.parent[path[-1]])
        paths.append(path)
    common = None
    for path in paths:
        s = set(path)
        common = s if common is None else (common & s)
    # deepest common ancestor
    anc = max(common, key=lambda t: len(_path_to_root(D, t)))
    span = set()
    for path in paths:
        for t in path:
            span.add(t)
            if t == anc:
                break
    return all(D.gamma_at(t) & H.vertex_set for t in span)


def _path_to_root(D, t):
    path = [t]
    while path[-1] != D.tree.root:
        path.append(D.tree.parent[path[-1]])
    return path


# ---------------------------------------------------------------------------
# classification coherence
# ---------------------------------------------------------------------------


def suite_classification(max_order: int = 2, seed: int = 0, timeout: Optional[float] = None) -> List[ClaimResult]:
    out: List[ClaimResult] = []
    cases = [
        ("degree4", pattern_degree4(), "degree"),
        ("branching", pattern_branching(), "item1"),
        ("double-edge", pattern_double_edge(), "item2"),
        ("theta", pattern_theta_digon(), "item3"),
        ("small-middle", pattern_small_middle(), "item5"),
    ]
    for name, H, item in cases:
        res = _engine.classify_vertex_cyclic(H, "topological")
        ok = res.verdict == "fails-EP" and res.item == item and res.generator is not None
        detail = f"verdict {res.verdict}, item {res.item}, generator {res.generator_name}"
        if ok:
            inst = res.generator(max_order)
            detail += f"; instance |V|={len(inst.vertices)}"
        out.append(ClaimResult(f"classify[{name}] -> {item}", ok, detail))
    cand = two_cycles_pattern(3, 3)
    for kind in ("topological", "butterfly"):
        res = _engine.classify_vertex_cyclic(cand, kind)
        out.append(ClaimResult(f"classify[two-equal-3cycles,{kind}] -> candidate",
                               res.verdict == "candidate", res.reason))
    return out


# ---------------------------------------------------------------------------
# corpus agreement suites
# ---------------------------------------------------------------------------


def suite_minor_oracle(max_order: int = 0, seed: int = 11, timeout: Optional[float] = None,
                       count: int = 200) -> List[ClaimResult]:
    budget = _oracle.OracleBudget(max_vertices=12, timeout=timeout)
    pairs = corpus_minor_pairs(seed, count)
    disagreements = []
    strategy_splits = []
    invalid = []
    for i, (H, G) in enumerate(pairs):
        replay = _oracle.oracle_has_minor(H, G, "butterfly", budget, "replay")
        treelike = _oracle.oracle_has_minor(H, G, "butterfly", budget, "treelike")
        mb = _minors.find_butterfly_model(H, G)
        if replay != treelike:
            strategy_splits.append(i)
        if (mb is not None) != replay:
            disagreements.append(("butterfly", i))
        if mb is not None and _minors.validate_butterfly_model(H, G, mb):
            invalid.append(("butterfly", i))
        plain = _oracle.oracle_has_minor(H, G, "topological", budget, "plain")
        mt = _minors.find_topological_model(H, G)
        if (mt is not None) != plain:
            disagreements.append(("topological", i))
        if mt is not None and _minors.validate_topological_model(H, G, mt):
            invalid.append(("topological", i))
        chain = _oracle.chain_structure(H)
        if chain is not None:
            structured = _oracle.oracle_has_minor(H, G, "butterfly", budget, "structured")
            if structured != replay:
                strategy_splits.append(("structured", i))
    out = [
        ClaimResult(
            f"finder verdicts match the oracle on {count} pairs",
            not disagreements, f"disagreements: {disagreements[:5]}",
        ),
        ClaimResult(
            "replay, tree-like and structured butterfly oracles agree",
            not strategy_splits, f"splits: {strategy_splits[:5]}",
        ),
        ClaimResult("every returned model passes its validator", not invalid,
                    f"invalid: {invalid[:5]}"),
    ]
    return out


def suite_linkage(max_order: int = 0, seed: int = 7, timeout: Optional[float] = None,
                  count: int = 100) -> List[ClaimResult]:
    budget = _oracle.OracleBudget(max_vertices=12, timeout=timeout)
    rng = random.Random(seed)
    disagreements = []
    invalid = []
    for i in range(count):
        n = rng.randint(3, 10)
        m = rng.randint(n - 1, min(14, n * (n - 1)))
        G = random_digraph(rng, n, m)
        npairs = rng.randint(1, 2)
        vs = list(G.vertices)
        sigma = []
        for _ in range(npairs):
            sigma.append((rng.choice(vs), rng.choice(vs)))
        got_plain = _dtd.sigma_linkage(G, sigma)
        D = _dtd.compute_special_dtd(G)
        got_guided = _dtd.sigma_linkage(G, sigma, D)
        got_oracle = _oracle.oracle_sigma_linkage(G, sigma, budget)
        if (got_plain is None) != (got_oracle is None) or (got_guided is None) != (got_oracle is None):
            disagreements.append(i)
        for got in (got_plain, got_guided):
            if got is not None and _dtd.validate_linkage(G, got):
                invalid.append(i)
    # the acyclic-grid cases
    A, lab = acyclic_grid(2)
    c = lab.coordinates
    fwd = _dtd.sigma_linkage(A, [(c["v_1_1"], c["v_2_2"])])
    back = _dtd.sigma_linkage(A, [(c["v_2_2"], c["v_1_1"])])
    grid_ok = fwd is not None and back is None
    return [
        ClaimResult(f"sigma-linkage matches the oracle on {count} instances",
                    not disagreements, f"disagreements: {disagreements[:5]}"),
        ClaimResult("returned linkages satisfy the disjointness invariant",
                    not invalid, f"invalid: {invalid[:5]}"),
        ClaimResult("acyclic grid forward linkage found, backward absent", grid_ok),
    ]


def suite_bounded_dtw(max_order: int = 0, seed: int = 5, timeout: Optional[float] = None,
                      count: int = 25) -> List[ClaimResult]:
    budget = _oracle.OracleBudget(max_vertices=12, timeout=timeout)
    cfg = _engine.EPConfig()
    rng = random.Random(seed)
    patterns = [cycle_graph(3), digon_pattern()]
    bound_breaks = []
    arm_breaks = []
    invalid = []
    tried = 0
    i = 0
    while tried < count:
        i += 1
        n = rng.randint(3, 7)
        m = rng.randint(n - 1, min(12, n * (n - 1)))
        G = random_digraph(rng, n, m)
        H = patterns[i % len(patterns)]
        kind = "butterfly" if i % 2 == 0 else "topological"
        w, D = _dtd.exact_dtw(G)
        tried += 1
        for k in (1, 2, 3):
            result = _engine.pack_or_hit_bounded_dtw(H, G, D, k, kind, cfg)
            truth, _ = _oracle.oracle_max_packing(H, G, kind, budget)
            if result.is_packing:
                if len(result.models) != k and not (k > truth):
                    arm_breaks.append((i, k))
                if truth < k:
                    arm_breaks.append((i, k, "packing above ground truth"))
            else:
                if truth >= k:
                    arm_breaks.append((i, k, "hit while packable"))
                if len(result.hitting_set) > k * (w + 1):
                    bound_breaks.append((i, k))
                if not result.verified:
                    invalid.append((i, k))
    return [
        ClaimResult(f"bounded-width engine arms match the oracle on {count} instances",
                    not arm_breaks, f"breaks: {arm_breaks[:5]}"),
        ClaimResult("hitting sets respect k*(w+1)", not bound_breaks, f"breaks: {bound_breaks[:5]}"),
        ClaimResult("hitting sets are verified", not invalid, f"unverified: {invalid[:5]}"),
    ]


def suite_bipartite(max_order: int = 0, seed: int = 0, timeout: Optional[float] = None) -> List[ClaimResult]:
    cfg = _engine.EPConfig()
    budget = _oracle.OracleBudget(max_vertices=16, timeout=timeout)
    out: List[ClaimResult] = []
    instances = _bipartite_instances()
    pattern = two_cycles_pattern(3, 2)
    arm_breaks = []
    bound_breaks = []
    for name, G in instances:
        result = _engine.pack_or_hit_bipartite_clusters(G, 3, 2, 2, cfg)
        truth, _ = _oracle.oracle_max_packing(pattern, G, "topological", budget)
        if result.is_packing:
            if truth < 2:
                arm_breaks.append((name, "packing above truth"))
        else:
            if truth >= 2:
                arm_breaks.append((name, "hit while packable"))
            if result.bound and len(result.hitting_set) > result.bound["value"]:
                bound_breaks.append(name)
            if not result.verified:
                arm_breaks.append((name, "unverified"))
    out.append(ClaimResult("bipartite-cluster engine arms are sound and match the oracle",
                           not arm_breaks, f"breaks: {arm_breaks}"))
    out.append(ClaimResult("bipartite-cluster hitting sets respect the quoted bound",
                           not bound_breaks, f"breaks: {bound_breaks}"))
    return out


def _bipartite_instances() -> List[Tuple[str, Digraph]]:
    tri = lambda s: [(s, s + 1), (s + 1, s + 2), (s + 2, s)]
    digon = lambda s: [(s, s + 1), (s + 1, s)]
    return [
        ("two wirings", Digraph(range(10), tri(0) + digon(3) + [(2, 3)] + tri(5) + digon(8) + [(7, 8)])),
        ("one wiring", Digraph(range(5), tri(0) + digon(3) + [(2, 3)])),
        ("shared bottleneck", Digraph(
            range(12),
            tri(0) + tri(3) + digon(6) + digon(8) + [(2, 10), (5, 10), (10, 11), (11, 6), (11, 8)],
        )),
        ("cluster only", Digraph(range(6), tri(0) + tri(3) + [(2, 3), (5, 0)])),
        ("empty", Digraph()),
        ("4-cycles to digons", Digraph(
            range(12),
            [(0, 1), (1, 2), (2, 3), (3, 0)] + digon(4) + [(3, 4)]
            + [(6, 7), (7, 8), (8, 9), (9, 6)] + digon(10) + [(9, 10)],
        )),
    ]


def suite_two_cycles(max_order: int = 3, seed: int = 0, timeout: Optional[float] = None) -> List[ClaimResult]:
    cfg = _engine.EPConfig()
    budget = _budget(timeout)
    h2 = two_cycles_pattern(3, 3)
    out: List[ClaimResult] = []
    # disjoint copies: packing expected
    G = Digraph(range(14), list(h2.edges) + [(a + 7, b + 7) for a, b in h2.edges])
    r = _engine.pack_or_hit_two_cycles(h2, G, 2, cfg)
    out.append(ClaimResult("two-cycles engine packs two disjoint copies",
                           r.is_packing and len(r.models) == 2, r.kind))
    # attachments: the engine arm must match the oracle packing number; at
    # n=2 that ground truth is a single model, so a verified hitting set
    for n in range(2, max_order + 1):
        A = left_acyclic_attachment(h2, 0, 1, (0, 3), (5, 3), n)
        truth, _ = _oracle.oracle_max_packing(h2, A, "topological", budget)
        r = _engine.pack_or_hit_two_cycles(h2, A, 2, cfg)
        if truth >= 2:
            ok = r.is_packing and len(r.models) == 2
        else:
            ok = (not r.is_packing) and r.verified
        if n == 2:
            ok = ok and truth == 1
        out.append(ClaimResult(
            f"two-cycles engine matches the oracle on the left-acyclic attachment (n={n})",
            ok, f"arm {r.kind}, oracle packing {truth}",
        ))
    # DAG: empty hitting set
    r = _engine.pack_or_hit_two_cycles(h2, path_graph(6), 2, cfg)
    out.append(ClaimResult("two-cycles engine returns the empty hitting set on a DAG",
                           (not r.is_packing) and not r.hitting_set and r.verified, r.kind))
    # mirrored pattern (short cycle first)
    h23 = two_cycles_pattern(2, 3)
    G2 = Digraph(range(10), list(h23.edges) + [(a + 5, b + 5) for a, b in h23.edges])
    r = _engine.pack_or_hit_two_cycles(h23, G2, 2, cfg)
    out.append(ClaimResult("two-cycles engine handles the mirrored pattern",
                           r.is_packing and len(r.models) == 2, r.kind))
    return out


SUITES: Dict[str, Callable[..., List[ClaimResult]]] = {
    "attachments": suite_attachments,
    "structure": suite_structure,
    "classification": suite_classification,
    "minor-oracle": suite_minor_oracle,
    "linkage": suite_linkage,
    "bounded-dtw": suite_bounded_dtw,
    "bipartite": suite_bipartite,
    "two-cycles": suite_two_cycles,
}
