"""Stable-curve dual graphs and the graph-to-Jacobian-degeneration pipeline.

A dual graph is a connected multigraph (loops and parallel edges allowed).
Its cycle space carries the graphic quadratic form B^T B for a fundamental
cycle basis B; the pipeline feeds that form through the Delaunay, section
and secondary-cone machinery and compares the extra-component flag with
planarity, which is decided exactly by exhaustive Kuratowski-subdivision
search with an explicit witness.
"""

from __future__ import annotations

import itertools
from collections import deque
from fractions import Fraction

from .delaunay import delaunay_decomposition
from .errors import Disconnected, PerdelError
from .linalg import Matrix
from .seccone import secondary_cone
from .sheaf import h0_general


class DualGraph:
    """Multigraph given by a vertex count and an edge list (loops allowed)."""

    def __init__(self, vertex_count, edges, name=None):
        self.vertex_count = vertex_count
        self.edges = [tuple(sorted((int(u), int(v)))) for u, v in edges]
        self.name = name
        for u, v in self.edges:
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise ValueError("edge endpoint out of range")

    def __repr__(self):
        label = self.name or f"{self.vertex_count}v{len(self.edges)}e"
        return f"DualGraph({label})"

    def degree(self, v):
        return sum((u == v) + (w == v) for u, w in self.edges)

    def is_connected(self):
        if self.vertex_count == 0:
            return False
        seen = {0}
        queue = deque([0])
        adj = [[] for _ in range(self.vertex_count)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        return len(seen) == self.vertex_count

    def is_stable(self):
        """Every vertex has degree >= 3 (a loop contributes 2)."""
        return all(self.degree(v) >= 3 for v in range(self.vertex_count))

    def to_json(self):
        return {"vertices": self.vertex_count, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_json(cls, data):
        return cls(int(data["vertices"]), [tuple(e) for e in data["edges"]])

    def canonical_form(self):
        best = None
        for perm in itertools.permutations(range(self.vertex_count)):
            cand = tuple(sorted(tuple(sorted((perm[u], perm[v]))) for u, v in self.edges))
            if best is None or cand < best:
                best = cand
        return (self.vertex_count, best)


def betti(graph: DualGraph) -> int:
    """First Betti number E - V + 1 of a connected multigraph."""
    if not graph.is_connected():
        raise Disconnected("Betti number requires a connected graph")
    return len(graph.edges) - graph.vertex_count + 1


def spanning_tree(graph: DualGraph):
    """Edge indices of a BFS spanning tree (deterministic)."""
    if not graph.is_connected():
        raise Disconnected("spanning tree requires a connected graph")
    parent = {0: None}
    parent_edge = {}
    order = deque([0])
    adj = [[] for _ in range(graph.vertex_count)]
    for idx, (u, v) in enumerate(graph.edges):
        if u != v:
            adj[u].append((v, idx))
            adj[v].append((u, idx))
    while order:
        u = order.popleft()
        for w, idx in adj[u]:
            if w not in parent:
                parent[w] = u
                parent_edge[w] = idx
                order.append(w)
    return parent, parent_edge


def fundamental_cycle_matrix(graph: DualGraph, tree=None) -> Matrix:
    """E x g signed incidence matrix of the fundamental cycles.

    Each non-tree edge closes one cycle through the tree; loops are their
    own cycles and meet no other edge.
    """
    g = betti(graph)
    if tree is None:
        parent, parent_edge = spanning_tree(graph)
    else:
        parent, parent_edge = tree
    tree_edges = set(parent_edge.values())
    depth = {0: 0}
    stack = [0]
    order = []
    while stack:
        u = stack.pop()
        order.append(u)
        for w, pu in parent.items():
            if pu == u and w not in depth:
                depth[w] = depth[u] + 1
                stack.append(w)

    def path_to_root(v):
        out = []
        while parent[v] is not None:
            out.append((parent_edge[v], v))
            v = parent[v]
        return out

    cols = []
    for idx, (u, v) in enumerate(graph.edges):
        if idx in tree_edges:
            continue
        col = [0] * len(graph.edges)
        col[idx] = 1
        if u != v:
            pu = {e for e, _ in path_to_root(u)}
            pv = {e for e, _ in path_to_root(v)}
            # cycle uses the symmetric difference of the two root paths
            for e, child in path_to_root(v):
                if e not in pu:
                    a, b = graph.edges[e]
                    # walking from v toward the root: traverse child -> parent
                    col[e] = 1 if (a == child) else -1
            for e, child in path_to_root(u):
                if e not in pv:
                    a, b = graph.edges[e]
                    col[e] = -1 if (a == child) else 1
        cols.append(col)
    if len(cols) != g:
        raise AssertionError("fundamental cycle count mismatch")
    return Matrix([[Fraction(cols[j][i]) for j in range(g)]
                   for i in range(len(graph.edges))], cols=g)


def graphic_form(graph: DualGraph, tree=None) -> Matrix:
    """Gram matrix B^T B of the fundamental cycle basis (positive definite)."""
    b = fundamental_cycle_matrix(graph, tree)
    return b.transpose().mul(b)


class PlanarityVerdict:
    def __init__(self, planar, witness=None):
        self.planar = planar
        self.witness = witness

    def __repr__(self):
        return f"PlanarityVerdict(planar={self.planar})"

    def to_json(self):
        data = {"planar": self.planar}
        if self.witness is not None:
            data["witness"] = {
                "kind": self.witness["kind"],
                "branch_vertices": list(self.witness["branch_vertices"]),
                "paths": [list(p) for p in self.witness["paths"]],
            }
        return data


def _simple_graph(graph):
    simple = {}
    for idx, (u, v) in enumerate(graph.edges):
        if u == v:
            continue
        simple.setdefault((u, v), idx)
    adj = {v: set() for v in range(graph.vertex_count)}
    for (u, v) in simple:
        adj[u].add(v)
        adj[v].add(u)
    return simple, adj

def _paths_disjoint_search(adj, pairs, banned, used, path_edges):
    """Backtracking search for internally-disjoint paths joining `pairs`."""
    if not pairs:
        return []
    (s, t), rest = pairs[0], pairs[1:]

    def extend(v, visited, edges):
        if v == t:
            tail = _paths_disjoint_search(
                adj, rest, banned, used | (visited - {s, t}), path_edges + [edges])
            if tail is not None:
                return [edges] + tail
            return None
        for w in sorted(adj[v]):
            if w in visited or w in used:
                continue
            if w in banned and w != t:
                continue
            out = extend(w, visited | {w}, edges + [(v, w)])
            if out is not None:
                return out
        return None

    return extend(s, {s}, [])


def _find_subdivision(graph, kind):
    """Search for a K5 or K33 subdivision; returns a witness dict or None."""
    simple, adj = _simple_graph(graph)
    if kind == "K5":
        branch_deg, groups = 4, None
    else:
        branch_deg, groups = 3, (3, 3)
    candidates = [v for v in range(graph.vertex_count)
                  if len(adj[v]) >= branch_deg]
    need = 5 if kind == "K5" else 6
    if len(candidates) < need:
        return None
    for branch in itertools.combinations(candidates, need):
        if kind == "K5":
            pairs = list(itertools.combinations(branch, 2))
            partitions = [pairs]
            sides = [branch]
        else:
            partitions = []
            sides = []
            rest = branch[1:]
            for left_rest in itertools.combinations(rest, 2):
                left = (branch[0],) + left_rest
                right = tuple(v for v in branch if v not in left)
                partitions.append([(a, b) for a in left for b in right])
                sides.append((left, right))
        for pairs in partitions:
            banned = set(branch)
            found = _paths_disjoint_search(adj, pairs, banned, set(), [])
            if found is not None:
                paths = []
                for p in found:
                    paths.append([simple[tuple(sorted(e))] for e in p])
                return {
                    "kind": kind,
                    "branch_vertices": list(branch),
                    "paths": paths,
                }
    return None


def planarity(graph: DualGraph) -> PlanarityVerdict:
    """Exact planarity with a Kuratowski-subdivision witness when non-planar.

    Loops and parallel edges do not affect planarity; the subdivision
    search is exhaustive, so "no witness found" proves planarity.
    """
    for kind in ("K33", "K5"):
        witness = _find_subdivision(graph, kind)
        if witness is not None:
            return PlanarityVerdict(False, witness)
    return PlanarityVerdict(True)


def verify_kuratowski_witness(graph: DualGraph, witness) -> bool:
    """Check that suppressing degree-2 vertices of the witness yields K5/K33."""
    edges = set()
    for p in witness["paths"]:
        edges.update(p)
    sub_edges = [graph.edges[i] for i in sorted(edges)]
    deg = {}
    for u, v in sub_edges:
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
    branch = sorted(witness["branch_vertices"])
    if any(deg.get(b, 0) < 3 for b in branch):
        return False
    # walk each path and confirm its endpoints are branch vertices
    adjacency = {}
    for p in witness["paths"]:
        ends = []
        verts = {}
        for i in p:
            u, v = graph.edges[i]
            verts[u] = verts.get(u, 0) + 1
            verts[v] = verts.get(v, 0) + 1
        ends = sorted(v for v, c in verts.items() if c == 1)
        if len(ends) != 2 or any(e not in branch for e in ends):
            return False
        adjacency.setdefault(tuple(ends), 0)
        adjacency[tuple(ends)] += 1
    pair_count = len(witness["paths"])
    if witness["kind"] == "K5":
        return pair_count == 10 and len(adjacency) == 10
    if pair_count != 9 or len(adjacency) != 9:
        return False
    # bipartite structure: each branch vertex meets exactly 3 paths
    meet = {b: 0 for b in branch}
    for (a, b), c in adjacency.items():
        meet[a] += c
        meet[b] += c
    return all(c == 3 for c in meet.values())


def torelli_report(graph: DualGraph) -> dict:
    """Full pipeline: graphic form -> Delaunay -> h0 -> cone -> ET flag."""
    genus = betti(graph)
    if genus < 1:
        raise PerdelError("pipeline requires first Betti number >= 1")
    if genus > 8:
        raise PerdelError("pipeline capped at genus 8")
    verdict = planarity(graph)
    q = graphic_form(graph)
    decomp = delaunay_decomposition(q)
    report = h0_general(decomp)
    cert = secondary_cone(decomp)
    if not cert.is_delaunay:
        raise AssertionError("graphic form failed its own round-trip")
    et = report.h0 > cert.voronoi_stratum_dim
    out = {
        "name": graph.name,
        "genus": genus,
        "planar": verdict.planar,
        "cell_classes": len(decomp.cells),
        "vertex_counts": list(decomp.vertex_count_multiset()),
        "h0": report.h0,
        "cone_dim": cert.voronoi_stratum_dim,
        "et_flag": et,
        "conjecture_consistent": et == (not verdict.planar),
    }
    if verdict.witness is not None:
        out["kuratowski_witness"] = PlanarityVerdict(False, verdict.witness).to_json()["witness"]
    return out


# -- named graphs and the stable corpus --------------------------------------

def complete_graph(n, name=None):
    return DualGraph(n, list(itertools.combinations(range(n), 2)),
                     name=name or f"K{n}")


def complete_bipartite(a, b, name=None):
    return DualGraph(a + b, [(i, a + j) for i in range(a) for j in range(b)],
                     name=name or f"K{a},{b}")


def theta_graph(k, name=None):
    """Two vertices joined by k parallel edges."""
    return DualGraph(2, [(0, 1)] * k, name=name or f"theta{k}")


def cycle_graph(n, name=None):
    return DualGraph(n, [(i, (i + 1) % n) for i in range(n)],
                     name=name or f"C{n}")


def wheel_graph(n, name=None):
    """Cycle on n rim vertices plus a hub joined to every rim vertex."""
    edges = [(i, (i + 1) % n) for i in range(n)] + [(i, n) for i in range(n)]
    return DualGraph(n + 1, edges, name=name or f"W{n}")


def cube_graph(name="Q3"):
    edges = []
    for u in range(8):
        for b in range(3):
            v = u ^ (1 << b)
            if u < v:
                edges.append((u, v))
    return DualGraph(8, edges, name=name)


def named_graphs():
    out = [
        complete_graph(4), complete_graph(5), complete_bipartite(3, 3),
        theta_graph(2), theta_graph(3), theta_graph(4), theta_graph(5),
        cycle_graph(3), cycle_graph(4), cycle_graph(5),
        cube_graph(), wheel_graph(4), wheel_graph(5),
    ]
    return {g.name: g for g in out}


def stable_corpus(max_betti=4):
    """All connected stable multigraphs with 1 <= betti <= max_betti.

    Brute-force generation with isomorphism deduplication; the bound
    min-degree 3 forces at most 2 * betti - 2 vertices.
    """
    graphs = []
    seen = set()
    max_v = max(1, 2 * max_betti - 2)
    for nv in range(1, max_v + 1):
        slots = [(u, v) for u in range(nv) for v in range(u, nv)]
        max_e = nv - 1 + max_betti
        min_e = max(nv, (3 * nv + 1) // 2)

        def extend(start, edges):
            ne = len(edges)
            if ne > max_e:
                return
            if ne >= min_e and ne >= nv:
                g = DualGraph(nv, edges)
                if g.is_connected() and g.is_stable() and 1 <= betti(g) <= max_betti:
                    key = g.canonical_form()
                    if key not in seen:
                        seen.add(key)
                        g.name = f"stable_{nv}v_{ne}e_{len(seen)}"
                        graphs.append(g)
            if ne == max_e:
                return
            # pruning: remaining degree demand must fit in remaining slots
            deg = [0] * nv
            for u, v in edges:
                deg[u] += 1 + (u == v)
                deg[v] += u != v
            demand = sum(max(0, 3 - d) for d in deg)
            if demand > 2 * (max_e - ne):
                return
            for si in range(start, len(slots)):
                extend(si, edges + [slots[si]])

        extend(0, [])
    return graphs
