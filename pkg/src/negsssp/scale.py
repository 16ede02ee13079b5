"""One scaling step: weights >= -W in, a potential with weights >= -W/2 out
(or a negative cycle).

Weights are first raised by W/2.  Phase 1 decomposes the shifted graph
recursively with a diameter parameter that starts at n*W/2 and halves
whenever a component keeps more than 3/4 of its parent's vertices; nodes
whose parameter drops to W/2 or below become leaves.  A negative shifted
edge inside a leaf closes a negative cycle right away.  Phase 2 walks the
tree children-first, repairing the DAG edges between child components and
then running the hybrid on each node with the node's diameter parameter as
the auxiliary-weight threshold.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .certificate import NegCycleCertificate, find_negative_cycle, make_certificate, verify_potential
from .decompose import DecomposeConfig, decompose
from .errors import ContractError, InternalError, ScaleFailure
from .graph import INF, Graph, OpCounter, dijkstra, path_to, scc_labels
from .hybrid import bellman_ford_dijkstra


@dataclass
class ScaleConfig:
    decompose: DecomposeConfig = field(default_factory=DecomposeConfig)
    simplify_cycles: bool = True
    check_nodes: bool = True


@dataclass
class ScaleStats:
    nodes: int = 0
    leaves: int = 0
    depth: int = 0
    decompose_calls: int = 0
    decompose_attempts: list = field(default_factory=list)
    hybrid_calls: int = 0
    hybrid_iterations: int = 0


class DecompTreeNode:
    """Node ``(H, d)`` of the decomposition tree.

    ``vertices`` are sorted global ids, ``cut`` global edge ids of the edges
    removed at this node.  Internal nodes keep their local subgraph for
    Phase 2.  Single-vertex internal nodes expand their chain of halving
    descendants only when ``children`` is read.
    """

    __slots__ = ("vertices", "d", "cut", "is_leaf", "_children", "graph", "edge_ids",
                 "cut_mask", "comp", "ncomp", "passthrough", "_leaf_d")

    def __init__(self, vertices, d, is_leaf, leaf_d):
        self.vertices = vertices
        self.d = int(d)
        self.is_leaf = is_leaf
        self.cut = np.empty(0, np.int64)
        self._children = []
        self.graph = None
        self.edge_ids = None
        self.cut_mask = None
        self.comp = None
        self.ncomp = 0
        self.passthrough = False
        self._leaf_d = leaf_d

    @property
    def size(self) -> int:
        return int(self.vertices.size)

    @property
    def children(self) -> list["DecompTreeNode"]:
        if self._children is None:
            d = self.d // 2
            self._children = [DecompTreeNode(self.vertices, d, d <= self._leaf_d, self._leaf_d)]
            if d > self._leaf_d:
                self._children[0]._children = None
        return self._children

    @property
    def singleton_chain(self) -> bool:
        return self._children is None or (self.size == 1 and not self.is_leaf)

    def walk(self):
        """Pre-order traversal."""
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))

    def __repr__(self):
        kind = "leaf" if self.is_leaf else f"{len(self.children)} children"
        return f"DecompTreeNode(|V|={self.size}, d={self.d}, |S|={self.cut.size}, {kind})"


@dataclass
class ScaleResult:
    potential: np.ndarray | None
    certificate: NegCycleCertificate | None
    tree: DecompTreeNode | None
    stats: ScaleStats

    @property
    def is_cycle(self) -> bool:
        return self.certificate is not None


# ------------------------------------------------------------------ phase 1


def build_decomposition_tree(gprime: Graph, W: int, rng: np.random.Generator,
                             config: ScaleConfig | None = None,
                             counter: OpCounter | None = None,
                             stats: ScaleStats | None = None) -> DecompTreeNode:
    """Recursive decomposition of the shifted graph, root parameter n*W/2."""
    config = config or ScaleConfig()
    counter = counter if counter is not None else OpCounter()
    stats = stats if stats is not None else ScaleStats()
    half_w = W // 2
    d0 = gprime.n * half_w
    root = _make_node(np.arange(gprime.n, dtype=np.int64), d0, half_w, stats, 0)
    if not root.is_leaf and root.size > 1:
        _expand(root, gprime, np.arange(gprime.m, dtype=np.int64), half_w, rng,
                config, counter, stats, 0)
    return root


def _make_node(vertices, d, half_w, stats, depth):
    node = DecompTreeNode(vertices, d, d <= half_w, half_w)
    stats.nodes += 1
    stats.depth = max(stats.depth, depth)
    if node.is_leaf or vertices.size == 1:
        # a single-vertex chain ends in exactly one leaf
        stats.leaves += 1
    if not node.is_leaf and vertices.size == 1:
        node._children = None
    return node


def _expand(node, H, eids, half_w, rng, config, counter, stats, depth):
    """Decompose ``node`` (local graph ``H``) and recurse into its components."""
    node.graph = H
    node.edge_ids = eids
    cut = decompose(H, node.d, rng, config.decompose, counter)
    stats.decompose_calls += 1
    stats.decompose_attempts.append(cut.attempts)
    mask = cut.mask
    node.cut_mask = mask
    node.cut = eids[mask]
    comp, ncomp = scc_labels(H, mask, counter)
    node.comp = comp
    node.ncomp = ncomp
    n_h = H.n
    if ncomp == 1:
        child = _make_node(node.vertices, node.d // 2, half_w, stats, depth + 1)
        node._children = [child]
        if not cut.mask.any():
            node.passthrough = True
            if not child.is_leaf:
                _expand(child, H, eids, half_w, rng, config, counter, stats, depth + 1)
            return
        if not child.is_leaf:
            sub, local = H.induced(np.arange(n_h), ~mask)
            _expand(child, sub, eids[local], half_w, rng, config, counter, stats, depth + 1)
        return

    vorder = np.argsort(comp, kind="stable")
    sizes = np.bincount(comp, minlength=ncomp)
    vstart = np.zeros(ncomp + 1, np.int64)
    np.cumsum(sizes, out=vstart[1:])
    pos = np.empty(n_h, np.int64)
    pos[vorder] = np.arange(n_h) - vstart[comp[vorder]]
    inside = (comp[H.src] == comp[H.dst]) & ~mask
    e_in = np.flatnonzero(inside)
    e_in = e_in[np.argsort(comp[H.src[e_in]], kind="stable")]
    esizes = np.bincount(comp[H.src[e_in]], minlength=ncomp)
    estart = np.zeros(ncomp + 1, np.int64)
    np.cumsum(esizes, out=estart[1:])
    children = []
    for c in range(ncomp):
        members = vorder[vstart[c]:vstart[c + 1]]
        size = members.size
        d_c = node.d if 4 * size <= 3 * n_h else node.d // 2
        child = _make_node(node.vertices[members], d_c, half_w, stats, depth + 1)
        children.append(child)
        if child.is_leaf or size == 1:
            continue
        es = e_in[estart[c]:estart[c + 1]]
        sub = Graph(size, pos[H.src[es]], pos[H.dst[es]], H.w[es], check_overflow=False)
        _expand(child, sub, eids[es], half_w, rng, config, counter, stats, depth + 1)
    node._children = children


# ------------------------------------------------------------- leaf check


def leaf_labels(tree: DecompTreeNode, n: int) -> np.ndarray:
    """Leaf index per vertex; singleton chains count as the leaf they end in."""
    label = np.full(n, -1, np.int64)
    k = 0
    stack = [tree]
    while stack:
        node = stack.pop()
        if node.is_leaf or node.singleton_chain:
            label[node.vertices] = k
            k += 1
        else:
            stack.extend(node.children)
    return label


def leaf_negative_edge_check(tree: DecompTreeNode, gprime: Graph, g: Graph,
                             counter: OpCounter | None = None,
                             simplify: bool = True) -> NegCycleCertificate | None:
    """Negative shifted edge ``uv`` inside a leaf: close it with a shortest
    ``v -> u`` path in ``G'>=0`` and return the resulting cycle."""
    label = leaf_labels(tree, gprime.n)
    bad = np.flatnonzero((gprime.w < 0) & (label[gprime.src] == label[gprime.dst]))
    if bad.size == 0:
        return None
    e = int(bad[0])
    u, v = int(gprime.src[e]), int(gprime.dst[e])
    if u == v:
        return make_certificate(g, [e], simplify)
    wt = np.maximum(gprime.w, 0)
    dist, pedge = dijkstra(gprime, [v], target=u, weights=wt, counter=counter)
    if dist[u] >= INF:
        raise ScaleFailure("leaf endpoints are not connected in G'>=0")
    back = path_to(gprime, pedge, u)
    walk = back + [e]
    if sum(int(g.w[x]) for x in walk) >= 0:
        raise ScaleFailure(
            f"leaf cycle is not negative (return path weight {int(dist[u])} in G'>=0)")
    return make_certificate(g, walk, simplify)


# ------------------------------------------------------------------ phase 2


def fix_dag(H: Graph, sccs, cut, phi) -> np.ndarray:
    """Shift ``phi`` by a per-component constant so that every edge of ``H``
    outside ``cut`` becomes nonnegative.

    ``sccs`` is either a topologically ordered list of vertex lists or an
    array of topological component labels.  Edges inside a component must
    already be nonnegative under ``phi``.
    """
    phi = np.asarray(phi, dtype=np.int64)
    removed = np.zeros(H.m, np.bool_)
    cut = np.asarray(cut)
    if cut.dtype == np.bool_:
        removed |= cut
    elif cut.size:
        removed[cut.astype(np.int64)] = True
    if isinstance(sccs, np.ndarray):
        comp = sccs.astype(np.int64)
        ncomp = int(comp.max()) + 1 if comp.size else 0
    else:
        comp = np.full(H.n, -1, np.int64)
        for k, members in enumerate(sccs):
            comp[list(members)] = k
        ncomp = len(sccs)
        if (comp < 0).any():
            raise ContractError("components must cover every vertex")
    return phi + _dag_offsets(H, comp, ncomp, removed, phi)


def _dag_offsets(H, comp, ncomp, removed, phi):
    wphi = H.w + phi[H.src] - phi[H.dst]
    cs, cd = comp[H.src], comp[H.dst]
    live = ~removed
    if np.any((cs > cd) & live):
        raise ContractError("component labels are not in topological order")
    if np.any((cs == cd) & live & (wphi < 0)):
        raise ContractError("an edge inside a component is negative under phi")
    order = np.argsort(cd, kind="stable").astype(np.int64)
    mu = _kernels.dag_offsets(H.src, H.dst, wphi, removed, comp, ncomp, order)
    return mu[comp]


def extract_cycle(path_edges, gprime: Graph, g: Graph, counter: OpCounter | None = None,
                  simplify: bool = True) -> NegCycleCertificate:
    """Close the path with a shortest return path in ``G'>=0``.

    Falls back to a negative cycle inside the path itself (a walk that
    revisits a vertex) before giving up with :class:`ScaleFailure`.
    """
    path_edges = [int(e) for e in path_edges]
    if not path_edges:
        raise InternalError("cannot close an empty path")
    u = int(gprime.src[path_edges[0]])
    v = int(gprime.dst[path_edges[-1]])
    walk = None
    if u == v:
        walk = path_edges
    else:
        wt = np.maximum(gprime.w, 0)
        dist, pedge = dijkstra(gprime, [v], target=u, weights=wt, counter=counter)
        if dist[u] < INF:
            walk = path_edges + path_to(gprime, pedge, u)
    if walk is not None and sum(int(g.w[e]) for e in walk) < 0:
        return make_certificate(g, walk, simplify)
    inner = find_negative_cycle(g, path_edges)
    if inner is not None:
        return make_certificate(g, inner, simplify)
    raise ScaleFailure("threshold violation did not close a negative cycle")


def run_phase2(gprime: Graph, g: Graph, tree: DecompTreeNode, config: ScaleConfig | None = None,
               counter: OpCounter | None = None, stats: ScaleStats | None = None):
    """Potential making every shifted edge nonnegative, or a certificate."""
    config = config or ScaleConfig()
    counter = counter if counter is not None else OpCounter()
    stats = stats if stats is not None else ScaleStats()
    phi = np.zeros(gprime.n, np.int64)
    # iterative post-order
    stack = [(tree, False)]
    while stack:
        node, ready = stack.pop()
        if node.is_leaf or node.singleton_chain:
            continue
        if not ready:
            stack.append((node, True))
            stack.extend((c, False) for c in node.children)
            continue
        if node.passthrough:
            continue
        cert = _process_node(node, phi, gprime, g, config, counter, stats)
        if cert is not None:
            return cert
    return phi


def _process_node(node, phi, gprime, g, config, counter, stats):
    H = node.graph
    vmap = node.vertices
    local_phi = phi[vmap]
    local_phi = local_phi + _dag_offsets(H, node.comp, node.ncomp, node.cut_mask, local_phi)
    aux = np.maximum(H.w, 0)
    res = bellman_ford_dijkstra(H, local_phi, aux, threshold=node.d, counter=counter)
    stats.hybrid_calls += 1
    stats.hybrid_iterations += res.iterations
    if res.violation is not None:
        witness = res.violation.witness
        global_edges = node.edge_ids[np.asarray(witness.edges, dtype=np.int64)]
        return extract_cycle(global_edges, gprime, g, counter, config.simplify_cycles)
    new_phi = res.dist
    if config.check_nodes and H.m and int((H.w + new_phi[H.src] - new_phi[H.dst]).min()) < 0:
        raise InternalError("node left a negative edge behind")
    phi[vmap] = new_phi
    return None


# -------------------------------------------------------------------- scale


def scale(g: Graph, W: int, rng: np.random.Generator, config: ScaleConfig | None = None,
          counter: OpCounter | None = None) -> ScaleResult:
    """Potential ``phi`` with ``w_phi >= -W/2`` everywhere, or a negative cycle.

    Requires every weight of ``g`` to be at least ``-W`` and ``W`` to be a
    power of two no smaller than 2.
    """
    config = config or ScaleConfig()
    counter = counter if counter is not None else OpCounter()
    if W < 2 or W & (W - 1):
        raise ContractError(f"W must be a power of two >= 2, got {W}")
    if g.m and int(g.w.min()) < -W:
        raise ContractError(f"edge weight {int(g.w.min())} below -W = {-W}")
    stats = ScaleStats()
    gprime = g.with_weights(g.w + W // 2)
    tree = build_decomposition_tree(gprime, W, rng, config, counter, stats)
    cert = leaf_negative_edge_check(tree, gprime, g, counter, config.simplify_cycles)
    if cert is not None:
        return ScaleResult(None, cert, tree, stats)
    out = run_phase2(gprime, g, tree, config, counter, stats)
    if isinstance(out, NegCycleCertificate):
        return ScaleResult(None, out, tree, stats)
    if not verify_potential(g, out, -(W // 2)):
        raise ScaleFailure("Scale potential misses the -W/2 bound")
    return ScaleResult(out, None, tree, stats)
