"""Gain graphs over Z_k and Z^d, their matroids and rigidity counts.

An edge stores one orientation (source -> sink) and a gain; read in the
other direction its gain is negated. Z_k gains are ints reduced mod k, Z^d
gains are length-d int tuples.
"""
from dataclasses import dataclass, replace
from itertools import combinations
from typing import Optional

from . import linalg
from ._bits import bits_of, mask_of, popcount
from .errors import (EdgeNotFound, GainRuleMismatch, IndexOutOfRange,
                     InputError, NotMinimallyRigid, OddSelfProduct,
                     SizeCapExceeded, WrongGroup)
from .flip import FlipEngine, default_engine
from .matroid import MAX_GROUND, Matroid, contract, graphic

LOOP_RULES = ("printed", "projection")


@dataclass(frozen=True)
class GainEdge:
    id: int
    source: int
    sink: int
    gain: object

    @property
    def is_loop(self) -> bool:
        return self.source == self.sink


@dataclass(frozen=True)
class GainGraph:
    group: str          # "Zk" or "Zd"
    order: int          # k for Z_k, d for Z^d
    vertices: int
    edges: tuple

    # group arithmetic ---------------------------------------------------
    def zero(self):
        return 0 if self.group == "Zk" else (0,) * self.order

    def add(self, a, b):
        if self.group == "Zk":
            return (a + b) % self.order
        return tuple(x + y for x, y in zip(a, b))

    def neg(self, a):
        if self.group == "Zk":
            return (-a) % self.order
        return tuple(-x for x in a)

    def is_zero(self, a) -> bool:
        return a == self.zero()

    def normalize(self, g):
        if self.group == "Zk":
            if isinstance(g, (list, tuple)):
                raise InputError(f"Z_{self.order} gain must be an integer, got {g!r}")
            return int(g) % self.order
        if isinstance(g, int) and self.order == 1:
            g = (g,)
        g = tuple(int(x) for x in g)
        if len(g) != self.order:
            raise InputError(f"Z^{self.order} gain must have length {self.order}, got {g!r}")
        return g

    # edge access ----------------------------------------------------------
    @property
    def m(self) -> int:
        return len(self.edges)

    def index_of(self, edge_id) -> int:
        for i, e in enumerate(self.edges):
            if e.id == edge_id:
                return i
        raise EdgeNotFound(f"no edge with id {edge_id!r}")

    def gain_along(self, index: int, x: int, y: int):
        """Gain of edge ``index`` traversed from x to y."""
        e = self.edges[index]
        if (x, y) == (e.source, e.sink):
            return e.gain
        if (x, y) == (e.sink, e.source):
            return self.neg(e.gain)
        raise InputError(f"edge {e.id} does not join {x} and {y}")


def make_gain_graph(group: str, order: int, vertices: int, edges) -> GainGraph:
    """Build a gain graph. ``edges`` holds (source, sink, gain) or (id, source, sink, gain)."""
    if group not in ("Zk", "Zd"):
        raise InputError(f"unknown group {group!r}")
    if group == "Zk" and order < 2:
        raise InputError("Z_k needs k >= 2")
    if group == "Zd" and order < 1:
        raise InputError("Z^d needs d >= 1")
    if vertices < 0:
        raise InputError("vertex count must be nonnegative")
    shell = GainGraph(group, order, vertices, ())
    out = []
    ids = set()
    for i, e in enumerate(edges):
        if isinstance(e, GainEdge):
            eid, u, v, g = e.id, e.source, e.sink, e.gain
        elif len(e) == 3:
            (u, v, g), eid = e, i
        else:
            eid, u, v, g = e
        if not (0 <= u < vertices and 0 <= v < vertices):
            raise IndexOutOfRange(f"edge {eid} has endpoint outside 0..{vertices - 1}")
        if eid in ids:
            raise InputError(f"duplicate edge id {eid!r}")
        ids.add(eid)
        out.append(GainEdge(eid, int(u), int(v), shell.normalize(g)))
    if len(out) > MAX_GROUND:
        raise SizeCapExceeded(f"{len(out)} edges exceeds cap {MAX_GROUND}")
    return GainGraph(group, order, vertices, tuple(out))


def zk_graph(k: int, vertices: int, edges) -> GainGraph:
    return make_gain_graph("Zk", k, vertices, edges)


def zd_graph(d: int, vertices: int, edges) -> GainGraph:
    return make_gain_graph("Zd", d, vertices, edges)


def validity_problems(G: GainGraph):
    """Reasons G is a multigraph but not a gain graph (empty list when valid)."""
    problems = []
    seen = {}
    for e in G.edges:
        if e.is_loop:
            if G.is_zero(e.gain):
                problems.append(f"loop {e.id} has zero gain")
            key = (e.source, e.source)
            gains = {e.gain, G.neg(e.gain)}
        elif e.source < e.sink:
            key, gains = (e.source, e.sink), {e.gain}
        else:
            key, gains = (e.sink, e.source), {G.neg(e.gain)}
        prev = seen.setdefault(key, set())
        if prev & gains:
            problems.append(f"edge {e.id} repeats a gain between {key[0]} and {key[1]}")
        prev |= gains
    return problems


def switch(G: GainGraph, v: int, gamma) -> GainGraph:
    """Add gamma to edges leaving v and subtract it from edges entering v."""
    if not 0 <= v < G.vertices:
        raise IndexOutOfRange(f"vertex {v} outside 0..{G.vertices - 1}")
    gamma = G.normalize(gamma)
    out = []
    for e in G.edges:
        if e.source == v and e.sink != v:
            e = replace(e, gain=G.add(e.gain, gamma))
        elif e.sink == v and e.source != v:
            e = replace(e, gain=G.add(e.gain, G.neg(gamma)))
        out.append(e)
    return replace(G, edges=tuple(out))


def _mask(G: GainGraph, F) -> int:
    if F is None:
        return (1 << G.m) - 1
    if isinstance(F, int):
        if F < 0 or F >> G.m:
            raise IndexOutOfRange("edge subset outside edge set")
        return F
    m = 0
    for i in F:
        if not 0 <= i < G.m:
            raise IndexOutOfRange(f"edge index {i} outside 0..{G.m - 1}")
        m |= 1 << i
    return m


def _components(G: GainGraph, F: int):
    """Components of G[F] as (vertex list, list of cycle gains)."""
    adj = {}
    for i in bits_of(F):
        e = G.edges[i]
        adj.setdefault(e.source, []).append(i)
        adj.setdefault(e.sink, []).append(i)
    potential = {}
    comps = []
    for root in sorted(adj):
        if root in potential:
            continue
        potential[root] = G.zero()
        stack = [root]
        verts = [root]
        edges = set()
        while stack:
            x = stack.pop()
            for i in adj[x]:
                edges.add(i)
                e = G.edges[i]
                y = e.sink if e.source == x else e.source
                if y not in potential:
                    potential[y] = G.add(potential[x], G.gain_along(i, x, y))
                    verts.append(y)
                    stack.append(y)
        cycles = []
        for i in sorted(edges):
            e = G.edges[i]
            c = G.add(G.add(potential[e.source], e.gain), G.neg(potential[e.sink]))
            if not G.is_zero(c):
                cycles.append(c)
        comps.append((verts, cycles))
    return comps


def is_balanced(G: GainGraph, F=None) -> bool:
    return all(not cycles for _, cycles in _components(G, _mask(G, F)))


def lattice_rank(G: GainGraph, F=None) -> int:
    """Rank of the subgroup of Z^d generated by the cycle gains inside F."""
    if G.group != "Zd":
        raise WrongGroup("lattice rank needs a Z^d gain graph")
    gains = [c for _, cycles in _components(G, _mask(G, F)) for c in cycles]
    return linalg.rank_rational(gains) if gains else 0


def zk_rank(G: GainGraph, F=None) -> int:
    """|V[F]| minus the number of balanced components of G[F]."""
    if G.group != "Zk":
        raise WrongGroup("zk_rank needs a Z_k gain graph")
    comps = _components(G, _mask(G, F))
    return sum(len(v) for v, _ in comps) - sum(1 for _, c in comps if not c)


def zd_rank(G: GainGraph, F=None) -> int:
    """Rank of the rows of F in the incidence-plus-gain matrix.

    Each component contributes |V|-1; the cycle gains of all components
    share the d gain columns, so their rank is taken jointly.
    """
    if G.group != "Zd":
        raise WrongGroup("zd_rank needs a Z^d gain graph")
    comps = _components(G, _mask(G, F))
    gains = [c for _, cycles in comps for c in cycles]
    return sum(len(v) - 1 for v, _ in comps) + (linalg.rank_rational(gains) if gains else 0)


def incidence_gain_matrix(G: GainGraph):
    """Rows (e_u - e_v | gain) for edges and (0 | gain) for loops."""
    if G.group != "Zd":
        raise WrongGroup("the incidence-plus-gain matrix needs a Z^d gain graph")
    rows = []
    for e in G.edges:
        row = [0] * G.vertices
        if not e.is_loop:
            row[e.source] = 1
            row[e.sink] = -1
        rows.append(row + list(e.gain))
    return rows


def _matroid_from_rank(m: int, rank_fn) -> Matroid:
    full = (1 << m) - 1
    r = rank_fn(full)
    bases = [mask_of(c) for c in combinations(range(m), r) if rank_fn(mask_of(c)) == r]
    return Matroid(m, bases)


def zk_matroid(G: GainGraph) -> Matroid:
    if G.group != "Zk":
        raise WrongGroup("zk_matroid needs a Z_k gain graph")
    return _matroid_from_rank(G.m, lambda F: zk_rank(G, F))


def zd_matroid(G: GainGraph) -> Matroid:
    if G.group != "Zd":
        raise WrongGroup("zd_matroid needs a Z^d gain graph")
    return _matroid_from_rank(G.m, lambda F: zd_rank(G, F))


def gain_matroid(G: GainGraph) -> Matroid:
    return zk_matroid(G) if G.group == "Zk" else zd_matroid(G)


def gain_delete(G: GainGraph, edge_id) -> GainGraph:
    i = G.index_of(edge_id)
    return replace(G, edges=G.edges[:i] + G.edges[i + 1:])


def _drop_vertex(G: GainGraph, edges, v: int) -> GainGraph:
    def shift(x):
        return x - 1 if x > v else x
    out = tuple(replace(e, source=shift(e.source), sink=shift(e.sink)) for e in edges)
    return replace(G, vertices=G.vertices - 1, edges=out)


def _contract_nonloop(G: GainGraph, i: int) -> GainGraph:
    eps = G.edges[i]
    v, w = eps.source, eps.sink
    # switching at w by the gain of eps makes that gain zero
    H = switch(G, w, eps.gain)
    out = []
    for j, e in enumerate(H.edges):
        if j == i:
            continue
        s = v if e.source == w else e.source
        t = v if e.sink == w else e.sink
        out.append(replace(e, source=s, sink=t))
    return _drop_vertex(H, out, w)


def _contract_loop_zk(G: GainGraph, i: int) -> GainGraph:
    v = G.edges[i].source
    if G.vertices == 1:
        out = [replace(e, gain=0) for j, e in enumerate(G.edges) if j != i]
        return replace(G, edges=tuple(out))
    u = 0 if v != 0 else 1
    out = []
    for j, e in enumerate(G.edges):
        if j == i:
            continue
        if e.is_loop and e.source == v:
            e = replace(e, source=u, sink=u, gain=0)
        elif e.source == v or e.sink == v:
            w = e.sink if e.source == v else e.source
            e = replace(e, source=w, sink=w, gain=1 % G.order)
        out.append(e)
    return _drop_vertex(G, out, v)


def _contract_loop_zd(G: GainGraph, i: int, rule: str) -> GainGraph:
    gamma = G.edges[i].gain
    j = next(t for t, x in enumerate(gamma) if x != 0)
    out = []
    for t, e in enumerate(G.edges):
        if t == i:
            continue
        phi = e.gain
        if rule == "printed":
            new = tuple(gamma[j] * p - g * p for p, g in zip(phi, gamma))
        else:
            new = tuple(gamma[j] * p - phi[j] * g for p, g in zip(phi, gamma))
        out.append(replace(e, gain=new))
    return replace(G, edges=tuple(out))


def gain_contract(G: GainGraph, edge_id, rule: str = "printed", verify: bool = True) -> GainGraph:
    """Contract an edge at the gain-graph level.

    Non-loops: switch so the edge has zero gain, then merge its sink into its
    source. Nonzero loops follow ``rule``: "printed" uses the documented loop
    rule (for Z^d, gamma_j * phi - gamma (.) phi); "projection" uses
    gamma_j * phi - phi_j * gamma on Z^d and coincides with "printed" on Z_k.
    With ``verify`` the result's matroid is compared with the matroid-level
    contraction and GainRuleMismatch is raised on disagreement.
    """
    if rule not in LOOP_RULES:
        raise InputError(f"loop rule must be one of {LOOP_RULES}")
    i = G.index_of(edge_id)
    eps = G.edges[i]
    if not eps.is_loop:
        H = _contract_nonloop(G, i)
    elif G.is_zero(eps.gain):
        H = gain_delete(G, edge_id)
    elif G.group == "Zk":
        H = _contract_loop_zk(G, i)
    else:
        H = _contract_loop_zd(G, i, rule)
    if verify:
        expected = contract(gain_matroid(G), 1 << i)
        got = gain_matroid(H)
        if got != expected:
            raise GainRuleMismatch(
                f"gain-level contraction of edge {edge_id!r} ({rule} rule) "
                f"disagrees with matroid contraction")
    return H


def _vertex_set(G: GainGraph, F: int) -> int:
    vs = 0
    for i in bits_of(F):
        e = G.edges[i]
        vs |= (1 << e.source) | (1 << e.sink)
    return vs


def _is_connected(G: GainGraph, F: int) -> bool:
    return len(_components(G, F)) == 1


def rotation_violation(G: GainGraph) -> Optional[str]:
    """Why G fails the rotation-symmetric counts, or None if it passes."""
    if G.group != "Zk":
        raise WrongGroup("rotation counts need a Z_k gain graph")
    n = G.vertices
    if G.m != 2 * n - 1:
        return f"|E| = {G.m}, expected {2 * n - 1}"
    for F in range(1, 1 << G.m):
        size = popcount(F)
        nv = popcount(_vertex_set(G, F))
        bound = 2 * nv - 3 if is_balanced(G, F) else 2 * nv - 1
        if size > bound:
            return f"edge set {bits_of(F)} has {size} > {bound} edges"
    return None


def is_min_rotation_rigid(G: GainGraph) -> bool:
    return rotation_violation(G) is None


def periodic_violation(G: GainGraph) -> Optional[str]:
    if G.group != "Zd" or G.order not in (1, 2):
        raise WrongGroup("periodic counts need a Z^1 or Z^2 gain graph")
    n = G.vertices
    want = 2 * n - 3 + 2 * G.order
    if n == 0 or G.m != want:
        return f"|E| = {G.m}, expected {want}"
    for F in range(1, 1 << G.m):
        if not _is_connected(G, F):
            continue
        size = popcount(F)
        nv = popcount(_vertex_set(G, F))
        bound = 2 * nv - 3 + 2 * lattice_rank(G, F)
        if size > bound:
            return f"connected edge set {bits_of(F)} has {size} > {bound} edges"
    return None


def is_min_periodic_rigid(G: GainGraph) -> bool:
    return periodic_violation(G) is None


def laman_violation(vertices: int, edges) -> Optional[str]:
    edges = list(edges)
    if len(edges) > MAX_GROUND:
        raise SizeCapExceeded(f"{len(edges)} edges exceeds cap {MAX_GROUND}")
    if len(edges) != 2 * vertices - 3:
        return f"|E| = {len(edges)}, expected {2 * vertices - 3}"
    for F in range(1, 1 << len(edges)):
        vs = 0
        for i in bits_of(F):
            u, v = edges[i]
            vs |= (1 << u) | (1 << v)
        if popcount(F) > 2 * popcount(vs) - 3:
            return f"edge set {bits_of(F)} violates |F| <= 2|V[F]| - 3"
    return None


def half_self_product(M: Matroid, engine: Optional[FlipEngine]) -> int:
    v = (engine or default_engine()).flip(M, M)
    if v.is_infinite:
        raise OddSelfProduct("self flip product is infinite")
    if int(v) % 2:
        raise OddSelfProduct(f"self flip product {int(v)} is odd")
    return int(v) // 2


def realisation_sym(G: GainGraph, engine: Optional[FlipEngine] = None) -> int:
    """Realisation count of a minimally rotation-symmetric rigid Z_k gain graph.

    This is the full self flip product, not half of it: a reflection turns a
    framework with rotation rho into one with rotation rho^-1, so it does not
    pair up points of the fibre the way it does for plane or periodic
    frameworks. See ``half_self_product`` for the halved value.
    """
    why = rotation_violation(G)
    if why:
        raise NotMinimallyRigid(why)
    v = (engine or default_engine()).flip(zk_matroid(G), zk_matroid(G))
    if v.is_infinite:
        raise OddSelfProduct("self flip product is infinite")
    return int(v)


def realisation_per(G: GainGraph, engine: Optional[FlipEngine] = None) -> int:
    """Realisation count of a minimally periodically rigid Z^d gain graph."""
    why = periodic_violation(G)
    if why:
        raise NotMinimallyRigid(why)
    return half_self_product(zd_matroid(G), engine)


def realisation_plane(vertices: int, edges, engine: Optional[FlipEngine] = None) -> int:
    """Realisation count of a minimally rigid (Laman) plane graph."""
    edges = [tuple(e) for e in edges]
    why = laman_violation(vertices, edges)
    if why:
        raise NotMinimallyRigid(why)
    return half_self_product(graphic(vertices, edges), engine)


def z4_rotation_graph() -> GainGraph:
    """The Z_4 gain graph on three vertices used as the running rotation example."""
    return zk_graph(4, 3, [(1, 0, 1, 1), (2, 1, 0, 0), (3, 1, 2, 2), (4, 2, 0, 3), (5, 2, 2, 1)])


def gain_graph_from_json(obj) -> GainGraph:
    try:
        grp = obj["group"]
        kind = grp["type"]
        if kind == "Zk":
            group, order = "Zk", int(grp["k"])
        elif kind == "Zd":
            group, order = "Zd", int(grp["d"])
        else:
            raise InputError(f"unknown group type {kind!r}")
        edges = [(e.get("id", i), int(e["from"]), int(e["to"]), e["gain"])
                 for i, e in enumerate(obj["edges"])]
        return make_gain_graph(group, order, int(obj["vertices"]), edges)
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed gain graph descriptor: {exc}") from exc


def gain_graph_to_json(G: GainGraph) -> dict:
    grp = {"type": "Zk", "k": G.order} if G.group == "Zk" else {"type": "Zd", "d": G.order}
    return {"group": grp, "vertices": G.vertices,
            "edges": [{"id": e.id, "from": e.source, "to": e.sink,
                       "gain": list(e.gain) if G.group == "Zd" else e.gain}
                      for e in G.edges]}
