"""Isomorphism testing and constrained automorphism search.

The engine is iterated color refinement (degree and distance-profile seeds,
then neighbour-multiset rounds) with individualisation backtracking on the
first non-singleton class. Candidates are tried in (color, index) order, so
results are deterministic. Intended scale is a few hundred vertices; larger
inputs raise CapacityError rather than running an open-ended search.
"""

from __future__ import annotations

from .errors import CapacityError
from .graphs import Graph, VertexMap

MAX_VERTICES = 300
_NODE_BUDGET = 400_000


def _distance_profile(adj: tuple[tuple[int, ...], ...], v: int) -> tuple[int, ...]:
    # sizes of successive BFS shells; a cheap start invariant
    dist = {v: 0}
    queue = [v]
    shells = []
    while queue:
        shells.append(len(queue))
        nxt = []
        for x in queue:
            for y in adj[x]:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    nxt.append(y)
        queue = nxt
    return tuple(shells)


def _seed_tokens(g: Graph) -> list[tuple]:
    return [(len(g.adjacency[v]), _distance_profile(g.adjacency, v)) for v in range(g.order)]


def _bfs_distances(g: Graph, v: int) -> list[int]:
    dist = [-1] * g.order
    dist[v] = 0
    queue = [v]
    while queue:
        nxt = []
        for x in queue:
            for y in g.adjacency[x]:
                if dist[y] < 0:
                    dist[y] = dist[x] + 1
                    nxt.append(y)
        queue = nxt
    return dist


def _assign_ids(tokens_g: list, tokens_h: list) -> tuple[list[int], list[int]] | None:
    """Map arbitrary hashable tokens to joint integer ids; None on mismatch."""
    universe = sorted(set(tokens_g) | set(tokens_h))
    ids = {t: i for i, t in enumerate(universe)}
    cg = [ids[t] for t in tokens_g]
    ch = [ids[t] for t in tokens_h]
    if sorted(cg) != sorted(ch):
        return None
    return cg, ch


def _refine(adj_g, adj_h, cg: list[int], ch: list[int]) -> tuple[list[int], list[int]] | None:
    """Joint 1-WL refinement until stable; None when class sizes diverge."""
    while True:
        tg = [(cg[v], tuple(sorted(cg[w] for w in adj_g[v]))) for v in range(len(cg))]
        th = [(ch[v], tuple(sorted(ch[w] for w in adj_h[v]))) for v in range(len(ch))]
        assigned = _assign_ids(tg, th)
        if assigned is None:
            return None
        ng, nh = assigned
        if ng == cg and nh == ch:
            return cg, ch
        cg, ch = ng, nh


class _Search:
    """Backtracking core shared by isomorphism and swap-involution search."""

    def __init__(self, adj_g, adj_h, cg, ch, pairing: bool):
        self.adj_g = adj_g
        self.adj_h = adj_h
        self.cg0 = cg
        self.ch0 = ch
        self.pairing = pairing  # h is g; assignments come in symmetric pairs
        self.nodes = 0

    def run(self) -> list[int] | None:
        return self._rec(self.cg0, self.ch0)

    def _rec(self, cg, ch) -> list[int] | None:
        self.nodes += 1
        if self.nodes > _NODE_BUDGET:
            raise CapacityError("isomorphism search budget exceeded")
        refined = _refine(self.adj_g, self.adj_h, cg, ch)
        if refined is None:
            return None
        cg, ch = refined
        target = self._first_split_class(cg)
        if target is None:
            return self._extract(cg, ch)
        u = next(v for v in range(len(cg)) if cg[v] == target)
        fresh = max(max(cg), max(ch)) + 1
        for v in range(len(ch)):
            if ch[v] != target:
                continue
            if self.pairing:
                if v == u or ch[u] != cg[v]:
                    continue
                ng, nh = list(cg), list(ch)
                ng[u] = fresh
                nh[v] = fresh
                ng[v] = fresh + 1
                nh[u] = fresh + 1
            else:
                ng, nh = list(cg), list(ch)
                ng[u] = fresh
                nh[v] = fresh
            result = self._rec(ng, nh)
            if result is not None:
                return result
        return None

    @staticmethod
    def _first_split_class(cg) -> int | None:
        counts: dict[int, int] = {}
        for c in cg:
            counts[c] = counts.get(c, 0) + 1
        for c in sorted(counts):
            if counts[c] > 1:
                return c
        return None

    def _extract(self, cg, ch) -> list[int] | None:
        where = {c: v for v, c in enumerate(ch)}
        image = [where[c] for c in cg]
        if sorted(image) != list(range(len(image))):
            return None
        for u in range(len(cg)):
            nu = {image[w] for w in self.adj_g[u]}
            if nu != set(self.adj_h[image[u]]):
                return None
        if self.pairing:
            for u in range(len(image)):
                if image[image[u]] != u:
                    return None
        return image


def isomorphic(g: Graph, h: Graph) -> VertexMap | None:
    """Isomorphism witness from g to h, or None. Deterministic."""
    if g.order > MAX_VERTICES or h.order > MAX_VERTICES:
        raise CapacityError(f"isomorphism limited to {MAX_VERTICES} vertices")
    if g.order != h.order or g.size != h.size:
        return None
    seeded = _assign_ids(_seed_tokens(g), _seed_tokens(h))
    if seeded is None:
        return None
    image = _Search(g.adjacency, h.adjacency, *seeded, pairing=False).run()
    return VertexMap(tuple(image)) if image is not None else None


def find_swap_involution(g: Graph, sides: tuple[int, ...]) -> VertexMap | None:
    """Order-two automorphism of g mapping side 0 onto side 1, or None."""
    if g.order > MAX_VERTICES:
        raise CapacityError(f"involution search limited to {MAX_VERTICES} vertices")
    zero = sum(1 for s in sides if s == 0)
    if 2 * zero != g.order:
        return None
    base = _seed_tokens(g)
    tokens_g = [(base[v], sides[v]) for v in range(g.order)]
    tokens_h = [(base[v], 1 - sides[v]) for v in range(g.order)]
    seeded = _assign_ids(tokens_g, tokens_h)
    if seeded is None:
        return None
    image = _Search(g.adjacency, g.adjacency, *seeded, pairing=True).run()
    return VertexMap(tuple(image)) if image is not None else None


def find_free_cyclic_action(g: Graph, k: int, limit: int = 1) -> list[VertexMap]:
    """Automorphisms of order k whose cycles all have length exactly k.

    Returns up to `limit` distinct witnesses in deterministic order; empty
    list when none exist. Used to impose rotational symmetry on layouts.
    """
    if g.order > MAX_VERTICES:
        raise CapacityError(f"automorphism search limited to {MAX_VERTICES} vertices")
    if k < 2 or g.order % k != 0:
        return []
    base = _seed_tokens(g)
    universe = sorted(set(base))
    ids = {t: i for i, t in enumerate(universe)}
    color = [ids[t] for t in base]
    dist = [_bfs_distances(g, v) for v in range(g.order)]
    sigma: list[int] = [-1] * g.order
    assigned: list[int] = []
    found: list[VertexMap] = []
    budget = [_NODE_BUDGET]

    def consistent(a: int, b: int) -> bool:
        # distance preservation prunes far harder than adjacency alone
        if color[a] != color[b]:
            return False
        da, db = dist[a], dist[b]
        for x in assigned:
            if da[x] != db[sigma[x]]:
                return False
        return True

    def extend() -> bool:
        budget[0] -= 1
        if budget[0] < 0:
            raise CapacityError("cyclic action search budget exceeded")
        if len(assigned) == g.order:
            found.append(VertexMap(tuple(sigma)))
            return len(found) >= limit
        start = next(v for v in range(g.order) if sigma[v] == -1)
        orbit = [start]
        return place(start, orbit)

    def place(start: int, orbit: list[int]) -> bool:
        cur = orbit[-1]
        if len(orbit) == k:
            # close the cycle
            if consistent(cur, start):
                sigma[cur] = start
                assigned.append(cur)
                if extend():
                    return True
                assigned.pop()
                sigma[cur] = -1
            return False
        for cand in range(g.order):
            if sigma[cand] != -1 or cand in orbit or cand == start:
                continue
            if not consistent(cur, cand):
                continue
            sigma[cur] = cand
            assigned.append(cur)
            orbit.append(cand)
            if place(start, orbit):
                return True
            orbit.pop()
            assigned.pop()
            sigma[cur] = -1
        return False

    extend()
    out = []
    for vm in found[:limit]:
        if vm.is_automorphism(g) and vm.permutation_order() == k:
            out.append(vm)
    return out


def orbits_of(vm: VertexMap) -> list[list[int]]:
    """Cycles of a permutation, each listed from its smallest element."""
    n = len(vm.image)
    seen = [False] * n
    orbits = []
    for v in range(n):
        if seen[v]:
            continue
        orbit = [v]
        seen[v] = True
        w = vm.image[v]
        while w != v:
            orbit.append(w)
            seen[w] = True
            w = vm.image[w]
        orbits.append(orbit)
    return orbits
