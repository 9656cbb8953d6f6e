"""Bipartite match graphs: Hopcroft-Karp, enumeration of all maximum matchings, and the
order filter that suppresses redundant matchings among equal subjects.
"""
from __future__ import annotations

from collections import deque
from typing import Dict, FrozenSet, Hashable, Iterator, List, Optional, Sequence, Set, Tuple

__all__ = ['BipartiteGraph', 'hopcroft_karp', 'enumerate_maximum_matchings', 'is_order_preserving']

Edge = Tuple[Hashable, Hashable]
Matching = FrozenSet[Edge]


class BipartiteGraph:
    """Left (subject) and right (pattern) nodes with labelled edges.

    Node order is the order of the ``left`` and ``right`` sequences. ``subject_classes``
    maps each left node to an equivalence class id; left nodes with equal ids stand for
    equal subject terms. By default every left node is its own class.
    """

    def __init__(self, left: Sequence, right: Sequence, edges, subject_classes: Optional[Dict] = None):
        self.left = list(left)
        self.right = list(right)
        if isinstance(edges, dict):
            self.labels = {e: list(v) for e, v in edges.items()}
        else:
            self.labels = {e: [] for e in edges}
        self.edges = set(self.labels)
        self.subject_classes = subject_classes if subject_classes is not None else {n: n for n in self.left}
        self.left_rank = {n: i for i, n in enumerate(self.left)}
        self.right_rank = {n: i for i, n in enumerate(self.right)}


def _adjacency(left, edges):
    adj = {u: [] for u in left}
    for u, v in edges:
        adj[u].append(v)
    return adj


def _hopcroft_karp(left: List, adj: Dict) -> Dict:
    """Maximum matching as a dict left -> right."""
    match_l: Dict = {}
    match_r: Dict = {}
    inf = float('inf')
    while True:
        dist = {}
        queue = deque()
        for u in left:
            if u not in match_l:
                dist[u] = 0
                queue.append(u)
        found = False
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                w = match_r.get(v)
                if w is None:
                    found = True
                elif w not in dist:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        if not found:
            return match_l

        def augment(u):
            for v in adj[u]:
                w = match_r.get(v)
                if w is None or (dist.get(w, inf) == dist[u] + 1 and augment(w)):
                    match_l[u] = v
                    match_r[v] = u
                    return True
            dist[u] = inf
            return False

        for u in left:
            if u not in match_l:
                augment(u)


def hopcroft_karp(graph: BipartiteGraph) -> Matching:
    """A maximum-cardinality matching of ``graph``."""
    adj = _adjacency(graph.left, sorted(graph.edges, key=lambda e: (graph.left_rank[e[0]], graph.right_rank[e[1]])))
    return frozenset(_hopcroft_karp(graph.left, adj).items())


def _alternative(edges: Set[Edge], matching: Matching) -> Optional[Matching]:
    """Another matching of the same size, or ``None`` if ``matching`` is the only maximum one."""
    match_l = dict(matching)
    match_r = {v: u for u, v in matching}
    # alternating path of length two that starts at a free vertex
    for u, v in sorted(edges, key=repr):
        if (u, v) in matching:
            continue
        if u not in match_l and v in match_r:
            return (matching - {(match_r[v], v)}) | {(u, v)}
        if v not in match_r and u in match_l:
            return (matching - {(u, match_l[u])}) | {(u, v)}
    # alternating cycle: matched edges left->right, unmatched edges right->left
    succ: Dict = {}
    for u, v in edges:
        if (u, v) in matching:
            succ.setdefault(('L', u), []).append(('R', v))
        else:
            succ.setdefault(('R', v), []).append(('L', u))
    cycle = _find_cycle(succ)
    if cycle is None:
        return None
    result = set(matching)
    for a, b in zip(cycle, cycle[1:] + cycle[:1]):
        edge = (a[1], b[1]) if a[0] == 'L' else (b[1], a[1])
        if edge in result:
            result.remove(edge)
        else:
            result.add(edge)
    return frozenset(result)


def _find_cycle(succ) -> Optional[List]:
    state = {}
    for start in sorted(succ, key=repr):
        if start in state:
            continue
        stack = [(start, iter(succ.get(start, ())))]
        path = [start]
        state[start] = 1
        while stack:
            node, it = stack[-1]
            for nxt in it:
                mark = state.get(nxt)
                if mark == 1:
                    return path[path.index(nxt):]
                if mark is None:
                    state[nxt] = 1
                    stack.append((nxt, iter(succ.get(nxt, ()))))
                    path.append(nxt)
                    break
            else:
                state[node] = 2
                stack.pop()
                path.pop()
    return None


def _enumerate(edges: Set[Edge], matching: Matching, fixed: FrozenSet[Edge]) -> Iterator[Matching]:
    """Yield every maximum matching of ``edges`` except ``matching`` itself (plus ``fixed``)."""
    other = _alternative(edges, matching)
    if other is None:
        return
    u, v = min(matching - other, key=repr)
    # matchings containing (u, v): drop every other edge touching u or v
    with_edge = {e for e in edges if e[0] != u and e[1] != v}
    yield from _enumerate(with_edge, matching - {(u, v)}, fixed | {(u, v)})
    yield other | fixed
    yield from _enumerate(edges - {(u, v)}, other, fixed)


def enumerate_maximum_matchings(graph: BipartiteGraph) -> Iterator[Matching]:
    """Lazily yield every maximum matching of ``graph`` exactly once.

    The first yield is the Hopcroft-Karp matching. Each step finds a second maximum
    matching through an alternating cycle or an even alternating path, then splits the
    search space into matchings with and without one edge in which the two differ.
    """
    initial = hopcroft_karp(graph)
    yield initial
    yield from _enumerate(set(graph.edges), initial, frozenset())


def is_order_preserving(matching, graph: BipartiteGraph) -> bool:
    """True iff no two matched edges with equal subjects cross.

    For edges ``(s, p)`` and ``(s2, p2)`` with equivalent subjects, ``p > p2`` must imply
    ``s > s2`` in node order.
    """
    by_class: Dict = {}
    for s, p in matching:
        by_class.setdefault(graph.subject_classes[s], []).append((graph.left_rank[s], graph.right_rank[p]))
    for pairs in by_class.values():
        if len(pairs) < 2:
            continue
        pairs.sort()
        ranks = [p for _, p in pairs]
        if any(a > b for a, b in zip(ranks, ranks[1:])):
            return False
    return True
