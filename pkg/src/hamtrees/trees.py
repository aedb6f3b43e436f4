"""Rooted and free trees with coloured vertices.

Rooted trees are non-planar and always held in canonical form: the children of
every vertex are sorted non-decreasingly in the Murua order, so the largest
branch ``t_R`` of ``t = t_L o t_R`` is the last child.

Vertices of a rooted tree are numbered 0, 1, ... by a depth-first preorder
traversal in stored child order (the root is 0). A free tree is identified by
its canonical representative, the Murua-maximal rooting, and its vertices are
numbered by the same traversal of that representative, so vertex 0 is always
the canonical root.
"""

from __future__ import annotations

import functools
import itertools
from collections import Counter
from math import factorial
from typing import Iterable, Iterator, Sequence

Color = int

DEFAULT_CAP = 12
DEFAULT_COLORED_CAP = 8


class TreeSyntaxError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos} in {text!r}")
        self.text = text
        self.pos = pos


class CapExceededError(ValueError):
    pass


@functools.total_ordering
class RootedTree:
    """Immutable non-planar rooted tree ``B_+^color(children)``.

    Children are sorted on construction, so two values compare equal exactly
    when they are isomorphic as coloured rooted trees. ``<`` is the Murua
    order.
    """

    __slots__ = ("color", "children", "size", "_key", "_hash")

    def __init__(self, color: Color = 0, children: Iterable[RootedTree] = ()):
        if color < 0:
            raise ValueError("colours are non-negative integers")
        kids = tuple(sorted(children, key=_murua_key))
        self.color = color
        self.children = kids
        self.size = 1 + sum(c.size for c in kids)
        # Nested (size, key(t_L), key(t_R)) tuples; single vertices are (1, color).
        key: tuple = (1, color)
        size = 1
        for c in kids:
            size += c.size
            key = (size, key, c._key)
        self._key = key
        self._hash = hash((color, tuple(c._hash for c in kids)))

    def __setattr__(self, name, value):
        if hasattr(self, "_hash"):
            raise AttributeError("RootedTree is immutable")
        object.__setattr__(self, name, value)

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, RootedTree):
            return NotImplemented
        return self._hash == other._hash and self._key == other._key

    def __lt__(self, other: RootedTree) -> bool:
        if not isinstance(other, RootedTree):
            return NotImplemented
        return self._key < other._key

    def __reduce__(self):
        return (RootedTree, (self.color, self.children))

    def __repr__(self) -> str:
        return f"RootedTree({format_tree(self)!r})"

    def __str__(self) -> str:
        return format_tree(self)

    @property
    def is_leaf(self) -> bool:
        return not self.children

    @property
    def colors(self) -> frozenset[Color]:
        return frozenset(c for c, _, _ in preorder(self))

    def decompose(self) -> tuple[RootedTree, RootedTree]:
        """Canonical decomposition ``t = t_L o t_R`` with ``t_R`` the maximal branch."""
        if not self.children:
            raise ValueError("a single vertex has no canonical decomposition")
        return RootedTree(self.color, self.children[:-1]), self.children[-1]


def _murua_key(t: RootedTree):
    return t._key


def leaf(color: Color = 0) -> RootedTree:
    return RootedTree(color)


def chain(n: int, color: Color = 0) -> RootedTree:
    """Ladder tree with ``n`` vertices."""
    t = RootedTree(color)
    for _ in range(n - 1):
        t = RootedTree(color, (t,))
    return t


def murua_compare(s: RootedTree, t: RootedTree) -> int:
    """Return -1, 0 or 1 as ``s`` is below, equal to or above ``t`` in the Murua order."""
    if s == t:
        return 0
    return -1 if s < t else 1


def murua_compare_recursive(s: RootedTree, t: RootedTree) -> int:
    """Direct transcription of the recursive order definition, used as an oracle."""
    if s.size != t.size:
        return -1 if s.size < t.size else 1
    if s.size == 1:
        return (s.color > t.color) - (s.color < t.color)
    sl, sr = _decompose_by(s, murua_compare_recursive)
    tl, tr = _decompose_by(t, murua_compare_recursive)
    c = murua_compare_recursive(sl, tl)
    return c if c else murua_compare_recursive(sr, tr)


def _decompose_by(t: RootedTree, cmp) -> tuple[RootedTree, RootedTree]:
    kids = list(t.children)
    best = 0
    for i in range(1, len(kids)):
        if cmp(kids[i], kids[best]) > 0:
            best = i
    tr = kids.pop(best)
    return RootedTree(t.color, kids), tr


def butcher(s: RootedTree, t: RootedTree) -> RootedTree:
    """Right Butcher product ``s o t``: graft ``t`` on the root of ``s``."""
    return RootedTree(s.color, s.children + (t,))


def graft_at(s: RootedTree, t: RootedTree, v: int) -> RootedTree:
    """Graft ``s`` below vertex ``v`` of ``t`` (``s ->_v t``)."""
    if not 0 <= v < t.size:
        raise IndexError(f"vertex {v} out of range for a tree with {t.size} vertices")

    def rec(node: RootedTree, index: int) -> RootedTree:
        if index == v:
            return RootedTree(node.color, node.children + (s,))
        kids = list(node.children)
        pos = index + 1
        for i, c in enumerate(kids):
            if pos <= v < pos + c.size:
                kids[i] = rec(c, pos)
                break
            pos += c.size
        return RootedTree(node.color, kids)

    return rec(t, 0)


def symmetry_factor(t: RootedTree) -> int:
    """Order of the automorphism group of ``t``."""
    return _sym(t)


@functools.lru_cache(maxsize=None)
def _sym(t: RootedTree) -> int:
    out = 1
    for branch, mult in Counter(t.children).items():
        out *= factorial(mult) * _sym(branch) ** mult
    return out


def preorder(t: RootedTree) -> list[tuple[Color, int, int]]:
    """``(color, parent, depth)`` for every vertex in canonical numbering; the root's parent is -1."""
    out: list[tuple[Color, int, int]] = []

    def rec(node: RootedTree, parent: int, depth: int) -> None:
        me = len(out)
        out.append((node.color, parent, depth))
        for c in node.children:
            rec(c, me, depth + 1)

    rec(t, -1, 0)
    return out


# ---------------------------------------------------------------------------
# graphs and free trees


def _rooted(adj: Sequence[Sequence[int]], colors: Sequence[Color], root: int) -> tuple[RootedTree, list[int]]:
    """Root the tree given by adjacency lists at ``root``.

    Also returns the graph vertices listed in the canonical numbering of the
    resulting rooted tree.
    """

    def rec(v: int, parent: int) -> tuple[RootedTree, list[int]]:
        subs = [rec(w, v) for w in adj[v] if w != parent]
        subs.sort(key=lambda p: p[0]._key)
        order = [v]
        for _, o in subs:
            order.extend(o)
        return RootedTree(colors[v], [p[0] for p in subs]), order

    return rec(root, -1)


def _centroids(adj: Sequence[Sequence[int]]) -> list[int]:
    n = len(adj)
    parent = [-1] * n
    order = [0]
    for v in order:
        for w in adj[v]:
            if w != parent[v]:
                parent[w] = v
                order.append(w)
    sub = [1] * n
    for v in reversed(order[1:]):
        sub[parent[v]] += sub[v]
    heaviest = []
    for v in range(n):
        h = n - sub[v]
        for w in adj[v]:
            if w != parent[v]:
                h = max(h, sub[w])
        heaviest.append(h)
    best = min(heaviest)
    return [v for v in range(n) if heaviest[v] == best]


def _check_tree(n: int, edges: Sequence[tuple[int, int]]) -> list[list[int]]:
    if n < 1:
        raise ValueError("a tree has at least one vertex")
    if len(edges) != n - 1:
        raise ValueError(f"{n} vertices need {n - 1} edges, got {len(edges)}")
    adj: list[list[int]] = [[] for _ in range(n)]
    for a, b in edges:
        if not (0 <= a < n and 0 <= b < n) or a == b:
            raise ValueError(f"invalid edge ({a}, {b})")
        adj[a].append(b)
        adj[b].append(a)
    seen = {0}
    stack = [0]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    if len(seen) != n:
        raise ValueError("edge list is disconnected or contains a cycle")
    return adj


def _canonical_from_graph(adj, colors) -> tuple[RootedTree, list[int]]:
    best = None
    for c in _centroids(adj):
        cand = _rooted(adj, colors, c)
        if best is None or best[0] < cand[0]:
            best = cand
    return best


@functools.total_ordering
class FreeTree:
    """Non-rooted tree, stored as its canonical representative ``tau_*``.

    Vertex ``i`` is vertex ``i`` of the representative; vertex 0 is the
    canonical root. Ordering follows the Murua order of representatives.
    """

    def __init__(self, rep: RootedTree):
        # Callers guarantee ``rep`` is already the Murua-maximal rooting.
        self.rep = rep

    @classmethod
    def from_edges(cls, colors: Sequence[Color], edges: Sequence[tuple[int, int]]) -> FreeTree:
        return cls.from_edges_with_map(colors, edges)[0]

    @classmethod
    def from_edges_with_map(cls, colors: Sequence[Color], edges: Sequence[tuple[int, int]]) -> tuple[FreeTree, list[int]]:
        """Canonicalize an edge list; the map sends input vertex -> free-tree vertex."""
        adj = _check_tree(len(colors), edges)
        return _free_from_adj(adj, colors)

    def __hash__(self) -> int:
        return hash(("free", self.rep._hash))

    def __eq__(self, other) -> bool:
        if not isinstance(other, FreeTree):
            return NotImplemented
        return self.rep == other.rep

    def __lt__(self, other: FreeTree) -> bool:
        if not isinstance(other, FreeTree):
            return NotImplemented
        return self.rep < other.rep

    def __reduce__(self):
        return (FreeTree, (self.rep,))

    def __repr__(self) -> str:
        return f"FreeTree({format_tree(self)!r})"

    def __str__(self) -> str:
        return format_tree(self)

    @property
    def size(self) -> int:
        return self.rep.size

    @property
    def canonical_root(self) -> int:
        return 0

    @functools.cached_property
    def _layout(self) -> list[tuple[Color, int, int]]:
        return preorder(self.rep)

    @property
    def colors(self) -> list[Color]:
        return [c for c, _, _ in self._layout]

    @property
    def depths(self) -> list[int]:
        return [d for _, _, d in self._layout]

    @functools.cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple((p, v) for v, (_, p, _) in enumerate(self._layout) if p >= 0)

    @functools.cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.size)]
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        return tuple(tuple(x) for x in adj)

    @functools.cached_property
    def _rootings(self) -> tuple[tuple[RootedTree, tuple[int, ...]], ...]:
        out = []
        for v in range(self.size):
            t, order = _rooted(self.adjacency, self.colors, v)
            out.append((t, tuple(order)))
        return tuple(out)

    @functools.cached_property
    def _superfluous(self) -> RootedTree | None:
        return _edge_split_witness(self)

    def distance(self, a: int, b: int) -> int:
        depth = self.depths
        parent = [p for _, p, _ in self._layout]
        d = 0
        while a != b:
            if depth[a] >= depth[b]:
                a = parent[a]
            else:
                b = parent[b]
            d += 1
        return d


def _free_from_adj(adj, colors) -> tuple[FreeTree, list[int]]:
    rep, order = _canonical_from_graph(adj, colors)
    mapping = [0] * len(order)
    for i, v in enumerate(order):
        mapping[v] = i
    return FreeTree(rep), mapping


def _check_vertex(tau: FreeTree, v: int) -> None:
    if not 0 <= v < tau.size:
        raise IndexError(f"vertex {v} out of range for a tree with {tau.size} vertices")


@functools.lru_cache(maxsize=None)
def project(t: RootedTree) -> FreeTree:
    """Forget the root."""
    if t.size == 1:
        return FreeTree(t)
    layout = preorder(t)
    edges = [(p, v) for v, (_, p, _) in enumerate(layout) if p >= 0]
    adj = _check_tree(len(layout), edges)
    return _free_from_adj(adj, [c for c, _, _ in layout])[0]


def root_at(tau: FreeTree, v: int) -> RootedTree:
    """The rooted tree ``tau_v`` obtained by putting the root at ``v``."""
    _check_vertex(tau, v)
    return tau._rootings[v][0]


def rooting(tau: FreeTree, v: int) -> tuple[RootedTree, tuple[int, ...]]:
    """``tau_v`` together with the free-tree vertex of each of its vertices."""
    _check_vertex(tau, v)
    return tau._rootings[v]


def rootings(tau: FreeTree) -> list[RootedTree]:
    return [t for t, _ in tau._rootings]


def canonical_representative(tau: FreeTree) -> tuple[RootedTree, int]:
    return tau.rep, 0


def canonical_by_brute_force(tau: FreeTree) -> RootedTree:
    """Maximum of ``tau_v`` over every vertex; oracle for the centroid search."""
    return max(rootings(tau))


def link(sigma: FreeTree, v: int, tau: FreeTree, w: int) -> FreeTree:
    """Join ``sigma`` and ``tau`` by a new edge between ``v`` and ``w``."""
    return link_with_map(sigma, v, tau, w)[0]


@functools.lru_cache(maxsize=None)
def link_with_map(sigma: FreeTree, v: int, tau: FreeTree, w: int) -> tuple[FreeTree, tuple[int, ...]]:
    """Link and also return where each vertex ends up.

    Vertices of ``sigma`` keep indices ``0..|sigma|-1`` and vertices of
    ``tau`` are shifted by ``|sigma|``; entry ``i`` of the map is the vertex
    of the linked free tree corresponding to combined vertex ``i``.
    """
    _check_vertex(sigma, v)
    _check_vertex(tau, w)
    m = sigma.size
    adj = [list(a) for a in sigma.adjacency] + [[x + m for x in a] for a in tau.adjacency]
    adj[v].append(w + m)
    adj[w + m].append(v)
    linked, mapping = _free_from_adj(adj, sigma.colors + tau.colors)
    return linked, tuple(mapping)


def _edge_split_witness(tau: FreeTree) -> RootedTree | None:
    n = tau.size
    if n % 2:
        return None
    layout = tau._layout
    sub = [1] * n
    for v in range(n - 1, 0, -1):
        sub[layout[v][1]] += sub[v]
    adj = tau.adjacency
    colors = tau.colors
    for p, c in tau.edges:
        if sub[c] * 2 != n:
            continue
        cut = [[x for x in a if {x, u} != {p, c}] for u, a in enumerate(adj)]
        below, _ = _rooted(cut, colors, c)
        above, _ = _rooted(cut, colors, p)
        if below == above:
            return below
    return None


def is_superfluous(tau: FreeTree) -> bool:
    return tau._superfluous is not None


def superfluous_witness(tau: FreeTree) -> RootedTree | None:
    """``s`` with ``tau_v = s o s`` for the ends of the splitting edge, or None."""
    return tau._superfluous


def maximizing_vertices(tau: FreeTree) -> list[int]:
    """All vertices ``v`` with ``tau_v = tau_*``, found by trying every rooting."""
    best = canonical_by_brute_force(tau)
    return [v for v, t in enumerate(rootings(tau)) if t == best]


def superfluous_by_maximizers(tau: FreeTree) -> bool:
    """Oracle: superfluous exactly when the canonical rooting is attained twice."""
    return len(maximizing_vertices(tau)) > 1


def epsilon(v: int, tau: FreeTree) -> int:
    """Sign of the rooting at ``v``: 0 on superfluous trees, else parity of the root-shift count."""
    _check_vertex(tau, v)
    if is_superfluous(tau):
        return 0
    return -1 if tau.depths[v] % 2 else 1


def root_shift_count(v: int, tau: FreeTree) -> int:
    """Fewest shifts ``s o t -> t o s`` taking ``tau_v`` to ``tau_*`` (graph distance)."""
    _check_vertex(tau, v)
    return tau.depths[v]


def free_symmetry_factor(tau: FreeTree) -> int:
    """Order of ``Aut tau``: the orbit of the canonical root times its stabilizer."""
    return rooting_count(tau.rep, tau) * symmetry_factor(tau.rep)


def rooting_count(t: RootedTree, tau: FreeTree) -> int:
    """Number of vertices ``v`` with ``tau_v == t``."""
    return sum(1 for r in rootings(tau) if r == t)


# ---------------------------------------------------------------------------
# enumeration


def _check_cap(n: int, colors: int, cap: int | None) -> None:
    if n < 1 or colors < 1:
        raise ValueError("need n >= 1 and at least one colour")
    if cap is None:
        cap = DEFAULT_CAP if colors == 1 else DEFAULT_COLORED_CAP
    if n > cap:
        raise CapExceededError(f"n={n} exceeds the enumeration cap {cap} for {colors} colour(s)")


def enumerate_rooted(n: int, colors: int = 1, cap: int | None = None) -> list[RootedTree]:
    """All rooted trees with ``n`` vertices over ``colors`` colours, in Murua order."""
    _check_cap(n, colors, cap)
    return list(_rooted_upto(n, colors)[n])


@functools.lru_cache(maxsize=None)
def _rooted_upto(n: int, colors: int) -> tuple[tuple[RootedTree, ...], ...]:
    by_size: list[tuple[RootedTree, ...]] = [()]
    for m in range(1, n + 1):
        found = [RootedTree(c, kids) for kids in _forests(m - 1, by_size, 0, 0) for c in range(colors)]
        by_size.append(tuple(sorted(found)))
    return tuple(by_size)


def _forests(total: int, by_size, min_size: int, min_index: int) -> Iterator[tuple[RootedTree, ...]]:
    """Multisets of trees with sizes summing to ``total``, as non-decreasing (size, index) sequences."""
    if total == 0:
        yield ()
        return
    for size in range(max(min_size, 1), total + 1):
        start = min_index if size == min_size else 0
        for i in range(start, len(by_size[size])):
            for rest in _forests(total - size, by_size, size, i):
                yield (by_size[size][i],) + rest


def enumerate_free(n: int, colors: int = 1, cap: int | None = None) -> list[FreeTree]:
    """All free trees with ``n`` vertices, sorted by their canonical representatives."""
    _check_cap(n, colors, cap)
    return list(_free_upto(n, colors))


@functools.lru_cache(maxsize=None)
def _free_upto(n: int, colors: int) -> tuple[FreeTree, ...]:
    return tuple(FreeTree(t) for t in _rooted_upto(n, colors)[n] if project(t).rep == t)


def free_trees_upto(n: int, colors: int = 1, cap: int | None = None) -> list[FreeTree]:
    return [tau for m in range(1, n + 1) for tau in enumerate_free(m, colors, cap)]


def rooted_trees_upto(n: int, colors: int = 1, cap: int | None = None) -> list[RootedTree]:
    return [t for m in range(1, n + 1) for t in enumerate_rooted(m, colors, cap)]


# ---------------------------------------------------------------------------
# text format


def format_tree(t: RootedTree | FreeTree) -> str:
    if isinstance(t, FreeTree):
        return "free:" + format_tree(t.rep)
    parts: list[str] = []

    def rec(node: RootedTree) -> None:
        parts.append("(" if node.color == 0 else f"(c{node.color}")
        for c in node.children:
            rec(c)
        parts.append(")")

    rec(t)
    return "".join(parts)


def parse_tree(text: str) -> RootedTree | FreeTree:
    """Parse ``(c1(())())``-style text; a ``free:`` prefix yields a FreeTree."""
    pos = _skip(text, 0)
    free = text.startswith("free:", pos)
    if free:
        pos = _skip(text, pos + 5)
    t, pos = _parse_rooted(text, pos)
    pos = _skip(text, pos)
    if pos != len(text):
        raise TreeSyntaxError("trailing characters", text, pos)
    return project(t) if free else t


def parse_rooted(text: str) -> RootedTree:
    t = parse_tree(text)
    if not isinstance(t, RootedTree):
        raise ValueError(f"expected a rooted tree, got {text!r}")
    return t


def parse_free(text: str) -> FreeTree:
    """Parse a free tree; a rooted tree without the prefix is projected."""
    t = parse_tree(text)
    return t if isinstance(t, FreeTree) else project(t)


def _skip(text: str, pos: int) -> int:
    while pos < len(text) and text[pos].isspace():
        pos += 1
    return pos


def _parse_rooted(text: str, pos: int) -> tuple[RootedTree, int]:
    if pos >= len(text) or text[pos] != "(":
        raise TreeSyntaxError("expected '('", text, pos)
    pos = _skip(text, pos + 1)
    color = 0
    if pos < len(text) and text[pos] == "c":
        end = pos + 1
        while end < len(text) and text[end].isdigit():
            end += 1
        if end == pos + 1:
            raise TreeSyntaxError("expected digits after 'c'", text, end)
        color = int(text[pos + 1 : end])
        pos = _skip(text, end)
    kids = []
    while pos < len(text) and text[pos] == "(":
        kid, pos = _parse_rooted(text, pos)
        kids.append(kid)
        pos = _skip(text, pos)
    if pos >= len(text) or text[pos] != ")":
        raise TreeSyntaxError("expected ')'", text, pos)
    return RootedTree(color, kids), pos + 1


def tree_pairs(trees: Sequence, max_total: int) -> Iterator[tuple]:
    """Ordered pairs with combined size at most ``max_total``."""
    for a, b in itertools.product(trees, repeat=2):
        if a.size + b.size <= max_total:
            yield a, b
