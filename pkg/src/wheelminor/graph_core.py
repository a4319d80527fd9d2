"""Immutable simple graphs and the elementary vertex-minor operations.

Vertices carry opaque hashable labels.  Internally each graph keeps its
labels in a tuple and stores adjacency as one integer bitmask per vertex,
so local complementation and deletion are cheap even on graphs with a
few thousand vertices.
"""

from __future__ import annotations

import re
from collections.abc import Hashable, Iterable, Iterator, Mapping

from .errors import InputError, ResourceError

Label = Hashable

DEFAULT_ISO_CAP = 64

_DIGITS = re.compile(r"(\d+)")


def label_key(x: Label):
    """Sort key giving a total, human-friendly order on mixed labels.

    Integers sort numerically, strings in natural order ("v2" < "v10"),
    tuples element-wise, anything else by its repr.
    """
    if isinstance(x, bool):
        return (3, repr(x))
    if isinstance(x, int):
        return (0, x)
    if isinstance(x, str):
        parts = tuple((0, int(t)) if t.isdigit() else (1, t) for t in _DIGITS.split(x) if t)
        return (1, parts)
    if isinstance(x, tuple):
        return (2, tuple(label_key(y) for y in x))
    return (3, repr(x))


def sorted_labels(labels: Iterable[Label]) -> list:
    return sorted(labels, key=label_key)


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Graph:
    """A simple undirected graph with stable vertex labels.

    Graphs are values: every operation returns a new graph, and two graphs
    compare equal when they have the same labels and the same edges
    (vertex order is irrelevant for equality).
    """

    __slots__ = ("_labels", "_index", "_rows", "_hash")

    def __init__(self, vertices: Iterable[Label] = (), edges: Iterable[tuple[Label, Label]] = ()):
        labels = list(dict.fromkeys(vertices))
        index = {x: i for i, x in enumerate(labels)}
        pairs = []
        for u, v in edges:
            if u == v:
                raise InputError(f"self-loop at {u!r}")
            for x in (u, v):
                if x not in index:
                    index[x] = len(labels)
                    labels.append(x)
            pairs.append((index[u], index[v]))
        rows = [0] * len(labels)
        for i, j in pairs:
            rows[i] |= 1 << j
            rows[j] |= 1 << i
        self._labels = tuple(labels)
        self._index = index
        self._rows = tuple(rows)
        self._hash = None

    @classmethod
    def _raw(cls, labels: tuple, rows: tuple, index: dict | None = None) -> Graph:
        g = cls.__new__(cls)
        g._labels = labels
        g._index = index if index is not None else {x: i for i, x in enumerate(labels)}
        g._rows = rows
        g._hash = None
        return g

    @classmethod
    def from_adjacency(cls, adj: Mapping[Label, Iterable[Label]]) -> Graph:
        edges = [(u, v) for u, nbrs in adj.items() for v in nbrs]
        g = cls(adj.keys(), edges)
        for u, nbrs in adj.items():
            for v in nbrs:
                if u not in adj.get(v, ()):
                    raise InputError(f"adjacency not symmetric at {u!r}-{v!r}")
        return g

    # basic queries

    @property
    def vertices(self) -> tuple:
        return self._labels

    def __len__(self) -> int:
        return len(self._labels)

    def __iter__(self) -> Iterator[Label]:
        return iter(self._labels)

    def __contains__(self, v: object) -> bool:
        try:
            return v in self._index
        except TypeError:
            return False

    def _i(self, v: Label) -> int:
        try:
            return self._index[v]
        except (KeyError, TypeError):
            raise InputError(f"unknown vertex {v!r}") from None

    def _mask(self, vs: Iterable[Label]) -> int:
        m = 0
        for v in vs:
            m |= 1 << self._i(v)
        return m

    def _labels_of(self, mask: int) -> frozenset:
        return frozenset(self._labels[i] for i in _bits(mask))

    def neighbors(self, v: Label) -> frozenset:
        return self._labels_of(self._rows[self._i(v)])

    def degree(self, v: Label) -> int:
        return self._rows[self._i(v)].bit_count()

    def has_edge(self, u: Label, v: Label) -> bool:
        return bool(self._rows[self._i(u)] >> self._i(v) & 1)

    def edges(self) -> list[tuple[Label, Label]]:
        out = []
        for i, row in enumerate(self._rows):
            for j in _bits(row >> (i + 1) << (i + 1)):
                out.append((self._labels[i], self._labels[j]))
        return out

    def num_edges(self) -> int:
        return sum(r.bit_count() for r in self._rows) // 2

    def adjacency(self) -> dict:
        return {x: self._labels_of(r) for x, r in zip(self._labels, self._rows)}

    def neighborhood_of_set(self, s: Iterable[Label]) -> frozenset:
        """Vertices outside ``s`` with a neighbor in ``s``."""
        m = self._mask(s)
        out = 0
        for i in _bits(m):
            out |= self._rows[i]
        return self._labels_of(out & ~m)

    def relabel(self, mapping: Mapping[Label, Label]) -> Graph:
        labels = tuple(mapping.get(x, x) for x in self._labels)
        if len(set(labels)) != len(labels):
            raise InputError("relabeling is not injective")
        return Graph._raw(labels, self._rows)

    def sorted(self) -> Graph:
        """The same graph with vertices listed in ascending label order."""
        order = sorted(range(len(self._labels)), key=lambda i: label_key(self._labels[i]))
        return _reorder(self, order)

    # value semantics

    def _same_order_rows(self, other: Graph) -> tuple | None:
        if self._labels == other._labels:
            return other._rows
        if len(self._labels) != len(other._labels):
            return None
        try:
            perm = [other._index[x] for x in self._labels]
        except KeyError:
            return None
        pos = {j: i for i, j in enumerate(perm)}
        rows = []
        for j in perm:
            r = 0
            for k in _bits(other._rows[j]):
                r |= 1 << pos[k]
            rows.append(r)
        return tuple(rows)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        rows = self._same_order_rows(other)
        return rows is not None and rows == self._rows

    def __hash__(self) -> int:
        if self._hash is None:
            edges = frozenset(frozenset(e) for e in self.edges())
            self._hash = hash((frozenset(self._labels), edges))
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={len(self)}, m={self.num_edges()})"


def _reorder(g: Graph, order: list[int]) -> Graph:
    pos = {j: i for i, j in enumerate(order)}
    rows = []
    for j in order:
        r = 0
        for k in _bits(g._rows[j]):
            r |= 1 << pos[k]
        rows.append(r)
    return Graph._raw(tuple(g._labels[j] for j in order), tuple(rows))


# operations


def local_complement(g: Graph, v: Label) -> Graph:
    """G*v: complement the subgraph induced on the neighborhood of ``v``."""
    nb = g._rows[g._i(v)]
    rows = list(g._rows)
    for i in _bits(nb):
        rows[i] ^= nb & ~(1 << i)
    return Graph._raw(g._labels, tuple(rows), g._index)


def pivot(g: Graph, u: Label, v: Label) -> Graph:
    """G∧uv, defined as G*u*v*u; ``uv`` must be an edge."""
    if not g.has_edge(u, v):
        raise InputError(f"pivot needs an edge, {u!r}{v!r} is not one")
    return local_complement(local_complement(local_complement(g, u), v), u)


def pivot_by_flip(g: Graph, u: Label, v: Label) -> Graph:
    """G∧uv computed by flipping pairs across the three neighborhood classes.

    With A = N(u) minus N(v) and v, B = N(v) minus N(u) and u, and
    C = N(u) ∩ N(v), every pair in distinct classes is toggled and then
    the labels u and v are exchanged.
    """
    if not g.has_edge(u, v):
        raise InputError(f"pivot needs an edge, {u!r}{v!r} is not one")
    iu, iv = g._i(u), g._i(v)
    nu, nv = g._rows[iu], g._rows[iv]
    a = nu & ~nv & ~(1 << iv)
    b = nv & ~nu & ~(1 << iu)
    c = nu & nv
    rows = list(g._rows)
    for i in _bits(a):
        rows[i] ^= b | c
    for i in _bits(b):
        rows[i] ^= a | c
    for i in _bits(c):
        rows[i] ^= a | b
    # exchanging labels u and v is a transposition of two rows and two columns
    bu, bv = 1 << iu, 1 << iv
    for i in range(len(rows)):
        r = rows[i]
        hu, hv = r & bu, r & bv
        if bool(hu) != bool(hv):
            rows[i] = r ^ bu ^ bv
    rows[iu], rows[iv] = rows[iv], rows[iu]
    return Graph._raw(g._labels, tuple(rows), g._index)


def is_smoothable(g: Graph, v: Label) -> bool:
    row = g._rows[g._i(v)]
    if row.bit_count() != 2:
        return False
    a, b = _bits(row)
    return not g._rows[a] >> b & 1


def smooth(g: Graph, v: Label) -> Graph:
    """Replace a degree-2 vertex with non-adjacent neighbors by an edge."""
    i = g._i(v)
    if g._rows[i].bit_count() != 2:
        raise InputError(f"cannot smooth {v!r}: degree {g._rows[i].bit_count()} is not 2")
    if not is_smoothable(g, v):
        raise InputError(f"cannot smooth {v!r}: its neighbors are adjacent")
    return delete(local_complement(g, v), [v])


def _keep(g: Graph, keep: int) -> Graph:
    idx = list(_bits(keep))
    pos = {j: k for k, j in enumerate(idx)}
    rows = []
    for j in idx:
        r = 0
        for k in _bits(g._rows[j] & keep):
            r |= 1 << pos[k]
        rows.append(r)
    return Graph._raw(tuple(g._labels[j] for j in idx), tuple(rows))


def delete(g: Graph, s: Iterable[Label]) -> Graph:
    """G − S."""
    return _keep(g, ((1 << len(g)) - 1) & ~g._mask(s))


def induced(g: Graph, s: Iterable[Label]) -> Graph:
    """G[S], keeping the vertex order of ``g``."""
    return _keep(g, g._mask(s))


def contract_connected(g: Graph, s: Iterable[Label], new_label: Label | None = None) -> Graph:
    """G/S: replace the connected set S by one fresh vertex adjacent to N(S)."""
    s = list(dict.fromkeys(s))
    if not s:
        raise InputError("cannot contract an empty set")
    if not is_connected(induced(g, s)):
        raise InputError("contracted set does not induce a connected subgraph")
    if new_label is None:
        new_label = "/".join(str(x) for x in sorted_labels(s))
    if new_label in g and new_label not in s:
        raise InputError(f"label {new_label!r} already in use")
    nbrs = g.neighborhood_of_set(s)
    rest = delete(g, s)
    labels = rest._labels + (new_label,)
    k = len(rest)
    nmask = rest._mask(nbrs)
    rows = [r | (1 << k) if nmask >> i & 1 else r for i, r in enumerate(rest._rows)]
    rows.append(nmask)
    return Graph._raw(labels, tuple(rows))


def add_edges(g: Graph, pairs: Iterable[tuple[Label, Label]]) -> Graph:
    rows = list(g._rows)
    for u, v in pairs:
        i, j = g._i(u), g._i(v)
        if i == j:
            raise InputError(f"self-loop at {u!r}")
        rows[i] |= 1 << j
        rows[j] |= 1 << i
    return Graph._raw(g._labels, tuple(rows), g._index)


def remove_edges(g: Graph, pairs: Iterable[tuple[Label, Label]]) -> Graph:
    rows = list(g._rows)
    for u, v in pairs:
        i, j = g._i(u), g._i(v)
        rows[i] &= ~(1 << j)
        rows[j] &= ~(1 << i)
    return Graph._raw(g._labels, tuple(rows), g._index)


# connectivity


def components(g: Graph) -> list[frozenset]:
    left = (1 << len(g)) - 1
    out = []
    while left:
        seen = left & -left
        frontier = seen
        while frontier:
            nxt = 0
            for i in _bits(frontier):
                nxt |= g._rows[i]
            frontier = nxt & ~seen
            seen |= frontier
        out.append(g._labels_of(seen))
        left &= ~seen
    return out


def is_connected(g: Graph) -> bool:
    return len(g) <= 1 or len(components(g)) == 1


def shortest_path(g: Graph, src: Label, dst: Label, within: Iterable[Label] | None = None) -> list | None:
    """A shortest path from ``src`` to ``dst``, optionally inside ``within``."""
    allowed = g._mask(within) | (1 << g._i(src)) | (1 << g._i(dst)) if within is not None else (1 << len(g)) - 1
    s, t = g._i(src), g._i(dst)
    parent = {s: None}
    frontier = [s]
    while frontier and t not in parent:
        nxt = []
        for i in frontier:
            for j in _bits(g._rows[i] & allowed):
                if j not in parent:
                    parent[j] = i
                    nxt.append(j)
        frontier = nxt
    if t not in parent:
        return None
    path = [t]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    return [g._labels[i] for i in reversed(path)]


# isomorphism


def _refine(rows: list[int], colours: list) -> list:
    """Colour refinement to a stable partition; colours are canonical ints."""
    n = len(rows)
    classes = len(set(colours))
    while True:
        sigs = [(colours[i], tuple(sorted(colours[j] for j in _bits(rows[i])))) for i in range(n)]
        ids = {s: k for k, s in enumerate(sorted(set(sigs)))}
        new = [ids[s] for s in sigs]
        if len(ids) == classes:
            return new
        colours, classes = new, len(ids)


def invariant(g: Graph) -> tuple:
    """An isomorphism invariant: order, size and the refined colour histogram."""
    rows = list(g._rows)
    colours = [r.bit_count() for r in rows]
    history = []
    classes = -1
    while True:
        sigs = [(colours[i], tuple(sorted(colours[j] for j in _bits(rows[i])))) for i in range(len(rows))]
        uniq = sorted(set(sigs))
        history.append(tuple(sorted(sigs)))
        if len(uniq) == classes:
            break
        ids = {s: k for k, s in enumerate(uniq)}
        colours = [ids[s] for s in sigs]
        classes = len(uniq)
    return (len(g), g.num_edges(), tuple(history))


def _backtrack(g_rows, h_rows, order, cand, induced_only=True):
    """Extend a partial map g->h vertex by vertex, checking adjacency."""
    k = len(order)
    mapping = [-1] * len(g_rows)
    used = 0
    stack = [0]
    iters = [None] * k

    def ok(x, y, depth):
        for d in range(depth):
            x2 = order[d]
            y2 = mapping[x2]
            if (g_rows[x] >> x2 & 1) != (h_rows[y] >> y2 & 1):
                return False
        return True

    depth = 0
    iters[0] = iter(cand[order[0]]) if k else None
    if k == 0:
        return mapping
    while depth >= 0:
        x = order[depth]
        placed = False
        for y in iters[depth]:
            if used >> y & 1 or not ok(x, y, depth):
                continue
            mapping[x] = y
            used |= 1 << y
            placed = True
            break
        if not placed:
            mapping[x] = -1
            depth -= 1
            if depth >= 0:
                used &= ~(1 << mapping[order[depth]])
            continue
        if depth == k - 1:
            return mapping
        depth += 1
        iters[depth] = iter(cand[order[depth]])
    return None


def _search_order(rows: list[int], weight: list[int]) -> list[int]:
    """Vertices in an order that keeps each next vertex attached to earlier ones."""
    n = len(rows)
    left = set(range(n))
    order = []
    placed = 0
    while left:
        best = min(left, key=lambda i: (-(rows[i] & placed).bit_count(), weight[i], -rows[i].bit_count(), i))
        order.append(best)
        placed |= 1 << best
        left.remove(best)
    return order


def isomorphism(g: Graph, h: Graph, max_vertices: int = DEFAULT_ISO_CAP) -> dict | None:
    """A label mapping g -> h that is an isomorphism, or None."""
    n = len(g)
    if max(n, len(h)) > max_vertices:
        raise ResourceError(f"isomorphism test limited to {max_vertices} vertices")
    if n != len(h) or g.num_edges() != h.num_edges():
        return None
    if sorted(r.bit_count() for r in g._rows) != sorted(r.bit_count() for r in h._rows):
        return None
    rows = list(g._rows) + [r << n for r in h._rows]
    colours = _refine(rows, [r.bit_count() for r in rows])
    cg, ch = colours[:n], colours[n:]
    if sorted(cg) != sorted(ch):
        return None
    by_colour: dict[int, list[int]] = {}
    for j, c in enumerate(ch):
        by_colour.setdefault(c, []).append(j)
    size = {c: len(v) for c, v in by_colour.items()}
    cand = [by_colour[c] for c in cg]
    order = _search_order(list(g._rows), [size[c] for c in cg])
    m = _backtrack(list(g._rows), list(h._rows), order, cand)
    if m is None:
        return None
    return {g._labels[i]: h._labels[m[i]] for i in range(n)}


def is_isomorphic(g: Graph, h: Graph, max_vertices: int = DEFAULT_ISO_CAP) -> bool:
    return isomorphism(g, h, max_vertices) is not None


def induced_copy(g: Graph, h: Graph, max_vertices: int = DEFAULT_ISO_CAP) -> dict | None:
    """A mapping h -> g whose image induces a copy of ``h`` in ``g``, or None."""
    if len(g) > max_vertices:
        raise ResourceError(f"subgraph search limited to {max_vertices} vertices")
    k = len(h)
    if k > len(g):
        return None
    gd = [r.bit_count() for r in g._rows]
    hrows = list(h._rows)
    cand = [[y for y in range(len(g)) if gd[y] >= hrows[x].bit_count()] for x in range(k)]
    order = _search_order(hrows, [len(c) for c in cand])
    m = _backtrack(hrows, list(g._rows), order, cand)
    if m is None:
        return None
    return {h._labels[i]: g._labels[m[i]] for i in range(k)}


# named families


def path_graph(labels: Iterable[Label]) -> Graph:
    labels = list(labels)
    return Graph(labels, zip(labels, labels[1:]))


def cycle_graph(labels: Iterable[Label]) -> Graph:
    labels = list(labels)
    return Graph(labels, list(zip(labels, labels[1:])) + [(labels[-1], labels[0])])


def complete_graph(labels: Iterable[Label]) -> Graph:
    labels = list(labels)
    return Graph(labels, [(a, b) for i, a in enumerate(labels) for b in labels[i + 1:]])


def wheel(n: int) -> Graph:
    """W_n: rim 0..n-1 and hub ``"hub"``."""
    if n < 3:
        raise InputError("a wheel needs at least 3 rim vertices")
    rim = cycle_graph(range(n))
    return Graph(list(rim) + ["hub"], rim.edges() + [("hub", i) for i in range(n)])


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    return Graph(range(10), outer + inner + spokes)


def disjoint_union(g: Graph, h: Graph) -> Graph:
    if set(g) & set(h):
        raise InputError("graphs share labels")
    return Graph(list(g) + list(h), g.edges() + h.edges())


# text formats


def to_graph6(g: Graph) -> str:
    """graph6 encoding of ``g`` in its vertex order."""
    n = len(g)
    if n <= 62:
        head = chr(63 + n)
    elif n <= 258047:
        head = "~" + "".join(chr(63 + (n >> s & 63)) for s in (12, 6, 0))
    else:
        head = "~~" + "".join(chr(63 + (n >> s & 63)) for s in (30, 24, 18, 12, 6, 0))
    bits = [g._rows[j] >> i & 1 for j in range(1, n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    body = "".join(chr(63 + int("".join(map(str, bits[k:k + 6])), 2)) for k in range(0, len(bits), 6))
    return head + body


def from_graph6(text: str | bytes, labels: Iterable[Label] | None = None) -> Graph:
    """Decode graph6; vertices are 0..n-1 unless ``labels`` are given."""
    if isinstance(text, bytes):
        text = text.decode("ascii")
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[10:]
    data = [ord(c) - 63 for c in s]
    if any(d < 0 or d > 63 for d in data):
        raise InputError("not a graph6 string")
    if not data:
        raise InputError("empty graph6 string")
    if data[0] != 63:
        n, data = data[0], data[1:]
    elif len(data) > 1 and data[1] != 63:
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        data = data[4:]
    else:
        n = 0
        for d in data[2:8]:
            n = (n << 6) | d
        data = data[8:]
    need = n * (n - 1) // 2
    if len(data) != (need + 5) // 6:
        raise InputError("graph6 length does not match vertex count")
    bits = [(d >> (5 - k)) & 1 for d in data for k in range(6)]
    rows = [0] * n
    pos = 0
    for j in range(1, n):
        for i in range(j):
            if bits[pos]:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            pos += 1
    names = tuple(labels) if labels is not None else tuple(range(n))
    if len(names) != n or len(set(names)) != n:
        raise InputError("label list does not match vertex count")
    return Graph._raw(names, tuple(rows))


def to_dot(g: Graph, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    lines += [f'  "{v}";' for v in g]
    lines += [f'  "{u}" -- "{v}";' for u, v in g.edges()]
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_adjlist(g: Graph) -> str:
    """One line per vertex: ``label: nbr nbr ...`` in vertex order."""
    out = []
    for v in g:
        nbrs = [str(x) for x in g if g.has_edge(v, x)]
        out.append(f"{v}: {' '.join(nbrs)}".rstrip())
    return "\n".join(out) + "\n"


def from_adjlist(text: str) -> Graph:
    """Parse the named adjacency-list format; ``#`` starts a comment."""
    vertices, edges = [], []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise InputError(f"missing ':' in adjacency line {line!r}")
        head, rest = line.split(":", 1)
        head = head.strip()
        vertices.append(head)
        edges += [(head, x) for x in rest.split()]
    return Graph(vertices, edges)
