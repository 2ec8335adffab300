"""Leaf-labelled trees without bivalent vertices: faces, enumeration, filling.

The objects are finite unrooted trees in which every leaf carries a distinct
integer label, every internal vertex has valency at least three, and no
vertex has valency exactly two.  With leaves labelled ``0..n`` these trees
form a graded family: the i-th face erases leaf ``i`` (smoothing the vertex
it hung on if that vertex becomes bivalent) and shifts the labels above
``i`` down by one.

Two layers of the same operation coexist on purpose.  ``erase(t, label)``
works over an arbitrary label set and performs no shifting; it is the
workhorse for reconstruction, where label arithmetic would only obscure the
combinatorics.  ``face(t, i)`` is the graded boundary map and is the only
place renumbering happens.

``fill`` solves the unique-filling problem in dimensions five and up: given
a compatible tuple of prospective faces it returns the one tree having
exactly those faces.  The strategy mirrors how such a tree can be probed by
erasing pairs of leaves: find two labels that are non-adjacent in every
prescribed face and reconstruct from that pair; degenerate tuples (all faces
one- or two-vertex trees) are built directly, and the residual
five-dimensional case falls back to a bounded scan over all 236 trees on six
labels.
"""

from __future__ import annotations

import functools
import itertools
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass

from .delta import DeltaFamily
from .errors import (
    BudgetExceededError,
    InconsistencyError,
    MultipleFillError,
    NoFillError,
    ParseError,
    ValidationError,
)

__all__ = [
    "MarkedTree",
    "AttachSite",
    "DEFAULT_BUDGET",
    "star",
    "bipartition_tree",
    "erase",
    "face",
    "relabel",
    "attach",
    "attach_sites",
    "adjacent",
    "labels_through",
    "leaf_blocks",
    "enumerate_trees",
    "sample_tree",
    "reconstruct_pair",
    "fill",
    "fill_labelled",
    "TREE_FAMILY",
]

DEFAULT_BUDGET = 10**6

# Tags for the canonical encoding.  Groups (internal subtrees) sort before
# single leaves, and leaves sort by label; this fixes the sibling order used
# everywhere a deterministic order is needed.
_GROUP = 0
_LEAF = 1


def _canonical_data(adj, labels):
    """Validate and canonically renumber a tree given as adjacency + labels.

    Returns ``(neighbors, labels_by_vertex, key, old_to_new)`` where vertex 0
    is the leaf with the smallest label and the rest follow in preorder of
    the rooted form, children visited in canonical sibling order.
    """
    if not labels:
        raise ValidationError("a tree needs at least one labelled leaf")
    if len(set(labels.values())) != len(labels):
        raise ValidationError("leaf labels must be distinct")
    for v in labels:
        if v not in adj:
            raise ValidationError(f"labelled vertex {v} does not occur in the tree")

    n_vertices = len(adj)
    n_edges = sum(len(nb) for nb in adj.values()) // 2
    if n_edges != n_vertices - 1:
        raise ValidationError(
            f"{n_vertices} vertices need {n_vertices - 1} edges to form a tree, "
            f"got {n_edges}"
        )
    # Connectivity; with the edge count above this makes the graph a tree.
    seen = set()
    stack = [next(iter(adj))]
    while stack:
        u = stack.pop()
        if u in seen:
            continue
        seen.add(u)
        stack.extend(adj[u] - seen)
    if len(seen) != n_vertices:
        raise ValidationError("the graph is not connected")

    for v, nb in adj.items():
        deg = len(nb)
        if deg == 2:
            raise ValidationError(f"vertex {v} is bivalent")
        if deg <= 1 and v not in labels:
            raise ValidationError(f"leaf vertex {v} carries no label")
        if deg >= 3 and v in labels:
            raise ValidationError(f"internal vertex {v} carries label {labels[v]}")

    root = min(labels, key=labels.__getitem__)

    if n_vertices == 1:
        lab = labels[root]
        return ((),), (lab,), (lab,), {root: 0}

    enc_memo: dict[tuple[int, int], tuple] = {}

    def enc(u, parent):
        got = enc_memo.get((u, parent))
        if got is not None:
            return got
        if u in labels:
            out = (_LEAF, labels[u])
        else:
            out = (_GROUP, tuple(sorted(enc(w, u) for w in adj[u] if w != parent)))
        enc_memo[(u, parent)] = out
        return out

    (first,) = adj[root]
    key = (labels[root], enc(first, root))

    old_to_new = {root: 0}
    order = [root]

    def visit(u, parent):
        old_to_new[u] = len(order)
        order.append(u)
        if u not in labels:
            for w in sorted((v for v in adj[u] if v != parent), key=lambda v: enc(v, u)):
                visit(w, u)

    visit(first, root)

    neighbors = tuple(
        tuple(sorted(old_to_new[w] for w in adj[u])) for u in order
    )
    labels_by_vertex = tuple(labels.get(u) for u in order)
    return neighbors, labels_by_vertex, key, old_to_new


@functools.total_ordering
class MarkedTree:
    """An unrooted tree with distinctly labelled leaves and no bivalent vertex.

    Vertices are renumbered canonically on construction: vertex 0 is the leaf
    with the smallest label and the remaining vertices follow in preorder of
    the canonical rooted form, so equal trees have identical vertex data.
    Equality, hashing and ordering all go through the canonical encoding.
    Instances are immutable; every operation returns a new tree.
    """

    __slots__ = ("_neighbors", "_labels", "_key", "_leaf_vertex")

    def __init__(
        self,
        edges: Iterable[tuple[int, int]] = (),
        leaf_labels: Mapping[int, int] | None = None,
    ):
        if leaf_labels is None:
            raise ValidationError("a tree needs at least one labelled leaf")
        adj: dict[int, set[int]] = {v: set() for v in leaf_labels}
        for u, v in edges:
            if u == v:
                raise ValidationError(f"self-loop at vertex {u}")
            if v in adj.get(u, ()):
                raise ValidationError(f"duplicate edge ({u}, {v})")
            adj.setdefault(u, set()).add(v)
            adj.setdefault(v, set()).add(u)
        self._init_from(*_canonical_data(adj, dict(leaf_labels))[:3])

    def _init_from(self, neighbors, labels, key):
        self._neighbors = neighbors
        self._labels = labels
        self._key = key
        self._leaf_vertex = {
            lab: v for v, lab in enumerate(labels) if lab is not None
        }

    @classmethod
    def _from_data(cls, adj, labels):
        """Build from adjacency/label dicts; also return the old->new vertex map."""
        neighbors, labs, key, old_to_new = _canonical_data(adj, labels)
        t = object.__new__(cls)
        t._init_from(neighbors, labs, key)
        return t, old_to_new

    # -- basic accessors ---------------------------------------------------

    @property
    def sort_key(self):
        """Canonical encoding; a total order on all trees."""
        return self._key

    @property
    def labels(self) -> frozenset[int]:
        return frozenset(self._leaf_vertex)

    @property
    def n_leaves(self) -> int:
        return len(self._leaf_vertex)

    @property
    def vertex_count(self) -> int:
        return len(self._neighbors)

    def valency(self, v: int) -> int:
        return len(self._neighbors[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._neighbors[v]

    def label_of(self, v: int) -> int | None:
        """The label at vertex ``v``, or ``None`` for an internal vertex."""
        return self._labels[v]

    def is_leaf(self, v: int) -> bool:
        return self._labels[v] is not None

    def leaf_vertex(self, label: int) -> int:
        try:
            return self._leaf_vertex[label]
        except KeyError:
            raise ValueError(f"no leaf labelled {label}") from None

    def neighbor_of_leaf(self, label: int) -> int:
        """The unique vertex the leaf labelled ``label`` is attached to."""
        v = self.leaf_vertex(label)
        nb = self._neighbors[v]
        if not nb:
            raise ValueError("a one-vertex tree has no edges")
        return nb[0]

    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(
            (u, v)
            for u in range(len(self._neighbors))
            for v in self._neighbors[u]
            if u < v
        )

    def internal_vertices(self) -> tuple[int, ...]:
        return tuple(
            v for v in range(len(self._neighbors)) if self._labels[v] is None
        )

    def adjacency(self) -> dict[int, set[int]]:
        """A fresh mutable adjacency dict (surgery input)."""
        return {v: set(nb) for v, nb in enumerate(self._neighbors)}

    def labels_dict(self) -> dict[int, int]:
        """A fresh mutable vertex -> label dict (surgery input)."""
        return {v: lab for lab, v in self._leaf_vertex.items()}

    # -- comparisons ---------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, MarkedTree):
            return NotImplemented
        return self._key == other._key

    def __lt__(self, other) -> bool:
        if not isinstance(other, MarkedTree):
            return NotImplemented
        return self._key < other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return f"MarkedTree.from_newick({self.to_newick()!r})"

    # -- text form -----------------------------------------------------------

    def to_newick(self) -> str:
        """Canonical parenthesized form, e.g. ``(1,2,3)0;`` for a 4-leaf star.

        The tree is rooted at its smallest leaf, printed last; siblings occur
        in canonical order (subtrees before single leaves, leaves by label).
        A one-vertex tree prints as ``label;`` and a single edge as
        ``(other)min;``.
        """
        if self.vertex_count == 1:
            return f"{self._labels[0]};"
        root_label = self._labels[0]
        if self.vertex_count == 2:
            return f"({self._labels[1]}){root_label};"

        def render(u: int, parent: int) -> str:
            if self._labels[u] is not None:
                return str(self._labels[u])
            inner = ",".join(
                render(w, u) for w in self._neighbors[u] if w != parent
            )
            return f"({inner})"

        return f"{render(self._neighbors[0][0], 0)}{root_label};"

    @classmethod
    def from_newick(cls, text: str) -> "MarkedTree":
        """Parse the parenthesized form produced by :meth:`to_newick`."""
        return _parse_newick(text)

    # -- structured forms ------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "format": "tree",
            "version": 1,
            "labels": self.n_leaves,
            "edges": [list(e) for e in self.edges()],
            "leaf_labels": {
                str(v): lab for v, lab in enumerate(self._labels) if lab is not None
            },
        }

    @classmethod
    def from_json_dict(cls, data: object) -> "MarkedTree":
        if not isinstance(data, dict):
            raise ParseError("tree document must be a JSON object")
        for field in ("edges", "leaf_labels"):
            if field not in data:
                raise ParseError(f"tree document is missing the {field!r} field")
        edges = data["edges"]
        raw_labels = data["leaf_labels"]
        if not isinstance(edges, list) or not isinstance(raw_labels, dict):
            raise ParseError("tree document fields have the wrong shape")
        try:
            pairs = [(int(u), int(v)) for u, v in edges]
            labels = {int(v): int(lab) for v, lab in raw_labels.items()}
        except (TypeError, ValueError) as exc:
            raise ParseError(f"tree document contains a non-integer entry: {exc}") from None
        declared = data.get("labels")
        if declared is not None and declared != len(labels):
            raise ParseError(
                f"tree document declares {declared} labels but lists {len(labels)}"
            )
        return cls(pairs, labels)

    def to_dot(self) -> str:
        """Graphviz form: labelled leaf nodes, point-shaped internal nodes."""
        lines = ["graph tree {", "  node [shape=point];"]
        for v in range(self.vertex_count):
            lab = self._labels[v]
            if lab is not None:
                lines.append(f'  v{v} [shape=plaintext, label="{lab}"];')
        for u, v in self.edges():
            lines.append(f"  v{u} -- v{v};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def _parse_newick(text: str) -> MarkedTree:
    s = text.strip()
    pos = 0

    def fail(message: str):
        raise ParseError(message, position=pos)

    def peek() -> str:
        return s[pos] if pos < len(s) else ""

    def parse_label() -> int:
        nonlocal pos
        start = pos
        while pos < len(s) and s[pos].isdigit():
            pos += 1
        if pos == start:
            fail(f"expected a label, found {s[start:start + 1]!r}")
        return int(s[start:pos])

    # item := label | group ; returns ("leaf", label) or ("node", [items])
    def parse_item():
        nonlocal pos
        if peek() == "(":
            pos += 1
            items = [parse_item()]
            while peek() == ",":
                pos += 1
                items.append(parse_item())
            if peek() != ")":
                fail("expected ',' or ')'")
            pos += 1
            return ("node", items)
        return ("leaf", parse_label())

    if not s:
        raise ParseError("empty input", position=0)

    group = None
    if peek() == "(":
        group = parse_item()
    root_label = parse_label()
    if peek() != ";":
        fail("expected ';'")
    pos += 1
    if pos != len(s):
        fail("trailing characters after ';'")

    counter = itertools.count(1)
    adj: dict[int, set[int]] = {0: set()}
    labels = {0: root_label}

    def build(item, parent: int) -> None:
        kind, payload = item
        vid = next(counter)
        adj[vid] = {parent}
        adj[parent].add(vid)
        if kind == "leaf":
            labels[vid] = payload
        else:
            for sub in payload:
                build(sub, vid)

    if group is not None:
        items = group[1]
        if len(items) == 1:
            # A singleton group can only denote the two-leaf tree: an internal
            # vertex with a single child would be bivalent.
            kind, payload = items[0]
            if kind != "leaf":
                raise ParseError(
                    "a singleton group must contain a bare label", position=0
                )
            build(items[0], 0)
        else:
            build(group, 0)
    return MarkedTree(
        [(u, v) for u, nb in adj.items() for v in nb if u < v], labels
    )


# -- attach sites -------------------------------------------------------------


@dataclass(frozen=True, order=True)
class AttachSite:
    """A place where a new leaf can be attached: a vertex or an edge midpoint.

    Exactly one of ``vertex`` / ``edge`` is set.  Attaching at a vertex adds
    a pendant leaf there (legal only where that does not create a bivalent
    vertex); attaching on an edge subdivides it with a new trivalent vertex
    carrying the leaf.
    """

    vertex: int | None = None
    edge: tuple[int, int] | None = None

    def __post_init__(self):
        if (self.vertex is None) == (self.edge is None):
            raise ValueError("an attach site is either a vertex or an edge")

    @classmethod
    def at_vertex(cls, v: int) -> "AttachSite":
        return cls(vertex=v)

    @classmethod
    def on_edge(cls, u: int, v: int) -> "AttachSite":
        return cls(edge=(min(u, v), max(u, v)))


def attach_sites(t: MarkedTree) -> tuple[AttachSite, ...]:
    """All sites of ``t``, vertices first, in deterministic order.

    Vertex sites are the internal vertices (the lone vertex of a one-vertex
    tree counts: attaching there creates a single edge, not a bivalent
    vertex).  Edge sites are all edges.
    """
    if t.vertex_count == 1:
        return (AttachSite.at_vertex(0),)
    verts = [
        AttachSite.at_vertex(v) for v in range(t.vertex_count) if t.valency(v) >= 2
    ]
    edges = [AttachSite.on_edge(u, v) for u, v in t.edges()]
    return tuple(verts) + tuple(edges)


def attach(t: MarkedTree, site: AttachSite, label: int) -> MarkedTree:
    """Attach a new leaf carrying ``label`` at ``site``."""
    if label in t.labels:
        raise ValueError(f"label {label} already occurs in the tree")
    adj = t.adjacency()
    labels = t.labels_dict()
    nxt = t.vertex_count
    if site.vertex is not None:
        v = site.vertex
        if v not in adj:
            raise ValueError(f"stale site: no vertex {v}")
        if len(adj[v]) == 1:
            raise ValueError("attaching at a leaf would create a bivalent vertex")
        adj[v].add(nxt)
        adj[nxt] = {v}
        labels[nxt] = label
    else:
        u, v = site.edge
        if u not in adj or v not in adj[u]:
            raise ValueError(f"stale site: no edge ({u}, {v})")
        mid, leaf = nxt, nxt + 1
        adj[u].discard(v)
        adj[v].discard(u)
        adj[u].add(mid)
        adj[v].add(mid)
        adj[mid] = {u, v, leaf}
        adj[leaf] = {mid}
        labels[leaf] = label
    return MarkedTree._from_data(adj, labels)[0]


# -- face maps ----------------------------------------------------------------


@functools.lru_cache(maxsize=None)
def erase(t: MarkedTree, label: int) -> MarkedTree:
    """Remove the leaf carrying ``label``; smooth a resulting bivalent vertex.

    Works over any label set and performs no renumbering.  Erasing the only
    leaf of a one-vertex tree is an error.
    """
    if label not in t.labels:
        raise ValueError(f"no leaf labelled {label}")
    if t.vertex_count == 1:
        raise ValueError("cannot erase the only leaf of a one-vertex tree")
    adj = t.adjacency()
    labels = t.labels_dict()
    x = t.leaf_vertex(label)
    (v,) = adj[x]
    adj[v].discard(x)
    del adj[x]
    del labels[x]
    if len(adj[v]) == 2 and v not in labels:
        u, w = adj[v]
        adj[u].discard(v)
        adj[w].discard(v)
        adj[u].add(w)
        adj[w].add(u)
        del adj[v]
    return MarkedTree._from_data(adj, labels)[0]


def relabel(t: MarkedTree, mapping: Mapping[int, int]) -> MarkedTree:
    """Apply an injective partial relabelling to the leaves."""
    labels = {v: mapping.get(lab, lab) for v, lab in t.labels_dict().items()}
    return MarkedTree._from_data(t.adjacency(), labels)[0]


def _graded_dim(t: MarkedTree) -> int:
    """Dimension of ``t`` in the graded family; labels must be 0..n."""
    n = t.n_leaves - 1
    if t.labels != frozenset(range(n + 1)):
        raise ValueError(
            f"graded operations need labels 0..{n}, got {sorted(t.labels)}"
        )
    return n


@functools.lru_cache(maxsize=None)
def face(t: MarkedTree, i: int) -> MarkedTree:
    """The i-th boundary: erase leaf ``i`` and shift labels above ``i`` down."""
    n = _graded_dim(t)
    if not 0 <= i <= n:
        raise ValueError(f"face index must satisfy 0 <= i <= {n}, got {i}")
    if n == 0:
        raise ValueError("a one-vertex tree has no faces")
    out = erase(t, i)
    return relabel(out, {j: j - 1 for j in range(i + 1, n + 1)})


# -- small builders -------------------------------------------------------------


def star(labels: Iterable[int]) -> MarkedTree:
    """The tree whose leaves all hang on one internal vertex.

    With one label this is the one-vertex tree and with two a single edge
    (there is no internal vertex to speak of in either case).
    """
    labs = sorted(labels)
    if not labs:
        raise ValueError("a star needs at least one label")
    if len(labs) == 1:
        return MarkedTree((), {0: labs[0]})
    if len(labs) == 2:
        return MarkedTree([(0, 1)], {0: labs[0], 1: labs[1]})
    center = len(labs)
    return MarkedTree(
        [(i, center) for i in range(len(labs))],
        {i: lab for i, lab in enumerate(labs)},
    )


def bipartition_tree(part_a: Iterable[int], part_b: Iterable[int]) -> MarkedTree:
    """The two-vertex tree whose internal edge splits the labels as given."""
    a, b = sorted(part_a), sorted(part_b)
    if len(a) < 2 or len(b) < 2:
        raise ValueError("each side of the split needs at least two labels")
    if set(a) & set(b):
        raise ValueError("the two sides must be disjoint")
    va, vb = len(a) + len(b), len(a) + len(b) + 1
    edges = [(va, vb)]
    labels = {}
    for i, lab in enumerate(a):
        edges.append((i, va))
        labels[i] = lab
    for i, lab in enumerate(b, start=len(a)):
        edges.append((i, vb))
        labels[i] = lab
    return MarkedTree(edges, labels)


# -- structure probes ------------------------------------------------------------


def labels_through(t: MarkedTree, v: int, u: int) -> frozenset[int]:
    """Labels in the component of ``u`` after cutting the edge ``(v, u)``."""
    if u not in t.neighbors(v):
        raise ValueError(f"({v}, {u}) is not an edge")
    out = set()
    stack = [u]
    seen = {v, u}
    while stack:
        w = stack.pop()
        lab = t.label_of(w)
        if lab is not None:
            out.add(lab)
        for x in t.neighbors(w):
            if x not in seen:
                seen.add(x)
                stack.append(x)
    return frozenset(out)


def leaf_blocks(t: MarkedTree, v: int) -> dict[int, frozenset[int]]:
    """For each neighbor ``u`` of ``v``, the labels reachable through ``u``.

    The blocks partition the full label set and identify the vertex: no two
    vertices induce the same partition.
    """
    return {u: labels_through(t, v, u) for u in t.neighbors(v)}


def adjacent(t: MarkedTree, a: int, b: int) -> bool:
    """Whether leaves ``a`` and ``b`` are adjacent.

    Two leaves are adjacent when they hang on the same vertex, or when their
    vertices are both trivalent and joined by an edge.  Exactly the adjacent
    pairs are the ones whose simultaneous erasure loses information.
    """
    if a == b:
        raise ValueError("adjacency needs two distinct labels")
    va = t.neighbor_of_leaf(a)
    vb = t.neighbor_of_leaf(b)
    if va == vb:
        return True
    return (
        t.valency(va) == 3
        and t.valency(vb) == 3
        and vb in t.neighbors(va)
    )


# -- enumeration -----------------------------------------------------------------

_ENUM_CACHE: dict[int, tuple[MarkedTree, ...]] = {}


def enumerate_trees(n: int, budget: int = DEFAULT_BUDGET) -> list[MarkedTree]:
    """All trees with leaves labelled ``0..n``, sorted canonically.

    Grown by attaching leaf ``k`` at every site of every tree on ``0..k-1``
    and deduplicating by canonical form.  ``budget`` caps the size of any
    intermediate level; exceeding it raises :class:`BudgetExceededError`
    before memory does.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if 0 not in _ENUM_CACHE:
        _ENUM_CACHE[0] = (MarkedTree((), {0: 0}),)
    for k in range(1, n + 1):
        if k in _ENUM_CACHE:
            continue
        seen: dict[MarkedTree, None] = {}
        for t in _ENUM_CACHE[k - 1]:
            for site in attach_sites(t):
                seen.setdefault(attach(t, site, k))
                if len(seen) > budget:
                    raise BudgetExceededError(
                        f"enumeration at {k} labels passed the budget of {budget}"
                    )
        _ENUM_CACHE[k] = tuple(sorted(seen))
    return list(_ENUM_CACHE[n])


def sample_tree(rng, n: int) -> MarkedTree:
    """A random tree with leaves ``0..n``, by random leaf insertion."""
    t = MarkedTree((), {0: 0})
    for k in range(1, n + 1):
        sites = attach_sites(t)
        t = attach(t, sites[rng.randrange(len(sites))], k)
    return t


# -- reconstruction from two faces -------------------------------------------------


def reconstruct_pair(
    xa: MarkedTree, xb: MarkedTree, a: int, b: int
) -> list[MarkedTree]:
    """All trees ``y`` with ``erase(y, a) == xa`` and ``erase(y, b) == xb``.

    ``xa`` is the prescribed result of erasing ``a`` (so it still carries
    ``b``) and vice versa.  Both must erase down to the same core; otherwise
    the data is contradictory and :class:`InconsistencyError` is raised.

    The scan attaches ``b`` back onto ``xb`` at every site and keeps the
    results that also erase to ``xa``.  The list is a singleton exactly when
    the pair pins the tree down, which happens precisely when ``a`` and
    ``b`` end up non-adjacent (given at least four other leaves); adjacent
    pairs return all the ambiguous completions, sorted canonically.
    """
    if a == b:
        raise ValueError("need two distinct labels")
    if a in xa.labels or b not in xa.labels:
        raise ValueError(f"the first face must lack {a} and carry {b}")
    if b in xb.labels or a not in xb.labels:
        raise ValueError(f"the second face must lack {b} and carry {a}")
    core_a = erase(xa, b)
    core_b = erase(xb, a)
    if core_a != core_b:
        raise InconsistencyError(
            "the two faces disagree after erasing the complementary labels: "
            f"{core_a.to_newick()} vs {core_b.to_newick()}"
        )
    out = {
        y
        for y in (attach(xb, site, b) for site in attach_sites(xb))
        if erase(y, a) == xa
    }
    return sorted(out)


# -- filling ----------------------------------------------------------------------


def _internal_count(t: MarkedTree) -> int:
    return len(t.internal_vertices())


def _two_vertex_parts(t: MarkedTree) -> tuple[frozenset[int], frozenset[int]]:
    u, v = t.internal_vertices()
    return labels_through(t, u, v), labels_through(t, v, u)


def _fill_split(faces_by_label: Mapping[int, MarkedTree], labels: Sequence[int]):
    """Fill when every prescribed face has at most two internal vertices.

    Each two-vertex face splits its label set in two; the splits glue to a
    single split of the full label set, which determines the tree."""
    parent = {lab: lab for lab in labels}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    opposite: list[tuple[int, int]] = []
    for mu in labels:
        x = faces_by_label[mu]
        if _internal_count(x) != 2:
            continue
        pa, pb = _two_vertex_parts(x)
        for part in (pa, pb):
            first = next(iter(part))
            for other in part:
                union(first, other)
        opposite.append((next(iter(pa)), next(iter(pb))))

    roots = {find(lab) for lab in labels}
    if len(roots) != 2:
        raise NoFillError(
            f"the two-vertex faces split the labels into {len(roots)} groups, not 2"
        )
    for x, y in opposite:
        if find(x) == find(y):
            raise NoFillError("contradictory splits among the prescribed faces")
    r0 = find(labels[0])
    side_a = [lab for lab in labels if find(lab) == r0]
    side_b = [lab for lab in labels if find(lab) != r0]
    if len(side_a) < 2 or len(side_b) < 2:
        raise NoFillError("a split side with fewer than two labels cannot occur")
    return bipartition_tree(side_a, side_b)


def _fill_by_pair(faces_by_label: Mapping[int, MarkedTree], labels: Sequence[int]):
    """Fill via a label pair that is non-adjacent in every prescribed face."""
    for a, b in itertools.combinations(labels, 2):
        if any(
            adjacent(faces_by_label[mu], a, b)
            for mu in labels
            if mu != a and mu != b
        ):
            continue
        candidates = reconstruct_pair(faces_by_label[a], faces_by_label[b], a, b)
        good = [
            y
            for y in candidates
            if all(
                erase(y, mu) == faces_by_label[mu]
                for mu in labels
                if mu != a and mu != b
            )
        ]
        if len(good) > 1:
            raise MultipleFillError(
                f"{len(good)} distinct trees share the prescribed faces"
            )
        if good:
            return good[0]
    return None


def _fill_scan(faces_by_label: Mapping[int, MarkedTree], labels: Sequence[int]):
    """Bounded search over every tree on the label set (dimension five only)."""
    ordered = sorted(labels)
    mapping = dict(enumerate(ordered))
    matches = []
    for t in enumerate_trees(len(ordered) - 1):
        y = relabel(t, mapping) if mapping != {i: i for i in mapping} else t
        if all(erase(y, mu) == faces_by_label[mu] for mu in ordered):
            matches.append(y)
    if not matches:
        raise NoFillError("no tree on the label set has the prescribed faces")
    if len(matches) > 1:
        raise MultipleFillError(
            f"{len(matches)} distinct trees share the prescribed faces"
        )
    return matches[0]


def fill_labelled(faces_by_label: Mapping[int, MarkedTree]) -> MarkedTree:
    """The unique tree whose erasures match a compatible prescribed family.

    ``faces_by_label[mu]`` prescribes ``erase(y, mu)`` for every label
    ``mu`` of the unknown tree ``y``; the label set must have at least seven
    elements (filling is unique from dimension five up, and below that the
    answer genuinely need not exist or be unique).  Raises
    :class:`NoFillError` for contradictory input and
    :class:`MultipleFillError` if uniqueness ever failed, which would signal
    a bug rather than a legitimate outcome.
    """
    labels = sorted(faces_by_label)
    n = len(labels) - 1
    if n < 5:
        raise ValueError(
            f"unique filling needs at least 6 prescribed faces, got {n + 1}"
        )
    full = set(labels)
    for mu in labels:
        expected = full - {mu}
        if set(faces_by_label[mu].labels) != expected:
            raise ValueError(
                f"the face at {mu} must carry labels {sorted(expected)}"
            )
    for a, b in itertools.combinations(labels, 2):
        if erase(faces_by_label[b], a) != erase(faces_by_label[a], b):
            raise NoFillError(
                f"faces at {a} and {b} disagree on their shared erasure"
            )

    most = max(_internal_count(x) for x in faces_by_label.values())
    if most == 1:
        y = star(labels)
    elif most == 2:
        y = _fill_split(faces_by_label, labels)
    else:
        y = _fill_by_pair(faces_by_label, labels)
        if y is None:
            if n == 5:
                y = _fill_scan(faces_by_label, labels)
            else:
                raise NoFillError(
                    "no separating label pair exists; inconsistent input"
                )
    for mu in labels:
        if erase(y, mu) != faces_by_label[mu]:
            raise NoFillError(
                f"candidate fill disagrees with the prescribed face at {mu}"
            )
    return y


def fill(entries: Sequence[MarkedTree]) -> MarkedTree:
    """Graded unique filling: ``entries[i]`` prescribes ``face(y, i)``.

    The entries are trees on labels ``0..n-1`` where ``n = len(entries) - 1``
    is the dimension of the result; ``n >= 5`` is required.
    """
    n = len(entries) - 1
    faces_by_label = {}
    for mu, x in enumerate(entries):
        if _graded_dim(x) != n - 1:
            raise ValueError(
                f"entry {mu} has {x.n_leaves} leaves, expected {n}"
            )
        faces_by_label[mu] = relabel(x, {j: j + 1 for j in range(mu, n)})
    return fill_labelled(faces_by_label)


TREE_FAMILY = DeltaFamily(
    name="trees",
    dim=_graded_dim,
    face=face,
    key=lambda t: t.sort_key,
    enumerate=enumerate_trees,
)
