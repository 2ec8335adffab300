"""Stable rational curves with marked points, as decorated trees.

A curve with n marks is a tree of projective lines: the dual tree has leaves
labelled 0..n-1 (one per mark) and an internal vertex per component, and
every component carries at least three distinguished points (marks or
nodes), so the curve has no automorphisms.  A trivalent component has no
moduli and stores nothing; a component of valency k >= 4 stores its k
distinguished points as an ordered configuration.

All configurations live in a canonical frame.  The incident edges of a
vertex are ordered by the smallest mark reachable through each edge, and the
first three points in that order are pinned to 0, 1, infinity; this realizes
the quotient by fractional-linear changes of coordinate, so equal curves
have equal encodings.

``forget`` erases one mark and collapses any component left with two
distinguished points; it is the face map of the graded family.  Coordinates
come from quadruples of marks: forgetting down to four marks leaves either a
cross-ratio or one of three boundary values, and the full coordinate vector
is faithful.  ``reconstruct_m05`` inverts it for five marks and
``fill_moduli`` solves the unique-filling problem from dimension five up.
"""

from __future__ import annotations

import functools
import itertools
import logging
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass

from .delta import DeltaFamily
from .errors import (
    DegenerateInputError,
    InconsistencyError,
    InvalidCoordinateError,
    ParseError,
    ValidationError,
)
from .proj import (
    INFINITY,
    ONE,
    ZERO,
    ProjPoint,
    Rat,
    cross_ratio,
    cross_ratio_solve,
    format_point,
    mobius_from_triple,
    parse_point,
)
from .trees import (
    MarkedTree,
    bipartition_tree,
    labels_through,
    sample_tree,
    star,
)
from . import trees as _trees

__all__ = [
    "Configuration",
    "StableCurve",
    "config_edge_order",
    "from_points",
    "forget",
    "quad_coordinate",
    "to_coordinates",
    "m05_vector",
    "verify_m05",
    "reconstruct_m05",
    "fill_moduli",
    "sample_curve",
    "sample_smooth_curve",
    "MODULI_FAMILY",
]

logger = logging.getLogger(__name__)

_FRAME = (ZERO, ONE, INFINITY)


@dataclass(frozen=True)
class Configuration:
    """The distinguished points of one component, in the canonical frame.

    ``points[i]`` belongs to the i-th incident edge in the canonical edge
    order of the component's vertex.  The first three points are exactly
    (0, 1, infinity) and all points are pairwise distinct.  Components with
    only three points carry no Configuration at all.
    """

    points: tuple[ProjPoint, ...]

    def __post_init__(self):
        if len(self.points) < 4:
            raise ValidationError(
                "a configuration needs at least four points; "
                "trivalent components store none"
            )
        if tuple(self.points[:3]) != _FRAME:
            raise ValidationError(
                "a canonical configuration starts with 0, 1, inf"
            )
        if len(set(self.points)) != len(self.points):
            raise ValidationError("configuration points must be pairwise distinct")


def config_edge_order(tree: MarkedTree, v: int) -> tuple[int, ...]:
    """Neighbors of ``v`` ordered by the smallest mark reachable through each.

    The reachable mark sets partition all marks, so the order is total; it
    is the order in which a configuration at ``v`` lists its points.
    """
    return tuple(
        sorted(tree.neighbors(v), key=lambda u: min(labels_through(tree, v, u)))
    )


class StableCurve:
    """A stable curve: a marked dual tree plus one configuration per big vertex.

    Marks are 0..n-1 with n >= 3.  ``configs`` maps each internal vertex of
    valency >= 4 (vertex ids of the canonical tree form) to its
    Configuration; trivalent vertices must not appear.  Instances are
    immutable and compare by encoding.
    """

    __slots__ = ("_tree", "_configs", "_key")

    def __init__(self, tree: MarkedTree, configs: Mapping[int, Configuration]):
        n = tree.n_leaves
        if n < 3:
            raise ValidationError("a stable curve needs at least three marks")
        if tree.labels != frozenset(range(n)):
            raise ValidationError(
                f"marks must be 0..{n - 1}, got {sorted(tree.labels)}"
            )
        for v in configs:
            if not (0 <= v < tree.vertex_count) or tree.is_leaf(v):
                raise ValidationError(f"configuration attached to non-vertex {v}")
        for v in tree.internal_vertices():
            k = tree.valency(v)
            if k == 3:
                if v in configs:
                    raise ValidationError(
                        f"trivalent vertex {v} must not carry a configuration"
                    )
            else:
                if v not in configs:
                    raise ValidationError(
                        f"vertex {v} of valency {k} is missing its configuration"
                    )
                if len(configs[v].points) != k:
                    raise ValidationError(
                        f"vertex {v} has valency {k} but "
                        f"{len(configs[v].points)} configuration points"
                    )
        object.__setattr__(self, "_tree", tree)
        object.__setattr__(
            self, "_configs", tuple(sorted(configs.items()))
        )
        object.__setattr__(
            self,
            "_key",
            (
                tree.sort_key,
                tuple(
                    (v, tuple((p.a, p.b) for p in cfg.points))
                    for v, cfg in self._configs
                ),
            ),
        )

    def __setattr__(self, name, value):
        raise AttributeError("StableCurve is immutable")

    @property
    def tree(self) -> MarkedTree:
        return self._tree

    @property
    def configs(self) -> dict[int, Configuration]:
        return dict(self._configs)

    @property
    def n_marks(self) -> int:
        return self._tree.n_leaves

    @property
    def marks(self) -> range:
        return range(self.n_marks)

    @property
    def is_smooth(self) -> bool:
        """One component, i.e. no nodes."""
        return len(self._tree.internal_vertices()) == 1

    @property
    def sort_key(self):
        return self._key

    def __eq__(self, other) -> bool:
        if not isinstance(other, StableCurve):
            return NotImplemented
        return self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return (
            f"<StableCurve marks={self.n_marks} "
            f"tree={self._tree.to_newick()!r} components="
            f"{len(self._tree.internal_vertices())}>"
        )

    # -- io -----------------------------------------------------------------

    def to_json_dict(self) -> dict:
        configs = {}
        for v, cfg in self._configs:
            order = config_edge_order(self._tree, v)
            configs[str(v)] = [
                {"edge": u, "point": format_point(p)}
                for u, p in zip(order, cfg.points)
            ]
        return {
            "format": "curve",
            "version": 1,
            "marks": self.n_marks,
            "tree": self._tree.to_json_dict(),
            "configs": configs,
        }

    @classmethod
    def from_json_dict(cls, data: object) -> "StableCurve":
        if not isinstance(data, dict):
            raise ParseError("curve document must be a JSON object")
        if "tree" not in data:
            raise ParseError("curve document is missing the 'tree' field")
        tree = MarkedTree.from_json_dict(data["tree"])
        raw = data.get("configs", {})
        if not isinstance(raw, dict):
            raise ParseError("'configs' must be an object")
        by_edge: dict[int, dict[int, ProjPoint]] = {}
        try:
            for v_text, entries in raw.items():
                v = int(v_text)
                by_edge[v] = {
                    int(e["edge"]): parse_point(e["point"]) for e in entries
                }
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed configuration entry: {exc}") from None
        # Input frames are arbitrary; assembly renormalizes.
        return _assemble(tree, by_edge)


def _assemble(
    tree: MarkedTree, points_by_edge: Mapping[int, Mapping[int, ProjPoint]]
) -> StableCurve:
    """Build a curve from per-edge points in arbitrary frames.

    ``points_by_edge[v][u]`` is the point on component ``v`` at its edge
    towards ``u``; every vertex of valency >= 4 must be covered completely.
    Each configuration is moved to the canonical frame here.
    """
    configs = {}
    for v, by_nb in points_by_edge.items():
        if tree.is_leaf(v) or tree.valency(v) < 4:
            raise ValidationError(
                f"vertex {v} cannot carry a configuration"
            )
        order = config_edge_order(tree, v)
        missing = set(order) - set(by_nb)
        extra = set(by_nb) - set(order)
        if missing or extra:
            raise ValidationError(
                f"configuration at vertex {v} does not match its edges "
                f"(missing {sorted(missing)}, extra {sorted(extra)})"
            )
        pts = [by_nb[u] for u in order]
        if len(set(pts)) != len(pts):
            raise ValidationError(
                f"configuration at vertex {v} has coincident points"
            )
        move = mobius_from_triple(pts[0], pts[1], pts[2])
        configs[v] = Configuration(tuple(move.apply(p) for p in pts))
    return StableCurve(tree, configs)


def from_points(points: Sequence[ProjPoint]) -> StableCurve:
    """The smooth curve of n >= 3 distinct points on one projective line.

    Inputs related by a fractional-linear change of coordinate produce equal
    curves; the configuration is stored with the first three marks at
    0, 1, infinity.
    """
    n = len(points)
    if n < 3:
        raise ValueError("a stable curve needs at least three marked points")
    for i in range(n):
        for j in range(i + 1, n):
            if points[i] == points[j]:
                raise DegenerateInputError(
                    f"marked points {i} and {j} coincide at {points[i]}"
                )
    tree = star(range(n))
    if n == 3:
        return StableCurve(tree, {})
    (center,) = tree.internal_vertices()
    by_edge = {
        center: {tree.leaf_vertex(m): points[m] for m in range(n)}
    }
    return _assemble(tree, by_edge)


@functools.lru_cache(maxsize=None)
def forget(c: StableCurve, i: int) -> StableCurve:
    """Erase mark ``i``: the face map of the graded family of curves.

    Marks above ``i`` shift down by one.  If the component that carried the
    mark is left with two distinguished points it is collapsed; a component
    dropping to three points loses its configuration; larger components keep
    theirs, re-normalized because the canonical edge order can change with
    the marks.
    """
    n = c.n_marks
    if n < 4:
        raise ValueError("forgetting a mark needs at least four marks")
    if not 0 <= i < n:
        raise ValueError(f"mark must be in 0..{n - 1}, got {i}")
    t = c.tree

    # Points keyed by original vertex and neighbor, before any surgery.
    raw: dict[int, dict[int, ProjPoint]] = {}
    for v, cfg in c.configs.items():
        raw[v] = dict(zip(config_edge_order(t, v), cfg.points))

    adj = t.adjacency()
    labels = t.labels_dict()
    x = t.leaf_vertex(i)
    (support,) = adj[x]
    adj[support].discard(x)
    del adj[x]
    del labels[x]

    if support in raw:
        del raw[support][x]
        if len(raw[support]) == 3:
            del raw[support]

    if len(adj[support]) == 2 and support not in labels:
        # The support was trivalent: collapse it.  Only its two remaining
        # neighbors can have held an edge towards it.
        u, w = adj[support]
        adj[u].discard(support)
        adj[w].discard(support)
        adj[u].add(w)
        adj[w].add(u)
        del adj[support]
        for v, by_nb in raw.items():
            if support in by_nb:
                other = w if v == u else u
                by_nb[other] = by_nb.pop(support)

    labels = {v: (lab if lab < i else lab - 1) for v, lab in labels.items()}
    new_tree, old_to_new = MarkedTree._from_data(adj, labels)
    by_edge = {
        old_to_new[v]: {old_to_new[u]: p for u, p in by_nb.items()}
        for v, by_nb in raw.items()
    }
    return _assemble(new_tree, by_edge)


# Boundary values of the four-mark curve: the two-component split pairing
# mark 0 with mark p gives the value _SPLIT_VALUE[p].
_SPLIT_VALUE = {1: INFINITY, 2: ONE, 3: ZERO}


def quad_coordinate(c: StableCurve, quad: Iterable[int]) -> ProjPoint:
    """The coordinate of ``c`` at a four-element set of marks.

    All other marks are forgotten (the order does not matter) and the
    resulting four-mark curve is read off as a point of the projective
    line: a one-component curve gives the cross-ratio of its points in
    increasing-mark order, and a two-component curve gives the boundary
    value of its split, 0, 1 or infinity according to which mark shares a
    component with the smallest one.
    """
    quad_set = frozenset(quad)
    if len(quad_set) != 4:
        raise ValueError("the coordinate is indexed by four distinct marks")
    if not quad_set <= set(c.marks):
        raise ValueError(f"marks {sorted(quad_set - set(c.marks))} not on the curve")
    reduced = c
    for m in sorted(set(c.marks) - quad_set, reverse=True):
        reduced = forget(reduced, m)
    t = reduced.tree
    internal = t.internal_vertices()
    if len(internal) == 1:
        cfg = reduced.configs[internal[0]]
        return cross_ratio(*cfg.points)
    u, v = internal
    block = labels_through(t, v, u)
    if 0 not in block:
        block = labels_through(t, u, v)
    (partner,) = block - {0}
    return _SPLIT_VALUE[partner]


def to_coordinates(c: StableCurve) -> dict[frozenset[int], ProjPoint]:
    """All quad coordinates of the curve, one per four-subset of marks."""
    if c.n_marks < 4:
        raise ValueError("coordinates need at least four marks")
    return {
        frozenset(q): quad_coordinate(c, q)
        for q in itertools.combinations(c.marks, 4)
    }


def m05_vector(c: StableCurve) -> tuple[ProjPoint, ...]:
    """The five-mark coordinate vector (c_1, ..., c_5).

    Single place where 1-based numbering enters: c_k is the coordinate of
    the quadruple omitting mark k-1.
    """
    if c.n_marks != 5:
        raise ValueError("the five-coordinate vector needs exactly five marks")
    full = set(range(5))
    return tuple(
        quad_coordinate(c, full - {k - 1}) for k in range(1, 6)
    )


def _m05_residuals(coords: Sequence[ProjPoint]) -> tuple[int, int, int]:
    (a1, b1), (a2, b2), (a3, b3), (a4, b4), (a5, b5) = (
        (p.a, p.b) for p in coords
    )
    pivot = a4 * b5 - a5 * b4
    return (
        a1 * pivot - b1 * b5 * (a4 - b4),
        a2 * pivot - b2 * a4 * b5,
        a3 * pivot - b3 * a4 * (b5 - a5),
    )


def verify_m05(coords: Sequence[ProjPoint]) -> bool:
    """Whether a vector of five points satisfies the three defining equations.

    The equations are evaluated directly on homogeneous pairs, exactly; this
    is deliberately independent of the equations module so the two can be
    checked against each other.
    """
    if len(coords) != 5:
        raise ValueError("need exactly five coordinates")
    return _m05_residuals(coords) == (0, 0, 0)


def _degenerate(p: ProjPoint) -> bool:
    return p in _FRAME


def _caterpillar_curves() -> list[StableCurve]:
    """All three-component five-mark curves: two cherries and a middle mark."""
    out = []
    for middle in range(5):
        rest = sorted(set(range(5)) - {middle})
        first = rest[0]
        for mate in rest[1:]:
            cherry_a = {first, mate}
            cherry_b = set(rest) - cherry_a
            a1, a2 = sorted(cherry_a)
            b1, b2 = sorted(cherry_b)
            tree = MarkedTree(
                [(0, 5), (1, 5), (5, 6), (2, 6), (6, 7), (3, 7), (4, 7)],
                {0: a1, 1: a2, 2: middle, 3: b1, 4: b2},
            )
            out.append(StableCurve(tree, {}))
    return sorted(out, key=lambda c: c.sort_key)


def reconstruct_m05(coords: Sequence[ProjPoint]) -> StableCurve:
    """The unique five-mark curve with the given coordinate vector.

    The entries in {0, 1, infinity} pin down the tree: none for a smooth
    curve, exactly three for two components, all five for three components.
    Any other pattern, or a vector not realized by a curve, raises
    :class:`InvalidCoordinateError`; surprising patterns are also logged
    because they would be solutions of the equations outside the image.
    """
    if len(coords) != 5:
        raise ValueError("need exactly five coordinates")
    if not verify_m05(coords):
        raise InvalidCoordinateError(
            "the vector does not satisfy the defining equations"
        )
    degenerate = [_degenerate(p) for p in coords]
    count = sum(degenerate)

    if count == 0:
        x, y = coords[4], coords[3]
        try:
            curve = from_points((ZERO, ONE, INFINITY, x, y))
        except DegenerateInputError as exc:
            raise InvalidCoordinateError(
                f"smooth pattern but no smooth curve fits: {exc}"
            ) from None
    elif count == 3:
        cherry = {k for k in range(5) if not degenerate[k]}
        alpha = min(cherry)
        rest = sorted(set(range(5)) - cherry)
        tree = bipartition_tree(cherry, rest)
        big = next(v for v in tree.internal_vertices() if tree.valency(v) == 4)
        small = next(v for v in tree.internal_vertices() if v != big)
        order = config_edge_order(tree, big)
        frame = dict(zip(order[:3], _FRAME))
        edge_of = {m: tree.leaf_vertex(m) for m in rest}
        edge_of[max(cherry)] = small
        quad = sorted(edge_of)
        slots = [frame.get(edge_of[m]) for m in quad]
        slot = next(t for t, p in enumerate(slots) if p is None)
        try:
            w = cross_ratio_solve(coords[alpha], slots, slot)
            cfg = Configuration((*_FRAME, w))
        except (DegenerateInputError, ValidationError) as exc:
            raise InvalidCoordinateError(
                f"two-component pattern but no configuration fits: {exc}"
            ) from None
        curve = StableCurve(tree, {big: cfg})
    elif count == 5:
        for candidate in _caterpillar_curves():
            if m05_vector(candidate) == tuple(coords):
                return candidate
        logger.warning(
            "equation solution with fully degenerate entries matches no "
            "three-component curve: %s",
            ", ".join(format_point(p) for p in coords),
        )
        raise InvalidCoordinateError(
            "fully degenerate vector matches no three-component curve"
        )
    else:
        logger.warning(
            "equation solution with %d degenerate entries (expected 0, 3 or 5): %s",
            count,
            ", ".join(format_point(p) for p in coords),
        )
        raise InvalidCoordinateError(
            f"{count} entries lie in {{0, 1, inf}}; a curve has 0, 3 or 5"
        )

    if m05_vector(curve) != tuple(coords):
        raise InvalidCoordinateError(
            "the vector satisfies the equations but is not realized by a curve"
        )
    return curve


def fill_moduli(entries: Sequence[StableCurve]) -> StableCurve:
    """The unique curve whose forgetful images are the given family.

    ``entries[mu]`` prescribes ``forget(y, mu)``; with n+1 entries the
    result has n+1 >= 6 marks.  The underlying tree is filled first, then
    every configuration point is recovered as a quad coordinate read off
    each prescribed face that sees the relevant four marks, with agreement
    required across faces; a final full verification guards both layers.
    """
    n = len(entries) - 1
    if n < 5:
        raise ValueError(
            f"unique filling needs at least 6 prescribed faces, got {n + 1}"
        )
    for mu, x in enumerate(entries):
        if not isinstance(x, StableCurve) or x.n_marks != n:
            raise ValueError(f"entry {mu} is not a curve with {n} marks")

    y_tree = _trees.fill([x.tree for x in entries])

    all_marks = set(range(n + 1))
    configs: dict[int, Configuration] = {}
    for v in y_tree.internal_vertices():
        k = y_tree.valency(v)
        if k == 3:
            continue
        order = config_edge_order(y_tree, v)
        mins = [min(labels_through(y_tree, v, u)) for u in order]
        points = dict(zip(order[:3], _FRAME))
        for t in range(3, k):
            quad = mins[:3] + [mins[t]]
            values = set()
            for mu in sorted(all_marks - set(quad)):
                shifted = frozenset(m if m < mu else m - 1 for m in quad)
                values.add(quad_coordinate(entries[mu], shifted))
            if len(values) != 1:
                raise InconsistencyError(
                    f"the faces disagree on the coordinate at marks {quad}"
                )
            points[order[t]] = values.pop()
        try:
            configs[v] = Configuration(tuple(points[u] for u in order))
        except ValidationError as exc:
            raise InconsistencyError(
                f"the prescribed faces force an invalid configuration: {exc}"
            ) from None

    y = StableCurve(y_tree, configs)
    for mu in range(n + 1):
        if forget(y, mu) != entries[mu]:
            raise InconsistencyError(
                f"candidate fill disagrees with the prescribed face at {mu}"
            )
    return y


# -- random sampling ----------------------------------------------------------


def _sample_extra_points(rng, count: int) -> list[ProjPoint]:
    taken = set(_FRAME)
    out = []
    while len(out) < count:
        p = ProjPoint(rng.randint(-12, 12), rng.randint(1, 4))
        if p not in taken:
            taken.add(p)
            out.append(p)
    return out


def _decorate(rng, tree: MarkedTree) -> StableCurve:
    configs = {}
    for v in tree.internal_vertices():
        k = tree.valency(v)
        if k >= 4:
            configs[v] = Configuration(
                (*_FRAME, *_sample_extra_points(rng, k - 3))
            )
    return StableCurve(tree, configs)


def sample_curve(rng, n: int) -> StableCurve:
    """A random n-marked stable curve covering all stratum shapes."""
    if n < 3:
        raise ValueError("a stable curve needs at least three marks")
    return _decorate(rng, sample_tree(rng, n - 1))


def sample_smooth_curve(rng, n: int) -> StableCurve:
    """A random one-component n-marked curve."""
    if n < 3:
        raise ValueError("a stable curve needs at least three marks")
    return _decorate(rng, star(range(n)))


MODULI_FAMILY = DeltaFamily(
    name="curves",
    dim=lambda c: c.n_marks - 1,
    face=forget,
    key=lambda c: c.sort_key,
    enumerate=None,
)
