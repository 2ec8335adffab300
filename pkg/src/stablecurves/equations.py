"""Integer polynomial systems cutting out the moduli of marked curves.

Three generators.  ``generate_m05`` is the base: three multihomogeneous
equations in five coordinate pairs.  ``generate_redundant`` nests that base
through the forgetful maps: the system for n marks is n relabelled copies of
the system for n-1 plus bilinear identifications between coordinates that
describe the same quadruple two ways; its coordinates are chains of deletion
positions.  ``generate_reduced`` indexes coordinates by the four-subset of
surviving marks directly (the identifications make that well defined) and
instantiates the base equations once per five-subset.

Equations are stored as expanded left-minus-right monomial lists; satisfied
means every residual is exactly zero, and multihomogeneity makes zero or
nonzero independent of the scaling of each coordinate pair.  Exports are
byte-stable.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from collections.abc import Mapping, Sequence

from .errors import ParseError
from .proj import ProjPoint

__all__ = [
    "ChainIndex",
    "SubsetIndex",
    "CoordIndex",
    "Equation",
    "EqSystem",
    "generate_m05",
    "generate_redundant",
    "generate_reduced",
    "chain_to_subset",
    "evaluate",
    "assignment_from_quads",
    "export",
    "parse_system_json",
    "EXPORT_FORMATS",
]

EXPORT_FORMATS = ("plain", "json", "cas")


@dataclass(frozen=True, order=True)
class ChainIndex:
    """A coordinate of the redundant system: a chain of deletion positions.

    ``path[t]`` is the 1-based position deleted at level 5+t, read from the
    innermost factor outwards; a system for n marks uses chains of length
    n-4.  The two-entry chain (i, j) is the classical double index "i-th
    coordinate of the j-th factor".
    """

    path: tuple[int, ...]

    def __post_init__(self):
        if not self.path:
            raise ValueError("a chain needs at least one deletion position")
        for t, pos in enumerate(self.path):
            if not 1 <= pos <= 5 + t:
                raise ValueError(
                    f"position {pos} out of range 1..{5 + t} at chain level {5 + t}"
                )

    def render(self) -> str:
        return ",".join(str(p) for p in self.path)


@dataclass(frozen=True, order=True)
class SubsetIndex:
    """A coordinate of the reduced system: the four surviving marks."""

    marks: tuple[int, ...]

    def __post_init__(self):
        if len(self.marks) != 4 or len(set(self.marks)) != 4:
            raise ValueError("a subset coordinate needs four distinct marks")
        if tuple(sorted(self.marks)) != self.marks or self.marks[0] < 0:
            raise ValueError("marks must be sorted and non-negative")

    def render(self) -> str:
        if self.marks[-1] <= 9:
            return "".join(str(m) for m in self.marks)
        return ",".join(str(m) for m in self.marks)


CoordIndex = ChainIndex | SubsetIndex


def _var(letter: str, index: CoordIndex) -> str:
    text = index.render()
    if len(text) == 1:
        return f"{letter}{text}"
    return f"{letter}_{{{text}}}"


# A monomial is (coefficient, factors); factors are ((index, a_exp, b_exp), ...)
# sorted canonically with zero-exponent pairs dropped.
Monomial = tuple[int, tuple[tuple[CoordIndex, int, int], ...]]


def _monomial(coeff: int, powers: Sequence[tuple[CoordIndex, str]]) -> Monomial:
    acc: dict[CoordIndex, list[int]] = {}
    for index, letter in powers:
        acc.setdefault(index, [0, 0])[0 if letter == "a" else 1] += 1
    factors = tuple(
        (index, ab[0], ab[1]) for index, ab in sorted(acc.items())
    )
    return coeff, factors


def _monomial_key(monomial: Monomial):
    coeff, factors = monomial
    return (factors, coeff)


@dataclass(frozen=True)
class Equation:
    """One polynomial, as canonical monomials plus a factored display form.

    ``kind`` records which template produced it; ``operands`` are the
    coordinate indices filling the template's roles.  Monomials are the
    expanded left-minus-right form and every equation is multihomogeneous:
    each coordinate index has one total degree across all monomials.
    """

    kind: str
    operands: tuple[CoordIndex, ...]
    monomials: tuple[Monomial, ...]
    display: str

    def __post_init__(self):
        degrees: dict[CoordIndex, int] = {}
        for t, (coeff, factors) in enumerate(self.monomials):
            if coeff == 0:
                raise ValueError("zero monomial in an equation")
            seen = {index: ae + be for index, ae, be in factors}
            if t == 0:
                degrees = seen
            elif seen != degrees:
                raise ValueError(f"equation is not multihomogeneous: {self.display}")

    def residual(self, assignment: Mapping[CoordIndex, ProjPoint]) -> int:
        total = 0
        for coeff, factors in self.monomials:
            term = coeff
            for index, a_exp, b_exp in factors:
                try:
                    point = assignment[index]
                except KeyError:
                    raise ValueError(
                        f"assignment is missing coordinate {index.render()}"
                    ) from None
                term *= point.a**a_exp * point.b**b_exp
            total += term
        return total


_TEMPLATES = {
    # kind -> (display template over operand names, monomial recipe)
    "cr1": (
        "{a0}*({a1}*{b2} - {a2}*{b1}) - {b0}*{b2}*({a1} - {b1})",
        (
            (1, ((0, "a"), (1, "a"), (2, "b"))),
            (-1, ((0, "a"), (2, "a"), (1, "b"))),
            (-1, ((0, "b"), (2, "b"), (1, "a"))),
            (1, ((0, "b"), (2, "b"), (1, "b"))),
        ),
    ),
    "cr2": (
        "{a0}*({a1}*{b2} - {a2}*{b1}) - {b0}*{a1}*{b2}",
        (
            (1, ((0, "a"), (1, "a"), (2, "b"))),
            (-1, ((0, "a"), (2, "a"), (1, "b"))),
            (-1, ((0, "b"), (1, "a"), (2, "b"))),
        ),
    ),
    "cr3": (
        "{a0}*({a1}*{b2} - {a2}*{b1}) - {b0}*{a1}*({b2} - {a2})",
        (
            (1, ((0, "a"), (1, "a"), (2, "b"))),
            (-1, ((0, "a"), (2, "a"), (1, "b"))),
            (-1, ((0, "b"), (1, "a"), (2, "b"))),
            (1, ((0, "b"), (1, "a"), (2, "a"))),
        ),
    ),
    "ident": (
        "{a0}*{b1} - {a1}*{b0}",
        (
            (1, ((0, "a"), (1, "b"))),
            (-1, ((1, "a"), (0, "b"))),
        ),
    ),
}


def _make_equation(kind: str, operands: Sequence[CoordIndex]) -> Equation:
    template, recipe = _TEMPLATES[kind]
    names = {}
    for role, index in enumerate(operands):
        names[f"a{role}"] = _var("a", index)
        names[f"b{role}"] = _var("b", index)
    monomials = tuple(
        sorted(
            (
                _monomial(coeff, [(operands[role], letter) for role, letter in powers])
                for coeff, powers in recipe
            ),
            key=_monomial_key,
        )
    )
    return Equation(kind, tuple(operands), monomials, template.format(**names))


@dataclass(frozen=True)
class EqSystem:
    """A generated system: marks count, form tag, coordinates, equations."""

    n: int
    form: str
    coordinates: tuple[CoordIndex, ...]
    equations: tuple[Equation, ...]

    def __post_init__(self):
        if self.form not in ("redundant", "reduced"):
            raise ValueError(f"unknown system form {self.form!r}")


def _chain_coordinates(m: int) -> list[tuple[int, ...]]:
    if m == 4:
        return [()]
    inner = _chain_coordinates(m - 1)
    return [c + (j,) for j in range(1, m + 1) for c in inner]


def _base_equations() -> list[Equation]:
    q, r = ChainIndex((4,)), ChainIndex((5,))
    return [
        _make_equation(kind, (ChainIndex((k,)), q, r))
        for kind, k in (("cr1", 1), ("cr2", 2), ("cr3", 3))
    ]


def _redundant_equations(m: int) -> list[Equation]:
    if m == 5:
        return _base_equations()
    out = []
    for j in range(1, m + 1):
        for eq in _redundant_equations(m - 1):
            out.append(
                _make_equation(
                    eq.kind,
                    tuple(ChainIndex(op.path + (j,)) for op in eq.operands),
                )
            )
    for i, j in itertools.combinations(range(1, m + 1), 2):
        for c in _chain_coordinates(m - 2):
            out.append(
                _make_equation(
                    "ident",
                    (ChainIndex(c + (i, j)), ChainIndex(c + (j - 1, i))),
                )
            )
    return out


def generate_m05() -> EqSystem:
    """The three defining equations of the five-mark moduli space."""
    return generate_redundant(5)


def generate_redundant(n: int) -> EqSystem:
    """The nested system for n marks in chain coordinates.

    Built recursively: n copies of the system for n-1 (one per deletion
    position at the top level) followed by the identifications
    a_{c,i,j} b_{c,j-1,i} - a_{c,j-1,i} b_{c,i,j} for i < j.  For n = 5
    there is a single level and no identifications.
    """
    if n < 5:
        raise ValueError("the system is defined for five or more marks")
    coordinates = tuple(ChainIndex(c) for c in _chain_coordinates(n))
    return EqSystem(n, "redundant", coordinates, tuple(_redundant_equations(n)))


def generate_reduced(n: int) -> EqSystem:
    """The four-subset system for n marks.

    One coordinate per four-subset of {0..n-1}; for every five-subset the
    three base equations are instantiated with role k standing for the
    subset omitting the k-th smallest of the five marks.
    """
    if n < 5:
        raise ValueError("the system is defined for five or more marks")
    coordinates = tuple(
        SubsetIndex(s) for s in itertools.combinations(range(n), 4)
    )
    equations = []
    for five in itertools.combinations(range(n), 5):
        def role(k: int) -> SubsetIndex:
            return SubsetIndex(tuple(m for m in five if m != five[k - 1]))

        for kind, k in (("cr1", 1), ("cr2", 2), ("cr3", 3)):
            equations.append(_make_equation(kind, (role(k), role(4), role(5))))
    return EqSystem(n, "reduced", coordinates, tuple(equations))


def chain_to_subset(index: ChainIndex, n: int) -> SubsetIndex:
    """The four marks a chain coordinate survives on, replayed by deletion.

    Positions are 1-based within the current renumbered mark list; marks are
    the 0-based originals.  The identifications of the redundant system say
    exactly that chains with equal subsets are equal coordinates.
    """
    if len(index.path) != n - 4:
        raise ValueError(
            f"a chain for {n} marks has {n - 4} levels, got {len(index.path)}"
        )
    current = list(range(n))
    for level in range(n, 4, -1):
        del current[index.path[level - 5] - 1]
    return SubsetIndex(tuple(current))


def evaluate(
    system: EqSystem, assignment: Mapping[CoordIndex, ProjPoint]
) -> list[int]:
    """Exact residual of every equation; the zero list means satisfied."""
    return [eq.residual(assignment) for eq in system.equations]


def assignment_from_quads(
    system: EqSystem, quads: Mapping[frozenset[int], ProjPoint]
) -> dict[CoordIndex, ProjPoint]:
    """Adapt a per-four-subset coordinate map to the system's own indices."""
    out = {}
    for index in system.coordinates:
        marks = (
            index.marks
            if isinstance(index, SubsetIndex)
            else chain_to_subset(index, system.n).marks
        )
        try:
            out[index] = quads[frozenset(marks)]
        except KeyError:
            raise ValueError(
                f"no quad value for marks {marks}"
            ) from None
    return out


# -- serialization ---------------------------------------------------------


def _index_json(index: CoordIndex) -> dict:
    if isinstance(index, ChainIndex):
        return {"kind": "chain", "path": list(index.path)}
    return {"kind": "subset", "marks": list(index.marks)}


def _index_from_json(data: object) -> CoordIndex:
    if not isinstance(data, dict) or "kind" not in data:
        raise ParseError("coordinate index must be an object with a 'kind'")
    try:
        if data["kind"] == "chain":
            return ChainIndex(tuple(int(p) for p in data["path"]))
        if data["kind"] == "subset":
            return SubsetIndex(tuple(int(m) for m in data["marks"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed coordinate index: {exc}") from None
    raise ParseError(f"unknown coordinate kind {data['kind']!r}")


def to_json_dict(system: EqSystem) -> dict:
    position = {index: t for t, index in enumerate(system.coordinates)}
    return {
        "format": "eqsystem",
        "version": 1,
        "n": system.n,
        "form": system.form,
        "coordinates": [_index_json(i) for i in system.coordinates],
        "equations": [
            {
                "kind": eq.kind,
                "operands": [position[op] for op in eq.operands],
                "display": eq.display,
                "monomials": [
                    [coeff, [[position[i], ae, be] for i, ae, be in factors]]
                    for coeff, factors in eq.monomials
                ],
            }
            for eq in system.equations
        ],
    }


def parse_system_json(data: object) -> EqSystem:
    """Rebuild a system from its JSON form.

    Monomial lists in the document are derived data; equations are rebuilt
    from their kind and operands, which keeps parsed systems canonical.
    """
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise ParseError("system document must be a JSON object")
    for field in ("n", "form", "coordinates", "equations"):
        if field not in data:
            raise ParseError(f"system document is missing the {field!r} field")
    coordinates = tuple(_index_from_json(d) for d in data["coordinates"])
    equations = []
    for record in data["equations"]:
        try:
            kind = record["kind"]
            operands = tuple(coordinates[pos] for pos in record["operands"])
        except (KeyError, TypeError, IndexError) as exc:
            raise ParseError(f"malformed equation record: {exc}") from None
        if kind not in _TEMPLATES:
            raise ParseError(f"unknown equation kind {kind!r}")
        equations.append(_make_equation(kind, operands))
    try:
        return EqSystem(int(data["n"]), data["form"], coordinates, tuple(equations))
    except (TypeError, ValueError) as exc:
        raise ParseError(f"invalid system document: {exc}") from None


def _render_expanded(eq: Equation) -> str:
    parts = []
    for t, (coeff, factors) in enumerate(eq.monomials):
        body = "*".join(
            name if exp == 1 else f"{name}^{exp}"
            for index, a_exp, b_exp in factors
            for name, exp in ((_var("a", index), a_exp), (_var("b", index), b_exp))
            if exp > 0
        )
        magnitude = abs(coeff)
        term = body if magnitude == 1 and body else (
            f"{magnitude}*{body}" if body else str(magnitude)
        )
        if t == 0:
            parts.append(f"-{term}" if coeff < 0 else term)
        else:
            parts.append(f" - {term}" if coeff < 0 else f" + {term}")
    return "".join(parts)


def export(system: EqSystem, fmt: str) -> str:
    """Render a system as text: ``plain``, ``json`` or ``cas``.

    plain is one factored equation per line; json is the full document with
    monomial lists; cas is a variable declaration line followed by the
    expanded polynomials, comma-separated, one per line.  All three are
    byte-stable for a given system.
    """
    if fmt == "plain":
        return "".join(eq.display + "\n" for eq in system.equations)
    if fmt == "json":
        return json.dumps(to_json_dict(system), indent=2) + "\n"
    if fmt == "cas":
        names = []
        for index in system.coordinates:
            names.append(_var("a", index))
            names.append(_var("b", index))
        lines = ["vars: " + ", ".join(names)]
        for t, eq in enumerate(system.equations):
            tail = "," if t + 1 < len(system.equations) else ""
            lines.append(_render_expanded(eq) + tail)
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown export format {fmt!r}; expected one of {EXPORT_FORMATS}")
