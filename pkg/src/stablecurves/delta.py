"""Graded families with face maps, compatibility, and a brute-force filling oracle.

A family here is a collection of objects graded by dimension, together with
face maps ``face(x, i)`` sending an ``n``-dimensional object to an
``(n-1)``-dimensional one for ``0 <= i <= n``, subject to the simplicial
identity

    face(face(x, j), i) == face(face(x, i), j - 1)    whenever i < j.

There are no degeneracies.  The functions in this module are generic: they
know nothing about trees or curves beyond the callables bundled in a
:class:`DeltaFamily`.  In particular :func:`fill_oracle` answers filling
problems by exhaustive scan, independently of any clever filling algorithm,
so the two routes can be checked against each other.
"""

from __future__ import annotations

from collections.abc import Callable, Sequence
from dataclasses import dataclass
from typing import Any

from .errors import UnsupportedOperationError

__all__ = [
    "DeltaFamily",
    "FillTuple",
    "check_identity",
    "check_all_identities",
    "is_compatible",
    "fill_oracle",
]


@dataclass(frozen=True)
class DeltaFamily:
    """Bundle of callables describing one graded family with face maps.

    ``dim(x)``       dimension of an object.
    ``face(x, i)``   the i-th face, for 0 <= i <= dim(x).
    ``key(x)``       canonical, hashable, totally ordered encoding; two
                     objects are equal in the family iff their keys are equal.
    ``enumerate(n)`` all objects of dimension n, if the family is enumerable
                     (``None`` otherwise).
    """

    name: str
    dim: Callable[[Any], int]
    face: Callable[[Any, int], Any]
    key: Callable[[Any], Any]
    enumerate: Callable[[int], Sequence[Any]] | None = None


@dataclass(frozen=True)
class FillTuple:
    """A candidate family of faces ``(x_0, ..., x_n)`` for an n-simplex.

    Entry ``x_i`` plays the role of the i-th face, so all entries must have
    dimension ``n - 1`` where ``n = len(entries) - 1``.
    """

    entries: tuple[Any, ...]

    def __post_init__(self) -> None:
        if len(self.entries) < 2:
            raise ValueError("a fill tuple needs at least two entries")

    @property
    def dim(self) -> int:
        """Dimension of the simplex the tuple would bound."""
        return len(self.entries) - 1

    @classmethod
    def from_faces(cls, family: DeltaFamily, x: Any) -> "FillTuple":
        """The actual face family of an existing simplex ``x``."""
        n = family.dim(x)
        return cls(tuple(family.face(x, i) for i in range(n + 1)))


def check_identity(family: DeltaFamily, x: Any, i: int, j: int) -> bool:
    """Check the simplicial identity for one index pair on one object.

    Requires ``dim(x) >= 2`` and ``0 <= i < j <= dim(x)``; returns whether
    ``face(face(x, j), i)`` equals ``face(face(x, i), j - 1)``.
    """
    n = family.dim(x)
    if n < 2:
        raise ValueError(f"need dimension >= 2 to compose two faces, got {n}")
    if not 0 <= i < j <= n:
        raise ValueError(f"indices must satisfy 0 <= i < j <= {n}, got ({i}, {j})")
    left = family.face(family.face(x, j), i)
    right = family.face(family.face(x, i), j - 1)
    return family.key(left) == family.key(right)


def check_all_identities(family: DeltaFamily, x: Any) -> bool:
    """Check the simplicial identity for every index pair on ``x``."""
    n = family.dim(x)
    return all(
        check_identity(family, x, i, j) for j in range(1, n + 1) for i in range(j)
    )


def is_compatible(family: DeltaFamily, candidate: FillTuple) -> bool:
    """Whether a tuple of prospective faces agrees on shared lower faces.

    ``(x_0, ..., x_n)`` is compatible when ``face(x_j, i) == face(x_i, j - 1)``
    for all ``0 <= i < j <= n``, exactly the relations the faces of an actual
    n-simplex satisfy.
    """
    n = candidate.dim
    for idx, x in enumerate(candidate.entries):
        d = family.dim(x)
        if d != n - 1:
            raise ValueError(
                f"entry {idx} has dimension {d}, expected {n - 1} for an "
                f"{n}-dimensional filling problem"
            )
    entries = candidate.entries
    for j in range(1, n + 1):
        for i in range(j):
            left = family.face(entries[j], i)
            right = family.face(entries[i], j - 1)
            if family.key(left) != family.key(right):
                return False
    return True


def fill_oracle(family: DeltaFamily, candidate: FillTuple) -> list[Any]:
    """All simplices whose face family equals ``candidate``, by exhaustive scan.

    Deliberately brute force: enumerate every object of the right dimension
    and keep those whose faces match.  The result is duplicate-free and
    sorted by canonical key.  Families without an enumerator raise
    :class:`UnsupportedOperationError`.
    """
    if family.enumerate is None:
        raise UnsupportedOperationError(
            f"family {family.name!r} is not enumerable; no oracle available"
        )
    n = candidate.dim
    keys = [family.key(x) for x in candidate.entries]
    found: dict[Any, Any] = {}
    for y in family.enumerate(n):
        if all(family.key(family.face(y, i)) == keys[i] for i in range(n + 1)):
            found.setdefault(family.key(y), y)
    return [found[k] for k in sorted(found)]
