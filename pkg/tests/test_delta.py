"""The generic face-map layer: identities, compatibility, the scan oracle."""

import pytest

from stablecurves.delta import (
    DeltaFamily,
    FillTuple,
    check_all_identities,
    check_identity,
    fill_oracle,
    is_compatible,
)
from stablecurves.errors import UnsupportedOperationError
from stablecurves.trees import TREE_FAMILY, enumerate_trees, face, star


def test_identity_holds_on_trees():
    for t in enumerate_trees(4):
        assert check_all_identities(TREE_FAMILY, t)


def test_identity_single_pair():
    t = star(range(3))
    assert check_identity(TREE_FAMILY, t, 0, 1)


def test_identity_rejects_bad_indices():
    t = star(range(4))
    with pytest.raises(ValueError):
        check_identity(TREE_FAMILY, t, 2, 1)
    with pytest.raises(ValueError):
        check_identity(TREE_FAMILY, t, 0, 9)
    with pytest.raises(ValueError):
        check_identity(TREE_FAMILY, t, 1, 1)


def test_fill_tuple_from_faces():
    y = star(range(6))
    candidate = FillTuple.from_faces(TREE_FAMILY, y)
    assert candidate.dim == 5
    assert candidate.entries == tuple(face(y, i) for i in range(6))
    assert is_compatible(TREE_FAMILY, candidate)


def test_fill_tuple_needs_two_entries():
    with pytest.raises(ValueError):
        FillTuple((star(range(3)),))


def test_incompatible_tuple_detected():
    # Mix the faces of two different 5-dimensional trees; some such mix
    # must break pairwise consistency.
    y = star(range(6))
    faces = [face(y, i) for i in range(6)]
    found = False
    for other in enumerate_trees(5):
        if other == y:
            continue
        mixed = FillTuple(tuple(faces[:5]) + (face(other, 5),))
        if not is_compatible(TREE_FAMILY, mixed):
            found = True
            break
    assert found


def test_is_compatible_rejects_wrong_dimension():
    y = star(range(6))
    bad = FillTuple(tuple(face(y, i) for i in range(5)) + (star(range(4)),))
    with pytest.raises(ValueError):
        is_compatible(TREE_FAMILY, bad)


def test_oracle_finds_unique_fill():
    y = star(range(6))
    candidate = FillTuple.from_faces(TREE_FAMILY, y)
    assert fill_oracle(TREE_FAMILY, candidate) == [y]


def test_oracle_requires_enumerator():
    family = DeltaFamily(
        name="opaque",
        dim=TREE_FAMILY.dim,
        face=TREE_FAMILY.face,
        key=TREE_FAMILY.key,
        enumerate=None,
    )
    candidate = FillTuple.from_faces(family, star(range(6)))
    with pytest.raises(UnsupportedOperationError):
        fill_oracle(family, candidate)
