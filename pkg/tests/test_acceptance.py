"""Acceptance gate: the headline guarantees, one check per criterion.

Each test prints a single ``criterion N: PASS/FAIL`` line (visible under
``pytest -s`` and in captured output).  The checks are exact; where a
criterion carries a runtime budget the elapsed time is asserted too.

Criterion map:
  1  tree counts against the independent recurrence oracle
  2  face-map identities, exhaustive through six labels
  3  unique filling at dimension five via pruned search over all tuples
  4  failure of unique filling at dimension four
  5  pair reconstruction singleton exactly for non-adjacent leaves
  6  fill/faces roundtrips for trees and curves in dimensions six and seven
  7  cross-ratio normalization, the known chart point, five-mark roundtrips
  8  equation system shapes, vanishing on curve data, frozen exports
  9  projective invariance of the cross-ratio and of curve construction
"""

import itertools
import random
import time
from contextlib import contextmanager
from fractions import Fraction
from pathlib import Path

from _oracles import tree_count
from stablecurves.delta import FillTuple, check_identity, fill_oracle, is_compatible
from stablecurves.equations import (
    ChainIndex,
    assignment_from_quads,
    chain_to_subset,
    evaluate,
    export,
    generate_m05,
    generate_redundant,
    generate_reduced,
)
from stablecurves.moduli import (
    _decorate,
    fill_moduli,
    forget,
    from_points,
    m05_vector,
    reconstruct_m05,
    sample_curve,
    to_coordinates,
    verify_m05,
)
from stablecurves.proj import (
    INFINITY,
    ONE,
    ZERO,
    Mobius,
    ProjPoint,
    cross_ratio,
)
from stablecurves.trees import (
    TREE_FAMILY,
    adjacent,
    enumerate_trees,
    erase,
    face,
    fill,
    reconstruct_pair,
    sample_tree,
)

GOLDEN = Path(__file__).parent / "golden"


class _Verdict:
    __slots__ = ("note",)

    def __init__(self):
        self.note = ""


@contextmanager
def criterion(number: int):
    verdict = _Verdict()
    start = time.perf_counter()
    try:
        yield verdict
    except BaseException:
        print(f"criterion {number}: FAIL")
        raise
    elapsed = time.perf_counter() - start
    print(f"criterion {number}: PASS ({verdict.note}; {elapsed:.1f}s)")


def _random_mobius(rng: random.Random) -> Mobius:
    while True:
        a, b, c, d = (rng.randint(-9, 9) for _ in range(4))
        if a * d - b * c != 0:
            return Mobius(a, b, c, d)


def _random_points(rng: random.Random, k: int) -> list[ProjPoint]:
    out: list[ProjPoint] = []
    while len(out) < k:
        p = (
            INFINITY
            if rng.random() < 0.1
            else ProjPoint(rng.randint(-30, 30), rng.randint(1, 12))
        )
        if p not in out:
            out.append(p)
    return out


def test_criterion_1_tree_counts():
    with criterion(1) as verdict:
        start = time.perf_counter()
        expected = [1, 1, 1, 4, 26, 236, 2752]
        got = [len(enumerate_trees(n)) for n in range(7)]
        assert got == expected
        assert got == [tree_count(n) for n in range(7)]
        elapsed = time.perf_counter() - start
        assert elapsed < 10
        verdict.note = "counts " + ", ".join(str(c) for c in got)


def test_criterion_2_face_identities_exhaustive():
    with criterion(2) as verdict:
        start = time.perf_counter()
        checked = 0
        for n in range(2, 7):
            for t in enumerate_trees(n):
                for j in range(1, n + 1):
                    for i in range(j):
                        assert check_identity(TREE_FAMILY, t, i, j)
                        checked += 1
        elapsed = time.perf_counter() - start
        assert elapsed < 60
        verdict.note = f"{checked} identity pairs over all trees through 6 labels"


def test_criterion_3_unique_filling_dimension_five():
    with criterion(3) as verdict:
        start = time.perf_counter()
        pool = enumerate_trees(4)
        # Candidates for slot k, bucketed by their first k faces; a partial
        # tuple (x_0..x_{k-1}) forces face(x, i) = face(x_i, k-1) for i < k,
        # so one dictionary lookup prunes the branch.
        buckets: list[dict] = [dict() for _ in range(6)]
        for x in pool:
            prefix = tuple(face(x, i) for i in range(5))
            for k in range(1, 6):
                buckets[k].setdefault(prefix[:k], []).append(x)

        found: list[tuple] = []
        explored = 0

        def extend(partial: list) -> None:
            nonlocal explored
            k = len(partial)
            if k == 6:
                found.append(tuple(partial))
                return
            if k == 0:
                for x in pool:
                    partial.append(x)
                    extend(partial)
                    partial.pop()
                return
            required = tuple(face(partial[i], k - 1) for i in range(k))
            for x in buckets[k].get(required, ()):
                explored += 1
                partial.append(x)
                extend(partial)
                partial.pop()

        extend([])
        assert len(found) == 236

        fills = set()
        for entries in found:
            candidate = FillTuple(entries)
            assert is_compatible(TREE_FAMILY, candidate)
            matches = fill_oracle(TREE_FAMILY, candidate)
            assert len(matches) == 1
            direct = fill(entries)
            assert direct == matches[0]
            fills.add(direct)
        assert fills == set(enumerate_trees(5))
        elapsed = time.perf_counter() - start
        assert elapsed < 1800
        verdict.note = (
            f"236 compatible tuples, one fill each, {explored} branches explored"
        )


def test_criterion_4_no_unique_filling_dimension_four():
    with criterion(4) as verdict:
        start = time.perf_counter()
        pool = enumerate_trees(3)
        zero = one = multi = 0
        for entries in itertools.product(pool, repeat=5):
            candidate = FillTuple(entries)
            assert is_compatible(TREE_FAMILY, candidate)
            matches = fill_oracle(TREE_FAMILY, candidate)
            if len(matches) == 0:
                zero += 1
            elif len(matches) == 1:
                one += 1
            else:
                multi += 1
        assert zero + one + multi == 4**5
        assert one + multi <= 26
        assert zero >= 1
        elapsed = time.perf_counter() - start
        assert elapsed < 60
        verdict.note = (
            f"1024 tuples all compatible: {zero} with no fill, {one} with one, "
            f"{multi} with several"
        )


def test_criterion_5_adjacency_is_ambiguity():
    # Two labels pin the tree down exactly when they are non-adjacent.  The
    # smallest size is excluded: with three leaves every pair is adjacent
    # yet the tree is unique, simply because there is only one tree.
    with criterion(5) as verdict:
        checked = 0
        for n in (3, 4, 5):
            for y in enumerate_trees(n):
                for a in range(n + 1):
                    for b in range(a + 1, n + 1):
                        got = reconstruct_pair(erase(y, a), erase(y, b), a, b)
                        assert y in got
                        assert (len(got) == 1) == (not adjacent(y, a, b))
                        checked += 1
        verdict.note = f"{checked} pairs over all trees with 4 to 6 leaves"


def test_criterion_6_roundtrips_dimensions_six_and_seven():
    with criterion(6) as verdict:
        rng = random.Random(1006)
        for n in (6, 7):
            for _ in range(1000):
                y = sample_tree(rng, n)
                assert fill(tuple(face(y, i) for i in range(n + 1))) == y
        for n_marks in (6, 7):
            for _ in range(500):
                c = sample_curve(rng, n_marks)
                assert fill_moduli([forget(c, mu) for mu in range(n_marks)]) == c
        verdict.note = (
            "1000 tree roundtrips each in dimensions 6 and 7, "
            "500 curve roundtrips each with 6 and 7 marks"
        )


def test_criterion_7_five_mark_chart():
    with criterion(7) as verdict:
        start = time.perf_counter()
        rng = random.Random(1007)

        # (i) the cross-ratio is the identity on the normalized frame.
        done = 0
        while done < 100:
            q = Fraction(rng.randint(-60, 60), rng.randint(1, 20))
            if q in (0, 1):
                continue
            x = ProjPoint.from_rational(q)
            assert cross_ratio(ZERO, ONE, INFINITY, x) == x
            done += 1

        # (ii) the known chart point, checked against the equations module.
        chart = from_points((ZERO, ONE, INFINITY, ProjPoint(2), ProjPoint(3)))
        vector = m05_vector(chart)
        assert vector == tuple(
            ProjPoint(v) for v in (2, 3, -3, 3, 2)
        )
        assert verify_m05(vector)
        system = generate_m05()
        assignment = {
            ChainIndex((k,)): vector[k - 1] for k in range(1, 6)
        }
        assert evaluate(system, assignment) == [0, 0, 0]

        # (iii) 500 five-mark curves covering every stratum shape.
        curves = [_decorate(rng, t) for t in enumerate_trees(4)]
        while len(curves) < 500:
            curves.append(sample_curve(rng, 5))
        shapes = {c.tree for c in curves}
        assert len(shapes) == 26
        for c in curves:
            vec = m05_vector(c)
            assert verify_m05(vec)
            assert reconstruct_m05(vec) == c
        elapsed = time.perf_counter() - start
        assert elapsed < 60
        verdict.note = (
            "100 frame checks, chart point (2, 3, -3, 3, 2), "
            "500 curves over all 26 shapes"
        )


def test_criterion_8_equation_systems():
    with criterion(8) as verdict:
        redundant = generate_redundant(6)
        assert len(redundant.coordinates) == 30
        assert len(redundant.equations) == 33
        idents = [eq for eq in redundant.equations if eq.kind == "ident"]
        assert len(idents) == 15
        for eq in idents:
            left, right = eq.operands
            assert chain_to_subset(left, 6) == chain_to_subset(right, 6)

        reduced = generate_reduced(6)
        assert len(reduced.coordinates) == 15
        assert len(reduced.equations) == 18

        rng = random.Random(1008)
        for _ in range(500):
            c = sample_curve(rng, 6)
            quads = to_coordinates(c)
            for system in (redundant, reduced):
                residuals = evaluate(system, assignment_from_quads(system, quads))
                assert residuals == [0] * len(system.equations)

        for system, fmt, name in (
            (generate_m05(), "plain", "m05_plain.txt"),
            (generate_m05(), "cas", "m05_cas.txt"),
            (generate_redundant(6), "json", "m06_redundant.json"),
            (generate_reduced(6), "plain", "m06_reduced_plain.txt"),
        ):
            assert export(system, fmt) == (GOLDEN / name).read_text()
        verdict.note = (
            "redundant 30/33 with the identification family, reduced 15/18, "
            "both vanish on 500 curves, 4 golden exports byte-identical"
        )


def test_criterion_9_projective_invariance():
    with criterion(9) as verdict:
        rng = random.Random(1009)
        for _ in range(100):
            m = _random_mobius(rng)
            z1, z2, z3, z4 = _random_points(rng, 4)
            assert cross_ratio(
                m.apply(z1), m.apply(z2), m.apply(z3), m.apply(z4)
            ) == cross_ratio(z1, z2, z3, z4)
            pts = _random_points(rng, 5)
            assert from_points([m.apply(p) for p in pts]) == from_points(pts)
        verdict.note = "100 random projective maps, cross-ratio and curves"
