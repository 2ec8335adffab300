"""Independent oracles the test suite checks the package against.

Nothing here imports the package.  The tree-count oracle uses a two-stage
block recurrence over labelled set partitions: rooting a tree at its
smallest leaf shows that the number a(m) of trees whose smallest-leaf side
sees m further leaves satisfies

    a(1) = 1,   a(m) = sum over set partitions of m labelled items
                        into at least two blocks of prod a(block size)

and the sum telescopes through B(m) = 2 a(m), the same sum without the
block-count restriction, via the element-1-block recurrence.  The
cross-ratio oracle is plain affine fraction arithmetic, no projective
normalization involved.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb


def tree_count(n: int) -> int:
    """Number of trees with leaves 0..n and no bivalent vertices."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return 1
    a = {1: 1}
    b = {1: 1}
    for m in range(2, n + 1):
        a[m] = sum(comb(m - 1, k - 1) * a[k] * b[m - k] for k in range(1, m))
        b[m] = 2 * a[m]
    return a[n]


def affine_cross_ratio(
    z1: Fraction, z2: Fraction, z3: Fraction, z4: Fraction
) -> Fraction:
    """The cross-ratio of four distinct finite rationals."""
    return ((z4 - z1) * (z2 - z3)) / ((z4 - z3) * (z2 - z1))
