"""Small named lattices written out by hand.

These do not go through the constructions in :mod:`latlab.construct`, so
they can serve as independent fixtures for them.
"""

from .diagram import Diagram


def _build(name, lower):
    n = len(lower)
    upper = [[] for _ in range(n)]
    # upper orders follow from the lower orders read left to right at each
    # level; the callers list lower covers so that this gives a planar layout
    for j in range(n):
        for i in lower[j]:
            upper[i].append(j)
    return Diagram.from_orders(lower, upper, name)


def s7():
    """0; u (left), v (right); x, y, z; 1 -- the seven-element peak lattice."""
    #        0   u    v    x    y       z    1
    lower = [[], [0], [0], [1], [1, 2], [2], [3, 4, 5]]
    return _build("S7", lower)


S7_NAMES = ("bottom", "left_mid", "right_mid", "left_top", "mid_top", "right_top", "top")


def m3():
    return _build("M3", [[], [0], [0], [0], [1, 2, 3]])


def n5():
    # 0 < a < c < 1 on the left, 0 < b < 1 on the right
    return _build("N5", [[], [0], [1], [0], [2, 3]])


def boolean_square():
    return _build("B2", [[], [0], [0], [1, 2]])

