"""Hand-transcribed example machines.

Input valuation indices use bit ``j`` for input proposition ``j``; so with
inputs ``(a, b)``: 0 = !a!b, 1 = a!b, 2 = !ab, 3 = ab.
"""
from __future__ import annotations

from .boolset import Cube, ValuationSet, cube_to_set
from .machine import Igmm, from_edges

# inputs (a, b), outputs (x, y)
AB, A_NB, NA_B, NA_NB = 3, 1, 2, 0
XY, X_NY, NX_Y, NX_NY = 3, 1, 2, 0


def _set(text: str) -> ValuationSet:
    """Union of ``|``-separated KISS cubes."""
    parts = text.split("|")
    k = len(parts[0])
    mask = 0
    for p in parts:
        mask |= cube_to_set(Cube.from_string(p), k).mask
    return ValuationSet(mask, k)


def controller() -> Igmm:
    """Three-state controller with partially specified outputs."""
    return from_edges("ab", "xy", 3, [
        (0, [AB], 1, [X_NY, XY]),
        (0, [A_NB], 1, [NX_Y]),
        (0, [NA_NB], 2, [NX_NY]),
        (1, [NA_NB], 0, [X_NY, NX_NY]),
        (1, [AB], 0, [X_NY]),
        (2, [NA_NB], 2, [NX_NY]),
    ])


def controller_min() -> Igmm:
    return from_edges("ab", "xy", 1, [
        (0, [AB], 0, [X_NY]),
        (0, [A_NB], 0, [NX_Y]),
        (0, [NA_NB], 0, [NX_NY]),
    ])


# one input a (1 = a, 0 = !a); outputs (x, y, z) as cubes "xyz"
A, NA = 1, 0
TOP = _set("---")
NZ = _set("--0")
Z = _set("--1")
NX_NY_NZ = _set("000")


def seven_state() -> Igmm:
    """Seven states whose minimal specialization has three."""
    return from_edges("a", "xyz", 7, [
        (0, [A], 1, NZ), (0, [NA], 2, NX_NY_NZ),
        (1, [A], 1, NZ), (1, [NA], 3, Z),
        (2, [A], 4, TOP), (2, [NA], 5, Z),
        (3, [A], 1, NZ), (3, [NA], 6, TOP),
        (4, [A, NA], 4, TOP),
        (5, [A], 5, Z), (5, [NA], 4, TOP),
        (6, [A, NA], 6, TOP),
    ])


def seven_state_min() -> Igmm:
    """Classes {0}, {1, 3, 6}, {2, 4, 5}."""
    return from_edges("a", "xyz", 3, [
        (0, [A], 1, NZ), (0, [NA], 2, NX_NY_NZ),
        (1, [A], 1, NZ), (1, [NA], 1, Z),
        (2, [A], 2, Z), (2, [NA], 2, Z),
    ])


def seven_state_reduced() -> Igmm:
    """Survivors 0, 1, 2, 5 with 3, 4 and 6 redirected to 1."""
    return from_edges("a", "xyz", 4, [
        (0, [A], 1, NZ), (0, [NA], 2, NX_NY_NZ),
        (1, [A], 1, NZ), (1, [NA], 1, Z),
        (2, [A], 1, TOP), (2, [NA], 3, Z),
        (3, [A], 3, Z), (3, [NA], 1, TOP),
    ], names=("0", "1", "2", "5"))


def pairwise_gadget() -> Igmm:
    """Three self-looping states that pairwise share an output under ``a``
    but have no output common to all three.

    States 1 and 2 are unreachable from 0, so minimizing this machine as a
    whole needs ``keep_unreachable``.  ``!a`` is undefined everywhere.
    """
    return from_edges("a", "xy", 3, [
        (0, [A], 0, [XY, X_NY]),
        (1, [A], 1, [NX_Y, X_NY]),
        (2, [A], 2, [XY, NX_Y]),
    ])
