"""Constructors for the small structures used throughout tests and demos.

Powerset algebras index elements by bitmask, so element i & j is the meet
and submask testing is the order; everything else is built by hand. The
hexagon builder intentionally produces a structure that fails verification:
its difference table is forced by cancellation and still cannot satisfy the
monotonicity axioms, which is exactly what makes it a useful counterexample.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .boolean_rep import BooleanSemiring
from .order import FinitePoset
from .ortho import OrthoLogic
from .quasilogic import Quasilogic
from .semilogic import Semilogic

_LETTERS = "abcdefghijklmnopqrstuvwxyz"


def _mask_label(mask: int) -> str:
    return "{" + ",".join(str(i) for i in range(mask.bit_length()) if mask >> i & 1) + "}"


def powerset_poset(k: int) -> FinitePoset:
    n = 1 << k
    masks = np.arange(n)
    le = (masks[:, None] & ~masks[None, :]) == 0
    return FinitePoset([_mask_label(m) for m in range(n)], le)


def powerset_quasilogic(k: int) -> Quasilogic:
    n = 1 << k
    poset = powerset_poset(k)
    diff = np.full((n, n), -1, dtype=np.int16)
    for b in range(n):
        for a in range(n):
            if a & ~b == 0:
                diff[b, a] = b & ~a
    return Quasilogic(poset, diff)


def powerset_logic(k: int) -> OrthoLogic:
    full = (1 << k) - 1
    ql = powerset_quasilogic(k)
    neg = np.array([full ^ a for a in range(1 << k)], dtype=np.int16)
    return OrthoLogic(ql, neg)


@lru_cache(maxsize=None)
def powerset_semiring(k: int) -> BooleanSemiring:
    """Subsets of {0..k-1} under intersection; element index == bitmask."""
    n = 1 << k
    poset = powerset_poset(k)
    prod = np.empty((n, n), dtype=np.int16)
    for i in range(n):
        for j in range(n):
            prod[i, j] = i & j
    return BooleanSemiring(poset, prod)


def chain_quasilogic(n: int) -> Quasilogic:
    """Totally ordered 0 < a < b < ... < 1 with arithmetic difference."""
    if n < 2:
        raise ValueError("chain needs at least two elements")
    labels = ["0"] + [_LETTERS[i] for i in range(n - 2)] + ["1"]
    le = np.triu(np.ones((n, n), dtype=bool))
    diff = np.full((n, n), -1, dtype=np.int16)
    for b in range(n):
        for a in range(b + 1):
            diff[b, a] = b - a
    return Quasilogic(FinitePoset(labels, le), diff)


def _flat_poset(labels: list[str]) -> FinitePoset:
    """0 below everything, 1 above everything, middles incomparable."""
    n = len(labels)
    le = np.eye(n, dtype=bool)
    le[0, :] = True
    le[:, n - 1] = True
    return FinitePoset(labels, le)


def mo2_quasilogic() -> Quasilogic:
    labels = ["0", "a", "a'", "b", "b'", "1"]
    poset = _flat_poset(labels)
    n = 6
    comp = {1: 2, 2: 1, 3: 4, 4: 3, 0: 5, 5: 0}
    diff = np.full((n, n), -1, dtype=np.int16)
    for x in range(n):
        diff[x, 0] = x
        diff[x, x] = 0
        diff[5, x] = comp[x]
    return Quasilogic(poset, diff)


def mo2_logic() -> OrthoLogic:
    ql = mo2_quasilogic()
    neg = np.array([5, 2, 1, 4, 3, 0], dtype=np.int16)
    return OrthoLogic(ql, neg)


def mo2_semilogic() -> Semilogic:
    """Product on comparable and complementary pairs only.

    Extending it to the remaining atom pairs would break additivity:
    b(a + a') = b while ba + ba' would collapse to 0.
    """
    ql = mo2_quasilogic()
    n = 6
    prod = np.full((n, n), -1, dtype=np.int16)
    for x in range(n):
        prod[x, x] = x
        prod[0, x] = prod[x, 0] = 0
        prod[5, x] = prod[x, 5] = x
    for a, b in ((1, 2), (3, 4)):
        prod[a, b] = prod[b, a] = 0
    return Semilogic(ql.poset, prod)


def o6_logic() -> OrthoLogic:
    """Hexagon 0 < a < b' < 1, 0 < b < a' < 1 with a <-> a', b <-> b'.

    Cancellation forces b' - a = a, after which the monotonicity axioms are
    unsatisfiable; verification reports those violations together with the
    relative-distributivity failure at (a, b, b').
    """
    labels = ["0", "a", "b", "a'", "b'", "1"]
    n = 6
    le = np.eye(n, dtype=bool)
    le[0, :] = True
    le[:, 5] = True
    le[1, 4] = True  # a < b'
    le[2, 3] = True  # b < a'
    poset = FinitePoset(labels, le)
    neg = np.array([5, 3, 4, 1, 2, 0], dtype=np.int16)
    diff = np.full((n, n), -1, dtype=np.int16)
    for x in range(n):
        diff[x, 0] = x
        diff[x, x] = 0
        diff[5, x] = neg[x]
    diff[4, 1] = 1
    diff[3, 2] = 2
    return OrthoLogic(Quasilogic(poset, diff), neg)


def diamond_semiring() -> BooleanSemiring:
    """Three incomparable middles; a total-product lattice, not distributive."""
    labels = ["0", "x", "y", "z", "1"]
    poset = _flat_poset(labels)
    n = 5
    prod = np.empty((n, n), dtype=np.int16)
    for i in range(n):
        for j in range(n):
            if poset.le[i, j]:
                prod[i, j] = i
            elif poset.le[j, i]:
                prod[i, j] = j
            else:
                prod[i, j] = 0
    return BooleanSemiring(poset, prod)


def _permute(k: int, seed: int) -> tuple[np.ndarray, np.ndarray]:
    n = 1 << k
    rng = np.random.default_rng(seed)
    perm = rng.permutation(n)  # new index -> mask
    pos = np.empty(n, dtype=np.int64)
    pos[perm] = np.arange(n)  # mask -> new index
    return perm, pos


def shuffled_powerset_logic(k: int, seed: int) -> OrthoLogic:
    """Powerset logic with the element order scrambled; seeds are reproducible."""
    perm, pos = _permute(k, seed)
    n = 1 << k
    full = n - 1
    labels = [_mask_label(int(m)) for m in perm]
    le = np.zeros((n, n), dtype=bool)
    diff = np.full((n, n), -1, dtype=np.int16)
    neg = np.empty(n, dtype=np.int16)
    for i, mi in enumerate(perm):
        neg[i] = pos[full ^ mi]
        for j, mj in enumerate(perm):
            le[i, j] = (mi & ~mj) == 0
            if mj & ~mi == 0:
                diff[i, j] = pos[mi & ~mj]
    return OrthoLogic(Quasilogic(FinitePoset(labels, le), diff), neg)


def shuffled_powerset_semiring(k: int, seed: int) -> BooleanSemiring:
    perm, pos = _permute(k, seed)
    n = 1 << k
    labels = [_mask_label(int(m)) for m in perm]
    le = np.zeros((n, n), dtype=bool)
    prod = np.empty((n, n), dtype=np.int16)
    for i, mi in enumerate(perm):
        for j, mj in enumerate(perm):
            le[i, j] = (mi & ~mj) == 0
            prod[i, j] = pos[mi & mj]
    return BooleanSemiring(FinitePoset(labels, le), prod)
