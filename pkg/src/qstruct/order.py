"""Finite partially ordered sets as dense boolean order tables.

Elements are integer ids into a label tuple; ``le[i, j]`` holds iff element i
is below element j. Structures stay small (at most 256 elements), so meets and
joins are computed by direct scans and cached per poset.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError, StructuralError
from .report import VerificationReport

MAX_ELEMENTS = 256


class FinitePoset:
    """Immutable finite poset. Do not mutate ``le`` after construction."""

    def __init__(self, labels: Sequence[str], le: np.ndarray):
        labels = tuple(str(x) for x in labels)
        if len(set(labels)) != len(labels):
            dup = sorted({x for x in labels if labels.count(x) > 1})
            raise StructuralError("duplicate element labels", labels=dup)
        if len(labels) == 0:
            raise StructuralError("empty element list")
        if len(labels) > MAX_ELEMENTS:
            raise StructuralError(
                f"too many elements ({len(labels)} > {MAX_ELEMENTS})"
            )
        le = np.asarray(le, dtype=bool)
        if le.shape != (len(labels), len(labels)):
            raise StructuralError(
                "order table shape mismatch", shape=list(le.shape), n=len(labels)
            )
        self.labels = labels
        self.le = le
        self.n = len(labels)
        self._index = {lab: i for i, lab in enumerate(labels)}
        self._meet_table: np.ndarray | None = None
        self._join_table: np.ndarray | None = None

    # -- basic queries ------------------------------------------------------

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise DomainError("unknown element label", label=label) from None

    def label(self, i: int) -> str:
        return self.labels[i]

    def leq(self, a: int, b: int) -> bool:
        return bool(self.le[a, b])

    def downset(self, a: int) -> np.ndarray:
        """Boolean mask of elements <= a."""
        return self.le[:, a]

    def upset(self, a: int) -> np.ndarray:
        """Boolean mask of elements >= a."""
        return self.le[a, :]

    def least(self) -> int | None:
        hits = np.flatnonzero(self.le.all(axis=1))
        return int(hits[0]) if hits.size else None

    def greatest(self) -> int | None:
        hits = np.flatnonzero(self.le.all(axis=0))
        return int(hits[0]) if hits.size else None

    # -- cached bound tables -------------------------------------------------

    def meet_table(self) -> np.ndarray:
        if self._meet_table is None:
            self._meet_table = _bound_table(self.le, lower=True)
        return self._meet_table

    def join_table(self) -> np.ndarray:
        if self._join_table is None:
            self._join_table = _bound_table(self.le, lower=False)
        return self._join_table


def _bound_table(le: np.ndarray, lower: bool) -> np.ndarray:
    """Meet (lower=True) or join table; -1 where the bound does not exist."""
    n = le.shape[0]
    table = np.full((n, n), -1, dtype=np.int16)
    for a in range(n):
        for b in range(a, n):
            mask = (le[:, a] & le[:, b]) if lower else (le[a, :] & le[b, :])
            cand = np.flatnonzero(mask)
            if cand.size == 0:
                continue
            sub = le[np.ix_(cand, cand)]
            # the bound is the candidate comparable with (and extremal among) all
            hits = np.flatnonzero(sub.all(axis=0) if lower else sub.all(axis=1))
            if hits.size == 1:
                g = int(cand[hits[0]])
                table[a, b] = table[b, a] = g
    return table


def verify_poset(p: FinitePoset) -> VerificationReport:
    """Check reflexivity, antisymmetry and transitivity with witnesses."""
    rep = VerificationReport(subject="poset")
    le, labels = p.le, p.labels

    rep.record(
        "reflexive",
        ({"a": labels[i]} for i in np.flatnonzero(~np.diag(le))),
    )

    sym = le & le.T
    np.fill_diagonal(sym, False)
    rep.record(
        "antisymmetric",
        (
            {"a": labels[i], "b": labels[j]}
            for i, j in zip(*np.nonzero(sym))
            if i < j
        ),
    )

    # a<=b<=c without a<=c; boolean matrix square finds all gaps at once
    closure_gap = (le.astype(np.uint8) @ le.astype(np.uint8) > 0) & ~le
    trans_viol = []
    for a, c in zip(*np.nonzero(closure_gap)):
        b = int(np.flatnonzero(le[a, :] & le[:, c])[0])
        trans_viol.append({"a": labels[a], "b": labels[b], "c": labels[c]})
    rep.record("transitive", trans_viol)

    least = p.least()
    rep.facts["least"] = labels[least] if least is not None else None
    greatest = p.greatest()
    rep.facts["greatest"] = labels[greatest] if greatest is not None else None
    return rep


def meet(p: FinitePoset, a: int, b: int) -> int | None:
    """Greatest lower bound, or None when it does not exist (or is not unique)."""
    m = int(p.meet_table()[a, b])
    return None if m < 0 else m


def join(p: FinitePoset, a: int, b: int) -> int | None:
    j = int(p.join_table()[a, b])
    return None if j < 0 else j


def meet_of(p: FinitePoset, items: Iterable[int]) -> int | None:
    """Greatest lower bound of a set of elements (empty set -> greatest)."""
    mask = np.ones(p.n, dtype=bool)
    for x in items:
        mask &= p.le[:, x]
    return _extremal(p.le, mask, lower=True)


def join_of(p: FinitePoset, items: Iterable[int]) -> int | None:
    mask = np.ones(p.n, dtype=bool)
    for x in items:
        mask &= p.le[x, :]
    return _extremal(p.le, mask, lower=False)


def _extremal(le: np.ndarray, mask: np.ndarray, lower: bool) -> int | None:
    cand = np.flatnonzero(mask)
    if cand.size == 0:
        return None
    sub = le[np.ix_(cand, cand)]
    hits = np.flatnonzero(sub.all(axis=0) if lower else sub.all(axis=1))
    return int(cand[hits[0]]) if hits.size == 1 else None


def atoms(p: FinitePoset) -> list[int]:
    """Minimal nonzero elements; requires a least element."""
    zero = p.least()
    if zero is None:
        raise DomainError("poset has no least element")
    out = []
    for a in range(p.n):
        if a == zero:
            continue
        below = np.flatnonzero(p.le[:, a])
        if set(below.tolist()) == {zero, a}:
            out.append(a)
    return out


def is_upward_directed(p: FinitePoset) -> tuple[bool, tuple[str, str] | None]:
    """Every pair must admit a common upper bound; returns a witness pair if not."""
    for a in range(p.n):
        for b in range(a + 1, p.n):
            if not (p.le[a, :] & p.le[b, :]).any():
                return False, (p.labels[a], p.labels[b])
    return True, None


def segment(p: FinitePoset, a: int, c: int) -> tuple[FinitePoset, list[int]]:
    """Induced subposet on the interval [a, c]; also returns parent ids."""
    if not p.leq(a, c):
        raise DomainError(
            "segment endpoints not ordered", a=p.labels[a], c=p.labels[c]
        )
    members = [i for i in range(p.n) if p.le[a, i] and p.le[i, c]]
    sub = FinitePoset(
        [p.labels[i] for i in members], p.le[np.ix_(members, members)]
    )
    return sub, members


def transitive_reduction(p: FinitePoset) -> list[tuple[str, str]]:
    """Cover pairs (a, b): a < b with nothing strictly between; for serializers."""
    lt = p.le & ~np.eye(p.n, dtype=bool)
    strict2 = (lt.astype(np.uint8) @ lt.astype(np.uint8)) > 0
    covers = lt & ~strict2
    return [
        (p.labels[i], p.labels[j]) for i, j in zip(*np.nonzero(covers))
    ]
