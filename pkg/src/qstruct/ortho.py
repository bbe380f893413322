"""Logics: quasilogics with a greatest element and an orthocomplement.

The complement must be an antitone involution exchanging meets and joins,
split the unit (a v ~a = 1, a ^ ~a = 0), and satisfy the relative
distributivity law that stands in for orthomodularity. Segments [a, c]
inherit a candidate logic structure; the construction is allowed to fail,
and the failure witnesses are as informative as the successes.
"""

from __future__ import annotations

import numpy as np

from .errors import ConstructionError, StructuralError
from .order import segment
from .quasilogic import Quasilogic, verify_quasilogic
from .report import VerificationReport


class OrthoLogic:
    """Quasilogic with unit and complement; involution is demanded up front."""

    def __init__(self, ql: Quasilogic, neg: np.ndarray):
        neg = np.asarray(neg, dtype=np.int16)
        top = ql.poset.greatest()
        if top is None:
            raise StructuralError("logic requires a greatest element")
        if neg.shape != (ql.n,) or (neg < 0).any() or (neg >= ql.n).any():
            raise StructuralError("complement map out of range")
        fixed = np.flatnonzero(neg[neg] != np.arange(ql.n))
        if fixed.size:
            a = int(fixed[0])
            raise StructuralError(
                "complement is not an involution",
                a=ql.labels[a],
                image=ql.labels[int(neg[a])],
                twice=ql.labels[int(neg[neg[a]])],
            )
        self.ql = ql
        self.neg = neg
        self.poset = ql.poset
        self.labels = ql.labels
        self.n = ql.n
        self.top = top

    def index(self, label: str) -> int:
        return self.ql.index(label)


def verify_logic(ol: OrthoLogic) -> VerificationReport:
    rep = VerificationReport(subject="logic")
    rep.merge(verify_quasilogic(ol.ql))
    labels, neg, n = ol.labels, ol.neg, ol.n
    le = ol.poset.le
    mt, jt = ol.poset.meet_table(), ol.poset.join_table()
    top, z = ol.top, ol.poset.least()

    cj, cm = [], []
    for a in range(n):
        j = int(jt[a, neg[a]])
        if j < 0:
            cj.append({"a": labels[a], "reason": "join undefined"})
        elif j != top:
            cj.append({"a": labels[a], "join": labels[j]})
        m = int(mt[a, neg[a]])
        if z is None or m < 0:
            cm.append({"a": labels[a], "reason": "meet undefined"})
        elif m != z:
            cm.append({"a": labels[a], "meet": labels[m]})
    rep.record("complement-join", cj)
    rep.record("complement-meet", cm)

    rep.record(
        "complement-antitone",
        (
            {"a": labels[a], "b": labels[b]}
            for a in range(n)
            for b in range(n)
            if le[a, b] and not le[neg[b], neg[a]]
        ),
    )

    dm_join, dm_meet = [], []
    for a in range(n):
        for b in range(a, n):
            w = {"a": labels[a], "b": labels[b]}
            j = int(jt[a, b])
            if j >= 0:
                m = int(mt[neg[a], neg[b]])
                if m < 0:
                    dm_join.append(w | {"reason": "meet of complements undefined"})
                elif m != neg[j]:
                    dm_join.append(w)
            m = int(mt[a, b])
            if m >= 0:
                j2 = int(jt[neg[a], neg[b]])
                if j2 < 0:
                    dm_meet.append(w | {"reason": "join of complements undefined"})
                elif j2 != neg[m]:
                    dm_meet.append(w)
    rep.record("de-morgan-join", dm_join)
    rep.record("de-morgan-meet", dm_meet)

    # (a v b) ^ c = a v (b ^ c) whenever a <= ~b <= c
    rel = []
    for b in range(n):
        nb = int(neg[b])
        for a in np.flatnonzero(le[:, nb]):
            for c in np.flatnonzero(le[nb, :]):
                w = {"a": labels[a], "b": labels[b], "c": labels[c]}
                ab = int(jt[a, b])
                bc = int(mt[b, c])
                if ab < 0 or bc < 0:
                    rel.append(w | {"reason": "bound undefined"})
                    continue
                lhs, rhs = int(mt[ab, c]), int(jt[a, bc])
                if lhs < 0 or rhs < 0:
                    rel.append(w | {"reason": "bound undefined"})
                elif lhs != rhs:
                    rel.append(w | {"lhs": labels[lhs], "rhs": labels[rhs]})
    rep.record("relative-distributivity", rel)

    diff = ol.ql.diff
    rep.record(
        "complement-difference-consistency",
        (
            {
                "a": labels[a],
                "complement": labels[int(neg[a])],
                "from_unit": labels[int(diff[top, a])] if diff[top, a] >= 0 else None,
            }
            for a in range(n)
            if diff[top, a] != neg[a]
        ),
    )

    rep.facts["unit"] = labels[top]
    ok, wit = boolean_criterion(ol)
    rep.facts["boolean"] = ok
    if wit:
        rep.facts["boolean_witness"] = wit
    ok, wit = is_distributive(ol)
    rep.facts["distributive"] = ok
    if wit:
        rep.facts["distributive_witness"] = wit
    return rep


def boolean_criterion(ol: OrthoLogic) -> tuple[bool, dict | None]:
    """Boolean iff disjointness coincides with lying under the complement."""
    z = ol.poset.least()
    if z is None:
        return False, {"reason": "no least element"}
    mt, le, labels = ol.poset.meet_table(), ol.poset.le, ol.labels
    for a in range(ol.n):
        for b in range(ol.n):
            disjoint = mt[a, b] == z
            under = bool(le[b, ol.neg[a]])
            if disjoint != under:
                return False, {"a": labels[a], "b": labels[b]}
    return True, None


def is_distributive(ol: OrthoLogic) -> tuple[bool, dict | None]:
    """Meet distributes over join wherever all four bounds exist."""
    mt, jt, labels = ol.poset.meet_table(), ol.poset.join_table(), ol.labels
    n = ol.n
    for a in range(n):
        for b in range(a, n):
            j = int(jt[a, b])
            if j < 0:
                continue
            for c in range(n):
                ac, bc = int(mt[a, c]), int(mt[b, c])
                if ac < 0 or bc < 0:
                    continue
                rhs = int(jt[ac, bc])
                lhs = int(mt[j, c])
                if lhs >= 0 and rhs >= 0 and lhs != rhs:
                    return False, {"a": labels[a], "b": labels[b], "c": labels[c]}
    return True, None


def segment_logic(ol: OrthoLogic, lo: int, hi: int) -> OrthoLogic:
    """Candidate logic on [lo, hi]: y - x = lo v (~x ^ y).

    Raises ConstructionError when the defining bounds are missing and
    StructuralError when the induced complement fails to be an involution,
    which does happen in non-distributive logics.
    """
    sub, parents = segment(ol.poset, lo, hi)
    pidx = {p: i for i, p in enumerate(parents)}
    mt, jt = ol.poset.meet_table(), ol.poset.join_table()
    labels = ol.labels
    diff = np.full((sub.n, sub.n), -1, dtype=np.int16)
    for yi, yp in enumerate(parents):
        for xi, xp in enumerate(parents):
            if not sub.le[xi, yi]:
                continue
            m = int(mt[int(ol.neg[xp]), yp])
            if m < 0:
                raise ConstructionError(
                    "segment difference needs a meet with the complement",
                    x=labels[xp],
                    y=labels[yp],
                )
            j = int(jt[lo, m])
            if j < 0 or j not in pidx:
                raise ConstructionError(
                    "segment difference leaves the segment", x=labels[xp], y=labels[yp]
                )
            diff[yi, xi] = pidx[j]
    ql = Quasilogic(sub, diff)
    neg_seg = diff[pidx[hi], :].copy()
    return OrthoLogic(ql, neg_seg)
