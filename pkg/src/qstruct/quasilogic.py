"""Posets with a partial difference, their partial sums and classification.

The difference table ``diff[b, a] = b - a`` is defined exactly on comparable
pairs ``a <= b``. Partial sums are derived: ``a + b = c - ((c - a) - b)`` for
any majorant ``c`` with ``c - a >= b``; independence of the witness ``c`` is
verified whenever a sum is evaluated.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .errors import AxiomViolationError, DomainError, StructuralError
from .order import FinitePoset, join, meet, verify_poset
from .report import VerificationReport

CLASSIFICATION_LABELS = (
    "boolean-algebra",
    "ring",
    "quasiring",
    "logic",
    "quasilogic",
)


class Quasilogic:
    """Immutable finite quasilogic: a poset plus its difference table."""

    def __init__(self, poset: FinitePoset, diff: np.ndarray):
        diff = np.asarray(diff, dtype=np.int16)
        if diff.shape != (poset.n, poset.n):
            raise StructuralError(
                "difference table shape mismatch", shape=list(diff.shape)
            )
        bad = (diff < -1) | (diff >= poset.n)
        if bad.any():
            b, a = (int(x) for x in np.argwhere(bad)[0])
            raise StructuralError(
                "difference value out of range", b=poset.labels[b], a=poset.labels[a]
            )
        off = (diff >= 0) & ~poset.le.T  # defined although a <= b fails
        if off.any():
            b, a = (int(x) for x in np.argwhere(off)[0])
            raise StructuralError(
                "difference defined on incomparable pair",
                b=poset.labels[b],
                a=poset.labels[a],
            )
        self.poset = poset
        self.diff = diff
        self.n = poset.n
        self.labels = poset.labels
        self._sums: _SumInfo | None = None

    def index(self, label: str) -> int:
        return self.poset.index(label)

    def zero(self) -> int | None:
        return self.poset.least()

    def _sum_info(self) -> "_SumInfo":
        if self._sums is None:
            self._sums = _build_sum_info(self)
        return self._sums


class _SumInfo:
    """Per-pair summability, the sum value, and witness-dependence defects."""

    def __init__(self, n: int):
        self.summable = np.zeros((n, n), dtype=bool)
        self.value = np.full((n, n), -1, dtype=np.int16)
        # (a, b) -> (c1, c2) distinct majorants yielding different sums
        self.conflicts: dict[tuple[int, int], tuple[int, int]] = {}


def _build_sum_info(q: Quasilogic) -> _SumInfo:
    le, diff, n = q.poset.le, q.diff, q.n
    info = _SumInfo(n)
    for a in range(n):
        d = diff[:, a]  # d[c] = c - a
        have = d >= 0
        for b in range(a, n):
            cand = have & le[a, :] & le[b, :]
            cand[cand] &= le[b, d[cand]]  # need c - a >= b
            cs = np.flatnonzero(cand)
            if cs.size == 0:
                continue
            inner = diff[d[cs], b]  # (c - a) - b
            vals = np.where(inner >= 0, diff[cs, np.maximum(inner, 0)], -2)
            distinct = np.unique(vals)
            info.summable[a, b] = info.summable[b, a] = True
            if distinct.size == 1 and distinct[0] >= 0:
                info.value[a, b] = info.value[b, a] = distinct[0]
            else:
                # either genuinely majorant-dependent or undefined mid-formula
                bad = np.flatnonzero(vals != vals[0])
                i0 = int(cs[0])
                j0 = int(cs[bad[0]]) if bad.size else i0
                info.conflicts[(a, b)] = (i0, j0)
                info.conflicts[(b, a)] = (i0, j0)
    return info


def build_quasilogic(labels: Sequence[str], le: np.ndarray, diff: np.ndarray) -> Quasilogic:
    return Quasilogic(FinitePoset(labels, le), diff)


# -- verification -----------------------------------------------------------


def verify_quasilogic(q: Quasilogic) -> VerificationReport:
    """Full axiom scan: difference axioms, directedness, unique zero."""
    rep = VerificationReport(subject="quasilogic")
    rep.merge(verify_poset(q.poset))
    le, diff, labels, n = q.poset.le, q.diff, q.labels, q.n

    missing = le.T & (diff < 0)  # a <= b without b - a
    rep.record(
        "difference-domain",
        (
            {"b": labels[b], "a": labels[a]}
            for b, a in np.argwhere(missing)
        ),
    )

    bound_viol, cancel_viol = [], []
    for b in range(n):
        for a in np.flatnonzero(diff[b, :] >= 0):
            d = int(diff[b, a])
            if not le[d, b]:
                bound_viol.append({"b": labels[b], "a": labels[a], "diff": labels[d]})
                continue
            if diff[b, d] != a:
                back = int(diff[b, d])
                cancel_viol.append(
                    {
                        "b": labels[b],
                        "a": labels[a],
                        "got": labels[back] if back >= 0 else None,
                    }
                )
    rep.record("difference-bound", bound_viol)
    rep.record("difference-cancellation", cancel_viol)

    mono_viol, mono_id_viol = [], []
    anti_viol, anti_id_viol = [], []
    for a in range(n):
        bs = np.flatnonzero(le[a, :] & (diff[:, a] >= 0))
        for b in bs:
            for c in bs[le[b, bs]]:  # a <= b <= c, both differences defined
                ba, ca, cb = int(diff[b, a]), int(diff[c, a]), int(diff[c, b])
                w = {"a": labels[a], "b": labels[int(b)], "c": labels[int(c)]}
                # minuend grows: b - a <= c - a, (c-a) - (b-a) = c - b
                if not le[ba, ca]:
                    mono_viol.append(w)
                elif cb >= 0 and diff[ca, ba] != cb:
                    mono_id_viol.append(w)
                # subtrahend grows: c - b <= c - a, (c-a) - (c-b) = b - a
                if cb >= 0:
                    if not le[cb, ca]:
                        anti_viol.append(w)
                    elif diff[ca, cb] != ba:
                        anti_id_viol.append(w)
    rep.record("minuend-monotone", mono_viol)
    rep.record("minuend-difference-identity", mono_id_viol)
    rep.record("subtrahend-antitone", anti_viol)
    rep.record("subtrahend-difference-identity", anti_id_viol)

    from .order import is_upward_directed

    directed, pair = is_upward_directed(q.poset)
    rep.record("upward-directed", [] if directed else [{"a": pair[0], "b": pair[1]}])

    zeros = {int(diff[a, a]) for a in range(n) if diff[a, a] >= 0}
    zero_viol = []
    if len(zeros) > 1:
        zs = sorted(zeros)
        zero_viol = [{"z1": labels[zs[0]], "z2": labels[zs[1]]}]
    rep.record("zero-unique", zero_viol)
    least_viol = []
    if len(zeros) == 1:
        z = next(iter(zeros))
        rep.facts["zero"] = labels[z]
        if not le[z, :].all():
            x = int(np.flatnonzero(~le[z, :])[0])
            least_viol = [{"zero": labels[z], "not_above": labels[x]}]
    rep.record("zero-least", least_viol)
    return rep


# -- partial sum and product -------------------------------------------------


def summable(q: Quasilogic, a: int, b: int) -> bool:
    return bool(q._sum_info().summable[a, b])


def partial_sum(q: Quasilogic, a: int, b: int) -> int:
    """a + b = c - ((c - a) - b); all admissible majorants must agree."""
    info = q._sum_info()
    if not info.summable[a, b]:
        raise DomainError(
            "pair is not summable", a=q.labels[a], b=q.labels[b]
        )
    if (a, b) in info.conflicts:
        c1, c2 = info.conflicts[(a, b)]
        raise AxiomViolationError(
            "partial sum depends on the majorant",
            a=q.labels[a],
            b=q.labels[b],
            c1=q.labels[c1],
            c2=q.labels[c2],
        )
    return int(info.value[a, b])


def sum_family(q: Quasilogic, items: Sequence[int]) -> int:
    """Left fold of partial sums; raises DomainError when any step fails."""
    zero = q.zero()
    if zero is None:
        raise DomainError("quasilogic has no zero element")
    acc = zero
    for x in items:
        acc = partial_sum(q, acc, x)
    return acc


def quasicommutes(q: Quasilogic, a: int, b: int) -> bool:
    """True when some majorant c >= a, b has c - a <= b."""
    return len(_product_witnesses(q, a, b)) > 0


def _product_witnesses(q: Quasilogic, a: int, b: int) -> list[int]:
    le, diff = q.poset.le, q.diff
    d = diff[:, a]
    cand = (d >= 0) & le[a, :] & le[b, :]
    cand[cand] &= le[d[cand], b]
    return [int(c) for c in np.flatnonzero(cand)]


def quasiproduct(q: Quasilogic, a: int, b: int, c: int) -> int:
    """(ab)_c = a - (c - b) = b - (c - a) for a witness majorant c."""
    le, diff, labels = q.poset.le, q.diff, q.labels
    if not (le[a, c] and le[b, c] and diff[c, a] >= 0 and le[diff[c, a], b]):
        raise DomainError(
            "majorant does not witness quasicommutation",
            a=labels[a],
            b=labels[b],
            c=labels[c],
        )
    cb, ca = int(diff[c, b]), int(diff[c, a])
    v1 = int(diff[a, cb]) if cb >= 0 and diff[a, cb] >= 0 else -1
    v2 = int(diff[b, ca]) if diff[b, ca] >= 0 else -1
    if v1 < 0 or v1 != v2:
        raise AxiomViolationError(
            "quasiproduct formulas disagree",
            a=labels[a],
            b=labels[b],
            c=labels[c],
            left=labels[v1] if v1 >= 0 else None,
            right=labels[v2] if v2 >= 0 else None,
        )
    return v1


# -- derived identities -------------------------------------------------------


def check_de_morgan(q: Quasilogic) -> VerificationReport:
    """c - (a v b) = (c-a) ^ (c-b) and c - (a ^ b) = (c-a) v (c-b), c >= a, b."""
    rep = VerificationReport(subject="de-morgan")
    le, diff, labels = q.poset.le, q.diff, q.labels
    mt, jt = q.poset.meet_table(), q.poset.join_table()
    join_viol, meet_viol = [], []
    for a in range(q.n):
        for b in range(a, q.n):
            m, j = int(mt[a, b]), int(jt[a, b])
            if m < 0 or j < 0:
                continue
            for c in np.flatnonzero(le[a, :] & le[b, :]):
                ca, cb = int(diff[c, a]), int(diff[c, b])
                w = {"a": labels[a], "b": labels[b], "c": labels[int(c)]}
                if ca < 0 or cb < 0:
                    join_viol.append(w | {"reason": "difference undefined"})
                    continue
                if int(diff[c, j]) != int(mt[ca, cb]):
                    join_viol.append(w)
                if int(diff[c, m]) != int(jt[ca, cb]):
                    meet_viol.append(w)
    rep.record("difference-of-join", join_viol)
    rep.record("difference-of-meet", meet_viol)
    return rep


def check_sum_lattice_identity(q: Quasilogic) -> VerificationReport:
    """a + b = (a v b) + (a ^ b) whenever the left side and both bounds exist."""
    rep = VerificationReport(subject="sum-lattice-identity")
    info = q._sum_info()
    mt, jt = q.poset.meet_table(), q.poset.join_table()
    viol = []
    for a in range(q.n):
        for b in range(a, q.n):
            if not info.summable[a, b] or (a, b) in info.conflicts:
                continue
            m, j = int(mt[a, b]), int(jt[a, b])
            if m < 0 or j < 0:
                continue
            w = {"a": q.labels[a], "b": q.labels[b]}
            if not info.summable[j, m] or (j, m) in info.conflicts:
                viol.append(w | {"reason": "join and meet not summable"})
            elif info.value[j, m] != info.value[a, b]:
                viol.append(w)
    rep.record("sum-lattice-identity", viol)
    return rep


# -- classification -----------------------------------------------------------


def classify(q: Quasilogic) -> str:
    """Strongest applicable label, checked strongest-first.

    quasiring demands a witness-independent quasiproduct on top of trivial
    quasicommutation; without that refinement every chain would pass the ring
    test through degenerate witnesses.
    """
    info = q._sum_info()
    mt = q.poset.meet_table()
    zero = q.zero()
    n = q.n

    def disjoint(x: int, y: int) -> bool:
        return bool(info.summable[x, y]) and int(mt[x, y]) == zero

    logic_p = zero is not None
    if logic_p:
        for a in range(n):
            for b in range(a, n):
                if info.summable[a, b] and not disjoint(a, b):
                    logic_p = False
                    break
            if not logic_p:
                break

    quasiring_p = True
    for a in range(n):
        for b in range(a, n):
            witnesses = _product_witnesses(q, a, b)
            if not witnesses:
                quasiring_p = False
                break
            try:
                values = {quasiproduct(q, a, b, c) for c in witnesses}
            except AxiomViolationError:
                quasiring_p = False
                break
            if len(values) != 1:
                quasiring_p = False
                break
        if not quasiring_p:
            break

    ring_p = quasiring_p and zero is not None
    if ring_p:
        le, diff = q.poset.le, q.diff
        for a in range(n):
            for b in range(a, n):
                ok = False
                for c in np.flatnonzero(le[a, :] & le[b, :]):
                    ca, cb = int(diff[c, a]), int(diff[c, b])
                    if ca >= 0 and cb >= 0 and disjoint(ca, cb):
                        ok = True
                        break
                if not ok:
                    ring_p = False
                    break
            if not ring_p:
                break

    if ring_p and q.poset.greatest() is not None:
        return "boolean-algebra"
    if ring_p:
        return "ring"
    if quasiring_p:
        return "quasiring"
    if logic_p:
        return "logic"
    return "quasilogic"
