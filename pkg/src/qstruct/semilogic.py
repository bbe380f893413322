"""Semilogics: posets with a partial, commutative, idempotent product.

Sums of pairwise-orthogonal families (orthogonal: ab = 0) are realized as
least upper bounds. Distributions, ideals, filters, homomorphisms, closure
operators and regularity checks all live at this level; the boolean-semiring
layer only adds totality of the product and distributivity.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence, Union

import numpy as np

from .errors import DomainError, StructuralError
from .order import FinitePoset, join_of, verify_poset
from .quasilogic import Quasilogic, partial_sum, quasicommutes, summable
from .report import VerificationReport

MAX_FAMILIES = 200_000
EXACT_TOL = 1e-12  # additivity / regularity comparisons are essentially exact

Structure = Union["Semilogic", Quasilogic]


class Semilogic:
    """Immutable finite semilogic; ``prod[a, b] = -1`` where undefined."""

    def __init__(self, poset: FinitePoset, prod: np.ndarray):
        prod = np.asarray(prod, dtype=np.int16)
        if prod.shape != (poset.n, poset.n):
            raise StructuralError("product table shape mismatch", shape=list(prod.shape))
        if ((prod < -1) | (prod >= poset.n)).any():
            a, b = (int(x) for x in np.argwhere((prod < -1) | (prod >= poset.n))[0])
            raise StructuralError(
                "product value out of range", a=poset.labels[a], b=poset.labels[b]
            )
        if (prod != prod.T).any():
            a, b = (int(x) for x in np.argwhere(prod != prod.T)[0])
            raise StructuralError(
                "product table asymmetric", a=poset.labels[a], b=poset.labels[b]
            )
        self.poset = poset
        self.prod = prod
        self.n = poset.n
        self.labels = poset.labels
        self._families: list[tuple[tuple[int, ...], int]] | None = None

    def index(self, label: str) -> int:
        return self.poset.index(label)

    def zero(self) -> int | None:
        return self.poset.least()

    def commutes(self, a: int, b: int) -> bool:
        return self.prod[a, b] >= 0

    def orthogonal(self, a: int, b: int) -> bool:
        z = self.zero()
        return z is not None and self.prod[a, b] == z

    # -- orthogonal families --------------------------------------------------

    def _all_orthogonal_families(self) -> list[tuple[tuple[int, ...], int]]:
        """Every pairwise-orthogonal zero-free subset, with its sup (-1: none)."""
        if self._families is not None:
            return self._families
        z = self.zero()
        out: list[tuple[tuple[int, ...], int]] = []
        if z is None:
            self._families = out
            return out
        orth = self.prod == z
        elems = [i for i in range(self.n) if i != z]
        sup0 = join_of(self.poset, ())
        out.append(((), sup0 if sup0 is not None else -1))
        stack: list[tuple[tuple[int, ...], list[int]]] = [((), elems)]
        while stack:
            cur, cands = stack.pop()
            for k, x in enumerate(cands):
                fam = cur + (x,)
                if len(out) >= MAX_FAMILIES:
                    raise StructuralError(
                        "orthogonal family count exceeds enumeration cap"
                    )
                s = join_of(self.poset, fam)
                out.append((fam, s if s is not None else -1))
                rest = [y for y in cands[k + 1 :] if orth[x, y]]
                if rest:
                    stack.append((fam, rest))
        self._families = out
        return out


def summable_families(
    s: Semilogic, bound: int | None = None
) -> list[tuple[tuple[int, ...], int]]:
    """Pairwise-orthogonal families whose sup exists, smallest first.

    Includes the empty family (sum 0) and all nonzero singletons.
    """
    fams = [(f, v) for f, v in s._all_orthogonal_families() if v >= 0]
    if bound is not None:
        fams = [(f, v) for f, v in fams if len(f) <= bound]
    fams.sort(key=lambda fv: (len(fv[0]), fv[0]))
    return fams


def _meet(s: Semilogic, a: int, b: int) -> int:
    return int(s.poset.meet_table()[a, b])


def _join(s: Semilogic, a: int, b: int) -> int:
    return int(s.poset.join_table()[a, b])


def relative_complement(s: Semilogic, a: int, k: int) -> int | None:
    """Unique x with a ^ x = 0 and a v x = k, if any; None otherwise."""
    z = s.zero()
    if z is None or not s.poset.le[a, k]:
        return None
    mt, jt = s.poset.meet_table(), s.poset.join_table()
    hits = np.flatnonzero((mt[a, :] == z) & (jt[a, :] == k))
    return int(hits[0]) if hits.size == 1 else None


# -- verification -------------------------------------------------------------


def verify_semilogic(s: Semilogic) -> VerificationReport:
    rep = VerificationReport(subject="semilogic")
    rep.merge(verify_poset(s.poset))
    labels, prod, le, n = s.labels, s.prod, s.poset.le, s.n
    z = s.zero()
    rep.record("zero-element", [] if z is not None else [{"reason": "no least element"}])

    if z is not None:
        rep.record(
            "zero-product",
            (
                {"a": labels[a]}
                for a in range(n)
                if prod[z, a] != z
            ),
        )
    rep.record(
        "idempotent",
        ({"a": labels[a]} for a in range(n) if prod[a, a] != a),
    )

    coh = []
    for a in range(n):
        for b in range(n):
            if le[a, b] and prod[a, b] != a:
                coh.append({"a": labels[a], "b": labels[b], "reason": "a <= b needs ab = a"})
            elif prod[a, b] == a and not le[a, b]:
                coh.append({"a": labels[a], "b": labels[b], "reason": "ab = a needs a <= b"})
    rep.record("order-coherence", coh)

    mt = s.poset.meet_table()
    rep.record(
        "product-is-meet",
        (
            {"a": labels[a], "b": labels[b]}
            for a in range(n)
            for b in range(a, n)
            if prod[a, b] >= 0 and mt[a, b] != prod[a, b]
        ),
    )

    assoc = []
    if (prod >= 0).all():
        ab_c = prod[prod]  # [a, b, c] -> (ab)c over all triples
        bc_a = np.transpose(ab_c, (2, 0, 1))  # [a, b, c] -> (bc)a
        for a, b, c in zip(*np.nonzero(ab_c != bc_a)):
            assoc.append({"a": labels[a], "b": labels[b], "c": labels[c]})
    else:
        for a in range(n):
            for b in range(n):
                ab = prod[a, b]
                if ab < 0:
                    continue
                for c in range(n):
                    bc = prod[b, c]
                    if bc < 0 or prod[c, a] < 0:
                        continue
                    w = {"a": labels[a], "b": labels[b], "c": labels[c]}
                    if prod[ab, c] < 0 or prod[bc, a] < 0:
                        assoc.append(w | {"reason": "grouped product undefined"})
                    elif prod[ab, c] != prod[bc, a]:
                        assoc.append(w)
    rep.record("restricted-associativity", assoc)

    # product distributes over realized sums: a(sum a_i) = sum(a a_i)
    sumlaw = []
    if z is not None:
        for fam, sup in summable_families(s):
            if not fam:
                continue
            for a in range(n):
                if any(prod[a, m] < 0 for m in fam):
                    continue
                images = [int(prod[a, m]) for m in fam]
                nonzero = [p for p in images if p != z]
                w = {"a": labels[a], "family": [labels[m] for m in fam]}
                if len(set(nonzero)) != len(nonzero):
                    sumlaw.append(w | {"reason": "image family not summable"})
                    continue
                if any(
                    prod[p, q] != z
                    for i, p in enumerate(nonzero)
                    for q in nonzero[i + 1 :]
                ):
                    sumlaw.append(w | {"reason": "image family not orthogonal"})
                    continue
                img_sum = join_of(s.poset, nonzero)
                if prod[a, sup] < 0:
                    sumlaw.append(w | {"reason": "product with sum undefined"})
                elif img_sum is None or img_sum != prod[a, sup]:
                    sumlaw.append(w)
    rep.record("product-additivity", sumlaw)

    # every defined product must come from a common orthogonal refinement
    compat = []
    if z is not None:
        by_sup: dict[int, list[tuple[int, ...]]] = {}
        for fam, sup in summable_families(s):
            if sup >= 0:
                by_sup.setdefault(sup, []).append(fam)
        orth = s.prod == z
        for a in range(n):
            for b in range(a, n):
                ab = prod[a, b]
                if ab < 0:
                    continue
                if not _has_common_refinement(s, by_sup, orth, a, b, int(ab)):
                    compat.append({"a": labels[a], "b": labels[b]})
    rep.record("compatibility-decomposition", compat)

    rep.facts["orthogonal_family_count"] = len(s._all_orthogonal_families())
    if z is not None:
        rep.facts["zero"] = labels[z]
    return rep


def _has_common_refinement(
    s: Semilogic,
    by_sup: dict[int, list[tuple[int, ...]]],
    orth: np.ndarray,
    a: int,
    b: int,
    ab: int,
) -> bool:
    """Search decompositions A of a, B of b inside one orthogonal family."""
    for fam_a in by_sup.get(a, ()):
        set_a = set(fam_a)
        for fam_b in by_sup.get(b, ()):
            merged = set_a | set(fam_b)
            if not all(orth[x, y] for x in merged for y in merged if x < y):
                continue
            common = sorted(set_a & set(fam_b))
            total = join_of(s.poset, common)
            if total is not None and total == ab:
                return True
    return False


# -- distributions ------------------------------------------------------------


@dataclass
class DistributionTable:
    """Nonnegative weights per element, additive over summable families."""

    values: np.ndarray

    @classmethod
    def from_dict(cls, s: Semilogic, data: Mapping[str, float]) -> "DistributionTable":
        vals = np.zeros(s.n, dtype=float)
        for label, v in data.items():
            vals[s.index(label)] = float(v)
        return cls(vals)


def verify_distribution(
    s: Semilogic, m: DistributionTable, tol: float = EXACT_TOL
) -> VerificationReport:
    vals = np.asarray(m.values, dtype=float)
    if vals.shape != (s.n,):
        raise DomainError("distribution length mismatch", length=len(vals))
    if (vals < 0).any():
        i = int(np.flatnonzero(vals < 0)[0])
        raise DomainError("negative distribution value", element=s.labels[i])

    rep = VerificationReport(subject="distribution")
    z = s.zero()
    rep.record(
        "zero-value",
        [] if z is not None and abs(vals[z]) <= tol else [{"value": float(vals[z]) if z is not None else None}],
    )
    rep.record(
        "monotone",
        (
            {"a": s.labels[a], "b": s.labels[b]}
            for a in range(s.n)
            for b in range(s.n)
            if s.poset.le[a, b] and vals[a] > vals[b] + tol
        ),
    )
    additive = []
    for fam, sup in summable_families(s):
        if len(fam) < 2:
            continue
        total = float(sum(vals[list(fam)]))
        if abs(total - vals[sup]) > tol:
            additive.append(
                {
                    "family": [s.labels[x] for x in fam],
                    "sum": s.labels[sup],
                    "gap": float(total - vals[sup]),
                }
            )
    rep.record("additive", additive)

    mass = 0.0
    for fam, _ in s._all_orthogonal_families():
        if fam:
            mass = max(mass, float(sum(vals[list(fam)])))
    rep.facts["mass"] = mass
    rep.facts["is_probability"] = abs(mass - 1.0) <= tol
    rep.facts["is_state"] = rep.facts["is_probability"] and bool(
        (np.abs(vals - 1.0) <= tol).any()
    )
    return rep


@dataclass(frozen=True)
class Filter:
    members: frozenset[int]


@dataclass(frozen=True)
class Ideal:
    members: frozenset[int]


def support(
    s: Semilogic, p: DistributionTable, tol: float = EXACT_TOL
) -> tuple[Filter, VerificationReport]:
    """Certain elements {c : p(c) = 1} of a state; verified as a filter."""
    dist_rep = verify_distribution(s, p, tol)
    if not (dist_rep.ok and dist_rep.facts["is_state"]):
        raise DomainError("distribution is not a state")
    members = frozenset(int(i) for i in np.flatnonzero(np.abs(p.values - 1.0) <= tol))
    filt = Filter(members)
    rep = verify_filter(s, filt)
    return filt, rep


def verify_filter(s: Semilogic, f: Filter) -> VerificationReport:
    members = set(f.members)
    if not members:
        raise DomainError("empty filter")
    if len(members) == s.n:
        raise DomainError("filter is the whole structure")
    rep = VerificationReport(subject="filter")
    z = s.zero()
    labels = s.labels
    rep.record("no-zero", [{"zero": labels[z]}] if z in members else [])
    rep.record(
        "upward-closed",
        (
            {"member": labels[b], "above": labels[c]}
            for b in members
            for c in np.flatnonzero(s.poset.le[b, :])
            if int(c) not in members
        ),
    )
    rep.record(
        "product-closed",
        (
            {"a": labels[a], "b": labels[b], "product": labels[int(s.prod[a, b])]}
            for a in members
            for b in members
            if s.prod[a, b] >= 0 and int(s.prod[a, b]) not in members
        ),
    )
    # maximal iff every outside element is annihilated by some member
    mt = s.poset.meet_table()
    maximal = True
    for a in range(s.n):
        if a in members:
            continue
        if not any(mt[a, b] == z for b in members):
            maximal = False
            break
    rep.facts["maximal"] = maximal
    rep.facts["members"] = sorted(labels[x] for x in members)
    return rep


def verify_ideal(s: Semilogic, d: Ideal) -> VerificationReport:
    members = set(d.members)
    if not members:
        raise DomainError("empty ideal")
    if len(members) == s.n:
        raise DomainError("ideal is the whole structure")
    rep = VerificationReport(subject="ideal")
    labels, mt = s.labels, s.poset.meet_table()
    rep.record(
        "meet-absorbing",
        (
            {"a": labels[a], "b": labels[b], "meet": labels[int(mt[a, b])]}
            for a in range(s.n)
            for b in members
            if mt[a, b] >= 0 and int(mt[a, b]) not in members
        ),
    )
    rep.record(
        "sum-closed",
        (
            {"family": [labels[x] for x in fam], "sum": labels[sup]}
            for fam, sup in summable_families(s)
            if fam and set(fam) <= members and sup not in members
        ),
    )
    rep.facts["maximal"] = _ideal_is_maximal(s, members)
    rep.facts["members"] = sorted(labels[x] for x in members)
    return rep


def _ideal_closure(s: Semilogic, seed: set[int]) -> set[int]:
    mt = s.poset.meet_table()
    cur = set(seed)
    changed = True
    while changed:
        changed = False
        for a in range(s.n):
            for b in list(cur):
                m = int(mt[a, b])
                if m >= 0 and m not in cur:
                    cur.add(m)
                    changed = True
        for fam, sup in summable_families(s):
            if fam and set(fam) <= cur and sup not in cur:
                cur.add(sup)
                changed = True
    return cur


def _ideal_is_maximal(s: Semilogic, members: set[int]) -> bool:
    for x in range(s.n):
        if x in members:
            continue
        if len(_ideal_closure(s, members | {x})) < s.n:
            return False
    return True


# -- homomorphisms -------------------------------------------------------------


@dataclass
class HomomorphismMap:
    source: Structure
    target: Structure
    mapping: np.ndarray  # source element -> target element

    @classmethod
    def from_dict(
        cls, source: Structure, target: Structure, data: Mapping[str, str]
    ) -> "HomomorphismMap":
        arr = np.full(source.n, -1, dtype=np.int16)
        for k, v in data.items():
            arr[source.index(k)] = target.index(v)
        if (arr < 0).any():
            missing = source.labels[int(np.flatnonzero(arr < 0)[0])]
            raise StructuralError("homomorphism map incomplete", element=missing)
        return cls(source, target, arr)


def _structure_zero(s: Structure) -> int | None:
    return s.poset.least()


def _structure_families(s: Structure) -> list[tuple[tuple[int, ...], int]]:
    if isinstance(s, Semilogic):
        return summable_families(s)
    return _quasilogic_families(s)


def _quasilogic_families(q: Quasilogic) -> list[tuple[tuple[int, ...], int]]:
    """Subsets with an iterated partial sum; valid structures make it order-free."""
    z = q.zero()
    if z is None:
        return []
    out: list[tuple[tuple[int, ...], int]] = [((), z)]
    stack: list[tuple[tuple[int, ...], int, int]] = [((), z, 0)]
    while stack:
        fam, acc, start = stack.pop()
        for x in range(start, q.n):
            if x == z or not summable(q, acc, x):
                continue
            try:
                new_acc = partial_sum(q, acc, x)
            except Exception:
                continue
            new_fam = fam + (x,)
            if len(out) >= MAX_FAMILIES:
                raise StructuralError("summable family count exceeds enumeration cap")
            out.append((new_fam, new_acc))
            stack.append((new_fam, new_acc, x + 1))
    return out


def _image_sum(t: Structure, images: Sequence[int]) -> int | None:
    z = _structure_zero(t)
    if z is None:
        return None
    items = [x for x in images if x != z]
    if isinstance(t, Semilogic):
        if len(set(items)) != len(items):
            return None
        for i, p in enumerate(items):
            for q in items[i + 1 :]:
                if t.prod[p, q] != z:
                    return None
        return join_of(t.poset, items)
    acc = z
    for x in items:
        if not summable(t, acc, x):
            return None
        acc = partial_sum(t, acc, x)
    return acc


def _is_logic(t: Structure) -> bool:
    """Only disjoint pairs summable; the commutation-preservation gate."""
    if not isinstance(t, Quasilogic):
        return False
    info = t._sum_info()
    mt = t.poset.meet_table()
    z = t.zero()
    if z is None:
        return False
    for a in range(t.n):
        for b in range(a, t.n):
            if info.summable[a, b] and mt[a, b] != z:
                return False
    return True


def verify_homomorphism(h: HomomorphismMap) -> VerificationReport:
    rep = VerificationReport(subject="homomorphism")
    src, tgt, f = h.source, h.target, h.mapping
    if f.shape != (src.n,) or (f < 0).any() or (f >= tgt.n).any():
        raise StructuralError("homomorphism map out of range")
    sl, tl = src.labels, tgt.labels

    sz, tz = _structure_zero(src), _structure_zero(tgt)
    rep.record(
        "zero-preserved",
        []
        if sz is not None and tz is not None and f[sz] == tz
        else [{"zero": sl[sz] if sz is not None else None}],
    )

    rep.record(
        "monotone",
        (
            {"a": sl[a], "b": sl[b]}
            for a in range(src.n)
            for b in range(src.n)
            if src.poset.le[a, b] and not tgt.poset.le[f[a], f[b]]
        ),
    )

    additive = []
    for fam, total in _structure_families(src):
        if len(fam) < 2:
            continue
        img = _image_sum(tgt, [int(f[x]) for x in fam])
        if img is None or img != f[total]:
            additive.append(
                {
                    "family": [sl[x] for x in fam],
                    "expected": tl[int(f[total])],
                    "got": tl[img] if img is not None else None,
                }
            )
    rep.record("additive", additive)

    if isinstance(src, Quasilogic) and isinstance(tgt, Quasilogic):
        sub = []
        for b in range(src.n):
            for a in np.flatnonzero(src.diff[b, :] >= 0):
                d = int(src.diff[b, a])
                td = int(tgt.diff[f[b], f[a]])
                if td < 0 or td != f[d]:
                    sub.append({"b": sl[b], "a": sl[int(a)]})
        rep.record("subtraction-preserved", sub)

    if _is_logic(tgt):
        assert isinstance(tgt, Quasilogic)
        comm = []
        for a in range(src.n):
            for b in range(a, src.n):
                src_comm = (
                    src.commutes(a, b)
                    if isinstance(src, Semilogic)
                    else quasicommutes(src, a, b)
                )
                if src_comm and not quasicommutes(tgt, int(f[a]), int(f[b])):
                    comm.append({"a": sl[a], "b": sl[b]})
        rep.record("commutation-preserved", comm)
    else:
        rep.facts["commutation-check"] = "skipped (target is not a logic)"
    return rep


# -- closures -------------------------------------------------------------------


@dataclass
class ClosurePair:
    kmap: np.ndarray  # element -> its closure

    @classmethod
    def from_dict(cls, s: Semilogic, data: Mapping[str, str]) -> "ClosurePair":
        arr = np.full(s.n, -1, dtype=np.int16)
        for k, v in data.items():
            arr[s.index(k)] = s.index(v)
        if (arr < 0).any():
            raise StructuralError("closure map incomplete")
        return cls(arr)


def verify_closure(
    s: Semilogic, cp: ClosurePair, companion: Quasilogic | None = None
) -> VerificationReport:
    """Closure axioms, the closed/open element sets and the interior map.

    ``companion`` supplies an explicit difference table for the openness test;
    without one, unique relative complements stand in where they exist.
    """
    k = np.asarray(cp.kmap, dtype=np.int16)
    if k.shape != (s.n,) or (k < 0).any() or (k >= s.n).any():
        raise StructuralError("closure map out of range")
    rep = VerificationReport(subject="closure")
    labels, le = s.labels, s.poset.le
    z = s.zero()

    rep.record(
        "closure-idempotent",
        ({"a": labels[a]} for a in range(s.n) if k[k[a]] != k[a]),
    )
    rep.record(
        "closure-zero",
        [] if z is not None and k[z] == z else [{"zero": labels[z] if z is not None else None}],
    )
    rep.record(
        "closure-extensive",
        ({"a": labels[a]} for a in range(s.n) if not le[a, k[a]]),
    )
    jt = s.poset.join_table()
    join_viol = []
    for a in range(s.n):
        for b in range(a, s.n):
            j = int(jt[a, b])
            if j < 0:
                continue
            kk = int(jt[k[a], k[b]])
            if kk < 0 or kk != k[j]:
                join_viol.append({"a": labels[a], "b": labels[b]})
    rep.record("closure-join", join_viol)

    closed = sorted(int(a) for a in range(s.n) if k[a] == a)
    closed_set = set(closed)

    def difference(top: int, a: int) -> int | None:
        if companion is not None:
            d = int(companion.diff[top, a])
            return d if d >= 0 else None
        return relative_complement(s, a, top)

    opens, indeterminate = [], 0
    for a in range(s.n):
        is_open = True
        for c in closed:
            if not le[a, c]:
                continue
            d = difference(c, a)
            if d is None:
                indeterminate += 1
                continue
            if d not in closed_set:
                is_open = False
                break
        if is_open:
            opens.append(a)
    open_set = set(opens)

    mt = s.poset.meet_table()
    rep.record(
        "open-meet-open",
        (
            {"i1": labels[i1], "i2": labels[i2]}
            for i1 in opens
            for i2 in opens
            if i1 < i2 and mt[i1, i2] >= 0 and int(mt[i1, i2]) not in open_set
        ),
    )
    rep.record(
        "closed-meet-closed",
        (
            {"k1": labels[k1], "k2": labels[k2]}
            for k1 in closed
            for k2 in closed
            if k1 < k2 and mt[k1, k2] >= 0 and int(mt[k1, k2]) not in closed_set
        ),
    )
    rep.record(
        "closed-join-closed",
        (
            {"k1": labels[k1], "k2": labels[k2]}
            for k1 in closed
            for k2 in closed
            if k1 < k2 and jt[k1, k2] >= 0 and int(jt[k1, k2]) not in closed_set
        ),
    )

    up_viol = _upper_family_violations(s, opens)
    rep.record("open-upper-family", up_viol)

    interior, int_viol = [], []
    for a in range(s.n):
        below = [i for i in opens if le[i, a]]
        j = join_of(s.poset, below)
        interior.append(labels[j] if j is not None else None)
        if j is None:
            int_viol.append({"a": labels[a]})
    rep.record("interior-defined", int_viol)

    rep.facts["closed"] = [labels[c] for c in closed]
    rep.facts["open"] = [labels[i] for i in opens]
    rep.facts["interior"] = dict(zip(labels, interior))
    rep.facts["openness_indeterminate_pairs"] = indeterminate
    top = s.poset.greatest()
    if top is not None:
        duals = {difference(top, i) for i in opens}
        rep.facts["open_complements_are_closed"] = (
            None not in duals and duals == closed_set
        )
    return rep


def _upper_family_violations(s: Semilogic, fam: Sequence[int]) -> list[dict]:
    le, labels = s.poset.le, s.labels
    out = []
    for a in range(s.n):
        above = [i for i in fam if le[a, i]]
        if not above:
            out.append({"a": labels[a], "reason": "no member above"})
            continue
        for i1 in above:
            for i2 in above:
                if i1 > i2:
                    continue
                if not any(le[a, i] and le[i, i1] and le[i, i2] for i in fam):
                    out.append({"a": labels[a], "i1": labels[i1], "i2": labels[i2]})
    return out


def _lower_family_violations(s: Semilogic, fam: Sequence[int]) -> list[dict]:
    le, labels = s.poset.le, s.labels
    out = []
    for a in range(s.n):
        below = [x for x in fam if le[x, a]]
        if not below:
            out.append({"a": labels[a], "reason": "no member below"})
            continue
        for k1 in below:
            for k2 in below:
                if k1 > k2:
                    continue
                if not any(le[x, a] and le[k1, x] and le[k2, x] for x in fam):
                    out.append({"a": labels[a], "k1": labels[k1], "k2": labels[k2]})
    return out


def check_regularity(
    s: Semilogic,
    m: DistributionTable,
    upper: Sequence[int],
    lower: Sequence[int],
    companion: Quasilogic | None = None,
    tol: float = EXACT_TOL,
) -> VerificationReport:
    """m(a) must be reached from below by `lower` and from above by `upper`."""
    up_viol = _upper_family_violations(s, upper)
    if up_viol:
        raise DomainError("upper family axioms fail", which="upper", witness=up_viol[0])
    low_viol = _lower_family_violations(s, lower)
    if low_viol:
        raise DomainError("lower family axioms fail", which="lower", witness=low_viol[0])

    rep = VerificationReport(subject="regularity")
    vals, le, labels = m.values, s.poset.le, s.labels
    below_viol, above_viol = [], []
    for a in range(s.n):
        from_below = max(float(vals[x]) for x in lower if le[x, a])
        from_above = min(float(vals[i]) for i in upper if le[a, i])
        if abs(from_below - vals[a]) > tol:
            below_viol.append({"a": labels[a], "sup": from_below, "value": float(vals[a])})
        if abs(from_above - vals[a]) > tol:
            above_viol.append({"a": labels[a], "inf": from_above, "value": float(vals[a])})
    rep.record("regular-from-below", below_viol)
    rep.record("regular-from-above", above_viol)

    # opposite-family precondition: i - k stays in the upper family
    opp_ok, opp_witness = True, None
    for i in upper:
        for k in lower:
            if not le[k, i]:
                continue
            if companion is not None:
                d = int(companion.diff[i, k])
                d = d if d >= 0 else None
            else:
                d = relative_complement(s, k, i)
            if d is None or d not in set(upper):
                opp_ok = False
                opp_witness = {"i": labels[i], "k": labels[k]}
                break
        if not opp_ok:
            break
    rep.facts["opposite_families"] = opp_ok
    if opp_witness:
        rep.facts["opposite_families_witness"] = opp_witness
    return rep
