"""JSON formats for structures, operator measures and algebras.

Order files list `le` pairs (covers suffice; the reflexive-transitive
closure is taken at parse time), difference tables as [b, a, b-a] triples,
products as [a, b, ab] triples and complements as [a, ~a] pairs. Matrices
are flat row-major lists of [re, im] pairs, dim^2 of them.

ParseError marks input that does not describe a structure at all: bad JSON,
unknown labels, order cycles, conflicting duplicate entries. Structures that
parse but break axioms are left for the verifiers to report.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import numpy as np

from .boolean_rep import BooleanSemiring
from .errors import ParseError
from .gns import AlgebraState, ConcreteStarAlgebra
from .naimark import FinitePovm, povm_from_outcomes
from .order import FinitePoset, transitive_reduction
from .ortho import OrthoLogic
from .quasilogic import Quasilogic
from .semilogic import Semilogic

STRUCTURE_KINDS = ("poset", "quasilogic", "semilogic", "ortho_logic", "boolean_semiring")

Structure = FinitePoset | Quasilogic | Semilogic | OrthoLogic | BooleanSemiring


def _require(cond: bool, message: str, **details):
    if not cond:
        raise ParseError(message, **details)


def _labels(data: dict) -> tuple[list[str], dict[str, int]]:
    elements = data.get("elements")
    _require(isinstance(elements, list) and elements, "elements must be a nonempty list")
    _require(
        all(isinstance(e, str) and e for e in elements),
        "element labels must be nonempty strings",
    )
    dup = {e for e in elements if elements.count(e) > 1}
    _require(not dup, "duplicate element label", label=sorted(dup)[0] if dup else None)
    return list(elements), {e: i for i, e in enumerate(elements)}


def _lookup(idx: dict[str, int], label: Any, where: str) -> int:
    _require(isinstance(label, str), f"{where}: labels must be strings", got=repr(label))
    if label not in idx:
        raise ParseError(f"{where}: unknown label", label=label)
    return idx[label]


def _closed_order(labels: list[str], idx: dict[str, int], pairs: Any) -> np.ndarray:
    n = len(labels)
    _require(isinstance(pairs, list), "le must be a list of [below, above] pairs")
    le = np.eye(n, dtype=bool)
    for k, p in enumerate(pairs):
        _require(
            isinstance(p, list) and len(p) == 2, "le entries are [below, above] pairs", entry=k
        )
        le[_lookup(idx, p[0], "le"), _lookup(idx, p[1], "le")] = True
    while True:
        closed = le | (le @ le)
        if (closed == le).all():
            break
        le = closed
    cyc = le & le.T & ~np.eye(n, dtype=bool)
    if cyc.any():
        a, b = (int(x) for x in np.argwhere(cyc)[0])
        raise ParseError("order contains a cycle", between=[labels[a], labels[b]])
    return le


def _table_from_triples(
    idx: dict[str, int], triples: Any, where: str, symmetric: bool
) -> np.ndarray:
    n = len(idx)
    table = np.full((n, n), -1, dtype=np.int16)
    _require(isinstance(triples, list), f"{where} must be a list of triples")
    for k, t in enumerate(triples):
        _require(
            isinstance(t, list) and len(t) == 3, f"{where} entries are triples", entry=k
        )
        i, j, v = (_lookup(idx, x, where) for x in t)
        for a, b in ((i, j), (j, i)) if symmetric else ((i, j),):
            if table[a, b] >= 0 and table[a, b] != v:
                raise ParseError(
                    f"{where}: conflicting duplicate entries",
                    pair=[t[0], t[1]],
                    values=sorted({int(table[a, b]), v}),
                )
            table[a, b] = v
    return table


def _neg_from_pairs(idx: dict[str, int], pairs: Any) -> np.ndarray:
    n = len(idx)
    neg = np.full(n, -1, dtype=np.int16)
    _require(isinstance(pairs, list), "neg must be a list of [a, complement] pairs")
    for k, p in enumerate(pairs):
        _require(isinstance(p, list) and len(p) == 2, "neg entries are pairs", entry=k)
        a, na = _lookup(idx, p[0], "neg"), _lookup(idx, p[1], "neg")
        if neg[a] >= 0 and neg[a] != na:
            raise ParseError("neg: conflicting duplicate entries", label=p[0])
        neg[a] = na
    return neg


def parse_structure(data: Any) -> Structure:
    _require(isinstance(data, dict), "structure file must be a JSON object")
    kind = data.get("kind")
    _require(
        kind in STRUCTURE_KINDS,
        "unknown kind",
        kind=kind,
        expected=list(STRUCTURE_KINDS),
    )
    labels, idx = _labels(data)
    poset = FinitePoset(labels, _closed_order(labels, idx, data.get("le", [])))

    unit = data.get("unit")
    if unit is not None:
        u = _lookup(idx, unit, "unit")
        g = poset.greatest()
        if g != u:
            raise ParseError("declared unit is not the greatest element", unit=unit)

    if kind == "poset":
        return poset
    if kind == "quasilogic":
        diff = _table_from_triples(idx, data.get("diff", []), "diff", symmetric=False)
        return Quasilogic(poset, diff)
    if kind == "semilogic":
        prod = _table_from_triples(idx, data.get("prod", []), "prod", symmetric=True)
        return Semilogic(poset, prod)
    if kind == "ortho_logic":
        diff = _table_from_triples(idx, data.get("diff", []), "diff", symmetric=False)
        neg = _neg_from_pairs(idx, data.get("neg", []))
        return OrthoLogic(Quasilogic(poset, diff), neg)
    prod = _table_from_triples(idx, data.get("prod", []), "prod", symmetric=True)
    return BooleanSemiring(poset, prod)


def serialize_structure(obj: Structure) -> dict:
    if isinstance(obj, BooleanSemiring):
        kind = "boolean_semiring"
    elif isinstance(obj, OrthoLogic):
        kind = "ortho_logic"
    elif isinstance(obj, Semilogic):
        kind = "semilogic"
    elif isinstance(obj, Quasilogic):
        kind = "quasilogic"
    elif isinstance(obj, FinitePoset):
        kind = "poset"
    else:
        raise TypeError(f"not a serializable structure: {type(obj).__name__}")

    poset = obj if isinstance(obj, FinitePoset) else obj.poset
    labels = poset.labels
    out: dict[str, Any] = {
        "kind": kind,
        "elements": list(labels),
        "le": [[a, b] for a, b in transitive_reduction(poset)],
    }
    if isinstance(obj, (Quasilogic, OrthoLogic)):
        diff = obj.diff if isinstance(obj, Quasilogic) else obj.ql.diff
        out["diff"] = [
            [labels[b], labels[a], labels[int(diff[b, a])]]
            for b in range(poset.n)
            for a in range(poset.n)
            if diff[b, a] >= 0
        ]
    if isinstance(obj, Semilogic):
        out["prod"] = [
            [labels[a], labels[b], labels[int(obj.prod[a, b])]]
            for a in range(poset.n)
            for b in range(a, poset.n)
            if obj.prod[a, b] >= 0
        ]
    if isinstance(obj, OrthoLogic):
        out["neg"] = [[labels[a], labels[int(obj.neg[a])]] for a in range(poset.n)]
        out["unit"] = labels[obj.top]
    if isinstance(obj, BooleanSemiring) and obj.unit() is not None:
        out["unit"] = labels[obj.unit()]
    return out


def structures_equal(x: Structure, y: Structure) -> bool:
    """Same kind, labels and tables; the round-trip identity tests live on this."""
    if type(x) is not type(y):
        return False
    px = x if isinstance(x, FinitePoset) else x.poset
    py = y if isinstance(y, FinitePoset) else y.poset
    if px.labels != py.labels or not np.array_equal(px.le, py.le):
        return False
    if isinstance(x, Quasilogic) and not np.array_equal(x.diff, y.diff):
        return False
    if isinstance(x, Semilogic) and not np.array_equal(x.prod, y.prod):
        return False
    if isinstance(x, OrthoLogic) and not (
        np.array_equal(x.ql.diff, y.ql.diff) and np.array_equal(x.neg, y.neg)
    ):
        return False
    return True


# -- matrices -------------------------------------------------------------------


def matrix_from_json(entries: Any, dim: int, where: str) -> np.ndarray:
    _require(isinstance(entries, list), f"{where}: matrix must be a list of [re, im] pairs")
    _require(
        len(entries) == dim * dim,
        f"{where}: expected dim^2 entries",
        expected=dim * dim,
        got=len(entries),
    )
    flat = np.empty(dim * dim, dtype=np.complex128)
    for k, e in enumerate(entries):
        _require(
            isinstance(e, list)
            and len(e) == 2
            and all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in e),
            f"{where}: entries are [re, im] number pairs",
            entry=k,
        )
        flat[k] = complex(e[0], e[1])
    return flat.reshape(dim, dim)


def matrix_to_json(m: np.ndarray) -> list[list[float]]:
    return [[float(z.real), float(z.imag)] for z in np.asarray(m, dtype=np.complex128).reshape(-1)]


# -- operator measures ------------------------------------------------------------


def parse_povm(data: Any, base_dir: Path | None = None) -> FinitePovm:
    _require(isinstance(data, dict), "measure file must be a JSON object")
    _require(data.get("kind") == "povm", "kind must be 'povm'", kind=data.get("kind"))
    dim = data.get("dim")
    _require(isinstance(dim, int) and dim >= 1, "dim must be a positive integer")
    effects = data.get("effects")
    _require(isinstance(effects, dict), "effects must map labels to matrices")

    if "outcomes" in data:
        outcomes = data["outcomes"]
        _require(
            isinstance(outcomes, list) and outcomes and all(isinstance(o, str) for o in outcomes),
            "outcomes must be a nonempty list of labels",
        )
        _require(
            set(effects) == set(outcomes),
            "effects must cover exactly the outcomes",
            missing=sorted(set(outcomes) - set(effects)),
            extra=sorted(set(effects) - set(outcomes)),
        )
        atoms = [matrix_from_json(effects[o], dim, f"effects[{o}]") for o in outcomes]
        return povm_from_outcomes(atoms, dim)

    if "semiring" in data:
        semiring = parse_structure(data["semiring"])
    else:
        ref = data.get("semiring_file")
        _require(
            isinstance(ref, str),
            "measure needs outcomes, an inline semiring, or a semiring_file reference",
        )
        path = Path(ref)
        if base_dir is not None and not path.is_absolute():
            path = base_dir / path
        semiring = load_structure(path)
    _require(
        isinstance(semiring, BooleanSemiring),
        "semiring_file must contain a boolean_semiring",
        kind=type(semiring).__name__,
    )
    _require(
        set(effects) == set(semiring.labels),
        "effects must cover exactly the semiring elements",
        missing=sorted(set(semiring.labels) - set(effects)),
        extra=sorted(set(effects) - set(semiring.labels)),
    )
    mats = [matrix_from_json(effects[lab], dim, f"effects[{lab}]") for lab in semiring.labels]
    return FinitePovm(semiring, mats, dim)


def serialize_povm(povm: FinitePovm) -> dict:
    return {
        "kind": "povm",
        "dim": povm.dim,
        "semiring": serialize_structure(povm.semiring),
        "effects": {
            lab: matrix_to_json(e) for lab, e in zip(povm.semiring.labels, povm.effects)
        },
    }


def serialize_dilation(dil) -> dict:
    return {
        "kind": "dilation",
        "dim_h": dil.povm.dim,
        "dim_e": dil.dim_e,
        "embedding": matrix_to_json(dil.f),
        "projections": {
            lab: matrix_to_json(h)
            for lab, h in zip(dil.povm.semiring.labels, dil.images)
        },
    }


# -- algebras ----------------------------------------------------------------------


def parse_algebra(data: Any) -> tuple[ConcreteStarAlgebra, AlgebraState | None]:
    _require(isinstance(data, dict), "algebra file must be a JSON object")
    _require(
        data.get("kind") == "star_algebra", "kind must be 'star_algebra'", kind=data.get("kind")
    )
    dim = data.get("dim")
    _require(isinstance(dim, int) and dim >= 1, "dim must be a positive integer")
    basis = data.get("basis")
    _require(isinstance(basis, dict) and basis, "basis must map labels to matrices")
    labels = list(basis)
    mats = [matrix_from_json(basis[lab], dim, f"basis[{lab}]") for lab in labels]

    unit = data.get("unit")
    unit_idx = None
    if unit is not None:
        _require(unit in labels, "unit label not in basis", label=unit)
        unit_idx = labels.index(unit)
    idem = data.get("idempotents", [])
    _require(
        isinstance(idem, list) and all(isinstance(e, str) for e in idem),
        "idempotents must be a list of labels",
    )
    missing = [e for e in idem if e not in labels]
    _require(not missing, "idempotent label not in basis", labels=missing)
    alg = ConcreteStarAlgebra(
        mats, labels, unit=unit_idx, idempotents=[labels.index(e) for e in idem]
    )

    state = None
    if "state" in data:
        vals = data["state"]
        _require(
            isinstance(vals, list) and len(vals) == len(labels),
            "state must list one [re, im] value per basis element",
            expected=len(labels),
        )
        parsed = []
        for k, v in enumerate(vals):
            _require(
                isinstance(v, list) and len(v) == 2,
                "state values are [re, im] pairs",
                entry=k,
            )
            parsed.append(complex(v[0], v[1]))
        state = AlgebraState(np.array(parsed))
    return alg, state


def serialize_algebra(alg: ConcreteStarAlgebra, state: AlgebraState | None = None) -> dict:
    out: dict[str, Any] = {
        "kind": "star_algebra",
        "dim": alg.space_size,
        "basis": {lab: matrix_to_json(m) for lab, m in zip(alg.labels, alg.basis)},
        "idempotents": [alg.labels[e] for e in alg.idempotents],
    }
    if alg.unit is not None:
        out["unit"] = alg.labels[alg.unit]
    if state is not None:
        out["state"] = [[float(np.real(v)), float(np.imag(v))] for v in state.values]
    return out


# -- file loading -------------------------------------------------------------------


def _load_json(path: Path | str) -> Any:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError("cannot read file", path=str(path), error=str(exc))
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError("invalid JSON", path=str(path), error=str(exc))


def load_structure(path: Path | str) -> Structure:
    return parse_structure(_load_json(path))


def load_povm(path: Path | str) -> FinitePovm:
    path = Path(path)
    return parse_povm(_load_json(path), base_dir=path.parent)


def load_algebra(path: Path | str) -> tuple[ConcreteStarAlgebra, AlgebraState | None]:
    return parse_algebra(_load_json(path))
