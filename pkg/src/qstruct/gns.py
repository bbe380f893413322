"""States on concrete *-algebras and the cyclic representations they induce.

An algebra is handed over as a finite spanning family of matrices closed
under products and adjoints; a state is a linear functional on that family.
The induced representation lives on the quotient of the algebra by the
state's null space: the Gram matrix r(a_j a_k*) is factored, classes become
coordinate vectors, and right multiplication by the adjoint descends to the
quotient. All residuals are measured in operator or 2-norm against eps.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ConstructionError, DomainError
from .matrix_core import (
    Array,
    Tolerance,
    as_complex,
    eig_herm,
    op_norm,
    pseudo_inverse,
    rank_decomposition,
)
from .report import VerificationReport


class ConcreteStarAlgebra:
    """Matrices spanning a self-adjoint, product-closed subspace of M_m."""

    def __init__(
        self,
        basis: Sequence[Array],
        labels: Sequence[str] | None = None,
        unit: int | None = None,
        idempotents: Sequence[int] = (),
    ):
        self.basis = [as_complex(b) for b in basis]
        if not self.basis:
            raise DomainError("empty algebra basis")
        m = self.basis[0].shape[0]
        if any(b.shape != (m, m) for b in self.basis):
            raise DomainError("basis matrices live on different spaces")
        self.space_size = m
        self.n = len(self.basis)
        self.labels = list(labels) if labels else [f"a{j}" for j in range(self.n)]
        if len(self.labels) != self.n:
            raise DomainError("label count mismatch")
        self.unit = unit
        self.idempotents = list(idempotents)
        for e in self.idempotents:
            if not (0 <= e < self.n):
                raise DomainError("idempotent index out of range", index=e)
        self._stack = np.column_stack([b.reshape(-1) for b in self.basis])
        self._pinv_cache: dict[Tolerance, Array] = {}

    def _pinv(self, tol: Tolerance) -> Array:
        if tol not in self._pinv_cache:
            self._pinv_cache[tol] = pseudo_inverse(self._stack, tol)
        return self._pinv_cache[tol]

    def coords(self, x: Array, tol: Tolerance) -> np.ndarray:
        """Coefficients of x over the basis; x must lie in the span."""
        x = as_complex(x)
        v = x.reshape(-1)
        c = self._pinv(tol) @ v
        residual = float(np.linalg.norm(self._stack @ c - v))
        if residual > tol.eps * max(1.0, float(np.linalg.norm(v))):
            raise DomainError("element lies outside the algebra span", residual=residual)
        return c

    def span_rank(self, tol: Tolerance) -> int:
        w, _ = np.linalg.eigh(self._stack.conj().T @ self._stack)
        hi = float(w[-1]) if w.size else 0.0
        return int(np.count_nonzero(w > tol.rank_rel * max(hi, 0.0)))


@dataclass
class AlgebraState:
    """Linear functional, stored by its values on the basis."""

    values: np.ndarray

    @classmethod
    def from_density(cls, alg: ConcreteStarAlgebra, rho: Array) -> "AlgebraState":
        rho = as_complex(rho)
        return cls(np.array([np.trace(rho @ b) for b in alg.basis]))

    def of_coords(self, c: np.ndarray) -> complex:
        return complex(np.dot(self.values, c))


def state_value(alg: ConcreteStarAlgebra, state: AlgebraState, x: Array, tol: Tolerance) -> complex:
    return state.of_coords(alg.coords(x, tol))


def verify_algebra(alg: ConcreteStarAlgebra, tol: Tolerance) -> VerificationReport:
    rep = VerificationReport(subject="star-algebra")
    rep.record(
        "basis-independent",
        []
        if alg.span_rank(tol) == alg.n
        else [{"span_rank": alg.span_rank(tol), "basis_size": alg.n}],
    )

    prod_viol, star_viol = [], []
    for i, a in enumerate(alg.basis):
        try:
            alg.coords(a.conj().T, tol)
        except DomainError as exc:
            star_viol.append({"a": alg.labels[i]} | exc.details)
        for j, b in enumerate(alg.basis):
            try:
                alg.coords(a @ b, tol)
            except DomainError as exc:
                prod_viol.append({"a": alg.labels[i], "b": alg.labels[j]} | exc.details)
    rep.record("product-closed", prod_viol)
    rep.record("star-closed", star_viol)

    if alg.unit is not None:
        u = alg.basis[alg.unit]
        rep.record(
            "unit-neutral",
            (
                {"a": alg.labels[i], "defect": max(op_norm(u @ a - a), op_norm(a @ u - a))}
                for i, a in enumerate(alg.basis)
                if max(op_norm(u @ a - a), op_norm(a @ u - a)) > tol.eps
            ),
        )
    idem_viol = []
    for e in alg.idempotents:
        mat = alg.basis[e]
        h = op_norm(mat - mat.conj().T)
        p = op_norm(mat @ mat - mat)
        if h > tol.eps or p > tol.eps:
            idem_viol.append({"e": alg.labels[e], "hermitian": h, "idempotent": p})
    rep.record("declared-idempotents-valid", idem_viol)
    return rep


def gram_matrix(alg: ConcreteStarAlgebra, state: AlgebraState, tol: Tolerance) -> Array:
    """G[j][k] = r(a_j a_k*); positive semidefinite exactly when r is positive."""
    g = np.empty((alg.n, alg.n), dtype=np.complex128)
    for j, a in enumerate(alg.basis):
        for k, b in enumerate(alg.basis):
            g[j, k] = state.of_coords(alg.coords(a @ b.conj().T, tol))
    return g


def verify_state(
    alg: ConcreteStarAlgebra, state: AlgebraState, tol: Tolerance
) -> VerificationReport:
    rep = VerificationReport(subject="algebra-state")
    herm_viol = []
    for j, a in enumerate(alg.basis):
        lhs = state.of_coords(alg.coords(a.conj().T, tol))
        rhs = np.conj(state.values[j])
        if abs(lhs - rhs) > tol.eps:
            herm_viol.append({"a": alg.labels[j], "gap": abs(lhs - rhs)})
    rep.record("hermitian", herm_viol)

    g = gram_matrix(alg, state, tol)
    w, _ = eig_herm(g)
    lo, hi = float(w[0]), float(w[-1])
    rep.record(
        "positive",
        [] if lo >= -tol.eps * max(1.0, hi) else [{"min_eigenvalue": lo}],
    )
    if alg.unit is not None:
        uv = complex(state.values[alg.unit])
        rep.record(
            "normalized", [] if abs(uv - 1.0) <= tol.eps else [{"unit_value": [uv.real, uv.imag]}]
        )
    rep.facts["gram_rank"] = int(
        np.count_nonzero(w > tol.rank_rel * max(hi, 0.0))
    )
    return rep


@dataclass
class GnsRepresentation:
    algebra: ConcreteStarAlgebra
    state: AlgebraState
    tol: Tolerance
    w: Array          # quotient map on coordinates, shape (space_dim, n)
    w_pinv: Array
    space_dim: int
    kernel_dim: int
    xi: np.ndarray    # cyclic vector, the class of the seed idempotent
    seed: int         # basis index of the seed idempotent
    images: list[Array]  # representation of each basis element

    def transfer_matrix(self, b: Array) -> Array:
        """Action x -> x b* on coordinates, column per basis element."""
        alg = self.algebra
        bstar = as_complex(b).conj().T
        cols = np.column_stack([(a @ bstar).reshape(-1) for a in alg.basis])
        return alg._pinv(self.tol) @ cols

    def represent(self, b: Array) -> Array:
        return self.w @ self.transfer_matrix(b) @ self.w_pinv


def gns_construct(
    alg: ConcreteStarAlgebra, state: AlgebraState, tol: Tolerance
) -> GnsRepresentation:
    g = gram_matrix(alg, state, tol)
    # the standard dot on quotient vectors reproduces r(x y*) when the
    # conjugate Gram is the one factored
    d_e, v = rank_decomposition(np.conj(g), tol)
    w = v.conj().T
    w_pinv = pseudo_inverse(w, tol)

    seeds = list(alg.idempotents)
    if alg.unit is not None and alg.unit not in seeds:
        seeds.append(alg.unit)
    if not seeds:
        raise DomainError("no idempotent available to seed the cyclic vector")
    seed = max(seeds, key=lambda e: float(np.real(state.values[e])))

    rep = GnsRepresentation(
        algebra=alg,
        state=state,
        tol=tol,
        w=w,
        w_pinv=w_pinv,
        space_dim=d_e,
        kernel_dim=alg.span_rank(tol) - d_e,
        xi=np.zeros(d_e, dtype=np.complex128),
        seed=seed,
        images=[],
    )
    rep.xi = w @ alg.coords(alg.basis[seed], tol)
    rep.images = [rep.represent(a) for a in alg.basis]

    defect = op_norm(w @ rep.transfer_matrix(alg.basis[seed]) @ (np.eye(alg.n) - w_pinv @ w))
    if d_e == 0:
        raise ConstructionError("state annihilates the whole algebra")
    if defect > tol.eps * 10:
        raise ConstructionError(
            "quotient action does not preserve the null space", defect=defect
        )
    return rep


def verify_gns(rep_obj: GnsRepresentation, tol: Tolerance) -> VerificationReport:
    rep = VerificationReport(subject="gns-representation")
    alg, state = rep_obj.algebra, rep_obj.state
    w, w_pinv = rep_obj.w, rep_obj.w_pinv
    labels = alg.labels
    ker_proj = np.eye(alg.n) - w_pinv @ w

    rep.record(
        "kernel-invariant",
        (
            {"b": labels[j], "defect": op_norm(w @ rep_obj.transfer_matrix(b) @ ker_proj)}
            for j, b in enumerate(alg.basis)
            if op_norm(w @ rep_obj.transfer_matrix(b) @ ker_proj) > tol.eps
        ),
    )

    mult_viol, star_viol, recov_viol, sandwich_viol = [], [], [], []
    e1 = alg.basis[rep_obj.seed]
    for i, a in enumerate(alg.basis):
        pa = rep_obj.images[i]
        d_star = op_norm(rep_obj.represent(a.conj().T) - pa.conj().T)
        if d_star > tol.eps:
            star_viol.append({"a": labels[i], "defect": d_star})
        got = complex(np.vdot(pa @ rep_obj.xi, rep_obj.xi))
        want = complex(state.values[i])
        if abs(got - want) > tol.eps:
            recov_viol.append({"a": labels[i], "gap": abs(got - want)})
        sandwiched = state.of_coords(alg.coords(e1 @ a @ e1, tol))
        if abs(sandwiched - want) > tol.eps:
            sandwich_viol.append({"a": labels[i], "gap": abs(sandwiched - want)})
        for j, b in enumerate(alg.basis):
            d_mult = op_norm(rep_obj.represent(a @ b) - pa @ rep_obj.images[j])
            if d_mult > tol.eps:
                mult_viol.append({"a": labels[i], "b": labels[j], "defect": d_mult})
    rep.record("multiplicative", mult_viol)
    rep.record("star-preserved", star_viol)
    rep.record("state-recovered", recov_viol)
    rep.record("seed-sandwich-neutral", sandwich_viol)
    rep.record(
        "dimension-split",
        []
        if rep_obj.space_dim + rep_obj.kernel_dim == alg.span_rank(tol)
        else [
            {
                "space_dim": rep_obj.space_dim,
                "kernel_dim": rep_obj.kernel_dim,
                "span_rank": alg.span_rank(tol),
            }
        ],
    )
    rep.facts["space_dim"] = rep_obj.space_dim
    rep.facts["kernel_dim"] = rep_obj.kernel_dim
    rep.facts["seed"] = labels[rep_obj.seed]
    return rep


def schwartz_check(
    alg: ConcreteStarAlgebra,
    state: AlgebraState,
    samples: int = 1000,
    seed: int = 0,
    slack_tol: float = 1e-12,
    tol: Tolerance = Tolerance(),
) -> VerificationReport:
    """|r(b a*)|^2 <= r(b b*) r(a a*) over random coefficient pairs.

    Coefficient vectors are drawn complex Gaussian and normalized, keeping
    every term O(1) so the slack comparison against 1e-12 is meaningful.
    """
    rep = VerificationReport(subject="schwartz")
    g = np.conj(gram_matrix(alg, state, tol))  # r(x y*) = d_y^H (conj G) c_x
    rng = np.random.default_rng(seed)
    shape = (alg.n, samples)
    c = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    d = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    c /= np.linalg.norm(c, axis=0, keepdims=True)
    d /= np.linalg.norm(d, axis=0, keepdims=True)

    cross = np.einsum("jn,jk,kn->n", np.conj(d), g, c)
    aa = np.real(np.einsum("jn,jk,kn->n", np.conj(c), g, c))
    bb = np.real(np.einsum("jn,jk,kn->n", np.conj(d), g, d))
    slack = bb * aa - np.abs(cross) ** 2
    worst = float(slack.min()) if samples else 0.0
    rep.record(
        "schwartz-inequality",
        [] if worst >= -slack_tol else [{"min_slack": worst}],
    )
    rep.facts["min_slack"] = worst
    rep.facts["samples"] = samples
    return rep


def observable_norm(
    alg: ConcreteStarAlgebra, a: Array, e_index: int, tol: Tolerance
) -> float:
    """Largest |eigenvalue| of a compressed to the range of its support e.

    Requires e among the declared idempotents and e a e = a.
    """
    if e_index not in alg.idempotents and e_index != alg.unit:
        raise DomainError("support index is not a declared idempotent", index=e_index)
    a = as_complex(a)
    e = alg.basis[e_index]
    if op_norm(a - a.conj().T) > tol.eps:
        raise DomainError("observable must be self-adjoint")
    if op_norm(e @ a @ e - a) > tol.eps:
        raise DomainError("observable is not supported by the idempotent")
    w, u = eig_herm(e)
    cols = np.flatnonzero(np.abs(w - 1.0) <= 0.5)
    q = u[:, cols]
    m = q.conj().T @ a @ q
    vals, _ = eig_herm(m)
    return float(np.max(np.abs(vals))) if vals.size else 0.0


def positive_parts(
    alg: ConcreteStarAlgebra, a: Array, e_index: int, tol: Tolerance
) -> tuple[Array, Array, VerificationReport]:
    """Split a = a+ - a- with a+- = ((a +- e)/2)^2, positive and e-supported."""
    a = as_complex(a)
    e = alg.basis[e_index]
    if op_norm(a - a.conj().T) > tol.eps:
        raise DomainError("element must be self-adjoint")
    if op_norm(e @ a - a) > tol.eps or op_norm(a @ e - a) > tol.eps:
        raise DomainError("element is not two-sided supported by the idempotent")
    plus = 0.25 * ((a + e) @ (a + e))
    minus = 0.25 * ((a - e) @ (a - e))
    rep = VerificationReport(subject="positive-parts")
    rep.record(
        "difference-recovers",
        []
        if op_norm(plus - minus - a) <= tol.eps
        else [{"defect": op_norm(plus - minus - a)}],
    )
    pos_viol = []
    for name, part in (("plus", plus), ("minus", minus)):
        wv, _ = eig_herm(part)
        if float(wv[0]) < -tol.eps:
            pos_viol.append({"part": name, "min_eigenvalue": float(wv[0])})
    rep.record("parts-positive", pos_viol)
    rep.record(
        "parts-supported",
        (
            {"part": name, "defect": op_norm(e @ part @ e - part)}
            for name, part in (("plus", plus), ("minus", minus))
            if op_norm(e @ part @ e - part) > tol.eps
        ),
    )
    return plus, minus, rep
