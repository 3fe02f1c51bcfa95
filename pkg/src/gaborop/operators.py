"""Bounded linear operators on a matrix-signal space.

Two representations are supported:

* ``entry_map``: an n^2 x n^2 matrix L applied to the row-major vectorised
  matrix value at every group point (the same L at each point);
* ``dense``: a full (|G| n^2) x (|G| n^2) matrix on the flattened space.

Flattened coordinates carry a sqrt(w) scale so that the Euclidean inner
product equals the trace inner product; adjoints with respect to the trace
pairing are therefore plain conjugate transposes in either representation.

Finite-dimensionality note: a hyponormal operator on a finite-dimensional
space is automatically normal (the self-commutator is PSD with zero trace,
hence zero).  The hyponormality checker still performs the PSD test on
adjoint(T) @ T - T @ adjoint(T); genuinely hyponormal-but-not-normal
operators require an infinite-dimensional space and cannot occur here.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .groups import GroupMismatchError
from .signals import MatrixSignal, SignalSpace

__all__ = [
    "SpaceOperator",
    "OperatorDiagnostics",
    "adjoint",
    "compose",
    "commutes",
    "operator_norm",
    "lower_bound_constant",
    "is_hyponormal",
    "is_mv_adjointable",
    "is_hyponormal_on_range",
    "diagnostics",
    "DEFAULT_TOL",
]

DEFAULT_TOL = 1e-9


class SpaceOperator:
    """Linear operator on the matrix-signal space over a fixed group."""

    __slots__ = ("space", "kind", "entry_matrix", "dense_matrix")

    def __init__(self, space: SignalSpace, *, entry_matrix=None, dense_matrix=None):
        if (entry_matrix is None) == (dense_matrix is None):
            raise ValueError("provide exactly one of entry_matrix, dense_matrix")
        self.space = space
        n2 = space.n * space.n
        if entry_matrix is not None:
            arr = np.asarray(entry_matrix, dtype=np.complex128)
            if arr.shape != (n2, n2):
                raise ValueError(f"entry map must be {n2}x{n2}, got {arr.shape}")
            self.kind = "entry_map"
            self.entry_matrix = arr.copy()
            self.entry_matrix.flags.writeable = False
            self.dense_matrix = None
        else:
            arr = np.asarray(dense_matrix, dtype=np.complex128)
            if arr.shape != (space.dim, space.dim):
                raise ValueError(f"dense matrix must be {space.dim}x{space.dim}, got {arr.shape}")
            self.kind = "dense"
            self.entry_matrix = None
            self.dense_matrix = arr.copy()
            self.dense_matrix.flags.writeable = False

    # ---- constructors -------------------------------------------------

    @classmethod
    def from_entry_map(cls, space: SignalSpace, matrix) -> "SpaceOperator":
        return cls(space, entry_matrix=matrix)

    @classmethod
    def from_dense(cls, space: SignalSpace, matrix) -> "SpaceOperator":
        return cls(space, dense_matrix=matrix)

    @classmethod
    def identity(cls, space: SignalSpace) -> "SpaceOperator":
        return cls(space, entry_matrix=np.eye(space.n * space.n))

    @classmethod
    def zero(cls, space: SignalSpace) -> "SpaceOperator":
        return cls(space, entry_matrix=np.zeros((space.n * space.n,) * 2))

    @classmethod
    def right_multiplication(cls, space: SignalSpace, matrix) -> "SpaceOperator":
        """Pointwise f(x) -> f(x) @ M; always adjointable for the matrix pairing."""
        m = np.asarray(matrix, dtype=np.complex128)
        return cls(space, entry_matrix=np.kron(np.eye(space.n), m.T))

    # ---- core actions --------------------------------------------------

    def apply(self, f: MatrixSignal) -> MatrixSignal:
        if f.space != self.space or f.dual:
            raise GroupMismatchError("signal does not live in this operator's space")
        n = self.space.n
        if self.kind == "entry_map":
            flat_vals = f.values.reshape(f.values.shape[0], n * n)
            out = flat_vals @ self.entry_matrix.T
            return MatrixSignal(self.space, out.reshape(f.values.shape))
        return MatrixSignal.from_flat(self.space, self.dense_matrix @ f.flatten())

    def __call__(self, f: MatrixSignal) -> MatrixSignal:
        return self.apply(f)

    def to_dense(self) -> np.ndarray:
        """Matrix of the operator in flattened coordinates."""
        if self.kind == "dense":
            return self.dense_matrix
        return np.kron(np.eye(self.space.group.order), self.entry_matrix)

    def adjoint(self) -> "SpaceOperator":
        """Adjoint with respect to the trace inner product."""
        if self.kind == "entry_map":
            return SpaceOperator(self.space, entry_matrix=self.entry_matrix.conj().T)
        return SpaceOperator(self.space, dense_matrix=self.dense_matrix.conj().T)

    def _rep(self) -> np.ndarray:
        """Smallest matrix carrying the spectral data (entry map or dense)."""
        return self.entry_matrix if self.kind == "entry_map" else self.dense_matrix

    def __repr__(self):
        return f"<{self.kind} operator on {self.space.n}x{self.space.n} signals over {self.space.group!r}>"


def adjoint(op: SpaceOperator) -> SpaceOperator:
    return op.adjoint()


def compose(outer: SpaceOperator, inner: SpaceOperator) -> SpaceOperator:
    """The operator f -> outer(inner(f))."""
    if outer.space != inner.space:
        raise GroupMismatchError("operators act on different spaces")
    if outer.kind == "entry_map" and inner.kind == "entry_map":
        return SpaceOperator(outer.space, entry_matrix=outer.entry_matrix @ inner.entry_matrix)
    return SpaceOperator(outer.space, dense_matrix=outer.to_dense() @ inner.to_dense())


def commutes(a: SpaceOperator, b: SpaceOperator, tol: float = DEFAULT_TOL) -> bool:
    """Whether ||ab - ba|| <= tol in operator norm."""
    if a.space != b.space:
        raise GroupMismatchError("operators act on different spaces")
    if a.kind == b.kind == "entry_map":
        am, bm = a.entry_matrix, b.entry_matrix
    else:
        am, bm = a.to_dense(), b.to_dense()
    return float(np.linalg.norm(am @ bm - bm @ am, ord=2)) <= tol


def operator_norm(op: SpaceOperator) -> float:
    """Largest singular value (the entry map and its dense expansion agree)."""
    return float(np.linalg.norm(op._rep(), ord=2))


def lower_bound_constant(op: SpaceOperator) -> float:
    """Smallest singular value: the best m with ||T f|| >= m ||f||."""
    sv = np.linalg.svd(op._rep(), compute_uv=False)
    return float(sv[-1]) if sv.size else 0.0


def _self_commutator(op: SpaceOperator) -> np.ndarray:
    m = op._rep()
    return m.conj().T @ m - m @ m.conj().T


def is_hyponormal(op: SpaceOperator, tol: float = DEFAULT_TOL) -> tuple[bool, float]:
    """PSD test on adjoint(T) T - T adjoint(T); returns (flag, min eigenvalue).

    Equivalent to ||adjoint(T) f|| <= ||T f|| for every signal.
    """
    min_eig = float(np.linalg.eigvalsh(_self_commutator(op))[0])
    return min_eig >= -tol, min_eig


def is_normal(op: SpaceOperator, tol: float = DEFAULT_TOL) -> bool:
    """Self-commutator vanishes; in this finite setting equals hyponormality."""
    return float(np.linalg.norm(_self_commutator(op), ord=2)) <= tol


def is_hyponormal_on_range(op: SpaceOperator, range_of: SpaceOperator,
                           tol: float = DEFAULT_TOL) -> tuple[bool, float]:
    """Hyponormality of ``op`` compressed to the range of ``range_of``.

    Implemented as the PSD test on Q^* (T^*T - TT^*) Q where the columns of
    Q span Ran(range_of).  The restriction-to-an-invariant-subspace reading
    is not used; this compression is the documented interpretation.
    """
    m = range_of.to_dense()
    u, s, _ = np.linalg.svd(m)
    cutoff = (s[0] * 1e-9) if s.size and s[0] > 0 else np.inf
    q = u[:, s > cutoff]
    if q.shape[1] == 0:
        return True, 0.0  # zero range: nothing to violate
    k = op.to_dense()
    comm = k.conj().T @ k - k @ k.conj().T
    restricted = q.conj().T @ comm @ q
    min_eig = float(np.linalg.eigvalsh(restricted)[0])
    return min_eig >= -tol, min_eig


def _entry_apply(L: np.ndarray, a: np.ndarray) -> np.ndarray:
    n = a.shape[0]
    return (L @ a.reshape(-1)).reshape(n, n)


def is_mv_adjointable(op: SpaceOperator, tol: float = DEFAULT_TOL) -> bool:
    """Whether the trace adjoint also serves as a matrix-pairing adjoint.

    Checks mv_inner(T e_i, e_j) == mv_inner(e_i, adjoint(T) e_j) over the
    basis of matrix units at single group points; by sesquilinearity this
    settles the identity for all signals.
    """
    n = op.space.n
    if op.kind == "entry_map":
        L = op.entry_matrix
        Ls = L.conj().T
        scale = max(1.0, float(np.abs(L).max()))
        for a in range(n):
            for b in range(n):
                ea = np.zeros((n, n), dtype=np.complex128)
                ea[a, b] = 1.0
                ta = _entry_apply(L, ea)
                for c in range(n):
                    for d in range(n):
                        eb = np.zeros((n, n), dtype=np.complex128)
                        eb[c, d] = 1.0
                        lhs = ta @ eb.conj().T
                        rhs = ea @ _entry_apply(Ls, eb).conj().T
                        if np.abs(lhs - rhs).max() > tol * scale:
                            return False
        return True
    return _dense_mv_adjointable(op, tol)


def _dense_mv_adjointable(op: SpaceOperator, tol: float) -> bool:
    # Condition in index form, derived from mv_inner on the point-mass basis:
    # M six-indexed as M6[z,p,d,y,a,b] must satisfy
    #   M6[z,p,d,y,a,b] * delta(q,c) == M6[z,c,d,y,q,b] * delta(p,a)
    # for all indices; checked blockwise per source point z.
    g = op.space.group.order
    n = op.space.n
    m6 = op.to_dense().reshape(g, n, n, g, n, n)
    eye = np.eye(n)
    scale = max(1.0, float(np.abs(m6).max()))
    for z in range(g):
        blk = m6[z]  # [p, d, y, a, b]
        lhs = np.einsum("pdyab,qc->pdyabqc", blk, eye)
        rhs = np.einsum("cdyqb,pa->pdyabqc", blk, eye)
        if np.abs(lhs - rhs).max() > tol * scale:
            return False
    return True


@dataclass(frozen=True)
class OperatorDiagnostics:
    """Spectral and structural facts about one operator."""

    operator_norm: float
    lower_bound: float
    is_hyponormal: bool
    is_mv_adjointable: bool
    self_commutator_min_eig: float

    def to_json_dict(self) -> dict:
        return {
            "operator_norm": self.operator_norm,
            "lower_bound": self.lower_bound,
            "is_hyponormal": self.is_hyponormal,
            "is_mv_adjointable": self.is_mv_adjointable,
            "self_commutator_min_eig": self.self_commutator_min_eig,
        }


def diagnostics(op: SpaceOperator, tol: float = DEFAULT_TOL) -> OperatorDiagnostics:
    hypo, min_eig = is_hyponormal(op, tol)
    return OperatorDiagnostics(
        operator_norm=operator_norm(op),
        lower_bound=lower_bound_constant(op),
        is_hyponormal=hypo,
        is_mv_adjointable=is_mv_adjointable(op, tol),
        self_commutator_min_eig=min_eig,
    )
