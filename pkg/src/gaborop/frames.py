"""Gabor systems on matrix-signal spaces and their frame bounds.

A Gabor system is generated from window signals by translations over a
lattice (composed with an automorphism) and modulations over a dual lattice
(composed with a dual automorphism), enumerated in deterministic
(window, translation, modulation) lexicographic order.  Families that are
not lattice-generated (images under operators) share all the analysis,
synthesis and bound machinery through :class:`VectorFamily`.

Ordinary bounds are the extreme eigenvalues of the frame operator.  The
operator-controlled two-sided bounds

    alpha * ||adjoint(T) f||^2  <=  sum of squared coefficient norms
                                <=  beta * ||T f||^2

are computed as extremal feasible constants of Hermitian pencils: bisection
is the reporting route and the pseudoinverse/Schur oracle is carried along
as a cross-check (see :mod:`gaborop.pencil`).  Existence is decided by
kernel inclusion: a finite upper constant exists iff ker T <= ker S, a
positive lower constant iff ker S <= ker(adjoint T).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .groups import Automorphism, GroupMismatchError, Subgroup
from .operators import (
    DEFAULT_TOL,
    SpaceOperator,
    lower_bound_constant,
    operator_norm,
)
from .pencil import (
    alpha_pinv_oracle,
    beta_pinv_oracle,
    bisect_max_alpha,
    bisect_min_beta,
    kernel_contained,
)
from .signals import MatrixSignal, SignalSpace, modulate, translate

__all__ = [
    "GaborSystem",
    "VectorFamily",
    "CoefficientSequence",
    "BoundsReport",
    "PromotionResult",
    "analysis",
    "synthesis",
    "analysis_matrix",
    "frame_operator",
    "ordinary_bounds",
    "theta_bounds",
    "bounded_below_promotion",
]


class VectorFamily:
    """A finite family of matrix signals sharing one space.

    ``labels`` names each member (for Gabor systems the (l, k, m) triple);
    members are kept in a fixed order so coefficient layouts are
    reproducible.
    """

    def __init__(self, space: SignalSpace, members: Sequence[MatrixSignal],
                 labels: Optional[Sequence] = None):
        for f in members:
            if f.space != space or f.dual:
                raise GroupMismatchError("family member does not live in the given space")
        self.space = space
        self.members = tuple(members)
        self.labels = tuple(labels) if labels is not None else tuple(range(len(members)))
        if len(self.labels) != len(self.members):
            raise ValueError("labels and members differ in length")
        self._stack = (
            np.stack([f.values for f in members])
            if members
            else np.zeros((0, space.group.order, space.n, space.n), dtype=np.complex128)
        )

    def __len__(self):
        return len(self.members)

    def transformed(self, op: SpaceOperator) -> "VectorFamily":
        """The family of images under ``op`` (labels preserved)."""
        return VectorFamily(self.space, [op.apply(f) for f in self.members], self.labels)

    def __repr__(self):
        return f"<family of {len(self)} signals on {self.space.group!r}, n={self.space.n}>"


@dataclass(frozen=True)
class GaborSystem:
    """Windows plus lattices and automorphisms generating a Gabor family."""

    space: SignalSpace
    windows: tuple[MatrixSignal, ...]
    lattice: Subgroup
    dual_lattice: Subgroup
    automorphism: Automorphism | None = None
    dual_automorphism: Automorphism | None = None

    def __post_init__(self):
        for w in self.windows:
            if w.space != self.space or w.dual:
                raise GroupMismatchError("window does not live in the system's space")
        if self.lattice.group != self.space.group or self.lattice.dual:
            raise GroupMismatchError("lattice must be a primal subgroup of the group")
        if self.dual_lattice.group != self.space.group or not self.dual_lattice.dual:
            raise GroupMismatchError("dual lattice must be a dual-side subgroup")
        auto = self.automorphism or Automorphism.identity(self.space.group)
        dauto = self.dual_automorphism or Automorphism.identity(self.space.group, dual=True)
        if auto.dual or not dauto.dual:
            raise GroupMismatchError("automorphism sides are swapped")
        object.__setattr__(self, "automorphism", auto)
        object.__setattr__(self, "dual_automorphism", dauto)

    def family(self) -> VectorFamily:
        """All modulated translates, in (window, translation, modulation) order."""
        members, labels = [], []
        for l, w in enumerate(self.windows):
            for k in self.lattice:
                shifted = translate(w, self.automorphism(k))
                for m in self.dual_lattice:
                    members.append(modulate(shifted, self.dual_automorphism(m)))
                    labels.append((l, k.coords, m.coords))
        return VectorFamily(self.space, members, labels)

    def with_windows(self, windows: Sequence[MatrixSignal]) -> "GaborSystem":
        return GaborSystem(
            self.space, tuple(windows), self.lattice, self.dual_lattice,
            self.automorphism, self.dual_automorphism,
        )


def _as_family(obj) -> VectorFamily:
    return obj.family() if isinstance(obj, GaborSystem) else obj


@dataclass(frozen=True)
class CoefficientSequence:
    """Family-indexed n x n coefficient matrices with the Frobenius-sum norm."""

    labels: tuple
    array: np.ndarray  # shape (len(family), n, n)

    def norm_squared(self) -> float:
        return float(np.sum(np.abs(self.array) ** 2))

    def flat(self) -> np.ndarray:
        return self.array.reshape(-1)

    def __getitem__(self, label):
        return self.array[self.labels.index(label)]

    @classmethod
    def zeros_like(cls, family: VectorFamily) -> "CoefficientSequence":
        n = family.space.n
        return cls(family.labels, np.zeros((len(family), n, n), dtype=np.complex128))


def analysis(system, f: MatrixSignal) -> CoefficientSequence:
    """Coefficient map: one matrix pairing against every family member."""
    family = _as_family(system)
    if f.space != family.space or f.dual:
        raise GroupMismatchError("signal does not match the system's space")
    w = family.space.weight()
    coeffs = w * np.einsum("xir,mxjr->mij", f.values, np.conj(family._stack))
    return CoefficientSequence(family.labels, coeffs)


def synthesis(system, coeffs: CoefficientSequence) -> MatrixSignal:
    """Adjoint of analysis: sum of coefficient matrices times members."""
    family = _as_family(system)
    if coeffs.labels != family.labels:
        raise ValueError("coefficient index set does not match the family")
    values = np.einsum("mij,mxjk->xik", coeffs.array, family._stack)
    return MatrixSignal(family.space, values)


def analysis_matrix(system) -> np.ndarray:
    """Flattened analysis operator, shape (len(family) * n^2, |G| * n^2).

    Rows are ordered (member, coefficient entry row-major); columns follow
    the flattened signal layout.  The frame operator equals A^H A.
    """
    family = _as_family(system)
    n = family.space.n
    w = family.space.weight()
    conj_stack = np.sqrt(w) * np.conj(family._stack)  # (m, x, j, r)
    a = np.einsum("ip,mxjr->mijxpr", np.eye(n), conj_stack)
    return a.reshape(len(family) * n * n, family.space.dim)


def frame_operator(system, as_operator: bool = True):
    """The PSD frame operator on the flattened space (synthesis o analysis)."""
    family = _as_family(system)
    a = analysis_matrix(family)
    s = a.conj().T @ a
    if not as_operator:
        return s
    return SpaceOperator.from_dense(family.space, s)


@dataclass
class BoundsReport:
    """Existence flags and extremal constants of a frame inequality."""

    lower_exists: bool
    upper_exists: bool
    alpha_opt: Optional[float]
    beta_opt: Optional[float]
    tight: bool
    tolerance: float
    spectra: dict = field(default_factory=dict)
    cross_check: dict = field(default_factory=dict)
    spectrum_file: Optional[str] = None

    def to_json_dict(self) -> dict:
        return {
            "lower_exists": self.lower_exists,
            "upper_exists": self.upper_exists,
            "alpha_opt": self.alpha_opt,
            "beta_opt": self.beta_opt,
            "tight": self.tight,
            "tolerances": {"existence": self.tolerance, "kernel_rtol": 1e-9},
            "cross_check": self.cross_check,
            "spectrum_file": self.spectrum_file,
        }


def _tightness(alpha: Optional[float], beta: Optional[float], tol: float) -> bool:
    if alpha is None or beta is None:
        return False
    return abs(beta - alpha) <= tol * max(1.0, abs(beta))


def ordinary_bounds(system, tol: float = DEFAULT_TOL) -> BoundsReport:
    """Extreme eigenvalues of the frame operator; frame iff the least one is positive."""
    s = frame_operator(system, as_operator=False)
    eigs = np.linalg.eigvalsh((s + s.conj().T) / 2.0)
    alpha = float(eigs[0])
    beta = float(eigs[-1])
    lower = alpha > tol
    return BoundsReport(
        lower_exists=lower,
        upper_exists=True,
        alpha_opt=alpha,
        beta_opt=beta,
        tight=lower and _tightness(alpha, beta, tol),
        tolerance=tol,
        spectra={"frame_operator": eigs.tolist()},
    )


def theta_bounds(system, theta: SpaceOperator, tol: float = DEFAULT_TOL) -> BoundsReport:
    """Extremal constants of the operator-controlled two-sided inequality.

    The reported constants come from pencil bisection; the closed-form
    pseudoinverse/Schur values are recorded under ``cross_check``.
    """
    family = _as_family(system)
    if theta.space != family.space:
        raise GroupMismatchError("operator does not act on the system's space")
    s = frame_operator(family, as_operator=False)
    t = theta.to_dense()
    gram_lower = t @ t.conj().T          # controls the lower side
    gram_upper = t.conj().T @ t          # controls the upper side

    upper_exists = kernel_contained(gram_upper, s, tol)
    lower_exists = kernel_contained(s, gram_lower, tol)

    alpha = beta = None
    cross: dict = {}
    # a vanishing adjoint gram makes the lower inequality vacuous: any alpha
    # works, so no finite extremal constant is reported
    if lower_exists and float(np.abs(gram_lower).max()) > tol:
        alpha = bisect_max_alpha(s, gram_lower)
        cross["alpha_pinv"] = alpha_pinv_oracle(s, gram_lower)
    if upper_exists:
        if float(np.abs(s).max()) <= tol:
            beta = 0.0
            cross["beta_pinv"] = 0.0
        else:
            beta = bisect_min_beta(s, gram_upper)
            cross["beta_pinv"] = beta_pinv_oracle(s, gram_upper)

    eigs = np.linalg.eigvalsh((s + s.conj().T) / 2.0)
    return BoundsReport(
        lower_exists=lower_exists,
        upper_exists=upper_exists,
        alpha_opt=alpha,
        beta_opt=beta,
        tight=lower_exists and upper_exists and _tightness(alpha, beta, tol),
        tolerance=tol,
        spectra={
            "frame_operator": eigs.tolist(),
            "lower_gram": np.linalg.eigvalsh(gram_lower).tolist(),
            "upper_gram": np.linalg.eigvalsh(gram_upper).tolist(),
        },
        cross_check=cross,
    )


@dataclass(frozen=True)
class PromotionResult:
    """Bounds predicted for a frame under a bounded-below operator."""

    hypothesis_ok: bool
    reason: str
    predicted_lower: Optional[float] = None
    predicted_upper: Optional[float] = None
    lower_valid: Optional[bool] = None
    upper_valid: Optional[bool] = None
    ordinary: Optional[BoundsReport] = None
    controlled: Optional[BoundsReport] = None

    def to_json_dict(self) -> dict:
        return {
            "hypothesis_ok": self.hypothesis_ok,
            "reason": self.reason,
            "predicted_lower": self.predicted_lower,
            "predicted_upper": self.predicted_upper,
            "lower_valid": self.lower_valid,
            "upper_valid": self.upper_valid,
            "ordinary": self.ordinary.to_json_dict() if self.ordinary else None,
            "controlled": self.controlled.to_json_dict() if self.controlled else None,
        }


def bounded_below_promotion(system, theta: SpaceOperator,
                            tol: float = DEFAULT_TOL) -> PromotionResult:
    """Predicted operator-controlled bounds for an ordinary frame.

    For a frame with bounds (gamma, delta) and an operator bounded below by
    sigma, (gamma / ||adjoint(T)||^2, delta / sigma^2) are valid controlled
    bounds; both predictions are checked against the computed extremal ones.
    """
    sigma = lower_bound_constant(theta)
    if sigma <= tol:
        return PromotionResult(False, "operator is not bounded below")
    ordinary = ordinary_bounds(system, tol)
    if not ordinary.lower_exists:
        return PromotionResult(False, "system is not an ordinary frame", ordinary=ordinary)
    adj_norm = operator_norm(theta.adjoint())
    predicted_lower = ordinary.alpha_opt / (adj_norm * adj_norm)
    predicted_upper = ordinary.beta_opt / (sigma * sigma)
    controlled = theta_bounds(system, theta, tol)
    cmp_tol = tol * max(1.0, predicted_upper)
    lower_valid = controlled.lower_exists and predicted_lower <= controlled.alpha_opt + cmp_tol
    upper_valid = controlled.upper_exists and predicted_upper >= controlled.beta_opt - cmp_tol
    return PromotionResult(
        True,
        "ok",
        predicted_lower=predicted_lower,
        predicted_upper=predicted_upper,
        lower_valid=lower_valid,
        upper_valid=upper_valid,
        ordinary=ordinary,
        controlled=controlled,
    )
