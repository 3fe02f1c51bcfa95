"""Stability of operator-controlled Gabor frames under window perturbation.

Two stability statements are covered:

* window perturbation: if the difference system is dominated by a
  combination of the source frame sum and the two operator grams
  (an operator inequality, checked as a single PSD condition), the perturbed
  system is again an operator-controlled frame with explicit bounds;
* window sums: if two systems are controlled frames and the source's lower
  bound beats the second system's upper bound by the operator's condition
  ratio, the window-sum system is a controlled frame with explicit bounds.

Predicted bounds are always re-validated against the computed extremal
constants of the perturbed (or summed) system.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .frames import BoundsReport, GaborSystem, frame_operator, theta_bounds
from .groups import GroupMismatchError
from .operators import DEFAULT_TOL, SpaceOperator, lower_bound_constant, operator_norm

__all__ = [
    "PertHypothesis",
    "PertCheck",
    "PertPrediction",
    "check_pert_hypothesis",
    "pert_predicted_bounds",
    "verify_perturbation",
    "SumCheck",
    "check_sum_hypothesis",
    "sum_predicted_bounds",
    "verify_sum",
]


@dataclass(frozen=True)
class PertHypothesis:
    """Constants entering the window-perturbation stability statement."""

    lam: float
    mu: float
    eta: float
    gamma_o: float
    delta_o: float
    m_o: float
    theta_norm: float

    def __post_init__(self):
        if min(self.lam, self.mu, self.eta) < 0:
            raise ValueError("lambda, mu, eta must be nonnegative")

    def ratio_ok(self) -> bool:
        """((1 - 2 lam) gamma - 2 mu) / (2 eta) must exceed ||T||^2 / m^2.

        With eta == 0 the quotient degenerates; the limit condition
        (1 - 2 lam) gamma - 2 mu > 0 is used instead (a documented extension
        of the stated hypothesis).
        """
        lhs = (1.0 - 2.0 * self.lam) * self.gamma_o - 2.0 * self.mu
        if self.eta == 0.0:
            return lhs > 0.0
        return lhs / (2.0 * self.eta) > (self.theta_norm / self.m_o) ** 2

    def ratio_margin(self) -> float:
        lhs = (1.0 - 2.0 * self.lam) * self.gamma_o - 2.0 * self.mu
        if self.eta == 0.0:
            return lhs
        return lhs / (2.0 * self.eta) - (self.theta_norm / self.m_o) ** 2


@dataclass
class PertCheck:
    """Outcome of the three perturbation hypotheses for a concrete pair."""

    hypothesis: Optional[PertHypothesis]
    bounded_below_ok: bool
    ratio_ok: bool
    difference_ok: bool
    difference_margin: Optional[float]
    holds: bool
    bounds_source: str

    def to_json_dict(self) -> dict:
        return {
            "bounded_below_ok": self.bounded_below_ok,
            "ratio_ok": self.ratio_ok,
            "difference_ok": self.difference_ok,
            "difference_margin": self.difference_margin,
            "holds": self.holds,
            "bounds_source": self.bounds_source,
            "constants": None
            if self.hypothesis is None
            else {
                "lambda": self.hypothesis.lam,
                "mu": self.hypothesis.mu,
                "eta": self.hypothesis.eta,
                "gamma_o": self.hypothesis.gamma_o,
                "delta_o": self.hypothesis.delta_o,
                "m_o": self.hypothesis.m_o,
                "theta_norm": self.hypothesis.theta_norm,
            },
        }


def _difference_system(system: GaborSystem, perturbed: GaborSystem) -> GaborSystem:
    if system.space != perturbed.space:
        raise GroupMismatchError("systems live on different spaces")
    if len(system.windows) != len(perturbed.windows):
        raise ValueError("systems must have the same number of windows")
    diff = [w - wt for w, wt in zip(system.windows, perturbed.windows)]
    return system.with_windows(diff)


def check_pert_hypothesis(system: GaborSystem, perturbed: GaborSystem,
                          theta: SpaceOperator, lam: float, mu: float, eta: float,
                          bounds: tuple[float, float] | None = None,
                          tol: float = DEFAULT_TOL) -> PertCheck:
    """Check the three stability hypotheses for a perturbed window family.

    The domination hypothesis is verified as one PSD condition
    D <= lam S + mu T T^* + eta T^* T on the flattened space, D the frame
    operator of the difference system.  ``bounds`` pins (gamma_o, delta_o)
    externally; otherwise the computed extremal constants of the source are
    used (the report records which).
    """
    m_o = lower_bound_constant(theta.adjoint())
    if m_o <= tol:
        return PertCheck(None, False, False, False, None, False, "n/a")
    if bounds is not None:
        gamma_o, delta_o = bounds
        source = "paper_pinned"
    else:
        rep = theta_bounds(system, theta, tol)
        if not (rep.lower_exists and rep.upper_exists and rep.alpha_opt):
            return PertCheck(None, True, False, False, None, False, "computed")
        gamma_o, delta_o = rep.alpha_opt, rep.beta_opt
        source = "computed"
    hyp = PertHypothesis(lam, mu, eta, gamma_o, delta_o, m_o, operator_norm(theta))

    s = frame_operator(system, as_operator=False)
    d = frame_operator(_difference_system(system, perturbed), as_operator=False)
    t = theta.to_dense()
    rhs = lam * s + mu * (t @ t.conj().T) + eta * (t.conj().T @ t)
    margin = float(np.linalg.eigvalsh(rhs - d)[0])
    scale = max(1.0, float(np.linalg.eigvalsh(rhs)[-1]))
    difference_ok = margin >= -tol * scale
    ratio_ok = hyp.ratio_ok()
    return PertCheck(hyp, True, ratio_ok, difference_ok, margin,
                     ratio_ok and difference_ok, source)


def pert_predicted_bounds(hyp: PertHypothesis) -> tuple[float, float]:
    """Frame bounds promised for the perturbed system by the stability statement."""
    lower = (0.5 - hyp.lam) * hyp.gamma_o - hyp.mu - hyp.eta * (hyp.theta_norm / hyp.m_o) ** 2
    upper = 2.0 * ((1.0 + hyp.lam + hyp.mu / hyp.gamma_o) * hyp.delta_o + hyp.eta)
    return lower, upper


@dataclass
class PertPrediction:
    """Predicted bounds, their positivity and validity against computed ones."""

    applicable: bool
    predicted_lower: Optional[float]
    predicted_upper: Optional[float]
    perturbed_report: Optional[BoundsReport]
    lower_valid: Optional[bool]
    upper_valid: Optional[bool]

    def to_json_dict(self) -> dict:
        return {
            "applicable": self.applicable,
            "predicted_lower": self.predicted_lower,
            "predicted_upper": self.predicted_upper,
            "perturbed_report": None
            if self.perturbed_report is None
            else self.perturbed_report.to_json_dict(),
            "lower_valid": self.lower_valid,
            "upper_valid": self.upper_valid,
        }


def verify_perturbation(system: GaborSystem, perturbed: GaborSystem,
                        theta: SpaceOperator, lam: float, mu: float, eta: float,
                        bounds: tuple[float, float] | None = None,
                        tol: float = DEFAULT_TOL) -> tuple[PertCheck, PertPrediction]:
    """Hypothesis check plus predicted-bound validation for a perturbation."""
    check = check_pert_hypothesis(system, perturbed, theta, lam, mu, eta, bounds, tol)
    if not check.holds:
        return check, PertPrediction(False, None, None, None, None, None)
    lower, upper = pert_predicted_bounds(check.hypothesis)
    if lower <= 0:
        return check, PertPrediction(False, lower, upper, None, None, None)
    report = theta_bounds(perturbed, theta, tol)
    cmp_tol = tol * max(1.0, upper)
    lower_valid = report.lower_exists and (
        report.alpha_opt is None or lower <= report.alpha_opt + cmp_tol
    )
    upper_valid = report.upper_exists and upper >= (report.beta_opt or 0.0) - cmp_tol
    return check, PertPrediction(True, lower, upper, report, lower_valid, upper_valid)


@dataclass
class SumCheck:
    """Hypothesis outcome for the window-sum stability statement."""

    bounded_below_ok: bool
    condition_ok: bool
    condition_lhs: Optional[float]   # sqrt(gamma_1 / delta_2)
    condition_rhs: Optional[float]   # ||T|| / m_o
    gamma_1: Optional[float]
    delta_1: Optional[float]
    gamma_2: Optional[float]
    delta_2: Optional[float]
    m_o: Optional[float]
    theta_norm: Optional[float]
    bounds_source: str

    def to_json_dict(self) -> dict:
        return {
            "bounded_below_ok": self.bounded_below_ok,
            "condition_ok": self.condition_ok,
            "condition_lhs": self.condition_lhs,
            "condition_rhs": self.condition_rhs,
            "gamma_1": self.gamma_1,
            "delta_1": self.delta_1,
            "gamma_2": self.gamma_2,
            "delta_2": self.delta_2,
            "m_o": self.m_o,
            "theta_norm": self.theta_norm,
            "bounds_source": self.bounds_source,
        }


def check_sum_hypothesis(system: GaborSystem, second: GaborSystem,
                         theta: SpaceOperator,
                         bounds_first: tuple[float, float] | None = None,
                         bounds_second: tuple[float, float] | None = None,
                         tol: float = DEFAULT_TOL) -> SumCheck:
    """Hypotheses for the window-sum statement on two controlled frames."""
    source = "paper_pinned" if (bounds_first and bounds_second) else "computed"
    if bounds_first is None:
        rep1 = theta_bounds(system, theta, tol)
        if not (rep1.lower_exists and rep1.upper_exists and rep1.alpha_opt):
            return SumCheck(False, False, None, None, None, None, None, None,
                            None, None, source)
        bounds_first = (rep1.alpha_opt, rep1.beta_opt)
    if bounds_second is None:
        rep2 = theta_bounds(second, theta, tol)
        if not (rep2.upper_exists and rep2.beta_opt is not None):
            return SumCheck(False, False, None, None, None, None, None, None,
                            None, None, source)
        gamma_2 = rep2.alpha_opt if rep2.lower_exists else None
        bounds_second = (gamma_2, rep2.beta_opt)
    gamma_1, delta_1 = bounds_first
    gamma_2, delta_2 = bounds_second
    if delta_2 is None or delta_2 <= tol:
        raise ValueError("second system needs a positive upper bound (zero windows rejected)")
    m_o = lower_bound_constant(theta.adjoint())
    if m_o <= tol:
        return SumCheck(False, False, None, None, gamma_1, delta_1, gamma_2, delta_2,
                        m_o, operator_norm(theta), source)
    lhs = float(np.sqrt(gamma_1 / delta_2))
    rhs = operator_norm(theta) / m_o
    return SumCheck(True, lhs > rhs, lhs, rhs, gamma_1, delta_1, gamma_2, delta_2,
                    m_o, operator_norm(theta), source)


def sum_predicted_bounds(gamma_1: float, delta_1: float, delta_2: float,
                         theta_norm: float, m_o: float) -> tuple[float, float]:
    """Bounds promised for the window-sum system."""
    lower = (np.sqrt(gamma_1) - np.sqrt(delta_2) * theta_norm / m_o) ** 2
    upper = 2.0 * (delta_1 + delta_2)
    return float(lower), float(upper)


def verify_sum(system: GaborSystem, second: GaborSystem, theta: SpaceOperator,
               bounds_first: tuple[float, float] | None = None,
               bounds_second: tuple[float, float] | None = None,
               tol: float = DEFAULT_TOL) -> tuple[SumCheck, PertPrediction]:
    """Hypothesis check plus predicted-bound validation for a window sum."""
    check = check_sum_hypothesis(system, second, theta, bounds_first, bounds_second, tol)
    if not (check.bounded_below_ok and check.condition_ok):
        return check, PertPrediction(False, None, None, None, None, None)
    lower, upper = sum_predicted_bounds(
        check.gamma_1, check.delta_1, check.delta_2, check.theta_norm, check.m_o
    )
    summed = system.with_windows(
        [w + v for w, v in zip(system.windows, second.windows)]
    )
    report = theta_bounds(summed, theta, tol)
    cmp_tol = tol * max(1.0, upper)
    lower_valid = report.lower_exists and (
        report.alpha_opt is None or lower <= report.alpha_opt + cmp_tol
    )
    upper_valid = report.upper_exists and upper >= (report.beta_opt or 0.0) - cmp_tol
    return check, PertPrediction(lower > 0, lower, upper, report, lower_valid, upper_valid)
