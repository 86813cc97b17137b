"""Symbolic lambda survey over the nilpotent catalog and the sampling
versions of the two obstruction arguments.

For each algebra the generic 2-form omega = b_1 e^12 + ... + b_15 e^56
and sigma = c d(omega) produce an exact quartic lambda polynomial; its
sign is certified either by an explicit scaled-square decomposition or by
a pair of rational witnesses with opposite strict signs.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as iter_product
from random import Random
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import catalog
from .exterior import KForm
from .liealg import LieAlgebra, render_structure_equations
from .sampling import PAIRS, StableFormSampler
from .scalars import Polynomial, poly_eval, poly_sqrt
from .stable_forms import lambda_invariant

SIGN_NONNEG = "nonneg"
SIGN_NONPOS = "nonpos"
SIGN_ZERO = "zero"
SIGN_INDEFINITE = "indefinite"


class NoCertificateError(RuntimeError):
    """The sign pattern matcher found neither a square nor witnesses."""


class ObstructionFailure(AssertionError):
    """A sampled trial contradicted the expected no-go behaviour."""


@dataclass(frozen=True)
class Certificate:
    kind: str                      # "zero" | "scaled_square" | "witness_pair"
    factor: Optional[Fraction] = None
    root: Optional[Polynomial] = None
    positive_witness: Optional[Dict[str, Fraction]] = None
    negative_witness: Optional[Dict[str, Fraction]] = None


@dataclass(frozen=True)
class SurveyRow:
    algebra_name: str
    structure_equations: str
    lambda_poly: Polynomial
    sign_class: str
    certificate: Certificate


def generic_two_form() -> KForm:
    """omega with symbolic coefficients b1..b15 in lexicographic pair order."""
    coeffs = {}
    for i, pair in enumerate(PAIRS, start=1):
        coeffs[pair] = Polynomial.variable("b%d" % i)
    return KForm(6, 2, coeffs)


def generic_lambda(algebra: LieAlgebra) -> Polynomial:
    """lambda of sigma = c d(omega) for the generic omega, as an exact quartic."""
    if algebra.dim != 6:
        raise ValueError("the survey runs on six-dimensional algebras")
    if algebra.is_float_ring():
        raise ValueError("generic lambda needs exact structure constants")
    omega = generic_two_form()
    sigma = Polynomial.variable("c") * algebra.d(omega)
    lam = lambda_invariant(sigma)
    if not isinstance(lam, Polynomial):
        lam = Polynomial.constant(lam)
    return lam


def _strip_c4(p: Polynomial) -> Polynomial:
    """Divide by c^4, which divides every survey polynomial exactly."""
    terms = {}
    for m, coeff in p.terms.items():
        md = dict(m)
        if md.get("c", 0) != 4:
            raise NoCertificateError("polynomial is not c^4 times a b-form")
        md.pop("c")
        terms[tuple(sorted(md.items()))] = coeff
    return Polynomial(terms)


def _witness_search(p: Polynomial, variables: Sequence[str]
                    ) -> Optional[Tuple[Dict[str, Fraction], Dict[str, Fraction]]]:
    values = [Fraction(v) for v in (-2, -1, 0, 1, 2)]
    pos = neg = None
    for combo in iter_product(values, repeat=len(variables)):
        assignment = dict(zip(variables, combo))
        assignment["c"] = Fraction(1)
        val = poly_eval(p, assignment)
        if val > 0 and pos is None:
            pos = dict(assignment)
        elif val < 0 and neg is None:
            neg = dict(assignment)
        if pos is not None and neg is not None:
            return pos, neg
    return None


def sign_certificate(p: Polynomial) -> Tuple[str, Certificate]:
    """Certify the sign class of a survey polynomial.

    nonneg / nonpos come with p = factor * c^4 * root^2; indefinite comes
    with two explicit rational assignments of opposite strict sign.
    """
    if p.is_zero():
        return SIGN_ZERO, Certificate(kind="zero")
    q = _strip_c4(p)
    _, lead = q.leading_term()
    scaled = q / lead
    root = poly_sqrt(scaled)
    if root is not None:
        sign_class = SIGN_NONNEG if lead > 0 else SIGN_NONPOS
        return sign_class, Certificate(kind="scaled_square", factor=lead,
                                       root=root)
    witnesses = _witness_search(p, q.variables)
    if witnesses is not None:
        pos, neg = witnesses
        return SIGN_INDEFINITE, Certificate(kind="witness_pair",
                                            positive_witness=pos,
                                            negative_witness=neg)
    raise NoCertificateError("no sign certificate found for %s" % p)


def build_table() -> List[SurveyRow]:
    rows = []
    for name in catalog.TABLE_ORDER:
        algebra = catalog.algebra(name)
        lam = generic_lambda(algebra)
        sign_class, cert = sign_certificate(lam)
        rows.append(SurveyRow(
            algebra_name=name,
            structure_equations=render_structure_equations(algebra),
            lambda_poly=lam,
            sign_class=sign_class,
            certificate=cert))
    return rows


def sign_partition(rows: Sequence[SurveyRow]) -> Dict[str, int]:
    counts = {SIGN_NONNEG: 0, SIGN_NONPOS: 0, SIGN_ZERO: 0, SIGN_INDEFINITE: 0}
    for row in rows:
        counts[row.sign_class] += 1
    return counts


# ---------------------------------------------------------------------------
# obstruction sampling
# ---------------------------------------------------------------------------

# the quartic lambda on the first obstruction algebra involves only
# b12..b15, so compatibility may be imposed by moving four of b1..b11
# without touching lambda or the predicted null vector
_ADJUSTABLE = tuple(range(11))
_B12, _B13, _B14, _B15 = 11, 12, 13, 14


@dataclass(frozen=True)
class NullVectorTrial:
    seed_b: Tuple[float, ...]
    coupling: float
    lambda_value: float
    one_one_residual: float
    null_value: float
    min_eigenvalue: float


@dataclass(frozen=True)
class NullVectorReport:
    trials: int
    seed: int
    confirmed: int
    resampled: int
    max_null_value: float
    max_one_one_residual: float
    trials_detail: Tuple[NullVectorTrial, ...] = field(repr=False, default=())

    @property
    def all_confirmed(self) -> bool:
        return self.confirmed == self.trials


def _draw_fraction(rng: Random, lo: int = -6, hi: int = 6,
                   max_den: int = 4) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, max_den))


def draw_admissible_coefficients(rng: Random) -> Tuple[List[Fraction], Fraction, int]:
    """Rational draw with b15 != 0 and b15(b12+b13) > b14^2 (so lambda < 0).

    Degenerate draws (b15 = 0 or the inequality failing) are rejected and
    resampled; the rejection count is reported.
    """
    rejected = 0
    while True:
        b = [_draw_fraction(rng) for _ in range(15)]
        c = _draw_fraction(rng)
        if c == 0:
            rejected += 1
            continue
        if b[_B15] == 0:
            rejected += 1
            continue
        if not b[_B15] * (b[_B12] + b[_B13]) > b[_B14] ** 2:
            rejected += 1
            continue
        return b, c, rejected


def _compat_residual_vec(sampler: StableFormSampler, b: np.ndarray,
                         c: float) -> np.ndarray:
    s = sampler.sigma_coeffs(b, c)
    return np.einsum("mpa,p,a->m", sampler.compat_tensor, b, s)


def _compat_jacobian(sampler: StableFormSampler, b: np.ndarray,
                     c: float) -> np.ndarray:
    # G_m(b) = c U[m,p,a] b_p (Md b)_a  is bilinear in b
    s0 = sampler.d_matrix @ b
    j1 = np.einsum("mqa,a->mq", sampler.compat_tensor, s0)
    j2 = np.einsum("mpa,p,aq->mq", sampler.compat_tensor, b, sampler.d_matrix)
    return c * (j1 + j2)


def n4_obstruction_sample(trials: int, seed: int,
                          tol: float = 1e-9) -> NullVectorReport:
    """Sampled version of the degenerate-metric argument on the first
    obstruction algebra.

    Each trial draws admissible rational coefficients and imposes the
    type-(1,1) condition omega(J., J.) = omega, which for negatively
    stable sigma is the compatibility omega ^ sigma = 0, by a Newton
    adjustment of four of b1..b11.  Those coefficients never enter the
    quartic lambda, so the drawn sign of lambda and the predicted null
    vector v = e4 - (b14/b15) e5 + (b13/b15) e6 are untouched.  Every
    trial must end with |h(v,v)| below tolerance and h not positive
    definite.
    """
    from scipy.linalg import qr

    algebra = catalog.algebra("n4")
    sampler = StableFormSampler(algebra)
    rng = Random(seed)
    details = []
    confirmed = 0
    resampled_total = 0
    max_null = 0.0
    max_res = 0.0
    for _ in range(trials):
        b_frac, c_frac, rejected = draw_admissible_coefficients(rng)
        resampled_total += rejected
        b = np.array([float(x) for x in b_frac])
        c = float(c_frac)
        lam0 = sampler.lambda_of(b, c)
        if not lam0 < 0:
            raise ObstructionFailure("drawn coefficients have lambda >= 0")
        # Newton on four of b1..b11, re-pivoted and damped each step
        for _ in range(80):
            g = _compat_residual_vec(sampler, b, c)
            gn = float(np.linalg.norm(g))
            if gn <= 1e-13:
                break
            jac = _compat_jacobian(sampler, b, c)[:, list(_ADJUSTABLE)]
            _, _, piv = qr(jac, pivoting=True)
            subset = [_ADJUSTABLE[p] for p in piv[:4]]
            step = np.linalg.lstsq(jac[:, piv[:4]], -g, rcond=None)[0]
            scale = 1.0
            for _ in range(30):
                trial_b = b.copy()
                for col, pos in enumerate(subset):
                    trial_b[pos] += scale * step[col]
                if float(np.linalg.norm(
                        _compat_residual_vec(sampler, trial_b, c))) < gn:
                    b = trial_b
                    break
                scale *= 0.5
            else:
                break
        g = _compat_residual_vec(sampler, b, c)
        compat = float(np.max(np.abs(g)))
        lam = sampler.lambda_of(b, c)
        if not lam < 0 or abs(lam - lam0) > 1e-8 * max(1.0, abs(lam0)):
            raise ObstructionFailure("lambda moved during the Newton solve")
        j = sampler.j_matrix(b, c)
        pull = sampler.pullback_matrix(j)
        residual = max(compat, float(np.max(np.abs(b - pull @ b))))
        h = sampler.metric_of(b, j)
        b15 = b[_B15]
        v = np.zeros(6)
        v[3] = 1.0
        v[4] = -b[_B14] / b15
        v[5] = b[_B13] / b15
        null_val = float(v @ h @ v)
        hs = 0.5 * (h + h.T)
        min_eig = float(np.linalg.eigvalsh(hs).min())
        ok = (abs(null_val) <= tol and residual <= tol and min_eig <= tol)
        if ok:
            confirmed += 1
        else:
            raise ObstructionFailure(
                "trial failed: |h(v,v)| = %.3g, residual = %.3g, "
                "min eig = %.3g" % (abs(null_val), residual, min_eig))
        max_null = max(max_null, abs(null_val))
        max_res = max(max_res, residual)
        details.append(NullVectorTrial(
            seed_b=tuple(float(z) for z in b),
            coupling=c, lambda_value=lam, one_one_residual=residual,
            null_value=null_val, min_eigenvalue=min_eig))
    return NullVectorReport(trials=trials, seed=seed, confirmed=confirmed,
                            resampled=resampled_total, max_null_value=max_null,
                            max_one_one_residual=max_res,
                            trials_detail=tuple(details))


@dataclass(frozen=True)
class InfeasibilityReport:
    starts: int
    seed: int
    claimed: bool
    feasible_found: bool
    best_residual: float
    best_lambda: float
    best_point: Tuple[float, ...] = field(repr=False, default=())


def n9_nilsoliton_obstruction_sample(starts: int, seed: int,
                                     frame: str = "nilsoliton",
                                     residual_tol: float = 1e-9,
                                     lambda_cut: float = -1e-6
                                     ) -> InfeasibilityReport:
    """Multi-start search for a coupled pair inducing a multiple of the
    identity on the distinguished n9 frame.

    The constraint system is {lambda(sigma) < 0, h = t I with t > 0,
    omega ^ sigma = 0, h symmetric}; lambda is normalized to -1 by scaling.
    On the soliton frame no feasible point may appear (that would
    contradict the classification); feasibility in any start raises.
    With frame="standard" the same search runs as an uncontrolled
    experiment and only reports what it finds.
    """
    from scipy.optimize import minimize

    if frame == "nilsoliton":
        algebra = catalog.n9_nilsoliton_frame()
        claimed = True
    elif frame == "standard":
        algebra = catalog.algebra("n9")
        claimed = False
    else:
        raise ValueError("frame must be 'nilsoliton' or 'standard'")
    sampler = StableFormSampler(algebra)

    def pieces(b: np.ndarray):
        s = sampler.sigma_coeffs(b, 1.0)
        k = sampler.k_matrix(s)
        lam = float(np.trace(k @ k)) / 6.0
        if lam >= -1e-14:
            return lam, None
        j = k / math.sqrt(-lam)
        if sampler.orientation_sign(b) < 0:
            j = -j
        h = sampler.metric_of(b, j)
        hs = 0.5 * (h + h.T)
        t = float(np.trace(hs)) / 6.0
        r_iso = float(np.sum((hs - t * np.eye(6)) ** 2))
        r_skew = float(np.sum((h - h.T) ** 2))
        r_compat = sampler.compat_residual(b, s) ** 2
        r_pos = max(0.0, -t) ** 2
        return lam, (r_iso + r_skew + r_compat + r_pos, t)

    def objective(b: np.ndarray) -> float:
        lam, rest = pieces(b)
        if rest is None:
            return 1e3 + lam * lam
        resid, _ = rest
        return resid + (lam + 1.0) ** 2

    rng = Random(seed)
    best_resid = math.inf
    best_lambda = 0.0
    best_point: Tuple[float, ...] = ()
    feasible = False
    for _ in range(starts):
        x0 = np.array([rng.uniform(-1.5, 1.5) for _ in range(15)])
        res = minimize(objective, x0, method="L-BFGS-B",
                       options={"maxiter": 200})
        lam, rest = pieces(res.x)
        if rest is None:
            continue
        constraint_resid, _ = rest
        if constraint_resid < best_resid:
            best_resid = constraint_resid
            best_lambda = lam
            best_point = tuple(float(z) for z in res.x)
        if constraint_resid <= residual_tol and lam <= lambda_cut:
            feasible = True
            if claimed:
                raise ObstructionFailure(
                    "feasible constrained point found (residual %.3g, "
                    "lambda %.3g); this contradicts the published "
                    "classification -- escalate, do not suppress"
                    % (constraint_resid, lam))
    return InfeasibilityReport(starts=starts, seed=seed, claimed=claimed,
                               feasible_found=feasible,
                               best_residual=best_resid if starts else math.inf,
                               best_lambda=best_lambda,
                               best_point=best_point)
