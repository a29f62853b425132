"""Ricci soliton equations on frame manifolds: residuals, trace solving for
lambda, shrinking/steady/expanding classification, gradient (potential
function) variants, and the closed-form constants for a concurrent potential
field.

Soliton flavors all share the shape L_X g + 2 ric = s g. For the plain and
almost flavors s = 2 lambda; the conformal flavors subtract the conformal
pressure term: s = 2 lambda - (p + 2/m), with m the manifold dimension and p
the pressure parameter. Gradient variants replace L_X g / 2 by the Hessian of
the potential: Hess f + ric = s' g with s' = lambda, shifted by p/2 + 1/m for
the conformal flavors.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .geometry import (ConnectionTable, CurvatureTensor, FrameManifold,
                       FrameVector, RicciTensor, covariant_derivative_endo,
                       lie_derivative_metric, ricci_operator)
from .reports import PRECONDITION, CheckItem, CheckReport
from .scalars import (LinearForm, ParamScalar, ZERO, SolveError,
                      format_rational, solve_linear)

P = ParamScalar.param("p")


class SolitonError(ValueError):
    pass


class IntegrabilityError(SolitonError):
    def __init__(self, pairs):
        self.pairs = pairs
        listed = "; ".join(f"({i + 1},{j + 1}): {format_rational(d)}"
                           for (i, j), d in pairs)
        super().__init__(f"df is not integrable: {listed}")


class SolitonFlavor(enum.Enum):
    RICCI = "ricci"
    ALMOST_RICCI = "almost_ricci"
    CONFORMAL = "conformal"
    ALMOST_CONFORMAL = "almost_conformal"

    @property
    def is_conformal(self) -> bool:
        return self in (SolitonFlavor.CONFORMAL, SolitonFlavor.ALMOST_CONFORMAL)


def _scale(flavor: SolitonFlavor, lam: ParamScalar, m: int) -> ParamScalar:
    """The metric multiplier s in L_X g + 2 ric = s g."""
    s = ParamScalar.rational(2) * lam
    if flavor.is_conformal:
        s = s - (P + Fraction(2, m))
    return s


def _gradient_scale(flavor: SolitonFlavor, lam: ParamScalar, m: int) -> ParamScalar:
    """The metric multiplier s' in Hess f + ric = s' g."""
    if flavor.is_conformal:
        return lam - (P / 2 + Fraction(1, m))
    return lam


def soliton_residual(M: FrameManifold, conn: ConnectionTable, ric_t: RicciTensor,
                     X: FrameVector, lam: ParamScalar,
                     flavor: SolitonFlavor) -> tuple:
    """L_X g + 2 ric - s g as an exact matrix; zero iff (X, lambda) solves the
    flavor's soliton equation on the frame."""
    m = M.dim
    lx = lie_derivative_metric(M, conn, X)
    s = _scale(flavor, lam, m)
    return tuple(tuple(lx[i][j] + 2 * ric_t.ric[i][j] - s * M.g[i][j]
                       for j in range(m)) for i in range(m))


@dataclass(frozen=True)
class LambdaSolve:
    lam: ParamScalar
    form: LinearForm
    status: str  # "einstein_exact" or "trace_only"
    residual: tuple


def solve_lambda_trace(M: FrameManifold, conn: ConnectionTable,
                       ric_t: RicciTensor, X: FrameVector,
                       flavor: SolitonFlavor) -> LambdaSolve:
    """Contract the soliton equation with g^{-1} and solve the resulting
    linear equation for lambda. Status is einstein_exact when the full
    residual vanishes at the solved lambda, else trace_only."""
    m = M.dim
    gi = M.g_inv
    lx = lie_derivative_metric(M, conn, X)
    trace = ZERO
    for i in range(m):
        for j in range(m):
            if gi[i][j]:
                trace = trace + (lx[i][j] + 2 * ric_t.ric[i][j]) * gi[i][j]
    # trace == m * s; as a linear form in lambda: 2m * lambda + remainder = 0
    shift = (P + Fraction(2, m)) if flavor.is_conformal else ZERO
    form = LinearForm(Fraction(2 * m), -(shift * m) - trace)
    lam = solve_linear(form)
    res = soliton_residual(M, conn, ric_t, X, lam, flavor)
    exact = all(e.is_zero() for row in res for e in row)
    return LambdaSolve(lam, form, "einstein_exact" if exact else "trace_only", res)


# -- classification ------------------------------------------------------------

@dataclass(frozen=True)
class Classification:
    verdict: str  # shrinking | steady | expanding | conditional
    condition: str | None = None  # predicate on p under which it shrinks
    threshold: Fraction | None = None

    def render(self) -> str:
        if self.verdict == "conditional":
            return f"conditional (shrinking iff {self.condition})"
        return self.verdict


def classify(lam: ParamScalar) -> Classification:
    """Sign classification of lambda: positive shrinking, zero steady,
    negative expanding. For lambda affine in p the verdict is conditional
    with the exact sign threshold; anything else is unsupported."""
    if lam.symbols() - {"p"}:
        raise SolitonError(f"classification needs a scalar in p only: {lam}")
    try:
        a, b = lam.affine_in("p")
    except Exception as exc:
        raise SolitonError(f"unsupported: {exc}") from exc
    if a == 0:
        if b > 0:
            return Classification("shrinking")
        if b < 0:
            return Classification("expanding")
        return Classification("steady")
    t = -b / a
    op = ">" if a > 0 else "<"
    return Classification("conditional", f"p {op} {format_rational(t)}", t)


# -- gradient solitons ----------------------------------------------------------

@dataclass(frozen=True)
class GradientData:
    """Frame-constant first derivatives df of the potential and, when known,
    dlambda of the soliton function lambda."""

    df: tuple
    dlambda: tuple | None = None

    @classmethod
    def from_values(cls, df, dlambda=None) -> "GradientData":
        return cls(tuple(Fraction(x) for x in df),
                   None if dlambda is None else tuple(Fraction(x) for x in dlambda))


def integrability_defects(M: FrameManifold, df) -> list:
    """Pairs (i, j) with sum_k df[k] c[i][j][k] nonzero. A frame-constant df
    is a genuine differential only when all of these vanish."""
    out = []
    for i in range(M.dim):
        for j in range(i + 1, M.dim):
            d = sum((Fraction(df[k]) * M.c[i][j][k] for k in range(M.dim)),
                    Fraction(0))
            if d != 0:
                out.append(((i, j), d))
    return out


def hessian(M: FrameManifold, conn: ConnectionTable, df) -> tuple:
    """Hess f(e_i, e_j) = -(nabla_{e_i} e_j) f = -sum_k Gamma[i][j][k] df[k]."""
    m = M.dim
    return tuple(tuple(
        -sum((conn.coeff(i, j, k) * Fraction(df[k]) for k in range(m)), ZERO)
        for j in range(m)) for i in range(m))


def gradient_vector(M: FrameManifold, df) -> FrameVector:
    """Df = g^{-1} df, the metric dual of the differential."""
    m = M.dim
    gi = M.g_inv
    return FrameVector.from_values(tuple(
        sum((gi[a][k] * Fraction(df[k]) for k in range(m)), Fraction(0))
        for a in range(m)))


def gradient_soliton_residual(M: FrameManifold, conn: ConnectionTable,
                              ric_t: RicciTensor, gd: GradientData,
                              lam: ParamScalar, flavor: SolitonFlavor) -> tuple:
    """Hess f + ric - s' g; df must be integrable."""
    bad = integrability_defects(M, gd.df)
    if bad:
        raise IntegrabilityError(bad)
    m = M.dim
    hess = hessian(M, conn, gd.df)
    s = _gradient_scale(flavor, lam, m)
    return tuple(tuple(hess[i][j] + ric_t.ric[i][j] - s * M.g[i][j]
                       for j in range(m)) for i in range(m))


def check_gradient_curvature_identity(M: FrameManifold, conn: ConnectionTable,
                                      R: CurvatureTensor, ric_t: RicciTensor,
                                      gd: GradientData, lam: ParamScalar,
                                      flavor: SolitonFlavor) -> CheckReport:
    """On a gradient soliton, curvature applied to the gradient satisfies
    R(X, Y) Df = (X lambda) Y - (Y lambda) X - (nabla_X Q) Y + (nabla_Y Q) X
    with Q the Ricci operator. The soliton equation itself is the hypothesis:
    a nonzero residual is a precondition violation, not a failure."""
    report = CheckReport(f"{M.name} gradient curvature identity")
    if gd.dlambda is None:
        report.add_item(CheckItem("dlambda supplied", PRECONDITION,
                                  "gradient data carries no dlambda"))
        return report
    try:
        res = gradient_soliton_residual(M, conn, ric_t, gd, lam, flavor)
    except IntegrabilityError as exc:
        report.add_item(CheckItem("df integrable", PRECONDITION, str(exc)))
        return report
    nonzero = [(i, j) for i, row in enumerate(res)
               for j, e in enumerate(row) if not e.is_zero()]
    if nonzero:
        listed = "; ".join(f"({i + 1},{j + 1}): {res[i][j].render()}"
                           for i, j in nonzero[:6])
        report.add_item(CheckItem("gradient soliton equation holds",
                                  PRECONDITION, listed))
        return report

    m = M.dim
    df_vec = gradient_vector(M, gd.df)
    dq = covariant_derivative_endo(M, conn, ricci_operator(M, ric_t))
    bad = []
    for i in range(m):
        ei = FrameVector.basis(m, i)
        for j in range(m):
            ej = FrameVector.basis(m, j)
            lhs = R.apply(ei, ej, df_vec)
            rhs = (ej.scaled(gd.dlambda[i]) - ei.scaled(gd.dlambda[j])
                   - dq[i][j] + dq[j][i])
            if lhs != rhs:
                bad.append(f"({i + 1},{j + 1}): {(lhs - rhs).render()}")
    report.add("R(X,Y)Df = (X lam)Y - (Y lam)X - (nabla_X Q)Y + (nabla_Y Q)X",
               not bad, "; ".join(bad) if bad else None)
    return report


def distribution_constant(m: int) -> Fraction:
    """The constant k = -2/m - 2(m - 1) attached to the distribution-level
    gradient check in dimension m."""
    return Fraction(-2, m) - 2 * (m - 1)


def check_distribution_gradient(M: FrameManifold, D, gd: GradientData,
                                lam: ParamScalar | None = None) -> CheckReport:
    """On the contact distribution (frame vectors with eta = 0) the potential
    and lambda move together: g(Df, e_i) + dlambda[i] = 0. When lambda is
    exactly p/2 and dlambda vanishes, df itself must vanish there."""
    m = M.dim
    k = distribution_constant(m)
    report = CheckReport(f"{M.name} distribution gradient check "
                         f"(k = {format_rational(k)})")
    if gd.dlambda is None:
        report.add_item(CheckItem("dlambda supplied", PRECONDITION,
                                  "gradient data carries no dlambda"))
        return report
    eta = D.eta(M)
    dist = [i for i in range(m) if eta[i] == 0]
    df_vec = gradient_vector(M, gd.df)
    bad = []
    for i in dist:
        # g(Df, e_i) collapses back to df[i] for any metric
        val = M.g_of(df_vec, FrameVector.basis(m, i)).constant_value()
        if val + gd.dlambda[i] != 0:
            bad.append(f"e{i + 1}: {format_rational(val + gd.dlambda[i])}")
    report.add("g(Df, e_i) + dlambda[i] = 0 on the distribution", not bad,
               "; ".join(bad) if bad else None)

    if lam is not None and lam == P / 2 and not any(gd.dlambda):
        still = [f"e{i + 1}: df = {format_rational(gd.df[i])}"
                 for i in dist if gd.df[i] != 0]
        report.add("lambda = p/2 forces df = 0 on the distribution", not still,
                   "; ".join(still) if still else None)
    return report


def check_lambda_f_constant(M: FrameManifold, gd: GradientData) -> CheckReport:
    """df + dlambda = 0 in every frame direction, i.e. lambda + f is constant."""
    report = CheckReport(f"{M.name} lambda + f constancy")
    if gd.dlambda is None:
        report.add_item(CheckItem("dlambda supplied", PRECONDITION,
                                  "gradient data carries no dlambda"))
        return report
    bad = [f"e{i + 1}: {format_rational(gd.df[i] + gd.dlambda[i])}"
           for i in range(M.dim) if gd.df[i] + gd.dlambda[i] != 0]
    report.add("df[i] + dlambda[i] = 0 for every i", not bad,
               "; ".join(bad) if bad else None)
    if not any(gd.dlambda):
        # corollary: constant lambda leaves no room for a varying potential
        still = [f"e{i + 1}: {format_rational(gd.df[i])}"
                 for i in range(M.dim) if gd.df[i] != 0]
        report.add("constant lambda forces constant f", not still,
                   "; ".join(still) if still else None)
    return report


def concurrent_check(M: FrameManifold, conn: ConnectionTable, V: FrameVector,
                     assume_concurrent: bool = False) -> CheckReport:
    """A concurrent field satisfies nabla_X V = X. Frame-constant coefficient
    vectors can only satisfy this through the connection table, which the
    check verifies directly; with assume_concurrent the substitution
    nabla_{e_i} V := e_i is made instead and L_V g = 2 g is verified."""
    report = CheckReport(f"{M.name} concurrent field check")
    m = M.dim
    e = [FrameVector.basis(m, a) for a in range(m)]

    if assume_concurrent:
        nv = e
        report.add_item(CheckItem("nabla_{e_i} V = e_i", "pass",
                                  "assumed, not derived"))
    else:
        nv = [conn.nabla_vec(i, V) for i in range(m)]
        bad = [f"e{i + 1}: nabla V = {nv[i].render()}"
               for i in range(m) if nv[i] != e[i]]
        report.add("nabla_{e_i} V = e_i", not bad,
                   "; ".join(bad[:6]) if bad else None)

    lv = tuple(tuple(M.g_of(nv[i], e[j]) + M.g_of(e[i], nv[j])
                     for j in range(m)) for i in range(m))
    bad = [f"({i + 1},{j + 1}): {(lv[i][j] - 2 * M.g[i][j]).render()}"
           for i in range(m) for j in range(m)
           if lv[i][j] != ParamScalar.rational(2 * M.g[i][j])]
    report.add("L_V g = 2 g", not bad, "; ".join(bad[:6]) if bad else None)
    return report


# -- closed-form constants for a concurrent potential ---------------------------

@dataclass(frozen=True)
class ConcurrentSolitonResult:
    dim: int
    lam: ParamScalar
    einstein_constant: Fraction
    classification: Classification


def concurrent_soliton_constants(m: int) -> ConcurrentSolitonResult:
    """For a gradient almost conformal soliton whose potential field is
    concurrent on an m-dimensional Sasakian presentation (m odd, m >= 3):
    the manifold is Einstein with constant m - 1 and
    lambda = m + p/2 + 1/m, equivalently (m p + 2 m^2 + 2) / (2 m)."""
    if m < 3 or m % 2 == 0:
        raise SolitonError(f"dimension must be odd and at least 3, got {m}")
    lam = P / 2 + Fraction(m * m + 1, m)
    assert lam == (P * m + 2 * m * m + 2) / ParamScalar.rational(2 * m)
    return ConcurrentSolitonResult(m, lam, Fraction(m - 1), classify(lam))
