"""Almost-contact metric structures on frame manifolds and the Sasakian,
normality and Reeb-field identities.

The structure is (phi, xi, eta): an endomorphism phi, a Reeb vector xi, and
eta the g-dual covector of xi (always derived from xi, never stored). All
entries are exact rationals.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .geometry import (ConnectionTable, CurvatureTensor, FrameManifold,
                       FrameVector, RicciTensor, covariant_derivative_endo)
from .reports import PRECONDITION, CheckItem, CheckReport
from .scalars import format_rational


class ContactError(ValueError):
    pass


@dataclass(frozen=True)
class AlmostContactData:
    """phi[a][j] = coefficient of e_a in phi(e_j); xi = Reeb vector coeffs."""

    phi: tuple
    xi: tuple

    @classmethod
    def from_values(cls, phi, xi) -> "AlmostContactData":
        return cls(tuple(tuple(Fraction(x) for x in row) for row in phi),
                   tuple(Fraction(x) for x in xi))

    @property
    def dim(self) -> int:
        return len(self.xi)

    def eta(self, M: FrameManifold) -> tuple:
        """eta(e_i) = g(e_i, xi)."""
        m = M.dim
        return tuple(sum((M.g[i][j] * self.xi[j] for j in range(m)), Fraction(0))
                     for i in range(m))

    def phi_vec(self, v) -> tuple:
        m = self.dim
        return tuple(sum((self.phi[a][j] * v[j] for j in range(m)), Fraction(0))
                     for a in range(m))

    def xi_vector(self) -> FrameVector:
        return FrameVector.from_values(self.xi)

    def phi_column(self, j: int) -> FrameVector:
        return FrameVector.from_values(tuple(self.phi[a][j] for a in range(self.dim)))


def _fmt_frac_vec(v) -> str:
    return FrameVector.from_values(v).render()


def d_eta(M: FrameManifold, D: AlmostContactData, i: int, j: int) -> Fraction:
    """d eta(e_i, e_j) = -1/2 eta([e_i, e_j]) for frame-constant eta."""
    eta = D.eta(M)
    return -sum((eta[k] * M.c[i][j][k] for k in range(M.dim)), Fraction(0)) / 2


def check_almost_contact(M: FrameManifold, D: AlmostContactData) -> CheckReport:
    """The defining axioms: eta(xi) = 1, phi^2 = -I + xi (x) eta, the metric
    phi-compatibility g(phi X, phi Y) = g(X, Y) - eta(X) eta(Y), phi(xi) = 0
    and eta(phi(.)) = 0."""
    m = M.dim
    report = CheckReport(f"{M.name} almost-contact axioms")
    eta = D.eta(M)

    val = sum((eta[i] * D.xi[i] for i in range(m)), Fraction(0))
    report.add("eta(xi) = 1", val == 1, f"eta(xi) = {format_rational(val)}")

    bad = []
    for j in range(m):
        col = D.phi_vec(tuple(D.phi[a][j] for a in range(m)))
        want = tuple((Fraction(-1) if a == j else Fraction(0)) + D.xi[a] * eta[j]
                     for a in range(m))
        if col != want:
            bad.append(f"phi^2(e{j + 1}) = {_fmt_frac_vec(col)}")
    report.add("phi^2 = -I + xi(x)eta", not bad, "; ".join(bad) if bad else None)

    bad = []
    for i in range(m):
        for j in range(m):
            pi, pj = D.phi_column(i), D.phi_column(j)
            lhs = M.g_of(pi, pj)
            rhs = M.g[i][j] - eta[i] * eta[j]
            if lhs != rhs:
                bad.append(f"({i + 1},{j + 1})")
    report.add("g(phi X, phi Y) = g(X, Y) - eta(X)eta(Y)", not bad,
               "violated at " + "; ".join(bad) if bad else None)

    pxi = D.phi_vec(D.xi)
    report.add("phi(xi) = 0", not any(pxi), f"phi(xi) = {_fmt_frac_vec(pxi)}")

    etaphi = tuple(sum((eta[a] * D.phi[a][j] for a in range(m)), Fraction(0))
                   for j in range(m))
    report.add("eta(phi(.)) = 0", not any(etaphi),
               f"eta(phi(e_j)) = {_fmt_frac_vec(etaphi)}")
    return report


def check_sasakian(M: FrameManifold, conn: ConnectionTable,
                   D: AlmostContactData) -> CheckReport:
    """(nabla_X phi) Y = g(X, Y) xi - eta(Y) X on all frame pairs."""
    report = CheckReport(f"{M.name} sasakian equation")
    pre = check_almost_contact(M, D)
    if pre.overall == "fail":
        failing = [item.name for item in pre.items if item.status != "pass"]
        report.add_item(CheckItem("almost-contact axioms", PRECONDITION,
                                  "failing: " + "; ".join(failing)))
        return report

    m = M.dim
    eta = D.eta(M)
    xi_vec = D.xi_vector()
    dphi = covariant_derivative_endo(M, conn, D.phi)
    bad = []
    for i in range(m):
        ei = FrameVector.basis(m, i)
        for j in range(m):
            want = xi_vec.scaled(M.g[i][j]) - ei.scaled(eta[j])
            if dphi[i][j] != want:
                bad.append(f"({i + 1},{j + 1}): {(dphi[i][j] - want).render()}")
    report.add("(nabla_X phi)Y = g(X,Y)xi - eta(Y)X", not bad,
               "; ".join(bad) if bad else None)
    return report


def nijenhuis(M: FrameManifold, D: AlmostContactData, i: int, j: int) -> tuple:
    """[phi, phi](e_i, e_j) =
    phi^2 [e_i,e_j] + [phi e_i, phi e_j] - phi[phi e_i, e_j] - phi[e_i, phi e_j]."""
    m = M.dim

    def br(x, y):
        out = [Fraction(0)] * m
        for a in range(m):
            if x[a]:
                for b in range(m):
                    if y[b]:
                        for k in range(m):
                            out[k] += x[a] * y[b] * M.c[a][b][k]
        return tuple(out)

    ei = tuple(Fraction(1) if a == i else Fraction(0) for a in range(m))
    ej = tuple(Fraction(1) if a == j else Fraction(0) for a in range(m))
    pi, pj = D.phi_vec(ei), D.phi_vec(ej)
    t1 = D.phi_vec(D.phi_vec(br(ei, ej)))
    t2 = br(pi, pj)
    t3 = D.phi_vec(br(pi, ej))
    t4 = D.phi_vec(br(ei, pj))
    return tuple(t1[k] + t2[k] - t3[k] - t4[k] for k in range(m))


def check_normality(M: FrameManifold, D: AlmostContactData) -> CheckReport:
    """[phi, phi](X, Y) + 2 d eta(X, Y) xi = 0 on all frame pairs."""
    report = CheckReport(f"{M.name} normality")
    m = M.dim
    bad = []
    for i in range(m):
        for j in range(i + 1, m):
            n = nijenhuis(M, D, i, j)
            de = d_eta(M, D, i, j)
            total = tuple(n[k] + 2 * de * D.xi[k] for k in range(m))
            if any(total):
                bad.append(f"({i + 1},{j + 1}): {_fmt_frac_vec(total)}")
    report.add("[phi,phi] + 2 d eta (x) xi = 0", not bad,
               "; ".join(bad) if bad else None)
    return report


def check_contact_metric(M: FrameManifold, D: AlmostContactData) -> CheckReport:
    """Contact-metric compatibility d eta(X, Y) = g(X, phi Y). Normal almost
    contact structures can still fail this; Sasakian ones never do."""
    report = CheckReport(f"{M.name} contact-metric compatibility")
    m = M.dim
    bad = []
    for i in range(m):
        ei = FrameVector.basis(m, i)
        for j in range(m):
            lhs = d_eta(M, D, i, j)
            rhs = M.g_of(ei, D.phi_column(j)).constant_value()
            if lhs != rhs:
                bad.append(f"({i + 1},{j + 1}): d eta = {format_rational(lhs)}, "
                           f"g(e_i, phi e_j) = {format_rational(rhs)}")
    report.add("d eta(X,Y) = g(X, phi Y)", not bad,
               "; ".join(bad) if bad else None)
    return report


def check_curvature_identity(M: FrameManifold, R: CurvatureTensor,
                             D: AlmostContactData) -> CheckReport:
    """R(Y, xi) Z = eta(Z) Y - g(Y, Z) xi on all frame pairs."""
    report = CheckReport(f"{M.name} reeb curvature identity")
    m = M.dim
    eta = D.eta(M)
    xi_vec = D.xi_vector()
    bad = []
    for yj in range(m):
        y = FrameVector.basis(m, yj)
        for zk in range(m):
            z = FrameVector.basis(m, zk)
            lhs = R.apply(y, xi_vec, z)
            rhs = y.scaled(eta[zk]) - xi_vec.scaled(M.g[yj][zk])
            if lhs != rhs:
                bad.append(f"({yj + 1},{zk + 1}): {(lhs - rhs).render()}")
    report.add("R(Y, xi)Z = eta(Z)Y - g(Y,Z)xi", not bad,
               "; ".join(bad) if bad else None)
    return report


def check_reeb_ricci(M: FrameManifold, ric_t: RicciTensor,
                     D: AlmostContactData) -> CheckReport:
    """ric(xi, Z) = (m - 1) eta(Z), the 2n multiple in dimension m = 2n + 1."""
    report = CheckReport(f"{M.name} reeb ricci identity")
    m = M.dim
    eta = D.eta(M)
    xi_vec = D.xi_vector()
    bad = []
    for k in range(m):
        lhs = ric_t.apply(xi_vec, FrameVector.basis(m, k))
        rhs = (m - 1) * eta[k]
        if lhs != rhs:
            bad.append(f"e{k + 1}: ric(xi, e_k) = {lhs.render()}, "
                       f"want {format_rational(rhs)}")
    report.add(f"ric(xi, Z) = {m - 1} eta(Z)", not bad,
               "; ".join(bad) if bad else None)
    return report


def derive_phi(M: FrameManifold, conn: ConnectionTable, xi) -> tuple:
    """Recover phi from the connection by phi(Y) = -nabla_Y xi.

    On a Sasakian presentation this reproduces the declared phi table.
    """
    m = M.dim
    xi_vec = FrameVector.from_values(xi)
    cols = []
    for j in range(m):
        col = -conn.nabla_vec(j, xi_vec)
        cols.append(col.rational_coeffs())
    return tuple(tuple(cols[j][a] for j in range(m)) for a in range(m))
