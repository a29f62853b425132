"""Frame manifolds with constant structure data, and the exact tensor calculus
on them: Levi-Civita connection via the Koszul formula, curvature, Ricci,
Lie derivatives of the metric, covariant derivatives of endomorphisms.

A manifold here is a homogeneous presentation: an orthonormal-style frame
e_1..e_m with constant antisymmetric structure coefficients
[e_i, e_j] = sum_k c[i][j][k] e_k and a constant symmetric metric g on the
frame. All indices are 0-based internally; rendered output is 1-based.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .reports import CheckReport
from .scalars import ParamScalar, ZERO, format_rational

Matrix = tuple  # tuple of tuples of Fraction


class GeometryError(ValueError):
    pass


def _as_scalar(x) -> ParamScalar:
    if isinstance(x, ParamScalar):
        return x
    return ParamScalar.rational(x)


# -- exact linear algebra on Fraction matrices -------------------------------

def leading_minor_determinants(g: Matrix) -> list:
    """Determinants of the leading principal k x k submatrices, k = 1..m."""
    m = len(g)
    out = []
    for k in range(1, m + 1):
        out.append(_det([[Fraction(g[i][j]) for j in range(k)] for i in range(k)]))
    return out


def _det(rows: list) -> Fraction:
    n = len(rows)
    sign = Fraction(1)
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            sign = -sign
        det *= rows[col][col]
        inv = 1 / rows[col][col]
        for r in range(col + 1, n):
            if rows[r][col] != 0:
                f = rows[r][col] * inv
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[col])]
    return sign * det


def invert_matrix(g: Matrix) -> Matrix:
    """Exact inverse by Gauss-Jordan elimination."""
    n = len(g)
    aug = [[Fraction(g[i][j]) for j in range(n)] +
           [Fraction(1) if i == j else Fraction(0) for j in range(n)]
           for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise GeometryError("metric is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(aug[i][n:]) for i in range(n))


# -- vectors -----------------------------------------------------------------

@dataclass(frozen=True)
class FrameVector:
    """A vector field with constant coefficients in the frame."""

    coeffs: tuple

    @classmethod
    def from_values(cls, values) -> "FrameVector":
        return cls(tuple(_as_scalar(v) for v in values))

    @classmethod
    def basis(cls, dim: int, i: int) -> "FrameVector":
        return cls.from_values(tuple(1 if k == i else 0 for k in range(dim)))

    @classmethod
    def zero(cls, dim: int) -> "FrameVector":
        return cls.from_values((0,) * dim)

    @property
    def dim(self) -> int:
        return len(self.coeffs)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def __add__(self, other: "FrameVector") -> "FrameVector":
        return FrameVector(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "FrameVector") -> "FrameVector":
        return FrameVector(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "FrameVector":
        return FrameVector(tuple(-a for a in self.coeffs))

    def scaled(self, s) -> "FrameVector":
        s = _as_scalar(s)
        return FrameVector(tuple(s * a for a in self.coeffs))

    def rational_coeffs(self) -> tuple:
        return tuple(c.constant_value() for c in self.coeffs)

    def render(self) -> str:
        parts = []
        for k, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            name = f"e{k + 1}"
            if c == 1:
                parts.append(name)
            elif c == -1:
                parts.append("-" + name)
            else:
                s = c.render()
                if " + " in s:
                    s = "(" + s + ")"
                parts.append(f"{s}*{name}")
        return " + ".join(parts) if parts else "0"

    def __str__(self):
        return self.render()


# -- the manifold ------------------------------------------------------------

class FrameManifold:
    """Constant structure constants c[i][j][k] plus a constant metric g."""

    def __init__(self, name: str, dim: int, c, g, params=()):
        if dim < 1:
            raise GeometryError("dimension must be positive")
        self.name = name
        self.dim = dim
        self.c = tuple(tuple(tuple(Fraction(x) for x in row) for row in plane)
                       for plane in c)
        self.g = tuple(tuple(Fraction(x) for x in row) for row in g)
        self.params = frozenset(params) | {"p"}
        if len(self.c) != dim or any(len(p) != dim for p in self.c) or \
                any(len(r) != dim for p in self.c for r in p):
            raise GeometryError("structure constants must be dim^3")
        if len(self.g) != dim or any(len(r) != dim for r in self.g):
            raise GeometryError("metric must be dim x dim")
        self._g_inv = None

    @classmethod
    def from_brackets(cls, name: str, dim: int, brackets: dict,
                      g=None, params=()) -> "FrameManifold":
        """brackets: {(i, j): {k: coeff}} for i < j, all 0-based."""
        c = [[[Fraction(0)] * dim for _ in range(dim)] for _ in range(dim)]
        for (i, j), comps in brackets.items():
            for k, coeff in comps.items():
                c[i][j][k] = Fraction(coeff)
                c[j][i][k] = -Fraction(coeff)
        if g is None:
            g = identity_metric(dim)
        return cls(name, dim, c, g, params)

    @property
    def g_inv(self) -> Matrix:
        if self._g_inv is None:
            self._g_inv = invert_matrix(self.g)
        return self._g_inv

    def bracket(self, i: int, j: int) -> FrameVector:
        return FrameVector.from_values(self.c[i][j])

    def bracket_vec(self, x: FrameVector, y: FrameVector) -> FrameVector:
        out = [ZERO] * self.dim
        for i in range(self.dim):
            xi = x.coeffs[i]
            if xi.is_zero():
                continue
            for j in range(self.dim):
                yj = y.coeffs[j]
                if yj.is_zero():
                    continue
                for k in range(self.dim):
                    if self.c[i][j][k]:
                        out[k] = out[k] + xi * yj * self.c[i][j][k]
        return FrameVector(tuple(out))

    def g_of(self, x: FrameVector, y: FrameVector) -> ParamScalar:
        total = ZERO
        for a in range(self.dim):
            xa = x.coeffs[a]
            if xa.is_zero():
                continue
            for b in range(self.dim):
                if self.g[a][b]:
                    total = total + xa * y.coeffs[b] * self.g[a][b]
        return total

    def __eq__(self, other):
        if not isinstance(other, FrameManifold):
            return NotImplemented
        return (self.name, self.dim, self.c, self.g, self.params) == \
               (other.name, other.dim, other.c, other.g, other.params)

    def __repr__(self):
        return f"FrameManifold({self.name!r}, dim={self.dim})"


def identity_metric(dim: int):
    return tuple(tuple(Fraction(1) if i == j else Fraction(0)
                       for j in range(dim)) for i in range(dim))


# -- validation ---------------------------------------------------------------

def jacobi_defect(M: FrameManifold, i: int, j: int, k: int) -> FrameVector:
    """[[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j]; zero iff the
    bracket satisfies the Jacobi identity on this triple."""
    e = [FrameVector.basis(M.dim, a) for a in range(M.dim)]
    return (M.bracket_vec(M.bracket(i, j), e[k])
            + M.bracket_vec(M.bracket(j, k), e[i])
            + M.bracket_vec(M.bracket(k, i), e[j]))


def validate(M: FrameManifold, strict: bool = False) -> CheckReport:
    """Check antisymmetry of the structure constants and symmetry plus
    positive-definiteness of the metric. Strict mode also requires the
    Jacobi identity and reports the defect vector of each failing triple."""
    report = CheckReport(f"{M.name} validate" + (" (strict)" if strict else ""))
    bad = [(i + 1, j + 1, k + 1)
           for i in range(M.dim) for j in range(M.dim) for k in range(M.dim)
           if M.c[i][j][k] != -M.c[j][i][k]]
    report.add("bracket antisymmetry", not bad,
               "violated at " + "; ".join(str(t) for t in bad[:8]) if bad else None)

    asym = [(i + 1, j + 1) for i in range(M.dim) for j in range(M.dim)
            if M.g[i][j] != M.g[j][i]]
    report.add("metric symmetry", not asym,
               "violated at " + "; ".join(str(t) for t in asym[:8]) if asym else None)

    if not asym:
        minors = leading_minor_determinants(M.g)
        bad_minor = next((k for k, d in enumerate(minors, start=1) if d <= 0), None)
        report.add("metric positive-definite", bad_minor is None,
                   None if bad_minor is None else
                   f"leading minor {bad_minor} has determinant "
                   f"{format_rational(minors[bad_minor - 1])}")

    if strict:
        defects = []
        for i in range(M.dim):
            for j in range(i + 1, M.dim):
                for k in range(j + 1, M.dim):
                    d = jacobi_defect(M, i, j, k)
                    if not d.is_zero():
                        defects.append(f"({i + 1},{j + 1},{k + 1}): {d.render()}")
        report.add("jacobi identity", not defects,
                   "; ".join(defects) if defects else None)
    return report


# -- connection, curvature, ricci ---------------------------------------------

@dataclass(frozen=True)
class ConnectionTable:
    manifold: FrameManifold
    gamma: tuple  # gamma[i][j] = FrameVector nabla_{e_i} e_j

    def entry(self, i: int, j: int) -> FrameVector:
        return self.gamma[i][j]

    def coeff(self, i: int, j: int, k: int) -> ParamScalar:
        return self.gamma[i][j].coeffs[k]

    def nabla_vec(self, i: int, v: FrameVector) -> FrameVector:
        """nabla_{e_i} of a frame-constant vector field."""
        out = FrameVector.zero(self.manifold.dim)
        for a, va in enumerate(v.coeffs):
            if not va.is_zero():
                out = out + self.gamma[i][a].scaled(va)
        return out

    def nonzero(self):
        for i in range(self.manifold.dim):
            for j in range(self.manifold.dim):
                if not self.gamma[i][j].is_zero():
                    yield i, j, self.gamma[i][j]


def levi_civita(M: FrameManifold) -> ConnectionTable:
    """Koszul formula reduced for a frame-constant metric:
    2 g(nabla_{e_i} e_j, e_k) =
        -g(e_i, [e_j, e_k]) + g(e_j, [e_k, e_i]) + g(e_k, [e_i, e_j]).
    """
    m = M.dim
    gi = M.g_inv

    def pair(a: int, br) -> Fraction:
        return sum((M.g[a][l] * br[l] for l in range(m)), Fraction(0))

    gamma = []
    for i in range(m):
        row = []
        for j in range(m):
            rhs = []
            for k in range(m):
                t = (-pair(i, M.c[j][k]) + pair(j, M.c[k][i])
                     + pair(k, M.c[i][j])) / 2
                rhs.append(t)
            coeffs = [sum((gi[k][l] * rhs[l] for l in range(m)), Fraction(0))
                      for k in range(m)]
            row.append(FrameVector.from_values(coeffs))
        gamma.append(tuple(row))
    return ConnectionTable(M, tuple(gamma))


@dataclass(frozen=True)
class CurvatureTensor:
    manifold: FrameManifold
    comp: tuple  # comp[i][j][k] = FrameVector R(e_i, e_j) e_k

    def entry(self, i: int, j: int, k: int) -> FrameVector:
        return self.comp[i][j][k]

    def lowered(self, i: int, j: int, k: int, l: int) -> ParamScalar:
        """R(e_i, e_j, e_k, e_l) = g(R(e_i, e_j) e_k, e_l)."""
        M = self.manifold
        total = ZERO
        for a in range(M.dim):
            if M.g[a][l]:
                total = total + self.comp[i][j][k].coeffs[a] * M.g[a][l]
        return total

    def apply(self, x: FrameVector, y: FrameVector, z: FrameVector) -> FrameVector:
        """Trilinear extension of R to frame-constant vector fields."""
        M = self.manifold
        out = FrameVector.zero(M.dim)
        for i, xi in enumerate(x.coeffs):
            if xi.is_zero():
                continue
            for j, yj in enumerate(y.coeffs):
                if yj.is_zero():
                    continue
                for k, zk in enumerate(z.coeffs):
                    if zk.is_zero():
                        continue
                    out = out + self.comp[i][j][k].scaled(xi * yj * zk)
        return out

    def nonzero(self):
        m = self.manifold.dim
        for i in range(m):
            for j in range(m):
                for k in range(m):
                    if not self.comp[i][j][k].is_zero():
                        yield i, j, k, self.comp[i][j][k]


def curvature(M: FrameManifold, conn: ConnectionTable) -> CurvatureTensor:
    """R(X, Y) Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_{[X, Y]} Z."""
    m = M.dim
    comp = []
    for i in range(m):
        plane = []
        for j in range(m):
            row = []
            for k in range(m):
                t1 = conn.nabla_vec(i, conn.gamma[j][k])
                t2 = conn.nabla_vec(j, conn.gamma[i][k])
                t3 = FrameVector.zero(m)
                for a in range(m):
                    if M.c[i][j][a]:
                        t3 = t3 + conn.gamma[a][k].scaled(M.c[i][j][a])
                row.append(t1 - t2 - t3)
            plane.append(tuple(row))
        comp.append(tuple(plane))
    return CurvatureTensor(M, tuple(comp))


def bianchi_defect(R: CurvatureTensor, i: int, j: int, k: int) -> FrameVector:
    """R(e_i,e_j)e_k + R(e_j,e_k)e_i + R(e_k,e_i)e_j (first Bianchi sum)."""
    return R.comp[i][j][k] + R.comp[j][k][i] + R.comp[k][i][j]


@dataclass(frozen=True)
class RicciTensor:
    manifold: FrameManifold
    ric: tuple  # ric[j][k] = ParamScalar

    def entry(self, j: int, k: int) -> ParamScalar:
        return self.ric[j][k]

    def apply(self, y: FrameVector, z: FrameVector) -> ParamScalar:
        total = ZERO
        for j, yj in enumerate(y.coeffs):
            if yj.is_zero():
                continue
            for k, zk in enumerate(z.coeffs):
                if not zk.is_zero():
                    total = total + yj * zk * self.ric[j][k]
        return total

    def nonzero(self):
        m = self.manifold.dim
        for j in range(m):
            for k in range(m):
                if not self.ric[j][k].is_zero():
                    yield j, k, self.ric[j][k]


def ricci(M: FrameManifold, R: CurvatureTensor) -> RicciTensor:
    """ric(e_j, e_k) = trace of X -> R(X, e_j) e_k. Equals the contraction of
    the lowered tensor through g^{-1}; for an identity metric this is the
    plain orthonormal-frame sum over R(e_i, e_j, e_k, e_i)."""
    m = M.dim
    ric_tab = tuple(tuple(
        sum((R.comp[i][j][k].coeffs[i] for i in range(m)), ZERO)
        for k in range(m)) for j in range(m))
    return RicciTensor(M, ric_tab)


def ricci_via_metric(M: FrameManifold, R: CurvatureTensor) -> RicciTensor:
    """Same contraction routed through g^{-1} and the lowered tensor; kept as
    a cross-check for non-identity metrics."""
    m = M.dim
    gi = M.g_inv
    tab = []
    for j in range(m):
        row = []
        for k in range(m):
            total = ZERO
            for i in range(m):
                for l in range(m):
                    if gi[i][l]:
                        total = total + R.lowered(i, j, k, l) * gi[i][l]
            row.append(total)
        tab.append(tuple(row))
    return RicciTensor(M, tuple(tab))


def scalar_curvature(M: FrameManifold, ric_t: RicciTensor) -> ParamScalar:
    gi = M.g_inv
    total = ZERO
    for i in range(M.dim):
        for j in range(M.dim):
            if gi[i][j]:
                total = total + ric_t.ric[i][j] * gi[i][j]
    return total


def ricci_operator(M: FrameManifold, ric_t: RicciTensor) -> tuple:
    """Endomorphism Q with g(Q e_j, e_k) = ric(e_j, e_k); column j is Q e_j.
    Returned as a matrix q[a][j] of ParamScalar."""
    m = M.dim
    gi = M.g_inv
    return tuple(tuple(
        sum((ric_t.ric[l][j] * gi[a][l] for l in range(m)), ZERO)
        for j in range(m)) for a in range(m))


# -- derived operations --------------------------------------------------------

def lie_derivative_metric(M: FrameManifold, conn: ConnectionTable,
                          X: FrameVector) -> tuple:
    """(L_X g)(e_i, e_j) = g(nabla_{e_i} X, e_j) + g(e_i, nabla_{e_j} X)."""
    m = M.dim
    e = [FrameVector.basis(m, a) for a in range(m)]
    nx = [conn.nabla_vec(i, X) for i in range(m)]
    return tuple(tuple(M.g_of(nx[i], e[j]) + M.g_of(e[i], nx[j])
                       for j in range(m)) for i in range(m))


def is_killing(M: FrameManifold, conn: ConnectionTable, X: FrameVector):
    """Return (flag, defect table) where the defect is L_X g."""
    lx = lie_derivative_metric(M, conn, X)
    ok = all(entry.is_zero() for row in lx for entry in row)
    return ok, lx


def covariant_derivative_endo(M: FrameManifold, conn: ConnectionTable,
                              Q: tuple) -> tuple:
    """(nabla_{e_i} Q) e_j = nabla_{e_i}(Q e_j) - Q(nabla_{e_i} e_j) for a
    frame-constant endomorphism Q given column-wise (Q[a][j] = coeff of e_a
    in Q e_j). Returns a table [i][j] of FrameVector."""
    m = M.dim
    qcols = [FrameVector.from_values(tuple(Q[a][j] for a in range(m)))
             for j in range(m)]

    def q_apply(v: FrameVector) -> FrameVector:
        out = FrameVector.zero(m)
        for j, vj in enumerate(v.coeffs):
            if not vj.is_zero():
                out = out + qcols[j].scaled(vj)
        return out

    return tuple(tuple(conn.nabla_vec(i, qcols[j]) - q_apply(conn.gamma[i][j])
                       for j in range(m)) for i in range(m))
