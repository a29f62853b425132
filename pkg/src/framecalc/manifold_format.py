"""Line-based text format for frame manifolds.

    # comments run to end of line; blank lines are ignored
    manifold <ident> dim <int>
    param <ident>
    bracket e<i> e<j> = <vector-expr>
    metric identity
    metric g <i> <j> = <rational>
    contact xi = <vector-expr>
    contact phi e<j> = <vector-expr>
    expect nabla e<i> e<j> = <vector-expr> source "<text>"
    expect riem e<i> e<j> e<k> = <vector-expr> source "<text>"
    expect ricci <i> <j> = <rational> source "<text>"
    expect lambda = <scalar-expr> source "<text>"

A vector-expr is 0 or a sum of signed terms <rational>[*]e<k>; indices are
1-based and must stay within the declared dimension. Brackets may be declared
at most once per unordered pair. Expected values are audit data: they never
feed computation, they only populate discrepancy ledgers, so repeated or
contradictory expect lines are legal.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .contact import AlmostContactData
from .geometry import FrameManifold, FrameVector, identity_metric
from .scalars import ParamScalar, ScalarError, format_rational, parse_scalar


class ParseError(ValueError):
    def __init__(self, lineno: int, col: int, message: str):
        super().__init__(f"line {lineno}, col {col}: {message}")
        self.lineno = lineno
        self.col = col
        self.message = message


@dataclass(frozen=True)
class ExpectedValues:
    nabla: tuple = ()   # (i, j, FrameVector, source)
    riem: tuple = ()    # (i, j, k, FrameVector, source)
    ricci: tuple = ()   # (i, j, Fraction, source)
    lam: tuple = ()     # (ParamScalar, source)

    def is_empty(self) -> bool:
        return not (self.nabla or self.riem or self.ricci or self.lam)


@dataclass(frozen=True)
class ManifoldDocument:
    manifold: FrameManifold
    contact: AlmostContactData | None
    expected: ExpectedValues


class _Scanner:
    def __init__(self, text: str, lineno: int, col_base: int = 1):
        self.text = text
        self.lineno = lineno
        self.col_base = col_base
        self.pos = 0

    def error(self, msg: str, pos: int | None = None):
        p = self.pos if pos is None else pos
        raise ParseError(self.lineno, self.col_base + p, msg)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos] in " \t":
            self.pos += 1

    def eof(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def peek_word(self) -> str:
        self.skip_ws()
        m = re.match(r"[A-Za-z_][A-Za-z_0-9]*", self.text[self.pos:])
        return m.group(0) if m else ""

    def word(self) -> str:
        self.skip_ws()
        m = re.match(r"[A-Za-z_][A-Za-z_0-9]*", self.text[self.pos:])
        if not m:
            self.error("expected an identifier")
        self.pos += m.end()
        return m.group(0)

    def keyword(self, lit: str):
        start = self.pos
        w = self.word()
        if w != lit:
            self.error(f"expected {lit!r}, found {w!r}", start)

    def char(self, ch: str):
        self.skip_ws()
        if self.pos >= len(self.text) or self.text[self.pos] != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def integer(self) -> int:
        self.skip_ws()
        m = re.match(r"\d+", self.text[self.pos:])
        if not m:
            self.error("expected an integer")
        self.pos += m.end()
        return int(m.group(0))

    def rational(self) -> Fraction:
        self.skip_ws()
        start = self.pos
        m = re.match(r"(\d+)\s*(?:/\s*(\d+))?", self.text[self.pos:])
        if not m:
            self.error("expected a rational number")
        self.pos += m.end()
        num = int(m.group(1))
        den = int(m.group(2)) if m.group(2) else 1
        if den == 0:
            self.error("zero denominator", start)
        return Fraction(num, den)

    def basis_index(self, dim: int) -> int:
        """Read e<k> and return the 0-based index."""
        self.skip_ws()
        start = self.pos
        m = re.match(r"e(\d+)", self.text[self.pos:])
        if not m:
            self.error("expected a frame vector e<k>")
        self.pos += m.end()
        k = int(m.group(1))
        if not 1 <= k <= dim:
            self.error(f"frame index e{k} out of range 1..{dim}", start)
        return k - 1

    def index_1based(self, dim: int) -> int:
        self.skip_ws()
        start = self.pos
        k = self.integer()
        if not 1 <= k <= dim:
            self.error(f"index {k} out of range 1..{dim}", start)
        return k - 1


def _parse_vector(sc: _Scanner, dim: int, stop_word: str | None = None) -> FrameVector:
    coeffs = [Fraction(0)] * dim
    # bare zero
    if sc.peek() == "0":
        save = sc.pos
        sc.pos += 1
        if sc.eof() or (stop_word and sc.peek_word() == stop_word):
            return FrameVector.from_values(coeffs)
        sc.pos = save
    first = True
    while True:
        if sc.eof() or (stop_word and sc.peek_word() == stop_word):
            if first:
                sc.error("expected a vector expression")
            break
        sign = Fraction(1)
        saw_sign = False
        while sc.peek() and sc.peek() in "+-":
            if sc.peek() == "-":
                sign = -sign
            sc.pos += 1
            sc.skip_ws()
            saw_sign = True
        if not first and not saw_sign:
            sc.error("expected '+' or '-' between terms")
        q = Fraction(1)
        if sc.peek().isdigit():
            q = sc.rational()
            if sc.peek() == "*":
                sc.pos += 1
        k = sc.basis_index(dim)
        coeffs[k] += sign * q
        first = False
    return FrameVector.from_values(coeffs)


def parse_vector_text(text: str, dim: int, lineno: int = 1,
                      col_base: int = 1) -> FrameVector:
    sc = _Scanner(text, lineno, col_base)
    v = _parse_vector(sc, dim)
    if not sc.eof():
        sc.error("trailing text after vector expression")
    return v


_EXPECT_RE = re.compile(
    r"expect\s+(nabla|riem|ricci|lambda)\s+(.*?)\s*source\s+\"([^\"]*)\"\s*$")


def parse_manifold(text: str) -> ManifoldDocument:
    """Parse the manifold file grammar. Grammar violations raise ParseError
    with a line and column; the described geometry is not judged here beyond
    shape, so files for validate-rejected manifolds still parse."""
    name = None
    dim = 0
    params: list = []
    brackets: dict = {}
    bracket_lines: dict = {}
    metric_mode = None  # None | "identity" | "entries"
    metric_entries: dict = {}
    xi = None
    phi_cols: dict = {}
    exp_nabla: list = []
    exp_riem: list = []
    exp_ricci: list = []
    exp_lam: list = []
    last_line = 0

    for lineno, raw in enumerate(text.splitlines(), start=1):
        last_line = lineno
        line = raw.split("#", 1)[0].rstrip("\r").rstrip()
        if not line.strip():
            continue
        sc = _Scanner(line, lineno)
        head = sc.word()

        if head == "manifold":
            if name is not None:
                sc.error("duplicate manifold declaration")
            name = sc.word()
            sc.keyword("dim")
            dim = sc.integer()
            if dim < 1:
                sc.error("dimension must be positive")
            if not sc.eof():
                sc.error("trailing text")
            continue

        if name is None:
            sc.error("the manifold declaration must come first", 0)

        if head == "param":
            params.append(sc.word())
            if not sc.eof():
                sc.error("trailing text")
        elif head == "bracket":
            i = sc.basis_index(dim)
            j = sc.basis_index(dim)
            if i == j:
                sc.error("bracket of a frame vector with itself is zero; omit it")
            key = (min(i, j), max(i, j))
            if key in brackets:
                sc.error(f"bracket for pair (e{key[0] + 1}, e{key[1] + 1}) "
                         f"already declared on line {bracket_lines[key]}")
            sc.char("=")
            v = _parse_vector(sc, dim)
            if not sc.eof():
                sc.error("trailing text")
            coeffs = v.rational_coeffs()
            if i < j:
                brackets[key] = coeffs
            else:
                brackets[key] = tuple(-x for x in coeffs)
            bracket_lines[key] = lineno
        elif head == "metric":
            which = sc.peek_word()
            if which == "identity":
                sc.word()
                if metric_mode is not None:
                    sc.error("metric already declared")
                metric_mode = "identity"
                if not sc.eof():
                    sc.error("trailing text")
            elif which == "g":
                sc.word()
                if metric_mode == "identity":
                    sc.error("metric already declared as identity")
                metric_mode = "entries"
                i = sc.index_1based(dim)
                j = sc.index_1based(dim)
                if (i, j) in metric_entries or (j, i) in metric_entries:
                    sc.error(f"metric entry ({i + 1},{j + 1}) already declared")
                sc.char("=")
                sign = Fraction(1)
                while sc.peek() and sc.peek() in "+-":
                    if sc.peek() == "-":
                        sign = -sign
                    sc.pos += 1
                q = sign * sc.rational()
                if not sc.eof():
                    sc.error("trailing text")
                metric_entries[(i, j)] = q
                metric_entries[(j, i)] = q
            else:
                sc.error("expected 'identity' or 'g'")
        elif head == "contact":
            which = sc.word()
            if which == "xi":
                if xi is not None:
                    sc.error("contact xi already declared")
                sc.char("=")
                v = _parse_vector(sc, dim)
                if not sc.eof():
                    sc.error("trailing text")
                xi = v.rational_coeffs()
            elif which == "phi":
                j = sc.basis_index(dim)
                if j in phi_cols:
                    sc.error(f"contact phi e{j + 1} already declared")
                sc.char("=")
                v = _parse_vector(sc, dim)
                if not sc.eof():
                    sc.error("trailing text")
                phi_cols[j] = v.rational_coeffs()
            else:
                sc.error("expected 'xi' or 'phi'")
        elif head == "expect":
            m = _EXPECT_RE.match(line.strip())
            if not m:
                sc.error("malformed expect line; need = <value> source \"...\"")
            kind, body, source = m.group(1), m.group(2), m.group(3)
            body_col = line.find(body) + 1 if body else 1
            bsc = _Scanner(body, lineno, body_col)
            if kind == "nabla":
                i = bsc.basis_index(dim)
                j = bsc.basis_index(dim)
                bsc.char("=")
                rest = body[bsc.pos:]
                v = parse_vector_text(rest, dim, lineno, body_col + bsc.pos)
                exp_nabla.append((i, j, v, source))
            elif kind == "riem":
                i = bsc.basis_index(dim)
                j = bsc.basis_index(dim)
                k = bsc.basis_index(dim)
                bsc.char("=")
                rest = body[bsc.pos:]
                v = parse_vector_text(rest, dim, lineno, body_col + bsc.pos)
                exp_riem.append((i, j, k, v, source))
            elif kind == "ricci":
                i = bsc.index_1based(dim)
                j = bsc.index_1based(dim)
                bsc.char("=")
                sign = Fraction(1)
                while bsc.peek() and bsc.peek() in "+-":
                    if bsc.peek() == "-":
                        sign = -sign
                    bsc.pos += 1
                q = sign * bsc.rational()
                if not bsc.eof():
                    bsc.error("trailing text")
                exp_ricci.append((i, j, q, source))
            else:  # lambda
                bsc.char("=")
                expr = body[bsc.pos:].strip()
                try:
                    lam = parse_scalar(expr)
                except ScalarError as exc:
                    bsc.error(str(exc))
                exp_lam.append((lam, source))
        else:
            sc.error(f"unknown statement {head!r}", 0)

    if name is None:
        raise ParseError(last_line + 1, 1, "missing manifold declaration")
    if metric_mode is None:
        raise ParseError(last_line + 1, 1, "missing metric declaration")

    if metric_mode == "identity":
        g = identity_metric(dim)
    else:
        g = tuple(tuple(metric_entries.get((i, j), Fraction(0))
                        for j in range(dim)) for i in range(dim))

    M = FrameManifold.from_brackets(
        name, dim, {k: dict(enumerate(v)) for k, v in brackets.items()},
        g, params)

    allowed = M.params
    for lam, _src in exp_lam:
        extra = lam.symbols() - allowed
        if extra:
            raise ParseError(last_line + 1, 1,
                             f"expected lambda uses undeclared parameter "
                             f"{sorted(extra)[0]!r}")

    contact = None
    if phi_cols and xi is None:
        raise ParseError(last_line + 1, 1, "contact phi requires contact xi")
    if xi is not None:
        phi = tuple(tuple(phi_cols.get(j, (Fraction(0),) * dim)[a]
                          for j in range(dim)) for a in range(dim))
        contact = AlmostContactData(phi, tuple(xi))

    expected = ExpectedValues(tuple(exp_nabla), tuple(exp_riem),
                              tuple(exp_ricci), tuple(exp_lam))
    return ManifoldDocument(M, contact, expected)


def render_manifold(doc: ManifoldDocument) -> str:
    """Canonical text for a document; parse(render(doc)) == doc."""
    M = doc.manifold
    lines = [f"manifold {M.name} dim {M.dim}"]
    for p in sorted(M.params - {"p"}):
        lines.append(f"param {p}")
    for i in range(M.dim):
        for j in range(i + 1, M.dim):
            if any(M.c[i][j]):
                vec = FrameVector.from_values(M.c[i][j])
                lines.append(f"bracket e{i + 1} e{j + 1} = {vec.render()}")
    if M.g == identity_metric(M.dim):
        lines.append("metric identity")
    else:
        wrote = False
        for i in range(M.dim):
            for j in range(i, M.dim):
                if M.g[i][j]:
                    lines.append(f"metric g {i + 1} {j + 1} = "
                                 f"{format_rational(M.g[i][j])}")
                    wrote = True
        if not wrote:  # degenerate all-zero metric still needs a statement
            lines.append("metric g 1 1 = 0")
    if doc.contact is not None:
        lines.append(f"contact xi = "
                     f"{FrameVector.from_values(doc.contact.xi).render()}")
        for j in range(M.dim):
            col = doc.contact.phi_column(j)
            if not col.is_zero():
                lines.append(f"contact phi e{j + 1} = {col.render()}")
    for i, j, v, src in doc.expected.nabla:
        lines.append(f"expect nabla e{i + 1} e{j + 1} = {v.render()} "
                     f"source \"{src}\"")
    for i, j, k, v, src in doc.expected.riem:
        lines.append(f"expect riem e{i + 1} e{j + 1} e{k + 1} = {v.render()} "
                     f"source \"{src}\"")
    for i, j, q, src in doc.expected.ricci:
        lines.append(f"expect ricci {i + 1} {j + 1} = {format_rational(q)} "
                     f"source \"{src}\"")
    for lam, src in doc.expected.lam:
        lines.append(f"expect lambda = {lam.render()} source \"{src}\"")
    return "\n".join(lines) + "\n"
