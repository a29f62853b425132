"""Command line interface.

Exit codes: 0 all checks pass and no ledger discrepancies; 1 at least one
check failed; 2 checks pass but declared expected values disagree with the
computation; 3 usage or parse errors.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import catalog
from .contact import (ContactError, check_almost_contact,
                      check_contact_metric, check_curvature_identity,
                      check_normality, check_reeb_ricci, check_sasakian)
from .geometry import (FrameManifold, FrameVector, GeometryError, RicciTensor,
                       curvature, is_killing, levi_civita, ricci,
                       scalar_curvature, validate)
from .manifold_format import ManifoldDocument, ParseError, parse_manifold
from .reports import CheckReport, combine
from .scalars import ScalarError, parse_rational, parse_scalar
from .solitons import (GradientData, SolitonError, SolitonFlavor, classify,
                       check_gradient_curvature_identity,
                       concurrent_soliton_constants, gradient_soliton_residual,
                       integrability_defects, solve_lambda_trace,
                       soliton_residual)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _build_parser() -> _Parser:
    p = _Parser(prog="framecalc",
                description="Exact frame-manifold curvature and Ricci "
                            "soliton checks.")
    sub = p.add_subparsers(dest="command", required=True, metavar="command")

    def add(name: str, help_: str, subject: bool = True):
        s = sub.add_parser(name, help=help_)
        if subject:
            s.add_argument("--builtin", metavar="NAME",
                           help="catalog manifold: " + ", ".join(catalog.builtin_names()))
            s.add_argument("--file", metavar="PATH", help="manifold file")
        s.add_argument("--format", choices=("text", "json"), default="text")
        return s

    s = add("validate", "check structure constants and metric")
    s.add_argument("--strict", action="store_true",
                   help="also require the Jacobi identity")
    add("connection", "Levi-Civita connection table")
    add("curvature", "curvature tensor components")
    add("ricci", "Ricci tensor")
    add("check-contact", "almost-contact axioms")
    add("check-sasakian", "Sasakian equation")
    add("check-normality", "normality tensor")

    s = add("solve-lambda", "solve the trace of the soliton equation for lambda")
    s.add_argument("--field", required=True, metavar="X",
                   help="'xi' or comma-separated frame components")
    s.add_argument("--flavor", required=True,
                   choices=[f.value for f in SolitonFlavor])
    s.add_argument("--use-expected-ricci", action="store_true",
                   help="solve with the declared expected Ricci values instead "
                        "of the computed tensor")

    s = add("check-soliton", "evaluate the soliton equation residual")
    s.add_argument("--field", required=True, metavar="X")
    s.add_argument("--flavor", required=True,
                   choices=[f.value for f in SolitonFlavor])
    s.add_argument("--lambda", dest="lam", required=True, metavar="EXPR")

    s = add("check-gradient", "evaluate the gradient soliton equation")
    s.add_argument("--df", required=True, metavar="C1,..,CM")
    s.add_argument("--dlambda", metavar="C1,..,CM")
    s.add_argument("--flavor", required=True,
                   choices=[f.value for f in SolitonFlavor])
    s.add_argument("--lambda", dest="lam", required=True, metavar="EXPR")

    s = add("theorem36", "closed-form soliton constants for a concurrent "
                         "potential field", subject=False)
    s.add_argument("--dim", type=int, required=True)

    add("verify-paper-example", "full audit of the heisenberg5 worked example",
        subject=False)
    return p


def _load(args) -> ManifoldDocument:
    builtin = getattr(args, "builtin", None)
    path = getattr(args, "file", None)
    if (builtin is None) == (path is None):
        raise UsageError("exactly one of --builtin or --file is required")
    if builtin is not None:
        try:
            return catalog.load_builtin(builtin)
        except KeyError as exc:
            raise UsageError(str(exc.args[0])) from exc
    try:
        text = open(path, encoding="utf-8").read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    return parse_manifold(text)


def _emit(report: CheckReport, fmt: str) -> int:
    out = report.render_json() if fmt == "json" else report.render_text()
    sys.stdout.write(out)
    return report.exit_code


def _require_contact(doc: ManifoldDocument):
    if doc.contact is None:
        raise UsageError(f"{doc.manifold.name} declares no contact structure")
    return doc.contact


def _parse_field(text: str, doc: ManifoldDocument) -> FrameVector:
    M = doc.manifold
    if text.strip() == "xi":
        return FrameVector.from_values(_require_contact(doc).xi)
    parts = text.split(",")
    if len(parts) != M.dim:
        raise UsageError(f"--field needs {M.dim} comma-separated components")
    coeffs = [parse_scalar(s) for s in parts]
    for c in coeffs:
        extra = c.symbols() - M.params
        if extra:
            raise UsageError(f"undeclared parameter {sorted(extra)[0]!r} in field")
    return FrameVector.from_values(coeffs)


def _parse_fraction_list(text: str, dim: int, what: str) -> tuple:
    parts = text.split(",")
    if len(parts) != dim:
        raise UsageError(f"{what} needs {dim} comma-separated rationals")
    return tuple(parse_rational(s) for s in parts)


def _parse_lambda(text: str, M: FrameManifold):
    lam = parse_scalar(text)
    extra = lam.symbols() - M.params
    if extra:
        raise UsageError(f"undeclared parameter {sorted(extra)[0]!r} in lambda")
    return lam


# -- table reports -------------------------------------------------------------

def _connection_report(doc: ManifoldDocument) -> CheckReport:
    M = doc.manifold
    conn = levi_civita(M)
    report = CheckReport(f"{M.name} connection")
    for i, j, v in conn.nonzero():
        report.add(f"nabla_e{i + 1} e{j + 1} = {v.render()}", True)
    for i, j, vec, src in doc.expected.nabla:
        got = conn.entry(i, j)
        if got != vec:
            report.add_ledger(src,
                              f"nabla_e{i + 1} e{j + 1} = {vec.render()}",
                              f"nabla_e{i + 1} e{j + 1} = {got.render()}")
    return report


def _curvature_report(doc: ManifoldDocument) -> CheckReport:
    M = doc.manifold
    R = curvature(M, levi_civita(M))
    report = CheckReport(f"{M.name} curvature")
    for i, j, k, v in R.nonzero():
        report.add(f"R(e{i + 1},e{j + 1})e{k + 1} = {v.render()}", True)
    for i, j, k, vec, src in doc.expected.riem:
        got = R.entry(i, j, k)
        if got != vec:
            label = f"R(e{i + 1},e{j + 1})e{k + 1}"
            report.add_ledger(src, f"{label} = {vec.render()}",
                              f"{label} = {got.render()}")
    return report


def _ricci_report(doc: ManifoldDocument) -> CheckReport:
    M = doc.manifold
    ric_t = ricci(M, curvature(M, levi_civita(M)))
    report = CheckReport(f"{M.name} ricci")
    for j, k, v in ric_t.nonzero():
        report.add(f"ric[{j + 1}][{k + 1}] = {v.render()}", True)
    for i, j, q, src in doc.expected.ricci:
        got = ric_t.entry(i, j)
        if got != q:
            report.add_ledger(src, f"ric[{i + 1}][{j + 1}] = {q}",
                              f"ric[{i + 1}][{j + 1}] = {got.render()}")
    return report


def _expected_ricci_tensor(doc: ManifoldDocument) -> RicciTensor:
    M = doc.manifold
    if not doc.expected.ricci:
        raise UsageError(f"{M.name} declares no expected ricci values")
    tab = [[Fraction(0)] * M.dim for _ in range(M.dim)]
    for i, j, q, _src in doc.expected.ricci:
        tab[i][j] = q
        tab[j][i] = q
    from .scalars import ParamScalar
    return RicciTensor(M, tuple(tuple(ParamScalar.rational(x) for x in row)
                                for row in tab))


def _solve_lambda_report(doc: ManifoldDocument, field_text: str,
                         flavor: SolitonFlavor,
                         use_expected_ricci: bool) -> CheckReport:
    M = doc.manifold
    X = _parse_field(field_text, doc)
    conn = levi_civita(M)
    engine_ric = ricci(M, curvature(M, conn))
    if use_expected_ricci:
        ric_used = _expected_ricci_tensor(doc)
        srcs = ", ".join(sorted({s for _, _, _, s in doc.expected.ricci}))
        label = f" [ricci override: {srcs}]"
    else:
        ric_used = engine_ric
        label = ""
    solve = solve_lambda_trace(M, conn, ric_used, X, flavor)
    report = CheckReport(f"{M.name} solve-lambda [{flavor.value}] "
                         f"X = {X.render()}{label}")
    report.add(f"lambda = {solve.lam.render()}", True)
    report.add(f"trace equation: {solve.form.equation_str()}", True)
    report.add(f"status: {solve.status}", True)
    try:
        report.add(f"classification: {classify(solve.lam).render()}", True)
    except SolitonError:
        report.add("classification: unsupported", True)

    for lam_exp, src in doc.expected.lam:
        if lam_exp == solve.lam:
            continue
        expected_str = f"lambda = {lam_exp.render()}"
        if doc.expected.ricci:
            # show the trace equation the expected values would give
            alt = solve_lambda_trace(M, conn, _expected_ricci_tensor(doc),
                                     X, flavor)
            if alt.lam == lam_exp:
                expected_str += f" [trace: {alt.form.equation_str()}]"
        computed_str = (f"lambda = {solve.lam.render()} "
                        f"[trace: {solve.form.equation_str()}]")
        report.add_ledger(src, expected_str, computed_str)
    return report


def _defect_table(res) -> str:
    out = []
    for i, row in enumerate(res):
        for j, e in enumerate(row):
            if not e.is_zero():
                out.append(f"({i + 1},{j + 1}): {e.render()}")
    return "; ".join(out)


# -- command handlers ----------------------------------------------------------

def _cmd_validate(args) -> int:
    doc = _load(args)
    return _emit(validate(doc.manifold, strict=args.strict), args.format)


def _cmd_connection(args) -> int:
    return _emit(_connection_report(_load(args)), args.format)


def _cmd_curvature(args) -> int:
    return _emit(_curvature_report(_load(args)), args.format)


def _cmd_ricci(args) -> int:
    return _emit(_ricci_report(_load(args)), args.format)


def _cmd_check_contact(args) -> int:
    doc = _load(args)
    return _emit(check_almost_contact(doc.manifold, _require_contact(doc)),
                 args.format)


def _cmd_check_sasakian(args) -> int:
    doc = _load(args)
    conn = levi_civita(doc.manifold)
    return _emit(check_sasakian(doc.manifold, conn, _require_contact(doc)),
                 args.format)


def _cmd_check_normality(args) -> int:
    doc = _load(args)
    return _emit(check_normality(doc.manifold, _require_contact(doc)),
                 args.format)


def _cmd_solve_lambda(args) -> int:
    doc = _load(args)
    report = _solve_lambda_report(doc, args.field,
                                  SolitonFlavor(args.flavor),
                                  args.use_expected_ricci)
    return _emit(report, args.format)


def _cmd_check_soliton(args) -> int:
    doc = _load(args)
    M = doc.manifold
    X = _parse_field(args.field, doc)
    lam = _parse_lambda(args.lam, M)
    flavor = SolitonFlavor(args.flavor)
    conn = levi_civita(M)
    ric_t = ricci(M, curvature(M, conn))
    res = soliton_residual(M, conn, ric_t, X, lam, flavor)
    report = CheckReport(f"{M.name} soliton [{flavor.value}] X = {X.render()} "
                         f"lambda = {lam.render()}")
    ok = all(e.is_zero() for row in res for e in row)
    report.add("L_X g + 2 ric - s g = 0", ok, None if ok else _defect_table(res))
    return _emit(report, args.format)


def _cmd_check_gradient(args) -> int:
    doc = _load(args)
    M = doc.manifold
    df = _parse_fraction_list(args.df, M.dim, "--df")
    dlam = (None if args.dlambda is None
            else _parse_fraction_list(args.dlambda, M.dim, "--dlambda"))
    gd = GradientData.from_values(df, dlam)
    lam = _parse_lambda(args.lam, M)
    flavor = SolitonFlavor(args.flavor)
    conn = levi_civita(M)
    R = curvature(M, conn)
    ric_t = ricci(M, R)

    report = CheckReport(f"{M.name} gradient soliton [{flavor.value}] "
                         f"lambda = {lam.render()}")
    defects = integrability_defects(M, df)
    report.add("df integrable", not defects,
               "; ".join(f"({i + 1},{j + 1}): {d}" for (i, j), d in defects)
               if defects else None)
    if not defects:
        res = gradient_soliton_residual(M, conn, ric_t, gd, lam, flavor)
        ok = all(e.is_zero() for row in res for e in row)
        report.add("Hess f + ric - s' g = 0", ok,
                   None if ok else _defect_table(res))
        if dlam is not None:
            sub = check_gradient_curvature_identity(M, conn, R, ric_t, gd,
                                                    lam, flavor)
            for item in sub.items:
                report.add_item(item)
    return _emit(report, args.format)


def _cmd_theorem36(args) -> int:
    try:
        r = concurrent_soliton_constants(args.dim)
    except SolitonError as exc:
        raise UsageError(str(exc)) from exc
    report = CheckReport(f"concurrent potential constants, dim {r.dim}")
    report.add(f"lambda = {r.lam.render()}", True)
    report.add(f"einstein constant = {r.einstein_constant}", True)
    report.add(f"classification: {r.classification.render()}", True)
    return _emit(report, args.format)


def _cmd_verify_paper_example(args) -> int:
    doc = catalog.load_builtin("heisenberg5")
    M = doc.manifold
    D = doc.contact
    conn = levi_civita(M)
    R = curvature(M, conn)
    ric_t = ricci(M, R)

    sections = [validate(M, strict=True),
                _connection_report(doc),
                _curvature_report(doc),
                _ricci_report(doc)]

    scal = CheckReport(f"{M.name} scalar curvature")
    scal.add(f"r = {scalar_curvature(M, ric_t).render()}", True)
    sections.append(scal)

    sections.extend([
        check_almost_contact(M, D),
        check_sasakian(M, conn, D),
        check_normality(M, D),
        check_contact_metric(M, D),
        check_curvature_identity(M, R, D),
        check_reeb_ricci(M, ric_t, D),
    ])

    killing = CheckReport(f"{M.name} reeb field")
    ok, lx = is_killing(M, conn, FrameVector.from_values(D.xi))
    killing.add("L_xi g = 0", ok, None if ok else _defect_table(lx))
    sections.append(killing)

    sections.append(_solve_lambda_report(doc, "xi", SolitonFlavor.CONFORMAL,
                                         use_expected_ricci=False))
    sections.append(_solve_lambda_report(doc, "xi", SolitonFlavor.CONFORMAL,
                                         use_expected_ricci=True))

    r36 = concurrent_soliton_constants(M.dim)
    sec36 = CheckReport(f"concurrent potential constants, dim {M.dim}")
    sec36.add(f"lambda = {r36.lam.render()}", True)
    sec36.add(f"einstein constant = {r36.einstein_constant}", True)
    sec36.add(f"classification: {r36.classification.render()}", True)
    sections.append(sec36)

    return _emit(combine("heisenberg5 worked example", sections), args.format)


_HANDLERS = {
    "validate": _cmd_validate,
    "connection": _cmd_connection,
    "curvature": _cmd_curvature,
    "ricci": _cmd_ricci,
    "check-contact": _cmd_check_contact,
    "check-sasakian": _cmd_check_sasakian,
    "check-normality": _cmd_check_normality,
    "solve-lambda": _cmd_solve_lambda,
    "check-soliton": _cmd_check_soliton,
    "check-gradient": _cmd_check_gradient,
    "theorem36": _cmd_theorem36,
    "verify-paper-example": _cmd_verify_paper_example,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _HANDLERS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 3
    except (ScalarError, GeometryError, ContactError, SolitonError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
