"""Built-in manifold fixtures.

Each fixture is stored as manifold-format text and parsed on demand, so the
catalog exercises the same code path as user files. The heisenberg5 entry
transcribes a published 5-dimensional worked example together with its
printed connection, curvature, Ricci and lambda values as expect lines; the
engine recomputes everything from the brackets and reports any printed value
it cannot reproduce in the discrepancy ledger.
"""
from __future__ import annotations

from .manifold_format import ManifoldDocument, parse_manifold

FIXTURES: dict = {}

FIXTURES["heisenberg5"] = """\
# Five-dimensional Heisenberg-type frame: [e1,e2] = [e4,e5] = 2 e3,
# orthonormal frame metric, Reeb field e3.
manifold heisenberg5 dim 5
bracket e1 e2 = 2e3
bracket e4 e5 = 2e3
metric identity
contact xi = e3
contact phi e1 = e2
contact phi e2 = -e1
contact phi e4 = e5
contact phi e5 = -e4

# Printed connection table. The source text lists "nabla_e2 e3 = nabla_e1 e2
# = e1"; the first equation is kept as the e2,e3 entry and the repeated
# nabla_e1 e2 assignment is transcribed verbatim below so the audit shows it.
expect nabla e1 e2 = e3 source "connection table"
expect nabla e4 e5 = e3 source "connection table"
expect nabla e1 e3 = -e2 source "connection table"
expect nabla e3 e1 = -e2 source "connection table"
expect nabla e2 e1 = -e3 source "connection table"
expect nabla e2 e3 = e1 source "connection table"
expect nabla e1 e2 = e1 source "connection table, duplicated assignment"
expect nabla e3 e5 = e4 source "connection table"
expect nabla e4 e3 = -e5 source "connection table"

# Printed curvature components.
expect riem e1 e2 e1 = 3e2 source "curvature list"
expect riem e2 e3 e1 = -e3 source "curvature list"
expect riem e2 e3 e2 = -e3 source "curvature list"
expect riem e2 e4 e1 = -e5 source "curvature list"
expect riem e1 e2 e2 = -e1 source "curvature list"
expect riem e1 e2 e5 = -2e4 source "curvature list"
expect riem e2 e4 e5 = e1 source "curvature list"
expect riem e2 e5 e1 = e4 source "curvature list"
expect riem e1 e3 e1 = -e3 source "curvature list"
expect riem e1 e3 e3 = e1 source "curvature list"
expect riem e3 e4 e3 = -e4 source "curvature list"
expect riem e4 e5 e1 = 2e2 source "curvature list"
expect riem e1 e4 e2 = e5 source "curvature list"
expect riem e1 e4 e5 = -e2 source "curvature list"
expect riem e4 e5 e2 = -2e1 source "curvature list"
expect riem e4 e5 e4 = 2e5 source "curvature list"
expect riem e1 e5 e4 = e2 source "curvature list"
expect riem e4 e5 e5 = -2e4 source "curvature list"

# Printed Ricci diagonal, Eq (3.33).
expect ricci 1 1 = -2 source "Eq (3.33)"
expect ricci 2 2 = 3 source "Eq (3.33)"
expect ricci 3 3 = 4 source "Eq (3.33)"
expect ricci 4 4 = 4 source "Eq (3.33)"
expect ricci 5 5 = -1 source "Eq (3.33)"

# Printed soliton constant for X = xi, conformal flavor.
expect lambda = 1/2*p + 9/5 source "lambda after Eq (3.34)"
"""

FIXTURES["heisenberg3"] = """\
# Three-dimensional Heisenberg frame: [e1,e2] = 2 e3.
manifold heisenberg3 dim 3
bracket e1 e2 = 2e3
metric identity
contact xi = e3
contact phi e1 = e2
contact phi e2 = -e1
"""

FIXTURES["abelian3"] = """\
# Flat abelian frame in dimension 3; contact data without the contact metric.
manifold abelian3 dim 3
metric identity
contact xi = e3
contact phi e1 = e2
contact phi e2 = -e1
"""

FIXTURES["abelian5"] = """\
# Flat abelian frame in dimension 5.
manifold abelian5 dim 5
metric identity
contact xi = e3
contact phi e1 = e2
contact phi e2 = -e1
contact phi e4 = e5
contact phi e5 = -e4
"""

FIXTURES["nonjacobi3"] = """\
# Antisymmetric bracket table that violates the Jacobi identity on (1,2,3);
# strict validation rejects it, the connection machinery still runs.
manifold nonjacobi3 dim 3
bracket e1 e2 = e3
bracket e1 e3 = e1
metric identity
"""


def builtin_names() -> list:
    return sorted(FIXTURES)


def load_builtin(name: str) -> ManifoldDocument:
    if name not in FIXTURES:
        raise KeyError(f"unknown builtin {name!r}; available: "
                       + ", ".join(builtin_names()))
    return parse_manifold(FIXTURES[name])
