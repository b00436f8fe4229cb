"""Built-in algebras, r-matrices and the worked-example fixtures."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .algebra import Algebra, AlgebraError, adjoin_unit, basis_vector, validate_algebra
from .poisson import PolyTensor, canonicalize, poly_add, poly_mul, ResidualReport
from .rational import parse_rational
from .yang_baxter import RMatrix


# ---------------------------------------------------------------------------
# Algebras
# ---------------------------------------------------------------------------

def quaternions() -> Algebra:
    labels = ("1", "i", "j", "k")
    # e_a e_b = sign * e_c
    table = {
        (1, 1): (0, -1), (2, 2): (0, -1), (3, 3): (0, -1),
        (1, 2): (3, 1), (2, 1): (3, -1),
        (2, 3): (1, 1), (3, 2): (1, -1),
        (3, 1): (2, 1), (1, 3): (2, -1),
    }
    structure = {}
    for a in range(4):
        structure[(0, a, a)] = 1
        structure[(a, 0, a)] = 1
    for (a, b), (c, s) in table.items():
        structure[(a, b, c)] = s
    return Algebra(4, structure, basis_vector(4, 0), labels, "quaternions")


def _matrix_units(n: int, keep) -> Algebra:
    units = [(p, q) for p in range(n) for q in range(n) if keep(p, q)]
    index = {pq: i for i, pq in enumerate(units)}
    structure = {}
    for (p, q), (s, t) in itertools.product(units, repeat=2):
        if q == s:
            structure[(index[(p, q)], index[(s, t)], index[(p, t)])] = 1
    unit = [0] * len(units)
    for p in range(n):
        unit[index[(p, p)]] = 1
    labels = tuple(f"e{p + 1}{q + 1}" for p, q in units)
    return structure, unit, labels


def matrix(n: int) -> Algebra:
    """Full matrix algebra with basis e_pq in row-major order."""
    _positive(n)
    structure, unit, labels = _matrix_units(n, lambda p, q: True)
    return Algebra(n * n, structure, unit, labels, f"matrix({n})")


def upper_triangular(n: int) -> Algebra:
    _positive(n)
    structure, unit, labels = _matrix_units(n, lambda p, q: p <= q)
    return Algebra(len(labels), structure, unit, labels, f"upper_triangular({n})")


def heisenberg(hbar=1) -> Algebra:
    """Heisenberg Lie algebra p, q, z with the associative product a*b = [a,b]/2."""
    h = Fraction(hbar)
    structure = {(0, 1, 2): h / 2, (1, 0, 2): -h / 2}
    return Algebra(3, structure, None, ("p", "q", "z"), f"heisenberg({h})")


def heisenberg_unital(hbar=1) -> Algebra:
    alg = adjoin_unit(heisenberg(hbar))
    return Algebra(alg.dim, alg.structure, alg.unit, alg.labels, f"heisenberg_unital({Fraction(hbar)})")


def componentwise(n: int) -> Algebra:
    _positive(n)
    structure = {(i, i, i): 1 for i in range(n)}
    return Algebra(n, structure, [1] * n, tuple(f"d{i + 1}" for i in range(n)), f"componentwise({n})")


def dual_numbers() -> Algebra:
    structure = {(0, 0, 0): 1, (0, 1, 1): 1, (1, 0, 1): 1}
    return Algebra(2, structure, basis_vector(2, 0), ("1", "eps"), "dual_numbers")


def _positive(n):
    if not isinstance(n, int) or n < 1:
        raise AlgebraError(f"size parameter must be a positive integer, got {n!r}")


_BUILDERS = {
    "quaternions": (quaternions, None),
    "matrix": (matrix, int),
    "upper_triangular": (upper_triangular, int),
    "heisenberg": (heisenberg, parse_rational),
    "heisenberg_unital": (heisenberg_unital, parse_rational),
    "componentwise": (componentwise, int),
    "dual_numbers": (dual_numbers, None),
}

ALGEBRA_NAMES = tuple(_BUILDERS)


@lru_cache(maxsize=None)
def _cached(name, param):
    builder, _ = _BUILDERS[name]
    alg = builder() if param is None else builder(param)
    report = validate_algebra(alg)
    assert report.passed, f"catalog algebra {name} failed validation"
    return alg


def get_algebra(name: str, param=None) -> Algebra:
    """Catalog algebra by name.  ``"matrix:3"`` and ``("matrix", 3)`` are equivalent."""
    if param is None and ":" in name:
        name, text = name.split(":", 1)
        param = text
    if name not in _BUILDERS:
        raise AlgebraError(f"unknown catalog algebra {name!r}; known: {', '.join(ALGEBRA_NAMES)}")
    _, conv = _BUILDERS[name]
    if conv is None:
        if param is not None:
            raise AlgebraError(f"{name} takes no parameter")
        return _cached(name, None)
    if param is None:
        param = 1 if conv is parse_rational else 2
    try:
        param = conv(param)
    except ValueError as exc:
        raise AlgebraError(f"invalid parameter for {name}: {param!r}") from exc
    return _cached(name, param)


# ---------------------------------------------------------------------------
# r-matrix shorthand
# ---------------------------------------------------------------------------

_TERM = re.compile(r"^(?:(-?\d+(?:/\d+)?)\s*\*\s*)?([^\s^*]+)\s*\^\s*([^\s^*]+)$")


def parse_r(alg: Algebra, text: str) -> RMatrix:
    """Parse ``"j^k"``, ``"1/2*i^j - 2*j^k"`` etc. over basis labels.

    ``a^b`` stands for ``a (x) b - b (x) a``.
    """
    if not alg.labels:
        raise AlgebraError("r-matrix shorthand needs basis labels")
    index = {lab: i for i, lab in enumerate(alg.labels)}
    src = text.replace(" ", "")
    if not src:
        raise AlgebraError("empty r-matrix expression")
    terms = re.findall(r"[+-]?[^+-]+", src)
    r = RMatrix(alg.dim, {})
    for term in terms:
        sign = 1
        if term[0] in "+-":
            sign = -1 if term[0] == "-" else 1
            term = term[1:]
        m = _TERM.match(term)
        if not m or m.group(2) not in index or m.group(3) not in index:
            raise AlgebraError(f"cannot parse r-matrix term {term!r} over basis {alg.labels}")
        coef = sign * (parse_rational(m.group(1)) if m.group(1) else Fraction(1))
        a, b = index[m.group(2)], index[m.group(3)]
        if a == b:
            raise AlgebraError(f"degenerate wedge {term!r}")
        r = r + RMatrix.wedge(alg.dim, a, b, coef)
    return r


def quaternion_r(a, b, c) -> RMatrix:
    """``a i^j + b i^k + c j^k`` in the basis 1, i, j, k."""
    return RMatrix.from_upper(4, [(1, 2, a), (1, 3, b), (2, 3, c)])


# ---------------------------------------------------------------------------
# Printed quaternion bracket table
# ---------------------------------------------------------------------------

def quaternion_expected(a, b, c) -> PolyTensor:
    """The six-row bracket table for ``r = a i^j + b i^k + c j^k`` exactly as printed.

    Coordinates x1..x4 (indices 0..3) are dual to 1, i, j, k.  Rows
    ``{x2,x3}``, ``{x2,x4}`` and ``{x3,x4}`` each carry one sign that
    disagrees with the derivation (see :data:`QUATERNION_MISPRINTS`); at
    ``(0, 0, 1)`` only the ``{x2,x4}`` one is visible.
    """
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    rows = [
        # {x1,x2} = x2(b x3 - a x4) + c(x3^2 + x4^2)
        (0, 1, {(1, 2): b, (1, 3): -a, (2, 2): c, (3, 3): c}),
        # {x1,x3} = -x3(c x2 + a x4) - b(x2^2 + x4^2)
        (0, 2, {(1, 2): -c, (2, 3): -a, (1, 1): -b, (3, 3): -b}),
        # {x1,x4} = x4(-c x2 + b x3) + a(x2^2 + x3^2)
        (0, 3, {(1, 3): -c, (2, 3): b, (1, 1): a, (2, 2): a}),
        # {x2,x3} = x1(-b x2 + c x3)
        (1, 2, {(0, 1): -b, (0, 2): c}),
        # {x2,x4} = -x1(a x2 + c x4)
        (1, 3, {(0, 1): -a, (0, 3): -c}),
        # {x3,x4} = x1(a x3 - b x4)
        (2, 3, {(0, 2): a, (0, 3): -b}),
    ]
    raw = [(i, j, mono, v) for i, j, poly in rows for mono, v in poly.items()]
    return canonicalize(4, 2, raw)


# pair (1, 3) is the {x2, x4} row
QUATERNION_ARBITRATION_ROWS = ((1, 3),)

# Every printed coefficient that disagrees with the derivation, keyed by
# (pair, monomial) with the family parameter it multiplies.  At (0, 0, 1)
# only the {x2, x4} entry is visible.
QUATERNION_MISPRINTS = {
    ((1, 2), (0, 1)): "b",
    ((1, 3), (0, 3)): "c",
    ((2, 3), (0, 2)): "a",
}


def expected_misprints(a, b, c) -> set:
    """Misprinted ``(i, j, monomial)`` keys visible at parameters (a, b, c)."""
    values = {"a": Fraction(a), "b": Fraction(b), "c": Fraction(c)}
    return {(i, j, mono) for ((i, j), mono), p in QUATERNION_MISPRINTS.items() if values[p]}


def quaternion_arbitration(derived: PolyTensor, printed: PolyTensor) -> list:
    """Coefficients where the derived and printed tables differ: ``(i, j, mono, derived, printed)``."""
    keys = set()
    for i, j, mono, _ in derived.entries():
        keys.add((i, j, mono))
    for i, j, mono, _ in printed.entries():
        keys.add((i, j, mono))
    out = []
    for i, j, mono in sorted(keys):
        d = derived.component(i, j).get(mono, Fraction(0))
        p = printed.component(i, j).get(mono, Fraction(0))
        if d != p:
            out.append((i, j, mono, d, p))
    return out


# ---------------------------------------------------------------------------
# Sphere Casimir
# ---------------------------------------------------------------------------

def sphere_casimir_residual(qt: PolyTensor) -> ResidualReport:
    """Coefficients of ``{x^i, N} = 2 sum_k x^k pi^{ik}(x)`` with ``N = sum_k (x^k)^2``."""
    if qt.dim != 4:
        raise AlgebraError(f"sphere Casimir check is defined on dim 4, got {qt.dim}")
    entries = []
    for i in range(4):
        acc: dict = {}
        for k in range(4):
            comp = qt.component(i, k)
            if comp:
                poly_add(acc, poly_mul({(k,): Fraction(2)}, comp))
        entries.extend(((i, mono), v) for mono, v in sorted(acc.items()))
    return ResidualReport("casimir", entries, 4)


# ---------------------------------------------------------------------------
# Worked-example fixtures
# ---------------------------------------------------------------------------

@dataclass
class ExampleCase:
    """One worked example with expected values and their provenance.

    ``provenance`` maps each expected quantity to ``"published: ..."`` or
    ``"derived: <oracle>"``.  ``arbitration`` names the oracle used wherever
    the printed value and the derivation disagree.
    """

    name: str
    algebra: Algebra
    r: RMatrix | None = None
    scale: Fraction = Fraction(1)
    expected: dict = field(default_factory=dict)
    provenance: dict = field(default_factory=dict)
    arbitration: dict = field(default_factory=dict)
    numeric: dict = field(default_factory=dict)


def nilpot_bracket_formula(g: Algebra, r: RMatrix) -> PolyTensor:
    """Linear bracket ``{x^p, x^q} = 2 (r^{pl} a_{li}^q + r^{lq} a_{li}^p) x^i`` on g*."""
    n = g.dim
    raw = []
    for p, q in itertools.combinations(range(n), 2):
        for i in range(n):
            v = Fraction(0)
            for l in range(n):
                v += r.data.get((p, l), 0) * g.structure.get((l, i, q), 0)
                v += r.data.get((l, q), 0) * g.structure.get((l, i, p), 0)
            if v:
                raw.append((p, q, (i,), 2 * v))
    return canonicalize(n, 1, raw)


def paper_examples() -> list[ExampleCase]:
    upper = get_algebra("upper_triangular", 2)  # basis e11, e12, e22
    h = quaternions()
    hb = heisenberg(1)
    hu = heisenberg_unital(1)
    return [
        ExampleCase(
            "ab-ba",
            upper,
            RMatrix.wedge(3, 0, 1),
            Fraction(1),
            expected={"lie_bracket": ("e11", "e12", "e12"), "cybe": "zero"},
            provenance={"lie_bracket": "published: [a,b] = s b with s = 1", "cybe": "published: r = a^b solves CYBE"},
        ),
        ExampleCase(
            "Quaternions",
            h,
            quaternion_r(0, 0, 1),
            Fraction(1, 2),
            expected={
                "family_grid": (-2, -1, 0, 1, 2),
                "table": "quaternion_expected(a, b, c)",
                "casimir": "zero for the derived bracket",
            },
            provenance={
                "table": "published, except the signs listed in QUATERNION_MISPRINTS (only {x2,x4} at (0,0,1))",
                "{x2,x4}": "derived: direct expansion of (1/2)[r, X(x)X]; printed -x1(a x2 + c x4), derived +x1(a x2 + c x4)",
                "casimir": "derived: expansion of 2 sum_k x^k pi^{ik}",
            },
            arbitration={
                "rows": [list(p) for p in QUATERNION_ARBITRATION_ROWS],
                "oracles": ["jacobiator", "sphere_casimir_residual", "direct expansion of [r, x(x)x]"],
            },
        ),
        ExampleCase(
            "Nilpot",
            hb,
            RMatrix.wedge(3, 0, 1),
            Fraction(1),
            expected={
                "bracket_on_g": "zero",
                "unital_linear": {(1, 3): "-hbar x^1", (2, 3): "-hbar x^2", (1, 2): "0"},
                "unital_algebra": hu,
            },
            provenance={
                "bracket_on_g": "published: zero Poisson bracket on g",
                "unital_linear": "published: linear bracket formula on 1 + g; derived: Delta_u* of ad_r at scale 1",
            },
        ),
        ExampleCase(
            "Iso",
            componentwise(2),
            None,
            Fraction(1),
            expected={"multiplicative": "residual < tol", "pushforward": "{xi, eta} = xi"},
            provenance={
                "multiplicative": "published: log bracket compatible with multiplication",
                "pushforward": "derived: chain rule with xi = log x, eta = log y",
            },
            numeric={"samples": 100, "seed": 0, "low": 0.05, "high": 2.0, "tol": 1e-9},
        ),
    ]
