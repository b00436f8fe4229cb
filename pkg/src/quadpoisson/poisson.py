"""Homogeneous polynomial (pre-)Poisson tensors in linear coordinates on A.

A polynomial is a dict mapping a sorted tuple of variable indices (the
monomial ``x^{k1} ... x^{kd}``) to its Fraction coefficient.  A
:class:`PolyTensor` stores ``pi^{ij}(x)`` for ``i < j`` only; the other half
follows from antisymmetry.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .algebra import Algebra, DimensionError, AlgebraError
from .rational import emit_rational, parse_rational


# ---------------------------------------------------------------------------
# Sparse polynomials
# ---------------------------------------------------------------------------

def poly_add(acc: dict, p: Mapping, scale=1) -> dict:
    """``acc += scale * p`` in place, dropping cancelled terms."""
    for mono, v in p.items():
        w = acc.get(mono, 0) + scale * v
        if w:
            acc[mono] = w
        else:
            acc.pop(mono, None)
    return acc


def poly_mul(p: Mapping, q: Mapping) -> dict:
    out: dict = {}
    for m1, v1 in p.items():
        for m2, v2 in q.items():
            mono = tuple(sorted(m1 + m2))
            w = out.get(mono, 0) + v1 * v2
            if w:
                out[mono] = w
            else:
                out.pop(mono, None)
    return out


def poly_diff(p: Mapping, var: int) -> dict:
    out: dict = {}
    for mono, v in p.items():
        power = mono.count(var)
        if power:
            i = mono.index(var)
            reduced = mono[:i] + mono[i + 1:]
            out[reduced] = out.get(reduced, 0) + power * v
    return {m: v for m, v in out.items() if v}


def poly_eval(p: Mapping, x: Sequence):
    total = 0
    for mono, v in p.items():
        term = v
        for k in mono:
            term = term * x[k]
        total = total + term
    return total


def poly_str(p: Mapping, names=None) -> str:
    if not p:
        return "0"
    parts = []
    for mono, v in sorted(p.items()):
        powers: dict = {}
        for k in mono:
            powers[k] = powers.get(k, 0) + 1
        factors = []
        for k, e in sorted(powers.items()):
            name = names[k] if names else f"x{k + 1}"
            factors.append(name if e == 1 else f"{name}^{e}")
        parts.append("*".join([emit_rational(v)] + factors) if factors else emit_rational(v))
    return " + ".join(parts)


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------

@dataclass
class ResidualReport:
    """Outcome of an exact identity check.

    ``entries`` lists every nonzero residual coefficient as
    ``(index tuple, value)``; the check passes iff there are none.
    """

    name: str
    entries: list = field(default_factory=list)
    checked: int = 0
    notes: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.entries

    def to_json(self, limit: int | None = None) -> dict:
        shown = self.entries if limit is None else self.entries[:limit]
        return {
            "check": self.name,
            "pass": self.passed,
            "checked": self.checked,
            "nonzero": len(self.entries),
            "residuals": [[list(_flatten(idx)), emit_rational(v)] for idx, v in shown],
            **({"notes": self.notes} if self.notes else {}),
        }


def _flatten(idx):
    for part in idx:
        if isinstance(part, tuple):
            yield from _flatten(part)
        else:
            yield part


# ---------------------------------------------------------------------------
# Poisson tensors
# ---------------------------------------------------------------------------

@dataclass(eq=False)
class PolyTensor:
    """Antisymmetric polynomial tensor ``pi^{ij}(x)``, homogeneous of ``degree``."""

    dim: int
    degree: int
    components: dict = field(default_factory=dict)  # (i, j) with i < j -> poly

    def __post_init__(self):
        clean = {}
        for (i, j), p in self.components.items():
            if not i < j:
                raise AlgebraError(f"component key must satisfy i < j, got {(i, j)}")
            p = {tuple(m): Fraction(v) for m, v in p.items() if v}
            if p:
                clean[(i, j)] = p
        self.components = clean

    def component(self, i: int, j: int) -> dict:
        if i < j:
            return self.components.get((i, j), {})
        if i > j:
            return {m: -v for m, v in self.components.get((j, i), {}).items()}
        return {}

    def coefficient(self, i: int, j: int, lower: Sequence[int]) -> Fraction:
        """Symmetrized coefficient ``c^{ij}_{k1..kd}`` (monomial coefficient / multinomial)."""
        mono = tuple(sorted(lower))
        value = self.component(i, j).get(mono, Fraction(0))
        if not value:
            return Fraction(0)
        return value / _multinomial(mono)

    def entries(self, full: bool = False):
        """Yield ``(i, j, monomial, value)`` in lexicographic order."""
        for (i, j) in sorted(self.components):
            for mono, v in sorted(self.components[(i, j)].items()):
                yield i, j, mono, v
                if full:
                    yield j, i, mono, -v

    def is_zero(self) -> bool:
        return not self.components

    def __eq__(self, other):
        if not isinstance(other, PolyTensor):
            return NotImplemented
        return (self.dim, self.components) == (other.dim, other.components) and (
            self.is_zero() or self.degree == other.degree
        )

    def __add__(self, other: "PolyTensor") -> "PolyTensor":
        _same_dim(self, other)
        if other.degree != self.degree and not (self.is_zero() or other.is_zero()):
            raise DimensionError("cannot add homogeneous tensors of different degree")
        out = {k: dict(v) for k, v in self.components.items()}
        for k, p in other.components.items():
            poly_add(out.setdefault(k, {}), p)
        degree = other.degree if self.is_zero() else self.degree
        return PolyTensor(self.dim, degree, out)

    def __rmul__(self, scalar) -> "PolyTensor":
        s = Fraction(scalar)
        return PolyTensor(self.dim, self.degree, {k: {m: s * v for m, v in p.items()} for k, p in self.components.items()})

    def __sub__(self, other):
        return self + (-1) * other

    def __repr__(self):
        rows = "; ".join(f"{{x{i + 1},x{j + 1}}} = {poly_str(p)}" for (i, j), p in sorted(self.components.items()))
        return f"PolyTensor(dim={self.dim}, degree={self.degree}: {rows or '0'})"

    def table(self) -> str:
        lines = []
        for i, j in itertools.combinations(range(self.dim), 2):
            lines.append(f"{{x{i + 1},x{j + 1}}} = {poly_str(self.component(i, j))}")
        return "\n".join(lines)


def _multinomial(mono: tuple) -> int:
    from math import factorial

    counts: dict = {}
    for k in mono:
        counts[k] = counts.get(k, 0) + 1
    out = factorial(len(mono))
    for c in counts.values():
        out //= factorial(c)
    return out


def _same_dim(a, b):
    if a.dim != b.dim:
        raise DimensionError(f"dimension mismatch: {a.dim} vs {b.dim}")


def canonicalize(dim: int, degree: int, raw: Iterable) -> PolyTensor:
    """Build a canonical tensor from raw ``(i, j, lower indices, value)`` entries.

    Lower indices are merged by sorted multi-index, so ``c^{12}_{12}`` and
    ``c^{12}_{21}`` add up to one monomial coefficient.  An entry given for
    ``(i, j)`` only is completed antisymmetrically; if both orientations are
    given they must agree up to sign.  Diagonal entries are dropped.
    """
    given: dict = {}
    for i, j, lower, value in raw:
        lower = tuple(lower)
        if len(lower) != degree:
            raise DimensionError(f"entry {(i, j, lower)} does not have degree {degree}")
        if any(not (0 <= k < dim) for k in (i, j) + lower):
            raise DimensionError(f"entry {(i, j, lower)} out of range for dim {dim}")
        if i == j:
            continue
        key = (i, j, tuple(sorted(lower)))
        given[key] = given.get(key, 0) + Fraction(value)
    comps: dict = {}
    for (i, j, mono), v in given.items():
        other = given.get((j, i, mono))
        if other is not None and other != -v:
            raise AlgebraError(f"inconsistent orientations for {{x{i},x{j}}} monomial {mono}: {v} vs {other}")
        if i < j:
            comps.setdefault((i, j), {})[mono] = v
        elif other is None:
            comps.setdefault((j, i), {})[mono] = -v
    return PolyTensor(dim, degree, comps)


def quadratic_tensor(dim: int, entries: Iterable) -> PolyTensor:
    """Quadratic tensor from ``(i, j, k, l, value)`` meaning ``c^{ij}_{kl}``."""
    return canonicalize(dim, 2, ((i, j, (k, l), v) for i, j, k, l, v in entries))


def linear_tensor(dim: int, entries: Iterable) -> PolyTensor:
    """Linear tensor from ``(i, j, k, value)`` meaning ``{x^i, x^j} = b^{ij}_k x^k``."""
    return canonicalize(dim, 1, ((i, j, (k,), v) for i, j, k, v in entries))


def from_components(dim: int, degree: int, comps: Mapping) -> PolyTensor:
    """From a mapping ``(i, j) -> poly`` that is antisymmetric (or given for i<j)."""
    raw = []
    for (i, j), p in comps.items():
        for mono, v in p.items():
            raw.append((i, j, mono, v))
    return canonicalize(dim, degree, raw)


# ---------------------------------------------------------------------------
# Jacobi identity
# ---------------------------------------------------------------------------

def _jacobi_terms(p: PolyTensor, q: PolyTensor, i: int, j: int, k: int) -> dict:
    """``sum_cyc p^{lk} d_l q^{ij}`` over cyclic shifts of (i, j, k)."""
    acc: dict = {}
    for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
        qab = q.component(a, b)
        if not qab:
            continue
        for l in range(p.dim):
            d = poly_diff(qab, l)
            if d:
                plc = p.component(l, c)
                if plc:
                    poly_add(acc, poly_mul(plc, d))
    return acc


def _jacobi_report(name, p, q, symmetric_pair) -> ResidualReport:
    _same_dim(p, q)
    n = p.dim
    entries = []
    checked = 0
    for i, j, k in itertools.combinations(range(n), 3):
        res = _jacobi_terms(p, q, i, j, k)
        if not symmetric_pair:
            poly_add(res, _jacobi_terms(q, p, i, j, k))
        for mono, v in sorted(res.items()):
            entries.append(((i, j, k, mono), v))
        checked += 1
    return ResidualReport(name, entries, checked)


def jacobiator(pi: PolyTensor) -> ResidualReport:
    """Coefficients of ``J^{ijk} = pi^{lk} d_l pi^{ij} + cyclic`` for i < j < k.

    Entries are ``((i, j, k, monomial), coefficient)``.
    """
    return _jacobi_report("jacobi", pi, pi, True)


def jacobiator_polys(pi: PolyTensor) -> dict:
    """Full ``(i, j, k) -> polynomial`` expansion over all index triples."""
    n = pi.dim
    return {
        (i, j, k): _jacobi_terms(pi, pi, i, j, k)
        for i, j, k in itertools.product(range(n), repeat=3)
    }


def jacobi_mixed(p1: PolyTensor, p2: PolyTensor) -> ResidualReport:
    """Polarized Jacobiator ``J(p1 + p2) - J(p1) - J(p2)``.

    Together with ``J(p1) = J(p2) = 0`` its vanishing is equivalent to every
    combination ``a p1 + b p2`` being Poisson.
    """
    return _jacobi_report("jacobi-mixed", p1, p2, False)


# ---------------------------------------------------------------------------
# Compatibility with the algebra product
# ---------------------------------------------------------------------------

def _linear_poly(coeffs: Mapping[int, Fraction]) -> dict:
    return {(k,): v for k, v in coeffs.items() if v}


def multiplicativity_residual(alg: Algebra, pi: PolyTensor) -> ResidualReport:
    """Exact residual of ``pi(y z) = R_z pi(y) R_z^T + L_y pi(z) L_y^T``.

    Both sides are polynomials in 2n indeterminates: ``y`` occupies variables
    ``0..n-1`` and ``z`` occupies ``n..2n-1``.  Entries are
    ``((i, j, monomial), value)`` for i < j.
    """
    n = alg.dim
    if pi.dim != n:
        raise DimensionError(f"bracket dim {pi.dim} vs algebra dim {n}")
    # (y z)^k = a[p, q, k] y^p z^q
    w = [dict() for _ in range(n)]
    for (p, q, k), v in alg.structure.items():
        mono = (p, n + q)
        w[k][mono] = w[k].get(mono, 0) + v
    # left/right multiplication entries: (e_p z)^i = a[p,q,i] z^q  and  (y e_q)^i = a[p,q,i] y^p
    right: dict = {}  # (i, p) -> linear poly in z
    left: dict = {}  # (i, q) -> linear poly in y
    for (p, q, i), v in alg.structure.items():
        poly_add(right.setdefault((i, p), {}), {(n + q,): v})
        poly_add(left.setdefault((i, q), {}), {(p,): v})
    shifted = {}
    for (p, s), poly in pi.components.items():
        shifted[(p, s)] = {tuple(n + k for k in mono): v for mono, v in poly.items()}

    def pi_y(p, s):
        return pi.component(p, s)

    def pi_z(p, s):
        if p < s:
            return shifted.get((p, s), {})
        if p > s:
            return {m: -v for m, v in shifted.get((s, p), {}).items()}
        return {}

    rows_r = {}
    rows_l = {}
    for (i, p), poly in right.items():
        rows_r.setdefault(i, []).append((p, poly))
    for (i, q), poly in left.items():
        rows_l.setdefault(i, []).append((q, poly))

    entries = []
    checked = 0
    wprod: dict = {}
    for i, j in itertools.combinations(range(n), 2):
        lhs: dict = {}
        for mono, c in pi.component(i, j).items():
            key = mono
            if key not in wprod:
                prod = {(): Fraction(1)}
                for k in mono:
                    prod = poly_mul(prod, w[k])
                wprod[key] = prod
            poly_add(lhs, wprod[key], c)
        rhs: dict = {}
        for rows, piv in ((rows_r, pi_y), (rows_l, pi_z)):
            for p, fp in rows.get(i, []):
                for s, fs in rows.get(j, []):
                    core = piv(p, s)
                    if core:
                        poly_add(rhs, poly_mul(poly_mul(fp, fs), core))
        poly_add(lhs, rhs, -1)
        for mono, v in sorted(lhs.items()):
            entries.append(((i, j, mono), v))
        checked += 1
    return ResidualReport("multiplicative", entries, checked)


def unit_vanishing(alg: Algebra, pi: PolyTensor) -> ResidualReport:
    """Values ``pi^{ij}(u)``; a multiplicative bracket vanishes at the unit."""
    u = alg.require_unit()
    if pi.dim != alg.dim:
        raise DimensionError(f"bracket dim {pi.dim} vs algebra dim {alg.dim}")
    entries = []
    for i, j in itertools.combinations(range(alg.dim), 2):
        v = Fraction(poly_eval(pi.component(i, j), u))
        if v:
            entries.append(((i, j), v))
    return ResidualReport("unit-vanishing", entries, alg.dim * (alg.dim - 1) // 2)


def evaluate(pi: PolyTensor, x: Sequence) -> list:
    """The n x n table ``pi^{ij}(x)``; exact for Fraction input, float otherwise."""
    n = pi.dim
    if len(x) != n:
        raise DimensionError(f"point of length {len(x)} for dim {n}")
    zero = x[0] * 0 if n else 0
    out = [[zero for _ in range(n)] for _ in range(n)]
    for (i, j), p in pi.components.items():
        v = poly_eval(p, x)
        out[i][j] = v
        out[j][i] = -v
    return out


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------

def bracket_to_json(pi: PolyTensor) -> dict:
    return {
        "degree": pi.degree,
        "dim": pi.dim,
        "c": [[i, j, *mono, emit_rational(v)] for i, j, mono, v in pi.entries()],
    }


def bracket_from_json(obj: Mapping) -> PolyTensor:
    try:
        degree, dim, rows = obj["degree"], obj["dim"], obj["c"]
    except (KeyError, TypeError) as exc:
        raise AlgebraError(f"malformed bracket document: {exc}") from exc
    raw = []
    for row in rows:
        if not isinstance(row, (list, tuple)) or len(row) != degree + 3:
            raise AlgebraError(f"bracket entry must have {degree + 3} fields: {row!r}")
        *idx, value = row
        if not all(isinstance(k, int) and not isinstance(k, bool) for k in idx):
            raise AlgebraError(f"bracket indices must be integers: {row!r}")
        raw.append((idx[0], idx[1], tuple(idx[2:]), parse_rational(value)))
    return canonicalize(dim, degree, raw)
