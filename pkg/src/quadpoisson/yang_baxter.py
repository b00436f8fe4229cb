"""r-matrices, Schouten brackets and the quadratic brackets ``delta = ad_r``."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .algebra import (
    Algebra,
    AlgebraError,
    DimensionError,
    Tensor,
    basis_vector,
    embed_leg,
    s_tensor,
    tensor2_multiply,
    tensor3_commutator,
)
from .poisson import PolyTensor, ResidualReport, canonicalize
from .rational import emit_rational, parse_rational


@dataclass(eq=False)
class RMatrix:
    """Antisymmetric ``r = r^{ij} e_i (x) e_j``; ``data`` holds both (i,j) and (j,i)."""

    dim: int
    data: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (i, j), v in self.data.items():
            if not (0 <= i < self.dim and 0 <= j < self.dim):
                raise DimensionError(f"r-matrix index {(i, j)} out of range for dim {self.dim}")
            v = Fraction(v)
            if v:
                clean[(i, j)] = v
        for (i, j), v in clean.items():
            if clean.get((j, i), Fraction(0)) != -v:
                raise AlgebraError(f"r-matrix is not antisymmetric at {(i, j)}")
        self.data = clean

    @classmethod
    def from_upper(cls, dim: int, entries: Iterable) -> "RMatrix":
        """From ``(i, j, value)`` triples, completing antisymmetrically.

        A pair listed in both orientations must carry opposite values.
        """
        data: dict = {}
        for i, j, v in entries:
            v = Fraction(v)
            if i == j:
                if v:
                    raise AlgebraError(f"diagonal r-matrix entry {(i, j)} must vanish")
                continue
            if (i, j) in data and data[(i, j)] != v:
                raise AlgebraError(f"inconsistent r-matrix entries for {(i, j)}")
            data[(i, j)] = v
            if (j, i) in data and data[(j, i)] != -v:
                raise AlgebraError(f"inconsistent r-matrix entries for {(i, j)}/{(j, i)}")
            data[(j, i)] = -v
        return cls(dim, data)

    @classmethod
    def wedge(cls, dim: int, i: int, j: int, coef=1) -> "RMatrix":
        """``coef * (e_i (x) e_j - e_j (x) e_i)``."""
        return cls.from_upper(dim, [(i, j, coef)])

    def __add__(self, other: "RMatrix") -> "RMatrix":
        out = dict(self.data)
        for k, v in other.data.items():
            out[k] = out.get(k, 0) + v
        return RMatrix(self.dim, out)

    def __rmul__(self, scalar) -> "RMatrix":
        s = Fraction(scalar)
        return RMatrix(self.dim, {k: s * v for k, v in self.data.items()})

    def __eq__(self, other):
        return isinstance(other, RMatrix) and (self.dim, self.data) == (other.dim, other.data)

    def as_tensor(self) -> Tensor:
        return Tensor(self.dim, 2, self.data)

    def upper(self) -> list:
        return [(i, j, v) for (i, j), v in sorted(self.data.items()) if i < j]


def rmatrix_to_json(r: RMatrix) -> dict:
    return {"dim": r.dim, "r": [[i, j, emit_rational(v)] for i, j, v in r.upper()]}


def rmatrix_from_json(obj: Mapping) -> RMatrix:
    try:
        dim, rows = obj["dim"], obj["r"]
    except (KeyError, TypeError) as exc:
        raise AlgebraError(f"malformed r-matrix document: {exc}") from exc
    entries = []
    for row in rows:
        if not isinstance(row, (list, tuple)) or len(row) != 3:
            raise AlgebraError(f"r-matrix entry must be [i, j, value]: {row!r}")
        i, j, v = row
        if not all(isinstance(k, int) and not isinstance(k, bool) for k in (i, j)):
            raise AlgebraError(f"r-matrix indices must be integers: {row!r}")
        entries.append((i, j, parse_rational(v)))
    return RMatrix.from_upper(dim, entries)


def _check(alg: Algebra, obj):
    if obj.dim != alg.dim:
        raise DimensionError(f"dimension {obj.dim} does not match algebra dim {alg.dim}")


# ---------------------------------------------------------------------------
# delta = ad_r
# ---------------------------------------------------------------------------

def quadratic_from_r(alg: Algebra, r: RMatrix, scale=1) -> PolyTensor:
    """Quadratic tensor of ``pi(x) = scale * [r, x (x) x]``.

    Coefficients ``scale * r^{pq} (a_{pk}^i a_{ql}^j - a_{kp}^i a_{lq}^j)``.
    """
    _check(alg, r)
    scale = Fraction(scale)
    n = alg.dim
    coeff: dict = {}
    for (p, q), rv in r.data.items():
        c = scale * rv
        for k in range(n):
            for i, a1 in alg.product(p, k):
                for l in range(n):
                    for j, a2 in alg.product(q, l):
                        key = (i, j, k, l)
                        coeff[key] = coeff.get(key, 0) + c * a1 * a2
            for i, a1 in alg.product(k, p):
                for l in range(n):
                    for j, a2 in alg.product(l, q):
                        key = (i, j, k, l)
                        coeff[key] = coeff.get(key, 0) - c * a1 * a2
    raw = [(i, j, (k, l), v) for (i, j, k, l), v in coeff.items() if i < j and v]
    return canonicalize(n, 2, raw)


def _sym_coefficients(qt: PolyTensor) -> dict:
    """``(k, l) -> {(i, j): C^{ij}_{kl}}`` with C symmetric in (k, l), skew in (i, j)."""
    out: dict = {}
    for i, j, mono, v in qt.entries(full=True):
        k, l = mono
        if k == l:
            out.setdefault((k, k), {})[(i, j)] = v
        else:
            half = v / 2
            out.setdefault((k, l), {})[(i, j)] = half
            out.setdefault((l, k), {})[(i, j)] = half
    return out


def delta_apply(qt: PolyTensor, s: Tensor) -> Tensor:
    """The dual map on a symmetric 2-tensor: ``delta(s)^{ij} = C^{ij}_{kl} s^{kl}``.

    With this pairing ``delta(x (x) x) = pi(x)``.
    """
    if qt.degree != 2:
        raise DimensionError("delta is defined for quadratic tensors")
    sym = _sym_coefficients(qt)
    out: dict = {}
    for kl, sv in s.data.items():
        for ij, c in sym.get(kl, {}).items():
            out[ij] = out.get(ij, 0) + c * sv
    return Tensor(qt.dim, 2, out)


def derivation_residual(alg: Algebra, qt: PolyTensor) -> ResidualReport:
    """``delta(p q) - p delta(q) - delta(p) q`` on the spanning set of Symm(A (x) A)."""
    _check(alg, qt)
    n = alg.dim
    span = []
    for k, l in itertools.combinations_with_replacement(range(n), 2):
        span.append(((k, l), Tensor.basis(n, k, l) + Tensor.basis(n, l, k)))
    deltas = {key: delta_apply(qt, p) for key, p in span}
    entries = []
    for (kp, p), (kq, q) in itertools.product(span, repeat=2):
        res = (
            delta_apply(qt, tensor2_multiply(alg, p, q))
            - tensor2_multiply(alg, p, deltas[kq])
            - tensor2_multiply(alg, deltas[kp], q)
        )
        for idx, v in res.items():
            entries.append(((kp, kq, idx), v))
    return ResidualReport("derivation", entries, len(span) ** 2)


# ---------------------------------------------------------------------------
# CYBE and Schouten brackets of r
# ---------------------------------------------------------------------------

def cybe_residual(alg: Algebra, r: RMatrix) -> Tensor:
    """``[r12, r13] + [r12, r23] + [r13, r23]`` in the tensor cube."""
    _check(alg, r)
    t = r.as_tensor()
    r12, r13, r23 = (embed_leg(alg, t, legs) for legs in ("12", "13", "23"))
    return (
        tensor3_commutator(alg, r12, r13)
        + tensor3_commutator(alg, r12, r23)
        + tensor3_commutator(alg, r13, r23)
    )


def schouten(alg: Algebra, r: RMatrix) -> Tensor:
    """Schouten bracket of r; the same element as the CYBE left-hand side."""
    return cybe_residual(alg, r)


def ad_invariance_residual(alg: Algebra, t: Tensor) -> ResidualReport:
    """``[t, S_{e_i}]`` for each basis vector; zero iff t is ad-invariant."""
    _check(alg, t)
    entries = []
    for i in range(alg.dim):
        comm = tensor3_commutator(alg, t, s_tensor(alg, basis_vector(alg.dim, i)))
        for idx, v in comm.items():
            entries.append(((i, idx), v))
    return ResidualReport("schouten-invariance", entries, alg.dim)


# ---------------------------------------------------------------------------
# Linear extensions of delta and their operator Schouten bracket
# ---------------------------------------------------------------------------

@dataclass(eq=False)
class DeltaExtension:
    """Linear operator on A (x) A: ``ext(e_k (x) e_l) = columns[(k, l)][(i, j)] e_i (x) e_j``."""

    dim: int
    columns: dict
    qt: PolyTensor
    seed: int | None = None
    kind: str = "canonical"

    def apply(self, t: Tensor) -> Tensor:
        out: dict = {}
        for kl, v in t.data.items():
            for ij, c in self.columns.get(kl, {}).items():
                out[ij] = out.get(ij, 0) + c * v
        return Tensor(self.dim, 2, out)

    def apply_legs(self, t: Tensor, a: int, b: int) -> Tensor:
        """Act on legs ``a`` and ``b`` of a rank-3 tensor, identity on the third."""
        out: dict = {}
        for idx, v in t.data.items():
            col = self.columns.get((idx[a], idx[b]))
            if not col:
                continue
            for (i, j), c in col.items():
                new = list(idx)
                new[a], new[b] = i, j
                key = tuple(new)
                out[key] = out.get(key, 0) + c * v
        return Tensor(self.dim, 3, out)

    def consistency_residual(self) -> list:
        """Where ``ext(e_k e_l + e_l e_k)`` differs from ``2 C^{ij}_{kl}``."""
        sym = _sym_coefficients(self.qt)
        bad = []
        n = self.dim
        for k, l in itertools.combinations_with_replacement(range(n), 2):
            got = self.apply(Tensor.basis(n, k, l) + Tensor.basis(n, l, k))
            want = Tensor(n, 2, {ij: 2 * c for ij, c in sym.get((k, l), {}).items()})
            diff = got - want
            bad.extend(((k, l, ij), v) for ij, v in diff.items())
        return bad


def extend_delta(qt: PolyTensor, choice: str = "canonical", seed: int | None = None) -> DeltaExtension:
    """Extend delta from Symm(A (x) A) to all of A (x) A.

    ``canonical`` uses ``ext(e_k (x) e_l) = C^{ij}_{kl}`` (symmetrized
    coefficients).  ``randomized`` adds a seeded random operator that is
    skew in (k, l), so it vanishes on symmetric tensors, and skew in (i, j).
    """
    n = qt.dim
    columns = {kl: dict(col) for kl, col in _sym_coefficients(qt).items()}
    if choice == "canonical":
        return DeltaExtension(n, columns, qt, None, "canonical")
    if choice != "randomized":
        raise ValueError(f"unknown extension choice {choice!r}")
    rng = random.Random(seed)
    for k, l in itertools.combinations(range(n), 2):
        for i, j in itertools.combinations(range(n), 2):
            v = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
            if not v:
                continue
            for kk, ll, sk in ((k, l, 1), (l, k, -1)):
                col = columns.setdefault((kk, ll), {})
                col[(i, j)] = col.get((i, j), 0) + sk * v
                col[(j, i)] = col.get((j, i), 0) - sk * v
    columns = {kl: {ij: v for ij, v in col.items() if v} for kl, col in columns.items()}
    return DeltaExtension(n, columns, qt, seed, "randomized")


def ad_extension(alg: Algebra, r: RMatrix, scale=1) -> DeltaExtension:
    """The extension ``t -> scale * [r, t]`` of ``delta = scale * ad_r``."""
    _check(alg, r)
    n = alg.dim
    rt = r.as_tensor()
    columns = {}
    for k, l in itertools.product(range(n), repeat=2):
        e = Tensor.basis(n, k, l)
        img = tensor2_multiply(alg, rt, e) - tensor2_multiply(alg, e, rt)
        if img.data:
            columns[(k, l)] = {ij: Fraction(scale) * v for ij, v in img.data.items()}
    return DeltaExtension(n, columns, quadratic_from_r(alg, r, scale), None, "ad_r")


def operator_schouten_apply(ext: DeltaExtension, x: Tensor) -> Tensor:
    """``([P12,P13] + [P12,P23] + [P13,P23]) (x)`` for the operator P = ext."""
    legs = {"12": (0, 1), "13": (0, 2), "23": (1, 2)}

    def op(name, t):
        return ext.apply_legs(t, *legs[name])

    out = Tensor.zero(ext.dim, 3)
    for a, b in (("12", "13"), ("12", "23"), ("13", "23")):
        out = out + op(a, op(b, x)) - op(b, op(a, x))
    return out


def symmetric_basis(dim: int):
    """Fully symmetric tensors ``sum over distinct permutations of e_p (x) e_q (x) e_r``."""
    for p, q, r in itertools.combinations_with_replacement(range(dim), 3):
        perms = set(itertools.permutations((p, q, r)))
        yield (p, q, r), Tensor(dim, 3, {idx: 1 for idx in perms})


def symmetric_annihilation_residual(alg: Algebra, ext: DeltaExtension) -> ResidualReport:
    """Operator Schouten bracket of ``ext`` on a spanning set of symmetric 3-tensors.

    Needs no unit.  Vanishes iff the underlying quadratic bracket is Poisson.
    """
    _check(alg, ext)
    bad = ext.consistency_residual()
    if bad:
        raise AlgebraError(f"extension does not restrict to its bracket (first mismatch {bad[0][0]})")
    entries = []
    checked = 0
    for key, x in symmetric_basis(alg.dim):
        res = operator_schouten_apply(ext, x)
        entries.extend(((key, idx), v) for idx, v in res.items())
        checked += 1
    return ResidualReport("symmetric-annihilation", entries, checked, {"extension": ext.kind, "seed": ext.seed})
