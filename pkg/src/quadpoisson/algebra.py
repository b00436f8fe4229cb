"""Finite-dimensional associative algebras over Q and their tensor powers.

An algebra is given by structure constants ``a[i, j, k]`` with
``e_i e_j = sum_k a[i, j, k] e_k``.  Elements of A, A(x)A and A(x)A(x)A are
sparse coefficient tables keyed by index tuples; every coefficient is a
:class:`fractions.Fraction`, so all identities are checked by exact equality.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import _linalg
from .rational import emit_rational, parse_rational


class AlgebraError(ValueError):
    """Malformed input: bad indices, wrong dimensions, missing unit."""


class DimensionError(AlgebraError):
    pass


class NoUnitError(AlgebraError):
    pass


Vector = tuple  # tuple of Fractions, length == dim


def vector(values: Iterable) -> Vector:
    return tuple(Fraction(v) for v in values)


def basis_vector(dim: int, i: int) -> Vector:
    return tuple(Fraction(int(k == i)) for k in range(dim))


@dataclass(frozen=True, eq=False)
class Algebra:
    dim: int
    structure: Mapping[tuple[int, int, int], Fraction]
    unit: Vector | None = None
    labels: tuple[str, ...] | None = None
    name: str = ""
    _table: dict = field(init=False, repr=False)

    def __post_init__(self):
        if not isinstance(self.dim, int) or self.dim < 1:
            raise AlgebraError(f"dimension must be a positive integer, got {self.dim!r}")
        n = self.dim
        clean = {}
        for key, value in self.structure.items():
            if len(key) != 3 or any(not (0 <= i < n) for i in key):
                raise AlgebraError(f"structure index {key} out of range for dim {n}")
            value = Fraction(value)
            if value:
                clean[tuple(key)] = value
        object.__setattr__(self, "structure", clean)
        if self.unit is not None:
            if len(self.unit) != n:
                raise DimensionError(f"unit has length {len(self.unit)}, expected {n}")
            object.__setattr__(self, "unit", vector(self.unit))
        if self.labels is not None:
            if len(self.labels) != n:
                raise DimensionError(f"{len(self.labels)} labels for dim {n}")
            object.__setattr__(self, "labels", tuple(self.labels))
        table: dict[tuple[int, int], list] = {}
        for (i, j, k), v in sorted(clean.items()):
            table.setdefault((i, j), []).append((k, v))
        object.__setattr__(self, "_table", {key: tuple(val) for key, val in table.items()})

    def product(self, i: int, j: int) -> tuple:
        """Nonzero ``(k, a[i, j, k])`` pairs of ``e_i e_j``."""
        return self._table.get((i, j), ())

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels else f"e{i}"

    def require_unit(self) -> Vector:
        if self.unit is None:
            raise NoUnitError(f"algebra {self.name or '<unnamed>'} has no unit")
        return self.unit

    def __eq__(self, other):
        if not isinstance(other, Algebra):
            return NotImplemented
        return (self.dim, self.structure, self.unit) == (other.dim, other.structure, other.unit)

    def __hash__(self):
        return hash((self.dim, frozenset(self.structure.items()), self.unit))


@dataclass
class ValidationReport:
    passed: bool
    violations: list  # (kind, index tuple, lhs, rhs)
    checked: int


def _check_dim(alg: Algebra, *vecs):
    for v in vecs:
        if len(v) != alg.dim:
            raise DimensionError(f"vector of length {len(v)} in algebra of dim {alg.dim}")


def validate_algebra(alg: Algebra) -> ValidationReport:
    n = alg.dim
    a = alg.structure
    violations = []
    checked = 0
    for i, j, k in itertools.product(range(n), repeat=3):
        # (e_i e_j) e_k versus e_i (e_j e_k), compared per output coordinate
        lhs: dict[int, Fraction] = {}
        for m, v in alg.product(i, j):
            for l, w in alg.product(m, k):
                lhs[l] = lhs.get(l, 0) + v * w
        rhs: dict[int, Fraction] = {}
        for m, v in alg.product(j, k):
            for l, w in alg.product(i, m):
                rhs[l] = rhs.get(l, 0) + v * w
        for l in range(n):
            checked += 1
            left, right = Fraction(lhs.get(l, 0)), Fraction(rhs.get(l, 0))
            if left != right:
                violations.append(("associativity", (i, j, k, l), left, right))
    if alg.unit is not None:
        u = alg.unit
        for i in range(n):
            e = basis_vector(n, i)
            for kind, got in (("left unit", multiply(alg, u, e)), ("right unit", multiply(alg, e, u))):
                for j in range(n):
                    checked += 1
                    if got[j] != e[j]:
                        violations.append((kind, (i, j), got[j], e[j]))
    return ValidationReport(not violations, violations, checked)


def multiply(alg: Algebra, x: Sequence, y: Sequence) -> Vector:
    _check_dim(alg, x, y)
    out = [Fraction(0)] * alg.dim
    for (i, j), prods in alg._table.items():
        c = x[i] * y[j]
        if c:
            for k, v in prods:
                out[k] += c * v
    return tuple(out)


def commutator(alg: Algebra, x: Sequence, y: Sequence) -> Vector:
    return tuple(p - q for p, q in zip(multiply(alg, x, y), multiply(alg, y, x)))


def find_unit(alg: Algebra) -> Vector:
    """Solve ``u e_i = e_i u = e_i`` for all i; raise if no unique solution."""
    n = alg.dim
    rows, rhs = [], []
    for i in range(n):
        for j in range(n):
            # sum_k u^k a[k, i, j] = delta_ij  and  sum_k u^k a[i, k, j] = delta_ij
            rows.append([alg.structure.get((k, i, j), Fraction(0)) for k in range(n)])
            rhs.append(Fraction(int(i == j)))
            rows.append([alg.structure.get((i, k, j), Fraction(0)) for k in range(n)])
            rhs.append(Fraction(int(i == j)))
    sol, nullity = _linalg.solve(rows, rhs)
    if sol is None:
        raise NoUnitError("algebra has no unit")
    if nullity:
        raise AlgebraError("unit is not unique (degenerate structure)")
    return tuple(sol)


def adjoin_unit(alg: Algebra, label: str = "1") -> Algebra:
    """Return ``<1> + A`` with the new unit as basis element 0."""
    n = alg.dim
    structure = {(i + 1, j + 1, k + 1): v for (i, j, k), v in alg.structure.items()}
    for i in range(n + 1):
        structure[(0, i, i)] = Fraction(1)
        structure[(i, 0, i)] = Fraction(1)
    labels = (label,) + tuple(alg.label(i) for i in range(n))
    return Algebra(n + 1, structure, basis_vector(n + 1, 0), labels, f"{alg.name}+1" if alg.name else "")


def change_basis(alg: Algebra, columns: Sequence[Sequence]) -> Algebra:
    """Re-express ``alg`` in the basis ``f_i = sum_j columns[j][i] e_j``."""
    n = alg.dim
    p = [[Fraction(v) for v in row] for row in columns]
    q = _linalg.inverse(p)
    f = [tuple(p[j][i] for j in range(n)) for i in range(n)]
    structure = {}
    for i in range(n):
        for j in range(n):
            prod = multiply(alg, f[i], f[j])
            for k in range(n):
                v = sum((q[k][m] * prod[m] for m in range(n)), Fraction(0))
                if v:
                    structure[(i, j, k)] = v
    unit = None
    if alg.unit is not None:
        unit = tuple(sum((q[k][m] * alg.unit[m] for m in range(n)), Fraction(0)) for k in range(n))
    return Algebra(n, structure, unit, None, alg.name)


# ---------------------------------------------------------------------------
# Lie algebras
# ---------------------------------------------------------------------------

@dataclass(eq=False)
class LieStructure:
    """Structure constants ``l[i, j, k]`` of ``[e_i, e_j] = l[i, j, k] e_k``."""

    dim: int
    constants: dict

    def __post_init__(self):
        self.constants = {k: Fraction(v) for k, v in self.constants.items() if v}
        table: dict = {}
        for (i, j, k), v in sorted(self.constants.items()):
            table.setdefault((i, j), []).append((k, v))
        self._table = table

    def bracket(self, i: int, j: int) -> list:
        return self._table.get((i, j), [])

    def skew_residual(self) -> list:
        out = []
        for (i, j, k), v in sorted(self.constants.items()):
            w = self.constants.get((j, i, k), Fraction(0))
            if v + w != 0:
                out.append(((i, j, k), v + w))
        return out

    def jacobi_residual(self) -> list:
        """Nonzero ``[[e_i,e_j],e_k] + cyclic`` coefficients, as ((i,j,k,p), value)."""
        n = self.dim
        out = []
        for i, j, k in itertools.product(range(n), repeat=3):
            acc: dict[int, Fraction] = {}
            for x, y, z in ((i, j, k), (j, k, i), (k, i, j)):
                for m, v in self.bracket(x, y):
                    for p, w in self.bracket(m, z):
                        acc[p] = acc.get(p, 0) + v * w
            for p, v in sorted(acc.items()):
                if v:
                    out.append(((i, j, k, p), Fraction(v)))
        return out

    def __eq__(self, other):
        return isinstance(other, LieStructure) and (self.dim, self.constants) == (other.dim, other.constants)


def lie_structure(alg: Algebra) -> LieStructure:
    consts: dict = {}
    for (i, j, k), v in alg.structure.items():
        consts[(i, j, k)] = consts.get((i, j, k), 0) + v
        consts[(j, i, k)] = consts.get((j, i, k), 0) - v
    lie = LieStructure(alg.dim, consts)
    assert not lie.skew_residual()
    assert not lie.jacobi_residual(), "adjacent Lie algebra of an associative algebra must satisfy Jacobi"
    return lie


# ---------------------------------------------------------------------------
# Tensor powers
# ---------------------------------------------------------------------------

@dataclass(eq=False)
class Tensor:
    """Sparse element of the ``rank``-fold tensor power of an n-dim space."""

    dim: int
    rank: int
    data: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for key, v in self.data.items():
            key = tuple(key)
            if len(key) != self.rank or any(not (0 <= i < self.dim) for i in key):
                raise AlgebraError(f"tensor index {key} invalid for rank {self.rank}, dim {self.dim}")
            v = Fraction(v)
            if v:
                clean[key] = v
        self.data = clean

    @classmethod
    def zero(cls, dim: int, rank: int) -> "Tensor":
        return cls(dim, rank, {})

    @classmethod
    def basis(cls, dim: int, *index: int) -> "Tensor":
        return cls(dim, len(index), {tuple(index): Fraction(1)})

    def __getitem__(self, key) -> Fraction:
        return self.data.get(tuple(key), Fraction(0))

    def _same_shape(self, other):
        if (self.dim, self.rank) != (other.dim, other.rank):
            raise DimensionError(
                f"tensor shapes differ: ({self.dim}, rank {self.rank}) vs ({other.dim}, rank {other.rank})"
            )

    def __add__(self, other: "Tensor") -> "Tensor":
        self._same_shape(other)
        out = dict(self.data)
        for k, v in other.data.items():
            out[k] = out.get(k, 0) + v
        return Tensor(self.dim, self.rank, out)

    def __sub__(self, other: "Tensor") -> "Tensor":
        return self + (-other)

    def __neg__(self) -> "Tensor":
        return Tensor(self.dim, self.rank, {k: -v for k, v in self.data.items()})

    def __rmul__(self, scalar) -> "Tensor":
        scalar = Fraction(scalar)
        return Tensor(self.dim, self.rank, {k: scalar * v for k, v in self.data.items()})

    def __eq__(self, other):
        if not isinstance(other, Tensor):
            return NotImplemented
        return (self.dim, self.rank, self.data) == (other.dim, other.rank, other.data)

    def is_zero(self) -> bool:
        return not self.data

    def permuted(self, perm: Sequence[int]) -> "Tensor":
        """Tensor whose leg ``m`` is leg ``perm[m]`` of self."""
        return Tensor(self.dim, self.rank, {tuple(k[p] for p in perm): v for k, v in self.data.items()})

    def items(self):
        return sorted(self.data.items())

    def __repr__(self):
        body = ", ".join(f"{k}: {emit_rational(v)}" for k, v in self.items())
        return f"Tensor(dim={self.dim}, rank={self.rank}, {{{body}}})"


def outer(*vectors: Sequence) -> Tensor:
    n = len(vectors[0])
    data = {}
    nz = [[(i, Fraction(v)) for i, v in enumerate(vec) if v] for vec in vectors]
    for combo in itertools.product(*nz):
        c = Fraction(1)
        for _, v in combo:
            c *= v
        data[tuple(i for i, _ in combo)] = c
    return Tensor(n, len(vectors), data)


def tensor_multiply(alg: Algebra, s: Tensor, t: Tensor) -> Tensor:
    """Componentwise (leg-by-leg) product in the tensor power of ``alg``."""
    s._same_shape(t)
    if s.dim != alg.dim:
        raise DimensionError(f"tensor dim {s.dim} vs algebra dim {alg.dim}")
    table = alg._table
    out: dict = {}
    for ks, vs in s.data.items():
        for kt, vt in t.data.items():
            legs = []
            for i, j in zip(ks, kt):
                p = table.get((i, j))
                if not p:
                    break
                legs.append(p)
            else:
                c = vs * vt
                for combo in itertools.product(*legs):
                    w = c
                    for _, v in combo:
                        w *= v
                    key = tuple(k for k, _ in combo)
                    out[key] = out.get(key, 0) + w
    return Tensor(s.dim, s.rank, out)


def tensor_commutator(alg: Algebra, s: Tensor, t: Tensor) -> Tensor:
    return tensor_multiply(alg, s, t) - tensor_multiply(alg, t, s)


def _require_rank(rank, *tensors):
    for t in tensors:
        if t.rank != rank:
            raise DimensionError(f"expected a rank-{rank} tensor, got rank {t.rank}")


def tensor2_multiply(alg: Algebra, s: Tensor, t: Tensor) -> Tensor:
    _require_rank(2, s, t)
    return tensor_multiply(alg, s, t)


def tensor2_commutator(alg: Algebra, s: Tensor, t: Tensor) -> Tensor:
    _require_rank(2, s, t)
    return tensor_commutator(alg, s, t)


def tensor3_multiply(alg: Algebra, s: Tensor, t: Tensor) -> Tensor:
    _require_rank(3, s, t)
    return tensor_multiply(alg, s, t)


def tensor3_commutator(alg: Algebra, s: Tensor, t: Tensor) -> Tensor:
    _require_rank(3, s, t)
    return tensor_commutator(alg, s, t)


_LEGS = {"12": (0, 1, 2), "13": (0, 2, 1), "23": (1, 2, 0)}


def embed_leg(alg: Algebra, t: Tensor, legs) -> Tensor:
    """Place a rank-2 tensor on two legs of the tensor cube, unit on the third."""
    _require_rank(2, t)
    key = str(legs)
    if key not in _LEGS:
        raise AlgebraError(f"legs must be one of 12, 13, 23; got {legs!r}")
    u = alg.require_unit()
    a, b, pad = _LEGS[key]
    out = {}
    for (i, j), v in t.data.items():
        for k, w in enumerate(u):
            if w:
                idx = [0, 0, 0]
                idx[a], idx[b], idx[pad] = i, j, k
                out[tuple(idx)] = v * w
    return Tensor(alg.dim, 3, out)


def s_tensor(alg: Algebra, a: Sequence) -> Tensor:
    """``u(x)u(x)a + u(x)a(x)u + a(x)u(x)u``."""
    u = alg.require_unit()
    _check_dim(alg, a)
    return outer(u, u, a) + outer(u, a, u) + outer(a, u, u)


@dataclass(frozen=True)
class SymmetryFlags:
    symmetric: bool
    antisymmetric: bool
    fully_symmetric: bool


def symmetry_tests(t: Tensor) -> SymmetryFlags:
    """For rank 3, ``symmetric``/``antisymmetric`` refer to all leg permutations."""
    perms = list(itertools.permutations(range(t.rank)))
    sym = all(t.permuted(p) == t for p in perms)
    anti = True
    for p in perms:
        sign = _perm_sign(p)
        if t.permuted(p) != sign * t:
            anti = False
            break
    return SymmetryFlags(sym, anti, sym)


def _perm_sign(p) -> int:
    sign = 1
    p = list(p)
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                sign = -sign
    return sign


def symmetrize(t: Tensor) -> Tensor:
    """Sum over all leg permutations (not divided by the group order)."""
    out = Tensor.zero(t.dim, t.rank)
    for p in itertools.permutations(range(t.rank)):
        out = out + t.permuted(p)
    return out


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------

def algebra_to_json(alg: Algebra) -> dict:
    return {
        "name": alg.name,
        "dim": alg.dim,
        "basis": [alg.label(i) for i in range(alg.dim)],
        "structure": [[i, j, k, emit_rational(v)] for (i, j, k), v in sorted(alg.structure.items())],
        "unit": None if alg.unit is None else [emit_rational(v) for v in alg.unit],
    }


def algebra_from_json(obj: Mapping) -> Algebra:
    try:
        dim = obj["dim"]
        entries = obj.get("structure", [])
    except (KeyError, TypeError, AttributeError) as exc:
        raise AlgebraError(f"malformed algebra document: {exc}") from exc
    if not isinstance(dim, int) or isinstance(dim, bool):
        raise AlgebraError("'dim' must be an integer")
    structure: dict = {}
    for entry in entries:
        if not isinstance(entry, (list, tuple)) or len(entry) != 4:
            raise AlgebraError(f"structure entry must be [i, j, k, value]: {entry!r}")
        i, j, k, v = entry
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in (i, j, k)):
            raise AlgebraError(f"structure indices must be integers: {entry!r}")
        key = (i, j, k)
        if key in structure:
            raise AlgebraError(f"duplicate structure entry {key}")
        structure[key] = parse_rational(v)
    unit = obj.get("unit")
    if unit is not None:
        unit = tuple(parse_rational(v) for v in unit)
    labels = obj.get("basis") or None
    return Algebra(dim, structure, unit, tuple(labels) if labels else None, obj.get("name", ""))
