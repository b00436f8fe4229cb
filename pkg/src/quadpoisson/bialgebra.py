"""Lie-bialgebra data carried by a quadratic bracket.

A cobracket ``Delta: A -> A ^ A`` is stored as ``delta[k][(i, j)] = d_k^{ij}``
with ``Delta(e_k) = d_k^{ij} e_i (x) e_j``.  Its dual bracket on ``A*`` is
``[x^i, x^j] = d_k^{ij} x^k``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .algebra import (
    Algebra,
    AlgebraError,
    DimensionError,
    LieStructure,
    Tensor,
    basis_vector,
    outer,
    tensor2_commutator,
)
from .poisson import PolyTensor, ResidualReport, canonicalize, evaluate, jacobi_mixed
from .rational import emit_rational, parse_rational
from .yang_baxter import RMatrix, _sym_coefficients


@dataclass(eq=False)
class Cobracket:
    dim: int
    delta: dict = field(default_factory=dict)  # k -> {(i, j): value}, both orientations

    def __post_init__(self):
        clean = {}
        for k, comp in self.delta.items():
            comp = {tuple(ij): Fraction(v) for ij, v in comp.items() if v}
            if comp:
                clean[k] = comp
        self.delta = clean

    def image(self, k: int) -> Tensor:
        return Tensor(self.dim, 2, self.delta.get(k, {}))

    def apply(self, x: Sequence) -> Tensor:
        out = Tensor.zero(self.dim, 2)
        for k, v in enumerate(x):
            if v:
                out = out + v * self.image(k)
        return out

    def skew_residual(self) -> list:
        bad = []
        for k, comp in sorted(self.delta.items()):
            for (i, j), v in sorted(comp.items()):
                if comp.get((j, i), Fraction(0)) != -v:
                    bad.append(((k, i, j), v + comp.get((j, i), Fraction(0))))
        return bad

    def __eq__(self, other):
        return isinstance(other, Cobracket) and (self.dim, self.delta) == (other.dim, other.delta)

    def __rmul__(self, scalar):
        s = Fraction(scalar)
        return Cobracket(self.dim, {k: {ij: s * v for ij, v in c.items()} for k, c in self.delta.items()})


def _from_images(dim: int, images: Mapping[int, Tensor]) -> Cobracket:
    return Cobracket(dim, {k: dict(t.data) for k, t in images.items()})


def cobracket_at(alg: Algebra, qt: PolyTensor, a: Sequence, doubled: bool = False) -> Cobracket:
    """``Delta_a(e_k) = delta(e_k (x) a + a (x) e_k)``, coefficients ``2 C^{ij}_{kl} a^l``.

    With ``doubled`` the result is multiplied by 2, so that ``a = u`` gives
    the cobracket ``2 delta(x (x) u + u (x) x)`` of the Poisson-Lie group.
    """
    if qt.dim != alg.dim or len(a) != alg.dim:
        raise DimensionError("dimension mismatch between algebra, bracket and vector")
    factor = Fraction(4 if doubled else 2)
    sym = _sym_coefficients(qt)
    delta: dict = {}
    for (k, l), col in sym.items():
        al = a[l]
        if not al:
            continue
        dk = delta.setdefault(k, {})
        for ij, c in col.items():
            dk[ij] = dk.get(ij, 0) + factor * c * al
    return Cobracket(alg.dim, delta)


def coboundary_cobracket(alg: Algebra, r: RMatrix) -> Cobracket:
    """``Delta_r(x) = [r, x (x) u + u (x) x]``, with the algebra unit as the formal unit."""
    u = alg.require_unit()
    if r.dim != alg.dim:
        raise DimensionError(f"r-matrix dim {r.dim} vs algebra dim {alg.dim}")
    rt = r.as_tensor()
    images = {}
    for k in range(alg.dim):
        e = basis_vector(alg.dim, k)
        images[k] = tensor2_commutator(alg, rt, outer(e, u) + outer(u, e))
    return _from_images(alg.dim, images)


def dual_lie(cb: Cobracket) -> tuple[LieStructure, ResidualReport]:
    """Lie structure ``[x^i, x^j] = d_k^{ij} x^k`` on A* with its skew/Jacobi residuals."""
    consts = {}
    for k, comp in cb.delta.items():
        for (i, j), v in comp.items():
            consts[(i, j, k)] = v
    lie = LieStructure(cb.dim, consts)
    entries = [(("skew",) + idx, v) for idx, v in lie.skew_residual()]
    entries += [(("jacobi",) + idx, v) for idx, v in lie.jacobi_residual()]
    return lie, ResidualReport("dual-lie", entries, cb.dim ** 3)


def linear_bracket(cb: Cobracket) -> PolyTensor:
    """The dual bracket as a linear Poisson tensor ``{x^i, x^j} = d_k^{ij} x^k``."""
    raw = []
    for k, comp in cb.delta.items():
        for (i, j), v in comp.items():
            if i < j:
                raw.append((i, j, (k,), v))
    return canonicalize(cb.dim, 1, raw)


def _ad(lie: LieStructure, i: int, t: Tensor) -> Tensor:
    """Adjoint action of ``e_i`` on a 2-tensor, leg by leg."""
    out: dict = {}
    for (a, b), v in t.data.items():
        for m, w in lie.bracket(i, a):
            out[(m, b)] = out.get((m, b), 0) + v * w
        for m, w in lie.bracket(i, b):
            out[(a, m)] = out.get((a, m), 0) + v * w
    return Tensor(t.dim, 2, out)


def cocycle_residual(lie: LieStructure, cb: Cobracket) -> ResidualReport:
    """``Delta([e_i, e_j]) - ad_{e_i} Delta(e_j) + ad_{e_j} Delta(e_i)`` for all i, j."""
    if lie.dim != cb.dim:
        raise DimensionError(f"Lie algebra dim {lie.dim} vs cobracket dim {cb.dim}")
    n = lie.dim
    entries = []
    for i, j in itertools.product(range(n), repeat=2):
        lhs = Tensor.zero(n, 2)
        for k, v in lie.bracket(i, j):
            lhs = lhs + v * cb.image(k)
        res = lhs - _ad(lie, i, cb.image(j)) + _ad(lie, j, cb.image(i))
        entries.extend(((i, j, idx), v) for idx, v in res.items())
    return ResidualReport("cocycle", entries, n * n)


def value_tensor(qt: PolyTensor, a: Sequence) -> PolyTensor:
    """The constant (degree 0) tensor ``pi(a)``."""
    table = evaluate(qt, [Fraction(v) for v in a])
    raw = [(i, j, (), table[i][j]) for i, j in itertools.combinations(range(qt.dim), 2)]
    return canonicalize(qt.dim, 0, raw)


def dual_lie_obstruction(qt: PolyTensor, a: Sequence) -> ResidualReport:
    """Mixed Jacobiator of ``pi`` with the constant tensor ``pi(a)``.

    Expanding ``J(pi(x + t a)) = 0`` in t gives ``J(Delta_a*) = -M(pi, pi(a))``
    for Poisson ``pi``, so ``Delta_a*`` is a Lie bracket exactly when this
    report passes.  It always passes for ``a = u`` (``pi(u) = 0``), but not
    for a generic ``a``.
    """
    rep = jacobi_mixed(qt, value_tensor(qt, a))
    rep.name = "dual-lie-obstruction"
    return rep


def pencil_residual(qt: PolyTensor, lt: PolyTensor) -> ResidualReport:
    """Mixed Jacobiator of a quadratic and a linear bracket."""
    rep = jacobi_mixed(qt, lt)
    rep.name = "pencil"
    return rep


def shifted_tensor(qt: PolyTensor, point: Sequence, t) -> dict:
    """Components of ``x -> pi(x + t * point)``, all degrees, as ``(i, j) -> poly``."""
    t = Fraction(t)
    out: dict = {}
    for (i, j), poly in qt.components.items():
        acc: dict = {}
        for mono, v in poly.items():
            # expand prod_k (x^k + t point^k)
            terms = {(): v}
            for k in mono:
                nxt: dict = {}
                for m, c in terms.items():
                    key = tuple(sorted(m + (k,)))
                    nxt[key] = nxt.get(key, 0) + c
                    if point[k]:
                        nxt[m] = nxt.get(m, 0) + c * t * point[k]
                terms = nxt
            for m, c in terms.items():
                acc[m] = acc.get(m, 0) + c
        acc = {m: c for m, c in acc.items() if c}
        if acc:
            out[(i, j)] = acc
    return out


def cobracket_to_json(cb: Cobracket) -> dict:
    rows = []
    for k in sorted(cb.delta):
        for (i, j), v in sorted(cb.delta[k].items()):
            if i < j:
                rows.append([k, i, j, emit_rational(v)])
    return {"dim": cb.dim, "delta": rows}


def cobracket_from_json(obj: Mapping) -> Cobracket:
    try:
        dim, rows = obj["dim"], obj["delta"]
    except (KeyError, TypeError) as exc:
        raise AlgebraError(f"malformed cobracket document: {exc}") from exc
    delta: dict = {}
    for k, i, j, v in rows:
        if not i < j:
            raise AlgebraError(f"cobracket rows must have i < j: {[k, i, j, v]}")
        v = parse_rational(v)
        comp = delta.setdefault(k, {})
        comp[(i, j)] = v
        comp[(j, i)] = -v
    return Cobracket(dim, delta)


def lie_to_algebra_json(lie: LieStructure, labels=None, name: str = "") -> dict:
    """A Lie structure in the algebra file layout, ``structure`` holding ``l_{ij}^k``."""
    return {
        "name": name,
        "dim": lie.dim,
        "basis": list(labels) if labels else [f"x{i + 1}" for i in range(lie.dim)],
        "structure": [[i, j, k, emit_rational(v)] for (i, j, k), v in sorted(lie.constants.items())],
        "unit": None,
    }
