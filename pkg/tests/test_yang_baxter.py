import random
from fractions import Fraction

import pytest

from _gen import random_quadratic
from quadpoisson.algebra import AlgebraError, NoUnitError, Tensor, basis_vector, outer, tensor3_commutator
from quadpoisson.catalog import get_algebra, quaternion_r
from quadpoisson.poisson import canonicalize, jacobiator, multiplicativity_residual
from quadpoisson.yang_baxter import (
    RMatrix,
    ad_extension,
    ad_invariance_residual,
    cybe_residual,
    delta_apply,
    derivation_residual,
    extend_delta,
    operator_schouten_apply,
    quadratic_from_r,
    rmatrix_from_json,
    rmatrix_to_json,
    schouten,
    symmetric_annihilation_residual,
    symmetric_basis,
)

H = get_algebra("quaternions")
HALF = Fraction(1, 2)


def test_rmatrix_rejects_non_antisymmetric():
    with pytest.raises(AlgebraError):
        RMatrix(2, {(0, 1): 1, (1, 0): 1})
    with pytest.raises(AlgebraError):
        RMatrix(2, {(0, 1): 1})
    with pytest.raises(AlgebraError):
        RMatrix.from_upper(2, [(0, 0, 1)])


def test_rmatrix_json():
    r = quaternion_r(1, Fraction(-1, 2), 0)
    doc = rmatrix_to_json(r)
    assert doc == {"dim": 4, "r": [[1, 2, "1"], [1, 3, "-1/2"]]}
    assert rmatrix_from_json(doc) == r
    # both orientations given consistently is fine, inconsistently is not
    assert rmatrix_from_json({"dim": 2, "r": [[0, 1, "1"], [1, 0, "-1"]]}) == RMatrix.wedge(2, 0, 1)
    with pytest.raises(AlgebraError):
        rmatrix_from_json({"dim": 2, "r": [[0, 1, "1"], [1, 0, "1"]]})


def test_quadratic_from_zero_r():
    assert quadratic_from_r(H, RMatrix(4, {})).is_zero()


def test_quaternion_jk_table():
    qt = quadratic_from_r(H, RMatrix.wedge(4, 2, 3), HALF)
    assert qt.component(0, 1) == {(2, 2): 1, (3, 3): 1}
    assert qt.component(0, 2) == {(1, 2): -1}
    assert qt.component(0, 3) == {(1, 3): -1}
    assert qt.component(1, 2) == {(0, 2): 1}
    assert qt.component(2, 3) == {}
    # the sign that differs from the printed table
    assert qt.component(1, 3) == {(0, 3): 1}


def test_quaternion_scale_conventions():
    r = RMatrix.wedge(4, 2, 3)
    assert quadratic_from_r(H, r, 1) == 2 * quadratic_from_r(H, r, HALF)


def test_heisenberg_bracket_is_zero():
    g = get_algebra("heisenberg")
    rng = random.Random(5)
    for _ in range(5):
        r = RMatrix.from_upper(3, [(0, 1, rng.randint(-4, 4)), (0, 2, rng.randint(-4, 4)), (1, 2, rng.randint(-4, 4))])
        assert quadratic_from_r(g, r).is_zero()


def test_cybe_examples():
    assert cybe_residual(H, RMatrix(4, {})).is_zero()
    ut = get_algebra("upper_triangular", 2)
    assert cybe_residual(ut, RMatrix.wedge(3, 0, 1)).is_zero()
    res = cybe_residual(H, RMatrix.wedge(4, 1, 2))
    assert not res.is_zero()
    # [r12,r13] + [r12,r23] + [r13,r23] for i^j has only i,j,k legs; its 1(x)... part vanishes
    assert all(0 not in idx for idx in res.data)
    assert res[(1, 2, 3)] == 2 and res[(3, 2, 1)] == -2
    assert schouten(H, RMatrix.wedge(4, 1, 2)) == res


def test_cybe_needs_unit():
    with pytest.raises(NoUnitError):
        cybe_residual(get_algebra("heisenberg"), RMatrix.wedge(3, 0, 1))


def test_ad_invariance_examples():
    uuu = outer(H.unit, H.unit, H.unit)
    assert ad_invariance_residual(H, uuu).passed
    for abc in [(1, 0, 0), (0, 1, 0), (0, 0, 1), (2, -3, Fraction(1, 2))]:
        assert ad_invariance_residual(H, schouten(H, quaternion_r(*abc))).passed
    m = get_algebra("matrix", 2)  # e11, e12, e21, e22
    t = outer(basis_vector(4, 0), basis_vector(4, 1), basis_vector(4, 3))
    rep = ad_invariance_residual(m, t)
    assert not rep.passed
    assert any(i == 1 for (i, _), _ in rep.entries)


def test_derivation_examples():
    assert derivation_residual(H, canonicalize(4, 2, [])).passed
    assert derivation_residual(H, quadratic_from_r(H, quaternion_r(1, 1, 1), HALF)).passed
    r2 = get_algebra("componentwise", 2)
    broken = canonicalize(2, 2, [(0, 1, (0, 0), 1)])
    assert not derivation_residual(r2, broken).passed
    assert not multiplicativity_residual(r2, broken).passed


def test_delta_pairs_with_square():
    # delta(x (x) x) = pi(x) coefficientwise
    qt = quadratic_from_r(H, quaternion_r(1, 2, 3), HALF)
    x = (Fraction(1), Fraction(-2), Fraction(1, 3), Fraction(4))
    xx = outer(x, x)
    from quadpoisson.poisson import evaluate

    table = evaluate(qt, list(x))
    got = delta_apply(qt, xx)
    assert all(got[(i, j)] == table[i][j] for i in range(4) for j in range(4))


def test_extend_delta_canonical_examples():
    zero = canonicalize(3, 2, [])
    ext = extend_delta(zero)
    assert ext.columns == {}
    qt = random_quadratic(random.Random(3), 3, density=0.6)
    ext = extend_delta(qt)
    sym12 = Tensor.basis(3, 0, 1) + Tensor.basis(3, 1, 0)
    got = ext.apply(sym12)
    for i in range(3):
        for j in range(3):
            # c^{ij}_{12} + c^{ij}_{21}, i.e. the monomial coefficient of x1 x2
            assert got[(i, j)] == 2 * qt.coefficient(i, j, (0, 1))
            assert got[(i, j)] == qt.component(i, j).get((0, 1), 0)
    assert ext.consistency_residual() == []


def test_randomized_extensions_agree_with_canonical():
    qt = random_quadratic(random.Random(8), 4, density=0.3)
    alg = get_algebra("matrix", 2)
    base = symmetric_annihilation_residual(alg, extend_delta(qt))
    for seed in (1, 2):
        ext = extend_delta(qt, "randomized", seed)
        assert ext.columns != extend_delta(qt).columns
        rep = symmetric_annihilation_residual(alg, ext)
        assert rep.entries == base.entries
        assert rep.notes["seed"] == seed


def test_extend_delta_unknown_choice():
    with pytest.raises(ValueError):
        extend_delta(canonicalize(2, 2, []), "other")


def test_symmetric_annihilation_examples():
    m = get_algebra("matrix", 2)
    zero = canonicalize(4, 2, [])
    assert symmetric_annihilation_residual(m, extend_delta(zero, "randomized", 4)).passed
    qt = quadratic_from_r(H, quaternion_r(1, -1, 2), HALF)
    assert symmetric_annihilation_residual(H, extend_delta(qt)).passed
    assert symmetric_annihilation_residual(H, ad_extension(H, quaternion_r(1, -1, 2), HALF)).passed
    # rejection sampling for a non-Poisson tensor, no unit needed
    g = get_algebra("heisenberg")
    rng = random.Random(0)
    while True:
        bad = random_quadratic(rng, 3, density=0.5)
        if not jacobiator(bad).passed:
            break
    assert not symmetric_annihilation_residual(g, extend_delta(bad)).passed


def test_inconsistent_extension_is_rejected():
    qt = quadratic_from_r(H, quaternion_r(0, 0, 1), HALF)
    ext = extend_delta(qt)
    ext.qt = quadratic_from_r(H, quaternion_r(1, 0, 0), HALF)
    with pytest.raises(AlgebraError):
        symmetric_annihilation_residual(H, ext)


def test_schouten_of_ad_is_ad_of_schouten():
    m = get_algebra("matrix", 2)
    r = RMatrix.from_upper(4, [(0, 1, 1), (1, 2, Fraction(-1, 2)), (0, 3, 2)])
    ext = ad_extension(m, r)
    s = schouten(m, r)
    for _, x in symmetric_basis(4):
        assert operator_schouten_apply(ext, x) == tensor3_commutator(m, s, x)
