"""End-to-end acceptance checks, one test per criterion.

Each test records its outcome through ``criterion`` so the terminal summary
prints a single PASS/FAIL line per criterion.
"""

import itertools
import random
import time
from fractions import Fraction

import pytest

from _criteria import criterion
from _gen import mixed_quadratic, rand_fraction, random_quadratic, random_r, random_unital_algebra
from quadpoisson.algebra import lie_structure, tensor3_commutator
from quadpoisson.bialgebra import (
    cobracket_at,
    coboundary_cobracket,
    cocycle_residual,
    dual_lie,
    dual_lie_obstruction,
    linear_bracket,
    pencil_residual,
    shifted_tensor,
    value_tensor,
)
from quadpoisson.catalog import (
    QUATERNION_ARBITRATION_ROWS,
    get_algebra,
    quaternion_arbitration,
    quaternion_expected,
    quaternion_r,
    sphere_casimir_residual,
)
from quadpoisson.numeric import (
    SamplePlan,
    drinfeld_proportionality,
    group_multiplicativity_sample,
    iso_pushforward_check,
    log_bracket,
)
from quadpoisson.poisson import jacobiator, multiplicativity_residual, unit_vanishing
from quadpoisson.yang_baxter import (
    RMatrix,
    ad_extension,
    ad_invariance_residual,
    cybe_residual,
    derivation_residual,
    extend_delta,
    operator_schouten_apply,
    quadratic_from_r,
    schouten,
    symmetric_annihilation_residual,
    symmetric_basis,
)

H = get_algebra("quaternions")
HALF = Fraction(1, 2)
GRID = (-2, -1, 0, 1, 2)


def rand_vec(rng, n):
    return tuple(rand_fraction(rng) for _ in range(n))


def test_criterion_01_quaternion_family_grid():
    with criterion(1, "quaternion family, 125 grid points, exact"):
        start = time.perf_counter()
        for abc in itertools.product(GRID, repeat=3):
            qt = quadratic_from_r(H, quaternion_r(*abc), HALF)
            assert jacobiator(qt).passed, abc
            assert multiplicativity_residual(H, qt).passed, abc
            assert unit_vanishing(H, qt).passed, abc
            assert sphere_casimir_residual(qt).passed, abc
        assert time.perf_counter() - start < 5.0


def test_criterion_02_quaternion_regression():
    with criterion(2, "quaternion table regression and printed-table Jacobi failure"):
        derived = quadratic_from_r(H, quaternion_r(0, 0, 1), HALF)
        printed = quaternion_expected(0, 0, 1)
        diff = quaternion_arbitration(derived, printed)
        assert QUATERNION_ARBITRATION_ROWS == ((1, 3),)
        # every coefficient outside the arbitrated row agrees; that row is a pure sign flip
        assert {(i, j) for i, j, *_ in diff} == {(1, 3)}
        assert all(d == -p for *_, d, p in diff)
        residual = dict(jacobiator(printed).entries)
        # the (x2, x3, x4) cyclic sum is -2 x2 x3 x4
        assert residual[(1, 2, 3, (1, 2, 3))] == -2
        assert all(k[:3] != (1, 2, 3) or k == (1, 2, 3, (1, 2, 3)) for k in residual)


def test_criterion_03_ab_ba():
    with criterion(3, "ab-ba: upper triangular 2x2 with e11^e12"):
        ut = get_algebra("upper_triangular", 2)
        r = RMatrix.wedge(ut.dim, 0, 1)
        assert cybe_residual(ut, r).is_zero()
        qt = quadratic_from_r(ut, r)
        assert not qt.is_zero()
        assert jacobiator(qt).passed
        assert multiplicativity_residual(ut, qt).passed


def test_criterion_04_nilpot():
    with criterion(4, "Nilpot: zero on Heisenberg, linear bracket on the unital extension"):
        g = get_algebra("heisenberg")
        rng = random.Random(4)
        for _ in range(20):
            r = random_r(rng, 3, density=0.9)
            assert quadratic_from_r(g, r).is_zero()
        hu = get_algebra("heisenberg_unital", 1)  # 1, p, q, z
        qt = quadratic_from_r(hu, RMatrix.wedge(4, 1, 2))
        lin = linear_bracket(cobracket_at(hu, qt, hu.unit))
        assert lin.component(1, 3) == {(1,): -1}
        assert lin.component(2, 3) == {(2,): -1}
        assert lin.component(1, 2) == {}
        assert jacobiator(lin).passed


def test_criterion_05_multiplicativity_iff_derivation():
    with criterion(5, "multiplicativity <=> derivation, 100/100"):
        rng = random.Random(5)
        outcomes = []
        for _ in range(100):
            alg = random_unital_algebra(rng)
            qt = mixed_quadratic(rng, alg)
            mult = multiplicativity_residual(alg, qt).passed
            assert mult == derivation_residual(alg, qt).passed
            outcomes.append(mult)
        # both branches of the equivalence are exercised
        assert 0 < sum(outcomes) < 100


def test_criterion_06_jacobi_iff_symmetric_annihilation():
    with criterion(6, "Jacobi <=> symmetric annihilation, extension independence"):
        rng = random.Random(6)
        outcomes = []
        for _ in range(100):
            alg = random_unital_algebra(rng)
            qt = mixed_quadratic(rng, alg)
            jac = jacobiator(qt).passed
            assert jac == symmetric_annihilation_residual(alg, extend_delta(qt)).passed
            outcomes.append(jac)
        assert 0 < sum(outcomes) < 100
        for n in range(100):
            alg = random_unital_algebra(rng)
            qt = random_quadratic(rng, alg.dim, density=0.4)
            first = symmetric_annihilation_residual(alg, extend_delta(qt, "randomized", 2 * n))
            second = symmetric_annihilation_residual(alg, extend_delta(qt, "randomized", 2 * n + 1))
            assert first.entries == second.entries


def _criterion7_r(rng, alg):
    kind = rng.choice(("random", "random", "sparse", "zero"))
    if kind == "zero":
        return RMatrix(alg.dim, {})
    if kind == "sparse":
        return random_r(rng, alg.dim, density=0.25)
    return random_r(rng, alg.dim)


def test_criterion_07_jacobi_iff_ad_invariance():
    with criterion(7, "Jacobi of ad_r <=> ad-invariance of the Schouten bracket"):
        rng = random.Random(7)
        outcomes = []
        for _ in range(50):
            alg = random_unital_algebra(rng)
            r = _criterion7_r(rng, alg)
            jac = jacobiator(quadratic_from_r(alg, r)).passed
            assert jac == ad_invariance_residual(alg, schouten(alg, r)).passed
            outcomes.append(jac)
        assert 0 < sum(outcomes) < 50
        # operator identity on the symmetric basis
        for _ in range(10):
            alg = random_unital_algebra(rng)
            r = random_r(rng, alg.dim)
            ext, s = ad_extension(alg, r), schouten(alg, r)
            for _, x in symmetric_basis(alg.dim):
                assert operator_schouten_apply(ext, x) == tensor3_commutator(alg, s, x)


def test_criterion_08_pencil_and_shift():
    with criterion(8, "compatible pencil and shift identity on the quaternions"):
        rng = random.Random(8)
        for abc in [(0, 0, 1), (2, -1, 1)] + [rand_vec(rng, 3) for _ in range(8)]:
            qt = quadratic_from_r(H, quaternion_r(*abc), HALF)
            lin = linear_bracket(cobracket_at(H, qt, H.unit))
            assert pencil_residual(qt, lin).passed
            for t in (1, -1, Fraction(1, 3)):
                expected = {}
                for key in set(qt.components) | set(lin.components):
                    poly = dict(qt.components.get(key, {}))
                    for mono, v in lin.components.get(key, {}).items():
                        poly[mono] = poly.get(mono, 0) + t * v
                    poly = {m: v for m, v in poly.items() if v}
                    if poly:
                        expected[key] = poly
                assert shifted_tensor(qt, H.unit, t) == expected


def test_criterion_09_bialgebra_layer():
    # Amended: Delta_a* is Lie exactly when jacobi_mixed(pi, pi(a)) vanishes, which
    # holds at a = u (and on span{u, w}) but not for generic a.  The exact identity
    # J(Delta_a*) = -M(pi, pi(a)) is asserted for all 100 draws instead.
    with criterion(9, "cocycle 50/50; Delta_a* Lie iff pi(a)-obstruction vanishes (amended)"):
        rng = random.Random(9)
        lie = lie_structure(H)
        for n in range(50):
            alg = H if n % 2 == 0 else get_algebra("matrix", 2)
            cb = coboundary_cobracket(alg, random_r(rng, alg.dim, density=0.8))
            assert cocycle_residual(lie if alg is H else lie_structure(alg), cb).passed

        abc = (1, -2, 3)
        qt = quadratic_from_r(H, quaternion_r(*abc), HALF)
        generic_failures = 0
        for _ in range(100):
            a = rand_vec(rng, 4)
            lin = linear_bracket(cobracket_at(H, qt, a))
            obstruction = dual_lie_obstruction(qt, a)
            assert dict(jacobiator(lin).entries) == {k: -v for k, v in obstruction.entries}
            assert dual_lie(cobracket_at(H, qt, a))[1].passed == obstruction.passed
            generic_failures += not obstruction.passed
        # the literal "always Lie" reading does not hold for generic a
        assert generic_failures >= 90

        # on span{u, w}, w = c i - b j + a k, pi(a) = 0 and Delta_a* is Lie
        for _ in range(100):
            s, t = rand_fraction(rng), rand_fraction(rng)
            a = (s, abc[2] * t, -abc[1] * t, abc[0] * t)
            assert value_tensor(qt, a).is_zero()
            assert dual_lie(cobracket_at(H, qt, a))[1].passed
        assert dual_lie(cobracket_at(H, qt, H.unit))[1].passed


def test_criterion_10_numeric():
    with criterion(10, "Drinfeld proportionality and Iso, 100 samples each"):
        plan = SamplePlan(seed=10, samples=100, tol=1e-9)
        r = quaternion_r(1, -2, 3)
        rep = drinfeld_proportionality(H, r, quadratic_from_r(H, r, 1), plan)
        assert rep.passed and rep.max_rel < 1e-9
        assert rep.extra["kappa_variance"] < 1e-18
        m = get_algebra("matrix", 2)
        rm = RMatrix.from_upper(4, [(0, 1, 1), (0, 3, Fraction(1, 2)), (1, 2, -1)])
        rep = drinfeld_proportionality(m, rm, quadratic_from_r(m, rm, 1), plan)
        assert rep.passed and rep.max_rel < 1e-9
        assert rep.extra["kappa_variance"] < 1e-18
        assert rep.extra["kappa"] == pytest.approx(-1.0)

        iso_plan = SamplePlan(seed=10, samples=100, low=0.05, high=2.0)
        group = group_multiplicativity_sample(get_algebra("componentwise", 2), log_bracket, iso_plan)
        assert group.passed and group.max_rel < 1e-9
        push = iso_pushforward_check(iso_plan)
        assert push.passed and push.max_abs < 1e-9


def test_criterion_11_matrix3_performance():
    with criterion(11, "matrix(3) exact suite under 60 s"):
        m3 = get_algebra("matrix", 3)
        r = random_r(random.Random(11), 9, density=0.5)
        start = time.perf_counter()
        qt = quadratic_from_r(m3, r)
        jacobiator(qt)
        assert multiplicativity_residual(m3, qt).passed
        cybe_residual(m3, r)
        ad_invariance_residual(m3, schouten(m3, r))
        assert time.perf_counter() - start < 60.0
