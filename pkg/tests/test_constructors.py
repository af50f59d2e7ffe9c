"""Tests for the operator families built from algebra and bracket data."""

import random
from fractions import Fraction

import pytest

import oracles
from ybx.algebra import mul_elements, quadratic_quotient_algebra
from ybx.constructors import (
    FreeIndeterminateError,
    InvalidCenterError,
    InvertibilityLocusError,
    NotYangBaxterError,
    SplitSpace,
    SupportViolationError,
    WxzTriple,
    canonical_two_dim_solution,
    classify_dn,
    colored_inverse,
    colored_operator,
    dn_inverse,
    dn_operator,
    split_center_operator,
    super_phi,
    super_phi_inverse,
    wxz_system,
)
from ybx.lie_super import even_center, load_superalgebra
from ybx.scalars import ONE, ZERO, as_scalar, const, var
from ybx.tensor import (
    Operator2,
    braid_defect,
    colored_defect,
    compose,
    invert,
    qybe_defect,
    twist,
    yb_commutator,
)
from ybx import fixture_path


def symbolic_quadratic():
    return quadratic_quotient_algebra(var("m"), var("n"))


def numeric_quadratic():
    return quadratic_quotient_algebra(const(1), const(1))


def identity_op(n):
    return Operator2.identity(n)


def expected_product_column(A, i, j, left, right, diag, swap):
    # Direct expansion of left*ab(x)1 + right*1(x)ab - diag*(swap of a(x)b),
    # using only mul_elements; independent of the matrix builder.
    n = A.dim
    ei = tuple(ONE if t == i else ZERO for t in range(n))
    ej = tuple(ONE if t == j else ZERO for t in range(n))
    prod = mul_elements(A, ei, ej)
    out = [ZERO] * (n * n)
    for k in range(n):
        for l in range(n):
            out[k * n + l] = (
                out[k * n + l]
                + left * prod[k] * A.unit[l]
                + right * A.unit[k] * prod[l]
            )
    target = (j * n + i) if swap else (i * n + j)
    out[target] = out[target] - diag
    return out


class TestDnOperator:
    def test_action_matches_direct_expansion(self):
        A = symbolic_quadratic()
        a, b, g = var("a"), var("b"), var("g")
        R = dn_operator(A, a, b, g)
        n = A.dim
        for i in range(n):
            for j in range(n):
                col = i * n + j
                expect = expected_product_column(A, i, j, a, b, g, swap=False)
                got = [R.rows[r][col] for r in range(n * n)]
                assert got == expect, (i, j)

    def test_case_iii_is_negative_scalar(self):
        A = numeric_quadratic()
        R = dn_operator(A, ZERO, ZERO, const(3))
        assert R == identity_op(2).scale(const(-3))

    def test_braid_zero_in_all_three_cases_symbolically(self):
        A = symbolic_quadratic()
        a, b = var("a"), var("b")
        cases = [
            dn_operator(A, a, b, a),
            dn_operator(A, a, b, b),
            dn_operator(A, ZERO, ZERO, a),
        ]
        for R in cases:
            assert braid_defect(R).is_zero()

    def test_generic_triple_is_not_a_solution(self):
        A = numeric_quadratic()
        R = dn_operator(A, const(1), const(2), const(3))
        assert not braid_defect(R).is_zero()

    def test_converse_on_small_grid(self):
        # On {0..3}^3 with a fixed numeric algebra, being an invertible
        # braid solution coincides exactly with case membership.
        A = numeric_quadratic()
        in_case = 0
        for a in range(4):
            for b in range(4):
                for g in range(4):
                    R = dn_operator(A, const(a), const(b), const(g))
                    case = classify_dn(const(a), const(b), const(g))
                    solves = braid_defect(R).is_zero()
                    inv = invert(R).invertible
                    assert (solves and inv) == (case != "none"), (a, b, g)
                    if case != "none":
                        in_case += 1
        assert in_case == 18


class TestDnInverse:
    def test_case_i_formula(self):
        A = symbolic_quadratic()
        a, b = var("a"), var("b")
        Rinv = dn_inverse(A, a, b, a)
        assert Rinv == dn_operator(A, b.reciprocal(), a.reciprocal(), a.reciprocal())

    def test_round_trips(self):
        A = symbolic_quadratic()
        a, b = var("a"), var("b")
        triples = [(a, b, a), (a, b, b), (ZERO, ZERO, a)]
        for alpha, beta, gamma in triples:
            R = dn_operator(A, alpha, beta, gamma)
            Rinv = dn_inverse(A, alpha, beta, gamma)
            assert compose(R, Rinv).is_identity()
            assert compose(Rinv, R).is_identity()

    def test_case_iii_inverse(self):
        A = numeric_quadratic()
        Rinv = dn_inverse(A, ZERO, ZERO, const(4))
        assert Rinv == identity_op(2).scale(as_scalar(Fraction(-1, 4)))

    def test_out_of_case_rejected(self):
        A = numeric_quadratic()
        with pytest.raises(NotYangBaxterError):
            dn_inverse(A, const(1), const(2), const(3))

    def test_matches_exact_matrix_inversion(self):
        A = numeric_quadratic()
        R = dn_operator(A, const(1), const(2), const(1))
        res = invert(R)
        assert res.invertible
        assert res.operator == dn_inverse(A, const(1), const(2), const(1))


class TestClassifyDn:
    def test_labels(self):
        assert classify_dn(const(2), const(3), const(2)) == "i"
        assert classify_dn(const(3), const(2), const(2)) == "ii"
        assert classify_dn(ZERO, ZERO, const(7)) == "iii"
        assert classify_dn(ZERO, ZERO, ZERO) == "none"
        assert classify_dn(const(1), const(2), const(3)) == "none"
        assert classify_dn(const(5), const(5), ZERO) == "none"

    def test_overlap_prefers_i(self):
        assert classify_dn(const(4), const(4), const(4)) == "i"

    def test_overlap_inverse_agrees_both_ways(self):
        A = symbolic_quadratic()
        c = var("c")
        both = dn_operator(A, c.reciprocal(), c.reciprocal(), c.reciprocal())
        assert dn_inverse(A, c, c, c) == both

    def test_free_symbols_rejected(self):
        with pytest.raises(FreeIndeterminateError) as err:
            classify_dn(var("a"), const(1), var("a"))
        assert err.value.names == frozenset({"a"})


class TestColoredFamily:
    def test_action_matches_direct_expansion(self):
        A = symbolic_quadratic()
        p, q, u, v = var("p"), var("q"), var("u"), var("v")
        R = colored_operator(A, p, q, u, v)
        n = A.dim
        duv = u - v
        for i in range(n):
            for j in range(n):
                col = i * n + j
                expect = expected_product_column(
                    A, i, j, q * duv, p * duv, p * u - q * v, swap=True
                )
                got = [R.rows[r][col] for r in range(n * n)]
                assert got == expect, (i, j)

    def test_equal_colors_collapse_to_scaled_twist(self):
        A = symbolic_quadratic()
        p, q, u = var("p"), var("q"), var("u")
        R = colored_operator(A, p, q, u, u)
        assert R == twist(2).scale((q - p) * u)

    def test_colored_equation_symbolic(self):
        A = symbolic_quadratic()
        p, q = var("p"), var("q")
        u, v, w = var("u"), var("v"), var("w")
        D = colored_defect(
            colored_operator(A, p, q, u, v),
            colored_operator(A, p, q, u, w),
            colored_operator(A, p, q, v, w),
        )
        assert D.is_zero()

    def test_sign_flipped_family_fails(self):
        A = numeric_quadratic()
        p, q = const(1), const(2)
        u, v, w = const(3), const(1), const(2)

        def mutant(x, y):
            flip = (p * x - q * y) + (p * x - q * y)
            return colored_operator(A, p, q, x, y) + twist(2).scale(flip)

        D = colored_defect(mutant(u, v), mutant(u, w), mutant(v, w))
        assert not D.is_zero()

    def test_specialization_at_base_colors(self):
        # Freezing v = 0 and composing with the twist on either side lands
        # back in the constant family, with the roles of p and q set by the
        # side of the composition.
        A = symbolic_quadratic()
        p, q = var("p"), var("q")
        Rv0 = colored_operator(A, p, q, ONE, ZERO)
        assert compose(twist(2), Rv0) == dn_operator(A, p, q, p)
        assert compose(Rv0, twist(2)) == dn_operator(A, q, p, p)

    def test_inverse_round_trip_symbolic(self):
        A = symbolic_quadratic()
        p, q, u, v = var("p"), var("q"), var("u"), var("v")
        R = colored_operator(A, p, q, u, v)
        Rinv = colored_inverse(A, p, q, u, v)
        assert compose(R, Rinv).is_identity()
        assert compose(Rinv, R).is_identity()

    def test_inverse_matches_exact_matrix_inversion(self):
        A = numeric_quadratic()
        args = (const(1), const(2), const(3), const(1))
        res = invert(colored_operator(A, *args))
        assert res.invertible
        assert res.operator == colored_inverse(A, *args)

    def test_locus_errors(self):
        A = numeric_quadratic()
        with pytest.raises(InvertibilityLocusError) as err:
            colored_inverse(A, const(1), const(1), const(2), const(2))
        assert err.value.factor == "p*u - q*v"
        with pytest.raises(InvertibilityLocusError) as err:
            colored_inverse(A, const(1), const(2), const(2), const(4))
        assert err.value.factor == "q*u - p*v"


class TestWxzSystem:
    def test_unit_parameters_collapse(self):
        A = symbolic_quadratic()
        t = wxz_system(A, ONE, ONE)
        assert t.W == t.X == t.Z

    def test_x_is_twisted_constant_operator(self):
        A = symbolic_quadratic()
        t = wxz_system(A, var("l"), var("u"))
        assert t.X == compose(dn_operator(A, ONE, ONE, ONE), twist(2))

    def test_four_commutators_vanish_symbolically(self):
        A = symbolic_quadratic()
        t = wxz_system(A, var("l"), var("u"))
        assert yb_commutator(t.W, t.W, t.W).is_zero()
        assert yb_commutator(t.Z, t.Z, t.Z).is_zero()
        assert yb_commutator(t.W, t.X, t.X).is_zero()
        assert yb_commutator(t.X, t.X, t.Z).is_zero()

    def test_mixed_commutator_against_dense_oracle(self):
        A = numeric_quadratic()
        t = wxz_system(A, const(2), const(3))
        W = oracles.frac_matrix(t.W, {})
        X = oracles.frac_matrix(t.X, {})
        Z = oracles.frac_matrix(t.Z, {})
        assert oracles.is_zero_matrix(oracles.commutator_matrix(W, X, X, 2))
        assert oracles.is_zero_matrix(oracles.commutator_matrix(X, X, Z, 2))

    def test_w_alone_is_not_a_braid_solution_generically(self):
        A = numeric_quadratic()
        t = wxz_system(A, const(2), const(3))
        assert not braid_defect(t.W).is_zero()

    def test_mismatched_dims_rejected(self):
        with pytest.raises(ValueError):
            WxzTriple(
                W=identity_op(2), X=identity_op(2), Z=identity_op(3)
            )


def random_supported_pair(n, c, rng):
    size = n * n
    ops = []
    for _ in range(2):
        rows = [[ZERO] * size for _ in range(size)]
        for r in range(size):
            for i in range(n):
                for j in range(n):
                    if i == c or j == c:
                        continue
                    rows[r][i * n + j] = const(rng.randint(-3, 3))
        ops.append(Operator2(n, rows))
    return ops


class TestSplitCenter:
    def test_zero_components_give_zero_solution(self):
        sp = SplitSpace(3, 2)
        z = Operator2.zero(3)
        R = split_center_operator(sp, z, z)
        assert R.is_zero()
        assert qybe_defect(R).is_zero()

    def test_random_instances_solve_qybe(self):
        rng = random.Random(11)
        sp = SplitSpace(3, 2)
        for _ in range(5):
            f, g = random_supported_pair(3, 2, rng)
            R = split_center_operator(sp, f, g)
            assert qybe_defect(R).is_zero()
            M = oracles.frac_matrix(R, {})
            assert oracles.is_zero_matrix(oracles.qybe_defect_matrix(M, 3))

    def test_image_lands_in_center_legs(self):
        rng = random.Random(7)
        sp = SplitSpace(3, 0)
        f, g = random_supported_pair(3, 0, rng)
        R = split_center_operator(sp, f, g)
        for r in range(9):
            k, l = divmod(r, 3)
            if k != 0 and l != 0:
                assert all(e.is_zero for e in R.rows[r])

    def test_support_violation_rejected(self):
        sp = SplitSpace(3, 2)
        rows = [[ZERO] * 9 for _ in range(9)]
        rows[0][2 * 3 + 1] = ONE
        bad = Operator2(3, rows)
        with pytest.raises(SupportViolationError) as err:
            split_center_operator(sp, bad, Operator2.zero(3))
        assert err.value.which == "f"
        assert err.value.tensor == (2, 1)

    def test_violation_in_second_component(self):
        sp = SplitSpace(3, 1)
        rows = [[ZERO] * 9 for _ in range(9)]
        rows[4][0 * 3 + 1] = ONE
        bad = Operator2(3, rows)
        with pytest.raises(SupportViolationError) as err:
            split_center_operator(sp, Operator2.zero(3), bad)
        assert err.value.which == "g"
        assert err.value.tensor == (0, 1)

    def test_space_validation(self):
        with pytest.raises(ValueError):
            SplitSpace(3, 3)
        sp = SplitSpace(4, 1)
        assert sp.W_indices == (0, 2, 3)
        with pytest.raises(ValueError):
            SplitSpace(3, 0, W_indices=(0, 1))


class TestSuperPhi:
    def test_abelian_reduces_to_graded_twist(self):
        L = load_superalgebra(fixture_path("abelian-super.json"))
        phi = super_phi(L, (ONE, ZERO, ZERO), var("a"))
        tw = super_phi(L, (ONE, ZERO, ZERO), ZERO)
        assert phi == tw
        assert braid_defect(phi).is_zero()

    def test_graded_twist_signs(self):
        L = load_superalgebra(fixture_path("abelian-super.json"))
        tw = super_phi(L, (ONE, ZERO, ZERO), ZERO)
        # odd (x) odd picks up a sign, even (x) odd does not
        col_oo = 2 * 3 + 2
        assert tw.rows[col_oo][col_oo] == -ONE
        col_eo = 0 * 3 + 2
        assert tw.rows[2 * 3 + 0][col_eo] == ONE

    def test_gl11_braid_zero_symbolic(self):
        L = load_superalgebra(fixture_path("gl11.json"))
        z = even_center(L)[0]
        phi = super_phi(L, z, var("a"))
        assert braid_defect(phi).is_zero()

    def test_gl11_inverse_round_trip(self):
        L = load_superalgebra(fixture_path("gl11.json"))
        z = even_center(L)[0]
        a = var("a")
        phi = super_phi(L, z, a)
        phi_inv = super_phi_inverse(L, z, a)
        assert compose(phi, phi_inv).is_identity()
        assert compose(phi_inv, phi).is_identity()

    def test_gl11_inverse_matches_exact_matrix_inversion(self):
        L = load_superalgebra(fixture_path("gl11.json"))
        z = even_center(L)[0]
        phi = super_phi(L, z, const(2))
        res = invert(phi)
        assert res.invertible
        assert res.operator == super_phi_inverse(L, z, const(2))

    def test_heisenberg_family(self):
        L = load_superalgebra(fixture_path("heisenberg-super.json"))
        z = even_center(L)[0]
        a = var("a")
        phi = super_phi(L, z, a)
        assert braid_defect(phi).is_zero()
        assert compose(phi, super_phi_inverse(L, z, a)).is_identity()

    def test_non_central_z_rejected(self):
        L = load_superalgebra(fixture_path("gl11.json"))
        with pytest.raises(InvalidCenterError) as err:
            super_phi(L, (ONE, ZERO, ZERO, ZERO), ONE)
        assert err.value.witness == 2

    def test_odd_support_rejected(self):
        L = load_superalgebra(fixture_path("gl11.json"))
        with pytest.raises(InvalidCenterError) as err:
            super_phi(L, (ZERO, ZERO, ONE, ZERO), ONE)
        assert err.value.witness == 2


class TestCanonicalTwoDim:
    def test_matrix_entries(self):
        q = var("q")
        R = canonical_two_dim_solution(q, 1)
        assert R.rows[0][0] == ONE
        assert R.rows[2][1] == ONE - q
        assert R.rows[2][2] == q
        assert R.rows[3][0] == ONE
        assert R.rows[3][3] == -q

    def test_solves_constant_equation_for_both_corners(self):
        q = var("q")
        for eta in (0, 1):
            R = canonical_two_dim_solution(q, eta)
            assert qybe_defect(R).is_zero()

    def test_numeric_instance_against_oracle(self):
        R = canonical_two_dim_solution(const(5), 1)
        M = oracles.frac_matrix(R, {})
        assert oracles.is_zero_matrix(oracles.qybe_defect_matrix(M, 2))

    def test_bad_corner_rejected(self):
        with pytest.raises(ValueError):
            canonical_two_dim_solution(ONE, 2)

    def test_invertible_for_nonzero_q(self):
        R = canonical_two_dim_solution(const(3), 0)
        res = invert(R)
        assert res.invertible
