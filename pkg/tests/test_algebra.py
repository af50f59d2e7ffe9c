"""Tests for finite-dimensional associative algebra tables."""

import json

from hypothesis import given, settings
from hypothesis import strategies as st

from ybx.algebra import (
    Algebra,
    AssociativityError,
    ShapeError,
    UnitError,
    algebra_from_json_obj,
    load_algebra,
    make_algebra,
    mul_elements,
    quadratic_quotient_algebra,
)
from ybx.scalars import ONE, ZERO, as_scalar, const, var
from ybx import fixture_path


def assoc_violations(dim, c):
    # Brute-force loop kept independent of the library's validator.
    out = []
    for i in range(dim):
        for j in range(dim):
            for k in range(dim):
                lhs = [ZERO] * dim
                rhs = [ZERO] * dim
                for l in range(dim):
                    for m in range(dim):
                        lhs[m] = lhs[m] + c[i][j][l] * c[l][k][m]
                        rhs[m] = rhs[m] + c[j][k][l] * c[i][l][m]
                if lhs != rhs:
                    out.append((i, j, k))
    return out


def load_structure(name):
    obj = json.load(open(fixture_path(name)))
    return [[[as_scalar(e) for e in row] for row in plane] for plane in obj["structure"]]


class TestMakeAlgebra:
    def test_one_dimensional_field(self):
        A = make_algebra(1, [[[ONE]]], [ONE])
        assert A.dim == 1
        assert A.structure[0][0][0] == ONE

    def test_quadratic_symbolic_accepted(self):
        m, n = var("m"), var("n")
        A = quadratic_quotient_algebra(m, n)
        assert A.dim == 2
        assert A.structure[1][1] == (n, m)
        assert assoc_violations(2, A.structure) == []

    def test_quadratic_association_closed_form(self):
        # (x*x)*x and x*(x*x) both expand to m*n + (n + m^2) x.
        m, n = var("m"), var("n")
        A = quadratic_quotient_algebra(m, n)
        x = (ZERO, ONE)
        xx = mul_elements(A, x, x)
        left = mul_elements(A, xx, x)
        right = mul_elements(A, x, xx)
        expected = (m * n, n + m * m)
        assert left == expected
        assert right == expected

    def test_shifted_quadratic_table_is_still_associative(self):
        # Bumping the constant term of x*x yields the quotient at n+1,
        # which is a valid algebra; the validator must accept it.
        m, n = var("m"), var("n")
        base = quadratic_quotient_algebra(m, n)
        c = [[list(row) for row in plane] for plane in base.structure]
        c[1][1][0] = c[1][1][0] + ONE
        A = make_algebra(2, c, base.unit)
        assert A.structure == quadratic_quotient_algebra(m, n + ONE).structure

    def test_cubic_corruption_rejected_with_witness(self):
        c = load_structure("cubic.json")
        c[1][2][0] = ONE
        violations = assoc_violations(3, c)
        assert violations[0] == (1, 1, 1)
        try:
            make_algebra(3, c, [ONE, ZERO, ZERO])
        except AssociativityError as exc:
            assert exc.witness == violations[0]
            assert exc.lhs != exc.rhs
        else:
            raise AssertionError("corrupted table accepted")

    def test_unit_corruption_rejected(self):
        m, n = var("m"), var("n")
        base = quadratic_quotient_algebra(m, n)
        c = [[list(row) for row in plane] for plane in base.structure]
        c[0][1] = [ONE, ONE]
        try:
            make_algebra(2, c, base.unit)
        except UnitError as exc:
            assert exc.witness == 1
            assert exc.side == "unit*e"
        else:
            raise AssertionError("broken unit accepted")

    def test_shape_errors(self):
        try:
            make_algebra(2, [[[ONE, ZERO]]], [ONE, ZERO])
        except ShapeError:
            pass
        else:
            raise AssertionError("ragged table accepted")
        try:
            make_algebra(2, [[[ONE, ZERO], [ZERO, ONE]]] * 2, [ONE])
        except ShapeError:
            pass
        else:
            raise AssertionError("short unit accepted")

    def test_accepted_tables_reverify(self):
        fixtures = ["quadratic.json", "sigma.json", "cubic.json"]
        for name in fixtures:
            A = load_algebra(fixture_path(name))
            assert assoc_violations(A.dim, A.structure) == []


class TestMulElements:
    def test_generator_square(self):
        m, n = var("m"), var("n")
        A = quadratic_quotient_algebra(m, n)
        assert mul_elements(A, (ZERO, ONE), (ZERO, ONE)) == (n, m)

    def test_unit_is_neutral(self):
        A = load_algebra(fixture_path("cubic.json"))
        b = (const(3), const(-1), const(5))
        u = tuple(A.unit)
        assert mul_elements(A, u, b) == b
        assert mul_elements(A, b, u) == b

    def test_sigma_square(self):
        A = load_algebra(fixture_path("sigma.json"))
        prod = mul_elements(A, (ZERO, ONE), (ZERO, ONE))
        assert prod == (var("sigma"), ZERO)

    def test_bilinearity_sample(self):
        A = load_algebra(fixture_path("cubic.json"))
        a = (ONE, const(2), ZERO)
        b = (ZERO, ONE, const(-1))
        c = (const(4), ZERO, ONE)
        ab = tuple(x + y for x, y in zip(a, b))
        lhs = mul_elements(A, ab, c)
        rhs = tuple(
            x + y
            for x, y in zip(mul_elements(A, a, c), mul_elements(A, b, c))
        )
        assert lhs == rhs


class TestQuadraticQuotient:
    def test_structure_entries(self):
        m, n = var("m"), var("n")
        A = quadratic_quotient_algebra(m, n)
        assert A.structure[0][0] == (ONE, ZERO)
        assert A.structure[0][1] == (ZERO, ONE)
        assert A.structure[1][0] == (ZERO, ONE)
        assert A.structure[1][1] == (n, m)
        assert A.labels == ("1", "x")

    def test_dual_numbers(self):
        A = quadratic_quotient_algebra(ZERO, ZERO)
        x = (ZERO, ONE)
        assert mul_elements(A, x, x) == (ZERO, ZERO)

    def test_commutative(self):
        m, n = var("m"), var("n")
        A = quadratic_quotient_algebra(m, n)
        for i in range(2):
            for j in range(2):
                assert A.structure[i][j] == A.structure[j][i]


class TestSubstitute:
    def test_specialize_to_sigma_table(self):
        m, n = var("m"), var("n")
        A = quadratic_quotient_algebra(m, n)
        B = A.substitute({"m": ZERO, "n": var("sigma")})
        S = load_algebra(fixture_path("sigma.json"))
        assert B.structure == S.structure

    def test_substitute_revalidates(self):
        m, n = var("m"), var("n")
        A = quadratic_quotient_algebra(m, n)
        B = A.substitute({"m": const(1), "n": const(1)})
        assert B.names == frozenset()
        assert assoc_violations(2, B.structure) == []


class TestSerialization:
    def test_fixture_round_trip(self):
        for name in ("quadratic.json", "sigma.json", "cubic.json"):
            A = load_algebra(fixture_path(name))
            B = algebra_from_json_obj(A.to_json_obj())
            assert A == B
            assert A.labels == B.labels

    def test_missing_key_rejected(self):
        obj = json.load(open(fixture_path("quadratic.json")))
        del obj["unit"]
        try:
            algebra_from_json_obj(obj)
        except ShapeError:
            pass
        else:
            raise AssertionError("missing unit accepted")

    def test_bad_dim_rejected(self):
        obj = json.load(open(fixture_path("quadratic.json")))
        obj["dim"] = 3
        try:
            algebra_from_json_obj(obj)
        except ShapeError:
            pass
        else:
            raise AssertionError("dim mismatch accepted")


@given(
    m=st.integers(min_value=-5, max_value=5),
    n=st.integers(min_value=-5, max_value=5),
)
@settings(max_examples=40, deadline=None)
def test_quadratic_always_associative(m, n):
    A = quadratic_quotient_algebra(const(m), const(n))
    assert assoc_violations(2, A.structure) == []


@given(
    a0=st.integers(min_value=-3, max_value=3),
    a1=st.integers(min_value=-3, max_value=3),
    b0=st.integers(min_value=-3, max_value=3),
    b1=st.integers(min_value=-3, max_value=3),
)
@settings(max_examples=40, deadline=None)
def test_quadratic_product_commutes(a0, a1, b0, b1):
    A = quadratic_quotient_algebra(var("m"), var("n"))
    a = (const(a0), const(a1))
    b = (const(b0), const(b1))
    assert mul_elements(A, a, b) == mul_elements(A, b, a)
