"""Builders for the operator families: the three-parameter product family
on an associative algebra, its two-parameter colored variant, WXZ triples,
split-center solutions, and the graded-twist-plus-bracket family on a Lie
superalgebra.

Each builder returns ordinary Operator2 matrices in the fixed basis
convention, so the verification layer never needs to know where an
operator came from.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

from .algebra import Algebra
from .lie_super import LieSuperalgebra, bracket_elements
from .scalars import ONE, ZERO, ParamScalar, as_scalar
from .tensor import Operator2


class NotYangBaxterError(ValueError):
    """Parameters outside every family for which an inverse formula holds."""


class FreeIndeterminateError(ValueError):
    """Classification needs constants; a symbol was left unbound."""

    def __init__(self, names):
        super().__init__(
            "cannot classify with free indeterminates: " + ", ".join(sorted(names))
        )
        self.names = frozenset(names)


class InvertibilityLocusError(ValueError):
    """The requested point lies where the inverse formula degenerates;
    carries the factor that vanishes."""

    def __init__(self, factor: str):
        super().__init__(f"inverse undefined where {factor} = 0")
        self.factor = factor


class SupportViolationError(ValueError):
    """A split-center component takes a nonzero value on a basis tensor
    with a distinguished-vector leg."""

    def __init__(self, which: str, tensor: Tuple[int, int]):
        i, j = tensor
        super().__init__(
            f"{which} must vanish on e{i} (x) e{j}: one leg is the "
            f"distinguished vector"
        )
        self.which = which
        self.tensor = tensor


class InvalidCenterError(ValueError):
    """The chosen element is not an even central element."""

    def __init__(self, reason: str, witness=None):
        super().__init__(reason)
        self.witness = witness


# ---------------------------------------------------------------------------
# product-built operators on an associative algebra
# ---------------------------------------------------------------------------

def _product_map(A: Algebra, left, right, diag, swap: bool,
                 reverse: bool = False) -> Operator2:
    """The map a(x)b -> left*ab(x)1 + right*1(x)ab - diag*(b(x)a or a(x)b).

    reverse replaces the product ab by ba in both product terms.
    """
    n = A.dim
    left = as_scalar(left)
    right = as_scalar(right)
    diag = as_scalar(diag)
    unit = A.unit
    size = n * n
    rows = [[ZERO] * size for _ in range(size)]
    for i in range(n):
        for j in range(n):
            col = i * n + j
            prod = A.structure[j][i] if reverse else A.structure[i][j]
            for k in range(n):
                pk = prod[k]
                if pk.is_zero:
                    continue
                for l in range(n):
                    ul = unit[l]
                    if ul.is_zero:
                        continue
                    if not left.is_zero:
                        r = k * n + l
                        rows[r][col] = rows[r][col] + left * pk * ul
                    if not right.is_zero:
                        r = l * n + k
                        rows[r][col] = rows[r][col] + right * ul * pk
            if not diag.is_zero:
                r = (j * n + i) if swap else col
                rows[r][col] = rows[r][col] - diag
    return Operator2(n, rows)


def dn_operator(A: Algebra, alpha, beta, gamma) -> Operator2:
    """a(x)b -> alpha*ab(x)1 + beta*1(x)ab - gamma*a(x)b."""
    return _product_map(A, alpha, beta, gamma, swap=False)


def classify_dn(alpha, beta, gamma) -> str:
    """Which invertible-solution case constant (alpha, beta, gamma) lies in:
    "i" (alpha = gamma != 0, beta != 0), "ii" (beta = gamma != 0,
    alpha != 0), "iii" (alpha = beta = 0, gamma != 0), or "none".

    "i" is preferred on the overlap alpha = beta = gamma != 0; the inverse
    formulas of cases i and ii agree there, so nothing observable depends
    on the preference.
    """
    a, b, g = as_scalar(alpha), as_scalar(beta), as_scalar(gamma)
    free = a.names | b.names | g.names
    if free:
        raise FreeIndeterminateError(free)
    if not g.is_zero:
        if a == g and not b.is_zero:
            return "i"
        if b == g and not a.is_zero:
            return "ii"
        if a.is_zero and b.is_zero:
            return "iii"
    return "none"


def _dn_case_symbolic(a: ParamScalar, b: ParamScalar, g: ParamScalar):
    """Case detection that also accepts symbolic parameters: equalities are
    exact identities of rational functions, nonzeroness means not
    identically zero (so a generic point of the case)."""
    if not g.is_zero:
        if a == g and not b.is_zero:
            return "i"
        if b == g and not a.is_zero:
            return "ii"
        if a.is_zero and b.is_zero:
            return "iii"
    return None


def dn_inverse(A: Algebra, alpha, beta, gamma) -> Operator2:
    """The closed-form inverse of dn_operator in the three invertible
    cases; anything else raises, because outside them the operator is not
    an invertible braid solution."""
    a, b, g = as_scalar(alpha), as_scalar(beta), as_scalar(gamma)
    case = _dn_case_symbolic(a, b, g)
    if case is None:
        raise NotYangBaxterError(
            f"({a}, {b}, {g}) lies in no invertible case of the family"
        )
    if case == "iii":
        return dn_operator(A, ZERO, ZERO, g.reciprocal())
    return dn_operator(A, b.reciprocal(), a.reciprocal(), g.reciprocal())


# ---------------------------------------------------------------------------
# the colored (two-parameter) family
# ---------------------------------------------------------------------------

def colored_operator(A: Algebra, p, q, u, v) -> Operator2:
    """R(u,v): a(x)b -> p(u-v)1(x)ab + q(u-v)ab(x)1 - (pu-qv)b(x)a."""
    p, q, u, v = (as_scalar(s) for s in (p, q, u, v))
    duv = u - v
    return _product_map(A, q * duv, p * duv, p * u - q * v, swap=True)


def colored_inverse(A: Algebra, p, q, u, v) -> Operator2:
    """Closed-form inverse of colored_operator away from the degenerate
    locus; the vanishing factor is reported when on it."""
    p, q, u, v = (as_scalar(s) for s in (p, q, u, v))
    puqv = p * u - q * v
    qupv = q * u - p * v
    if puqv.is_zero:
        raise InvertibilityLocusError("p*u - q*v")
    if qupv.is_zero:
        raise InvertibilityLocusError("q*u - p*v")
    duv = u - v
    dd = qupv * puqv
    return _product_map(A, p * duv / dd, q * duv / dd, puqv.reciprocal(),
                        swap=True, reverse=True)


# ---------------------------------------------------------------------------
# WXZ triples
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WxzTriple:
    """Three operators on the same square tensor space, as one object so
    the four-commutator check can't be fed mismatched pieces."""

    W: Operator2
    X: Operator2
    Z: Operator2

    def __post_init__(self):
        if not (self.W.dim == self.X.dim == self.Z.dim):
            raise ValueError("W, X, Z must share a dimension")


def wxz_system(A: Algebra, lam, mu) -> WxzTriple:
    """W: a(x)b -> ab(x)1 + lam*1(x)ab - b(x)a, Z with mu on the other
    product term, X with both coefficients 1."""
    lam = as_scalar(lam)
    mu = as_scalar(mu)
    W = _product_map(A, ONE, lam, ONE, swap=True)
    Z = _product_map(A, mu, ONE, ONE, swap=True)
    X = _product_map(A, ONE, ONE, ONE, swap=True)
    return WxzTriple(W=W, X=X, Z=Z)


# ---------------------------------------------------------------------------
# split-center solutions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SplitSpace:
    """V = W + k*c: a space with one distinguished basis vector c; the
    W_indices are all the others."""

    total_dim: int
    c_index: int
    W_indices: Tuple[int, ...] = field(default=())

    def __post_init__(self):
        if not 0 <= self.c_index < self.total_dim:
            raise ValueError("c_index out of range")
        expected = tuple(i for i in range(self.total_dim) if i != self.c_index)
        if self.W_indices == ():
            object.__setattr__(self, "W_indices", expected)
        elif tuple(sorted(self.W_indices)) != expected:
            raise ValueError("W_indices must be every index except c_index")


def split_center_operator(space: SplitSpace, f: Operator2, g: Operator2) -> Operator2:
    """v(x)w -> f^(v(x)w)(x)c + c(x)g^(v(x)w), where f^ keeps the (x)c
    component row of f and g^ the c(x) component row of g.

    Both f and g must vanish on every basis tensor with a leg equal to c;
    that is validated before anything is built.
    """
    n = space.total_dim
    c = space.c_index
    if f.dim != n or g.dim != n:
        raise ValueError("f and g must act on the total space")
    for name, op in (("f", f), ("g", g)):
        for i in range(n):
            for j in range(n):
                if i != c and j != c:
                    continue
                col = i * n + j
                if any(not op.rows[r][col].is_zero for r in range(n * n)):
                    raise SupportViolationError(name, (i, j))
    size = n * n
    rows = [[ZERO] * size for _ in range(size)]
    for col in range(size):
        for k in range(n):
            e = f.rows[k * n + c][col]
            if not e.is_zero:
                rows[k * n + c][col] = rows[k * n + c][col] + e
        for l in range(n):
            e = g.rows[c * n + l][col]
            if not e.is_zero:
                rows[c * n + l][col] = rows[c * n + l][col] + e
    return Operator2(n, rows)


# ---------------------------------------------------------------------------
# the superalgebra family: graded twist plus bracket-into-center
# ---------------------------------------------------------------------------

def _check_center(L: LieSuperalgebra, z: Sequence) -> Tuple[ParamScalar, ...]:
    zv = tuple(as_scalar(c) for c in z)
    if len(zv) != L.dim:
        raise InvalidCenterError(f"z must have length {L.dim}")
    for i, c in enumerate(zv):
        if not c.is_zero and L.degree[i] != 0:
            raise InvalidCenterError(
                f"z has a component on the odd basis vector e{i}", witness=i
            )
    for j in range(L.dim):
        probe = tuple(ONE if t == j else ZERO for t in range(L.dim))
        if any(not c.is_zero for c in bracket_elements(L, zv, probe)):
            raise InvalidCenterError(
                f"z is not central: [z, e{j}] != 0", witness=j
            )
    return zv


def _graded_twist_rows(L: LieSuperalgebra):
    n = L.dim
    size = n * n
    rows = [[ZERO] * size for _ in range(size)]
    for i in range(n):
        for j in range(n):
            sign = -1 if L.degree[i] * L.degree[j] else 1
            e = ONE if sign > 0 else -ONE
            rows[j * n + i][i * n + j] = e
    return rows


def super_phi(L: LieSuperalgebra, z: Sequence, alpha) -> Operator2:
    """x(x)y -> alpha*[x,y](x)z + (-1)^{|x||y|} y(x)x, for even central z."""
    alpha = as_scalar(alpha)
    zv = _check_center(L, z)
    n = L.dim
    rows = _graded_twist_rows(L)
    if not alpha.is_zero:
        for i in range(n):
            for j in range(n):
                col = i * n + j
                br = L.bracket[i][j]
                for k in range(n):
                    if br[k].is_zero:
                        continue
                    for l in range(n):
                        if zv[l].is_zero:
                            continue
                        r = k * n + l
                        rows[r][col] = rows[r][col] + alpha * br[k] * zv[l]
    return Operator2(n, rows)


def super_phi_inverse(L: LieSuperalgebra, z: Sequence, alpha) -> Operator2:
    """x(x)y -> alpha*z(x)[x,y] + (-1)^{|x||y|} y(x)x; inverse of super_phi
    with the same z and alpha."""
    alpha = as_scalar(alpha)
    zv = _check_center(L, z)
    n = L.dim
    rows = _graded_twist_rows(L)
    if not alpha.is_zero:
        for i in range(n):
            for j in range(n):
                col = i * n + j
                br = L.bracket[i][j]
                for k in range(n):
                    if zv[k].is_zero:
                        continue
                    for l in range(n):
                        if br[l].is_zero:
                            continue
                        r = k * n + l
                        rows[r][col] = rows[r][col] + alpha * zv[k] * br[l]
    return Operator2(n, rows)


# ---------------------------------------------------------------------------
# the canonical two-dimensional reduced form
# ---------------------------------------------------------------------------

def canonical_two_dim_solution(q, eta: int) -> Operator2:
    """The one-parameter reduced form on a two-dimensional space, with a
    single extra corner entry eta in {0, 1}; solves the constant QYBE for
    any nonzero q."""
    if eta not in (0, 1):
        raise ValueError("eta must be 0 or 1")
    q = as_scalar(q)
    return Operator2(2, [
        [ONE, ZERO, ZERO, ZERO],
        [ZERO, ONE, ZERO, ZERO],
        [ZERO, ONE - q, q, ZERO],
        [as_scalar(eta), ZERO, ZERO, -q],
    ])
