"""Endomorphisms of V⊗V and V⊗V⊗V over exact scalars.

Conventions, fixed globally:

* basis vector e_i ⊗ e_j of V⊗V has flat index i*n + j (0-based), and
  e_i ⊗ e_j ⊗ e_k has flat index i*n^2 + j*n + k;
* matrices act on coordinate columns: column = input basis index, row =
  output basis index, so (A@B) means "apply B, then A".

All entries are ParamScalar, so every zero test below is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .scalars import ONE, ZERO, ParamScalar, as_scalar


class DimensionMismatch(ValueError):
    """Operands live on tensor powers of different spaces."""


class _Operator:
    """Shared machinery for square operators on a tensor power of V."""

    __slots__ = ("dim", "rows")
    legs: int = 0

    def __init__(self, dim: int, rows: Sequence[Sequence]):
        if dim < 1:
            raise ValueError("dim must be >= 1")
        size = dim ** self.legs
        if len(rows) != size or any(len(r) != size for r in rows):
            raise ValueError(f"expected a {size}x{size} matrix for dim {dim}")
        object.__setattr__(self, "dim", dim)
        object.__setattr__(
            self, "rows", tuple(tuple(as_scalar(e) for e in r) for r in rows)
        )

    def __setattr__(self, *_):
        raise AttributeError("operators are immutable")

    @property
    def size(self) -> int:
        return self.dim ** self.legs

    @classmethod
    def identity(cls, dim: int):
        size = dim ** cls.legs
        return cls(dim, [[ONE if i == j else ZERO for j in range(size)]
                         for i in range(size)])

    @classmethod
    def zero(cls, dim: int):
        size = dim ** cls.legs
        return cls(dim, [[ZERO] * size for _ in range(size)])

    def entry(self, row: int, col: int) -> ParamScalar:
        return self.rows[row][col]

    # -- algebra ------------------------------------------------------------

    def _require_same(self, other):
        if type(other) is not type(self) or other.dim != self.dim:
            raise DimensionMismatch(
                f"cannot combine {type(self).__name__}(dim={self.dim}) with "
                f"{type(other).__name__}(dim={getattr(other, 'dim', '?')})"
            )

    def __matmul__(self, other):
        self._require_same(other)
        size = self.size
        brows = other.rows
        out = []
        for i in range(size):
            arow = self.rows[i]
            nz = [(k, arow[k]) for k in range(size) if not arow[k].is_zero]
            row = []
            for j in range(size):
                acc = ZERO
                for k, a in nz:
                    b = brows[k][j]
                    if not b.is_zero:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return type(self)(self.dim, out)

    def __add__(self, other):
        self._require_same(other)
        return type(self)(self.dim, [
            [a + b for a, b in zip(ra, rb)]
            for ra, rb in zip(self.rows, other.rows)
        ])

    def __sub__(self, other):
        self._require_same(other)
        return type(self)(self.dim, [
            [a - b for a, b in zip(ra, rb)]
            for ra, rb in zip(self.rows, other.rows)
        ])

    def __neg__(self):
        return type(self)(self.dim, [[-a for a in r] for r in self.rows])

    def scale(self, c) -> "_Operator":
        c = as_scalar(c)
        return type(self)(self.dim, [[c * a for a in r] for r in self.rows])

    def transpose(self):
        size = self.size
        return type(self)(self.dim, [
            [self.rows[j][i] for j in range(size)] for i in range(size)
        ])

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return all(e.is_zero for r in self.rows for e in r)

    def is_identity(self) -> bool:
        for i, row in enumerate(self.rows):
            for j, e in enumerate(row):
                if i == j:
                    if not e.is_one:
                        return False
                elif not e.is_zero:
                    return False
        return True

    def first_nonzero(self):
        """(row, col, entry) of the first nonzero entry, or None."""
        for i, row in enumerate(self.rows):
            for j, e in enumerate(row):
                if not e.is_zero:
                    return i, j, e
        return None

    def __eq__(self, other):
        return (
            type(other) is type(self)
            and other.dim == self.dim
            and other.rows == self.rows
        )

    def __hash__(self):
        return hash((type(self).__name__, self.dim, self.rows))

    # -- point evaluation and substitution ----------------------------------

    def evaluate(self, assignment):
        """Specialize every entry at a point (entries become constants)."""
        from .scalars import const
        return type(self)(self.dim, [
            [const(e.evaluate(assignment)) for e in r] for r in self.rows
        ])

    def substitute(self, mapping):
        return type(self)(self.dim, [
            [e.substitute(mapping) for e in r] for r in self.rows
        ])

    @property
    def names(self) -> frozenset:
        out = frozenset()
        for r in self.rows:
            for e in r:
                out = out | e.names
        return out

    # -- serialization ------------------------------------------------------

    def to_json_obj(self) -> dict:
        return {
            "format": "ybx-operator-v1",
            "dim": self.dim,
            "legs": self.legs,
            "matrix": [[str(e) for e in r] for r in self.rows],
        }

    def to_text(self) -> str:
        """Aligned plain-text matrix."""
        cells = [[str(e) for e in r] for r in self.rows]
        widths = [max(len(cells[i][j]) for i in range(self.size))
                  for j in range(self.size)]
        lines = []
        for row in cells:
            body = "  ".join(c.rjust(w) for c, w in zip(row, widths))
            lines.append(f"[ {body} ]")
        return "\n".join(lines)

    def __repr__(self):
        return f"{type(self).__name__}(dim={self.dim})"


class Operator2(_Operator):
    """Linear endomorphism of V⊗V as an n^2 x n^2 matrix."""

    legs = 2

    def index(self, i: int, j: int) -> int:
        return i * self.dim + j

    @classmethod
    def from_action(cls, dim: int, action: Callable) -> "Operator2":
        """Build from the action on basis tensors.

        action(i, j) returns an iterable of ((k, l), coefficient) pairs
        meaning e_i ⊗ e_j maps to sum coefficient * e_k ⊗ e_l.
        """
        size = dim * dim
        cols = [[ZERO] * size for _ in range(size)]
        for i in range(dim):
            for j in range(dim):
                c = i * dim + j
                for (k, l), coeff in action(i, j):
                    cols[c][k * dim + l] = cols[c][k * dim + l] + as_scalar(coeff)
        return cls(dim, [[cols[c][r] for c in range(size)] for r in range(size)])


class Operator3(_Operator):
    """Linear endomorphism of V⊗V⊗V as an n^3 x n^3 matrix."""

    legs = 3

    def index(self, i: int, j: int, k: int) -> int:
        return (i * self.dim + j) * self.dim + k


def operator_from_json_obj(obj: dict):
    legs = obj.get("legs", 2)
    cls = {2: Operator2, 3: Operator3}.get(legs)
    if cls is None:
        raise ValueError(f"unsupported legs value {legs!r}")
    return cls(obj["dim"], obj["matrix"])


# ---------------------------------------------------------------------------
# the basic operators and leg embeddings
# ---------------------------------------------------------------------------

def twist(n: int) -> Operator2:
    """The flip v⊗w -> w⊗v as a permutation matrix."""
    size = n * n
    rows = [[ZERO] * size for _ in range(size)]
    for i in range(n):
        for j in range(n):
            rows[j * n + i][i * n + j] = ONE
    return Operator2(n, rows)


def embed(R: Operator2, legs: int) -> Operator3:
    """Lift R to V⊗V⊗V acting on the chosen pair of tensor factors.

    legs 12 is R⊗I, legs 23 is I⊗R, and legs 13 is the conjugation
    (I⊗τ)(R⊗I)(I⊗τ) of the first by the flip of the last two factors.
    """
    n = R.dim
    size3 = n ** 3
    if legs == 12:
        rows = [[ZERO] * size3 for _ in range(size3)]
        for r in range(n * n):
            for c in range(n * n):
                e = R.rows[r][c]
                if e.is_zero:
                    continue
                for k in range(n):
                    rows[r * n + k][c * n + k] = e
        return Operator3(n, rows)
    if legs == 23:
        rows = [[ZERO] * size3 for _ in range(size3)]
        for r in range(n * n):
            for c in range(n * n):
                e = R.rows[r][c]
                if e.is_zero:
                    continue
                for a in range(n):
                    rows[a * n * n + r][a * n * n + c] = e
        return Operator3(n, rows)
    if legs == 13:
        mid_twist = embed(twist(n), 23)
        return mid_twist @ embed(R, 12) @ mid_twist
    raise ValueError("legs must be one of 12, 23, 13")


def compose(A, B):
    """Function composition A∘B (apply B first); an exact matrix product."""
    return A @ B


# ---------------------------------------------------------------------------
# defects: LHS - RHS of the identities under test
# ---------------------------------------------------------------------------

def yb_commutator(R: Operator2, S: Operator2, T: Operator2) -> Operator3:
    """R^12 S^13 T^23 - T^23 S^13 R^12."""
    if not (R.dim == S.dim == T.dim):
        raise DimensionMismatch("yb_commutator needs equal dims")
    r12 = embed(R, 12)
    s13 = embed(S, 13)
    t23 = embed(T, 23)
    return r12 @ s13 @ t23 - t23 @ s13 @ r12


def braid_defect(R: Operator2) -> Operator3:
    """Defect of R^12 R^23 R^12 = R^23 R^12 R^23."""
    r12 = embed(R, 12)
    r23 = embed(R, 23)
    return r12 @ r23 @ r12 - r23 @ r12 @ r23


def qybe_defect(R: Operator2) -> Operator3:
    """Defect of R^12 R^13 R^23 = R^23 R^13 R^12 (the constant QYBE)."""
    return yb_commutator(R, R, R)


def colored_defect(Rxy: Operator2, Rxz: Operator2, Ryz: Operator2) -> Operator3:
    """Defect of the two-parameter QYBE for the three given specializations
    R(u,v), R(u,w), R(v,w)."""
    return yb_commutator(Rxy, Rxz, Ryz)


# ---------------------------------------------------------------------------
# exact elimination: determinant, inverse, nullspace
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class InverseResult:
    """Outcome of an exact inversion; non-invertibility is a result, not an
    error, and carries the vanishing determinant."""

    invertible: bool
    operator: Optional[Operator2]
    determinant: ParamScalar


def _forward_eliminate(M, pivot_limit):
    """Fraction-free (Bareiss) forward elimination in place.

    Pivots are searched in the first pivot_limit columns only; returns
    (pivot_columns, sign). Divisions by the previous pivot are exact.
    """
    nrows = len(M)
    ncols = len(M[0]) if nrows else 0
    sign = 1
    prev = ONE
    pivots = []
    r = 0
    for c in range(pivot_limit):
        p = None
        for i in range(r, nrows):
            if not M[i][c].is_zero:
                p = i
                break
        if p is None:
            continue
        if p != r:
            M[r], M[p] = M[p], M[r]
            sign = -sign
        piv = M[r][c]
        for i in range(r + 1, nrows):
            f = M[i][c]
            if f.is_zero:
                for j in range(c, ncols):
                    M[i][j] = (piv * M[i][j]) / prev
                continue
            for j in range(c, ncols):
                M[i][j] = (piv * M[i][j] - f * M[r][j]) / prev
        prev = piv
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots, sign


def determinant(op: _Operator) -> ParamScalar:
    """Exact determinant of the operator's matrix."""
    size = op.size
    M = [list(r) for r in op.rows]
    pivots, sign = _forward_eliminate(M, size)
    if len(pivots) < size:
        return ZERO
    det = M[size - 1][size - 1]
    return -det if sign < 0 else det


def invert(op: Operator2) -> InverseResult:
    """Exact inverse over the rational-function field, via fraction-free
    elimination; reports the determinant either way."""
    size = op.size
    M = [list(r) + [ONE if i == j else ZERO for j in range(size)]
         for i, r in enumerate(op.rows)]
    pivots, sign = _forward_eliminate(M, size)
    if len(pivots) < size:
        return InverseResult(False, None, ZERO)
    det = M[size - 1][size - 1]
    if sign < 0:
        det = -det
    # back-substitute each augmented column through the triangular left block
    inv_rows = [[ZERO] * size for _ in range(size)]
    for col in range(size):
        x = [ZERO] * size
        for i in range(size - 1, -1, -1):
            acc = M[i][size + col]
            for j in range(i + 1, size):
                if not M[i][j].is_zero and not x[j].is_zero:
                    acc = acc - M[i][j] * x[j]
            x[i] = acc / M[i][i]
        for i in range(size):
            inv_rows[i][col] = x[i]
    return InverseResult(True, Operator2(op.dim, inv_rows), det)


def nullspace(rows: Sequence[Sequence[ParamScalar]]):
    """A basis of the right nullspace of a rectangular scalar matrix.

    Returns a list of coordinate tuples; exact over the rational-function
    field."""
    nrows = len(rows)
    if nrows == 0:
        return []
    ncols = len(rows[0])
    M = [list(r) for r in rows]
    pivots, _ = _forward_eliminate(M, ncols)
    pivot_set = set(pivots)
    free_cols = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free_cols:
        x = [ZERO] * ncols
        x[fc] = ONE
        # echelon row r has pivot at pivots[r]; solve bottom-up
        for r in range(len(pivots) - 1, -1, -1):
            pc = pivots[r]
            acc = ZERO
            for c in range(pc + 1, ncols):
                if not M[r][c].is_zero and not x[c].is_zero:
                    acc = acc + M[r][c] * x[c]
            x[pc] = -acc / M[r][pc]
        basis.append(tuple(x))
    return basis
