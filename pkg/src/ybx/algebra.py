"""Finite-dimensional unital associative algebras by structure constants.

An algebra is stored as the 3-index table c with e_i * e_j = sum_k
c[i][j][k] e_k, together with the coordinates of the unit. Validation is
eager: every Algebra that exists has passed the associativity and unit
checks, so downstream constructions never need to re-ask.
"""

from __future__ import annotations

import json
from typing import Optional, Sequence

from .scalars import ONE, ZERO, ParamScalar, as_scalar


class AlgebraError(ValueError):
    """Base for structure-table rejections."""


class ShapeError(AlgebraError):
    pass


class AssociativityError(AlgebraError):
    """Carries the basis triple on which the two association orders differ."""

    def __init__(self, witness, lhs, rhs):
        i, j, k = witness
        super().__init__(
            f"(e{i}*e{j})*e{k} != e{i}*(e{j}*e{k}): "
            f"{_fmt_vec(lhs)} vs {_fmt_vec(rhs)}"
        )
        self.witness = witness
        self.lhs = lhs
        self.rhs = rhs


class UnitError(AlgebraError):
    """Carries the basis index on which the unit law fails."""

    def __init__(self, witness, side, got):
        super().__init__(
            f"unit law fails at e{witness} ({side}): got {_fmt_vec(got)}"
        )
        self.witness = witness
        self.side = side


def _fmt_vec(v) -> str:
    return "(" + ", ".join(str(c) for c in v) + ")"


class Algebra:
    """Validated unital associative algebra. Immutable."""

    __slots__ = ("dim", "structure", "unit", "labels")

    def __init__(self, dim, structure, unit, labels):
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "structure", structure)
        object.__setattr__(self, "unit", unit)
        object.__setattr__(self, "labels", labels)

    def __setattr__(self, *_):
        raise AttributeError("Algebra is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, Algebra)
            and other.dim == self.dim
            and other.structure == self.structure
            and other.unit == self.unit
        )

    def __hash__(self):
        return hash((self.dim, self.structure, self.unit))

    def __repr__(self):
        return f"Algebra(dim={self.dim}, labels={list(self.labels)})"

    @property
    def names(self) -> frozenset:
        out = frozenset()
        for plane in self.structure:
            for row in plane:
                for e in row:
                    out = out | e.names
        return out

    def substitute(self, mapping) -> "Algebra":
        """Specialize symbolic structure constants; the result is re-validated
        (specialization can only preserve the axioms, but cheap is cheap)."""
        return make_algebra(
            self.dim,
            [[[e.substitute(mapping) for e in row] for row in plane]
             for plane in self.structure],
            [e.substitute(mapping) for e in self.unit],
            list(self.labels),
        )

    def to_json_obj(self) -> dict:
        return {
            "dim": self.dim,
            "unit": [str(e) for e in self.unit],
            "labels": list(self.labels),
            "structure": [[[str(e) for e in row] for row in plane]
                          for plane in self.structure],
        }


def mul_elements(A: Algebra, a: Sequence, b: Sequence):
    """Product of two coordinate vectors through the structure constants."""
    n = A.dim
    if len(a) != n or len(b) != n:
        raise ShapeError(f"expected coordinate vectors of length {n}")
    av = [as_scalar(x) for x in a]
    bv = [as_scalar(x) for x in b]
    out = [ZERO] * n
    for i in range(n):
        if av[i].is_zero:
            continue
        for j in range(n):
            if bv[j].is_zero:
                continue
            coeff = av[i] * bv[j]
            row = A.structure[i][j]
            for k in range(n):
                if not row[k].is_zero:
                    out[k] = out[k] + coeff * row[k]
    return tuple(out)


def make_algebra(dim: int, structure, unit, labels: Optional[Sequence[str]] = None) -> Algebra:
    """Validate and freeze a structure-constant table.

    Rejections carry a witness: the basis triple where associativity breaks,
    or the basis index where the unit law breaks.
    """
    if dim < 1:
        raise ShapeError("dim must be >= 1")
    if len(structure) != dim or any(
        len(plane) != dim or any(len(row) != dim for row in plane)
        for plane in structure
    ):
        raise ShapeError(f"structure table must be {dim}x{dim}x{dim}")
    if len(unit) != dim:
        raise ShapeError(f"unit vector must have length {dim}")
    c = tuple(
        tuple(tuple(as_scalar(e) for e in row) for row in plane)
        for plane in structure
    )
    u = tuple(as_scalar(e) for e in unit)
    if labels is None:
        labels = [f"e{i}" for i in range(dim)]
    elif len(labels) != dim:
        raise ShapeError(f"labels must have length {dim}")

    # unit law on every basis vector, both sides
    for i in range(dim):
        left = [ZERO] * dim
        right = [ZERO] * dim
        for j in range(dim):
            if u[j].is_zero:
                continue
            for k in range(dim):
                left[k] = left[k] + u[j] * c[j][i][k]
                right[k] = right[k] + u[j] * c[i][j][k]
        want = [ONE if k == i else ZERO for k in range(dim)]
        if left != want:
            raise UnitError(i, "unit*e", left)
        if right != want:
            raise UnitError(i, "e*unit", right)

    # associativity on every basis triple
    for i in range(dim):
        for j in range(dim):
            for k in range(dim):
                lhs = [ZERO] * dim
                rhs = [ZERO] * dim
                for l in range(dim):
                    cl = c[i][j][l]
                    if not cl.is_zero:
                        for m in range(dim):
                            lhs[m] = lhs[m] + cl * c[l][k][m]
                    dl = c[j][k][l]
                    if not dl.is_zero:
                        for m in range(dim):
                            rhs[m] = rhs[m] + dl * c[i][l][m]
                if lhs != rhs:
                    raise AssociativityError((i, j, k), tuple(lhs), tuple(rhs))

    return Algebra(dim, c, u, tuple(str(s) for s in labels))


def quadratic_quotient_algebra(m, n) -> Algebra:
    """The dim-2 quotient of a polynomial ring by X^2 - m*X - n, with
    basis {1, x}; m = 0 specializes to the x^2 = sigma family."""
    m = as_scalar(m)
    n = as_scalar(n)
    structure = [
        [[ONE, ZERO], [ZERO, ONE]],
        [[ZERO, ONE], [n, m]],
    ]
    return make_algebra(2, structure, [ONE, ZERO], ["1", "x"])


def algebra_from_json_obj(obj: dict) -> Algebra:
    try:
        dim = obj["dim"]
        structure = obj["structure"]
        unit = obj["unit"]
    except (KeyError, TypeError) as exc:
        raise ShapeError(f"algebra object is missing field {exc}") from None
    labels = obj.get("labels")
    return make_algebra(dim, structure, unit, labels)


def load_algebra(path) -> Algebra:
    with open(path, "r", encoding="utf-8") as fh:
        obj = json.load(fh)
    return algebra_from_json_obj(obj)
