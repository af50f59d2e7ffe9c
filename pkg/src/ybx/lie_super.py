"""Finite-dimensional Lie superalgebras over exact scalars.

A superalgebra is a Z2-graded basis (degree 0 or 1 per basis vector) with
a bracket table b, [e_i, e_j] = sum_k b[i][j][k] e_k. Construction
validates the graded axioms and rejections carry a witness naming the
axiom and the basis indices. The graded sign (-1)^{|x||y|} only makes
sense on homogeneous elements, so everything sign-dependent downstream is
defined on the basis and extended bilinearly.
"""

from __future__ import annotations

import json
from typing import Optional, Sequence

from .scalars import ZERO, ParamScalar, as_scalar
from .tensor import nullspace


class SuperalgebraError(ValueError):
    """Base for bracket-table rejections; subclasses carry a witness."""


class ShapeError(SuperalgebraError):
    pass


class GradingError(SuperalgebraError):
    def __init__(self, witness):
        i, j, k = witness
        super().__init__(
            f"[e{i}, e{j}] has a component on e{k} of the wrong parity"
        )
        self.witness = witness


class AntisymmetryError(SuperalgebraError):
    def __init__(self, witness):
        i, j = witness
        super().__init__(
            f"[e{i}, e{j}] != -(-1)^(|e{i}||e{j}|) [e{j}, e{i}]"
        )
        self.witness = witness


class JacobiError(SuperalgebraError):
    def __init__(self, witness):
        i, j, k = witness
        super().__init__(
            f"graded Jacobi identity fails on the basis triple "
            f"(e{i}, e{j}, e{k})"
        )
        self.witness = witness


class LieSuperalgebra:
    """Validated Lie superalgebra. Immutable."""

    __slots__ = ("dim", "degree", "bracket", "labels")

    def __init__(self, dim, degree, bracket, labels):
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "bracket", bracket)
        object.__setattr__(self, "labels", labels)

    def __setattr__(self, *_):
        raise AttributeError("LieSuperalgebra is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, LieSuperalgebra)
            and other.dim == self.dim
            and other.degree == self.degree
            and other.bracket == self.bracket
        )

    def __hash__(self):
        return hash((self.dim, self.degree, self.bracket))

    def __repr__(self):
        return f"LieSuperalgebra(dim={self.dim}, degree={list(self.degree)})"

    def even_indices(self):
        return [i for i in range(self.dim) if self.degree[i] == 0]

    def to_json_obj(self) -> dict:
        return {
            "dim": self.dim,
            "degree": list(self.degree),
            "labels": list(self.labels),
            "structure": [[[str(e) for e in row] for row in plane]
                          for plane in self.bracket],
        }


def bracket_elements(L: LieSuperalgebra, x: Sequence, y: Sequence):
    """Bilinear extension of the bracket table to coordinate vectors."""
    n = L.dim
    if len(x) != n or len(y) != n:
        raise ShapeError(f"expected coordinate vectors of length {n}")
    xv = [as_scalar(c) for c in x]
    yv = [as_scalar(c) for c in y]
    out = [ZERO] * n
    for i in range(n):
        if xv[i].is_zero:
            continue
        for j in range(n):
            if yv[j].is_zero:
                continue
            coeff = xv[i] * yv[j]
            row = L.bracket[i][j]
            for k in range(n):
                if not row[k].is_zero:
                    out[k] = out[k] + coeff * row[k]
    return tuple(out)


def make_superalgebra(dim: int, degree, bracket,
                      labels: Optional[Sequence[str]] = None) -> LieSuperalgebra:
    """Validate and freeze a graded bracket table."""
    if dim < 1:
        raise ShapeError("dim must be >= 1")
    if len(degree) != dim or any(d not in (0, 1) for d in degree):
        raise ShapeError("degree must list one of 0, 1 per basis vector")
    if len(bracket) != dim or any(
        len(plane) != dim or any(len(row) != dim for row in plane)
        for plane in bracket
    ):
        raise ShapeError(f"bracket table must be {dim}x{dim}x{dim}")
    b = tuple(
        tuple(tuple(as_scalar(e) for e in row) for row in plane)
        for plane in bracket
    )
    deg = tuple(int(d) for d in degree)
    if labels is None:
        labels = [f"e{i}" for i in range(dim)]
    elif len(labels) != dim:
        raise ShapeError(f"labels must have length {dim}")

    # grading: [e_i, e_j] must be homogeneous of degree |e_i| + |e_j|
    for i in range(dim):
        for j in range(dim):
            for k in range(dim):
                if not b[i][j][k].is_zero and deg[k] != (deg[i] + deg[j]) % 2:
                    raise GradingError((i, j, k))

    # super antisymmetry: [e_i, e_j] = -(-1)^{|e_i||e_j|} [e_j, e_i]
    for i in range(dim):
        for j in range(i, dim):
            flip = deg[i] * deg[j] == 0
            for k in range(dim):
                other = -b[j][i][k] if flip else b[j][i][k]
                if b[i][j][k] != other:
                    raise AntisymmetryError((i, j))

    # graded Jacobi on basis triples:
    # (-1)^{|i||k|}[e_i,[e_j,e_k]] + (-1)^{|j||i|}[e_j,[e_k,e_i]]
    #   + (-1)^{|k||j|}[e_k,[e_i,e_j]] = 0
    for i in range(dim):
        for j in range(dim):
            for k in range(dim):
                acc = [ZERO] * dim
                for (a, x, y, z) in (
                    (deg[i] * deg[k], i, j, k),
                    (deg[j] * deg[i], j, k, i),
                    (deg[k] * deg[j], k, i, j),
                ):
                    sign = -1 if a % 2 else 1
                    for l in range(dim):
                        inner = b[y][z][l]
                        if inner.is_zero:
                            continue
                        for m in range(dim):
                            term = inner * b[x][l][m]
                            if sign < 0:
                                term = -term
                            acc[m] = acc[m] + term
                if any(not e.is_zero for e in acc):
                    raise JacobiError((i, j, k))

    return LieSuperalgebra(dim, deg, b, tuple(str(s) for s in labels))


def even_center(L: LieSuperalgebra):
    """Basis of the even central elements, as full coordinate vectors.

    Solves [z, e_j] = 0 for all basis e_j with z supported on the even
    basis vectors; an exact nullspace over the scalar field.
    """
    even = L.even_indices()
    if not even:
        return []
    # rows: one equation per (probe basis vector j, output coordinate k)
    rows = []
    for j in range(L.dim):
        for k in range(L.dim):
            rows.append([L.bracket[i][j][k] for i in even])
    basis = []
    for vec in nullspace(rows):
        full = [ZERO] * L.dim
        for pos, i in enumerate(even):
            full[i] = vec[pos]
        basis.append(tuple(full))
    return basis


def superalgebra_from_json_obj(obj: dict) -> LieSuperalgebra:
    try:
        dim = obj["dim"]
        degree = obj["degree"]
        bracket = obj["structure"]
    except (KeyError, TypeError) as exc:
        raise ShapeError(f"superalgebra object is missing field {exc}") from None
    labels = obj.get("labels")
    return make_superalgebra(dim, degree, bracket, labels)


def load_superalgebra(path) -> LieSuperalgebra:
    with open(path, "r", encoding="utf-8") as fh:
        obj = json.load(fh)
    return superalgebra_from_json_obj(obj)
