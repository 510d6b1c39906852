"""Exact rational linear algebra: row reduction, kernels, intersections, eigenspaces."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

Vector = list[Fraction]
Matrix = list[list[Fraction]]


class LinalgError(ValueError):
    pass


def to_matrix(rows: Sequence[Sequence]) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def zeros(r: int, c: int) -> Matrix:
    return [[Fraction(0)] * c for _ in range(r)]


def identity(n: int) -> Matrix:
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = Fraction(1)
    return m


def rref(m: Sequence[Sequence], ncols: int | None = None) -> tuple[Matrix, list[int]]:
    """Reduced row-echelon form and pivot columns. Zero rows are kept at the bottom."""
    a = [[Fraction(x) for x in row] for row in m]
    if not a:
        return a, []
    cols = len(a[0]) if ncols is None else ncols
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == len(a):
            break
        p = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        pr = a[r]
        inv = 1 / pr[c]
        if inv != 1:
            for j in range(c, cols):
                if pr[j]:
                    pr[j] *= inv
        nz = [j for j in range(c, cols) if pr[j]]
        for i in range(len(a)):
            if i != r:
                f = a[i][c]
                if f:
                    row = a[i]
                    for j in nz:
                        row[j] -= f * pr[j]
        pivots.append(c)
        r += 1
    return a, pivots


def rank(m: Sequence[Sequence]) -> int:
    return len(rref(m)[1])


@dataclass(frozen=True)
class Subspace:
    """A subspace stored by its canonical (reduced echelon) basis."""

    ambient_dim: int
    vectors: tuple[tuple[Fraction, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def basis(self) -> Matrix:
        return [list(v) for v in self.vectors]

    def pivots(self) -> list[int]:
        return [next(i for i, x in enumerate(v) if x) for v in self.vectors]

    def coordinates(self, v: Sequence[Fraction]) -> Vector:
        """Coordinates of v in the canonical basis. Raises if v is outside the space."""
        piv = self.pivots()
        coords = [Fraction(v[p]) for p in piv]
        resid = [Fraction(x) for x in v]
        for c, b in zip(coords, self.vectors):
            if c:
                for j, x in enumerate(b):
                    if x:
                        resid[j] -= c * x
        if any(resid):
            raise LinalgError("vector not in subspace")
        return coords

    def contains(self, v: Sequence[Fraction]) -> bool:
        try:
            self.coordinates(v)
        except LinalgError:
            return False
        return True


def span(vectors: Sequence[Sequence], ambient_dim: int) -> Subspace:
    if not vectors:
        return Subspace(ambient_dim, ())
    red, piv = rref(vectors, ambient_dim)
    return Subspace(ambient_dim, tuple(tuple(red[i]) for i in range(len(piv))))


def full_space(n: int) -> Subspace:
    return span(identity(n), n)


def kernel_basis(m: Sequence[Sequence], ncols: int | None = None) -> Subspace:
    """Canonical basis of {v : m v = 0}."""
    if ncols is None:
        ncols = len(m[0]) if m else 0
    if not m:
        return full_space(ncols)
    red, piv = rref(m, ncols)
    free = [c for c in range(ncols) if c not in set(piv)]
    vecs = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, p in enumerate(piv):
            v[p] = -red[i][f]
        vecs.append(v)
    return span(vecs, ncols)


def intersect(a: Subspace, b: Subspace) -> Subspace:
    if a.ambient_dim != b.ambient_dim:
        raise LinalgError("ambient dimension mismatch")
    n = a.ambient_dim
    if a.dim == 0 or b.dim == 0:
        return Subspace(n, ())
    # solve sum x_i a_i - sum y_j b_j = 0
    cols = [list(v) for v in a.vectors] + [[-x for x in v] for v in b.vectors]
    system = [[cols[j][i] for j in range(len(cols))] for i in range(n)]
    ker = kernel_basis(system, len(cols))
    out = []
    for k in ker.vectors:
        w = [Fraction(0)] * n
        for x, v in zip(k[: a.dim], a.vectors):
            if x:
                for i, y in enumerate(v):
                    if y:
                        w[i] += x * y
        out.append(w)
    return span(out, n)


def mat_vec(m: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> Vector:
    return [sum((x * y for x, y in zip(row, v) if x and y), Fraction(0)) for row in m]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    cols = len(b[0]) if b else 0
    out = zeros(len(a), cols)
    for i, row in enumerate(a):
        orow = out[i]
        for k, x in enumerate(row):
            if x:
                for j, y in enumerate(b[k]):
                    if y:
                        orow[j] += x * y
    return out


def _eigen_bound(m: Matrix) -> int:
    bound = 0
    for row in m:
        s = sum(abs(x) for x in row)
        bound = max(bound, int(s) + 1)
    return bound


def _restrict(op: Matrix, space: Subspace) -> Matrix:
    """Matrix of op on an invariant subspace, in the canonical basis (columns = images)."""
    images = [mat_vec(op, list(v)) for v in space.vectors]
    coords = [space.coordinates(w) for w in images]
    d = space.dim
    return [[coords[j][i] for j in range(d)] for i in range(d)]


def simultaneous_eigenspaces(ops: Sequence[Matrix], dim: int) -> list[tuple[tuple[int, ...], Subspace]]:
    """Joint eigenspace decomposition for commuting, integrally diagonalizable operators.

    Spaces are returned sorted by eigenvalue tuple.
    """
    ops = [to_matrix(o) for o in ops]
    for i in range(len(ops)):
        for j in range(i + 1, len(ops)):
            if mat_mul(ops[i], ops[j]) != mat_mul(ops[j], ops[i]):
                raise LinalgError(f"operators {i} and {j} do not commute")
    pieces: list[tuple[tuple[int, ...], Subspace]] = [((), full_space(dim))]
    for op in ops:
        nxt = []
        for tup, space in pieces:
            if space.dim == 0:
                continue
            r = _restrict(op, space)
            d = space.dim
            found = 0
            for lam in range(-_eigen_bound(r), _eigen_bound(r) + 1):
                shifted = [[r[i][j] - (lam if i == j else 0) for j in range(d)] for i in range(d)]
                ker = kernel_basis(shifted, d)
                if ker.dim == 0:
                    continue
                found += ker.dim
                vecs = []
                for k in ker.vectors:
                    w = [Fraction(0)] * dim
                    for x, v in zip(k, space.vectors):
                        if x:
                            for i, y in enumerate(v):
                                if y:
                                    w[i] += x * y
                    vecs.append(w)
                nxt.append((tup + (lam,), span(vecs, dim)))
            if found != d:
                raise LinalgError("operator has a non-integer eigenvalue or is not diagonalizable")
        pieces = nxt
    pieces.sort(key=lambda p: p[0])
    return pieces


def inverse(m: Matrix) -> Matrix:
    """Inverse of a square matrix. Raises LinalgError when singular."""
    n = len(m)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    red, piv = rref(aug, 2 * n)
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise LinalgError("matrix is singular")
    return [row[n:] for row in red[:n]]
