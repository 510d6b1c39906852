"""Finite-dimensional Lie algebras given by sparse rational structure constants."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

import numpy as np

from .report import VerificationReport

Vector = list  # list[Fraction]


@dataclass
class LieStructure:
    """Bracket [e_i, e_j] = sum_k table[(i, j)][k] e_k, stored for both orders."""

    dim: int
    table: dict = field(default_factory=dict)
    names: list[str] | None = None

    @classmethod
    def from_upper(cls, dim: int, upper: dict, names=None) -> "LieStructure":
        """Fill the lower triangle from brackets given for i < j."""
        table = {}
        for (i, j), row in upper.items():
            if i == j:
                raise ValueError(f"structure constant on the diagonal ({i}, {i})")
            row = {k: Fraction(c) for k, c in row.items() if c}
            if not row:
                continue
            a, b = (i, j) if i < j else (j, i)
            if (a, b) in table:
                raise ValueError(f"bracket ({a}, {b}) given twice")
            table[(a, b)] = row if i < j else {k: -c for k, c in row.items()}
            table[(b, a)] = {k: -c for k, c in table[(a, b)].items()}
        return cls(dim, table, names)

    def name(self, i: int) -> str:
        return self.names[i] if self.names else str(i)

    def upper(self) -> dict:
        return {(i, j): r for (i, j), r in self.table.items() if i < j}

    def basis_bracket(self, i: int, j: int) -> dict:
        return self.table.get((i, j), {})

    def bracket(self, u: Vector, v: Vector) -> Vector:
        out = [Fraction(0)] * self.dim
        us = [(i, a) for i, a in enumerate(u) if a]
        vs = [(j, b) for j, b in enumerate(v) if b]
        for i, a in us:
            for j, b in vs:
                row = self.table.get((i, j))
                if row:
                    ab = a * b
                    for k, c in row.items():
                        out[k] += ab * c
        return out

    def ad(self, x: Vector) -> list[list[Fraction]]:
        """Matrix of ad(x) acting on columns: column j is [x, e_j]."""
        m = [[Fraction(0)] * self.dim for _ in range(self.dim)]
        for i, a in enumerate(x):
            if not a:
                continue
            for j in range(self.dim):
                for k, c in self.table.get((i, j), {}).items():
                    m[k][j] += a * c
        return m

    def unit(self, i: int) -> Vector:
        v = [Fraction(0)] * self.dim
        v[i] = Fraction(1)
        return v

    def perturbed(self, i: int, j: int, k: int, delta) -> "LieStructure":
        """Copy with c_ij^k shifted by delta (and c_ji^k by -delta)."""
        table = {key: dict(r) for key, r in self.table.items()}
        for (a, b), s in (((i, j), 1), ((j, i), -1)):
            row = table.setdefault((a, b), {})
            row[k] = row.get(k, Fraction(0)) + s * Fraction(delta)
            if not row[k]:
                del row[k]
            if not row:
                del table[(a, b)]
        return LieStructure(self.dim, table, self.names)


# ---------------------------------------------------------------- checks

def check_anticommutativity(struct: LieStructure) -> VerificationReport:
    rep = VerificationReport("Anticommutativity")
    for i in range(struct.dim):
        for j in range(i, struct.dim):
            rep.checked_count += 1
            a, b = struct.basis_bracket(i, j), struct.basis_bracket(j, i)
            neg = {k: -c for k, c in b.items()}
            if a != neg:
                rep.fail((struct.name(i), struct.name(j)), a, neg)
    return rep


def _dense(struct: LieStructure):
    """Integer-scaled dense structure tensor and its common denominator."""
    den = 1
    for row in struct.table.values():
        for c in row.values():
            den = lcm(den, c.denominator)
    d = struct.dim
    big = 0
    for row in struct.table.values():
        for c in row.values():
            big = max(big, abs(c.numerator * (den // c.denominator)))
    # every Jacobi term sums d products of two entries; three terms in total.  Below
    # 2^53 float64 is still exact integer arithmetic and gets BLAS matmul.
    bound = 3 * d * big * big
    exact = bound < 2 ** 62
    dtype = np.float64 if bound < 2 ** 53 else np.int64 if exact else object
    T = np.zeros((d, d, d), dtype=dtype)
    if dtype is object:
        T[...] = 0
    for (i, j), row in struct.table.items():
        for k, c in row.items():
            T[i, j, k] = int(c * den)
    return T, den, exact


def _jacobi_slice(T, x):
    d = T.shape[0]
    A = T[x]
    t1 = (T.reshape(d * d, d) @ A).reshape(d, d, d)
    t2 = (A @ T.reshape(d, d * d)).reshape(d, d, d)
    t3 = np.matmul(A[None, :, :], T)
    return t1, t2 + t3


def _fail_triple(rep, struct, x, y, z):
    ex, ey, ez = struct.unit(x), struct.unit(y), struct.unit(z)
    lhs = struct.bracket(ex, struct.bracket(ey, ez))
    rhs = [a + b for a, b in zip(struct.bracket(struct.bracket(ex, ey), ez),
                                 struct.bracket(ey, struct.bracket(ex, ez)))]
    rep.fail((struct.name(x), struct.name(y), struct.name(z)),
             {k: v for k, v in enumerate(lhs) if v}, {k: v for k, v in enumerate(rhs) if v})


def _sweep_slices(struct, T, xs, rep):
    d = struct.dim
    for x in xs:
        lhs, rhs = _jacobi_slice(T, x)
        rep.checked_count += d * d
        diff = lhs != rhs
        if rep.first_failure is None and diff.any():
            y, z, _ = (int(v[0]) for v in np.nonzero(diff))
            _fail_triple(rep, struct, x, y, z)


def jacobi_triple_ok(struct: LieStructure, x: int, y: int, z: int) -> bool:
    ex, ey, ez = struct.unit(x), struct.unit(y), struct.unit(z)
    lhs = struct.bracket(ex, struct.bracket(ey, ez))
    rhs = [a + b for a, b in zip(struct.bracket(struct.bracket(ex, ey), ez),
                                 struct.bracket(ey, struct.bracket(ex, ez)))]
    return lhs == rhs


FULL_LIMIT = 80


def check_jacobi(struct: LieStructure, mode: str | None = None, count: int = 2000, seed: int = 0,
                 anchors: list[int] | None = None) -> VerificationReport:
    """[x,[y,z]] = [[x,y],z] + [y,[x,z]] over ordered basis triples.

    Full mode sweeps all dim^3 triples with integer-scaled numpy arithmetic, which is
    exact because the scaled entries are bounded before the sweep.  Sampled mode checks
    every triple containing an anchor element plus `count` seeded random triples.
    """
    if mode is None:
        mode = "full" if struct.dim <= FULL_LIMIT else "sampled"
    rep = VerificationReport("Jacobi")
    d = struct.dim
    if d == 0:
        return rep
    T, _, exact = _dense(struct)
    if not exact:
        rep.notes.append("entries too large for int64; used Python integers")
    if mode == "full":
        rep.notes.append(f"full sweep of {d}^3 ordered triples")
        _sweep_slices(struct, T, range(d), rep)
        return rep
    if mode != "sampled":
        raise ValueError(f"unknown Jacobi mode {mode!r}")
    anchors = sorted(set(anchors or []))
    rep.notes.append(f"sampled: {len(anchors)} anchor slices plus {count} random triples, seed {seed}")
    # the Jacobi defect is alternating, so the x-slice covers every triple containing x
    _sweep_slices(struct, T, anchors, rep)
    rng = random.Random(seed)
    for _ in range(count):
        x, y, z = rng.randrange(d), rng.randrange(d), rng.randrange(d)
        rep.checked_count += 1
        if rep.first_failure is None and not jacobi_triple_ok(struct, x, y, z):
            _fail_triple(rep, struct, x, y, z)
    return rep


# ---------------------------------------------------------------- JSON

def structure_out(struct: LieStructure) -> list:
    from .serialize import triples_out
    return triples_out(struct.upper())


def structure_in(raw, dim: int, names=None) -> LieStructure:
    from .serialize import SchemaError, triples_in
    upper = triples_in(raw)
    for (i, j), row in upper.items():
        if i >= j:
            raise SchemaError(f"structure triples must have i < j, got ({i}, {j})")
        if j >= dim or any(k >= dim for k in row):
            raise SchemaError(f"structure index out of range at ({i}, {j})")
    return LieStructure.from_upper(dim, upper, names)
