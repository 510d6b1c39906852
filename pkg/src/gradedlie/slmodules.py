"""Matrix models of sl(n+1) and its eight small modules.

Carriers are dense rational matrices (lists of rows) or column vectors (lists).
Bases are ordered lexicographically in the matrix indices (i, j).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from .linalg import Matrix, Subspace, simultaneous_eigenspaces, zeros

Weight = tuple[int, ...]


class Label(Enum):
    ADJOINT = "g"
    SYM = "S"
    EXT = "Lam"
    SYM_DUAL = "S'"
    EXT_DUAL = "Lam'"
    NAT = "V"
    NAT_DUAL = "V'"
    TRIVIAL = "T"

    @property
    def symbol(self) -> str:
        return self.value

    @property
    def dual(self) -> "Label":
        return _DUALS[self]

    @classmethod
    def from_symbol(cls, s: str) -> "Label":
        for lab in cls:
            if lab.value == s:
                return lab
        raise ValueError(f"unknown module label {s!r}")


_DUALS = {
    Label.ADJOINT: Label.ADJOINT,
    Label.TRIVIAL: Label.TRIVIAL,
    Label.NAT: Label.NAT_DUAL,
    Label.NAT_DUAL: Label.NAT,
    Label.SYM: Label.SYM_DUAL,
    Label.SYM_DUAL: Label.SYM,
    Label.EXT: Label.EXT_DUAL,
    Label.EXT_DUAL: Label.EXT,
}

# canonical order used for table rows, columns and '+'-joined cells
LABEL_ORDER = [Label.ADJOINT, Label.SYM, Label.EXT, Label.SYM_DUAL, Label.EXT_DUAL,
               Label.NAT, Label.NAT_DUAL, Label.TRIVIAL]


# ---------------------------------------------------------------- matrices

def unit(n1: int, i: int, j: int) -> Matrix:
    m = zeros(n1, n1)
    m[i][j] = Fraction(1)
    return m


def eye(n1: int) -> Matrix:
    m = zeros(n1, n1)
    for i in range(n1):
        m[i][i] = Fraction(1)
    return m


def mul(a: Matrix, b: Matrix) -> Matrix:
    n1 = len(a)
    out = zeros(n1, len(b[0]))
    for i in range(n1):
        ai, oi = a[i], out[i]
        for k in range(len(ai)):
            x = ai[k]
            if x:
                bk = b[k]
                for j in range(len(bk)):
                    if bk[j]:
                        oi[j] += x * bk[j]
    return out


def add(a: Matrix, b: Matrix, s: Fraction | int = 1) -> Matrix:
    """a + s*b"""
    return [[x + s * y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def scale(a: Matrix, s: Fraction | int) -> Matrix:
    return [[s * x for x in row] for row in a]


def transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)]


def trace(a: Matrix) -> Fraction:
    return sum((a[i][i] for i in range(len(a))), Fraction(0))


def is_zero(a: Matrix) -> bool:
    return not any(any(row) for row in a)


def mat_vec(a: Matrix, v: list[Fraction]) -> list[Fraction]:
    return [sum((x * y for x, y in zip(row, v) if x and y), Fraction(0)) for row in a]


def outer(u: list[Fraction], v: list[Fraction]) -> Matrix:
    return [[x * y for y in v] for x in u]


def _check_shape(x: Matrix, y: Matrix) -> None:
    if len(x) != len(y) or len(x[0]) != len(y[0]) or len(x) != len(x[0]):
        raise ValueError("shape mismatch")


def bracket(x: Matrix, y: Matrix) -> Matrix:
    _check_shape(x, y)
    return add(mul(x, y), mul(y, x), -1)


def diamond(x: Matrix, y: Matrix) -> Matrix:
    _check_shape(x, y)
    return add(mul(x, y), mul(y, x))


def circ(x: Matrix, y: Matrix, n: int | None = None) -> Matrix:
    """xy + yx - (2/(n+1)) tr(xy) I"""
    _check_shape(x, y)
    n1 = len(x)
    if n is not None and n + 1 != n1:
        raise ValueError("shape mismatch")
    xy = mul(x, y)
    return add(add(xy, mul(y, x)), eye(n1), -Fraction(2, n1) * trace(xy))


def trace_form(x: Matrix, y: Matrix, n: int | None = None) -> Fraction:
    _check_shape(x, y)
    n1 = len(x)
    if n is not None and n + 1 != n1:
        raise ValueError("shape mismatch")
    return trace(mul(x, y)) / n1


# ---------------------------------------------------------------- sl(n+1)

def h_matrix(n1: int, i: int) -> Matrix:
    """h_i = E_ii - E_{i+1,i+1}, zero-based i."""
    m = zeros(n1, n1)
    m[i][i] = Fraction(1)
    m[i + 1][i + 1] = Fraction(-1)
    return m


@dataclass(frozen=True)
class SlAlgebra:
    n: int
    basis: list[Matrix] = field(repr=False)
    names: list[str] = field(repr=False)
    chevalley: list[tuple[Matrix, Matrix, Matrix]] = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.basis)


def build_sl(n: int) -> SlAlgebra:
    if n < 2:
        raise ValueError("rank must be at least 2")
    n1 = n + 1
    basis, names = [], []
    for i in range(n1):
        for j in range(n1):
            if i != j:
                basis.append(unit(n1, i, j))
                names.append(f"E{i + 1}{j + 1}" if n1 < 10 else f"E{i + 1},{j + 1}")
    for i in range(n):
        basis.append(h_matrix(n1, i))
        names.append(f"h{i + 1}")
    chev = [(unit(n1, i, i + 1), unit(n1, i + 1, i), h_matrix(n1, i)) for i in range(n)]
    return SlAlgebra(n, basis, names, chev)


def sl_coords(x: Matrix) -> list[Fraction]:
    """Coordinates of a traceless matrix in the build_sl basis."""
    n1 = len(x)
    if trace(x) != 0:
        raise ValueError("matrix is not traceless")
    out = [x[i][j] for i in range(n1) for j in range(n1) if i != j]
    acc = Fraction(0)
    for i in range(n1 - 1):
        acc += x[i][i]
        out.append(acc)
    return out


# ---------------------------------------------------------------- modules

def _sym_basis(n1: int) -> list[Matrix]:
    out = []
    for i in range(n1):
        for j in range(i, n1):
            m = zeros(n1, n1)
            m[i][j] = Fraction(1)
            m[j][i] = Fraction(1)
            out.append(m)
    return out


def _sym_coords(s: Matrix) -> list[Fraction]:
    n1 = len(s)
    return [s[i][j] for i in range(n1) for j in range(i, n1)]


def _ext_basis(n1: int) -> list[Matrix]:
    out = []
    for i in range(n1):
        for j in range(i + 1, n1):
            m = zeros(n1, n1)
            m[i][j] = Fraction(1)
            m[j][i] = Fraction(-1)
            out.append(m)
    return out


def _ext_coords(a: Matrix) -> list[Fraction]:
    n1 = len(a)
    return [a[i][j] for i in range(n1) for j in range(i + 1, n1)]


def _vec_basis(n1: int) -> list[list[Fraction]]:
    return [[Fraction(int(i == j)) for j in range(n1)] for i in range(n1)]


def _act_adjoint(x, y):
    return bracket(x, y)


def _act_nat(x, v):
    return mat_vec(x, v)


def _act_nat_dual(x, v):
    return [-c for c in mat_vec(transpose(x), v)]


def _act_sym(x, s):
    return add(mul(x, s), mul(s, transpose(x)))


def _act_sym_dual(x, s):
    return scale(add(mul(s, x), mul(transpose(x), s)), -1)


def _act_trivial(x, t):
    return [Fraction(0)]


@dataclass(frozen=True)
class MatrixModule:
    label: Label
    n: int
    basis: list = field(repr=False)
    action: Callable = field(repr=False)
    coords: Callable = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def act(self, x: Matrix, m):
        return self.action(x, m)

    def act_coords(self, x: Matrix, k: int) -> list[Fraction]:
        return self.coords(self.action(x, self.basis[k]))


@lru_cache(maxsize=None)
def build_module(label: Label, n: int) -> MatrixModule:
    if n < 2:
        raise ValueError("rank must be at least 2")
    n1 = n + 1
    if label is Label.ADJOINT:
        return MatrixModule(label, n, build_sl(n).basis, _act_adjoint, sl_coords)
    if label is Label.NAT:
        return MatrixModule(label, n, _vec_basis(n1), _act_nat, list)
    if label is Label.NAT_DUAL:
        return MatrixModule(label, n, _vec_basis(n1), _act_nat_dual, list)
    if label is Label.SYM:
        return MatrixModule(label, n, _sym_basis(n1), _act_sym, _sym_coords)
    if label is Label.SYM_DUAL:
        return MatrixModule(label, n, _sym_basis(n1), _act_sym_dual, _sym_coords)
    if label is Label.EXT:
        return MatrixModule(label, n, _ext_basis(n1), _act_sym, _ext_coords)
    if label is Label.EXT_DUAL:
        return MatrixModule(label, n, _ext_basis(n1), _act_sym_dual, _ext_coords)
    return MatrixModule(label, n, [[Fraction(1)]], _act_trivial, list)


@lru_cache(maxsize=None)
def action_tables(label: Label, n: int) -> tuple:
    """Sparse action of e_i, f_i, h_i on the module basis.

    Returns (E, F, H); each is a list over i of lists over basis index k
    of dicts {target index: coefficient}.
    """
    mod = build_module(label, n)
    sl = build_sl(n)
    tables = []
    for which in range(3):
        per_gen = []
        for gens in sl.chevalley:
            x = gens[which]
            rows = []
            for k in range(mod.dim):
                c = mod.act_coords(x, k)
                rows.append({j: v for j, v in enumerate(c) if v})
            per_gen.append(rows)
        tables.append(per_gen)
    return tuple(tables)


@lru_cache(maxsize=None)
def basis_weights(label: Label, n: int) -> tuple[Weight, ...]:
    """Weight of each basis carrier (all carriers are weight vectors)."""
    _, _, H = action_tables(label, n)
    dim = build_module(label, n).dim
    out = []
    for k in range(dim):
        w = []
        for i in range(n):
            row = H[i][k]
            if any(j != k for j in row):
                raise ValueError("basis carrier is not a weight vector")
            w.append(int(row.get(k, 0)))
        out.append(tuple(w))
    return tuple(out)


def weight_spaces(mod: MatrixModule) -> list[tuple[Weight, Subspace]]:
    """Joint eigenspaces of h_1..h_n acting on the module (coordinates in its basis)."""
    _, _, H = action_tables(mod.label, mod.n)
    ops = []
    for i in range(mod.n):
        m = zeros(mod.dim, mod.dim)
        for k, row in enumerate(H[i]):
            for j, v in row.items():
                m[j][k] = v
        ops.append(m)
    return simultaneous_eigenspaces(ops, mod.dim)


def weight_set_of_label(label: Label, n: int) -> set[Weight]:
    return set(basis_weights(label, n))


def eps_to_weight(eps: list[int]) -> Weight:
    """Pairings <w, h_i> of the functional sum eps_k * epsilon_k."""
    return tuple(eps[i] - eps[i + 1] for i in range(len(eps) - 1))


@lru_cache(maxsize=None)
def ahat_weights(n: int) -> frozenset[Weight]:
    n1 = n + 1
    out = {tuple([0] * n)}
    for i in range(n1):
        for s in (1, -1):
            e = [0] * n1
            e[i] = s
            out.add(eps_to_weight(e))
            e[i] = 2 * s
            out.add(eps_to_weight(e))
            for j in range(n1):
                if j != i:
                    for t in (1, -1):
                        e = [0] * n1
                        e[i] += s
                        e[j] += t
                        out.add(eps_to_weight(e))
    return frozenset(out)


def in_ahat(w: Weight, n: int) -> bool:
    return tuple(w) in ahat_weights(n)


def fundamental(n: int, i: int) -> list[int]:
    """omega_i in pairing coordinates, 1-based i."""
    w = [0] * n
    w[i - 1] = 1
    return w


def highest_weight(label: Label, n: int) -> Weight:
    w = [0] * n
    if label is Label.ADJOINT:
        w[0] += 1
        w[n - 1] += 1
    elif label is Label.NAT:
        w[0] = 1
    elif label is Label.NAT_DUAL:
        w[n - 1] = 1
    elif label is Label.SYM:
        w[0] = 2
    elif label is Label.SYM_DUAL:
        w[n - 1] = 2
    elif label is Label.EXT:
        w[1] += 1
    elif label is Label.EXT_DUAL:
        w[n - 2] += 1
    return tuple(w)


def highest_weight_carrier(label: Label, n: int):
    """The model carrier spanning the highest weight space."""
    n1 = n + 1
    if label is Label.ADJOINT:
        return unit(n1, 0, n)
    if label is Label.NAT:
        return _vec_basis(n1)[0]
    if label is Label.NAT_DUAL:
        return _vec_basis(n1)[n]
    if label is Label.SYM:
        return unit(n1, 0, 0)
    if label is Label.SYM_DUAL:
        return unit(n1, n, n)
    if label is Label.EXT:
        return add(unit(n1, 0, 1), unit(n1, 1, 0), -1)
    if label is Label.EXT_DUAL:
        return add(unit(n1, n - 1, n), unit(n1, n, n - 1), -1)
    return [Fraction(1)]


def alpha(n: int, i: int) -> Weight:
    """Simple root alpha_i in pairing coordinates (zero-based i): row i of the Cartan matrix."""
    w = [0] * n
    w[i] = 2
    if i > 0:
        w[i - 1] = -1
    if i < n - 1:
        w[i + 1] = -1
    return tuple(w)
