"""From a concrete Lie algebra with a designated sl(n+1) back to coordinate data.

The pipeline is: weight decomposition under the designated Cartan, highest-weight
vectors per candidate module, lowering to full summands (each summand gets an
explicit isomorphism with its matrix model), then probe brackets between model
carriers read off every product of the coordinate algebra.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

import numpy as np

from . import coordalg as ca
from .coordalg import Tag
from .linalg import LinalgError, inverse, kernel_basis, rref, simultaneous_eigenspaces, span
from .report import VerificationReport
from .slmodules import (LABEL_ORDER, Label, action_tables, ahat_weights, build_module, build_sl,
                        highest_weight, highest_weight_carrier, sl_coords, unit)
from .structure import LieStructure, check_anticommutativity, check_jacobi

Vector = list


class ExtractionError(ValueError):
    def __init__(self, msg: str, report: VerificationReport | None = None):
        super().__init__(msg)
        self.report = report


class FixtureKind(Enum):
    SP = "sp"
    SO_EVEN = "so-even"
    SO_ODD = "so-odd"
    CURRENT_DUAL = "current-dual"


LABEL_TAG = {Label.ADJOINT: Tag.APLUS, Label.SYM: Tag.C, Label.SYM_DUAL: Tag.CPRIME,
             Label.EXT: Tag.E, Label.EXT_DUAL: Tag.EPRIME, Label.NAT: Tag.B,
             Label.NAT_DUAL: Tag.BPRIME, Label.TRIVIAL: Tag.D}
TAG_LABEL = {Tag.APLUS: Label.ADJOINT, Tag.AMINUS: Label.ADJOINT, Tag.C: Label.SYM,
             Tag.CPRIME: Label.SYM_DUAL, Tag.E: Label.EXT, Tag.EPRIME: Label.EXT_DUAL,
             Tag.B: Label.NAT, Tag.BPRIME: Label.NAT_DUAL, Tag.D: Label.TRIVIAL}


@dataclass
class LiePresentation:
    n: int
    struct: LieStructure
    e: list[Vector]
    f: list[Vector]
    h: list[Vector]
    bc_cartan: list[Vector] | None = None
    kind: str | None = None

    @property
    def dim(self) -> int:
        return self.struct.dim

    def with_structure(self, struct: LieStructure) -> "LiePresentation":
        return LiePresentation(self.n, struct, self.e, self.f, self.h, self.bc_cartan, self.kind)


# ---------------------------------------------------------------- fixtures

def _flat_coords(mats: list[np.ndarray]):
    """Coordinate map for a list of integer matrices spanning a subspace."""
    rows = [m.flatten().tolist() for m in mats]
    # pivot columns select matrix entries on which the basis is invertible
    _, cols = rref(rows)
    if len(cols) != len(mats):
        raise ValueError("fixture basis is linearly dependent")
    sub = [[Fraction(rows[i][c]) for c in cols] for i in range(len(mats))]
    inv = inverse(sub)
    integral = all(x.denominator == 1 for row in inv for x in row)
    inv_np = np.array([[int(x) if integral else x for x in row] for row in inv],
                      dtype=np.int64 if integral else object)
    B = np.array(rows, dtype=np.int64)
    return np.array(cols), inv_np, B, integral


def _matrix_lie(n: int, mats: list[np.ndarray], names: list[str]) -> LieStructure:
    cols, inv, B, integral = _flat_coords(mats)
    d = len(mats)
    upper = {}
    for i in range(d):
        for j in range(i + 1, d):
            c = mats[i] @ mats[j] - mats[j] @ mats[i]
            if not c.any():
                continue
            flat = c.flatten()
            coords = flat[cols] @ inv
            if not (coords @ B == flat).all():
                raise ValueError(f"bracket of {names[i]} and {names[j]} leaves the algebra")
            upper[(i, j)] = {k: Fraction(coords[k]) for k in range(d) if coords[k]}
    return LieStructure.from_upper(d, upper, names)


def _unitvec(d: int, i: int) -> Vector:
    v = [Fraction(0)] * d
    v[i] = Fraction(1)
    return v


def _classical(kind: FixtureKind, n: int) -> LiePresentation:
    m = n + 1
    size = 2 * m + (1 if kind is FixtureKind.SO_ODD else 0)
    mats, names = [], []
    xidx = {}

    def new():
        return np.zeros((size, size), dtype=np.int64)

    for i in range(m):
        for j in range(m):
            a = new()
            a[i, j] = 1
            a[m + j, m + i] = -1
            xidx[(i, j)] = len(mats)
            mats.append(a)
            names.append(f"X{i + 1},{j + 1}")
    sym = kind is FixtureKind.SP
    for blk in ("B", "C"):
        for i in range(m):
            for j in range(i if sym else i + 1, m):
                a = new()
                if blk == "B":
                    a[i, m + j] = 1
                    a[j, m + i] = 1 if sym else -1
                else:
                    a[m + i, j] = 1
                    a[m + j, i] = 1 if sym else -1
                mats.append(a)
                names.append(f"{blk}{i + 1},{j + 1}")
    if kind is FixtureKind.SO_ODD:
        for blk in ("u", "v"):
            for i in range(m):
                a = new()
                if blk == "u":
                    a[i, 2 * m] = 1
                    a[2 * m, m + i] = -1
                else:
                    a[m + i, 2 * m] = 1
                    a[2 * m, i] = -1
                mats.append(a)
                names.append(f"{blk}{i + 1}")
    struct = _matrix_lie(n, mats, names)
    d = struct.dim
    e = [_unitvec(d, xidx[(i, i + 1)]) for i in range(n)]
    f = [_unitvec(d, xidx[(i + 1, i)]) for i in range(n)]
    h = [[a - b for a, b in zip(_unitvec(d, xidx[(i, i)]), _unitvec(d, xidx[(i + 1, i + 1)]))]
         for i in range(n)]
    bc = [_unitvec(d, xidx[(i, i)]) for i in range(m)]
    return LiePresentation(n, struct, e, f, h, bc, kind.value)


def _current_dual(n: int) -> LiePresentation:
    m = n + 1
    sl = build_sl(n)
    mats, names = [], []
    for x, nm in zip(sl.basis, sl.names):
        xi = np.array([[int(v) for v in row] for row in x], dtype=np.int64)
        a = np.zeros((2 * m, 2 * m), dtype=np.int64)
        a[:m, :m] = xi
        a[m:, m:] = xi
        mats.append(a)
        names.append(f"{nm}@1")
    for x, nm in zip(sl.basis, sl.names):
        xi = np.array([[int(v) for v in row] for row in x], dtype=np.int64)
        a = np.zeros((2 * m, 2 * m), dtype=np.int64)
        a[:m, m:] = xi
        mats.append(a)
        names.append(f"{nm}@eps")
    struct = _matrix_lie(n, mats, names)
    d = struct.dim
    off = m * m - m  # index of h_1 in the sl basis
    pos = {}
    k = 0
    for i in range(m):
        for j in range(m):
            if i != j:
                pos[(i, j)] = k
                k += 1
    e = [_unitvec(d, pos[(i, i + 1)]) for i in range(n)]
    f = [_unitvec(d, pos[(i + 1, i)]) for i in range(n)]
    h = [_unitvec(d, off + i) for i in range(n)]
    return LiePresentation(n, struct, e, f, h, None, FixtureKind.CURRENT_DUAL.value)


def sl_presentation(n: int) -> LiePresentation:
    """The adjoint sl(n+1) itself, with its Chevalley generators."""
    sl = build_sl(n)
    mats = [np.array([[int(v) for v in row] for row in x], dtype=np.int64) for x in sl.basis]
    struct = _matrix_lie(n, mats, list(sl.names))
    d = struct.dim
    m = n + 1
    pos = {}
    k = 0
    for i in range(m):
        for j in range(m):
            if i != j:
                pos[(i, j)] = k
                k += 1
    e = [_unitvec(d, pos[(i, i + 1)]) for i in range(n)]
    f = [_unitvec(d, pos[(i + 1, i)]) for i in range(n)]
    h = [_unitvec(d, m * m - m + i) for i in range(n)]
    return LiePresentation(n, struct, e, f, h, None, "sl")


def fixture(kind: FixtureKind | str, n: int) -> LiePresentation:
    kind = FixtureKind(kind)
    if n < 4:
        raise ValueError("fixtures need n >= 4")
    if kind is FixtureKind.CURRENT_DUAL:
        return _current_dual(n)
    return _classical(kind, n)


# ---------------------------------------------------------------- presentation checks

def _cartan_entry(i: int, j: int) -> int:
    return 2 if i == j else (-1 if abs(i - j) == 1 else 0)


def check_presentation(lie: LiePresentation, jacobi_mode: str | None = None) -> VerificationReport:
    rep = VerificationReport("Presentation")
    rep.add(check_anticommutativity(lie.struct))
    rep.add(check_jacobi(lie.struct, jacobi_mode))
    rel = rep.add(VerificationReport("ChevalleyRelations"))
    br = lie.struct.bracket
    n = lie.n
    zero = [Fraction(0)] * lie.dim

    def expect(witness, got, want):
        rel.checked_count += 1
        if got != want:
            rel.fail(witness, {k: v for k, v in enumerate(got) if v}, {k: v for k, v in enumerate(want) if v})

    for i in range(n):
        for j in range(n):
            a = _cartan_entry(i, j)
            expect(("h", i + 1, "h", j + 1), br(lie.h[i], lie.h[j]), zero)
            expect(("e", i + 1, "f", j + 1), br(lie.e[i], lie.f[j]), lie.h[i] if i == j else zero)
            expect(("h", i + 1, "e", j + 1), br(lie.h[i], lie.e[j]), [a * x for x in lie.e[j]])
            expect(("h", i + 1, "f", j + 1), br(lie.h[i], lie.f[j]), [-a * x for x in lie.f[j]])
            if i != j:
                for name, gens in (("e", lie.e), ("f", lie.f)):
                    v = gens[j]
                    for _ in range(1 - a):
                        v = br(gens[i], v)
                    expect(("serre", name, i + 1, j + 1), v, zero)
    return rep


# ---------------------------------------------------------------- weights

def weight_decomposition(struct: LieStructure, cartan: list[Vector]) -> list[tuple[tuple, list[Vector]]]:
    """Joint ad-eigenspaces of the given commuting elements, sorted by eigenvalues."""
    d = struct.dim
    diag = []
    ok = True
    for x in cartan:
        vals = []
        for j in range(d):
            img = struct.bracket(x, struct.unit(j))
            nz = [k for k, v in enumerate(img) if v]
            if nz and nz != [j]:
                ok = False
                break
            vals.append(img[j] if nz else Fraction(0))
        if not ok:
            break
        diag.append(vals)
    if ok:
        groups: dict[tuple, list[Vector]] = {}
        for j in range(d):
            w = tuple(int(diag[i][j]) if diag[i][j].denominator == 1 else diag[i][j]
                      for i in range(len(cartan)))
            groups.setdefault(w, []).append(struct.unit(j))
        return sorted(groups.items())
    ops = [struct.ad(x) for x in cartan]
    return [(w, [list(v) for v in sp.vectors]) for w, sp in simultaneous_eigenspaces(ops, d)]


# ---------------------------------------------------------------- isotypic split

@dataclass
class Summand:
    label: Label
    hw: Vector
    images: list[Vector]  # L-vector of each model basis carrier


@dataclass
class IsotypicDecomposition:
    n: int
    lie: LiePresentation
    summands: dict[Label, list[Summand]]
    columns: list[Vector] = field(repr=False, default_factory=list)
    inverse: list[list[Fraction]] = field(repr=False, default_factory=list)
    offsets: dict = field(repr=False, default_factory=dict)

    def counts(self) -> dict[Label, int]:
        return {lab: len(self.summands.get(lab, [])) for lab in LABEL_ORDER}

    def model_coords(self, w: Vector) -> list[Fraction]:
        nz = [(k, x) for k, x in enumerate(w) if x]
        return [sum((row[k] * x for k, x in nz), Fraction(0)) for row in self.inverse]

    def block(self, coords, label: Label, s: int) -> list[Fraction]:
        off = self.offsets[(label, s)]
        return coords[off: off + build_module(label, self.n).dim]

    def component_vectors(self, label: Label) -> list[Vector]:
        return [v for sm in self.summands.get(label, []) for v in sm.images]


def _lower(lie: LiePresentation, label: Label, v0: Vector) -> list[Vector]:
    n = lie.n
    mod = build_module(label, n)
    E, F, H = action_tables(label, n)
    c0 = list(mod.coords(highest_weight_carrier(label, n)))
    pairs = [(c0, v0)]
    queue = [0]
    rows = [c0]
    while queue and len(pairs) < mod.dim:
        r = queue.pop(0)
        cm, lv = pairs[r]
        for i in range(n):
            nm = [Fraction(0)] * mod.dim
            for k, x in enumerate(cm):
                if x:
                    for t, c in F[i][k].items():
                        nm[t] += x * c
            if not any(nm):
                continue
            if span(rows + [nm], mod.dim).dim == len(rows):
                continue
            rows.append(nm)
            pairs.append((nm, lie.struct.bracket(lie.f[i], lv)))
            queue.append(len(pairs) - 1)
    if len(pairs) != mod.dim:
        raise ExtractionError(f"lowering from a {label.symbol} highest-weight vector did not fill the module")
    minv = inverse([p[0] for p in pairs])
    images = []
    for k in range(mod.dim):
        v = [Fraction(0)] * lie.dim
        for r, c in enumerate(minv[k]):
            if c:
                for j, x in enumerate(pairs[r][1]):
                    if x:
                        v[j] += c * x
        images.append(v)
    # the map must intertwine all generators, not only the lowering ones
    for tables, gens in ((E, lie.e), (F, lie.f), (H, lie.h)):
        for i in range(n):
            for k in range(mod.dim):
                got = lie.struct.bracket(gens[i], images[k])
                want = [Fraction(0)] * lie.dim
                for t, c in tables[i][k].items():
                    for j, x in enumerate(images[t]):
                        if x:
                            want[j] += c * x
                if got != want:
                    raise ExtractionError(f"{label.symbol} summand is not isomorphic to its model")
    return images


def _grading_hw(lie: LiePresentation) -> Vector:
    v = lie.e[lie.n - 1]
    for i in range(lie.n - 2, -1, -1):
        v = lie.struct.bracket(lie.e[i], v)
    return v


def isotypic_split(lie: LiePresentation) -> IsotypicDecomposition:
    n = lie.n
    d = lie.dim
    try:
        spaces = dict(weight_decomposition(lie.struct, lie.h))
    except LinalgError as exc:
        raise ExtractionError(f"no weight decomposition: {exc}") from exc
    allowed = ahat_weights(n)
    for w in spaces:
        if w not in allowed:
            raise ExtractionError(f"weight {w} lies outside the allowed weight set")
    summands: dict[Label, list[Summand]] = {}
    for label in LABEL_ORDER:
        vecs = spaces.get(highest_weight(label, n), [])
        if not vecs:
            summands[label] = []
            continue
        system = []
        for i in range(n):
            imgs = [lie.struct.bracket(lie.e[i], v) for v in vecs]
            for k in range(d):
                system.append([img[k] for img in imgs])
        ker = kernel_basis(system, len(vecs))
        hws = []
        for c in ker.vectors:
            w = [Fraction(0)] * d
            for x, v in zip(c, vecs):
                if x:
                    for j, y in enumerate(v):
                        if y:
                            w[j] += x * y
            hws.append(w)
        if label is Label.ADJOINT and hws:
            w0 = _grading_hw(lie)
            chosen = [w0]
            for w in hws:
                if span(chosen + [w], d).dim > len(chosen):
                    chosen.append(w)
            if len(chosen) != len(hws):
                raise ExtractionError("grading subalgebra is not inside the adjoint component")
            hws = chosen
        summands[label] = [Summand(label, w, _lower(lie, label, w)) for w in hws]
    columns, offsets = [], {}
    for label in LABEL_ORDER:
        for s, sm in enumerate(summands[label]):
            offsets[(label, s)] = len(columns)
            columns.extend(sm.images)
    if len(columns) != d:
        raise ExtractionError(f"summands have total dimension {len(columns)}, not {d}")
    try:
        inv = inverse([[columns[c][r] for c in range(d)] for r in range(d)])
    except LinalgError as exc:
        raise ExtractionError("summands do not form a direct sum") from exc
    return IsotypicDecomposition(n, lie, summands, columns, inv, offsets)


# ---------------------------------------------------------------- probes

def _eps(t: Tag) -> int:
    # symmetric carriers for the antifixed tags, skew ones for the fixed tags
    return 1 if ca.sign(t) == -1 else -1


def _zmat(n1: int, t: Tag, p: int, q: int):
    z = unit(n1, p, q)
    z[q][p] += _eps(t)
    return z


def _evec(n1: int, p: int) -> list[Fraction]:
    return [Fraction(int(i == p)) for i in range(n1)]


class _Reader:
    def __init__(self, split: IsotypicDecomposition, dims: dict[Tag, int]):
        self.split = split
        self.n = split.n
        self.n1 = split.n + 1
        self.dims = dims
        self.struct = split.lie.struct
        self.sl = build_sl(self.n)

    def atom(self, t: Tag, z, s: int) -> Vector:
        label = TAG_LABEL[t]
        if label is Label.ADJOINT:
            coords = sl_coords(z)
        else:
            coords = build_module(label, self.n).coords(z)
        sm = self.split.summands[label][s]
        out = [Fraction(0)] * self.struct.dim
        for c, img in zip(coords, sm.images):
            if c:
                for j, x in enumerate(img):
                    if x:
                        out[j] += c * x
        return out

    def _matrix(self, label: Label, block) -> list[list[Fraction]]:
        basis = build_module(label, self.n).basis
        mat = [[Fraction(0)] * self.n1 for _ in range(self.n1)]
        for c, b in zip(block, basis):
            if c:
                for i in range(self.n1):
                    for j in range(self.n1):
                        if b[i][j]:
                            mat[i][j] += c * b[i][j]
        return mat

    def entry(self, w: Vector, p: int, q: int) -> ca.Element:
        coords = self.split.model_coords(w)
        out: ca.Element = {}
        na = self.dims[Tag.APLUS]
        ap, am = [Fraction(0)] * na, [Fraction(0)] * na
        for s in range(na):
            z = self._matrix(Label.ADJOINT, self.split.block(coords, Label.ADJOINT, s))
            am[s] = (z[p][q] + z[q][p]) / 2
            ap[s] = (z[p][q] - z[q][p]) / 2
        out[Tag.AMINUS], out[Tag.APLUS] = am, ap
        for t in (Tag.C, Tag.CPRIME, Tag.E, Tag.EPRIME):
            label = TAG_LABEL[t]
            out[t] = [self._matrix(label, self.split.block(coords, label, s))[p][q]
                      for s in range(self.dims[t])]
        return ca.clean(out)

    def component(self, w: Vector, p: int) -> ca.Element:
        coords = self.split.model_coords(w)
        out: ca.Element = {}
        for t in (Tag.B, Tag.BPRIME):
            out[t] = [self.split.block(coords, TAG_LABEL[t], s)[p] for s in range(self.dims[t])]
        return ca.clean(out)

    def d_part(self, w: Vector) -> list[Fraction]:
        coords = self.split.model_coords(w)
        return [self.split.block(coords, Label.TRIVIAL, s)[0] for s in range(self.dims[Tag.D])]

    def outside_d(self, w: Vector) -> bool:
        coords = self.split.model_coords(w)
        off = self.split.offsets
        dpos = {off[(Label.TRIVIAL, s)] for s in range(self.dims[Tag.D])}
        return any(c for k, c in enumerate(coords) if k not in dpos)

    def br(self, x: Vector, y: Vector) -> Vector:
        return self.struct.bracket(x, y)


def _as_tensor_row(el: ca.Element, out: Tag) -> dict[int, Fraction]:
    return {k: c for k, c in enumerate(el.get(out, [])) if c}


def extract_with_report(lie: LiePresentation, split: IsotypicDecomposition) -> tuple[ca.CoordAlgebraData, VerificationReport]:
    """Coordinate data and the probe-consistency report (two probes per tensor entry)."""
    n = lie.n
    n1 = n + 1
    if n < 4:
        raise ExtractionError("extraction needs n >= 4")
    counts = split.counts()
    dims = {t: counts[TAG_LABEL[t]] for t in ca.TAG_ORDER}
    rd = _Reader(split, dims)
    rep = VerificationReport("ProbeConsistency")

    def agree(witness, a, b):
        rep.checked_count += 1
        same = ca.equal(a, b) if isinstance(a, dict) else a == b
        if not same:
            rep.fail(witness, a, b)

    def only(witness, el: ca.Element, tag: Tag | None):
        rep.checked_count += 1
        extra = {t.value: v for t, v in el.items() if t is not tag and any(v)}
        if extra:
            rep.fail(witness, extra, "zero outside " + (tag.value if tag else "nothing"))

    # products alpha1 alpha2 inside the associative part
    prod: dict = {}
    probes = (((0, 1), (1, 2), (0, 2)), ((2, 3), (3, 4), (2, 4)))
    for t1 in ca.A_TAGS:
        for t2 in ca.A_TAGS:
            if ca.route(t1, t2) is None:
                continue
            for k1 in range(dims[t1]):
                for k2 in range(dims[t2]):
                    vals = []
                    for (p1, q1), (p2, q2), (p, q) in probes:
                        w = rd.br(rd.atom(t1, _zmat(n1, t1, p1, q1), k1), rd.atom(t2, _zmat(n1, t2, p2, q2), k2))
                        vals.append(rd.entry(w, p, q))
                    agree(("product", t1.value, k1, t2.value, k2), vals[0], vals[1])
                    prod[(t1, k1, t2, k2)] = vals[0]
    # hermitian values beta1 beta2
    for t1 in ca.M_TAGS:
        for t2 in ca.M_TAGS:
            for k1 in range(dims[t1]):
                for k2 in range(dims[t2]):
                    vals = []
                    for p, q in ((0, 1), (2, 3)):
                        w = rd.br(rd.atom(t1, _evec(n1, p), k1), rd.atom(t2, _evec(n1, q), k2))
                        vals.append(rd.entry(w, p, q))
                    agree(("hermitian", t1.value, k1, t2.value, k2), vals[0], vals[1])
                    prod[(t1, k1, t2, k2)] = vals[0]

    products: dict = {}
    for i, t1 in enumerate(ca.B_TAGS):
        for t2 in ca.B_TAGS[i:]:
            r = ca.route(t1, t2)
            if r is None:
                continue
            circ, brk = {}, {}
            for k1 in range(dims[t1]):
                for k2 in range(dims[t2]):
                    a, b = prod[(t1, k1, t2, k2)], prod[(t2, k2, t1, k1)]
                    sym, skew = ca.add_el(a, b), ca.add_el(a, b, -1)
                    only(("symmetric part", t1.value, k1, t2.value, k2), sym, r[0])
                    only(("skew part", t1.value, k1, t2.value, k2), skew, r[1])
                    if _as_tensor_row(sym, r[0]):
                        circ[(k1, k2)] = _as_tensor_row(sym, r[0])
                    if _as_tensor_row(skew, r[1]):
                        brk[(k1, k2)] = _as_tensor_row(skew, r[1])
            if circ:
                products[(t1, t2, r[0], "circ")] = circ
            if brk:
                products[(t1, t2, r[1], "bracket")] = brk

    # module actions
    for t in ca.LEFT_ACTION_TAGS:
        out = ca.left_action_out(t, Tag.B)
        ten = {}
        for k in range(dims[t]):
            for j in range(dims[Tag.B]):
                vals = []
                for p, q in ((0, 1), (2, 3)):
                    w = rd.br(rd.atom(t, _zmat(n1, t, p, q), k), rd.atom(Tag.B, _evec(n1, q), j))
                    vals.append(rd.component(w, p))
                agree(("left action", t.value, k, "B", j), vals[0], vals[1])
                only(("left action", t.value, k, "B", j), vals[0], out)
                if _as_tensor_row(vals[0], out):
                    ten[(k, j)] = _as_tensor_row(vals[0], out)
        if ten:
            products[(t, Tag.B, out, "action")] = ten
    for t in ca.RIGHT_ACTION_TAGS:
        out = ca.right_action_out(Tag.BPRIME, t)
        ten = {}
        for j in range(dims[Tag.BPRIME]):
            for k in range(dims[t]):
                vals = []
                for p, q in ((0, 1), (2, 3)):
                    w = rd.br(rd.atom(Tag.BPRIME, _evec(n1, p), j), rd.atom(t, _zmat(n1, t, p, q), k))
                    vals.append(rd.component(w, q))
                agree(("right action", "B'", j, t.value, k), vals[0], vals[1])
                only(("right action", "B'", j, t.value, k), vals[0], out)
                if _as_tensor_row(vals[0], out):
                    ten[(j, k)] = _as_tensor_row(vals[0], out)
        if ten:
            products[(Tag.BPRIME, t, out, "action")] = ten

    # forms
    for t1, t2 in ca.FORM_PAIRS:
        ten = {}
        for k1 in range(dims[t1]):
            for k2 in range(dims[t2]):
                vals = []
                for p, q in ((0, 1), (2, 3)):
                    if t1 in ca.A_TAGS:
                        w = rd.br(rd.atom(t1, _zmat(n1, t1, p, q), k1), rd.atom(t2, _zmat(n1, t2, p, q), k2))
                        scale = Fraction(n1, 2 * _eps(t1))
                    else:
                        w = rd.br(rd.atom(t1, _evec(n1, p), k1), rd.atom(t2, _evec(n1, p), k2))
                        scale = Fraction(n1)
                    vals.append([scale * x for x in rd.d_part(w)])
                agree(("form", t1.value, k1, t2.value, k2), vals[0], vals[1])
                row = {k: c for k, c in enumerate(vals[0]) if c}
                if row:
                    ten[(k1, k2)] = row
        if ten:
            products[(t1, t2, Tag.D, "form")] = ten

    # D acting on every component, and the bracket on D
    dvecs = [sm.images[0] for sm in split.summands[Label.TRIVIAL]]
    for t in ca.B_TAGS:
        ten = {}
        for s, dv in enumerate(dvecs):
            for k in range(dims[t]):
                vals = []
                for p, q in ((0, 1), (2, 3)):
                    if t in ca.A_TAGS:
                        vals.append(rd.entry(rd.br(dv, rd.atom(t, _zmat(n1, t, p, q), k)), p, q))
                    else:
                        vals.append(rd.component(rd.br(dv, rd.atom(t, _evec(n1, p), k)), p))
                agree(("D action", s, t.value, k), vals[0], vals[1])
                only(("D action", s, t.value, k), vals[0], t)
                if _as_tensor_row(vals[0], t):
                    ten[(s, k)] = _as_tensor_row(vals[0], t)
        if ten:
            products[(Tag.D, t, t, "action")] = ten
    d_bracket = {}
    for s, dv in enumerate(dvecs):
        for r, dw in enumerate(dvecs):
            w = rd.br(dv, dw)
            rep.checked_count += 1
            if rd.outside_d(w):
                rep.fail(("D bracket", s, r), "bracket leaves D", "inside D")
            row = {k: c for k, c in enumerate(rd.d_part(w)) if c}
            if row:
                d_bracket[(s, r)] = row

    unit_vec = [Fraction(int(k == 0)) for k in range(dims[Tag.APLUS])]
    data = ca.CoordAlgebraData(n, dims, unit_vec, products, d_bracket)
    return data, rep


def extract_coord(lie: LiePresentation, split: IsotypicDecomposition | None = None) -> ca.CoordAlgebraData:
    split = split or isotypic_split(lie)
    data, rep = extract_with_report(lie, split)
    if not rep.passed:
        raise ExtractionError("probe brackets disagree", rep)
    return data


# ---------------------------------------------------------------- BC checks

def bc_weights(r: int) -> set[tuple[int, ...]]:
    out = {tuple([0] * r)}
    for i in range(r):
        for s in (1, -1):
            for mult in (1, 2):
                w = [0] * r
                w[i] = s * mult
                out.add(tuple(w))
            for j in range(i + 1, r):
                for t in (1, -1):
                    w = [0] * r
                    w[i], w[j] = s, t
                    out.add(tuple(w))
    return out


def so_cartan(lie: LiePresentation) -> list[Vector]:
    """Cartan of the split so(n+1) inside the grading copy: E_kk - E_{n+2-k,n+2-k}."""
    n = lie.n
    r = (n + 1) // 2
    out = []
    for k in range(1, r + 1):
        v = [Fraction(0)] * lie.dim
        for i in range(k, n + 2 - k):
            v = [a + b for a, b in zip(v, lie.h[i - 1])]
        out.append(v)
    return out


def bc_weight_check(lie: LiePresentation, direction: str) -> VerificationReport:
    if direction == "ahat-to-bc":
        cartan = so_cartan(lie)
        r = len(cartan)
        rep = VerificationReport(f"AhatToBC(r={r})")
        allowed = bc_weights(r)
        for w, vecs in weight_decomposition(lie.struct, cartan):
            rep.checked_count += len(vecs)
            if w not in allowed:
                rep.fail(("weight", w), len(vecs), "outside BC_r and 0")
        return rep
    if direction == "bc-to-ahat":
        if not lie.bc_cartan:
            rep = VerificationReport("BCToAhat")
            rep.fail(("bc_cartan",), "missing", "a BC_r Cartan")
            return rep
        cartan = lie.bc_cartan
        r = len(cartan)
        rep = VerificationReport(f"BCToAhat(r={r})")
        allowed = bc_weights(r)
        ahat = ahat_weights(r - 1)
        for w, vecs in weight_decomposition(lie.struct, cartan):
            rep.checked_count += len(vecs)
            if w not in allowed:
                rep.fail(("weight", w), len(vecs), "outside BC_r and 0")
            restricted = tuple(w[i] - w[i + 1] for i in range(r - 1))
            if restricted not in ahat:
                rep.fail(("restricted weight", w, restricted), len(vecs), f"outside the weights of type A_{r - 1}")
        return rep
    raise ValueError(f"unknown direction {direction!r}")


def main_assumptions_check(lie: LiePresentation, split: IsotypicDecomposition) -> VerificationReport:
    rep = VerificationReport("MainAssumptions")
    pairs = [(Label.EXT, Label.EXT), (Label.EXT_DUAL, Label.EXT_DUAL)]
    if lie.n == 4:
        pairs += [(Label.EXT, Label.NAT), (Label.EXT_DUAL, Label.NAT_DUAL)]
    for a, b in pairs:
        sub = rep.add(VerificationReport(f"[{a.symbol}, {b.symbol}] = 0"))
        xs, ys = split.component_vectors(a), split.component_vectors(b)
        for i, x in enumerate(xs):
            for j, y in enumerate(ys):
                sub.checked_count += 1
                w = lie.struct.bracket(x, y)
                if any(w):
                    sub.fail((a.symbol, i, b.symbol, j), {k: v for k, v in enumerate(w) if v}, 0)
        if not xs or not ys:
            sub.notes.append("vacuous: a component is zero")
    return rep


# ---------------------------------------------------------------- JSON

PRESENTATION_SCHEMA = "gradedlie/lie-presentation/1"


def presentation_to_json(lie: LiePresentation) -> dict:
    from .serialize import sparse_vec_out
    from .structure import structure_out
    doc = {"schema": PRESENTATION_SCHEMA, "n": lie.n, "dim": lie.dim,
           "structure": structure_out(lie.struct),
           "generators": {"e": [sparse_vec_out(v) for v in lie.e], "f": [sparse_vec_out(v) for v in lie.f],
                          "h": [sparse_vec_out(v) for v in lie.h]}}
    if lie.struct.names:
        doc["names"] = list(lie.struct.names)
    if lie.bc_cartan:
        doc["bc_cartan"] = [sparse_vec_out(v) for v in lie.bc_cartan]
    if lie.kind:
        doc["kind"] = lie.kind
    return doc


def presentation_from_json(doc) -> LiePresentation:
    from .serialize import SchemaError, require, sparse_vec_in
    from .structure import structure_in
    require(doc, PRESENTATION_SCHEMA, ("n", "dim", "structure", "generators"))
    n, dim = doc["n"], doc["dim"]
    if not (isinstance(n, int) and isinstance(dim, int) and n >= 1 and dim >= 0):
        raise SchemaError("n and dim must be positive ints")
    gens = doc["generators"]
    if not isinstance(gens, dict) or any(not isinstance(gens.get(k), list) or len(gens[k]) != n for k in "efh"):
        raise SchemaError("generators must hold n vectors each for e, f, h")
    names = doc.get("names")
    if names is not None and (not isinstance(names, list) or len(names) != dim):
        raise SchemaError("names must list one name per basis element")
    struct = structure_in(doc["structure"], dim, names)
    e, f, h = ([sparse_vec_in(v, dim) for v in gens[k]] for k in "efh")
    bc = doc.get("bc_cartan")
    bc = [sparse_vec_in(v, dim) for v in bc] if bc is not None else None
    return LiePresentation(n, struct, e, f, h, bc, doc.get("kind"))
