"""Assemble the Lie algebra L from coordinate data and check that it is a graded Lie algebra.

Basis elements of L are (module label, module basis index, coordinate index).
Each one is written as a sum of atoms z (x) alpha, where z is a matrix (or a column
vector) and alpha a homogeneous coordinate vector; an element x (x) a of g (x) A is
the atom pair x+ (x) a- plus x- (x) a+, with x+ and x- the symmetric and skew parts.
Atoms multiply by

    [z1 (x) a1, z2 (x) a2] = 1/2 [z1, z2] (x) (a1 o a2) + 1/2 (z1 z2 + z2 z1) (x) [a1, a2]
    [z (x) a, u (x) b]     = z u (x) a.b
    [u (x) b1, v (x) b2]   = u v^t (x) h - v u^t (x) gamma(h),  h = b1 b2

and whenever a pair carries the D-valued form, the trace of the coefficient of
[a1, a2] is traded for a D-term: W (x) [a1, a2] becomes
(W - tr(W)/(n+1) I) (x) [a1, a2] + tr(W)/(n+1) <a1, a2>.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import coordalg as ca
from .coordalg import CoordAlgebraData, Tag
from .linalg import span
from .report import VerificationReport
from .slmodules import (LABEL_ORDER, Label, ahat_weights, basis_weights, build_module, build_sl,
                        sl_coords, trace)
from .structure import LieStructure, check_anticommutativity, check_jacobi as _check_jacobi

TAG_OF_LABEL = {Label.SYM: Tag.C, Label.SYM_DUAL: Tag.CPRIME, Label.EXT: Tag.E,
                Label.EXT_DUAL: Tag.EPRIME, Label.NAT: Tag.B, Label.NAT_DUAL: Tag.BPRIME}
LABEL_OF_TAG = {v: k for k, v in TAG_OF_LABEL.items()}


class BuildError(ValueError):
    pass


def coord_dim(data: CoordAlgebraData, label: Label) -> int:
    if label is Label.ADJOINT:
        return data.dim(Tag.APLUS)
    if label is Label.TRIVIAL:
        return data.dim(Tag.D)
    return data.dim(TAG_OF_LABEL[label])


def basis_index(data: CoordAlgebraData) -> list[tuple[str, int, int]]:
    """(label, module index, coordinate index) in the order label, coordinate, module."""
    out = []
    for label in LABEL_ORDER:
        mdim = build_module(label, data.n).dim
        for s in range(coord_dim(data, label)):
            for m in range(mdim):
                out.append((label.symbol, m, s))
    return out


@dataclass
class GradedLie:
    n: int
    basis: list[tuple[str, int, int]]
    struct: LieStructure
    cartan: list[list[Fraction]]
    anchors: list[int]  # basis elements x (x) a with a in the support of 1

    @property
    def dim(self) -> int:
        return self.struct.dim

    def weights(self) -> list[tuple[int, ...]]:
        return [basis_weights(Label.from_symbol(lab), self.n)[m] for lab, m, _ in self.basis]


# ---------------------------------------------------------------- atoms

def _sym_skew(x):
    n1 = len(x)
    sym = [[(x[i][j] + x[j][i]) / 2 for j in range(n1)] for i in range(n1)]
    skew = [[(x[i][j] - x[j][i]) / 2 for j in range(n1)] for i in range(n1)]
    return sym, skew


def _nonzero(z) -> bool:
    return any(any(row) for row in z) if isinstance(z[0], list) else any(z)


class _Atoms:
    """Atom expansion of basis elements and the conversion of atoms back to L-coordinates."""

    def __init__(self, data: CoordAlgebraData):
        self.data = data
        self.n = data.n
        self.n1 = data.n + 1
        self.index = basis_index(data)
        self.pos = {b: i for i, b in enumerate(self.index)}
        self.sl = build_sl(self.n)

    def expand(self, b: tuple[str, int, int]):
        """List of ('m', z, tag, vec) matrix atoms, ('v', u, tag, vec) vector atoms, ('d', None, D, vec)."""
        lab, m, s = b
        label = Label.from_symbol(lab)
        if label is Label.ADJOINT:
            x = self.sl.basis[m]
            sym, skew = _sym_skew(x)
            da = self.data.dim(Tag.APLUS)
            out = []
            if _nonzero(sym):
                out.append(("m", sym, Tag.AMINUS, _unit(da, s)))
            if _nonzero(skew):
                out.append(("m", skew, Tag.APLUS, _unit(da, s)))
            return out
        if label is Label.TRIVIAL:
            return [("d", None, Tag.D, _unit(self.data.dim(Tag.D), s))]
        tag = TAG_OF_LABEL[label]
        carrier = build_module(label, self.n).basis[m]
        kind = "v" if tag in ca.M_TAGS else "m"
        return [(kind, carrier, tag, _unit(self.data.dim(tag), s))]

    # output accumulation -------------------------------------------------
    def emit_matrix(self, acc, z, tag: Tag, vec, scale=Fraction(1)):
        if not any(vec) or not _nonzero(z):
            return
        if tag in (Tag.APLUS, Tag.AMINUS):
            if trace(z) != 0:
                raise BuildError(f"matrix with nonzero trace routed to {tag.value}")
            coords = sl_coords(z)
            label = Label.ADJOINT
        else:
            label = LABEL_OF_TAG[tag]
            coords = build_module(label, self.n).coords(z)
        for s, c in enumerate(vec):
            if c:
                for m, x in enumerate(coords):
                    if x:
                        k = self.pos[(label.symbol, m, s)]
                        acc[k] = acc.get(k, 0) + scale * c * x

    def emit_vector(self, acc, u, tag: Tag, vec, scale=Fraction(1)):
        label = LABEL_OF_TAG[tag]
        for s, c in enumerate(vec):
            if c:
                for m, x in enumerate(u):
                    if x:
                        k = self.pos[(label.symbol, m, s)]
                        acc[k] = acc.get(k, 0) + scale * c * x

    def emit_d(self, acc, vec, scale=Fraction(1)):
        for s, c in enumerate(vec):
            if c:
                k = self.pos[(Label.TRIVIAL.symbol, 0, s)]
                acc[k] = acc.get(k, 0) + scale * c

    # products of atoms ---------------------------------------------------
    def _bracket_term(self, acc, w, t1, t2, v1, v2, out, vals):
        """Emit W (x) [a1, a2], trading the trace for the form when the pair carries one."""
        form = self.data.form_h(t1, t2, v1, v2)
        tr = trace(w)
        if form is not None and tr:
            n1 = self.n1
            w = [[w[i][j] - (tr / n1 if i == j else 0) for j in range(n1)] for i in range(n1)]
            self.emit_d(acc, form, tr / n1)
        self.emit_matrix(acc, w, out, vals)

    def mm(self, acc, z1, t1, v1, z2, t2, v2, scale=Fraction(1)):
        d = self.data
        r = d.circ_h(t1, t2, v1, v2)
        if r is None:
            return
        half = Fraction(1, 2) * scale
        z12, z21 = _mul(z1, z2), _mul(z2, z1)
        comm = [[half * (a - b) for a, b in zip(r1, r2)] for r1, r2 in zip(z12, z21)]
        anti = [[half * (a + b) for a, b in zip(r1, r2)] for r1, r2 in zip(z12, z21)]
        self.emit_matrix(acc, comm, r[0], r[1])
        out, vals = d.bracket_h(t1, t2, v1, v2)
        self._bracket_term(acc, anti, t1, t2, v1, v2, out, vals)

    def mv(self, acc, z, t, va, u, m, vm, scale=Fraction(1)):
        r = self.data.left_h(t, m, va, vm)
        if r is None:
            return
        zu = [sum((z[i][j] * u[j] for j in range(self.n1) if u[j]), Fraction(0)) for i in range(self.n1)]
        self.emit_vector(acc, zu, r[0], r[1], scale)

    def vv(self, acc, u, t1, v1, v, t2, v2, scale=Fraction(1)):
        d = self.data
        n1 = self.n1
        uv = [[u[i] * v[j] for j in range(n1)] for i in range(n1)]
        vu = [[v[i] * u[j] for j in range(n1)] for i in range(n1)]
        half = Fraction(1, 2) * scale
        r = d.circ_h(t1, t2, v1, v2)
        if r is None:
            return
        # h = 1/2 (b1 o b2) + 1/2 [b1, b2]; each part o contributes (uv^t - sign(o) vu^t) (x) part
        for kind, (out, vals) in (("circ", r), ("bracket", d.bracket_h(t1, t2, v1, v2))):
            sg = ca.sign(out)
            w = [[half * (a - sg * b) for a, b in zip(r1, r2)] for r1, r2 in zip(uv, vu)]
            if kind == "bracket":
                self._bracket_term(acc, w, t1, t2, v1, v2, out, vals)
            else:
                self.emit_matrix(acc, w, out, vals)

    def bracket_atoms(self, acc, a, b, scale=Fraction(1)):
        k1, z1, t1, v1 = a
        k2, z2, t2, v2 = b
        if k1 == "d" and k2 == "d":
            self.emit_d(acc, self.data.d_br(v1, v2), scale)
        elif k1 == "d":
            vals = self.data.d_act(t2, v1, v2)
            if k2 == "m":
                self.emit_matrix(acc, z2, t2, vals, scale)
            else:
                self.emit_vector(acc, z2, t2, vals, scale)
        elif k2 == "d":
            self.bracket_atoms(acc, b, a, -scale)
        elif k1 == "m" and k2 == "m":
            self.mm(acc, z1, t1, v1, z2, t2, v2, scale)
        elif k1 == "m":
            self.mv(acc, z1, t1, v1, z2, t2, v2, scale)
        elif k2 == "m":
            self.mv(acc, z2, t2, v2, z1, t1, v1, -scale)
        else:
            self.vv(acc, z1, t1, v1, z2, t2, v2, scale)


def _unit(d: int, i: int) -> list[Fraction]:
    v = [Fraction(0)] * d
    v[i] = Fraction(1)
    return v


def _mul(a, b):
    n1 = len(a)
    out = [[Fraction(0)] * n1 for _ in range(n1)]
    for i in range(n1):
        for k in range(n1):
            x = a[i][k]
            if x:
                for j in range(n1):
                    if b[k][j]:
                        out[i][j] += x * b[k][j]
    return out


# ---------------------------------------------------------------- assembly

def assemble(data: CoordAlgebraData) -> GradedLie:
    if data.n < 4:
        raise BuildError("assembly needs n >= 4")
    if data.dim(Tag.APLUS) != data.dim(Tag.AMINUS):
        raise BuildError("A+ and A- must have equal dimension")
    rep = ca.validate(data)
    if not rep.passed:
        bad = rep.failures()[0]
        raise BuildError(f"coordinate data fails {bad.law}: {bad.first_failure.witness}")
    at = _Atoms(data)
    atoms = [at.expand(b) for b in at.index]
    d = len(at.index)
    table = {}
    for i in range(d):
        for j in range(d):
            acc: dict[int, Fraction] = {}
            for a in atoms[i]:
                for b in atoms[j]:
                    at.bracket_atoms(acc, a, b)
            row = {k: v for k, v in acc.items() if v}
            if row:
                table[(i, j)] = row
    names = [f"{lab}[{m}]x{s}" for lab, m, s in at.index]
    struct = LieStructure(d, table, names)
    sl = build_sl(data.n)
    hpos = [sl.names.index(f"h{i + 1}") for i in range(data.n)]
    cartan = []
    for hp in hpos:
        v = [Fraction(0)] * d
        for s, c in enumerate(data.unit):
            if c:
                v[at.pos[("g", hp, s)]] += c
        cartan.append(v)
    anchors = [at.pos[("g", m, s)] for s, c in enumerate(data.unit) if c for m in range(sl.dim)]
    return GradedLie(data.n, at.index, struct, cartan, anchors)


def check_jacobi(lie: GradedLie, mode: str | None = None, count: int = 2000, seed: int = 0) -> VerificationReport:
    return _check_jacobi(lie.struct, mode, count, seed, lie.anchors)


def check_antisymmetry(lie: GradedLie) -> VerificationReport:
    return check_anticommutativity(lie.struct)


# ---------------------------------------------------------------- grading

def grading_report(struct: LieStructure, cartan, g_span, n: int) -> VerificationReport:
    """(Gamma2) weights and additivity, (Gamma3), and the ideal generated by the grading copy."""
    from .extractor import weight_decomposition
    rep = VerificationReport("Grading")
    d = struct.dim
    wrep = rep.add(VerificationReport("Gamma2-weights"))
    spaces = weight_decomposition(struct, cartan)
    allowed = ahat_weights(n)
    for w, vecs in spaces:
        wrep.checked_count += len(vecs)
        if w not in allowed:
            wrep.fail(("weight", w), len(vecs), "outside the allowed weight set")
    by_w = dict(spaces)
    sub_by_w = {w: span(v, d) for w, v in spaces}
    arep = rep.add(VerificationReport("Gamma2-additivity"))
    for w1, vs1 in spaces:
        for w2, vs2 in spaces:
            target = tuple(a + b for a, b in zip(w1, w2))
            tspace = sub_by_w.get(target)
            for x in vs1:
                for y in vs2:
                    arep.checked_count += 1
                    z = struct.bracket(x, y)
                    if any(z) and (tspace is None or not tspace.contains(z)):
                        arep.fail((w1, w2), {k: v for k, v in enumerate(z) if v}, f"weight {target}")
    zero = tuple([0] * n)
    g3 = rep.add(VerificationReport("Gamma3"))
    gens = []
    for w, vs in spaces:
        if w == zero:
            continue
        neg = tuple(-a for a in w)
        for x in vs:
            for y in by_w.get(neg, []):
                z = struct.bracket(x, y)
                if any(z):
                    gens.append(z)
    sp = span(gens, d)
    for k, v in enumerate(by_w.get(zero, [])):
        g3.checked_count += 1
        if not sp.contains(v):
            g3.fail(("zero-weight vector", k), {i: c for i, c in enumerate(v) if c}, "not in the sum of [L_a, L_-a]")
    irep = rep.add(VerificationReport("GeneratedIdeal"))
    ideal = span(g_span, d)
    frontier = [list(v) for v in ideal.vectors]
    while frontier:
        new = []
        for v in frontier:
            for i in range(d):
                z = struct.bracket(struct.unit(i), v)
                irep.checked_count += 1
                if any(z) and not ideal.contains(z):
                    ideal = span([list(x) for x in ideal.vectors] + [z], d)
                    new.append(z)
        frontier = new
    if ideal.dim != d:
        irep.fail(("ideal dimension",), ideal.dim, d)
    return rep


def check_grading(lie: GradedLie) -> VerificationReport:
    return grading_report(lie.struct, lie.cartan, _grading_copy(lie)[lie.n:], lie.n)


def _grading_copy(lie: GradedLie) -> list[list[Fraction]]:
    """Cartan images followed by x (x) 1 for every sl basis element x."""
    out = list(lie.cartan)
    sl = build_sl(lie.n)
    hidx = sl.names.index("h1")
    unit_by_s = {s: c for i, (lab, m, s) in enumerate(lie.basis) if lab == "g" and m == hidx
                 for c in [lie.cartan[0][i]] if c}
    for m in range(sl.dim):
        v = [Fraction(0)] * lie.dim
        for i, (lab, mm, s) in enumerate(lie.basis):
            if lab == "g" and mm == m and s in unit_by_s:
                v[i] = unit_by_s[s]
        out.append(v)
    return out


# ---------------------------------------------------------------- round trip

def round_trip_check(data_lie: GradedLie, split) -> VerificationReport:
    """Checks the explicit basis map P (built basis -> input basis) preserves brackets.

    Column a of P is the input-algebra vector of the model carrier that the built basis
    element a stands for; the check is F.bracket(P a, P b) = P [a, b] for all pairs.
    """
    rep = VerificationReport("RoundTrip")
    cols = split.columns
    F = split.lie.struct
    d = data_lie.dim
    if len(cols) != d:
        rep.fail(("dimension",), d, len(cols))
        return rep
    rep.notes.append("basis map: built element (label, module index, coordinate index) -> summand image")
    for a in range(d):
        for b in range(d):
            rep.checked_count += 1
            lhs = F.bracket(cols[a], cols[b])
            rhs = [Fraction(0)] * F.dim
            for k, c in data_lie.struct.basis_bracket(a, b).items():
                for j, x in enumerate(cols[k]):
                    if x:
                        rhs[j] += c * x
            if lhs != rhs:
                rep.fail((data_lie.struct.name(a), data_lie.struct.name(b)),
                         {k: v for k, v in enumerate(lhs) if v}, {k: v for k, v in enumerate(rhs) if v})
                break
    return rep


# ---------------------------------------------------------------- JSON

LIE_SCHEMA = "gradedlie/graded-lie/1"


def to_json(lie: GradedLie) -> dict:
    from .serialize import sparse_vec_out
    from .structure import structure_out
    return {"schema": LIE_SCHEMA, "n": lie.n,
            "basis": [[lab, m, s] for lab, m, s in lie.basis],
            "structure": structure_out(lie.struct),
            "cartan": [sparse_vec_out(v) for v in lie.cartan],
            "anchors": list(lie.anchors)}


def from_json(doc) -> GradedLie:
    from .serialize import SchemaError, require, sparse_vec_in
    from .structure import structure_in
    require(doc, LIE_SCHEMA, ("n", "basis", "structure", "cartan"))
    basis = doc["basis"]
    if not isinstance(basis, list) or not all(isinstance(b, list) and len(b) == 3 for b in basis):
        raise SchemaError("basis must be a list of [label, module index, coordinate index]")
    d = len(basis)
    names = [f"{lab}[{m}]x{s}" for lab, m, s in basis]
    struct = structure_in(doc["structure"], d, names)
    cartan = [sparse_vec_in(v, d) for v in doc["cartan"]]
    if len(cartan) != doc["n"]:
        raise SchemaError("cartan must list n vectors")
    anchors = doc.get("anchors", [])
    return GradedLie(doc["n"], [tuple(b) for b in basis], struct, cartan, anchors)


def presentation_of(lie: GradedLie):
    """The built algebra as a LiePresentation, with Chevalley generators x (x) 1."""
    from .extractor import LiePresentation
    sl = build_sl(lie.n)
    copy = _grading_copy(lie)[lie.n:]
    pos = {nm: i for i, nm in enumerate(sl.names)}
    n1 = lie.n + 1

    def name(i, j):
        return f"E{i + 1}{j + 1}" if n1 < 10 else f"E{i + 1},{j + 1}"

    e = [copy[pos[name(i, i + 1)]] for i in range(lie.n)]
    f = [copy[pos[name(i + 1, i)]] for i in range(lie.n)]
    return LiePresentation(lie.n, lie.struct, e, f, list(lie.cartan), None, "built")
