"""Coordinate algebra data: the spaces A+, A-, B, B', C, C', E, E', D and their products.

Every component sits in one block of a Peirce-type decomposition (pp, pq, qp
for the associative part, p or q for the module part) and carries the sign of
the involution.  Products between components are routed by these two labels:
the symmetric product of x and y has sign s(x)s(y), the skew product -s(x)s(y).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable

from .linalg import span
from .report import VerificationReport

Tensor = dict  # {(i, j): {k: Fraction}}


class Tag(Enum):
    APLUS = "A+"
    AMINUS = "A-"
    C = "C"
    E = "E"
    CPRIME = "C'"
    EPRIME = "E'"
    B = "B"
    BPRIME = "B'"
    D = "D"

    @classmethod
    def from_str(cls, s: str) -> "Tag":
        for t in cls:
            if t.value == s:
                return t
        raise ValueError(f"unknown component tag {s!r}")


A_TAGS = (Tag.APLUS, Tag.AMINUS, Tag.C, Tag.E, Tag.CPRIME, Tag.EPRIME)
M_TAGS = (Tag.B, Tag.BPRIME)
B_TAGS = A_TAGS + M_TAGS
TAG_ORDER = B_TAGS + (Tag.D,)
_POS = {t: i for i, t in enumerate(TAG_ORDER)}

_BLOCK = {Tag.APLUS: "pp", Tag.AMINUS: "pp", Tag.C: "pq", Tag.E: "pq",
          Tag.CPRIME: "qp", Tag.EPRIME: "qp", Tag.B: "p", Tag.BPRIME: "q"}
_FIXED = {Tag.APLUS, Tag.E, Tag.EPRIME, Tag.B, Tag.BPRIME}
_BY_BLOCK = {("pp", 1): Tag.APLUS, ("pp", -1): Tag.AMINUS, ("pq", 1): Tag.E, ("pq", -1): Tag.C,
             ("qp", 1): Tag.EPRIME, ("qp", -1): Tag.CPRIME}

FORM_PAIRS = ((Tag.APLUS, Tag.APLUS), (Tag.AMINUS, Tag.AMINUS), (Tag.C, Tag.CPRIME),
              (Tag.E, Tag.EPRIME), (Tag.B, Tag.BPRIME))


def sign(t: Tag) -> int:
    """Eigenvalue of the involution on a component."""
    return 1 if t in _FIXED else -1


def _block_product(b1: str, b2: str) -> str | None:
    # pp acts as the identity block; p/q are column blocks of the module part
    if b1 == "pp":
        return b2
    if b2 == "pp":
        return b1 if b1 in ("pq", "qp") else None
    table = {("pq", "qp"): "pp", ("qp", "pq"): "pp", ("p", "p"): "pq", ("q", "q"): "qp",
             ("p", "q"): "pp", ("q", "p"): "pp"}
    return table.get((b1, b2))


def route(t1: Tag, t2: Tag) -> tuple[Tag, Tag] | None:
    """(output of the symmetric product, output of the skew product) for two associative
    or two module components; None when the cell is zero."""
    if (t1 in A_TAGS) != (t2 in A_TAGS) or Tag.D in (t1, t2):
        return None
    out = _block_product(_BLOCK[t1], _BLOCK[t2])
    if out not in ("pp", "pq", "qp"):
        return None
    s = sign(t1) * sign(t2)
    if t1 in M_TAGS:
        # symmetric values of the hermitian product are fixed, skew ones antifixed
        s = 1
    return _BY_BLOCK[(out, s)], _BY_BLOCK[(out, -s)]


def left_action_out(t: Tag, m: Tag) -> Tag | None:
    """Block of alpha.m (module component m, associative component t)."""
    b = _BLOCK[t]
    if b == "pp":
        return m
    if b == "qp" and m is Tag.B:
        return Tag.BPRIME
    if b == "pq" and m is Tag.BPRIME:
        return Tag.B
    return None


def right_action_out(m: Tag, t: Tag) -> Tag | None:
    """Block of m.alpha, defined through the involution: m.alpha = gamma(alpha).m."""
    return left_action_out(t, m)


# stored action cells: the left action on B and the right action on B'
LEFT_ACTION_TAGS = (Tag.APLUS, Tag.AMINUS, Tag.CPRIME, Tag.EPRIME)
RIGHT_ACTION_TAGS = (Tag.APLUS, Tag.AMINUS, Tag.C, Tag.E)


def allowed_keys() -> set[tuple[Tag, Tag, Tag, str]]:
    keys = set()
    for i, t1 in enumerate(B_TAGS):
        for t2 in B_TAGS[i:]:
            r = route(t1, t2)
            if r is not None:
                keys.add((t1, t2, r[0], "circ"))
                keys.add((t1, t2, r[1], "bracket"))
    for t in LEFT_ACTION_TAGS:
        keys.add((t, Tag.B, left_action_out(t, Tag.B), "action"))
    for t in RIGHT_ACTION_TAGS:
        keys.add((Tag.BPRIME, t, right_action_out(Tag.BPRIME, t), "action"))
    for t in B_TAGS:
        keys.add((Tag.D, t, t, "action"))
    for t1, t2 in FORM_PAIRS:
        keys.add((t1, t2, Tag.D, "form"))
    return keys


_ALLOWED = allowed_keys()


# ---------------------------------------------------------------- tensors

def apply(tensor: Tensor, v1, v2, dim_out: int) -> list[Fraction]:
    out = [Fraction(0)] * dim_out
    for (i, j), row in tensor.items():
        a = v1[i]
        if not a:
            continue
        b = v2[j]
        if not b:
            continue
        ab = a * b
        for k, c in row.items():
            out[k] += ab * c
    return out


def tensor_from_triples(triples: Iterable) -> Tensor:
    t: Tensor = {}
    for i, j, k, c in triples:
        c = Fraction(c)
        if c:
            t.setdefault((int(i), int(j)), {})[int(k)] = c
    return t


def tensor_triples(t: Tensor) -> list[tuple[int, int, int, Fraction]]:
    return [(i, j, k, c) for (i, j) in sorted(t) for k, c in sorted(t[(i, j)].items()) if c]


def _basis(dim: int, i: int) -> list[Fraction]:
    v = [Fraction(0)] * dim
    v[i] = Fraction(1)
    return v


# ---------------------------------------------------------------- data

@dataclass
class CoordAlgebraData:
    n: int
    dims: dict[Tag, int]
    unit: list[Fraction]
    products: dict[tuple[Tag, Tag, Tag, str], Tensor] = field(default_factory=dict)
    d_bracket: Tensor = field(default_factory=dict)

    def dim(self, t: Tag) -> int:
        return self.dims.get(t, 0)

    def basis(self, t: Tag, i: int) -> "Element":
        return {t: _basis(self.dim(t), i)}

    def tensor(self, key) -> Tensor:
        return self.products.get(key, {})

    # homogeneous products, applying the extension rule for transposed cells
    def _pair(self, t1: Tag, t2: Tag, v1, v2, kind: str) -> tuple[Tag, list[Fraction]] | None:
        r = route(t1, t2)
        if r is None:
            return None
        out = r[0] if kind == "circ" else r[1]
        if _POS[t1] <= _POS[t2]:
            return out, apply(self.tensor((t1, t2, out, kind)), v1, v2, self.dim(out))
        vals = apply(self.tensor((t2, t1, out, kind)), v2, v1, self.dim(out))
        if kind == "bracket":
            vals = [-x for x in vals]
        return out, vals

    def circ_h(self, t1, t2, v1, v2):
        return self._pair(t1, t2, v1, v2, "circ")

    def bracket_h(self, t1, t2, v1, v2):
        return self._pair(t1, t2, v1, v2, "bracket")

    def left_h(self, t: Tag, m: Tag, va, vm) -> tuple[Tag, list[Fraction]] | None:
        """alpha.m in the algebra b (t an associative tag, m a module tag)."""
        out = left_action_out(t, m)
        if out is None:
            return None
        if m is Tag.B:
            return out, apply(self.tensor((t, Tag.B, out, "action")), va, vm, self.dim(out))
        # alpha b' := b' gamma(alpha)
        vals = apply(self.tensor((Tag.BPRIME, t, out, "action")), vm, va, self.dim(out))
        return out, [sign(t) * x for x in vals]

    def right_h(self, m: Tag, t: Tag, vm, va) -> tuple[Tag, list[Fraction]] | None:
        """m.alpha in the algebra b."""
        out = right_action_out(m, t)
        if out is None:
            return None
        if m is Tag.BPRIME:
            return out, apply(self.tensor((Tag.BPRIME, t, out, "action")), vm, va, self.dim(out))
        # b alpha := gamma(alpha) b
        vals = apply(self.tensor((t, Tag.B, out, "action")), va, vm, self.dim(out))
        return out, [sign(t) * x for x in vals]

    def form_h(self, t1: Tag, t2: Tag, v1, v2) -> list[Fraction] | None:
        dd = self.dim(Tag.D)
        if (t1, t2) in FORM_PAIRS:
            return apply(self.tensor((t1, t2, Tag.D, "form")), v1, v2, dd)
        if (t2, t1) in FORM_PAIRS:
            return [-x for x in apply(self.tensor((t2, t1, Tag.D, "form")), v2, v1, dd)]
        return None

    def d_act(self, t: Tag, vd, v) -> list[Fraction]:
        return apply(self.tensor((Tag.D, t, t, "action")), vd, v, self.dim(t))

    def d_br(self, v1, v2) -> list[Fraction]:
        return apply(self.d_bracket, v1, v2, self.dim(Tag.D))

    def copy(self) -> "CoordAlgebraData":
        return CoordAlgebraData(self.n, dict(self.dims), list(self.unit),
                                {k: {ij: dict(r) for ij, r in t.items()} for k, t in self.products.items()},
                                {ij: dict(r) for ij, r in self.d_bracket.items()})


# ---------------------------------------------------------------- elements

Element = dict  # {Tag: list[Fraction]}


def add_into(acc: Element, t: Tag, vals, data: CoordAlgebraData, scale=1) -> None:
    if not any(vals):
        return
    cur = acc.setdefault(t, [Fraction(0)] * data.dim(t))
    for i, v in enumerate(vals):
        if v:
            cur[i] += scale * v


def clean(x: Element) -> Element:
    return {t: v for t, v in x.items() if any(v)}


def equal(x: Element, y: Element) -> bool:
    return clean(x) == clean(y)


def _require(x: Element, tags, what: str) -> None:
    bad = [t for t, v in x.items() if t not in tags and any(v)]
    if bad:
        raise ValueError(f"{what}: element has support on {[t.value for t in bad]}")


def b_mult(x: Element, y: Element, data: CoordAlgebraData) -> Element:
    """Product in b = A+ + A- + C + E + C' + E' + B + B'."""
    _require(x, B_TAGS, "b_mult")
    _require(y, B_TAGS, "b_mult")
    out: Element = {}
    half = Fraction(1, 2)
    for t1, v1 in x.items():
        if not any(v1):
            continue
        for t2, v2 in y.items():
            if not any(v2):
                continue
            if (t1 in A_TAGS) == (t2 in A_TAGS):
                for kind in ("circ", "bracket"):
                    r = data._pair(t1, t2, v1, v2, kind)
                    if r is not None:
                        add_into(out, r[0], r[1], data, half)
            elif t1 in A_TAGS:
                r = data.left_h(t1, t2, v1, v2)
                if r is not None:
                    add_into(out, r[0], r[1], data)
            else:
                r = data.right_h(t1, t2, v1, v2)
                if r is not None:
                    add_into(out, r[0], r[1], data)
    return clean(out)


def a_mult(x: Element, y: Element, data: CoordAlgebraData) -> Element:
    _require(x, A_TAGS, "a_mult")
    _require(y, A_TAGS, "a_mult")
    return b_mult(x, y, data)


def eta(x: Element) -> Element:
    _require(x, B_TAGS, "eta")
    return clean({t: [sign(t) * c for c in v] for t, v in x.items()})


def gamma(x: Element) -> Element:
    _require(x, A_TAGS, "gamma")
    return eta(x)


def chi(x: Element, y: Element, data: CoordAlgebraData) -> Element:
    """Hermitian form on B + B' with values in the associative part."""
    _require(x, M_TAGS, "chi")
    _require(y, M_TAGS, "chi")
    return b_mult(x, y, data)


def form(x: Element, y: Element, data: CoordAlgebraData) -> list[Fraction]:
    """The D-valued pairing <x, y>, bilinear over homogeneous parts."""
    out = [Fraction(0)] * data.dim(Tag.D)
    for t1, v1 in x.items():
        for t2, v2 in y.items():
            r = data.form_h(t1, t2, v1, v2)
            if r is not None:
                out = [a + b for a, b in zip(out, r)]
    return out


def d_action(vd, x: Element, data: CoordAlgebraData) -> Element:
    return clean({t: data.d_act(t, vd, v) for t, v in x.items()})


def unit_element(data: CoordAlgebraData) -> Element:
    return clean({Tag.APLUS: list(data.unit)})


def scale_el(x: Element, c) -> Element:
    return clean({t: [c * a for a in v] for t, v in x.items()})


def add_el(x: Element, y: Element, c=1) -> Element:
    out = {t: list(v) for t, v in x.items()}
    for t, v in y.items():
        cur = out.setdefault(t, [Fraction(0)] * len(v))
        out[t] = [a + c * b for a, b in zip(cur, v)]
    return clean(out)


def basis_elements(data: CoordAlgebraData, tags) -> list[tuple[tuple, Element]]:
    return [((t.value, i), data.basis(t, i)) for t in tags for i in range(data.dim(t))]


# ---------------------------------------------------------------- validation

def validate(data: CoordAlgebraData) -> VerificationReport:
    rep = VerificationReport("validate")
    shape = rep.add(VerificationReport("shapes"))
    for t, d in data.dims.items():
        shape.checked_count += 1
        if d < 0:
            shape.fail(("dim", t.value), d, ">= 0")
    shape.checked_count += 1
    if len(data.unit) != data.dim(Tag.APLUS):
        shape.fail(("unit",), len(data.unit), data.dim(Tag.APLUS))
    for key, ten in data.products.items():
        shape.checked_count += 1
        if key not in _ALLOWED:
            shape.fail(tuple(k.value if isinstance(k, Tag) else k for k in key), "cell", "not a product cell")
            continue
        l, r, o, _ = key
        for (i, j), row in ten.items():
            if not (0 <= i < data.dim(l) and 0 <= j < data.dim(r)) or any(
                    not 0 <= k < data.dim(o) for k in row):
                shape.fail((l.value, r.value, o.value, i, j), "index", "out of range")
    if not shape.passed:
        return rep

    sym = rep.add(VerificationReport("symmetry"))
    for (l, r, o, kind), ten in sorted(data.products.items(), key=lambda kv: str(kv[0])):
        skew = kind == "bracket" or kind == "form"
        if l is not r or kind not in ("circ", "bracket", "form"):
            continue
        for (i, j), row in ten.items():
            other = ten.get((j, i), {})
            for k in set(row) | set(other):
                a, b = row.get(k, 0), other.get(k, 0)
                sym.checked_count += 1
                if (a != -b) if skew else (a != b):
                    sym.fail((l.value, r.value, o.value, kind, i, j, k), a, b)
    for (i, j), row in data.d_bracket.items():
        other = data.d_bracket.get((j, i), {})
        for k in set(row) | set(other):
            sym.checked_count += 1
            if row.get(k, 0) != -other.get(k, 0):
                sym.fail(("D", "D", "D", "bracket", i, j, k), row.get(k, 0), other.get(k, 0))

    rep.add(check_unit(data))
    return rep


def check_unit(data: CoordAlgebraData) -> VerificationReport:
    rep = VerificationReport("Unit")
    one = unit_element(data)
    for name, x in basis_elements(data, B_TAGS):
        rep.checked_count += 1
        left, right = b_mult(one, x, data), b_mult(x, one, data)
        if not equal(left, x):
            rep.fail(("1+ *", name), left, x)
        if not equal(right, x):
            rep.fail((name, "* 1+"), right, x)
    return rep


# ---------------------------------------------------------------- split of A

@dataclass
class AssocAlgebra:
    """An associative algebra given by the structure constants of its product."""
    dim: int
    mult: Tensor
    unit: list[Fraction]
    form: Tensor = field(default_factory=dict)  # skew form into D
    d_dim: int = 0

    def product(self, x, y) -> list[Fraction]:
        return apply(self.mult, x, y, self.dim)


def split_A(alg: AssocAlgebra, n: int) -> CoordAlgebraData:
    """Doubled data on A+ + A- from a single algebra A.

    a+ b+ and a- b- give (a∘b)+ and [a,b]-; mixed parities give (a∘b)- and [a,b]+.
    The form <a+, b+> = <a-, b-> = <a, b>, and <A+, A-> = 0.
    """
    d = alg.dim
    circ: Tensor = {}
    br: Tensor = {}
    for i in range(d):
        for j in range(d):
            ab = alg.product(_basis(d, i), _basis(d, j))
            ba = alg.product(_basis(d, j), _basis(d, i))
            c = {k: ab[k] + ba[k] for k in range(d) if ab[k] + ba[k]}
            b = {k: ab[k] - ba[k] for k in range(d) if ab[k] - ba[k]}
            if c:
                circ[(i, j)] = c
            if b:
                br[(i, j)] = b
    P, M = Tag.APLUS, Tag.AMINUS
    prods = {
        (P, P, P, "circ"): circ, (P, P, M, "bracket"): br,
        (M, M, P, "circ"): circ, (M, M, M, "bracket"): br,
        (P, M, M, "circ"): circ, (P, M, P, "bracket"): br,
    }
    form, d_dim, d_bracket = alg.form, alg.d_dim, {}
    if not form and not d_dim:
        form, d_dim, d_bracket, act = _commutator_D(alg, br)
        prods[(Tag.D, P, P, "action")] = act
        prods[(Tag.D, M, M, "action")] = act
    if form:
        prods[(P, P, Tag.D, "form")] = form
        prods[(M, M, Tag.D, "form")] = form
    dims = {t: 0 for t in TAG_ORDER}
    dims[P] = dims[M] = d
    dims[Tag.D] = d_dim
    return CoordAlgebraData(n, dims, list(alg.unit), {k: v for k, v in prods.items() if v}, d_bracket)


def _commutator_D(alg: AssocAlgebra, br: Tensor):
    """D = [A, A] inside A: <a, b> = ab - ba, D acting on A by commutators."""
    d = alg.dim
    sp = span([apply(br, _basis(d, i), _basis(d, j), d) for i in range(d) for j in range(d)], d)
    cs = sp.basis()
    dd = len(cs)

    def coords(v):
        return {k: c for k, c in enumerate(sp.coordinates(v)) if c}

    form = {}
    for i in range(d):
        for j in range(d):
            row = coords(apply(br, _basis(d, i), _basis(d, j), d))
            if row:
                form[(i, j)] = row
    act, dbr = {}, {}
    for s, c in enumerate(cs):
        for i in range(d):
            v = apply(br, c, _basis(d, i), d)
            if any(v):
                act[(s, i)] = {k: x for k, x in enumerate(v) if x}
        for t, c2 in enumerate(cs):
            row = coords(apply(br, c, c2, d))
            if row:
                dbr[(s, t)] = row
    return form, dd, dbr, act


def matrix_algebra(m: int) -> AssocAlgebra:
    """Full matrix algebra M_m over the rationals; basis E_ij in lexicographic order."""
    d = m * m
    mult: Tensor = {}
    for i in range(m):
        for j in range(m):
            for k in range(m):
                mult[(i * m + j, j * m + k)] = {i * m + k: Fraction(1)}
    unit = [Fraction(int(i == j)) for i in range(m) for j in range(m)]
    return AssocAlgebra(d, mult, unit)


def dual_numbers() -> AssocAlgebra:
    """Q[eps]/(eps^2) with basis 1, eps."""
    mult = {(0, 0): {0: Fraction(1)}, (0, 1): {1: Fraction(1)}, (1, 0): {1: Fraction(1)}}
    return AssocAlgebra(2, mult, [Fraction(1), Fraction(0)])


def rationals() -> AssocAlgebra:
    return AssocAlgebra(1, {(0, 0): {0: Fraction(1)}}, [Fraction(1)])


# ---------------------------------------------------------------- JSON

COORD_SCHEMA = "gradedlie/coord-algebra/1"


def to_json(data: CoordAlgebraData) -> dict:
    from .serialize import triples_out, vector_out
    prods = []
    for key in sorted(data.products, key=lambda k: (_POS[k[0]], _POS[k[1]], _POS[k[2]], k[3])):
        t = data.products[key]
        if not t:
            continue
        l, r, o, kind = key
        prods.append({"left": l.value, "right": r.value, "out": o.value, "kind": kind,
                      "tensor": triples_out(t)})
    return {"schema": COORD_SCHEMA, "n": data.n,
            "dims": {t.value: data.dim(t) for t in TAG_ORDER},
            "unit": vector_out(data.unit), "products": prods,
            "d_bracket": triples_out(data.d_bracket)}


def from_json(doc) -> CoordAlgebraData:
    from .serialize import SchemaError, require, triples_in, vector_in
    require(doc, COORD_SCHEMA, ("n", "dims", "unit", "products", "d_bracket"))
    if not isinstance(doc["n"], int) or not isinstance(doc["dims"], dict):
        raise SchemaError("n must be an int and dims an object")
    try:
        dims = {Tag.from_str(k): v for k, v in doc["dims"].items()}
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc
    if not all(isinstance(v, int) and v >= 0 for v in dims.values()):
        raise SchemaError("dims must be non-negative ints")
    for t in TAG_ORDER:
        dims.setdefault(t, 0)
    prods = {}
    if not isinstance(doc["products"], list):
        raise SchemaError("products must be a list")
    for p in doc["products"]:
        if not isinstance(p, dict) or not {"left", "right", "out", "kind", "tensor"} <= set(p):
            raise SchemaError(f"bad product entry {p!r}")
        try:
            key = (Tag.from_str(p["left"]), Tag.from_str(p["right"]), Tag.from_str(p["out"]), p["kind"])
        except ValueError as exc:
            raise SchemaError(str(exc)) from exc
        if key not in _ALLOWED:
            raise SchemaError(f"{p['left']} x {p['right']} -> {p['out']} ({p['kind']}) is not a product cell")
        if key in prods:
            raise SchemaError(f"duplicate product cell {key}")
        prods[key] = triples_in(p["tensor"])
    return CoordAlgebraData(doc["n"], dims, vector_in(doc["unit"]), prods, triples_in(doc["d_bracket"]))
