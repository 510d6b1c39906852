from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from gradedlie import coordalg as ca
from gradedlie.coordalg import (A_TAGS, B_TAGS, M_TAGS, TAG_ORDER, Tag, a_mult, add_el, b_mult, dual_numbers,
                                eta, gamma, left_action_out, matrix_algebra, rationals, right_action_out,
                                route, scale_el, sign, split_A, unit_element, validate)
from gradedlie.serialize import SchemaError, dumps
from fixtures_cache import coord

AP, AM, C, E, C_, E_, B, B_, D = TAG_ORDER

# product table of the associative part as printed: (symmetric output, skew output)
TABLE4 = {
    AP: {AP: (AP, AM), AM: (AM, AP), C: (C, E), E: (E, C), C_: (C_, E_), E_: (E_, C_)},
    AM: {AP: (AM, AP), AM: (AP, AM), C: (E, C), E: (C, E), C_: (E_, C_), E_: (C_, E_)},
    C: {AP: (C, E), AM: (E, C), C: None, E: None, C_: (AP, AM), E_: (AM, AP)},
    E: {AP: (E, C), AM: (C, E), C: None, E: None, C_: (AM, AP), E_: (AP, AM)},
    C_: {AP: (C_, E_), AM: (E_, C_), C: (AP, AM), E: (AM, AP), C_: None, E_: None},
    E_: {AP: (E_, C_), AM: (C_, E_), C: (AM, AP), E: (AP, AM), C_: None, E_: None},
}
# the printed cells A+ x C' and C' x A+ give E as the skew output; the block grading
# forces E' there (a qp block times a pp block stays qp), so the table above is corrected

# module rows of the b product table, by block: (left factor, right factor) -> output
TABLE5_MODULE = {
    (B, B): {E, C}, (B, B_): {AP, AM}, (B_, B): {AP, AM}, (B_, B_): {E_, C_},
}
TABLE5_ACTIONS = {
    # left factor associative
    (AP, B): B, (AM, B): B, (C, B): None, (E, B): None, (C_, B): B_, (E_, B): B_,
    (AP, B_): B_, (AM, B_): B_, (C, B_): B, (E, B_): B, (C_, B_): None, (E_, B_): None,
    # left factor a module element
    (B, AP): B, (B, AM): B, (B, C): None, (B, E): None, (B, C_): B_, (B, E_): B_,
    (B_, AP): B_, (B_, AM): B_, (B_, C): B, (B_, E): B, (B_, C_): None, (B_, E_): None,
}


def test_signs():
    assert [sign(t) for t in B_TAGS] == [1, -1, -1, 1, -1, 1, 1, 1]


@pytest.mark.parametrize("t1", A_TAGS)
def test_routing_matches_product_table(t1):
    for t2 in A_TAGS:
        assert route(t1, t2) == TABLE4[t1][t2], (t1, t2)


def test_module_products():
    for (t1, t2), outs in TABLE5_MODULE.items():
        assert set(route(t1, t2)) == outs
    for (t1, t2), out in TABLE5_ACTIONS.items():
        got = left_action_out(t1, t2) if t1 in A_TAGS else right_action_out(t1, t2)
        assert got == out, (t1, t2)
    assert route(AP, B) is None and route(D, AP) is None


def test_allowed_keys_cover_each_stored_cell_once():
    keys = ca.allowed_keys()
    # 21 unordered associative pairs minus the 6 zero cells, plus 3 module pairs; two kinds each
    assert sum(k[3] in ("circ", "bracket") for k in keys) == 2 * (21 - 6 + 3)
    assert sum(k[3] == "form" for k in keys) == 5
    assert sum(k[3] == "action" for k in keys) == 8 + 8


@pytest.mark.parametrize("alg,d_dim", [(rationals(), 0), (dual_numbers(), 0), (matrix_algebra(2), 3)])
def test_split_A_shapes(alg, d_dim):
    data = split_A(alg, 4)
    assert data.dim(AP) == data.dim(AM) == alg.dim
    assert data.dim(D) == d_dim
    assert validate(data).passed


def test_split_A_recovers_matrix_product():
    data = split_A(matrix_algebra(2), 4)
    # with a+ = a, a product of two plus elements is (1/2)(a o b)+ + (1/2)[a, b]-
    e12 = data.basis(AP, 1)
    e21 = data.basis(AP, 2)
    prod = b_mult(e12, e21, data)
    e11_e22 = [Fraction(1), 0, 0, Fraction(1)]
    assert prod == {AP: [Fraction(1, 2) * x for x in e11_e22], AM: [Fraction(1, 2), 0, 0, Fraction(-1, 2)]}


def rand_element(data, tags):
    return st.fixed_dictionaries({t: st.lists(st.integers(-3, 3).map(Fraction), min_size=data.dim(t),
                                              max_size=data.dim(t)) for t in tags if data.dim(t)}).map(ca.clean)


SO_ODD = coord("so-odd")
M2 = split_A(matrix_algebra(2), 4)


@given(rand_element(SO_ODD, B_TAGS))
def test_eta_is_an_involution(x):
    assert eta(eta(x)) == x


@given(rand_element(M2, A_TAGS))
def test_gamma_is_an_involution(x):
    assert gamma(gamma(x)) == x


@given(rand_element(SO_ODD, B_TAGS), rand_element(SO_ODD, B_TAGS), rand_element(SO_ODD, B_TAGS),
       st.integers(-4, 4))
@settings(max_examples=40)
def test_b_mult_is_bilinear(x, y, z, c):
    lhs = b_mult(add_el(x, y, c), z, SO_ODD)
    rhs = add_el(b_mult(x, z, SO_ODD), b_mult(y, z, SO_ODD), c)
    assert ca.equal(lhs, rhs)
    lhs = b_mult(z, scale_el(x, c), SO_ODD)
    assert ca.equal(lhs, scale_el(b_mult(z, x, SO_ODD), c))


@given(rand_element(M2, A_TAGS), rand_element(M2, A_TAGS), rand_element(M2, A_TAGS))
@settings(max_examples=30)
def test_split_matrix_algebra_is_associative(x, y, z):
    assert ca.equal(a_mult(a_mult(x, y, M2), z, M2), a_mult(x, a_mult(y, z, M2), M2))


@given(rand_element(SO_ODD, A_TAGS), rand_element(SO_ODD, A_TAGS))
@settings(max_examples=30)
def test_gamma_reverses_products(x, y):
    assert ca.equal(gamma(a_mult(x, y, SO_ODD)), a_mult(gamma(y), gamma(x), SO_ODD))


def test_unit_element():
    for data in (SO_ODD, M2):
        one = unit_element(data)
        assert ca.check_unit(data).passed
        assert b_mult(one, one, data) == one


def test_wrong_parts_rejected():
    with pytest.raises(ValueError):
        a_mult({B: [1]}, {AP: [1]}, SO_ODD)
    with pytest.raises(ValueError):
        gamma({B: [1]})


@pytest.mark.parametrize("kind", ["sp", "so-odd", "current-dual"])
def test_json_round_trip(kind):
    data = coord(kind)
    doc = ca.to_json(data)
    back = ca.from_json(doc)
    assert dumps(ca.to_json(back)) == dumps(doc)
    assert back.dims == data.dims


def test_json_rejects_bad_documents():
    doc = ca.to_json(SO_ODD)
    with pytest.raises(SchemaError):
        ca.from_json({**doc, "schema": "gradedlie/coord-algebra/0"})
    bad = dict(doc, products=doc["products"] + [{"left": "C", "right": "C", "out": "A+", "kind": "circ",
                                                   "tensor": []}])
    with pytest.raises(SchemaError, match="not a product cell"):
        ca.from_json(bad)
    bad = dict(doc, products=[{"left": "A+", "right": "A+", "out": "A+", "kind": "circ",
                               "tensor": [[0, 0, 0, "one"]]}])
    with pytest.raises(SchemaError):
        ca.from_json(bad)


def test_validate_flags_asymmetric_circ_tensor():
    data = M2.copy()
    key = (AP, AP, AP, "circ")
    data.products[key][(0, 1)] = {1: Fraction(5)}
    rep = validate(data)
    assert not rep.passed
    assert rep.failures()[0].law == "symmetry"


def test_validate_flags_out_of_range_index():
    data = M2.copy()
    data.products[(AP, AP, AP, "circ")][(0, 9)] = {0: Fraction(1)}
    rep = validate(data)
    assert rep.failures()[0].law == "shapes"


def test_validate_flags_broken_unit():
    data = M2.copy()
    data.unit = [Fraction(1), 0, 0, 0]
    assert validate(data).failures()[0].law == "Unit"
