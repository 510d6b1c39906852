from fractions import Fraction

import pytest

from gradedlie import coordalg as ca
from gradedlie.coordalg import TAG_ORDER, b_mult, dual_numbers, matrix_algebra, rationals, split_A
from gradedlie.lawcheck import (LawId, check_all, check_Atilde_iso, check_bimodule, check_D_span,
                                check_derivation_rule)
from fixtures_cache import KINDS, coord

AP, AM, C, E, C_, E_, B, B_, D = TAG_ORDER


def failed_laws(rep):
    return {r.law for r in rep.failures()}


@pytest.mark.parametrize("alg", [rationals(), dual_numbers(), matrix_algebra(2)], ids=["Q", "Q[eps]", "M2"])
def test_split_algebras_satisfy_every_law(alg):
    rep = check_all(split_A(alg, 4), alg)
    assert rep.passed, rep.lines()
    assert {r.law for r in rep.sub[1:]} == {x.value for x in LawId}


@pytest.mark.parametrize("kind", KINDS)
def test_fixture_data_satisfies_every_law(kind):
    assert check_all(coord(kind)).passed


def test_vacuous_laws_are_noted():
    rep = check_all(split_A(rationals(), 4))
    bim = next(r for r in rep.sub if r.law == "BimoduleAssoc")
    assert bim.checked_count == 0
    assert bim.notes and bim.notes[0].startswith("vacuous")


def test_law_subset():
    rep = check_all(coord("sp"), laws=["AssocA", "Unit"])
    assert [r.law for r in rep.sub] == ["validate", "AssocA", "Unit"]
    with pytest.raises(ValueError):
        check_all(coord("sp"), laws=["NoSuchLaw"])


def test_corrupted_symmetric_product_breaks_associativity():
    data = split_A(matrix_algebra(2), 4)
    key = (AP, AP, AP, "circ")
    # keep the tensor symmetric so validation still passes
    data.products[key][(1, 2)] = {0: Fraction(3)}
    data.products[key][(2, 1)] = {0: Fraction(3)}
    rep = check_all(data)
    assert rep.sub[0].passed
    assert "AssocA" in failed_laws(rep)
    assert check_Atilde_iso(data, matrix_algebra(2)).first_failure is not None


def test_corrupted_c_cprime_cell_is_detected():
    data = coord("sp").copy()
    key = (C, C_, AP, "circ")
    data.products[key] = {ij: {k: 2 * v for k, v in row.items()} for ij, row in data.products[key].items()}
    rep = check_all(data)
    assert not rep.passed
    first = rep.failures()[0]
    assert first.first_failure.witness


def test_corrupted_D_action_is_detected():
    data = coord("so-odd").copy()
    key = (D, B, B, "action")
    data.products[key] = {ij: {k: v + 1 for k, v in row.items()} for ij, row in data.products[key].items()}
    assert {"DDerivations", "DerivationRuleBB"} & failed_laws(check_all(data))


def test_scaled_module_form_breaks_the_derivation_rule():
    # the (n+1) factor in the B x B' case only balances with the right form scale
    data = coord("so-odd").copy()
    key = (B, B_, D, "form")
    data.products[key] = {ij: {k: 2 * v for k, v in row.items()} for ij, row in data.products[key].items()}
    bb = check_derivation_rule(data)[0]
    assert bb.law == "DerivationRuleBB" and not bb.passed
    assert check_derivation_rule(coord("so-odd"))[0].checked_count > 0


def test_missing_D_breaks_the_derivation_rule():
    # sl(n+1) over M2 needs D = [A, A]; without it the commutator action has nothing to come from
    data = split_A(matrix_algebra(2), 4)
    data.dims[D] = 0
    data.products = {k: v for k, v in data.products.items() if D not in k}
    data.d_bracket = {}
    assert "DerivationRuleOther" in failed_laws(check_all(data))


def test_D_span_fails_for_a_spare_central_summand():
    data = split_A(rationals(), 4)
    data.dims[D] = 1
    rep = check_D_span(data)
    assert rep.first_failure.witness == ("rank of form images",)


def test_mixed_bimodule_law_is_not_implied():
    # the right action is defined through gamma, so (a m) a' = a (m a') can fail
    data = coord("so-odd")
    assert check_bimodule(data).passed
    x, m, y = data.basis(AM, 0), data.basis(B_, 0), data.basis(E, 0)
    lhs = b_mult(b_mult(x, m, data), y, data)
    rhs = b_mult(x, b_mult(m, y, data), data)
    assert not ca.equal(lhs, rhs)
    assert ca.equal(lhs, ca.scale_el(rhs, -1))


def test_first_failure_is_reproducible():
    data = split_A(matrix_algebra(2), 4)
    data.products[(AP, AP, AP, "circ")][(3, 3)] = {0: Fraction(7)}
    a, b = check_all(data).to_dict(), check_all(data).to_dict()
    assert a == b
