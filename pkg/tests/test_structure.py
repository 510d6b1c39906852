from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from gradedlie.extractor import sl_presentation
from gradedlie.structure import (LieStructure, check_anticommutativity, check_jacobi,
                                 jacobi_triple_ok, structure_in, structure_out)
from gradedlie.serialize import SchemaError

SL3 = sl_presentation(2).struct
coef = st.integers(-3, 3).map(Fraction)


def heisenberg(c):
    return LieStructure.from_upper(3, {(0, 1): {2: c}}, ["x", "y", "z"])


def test_from_upper_fills_both_orders():
    s = heisenberg(2)
    assert s.basis_bracket(0, 1) == {2: 2}
    assert s.basis_bracket(1, 0) == {2: -2}
    assert check_anticommutativity(s).passed


def test_from_upper_rejects_diagonal_and_duplicates():
    with pytest.raises(ValueError):
        LieStructure.from_upper(2, {(1, 1): {0: 1}})
    with pytest.raises(ValueError):
        LieStructure.from_upper(2, {(0, 1): {0: 1}, (1, 0): {0: 1}})


@given(st.lists(coef, min_size=8, max_size=8), st.lists(coef, min_size=8, max_size=8),
       st.lists(coef, min_size=8, max_size=8))
@settings(max_examples=40)
def test_bracket_is_bilinear_and_alternating(u, v, w):
    assert SL3.bracket(u, u) == [0] * 8
    assert SL3.bracket(u, v) == [-x for x in SL3.bracket(v, u)]
    uv = [a + b for a, b in zip(u, v)]
    assert SL3.bracket(uv, w) == [a + b for a, b in zip(SL3.bracket(u, w), SL3.bracket(v, w))]


def test_ad_columns_are_brackets():
    x = SL3.unit(0)
    ad = SL3.ad(x)
    for j in range(8):
        assert [row[j] for row in ad] == SL3.bracket(x, SL3.unit(j))


def test_jacobi_full_on_sl():
    rep = check_jacobi(sl_presentation(4).struct)
    assert rep.passed
    assert rep.checked_count == 24 ** 3


@pytest.mark.parametrize("c", [1, 10 ** 8, 10 ** 15])
def test_jacobi_exact_for_every_entry_size(c):
    # float64, int64 and Python-integer paths
    assert check_jacobi(heisenberg(c)).passed
    # with a fourth element w, [z, w] = x gives [y, [z, w]] = -c z but zero on the right
    four = LieStructure.from_upper(4, {(0, 1): {2: c}, (2, 3): {0: 1}})
    rep = check_jacobi(four)
    assert not rep.passed
    assert not jacobi_triple_ok(four, *(int(t) for t in rep.first_failure.witness))


def test_jacobi_large_entries_are_noted():
    assert any("Python integers" in n for n in check_jacobi(heisenberg(10 ** 15)).notes)


def test_perturbation_gives_named_witness():
    bad = SL3.perturbed(0, 1, 3, Fraction(1, 2))
    rep = check_jacobi(bad)
    assert not rep.passed
    x, y, z = rep.first_failure.witness
    assert all(isinstance(t, str) for t in (x, y, z))
    assert not jacobi_triple_ok(bad, *(SL3.names.index(t) for t in (x, y, z)))


def test_perturbed_leaves_original_alone():
    before = dict(SL3.table)
    SL3.perturbed(0, 1, 3, 1)
    assert SL3.table == before


def test_sampled_mode_is_seeded():
    bad = sl_presentation(4).struct.perturbed(2, 9, 5, 1)
    a = check_jacobi(bad, "sampled", count=300, seed=7)
    b = check_jacobi(bad, "sampled", count=300, seed=7)
    assert a.to_dict() == b.to_dict()
    assert check_jacobi(bad, "sampled", count=0, anchors=[2]).passed is False


def test_unknown_mode():
    with pytest.raises(ValueError):
        check_jacobi(SL3, "some")


def test_json_round_trip_and_validation():
    raw = structure_out(SL3)
    assert structure_in(raw, 8).table == SL3.table
    with pytest.raises(SchemaError):
        structure_in([[1, 0, 2, "1/1"]], 8)
    with pytest.raises(SchemaError):
        structure_in([[0, 1, 9, "1/1"]], 8)
