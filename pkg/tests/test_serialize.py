from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from gradedlie.serialize import (SchemaError, dumps, frac_str, loads, parse_frac, require,
                                 sparse_vec_in, sparse_vec_out, triples_in, triples_out, write_atomic)

fractions = st.fractions(max_denominator=10 ** 6).map(Fraction)


@given(fractions)
def test_fraction_string_round_trip(x):
    s = frac_str(x)
    assert "/" in s
    assert parse_frac(s) == x


@pytest.mark.parametrize("bad", ["1/0", "x", 1.5, None, True, [1]])
def test_bad_rationals_rejected(bad):
    with pytest.raises(SchemaError):
        parse_frac(bad)


@given(st.dictionaries(st.tuples(st.integers(0, 5), st.integers(0, 5)),
                       st.dictionaries(st.integers(0, 5), fractions.filter(bool), min_size=1)))
def test_triples_round_trip(t):
    assert triples_in(loads(dumps({"t": triples_out(t)}))["t"]) == t


@given(st.lists(fractions, max_size=8))
def test_sparse_vector_round_trip(v):
    assert sparse_vec_in(sparse_vec_out(v), len(v)) == v


def test_triples_reject_malformed():
    for raw in [{"a": 1}, [[0, 1, "1/1"]], [[0, 1, -2, "1/1"]], [["0", 1, 2, "1/1"]]]:
        with pytest.raises(SchemaError):
            triples_in(raw)
    with pytest.raises(SchemaError):
        sparse_vec_in([[3, "1/1"]], 2)


def test_dumps_is_canonical():
    a = dumps({"b": 1, "a": [1, 2]})
    assert a == dumps({"a": [1, 2], "b": 1}) == '{"a":[1,2],"b":1}\n'


def test_require_checks_schema_and_keys():
    with pytest.raises(SchemaError, match="schema"):
        require({"schema": "other"}, "mine", ())
    with pytest.raises(SchemaError, match="missing"):
        require({"schema": "mine"}, "mine", ("n",))
    with pytest.raises(SchemaError):
        require([], "mine", ())
    with pytest.raises(SchemaError):
        loads("{not json")


def test_write_atomic_replaces_whole_file(tmp_path):
    p = tmp_path / "out.json"
    p.write_text("old contents that are longer")
    write_atomic(str(p), "new\n")
    assert p.read_text() == "new\n"
    assert [f.name for f in tmp_path.iterdir()] == ["out.json"]
