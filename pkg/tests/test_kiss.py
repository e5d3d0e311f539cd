import pytest
from hypothesis import given

from igmm.kiss import ParseError, detect_format, parse, parse_kiss2, parse_xkiss, write_kiss2, write_xkiss
from igmm.machine import isomorphic, restrict_to_first_cubes
from igmm.samples import controller, pairwise_gadget, seven_state

from conftest import machines

FIG1 = """\
.i 2
.o 2
.ilb a b
.ob x y
.s 3
.r s0
11 s0 s1 1-
10 s0 s1 01
00 s0 s2 00
00 s1 s0 -0
11 s1 s0 10
00 s2 s2 00
.e
"""


def test_parse_named_kiss2():
    m = parse_kiss2(FIG1)
    assert m.names == ("s0", "s1", "s2")
    assert m.inputs.names == ("a", "b")
    assert isomorphic(m, type(m)(m.inputs, m.outputs, controller().table, 0, m.names))


def test_defaults_without_labels_and_reset():
    m = parse("# comment\n.i 1\n.o 1\n.p 2\n1 b a 1\n0 a b 0 # trailing\n.end\n")
    assert m.names == ("b", "a") and m.init == 0
    assert m.inputs.names == ("i0",) and m.outputs.names == ("o0",)


def test_xkiss_union_and_duplicate_lines():
    text = ".i 1\n.o 2\n1 s s 00|11\n1 s s 01\n"
    assert detect_format(text) == "xkiss"
    m = parse(text)
    assert sorted(m.output(0, 1)) == [0, 2, 3]
    with pytest.raises(ParseError):
        parse_kiss2(text)


def test_duplicate_lines_union_outputs():
    m = parse_xkiss(".i 1\n.o 1\n1 s s 0\n- s s 1\n")
    assert m.output(0, 1).is_full()
    assert list(m.output(0, 0)) == [1]


@pytest.mark.parametrize("text, line, col", [
    (".i 1\n.o 1\n1 s s 2\n", 3, 7),
    (".i 1\n.o 1\n11 s s 1\n", 3, 1),
    (".i 1\n.o 1\n1 s t 1\n1 s u 1\n", 4, 5),
    (".i 1\n.o 1\n1 s\n", 3, 1),
    (".i 1\n.o 1\n.foo\n", 3, 1),
    (".i x\n.o 1\n", 1, 4),
    (".i 1\n.o 1\n1 * s 1\n", 3, 3),
    (".i 1\n.o 1\n.s 1\n1 s t 1\n", 1, 1),
    (".i 1\n.o 1\n1 s s 1\n.e\n1 s s 1\n", 5, 1),
    (".o 1\n1 s s 1\n", 1, 1),
])
def test_parse_errors_have_positions(text, line, col):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert (info.value.line, info.value.col) == (line, col)
    assert str(info.value).startswith(f"line {line}, col {col}:")


def test_proposition_cap():
    with pytest.raises(ParseError):
        parse(".i 3\n.o 1\n111 s s 1\n", max_props=2)


def test_state_count_padding():
    m = parse(".i 1\n.o 1\n.s 3\n1 s s 1\n")
    assert m.n_states == 3
    assert m.table[1] == (None, None)


def test_write_kiss2_rejects_unions():
    with pytest.raises(ValueError):
        write_kiss2(pairwise_gadget())
    write_kiss2(restrict_to_first_cubes(pairwise_gadget()))


@pytest.mark.parametrize("make", [controller, seven_state, pairwise_gadget])
def test_fixture_round_trip(make):
    m = make()
    assert isomorphic(parse(write_xkiss(m)), m)
    cubes = restrict_to_first_cubes(m)
    assert isomorphic(parse_kiss2(write_kiss2(cubes)), cubes)


@given(machines(max_states=6, max_out=3))
def test_round_trip_random(m):
    once = parse(write_xkiss(m))
    assert isomorphic(once, m)
    assert isomorphic(parse(write_xkiss(once)), once)
