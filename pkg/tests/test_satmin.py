import pytest
from hypothesis import given

from igmm.machine import reachable_prune
from igmm.relations import partial_solution, variation_matrix
from igmm.sat import parse_dimacs
from igmm.satmin import (FALSE, TRUE, MinimizeOptions, build_machine, check_nonemptiness,
                         class_system, encode_cover_closure, minimize, neg, out, simplify, succ)
from igmm.samples import Z, NZ, controller, pairwise_gadget, seven_state
from igmm.verify import brute_force_min_size, is_specialization, random_igmm

from conftest import machines


def test_constant_simplification():
    assert simplify([1, FALSE, 2]) == [1, 2]
    assert simplify([1, TRUE]) is None
    assert simplify([FALSE]) == []
    assert neg(TRUE) is FALSE and neg(3) == -3


def test_succ_and_out():
    m = seven_state()
    assert succ(m, [1, 3, 6], 0) == {3, 6}
    assert out(m, [1, 3, 6], 0) == Z
    assert out(m, [1, 3, 6], 1) == NZ


def test_seven_state_minimum():
    m, rep = minimize(seven_state())
    assert m.n_states == 3
    assert rep.partial_size == 3 and rep.n_tried == [3]
    assert rep.classes == (frozenset({0}), frozenset({1, 3, 6}), frozenset({2, 4, 5}))
    c1 = 1
    assert m.output(c1, 1) == NZ and m.output(c1, 0) == Z
    assert is_specialization(m, seven_state())


def test_controller_minimum():
    m, rep = minimize(controller())
    assert m.n_states == 1 and rep.status == "ok"
    assert [m.table[0][i] and sorted(m.output(0, i)) for i in range(4)] == [[0], [2], None, [1]]


def test_gadget_needs_refinement():
    m, rep = minimize(pairwise_gadget(), MinimizeOptions(keep_unreachable=True))
    assert m.n_states == 2
    assert rep.cegar_rounds >= 1 and rep.rounds_per_n[1] >= 1
    eager, rep2 = minimize(pairwise_gadget(), MinimizeOptions(keep_unreachable=True, eager=True))
    assert eager.n_states == 2 and rep2.cegar_rounds == 0


def test_build_machine_checks_conditions():
    m = pairwise_gadget()
    with pytest.raises(ValueError):
        build_machine(m, class_system(m, [[0, 1, 2]]))
    with pytest.raises(ValueError):
        build_machine(m, class_system(m, [[0, 1]]))  # 2 uncovered
    cs = class_system(m, [[0, 1, 2]])
    assert check_nonemptiness(m, cs) == [(0, 1)]


def test_encoding_rejects_small_n():
    m = seven_state()
    vm = variation_matrix(m)
    with pytest.raises(ValueError):
        encode_cover_closure(m, vm, partial_solution(vm), 2)


def test_seeding_shrinks_encoding():
    m = seven_state()
    vm = variation_matrix(m)
    seeded = encode_cover_closure(m, vm, partial_solution(vm), 3)
    plain = encode_cover_closure(m, vm, (), 3)
    assert seeded.n_vars < plain.n_vars and seeded.n_clauses < plain.n_clauses


def test_dimacs_dump(tmp_path):
    minimize(seven_state(), MinimizeOptions(dimacs_dump=tmp_path))
    n_vars, clauses = parse_dimacs((tmp_path / "n3_r0.cnf").read_text())
    varmap = (tmp_path / "n3_r0.varmap").read_text().splitlines()
    assert len(varmap) == n_vars and clauses
    assert varmap[0].split()[0] == "1"


def test_timeout_returns_input():
    m, rep = minimize(seven_state(), MinimizeOptions(timeout_s=0))
    assert rep.status == "timeout" and m.n_states == 7


def test_max_props():
    with pytest.raises(ValueError):
        minimize(seven_state(), MinimizeOptions(max_props=2))


def test_single_state_machine():
    m = pairwise_gadget()
    res, rep = minimize(m)
    assert res.n_states == 1 and rep.n_tried == []


@given(machines(max_states=5))
def test_minimum_matches_brute_force(m):
    res, rep = minimize(m)
    assert res.n_states == brute_force_min_size(reachable_prune(m)[0])
    assert is_specialization(res, m)
    assert rep.partial_size <= res.n_states


@given(machines(max_states=5))
def test_all_encodings_agree(m):
    a = minimize(m, MinimizeOptions(keep_unreachable=True))[0]
    b = minimize(m, MinimizeOptions(keep_unreachable=True, eager=True))[0]
    c = minimize(m, MinimizeOptions(keep_unreachable=True, seeded=False))[0]
    d = minimize(m, MinimizeOptions(keep_unreachable=True, symmetry_breaking=False))[0]
    assert a.n_states == b.n_states == c.n_states == d.n_states == brute_force_min_size(m)


@given(machines(max_states=5))
def test_class_outputs_are_nonempty(m):
    res, _ = minimize(m)
    for row in res.table:
        for e in row:
            assert e is None or not e.out.is_empty()


def test_symmetry_breaking_orders_free_classes():
    m = seven_state()
    vm = variation_matrix(m)
    free = encode_cover_closure(m, vm, (), 3, symmetry_breaking=False)
    ordered = encode_cover_closure(m, vm, (), 3)
    assert ordered.n_clauses > free.n_clauses
    pinned = encode_cover_closure(m, vm, partial_solution(vm), 3)
    assert not any(k[0] == "lex" for k in pinned.index)


def test_overlapping_classes_need_their_own_cube_choice():
    # an instance where a state must agree with different mates on
    # different cubes in two of its classes
    m = random_igmm(263, 7, 2, 3, density=1.0, output_bias=0.8)
    assert brute_force_min_size(m) == 3
    for eager in (False, True):
        res, _ = minimize(m, MinimizeOptions(keep_unreachable=True, eager=eager))
        assert res.n_states == 3 and is_specialization(res, m)
        shared, _ = minimize(m, MinimizeOptions(keep_unreachable=True, eager=eager,
                                                shared_activation=True))
        assert shared.n_states > 3 and is_specialization(shared, m)


@given(machines(max_states=5))
def test_shared_activation_is_sound_but_never_smaller(m):
    res, _ = minimize(m, MinimizeOptions(keep_unreachable=True))
    shared, _ = minimize(m, MinimizeOptions(keep_unreachable=True, shared_activation=True))
    assert shared.n_states >= res.n_states
    assert is_specialization(shared, m)
