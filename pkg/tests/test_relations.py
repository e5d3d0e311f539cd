import pytest
from hypothesis import given

from igmm.machine import complete_with_sink
from igmm.relations import (SpecRelation, bisimulation_partition, partial_solution,
                            representatives, spec_graph, specialization_relation,
                            variation_matrix)
from igmm.samples import controller, seven_state
from igmm.verify import not_variation_oracle

from conftest import machines


def test_seven_state_non_variations():
    vm = variation_matrix(seven_state())
    assert vm.pairs() == [(0, 1), (0, 2), (0, 5), (1, 2), (1, 5), (3, 5)]
    assert [sum(r) for r in vm.mat] == [3, 3, 2, 1, 0, 3, 0]


def test_seven_state_partial_solution():
    assert partial_solution(variation_matrix(seven_state())) == [0, 1, 5]


def test_controller_has_no_non_variations():
    vm = variation_matrix(controller())
    assert vm.pairs() == []
    assert partial_solution(vm) == [0]


@given(machines(max_states=6))
def test_matrix_matches_pair_exploration(m):
    vm = variation_matrix(m)
    assert [list(r) for r in vm.mat] == not_variation_oracle(m)


@given(machines(max_states=6))
def test_partial_solution_is_pairwise_non_variation(m):
    vm = variation_matrix(m)
    ps = partial_solution(vm)
    assert ps and len(set(ps)) == len(ps)
    assert all(vm.not_variation(a, b) for a in ps for b in ps if a != b)


def test_seven_state_specialization_graph():
    g = spec_graph(specialization_relation(seven_state()))
    assert sorted(g.leaf_sets()) == [(0,), (1,), (2,), (5,)]
    assert (4, 6) in g.nodes
    three = g.node_of[3]
    assert {g.nodes[y] for y in g.edges[three]} == {(0,), (1,)}
    assert representatives(g) == [0, 1, 2, 0, 0, 5, 0]
    assert representatives(g, {3: 1, 4: 1, 6: 1}) == [0, 1, 2, 1, 1, 5, 1]


def test_representatives_rejects_bad_choice():
    g = spec_graph(specialization_relation(seven_state()))
    with pytest.raises(ValueError):
        representatives(g, {3: 2})


def test_specialization_needs_complete_machine():
    with pytest.raises(ValueError):
        specialization_relation(controller())


def test_spec_graph_rejects_non_preorder():
    with pytest.raises(ValueError):
        spec_graph(SpecRelation(2, ((True, True), (False, False))))
    with pytest.raises(ValueError):
        spec_graph(SpecRelation(3, ((True, True, False), (False, True, True), (False, False, True))))


@given(machines(max_states=5))
def test_specialization_is_a_preorder(m):
    full = complete_with_sink(m)
    rel = specialization_relation(full)
    g = spec_graph(rel)
    sink = full.n_states - 1
    if full is not m:
        # the universal sink is above everything
        assert all(rel(q, sink) for q in range(full.n_states))
    for q in range(full.n_states):
        assert q in g.nodes[g.node_of[q]]


def test_bisimulation_of_seven_state():
    assert bisimulation_partition(seven_state()) == [(0,), (1,), (2,), (3,), (4, 6), (5,)]


@given(machines(max_states=6))
def test_bisimulation_blocks_are_stable(m):
    blocks = bisimulation_partition(m)
    block_of = {q: b for b, members in enumerate(blocks) for q in members}
    for members in blocks:
        for q in members:
            for a, b in zip(m.table[members[0]], m.table[q]):
                assert (a is None) == (b is None)
                if a is not None:
                    assert a.out == b.out and block_of[a.target] == block_of[b.target]
