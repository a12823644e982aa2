from collections import Counter

import pytest
from conftest import INPUTS, machine_text

import oracles
from spantl import corpus
from spantl.ato_core import ResourceBounds, parse_machine, successors
from spantl.computation import (check_well_behaved, enumerate_computations, extract_output,
                                is_accepting_computation, labeled_free_paths, span_exact,
                                valid_outputs)
from spantl.errors import BoundViolation
from spantl.trees import Tree, canonical_code, parse_tree, serialize_tree


def as_nested(node):
    c = node.config
    return ((c.state, c.work, c.label, c.in_head, c.work_head),
            tuple(as_nested(k) for k in node.children))


def naive_nested(comp):
    conf, kids = comp
    return (oracles.short(conf), tuple(naive_nested(k) for k in kids))


def comps(name, w=""):
    return list(enumerate_computations(corpus.load(name), w))


# -- enumeration -----------------------------------------------------------------------

def test_ex1_one_computation_two_nodes():
    (t,) = comps("ex1_forced_accept", "ab")
    assert t.size == 2 and len(list(t.nodes())) == 2
    assert is_accepting_computation(t)


def test_ex2_two_computations():
    assert len(comps("ex2_exists_branch", "x")) == 2


def test_ex3_one_computation_two_subtrees():
    (t,) = comps("ex3_forall_branch", "x")
    assert len(t.root.children) == 2


@pytest.mark.parametrize("w", INPUTS)
def test_enumeration_matches_oracle(machine, w):
    got = Counter(as_nested(t.root) for t in enumerate_computations(machine, w))
    expected = Counter(naive_nested(c) for c in oracles.naive_computations(machine, w))
    assert got == expected
    assert max(got.values(), default=1) == 1


@pytest.mark.parametrize("w", INPUTS)
def test_computation_shape(machine, w):
    m = machine
    for t in enumerate_computations(m, w):
        assert t.root.config.state == m.init
        assert t.size == len(list(t.nodes()))
        for node in t.nodes():
            if not node.children:
                assert m.is_halting(node.config.state)
            elif node.config.state in m.universal:
                assert [k.config for k in node.children] == successors(m, w, node.config)


def test_enumeration_is_deterministic():
    m = corpus.load("nested_universal")
    first = [as_nested(t.root) for t in enumerate_computations(m, "ab")]
    assert first == [as_nested(t.root) for t in enumerate_computations(m, "ab")]


def test_dead_ends_are_pruned():
    m = corpus.load("dead_end")
    for t in enumerate_computations(m, "ab"):
        for node in t.nodes():
            assert node.children or m.is_halting(node.config.state)


def test_rejecting_leaf_makes_computation_invalid():
    ts = comps("rejecting_branch")
    assert sorted(is_accepting_computation(t) for t in ts) == [False, True]


def test_loop_hits_node_bound():
    with pytest.raises(BoundViolation) as exc:
        list(enumerate_computations(corpus.load("ex5_loop"), "x"))
    assert exc.value.bound == "max_nodes"
    assert "max_nodes exceeded" in str(exc.value)
    assert exc.value.configuration is not None


def test_tape_cap_violation_names_bound():
    m = parse_machine(machine_text(states="q0 p acc rej", existential="q0 p",
                                   bounds="max_nodes=50 tape_cap=3 k=1",
                                   delta='(q0, >, >) -> (p, 0, 1, >, "")\n'
                                         '(p, >, _) -> (p, 0, 1, a, "")'))
    with pytest.raises(BoundViolation) as exc:
        list(enumerate_computations(m, ""))
    assert exc.value.bound == "tape_cap"


def test_large_computation_hits_node_bound():
    m = corpus.load("input_reader")
    with pytest.raises(BoundViolation):
        list(enumerate_computations(m, "ab" * 5, ResourceBounds(max_nodes=6, tape_cap=4, k=1)))


# -- outputs ---------------------------------------------------------------------------

def test_ex2_outputs():
    outs = sorted(serialize_tree(extract_output(t, "ordered")) for t in comps("ex2_exists_branch", "x"))
    assert outs == ['""(a)', '""(b)']


def test_ex3_output():
    (t,) = comps("ex3_forall_branch", "x")
    assert extract_output(t, "ordered") == parse_tree('""(a,b)')


def test_no_labeling_after_root_gives_single_node():
    (t,) = comps("ex1_forced_accept")
    assert extract_output(t, "ordered") == Tree("")


def test_labeling_through_non_labeling_chain():
    # ex4: q0 -> u1 -> u2 -> {la, lb}; both land directly under the root
    (t,) = comps("ex4_two_universal")
    assert extract_output(t, "ordered") == parse_tree('""(a,b)')


@pytest.mark.parametrize("w", INPUTS)
def test_outputs_match_oracle(machine, w):
    got = Counter(canonical_code(extract_output(t, "ordered"), "ordered")
                  for t in enumerate_computations(machine, w))
    expected = Counter(canonical_code(oracles.nested_to_tree(oracles.naive_output(machine, c, True)),
                                      "ordered")
                       for c in oracles.naive_computations(machine, w))
    assert got == expected


@pytest.mark.parametrize("w", INPUTS)
def test_output_invariants(machine, w):
    for t in enumerate_computations(machine, w):
        ordered = extract_output(t, "ordered")
        unordered = extract_output(t, "unordered")
        assert ordered.label == ""
        assert canonical_code(unordered, "unordered") == canonical_code(ordered, "unordered")


# -- span -------------------------------------------------------------------------------

@pytest.mark.parametrize("name,expected", [("ex1_forced_accept", 1), ("ex2_exists_branch", 2),
                                           ("ex3_forall_branch", 1)])
def test_span_examples(name, expected):
    m = corpus.load(name)
    for mode in ("ordered", "unordered"):
        assert span_exact(m, "x", mode=mode) == expected


# frozen from the brute-force oracle (tests/oracles.py)
FROZEN_SPANS = {
    ("ex4_two_universal", ""): (1, 1),
    ("rejecting_branch", ""): (1, 1),
    ("nested_universal", ""): (8, 6),
    ("input_reader", ""): (1, 1),
    ("input_reader", "ab"): (4, 4),
    ("input_reader", "abxba"): (16, 16),
    ("input_reader", "ababab"): (64, 64),
    ("dead_end", "ab"): (1, 1),
    ("tape_writer", "x"): (2, 2),
    ("labeled_leaves", ""): (2, 2),
}


@pytest.mark.parametrize("key", sorted(FROZEN_SPANS))
def test_frozen_spans(key):
    name, w = key
    m = corpus.load(name)
    assert (span_exact(m, w, mode="ordered"), span_exact(m, w, mode="unordered")) == FROZEN_SPANS[key]


@pytest.mark.parametrize("w", INPUTS)
def test_span_matches_oracle(machine, w):
    assert span_exact(machine, w, mode="ordered") == oracles.naive_span(machine, w, True)
    assert span_exact(machine, w, mode="unordered") == oracles.naive_span(machine, w, False)


@pytest.mark.parametrize("w", INPUTS)
def test_span_monotone_under_mode(machine, w):
    assert span_exact(machine, w, mode="unordered") <= span_exact(machine, w, mode="ordered")


def test_default_mode_is_unordered():
    m = corpus.load("nested_universal")
    assert span_exact(m, "") == 6


def test_valid_outputs_representatives():
    outs = valid_outputs(corpus.load("ex2_exists_branch"), "", mode="ordered")
    assert sorted(map(serialize_tree, outs.values())) == ['""(a)', '""(b)']


def test_universal_only_deterministic_machine_has_span_at_most_one():
    for reject in (False, True):
        target = "rej" if reject else "acc"
        m = parse_machine(machine_text(states="q0 p acc rej", existential="", universal="q0 p",
                                       labeling="q0 p",
                                       delta=f'(q0, >, >) -> (p, 1, 0, >, "a")\n'
                                             f'(p, _, >) -> ({target}, 0, 0, >, "")\n'
                                             f'(p, x, >) -> (p, 1, 0, >, "x")'))
        for w in ("", "x", "xxx"):
            assert span_exact(m, w) == (0 if reject else 1)


def test_ex2_computation_count_is_product_of_choices():
    assert len(comps("ex2_exists_branch")) == 2


# -- well-behavedness ------------------------------------------------------------------------

def test_ex1_well_behaved():
    (t,) = comps("ex1_forced_accept")
    assert check_well_behaved(t, ResourceBounds(100, 100, 5)) == []


def test_ex3_k0_passes_because_root_is_labeling():
    (t,) = comps("ex3_forall_branch")
    assert check_well_behaved(t, ResourceBounds(16, 4, 0)) == []


def test_ex4_two_universal():
    (t,) = comps("ex4_two_universal")
    (v,) = check_well_behaved(t, ResourceBounds(32, 4, 1))
    assert v.kind == "universal_k"
    assert [c.state for c in v.path] == ["u1", "u2"]
    assert check_well_behaved(t, ResourceBounds(32, 4, 2)) == []


def test_labeled_free_paths_ex4():
    (t,) = comps("ex4_two_universal")
    paths = labeled_free_paths(t)
    assert sorted([n.config.state for n in p] for p in paths) == [["acc"], ["acc"], ["u1", "u2"]]


def test_size_and_tape_violations():
    (t,) = comps("tape_writer", "x")[:1]
    tight = ResourceBounds(max_nodes=1, tape_cap=1, k=2)
    kinds = {v.kind for v in check_well_behaved(t, tight)}
    assert kinds == {"max_nodes", "tape_cap"}


@pytest.mark.parametrize("w", INPUTS)
def test_corpus_is_well_behaved_under_declared_bounds(machine, w):
    for t in enumerate_computations(machine, w):
        assert check_well_behaved(t) == []
