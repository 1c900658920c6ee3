import io
import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chordal_forge import (
    Graph,
    Representation,
    RepresentationFormatError,
    Tree,
    brute_force_connectivity,
    clique_tree_check,
    connected_components,
    contract_edge,
    edge_load_bound_check,
    intersection_graph,
    is_minimal,
    minimal_separators,
    minimize,
    pruning_trace,
    read_rep_json,
    rep_from_json,
    rep_to_json,
    representation_size,
    write_rep_json,
)
from chordal_forge.rng import SplitMix64

from conftest import brute_force_maximal_cliques, random_representation


def p3_rep():
    """Minimal representation of the path a-b-c: two nodes, middle shared."""
    return Representation(Tree([0, 1], [(0, 1)]), [[0], [0, 1], [1]])


def single_node_rep(n):
    return Representation(Tree([0], []), [[0]] * n)


# ---------------------------------------------------------------- structure


def test_tree_rejects_disconnected_and_cyclic():
    with pytest.raises(RepresentationFormatError):
        Tree([0, 1, 2], [(0, 1)])  # too few edges
    with pytest.raises(RepresentationFormatError):
        Tree([0, 1, 2, 3], [(0, 1), (0, 1), (2, 3)])  # duplicate edge
    with pytest.raises(RepresentationFormatError):
        Tree([0, 1, 2], [(0, 1), (1, 2), (0, 2)])  # cycle


def test_representation_validates_subtrees():
    tree = Tree([0, 1, 2], [(0, 1), (1, 2)])
    with pytest.raises(RepresentationFormatError, match="subtree 0 is empty"):
        Representation(tree, [[]])
    with pytest.raises(RepresentationFormatError, match="subtree 1 is not connected"):
        Representation(tree, [[0], [0, 2]])
    with pytest.raises(RepresentationFormatError, match="unknown tree node"):
        Representation(tree, [[7]])


def test_incidence_count_matches_subtree_sizes():
    rep = random_representation(SplitMix64(3), 6, 6)
    assert representation_size(rep) == sum(len(s) for s in rep.subtrees())


# ------------------------------------------------------- intersection graph


def test_intersection_single_node_is_complete():
    g = intersection_graph(single_node_rep(3))
    assert g == Graph(3, [(0, 1), (0, 2), (1, 2)])


def test_intersection_disjoint_subtrees_give_isolated_vertices():
    rep = Representation(Tree([0, 1], [(0, 1)]), [[0], [1]])
    g = intersection_graph(rep)
    assert g.n == 2 and g.m == 0


def test_intersection_p3():
    g = intersection_graph(p3_rep())
    assert g == Graph(3, [(0, 1), (1, 2)])


# ----------------------------------------------------------------- minimal


def test_nested_incidence_is_not_minimal():
    rep = Representation(Tree([0, 1], [(0, 1)]), [[0], [0, 1]])
    assert not is_minimal(rep)


def test_incomparable_incidence_is_minimal():
    rep = Representation(Tree([0, 1], [(0, 1)]), [[0], [1]])
    assert is_minimal(rep)
    assert is_minimal(p3_rep())


# ---------------------------------------------------------------- contract


def test_contract_inclusion_preserves_graph():
    rep = Representation(Tree([0, 1], [(0, 1)]), [[0], [0, 1]])
    before = intersection_graph(rep)
    after, mult = contract_edge(rep, None, (0, 1))
    assert after.t == 1
    assert intersection_graph(after) == before
    assert mult == {0: 2}


def test_contract_minimal_edge_changes_graph():
    rep = Representation(Tree([0, 1], [(0, 1)]), [[0], [1]])
    after, _ = contract_edge(rep, None, (0, 1))
    assert intersection_graph(rep).m == 0
    assert intersection_graph(after).m == 1


def test_contract_multiplicities_add():
    tree = Tree([0, 1, 2], [(0, 1), (1, 2)])
    rep = Representation(tree, [[0, 1, 2]])
    mult = {0: 2, 1: 3, 2: 1}
    after, mult = contract_edge(rep, mult, (0, 1))
    assert mult == {0: 5, 2: 1}
    after, mult = contract_edge(after, mult, (0, 2))
    assert mult == {0: 6}


def test_contract_rejects_non_edges():
    rep = Representation(Tree([0, 1, 2], [(0, 1), (1, 2)]), [[0], [1], [2]])
    with pytest.raises(ValueError):
        contract_edge(rep, None, (0, 2))


def test_contract_keeps_lower_identifier():
    rep = Representation(Tree([3, 7], [(3, 7)]), [[3], [3, 7]])
    after, _ = contract_edge(rep, None, (7, 3))
    assert after.tree.nodes() == [3]


def test_contract_edge_superset_relation():
    rep = p3_rep()
    before = intersection_graph(rep).edge_set()
    after, _ = contract_edge(rep, None, (0, 1))
    assert before < intersection_graph(after).edge_set()


# ---------------------------------------------------------------- minimize


def test_minimize_collapses_identical_incidence():
    tree = Tree([0, 1, 2], [(0, 1), (1, 2)])
    rep = Representation(tree, [[0, 1, 2], [0, 1, 2], [0, 1, 2]])
    small, mult = minimize(rep)
    assert small.t == 1
    assert intersection_graph(small) == intersection_graph(rep)
    assert sum(mult.values()) == 3


def test_minimize_returns_minimal_input_unchanged():
    rep = p3_rep()
    out, mult = minimize(rep)
    assert out is rep
    assert mult == {0: 1, 1: 1}


def test_minimize_reaches_clique_count_and_ignores_order():
    base = SplitMix64(2024)
    for trial in range(150):
        rng = base.spawn(trial)
        rep = random_representation(rng, 1 + rng.randbelow(6), 1 + rng.randbelow(6))
        g = intersection_graph(rep)
        expected = len(brute_force_maximal_cliques(g))
        small, mult = minimize(rep)
        assert is_minimal(small)
        assert small.t == expected
        assert intersection_graph(small) == g
        assert sum(mult.values()) == rep.t
        for run in range(3):
            alt, alt_mult = minimize(rep, order_rng=rng.spawn(run))
            assert alt.t == expected
            assert intersection_graph(alt) == g
            assert sum(alt_mult.values()) == rep.t


# --------------------------------------------------------------- clique tree


def test_clique_tree_check_examples():
    assert clique_tree_check(p3_rep())
    nested = Representation(Tree([0, 1], [(0, 1)]), [[0], [0, 1]])
    assert not clique_tree_check(nested)


def test_clique_tree_nodes_are_oracle_cliques():
    base = SplitMix64(555)
    for trial in range(60):
        rng = base.spawn(trial)
        rep = random_representation(rng, 1 + rng.randbelow(6), 1 + rng.randbelow(6))
        small, _ = minimize(rep)
        assert clique_tree_check(small)
        g = intersection_graph(small)
        node_sets = {small.member_set(j) for j in small.tree.nodes()}
        assert node_sets == brute_force_maximal_cliques(g)


# ------------------------------------------------------------------ pruning


def test_pruning_trace_p3():
    trace = pruning_trace(p3_rep())
    assert [(r.node, r.simplicial, r.incident) for r in trace.records] == [
        (0, 1, 2),
        (1, 2, 2),
    ]
    # 2*(1*2 + 2*2) - (1 + 4) = 7 = 2m + n for m=2, n=3
    assert trace.identity_value() == 7
    assert trace.satisfies_bounds()


def test_pruning_trace_complete_graph():
    n = 6
    trace = pruning_trace(single_node_rep(n))
    assert [(r.simplicial, r.incident) for r in trace.records] == [(n, n)]
    assert trace.identity_value() == n * n  # = 2*C(n,2) + n


def test_pruning_trace_rejects_non_minimal():
    nested = Representation(Tree([0, 1], [(0, 1)]), [[0], [0, 1]])
    with pytest.raises(ValueError):
        pruning_trace(nested)


def test_pruning_identity_on_random_minimal_reps():
    base = SplitMix64(909)
    for trial in range(120):
        rng = base.spawn(trial)
        rep = random_representation(rng, 1 + rng.randbelow(7), 1 + rng.randbelow(8))
        small, _ = minimize(rep)
        g = intersection_graph(small)
        trace = pruning_trace(small)
        assert sum(trace.s_values()) == g.n
        assert trace.identity_value() == 2 * g.m + g.n
        assert trace.satisfies_bounds()
        assert representation_size(small) <= 2 * g.m + g.n


# --------------------------------------------------------------- separators


def test_separators_p3():
    report = minimal_separators(p3_rep())
    assert report.separators == (((0, 1), frozenset({1})),)
    assert report.kappa == 1


def test_separators_complete_graph_convention():
    report = minimal_separators(single_node_rep(4))
    assert report.separators == ()
    assert report.kappa == 3


def test_separators_disconnected_gives_zero():
    rep = Representation(Tree([0, 1], [(0, 1)]), [[0], [1]])
    assert minimal_separators(rep).kappa == 0


def test_separators_reject_non_minimal():
    nested = Representation(Tree([0, 1], [(0, 1)]), [[0], [0, 1]])
    with pytest.raises(ValueError):
        minimal_separators(nested)


def test_separators_are_cliques_and_kappa_matches_oracle():
    base = SplitMix64(31337)
    checked = 0
    for trial in range(200):
        rng = base.spawn(trial)
        rep = random_representation(rng, 1 + rng.randbelow(6), 1 + rng.randbelow(8))
        small, _ = minimize(rep)
        g = intersection_graph(small)
        report = minimal_separators(small)
        adj = g.adjacency()
        for _, sep in report.separators:
            for u in sep:
                assert sep - {u} <= adj[u]
        assert len(report.distinct_separators()) <= max(small.t - 1, 0)
        if len(connected_components(g)) == 1:
            assert report.kappa == brute_force_connectivity(g)
            checked += 1
    assert checked > 30


# ---------------------------------------------------------------- edge load


def test_edge_load_examples():
    assert edge_load_bound_check(p3_rep())  # loads 1 <= n - t = 1
    independent = Representation(
        Tree([0, 1, 2], [(0, 1), (1, 2)]), [[0], [1], [2]]
    )
    assert edge_load_bound_check(independent)  # loads 0 <= n - t = 0
    nested = Representation(Tree([0, 1], [(0, 1)]), [[0], [0, 1]])
    with pytest.raises(ValueError):
        edge_load_bound_check(nested)


# -------------------------------------------------------- characterizations


def test_node_count_equals_n_iff_edgeless():
    base = SplitMix64(4242)
    for trial in range(80):
        rng = base.spawn(trial)
        rep = random_representation(rng, 1 + rng.randbelow(6), 1 + rng.randbelow(6))
        small, _ = minimize(rep)
        g = intersection_graph(small)
        assert (small.t == small.n) == (g.m == 0)


def tree_graph_representation(n, parent):
    """Clique tree of a tree graph: one host node per edge.

    parent[v] < v gives the tree; host node i-1 stands for edge
    (parent[i], i); subtree of vertex v collects its incident edges.
    """
    host_nodes = list(range(n - 1))
    host_edges = []
    for v in range(1, n):
        u = parent[v]
        if u == 0:
            if v - 1 != host_nodes[0]:
                host_edges.append((host_nodes[0], v - 1))
        else:
            host_edges.append((u - 1, v - 1))
    tree = Tree(host_nodes, host_edges)
    subtrees = []
    for v in range(n):
        incident = [w - 1 for w in range(1, n) if parent[w] == v]
        if v > 0:
            incident.append(v - 1)
        subtrees.append(sorted(incident))
    return Representation(tree, subtrees)


def test_trees_have_reps_on_n_minus_1_nodes():
    base = SplitMix64(77)
    for trial in range(40):
        rng = base.spawn(trial)
        n = 2 + rng.randbelow(7)
        parent = [0] + [rng.randbelow(v) for v in range(1, n)]
        rep = tree_graph_representation(n, parent)
        assert rep.t == n - 1
        assert is_minimal(rep)
        g = intersection_graph(rep)
        assert g.m == n - 1
        assert len(connected_components(g)) == 1
        assert g.edge_set() == {(min(parent[v], v), max(parent[v], v)) for v in range(1, n)}


def test_connected_rep_on_n_minus_1_nodes_is_a_tree():
    # forward direction, over minimized random representations
    base = SplitMix64(88)
    seen = 0
    for trial in range(400):
        rng = base.spawn(trial)
        rep = random_representation(rng, 1 + rng.randbelow(7), 2 + rng.randbelow(7))
        small, _ = minimize(rep)
        g = intersection_graph(small)
        if small.t != small.n - 1:
            continue
        comps = connected_components(g)
        non_trivial = [c for c in comps if len(c) > 1]
        # forest with exactly one non-trivial component
        assert g.m == len(non_trivial[0]) - 1
        assert len(non_trivial) == 1
        if len(comps) == 1:
            seen += 1
    assert seen > 5


def test_forest_with_one_tree_has_rep_on_n_minus_1_nodes():
    rep = tree_graph_representation(4, [0, 0, 1, 2])
    # add two isolated vertices as fresh host nodes with singleton subtrees
    tree = rep.tree
    nodes = tree.nodes() + [100, 101]
    edges = tree.edges() + [(tree.nodes()[0], 100), (tree.nodes()[0], 101)]
    subtrees = rep.subtrees() + [[100], [101]]
    fat = Representation(Tree(nodes, edges), subtrees)
    assert fat.n == 6 and fat.t == 5
    assert is_minimal(fat)
    g = intersection_graph(fat)
    comps = connected_components(g)
    assert sorted(len(c) for c in comps) == [1, 1, 4]


# --------------------------------------------------------------------- json


def test_json_round_trip():
    rep = random_representation(SplitMix64(11), 5, 7)
    buf = io.StringIO()
    write_rep_json(rep, buf)
    back = read_rep_json(io.StringIO(buf.getvalue()))
    assert back == rep
    assert rep_from_json(rep_to_json(rep)) == rep


def test_json_reports_disconnected_subtree_index():
    doc = {
        "tree": {"nodes": [0, 1, 2], "edges": [[0, 1], [1, 2]]},
        "subtrees": [[0], [0, 2]],
    }
    with pytest.raises(RepresentationFormatError, match="subtree 1 is not connected"):
        rep_from_json(doc)


def test_json_rejects_malformed_documents():
    with pytest.raises(RepresentationFormatError):
        read_rep_json(io.StringIO("not json"))
    with pytest.raises(RepresentationFormatError):
        rep_from_json({"tree": {"nodes": [0], "edges": []}})
    with pytest.raises(RepresentationFormatError):
        rep_from_json({"tree": {"nodes": [0, 1], "edges": [[0]]}, "subtrees": [[0]]})


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 6), st.integers(1, 6))
def test_json_round_trip_random(seed, t, n):
    rep = random_representation(SplitMix64(seed), t, n)
    buf = io.StringIO()
    write_rep_json(rep, buf)
    assert read_rep_json(io.StringIO(buf.getvalue())) == rep
    json.loads(buf.getvalue())  # stays plain JSON
