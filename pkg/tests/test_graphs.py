import math

import pytest

from confviz import (
    Graph,
    ParameterError,
    VertexMap,
    bipartite_swap_involution,
    build_family,
    cartesian_product,
    family_names,
    is_admissible,
    kronecker_cover,
    line_graph,
    neighborhoods,
    structure_report,
)
from confviz.graphs import (
    bipartite_kneser_graph,
    complete_graph,
    cycle_graph,
    desargues_graph,
    dodecahedron_graph,
    gen_cuboctahedron_graph,
    generalized_petersen_graph,
    hypercube_graph,
    kneser_graph,
    odd_graph,
    pappus_graph,
    path_graph,
    petersen_graph,
    prism_graph,
)

from oracles import brute_girth, has_four_cycle_brute, tensor_double_cover


def test_graph_normalizes_edges():
    g = Graph(4, ((2, 0), (3, 1), (0, 1)))
    assert g.edges == ((0, 1), (0, 2), (1, 3))
    assert g.size == 3
    assert g.degree(0) == 2
    assert g.has_edge(2, 0) and not g.has_edge(2, 3)


def test_graph_rejects_bad_edges():
    with pytest.raises(ParameterError):
        Graph(3, ((0, 3),))
    with pytest.raises(ParameterError):
        Graph(3, ((1, 1),))
    # reversed duplicates collapse under normalization
    assert Graph(3, ((0, 1), (1, 0))).edges == ((0, 1),)


def test_cycle_path_complete_prism():
    assert cycle_graph(4).edges == ((0, 1), (0, 3), (1, 2), (2, 3))
    assert path_graph(3).edges == ((0, 1), (1, 2))
    assert complete_graph(4).size == 6
    p = prism_graph(3)
    assert p.order == 6 and p.size == 9
    assert all(p.degree(v) == 3 for v in range(6))


def test_hypercube():
    q3 = hypercube_graph(3)
    assert q3.order == 8 and q3.size == 12
    rep = structure_report(q3)
    assert rep.bipartite and rep.girth == 4 and rep.regular_degree == 3
    assert q3.label(5) == "101"
    q5 = hypercube_graph(5)
    assert q5.order == 32 and q5.size == 80


def test_kneser_graphs():
    pet = kneser_graph(5, 2)
    assert pet.order == 10 and pet.size == 15
    assert structure_report(pet).girth == 5
    k73 = kneser_graph(7, 3)
    assert k73.order == 35
    assert all(k73.degree(v) == 4 for v in range(35))
    with pytest.raises(ParameterError):
        kneser_graph(3, 2)


def test_bipartite_kneser():
    bk = bipartite_kneser_graph(5, 2)
    assert bk.order == 20 and bk.size == 30
    rep = structure_report(bk)
    assert rep.bipartite and rep.girth == 6 and rep.regular_degree == 3
    with pytest.raises(ParameterError):
        bipartite_kneser_graph(4, 2)


def test_odd_graph_is_kneser():
    assert odd_graph(3).edges == petersen_graph().edges
    o4 = odd_graph(4)
    assert o4.order == 35 and o4.edges == kneser_graph(7, 3).edges


def test_generalized_petersen():
    gp = generalized_petersen_graph(7, 2)
    assert gp.order == 14 and gp.size == 21
    assert all(gp.degree(v) == 3 for v in range(14))
    assert gp.label(0) == "o0" and gp.label(7) == "i0"
    with pytest.raises(ParameterError):
        generalized_petersen_graph(4, 2)


def test_named_graphs():
    assert dodecahedron_graph().edges == generalized_petersen_graph(10, 2).edges
    des = desargues_graph()
    assert des.order == 20 and structure_report(des).girth == 6
    pap = pappus_graph()
    assert pap.order == 18 and pap.size == 27
    rep = structure_report(pap)
    assert rep.bipartite and rep.girth == 6


def test_gen_cuboctahedron_is_prism_line_graph():
    for n in (3, 5):
        co = gen_cuboctahedron_graph(n)
        assert co.order == 3 * n
        assert all(co.degree(v) == 4 for v in range(co.order))
        assert co.edges == line_graph(prism_graph(n)).edges


def test_family_registry():
    names = family_names()
    for needed in ("cycle", "kneser", "petersen", "pappus", "gen_cuboctahedron"):
        assert needed in names
    assert build_family("kneser", 5, 2).edges == petersen_graph().edges
    with pytest.raises(ParameterError):
        build_family("nosuch")
    with pytest.raises(ParameterError):
        build_family("petersen", 3)


def test_cartesian_product_c7_q2():
    g = cartesian_product(cycle_graph(7), hypercube_graph(2))
    assert g.order == 28
    assert g.size == 7 * 4 + 4 * 7
    assert all(g.degree(v) == 4 for v in range(28))


def test_product_labels():
    g = cartesian_product(path_graph(2), path_graph(2))
    assert g.order == 4 and g.size == 4
    assert "(" in g.label(0) and "," in g.label(0)


def test_line_graph_k4():
    lg = line_graph(complete_graph(4))
    assert lg.order == 6
    assert all(lg.degree(v) == 4 for v in range(6))
    # complement of L(K4) is a perfect matching
    comp = [(u, v) for u in range(6) for v in range(u + 1, 6) if not lg.has_edge(u, v)]
    assert len(comp) == 3
    assert len({x for e in comp for x in e}) == 6


def test_kronecker_cover_k3_matches_tensor_oracle():
    k3 = complete_graph(3)
    cover, parts = kronecker_cover(k3)
    assert cover.edges == tensor_double_cover(3, k3.edges)
    assert cover.order == 6
    rep = structure_report(cover)
    assert rep.connected and rep.girth == 6  # the cover of K3 is a hexagon
    assert parts.is_valid_for(cover)


def test_kronecker_cover_of_bipartite_splits():
    q3 = hypercube_graph(3)
    cover, _ = kronecker_cover(q3)
    rep = structure_report(cover)
    assert len(rep.components) == 2
    assert cover.edges == tensor_double_cover(8, q3.edges)


def test_admissibility():
    pet = petersen_graph()
    ok, pair = is_admissible(pet)
    assert ok and pair is None
    # brute force: all neighborhood pairs distinct
    nbhd = neighborhoods(pet)
    assert len(set(nbhd)) == len(nbhd)
    ok, pair = is_admissible(cycle_graph(4))
    assert not ok and pair == (0, 2)


def test_girth_against_oracle():
    graphs = [
        cycle_graph(5),
        cycle_graph(9),
        petersen_graph(),
        hypercube_graph(3),
        hypercube_graph(4),
        prism_graph(4),
        complete_graph(5),
        generalized_petersen_graph(7, 2),
        desargues_graph(),
        pappus_graph(),
    ]
    for g in graphs:
        assert structure_report(g).girth == brute_girth(g.order, g.edges)


def test_acyclic_girth_is_infinite():
    assert structure_report(path_graph(5)).girth == math.inf


def test_four_cycle_against_oracle():
    for g in (cycle_graph(4), cycle_graph(5), petersen_graph(), hypercube_graph(3),
              complete_graph(4), prism_graph(4), path_graph(4)):
        assert structure_report(g).has_four_cycle == has_four_cycle_brute(g.order, g.edges)


def test_structure_report_bipartition():
    rep = structure_report(hypercube_graph(3))
    assert rep.bipartite
    sides = rep.bipartition.sides
    for u, v in hypercube_graph(3).edges:
        assert sides[u] != sides[v]
    assert not structure_report(petersen_graph()).bipartite


def test_components_listed():
    g = Graph(6, ((0, 1), (1, 2), (3, 4)))
    assert structure_report(g).components == ((0, 1, 2), (3, 4), (5,))


def test_vertex_map_basics():
    vm = VertexMap((1, 2, 0))
    assert vm(0) == 1
    assert vm.permutation_order() == 3
    assert vm.inverse().image == (2, 0, 1)
    g = cycle_graph(3)
    assert vm.is_automorphism(g)


def test_swap_involution_c6_matches_bruteforce():
    from oracles import brute_swap_involutions

    from confviz import Bipartition

    c6 = cycle_graph(6)
    sides = (0, 1, 0, 1, 0, 1)
    vm = bipartite_swap_involution(c6, Bipartition(sides))
    assert vm is not None
    refs = brute_swap_involutions(6, c6.edges, sides)
    assert vm.image in refs
    assert vm.permutation_order() == 2


def test_swap_involution_respects_sides():
    cover, parts = kronecker_cover(petersen_graph())
    vm = bipartite_swap_involution(cover, parts)
    assert vm is not None
    assert vm.is_automorphism(cover)
    for v in range(cover.order):
        assert parts.sides[v] != parts.sides[vm(v)]
        assert vm(vm(v)) == v


def test_family_parameter_errors():
    for name, params in (("cycle", (2,)), ("path", (0,)), ("complete", (0,)),
                         ("prism", (2,)), ("hypercube", (0,)), ("gen_petersen", (6, 3))):
        with pytest.raises(ParameterError):
            build_family(name, *params)
