import itertools

import networkx as nx
import pytest

from qap import cartan as ct
from qap.partition import Subspace, build_qap, intrinsic_center
from qap.spinor import BitString, Spinor, all_spinors, commutes


def clique_oracle(p):
    """Maximal commuting sets of nonidentity spinors, found by clique search."""
    nodes = all_spinors(p)
    g = nx.Graph()
    g.add_nodes_from(nodes)
    g.add_edges_from((a, b) for a, b in itertools.combinations(nodes, 2) if commutes(a, b))
    return {frozenset(c) for c in nx.find_cliques(g) if len(c) == (1 << p) - 1}


@pytest.fixture(scope="module")
def su8():
    return build_qap(intrinsic_center(8))


@pytest.mark.parametrize("p,counts", [(1, [1, 2]), (2, [1, 6, 8]), (3, [1, 14, 56, 64]),
                                      (4, [1, 30, 280, 960, 1024])])
def test_shell_counts(p, counts):
    e = ct.enumerate_cartans(p)
    assert e.counts == counts
    assert e.total == ct.cartan_count(p)


@pytest.mark.parametrize("p", [2, 3])
def test_enumeration_matches_clique_oracle(p):
    found = {c.basis for c in ct.enumerate_cartans(p).all()}
    assert found == clique_oracle(p)


@pytest.mark.parametrize("p", [2, 3])
def test_shell_index_is_distance_from_intrinsic(p):
    # shell k shares exactly 2^(p-k) - 1 spinors with the intrinsic center
    c = ct.CartanSubalgebra.intrinsic(p).basis
    for k, shell in enumerate(ct.enumerate_cartans(p).shells):
        assert all(len(a.basis & c) == (1 << (p - k)) - 1 for a in shell)


@pytest.mark.parametrize("p", [1, 2, 3])
def test_routes_agree(p):
    sym = ct.enumerate_cartans(p, "symplectic")
    qap = ct.enumerate_cartans(p, "qap")
    assert [{a.key() for a in s} for s in sym.shells] == [{a.key() for a in s} for s in qap.shells]


@pytest.mark.parametrize("p", [2, 3])
def test_neighbor_counts(p):
    for a in ct.enumerate_cartans(p).all():
        keys = ct.neighbor_keys(a.key(), p)
        assert len(set(keys)) == len(keys) == 2 * ((1 << p) - 1)
        assert a.key() not in keys


def test_qap_neighbors_match_symplectic():
    for a in ct.enumerate_cartans(2).all():
        assert {n.key() for n in ct.extend_neighbors(a)} == set(ct.neighbor_keys(a.key(), 2))


def test_cartan_validation():
    with pytest.raises(ValueError):
        ct.CartanSubalgebra.of(["XI", "ZI", "IZ"])
    with pytest.raises(ValueError):
        ct.CartanSubalgebra.of(["ZI", "IZ"])
    a = ct.CartanSubalgebra.of(["XX", "YY", "ZZ"])
    assert a.words() == ["ZZ", "XX", "YY"]


def test_all_selections_su8(su8):
    sels = ct.enumerate_selections(su8)
    assert len(sels) == 8
    assert len({tuple(sorted(s.hat.items())) for s in sels}) == 8
    for sel in sels:
        report = ct.verify_split(ct.make_split(sel))
        assert report.ok, report.failures
        assert report.type_ai


def test_selection_is_linear(su8):
    for sel in ct.enumerate_selections(su8):
        for a, b in itertools.combinations(su8.labels(), 2):
            assert sel.f(a ^ b) == sel.f(a) ^ sel.f(b)


def test_worked_selection_example(su8):
    picks = [(1, False), (2, False), (3, True), (4, True)]
    sel = ct.resolve_selection(su8, picks)
    assert sel.describe() == "W_001, W_010, Ŵ_011, Ŵ_100, W_101, W_110, Ŵ_111"


def test_selection_errors(su8):
    with pytest.raises(ct.DependentLabels):
        ct.resolve_selection(su8, [(1, False), (2, False), (3, True)])
    with pytest.raises(ct.ContradictoryPicks):
        ct.resolve_selection(su8, [(1, False), (2, False), (3, False), (4, True)])
    with pytest.raises(ct.ContradictoryPicks):
        ct.resolve_selection(su8, [(1, False), (1, True), (2, False), (4, False)])


def test_parse_selection():
    picks = ct.parse_selection("001:W,010:W,100:hat", 3)
    assert picks == [(BitString(1, 3), False), (BitString(2, 3), False), (BitString(4, 3), True)]
    with pytest.raises(ValueError):
        ct.parse_selection("001:X", 3)
    with pytest.raises(ValueError):
        ct.parse_selection("01:W", 3)


def test_su6_selections_pass():
    q = build_qap(intrinsic_center(6, "lambda"))
    for sel in ct.enumerate_selections(q):
        assert ct.verify_split(ct.make_split(sel)).ok


def test_broken_split_is_reported(su8):
    sel = ct.enumerate_selections(su8)[0]
    split = ct.make_split(sel)
    split.t[0], split.p[1] = split.p[1], split.t[0]
    assert not ct.verify_split(split).ok


def test_not_type_ai_when_center_shrinks(su8):
    sel = ct.enumerate_selections(su8)[0]
    split = ct.make_split(sel)
    c = split.q.center
    split.q.center = Subspace(c.label, False, c.basis[:3])
    try:
        assert not ct.verify_split(split).type_ai
    finally:
        split.q.center = c


def test_spinor_cartan_subspace_builds_partition():
    a = ct.CartanSubalgebra.of(["XX", "YY", "ZZ"])
    q = build_qap(a.to_subspace())
    assert len(q.pairs) == 3
    assert isinstance(next(iter(a.basis)), Spinor)
