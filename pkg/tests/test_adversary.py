from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sizeramsey.adversary import Adversary, ReplayMismatch, color_with
from sizeramsey.graph import BlowupMap, Color, Graph, complete_blowup, complete_graph
from sizeramsey.io import write_coloring
from synthetic import path_graph

B, R = Color.BLUE, Color.RED


@pytest.mark.parametrize(
    "text, label",
    [("uniform", "uniform"), ("uniform:0.25", "uniform:0.25"), ("all-red", "all-red"), ("ALL-BLUE", "all-blue"),
     ("parity", "parity"), ("anticlique", "anticlique"), ("file:x.txt", "file:x.txt")],
)
def test_parse_round_trips_label(text, label):
    assert Adversary.parse(text).label == label


@pytest.mark.parametrize("text", ["gaussian", "uniform:1.5", "file:", "uniform:abc"])
def test_parse_rejects(text):
    with pytest.raises(ValueError):
        Adversary.parse(text)


@pytest.mark.parametrize("name", ["uniform", "all-red", "all-blue", "parity", "anticlique"])
def test_every_edge_gets_a_color_and_seed_fixes_it(name):
    g, bmap = complete_blowup(path_graph(4), 6)
    adv = Adversary.parse(name)
    a = color_with(adv, g, bmap, seed=11)
    assert a.count(B) + a.count(R) == g.num_edges
    assert a == color_with(adv, g, bmap, seed=11)


def test_uniform_extremes_and_rate():
    g = complete_graph(60)
    assert color_with(Adversary.parse("uniform:0"), g).count(B) == 0
    assert color_with(Adversary.parse("uniform:1"), g).count(R) == 0
    blue = color_with(Adversary.parse("uniform"), g, seed=3).count(B)
    assert abs(blue / g.num_edges - 0.5) < 0.06


def test_parity_pattern():
    g, bmap = complete_blowup(path_graph(3), 3)
    c = color_with(Adversary.parse("parity"), g, bmap, seed=0)
    for u, v in g.edges():
        cu, cv = bmap.cluster_of(u), bmap.cluster_of(v)
        if cu == cv:
            assert c.get(u, v) is (B if cu % 2 == 0 else R)
        else:
            assert c.get(u, v) is (B if cu % 2 != cv % 2 else R)


def _mono_triangles(c, members):
    return sum(1 for x, y, z in combinations(members, 3) if c.get(x, y) is c.get(y, z) is c.get(x, z))


def test_anticlique_beats_uniform_inside_clusters():
    g, bmap = complete_blowup(Graph(8), 5)
    anti = color_with(Adversary.parse("anticlique"), g, bmap, seed=1)
    unif = color_with(Adversary.parse("uniform"), g, bmap, seed=1)
    count = lambda c: sum(_mono_triangles(c, bmap.members_of(v)) for v in range(8))
    assert count(anti) < count(unif)


@given(st.integers(0, 2**32 - 1))
def test_swapped_all_red_is_all_blue(seed):
    g = complete_graph(7)
    assert color_with(Adversary.parse("all-red"), g, seed=seed).swapped() == color_with(Adversary.parse("all-blue"), g)


def test_file_replay(tmp_path):
    g = complete_graph(5)
    c = color_with(Adversary.parse("uniform"), g, seed=2)
    write_coloring(c, tmp_path / "c.txt")
    assert color_with(Adversary.parse(f"file:{tmp_path / 'c.txt'}"), g) == c
    with pytest.raises(ReplayMismatch):
        color_with(Adversary.parse(f"file:{tmp_path / 'c.txt'}"), complete_graph(6))


def test_anticlique_needs_t_two():
    with pytest.raises(ValueError):
        color_with(Adversary.parse("anticlique"), complete_graph(4), BlowupMap(1, 4), t=1)
