import random

import pytest
from hypothesis import given, strategies as st

from ribbonskein.diagram import (
    DiagramError, GraphDiagram, Node, NormalForm, TangleBuilder, contract_edge, delete_edge, parse_diagram,
    read_normal_form, remove_circle, remove_loop, serialize_diagram, smooth_crossing, smooth_valence2, stack,
)
from ribbonskein.verify import random_diagram

CROSS = "n=2; node c xover; strand B1 c.0; strand B2 c.1; strand c.2 T2; strand c.3 T1"
THETA = "n = 0\nnode u vertex 3\nnode v vertex 3\nstrand u.0 v.2\nstrand u.1 v.1\nstrand u.2 v.0\n"
BIGON = "n=0; node u vertex 2; node v vertex 2; strand u.0 v.1; strand u.1 v.0"


def nf(n, text):
    return NormalForm.parse(n, text)


def test_parse_examples():
    g = parse_diagram("n=1; strand B1 T1")
    assert g.n == 1 and g.strands == ((("B", 1), ("T", 1)),)
    g = parse_diagram("n=0; node v vertex 2; strand v.0 v.1")
    assert g.vertices[0].degree == 2
    g = parse_diagram(CROSS)
    assert len(g.crossings) == 1
    g = parse_diagram("# comment\nn = 0\ncircle 2  # two annuli\n")
    assert g.circles == 2


@pytest.mark.parametrize("text, fragment, line", [
    ("n=1; strand B1 T1\nstrand B1 T1", "reused", 2),
    ("n=1\nnode v vertex 3\nstrand v.0 v.1\nstrand v.1 B1", "reused", 4),
    ("n=1\nfrobnicate", "cannot parse", 2),
    ("n=1\nstrand B1 Q1", "bad endpoint", 2),
    ("n=1\nnode B vertex 2", "reserved", 2),
    ("n=1; n=2", "twice", 1),
])
def test_parse_errors_carry_lines(text, fragment, line):
    with pytest.raises(DiagramError) as exc:
        parse_diagram(text)
    assert fragment in str(exc.value) and exc.value.line == line


@pytest.mark.parametrize("text, fragment", [
    ("strand B1 T1", "missing"),
    ("n=1", "unused"),
    ("n=2; node c xover; strand B1 c.0; strand B2 c.3; strand c.2 T2; strand c.1 T1", "not planar"),
    ("n=2; strand B1 T2; strand B2 T1", "not planar"),
    ("n=1; node v vertex 3; strand B1 v.0; strand v.1 T1", "unused"),
])
def test_structural_errors(text, fragment):
    with pytest.raises(DiagramError, match=fragment):
        parse_diagram(text)


def test_k33_like_graph_is_rejected():
    # two 4-valent vertices joined by strands in interleaved rotation orders
    with pytest.raises(DiagramError, match="not planar"):
        GraphDiagram.checked(0, [Node("u", "vertex", 4), Node("v", "vertex", 4)],
                             [(("u", 0), ("v", 0)), (("u", 1), ("v", 1)), (("u", 2), ("v", 2)), (("u", 3), ("v", 3))])


@given(st.integers(0, 10 ** 6))
def test_serialize_roundtrip(seed):
    g = random_diagram(random.Random(seed))
    text = serialize_diagram(g)
    assert parse_diagram(text) == g
    assert serialize_diagram(parse_diagram(text)) == text


def test_contract_and_delete():
    theta = parse_diagram(THETA)
    e = (("u", 0), ("v", 2))
    c = contract_edge(theta, e)
    (v,) = c.nodes
    assert v.degree == 4 and len(c.strands) == 2
    assert all(a[0] == b[0] == v.name for a, b in c.strands)
    d = delete_edge(theta, e)
    assert sorted(x.degree for x in d.nodes) == [2, 2]
    b = contract_edge(parse_diagram(BIGON), (("u", 0), ("v", 1)))
    assert len(b.nodes) == 1 and b.nodes[0].degree == 2 and len(b.strands) == 1
    h = TangleBuilder(2).vertex(0, 2, 1).vertex(0, 1, 2).finish()
    inner = next(s for s in h.strands if s[0][0] not in "BT" and s[1][0] not in "BT")
    assert read_normal_form(contract_edge(h, inner)) == nf(2, "{B1 B2 T2 T1}")
    with pytest.raises(DiagramError):
        contract_edge(parse_diagram("n=0; node v vertex 2; strand v.0 v.1"), (("v", 0), ("v", 1)))
    with pytest.raises(DiagramError):
        contract_edge(parse_diagram(CROSS), (("B", 1), ("c", 0)))


def test_smoothings():
    g = parse_diagram(CROSS)
    assert read_normal_form(smooth_crossing(g, "c", "A")) == nf(2, "{B1 B2 | T1 T2}")
    assert read_normal_form(smooth_crossing(g, "c", "B")) == nf(2, "{B1 T1 | B2 T2}")
    assert read_normal_form(smooth_crossing(g, "c", "vertex")) == nf(2, "{B1 B2 T2 T1}")
    with pytest.raises(DiagramError):
        smooth_crossing(parse_diagram(THETA), "u", "A")


def test_loops_circles_valence2():
    looped = parse_diagram("n=0; node v vertex 2; strand v.0 v.1")
    r = remove_loop(looped, "v")
    assert r.nodes[0].degree == 0 and not r.strands
    with pytest.raises(DiagramError):
        remove_loop(parse_diagram(THETA), "u")
    assert remove_circle(parse_diagram("n=0; circle 1")).circles == 0
    with pytest.raises(DiagramError):
        remove_circle(parse_diagram("n=0"))
    s = smooth_valence2(parse_diagram("n=1; node v vertex 2; strand B1 v.0; strand v.1 T1"), "v")
    assert s == parse_diagram("n=1; strand B1 T1")
    assert smooth_valence2(looped, "v").circles == 1


def test_read_normal_form_examples():
    assert read_normal_form(parse_diagram("n=2; strand B1 T1; strand B2 T2")) == nf(2, "{B1 T1 | B2 T2}")
    assert read_normal_form(parse_diagram("n=2; strand B1 B2; strand T1 T2")) == nf(2, "{B1 B2 | T1 T2}")
    x = parse_diagram("n=2; node x vertex 4; strand B1 x.0; strand B2 x.1; strand T2 x.2; strand T1 x.3")
    assert read_normal_form(x) == nf(2, "{B1 B2 T1 T2}")
    with pytest.raises(DiagramError):
        read_normal_form(parse_diagram(CROSS))


def test_normal_form_text():
    v = nf(3, "{T1 B1 B2 | T2 T3 B3}")
    assert str(v) == "{B1 B2 T1 | B3 T2 T3}"
    assert NormalForm.parse(3, str(v)) == v
    assert read_normal_form(v.to_diagram()) == v
    with pytest.raises(DiagramError):
        nf(2, "{B1 T2 | B2 T1}")
    with pytest.raises(DiagramError):
        nf(2, "{B1 | B2 T1 T2}")


@given(st.integers(0, 10 ** 6))
def test_surgeries_preserve_planarity(seed):
    rng = random.Random(seed)
    g = random_diagram(rng)
    for _ in range(6):
        options = []
        for v in g.crossings:
            options.append(lambda g, v=v: smooth_crossing(g, v.name, rng.choice("AB") if rng.random() < .7 else "vertex"))
        for a, b in g.strands:
            ka = next((x for x in g.nodes if x.name == a[0]), None)
            kb = next((x for x in g.nodes if x.name == b[0]), None)
            if ka and kb and ka is not kb and ka.kind == kb.kind == "vertex":
                options.append(lambda g, e=(a, b): contract_edge(g, e))
                options.append(lambda g, e=(a, b): delete_edge(g, e))
        if not options:
            break
        g = rng.choice(options)(g)
        g.validate()


def test_stack_counts_circles():
    cap_cup = parse_diagram("n=1; node u vertex 2; node w vertex 2; strand B1 u.0; strand u.1 w.0; strand w.1 T1")
    s = stack(parse_diagram("n=2; strand B1 B2; strand T1 T2"), parse_diagram("n=2; strand B1 B2; strand T1 T2"))
    assert s.circles == 1 and len(s.strands) == 2
    assert stack(cap_cup, cap_cup).n == 1
    with pytest.raises(DiagramError):
        stack(cap_cup, s)
