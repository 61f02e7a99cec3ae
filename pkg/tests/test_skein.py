import random

import pytest
from hypothesis import given, strategies as st

from ribbonskein.cabling import phi, spin_network_theta, theta_diagram
from ribbonskein.diagram import GraphDiagram, NormalForm, TangleBuilder, parse_diagram
from ribbonskein.ring import A, D, D_INV, ONE, RingElement
from ribbonskein.skein import RULES, YElement, reduce, structure_constants, y_basis, y_identity, y_mul
from ribbonskein.verify import derive_crossing_coefficients, phi_of, random_diagram, y2_elements, y3_labels

EMPTY = NormalForm(0, ())


def brute_force_partitions(points):
    """All set partitions by restricted growth strings, filtered afterwards."""
    points = list(points)
    out = []

    def rec(i, blocks):
        if i == len(points):
            out.append([tuple(b) for b in blocks])
            return
        for b in blocks:
            b.append(points[i])
            rec(i + 1, blocks)
            b.pop()
        blocks.append([points[i]])
        rec(i + 1, blocks)
        blocks.pop()

    rec(0, [])
    return out


def crosses(p):
    for a in p:
        for b in p:
            if a is b:
                continue
            for x in a:
                for y in a:
                    if x < y and any(x < u < y for u in b) and any(u < x or u > y for u in b):
                        return True
    return False


@pytest.mark.parametrize("n, count", [(1, 1), (2, 3), (3, 15), (4, 91)])
def test_basis_counts_match_brute_force(n, count):
    brute = {tuple(sorted(p)) for p in brute_force_partitions(range(2 * n))
             if all(len(b) >= 2 for b in p) and not crosses(p)}
    ours = {nf.blocks for nf in y_basis(n)}
    assert len(y_basis(n)) == count == len(brute)
    assert ours == brute


def test_basis_is_deterministic_and_bounded():
    assert tuple(y_basis.__wrapped__(3)) == y_basis(3)
    with pytest.raises(ValueError):
        y_basis(6)


def test_crossing_coefficients_are_derived():
    c = derive_crossing_coefficients()
    assert (c["A"], c["B"], c["vertex"]) == (RULES.crossing_a, RULES.crossing_b, RULES.crossing_vertex)
    assert c["A"] == A ** 4 and c["B"] == A ** -4 and c["vertex"] == A ** 2 + A ** -2


def test_reduce_examples():
    assert reduce(GraphDiagram(0, (), (), 1)) == YElement(0, {EMPTY: D * D - 1})
    theta = reduce(theta_diagram())
    assert theta == YElement(0, {EMPTY: (D * D - 1) * (D * D - 2) * D_INV})
    assert theta.coefficient(EMPTY) == spin_network_theta(2, 2, 2)
    el = y2_elements()
    single = reduce(TangleBuilder(2).crossing(0).finish())
    assert single == YElement(2, {el["V"]: A ** 4, el["1"]: A ** -4, el["X"]: A ** 2 + A ** -2})
    assert reduce(parse_diagram("n=0")) == YElement(0, {EMPTY: ONE})


def test_reduce_identity_on_normal_forms():
    for n in (1, 2, 3):
        for nf in y_basis(n):
            assert reduce(nf.to_diagram()) == YElement.basis(nf)


def test_products():
    el = y2_elements()
    one, V, X = (YElement.basis(el[k]) for k in ("1", "V", "X"))
    assert V * V == V.scale(D * D - 1)
    assert X * X == X.scale(D - 2 * D_INV) + V.scale(D_INV ** 2)
    for n in (2, 3):
        for nf in y_basis(n):
            x = YElement.basis(nf)
            assert y_identity(n) * x == x == x * y_identity(n)
    with pytest.raises(ValueError):
        y_mul(V, y_identity(3))


def test_structure_constants():
    t2 = structure_constants(2)
    assert len(t2) == 9
    assert all(t2[(a, b)] == t2[(b, a)] for a in y_basis(2) for b in y_basis(2))
    t3 = structure_constants(3)
    L = y3_labels()
    assert t3[(L["B"], L["C"])] == YElement.basis(L["D"])
    assert t3[(L["C"], L["B"])] == YElement.basis(L["E"])
    with pytest.raises(ValueError):
        structure_constants(4)


@given(st.integers(0, 10 ** 6))
def test_associativity(seed):
    rng = random.Random(seed)
    b = y_basis(3)
    x, y, z = (YElement.basis(rng.choice(b)).scale(A ** rng.randint(-2, 2)) for _ in range(3))
    assert (x * y) * z == x * (y * z)


@given(st.integers(0, 10 ** 6), st.integers(0, 10 ** 6))
def test_order_independence(seed, order_seed):
    g = random_diagram(random.Random(seed))
    assert reduce(g, rng=random.Random(order_seed)) == reduce(g)


@given(st.integers(0, 10 ** 6))
def test_oracle_agreement(seed):
    g = random_diagram(random.Random(seed))
    assert phi_of(reduce(g)) == phi(g)


def test_crossing_cap():
    b = TangleBuilder(2)
    for _ in range(4):
        b.crossing(0)
    with pytest.raises(ValueError, match="cap"):
        reduce(b.finish(), crossing_cap=3)


def test_yelement_rendering():
    el = y2_elements()
    y = YElement(2, {el["V"]: D_INV, el["X"]: ONE, el["1"]: RingElement(0)})
    assert len(y.terms) == 2
    assert str(y) == "1/d^1 {B1 B2 | T1 T2} + 1 {B1 B2 T1 T2}"
    assert str(YElement(2)) == "0"
