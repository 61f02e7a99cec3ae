import random

import pytest
from hypothesis import given, strategies as st

from ribbonskein.cabling import (
    evaluate_closed, kink_diagram, kink_factor, phi, quantum_integer, spin_network_theta, theta_diagram,
)
from ribbonskein.diagram import GraphDiagram, NormalForm, TangleBuilder, parse_diagram
from ribbonskein.ring import A, D, D_INV, ONE
from ribbonskein.skein import YElement, reduce, y_basis, y_mul
from ribbonskein.tl import tl_generator, tl_identity, tl_mul, tl_tensor_id
from ribbonskein.verify import phi_of, random_diagram, y2_elements

F1 = tl_identity(2) - tl_generator(2, 1).scale(D_INV)
F1F1 = tl_mul(tl_tensor_id(F1, 0, 2), tl_tensor_id(F1, 2, 0))


def test_phi_generators():
    el = y2_elements()
    one, V, X = (phi(el[k].to_diagram()) for k in ("1", "V", "X"))
    assert one == F1F1
    assert X == tl_mul(tl_mul(F1F1, tl_generator(4, 2)), F1F1)
    assert tl_mul(V, V) == V.scale(D * D - 1)
    assert tl_mul(V, X) == tl_mul(X, V) == V.scale(D - D_INV)
    assert tl_mul(X, X) == X.scale(D - 2 * D_INV) + V.scale(D_INV ** 2)


def test_one_valent_vertex_vanishes():
    g = TangleBuilder(1).vertex(0, 1, 0).vertex(0, 0, 1).finish()
    assert phi(g).is_zero()


def test_closed_values():
    assert evaluate_closed(GraphDiagram(0, (), (), 1)) == D * D - 1
    assert evaluate_closed(theta_diagram()) == (D * D - 1) * (D * D - 2) * D_INV
    assert evaluate_closed(theta_diagram()) == spin_network_theta(2, 2, 2)
    assert evaluate_closed(parse_diagram("n=0")) == ONE
    with pytest.raises(ValueError):
        evaluate_closed(parse_diagram("n=1; strand B1 T1"))


def test_spin_network_formula():
    # theta(a, b, 0) collapses to a loop colored a
    assert spin_network_theta(2, 2, 0) == quantum_integer(3)
    assert spin_network_theta(1, 1, 0) == D
    assert [quantum_integer(k) for k in (1, 2, 3)] == [ONE, D, D * D - 1]
    with pytest.raises(ValueError):
        spin_network_theta(1, 1, 1)


def test_kinks():
    circle = D * D - 1
    assert evaluate_closed(kink_diagram(1)) == A ** 8 * circle
    assert evaluate_closed(kink_diagram(-1)) == A ** -8 * circle
    assert kink_factor(1) == A ** 8 and kink_factor(-1) == A ** -8
    assert evaluate_closed(kink_diagram([1, -1])) == circle
    assert evaluate_closed(kink_diagram(1, 3)) == A ** 24 * circle


@pytest.mark.parametrize("n", [1, 2, 3])
def test_phi_is_multiplicative_on_basis(n):
    images = {nf: phi(nf.to_diagram()) for nf in y_basis(n)}
    for x in y_basis(n):
        for y in y_basis(n):
            prod = y_mul(YElement.basis(x), YElement.basis(y))
            assert phi_of(prod) == tl_mul(images[x], images[y])


def test_projector_absorption():
    # a 2-valent vertex splits a cable into two cables, i.e. inserts a second f_1
    plain = TangleBuilder(2).crossing(0).vertex(0, 2, 2).finish()
    extra = TangleBuilder(2).crossing(0).vertex(1, 1, 1).vertex(0, 2, 2).vertex(0, 1, 1).finish()
    assert phi(plain) == phi(extra)


@given(st.integers(0, 10 ** 6))
def test_closed_evaluation_matches_reduce(seed):
    rng = random.Random(seed)
    g = random_diagram(rng, max_n=0)
    assert reduce(g).coefficient(NormalForm(0, ())) == evaluate_closed(g)


def test_crossing_cap():
    b = TangleBuilder(2)
    for _ in range(3):
        b.crossing(0)
    with pytest.raises(ValueError):
        phi(b.finish(), crossing_cap=2)
