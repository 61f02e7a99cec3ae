"""Acceptance criteria, one test each; every test prints a PASS/FAIL line."""
import random
import time

from ribbonskein import skein, verify
from ribbonskein.cabling import evaluate_closed, phi, spin_network_theta, theta_diagram
from ribbonskein.diagram import GraphDiagram, NormalForm, TangleBuilder
from ribbonskein.ring import D, D_INV
from ribbonskein.skein import YElement, reduce, y_basis
from ribbonskein.tl import QD_D, jones_wenzl, markov_trace, tl_basis, tl_generator, tl_mul, to_ring

from conftest import record_criterion
from test_skein import brute_force_partitions, crosses

EMPTY = NormalForm(0, ())


def _cold_caches():
    skein._basis_product.cache_clear()
    skein._ENGINES.clear()
    verify._phi_nf.cache_clear()


def test_criterion_01_y2_relations():
    _cold_caches()
    start = time.perf_counter()
    el = verify.y2_elements()
    V, X = YElement.basis(el["V"]), YElement.basis(el["X"])
    checks = [
        V * V == V.scale(D * D - 1),
        V * X == V.scale(D - D_INV),
        X * V == V.scale(D - D_INV),
        X * X == X.scale(D - 2 * D_INV) + V.scale(D_INV * D_INV),
    ]
    elapsed = time.perf_counter() - start
    ok = all(checks) and elapsed < 1.0
    record_criterion(1, "V^2, VX = XV, X^2 relations in Y_2", ok, f"{elapsed:.3f}s")
    assert ok


def test_criterion_02_basis_counts():
    counts = {n: len(y_basis(n)) for n in (2, 3, 4)}
    brute = {}
    for n in (2, 3, 4):
        brute[n] = sum(1 for p in brute_force_partitions(range(2 * n))
                       if all(len(b) >= 2 for b in p) and not crosses(p))
    ok = counts == brute == {2: 3, 3: 15, 4: 91}
    record_criterion(2, "|y_basis| = 3, 15 (and 91 for n=4), brute force agrees", ok, str(counts))
    assert ok


def test_criterion_03_y3_generation():
    rep = verify.verify_y3(search=True)
    again = verify.verify_y3(search=False)
    pinned = {c.name: c.witness for c in rep.checks}
    stable = all(pinned[c.name] == c.witness for c in again.checks)
    L = verify.y3_labels()
    count = pinned["generating 6-subsets exist"]["count"]
    ok = rep.ok and stable and count >= 1
    record_criterion(3, "a 6-subset generates Y_3; D = BC, E = CB; H, I, P identities stable", ok,
                     f"{count} generating subsets; FG = {pinned['FG = N - d^-1 H']['FG']}")
    assert ok, rep.text()


def test_criterion_04_injectivity():
    _cold_caches()
    ranks = {}
    start = time.perf_counter()
    for n in (1, 2, 3):
        t0 = time.perf_counter()
        ranks[n] = verify.injectivity_ranks(n)
        if n == 3:
            t3 = time.perf_counter() - t0
    ok = ranks == {1: (1, 1), 2: (3, 3), 3: (15, 15)} and t3 < 60
    record_criterion(4, "Phi-matrix rank 1, 3, 15 exactly and at A=3", ok,
                     f"n=3 in {t3:.2f}s, total {time.perf_counter() - start:.2f}s")
    assert ok


def test_criterion_05_oracle_agreement():
    rep = verify.oracle_corpus(seed=1, count=100, products=(2, 3))
    ok = rep.ok
    record_criterion(5, "Phi(reduce(D)) = Phi(D) on 100 random diagrams and all basis products", ok)
    assert ok, rep.text()


def test_criterion_06_jones_wenzl():
    ok = True
    for k in range(1, 6):
        n = k + 1
        f = jones_wenzl(n, k)
        ok &= tl_mul(f, f) == f
        for j in range(1, k + 1):
            u = tl_generator(n, j, QD_D)
            ok &= tl_mul(u, f).is_zero() and tl_mul(f, u).is_zero()
    ok &= to_ring(markov_trace(jones_wenzl(2, 1))) == D * D - 1
    record_criterion(6, "f_k^2 = f_k, U_j f_k = f_k U_j = 0 for k <= 5; trace(f_1) = d^2 - 1", ok)
    assert ok


def test_criterion_07_tl_dimensions():
    dims = [len(tl_basis(n)) for n in range(1, 7)]
    ok = dims == [1, 2, 5, 14, 42, 132]
    record_criterion(7, "|tl_basis(n)| = 1, 2, 5, 14, 42, 132", ok, str(dims))
    assert ok


def test_criterion_08_moves():
    rep = verify.verify_moves()
    record_criterion(8, "RII, RIII, coupon slides, kink-antikink; kink factor A^(+-8)", rep.ok,
                     f"{len(rep.checks)} checks")
    assert rep.ok, rep.text()


def test_criterion_09_closed_invariants():
    circle = reduce(GraphDiagram(0, (), (), 1)).coefficient(EMPTY)
    theta = reduce(theta_diagram()).coefficient(EMPTY)
    want = (D * D - 1) * (D * D - 2) * D_INV
    ok = (circle == D * D - 1 == evaluate_closed(GraphDiagram(0, (), (), 1))
          and theta == want == spin_network_theta(2, 2, 2) == evaluate_closed(theta_diagram()))
    record_criterion(9, "circle = d^2 - 1, theta = (d^2-1)(d^2-2)/d = theta(2,2,2)", ok, str(theta))
    assert ok


def confluence_diagram() -> GraphDiagram:
    return (TangleBuilder(2).crossing(0).vertex(0, 2, 2).crossing(0, False)
            .crossing(0).vertex(0, 2, 2).crossing(0).finish())


def test_criterion_10_confluence():
    g = confluence_diagram()
    assert len(g.crossings) == 4 and len(g.vertices) == 2
    reference = reduce(g)
    results = {str(reduce(g, rng=random.Random(seed))) for seed in range(50)}
    ok = results == {str(reference)} and phi(g) == verify.phi_of(reference)
    record_criterion(10, "50 random reduction orders agree on a 4-crossing, 2-vertex diagram", ok)
    assert ok
