import itertools
import json
from fractions import Fraction

import pytest

from ribbonskein import verify
from ribbonskein.ring import RingElement
from ribbonskein.skein import YElement, y_basis, y_identity


def exact_generated_rank(gens, a=3):
    """Span closure with Fraction arithmetic at A = a, independent of the modular search."""
    basis = y_basis(3)
    vec = lambda y: [y.coefficient(nf).evaluate(a) for nf in basis]
    elems = [y_identity(3)] + [YElement.basis(g) for g in gens]
    rows, reps = [], []

    def insert(y):
        v = vec(y)
        for piv, r in rows:
            if v[piv]:
                f = v[piv] / r[piv]
                v = [x - f * z for x, z in zip(v, r)]
        nz = next((i for i, x in enumerate(v) if x), None)
        if nz is None:
            return False
        rows.append((nz, v))
        reps.append(y)
        return True

    frontier = [y for y in elems if insert(y)]
    for _ in range(6):
        new = []
        for y in frontier:
            for g in gens:
                z = y * YElement.basis(g)
                if insert(z):
                    new.append(z)
        if not new:
            break
        frontier = new
    return len(rows)


def test_reports_pass():
    for rep in (verify.verify_rules(), verify.verify_y2(), verify.verify_y3(search=False),
                verify.verify_moves(), verify.verify_injectivity((1, 2))):
        assert rep.ok, rep.text()


def test_records_are_json_lines():
    rep = verify.verify_y2()
    lines = rep.records().splitlines()
    assert len(lines) == len(rep.checks)
    for line, check in zip(lines, rep.checks):
        rec = json.loads(line)
        assert rec["name"] == check.name and rec["status"] == "pass"
    assert rep.text().count("\n") == len(rep.checks)


def test_oracle_corpus_is_deterministic():
    a = verify.oracle_corpus(5, 20, products=(2,))
    b = verify.oracle_corpus(5, 20, products=(2,))
    assert a.ok and a.records() == b.records()


def test_injectivity_ranks():
    assert verify.injectivity_rank(1) == 1
    assert verify.injectivity_rank(2) == 3
    with pytest.raises(ValueError):
        verify.injectivity_rank(4)
    rows, cols, mat = verify.phi_matrix(2)
    assert len(rows) == 3 and len(cols) == 14 and len(mat[0]) == 14


def test_bareiss_detects_dependence():
    rows = verify._rows_over_zd([[RingElement(1), RingElement(2)], [RingElement(2), RingElement(4)]])
    assert verify._bareiss_rank(rows) == 1
    assert verify._fraction_rank([[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]]) == 1


def test_subset_ranks_agree_with_exact_closure():
    L = verify.y3_labels()
    named = [L[k] for k in "ABCFGN"]
    assert exact_generated_rank(named) == 15
    # subsets of matchings only generate the Temperley-Lieb part
    tl_only = [L[k] for k in "ABCDE"] + [L["F"]]
    basis = verify._right_mult_matrices(verify.PRIMES[0])
    idx = [y_basis(3).index(x) for x in tl_only]
    modular = verify._generated_rank(idx, basis[1], verify.PRIMES[0])
    assert modular == exact_generated_rank(tl_only) < 15


def test_expressions_over_r():
    L = verify.y3_labels()
    for k, y in verify.y3_expressions().items():
        assert y == YElement.basis(L[k])
