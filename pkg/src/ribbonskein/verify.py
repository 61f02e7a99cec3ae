"""Executable checks of the structural claims about Y_2, Y_3 and the cabling map.

Every check returns a ``Report``: a list of named results with a status and
witness values, renderable as text or as JSON lines (one record per check).
"""
from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .cabling import evaluate_closed, kink_diagram, kink_factor, phi, spin_network_theta, theta_diagram
from .diagram import (
    CROSSING,
    VERTEX,
    GraphDiagram,
    Node,
    NormalForm,
    TangleBuilder,
    contract_edge,
    delete_edge,
    serialize_diagram,
    smooth_crossing,
    stack,
)
from .ring import A, D, D_INV, ONE, LaurentPolynomial, RingElement
from .skein import RULES, RewriteRules, YElement, reduce, structure_constants, y_basis, y_identity, y_mul
from .tl import TLElement, catalan, tl_basis

__all__ = [
    "Check",
    "Report",
    "derive_crossing_coefficients",
    "verify_rules",
    "verify_y2",
    "verify_y3",
    "y3_labels",
    "y2_elements",
    "y3_expressions",
    "generating_subsets",
    "phi_of",
    "phi_matrix",
    "injectivity_rank",
    "injectivity_ranks",
    "verify_injectivity",
    "move_pairs",
    "verify_moves",
    "random_diagram",
    "oracle_corpus",
]

# primes below 2^26 for modular specializations, with A mapped to a fixed residue
PRIMES = (67108859, 67108837)
A_RESIDUE = 3


@dataclass
class Check:
    name: str
    ok: bool
    witness: Dict[str, object] = field(default_factory=dict)

    @property
    def status(self) -> str:
        return "pass" if self.ok else "fail"


@dataclass
class Report:
    title: str
    checks: List[Check] = field(default_factory=list)

    def add(self, name: str, ok: bool, **witness) -> Check:
        c = Check(name, bool(ok), {k: _plain(v) for k, v in witness.items()})
        self.checks.append(c)
        return c

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> List[Check]:
        return [c for c in self.checks if not c.ok]

    def text(self) -> str:
        lines = [f"# {self.title}"]
        for c in self.checks:
            extra = "; ".join(f"{k}={v}" for k, v in c.witness.items())
            lines.append(f"{c.status.upper()} {c.name}" + (f"  [{extra}]" if extra else ""))
        return "\n".join(lines)

    def records(self) -> str:
        return "\n".join(
            json.dumps({"report": self.title, "name": c.name, "status": c.status, "witness": c.witness},
                       sort_keys=True)
            for c in self.checks
        )


def _plain(v):
    if isinstance(v, (bool, int, str)) or v is None:
        return v
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _plain(x) for k, x in v.items()}
    return str(v)


# -- helpers ------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _phi_nf(nf: NormalForm) -> TLElement:
    return phi(nf.to_diagram())


def phi_of(y: YElement) -> TLElement:
    """Phi extended linearly to a YElement."""
    total = TLElement(2 * y.n, {}, D)
    for nf, c in y.terms.items():
        total = total + _phi_nf(nf).scale(c)
    return total


def _nf(n: int, *blocks: Sequence[int]) -> NormalForm:
    return NormalForm(n, tuple(tuple(b) for b in blocks))


def _det3(m) -> RingElement:
    (a, b, c), (d, e, f), (g, h, i) = m
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def _crossing_tangle() -> GraphDiagram:
    # over-strand from B1 to T2; its A-smoothing is the cup-cap V
    return TangleBuilder(2).crossing(0).finish()


def derive_crossing_coefficients() -> Dict[str, RingElement]:
    """Solve Phi(crossing) = c_A Phi(A-smoothing) + c_B Phi(B-smoothing) + c_V Phi(vertex) in tau_4.

    Three coordinates with an invertible minor fix the solution by Cramer's
    rule; the remaining equations are then checked.  Raises ArithmeticError
    if the system has no solution in R.
    """
    g = _crossing_tangle()
    name = g.crossings[0].name
    target = phi(g)
    cols = [phi(smooth_crossing(g, name, v)) for v in ("A", "B", "vertex")]
    basis = tl_basis(4)
    rows = [[c.coefficient(m) for c in cols] for m in basis]
    rhs = [target.coefficient(m) for m in basis]
    for idx in itertools.combinations(range(len(basis)), 3):
        mat = [rows[i] for i in idx]
        det = _det3(mat)
        if not det:
            continue
        sol = []
        for j in range(3):
            mj = [[rhs[i] if k == j else rows[i][k] for k in range(3)] for i in idx]
            sol.append(_det3(mj).exact_div(det))
        break
    else:
        raise ArithmeticError("the three smoothings have linearly dependent images")
    for r, b in zip(rows, rhs):
        if sum((c * s for c, s in zip(r, sol)), RingElement(0)) != b:
            raise ArithmeticError("crossing image is not in the span of its smoothings")
    return {"A": sol[0], "B": sol[1], "vertex": sol[2]}


# -- the rewrite constants against the oracle -----------------------------------

def _loop_tangle() -> GraphDiagram:
    # a 4-valent vertex on a vertical strand whose two middle ports form an empty loop
    return TangleBuilder(1).cup(1).vertex(0, 3, 1).finish()


def verify_rules(rules: RewriteRules = RULES) -> Report:
    rep = Report("rewrite rules vs cabling oracle")
    derived = derive_crossing_coefficients()
    rep.add("crossing coefficients", (derived["A"], derived["B"], derived["vertex"])
            == (rules.crossing_a, rules.crossing_b, rules.crossing_vertex),
            c_A=derived["A"], c_B=derived["B"], c_V=derived["vertex"])
    circle = GraphDiagram(0, (), (), 1)
    rep.add("free circle", evaluate_closed(circle) == rules.circle, value=evaluate_closed(circle))
    ident1 = phi(TangleBuilder(1).finish())
    lp = phi(_loop_tangle())
    rep.add("empty loop", lp == ident1.scale(rules.loop), value=rules.loop)
    v2 = phi(TangleBuilder(1).vertex(0, 1, 1).finish())
    rep.add("2-valent vertex", v2 == ident1.scale(rules.valence2), value=rules.valence2)
    v1 = phi(TangleBuilder(1).vertex(0, 1, 0).vertex(0, 0, 1).finish())
    rep.add("1-valent vertex", v1.is_zero())
    # a 2-valent vertex with a loop: removing the loop first leaves an isolated vertex
    vl = GraphDiagram.checked(0, [Node("v", VERTEX, 2)], [(("v", 0), ("v", 1))])
    rep.add("isolated vertex", evaluate_closed(vl) == rules.loop * rules.isolated,
            value=rules.isolated)
    h = TangleBuilder(2).vertex(0, 2, 1).vertex(0, 1, 2).finish()
    e = next(s for s in h.strands if not any(x[0] in ("B", "T") for x in s))
    lhs = phi(h)
    rhs = phi(contract_edge(h, e)).scale(rules.contract) + phi(delete_edge(h, e)).scale(rules.delete)
    rep.add("edge contraction/deletion", lhs == rhs, contract=rules.contract, delete=rules.delete)
    return rep


# -- Y_2 -------------------------------------------------------------------------

def y2_elements() -> Dict[str, NormalForm]:
    return {
        "1": _nf(2, (0, 3), (1, 2)),
        "V": _nf(2, (0, 1), (2, 3)),
        "X": _nf(2, (0, 1, 2, 3)),
    }


def verify_y2() -> Report:
    rep = Report("Y_2 relations")
    el = y2_elements()
    one, V, X = (YElement.basis(el[k]) for k in ("1", "V", "X"))
    basis = set(y_basis(2))
    rep.add("basis is {1, V, X}", basis == set(el.values()) and len(y_basis(2)) == 3, size=len(basis))
    table = structure_constants(2)

    def prod(a, b):
        return table[(a, b)]

    vv = prod(el["V"], el["V"])
    rep.add("V^2 = (d^2-1) V", vv == V.scale(D * D - 1), coefficient=vv.coefficient(el["V"]))
    vx, xv = prod(el["V"], el["X"]), prod(el["X"], el["V"])
    rep.add("VX = (d-d^-1) V", vx == V.scale(D - D_INV), value=vx)
    rep.add("XV = VX", xv == vx, value=xv)
    xx = prod(el["X"], el["X"])
    want = X.scale(D - 2 * D_INV) + V.scale(D_INV * D_INV)
    rep.add("X^2 = (d-2d^-1) X + d^-2 V", xx == want,
            x_coefficient=xx.coefficient(el["X"]).d_str(), v_coefficient=xx.coefficient(el["V"]).d_str())
    ok_id = all(prod(el["1"], b) == YElement.basis(b) == prod(b, el["1"]) for b in basis)
    rep.add("identity rows", ok_id)
    comm = all(prod(a, b) == prod(b, a) for a in basis for b in basis)
    rep.add("commutative", comm)
    return rep


# -- Y_3 -------------------------------------------------------------------------

def y3_labels() -> Dict[str, NormalForm]:
    """Letters for the fifteen normal forms on six points (B1 B2 B3 = 0 1 2, T3 T2 T1 = 3 4 5)."""
    return {
        "A": _nf(3, (0, 5), (1, 4), (2, 3)),
        "B": _nf(3, (0, 1), (4, 5), (2, 3)),
        "C": _nf(3, (1, 2), (3, 4), (0, 5)),
        "D": _nf(3, (4, 5), (1, 2), (0, 3)),
        "E": _nf(3, (3, 4), (0, 1), (2, 5)),
        "F": _nf(3, (1, 2, 3, 4), (0, 5)),
        "G": _nf(3, (0, 1, 4, 5), (2, 3)),
        "H": _nf(3, (0, 1, 5), (2, 3, 4)),
        "I": _nf(3, (0, 4, 5), (1, 2, 3)),
        "J": _nf(3, (0, 1, 2, 3), (4, 5)),
        "K": _nf(3, (0, 1, 2, 5), (3, 4)),
        "L": _nf(3, (0, 3, 4, 5), (1, 2)),
        "M": _nf(3, (2, 3, 4, 5), (0, 1)),
        "N": _nf(3, (0, 1, 2, 3, 4, 5)),
        "P": _nf(3, (0, 1, 2), (3, 4, 5)),
    }


def _right_mult_matrices(p: int) -> Tuple[List[NormalForm], np.ndarray]:
    basis = list(y_basis(3))
    index = {nf: i for i, nf in enumerate(basis)}
    table = structure_constants(3)
    size = len(basis)
    mats = np.zeros((size, size, size), dtype=np.int64)  # mats[j][i] = e_i * e_j
    for (a, b), prod in table.items():
        for nf, c in prod.terms.items():
            mats[index[b], index[a], index[nf]] = c.evaluate_mod(A_RESIDUE, p)
    return basis, mats


def _row_reduce_mod(m: np.ndarray, p: int) -> np.ndarray:
    """Row echelon basis of the row space of m over F_p."""
    m = m % p
    rows, cols = m.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            m[[r, k]] = m[[k, r]]
        inv = pow(int(m[r, c]), p - 2, p)
        m[r] = (m[r] * inv) % p
        f = m[:, c].copy()
        f[r] = 0
        m = (m - np.outer(f, m[r]) % p) % p
        r += 1
    return m[:r]


def _generated_rank(gens: Sequence[int], mats: np.ndarray, p: int, rounds: int = 6) -> int:
    size = mats.shape[1]
    one = np.zeros((1, size), dtype=np.int64)
    one[0, _identity_index()] = 1
    span = _row_reduce_mod(np.vstack([one] + [np.eye(size, dtype=np.int64)[[g]] for g in gens]), p)
    for _ in range(rounds):
        if span.shape[0] == size:
            break
        new = [span] + [(span @ mats[g]) % p for g in gens]
        nxt = _row_reduce_mod(np.vstack(new), p)
        if nxt.shape[0] == span.shape[0]:
            break
        span = nxt
    return span.shape[0]


def _identity_index() -> int:
    (one,) = y_identity(3).terms
    return y_basis(3).index(one)


@lru_cache(maxsize=None)
def _subset_search(size: int, rounds: int):
    found, disagreements = [], 0
    data = [_right_mult_matrices(p) for p in PRIMES]
    basis = data[0][0]
    for gens in itertools.combinations(range(len(basis)), size):
        full = [_generated_rank(gens, mats, p, rounds) == len(basis) for p, (_, mats) in zip(PRIMES, data)]
        if any(full):
            found.append(tuple(basis[g] for g in gens))
        disagreements += full[0] != full[1]
    return tuple(found), disagreements


def generating_subsets(size: int = 6, rounds: int = 6) -> Tuple[Tuple[NormalForm, ...], ...]:
    """All ``size``-subsets of y_basis(3) whose generated unital subalgebra has rank 15.

    Ranks are computed after specializing A to a residue modulo a prime; full
    rank at one specialization certifies full rank over the fraction field.
    Two primes are used and any disagreement between them is reported.
    """
    return tuple(_subset_search(size, rounds)[0])


def subset_search_disagreements(size: int = 6, rounds: int = 6) -> int:
    return _subset_search(size, rounds)[1]


def _label_of(nf: NormalForm, labels: Dict[str, NormalForm]) -> str:
    for k, v in labels.items():
        if v == nf:
            return k
    return str(nf)


def y3_expressions() -> Dict[str, YElement]:
    """Every letter written through products of A, B, C, F, G, N with coefficients in R."""
    L = {k: YElement.basis(v) for k, v in y3_labels().items()}
    B, C, F, G, N = L["B"], L["C"], L["F"], L["G"], L["N"]
    return {
        "A": L["A"],
        "B": B,
        "C": C,
        "D": B * C,
        "E": C * B,
        "F": F,
        "G": G,
        "H": (N - F * G).scale(D),
        "I": (N - G * F).scale(D),
        "J": B * F,
        "K": C * G,
        "L": G * C,
        "M": F * B,
        "N": N,
        "P": (N - F * B * C * G).scale(D),
    }


def verify_y3(search: bool = True) -> Report:
    rep = Report("Y_3 generation")
    labels = y3_labels()
    basis = y_basis(3)
    rep.add("basis size", len(basis) == 15 and set(labels.values()) == set(basis), size=len(basis))
    L = {k: YElement.basis(v) for k, v in labels.items()}
    bc, cb = L["B"] * L["C"], L["C"] * L["B"]
    rep.add("D = BC", bc == L["D"], value=bc)
    rep.add("E = CB", cb == L["E"], value=cb)
    fg, gf, mk = L["F"] * L["G"], L["G"] * L["F"], L["M"] * L["K"]
    rep.add("FG = N - d^-1 H", fg == L["N"] - L["H"].scale(D_INV), FG=fg)
    rep.add("GF = N - d^-1 I", gf == L["N"] - L["I"].scale(D_INV), GF=gf)
    rep.add("MK = N - d^-1 P", mk == L["N"] - L["P"].scale(D_INV), MK=mk)
    rep.add("M = FB, K = CG", L["F"] * L["B"] == L["M"] and L["C"] * L["G"] == L["K"])
    rep.add("P = d(N - FBCG)", (L["N"] - L["F"] * L["B"] * L["C"] * L["G"]).scale(D) == L["P"])
    expr = y3_expressions()
    bad = [k for k, v in expr.items() if v != L[k]]
    rep.add("all 15 from {A,B,C,F,G,N} over R", not bad, mismatched=bad)
    if search:
        subsets = generating_subsets()
        named = frozenset(labels[k] for k in "ABCFGN")
        names = sorted("".join(sorted(_label_of(nf, labels) for nf in s)) for s in subsets)
        rep.add("generating 6-subsets exist", bool(subsets), count=len(subsets))
        rep.add("both primes agree", subset_search_disagreements() == 0)
        rep.add("{A,B,C,F,G,N} generates", named in {frozenset(s) for s in subsets})
        rep.add("generating 6-subsets", True, subsets=names)
    return rep


# -- injectivity -----------------------------------------------------------------

def phi_matrix(n: int) -> Tuple[List[NormalForm], list, List[List[RingElement]]]:
    """Rows y_basis(n), columns tl_basis(2n), entries the coefficients of Phi."""
    rows = list(y_basis(n))
    cols = tl_basis(2 * n)
    mat = [[_phi_nf(nf).coefficient(m) for m in cols] for nf in rows]
    return rows, list(cols), mat


def _rows_over_zd(mat: List[List[RingElement]]) -> List[List[LaurentPolynomial]]:
    """Write entries as polynomials in d and clear negative powers row by row."""
    out = []
    for row in mat:
        polys = []
        for e in row:
            exp = e.d_expansion()
            if exp is None:
                raise ValueError(f"entry {e} is not a Laurent polynomial in d")
            polys.append(LaurentPolynomial(exp))
        low = min((p.valuation() for p in polys if p), default=0)
        out.append([p.shift(-low) for p in polys])
    return out


def _bareiss_rank(mat: List[List[LaurentPolynomial]]) -> int:
    m = [row[:] for row in mat]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    prev = LaurentPolynomial.constant(1)
    rank = 0
    for c in range(ncols):
        if rank == nrows:
            break
        cands = [r for r in range(rank, nrows) if m[r][c]]
        if not cands:
            continue
        k = min(cands, key=lambda r: (m[r][c].degree(), len(m[r][c].coefficients)))
        m[rank], m[k] = m[k], m[rank]
        piv = m[rank][c]
        for r in range(rank + 1, nrows):
            a = m[r][c]
            new = m[r][:]
            for j in range(c, ncols):
                v = piv * m[r][j] - a * m[rank][j]
                q = v.exact_div(prev)
                if q is None:
                    raise ArithmeticError("fraction-free elimination produced an inexact division")
                new[j] = q
            m[r] = new
        prev = piv
        rank += 1
    return rank


def _fraction_rank(mat: List[List[Fraction]]) -> int:
    m = [row[:] for row in mat]
    rank = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        k = next((r for r in range(rank, len(m)) if m[r][c] != 0), None)
        if k is None:
            continue
        m[rank], m[k] = m[k], m[rank]
        inv = 1 / m[rank][c]
        for r in range(rank + 1, len(m)):
            f = m[r][c] * inv
            if f:
                m[r] = [x - f * y for x, y in zip(m[r], m[rank])]
        rank += 1
    return rank


def injectivity_ranks(n: int) -> Tuple[int, int]:
    """(exact rank over Q(d), rank after evaluating at A = 3) of the Phi-matrix."""
    if n > 3:
        raise ValueError("the Phi-matrix rank is only computed for n <= 3")
    _, _, mat = phi_matrix(n)
    exact = _bareiss_rank(_rows_over_zd(mat))
    numeric = _fraction_rank([[e.evaluate(3) for e in row] for row in mat])
    return exact, numeric


def injectivity_rank(n: int) -> int:
    exact, numeric = injectivity_ranks(n)
    if exact != numeric:
        raise AssertionError(f"symbolic rank {exact} and evaluated rank {numeric} disagree")
    return exact


def verify_injectivity(ns: Iterable[int] = (1, 2, 3)) -> Report:
    rep = Report("Phi injectivity")
    for n in ns:
        exact, numeric = injectivity_ranks(n)
        rows = len(y_basis(n))
        rep.add(f"rank n={n}", exact == numeric == rows, exact=exact, at_A_3=numeric, rows=rows,
                columns=catalan(2 * n))
    return rep


# -- moves -----------------------------------------------------------------------

def move_pairs() -> Dict[str, Tuple[GraphDiagram, GraphDiagram]]:
    """Diagram pairs related by an extended Reidemeister move."""
    tb = TangleBuilder
    pairs = {
        "RII": (tb(2).crossing(0).crossing(0, False).finish(), tb(2).finish()),
        "RII reversed": (tb(2).crossing(0, False).crossing(0).finish(), tb(2).finish()),
        "RIII": (tb(3).crossing(0).crossing(1).crossing(0).finish(),
                 tb(3).crossing(1).crossing(0).crossing(1).finish()),
        "RIII negative": (tb(3).crossing(0, False).crossing(1, False).crossing(0, False).finish(),
                          tb(3).crossing(1, False).crossing(0, False).crossing(1, False).finish()),
        # a strand from the right passes over (then under) a coupon
        "coupon slide over": (tb(3).vertex(0, 2, 2).crossing(1, False).crossing(0, False).finish(),
                              tb(3).crossing(1, False).crossing(0, False).vertex(1, 2, 2).finish()),
        "coupon slide under": (tb(3).vertex(0, 2, 2).crossing(1).crossing(0).finish(),
                               tb(3).crossing(1).crossing(0).vertex(1, 2, 2).finish()),
        "coupon slide trivalent": (
            tb(3).vertex(0, 2, 1).crossing(0, False).vertex(1, 1, 2).finish(),
            tb(3).crossing(1, False).crossing(0, False).vertex(1, 2, 1).vertex(1, 1, 2).finish()),
        "kink-antikink": (tb(1).cup(1).crossing(0).cap(1).cup(1).crossing(0, False).cap(1).finish(),
                          tb(1).finish()),
        "kink-antikink closed": (kink_diagram([1, -1]), GraphDiagram(0, (), (), 1)),
    }
    return pairs


def verify_moves() -> Report:
    rep = Report("move invariance")
    for name, (g, h) in move_pairs().items():
        rg, rh = reduce(g), reduce(h)
        rep.add(name, rg == rh and phi(g) == phi(h), value=rg)
    circle = evaluate_closed(GraphDiagram(0, (), (), 1))
    for sign, want in ((1, A ** 8), (-1, A ** -8)):
        value = reduce(kink_diagram(sign)).coefficient(NormalForm(0, ()))
        rep.add(f"kink {'+' if sign > 0 else '-'}", value == want * circle and kink_factor(sign) == want,
                value=value, factor=want)
    strand = reduce(TangleBuilder(1).finish())
    for positive, want in ((False, A ** 8), (True, A ** -8)):
        kinked = reduce(TangleBuilder(1).cup(1).crossing(0, positive).cap(1).finish())
        rep.add(f"kink on a strand ({'positive' if positive else 'negative'} layer)",
                kinked == strand.scale(want), value=kinked)
    return rep


# -- randomized oracle corpus ------------------------------------------------------

def _count_edges(g: GraphDiagram) -> int:
    return sum(1 for a, b in g.strands if a[0] not in ("B", "T") and b[0] not in ("B", "T"))


def random_diagram(rng: random.Random, max_n: int = 3, max_crossings: int = 4,
                   max_vertices: int = 3, max_edges: int = 6, max_width: int = 6) -> GraphDiagram:
    """A random planar diagram assembled from crossings, coupons, cups and caps."""
    while True:
        n = rng.randint(0, max_n)
        b = TangleBuilder(n)
        crossings = vertices = 0
        for _ in range(rng.randint(1, 9)):
            w = len(b.positions)
            ops = []
            if w >= 2 and crossings < max_crossings:
                ops += ["crossing"] * 3
            if vertices < max_vertices:
                ops += ["vertex"] * 2
            if w >= 2:
                ops.append("cap")
            if w + 2 <= max_width:
                ops.append("cup")
            if rng.random() < 0.05:
                b.circle()
            op = rng.choice(ops)
            if op == "crossing":
                b.crossing(rng.randrange(w - 1), rng.random() < 0.5)
                crossings += 1
            elif op == "vertex":
                k_in = rng.randint(0, min(w, 3))
                k_out = rng.randint(0, max(0, min(3, max_width - (w - k_in))))
                if k_in + k_out < 2 and rng.random() < 0.9:
                    k_out = 2 - k_in  # keep 1-valent coupons rare, they kill the whole term
                b.vertex(rng.randint(0, w - k_in), k_in, k_out)
                vertices += 1
            elif op == "cap":
                b.cap(rng.randrange(w - 1))
            else:
                b.cup(rng.randint(0, w))
        w = len(b.positions)
        if (w - n) % 2:
            if vertices >= max_vertices:
                continue
            if w >= 2 and w > n:
                b.vertex(rng.randint(0, w - 2), 2, 1)
            elif w >= 1:
                b.vertex(rng.randint(0, w - 1), 1, 2)
            else:
                b.vertex(0, 0, 3)
            vertices += 1
        while len(b.positions) > n:
            b.cap(rng.randrange(len(b.positions) - 1))
        while len(b.positions) < n:
            b.cup(rng.randint(0, len(b.positions)))
        g = b.finish()
        if _count_edges(g) <= max_edges:
            return g


def _closed_extras() -> Dict[str, Tuple[GraphDiagram, RingElement]]:
    bigon = GraphDiagram.checked(0, [Node("u", VERTEX, 2), Node("v", VERTEX, 2)],
                                 [(("u", 0), ("v", 1)), (("u", 1), ("v", 0))])
    return {
        "theta": (theta_diagram(), spin_network_theta(2, 2, 2)),
        "bigon": (bigon, D * D - 1),
    }


def oracle_corpus(seed: int = 1, count: int = 100, products: Sequence[int] = (2, 3)) -> Report:
    """Check Phi(reduce(g)) = Phi(g) on random diagrams and on all basis-pair products."""
    rep = Report(f"oracle corpus seed={seed} count={count}")
    rng = random.Random(seed)
    bad = []
    for i in range(count):
        g = random_diagram(rng)
        if phi_of(reduce(g)) != phi(g):
            bad.append(serialize_diagram(g))
    rep.add("random diagrams", not bad, count=count, counterexamples=bad[:3])
    for n in products:
        bad = []
        basis = y_basis(n)
        for x in basis:
            for y in basis:
                g = stack(x.to_diagram(), y.to_diagram())
                if phi_of(reduce(g)) != phi(g):
                    bad.append(f"{x} * {y}")
        rep.add(f"basis products n={n}", not bad, pairs=len(basis) ** 2, counterexamples=bad[:3])
    for name, (g, want) in _closed_extras().items():
        r = reduce(g).coefficient(NormalForm(0, ()))
        rep.add(name, r == want == evaluate_closed(g), value=r)
    return rep
