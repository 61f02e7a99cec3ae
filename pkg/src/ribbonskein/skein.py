"""Skein reduction of ribbon graph diagrams to normal forms, and the algebra Y_n.

Rewrite rules (each local; extended linearly):

* crossing  = A^4 (A-smoothing) + A^-4 (B-smoothing) + (A^2 + A^-2) (4-valent vertex)
* edge e between distinct vertices:  D = D/e - d^-1 (D - e)
* free circle = d^2 - 1
* empty loop at a vertex = d - d^-1
* 2-valent vertex = plain strand
* 1-valent vertex = 0
* isolated vertex = d

A-smoothing joins crossing ports (0,1),(2,3); B-smoothing joins (0,3),(1,2).
What remains is a non-crossing partition of the boundary without singletons.
"""
from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from .diagram import (
    CROSSING,
    VERTEX,
    DiagramError,
    GraphDiagram,
    NormalForm,
    _Map,
    _normal_form_of_map,
    stack,
)
from .ring import A, D, D_INV, ONE, RingElement

__all__ = [
    "RewriteRules",
    "RULES",
    "YElement",
    "reduce",
    "y_basis",
    "y_mul",
    "y_identity",
    "structure_constants",
]


@dataclass(frozen=True)
class RewriteRules:
    crossing_a: RingElement = A ** 4
    crossing_b: RingElement = A ** -4
    crossing_vertex: RingElement = A ** 2 + A ** -2
    contract: RingElement = ONE
    delete: RingElement = -D_INV
    loop: RingElement = D - D_INV
    circle: RingElement = D * D - 1
    valence2: RingElement = ONE
    isolated: RingElement = D


RULES = RewriteRules()


class YElement:
    """A linear combination of normal forms with coefficients in R."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Optional[Dict[NormalForm, RingElement]] = None):
        self.n = n
        self.terms: Dict[NormalForm, RingElement] = {}
        if terms:
            for nf, c in terms.items():
                if nf.n != n:
                    raise ValueError("all normal forms must share n")
                if c:
                    self.terms[nf] = c

    @classmethod
    def basis(cls, nf: NormalForm) -> "YElement":
        return cls(nf.n, {nf: ONE})

    def _check(self, other: "YElement") -> None:
        if self.n != other.n:
            raise ValueError(f"arity mismatch: {self.n} vs {other.n}")

    def __add__(self, other: "YElement") -> "YElement":
        self._check(other)
        out = dict(self.terms)
        for nf, c in other.terms.items():
            s = out.get(nf, RingElement(0)) + c
            if s:
                out[nf] = s
            else:
                out.pop(nf, None)
        return YElement(self.n, out)

    def __neg__(self) -> "YElement":
        return YElement(self.n, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "YElement") -> "YElement":
        return self + (-other)

    def scale(self, c) -> "YElement":
        return YElement(self.n, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, YElement):
            return y_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, YElement):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    __hash__ = None

    def coefficient(self, nf: NormalForm) -> RingElement:
        return self.terms.get(nf, RingElement(0))

    def is_zero(self) -> bool:
        return not self.terms

    def lines(self) -> List[str]:
        return [f"{c}  {nf}" for nf, c in sorted(self.terms.items(), key=lambda t: t[0].blocks)]

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c} {nf}" for nf, c in sorted(self.terms.items(), key=lambda t: t[0].blocks))

    def __repr__(self) -> str:
        return f"YElement(n={self.n}, {self})"


# -- canonical codes for memoization --------------------------------------

def _encode(m: _Map, order: List[int], entry: Dict[int, int]) -> tuple:
    n2 = 2 * m.n
    label = {v: i for i, v in enumerate(order)}
    out = []
    for v in order:
        r = m.rot[v]
        deg = len(r)
        e = entry[v]
        refs = []
        for t in range(deg):
            y = m.mate[r[(e + t) % deg]]
            if y < n2:
                refs.append(-1 - y)
            else:
                w = m.owner[y]
                rw = m.rot[w]
                refs.append(label[w] * 64 + (rw.index(y) - entry[w]) % len(rw))
        out.append((m.kind[v] == CROSSING, tuple(refs)))
    return tuple(out)


def _entry_port(m: _Map, w: int, y: int) -> int:
    # a crossing only has the rotational symmetry by two ports
    p = m.rot[w].index(y)
    return p - p % 2 if m.kind[w] == CROSSING else p


def _bfs(m: _Map, order: List[int], entry: Dict[int, int]) -> None:
    n2 = 2 * m.n
    i = 0
    while i < len(order):
        v = order[i]
        r = m.rot[v]
        e = entry[v]
        for t in range(len(r)):
            y = m.mate[r[(e + t) % len(r)]]
            if y >= n2:
                w = m.owner[y]
                if w not in entry:
                    entry[w] = _entry_port(m, w, y)
                    order.append(w)
        i += 1


def _boundary_code(m: _Map) -> tuple:
    n2 = 2 * m.n
    order: List[int] = []
    entry: Dict[int, int] = {}
    for h in range(n2):
        y = m.mate[h]
        if y >= n2:
            w = m.owner[y]
            if w not in entry:
                entry[w] = _entry_port(m, w, y)
                order.append(w)
    _bfs(m, order, entry)
    if len(order) != len(m.rot):
        raise AssertionError("closed components must be split off before encoding")
    bmates = tuple(m.mate[h] if m.mate[h] < n2 else -1 for h in range(n2))
    return (m.n, bmates, _encode(m, order, entry))


def _closed_code(m: _Map) -> tuple:
    best = None
    for v, r in m.rot.items():
        step = 2 if m.kind[v] == CROSSING else 1
        for p in range(0, max(len(r), 1), step):
            order, entry = [v], {v: p}
            _bfs(m, order, entry)
            code = _encode(m, order, entry)
            if best is None or code < best:
                best = code
    return (0, best)


def _split_closed(m: _Map) -> List[_Map]:
    """Detach every component that does not touch the boundary."""
    n2 = 2 * m.n
    reached = set()
    stackv = []
    for h in range(n2):
        y = m.mate[h]
        if y >= n2:
            stackv.append(m.owner[y])
    while stackv:
        v = stackv.pop()
        if v in reached:
            continue
        reached.add(v)
        for x in m.rot[v]:
            y = m.mate[x]
            if y >= n2:
                stackv.append(m.owner[y])
    comps: List[_Map] = []
    rest = [v for v in m.rot if v not in reached]
    seen = set()
    for v0 in rest:
        if v0 in seen:
            continue
        members = []
        stackv = [v0]
        while stackv:
            v = stackv.pop()
            if v in seen:
                continue
            seen.add(v)
            members.append(v)
            for x in m.rot[v]:
                stackv.append(m.owner[m.mate[x]])
        sub = _Map(0)
        sub.next_h = m.next_h
        sub.next_v = m.next_v
        for v in members:
            sub.kind[v] = m.kind.pop(v)
            r = m.rot.pop(v)
            sub.rot[v] = r
            for x in r:
                sub.owner[x] = m.owner.pop(x)
                sub.mate[x] = m.mate.pop(x)
        comps.append(sub)
    return comps


# -- the engine -------------------------------------------------------------------------

def _simplify(m: _Map, rules: RewriteRules) -> Optional[RingElement]:
    """Apply the non-branching rules to exhaustion; return the scalar, None if zero."""
    c = ONE
    changed = True
    while changed:
        changed = False
        for v in list(m.rot):
            if m.kind[v] != VERTEX:
                continue
            deg = len(m.rot[v])
            if deg == 0:
                m.drop_node(v)
                c = c * rules.isolated
                changed = True
            elif deg == 1:
                return None
            elif deg == 2:
                m.smooth_valence2(v)
                c = c * rules.valence2
                changed = True
            else:
                loops = m.empty_loops(v)
                if loops:
                    m.remove_loop(v, loops[0])
                    c = c * rules.loop
                    changed = True
        if m.circles:
            c = c * rules.circle ** m.circles
            m.circles = 0
    return c


def _pick_edge(m: _Map, edges: List[int]) -> int:
    # prefer parallel edges: contracting one turns the others into loops
    best, best_key = edges[0], None
    for h in edges:
        u, w = m.owner[h], m.owner[m.mate[h]]
        par = sum(1 for x in m.rot[u] if m.owner.get(m.mate[x]) == w)
        key = (-par, len(m.rot[u]) + len(m.rot[w]), h)
        if best_key is None or key < best_key:
            best, best_key = h, key
    return best


class _Engine:
    def __init__(self, rules: RewriteRules):
        self.rules = rules
        self.memo: Dict[tuple, Dict[NormalForm, RingElement]] = {}
        self.lock = threading.Lock()

    def evaluate(self, m: _Map) -> Dict[NormalForm, RingElement]:
        c = _simplify(m, self.rules)
        if c is None:
            return {}
        for comp in _split_closed(m):
            s = self._closed(comp)
            c = c * s
            if not c:
                return {}
        key = _boundary_code(m)
        res = self.memo.get(key)
        if res is None:
            res = self._branch(m)
            with self.lock:
                if len(self.memo) > 500_000:
                    self.memo.clear()
                self.memo[key] = res
        if c == ONE:
            return res
        return {nf: v * c for nf, v in res.items()}

    def _closed(self, comp: _Map) -> RingElement:
        key = _closed_code(comp)
        res = self.memo.get(key)
        if res is None:
            res = self._branch(comp)
            with self.lock:
                self.memo[key] = res
        return res.get(NormalForm(0, ()), RingElement(0))

    def _branch(self, m: _Map) -> Dict[NormalForm, RingElement]:
        r = self.rules
        crossings = [v for v in m.rot if m.kind[v] == CROSSING]
        if crossings:
            v = min(crossings)
            branches = []
            for variant, coeff in (("A", r.crossing_a), ("B", r.crossing_b), ("vertex", r.crossing_vertex)):
                mm = m.copy()
                mm.smooth_crossing(v, variant)
                branches.append((coeff, mm))
            return _combine((coeff, self.evaluate(mm)) for coeff, mm in branches)
        edges = m.edges()
        if edges:
            h = _pick_edge(m, edges)
            mc, md = m.copy(), m.copy()
            mc.contract(h)
            md.delete(h)
            return _combine([(r.contract, self.evaluate(mc)), (r.delete, self.evaluate(md))])
        if not m.rot and m.n == 0:
            return {NormalForm(0, ()): ONE}
        return {_normal_form_of_map(m): ONE}


def _combine(parts) -> Dict[NormalForm, RingElement]:
    out: Dict[NormalForm, RingElement] = {}
    for coeff, res in parts:
        for nf, v in res.items():
            s = out.get(nf, RingElement(0)) + coeff * v
            if s:
                out[nf] = s
            else:
                out.pop(nf, None)
    return out


_ENGINES: Dict[RewriteRules, _Engine] = {}


def _engine(rules: RewriteRules) -> _Engine:
    eng = _ENGINES.get(rules)
    if eng is None:
        eng = _ENGINES.setdefault(rules, _Engine(rules))
    return eng


def _random_reduce(m: _Map, rng, rules: RewriteRules) -> Dict[NormalForm, RingElement]:
    """Apply applicable rules in a random order; no memoization or component splitting."""
    out: Dict[NormalForm, RingElement] = {}
    work = [(ONE, m)]
    while work:
        c, m = work.pop()
        while True:
            actions = []
            if m.circles:
                actions.append(("circle",))
            for v, rot in m.rot.items():
                if m.kind[v] == CROSSING:
                    actions.append(("cross", v))
                    continue
                if len(rot) <= 2:
                    actions.append(("valence", v))
                else:
                    for i in m.empty_loops(v):
                        actions.append(("loop", v, i))
            for h in m.edges():
                actions.append(("edge", h))
            if not actions:
                break
            act = actions[rng.randrange(len(actions))]
            kind = act[0]
            if kind == "circle":
                m.circles -= 1
                c = c * rules.circle
            elif kind == "valence":
                v = act[1]
                deg = len(m.rot[v])
                if deg == 0:
                    m.drop_node(v)
                    c = c * rules.isolated
                elif deg == 1:
                    c = RingElement(0)
                    break
                else:
                    m.smooth_valence2(v)
                    c = c * rules.valence2
            elif kind == "loop":
                m.remove_loop(act[1], act[2])
                c = c * rules.loop
            elif kind == "cross":
                v = act[1]
                variants = [("A", rules.crossing_a), ("B", rules.crossing_b), ("vertex", rules.crossing_vertex)]
                rng.shuffle(variants)
                for variant, coeff in variants[1:]:
                    mm = m.copy()
                    mm.smooth_crossing(v, variant)
                    work.append((c * coeff, mm))
                variant, coeff = variants[0]
                m.smooth_crossing(v, variant)
                c = c * coeff
            else:
                h = act[1]
                md = m.copy()
                md.delete(h)
                work.append((c * rules.delete, md))
                m.contract(h)
                c = c * rules.contract
        if not c:
            continue
        if not m.rot and m.n == 0:
            nf = NormalForm(0, ())
        else:
            nf = _normal_form_of_map(m)
        s = out.get(nf, RingElement(0)) + c
        if s:
            out[nf] = s
        else:
            out.pop(nf, None)
    return out


def reduce(g: GraphDiagram, rng=None, crossing_cap: int = 12, rules: RewriteRules = RULES) -> YElement:
    """Rewrite a diagram into an R-linear combination of normal forms.

    With ``rng`` (a ``random.Random``) the rules are applied in a random
    order; otherwise a memoized deterministic strategy is used.
    """
    ncross = len(g.crossings)
    if ncross > crossing_cap:
        raise ValueError(f"{ncross} crossings exceed the cap of {crossing_cap}")
    m = _Map.from_diagram(g)
    if rng is not None:
        return YElement(g.n, _random_reduce(m, rng, rules))
    return YElement(g.n, _engine(rules).evaluate(m))


# -- the algebra Y_n --------------------------------------------------------------

def _nc_partitions(points: Tuple[int, ...]):
    """Non-crossing partitions of ``points`` with no singleton blocks."""
    if not points:
        yield ()
        return
    first, rest = points[0], points[1:]
    # choose the other members of first's block as an increasing subsequence of rest
    for size in range(1, len(rest) + 1):
        for members in itertools.combinations(range(len(rest)), size):
            block = (first,) + tuple(rest[i] for i in members)
            gaps = []
            prev = -1
            for i in members:
                gaps.append(rest[prev + 1:i])
                prev = i
            gaps.append(rest[prev + 1:])
            yield from _product_partitions(block, gaps)


def _product_partitions(block, gaps):
    if not gaps:
        yield (block,)
        return
    head, tail = gaps[0], gaps[1:]
    for p in _nc_partitions(head):
        for q in _product_partitions(block, tail):
            yield p + q


@lru_cache(maxsize=None)
def y_basis(n: int, bound: int = 5) -> Tuple[NormalForm, ...]:
    """All normal forms on 2n boundary points, in a fixed order."""
    if n > bound:
        raise ValueError(f"n = {n} exceeds the configured bound {bound}")
    out = [NormalForm(n, blocks) for blocks in _nc_partitions(tuple(range(2 * n)))]
    return tuple(sorted(set(out), key=lambda nf: (len(nf.blocks) * -1, nf.blocks)))


def y_identity(n: int) -> YElement:
    return YElement.basis(NormalForm(n, tuple((i, 2 * n - 1 - i) for i in range(n))))


@lru_cache(maxsize=None)
def _basis_product(x: NormalForm, y: NormalForm) -> YElement:
    return reduce(stack(x.to_diagram(), y.to_diagram()))


def y_mul(x: YElement, y: YElement) -> YElement:
    """Product with x stacked over y."""
    x._check(y)
    out: Dict[NormalForm, RingElement] = {}
    for nx, cx in x.terms.items():
        for ny, cy in y.terms.items():
            c = cx * cy
            for nf, v in _basis_product(nx, ny).terms.items():
                s = out.get(nf, RingElement(0)) + c * v
                if s:
                    out[nf] = s
                else:
                    out.pop(nf, None)
    return YElement(x.n, out)


def structure_constants(n: int) -> Dict[Tuple[NormalForm, NormalForm], YElement]:
    """Full multiplication table of y_basis(n)."""
    if n > 3:
        raise ValueError("structure constants are only tabulated for n <= 3")
    basis = y_basis(n)
    return {(a, b): _basis_product(a, b) for a in basis for b in basis}
