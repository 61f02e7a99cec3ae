"""The cabling map Phi: ribbon n-graph diagrams -> Temperley-Lieb algebra on 2n strands.

Every strand becomes two parallel strands carrying f_1 = 1 - d^-1 U_1, every
vertex becomes the boundary of its disk (each cable strand turns to the
nearest strand of the cyclically next cable), and every crossing of ribbons
becomes four ordinary crossings expanded with the Kauffman bracket
<X> = A <(0,1)(2,3)> + A^-1 <(0,3)(1,2)> (over-strand on ports 0, 2).

The expansion is evaluated as a planar network: local pieces, each a short
linear combination of pairings of its end points, are glued one at a time
while tracking only the pairing of the currently open ends.  Nothing here
uses the skein rewrite rules, so Phi serves as an independent oracle for them.
"""
from __future__ import annotations

from typing import Dict, Iterable, List, Tuple

from .diagram import CROSSING, GraphDiagram, Node, TangleBuilder, _is_boundary
from .ring import A, D, D_INV, ONE, RingElement
from .tl import Matching, TLElement

__all__ = [
    "phi",
    "phi_combination",
    "evaluate_closed",
    "kink_diagram",
    "kink_factor",
    "theta_diagram",
    "spin_network_theta",
    "quantum_integer",
]

A_INV = A ** -1
MINUS_D_INV = -D_INV

Pairing = Tuple[Tuple[int, int], ...]
Piece = List[Tuple[Pairing, RingElement]]


class _Network:
    def __init__(self):
        self.ids: Dict[object, int] = {}
        self.pieces: List[Piece] = []
        self.scalar = ONE

    def end(self, key) -> int:
        i = self.ids.get(key)
        if i is None:
            i = self.ids[key] = len(self.ids)
        return i

    def add(self, terms: Iterable[Tuple[Iterable[Tuple[object, object]], RingElement]]) -> None:
        piece = []
        for pairs, c in terms:
            piece.append((tuple((self.end(a), self.end(b)) for a, b in pairs), c))
        self.pieces.append(piece)

    def cable(self, e1, e2) -> None:
        """f_1 on the 2-cable from endpoint e1 to endpoint e2 (ends: (e, 0)=right, (e, 1)=left)."""
        r1, l1, r2, l2 = (e1, 0), (e1, 1), (e2, 0), (e2, 1)
        self.add([
            (((r1, l2), (l1, r2)), ONE),
            (((r1, l1), (r2, l2)), MINUS_D_INV),
        ])

    def vertex(self, name: str, degree: int) -> None:
        if degree == 0:
            # the boundary of an empty coupon is a single closed curve
            self.scalar = self.scalar * D
            return
        pairs = [(((name, p), 1), ((name, (p + 1) % degree), 0)) for p in range(degree)]
        self.add([(pairs, ONE)])

    def elementary_crossing(self, p0, p1, p2, p3) -> None:
        self.add([
            (((p0, p1), (p2, p3)), A),
            (((p0, p3), (p1, p2)), A_INV),
        ])

    def cabled_crossing(self, name: str) -> None:
        # ribbon over ports 0-2 drawn horizontally, under ports 1-3 vertically;
        # four grid crossings, each listed east, north, west, south
        def e(port, side):
            return ((name, port), side)

        h_lo, h_hi = ("#seg", name, "h_lo"), ("#seg", name, "h_hi")
        v_r, v_l = ("#seg", name, "v_r"), ("#seg", name, "v_l")
        self.elementary_crossing(e(0, 0), v_r, h_lo, e(3, 1))
        self.elementary_crossing(e(0, 1), e(1, 0), h_hi, v_r)
        self.elementary_crossing(h_hi, e(1, 1), e(2, 0), v_l)
        self.elementary_crossing(h_lo, v_l, e(2, 1), e(3, 0))

    def contract(self) -> Dict[Pairing, RingElement]:
        remaining = list(range(len(self.pieces)))
        ends_of = [set(x for pairs, _ in p for pair in pairs for x in pair) for p in self.pieces]
        state: Dict[Pairing, RingElement] = {(): self.scalar}
        open_ends: set = set()
        while remaining:
            best = max(remaining, key=lambda i: (2 * len(ends_of[i] & open_ends) - len(ends_of[i]), -i))
            remaining.remove(best)
            state = _merge(state, self.pieces[best])
            open_ends ^= ends_of[best]
            if not state:
                break
        return state


def _merge(state: Dict[Pairing, RingElement], piece: Piece) -> Dict[Pairing, RingElement]:
    out: Dict[Pairing, RingElement] = {}
    powers = [ONE]
    for s_pairs, cs in state.items():
        ps: Dict[int, int] = {}
        for a, b in s_pairs:
            ps[a] = b
            ps[b] = a
        for t_pairs, ct in piece:
            pt: Dict[int, int] = {}
            for a, b in t_pairs:
                pt[a] = b
                pt[b] = a
            result: List[Tuple[int, int]] = []
            visited = set()
            for start in list(ps) + list(pt):
                if start in visited or (start in ps and start in pt):
                    continue
                visited.add(start)
                m = ps if start in ps else pt
                cur = start
                while True:
                    nxt = m[cur]
                    visited.add(nxt)
                    if nxt in ps and nxt in pt:
                        m = pt if m is ps else ps
                        cur = nxt
                        continue
                    break
                result.append((start, nxt) if start < nxt else (nxt, start))
            loops = 0
            for g in ps:
                if g in visited or g not in pt:
                    continue
                loops += 1
                cur, m = g, ps
                while True:
                    visited.add(cur)
                    nxt = m[cur]
                    visited.add(nxt)
                    m = pt if m is ps else ps
                    if nxt == g:
                        break
                    cur = nxt
            while len(powers) <= loops:
                powers.append(powers[-1] * D)
            c = cs * ct
            if loops:
                c = c * powers[loops]
            key = tuple(sorted(result))
            prev = out.get(key)
            out[key] = c if prev is None else prev + c
    return {k: v for k, v in out.items() if v}


def _boundary_position(n: int, end, side: int) -> int:
    """Circular index in the 2n-strand Temperley-Lieb diagram of a cable end."""
    kind, i = end
    m = 2 * n
    if kind == "B":
        pos = 2 * i if side == 0 else 2 * i - 1  # 1-based bottom position
        return pos - 1
    pos = 2 * i - 1 if side == 0 else 2 * i  # 1-based top position
    return 2 * m - pos


def _network(g: GraphDiagram) -> _Network:
    net = _Network()
    for v in g.nodes:
        if v.kind == CROSSING:
            net.cabled_crossing(v.name)
        else:
            net.vertex(v.name, v.degree)
    for a, b in g.strands:
        net.cable(a, b)
    for j in range(g.circles):
        name = ("#circle", j)
        net.vertex(name, 2)
        net.cable((name, 0), (name, 1))
    return net


def phi(g: GraphDiagram, crossing_cap: int = 12) -> TLElement:
    """Phi(g) as an element of the Temperley-Lieb algebra on 2n strands."""
    if len(g.crossings) > crossing_cap:
        raise ValueError(f"{len(g.crossings)} crossings exceed the cap of {crossing_cap}")
    net = _network(g)
    state = net.contract()
    n = g.n
    inv = {i: k for k, i in net.ids.items()}
    size = 4 * n
    terms: Dict[Matching, RingElement] = {}
    for pairs, c in state.items():
        partner = [-1] * size
        for a, b in pairs:
            ka, kb = inv[a], inv[b]
            if not (_is_boundary(ka[0]) and _is_boundary(kb[0])):
                raise AssertionError("contraction left an interior end open")
            pa = _boundary_position(n, ka[0], ka[1])
            pb = _boundary_position(n, kb[0], kb[1])
            partner[pa], partner[pb] = pb, pa
        m = Matching(partner)
        terms[m] = terms.get(m, RingElement(0)) + c
    return TLElement(2 * n, terms, D)


def phi_combination(n: int, terms) -> TLElement:
    """Phi of a linear combination {object with .to_diagram(): coefficient}."""
    total = TLElement(2 * n, {}, D)
    for nf, c in terms.items():
        total = total + phi(nf.to_diagram()).scale(c)
    return total


def evaluate_closed(g: GraphDiagram) -> RingElement:
    """Scalar invariant of a closed (n = 0) diagram: Phi(g) in the 0-strand algebra."""
    if g.n != 0:
        raise ValueError(f"closed evaluation needs n = 0, got n = {g.n}")
    return phi(g).coefficient(Matching(()))


def kink_diagram(sign=1, count: int = 1) -> GraphDiagram:
    """A closed circle carrying kinks.

    ``sign`` is +1 or -1 (repeated ``count`` times) or a sequence of signs
    read along the circle.
    """
    signs = [sign] * count if isinstance(sign, int) else list(sign)
    if not signs:
        return GraphDiagram(0, (), (), 1)
    names = [f"k{i + 1}" for i in range(len(signs))]
    nodes = [Node(name, CROSSING, 4) for name in names]
    strands = []
    # a positive kink loops ports 0-1 and is traversed 3 -> 2; a negative one loops 1-2, 0 -> 3
    for i, (name, s) in enumerate(zip(names, signs)):
        nxt, s_next = names[(i + 1) % len(names)], signs[(i + 1) % len(signs)]
        strands.append(((name, 0), (name, 1)) if s > 0 else ((name, 1), (name, 2)))
        out_port = 2 if s > 0 else 3
        in_port = 3 if s_next > 0 else 0
        strands.append(((name, out_port), (nxt, in_port)))
    return GraphDiagram.checked(0, nodes, strands)


def kink_factor(sign: int = 1) -> RingElement:
    """evaluate_closed(circle with one kink) / evaluate_closed(circle)."""
    kinked = evaluate_closed(kink_diagram(sign))
    plain = evaluate_closed(GraphDiagram(0, (), (), 1))
    return kinked.exact_div(plain)


def theta_diagram() -> GraphDiagram:
    return GraphDiagram.checked(
        0,
        [Node("u", "vertex", 3), Node("v", "vertex", 3)],
        [(("u", 0), ("v", 2)), (("u", 1), ("v", 1)), (("u", 2), ("v", 0))],
    )


def quantum_integer(k: int) -> RingElement:
    """Delta_{k-1}: Chebyshev values 1, d, d^2-1, ... (loop value of f_{k-1})."""
    prev, cur = RingElement(0), ONE
    for _ in range(k - 1):
        prev, cur = cur, D * cur - prev
    return cur


def spin_network_theta(a: int, b: int, c: int) -> RingElement:
    """Theta net with edge colors a, b, c from the quantum-factorial formula.

    With internal colors i = (b+c-a)/2 etc. and [m]! = prod_{k<=m} (-1)^(k-1) Delta_{k-1},
    theta = (-1)^(i+j+k) [i+j+k+1]! [i]! [j]! [k]! / ([i+j]! [j+k]! [i+k]!).
    """
    if (a + b + c) % 2 or a > b + c or b > a + c or c > a + b:
        raise ValueError("colors are not admissible")
    i, j, k = (b + c - a) // 2, (a + c - b) // 2, (a + b - c) // 2

    def qfact(m: int) -> RingElement:
        out = ONE
        for t in range(1, m + 1):
            out = out * quantum_integer(t) * (-1) ** (t - 1)
        return out

    num = qfact(i + j + k + 1) * qfact(i) * qfact(j) * qfact(k) * (-1) ** (i + j + k)
    den = qfact(i + j) * qfact(j + k) * qfact(i + k)
    return num.exact_div(den)
