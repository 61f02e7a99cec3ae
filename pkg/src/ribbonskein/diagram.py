"""Ribbon n-graph diagrams as rotation systems.

A diagram has ``n`` boundary points at the bottom (B1..Bn) and at the top
(T1..Tn), a set of nodes (coupons drawn as vertices, and 4-valent crossings),
strands joining endpoints pairwise, and a count of free circles.  Node ports
are listed counterclockwise.  A crossing carries its over-strand on ports 0
and 2 and its under-strand on ports 1 and 3.

Going once around the boundary counterclockwise meets the points in the order
B1..Bn, Tn..T1; that circular order is also used to index boundary points
0..2n-1 wherever a flat index is needed.

Nesting of closed components inside faces is not recorded.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

__all__ = [
    "DiagramError",
    "Node",
    "GraphDiagram",
    "NormalForm",
    "TangleBuilder",
    "parse_diagram",
    "serialize_diagram",
    "contract_edge",
    "delete_edge",
    "smooth_crossing",
    "remove_loop",
    "remove_circle",
    "smooth_valence2",
    "read_normal_form",
    "stack",
    "boundary_label",
    "boundary_index",
]

Endpoint = Tuple[str, int]

VERTEX = "vertex"
CROSSING = "crossing"


class DiagramError(ValueError):
    """Invalid diagram text or structure; ``line`` is set for parse errors."""

    def __init__(self, message: str, line: Optional[int] = None, subject=None):
        self.line = line
        self.message = message
        self.subject = subject  # node name or endpoint the error is about
        super().__init__(f"line {line}: {message}" if line is not None else message)


def boundary_label(n: int, index: int) -> str:
    return f"B{index + 1}" if index < n else f"T{2 * n - index}"


def boundary_index(n: int, end: Endpoint) -> int:
    side, i = end
    return i - 1 if side == "B" else 2 * n - i


def _is_boundary(end: Endpoint) -> bool:
    return end[0] in ("B", "T")


@dataclass(frozen=True)
class Node:
    name: str
    kind: str
    degree: int


@dataclass(frozen=True)
class GraphDiagram:
    """Immutable ribbon graph diagram; construction normalizes ordering only.

    Call :meth:`validate` (or build through :func:`parse_diagram` or
    :meth:`checked`) to enforce the structural and planarity invariants.
    """

    n: int
    nodes: Tuple[Node, ...] = ()
    strands: Tuple[Tuple[Endpoint, Endpoint], ...] = ()
    circles: int = 0

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(sorted(self.nodes, key=lambda v: v.name)))
        norm = []
        for s in self.strands:
            a, b = (tuple(s[0]), tuple(s[1]))
            norm.append((a, b) if a <= b else (b, a))
        object.__setattr__(self, "strands", tuple(sorted(norm)))

    @classmethod
    def checked(cls, n, nodes=(), strands=(), circles=0) -> "GraphDiagram":
        g = cls(n, tuple(nodes), tuple(strands), circles)
        g.validate()
        return g

    def node(self, name: str) -> Node:
        for v in self.nodes:
            if v.name == name:
                return v
        raise KeyError(name)

    def partner(self, end: Endpoint) -> Endpoint:
        for a, b in self.strands:
            if a == end:
                return b
            if b == end:
                return a
        raise KeyError(end)

    @property
    def crossings(self) -> List[Node]:
        return [v for v in self.nodes if v.kind == CROSSING]

    @property
    def vertices(self) -> List[Node]:
        return [v for v in self.nodes if v.kind == VERTEX]

    def validate(self) -> None:
        if self.n < 0:
            raise DiagramError("boundary arity must be nonnegative")
        if self.circles < 0:
            raise DiagramError("circle count must be nonnegative")
        kinds: Dict[str, Node] = {}
        for v in self.nodes:
            if v.name in kinds:
                raise DiagramError(f"duplicate node {v.name!r}")
            if v.name in ("B", "T"):
                raise DiagramError(f"node name {v.name!r} is reserved")
            if v.kind not in (VERTEX, CROSSING):
                raise DiagramError(f"node {v.name!r} has unknown kind {v.kind!r}")
            if v.kind == CROSSING and v.degree != 4:
                raise DiagramError(f"crossing {v.name!r} must have 4 ports")
            if v.degree < 0:
                raise DiagramError(f"node {v.name!r} has negative degree")
            kinds[v.name] = v
        used: Dict[Endpoint, int] = {}
        for a, b in self.strands:
            if a == b:
                raise DiagramError(f"strand joins {_fmt_end(a)} to itself")
            for e in (a, b):
                if _is_boundary(e):
                    if not 1 <= e[1] <= self.n:
                        raise DiagramError(f"boundary point {_fmt_end(e)} out of range", subject=e)
                else:
                    v = kinds.get(e[0])
                    if v is None:
                        raise DiagramError(f"unknown node {e[0]!r}", subject=e)
                    if not 0 <= e[1] < v.degree:
                        raise DiagramError(f"port {_fmt_end(e)} out of range", subject=e)
                if e in used:
                    if _is_boundary(e):
                        raise DiagramError(f"boundary point {_fmt_end(e)} used twice", subject=e)
                    raise DiagramError(f"port {_fmt_end(e)} used twice", subject=e)
                used[e] = 1
        for side in ("B", "T"):
            for i in range(1, self.n + 1):
                if (side, i) not in used:
                    raise DiagramError(f"boundary point {side}{i} unused")
        for v in self.nodes:
            for p in range(v.degree):
                if (v.name, p) not in used:
                    raise DiagramError(f"port {v.name}.{p} unused", subject=v.name)
        m = _Map.from_diagram(self)
        bad = m.planarity_defect()
        if bad is not None:
            msg, vid = bad
            name = m.names.get(vid) if vid is not None else None
            where = f" at node {name!r}" if name else ""
            raise DiagramError(f"diagram is not planar ({msg}){where}", subject=name)

    def serialize(self) -> str:
        return serialize_diagram(self)

    def __str__(self) -> str:
        return self.serialize()


def _fmt_end(e: Endpoint) -> str:
    if _is_boundary(e):
        return f"{e[0]}{e[1]}"
    return f"{e[0]}.{e[1]}"


# -- text format ------------------------------------------------------------

_ID = r"[A-Za-z_][A-Za-z0-9_]*"
_RE_N = re.compile(r"^n\s*=\s*(\d+)$")
_RE_VERTEX = re.compile(rf"^node\s+({_ID})\s+vertex\s+(\d+)$")
_RE_XOVER = re.compile(rf"^node\s+({_ID})\s+xover$")
_RE_STRAND = re.compile(r"^strand\s+(\S+)\s+(\S+)$")
_RE_CIRCLE = re.compile(r"^circle\s+(\d+)$")
_RE_BEND = re.compile(r"^([BT])(\d+)$")
_RE_PEND = re.compile(rf"^({_ID})\.(\d+)$")


def _parse_end(tok: str, line: int) -> Endpoint:
    m = _RE_BEND.match(tok)
    if m:
        return (m.group(1), int(m.group(2)))
    m = _RE_PEND.match(tok)
    if m:
        return (m.group(1), int(m.group(2)))
    raise DiagramError(f"bad endpoint {tok!r}", line)


def parse_diagram(text: str) -> GraphDiagram:
    """Parse the line-oriented diagram format (statements may also be split by ';')."""
    n: Optional[int] = None
    nodes: List[Node] = []
    strands: List[Tuple[Endpoint, Endpoint]] = []
    circles = 0
    node_line: Dict[str, int] = {}
    port_line: Dict[Endpoint, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        raw = raw.split("#", 1)[0]
        for stmt in raw.split(";"):
            stmt = " ".join(stmt.split())
            if not stmt:
                continue
            m = _RE_N.match(stmt)
            if m:
                if n is not None:
                    raise DiagramError("boundary arity given twice", lineno)
                n = int(m.group(1))
                continue
            m = _RE_VERTEX.match(stmt) or _RE_XOVER.match(stmt)
            if m:
                name = m.group(1)
                if name in node_line:
                    raise DiagramError(f"duplicate node {name!r}", lineno)
                if name in ("B", "T"):
                    raise DiagramError(f"node name {name!r} is reserved", lineno)
                node_line[name] = lineno
                if m.re is _RE_VERTEX:
                    nodes.append(Node(name, VERTEX, int(m.group(2))))
                else:
                    nodes.append(Node(name, CROSSING, 4))
                continue
            m = _RE_STRAND.match(stmt)
            if m:
                a, b = _parse_end(m.group(1), lineno), _parse_end(m.group(2), lineno)
                for e in (a, b):
                    if e in port_line:
                        what = "boundary point" if _is_boundary(e) else "port"
                        raise DiagramError(
                            f"{what} {_fmt_end(e)} reused (first used on line {port_line[e]})", lineno)
                    port_line[e] = lineno
                strands.append((a, b))
                continue
            m = _RE_CIRCLE.match(stmt)
            if m:
                circles += int(m.group(1))
                continue
            raise DiagramError(f"cannot parse {stmt!r}", lineno)
    if n is None:
        raise DiagramError("missing 'n = <int>' declaration")
    g = GraphDiagram(n, tuple(nodes), tuple(strands), circles)
    try:
        g.validate()
    except DiagramError as exc:
        subj = exc.subject
        line = node_line.get(subj) if isinstance(subj, str) else port_line.get(subj)
        if line is None and isinstance(subj, tuple):
            line = node_line.get(subj[0])
        raise DiagramError(exc.message, line, subj) from None
    return g


def serialize_diagram(g: GraphDiagram) -> str:
    lines = [f"n = {g.n}"]
    for v in g.nodes:
        lines.append(f"node {v.name} xover" if v.kind == CROSSING else f"node {v.name} vertex {v.degree}")
    for a, b in g.strands:
        lines.append(f"strand {_fmt_end(a)} {_fmt_end(b)}")
    if g.circles:
        lines.append(f"circle {g.circles}")
    return "\n".join(lines) + "\n"


# -- mutable working form -----------------------------------------------------

class _Map:
    """Mutable half-edge structure used by the surgeries and the rewrite engine.

    Half-edges 0..2n-1 are the boundary points in circular order; larger ids
    belong to node ports.  ``rot[v]`` lists the half-edges of node v
    counterclockwise and ``mate`` pairs the two ends of every strand.
    """

    __slots__ = ("n", "kind", "rot", "owner", "mate", "circles", "names", "next_h", "next_v")

    def __init__(self, n: int):
        self.n = n
        self.kind: Dict[int, str] = {}
        self.rot: Dict[int, List[int]] = {}
        self.owner: Dict[int, int] = {}
        self.mate: Dict[int, int] = {}
        self.circles = 0
        self.names: Dict[int, str] = {}
        self.next_h = 2 * n
        self.next_v = 0

    @classmethod
    def from_diagram(cls, g: GraphDiagram) -> "_Map":
        m = cls(g.n)
        hid: Dict[Endpoint, int] = {}
        for v in g.nodes:
            vid = m.next_v
            m.next_v += 1
            m.kind[vid] = v.kind
            m.names[vid] = v.name
            ports = []
            for p in range(v.degree):
                h = m.next_h
                m.next_h += 1
                hid[(v.name, p)] = h
                m.owner[h] = vid
                ports.append(h)
            m.rot[vid] = ports
        for a, b in g.strands:
            ha = boundary_index(g.n, a) if _is_boundary(a) else hid[a]
            hb = boundary_index(g.n, b) if _is_boundary(b) else hid[b]
            m.mate[ha] = hb
            m.mate[hb] = ha
        m.circles = g.circles
        return m

    def copy(self) -> "_Map":
        m = _Map.__new__(_Map)
        m.n = self.n
        m.kind = dict(self.kind)
        m.rot = {v: list(r) for v, r in self.rot.items()}
        m.owner = dict(self.owner)
        m.mate = dict(self.mate)
        m.circles = self.circles
        m.names = self.names  # shared, only read
        m.next_h = self.next_h
        m.next_v = self.next_v
        return m

    def to_diagram(self) -> GraphDiagram:
        n = self.n
        nodes = []
        for vid in sorted(self.rot):
            nodes.append(Node(self._name(vid), self.kind[vid], len(self.rot[vid])))

        def end(h: int) -> Endpoint:
            if h < 2 * n:
                return ("B", h + 1) if h < n else ("T", 2 * n - h)
            v = self.owner[h]
            return (self._name(v), self.rot[v].index(h))

        strands = []
        for h, k in self.mate.items():
            if h < k:
                strands.append((end(h), end(k)))
        return GraphDiagram(n, tuple(nodes), tuple(strands), self.circles)

    def _name(self, vid: int) -> str:
        return self.names.get(vid, f"_v{vid}")

    def add_node(self, kind: str, degree: int) -> Tuple[int, List[int]]:
        vid = self.next_v
        self.next_v += 1
        hs = list(range(self.next_h, self.next_h + degree))
        self.next_h += degree
        self.kind[vid] = kind
        self.rot[vid] = hs
        for h in hs:
            self.owner[h] = vid
        return vid, hs

    # -- local moves ---------------------------------------------------------
    def join(self, h1: int, h2: int) -> None:
        """Remove ports h1, h2 and splice the strands through them into one."""
        a = self.mate.pop(h1)
        b = self.mate.pop(h2)
        if a == h2:
            self.circles += 1
            return
        self.mate[a] = b
        self.mate[b] = a

    def drop_node(self, v: int) -> None:
        for h in self.rot.pop(v):
            self.owner.pop(h, None)
        del self.kind[v]

    def smooth_crossing(self, v: int, variant: str) -> None:
        if self.kind.get(v) != CROSSING:
            raise DiagramError("not a crossing")
        h0, h1, h2, h3 = self.rot[v]
        if variant == "A":
            self.join(h0, h1)
            self.join(h2, h3)
            self.drop_node(v)
        elif variant == "B":
            self.join(h0, h3)
            self.join(h1, h2)
            self.drop_node(v)
        elif variant == "vertex":
            self.kind[v] = VERTEX
        else:
            raise ValueError(f"unknown smoothing {variant!r}")

    def contract(self, h: int) -> None:
        k = self.mate[h]
        u, w = self.owner.get(h), self.owner.get(k)
        if u is None or w is None or self.kind[u] != VERTEX or self.kind[w] != VERTEX:
            raise DiagramError("contraction needs a strand between two vertices")
        if u == w:
            raise DiagramError("cannot contract a loop")
        ru, rw = self.rot[u], self.rot[w]
        i, j = ru.index(h), rw.index(k)
        merged = ru[i + 1:] + ru[:i] + rw[j + 1:] + rw[:j]
        for x in rw:
            self.owner[x] = u
        del self.mate[h], self.mate[k]
        del self.owner[h], self.owner[k]
        self.rot[u] = merged
        del self.rot[w], self.kind[w]

    def delete(self, h: int) -> None:
        k = self.mate.pop(h)
        del self.mate[k]
        for x in (h, k):
            v = self.owner.pop(x, None)
            if v is None or self.kind[v] != VERTEX:
                raise DiagramError("deletion needs a strand between vertex ports")
            self.rot[v].remove(x)

    def remove_loop(self, v: int, i: int) -> None:
        r = self.rot[v]
        deg = len(r)
        j = (i + 1) % deg
        if deg < 2 or self.mate.get(r[i]) != r[j]:
            raise DiagramError("no empty loop at that position")
        h, k = r[i], r[j]
        del self.mate[h], self.mate[k]
        del self.owner[h], self.owner[k]
        r.remove(h)
        r.remove(k)

    def smooth_valence2(self, v: int) -> None:
        r = self.rot[v]
        if self.kind[v] != VERTEX or len(r) != 2:
            raise DiagramError("smoothing needs a 2-valent vertex")
        self.join(r[0], r[1])
        self.drop_node(v)

    # -- queries --------------------------------------------------------------
    def empty_loops(self, v: int) -> List[int]:
        r = self.rot[v]
        deg = len(r)
        if deg < 2:
            return []
        out = []
        for i in range(deg):
            j = (i + 1) % deg
            if self.mate.get(r[i]) == r[j] and (deg > 2 or i == 0):
                out.append(i)
        return out

    def edges(self) -> List[int]:
        """Half-edges h (one per strand) whose strand joins two distinct vertices."""
        out = []
        for h, k in self.mate.items():
            if h < k:
                u, w = self.owner.get(h), self.owner.get(k)
                if u is not None and w is not None and u != w \
                        and self.kind[u] == VERTEX and self.kind[w] == VERTEX:
                    out.append(h)
        return out

    def planarity_defect(self) -> Optional[Tuple[str, Optional[int]]]:
        """None if every component closes up to a sphere, else (reason, a node of the bad component)."""
        n2 = 2 * self.n
        pos: Dict[int, int] = {}
        for v, r in self.rot.items():
            for i, h in enumerate(r):
                pos[h] = i

        def sigma(h: int) -> int:
            if h < n2:
                return (h - 1) % n2  # outer face sees the boundary clockwise
            r = self.rot[self.owner[h]]
            return r[(pos[h] + 1) % len(r)]

        parent: Dict[object, object] = {}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def node_of(h: int):
            return "O" if h < n2 else self.owner[h]

        if n2:
            parent["O"] = "O"
        for v in self.rot:
            parent[v] = v
        for h, k in self.mate.items():
            ra, rb = find(node_of(h)), find(node_of(k))
            if ra != rb:
                parent[ra] = rb
        stats: Dict[object, List[int]] = {}
        for x in parent:
            stats.setdefault(find(x), [0, 0, 0])[0] += 1
        for h, k in self.mate.items():
            if h < k:
                stats[find(node_of(h))][1] += 1
        seen = set()
        for h in self.mate:
            if h in seen:
                continue
            stats[find(node_of(h))][2] += 1
            x = h
            while x not in seen:
                seen.add(x)
                x = sigma(self.mate[x])
        for root, (nv, ne, nf) in stats.items():
            if ne == 0:
                nf = 1
            if nv - ne + nf != 2:
                members = [x for x in parent if x != "O" and find(x) == root]
                return f"component with Euler characteristic {nv - ne + nf}", min(members, default=None)
        return None


# -- public surgeries -----------------------------------------------------

def _hid(m: _Map, g: GraphDiagram, end: Endpoint) -> int:
    if _is_boundary(end):
        return boundary_index(g.n, end)
    for vid, name in m.names.items():
        if name == end[0]:
            return m.rot[vid][end[1]]
    raise DiagramError(f"no such endpoint {_fmt_end(end)}")


def _vid(m: _Map, name: str) -> int:
    for vid, nm in m.names.items():
        if nm == name and vid in m.rot:
            return vid
    raise DiagramError(f"no node named {name!r}")


def _strand_end(strand) -> Endpoint:
    if isinstance(strand[0], tuple):
        return tuple(strand[0])
    return tuple(strand)


def contract_edge(g: GraphDiagram, strand) -> GraphDiagram:
    """Merge the two distinct vertices joined by ``strand`` into one vertex."""
    m = _Map.from_diagram(g)
    m.contract(_hid(m, g, _strand_end(strand)))
    return m.to_diagram()


def delete_edge(g: GraphDiagram, strand) -> GraphDiagram:
    m = _Map.from_diagram(g)
    m.delete(_hid(m, g, _strand_end(strand)))
    return m.to_diagram()


def smooth_crossing(g: GraphDiagram, name: str, variant: str) -> GraphDiagram:
    """variant 'A' joins ports (0,1),(2,3); 'B' joins (0,3),(1,2); 'vertex' makes a coupon."""
    m = _Map.from_diagram(g)
    m.smooth_crossing(_vid(m, name), variant)
    return m.to_diagram()


def remove_loop(g: GraphDiagram, name: str, port: Optional[int] = None) -> GraphDiagram:
    """Remove an empty loop at vertex ``name`` joining ports ``port`` and ``port+1``."""
    m = _Map.from_diagram(g)
    v = _vid(m, name)
    loops = m.empty_loops(v)
    if not loops:
        raise DiagramError(f"vertex {name!r} has no empty loop")
    if port is None:
        port = loops[0]
    elif port not in loops:
        raise DiagramError(f"ports {port},{port + 1} of {name!r} are not an empty loop")
    m.remove_loop(v, port)
    return m.to_diagram()


def remove_circle(g: GraphDiagram) -> GraphDiagram:
    if g.circles == 0:
        raise DiagramError("diagram has no free circle")
    return GraphDiagram(g.n, g.nodes, g.strands, g.circles - 1)


def smooth_valence2(g: GraphDiagram, name: str) -> GraphDiagram:
    m = _Map.from_diagram(g)
    m.smooth_valence2(_vid(m, name))
    return m.to_diagram()


# -- normal forms ------------------------------------------------------------

@dataclass(frozen=True)
class NormalForm:
    """A non-crossing partition of the 2n boundary points without singletons.

    Blocks hold circular indices (B1..Bn -> 0..n-1, Tn..T1 -> n..2n-1) and are
    sorted internally and by their least element.
    """

    n: int
    blocks: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(sorted(tuple(sorted(b)) for b in self.blocks))
        object.__setattr__(self, "blocks", blocks)

    def validate(self) -> None:
        pts = sorted(p for b in self.blocks for p in b)
        if pts != list(range(2 * self.n)):
            raise DiagramError("blocks must partition the boundary points")
        if any(len(b) < 2 for b in self.blocks):
            raise DiagramError("singleton block")
        label = {p: i for i, b in enumerate(self.blocks) for p in b}
        for b in self.blocks:
            lo, hi = b[0], b[-1]
            inside = {label[p] for p in range(lo + 1, hi) if label[p] != label[lo]}
            for other in inside:
                if any(p < lo or p > hi for p in self.blocks[other]):
                    raise DiagramError("blocks cross")

    def serialize(self) -> str:
        def key(p: int):
            return (0, p) if p < self.n else (1, 2 * self.n - p)

        parts = [" ".join(boundary_label(self.n, p) for p in sorted(b, key=key)) for b in self.blocks]
        return "{" + " | ".join(parts) + "}"

    def __str__(self) -> str:
        return self.serialize()

    def to_diagram(self) -> GraphDiagram:
        """Representative: arcs for 2-blocks, one vertex per larger block."""
        nodes, strands = [], []
        k = 0
        for b in self.blocks:
            ends = [("B", p + 1) if p < self.n else ("T", 2 * self.n - p) for p in b]
            if len(b) == 2:
                strands.append((ends[0], ends[1]))
            else:
                k += 1
                name = f"v{k}"
                nodes.append(Node(name, VERTEX, len(b)))
                for port, e in enumerate(ends):
                    strands.append(((name, port), e))
        return GraphDiagram(self.n, tuple(nodes), tuple(strands), 0)

    @classmethod
    def parse(cls, n: int, text: str) -> "NormalForm":
        text = text.strip()
        if not (text.startswith("{") and text.endswith("}")):
            raise DiagramError(f"bad normal form {text!r}")
        blocks = []
        for part in text[1:-1].split("|"):
            pts = []
            for tok in part.split():
                m = _RE_BEND.match(tok)
                if not m:
                    raise DiagramError(f"bad boundary label {tok!r}")
                pts.append(boundary_index(n, (m.group(1), int(m.group(2)))))
            blocks.append(tuple(pts))
        nf = cls(n, tuple(blocks))
        nf.validate()
        return nf


def _normal_form_of_map(m: _Map) -> NormalForm:
    n2 = 2 * m.n
    if m.circles:
        raise DiagramError("diagram has free circles")
    blocks = []
    for v, r in m.rot.items():
        if m.kind[v] != VERTEX:
            raise DiagramError("diagram has crossings")
        if len(r) < 3:
            raise DiagramError(f"vertex of valence {len(r)}")
        pts = []
        for h in r:
            k = m.mate[h]
            if k >= n2:
                raise DiagramError("diagram has edges or loops")
            pts.append(k)
        blocks.append(tuple(pts))
    for h in range(n2):
        k = m.mate[h]
        if k < n2 and h < k:
            blocks.append((h, k))
    return NormalForm(m.n, tuple(blocks))


def read_normal_form(g: GraphDiagram) -> NormalForm:
    """The boundary partition of a diagram without crossings, edges, loops, circles."""
    return _normal_form_of_map(_Map.from_diagram(g))


# -- stacking and construction ------------------------------------------------------

def _splice(n: int, links: Sequence[Tuple[object, object]]):
    """Resolve chains through internal tokens ("#I", ...) into strands and circles."""
    adj: Dict[object, List[object]] = {}
    for a, b in links:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    strands = []
    visited = set()
    for t in adj:
        if t[0] == "#I" or t in visited:
            continue
        prev, cur = t, adj[t][0]
        while cur[0] == "#I":
            visited.add(cur)
            nxt = adj[cur]
            step = nxt[0] if nxt[1] == prev else nxt[1]
            if nxt[0] == nxt[1]:  # both links to the same token
                step = nxt[0]
            prev, cur = cur, step
        visited.add(t)
        visited.add(cur)
        strands.append((t, cur))
    circles = 0
    for t in adj:
        if t[0] != "#I" or t in visited:
            continue
        circles += 1
        prev, cur = None, t
        while cur not in visited:
            visited.add(cur)
            a, b = adj[cur]
            nxt = a if a != prev else b
            prev, cur = cur, nxt
    return strands, circles


def stack(top: GraphDiagram, bottom: GraphDiagram) -> GraphDiagram:
    """Put ``top`` over ``bottom``: top's B_i is glued to bottom's T_i."""
    if top.n != bottom.n:
        raise DiagramError(f"arity mismatch: {top.n} vs {bottom.n}")
    n = top.n
    rename: Dict[Tuple[int, str], str] = {}
    nodes = []
    for tag, g in ((0, top), (1, bottom)):
        for v in g.nodes:
            name = f"n{len(nodes) + 1}"
            rename[(tag, v.name)] = name
            nodes.append(Node(name, v.kind, v.degree))

    def token(tag: int, e: Endpoint):
        if _is_boundary(e):
            if (tag == 0 and e[0] == "B") or (tag == 1 and e[0] == "T"):
                return ("#I", e[1])
            return e
        return (rename[(tag, e[0])], e[1])

    links = [(token(t, a), token(t, b)) for t, g in ((0, top), (1, bottom)) for a, b in g.strands]
    strands, circles = _splice(n, links)
    return GraphDiagram(n, tuple(nodes), tuple(strands), top.circles + bottom.circles + circles)


class TangleBuilder:
    """Build planar diagrams bottom-to-top from elementary layers.

    The builder keeps the list of open strand ends at the current height, left
    to right.  Every layer acts on consecutive positions, so results are planar
    by construction.
    """

    def __init__(self, n_bottom: int):
        self.n_bottom = n_bottom
        self.positions: List[object] = [("B", i + 1) for i in range(n_bottom)]
        self.nodes: List[Node] = []
        self.links: List[Tuple[object, object]] = []
        self.circles = 0
        self._cups = 0

    def _new(self, kind: str, degree: int) -> str:
        name = f"{'c' if kind == CROSSING else 'v'}{len(self.nodes) + 1}"
        self.nodes.append(Node(name, kind, degree))
        return name

    def _take(self, i: int, k: int) -> List[object]:
        if i < 0 or i + k > len(self.positions):
            raise DiagramError(f"layer at {i} of width {k} does not fit {len(self.positions)} strands")
        taken = self.positions[i:i + k]
        del self.positions[i:i + k]
        return taken

    def crossing(self, i: int, positive: bool = True) -> "TangleBuilder":
        """Cross positions i, i+1; positive puts the strand from bottom-left on top."""
        b1, b2 = self._take(i, 2)
        c = self._new(CROSSING, 4)
        if positive:
            self.links += [(b1, (c, 0)), (b2, (c, 1))]
            self.positions[i:i] = [(c, 3), (c, 2)]
        else:
            self.links += [(b2, (c, 0)), (b1, (c, 3))]
            self.positions[i:i] = [(c, 2), (c, 1)]
        return self

    def vertex(self, i: int, k_in: int, k_out: int) -> "TangleBuilder":
        ins = self._take(i, k_in)
        v = self._new(VERTEX, k_in + k_out)
        for p, e in enumerate(ins):
            self.links.append((e, (v, p)))
        self.positions[i:i] = [(v, k_in + k_out - 1 - j) for j in range(k_out)]
        return self

    def cap(self, i: int) -> "TangleBuilder":
        a, b = self._take(i, 2)
        self.links.append((a, b))
        return self

    def cup(self, i: int) -> "TangleBuilder":
        if not 0 <= i <= len(self.positions):
            raise DiagramError("cup position out of range")
        self._cups += 1
        left, right = ("#I", self._cups, 0), ("#I", self._cups, 1)
        self.links.append((left, right))
        self.positions[i:i] = [left, right]
        return self

    def circle(self) -> "TangleBuilder":
        self.circles += 1
        return self

    def finish(self, check: bool = True) -> GraphDiagram:
        if len(self.positions) != self.n_bottom:
            raise DiagramError(
                f"{len(self.positions)} open strands at the top, expected {self.n_bottom}")
        links = list(self.links)
        for j, e in enumerate(self.positions):
            links.append((e, ("T", j + 1)))
        strands, circles = _splice(self.n_bottom, links)
        g = GraphDiagram(self.n_bottom, tuple(self.nodes), tuple(strands), self.circles + circles)
        if check:
            g.validate()
        return g
