"""The Temperley-Lieb algebra on the basis of non-crossing perfect matchings.

Boundary points of an n-strand diagram are indexed circularly: bottom points
1..n from left to right get indices 0..n-1, then top points n..1 from right to
left get indices n..2n-1.  A ``Matching`` stores the involution on these
indices.  Products put the left factor on top: in ``x * y`` the bottom of x is
glued to the top of y, and every closed loop is replaced by the scalar d.
"""
from __future__ import annotations

import threading
from collections import deque
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from sympy import ZZ
from sympy.polys.fields import field

from .ring import D, D_INV, ONE, RingElement, render_d_poly

__all__ = [
    "Matching",
    "TLElement",
    "tl_basis",
    "tl_mul",
    "tl_identity",
    "tl_generator",
    "tl_tensor_id",
    "jones_wenzl",
    "markov_trace",
    "catalan",
    "QD",
    "QD_D",
    "to_ring",
    "to_field",
]

# field of rational functions in d; Jones-Wenzl coefficients leave R for k >= 2
QD, QD_D = field("d", ZZ)


def catalan(n: int) -> int:
    c = 1
    for i in range(n):
        c = c * 2 * (2 * i + 1) // (i + 2)
    return c


class Matching:
    """A non-crossing perfect matching of 2n points in circular order."""

    __slots__ = ("partner", "_hash")

    def __init__(self, partner: Sequence[int], check: bool = True):
        self.partner: Tuple[int, ...] = tuple(partner)
        self._hash = hash(self.partner)
        if check:
            self._validate()

    def _validate(self) -> None:
        p = self.partner
        m = len(p)
        if m % 2:
            raise ValueError("a matching needs an even number of points")
        for i, j in enumerate(p):
            if not 0 <= j < m or j == i or p[j] != i:
                raise ValueError(f"not a fixed-point-free involution: {p}")
        for a, b in self.pairs0():
            for c, e in self.pairs0():
                if a < c < b < e:
                    raise ValueError(f"pairs ({a},{b}) and ({c},{e}) cross")

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[Tuple[int, int]]) -> "Matching":
        """Build from 1-based circular index pairs."""
        partner = [-1] * (2 * n)
        for a, b in pairs:
            partner[a - 1] = b - 1
            partner[b - 1] = a - 1
        return cls(partner)

    @classmethod
    def identity(cls, n: int) -> "Matching":
        return cls([2 * n - 1 - i for i in range(2 * n)], check=False)

    @property
    def n(self) -> int:
        return len(self.partner) // 2

    def pairs0(self) -> List[Tuple[int, int]]:
        return [(i, j) for i, j in enumerate(self.partner) if i < j]

    def pairs(self) -> List[Tuple[int, int]]:
        return [(i + 1, j + 1) for i, j in self.pairs0()]

    def serialize(self) -> str:
        return "pairs: [" + ",".join(f"({a},{b})" for a, b in self.pairs()) + "]"

    def __eq__(self, other) -> bool:
        return isinstance(other, Matching) and self.partner == other.partner

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "Matching") -> bool:
        return self.partner < other.partner

    def __repr__(self) -> str:
        return f"Matching({self.serialize()})"

    def word(self) -> str:
        """Shortest product of generators U_i giving this matching ('1' for identity)."""
        return _words(self.n)[self]


@lru_cache(maxsize=None)
def _compose(top: Tuple[int, ...], bottom: Tuple[int, ...]) -> Tuple[Tuple[int, ...], int]:
    """Stack ``top`` over ``bottom``; return the resulting involution and loop count."""
    m = len(top)
    n = m // 2
    result = [-1] * m
    seen = [False] * n  # interface positions already traversed
    for r in range(m):
        if result[r] >= 0:
            continue
        on_top = r >= n
        i = r
        while True:
            j = top[i] if on_top else bottom[i]
            if on_top:
                if j >= n:
                    end = j
                    break
                seen[j] = True
                on_top, i = False, m - 1 - j
            else:
                if j < n:
                    end = j
                    break
                k = m - 1 - j
                seen[k] = True
                on_top, i = True, k
        result[r] = end
        result[end] = r
    loops = 0
    for k in range(n):
        if seen[k]:
            continue
        loops += 1
        i = k  # bottom index k of top diagram
        while True:
            seen[i] = True
            j = top[i]
            k2 = j  # j < n necessarily (interior path)
            # cross into bottom diagram at its top index m-1-k2
            j2 = bottom[m - 1 - k2]
            nxt = m - 1 - j2
            seen[k2] = True
            if nxt == k:
                break
            i = nxt
    return tuple(result), loops


@lru_cache(maxsize=None)
def tl_basis(n: int) -> Tuple[Matching, ...]:
    """All non-crossing perfect matchings of 2n points, in a fixed order."""
    if n < 0:
        raise ValueError("n must be nonnegative")

    def gen(points: Tuple[int, ...]):
        if not points:
            yield ()
            return
        first = points[0]
        for k in range(1, len(points), 2):
            inner = points[1:k]
            outer = points[k + 1:]
            for a in gen(inner):
                for b in gen(outer):
                    yield ((first, points[k]),) + a + b

    out = []
    for pairs in gen(tuple(range(2 * n))):
        partner = [0] * (2 * n)
        for a, b in pairs:
            partner[a], partner[b] = b, a
        out.append(Matching(partner, check=False))
    return tuple(out)


@lru_cache(maxsize=None)
def _words(n: int) -> Dict[Matching, str]:
    words = {Matching.identity(n): "1"}
    gens = [(i, _hook(n, i)) for i in range(1, n)]
    queue = deque([(Matching.identity(n), [])])
    while queue:
        m, w = queue.popleft()
        for i, u in gens:
            prod, loops = _compose(m.partner, u.partner)
            if loops:
                continue
            mm = Matching(prod, check=False)
            if mm not in words:
                words[mm] = "".join(f"U{j}" for j in w + [i])
                queue.append((mm, w + [i]))
    return words


def _hook(n: int, i: int) -> Matching:
    partner = [2 * n - 1 - k for k in range(2 * n)]
    b1, b2 = i - 1, i
    t1, t2 = 2 * n - i, 2 * n - 1 - i
    partner[b1], partner[b2] = b2, b1
    partner[t1], partner[t2] = t2, t1
    return Matching(partner, check=False)


def _format_coeff(c) -> str:
    if isinstance(c, RingElement):
        return c.d_str()
    if hasattr(c, "numer") and hasattr(c, "denom"):
        num = {e[0]: int(v) for e, v in c.numer.terms()}
        den = {e[0]: int(v) for e, v in c.denom.terms()}
        if len(den) == 1:
            (j, v), = den.items()
            if v in (1, -1):
                return render_d_poly({e - j: k * v for e, k in num.items()})
        ns, ds = render_d_poly(num), render_d_poly(den)
        if len(num) > 1:
            ns = f"({ns})"
        return f"{ns}/({ds})"
    return str(c)


def _is_single_term(s: str) -> bool:
    body = s[1:] if s.startswith("-") else s
    head = body.split("/(", 1)[0]
    return " " not in head


class TLElement:
    """A finite linear combination of matchings on n strands.

    ``loop`` is the scalar a closed loop evaluates to; it also fixes the
    coefficient ring (``D`` for R, ``QD_D`` for rational functions in d).
    """

    __slots__ = ("n", "terms", "loop")

    def __init__(self, n: int, terms: Optional[Dict[Matching, object]] = None, loop=D):
        self.n = n
        self.loop = loop
        self.terms: Dict[Matching, object] = {}
        if terms:
            for m, c in terms.items():
                if m.n != n:
                    raise ValueError("all matchings must have the same strand count")
                if c != 0:
                    self.terms[m] = c

    @classmethod
    def basis_element(cls, m: Matching, loop=D) -> "TLElement":
        return cls(m.n, {m: loop ** 0}, loop)

    def copy(self) -> "TLElement":
        return TLElement(self.n, dict(self.terms), self.loop)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, m: Matching):
        return self.terms.get(m, self.loop * 0)

    def _check(self, other: "TLElement") -> None:
        if self.n != other.n:
            raise ValueError(f"strand counts differ: {self.n} vs {other.n}")

    def __add__(self, other: "TLElement") -> "TLElement":
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            s = c if s is None else s + c
            if s == 0:
                out.pop(m, None)
            else:
                out[m] = s
        return TLElement(self.n, out, self.loop)

    def __neg__(self) -> "TLElement":
        return TLElement(self.n, {m: -c for m, c in self.terms.items()}, self.loop)

    def __sub__(self, other: "TLElement") -> "TLElement":
        return self + (-other)

    def scale(self, c) -> "TLElement":
        if c == 0:
            return TLElement(self.n, {}, self.loop)
        return TLElement(self.n, {m: v * c for m, v in self.terms.items()}, self.loop)

    def __mul__(self, other):
        if isinstance(other, TLElement):
            return tl_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TLElement):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):  # pragma: no cover - elements are mutable-looking values
        raise TypeError("TLElement is unhashable")

    def map_coefficients(self, f, loop) -> "TLElement":
        return TLElement(self.n, {m: f(c) for m, c in self.terms.items()}, loop)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=lambda m: (len(m.word()), m.word())):
            label = m.word()
            cs = _format_coeff(self.terms[m])
            neg = False
            if _is_single_term(cs):
                if cs.startswith("-"):
                    neg, cs = True, cs[1:]
            else:
                cs = f"({cs})"
            if cs == "1":
                body = label
            elif label == "1":
                body = cs
            else:
                body = f"{cs} {label}"
            if not parts:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"TLElement(n={self.n}, {self})"


def tl_mul(x: TLElement, y: TLElement) -> TLElement:
    """Product x*y with x stacked on top of y; closed loops become d."""
    x._check(y)
    out: Dict[Matching, object] = {}
    loop = x.loop
    powers = [loop ** 0]
    for mx, cx in x.terms.items():
        px = mx.partner
        for my, cy in y.terms.items():
            prod, loops = _compose(px, my.partner)
            while len(powers) <= loops:
                powers.append(powers[-1] * loop)
            c = cx * cy
            if loops:
                c = c * powers[loops]
            m = Matching(prod, check=False)
            s = out.get(m)
            out[m] = c if s is None else s + c
    return TLElement(x.n, {m: c for m, c in out.items() if c != 0}, loop)


def tl_identity(n: int, loop=D) -> TLElement:
    return TLElement.basis_element(Matching.identity(n), loop)


def tl_generator(n: int, i: int, loop=D) -> TLElement:
    """U_i on n strands; U_0 is the identity, U_i caps points i, i+1 top and bottom."""
    if not 0 <= i <= n - 1:
        raise IndexError(f"generator index {i} out of range for n={n}")
    if i == 0:
        return tl_identity(n, loop)
    return TLElement.basis_element(_hook(n, i), loop)


def _embed(m: Matching, left: int, right: int) -> Matching:
    n = m.n
    k = left + n + right
    size = 2 * k

    def new_index(i: int) -> int:
        if i < n:
            return left + i
        pos = 2 * n - 1 - i  # 0-based position along the top
        return size - 1 - (left + pos)

    partner = [size - 1 - i for i in range(size)]
    for i, j in enumerate(m.partner):
        partner[new_index(i)] = new_index(j)
    return Matching(partner, check=False)


def tl_tensor_id(x: TLElement, left: int, right: int) -> TLElement:
    """Place x between ``left`` and ``right`` identity strands."""
    if left < 0 or right < 0:
        raise ValueError("strand counts must be nonnegative")
    return TLElement(x.n + left + right,
                     {_embed(m, left, right): c for m, c in x.terms.items()}, x.loop)


def _closure_loops(m: Matching) -> int:
    size = len(m.partner)
    seen = [False] * size
    loops = 0
    for s in range(size):
        if seen[s]:
            continue
        loops += 1
        i = s
        while not seen[i]:
            seen[i] = True
            j = m.partner[i]
            seen[j] = True
            i = size - 1 - j  # closure strand joins bottom k with top k
    return loops


def markov_trace(x: TLElement):
    """Close every strand around the right side and evaluate loops to d."""
    total = x.loop * 0
    for m, c in x.terms.items():
        total = total + c * x.loop ** _closure_loops(m)
    return total


# -- Jones-Wenzl projectors -------------------------------------------------

_JW_LOCK = threading.Lock()
_JW_CACHE: Dict[Tuple[int, int], TLElement] = {}


def _mu(k: int):
    mu = 1 / QD_D
    for _ in range(k - 1):
        denom = QD_D - mu
        if denom == 0:
            raise ZeroDivisionError("Jones-Wenzl recursion hit a zero denominator")
        mu = 1 / denom
    return mu


def jones_wenzl(n: int, k: int) -> TLElement:
    """The projector f_k on the first k+1 of n strands (f_0 = 1, f_1 = 1 - U_1/d).

    Uses f_{k+1} = f_k - mu_{k+1} f_k U_{k+1} f_k with mu_1 = 1/d and
    mu_{k+1} = 1/(d - mu_k).  Coefficients live in the field of rational
    functions of d.
    """
    if not 0 <= k <= n - 1:
        raise IndexError(f"projector index {k} out of range for n={n}")
    key = (n, k)
    hit = _JW_CACHE.get(key)
    if hit is not None:
        return hit
    if n > k + 1:
        value = tl_tensor_id(jones_wenzl(k + 1, k), 0, n - k - 1)
    elif k == 0:
        value = tl_identity(n, QD_D)
    else:
        prev = jones_wenzl(n, k - 1)
        u = tl_generator(n, k, QD_D)
        value = prev - tl_mul(tl_mul(prev, u), prev).scale(_mu(k))
    with _JW_LOCK:
        _JW_CACHE.setdefault(key, value)
    return _JW_CACHE[key]


def to_ring(c) -> RingElement:
    """Convert a rational function of d to an element of R; ValueError if not in R."""
    if isinstance(c, RingElement):
        return c
    if isinstance(c, int):
        return RingElement(c)
    c = QD(c)
    den = {e[0]: int(v) for e, v in c.denom.terms()}
    if len(den) != 1:
        raise ValueError(f"{c} is not in R: denominator is not a power of d")
    (j, v), = den.items()
    if v not in (1, -1):
        raise ValueError(f"{c} is not in R: denominator has content {v}")
    total = RingElement(0)
    for e, coeff in c.numer.terms():
        total = total + D ** e[0] * int(coeff)
    return total * D_INV ** j * v


def to_field(c: RingElement):
    """Convert an element of Z[d, 1/d] inside R to a rational function of d."""
    exp = c.d_expansion()
    if exp is None:
        raise ValueError(f"{c} is not a Laurent polynomial in d")
    total = QD(0)
    for j, v in exp.items():
        total += v * QD_D ** j
    return total


def ring_to_field_element(x: TLElement) -> TLElement:
    return x.map_coefficients(to_field, QD_D)


def field_to_ring_element(x: TLElement) -> TLElement:
    return x.map_coefficients(to_ring, D)
