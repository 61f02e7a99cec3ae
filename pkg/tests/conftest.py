import sympy
from hypothesis import settings, strategies as st

from ribbonskein.ring import LaurentPolynomial, RingElement

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

SYM_A = sympy.Symbol("A")
SYM_D = -SYM_A ** 2 - SYM_A ** -2


def to_sympy(x: RingElement):
    num = sum(c * SYM_A ** e for e, c in x.num.items())
    return num / SYM_D ** x.dpow


def sympy_equal(a, b) -> bool:
    return sympy.cancel(sympy.together(a - b)) == 0


laurent = st.dictionaries(st.integers(-6, 6), st.integers(-5, 5), max_size=5).map(LaurentPolynomial)
ring_elements = st.builds(RingElement, laurent, st.integers(0, 3))


ACCEPTANCE_LINES = []


def record_criterion(number: int, text: str, ok: bool, detail: str = "") -> None:
    line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {text}" + (f"  ({detail})" if detail else "")
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
