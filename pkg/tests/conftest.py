from hypothesis import strategies as st

from daehee.polyring import BiPoly

small_fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@st.composite
def bipolys(draw, max_x=3, max_lam=3):
    nx = draw(st.integers(0, max_x + 1))
    rows = [draw(st.lists(small_fractions, max_size=max_lam + 1)) for _ in range(nx)]
    return BiPoly(rows)


