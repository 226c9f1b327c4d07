from hypothesis import strategies as st

from effmod.dvr import RElem

primes = st.sampled_from([2, 3, 5])


def relems(p: int, max_degree: int = 4):
    return st.lists(st.integers(0, p - 1), max_size=max_degree + 1).map(lambda c: RElem(c, p))


@st.composite
def relem_tuples(draw, n: int, max_degree: int = 4):
    p = draw(primes)
    return (p,) + tuple(draw(relems(p, max_degree)) for _ in range(n))
