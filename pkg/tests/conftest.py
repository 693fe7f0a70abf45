import math
import random

from hypothesis import strategies as st

from matwaring.matrix import IntMat


def coprime_tuple(rng, count, bound):
    out = []
    while len(out) < count:
        x = rng.randint(-bound, bound)
        if x and all(math.gcd(x, y) == 1 for y in out):
            out.append(x)
    return out


def random_matrix(rng, n, bound=100):
    return IntMat([[rng.randint(-bound, bound) for _ in range(n)] for _ in range(n)])


def matrices(n, bound=100):
    return st.lists(
        st.lists(st.integers(-bound, bound), min_size=n, max_size=n), min_size=n, max_size=n
    ).map(IntMat)


@st.composite
def coprime_lists(draw, count, bound=10**6):
    seed = draw(st.integers(0, 2**32))
    return coprime_tuple(random.Random(seed), count, bound)
