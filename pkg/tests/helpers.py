"""Shared test pencils, oracles and hypothesis strategies."""
import random
from fractions import Fraction

from hypothesis import strategies as st

from pencil_lab.exactcore import Poly
from pencil_lab.pencil import PencilData, degenerate_from_jacobi
from pencil_lab.perturb import PerturbationParams, perturbation_pencil

DEPTH = 14


def chebyshev_like(depth=DEPTH):
    """``a_k = 1, b_k = 0``: p_n are the Chebyshev polynomials of the second kind in λ/2."""
    return degenerate_from_jacobi([1] * depth, [0] * depth)


def bracket_pencil(depth=DEPTH):
    """``J3`` with ``a = 1/2, b = 1``, ``J5 = J3**2`` and constants ``(2, -4)``."""
    base = degenerate_from_jacobi([Fraction(1, 2)] * depth, [1] * depth)
    return PencilData(base.a, base.b, base.alpha_j5, base.beta_j5, base.gamma, 2, -4)


def random_rational(rng, lo, hi, den=7):
    q = rng.randint(1, den)
    return Fraction(rng.randint(int(lo * q), int(hi * q)), q)


def random_jacobi(rng, depth=DEPTH):
    """Random rational prefixes with ``a_k in (0, 3]`` and ``b_k in [-2, 2]``."""
    a = []
    while len(a) < depth:
        x = random_rational(rng, 0, 3)
        if x > 0:
            a.append(x)
    b = [random_rational(rng, -2, 2) for _ in range(depth)]
    return a, b


def random_genuine(seed=7, depth=DEPTH):
    """A pencil whose ``J5`` is not ``J3**2``: all entries drawn independently."""
    rng = random.Random(seed)

    def pos():
        return Fraction(rng.randint(1, 12), rng.randint(1, 5))

    def any_():
        return Fraction(rng.randint(-9, 9), rng.randint(1, 5))

    return PencilData(
        a=[pos() for _ in range(depth)],
        b=[any_() for _ in range(depth)],
        alpha_j5=[any_() for _ in range(depth)],
        beta_j5=[any_() for _ in range(depth)],
        gamma=[pos() for _ in range(depth)],
        alpha_const=pos(),
        beta_const=any_(),
    )


def perturbation_family(c=Fraction(1, 2), d=Fraction(-2, 3), seed=11, depth=DEPTH):
    """Exact pencil of the rank-one perturbation over a random rational Jacobi matrix."""
    a, b = random_jacobi(random.Random(seed), depth + 1)
    return perturbation_pencil(PerturbationParams(c, d), a, b), (a, b)


def three_pencils():
    return {"chebyshev": chebyshev_like(), "genuine": random_genuine(), "perturbation": perturbation_family()[0]}


def cofactor_det(M):
    """First-row cofactor expansion: an independent determinant oracle for small matrices."""
    n = len(M)
    if n == 0:
        return 1
    if n == 1:
        return M[0][0]
    total = 0
    for j in range(n):
        sub = [row[:j] + row[j + 1 :] for row in M[1:]]
        total += (-1) ** j * M[0][j] * cofactor_det(sub)
    return total


def beta_moments(a, b, K):
    """Moments of the normalised ``(1-x)**a (1+x)**b`` on ``[-1, 1]``.

    With ``x = 2y - 1`` and ``y ~ Beta(b+1, a+1)``, ``E[y**j]`` is a ratio of
    rising factorials, and the binomial theorem gives ``E[x**k]``.
    """
    a, b = Fraction(a), Fraction(b)
    ey = [Fraction(1)]
    for j in range(1, K + 1):
        ey.append(ey[-1] * (b + j) / (a + b + 1 + j))
    from math import comb

    return [sum(comb(k, j) * 2**j * (-1) ** (k - j) * ey[j] for j in range(k + 1)) for k in range(K + 1)]


small_rat = st.builds(
    lambda n, d: Fraction(n, d), st.integers(min_value=-30, max_value=30), st.integers(min_value=1, max_value=9)
)
pos_rat = st.builds(lambda n, d: Fraction(n, d), st.integers(min_value=1, max_value=30), st.integers(min_value=1, max_value=9))
polys = st.lists(small_rat, min_size=0, max_size=8).map(lambda cs: Poly(tuple(cs)))


@st.composite
def pencils(draw, depth=8):
    n = depth
    return PencilData(
        a=draw(st.lists(pos_rat, min_size=n, max_size=n)),
        b=draw(st.lists(small_rat, min_size=n, max_size=n)),
        alpha_j5=draw(st.lists(small_rat, min_size=n, max_size=n)),
        beta_j5=draw(st.lists(small_rat, min_size=n, max_size=n)),
        gamma=draw(st.lists(pos_rat, min_size=n, max_size=n)),
        alpha_const=draw(pos_rat),
        beta_const=draw(small_rat),
    )
