"""Property tests with small hand-rolled generators (random.Random)."""

import random
from fractions import Fraction

import bvkit


def reference_rank(rows):
    m = [[Fraction(x) for x in r] for r in rows]
    rank, col = 0, 0
    ncols = max((len(r) for r in m), default=0)
    while rank < len(m) and col < ncols:
        piv = next((i for i in range(rank, len(m)) if m[i][col] != 0), None)
        if piv is None:
            col += 1
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][col] != 0:
                f = m[i][col] / m[rank][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
        col += 1
    return rank


def random_matrix(rng):
    rows, cols = rng.randint(1, 6), rng.randint(1, 6)
    base = [[Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(cols)] for _ in range(rng.randint(1, rows))]
    out = []
    for _ in range(rows):
        # mostly combinations of a few base rows, so ranks are often deficient
        coef = [rng.randint(-2, 2) for _ in base]
        out.append([sum(c * b[j] for c, b in zip(coef, base)) for j in range(cols)])
    return out


def test_rank_matches_fraction_elimination():
    rng = random.Random(20261014)
    for _ in range(300):
        m = random_matrix(rng)
        assert bvkit.rank(m) == reference_rank(m), m


def test_rank_accepts_strings():
    assert bvkit.rank([["1/2", "1"], ["1", "2"]]) == 1
    assert bvkit.rank([]) == 0


def test_recursive_and_koszul_forms_agree():
    A = bvkit.Algebra.poly(2, 2, 5)
    pool = A.basis(1)
    rng = random.Random(7)
    for trial in range(40):
        op = f"rand({trial + 1},{rng.choice([-1, 0, 1])},3,1)"
        r = rng.randint(1, 5)
        args = [rng.choice(pool) for _ in range(r)]
        assert A.phi(op, args) == A.phi_koszul(op, args), (op, args)
