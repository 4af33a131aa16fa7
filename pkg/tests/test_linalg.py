"""F2 matrix kernel/rank machinery and integer Smith normal form."""

import random

import pytest
from hypothesis import given, settings, strategies as st

from khcover.errors import NotAComplex
from khcover.linalg import MatF2, MatZ, homology_rank, rank_f2, smith_normal_form


def naive_rank_f2(entries):
    """Row-reduce a list-of-lists copy; the reference the bitset code must match."""
    m = [row[:] for row in entries]
    rank = 0
    cols = len(m[0]) if m else 0
    for j in range(cols):
        piv = next((i for i in range(rank, len(m)) if m[i][j]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][j]:
                m[i] = [(a + b) % 2 for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def naive_det(rows):
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    total = 0
    for j in range(n):
        if rows[0][j]:
            minor = [r[:j] + r[j + 1:] for r in rows[1:]]
            total += (-1) ** j * rows[0][j] * naive_det(minor)
    return total


def rand_f2(rng, nrows, ncols):
    return MatF2(nrows, ncols, [rng.getrandbits(ncols) for _ in range(nrows)])


mat_entries = st.integers(1, 7).flatmap(
    lambda n: st.integers(1, 7).flatmap(
        lambda m: st.lists(
            st.lists(st.integers(0, 1), min_size=m, max_size=m),
            min_size=n, max_size=n,
        )
    )
)


class TestMatF2:
    def test_identity_rank(self):
        assert rank_f2(MatF2.identity(5)) == 5

    def test_zero_rank(self):
        assert rank_f2(MatF2.zero(3, 4)) == 0

    def test_from_entries_roundtrip(self):
        e = [[1, 0, 1], [0, 1, 1]]
        assert MatF2.from_entries(e).to_entries() == e

    def test_big_random_rank_matches_naive(self):
        rng = random.Random(7)
        a = rand_f2(rng, 64, 64)
        assert rank_f2(a) == naive_rank_f2(a.to_entries())

    @given(mat_entries)
    def test_rank_matches_naive(self, entries):
        a = MatF2.from_entries(entries)
        assert rank_f2(a) == naive_rank_f2(entries)

    @given(mat_entries)
    def test_rank_of_transpose(self, entries):
        a = MatF2.from_entries(entries)
        assert rank_f2(a) == rank_f2(a.transpose())

    @given(st.integers(0, 2 ** 12 - 1), st.integers(0, 2 ** 12 - 1))
    def test_product_rank_bound(self, seed1, seed2):
        rng = random.Random(seed1 * 4096 + seed2)
        a = rand_f2(rng, 6, 5)
        b = rand_f2(rng, 5, 7)
        assert rank_f2(a @ b) <= min(rank_f2(a), rank_f2(b))

    @given(mat_entries)
    def test_kernel(self, entries):
        a = MatF2.from_entries(entries)
        ker = a.kernel_basis()
        assert len(ker) == a.ncols - rank_f2(a)
        for v in ker:
            assert a.apply(v) == 0
        kmat = MatF2(len(ker), a.ncols, ker)
        assert rank_f2(kmat) == len(ker)

    @given(mat_entries, st.integers(0, 2 ** 7 - 1))
    def test_solve_consistent(self, entries, xbits):
        a = MatF2.from_entries(entries)
        x = xbits & ((1 << a.ncols) - 1)
        b = a.apply(x)
        got = a.solve(b)
        assert got is not None
        assert a.apply(got) == b

    def test_solve_inconsistent(self):
        a = MatF2.from_entries([[1, 0], [0, 0]])
        assert a.solve(0b10) is None

    def test_matmul_identity(self):
        rng = random.Random(3)
        a = rand_f2(rng, 4, 6)
        assert MatF2.identity(4) @ a == a
        assert a @ MatF2.identity(6) == a


class TestHomologyRank:
    def test_no_differentials(self):
        assert homology_rank(MatF2.zero(7, 0), MatF2.zero(0, 7)) == 7

    def test_exact_pair(self):
        assert homology_rank(MatF2.identity(4), MatF2.zero(0, 4)) == 0

    def test_rejects_nonzero_composite(self):
        with pytest.raises(NotAComplex):
            homology_rank(MatF2.identity(3), MatF2.identity(3))

    @given(st.integers(0, 10 ** 6))
    def test_random_complex_euler(self, seed):
        # build C2 -> C1 -> C0 with the middle map killing the image
        rng = random.Random(seed)
        n2, n1, n0 = rng.randint(0, 5), rng.randint(1, 6), rng.randint(0, 5)
        d1 = rand_f2(rng, n0, n1)
        ker = d1.kernel_basis()
        cols = [rng.choice(ker) if ker else 0 for _ in range(n2)]
        d2 = MatF2(n2, n1, cols).transpose() if n2 else MatF2.zero(n1, 0)
        assert (d1 @ d2).is_zero()
        h2 = homology_rank(MatF2.zero(n2, 0), d2)
        h1 = homology_rank(d2, d1)
        h0 = homology_rank(d1, MatF2.zero(0, n0))
        assert n2 - n1 + n0 == h2 - h1 + h0


class TestMatZ:
    def test_det_pinned(self):
        assert MatZ([[2, 1], [1, 1]]).det() == 1
        assert MatZ([[0, 1], [1, 0]]).det() == -1
        assert MatZ([[1, 2], [2, 4]]).det() == 0

    @given(st.lists(
        st.lists(st.integers(-6, 6), min_size=4, max_size=4),
        min_size=4, max_size=4,
    ))
    def test_det_matches_cofactors(self, rows):
        assert MatZ(rows).det() == naive_det(rows)

    def test_matmul(self):
        a = MatZ([[1, 2], [3, 4]])
        b = MatZ([[0, 1], [1, 0]])
        assert (a @ b).rows == [[2, 1], [4, 3]]


def rand_unimodular(rng, n):
    u = MatZ.identity(n)
    for _ in range(3 * n):
        i, j = rng.sample(range(n), 2)
        c = rng.randint(-2, 2)
        for t in range(n):
            u.rows[i][t] += c * u.rows[j][t]
    return u


class TestSmithNormalForm:
    def check(self, a):
        u, d, v = smith_normal_form(a)
        assert (u @ d @ v).rows == a.rows
        assert abs(u.det()) == 1
        assert abs(v.det()) == 1
        diag = d.diagonal()
        for i in range(d.nrows):
            for j in range(d.ncols):
                if i != j:
                    assert d.rows[i][j] == 0
        nz = [x for x in diag if x]
        assert all(x > 0 for x in nz)
        for x, y in zip(nz, nz[1:]):
            assert y % x == 0
        assert diag[len(nz):] == [0] * (len(diag) - len(nz))
        return nz

    def test_gcd_lcm_forced(self):
        assert self.check(MatZ([[2, 0], [0, 3]])) == [1, 6]

    def test_zero_matrix(self):
        assert self.check(MatZ.zero(3, 2)) == []

    def test_rectangular(self):
        self.check(MatZ([[2, 4, 6, 8, 10], [3, 6, 9, 12, 16], [0, 0, 4, 0, 0]]))

    def test_negative_definite_circuit_form(self):
        # rank-4 form with determinant 75 exercised heavily downstream
        q = MatZ([[-3, -2, -1, -1],
                  [-2, -5, -2, -3],
                  [-1, -2, -4, -3],
                  [-1, -3, -3, -5]])
        assert self.check(q) == [1, 1, 5, 15]
        assert q.det() == 75

    @given(st.lists(
        st.lists(st.integers(-5, 5), min_size=4, max_size=4),
        min_size=4, max_size=4,
    ))
    @settings(max_examples=60)
    def test_product_identity_random(self, rows):
        self.check(MatZ(rows))

    @given(st.integers(0, 10 ** 6))
    @settings(max_examples=40)
    def test_invariant_under_unimodular_action(self, seed):
        rng = random.Random(seed)
        a = MatZ([[rng.randint(-4, 4) for _ in range(3)] for _ in range(3)])
        b = rand_unimodular(rng, 3) @ a @ rand_unimodular(rng, 3)
        _, da, _ = smith_normal_form(a)
        _, db, _ = smith_normal_form(b)
        assert da.diagonal() == db.diagonal()
