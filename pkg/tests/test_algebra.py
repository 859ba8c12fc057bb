from fractions import Fraction

import pytest

from toriplan import algebra as alg
from toriplan.complex import Graph, flag_complex, from_facets, full_simplex, skeleton, to_indices, to_mask

import oracles

FIG8 = from_facets(2, [[1], [2]])
P3 = flag_complex(Graph.from_edges(3, [[1, 2], [2, 3]]))


def as_dict(u: alg.Tensor) -> dict:
    return {(to_indices(a), to_indices(b)): c for (a, b), c in u.terms.items()}


def T(pairs) -> dict:
    return {(tuple(a), tuple(b)): Fraction(c) for (a, b), c in pairs}


class TestExterior:
    def test_anticommute(self):
        assert alg.mul(alg.generator(2), alg.generator(1)) == -alg.monomial([1, 2])

    def test_square_free(self):
        assert not alg.mul(alg.generator(1), alg.generator(1))

    def test_even_commutes(self):
        assert alg.mul(alg.generator(2, 2), alg.generator(1, 2)) == alg.monomial([1, 2], 2)

    def test_grading_mismatch(self):
        with pytest.raises(alg.AlgebraError):
            alg.mul(alg.generator(1, 1), alg.generator(2, 2))

    def test_merge_sign_matches_permutation_sign(self):
        for a in range(16):
            for b in range(16):
                if a & b:
                    continue
                want = oracles.perm_sign(to_indices(a) + to_indices(b))
                assert alg.merge_sign(a, b) == want


class TestZeroDivisors:
    def test_two_factor_expansion(self):
        got = as_dict(alg.tensor_mul(alg.zero_divisor(1), alg.zero_divisor(2)))
        want = T([(((), (1, 2)), 1), (((1,), (2,)), -1), (((2,), (1,)), 1), (((1, 2), ()), 1)])
        assert got == want

    def test_odd_square_vanishes(self):
        assert not alg.tensor_mul(alg.zero_divisor(3), alg.zero_divisor(3))

    def test_even_square(self):
        sq = alg.tensor_mul(alg.zero_divisor(1, 2), alg.zero_divisor(1, 2))
        assert as_dict(sq) == T([(((1,), (1,)), -2)])

    def test_index_range(self):
        with pytest.raises(alg.AlgebraError):
            alg.zero_divisor(4, n=3)

    @pytest.mark.parametrize("degree", [1, 2, 3])
    def test_matches_oracle(self, degree):
        for idx in ([1, 2, 3], [3, 1, 2, 4], [2, 2], [1, 4, 1]):
            assert as_dict(alg.zero_divisor_product(idx, degree=degree)) == oracles.iterated(idx, degree)


class TestShuffle:
    def test_z1(self):
        assert as_dict(alg.shuffle_expansion(1)) == T([(((), (1,)), 1), (((1,), ()), -1)])

    def test_z2(self):
        assert alg.shuffle_expansion(2) == alg.tensor_mul(alg.zero_divisor(1), alg.zero_divisor(2))

    @pytest.mark.parametrize("z", range(0, 9))
    def test_iterated(self, z):
        closed = alg.shuffle_expansion(z)
        assert closed == alg.zero_divisor_product(range(1, z + 1))
        assert len(closed.terms) == 2**z

    def test_cap(self):
        with pytest.raises(alg.AlgebraError):
            alg.shuffle_expansion(17)


class TestReduction:
    def test_figure_eight(self):
        u = alg.reduce_mod_complex(alg.shuffle_expansion(2), FIG8)
        assert as_dict(u) == T([(((1,), (2,)), -1), (((2,), (1,)), 1)])

    def test_full_simplex_identity(self):
        u = alg.shuffle_expansion(4)
        assert alg.reduce_mod_complex(u, full_simplex(4)) == u

    def test_unit_survives(self):
        u = alg.tensor_one()
        assert alg.reduce_mod_complex(u, from_facets(3, [])) == u


class TestCertificates:
    def test_figure_eight(self):
        c = alg.zcl_witness(FIG8)
        assert (c.value, c.certified) == (2, True)

    def test_skeleton(self):
        c = alg.zcl_witness(skeleton(5, 2))
        assert (c.value, c.certified) == (4, True)

    @pytest.mark.parametrize("n", [1, 3, 5])
    def test_full_simplex(self, n):
        c = alg.zcl_witness(full_simplex(n))
        assert (c.value, c.certified) == (n, True)

    def test_even_figure_eight(self):
        c = alg.zcl_witness(FIG8, "even")
        assert (c.value, c.certified) == (2, True)

    def test_even_needs_even_degree(self):
        with pytest.raises(alg.AlgebraError):
            alg.zcl_witness(FIG8, "even", degree=3)


class TestExhaustive:
    def test_cases(self):
        assert alg.zcl_exhaustive_basic(FIG8) == 2
        assert alg.zcl_exhaustive_basic(P3) == 3
        assert alg.zcl_exhaustive_basic(skeleton(4, 1)) == 2

    def test_cap(self):
        with pytest.raises(alg.AlgebraError):
            alg.zcl_exhaustive_basic(full_simplex(15))


class TestPoincare:
    def test_cases(self):
        assert alg.poincare_polynomial(P3) == [1, 3, 2]
        assert alg.poincare_polynomial(full_simplex(3)) == [1, 3, 3, 1]
        assert alg.poincare_polynomial(FIG8) == [1, 2]


def test_records_are_exact_strings():
    recs = alg.tensor_records(alg.shuffle_expansion(2))
    assert {r["coeff"] for r in recs} == {"1/1", "-1/1"}
    assert recs[0] == {"left": [], "right": [1, 2], "coeff": "1/1"}
