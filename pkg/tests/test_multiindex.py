"""Tests for multi-index arithmetic and enumeration."""

import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.exceptions import ContractError, DimensionError, DomainError
from src.models.multiindex import (
    MultiIndex,
    enumerate_below,
    enumerate_grade,
    enumerate_graded,
    enumerate_upto,
    vec_pow,
)


def indices(d: int, top: int = 4):
    return st.lists(st.integers(0, top), min_size=d, max_size=d).map(
        lambda e: MultiIndex(tuple(e))
    )


@st.composite
def index_pairs(draw):
    d = draw(st.integers(1, 4))
    return draw(indices(d)), draw(indices(d))


class TestMultiIndexArithmetic:
    """Modulus, factorial, powers and componentwise operations."""

    def test_modulus(self):
        """|n| is the sum of the entries."""
        assert abs(MultiIndex.of(0, 0, 0)) == 0
        assert abs(MultiIndex.of(2, 1, 1)) == 4
        assert abs(MultiIndex.of(1, 1)) == 2

    def test_factorial(self):
        """n! is the product of the entry factorials."""
        assert MultiIndex.of(0, 0).factorial() == 1
        assert MultiIndex.of(3, 2).factorial() == 12
        assert MultiIndex.of(4).factorial() == 24

    def test_vector_power(self):
        """x^n multiplies the component powers; the empty product is 1."""
        assert vec_pow((5, 7), MultiIndex.of(0, 0)) == 1
        assert vec_pow((2, 3), MultiIndex.of(2, 1)) == 12
        assert vec_pow((Fraction(1, 2), 1), MultiIndex.of(2, 5)) == Fraction(1, 4)

    def test_vector_power_dimension_mismatch(self):
        """Powers need a vector of matching length."""
        with pytest.raises(DimensionError):
            vec_pow((1, 2, 3), MultiIndex.of(1, 1))

    def test_add_sub_leq(self):
        """Componentwise add, checked subtraction and order."""
        assert MultiIndex.of(1, 0) + MultiIndex.of(0, 1) == MultiIndex.of(1, 1)
        assert MultiIndex.of(1, 1).leq(MultiIndex.of(2, 1))
        assert not MultiIndex.of(2, 0).leq(MultiIndex.of(1, 5))
        with pytest.raises(DomainError):
            MultiIndex.of(1, 0).sub_checked(MultiIndex.of(0, 1))

    def test_dimension_mismatch_is_an_error(self):
        """No broadcasting between dimensions."""
        with pytest.raises(DimensionError):
            MultiIndex.of(1, 0) + MultiIndex.of(1, 0, 0)
        with pytest.raises(DimensionError):
            MultiIndex.of(1).leq(MultiIndex.of(1, 1))

    def test_construction_rejects_bad_entries(self):
        """Entries are nonnegative and the dimension is at least one."""
        with pytest.raises(DomainError):
            MultiIndex.of(1, -1)
        with pytest.raises(ContractError):
            MultiIndex(())

    def test_binomial(self):
        """C(n, m) is the product of the entry binomials."""
        assert MultiIndex.of(3, 2).binomial(MultiIndex.of(1, 1)) == 6
        assert MultiIndex.of(2, 2).binomial(MultiIndex.of(0, 0)) == 1

    @given(index_pairs())
    def test_modulus_is_additive(self, pair):
        """|a + b| = |a| + |b|."""
        a, b = pair
        assert abs(a + b) == abs(a) + abs(b)

    @given(index_pairs(), st.lists(st.fractions(max_denominator=5), min_size=4, max_size=4))
    def test_power_is_multiplicative(self, pair, x):
        """x^(a+b) = x^a * x^b."""
        a, b = pair
        x = x[: a.dim]
        assert vec_pow(x, a + b) == vec_pow(x, a) * vec_pow(x, b)

    @given(index_pairs())
    def test_factorial_multiplicative_over_concatenation(self, pair):
        """(a, b)! = a! * b!."""
        a, b = pair
        assert a.concat(b).factorial() == a.factorial() * b.factorial()
        assert a.factorial() >= 1


class TestParsing:
    """Command-line and JSON forms."""

    def test_parse_comma_separated(self):
        """"2,1,0" parses to a three-dimensional index; a lone integer is 1-D."""
        assert MultiIndex.parse("2,1,0") == MultiIndex.of(2, 1, 0)
        assert MultiIndex.parse("4") == MultiIndex.of(4)

    @pytest.mark.parametrize("text", ["", "1,,2", "a", "1,-2", "1.5", "²", "1,①", "٣"])
    def test_parse_rejects_garbage(self, text):
        """Anything but nonnegative integers is a domain error."""
        with pytest.raises(DomainError):
            MultiIndex.parse(text)

    def test_json_is_a_plain_array(self):
        """Serializes to [2, 1, 0]."""
        assert MultiIndex.of(2, 1, 0).to_json() == [2, 1, 0]
        assert MultiIndex.from_json([2, 1, 0]) == MultiIndex.of(2, 1, 0)


class TestEnumeration:
    """Graded lexicographic enumeration."""

    def test_one_dimensional(self):
        """d=1 simply counts up."""
        assert enumerate_graded(1, 3) == [MultiIndex.of(1), MultiIndex.of(2), MultiIndex.of(3)]

    def test_two_dimensional_order(self):
        """Grade first, larger leading entry first inside a grade."""
        assert enumerate_graded(2, 1) == [MultiIndex.of(1, 0), MultiIndex.of(0, 1)]
        assert enumerate_graded(2, 2) == [
            MultiIndex.of(1, 0),
            MultiIndex.of(0, 1),
            MultiIndex.of(2, 0),
            MultiIndex.of(1, 1),
            MultiIndex.of(0, 2),
        ]

    @pytest.mark.parametrize("d,max_abs", [(1, 5), (2, 4), (3, 3), (4, 2)])
    def test_count_and_strict_order(self, d, max_abs):
        """C(max_abs + d, d) - 1 elements, strictly increasing, no duplicates."""
        found = enumerate_graded(d, max_abs)
        assert len(found) == math.comb(max_abs + d, d) - 1
        keys = [n.graded_key() for n in found]
        assert all(a < b for a, b in zip(keys, keys[1:]))

    def test_upto_starts_at_zero(self):
        """enumerate_upto prepends the zero index."""
        found = enumerate_upto(2, 2)
        assert found[0] == MultiIndex.zero(2)
        assert len(found) == 6

    def test_grade_with_cap(self):
        """A cap bounds every entry."""
        assert enumerate_grade(2, 2, cap=MultiIndex.of(1, 1)) == [MultiIndex.of(1, 1)]

    def test_below(self):
        """Nonzero j <= n componentwise, in order."""
        assert enumerate_below(MultiIndex.of(1, 1)) == [
            MultiIndex.of(1, 0),
            MultiIndex.of(0, 1),
            MultiIndex.of(1, 1),
        ]
        assert enumerate_below(MultiIndex.of(3), max_abs=2) == [MultiIndex.of(1), MultiIndex.of(2)]
