import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from l2burau.freegroup import (
    IDENTITY,
    GroupRingElt,
    fox_derivative,
    fox_gradient,
    format_word,
    g_images,
    parse_word,
    reduce,
    rewrite_alphabet,
    word,
    x_images_in_g,
)

N = 4
letters = st.lists(st.integers(1, N).flatmap(lambda i: st.sampled_from([i, -i])), max_size=20)


def elt(*pairs):
    return GroupRingElt({reduce(w): c for w, c in pairs})


def random_word(rng, n, max_len):
    return reduce(rng.choice([1, -1]) * rng.randint(1, n) for _ in range(rng.randint(0, max_len)))


class TestReduce:
    def test_cancellation(self):
        assert reduce([1, -1]) is IDENTITY

    def test_inner_cancellation(self):
        assert reduce([1, 2, -2, 1]).letters == (1, 1)

    def test_reduced_input_unchanged(self):
        w = reduce([1, -2, 3, 1])
        assert w.letters == (1, -2, 3, 1)
        assert reduce(w.letters) is w

    def test_zero_letter_rejected(self):
        with pytest.raises(ValueError):
            reduce([1, 0])

    @given(letters)
    def test_idempotent_and_reduced(self, raw):
        w = reduce(raw)
        assert reduce(w.letters) is w
        assert all(a != -b for a, b in zip(w.letters, w.letters[1:]))

    @given(letters, letters)
    def test_words_are_interned(self, a, b):
        assert (reduce(a) == reduce(b)) == (reduce(a).letters == reduce(b).letters)

    @given(letters)
    def test_inverse(self, raw):
        w = reduce(raw)
        assert (w * w.inverse()).is_identity()
        assert w.inverse().inverse() is w

    def test_power(self):
        x = reduce([1, 2])
        assert (x ** 3).letters == (1, 2) * 3
        assert (x ** -1) is x.inverse()
        assert (x ** 0) is IDENTITY

    def test_shortlex(self):
        ws = [reduce(w) for w in ([1, 1], [2], [], [-1], [1])]
        assert [w.letters for w in sorted(ws)] == [(), (1,), (-1,), (2,), (1, 1)]


class TestRing:
    def test_mul_example(self):
        a = elt(([], 1), ([1], -1))
        assert a * elt(([1], 1)) == elt(([1], 1), ([1, 1], -1))

    def test_unit(self):
        a = elt(([1, -2], 3), ([2], -1))
        assert a * GroupRingElt.one() == a
        assert GroupRingElt.one() * a == a

    def test_inverse_words_multiply_to_one(self):
        assert elt(([1], 1)) * elt(([-1], 1)) == GroupRingElt.one()

    def test_no_zero_terms(self):
        a = elt(([1], 1)) - elt(([1], 1))
        assert not a and len(a) == 0
        assert a == GroupRingElt.zero()

    def test_scalar_ops(self):
        a = elt(([1], 2))
        assert 3 * a == a.scale(3) == elt(([1], 6))
        assert 1 - a == elt(([], 1), ([1], -2))

    def test_associativity_random_triples(self):
        rng = random.Random(7)
        for _ in range(200):
            a, b, c = (GroupRingElt({random_word(rng, 3, 5): rng.randint(-3, 3)
                                     for _ in range(rng.randint(0, 4))}) for _ in range(3))
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c

    def test_big_integers_stay_exact(self):
        big = 10 ** 30
        a = elt(([1], big))
        assert (a * a).coefficient(reduce([1, 1])) == big * big


class TestFox:
    w = reduce([1, 2, -1])

    def test_conjugate_wrt_x1(self):
        assert fox_derivative(self.w, 1) == elt(([], 1), ([1, 2, -1], -1))

    def test_conjugate_wrt_x2(self):
        assert fox_derivative(self.w, 2) == elt(([1], 1))

    def test_delta_rule(self):
        assert fox_derivative(reduce([2]), 1) == GroupRingElt.zero()
        assert fox_derivative(reduce([2]), 2) == GroupRingElt.one()

    def test_inverse_letter(self):
        assert fox_derivative(reduce([-1]), 1) == elt(([-1], -1))

    def test_identity(self):
        assert all(not d for d in fox_gradient(IDENTITY, 3))

    def test_linear_extension(self):
        a = elt(([1, 2], 2), ([2], -1))
        assert fox_derivative(a, 2) == elt(([1], 2), ([], -1))

    def test_letter_outside_alphabet(self):
        with pytest.raises(ValueError):
            fox_gradient(reduce([3]), 2)

    def test_product_rule_1000_pairs(self):
        rng = random.Random(11)
        for _ in range(1000):
            u, v = random_word(rng, N, 20), random_word(rng, N, 20)
            i = rng.randint(1, N)
            lhs = fox_gradient(u * v, N)[i - 1]
            rhs = fox_gradient(u, N)[i - 1] + GroupRingElt.from_word(u) * fox_gradient(v, N)[i - 1]
            assert lhs == rhs

    def test_fundamental_identity_1000_words(self):
        rng = random.Random(12)
        for _ in range(1000):
            w = random_word(rng, N, 25)
            grad = fox_gradient(w, N)
            total = GroupRingElt.zero()
            for i in range(1, N + 1):
                total = total + grad[i - 1] * (GroupRingElt.from_word(reduce([i])) - 1)
            assert total == GroupRingElt.from_word(w) - 1

    @settings(max_examples=300)
    @given(letters, letters, st.integers(1, N))
    def test_product_rule_property(self, a, b, i):
        u, v = reduce(a), reduce(b)
        assert fox_derivative(u * v, i) == fox_derivative(u, i) + GroupRingElt.from_word(u) * \
            fox_derivative(v, i)


class TestRewrite:
    def test_x2_in_g_alphabet(self):
        assert rewrite_alphabet(reduce([2]), x_images_in_g(3)).letters == (-1, 2)

    def test_g2_in_x_alphabet(self):
        assert rewrite_alphabet(reduce([2]), g_images(3)).letters == (1, 2)

    def test_identity(self):
        assert rewrite_alphabet(IDENTITY, g_images(3)) is IDENTITY

    @given(letters)
    def test_round_trip(self, raw):
        w = reduce(raw)
        g = rewrite_alphabet(w, x_images_in_g(N))
        assert rewrite_alphabet(g, g_images(N)) is w


class TestText:
    def test_parse_forms(self):
        assert parse_word("x1 x2^-1 x1").letters == (1, -2, 1)
        assert parse_word("1 -2 1").letters == (1, -2, 1)
        assert parse_word("a b^-2", names=("a", "b")).letters == (1, -2, -2)
        assert parse_word("") is IDENTITY and parse_word("e") is IDENTITY

    def test_parse_error_names_column(self):
        with pytest.raises(ValueError, match="column 4"):
            parse_word("x1 ?")

    def test_format(self):
        assert format_word(reduce([1, -2])) == "x1 x2^-1"
        assert format_word(IDENTITY) == "e"
        assert format_word(reduce([2, -1]), names=("a", "b")) == "b a^-1"

    @given(letters)
    def test_round_trip(self, raw):
        w = reduce(raw)
        assert parse_word(format_word(w)) is w
        assert parse_word(format_word(w, "g")) is w
        assert word(" ".join(map(str, w.letters))) is w

    def test_ring_format(self):
        assert elt(([], 1), ([1, 2, -1], -1)).format() == "1 - x1 x2 x1^-1"
