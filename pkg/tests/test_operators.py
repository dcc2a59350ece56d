import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from l2burau.braid import BraidWord, action_x, parse_braid
from l2burau.freegroup import (
    IDENTITY,
    GroupRingElt,
    fox_gradient,
    g_images,
    reduce,
    rewrite_alphabet,
)
from l2burau.groups import (
    BraidGroup,
    FreeGroup,
    GammaMap,
    TorusKnotGroup,
    abelianization_gamma,
    exponent_sum_gamma,
    identity_gamma,
)
from l2burau.operators import (
    OperatorMatrix,
    compose,
    l2_burau,
    l2_burau_g,
    precompose_gamma,
    reduced_l2_burau,
)


def elt(oracle, *pairs):
    return GroupRingElt({reduce(w): c for w, c in pairs}, oracle)


def pairs(max_len=8):
    def build(n):
        gen = st.integers(1, n - 1).flatmap(lambda i: st.sampled_from([i, -i]))
        b = st.lists(gen, max_size=max_len).map(lambda ls: BraidWord(n, tuple(ls)))
        return st.tuples(b, b)
    return st.integers(2, 5).flatmap(build)


def braids(max_len=10):
    return pairs(max_len).map(lambda p: p[0])


class TestL2Burau:
    def test_generator_block(self):
        for n, i in ((2, 1), (3, 2), (4, 2)):
            g = identity_gamma(n)
            m = l2_burau(BraidWord(n, (i,)), g)
            o = g.target
            for r in range(n):
                for c in range(n):
                    if (r, c) == (i - 1, i - 1):
                        want = elt(o, ([], 1), ([i, i + 1, -i], -1))
                    elif (r, c) == (i - 1, i):
                        want = elt(o, ([], 1))
                    elif (r, c) == (i, i - 1):
                        want = elt(o, ([i], 1))
                    elif (r, c) == (i, i):
                        want = elt(o)
                    else:
                        want = elt(o, ([], 1)) if r == c else elt(o)
                    assert m[r, c] == want

    def test_trivial_braid(self):
        assert l2_burau(BraidWord.identity(3), identity_gamma(3)).is_identity()

    def test_sigma1_sigma2_entry(self):
        g = identity_gamma(3)
        m = l2_burau(parse_braid("1 2"), g)
        want = elt(g.target, ([1], 1), ([1, 2, 3, -2], -1))
        assert m[1, 0] == want
        assert {g.target.weight(w) for w in m[1, 0].terms} == {1, 2}

    def test_composition_example(self):
        g = identity_gamma(3)
        s1, s2 = parse_braid("1", 3), parse_braid("2", 3)
        lhs = compose(l2_burau(s2, g), l2_burau(s1, precompose_gamma(g, s2)))
        assert lhs == l2_burau(s1 * s2, g)

    def test_compose_with_identity(self):
        g = identity_gamma(3)
        m = l2_burau(parse_braid("1 -2"), g)
        ident = OperatorMatrix.identity(3, g.target)
        assert compose(m, ident) == m == compose(ident, m)

    def test_compose_checks(self):
        a = OperatorMatrix.identity(2, FreeGroup(2))
        with pytest.raises(ValueError):
            compose(a, OperatorMatrix.identity(3, FreeGroup(2)))
        with pytest.raises(ValueError):
            compose(a, OperatorMatrix.identity(2, BraidGroup(3)))

    def test_gamma_rank_must_match(self):
        with pytest.raises(ValueError):
            l2_burau(parse_braid("1", 3), identity_gamma(2))

    def test_cocycle_100_pairs(self):
        rng = random.Random(31)
        for _ in range(100):
            n = rng.randint(3, 5)
            a, b = (BraidWord(n, tuple(rng.choice((1, -1)) * rng.randint(1, n - 1)
                                       for _ in range(rng.randint(0, 8)))) for _ in range(2))
            g = identity_gamma(n)
            assert l2_burau(a * b, g) == compose(l2_burau(b, g), l2_burau(a, precompose_gamma(g, b)))
            gg = identity_gamma(n, "g")
            assert reduced_l2_burau(a * b, gg) == compose(
                reduced_l2_burau(b, gg), reduced_l2_burau(a, precompose_gamma(gg, b)))

    @settings(max_examples=100)
    @given(pairs())
    def test_cocycle_other_targets(self, pair):
        a, b = pair
        n = a.n
        for g in (abelianization_gamma(n), exponent_sum_gamma(n)):
            assert l2_burau(a * b, g) == compose(l2_burau(b, g), l2_burau(a, precompose_gamma(g, b)))

    def test_cocycle_torus_knot_target(self):
        o = TorusKnotGroup(2, 3)
        g = GammaMap(o, (o.parse("b^-1 a"), o.parse("a^-1 b^2")))
        a, b = parse_braid("1 1 -1 1", 2), parse_braid("-1 1 1", 2)
        assert l2_burau(a * b, g) == compose(l2_burau(b, g), l2_burau(a, precompose_gamma(g, b)))

    @given(braids())
    def test_grading_coherent_with_gamma(self, b):
        # each term's weight is preserved when pushed from F_n to an abelian target
        n = b.n
        m_free = l2_burau(b, identity_gamma(n))
        g = exponent_sum_gamma(n)
        for r in range(n):
            for c in range(n):
                for w in m_free[r, c].terms:
                    assert g.target.weight(g(w)) == m_free.oracle.weight(w)


class TestPrecompose:
    def test_trivial_braid(self):
        g = identity_gamma(3)
        assert precompose_gamma(g, BraidWord.identity(3)) is g

    def test_sigma1(self):
        g = precompose_gamma(identity_gamma(3), parse_braid("1", 3))
        assert [w.letters for w in g.images] == [(1, 2, -1), (1,), (3,)]

    @given(pairs())
    def test_reversal(self, pair):
        a, b = pair
        g = identity_gamma(a.n)
        assert precompose_gamma(precompose_gamma(g, b), a).images == \
            precompose_gamma(g, a * b).images


class TestReduced:
    def test_sigma1_b2(self):
        g = identity_gamma(2, "g")
        m = reduced_l2_burau(parse_braid("1", 2), g)
        assert m.shape == (1, 1)
        assert m[0, 0] == elt(g.target, ([2, -1], -1))
        assert m.format() == [["-g2 g1^-1"]]

    def test_middle_generator_block(self):
        n, i = 5, 2
        g = identity_gamma(n, "g")
        m = reduced_l2_burau(BraidWord(n, (i,)), g)
        o = g.target
        u = [i + 1, -i]
        want = [[elt(o, ([], 1)), elt(o, (u, 1)), elt(o)],
                [elt(o), elt(o, (u, -1)), elt(o)],
                [elt(o), elt(o, ([], 1)), elt(o, ([], 1))]]
        for r in range(3):
            for c in range(3):
                assert m[i - 2 + r, i - 2 + c] == want[r][c]

    def test_trivial(self):
        assert reduced_l2_burau(BraidWord.identity(4), identity_gamma(4, "g")).is_identity()

    def test_needs_two_strands(self):
        with pytest.raises(ValueError):
            reduced_l2_burau(BraidWord.identity(1), identity_gamma(1, "g"))

    @given(braids())
    def test_block_structure(self, b):
        n = b.n
        g = identity_gamma(n, "g")
        full = l2_burau_g(b, g)
        one, zero = GroupRingElt.one(g.target), GroupRingElt.zero(g.target)
        assert all(full[i, n - 1] == (one if i == n - 1 else zero) for i in range(n))
        assert full.block(range(n - 1), range(n - 1)) == reduced_l2_burau(b, g)

    @settings(max_examples=50)
    @given(braids())
    def test_chain_rule_against_x_basis(self, b):
        # h(g_j) = h(x_1)...h(x_j); differentiate in x both directly and
        # through the g-basis matrix composed with d g_k / d x_l
        n = b.n
        gx = g_images(n)
        mg = l2_burau_g(b, identity_gamma(n, "g"))
        mx = l2_burau(b, identity_gamma(n))
        to_x = lambda a: a.map_words(lambda w: rewrite_alphabet(w, gx))  # noqa: E731
        dg = [fox_gradient(w, n) for w in gx]
        hx = [GroupRingElt.from_word(w) for w in action_x(b)]
        for j in range(n):
            for l in range(n):
                via_g = GroupRingElt.zero()
                for k in range(n):
                    via_g = via_g + to_x(mg[k, j]) * dg[k][l]
                direct, prefix = GroupRingElt.zero(), GroupRingElt.one()
                for m in range(j + 1):
                    direct = direct + prefix * GroupRingElt(mx[l, m].terms)
                    prefix = prefix * hx[m]
                assert via_g == direct


class TestSerialization:
    @given(braids())
    def test_json_round_trip(self, b):
        for g in (identity_gamma(b.n), abelianization_gamma(b.n)):
            m = l2_burau(b, g)
            back = OperatorMatrix.from_json(json.loads(json.dumps(m.to_json())))
            assert back == m and back.basis == m.basis

    def test_json_grades(self):
        g = identity_gamma(3)
        data = l2_burau(parse_braid("1 2"), g).to_json()
        entry = data["rows"][1][0]
        assert sorted((w, c, k) for w, c, k in entry) == [("x1", 1, 1), ("x1 x2 x3 x2^-1", -1, 2)]

    def test_torus_knot_round_trip(self):
        o = TorusKnotGroup(2, 3)
        g = GammaMap(o, (o.parse("b^-1 a"), o.parse("a^-1 b^2")))
        m = reduced_l2_burau(parse_braid("1 1 1", 2), g)
        assert OperatorMatrix.from_json(m.to_json()) == m

    def test_arithmetic(self):
        o = FreeGroup(2)
        a = OperatorMatrix.build([[elt(o, ([1], 2))]], o)
        assert (a + a) == a.scale(2)
        assert (a - a)[0, 0] == elt(o)
        assert (-a)[0, 0] == elt(o, ([1], -2))
        assert a.minus_identity()[0, 0] == elt(o, ([1], 2), ([], -1))
        assert IDENTITY in OperatorMatrix.identity(1, o)[0, 0].terms
