import random

import pytest

from schubring.polyring import Dyadic, SparsePoly, elem_sym
from schubring.gammaring import (
    GammaElement,
    act_generator,
    btilde,
    c_entry,
    c_to_b,
    level_b,
    level_b_prime,
    level_c,
    level_c_double,
    oracle_embed,
    oracle_raw_embed,
    weyl_act,
)
from schubring.weyl import SignedPermutation

g = GammaElement.generator


def rand_raw(rng, nterms=5, maxsub=3, maxfactors=2):
    raw = []
    for _ in range(nterms):
        k = rng.randint(0, maxfactors)
        subs = [rng.randint(1, maxsub) for _ in range(k)]
        xk = tuple(rng.randint(0, 2) for _ in range(2))
        yk = (rng.randint(0, 1),)
        raw.append((subs, xk, yk, rng.randint(-3, 3)))
    return raw


def test_normalize_square_relations():
    assert g(1) * g(1) == g(2) * 2
    assert g(1, "b") * g(1, "b") == g(2, "b")
    # already-strict monomials are fixed points
    f = GammaElement.from_raw("c", [((3, 1), (), (), 1)])
    assert f == GammaElement("c", {((3, 1), (), ()): Dyadic(1)})


def test_normalize_handles_zero_and_negative_subscripts():
    f = GammaElement.from_raw("c", [((2, 0), (), (), 1), ((3, -1), (), (), 5)])
    assert f == g(2)


def test_normalize_idempotent_and_confluent():
    rng = random.Random(3)
    for fam in ("c", "b"):
        for _ in range(15):
            a = GammaElement.from_raw(fam, rand_raw(rng))
            b = GammaElement.from_raw(fam, rand_raw(rng))
            ab = a * b
            # every stored monomial is strictly decreasing
            for subs, _, _ in ab.terms:
                assert all(subs[i] > subs[i + 1] for i in range(len(subs) - 1))
            # re-normalizing the normal form changes nothing
            again = GammaElement.from_raw(
                fam, [(list(s), x, y, c) for (s, x, y), c in ab.terms.items()]
            )
            assert again == ab


def test_family_mixing_rejected():
    with pytest.raises(ValueError):
        g(1, "c") * g(1, "b")


def test_oracle_embedding_basics():
    # c_1 maps to q_1 = 2 e_1(Z)
    q1 = oracle_embed(g(1), 3).poly
    assert q1 == elem_sym(3, 1, "z") * 2
    f = g(1) * g(1)
    assert oracle_embed(f, 4).poly == oracle_embed(g(1), 4).poly * oracle_embed(g(1), 4).poly
    with pytest.raises(ValueError):
        oracle_embed(g(3) * g(2), 2)


def test_oracle_relations_vanish():
    for p in (1, 2, 3):
        # the b-relation maps to zero in the model
        rel = [( [p, p], (), (), 1 )]
        for i in range(1, p):
            rel.append(([p + i, p - i], (), (), 2 * (-1) ** i))
        rel.append(([2 * p], (), (), (-1) ** p))
        assert not oracle_raw_embed("b", rel, 6).poly.terms


def test_oracle_matches_normalization():
    rng = random.Random(4)
    for fam in ("c", "b"):
        for _ in range(20):
            raw = rand_raw(rng)
            f = GammaElement.from_raw(fam, raw)
            n = max((sum(s) for s, _, _ in f.terms), default=0) + 1
            assert oracle_embed(f, n).poly == oracle_raw_embed(fam, raw, n).poly


def test_oracle_injective_on_graded_pieces():
    # images of the strict monomials of weight <= 5 stay independent at N = 6
    from schubring.invariants import exact_rank, strict_partitions_of

    for d in range(1, 6):
        images = []
        keys = set()
        for lam in strict_partitions_of(d):
            poly = oracle_embed(GammaElement("c", {(lam, (), ()): Dyadic(1)}), 6).poly
            keys |= set(poly.terms)
            images.append(poly)
        keys = sorted(keys)
        idx = {k: i for i, k in enumerate(keys)}
        rows = []
        for poly in images:
            row = [__import__("fractions").Fraction(0)] * len(keys)
            for k, c in poly.terms.items():
                row[idx[k]] = c.as_fraction()
            rows.append(row)
        assert exact_rank(rows) == len(images), d


def test_weyl_action_sign_change():
    c1 = g(1)
    assert act_generator(0, c1) == GammaElement.from_raw(
        "c", [((1,), (), (), 1), ((), (1,), (), 2)]
    )
    for p in range(1, 6):
        assert act_generator(0, act_generator(0, g(p))) == g(p)


def test_weyl_action_branch_node():
    for p in range(1, 5):
        bp = g(p, "b")
        assert act_generator(0, act_generator(0, bp)) == bp
    # the explicit display at p = 2
    x1 = GammaElement.monomial(xk=(1,), family="b")
    x2 = GammaElement.monomial(xk=(0, 1), family="b")
    expect = g(2, "b") + (x1 + x2) * (g(1, "b") * 2 + x1 + x2)
    assert act_generator(0, g(2, "b")) == expect


def test_weyl_action_word_independence():
    rng = random.Random(6)
    w = SignedPermutation((-2, 3, -1), "D")
    f = GammaElement.from_raw("b", rand_raw(rng))
    # two different reduced words give the same action
    word = w.reduced_word()
    out1 = f
    for i in reversed(word):
        out1 = act_generator(i, out1)
    assert out1 == weyl_act(w, f)


def test_omega():
    x1 = GammaElement.monomial(xk=(1,))
    y1 = GammaElement.monomial(yk=(1,))
    assert x1.omega() == -y1
    rng = random.Random(7)
    for _ in range(10):
        f = GammaElement.from_raw("c", rand_raw(rng))
        assert f.omega().omega() == f
    # omega exchanges the two indices of the entry family
    for k in range(-2, 3):
        for r in range(-2, 3):
            for p in range(0, 4):
                assert c_entry(k, r, p, "c").omega() == c_entry(-r, -k, p, "c")


def test_c_entry_examples():
    assert c_entry(0, 0, 3, "c") == g(3)
    x1 = GammaElement.monomial(xk=(1,))
    y1 = GammaElement.monomial(yk=(1,))
    assert c_entry(1, 1, 1, "c") == g(1) + x1 - y1
    assert c_entry(0, -1, 1, "c") == g(1) - y1


def test_generating_identity_double_generators():
    # sum {}^n c^n_p t^p = (sum c_p t^p) prod (1+x_j t)/(1+y_j t), to degree 6
    from schubring.polyring import TruncatedSeries

    for n in (1, 2):
        order = 6
        cs = TruncatedSeries(
            [SparsePoly.const(1)] + [SparsePoly.zero()] * order, order
        )
        # compare coefficientwise inside Gamma: build both sides as elements
        num = TruncatedSeries.one(order)
        den = TruncatedSeries.one(order)
        for j in range(1, n + 1):
            num = num * TruncatedSeries([SparsePoly.const(1), SparsePoly.var("x", j)], order)
            den = den * TruncatedSeries([SparsePoly.const(1), SparsePoly.var("y", j)], order)
        ratio = num / den
        for p in range(order + 1):
            rhs = GammaElement.zero("c")
            for j in range(0, p + 1):
                rhs = rhs + g(p - j) * GammaElement.from_poly(ratio.coeffs[j])
            assert level_c_double(n, p) == rhs, (n, p)


def test_convolution_identities():
    # the three convolution identities relating the double generators to
    # elementary symmetric and supersymmetric functions, to degree 6
    from schubring.polyring import supersym_e

    for n in (1, 2, 3):
        for p in range(0, 7):
            # against c^{-n}: gives e_p(X_n)
            acc = GammaElement.zero("c")
            for i in range(0, p + 1):
                acc = acc + level_c_double(n, p - i) * c_entry(0, -n, i, "c") * ((-1) ** i)
            assert acc == GammaElement.from_poly(elem_sym(n, p, "x")), ("hq", n, p)
            # against plain c: gives the supersymmetric functions
            acc = GammaElement.zero("c")
            for i in range(0, p + 1):
                acc = acc + level_c_double(n, p - i) * g(i) * ((-1) ** i)
            assert acc == GammaElement.from_poly(supersym_e(p, n)), ("tq", n, p)


def test_squared_variable_identity():
    # ({}^n c_p)^2 + 2 sum (-1)^i {}^n c_{p+i} {}^n c_{p-i} = e_p of the squares
    for n in (1, 2, 3):
        for p in range(0, 5):
            acc = level_c(n, p, "c") * level_c(n, p, "c")
            for i in range(1, p + 1):
                acc = acc + level_c(n, p + i, "c") * level_c(n, p - i, "c") * (2 * (-1) ** i)
            esq = elem_sym(n, p, "x")
            esq = SparsePoly({(tuple(2 * e for e in xk), yk, zk): c for (xk, yk, zk), c in esq.terms.items()})
            assert acc == GammaElement.from_poly(esq), (n, p)


def test_embedding_into_p_ring():
    rng = random.Random(8)
    for _ in range(10):
        a = GammaElement.from_raw("c", rand_raw(rng))
        b = GammaElement.from_raw("c", rand_raw(rng))
        assert c_to_b(a * b) == c_to_b(a) * c_to_b(b)
        assert c_to_b(a + b) == c_to_b(a) + c_to_b(b)
    assert c_to_b(g(2)) == g(2, "b") * 2


def test_level_b_dictionary():
    # {}^n c_p = {}^n b_p (p < n), {}^n b_n + {}^n b'_n (p = n), 2 {}^n b_p (p > n)
    for n in (1, 2, 3):
        for p in range(1, 6):
            lhs = c_to_b(level_c(n, p, "c"))
            if p < n:
                assert lhs == level_b(n, p), (n, p)
            elif p == n:
                assert lhs == level_b(n, n) + level_b_prime(n), (n, p)
            else:
                assert lhs == level_b(n, p) * 2, (n, p)


def test_b_minus_bprime():
    for n in (1, 2, 3):
        diff = level_b(n, n) - level_b_prime(n)
        assert diff == GammaElement.from_poly(elem_sym(n, n, "x"), "b"), n


def test_btilde_definition():
    b2 = btilde(2)
    y1 = GammaElement.monomial(yk=(1,), family="b")
    y2 = GammaElement.monomial(yk=(0, 1), family="b")
    assert b2 == g(2, "b") - g(1, "b") * (y1 + y2)
