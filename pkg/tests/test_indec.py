import random

import pytest

from quadpart.qfield import NotTotallyPositive, QuadInt, make_field
from quadpart.indec import Decomp, indec_seq


def q(a, b, d):
    return QuadInt(a, b, make_field(d))


def test_beta_examples():
    seq = indec_seq(2)
    assert seq.beta(0) == q(1, 0, 2)
    assert seq.beta(1) == q(2, 1, 2)
    assert seq.beta(2) == q(3, 2, 2)
    assert seq.beta(-1) == q(2, -1, 2)
    seq5 = indec_seq(5)
    assert seq5.beta(1) == seq5.units.eps_plus == q(1, 1, 5)
    seq3 = indec_seq(3)
    assert seq3.beta(1) == q(2, 1, 3)  # u_1 = 1, so index 1 opens the i=1 block


def test_v_examples():
    seq = indec_seq(2)
    assert seq.v(0) == 4
    assert 4 * seq.beta(0) == seq.beta(-1) + seq.beta(1)
    assert seq.v(1) == 2
    assert 2 * seq.beta(1) == seq.beta(0) + seq.beta(2)
    assert indec_seq(3).v(1) == 4


def test_three_term_relation_window():
    for d in (2, 3, 5, 6, 19, 31):
        seq = indec_seq(d)
        w = 3 * seq.s_prime
        for j in range(-w, w + 1):
            assert seq.v(j) * seq.beta(j) == seq.beta(j - 1) + seq.beta(j + 1)
            assert seq.v(-j) == seq.v(j)


def test_conjugate_symmetry_and_monotonicity():
    for d in (2, 5, 13, 22):
        seq = indec_seq(d)
        w = 2 * seq.s_prime + 2
        for j in range(-w, w + 1):
            assert seq.beta(-j) == seq.beta(j).conjugate()
            assert seq.beta(j).cmp_real(seq.beta(j + 1)) < 0


def test_unit_period_shift():
    for d in (2, 3, 5, 13, 21, 46):
        seq = indec_seq(d)
        ep = seq.units.eps_plus
        w = 2 * seq.s_prime
        for j in range(-w, w + 1):
            assert seq.beta(j + seq.s_prime) == ep * seq.beta(j)


def test_canonical_decomp_examples():
    seq = indec_seq(2)
    assert seq.canonical_decomp(q(4, 2, 2)) == Decomp(1, 2, 0)
    assert seq.canonical_decomp(seq.beta(5)) == Decomp(5, 1, 0)
    d = seq.canonical_decomp(q(5, 2, 2))
    assert d == Decomp(0, 1, 2)
    assert d.e * seq.beta(d.j) + d.f * seq.beta(d.j + 1) == q(5, 2, 2)


def test_canonical_decomp_round_trip():
    rng = random.Random(41)
    for d in (2, 3, 5, 13, 29):
        seq = indec_seq(d)
        for _ in range(60):
            j = rng.randint(-2 * seq.s_prime, 2 * seq.s_prime)
            e = rng.randint(1, 50)
            f = rng.randint(0, 50)
            alpha = e * seq.beta(j) + f * seq.beta(j + 1)
            assert seq.canonical_decomp(alpha) == Decomp(j, e, f)


def test_canonical_decomp_rejects_nonpositive():
    seq = indec_seq(2)
    with pytest.raises(NotTotallyPositive):
        seq.canonical_decomp(q(1, 1, 2))
    with pytest.raises(NotTotallyPositive):
        seq.canonical_decomp(q(0, 0, 2))


def test_indecomposables_leq_pinned_by_oracle():
    seq = indec_seq(2)
    got = seq.indecomposables_leq(q(4, 2, 2))
    # beta_{-1} = 2 - sqrt(2) fails the conjugate embedding (2+sqrt(2) > 4-2sqrt(2)),
    # so the list is exactly indices 0..2.
    assert [(j, b) for j, b in got] == [(0, q(1, 0, 2)), (1, q(2, 1, 2)), (2, q(3, 2, 2))]
    for d in (2, 5, 7):
        seqd = indec_seq(d)
        one = QuadInt(1, 0, make_field(d))
        assert seqd.indecomposables_leq(one) == [(0, one)]
    seq5 = indec_seq(5)
    assert seq5.indecomposables_leq(seq5.units.eps_plus) == [(1, seq5.units.eps_plus)]


def test_indecomposables_leq_matches_succeq_filter():
    rng = random.Random(43)
    for d in (2, 3, 13):
        seq = indec_seq(d)
        for _ in range(25):
            j = rng.randint(-seq.s_prime, seq.s_prime)
            alpha = rng.randint(1, 4) * seq.beta(j) + rng.randint(0, 4) * seq.beta(j + 1)
            got = seq.indecomposables_leq(alpha)
            w = 3 * seq.s_prime + 4
            brute = [(k, seq.beta(k)) for k in range(-w, w + 1)
                     if alpha.succeq(seq.beta(k))]
            assert got == brute


def test_is_indecomposable():
    seq = indec_seq(2)
    assert seq.is_indecomposable(q(2, 1, 2))
    assert q(2, 1, 2).norm() == make_field(2).c_d
    assert not seq.is_indecomposable(q(4, 2, 2))
    assert seq.is_indecomposable(q(1, 0, 2))


def test_indecomposable_norm_bound_and_attainment():
    # Attainment of the norm bound is only asserted where the scan confirms
    # it: fields with a norm -1 fundamental unit from a pinned set.
    for d in (2, 5, 10, 13):
        seq = indec_seq(d)
        assert seq.units.eps.norm() == -1
        norms = [seq.beta(j).norm() for j in range(seq.s_prime)]
        assert all(1 <= n <= seq.ctx.c_d for n in norms)
        assert max(norms) == seq.ctx.c_d
    for d in (3, 6, 7, 19, 21):
        seq = indec_seq(d)
        assert all(1 <= seq.beta(j).norm() <= seq.ctx.c_d
                   for j in range(-seq.s_prime, 2 * seq.s_prime))


def test_balanced_is_unit_multiple_with_small_skew():
    rng = random.Random(47)
    for d in (2, 13, 31):
        seq = indec_seq(d)
        ep = seq.units.eps_plus
        for _ in range(20):
            j = rng.randint(0, seq.s_prime - 1)
            alpha = rng.randint(1, 5) * seq.beta(j) + rng.randint(0, 5) * seq.beta(j + 1)
            for k in range(4):
                alpha = alpha * ep  # skew it on purpose
            bal = seq.balanced(alpha)
            assert bal.norm() == alpha.norm()
            sq = ep * ep
            assert bal.cmp_real(bal.conjugate() * sq) <= 0
            assert bal.conjugate().cmp_real(bal * sq) <= 0
