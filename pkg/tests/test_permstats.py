from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gammakit import families as fam
from gammakit import permstats as ps
from gammakit.exactalg import reciprocal_in, render, substitute, variables

x, = variables("x")


def test_identity_statistics():
    assert ps.stat((1, 2, 3), "suc") == 2
    assert ps.stat((1, 2, 3), "fix") == 3
    ident = tuple(range(1, 5))
    assert [ps.stat_signed(ident, k) for k in ("fix", "exc", "aexc", "st", "N", "cyc")] == [4, 0, 0, 0, 0, 4]


def test_cycle_double_ascent_example():
    w = ps.from_cycles([[1, 3, 4], [2]], 4)
    assert ps.stat(w, "cda") == 1


def test_remove_largest_letter():
    w = ps.from_cycles([[1, 3, 5, 4], [2]], 5)
    assert ps.remove_letter(w, 5) == ps.from_cycles([[1, 3, 4], [2]], 4)
    with pytest.raises(ValueError):
        ps.remove_letter(w, 3)


def test_simsun_second_kind():
    assert not ps.is_simsun_second_kind(ps.from_cycles([[1, 6, 5, 3, 4], [2]], 6))
    assert ps.is_simsun_second_kind(tuple(range(1, 7)))


def test_signed_labeling_example():
    sigma = ps.from_cycles([[1, 3, -2, 6], [-4], [5]], 6)
    got = [ps.stat_signed(sigma, k) for k in ("exc", "aexc", "fix", "st", "N", "cyc")]
    assert got == [2, 2, 1, 1, 2, 3]


def test_eulerian_small():
    assert render(ps.distribution("S", 3, {"des": "x"})) == "x^2 + 4*x + 1"


def test_cardinalities():
    assert ps.count("S", 4) == 24
    assert ps.count("B", 3) == 48
    assert ps.count("derangements", 4) == 9
    assert ps.count("wreath", 3, r=2) == 48


def test_B2_distribution():
    got = ps.distribution("B", 2, {"exc": "x", "aexc": "y", "fix": "s", "st": "t", "cyc": "p", "N": "q"})
    assert render(got) == render(fam.B_xystpq(2))


def test_colored_zero_colors_reduce_to_plain_exc():
    for w in permutations(range(1, 5)):
        c = ps.ColoredPerm(w, (0,) * 4, 3)
        assert ps.stat_colored(c, "exc") == ps.stat(w, "exc")


def test_colored_reciprocity_n2():
    d22 = ps.distribution("wreath_derangements", 2, {"exc": "x"}, r=2)
    assert ps.count("wreath", 2, r=2) == 8
    assert d22 == reciprocal_in(substitute(fam.dB_xq(2), {"q": 1}), "x", 2)


def test_simsun_des_count():
    # A_4(x) = S(3,0)(x+1)^3 + S(3,1) 2x(x+1) with A_4 = 1 + 11x + 11x^2 + x^3 forces S(3,1) = 4
    S = ps.triangle_S(3)
    assert (S[(3, 0)], S[(3, 1)]) == (1, 4)
    assert S[(3, 0)] * (x + 1) ** 3 + S[(3, 1)] * 2 * x * (x + 1) == fam.A_x(4)


def test_no_succession_by_descents():
    for n in range(1, 7):
        assert ps.distribution("no_succession", n, {"des": "x"}) == fam.d_x(n) + fam.d_x(n - 1)


def test_pstar_class_gives_derangement_polynomial():
    # with rises counted on 1..n-1 the class gives d_n(x)/x; adding the rise at pi(0)=0 gives d_n(x)
    for n in range(1, 7):
        assert x * ps.distribution("pstar", n, {"asc": "x"}) == fam.d_x(n)
        assert ps.distribution("pstar", n, {"asc0": "x"}) == fam.d_x(n)


def test_diaconis_set_identity():
    for n in range(1, 7):
        assert ps.fixed_set_vs_succession_set(n)


def test_roselle():
    assert ps.roselle_failures(6) == []
    P = ps.triangle_P(2)
    assert P[(2, 1, 1)] == 1


def test_parallel_counts_match_serial():
    names = ["exc", "fix", "cyc"]
    assert ps.stat_counts("S", 6, names, jobs=3) == ps.stat_counts("S", 6, names)


def test_bound_exceeded():
    with ps.bound_override(100):
        with pytest.raises(ps.BoundExceeded):
            ps.count("S", 6)
    with ps.bound_override(None):
        assert ps.count("S", 6) == 720


def test_unknown_statistic():
    with pytest.raises(ps.UnknownStatistic):
        ps.stat((1, 2), "nonsense")


perms = st.integers(0, 7).flatmap(lambda n: st.permutations(list(range(1, n + 1)))).map(tuple)
signed = perms.flatmap(lambda w: st.lists(st.sampled_from([1, -1]), min_size=len(w), max_size=len(w))
                       .map(lambda sg: tuple(a * b for a, b in zip(sg, w))))


@settings(max_examples=100, deadline=None)
@given(perms)
def test_exc_aexc_fix_partition(w):
    assert ps.stat(w, "exc") + ps.stat(w, "aexc") + ps.stat(w, "fix") == len(w)


@settings(max_examples=100, deadline=None)
@given(signed)
def test_signed_invariants(sigma):
    n = len(sigma)
    e, a, f, st_, neg = (ps.stat_signed(sigma, k) for k in ("exc", "aexc", "fix", "st", "N"))
    assert e + a + f + st_ == n
    assert 0 <= neg <= n
    assert st_ <= neg


@settings(max_examples=100, deadline=None)
@given(signed)
def test_cycle_round_trip(sigma):
    assert ps.from_cycles(ps.to_cycles(sigma), len(sigma)) == sigma
