import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gammakit import families as fam
from gammakit import permstats as ps
from gammakit.exactalg import ONE, ZERO, MultiPoly, variables
from gammakit.grammarcalc import (BUILTINS, CHANGES, Derivation, Grammar, builtin, check_builtin_change,
                                  derive, derive_n, gen_series)

x, y, s, t, p, q, u, v, h, J, L, M = variables("x y s t p q u v h J L M")


def test_first_derivatives():
    assert derive(builtin("G"), L * M) == L * M * (s + y)
    for g in BUILTINS.values():
        assert derive(g, ONE) == ZERO
        assert derive(g, 7) == ZERO


def test_second_derivative_G3():
    assert derive_n(builtin("G3"), J, 2) == J * (p ** 2 * h ** 2 + p * (1 + q) ** 2 * u)


def test_derive_n_G():
    assert derive_n(builtin("G"), L * M, 2) == L * M * ((s + y) ** 2 + 2 * x * y)


def test_dumont_counts_excedances():
    for n in range(6):
        counts = ps.stat_counts("S", n, ["exc"])
        want = sum((c * x ** (e + 1) * y ** (n - e) for (e,), c in counts.items()), ZERO)
        assert derive_n(builtin("dumont"), x, n) == want


def test_G2_third_power_gives_B3():
    assert derive_n(builtin("G2"), J, 3) == J * fam.B_xystpq(3)


def test_derivation_cache_consistent():
    d = Derivation(builtin("G1"), MultiPoly.var("I"))
    assert d[4] == derive(builtin("G1"), d[3])
    assert len(d.powers) == 5


def test_gen_series_shift():
    # d/dz Gen(w; z) = Gen(D w; z)
    g = builtin("G2")
    w = s + q * t
    assert gen_series(g, w, 5).derivative() == gen_series(g, derive(g, w), 4)


@pytest.mark.parametrize("name", sorted(CHANGES))
def test_change_of_grammar(name):
    assert check_builtin_change(name, 5) == []


def test_change_detects_wrong_binding():
    from gammakit.grammarcalc import change_of_grammar_failures
    bad = change_of_grammar_failures(builtin("G2"), builtin("G3"), {"h": "s+t", "u": "x*y", "v": "x+y"},
                                     ("J", "J"), 3)
    assert bad and bad[0] == 1


def test_parse_rules():
    g = Grammar.parse("x -> x*y\ny -> x*y")
    assert g == builtin("dumont")
    with pytest.raises(ValueError):
        Grammar.parse("x -> y; x -> 1")
    with pytest.raises(ValueError):
        Grammar.parse("x = y")


def test_specialize_G4():
    assert builtin("G4").specialize({"q": 1}, rename={"a": "I"}) == builtin("G1")


polys = st.lists(st.tuples(st.sampled_from(["x", "y", "s", "t", "J"]), st.integers(0, 3), st.integers(-3, 3)),
                 max_size=4).map(lambda ts: sum((c * MultiPoly.var(n) ** e for n, e, c in ts), ZERO))


@settings(max_examples=50, deadline=None)
@given(polys, polys)
def test_derivation_is_leibniz_and_linear(a, b):
    g = builtin("G2")
    assert derive(g, a * b) == derive(g, a) * b + a * derive(g, b)
    assert derive(g, a + 3 * b) == derive(g, a) + 3 * derive(g, b)
