from math import comb

import pytest

from gammakit import families as fam
from gammakit import permstats as ps
from gammakit.exactalg import ONE, ZERO, parse, reciprocal_in, render, substitute, variables

x, y, s, t, p, q = variables("x y s t p q")


def test_listed_values():
    assert fam.A_xys(5) == parse("(s+y)^4+12*x*y*(s+y)^2+8*x*y*(s+y)*(x+y)+2*x*y*(x+y)^2+16*x^2*y^2")
    assert fam.dB_xq(3) == parse("x*(1+x)+3*q*x*(2+x)+3*q^2*x*(3+x)+q^3*(1+4*x+x^2)")
    assert fam.Phi(2) == x * y
    assert fam.Phi(0) == ZERO and fam.Phi(1) == ZERO


def test_five_variable_B():
    assert fam.B_xystq(3) == parse("(s+q*t)^3+3*(1+q)^2*(s+q*t)*x*y+(1+q)^3*x*y*(x+y)")
    for n in range(5):
        assert fam.B_xystq(n) == substitute(fam.B_xystpq(n), {"p": 1})


@pytest.mark.parametrize("name", sorted(n for n, f in fam.FAMILIES.items() if not f.params))
def test_family_matches_enumeration(name):
    top = {"S": 6, "B": 5, "Z": 4}[fam.FAMILIES[name].group]
    for n in range(top + 1):
        assert fam.family(name, n) == fam.oracle(name, n), (name, n)


@pytest.mark.parametrize("r", [1, 2, 3])
def test_colored_family(r):
    for n in range(5):
        assert fam.d_xr(n, r) == fam.oracle("d_xr", n, r=r)


def test_unknown_family():
    with pytest.raises(fam.UnknownFamily):
        fam.family("nope", 3)


def test_gamma_table_small_entries():
    g = fam.gamma_table("gamma", 3)
    assert g.get(2, 0, 1) == 1 and g.get(2, 2, 0) == 1 and g.get(2, 1, 0) == 0
    b = fam.gamma_table("b_of_p", 2)
    assert b.get(1, 1, 0) == p
    f = fam.gamma_table("f_plus_minus", 3)
    assert f.get(0, 0, 0) == ONE


def test_f_pm_listed():
    assert fam.f_plus(2) == (1 + 2 * q) * x
    assert fam.f_minus(2) == q ** 2 * (1 + x)


def test_expand_A3():
    assert fam.expand_gamma_basis(fam.A_xys(3), 2, "A") == {(2, 0): 1, (0, 1): 1}


def test_expand_pure_i0_slice():
    got = fam.expand_gamma_basis((x + y) ** 2, 2, "A")
    assert got == {(0, 0): 1}


def test_expand_rejects_non_span():
    with pytest.raises(fam.NotInSpan):
        fam.expand_gamma_basis(x ** 2, 2, "A")


def test_expand_B3_at_p1_counts_cda_free():
    got = fam.expand_gamma_basis(substitute(fam.B_xystpq(3), {"p": 1}), 3, "B")
    counts = ps.stat_counts("cda_free", 3, ["fix", "exc"])
    assert {k: int(render(v)) for k, v in got.items()} == dict(counts)


def test_build_round_trip():
    row = fam.gamma_table("b_of_p", 5).row(5)
    assert fam.expand_gamma_basis(fam.build_from_gamma(row, 5, "B"), 5, "B") == row


def test_f_pm_split_listed():
    plus, minus = fam.f_pm_split(fam.dB_xq(3), 3)
    assert plus == parse("(1+3*q+3*q^2)*(x+x^2)")
    assert minus == parse("q^3+(3*q+6*q^2+4*q^3)*x+q^3*x^2")


def test_f_pm_split_palindromic():
    for n in range(1, 7):
        assert fam.f_pm_split(fam.d_x(n), n) == (fam.d_x(n), ZERO)


def test_f_pm_split_colored():
    for r in (1, 2, 3):
        for n in range(1, 6):
            # split the reciprocal (a d^B specialization), then d_{n,r} = f+ + x f-
            plus, minus = fam.f_pm_split(reciprocal_in(fam.d_xr(n, r), "x", n), n)
            assert plus == substitute(fam.f_plus(n), {"q": r - 1})
            assert plus + x * minus == fam.d_xr(n, r)
            assert fam.is_gamma_positive(plus, "x", n)
            assert fam.is_gamma_positive(minus, "x", n - 1)


def test_gamma_vector():
    assert fam.gamma_vector(1 + 4 * x + x ** 2, "x", 2) == [ONE, 2 * ONE]
    assert not fam.is_gamma_positive(1 - x + x ** 2, "x", 2)
    with pytest.raises(fam.NotInSpan):
        fam.gamma_vector(1 + x ** 2 + x, "x", 3)


def test_stellahedron_polynomial():
    for n in range(6):
        want = sum((fam.A_x(i) * x ** (n - i) * comb(n, i) for i in range(n + 1)), ZERO)
        assert fam.b_x(n) == want
