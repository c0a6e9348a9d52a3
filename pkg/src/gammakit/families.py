"""Polynomial families computed by recurrence or convolution.

This is the fast path. Every family in :data:`FAMILIES` also carries an
oracle that recomputes it by brute-force enumeration in
:mod:`gammakit.permstats`; the two are compared in the test suite and by
``gammakit verify``.

Family names::

    A_xys    A_n(x,y,s)       basc / des / suc over S_n
    At_xy    tilde A_n(x,y)   asc and des+1 over S_n
    A_x      A_n(x)           Eulerian polynomials
    B_xystpq B_n(x,y,s,t,p,q) six statistics over B_n
    B_xystq  B_n(x,y,s,t,q)   same with p = 1
    B_x      B_n(x)           type B Eulerian polynomials
    d_x, d_xy, d_xys          derangement polynomials and refinements
    dB_xq, dB_x, dBt_x        type B derangements by exc (and N), by exc_B
    d_xr     d_{n,r}(x)       r-colored derangements (parameter r)
    f_plus, f_minus           the two gamma-positive parts of dB_xq
    Phi      Phi_n(x,y)
    b_x      stellahedron h-polynomial
    bQ_x     sum 4^i Q(n,i) x^i (left peaks)
    S_x      simsun descent polynomial
    P_x, Ps_x                 Roselle's P_n and P*_n
    C_sx, M_sx                fix/exc over cda-free and simsun-2 permutations
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Callable, Dict, List, Optional, Tuple

from . import permstats as ps
from .exactalg import (ONE, ZERO, MultiPoly, PolyError, as_poly, divide_linear, reciprocal_in,
                       substitute, variables)
from .grammarcalc import Derivation, builtin

x, y, s, t, p, q, h = variables("x y s t p q h")


class UnknownFamily(KeyError):
    pass


class NotInSpan(ValueError):
    pass


# basic families -----------------------------------------------------------------


@lru_cache(maxsize=None)
def A_xys(n: int) -> MultiPoly:
    if n <= 1:
        return ONE
    prev = A_xys(n - 1)
    return (s + y) * prev + x * y * (prev.diff("x") + prev.diff("y") + prev.diff("s"))


@lru_cache(maxsize=None)
def Phi(n: int) -> MultiPoly:
    if n < 2:
        return ZERO
    return x * y * sum((x ** a * y ** (n - 2 - a) for a in range(n - 1)), ZERO)


@lru_cache(maxsize=None)
def _phi_sequence(n: int, head: MultiPoly, scale: MultiPoly, yv: MultiPoly) -> Tuple[MultiPoly, ...]:
    """F_0..F_n with F_m = head^m + sum_{k<=m-2} C(m,k) F_k Phi_{m-k}(x, yv) scale^{m-k}."""
    if n == 0:
        return (ONE,)
    seq = list(_phi_sequence(n - 1, head, scale, yv))
    m = n
    acc = head ** m
    for k in range(m - 1):
        phi = substitute(Phi(m - k), {"y": yv})
        acc = acc + comb(m, k) * seq[k] * phi * scale ** (m - k)
    seq.append(acc)
    return tuple(seq)


def B_xystq(n: int) -> MultiPoly:
    return _phi_sequence(n, s + q * t, 1 + q, y)[n]


def d_xy(n: int) -> MultiPoly:
    return _phi_sequence(n, ZERO, ONE, y)[n]


def A_x(n: int) -> MultiPoly:
    return _phi_sequence(n, ONE, ONE, ONE)[n]


def d_x(n: int) -> MultiPoly:
    return _phi_sequence(n, ZERO, ONE, ONE)[n]


def B_x(n: int) -> MultiPoly:
    return _phi_sequence(n, 1 + x, MultiPoly.const(2), ONE)[n]


def dB_x(n: int) -> MultiPoly:
    return _phi_sequence(n, ONE, MultiPoly.const(2), ONE)[n]


_G2_J = Derivation(builtin("G2"), MultiPoly.var("J"))


def B_xystpq(n: int) -> MultiPoly:
    # p symbolic: only the grammar route carries it
    return _G2_J[n].coeff_in("J", 1)


@lru_cache(maxsize=None)
def d_xys(n: int) -> MultiPoly:
    return sum((comb(n, i) * s ** i * d_xy(n - i) for i in range(n + 1)), ZERO)


def At_xy(n: int) -> MultiPoly:
    if n == 0:
        return ONE
    return y * substitute(A_xys(n), {"s": x})


@lru_cache(maxsize=None)
def dB_xq(n: int) -> MultiPoly:
    out = ZERO
    for i in range(n + 1):
        inner = sum((comb(i, j) * d_x(n - j) for j in range(i + 1)), ZERO)
        out = out + comb(n, i) * inner * q ** i
    return out


def dBt_x(n: int) -> MultiPoly:
    return reciprocal_in(dB_x(n), "x", n)


@lru_cache(maxsize=None)
def d_xr(n: int, r: int) -> MultiPoly:
    # sum over S_n of (r-1)^fix r^(n-fix) x^(exc+fix), read off d_n(x,y,s)
    if r < 1:
        raise ValueError("r must be >= 1")
    return r ** n * substitute(d_xys(n), {"y": 1, "s": Fraction(r - 1, r) * x})


def b_x(n: int) -> MultiPoly:
    return sum((comb(n, i) * A_x(i) * x ** (n - i) for i in range(n + 1)), ZERO)


def bQ_x(n: int) -> MultiPoly:
    gam = gamma_vector(B_x(n), "x", n)
    return sum((g * x ** k for k, g in enumerate(gam)), ZERO)


def S_x(n: int) -> MultiPoly:
    gam = gamma_vector(A_x(n + 1), "x", n)
    out = ZERO
    for k, g in enumerate(gam):
        c = g / 2 ** k
        if not all(isinstance(v, int) for v in c.coefficients()):
            raise NotInSpan(f"gamma_{k} of A_{n + 1}(x) is not divisible by 2^{k}")
        out = out + c * x ** k
    return out


def P_x(n: int) -> MultiPoly:
    return substitute(A_xys(n), {"y": 1, "s": 0})


def Ps_x(n: int) -> MultiPoly:
    return d_x(n)


def C_sx(n: int) -> MultiPoly:
    tab = gamma_table("b_of_p", n)
    return sum((substitute(v, {"p": 1}) * s ** i * x ** j
                for (m, i, j), v in tab.entries.items() if m == n), ZERO)


def M_sx(n: int) -> MultiPoly:
    tab = gamma_table("gamma", n)
    return sum((v * s ** i * x ** j for (m, i, j), v in tab.entries.items() if m == n), ZERO)


def f_plus(n: int) -> MultiPoly:
    tab = gamma_table("f_plus_minus", n)
    return sum((v * x ** j * (1 + x) ** (n - 2 * j)
                for (m, i, j), v in tab.entries.items() if m == n and i == 0), ZERO)


def f_minus(n: int) -> MultiPoly:
    tab = gamma_table("f_plus_minus", n)
    return sum((v * x ** j * (1 + x) ** (n - 1 - 2 * j)
                for (m, i, j), v in tab.entries.items() if m == n and i == 1), ZERO)


# gamma tables --------------------------------------------------------------------


@dataclass
class GammaTable:
    name: str
    entries: Dict[Tuple[int, int, int], MultiPoly] = field(default_factory=dict)

    def get(self, n, i, j) -> MultiPoly:
        return self.entries.get((n, i, j), ZERO)

    def __getitem__(self, key) -> MultiPoly:
        return self.get(*key)

    def row(self, n) -> Dict[Tuple[int, int], MultiPoly]:
        return {(i, j): v for (m, i, j), v in self.entries.items() if m == n}

    def nonnegative(self) -> bool:
        return all(v.is_nonnegative() for v in self.entries.values())


def _ij_rows(n_max: int, cycle_weight: MultiPoly, free_factor: int) -> List[Dict[Tuple[int, int], MultiPoly]]:
    rows = [{(0, 0): ONE}]
    for n in range(n_max):
        cur = rows[-1]
        nxt = {}
        for i in range(n + 2):
            for j in range((n + 1 - i) // 2 + 1):
                v = (cycle_weight * cur.get((i - 1, j), ZERO)
                     + (1 + i) * cur.get((i + 1, j - 1), ZERO)
                     + j * cur.get((i, j), ZERO)
                     + free_factor * (n - i - 2 * j + 2) * cur.get((i, j - 1), ZERO))
                if v:
                    nxt[(i, j)] = v
        rows.append(nxt)
    return rows


def _fpm_rows(n_max: int):
    plus = [{0: ONE}]
    minus = [{}]
    for n in range(n_max):
        fp, fm = plus[n], minus[n]
        fp_prev = plus[n - 1] if n >= 1 else {}
        fm_prev = minus[n - 1] if n >= 1 else {}
        np_, nm = {}, {}
        for j in range((n + 1) // 2 + 1):
            v = ((1 + q) * n * fp_prev.get(j - 1, ZERO)
                 + (1 + q) * j * fp.get(j, ZERO)
                 + 2 * (1 + q) * (n - 2 * j + 2) * fp.get(j - 1, ZERO)
                 + fm.get(j - 1, ZERO))
            if v:
                np_[j] = v
        for j in range(n // 2 + 1):
            v = (q * fp.get(j, ZERO) + q * fm.get(j, ZERO)
                 + (1 + q) * n * fm_prev.get(j - 1, ZERO)
                 + (1 + q) * j * fm.get(j, ZERO)
                 + 2 * (1 + q) * (n - 2 * j + 1) * fm.get(j - 1, ZERO))
            if v:
                nm[j] = v
        plus.append(np_)
        minus.append(nm)
    return plus, minus


@lru_cache(maxsize=None)
def _table(which: str, n_max: int) -> GammaTable:
    if which == "gamma":
        rows = _ij_rows(n_max, ONE, 1)
    elif which == "b_of_p":
        rows = _ij_rows(n_max, p, 2)
    elif which == "f_plus_minus":
        plus, minus = _fpm_rows(n_max)
        tab = GammaTable(which)
        for n in range(n_max + 1):
            for j, v in plus[n].items():
                tab.entries[(n, 0, j)] = v
            for j, v in minus[n].items():
                tab.entries[(n, 1, j)] = v
        return tab
    else:
        raise KeyError(f"unknown gamma table {which!r}; expected gamma, b_of_p or f_plus_minus")
    tab = GammaTable(which)
    for n, row in enumerate(rows):
        for (i, j), v in sorted(row.items()):
            tab.entries[(n, i, j)] = v
    return tab


def gamma_table(which: str, n_max: int) -> GammaTable:
    """Fill a gamma table by its recurrence from the n = 0 initial values.

    ``gamma``: gamma_{n,i,j}; ``b_of_p``: b_{n,i,j}(p); ``f_plus_minus``:
    entries ``(n, 0, j)`` hold f+_{n,j}(q) and ``(n, 1, j)`` hold f-_{n,j}(q).
    """
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    return _table(which, n_max)


GAMMA_TABLES = ("gamma", "b_of_p", "f_plus_minus")


# basis expansions ----------------------------------------------------------------


def _peel_symmetric(poly: MultiPoly, d: int, where: str) -> Dict[int, MultiPoly]:
    """Expand a symmetric form of degree d in x, y over (xy)^j (x+y)^(d-2j)."""
    rem = poly
    out = {}
    for j in range(d // 2 + 1):
        c = rem.coeff_in("x", d - j).coeff_in("y", j)
        if c:
            out[j] = c
            rem = rem - c * (x * y) ** j * (x + y) ** (d - 2 * j)
    if rem:
        raise NotInSpan(f"{where}: remainder {rem} after peeling the (xy, x+y) basis")
    return out


def expand_gamma_basis(P, n: int, basis: str = "A") -> Dict[Tuple[int, int], MultiPoly]:
    """Recover the coefficients of a gamma-type expansion.

    ``basis="A"``: P = sum_i (s+y)^i sum_j 2^j c_{i,j} (xy)^j (x+y)^(n-i-2j).
    ``basis="B"``: P = sum_i (s+qt)^i (1+q)^(n-i) sum_j c_{i,j} (xy)^j (x+y)^(n-i-2j).
    Returns ``{(i, j): c_{i,j}}``. Raises NotInSpan when P is not of that shape.
    """
    P = as_poly(P)
    if basis == "A":
        shifted = substitute(P, {"s": h - y})
    elif basis == "B":
        shifted = substitute(P, {"s": h - q * t})
    else:
        raise ValueError("basis must be 'A' or 'B'")
    integral = all(isinstance(v, int) for v in P.coefficients())
    out = {}
    for i, slice_ in shifted.collect("h").items():
        if i > n:
            raise NotInSpan(f"h-degree {i} exceeds n={n}")
        for j, c in _peel_symmetric(slice_, n - i, f"slice h^{i}").items():
            if basis == "A":
                c = c / 2 ** j
                if integral and not all(isinstance(v, int) for v in c.coefficients()):
                    raise NotInSpan(f"slice h^{i}: coefficient of (xy)^{j} is not divisible by 2^{j}")
            else:
                for _ in range(n - i):
                    try:
                        c = divide_linear(c, "q", -1)
                    except PolyError:
                        raise NotInSpan(f"slice h^{i}: (1+q)^{n - i} does not divide {c}") from None
            stray = set(c.variables()) & {"x", "y", "h", "s", "t"}
            if stray:
                raise NotInSpan(f"slice h^{i}: coefficient {c} still involves {sorted(stray)}")
            out[(i, j)] = c
    return out


def build_from_gamma(coeffs: Dict[Tuple[int, int], MultiPoly], n: int, basis: str = "A") -> MultiPoly:
    """Inverse of :func:`expand_gamma_basis`."""
    out = ZERO
    for (i, j), c in coeffs.items():
        core = c * (x * y) ** j * (x + y) ** (n - i - 2 * j)
        if basis == "A":
            out = out + (s + y) ** i * 2 ** j * core
        else:
            out = out + (s + q * t) ** i * (1 + q) ** (n - i) * core
    return out


def gamma_vector(P, var: str, center: int) -> List[MultiPoly]:
    """Coefficients g_k with P = sum_k g_k var^k (1+var)^(center-2k).

    Peels from the top degree; raises NotInSpan if P is not palindromic of
    that center. Coefficients may involve other variables.
    """
    P = as_poly(P)
    v = MultiPoly.var(var)
    if P.degree(var) > center:
        raise NotInSpan(f"degree {P.degree(var)} in {var} exceeds center {center}")
    rem = P
    out = []
    for k in range(center // 2 + 1):
        g = rem.coeff_in(var, center - k)
        out.append(g)
        if g:
            rem = rem - g * v ** k * (1 + v) ** (center - 2 * k)
    if rem:
        raise NotInSpan(f"not palindromic about {center}: remainder {rem}")
    return out


def is_gamma_positive(P, var: str, center: int) -> bool:
    try:
        return all(g.is_nonnegative() for g in gamma_vector(P, var, center))
    except NotInSpan:
        return False


def f_pm_split(P, n: int, var: str = "x") -> Tuple[MultiPoly, MultiPoly]:
    """Split P into a part palindromic about n and one palindromic about n-1.

    f- = (x^n P(1/x) - P) / (x - 1), f+ = P - f-; the division must be exact.
    """
    P = as_poly(P)
    diff = reciprocal_in(P, var, n) - P
    try:
        minus = divide_linear(diff, var, 1)
    except PolyError as exc:
        raise NotInSpan(f"no palindromic pair split: {exc}") from None
    return P - minus, minus


# registry -------------------------------------------------------------------------


def _count_poly(cls, n, statname, fn, **params):
    counts = ps.stat_counts(cls, n, [statname], **params)
    return sum((c * fn(v) for (v,), c in sorted(counts.items())), ZERO)


def _oracle_f(n, which):
    parts = f_pm_split(ps.distribution("B_derangements", n, {"exc": "x", "N": "q"}), n) if n else (ONE, ZERO)
    return parts[which]


@dataclass(frozen=True)
class Family:
    name: str
    compute: Callable[..., MultiPoly]
    oracle: Callable[..., MultiPoly]
    group: str  # S, B or Z: which enumeration backs the oracle
    description: str
    params: Tuple[str, ...] = ()


FAMILIES: Dict[str, Family] = {f.name: f for f in [
    Family("A_xys", A_xys, lambda n: ps.distribution("S", n, {"basc": "x", "des": "y", "suc": "s"}),
           "S", "sum over S_n of x^basc y^des s^suc"),
    Family("At_xy", At_xy, lambda n: ONE if n == 0 else y * ps.distribution("S", n, {"asc": "x", "des": "y"}),
           "S", "sum over S_n of x^asc y^(des+1); 1 at n = 0"),
    Family("A_x", A_x, lambda n: ps.distribution("S", n, {"des": "x"}), "S", "Eulerian polynomial"),
    Family("B_xystpq", B_xystpq,
           lambda n: ps.distribution("B", n, {"exc": "x", "aexc": "y", "fix": "s", "st": "t", "cyc": "p", "N": "q"}),
           "B", "sum over B_n of x^exc y^aexc s^fix t^st p^cyc q^N"),
    Family("B_xystq", B_xystq,
           lambda n: ps.distribution("B", n, {"exc": "x", "aexc": "y", "fix": "s", "st": "t", "N": "q"}),
           "B", "B_n(x,y,s,t,1,q)"),
    Family("B_x", B_x, lambda n: ps.distribution("B", n, {"desB": "x"}), "B", "type B Eulerian polynomial"),
    Family("d_x", d_x, lambda n: ps.distribution("derangements", n, {"exc": "x"}), "S", "derangement polynomial"),
    Family("d_xy", d_xy, lambda n: ps.distribution("derangements", n, {"exc": "x", "aexc": "y"}),
           "S", "sum over D_n of x^exc y^aexc"),
    Family("d_xys", d_xys, lambda n: ps.distribution("S", n, {"exc": "x", "aexc": "y", "fix": "s"}),
           "S", "sum over S_n of x^exc y^aexc s^fix"),
    Family("dB_xq", dB_xq, lambda n: ps.distribution("B_derangements", n, {"exc": "x", "N": "q"}),
           "B", "type B q-derangement polynomial"),
    Family("dB_x", dB_x, lambda n: ps.distribution("B_derangements", n, {"exc": "x"}),
           "B", "type B derangements by exc"),
    Family("dBt_x", dBt_x, lambda n: ps.distribution("B_derangements", n, {"excB": "x"}),
           "B", "type B derangements by exc_B"),
    Family("d_xr", d_xr, lambda n, r: ps.distribution("wreath_derangements", n, {"exc": "x"}, r=r),
           "Z", "r-colored derangement polynomial", ("r",)),
    Family("f_plus", f_plus, lambda n: _oracle_f(n, 0), "B", "part of dB_xq palindromic about n"),
    Family("f_minus", f_minus, lambda n: _oracle_f(n, 1), "B", "part of dB_xq palindromic about n-1"),
    Family("Phi", Phi, lambda n: sum((x ** k * y ** (n - k) for k in range(1, n)), ZERO),
           "S", "xy (x^(n-1) - y^(n-1)) / (x - y); 0 for n < 2"),
    Family("b_x", b_x,
           lambda n: _count_poly("cda_free", n, "exc", lambda e: x ** e * (1 + x) ** (n - 2 * e)),
           "S", "stellahedron h-polynomial"),
    Family("bQ_x", bQ_x, lambda n: ps.distribution("S", n, {"lpk": 4 * x}), "S", "sum over S_n of (4x)^lpk"),
    Family("S_x", S_x, lambda n: ps.distribution("simsun", n, {"des": "x"}), "S", "simsun descent polynomial"),
    Family("P_x", P_x, lambda n: ps.distribution("no_succession", n, {"asc": "x"}), "S", "Roselle P_n(x)"),
    Family("Ps_x", Ps_x, lambda n: ps.distribution("pstar", n, {"asc0": "x"}), "S", "Roselle P*_n(x)"),
    Family("C_sx", C_sx, lambda n: ps.distribution("cda_free", n, {"fix": "s", "exc": "x"}),
           "S", "sum over cda-free permutations of s^fix x^exc"),
    Family("M_sx", M_sx, lambda n: ps.distribution("simsun2", n, {"fix": "s", "exc": "x"}),
           "S", "sum over simsun permutations of the second kind of s^fix x^exc"),
]}


def family(name: str, n: int, **params) -> MultiPoly:
    try:
        fam = FAMILIES[name]
    except KeyError:
        raise UnknownFamily(f"unknown family {name!r}; known: {', '.join(FAMILIES)}") from None
    if n < 0:
        raise ValueError("n must be >= 0")
    missing = [k for k in fam.params if k not in params]
    if missing:
        raise ValueError(f"family {name} needs parameter(s) {', '.join(missing)}")
    return fam.compute(n, **{k: params[k] for k in fam.params})


def oracle(name: str, n: int, **params) -> MultiPoly:
    fam = FAMILIES[name]
    return fam.oracle(n, **{k: params[k] for k in fam.params})
