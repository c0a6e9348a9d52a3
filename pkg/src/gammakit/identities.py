"""Registered checks: every identity the toolkit verifies, by name.

Each check takes the largest order/size ``n`` it should reach and returns
an :class:`Outcome`. Equalities are compared exactly, and a failure carries
the first mismatching pair. Brute-force sides come from
:mod:`gammakit.permstats`. Counts are memoized per process because many
checks reuse the same enumeration.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Callable, Dict, Iterable, List, Optional, Tuple

from . import bijections as bij
from . import families as fam
from . import permstats as ps
from .egfseries import TruncatedEGF, exp_linear, first_mismatch, mul_series, rescale_argument
from .exactalg import ONE, ZERO, MultiPoly, homogenize, reciprocal_in, render, substitute, variables
from .grammarcalc import BUILTINS, Grammar, builtin, change_of_grammar_failures, check_builtin_change, derive_n, gen_series

x, y, s, t, p, q, u, v, J, H, I, L, M, a = variables("x y s t p q u v J H I L M a")


@dataclass
class Outcome:
    ok: bool
    detail: str = ""
    counterexample: Optional[Dict[str, object]] = None


@dataclass(frozen=True)
class Check:
    name: str
    suite: str
    run: Callable[[int], Outcome]
    limit: int  # largest n used by default
    lo: int = 0  # smallest meaningful n
    description: str = ""


# memoized enumeration ----------------------------------------------------------------


@lru_cache(maxsize=None)
def _counts(cls: str, n: int, names: Tuple[str, ...], r=None, k=None, i=None):
    params = {key: val for key, val in (("r", r), ("k", k), ("i", i)) if val is not None}
    return dict(ps.stat_counts(cls, n, list(names), **params))


def dist(cls: str, n: int, stats: Iterable[Tuple[str, object]], **params) -> MultiPoly:
    stats = list(stats.items()) if isinstance(stats, dict) else list(stats)
    counts = _counts(cls, n, tuple(name for name, _ in stats), **params)
    return ps.counts_to_poly(counts, [b for _, b in stats])


def _tri(cls, stat_name, n):
    return {key[0]: c for key, c in _counts(cls, n, (stat_name,)).items()}


# helpers ---------------------------------------------------------------------------------


def compare(pairs: Iterable[Tuple[str, object, object]], what: str = "") -> Outcome:
    """Pass iff every (label, lhs, rhs) has lhs == rhs; report the first miss."""
    count = 0
    for label, lhs, rhs in pairs:
        count += 1
        if lhs != rhs:
            return Outcome(False, f"{label}: sides differ",
                           {"at": label, "lhs": _show(lhs), "rhs": _show(rhs)})
    return Outcome(True, f"{count} {what or 'cases'} agree")


def _show(val):
    if isinstance(val, MultiPoly):
        return render(val)
    if isinstance(val, TruncatedEGF):
        return [render(c) for c in val.coeffs]
    return str(val)


def failures_outcome(fails: List[str], ok_detail: str) -> Outcome:
    if fails:
        return Outcome(False, f"{len(fails)} failure(s)", {"first": fails[0]})
    return Outcome(True, ok_detail)


def series_check(num: TruncatedEGF, den: TruncatedEGF, rhs: TruncatedEGF, label: str) -> Outcome:
    prod = mul_series(rhs, den)
    miss = first_mismatch(prod, num)
    if miss is None:
        return Outcome(True, f"{label} holds through order {num.order}")
    k, lhs_k, rhs_k = miss
    return Outcome(False, f"{label}: coefficient of z^{k}/{k}! differs",
                   {"at": f"z^{k}", "lhs": render(lhs_k), "rhs": render(rhs_k)})


def series(fn, order) -> TruncatedEGF:
    return TruncatedEGF(fn(k) for k in range(order + 1))


# oracle-side polynomials ------------------------------------------------------------


def A_enum(n):  # A_n(x,y,s), n >= 1; A_0 = 1
    return ONE if n == 0 else dist("S", n, [("basc", x), ("des", y), ("suc", s)])


def B_enum(n):
    return dist("B", n, [("exc", x), ("aexc", y), ("fix", s), ("st", t), ("cyc", p), ("N", q)])


def dxys_enum(n):
    return dist("S", n, [("exc", x), ("aexc", y), ("fix", s)])


def dB_enum(n):
    return dist("B_derangements", n, [("exc", x), ("N", q)])


def dx_enum(n):
    return dist("derangements", n, [("exc", x)])


def dnr_enum(n, r):
    return dist("wreath_derangements", n, [("exc", x)], r=r)


def Ax_enum(n):
    return dist("S", n, [("des", x)])


def M_enum(n):
    return dist("simsun2", n, [("fix", s), ("exc", x)])


def C_enum(n):
    return dist("cda_free", n, [("fix", s), ("exc", x)])


# EGF suite --------------------------------------------------------------------------


def egf_A(N):
    rhs = series(lambda k: A_enum(k + 1), N)
    den = mul_series(*(2 * [exp_linear(x, N) * y - exp_linear(y, N) * x]))
    num = exp_linear(y + s, N) * (y - x) ** 2
    return series_check(num, den, rhs, "A(x,y,s;z)(ye^{xz}-xe^{yz})^2 = (y-x)^2 e^{(y+s)z}")


def egf_dxys(N):
    rhs = series(dxys_enum, N)
    den = exp_linear(x, N) * y - exp_linear(y, N) * x
    num = exp_linear(s, N) * (y - x)
    return series_check(num, den, rhs, "d(x,y,s;z)(ye^{xz}-xe^{yz}) = (y-x)e^{sz}")


def egf_At(N):
    rhs = series(lambda k: ONE if k == 0 else y * dist("S", k, [("asc", x), ("des", y)]), N)
    den = exp_linear(x, N) * y - exp_linear(y, N) * x
    num = exp_linear(y, N) * (y - x)
    return series_check(num, den, rhs, "At(x,y;z)(ye^{xz}-xe^{yz}) = (y-x)e^{yz}")


def egf_dB(N):
    rhs = series(dB_enum, N)
    den = exp_linear((1 + q) * x, N) - exp_linear(1 + q, N) * x
    num = exp_linear(q, N) * (1 - x)
    return series_check(num, den, rhs, "d^B(x,q;z)(e^{(1+q)xz}-xe^{(1+q)z}) = (1-x)e^{qz}")


def egf_dnr(r):
    def run(N):
        rhs = series(lambda k: dnr_enum(k, r), N)
        den = exp_linear(r * x, N) - exp_linear(r, N) * x
        num = exp_linear((r - 1) * x, N) * (1 - x)
        return series_check(num, den, rhs, f"d_r(x;z)(e^{{rxz}}-xe^{{rz}}) = (1-x)e^{{(r-1)xz}}, r={r}")
    return run


def egf_B(power):
    def run(N):
        rhs = series(lambda k: substitute(B_enum(k), {"p": power}), N)
        base = exp_linear((1 + q) * x, N) * y - exp_linear((1 + q) * y, N) * x
        den = base ** power
        num = exp_linear(power * (s + q * t), N) * (y - x) ** power
        return series_check(num, den, rhs, f"B(..,p;z) * den^p = (y-x)^p e^{{p(s+qt)z}}, p={power}")
    return run


def egf_gen_s_qt(N):
    gen = gen_series(builtin("G2"), s + q * t, N)
    den = exp_linear((1 + q) * x, N) * y - exp_linear((1 + q) * y, N) * x
    num = den * (s + q * t) + (exp_linear((1 + q) * y, N) - exp_linear((1 + q) * x, N)) * ((1 + q) * x * y)
    return series_check(num, den, gen, "Gen(s+qt;z) closed form")


def egf_C2_M(N):
    C = series(C_enum, N)
    M2x = series(lambda k: substitute(M_enum(k), {"x": 2 * x}), N)
    lhs = mul_series(C, C)
    rhs = mul_series(exp_linear(s, N), M2x)
    miss = first_mismatch(lhs, rhs)
    if miss is None:
        return Outcome(True, f"C^2 = e^{{sz}} M(s,2x;z) through order {N}")
    k, l, r_ = miss
    return Outcome(False, f"coefficient z^{k} differs", {"at": f"z^{k}", "lhs": render(l), "rhs": render(r_)})


def _C_rescaled(N, s_value):
    C = series(lambda k: substitute(C_enum(k), {"s": s_value}), N)
    return rescale_argument(C, {"x": 2}, 1 + x)


def egf_stellahedron(N):
    F = _C_rescaled(N, 1)
    den = TruncatedEGF([x] + [ZERO] * N) - exp_linear(x - 1, N)
    num = exp_linear(x, N) * (x - 1)
    out = series_check(num, den, F, "C(1, x/(1+x)^2; (1+x)z) = (x-1)e^{xz}/(x-e^{(x-1)z})")
    if not out.ok:
        return out
    F0 = _C_rescaled(N, 0)
    den0 = exp_linear(x, N) - exp_linear(1, N) * x
    num0 = TruncatedEGF([1 - x] + [ZERO] * N)
    return series_check(num0, den0, F0, "C(0, x/(1+x)^2; (1+x)z) = (1-x)/(e^{xz}-xe^z)")


def egf_G4(power):
    def run(N):
        g4 = builtin("G4").specialize({"q": power})
        gen = gen_series(g4, a, N)

        def mhat(k):
            m = substitute(M_enum(k), {"s": t, "x": 2 * u})
            return homogenize(m, {"t": 1, "u": 2}, k, v)

        Mser = series(mhat, N)
        target = (Mser ** power) * a
        miss = first_mismatch(gen, target)
        if miss is None:
            return Outcome(True, f"Gen(a;z) = a M^q(t/v, 2u/v^2; vz) through order {N}, q={power}")
        k, l, r_ = miss
        return Outcome(False, f"coefficient z^{k} differs", {"at": f"z^{k}", "lhs": render(l), "rhs": render(r_)})
    return run


# gamma suite -----------------------------------------------------------------------


def gamma_vs_simsun2(N):
    tab = fam.gamma_table("gamma", N)
    pairs = []
    for n in range(N + 1):
        counts = _counts("simsun2", n, ("fix", "exc"))
        keys = set(counts) | set(tab.row(n))
        for key in sorted(keys):
            pairs.append((f"gamma_{n},{key[0]},{key[1]}", tab.get(n, *key), MultiPoly.const(counts.get(key, 0))))
    return compare(pairs, "table entries")


def b_vs_cda_free(N):
    tab = fam.gamma_table("b_of_p", N)
    pairs = []
    for n in range(N + 1):
        counts = _counts("cda_free", n, ("fix", "exc", "cyc"))
        enum: Dict[Tuple[int, int], MultiPoly] = {}
        for (i, j, c), k in counts.items():
            enum[(i, j)] = enum.get((i, j), ZERO) + k * p ** c
        for key in sorted(set(enum) | set(tab.row(n))):
            pairs.append((f"b_{n},{key[0]},{key[1]}(p)", tab.get(n, *key), enum.get(key, ZERO)))
    return compare(pairs, "table entries")


def zeng_b0k(N):
    tab = fam.gamma_table("b_of_p", N)
    pairs = []
    for n in range(N + 1):
        for k in range(n // 2 + 1):
            enum = dist("D_nk", n, [("cyc", p)], k=k)
            pairs.append((f"b_{n},0,{k}(p)", tab.get(n, 0, k), enum))
    return compare(pairs, "entries")


def positivity(N):
    fails = []
    for name in fam.GAMMA_TABLES:
        tab = fam.gamma_table(name, N)
        for key, val in sorted(tab.entries.items()):
            if not val.is_nonnegative():
                fails.append(f"{name}{key} = {val}")
    return failures_outcome(fails, f"all entries of gamma, b_of_p, f_plus_minus nonnegative for n <= {N}")


def expand_A(N):
    tab = fam.gamma_table("gamma", N)
    pairs = []
    for n in range(N + 1):
        got = fam.expand_gamma_basis(fam.A_xys(n + 1), n, "A")
        pairs.append((f"A_{n + 1}", got, {k: val for k, val in tab.row(n).items()}))
    return compare(pairs, "expansions")


def expand_B(N):
    tab = fam.gamma_table("b_of_p", N)
    pairs = []
    for n in range(N + 1):
        got = fam.expand_gamma_basis(fam.B_xystpq(n), n, "B")
        pairs.append((f"B_{n}", got, tab.row(n)))
    return compare(pairs, "expansions")


def gamma_roundtrip(N):
    pairs = []
    for name, basis in (("gamma", "A"), ("b_of_p", "B")):
        tab = fam.gamma_table(name, N)
        for n in range(N + 1):
            row = tab.row(n)
            back = fam.expand_gamma_basis(fam.build_from_gamma(row, n, basis), n, basis)
            pairs.append((f"{name} row {n}", back, row))
    return compare(pairs, "rows")


def fpm_split_vs_table(N):
    pairs = []
    for n in range(N + 1):
        plus, minus = fam.f_pm_split(dB_enum(n), n) if n else (ONE, ZERO)
        pairs.append((f"f+_{n}", plus, fam.f_plus(n)))
        pairs.append((f"f-_{n}", minus, fam.f_minus(n)))
    return compare(pairs, "polynomials")


def fpm_gamma_positive(N):
    fails = []
    for n in range(1, N + 1):
        for qv in (0, 1, 2, 3):
            fp = substitute(fam.f_plus(n), {"q": qv})
            fm = substitute(fam.f_minus(n), {"q": qv})
            for label, P, center in (("f+", fp, n), ("f-", fm, n - 1)):
                try:
                    gam = fam.gamma_vector(P, "x", center)
                except fam.NotInSpan as exc:
                    fails.append(f"{label}_{n}(x,{qv}): {exc}")
                    continue
                if any(not g.is_nonnegative() for g in gam):
                    fails.append(f"{label}_{n}(x,{qv}) has gamma vector {[render(g) for g in gam]}")
    return failures_outcome(fails, f"f+ and f- gamma-positive at q=0..3 for 1 <= n <= {N}")


def fpm_x_system(N):
    pairs = []
    fp = [fam.f_plus(n) for n in range(N + 1)]
    fm = [fam.f_minus(n) for n in range(N + 1)]
    for n in range(1, N):
        new_p = (n * (1 + q) * x * fp[n] + (1 + q) * x * (1 - x) * fp[n].diff("x")
                 + (1 + q) * n * x * fp[n - 1] + x * fm[n])
        new_m = ((q * (1 + x) + (n - 1) * (1 + q) * x) * fm[n] + (1 + q) * x * (1 - x) * fm[n].diff("x")
                 + (1 + q) * n * x * fm[n - 1] + q * fp[n])
        pairs.append((f"f+_{n + 1}", new_p, fp[n + 1]))
        pairs.append((f"f-_{n + 1}", new_m, fm[n + 1]))
    return compare(pairs, "recurrence steps")


def dnr_two_basis(N):
    fails = []
    for r in (1, 2, 3):
        for n in range(1, N + 1):
            if r == 3 and n > min(N, 5):
                continue
            fp = substitute(fam.f_plus(n), {"q": r - 1})
            fm = substitute(fam.f_minus(n), {"q": r - 1})
            got = dnr_enum(n, r)
            if got != fp + x * fm:
                fails.append(f"d_{n},{r}(x) = {got} but f+ + x f- = {fp + x * fm}")
            for P, center in ((fp, n), (fm, n - 1)):
                if not fam.is_gamma_positive(P, "x", center):
                    fails.append(f"d_{n},{r}: part {P} is not gamma-positive about {center}")
    return failures_outcome(fails, "d_{n,r} = f+(x,r-1) + x f-(x,r-1), both parts gamma-positive, r <= 3")


# grammar suite ---------------------------------------------------------------------------


def lemma_LM(N):
    return compare(((f"n={n}", derive_n(builtin("G"), L * M, n), L * M * A_enum(n + 1)) for n in range(N + 1)),
                   "derivatives")


def lemma_Bn(N):
    return compare(((f"n={n}", derive_n(builtin("G2"), J, n), J * B_enum(n)) for n in range(N + 1)),
                   "derivatives")


def dumont(N):
    def rhs(n):
        counts = _counts("S", n, ("exc",))
        return sum((c * x ** (e + 1) * y ** (n - e) for (e,), c in counts.items()), ZERO)
    return compare(((f"n={n}", derive_n(builtin("dumont"), x, n), rhs(n)) for n in range(N + 1)), "derivatives")


def change(name):
    def run(N):
        bad = check_builtin_change(name, N)
        if bad:
            return Outcome(False, f"first failing order {bad[0]}", {"at": f"n={bad[0]}"})
        return Outcome(True, f"{name} agrees for n <= {N}")
    return run


def G4_to_G1(N):
    g4 = builtin("G4").specialize({"q": 1}, rename={"a": "I"})
    if g4 != builtin("G1"):
        return Outcome(False, "G4 at q=1, a=I is not G1", {"lhs": repr(g4), "rhs": repr(builtin("G1"))})
    return Outcome(True, "G4 at q=1, a=I equals G1")


def G4_to_G5(N):
    from fractions import Fraction
    g4 = builtin("G4").specialize({"q": Fraction(1, 2)}, rename={"a": "J"})
    bad = change_of_grammar_failures(g4, builtin("G5"), {"h": t / 2}, (J, J), N)
    if bad:
        return Outcome(False, f"first failing order {bad[0]}", {"at": f"n={bad[0]}"})
    return Outcome(True, f"G4 at q=1/2, a=J, h=t/2 reproduces G5 for n <= {N}")


def DG101(N):
    tab = fam.gamma_table("gamma", N)

    def rhs(n):
        return I * sum((val * t ** i * 2 ** j * u ** j * v ** (n - i - 2 * j)
                        for (i, j), val in tab.row(n).items()), ZERO)
    return compare(((f"n={n}", derive_n(builtin("G1"), I, n), rhs(n)) for n in range(N + 1)), "derivatives")


def DG7uv(N):
    tab = fam.gamma_table("f_plus_minus", N)
    pairs = []
    for n in range(N + 1):
        d = substitute(derive_n(builtin("G7"), J, n), {"s": 0})
        jpart = d.coeff_in("J", 1).coeff_in("H", 0)
        hpart = d.coeff_in("H", 1).coeff_in("J", 0)
        want_j = sum((val * u ** j * v ** (n - 2 * j) for (m, i, j), val in tab.entries.items()
                      if m == n and i == 0), ZERO)
        want_h = sum((val * u ** j * v ** (n - 1 - 2 * j) for (m, i, j), val in tab.entries.items()
                      if m == n and i == 1), ZERO)
        pairs.append((f"J-part n={n}", jpart, want_j))
        pairs.append((f"H-part n={n}", hpart, want_h))
        pairs.append((f"no JH or J^2 terms n={n}", d, J * jpart + H * hpart))
    return compare(pairs, "parts")


def G3_second(N):
    got = derive_n(builtin("G3"), J, 2)
    return compare([("D^2(J)", got, J * (p ** 2 * MultiPoly.var("h") ** 2 + p * (1 + q) ** 2 * u))], "values")


# bijection suite --------------------------------------------------------------------------


def thm03_bijections(N):
    fails = []
    total = 0
    for n in range(1, N + 1):
        for i in range(1, n + 1):
            total += ps.count("B_tilde", n, i=i)
            fails.extend(f"n={n} i={i}: {f}" for f in bij.dniB_failures(n, i))
    return failures_outcome(fails, f"phi1/phi2/phi3 bijective and exc-preserving on {total} elements, n <= {N}")


def phi3_example(N):
    sigma = ps.from_cycles([[1, 4, 3, -9, -8], [2, 5], [-6], [-7]], 9)
    want = ps.from_cycles([[2, 5, 4, -9, 1], [3, 6], [-7], [-8]], 9)
    got = bij.phi3(sigma)
    return compare([("phi3((1,4,3,-9,-8)(2,5)(-6)(-7))", ps.format_cycles(ps.to_cycles(got)),
                     ps.format_cycles(ps.to_cycles(want)))], "examples")


def mfs_examples(N):
    w = ps.from_cycles([[1, 10, 6, 5, 7, 3, 2, 8], [4, 9]], 10)
    cases = [(3, [[1, 3, 10, 6, 5, 7, 2, 8], [4, 9]]), (6, [[1, 6, 10, 5, 7, 3, 2, 8], [4, 9]])]
    return compare(((f"phi'_{k}", bij.mfs_action(w, k), ps.from_cycles(c, 10)) for k, c in cases), "examples")


def mfs_involution(N):
    fails = []
    for n in range(1, N + 1):
        fails.extend(f"n={n}: {w} at {k}" for w, k in bij.mfs_involution_failures(n))
    return failures_outcome(fails, f"phi'_x is an involution on double ascents/descents for n <= {N}")


def mfs_cardinality(N):
    fails = []
    for n in range(1, N + 1):
        fails.extend(bij.mfs_cardinality_failures(n))
    return failures_outcome(fails, f"|S2_(n,i,j+1,k)| = (n-i-2j)|S1_(n,i,j,k)| for n <= {N}")


# classical identities ----------------------------------------------------------------------


def An1x(N):
    def rhs(n):
        S = _tri("simsun", "des", n)
        return sum((c * (2 * x) ** i * (x + 1) ** (n - 2 * i) for i, c in S.items()), ZERO)
    return compare(((f"n={n}", Ax_enum(n + 1), rhs(n)) for n in range(1, N + 1)), "polynomials")


def AnxWni(N):
    def rhs(n):
        W = _tri("S", "ipk", n)
        return sum((c * 4 ** i * x ** i * (1 + x) ** (n - 1 - 2 * i) for i, c in W.items()), ZERO)
    return compare(((f"n={n}", 2 ** (n - 1) * Ax_enum(n), rhs(n)) for n in range(1, N + 1)), "polynomials")


def Anx_gamma(N):
    def rhs(n):
        g = _counts("S", n, ("dd", "des"))
        return sum((c * x ** j * (1 + x) ** (n - 1 - 2 * j) for (d, j), c in g.items() if d == 0), ZERO)
    return compare(((f"n={n}", Ax_enum(n), rhs(n)) for n in range(1, N + 1)), "polynomials")


def Bnxgamma(N):
    def rhs(n):
        Q = _tri("S", "lpk", n)
        return sum((c * 4 ** i * x ** i * (1 + x) ** (n - 2 * i) for i, c in Q.items()), ZERO)
    return compare(((f"n={n}", dist("B", n, [("desB", x)]), rhs(n)) for n in range(N + 1)), "polynomials")


def WnkSnk(N):
    pairs = []
    for n in range(N):
        W = _tri("S", "ipk", n + 1)
        S = _tri("simsun", "des", n)
        for i in sorted(set(W) | set(S)):
            pairs.append((f"W({n + 1},{i})", W.get(i, 0), 2 ** (n - i) * S.get(i, 0) if i <= n else 0))
    return compare(pairs, "entries")


def zeng(N):
    def rhs(n):
        return sum((dist("D_nk", n, [("cyc", q)], k=k) * x ** k * (1 + x) ** (n - 2 * k)
                    for k in range(1, n // 2 + 1)), ZERO)
    return compare(((f"n={n}", dist("derangements", n, [("exc", x), ("cyc", q)]), rhs(n))
                    for n in range(2, N + 1)), "polynomials")


def roselle(N):
    return failures_outcome(ps.roselle_failures(N), f"both identities hold for n <= {N}")


def diaconis(N):
    bad = [n for n in range(1, N + 1) if not ps.fixed_set_vs_succession_set(n)]
    return failures_outcome([f"n={n}" for n in bad], f"set identity holds for n <= {N}")


def conv_At_d(N):
    At = series(lambda k: ONE if k == 0 else y * dist("S", k, [("asc", x), ("des", y)]), N)
    prod = mul_series(At, series(dxys_enum, N))
    return compare(((f"n={n}", prod[n], A_enum(n + 1)) for n in range(N + 1)), "coefficients")


def conv_BB(N):
    Bs = series(lambda k: substitute(B_enum(k), {"t": y, "p": 1, "q": 1}), N)
    prod = mul_series(Bs, Bs)
    return compare(((f"n={n}", prod[n], 2 ** n * A_enum(n + 1)) for n in range(N + 1)), "coefficients")


def stellahedron(N):
    def lhs(n):
        counts = _counts("cda_free", n, ("exc",))
        return sum((c * x ** e * (1 + x) ** (n - 2 * e) for (e,), c in counts.items()), ZERO)

    def rhs(n):
        return sum((comb(n, i) * Ax_enum(i) * x ** (n - i) for i in range(n + 1)), ZERO) if n else ONE
    return compare(((f"n={n}", lhs(n), rhs(n)) for n in range(N + 1)), "polynomials")


def coro(N):
    seqs = {
        "A_n(x)": ([ONE] + [Ax_enum(n) for n in range(1, N + 1)], ONE, 1),
        "d_n(x)": ([dx_enum(n) for n in range(N + 1)], ZERO, 1),
        "B_n(x)": ([dist("B", n, [("desB", x)]) for n in range(N + 1)], 1 + x, 2),
        "d^B_n(x)": ([dist("B_derangements", n, [("exc", x)]) for n in range(N + 1)], ONE, 2),
    }
    pairs = []
    for name, (F, head, scale) in seqs.items():
        for n in range(2, N + 1):
            acc = head ** n
            for k in range(n - 1):
                geo = sum((x ** e for e in range(1, n - k)), ZERO)
                acc = acc + comb(n, k) * F[k] * geo * scale ** (n - k)
            pairs.append((f"{name}, n={n}", F[n], acc))
    return compare(pairs, "recurrence steps")


def Dnbxq(N):
    tab = fam.gamma_table("b_of_p", N)

    def rhs(n):
        return sum((q ** i * (1 + q) ** (n - i) * substitute(val, {"p": 1}) * x ** j * (x + 1) ** (n - i - 2 * j)
                    for (i, j), val in tab.row(n).items()), ZERO)
    return compare(((f"n={n}", dB_enum(n), rhs(n)) for n in range(N + 1)), "polynomials")


def propdnbx(N):
    pairs = []
    for qv in (0, 1, 2):
        top = N if qv < 2 else min(N, 5)
        for n in range(top + 1):
            lhs = substitute(dB_enum(n), {"q": qv})
            pairs.append((f"q={qv} n={n}", lhs, reciprocal_in(dnr_enum(n, qv + 1), "x", n)))
    return compare(pairs, "polynomials")


def thm03(N):
    d = [dx_enum(n) for n in range(N + 1)]

    def rhs(n):
        return sum((comb(n, i) * comb(i, j) * d[n - j] * q ** i for i in range(n + 1) for j in range(i + 1)), ZERO)
    return compare(((f"n={n}", dB_enum(n), rhs(n)) for n in range(N + 1)), "polynomials")


def dniBx(N):
    pairs = []
    for n in range(1, N + 1):
        for i in range(1, n + 1):
            lhs = dist("B_tilde", n, [("exc", x)], i=i)
            rhs = dist("B_tilde", n, [("exc", x)], i=i - 1) + dist("B_tilde", n - 1, [("exc", x)], i=i - 1)
            pairs.append((f"n={n} i={i}", lhs, rhs))
    return compare(pairs, "polynomials")


def ns_des(N):
    return compare(((f"n={n}", dist("no_succession", n, [("des", x)]), dx_enum(n) + dx_enum(n - 1))
                    for n in range(1, N + 1)), "polynomials")


def desB_wexc(N):
    return compare(((f"n={n}", dist("B", n, [("desB", x)]), dist("B", n, [("wexc", x)])) for n in range(N + 1)),
                   "distributions")


def chow_reciprocal(N):
    return compare(((f"n={n}", dist("B_derangements", n, [("exc", x)]),
                     reciprocal_in(dist("B_derangements", n, [("excB", x)]), "x", n)) for n in range(N + 1)),
                   "polynomials")


def chow_toufik(N):
    pairs = []
    for r in (1, 2, 3):
        top = N if r < 3 else min(N, 5)
        for n in range(1, top + 1):
            counts = _counts("S", n, ("fix", "exc"))
            rhs = sum((c * (r - 1) ** f * r ** (n - f) * x ** (e + f) for (f, e), c in counts.items()), ZERO)
            pairs.append((f"r={r} n={n}", dnr_enum(n, r), rhs))
    return compare(pairs, "polynomials")


def C_half(N):
    def lhs(n):
        counts = _counts("cda_free", n, ("fix", "exc"))
        return sum((c * 2 ** (n - f) * x ** e for (f, e), c in counts.items()), ZERO)
    return compare(((f"n={n}", lhs(n), dist("S", n, [("lpk", 4 * x)])) for n in range(N + 1)), "polynomials")


def rs_ss(N):
    return compare(((f"n={n}", dist("simsun", n, [("des", x)]), dist("simsun2", n, [("exc", x)]))
                    for n in range(N + 1)), "distributions")


def eulerian_equi(N):
    pairs = []
    for n in range(N + 1):
        d = dist("S", n, [("des", x)])
        pairs.append((f"asc n={n}", dist("S", n, [("asc", x)]), d))
        pairs.append((f"exc n={n}", dist("S", n, [("exc", x)]), d))
    return compare(pairs, "distributions")


def family_check(name, r=None):
    def run(N):
        kw = {"r": r} if r is not None else {}
        return compare(((f"n={n}", fam.family(name, n, **kw), fam.oracle(name, n, **kw)) for n in range(N + 1)),
                       "values")
    return run


# registry -------------------------------------------------------------------------------

_GROUP_LIMIT = {"S": 7, "B": 6, "Z": 5}

CHECKS: List[Check] = [
    Check("egf.A", "egf", egf_A, 6, description="A(x,y,s;z) closed form"),
    Check("egf.dxys", "egf", egf_dxys, 6, description="d(x,y,s;z) closed form"),
    Check("egf.At", "egf", egf_At, 6, description="tilde A(x,y;z) closed form"),
    Check("egf.dB", "egf", egf_dB, 6, description="d^B(x,q;z) closed form"),
    *[Check(f"egf.dnr.r{r}", "egf", egf_dnr(r), 6 if r < 3 else 5, description=f"d_(n,{r}) EGF")
      for r in (1, 2, 3)],
    *[Check(f"egf.B.p{k}", "egf", egf_B(k), 6, description=f"B(x,y,s,t,p,q;z) at p={k}") for k in (1, 2, 3)],
    Check("egf.gen_s_qt", "egf", egf_gen_s_qt, 6, description="Gen(s+qt;z) under G2"),
    Check("egf.C2_M", "egf", egf_C2_M, 7, description="C^2 = e^{sz} M(s,2x;z)"),
    Check("egf.stellahedron", "egf", egf_stellahedron, 7, description="C(1|0, x/(1+x)^2; (1+x)z)"),
    *[Check(f"egf.G4.q{k}", "egf", egf_G4(k), 5, description=f"Gen_G4(a;z) = a M^q(...), q={k}") for k in (1, 2)],

    Check("gamma.simsun2", "gamma", gamma_vs_simsun2, 7, description="gamma_{n,i,j} counts SS_n by fix, exc"),
    Check("gamma.cda_free", "gamma", b_vs_cda_free, 7, description="b_{n,i,j}(p) = sum of p^cyc over cda-free"),
    Check("gamma.zeng_b0k", "gamma", zeng_b0k, 7, description="b_{n,0,k}(p) = sum over D_{n,k} of p^cyc"),
    Check("gamma.positivity", "gamma", positivity, 10, description="table entries nonnegative"),
    Check("gamma.expand_A", "gamma", expand_A, 7, description="A_{n+1}(x,y,s) in the (s+y, xy, x+y) basis"),
    Check("gamma.expand_B", "gamma", expand_B, 6, description="B_n(x,y,s,t,p,q) in the (s+qt, xy, x+y) basis"),
    Check("gamma.roundtrip", "gamma", gamma_roundtrip, 8, description="expand(build(row)) = row"),
    Check("gamma.fpm_split", "gamma", fpm_split_vs_table, 6, description="f_pm_split(d^B) = f+/f- tables"),
    Check("gamma.fpm_positive", "gamma", fpm_gamma_positive, 10, lo=1, description="f+/f- gamma-positive"),
    Check("gamma.fpm_x_system", "gamma", fpm_x_system, 10, lo=2, description="x-level f+/f- recurrence"),
    Check("gamma.dnr_two_basis", "gamma", dnr_two_basis, 6, lo=1, description="d_{n,r} = f+ + x f-"),

    Check("grammar.lemmaLM", "grammar", lemma_LM, 7, description="D_G^n(LM) = LM A_{n+1}"),
    Check("grammar.lemmaBn", "grammar", lemma_Bn, 6, description="D_G2^n(J) = J B_n"),
    Check("grammar.dumont", "grammar", dumont, 7, description="Dumont grammar and excedances"),
    *[Check(f"grammar.change.{c}", "grammar", change(c), 6, description=f"change of grammar {c}")
      for c in ("G->G1", "G2->G3", "G6->G7")],
    Check("grammar.G4_q1", "grammar", G4_to_G1, 0, description="G4 at q=1 is G1"),
    Check("grammar.G4_G5", "grammar", G4_to_G5, 6, description="G4 at q=1/2 gives G5"),
    Check("grammar.DG101", "grammar", DG101, 7, description="D_G1^n(I) gamma expansion"),
    Check("grammar.DG7uv", "grammar", DG7uv, 6, description="D_G7^n(J) at s=0 gives f+/f-"),
    Check("grammar.G3_second", "grammar", G3_second, 0, description="D_G3^2(J)"),

    Check("bijection.thm03", "bijection", thm03_bijections, 6, lo=1, description="partition and phi1/phi2/phi3"),
    Check("bijection.phi3_example", "bijection", phi3_example, 0, description="phi3 reference example"),
    Check("bijection.mfs_examples", "bijection", mfs_examples, 0, description="phi'_3 and phi'_6 examples"),
    Check("bijection.mfs_involution", "bijection", mfs_involution, 8, lo=1, description="phi'_x twice is identity"),
    Check("bijection.mfs_cardinality", "bijection", mfs_cardinality, 8, lo=1, description="S2/S1 cardinality law"),

    Check("identities.An1x", "identities", An1x, 7, lo=1, description="A_{n+1}(x) via S(n,i)"),
    Check("identities.AnxWni", "identities", AnxWni, 7, lo=1, description="A_n(x) via W(n,i)"),
    Check("identities.Anx_gamma", "identities", Anx_gamma, 7, lo=1, description="A_n(x) via double descents"),
    Check("identities.Bnxgamma", "identities", Bnxgamma, 7, description="B_n(x) via Q(n,i)"),
    Check("identities.WnkSnk", "identities", WnkSnk, 7, description="W(n+1,i) = 2^{n-i} S(n,i)"),
    Check("identities.zeng", "identities", zeng, 7, lo=2, description="exc/cyc over D_n via D_{n,k}"),
    Check("identities.roselle", "identities", roselle, 7, lo=1, description="Roselle pair"),
    Check("identities.diaconis", "identities", diaconis, 7, lo=1, description="succession set vs fixed set"),
    Check("identities.conv_At_d", "identities", conv_At_d, 6, description="A_{n+1} = sum C(n,i) At_i d_{n-i}"),
    Check("identities.conv_BB", "identities", conv_BB, 6, description="2^n A_{n+1} = sum C(n,i) B_i B_{n-i}"),
    Check("identities.stellahedron", "identities", stellahedron, 7, description="b_n(x) = sum C(n,i) A_i x^{n-i}"),
    Check("identities.coro", "identities", coro, 6, lo=2, description="four convolution recurrences"),
    Check("identities.Dnbxq", "identities", Dnbxq, 6, description="d^B_n(x,q) via b_{n,i,j}"),
    Check("identities.propdnbx", "identities", propdnbx, 6, description="d^B_n(x,q) = x^n d_{n,q+1}(1/x)"),
    Check("identities.thm03", "identities", thm03, 6, description="double-binomial formula"),
    Check("identities.dniBx", "identities", dniBx, 6, lo=1, description="d_{n,i} = d_{n,i-1} + d_{n-1,i-1}"),
    Check("identities.ns_des", "identities", ns_des, 7, lo=1, description="des over NS_n"),
    Check("identities.desB_wexc", "identities", desB_wexc, 6, description="desB and wexc equidistributed"),
    Check("identities.chow_reciprocal", "identities", chow_reciprocal, 6, description="d^B_n = x^n dt^B_n(1/x)"),
    Check("identities.chow_toufik", "identities", chow_toufik, 6, lo=1, description="d_{n,r} via S_n"),
    Check("identities.C_half", "identities", C_half, 8, description="sum 2^{n-fix} x^exc = sum (4x)^lpk"),
    Check("identities.rs_ss", "identities", rs_ss, 7, description="RS_n by des vs SS_n by exc"),
    Check("identities.eulerian", "identities", eulerian_equi, 8, description="des, asc, exc equidistributed"),
    *[Check(f"identities.family.{name}", "identities", family_check(name), _GROUP_LIMIT[f.group],
            description=f"{name} recurrence = enumeration")
      for name, f in fam.FAMILIES.items() if not f.params],
    *[Check(f"identities.family.d_xr.r{r}", "identities", family_check("d_xr", r), 6 if r < 3 else 5,
            lo=0, description=f"d_xr recurrence = enumeration, r={r}") for r in (1, 2, 3)],
]

CHECKS_BY_NAME: Dict[str, Check] = {c.name: c for c in CHECKS}
SUITES = ("egf", "gamma", "grammar", "bijection", "identities")


def checks_for(suite: str) -> List[Check]:
    if suite == "all":
        return list(CHECKS)
    if suite not in SUITES:
        raise KeyError(f"unknown suite {suite!r}")
    return [c for c in CHECKS if c.suite == suite]


def identity_suite(name: str, n_max: int) -> Outcome:
    """Run one registered check by name (``"thm03"`` or ``"identities.thm03"``)."""
    check = CHECKS_BY_NAME.get(name) or CHECKS_BY_NAME.get(f"identities.{name}")
    if check is None:
        raise KeyError(f"unknown identity {name!r}")
    return check.run(n_max)
