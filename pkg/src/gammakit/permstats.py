"""Permutations, signed permutations and colored permutations.

Elements are plain tuples in one-line notation:

* ``Perm``: ``(w1, ..., wn)``, a rearrangement of ``1..n``.
* ``SignedPerm``: ``(s1, ..., sn)`` with ``|s|`` a permutation; negative
  entries are the barred values. ``s(-i) = -s(i)`` is implied.
* ``ColoredPerm``: named tuple ``(perm, colors, r)``.

Cycle notation follows the convention ``(c1, c2, ...)`` means
``s(|c_j|) = c_{j+1}``; standard form puts the entry of smallest absolute
value first in each cycle and orders cycles by that entry.

The enumerators here are the brute-force ground truth the rest of the
package is checked against.
"""

from __future__ import annotations

import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from contextlib import contextmanager
from dataclasses import dataclass, field
from itertools import combinations, permutations, product
from math import comb, factorial
from typing import Callable, Dict, Iterator, List, Mapping, NamedTuple, Optional, Sequence, Tuple

from .exactalg import ONE, ZERO, MultiPoly, as_poly

Perm = Tuple[int, ...]
SignedPerm = Tuple[int, ...]
CycleForm = List[List[int]]


class ColoredPerm(NamedTuple):
    perm: Perm
    colors: Tuple[int, ...]
    r: int


class UnknownStatistic(KeyError):
    pass


class BoundExceeded(RuntimeError):
    """Raised when an enumeration would exceed the configured element cap."""


# resource bound -------------------------------------------------------------

DEFAULT_MAX_ELEMENTS = 1_000_000  # S_9, B_7, Z_3 wr S_6 all fit; one step further does not


def _env_max_elements() -> Optional[int]:
    raw = os.environ.get("GAMMAKIT_MAX_ELEMENTS")
    if raw is None or raw == "":
        return DEFAULT_MAX_ELEMENTS
    value = int(raw)
    return None if value <= 0 else value


_max_elements: Optional[int] = _env_max_elements()


def max_elements() -> Optional[int]:
    return _max_elements


def set_max_elements(value: Optional[int]) -> None:
    """Set the enumeration cap; ``None`` removes it."""
    global _max_elements
    _max_elements = value


@contextmanager
def bound_override(value: Optional[int] = None):
    old = _max_elements
    set_max_elements(value)
    try:
        yield
    finally:
        set_max_elements(old)


# permutations of S_n ----------------------------------------------------------


def is_perm(w: Sequence[int]) -> bool:
    return sorted(w) == list(range(1, len(w) + 1))


def inverse(w: Perm) -> Perm:
    inv = [0] * len(w)
    for i, v in enumerate(w, 1):
        inv[v - 1] = i
    return tuple(inv)


def _des(w):
    return sum(1 for i in range(len(w) - 1) if w[i] > w[i + 1])


def _asc(w):
    return sum(1 for i in range(len(w) - 1) if w[i] < w[i + 1])


def _asc0(w):
    # ascents with w(0) = 0, the rise count used for P*(n, r)
    return _asc((0,) + tuple(w))


def _exc(w):
    return sum(1 for i, v in enumerate(w, 1) if v > i)


def _aexc(w):
    # over all of [n], so that exc + aexc + fix = n
    return sum(1 for i, v in enumerate(w, 1) if v < i)


def _fix(w):
    return sum(1 for i, v in enumerate(w, 1) if v == i)


def _cyc(w):
    seen = [False] * (len(w) + 1)
    count = 0
    for start in range(1, len(w) + 1):
        if not seen[start]:
            count += 1
            j = start
            while not seen[j]:
                seen[j] = True
                j = abs(w[j - 1])
    return count


def _suc(w):
    return sum(1 for i in range(len(w) - 1) if w[i + 1] == w[i] + 1)


def _basc(w):
    return sum(1 for i in range(len(w) - 1) if w[i + 1] >= w[i] + 2)


def _lpk(w):
    padded = (0,) + tuple(w)
    return sum(1 for i in range(1, len(w)) if padded[i - 1] < padded[i] > padded[i + 1])


def _ipk(w):
    return sum(1 for i in range(1, len(w) - 1) if w[i - 1] < w[i] > w[i + 1])


def _dd(w):
    padded = (0,) + tuple(w) + (0,)
    return sum(1 for i in range(1, len(w) + 1) if padded[i - 1] > padded[i] > padded[i + 1])


def _cda(w):
    # value x = w(i) with i < x < w(x)
    return sum(1 for i, v in enumerate(w, 1) if i < v < w[v - 1])


PERM_STATS: Dict[str, Callable[[Perm], int]] = {
    "des": _des,
    "asc": _asc,
    "asc0": _asc0,
    "exc": _exc,
    "aexc": _aexc,
    "fix": _fix,
    "cyc": _cyc,
    "suc": _suc,
    "basc": _basc,
    "lpk": _lpk,
    "ipk": _ipk,
    "dd": _dd,
    "cda": _cda,
}


def stat(w: Perm, which: str) -> int:
    try:
        return PERM_STATS[which](w)
    except KeyError:
        raise UnknownStatistic(f"unknown permutation statistic {which!r}") from None


# signed permutations -------------------------------------------------------------


def is_signed_perm(s: Sequence[int]) -> bool:
    return sorted(abs(v) for v in s) == list(range(1, len(s) + 1))


def _s_exc(s):
    return sum(1 for v in s if s[abs(v) - 1] > v)


def _s_aexc(s):
    return sum(1 for v in s if s[abs(v) - 1] < v)


def _s_fix(s):
    return sum(1 for i, v in enumerate(s, 1) if v == i)


def _s_st(s):
    return sum(1 for i, v in enumerate(s, 1) if v == -i)


def _s_neg(s):
    return sum(1 for v in s if v < 0)


def _s_desB(s):
    padded = (0,) + tuple(s)
    return sum(1 for i in range(len(s)) if padded[i] > padded[i + 1])


SIGNED_STATS: Dict[str, Callable[[SignedPerm], int]] = {
    "exc": _s_exc,
    "aexc": _s_aexc,
    "fix": _s_fix,
    "st": _s_st,
    "N": _s_neg,
    "cyc": _cyc,
    "desB": _s_desB,
    "wexc": lambda s: _s_exc(s) + _s_fix(s),
    "excB": lambda s: _s_exc(s) + _s_st(s),
    "waexc": lambda s: _s_aexc(s) + _s_st(s),
}


def stat_signed(s: SignedPerm, which: str) -> int:
    try:
        return SIGNED_STATS[which](s)
    except KeyError:
        raise UnknownStatistic(f"unknown signed statistic {which!r}") from None


# colored permutations ------------------------------------------------------------


def _c_exc(c: ColoredPerm):
    return sum(1 for i, (v, col) in enumerate(zip(c.perm, c.colors), 1) if v > i or (v == i and col > 0))


def _c_fix(c: ColoredPerm):
    return sum(1 for i, (v, col) in enumerate(zip(c.perm, c.colors), 1) if v == i and col == 0)


COLORED_STATS: Dict[str, Callable[[ColoredPerm], int]] = {"exc": _c_exc, "fix": _c_fix}


def stat_colored(c: ColoredPerm, which: str) -> int:
    try:
        return COLORED_STATS[which](c)
    except KeyError:
        raise UnknownStatistic(f"unknown colored statistic {which!r}") from None


# cycle form -----------------------------------------------------------------------


def to_cycles(s: Sequence[int]) -> CycleForm:
    """Standard cycle form of a (signed) permutation."""
    n = len(s)
    sign = [1] * (n + 1)
    for v in s:
        if v < 0:
            sign[-v] = -1
    seen = [False] * (n + 1)
    cycles = []
    for m in range(1, n + 1):
        if seen[m]:
            continue
        cycle = []
        entry = sign[m] * m
        while not seen[abs(entry)]:
            seen[abs(entry)] = True
            cycle.append(entry)
            entry = s[abs(entry) - 1]
        cycles.append(cycle)
    return cycles


def from_cycles(cycles: Sequence[Sequence[int]], n: Optional[int] = None) -> Tuple[int, ...]:
    if n is None:
        n = sum(len(c) for c in cycles)
    out = [0] * n
    for cycle in cycles:
        for j, entry in enumerate(cycle):
            out[abs(entry) - 1] = cycle[(j + 1) % len(cycle)]
    if 0 in out:
        raise ValueError(f"cycles {cycles} do not cover 1..{n}")
    return tuple(out)


def standardize_cycles(cycles: Sequence[Sequence[int]]) -> CycleForm:
    out = []
    for c in cycles:
        k = min(range(len(c)), key=lambda j: abs(c[j]))
        out.append(list(c[k:]) + list(c[:k]))
    return sorted(out, key=lambda c: abs(c[0]))


def format_cycles(cycles: CycleForm) -> str:
    return "".join("(" + ",".join(str(v) if v > 0 else f"-{-v}" for v in c) + ")" for c in cycles)


def remove_letter(w: Perm, m: int) -> Perm:
    """Splice letter m out of its cycle; the result is a permutation of the other letters.

    Letters larger than m are not renumbered, so removing the largest
    letter gives a permutation of ``1..n-1``.
    """
    if m != len(w):
        raise ValueError("only the largest letter can be removed without renumbering")
    out = list(w[:-1])
    if w[m - 1] != m:
        pred = w.index(m)  # 0-based position of m, i.e. w^{-1}(m) - 1
        out[pred] = w[m - 1]
    return tuple(out)


# restricted classes ----------------------------------------------------------------


def _has_proper_dd(seq) -> bool:
    return any(seq[i] > seq[i + 1] > seq[i + 2] for i in range(len(seq) - 2))


def is_simsun(w: Perm) -> bool:
    """Every restriction of w to 1..k avoids three consecutive decreasing entries."""
    for k in range(3, len(w) + 1):
        if _has_proper_dd([v for v in w if v <= k]):
            return False
    return True


def is_simsun_second_kind(w: Perm) -> bool:
    """w and each truncation by its largest letters has no cycle double ascent.

    Truncations run over k = 0..n-1 removed letters (k = 0 is w itself).
    """
    cur = tuple(w)
    while cur:
        if _cda(cur):
            return False
        cur = remove_letter(cur, len(cur))
    return True


def is_derangement(w) -> bool:
    return all(v != i for i, v in enumerate(w, 1))


# enumeration ---------------------------------------------------------------------------

GROUP_OF_CLASS = {
    "S": "S",
    "derangements": "S",
    "cda_free": "S",
    "simsun": "S",
    "simsun2": "S",
    "no_succession": "S",
    "pstar": "S",
    "D_nk": "S",
    "B": "B",
    "B_derangements": "B",
    "B_tilde": "S",  # one sign pattern per permutation
    "wreath": "Z",
    "wreath_derangements": "Z",
}

ELEMENT_KIND = {
    "S": "perm",
    "derangements": "perm",
    "cda_free": "perm",
    "simsun": "perm",
    "simsun2": "perm",
    "no_succession": "perm",
    "pstar": "perm",
    "D_nk": "perm",
    "B": "signed",
    "B_derangements": "signed",
    "B_tilde": "signed",
    "wreath": "colored",
    "wreath_derangements": "colored",
}

CLASSES = tuple(GROUP_OF_CLASS)


def pool_size(cls: str, n: int, r: Optional[int] = None) -> int:
    group = GROUP_OF_CLASS[cls]
    if group == "S":
        return factorial(n)
    if group == "B":
        return 2 ** n * factorial(n)
    return r ** n * factorial(n)


def check_bound(cls: str, n: int, r: Optional[int] = None) -> None:
    if cls not in GROUP_OF_CLASS:
        raise KeyError(f"unknown class {cls!r}")
    cap = _max_elements
    size = pool_size(cls, n, r)
    if cap is not None and size > cap:
        raise BoundExceeded(
            f"enumerating {cls} at n={n}{'' if r is None else f', r={r}'} visits {size} elements; "
            f"cap is {cap} (raise GAMMAKIT_MAX_ELEMENTS or pass --bound-override)"
        )


def _perms(n, block):
    if block is None:
        yield from permutations(range(1, n + 1))
        return
    rest = [v for v in range(1, n + 1) if v != block]
    for tail in permutations(rest):
        yield (block,) + tail


def blocks(cls: str, n: int) -> List[Optional[int]]:
    """Disjoint pieces of the class, keyed by the first one-line entry."""
    if n == 0:
        return [None]
    if GROUP_OF_CLASS[cls] == "B":
        return [v for k in range(1, n + 1) for v in (k, -k)]
    return list(range(1, n + 1))


def enumerate_class(cls: str, n: int, *, r: Optional[int] = None, k: Optional[int] = None,
                    i: Optional[int] = None, block: Optional[int] = None) -> Iterator:
    """Yield every element of a class exactly once.

    ``r`` is the number of colors for the wreath classes, ``k`` the
    excedance number for ``D_nk`` and ``i`` the number of negative entries
    for ``B_tilde``. ``block`` restricts to elements whose first one-line
    entry equals it.
    """
    check_bound(cls, n, r)
    if cls == "S":
        yield from _perms(n, block)
    elif cls == "derangements":
        yield from (w for w in _perms(n, block) if is_derangement(w))
    elif cls == "cda_free":
        yield from (w for w in _perms(n, block) if not _cda(w))
    elif cls == "simsun":
        yield from (w for w in _perms(n, block) if is_simsun(w))
    elif cls == "simsun2":
        yield from (w for w in _perms(n, block) if is_simsun_second_kind(w))
    elif cls == "no_succession":
        yield from (w for w in _perms(n, block) if not _suc(w))
    elif cls == "pstar":
        yield from (w for w in _perms(n, block) if not _suc(w) and (n == 0 or w[0] > 1))
    elif cls == "D_nk":
        if k is None:
            raise ValueError("D_nk needs k")
        yield from (w for w in _perms(n, block)
                    if is_derangement(w) and not _cda(w) and _exc(w) == k)
    elif cls in ("B", "B_derangements"):
        for w in _perms(n, None if block is None else abs(block)):
            for signs in product((1, -1), repeat=n):
                s = tuple(a * b for a, b in zip(signs, w))
                if block is not None and s[0] != block:
                    continue
                if cls == "B_derangements" and not is_derangement(s):
                    continue
                yield s
    elif cls == "B_tilde":
        if i is None:
            raise ValueError("B_tilde needs i")
        cut = n - i
        for w in _perms(n, None if block is None else abs(block)):
            s = tuple(-v if v > cut else v for v in w)
            if is_derangement(s):
                yield s
    elif cls in ("wreath", "wreath_derangements"):
        if r is None or r < 1:
            raise ValueError("wreath classes need r >= 1")
        for w in _perms(n, block):
            for colors in product(range(r), repeat=n):
                c = ColoredPerm(w, colors, r)
                if cls == "wreath_derangements" and _c_fix(c):
                    continue
                yield c
    else:
        raise KeyError(f"unknown class {cls!r}")


def _stat_table(cls: str):
    kind = ELEMENT_KIND[cls]
    return {"perm": PERM_STATS, "signed": SIGNED_STATS, "colored": COLORED_STATS}[kind]


def _count_block(cls, n, names, params, block) -> Counter:
    table = _stat_table(cls)
    fns = [table[name] for name in names]
    counts: Counter = Counter()
    for e in enumerate_class(cls, n, block=block, **params):
        counts[tuple(f(e) for f in fns)] += 1
    return counts


def stat_counts(cls: str, n: int, names: Sequence[str], *, jobs: int = 1, **params) -> Counter:
    """Joint value counts of the named statistics over a class.

    With ``jobs > 1`` the class is split into first-entry blocks that are
    counted in worker processes and summed; the result does not depend on
    the split.
    """
    table = _stat_table(cls)
    for name in names:
        if name not in table:
            raise UnknownStatistic(f"statistic {name!r} is not defined on class {cls!r}")
    check_bound(cls, n, params.get("r"))
    params = {k: v for k, v in params.items() if v is not None}
    if jobs <= 1 or n < 2:
        return _count_block(cls, n, tuple(names), params, None)
    total: Counter = Counter()
    with ProcessPoolExecutor(max_workers=jobs, initializer=set_max_elements, initargs=(_max_elements,)) as pool:
        futures = [pool.submit(_count_block, cls, n, tuple(names), params, b) for b in blocks(cls, n)]
        for fut in futures:
            total.update(fut.result())
    return total


def counts_to_poly(counts: Mapping[tuple, int], bases: Sequence) -> MultiPoly:
    bases = [as_poly(b) for b in bases]
    powers: Dict[Tuple[int, int], MultiPoly] = {}

    def power(j, e):
        if (j, e) not in powers:
            powers[(j, e)] = bases[j] ** e
        return powers[(j, e)]

    out = ZERO
    for values, c in sorted(counts.items()):
        term = MultiPoly.const(c)
        for j, e in enumerate(values):
            if e:
                term = term * power(j, e)
        out = out + term
    return out


def distribution(cls: str, n: int, stats, *, jobs: int = 1, **params) -> MultiPoly:
    """Sum over the class of prod base^stat.

    ``stats`` is a mapping (or sequence of pairs) from statistic name to a
    base: a variable name, a rational, or a MultiPoly. For example
    ``distribution("S", 3, {"basc": "x", "des": "y", "suc": "s"})``.
    """
    pairs = list(stats.items()) if isinstance(stats, Mapping) else list(stats)
    names = [name for name, _ in pairs]
    counts = stat_counts(cls, n, names, jobs=jobs, **params)
    return counts_to_poly(counts, [b for _, b in pairs])


def count(cls: str, n: int, **params) -> int:
    check_bound(cls, n, params.get("r"))
    return sum(1 for _ in enumerate_class(cls, n, **params))


# triangles -------------------------------------------------------------------------


@dataclass
class StatTriangle:
    name: str
    entries: Dict[tuple, int] = field(default_factory=dict)

    def __getitem__(self, key):
        return self.entries.get(key, 0)

    def rows(self, n: int) -> Dict[tuple, int]:
        return {k: v for k, v in self.entries.items() if k[0] == n}


def _single_stat_triangle(name, cls, statname, n_max, n_min=0):
    tri = StatTriangle(name)
    for n in range(n_min, n_max + 1):
        for (v,), c in sorted(stat_counts(cls, n, [statname]).items()):
            tri.entries[(n, v)] = c
    return tri


def triangle_W(n_max: int) -> StatTriangle:
    """W(n, i): permutations of S_n with i interior peaks."""
    return _single_stat_triangle("W", "S", "ipk", n_max, 1)


def triangle_S(n_max: int) -> StatTriangle:
    """S(n, i): simsun permutations of S_n with i descents."""
    return _single_stat_triangle("S", "simsun", "des", n_max)


def triangle_Q(n_max: int) -> StatTriangle:
    """Q(n, i): permutations of S_n with i left peaks (the count, not the set)."""
    return _single_stat_triangle("Q", "S", "lpk", n_max)


def triangle_P(n_max: int) -> StatTriangle:
    """P(n, r, s): permutations with r ascents and s successions."""
    tri = StatTriangle("P")
    for n in range(n_max + 1):
        for (a, s), c in sorted(stat_counts("S", n, ["asc", "suc"]).items()):
            tri.entries[(n, a, s)] = c
    return tri


def triangle_Pstar(n_max: int) -> StatTriangle:
    """P*(n, r): no successions, pi(1) > 1, r rises counted with pi(0) = 0."""
    return _single_stat_triangle("Pstar", "pstar", "asc0", n_max)


TRIANGLES = {"W": triangle_W, "S": triangle_S, "Q": triangle_Q, "P": triangle_P, "Pstar": triangle_Pstar}


# classical set identities -------------------------------------------------------------


def succession_set(w: Perm) -> frozenset:
    return frozenset(k for k in range(1, len(w)) if w[k] == w[k - 1] + 1)


def fixed_set_below_n(w: Perm) -> frozenset:
    return frozenset(k for k in range(1, len(w)) if w[k - 1] == k)


def fixed_set_vs_succession_set(n: int) -> bool:
    """For every I in [n-1]: #{succession set = I} == #{fixed points in [n-1] = I}."""
    succ: Counter = Counter()
    fixed: Counter = Counter()
    for w in enumerate_class("S", n):
        succ[succession_set(w)] += 1
        fixed[fixed_set_below_n(w)] += 1
    return all(succ[frozenset(I)] == fixed[frozenset(I)]
               for size in range(n) for I in combinations(range(1, n), size)) and succ == fixed


def roselle_failures(n_max: int) -> List[str]:
    """Violations of the two Roselle identities up to n_max (empty when they hold)."""
    failures = []
    P = triangle_P(n_max)
    for n in range(1, n_max + 1):
        for r in range(n):
            for s in range(n):
                lhs = P[(n, r, s)]
                rhs = comb(n - 1, s) * P[(n - s, r - s, 0)] if r >= s else 0
                if lhs != rhs:
                    failures.append(f"P({n},{r},{s})={lhs} but C({n - 1},{s})*P({n - s},{r - s},0)={rhs}")
    x = MultiPoly.var("x")
    pstar = {n: distribution("pstar", n, {"asc0": "x"}) for n in range(n_max + 1)}
    for n in range(1, n_max + 1):
        Pn = distribution("no_succession", n, {"asc": "x"})
        if x * Pn != pstar[n] + x * pstar[n - 1]:
            failures.append(f"x*P_{n}(x) != P*_{n}(x) + x*P*_{n - 1}(x)")
    return failures


def roselle_checks(n_max: int) -> bool:
    return not roselle_failures(n_max)
