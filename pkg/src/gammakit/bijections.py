"""Constructive maps behind the d^B recursion and the Foata-Strehl action.

Signed permutations are one-line tuples, as in :mod:`gammakit.permstats`.
The class D~^B_{n,i} holds the type B derangements whose negative entries
are exactly -n, ..., -(n-i+1). It splits into

    B1: -n is a singleton (cycle of length one),
    B2: no singletons at all,
    B3: some singleton, but not -n,

and phi1, phi2, phi3 carry B1, B2, B3 onto D~_{n-1,i-1},
the st = 0 part of D~_{n,i-1} and the st > 0 part of D~_{n,i-1}.

phi2 and phi3 relabel letters in cycle notation. Applying the value
table position-wise would create fixed points (n=2 sends (1,-2) to the
identity), so the table is read as a map on the letters of every cycle.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Dict, Iterable, List, Sequence, Tuple

from . import permstats as ps

SignedPerm = Tuple[int, ...]
Perm = Tuple[int, ...]


class PreconditionError(ValueError):
    pass


def negatives(sigma: Sequence[int]) -> frozenset:
    return frozenset(-v for v in sigma if v < 0)


def singletons(sigma: Sequence[int]) -> List[int]:
    """Letters k with sigma(k) = -k, as the negative letters -k."""
    return [-k for k, v in enumerate(sigma, 1) if v == -k]


def _n_minus(sigma) -> int:
    """i such that sigma lies in D~_{n,i}; raises if the negative set is not a top block."""
    n = len(sigma)
    neg = negatives(sigma)
    i = len(neg)
    if neg != frozenset(range(n - i + 1, n + 1)):
        raise PreconditionError(f"negative entries {sorted(neg)} are not {{n-i+1..n}}")
    if any(v == k for k, v in enumerate(sigma, 1)):
        raise PreconditionError("not a derangement (has a fixed point)")
    return i


def tag(sigma: SignedPerm) -> str:
    """Which block (B1, B2, B3) of D~_{n,i} the element falls in."""
    n = len(sigma)
    _n_minus(sigma)
    st = singletons(sigma)
    if -n in st:
        return "B1"
    return "B3" if st else "B2"


def _relabel(sigma: SignedPerm, letter_map: Dict[int, int]) -> SignedPerm:
    cycles = [[letter_map[c] for c in cyc] for cyc in ps.to_cycles(sigma)]
    return ps.from_cycles(cycles, len(sigma))


def _require(sigma, block):
    got = tag(sigma)
    if got != block:
        raise PreconditionError(f"{ps.format_cycles(ps.to_cycles(sigma))} is in {got}, not {block}")


# phi1 -----------------------------------------------------------------------------


def phi1(sigma: SignedPerm) -> SignedPerm:
    _require(sigma, "B1")
    n = len(sigma)
    return tuple(sigma[: n - 1])


def phi1_inverse(tau: SignedPerm) -> SignedPerm:
    return tuple(tau) + (-(len(tau) + 1),)


# phi2 -----------------------------------------------------------------------------


def _phi2_map(n: int, i: int) -> Dict[int, int]:
    m = {v: v + 1 for v in range(1, n - i + 1)}
    m[-(n - i + 1)] = 1
    m.update({-v: -v for v in range(n - i + 2, n + 1)})
    return m


def phi2(sigma: SignedPerm) -> SignedPerm:
    _require(sigma, "B2")
    n, i = len(sigma), _n_minus(sigma)
    return _relabel(sigma, _phi2_map(n, i))


def phi2_inverse(tau: SignedPerm) -> SignedPerm:
    n = len(tau)
    i = _n_minus(tau) + 1
    if singletons(tau):
        raise PreconditionError("phi2 images have no singletons")
    if i > n:
        raise PreconditionError("tau already has n negative entries")
    inv = {b: a for a, b in _phi2_map(n, i).items()}
    return _relabel(tau, inv)


# phi3 -----------------------------------------------------------------------------


def _phi3_map(n: int, i: int, st: Iterable[int]) -> Dict[int, int]:
    st = set(st)
    st_image = {c - 1 for c in st}  # -k -> -(k+1)
    A = sorted(({-v for v in range(n - i + 1, n + 1)} | set(range(1, n - i + 1))) - st)
    B = sorted(({-v for v in range(n - i + 2, n + 1)} | set(range(1, n - i + 2))) - st_image)
    assert len(A) == len(B)
    m = dict(zip(A, B))
    m.update({c: c - 1 for c in st})
    return m


def phi3(sigma: SignedPerm) -> SignedPerm:
    _require(sigma, "B3")
    n, i = len(sigma), _n_minus(sigma)
    return _relabel(sigma, _phi3_map(n, i, singletons(sigma)))


def phi3_inverse(tau: SignedPerm) -> SignedPerm:
    n = len(tau)
    i = _n_minus(tau) + 1
    st_tau = singletons(tau)
    if not st_tau:
        raise PreconditionError("phi3 images have at least one singleton")
    st_sigma = [c + 1 for c in st_tau]
    inv = {b: a for a, b in _phi3_map(n, i, st_sigma).items()}
    return _relabel(tau, inv)


# class-level checks ------------------------------------------------------------------


@dataclass
class TildeDClass:
    n: int
    i: int
    elements: Tuple[SignedPerm, ...]
    tags: Dict[SignedPerm, str]

    @classmethod
    def build(cls, n: int, i: int) -> "TildeDClass":
        elems = tuple(ps.enumerate_class("B_tilde", n, i=i))
        return cls(n, i, elems, {e: tag(e) for e in elems})

    def block(self, name: str) -> List[SignedPerm]:
        return [e for e in self.elements if self.tags[e] == name]


def _exc(sigma):
    return ps.stat_signed(sigma, "exc")


def dniB_failures(n: int, i: int) -> List[str]:
    """Check the three bijections on D~_{n,i} and the exc bookkeeping that follows."""
    out = []
    cls = TildeDClass.build(n, i)
    b1, b2, b3 = cls.block("B1"), cls.block("B2"), cls.block("B3")
    if len(b1) + len(b2) + len(b3) != len(cls.elements):
        out.append("blocks do not partition the class")
    below = set(ps.enumerate_class("B_tilde", n - 1, i=i - 1))
    beside = set(ps.enumerate_class("B_tilde", n, i=i - 1))
    beside2 = {e for e in beside if not singletons(e)}
    beside3 = beside - beside2

    for name, dom, fwd, inv, target in (("phi1", b1, phi1, phi1_inverse, below),
                                        ("phi2", b2, phi2, phi2_inverse, beside2),
                                        ("phi3", b3, phi3, phi3_inverse, beside3)):
        image = []
        for sigma in dom:
            tau = fwd(sigma)
            image.append(tau)
            if inv(tau) != sigma:
                out.append(f"{name}^-1({name}(sigma)) != sigma for sigma={sigma}")
            if _exc(tau) != _exc(sigma):
                out.append(f"{name} changes exc on {sigma}")
        if set(image) != target or len(set(image)) != len(image):
            out.append(f"{name} image is not the expected slice ({len(set(image))} vs {len(target)})")

    lhs = Counter(_exc(e) for e in cls.elements)
    rhs = Counter(_exc(e) for e in beside) + Counter(_exc(e) for e in below)
    if lhs != rhs:
        out.append(f"exc distributions differ: {dict(lhs)} vs {dict(rhs)}")
    return out


# modified Foata-Strehl action ------------------------------------------------------------


CDA, CDD, PEAK, VALLEY = "cycle double ascent", "cycle double descent", "cycle peak", "cycle valley"


def _locate(cycles, x):
    for c in cycles:
        if x in c:
            return c, c.index(x)
    raise ValueError(f"letter {x} not in the permutation")


def classify(w: Perm, x: int):
    """Class of the letter x in its standard cycle, or None for a cycle minimum."""
    cyc, k = _locate(ps.standardize_cycles(ps.to_cycles(w)), x)
    if k == 0:
        return None
    prev, nxt = cyc[k - 1], cyc[(k + 1) % len(cyc)]
    if prev < x < nxt:
        return CDA
    if prev > x > nxt:
        return CDD
    return PEAK if prev < x > nxt else VALLEY


@dataclass(frozen=True)
class MFSOrbitPoint:
    perm: Perm
    value: int
    classification: str


def mfs_action(w: Perm, x: int) -> Perm:
    """phi'_x: move a cycle double ascent forward or a cycle double descent back.

    The ascent goes between c_j and c_{j+1} for the smallest j > k with
    c_j > x > c_{j+1}; the descent between c_j and c_{j+1} for the largest
    j < k with c_j < x < c_{j+1} (indices cyclic, c_{i+1} = c_1). Peaks,
    valleys and cycle minima are left alone.
    """
    n = len(w)
    if not 1 <= x <= n:
        raise ValueError(f"letter {x} outside 1..{n}")
    kind = classify(w, x)
    if kind not in (CDA, CDD):
        return tuple(w)
    cycles = ps.standardize_cycles(ps.to_cycles(w))
    cyc, k = _locate(cycles, x)
    L = len(cyc)
    if kind == CDA:
        j = next(j for j in range(k + 1, L) if cyc[j] > x > cyc[(j + 1) % L])
    else:
        j = max(j for j in range(k) if cyc[j] < x < cyc[j + 1])
    rest = cyc[:k] + cyc[k + 1:]
    pos = j if j > k else j + 1  # index in rest right after c_j
    new = rest[:pos] + [x] + rest[pos:]
    cycles = [new if c is cyc else c for c in cycles]
    return ps.from_cycles(cycles, n)


def mfs_involution_failures(n: int) -> List[Tuple[Perm, int]]:
    bad = []
    for w in ps.enumerate_class("S", n):
        for x in range(1, n + 1):
            if classify(w, x) in (CDA, CDD) and mfs_action(mfs_action(w, x), x) != w:
                bad.append((w, x))
    return bad


def mfs_cardinality_failures(n: int) -> List[str]:
    """|S2_{n,i,j+1,k}| = (n-i-2j) |S1_{n,i,j,k}|, with S1/S2 the cda = 0 / cda = 1 slices."""
    counts = ps.stat_counts("S", n, ["cda", "fix", "exc", "cyc"])
    bad = []
    keys = {(i, j, k) for (c, i, j, k) in counts if c == 0}
    keys |= {(i, j - 1, k) for (c, i, j, k) in counts if c == 1}
    for i, j, k in sorted(keys):
        s1 = counts.get((0, i, j, k), 0)
        s2 = counts.get((1, i, j + 1, k), 0)
        if s2 != (n - i - 2 * j) * s1:
            bad.append(f"n={n} i={i} j={j} k={k}: {s2} != {n - i - 2 * j}*{s1}")
    return bad
