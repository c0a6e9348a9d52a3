"""Truncated exponential generating functions with polynomial coefficients.

A series of order N stores ``c[0..N]`` and stands for sum c[n] z^n / n!.
Products are binomial convolutions, so identities of the form
``F = num / den`` are checked as ``F * den == num`` without any division.
"""

from __future__ import annotations

from math import comb
from typing import Callable, Iterable, List, Mapping, Sequence

from .exactalg import ONE, ZERO, MultiPoly, as_poly, homogenize, render, substitute


class OrderMismatch(ValueError):
    pass


class TruncatedEGF:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable):
        self.coeffs = tuple(as_poly(c) for c in coeffs)
        if not self.coeffs:
            raise ValueError("a truncated series needs at least the z^0 coefficient")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int) -> MultiPoly:
        return self.coeffs[n]

    def __len__(self):
        return len(self.coeffs)

    def _check(self, other: "TruncatedEGF"):
        if self.order != other.order:
            raise OrderMismatch(f"orders differ: {self.order} vs {other.order}")

    def __add__(self, other: "TruncatedEGF") -> "TruncatedEGF":
        self._check(other)
        return TruncatedEGF(a + b for a, b in zip(self.coeffs, other.coeffs))

    def __sub__(self, other: "TruncatedEGF") -> "TruncatedEGF":
        self._check(other)
        return TruncatedEGF(a - b for a, b in zip(self.coeffs, other.coeffs))

    def __neg__(self):
        return TruncatedEGF(-a for a in self.coeffs)

    def __mul__(self, other):
        if isinstance(other, TruncatedEGF):
            return mul_series(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "TruncatedEGF":
        out = one_series(self.order)
        for _ in range(k):
            out = mul_series(out, self)
        return out

    def __eq__(self, other):
        return isinstance(other, TruncatedEGF) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def scale(self, factor) -> "TruncatedEGF":
        f = as_poly(factor)
        return TruncatedEGF(f * c for c in self.coeffs)

    def map(self, fn: Callable[[MultiPoly], MultiPoly]) -> "TruncatedEGF":
        return TruncatedEGF(fn(c) for c in self.coeffs)

    def subs(self, bindings: Mapping[str, object]) -> "TruncatedEGF":
        return self.map(lambda c: substitute(c, bindings))

    def truncate(self, order: int) -> "TruncatedEGF":
        if order > self.order:
            raise OrderMismatch(f"cannot extend order {self.order} to {order}")
        return TruncatedEGF(self.coeffs[: order + 1])

    def derivative(self) -> "TruncatedEGF":
        """d/dz; the result has order N-1 (the top coefficient is unknown)."""
        return TruncatedEGF(self.coeffs[1:] or (ZERO,))

    def __repr__(self):
        return "TruncatedEGF([" + ", ".join(render(c) for c in self.coeffs) + "])"


def from_family(family: Callable[[int], object], order: int) -> TruncatedEGF:
    return TruncatedEGF(family(n) for n in range(order + 1))


def one_series(order: int) -> TruncatedEGF:
    return TruncatedEGF([ONE] + [ZERO] * order)


def constant_series(value, order: int) -> TruncatedEGF:
    return TruncatedEGF([as_poly(value)] + [ZERO] * order)


def exp_linear(m, order: int) -> TruncatedEGF:
    """e^{m z}: since coefficients are taken against z^n/n!, entry n is m^n."""
    m = as_poly(m)
    out = [ONE]
    for _ in range(order):
        out.append(out[-1] * m)
    return TruncatedEGF(out)


def mul_series(a: TruncatedEGF, b: TruncatedEGF) -> TruncatedEGF:
    a._check(b)
    out = []
    for n in range(a.order + 1):
        acc = ZERO
        for k in range(n + 1):
            if a[k] and b[n - k]:
                acc = acc + comb(n, k) * (a[k] * b[n - k])
        out.append(acc)
    return TruncatedEGF(out)


def first_mismatch(a: TruncatedEGF, b: TruncatedEGF):
    """Index and the two coefficients where ``a`` and ``b`` first differ, else None."""
    a._check(b)
    for n, (x, y) in enumerate(zip(a.coeffs, b.coeffs)):
        if x != y:
            return n, x, y
    return None


def verify_cross_multiplied(lhs_num: TruncatedEGF, lhs_den: TruncatedEGF, rhs: TruncatedEGF) -> bool:
    """True iff ``rhs * lhs_den == lhs_num`` through order N, i.e. rhs = num/den."""
    lhs_num._check(lhs_den)
    lhs_num._check(rhs)
    return mul_series(rhs, lhs_den) == lhs_num


def rescale_argument(series: TruncatedEGF, weights: Mapping[str, int], filler) -> TruncatedEGF:
    """Coefficient-wise clearing for substituted arguments.

    For a series F(..; z) whose n-th coefficient has weighted degree <= n,
    returns the series of ``F(args / filler^w; filler * z)``: every term of
    weight w in coefficient n is multiplied by ``filler^(n - w)``. For the
    argument change ``x -> x/(1+x)^2, z -> (1+x) z`` use ``weights={"x": 2}``
    and ``filler=1+x``; the result is polynomial by construction, which is
    the same as multiplying through by ``(1+x)^(2n)`` and dividing back out.
    """
    filler = as_poly(filler)
    return TruncatedEGF(
        homogenize(c, weights, n, filler) for n, c in enumerate(series.coeffs)
    )
