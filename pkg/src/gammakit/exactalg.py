"""Sparse multivariate polynomials with exact rational coefficients.

Polynomials live over a fixed, ordered alphabet of indeterminates::

    L M J I H a p q s t h u v x y

A monomial is a sorted tuple of ``(variable_index, exponent)`` pairs with
no zero exponents; a polynomial maps monomials to nonzero coefficients.
Integral coefficients are stored as ``int`` and the rest as
``fractions.Fraction``, so two equal polynomials always carry identical
term maps.
"""

from __future__ import annotations

import ast
from fractions import Fraction
from numbers import Rational
from typing import Dict, Iterable, Mapping, Tuple, Union

ALPHABET: Tuple[str, ...] = (
    "L", "M", "J", "I", "H", "a", "p", "q", "s", "t", "h", "u", "v", "x", "y",
)
VAR_INDEX: Dict[str, int] = {name: k for k, name in enumerate(ALPHABET)}

Monomial = Tuple[Tuple[int, int], ...]
Coeff = Union[int, Fraction]

ONE_MONO: Monomial = ()


class PolyError(ValueError):
    pass


def _norm(c) -> Coeff:
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, Rational):
        return _norm(Fraction(c.numerator, c.denominator))
    raise TypeError(f"coefficient must be rational, got {type(c).__name__}")


def var_index(name: str) -> int:
    try:
        return VAR_INDEX[name]
    except KeyError:
        raise PolyError(f"unknown variable {name!r}; alphabet is {' '.join(ALPHABET)}") from None


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for k, e in b:
        d[k] = d.get(k, 0) + e
    return tuple(sorted(d.items()))


def monomial(exponents: Union[Mapping[str, int], Iterable[Tuple[str, int]]]) -> Monomial:
    """Build a monomial from ``{"x": 2, "y": 1}``-style exponents."""
    items = exponents.items() if isinstance(exponents, Mapping) else exponents
    d: Dict[int, int] = {}
    for name, e in items:
        if e < 0:
            raise PolyError("negative exponents are not supported")
        if e:
            k = var_index(name)
            d[k] = d.get(k, 0) + e
    return tuple(sorted(d.items()))


class MultiPoly:
    """Immutable sparse polynomial. Supports ``+ - * **`` and equality."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Coeff] = None):
        clean = {}
        if terms:
            for m, c in terms.items():
                c = _norm(c)
                if c:
                    clean[m] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[Monomial, Coeff]) -> "MultiPoly":
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    # constructors ---------------------------------------------------------

    @classmethod
    def const(cls, c) -> "MultiPoly":
        c = _norm(c)
        return cls._raw({ONE_MONO: c} if c else {})

    @classmethod
    def var(cls, name: str) -> "MultiPoly":
        return cls._raw({((var_index(name), 1),): 1})

    @classmethod
    def parse(cls, text: str) -> "MultiPoly":
        return parse(text)

    # basic queries --------------------------------------------------------

    @property
    def terms(self) -> Dict[Monomial, Coeff]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and ONE_MONO in self._terms)

    def constant_value(self) -> Coeff:
        if not self.is_constant():
            raise PolyError(f"{self} is not constant")
        return self._terms.get(ONE_MONO, 0)

    def variables(self) -> Tuple[str, ...]:
        seen = {k for m in self._terms for k, _ in m}
        return tuple(ALPHABET[k] for k in sorted(seen))

    def degree(self, name: str = None) -> int:
        """Degree in ``name`` (total degree if omitted); -1 for the zero polynomial."""
        if not self._terms:
            return -1
        if name is None:
            return max(sum(e for _, e in m) for m in self._terms)
        k = var_index(name)
        return max(dict(m).get(k, 0) for m in self._terms)

    def coefficients(self):
        return list(self._terms.values())

    def is_nonnegative(self) -> bool:
        """True when every coefficient is >= 0."""
        return all(c >= 0 for c in self._terms.values())

    # arithmetic -----------------------------------------------------------

    @staticmethod
    def _coerce(other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            return other
        if isinstance(other, (int, Fraction, Rational)):
            return MultiPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(self._terms) < len(other._terms):
            big, small = other._terms, self._terms
        else:
            big, small = self._terms, other._terms
        out = dict(big)
        for m, c in small.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = _norm(v)
            else:
                out.pop(m, None)
        return MultiPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self._terms or not other._terms:
            return MultiPoly._raw({})
        out: Dict[Monomial, Coeff] = {}
        for ma, ca in self._terms.items():
            for mb, cb in other._terms.items():
                m = _mono_mul(ma, mb)
                out[m] = out.get(m, 0) + ca * cb
        return MultiPoly._raw({m: _norm(c) for m, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        # only division by a nonzero rational constant
        if isinstance(other, MultiPoly):
            other = other.constant_value()
        other = Fraction(other)
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        return MultiPoly._raw({m: _norm(c / other) for m, c in self._terms.items()})

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise PolyError("only nonnegative integer powers are supported")
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == MultiPoly.const(other)._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    # calculus and substitution ------------------------------------------

    def diff(self, name: str) -> "MultiPoly":
        return partial_derivative(self, name)

    def subs(self, bindings: Mapping[str, object]) -> "MultiPoly":
        return substitute(self, bindings)

    def coeff(self, mono) -> Coeff:
        return coefficient_of(self, mono)

    def collect(self, name: str) -> Dict[int, "MultiPoly"]:
        """Split into ``{k: coefficient of name^k}``; coefficients are free of ``name``."""
        k = var_index(name)
        buckets: Dict[int, Dict[Monomial, Coeff]] = {}
        for m, c in self._terms.items():
            e = 0
            rest = []
            for vk, ve in m:
                if vk == k:
                    e = ve
                else:
                    rest.append((vk, ve))
            buckets.setdefault(e, {})[tuple(rest)] = c
        return {e: MultiPoly._raw(t) for e, t in sorted(buckets.items())}

    def coeff_in(self, name: str, power: int) -> "MultiPoly":
        return self.collect(name).get(power, ZERO)

    # rendering -----------------------------------------------------------

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"MultiPoly({render(self)!r})"


ZERO = MultiPoly._raw({})
ONE = MultiPoly._raw({ONE_MONO: 1})


def as_poly(value) -> MultiPoly:
    if isinstance(value, MultiPoly):
        return value
    if isinstance(value, str):
        return parse(value)
    return MultiPoly.const(value)


def var(name: str) -> MultiPoly:
    return MultiPoly.var(name)


def variables(names: str):
    """``x, y, s = variables("x y s")``"""
    return tuple(MultiPoly.var(n) for n in names.split())


# named operations ----------------------------------------------------------


def add(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    return a + b


def mul(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    return a * b


def negate(a: MultiPoly) -> MultiPoly:
    return -a


def substitute(a: MultiPoly, bindings: Mapping[str, object]) -> MultiPoly:
    """Simultaneously replace variables by polynomials (or rationals).

    Unbound variables are left alone.
    """
    if not bindings:
        return a
    table = {var_index(name): as_poly(val) for name, val in bindings.items()}
    powers: Dict[Tuple[int, int], MultiPoly] = {}

    def power(k, e):
        key = (k, e)
        if key not in powers:
            powers[key] = table[k] ** e
        return powers[key]

    out = ZERO
    acc: Dict[Monomial, Coeff] = {}
    for m, c in a.items():
        kept = tuple((k, e) for k, e in m if k not in table)
        bound = [(k, e) for k, e in m if k in table]
        if not bound:
            acc[kept] = acc.get(kept, 0) + c
            continue
        term = MultiPoly._raw({kept: c})
        for k, e in bound:
            term = term * power(k, e)
        out = out + term
    return out + MultiPoly(acc)


def partial_derivative(a: MultiPoly, name: str) -> MultiPoly:
    k = var_index(name)
    out: Dict[Monomial, Coeff] = {}
    for m, c in a.items():
        for pos, (vk, e) in enumerate(m):
            if vk == k:
                if e == 1:
                    nm = m[:pos] + m[pos + 1:]
                else:
                    nm = m[:pos] + ((vk, e - 1),) + m[pos + 1:]
                out[nm] = out.get(nm, 0) + c * e
                break
    return MultiPoly(out)


def coefficient_of(a: MultiPoly, mono) -> Coeff:
    """Exact coefficient of a monomial, 0 when absent.

    ``mono`` may be a Monomial tuple, an exponent mapping, a monic
    single-term MultiPoly, or its text (``"x^2*q^4"``).
    """
    if isinstance(mono, str):
        mono = parse(mono)
    if isinstance(mono, MultiPoly):
        if len(mono._terms) != 1 or next(iter(mono._terms.values())) != 1:
            raise PolyError("coefficient_of expects a monic monomial")
        mono = next(iter(mono._terms))
    elif isinstance(mono, Mapping):
        mono = monomial(mono)
    elif not isinstance(mono, tuple):
        raise PolyError(f"cannot read a monomial from {type(mono).__name__}")
    return a._terms.get(mono, 0)


def reciprocal_in(a: MultiPoly, name: str, degree: int) -> MultiPoly:
    """Return ``name^degree * a(name -> 1/name)``."""
    k = var_index(name)
    if a.degree(name) > degree:
        raise PolyError(f"degree in {name} is {a.degree(name)} > {degree}")
    out = {}
    for m, c in a.items():
        d = dict(m)
        e = degree - d.pop(k, 0)
        if e:
            d[k] = e
        out[tuple(sorted(d.items()))] = c
    return MultiPoly._raw(out)


def divide_linear(a: MultiPoly, name: str, root) -> MultiPoly:
    """Exact quotient of ``a`` by ``(name - root)``; raises if a remainder is left.

    Coefficients in the other variables are carried along, so this divides
    e.g. by ``x - 1`` or by ``1 + q`` (root -1) in a multivariate ring.
    """
    root = _norm(Fraction(root))
    slices = a.collect(name)
    if not slices:
        return ZERO
    top = max(slices)
    # synthetic division from the top coefficient down
    quotient: Dict[int, MultiPoly] = {}
    carry = ZERO
    for e in range(top, 0, -1):
        carry = slices.get(e, ZERO) + carry * root
        quotient[e - 1] = carry
    remainder = slices.get(0, ZERO) + carry * root
    if remainder:
        raise PolyError(f"division by ({name} - {root}) leaves remainder {remainder}")
    x = MultiPoly.var(name)
    return sum((c * x ** e for e, c in quotient.items()), ZERO)


def homogenize(a: MultiPoly, weights: Mapping[str, int], degree: int, filler) -> MultiPoly:
    """Multiply each term of weight w by ``filler^(degree - w)``.

    The weight of a monomial is the sum of ``weights[var] * exponent``;
    variables not listed weigh 0. Used to clear denominators of substituted
    arguments such as ``x -> x/(1+x)^2, z -> (1+x) z`` coefficient-wise.
    """
    filler = as_poly(filler)
    wk = {var_index(n): w for n, w in weights.items()}
    groups: Dict[int, Dict[Monomial, Coeff]] = {}
    for m, c in a.items():
        w = sum(wk.get(k, 0) * e for k, e in m)
        if w > degree:
            raise PolyError(f"term weight {w} exceeds {degree}")
        groups.setdefault(degree - w, {})[m] = c
    return sum((MultiPoly._raw(t) * filler ** gap for gap, t in groups.items()), ZERO)


def evaluate(a: MultiPoly, values: Mapping[str, object]) -> Coeff:
    r = substitute(a, values)
    return r.constant_value()


# rendering and parsing ------------------------------------------------------


def _lex_key(m: Monomial):
    dense = [0] * len(ALPHABET)
    for k, e in m:
        dense[k] = e
    return tuple(-e for e in dense)


def sorted_terms(a: MultiPoly):
    """Terms in canonical order: lexicographic, descending, over ALPHABET."""
    return sorted(a.items(), key=lambda mc: _lex_key(mc[0]))


def _render_mono(m: Monomial) -> str:
    return "*".join(ALPHABET[k] if e == 1 else f"{ALPHABET[k]}^{e}" for k, e in m)


def _render_coeff(c: Coeff) -> str:
    return str(c) if isinstance(c, int) else f"{c.numerator}/{c.denominator}"


def render(a: MultiPoly) -> str:
    """Canonical text, e.g. ``p^2*s^2 + 2*p*q*x*y + p*x*y``."""
    if a.is_zero():
        return "0"
    parts = []
    for m, c in sorted_terms(a):
        mag = -c if c < 0 else c
        if not m:
            body = _render_coeff(mag)
        elif mag == 1:
            body = _render_mono(m)
        else:
            body = f"{_render_coeff(mag)}*{_render_mono(m)}"
        if not parts:
            parts.append(f"-{body}" if c < 0 else body)
        else:
            parts.append(f"- {body}" if c < 0 else f"+ {body}")
    return " ".join(parts)


def parse(text: str) -> MultiPoly:
    """Parse the canonical syntax (``+ - * / ^`` and parentheses).

    Division is allowed only by constants, so ``1/2*x`` works but ``x/y``
    does not.
    """
    try:
        tree = ast.parse(text.replace("^", "**").strip(), mode="eval")
    except SyntaxError as exc:
        raise PolyError(f"cannot parse polynomial {text!r}: {exc.msg}") from None
    return _eval_node(tree.body, text)


def _eval_node(node, text) -> MultiPoly:
    if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        return MultiPoly.const(node.value)
    if isinstance(node, ast.Name):
        return MultiPoly.var(node.id)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval_node(node.operand, text)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp):
        left = _eval_node(node.left, text)
        if isinstance(node.op, ast.Pow):
            right = _eval_node(node.right, text)
            if not right.is_constant() or not isinstance(right.constant_value(), int):
                raise PolyError(f"exponent must be a nonnegative integer in {text!r}")
            return left ** right.constant_value()
        right = _eval_node(node.right, text)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            return left * right
        if isinstance(node.op, ast.Div):
            if not right.is_constant() or right.is_zero():
                raise PolyError(f"division only by nonzero constants in {text!r}")
            return left / right.constant_value()
    raise PolyError(f"unsupported syntax in polynomial {text!r}")
