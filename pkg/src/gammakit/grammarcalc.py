"""Chen grammars: formal derivatives defined by substitution rules.

A grammar maps some variables to polynomials. Its derivative ``D`` is
the derivation with ``D(v) = rule[v]`` (0 for variables without a rule),
so ``D(w) = sum_v dw/dv * rule[v]``; by the Leibniz rule every occurrence
of a variable is differentiated in one pass.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Sequence, Tuple

from .egfseries import TruncatedEGF
from .exactalg import ZERO, MultiPoly, as_poly, parse, partial_derivative, render, substitute, var_index


class Grammar:
    """Substitution rules ``var -> polynomial``."""

    def __init__(self, rules: Mapping[str, object], name: str = ""):
        self.name = name
        self.rules: Dict[str, MultiPoly] = {}
        for v, rhs in rules.items():
            var_index(v)
            self.rules[v] = as_poly(rhs)

    @classmethod
    def parse(cls, text: str, name: str = "") -> "Grammar":
        """Read ``"x -> x*y; y -> x*y"`` (``;`` or newlines separate rules)."""
        rules = {}
        for chunk in text.replace("\n", ";").split(";"):
            chunk = chunk.strip()
            if not chunk:
                continue
            if "->" not in chunk:
                raise ValueError(f"rule {chunk!r} has no '->'")
            lhs, rhs = chunk.split("->", 1)
            lhs = lhs.strip()
            if lhs in rules:
                raise ValueError(f"variable {lhs!r} has two rules")
            rules[lhs] = parse(rhs)
        return cls(rules, name)

    def specialize(self, bindings: Mapping[str, object], rename: Mapping[str, str] = None) -> "Grammar":
        """Substitute constants into the right-hand sides and optionally rename variables."""
        rename = rename or {}
        ren = {a: MultiPoly.var(b) for a, b in rename.items()}
        rules = {}
        for v, rhs in self.rules.items():
            rules[rename.get(v, v)] = substitute(substitute(rhs, bindings), ren)
        return Grammar(rules, self.name)

    def __eq__(self, other):
        return isinstance(other, Grammar) and self.rules == other.rules

    def __repr__(self):
        body = "; ".join(f"{v} -> {render(r)}" for v, r in self.rules.items())
        return f"Grammar({body!r})"


def derive(g: Grammar, w) -> MultiPoly:
    w = as_poly(w)
    out = ZERO
    present = set(w.variables())
    for v, rhs in g.rules.items():
        if v in present:
            out = out + partial_derivative(w, v) * rhs
    return out


def derive_n(g: Grammar, w, n: int) -> MultiPoly:
    if n < 0:
        raise ValueError("n must be >= 0")
    cur = as_poly(w)
    for _ in range(n):
        cur = derive(g, cur)
    return cur


@dataclass
class Derivation:
    """Cached powers ``D^k(seed)``; ``powers[k+1] == derive(grammar, powers[k])``."""

    grammar: Grammar
    seed: MultiPoly
    powers: List[MultiPoly] = field(default_factory=list)

    def __post_init__(self):
        self.seed = as_poly(self.seed)
        if not self.powers:
            self.powers = [self.seed]

    def __getitem__(self, n: int) -> MultiPoly:
        while len(self.powers) <= n:
            self.powers.append(derive(self.grammar, self.powers[-1]))
        return self.powers[n]


def gen_series(g: Grammar, w, order: int) -> TruncatedEGF:
    d = Derivation(g, as_poly(w))
    return TruncatedEGF(d[n] for n in range(order + 1))


def change_of_grammar_failures(g: Grammar, h: Grammar, bindings: Mapping[str, object],
                               seeds: Tuple[object, object], n_max: int) -> List[int]:
    """Orders n <= n_max where substituting into D_h^n(seed_h) misses D_g^n(seed_g)."""
    seed_g, seed_h = seeds
    dg = Derivation(g, as_poly(seed_g))
    dh = Derivation(h, as_poly(seed_h))
    return [n for n in range(n_max + 1) if substitute(dh[n], bindings) != dg[n]]


def check_change_of_grammar(g: Grammar, h: Grammar, bindings: Mapping[str, object],
                            seeds: Tuple[object, object], n_max: int) -> bool:
    return not change_of_grammar_failures(g, h, bindings, seeds, n_max)


BUILTIN_TEXT = {
    "G": "L -> L*y; M -> M*s; s -> x*y; x -> x*y; y -> x*y",
    "G1": "I -> I*t; t -> 2*u; u -> u*v; v -> 2*u",
    "G2": "J -> p*J*(s+q*t); s -> (1+q)*x*y; t -> (1+q)*x*y; x -> (1+q)*x*y; y -> (1+q)*x*y",
    "G3": "J -> p*J*h; h -> (1+q)^2*u; u -> (1+q)*u*v; v -> 2*(1+q)*u",
    "G4": "a -> q*a*t; t -> 2*u; u -> u*v; v -> 2*u",
    "G5": "J -> J*h; h -> u; u -> u*v; v -> 2*u",
    "G6": "J -> J*(s+q*y); s -> (1+q)*x*y; x -> (1+q)*x*y; y -> (1+q)*x*y",
    "G7": "J -> J*s + q*H; s -> (1+q)*u; H -> H*s + q*H*v + J*u; u -> (1+q)*u*v; v -> 2*(1+q)*u",
    "dumont": "x -> x*y; y -> x*y",
}

BUILTINS: Dict[str, Grammar] = {name: Grammar.parse(text, name) for name, text in BUILTIN_TEXT.items()}


def builtin(name: str) -> Grammar:
    try:
        return BUILTINS[name]
    except KeyError:
        raise KeyError(f"unknown grammar {name!r}; known: {', '.join(BUILTINS)}") from None


# change-of-grammar bindings: (source, target, target variable -> source expression, seeds)
CHANGES = {
    "G->G1": ("G", "G1", {"I": "L*M", "t": "s+y", "u": "x*y", "v": "x+y"}, ("L*M", "I")),
    "G2->G3": ("G2", "G3", {"h": "s+q*t", "u": "x*y", "v": "x+y"}, ("J", "J")),
    "G6->G7": ("G6", "G7", {"H": "J*y", "u": "x*y", "v": "x+y"}, ("J", "J")),
}


def check_builtin_change(name: str, n_max: int) -> List[int]:
    g, h, bindings, seeds = CHANGES[name]
    return change_of_grammar_failures(builtin(g), builtin(h), bindings, seeds, n_max)
