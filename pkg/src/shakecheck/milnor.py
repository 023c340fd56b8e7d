"""Milnor mu-bar invariants via Magnus expansion of reduced longitudes.

Pipeline: Wirtinger presentation of the diagram -> iterated rewriting of
every arc generator as a word in the chosen meridians, valid modulo the
lower central series -> Magnus expansion (X_i = meridian i minus one) of
the untwisted longitudes -> coefficient read-off with Milnor's
indeterminacy bookkeeping.

The multi-index convention: mu_bar(i1 ... ik i) is the coefficient of
X_{i1} ... X_{ik} in the expansion of component i's longitude.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from math import gcd

from .diagram import DiagramError, LinkDiagram, writhe

DEFAULT_Q_MAX = 4


class TruncatedSeries:
    """Noncommutative integer power series truncated above total degree q.

    Terms map words over symbols 1..m (tuples) to coefficients.
    """

    __slots__ = ("q", "terms")

    def __init__(self, q, terms=None):
        self.q = q
        self.terms = {w: c for w, c in (terms or {}).items() if c and len(w) <= q}

    @classmethod
    def unit(cls, q):
        return cls(q, {(): 1})

    @classmethod
    def meridian(cls, i, q):
        return cls(q, {(): 1, (i,): 1})

    def coefficient(self, word) -> int:
        return self.terms.get(tuple(word), 0)

    def mul(self, other: "TruncatedSeries") -> "TruncatedSeries":
        q = self.q
        out: dict[tuple, int] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                if len(w1) + len(w2) > q:
                    continue
                w = w1 + w2
                v = out.get(w, 0) + c1 * c2
                if v:
                    out[w] = v
                elif w in out:
                    del out[w]
        return TruncatedSeries(q, out)

    def inverse(self) -> "TruncatedSeries":
        if self.terms.get((), 0) != 1:
            raise ArithmeticError("only unit series are invertible")
        n = TruncatedSeries(self.q, {w: -c for w, c in self.terms.items() if w})
        out = TruncatedSeries.unit(self.q)
        power = TruncatedSeries.unit(self.q)
        for _ in range(self.q):
            power = power.mul(n)
            if not power.terms:
                break
            out = TruncatedSeries(self.q, _merge(out.terms, power.terms))
        return out

    def power(self, e: int) -> "TruncatedSeries":
        base = self if e >= 0 else self.inverse()
        out = TruncatedSeries.unit(self.q)
        for _ in range(abs(e)):
            out = out.mul(base)
        return out

    def __eq__(self, other):
        return isinstance(other, TruncatedSeries) and self.q == other.q and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for w in sorted(self.terms, key=lambda w: (len(w), w)):
            c = self.terms[w]
            name = "".join("X%d" % i for i in w) if w else "1"
            bits.append("%+d*%s" % (c, name))
        return " ".join(bits)


def _merge(a, b):
    out = dict(a)
    for w, c in b.items():
        v = out.get(w, 0) + c
        if v:
            out[w] = v
        elif w in out:
            del out[w]
    return out


def magnus_expand(word, q: int) -> TruncatedSeries:
    """Expansion of a free word [(symbol, exponent), ...] in 1 + X terms."""
    out = TruncatedSeries.unit(q)
    for sym, exp in word:
        out = out.mul(TruncatedSeries.meridian(sym, q).power(exp))
    return out


@dataclass(frozen=True)
class WirtingerPresentation:
    """Arc generators, crossing relations and untwisted longitudes."""
    generators: tuple            # (arc id, component) pairs
    relations: tuple             # (out arc, over arc, exponent, in arc), walk order
    meridians: dict              # component -> arc id
    longitudes: dict             # component -> ((arc id, exponent), ...)
    writhes: dict                # component -> writhe

    @property
    def generator_count(self):
        return len(self.generators)

    @property
    def relation_count(self):
        return len(self.relations)


def wirtinger(d: LinkDiagram) -> WirtingerPresentation:
    """Wirtinger presentation with meridians on each component's first arc."""
    parent = {s: s for s in d.component_of_strand}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for cr in d.crossings:
        a, b = find(cr.over_in), find(cr.over_out)
        if a != b:
            parent[max(a, b)] = min(a, b)

    arc = {s: find(s) for s in d.component_of_strand}
    generators = tuple(sorted({(arc[s], c) for s, c in d.component_of_strand.items()}))

    meridians = {}
    longitudes = {}
    writhes = {}
    relations = []
    for comp in range(1, d.m + 1):
        strands = d.component_strands(comp)
        meridians[comp] = arc[strands[0]]
        letters = []
        for s in strands:
            hit = d.head_crossing(s)
            if hit is None:
                continue
            idx, role = hit
            cr = d.crossings[idx]
            if role == "under":
                # outgoing under arc = over^(-sign) . incoming . over^(sign);
                # the longitude records the over arc with the crossing sign
                over = arc[cr.over_in]
                relations.append((arc[cr.under_out], over, -cr.sign, arc[s]))
                letters.append((over, cr.sign))
        w = writhe(d, comp)
        writhes[comp] = w
        if w:
            letters.append((meridians[comp], -w))
        longitudes[comp] = tuple(letters)
    return WirtingerPresentation(generators, tuple(relations), meridians, longitudes, writhes)


def chen_milnor_reduce(p: WirtingerPresentation, q: int) -> dict:
    """Meridian-word expansions of all arc generators, mod degree > q.

    Iterates the defining relations q times starting from each component's
    meridian image; the consistency relation closing each component is
    skipped, which is exactly the redundant Wirtinger relation.
    """
    if q < 1:
        raise DiagramError("reduction degree must be >= 1")
    comp_of_arc = dict(p.generators)
    expr = {a: TruncatedSeries.meridian(comp_of_arc[a], q) for a, _ in p.generators}
    meridian_arcs = set(p.meridians.values())
    for _ in range(q):
        new = dict(expr)
        for out, over, exp, inn in p.relations:
            if out in meridian_arcs:
                continue
            w = new[over].power(exp) if exp != 1 else new[over]
            new[out] = w.mul(new[inn]).mul(w.inverse())
        expr = new
    return expr


@lru_cache(maxsize=256)
def _longitude_series(d: LinkDiagram, q: int) -> dict:
    p = wirtinger(d)
    expr = chen_milnor_reduce(p, q)
    out = {}
    for comp in range(1, d.m + 1):
        series = TruncatedSeries.unit(q)
        for arcid, exp in p.longitudes[comp]:
            series = series.mul(expr[arcid].power(exp))
        out[comp] = series
    return out


@dataclass(frozen=True)
class MuBarValue:
    index: tuple
    residue: int
    indeterminacy: int

    def is_zero(self) -> bool:
        return self.residue == 0

    def to_json(self):
        return {"I": list(self.index), "residue": self.residue,
                "indeterminacy": self.indeterminacy}


def _sub_indices(I):
    """Delete one index, then all cyclic rotations (Milnor's indeterminacy set)."""
    out = set()
    for k in range(len(I)):
        J = I[:k] + I[k + 1:]
        for r in range(len(J)):
            out.add(J[r:] + J[:r])
    return sorted(out)


@lru_cache(maxsize=8192)
def _mu_bar_cached(d: LinkDiagram, I: tuple) -> MuBarValue:
    q = len(I)
    series = _longitude_series(d, q)[I[-1]]
    raw = series.coefficient(I[:-1])
    delta = 0
    if len(I) > 2:
        for J in _sub_indices(I):
            v = _mu_bar_cached(d, J)
            delta = gcd(gcd(delta, abs(v.residue)), v.indeterminacy)
    residue = raw % delta if delta else raw
    return MuBarValue(I, residue, delta)


def mu_bar(d: LinkDiagram, I, q=None) -> MuBarValue:
    """Milnor invariant for a multi-index, with its indeterminacy modulus."""
    I = tuple(int(i) for i in I)
    if len(I) < 2:
        raise DiagramError("mu_bar needs a multi-index of length >= 2")
    for i in I:
        if not 1 <= i <= d.m:
            raise DiagramError("multi-index entry %d out of range 1..%d" % (i, d.m))
    if q is not None and q < len(I):
        raise DiagramError("truncation degree %d below index length %d" % (q, len(I)))
    return _mu_bar_cached(d, I)


@dataclass(frozen=True)
class FirstNonVanishing:
    length: int
    values: tuple  # ((index, residue), ...) nonzero entries

    def to_json(self):
        return {"length": self.length,
                "values": [{"I": list(i), "value": v} for i, v in self.values]}


def first_nonvanishing(d: LinkDiagram, q_max: int = DEFAULT_Q_MAX):
    """Smallest-length nonzero mu-bar data, or None if all vanish to q_max.

    At the first non-vanishing length every indeterminacy is zero, so the
    reported values are genuine integers; this is asserted.
    """
    if q_max < 2:
        raise DiagramError("q_max must be >= 2")
    for k in range(2, q_max + 1):
        nonzero = []
        for I in product(range(1, d.m + 1), repeat=k):
            v = _mu_bar_cached(d, I)
            if not v.is_zero():
                if v.indeterminacy != 0:
                    raise AssertionError("nonzero indeterminacy %d at first non-vanishing length" % v.indeterminacy)
                nonzero.append((I, v.residue))
        if nonzero:
            return FirstNonVanishing(k, tuple(nonzero))
    return None
