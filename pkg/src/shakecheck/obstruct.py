"""Obstruction engine: necessary conditions for a link to be shake slice.

Each condition is evaluated to pass / obstructed / not-evaluable with a
witness; one obstructed condition makes the whole verdict OBSTRUCTED.
The tool never claims sliceness: a clean report only says no obstruction
was found up to the configured truncation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations, product

from .arf import arf_suite
from .diagram import DiagramError, LinkDiagram, linking_matrix, sublink
from .milnor import DEFAULT_Q_MAX, first_nonvanishing, mu_bar
from .seifert import algebraic_slice_check

PASS = "pass"
OBSTRUCTED = "obstructed"
NOT_EVALUABLE = "not-evaluable"


@dataclass(frozen=True)
class ShakingSpec:
    """Copy-count matrix for shaking: diagonal row i contributes 2n_ii + 1
    copies of component i, off-diagonal entries 2n_ij copies of component j."""
    matrix: tuple

    def __init__(self, matrix):
        rows = tuple(tuple(int(x) for x in row) for row in matrix)
        if not rows or any(len(r) != len(rows) for r in rows):
            raise DiagramError("shaking matrix must be square")
        if any(x < 0 for r in rows for x in r):
            raise DiagramError("shaking matrix entries must be nonnegative")
        object.__setattr__(self, "matrix", rows)

    @property
    def m(self) -> int:
        return len(self.matrix)

    def row_sum(self, i: int) -> int:
        return sum(self.matrix[i - 1])

    @property
    def is_strong(self) -> bool:
        return all(self.matrix[i][j] == 0 for i in range(self.m)
                   for j in range(self.m) if i != j)

    def copies_of(self, j: int) -> int:
        """Total parallel copies of source component j in the shaking."""
        diag = 2 * self.matrix[j - 1][j - 1] + 1
        off = sum(2 * self.matrix[i][j - 1] for i in range(self.m) if i != j - 1)
        return diag + off


def genus_bound(spec: ShakingSpec) -> int:
    """Upper bound for the 4-genus carried by a shaking certificate."""
    return sum(spec.row_sum(i) for i in range(1, spec.m + 1))


@dataclass(frozen=True)
class ConditionRecord:
    id: str
    status: str
    witness: object
    criterion: str

    def to_json(self):
        return {"id": self.id, "status": self.status, "witness": self.witness,
                "criterion": self.criterion}


@dataclass(frozen=True)
class ObstructionReport:
    verdict: str
    conditions: tuple
    q_max: int
    oracle_bound: int

    def condition(self, cid: str) -> ConditionRecord:
        for c in self.conditions:
            if c.id == cid:
                return c
        raise KeyError(cid)

    def first_obstruction(self):
        for c in self.conditions:
            if c.status == OBSTRUCTED:
                return c
        return None

    def to_json(self):
        return {
            "verdict": self.verdict,
            "q_max": self.q_max,
            "oracle_bound": self.oracle_bound,
            "conditions": [c.to_json() for c in self.conditions],
        }

    def to_json_text(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2)

    def to_text(self) -> str:
        lines = ["verdict: %s  (q_max=%d, oracle_bound=%d)" %
                 (self.verdict, self.q_max, self.oracle_bound)]
        for c in self.conditions:
            w = "" if c.witness is None else "  witness=%s" % json.dumps(c.witness, sort_keys=True)
            lines.append("  [%-13s] %s%s" % (c.status, c.id, w))
            lines.append("      %s" % c.criterion)
        return "\n".join(lines)


def band_pass_verdict(d: LinkDiagram, q_max: int = DEFAULT_Q_MAX) -> ConditionRecord:
    """Whether the link could be band-pass equivalent to the trivial link.

    Applies the classification for links with vanishing pairwise linking
    numbers: component Arf invariants, all length-3 invariants, and the
    parity of mu_bar(iijj).
    """
    criterion = ("band-pass trivial needs Arf(L_i)=0, mu_bar(ijk)=0, "
                 "and mu_bar(iijj) even, given vanishing pairwise linking numbers")
    lk = linking_matrix(d)
    nonzero = [(i + 1, j + 1, lk[i][j]) for i in range(d.m) for j in range(i + 1, d.m) if lk[i][j]]
    if nonzero:
        i, j, v = nonzero[0]
        return ConditionRecord("band_pass", NOT_EVALUABLE,
                               {"reason": "pairwise linking numbers do not vanish",
                                "i": i, "j": j, "lk": v}, criterion)
    for i in range(1, d.m + 1):
        from .seifert import arf_knot
        a = arf_knot(sublink(d, [i]))
        if a:
            return ConditionRecord("band_pass", OBSTRUCTED,
                                   {"component": i, "arf": a}, criterion)
    for I in product(range(1, d.m + 1), repeat=3):
        v = mu_bar(d, I)
        if v.indeterminacy != 0:
            return ConditionRecord("band_pass", NOT_EVALUABLE,
                                   {"reason": "indeterminate mu_bar", "I": list(I),
                                    "modulus": v.indeterminacy}, criterion)
        if v.residue:
            return ConditionRecord("band_pass", OBSTRUCTED,
                                   {"I": list(I), "mu_bar": v.residue}, criterion)
    for i, j in combinations(range(1, d.m + 1), 2):
        I = (i, i, j, j)
        v = mu_bar(d, I)
        if v.indeterminacy % 2:
            return ConditionRecord("band_pass", NOT_EVALUABLE,
                                   {"reason": "mu_bar parity indeterminate", "I": list(I),
                                    "modulus": v.indeterminacy}, criterion)
        if v.residue % 2:
            return ConditionRecord("band_pass", OBSTRUCTED,
                                   {"I": list(I), "mu_bar_mod2": v.residue % 2}, criterion)
    return ConditionRecord("band_pass", PASS, None, criterion)


def band_pass_trivial(d: LinkDiagram, q_max: int = DEFAULT_Q_MAX) -> str:
    return band_pass_verdict(d, q_max).status


def shake_slice_report(d: LinkDiagram, q_max: int = DEFAULT_Q_MAX,
                       oracle_bound: int = 14) -> ObstructionReport:
    """Evaluate every necessary condition for shake sliceness."""
    conditions = []

    lk = linking_matrix(d)
    nonzero = [(i + 1, j + 1, lk[i][j]) for i in range(d.m) for j in range(i + 1, d.m) if lk[i][j]]
    lk_ok = not nonzero
    conditions.append(ConditionRecord(
        "pairwise_lk", PASS if lk_ok else OBSTRUCTED,
        None if lk_ok else {"i": nonzero[0][0], "j": nonzero[0][1], "lk": nonzero[0][2]},
        "all pairwise linking numbers must vanish"))

    fnv = first_nonvanishing(d, q_max)
    if fnv is None:
        conditions.append(ConditionRecord(
            "milnor_vanishing", PASS, {"checked_up_to": q_max},
            "all Milnor invariants of length <= q_max must vanish"))
    else:
        shown = [{"I": list(i), "value": v} for i, v in fnv.values[:8]]
        conditions.append(ConditionRecord(
            "milnor_vanishing", OBSTRUCTED,
            {"length": fnv.length, "values": shown},
            "all Milnor invariants of length <= q_max must vanish"))

    suite = arf_suite(d)
    if suite.obstructed():
        status = OBSTRUCTED
    elif suite.has_unevaluable():
        status = NOT_EVALUABLE
    else:
        status = PASS
    conditions.append(ConditionRecord(
        "arf_suite", status, suite.to_json(),
        "Arf of the link, of each component, and of each 2-component sublink must vanish"))

    conditions.append(band_pass_verdict(d, q_max))

    comp_reasons = {}
    for i in range(1, d.m + 1):
        verdict = algebraic_slice_check(sublink(d, [i]))
        if verdict.obstructed:
            comp_reasons[i] = [list(r) for r in verdict.reasons]
    conditions.append(ConditionRecord(
        "algebraic_slice", PASS if not comp_reasons else OBSTRUCTED,
        None if not comp_reasons else {"components": {str(k): v for k, v in sorted(comp_reasons.items())}},
        "each component must be algebraically slice (signature, Arf, square determinant)"))

    verdict = OBSTRUCTED if any(c.status == OBSTRUCTED for c in conditions) else "NO_OBSTRUCTION_FOUND"
    if verdict == OBSTRUCTED:
        verdict = "OBSTRUCTED"
    return ObstructionReport(verdict, tuple(conditions), q_max, oracle_bound)
