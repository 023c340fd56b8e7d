"""Independent Conway polynomial oracle via the skein relation.

Computes nabla recursively from nabla(L+) - nabla(L-) = z * nabla(L0),
resolving toward descending diagrams (which are unlinks).  Exponential
time; guarded by a crossing-count bound.  This route shares no code with
the Seifert matrix route, which is the point.
"""

from __future__ import annotations

from .diagram import DiagramBuilder, LinkDiagram
from .poly import ONE, ZERO, ConwayPolynomial

DEFAULT_BOUND = 14


class SkeinBoundError(ValueError):
    """Crossing count exceeds the configured skein recursion bound."""


def _first_bad_crossing(d: LinkDiagram):
    """First crossing whose first passage (in the standard walk) is under.

    Walk components in order, strands ascending.  Returns None when the
    diagram is descending, i.e. an unlink.
    """
    seen = set()
    for comp in range(1, d.m + 1):
        for s in d.component_strands(comp):
            hit = d.head_crossing(s)
            if hit is None:
                continue
            idx, role = hit
            if role == "over":
                seen.add(idx)
            elif idx not in seen:
                return idx
            # an under passage at a crossing already seen is fine
            seen.add(idx)
    return None


def _switched(d: LinkDiagram, idx: int) -> LinkDiagram:
    b = DiagramBuilder.from_diagram(d)
    b.switch_crossing(idx)
    return b.to_diagram(check_planar=False)


def _smoothed(d: LinkDiagram, idx: int) -> LinkDiagram:
    b = DiagramBuilder.from_diagram(d)
    b.smooth_crossing(idx)
    return b.to_diagram(preserve_components=False, check_planar=False)


def _nabla(d: LinkDiagram) -> ConwayPolynomial:
    idx = _first_bad_crossing(d)
    if idx is None:
        return ONE if d.m == 1 else ZERO
    sign = d.crossings[idx].sign
    switched = _nabla(_switched(d, idx))
    smoothed = _nabla(_smoothed(d, idx)).shift(1)
    if sign > 0:
        return switched + smoothed
    return switched - smoothed


def conway_skein_oracle(d: LinkDiagram, bound: int = DEFAULT_BOUND) -> ConwayPolynomial:
    """Conway polynomial by brute skein recursion."""
    if d.crossing_count > bound:
        raise SkeinBoundError(
            "diagram has %d crossings, oracle bound is %d" % (d.crossing_count, bound))
    return _nabla(d)
