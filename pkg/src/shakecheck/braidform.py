"""Reduction of link diagrams to braid closures.

Seifert circles of a diagram fail to be concentric exactly when some face
has two arcs of different circles traversed the same way around it.  Each
such defect admits a Reidemeister-2 move pushing one arc across the other;
iterating ends with a diagram whose circles form a coherent nested chain,
from which a braid word can be read off.  The braid word is unique only up
to moves that do not change the closure (commuting distant letters,
conjugation), which is all downstream consumers need.
"""

from __future__ import annotations

from .diagram import DiagramBuilder, DiagramError, LinkDiagram, connected_pieces, faces, sublink

_MOVE_CAP = 4000


def seifert_circles(d: LinkDiagram) -> list[tuple[int, ...]]:
    """Orbits of the oriented smoothing (strands grouped into circles)."""
    nxt = {}
    for cr in d.crossings:
        nxt[cr.under_in] = cr.over_out
        nxt[cr.over_in] = cr.under_out
    for s in d.component_of_strand:
        if s not in nxt:
            nxt[s] = s  # zero-crossing component
    out = []
    seen = set()
    for s in sorted(nxt):
        if s in seen:
            continue
        orbit = []
        cur = s
        while cur not in seen:
            seen.add(cur)
            orbit.append(cur)
            cur = nxt[cur]
        out.append(tuple(orbit))
    return out


def _circle_of(circles) -> dict[int, int]:
    return {s: i for i, orbit in enumerate(circles) for s in orbit}


def _find_defect(d: LinkDiagram):
    """Two same-direction darts of different Seifert circles in one face."""
    circle = _circle_of(seifert_circles(d))
    for face in faces(d):
        for i in range(len(face)):
            si, diri = face[i]
            for j in range(i + 1, len(face)):
                sj, dirj = face[j]
                if diri == dirj and circle[si] != circle[sj]:
                    return si, sj
    return None


def _r2_candidates(d: LinkDiagram, over: int, under: int):
    """All planar ways to push `over` across `under` by a Reidemeister 2."""
    out = []
    for under_first in (True, False):
        for first_sign in (1, -1):
            b = DiagramBuilder.from_diagram(d)
            e2 = b.split_arc(over)
            e3 = b.split_arc(e2)
            f2 = b.split_arc(under)
            f3 = b.split_arc(f2)
            if under_first:
                b.add_crossing(under, f2, over, e2, first_sign)
                b.add_crossing(f2, f3, e2, e3, -first_sign)
            else:
                b.add_crossing(f2, f3, over, e2, first_sign)
                b.add_crossing(under, f2, e2, e3, -first_sign)
            try:
                out.append(b.to_diagram())
            except DiagramError:
                continue
    return out


def _apply_vogel(d: LinkDiagram, over: int, under: int) -> LinkDiagram:
    n_circles = len(seifert_circles(d))
    for cand in _r2_candidates(d, over, under):
        if len(seifert_circles(cand)) == n_circles:
            return cand
    raise AssertionError("no circle-preserving planar R2 insertion found")


def braid_form(d: LinkDiagram) -> LinkDiagram:
    """Apply defect-removing moves until the diagram is a braid closure."""
    work = d
    for _ in range(_MOVE_CAP):
        defect = _find_defect(work)
        if defect is None:
            return work
        work = _apply_vogel(work, *defect)
    raise AssertionError("braid-form reduction did not terminate")


def _walk_circle(d: LinkDiagram, orbit, crossing_index) -> list[int]:
    """Crossings met along a circle, in circle order."""
    seq = []
    for s in orbit:
        hit = d.head_crossing(s)
        if hit is not None:
            seq.append(hit[0])
    return seq


def _piece_braid_word(d: LinkDiagram):
    """Braid word for a connected diagram (single piece)."""
    if not d.crossings:
        if d.m != 1:
            raise AssertionError("crossing-free piece with several components")
        return [], 1
    work = braid_form(d)
    circles = seifert_circles(work)
    circle = _circle_of(circles)

    # the band graph must be a simple chain of circles
    adj: dict[int, set[int]] = {i: set() for i in range(len(circles))}
    for cr in work.crossings:
        u = circle[cr.under_in]
        v = circle[cr.over_in]
        if u == v:
            raise AssertionError("band joins a Seifert circle to itself after reduction")
        adj[u].add(v)
        adj[v].add(u)
    ends = [i for i, ns in adj.items() if len(ns) <= 1]
    if len(circles) == 1:
        order = [0]
    else:
        if len(ends) != 2 or any(len(ns) > 2 for ns in adj.values()):
            raise AssertionError("Seifert circles do not form a chain after reduction")
        start = min(ends, key=lambda i: min(circles[i]))
        order = [start]
        prev = None
        while len(order) < len(circles):
            cur = order[-1]
            nxt = [n for n in adj[cur] if n != prev]
            if len(nxt) != 1:
                raise AssertionError("broken circle chain")
            prev = cur
            order.append(nxt[0])
    pos = {c: i + 1 for i, c in enumerate(order)}  # circle -> strand position

    col = {}
    for idx, cr in enumerate(work.crossings):
        u, v = pos[circle[cr.under_in]], pos[circle[cr.over_in]]
        if abs(u - v) != 1:
            raise AssertionError("band joins non-adjacent circles after reduction")
        col[idx] = min(u, v)

    walks = {}
    for i, orbit in enumerate(circles):
        walks[pos[i]] = _walk_circle(work, orbit, col)

    merged = list(walks[1]) if 1 in walks else []
    for p in range(2, len(circles)):
        walk = walks[p]
        anchors = [x for x in walk if col[x] == p - 1]
        if not anchors:
            raise AssertionError("circle chain misses its lower column")
        # rotate the cyclic walk to start at an anchor, then splice each run
        # of column-p letters in right after its preceding anchor
        start = walk.index(anchors[0])
        walk = walk[start:] + walk[:start]
        cur_anchor = walk[0]
        for x in walk[1:]:
            if col[x] == p - 1:
                cur_anchor = x
            else:
                merged.insert(merged.index(cur_anchor) + 1, x)
                cur_anchor = x
    if len(merged) != len(work.crossings):
        raise AssertionError("braid word extraction lost crossings")

    word = [work.crossings[x].sign * col[x] for x in merged]
    return word, len(circles)


def to_braid_word(d: LinkDiagram):
    """Braid word and strand count whose closure is the given link."""
    pieces = connected_pieces(d)
    word: list[int] = []
    strands = 0
    for piece in pieces:
        pd = sublink(d, piece) if len(pieces) > 1 else d
        w, n = _piece_braid_word(pd)
        word.extend(letter + (strands if letter > 0 else -strands) for letter in w)
        strands += n
    return word, strands
