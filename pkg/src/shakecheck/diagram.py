"""Oriented link diagrams as planar diagram (PD) data.

Conventions, fixed once here and relied on everywhere else:

* A crossing is a 4-tuple of strand labels (a, b, c, d) listed
  counterclockwise starting from the incoming under-strand, plus a sign.
* Sign +1 means the crossing is right-handed: the over-strand runs d -> b.
  Sign -1 means the over-strand runs b -> d.
* Strand labels along each component form a single ascending cyclic
  sequence; orientation follows increasing labels (wrapping at the top).
* A component with no crossings is stored as a single "marker" strand
  that appears in no crossing tuple.

For two-strand components (e.g. either component of a Hopf link) the
over-strand direction cannot be recovered from the labels alone, so signs
must be supplied explicitly in that case; they are cross-checked whenever
they are derivable.
"""

from __future__ import annotations

import json
from typing import Iterable, Iterator, NamedTuple, Optional, Sequence


class DiagramError(ValueError):
    """Raised for malformed or inconsistent diagram data."""


class Crossing(NamedTuple):
    a: int
    b: int
    c: int
    d: int
    sign: int

    @property
    def under_in(self) -> int:
        return self.a

    @property
    def under_out(self) -> int:
        return self.c

    @property
    def over_in(self) -> int:
        return self.d if self.sign > 0 else self.b

    @property
    def over_out(self) -> int:
        return self.b if self.sign > 0 else self.d

    def strands(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)


def crossing_from_flow(u_in: int, u_out: int, o_in: int, o_out: int, sign: int) -> Crossing:
    """Build the PD tuple from the semantic description of a crossing."""
    if sign == 1:
        return Crossing(u_in, o_out, u_out, o_in, 1)
    if sign == -1:
        return Crossing(u_in, o_in, u_out, o_out, -1)
    raise DiagramError("crossing sign must be +1 or -1, got %r" % (sign,))


class LinkDiagram:
    """Validated, immutable oriented link diagram.

    Construct with a list of crossing tuples, a strand -> component map and
    (optionally) a list of signs.  Signs are recomputed from the orientation
    data and cross-checked against any supplied values.
    """

    __slots__ = ("crossings", "component_of_strand", "m", "_succ", "_comp_strands", "_hash")

    def __init__(self, crossings, component_of_strand, signs=None, check_planar=True):
        tuples = []
        for idx, cr in enumerate(crossings):
            if isinstance(cr, Crossing):
                tuples.append((cr.a, cr.b, cr.c, cr.d, cr.sign))
            else:
                t = tuple(int(x) for x in cr)
                if len(t) == 4:
                    tuples.append(t + (None,))
                elif len(t) == 5:
                    tuples.append(t)
                else:
                    raise DiagramError("crossing %d must have 4 strand labels" % idx)
        if signs is not None:
            if len(signs) != len(tuples):
                raise DiagramError("signs list length %d != crossing count %d" % (len(signs), len(tuples)))
            merged = []
            for idx, (t, s) in enumerate(zip(tuples, signs)):
                s = int(s)
                if s not in (1, -1):
                    raise DiagramError("bad sign field at crossing %d: %r" % (idx, s))
                if t[4] is not None and t[4] != s:
                    raise DiagramError("bad sign field at crossing %d" % idx)
                merged.append(t[:4] + (s,))
            tuples = merged

        comp_of = {int(s): int(c) for s, c in dict(component_of_strand).items()}
        if not comp_of:
            raise DiagramError("diagram must have at least one component")
        comps = sorted(set(comp_of.values()))
        if comps != list(range(1, len(comps) + 1)):
            raise DiagramError("components must be labeled 1..m, got %r" % (comps,))
        self.m = len(comps)

        counts: dict[int, int] = {}
        for t in tuples:
            for s in t[:4]:
                counts[s] = counts.get(s, 0) + 1
                if s not in comp_of:
                    raise DiagramError("strand %d missing from component_of_strand" % s)
        for s, n in counts.items():
            if n != 2:
                raise DiagramError("unbalanced strand %d (appears %d times, expected 2)" % (s, n))

        comp_strands: dict[int, tuple[int, ...]] = {}
        for s, c in comp_of.items():
            comp_strands.setdefault(c, ())
        for c in comps:
            strands = tuple(sorted(s for s, cc in comp_of.items() if cc == c))
            comp_strands[c] = strands
            with_crossings = [s for s in strands if s in counts]
            if not with_crossings and len(strands) != 1:
                raise DiagramError("component %d has no crossings but %d marker strands" % (c, len(strands)))
            if with_crossings and len(with_crossings) != len(strands):
                raise DiagramError("component %d mixes crossing strands and marker strands" % c)

        succ: dict[int, int] = {}
        for c in comps:
            strands = comp_strands[c]
            for i, s in enumerate(strands):
                succ[s] = strands[(i + 1) % len(strands)]

        resolved: list[Crossing] = []
        for idx, t in enumerate(tuples):
            a, b, cc, d, s = t
            if succ[a] != cc:
                raise DiagramError(
                    "inconsistent orientation at crossing %d: under-strand %d does not continue to %d" % (idx, a, cc))
            pos = succ[d] == b
            neg = succ[b] == d
            if pos and not neg:
                derived = 1
            elif neg and not pos:
                derived = -1
            elif pos and neg:
                derived = None
            else:
                raise DiagramError("inconsistent orientation at crossing %d: over-strand %d/%d broken" % (idx, b, d))
            if s is None:
                if derived is None:
                    raise DiagramError(
                        "crossing %d has ambiguous over-strand orientation; supply signs" % idx)
                s = derived
            elif derived is not None and derived != s:
                raise DiagramError("bad sign field at crossing %d: got %d, orientation forces %d" % (idx, s, derived))
            resolved.append(Crossing(a, b, cc, d, s))

        ins: dict[int, int] = {}
        outs: dict[int, int] = {}
        for idx, cr in enumerate(resolved):
            for s, store in ((cr.under_in, ins), (cr.over_in, ins), (cr.under_out, outs), (cr.over_out, outs)):
                if s in store:
                    raise DiagramError("inconsistent orientation: strand %d used twice as %s" %
                                       (s, "input" if store is ins else "output"))
                store[s] = idx

        self.crossings = tuple(resolved)
        self.component_of_strand = dict(comp_of)
        self._succ = succ
        self._comp_strands = comp_strands
        self._hash = None

        if check_planar and self.crossings:
            _check_euler(self)

    # -- basic accessors -------------------------------------------------

    @property
    def crossing_count(self) -> int:
        return len(self.crossings)

    def component_strands(self, i: int) -> tuple[int, ...]:
        if i not in self._comp_strands:
            raise DiagramError("no component %r" % (i,))
        return self._comp_strands[i]

    def succ(self, strand: int) -> int:
        return self._succ[strand]

    def strands(self) -> Iterator[int]:
        return iter(sorted(self.component_of_strand))

    def is_knot(self) -> bool:
        return self.m == 1

    def head_crossing(self, strand: int) -> Optional[tuple[int, str]]:
        """Index and role ('under'/'over') of the crossing this strand enters."""
        for idx, cr in enumerate(self.crossings):
            if cr.under_in == strand:
                return idx, "under"
            if cr.over_in == strand:
                return idx, "over"
        return None

    def __eq__(self, other) -> bool:
        return (isinstance(other, LinkDiagram)
                and self.crossings == other.crossings
                and self.component_of_strand == other.component_of_strand)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.crossings, tuple(sorted(self.component_of_strand.items()))))
        return self._hash

    def __repr__(self):
        return "LinkDiagram(m=%d, crossings=%d)" % (self.m, len(self.crossings))


# -- faces / planarity ---------------------------------------------------

def _slot_tables(d: LinkDiagram):
    """Per-strand head/tail slots.  A slot is (crossing index, port 0..3)."""
    head: dict[int, tuple[int, int]] = {}
    tail: dict[int, tuple[int, int]] = {}
    for idx, cr in enumerate(d.crossings):
        ports = cr.strands()
        if cr.sign > 0:
            in_ports, out_ports = (0, 3), (2, 1)
        else:
            in_ports, out_ports = (0, 1), (2, 3)
        for p in in_ports:
            head[ports[p]] = (idx, p)
        for p in out_ports:
            tail[ports[p]] = (idx, p)
    return head, tail


def faces(d: LinkDiagram) -> list[list[tuple[int, int]]]:
    """Faces of the diagram as dart cycles.

    A dart is (strand, direction); direction +1 travels with the strand
    orientation.  Zero-crossing components do not contribute darts.
    """
    head, tail = _slot_tables(d)
    port_arc = {}
    for idx, cr in enumerate(d.crossings):
        for p, s in enumerate(cr.strands()):
            port_arc.setdefault((idx, p), []).append(s)

    def next_dart(dart):
        s, direction = dart
        slot = head[s] if direction == 1 else tail[s]
        idx, p = slot
        q = (p + 1) % 4
        t = d.crossings[idx].strands()[q]
        if tail.get(t) == (idx, q):
            return (t, 1)
        return (t, -1)

    darts = set()
    for s in head:
        darts.add((s, 1))
        darts.add((s, -1))
    out = []
    seen = set()
    for start in sorted(darts):
        if start in seen:
            continue
        face = []
        cur = start
        while cur not in seen:
            seen.add(cur)
            face.append(cur)
            cur = next_dart(cur)
        out.append(face)
    return out


def connected_pieces(d: LinkDiagram) -> list[tuple[int, ...]]:
    """Partition of components into pieces that share crossings."""
    parent = {c: c for c in range(1, d.m + 1)}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)

    for cr in d.crossings:
        cu = d.component_of_strand[cr.under_in]
        co = d.component_of_strand[cr.over_in]
        union(cu, co)
    groups: dict[int, list[int]] = {}
    for c in range(1, d.m + 1):
        groups.setdefault(find(c), []).append(c)
    return [tuple(sorted(g)) for _, g in sorted(groups.items())]


def _check_euler(d: LinkDiagram):
    """Euler characteristic test: each connected piece must be planar."""
    fs = faces(d)
    piece_of_comp = {}
    for i, piece in enumerate(connected_pieces(d)):
        for c in piece:
            piece_of_comp[c] = i
    v = {}
    e = {}
    f = {}
    for idx, cr in enumerate(d.crossings):
        p = piece_of_comp[d.component_of_strand[cr.under_in]]
        v[p] = v.get(p, 0) + 1
    for s in d.component_of_strand:
        if any(s in cr.strands() for cr in d.crossings):
            p = piece_of_comp[d.component_of_strand[s]]
            e[p] = e.get(p, 0) + 1
    for face in fs:
        s = face[0][0]
        p = piece_of_comp[d.component_of_strand[s]]
        f[p] = f.get(p, 0) + 1
    for p, nv in v.items():
        if nv - e.get(p, 0) + f.get(p, 0) != 2:
            raise DiagramError("non-realizable code: crossing data is not planar")


# -- elementary invariants ----------------------------------------------

def linking_number(d: LinkDiagram, i: int, j: int) -> int:
    """Half the signed count of crossings between components i and j."""
    if i == j:
        raise DiagramError("linking number needs two distinct components (self-linking is framing-dependent)")
    for c in (i, j):
        if not 1 <= c <= d.m:
            raise DiagramError("no component %r" % (c,))
    total = 0
    for cr in d.crossings:
        cu = d.component_of_strand[cr.under_in]
        co = d.component_of_strand[cr.over_in]
        if {cu, co} == {i, j}:
            total += cr.sign
    if total % 2:
        raise DiagramError("odd signed crossing count between components %d and %d" % (i, j))
    return total // 2


def linking_matrix(d: LinkDiagram) -> list[list[int]]:
    lk = [[0] * d.m for _ in range(d.m)]
    for i in range(1, d.m + 1):
        for j in range(i + 1, d.m + 1):
            v = linking_number(d, i, j)
            lk[i - 1][j - 1] = v
            lk[j - 1][i - 1] = v
    return lk


def writhe(d: LinkDiagram, i: int) -> int:
    """Signed count of self-crossings of component i."""
    if not 1 <= i <= d.m:
        raise DiagramError("no component %r" % (i,))
    total = 0
    for cr in d.crossings:
        if (d.component_of_strand[cr.under_in] == i
                and d.component_of_strand[cr.over_in] == i):
            total += cr.sign
    return total


class Properness(NamedTuple):
    """Per-component and aggregate evenness of pairwise linking numbers."""
    per_component: tuple[int, ...]
    per_component_ok: bool
    aggregate_sum: int
    aggregate_ok: bool

    def __bool__(self):
        return self.per_component_ok


def properness(d: LinkDiagram) -> Properness:
    lk = linking_matrix(d)
    sums = tuple(sum(lk[i]) for i in range(d.m))
    agg = sum(sums)
    return Properness(sums, all(s % 2 == 0 for s in sums), agg, agg % 2 == 0)


def is_proper(d: LinkDiagram) -> bool:
    """True when every component's total linking with the rest is even."""
    return bool(properness(d))


# -- mutable builder for diagram surgery ----------------------------------

class DiagramBuilder:
    """Mutable diagram with free-form arc ids, for constructions and rewrites.

    Arcs are joined by `succ`; a pair (arc, succ[arc]) is either separated
    by a crossing (the arc is an in-slot there) or by a plain joint, which
    `to_diagram` contracts away.  Crossings are kept in semantic form
    [u_in, u_out, o_in, o_out, sign].
    """

    def __init__(self):
        self._next = 1
        self.comp: dict[int, object] = {}
        self.succ: dict[int, int] = {}
        self.flows: list[list[int]] = []

    def copy(self) -> "DiagramBuilder":
        b = DiagramBuilder()
        b._next = self._next
        b.comp = dict(self.comp)
        b.succ = dict(self.succ)
        b.flows = [list(f) for f in self.flows]
        return b

    @classmethod
    def from_diagram(cls, d: LinkDiagram) -> "DiagramBuilder":
        b = cls()
        b._next = max(d.component_of_strand) + 1
        b.comp = dict(d.component_of_strand)
        b.succ = {s: d.succ(s) for s in d.component_of_strand}
        for cr in d.crossings:
            b.flows.append([cr.under_in, cr.under_out, cr.over_in, cr.over_out, cr.sign])
        return b

    def new_arc(self, comp) -> int:
        a = self._next
        self._next += 1
        self.comp[a] = comp
        return a

    def in_slots(self) -> dict[int, tuple[int, int]]:
        """arc -> (flow index, 0 for under / 2 for over)."""
        out = {}
        for idx, f in enumerate(self.flows):
            out[f[0]] = (idx, 0)
            out[f[2]] = (idx, 2)
        return out

    def split_arc(self, arc: int) -> int:
        """Split an arc in two; returns the new second half."""
        new = self.new_arc(self.comp[arc])
        self.succ[new] = self.succ[arc]
        self.succ[arc] = new
        for f in self.flows:
            if f[0] == arc:
                f[0] = new
            if f[2] == arc:
                f[2] = new
        return new

    def add_crossing(self, u_in, u_out, o_in, o_out, sign):
        self.flows.append([u_in, u_out, o_in, o_out, sign])
        self.succ[u_in] = u_out
        self.succ[o_in] = o_out

    def insert_kink(self, arc: int, sign: int, loop_under: bool = True) -> int:
        """Reidemeister-1 kink on an arc; returns the loop arc."""
        loop = self.split_arc(arc)
        rest = self.split_arc(loop)
        if loop_under:
            self.add_crossing(arc, loop, loop, rest, sign)
        else:
            self.add_crossing(loop, rest, arc, loop, sign)
        return loop

    def delete_crossing(self, idx: int):
        """Remove a crossing without rerouting (R1/R2 pattern removal)."""
        del self.flows[idx]

    def switch_crossing(self, idx: int):
        u_in, u_out, o_in, o_out, s = self.flows[idx]
        self.flows[idx] = [o_in, o_out, u_in, u_out, -s]

    def smooth_crossing(self, idx: int):
        """Oriented smoothing: u_in joins o_out, o_in joins u_out."""
        u_in, u_out, o_in, o_out, _ = self.flows[idx]
        del self.flows[idx]
        self.succ[u_in] = o_out
        self.succ[o_in] = u_out

    def erase_components(self, comps: set):
        keep = [f for f in self.flows
                if self.comp[f[0]] not in comps and self.comp[f[2]] not in comps]
        self.flows = [f for f in keep]
        for a in [a for a, c in self.comp.items() if c in comps]:
            del self.comp[a]
            del self.succ[a]

    def cycles(self) -> list[list[int]]:
        seen = set()
        out = []
        for a in sorted(self.succ):
            if a in seen:
                continue
            cyc = []
            cur = a
            while cur not in seen:
                seen.add(cur)
                cyc.append(cur)
                cur = self.succ[cur]
                if cur not in self.succ:
                    raise DiagramError("broken arc chain at %r" % (cur,))
            if cur != a:
                raise DiagramError("arc successor map is not a union of cycles")
            out.append(cyc)
        return out

    def to_diagram(self, component_order=None, preserve_components=True,
                   check_planar=True) -> LinkDiagram:
        """Contract joints, relabel strands canonically and validate."""
        ins = self.in_slots()
        cycles = self.cycles()

        keyed = []
        for cyc in cycles:
            if preserve_components:
                ckeys = {self.comp[a] for a in cyc}
                if len(ckeys) != 1:
                    raise DiagramError("cycle mixes component keys %r" % (ckeys,))
                key = ckeys.pop()
            else:
                key = (min(self.comp[a] for a in cyc if self.comp[a] is not None), min(cyc))
            keyed.append((key, cyc))
        if component_order is not None:
            order = {k: i for i, k in enumerate(component_order)}
            keyed.sort(key=lambda kc: (order[kc[0]], min(kc[1])))
        else:
            keyed.sort(key=lambda kc: (kc[0], min(kc[1])))

        strand_start: dict[int, int] = {}
        strand_end: dict[int, int] = {}
        comp_of = {}
        label = 0
        for comp_idx, (_, cyc) in enumerate(keyed, start=1):
            crossing_arcs = [a for a in cyc if a in ins]
            if not crossing_arcs:
                label += 1
                comp_of[label] = comp_idx
                continue
            # strands begin right after an in-slot arc; align the first run
            # with the cycle start when possible so relabeling is stable
            n = len(cyc)
            start_pos = next(q for q in range(n) if cyc[(q - 1) % n] in ins)
            rotated = [cyc[(start_pos + i) % n] for i in range(n)]
            runs = []
            run = []
            for a in rotated:
                run.append(a)
                if a in ins:
                    runs.append(run)
                    run = []
            if run:
                raise DiagramError("arc cycle does not end at a crossing")
            for run in runs:
                label += 1
                comp_of[label] = comp_idx
                strand_start[run[0]] = label
                strand_end[run[-1]] = label

        tuples = []
        for u_in, u_out, o_in, o_out, s in self.flows:
            tuples.append(crossing_from_flow(
                strand_end[u_in], strand_start[u_out],
                strand_end[o_in], strand_start[o_out], s))
        return LinkDiagram(tuples, comp_of, check_planar=check_planar)


# -- diagram operations ---------------------------------------------------

def mirror(d: LinkDiagram) -> LinkDiagram:
    """Flip every crossing; reverses all crossing signs."""
    tuples = [Crossing(cr.a, cr.d, cr.c, cr.b, -cr.sign) for cr in d.crossings]
    return LinkDiagram(tuples, d.component_of_strand)


def reverse(d: LinkDiagram, i: int) -> LinkDiagram:
    """Reverse the orientation of component i."""
    if not 1 <= i <= d.m:
        raise DiagramError("no component %r" % (i,))
    b = DiagramBuilder.from_diagram(d)
    arcs = [a for a, c in b.comp.items() if c == i]
    new_succ = dict(b.succ)
    for a in arcs:
        new_succ[b.succ[a]] = a
    b.succ = new_succ
    for f in b.flows:
        cu = b.comp[f[0]]
        co = b.comp[f[2]]
        if cu == i:
            f[0], f[1] = f[1], f[0]
        if co == i:
            f[2], f[3] = f[3], f[2]
        if (cu == i) != (co == i):
            f[4] = -f[4]
    return b.to_diagram()


def disjoint_union(d1: LinkDiagram, d2: LinkDiagram) -> LinkDiagram:
    """Split union; components of d2 are relabeled after d1's."""
    off = max(d1.component_of_strand) if d1.component_of_strand else 0
    comp_of = dict(d1.component_of_strand)
    for s, c in d2.component_of_strand.items():
        comp_of[s + off] = c + d1.m
    tuples = list(d1.crossings)
    for cr in d2.crossings:
        tuples.append(Crossing(cr.a + off, cr.b + off, cr.c + off, cr.d + off, cr.sign))
    return LinkDiagram(tuples, comp_of)


def sublink(d: LinkDiagram, components: Iterable[int]) -> LinkDiagram:
    """Diagram of the sublink on the given components (relabeled 1..k in order)."""
    keep = sorted(set(components))
    for c in keep:
        if not 1 <= c <= d.m:
            raise DiagramError("no component %r" % (c,))
    if not keep:
        raise DiagramError("sublink needs at least one component")
    b = DiagramBuilder.from_diagram(d)
    drop = {c for c in range(1, d.m + 1) if c not in keep}
    b.erase_components(drop)
    relabel = {c: i + 1 for i, c in enumerate(keep)}
    b.comp = {a: relabel[c] for a, c in b.comp.items()}
    return b.to_diagram()


# -- PD JSON ingestion / serialization ------------------------------------

def parse_pd(text: str) -> LinkDiagram:
    """Parse the PD JSON document format."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise DiagramError("invalid JSON: %s" % e) from None
    if not isinstance(doc, dict):
        raise DiagramError("PD document must be a JSON object")
    for field in ("components", "crossings", "component_of_strand"):
        if field not in doc:
            raise DiagramError("PD document missing field %r" % field)
    crossings = doc["crossings"]
    if not isinstance(crossings, list) or not all(
            isinstance(c, list) and len(c) == 4 for c in crossings):
        raise DiagramError("field 'crossings' must be a list of 4-element lists")
    comp_raw = doc["component_of_strand"]
    if not isinstance(comp_raw, dict):
        raise DiagramError("field 'component_of_strand' must be an object")
    try:
        comp_of = {int(k): int(v) for k, v in comp_raw.items()}
    except (TypeError, ValueError):
        raise DiagramError("field 'component_of_strand' must map strand -> component") from None
    signs = doc.get("signs")
    d = LinkDiagram(crossings, comp_of, signs=signs)
    if d.m != int(doc["components"]):
        raise DiagramError("field 'components' (%r) disagrees with component map (%d)" %
                           (doc["components"], d.m))
    return d


def to_pd_json(d: LinkDiagram) -> str:
    doc = {
        "components": d.m,
        "crossings": [[cr.a, cr.b, cr.c, cr.d] for cr in d.crossings],
        "signs": [cr.sign for cr in d.crossings],
        "component_of_strand": {str(s): c for s, c in sorted(d.component_of_strand.items())},
    }
    return json.dumps(doc, sort_keys=True)
