"""Diagram constructors: parallel copies, shakings, and satellite doubles.

Parallel copies are blackboard-framed; components that get cabled are
first writhe-normalized with compensating kinks so every copy is a
0-framed parallel (pairwise linking number zero between copies of the
same component).  The Whitehead and Bing doubles are satellites: a fixed
hand-built pattern is spliced onto a cable of the companion.
"""

from __future__ import annotations

from .diagram import (DiagramBuilder, DiagramError, LinkDiagram, linking_number,
                      reverse, writhe)
from .obstruct import ShakingSpec


def _writhe_normalized(d: LinkDiagram, comps) -> LinkDiagram:
    """Insert compensating kinks so each listed component has writhe 0."""
    b = DiagramBuilder.from_diagram(d)
    for c in comps:
        w = writhe(d, c)
        if not w:
            continue
        arc = min(a for a, cc in b.comp.items() if cc == c)
        for _ in range(abs(w)):
            arc = b.insert_kink(arc, -1 if w > 0 else 1)
    return b.to_diagram()


def _cable_builder(d: LinkDiagram, counts: dict) -> tuple[DiagramBuilder, dict]:
    """Blackboard cable: counts[j] parallel copies of each component j.

    Returns the builder and the arc map {(strand, copy): arc}.  New
    component keys are (source component, copy index).
    """
    b = DiagramBuilder()
    arcs = {}
    for s in sorted(d.component_of_strand):
        j = d.component_of_strand[s]
        for k in range(1, counts[j] + 1):
            arcs[(s, k)] = b.new_arc((j, k))
    for a in list(b.comp):
        b.succ[a] = a  # placeholder; crossings and closures rewire below
    for s in sorted(d.component_of_strand):
        j = d.component_of_strand[s]
        hit = d.head_crossing(s)
        if hit is None:  # marker strand: each copy is a free circle
            for k in range(1, counts[j] + 1):
                b.succ[arcs[(s, k)]] = arcs[(s, k)]
    for cr in d.crossings:
        cu = counts[d.component_of_strand[cr.under_in]]
        co = counts[d.component_of_strand[cr.over_in]]
        under_chain = {}
        for k in range(1, cu + 1):
            chain = [arcs[(cr.under_in, k)]]
            for _ in range(co - 1):
                chain.append(b.new_arc(b.comp[chain[0]]))
            chain.append(arcs[(cr.under_out, k)])
            under_chain[k] = chain
        over_chain = {}
        for l in range(1, co + 1):
            chain = [arcs[(cr.over_in, l)]]
            for _ in range(cu - 1):
                chain.append(b.new_arc(b.comp[chain[0]]))
            chain.append(arcs[(cr.over_out, l)])
            over_chain[l] = chain
        sigma = list(range(1, cu + 1))   # under copies along the over passage
        tau = list(range(1, co + 1))     # over copies along the under passage
        if cr.sign > 0:
            tau.reverse()
        else:
            sigma.reverse()
        upos = {k: i for i, k in enumerate(sigma)}
        opos = {l: i for i, l in enumerate(tau)}
        for k in range(1, cu + 1):
            for l in range(1, co + 1):
                t = opos[l]
                u = upos[k]
                b.add_crossing(under_chain[k][t], under_chain[k][t + 1],
                               over_chain[l][u], over_chain[l][u + 1], cr.sign)
    return b, arcs


def parallel_copies(d: LinkDiagram, counts, zero_framed: bool = True) -> LinkDiagram:
    """counts[j] parallel copies of each component; 0-framed by default.

    Output components are ordered (source component, copy index).
    """
    counts = {j: int(counts[j - 1]) if not isinstance(counts, dict) else int(counts[j])
              for j in range(1, d.m + 1)}
    if any(c < 1 for c in counts.values()):
        raise DiagramError("copy counts must be >= 1")
    base = _writhe_normalized(d, [j for j, c in counts.items() if c > 1]) if zero_framed else d
    b, _ = _cable_builder(base, counts)
    order = [(j, k) for j in range(1, d.m + 1) for k in range(1, counts[j] + 1)]
    return b.to_diagram(component_order=order)


def _relabel_components(d: LinkDiagram, new_index: dict) -> LinkDiagram:
    """Permute component labels; new_index maps old -> new (1-based)."""
    b = DiagramBuilder.from_diagram(d)
    b.comp = {a: new_index[c] for a, c in b.comp.items()}
    return b.to_diagram()


def shaking(d: LinkDiagram, spec: ShakingSpec) -> LinkDiagram:
    """Replace each component by 0-framed parallel copies per the spec matrix.

    Copies of source j: the diagonal block keeps 2n_jj+1 copies for group j
    (n_jj+1 aligned, n_jj reversed); every other group i takes n_ij copies
    of each orientation.  Output components are grouped by the surface
    index i and labeled group by group.
    """
    if spec.m != d.m:
        raise DiagramError("shaking matrix is %dx%d but the link has %d components"
                           % (spec.m, spec.m, d.m))
    counts = {j: spec.copies_of(j) for j in range(1, d.m + 1)}
    out = parallel_copies(d, counts)

    # copy index -> (group, aligned?) bookkeeping, then relabel and reverse
    component_index = {}  # running (source j, copy k) -> component in `out`
    pos = 0
    for j in range(1, d.m + 1):
        for k in range(1, counts[j] + 1):
            pos += 1
            component_index[(j, k)] = pos

    assignment = {}  # (j, k) -> (group, aligned)
    for j in range(1, d.m + 1):
        nxt = 1
        njj = spec.matrix[j - 1][j - 1]
        for _ in range(njj + 1):
            assignment[(j, nxt)] = (j, True)
            nxt += 1
        for _ in range(njj):
            assignment[(j, nxt)] = (j, False)
            nxt += 1
        for i in range(1, d.m + 1):
            if i == j:
                continue
            nij = spec.matrix[i - 1][j - 1]
            for _ in range(nij):
                assignment[(j, nxt)] = (i, True)
                nxt += 1
            for _ in range(nij):
                assignment[(j, nxt)] = (i, False)
                nxt += 1
        if nxt != counts[j] + 1:
            raise AssertionError("copy assignment bookkeeping is off")

    for key, (_, aligned) in sorted(assignment.items()):
        if not aligned:
            out = reverse(out, component_index[key])

    ordered = sorted(assignment, key=lambda key: (assignment[key][0],) + key)
    relabel = {component_index[key]: i + 1 for i, key in enumerate(ordered)}
    return _relabel_components(out, relabel)


# -- satellite plumbing ----------------------------------------------------

def _cable_for_splice(k: LinkDiagram, width: int, reversed_copies) -> LinkDiagram:
    base = _writhe_normalized(k, [1])
    b, _ = _cable_builder(base, {1: width})
    cable = b.to_diagram(component_order=[(1, r) for r in range(1, width + 1)])
    for r in reversed_copies:
        cable = reverse(cable, r)
    return cable


def _splice(pattern: DiagramBuilder, cuts, comp_map, k: LinkDiagram,
            reversed_copies) -> LinkDiagram:
    """Wire a cable of k into the open legs of a pattern builder.

    cuts[r-1] = (upstream arc, downstream arc, component key) for copy r;
    the copy is inserted between them.  Tries both leg orders, since the
    cable's transverse orientation is fixed by planarity.
    """
    width = len(cuts)
    cable = _cable_for_splice(k, width, reversed_copies)
    for legs in (cuts, _flipped_cuts(cuts)):
        b = pattern.copy()
        offset = b._next
        for s, c in cable.component_of_strand.items():
            b.comp[s + offset] = None
        b._next = offset + max(cable.component_of_strand) + 1
        for s in cable.component_of_strand:
            b.succ[s + offset] = cable.succ(s) + offset
        for cr in cable.crossings:
            b.flows.append([cr.under_in + offset, cr.under_out + offset,
                            cr.over_in + offset, cr.over_out + offset, cr.sign])
        for r, (up, down, comp_key) in enumerate(legs, start=1):
            strands = [s for s, c in cable.component_of_strand.items() if c == r]
            for s in strands:
                b.comp[s + offset] = comp_key
            # open the copy mid-arc: the strand enters at the split point,
            # walks the whole copy, and leaves from the other half
            first = min(strands) + offset
            head_half = b.split_arc(first)
            b.succ[up] = head_half
            b.succ[first] = down
        try:
            return b.to_diagram(component_order=comp_map)
        except DiagramError:
            continue
    raise AssertionError("pattern splice produced no planar diagram")


def _flipped_cuts(cuts):
    """Reassign copies to legs in reversed transverse order."""
    legs = list(cuts)
    return [legs[len(legs) - 1 - i] for i in range(len(legs))]


def infect(d: LinkDiagram, eta: int, k: LinkDiagram, keep_eta: bool = True) -> LinkDiagram:
    """Tie k into the strands of d piercing the disk of an unknotted component.

    eta must be drawn embedded (no self-crossings); the strands passing
    under it pierce its visible spanning disk, and each gets re-routed
    through a 0-framed parallel cable of k.  With keep_eta the curve stays
    in the output (it becomes a meridian circle of the new companion
    torus); otherwise it is erased.  The output is the satellite of k with
    pattern (d minus eta) in eta's complement, so it does not depend on the
    disk the diagram happens to exhibit.
    """
    if not 1 <= eta <= d.m:
        raise DiagramError("no component %r" % (eta,))
    if k.m != 1:
        raise DiagramError("companion must be a knot diagram, got %d components" % k.m)
    for cr in d.crossings:
        if (d.component_of_strand[cr.under_in] == eta
                and d.component_of_strand[cr.over_in] == eta):
            raise DiagramError("component %d has self-crossings; no visible disk" % eta)

    piercings = []  # (crossing index, sign), in order along eta
    for s in d.component_strands(eta):
        hit = d.head_crossing(s)
        if hit is None:
            continue
        idx, role = hit
        if role == "over":
            piercings.append((idx, d.crossings[idx].sign))

    b = DiagramBuilder.from_diagram(d)
    cuts = []
    for idx, sign in piercings:
        u_in = d.crossings[idx].under_in
        comp = d.component_of_strand[u_in]
        second = b.split_arc(u_in)
        cuts.append((u_in, second, comp))
    if not keep_eta:
        b.erase_components({eta})

    relabel = {}
    nxt = 1
    for c in range(1, d.m + 1):
        if c == eta and not keep_eta:
            continue
        relabel[c] = nxt
        nxt += 1
    b.comp = {a: relabel[c] for a, c in b.comp.items()}
    cuts = [(up, down, relabel[c]) for up, down, c in cuts]
    order = list(range(1, nxt))

    if not cuts:
        return b.to_diagram(component_order=order)
    reversed_copies = [r for r, (_, s) in enumerate(piercings, start=1)
                       if s != piercings[0][1]]
    return _splice(b, cuts, order, k, reversed_copies)


def whitehead_double_link(k: LinkDiagram) -> LinkDiagram:
    """Untwisted Whitehead double of a knot plus a meridian ring component.

    Component 1 is the double (0-framed clasped satellite of k), component
    2 an unknotted circle around the doubled strands; their linking number
    vanishes.
    """
    if k.m != 1:
        raise DiagramError("whitehead_double_link needs a knot diagram, got %d components" % k.m)
    from .fixtures import fixture
    base = fixture("whitehead")
    out = infect(base, 1, k, keep_eta=True)
    out = _relabel_components(out, {1: 2, 2: 1})  # the double first, then the ring
    if linking_number(out, 1, 2) != 0:
        raise AssertionError("meridian component links the double")
    return out


def bing_double(k: LinkDiagram) -> LinkDiagram:
    """Bing double: two 0-framed zero-winding satellites clasping each other.

    Realized by re-embedding two of the three Borromean rings along k
    (their complement torus pattern is the doubling pattern).
    """
    if k.m != 1:
        raise DiagramError("bing_double needs a knot diagram, got %d components" % k.m)
    from .fixtures import fixture
    base = fixture("borromean")
    out = infect(base, 3, k, keep_eta=False)
    if linking_number(out, 1, 2) != 0:
        raise AssertionError("Bing double components have nonzero linking number")
    return out
