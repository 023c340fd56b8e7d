"""Braid words and their trace closures as link diagrams.

A braid word is a list of nonzero integers; letter +i (resp. -i) is a
positive (negative) crossing of the strands in positions i, i+1.  The
closure joins position i's bottom back to its top, so the component count
equals the number of cycles of the induced permutation.
"""

from __future__ import annotations

import json

from .diagram import DiagramBuilder, DiagramError, LinkDiagram


def braid_permutation(word, strands) -> list[int]:
    """Image of each position (1-based) under the braid, bottom to top."""
    perm = list(range(strands + 1))
    for letter in word:
        i = abs(letter)
        perm[i], perm[i + 1] = perm[i + 1], perm[i]
    return perm[1:]


def from_braid(word, strands) -> LinkDiagram:
    """Diagram of the trace closure of a braid word."""
    if strands < 1:
        raise DiagramError("empty strand count")
    word = [int(x) for x in word]
    for letter in word:
        if letter == 0 or abs(letter) >= strands:
            raise DiagramError("braid letter %r out of range for %d strands" % (letter, strands))

    b = DiagramBuilder()
    first = {i: b.new_arc(None) for i in range(1, strands + 1)}
    cur = dict(first)
    for letter in word:
        i = abs(letter)
        left = b.new_arc(None)
        right = b.new_arc(None)
        if letter > 0:
            b.add_crossing(cur[i + 1], left, cur[i], right, 1)
        else:
            b.add_crossing(cur[i], right, cur[i + 1], left, -1)
        cur[i], cur[i + 1] = left, right
    for i in range(1, strands + 1):
        b.succ[cur[i]] = first[i]

    # name components by the smallest braid position in each strand cycle
    cycles = b.cycles()
    keyed = []
    for cyc in cycles:
        positions = [i for i in range(1, strands + 1) if first[i] in cyc]
        keyed.append((min(positions), cyc))
    keyed.sort()
    for comp_idx, (_, cyc) in enumerate(keyed, start=1):
        for a in cyc:
            b.comp[a] = comp_idx
    return b.to_diagram()


def parse_braid(text: str) -> LinkDiagram:
    """Parse the braid JSON document format."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise DiagramError("invalid JSON: %s" % e) from None
    if not isinstance(doc, dict) or "strands" not in doc or "word" not in doc:
        raise DiagramError("braid document needs fields 'strands' and 'word'")
    return from_braid(doc["word"], int(doc["strands"]))
