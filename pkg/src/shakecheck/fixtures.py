"""Bundled diagram corpus, addressable by name.

Most fixtures are braid closures; the two satellite fixtures are produced
by the constructors.  Setting SHAKECHECK_FIXTURES to a directory of
<name>.json PD documents overrides lookup by name.
"""

from __future__ import annotations

import os
from functools import lru_cache

from .braid import from_braid
from .diagram import DiagramError, LinkDiagram, parse_pd

FIXTURES_ENV = "SHAKECHECK_FIXTURES"

_BRAID_FIXTURES = {
    "unknot": ([], 1),
    "unlink2": ([], 2),
    "unlink3": ([], 3),
    "hopf+": ([1, 1], 2),
    "hopf-": ([-1, -1], 2),
    "trefoil_rh": ([1, 1, 1], 2),
    "trefoil_lh": ([-1, -1, -1], 2),
    "fig8": ([1, -2, 1, -2], 3),
    "square": ([1, 1, 1, -2, -2, -2], 3),
    "granny": ([1, 1, 1, 2, 2, 2], 3),
    "whitehead": ([1, -2, 1, -2, 1], 3),
    "borromean": ([1, -2, 1, -2, 1, -2], 3),
}


def _constructed():
    from .constructors import bing_double, whitehead_double_link
    return {
        "w_trefoil": lambda: whitehead_double_link(fixture("trefoil_rh")),
        "bd_trefoil": lambda: bing_double(fixture("trefoil_rh")),
    }


def fixture_names() -> list[str]:
    return sorted(list(_BRAID_FIXTURES) + list(_constructed()))


@lru_cache(maxsize=None)
def _builtin(name: str) -> LinkDiagram:
    if name in _BRAID_FIXTURES:
        word, strands = _BRAID_FIXTURES[name]
        return from_braid(word, strands)
    built = _constructed()
    if name in built:
        return built[name]()
    raise DiagramError("unknown fixture %r (known: %s)" % (name, ", ".join(fixture_names())))


def fixture(name: str) -> LinkDiagram:
    override = os.environ.get(FIXTURES_ENV)
    if override:
        path = os.path.join(override, name + ".json")
        if os.path.exists(path):
            with open(path, "r", encoding="utf-8") as fh:
                return parse_pd(fh.read())
    return _builtin(name)
