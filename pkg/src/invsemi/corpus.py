"""Curated sequence specs with their declared limits.

Each entry is the JSON document accepted by ``SequenceSpec.from_json``
plus a ``limits`` map from metric name to a pb literal or one of
``NOT_CAUCHY``, ``UNREPRESENTABLE`` (Cauchy, but the limit shifts a
cofinite set) and ``UNCERTIFIED`` (opaque tail).
"""

from __future__ import annotations

import copy

from .pbij import parse_partial
from .sequences import SequenceSpec

NOT_CAUCHY = "not_cauchy"
UNREPRESENTABLE = "unrepresentable"
UNCERTIFIED = "uncertified"


def _seg(lo, hi, shift=0):
    return {"lo": lo if isinstance(lo, list) else [lo, 0],
            "hi": None if hi is None else (hi if isinstance(hi, list) else [hi, 0]),
            "shift": shift if isinstance(shift, list) else [shift, 0]}


def _schedule(*segs):
    return {"kind": "Schedule", "segments": list(segs)}


def _all(limit):
    return {"rho": limit, "rho_star": limit, "d": limit}


K = [0, 1]  # the index k itself

_ENTRIES = [
    {
        "name": "constant",
        "prefix": [],
        "tail": {"kind": "Constant", "value": "{0->3, 3->0}; id from 4 except {6}"},
        "limits": _all("{0->3, 3->0}; id from 4 except {6}"),
    },
    {
        "name": "initial_segment",
        "prefix": [],
        "tail": _schedule(_seg(0, K)),
        "limits": _all("{}; id from 0"),
    },
    {
        "name": "moving_image",
        "prefix": [],
        "tail": _schedule(_seg(0, 1, K)),
        "limits": {"rho": NOT_CAUCHY, "rho_star": "{}", "d": NOT_CAUCHY},
    },
    {
        "name": "moving_point",
        "prefix": [],
        "tail": _schedule(_seg(K, [1, 1], [0, -1])),
        "limits": {"rho": "{}", "rho_star": NOT_CAUCHY, "d": NOT_CAUCHY},
    },
    {
        "name": "punctured_identity",
        "prefix": [],
        "tail": _schedule(_seg(0, K), _seg([1, 1], None)),
        "limits": _all("{}; id from 0"),
    },
    {
        "name": "final_segment",
        "prefix": [],
        "tail": _schedule(_seg(K, None)),
        "limits": _all("{}"),
    },
    {
        "name": "escaping_step",
        "prefix": ["{0->0}; id from 1", "{}"],
        "tail": _schedule(_seg(K, [1, 1], 1)),
        "limits": _all("{}"),
    },
    {
        "name": "prefix_then_swap",
        "prefix": ["{0->1}", "{1->0}", "{}"],
        "tail": {"kind": "Constant", "value": "{0->1, 1->0}"},
        "limits": _all("{0->1, 1->0}"),
    },
    {
        "name": "closing_cycle",
        "prefix": [],
        "tail": _schedule(_seg(1, K), _seg(K, [1, 1], [0, -1])),
        "limits": {"rho": "{}; id from 0 except {0}", "rho_star": NOT_CAUCHY, "d": NOT_CAUCHY},
    },
    {
        "name": "opening_cycle",
        "prefix": [],
        "tail": _schedule(_seg(1, K), _seg(0, 1, K)),
        "limits": {"rho": NOT_CAUCHY, "rho_star": "{}; id from 0 except {0}", "d": NOT_CAUCHY},
    },
    {
        "name": "successor_window",
        "prefix": [],
        "tail": _schedule(_seg(0, K, 1)),
        "limits": _all(UNREPRESENTABLE),
    },
    {
        "name": "swap_with_growing_identity",
        "prefix": [],
        "tail": _schedule(_seg(0, 1, 1), _seg(1, 2, -1), _seg(2, [2, 1])),
        "limits": _all("{0->1, 1->0}; id from 2"),
    },
    {
        "name": "travelling_transposition",
        "prefix": [],
        "tail": _schedule(_seg(0, K), _seg(K, [1, 1], 1), _seg([1, 1], [2, 1], -1),
                          _seg([2, 1], None)),
        "limits": _all("{}; id from 0"),
    },
    {
        "name": "sliding_window",
        "prefix": [],
        "tail": _schedule(_seg(K, [0, 2])),
        "limits": _all("{}"),
    },
    {
        "name": "doubling_jump",
        "prefix": [],
        "tail": _schedule(_seg(K, [1, 1], K)),
        "limits": _all("{}"),
    },
    {
        "name": "opaque_moving_image",
        "prefix": [],
        "tail": {"kind": "Generator", "rule": "moving_image", "args": {"x": 0}, "horizon": 64},
        "limits": _all(UNCERTIFIED),
    },
]


def documents() -> list[dict]:
    """The corpus as JSON documents (``limits`` included)."""
    return copy.deepcopy(_ENTRIES)


def load() -> list[tuple[SequenceSpec, dict]]:
    """``(spec, declared limits)`` pairs."""
    return [(SequenceSpec.from_json(d), dict(d["limits"])) for d in _ENTRIES]


def by_name(name: str) -> tuple[SequenceSpec, dict]:
    for d in _ENTRIES:
        if d["name"] == name:
            return SequenceSpec.from_json(d), dict(d["limits"])
    raise KeyError(name)


def declared(limit: str):
    """A declared limit as a partial bijection, or the marker string."""
    if limit in (NOT_CAUCHY, UNREPRESENTABLE, UNCERTIFIED):
        return limit
    return parse_partial(limit)
