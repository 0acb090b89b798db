"""Runtime caps, overridable through the LOCTOOL_CAPS environment variable.

The variable holds comma separated ``key=value`` pairs, for example
``LOCTOOL_CAPS="group_order=256,morphisms=100000,depth=3"``.
"""
import os
from dataclasses import dataclass, replace


class CapExceeded(RuntimeError):
    """Raised when a computation would pass one of the configured caps."""


@dataclass(frozen=True)
class Caps:
    group_order: int = 512
    morphisms: int = 2_000_000
    depth: int = 4
    # word budget for the locality validator; depth is lowered to fit it
    words: int = 0


_KEYS = {"group_order", "morphisms", "depth", "words"}


def parse_caps(text, base=None):
    caps = base or Caps()
    if not text:
        return caps
    updates = {}
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        key, sep, value = item.partition("=")
        key = key.strip()
        if not sep or key not in _KEYS:
            raise ValueError(f"bad LOCTOOL_CAPS entry: {item!r}")
        n = int(value)
        if n < 0 or (n == 0 and key != "words"):
            raise ValueError(f"cap {key} must be positive")
        updates[key] = n
    return replace(caps, **updates)


_current = None


def caps():
    global _current
    if _current is None:
        _current = parse_caps(os.environ.get("LOCTOOL_CAPS", ""))
    return _current


def set_caps(new):
    """Install caps for the process; pass None to re-read the environment."""
    global _current
    _current = new
