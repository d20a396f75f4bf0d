import os

DEFAULT_NODE_CAP = 10**6
DEFAULT_MAX_DEPTH = 8


def node_cap() -> int:
    """Global cap on interned nodes / enumerated terms; ``FALG_NODE_CAP`` overrides."""
    raw = os.environ.get("FALG_NODE_CAP")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return DEFAULT_NODE_CAP
