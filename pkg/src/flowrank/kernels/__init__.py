"""Kernel backend selection.

The compiled Cython extension is preferred; the NumPy fallback is used when
the extension is unavailable or when ``FLOWRANK_FORCE_FALLBACK`` is set in
the environment. Both expose the same four functions over the half-edge CSR
arrays built by :meth:`flowrank.model.EcosystemGraph.csr`.
"""

import os

from . import fallback

COMPILED = False
_impl = fallback
if not os.environ.get("FLOWRANK_FORCE_FALLBACK"):
    try:
        from . import _speedups as _impl  # type: ignore[no-redef]

        COMPILED = True
    except ImportError:
        pass

bfs_tiers = _impl.bfs_tiers
mark_uniform = _impl.mark_uniform
flow_push = _impl.flow_push
flow_push_weighted = _impl.flow_push_weighted

backend_name = "compiled" if COMPILED else "fallback"


def backends() -> dict:
    """Name -> module map of importable backends (used by the benchmark)."""
    available = {"fallback": fallback}
    try:
        from . import _speedups

        available["compiled"] = _speedups
    except ImportError:
        pass
    return available
