"""Kernel backend registry.

The compiled Cython core is preferred when built; otherwise the vectorized
numpy fallback is used. Both implement identical integer semantics, so every
result is bit-for-bit the same whichever backend is active.
"""

from . import _numpy

try:
    from . import _core
except ImportError:
    _core = None

active = _core if _core is not None else _numpy


def available_backends():
    """Mapping of backend name to kernel module, in preference order."""
    out = {}
    if _core is not None:
        out[_core.NAME] = _core
    out[_numpy.NAME] = _numpy
    return out


def backend_name():
    return active.NAME


def set_backend(name):
    """Select the active backend by name ('cython' or 'numpy')."""
    global active
    backends = available_backends()
    if name not in backends:
        raise ValueError(f"unknown backend {name!r}; available: {sorted(backends)}")
    active = backends[name]
