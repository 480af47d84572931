"""Kernel backend selection.

The compiled extension is used when it imports; otherwise the pure-Python
kernels. :func:`use` switches explicitly (tests and the benchmark do).
"""

from . import _pykernels

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

_active = _compiled if _compiled is not None else _pykernels


def available() -> list:
    return [m.NAME for m in (_compiled, _pykernels) if m is not None]


def get():
    """The active kernel module."""
    return _active


def name() -> str:
    return _active.NAME


def use(backend: str):
    """Activate ``"compiled"`` or ``"python"``; returns the previous name."""
    global _active
    previous = _active.NAME
    if backend == "python":
        _active = _pykernels
    elif backend == "compiled":
        if _compiled is None:
            raise ImportError("compiled kernels are not built; run `pip install -e .`")
        _active = _compiled
    else:
        raise ValueError(f"unknown backend {backend!r}; expected 'compiled' or 'python'")
    return previous
