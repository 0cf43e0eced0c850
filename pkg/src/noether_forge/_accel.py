"""Backend selection for the numeric kernels.

Kernels ship twice: a numba ``@njit`` version and a pure-numpy version.
The numba path is used when numba imports cleanly and the environment
variable ``NOETHER_FORGE_NUMBA`` is not set to ``0``/``false``/``off``.
Tests and the benchmark flip backends at runtime with :func:`use_backend`.
"""
from __future__ import annotations

import contextlib
import os
import warnings

try:
    from numba import njit as _numba_njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False
    _numba_njit = None


def _env_wants_numba() -> bool:
    flag = os.environ.get("NOETHER_FORGE_NUMBA", "1").strip().lower()
    return flag not in {"0", "false", "off", "no"}


_state = {"backend": "numba" if (HAVE_NUMBA and _env_wants_numba()) else "numpy"}


def njit(*args, **kwargs):
    """``numba.njit`` when numba is importable, identity decorator otherwise."""
    if HAVE_NUMBA:
        return _numba_njit(*args, **kwargs)
    if len(args) == 1 and callable(args[0]) and not kwargs:
        return args[0]

    def deco(func):
        return func

    return deco


def backend() -> str:
    return _state["backend"]


def set_backend(name: str) -> None:
    if name not in {"numba", "numpy"}:
        raise ValueError(f"unknown backend {name!r}")
    if name == "numba" and not HAVE_NUMBA:
        warnings.warn("numba is not importable; staying on the numpy backend")
        name = "numpy"
    _state["backend"] = name


@contextlib.contextmanager
def use_backend(name: str):
    previous = backend()
    set_backend(name)
    try:
        yield
    finally:
        _state["backend"] = previous
