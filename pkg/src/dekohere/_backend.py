"""Backend selection: compiled extension if importable, numpy fallback otherwise.

Set DEKOHERE_PURE_PYTHON=1 to force the fallback (used by the benchmark and
the backend-equivalence tests).
"""

import os

from . import _core_py

try:
    from . import _core  # compiled extension, optional
except ImportError:
    _core = None

_FORCED_PYTHON = os.environ.get("DEKOHERE_PURE_PYTHON", "") == "1"
_ACTIVE = _core_py if (_core is None or _FORCED_PYTHON) else _core


def impl():
    """The active backend module."""
    return _ACTIVE


def backend_name() -> str:
    return _ACTIVE.BACKEND_NAME


def compiled_available() -> bool:
    return _core is not None


def python_impl():
    return _core_py


def compiled_impl():
    return _core
