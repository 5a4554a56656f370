"""Kernel backend selection.

The computational kernels live in ``besselsum._kernels``, a Cython
pure-Python-mode source.  When the package was built with Cython, a
compiled extension shadows the ``.py`` file and import picks it up
automatically; otherwise the same source runs as plain Python.

The environment variable ``BESSELSUM_BACKEND`` overrides the choice:

* ``auto`` (default): compiled when available, plain Python otherwise;
* ``pure``: force the plain-Python source even if the extension exists;
* ``compiled``: require the extension, fail loudly when missing.

``load_pure_kernels`` always returns the interpreted module (the
benchmark harness uses it to compare both backends in one process).
"""

from __future__ import annotations

import importlib
import importlib.util
import os
import sys
from pathlib import Path
from types import ModuleType

_ENV_VAR = "BESSELSUM_BACKEND"
_PURE_NAME = "besselsum._kernels_pure"


def _ensure_cython_importable() -> None:
    # The kernels source begins with "import cython"; substitute the tiny
    # shim when the real package is not installed.
    try:
        import cython  # noqa: F401
    except ImportError:  # pragma: no cover
        from . import _cyshim

        sys.modules["cython"] = _cyshim


def load_pure_kernels() -> ModuleType:
    """Load the plain-Python kernels regardless of any compiled extension."""
    if _PURE_NAME in sys.modules:
        return sys.modules[_PURE_NAME]
    _ensure_cython_importable()
    src = Path(__file__).with_name("_kernels.py")
    spec = importlib.util.spec_from_file_location(_PURE_NAME, src)
    if spec is None or spec.loader is None:  # pragma: no cover
        raise ImportError(f"cannot load pure kernels from {src}")
    mod = importlib.util.module_from_spec(spec)
    sys.modules[_PURE_NAME] = mod
    spec.loader.exec_module(mod)
    return mod


def _select() -> ModuleType:
    choice = os.environ.get(_ENV_VAR, "auto").strip().lower()
    if choice not in ("auto", "pure", "compiled"):
        raise ValueError(
            f"{_ENV_VAR} must be 'auto', 'pure' or 'compiled', got {choice!r}"
        )
    if choice == "pure":
        return load_pure_kernels()
    _ensure_cython_importable()
    mod = importlib.import_module("besselsum._kernels")
    if choice == "compiled" and mod.KERNEL_BACKEND != "compiled":
        raise ImportError(
            f"{_ENV_VAR}=compiled but the besselsum._kernels extension is not built"
        )
    return mod


kernels: ModuleType = _select()
BACKEND: str = kernels.KERNEL_BACKEND
