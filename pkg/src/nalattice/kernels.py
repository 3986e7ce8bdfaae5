"""Kernel selection: the compiled extension when importable, else pure Python.

Set ``NALATTICE_BACKEND=python`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _kernels_py as python_impl

try:
    if os.environ.get("NALATTICE_BACKEND", "").lower() == "python":
        raise ImportError("pure-Python backend requested")
    from . import _kernels as compiled_impl
except ImportError:
    compiled_impl = None

BACKEND = "cython" if compiled_impl is not None else "python"

# int64 headroom for the compiled valuation kernel (products go through __int128)
_COMPILED_MAX_MODULUS = 2**62


def valuation_counts(B, Z, p: int, N: int):
    mod = p**N
    B = [[int(x) % mod for x in row] for row in B]
    if compiled_impl is not None and mod < _COMPILED_MAX_MODULUS and getattr(Z, "dtype", None) != object:
        return compiled_impl.valuation_counts(B, Z, p, N)
    return python_impl.valuation_counts(B, Z, p, N)


def subgroup_elements(gens, modulus: int, d: int):
    if compiled_impl is not None:
        return compiled_impl.subgroup_elements(gens, modulus, d)
    return python_impl.subgroup_elements(gens, modulus, d)
