"""Pure-Python kernels; semantics identical to the compiled ``_kernels`` module."""

from __future__ import annotations

from collections import deque

import numpy as np


def valuation_counts(B, Z, p: int, N: int) -> np.ndarray:
    """t[s, i] = min(N, val_p((B Z[s])_i mod p^N)) for every sample s and row i."""
    mod = p**N
    rows = [[int(x) % mod for x in r] for r in B]
    n = len(Z)
    d = len(rows)
    out = np.empty((n, d), dtype=np.int64)
    for s in range(n):
        z = [int(x) for x in Z[s]]
        for i, r in enumerate(rows):
            acc = sum(a * b for a, b in zip(r, z)) % mod
            t = 0
            if acc == 0:
                t = N
            else:
                while acc % p == 0:
                    acc //= p
                    t += 1
            out[s, i] = t
    return out


def subgroup_elements(gens, modulus: int, d: int) -> np.ndarray:
    """Codes sum_i x_i * modulus**i of the subgroup of (Z/modulus)^d spanned by ``gens``."""
    gens = [tuple(int(x) % modulus for x in g) for g in gens]
    start = (0,) * d
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = tuple((a + b) % modulus for a, b in zip(x, g))
            if y not in seen:
                seen.add(y)
                queue.append(y)
    codes = []
    for x in seen:
        c = 0
        for i in reversed(range(d)):
            c = c * modulus + x[i]
        codes.append(c)
    return np.sort(np.array(codes, dtype=np.int64))
