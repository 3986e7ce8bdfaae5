"""Dense exact matrices as tuples of row tuples.

Entries are field elements supporting ``+ - * /`` and exact ``== 0``
(``Fraction`` or :class:`~nalattice.field.Puiseux`).
"""

from __future__ import annotations

from typing import Sequence

Matrix = tuple  # tuple[tuple[element, ...], ...]


def freeze(rows: Sequence[Sequence]) -> Matrix:
    return tuple(tuple(r) for r in rows)


def shape(A: Matrix) -> tuple[int, int]:
    return len(A), (len(A[0]) if A else 0)


def identity(n: int, one, zero) -> Matrix:
    return tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))


def diagonal(entries: Sequence, zero) -> Matrix:
    n = len(entries)
    return tuple(tuple(entries[i] if i == j else zero for j in range(n)) for i in range(n))


def transpose(A: Matrix) -> Matrix:
    return tuple(zip(*A))


def matmul(A: Matrix, B: Matrix) -> Matrix:
    Bt = transpose(B)
    out = []
    for row in A:
        new = []
        for col in Bt:
            acc = 0
            for x, y in zip(row, col):
                if x != 0 and y != 0:
                    acc = x * y + acc
            new.append(acc)
        out.append(tuple(new))
    return tuple(out)


def matvec(A: Matrix, x: Sequence) -> tuple:
    out = []
    for row in A:
        acc = 0
        for a, b in zip(row, x):
            if a != 0 and b != 0:
                acc = a * b + acc
        out.append(acc)
    return tuple(out)


def submatrix(A: Matrix, rows: Sequence[int], cols: Sequence[int]) -> Matrix:
    return tuple(tuple(A[i][j] for j in cols) for i in rows)


def det(A: Matrix):
    """Determinant by Gaussian elimination with exact division."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(r) for r in A]
    sign = 1
    result = None
    for k in range(n):
        piv = next((r for r in range(k, n) if M[r][k] != 0), None)
        if piv is None:
            return 0 * M[0][0]
        if piv != k:
            M[k], M[piv] = M[piv], M[k]
            sign = -sign
        pk = M[k][k]
        result = pk if result is None else result * pk
        for r in range(k + 1, n):
            if M[r][k] != 0:
                f = M[r][k] / pk
                row_k = M[k]
                row_r = M[r]
                for c in range(k + 1, n):
                    if row_k[c] != 0:
                        row_r[c] = row_r[c] - f * row_k[c]
                row_r[k] = 0 * pk
    return result if sign == 1 else -result


def inverse(A: Matrix) -> Matrix:
    """Gauss-Jordan inverse; raises ``ZeroDivisionError`` if singular."""
    n = len(A)
    one = A[0][0] ** 0 if n else 1
    zero = one - one
    M = [list(r) + [one if i == j else zero for j in range(n)] for i, r in enumerate(A)]
    for k in range(n):
        piv = next((r for r in range(k, n) if M[r][k] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        M[k], M[piv] = M[piv], M[k]
        pk = M[k][k]
        M[k] = [x / pk if x != 0 else x for x in M[k]]
        for r in range(n):
            if r != k and M[r][k] != 0:
                f = M[r][k]
                M[r] = [x - f * y if y != 0 else x for x, y in zip(M[r], M[k])]
    return tuple(tuple(r[n:]) for r in M)


def solve(A: Matrix, b: Sequence) -> tuple:
    """Solve ``A x = b`` for square invertible ``A``."""
    n = len(A)
    M = [list(r) + [b[i]] for i, r in enumerate(A)]
    for k in range(n):
        piv = next((r for r in range(k, n) if M[r][k] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        M[k], M[piv] = M[piv], M[k]
        pk = M[k][k]
        M[k] = [x / pk for x in M[k]]
        for r in range(n):
            if r != k and M[r][k] != 0:
                f = M[r][k]
                M[r] = [x - f * y for x, y in zip(M[r], M[k])]
    return tuple(r[n] for r in M)
