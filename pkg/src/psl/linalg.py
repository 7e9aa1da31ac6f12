"""Dense linear algebra over F_p on lists of ints.

Matrices are lists of rows. Everything here is tiny (dimension <= ~40), so
plain Gaussian elimination is the right tool.
"""

from __future__ import annotations

from typing import Sequence

Vector = list[int]


def reduce_mod(v: Sequence[int], p: int) -> Vector:
    return [x % p for x in v]


def echelon(rows: Sequence[Sequence[int]], p: int) -> tuple[list[Vector], list[int]]:
    """Reduced row echelon form. Returns (nonzero rows, pivot columns)."""
    work = [reduce_mod(r, p) for r in rows]
    if not work:
        return [], []
    ncols = len(work[0])
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(work)) if work[i][col]), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        inv = pow(work[r][col], -1, p)
        work[r] = [(x * inv) % p for x in work[r]]
        for i in range(len(work)):
            if i != r and work[i][col]:
                c = work[i][col]
                work[i] = [(x - c * y) % p for x, y in zip(work[i], work[r])]
        pivots.append(col)
        r += 1
        if r == len(work):
            break
    return work[:r], pivots


def rank(rows: Sequence[Sequence[int]], p: int) -> int:
    return len(echelon(rows, p)[0])


def nullspace(rows: Sequence[Sequence[int]], ncols: int, p: int) -> list[Vector]:
    """Basis of {x : rows . x = 0}."""
    red, pivots = echelon(rows, p) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        x = [0] * ncols
        x[fc] = 1
        for row, pc in zip(red, pivots):
            x[pc] = (-row[fc]) % p
        basis.append(x)
    return basis


def in_span(v: Sequence[int], rows: Sequence[Sequence[int]], p: int) -> bool:
    if not any(x % p for x in v):
        return True
    return rank(list(rows) + [list(v)], p) == rank(rows, p)


def solve_combination(rows: Sequence[Sequence[int]], target: Sequence[int], p: int) -> Vector | None:
    """Coefficients c with sum_i c_i rows[i] == target, or None."""
    n = len(rows)
    if n == 0:
        return [] if not any(x % p for x in target) else None
    m = len(target)
    # columns of the system are the given rows
    aug = [[rows[i][j] % p for i in range(n)] + [target[j] % p] for j in range(m)]
    red, pivots = echelon(aug, p)
    if n in pivots:
        return None
    sol = [0] * n
    for row, pc in zip(red, pivots):
        sol[pc] = row[n]
    return sol


def mat_vec(mat: Sequence[Sequence[int]], v: Sequence[int], p: int) -> Vector:
    return [sum(a * b for a, b in zip(row, v)) % p for row in mat]


def bilinear(u: Sequence[int], mat: Sequence[Sequence[int]], v: Sequence[int], p: int) -> int:
    return sum(u[i] * mat[i][j] * v[j] for i in range(len(u)) if u[i] for j in range(len(v)) if v[j]) % p
