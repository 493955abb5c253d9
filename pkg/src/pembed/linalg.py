"""Exact linear algebra over the prime field Z/p.

Everything here works on numpy integer arrays reduced mod p and stays in
exact integer arithmetic throughout; no floating point anywhere.
"""

from __future__ import annotations

import numpy as np


def rref(mat: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form mod p, with the list of pivot columns.

    Returns a fresh array; zero rows are kept at the bottom.
    """
    r = np.array(mat, dtype=np.int64) % p
    rows, cols = r.shape
    pivots: list[int] = []
    lead = 0
    for col in range(cols):
        if lead >= rows:
            break
        piv = None
        for i in range(lead, rows):
            if r[i, col] % p:
                piv = i
                break
        if piv is None:
            continue
        if piv != lead:
            r[[lead, piv]] = r[[piv, lead]]
        inv = pow(int(r[lead, col]), p - 2, p)
        r[lead] = (r[lead] * inv) % p
        for i in range(rows):
            if i != lead and r[i, col]:
                r[i] = (r[i] - r[i, col] * r[lead]) % p
        pivots.append(col)
        lead += 1
    return r, pivots


def rank(mat: np.ndarray, p: int) -> int:
    return len(rref(mat, p)[1])


def nullspace(mat: np.ndarray, p: int) -> np.ndarray:
    """Basis of {x | mat @ x = 0 mod p}, one vector per row.

    The basis is in the standard free-column form: basis vector t has a 1 in
    the t-th free column and zeros in the other free columns, so it is
    canonical given the matrix.
    """
    r, pivots = rref(mat, p)
    cols = r.shape[1]
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for t, fc in enumerate(free):
        basis[t, fc] = 1
        for i, pc in enumerate(pivots):
            basis[t, pc] = (-r[i, fc]) % p
    return basis


def reduce_vector(vec: np.ndarray, r: np.ndarray, pivots: list[int], p: int) -> np.ndarray:
    """Canonical representative of vec modulo the row space of (r, pivots).

    Subtracts multiples of the RREF rows to zero out every pivot coordinate;
    two vectors are congruent mod the row space iff they reduce identically.
    """
    out = np.array(vec, dtype=np.int64) % p
    for i, pc in enumerate(pivots):
        if out[pc]:
            out = (out - out[pc] * r[i]) % p
    return out


def in_row_space(vec: np.ndarray, r: np.ndarray, pivots: list[int], p: int) -> bool:
    return not reduce_vector(vec, r, pivots, p).any()
