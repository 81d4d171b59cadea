"""Pure-Python mod-p matrix kernels.

Fallback twin of the compiled extension ``barmatch._gfcore``; both expose
``matmul`` and ``rref`` with identical signatures and bit-identical output.
Matrices are flat row-major lists of ints already reduced mod p.
"""

from __future__ import annotations

BACKEND = "pure"


def _inv_mod(a: int, p: int) -> int:
    # extended Euclid; a != 0 mod p, p prime
    t, new_t = 0, 1
    r, new_r = p, a % p
    while new_r:
        q = r // new_r
        t, new_t = new_t, t - q * new_t
        r, new_r = new_r, r - q * new_r
    return t % p


def matmul(m: int, k: int, n: int, a: list, b: list, p: int) -> list:
    """(m x k) @ (k x n) over GF(p), flat row-major."""
    out = [0] * (m * n)
    for i in range(m):
        ai = i * k
        oi = i * n
        for t in range(k):
            av = a[ai + t]
            if not av:
                continue
            bt = t * n
            for j in range(n):
                out[oi + j] = (out[oi + j] + av * b[bt + j]) % p
    return out


def rref(rows: int, cols: int, data: list, p: int) -> tuple[list, list]:
    """Reduced row echelon form over GF(p).

    Pivoting is deterministic: scan columns left to right, take the first
    row at or below the current pivot row with a nonzero entry.  Returns
    (flat echelon data, pivot column indices ascending).
    """
    a = list(data)
    pivots: list[int] = []
    prow = 0
    for col in range(cols):
        if prow >= rows:
            break
        sel = -1
        for r in range(prow, rows):
            if a[r * cols + col]:
                sel = r
                break
        if sel < 0:
            continue
        if sel != prow:
            rs, ss = prow * cols, sel * cols
            for j in range(cols):
                a[rs + j], a[ss + j] = a[ss + j], a[rs + j]
        inv = _inv_mod(a[prow * cols + col], p)
        if inv != 1:
            base = prow * cols
            for j in range(col, cols):
                a[base + j] = (a[base + j] * inv) % p
        base = prow * cols
        for r in range(rows):
            if r == prow:
                continue
            factor = a[r * cols + col]
            if not factor:
                continue
            rs = r * cols
            for j in range(col, cols):
                a[rs + j] = (a[rs + j] - factor * a[base + j]) % p
        pivots.append(col)
        prow += 1
    return a, pivots
