"""Pure-Python fallback for the kernels in ``_compiled.pyx``.

Both modules expose the same functions with the same semantics and must
stay byte-for-byte compatible in their results.
"""
import numpy as np


def rref_inplace(A, p):
    """Reduced row echelon form of an int64 matrix over Z/p, in place.

    Returns the list of pivot columns.  Entries must already lie in [0, p).
    """
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        inv = pow(int(A[r, c]), -1, p)
        if inv != 1:
            A[r] = A[r] * inv % p
        col = A[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            A[hit] = (A[hit] - np.outer(col[hit], A[r])) % p
        pivots.append(c)
        r += 1
    return pivots


def reduce_vector(terms, basis, key, p):
    """Fully reduce a sparse module vector against a Groebner basis.

    ``terms`` maps (pos, exps) -> coeff and is consumed.  ``basis`` maps a
    position to a list of (lead_exps, tail) with ``tail`` the list
    of non-leading (pos, exps, coeff) of a monic element.  ``key`` is the
    term-order key.  Returns the remainder as a dict.
    """
    rem = {}
    while terms:
        lt = max(terms, key=key)
        c = terms.pop(lt)
        pos, e = lt
        for lead, tail in basis.get(pos, ()):
            for li, ei in zip(lead, e):
                if (li > 0 and ei < li) or (li < 0 and ei > li):
                    break
            else:
                shift = tuple(a - b for a, b in zip(e, lead))
                for tpos, texp, tc in tail:
                    k = (tpos, tuple(a + b for a, b in zip(texp, shift)))
                    v = (terms.get(k, 0) - c * tc) % p
                    if v:
                        terms[k] = v
                    else:
                        terms.pop(k, None)
                break
        else:
            rem[lt] = c
    return rem
