# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled arithmetic kernel.

Drop-in twin of ``py_kernel``: same functions, same data layout, same
raised errors. Coefficients are arbitrary-precision Python ints, so the
speedup comes from compiled dict iteration, tuple handling and call
elimination, not from machine arithmetic.
"""

from math import gcd as _gcd


# ---------------------------------------------------------------------------
# rationals
# ---------------------------------------------------------------------------


cpdef tuple rat_norm(p, q):
    if q == 0:
        raise ZeroDivisionError("rational with zero denominator")
    if p == 0:
        return (0, 1)
    if q < 0:
        p = -p
        q = -q
    g = _gcd(p, q)
    if g > 1:
        return (p // g, q // g)
    return (p, q)


cpdef tuple rat_add(tuple a, tuple b):
    return rat_norm(a[0] * b[1] + b[0] * a[1], a[1] * b[1])


cpdef tuple rat_sub(tuple a, tuple b):
    return rat_norm(a[0] * b[1] - b[0] * a[1], a[1] * b[1])


cpdef tuple rat_mul(tuple a, tuple b):
    return rat_norm(a[0] * b[0], a[1] * b[1])


cpdef tuple rat_div(tuple a, tuple b):
    if b[0] == 0:
        raise ZeroDivisionError("rational division by zero")
    return rat_norm(a[0] * b[1], a[1] * b[0])


cpdef tuple rat_neg(tuple a):
    return (-a[0], a[1])


cpdef tuple rat_inv(tuple a):
    if a[0] == 0:
        raise ZeroDivisionError("inverse of zero")
    if a[0] < 0:
        return (-a[1], -a[0])
    return (a[1], a[0])


cpdef tuple rat_pow(tuple a, k):
    if k >= 0:
        return (a[0] ** k, a[1] ** k)
    return rat_inv((a[0] ** (-k), a[1] ** (-k)))


# ---------------------------------------------------------------------------
# sparse polynomials
# ---------------------------------------------------------------------------


cpdef dict poly_add(dict f, dict g):
    cdef dict out = dict(f)
    cdef tuple c, cur, s
    for d, c in g.items():
        cur = out.get(d)
        if cur is None:
            out[d] = c
        else:
            s = rat_add(cur, c)
            if s[0] == 0:
                del out[d]
            else:
                out[d] = s
    return out


cpdef dict poly_neg(dict f):
    cdef dict out = {}
    cdef tuple c
    for d, c in f.items():
        out[d] = (-c[0], c[1])
    return out


cpdef dict poly_sub(dict f, dict g):
    return poly_add(f, poly_neg(g))


cpdef dict poly_mul(dict f, dict g):
    cdef dict acc = {}
    cdef dict out = {}
    cdef tuple c1, c2, cur, c
    for d1, c1 in f.items():
        p1 = c1[0]
        q1 = c1[1]
        for d2, c2 in g.items():
            d = d1 + d2
            p = p1 * c2[0]
            q = q1 * c2[1]
            cur = acc.get(d)
            if cur is None:
                acc[d] = (p, q)
            else:
                acc[d] = (cur[0] * q + p * cur[1], cur[1] * q)
    for d, c in acc.items():
        if c[0] != 0:
            out[d] = rat_norm(c[0], c[1])
    return out


cpdef dict poly_scale(dict f, tuple c):
    cdef dict out = {}
    cdef tuple cd
    p = c[0]
    q = c[1]
    for d, cd in f.items():
        out[d] = rat_norm(cd[0] * p, cd[1] * q)
    return out


cpdef dict poly_shift(dict f, k):
    if k == 0:
        return f
    cdef dict out = {}
    cdef tuple c
    for d, c in f.items():
        out[d + k] = c
    return out


cpdef tuple poly_eval(dict f, tuple x):
    cdef tuple acc = (0, 1)
    cdef tuple c
    for d, c in f.items():
        acc = rat_add(acc, rat_mul(c, rat_pow(x, d)))
    return acc


# ---------------------------------------------------------------------------
# rational functions in canonical shifted form
# ---------------------------------------------------------------------------


cpdef rf_canon(dict num, dict den):
    if not den:
        raise ZeroDivisionError("zero denominator polynomial")
    if not num:
        return None
    cdef dict n, d
    cdef tuple c, c0, inv
    mn = min(num)
    md = min(den)
    shift = mn - md
    if mn:
        n = {}
        for e, c in num.items():
            n[e - mn] = c
    else:
        n = dict(num)
    if md:
        d = {}
        for e, c in den.items():
            d[e - md] = c
    else:
        d = dict(den)
    c0 = d[0]
    if c0 != (1, 1):
        inv = rat_inv(c0)
        n = poly_scale(n, inv)
        d = poly_scale(d, inv)
    return (shift, n, d)


cpdef rf_neg(a):
    if a is None:
        return None
    return (a[0], poly_neg(a[1]), a[2])


cpdef rf_add(a, b):
    if a is None:
        return b
    if b is None:
        return a
    k1 = a[0]
    k2 = b[0]
    cdef dict n1 = a[1]
    cdef dict d1 = a[2]
    cdef dict n2 = b[1]
    cdef dict d2 = b[2]
    k = k1 if k1 < k2 else k2
    cdef dict num = poly_add(
        poly_shift(poly_mul(n1, d2), k1 - k),
        poly_shift(poly_mul(n2, d1), k2 - k),
    )
    if not num:
        return None
    canon = rf_canon(num, poly_mul(d1, d2))
    return (canon[0] + k, canon[1], canon[2])


cpdef rf_sub(a, b):
    return rf_add(a, rf_neg(b))


cpdef rf_mul(a, b):
    if a is None or b is None:
        return None
    return (a[0] + b[0], poly_mul(a[1], b[1]), poly_mul(a[2], b[2]))


cpdef rf_inv(a):
    if a is None:
        raise ZeroDivisionError("inverse of the zero value")
    cdef dict n = a[1]
    cdef tuple c = rat_inv(n[0])
    return (-a[0], poly_scale(a[2], c), poly_scale(n, c))


cpdef rf_div(a, b):
    return rf_mul(a, rf_inv(b))


cpdef bint rf_equal(a, b):
    if a is None or b is None:
        return a is None and b is None
    if a[0] != b[0]:
        return False
    return poly_mul(a[1], b[2]) == poly_mul(b[1], a[2])


cpdef int rf_sign(a):
    if a is None:
        return 0
    cdef dict n = a[1]
    cdef tuple c = n[0]
    return 1 if c[0] > 0 else -1


cpdef int rf_cmp(a, b):
    return rf_sign(rf_sub(a, b))


cpdef tuple rf_eval(a, tuple x):
    if a is None:
        return (0, 1)
    k = a[0]
    cdef dict n = a[1]
    cdef dict d = a[2]
    if x[0] == 0:
        if k > 0:
            return (0, 1)
        if k < 0:
            raise ZeroDivisionError("pole at the evaluation point")
        return n[0]
    cdef tuple dv = poly_eval(d, x)
    if dv[0] == 0:
        raise ZeroDivisionError("pole at the evaluation point")
    cdef tuple val = rat_div(poly_eval(n, x), dv)
    if k:
        val = rat_mul(val, rat_pow(x, k))
    return val
