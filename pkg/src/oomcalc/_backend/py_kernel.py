"""Pure-Python arithmetic kernel.

This is the reference implementation of the hot inner loops: exact rational
coefficients, sparse polynomials in one variable, and rational functions of
that variable kept in a canonical shifted form. The compiled twin
(``cy_kernel``) implements exactly the same functions over exactly the same
data layout; either module can back the public classes.

Data layout (shared contract, do not change one module without the other):

* rational: ``(p, q)`` pair of ints, ``q > 0``, ``gcd(|p|, q) == 1``;
  zero is ``(0, 1)``.
* polynomial: ``dict`` mapping degree (int >= 0) to a rational; no stored
  coefficient is zero, the zero polynomial is ``{}``.
* rational function: ``None`` for the zero value, otherwise a triple
  ``(shift, num, den)`` where the represented value is
  ``x^shift * num(x) / den(x)``, ``num`` has a nonzero constant term and
  ``den`` has constant term exactly ``(1, 1)``.

All functions are pure; raised errors are plain ``ZeroDivisionError`` (the
object layer translates them into its typed exceptions).
"""

from math import gcd

# ---------------------------------------------------------------------------
# rationals
# ---------------------------------------------------------------------------


def rat_norm(p, q):
    """Reduce p/q to the canonical pair. Raises ZeroDivisionError on q == 0."""
    if q == 0:
        raise ZeroDivisionError("rational with zero denominator")
    if p == 0:
        return (0, 1)
    if q < 0:
        p, q = -p, -q
    g = gcd(p, q)
    if g > 1:
        return (p // g, q // g)
    return (p, q)


def rat_add(a, b):
    return rat_norm(a[0] * b[1] + b[0] * a[1], a[1] * b[1])


def rat_sub(a, b):
    return rat_norm(a[0] * b[1] - b[0] * a[1], a[1] * b[1])


def rat_mul(a, b):
    return rat_norm(a[0] * b[0], a[1] * b[1])


def rat_div(a, b):
    if b[0] == 0:
        raise ZeroDivisionError("rational division by zero")
    return rat_norm(a[0] * b[1], a[1] * b[0])


def rat_neg(a):
    return (-a[0], a[1])


def rat_inv(a):
    if a[0] == 0:
        raise ZeroDivisionError("inverse of zero")
    if a[0] < 0:
        return (-a[1], -a[0])
    return (a[1], a[0])


def rat_pow(a, k):
    """a**k for integer k (negative k inverts; 0**negative raises)."""
    if k >= 0:
        return (a[0] ** k, a[1] ** k)
    return rat_inv((a[0] ** -k, a[1] ** -k))


# ---------------------------------------------------------------------------
# sparse polynomials
# ---------------------------------------------------------------------------


def poly_add(f, g):
    out = dict(f)
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


def poly_neg(f):
    return {d: (-c[0], c[1]) for d, c in f.items()}


def poly_sub(f, g):
    return poly_add(f, poly_neg(g))


def poly_mul(f, g):
    # Accumulate unreduced products per degree, normalize once at the end.
    acc = {}
    for d1, c1 in f.items():
        p1, q1 = c1
        for d2, c2 in g.items():
            d = d1 + d2
            p, q = p1 * c2[0], q1 * c2[1]
            cur = acc.get(d)
            if cur is None:
                acc[d] = (p, q)
            else:
                acc[d] = (cur[0] * q + p * cur[1], cur[1] * q)
    out = {}
    for d, c in acc.items():
        if c[0] != 0:
            out[d] = rat_norm(c[0], c[1])
    return out


def poly_scale(f, c):
    """f * c for a nonzero rational c."""
    p, q = c
    return {d: rat_norm(cd[0] * p, cd[1] * q) for d, cd in f.items()}


def poly_shift(f, k):
    """f * x^k; degrees must stay non-negative."""
    if k == 0:
        return f
    return {d + k: c for d, c in f.items()}


def poly_eval(f, x):
    """Exact value of f at the rational point x."""
    acc = (0, 1)
    for d, c in f.items():
        term = rat_mul(c, rat_pow(x, d))
        acc = rat_add(acc, term)
    return acc


# ---------------------------------------------------------------------------
# rational functions in canonical shifted form
# ---------------------------------------------------------------------------


def rf_canon(num, den):
    """Canonical form of num/den. Raises ZeroDivisionError on den == 0."""
    if not den:
        raise ZeroDivisionError("zero denominator polynomial")
    if not num:
        return None
    mn = min(num)
    md = min(den)
    shift = mn - md
    n = {d - mn: c for d, c in num.items()} if mn else dict(num)
    d = {e - md: c for e, c in den.items()} if md else dict(den)
    c0 = d[0]
    if c0 != (1, 1):
        inv = rat_inv(c0)
        n = poly_scale(n, inv)
        d = poly_scale(d, inv)
    return (shift, n, d)


def rf_neg(a):
    if a is None:
        return None
    return (a[0], poly_neg(a[1]), a[2])


def rf_add(a, b):
    if a is None:
        return b
    if b is None:
        return a
    k1, n1, d1 = a
    k2, n2, d2 = b
    k = k1 if k1 < k2 else k2
    t1 = poly_shift(poly_mul(n1, d2), k1 - k)
    t2 = poly_shift(poly_mul(n2, d1), k2 - k)
    num = poly_add(t1, t2)
    if not num:
        return None
    canon = rf_canon(num, poly_mul(d1, d2))
    return (canon[0] + k, canon[1], canon[2])


def rf_sub(a, b):
    return rf_add(a, rf_neg(b))


def rf_mul(a, b):
    if a is None or b is None:
        return None
    # Constant terms multiply to a nonzero constant term on both sides, so
    # the product is already canonical.
    return (a[0] + b[0], poly_mul(a[1], b[1]), poly_mul(a[2], b[2]))


def rf_inv(a):
    if a is None:
        raise ZeroDivisionError("inverse of the zero value")
    k, n, d = a
    c = rat_inv(n[0])
    return (-k, poly_scale(d, c), poly_scale(n, c))


def rf_div(a, b):
    return rf_mul(a, rf_inv(b))


def rf_equal(a, b):
    if a is None or b is None:
        return a is None and b is None
    if a[0] != b[0]:
        return False
    return poly_mul(a[1], b[2]) == poly_mul(b[1], a[2])


def rf_sign(a):
    """Sign of the leading coefficient: -1, 0 (zero value only) or 1."""
    if a is None:
        return 0
    return 1 if a[1][0][0] > 0 else -1


def rf_cmp(a, b):
    """Total-order comparison: sign of a - b."""
    return rf_sign(rf_sub(a, b))


def rf_eval(a, x):
    """Exact value at the rational point x; ZeroDivisionError at a pole."""
    if a is None:
        return (0, 1)
    k, n, d = a
    if x[0] == 0:
        if k > 0:
            return (0, 1)
        if k < 0:
            raise ZeroDivisionError("pole at the evaluation point")
        return n[0]
    dv = poly_eval(d, x)
    if dv[0] == 0:
        raise ZeroDivisionError("pole at the evaluation point")
    val = rat_div(poly_eval(n, x), dv)
    if k:
        val = rat_mul(val, rat_pow(x, k))
    return val
