"""Double-double arithmetic on pairs of Python floats.

Only what the Bessel power series needs: error-free sum and product,
and dd multiply/divide/add. A value is a tuple ``(hi, lo)`` with
``|lo| <= ulp(hi)/2``.
"""

_SPLITTER = 134217729.0  # 2**27 + 1


def two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def _quick_two_sum(a, b):
    s = a + b
    return s, b - (s - a)


def _split(a):
    c = _SPLITTER * a
    hi = c - (c - a)
    return hi, a - hi


def two_prod(a, b):
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


def dd_add(x, y):
    s, e = two_sum(x[0], y[0])
    t, f = two_sum(x[1], y[1])
    e += t
    s, e = _quick_two_sum(s, e)
    e += f
    return _quick_two_sum(s, e)


def dd_mul(x, y):
    p, e = two_prod(x[0], y[0])
    e += x[0] * y[1] + x[1] * y[0]
    return _quick_two_sum(p, e)


def dd_div(x, y):
    q1 = x[0] / y[0]
    r = dd_add(x, dd_mul((-q1, 0.0), y))
    q2 = r[0] / y[0]
    r = dd_add(r, dd_mul((-q2, 0.0), y))
    q3 = r[0] / y[0]
    q1, q2 = _quick_two_sum(q1, q2)
    return dd_add((q1, q2), (q3, 0.0))


def dd_from_fraction(value):
    """Nearest double-double to an exact rational."""
    num, den = value.numerator, value.denominator
    hi = num / den
    # remainder num - hi*den is exact in integer arithmetic
    rem = num * _exact_den(hi) - _exact_num(hi) * den
    lo = rem / (den * _exact_den(hi))
    return _quick_two_sum(hi, lo)


def _exact_num(x):
    return x.as_integer_ratio()[0]


def _exact_den(x):
    return x.as_integer_ratio()[1]
