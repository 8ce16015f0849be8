"""Pure-Python term kernels.

A polynomial is a dict mapping a packed exponent key to a nonzero
coefficient.  Each variable owns a fixed-width bit field of the key, so the
product of two monomials is the sum of their keys.
"""

BITS = 16
MASK = (1 << BITS) - 1


def mul_terms(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = {}
    get = out.get
    for kb, cb in b.items():
        for ka, ca in a.items():
            k = ka + kb
            c = get(k)
            out[k] = ca * cb if c is None else c + ca * cb
    return {k: c for k, c in out.items() if c}


def add_terms(a, b, sign=1):
    out = dict(a)
    get = out.get
    if sign == 1:
        for k, c in b.items():
            old = get(k)
            if old is None:
                out[k] = c
            else:
                s = old + c
                if s:
                    out[k] = s
                else:
                    del out[k]
    else:
        for k, c in b.items():
            old = get(k)
            if old is None:
                out[k] = -c
            else:
                s = old - c
                if s:
                    out[k] = s
                else:
                    del out[k]
    return out


def scale_terms(a, s):
    if not s:
        return {}
    return {k: c * s for k, c in a.items() if c * s}


def diff_terms(a, shift):
    one = 1 << shift
    out = {}
    for k, c in a.items():
        e = (k >> shift) & MASK
        if e:
            out[k - one] = c * e
    return out


def iadd_terms(out, b):
    """Accumulate ``b`` into ``out`` in place."""
    get = out.get
    for k, c in b.items():
        old = get(k)
        if old is None:
            out[k] = c
        else:
            s = old + c
            if s:
                out[k] = s
            else:
                del out[k]
    return out
