# cython: language_level=3
"""Compiled twins of the term kernels in _pykernels.

Keys stay Python ints (they can exceed 64 bits).  Products of rational
polynomials accumulate unreduced numerator/denominator pairs and reduce each
output coefficient once, which skips the gcd that every Fraction operation
pays; other coefficient types go through the generic loop.
"""

from fractions import Fraction
from math import gcd as _gcd

cdef int BITS = 16
cdef object MASK = (1 << 16) - 1


cdef inline bint _all_fractions(dict a):
    cdef object c
    for c in a.values():
        if type(c) is not Fraction:
            return False
    return True


def mul_terms(dict a, dict b):
    if len(a) < len(b):
        a, b = b, a
    if _all_fractions(a) and _all_fractions(b):
        return _mul_rational(a, b)
    cdef dict out = {}
    cdef object ka, ca, kb, cb, k, c
    for kb, cb in b.items():
        for ka, ca in a.items():
            k = ka + kb
            c = out.get(k)
            if c is None:
                out[k] = ca * cb
            else:
                out[k] = c + ca * cb
    return {k: c for k, c in out.items() if c}


cdef dict _mul_rational(dict a, dict b):
    """Accumulate numerator/denominator pairs unreduced; reduce once per term."""
    cdef list la = [(k, c.numerator, c.denominator) for k, c in a.items()]
    cdef dict nums = {}
    cdef dict dens = {}
    cdef object kb, cb, ka, na, da, nb, db, k, n, d, D
    for kb, cb in b.items():
        nb = cb.numerator
        db = cb.denominator
        for ka, na, da in la:
            k = ka + kb
            n = na * nb
            d = da * db
            D = dens.get(k)
            if D is None:
                nums[k] = n
                dens[k] = d
            elif D == d:
                nums[k] = nums[k] + n
            else:
                nums[k] = nums[k] * d + n * D
                D = D * d
                if D.bit_length() > 512:
                    g = _gcd(nums[k], D)
                    nums[k] = nums[k] // g
                    D = D // g
                dens[k] = D
    cdef dict out = {}
    for k, n in nums.items():
        if n:
            out[k] = Fraction(n, dens[k])
    return out


def add_terms(dict a, dict b, int sign=1):
    cdef dict out = dict(a)
    cdef object k, c, old, s
    for k, c in b.items():
        old = out.get(k)
        if old is None:
            out[k] = c if sign == 1 else -c
        else:
            s = old + c if sign == 1 else old - c
            if s:
                out[k] = s
            else:
                del out[k]
    return out


def scale_terms(dict a, object s):
    cdef dict out = {}
    cdef object k, c, p
    if not s:
        return out
    for k, c in a.items():
        p = c * s
        if p:
            out[k] = p
    return out


def diff_terms(dict a, object shift):
    cdef dict out = {}
    cdef object one = (<object>1) << shift
    cdef object k, c, e
    for k, c in a.items():
        e = (k >> shift) & MASK
        if e:
            out[k - one] = c * e
    return out


def iadd_terms(dict out, dict b):
    cdef object k, c, old, s
    for k, c in b.items():
        old = out.get(k)
        if old is None:
            out[k] = c
        else:
            s = old + c
            if s:
                out[k] = s
            else:
                del out[k]
    return out
