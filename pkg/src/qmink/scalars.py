"""Exact coefficient field for the q-Minkowski engine.

A Scalar is a fraction of sparse Laurent polynomials in s = q^(1/2) with two
extra commuting parameters m, k, a Gaussian unit i (i^2 = -1) and a formal
square root r with r^2 = s^2 + s^(-2) (so r = [2]^(1/2)).  The unit i and the
quadratic element r are folded into the monomial keys and reduced on the fly,
which keeps coefficients as plain Python ints.

Numerator keys are (e_s, e_m, e_k, e_i, e_r) with e_s any integer (Laurent),
e_i and e_r in {0, 1}.  Denominators are real: keys (e_s, e_m, e_k) with
e_s >= 0 and the minimal s-degree shifted out into the numerator.  Zero is
the empty numerator.

Equality is exact via cross multiplication; `canonical()` produces the fully
gcd-reduced representative (denominator's lowest monomial normalized
positive, coprime integer content), so equal values have identical canonical
forms.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd

__all__ = [
    "Scalar", "PoleError", "NotRationalError",
    "ZERO", "ONE", "I", "R", "M", "K",
    "integer", "rational", "q_power", "s_power", "qnum_sym", "qnum_std",
    "qfactorial_std", "lambda_", "two_q", "subst_classical",
]

_NKEY0 = (0, 0, 0, 0, 0)
_DKEY0 = (0, 0, 0)


class PoleError(ArithmeticError):
    """Denominator vanishes at the requested substitution point."""


class NotRationalError(ArithmeticError):
    """Value is not rational at the substitution point (residual r)."""


def _nmul_into(acc, k1, c1, k2, c2):
    """Accumulate the product of two numerator monomials into dict acc."""
    c = c1 * c2
    ei = k1[3] + k2[3]
    if ei >= 2:
        ei -= 2
        c = -c
    es = k1[0] + k2[0]
    em = k1[1] + k2[1]
    ek = k1[2] + k2[2]
    er = k1[4] + k2[4]
    if er >= 2:
        # r^2 = s^2 + s^-2
        for key in ((es + 2, em, ek, ei, 0), (es - 2, em, ek, ei, 0)):
            v = acc.get(key, 0) + c
            if v:
                acc[key] = v
            elif key in acc:
                del acc[key]
        return
    key = (es, em, ek, ei, er)
    v = acc.get(key, 0) + c
    if v:
        acc[key] = v
    elif key in acc:
        del acc[key]


def _nmul(n1, n2):
    if not n1 or not n2:
        return {}
    acc = {}
    for k1, c1 in n1.items():
        for k2, c2 in n2.items():
            _nmul_into(acc, k1, c1, k2, c2)
    return acc


def _dmul(d1, d2):
    acc = {}
    for (a1, b1, c1), v1 in d1.items():
        for (a2, b2, c2), v2 in d2.items():
            key = (a1 + a2, b1 + b2, c1 + c2)
            v = acc.get(key, 0) + v1 * v2
            if v:
                acc[key] = v
            elif key in acc:
                del acc[key]
    return acc


def _nadd(n1, n2):
    acc = dict(n1)
    for key, c in n2.items():
        v = acc.get(key, 0) + c
        if v:
            acc[key] = v
        elif key in acc:
            del acc[key]
    return acc


def _nscale(n, c):
    if c == 0:
        return {}
    return {key: v * c for key, v in n.items()}


def _den_as_num(d):
    return {(es, em, ek, 0, 0): v for (es, em, ek), v in d.items()}


def _num_real_part(n):
    """Numerator restricted to e_i = e_r = 0, as a denominator-style dict."""
    return {(es, em, ek): v for (es, em, ek, ei, er), v in n.items()
            if ei == 0 and er == 0}


def _content(*dicts):
    g = 0
    for d in dicts:
        for v in d.values():
            g = gcd(g, v)
            if g == 1:
                return 1
    return g


class Scalar:
    """Immutable element of the exact coefficient field."""

    __slots__ = ("num", "den")
    __hash__ = None

    def __init__(self, num, den=None, _normalize=True):
        if den is None:
            den = {_DKEY0: 1}
        if _normalize:
            num, den = _light_normalize(num, den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, *a):
        raise AttributeError("Scalar is immutable")

    # -- predicates -------------------------------------------------------

    def is_zero(self):
        return not self.num

    def is_one(self):
        if self.den == {_DKEY0: 1}:
            return self.num == {_NKEY0: 1}
        return self == ONE

    # -- ring operations --------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Scalar):
            return NotImplemented
        if self.den == other.den:
            return Scalar(_nadd(self.num, other.num), dict(self.den))
        n = _nadd(_nmul(self.num, _den_as_num(other.den)),
                  _nmul(other.num, _den_as_num(self.den)))
        if not n:
            return ZERO
        return Scalar(n, _dmul(self.den, other.den))

    def __sub__(self, other):
        if not isinstance(other, Scalar):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return Scalar(_nscale(self.num, -1), dict(self.den), _normalize=False)

    def __mul__(self, other):
        if not isinstance(other, Scalar):
            return NotImplemented
        if not self.num or not other.num:
            return ZERO
        d1, d2 = self.den, other.den
        if d1 == {_DKEY0: 1} and d2 == {_DKEY0: 1}:
            return Scalar(_nmul(self.num, other.num), {_DKEY0: 1},
                          _normalize=False)
        return Scalar(_nmul(self.num, other.num), _dmul(d1, d2))

    def __truediv__(self, other):
        if not isinstance(other, Scalar):
            return NotImplemented
        return self * other.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("inverse of zero Scalar")
        # value = num/den; inverse = den/num.  Clear r then i from the new
        # denominator by conjugation.
        a = {key: v for key, v in self.num.items() if key[4] == 0}
        b = {key[:4] + (0,): v for key, v in self.num.items() if key[4] == 1}
        if b:
            # (a + b r)^-1 = (a - b r) / (a^2 - b^2 (s^2 + s^-2))
            rr = {(2, 0, 0, 0, 0): 1, (-2, 0, 0, 0, 0): 1}
            denom_c = _nadd(_nmul(a, a), _nscale(_nmul(_nmul(b, b), rr), -1))
            conj_r = _nadd(a, _nscale({k[:4] + (1,): v for k, v in b.items()}, -1))
        else:
            denom_c = dict(a)
            conj_r = {_NKEY0: 1}
        # denom_c is r-free; clear i
        cre = {key: v for key, v in denom_c.items() if key[3] == 0}
        cim = {key[:3] + (0, 0): v for key, v in denom_c.items() if key[3] == 1}
        if cim:
            new_den_num = _nadd(_nmul(cre, cre), _nmul(cim, cim))
            conj_i = _nadd(cre, _nscale({k[:3] + (1, 0): v for k, v in cim.items()}, -1))
        else:
            new_den_num = denom_c
            conj_i = {_NKEY0: 1}
        new_num = _nmul(_nmul(_den_as_num(self.den), conj_r), conj_i)
        new_den = {key[:3]: v for key, v in new_den_num.items()}
        return Scalar(new_num, new_den)

    # -- comparisons ------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Scalar):
            return NotImplemented
        if self.den == other.den:
            return self.num == other.num
        return _nmul(self.num, _den_as_num(other.den)) == \
            _nmul(other.num, _den_as_num(self.den))

    def __ne__(self, other):
        r = self.__eq__(other)
        return NotImplemented if r is NotImplemented else not r

    def __bool__(self):
        return bool(self.num)

    # -- normal forms and substitution -------------------------------------

    def canonical(self):
        """Fully reduced representative (unique per field value)."""
        num, den = _full_reduce(self.num, self.den)
        return Scalar(num, den, _normalize=False)

    def subst_classical(self):
        """Exact value at s = 1 (q = 1); keeps m, k, i symbolic.

        Raises PoleError if the reduced denominator vanishes at s = 1 and
        NotRationalError if a residual factor r survives (r -> sqrt(2) has
        no rational value).
        """
        red = self.canonical()
        dval = {}
        for (_es, em, ek), v in red.den.items():
            key = (0, em, ek)
            w = dval.get(key, 0) + v
            if w:
                dval[key] = w
            elif key in dval:
                del dval[key]
        if not dval:
            raise PoleError("denominator vanishes at q = 1")
        nval = {}
        for (_es, em, ek, ei, er), v in red.num.items():
            if er:
                raise NotRationalError("residual r = [2]^(1/2) at q = 1")
            key = (0, em, ek, ei, 0)
            w = nval.get(key, 0) + v
            if w:
                nval[key] = w
            elif key in nval:
                del nval[key]
        return Scalar(nval, dval)

    def as_fraction(self):
        """The value as a Fraction; requires a pure rational constant."""
        red = self.canonical()
        if any(key != _DKEY0 for key in red.den):
            raise NotRationalError("denominator is not constant")
        d = red.den[_DKEY0]
        n = 0
        for key, v in red.num.items():
            if key != _NKEY0:
                raise NotRationalError("value is not a rational constant")
            n = v
        return Fraction(n, d)

    def __repr__(self):
        from .surface import scalar_to_str
        return scalar_to_str(self)


# -- normalization ----------------------------------------------------------

def _light_normalize(num, den):
    if not den:
        raise ZeroDivisionError("zero denominator")
    if not num:
        return {}, {_DKEY0: 1}
    # shift minimal s-degree of den into num (Laurent units)
    shift = min(key[0] for key in den)
    if shift:
        den = {(es - shift, em, ek): v for (es, em, ek), v in den.items()}
        num = {(es - shift, em, ek, ei, er): v
               for (es, em, ek, ei, er), v in num.items()}
    if len(den) > 1 and all(k[1] == 0 and k[2] == 0 for k in den):
        num, den = _reduce_s_only(num, den)
    c = _content(num, den)
    if c > 1:
        num = {key: v // c for key, v in num.items()}
        den = {key: v // c for key, v in den.items()}
    if den[min(den)] < 0:
        num = _nscale(num, -1)
        den = {key: -v for key, v in den.items()}
    return num, den


def _reduce_s_only(num, den):
    """Cancel the gcd when the denominator is a polynomial in s alone.

    Keeps fractions small along summation chains; works over Z[s] with a
    primitive PRS (s-power units are free to move, so slices are shifted
    to degree 0 before taking gcds).
    """
    dmax = max(k[0] for k in den)
    dlist = [0] * (dmax + 1)
    for (es, _, _), v in den.items():
        dlist[es] = v
    slices = {}
    for (es, em, ek, ei, er), v in num.items():
        slices.setdefault((em, ek, ei, er), {})[es] = v
    arrays = {}
    g = dlist
    for key, sl in slices.items():
        lo = min(sl)
        arr = [0] * (max(sl) - lo + 1)
        for es, v in sl.items():
            arr[es - lo] = v
        arrays[key] = (lo, arr)
        g = _gcd_zs(g, arr)
        if len(g) == 1:
            return num, den
    new_den = {}
    for es, v in enumerate(_div_zs(dlist, g)):
        if v:
            new_den[(es, 0, 0)] = v
    new_num = {}
    for (em, ek, ei, er), (lo, arr) in arrays.items():
        for j, v in enumerate(_div_zs(arr, g)):
            if v:
                new_num[(j + lo, em, ek, ei, er)] = v
    return new_num, new_den


def _strip_zs(a):
    """Strip trailing zero coefficients (list little-endian in s)."""
    n = len(a)
    while n > 1 and a[n - 1] == 0:
        n -= 1
    return a[:n]


def _prim_zs(a):
    """Shift out s^k factors and integer content; primitive part."""
    a = _strip_zs(a)
    lead = 0
    while lead < len(a) - 1 and a[lead] == 0:
        lead += 1
    a = a[lead:]
    c = reduce(gcd, (abs(v) for v in a if v), 0)
    if c > 1:
        a = [v // c for v in a]
    return a


def _gcd_zs(a, b):
    """Primitive gcd of integer polynomials in s (lists, little-endian)."""
    a, b = _prim_zs(a), _prim_zs(b)
    if len(a) < len(b):
        a, b = b, a
    while len(b) > 1 or b[0] != 0:
        if len(b) == 1:
            return [1]
        # primitive pseudo-remainder a mod b
        r = list(a)
        lb = b[-1]
        while len(r) >= len(b) and any(r):
            r = _strip_zs(r)
            if len(r) < len(b):
                break
            shift = len(r) - len(b)
            lr = r[-1]
            g0 = gcd(lr, lb)
            mul_r, mul_b = lb // g0, lr // g0
            r = [v * mul_r for v in r]
            for j, bv in enumerate(b):
                r[j + shift] -= mul_b * bv
            r = _strip_zs(r)
        r = _prim_zs(r)
        a, b = b, r
    return _prim_zs(a) if (len(a) > 1 or a[0] != 0) else [1]


def _div_zs(a, g):
    """Exact division of an integer s-polynomial by g (primitive)."""
    if g == [1]:
        return list(a)
    a = list(a)
    out = [0] * (len(a) - len(g) + 1)
    glead = g[-1]
    for pos in range(len(a) - 1, len(g) - 2, -1):
        c = a[pos]
        if c == 0:
            continue
        qc, rr = divmod(c, glead)
        if rr:
            raise ArithmeticError("inexact s-polynomial division")
        j = pos - (len(g) - 1)
        out[j] = qc
        for t, gv in enumerate(g):
            a[j + t] -= qc * gv
    if any(a):
        raise ArithmeticError("inexact s-polynomial division")
    return out


def _full_reduce(num, den):
    num, den = _light_normalize(num, den)
    if not num or (len(den) == 1 and _DKEY0 in den):
        return num, den
    if all(k[1] == 0 and k[2] == 0 for k in den):
        # s-only denominators are fully reduced by _light_normalize
        return num, den
    # Cancel the common real polynomial factor.  Components of num by
    # (e_i, e_r) are real polynomials; a real factor divides num iff it
    # divides every component.
    comps = {}
    for (es, em, ek, ei, er), v in num.items():
        comps.setdefault((ei, er), {})[(es, em, ek)] = v
    shift = min(min(key[0] for key in comp) for comp in comps.values())
    shift = min(shift, 0)
    polys = [den] + [
        {(es - shift, em, ek): v for (es, em, ek), v in comp.items()}
        for comp in comps.values()
    ]
    g = _real_gcd(polys)
    if g is not None and g != {_DKEY0: 1}:
        den = _exact_div_real(den, g)
        new_num = {}
        for (ei, er), comp in comps.items():
            compq = _exact_div_real(
                {(es - shift, em, ek): v for (es, em, ek), v in comp.items()}, g)
            for (es, em, ek), v in compq.items():
                new_num[(es + shift, em, ek, ei, er)] = v
        num = new_num
    return _light_normalize(num, den)


_SYMPY_RING = None


def _real_gcd(polys):
    """Gcd of real sparse polynomials over Q, via sympy's ring gcd."""
    global _SYMPY_RING
    if _SYMPY_RING is None:
        from sympy.polys.rings import ring
        from sympy.polys.domains import QQ
        _SYMPY_RING = (ring("s,m,k", QQ), )
    R = _SYMPY_RING[0][0]
    from sympy.polys.domains import QQ
    elems = [R.from_dict({key: QQ(v) for key, v in p.items()}) for p in polys]
    g = elems[0]
    for e in elems[1:]:
        g = g.gcd(e)
        if g == R.one:
            return None
    # gcd is defined up to a unit: rescale to primitive integer form with
    # positive leading coefficient
    fracs = {tuple(int(e) for e in mono):
             Fraction(int(c.numerator), int(c.denominator))
             for mono, c in g.to_dict().items()}
    lcm = 1
    for f in fracs.values():
        lcm = lcm * f.denominator // gcd(lcm, f.denominator)
    ints = {key: int(f * lcm) for key, f in fracs.items()}
    c = reduce(gcd, (abs(v) for v in ints.values()))
    if ints[max(ints)] < 0:
        c = -c
    return {key: v // c for key, v in ints.items()}


def _exact_div_real(p, g):
    """Exact division of real sparse polys (keys (e_s, e_m, e_k))."""
    rem = dict(p)
    glead = max(g)
    gc = g[glead]
    quot = {}
    while rem:
        lead = max(rem)
        c = rem[lead]
        key = (lead[0] - glead[0], lead[1] - glead[1], lead[2] - glead[2])
        qc, res = divmod(c, gc)
        if key[1] < 0 or key[2] < 0 or res:
            raise ArithmeticError("inexact division")
        quot[key] = qc
        for gkey, gv in g.items():
            kk = (key[0] + gkey[0], key[1] + gkey[1], key[2] + gkey[2])
            v = rem.get(kk, 0) - qc * gv
            if v:
                rem[kk] = v
            elif kk in rem:
                del rem[kk]
    return quot


# -- constructors -----------------------------------------------------------

def integer(n):
    if n == 0:
        return ZERO
    return Scalar({_NKEY0: int(n)}, None, _normalize=False)


def rational(p, qd=1):
    f = Fraction(p, qd)
    if f == 0:
        return ZERO
    return Scalar({_NKEY0: f.numerator}, {_DKEY0: f.denominator},
                  _normalize=False)


def s_power(n):
    """s^n (s = q^(1/2))."""
    return Scalar({(n, 0, 0, 0, 0): 1}, None, _normalize=False)


def q_power(n):
    """q^n as a Laurent monomial (integer n)."""
    return s_power(2 * n)


ZERO = Scalar({}, None, _normalize=False)
ONE = integer(1)
I = Scalar({(0, 0, 0, 1, 0): 1}, None, _normalize=False)
R = Scalar({(0, 0, 0, 0, 1): 1}, None, _normalize=False)
M = Scalar({(0, 1, 0, 0, 0): 1}, None, _normalize=False)
K = Scalar({(0, 0, 1, 0, 0): 1}, None, _normalize=False)

_QNUM_SYM = {}
_QNUM_STD = {}
_QFACT = {}


def lambda_():
    """lambda = q - q^(-1)."""
    return Scalar({(2, 0, 0, 0, 0): 1, (-2, 0, 0, 0, 0): -1}, None,
                  _normalize=False)


def two_q():
    """The quantum two [2] = q + q^(-1)."""
    return qnum_sym(2)


def qnum_sym(n):
    """Symmetric quantum number [n] = (q^n - q^(-n)) / (q - q^(-1))."""
    if n < 0:
        raise ValueError("quantum number of negative integer")
    out = _QNUM_SYM.get(n)
    if out is None:
        # Laurent polynomial q^(n-1) + q^(n-3) + ... + q^(1-n)
        out = Scalar({(2 * j, 0, 0, 0, 0): 1 for j in range(n - 1, -n - 1, -2)},
                     None, _normalize=False) if n else ZERO
        _QNUM_SYM[n] = out
    return out


def qnum_std(n):
    """Standard bracket number [[n]] = 1 + q^2 + ... + q^(2(n-1))."""
    if n < 0:
        raise ValueError("quantum number of negative integer")
    out = _QNUM_STD.get(n)
    if out is None:
        out = Scalar({(4 * j, 0, 0, 0, 0): 1 for j in range(n)}, None,
                     _normalize=False) if n else ZERO
        _QNUM_STD[n] = out
    return out


def qfactorial_std(n):
    """[[n]]! = [[n]] [[n-1]] ... [[1]]."""
    if n < 0:
        raise ValueError("factorial of negative integer")
    out = _QFACT.get(n)
    if out is None:
        out = ONE if n == 0 else qfactorial_std(n - 1) * qnum_std(n)
        _QFACT[n] = out
    return out


def subst_classical(x):
    """Module-level convenience wrapper for Scalar.subst_classical."""
    return x.subst_classical()
