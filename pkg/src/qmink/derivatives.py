"""The gradient on quantum Minkowski space.

Two independent implementations are kept side by side:

* `grad_oracle` -- the recursion defined by the coproduct of the momenta,
  peeling one generator at a time:

      nabla(x_alpha w) = e_alpha w + q L_{x_alpha} nabla(w),

  evaluated over Poincare-Birkhoff-Witt words.  It is the ground truth.

* `grad_closed` -- the closed chain rule in the separated variables: for a
  monomial xi+^a xi-^b w with spatial word w,

      nabla f = (d_{q^2} f / d_{q^2} xi+) nabla xi+
              + (d_{q^2} f / d_{q^2} xi-) nabla xi-
              + (Pi+ q^{2a} + Pi- q^{2b}) (central part) nabla w,

  with nabla xi+- = Pi+- nabla x0, and the last term expanding into the
  plain spatial Jackson terms plus the delta-f correction (the two are
  assembled together here; `delta_correction` exposes the correction
  operator itself).  Partial Jackson derivatives act on ordered monomials
  only; the standalone `OrderedPoly` makes the ordering explicit.

All index vectors are in the four-vector order (0, -, +, 3).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import scalars as sc

from . import algebra as al
from .algebra import Element, Localized
from . import matrices as mx

__all__ = [
    "Gradient", "OrderedPoly", "jackson", "jackson_element",
    "grad_oracle", "grad_closed", "delta_correction",
    "raise_index", "lower_index", "contract_d_alembert",
    "subst_xi_scale",
]


@dataclass(frozen=True)
class Gradient:
    """(nabla f)^mu for mu in (0, -, +, 3), as Localized components."""

    components: tuple

    def __post_init__(self):
        if len(self.components) != 4:
            raise ValueError("gradient has four components")

    def __getitem__(self, mu):
        return self.components[mu]

    def __add__(self, other):
        return Gradient(tuple(a + b for a, b in
                              zip(self.components, other.components)))

    def __sub__(self, other):
        return Gradient(tuple(a - b for a, b in
                              zip(self.components, other.components)))

    def __eq__(self, other):
        if not isinstance(other, Gradient):
            return NotImplemented
        return all(a == b for a, b in zip(self.components, other.components))

    def scale(self, c):
        return Gradient(tuple(x * c for x in self.components))

    def is_zero(self):
        return all(x.is_zero() for x in self.components)

    def cleared(self):
        """Components as Elements; raises DeltaDivisionError on residue."""
        return tuple(x.try_clear() for x in self.components)

    @staticmethod
    def zero():
        return Gradient((_LZERO,) * 4)

    @staticmethod
    def of_elements(elems):
        return Gradient(tuple(Localized.of(e) for e in elems))


_LZERO = Localized.of(al.zero())


# -- ordered polynomials and partial Jackson derivatives -----------------------

_VAR_SLOT = {"xip": 0, "xim": 1, "xp": 2, "x30": 3, "xm": 4}


class OrderedPoly:
    """Linear combination of ordered monomials in a fixed variable order.

    Partial Jackson derivatives depend on this order; the same algebra
    element written in two orders can have different partial derivatives.
    """

    __slots__ = ("variables", "terms")
    __hash__ = None

    def __init__(self, variables, terms):
        variables = tuple(variables)
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "terms",
                           {tuple(k): v for k, v in terms.items()
                            if not v.is_zero()})

    def __setattr__(self, *a):
        raise AttributeError("OrderedPoly is immutable")

    def jackson(self, var):
        """Partial Jackson derivative with respect to one of the variables."""
        try:
            slot = self.variables.index(var)
        except ValueError:
            raise KeyError(f"{var!r} is not a variable of this ordering")
        out = {}
        for exps, coeff in self.terms.items():
            n = exps[slot]
            if n == 0:
                continue
            key = exps[:slot] + (n - 1,) + exps[slot + 1:]
            c = coeff * sc.qnum_std(n)
            if key in out:
                c = out[key] + c
            if not c.is_zero():
                out[key] = c
            elif key in out:
                del out[key]
        return OrderedPoly(self.variables, out)

    def to_element(self):
        """Multiply out in the declared order (normal ordering applies)."""
        acc = al.zero()
        for exps, coeff in self.terms.items():
            word = al.one()
            for var, n in zip(self.variables, exps):
                word = word * al.gen_element(var) ** n
            acc = acc + word.scale(coeff)
        return acc

    def __eq__(self, other):
        if not isinstance(other, OrderedPoly):
            return NotImplemented
        if self.variables != other.variables:
            return False
        if self.terms.keys() != other.terms.keys():
            return False
        return all(v == other.terms[k] for k, v in self.terms.items())


def jackson(f, var):
    """Partial Jackson derivative of an OrderedPoly."""
    return f.jackson(var)


def jackson_element(f, var):
    """Jackson derivative on the internal basis (order is structural)."""
    slot = _VAR_SLOT[var]
    out = {}
    for key, coeff in f.terms.items():
        n = key[slot]
        if n == 0:
            continue
        new = key[:slot] + (n - 1,) + key[slot + 1:]
        c = coeff * sc.qnum_std(n)
        if new in out:
            c = out[new] + c
        if not c.is_zero():
            out[new] = c
        elif new in out:
            del out[new]
    return Element(out, _copy=False)


def subst_xi_scale(f, plus=0, minus=0):
    """f with xi+ -> q^(2 plus) xi+ and xi- -> q^(2 minus) xi-."""
    return Element({key: c * sc.q_power(2 * (plus * key[0] + minus * key[1]))
                    for key, c in f.terms.items()}, _copy=False)


# -- the recursion oracle -------------------------------------------------------

_GEN_INDEX = {"x0": 0, "xm": 1, "xp": 2, "x3": 3}


@lru_cache(maxsize=None)
def _l_entries(gen):
    """L_{x_gen} as a 4x4 tuple of Elements."""
    mat = mx.l_matrix(gen)
    return tuple(tuple(mat.entries[i][j].try_clear() for j in range(4))
                 for i in range(4))


@lru_cache(maxsize=None)
def _oracle_word(word):
    """(gradient components as Elements, product Element) for a PBW word."""
    if not word:
        return ((al.zero(),) * 4, al.one())
    gen, rest = word[0], word[1:]
    comps_rest, el_rest = _oracle_word(rest)
    L = _l_entries(gen)
    q1 = sc.q_power(1)
    comps = []
    for mu in range(4):
        acc = el_rest if _GEN_INDEX[gen] == mu else al.zero()
        for nu in range(4):
            if comps_rest[nu].is_zero() or L[mu][nu].is_zero():
                continue
            acc = acc + (L[mu][nu] * comps_rest[nu]).scale(q1)
        comps.append(acc)
    return (tuple(comps), al.gen_element(gen) * el_rest)


def grad_oracle(f):
    """Gradient by the coproduct recursion over PBW words (ground truth)."""
    if isinstance(f, Localized):
        f = f.try_clear()
    comps = [al.zero()] * 4
    for (n0, nm, np_, n3), coeff in al.to_pbw_x(f).items():
        word = ("x0",) * n0 + ("xm",) * nm + ("xp",) * np_ + ("x3",) * n3
        wcomps, _ = _oracle_word(word)
        for mu in range(4):
            if not wcomps[mu].is_zero():
                comps[mu] = comps[mu] + wcomps[mu].scale(coeff)
    return Gradient.of_elements(comps)


# -- the closed chain rule -------------------------------------------------------

@lru_cache(maxsize=None)
def _pi_nabla(sign):
    return tuple(mx.pi_nabla_x0(sign))


@lru_cache(maxsize=None)
def _pi_weighted(a, b):
    """Pi+ q^(2a) + Pi- q^(2b), cached per central exponent pair."""
    pp, pm = mx.projectors()
    if a == b == 0:
        return mx.identity(4)
    return pp.scale(sc.q_power(2 * a)) + pm.scale(sc.q_power(2 * b))


def _spatial_gradient_mono(key, coeff):
    """Jackson-rule gradient of a single basis monomial's spatial word,
    keeping the central prefix; returns a 4-list of Elements."""
    a, b, c, d, e = key
    comps = [al.zero()] * 4
    if c:
        el = al.monomial(a, b, c - 1, d, e, coeff=coeff * sc.qnum_std(c))
        comps[2] = comps[2] + el
    if d:
        el = al.monomial(a, b, c, d - 1, e, coeff=coeff * sc.qnum_std(d))
        comps[3] = comps[3] + el      # nabla x30 = e_3 - e_0
        comps[0] = comps[0] - el
    if e:
        el = al.monomial(a, b, c, d, e - 1, coeff=coeff * sc.qnum_std(e))
        comps[1] = comps[1] + el
    return comps


def grad_closed(f):
    """Gradient by the separated chain rule with partial Jackson derivatives.

    Input must be delta-free.  Components come back delta-localized; for
    elements of the coordinate algebra proper they clear (Gradient.cleared).
    """
    if isinstance(f, Localized):
        f = f.try_clear()
    comps = [_LZERO] * 4
    pi_plus = _pi_nabla(+1)
    pi_minus = _pi_nabla(-1)
    for key, coeff in f.terms.items():
        a, b, c, d, e = key
        tail = al.monomial(0, 0, c, d, e)
        # central Jackson terms against nabla xi+- = Pi+- nabla x0
        if a:
            pref = al.monomial(a - 1, b, coeff=coeff * sc.qnum_std(a))
            for mu in range(4):
                if not pi_plus[mu].is_zero():
                    comps[mu] = comps[mu] + pref * pi_plus[mu] * tail
        if b:
            pref = al.monomial(a, b - 1, coeff=coeff * sc.qnum_std(b))
            for mu in range(4):
                if not pi_minus[mu].is_zero():
                    comps[mu] = comps[mu] + pref * pi_minus[mu] * tail
        # spatial Jackson terms, twisted by Pi+ q^(2a) + Pi- q^(2b)
        spatial = _spatial_gradient_mono(key, coeff)
        if any(not x.is_zero() for x in spatial):
            wmat = _pi_weighted(a, b)
            vec = wmat.apply([Localized.of(x) for x in spatial])
            for mu in range(4):
                comps[mu] = comps[mu] + vec[mu]
    return Gradient(tuple(comps))


def delta_correction(f):
    """The matrix-valued finite-difference correction

        delta f = Pi+ (f|_{xi+ -> q^2 xi+} - f) + Pi- (f|_{xi- -> q^2 xi-} - f),

    which vanishes in the classical limit."""
    pp, pm = mx.projectors()
    dplus = subst_xi_scale(f, plus=1) - f
    dminus = subst_xi_scale(f, minus=1) - f
    return pp * dplus + pm * dminus


# -- metric operations ------------------------------------------------------------

def raise_index(grad):
    """G_mu -> G^mu = eta^{mu nu} G_nu (componentwise scalar mixing)."""
    return _metric_mix(grad, mx.eta_upper())


def lower_index(grad):
    """G^mu -> G_mu = eta_{mu nu} G^nu."""
    return _metric_mix(grad, mx.eta_lower())


def _metric_mix(grad, eta):
    comps = [_LZERO] * 4
    for (mu, nu), coeff in eta.items():
        comps[mu] = comps[mu] + grad.components[nu] * coeff
    return Gradient(tuple(comps))


def contract_d_alembert(f, grad_fn=grad_closed):
    """The wave operator d_mu d^mu acting on f, via two gradients and the
    metric contraction sum_{mu nu} eta_{mu nu} d^nu (d^mu f)."""
    first = grad_fn(f)
    eta = mx.eta_lower()
    acc = al.zero()
    firsts = first.cleared()
    for (mu, nu), coeff in eta.items():
        gmu = firsts[mu]
        if gmu.is_zero():
            continue
        second = grad_fn(gmu).cleared()
        if not second[nu].is_zero():
            acc = acc + second[nu].scale(coeff)
    return acc
