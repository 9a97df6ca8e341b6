"""Face rings of simplicial posets, in chain-monomial normal form.

The face ring has one generator v_x of degree 2*rk(x) per element x of
the poset minus its least element, subject to

    v_x * v_y  =  v_{x ^ y} * sum of v_z over z in join_set(x, y)

with v_{0-hat} = 1 and an empty sum equal to 0.  The monomials supported
on chains x_1 < x_2 < ... < x_q with positive exponents form an additive
basis, and every product straightens to that basis.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

from .poset import TorusfanError
from .polys import Poly


class RingError(TorusfanError):
    pass


class Domain:
    """Coefficient domain: integers, rationals, or a prime field."""

    __slots__ = ("kind", "p")

    def __init__(self, kind, p=None):
        if kind not in ("Z", "Q", "GF"):
            raise RingError(f"unknown domain kind {kind!r}")
        if kind == "GF":
            if p is None or p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
                raise RingError(f"{p} is not prime")
        self.kind = kind
        self.p = p if kind == "GF" else None

    @classmethod
    def integers(cls):
        return cls("Z")

    @classmethod
    def rationals(cls):
        return cls("Q")

    @classmethod
    def prime_field(cls, p):
        return cls("GF", p)

    @classmethod
    def from_char(cls, char):
        return cls.rationals() if char == 0 else cls.prime_field(char)

    @property
    def char(self):
        return self.p or 0

    def coerce(self, c):
        if self.kind == "Z":
            if isinstance(c, Fraction):
                if c.denominator != 1:
                    raise RingError(f"{c} is not an integer")
                return int(c)
            return int(c)
        if self.kind == "Q":
            return Fraction(c)
        return int(c) % self.p

    def __eq__(self, other):
        return (isinstance(other, Domain) and self.kind == other.kind
                and self.p == other.p)

    def __hash__(self):
        return hash((self.kind, self.p))

    def __repr__(self):
        return {"Z": "Z", "Q": "Q"}.get(self.kind, f"GF({self.p})")


def chain_monomial(poset, pairs):
    """Canonical chain monomial from (element, exponent) pairs.

    The elements must form a chain in the poset and all exponents must be
    positive; the pairs are stored in increasing poset order.
    """
    pairs = tuple(sorted(((x, a) for x, a in pairs if a),
                         key=lambda xa: poset.rank_of(xa[0])))
    prev = None
    for x, a in pairs:
        if a < 0:
            raise RingError(f"negative exponent on v_{x}")
        if x == poset.root:
            raise RingError("the least element is not a generator")
        if prev is not None and not poset.leq(prev, x):
            raise RingError(f"{prev} and {x} do not form a chain")
        if prev == x:
            raise RingError(f"repeated chain element {x}")
        prev = x
    return pairs


def monomial_degree(poset, mono):
    return 2 * sum(a * poset.rank_of(x) for x, a in mono)


def _insert(poset, g, chain):
    """All chains in the normal form of v_g times a chain with repeats.

    ``chain`` is a tuple of element ids sorted increasingly in the poset
    (with repeats standing for exponents).  Whenever g is incomparable
    with the smallest chain element the straightening relation is applied
    and the minimal upper bounds are pushed further in.
    """
    if not chain:
        return [(g,)]
    c = chain[0]
    if poset.leq(g, c):
        return [(g,) + chain]
    if poset.leq(c, g):
        return [(c,) + t for t in _insert(poset, g, chain[1:])]
    ups = poset.join_set(g, c)
    if not ups:
        return []
    m = poset.meet(g, c)
    prefix = () if m == poset.root else (m,)
    out = []
    for z in ups:
        for t in _insert(poset, z, chain[1:]):
            out.append(prefix + t)
    return out


def _chain_to_monomial(chain):
    pairs = []
    for x in chain:
        if pairs and pairs[-1][0] == x:
            pairs[-1][1] += 1
        else:
            pairs.append([x, 1])
    return tuple((x, a) for x, a in pairs)


def straighten_product(poset, m1, m2):
    """Normal form of the product of two chain monomials, over the integers.

    Returns a {chain monomial: coefficient} dict.  Generators of the second
    factor are folded in one at a time, largest rank first; the result does
    not depend on this order (tested), only the intermediate terms do.
    """
    gens = [x for x, a in m2 for _ in range(a)]
    gens.sort(key=lambda x: -poset.rank_of(x))
    terms = {tuple(x for x, a in m1 for _ in range(a)): 1}
    for g in gens:
        nxt = {}
        for chain, coeff in terms.items():
            for out in _insert(poset, g, chain):
                nxt[out] = nxt.get(out, 0) + coeff
        terms = nxt
    result = {}
    for chain, coeff in terms.items():
        mono = _chain_to_monomial(chain)
        result[mono] = result.get(mono, 0) + coeff
    return {m: c for m, c in result.items() if c}


class RingElement:
    """A face-ring element: a sparse combination of chain monomials."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = {m: c for m, c in terms.items() if c}

    def is_zero(self):
        return not self.terms

    def degrees(self):
        return sorted({monomial_degree(self.ring.poset, m) for m in self.terms})

    def is_homogeneous(self):
        return len(self.degrees()) <= 1

    def homogeneous_component(self, degree):
        p = self.ring.poset
        return RingElement(self.ring, {m: c for m, c in self.terms.items()
                                       if monomial_degree(p, m) == degree})

    def __add__(self, other):
        self.ring.require_same(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = self.ring.domain.coerce(out.get(m, 0) + c)
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return RingElement(self.ring, out)

    def __neg__(self):
        return RingElement(self.ring,
                           {m: self.ring.domain.coerce(-c)
                            for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, RingElement):
            return self.ring.multiply(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def scale(self, c):
        c = self.ring.domain.coerce(c)
        return RingElement(self.ring,
                           {m: self.ring.domain.coerce(c * v)
                            for m, v in self.terms.items()})

    def __pow__(self, k):
        out = self.ring.one()
        for _ in range(k):
            out = self.ring.multiply(out, self)
        return out

    def __eq__(self, other):
        return (isinstance(other, RingElement) and self.ring.poset is other.ring.poset
                and self.ring.domain == other.ring.domain and self.terms == other.terms)

    def __hash__(self):
        return hash((id(self.ring.poset), self.ring.domain,
                     tuple(sorted(self.terms.items()))))

    def __repr__(self):
        return format_element(self)


class FaceRing:
    """The face ring of a simplicial poset over a coefficient domain."""

    def __init__(self, poset, domain=None):
        self.poset = poset
        self.domain = domain if domain is not None else Domain.integers()
        self._product_cache = {}

    def require_same(self, other):
        if isinstance(other, RingElement):
            if other.ring.poset is not self.poset:
                raise RingError("elements live over different posets")
            if other.ring.domain != self.domain:
                raise RingError("elements live over different domains")

    def zero(self):
        return RingElement(self, {})

    def one(self):
        return RingElement(self, {(): self.domain.coerce(1)})

    def gen(self, x):
        """The generator v_x."""
        if x == self.poset.root or x not in self.poset.cells:
            raise RingError(f"{x} is not a generator")
        return RingElement(self, {((x, 1),): self.domain.coerce(1)})

    def element(self, term_pairs):
        """Element from (pairs, coefficient) items; pairs as for chain_monomial."""
        terms = {}
        for pairs, c in term_pairs:
            m = chain_monomial(self.poset, pairs)
            v = self.domain.coerce(terms.get(m, 0) + c)
            if v:
                terms[m] = v
            else:
                terms.pop(m, None)
        return RingElement(self, terms)

    def monomial_product(self, m1, m2):
        key = (m1, m2) if m1 <= m2 else (m2, m1)
        hit = self._product_cache.get(key)
        if hit is None:
            hit = straighten_product(self.poset, key[0], key[1])
            self._product_cache[key] = hit
        return hit

    def multiply(self, a, b):
        self.require_same(a)
        self.require_same(b)
        out = {}
        for m1, c1 in a.terms.items():
            for m2, c2 in b.terms.items():
                c12 = c1 * c2
                for m, k in self.monomial_product(m1, m2).items():
                    v = self.domain.coerce(out.get(m, 0) + c12 * k)
                    if v:
                        out[m] = v
                    else:
                        out.pop(m, None)
        return RingElement(self, out)


# ---------------------------------------------------------------------------
# restrictions to vertices of the orbit space (top cells of the poset)


def restriction_points(poset):
    """Where restrictions land: the top cells when the poset is pure,
    otherwise all maximal elements."""
    return poset.tops() if poset.is_pure() else poset.maximal_elements()


def restriction_at_vertex(element, p):
    """Restriction of a face-ring element at a maximal cell p.

    The image lives in a polynomial ring with one degree-two variable per
    rank-1 element below p (in sorted id order); a generator v_x maps to
    the product of the variables below x if x <= p and to 0 otherwise.
    """
    poset = element.ring.poset
    domain = element.ring.domain
    if p not in restriction_points(poset):
        raise RingError(f"{p} is not a restriction point")
    vertex_list = sorted(poset.atoms(p))
    index = {v: j for j, v in enumerate(vertex_list)}
    nvars = len(vertex_list)
    coeffs = {}
    for mono, coeff in element.terms.items():
        if any(not poset.leq(x, p) for x, _ in mono):
            continue
        exp = [0] * nvars
        for x, a in mono:
            for v in poset.atoms(x):
                exp[index[v]] += a
        exp = tuple(exp)
        coeffs[exp] = domain.coerce(coeffs.get(exp, 0) + coeff)
    return Poly(nvars, coeffs)


def total_restriction(element):
    """Restrictions at every restriction point, as an ordered {p: Poly} map.

    This map is injective on pure posets: distinct normal forms have
    distinct restriction tuples.
    """
    poset = element.ring.poset
    return {p: restriction_at_vertex(element, p) for p in restriction_points(poset)}


# ---------------------------------------------------------------------------
# Hilbert series


def graded_dimension(poset, k):
    """Number of chain monomials of degree 2k (the dimension of the
    degree-2k graded piece)."""
    if k < 0:
        return 0
    if k == 0:
        return 1
    memo = {}

    def ending_at(x, w):
        # chain monomials of weight w whose largest element is x
        key = (x, w)
        hit = memo.get(key)
        if hit is not None:
            return hit
        r = poset.rank_of(x)
        total = 0
        a = 1
        while a * r <= w:
            rem = w - a * r
            if rem == 0:
                total += 1
            else:
                for y in poset.downset(x):
                    if y != x and y != poset.root:
                        total += ending_at(y, rem)
            a += 1
        memo[key] = total
        return total

    return sum(ending_at(x, k) for x in poset.cells if x != poset.root)


def chain_monomial_basis(poset, k):
    """The chain monomials of degree 2k, in the canonical order
    (lexicographic on chain ids, then exponents)."""
    if k < 0:
        return []
    if k == 0:
        return [()]
    out = []

    def extend(prefix, top, w):
        r = poset.rank_of(top)
        a = 1
        while a * r <= w:
            mono = prefix + ((top, a),)
            rem = w - a * r
            if rem == 0:
                out.append(tuple(reversed(mono)))
            else:
                for y in sorted(poset.downset(top)):
                    if y != top and y != poset.root:
                        extend(mono, y, rem)
            a += 1

    for x in sorted(poset.cells):
        if x != poset.root:
            extend((), x, k)
    return sorted(out, key=lambda m: (tuple(x for x, _ in m),
                                      tuple(a for _, a in m)))


def series_coefficient(h, n, k):
    """Degree-2k coefficient of (h_0 + h_1 t^2 + ... + h_n t^{2n}) / (1-t^2)^n."""
    if n == 0:
        return h[0] if k == 0 else 0
    return sum(h[i] * comb(n - 1 + k - i, n - 1) for i in range(min(k, n) + 1))


class HilbertReport:
    def __init__(self, rows):
        self.rows = rows  # (k, count, expected)

    @property
    def ok(self):
        return all(c == e for _, c, e in self.rows)

    def __bool__(self):
        return self.ok

    def __repr__(self):
        flag = "ok" if self.ok else "MISMATCH"
        return f"<HilbertReport {flag} up to k={self.rows[-1][0] if self.rows else 0}>"


def hilbert_check(poset, dmax):
    """Compare chain-monomial counts with the h-vector series up to degree 2*dmax."""
    h = poset.h_vector()
    n = poset.rank
    rows = [(k, graded_dimension(poset, k), series_coefficient(h, n, k))
            for k in range(dmax + 1)]
    return HilbertReport(rows)


# ---------------------------------------------------------------------------
# linear systems of parameters


def lsop_from_lambda(ring, chi):
    """The n degree-two elements theta_j = sum_i chi(i)[j] * v_i over the
    rank-1 elements i of the poset."""
    poset = ring.poset
    vertices = sorted(poset.vertices())
    missing = [v for v in vertices if v not in chi.vectors]
    if missing:
        raise RingError(f"characteristic map misses vertices {missing}")
    out = []
    for j in range(chi.n):
        terms = [(((v, 1),), chi.vectors[v][j]) for v in vertices]
        out.append(ring.element(terms))
    return out


# ---------------------------------------------------------------------------
# text format


def format_element(element):
    """Canonical text form: terms ordered by degree then lexicographically,
    each term 'c * x{id}^a * x{id}^a ...'."""
    if element.is_zero():
        return "0"
    poset = element.ring.poset
    items = sorted(element.terms.items(),
                   key=lambda mc: (monomial_degree(poset, mc[0]),
                                   tuple(x for x, _ in mc[0]),
                                   tuple(a for _, a in mc[0])))
    parts = []
    for mono, coeff in items:
        factors = [f"x{x}^{a}" if a > 1 else f"x{x}" for x, a in mono]
        body = " * ".join([str(coeff)] + factors) if factors else str(coeff)
        parts.append(body)
    return " + ".join(parts)


def parse_element(ring, text):
    """Parse the text format back into a RingElement."""
    text = text.strip()
    if text == "0":
        return ring.zero()
    terms = []
    for chunk in text.replace("- ", "+ -").split("+"):
        chunk = chunk.strip()
        if not chunk:
            continue
        factors = [f.strip() for f in chunk.split("*")]
        coeff = Fraction(factors[0])
        pairs = []
        for f in factors[1:]:
            if not f.startswith("x"):
                raise RingError(f"bad factor {f!r}")
            if "^" in f:
                gen, exp = f[1:].split("^")
                pairs.append((int(gen), int(exp)))
            else:
                pairs.append((int(f[1:]), 1))
        terms.append((pairs, coeff))
    return ring.element(terms)
