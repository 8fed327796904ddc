"""Graded-commutative polynomial rings over F_p and their ideal calculus.

A ring is presented by named generators (with a degree and a parity) and
homogeneous relations.  Odd generators anticommute and square to zero when
``p > 2``; for ``p = 2`` every generator is treated as even.

Ideal-theoretic questions (Gröbner bases, membership, radicals,
contraction along homomorphisms) are answered in commutative rings only.
Graded-commutative rings are first passed through
:func:`commutative_reduction`, which kills the odd generators; this does
not change the homogeneous prime spectrum because odd elements are
nilpotent.
"""
from __future__ import annotations

import re
import threading
from dataclasses import dataclass

from . import groebner as gb
from .field import Field, as_field


class ParseError(ValueError):
    def __init__(self, message, column=None):
        super().__init__(message if column is None else f"{message} (column {column})")
        self.column = column


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int
    parity: str = "even"  # "even" | "odd"


class GradedPolyRing:
    """Polynomial ring ``F_p[g_1, ..., g_n] / (relations)`` with a grading."""

    def __init__(self, field, generators, relations=(), name=None):
        self.field: Field = as_field(field)
        if not self.field.is_prime_field:
            raise ValueError("rings are defined over prime fields")
        gens = []
        for g in generators:
            if isinstance(g, Generator):
                gname, deg, par = g.name, g.degree, g.parity
            else:
                gname, deg, *rest = g
                par = rest[0] if rest else ("odd" if deg % 2 else "even")
            if deg == 0:
                raise ValueError(f"generator {gname} has degree 0")
            if par not in ("even", "odd"):
                raise ValueError(f"bad parity {par!r}")
            if self.field.p == 2:
                par = "even"
            gens.append(Generator(gname, int(deg), par))
        names = [g.name for g in gens]
        if len(set(names)) != len(names):
            raise ValueError("generator names must be unique")
        self.generators = tuple(gens)
        self.name = name
        self._index = {g.name: i for i, g in enumerate(gens)}
        self.relations = ()
        self.relations = tuple(self._coerce(r) for r in relations)
        for r in self.relations:
            if not r.is_homogeneous():
                raise ValueError(f"relation {r} is not homogeneous")
        self._rel_basis = None
        self._lock = threading.Lock()

    # basic data
    @property
    def p(self) -> int:
        return self.field.p

    @property
    def ngens(self) -> int:
        return len(self.generators)

    @property
    def names(self):
        return [g.name for g in self.generators]

    @property
    def degrees(self):
        return [g.degree for g in self.generators]

    def is_commutative(self) -> bool:
        return all(g.parity == "even" for g in self.generators)

    def odd_mask(self):
        return [g.parity == "odd" for g in self.generators]

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown generator {name!r}") from None

    def __repr__(self):
        body = ", ".join(self.names)
        rel = f" / ({', '.join(map(str, self.relations))})" if self.relations else ""
        return f"GF({self.p})[{body}]{rel}"

    def signature(self):
        return (self.p, self.generators, tuple(sorted(map(str, self.relations))))

    def __eq__(self, other):
        return isinstance(other, GradedPolyRing) and self.signature() == other.signature()

    def __hash__(self):
        return hash(self.signature())

    # construction of elements
    def zero(self):
        return Polynomial(self, {})

    def one(self):
        return Polynomial(self, {(0,) * self.ngens: 1})

    def gen(self, i):
        if isinstance(i, str):
            i = self.index(i)
        e = [0] * self.ngens
        e[i] = 1
        return Polynomial(self, {tuple(e): 1})

    def gens(self):
        return [self.gen(i) for i in range(self.ngens)]

    def monomial(self, exp, coeff=1):
        return Polynomial(self, {tuple(exp): coeff})

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(text, self)

    def _coerce(self, x):
        if isinstance(x, Polynomial):
            if x.ring is not self and x.ring.names != self.names:
                raise ValueError("polynomial from a different ring")
            return Polynomial(self, x.terms)
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, int):
            return Polynomial(self, {(0,) * self.ngens: x})
        raise TypeError(f"cannot coerce {x!r}")

    def exp_degree(self, exp) -> int:
        return sum(e * g.degree for e, g in zip(exp, self.generators))

    def monomials_of_degree(self, d: int):
        """Monomial basis of the free graded-commutative algebra in degree ``d``
        (odd exponents at most 1).  Requires positive generator degrees."""
        if any(g.degree <= 0 for g in self.generators):
            raise ValueError("monomial enumeration needs positive degrees")
        out = []
        odd = self.odd_mask()

        def rec(i, remaining, acc):
            if i == self.ngens:
                if remaining == 0:
                    out.append(tuple(acc))
                return
            deg = self.generators[i].degree
            top = 1 if odd[i] else remaining // deg
            for e in range(min(top, remaining // deg), -1, -1):
                rec(i + 1, remaining - e * deg, acc + [e])

        rec(0, d, [])
        out.sort(key=gb.grevlex_key, reverse=True)
        return out

    # relations
    def relation_basis(self):
        """Reduced Gröbner basis of the relation ideal (commutative rings only)."""
        if self._rel_basis is None:
            with self._lock:
                if self._rel_basis is None:
                    if not self.is_commutative():
                        raise ValueError("relation basis needs a commutative ring; reduce first")
                    self._rel_basis = gb.buchberger([r.terms for r in self.relations],
                                                    gb.grevlex_key, self.p)
        return self._rel_basis

    def normal_form(self, f: "Polynomial") -> "Polynomial":
        if not self.relations:
            return f
        if not self.is_commutative():
            return f
        return Polynomial(self, gb.normal_form(f.terms, self.relation_basis(), gb.grevlex_key, self.p))

    def hilbert_dims(self, top: int):
        """Dimensions of the graded pieces in degrees 0..top (commutative rings)."""
        dims = []
        for d in range(top + 1):
            if self.relations and self.is_commutative():
                basis = self.relation_basis()
                lead = [gb.leading(g, gb.grevlex_key)[0] for g in basis]
                mons = [m for m in self.monomials_of_degree(d)
                        if not any(all(a <= b for a, b in zip(l, m)) for l in lead)]
                dims.append(len(mons))
            else:
                dims.append(len(self.monomials_of_degree(d)))
        return dims


def _sign(a, b, odd):
    """Sign from moving the odd letters of x^b past those of x^a."""
    s = 0
    count_after = 0
    # for each odd generator i in b, count odd generators j > i present in a
    for i in range(len(a) - 1, -1, -1):
        if odd[i]:
            if b[i]:
                s += count_after * b[i]
            count_after += a[i]
    return -1 if s % 2 else 1


class Polynomial:
    """Element of a :class:`GradedPolyRing`; immutable."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: GradedPolyRing, terms: dict):
        p = ring.p
        clean = {}
        for m, c in terms.items():
            c = int(c) % p
            if c:
                clean[tuple(int(e) for e in m)] = c
        self.ring = ring
        self.terms = clean

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring._coerce(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def degrees(self):
        return {self.ring.exp_degree(m) for m in self.terms}

    def is_homogeneous(self):
        return len(self.degrees()) <= 1

    @property
    def degree(self):
        ds = self.degrees()
        if len(ds) != 1:
            raise ValueError("degree of a zero or inhomogeneous polynomial")
        return next(iter(ds))

    def __add__(self, other):
        other = self.ring._coerce(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            t[m] = t.get(m, 0) + c
        return Polynomial(self.ring, t)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self.ring._coerce(other))

    def __rsub__(self, other):
        return self.ring._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            return Polynomial(self.ring, {m: c * other for m, c in self.terms.items()})
        other = self.ring._coerce(other)
        odd = self.ring.odd_mask()
        any_odd = any(odd)
        t: dict = {}
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                m = tuple(x + y for x, y in zip(a, b))
                if any_odd:
                    if any(o and e > 1 for o, e in zip(odd, m)):
                        continue
                    s = _sign(a, b, odd)
                else:
                    s = 1
                t[m] = t.get(m, 0) + s * ca * cb
        return self.ring.normal_form(Polynomial(self.ring, t))

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return self.ring._coerce(other) * self

    def __pow__(self, n: int):
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def evaluate(self, point, field=None):
        """Evaluate at a point with coordinates in ``field`` (an extension of F_p)."""
        field = as_field(field) if field is not None else self.ring.field
        total = 0
        for m, c in self.terms.items():
            v = field.embed(c)
            for x, e in zip(point, m):
                if e:
                    v = field.mul(v, field.pow(int(x), e))
            total = field.add(total, v)
        return total

    def substitute(self, images, target: GradedPolyRing):
        """Image under the algebra map sending generator i to ``images[i]``."""
        out = target.zero()
        for m, c in self.terms.items():
            term = target._coerce(c)
            for i, e in enumerate(m):
                for _ in range(e):
                    term = term * images[i]
            out = out + term
        return out

    def variables(self):
        used = set()
        for m in self.terms:
            used.update(i for i, e in enumerate(m) if e)
        return used

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda mc: gb.grevlex_key(mc[0]), reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            factors = []
            for name, e in zip(self.ring.names, m):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(factors))
            else:
                parts.append(f"{c}*" + "*".join(factors))
        return " + ".join(parts)

    __repr__ = __str__


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9']*)|(\^)|(\*)|(\+)|(-)|(\()|(\)))")


def parse_polynomial(text: str, ring: GradedPolyRing) -> Polynomial:
    """Parse ``3*x1^2*x2 + eta1*eta2``-style text; parentheses group sums."""
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", pos + 1)
        kind = m.lastindex
        tokens.append((kind, m.group(kind), m.start(kind) + 1))
        pos = m.end()
    tokens.append((0, None, len(text) + 1))
    idx = 0

    def peek():
        return tokens[idx]

    def take(kind=None):
        nonlocal idx
        tok = tokens[idx]
        if kind is not None and tok[0] != kind:
            raise ParseError(f"unexpected token {tok[1]!r}", tok[2])
        idx += 1
        return tok

    def expr():
        sign = 1
        if peek()[0] in (5, 6):
            sign = -1 if take()[0] == 6 else 1
        acc = term() * sign
        while peek()[0] in (5, 6):
            s = -1 if take()[0] == 6 else 1
            acc = acc + term() * s
        return acc

    def term():
        acc = factor()
        while peek()[0] == 4:
            take()
            acc = acc * factor()
        return acc

    def factor():
        kind, val, col = peek()
        if kind == 1:
            take()
            base = ring._coerce(int(val))
        elif kind == 2:
            take()
            if val not in ring._index:
                raise ParseError(f"unknown generator {val!r}", col)
            base = ring.gen(val)
        elif kind == 7:
            take()
            base = expr()
            take(8)
        else:
            raise ParseError(f"unexpected token {val!r}", col)
        if peek()[0] == 3:
            take()
            e = take(1)
            base = base ** int(e[1])
        return base

    if tokens[0][0] == 0:
        raise ParseError("empty polynomial", 1)
    result = expr()
    if peek()[0] != 0:
        raise ParseError(f"trailing input {peek()[1]!r}", peek()[2])
    return result


class RingHom:
    """Degree-preserving algebra map given by generator images."""

    def __init__(self, source: GradedPolyRing, target: GradedPolyRing, images, check=True):
        self.source = source
        self.target = target
        self.images = tuple(target._coerce(x) for x in images)
        if len(self.images) != source.ngens:
            raise ValueError("one image per source generator is required")
        if check:
            self._check()

    def _check(self):
        for g, img in zip(self.source.generators, self.images):
            if img and (not img.is_homogeneous() or img.degree != g.degree):
                raise ValueError(f"image of {g.name} is not homogeneous of degree {g.degree}")
        for rel in self.source.relations:
            im = self(rel)
            if im and self.target.is_commutative():
                im = self.target.normal_form(im)
            if im:
                raise ValueError(f"relation {rel} does not map to zero")

    def __call__(self, f: Polynomial) -> Polynomial:
        f = self.source._coerce(f)
        return f.substitute(self.images, self.target)

    def compose(self, other: "RingHom") -> "RingHom":
        """``self ∘ other``."""
        return RingHom(other.source, self.target, [self(x) for x in other.images])

    def __repr__(self):
        body = ", ".join(f"{n} -> {img}" for n, img in zip(self.source.names, self.images))
        return f"RingHom({body})"


def identity_hom(ring):
    return RingHom(ring, ring, ring.gens(), check=False)


def commutative_reduction(ring: GradedPolyRing):
    """Quotient by the odd generators; the identity when the ring is commutative."""
    if ring.is_commutative():
        return ring, identity_hom(ring)
    keep = [g for g in ring.generators if g.parity == "even"]
    red = GradedPolyRing(ring.field, keep, (), name=ring.name)
    images = []
    for g in ring.generators:
        images.append(red.gen(g.name) if g.parity == "even" else red.zero())
    # relations are pushed through the generator images, zeros dropped
    rels = []
    for r in ring.relations:
        im = r.substitute(images, red)
        if im:
            rels.append(im)
    if rels:
        red = GradedPolyRing(ring.field, keep, rels, name=ring.name)
        images = [red._coerce(x) for x in images]
    return red, RingHom(ring, red, images, check=False)


class HomogeneousIdeal:
    """Ideal generated by homogeneous polynomials, with a cached Gröbner basis."""

    order = "grevlex"

    def __init__(self, ring: GradedPolyRing, gens=()):
        self.ring = ring
        gl = [ring._coerce(g) for g in gens]
        for g in gl:
            if g and not g.is_homogeneous():
                raise ValueError(f"generator {g} is not homogeneous")
        self.gens = tuple(g for g in gl if g)
        self._full = None
        self._gb = None
        self._lock = threading.Lock()

    def __repr__(self):
        return f"({', '.join(map(str, self.gens))})"

    def full_basis(self, budget: int = gb.DEFAULT_PAIR_BUDGET):
        """Gröbner basis of generators plus ring relations (raw term dicts)."""
        if self._full is None:
            with self._lock:
                if self._full is None:
                    _require_commutative(self.ring)
                    gens = [g.terms for g in self.gens] + [r.terms for r in self.ring.relations]
                    self._full = gb.buchberger(gens, gb.grevlex_key, self.ring.p, budget)
        return self._full

    def groebner(self):
        if self._gb is None:
            self._gb = groebner(self)
        return self._gb

    def is_unit(self):
        return gb.is_unit_basis(self.full_basis())

    def is_zero(self):
        return not self.groebner()

    def __add__(self, other):
        return HomogeneousIdeal(self.ring, self.gens + other.gens)

    def __mul__(self, other):
        return HomogeneousIdeal(self.ring, [a * b for a in self.gens for b in other.gens])

    def contains(self, f) -> bool:
        return membership(f, self)

    def key(self):
        """Canonical string form of the reduced Gröbner basis."""
        return "; ".join(str(g) for g in self.groebner())


def _require_commutative(ring):
    if not ring.is_commutative():
        raise ValueError("ideal operations need a commutative ring; apply commutative_reduction")


def groebner(ideal: HomogeneousIdeal):
    """Reduced grevlex Gröbner basis of the ideal modulo the ring relations.

    Basis elements that already lie in the relation ideal are omitted.
    """
    ring = ideal.ring
    basis = ideal.full_basis()
    rel_basis = ring.relation_basis() if ring.relations else []
    out = []
    for g in basis:
        if rel_basis and not gb.normal_form(g, rel_basis, gb.grevlex_key, ring.p):
            continue
        out.append(Polynomial(ring, g))
    return out


def membership(f, ideal: HomogeneousIdeal) -> bool:
    ring = ideal.ring
    _require_commutative(ring)
    f = ring._coerce(f)
    if not f:
        return True
    return not gb.normal_form(f.terms, ideal.full_basis(), gb.grevlex_key, ring.p)


def radical_membership(f, ideal: HomogeneousIdeal, budget: int = gb.DEFAULT_PAIR_BUDGET) -> bool:
    """``f ∈ √I`` via ``1 ∈ I + (1 - t f)`` in the ring extended by ``t``."""
    ring = ideal.ring
    _require_commutative(ring)
    f = ring._coerce(f)
    if not f:
        return True
    gens = [g.terms for g in ideal.gens] + [r.terms for r in ring.relations]
    ext = lambda poly: {m + (0,): c for m, c in poly.items()}
    aux = {(0,) * ring.ngens + (0,): 1}
    for m, c in f.terms.items():
        aux[m + (1,)] = (-c) % ring.p
    basis = gb.buchberger([ext(g) for g in gens] + [aux], gb.grevlex_key, ring.p, budget)
    return gb.is_unit_basis(basis)


def ideal_leq_radical(a: HomogeneousIdeal, b: HomogeneousIdeal) -> bool:
    """``a ⊆ √b``."""
    return all(radical_membership(g, b) for g in a.gens)


def _graph_basis(phi: RingHom, extra_target=(), budget=gb.DEFAULT_PAIR_BUDGET):
    src, tgt = phi.source, phi.target
    _require_commutative(src)
    _require_commutative(tgt)
    nt, ns = tgt.ngens, src.ngens
    lift_t = lambda poly: {m + (0,) * ns: c for m, c in poly.items()}
    gens = [lift_t(g.terms) for g in extra_target]
    gens += [lift_t(r.terms) for r in tgt.relations]
    for i, img in enumerate(phi.images):
        g = {m + (0,) * ns: (-c) % tgt.p for m, c in img.terms.items()}
        e = [0] * (nt + ns)
        e[nt + i] = 1
        g[tuple(e)] = (g.get(tuple(e), 0) + 1) % tgt.p
        gens.append({m: c for m, c in g.items() if c})
    key = gb.block_key(nt)
    return gb.buchberger(gens, key, tgt.p, budget), key


def contract(phi: RingHom, J: HomogeneousIdeal | None = None) -> HomogeneousIdeal:
    """``φ⁻¹(J)`` by elimination over the graph ideal; ``J = None`` gives the kernel."""
    tgt, src = phi.target, phi.source
    nt = tgt.ngens
    extra = J.gens if J is not None else ()
    basis, _ = _graph_basis(phi, extra)
    gens = []
    for g in basis:
        if all(not any(m[:nt]) for m in g):
            gens.append(Polynomial(src, {m[nt:]: c for m, c in g.items()}))
    return HomogeneousIdeal(src, gens)


def kernel(phi: RingHom) -> HomogeneousIdeal:
    return contract(phi, None)


def in_image(phi: RingHom, s: Polynomial) -> bool:
    """Subalgebra membership: is ``s`` in the image of ``phi``?"""
    tgt = phi.target
    nt = tgt.ngens
    basis, key = _graph_basis(phi)
    lifted = {m + (0,) * phi.source.ngens: c for m, c in tgt._coerce(s).terms.items()}
    nf = gb.normal_form(lifted, basis, key, tgt.p)
    return all(not any(m[:nt]) for m in nf)


def extend_ideal(phi: RingHom, a: HomogeneousIdeal) -> HomogeneousIdeal:
    """The ideal ``φ(a)·S`` of the target."""
    return HomogeneousIdeal(phi.target, [phi(g) for g in a.gens])


def polynomial_ring(p, names, degrees=None, relations=(), name=None) -> GradedPolyRing:
    """Convenience constructor for commutative rings."""
    if isinstance(names, str):
        names = [n.strip() for n in names.split(",") if n.strip()]
    degrees = degrees or [1] * len(names)
    gens = [Generator(n, d, "even") for n, d in zip(names, degrees)]
    ring = GradedPolyRing(p, gens, (), name=name)
    if relations:
        ring = GradedPolyRing(p, gens, [ring.parse(r) if isinstance(r, str) else r for r in relations],
                              name=name)
    return ring
