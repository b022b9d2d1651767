"""Reduced Groebner bases over a prime field.

Buchberger's algorithm with the Gebauer-Moller pair criteria and the
normal (minimum-lcm) selection strategy, block elimination orders,
elimination ideals, principal-generator extraction, and saturation of
an ideal by a monomial via an auxiliary inverse variable.  The reduced
basis is unique for a fixed order, so results are reproducible no
matter how the input generators are listed.
"""

from __future__ import annotations

from algval.ffpoly import Polynomial, PrimeField


class NotPrincipalError(RuntimeError):
    """An elimination ideal expected to be principal is not; the queried
    set was not a circuit, or the input ideal was not prime."""


class MonomialOrder:
    """Total multiplicative well-order on exponent vectors, realized as a
    sort key (largest key = leading monomial)."""

    def key(self, expo):
        raise NotImplementedError


class Lex(MonomialOrder):
    def __init__(self, n, positions=None):
        self.n = n
        self.positions = tuple(positions) if positions is not None else tuple(range(n))

    def key(self, expo):
        return tuple(expo[i] for i in self.positions)

    def __repr__(self):
        return f"Lex({self.n}, {self.positions})"


class GradedLex(MonomialOrder):
    def __init__(self, n, positions=None):
        self.n = n
        self.positions = tuple(positions) if positions is not None else tuple(range(n))

    def key(self, expo):
        return (sum(expo), *(expo[i] for i in self.positions))

    def __repr__(self):
        return f"GradedLex({self.n}, {self.positions})"


class BlockElimination(MonomialOrder):
    """Lex on the eliminated block, tie-broken by graded-lex on the kept
    block; leading monomials free of eliminated variables certify
    membership in the elimination subring."""

    def __init__(self, eliminated, n):
        self.n = n
        self.eliminated = tuple(sorted(eliminated))
        self.kept = tuple(i for i in range(n) if i not in set(self.eliminated))

    def key(self, expo):
        return (
            tuple(expo[i] for i in self.eliminated)
            + (sum(expo[i] for i in self.kept),)
            + tuple(expo[i] for i in self.kept)
        )

    def __repr__(self):
        return f"BlockElimination({self.eliminated}, {self.n})"


class Ideal:
    """Finitely generated ideal of F_p[x_1..x_n].  An empty generator
    tuple encodes the zero ideal."""

    __slots__ = ("field", "vars", "generators")

    def __init__(self, field: PrimeField, vars, generators):
        self.field = field
        self.vars = tuple(vars)
        gens = tuple(generators)
        for g in gens:
            if g.is_zero():
                raise ValueError("ideal generators must be nonzero")
            if g.field != field or g.vars != self.vars:
                raise ValueError("generator context mismatch")
        self.generators = gens

    @classmethod
    def from_strings(cls, p, vars, texts):
        from algval.ffpoly import parse_polynomial

        field = PrimeField(p)
        gens = []
        for text in texts:
            f = parse_polynomial(text, vars, p)
            if not f.is_zero():
                gens.append(f)
        return cls(field, vars, gens)

    @property
    def n(self):
        return len(self.vars)

    def is_zero(self):
        return not self.generators

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        if self.field != other.field or self.vars != other.vars:
            return False
        order = GradedLex(self.n)
        return buchberger(self.generators, order) == buchberger(other.generators, order)

    def __repr__(self):
        return f"Ideal(p={self.field.p}, <{', '.join(map(str, self.generators))}>)"


def _lcm(a, b):
    return tuple(x if x >= y else y for x, y in zip(a, b))


def _quot(a, b):
    out = []
    for x, y in zip(a, b):
        if x < y:
            return None
        out.append(x - y)
    return tuple(out)


def _coprime(a, b):
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def leading_monomial(f: Polynomial, order: MonomialOrder):
    return max(f.terms, key=order.key)


def leading_term(f: Polynomial, order: MonomialOrder):
    m = leading_monomial(f, order)
    return m, f.terms[m]


def monic(f: Polynomial, order: MonomialOrder) -> Polynomial:
    _, c = leading_term(f, order)
    return f if c == 1 else f * f.field.inv(c)


def normal_form(f: Polynomial, basis, order: MonomialOrder) -> Polynomial:
    """Remainder of f on division by the listed polynomials: no term of
    the result is divisible by any of their leading monomials.  Unique
    when the list is a Groebner basis for the order."""
    reducers = []
    for g in basis:
        m, c = leading_term(g, order)
        reducers.append((m, f.field.inv(c), g.terms))
    p = f.field.p
    work = dict(f.terms)
    remainder = {}
    while work:
        m = max(work, key=order.key)
        c = work.pop(m)
        for lm, lc_inv, terms in reducers:
            q = _quot(m, lm)
            if q is None:
                continue
            factor = c * lc_inv % p
            for mono, coeff in terms.items():
                if mono == lm:
                    continue
                key = tuple(a + b for a, b in zip(mono, q))
                nc = (work.get(key, 0) - factor * coeff) % p
                if nc:
                    work[key] = nc
                elif key in work:
                    del work[key]
            break
        else:
            remainder[m] = c
    return Polynomial(f.field, f.vars, remainder)


def _s_polynomial(f, g, order):
    mf, cf = leading_term(f, order)
    mg, cg = leading_term(g, order)
    lcm = _lcm(mf, mg)
    p = f.field.p
    qf, qg = _quot(lcm, mf), _quot(lcm, mg)
    left = {tuple(a + b for a, b in zip(e, qf)): c * f.field.inv(cf)
            for e, c in f.terms.items()}
    out = dict(left)
    inv_g = f.field.inv(cg)
    for e, c in g.terms.items():
        key = tuple(a + b for a, b in zip(e, qg))
        out[key] = (out.get(key, 0) - c * inv_g) % p
    return Polynomial(f.field, f.vars, out)


def buchberger(gens, order: MonomialOrder):
    """The unique reduced Groebner basis (monic leads, fully
    inter-reduced, sorted by ascending leading monomial).  An empty list
    encodes the zero ideal."""
    work = [g for g in gens if not g.is_zero()]
    if not work:
        return []
    field, vars = work[0].field, work[0].vars
    for g in work[1:]:
        if g.field != field or g.vars != vars:
            raise ValueError("generator context mismatch")

    # pre-reduce the input list against itself until stable
    while True:
        reduced = []
        for i, g in enumerate(work):
            r = normal_form(g, reduced, order)
            if not r.is_zero():
                reduced.append(monic(r, order))
        if reduced == work:
            break
        work = reduced

    basis = list(work)
    lead = [leading_monomial(g, order) for g in basis]

    def update(G, pairs, h):
        # Gebauer-Moller criteria for discarding unneeded critical pairs
        mh = lead[h]
        C, D = set(G), set()
        while C:
            g = C.pop()
            lcm_hg = _lcm(mh, lead[g])

            def lcm_divides(k):
                return _quot(lcm_hg, _lcm(mh, lead[k])) is not None

            if _coprime(mh, lead[g]) or (
                not any(lcm_divides(k) for k in C)
                and not any(lcm_divides(k) for _, k in D)
            ):
                D.add((h, g))
        E = {(h, g) for h, g in D if not _coprime(mh, lead[g])}
        kept = set()
        for i, j in pairs:
            lcm_ij = _lcm(lead[i], lead[j])
            if (
                _quot(lcm_ij, mh) is None
                or _lcm(lead[i], mh) == lcm_ij
                or _lcm(lead[j], mh) == lcm_ij
            ):
                kept.add((i, j))
        kept |= E
        newG = {g for g in G if _quot(lead[g], mh) is None}
        newG.add(h)
        return newG, kept

    G, pairs = set(), set()
    todo = set(range(len(basis)))
    while todo:
        h = min(todo, key=lambda i: (order.key(lead[i]), i))
        todo.remove(h)
        G, pairs = update(G, pairs, h)

    while pairs:
        i, j = min(pairs, key=lambda ij: (order.key(_lcm(lead[ij[0]], lead[ij[1]])),) + ij)
        pairs.remove((i, j))
        s = _s_polynomial(basis[i], basis[j], order)
        current = sorted(G, key=lambda k: (order.key(lead[k]), k))
        r = normal_form(s, [basis[k] for k in current], order)
        if r.is_zero():
            continue
        r = monic(r, order)
        basis.append(r)
        lead.append(leading_monomial(r, order))
        G, pairs = update(G, pairs, len(basis) - 1)

    # minimalize: drop members whose lead is divisible by another lead
    chosen = sorted(G, key=lambda k: (order.key(lead[k]), k))
    minimal = [
        k for k in chosen
        if not any(m != k and _quot(lead[k], lead[m]) is not None for m in chosen)
    ]
    # tail-reduce each member against the others
    final = [basis[k] for k in minimal]
    for idx in range(len(final)):
        others = final[:idx] + final[idx + 1:]
        final[idx] = monic(normal_form(final[idx], others, order), order)
    final.sort(key=lambda g: order.key(leading_monomial(g, order)))
    return final


def eliminate(ideal: Ideal, keep):
    """Reduced Groebner basis of the intersection with the subring on the
    kept variables (empty list iff that intersection is zero)."""
    keep = frozenset(keep)
    n = ideal.n
    if not keep <= set(range(n)):
        raise ValueError(f"keep set {sorted(keep)} out of range for n={n}")
    if ideal.is_zero():
        return []
    eliminated = tuple(i for i in range(n) if i not in keep)
    if not eliminated:
        return buchberger(ideal.generators, GradedLex(n))
    gb = buchberger(ideal.generators, BlockElimination(eliminated, n))
    return [g for g in gb if g.support() <= keep]


def principal_generator(elim_gens) -> Polynomial:
    """The unique monic generator of a principal elimination ideal."""
    if len(elim_gens) != 1:
        raise NotPrincipalError(
            f"expected a single generator, found {len(elim_gens)}"
        )
    return elim_gens[0]


def saturate(ideal: Ideal, monomial) -> Ideal:
    """The saturation (I : m^inf), via a fresh inverse variable w with
    w*m - 1 adjoined and then eliminated."""
    monomial = tuple(monomial)
    if len(monomial) != ideal.n or any(e < 0 for e in monomial):
        raise ValueError(f"bad monomial exponent vector {monomial}")
    if ideal.is_zero():
        return ideal
    w = "w_"
    while w in ideal.vars:
        w += "_"
    ext_vars = ideal.vars + (w,)
    field = ideal.field
    lifted = [
        Polynomial(field, ext_vars,
                   {e + (0,): c for e, c in g.terms.items()})
        for g in ideal.generators
    ]
    inverse = Polynomial(
        field, ext_vars,
        {monomial + (1,): 1, (0,) * (ideal.n + 1): -1},
    )
    ext = Ideal(field, ext_vars, lifted + [inverse])
    kept = eliminate(ext, range(ideal.n))
    stripped = [
        Polynomial(field, ideal.vars, {e[:-1]: c for e, c in g.terms.items()})
        for g in kept
    ]
    return Ideal(field, ideal.vars, stripped)
