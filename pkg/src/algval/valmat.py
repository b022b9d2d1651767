"""Valuated matroids presented by circuits.

Each circuit polynomial yields a vector of minimum p-adic exponent
valuations; shifting by multiples of the all-ones vector does not
change the class, so one canonical representative (minimum finite entry
0) is kept per circuit.  The basis valuation is recovered from the
exchange identity

    value(B) + C_u = value(B - u + v) + C_v

which ties the values of adjacent bases to the entries of the circuit
spanned inside B + {v}; the identity holds with both sides infinite
exactly when B - u + v is not a basis.  Duality, cocircuits, minors,
and executable checks of the circuit axioms live here as well.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from algval.algmat import Matroid
from algval.ffpoly import INF, CircuitVector, circuit_vector


class InconsistentValuationError(RuntimeError):
    """Two propagation paths assign different values to one basis; the
    supplied circuit data does not come from a valuated matroid."""


class Valuation:
    """Integer value per basis, stored in distinguished form: the minimum
    over all bases is 0.  labels maps ground-set positions to original
    element ids (identity except for minors)."""

    __slots__ = ("matroid", "values", "labels")

    def __init__(self, matroid: Matroid, values, labels=None):
        self.matroid = matroid
        vals = {frozenset(b): int(v) for b, v in values.items()}
        if set(vals) != set(matroid.bases):
            raise ValueError("values must cover exactly the bases of the matroid")
        shift = min(vals.values())
        if shift:
            vals = {b: v - shift for b, v in vals.items()}
        self.values = vals
        self.labels = tuple(labels) if labels is not None else tuple(range(matroid.n))

    @property
    def n(self):
        return self.matroid.n

    def value(self, basis) -> int:
        return self.values[frozenset(basis)]

    def items(self):
        """(basis, value) pairs in deterministic order."""
        return [(b, self.values[b]) for b in self.matroid.bases]

    def __eq__(self, other):
        return (isinstance(other, Valuation)
                and self.matroid == other.matroid
                and self.values == other.values
                and self.labels == other.labels)

    def __repr__(self):
        return f"Valuation(rank={self.matroid.rank}, bases={len(self.values)})"


def valuated_circuits(circuit_records, p):
    """One canonical circuit vector per circuit polynomial, sorted by
    support then entries."""
    out = [circuit_vector(rec.polynomial).canonical() for rec in circuit_records]
    return sorted(out, key=lambda c: c.sort_key())


def valuation_from_circuits(matroid: Matroid, vcircuits, seed="lex") -> Valuation:
    """Propagate basis values across the exchange graph from a seed basis,
    then shift so the minimum is 0.

    Every exchange edge is verified afterwards; inconsistency means the
    circuit family was corrupted (it cannot arise from an actual ideal
    or matrix input).
    """
    by_support = {c.support: c.canonical() for c in vcircuits}
    matroid_circuits = set(matroid.circuits())
    if set(by_support) != matroid_circuits:
        missing = sorted(map(sorted, matroid_circuits - set(by_support)))
        extra = sorted(map(sorted, set(by_support) - matroid_circuits))
        raise ValueError(
            f"circuit covers do not match the matroid (missing {missing}, "
            f"unexpected {extra})"
        )
    if seed not in ("lex", "given"):
        raise ValueError(f"unknown seed rule {seed!r}")
    # bases are stored sorted, so both rules pick the first entry
    start = matroid.bases[0]
    values = {start: 0}
    queue = deque([start])
    ground = set(range(matroid.n))
    while queue:
        b = queue.popleft()
        for v in ground - b:
            circ = by_support[matroid.fundamental_circuit(b, v)]
            cv = circ[v]
            for u in circ.support - {v}:
                neighbor = b - {u} | {v}
                val = values[b] + circ[u] - cv
                if neighbor not in values:
                    values[neighbor] = val
                    queue.append(neighbor)
    if len(values) != len(matroid.bases):
        raise InconsistentValuationError("exchange graph left bases unreached")
    _verify_exchange_identity(matroid, values, by_support)
    return Valuation(matroid, values)


def _verify_exchange_identity(matroid, values, by_support):
    ground = set(range(matroid.n))
    for b in matroid.bases:
        for v in ground - b:
            circ = by_support[matroid.fundamental_circuit(b, v)]
            cv = circ[v]
            for u in b:
                neighbor = b - {u} | {v}
                if circ[u] == INF:
                    if matroid.is_basis(neighbor):
                        raise InconsistentValuationError(
                            f"{sorted(neighbor)} is a basis but the circuit in "
                            f"{sorted(b)}+{{{v}}} skips {u}"
                        )
                    continue
                if not matroid.is_basis(neighbor):
                    raise InconsistentValuationError(
                        f"{sorted(neighbor)} should be a basis: the circuit in "
                        f"{sorted(b)}+{{{v}}} has finite entry at {u}"
                    )
                if values[b] + circ[u] != values[neighbor] + cv:
                    raise InconsistentValuationError(
                        f"exchange identity fails for basis {sorted(b)}, "
                        f"u={u}, v={v}"
                    )


def fundamental_valuated_circuit(valuation: Valuation, basis, v) -> CircuitVector:
    """Canonical circuit vector supported on the unique circuit inside
    basis + {v}, rebuilt from basis values via the exchange identity."""
    basis = frozenset(basis)
    support = valuation.matroid.fundamental_circuit(basis, v)
    entries = [INF] * valuation.n
    entries[v] = 0
    vb = valuation.value(basis)
    for u in support - {v}:
        entries[u] = valuation.value(basis - {u} | {v}) - vb
    return CircuitVector(entries).canonical()


def valuated_circuit_family(valuation: Valuation):
    """All canonical valuated circuits, recovered from the valuation by
    sweeping fundamental circuits over every (basis, outside element)."""
    seen = {}
    ground = set(range(valuation.n))
    for b in valuation.matroid.bases:
        for v in ground - b:
            c = fundamental_valuated_circuit(valuation, b, v)
            seen[c.support] = c
    return sorted(seen.values(), key=lambda c: c.sort_key())


def dual(valuation: Valuation) -> Valuation:
    """Complement the bases and transport the values; the minimum is
    preserved, so the result is already in distinguished form."""
    ground = frozenset(range(valuation.n))
    values = {ground - b: v for b, v in valuation.values.items()}
    return Valuation(valuation.matroid.dual(), values, labels=valuation.labels)


def cocircuits(valuation: Valuation):
    """Canonical valuated circuits of the dual; their supports are the
    complements of the hyperplanes."""
    return valuated_circuit_family(dual(valuation))


def minor(valuation: Valuation, delete=(), contract=()) -> Valuation:
    """Valuated minor: delete one set, contract another (disjoint).

    Bases of the minor are completed to bases of the original matroid by
    a fixed auxiliary set (a maximal independent subset of the
    contracted set, padded from the deleted set when deletion drops the
    rank); values are inherited from the completed bases and then
    re-normalized.  Different completions change the values by a common
    constant only, so the distinguished representative is well defined.
    The result is relabeled to a dense ground set, with labels tracking
    the original elements.
    """
    delete = frozenset(delete)
    contract = frozenset(contract)
    if delete & contract:
        raise ValueError(
            f"delete and contract sets overlap: {sorted(delete & contract)}"
        )
    m = valuation.matroid
    ground = frozenset(range(m.n))
    if not (delete | contract) <= ground:
        raise ValueError("delete/contract sets outside the ground set")
    keep = sorted(ground - delete - contract)

    # fixed completion: greedy basis of the contracted set, then greedy
    # padding from the deleted set until the kept-plus-completion spans
    b_f = set()
    for i in sorted(contract):
        if m.rank_of(b_f | {i}) == len(b_f) + 1:
            b_f.add(i)
    padding = set()
    base = set(keep) | contract
    cur = m.rank_of(base)
    for g in sorted(delete):
        if cur == m.rank:
            break
        if m.rank_of(base | padding | {g}) > cur:
            padding.add(g)
            cur += 1
    completion = frozenset(b_f | padding)

    values = {}
    for b in m.bases:
        if completion <= b and b - completion <= set(keep):
            values[b - completion] = valuation.values[b]
    position = {e: i for i, e in enumerate(keep)}
    dense = {frozenset(position[e] for e in b): v for b, v in values.items()}
    sub = Matroid(len(keep), dense.keys())
    labels = tuple(valuation.labels[e] for e in keep)
    return Valuation(sub, dense, labels=labels)


@dataclass
class AxiomReport:
    """Outcome of an executable axiom suite; empty violations = pass."""

    checked: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def check_circuit_axioms(vcircuits, matroid: Matroid) -> AxiomReport:
    """Exhaustively verify the four circuit axioms of a valuated matroid
    on canonical representatives.

    (1) the supports are the circuits of the matroid; (2)+(3) the family
    holds exactly one canonical representative per support; (4) for every
    support pair spanning a rank deficit of two, every alignment at a
    shared finite entry u and every separating element v admits a family
    member that avoids u, matches the aligned value at v, and dominates
    the entrywise minimum.
    """
    report = AxiomReport()
    vectors = [c for c in vcircuits]
    supports = [c.support for c in vectors]

    # (1) support family = circuits of the matroid
    expected = set(matroid.circuits())
    got = set(supports)
    report.checked += 1
    if got != expected:
        report.violations.append(
            f"axiom 1: supports {sorted(map(sorted, got))} differ from the "
            f"matroid circuits {sorted(map(sorted, expected))}"
        )
    for c in vectors:
        report.checked += 1
        if not c.support:
            report.violations.append("axiom 1: empty support")
    for a in supports:
        for b in supports:
            report.checked += 1
            if a < b:
                report.violations.append(
                    f"axiom 1: support {sorted(a)} strictly inside {sorted(b)}"
                )

    # (2)+(3): canonical representatives, unique per support
    seen = {}
    for c in vectors:
        report.checked += 1
        if not c.is_canonical:
            report.violations.append(f"axiom 2/3: {c} is not canonical")
        if c.support in seen and seen[c.support] != c:
            report.violations.append(
                f"axiom 3: two distinct representatives on support "
                f"{sorted(c.support)}"
            )
        seen[c.support] = c

    # (4) elimination with controlled entries
    n = matroid.n
    for c in vectors:
        for cp in vectors:
            if c is cp:
                continue
            union = c.support | cp.support
            if matroid.rank_of(union) != len(union) - 2:
                continue
            for u in sorted(c.support & cp.support):
                lam = c[u] - cp[u]
                aligned = cp.shifted(lam)
                for v in sorted(c.support - cp.support):
                    report.checked += 1
                    floor = [min(c[i], aligned[i]) for i in range(n)]
                    if not any(
                        _eliminates(d, u, v, c[v], floor) for d in vectors
                    ):
                        report.violations.append(
                            f"axiom 4: no eliminating circuit for supports "
                            f"{sorted(c.support)}, {sorted(cp.support)} with "
                            f"u={u}, v={v}"
                        )
    return report


def _eliminates(d, u, v, target_v, floor):
    if u in d.support or v not in d.support:
        return False
    mu = target_v - d[v]
    return all(d[i] == INF or d[i] + mu >= floor[i] for i in range(len(floor)))


def check_exchange_consistency(valuation: Valuation, vcircuits=None) -> AxiomReport:
    """Verify the exchange identity for every (basis, u, v) triple and its
    covering valuated circuit, with the infinite-iff-infinite reading."""
    report = AxiomReport()
    m = valuation.matroid
    if vcircuits is None:
        vcircuits = valuated_circuit_family(valuation)
    by_support = {c.support: c.canonical() for c in vcircuits}
    ground = set(range(m.n))
    for b in m.bases:
        for v in ground - b:
            support = m.fundamental_circuit(b, v)
            circ = by_support.get(support)
            if circ is None:
                report.violations.append(
                    f"no valuated circuit on support {sorted(support)}"
                )
                continue
            for u in b:
                report.checked += 1
                neighbor = b - {u} | {v}
                left_inf = circ[u] == INF
                right_inf = not m.is_basis(neighbor)
                if left_inf != right_inf:
                    report.violations.append(
                        f"infinite sides disagree at basis {sorted(b)}, "
                        f"u={u}, v={v}"
                    )
                    continue
                if left_inf:
                    continue
                lhs = valuation.value(b) + circ[u]
                rhs = valuation.value(neighbor) + circ[v]
                if lhs != rhs:
                    report.violations.append(
                        f"exchange identity fails at basis {sorted(b)}, "
                        f"u={u}, v={v}: {lhs} != {rhs}"
                    )
    return report


def check_orthogonality(circuit_vectors, cocircuit_vectors) -> AxiomReport:
    """For every circuit/cocircuit pair with intersecting supports, the
    minimum of the entrywise sum must be attained at least twice."""
    report = AxiomReport()
    for c in circuit_vectors:
        for d in cocircuit_vectors:
            if not (c.support & d.support):
                continue
            report.checked += 1
            sums = [c[i] + d[i] for i in range(len(c))]
            best = min(sums)  # finite: some index lies in both supports
            if sums.count(best) < 2:
                report.violations.append(
                    f"minimum of circuit {c} + cocircuit {d} attained once"
                )
    return report
