"""Algebraic matroid of an ideal, read off from elimination ideals.

A subset S of the ground set is independent exactly when the ideal
meets the subring on the variables indexed by S in zero.  Circuits are
the minimal dependent sets; each carries the monic generator of its
(principal) elimination ideal, the circuit polynomial.  Elimination is
by far the dominant cost, so independence queries are memoized and can
optionally persist to an on-disk cache shared between runs.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass
from itertools import combinations

from algval.ffpoly import Polynomial, parse_polynomial
from algval.groebner import Ideal, NotPrincipalError, eliminate, principal_generator


class Matroid:
    """Matroid on ground set {0..n-1} given by its bases.

    The basis-exchange axiom is verified on construction by default for
    small ground sets; pass check=False to skip (for families already
    known to be matroids, such as duals).
    """

    __slots__ = ("n", "bases", "rank", "_baseset")

    def __init__(self, n, bases, check=None):
        self.n = n
        cleaned = sorted({frozenset(b) for b in bases}, key=sorted)
        if not cleaned:
            raise ValueError("a matroid needs at least one basis")
        sizes = {len(b) for b in cleaned}
        if len(sizes) != 1:
            raise ValueError(f"bases of unequal size: {sorted(sizes)}")
        for b in cleaned:
            if not b <= set(range(n)):
                raise ValueError(f"basis {sorted(b)} outside ground set of size {n}")
        self.bases = tuple(cleaned)
        self._baseset = frozenset(cleaned)
        self.rank = sizes.pop()
        if check is None:
            check = n < 9
        if check:
            self._verify_exchange()

    def _verify_exchange(self):
        for b1 in self.bases:
            for b2 in self.bases:
                for u in b1 - b2:
                    if not any(b1 - {u} | {v} in self._baseset for v in b2 - b1):
                        raise ValueError(
                            f"basis exchange fails for {sorted(b1)}, {sorted(b2)} at {u}"
                        )

    def is_basis(self, subset) -> bool:
        return frozenset(subset) in self._baseset

    def rank_of(self, subset) -> int:
        subset = frozenset(subset)
        return max(len(b & subset) for b in self.bases)

    def is_independent(self, subset) -> bool:
        subset = frozenset(subset)
        return self.rank_of(subset) == len(subset)

    def circuits(self):
        """Minimal dependent sets, ascending by size then lexicographically."""
        found = []
        for size in range(1, self.rank + 2):
            for combo in combinations(range(self.n), size):
                s = frozenset(combo)
                if any(c <= s for c in found):
                    continue
                if not self.is_independent(s):
                    found.append(s)
        return found

    def fundamental_circuit(self, basis, v) -> frozenset:
        """The unique circuit inside basis + {v}; always contains v."""
        basis = frozenset(basis)
        if not self.is_basis(basis):
            raise ValueError(f"{sorted(basis)} is not a basis")
        if v in basis:
            raise ValueError(f"{v} already lies in the basis")
        return frozenset({v}) | {
            u for u in basis if basis - {u} | {v} in self._baseset
        }

    def hyperplanes(self):
        """Maximal subsets of rank one less than the matroid."""
        if self.rank < 1:
            raise ValueError("hyperplanes need rank at least 1")
        out = []
        ground = set(range(self.n))
        for size in range(self.n, -1, -1):
            for combo in combinations(range(self.n), size):
                h = frozenset(combo)
                if self.rank_of(h) != self.rank - 1:
                    continue
                if all(self.rank_of(h | {v}) == self.rank for v in ground - h):
                    out.append(h)
        return sorted(out, key=sorted)

    def dual(self) -> "Matroid":
        ground = frozenset(range(self.n))
        return Matroid(self.n, [ground - b for b in self.bases], check=False)

    def loops(self) -> frozenset:
        ground = frozenset(range(self.n))
        covered = frozenset().union(*self.bases) if self.rank else frozenset()
        return ground - covered

    def coloops(self) -> frozenset:
        out = self.bases[0]
        for b in self.bases[1:]:
            out = out & b
        return frozenset(out)

    def __eq__(self, other):
        return (isinstance(other, Matroid)
                and self.n == other.n
                and self._baseset == other._baseset)

    def __hash__(self):
        return hash((self.n, self._baseset))

    def __repr__(self):
        return f"Matroid(n={self.n}, rank={self.rank}, bases={len(self.bases)})"


@dataclass(frozen=True)
class CircuitRecord:
    """A circuit support together with its monic circuit polynomial."""

    support: frozenset
    polynomial: Polynomial

    def __post_init__(self):
        if self.support != self.polynomial.support():
            raise ValueError(
                f"circuit support {sorted(self.support)} does not match the "
                f"variables of {self.polynomial}"
            )


class EliminationOracle:
    """Memoized elimination queries against a fixed ideal.

    With a cache directory, each elimination result is persisted as a
    JSON file keyed by (ideal fingerprint, subset); files are written to
    a temporary name and renamed into place, so concurrent runs that
    compute identical content can share a directory safely.
    """

    def __init__(self, ideal: Ideal, cache_dir=None, fingerprint=None):
        self.ideal = ideal
        self._memo = {}
        self.cache_dir = cache_dir
        self.fingerprint = fingerprint
        if cache_dir is not None:
            os.makedirs(cache_dir, exist_ok=True)
            if fingerprint is None:
                raise ValueError("a cache directory needs an input fingerprint")

    def _cache_path(self, subset):
        mask = sum(1 << i for i in subset)
        return os.path.join(self.cache_dir, f"{self.fingerprint}-elim-{mask:x}.json")

    def elimination(self, subset):
        subset = frozenset(subset)
        if subset in self._memo:
            return self._memo[subset]
        if self.cache_dir is not None:
            path = self._cache_path(subset)
            try:
                with open(path, encoding="utf-8") as fh:
                    texts = json.load(fh)["generators"]
                gens = tuple(
                    parse_polynomial(t, self.ideal.vars, self.ideal.field.p)
                    for t in texts
                )
                self._memo[subset] = gens
                return gens
            except FileNotFoundError:
                pass
        gens = tuple(eliminate(self.ideal, subset))
        self._memo[subset] = gens
        if self.cache_dir is not None:
            payload = json.dumps({"generators": [str(g) for g in gens]})
            fd, tmp = tempfile.mkstemp(dir=self.cache_dir, suffix=".tmp")
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                fh.write(payload)
            os.replace(tmp, self._cache_path(subset))
        return gens

    def independent(self, subset) -> bool:
        return not self.elimination(subset)


def independent(ideal: Ideal, subset, oracle=None) -> bool:
    """True iff the elimination ideal on the subset's variables is zero."""
    oracle = oracle or EliminationOracle(ideal)
    return oracle.independent(subset)


def rank(ideal: Ideal, subset, oracle=None) -> int:
    """Size of a maximum independent subset, grown greedily (exchange
    makes greedy exact)."""
    oracle = oracle or EliminationOracle(ideal)
    current = []
    for i in sorted(subset):
        if oracle.independent(frozenset(current) | {i}):
            current.append(i)
    return len(current)


def circuits(ideal: Ideal, oracle=None):
    """All minimal dependent sets with their circuit polynomials,
    ascending by size then lexicographically."""
    oracle = oracle or EliminationOracle(ideal)
    n = ideal.n
    if not oracle.independent(frozenset()):
        raise NotPrincipalError("the unit ideal carries no matroid")
    r = rank(ideal, range(n), oracle)
    found = []
    for size in range(1, min(r + 1, n) + 1):
        for combo in combinations(range(n), size):
            s = frozenset(combo)
            if any(rec.support <= s for rec in found):
                continue
            if not oracle.independent(s):
                f = principal_generator(oracle.elimination(s))
                found.append(CircuitRecord(s, f))
    return found


def bases(ideal: Ideal, oracle=None, check=None) -> Matroid:
    """The matroid of all maximal independent sets."""
    oracle = oracle or EliminationOracle(ideal)
    n = ideal.n
    if not oracle.independent(frozenset()):
        raise NotPrincipalError("the unit ideal carries no matroid")
    r = rank(ideal, range(n), oracle)
    family = [
        frozenset(combo)
        for combo in combinations(range(n), r)
        if oracle.independent(frozenset(combo))
    ]
    return Matroid(n, family, check=check)


def fundamental_circuit(matroid: Matroid, circuit_records, basis, v) -> CircuitRecord:
    """The record of the unique circuit inside basis + {v}."""
    support = matroid.fundamental_circuit(basis, v)
    for rec in circuit_records:
        if rec.support == support:
            return rec
    raise ValueError(f"no circuit record with support {sorted(support)}")


def hyperplanes(matroid: Matroid):
    return matroid.hyperplanes()
