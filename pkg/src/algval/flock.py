"""Matroid families sliced out of a valuation by integer direction vectors.

For a direction alpha, the slice keeps the bases maximizing
e_B . alpha - value(B); the maximum itself is g(alpha).  Varying alpha
over Z^n yields a family satisfying two axioms: contracting i in the
slice at alpha equals deleting i in the slice at alpha + e_i, and the
slice is invariant under shifting alpha by the all-ones vector.  Both
axioms are verified exhaustively over finite boxes of directions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from algval.algmat import Matroid
from algval.valmat import Valuation


def g(valuation: Valuation, alpha) -> int:
    """max over bases of e_B . alpha - value(B)."""
    alpha = tuple(alpha)
    if len(alpha) != valuation.n:
        raise ValueError(f"alpha must have length {valuation.n}")
    return max(
        sum(alpha[i] for i in basis) - value
        for basis, value in valuation.values.items()
    )


@dataclass(frozen=True)
class FlockSlice:
    """The argmax basis family at one direction, with its maximum."""

    alpha: tuple
    matroid: Matroid
    g_value: int


def _slice_bases(valuation, alpha):
    best = None
    bases = []
    for basis, value in valuation.values.items():
        score = sum(alpha[i] for i in basis) - value
        if best is None or score > best:
            best = score
            bases = [basis]
        elif score == best:
            bases.append(basis)
    return frozenset(bases), best


def flock_slice(valuation: Valuation, alpha) -> FlockSlice:
    """Slice at one direction; the basis family is exchange-verified."""
    alpha = tuple(alpha)
    if len(alpha) != valuation.n:
        raise ValueError(f"alpha must have length {valuation.n}")
    bases, best = _slice_bases(valuation, alpha)
    return FlockSlice(alpha, Matroid(valuation.n, bases, check=True), best)


def _contract_element(bases, i):
    if any(i in b for b in bases):
        return frozenset(b - {i} for b in bases if i in b)
    return bases


def _delete_element(bases, i):
    if all(i in b for b in bases):
        return frozenset(b - {i} for b in bases)
    return frozenset(b for b in bases if i not in b)


@dataclass
class FlockReport:
    """Axiom-violation log for a sweep of directions."""

    directions: int = 0
    checked: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations


def default_box_radius(valuation: Valuation) -> int:
    """Largest radius R <= rank with (2R+1)^n * n * bases <= 10**6,
    and at least 1."""
    n = max(valuation.n, 1)
    budget = 10**6
    per_direction = n * max(len(valuation.values), 1)
    radius = 1
    while radius < valuation.matroid.rank:
        if (2 * (radius + 1) + 1) ** n * per_direction > budget:
            break
        radius += 1
    return radius


def check_flock_axioms(valuation: Valuation, radius=None, alphas=None) -> FlockReport:
    """Verify, per direction alpha: the slice's basis family satisfies
    basis exchange (each slice must itself be a matroid),
    slice(alpha)/i = slice(alpha+e_i)\\i for every i, and
    slice(alpha) = slice(alpha+1).

    Directions come from an explicit iterable or from the full box
    [-radius, radius]^n (default radius bounded by the evaluation
    budget).  Exchange verification is memoized per distinct family, so
    large sweeps stay cheap.
    """
    n = valuation.n
    report = FlockReport()
    if alphas is None:
        if radius is None:
            radius = default_box_radius(valuation)
        alphas = product(range(-radius, radius + 1), repeat=n)
    cache = {}
    exchange_ok = {}

    def sliced(alpha):
        if alpha not in cache:
            cache[alpha] = _slice_bases(valuation, alpha)[0]
        return cache[alpha]

    def is_matroid(family):
        if family not in exchange_ok:
            try:
                Matroid(n, family, check=True)
                exchange_ok[family] = True
            except ValueError:
                exchange_ok[family] = False
        return exchange_ok[family]

    for alpha in alphas:
        alpha = tuple(alpha)
        if len(alpha) != n:
            raise ValueError(f"direction {alpha} must have length {n}")
        report.directions += 1
        here = sliced(alpha)
        report.checked += 1
        if not is_matroid(here):
            report.violations.append(
                f"slice at alpha={alpha} is not a matroid (exchange fails)"
            )
        for i in range(n):
            report.checked += 1
            bumped = tuple(a + (1 if j == i else 0) for j, a in enumerate(alpha))
            left = _contract_element(here, i)
            right = _delete_element(sliced(bumped), i)
            if left != right:
                report.violations.append(
                    f"contraction/deletion mismatch at alpha={alpha}, i={i}"
                )
        report.checked += 1
        shifted = tuple(a + 1 for a in alpha)
        if here != sliced(shifted):
            report.violations.append(f"all-ones shift changes the slice at {alpha}")
    return report
