"""Dense univariate arithmetic over F_p used by the bivariate routines.

Polynomials are lists of reduced residues, little-endian (index = exponent),
with no trailing zeros; the zero polynomial is the empty list.
"""

from __future__ import annotations

import itertools
from collections import Counter

from .errors import BudgetExceededError


def trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def degree(a: list[int]) -> int:
    """Degree with deg(0) = -1."""
    return len(a) - 1


def mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return trim(out)


def divmod_(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    """Quotient and remainder of a by nonzero b."""
    if not b:
        raise ZeroDivisionError("univariate division by zero")
    a = list(a)
    if len(a) < len(b):
        return [], trim(a)
    q = [0] * (len(a) - len(b) + 1)
    inv = pow(b[-1], p - 2, p)
    for k in range(len(a) - len(b), -1, -1):
        c = (a[k + len(b) - 1] * inv) % p
        if c:
            q[k] = c
            for j, bj in enumerate(b):
                if bj:
                    a[k + j] = (a[k + j] - c * bj) % p
    return trim(q), trim(a)


def gcd(a: list[int], b: list[int], p: int) -> list[int]:
    """Monic greatest common divisor."""
    a, b = trim(list(a)), trim(list(b))
    while b:
        _, r = divmod_(a, b, p)
        a, b = b, r
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [(c * inv) % p for c in a]
    return a


def eval_at(a: list[int], x: int, p: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc


class WorkBudget:
    """Counts candidate-divisor work across nested enumerations."""

    def __init__(self, cap: int):
        self.cap = cap
        self.used = 0

    def spend(self, amount: int = 1):
        self.used += amount
        if self.used > self.cap:
            raise BudgetExceededError(
                f"divisor enumeration exceeded budget of {self.cap} candidates",
                needed=self.used,
                cap=self.cap,
            )


def monic_factors(f: list[int], p: int, budget: WorkBudget | None = None) -> tuple[int, list[tuple[int, ...]]]:
    """Factor nonzero f into (unit, list of monic irreducible factors with multiplicity).

    Linear factors are peeled by a root scan over F_p; higher-degree factors by
    trial division over monic candidates of increasing degree. Work is charged
    to the budget, so pathological inputs fail loudly instead of hanging.
    """
    f = trim(list(f))
    if not f:
        raise ZeroDivisionError("cannot factor the zero polynomial")
    unit = f[-1]
    inv = pow(unit, p - 2, p)
    f = [(c * inv) % p for c in f]
    factors: list[tuple[int, ...]] = []

    # root scan peels all linear factors
    if budget is not None:
        budget.spend(p)
    for r in range(p):
        while len(f) > 1 and eval_at(f, r, p) == 0:
            f, rem = divmod_(f, [(-r) % p, 1], p)
            assert not rem
            factors.append(((-r) % p, 1))
        if len(f) == 1:
            break

    d = 2
    while len(f) - 1 >= 2 * d:
        found = True
        while found and len(f) - 1 >= 2 * d:
            found = False
            if budget is not None:
                budget.spend(p**d)
            for tail in itertools.product(range(p), repeat=d):
                g = list(tail) + [1]
                q, r = divmod_(f, g, p)
                if not r:
                    # candidates are scanned in increasing degree, so g is irreducible
                    factors.append(tuple(g))
                    f = q
                    found = True
                    break
        d += 1
    if len(f) > 1:
        factors.append(tuple(f))
    factors.sort()
    return unit, factors


def monic_divisors_upto(f: list[int], p: int, emax: int, budget: WorkBudget | None = None) -> list[tuple[int, ...]]:
    """All monic divisors of nonzero f with 1 <= degree <= emax (deduplicated)."""
    _, factors = monic_factors(f, p, budget)
    divisors: list[list[int]] = [[1]]
    for g, m in Counter(factors).items():
        powers = [[1]]
        for _ in range(m):
            powers.append(mul(powers[-1], list(g), p))
        divisors = [
            mul(d, pw, p)
            for d in divisors
            for pw in powers
            if degree(d) + degree(pw) <= emax
        ]
    out = {tuple(d) for d in divisors if 1 <= degree(d) <= emax}
    return sorted(out, key=lambda t: (len(t), t))


def is_irreducible_univariate(f: list[int], p: int, budget: WorkBudget | None = None) -> bool:
    """True iff nonconstant f is irreducible over F_p."""
    f = trim(list(f))
    d = degree(f)
    if d <= 0:
        return False
    if d == 1:
        return True
    _, factors = monic_factors(f, p, budget)
    return len(factors) == 1
