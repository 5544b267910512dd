"""Expansion-complexity engine: kernel spaces, profiles, irreducible search,
defining-polynomial recovery, and sequence prediction.

The N-th expansion complexity of a prefix is the least total degree of a
nonzero h in F_p[x, y] with h(x, G(x)) = 0 mod x^N, where G is the prefix's
generating function (0 for an all-zero prefix). It is computed as the least d
for which the monomial evaluation matrix of M(d) = {x^i y^j : i + j <= d} has
a nontrivial left kernel: each monomial, evaluated at y = G(x) and reduced
mod x^N, is a length-N vector, and left-kernel combinations are exactly the
annihilating polynomials.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    BudgetExceededError,
    PrefixTooShortError,
    PrerequisiteViolatedError,
    ZeroPolynomialError,
)
from .field import PrimeField
from .poly import (
    BivariatePoly,
    annihilates,
    is_irreducible,
    monomial_count,
    monomials_upto,
    normalize,
)
from .rng import SplitMix64
from .series import SequencePrefix, series_from_prefix
from . import poly as poly_mod


class ComplexityKind(enum.Enum):
    EXPANSION = "expansion"
    IRREDUCIBLE = "irreducible-expansion"


class ResultStatus(enum.Enum):
    EXACT = "exact"
    LOWER_BOUND = "lower-bound"


@dataclass(frozen=True)
class SearchConfig:
    """Caps for the irreducible-witness search.

    enum_cap bounds the number of projective points of a solution space that
    will be enumerated exhaustively; beyond it the search degrades to testing
    the echelon basis plus sample_cap seeded random elements, and a level that
    fails that way leaves the final status at lower-bound rather than exact.
    """

    enum_cap: int = 10**6
    sample_cap: int = 10**4
    sampling_seed: int = 0
    divisor_budget: int = poly_mod.DEFAULT_DIVISOR_BUDGET


@dataclass(frozen=True)
class ComplexityResult:
    n: int
    kind: ComplexityKind
    value: int
    status: ResultStatus
    witness: BivariatePoly | None = None

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "kind": self.kind.value,
            "value": self.value,
            "status": self.status.value,
            "witness": self.witness.to_json_dict() if self.witness else None,
        }


@dataclass(frozen=True)
class ComplexityProfile:
    sequence: SequencePrefix
    entries: tuple[ComplexityResult, ...]
    istar_entries: tuple[ComplexityResult, ...] | None = None

    def values(self) -> list[int]:
        return [e.value for e in self.entries]

    def to_json_dict(self) -> dict:
        return {
            "p": self.sequence.field.p,
            "length": len(self.sequence),
            "entries": [e.to_json_dict() for e in self.entries],
            "istar": [e.to_json_dict() for e in self.istar_entries]
            if self.istar_entries is not None
            else None,
        }


@dataclass(frozen=True)
class SolutionSpace:
    """Basis of {h : total degree <= degree_bound, h(x, G) = 0 mod x^n}.

    The basis is in reduced row-echelon form over the documented monomial
    order, rows sorted by pivot monomial.
    """

    field: PrimeField
    degree_bound: int
    n: int
    basis: tuple[BivariatePoly, ...]

    @property
    def dimension(self) -> int:
        return len(self.basis)


@dataclass(frozen=True)
class ExtensionResult:
    """Outcome of predicting further symbols with a defining polynomial."""

    sequence: SequencePrefix
    appended: tuple[int, ...]
    status: str  # "ok" | "ambiguous" | "inconsistent"
    failed_at: int | None = None
    candidates: tuple[int, ...] = ()

    @property
    def ok(self) -> bool:
        return self.status == "ok"


def theorem1_degree_bound(n: int) -> int:
    """Largest d with C(d+1, 2) <= n; every E_N satisfies E_N <= this bound."""
    d = max(1, int((math.isqrt(8 * n + 1) - 1) // 2))
    while math.comb(d + 2, 2) <= n:
        d += 1
    while d > 1 and math.comb(d + 1, 2) > n:
        d -= 1
    return d


def maximal_profile_value(n: int) -> int:
    """The extremal E_N permitted by the degree bound: d with C(d+1,2) <= N < C(d+2,2)."""
    return theorem1_degree_bound(n)


# -- matrix construction and elimination --------------------------------------


def _series_powers(symbols: tuple[int, ...], p: int, max_j: int, n: int) -> list[list[int]]:
    """[G^0, G^1, ..., G^max_j] mod x^n as coefficient lists."""
    powers = [[1] + [0] * (n - 1)]
    g = list(symbols[:n])
    for _ in range(max_j):
        prev = powers[-1]
        out = [0] * n
        for i, ai in enumerate(prev):
            if ai:
                for k in range(n - i):
                    b = g[k]
                    if b:
                        out[i + k] = (out[i + k] + ai * b) % p
        powers.append(out)
    return powers


def _monomial_matrix(s: SequencePrefix, d: int, n: int) -> np.ndarray:
    """Rows: monomials of M(d) in order; row (i,j) = coefficients of x^i G^j mod x^n."""
    p = s.field.p
    powers = _series_powers(s.symbols, p, d, n)
    mons = monomials_upto(d)
    mat = np.zeros((len(mons), n), dtype=np.int64)
    for r, (i, j) in enumerate(mons):
        gj = powers[j]
        if i < n:
            mat[r, i:] = gj[: n - i]
    return mat


def _left_kernel(mat: np.ndarray, p: int) -> np.ndarray:
    """Basis of {c : c @ mat = 0 mod p} via combination tracking."""
    m, n = mat.shape
    vals = mat.copy() % p
    comb = np.eye(m, dtype=np.int64)
    active = np.ones(m, dtype=bool)
    for col in range(n):
        nz = active & (vals[:, col] % p != 0)
        idx = np.nonzero(nz)[0]
        if idx.size == 0:
            continue
        piv = idx[0]
        inv = pow(int(vals[piv, col]), p - 2, p)
        vals[piv] = (vals[piv] * inv) % p
        comb[piv] = (comb[piv] * inv) % p
        rest = idx[1:]
        if rest.size:
            f = vals[rest, col][:, None]
            vals[rest] = (vals[rest] - f * vals[piv]) % p
            comb[rest] = (comb[rest] - f * comb[piv]) % p
        active[piv] = False
        if not active.any():
            break
    return comb[active] % p


def _rref(rows: np.ndarray, p: int) -> np.ndarray:
    """Reduced row echelon form over F_p, rows ordered by pivot column."""
    mat = rows.copy() % p
    r = 0
    for c in range(mat.shape[1]):
        if r == mat.shape[0]:
            break
        piv = None
        for i in range(r, mat.shape[0]):
            if mat[i, c]:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            mat[[r, piv]] = mat[[piv, r]]
        mat[r] = (mat[r] * pow(int(mat[r, c]), p - 2, p)) % p
        others = np.nonzero(mat[:, c])[0]
        for i in others:
            if i != r:
                mat[i] = (mat[i] - mat[i, c] * mat[r]) % p
        r += 1
    return mat[:r]


def _survival(mat: np.ndarray, p: int, n: int) -> int:
    """Largest N <= n for which the left kernel of the first N columns is nonzero."""
    m = mat.shape[0]
    vals = mat.copy() % p
    active = np.ones(m, dtype=bool)
    remaining = m
    for col in range(n):
        nz = active & (vals[:, col] % p != 0)
        idx = np.nonzero(nz)[0]
        if idx.size == 0:
            continue
        piv = idx[0]
        inv = pow(int(vals[piv, col]), p - 2, p)
        vals[piv] = (vals[piv] * inv) % p
        rest = idx[1:]
        if rest.size:
            f = vals[rest, col][:, None]
            vals[rest] = (vals[rest] - f * vals[piv]) % p
        active[piv] = False
        remaining -= 1
        if remaining == 0:
            return col  # kernel alive through N = col, dead at N = col + 1
    return n


def _check_n(s: SequencePrefix, n: int):
    if not 1 <= n <= len(s):
        raise PrefixTooShortError(f"need 1 <= n <= {len(s)}, got n = {n}")


def solution_space(s: SequencePrefix, d: int, n: int) -> SolutionSpace:
    """Kernel basis of the M(d) evaluation map mod x^n, deterministic RREF order."""
    _check_n(s, n)
    if d < 0:
        raise ValueError("degree bound must be nonnegative")
    p = s.field.p
    kern = _left_kernel(_monomial_matrix(s, d, n), p)
    basis = []
    if kern.size:
        mons = monomials_upto(d)
        g = series_from_prefix(s.truncated(n))
        for row in _rref(kern, p):
            h = BivariatePoly(s.field, {m: int(c) for m, c in zip(mons, row) if c})
            assert annihilates(h, g), "kernel element failed re-evaluation"
            basis.append(h)
    return SolutionSpace(s.field, d, n, tuple(basis))


# -- expansion complexity -------------------------------------------------------


def expansion_complexity(s: SequencePrefix, n: int) -> ComplexityResult:
    """Least total degree of a nonzero annihilator mod x^n, with witness."""
    _check_n(s, n)
    if s.truncated(n).is_zero:
        return ComplexityResult(n, ComplexityKind.EXPANSION, 0, ResultStatus.EXACT)
    for d in range(1, theorem1_degree_bound(n) + 1):
        space = solution_space(s, d, n)
        if space.dimension:
            return ComplexityResult(
                n, ComplexityKind.EXPANSION, d, ResultStatus.EXACT,
                normalize(space.basis[0]),
            )
    raise AssertionError(f"degree bound violated at n = {n}")


def expansion_profile(s: SequencePrefix, n_max: int, with_witnesses: bool = False) -> ComplexityProfile:
    """E_N for N = 1..n_max via incremental column elimination.

    For each candidate degree d the evaluation matrix is extended one column
    per N while an echelon form is maintained; the kernel at degree d stays
    nonzero exactly while columns remain linearly dependent, so one pass per
    degree yields every E_N.
    """
    _check_n(s, n_max)
    p = s.field.p
    d_max = theorem1_degree_bound(n_max)
    full = _monomial_matrix(s, d_max, n_max)
    alive_until = {}
    for d in range(1, d_max + 1):
        alive_until[d] = _survival(full[: monomial_count(d)], p, n_max)
    z = s.first_nonzero()
    zero_prefix_len = len(s) if z is None else z

    entries = []
    d_cur = 1
    for n in range(1, n_max + 1):
        if n <= zero_prefix_len:
            entries.append(ComplexityResult(n, ComplexityKind.EXPANSION, 0, ResultStatus.EXACT))
            continue
        while alive_until[d_cur] < n:
            d_cur += 1
        witness = None
        if with_witnesses:
            space = solution_space(s, d_cur, n)
            witness = normalize(space.basis[0])
        entries.append(
            ComplexityResult(n, ComplexityKind.EXPANSION, d_cur, ResultStatus.EXACT, witness)
        )
    return ComplexityProfile(s, tuple(entries))


# -- irreducible-expansion complexity ---------------------------------------------


def _space_candidates(space: SolutionSpace, cfg: SearchConfig):
    """Yield (candidate, exhaustive) pairs; deterministic order.

    Basis elements come first (they are the earliest points of the projective
    enumeration). If the space has more projective points than enum_cap, only
    the basis plus sample_cap seeded random combinations are produced and
    exhaustive=False is reported.
    """
    q = space.field.p
    dim = space.dimension
    if dim == 0:
        return
    points = (q**dim - 1) // (q - 1)
    basis = space.basis
    if points <= cfg.enum_cap:
        for lead in range(dim):
            head = basis[lead]
            for tail in itertools.product(range(q), repeat=dim - lead - 1):
                h = head
                for c, b in zip(tail, basis[lead + 1:]):
                    if c:
                        h = h + b.scaled(c)
                yield h, True
    else:
        for b in basis:
            yield b, False
        rng = SplitMix64(cfg.sampling_seed)
        produced = 0
        while produced < cfg.sample_cap:
            coeffs = [rng.randbelow(q) for _ in range(dim)]
            if not any(coeffs):
                continue
            h = None
            for c, b in zip(coeffs, basis):
                if c:
                    h = b.scaled(c) if h is None else h + b.scaled(c)
            produced += 1
            yield h, False


def _common_variable_factor(space: SolutionSpace) -> bool:
    """True when x or y divides every basis element (hence every element)."""
    for var in range(2):
        if all(
            all(m[var] >= 1 for m in b.terms) for b in space.basis
        ):
            return True
    return False


def _prefix_fallback(s: SequencePrefix, n: int) -> BivariatePoly:
    """y - (s_0 + s_1 x + ... + s_{n-1} x^{n-1}), always an irreducible solution."""
    terms: dict[tuple[int, int], int] = {(0, 1): 1}
    for i, c in enumerate(s.symbols[:n]):
        if c:
            terms[(i, 0)] = -c
    return BivariatePoly(s.field, terms)


def i_expansion_complexity(s: SequencePrefix, n: int,
                           cfg: SearchConfig | None = None) -> ComplexityResult:
    """Least total degree of an irreducible annihilator mod x^n.

    Searches upward from the expansion complexity. A level is resolved
    negatively either by exhausting its solution space or by the common-factor
    shortcut (x or y divides the whole space, so no element of degree >= 2 is
    irreducible). Levels that could only be sampled leave the final status at
    lower-bound unless the witness is found below them. Termination is
    guaranteed by the prefix fallback y - (s_0 + ... + s_{n-1} x^{n-1}).
    """
    cfg = cfg or SearchConfig()
    _check_n(s, n)
    if s.truncated(n).is_zero:
        return ComplexityResult(n, ComplexityKind.IRREDUCIBLE, 0, ResultStatus.EXACT)

    fallback = _prefix_fallback(s, n)
    d_fallback = fallback.total_degree
    start = expansion_complexity(s, n).value
    first_inconclusive: int | None = None

    for d in range(start, max(start, d_fallback) + 1):
        space = solution_space(s, d, n)
        if space.dimension == 0:
            continue
        if d >= 2 and _common_variable_factor(space):
            continue  # conclusively no irreducible of degree d in this space
        level_inconclusive = False
        found: BivariatePoly | None = None
        exhausted = True
        for cand, exhaustive in _space_candidates(space, cfg):
            if not exhaustive:
                exhausted = False
            if cand.total_degree != d:
                continue
            try:
                if is_irreducible(cand, cfg.divisor_budget):
                    found = cand
                    break
            except BudgetExceededError:
                level_inconclusive = True
                continue
        if found is None and d == d_fallback and annihilates(
            fallback, series_from_prefix(s.truncated(n))
        ) and fallback.total_degree == d:
            found = fallback  # deterministic last resort at the top level
        if found is not None:
            status = (
                ResultStatus.EXACT
                if first_inconclusive is None or first_inconclusive >= d
                else ResultStatus.LOWER_BOUND
            )
            return ComplexityResult(
                n, ComplexityKind.IRREDUCIBLE, d, status, normalize(found)
            )
        if level_inconclusive or not exhausted:
            if first_inconclusive is None:
                first_inconclusive = d
    raise AssertionError("prefix fallback must terminate the search")


# -- defining polynomial recovery and prediction -----------------------------------


def find_defining_poly(s: SequencePrefix, d_max: int,
                       cfg: SearchConfig | None = None) -> BivariatePoly | None:
    """Recover an irreducible defining polynomial from a prefix, or None.

    For each degree d with d*d <= len(s), candidates are drawn from the
    solution space at N = d*d (the recovery length for degree-d defining
    polynomials) and accepted if they are irreducible and annihilate the whole
    given prefix.
    """
    cfg = cfg or SearchConfig()
    if len(s) < 1:
        raise PrefixTooShortError("need at least one symbol")
    g_full = series_from_prefix(s)
    for d in range(1, d_max + 1):
        if d * d > len(s):
            break
        space = solution_space(s, d, d * d)
        if space.dimension == 0:
            continue
        for cand, _ in _space_candidates(space, cfg):
            if not annihilates(cand, g_full):
                continue
            try:
                if is_irreducible(cand, cfg.divisor_budget):
                    return normalize(cand)
            except BudgetExceededError:
                continue
    return None


def extend_sequence(h: BivariatePoly, s: SequencePrefix, count: int) -> ExtensionResult:
    """Predict further symbols: keep the unique next symbol consistent with h.

    Each step tries all q candidate values v for the next symbol and keeps
    those for which h annihilates the extended generating function mod
    x^(k+1). Since h already annihilates mod x^k, only the x^k coefficient of
    h(x, G + v x^k) matters, and for k >= 1 it equals base + v * slope with
    slope = (dh/dy)(0, s_0); every candidate is still tested explicitly.
    Anything other than exactly one surviving candidate stops the extension
    with a diagnostic.
    """
    if h.is_zero:
        raise ZeroPolynomialError("defining polynomial must be nonzero")
    if h.field != s.field:
        raise PrerequisiteViolatedError("polynomial and prefix over different fields")
    p = s.field.p
    if len(s) and not annihilates(h, series_from_prefix(s)):
        raise PrerequisiteViolatedError(
            "polynomial does not annihilate the given prefix"
        )
    symbols = list(s.symbols)
    appended: list[int] = []
    dy = h.degree_y
    for _ in range(count):
        k = len(symbols)
        if k == 0:
            # testing h(0, v) = 0 directly
            viable = [
                v for v in range(p)
                if sum(c * pow(v, j, p) for (i, j), c in h.terms.items() if i == 0) % p == 0
            ]
        else:
            powers = _series_powers(tuple(symbols) + (0,), p, dy, k + 1)
            base = 0
            for (i, j), c in h.terms.items():
                if i <= k:
                    base = (base + c * powers[j][k - i]) % p
            s0 = symbols[0]
            slope = 0
            for (i, j), c in h.terms.items():
                if i == 0 and j >= 1:
                    slope = (slope + c * j * pow(s0, j - 1, p)) % p
            viable = [v for v in range(p) if (base + v * slope) % p == 0]
        if len(viable) == 1:
            symbols.append(viable[0])
            appended.append(viable[0])
        else:
            status = "ambiguous" if viable else "inconsistent"
            return ExtensionResult(
                SequencePrefix(s.field, tuple(symbols)),
                tuple(appended),
                status,
                failed_at=k,
                candidates=tuple(viable),
            )
    return ExtensionResult(SequencePrefix(s.field, tuple(symbols)), tuple(appended), "ok")
