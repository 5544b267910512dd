"""Bivariate polynomials over F_p: algebra, irreducibility, enumeration.

Monomial order used everywhere (printing, coefficient vectors, enumeration):
graded by total degree, and inside a grade t the sequence
x^t, x^(t-1)y, ..., y^t. A polynomial of degree d is *normalized* when the
first nonzero entry of its degree-d coefficient vector (a_0, ..., a_d),
ordered the same way, equals 1.
"""

from __future__ import annotations

import itertools
import json
import math
import re
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from . import univariate as uni
from .errors import (
    BudgetExceededError,
    FieldMismatchError,
    PolynomialFormatError,
    RangeError as ExcomRangeError,
    ZeroDivisorError,
    ZeroPolynomialError,
)
from .field import PrimeField
from .series import TruncatedSeries, series_mul, series_one

DEFAULT_DIVISOR_BUDGET = 10**7
ENUMERATION_CAP = 10**8


def monomials_upto(d: int) -> list[tuple[int, int]]:
    """All (i, j) with i + j <= d, in the documented graded order."""
    return [(t - j, j) for t in range(d + 1) for j in range(t + 1)]


def monomial_count(d: int) -> int:
    """#M(d) = C(d+2, 2)."""
    return math.comb(d + 2, 2)


@dataclass(frozen=True)
class BivariatePoly:
    """Sparse polynomial in F_p[x, y]; terms maps (i, j) to a nonzero residue."""

    field: PrimeField
    terms: dict[tuple[int, int], int]

    def __post_init__(self):
        p = self.field.p
        cleaned = {}
        for (i, j), c in self.terms.items():
            c %= p
            if c:
                if i < 0 or j < 0:
                    raise ValueError(f"negative exponent in term {(i, j)}")
                cleaned[(int(i), int(j))] = c
        object.__setattr__(self, "terms", cleaned)

    # -- basic structure ----------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def total_degree(self) -> int:
        """Max i + j over terms; 0 for the zero polynomial by convention."""
        return max((i + j for (i, j) in self.terms), default=0)

    @property
    def degree_x(self) -> int:
        return max((i for (i, j) in self.terms), default=0)

    @property
    def degree_y(self) -> int:
        return max((j for (i, j) in self.terms), default=0)

    def coefficient(self, i: int, j: int) -> int:
        return self.terms.get((i, j), 0)

    def sorted_terms(self) -> list[tuple[tuple[int, int], int]]:
        return sorted(self.terms.items(), key=lambda kv: (kv[0][0] + kv[0][1], kv[0][1]))

    def leading_form(self) -> dict[tuple[int, int], int]:
        """Terms of maximal total degree."""
        d = self.total_degree
        return {(i, j): c for (i, j), c in self.terms.items() if i + j == d}

    def coefficient_vector(self, d: int) -> list[int]:
        """Coefficients on M(d) in the documented order (degree must be <= d)."""
        return [self.terms.get(m, 0) for m in monomials_upto(d)]

    # -- arithmetic ----------------------------------------------------------

    def _check_field(self, other: "BivariatePoly"):
        if self.field != other.field:
            raise FieldMismatchError("polynomials over different fields")

    def __add__(self, other: "BivariatePoly") -> "BivariatePoly":
        self._check_field(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return BivariatePoly(self.field, out)

    def __sub__(self, other: "BivariatePoly") -> "BivariatePoly":
        self._check_field(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) - c
        return BivariatePoly(self.field, out)

    def __neg__(self) -> "BivariatePoly":
        return BivariatePoly(self.field, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other: "BivariatePoly") -> "BivariatePoly":
        self._check_field(other)
        p = self.field.p
        out: dict[tuple[int, int], int] = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                k = (i1 + i2, j1 + j2)
                out[k] = (out.get(k, 0) + c1 * c2) % p
        return BivariatePoly(self.field, out)

    def scaled(self, c: int) -> "BivariatePoly":
        return BivariatePoly(self.field, {m: c * v for m, v in self.terms.items()})

    def __eq__(self, other):
        return (
            isinstance(other, BivariatePoly)
            and other.field == self.field
            and other.terms == self.terms
        )

    def __hash__(self):
        return hash((self.field, tuple(self.sorted_terms())))

    # -- specializations -----------------------------------------------------

    def at_y_zero(self) -> list[int]:
        """h(x, 0) as a univariate coefficient list."""
        out = [0] * (self.degree_x + 1)
        for (i, j), c in self.terms.items():
            if j == 0:
                out[i] = c
        return uni.trim(out)

    def at_x_zero(self) -> list[int]:
        """h(0, y) as a univariate coefficient list."""
        out = [0] * (self.degree_y + 1)
        for (i, j), c in self.terms.items():
            if i == 0:
                out[j] = c
        return uni.trim(out)

    def y_coefficients(self) -> dict[int, list[int]]:
        """Map j -> coefficient of y^j as a univariate polynomial in x."""
        out: dict[int, dict[int, int]] = {}
        for (i, j), c in self.terms.items():
            out.setdefault(j, {})[i] = c
        result = {}
        for j, d in out.items():
            lst = [0] * (max(d) + 1)
            for i, c in d.items():
                lst[i] = c
            result[j] = lst
        return result

    # -- text / JSON formats ---------------------------------------------------

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"BivariatePoly(F_{self.field.p}, {format_poly(self)})"

    def to_json_dict(self) -> dict:
        return {
            "p": self.field.p,
            "terms": [[c, i, j] for (i, j), c in self.sorted_terms()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())


def poly_from_terms(field: PrimeField, terms) -> BivariatePoly:
    """Build a polynomial from an iterable of ((i, j), c) or (c, i, j) entries."""
    out: dict[tuple[int, int], int] = {}
    for entry in terms:
        if len(entry) == 2 and isinstance(entry[0], tuple):
            (i, j), c = entry
        else:
            c, i, j = entry
        out[(i, j)] = out.get((i, j), 0) + c
    return BivariatePoly(field, out)


def poly_from_json(data) -> BivariatePoly:
    if isinstance(data, str):
        data = json.loads(data)
    field = PrimeField(data["p"])
    return poly_from_terms(field, [(c, i, j) for c, i, j in data["terms"]])


_TERM_RE = re.compile(r"^(?:(\d+)\*?)?(?:x(?:\^(\d+))?)?\*?(?:y(?:\^(\d+))?)?$")


def parse_poly(text: str, field: PrimeField) -> BivariatePoly:
    """Parse the textual format, e.g. '4*y + x^5' or 'x*y'; inverse of format_poly."""
    compact = text.replace(" ", "")
    if not compact:
        raise PolynomialFormatError("empty polynomial expression")
    # normalize leading sign, then split on +/- keeping signs
    if compact[0] not in "+-":
        compact = "+" + compact
    tokens = re.findall(r"[+-][^+-]+", compact)
    if "".join(tokens) != compact:
        raise PolynomialFormatError(f"cannot tokenize {text!r}")
    terms = []
    for tok in tokens:
        sign, body = tok[0], tok[1:]
        m = _TERM_RE.match(body)
        if not m or not body:
            raise PolynomialFormatError(f"bad term {tok!r} in {text!r}")
        coeff_s, xe_s, ye_s = m.groups()
        has_x = "x" in body
        has_y = "y" in body
        if coeff_s is None and not has_x and not has_y:
            raise PolynomialFormatError(f"bad term {tok!r} in {text!r}")
        c = int(coeff_s) if coeff_s is not None else 1
        i = int(xe_s) if xe_s is not None else (1 if has_x else 0)
        j = int(ye_s) if ye_s is not None else (1 if has_y else 0)
        terms.append((c if sign == "+" else -c, i, j))
    return poly_from_terms(field, terms)


def format_poly(h: BivariatePoly) -> str:
    """Render in the documented monomial order with residue coefficients."""
    if h.is_zero:
        return "0"
    parts = []
    for (i, j), c in h.sorted_terms():
        factors = []
        if c != 1 or (i == 0 and j == 0):
            factors.append(str(c))
        if i:
            factors.append("x" if i == 1 else f"x^{i}")
        if j:
            factors.append("y" if j == 1 else f"y^{j}")
        parts.append("*".join(factors))
    return " + ".join(parts)


# -- normalization -----------------------------------------------------------


def normalize(h: BivariatePoly) -> BivariatePoly:
    """Scale so the first nonzero entry of the leading-form vector (a_0..a_d) is 1."""
    if h.is_zero:
        raise ZeroPolynomialError("cannot normalize the zero polynomial")
    d = h.total_degree
    lead = h.leading_form()
    for j in range(d + 1):
        c = lead.get((d - j, j), 0)
        if c:
            if c == 1:
                return h
            return h.scaled(h.field.inv(c))
    raise AssertionError("nonzero polynomial with zero leading form")


def is_normalized(h: BivariatePoly) -> bool:
    if h.is_zero:
        return False
    d = h.total_degree
    for j in range(d + 1):
        c = h.terms.get((d - j, j), 0)
        if c:
            return c == 1
    return False


# -- evaluation at a series ----------------------------------------------------


def eval_poly_at_series(h: BivariatePoly, g: TruncatedSeries) -> TruncatedSeries:
    """h(x, G(x)) mod x**N, with cached powers of G."""
    if h.field != g.field:
        raise FieldMismatchError("polynomial and series over different fields")
    n = g.truncation
    p = h.field.p
    powers = [series_one(h.field, n)]
    for _ in range(h.degree_y):
        powers.append(series_mul(powers[-1], g))
    out = [0] * n
    for (i, j), c in h.terms.items():
        gj = powers[j].coeffs
        for k in range(n - i):
            v = gj[k]
            if v:
                out[i + k] = (out[i + k] + c * v) % p
    return TruncatedSeries(h.field, tuple(out))


def annihilates(h: BivariatePoly, g: TruncatedSeries) -> bool:
    return eval_poly_at_series(h, g).is_zero


# -- exact division -------------------------------------------------------------


def try_divide(h: BivariatePoly, g: BivariatePoly) -> BivariatePoly | None:
    """Exact quotient h / g, or None when g does not divide h.

    Performed as long division in y over F_p[x]; each leading coefficient
    division must be exact, which characterizes divisibility in a UFD.
    """
    h._check_field(g)
    if g.is_zero:
        raise ZeroDivisorError("division by the zero polynomial")
    p = h.field.p
    if h.is_zero:
        return BivariatePoly(h.field, {})
    gy = g.degree_y
    if gy == 0:
        gx = g.at_y_zero()
        quot: dict[tuple[int, int], int] = {}
        for j, coeff in h.y_coefficients().items():
            q, r = uni.divmod_(coeff, gx, p)
            if r:
                return None
            for i, c in enumerate(q):
                if c:
                    quot[(i, j)] = c
        return BivariatePoly(h.field, quot)

    lead = g.y_coefficients()[gy]
    cur = dict(h.terms)
    quot = {}
    while cur:
        dy = max(j for (_, j) in cur)
        if dy < gy:
            return None
        top = [0] * (max((i for (i, j) in cur if j == dy), default=0) + 1)
        for (i, j), c in cur.items():
            if j == dy:
                top[i] = c
        q, r = uni.divmod_(uni.trim(top), lead, p)
        if r or not q:
            return None
        qterm = BivariatePoly(h.field, {(i, dy - gy): c for i, c in enumerate(q) if c})
        sub = qterm * g
        for m, c in sub.terms.items():
            nv = (cur.get(m, 0) - c) % p
            if nv:
                cur[m] = nv
            elif m in cur:
                del cur[m]
        for m, c in qterm.terms.items():
            quot[m] = c
    return BivariatePoly(h.field, quot)


def divides(g: BivariatePoly, h: BivariatePoly) -> bool:
    return try_divide(h, g) is not None


# -- irreducibility ---------------------------------------------------------------


def _form_divisors(lead: dict[tuple[int, int], int], d: int, p: int, e: int,
                   budget: uni.WorkBudget) -> list[dict[tuple[int, int], int]]:
    """Degree-e binary-form divisors of the degree-d leading form, one per scalar class.

    The form equals y^beta times the homogenization of f(z) = lead(z, 1), so its
    degree-e divisors are y^c times homogenized monic divisors of f.
    """
    f = [0] * (d + 1)
    for (i, _), c in lead.items():
        f[i] = c
    f = uni.trim(f)
    beta = d - uni.degree(f)

    divisors: list[list[int]] = [[1]]
    _, factors = uni.monic_factors(f, p, budget)
    for gfac, m in Counter(factors).items():
        powers = [[1]]
        for _ in range(m):
            powers.append(uni.mul(powers[-1], list(gfac), p))
        divisors = [
            uni.mul(dv, pw, p)
            for dv in divisors
            for pw in powers
            if uni.degree(dv) + uni.degree(pw) <= e
        ]
    out = {}
    for dv in divisors:
        c = e - uni.degree(dv)
        if 0 <= c <= beta:
            form = {(i, e - i): co for i, co in enumerate(dv) if co}
            out[tuple(sorted(form.items()))] = form
    return list(out.values())


def _axis_candidates(divs: list[tuple[int, ...]], lead_coeff: int, e: int, p: int) -> list[list[int]]:
    """Possible axis specializations of a degree-e divisor.

    When the divisor's leading-form coefficient on this axis is nonzero, the
    specialization has degree exactly e with that leading coefficient;
    otherwise it is any scalar multiple of a divisor of degree < e (including
    nonzero constants).
    """
    out = []
    if lead_coeff:
        for t in divs:
            if uni.degree(list(t)) == e:
                out.append([(c * lead_coeff) % p for c in t])
    else:
        for t in list(divs) + [(1,)]:
            if uni.degree(list(t)) <= e - 1:
                for c in range(1, p):
                    out.append([(v * c) % p for v in t])
    return out


def is_irreducible(h: BivariatePoly, budget: int = DEFAULT_DIVISOR_BUDGET) -> bool:
    """True iff h has no factorization into two factors of total degree >= 1.

    Decision procedure: degree-1 polynomials are irreducible; content in x or y
    means reducible; polynomials of degree <= 1 in one variable reduce to a
    univariate gcd/irreducibility question. The general case is trial division
    where every candidate divisor is anchored by three exact necessary
    conditions: its leading form divides the leading form of h, and its
    specializations to y=0 and x=0 divide h(x,0) and h(0,y). Each anchor is a
    theorem (homogeneous leading parts and axis specializations are
    multiplicative and nonzero here), so the procedure is complete.
    """
    if h.is_zero:
        raise ZeroPolynomialError("irreducibility of the zero polynomial is undefined")
    d = h.total_degree
    if d == 0:
        return False  # nonzero constants are units
    if d == 1:
        return True

    hx = h.at_y_zero()
    if not hx:
        return False  # y divides h and the cofactor has degree >= 1
    hy = h.at_x_zero()
    if not hy:
        return False  # x divides h

    work = uni.WorkBudget(budget)

    dy, dx = h.degree_y, h.degree_x
    if dy == 0:
        return uni.is_irreducible_univariate(hx, h.field.p, work)
    if dx == 0:
        return uni.is_irreducible_univariate(hy, h.field.p, work)
    if dy == 1:
        cols = h.y_coefficients()
        g = uni.gcd(cols.get(1, []), cols.get(0, []), h.field.p)
        return uni.degree(g) == 0
    if dx == 1:
        rows: dict[int, list[int]] = {}
        for (i, j), c in h.terms.items():
            rows.setdefault(i, [0] * (dy + 1))[j] = c
        g = uni.gcd(rows.get(1, []), rows.get(0, []), h.field.p)
        return uni.degree(g) == 0

    p = h.field.p
    lead = h.leading_form()
    for e in range(1, d // 2 + 1):
        forms = _form_divisors(lead, d, p, e, work)
        if not forms:
            continue
        x_divs = uni.monic_divisors_upto(hx, p, e, work)
        y_divs = uni.monic_divisors_upto(hy, p, e, work)
        middle = [(i, j) for i in range(1, e) for j in range(1, e) if i + j <= e - 1]
        for lf in forms:
            a0 = lf.get((e, 0), 0)
            ae = lf.get((0, e), 0)
            for tx in _axis_candidates(x_divs, a0, e, p):
                for ty in _axis_candidates(y_divs, ae, e, p):
                    if tx[0] != ty[0]:
                        continue  # both are g(0,0)
                    base = dict(lf)
                    for i, c in enumerate(tx):
                        if i < e and c:
                            base[(i, 0)] = c
                    for j, c in enumerate(ty):
                        if 0 < j < e and c:
                            base[(0, j)] = c
                    for mid_vals in itertools.product(range(p), repeat=len(middle)):
                        g = dict(base)
                        for m, c in zip(middle, mid_vals):
                            if c:
                                g[m] = c
                        work.spend()
                        cand = BivariatePoly(h.field, g)
                        if try_divide(h, cand) is not None:
                            return False
    return True


# -- enumeration and counting ------------------------------------------------------


def normalized_count(q: int, d: int) -> int:
    """Number of normalized polynomials of total degree exactly d over F_q."""
    if d < 0:
        return 0
    lead = (q ** (d + 1) - 1) // (q - 1) if q > 1 else d + 1
    lower = q ** monomial_count(d - 1) if d > 0 else 1
    return lead * lower


def enumerate_normalized(field: PrimeField, d: int,
                         cap: int = ENUMERATION_CAP) -> Iterator[BivariatePoly]:
    """Yield every normalized polynomial of total degree exactly d, once each.

    Order: leading coefficient vectors (a_0..a_d) with first nonzero = 1 in
    lexicographic order, then the M(d-1) coefficient vector in lexicographic
    order (both over residues 0..p-1 in the documented monomial order).
    """
    if d < 0:
        raise ExcomRangeError("degree must be nonnegative")
    yield from _enumerate_normalized(field, d, cap)


def _enumerate_normalized(field: PrimeField, d: int, cap: int) -> Iterator[BivariatePoly]:
    q = field.p
    total = normalized_count(q, d)
    if total > cap:
        raise BudgetExceededError(
            f"enumeration of {total} normalized polynomials exceeds cap {cap}",
            needed=total,
            cap=cap,
        )
    if d == 0:
        yield BivariatePoly(field, {(0, 0): 1})
        return
    lead_monomials = [(d - j, j) for j in range(d + 1)]
    lower_monomials = monomials_upto(d - 1)
    for first in range(d + 1):
        for tail in itertools.product(range(q), repeat=d - first):
            lead_vec = (0,) * first + (1,) + tail
            lead_terms = {m: c for m, c in zip(lead_monomials, lead_vec) if c}
            for lower in itertools.product(range(q), repeat=len(lower_monomials)):
                terms = dict(lead_terms)
                for m, c in zip(lower_monomials, lower):
                    if c:
                        terms[m] = c
                yield BivariatePoly(field, terms)


def count_normalized_irreducible(field: PrimeField, d: int,
                                 cap: int = ENUMERATION_CAP,
                                 divisor_budget: int = DEFAULT_DIVISOR_BUDGET) -> int:
    """Exact count of normalized irreducible polynomials of total degree d."""
    if d < 1:
        raise ZeroPolynomialError("counting requires d >= 1")
    return sum(
        1 for h in _enumerate_normalized(field, d, cap) if is_irreducible(h, divisor_budget)
    )


def carlitz_estimate(field: PrimeField, d: int) -> tuple[Fraction, int]:
    """Main term q^C(d+2,2) / (q-1) and error scale q^C(d+1,2), exactly."""
    q = field.p
    main = Fraction(q ** monomial_count(d), q - 1)
    scale = q ** monomial_count(d - 1)
    return main, scale
