"""Sequence prefixes and truncated power series over a prime field."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import FieldMismatchError, RangeError, TruncationMismatchError
from .field import PrimeField


@dataclass(frozen=True)
class SequencePrefix:
    """The first N symbols (s_0, ..., s_{N-1}) of a sequence over F_p."""

    field: PrimeField
    symbols: tuple[int, ...]

    def __post_init__(self):
        p = self.field.p
        syms = tuple(int(s) for s in self.symbols)
        for s in syms:
            if not 0 <= s < p:
                raise RangeError(f"symbol {s} is not a residue mod {p}")
        object.__setattr__(self, "symbols", syms)

    def __len__(self):
        return len(self.symbols)

    def __getitem__(self, i):
        return self.symbols[i]

    def truncated(self, n: int) -> "SequencePrefix":
        return SequencePrefix(self.field, self.symbols[:n])

    def extended(self, extra) -> "SequencePrefix":
        return SequencePrefix(self.field, self.symbols + tuple(extra))

    @property
    def is_zero(self) -> bool:
        return all(s == 0 for s in self.symbols)

    def first_nonzero(self) -> int | None:
        for i, s in enumerate(self.symbols):
            if s:
                return i
        return None


@dataclass(frozen=True)
class TruncatedSeries:
    """A power series known modulo x**truncation; coeffs[i] is the x**i coefficient."""

    field: PrimeField
    coeffs: tuple[int, ...]

    def __post_init__(self):
        p = self.field.p
        object.__setattr__(self, "coeffs", tuple(int(c) % p for c in self.coeffs))

    @property
    def truncation(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i]

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        _check_compatible(self, other)
        p = self.field.p
        return TruncatedSeries(
            self.field, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs))
        )

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        _check_compatible(self, other)
        p = self.field.p
        return TruncatedSeries(
            self.field, tuple((a - b) % p for a, b in zip(self.coeffs, other.coeffs))
        )

    def scaled(self, c: int) -> "TruncatedSeries":
        p = self.field.p
        c %= p
        return TruncatedSeries(self.field, tuple((c * v) % p for v in self.coeffs))

    def shifted(self, k: int) -> "TruncatedSeries":
        """Multiply by x**k, keeping the truncation order."""
        n = self.truncation
        return TruncatedSeries(self.field, (0,) * min(k, n) + self.coeffs[: max(n - k, 0)])


def _check_compatible(a: TruncatedSeries, b: TruncatedSeries):
    if a.field != b.field:
        raise FieldMismatchError("series over different fields")
    if a.truncation != b.truncation:
        raise TruncationMismatchError(
            f"truncations differ: {a.truncation} vs {b.truncation}"
        )


def series_from_prefix(s: SequencePrefix) -> TruncatedSeries:
    """The generating function of the prefix, modulo x**len(s)."""
    return TruncatedSeries(s.field, s.symbols)


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product truncated to the common order."""
    _check_compatible(a, b)
    n = a.truncation
    p = a.field.p
    out = [0] * n
    for i, ai in enumerate(a.coeffs):
        if ai:
            for j in range(n - i):
                bj = b.coeffs[j]
                if bj:
                    out[i + j] = (out[i + j] + ai * bj) % p
    return TruncatedSeries(a.field, tuple(out))


def series_one(field: PrimeField, n: int) -> TruncatedSeries:
    return TruncatedSeries(field, (1,) + (0,) * (n - 1) if n else ())


def geometric_series(field: PrimeField, step: int, n: int) -> TruncatedSeries:
    """1 / (1 - x**step) expanded to truncation n."""
    coeffs = [1 if i % step == 0 else 0 for i in range(n)]
    return TruncatedSeries(field, tuple(coeffs))
