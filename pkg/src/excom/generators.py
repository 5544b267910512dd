"""Sequence sources: the explicit inversive congruential generator, seeded
random sequences, literals, and the sequence file format."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .errors import InvalidModulusError, RangeError, SequenceFormatError
from .field import PrimeField, is_prime
from .rng import PRNG_ID, SplitMix64
from .series import (
    SequencePrefix,
    TruncatedSeries,
    geometric_series,
    series_from_prefix,
)


def _inversive_field(p) -> PrimeField:
    if isinstance(p, PrimeField):
        field = p
    else:
        if not is_prime(p):
            raise InvalidModulusError(f"{p} is not prime")
        field = PrimeField(p)
    if field.p < 3:
        raise InvalidModulusError("the inversive generator requires p >= 3")
    return field


def inversive_prefix(p, shift: int = 0, length: int = 0) -> SequencePrefix:
    """s_n = ((n + shift) mod p)^(p-2) mod p: modular inversion with 0 -> 0.

    Purely periodic with least period p; lengths beyond p wrap around.
    """
    field = _inversive_field(p)
    q = field.p
    if not 0 <= shift < q:
        raise RangeError(f"shift must be in [0, {q}), got {shift}")
    if length < 0:
        raise RangeError("length must be nonnegative")
    period = [pow(n, q - 2, q) for n in range(q)]
    return SequencePrefix(
        field, tuple(period[(n + shift) % q] for n in range(length))
    )


def random_prefix(field: PrimeField, length: int, seed: int) -> SequencePrefix:
    """Uniform symbols from the pinned splitmix64 stream; deterministic in (q, length, seed)."""
    if length < 0:
        raise RangeError("length must be nonnegative")
    rng = SplitMix64(seed)
    return SequencePrefix(field, tuple(rng.randbelow(field.p) for _ in range(length)))


@dataclass(frozen=True)
class GeneratorSpec:
    """Declarative description of a sequence source.

    kind is one of "inversive" (p, shift, length), "random" (p, length, seed),
    "file" (path), "literal" (p, symbols).
    """

    kind: str
    p: int | None = None
    shift: int = 0
    length: int = 0
    seed: int | None = None
    path: str | None = None
    symbols: tuple[int, ...] | None = None

    def realize(self) -> SequencePrefix:
        if self.kind == "inversive":
            return inversive_prefix(self.p, self.shift, self.length)
        if self.kind == "random":
            if self.seed is None:
                raise RangeError("random generator requires an explicit seed")
            return random_prefix(PrimeField(self.p), self.length, self.seed)
        if self.kind == "file":
            return read_sequence_file(self.path)
        if self.kind == "literal":
            return SequencePrefix(PrimeField(self.p), tuple(self.symbols))
        raise ValueError(f"unknown generator kind {self.kind!r}")


# -- derivative identity of the inversive generating function -------------------


@dataclass(frozen=True)
class DerivativeIdentityReport:
    p: int
    n_checked: int
    ok: bool
    first_mismatch: int | None = None

    def to_json_dict(self) -> dict:
        return {
            "p": self.p,
            "n_checked": self.n_checked,
            "ok": self.ok,
            "first_mismatch": self.first_mismatch,
        }


def check_derivative_identity(p, n_check: int) -> DerivativeIdentityReport:
    """Verify G'(x) = 1/(1-x) - x^(p-1)/(1-x^p) coefficient-wise up to n_check.

    The left side is (i+1) * s_{i+1} at index i, with s the inversive sequence;
    the right side is expanded as an actual truncated series.
    """
    field = _inversive_field(p)
    q = field.p
    if n_check < 1:
        raise RangeError("n_check must be >= 1")
    s = inversive_prefix(field, 0, n_check + 1)
    rhs = geometric_series(field, 1, n_check) - geometric_series(field, q, n_check).shifted(q - 1)
    for i in range(n_check):
        lhs = ((i + 1) * s[i + 1]) % q
        if lhs != rhs[i]:
            return DerivativeIdentityReport(q, n_check, False, first_mismatch=i)
    return DerivativeIdentityReport(q, n_check, True)


def inversive_series(p, length: int) -> TruncatedSeries:
    """Generating function prefix of the unshifted inversive sequence."""
    return series_from_prefix(inversive_prefix(p, 0, length))


# -- sequence file format -----------------------------------------------------
#
# line 1:            p=<modulus>
# remaining lines:   whitespace-separated decimal residues in [0, p)


def read_sequence_file(source) -> SequencePrefix:
    """Parse the sequence file format with line/column diagnostics."""
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8") as fh:
            return read_sequence_file(fh)
    lines = source.read().splitlines()
    if not lines:
        raise SequenceFormatError("empty file, expected 'p=<modulus>' header", 1, 1)
    header = lines[0].strip()
    if not header.startswith("p="):
        raise SequenceFormatError("first line must be 'p=<modulus>'", 1, 1)
    try:
        p = int(header[2:])
    except ValueError:
        raise SequenceFormatError(f"bad modulus {header[2:]!r}", 1, 3) from None
    try:
        field = PrimeField(p)
    except Exception as exc:
        raise SequenceFormatError(str(exc), 1, 3) from None
    symbols = []
    for lineno, line in enumerate(lines[1:], start=2):
        col = 1
        for token in line.split():
            col = line.index(token, col - 1) + 1
            if not token.lstrip("-").isdigit():
                raise SequenceFormatError(f"not an integer: {token!r}", lineno, col)
            value = int(token)
            if not 0 <= value < p:
                raise SequenceFormatError(
                    f"symbol {value} out of range [0, {p})", lineno, col
                )
            symbols.append(value)
            col += len(token)
    return SequencePrefix(field, tuple(symbols))


def format_sequence(s: SequencePrefix) -> str:
    body = " ".join(str(v) for v in s.symbols)
    return f"p={s.field.p}\n{body}\n" if s.symbols else f"p={s.field.p}\n"


def write_sequence_file(s: SequencePrefix, target) -> None:
    if isinstance(target, (str, Path)):
        with open(target, "w", encoding="utf-8") as fh:
            fh.write(format_sequence(s))
    else:
        target.write(format_sequence(s))
