"""Exact Gaussian-rational scalars and the index group Δ."""

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Union

from conformal_forge.errors import (
    DependentGeneratorsError,
    RankMismatchError,
    ScalarParseError,
    ScalarZeroDivisionError,
)
from conformal_forge.linalg import solve_linear, row_reduce

Number = Union["Scalar", Fraction, int]

_IMAG_SPLIT = re.compile(r"(?<=[0-9/.)])(?=[+-])")


class Scalar:
    """An element re + im·i of Q(i).

    Both parts are Fractions, so they are always in lowest terms with a
    positive denominator and zero is stored as 0/1.
    """

    __slots__ = ("re", "im", "_hash")

    def __init__(self, re: Union[Fraction, int] = 0, im: Union[Fraction, int] = 0) -> None:
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)
        self._hash = None

    # -- construction ------------------------------------------------------

    @classmethod
    def coerce(cls, value: Union["Scalar", Fraction, int, str]) -> "Scalar":
        """Convert ints, Fractions and Scalar text into a Scalar."""
        if isinstance(value, Scalar):
            return value
        if isinstance(value, (int, Fraction)):
            return cls(value)
        if isinstance(value, str):
            return parse_scalar(value)
        raise TypeError(f"cannot convert {type(value).__name__} to Scalar")

    # -- field parts ---------------------------------------------------------

    def conjugate(self) -> "Scalar":
        return Scalar(self.re, -self.im)

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: Number) -> "Scalar":
        if isinstance(other, Scalar):
            return Scalar(self.re + other.re, self.im + other.im)
        if isinstance(other, (int, Fraction)):
            return Scalar(self.re + other, self.im)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other: Number) -> "Scalar":
        if isinstance(other, Scalar):
            return Scalar(self.re - other.re, self.im - other.im)
        if isinstance(other, (int, Fraction)):
            return Scalar(self.re - other, self.im)
        return NotImplemented

    def __rsub__(self, other: Number) -> "Scalar":
        if isinstance(other, (int, Fraction)):
            return Scalar(other - self.re, -self.im)
        return NotImplemented

    def __mul__(self, other: Number) -> "Scalar":
        if isinstance(other, Scalar):
            if not other.im and not self.im:
                return Scalar(self.re * other.re)
            return Scalar(
                self.re * other.re - self.im * other.im,
                self.re * other.im + self.im * other.re,
            )
        if isinstance(other, (int, Fraction)):
            return Scalar(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other: Number) -> "Scalar":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ScalarZeroDivisionError(f"division of {self} by zero")
            return Scalar(self.re / other, self.im / other)
        if isinstance(other, Scalar):
            if not other:
                raise ScalarZeroDivisionError(f"division of {self} by zero")
            if not other.im:
                return Scalar(self.re / other.re, self.im / other.re)
            norm = other.re * other.re + other.im * other.im
            num = self * other.conjugate()
            return Scalar(num.re / norm, num.im / norm)
        return NotImplemented

    def __rtruediv__(self, other: Number) -> "Scalar":
        if isinstance(other, (int, Fraction)):
            return Scalar(other) / self
        return NotImplemented

    def __neg__(self) -> "Scalar":
        return Scalar(-self.re, -self.im)

    def __pos__(self) -> "Scalar":
        return self

    def __pow__(self, exponent: int) -> "Scalar":
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return Scalar(1) / (self ** -exponent)
        result = Scalar(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    # -- comparison and hashing ---------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Scalar):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.re) if not self.im else hash((self.re, self.im))
        return self._hash

    # -- text ----------------------------------------------------------------

    def __str__(self) -> str:
        return format_scalar(self)

    def __repr__(self) -> str:
        return f"Scalar({format_scalar(self)!r})"


ZERO = Scalar(0)
ONE = Scalar(1)
I = Scalar(0, 1)


def _parse_fraction(text: str, original: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as e:
        raise ScalarParseError(f"malformed scalar {original!r}: {e}") from e


def parse_scalar(text: str) -> Scalar:
    """Parse the exact Scalar syntax "p/q" or "p/q+r/si".

    Whitespace is ignored and the Unicode minus sign is accepted. An
    imaginary part "r/si" means (r/s)·i; a bare "i" means 1·i.

    Args:
        text: Scalar text, e.g. "−1/3+2i"

    Returns:
        The parsed Scalar
    """
    cleaned = "".join(text.split()).replace("−", "-")
    if not cleaned:
        raise ScalarParseError("empty scalar")
    if not cleaned.endswith("i"):
        return Scalar(_parse_fraction(cleaned, text))

    body = cleaned[:-1]
    parts = _IMAG_SPLIT.split(body)
    if len(parts) == 1:
        real_text, imag_text = "", parts[0]
    elif len(parts) == 2:
        real_text, imag_text = parts
    else:
        raise ScalarParseError(f"malformed scalar {text!r}")

    if imag_text in ("", "+"):
        imag = Fraction(1)
    elif imag_text == "-":
        imag = Fraction(-1)
    else:
        imag = _parse_fraction(imag_text, text)
    real = _parse_fraction(real_text, text) if real_text else Fraction(0)
    return Scalar(real, imag)


def format_scalar(s: Scalar) -> str:
    """Canonical text form, parseable by parse_scalar."""
    if not s.im:
        return str(s.re)
    if s.im == 1:
        imag = "i"
    elif s.im == -1:
        imag = "-i"
    else:
        imag = f"{s.im}i"
    if not s.re:
        return imag
    if imag.startswith("-"):
        return f"{s.re}{imag}"
    return f"{s.re}+{imag}"


@dataclass(frozen=True, order=True)
class DeltaVector:
    """Integer coordinates of an element of Δ with respect to its generators."""
    coords: tuple[int, ...]

    def __add__(self, other: "DeltaVector") -> "DeltaVector":
        if len(self.coords) != len(other.coords):
            raise RankMismatchError(f"cannot add vectors of rank {len(self.coords)} and {len(other.coords)}")
        return DeltaVector(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "DeltaVector":
        return DeltaVector(tuple(-a for a in self.coords))

    def __sub__(self, other: "DeltaVector") -> "DeltaVector":
        return self + (-other)

    @property
    def rank(self) -> int:
        return len(self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.coords) + ")"


def vec(*coords: int) -> DeltaVector:
    """Shorthand constructor, vec(1, 2) == DeltaVector((1, 2))."""
    return DeltaVector(tuple(coords))


@dataclass(frozen=True)
class DeltaGroup:
    """A finitely generated subgroup of C, free abelian on its generators.

    Attributes:
        generators: Q-linearly independent Scalars spanning Δ over Z
    """
    generators: tuple[Scalar, ...]

    def __post_init__(self) -> None:
        gens = tuple(Scalar.coerce(g) for g in self.generators)
        object.__setattr__(self, "generators", gens)
        if any(not g for g in gens):
            raise DependentGeneratorsError("zero generator")
        rows = [[g.re, g.im] for g in gens]
        if len(row_reduce(rows)) != len(gens):
            raise DependentGeneratorsError(
                "generators " + ", ".join(str(g) for g in gens) + " are linearly dependent over Q"
            )

    @classmethod
    def parse(cls, text: str) -> "DeltaGroup":
        """Build Δ from comma-separated generators, e.g. "1, i"."""
        items = [item for item in text.split(",") if item.strip()]
        return cls(tuple(parse_scalar(item) for item in items))

    @property
    def rank(self) -> int:
        return len(self.generators)

    def __str__(self) -> str:
        return "⟨" + ", ".join(str(g) for g in self.generators) + "⟩"


def delta_eval(g: DeltaGroup, v: DeltaVector) -> Scalar:
    """The complex number sum_k v_k · generator_k.

    Raises:
        RankMismatchError: If the vector rank differs from the group rank
    """
    if len(v.coords) != g.rank:
        raise RankMismatchError(f"vector {v} has rank {len(v.coords)}, Δ has rank {g.rank}")
    total = ZERO
    for coord, gen in zip(v.coords, g.generators):
        if coord:
            total = total + gen * coord
    return total


def delta_membership(g: DeltaGroup, s: Scalar) -> Optional[DeltaVector]:
    """Coordinates of s in Δ, or None if s is not in Δ.

    Solves the Q-linear system on real and imaginary parts; the generators are
    independent, so the solution is unique when it exists.
    """
    s = Scalar.coerce(s)
    if g.rank == 0:
        return DeltaVector(()) if not s else None
    rows = [[gen.re, gen.im] for gen in g.generators]
    solution = solve_linear(rows, [s.re, s.im])
    if solution is None:
        return None
    coords = []
    for value in solution:
        value = Fraction(value)
        if value.denominator != 1:
            return None
        coords.append(int(value))
    return DeltaVector(tuple(coords))


def scalar_arithmetic(a: Scalar, b: Scalar, op: str) -> Scalar:
    """Apply one of "add", "sub", "mul", "div" to two Scalars."""
    operations = {
        "add": lambda x, y: x + y,
        "sub": lambda x, y: x - y,
        "mul": lambda x, y: x * y,
        "div": lambda x, y: x / y,
    }
    if op not in operations:
        raise ValueError(f"unknown operation {op!r}")
    return operations[op](Scalar.coerce(a), Scalar.coerce(b))


def scalar_sum(values: Iterable[Scalar]) -> Scalar:
    total = ZERO
    for value in values:
        total = total + value
    return total
