"""Basis indices and finitely supported linear combinations."""

from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Mapping, Union

from conformal_forge.errors import InvalidIndexError
from conformal_forge.scalars import DeltaVector, Scalar, ZERO


@dataclass(frozen=True, order=True)
class Int:
    """Basis label L_i of an A1-type algebra."""
    i: int

    def __str__(self) -> str:
        return f"L_{self.i}"


@dataclass(frozen=True, order=True)
class Vec:
    """Basis label x_α of an A2-type algebra."""
    v: DeltaVector

    def __str__(self) -> str:
        return f"x_{self.v}"


@dataclass(frozen=True, order=True)
class VecNat:
    """Basis label x_{α,n} of an A3-type algebra."""
    v: DeltaVector
    n: int

    def __str__(self) -> str:
        return f"x_{self.v},{self.n}"


@dataclass(frozen=True, order=True)
class Sym:
    """Basis label of a finite-table algebra."""
    name: str

    def __str__(self) -> str:
        return self.name


BasisIndex = Union[Int, Vec, VecNat, Sym]
Validity = Callable[[BasisIndex], bool]


def always_valid(idx: BasisIndex) -> bool:
    return True


class Element:
    """Finitely supported Scalar-linear combination of basis indices.

    Zero coefficients are never stored, so equality is support equality.
    Iteration follows the canonical order of the indices.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[BasisIndex, Scalar] = None) -> None:
        self._terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def basis(cls, idx: BasisIndex, coeff: Union[Scalar, int] = 1) -> "Element":
        return cls({idx: Scalar.coerce(coeff)})

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[BasisIndex, Scalar]],
                   is_valid: Validity = always_valid) -> "Element":
        """Combine (index, coefficient) pairs.

        Zero coefficients are dropped before validity is checked, so a rule
        may name an invalid index as long as its coefficient vanishes.

        Raises:
            InvalidIndexError: If a nonzero coefficient sits on an invalid index
        """
        acc: dict[BasisIndex, Scalar] = {}
        for idx, coeff in terms:
            if not coeff:
                continue
            acc[idx] = acc.get(idx, ZERO) + coeff
        result = cls(acc)
        for idx in result._terms:
            if not is_valid(idx):
                raise InvalidIndexError(f"index {idx} is not valid for this algebra")
        return result

    # -- access --------------------------------------------------------------

    def items(self) -> list[tuple[BasisIndex, Scalar]]:
        return sorted(self._terms.items())

    def support(self) -> list[BasisIndex]:
        return sorted(self._terms)

    def coeff(self, idx: BasisIndex) -> Scalar:
        return self._terms.get(idx, ZERO)

    def as_dict(self) -> dict[BasisIndex, Scalar]:
        return dict(self._terms)

    def __iter__(self) -> Iterator[tuple[BasisIndex, Scalar]]:
        return iter(self.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "Element") -> "Element":
        if not isinstance(other, Element):
            return NotImplemented
        terms = dict(self._terms)
        for idx, coeff in other._terms.items():
            terms[idx] = terms.get(idx, ZERO) + coeff
        return Element(terms)

    def __neg__(self) -> "Element":
        return Element({k: -v for k, v in self._terms.items()})

    def __sub__(self, other: "Element") -> "Element":
        if not isinstance(other, Element):
            return NotImplemented
        return self + (-other)

    def scale(self, c: Union[Scalar, int]) -> "Element":
        if not c:
            return Element()
        return Element({k: v * c for k, v in self._terms.items()})

    def __mul__(self, c: Union[Scalar, int]) -> "Element":
        return self.scale(c)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        return " + ".join(f"({c})·{idx}" for idx, c in self.items())

    def __repr__(self) -> str:
        return f"Element({self})"

    def to_json(self) -> dict[str, str]:
        return {str(idx): str(c) for idx, c in self.items()}


def linear_extension(rule: Callable[[BasisIndex, BasisIndex], Element],
                     x: Element, y: Element) -> Element:
    """Bilinear extension of a rule on basis pairs."""
    acc: dict[BasisIndex, Scalar] = {}
    for xi, xc in x._terms.items():
        for yi, yc in y._terms.items():
            value = rule(xi, yi)
            if not value:
                continue
            factor = xc * yc
            for idx, coeff in value._terms.items():
                acc[idx] = acc.get(idx, ZERO) + coeff * factor
    return Element(acc)
