"""Gel'fand-Dorfman bialgebras: Novikov product, Lie bracket, star product and axiom checks."""

from dataclasses import dataclass
from itertools import product
from typing import Callable, Iterable, Iterator, Optional

from conformal_forge.constants import TORTKEN_VARIANTS
from conformal_forge.elements import (
    BasisIndex,
    Element,
    Validity,
    always_valid,
    linear_extension,
)
from conformal_forge.errors import InvalidIndexError, WindowError
from conformal_forge.logger import get_logger
from conformal_forge.reports import Failure, Report
from conformal_forge.scalars import Scalar

logger = get_logger("GD")

Rule = Callable[[BasisIndex, BasisIndex], Element]


def zero_rule(x: BasisIndex, y: BasisIndex) -> Element:
    return Element()


@dataclass(frozen=True)
class Window:
    """Finite list of basis indices on which identities are checked.

    Attributes:
        indices: Distinct basis indices, in the order given
    """
    indices: tuple[BasisIndex, ...]

    def __post_init__(self) -> None:
        indices = tuple(self.indices)
        object.__setattr__(self, "indices", indices)
        if len(set(indices)) != len(indices):
            seen = set()
            dupes = sorted({str(i) for i in indices if i in seen or seen.add(i)})
            raise WindowError("duplicate window indices: " + ", ".join(dupes))

    @classmethod
    def of(cls, indices: Iterable[BasisIndex]) -> "Window":
        return cls(tuple(indices))

    def __iter__(self) -> Iterator[BasisIndex]:
        return iter(self.indices)

    def __len__(self) -> int:
        return len(self.indices)

    def __contains__(self, idx: object) -> bool:
        return idx in self.indices

    def render(self) -> list[str]:
        return [str(i) for i in self.indices]


class GDStructure:
    """An indexed basis with closed-form rules for ∘ and [·,·].

    Rules are evaluated on basis pairs and memoized; products of Elements are
    their bilinear extensions.
    """

    def __init__(
        self,
        name: str,
        index_kind: str,
        novikov_rule: Rule,
        lie_rule: Optional[Rule] = None,
        is_valid: Validity = always_valid,
        description: str = "",
        params: Optional[dict[str, str]] = None,
        finite_basis: Optional[tuple[BasisIndex, ...]] = None,
    ) -> None:
        """Initialize a GD structure.

        Args:
            name: Short name used in reports, e.g. "A1"
            index_kind: "int", "vec", "vecnat" or "sym"
            novikov_rule: Basis rule for the Novikov product
            lie_rule: Basis rule for the Lie bracket (zero if omitted)
            is_valid: Validity predicate of basis indices
            description: Human-readable description of the rules
            params: Parameters of the structure, rendered as text
            finite_basis: The whole basis, for finite-dimensional tables
        """
        self.name = name
        self.index_kind = index_kind
        self.novikov_rule = novikov_rule
        self.lie_rule = lie_rule or zero_rule
        self.is_valid = is_valid
        self.description = description
        self.params = dict(params or {})
        self.finite_basis = tuple(sorted(finite_basis)) if finite_basis is not None else None
        self._novikov_cache: dict[tuple[BasisIndex, BasisIndex], Element] = {}
        self._lie_cache: dict[tuple[BasisIndex, BasisIndex], Element] = {}
        self._star_cache: dict[tuple[BasisIndex, BasisIndex], Element] = {}

    def __repr__(self) -> str:
        return f"GDStructure({self.name!r})"

    # -- basis rules -----------------------------------------------------------

    def novikov_basis(self, x: BasisIndex, y: BasisIndex) -> Element:
        key = (x, y)
        value = self._novikov_cache.get(key)
        if value is None:
            value = self.novikov_rule(x, y)
            self._novikov_cache[key] = value
        return value

    def lie_basis(self, x: BasisIndex, y: BasisIndex) -> Element:
        key = (x, y)
        value = self._lie_cache.get(key)
        if value is None:
            value = self.lie_rule(x, y)
            self._lie_cache[key] = value
        return value

    def star_basis(self, x: BasisIndex, y: BasisIndex) -> Element:
        key = (x, y) if x <= y else (y, x)
        value = self._star_cache.get(key)
        if value is None:
            value = self.novikov_basis(x, y) + self.novikov_basis(y, x)
            self._star_cache[key] = value
        return value

    # -- bilinear products -------------------------------------------------

    def novikov(self, x: Element, y: Element) -> Element:
        return linear_extension(self.novikov_basis, x, y)

    def lie(self, x: Element, y: Element) -> Element:
        return linear_extension(self.lie_basis, x, y)

    def star(self, x: Element, y: Element) -> Element:
        return linear_extension(self.star_basis, x, y)

    def product(self, name: str) -> Callable[[Element, Element], Element]:
        """The bilinear product called name: "novikov", "lie" or "star"."""
        return {"novikov": self.novikov, "lie": self.lie, "star": self.star}[name]

    # -- validation ----------------------------------------------------------

    def validate(self, x: Element) -> None:
        for idx in x.support():
            if not self.is_valid(idx):
                raise InvalidIndexError(f"index {idx} is not valid for {self.name}")

    def validate_window(self, window: Window) -> None:
        for idx in window:
            if not self.is_valid(idx):
                raise InvalidIndexError(f"window index {idx} is not valid for {self.name}")

    def with_lie(self, lie_rule: Rule, name: Optional[str] = None,
                 params: Optional[dict[str, str]] = None) -> "GDStructure":
        """Same Novikov product, different Lie bracket."""
        return GDStructure(
            name=name or self.name,
            index_kind=self.index_kind,
            novikov_rule=self.novikov_rule,
            lie_rule=lie_rule,
            is_valid=self.is_valid,
            description=self.description,
            params={**self.params, **(params or {})},
            finite_basis=self.finite_basis,
        )


def novikov_product(A: GDStructure, x: Element, y: Element) -> Element:
    """x ∘ y, the bilinear extension of A's Novikov rule."""
    A.validate(x)
    A.validate(y)
    return A.novikov(x, y)


def lie_bracket(A: GDStructure, x: Element, y: Element) -> Element:
    """[x, y], the bilinear extension of A's Lie rule."""
    A.validate(x)
    A.validate(y)
    return A.lie(x, y)


def star_product(A: GDStructure, x: Element, y: Element) -> Element:
    """x ∗ y = x∘y + y∘x."""
    A.validate(x)
    A.validate(y)
    return A.star(x, y)


def _report(check: str, A: GDStructure, W: Window, failures: list[Failure],
            tuples: int, extra: Optional[dict[str, str]] = None) -> Report:
    status = "fail" if failures else "pass"
    if failures:
        verdict = f"{len(failures)} failing of {tuples} checked"
    else:
        verdict = f"all {tuples} checked tuples satisfy the identity"
    params = {"structure": A.name, **A.params, **(extra or {})}
    logger.info(f"[GD] {check} on {A.name}: {status} ({tuples} tuples, window {len(W)})")
    return Report(check=check, status=status, verdict=verdict, params=params,
                  window=W.render(), failures=failures)


def check_novikov_axioms(A: GDStructure, W: Window) -> Report:
    """Left-symmetry of associators and right commutativity on all triples of W."""
    A.validate_window(W)
    failures = []
    basis = {idx: Element.basis(idx) for idx in W}
    nov = A.novikov
    count = 0
    for ia, ib, ic in product(W, repeat=3):
        a, b, c = basis[ia], basis[ib], basis[ic]
        count += 1
        ab = nov(a, b)
        ba = nov(b, a)
        left = (nov(ab, c) - nov(a, nov(b, c))) - (nov(ba, c) - nov(b, nov(a, c)))
        if left:
            failures.append(Failure([str(ia), str(ib), str(ic)], f"left-symmetry: {left}"))
        right = nov(ab, c) - nov(nov(a, c), b)
        if right:
            failures.append(Failure([str(ia), str(ib), str(ic)], f"right-commutativity: {right}"))
    return _report("novikov-axioms", A, W, failures, count)


def check_lie_axioms(A: GDStructure, W: Window) -> Report:
    """Skew-symmetry on pairs and the Jacobi identity on triples of W."""
    A.validate_window(W)
    failures = []
    basis = {idx: Element.basis(idx) for idx in W}
    lie = A.lie
    count = 0
    for ia, ib in product(W, repeat=2):
        count += 1
        residual = lie(basis[ia], basis[ib]) + lie(basis[ib], basis[ia])
        if residual:
            failures.append(Failure([str(ia), str(ib)], f"skew-symmetry: {residual}"))
    for ia, ib, ic in product(W, repeat=3):
        a, b, c = basis[ia], basis[ib], basis[ic]
        count += 1
        residual = lie(lie(a, b), c) + lie(lie(b, c), a) + lie(lie(c, a), b)
        if residual:
            failures.append(Failure([str(ia), str(ib), str(ic)], f"jacobi: {residual}"))
    return _report("lie-axioms", A, W, failures, count)


def check_gd_compatibility(A: GDStructure, W: Window) -> Report:
    """[a∘b,c] − [a∘c,b] + [a,b]∘c − [a,c]∘b − a∘[b,c] = 0 on all triples of W."""
    A.validate_window(W)
    failures = []
    basis = {idx: Element.basis(idx) for idx in W}
    nov, lie = A.novikov, A.lie
    count = 0
    for ia, ib, ic in product(W, repeat=3):
        a, b, c = basis[ia], basis[ib], basis[ic]
        count += 1
        residual = (
            lie(nov(a, b), c) - lie(nov(a, c), b)
            + nov(lie(a, b), c) - nov(lie(a, c), b)
            - nov(a, lie(b, c))
        )
        if residual:
            failures.append(Failure([str(ia), str(ib), str(ic)], str(residual)))
    return _report("gd-compatibility", A, W, failures, count)


def check_tortken(A: GDStructure, W: Window, variant: str) -> Report:
    """Four-argument identity of the star product on all 4-tuples of W.

    Both sides use the associator (a,b,c) = a∗(b∗c) − (a∗b)∗c; the right side
    is (a,b,c)∗d − (a,d,c)∗b. The left side is
    (a∗b)∗(c∗d) − (a∗d)∗(c∗d) for variant "printed" and
    (a∗b)∗(c∗d) − (a∗d)∗(c∗b) for variant "corrected".
    """
    if variant not in TORTKEN_VARIANTS:
        raise ValueError(f"unknown variant {variant!r}, expected one of {TORTKEN_VARIANTS}")
    A.validate_window(W)
    star = A.star
    basis = {idx: Element.basis(idx) for idx in W}
    pair: dict[tuple, Element] = {}
    assoc: dict[tuple, Element] = {}

    def s(i: BasisIndex, j: BasisIndex) -> Element:
        key = (i, j) if i <= j else (j, i)
        if key not in pair:
            pair[key] = star(basis[i], basis[j])
        return pair[key]

    def associator(i: BasisIndex, j: BasisIndex, k: BasisIndex) -> Element:
        key = (i, j, k)
        if key not in assoc:
            assoc[key] = star(basis[i], s(j, k)) - star(s(i, j), basis[k])
        return assoc[key]

    failures = []
    count = 0
    for ia, ib, ic, id_ in product(W, repeat=4):
        count += 1
        if variant == "printed":
            lhs = star(s(ia, ib), s(ic, id_)) - star(s(ia, id_), s(ic, id_))
        else:
            lhs = star(s(ia, ib), s(ic, id_)) - star(s(ia, id_), s(ic, ib))
        rhs = star(associator(ia, ib, ic), basis[id_]) - star(associator(ia, id_, ic), basis[ib])
        residual = lhs - rhs
        if residual:
            failures.append(Failure([str(ia), str(ib), str(ic), str(id_)], str(residual)))
    return _report(f"tortken-{variant}", A, W, failures, count, {"variant": variant})


def gd_from_novikov(A: GDStructure, k: Scalar) -> GDStructure:
    """The GD bialgebra (V, ∘, [·,·]_k) with [a,b]_k = k(a∘b − b∘a)."""
    k = Scalar.coerce(k)

    def commutator_rule(x: BasisIndex, y: BasisIndex) -> Element:
        if not k:
            return Element()
        return (A.novikov_basis(x, y) - A.novikov_basis(y, x)).scale(k)

    return A.with_lie(commutator_rule, name=f"{A.name}[k={k}]", params={"k": str(k)})


def is_nontrivial(A: GDStructure, W: Window, product_name: str = "novikov") -> Optional[tuple]:
    """A pair of window basis elements with nonzero product, or None."""
    rule = {"novikov": A.novikov_basis, "lie": A.lie_basis, "star": A.star_basis}[product_name]
    for x, y in product(W, repeat=2):
        if rule(x, y):
            return (x, y)
    return None
