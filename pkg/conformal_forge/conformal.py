"""λ-brackets of quadratic Lie conformal algebras and their axiom checks.

Module elements are C[∂]-combinations of basis indices (PolyElement). The
value of a λ-bracket is a polynomial in formal variables with PolyElement
coefficients (BracketPoly). λ, μ and ∂ commute; ∂ acts on the module, so
∂-powers are pushed into the PolyElement coefficients.
"""

from itertools import product
from math import factorial
from typing import Callable, Iterator, Mapping, Optional, Sequence

from conformal_forge.constants import LAMBDA, MU, NU, PARTIAL
from conformal_forge.elements import BasisIndex, Element
from conformal_forge.errors import InvalidIndexError
from conformal_forge.gd import GDStructure, Window
from conformal_forge.logger import get_logger
from conformal_forge.reports import Failure, Report
from conformal_forge.scalars import ONE, ZERO, Scalar

logger = get_logger("CONFORMAL")

Exponents = tuple[int, ...]


def _coeff_text(c: Scalar) -> str:
    return f"({c})"


class PolyElement:
    """Finite sum of c · ∂^dpow x over basis indices x."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Mapping[tuple[BasisIndex, int], Scalar]] = None) -> None:
        self._terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def basis(cls, idx: BasisIndex, dpow: int = 0, coeff=1) -> "PolyElement":
        return cls({(idx, dpow): Scalar.coerce(coeff)})

    @classmethod
    def from_element(cls, x: Element, dpow: int = 0) -> "PolyElement":
        """∂^dpow applied to a plain Element."""
        return cls({(idx, dpow): c for idx, c in x.items()})

    def items(self) -> list[tuple[tuple[BasisIndex, int], Scalar]]:
        return sorted(self._terms.items())

    def as_dict(self) -> dict[tuple[BasisIndex, int], Scalar]:
        return dict(self._terms)

    def coeff(self, idx: BasisIndex, dpow: int = 0) -> Scalar:
        return self._terms.get((idx, dpow), ZERO)

    def indices(self) -> list[BasisIndex]:
        return sorted({idx for idx, _ in self._terms})

    def dpow_degree(self) -> int:
        """Highest ∂-power present, -1 for zero."""
        return max((d for _, d in self._terms), default=-1)

    def __iter__(self) -> Iterator[tuple[tuple[BasisIndex, int], Scalar]]:
        return iter(self.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __add__(self, other: "PolyElement") -> "PolyElement":
        if not isinstance(other, PolyElement):
            return NotImplemented
        terms = dict(self._terms)
        for key, c in other._terms.items():
            terms[key] = terms.get(key, ZERO) + c
        return PolyElement(terms)

    def __neg__(self) -> "PolyElement":
        return PolyElement({k: -v for k, v in self._terms.items()})

    def __sub__(self, other: "PolyElement") -> "PolyElement":
        if not isinstance(other, PolyElement):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "PolyElement":
        if not c:
            return PolyElement()
        return PolyElement({k: v * c for k, v in self._terms.items()})

    def partial(self, k: int = 1) -> "PolyElement":
        """Apply ∂^k."""
        if k == 0:
            return self
        return PolyElement({(idx, d + k): c for (idx, d), c in self._terms.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PolyElement):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for (idx, d), c in self.items():
            dpart = "" if d == 0 else (f"{PARTIAL} " if d == 1 else f"{PARTIAL}^{d} ")
            parts.append(f"{_coeff_text(c)}·{dpart}{idx}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"PolyElement({self})"

    def to_json(self) -> dict[str, str]:
        out = {}
        for (idx, d), c in self.items():
            key = str(idx) if d == 0 else f"{PARTIAL}^{d} {idx}"
            out[key] = str(c)
        return out


class OperatorPoly:
    """Polynomial in formal variables and ∂ with Scalar coefficients.

    Keys are (exponents over variables, ∂-power).
    """

    __slots__ = ("variables", "_terms")

    def __init__(self, variables: Sequence[str],
                 terms: Optional[Mapping[tuple[Exponents, int], Scalar]] = None) -> None:
        self.variables = tuple(variables)
        self._terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def constant(cls, variables: Sequence[str], c=1) -> "OperatorPoly":
        variables = tuple(variables)
        return cls(variables, {((0,) * len(variables), 0): Scalar.coerce(c)})

    @classmethod
    def variable(cls, variables: Sequence[str], name: str) -> "OperatorPoly":
        variables = tuple(variables)
        exps = tuple(1 if v == name else 0 for v in variables)
        return cls(variables, {(exps, 0): ONE})

    @classmethod
    def partial(cls, variables: Sequence[str]) -> "OperatorPoly":
        variables = tuple(variables)
        return cls(variables, {((0,) * len(variables), 1): ONE})

    def items(self) -> list[tuple[tuple[Exponents, int], Scalar]]:
        return sorted(self._terms.items())

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __add__(self, other: "OperatorPoly") -> "OperatorPoly":
        terms = dict(self._terms)
        for key, c in other._terms.items():
            terms[key] = terms.get(key, ZERO) + c
        return OperatorPoly(self.variables, terms)

    def __neg__(self) -> "OperatorPoly":
        return OperatorPoly(self.variables, {k: -v for k, v in self._terms.items()})

    def __sub__(self, other: "OperatorPoly") -> "OperatorPoly":
        return self + (-other)

    def __mul__(self, other: "OperatorPoly") -> "OperatorPoly":
        terms: dict[tuple[Exponents, int], Scalar] = {}
        for (e1, d1), c1 in self._terms.items():
            for (e2, d2), c2 in other._terms.items():
                key = (tuple(a + b for a, b in zip(e1, e2)), d1 + d2)
                terms[key] = terms.get(key, ZERO) + c1 * c2
        return OperatorPoly(self.variables, terms)

    def __pow__(self, n: int) -> "OperatorPoly":
        result = OperatorPoly.constant(self.variables)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OperatorPoly):
            return NotImplemented
        return self.variables == other.variables and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.variables, frozenset(self._terms.items())))


class BracketPoly:
    """Polynomial in formal variables with PolyElement coefficients."""

    __slots__ = ("variables", "_terms")

    def __init__(self, variables: Sequence[str],
                 terms: Optional[Mapping[Exponents, PolyElement]] = None) -> None:
        self.variables = tuple(variables)
        self._terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def from_powers(cls, var: str, powers: Mapping[int, PolyElement]) -> "BracketPoly":
        """One-variable polynomial Σ var^k · powers[k]."""
        return cls((var,), {(k,): p for k, p in powers.items()})

    def items(self) -> list[tuple[Exponents, PolyElement]]:
        return sorted(self._terms.items())

    def coefficient(self, exps: Exponents) -> PolyElement:
        return self._terms.get(tuple(exps), PolyElement())

    def powers(self) -> dict[int, PolyElement]:
        """Coefficients of a one-variable polynomial, keyed by power."""
        if len(self.variables) != 1:
            raise ValueError(f"powers() needs one variable, have {self.variables}")
        return {e[0]: p for e, p in self.items()}

    def degree(self, var: str) -> int:
        k = self.variables.index(var)
        return max((e[k] for e in self._terms), default=-1)

    def dpow_degree(self) -> int:
        return max((p.dpow_degree() for p in self._terms.values()), default=-1)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __add__(self, other: "BracketPoly") -> "BracketPoly":
        if not isinstance(other, BracketPoly):
            return NotImplemented
        if not self._terms:
            return other
        if not other._terms:
            return self
        if self.variables != other.variables:
            raise ValueError(f"variables differ: {self.variables} vs {other.variables}")
        terms = dict(self._terms)
        for e, p in other._terms.items():
            terms[e] = terms[e] + p if e in terms else p
        return BracketPoly(self.variables, terms)

    def __neg__(self) -> "BracketPoly":
        return BracketPoly(self.variables, {e: -p for e, p in self._terms.items()})

    def __sub__(self, other: "BracketPoly") -> "BracketPoly":
        return self + (-other)

    def scale(self, c) -> "BracketPoly":
        return BracketPoly(self.variables, {e: p.scale(c) for e, p in self._terms.items()})

    def times(self, op: OperatorPoly) -> "BracketPoly":
        """Multiply by an operator polynomial over the same variables."""
        if op.variables != self.variables:
            raise ValueError(f"variables differ: {op.variables} vs {self.variables}")
        terms: dict[Exponents, PolyElement] = {}
        for (oe, d), c in op._terms.items():
            for e, p in self._terms.items():
                key = tuple(a + b for a, b in zip(oe, e))
                value = p.partial(d).scale(c)
                terms[key] = terms[key] + value if key in terms else value
        return BracketPoly(self.variables, terms)

    def substitute(self, replacements: Mapping[str, OperatorPoly],
                   target: Sequence[str]) -> "BracketPoly":
        """Replace each variable by an operator polynomial over target.

        ∂ inside a replacement acts on the coefficients, which is how
        μ ← −λ−∂ is realized.
        """
        target = tuple(target)
        power_cache: dict[tuple[str, int], OperatorPoly] = {}

        def power(var: str, n: int) -> OperatorPoly:
            key = (var, n)
            if key not in power_cache:
                power_cache[key] = replacements[var] ** n
            return power_cache[key]

        result = BracketPoly(target)
        for e, p in self._terms.items():
            factor = OperatorPoly.constant(target)
            for var, n in zip(self.variables, e):
                if n:
                    factor = factor * power(var, n)
            result = result + BracketPoly(target, {(0,) * len(target): p}).times(factor)
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BracketPoly):
            return NotImplemented
        if not self._terms and not other._terms:
            return True
        return self.variables == other.variables and self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __str__(self) -> str:
        """Terms c·λ^k μ^l ∂^m x in canonical order."""
        if not self._terms:
            return "0"
        parts = []
        for e, p in self.items():
            mono = []
            for var, n in zip(self.variables, e):
                if n == 1:
                    mono.append(var)
                elif n > 1:
                    mono.append(f"{var}^{n}")
            for (idx, d), c in p.items():
                factors = list(mono)
                if d == 1:
                    factors.append(PARTIAL)
                elif d > 1:
                    factors.append(f"{PARTIAL}^{d}")
                factors.append(str(idx))
                parts.append(f"{_coeff_text(c)}·" + " ".join(factors))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"BracketPoly({self})"


BasisRule = Callable[[BasisIndex, BasisIndex], Mapping[int, PolyElement]]


class ConformalAlgebra:
    """The free C[∂]-module over a GD basis with a quadratic λ-bracket.

    The bracket of two basis elements is given as λ-power → PolyElement. By
    default it is derived from the GD data:
    [a_λ b] = ∂(b∘a) + [b,a] + λ(a∗b).
    """

    def __init__(self, gd: GDStructure, rule: Optional[BasisRule] = None,
                 name: Optional[str] = None) -> None:
        """Initialize a conformal algebra.

        Args:
            gd: Underlying GD bialgebra (basis and validity)
            rule: Explicit basis-pair bracket overriding the GD-derived one
            name: Report name; defaults to the GD structure's name
        """
        self.gd = gd
        self.rule = rule or self._gd_rule
        self.name = name or gd.name
        self._cache: dict[tuple[BasisIndex, BasisIndex], dict[int, PolyElement]] = {}

    def __repr__(self) -> str:
        return f"ConformalAlgebra({self.name!r})"

    @property
    def params(self) -> dict[str, str]:
        return self.gd.params

    def is_valid(self, idx: BasisIndex) -> bool:
        return self.gd.is_valid(idx)

    def _gd_rule(self, a: BasisIndex, b: BasisIndex) -> dict[int, PolyElement]:
        gd = self.gd
        constant = (PolyElement.from_element(gd.novikov_basis(b, a), dpow=1)
                    + PolyElement.from_element(gd.lie_basis(b, a)))
        linear = PolyElement.from_element(gd.star_basis(a, b))
        return {k: p for k, p in ((0, constant), (1, linear)) if p}

    def basis_bracket(self, a: BasisIndex, b: BasisIndex) -> dict[int, PolyElement]:
        key = (a, b)
        value = self._cache.get(key)
        if value is None:
            value = {k: p for k, p in self.rule(a, b).items() if p}
            self._cache[key] = value
        return value

    def validate(self, P: PolyElement) -> None:
        for idx in P.indices():
            if not self.gd.is_valid(idx):
                raise InvalidIndexError(f"index {idx} is not valid for {self.name}")


def quadratic_from_gd(gd: GDStructure) -> ConformalAlgebra:
    """The quadratic conformal algebra C[∂]V of a GD bialgebra."""
    return ConformalAlgebra(gd)


def _sesquilinear_factor(var: str, m: int, n: int) -> OperatorPoly:
    # ∂^m on the left gives (−var)^m, ∂^n on the right gives (var+∂)^n
    v = OperatorPoly.variable((var,), var)
    d = OperatorPoly.partial((var,))
    return ((-v) ** m) * ((v + d) ** n)


def lambda_bracket(CA: ConformalAlgebra, P: PolyElement, Q: PolyElement,
                   var: str = LAMBDA) -> BracketPoly:
    """[P_var Q], extended from basis pairs by sesquilinearity.

    Args:
        CA: The conformal algebra
        P: Left argument
        Q: Right argument
        var: Name of the bracket variable

    Returns:
        One-variable BracketPoly in var
    """
    CA.validate(P)
    CA.validate(Q)
    result = BracketPoly((var,))
    factors: dict[tuple[int, int], OperatorPoly] = {}
    for (a, m), ca in P.items():
        for (b, n), cb in Q.items():
            base = CA.basis_bracket(a, b)
            if not base:
                continue
            if (m, n) not in factors:
                factors[(m, n)] = _sesquilinear_factor(var, m, n)
            value = BracketPoly.from_powers(var, base).times(factors[(m, n)])
            result = result + value.scale(ca * cb)
    return result


def nth_product(CA: ConformalAlgebra, P: PolyElement, Q: PolyElement, n: int) -> PolyElement:
    """P_(n)Q = n! times the λ^n coefficient of [P_λ Q]."""
    if n < 0:
        raise ValueError("n-th products are defined for n >= 0")
    coefficient = lambda_bracket(CA, P, Q).coefficient((n,))
    return coefficient.scale(factorial(n))


def reconstruct_bracket(CA: ConformalAlgebra, P: PolyElement, Q: PolyElement,
                        var: str = LAMBDA) -> BracketPoly:
    """Σ_n var^n/n! · P_(n)Q."""
    degree = lambda_bracket(CA, P, Q).degree(LAMBDA)
    powers = {}
    for n in range(degree + 1):
        powers[n] = nth_product(CA, P, Q, n).scale(Scalar(1) / factorial(n))
    return BracketPoly.from_powers(var, powers)


def _embed(bp: BracketPoly, target: Sequence[str],
           rename: Optional[Mapping[str, str]] = None) -> BracketPoly:
    """View a bracket polynomial over the target variables."""
    rename = rename or {}
    replacements = {v: OperatorPoly.variable(target, rename.get(v, v)) for v in bp.variables}
    return bp.substitute(replacements, target)


def jacobi_residual(CA: ConformalAlgebra, a: PolyElement, b: PolyElement,
                    c: PolyElement) -> BracketPoly:
    """[a_λ[b_μ c]] − [[a_λ b]_{λ+μ} c] − [b_μ[a_λ c]] over (λ, μ)."""
    two = (LAMBDA, MU)
    lam = OperatorPoly.variable(two, LAMBDA)
    mu = OperatorPoly.variable(two, MU)

    lhs = BracketPoly(two)
    for k, q in lambda_bracket(CA, b, c, MU).powers().items():
        lhs = lhs + _embed(lambda_bracket(CA, a, q, LAMBDA), two).times(mu ** k)

    first = BracketPoly(two)
    for k, p in lambda_bracket(CA, a, b, LAMBDA).powers().items():
        inner = lambda_bracket(CA, p, c, NU)
        shifted = inner.substitute({NU: lam + mu}, two)
        first = first + shifted.times(lam ** k)

    second = BracketPoly(two)
    for k, q in lambda_bracket(CA, a, c, LAMBDA).powers().items():
        second = second + _embed(lambda_bracket(CA, b, q, MU), two).times(lam ** k)

    return lhs - first - second


def skew_residual(CA: ConformalAlgebra, a: PolyElement, b: PolyElement) -> BracketPoly:
    """[a_λ b] + [b_{−λ−∂} a] over (λ,)."""
    one = (LAMBDA,)
    swapped = lambda_bracket(CA, b, a, MU)
    replacement = -OperatorPoly.variable(one, LAMBDA) - OperatorPoly.partial(one)
    return lambda_bracket(CA, a, b, LAMBDA) + swapped.substitute({MU: replacement}, one)


def sesquilinearity_residual(CA: ConformalAlgebra, a: PolyElement, b: PolyElement) -> BracketPoly:
    """([∂a_λ b] + λ[a_λ b]) + ([a_λ ∂b] − (λ+∂)[a_λ b])."""
    one = (LAMBDA,)
    base = lambda_bracket(CA, a, b)
    lam = OperatorPoly.variable(one, LAMBDA)
    left = lambda_bracket(CA, a.partial(), b) + base.times(lam)
    right = lambda_bracket(CA, a, b.partial()) - base.times(lam + OperatorPoly.partial(one))
    return left + right


def check_conformal_axioms(CA: ConformalAlgebra, W: Window) -> Report:
    """Sesquilinearity and skew-symmetry on pairs, Jacobi on triples of W.

    All identities are compared as exact polynomials in λ, μ and ∂.
    """
    CA.gd.validate_window(W)
    basis = {idx: PolyElement.basis(idx) for idx in W}
    failures = []
    count = 0
    for ia, ib in product(W, repeat=2):
        count += 1
        a, b = basis[ia], basis[ib]
        residual = sesquilinearity_residual(CA, a, b)
        if residual:
            failures.append(Failure([str(ia), str(ib)], f"sesquilinearity: {residual}"))
        residual = skew_residual(CA, a, b)
        if residual:
            failures.append(Failure([str(ia), str(ib)], f"skew-symmetry: {residual}"))
    for ia, ib, ic in product(W, repeat=3):
        count += 1
        residual = jacobi_residual(CA, basis[ia], basis[ib], basis[ic])
        if residual:
            failures.append(Failure([str(ia), str(ib), str(ic)], f"jacobi: {residual}"))

    status = "fail" if failures else "pass"
    logger.info(f"[CONFORMAL] conformal-axioms on {CA.name}: {status} ({count} tuples, window {len(W)})")
    verdict = (f"{len(failures)} failing of {count} checked" if failures
               else f"all {count} checked tuples satisfy the identities")
    return Report(
        check="conformal-axioms",
        status=status,
        verdict=verdict,
        params={"structure": CA.name, **CA.params},
        window=W.render(),
        failures=failures,
    )
