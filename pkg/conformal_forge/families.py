"""Built-in GD bialgebras and conformal algebras, parameter validation, windows."""

import re
from dataclasses import dataclass, field
from itertools import product
from math import comb, factorial
from typing import Callable, Optional, Union

from conformal_forge.conformal import ConformalAlgebra, PolyElement, quadratic_from_gd
from conformal_forge.constants import CONFORMAL_FAMILIES, FAMILIES, K_FAMILIES
from conformal_forge.elements import BasisIndex, Element, Int, Sym, Vec, VecNat
from conformal_forge.errors import (
    HypothesisError,
    InconsistentInputError,
    InvalidIndexError,
    RankMismatchError,
    TableFormatError,
    UnknownFamilyError,
    WindowError,
)
from conformal_forge.gd import GDStructure, Window, gd_from_novikov, zero_rule
from conformal_forge.logger import get_logger
from conformal_forge.reports import Failure, Report
from conformal_forge.scalars import (
    ONE,
    ZERO,
    DeltaGroup,
    DeltaVector,
    Scalar,
    delta_eval,
    delta_membership,
    parse_scalar,
)

logger = get_logger("FAMILIES")


@dataclass(frozen=True)
class GroupHom:
    """φ: Δ → C+, determined by the images of the generators."""
    delta: DeltaGroup
    images: tuple[Scalar, ...]

    def __post_init__(self) -> None:
        images = tuple(Scalar.coerce(x) for x in self.images)
        object.__setattr__(self, "images", images)
        if len(images) != self.delta.rank:
            raise RankMismatchError(f"φ needs {self.delta.rank} generator images, got {len(images)}")

    @classmethod
    def zero(cls, delta: DeltaGroup) -> "GroupHom":
        return cls(delta, (ZERO,) * delta.rank)

    @classmethod
    def parse(cls, delta: DeltaGroup, text: Optional[str]) -> "GroupHom":
        """Images as comma-separated Scalars, e.g. "1/5" or "1, 0"."""
        if text is None or not text.strip():
            return cls.zero(delta)
        return cls(delta, tuple(parse_scalar(x) for x in text.split(",")))

    def __call__(self, v: DeltaVector) -> Scalar:
        if v.rank != self.delta.rank:
            raise RankMismatchError(f"vector {v} has rank {v.rank}, Δ has rank {self.delta.rank}")
        total = ZERO
        for coord, image in zip(v.coords, self.images):
            if coord:
                total = total + image * coord
        return total

    def is_zero(self) -> bool:
        return not any(self.images)

    def __str__(self) -> str:
        return "(" + ",".join(str(x) for x in self.images) + ")"


@dataclass(frozen=True)
class SkewForm:
    """ϕ: Δ × Δ → C, a skew-symmetric Z-bilinear form given by its Gram matrix."""
    delta: DeltaGroup
    matrix: tuple[tuple[Scalar, ...], ...]

    def __post_init__(self) -> None:
        n = self.delta.rank
        matrix = tuple(tuple(Scalar.coerce(x) for x in row) for row in self.matrix)
        object.__setattr__(self, "matrix", matrix)
        if len(matrix) != n or any(len(row) != n for row in matrix):
            raise RankMismatchError(f"ϕ needs a {n}x{n} matrix")
        for r in range(n):
            for col in range(n):
                if matrix[r][col] != -matrix[col][r]:
                    raise HypothesisError("ϕ skew-symmetric", f"entry ({r},{col}) = {matrix[r][col]}")

    @classmethod
    def zero(cls, delta: DeltaGroup) -> "SkewForm":
        return cls(delta, tuple((ZERO,) * delta.rank for _ in range(delta.rank)))

    @classmethod
    def parse(cls, delta: DeltaGroup, text: Optional[str]) -> "SkewForm":
        """Rows separated by ";" and entries by ",", e.g. "0,1;-1,0"."""
        if text is None or not text.strip():
            return cls.zero(delta)
        rows = [row for row in text.split(";") if row.strip()]
        return cls(delta, tuple(tuple(parse_scalar(x) for x in row.split(",")) for row in rows))

    def __call__(self, u: DeltaVector, v: DeltaVector) -> Scalar:
        total = ZERO
        for r, ur in enumerate(u.coords):
            if not ur:
                continue
            for col, vc in enumerate(v.coords):
                if vc and self.matrix[r][col]:
                    total = total + self.matrix[r][col] * (ur * vc)
        return total

    def is_zero(self) -> bool:
        return not any(x for row in self.matrix for x in row)

    def __str__(self) -> str:
        return ";".join(",".join(str(x) for x in row) for row in self.matrix)


@dataclass(frozen=True)
class FamilyParams:
    """Parameters of a built-in family; each field is used only where relevant.

    Attributes:
        family: Family tag, one of FAMILIES
        delta: Index group Δ (A2, A3 and their conformal algebras)
        b: Shift constant b
        c: Constant c of the A1 and A3 Lie structures
        k: If set, Novikov families get the bracket k(a∘b − b∘a)
        phi: Group homomorphism φ (zero if omitted)
        form: Skew form ϕ for CL3_b0 (zero if omitted)
        table: Finite GD table for Cur and Table
        allow_2b_in_delta: Build CL2 even when 2b ∈ Δ
    """
    family: str
    delta: DeltaGroup = field(default_factory=lambda: DeltaGroup((ONE,)))
    b: Scalar = ZERO
    c: Scalar = ZERO
    k: Optional[Scalar] = None
    phi: Optional[GroupHom] = None
    form: Optional[SkewForm] = None
    table: Optional[GDStructure] = None
    allow_2b_in_delta: bool = False

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise UnknownFamilyError(f"unknown family {self.family!r}, expected one of {', '.join(FAMILIES)}")
        object.__setattr__(self, "b", Scalar.coerce(self.b))
        object.__setattr__(self, "c", Scalar.coerce(self.c))
        if self.k is not None:
            object.__setattr__(self, "k", Scalar.coerce(self.k))

    @property
    def phi_map(self) -> GroupHom:
        return self.phi if self.phi is not None else GroupHom.zero(self.delta)

    @property
    def form_map(self) -> SkewForm:
        return self.form if self.form is not None else SkewForm.zero(self.delta)

    def describe(self) -> dict[str, str]:
        """Parameters relevant to the family, rendered as text."""
        out = {"family": self.family}
        if self.family in ("A2", "CL2", "A3", "CL3", "CL3_b0", "OsbornA"):
            out["delta"] = str(self.delta)
        if self.family in ("A2", "CL2", "A3", "CL3", "OsbornA"):
            out["b"] = str(self.b)
        if self.family in ("A1", "CL1", "A3", "CL3"):
            out["c"] = str(self.c)
        if self.family in ("A2", "CL2", "A3", "CL3", "CL3_b0"):
            out["phi"] = str(self.phi_map)
        if self.family == "CL3_b0":
            out["form"] = str(self.form_map)
        if self.k is not None:
            out["k"] = str(self.k)
        if self.family == "CL2" and self.allow_2b_in_delta:
            out["allow_2b_in_delta"] = "yes"
        return out


def _binomial(n: int, k: int) -> int:
    """C(n, k), zero when n < 0 or k is outside [0, n]."""
    if n < 0 or k < 0 or k > n:
        return 0
    return comb(n, k)


def _index_kind(family: str) -> str:
    if family in ("A1", "CL1"):
        return "int"
    if family in ("A2", "CL2"):
        return "vec"
    if family in ("A3", "CL3", "CL3_b0", "OsbornA"):
        return "vecnat"
    return "sym"


# -- closed-form rules -----------------------------------------------------


def _a1_structure(p: FamilyParams) -> GDStructure:
    c = p.c

    def novikov(x: Int, y: Int) -> Element:
        return Element.from_terms([(Int(x.i + y.i), Scalar(y.i + 1))], _valid_int)

    def lie(x: Int, y: Int) -> Element:
        return Element.from_terms([(Int(x.i + y.i), c * (x.i - y.i))], _valid_int)

    return GDStructure(
        name=p.family,
        index_kind="int",
        novikov_rule=novikov,
        lie_rule=lie if c else None,
        is_valid=_valid_int,
        description="L_i∘L_j = (j+1)L_{i+j}, [L_i,L_j] = c(i−j)L_{i+j}",
        params=p.describe(),
    )


def _valid_int(idx: BasisIndex) -> bool:
    return isinstance(idx, Int) and idx.i >= -1


def _a2_structure(p: FamilyParams) -> GDStructure:
    b, delta, phi = p.b, p.delta, p.phi_map
    rank = delta.rank

    def valid(idx: BasisIndex) -> bool:
        return isinstance(idx, Vec) and idx.v.rank == rank

    def novikov(x: Vec, y: Vec) -> Element:
        coeff = delta_eval(delta, y.v) + b
        return Element.from_terms([(Vec(x.v + y.v), coeff)], valid)

    def lie(x: Vec, y: Vec) -> Element:
        alpha, beta = delta_eval(delta, x.v), delta_eval(delta, y.v)
        pa, pb = phi(x.v), phi(y.v)
        coeff = (pb * alpha - pa * beta + b * (pb - pa)) / b
        return Element.from_terms([(Vec(x.v + y.v), coeff)], valid)

    return GDStructure(
        name=p.family,
        index_kind="vec",
        novikov_rule=novikov,
        lie_rule=None if phi.is_zero() else lie,
        is_valid=valid,
        description="x_α∘x_β = (β+b)x_{α+β}",
        params=p.describe(),
    )


def _vecnat_validity(rank: int) -> Callable[[BasisIndex], bool]:
    def valid(idx: BasisIndex) -> bool:
        return isinstance(idx, VecNat) and idx.n >= 0 and idx.v.rank == rank
    return valid


def _a3_novikov(delta: DeltaGroup, b: Scalar, valid) -> Callable[[VecNat, VecNat], Element]:
    def novikov(x: VecNat, y: VecNat) -> Element:
        s = x.v + y.v
        beta = delta_eval(delta, y.v)
        return Element.from_terms([
            (VecNat(s, x.n + y.n), beta + b),
            (VecNat(s, x.n + y.n - 1), Scalar(y.n)),
        ], valid)
    return novikov


def _a3_structure(p: FamilyParams) -> GDStructure:
    b, c, delta, phi = p.b, p.c, p.delta, p.phi_map
    valid = _vecnat_validity(delta.rank)

    def lie(x: VecNat, y: VecNat) -> Element:
        alpha, beta = delta_eval(delta, x.v), delta_eval(delta, y.v)
        pa, pb = phi(x.v), phi(y.v)
        i, j = x.n, y.n
        s = x.v + y.v
        top = ((alpha + b) * pb - (beta + b) * pa) / b
        low = ((pb - c * (beta + b)) * i + (c * (alpha + b) - pa) * j) / b
        return Element.from_terms([(VecNat(s, i + j), top), (VecNat(s, i + j - 1), low)], valid)

    has_bracket = not phi.is_zero() or bool(c)
    return GDStructure(
        name=p.family,
        index_kind="vecnat",
        novikov_rule=_a3_novikov(delta, b, valid),
        lie_rule=lie if has_bracket else None,
        is_valid=valid,
        description="x_{α,i}∘x_{β,j} = (β+b)x_{α+β,i+j} + j x_{α+β,i+j−1}",
        params=p.describe(),
    )


def _a3_b0_structure(p: FamilyParams) -> GDStructure:
    delta, phi, form = p.delta, p.phi_map, p.form_map
    valid = _vecnat_validity(delta.rank)

    def lie(x: VecNat, y: VecNat) -> Element:
        i, j = x.n, y.n
        s = x.v + y.v
        return Element.from_terms([
            (VecNat(s, i + j), form(x.v, y.v)),
            (VecNat(s, i + j - 1), phi(y.v) * i - phi(x.v) * j),
        ], valid)

    return GDStructure(
        name=p.family,
        index_kind="vecnat",
        novikov_rule=_a3_novikov(delta, ZERO, valid),
        lie_rule=lie,
        is_valid=valid,
        description="A3 at b=0 with [x_{α,i},x_{β,j}] = ϕ(α,β)x_{α+β,i+j} + (iφ(β)−jφ(α))x_{α+β,i+j−1}",
        params=p.describe(),
    )


def _osborn_structure(p: FamilyParams) -> GDStructure:
    b, delta = p.b, p.delta
    valid = _vecnat_validity(delta.rank)

    def novikov(x: VecNat, y: VecNat) -> Element:
        i, j = x.n, y.n
        s = x.v + y.v
        beta = delta_eval(delta, y.v)
        return Element.from_terms([
            (VecNat(s, i + j), (beta + b) * _binomial(i + j, i)),
            (VecNat(s, i + j - 1), Scalar(_binomial(i + j - 1, i))),
        ], valid)

    return GDStructure(
        name=p.family,
        index_kind="vecnat",
        novikov_rule=novikov,
        is_valid=valid,
        description="L_{α,i}∘L_{β,j} = (β+b)C(i+j,i)L_{α+β,i+j} + C(i+j−1,i)L_{α+β,i+j−1}",
        params=p.describe(),
    )


def _virasoro_structure(p: FamilyParams) -> GDStructure:
    L = Sym("L")
    product_ = Element.basis(L)

    return GDStructure(
        name="Vir",
        index_kind="sym",
        novikov_rule=lambda x, y: product_,
        is_valid=lambda idx: idx == L,
        description="one-dimensional Novikov algebra L∘L = L",
        params=p.describe(),
        finite_basis=(L,),
    )


def _table_structure(p: FamilyParams, current: bool) -> GDStructure:
    if p.table is None:
        raise TableFormatError(f"family {p.family} needs a table (--table PATH)")
    t = p.table
    return GDStructure(
        name=p.family if current else t.name,
        index_kind="sym",
        novikov_rule=zero_rule if current else t.novikov_rule,
        lie_rule=t.lie_rule,
        is_valid=t.is_valid,
        description="current algebra of a Lie table" if current else t.description,
        params={**p.describe(), "table": t.name, **t.params},
        finite_basis=t.finite_basis,
    )


# -- validation ------------------------------------------------------------


def _in_delta(delta: DeltaGroup, s: Scalar) -> bool:
    return delta_membership(delta, s) is not None


def validate_family(p: FamilyParams) -> None:
    """Check the hypotheses each family is stated under.

    Raises:
        HypothesisError: Naming the violated hypothesis
        InconsistentInputError: If k is given for a family without a k-bracket
    """
    f = p.family
    if p.k is not None and f not in K_FAMILIES:
        raise InconsistentInputError(f"k applies only to {', '.join(K_FAMILIES)}, not {f}")
    phi_nonzero = f in ("A2", "CL2", "A3", "CL3") and not p.phi_map.is_zero()
    if f == "CL2" and not p.allow_2b_in_delta and _in_delta(p.delta, p.b * 2):
        raise HypothesisError("2b∉Δ", f"2b = {p.b * 2} lies in Δ = {p.delta}")
    if phi_nonzero and _in_delta(p.delta, p.b):
        raise HypothesisError("b∉Δ", f"b = {p.b} lies in Δ = {p.delta} and φ ≠ 0")
    if f == "CL3" and not p.b:
        raise HypothesisError("b≠0", "use CL3_b0 for b = 0")
    if f == "A3" and p.c and not p.b:
        raise HypothesisError("b≠0", "the c-bracket divides by b")
    if f == "CL3_b0" and p.b:
        raise HypothesisError("b=0", f"CL3_b0 fixes b = 0, got {p.b}")


def make_gd(p: FamilyParams) -> GDStructure:
    """The GD bialgebra underlying a family."""
    validate_family(p)
    f = p.family
    if f in ("A1", "CL1"):
        A = _a1_structure(p)
    elif f in ("A2", "CL2"):
        A = _a2_structure(p)
    elif f in ("A3", "CL3"):
        A = _a3_structure(p)
    elif f == "CL3_b0":
        A = _a3_b0_structure(p)
    elif f == "OsbornA":
        A = _osborn_structure(p)
    elif f == "Vir":
        A = _virasoro_structure(p)
    elif f == "Cur":
        A = _table_structure(p, current=True)
    else:
        A = _table_structure(p, current=False)
    if p.k is not None:
        A = gd_from_novikov(A, p.k)
        A.name = f
    logger.debug(f"[FAMILIES] Built {f} with {p.describe()}")
    return A


def make_family(p: FamilyParams) -> Union[GDStructure, ConformalAlgebra]:
    """A GDStructure for Novikov families, a ConformalAlgebra for conformal ones."""
    A = make_gd(p)
    if p.family in CONFORMAL_FAMILIES:
        return quadratic_from_gd(A)
    return A


def make_conformal(p: FamilyParams) -> ConformalAlgebra:
    """The quadratic conformal algebra of any family, Novikov ones included."""
    return quadratic_from_gd(make_gd(p))


# -- windows ---------------------------------------------------------------

_RANGE = re.compile(r"^\s*(-?\d+)\s*(?:\.\.\s*(-?\d+)\s*)?$")


def _parse_range(text: str) -> range:
    match = _RANGE.match(text.replace("−", "-"))
    if not match:
        raise WindowError(f"malformed range {text!r}, expected 'a..b'")
    lo = int(match.group(1))
    hi = int(match.group(2)) if match.group(2) is not None else lo
    if lo > hi:
        raise WindowError(f"empty range {text!r}")
    return range(lo, hi + 1)


def parse_window(text: str, p: FamilyParams) -> Window:
    """Parse the window syntax for the family's index shape.

    "a..b" for L_i; "a..b x c..d" (one range per Δ generator) for x_α;
    one more range for the natural index of x_{α,n}; for tables a
    comma-separated list of basis names, or "*" for the whole basis.
    """
    kind = _index_kind(p.family)
    if kind == "sym":
        return _parse_sym_window(text, p)
    parts = [part for part in re.split(r"\s+x\s+|×", text.strip()) if part.strip()]
    ranges = [_parse_range(part) for part in parts]
    if kind == "int":
        if len(ranges) != 1:
            raise WindowError(f"{p.family} windows have one range, got {len(ranges)}")
        return Window.of(Int(i) for i in ranges[0])
    rank = p.delta.rank
    if kind == "vec":
        if len(ranges) != rank:
            raise WindowError(f"{p.family} windows need {rank} range(s) for Δ of rank {rank}")
        return Window.of(Vec(DeltaVector(tuple(coords))) for coords in product(*ranges))
    if len(ranges) != rank + 1:
        raise WindowError(f"{p.family} windows need {rank} Δ range(s) and one range for n")
    if ranges[-1].start < 0:
        raise WindowError("the natural index n ranges over n >= 0")
    return Window.of(
        VecNat(DeltaVector(tuple(coords[:-1])), coords[-1]) for coords in product(*ranges)
    )


def default_window_spec(p: FamilyParams) -> str:
    """Window used when none is given: a small box around the origin."""
    kind = _index_kind(p.family)
    if kind == "int":
        return "-1..5"
    if kind == "vec":
        return " x ".join(["-3..3"] * p.delta.rank)
    if kind == "vecnat":
        return " x ".join(["-2..2"] * p.delta.rank + ["0..2"])
    return "*"


def _parse_sym_window(text: str, p: FamilyParams) -> Window:
    basis = make_gd(p).finite_basis or ()
    if text.strip() == "*":
        return Window.of(basis)
    names = [name.strip() for name in text.split(",") if name.strip()]
    if not names:
        raise WindowError("empty window")
    known = {str(idx): idx for idx in basis}
    missing = [name for name in names if name not in known]
    if missing:
        raise WindowError("unknown basis names: " + ", ".join(missing))
    return Window.of(known[name] for name in names)


# -- distinguished subspaces -------------------------------------------------


def minus_two_b(p: FamilyParams) -> Optional[DeltaVector]:
    """Coordinates of −2b in Δ, or None."""
    return delta_membership(p.delta, -(p.b * 2))


def predicted_star_gaps(p: FamilyParams, W: Window) -> list[BasisIndex]:
    """Window targets outside V∗V: x_{−2b} for A2 when −2b ∈ Δ, none otherwise."""
    if p.family not in ("A2", "CL2"):
        return []
    v = minus_two_b(p)
    if v is None or Vec(v) not in W:
        return []
    return [Vec(v)]


def j_ideal_basis(p: FamilyParams, W: Window) -> list[Element]:
    """J restricted to W: all x_α with α ≠ −2b."""
    v = minus_two_b(p)
    excluded = Vec(v) if v is not None else None
    return [Element.basis(idx) for idx in W if idx != excluded]


def b_ideal_basis(p: FamilyParams, W: Window, dpow_bound: int) -> list[PolyElement]:
    """B = J ⊕ C[∂]∂A2 restricted to W and ∂-degree ≤ dpow_bound."""
    basis = [PolyElement.from_element(x) for x in j_ideal_basis(p, W)]
    for d in range(1, dpow_bound + 1):
        basis.extend(PolyElement.basis(idx, d) for idx in W)
    return basis


# -- Osborn's algebra ------------------------------------------------------


def osborn_map(idx: VecNat) -> Element:
    """ψ(L_{α,i}) = x_{α,i}/i!."""
    return Element.basis(idx, Scalar(1) / factorial(idx.n))


def osborn_iso_check(b: Scalar, delta: DeltaGroup, W: Window,
                     psi: Optional[Callable[[VecNat], Element]] = None) -> Report:
    """Check ψ(u)∘ψ(v) = ψ(u∘v) for all pairs of W.

    Args:
        b: Shift constant of both algebras
        delta: Index group Δ
        W: Window of VecNat indices
        psi: Map on basis indices; defaults to osborn_map

    Returns:
        Report with every pair where ψ fails to be multiplicative
    """
    psi = psi or osborn_map
    for idx in W:
        if not isinstance(idx, VecNat):
            raise InvalidIndexError(f"osborn-iso needs x_(α),n indices, got {idx}")
    source = make_gd(FamilyParams("OsbornA", delta=delta, b=b))
    target = make_gd(FamilyParams("A3", delta=delta, b=b))
    source.validate_window(W)

    def extend(x: Element) -> Element:
        total = Element()
        for idx, coeff in x.items():
            total = total + psi(idx).scale(coeff)
        return total

    failures = []
    count = 0
    for u, v in product(W, repeat=2):
        count += 1
        lhs = target.novikov(psi(u), psi(v))
        rhs = extend(source.novikov_basis(u, v))
        residual = lhs - rhs
        if residual:
            failures.append(Failure([str(u), str(v)], str(residual)))
    status = "fail" if failures else "pass"
    logger.info(f"[FAMILIES] osborn-iso b={b}: {status} ({count} pairs)")
    return Report(
        check="osborn-iso",
        status=status,
        verdict=(f"{len(failures)} failing of {count} pairs" if failures
                 else f"ψ is multiplicative on all {count} pairs"),
        params={"b": str(b), "delta": str(delta)},
        window=W.render(),
        failures=failures,
    )
