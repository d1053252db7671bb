"""The coefficient Lie algebra Coeff(R) of a quadratic conformal algebra."""

import random
from itertools import product
from typing import Any, Iterator, Mapping, Optional

from conformal_forge.conformal import ConformalAlgebra, PolyElement, lambda_bracket
from conformal_forge.constants import CLOSED_FORM_FAMILIES
from conformal_forge.elements import BasisIndex, Int, Sym, Vec, VecNat
from conformal_forge.errors import UnknownFamilyError
from conformal_forge.families import FamilyParams, make_conformal
from conformal_forge.gd import Window
from conformal_forge.logger import get_logger
from conformal_forge.reports import Failure, Report
from conformal_forge.scalars import ZERO, Scalar, delta_eval

logger = get_logger("COEFF")

Mode = tuple[BasisIndex, int]


class CoeffElement:
    """Finite combination of modes x_n, with ∂ already eliminated."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Mapping[Mode, Scalar]] = None) -> None:
        self._terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def mode(cls, idx: BasisIndex, n: int, coeff=1) -> "CoeffElement":
        return cls({(idx, n): Scalar.coerce(coeff)})

    def items(self) -> list[tuple[Mode, Scalar]]:
        return sorted(self._terms.items())

    def coeff(self, idx: BasisIndex, n: int) -> Scalar:
        return self._terms.get((idx, n), ZERO)

    def __iter__(self) -> Iterator[tuple[Mode, Scalar]]:
        return iter(self.items())

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __add__(self, other: "CoeffElement") -> "CoeffElement":
        terms = dict(self._terms)
        for key, c in other._terms.items():
            terms[key] = terms.get(key, ZERO) + c
        return CoeffElement(terms)

    def __neg__(self) -> "CoeffElement":
        return CoeffElement({k: -v for k, v in self._terms.items()})

    def __sub__(self, other: "CoeffElement") -> "CoeffElement":
        return self + (-other)

    def scale(self, c) -> "CoeffElement":
        if not c:
            return CoeffElement()
        return CoeffElement({k: v * c for k, v in self._terms.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CoeffElement):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        return " + ".join(f"({c})·{idx}[{n}]" for (idx, n), c in self.items())

    def __repr__(self) -> str:
        return f"CoeffElement({self})"

    def to_json(self) -> dict[str, str]:
        return {f"{idx}[{n}]": str(c) for (idx, n), c in self.items()}


def falling_factorial(m: int, j: int) -> int:
    """m(m−1)…(m−j+1), 1 for j = 0."""
    result = 1
    for r in range(j):
        result *= m - r
    return result


def coeff_canonicalize(P: PolyElement, mode: int) -> CoeffElement:
    """(∂^k x)_n = (−1)^k n(n−1)…(n−k+1) x_{n−k}, extended linearly."""
    terms: dict[Mode, Scalar] = {}
    for (idx, k), c in P.items():
        factor = falling_factorial(mode, k)
        if not factor:
            continue
        key = (idx, mode - k)
        value = c * (factor if k % 2 == 0 else -factor)
        terms[key] = terms.get(key, ZERO) + value
    return CoeffElement(terms)


def coeff_bracket(CA: ConformalAlgebra, a: BasisIndex, m: int, b: BasisIndex, n: int) -> CoeffElement:
    """[a_m, b_n] = Σ_j C(m, j) (a_(j) b)_{m+n−j}.

    With a_(j)b = j!·(λ^j coefficient), C(m, j)·j! is the falling factorial,
    so negative m needs no special case.
    """
    powers = lambda_bracket(CA, PolyElement.basis(a), PolyElement.basis(b)).powers()
    result = CoeffElement()
    for j, P in powers.items():
        factor = falling_factorial(m, j)
        if factor:
            result = result + coeff_canonicalize(P, m + n - j).scale(factor)
    return result


def coeff_bracket_elements(CA: ConformalAlgebra, X: CoeffElement, Y: CoeffElement) -> CoeffElement:
    """Bilinear extension of coeff_bracket."""
    result = CoeffElement()
    for (a, m), ca in X.items():
        for (b, n), cb in Y.items():
            result = result + coeff_bracket(CA, a, m, b, n).scale(ca * cb)
    return result


def sample_coeff_pairs(W: Window, modes: tuple[int, int], count: int, seed: int) -> list[tuple[Mode, Mode]]:
    rng = random.Random(seed)
    lo, hi = modes
    indices = list(W)
    return [
        ((rng.choice(indices), rng.randint(lo, hi)), (rng.choice(indices), rng.randint(lo, hi)))
        for _ in range(count)
    ] if indices else []


def sample_coeff_triples(W: Window, modes: tuple[int, int], count: int,
                         seed: int) -> list[tuple[Mode, Mode, Mode]]:
    """count random (index, mode) triples, reproducible from seed."""
    rng = random.Random(seed)
    lo, hi = modes
    indices = list(W)
    if not indices:
        return []
    return [
        tuple((rng.choice(indices), rng.randint(lo, hi)) for _ in range(3))
        for _ in range(count)
    ]


def box_pairs(W: Window, modes: tuple[int, int]) -> list[tuple[Mode, Mode]]:
    """Every pair of (index, mode) with index in W and mode in the closed range."""
    lo, hi = modes
    singles = [(idx, n) for idx in W for n in range(lo, hi + 1)]
    return list(product(singles, repeat=2))


def check_coeff_jacobi(CA: ConformalAlgebra, samples: list[tuple[Mode, Mode, Mode]]) -> Report:
    """Skew-symmetry and Jacobi of the mode bracket on sampled triples."""
    failures = []

    def br(X: CoeffElement, Y: CoeffElement) -> CoeffElement:
        return coeff_bracket_elements(CA, X, Y)

    for x, y, z in samples:
        X, Y, Z = (CoeffElement.mode(*t) for t in (x, y, z))
        labels = [f"{idx}[{n}]" for idx, n in (x, y, z)]
        skew = br(X, Y) + br(Y, X)
        if skew:
            failures.append(Failure(labels[:2], f"skew-symmetry: {skew}"))
        residual = br(br(X, Y), Z) + br(br(Y, Z), X) + br(br(Z, X), Y)
        if residual:
            failures.append(Failure(labels, f"jacobi: {residual}"))
    status = "fail" if failures else "pass"
    logger.info(f"[COEFF] coeff-jacobi on {CA.name}: {status} ({len(samples)} triples)")
    return Report(
        check="coeff-jacobi",
        status=status,
        verdict=(f"{len(failures)} failures on {len(samples)} triples" if failures
                 else f"Coeff is a Lie algebra on all {len(samples)} sampled triples"),
        params={"structure": CA.name, **CA.params, "samples": str(len(samples))},
        failures=failures,
    )


# -- closed forms ----------------------------------------------------------


def closed_form_bracket(p: FamilyParams, a: BasisIndex, m: int, b: BasisIndex, n: int) -> CoeffElement:
    """The displayed mode bracket of Vir, CL1, CL2, CL3 and CL3_b0.

    Raises:
        UnknownFamilyError: For families without a closed form
    """
    f = p.family
    if f == "Vir":
        L = Sym("L")
        return CoeffElement({(L, m + n - 1): Scalar(m - n)})
    if f == "CL1":
        i, j, t, s = a.i, b.i, m, n
        return CoeffElement({
            (Int(i + j), t + s - 1): Scalar((j + 1) * t - (i + 1) * s),
        }) + CoeffElement({(Int(i + j), t + s): p.c * (j - i)})
    if f == "CL2":
        return _cl2_closed_form(p, a, m, b, n)
    if f in ("CL3", "CL3_b0"):
        return _cl3_closed_form(p, a, m, b, n)
    raise UnknownFamilyError(f"no closed-form coefficient bracket for {f}, expected one of {', '.join(CLOSED_FORM_FAMILIES)}")


def _cl2_closed_form(p: FamilyParams, a: Vec, i: int, b_: Vec, j: int) -> CoeffElement:
    b, phi = p.b, p.phi_map
    alpha, beta = delta_eval(p.delta, a.v), delta_eval(p.delta, b_.v)
    target = Vec(a.v + b_.v)
    result = CoeffElement({(target, i + j - 1): (beta + b) * i - (alpha + b) * j})
    if not phi.is_zero():
        pa, pb = phi(a.v), phi(b_.v)
        lie = (pa * beta - pb * alpha + b * (pa - pb)) / b
        result = result + CoeffElement({(target, i + j): lie})
    return result


def _cl3_closed_form(p: FamilyParams, a: VecNat, s: int, b_: VecNat, t: int) -> CoeffElement:
    b, c, phi = p.b, p.c, p.phi_map
    alpha, beta = delta_eval(p.delta, a.v), delta_eval(p.delta, b_.v)
    i, j = a.n, b_.n
    v = a.v + b_.v
    top, low = VecNat(v, i + j), VecNat(v, i + j - 1)
    terms = [
        ((top, s + t - 1), (beta + b) * s - (alpha + b) * t),
        ((low, s + t - 1), Scalar(j * s - i * t)),
    ]
    pa, pb = phi(a.v), phi(b_.v)
    if p.family == "CL3_b0":
        terms.append(((top, s + t), p.form_map(b_.v, a.v)))
        terms.append(((low, s + t), pa * j - pb * i))
    else:
        terms.append(((top, s + t), ((beta + b) * pa - (alpha + b) * pb) / b))
        terms.append(((low, s + t), ((pa - c * (alpha + b)) * j + (c * (beta + b) - pb) * i) / b))
    result = CoeffElement()
    for key, value in terms:
        result = result + CoeffElement({key: value})
    return result


def coeff_closed_form_crosscheck(p: FamilyParams, samples: list[tuple[Mode, Mode]]) -> Report:
    """Compare coeff_bracket with the closed form on each sampled pair."""
    if p.family not in CLOSED_FORM_FAMILIES:
        raise UnknownFamilyError(f"no closed-form coefficient bracket for {p.family}, expected one of {', '.join(CLOSED_FORM_FAMILIES)}")
    CA = make_conformal(p)
    failures = []
    for (a, m), (b, n) in samples:
        computed = coeff_bracket(CA, a, m, b, n)
        expected = closed_form_bracket(p, a, m, b, n)
        if computed != expected:
            failures.append(Failure(
                [f"{a}[{m}]", f"{b}[{n}]"],
                f"computed {computed}, closed form {expected}",
            ))
    status = "fail" if failures else "pass"
    logger.info(f"[COEFF] coeff-crosscheck on {p.family}: {status} ({len(samples)} pairs)")
    return Report(
        check="coeff-crosscheck",
        status=status,
        verdict=(f"{len(failures)} mismatches on {len(samples)} pairs" if failures
                 else f"closed form matches on all {len(samples)} pairs"),
        params={**p.describe(), "samples": str(len(samples))},
        failures=failures,
    )


def coeff_export(CA: ConformalAlgebra, W: Window, modes: tuple[int, int]) -> list[dict[str, Any]]:
    """Structure constants [{a, m, b, n, bracket}] over the box W × modes."""
    rows = []
    for (a, m), (b, n) in box_pairs(W, modes):
        rows.append({
            "a": str(a),
            "m": m,
            "b": str(b),
            "n": n,
            "bracket": coeff_bracket(CA, a, m, b, n).to_json(),
        })
    return rows
