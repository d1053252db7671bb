"""Simplicity machinery on finite truncations: star spans, annihilators, ideal closures."""

import random
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterator, Optional, Sequence, Union

from conformal_forge.conformal import ConformalAlgebra, PolyElement, lambda_bracket, quadratic_from_gd
from conformal_forge.constants import DEFAULT_DPOW_BOUND, DEFAULT_SEED, DEFAULT_TRIALS, IDEAL_KINDS, RANDOM_COEFFICIENTS
from conformal_forge.elements import BasisIndex, Element
from conformal_forge.errors import InconsistentInputError
from conformal_forge.gd import GDStructure, Window, is_nontrivial
from conformal_forge.linalg import EchelonBasis, kernel, solve_linear
from conformal_forge.logger import get_logger
from conformal_forge.reports import Failure, Report
from conformal_forge.scalars import ONE, ZERO, Scalar

logger = get_logger("ANALYSIS")

Key = tuple[BasisIndex, int]
Vector = dict[Key, Scalar]
Structure = Union[GDStructure, ConformalAlgebra]
Generator = Union[Element, PolyElement]

EVIDENCE_NOTE = "desk-scale evidence on a finite truncation, not a proof for the infinite algebra"


def to_vector(x: Generator) -> Vector:
    """Flatten an Element or PolyElement into (index, ∂-degree) coordinates."""
    if isinstance(x, PolyElement):
        return x.as_dict()
    return {(idx, 0): c for idx, c in x.items()}


def render_vector(vec: Vector) -> str:
    return str(PolyElement(vec))


def _basis_vector(idx: BasisIndex, dpow: int = 0) -> Vector:
    return {(idx, dpow): ONE}


def _project(vec: Vector, allowed: frozenset, bound: int) -> tuple[Vector, bool]:
    """Drop terms outside the truncation; report whether anything was dropped."""
    kept = {}
    dropped = False
    for (idx, d), c in vec.items():
        if idx in allowed and d <= bound:
            kept[(idx, d)] = c
        else:
            dropped = True
    return kept, dropped


def _combine(acc: Vector, vec: Vector, factor: Scalar) -> None:
    for key, c in vec.items():
        value = acc.get(key, ZERO) + c * factor
        if value:
            acc[key] = value
        else:
            acc.pop(key, None)


class _Moves:
    """Products of a vector with window basis elements that an ideal must absorb."""

    def __init__(self, A: Structure, kind: str, W: Window, dpow_bound: int) -> None:
        if kind not in IDEAL_KINDS:
            raise InconsistentInputError(f"unknown ideal kind {kind!r}, expected one of {', '.join(IDEAL_KINDS)}")
        if kind == "conformal" and not isinstance(A, ConformalAlgebra):
            raise InconsistentInputError("kind 'conformal' needs a conformal algebra")
        if kind != "conformal" and not isinstance(A, GDStructure):
            raise InconsistentInputError(f"kind {kind!r} needs a GD structure, got a conformal algebra")
        self.A = A
        self.kind = kind
        self.W = W
        self.dpow_bound = dpow_bound
        self._bracket_cache: dict[tuple[str, BasisIndex, BasisIndex, int], dict[int, Vector]] = {}

    def _products(self, name: str) -> list[tuple[str, bool]]:
        # (product name, window element on the left?)
        return {
            "novikov": [("novikov", True), ("novikov", False)],
            "lie": [("lie", False)],
            "nj": [("star", False)],
            "gd": [("novikov", True), ("novikov", False), ("lie", False)],
        }[name]

    def _gd_moves(self, vec: Vector) -> Iterator[tuple[str, Vector]]:
        A = self.A
        x = Element({idx: c for (idx, _), c in vec.items()})
        symbols = {"novikov": "∘", "lie": ",", "star": "∗"}
        for name, window_left in self._products(self.kind):
            op = A.product(name)
            for w in self.W:
                e = Element.basis(w)
                value = op(e, x) if window_left else op(x, e)
                label = f"{w}{symbols[name]}·" if window_left else f"·{symbols[name]}{w}"
                yield label, to_vector(value)

    def _bracket_powers(self, side: str, w: BasisIndex, idx: BasisIndex, d: int) -> dict[int, Vector]:
        key = (side, w, idx, d)
        cached = self._bracket_cache.get(key)
        if cached is None:
            bw, p = PolyElement.basis(w), PolyElement.basis(idx, d)
            bp = lambda_bracket(self.A, bw, p) if side == "left" else lambda_bracket(self.A, p, bw)
            cached = {k: q.as_dict() for k, q in bp.powers().items()}
            self._bracket_cache[key] = cached
        return cached

    def _conformal_moves(self, vec: Vector) -> Iterator[tuple[str, Vector]]:
        for w in self.W:
            for side in ("left", "right"):
                by_power: dict[int, Vector] = {}
                for (idx, d), c in vec.items():
                    for k, q in self._bracket_powers(side, w, idx, d).items():
                        _combine(by_power.setdefault(k, {}), q, c)
                for k in sorted(by_power):
                    label = f"[{w}_λ ·] λ^{k}" if side == "left" else f"[·_λ {w}] λ^{k}"
                    yield label, by_power[k]
        # ∂ on the truncation: terms already at the bound leave it
        shifted = {(idx, d + 1): c for (idx, d), c in vec.items() if d < self.dpow_bound}
        if shifted:
            yield "∂·", shifted

    def __call__(self, vec: Vector) -> Iterator[tuple[str, Vector]]:
        if self.kind == "conformal":
            return self._conformal_moves(vec)
        return self._gd_moves(vec)


@dataclass
class IdealWitness:
    """Result of a truncated ideal closure.

    Attributes:
        kind: One of novikov, lie, nj, gd, conformal
        generators: Rendered generators
        window: Rendered window W
        dpow_bound: ∂-degree truncation
        basis: Reduced basis of the closure, pivots ascending
        lossy: True if some move had terms outside the truncation
    """
    kind: str
    generators: list[str]
    window: list[str]
    dpow_bound: int
    basis: list[Vector] = field(default_factory=list)
    lossy: bool = False
    _span: EchelonBasis = field(default_factory=EchelonBasis, repr=False)

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def contains(self, x: Union[Generator, Vector]) -> bool:
        vec = x if isinstance(x, dict) else to_vector(x)
        return self._span.contains(vec)

    def contains_all(self, vectors: Sequence[Vector]) -> bool:
        return all(self._span.contains(v) for v in vectors)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "generators": list(self.generators),
            "dimension": self.dimension,
            "lossy": self.lossy,
            "basis": [render_vector(v) for v in self.basis],
        }


def ideal_closure(A: Structure, kind: str, generators: Sequence[Generator], W: Window,
                  W_ext: Optional[Window] = None,
                  dpow_bound: int = DEFAULT_DPOW_BOUND) -> IdealWitness:
    """Smallest span in the truncation containing generators and closed under moves.

    Moves are products with basis elements of W: both sides of ∘ for
    novikov, [·,·] for lie, ∗ for nj, all three for gd; for conformal every
    λ-coefficient of [w_λ P] and [P_λ w] plus ∂P, where ∂ sends terms at
    ∂-degree dpow_bound to zero. Bracket terms outside (W_ext, dpow_bound)
    are dropped and the witness is marked lossy.

    Raises:
        InconsistentInputError: For a kind that does not fit A, W not inside
            W_ext, or generators outside the truncation
    """
    W_ext = W_ext if W_ext is not None else W
    bound = dpow_bound if kind == "conformal" else 0
    moves = _Moves(A, kind, W, bound)
    allowed = frozenset(W_ext)
    missing = [str(idx) for idx in W if idx not in allowed]
    if missing:
        raise InconsistentInputError("window indices outside W_ext: " + ", ".join(missing))

    span: EchelonBasis = EchelonBasis()
    queue: deque[Vector] = deque()
    rendered = []
    for g in generators:
        vec = to_vector(g)
        kept, dropped = _project(vec, allowed, bound)
        if dropped:
            raise InconsistentInputError(f"generator {render_vector(vec)} lies outside the truncation")
        rendered.append(render_vector(vec))
        row = span.add(kept)
        if row is not None:
            queue.append(row)

    lossy = False
    steps = 0
    while queue:
        vec = queue.popleft()
        for _, produced in moves(vec):
            steps += 1
            kept, dropped = _project(produced, allowed, bound)
            lossy = lossy or dropped
            row = span.add(kept)
            if row is not None:
                queue.append(row)

    logger.debug(f"[ANALYSIS] {kind} closure: dim {len(span)} after {steps} moves, lossy={lossy}")
    return IdealWitness(
        kind=kind,
        generators=rendered,
        window=W.render(),
        dpow_bound=bound,
        basis=span.basis(),
        lossy=lossy,
        _span=span,
    )


def is_ideal(A: Structure, kind: str, candidate_basis: Sequence[Generator], W: Window,
             W_ext: Optional[Window] = None, dpow_bound: Optional[int] = None) -> Report:
    """Check that every move of every candidate lands in the candidate span.

    Products are projected onto the truncation (W_ext, dpow_bound) before
    the membership test; the report is lossy when that drops terms.
    dpow_bound defaults to the highest ∂-degree among the candidates.
    """
    W_ext = W_ext if W_ext is not None else W
    vectors = [to_vector(x) for x in candidate_basis]
    if dpow_bound is None:
        dpow_bound = max((d for v in vectors for _, d in v), default=0)
    bound = dpow_bound if kind == "conformal" else 0
    moves = _Moves(A, kind, W, bound)
    allowed = frozenset(W_ext)
    span: EchelonBasis = EchelonBasis()
    for vec in vectors:
        _, dropped = _project(vec, allowed, bound)
        if dropped:
            raise InconsistentInputError(f"candidate {render_vector(vec)} lies outside the truncation")
        span.add(vec)

    failures = []
    lossy = False
    checked = 0
    for vec in vectors:
        for label, produced in moves(vec):
            checked += 1
            kept, dropped = _project(produced, allowed, bound)
            lossy = lossy or dropped
            remainder = span.reduce(kept)
            if remainder:
                failures.append(Failure([render_vector(vec), label], render_vector(remainder)))

    status = "fail" if failures else "pass"
    logger.info(f"[ANALYSIS] is-ideal ({kind}) on {_name(A)}: {status}, {checked} products checked")
    return Report(
        check=f"is-ideal-{kind}",
        status=status,
        verdict=(f"not an ideal: {len(failures)} products leave the span" if failures
                 else f"ideal confirmed: all {checked} products stay in the span"),
        params={"structure": _name(A), **_params(A), "kind": kind, "dimension": str(len(span))},
        window=W.render(),
        dpow_bound=bound if kind == "conformal" else None,
        lossy=lossy,
        failures=failures,
        notes=[EVIDENCE_NOTE] if lossy else [],
    )


def _name(A: Structure) -> str:
    return A.name


def _params(A: Structure) -> dict[str, str]:
    return dict(A.params)


# -- star product evidence -------------------------------------------------


def star_span_check(A: GDStructure, W: Window, targets: Window,
                    expected_gaps: Sequence[BasisIndex] = ()) -> Report:
    """Which targets lie in span{x∗y : x, y basis in W}, with explicit coefficients.

    The report passes when the unreachable targets are exactly
    expected_gaps (by default: none).
    """
    A.validate_window(W)
    span: EchelonBasis = EchelonBasis()
    pairs: list[tuple[BasisIndex, BasisIndex]] = []
    rows: list[Vector] = []
    for x, y in combinations_with_replacement(list(W), 2):
        vec = to_vector(A.star_basis(x, y))
        if span.add(vec) is not None:
            pairs.append((x, y))
            rows.append(vec)

    coords = sorted({key for row in rows for key in row} | {(t, 0) for t in targets})
    matrix = [[row.get(key, ZERO) for key in coords] for row in rows]
    witnesses = []
    unreachable = []
    for t in targets:
        target = [ONE if key == (t, 0) else ZERO for key in coords]
        solution = solve_linear(matrix, target) if matrix else None
        if solution is None:
            unreachable.append(t)
            witnesses.append({"target": str(t), "reachable": False})
            continue
        combination = {
            f"{x}∗{y}": str(c) for (x, y), c in zip(pairs, solution) if c
        }
        witnesses.append({"target": str(t), "reachable": True, "combination": combination})

    expected = sorted(expected_gaps)
    status = "pass" if sorted(unreachable) == expected else "fail"
    if unreachable:
        verdict = f"{len(unreachable)} unreachable target(s): " + ", ".join(str(t) for t in unreachable)
        if status == "pass":
            verdict += " (as predicted)"
    else:
        verdict = f"all {len(targets)} targets lie in V∗V"
    logger.info(f"[ANALYSIS] star-span on {A.name}: {status}, {len(unreachable)} unreachable")
    params = {"structure": A.name, **A.params, "span_dimension": str(len(span))}
    if expected:
        params["expected_gaps"] = ", ".join(str(t) for t in expected)
    return Report(
        check="star-span",
        status=status,
        verdict=verdict,
        params=params,
        window=W.render(),
        witnesses=witnesses,
        notes=[f"targets: {', '.join(targets.render())}"],
    )


def star_annihilator_check(A: GDStructure, W: Window) -> Report:
    """Joint kernel of x ↦ x∗e over e in W, for x supported in W.

    Passes when the kernel is zero.
    """
    A.validate_window(W)
    indices = list(W)
    products = {(x, e): to_vector(A.star_basis(x, e)) for x in indices for e in indices}
    coords = sorted({(e, key) for (x, e), vec in products.items() for key in vec})
    rows = [[products[(x, e)].get(key, ZERO) for e, key in coords] for x in indices]
    basis = kernel(rows, one=ONE)
    witnesses = []
    for vec in basis:
        element = Element({idx: c for idx, c in zip(indices, vec) if c})
        witnesses.append({"kernel_vector": str(element)})
    status = "pass" if not basis else "fail"
    logger.info(f"[ANALYSIS] star-annihilator on {A.name}: kernel dimension {len(basis)}")
    return Report(
        check="star-annihilator",
        status=status,
        verdict=("kernel is zero" if not basis
                 else f"kernel of dimension {len(basis)}"),
        params={"structure": A.name, **A.params, "kernel_dimension": str(len(basis))},
        window=W.render(),
        witnesses=witnesses,
    )


# -- GD ideals and their conformal lift -------------------------------------


def gd_ideal_lift(A: GDStructure, I_basis: Sequence[Element], W: Window,
                  dpow_bound: int = DEFAULT_DPOW_BOUND) -> Report:
    """Lift a GD ideal I to C[∂]I and confirm it is a conformal ideal.

    Fails without lifting when I is not both a Novikov and a Lie ideal on W.
    """
    novikov_report = is_ideal(A, "novikov", I_basis, W)
    lie_report = is_ideal(A, "lie", I_basis, W)
    params = {"structure": A.name, **A.params, "ideal_dimension": str(len(I_basis))}
    if not (novikov_report.passed and lie_report.passed):
        failures = novikov_report.failures + lie_report.failures
        logger.warning(f"[ANALYSIS] gd-lift on {A.name}: candidate is not a GD ideal")
        return Report(
            check="gd-lift",
            status="fail",
            verdict="precondition failed: the candidate is not a GD ideal on W",
            params=params,
            window=W.render(),
            failures=failures,
        )

    CA = quadratic_from_gd(A)
    lifted = [
        PolyElement.from_element(x, d)
        for x in I_basis
        for d in range(dpow_bound + 1)
    ]
    conformal_report = is_ideal(CA, "conformal", lifted, W, dpow_bound=dpow_bound)
    status = conformal_report.status
    return Report(
        check="gd-lift",
        status=status,
        verdict=("C[∂]I is a conformal ideal on the truncation" if status == "pass"
                 else "C[∂]I is not closed under λ-brackets"),
        params={**params, "lifted_dimension": str(len(lifted))},
        window=W.render(),
        dpow_bound=dpow_bound,
        lossy=conformal_report.lossy,
        failures=conformal_report.failures,
        notes=list(conformal_report.notes),
    )


# -- simplicity evidence ---------------------------------------------------


def _random_coefficient(rng: random.Random) -> Scalar:
    re, im = rng.choice(RANDOM_COEFFICIENTS)
    return Scalar(Fraction(re), Fraction(im))


def _random_generator(rng: random.Random, W: Window, dpow_bound: int) -> PolyElement:
    indices = list(W)
    size = rng.randint(1, min(3, len(indices)))
    terms = {}
    for idx in rng.sample(indices, size):
        terms[(idx, rng.randint(0, dpow_bound))] = _random_coefficient(rng)
    return PolyElement(terms)


def _random_combination(rng: random.Random, basis: Sequence[PolyElement]) -> PolyElement:
    size = rng.randint(1, min(3, len(basis)))
    total = PolyElement()
    for x in rng.sample(list(basis), size):
        total = total + x.scale(_random_coefficient(rng))
    return total


def _is_non_abelian(CA: ConformalAlgebra, W: Window) -> bool:
    return any(CA.basis_bracket(x, y) for x in W for y in W)


def simplicity_evidence_report(CA: ConformalAlgebra, W: Window, W_ext: Optional[Window] = None,
                               dpow_bound: int = DEFAULT_DPOW_BOUND, trials: int = DEFAULT_TRIALS,
                               seed: int = DEFAULT_SEED,
                               confine: Optional[Sequence[PolyElement]] = None) -> Report:
    """Aggregate evidence that CA is simple on the truncation (W, dpow_bound).

    Runs star_span_check, star_annihilator_check and a non-abelian check on
    the GD data, then closes `trials` random nonzero generators. Each closure
    is tested first for ∂^k x (1 ≤ k ≤ dpow_bound), then for every ∂^k x
    with k ≤ dpow_bound.

    With confine, generators are random combinations of the confine basis
    and the report instead checks that every closure stays in its span.
    """
    gd = CA.gd
    rng = random.Random(seed)
    star = star_span_check(gd, W, W)
    annihilator = star_annihilator_check(gd, W)
    non_abelian = _is_non_abelian(CA, W)

    derived_targets = [_basis_vector(x, k) for x in W for k in range(1, dpow_bound + 1)]
    full_targets = [_basis_vector(x, k) for x in W for k in range(dpow_bound + 1)]
    confine_span = EchelonBasis(to_vector(x) for x in confine) if confine is not None else None

    witnesses = []
    lossy_runs = derived_hits = full_hits = confined_hits = 0
    full_misses_non_lossy = 0
    for trial in range(trials):
        if confine is not None:
            generator = _random_combination(rng, confine)
        else:
            generator = _random_generator(rng, W, dpow_bound)
        closure = ideal_closure(CA, "conformal", [generator], W, W_ext, dpow_bound)
        derived = closure.contains_all(derived_targets)
        full = closure.contains_all(full_targets)
        record = {
            "trial": trial,
            "generator": str(generator),
            "dimension": closure.dimension,
            "lossy": closure.lossy,
            "contains_partial_v": derived,
            "full": full,
        }
        if confine_span is not None:
            inside = all(confine_span.contains(v) for v in closure.basis)
            record["confined"] = inside
            confined_hits += inside
        witnesses.append(record)
        lossy_runs += closure.lossy
        derived_hits += derived
        full_hits += full
        if not full and not closure.lossy:
            full_misses_non_lossy += 1

    if confine is not None:
        status = "pass" if confined_hits == trials else "fail"
        verdict = f"{confined_hits}/{trials} closures stay inside the candidate ideal"
    else:
        status = "pass" if (
            derived_hits == trials
            and full_misses_non_lossy == 0
            and star.passed
            and annihilator.passed
            and non_abelian
        ) else "fail"
        verdict = (f"C[∂]∂V reached in {derived_hits}/{trials} trials, "
                   f"full truncation in {full_hits}/{trials}")
        if lossy_runs:
            verdict += f"; {lossy_runs}/{trials} trials truncation-limited (products left W_ext)"

    notes = [
        EVIDENCE_NOTE,
        f"V=V∗V on W: {'yes' if star.passed else 'no'} ({star.verdict})",
        f"star annihilator: {annihilator.verdict}",
        f"non-abelian: {'yes' if non_abelian else 'no'}",
        f"lossy trials: {lossy_runs}/{trials}",
    ]
    logger.info(f"[ANALYSIS] simplicity-evidence on {CA.name}: {status} ({verdict})")
    return Report(
        check="simplicity-evidence",
        status=status,
        verdict=verdict,
        params={
            "structure": CA.name,
            **CA.params,
            "trials": str(trials),
            "seed": str(seed),
            "W_ext": str(len(W_ext) if W_ext is not None else len(W)),
        },
        window=W.render(),
        dpow_bound=dpow_bound,
        lossy=lossy_runs > 0,
        witnesses=witnesses,
        notes=notes,
    )


def novikov_simplicity_evidence(A: GDStructure, W: Window, kind: str = "novikov") -> Report:
    """Every basis generator's closure reaches the whole window, and the product is nonzero.

    kind "novikov" closes under ∘ on both sides, kind "nj" under ∗.
    """
    if kind not in ("novikov", "nj"):
        raise InconsistentInputError(f"kind must be 'novikov' or 'nj', got {kind!r}")
    targets = [_basis_vector(x) for x in W]
    witnesses = []
    misses = []
    lossy = False
    for x in W:
        closure = ideal_closure(A, kind, [Element.basis(x)], W)
        full = closure.contains_all(targets)
        lossy = lossy or closure.lossy
        witnesses.append({"generator": str(x), "dimension": closure.dimension, "full": full})
        if not full:
            misses.append(x)
    nontrivial = is_nontrivial(A, W, "novikov" if kind == "novikov" else "star")
    status = "pass" if not misses and nontrivial is not None else "fail"
    if misses:
        verdict = f"{len(misses)} generator(s) span a proper ideal, e.g. {misses[0]}"
    elif nontrivial is None:
        verdict = "the product vanishes on W"
    else:
        verdict = f"every basis generator reaches all {len(W)} window elements"
    logger.info(f"[ANALYSIS] {kind}-simplicity on {A.name}: {status}")
    return Report(
        check=f"{kind}-simplicity",
        status=status,
        verdict=verdict,
        params={"structure": A.name, **A.params, "kind": kind},
        window=W.render(),
        lossy=lossy,
        witnesses=witnesses,
        notes=[EVIDENCE_NOTE],
    )
