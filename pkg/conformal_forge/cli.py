"""Command-line front end for conformal_forge."""

import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Annotated, Callable, Optional

import typer

from conformal_forge.analysis import (
    ideal_closure,
    is_ideal,
    gd_ideal_lift,
    novikov_simplicity_evidence,
    simplicity_evidence_report,
    star_annihilator_check,
    star_span_check,
)
from conformal_forge.coeff import (
    box_pairs,
    check_coeff_jacobi,
    coeff_closed_form_crosscheck,
    coeff_export,
    sample_coeff_pairs,
    sample_coeff_triples,
)
from conformal_forge.conformal import PolyElement, check_conformal_axioms
from conformal_forge.config import env_seed, load_settings
from conformal_forge.constants import DEFAULT_MODE_RANGE, TORTKEN_VARIANTS
from conformal_forge.elements import BasisIndex, Element
from conformal_forge.errors import ConformalForgeError, InconsistentInputError, WindowError
from conformal_forge.families import (
    FamilyParams,
    GroupHom,
    SkewForm,
    b_ideal_basis,
    default_window_spec,
    j_ideal_basis,
    make_conformal,
    make_gd,
    osborn_iso_check,
    parse_window,
    predicted_star_gaps,
)
from conformal_forge.gd import (
    Window,
    check_gd_compatibility,
    check_lie_axioms,
    check_novikov_axioms,
    check_tortken,
)
from conformal_forge.logger import get_logger
from conformal_forge.reports import Report, ReportWriter, render
from conformal_forge.scalars import DeltaGroup, parse_scalar
from conformal_forge.tables import load_table

logger = get_logger("CLI")

app = typer.Typer(
    name="conformal-forge",
    help="Exact checks and simplicity evidence for quadratic Lie conformal algebras.",
    no_args_is_help=True,
    add_completion=False,
)


@dataclass
class RunConfig:
    """Everything one invocation needs.

    Attributes:
        command: Subcommand name
        params: Family parameters
        window: Parsed window
        dpow_bound: ∂-degree truncation
        trials: Random generators for evidence runs
        samples: Random samples for coefficient-algebra runs
        seed: Seed after the environment override
        output_format: "text" or "json"
        output: Optional file to write the report to
        expect: Expected report status
    """
    command: str
    params: FamilyParams
    window: Window
    dpow_bound: int
    trials: int
    samples: int
    seed: int
    output_format: str
    output: Optional[str]
    expect: str


# -- shared options --------------------------------------------------------

FamilyOpt = Annotated[str, typer.Option("--family", "-f", help="Vir, Cur, Table, A1, CL1, A2, CL2, A3, CL3, CL3_b0, OsbornA")]
DeltaOpt = Annotated[str, typer.Option("--delta", help='Generators of Δ, e.g. "1" or "1, i"')]
BOpt = Annotated[str, typer.Option("--b", help="Shift constant b")]
COpt = Annotated[str, typer.Option("--c", help="Constant c of the Lie structure")]
KOpt = Annotated[Optional[str], typer.Option("--k", help="Use the bracket k(a∘b − b∘a)")]
PhiOpt = Annotated[Optional[str], typer.Option("--phi", help="Images of the Δ generators under φ")]
FormOpt = Annotated[Optional[str], typer.Option("--form", help='Skew form ϕ as rows, e.g. "0,1;-1,0"')]
TableOpt = Annotated[Optional[Path], typer.Option("--table", help="Finite GD table (JSON)")]
Allow2bOpt = Annotated[bool, typer.Option("--allow-2b-in-delta", help="Build CL2 even when 2b ∈ Δ")]
WindowOpt = Annotated[Optional[str], typer.Option("--window", "-w", help='Window, e.g. "-1..6" or "-2..2 x 0..3"')]
DpowOpt = Annotated[Optional[int], typer.Option("--dpow-bound", help="∂-degree truncation")]
FormatOpt = Annotated[Optional[str], typer.Option("--format", help="text or json")]
OutputOpt = Annotated[Optional[Path], typer.Option("--output", "-o", help="Also write the report here")]
ExpectOpt = Annotated[Optional[str], typer.Option("--expect", help="Expected status: pass or fail")]
SeedOpt = Annotated[Optional[int], typer.Option("--seed", help="Seed (CONFORMAL_FORGE_SEED wins)")]


def _family_params(family: str, delta: str, b: str, c: str, k: Optional[str], phi: Optional[str],
                   form: Optional[str], table: Optional[Path], allow_2b: bool) -> FamilyParams:
    group = DeltaGroup.parse(delta)
    return FamilyParams(
        family=family,
        delta=group,
        b=parse_scalar(b),
        c=parse_scalar(c),
        k=parse_scalar(k) if k is not None else None,
        phi=GroupHom.parse(group, phi),
        form=SkewForm.parse(group, form),
        table=load_table(str(table)) if table is not None else None,
        allow_2b_in_delta=allow_2b,
    )


def _config(command: str, params: FamilyParams, window: Optional[str], dpow_bound: Optional[int],
            output_format: Optional[str], output: Optional[Path], expect: Optional[str],
            seed: Optional[int] = None, trials: Optional[int] = None,
            samples: Optional[int] = None) -> RunConfig:
    settings = load_settings()
    output_format = output_format or settings.output_format
    if output_format not in ("text", "json"):
        raise InconsistentInputError(f"--format must be text or json, got {output_format!r}")
    expect = expect or "pass"
    if expect not in ("pass", "fail"):
        raise InconsistentInputError(f"--expect must be pass or fail, got {expect!r}")
    resolved_seed = env_seed()
    if resolved_seed is None:
        resolved_seed = seed if seed is not None else settings.seed
    spec = window if window is not None else default_window_spec(params)
    return RunConfig(
        command=command,
        params=params,
        window=parse_window(spec, params),
        dpow_bound=dpow_bound if dpow_bound is not None else settings.dpow_bound,
        trials=trials if trials is not None else settings.trials,
        samples=samples if samples is not None else settings.samples,
        seed=resolved_seed,
        output_format=output_format,
        output=str(output) if output is not None else None,
        expect=expect,
    )


def _parse_point(spec: str, params: FamilyParams) -> tuple[BasisIndex, int]:
    """One index in window syntax with an optional ":d" ∂-power suffix."""
    point, _, dpow = spec.partition(":")
    indices = list(parse_window(point, params))
    if len(indices) != 1:
        raise WindowError(f"{spec!r} must name exactly one basis index")
    try:
        return indices[0], int(dpow) if dpow.strip() else 0
    except ValueError as e:
        raise WindowError(f"malformed ∂-power in {spec!r}") from e


def _finish(cfg: RunConfig, reports: list[Report]) -> None:
    """Print, optionally save, and exit 0 when the status is the expected one."""
    typer.echo(render(reports, cfg.output_format), nl=False)
    if cfg.output:
        ReportWriter().save_report(reports, cfg.output, cfg.output_format)
    status = "pass" if all(r.passed for r in reports) else "fail"
    logger.debug(f"[CLI] {cfg.command}: status {status}, expected {cfg.expect}")
    raise typer.Exit(0 if status == cfg.expect else 1)


def _guard(body: Callable[[], None]) -> None:
    """Map input errors to exit code 2."""
    try:
        body()
    except ConformalForgeError as e:
        typer.echo(f"error: {e}", err=True)
        raise typer.Exit(2)


# -- commands ----------------------------------------------------------------


@app.command("check-axioms")
def check_axioms_cmd(
    family: FamilyOpt, delta: DeltaOpt = "1", b: BOpt = "0", c: COpt = "0", k: KOpt = None,
    phi: PhiOpt = None, form: FormOpt = None, table: TableOpt = None, allow_2b_in_delta: Allow2bOpt = False,
    window: WindowOpt = None, output_format: FormatOpt = None, output: OutputOpt = None,
    expect: ExpectOpt = None,
) -> None:
    """Novikov, Lie and compatibility identities of the GD data on a window."""
    def body() -> None:
        p = _family_params(family, delta, b, c, k, phi, form, table, allow_2b_in_delta)
        cfg = _config("check-axioms", p, window, None, output_format, output, expect)
        A = make_gd(p)
        _finish(cfg, [
            check_novikov_axioms(A, cfg.window),
            check_lie_axioms(A, cfg.window),
            check_gd_compatibility(A, cfg.window),
        ])
    _guard(body)


@app.command("check-conformal")
def check_conformal_cmd(
    family: FamilyOpt, delta: DeltaOpt = "1", b: BOpt = "0", c: COpt = "0", k: KOpt = None,
    phi: PhiOpt = None, form: FormOpt = None, table: TableOpt = None, allow_2b_in_delta: Allow2bOpt = False,
    window: WindowOpt = None, output_format: FormatOpt = None, output: OutputOpt = None,
    expect: ExpectOpt = None,
) -> None:
    """Sesquilinearity, skew-symmetry and Jacobi of the λ-bracket on a window."""
    def body() -> None:
        p = _family_params(family, delta, b, c, k, phi, form, table, allow_2b_in_delta)
        cfg = _config("check-conformal", p, window, None, output_format, output, expect)
        _finish(cfg, [check_conformal_axioms(make_conformal(p), cfg.window)])
    _guard(body)


@app.command("check-tortken")
def check_tortken_cmd(
    family: FamilyOpt, delta: DeltaOpt = "1", b: BOpt = "0", c: COpt = "0", k: KOpt = None,
    phi: PhiOpt = None, form: FormOpt = None, table: TableOpt = None, allow_2b_in_delta: Allow2bOpt = False,
    window: WindowOpt = None, output_format: FormatOpt = None, output: OutputOpt = None,
    expect: ExpectOpt = None,
    variant: Annotated[str, typer.Option("--variant", help="printed or corrected")] = "corrected",
) -> None:
    """The four-argument identity of the star product on all 4-tuples of a window."""
    def body() -> None:
        if variant not in TORTKEN_VARIANTS:
            raise InconsistentInputError(f"--variant must be one of {', '.join(TORTKEN_VARIANTS)}")
        p = _family_params(family, delta, b, c, k, phi, form, table, allow_2b_in_delta)
        cfg = _config("check-tortken", p, window, None, output_format, output, expect)
        _finish(cfg, [check_tortken(make_gd(p), cfg.window, variant)])
    _guard(body)


@app.command("coeff")
def coeff_cmd(
    family: FamilyOpt, delta: DeltaOpt = "1", b: BOpt = "0", c: COpt = "0", k: KOpt = None,
    phi: PhiOpt = None, form: FormOpt = None, table: TableOpt = None, allow_2b_in_delta: Allow2bOpt = False,
    window: WindowOpt = None, output_format: FormatOpt = None, output: OutputOpt = None,
    expect: ExpectOpt = None, seed: SeedOpt = None,
    samples: Annotated[Optional[int], typer.Option("--samples", help="Random triples")] = None,
    modes: Annotated[str, typer.Option("--modes", help='Mode range, e.g. "-3..3"')] = "",
    export: Annotated[Optional[Path], typer.Option("--export", help="Write structure constants over the box")] = None,
) -> None:
    """Jacobi of the coefficient algebra on seeded random triples."""
    def body() -> None:
        p = _family_params(family, delta, b, c, k, phi, form, table, allow_2b_in_delta)
        cfg = _config("coeff", p, window, None, output_format, output, expect, seed=seed, samples=samples)
        mode_range = _parse_modes(modes)
        CA = make_conformal(p)
        triples = sample_coeff_triples(cfg.window, mode_range, cfg.samples, cfg.seed)
        report = check_coeff_jacobi(CA, triples)
        report.params["seed"] = str(cfg.seed)
        report.window = cfg.window.render()
        if export is not None:
            export.parent.mkdir(parents=True, exist_ok=True)
            rows = coeff_export(CA, cfg.window, mode_range)
            export.write_text(json.dumps(rows, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")
            report.notes.append(f"structure constants for {len(rows)} pairs written to {export}")
        _finish(cfg, [report])
    _guard(body)


def _parse_modes(text: str) -> tuple[int, int]:
    if not text.strip():
        return DEFAULT_MODE_RANGE
    lo, sep, hi = text.replace("−", "-").partition("..")
    try:
        bounds = (int(lo), int(hi) if sep else int(lo))
    except ValueError as e:
        raise WindowError(f"malformed mode range {text!r}") from e
    if bounds[0] > bounds[1]:
        raise WindowError(f"empty mode range {text!r}")
    return bounds


@app.command("coeff-crosscheck")
def coeff_crosscheck_cmd(
    family: FamilyOpt, delta: DeltaOpt = "1", b: BOpt = "0", c: COpt = "0", k: KOpt = None,
    phi: PhiOpt = None, form: FormOpt = None, table: TableOpt = None, allow_2b_in_delta: Allow2bOpt = False,
    window: WindowOpt = None, output_format: FormatOpt = None, output: OutputOpt = None,
    expect: ExpectOpt = None, seed: SeedOpt = None,
    samples: Annotated[Optional[int], typer.Option("--samples", help="Random pairs")] = None,
    modes: Annotated[str, typer.Option("--modes", help='Mode range, e.g. "-3..3"')] = "",
    exhaustive: Annotated[bool, typer.Option("--exhaustive", help="Every pair of the box")] = False,
) -> None:
    """Compare the mode bracket with its closed form."""
    def body() -> None:
        p = _family_params(family, delta, b, c, k, phi, form, table, allow_2b_in_delta)
        cfg = _config("coeff-crosscheck", p, window, None, output_format, output, expect,
                      seed=seed, samples=samples)
        mode_range = _parse_modes(modes)
        if exhaustive:
            pairs = box_pairs(cfg.window, mode_range)
        else:
            pairs = sample_coeff_pairs(cfg.window, mode_range, cfg.samples, cfg.seed)
        report = coeff_closed_form_crosscheck(p, pairs)
        report.params["seed"] = str(cfg.seed)
        report.window = cfg.window.render()
        _finish(cfg, [report])
    _guard(body)


@app.command("star-span")
def star_span_cmd(
    family: FamilyOpt, delta: DeltaOpt = "1", b: BOpt = "0", c: COpt = "0", k: KOpt = None,
    phi: PhiOpt = None, form: FormOpt = None, table: TableOpt = None, allow_2b_in_delta: Allow2bOpt = False,
    window: WindowOpt = None, output_format: FormatOpt = None, output: OutputOpt = None,
    expect: ExpectOpt = None,
    targets: Annotated[Optional[str], typer.Option("--targets", help="Target window (default: the window)")] = None,
) -> None:
    """Which targets are sums of star products; gaps are compared with the prediction."""
    def body() -> None:
        p = _family_params(family, delta, b, c, k, phi, form, table, allow_2b_in_delta)
        cfg = _config("star-span", p, window, None, output_format, output, expect)
        target_window = parse_window(targets, p) if targets is not None else cfg.window
        gaps = predicted_star_gaps(p, target_window)
        _finish(cfg, [star_span_check(make_gd(p), cfg.window, target_window, gaps)])
    _guard(body)


@app.command("star-annihilator")
def star_annihilator_cmd(
    family: FamilyOpt, delta: DeltaOpt = "1", b: BOpt = "0", c: COpt = "0", k: KOpt = None,
    phi: PhiOpt = None, form: FormOpt = None, table: TableOpt = None, allow_2b_in_delta: Allow2bOpt = False,
    window: WindowOpt = None, output_format: FormatOpt = None, output: OutputOpt = None,
    expect: ExpectOpt = None,
) -> None:
    """Elements of the window annihilated by every window element under ∗."""
    def body() -> None:
        p = _family_params(family, delta, b, c, k, phi, form, table, allow_2b_in_delta)
        cfg = _config("star-annihilator", p, window, None, output_format, output, expect)
        _finish(cfg, [star_annihilator_check(make_gd(p), cfg.window)])
    _guard(body)


KindOpt = Annotated[str, typer.Option("--kind", help="novikov, lie, nj, gd or conformal")]
GeneratorOpt = Annotated[Optional[list[str]], typer.Option("--generator", "-g", help='Basis index with optional ∂-power, e.g. "0" or "1 x 2:1"')]
ExtWindowOpt = Annotated[Optional[str], typer.Option("--ext-window", help="Truncation window (default: the window)")]


def _structure(p: FamilyParams, kind: str):
    return make_conformal(p) if kind == "conformal" else make_gd(p)


def _generator(spec: str, p: FamilyParams, kind: str):
    idx, dpow = _parse_point(spec, p)
    if kind == "conformal":
        return PolyElement.basis(idx, dpow)
    if dpow:
        raise InconsistentInputError(f"∂-powers need kind conformal, got {spec!r}")
    return Element.basis(idx)


@app.command("closure")
def closure_cmd(
    family: FamilyOpt, kind: KindOpt, delta: DeltaOpt = "1", b: BOpt = "0", c: COpt = "0", k: KOpt = None,
    phi: PhiOpt = None, form: FormOpt = None, table: TableOpt = None, allow_2b_in_delta: Allow2bOpt = False,
    window: WindowOpt = None, dpow_bound: DpowOpt = None, output_format: FormatOpt = None,
    output: OutputOpt = None, expect: ExpectOpt = None, generator: GeneratorOpt = None,
    ext_window: ExtWindowOpt = None,
) -> None:
    """Truncated ideal closure of the generators; passes when it fills the truncation."""
    def body() -> None:
        p = _family_params(family, delta, b, c, k, phi, form, table, allow_2b_in_delta)
        cfg = _config("closure", p, window, dpow_bound, output_format, output, expect)
        if not generator:
            raise InconsistentInputError("closure needs at least one --generator")
        W_ext = parse_window(ext_window, p) if ext_window is not None else cfg.window
        gens = [_generator(spec, p, kind) for spec in generator]
        witness = ideal_closure(_structure(p, kind), kind, gens, cfg.window, W_ext, cfg.dpow_bound)
        bound = witness.dpow_bound
        full = len(W_ext) * (bound + 1)
        status = "pass" if witness.dimension == full else "fail"
        _finish(cfg, [Report(
            check=f"closure-{kind}",
            status=status,
            verdict=f"closure has dimension {witness.dimension} of {full}",
            params={**p.describe(), "kind": kind, "ext_window": f"{len(W_ext)} indices"},
            window=cfg.window.render(),
            dpow_bound=bound if kind == "conformal" else None,
            lossy=witness.lossy,
            witnesses=[witness.to_json()],
        )])
    _guard(body)


def _candidate(name: Optional[str], generator: Optional[list[str]], drop: Optional[list[str]],
               p: FamilyParams, kind: str, W: Window, dpow_bound: int) -> list:
    dropped = {_parse_point(spec, p) for spec in (drop or [])}
    if generator:
        basis = [_generator(spec, p, kind) for spec in generator]
    elif name == "J":
        basis = j_ideal_basis(p, W)
    elif name == "B":
        basis = b_ideal_basis(p, W, dpow_bound)
    elif name == "full":
        bound = dpow_bound if kind == "conformal" else 0
        basis = [PolyElement.basis(idx, d) for idx in W for d in range(bound + 1)]
    else:
        raise InconsistentInputError("give --candidate J, B or full, or --generator specs")
    if kind == "conformal":
        basis = [x if isinstance(x, PolyElement) else PolyElement.from_element(x) for x in basis]
    elif any(isinstance(x, PolyElement) and x.dpow_degree() > 0 for x in basis):
        raise InconsistentInputError(f"candidate {name} has ∂-powers; use --kind conformal")
    else:
        basis = [x if isinstance(x, Element) else Element({idx: c for (idx, _), c in x.items()})
                 for x in basis]
    if dropped:
        def key_of(x) -> set:
            return set(x.as_dict()) if isinstance(x, PolyElement) else {(idx, 0) for idx in x.support()}
        basis = [x for x in basis if not (key_of(x) & dropped)]
    return basis


CandidateOpt = Annotated[Optional[str], typer.Option("--candidate", help="J, B or full")]
DropOpt = Annotated[Optional[list[str]], typer.Option("--drop", help="Remove a basis line from the candidate")]


@app.command("is-ideal")
def is_ideal_cmd(
    family: FamilyOpt, kind: KindOpt, delta: DeltaOpt = "1", b: BOpt = "0", c: COpt = "0", k: KOpt = None,
    phi: PhiOpt = None, form: FormOpt = None, table: TableOpt = None, allow_2b_in_delta: Allow2bOpt = False,
    window: WindowOpt = None, dpow_bound: DpowOpt = None, output_format: FormatOpt = None,
    output: OutputOpt = None, expect: ExpectOpt = None, candidate: CandidateOpt = None,
    generator: GeneratorOpt = None, drop: DropOpt = None,
) -> None:
    """Check that a candidate subspace absorbs all products with the window."""
    def body() -> None:
        p = _family_params(family, delta, b, c, k, phi, form, table, allow_2b_in_delta)
        cfg = _config("is-ideal", p, window, dpow_bound, output_format, output, expect)
        basis = _candidate(candidate, generator, drop, p, kind, cfg.window, cfg.dpow_bound)
        bound = cfg.dpow_bound if kind == "conformal" else None
        _finish(cfg, [is_ideal(_structure(p, kind), kind, basis, cfg.window, dpow_bound=bound)])
    _guard(body)


@app.command("gd-lift")
def gd_lift_cmd(
    family: FamilyOpt, delta: DeltaOpt = "1", b: BOpt = "0", c: COpt = "0", k: KOpt = None,
    phi: PhiOpt = None, form: FormOpt = None, table: TableOpt = None, allow_2b_in_delta: Allow2bOpt = False,
    window: WindowOpt = None, dpow_bound: DpowOpt = None, output_format: FormatOpt = None,
    output: OutputOpt = None, expect: ExpectOpt = None, candidate: CandidateOpt = None,
    generator: GeneratorOpt = None, drop: DropOpt = None,
) -> None:
    """Lift a GD ideal I to C[∂]I and confirm it is a conformal ideal."""
    def body() -> None:
        p = _family_params(family, delta, b, c, k, phi, form, table, allow_2b_in_delta)
        cfg = _config("gd-lift", p, window, dpow_bound, output_format, output, expect)
        basis = _candidate(candidate, generator, drop, p, "gd", cfg.window, 0)
        _finish(cfg, [gd_ideal_lift(make_gd(p), basis, cfg.window, cfg.dpow_bound)])
    _guard(body)


@app.command("nj-simplicity")
def nj_simplicity_cmd(
    family: FamilyOpt, delta: DeltaOpt = "1", b: BOpt = "0", c: COpt = "0", k: KOpt = None,
    phi: PhiOpt = None, form: FormOpt = None, table: TableOpt = None, allow_2b_in_delta: Allow2bOpt = False,
    window: WindowOpt = None, output_format: FormatOpt = None, output: OutputOpt = None,
    expect: ExpectOpt = None,
    kind: Annotated[str, typer.Option("--kind", help="nj or novikov")] = "nj",
) -> None:
    """Every basis element generates the whole window under ∗ (or ∘)."""
    def body() -> None:
        p = _family_params(family, delta, b, c, k, phi, form, table, allow_2b_in_delta)
        cfg = _config("nj-simplicity", p, window, None, output_format, output, expect)
        _finish(cfg, [novikov_simplicity_evidence(make_gd(p), cfg.window, kind)])
    _guard(body)


@app.command("simplicity-evidence")
def simplicity_evidence_cmd(
    family: FamilyOpt, delta: DeltaOpt = "1", b: BOpt = "0", c: COpt = "0", k: KOpt = None,
    phi: PhiOpt = None, form: FormOpt = None, table: TableOpt = None, allow_2b_in_delta: Allow2bOpt = False,
    window: WindowOpt = None, dpow_bound: DpowOpt = None, output_format: FormatOpt = None,
    output: OutputOpt = None, expect: ExpectOpt = None, seed: SeedOpt = None,
    trials: Annotated[Optional[int], typer.Option("--trials", help="Random generators")] = None,
    ext_window: ExtWindowOpt = None,
    confine: Annotated[Optional[str], typer.Option("--confine", help="Sample inside candidate J or B instead")] = None,
) -> None:
    """Closures of random generators, star span, annihilator and non-abelian checks."""
    def body() -> None:
        p = _family_params(family, delta, b, c, k, phi, form, table, allow_2b_in_delta)
        cfg = _config("simplicity-evidence", p, window, dpow_bound, output_format, output, expect,
                      seed=seed, trials=trials)
        W_ext = parse_window(ext_window, p) if ext_window is not None else None
        confine_basis = None
        if confine is not None:
            confine_basis = _candidate(confine, None, None, p, "conformal", cfg.window, cfg.dpow_bound)
        report = simplicity_evidence_report(
            make_conformal(p), cfg.window, W_ext, cfg.dpow_bound, cfg.trials, cfg.seed, confine_basis,
        )
        _finish(cfg, [report])
    _guard(body)


@app.command("osborn-iso")
def osborn_iso_cmd(
    delta: DeltaOpt = "1", b: BOpt = "1/3",
    window: WindowOpt = None, output_format: FormatOpt = None, output: OutputOpt = None,
    expect: ExpectOpt = None,
) -> None:
    """ψ(L_{α,i}) = x_{α,i}/i! is multiplicative on a window."""
    def body() -> None:
        group = DeltaGroup.parse(delta)
        p = FamilyParams("OsbornA", delta=group, b=parse_scalar(b))
        cfg = _config("osborn-iso", p, window, None, output_format, output, expect)
        _finish(cfg, [osborn_iso_check(p.b, group, cfg.window)])
    _guard(body)


def run(argv: Optional[list[str]] = None) -> int:
    """Run the CLI on argv and return the exit code.

    0 when every report has the expected status, 1 when not, 2 for input
    errors (bad flags, unknown subcommands, violated hypotheses).
    """
    try:
        app(args=argv, prog_name="conformal-forge", standalone_mode=True)
    except SystemExit as e:
        if e.code is None:
            return 0
        return e.code if isinstance(e.code, int) else 1
    return 0


def main() -> None:
    """Entry point for conformal-forge."""
    sys.exit(run(sys.argv[1:]))


__all__ = ["RunConfig", "app", "main", "run"]
