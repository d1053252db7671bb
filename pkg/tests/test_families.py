import pytest

from conformal_forge.conformal import ConformalAlgebra, PolyElement
from conformal_forge.elements import Element, Int, Sym, Vec, VecNat
from conformal_forge.errors import (
    HypothesisError,
    InconsistentInputError,
    TableFormatError,
    UnknownFamilyError,
    WindowError,
)
from conformal_forge.families import (
    FamilyParams,
    GroupHom,
    SkewForm,
    b_ideal_basis,
    default_window_spec,
    j_ideal_basis,
    make_family,
    make_gd,
    minus_two_b,
    osborn_iso_check,
    osborn_map,
    parse_window,
    predicted_star_gaps,
    validate_family,
)
from conformal_forge.gd import GDStructure, check_novikov_axioms
from conformal_forge.scalars import DeltaGroup, Scalar, vec

Z = DeltaGroup.parse("1")
GAUSSIAN = DeltaGroup.parse("1, i")


def _hypothesis(p: FamilyParams) -> str:
    with pytest.raises(HypothesisError) as info:
        validate_family(p)
    return info.value.hypothesis


def test_family_hypotheses():
    phi = GroupHom.parse(Z, "1/5")
    assert _hypothesis(FamilyParams("CL2", delta=Z, b="1/2")) == "2b∉Δ"
    assert _hypothesis(FamilyParams("A2", delta=Z, b="1", phi=phi)) == "b∉Δ"
    assert _hypothesis(FamilyParams("CL3", delta=Z, b="0")) == "b≠0"
    assert _hypothesis(FamilyParams("A3", delta=Z, b="0", c="1")) == "b≠0"
    assert _hypothesis(FamilyParams("CL3_b0", delta=Z, b="1/3")) == "b=0"


def test_hypotheses_that_hold():
    validate_family(FamilyParams("CL2", delta=Z, b="1/2", allow_2b_in_delta=True))
    validate_family(FamilyParams("CL2", delta=Z, b="1/3", phi=GroupHom.parse(Z, "1/5")))
    # b ∈ Δ is fine while φ = 0
    validate_family(FamilyParams("A2", delta=Z, b="1"))


def test_skew_form_must_be_skew():
    with pytest.raises(HypothesisError) as info:
        SkewForm.parse(GAUSSIAN, "0,1;1,0")
    assert info.value.hypothesis == "ϕ skew-symmetric"
    form = SkewForm.parse(GAUSSIAN, "0,2;-2,0")
    assert form(vec(1, 0), vec(0, 3)) == Scalar(6)
    assert form(vec(0, 3), vec(1, 0)) == Scalar(-6)


def test_group_hom():
    phi = GroupHom.parse(GAUSSIAN, "1, i")
    assert phi(vec(2, -1)) == Scalar(2, -1)
    assert GroupHom.parse(GAUSSIAN, None).is_zero()


def test_unknown_family():
    with pytest.raises(UnknownFamilyError):
        FamilyParams("Witt")


def test_make_family_kinds():
    assert isinstance(make_family(FamilyParams("Vir")), ConformalAlgebra)
    assert isinstance(make_family(FamilyParams("CL1")), ConformalAlgebra)
    assert isinstance(make_family(FamilyParams("A1")), GDStructure)


def test_k_parameter_adds_commutator_bracket():
    A = make_gd(FamilyParams("A1", k="1"))
    assert A.name == "A1"
    assert A.params["k"] == "1"
    assert A.lie_basis(Int(0), Int(1)) == Element.basis(Int(1))


@pytest.mark.parametrize("family", ["CL1", "Vir", "Cur", "CL3_b0"])
def test_k_is_rejected_without_a_commutator_bracket(family):
    with pytest.raises(InconsistentInputError, match="k applies only"):
        validate_family(FamilyParams(family, k="1"))


def test_osborn_structure_is_novikov():
    p = FamilyParams("OsbornA", delta=Z, b="1/3")
    assert check_novikov_axioms(make_gd(p), parse_window("-1..1 x 0..2", p)).passed


@pytest.mark.parametrize("family, text, size", [
    ("A1", "-1..3", 5),
    ("A1", "−1..6", 8),
    ("A2", "-3..3", 7),
    ("A3", "-1..1 x 0..2", 9),
    ("A3", "-1..1×0..2", 9),
    ("Vir", "*", 1),
    ("Vir", "L", 1),
])
def test_parse_window(family, text, size):
    assert len(parse_window(text, FamilyParams(family))) == size


def test_parse_window_rank_two():
    W = parse_window("-1..1 x 0..1", FamilyParams("A2", delta=GAUSSIAN))
    assert len(W) == 6
    assert Vec(vec(-1, 0)) in W


@pytest.mark.parametrize("family, text", [
    ("A1", "3..1"),
    ("A1", "1..2 x 0..1"),
    ("A1", "a..b"),
    ("A3", "0..1"),
    ("A3", "0..1 x -1..1"),
    ("Vir", "M"),
])
def test_parse_window_errors(family, text):
    with pytest.raises(WindowError):
        parse_window(text, FamilyParams(family))


def test_default_windows():
    assert default_window_spec(FamilyParams("A1")) == "-1..5"
    assert default_window_spec(FamilyParams("A2", delta=GAUSSIAN)) == "-3..3 x -3..3"
    assert default_window_spec(FamilyParams("A3")) == "-2..2 x 0..2"
    assert default_window_spec(FamilyParams("Vir")) == "*"


def test_distinguished_subspaces():
    p = FamilyParams("CL2", delta=Z, b="1/2", allow_2b_in_delta=True)
    W = parse_window("-2..2", p)
    assert minus_two_b(p) == vec(-1)
    assert predicted_star_gaps(p, W) == [Vec(vec(-1))]
    J = j_ideal_basis(p, W)
    assert len(J) == 4
    assert Element.basis(Vec(vec(-1))) not in J
    B = b_ideal_basis(p, W, 2)
    assert len(B) == 4 + 5 * 2
    assert PolyElement.basis(Vec(vec(-1)), 1) in B

    generic = FamilyParams("CL2", delta=Z, b="1/3")
    assert minus_two_b(generic) is None
    assert predicted_star_gaps(generic, W) == []
    assert predicted_star_gaps(FamilyParams("A1"), parse_window("-1..3", FamilyParams("A1"))) == []


def test_osborn_isomorphism():
    p = FamilyParams("OsbornA", delta=Z, b="1/3")
    W = parse_window("-1..1 x 0..3", p)
    report = osborn_iso_check(p.b, Z, W)
    assert report.passed, report.to_text()
    assert report.check == "osborn-iso"


@pytest.mark.slow
@pytest.mark.parametrize("b", ["1/3", "1/2"])
def test_osborn_isomorphism_on_wide_window(b):
    p = FamilyParams("OsbornA", delta=Z, b=b)
    report = osborn_iso_check(p.b, Z, parse_window("-2..2 x 0..3", p))
    assert report.passed, report.to_text()


def test_osborn_map_divides_by_factorial():
    idx = VecNat(vec(2), 3)
    assert osborn_map(idx).coeff(idx) == Scalar(1) / 6
    assert osborn_map(VecNat(vec(-1), 0)) == Element.basis(VecNat(vec(-1), 0))


def test_osborn_without_factorials_fails():
    p = FamilyParams("OsbornA", delta=Z, b="1/3")
    W = parse_window("0..0 x 0..2", p)
    report = osborn_iso_check(p.b, Z, W, psi=Element.basis)
    assert report.status == "fail"
    assert ["x_(0),1", "x_(0),1"] in [f.inputs for f in report.failures]


def test_current_needs_a_table():
    with pytest.raises(TableFormatError, match="needs a table"):
        make_gd(FamilyParams("Cur"))


def test_table_family_keeps_table_name(ideal2):
    A = make_gd(FamilyParams("Table", table=ideal2))
    assert A.name == "ideal2"
    assert A.finite_basis == (Sym("e"), Sym("f"))
