import pytest

from conformal_forge.analysis import (
    EVIDENCE_NOTE,
    gd_ideal_lift,
    ideal_closure,
    is_ideal,
    novikov_simplicity_evidence,
    simplicity_evidence_report,
    star_annihilator_check,
    star_span_check,
)
from conformal_forge.conformal import PolyElement, quadratic_from_gd
from conformal_forge.elements import Element, Int, Sym, Vec
from conformal_forge.errors import InconsistentInputError
from conformal_forge.families import (
    FamilyParams,
    b_ideal_basis,
    j_ideal_basis,
    make_conformal,
    make_gd,
    predicted_star_gaps,
)
from conformal_forge.gd import Window
from conformal_forge.scalars import ONE, DeltaGroup, vec
from conformal_forge.tables import table_from_dict

from conftest import window

E, F = Sym("e"), Sym("f")
L = Sym("L")
Z = DeltaGroup.parse("1")


@pytest.fixture
def cl2_half():
    return FamilyParams("CL2", delta=Z, b="1/2", allow_2b_in_delta=True)


def test_star_span_gap_is_predicted(a2_half):
    A = make_gd(a2_half)
    W = window("-3..3", a2_half)
    gaps = predicted_star_gaps(a2_half, W)
    report = star_span_check(A, W, W, gaps)
    assert report.passed
    assert "as predicted" in report.verdict
    gap = next(w for w in report.witnesses if w["target"] == "x_(-1)")
    assert gap == {"target": "x_(-1)", "reachable": False}
    assert all(w["reachable"] for w in report.witnesses if w["target"] != "x_(-1)")


def test_star_span_gap_fails_without_prediction(a2_half):
    A = make_gd(a2_half)
    W = window("-3..3", a2_half)
    report = star_span_check(A, W, W)
    assert report.status == "fail"


def test_star_span_combination(a1):
    W = Window.of(Int(i) for i in range(-1, 3))
    report = star_span_check(a1, W, Window.of([Int(0)]))
    assert report.passed
    # L_{−1}∗L_1 = 2L_0 is the first product reaching L_0
    assert report.witnesses == [{"target": "L_0", "reachable": True, "combination": {"L_-1∗L_1": "1/2"}}]


def test_star_annihilator(a2_half, sl2_params):
    report = star_annihilator_check(make_gd(a2_half), window("-3..3", a2_half))
    assert report.passed
    assert report.params["kernel_dimension"] == "0"

    current = star_annihilator_check(make_gd(sl2_params), window("*", sl2_params))
    assert current.status == "fail"
    assert current.params["kernel_dimension"] == "3"


def test_novikov_closure_in_finite_table(ideal2):
    W = Window.of(ideal2.finite_basis)
    small = ideal_closure(ideal2, "novikov", [Element.basis(F)], W)
    assert small.dimension == 1
    assert small.contains(Element.basis(F))
    assert not small.contains(Element.basis(E))
    assert not small.lossy
    assert ideal_closure(ideal2, "novikov", [Element.basis(E)], W).dimension == 2
    assert ideal_closure(ideal2, "gd", [Element.basis(F)], W).dimension == 1


def test_is_ideal_in_finite_table(ideal2):
    W = Window.of(ideal2.finite_basis)
    report = is_ideal(ideal2, "novikov", [Element.basis(F)], W)
    assert report.passed
    assert report.check == "is-ideal-novikov"
    assert is_ideal(ideal2, "lie", [Element.basis(F)], W).passed
    assert is_ideal(ideal2, "novikov", [Element.basis(E)], W).status == "fail"


def test_gd_ideal_lift(ideal2):
    W = Window.of(ideal2.finite_basis)
    report = gd_ideal_lift(ideal2, [Element.basis(F)], W, dpow_bound=2)
    assert report.passed, report.to_text()
    assert report.params["lifted_dimension"] == "3"

    rejected = gd_ideal_lift(ideal2, [Element.basis(E)], W)
    assert rejected.status == "fail"
    assert rejected.verdict.startswith("precondition failed")


def test_conformal_closure_on_virasoro(vir):
    witness = ideal_closure(vir, "conformal", [PolyElement.basis(L)], Window.of([L]), dpow_bound=2)
    assert witness.dimension == 3
    assert witness.to_json()["kind"] == "conformal"


def test_b_is_an_ideal_and_smaller_subspaces_are_not(cl2_half):
    CA = make_conformal(cl2_half)
    W = window("-2..2", cl2_half)
    B = b_ideal_basis(cl2_half, W, 1)
    report = is_ideal(CA, "conformal", B, W)
    assert report.passed, report.to_text()
    assert report.dpow_bound == 1

    smaller = [x for x in B if x != PolyElement.basis(Vec(vec(0)))]
    assert is_ideal(CA, "conformal", smaller, W).status == "fail"


def test_simplicity_evidence_on_virasoro(vir):
    report = simplicity_evidence_report(vir, Window.of([L]), dpow_bound=2, trials=4, seed=1729)
    assert report.passed, report.to_text()
    assert EVIDENCE_NOTE in report.notes
    assert all(w["full"] for w in report.witnesses)


def test_simplicity_evidence_is_deterministic(vir):
    first = simplicity_evidence_report(vir, Window.of([L]), trials=3, seed=5)
    second = simplicity_evidence_report(vir, Window.of([L]), trials=3, seed=5)
    assert first.to_json() == second.to_json()


def test_simplicity_evidence_with_gap(cl2_half):
    CA = make_conformal(cl2_half)
    W = window("-2..2", cl2_half)
    report = simplicity_evidence_report(CA, W, dpow_bound=1, trials=3, seed=1729)
    assert report.status == "fail"

    B = b_ideal_basis(cl2_half, W, 1)
    confined = simplicity_evidence_report(CA, W, dpow_bound=1, trials=3, seed=1729, confine=B)
    assert confined.passed, confined.to_text()
    assert all(w["confined"] for w in confined.witnesses)


@pytest.mark.parametrize("kind", ["novikov", "nj"])
def test_novikov_simplicity(a1, kind):
    report = novikov_simplicity_evidence(a1, Window.of(Int(i) for i in range(-1, 4)), kind)
    assert report.passed, report.to_text()
    assert report.check == f"{kind}-simplicity"


def test_novikov_simplicity_detects_ideal(ideal2):
    report = novikov_simplicity_evidence(ideal2, Window.of(ideal2.finite_basis))
    assert report.status == "fail"


def test_closure_input_errors(vir, ideal2):
    W = Window.of(ideal2.finite_basis)
    with pytest.raises(InconsistentInputError):
        ideal_closure(vir, "novikov", [PolyElement.basis(L)], Window.of([L]))
    with pytest.raises(InconsistentInputError):
        ideal_closure(ideal2, "conformal", [Element.basis(E)], W)
    with pytest.raises(InconsistentInputError):
        ideal_closure(ideal2, "jordan", [Element.basis(E)], W)
    with pytest.raises(InconsistentInputError):
        ideal_closure(vir, "conformal", [PolyElement.basis(L, 3)], Window.of([L]), dpow_bound=2)
    with pytest.raises(InconsistentInputError):
        novikov_simplicity_evidence(ideal2, W, "lie")


@pytest.mark.parametrize("b, gap", [("1/3", None), ("1/2", -1), ("1", -2), ("3/2", -3)])
def test_star_span_gap_tracks_b(b, gap):
    p = FamilyParams("A2", delta=Z, b=b)
    W = window("-6..6", p)
    gaps = predicted_star_gaps(p, W)
    assert gaps == ([] if gap is None else [Vec(vec(gap))])
    report = star_span_check(make_gd(p), W, W, gaps)
    assert report.passed, report.to_text()
    unreachable = [w["target"] for w in report.witnesses if not w["reachable"]]
    assert unreachable == ([] if gap is None else [f"x_({gap})"])


@pytest.mark.parametrize("params, spec", [
    (FamilyParams("A1"), "-1..6"),
    (FamilyParams("A3", delta=Z, b="1/3"), "-2..2 x 0..2"),
])
def test_star_span_reaches_everything(params, spec):
    W = window(spec, params)
    assert predicted_star_gaps(params, W) == []
    report = star_span_check(make_gd(params), W, W)
    assert report.passed, report.to_text()
    assert all(w["reachable"] for w in report.witnesses)


def test_j_is_a_star_ideal(a2_half):
    A = make_gd(a2_half)
    W = window("-3..3", a2_half)
    J = j_ideal_basis(a2_half, W)
    assert Element.basis(Vec(vec(-1))) not in J
    assert is_ideal(A, "nj", J, W).passed

    # dropping x_0 instead: x_1∗x_(-1) = x_0 escapes
    shifted = [Element.basis(idx) for idx in W if idx != Vec(vec(0))]
    report = is_ideal(A, "nj", shifted, W)
    assert report.status == "fail"
    assert report.failures


@pytest.mark.slow
def test_b_is_an_ideal_up_to_dpow_3(cl2_half):
    W = window("-2..2", cl2_half)
    report = is_ideal(make_conformal(cl2_half), "conformal", b_ideal_basis(cl2_half, W, 3), W)
    assert report.passed, report.to_text()
    assert report.dpow_bound == 3


def test_closure_is_idempotent(cl2_half, ideal2):
    CA = make_conformal(cl2_half)
    W = window("-2..2", cl2_half)
    first = ideal_closure(CA, "conformal", [PolyElement.basis(Vec(vec(1)))], W, dpow_bound=1)
    basis = [PolyElement(v) for v in first.basis]
    again = ideal_closure(CA, "conformal", basis, W, dpow_bound=1)
    assert again.dimension == first.dimension
    assert again.contains_all(first.basis)
    assert is_ideal(CA, "conformal", basis, W, dpow_bound=1).passed

    table_window = Window.of(ideal2.finite_basis)
    closed = ideal_closure(ideal2, "novikov", [Element.basis(E)], table_window)
    table_basis = [Element({idx: c for (idx, _), c in v.items()}) for v in closed.basis]
    assert ideal_closure(ideal2, "novikov", table_basis, table_window).dimension == closed.dimension
    assert is_ideal(ideal2, "novikov", table_basis, table_window).passed


def test_partial_moves_terms_below_the_bound():
    abelian = table_from_dict({"basis": ["z"], "novikov": [[None]]}, name="abelian")
    CA = quadratic_from_gd(abelian)
    z = Sym("z")
    generator = PolyElement({(z, 0): ONE, (z, 2): ONE})
    witness = ideal_closure(CA, "conformal", [generator], Window.of([z]), dpow_bound=2)
    assert witness.dimension == 3
    assert not witness.lossy
    assert witness.contains(PolyElement.basis(z, 1))


def test_verdict_flags_truncation_limited_trials(vir):
    CA = make_conformal(FamilyParams("CL1", c="1"))
    limited = simplicity_evidence_report(CA, Window.of([Int(1)]), dpow_bound=1, trials=2, seed=1729)
    assert limited.lossy
    assert "2/2 trials truncation-limited" in limited.verdict

    closed = simplicity_evidence_report(vir, Window.of([L]), dpow_bound=2, trials=2, seed=1729)
    assert not closed.lossy
    assert "truncation-limited" not in closed.verdict


@pytest.mark.slow
def test_simplicity_evidence_on_cl1():
    CA = make_conformal(FamilyParams("CL1", c="1"))
    report = simplicity_evidence_report(CA, window("-1..4", FamilyParams("CL1")), dpow_bound=2, trials=20)
    assert report.verdict.startswith("C[∂]∂V reached in 20/20 trials, full truncation in 20/20")
    assert report.passed, report.to_text()


@pytest.mark.slow
def test_simplicity_evidence_on_cl3():
    p = FamilyParams("CL3", delta=Z, b="1/3")
    report = simplicity_evidence_report(make_conformal(p), window("-1..2 x 0..2", p), dpow_bound=2, trials=20)
    assert all(w["contains_partial_v"] for w in report.witnesses)
    assert all(w["full"] for w in report.witnesses if not w["lossy"])
