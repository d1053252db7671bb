import pytest

from conformal_forge.conformal import (
    BracketPoly,
    ConformalAlgebra,
    OperatorPoly,
    PolyElement,
    check_conformal_axioms,
    jacobi_residual,
    lambda_bracket,
    nth_product,
    reconstruct_bracket,
    sesquilinearity_residual,
    skew_residual,
)
from conformal_forge.constants import LAMBDA
from conformal_forge.elements import Element, Int, Sym
from conformal_forge.errors import InvalidIndexError
from conformal_forge.families import FamilyParams, GroupHom, SkewForm, make_conformal, make_gd
from conformal_forge.gd import Window, check_gd_compatibility, check_lie_axioms
from conformal_forge.scalars import DeltaGroup

from conftest import window

L = Sym("L")
Z = DeltaGroup.parse("1")


def test_virasoro_bracket(vir):
    powers = lambda_bracket(vir, PolyElement.basis(L), PolyElement.basis(L)).powers()
    assert powers == {0: PolyElement.basis(L, 1), 1: PolyElement.basis(L, 0, 2)}
    assert str(lambda_bracket(vir, PolyElement.basis(L), PolyElement.basis(L))) == "(1)·∂ L + (2)·λ L"


def test_sesquilinear_extension(vir):
    # [∂L_λ L] = −λ[L_λ L]
    powers = lambda_bracket(vir, PolyElement.basis(L, 1), PolyElement.basis(L)).powers()
    assert powers == {1: PolyElement.basis(L, 1, -1), 2: PolyElement.basis(L, 0, -2)}


def test_nth_products(vir):
    x = PolyElement.basis(L)
    assert nth_product(vir, x, x, 0) == PolyElement.basis(L, 1)
    assert nth_product(vir, x, x, 1) == PolyElement.basis(L, 0, 2)
    assert not nth_product(vir, x, x, 2)
    with pytest.raises(ValueError):
        nth_product(vir, x, x, -1)


def test_reconstruct_bracket():
    CA = make_conformal(FamilyParams("A1", c="1"))
    P = PolyElement.basis(Int(1), 1) + PolyElement.basis(Int(0)).scale(3)
    Q = PolyElement.basis(Int(2), 2)
    assert reconstruct_bracket(CA, P, Q) == lambda_bracket(CA, P, Q)


def test_gd_rule_on_a1():
    CA = make_conformal(FamilyParams("A1"))
    # [L_0 λ L_1] = ∂(L_1∘L_0) + λ(L_0∗L_1) = ∂L_1 + 3λ L_1
    assert CA.basis_bracket(Int(0), Int(1)) == {
        0: PolyElement.basis(Int(1), 1),
        1: PolyElement.basis(Int(1), 0, 3),
    }


def test_residuals_vanish_on_virasoro(vir):
    x = PolyElement.basis(L)
    y = PolyElement.basis(L, 2).scale(5) + x
    assert not sesquilinearity_residual(vir, x, y)
    assert not skew_residual(vir, y, x)
    assert not jacobi_residual(vir, x, y, x)


def test_operator_poly_substitution():
    one = (LAMBDA,)
    lam = OperatorPoly.variable(one, LAMBDA)
    bp = BracketPoly.from_powers(LAMBDA, {1: PolyElement.basis(L)})
    # λ·L with λ ← −λ−∂ is −λL − ∂L
    shifted = bp.substitute({LAMBDA: -lam - OperatorPoly.partial(one)}, one)
    assert shifted.powers() == {0: PolyElement.basis(L, 1, -1), 1: PolyElement.basis(L, 0, -1)}


@pytest.mark.parametrize("params, spec", [
    (FamilyParams("Vir"), "*"),
    (FamilyParams("A1"), "-1..2"),
    (FamilyParams("CL1", c="2"), "-1..2"),
    (FamilyParams("CL2", delta=Z, b="1/3", phi=GroupHom.parse(Z, "1/5")), "-1..1"),
])
def test_conformal_axioms_hold(params, spec):
    CA = make_conformal(params)
    report = check_conformal_axioms(CA, window(spec, params))
    assert report.passed, report.to_text()


def test_current_algebra_axioms(sl2_params):
    CA = make_conformal(sl2_params)
    assert CA.basis_bracket(Sym("h"), Sym("e")) == {0: PolyElement.basis(Sym("e"), 0, -2)}
    assert check_conformal_axioms(CA, window("*", sl2_params)).passed


def test_broken_bracket_fails_skew_symmetry(vir):
    CA = ConformalAlgebra(vir.gd, rule=lambda a, b: {0: PolyElement.basis(L, 1), 1: PolyElement.basis(L, 0, 3)},
                          name="broken")
    report = check_conformal_axioms(CA, Window.of([L]))
    assert report.status == "fail"
    assert any(f.residual.startswith("skew-symmetry:") for f in report.failures)


def test_invalid_index(vir):
    with pytest.raises(InvalidIndexError):
        lambda_bracket(vir, PolyElement.basis(Sym("M")), PolyElement.basis(L))


def test_poly_element_text():
    x = PolyElement.from_element(Element.basis(L, 2), dpow=2) + PolyElement.basis(L)
    assert str(x) == "(1)·L + (2)·∂^2 L"
    assert x.to_json() == {"L": "1", "∂^2 L": "2"}
    assert x.dpow_degree() == 2


@pytest.mark.slow
@pytest.mark.parametrize("params, spec", [
    (FamilyParams("CL3", delta=Z, b="1/3", c="1", phi=GroupHom.parse(Z, "1/5")), "0..1 x 0..1"),
    (FamilyParams("CL3_b0", delta=Z, phi=GroupHom.parse(Z, "1")), "-1..0 x 0..1"),
])
def test_cl3_conformal_axioms(params, spec):
    report = check_conformal_axioms(make_conformal(params), window(spec, params))
    assert report.passed, report.to_text()


@pytest.mark.slow
def test_cl3_b0_with_skew_form():
    gaussian = DeltaGroup.parse("1, i")
    p = FamilyParams("CL3_b0", delta=gaussian, phi=GroupHom.parse(gaussian, "1, 0"),
                     form=SkewForm.parse(gaussian, "0,1;-1,0"))
    report = check_conformal_axioms(make_conformal(p), window("0..1 x -1..0 x 0..1", p))
    assert report.passed, report.to_text()


def test_incompatible_gd_data_breaks_jacobi():
    # [L_i, L_j] = (i−j)L_{i+j+1} is a Lie bracket, but it is not compatible with L_i∘L_j = (j+1)L_{i+j}
    A = make_gd(FamilyParams("A1")).with_lie(
        lambda x, y: Element.basis(Int(x.i + y.i + 1), x.i - y.i), name="shifted-witt")
    W = Window.of([Int(0), Int(1)])
    assert check_lie_axioms(A, W).passed
    assert check_gd_compatibility(A, W).status == "fail"

    report = check_conformal_axioms(ConformalAlgebra(A), Window.of(Int(i) for i in range(0, 3)))
    assert report.status == "fail"
    assert any(f.residual.startswith("jacobi:") for f in report.failures)
    assert not any(f.residual.startswith("skew-symmetry:") for f in report.failures)
