import json

import pytest

from conformal_forge.elements import Element, Sym
from conformal_forge.errors import TableFormatError
from conformal_forge.gd import Window, check_gd_compatibility, check_lie_axioms, check_novikov_axioms
from conformal_forge.tables import load_table, table_from_dict


def test_load_ideal_table(ideal2):
    e, f = Sym("e"), Sym("f")
    assert ideal2.name == "ideal2"
    assert ideal2.finite_basis == (e, f)
    assert ideal2.novikov_basis(f, e) == Element.basis(f)
    assert not ideal2.novikov_basis(e, f)
    W = Window.of(ideal2.finite_basis)
    assert check_novikov_axioms(ideal2, W).passed
    assert check_gd_compatibility(ideal2, W).passed


def test_sl2_table_is_lie(data_dir):
    A = load_table(str(data_dir / "sl2.json"), name="sl2")
    assert A.name == "sl2"
    assert A.lie_basis(Sym("e"), Sym("f")) == Element.basis(Sym("h"))
    assert check_lie_axioms(A, Window.of(A.finite_basis)).passed


@pytest.mark.parametrize("document, message", [
    ([], "JSON object"),
    ({"basis": ["a", "a"], "novikov": [[None, None], [None, None]]}, "duplicate"),
    ({"basis": ["a"]}, "missing"),
    ({"basis": ["a"], "novikov": [[None, None]]}, "1 entries"),
    ({"basis": ["a"], "novikov": [[{"b": "1"}]]}, "unknown basis element"),
    ({"basis": ["a"], "novikov": [[{"a": "x"}]]}, "malformed scalar"),
])
def test_malformed_tables(document, message):
    with pytest.raises(TableFormatError, match=message):
        table_from_dict(document)


def test_unreadable_files(tmp_path):
    with pytest.raises(TableFormatError):
        load_table(str(tmp_path / "missing.json"))
    broken = tmp_path / "broken.json"
    broken.write_text("{not json", encoding="utf-8")
    with pytest.raises(TableFormatError, match="not valid JSON"):
        load_table(str(broken))


def test_lie_may_be_omitted(tmp_path):
    path = tmp_path / "one.json"
    path.write_text(json.dumps({"basis": ["u"], "novikov": [[{"u": "1"}]]}), encoding="utf-8")
    A = load_table(str(path))
    assert not A.lie_basis(Sym("u"), Sym("u"))
    assert A.params == {"dim": "1"}
