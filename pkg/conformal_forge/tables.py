"""Finite-table GD bialgebras loaded from JSON."""

import json
from pathlib import Path
from typing import Any, Optional

from conformal_forge.elements import BasisIndex, Element, Sym
from conformal_forge.errors import ScalarParseError, TableFormatError
from conformal_forge.gd import GDStructure
from conformal_forge.logger import get_logger
from conformal_forge.scalars import parse_scalar

logger = get_logger("TABLES")


def _parse_matrix(data: Any, key: str, names: list[str]) -> dict[tuple[Sym, Sym], Element]:
    n = len(names)
    if not isinstance(data, list) or len(data) != n:
        raise TableFormatError(f"'{key}' must be a {n}x{n} list of lists")
    known = set(names)
    table = {}
    for r, row in enumerate(data):
        if not isinstance(row, list) or len(row) != n:
            raise TableFormatError(f"'{key}' row {r} must have {n} entries")
        for col, entry in enumerate(row):
            if entry is None:
                entry = {}
            if not isinstance(entry, dict):
                raise TableFormatError(f"'{key}'[{r}][{col}] must be a map name -> scalar")
            terms = []
            for name, text in entry.items():
                if name not in known:
                    raise TableFormatError(f"'{key}'[{r}][{col}] names unknown basis element {name!r}")
                try:
                    terms.append((Sym(name), parse_scalar(str(text))))
                except ScalarParseError as e:
                    raise TableFormatError(f"'{key}'[{r}][{col}]: {e}") from e
            value = Element.from_terms(terms)
            if value:
                table[(Sym(names[r]), Sym(names[col]))] = value
    return table


def table_from_dict(data: dict[str, Any], name: str = "Table") -> GDStructure:
    """Build a GDStructure with Sym indices from the table document.

    The document is {"basis": [names], "novikov": [[entry]], "lie": [[entry]]}
    where entry [r][c] is the product of basis r with basis c, written as a
    map from basis names to Scalar text. "lie" may be omitted (zero bracket).

    Raises:
        TableFormatError: If the document does not have this shape
    """
    if not isinstance(data, dict):
        raise TableFormatError("table document must be a JSON object")
    names = data.get("basis")
    if not isinstance(names, list) or not all(isinstance(x, str) and x for x in names):
        raise TableFormatError("'basis' must be a list of non-empty names")
    if len(set(names)) != len(names):
        raise TableFormatError("'basis' contains duplicate names")
    if "novikov" not in data:
        raise TableFormatError("'novikov' table is missing")

    novikov = _parse_matrix(data["novikov"], "novikov", names)
    lie = _parse_matrix(data["lie"], "lie", names) if data.get("lie") is not None else {}
    valid = frozenset(Sym(x) for x in names)

    def novikov_rule(x: BasisIndex, y: BasisIndex) -> Element:
        return novikov.get((x, y), Element())

    def lie_rule(x: BasisIndex, y: BasisIndex) -> Element:
        return lie.get((x, y), Element())

    logger.debug(f"[TABLES] Loaded table {name} with {len(names)} basis elements")
    return GDStructure(
        name=name,
        index_kind="sym",
        novikov_rule=novikov_rule,
        lie_rule=lie_rule,
        is_valid=lambda idx: idx in valid,
        description=str(data.get("description", "finite table")),
        params={"dim": str(len(names))},
        finite_basis=tuple(Sym(x) for x in names),
    )


def load_table(path: str, name: Optional[str] = None) -> GDStructure:
    """Load a finite-table GD bialgebra from a JSON file.

    Args:
        path: Path to the table JSON file
        name: Report name; defaults to the file stem

    Returns:
        The ingested GDStructure
    """
    filepath = Path(path)
    try:
        with open(filepath, "r", encoding="utf-8") as f:
            data = json.load(f)
    except OSError as e:
        raise TableFormatError(f"cannot read table {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise TableFormatError(f"table {path} is not valid JSON: {e}") from e
    return table_from_dict(data, name=name or filepath.stem)
