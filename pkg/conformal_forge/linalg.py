"""Exact Gaussian elimination over Q(i).

Every routine is generic over the field element type: Scalars, Fractions and
ints all work, as long as zero is falsy and division is exact.
"""

from typing import Generic, Hashable, Iterable, Optional, Sequence, TypeVar

from conformal_forge.errors import DimensionMismatchError

K = TypeVar("K", bound=Hashable)


def _check_rectangular(rows: Sequence[Sequence], width: Optional[int] = None) -> int:
    if width is None:
        width = len(rows[0]) if rows else 0
    for row in rows:
        if len(row) != width:
            raise DimensionMismatchError(f"row of length {len(row)} in a system of width {width}")
    return width


def _rref(matrix: list[list]) -> list[int]:
    """Reduce matrix in place to reduced row echelon form.

    Returns:
        Pivot column of each nonzero row, in row order
    """
    pivots = []
    n_rows = len(matrix)
    n_cols = len(matrix[0]) if matrix else 0
    piv_r = 0
    for piv_c in range(n_cols):
        if piv_r == n_rows:
            break
        for i_row in range(piv_r, n_rows):
            if matrix[i_row][piv_c]:
                break
        else:
            continue
        if i_row != piv_r:
            matrix[piv_r], matrix[i_row] = matrix[i_row], matrix[piv_r]
        fp = matrix[piv_r][piv_c]
        matrix[piv_r] = [x / fp for x in matrix[piv_r]]
        for r in range(n_rows):
            if r == piv_r:
                continue
            fr = matrix[r][piv_c]
            if not fr:
                continue
            pivot_row = matrix[piv_r]
            matrix[r] = [x - fr * y for x, y in zip(matrix[r], pivot_row)]
        pivots.append(piv_c)
        piv_r += 1
    return pivots


def row_reduce(rows: Sequence[Sequence]) -> list[list]:
    """Reduced echelon basis of the row span.

    Args:
        rows: Vectors of equal length

    Returns:
        The nonzero rows of the reduced row echelon form
    """
    if not rows:
        return []
    _check_rectangular(rows)
    matrix = [list(row) for row in rows]
    pivots = _rref(matrix)
    return matrix[:len(pivots)]


def solve_linear(rows: Sequence[Sequence], target: Sequence) -> Optional[list]:
    """Find coefficients c with sum_r c[r] * rows[r] == target.

    Args:
        rows: Vectors of equal length
        target: Vector of the same length

    Returns:
        One solution (free coefficients set to zero), or None if inconsistent
    """
    width = len(target)
    _check_rectangular(rows, width)
    zero = target[0] * 0 if width else 0
    if not rows:
        return [] if all(not t for t in target) else None

    # Columns of the system are the given rows; the last column is the target.
    system = [[row[k] for row in rows] + [target[k]] for k in range(width)]
    if not system:
        return [zero] * len(rows)
    pivots = _rref(system)
    n_unknowns = len(rows)
    if n_unknowns in pivots:
        return None
    solution = [zero] * n_unknowns
    for r, piv_c in enumerate(pivots):
        solution[piv_c] = system[r][n_unknowns]
    return solution


def kernel(rows: Sequence[Sequence], one=1) -> list[list]:
    """Basis of the left kernel {c : sum_r c[r] * rows[r] == 0}.

    Args:
        rows: Vectors of equal length
        one: Multiplicative unit of the field

    Returns:
        Kernel basis vectors of length len(rows), in reduced form
    """
    if not rows:
        return []
    width = _check_rectangular(rows)
    n = len(rows)
    zero = one * 0
    augmented = [
        list(row) + [one if k == r else zero for k in range(n)]
        for r, row in enumerate(rows)
    ]
    pivots = _rref(augmented)
    basis = []
    for r, piv_c in enumerate(pivots):
        if piv_c >= width:
            basis.append(augmented[r][width:])
    # Rows past the last pivot are entirely zero and carry no information.
    return row_reduce(basis) if basis else []


class EchelonBasis(Generic[K]):
    """Incremental reduced basis of a span of sparse vectors.

    Vectors are mappings from orderable coordinate keys to field elements.
    The stored rows stay in reduced echelon form, so membership is a single
    reduction pass.
    """

    def __init__(self, vectors: Iterable[dict] = ()) -> None:
        self._rows: dict[K, dict[K, object]] = {}
        for vector in vectors:
            self.add(vector)

    def __len__(self) -> int:
        return len(self._rows)

    def reduce(self, vector: dict) -> dict:
        """Remainder of vector after eliminating every stored pivot."""
        remainder = {k: v for k, v in vector.items() if v}
        for pivot, row in self._rows.items():
            factor = remainder.get(pivot)
            if not factor:
                continue
            for key, value in row.items():
                updated = remainder.get(key, 0) - factor * value
                if updated:
                    remainder[key] = updated
                else:
                    remainder.pop(key, None)
        return remainder

    def contains(self, vector: dict) -> bool:
        return not self.reduce(vector)

    def add(self, vector: dict) -> Optional[dict]:
        """Add vector to the span.

        Returns:
            The new reduced basis row if the span grew, else None
        """
        remainder = self.reduce(vector)
        if not remainder:
            return None
        pivot = min(remainder)
        lead = remainder[pivot]
        row = {k: v / lead for k, v in remainder.items()}
        for other_pivot, other in self._rows.items():
            factor = other.get(pivot)
            if not factor:
                continue
            for key, value in row.items():
                updated = other.get(key, 0) - factor * value
                if updated:
                    other[key] = updated
                else:
                    other.pop(key, None)
        self._rows[pivot] = row
        return dict(row)

    def basis(self) -> list[dict]:
        """Reduced basis rows ordered by pivot."""
        return [dict(self._rows[p]) for p in sorted(self._rows)]

    def pivots(self) -> list:
        return sorted(self._rows)
