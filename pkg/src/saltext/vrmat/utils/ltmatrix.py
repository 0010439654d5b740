"""
Exact lower-triangular integer matrices.

Storage is ragged: row ``i`` holds the entries ``(i, 0) .. (i, i)`` and the
zeros above the diagonal are never stored.

Serialized form:

.. code-block:: json

    {"order": 3, "rows": [["1"], ["2", "1"], ["4", "4", "1"]]}

Integers are written as decimal strings because entries leave the 64-bit
range long before the orders this library is used at.
"""

import logging
import re
from dataclasses import dataclass

import salt.utils.files
import salt.utils.json
import salt.utils.stringutils

from saltext.vrmat.exceptions import NotInvertibleError
from saltext.vrmat.exceptions import SchemaError
from saltext.vrmat.exceptions import ShapeError
from saltext.vrmat.exceptions import VrmatDomainError
from saltext.vrmat.exceptions import VrmatInvocationError

log = logging.getLogger(__name__)

_DECIMAL = re.compile(r"-?[0-9]+")


@dataclass(frozen=True)
class LTMatrix:
    """
    Lower-triangular matrix of a given order (``order == n + 1``).
    """

    rows: tuple

    def __post_init__(self):
        if not self.rows:
            raise ShapeError("a matrix needs at least one row")
        for i, row in enumerate(self.rows):
            if len(row) != i + 1:
                raise ShapeError(f"row {i} must have {i + 1} entries, found {len(row)}")

    @property
    def order(self):
        return len(self.rows)

    @property
    def n(self):
        """
        The index ``n`` of a matrix of order ``n + 1``.
        """
        return len(self.rows) - 1

    def __getitem__(self, cell):
        i, j = cell
        if j > i:
            return 0
        return self.rows[i][j]

    def cells(self):
        """
        Yield ``(i, j)`` for every stored cell, row-major.
        """
        for i in range(self.order):
            for j in range(i + 1):
                yield i, j

    def diagonal(self):
        return [self.rows[i][i] for i in range(self.order)]

    def __mul__(self, other):
        return lt_mul(self, other)

    def __str__(self):
        return lt_pretty(self)


def lt_new(rows):
    """
    Build a matrix from ragged rows of integers.
    """
    return LTMatrix(tuple(tuple(int(v) for v in row) for row in rows))


def lt_from_function(order, entry):
    """
    Build a matrix whose ``(i, j)`` entry is ``entry(i, j)`` for ``i >= j``.
    """
    return LTMatrix(tuple(tuple(entry(i, j) for j in range(i + 1)) for i in range(order)))


def lt_identity(order):
    return lt_from_function(order, lambda i, j: int(i == j))


def first_column(a):
    return [row[0] for row in a.rows]


def lt_eq(a, b):
    return a.rows == b.rows


def _same_order(a, b):
    if a.order != b.order:
        raise ShapeError(f"order mismatch: {a.order} != {b.order}")


def lt_add(a, b):
    _same_order(a, b)
    return LTMatrix(
        tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a.rows, b.rows))
    )


def lt_sub(a, b):
    return lt_add(a, lt_scale(b, -1))


def lt_scale(a, c):
    return LTMatrix(tuple(tuple(c * x for x in row) for row in a.rows))


def lt_mod(a, p):
    """
    Entry-wise canonical residues modulo ``p``.
    """
    return LTMatrix(tuple(tuple(x % p for x in row) for row in a.rows))


def lt_mul(a, b):
    """
    Exact product; ``(AB)[i, j] = sum(A[i, l] * B[l, j] for j <= l <= i)``.
    """
    _same_order(a, b)
    rows = []
    for i, ra in enumerate(a.rows):
        rows.append(
            tuple(sum(ra[l] * b.rows[l][j] for l in range(j, i + 1)) for j in range(i + 1))
        )
    return LTMatrix(tuple(rows))


def lt_pow(a, m):
    """
    ``a**m`` by repeated squaring; ``a**0`` is the identity.
    """
    if m < 0:
        raise ShapeError(f"negative power {m} requested, use lt_inverse")
    result = lt_identity(a.order)
    base = a
    while m:
        if m & 1:
            result = lt_mul(result, base)
        m >>= 1
        if m:
            base = lt_mul(base, base)
    return result


def direct_sum_1(a):
    """
    ``[1] (+) a``: the order grows by one and ``a`` moves to indices >= 1.
    """
    rows = [(1,)]
    rows.extend((0,) + row for row in a.rows)
    return LTMatrix(tuple(rows))


def direct_sum_identity(k, a):
    """
    ``I_k (+) a``.
    """
    result = a
    for _ in range(k):
        result = direct_sum_1(result)
    return result


def lt_inverse(a):
    """
    Exact inverse by forward substitution. Every diagonal entry must be a unit
    of the integers, which is exactly when the inverse is integral.
    """
    diag = a.diagonal()
    for i, d in enumerate(diag):
        if d not in (1, -1):
            raise NotInvertibleError(f"no integer inverse: diagonal entry ({i},{i}) is {d}")
    order = a.order
    # Column j of the inverse solves A x = e_j; d**-1 == d for a unit
    cols = []
    for j in range(order):
        x = [0] * order
        x[j] = diag[j]
        for i in range(j + 1, order):
            acc = sum(a.rows[i][l] * x[l] for l in range(j, i))
            x[i] = -diag[i] * acc
        cols.append(x)
    return lt_from_function(order, lambda i, j: cols[j][i])


def lt_to_data(a):
    return {"order": a.order, "rows": [[str(v) for v in row] for row in a.rows]}


def lt_from_data(data):
    """
    Validate and load the deserialized JSON form.
    """
    if not isinstance(data, dict):
        raise SchemaError("expected an object", path="$")
    if "order" not in data:
        raise SchemaError("missing key 'order'", path="$")
    if "rows" not in data:
        raise SchemaError("missing key 'rows'", path="$")
    order = data["order"]
    if not isinstance(order, int) or isinstance(order, bool) or order < 1:
        raise SchemaError("order must be a positive integer", path="$.order")
    rows = data["rows"]
    if not isinstance(rows, list):
        raise SchemaError("expected an array", path="$.rows")
    if len(rows) != order:
        raise SchemaError(f"expected {order} rows, found {len(rows)}", path="$.rows")
    parsed = []
    for i, row in enumerate(rows):
        path = f"$.rows[{i}]"
        if not isinstance(row, list):
            raise SchemaError("expected an array", path=path)
        if len(row) != i + 1:
            raise SchemaError(f"expected {i + 1} entries, found {len(row)}", path=path)
        values = []
        for j, cell in enumerate(row):
            if not isinstance(cell, str):
                raise SchemaError("entries must be decimal strings", path=f"{path}[{j}]")
            if not _DECIMAL.fullmatch(cell):
                raise SchemaError(f"'{cell}' is not a decimal integer", path=f"{path}[{j}]")
            values.append(int(cell))
        parsed.append(tuple(values))
    return LTMatrix(tuple(parsed))


def lt_to_json(a):
    return salt.utils.json.dumps(lt_to_data(a))


def lt_from_json(text):
    try:
        data = salt.utils.json.loads(text)
    except ValueError as exc:
        raise SchemaError(f"not valid JSON: {exc}", path="$") from exc
    return lt_from_data(data)


def lt_to_csv(a):
    """
    One matrix row per line, comma separated, trailing newline.
    """
    return "".join(",".join(str(v) for v in row) + "\n" for row in a.rows)


def lt_pretty(a):
    """
    Right-aligned table with the upper triangle blanked out.
    """
    cells = [[str(v) for v in row] for row in a.rows]
    width = max(len(c) for row in cells for c in row)
    return "\n".join(" ".join(c.rjust(width) for c in row) for row in cells)


FORMATS = ("pretty", "json", "csv")


def lt_render(a, fmt="json"):
    if fmt == "json":
        return lt_to_json(a)
    if fmt == "csv":
        return lt_to_csv(a)
    if fmt == "pretty":
        return lt_pretty(a)
    raise VrmatInvocationError(f"unknown format '{fmt}', expected one of {FORMATS}")


def lt_read(path):
    """
    Load a JSON matrix file.
    """
    log.debug("Reading matrix from %s", path)
    try:
        with salt.utils.files.fopen(path, "r") as fp_:
            text = salt.utils.stringutils.to_unicode(fp_.read())
    except UnicodeDecodeError as exc:
        raise SchemaError(f"{path} is not UTF-8 text: {exc}", path="$") from exc
    except OSError as exc:
        raise VrmatDomainError(f"cannot read matrix file {path}: {exc}") from exc
    return lt_from_json(text)


def lt_write(a, path, fmt="json"):
    log.debug("Writing order %s matrix to %s as %s", a.order, path, fmt)
    text = lt_render(a, fmt)
    if not text.endswith("\n"):
        text += "\n"
    try:
        with salt.utils.files.fopen(path, "w") as fp_:
            fp_.write(salt.utils.stringutils.to_str(text))
    except OSError as exc:
        raise VrmatDomainError(f"cannot write matrix file {path}: {exc}") from exc
