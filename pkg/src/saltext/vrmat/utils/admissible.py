"""
Admissible matrices.

A unit lower-triangular matrix is admissible when the inner product of any
two rows lands in column 0: ``r_m . r_n == a[m + n, 0]``. Such a matrix is
characterized by the sequence ``s`` of its subdiagonal increments and can be
built from it with the three-term rule

.. code-block:: text

    a[n, k] = a[n-1, k-1] + s[k] * a[n-1, k] + a[n-1, k+1]

Neighbours outside the triangle count as zero and row 0 is ``(1,)``.
"""

import logging
from dataclasses import dataclass

from saltext.vrmat.exceptions import VrmatInvocationError
from saltext.vrmat.utils.ltmatrix import LTMatrix

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class AdmissibleReport:
    """
    ``first_failure`` is None on a pass. A diagonal failure carries
    ``kind="diagonal"`` with ``m == n`` the row; an inner-product failure
    carries the row pair ``(m, n)`` and both sides of the equation.
    """

    passed: bool
    kind: str = None
    m: int = None
    n: int = None
    expected: int = None
    actual: int = None

    def to_dict(self):
        failure = None
        if not self.passed:
            failure = {
                "kind": self.kind,
                "m": self.m,
                "n": self.n,
                "expected": str(self.expected),
                "actual": str(self.actual),
            }
        return {"verdict": "pass" if self.passed else "fail", "first_failure": failure}


def build_admissible(s, n):
    """
    Build the admissible matrix of order ``n + 1`` characterized by ``s``.
    Only ``s[0] .. s[n-1]`` are read.
    """
    if n < 0:
        raise VrmatInvocationError(f"matrix index n must be nonnegative, got {n}")
    rows = [(1,)]
    for i in range(1, n + 1):
        prev = rows[-1]

        def above(k, prev=prev):
            return prev[k] if 0 <= k < len(prev) else 0

        row = []
        for k in range(i + 1):
            middle = s.term(k) * above(k) if k < i else 0
            row.append(above(k - 1) + middle + above(k + 1))
        rows.append(tuple(row))
    log.debug("Built admissible matrix of order %s for %s", n + 1, s)
    return LTMatrix(tuple(rows))


def _inner(a, m, n):
    # Rows are zero-padded past their diagonal
    return sum(a[m, j] * a[n, j] for j in range(min(m, n) + 1))


def check_admissible(a):
    """
    Check the unit diagonal, then ``r_m . r_n == a[m + n, 0]`` for every
    pair with ``m <= n`` and ``m + n < order``, in order of ``m + n`` then
    ``m``.
    """
    for i, d in enumerate(a.diagonal()):
        if d != 1:
            return AdmissibleReport(False, "diagonal", i, i, 1, d)
    for total in range(a.order):
        for m in range(total // 2 + 1):
            n = total - m
            product = _inner(a, m, n)
            if product != a[total, 0]:
                log.info(
                    "Admissibility fails for rows (%s, %s): %s != %s", m, n, product, a[total, 0]
                )
                return AdmissibleReport(False, "inner_product", m, n, a[total, 0], product)
    return AdmissibleReport(True)


def sequence_from_admissible(a):
    """
    Recover ``s[0] .. s[order-2]``: ``s[0] = a[1, 0]`` and
    ``s[k] = a[k+1, k] - a[k, k-1]``.
    """
    if a.order < 2:
        raise VrmatInvocationError(f"extraction needs order >= 2, got {a.order}")
    seq = [a[1, 0]]
    seq.extend(a[k + 1, k] - a[k, k - 1] for k in range(1, a.order - 1))
    return seq


def subdiagonal_check(s, n):
    """
    The subdiagonal of the built matrix holds the partial sums of ``s``.
    """
    a = build_admissible(s, n)
    total = 0
    for k in range(n):
        total += s.term(k)
        if a[k + 1, k] != total:
            return False
    return True
