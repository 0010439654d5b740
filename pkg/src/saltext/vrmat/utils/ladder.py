"""
Ladder-network transfer polynomials and their coefficient triangles.

After ``k`` cells of a ladder network the transfer ratio is a degree ``k``
polynomial in ``x``, the product of the longitudinal impedance and the
transversal admittance. ``x`` is a formal indeterminate here:

.. code-block:: text

    T_0 = 1,  T_1 = 1 + x,  T_(k+1) = (2 + x) * T_k - T_(k-1)

The coefficients of ``T_0 .. T_n`` stacked as rows make the modified
numerical triangle (MNT).
"""

import logging
from dataclasses import dataclass
from dataclasses import field

from saltext.vrmat.exceptions import VrmatInvocationError
from saltext.vrmat.utils.analysis import Mode
from saltext.vrmat.utils.analysis import infer_lambda
from saltext.vrmat.utils.analysis import verify_lambda
from saltext.vrmat.utils.kernel import ONE
from saltext.vrmat.utils.kernel import Poly
from saltext.vrmat.utils.kernel import binom
from saltext.vrmat.utils.kernel import poly_add
from saltext.vrmat.utils.kernel import poly_eval
from saltext.vrmat.utils.kernel import poly_mul
from saltext.vrmat.utils.kernel import poly_sub
from saltext.vrmat.utils.ltmatrix import LTMatrix
from saltext.vrmat.utils.ltmatrix import direct_sum_identity
from saltext.vrmat.utils.ltmatrix import lt_from_function
from saltext.vrmat.utils.ltmatrix import lt_identity
from saltext.vrmat.utils.ltmatrix import lt_new
from saltext.vrmat.utils.sequences import Seq
from saltext.vrmat.utils.vrm import chain_product
from saltext.vrmat.utils.vrm import pascal

log = logging.getLogger(__name__)

VARIANTS = ("2k", "2k+1")

_TWO_PLUS_X = Poly((2, 1))
_ONE_PLUS_X = Poly((1, 1))


@dataclass(frozen=True)
class TransferSeq:
    polys: tuple

    def __getitem__(self, k):
        return self.polys[k]

    def __len__(self):
        return len(self.polys)

    def to_json(self):
        return [p.to_json() for p in self.polys]


def _check_n(n, minimum=0):
    if n < minimum:
        raise VrmatInvocationError(f"n must be >= {minimum}, got {n}")


def transfer_polys(n):
    _check_n(n)
    polys = [ONE]
    if n >= 1:
        polys.append(_ONE_PLUS_X)
    for _ in range(2, n + 1):
        polys.append(poly_sub(poly_mul(_TWO_PLUS_X, polys[-1]), polys[-2]))
    return TransferSeq(tuple(polys))


def transfer_recurrence_check(n):
    """
    Substitute the polynomials back into the three-term recurrence and check
    ``deg T_k == k`` and ``T_k(0) == 1``.
    """
    seq = transfer_polys(n)
    for k, poly in enumerate(seq.polys):
        if poly.degree != k or poly_eval(poly, 0) != 1:
            return False
    if n >= 1 and seq[1] != poly_mul(_ONE_PLUS_X, seq[0]):
        return False
    for k in range(1, n):
        residual = poly_add(poly_sub(seq[k + 1], poly_mul(_TWO_PLUS_X, seq[k])), seq[k - 1])
        if not residual.is_zero():
            return False
    return True


def mnt(n):
    """
    Row ``i`` holds the coefficients of ``T_i``, ascending.
    """
    seq = transfer_polys(n)
    rows = (tuple(poly.coeff(j) for j in range(i + 1)) for i, poly in enumerate(seq.polys))
    return LTMatrix(tuple(rows))


def mnt_formula(n, variant):
    """
    Closed-form candidates: ``C(i+j, 2j)`` for ``"2k"`` and ``C(i+j, 2j+1)``
    for ``"2k+1"``.
    """
    _check_n(n)
    if variant == "2k":
        return lt_from_function(n + 1, lambda i, j: binom(i + j, 2 * j))
    if variant == "2k+1":
        return lt_from_function(n + 1, lambda i, j: binom(i + j, 2 * j + 1))
    raise VrmatInvocationError(f"unknown MNT variant '{variant}', expected one of {VARIANTS}")


def _scan_order(order):
    # Recurrence cells first, row-major, then the boundary column
    for i in range(order):
        for k in range(1, i + 1):
            yield i, k
    for i in range(order):
        yield i, 0


@dataclass(frozen=True)
class MntComparison:
    n: int
    mismatches: dict = field(default_factory=dict)

    @property
    def matches(self):
        return [variant for variant in VARIANTS if not self.mismatches[variant]]

    def first_mismatch(self, variant):
        cells = self.mismatches[variant]
        return cells[0] if cells else None

    def to_dict(self):
        variants = {}
        for variant in VARIANTS:
            cells = self.mismatches[variant]
            variants[variant] = {
                "match": not cells,
                "first_mismatch": cells[0] if cells else None,
                "mismatch_count": len(cells),
            }
        return {"n": self.n, "matches": self.matches, "variants": variants}


def compare_mnt(n):
    """
    Compare ``mnt(n)`` against both closed forms cell by cell.
    """
    truth = mnt(n)
    mismatches = {}
    for variant in VARIANTS:
        formula = mnt_formula(n, variant)
        mismatches[variant] = [
            {"n": i, "k": k, "formula": str(formula[i, k]), "mnt": str(truth[i, k])}
            for i, k in _scan_order(truth.order)
            if formula[i, k] != truth[i, k]
        ]
        if mismatches[variant]:
            log.info(
                "MNT closed form %s mismatches at %s cell(s), first at (%s, %s)",
                variant,
                len(mismatches[variant]),
                mismatches[variant][0]["n"],
                mismatches[variant][0]["k"],
            )
    return MntComparison(n, mismatches)


def displayed_mnt_factors():
    """
    The factorization printed next to the order 4 MNT:
    ``P_3 * (I_2 (+) [[1], [2, 1]]) * I_4``.
    """
    return (pascal(3), direct_sum_identity(2, lt_new([[1], [2, 1]])), lt_identity(4))


@dataclass(frozen=True)
class DisplayCheck:
    product: LTMatrix
    target: LTMatrix
    mismatches: tuple

    @property
    def reproduces(self):
        return not self.mismatches

    def to_dict(self):
        return {
            "product": [[str(v) for v in row] for row in self.product.rows],
            "mnt": [[str(v) for v in row] for row in self.target.rows],
            "reproduces": self.reproduces,
            "mismatches": list(self.mismatches),
        }


def mnt_display_check():
    """
    Multiply out the printed factorization and compare it with ``mnt(3)``.
    The product differs in column 1, so ``reproduces`` is False.
    """
    target = mnt(3)
    product = chain_product(displayed_mnt_factors(), target.order)
    mismatches = tuple(
        {"n": i, "k": k, "product": str(product[i, k]), "mnt": str(target[i, k])}
        for i in range(target.order)
        for k in range(i + 1)
        if product[i, k] != target[i, k]
    )
    if mismatches:
        log.info("Printed MNT factorization differs from mnt(3) at %s cell(s)", len(mismatches))
    return DisplayCheck(product, target, mismatches)


def mnt2(n):
    """
    Second modified triangle, entry ``C(i + 2j, 3j + 1)``. The (0, 0) entry
    is ``C(0, 1) == 0``.
    """
    _check_n(n)
    return lt_from_function(n + 1, lambda i, j: binom(i + 2 * j, 3 * j + 1))


@dataclass(frozen=True)
class IdentityReport:
    name: str
    bound: int
    passed: bool
    checked: int
    first_failure: dict = None

    def to_dict(self):
        return {
            "identity": self.name,
            "max": self.bound,
            "verdict": "pass" if self.passed else "fail",
            "checked": self.checked,
            "first_failure": self.first_failure,
        }


def _identity_sweep(name, bound, lhs, rhs):
    _check_n(bound, minimum=1)
    checked = 0
    for n in range(1, bound + 1):
        for k in range(1, n + 1):
            left, right = lhs(n, k), rhs(n, k)
            checked += 1
            if left != right:
                failure = {"n": n, "k": k, "lhs": str(left), "rhs": str(right)}
                log.info("Identity %s fails at (%s, %s)", name, n, k)
                return IdentityReport(name, bound, False, checked, failure)
    return IdentityReport(name, bound, True, checked)


def identity13_check(bound):
    """
    ``C(n+k, 2k+1) == sum(C(n-l, 1) * C(l+k-1, 2k-1) for l in k-1 .. n-1)``.
    """
    return _identity_sweep(
        "identity13",
        bound,
        lambda n, k: binom(n + k, 2 * k + 1),
        lambda n, k: sum(
            binom(n - l, 1) * binom(l + k - 1, 2 * k - 1) for l in range(k - 1, n)
        ),
    )


def identity15_check(bound):
    """
    ``C(n+2k, 3k+1) == sum(C(n-l+1, 2) * C(l+2k-2, 3k-2) for l in k-1 .. n-1)``.
    """
    return _identity_sweep(
        "identity15",
        bound,
        lambda n, k: binom(n + 2 * k, 3 * k + 1),
        lambda n, k: sum(
            binom(n - l + 1, 2) * binom(l + 2 * k - 2, 3 * k - 2) for l in range(k - 1, n)
        ),
    )


def mnt_lambda_check(n):
    _check_n(n, minimum=2)
    return infer_lambda(mnt(n), Mode.GENERAL)


def mnt2_lambda_check(n):
    # Inference is underdetermined since (MNT2)[0, 0] == 0
    _check_n(n, minimum=2)
    return verify_lambda(mnt2(n), Seq.binomial(2), first_col_is_lambda=False)


def row_sum_check(n):
    """
    Row sums of ``mnt(n)`` equal ``T_k(1)``, and those values follow
    ``t_(k+1) = 3 * t_k - t_(k-1)``.
    """
    triangle = mnt(n)
    seq = transfer_polys(n)
    sums = [sum(row) for row in triangle.rows]
    if sums != [poly_eval(poly, 1) for poly in seq.polys]:
        return False
    return all(sums[k + 1] == 3 * sums[k] - sums[k - 1] for k in range(1, n))
