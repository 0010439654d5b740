"""
Structure detection for lower-triangular matrices.

``infer_lambda`` runs the generalized hockey-stick recurrence backwards to
find the associated sequence of a matrix, ``verify_lambda`` checks a given
one. ``fit_pascal_recurrence`` fits the two-term rule
``a[n, k] = alpha * a[n-1, k-1] + beta * a[n-1, k]``. The remaining helpers
check the behaviour of matrix powers and products against those rules.

Solves run over the rationals. A non-integral sequence is reported with
``integral=False`` rather than treated as a failure.
"""

import enum
import logging
from dataclasses import dataclass
from dataclasses import field
from fractions import Fraction

from saltext.vrmat.exceptions import VrmatInvocationError
from saltext.vrmat.utils.kernel import format_number
from saltext.vrmat.utils.kernel import to_int_if_integral
from saltext.vrmat.utils.ltmatrix import LTMatrix
from saltext.vrmat.utils.ltmatrix import first_column
from saltext.vrmat.utils.ltmatrix import lt_eq
from saltext.vrmat.utils.ltmatrix import lt_mul
from saltext.vrmat.utils.ltmatrix import lt_pow
from saltext.vrmat.utils.sequences import Seq
from saltext.vrmat.utils.sequences import geom_sum
from saltext.vrmat.utils.vrm import VrmSpec
from saltext.vrmat.utils.vrm import build_vrm
from saltext.vrmat.utils.vrm import pascal_func

log = logging.getLogger(__name__)


class Verdict(enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    UNDERDETERMINED = "underdetermined"


class Mode(enum.Enum):
    STRICT = "strict"
    GENERAL = "general"
    VERIFY = "verify"


@dataclass(frozen=True)
class Cell:
    """
    A cell whose value disagrees with the rule being checked.
    """

    n: int
    k: int
    expected: object
    actual: object

    def to_dict(self):
        return {
            "n": self.n,
            "k": self.k,
            "expected": format_number(self.expected),
            "actual": format_number(self.actual),
        }


def _normalize_numbers(values):
    return [to_int_if_integral(v) for v in values]


@dataclass(frozen=True)
class DetectionReport:
    verdict: Verdict
    mode: Mode
    lambda_values: list = field(default_factory=list)
    first_failure: Cell = None
    note: str = ""

    @property
    def passed(self):
        return self.verdict is Verdict.PASS

    @property
    def integral(self):
        return all(isinstance(v, int) for v in self.lambda_values)

    def to_dict(self):
        return {
            "verdict": self.verdict.value,
            "lambda": [format_number(v) for v in self.lambda_values],
            "integral": self.integral,
            "first_failure": self.first_failure.to_dict() if self.first_failure else None,
            "mode": self.mode.value,
            "note": self.note,
        }


@dataclass(frozen=True)
class FitReport:
    verdict: Verdict
    alpha: object = None
    beta: object = None
    first_failure: Cell = None

    @property
    def passed(self):
        return self.verdict is Verdict.PASS

    @property
    def integral(self):
        return isinstance(self.alpha, int) and isinstance(self.beta, int)

    def to_dict(self):
        return {
            "verdict": self.verdict.value,
            "alpha": None if self.alpha is None else format_number(self.alpha),
            "beta": None if self.beta is None else format_number(self.beta),
            "integral": self.integral,
            "first_failure": self.first_failure.to_dict() if self.first_failure else None,
        }


def recurrence_value(a, lam, i, k):
    """
    Right-hand side of the vertical recurrence at cell ``(i, k)``, ``k >= 1``.
    """
    return sum(lam[i - 1 - l] * a[l, k - 1] for l in range(k - 1, i))


def _first_recurrence_failure(a, lam, min_k=1, known=None):
    """
    Scan cells with column >= ``min_k`` row-major. ``known`` limits which
    lambda indices are determined; cells that need an unknown one (with a
    nonzero coefficient) are skipped.
    """
    for i in range(a.order):
        for k in range(min_k, i + 1):
            if known is not None and any(
                i - 1 - l >= known and a[l, k - 1] for l in range(k - 1, i)
            ):
                continue
            expected = sum(
                lam[i - 1 - l] * a[l, k - 1]
                for l in range(k - 1, i)
                if known is None or i - 1 - l < known
            )
            if expected != a[i, k]:
                return Cell(i, k, to_int_if_integral(expected), a[i, k])
    return None


def _infer_strict(a):
    col = first_column(a)
    if a[0, 0] != 1:
        return DetectionReport(
            Verdict.FAIL,
            Mode.STRICT,
            col,
            Cell(0, 0, 1, a[0, 0]),
            note="strict detection requires a[0, 0] = 1",
        )
    failure = _first_recurrence_failure(a, col)
    if failure:
        return DetectionReport(Verdict.FAIL, Mode.STRICT, col, failure)
    return DetectionReport(Verdict.PASS, Mode.STRICT, col)


def _infer_general(a):
    n = a.n
    col = first_column(a)
    if n == 0:
        return DetectionReport(
            Verdict.UNDERDETERMINED, Mode.GENERAL, note="order 1 carries no recurrence"
        )
    zeros = 0
    while zeros <= n and col[zeros] == 0:
        zeros += 1
    if zeros > n:
        # A zero column 0 forces every later column to zero as well
        for i in range(1, n + 1):
            for k in range(1, i + 1):
                if a[i, k] != 0:
                    return DetectionReport(Verdict.FAIL, Mode.GENERAL, [], Cell(i, k, 0, a[i, k]))
        return DetectionReport(
            Verdict.UNDERDETERMINED, Mode.GENERAL, note="column 0 is identically zero"
        )
    # Rows above the first nonzero of column 0 only constrain a[r, 1] = 0
    for r in range(1, min(zeros, n) + 1):
        if a[r, 1] != 0:
            return DetectionReport(Verdict.FAIL, Mode.GENERAL, [], Cell(r, 1, 0, a[r, 1]))
    pivot = col[zeros]
    lam = []
    for r in range(zeros + 1, n + 1):
        rest = sum(lam[j] * col[r - 1 - j] for j in range(len(lam)))
        lam.append(Fraction(a[r, 1] - rest, pivot))
        log.debug("Solved lambda_%s = %s from cell (%s, 1)", len(lam) - 1, lam[-1], r)
    lam = _normalize_numbers(lam)
    if not all(isinstance(v, int) for v in lam):
        log.warning("Detected associated sequence is not integral: %s", lam)
    known = len(lam) if zeros else None
    failure = _first_recurrence_failure(a, lam, min_k=2, known=known)
    if failure:
        return DetectionReport(Verdict.FAIL, Mode.GENERAL, lam, failure)
    if zeros:
        return DetectionReport(
            Verdict.UNDERDETERMINED,
            Mode.GENERAL,
            lam,
            note=(
                f"column 0 starts with {zeros} zero(s); lambda_{len(lam)}.. are unconstrained, "
                "use verify_lambda"
            ),
        )
    return DetectionReport(Verdict.PASS, Mode.GENERAL, lam)


def infer_lambda(a, mode=Mode.STRICT):
    """
    Infer the associated sequence of ``a``.

    strict
        The candidate is column 0, which must start with 1.

    general
        Solve the column-1 equations for lambda, then check columns >= 2.
    """
    mode = Mode(mode)
    if mode is Mode.STRICT:
        report = _infer_strict(a)
    elif mode is Mode.GENERAL:
        report = _infer_general(a)
    else:
        raise VrmatInvocationError("infer_lambda supports the strict and general modes")
    log.info("Detection (%s) on order %s: %s", mode.value, a.order, report.verdict.value)
    return report


def verify_lambda(a, weights, first_col_is_lambda=False):
    """
    Check the recurrence at every cell with the supplied weights. With
    ``first_col_is_lambda`` column 0 must also equal the weights.
    """
    count = a.order if first_col_is_lambda else a.n
    lam = [weights.term(i) for i in range(count)]
    if first_col_is_lambda:
        for i, value in enumerate(first_column(a)):
            if value != lam[i]:
                return DetectionReport(Verdict.FAIL, Mode.VERIFY, lam, Cell(i, 0, lam[i], value))
    failure = _first_recurrence_failure(a, lam)
    if failure:
        return DetectionReport(Verdict.FAIL, Mode.VERIFY, lam, failure)
    return DetectionReport(Verdict.PASS, Mode.VERIFY, lam)


def check_pascal_recurrence(a, alpha, beta):
    """
    First cell violating ``a[n, k] = alpha * a[n-1, k-1] + beta(n) * a[n-1, k]``,
    or None. ``beta`` may be a callable of the row index ``n``.
    """
    for i in range(1, a.order):
        b = beta(i) if callable(beta) else beta
        for k in range(1, i + 1):
            expected = alpha * a[i - 1, k - 1] + b * a[i - 1, k]
            if expected != a[i, k]:
                return Cell(i, k, to_int_if_integral(expected), a[i, k])
    return None


def fit_pascal_recurrence(a):
    """
    Fit ``a[n, k] = alpha * a[n-1, k-1] + beta * a[n-1, k]``: alpha from cell
    (1, 1), beta from cell (2, 1), then every interior cell is checked.
    """
    if a.order < 3:
        raise VrmatInvocationError(f"fitting needs order >= 3, got {a.order}")
    if a[0, 0] == 0 or a[1, 1] == 0:
        return FitReport(Verdict.UNDERDETERMINED)
    alpha = to_int_if_integral(Fraction(a[1, 1], a[0, 0]))
    beta = to_int_if_integral(Fraction(a[2, 1] - alpha * a[1, 0], a[1, 1]))
    failure = check_pascal_recurrence(a, alpha, beta)
    if failure:
        return FitReport(Verdict.FAIL, alpha, beta, failure)
    return FitReport(Verdict.PASS, alpha, beta)


def build_two_term(n, alpha, beta, column=None):
    """
    Matrix of order ``n + 1`` with column 0 all ones (or ``column``) and
    ``a[i, k] = alpha * a[i-1, k-1] + beta(i) * a[i-1, k]``; ``beta`` may be a
    constant or a callable of the row index.
    """
    col = list(column) if column is not None else [1] * (n + 1)
    rows = [(col[0],)]
    for i in range(1, n + 1):
        b = beta(i) if callable(beta) else beta
        prev = rows[-1]
        row = [col[i]]
        for k in range(1, i + 1):
            above = prev[k] if k < i else 0
            row.append(alpha * prev[k - 1] + b * above)
        rows.append(tuple(row))
    return LTMatrix(tuple(rows))


def lemma_product_check(alpha, beta, alpha2, beta2, n):
    """
    Check the product law for two-term matrices: with A from (alpha, beta) and
    B from (alpha2, beta2), ``C = AB`` follows
    ``(alpha * alpha2, beta + alpha * beta2)`` and its column 0 holds the row
    sums of A.
    """
    if n < 2:
        raise VrmatInvocationError(f"the product check needs n >= 2, got {n}")
    a = build_two_term(n, alpha, beta)
    b = build_two_term(n, alpha2, beta2)
    c = lt_mul(a, b)
    expected = (alpha * alpha2, beta + alpha * beta2)
    fit = fit_pascal_recurrence(c)
    if fit.verdict is Verdict.PASS:
        coefficients_ok = (fit.alpha, fit.beta) == expected
    elif fit.verdict is Verdict.UNDERDETERMINED:
        coefficients_ok = check_pascal_recurrence(c, *expected) is None
    else:
        coefficients_ok = False
    sums_ok = all(c[i, 0] == sum(a.rows[i]) for i in range(c.order))
    log.debug(
        "Product check %s: fit=%s coefficients_ok=%s sums_ok=%s",
        (alpha, beta, alpha2, beta2),
        fit.verdict.value,
        coefficients_ok,
        sums_ok,
    )
    return coefficients_ok and sums_ok


def power_sequence(spec, n, m):
    """
    First column of ``V_n**m`` and the general-mode detection report on it.
    """
    if m < 1:
        raise VrmatInvocationError(f"power must be positive, got {m}")
    if isinstance(spec, Seq):
        spec = VrmSpec.strict(spec)
    power = lt_pow(build_vrm(spec, n), m)
    return first_column(power), infer_lambda(power, Mode.GENERAL)


@dataclass(frozen=True)
class ConstantPowerReport:
    """
    Outcome of the constant-sequence power check.

    ``column_ok``
        column 0 equals ``lam**m * mu**j``
    ``fit_ok``
        the two-term rule holds with ``(lam**m, mu)``
    ``literal_ok``
        the row-dependent coefficient ``mu**n`` also fits (recorded only)
    """

    lam: int
    n: int
    m: int
    mu: int
    first_column: list
    column_ok: bool
    fit: FitReport
    fit_ok: bool
    literal_ok: bool
    literal_failure: Cell = None

    @property
    def passed(self):
        return self.column_ok and self.fit_ok

    def to_dict(self):
        return {
            "lambda": str(self.lam),
            "n": self.n,
            "m": self.m,
            "mu": str(self.mu),
            "first_column": [str(v) for v in self.first_column],
            "column_ok": self.column_ok,
            "fit": self.fit.to_dict() if self.fit else None,
            "fit_ok": self.fit_ok,
            "literal_ok": self.literal_ok,
            "literal_failure": self.literal_failure.to_dict() if self.literal_failure else None,
        }


def case1_check(lam, n, m):
    """
    Powers of the matrix with constant weights ``lam`` and column 0 all
    ``lam``.
    """
    if m < 1:
        raise VrmatInvocationError(f"power must be positive, got {m}")
    weights = Seq.const(lam)
    power = lt_pow(build_vrm(VrmSpec.general(weights, [lam] * (n + 1)), n), m)
    mu = geom_sum(lam, m)
    alpha = lam**m
    column = first_column(power)
    column_ok = column == [alpha * mu**j for j in range(n + 1)]
    recurrence_ok = check_pascal_recurrence(power, alpha, mu) is None
    fit = None
    fit_ok = recurrence_ok
    if power.order >= 3:
        fit = fit_pascal_recurrence(power)
        if fit.verdict is not Verdict.UNDERDETERMINED:
            fit_ok = recurrence_ok and (fit.alpha, fit.beta) == (alpha, mu)
    literal_failure = check_pascal_recurrence(power, alpha, lambda row: mu**row)
    if literal_failure:
        log.info(
            "Row-dependent coefficient mu**n does not fit for lambda=%s m=%s: %s",
            lam,
            m,
            literal_failure,
        )
    return ConstantPowerReport(
        lam=lam,
        n=n,
        m=m,
        mu=mu,
        first_column=column,
        column_ok=column_ok,
        fit=fit,
        fit_ok=fit_ok,
        literal_ok=literal_failure is None,
        literal_failure=literal_failure,
    )


def case2_check(lam, n, m):
    """
    ``V_n[geom:lam]**m == P_n[m * lam]``, and strict detection on the power
    yields ``(m * lam)**j``.
    """
    if m < 1:
        raise VrmatInvocationError(f"power must be positive, got {m}")
    power = lt_pow(build_vrm(VrmSpec.strict(Seq.geom(lam)), n), m)
    if not lt_eq(power, pascal_func(n, m * lam)):
        return False
    report = infer_lambda(power, Mode.STRICT)
    return report.passed and report.lambda_values == [(m * lam) ** j for j in range(n + 1)]
