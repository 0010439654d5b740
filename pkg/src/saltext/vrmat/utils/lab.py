"""
Exploration tools: conjecture explorers and linear algebra over F_p.

The explorers never assert a conjectured closed form. They build the
candidate objects, run detection and report which candidate formulas fit.
"""

import logging
import math
from dataclasses import dataclass
from dataclasses import field

from saltext.vrmat.exceptions import VrmatDomainError
from saltext.vrmat.exceptions import VrmatInvocationError
from saltext.vrmat.utils.admissible import build_admissible
from saltext.vrmat.utils.analysis import Mode
from saltext.vrmat.utils.analysis import build_two_term
from saltext.vrmat.utils.analysis import infer_lambda
from saltext.vrmat.utils.kernel import ONE
from saltext.vrmat.utils.kernel import Poly
from saltext.vrmat.utils.kernel import binom
from saltext.vrmat.utils.kernel import modp_inverse
from saltext.vrmat.utils.kernel import poly_divmod_mod_p
from saltext.vrmat.utils.kernel import poly_mod_p
from saltext.vrmat.utils.kernel import poly_mul
from saltext.vrmat.utils.kernel import require_prime
from saltext.vrmat.utils.ltmatrix import lt_add
from saltext.vrmat.utils.ltmatrix import lt_eq
from saltext.vrmat.utils.ltmatrix import lt_from_function
from saltext.vrmat.utils.ltmatrix import lt_identity
from saltext.vrmat.utils.ltmatrix import lt_mod
from saltext.vrmat.utils.ltmatrix import lt_mul
from saltext.vrmat.utils.ltmatrix import lt_pow
from saltext.vrmat.utils.ltmatrix import lt_scale
from saltext.vrmat.utils.sequences import Seq
from saltext.vrmat.utils.vrm import pascal

log = logging.getLogger(__name__)

# Order explored when the caller gives none, per conjecture
DEFAULT_ORDERS = {"1": 9, "2": 7}


@dataclass(frozen=True)
class ConjectureInstance:
    """
    One explored object: detection reports keyed by mode and the candidate
    formulas that matched (or not) the inferred sequence.
    """

    name: str
    reports: dict
    candidates: dict = field(default_factory=dict)

    @property
    def passed(self):
        return any(report.passed for report in self.reports.values())

    def to_dict(self):
        return {
            "name": self.name,
            "passed": self.passed,
            "detection": {mode: report.to_dict() for mode, report in self.reports.items()},
            "candidates": dict(self.candidates),
        }


@dataclass(frozen=True)
class ConjectureReport:
    conjecture: str
    grid: dict
    instances: tuple

    @property
    def verdict(self):
        outcomes = [instance.passed for instance in self.instances]
        if all(outcomes):
            return "supported"
        if not any(outcomes):
            return "refuted"
        return "mixed"

    @property
    def counterexample(self):
        for instance in self.instances:
            if not instance.passed:
                return instance
        return None

    def to_dict(self):
        counterexample = self.counterexample
        return {
            "conjecture": self.conjecture,
            "grid": {key: str(value) for key, value in self.grid.items()},
            "verdict": self.verdict,
            "counterexample": counterexample.name if counterexample else None,
            "instances": [instance.to_dict() for instance in self.instances],
        }


def _conjecture1_candidates(alpha, alpha_seq, n):
    count = n

    def prod(start, stop):
        return math.prod(alpha_seq.term(j) for j in range(start, stop + 1))

    return {
        "prod_1_to_i": [prod(1, i) for i in range(count)],
        "prod_0_to_i-1": [prod(0, i - 1) for i in range(count)],
        "alpha_times_prod_1_to_i": [alpha * prod(1, i) for i in range(count)],
        "literal_prod_i_to_n": [1] + [prod(i, n) for i in range(1, count)],
    }


def conjecture1_explore(alpha, alpha_seq, n):
    """
    Build ``a[n, k] = alpha * a[n-1, k-1] + alpha_seq[n-1] * a[n-1, k]`` with
    a unit column 0, infer its sequence in general mode and compare it with
    the product-formula candidates.
    """
    if n < 3:
        raise VrmatInvocationError(f"conjecture 1 exploration needs n >= 3, got {n}")
    a = build_two_term(n, alpha, lambda row: alpha_seq.term(row - 1))
    report = infer_lambda(a, Mode.GENERAL)
    candidates = {}
    for name, values in _conjecture1_candidates(alpha, alpha_seq, n).items():
        candidates[name] = report.passed and report.lambda_values == values
    log.info(
        "Conjecture 1 alpha=%s seq=%s n=%s: %s, matching candidates %s",
        alpha,
        alpha_seq,
        n,
        report.verdict.value,
        [name for name, hit in candidates.items() if hit],
    )
    instance = ConjectureInstance(
        f"alpha={alpha},seq={alpha_seq}", {Mode.GENERAL.value: report}, candidates
    )
    return ConjectureReport(
        "1", {"alpha": alpha, "alpha_seq": alpha_seq, "n": n}, (instance,)
    )


def ballot_triangle(n):
    """
    Catalan triangle ``C(i+j, j) * (i-j+1) / (i+1)`` in lower-triangular row
    form.
    """
    return lt_from_function(n + 1, lambda i, j: binom(i + j, j) * (i - j + 1) // (i + 1))


def catalan_admissible(n):
    """
    Admissible matrix for ``s = (1, 2, 2, ...)``; its column 0 is the
    Catalan numbers.
    """
    return build_admissible(Seq.of([1] + [2] * max(n - 1, 0)), n)


def conjecture2_explore(n):
    """
    Run both detection modes on the two Catalan-array candidates.
    """
    if n < 4:
        raise VrmatInvocationError(f"conjecture 2 exploration needs n >= 4, got {n}")
    instances = []
    for name, matrix in (("ballot", ballot_triangle(n)), ("admissible", catalan_admissible(n))):
        reports = {mode.value: infer_lambda(matrix, mode) for mode in (Mode.STRICT, Mode.GENERAL)}
        instances.append(ConjectureInstance(name, reports))
    return ConjectureReport("2", {"n": n}, tuple(instances))


def _vectorize(a):
    return [value for row in a.rows for value in row]


def minpoly_mod_p(a, p):
    """
    Monic minimal polynomial of ``a`` over F_p.

    The powers ``I, A, A**2, ...`` are vectorized and reduced against an
    echelon basis; the first power that reduces to zero gives the
    dependency. The result is re-verified by evaluation and by division into
    the characteristic polynomial.
    """
    require_prime(p)
    basis = []
    power = lt_identity(a.order)
    for degree in range(a.order + 1):
        current = [v % p for v in _vectorize(power)]
        combo = [0] * degree + [1]
        for pivot, vec, vec_combo in basis:
            factor = current[pivot]
            if not factor:
                continue
            current = [(x - factor * y) % p for x, y in zip(current, vec)]
            combo = [
                (x - factor * (vec_combo[i] if i < len(vec_combo) else 0)) % p
                for i, x in enumerate(combo)
            ]
        pivot = next((i for i, x in enumerate(current) if x), None)
        if pivot is None:
            result = Poly(tuple(combo))
            log.debug("Minimal polynomial mod %s has degree %s", p, degree)
            _reverify_minpoly(result, a, p)
            return result
        inverse = modp_inverse(current[pivot], p)
        basis.append(
            (pivot, [x * inverse % p for x in current], [x * inverse % p for x in combo])
        )
        power = lt_mod(lt_mul(power, a), p)
    raise VrmatDomainError(f"no annihilating polynomial of degree <= {a.order} found")


def evaluate_poly_at_matrix_mod_p(g, a, p):
    """
    ``g(a)`` reduced mod ``p``, by Horner's rule.
    """
    result = lt_scale(lt_identity(a.order), 0)
    identity = lt_identity(a.order)
    for c in reversed(g.coeffs):
        result = lt_mod(lt_add(lt_mul(result, a), lt_scale(identity, c)), p)
    return result


def charpoly_mod_p(a, p):
    """
    ``prod(x - a[i, i])`` mod ``p``; exact for triangular matrices.
    """
    result = ONE
    for d in a.diagonal():
        result = poly_mod_p(poly_mul(result, Poly((-d, 1))), p)
    return result


def _reverify_minpoly(g, a, p):
    zero = lt_scale(lt_identity(a.order), 0)
    if not lt_eq(evaluate_poly_at_matrix_mod_p(g, a, p), zero):
        raise VrmatDomainError(f"minimal polynomial {g} does not annihilate the matrix mod {p}")
    _, remainder = poly_divmod_mod_p(charpoly_mod_p(a, p), g, p)
    if not remainder.is_zero():
        raise VrmatDomainError(
            f"minimal polynomial {g} does not divide the characteristic polynomial mod {p}"
        )


def pascal_order_mod_p_check(n, p):
    """
    ``pascal(n)**p == I`` mod ``p``.
    """
    require_prime(p)
    return lt_eq(lt_mod(lt_pow(pascal(n), p), p), lt_identity(n + 1))
