"""
Named acceptance checks.

Each check reproduces a known object or sweeps a parameter grid and returns a
:py:class:`CheckResult`. The reference matrices the reproduction checks
compare against are literal tables; ``corrupt`` bumps one entry of one of
them by 1, which must make the matching check fail.
"""

import functools
import logging
import random
from dataclasses import dataclass

from saltext.vrmat.exceptions import VrmatDomainError
from saltext.vrmat.exceptions import VrmatInvocationError
from saltext.vrmat.utils.admissible import build_admissible
from saltext.vrmat.utils.admissible import check_admissible
from saltext.vrmat.utils.admissible import sequence_from_admissible
from saltext.vrmat.utils.admissible import subdiagonal_check
from saltext.vrmat.utils.analysis import Mode
from saltext.vrmat.utils.analysis import case1_check
from saltext.vrmat.utils.analysis import case2_check
from saltext.vrmat.utils.analysis import infer_lambda
from saltext.vrmat.utils.analysis import lemma_product_check
from saltext.vrmat.utils.kernel import Poly
from saltext.vrmat.utils.lab import conjecture1_explore
from saltext.vrmat.utils.lab import conjecture2_explore
from saltext.vrmat.utils.lab import minpoly_mod_p
from saltext.vrmat.utils.lab import pascal_order_mod_p_check
from saltext.vrmat.utils.ladder import compare_mnt
from saltext.vrmat.utils.ladder import displayed_mnt_factors
from saltext.vrmat.utils.ladder import identity13_check
from saltext.vrmat.utils.ladder import identity15_check
from saltext.vrmat.utils.ladder import mnt
from saltext.vrmat.utils.ladder import mnt_display_check
from saltext.vrmat.utils.ladder import mnt2_lambda_check
from saltext.vrmat.utils.ladder import mnt_formula
from saltext.vrmat.utils.ladder import mnt_lambda_check
from saltext.vrmat.utils.ltmatrix import LTMatrix
from saltext.vrmat.utils.ltmatrix import lt_eq
from saltext.vrmat.utils.ltmatrix import lt_identity
from saltext.vrmat.utils.ltmatrix import lt_mul
from saltext.vrmat.utils.ltmatrix import lt_new
from saltext.vrmat.utils.ltmatrix import lt_pow
from saltext.vrmat.utils.sequences import Seq
from saltext.vrmat.utils.vrm import VrmSpec
from saltext.vrmat.utils.vrm import build_vrm
from saltext.vrmat.utils.vrm import chain_product
from saltext.vrmat.utils.vrm import decompose_chain
from saltext.vrmat.utils.vrm import decompose_step
from saltext.vrmat.utils.vrm import pascal
from saltext.vrmat.utils.vrm import reversed_chain
from saltext.vrmat.utils.vrm import s_identity_check
from saltext.vrmat.utils.vrm import vrm_inverse

log = logging.getLogger(__name__)

# Every check takes the reference tables, most ignore them
# pylint: disable=unused-argument

REFERENCE_MATRICES = {
    "pascal": ((1,), (1, 1), (1, 2, 1), (1, 3, 3, 1)),
    "geom2": ((1,), (2, 1), (4, 4, 1), (8, 12, 6, 1)),
    "admissible1": ((1,), (1, 1), (2, 2, 1), (4, 5, 3, 1), (9, 12, 9, 4, 1)),
    "admissible2": ((1,), (1, 1), (2, 3, 1), (5, 9, 5, 1), (14, 28, 20, 7, 1)),
    "mnt": ((1,), (1, 1), (1, 3, 1), (1, 6, 5, 1)),
    "transfer": (
        (1,),
        (1, 1),
        (1, 3, 1),
        (1, 6, 5, 1),
        (1, 10, 15, 7, 1),
        (1, 15, 35, 28, 9, 1),
    ),
}

DECOMPOSITION_GRID = (
    ("ones", Seq.ones(), True, 12),
    ("const:2", Seq.const(2), False, 12),
    ("geom:2", Seq.geom(2), True, 12),
    ("geom:3", Seq.geom(3), True, 12),
    ("nat", Seq.nat(), True, 12),
    ("binom:2", Seq.binomial(2), True, 12),
    ("catalan", Seq.catalan(), True, 12),
    # five explicit terms cover n <= 4
    ("list:1,1,2,4,9", Seq.of((1, 1, 2, 4, 9)), True, 4),
)

ORACLE_SEED = 20240229


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""

    def to_dict(self):
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


def parse_corruption(text):
    """
    Parse ``NAME:i,j`` into ``(name, i, j)``.
    """
    name, sep, cell = text.partition(":")
    if not sep or name not in REFERENCE_MATRICES:
        raise VrmatInvocationError(
            f"corruption must look like NAME:i,j with NAME one of {sorted(REFERENCE_MATRICES)}"
        )
    try:
        i, j = (int(part) for part in cell.split(","))
    except ValueError:
        raise VrmatInvocationError(f"bad corruption cell '{cell}', expected i,j") from None
    rows = REFERENCE_MATRICES[name]
    if not 0 <= j <= i < len(rows):
        raise VrmatInvocationError(f"cell ({i},{j}) is outside the {name} reference matrix")
    return name, i, j


def reference_matrices(corrupt=None):
    """
    The reference tables as matrices, with an optional ``(name, i, j)``
    corruption applied.
    """
    refs = {name: lt_new(rows) for name, rows in REFERENCE_MATRICES.items()}
    if corrupt:
        name, i, j = corrupt
        rows = [list(row) for row in REFERENCE_MATRICES[name]]
        rows[i][j] += 1
        refs[name] = lt_new(rows)
        log.warning("Reference matrix %s corrupted at (%s, %s)", name, i, j)
    return refs


def _same(label, built, reference):
    if lt_eq(built, reference):
        return True, ""
    return False, f"{label} differs from its reference table"


def check_reproduce_pascal(refs):
    ok, detail = _same("V_3[ones]", build_vrm(VrmSpec.strict(Seq.ones()), 3), refs["pascal"])
    if ok:
        report = infer_lambda(refs["pascal"], Mode.STRICT)
        ok = report.passed and report.lambda_values == [1, 1, 1, 1]
        detail = "" if ok else "strict detection on the Pascal matrix"
    return ok, detail


def check_reproduce_geom2(refs):
    return _same("V_3[geom:2]", build_vrm(VrmSpec.strict(Seq.geom(2)), 3), refs["geom2"])


def check_reproduce_admissible(refs):
    ok, detail = _same("admissible s=ones", build_admissible(Seq.ones(), 4), refs["admissible1"])
    if ok:
        ok, detail = _same(
            "admissible s=1,2,2,2", build_admissible(Seq.of((1, 2, 2, 2)), 4), refs["admissible2"]
        )
    return ok, detail


def check_reproduce_ladder(refs):
    ok, detail = _same("mnt(3)", mnt(3), refs["mnt"])
    if ok:
        ok, detail = _same("T_0..T_5", mnt(5), refs["transfer"])
    return ok, detail


def check_mnt_display(refs):
    report = mnt_display_check()
    if report.reproduces:
        return False, "printed MNT factorization unexpectedly reproduces mnt(3)"
    if [(m["n"], m["k"]) for m in report.mismatches] != [(2, 1), (3, 1)]:
        return False, f"printed MNT factorization mismatches {list(report.mismatches)}"
    if lt_eq(chain_product(displayed_mnt_factors(), 4), refs["mnt"]):
        return False, "printed MNT factorization matches the reference table"
    return True, ""


def check_decomposition(refs):
    for label, weights, strict, max_n in DECOMPOSITION_GRID:
        for n in range(1, max_n + 1):
            try:
                decompose_step(weights, n, strict=strict)
            except VrmatDomainError as exc:
                return False, f"{label} n={n}: {exc}"
    return True, ""


def check_factor_chain(refs):
    for label, weights, strict, max_n in DECOMPOSITION_GRID:
        if not strict:
            continue
        for n in range(max_n + 1):
            target = build_vrm(VrmSpec.strict(weights), n)
            if not lt_eq(chain_product(decompose_chain(weights, n), n + 1), target):
                return False, f"factor chain for {label} n={n}"
            if not lt_eq(lt_mul(target, vrm_inverse(weights, n)), lt_identity(n + 1)):
                return False, f"inverse for {label} n={n}"
    literal = chain_product(reversed_chain(Seq.geom(2), 3), 4)
    if lt_eq(literal, build_vrm(VrmSpec.strict(Seq.geom(2)), 3)):
        return False, "decreasing-index chain unexpectedly reproduces V_3[geom:2]"
    return True, ""


def check_s_identity(refs):
    for x in range(-3, 4):
        for n in range(11):
            if not s_identity_check(n, x):
                return False, f"S-identity x={x} n={n}"
    return True, ""


def check_case2(refs):
    for lam in (1, 2, 3):
        for m in range(1, 5):
            for n in range(9):
                if not case2_check(lam, n, m):
                    return False, f"geometric power lambda={lam} m={m} n={n}"
    return True, ""


def check_case1(refs):
    for lam in (1, 2, 3, 5):
        for m in range(1, 5):
            for n in range(9):
                if not case1_check(lam, n, m).passed:
                    return False, f"constant power lambda={lam} m={m} n={n}"
    return True, ""


def check_product_law(refs):
    span = range(-3, 4)
    for alpha in span:
        for beta in span:
            for alpha2 in span:
                for beta2 in span:
                    if not lemma_product_check(alpha, beta, alpha2, beta2, 8):
                        return False, f"product law {(alpha, beta, alpha2, beta2)}"
    return True, ""


def check_admissible_properties(refs):
    families = (
        ("ones", Seq.ones(), 12),
        ("1,2,2,...", Seq.of([1] + [2] * 11), 12),
        ("const:0", Seq.const(0), 12),
        ("list:3,1,4,1", Seq.of((3, 1, 4, 1)), 4),
    )
    for label, s, n in families:
        built = build_admissible(s, n)
        if not check_admissible(built).passed:
            return False, f"admissibility of {label}"
        if not subdiagonal_check(s, n):
            return False, f"subdiagonal partial sums of {label}"
        if sequence_from_admissible(built) != s.terms(n):
            return False, f"sequence round trip of {label}"
    first = infer_lambda(refs["admissible1"], Mode.STRICT)
    if not (first.passed and first.lambda_values == [1, 1, 2, 4, 9]):
        return False, "strict detection on admissible s=ones"
    second = infer_lambda(refs["admissible2"], Mode.GENERAL)
    if not (second.passed and second.lambda_values == [1, 2, 5, 14]):
        return False, "general detection on admissible s=1,2,2,2"
    return True, ""


def check_mnt(refs):
    if not lt_eq(mnt(16), mnt_formula(16, "2k")):
        return False, "mnt(16) against C(i+j, 2j)"
    for n in range(1, 17):
        first = compare_mnt(n).first_mismatch("2k+1")
        if not first or (first["n"], first["k"]) != (1, 1):
            return False, f"C(i+j, 2j+1) should first mismatch at (1,1) for n={n}"
    for check in (identity13_check, identity15_check):
        report = check(20)
        if not report.passed:
            return False, f"{report.name} at {report.first_failure}"
    report = mnt_lambda_check(10)
    if not (report.passed and report.lambda_values == list(range(1, 11))):
        return False, "general detection on mnt(10)"
    if not mnt2_lambda_check(10).passed:
        return False, "verification of mnt2(10) with binom:2"
    return True, ""


def check_lab(refs):
    if minpoly_mod_p(pascal(4), 5) != Poly((4, 0, 0, 0, 0, 1)):
        return False, "minimal polynomial of pascal(4) mod 5"
    for p in (2, 3, 5, 7, 11, 13):
        for n in range(13):
            if not pascal_order_mod_p_check(n, p):
                return False, f"pascal({n})**{p} mod {p}"
    for c in (1, 2, 3):
        report = conjecture1_explore(1, Seq.const(c), 10)
        instance = report.instances[0]
        if not instance.candidates["prod_1_to_i"]:
            return False, f"conjecture 1 with const:{c}"
    ballot, admissible = conjecture2_explore(4).instances
    general = ballot.reports[Mode.GENERAL.value]
    if general.passed or (general.first_failure.n, general.first_failure.k) != (2, 2):
        return False, "conjecture 2 ballot candidate"
    if not admissible.reports[Mode.GENERAL.value].passed:
        return False, "conjecture 2 admissible candidate"
    return True, ""


def _brute_force_entry(col, lam):
    @functools.lru_cache(maxsize=None)
    def entry(i, k):
        if k == 0:
            return col[i]
        if k > i:
            return 0
        return sum(lam[i - 1 - l] * entry(l, k - 1) for l in range(k - 1, i))

    return entry


def check_oracles(refs):
    rng = random.Random(ORACLE_SEED)
    for case in range(50):
        n = rng.randint(0, 8)
        weights = Seq.of([rng.randint(-3, 3) for _ in range(n + 1)])
        column = [rng.randint(-3, 3) for _ in range(n + 1)]
        built = build_vrm(VrmSpec.general(weights, column), n)
        entry = _brute_force_entry(tuple(column), tuple(weights.values))
        if any(built[i, k] != entry(i, k) for i, k in built.cells()):
            return False, f"recurrence builder against brute force, case {case}"
    for _ in range(10):
        order = rng.randint(1, 6)
        a = LTMatrix(
            tuple(tuple(rng.randint(-3, 3) for _ in range(i + 1)) for i in range(order))
        )
        naive = lt_identity(order)
        for m in range(6):
            if not lt_eq(lt_pow(a, m), naive):
                return False, f"lt_pow against repeated multiplication, m={m}"
            naive = lt_mul(naive, a)
    return True, ""


CHECKS = {
    "reproduce_pascal": check_reproduce_pascal,
    "reproduce_geom2": check_reproduce_geom2,
    "reproduce_admissible": check_reproduce_admissible,
    "reproduce_ladder": check_reproduce_ladder,
    "decomposition": check_decomposition,
    "factor_chain": check_factor_chain,
    "s_identity": check_s_identity,
    "geometric_powers": check_case2,
    "constant_powers": check_case1,
    "product_law": check_product_law,
    "admissible": check_admissible_properties,
    "ladder": check_mnt,
    "mnt_display": check_mnt_display,
    "lab": check_lab,
    "oracles": check_oracles,
}


def run_check(name, refs=None):
    if name not in CHECKS:
        raise VrmatInvocationError(f"unknown check '{name}', expected one of {sorted(CHECKS)}")
    refs = refs or reference_matrices()
    passed, detail = CHECKS[name](refs)
    log.info("Self-test check %s: %s", name, "pass" if passed else "FAIL")
    return CheckResult(name, passed, detail)


def run_selftest(corrupt=None, names=None):
    """
    Run the named checks (all by default) against the reference tables.
    ``corrupt`` is a ``NAME:i,j`` string.
    """
    refs = reference_matrices(parse_corruption(corrupt) if corrupt else None)
    return [run_check(name, refs) for name in (names or CHECKS)]
