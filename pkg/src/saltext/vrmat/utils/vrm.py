"""
Vertically-recurrent, Toeplitz and Pascal-family matrix builders.

The vertically-recurrent matrix ``V_n[L]`` of order ``n + 1`` has a given
column 0 and, for ``n >= k >= 1``,

.. code-block:: text

    a[n, k] = sum(L[n - 1 - l] * a[l, k - 1] for l in range(k - 1, n))

the generalized hockey-stick recurrence. In the *strict* form column 0 is L
itself and ``L[0]`` must be 1; the *general* form takes column 0 separately.

The multiplicative decomposition unrolls as

.. code-block:: text

    V_n = T(0) * T(1) * ... * T(n-1),    T(k) = I_k (+) T_(n-k)[L]

with increasing block index from left to right.
"""

import logging
from dataclasses import dataclass
from dataclasses import field

from saltext.vrmat.exceptions import ShapeError
from saltext.vrmat.exceptions import StrictBuildError
from saltext.vrmat.exceptions import VrmatDomainError
from saltext.vrmat.exceptions import VrmatInvocationError
from saltext.vrmat.utils.kernel import binom
from saltext.vrmat.utils.ltmatrix import LTMatrix
from saltext.vrmat.utils.ltmatrix import direct_sum_1
from saltext.vrmat.utils.ltmatrix import direct_sum_identity
from saltext.vrmat.utils.ltmatrix import lt_eq
from saltext.vrmat.utils.ltmatrix import lt_from_function
from saltext.vrmat.utils.ltmatrix import lt_identity
from saltext.vrmat.utils.ltmatrix import lt_inverse
from saltext.vrmat.utils.ltmatrix import lt_mul
from saltext.vrmat.utils.ltmatrix import lt_scale
from saltext.vrmat.utils.sequences import Seq
from saltext.vrmat.utils.sequences import SeqKind
from saltext.vrmat.utils.sequences import conv_inverse

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class VrmSpec:
    """
    ``weights`` drives the recurrence. ``column`` is None for a strict build
    (column 0 is the weights) or the explicit column 0 of a general build.
    """

    weights: Seq
    column: tuple = field(default=None)

    @classmethod
    def strict(cls, weights):
        return cls(weights)

    @classmethod
    def general(cls, weights, column):
        return cls(weights, tuple(int(v) for v in column))

    @property
    def is_strict(self):
        return self.column is None


def lambda_column(weights, n):
    return [weights.term(i) for i in range(n + 1)]


def _check_n(n):
    if n < 0:
        raise VrmatInvocationError(f"matrix index n must be nonnegative, got {n}")


def _require_strict(weights):
    lam0 = weights.term(0)
    if lam0 != 1:
        raise StrictBuildError(f"strict build requires lambda_0 = 1, got {lam0}")


def build_vrm(spec, n):
    """
    Build ``V_n`` for ``spec`` by running the recurrence column by column.
    """
    _check_n(n)
    if spec.is_strict:
        _require_strict(spec.weights)
        col0 = lambda_column(spec.weights, n)
    else:
        if len(spec.column) != n + 1:
            raise ShapeError(
                f"general build of order {n + 1} needs a column of {n + 1} terms, "
                f"got {len(spec.column)}"
            )
        col0 = list(spec.column)
    lam = [spec.weights.term(i) for i in range(n)]
    log.debug("Building V_%s for %s", n, spec)
    a = [[0] * (i + 1) for i in range(n + 1)]
    for i in range(n + 1):
        a[i][0] = col0[i]
    for k in range(1, n + 1):
        for i in range(k, n + 1):
            a[i][k] = sum(lam[i - 1 - l] * a[l][k - 1] for l in range(k - 1, i))
    return LTMatrix(tuple(tuple(row) for row in a))


def toeplitz(weights, n):
    """
    ``T_n[L]``: entry ``(i, j)`` is ``L[i - j]``.
    """
    _check_n(n)
    lam = lambda_column(weights, n)
    return lt_from_function(n + 1, lambda i, j: lam[i - j])


def toeplitz_block(weights, n, k):
    """
    ``I_k (+) T_(n-k)[L]``; ``k == 0`` is ``T_n`` and ``k == n`` is ``I_(n+1)``.
    """
    _check_n(n)
    if not 0 <= k <= n:
        raise VrmatInvocationError(f"block index k={k} out of range 0..{n}")
    if k == n:
        return lt_identity(n + 1)
    return direct_sum_identity(k, toeplitz(weights, n - k))


def _general_lambda_spec(weights, n):
    # First column equal to the weights, without the lambda_0 = 1 requirement
    return VrmSpec.general(weights, lambda_column(weights, n))


def decompose_step(weights, n, strict=True):
    """
    Return ``(T_n[L], [1] (+) V_(n-1)[L])``, whose product is ``V_n[L]``.

    With ``strict=False`` column 0 is still L but any lambda_0 is accepted.
    """
    if n < 1:
        raise VrmatInvocationError(f"the decomposition needs n >= 1, got {n}")
    if strict:
        _require_strict(weights)
        lower = build_vrm(VrmSpec.strict(weights), n - 1)
        target = build_vrm(VrmSpec.strict(weights), n)
    else:
        lower = build_vrm(_general_lambda_spec(weights, n - 1), n - 1)
        target = build_vrm(_general_lambda_spec(weights, n), n)
    left = toeplitz(weights, n)
    right = direct_sum_1(lower)
    if not lt_eq(lt_mul(left, right), target):
        raise VrmatDomainError(f"decomposition of V_{n}[{weights}] does not reproduce V_{n}")
    return left, right


def decompose_chain(weights, n):
    """
    Factors ``T(0), ..., T(n-1)`` whose ordered product is ``V_n[L]``.
    """
    _check_n(n)
    _require_strict(weights)
    return [toeplitz_block(weights, n, k) for k in range(n)]


def reversed_chain(weights, n):
    """
    The chain ``T(n) * T(n-1) * ... * T(1)`` with decreasing block index.

    Kept to demonstrate that this ordering does not reproduce ``V_n``.
    """
    _check_n(n)
    return [toeplitz_block(weights, n, k) for k in range(n, 0, -1)]


def chain_product(factors, order):
    result = lt_identity(order)
    for factor in factors:
        result = lt_mul(result, factor)
    return result


def vrm_inverse(weights, n):
    """
    ``V_n[L]**-1`` as ``T(n-1)**-1 * ... * T(0)**-1``; each block inverse is
    the Toeplitz matrix of the convolution inverse of L.

    Column 0 of ``V_n`` is L; lambda_0 must be 1 or -1. For lambda_0 = -1 the
    chain carries a trailing ``I_n (+) [lambda_0]`` factor, which is its own
    inverse.
    """
    _check_n(n)
    lam0 = weights.term(0)
    if n == 0:
        return lt_inverse(LTMatrix(((lam0,),)))
    mu = Seq.of(conv_inverse(weights, n + 1))
    result = direct_sum_identity(n, LTMatrix(((lam0,),)))
    for k in range(n - 1, -1, -1):
        result = lt_mul(result, toeplitz_block(mu, n, k))
    target = build_vrm(_general_lambda_spec(weights, n), n)
    if not lt_eq(lt_mul(target, result), lt_identity(n + 1)):
        raise VrmatDomainError(f"inverse of V_{n}[{weights}] failed verification")
    return result


def pascal(n):
    """
    ``P_n``: entry ``C(i, j)``.
    """
    _check_n(n)
    return lt_from_function(n + 1, binom)


def pascal_func(n, x):
    """
    Pascal functional matrix ``P_n[x]``: entry ``C(i, j) * x**(i-j)``.
    """
    _check_n(n)
    return lt_from_function(n + 1, lambda i, j: binom(i, j) * x ** (i - j))


def pascal_kelim(n, x):
    """
    Pascal k-eliminated functional matrix ``P_(n,1)[x]``: entry
    ``C(i+1, j+1) * x**(i-j)``.
    """
    _check_n(n)
    return lt_from_function(n + 1, lambda i, j: binom(i + 1, j + 1) * x ** (i - j))


def s_matrix(n, x):
    """
    ``S_n[x]``: entry ``x**(i-j)``.
    """
    _check_n(n)
    return lt_from_function(n + 1, lambda i, j: x ** (i - j))


def s_identity_check(n, x):
    """
    ``S_n[x] == P_(n,1)[x] * P_n[-x]``.
    """
    return lt_eq(s_matrix(n, x), lt_mul(pascal_kelim(n, x), pascal_func(n, -x)))


def toeplitz_case_check(weights, n):
    """
    Closed forms of ``T_n`` for the constant and geometric families:
    ``T_n[const:c] == c * S_n[1]`` and ``T_n[geom:r] == S_n[r]``, the latter
    also factored through ``S_n[r] == P_(n,1)[r] * P_n[-r]``.
    """
    if weights.kind is SeqKind.CONST:
        return lt_eq(toeplitz(weights, n), lt_scale(s_matrix(n, 1), weights.param))
    if weights.kind is SeqKind.GEOM:
        ratio = weights.param
        return lt_eq(toeplitz(weights, n), s_matrix(n, ratio)) and s_identity_check(n, ratio)
    raise VrmatInvocationError(f"no closed Toeplitz form for {weights}")
