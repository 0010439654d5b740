"""
Exact-integer vertically-recurrent matrices.

Builds vertically-recurrent, Toeplitz, Pascal-family, admissible and
ladder-network matrices, factors and inverts them, detects the associated
sequence of an arbitrary lower-triangular matrix and runs the exploration
and self-test tools.

:depends:   - no external dependencies beyond Salt

:configuration: All options are optional and read through ``config.option``
    (minion config, grains or pillar)::

        vrmat.max_order: 256
        vrmat.sweep_max: 20
        vrmat.format: json

Sizes are given as the matrix *order*, i.e. ``n + 1`` for the matrix
``V_n``. Sequences use the sequence-spec syntax (``ones``, ``nat``,
``catalan``, ``const:C``, ``geom:R``, ``binom:C``, ``list:A,B,...``).

Matrices are returned as ``{"order": N, "rows": [["1"], ["1", "1"], ...]}``
with decimal-string entries. Functions taking a matrix accept it either
inline (``matrix``, JSON text or the deserialized mapping) or as a file
(``path``).
"""

import logging

from saltext.vrmat import DEFAULTS
from saltext.vrmat.exceptions import VrmatInvocationError
from saltext.vrmat.utils import admissible as adm
from saltext.vrmat.utils import analysis
from saltext.vrmat.utils import lab
from saltext.vrmat.utils import ladder as ldr
from saltext.vrmat.utils import selftest as st
from saltext.vrmat.utils import vrm
from saltext.vrmat.utils.ltmatrix import first_column
from saltext.vrmat.utils.ltmatrix import lt_from_data
from saltext.vrmat.utils.ltmatrix import lt_from_json
from saltext.vrmat.utils.ltmatrix import lt_pow
from saltext.vrmat.utils.ltmatrix import lt_read
from saltext.vrmat.utils.ltmatrix import lt_to_data
from saltext.vrmat.utils.ltmatrix import lt_write
from saltext.vrmat.utils.sequences import parse_int_list
from saltext.vrmat.utils.sequences import parse_seqspec

log = logging.getLogger(__name__)

__virtualname__ = "vrmat"


def __virtual__():
    return __virtualname__


def _option(name):
    return __salt__["config.option"](f"vrmat.{name}", DEFAULTS[name])


def _n(order):
    """
    Validate an order and return the matrix index ``n``.
    """
    try:
        order = int(order)
    except (TypeError, ValueError):
        raise VrmatInvocationError(f"order must be an integer, got {order!r}") from None
    max_order = int(_option("max_order"))
    if not 1 <= order <= max_order:
        raise VrmatInvocationError(f"order must be between 1 and {max_order}, got {order}")
    return order - 1


def _load(matrix=None, path=None):
    if path:
        return lt_read(path)
    if matrix is None:
        raise VrmatInvocationError("pass a matrix inline or a path to a matrix file")
    if isinstance(matrix, dict):
        return lt_from_data(matrix)
    return lt_from_json(matrix)


def _emit(a, out=None, fmt=None):
    if out:
        lt_write(a, out, fmt or _option("format"))
    return lt_to_data(a)


def build(seq, order, column=None, out=None, fmt=None):
    """
    Build the vertically-recurrent matrix of the given order.

    seq
        Associated sequence spec. Without ``column`` the build is strict:
        column 0 is the sequence and its first term must be 1.

    column
        Explicit column 0 (list or comma-separated integers) for a general
        build.

    out
        Also write the matrix to this file, in ``fmt`` (``json``, ``csv`` or
        ``pretty``; defaults to ``vrmat.format``).

    CLI Example:

    .. code-block:: bash

        salt '*' vrmat.build geom:2 4
        salt '*' vrmat.build const:1 4 column=0,1,2,3
    """
    n = _n(order)
    weights = parse_seqspec(seq)
    if column is None:
        spec = vrm.VrmSpec.strict(weights)
    else:
        spec = vrm.VrmSpec.general(weights, parse_int_list(column))
    return _emit(vrm.build_vrm(spec, n), out, fmt)


def toeplitz(seq, order, block=None):
    """
    Toeplitz matrix of a sequence, or the block ``I_k (+) T`` with ``block=k``.

    CLI Example:

    .. code-block:: bash

        salt '*' vrmat.toeplitz nat 4
        salt '*' vrmat.toeplitz nat 4 block=2
    """
    n = _n(order)
    weights = parse_seqspec(seq)
    if block is None:
        return lt_to_data(vrm.toeplitz(weights, n))
    return lt_to_data(vrm.toeplitz_block(weights, n, int(block)))


def factor(seq, order, chain=False, strict=True):
    """
    Factor ``V_n`` as ``T_n * ([1] (+) V_(n-1))``, or into the full chain of
    Toeplitz blocks with ``chain=True``.

    strict
        With ``False`` the first factor pair is computed for any lambda_0
        (column 0 still equal to the sequence).

    CLI Example:

    .. code-block:: bash

        salt '*' vrmat.factor catalan 5
        salt '*' vrmat.factor catalan 5 chain=True
    """
    n = _n(order)
    weights = parse_seqspec(seq)
    if chain:
        return {"factors": [lt_to_data(f) for f in vrm.decompose_chain(weights, n)]}
    left, right = vrm.decompose_step(weights, n, strict=strict)
    return {"toeplitz": lt_to_data(left), "lower": lt_to_data(right)}


def inverse(seq, order, out=None, fmt=None):
    """
    Exact inverse of the matrix whose column 0 and weights are ``seq``.

    CLI Example:

    .. code-block:: bash

        salt '*' vrmat.inverse ones 4
    """
    n = _n(order)
    return _emit(vrm.vrm_inverse(parse_seqspec(seq), n), out, fmt)


def power(m, seq=None, order=None, column=None, matrix=None, path=None):
    """
    ``m``-th power of a built matrix (``seq``/``order``) or of a given one
    (``matrix``/``path``), with its first column and the general-mode
    detection report.

    CLI Example:

    .. code-block:: bash

        salt '*' vrmat.power 3 seq=geom:2 order=4
        salt '*' vrmat.power 2 path=/tmp/v.json
    """
    m = int(m)
    if m < 1:
        raise VrmatInvocationError(f"power must be positive, got {m}")
    if seq is not None:
        n = _n(order)
        weights = parse_seqspec(seq)
        if column is None:
            spec = vrm.VrmSpec.strict(weights)
        else:
            spec = vrm.VrmSpec.general(weights, parse_int_list(column))
        result = lt_pow(vrm.build_vrm(spec, n), m)
    else:
        result = lt_pow(_load(matrix, path), m)
    log.debug("Computed power %s of an order %s matrix", m, result.order)
    report = analysis.infer_lambda(result, analysis.Mode.GENERAL)
    return {
        "matrix": lt_to_data(result),
        "first_column": [str(v) for v in first_column(result)],
        "detection": report.to_dict(),
    }


def detect(matrix=None, path=None, mode="strict", seq=None, first_col_is_lambda=False):
    """
    Detect (``strict``/``general``) or verify (``verify`` with ``seq``) the
    associated sequence of a matrix.

    CLI Example:

    .. code-block:: bash

        salt '*' vrmat.detect path=/tmp/pascal.json
        salt '*' vrmat.detect path=/tmp/mnt2.json mode=verify seq=binom:2
    """
    a = _load(matrix, path)
    if mode == "verify":
        if seq is None:
            raise VrmatInvocationError("verify mode needs seq")
        return analysis.verify_lambda(a, parse_seqspec(seq), first_col_is_lambda).to_dict()
    try:
        mode = analysis.Mode(mode)
    except ValueError:
        raise VrmatInvocationError(
            f"unknown mode '{mode}', expected strict, general or verify"
        ) from None
    return analysis.infer_lambda(a, mode).to_dict()


def fit(matrix=None, path=None):
    """
    Fit ``a[n, k] = alpha * a[n-1, k-1] + beta * a[n-1, k]``.

    CLI Example:

    .. code-block:: bash

        salt '*' vrmat.fit path=/tmp/power.json
    """
    return analysis.fit_pascal_recurrence(_load(matrix, path)).to_dict()


def admissible_build(seq, order, out=None, fmt=None):
    """
    Admissible matrix characterized by ``seq``.

    CLI Example:

    .. code-block:: bash

        salt '*' vrmat.admissible_build ones 5
    """
    n = _n(order)
    return _emit(adm.build_admissible(parse_seqspec(seq), n), out, fmt)


def admissible_check(matrix=None, path=None):
    """
    Check the unit diagonal and the row inner-product property.

    CLI Example:

    .. code-block:: bash

        salt '*' vrmat.admissible_check path=/tmp/adm.json
    """
    return adm.check_admissible(_load(matrix, path)).to_dict()


def admissible_extract(matrix=None, path=None):
    """
    Recover the characterizing sequence of an admissible matrix.

    CLI Example:

    .. code-block:: bash

        salt '*' vrmat.admissible_extract path=/tmp/adm.json
    """
    return [str(v) for v in adm.sequence_from_admissible(_load(matrix, path))]


def ladder_polys(order):
    """
    Transfer polynomials ``T_0 .. T_n``, ascending coefficient lists.

    CLI Example:

    .. code-block:: bash

        salt '*' vrmat.ladder_polys 6
    """
    return ldr.transfer_polys(_n(order)).to_json()


def ladder_mnt(order, variant=None):
    """
    The MNT triangle, or one of its closed-form candidates (``2k``, ``2k+1``).

    CLI Example:

    .. code-block:: bash

        salt '*' vrmat.ladder_mnt 4
        salt '*' vrmat.ladder_mnt 4 variant=2k+1
    """
    n = _n(order)
    if variant is None:
        return lt_to_data(ldr.mnt(n))
    return lt_to_data(ldr.mnt_formula(n, variant))


def ladder_mnt2(order):
    """
    CLI Example:

    .. code-block:: bash

        salt '*' vrmat.ladder_mnt2 6
    """
    return lt_to_data(ldr.mnt2(_n(order)))


def ladder_compare(order):
    """
    Compare the MNT against both closed-form candidates.

    CLI Example:

    .. code-block:: bash

        salt '*' vrmat.ladder_compare 7
    """
    return ldr.compare_mnt(_n(order)).to_dict()


def ladder_identities(sweep_max=None):
    """
    Brute-force the two binomial identities behind the ladder triangles for
    ``1 <= k <= n <= sweep_max`` (default ``vrmat.sweep_max``).

    CLI Example:

    .. code-block:: bash

        salt '*' vrmat.ladder_identities
        salt '*' vrmat.ladder_identities sweep_max=30
    """
    bound = int(sweep_max if sweep_max is not None else _option("sweep_max"))
    return [ldr.identity13_check(bound).to_dict(), ldr.identity15_check(bound).to_dict()]


def conjecture(which, order=None, alpha=1, seq="ones"):
    """
    Explore conjecture ``1`` (two-term array with row coefficients ``seq``
    and column coefficient ``alpha``) or ``2`` (Catalan-array candidates).

    CLI Example:

    .. code-block:: bash

        salt '*' vrmat.conjecture 1 seq=const:2
        salt '*' vrmat.conjecture 2 order=6
    """
    which = str(which)
    if which == "1":
        n = _n(order if order is not None else lab.DEFAULT_ORDERS[which])
        return lab.conjecture1_explore(int(alpha), parse_seqspec(seq), n).to_dict()
    if which == "2":
        n = _n(order if order is not None else lab.DEFAULT_ORDERS[which])
        return lab.conjecture2_explore(n).to_dict()
    raise VrmatInvocationError(f"unknown conjecture '{which}', expected 1 or 2")


def minpoly(p, matrix=None, path=None, seq=None, order=None):
    """
    Minimal polynomial over F_p of a given matrix, or of the Pascal matrix of
    the given order when neither ``matrix`` nor ``path`` is passed. ``seq``
    selects a strict build instead of the Pascal matrix.

    CLI Example:

    .. code-block:: bash

        salt '*' vrmat.minpoly 5 order=5
    """
    if matrix is None and not path:
        n = _n(order)
        if seq is None:
            a = vrm.pascal(n)
        else:
            a = vrm.build_vrm(vrm.VrmSpec.strict(parse_seqspec(seq)), n)
    else:
        a = _load(matrix, path)
    return lab.minpoly_mod_p(a, int(p)).to_json()


def selftest(corrupt=None, checks=None):
    """
    Run the acceptance checks. ``checks`` restricts the run to a list of
    check names; ``corrupt`` (``NAME:i,j``) bumps one reference entry.

    CLI Example:

    .. code-block:: bash

        salt '*' vrmat.selftest
        salt '*' vrmat.selftest checks='[ladder, lab]'
    """
    if isinstance(checks, str):
        checks = [name.strip() for name in checks.split(",")]
    results = st.run_selftest(corrupt=corrupt, names=checks)
    failed = [result.name for result in results if not result.passed]
    if failed:
        log.error("Self-test failed: %s", ", ".join(failed))
    return {
        "result": not failed,
        "failed": failed,
        "checks": [result.to_dict() for result in results],
    }
