"""
Management of vertically-recurrent matrix files
===============================================

:depends:   - the ``vrmat`` execution module of this extension
:configuration: See :py:mod:`saltext.vrmat.modules.vrmat` for the options.

Keep a matrix file in sync with a build, or gate a highstate on one of the
self-test checks.

.. code-block:: yaml

    /srv/matrices/catalan.json:
      vrmat_matrix.built:
        - seq: catalan
        - order: 8

    ladder-closed-form:
      vrmat_matrix.verified:
        - check: ladder
"""

import logging
import os

import salt.utils.files
import salt.utils.stringutils
from salt.exceptions import CommandExecutionError
from salt.exceptions import SaltInvocationError

from saltext.vrmat.utils.ltmatrix import lt_from_data
from saltext.vrmat.utils.ltmatrix import lt_render

log = logging.getLogger(__name__)

# pylint: disable=undefined-variable


def __virtual__():
    """
    Only load if the vrmat module is available in __salt__
    """
    if "vrmat.build" in __salt__:
        return True
    return (False, "vrmat module could not be loaded")


def _current(name):
    if not os.path.isfile(name):
        return None
    try:
        with salt.utils.files.fopen(name, "r") as fp_:
            return salt.utils.stringutils.to_unicode(fp_.read())
    except UnicodeDecodeError:
        # Binary content never matches a rendered matrix
        return ""


def built(name, seq, order, column=None, fmt="json"):
    """
    Ensure the file ``name`` holds the matrix built from ``seq``.

    name
        Path of the matrix file

    seq
        Associated sequence spec

    order
        Matrix order (``n + 1``)

    column
        Explicit column 0 for a general build

    fmt
        ``json`` (default), ``csv`` or ``pretty``
    """
    ret = {
        "name": name,
        "changes": {},
        "result": True,
        "comment": f"Matrix file {name} is up to date",
    }
    try:
        data = __salt__["vrmat.build"](seq, order, column=column)
        wanted = lt_render(lt_from_data(data), fmt)
    except (SaltInvocationError, CommandExecutionError) as exc:
        ret["result"] = False
        ret["comment"] = str(exc)
        return ret
    if not wanted.endswith("\n"):
        wanted += "\n"

    current = _current(name)
    if current == wanted:
        return ret

    change = {"old": "absent" if current is None else "differs", "new": f"{seq} order {order}"}
    if __opts__.get("test", False):
        ret["result"] = None
        ret["comment"] = f"Matrix file {name} is set to be written"
        ret["changes"]["matrix"] = change
        return ret

    log.debug("Writing %s (%s, order %s)", name, seq, order)
    try:
        __salt__["vrmat.build"](seq, order, column=column, out=name, fmt=fmt)
    except (SaltInvocationError, CommandExecutionError) as exc:
        ret["result"] = False
        ret["comment"] = f"Unable to write {name}: {exc}"
        return ret
    ret["comment"] = f"Matrix file {name} has been written"
    ret["changes"]["matrix"] = change
    return ret


def verified(name, check=None, corrupt=None):
    """
    Ensure a self-test check passes. The checks are read-only, so they run in
    test mode too.

    name
        The check to run, unless ``check`` is given

    corrupt
        ``NAME:i,j`` reference corruption, for exercising the failure path
    """
    check = check or name
    ret = {"name": name, "changes": {}, "result": True, "comment": f"Check {check} passed"}
    try:
        report = __salt__["vrmat.selftest"](corrupt=corrupt, checks=[check])
    except (SaltInvocationError, CommandExecutionError) as exc:
        ret["result"] = False
        ret["comment"] = str(exc)
        return ret
    if not report["result"]:
        detail = report["checks"][0]["detail"]
        ret["result"] = False
        ret["comment"] = f"Check {check} failed: {detail}"
    return ret
