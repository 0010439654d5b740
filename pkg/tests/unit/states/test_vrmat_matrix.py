"""
This test checks the vrmat_matrix salt state
"""

from unittest.mock import MagicMock
from unittest.mock import patch

import pytest

from saltext.vrmat.modules import vrmat
from saltext.vrmat.states import vrmat_matrix


def _config_option(name, default=None):  # pylint: disable=unused-argument
    return default


@pytest.fixture
def configure_loader_modules():
    return {
        vrmat: {"__salt__": {"config.option": _config_option}},
        vrmat_matrix: {
            "__salt__": {"vrmat.build": vrmat.build, "vrmat.selftest": vrmat.selftest},
            "__opts__": {"test": False},
        },
    }


def test_virtual():
    assert vrmat_matrix.__virtual__() is True
    with patch.dict(vrmat_matrix.__salt__, {}, clear=True):
        assert vrmat_matrix.__virtual__()[0] is False


def test_built(tmp_path):
    name = str(tmp_path / "geom2.csv")
    ret = vrmat_matrix.built(name, "geom:2", 4, fmt="csv")
    assert ret == {
        "name": name,
        "changes": {"matrix": {"old": "absent", "new": "geom:2 order 4"}},
        "result": True,
        "comment": f"Matrix file {name} has been written",
    }
    assert (tmp_path / "geom2.csv").read_text() == "1\n2,1\n4,4,1\n8,12,6,1\n"

    ret = vrmat_matrix.built(name, "geom:2", 4, fmt="csv")
    assert ret["changes"] == {}
    assert ret["result"] is True
    assert ret["comment"] == f"Matrix file {name} is up to date"


@pytest.mark.parametrize("fmt", ["json", "pretty"])
def test_built_is_idempotent(tmp_path, fmt):
    name = str(tmp_path / "catalan")
    assert vrmat_matrix.built(name, "catalan", 6, fmt=fmt)["changes"]
    assert not vrmat_matrix.built(name, "catalan", 6, fmt=fmt)["changes"]


def test_built_differs(tmp_path):
    path = tmp_path / "v.json"
    path.write_text("stale\n")
    ret = vrmat_matrix.built(str(path), "ones", 3)
    assert ret["changes"]["matrix"]["old"] == "differs"
    assert ret["result"] is True


def test_built_test_mode(tmp_path):
    name = str(tmp_path / "v.json")
    with patch.dict(vrmat_matrix.__opts__, {"test": True}):
        ret = vrmat_matrix.built(name, "ones", 3)
    assert ret["result"] is None
    assert ret["comment"] == f"Matrix file {name} is set to be written"
    assert ret["changes"]["matrix"]["old"] == "absent"
    assert not (tmp_path / "v.json").exists()


@pytest.mark.parametrize("seq", ["geom:", "const:2"])
def test_built_bad_input(tmp_path, seq):
    ret = vrmat_matrix.built(str(tmp_path / "v.json"), seq, 3)
    assert ret["result"] is False
    assert ret["changes"] == {}
    assert not (tmp_path / "v.json").exists()


def test_built_general(tmp_path):
    name = str(tmp_path / "v.csv")
    ret = vrmat_matrix.built(name, "ones", 3, column="0,1,2", fmt="csv")
    assert ret["result"] is True
    assert (tmp_path / "v.csv").read_text() == "0\n1,0\n2,1,0\n"


def test_verified():
    ret = vrmat_matrix.verified("reproduce_pascal")
    assert ret == {
        "name": "reproduce_pascal",
        "changes": {},
        "result": True,
        "comment": "Check reproduce_pascal passed",
    }


def test_verified_failure():
    ret = vrmat_matrix.verified("pascal table", check="reproduce_pascal", corrupt="pascal:2,1")
    assert ret["result"] is False
    assert ret["comment"].startswith("Check reproduce_pascal failed: ")


def test_verified_runs_in_test_mode():
    report = {"result": True, "failed": [], "checks": [{"name": "lab", "passed": True}]}
    selftest = MagicMock(return_value=report)
    with patch.dict(vrmat_matrix.__opts__, {"test": True}), patch.dict(
        vrmat_matrix.__salt__, {"vrmat.selftest": selftest}
    ):
        ret = vrmat_matrix.verified("lab")
    assert ret["result"] is True
    selftest.assert_called_once_with(corrupt=None, checks=["lab"])


def test_verified_unknown_check():
    ret = vrmat_matrix.verified("everything")
    assert ret["result"] is False


def test_built_unwritable(tmp_path):
    name = str(tmp_path / "missing" / "v.json")
    ret = vrmat_matrix.built(name, "ones", 3)
    assert ret["result"] is False
    assert ret["comment"].startswith(f"Unable to write {name}: ")
    assert ret["changes"] == {}


def test_built_replaces_binary_file(tmp_path):
    path = tmp_path / "v.json"
    path.write_bytes(b"\xff\xfe")
    ret = vrmat_matrix.built(str(path), "ones", 3)
    assert ret["changes"]["matrix"]["old"] == "differs"
    assert vrmat_matrix.built(str(path), "ones", 3)["changes"] == {}
