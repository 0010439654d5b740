import pytest
from hypothesis import given
from hypothesis import strategies as st

from saltext.vrmat.exceptions import VrmatInvocationError
from saltext.vrmat.utils import admissible
from saltext.vrmat.utils.ltmatrix import lt_identity
from saltext.vrmat.utils.ltmatrix import lt_new
from saltext.vrmat.utils.sequences import Seq
from saltext.vrmat.utils.vrm import pascal


def test_build_ones():
    built = admissible.build_admissible(Seq.ones(), 4)
    assert built.rows == ((1,), (1, 1), (2, 2, 1), (4, 5, 3, 1), (9, 12, 9, 4, 1))


def test_build_catalan():
    built = admissible.build_admissible(Seq.of((1, 2, 2, 2)), 4)
    assert built.rows == ((1,), (1, 1), (2, 3, 1), (5, 9, 5, 1), (14, 28, 20, 7, 1))


def test_build_zero_sequence():
    built = admissible.build_admissible(Seq.const(0), 2)
    assert built.rows == ((1,), (0, 1), (1, 0, 1))


def test_build_reads_only_needed_terms():
    # s[n] is never read for a matrix of order n + 1
    assert admissible.build_admissible(Seq.of((1, 2)), 2).order == 3


@given(st.lists(st.integers(min_value=-5, max_value=5), min_size=1, max_size=8))
def test_built_matrices_are_admissible(values):
    s = Seq.of(values)
    n = len(values)
    built = admissible.build_admissible(s, n)
    assert admissible.check_admissible(built).passed
    assert admissible.sequence_from_admissible(built) == values
    assert admissible.subdiagonal_check(s, n)


def test_pascal_is_not_admissible():
    report = admissible.check_admissible(pascal(4))
    assert not report.passed
    assert (report.kind, report.m, report.n) == ("inner_product", 1, 1)
    assert (report.expected, report.actual) == (1, 2)


def test_identity_is_not_admissible():
    report = admissible.check_admissible(lt_identity(4))
    assert (report.m, report.n, report.expected, report.actual) == (1, 1, 0, 1)


def test_diagonal_failure():
    report = admissible.check_admissible(lt_new([[1], [0, 2]]))
    assert report.to_dict() == {
        "verdict": "fail",
        "first_failure": {"kind": "diagonal", "m": 1, "n": 1, "expected": "1", "actual": "2"},
    }


def test_pass_to_dict():
    report = admissible.check_admissible(admissible.build_admissible(Seq.ones(), 3))
    assert report.to_dict() == {"verdict": "pass", "first_failure": None}


def test_extract_needs_two_rows():
    with pytest.raises(VrmatInvocationError):
        admissible.sequence_from_admissible(lt_identity(1))


def test_build_needs_nonnegative_n():
    with pytest.raises(VrmatInvocationError):
        admissible.build_admissible(Seq.ones(), -1)
