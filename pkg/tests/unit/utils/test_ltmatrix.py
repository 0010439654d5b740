import pytest
from hypothesis import given
from hypothesis import strategies as st

from saltext.vrmat.exceptions import NotInvertibleError
from saltext.vrmat.exceptions import SchemaError
from saltext.vrmat.exceptions import ShapeError
from saltext.vrmat.exceptions import VrmatDomainError
from saltext.vrmat.exceptions import VrmatInvocationError
from saltext.vrmat.utils import ltmatrix as lt


@st.composite
def matrices(draw, order=None, values=st.integers(min_value=-9, max_value=9)):
    if order is None:
        order = draw(st.integers(min_value=1, max_value=6))
    return lt.LTMatrix(
        tuple(tuple(draw(values) for _ in range(i + 1)) for i in range(order))
    )


@st.composite
def unimodular(draw):
    a = draw(matrices())
    signs = [draw(st.sampled_from([1, -1])) for _ in range(a.order)]
    return lt.lt_from_function(a.order, lambda i, j: signs[i] if i == j else a[i, j])


def _dense_mul(a, b):
    size = a.order
    return [
        [sum(a[i, l] * b[l, j] for l in range(size)) for j in range(size)] for i in range(size)
    ]


def _dense(a):
    return [[a[i, j] for j in range(a.order)] for i in range(a.order)]


def test_ragged_rows_are_rejected():
    with pytest.raises(ShapeError):
        lt.lt_new([[1], [1, 1, 1]])
    with pytest.raises(ShapeError):
        lt.LTMatrix(())


def test_upper_triangle_reads_zero():
    a = lt.lt_new([[1], [2, 3]])
    assert a[0, 1] == 0
    assert a.n == 1
    assert list(a.cells()) == [(0, 0), (1, 0), (1, 1)]
    assert a.diagonal() == [1, 3]


@given(matrices(order=4), matrices(order=4))
def test_mul_matches_dense_product(a, b):
    assert _dense(lt.lt_mul(a, b)) == _dense_mul(a, b)


def test_mul_order_mismatch():
    with pytest.raises(ShapeError):
        lt.lt_mul(lt.lt_identity(2), lt.lt_identity(3))


@given(matrices(), st.integers(min_value=0, max_value=7))
def test_pow_matches_repeated_multiplication(a, m):
    naive = lt.lt_identity(a.order)
    for _ in range(m):
        naive = lt.lt_mul(naive, a)
    assert lt.lt_eq(lt.lt_pow(a, m), naive)


def test_negative_power():
    with pytest.raises(ShapeError):
        lt.lt_pow(lt.lt_identity(2), -1)


@given(unimodular())
def test_inverse(a):
    inverse = lt.lt_inverse(a)
    identity = lt.lt_identity(a.order)
    assert lt.lt_eq(lt.lt_mul(a, inverse), identity)
    assert lt.lt_eq(lt.lt_mul(inverse, a), identity)


@given(unimodular())
def test_inverse_is_an_involution(a):
    assert lt.lt_eq(lt.lt_inverse(lt.lt_inverse(a)), a)


def test_inverse_needs_unit_diagonal():
    with pytest.raises(NotInvertibleError):
        lt.lt_inverse(lt.lt_new([[1], [5, 2]]))


def test_direct_sums():
    a = lt.lt_new([[2], [3, 4]])
    assert lt.direct_sum_1(a).rows == ((1,), (0, 2), (0, 3, 4))
    assert lt.direct_sum_identity(2, a).rows == ((1,), (0, 1), (0, 0, 2), (0, 0, 3, 4))
    assert lt.direct_sum_identity(0, a) == a


def test_mod_is_canonical():
    a = lt.lt_mod(lt.lt_new([[-1], [7, -6]]), 5)
    assert a.rows == ((4,), (2, 4))


def test_add_sub_scale():
    a = lt.lt_new([[1], [2, 3]])
    assert lt.lt_add(a, a) == lt.lt_scale(a, 2)
    assert lt.lt_sub(a, a) == lt.lt_scale(a, 0)


def test_json_keeps_big_integers():
    big = 3**200
    a = lt.lt_new([[1], [big, -big]])
    data = lt.lt_to_data(a)
    assert data == {"order": 2, "rows": [["1"], [str(big), str(-big)]]}
    assert lt.lt_from_json(lt.lt_to_json(a)) == a


@given(matrices(values=st.integers(min_value=-(10**40), max_value=10**40)))
def test_json_preserves_entries(a):
    assert lt.lt_from_json(lt.lt_to_json(a)) == a


@pytest.mark.parametrize(
    "data,path",
    [
        ([], "$"),
        ({"rows": []}, "$"),
        ({"order": 1}, "$"),
        ({"order": 0, "rows": []}, "$.order"),
        ({"order": True, "rows": [["1"]]}, "$.order"),
        ({"order": 1, "rows": "1"}, "$.rows"),
        ({"order": 2, "rows": [["1"]]}, "$.rows"),
        ({"order": 2, "rows": [["1"], "2"]}, "$.rows[1]"),
        ({"order": 2, "rows": [["1"], ["2"]]}, "$.rows[1]"),
        ({"order": 2, "rows": [["1"], ["2", 3]]}, "$.rows[1][1]"),
        ({"order": 2, "rows": [["1"], ["2", "x"]]}, "$.rows[1][1]"),
        ({"order": 1, "rows": [["1.5"]]}, "$.rows[0][0]"),
        ({"order": 1, "rows": [["1_000"]]}, "$.rows[0][0]"),
        ({"order": 1, "rows": [[" 7"]]}, "$.rows[0][0]"),
        ({"order": 1, "rows": [["+3"]]}, "$.rows[0][0]"),
        ({"order": 1, "rows": [["\u0663"]]}, "$.rows[0][0]"),
        ({"order": 1, "rows": [["7\n"]]}, "$.rows[0][0]"),
        ({"order": 1, "rows": [[""]]}, "$.rows[0][0]"),
    ],
)
def test_schema_errors(data, path):
    with pytest.raises(SchemaError) as excinfo:
        lt.lt_from_data(data)
    assert excinfo.value.path == path
    assert str(excinfo.value).startswith(f"{path}: ")


def test_invalid_json():
    with pytest.raises(SchemaError):
        lt.lt_from_json("{not json")


def test_csv_and_pretty():
    a = lt.lt_new([[1], [12, 1]])
    assert lt.lt_to_csv(a) == "1\n12,1\n"
    assert lt.lt_pretty(a) == " 1\n12  1"
    assert lt.lt_render(a, "csv") == lt.lt_to_csv(a)
    with pytest.raises(VrmatInvocationError):
        lt.lt_render(a, "xml")


def test_write_and_read(tmp_path):
    a = lt.lt_new([[1], [2, 1], [4, 4, 1]])
    path = tmp_path / "v.json"
    lt.lt_write(a, str(path), "json")
    assert path.read_text().endswith("\n")
    assert lt.lt_read(str(path)) == a


def test_read_missing_file(tmp_path):
    with pytest.raises(VrmatDomainError):
        lt.lt_read(str(tmp_path / "missing.json"))


def test_write_into_missing_directory(tmp_path):
    with pytest.raises(VrmatDomainError, match="cannot write matrix file"):
        lt.lt_write(lt.lt_identity(2), str(tmp_path / "missing" / "i.json"))


def test_read_binary_file(tmp_path):
    path = tmp_path / "binary.json"
    path.write_bytes(b"\xff\xfe\x00")
    with pytest.raises(SchemaError):
        lt.lt_read(str(path))
