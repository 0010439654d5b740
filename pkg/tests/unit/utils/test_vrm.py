import functools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from saltext.vrmat.exceptions import NotInvertibleError
from saltext.vrmat.exceptions import ShapeError
from saltext.vrmat.exceptions import StrictBuildError
from saltext.vrmat.exceptions import VrmatInvocationError
from saltext.vrmat.utils import vrm
from saltext.vrmat.utils.ltmatrix import direct_sum_1
from saltext.vrmat.utils.ltmatrix import first_column
from saltext.vrmat.utils.ltmatrix import lt_eq
from saltext.vrmat.utils.ltmatrix import lt_identity
from saltext.vrmat.utils.ltmatrix import lt_mul
from saltext.vrmat.utils.sequences import Seq
from saltext.vrmat.utils.sequences import parse_seqspec

STRICT_SEQS = ["ones", "nat", "catalan", "geom:2", "geom:-3", "binom:2", "list:1,1,2,4,9"]


def _strict(text, n):
    return vrm.build_vrm(vrm.VrmSpec.strict(parse_seqspec(text)), n)


@given(
    st.integers(min_value=0, max_value=7).flatmap(
        lambda n: st.tuples(
            st.just(n),
            st.lists(st.integers(-4, 4), min_size=n + 1, max_size=n + 1),
            st.lists(st.integers(-4, 4), min_size=n + 1, max_size=n + 1),
        )
    )
)
def test_general_build_matches_recursive_definition(case):
    n, weights, column = case

    @functools.lru_cache(maxsize=None)
    def entry(i, k):
        if k == 0:
            return column[i]
        if k > i:
            return 0
        return sum(weights[i - 1 - l] * entry(l, k - 1) for l in range(k - 1, i))

    built = vrm.build_vrm(vrm.VrmSpec.general(Seq.of(weights), column), n)
    assert all(built[i, k] == entry(i, k) for i, k in built.cells())


def test_build_geom2():
    assert _strict("geom:2", 3).rows == ((1,), (2, 1), (4, 4, 1), (8, 12, 6, 1))


def test_build_ones_is_pascal():
    assert lt_eq(_strict("ones", 6), vrm.pascal(6))


@pytest.mark.parametrize("r", [-2, 2, 3])
def test_geometric_build_is_pascal_functional(r):
    assert lt_eq(vrm.build_vrm(vrm.VrmSpec.strict(Seq.geom(r)), 6), vrm.pascal_func(6, r))


def test_general_build():
    spec = vrm.VrmSpec.general(Seq.ones(), [0, 1, 2, 3])
    assert vrm.build_vrm(spec, 3).rows == ((0,), (1, 0), (2, 1, 0), (3, 3, 1, 0))


def test_strict_build_needs_unit_lambda0():
    with pytest.raises(StrictBuildError):
        vrm.build_vrm(vrm.VrmSpec.strict(Seq.const(2)), 3)


def test_general_build_column_length():
    with pytest.raises(ShapeError):
        vrm.build_vrm(vrm.VrmSpec.general(Seq.ones(), [1, 2]), 3)


def test_order_one():
    assert _strict("catalan", 0).rows == ((1,),)


def test_toeplitz():
    assert vrm.toeplitz(Seq.nat(), 2).rows == ((1,), (2, 1), (3, 2, 1))


def test_toeplitz_block():
    seq = Seq.nat()
    assert vrm.toeplitz_block(seq, 3, 0) == vrm.toeplitz(seq, 3)
    assert vrm.toeplitz_block(seq, 3, 2).rows == ((1,), (0, 1), (0, 0, 1), (0, 0, 2, 1))
    assert lt_eq(vrm.toeplitz_block(seq, 3, 3), lt_identity(4))
    with pytest.raises(VrmatInvocationError):
        vrm.toeplitz_block(seq, 3, 4)


@pytest.mark.parametrize("text", STRICT_SEQS)
@pytest.mark.parametrize("n", [1, 2, 4])
def test_decompose_step(text, n):
    weights = parse_seqspec(text)
    left, right = vrm.decompose_step(weights, n)
    assert lt_eq(left, vrm.toeplitz(weights, n))
    assert lt_eq(right, direct_sum_1(_strict(text, n - 1)))
    assert lt_eq(lt_mul(left, right), _strict(text, n))


def test_decompose_step_general():
    weights = Seq.const(2)
    with pytest.raises(StrictBuildError):
        vrm.decompose_step(weights, 3)
    left, right = vrm.decompose_step(weights, 3, strict=False)
    assert first_column(lt_mul(left, right)) == [2, 2, 2, 2]


def test_decompose_step_needs_n():
    with pytest.raises(VrmatInvocationError):
        vrm.decompose_step(Seq.ones(), 0)


@pytest.mark.parametrize("text", STRICT_SEQS)
@pytest.mark.parametrize("n", [0, 1, 3, 4])
def test_chain_product(text, n):
    factors = vrm.decompose_chain(parse_seqspec(text), n)
    assert len(factors) == n
    assert lt_eq(vrm.chain_product(factors, n + 1), _strict(text, n))


def test_reversed_chain_does_not_reproduce():
    weights = Seq.geom(2)
    product = vrm.chain_product(vrm.reversed_chain(weights, 3), 4)
    assert first_column(product) == [1, 0, 0, 0]
    assert not lt_eq(product, _strict("geom:2", 3))


def test_inverse_of_pascal():
    assert lt_eq(vrm.vrm_inverse(Seq.ones(), 5), vrm.pascal_func(5, -1))


@pytest.mark.parametrize("text", ["catalan", "nat", "geom:3", "const:-1", "list:-1,2,0,5"])
def test_inverse(text):
    weights = parse_seqspec(text)
    n = 3
    column = weights.terms(n + 1)
    target = vrm.build_vrm(vrm.VrmSpec.general(weights, column), n)
    assert lt_eq(lt_mul(target, vrm.vrm_inverse(weights, n)), lt_identity(n + 1))


@pytest.mark.parametrize("n", [0, 3])
def test_inverse_needs_unit(n):
    with pytest.raises(NotInvertibleError):
        vrm.vrm_inverse(Seq.const(2), n)


@pytest.mark.parametrize("x", range(-3, 4))
@pytest.mark.parametrize("n", [0, 1, 4, 7])
def test_s_identity(x, n):
    assert vrm.s_identity_check(n, x)


def test_pascal_family():
    assert vrm.pascal_func(2, 3).rows == ((1,), (3, 1), (9, 6, 1))
    assert vrm.pascal_kelim(2, 1).rows == ((1,), (2, 1), (3, 3, 1))
    assert vrm.s_matrix(2, -2).rows == ((1,), (-2, 1), (4, -2, 1))


@pytest.mark.parametrize("text", ["const:3", "const:-1", "geom:2", "geom:-3"])
def test_toeplitz_closed_forms(text):
    assert vrm.toeplitz_case_check(parse_seqspec(text), 5)


def test_toeplitz_closed_forms_other_kinds():
    with pytest.raises(VrmatInvocationError):
        vrm.toeplitz_case_check(Seq.catalan(), 3)
