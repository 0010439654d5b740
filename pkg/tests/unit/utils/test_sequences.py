import pytest
from hypothesis import given
from hypothesis import strategies as st

from saltext.vrmat.exceptions import NotInvertibleError
from saltext.vrmat.exceptions import SeqSpecError
from saltext.vrmat.exceptions import SequenceExhaustedError
from saltext.vrmat.utils.sequences import Seq
from saltext.vrmat.utils.sequences import SeqKind
from saltext.vrmat.utils.sequences import conv_inverse
from saltext.vrmat.utils.sequences import geom_sum
from saltext.vrmat.utils.sequences import parse_int_list
from saltext.vrmat.utils.sequences import parse_seqspec
from saltext.vrmat.utils.sequences import print_seqspec

small = st.integers(min_value=-50, max_value=50)

seqs = st.one_of(
    st.just(Seq.ones()),
    st.just(Seq.catalan()),
    st.builds(Seq.const, small),
    st.builds(Seq.geom, small),
    st.builds(Seq.binomial, st.integers(min_value=0, max_value=50)),
    st.builds(Seq.of, st.lists(small, min_size=1, max_size=8)),
)


@pytest.mark.parametrize(
    "text,terms",
    [
        ("ones", [1, 1, 1, 1, 1]),
        ("nat", [1, 2, 3, 4, 5]),
        ("catalan", [1, 1, 2, 5, 14]),
        ("const:3", [3, 3, 3, 3, 3]),
        ("const:-2", [-2, -2, -2, -2, -2]),
        ("geom:2", [1, 2, 4, 8, 16]),
        ("geom:-3", [1, -3, 9, -27, 81]),
        ("geom:0", [1, 0, 0, 0, 0]),
        ("binom:2", [1, 3, 6, 10, 15]),
        ("binom:0", [1, 1, 1, 1, 1]),
        ("list:1,-1,2,0,7", [1, -1, 2, 0, 7]),
    ],
)
def test_terms(text, terms):
    assert parse_seqspec(text).terms(5) == terms


def test_nat_is_binom_1():
    assert parse_seqspec("nat") == parse_seqspec("binom:1")
    assert print_seqspec(parse_seqspec("binom:1")) == "nat"


@given(seqs)
def test_print_parse(seq):
    assert parse_seqspec(print_seqspec(seq)) == seq


@pytest.mark.parametrize(
    "text,offset",
    [
        ("foo", 0),
        ("", 0),
        ("geom", 4),
        ("list", 4),
        ("geom:", 5),
        ("geom:x", 5),
        ("geom:-", 6),
        ("geom:2 ", 6),
        ("binom:-1", 6),
        ("list:1,,2", 7),
        ("list:1;2", 6),
        ("list:1,2,", 9),
        ("ones ", 0),
    ],
)
def test_parse_errors(text, offset):
    with pytest.raises(SeqSpecError) as excinfo:
        parse_seqspec(text)
    assert excinfo.value.offset == offset
    assert f"(at byte {offset})" in str(excinfo.value)


def test_list_exhausted():
    seq = parse_seqspec("list:1,2")
    assert seq.term(1) == 2
    with pytest.raises(SequenceExhaustedError):
        seq.term(2)


def test_negative_index():
    with pytest.raises(SequenceExhaustedError):
        Seq.ones().term(-1)


def test_only_lists_have_a_length():
    assert len(Seq.of([4, 5])) == 2
    with pytest.raises(TypeError):
        len(Seq.ones())


def test_kind():
    assert parse_seqspec("catalan").kind is SeqKind.CATALAN
    assert parse_seqspec("list:5").kind is SeqKind.LIST


@pytest.mark.parametrize(
    "text,expected",
    [
        ("ones", [1, -1, 0, 0, 0, 0]),
        ("catalan", [1, -1, -1, -2, -5, -14]),
        ("geom:2", [1, -2, 0, 0, 0, 0]),
        ("const:-1", [-1, 1, 0, 0, 0, 0]),
    ],
)
def test_conv_inverse(text, expected):
    assert conv_inverse(parse_seqspec(text), 6) == expected


@given(st.sampled_from([1, -1]), st.lists(small, max_size=10))
def test_conv_inverse_is_inverse(lam0, tail):
    seq = Seq.of([lam0] + tail)
    length = len(tail) + 1
    lam = seq.terms(length)
    mu = conv_inverse(seq, length)
    for n in range(length):
        assert sum(lam[j] * mu[n - j] for j in range(n + 1)) == int(n == 0)


@given(st.sampled_from([1, -1]), st.lists(small, max_size=10))
def test_conv_inverse_is_an_involution(lam0, tail):
    length = len(tail) + 1
    mu = conv_inverse(Seq.of([lam0] + tail), length)
    assert conv_inverse(Seq.of(mu), length) == [lam0] + tail


@pytest.mark.parametrize("text", ["const:2", "const:-2", "const:0", "list:3,1,0"])
def test_conv_inverse_needs_a_unit(text):
    with pytest.raises(NotInvertibleError):
        conv_inverse(parse_seqspec(text), 3)


@pytest.mark.parametrize("lam", [-3, -1, 0, 1, 2, 5])
@pytest.mark.parametrize("m", [0, 1, 2, 5])
def test_geom_sum(lam, m):
    if lam == 1:
        assert geom_sum(lam, m) == m
    else:
        assert geom_sum(lam, m) == (lam**m - 1) // (lam - 1)


def test_parse_int_list():
    assert parse_int_list("0,1,-2,30") == [0, 1, -2, 30]
    assert parse_int_list([1, "2"]) == [1, 2]
    with pytest.raises(SeqSpecError):
        parse_int_list("1, 2")
