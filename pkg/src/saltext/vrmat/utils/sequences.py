"""
Associated sequences and the sequence-spec mini-language.

A sequence spec is the text form of a :py:class:`Seq`:

.. code-block:: text

    spec  := "ones" | "nat" | "catalan" | "const:" INT | "geom:" INT
           | "binom:" INT | "list:" INT ("," INT)*
    INT   := ["-"] DIGIT+

``nat`` is shorthand for ``binom:1`` (the terms n+1). No whitespace is
allowed anywhere inside a spec.
"""

import enum
import logging
from dataclasses import dataclass

from saltext.vrmat.exceptions import NotInvertibleError
from saltext.vrmat.exceptions import SeqSpecError
from saltext.vrmat.exceptions import SequenceExhaustedError
from saltext.vrmat.utils.kernel import binom
from saltext.vrmat.utils.kernel import catalan

log = logging.getLogger(__name__)


class SeqKind(enum.Enum):
    ONES = "ones"
    CONST = "const"
    GEOM = "geom"
    BINOM = "binom"
    CATALAN = "catalan"
    LIST = "list"


_NULLARY = {"ones": SeqKind.ONES, "catalan": SeqKind.CATALAN}
_UNARY = {"const": SeqKind.CONST, "geom": SeqKind.GEOM, "binom": SeqKind.BINOM}


@dataclass(frozen=True)
class Seq:
    """
    An associated sequence. ``param`` is used by const/geom/binom, ``values``
    by list.
    """

    kind: SeqKind
    param: int = 0
    values: tuple = ()

    @classmethod
    def ones(cls):
        return cls(SeqKind.ONES)

    @classmethod
    def const(cls, c):
        return cls(SeqKind.CONST, param=c)

    @classmethod
    def geom(cls, r):
        return cls(SeqKind.GEOM, param=r)

    @classmethod
    def binomial(cls, c):
        if c < 0:
            raise SeqSpecError(f"binom parameter must be nonnegative, got {c}")
        return cls(SeqKind.BINOM, param=c)

    @classmethod
    def nat(cls):
        return cls.binomial(1)

    @classmethod
    def catalan(cls):
        return cls(SeqKind.CATALAN)

    @classmethod
    def of(cls, values):
        values = tuple(int(v) for v in values)
        if not values:
            raise SeqSpecError("an explicit sequence needs at least one term")
        return cls(SeqKind.LIST, values=values)

    def term(self, n):
        return seq_term(self, n)

    def terms(self, count):
        return [seq_term(self, i) for i in range(count)]

    def __len__(self):
        # Only explicit lists are finite
        if self.kind is SeqKind.LIST:
            return len(self.values)
        raise TypeError(f"{self} is infinite")

    def __str__(self):
        return print_seqspec(self)


def seq_term(s, n):
    """
    The term lambda_n of ``s``.
    """
    if n < 0:
        raise SequenceExhaustedError(f"sequence index must be nonnegative, got {n}")
    if s.kind is SeqKind.ONES:
        return 1
    if s.kind is SeqKind.CONST:
        return s.param
    if s.kind is SeqKind.GEOM:
        return s.param**n
    if s.kind is SeqKind.BINOM:
        return binom(n + s.param, s.param)
    if s.kind is SeqKind.CATALAN:
        return catalan(n)
    if n >= len(s.values):
        raise SequenceExhaustedError(
            f"sequence exhausted: {print_seqspec(s)} has {len(s.values)} terms, term {n} requested"
        )
    return s.values[n]


def _parse_int(text, start):
    pos = start
    if pos < len(text) and text[pos] == "-":
        pos += 1
    digits = pos
    while pos < len(text) and text[pos].isdigit() and text[pos].isascii():
        pos += 1
    if pos == digits:
        raise SeqSpecError("expected an integer", offset=pos)
    return int(text[start:pos]), pos


def parse_seqspec(text):
    """
    Parse a sequence spec into a :py:class:`Seq`.
    """
    if text in _NULLARY:
        return Seq(_NULLARY[text])
    if text == "nat":
        return Seq.nat()
    name, sep, _ = text.partition(":")
    if not sep:
        if name in _UNARY or name == "list":
            raise SeqSpecError(f"'{name}' needs a parameter after ':'", offset=len(text))
        raise SeqSpecError(f"unknown sequence family '{name}'", offset=0)
    pos = len(name) + 1
    if name in _UNARY:
        value, pos = _parse_int(text, pos)
        if pos != len(text):
            raise SeqSpecError(f"'{name}' takes exactly one integer", offset=pos)
        if name == "binom" and value < 0:
            raise SeqSpecError(
                f"binom parameter must be nonnegative, got {value}", offset=len(name) + 1
            )
        return Seq(_UNARY[name], param=value)
    if name == "list":
        values = []
        while True:
            value, pos = _parse_int(text, pos)
            values.append(value)
            if pos == len(text):
                break
            if text[pos] != ",":
                raise SeqSpecError("expected ',' between list terms", offset=pos)
            pos += 1
        return Seq.of(values)
    raise SeqSpecError(f"unknown sequence family '{name}'", offset=0)


def print_seqspec(s):
    """
    Text form of ``s``; ``parse_seqspec(print_seqspec(s)) == s``.
    """
    if s.kind in (SeqKind.ONES, SeqKind.CATALAN):
        return s.kind.value
    if s.kind is SeqKind.BINOM and s.param == 1:
        return "nat"
    if s.kind is SeqKind.LIST:
        return "list:" + ",".join(str(v) for v in s.values)
    return f"{s.kind.value}:{s.param}"


def conv_inverse(s, length):
    """
    First ``length`` terms of the convolution inverse ``mu`` of ``s``:
    ``sum(lambda_j * mu_(n-j)) == [n == 0]``.

    Only defined when lambda_0 is a unit of the integers.
    """
    lam = [seq_term(s, i) for i in range(length)]
    if lam[0] not in (1, -1):
        raise NotInvertibleError(
            f"sequence not invertible over the integers: lambda_0 = {lam[0]}"
        )
    # 1/lambda_0 == lambda_0 for a unit
    mu = [lam[0]]
    for n in range(1, length):
        acc = sum(lam[j] * mu[n - j] for j in range(1, n + 1))
        mu.append(-lam[0] * acc)
    return mu


def geom_sum(lam, m):
    """
    ``1 + lam + ... + lam**(m-1)``; equals ``(lam**m - 1) / (lam - 1)`` off
    ``lam == 1`` and ``m`` on it.
    """
    total = 0
    power = 1
    for _ in range(m):
        total += power
        power *= lam
    return total


def parse_int_list(text):
    """
    Parse ``INT ("," INT)*``, e.g. an explicit column 0 for a general build.
    """
    if isinstance(text, (list, tuple)):
        return [int(v) for v in text]
    values = []
    pos = 0
    while True:
        value, pos = _parse_int(text, pos)
        values.append(value)
        if pos == len(text):
            return values
        if text[pos] != ",":
            raise SeqSpecError("expected ',' between terms", offset=pos)
        pos += 1
