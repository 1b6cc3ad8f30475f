"""Element expressions and domain names used on the command line.

Grammar (case-sensitive, no whitespace)::

    rat:<p>/<q>                 the rational p/q as a Dedekind real
    sqrt:<n>                    √n, n a non-square natural (binary brackets)
    sqrt3:<n>                   √n through base-3 brackets
    dyadic:<p>/<q>              p/q through dyadic brackets
    seq:periodic:<word>         word repeated forever
    seq:evconst:<word>;<letter> word, then letter forever
    lower:rat:<p>/<q>           rationals below p/q
    lower:sqrt:<n>              rationals below √n
    lower:flagged               the non-located lower real whose flag never fires

Finite domains take an element label (``bot``, ``{0,1}``, ...) instead.
"""
from fractions import Fraction
from math import isqrt
from typing import Callable, Dict

from domains import (baire_descriptor, cantor_descriptor, descriptor_from_poset,
                     eventually_constant, finite_element, flagged_lower_real,
                     interval_descriptor, iota_real, iota_seq, lower_rational,
                     lower_sqrt, periodic, real_dyadic, real_rational, real_sqrt)
from errors import ExpressionError, InvalidCode
from finite_oracle import (FinitePoset, powerset_poset, sierpinski_poset,
                           three_point_poset)
from ideal import ApproxElement
from order_core import BasisDescriptor, parse_fraction, rational_descriptor

FINITE_DOMAINS: Dict[str, Callable[[], FinitePoset]] = {
    'sierpinski': sierpinski_poset,
    'P': three_point_poset,
    **{f'powerset{n}': (lambda n=n: powerset_poset(n)) for n in range(1, 6)},
}

DOMAINS = ('reals', 'cantor', 'baire', 'lower') + tuple(FINITE_DOMAINS)


def descriptor_for(domain: str) -> BasisDescriptor:
    """The shared descriptor of a named domain."""
    factories: Dict[str, Callable[[], BasisDescriptor]] = {
        'reals': interval_descriptor,
        'cantor': cantor_descriptor,
        'baire': baire_descriptor,
        'lower': rational_descriptor,
    }
    if domain in factories:
        return factories[domain]()
    if domain in FINITE_DOMAINS:
        return descriptor_from_poset(FINITE_DOMAINS[domain]())
    raise ExpressionError(f"unknown domain {domain!r}; expected one of {', '.join(DOMAINS)}")


def _rational(text: str) -> Fraction:
    try:
        return parse_fraction(text)
    except InvalidCode as e:
        raise ExpressionError(str(e)) from e


def _natural(text: str, non_square: bool = False) -> int:
    if not text.isdigit():
        raise ExpressionError(f"not a natural number: {text!r}")
    n = int(text)
    if non_square and isqrt(n) ** 2 == n:
        raise ExpressionError(f"{n} is a perfect square; use rat:{isqrt(n)}/1")
    return n


def _word(text: str, domain: str) -> tuple:
    try:
        return descriptor_for(domain).parse(text)
    except InvalidCode as e:
        raise ExpressionError(str(e)) from e


def _parse_real(text: str) -> ApproxElement:
    kind, _, arg = text.partition(":")
    if kind == 'rat':
        return iota_real(real_rational(_rational(arg), label=text))
    if kind == 'dyadic':
        return iota_real(real_dyadic(_rational(arg), label=text))
    if kind == 'sqrt':
        return iota_real(real_sqrt(_natural(arg, non_square=True), label=text))
    if kind == 'sqrt3':
        return iota_real(real_sqrt(_natural(arg, non_square=True), base=3, label=text))
    raise ExpressionError(f"not a real expression: {text!r}")


def _parse_sequence(text: str, domain: str) -> ApproxElement:
    parts = text.split(":", 2)
    if len(parts) != 3 or parts[0] != 'seq':
        raise ExpressionError(f"not a sequence expression: {text!r}")
    _, kind, arg = parts
    descriptor = descriptor_for(domain)
    if kind == 'periodic':
        word = _word(arg, domain)
        if not word:
            raise ExpressionError("a periodic sequence needs a non-empty word")
        return iota_seq(periodic(word, label=text), descriptor)
    if kind == 'evconst':
        word_text, sep, letter_text = arg.partition(";")
        letter = _word(letter_text, domain) if sep else ()
        if len(letter) != 1:
            raise ExpressionError(f"evconst needs exactly one trailing letter: {text!r}")
        return iota_seq(eventually_constant(_word(word_text, domain), letter[0], label=text), descriptor)
    raise ExpressionError(f"unknown sequence kind {kind!r}")


def _parse_lower(text: str) -> ApproxElement:
    parts = text.split(":", 2)
    if parts[0] != 'lower' or len(parts) < 2:
        raise ExpressionError(f"not a lower-real expression: {text!r}")
    if parts[1:] == ['flagged']:
        return flagged_lower_real(label=text)
    if len(parts) != 3:
        raise ExpressionError(f"not a lower-real expression: {text!r}")
    if parts[1] == 'rat':
        return lower_rational(_rational(parts[2]), label=text)
    if parts[1] == 'sqrt':
        return lower_sqrt(_natural(parts[2]), label=text)
    raise ExpressionError(f"unknown lower-real kind {parts[1]!r}")


def parse_element(text: str, domain: str) -> ApproxElement:
    """Build the element an expression denotes in ``domain``.

    Raises:
        ExpressionError: on unknown domains or malformed expressions
    """
    if domain == 'reals':
        return _parse_real(text)
    if domain in ('cantor', 'baire'):
        return _parse_sequence(text, domain)
    if domain == 'lower':
        return _parse_lower(text)
    if domain in FINITE_DOMAINS:
        poset = FINITE_DOMAINS[domain]()
        if text not in poset.index:
            raise ExpressionError(f"{text!r} is not an element of {poset.name}")
        return finite_element(poset, text)
    raise ExpressionError(f"unknown domain {domain!r}; expected one of {', '.join(DOMAINS)}")


def parse_code(text: str, domain: str):
    """Parse a basis code in the domain's canonical serialization."""
    descriptor = descriptor_for(domain)
    if descriptor.parse is None:
        raise ExpressionError(f"codes of {domain} cannot be parsed")
    try:
        return descriptor.validate(descriptor.parse(text))
    except InvalidCode as e:
        raise ExpressionError(str(e)) from e
