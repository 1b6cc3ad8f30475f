"""Abstract bases, basis descriptors and their decidability data.

A ``BasisDescriptor`` is the computational seed of a continuous dcpo: a
countable set of codes with an enumeration, the transitive interpolative
relation ``≺`` and whichever of the decisions δ⊥, δ≪, δ⊑, boundedness and
refinement the domain supports. Codes are opaque hashable values; every
descriptor knows how to serialize them canonically.
"""
import functools
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Any, Callable, Iterator, List, Optional, Sequence, Tuple

from errors import InvalidCode, MissingBoundednessData, PreconditionViolated
from models import CheckReport, FuelLike, as_budget
from settings import get_logger

logger = get_logger(__name__)

Code = Any
Relation = Callable[[Code, Code], bool]


@dataclass(frozen=True)
class AbstractBasis:
    """A countable carrier with a transitive, interpolative relation ``≺``.

    Attributes:
        name: short name used in element labels and error messages
        prec: decision procedure for ``a ≺ b``
        is_code: decision procedure for membership in the carrier
        reflexive: True when ``≺`` is reflexive (the completion is algebraic)
    """
    name: str
    prec: Relation
    is_code: Callable[[Any], bool]
    reflexive: bool = False


@dataclass(frozen=True, eq=False)
class BasisDescriptor:
    """An abstract basis together with enumeration and decidability data.

    Attributes:
        basis: the underlying abstract basis
        enumerate: total surjection from indices to codes
        serialize: canonical string form of a code
        parse: inverse of ``serialize`` (optional)
        interpolate_fn: constructive interpolation witness for ``a ≺ b``
        approach: ``approach(b, n)`` is a ≺-increasing sequence of codes
            strictly below ``b`` whose ideal union is ``↓b``; required to build
            principal elements of non-reflexive bases
        delta_bot: decision "b is the least code" (δ⊥)
        delta_waybelow: decision for ``↓a ≪ ↓b`` (δ≪)
        delta_below: decision for ``↓a ⊑ ↓b`` (δ⊑)
        bounded: decision "this finite set of codes has an upper bound"
        refine: decision for ``a ⇈ b``
        join: least upper bound of a finite set of codes, ``None`` if unbounded
        bottom: the least code, when the descriptor is pointed
        size: number of codes for finite bases, else ``None``
    """
    basis: AbstractBasis
    enumerate: Callable[[int], Code]
    serialize: Callable[[Code], str]
    parse: Optional[Callable[[str], Code]] = None
    interpolate_fn: Optional[Callable[[Code, Code], Code]] = None
    approach: Optional[Callable[[Code, int], Code]] = None
    delta_bot: Optional[Callable[[Code], bool]] = None
    delta_waybelow: Optional[Relation] = None
    delta_below: Optional[Relation] = None
    bounded: Optional[Callable[[Sequence[Code]], bool]] = None
    refine: Optional[Relation] = None
    join: Optional[Callable[[Sequence[Code]], Optional[Code]]] = None
    bottom: Optional[Code] = None
    size: Optional[int] = None

    @property
    def name(self) -> str:
        return self.basis.name

    @property
    def reflexive(self) -> bool:
        return self.basis.reflexive

    @property
    def is_finite(self) -> bool:
        return self.size is not None

    def prec(self, a: Code, b: Code) -> bool:
        return self.basis.prec(a, b)

    def way_below_codes(self, a: Code, b: Code) -> bool:
        """``↓a ≪ ↓b``, falling back to ``≺`` when δ≪ is not supplied."""
        if self.delta_waybelow is not None:
            return self.delta_waybelow(a, b)
        return self.basis.prec(a, b)

    def validate(self, code: Code) -> Code:
        """Return ``code`` unchanged, raising InvalidCode if it is not a code."""
        try:
            ok = self.basis.is_code(code)
        except (TypeError, ValueError):
            ok = False
        if not ok:
            raise InvalidCode(f"{code!r} is not a code of the {self.name} basis")
        return code

    def codes(self, fuel: FuelLike) -> List[Code]:
        """Distinct codes among ``enumerate(0..fuel-1)``, in enumeration order."""
        seen = set()
        result = []
        for i in range(as_budget(fuel)):
            code = self.enumerate(i)
            key = self.serialize(code)
            if key not in seen:
                seen.add(key)
                result.append(code)
        return result

    def all_codes(self) -> List[Code]:
        """Every code of a finite basis."""
        if self.size is None:
            raise PreconditionViolated(f"The {self.name} basis is infinite")
        return self.codes(self.size)

    def bounded_pair(self, a: Code, b: Code) -> bool:
        if self.bounded is None:
            raise MissingBoundednessData(f"The {self.name} basis has no boundedness decision")
        return self.bounded((a, b))


def interpolate(descriptor: BasisDescriptor, a: Code, b: Code) -> Code:
    """Return a code ``c`` with ``a ≺ c ≺ b``.

    Args:
        descriptor: the basis the codes belong to
        a: lower code
        b: upper code, with ``a ≺ b``

    Returns:
        Code: the descriptor's interpolation witness; for reflexive bases
        without a witness procedure this is ``b`` itself

    Raises:
        PreconditionViolated: if ``a ≺ b`` fails, or the witness procedure
            returned a code that does not re-validate

    Example:
        >>> interpolate(rational_descriptor(), Fraction(0), Fraction(1))
        Fraction(1, 2)
    """
    descriptor.validate(a)
    descriptor.validate(b)
    if not descriptor.prec(a, b):
        raise PreconditionViolated(
            f"interpolate needs {descriptor.serialize(a)} ≺ {descriptor.serialize(b)}"
        )
    if descriptor.interpolate_fn is None:
        if descriptor.reflexive:
            return b
        raise PreconditionViolated(f"The {descriptor.name} basis has no interpolation witness")
    c = descriptor.interpolate_fn(a, b)
    if not (descriptor.prec(a, c) and descriptor.prec(c, b)):
        logger.warning("interpolation witness %r failed replay for %r ≺ %r", c, a, b)
        raise PreconditionViolated("interpolation witness failed to re-validate")
    return c


def prec_transitive_probe(descriptor: BasisDescriptor, fuel: FuelLike) -> CheckReport:
    """Check transitivity, the mixed monotonicity laws and δ-consistency.

    Every triple of distinct codes with enumeration index below ``fuel`` is
    inspected. Violations are recorded as counterexample triples.
    """
    codes = descriptor.codes(fuel)
    show = descriptor.serialize
    below = descriptor.delta_below
    way = descriptor.way_below_codes
    report = CheckReport(name=f"prec-laws[{descriptor.name}]")

    if below is not None:
        for x in codes:
            for y in codes:
                if way(x, y) and not below(x, y):
                    report.fail(f"≪ without ⊑: ({show(x)}, {show(y)})")

    for x in codes:
        for y in codes:
            xy = descriptor.prec(x, y)
            for z in codes:
                report.checked += 1
                yz = descriptor.prec(y, z)
                if xy and yz and not descriptor.prec(x, z):
                    report.fail(f"transitivity: ({show(x)}, {show(y)}, {show(z)})")
                if below is None:
                    continue
                if below(x, y) and way(y, z) and not way(x, z):
                    report.fail(f"⊑;≪ ⇒ ≪: ({show(x)}, {show(y)}, {show(z)})")
                if way(x, y) and below(y, z) and not way(x, z):
                    report.fail(f"≪;⊑ ⇒ ≪: ({show(x)}, {show(y)}, {show(z)})")
    logger.debug("%s: %d triples, %d failures",
                 report.name, report.checked, len(report.failures))
    return report


def diagonal(stage: int) -> Iterator[Tuple[int, int]]:
    """Index pairs ``(i, j)`` with ``max(i, j) == stage``, in a fixed order.

    Searches that walk ``diagonal(0), diagonal(1), ...`` visit the pairs of a
    smaller fuel first and in the same order, which keeps their first hit
    independent of the total fuel.
    """
    for j in range(stage + 1):
        yield stage, j
    for i in range(stage):
        yield i, stage


# Enumerations

def cantor_unpair(z: int) -> Tuple[int, int]:
    w = (isqrt(8 * z + 1) - 1) // 2
    y = z - w * (w + 1) // 2
    return w - y, y


def cantor_pair(x: int, y: int) -> int:
    return (x + y) * (x + y + 1) // 2 + y


def _fusc(n: int) -> int:
    a, b = 1, 0
    while n:
        if n & 1:
            b += a
        else:
            a += b
        n >>= 1
    return b


def positive_rational_at(k: int) -> Fraction:
    """The k-th entry of the Calkin–Wilf enumeration of positive rationals."""
    return Fraction(_fusc(k + 1), _fusc(k + 2))


def rational_at(n: int) -> Fraction:
    """A surjection ℕ → ℚ: 0, 1, -1, 1/2, -1/2, 2, -2, 1/3, ..."""
    if n == 0:
        return Fraction(0)
    q = positive_rational_at((n - 1) // 2)
    return q if n % 2 == 1 else -q


def format_fraction(q: Fraction) -> str:
    """Canonical ``p/q`` form: lowest terms, positive denominator."""
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_fraction(text: str) -> Fraction:
    """Parse ``p/q`` or an integer; raises InvalidCode on anything else."""
    try:
        if '/' in text:
            num, den = text.split('/')
            if not den.lstrip('-').isdigit() or not num.lstrip('-').isdigit():
                raise ValueError(text)
            return Fraction(int(num), int(den))
        if not text.lstrip('-').isdigit():
            raise ValueError(text)
        return Fraction(int(text))
    except (ValueError, ZeroDivisionError) as e:
        raise InvalidCode(f"not a rational: {text!r}") from e


@functools.lru_cache(maxsize=None)
def rational_descriptor() -> BasisDescriptor:
    """The abstract basis ``(ℚ, <)`` whose rounded ideals are the lower reals."""
    basis = AbstractBasis(
        name="rationals",
        prec=lambda a, b: a < b,
        is_code=lambda c: isinstance(c, Fraction),
    )
    return BasisDescriptor(
        basis=basis,
        enumerate=rational_at,
        serialize=format_fraction,
        parse=parse_fraction,
        interpolate_fn=lambda a, b: (a + b) / 2,
        approach=lambda b, n: b - Fraction(1, 2 ** n),
        delta_waybelow=lambda a, b: a < b,
        delta_below=lambda a, b: a <= b,
        bounded=lambda codes: True,
        refine=lambda a, b: True,
        join=lambda codes: max(codes) if codes else None,
    )
