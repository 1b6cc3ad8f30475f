"""Concrete bases and elements: sequences, intervals, lower reals and finite posets.

Descriptor factories are cached, so every caller shares one descriptor object
per domain and elements built separately can be compared.
"""
import dataclasses
import functools
from dataclasses import dataclass
from fractions import Fraction
from math import floor, isqrt
from typing import Callable, Optional, Sequence, Tuple

from errors import (InvalidCode, NotDecidable, PreconditionViolated,
                    ScheduleViolation, SizeTooLarge)
from finite_oracle import (FinitePoset, not_not_below_oracle, powerset_poset,
                           sierpinski_poset, strongly_maximal, three_point_poset)
from ideal import ApproxElement, principal, replay_member, search_not_below
from models import (Answer, CheckReport, FuelLike, HausdorffCert, MemberEvidence,
                    RefuteBelowWitness, SharpAnswer, StrongMaxAnswer, as_budget)
from order_core import (AbstractBasis, BasisDescriptor, cantor_unpair,
                        format_fraction, parse_fraction, positive_rational_at,
                        rational_at, rational_descriptor)
from separation import (SharpOracle, StrongMaxOracle, decidable_sharp_oracle,
                        fuel_bounded_sharp, sharp_from_strongmax,
                        strongmax_from_refuter)
from settings import get_logger

logger = get_logger(__name__)

Word = Tuple[int, ...]
Interval = Tuple[Fraction, Fraction]


# Sequence domains

def is_prefix(a: Word, b: Word) -> bool:
    return len(a) <= len(b) and b[:len(a)] == a


def _comparable(a: Word, b: Word) -> bool:
    return is_prefix(a, b) or is_prefix(b, a)


def _chain_of_words(codes: Sequence[Word]) -> bool:
    return all(_comparable(a, b) for i, a in enumerate(codes) for b in codes[i + 1:])


def _longest(codes: Sequence[Word]) -> Optional[Word]:
    if not _chain_of_words(codes):
        return None
    return max(codes, key=len, default=())


def _word_check(alphabet_size: Optional[int]) -> Callable[[object], bool]:
    def is_word(code: object) -> bool:
        return isinstance(code, tuple) and all(
            isinstance(a, int) and not isinstance(a, bool) and a >= 0
            and (alphabet_size is None or a < alphabet_size)
            for a in code
        )
    return is_word


def _sequence_descriptor(name: str, alphabet_size: Optional[int],
                         enumerate_fn: Callable[[int], Word],
                         serialize: Callable[[Word], str],
                         parse: Callable[[str], Word]) -> BasisDescriptor:
    basis = AbstractBasis(name=name, prec=is_prefix, is_code=_word_check(alphabet_size),
                          reflexive=True)
    return BasisDescriptor(
        basis=basis,
        enumerate=enumerate_fn,
        serialize=serialize,
        parse=parse,
        delta_bot=lambda b: len(b) == 0,
        delta_waybelow=is_prefix,
        delta_below=is_prefix,
        bounded=_chain_of_words,
        refine=_comparable,
        join=_longest,
        bottom=(),
    )


def _cantor_word(n: int) -> Word:
    # binary expansion of n + 1 without its leading 1: length-lexicographic order
    return tuple(int(ch) for ch in bin(n + 1)[3:])


def _parse_cantor(text: str) -> Word:
    if any(ch not in "01" for ch in text):
        raise InvalidCode(f"not a binary word: {text!r}")
    return tuple(int(ch) for ch in text)


@functools.lru_cache(maxsize=None)
def cantor_descriptor() -> BasisDescriptor:
    """Finite binary words under the prefix order."""
    return _sequence_descriptor("cantor", 2, _cantor_word,
                                lambda w: "".join(str(a) for a in w), _parse_cantor)


def _baire_word(n: int) -> Word:
    letters = []
    while n:
        head, n = cantor_unpair(n - 1)
        letters.append(head)
    return tuple(letters)


def _parse_baire(text: str) -> Word:
    if text == "":
        return ()
    parts = text.split(".")
    if not all(part.isdigit() for part in parts):
        raise InvalidCode(f"not a dotted word of naturals: {text!r}")
    return tuple(int(part) for part in parts)


@functools.lru_cache(maxsize=None)
def baire_descriptor() -> BasisDescriptor:
    """Finite words of naturals under the prefix order, written ``3.0.12``."""
    return _sequence_descriptor("baire", None, _baire_word,
                                lambda w: ".".join(str(a) for a in w), _parse_baire)


@dataclass(frozen=True)
class SeqPoint:
    """A total stream ``ℕ → A`` with a display label."""
    stream: Callable[[int], int]
    label: str

    def prefix(self, n: int) -> Word:
        return tuple(self.stream(i) for i in range(n))


def periodic(word: Sequence[int], label: Optional[str] = None) -> SeqPoint:
    """The stream ``word word word ...``."""
    letters = tuple(word)
    if not letters:
        raise PreconditionViolated("a periodic stream needs a non-empty word")
    return SeqPoint(lambda i: letters[i % len(letters)],
                    label or "periodic:" + "".join(str(a) for a in letters))


def eventually_constant(word: Sequence[int], letter: int, label: Optional[str] = None) -> SeqPoint:
    """The stream ``word`` followed by ``letter`` forever."""
    letters = tuple(word)
    return SeqPoint(lambda i: letters[i] if i < len(letters) else letter,
                    label or "evconst:" + "".join(str(a) for a in letters) + f";{letter}")


def _seq_strongmax(x: ApproxElement, u: Word, v: Word) -> StrongMaxAnswer:
    if x.contains(u):
        return StrongMaxAnswer(x, u, v, 'left', member=MemberEvidence(x, u, len(v)))
    # u and the prefix of x of the same length differ, so they cannot be refined
    upper = principal(x.descriptor, v)
    low = MemberEvidence(upper, u)
    high = MemberEvidence(x, x.chain(len(u)), len(u))
    return StrongMaxAnswer(x, u, v, 'right', separation=HausdorffCert(upper, x, low, high, len(u) + 1))


def iota_seq(point: SeqPoint, descriptor: Optional[BasisDescriptor] = None) -> ApproxElement:
    """The ideal of all prefixes of ``point``, with its strong-maximality oracle.

    Membership is decided by comparing prefixes; the sharpness oracle is
    derived from the strong-maximality one.
    """
    descriptor = descriptor or cantor_descriptor()
    strongmax = StrongMaxOracle(_seq_strongmax, name="prefix")

    def chain(n: int) -> Word:
        return descriptor.validate(point.prefix(n))

    return ApproxElement(
        descriptor=descriptor,
        chain=chain,
        label=point.label,
        contains=lambda s: point.prefix(len(s)) == s,
        excludes=lambda s: point.prefix(len(s)) != s,
        sharp_oracle=sharp_from_strongmax(strongmax),
        strongmax_oracle=strongmax,
    )


def seq_apart_native(p: SeqPoint, q: SeqPoint, fuel: FuelLike) -> Optional[int]:
    """Least ``n`` in ``1..fuel`` with ``p|n ≠ q|n``, if any."""
    for i in range(as_budget(fuel)):
        if p.stream(i) != q.stream(i):
            return i + 1
    return None


# Interval domain

def _is_interval(code: object) -> bool:
    return (isinstance(code, tuple) and len(code) == 2
            and all(isinstance(e, Fraction) for e in code) and code[0] < code[1])


def _nested(a: Interval, b: Interval) -> bool:
    return a[0] < b[0] < b[1] < a[1]


def _overlap(codes: Sequence[Interval]) -> Optional[Interval]:
    if not codes:
        return None
    low = max(c[0] for c in codes)
    high = min(c[1] for c in codes)
    return (low, high) if low < high else None


def _interval_at(n: int) -> Interval:
    i, j = cantor_unpair(n)
    p = rational_at(i)
    return p, p + positive_rational_at(j)


def format_interval(code: Interval) -> str:
    return f"({format_fraction(code[0])},{format_fraction(code[1])})"


def parse_interval(text: str) -> Interval:
    """Parse ``(p/q,r/s)``; raises InvalidCode on anything else."""
    if not (text.startswith("(") and text.endswith(")")) or text.count(",") != 1:
        raise InvalidCode(f"not an interval: {text!r}")
    low, high = text[1:-1].split(",")
    code = (parse_fraction(low), parse_fraction(high))
    if not code[0] < code[1]:
        raise InvalidCode(f"empty interval: {text!r}")
    return code


def _approach_interval(b: Interval, n: int) -> Interval:
    slack = (b[1] - b[0]) / 2 ** (n + 1)
    return b[0] - slack, b[1] + slack


@functools.lru_cache(maxsize=None)
def interval_descriptor() -> BasisDescriptor:
    """Rational intervals ``(p, q)`` with ``p < q`` under strict nesting.

    ``(p, q) ≺ (r, s)`` iff ``p < r < s < q``; the rounded ideals are the
    partial Dedekind reals.
    """
    basis = AbstractBasis(name="reals", prec=_nested, is_code=_is_interval)
    return BasisDescriptor(
        basis=basis,
        enumerate=_interval_at,
        serialize=format_interval,
        parse=parse_interval,
        interpolate_fn=lambda a, b: ((a[0] + b[0]) / 2, (b[1] + a[1]) / 2),
        approach=_approach_interval,
        delta_waybelow=_nested,
        delta_below=lambda a, b: a[0] <= b[0] and b[1] <= a[1],
        bounded=lambda codes: _overlap(codes) is not None if codes else True,
        refine=lambda a, b: max(a[0], b[0]) < min(a[1], b[1]),
        join=_overlap,
    )


@dataclass(frozen=True, eq=False)
class RealPoint:
    """A real given by nested rational brackets on a geometric schedule.

    ``bracket(n) = (l, h)`` must satisfy ``l ≤ h``, ``h - l ≤ width0 / 2**n``
    and be nested in ``bracket(n - 1)``.
    """
    bracket: Callable[[int], Interval]
    label: str
    width0: Fraction = Fraction(1)

    def __post_init__(self) -> None:
        object.__setattr__(self, 'bracket', functools.lru_cache(maxsize=None)(self.bracket))

    def checked_bracket(self, n: int) -> Interval:
        low, high = self.bracket(n)
        if not (low <= high and high - low <= self.width0 / 2 ** n):
            logger.warning("%s: bracket %d breaks the width schedule", self.label, n)
            raise ScheduleViolation(f"{self.label}: bracket {n} is wider than the schedule allows")
        if n > 0:
            prev_low, prev_high = self.bracket(n - 1)
            if not (prev_low <= low and high <= prev_high):
                raise ScheduleViolation(f"{self.label}: bracket {n} is not nested in bracket {n - 1}")
        return low, high

    def approximant(self, n: int) -> Interval:
        low, high = self.checked_bracket(n)
        slack = self.width0 / 2 ** n
        return low - slack, high + slack


def real_rational(r: Fraction, label: Optional[str] = None) -> RealPoint:
    r = Fraction(r)
    return RealPoint(lambda n: (r, r), label or f"rat:{format_fraction(r)}")


def real_dyadic(r: Fraction, label: Optional[str] = None) -> RealPoint:
    """The rational ``r`` presented through dyadic brackets ``⌊r·2ⁿ⌋/2ⁿ``."""
    r = Fraction(r)

    def bracket(n: int) -> Interval:
        low = Fraction(floor(r * 2 ** n), 2 ** n)
        return low, low + Fraction(1, 2 ** n)

    return RealPoint(bracket, label or f"dyadic:{format_fraction(r)}")


def real_sqrt(n: int, base: int = 2, label: Optional[str] = None) -> RealPoint:
    """``√n`` by base-``base`` truncation: ``isqrt(n·base²ᵏ)/baseᵏ``."""
    if n < 0 or base < 2:
        raise PreconditionViolated("real_sqrt needs n ≥ 0 and base ≥ 2")

    def bracket(k: int) -> Interval:
        scale = base ** k
        root = isqrt(n * scale * scale)
        return Fraction(root, scale), Fraction(root + 1, scale)

    return RealPoint(bracket, label or (f"sqrt:{n}" if base == 2 else f"sqrt{base}:{n}"))


def _real_fuel(point: RealPoint) -> Callable[[ApproxElement, Interval, Interval], int]:
    def fuel_for(x: ApproxElement, a: Interval, b: Interval) -> int:
        gap = min(b[0] - a[0], a[1] - b[1])
        spread = 3 * point.width0 + (b[1] - b[0]) / 2
        k = 0
        while spread / 2 ** k > gap:
            k += 1
        return k + 1
    return fuel_for


def iota_real(point: RealPoint) -> ApproxElement:
    """The ideal ``{(p, q) | p < x < q}`` with locatedness-based oracles.

    Queries ``a ≺ b`` are answered by refining until the approximant is
    narrower than the gap between ``a`` and ``b``: it then either sits inside
    ``a`` or misses ``b`` on one side.
    """
    fuel_for = _real_fuel(point)
    return ApproxElement(
        descriptor=interval_descriptor(),
        chain=point.approximant,
        label=point.label,
        sharp_oracle=fuel_bounded_sharp(fuel_for, name="located"),
        strongmax_oracle=strongmax_from_refuter(fuel_for, name="located"),
    )


# Lower reals

def lower_real(chain: Callable[[int], Fraction], label: str,
               contains: Optional[Callable[[Fraction], bool]] = None,
               excludes: Optional[Callable[[Fraction], bool]] = None) -> ApproxElement:
    """A rounded ideal of ``(ℚ, <)``; decidable ones get a sharpness oracle."""
    oracle = decidable_sharp_oracle("located") if contains is not None else None
    if contains is not None and excludes is None:
        def excludes(p: Fraction) -> bool:
            return not contains(p)
    return ApproxElement(
        descriptor=rational_descriptor(),
        chain=chain,
        label=label,
        contains=contains,
        excludes=excludes,
        sharp_oracle=oracle,
    )


def lower_rational(r: Fraction, label: Optional[str] = None) -> ApproxElement:
    """``{p | p < r}``."""
    r = Fraction(r)
    return lower_real(lambda n: r - Fraction(1, 2 ** n), label or f"lower:rat:{format_fraction(r)}",
                      contains=lambda p: p < r)


def lower_sqrt(n: int, label: Optional[str] = None) -> ApproxElement:
    """``{p | p < 0 or p² < n}``."""
    if n < 0:
        raise PreconditionViolated("lower_sqrt needs n ≥ 0")

    def chain(k: int) -> Fraction:
        return Fraction(isqrt(n * 4 ** k), 2 ** k) - Fraction(1, 2 ** k)

    return lower_real(chain, label or f"lower:sqrt:{n}", contains=lambda p: p < 0 or p * p < n)


def never(stage: int) -> bool:
    return False


def flagged_lower_real(flag: Callable[[int], bool] = never, label: str = "lower:flagged") -> ApproxElement:
    """Rationals below 0, together with those below 1 once ``flag`` fires.

    While the flag has not fired nothing about the rationals in ``[0, 1)``
    is known, so the element is not located.
    """
    def chain(n: int) -> Fraction:
        fired = any(flag(i) for i in range(n + 1))
        return (1 if fired else 0) - Fraction(1, 2 ** n)

    return lower_real(chain, label, excludes=lambda p: p >= 1)


def lower_real_sharp_oracle(lower: ApproxElement) -> SharpOracle:
    """Sharpness oracle of a lower real whose membership is decidable.

    Raises:
        NotDecidable: if only a semi-decision for membership is available
    """
    if lower.contains is None:
        raise NotDecidable(f"membership in {lower.label} is not decidable")
    return decidable_sharp_oracle("located")


def upper_from_lower(lower: ApproxElement, q: Fraction, fuel: FuelLike) -> Answer:
    """Semi-decide ``q ∈ U`` where ``U = {q | ∃ s ∉ L, s < q}``.

    YES carries the witness ``s``; UNKNOWN means none was enumerated.
    """
    if lower.excludes is None:
        raise PreconditionViolated(f"{lower.label} cannot certify non-membership")
    for i in range(as_budget(fuel)):
        s = rational_at(i)
        if s < q and lower.excludes(s):
            return Answer.yes(s)
    return Answer.unknown()


def rounded_check(lower: ApproxElement, fuel: FuelLike) -> CheckReport:
    """Spot-check that enumerated members of ``lower`` have larger members."""
    report = CheckReport(name=f"rounded[{lower.label}]")
    budget = as_budget(fuel)
    for i in range(budget):
        p = rational_at(i)
        if not lower.member(p, budget).is_yes:
            continue
        report.checked += 1
        if not any(lower.chain(m) > p and lower.member(lower.chain(m), budget).is_yes
                   for m in range(budget)):
            report.fail(f"no member above {format_fraction(p)}")
    return report


@dataclass(frozen=True, eq=False)
class Location:
    """Answer of a locatedness decision for ``lower < upper``.

    ``side == 'lower'`` carries ``member`` (``lower ∈ L``); ``side == 'upper'``
    carries ``excluded``, a rational ``s < upper`` outside ``L`` (so
    ``upper ∈ U``).
    """
    element: ApproxElement
    lower: Fraction
    upper: Fraction
    side: str
    member: Optional[MemberEvidence] = None
    excluded: Optional[Fraction] = None

    def to_dict(self) -> dict:
        data = {
            'kind': 'located',
            'element': self.element.label,
            'query': [format_fraction(self.lower), format_fraction(self.upper)],
            'side': self.side,
        }
        if self.member is not None:
            data['member'] = self.member.to_dict()
        if self.excluded is not None:
            data['witness'] = format_fraction(self.excluded)
        return data


Locator = Callable[[Fraction, Fraction], Location]


def locate(lower: ApproxElement, p: Fraction, q: Fraction) -> Location:
    """Decide ``p ∈ L`` or ``q ∈ U`` from the element's sharpness oracle.

    The oracle is asked about ``p`` and the midpoint ``m``: a refutation of
    ``↓m`` names some ``s < m < q`` outside ``L``.
    """
    if not p < q:
        raise PreconditionViolated("locate needs p < q")
    if lower.sharp_oracle is None:
        raise NotDecidable(f"{lower.label} carries no sharpness oracle")
    answer = lower.sharp_oracle(lower, p, (p + q) / 2)
    if answer.side == 'left':
        return Location(lower, p, q, 'lower', member=answer.member)
    refutation = answer.refutation
    if refutation.kind != 'excluded':
        raise NotDecidable("refutation does not name a rational outside the lower real")
    return Location(lower, p, q, 'upper', excluded=refutation.code)


def located_from_sharp(lower: ApproxElement) -> Locator:
    """Locatedness of ``(L, U)`` from sharpness."""
    return functools.partial(locate, lower)


def decidable_locator(lower: ApproxElement) -> Locator:
    """Locatedness read off an exact membership decision."""
    if lower.contains is None:
        raise NotDecidable(f"membership in {lower.label} is not decidable")

    def locator(p: Fraction, q: Fraction) -> Location:
        if lower.contains(p):
            return Location(lower, p, q, 'lower', member=MemberEvidence(lower, p))
        return Location(lower, p, q, 'upper', excluded=p)

    return locator


def sharp_from_located(locator: Locator) -> SharpOracle:
    """Sharpness from locatedness: ``p ∈ L`` answers left, ``s ∉ L`` with ``s < q`` right."""

    def procedure(x: ApproxElement, a: Fraction, b: Fraction) -> Optional[SharpAnswer]:
        location = locator(a, b)
        if location.side == 'lower':
            return SharpAnswer(x, a, b, 'left', member=location.member)
        witness = RefuteBelowWitness(x, b, location.excluded, 'excluded')
        return SharpAnswer(x, a, b, 'right', refutation=witness)

    return SharpOracle(procedure, primitive=True, name="from-located")


def replay_location(location: Location) -> bool:
    element = location.element
    if location.side == 'lower':
        return (location.member is not None and location.member.code == location.lower
                and replay_member(location.member))
    return (location.excluded is not None and location.excluded < location.upper
            and element.excludes is not None and bool(element.excludes(location.excluded)))


# Finite domains

@functools.lru_cache(maxsize=None)
def descriptor_from_poset(poset: FinitePoset) -> BasisDescriptor:
    """An algebraic descriptor whose codes are the labels of ``poset``."""
    if poset.n == 0:
        raise PreconditionViolated("a basis needs at least one element")
    labels = poset.labels
    least = poset.least

    def le(a: str, b: str) -> bool:
        return poset.le(a, b)

    def join(codes: Sequence[str]) -> Optional[str]:
        top = poset.lub(poset.mask_of(codes))
        return None if top is None else labels[top]

    def parse(text: str) -> str:
        if text not in poset.index:
            raise InvalidCode(f"{text!r} is not an element of {poset.name}")
        return text

    basis = AbstractBasis(name=poset.name, prec=le, is_code=lambda c: c in poset.index, reflexive=True)
    return BasisDescriptor(
        basis=basis,
        enumerate=lambda n: labels[n % poset.n],
        serialize=str,
        parse=parse,
        delta_bot=None if least is None else (lambda b: b == labels[least]),
        delta_waybelow=le,
        delta_below=le,
        bounded=lambda codes: poset.upper_bounds(poset.mask_of(codes)) != 0,
        refine=lambda a, b: poset.upper_bounds(poset.mask_of((a, b))) != 0,
        join=join,
        bottom=None if least is None else labels[least],
        size=poset.n,
    )


def _finite_strongmax(poset: FinitePoset) -> StrongMaxOracle:
    descriptor = descriptor_from_poset(poset)

    def procedure(x: ApproxElement, u: str, v: str) -> Optional[StrongMaxAnswer]:
        if x.contains(u):
            return StrongMaxAnswer(x, u, v, 'left', member=MemberEvidence(x, u))
        upper = principal(descriptor, v)
        for a in descriptor.all_codes():
            for b in descriptor.all_codes():
                if upper.contains(a) and x.contains(b) and not descriptor.refine(a, b):
                    cert = HausdorffCert(upper, x, MemberEvidence(upper, a), MemberEvidence(x, b), 1)
                    return StrongMaxAnswer(x, u, v, 'right', separation=cert)
        return None

    return StrongMaxOracle(procedure, name="finite")


def finite_element(poset: FinitePoset, label: str) -> ApproxElement:
    """The principal ideal of ``label``, sharp, and strongly maximal when it is."""
    descriptor = descriptor_from_poset(poset)
    element = principal(descriptor, descriptor.parse(label))
    strongmax = _finite_strongmax(poset) if label in strongly_maximal(poset) else None
    return dataclasses.replace(element, label=label, sharp_oracle=decidable_sharp_oracle("finite"),
                               strongmax_oracle=strongmax)


FiniteDomain = Tuple[FinitePoset, BasisDescriptor]


def sierpinski_and_powerset(n: int) -> Tuple[FiniteDomain, FiniteDomain]:
    """``𝕊`` and ``𝒫({0..n-1})``, each as a finite poset paired with its descriptor.

    Raises:
        SizeTooLarge: if ``n > 5``
    """
    if n > 5:
        raise SizeTooLarge(f"powerset of {n} points is too large for the finite domains")
    sierpinski, powerset = sierpinski_poset(), powerset_poset(n)
    return ((sierpinski, descriptor_from_poset(sierpinski)),
            (powerset, descriptor_from_poset(powerset)))


def sierpinski_descriptor() -> BasisDescriptor:
    return descriptor_from_poset(sierpinski_poset())


def powerset_descriptor(n: int) -> BasisDescriptor:
    return sierpinski_and_powerset(n)[1][1]


def three_point_descriptor() -> BasisDescriptor:
    return descriptor_from_poset(three_point_poset())


def _subset_of_label(label: str) -> frozenset:
    inner = label.strip("{}")
    return frozenset(int(part) for part in inner.split(",")) if inner else frozenset()


def powerset_orientation_report(n: int = 3) -> CheckReport:
    """Compare both readings of ``A ⋢̸̸ B`` on ``𝒫({0..n-1})`` with the oracle.

    One reading asks for ``A ∖ B`` to be inhabited, the other for ``B ∖ A``.
    The report passes when the oracle and the certificate search both agree
    with the first reading; ``details`` records which readings agree.
    """
    _, (poset, descriptor) = sierpinski_and_powerset(n)
    report = CheckReport(name=f"powerset-orientation[{n}]")
    agrees = {'a_minus_b': True, 'b_minus_a': True}
    elements = {label: principal(descriptor, label) for label in poset.labels}
    for a in poset.labels:
        for b in poset.labels:
            report.checked += 1
            oracle = not_not_below_oracle(poset, a, b) is not None
            certified = search_not_below(elements[a], elements[b], poset.n + 1) is not None
            a_set, b_set = _subset_of_label(a), _subset_of_label(b)
            agrees['a_minus_b'] &= oracle == bool(a_set - b_set)
            agrees['b_minus_a'] &= oracle == bool(b_set - a_set)
            if certified != oracle:
                report.fail(f"certificate search and oracle disagree on ({a}, {b})")
    report.details.update(agrees)
    if not agrees['a_minus_b']:
        report.fail("A ⋢̸̸ B does not match A ∖ B inhabited")
    return report
