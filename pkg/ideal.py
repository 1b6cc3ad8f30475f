"""Elements of rounded ideal completions and their fuel-bounded semi-deciders.

An element is presented by a ≺-increasing chain of basis codes; the ideal it
denotes is the union of the principal ideals of the chain entries. Positive
facts (``b ≪ x``) are found by scanning the chain, negative facts
(``↓b ⋢ x``) only with a replayable RefuteBelowWitness.
"""
import functools
from dataclasses import dataclass
from typing import Any, Callable, Optional

from errors import DescriptorMismatch, PreconditionViolated
from models import (Answer, CheckReport, FuelLike, MemberEvidence,
                    NotNotBelowCert, RefuteBelowWitness, as_budget)
from order_core import BasisDescriptor, Code, diagonal
from settings import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True, eq=False)
class ApproxElement:
    """An element of ``Idl(B, ≺)`` given by an approximant chain.

    Attributes:
        descriptor: the basis the chain lives in
        chain: ``chain(n) ≺ chain(n + 1)``; the element is ``⋃ ↓chain(n)``
        label: reference used in certificates and CLI output
        contains: exact decision for ``b ∈ x`` (principal and decidable elements)
        excludes: sound decision certifying ``b ∉ x`` (may answer False when unsure)
        principal_code: ``b`` when the element is the principal ideal ``↓b``
        sharp_oracle: total procedure answering sharpness queries
        strongmax_oracle: total procedure answering strong-maximality queries
    """
    descriptor: BasisDescriptor
    chain: Callable[[int], Code]
    label: str
    contains: Optional[Callable[[Code], bool]] = None
    excludes: Optional[Callable[[Code], bool]] = None
    principal_code: Optional[Code] = None
    sharp_oracle: Optional[Callable[..., Any]] = None
    strongmax_oracle: Optional[Callable[..., Any]] = None

    def __post_init__(self) -> None:
        # chains are pure functions of the index; memoize them
        object.__setattr__(self, 'chain', functools.lru_cache(maxsize=None)(self.chain))

    def __repr__(self) -> str:
        return f"ApproxElement({self.label})"

    def member_evidence_for_chain(self, n: int) -> MemberEvidence:
        """Evidence that ``chain(n)`` itself lies in the element."""
        index = n if self.descriptor.reflexive else n + 1
        return MemberEvidence(self, self.chain(n), index)

    def member(self, b: Code, fuel: FuelLike) -> Answer:
        """Semi-decide ``↓b ≪ x`` (equivalently ``b ∈ x``).

        Returns YES with MemberEvidence, otherwise UNKNOWN; never NO.
        """
        self.descriptor.validate(b)
        budget = as_budget(fuel)
        if self.contains is not None:
            return Answer.yes(MemberEvidence(self, b)) if self.contains(b) else Answer.unknown()
        for n in range(budget):
            if self.descriptor.prec(b, self.chain(n)):
                return Answer.yes(MemberEvidence(self, b, n))
        return Answer.unknown()

    def refute_below(self, b: Code, fuel: FuelLike) -> Optional[RefuteBelowWitness]:
        """Search for evidence that ``↓b ⊑ x`` fails; ``None`` means not found yet."""
        self.descriptor.validate(b)
        for k in range(as_budget(fuel)):
            witness = self.refute_at(b, k)
            if witness is not None:
                return witness
        return None

    def refute_at(self, b: Code, k: int) -> Optional[RefuteBelowWitness]:
        """The single refutation attempt of stage ``k``.

        The candidate below ``b`` is ``b`` itself for reflexive bases and
        ``approach(b, k)`` otherwise; it is tested against the exclusion
        decision and against refinability with ``chain(k)``.
        """
        descriptor = self.descriptor
        if descriptor.reflexive:
            candidate = b
            try_excludes = k == 0
        elif descriptor.approach is not None:
            candidate = descriptor.approach(b, k)
            try_excludes = True
        else:
            return None
        if try_excludes and self.excludes is not None and self.excludes(candidate):
            return RefuteBelowWitness(self, b, candidate, 'excluded')
        if descriptor.refine is not None:
            blocker = self.member_evidence_for_chain(k)
            if not descriptor.refine(candidate, blocker.code):
                return RefuteBelowWitness(self, b, candidate, 'disjoint', blocker)
        oracle = self.sharp_oracle
        if oracle is not None and getattr(oracle, 'primitive', False):
            answer = oracle(self, candidate, b)
            if answer.side == 'right':
                return answer.refutation
        return None


def _same_descriptor(x: ApproxElement, y: ApproxElement) -> None:
    if x.descriptor is not y.descriptor:
        raise DescriptorMismatch(
            f"{x.label} ({x.descriptor.name}) and {y.label} ({y.descriptor.name}) "
            "live in different bases"
        )


def principal(descriptor: BasisDescriptor, b: Code) -> ApproxElement:
    """The principal ideal ``↓b = {a | a ≺ b}``.

    For reflexive bases the chain is constantly ``b``; otherwise it is the
    descriptor's ``approach`` sequence towards ``b``.

    Raises:
        InvalidCode: if ``b`` is not a code of the basis
        PreconditionViolated: if a non-reflexive basis supplies no ``approach``
    """
    descriptor.validate(b)
    if descriptor.reflexive:
        chain: Callable[[int], Code] = lambda n: b
    elif descriptor.approach is not None:
        approach = descriptor.approach
        chain = lambda n: approach(b, n)
    else:
        raise PreconditionViolated(f"The {descriptor.name} basis cannot approach codes from below")
    return ApproxElement(
        descriptor=descriptor,
        chain=chain,
        label=f"↓{descriptor.serialize(b)}",
        contains=lambda a: descriptor.prec(a, b),
        excludes=lambda a: not descriptor.prec(a, b),
        principal_code=b,
    )


def way_below(y: ApproxElement, b: Code, fuel: FuelLike) -> Answer:
    """Semi-decide ``↓b ≪ y``.

    YES carries MemberEvidence, NO carries a RefuteBelowWitness for
    ``↓b ⋢ y``, UNKNOWN means neither was found within ``fuel``.

    Raises:
        DescriptorMismatch: if ``b`` is not a code of ``y``'s basis
    """
    try:
        y.descriptor.validate(b)
    except ValueError as e:
        raise DescriptorMismatch(str(e)) from e
    answer = y.member(b, fuel)
    if answer.is_yes:
        return answer
    refutation = y.refute_below(b, fuel)
    if refutation is not None:
        return Answer.no(refutation)
    return Answer.unknown()


def nnb_stage(x: ApproxElement, y: ApproxElement, stage: int) -> Optional[NotNotBelowCert]:
    """Run the search for ``x ⋢̸̸ y`` restricted to one stage.

    Stage ``s`` inspects the index pairs ``(t, k)`` with ``max(t, k) == s``:
    the candidate codes are ``x.chain(t)`` and ``enumerate(t)`` (the latter
    when it sits below ``x.chain(k)``), each refuted against ``y`` at
    refutation stage ``k``.
    """
    descriptor = x.descriptor
    for t, k in diagonal(stage):
        member = x.member_evidence_for_chain(t)
        refutation = y.refute_at(member.code, k)
        if refutation is not None:
            return NotNotBelowCert(x, y, member.code, member, refutation, stage + 1)
        b = descriptor.enumerate(t)
        if descriptor.prec(b, x.chain(k)):
            refutation = y.refute_at(b, k)
            if refutation is not None:
                member = MemberEvidence(x, b, k)
                return NotNotBelowCert(x, y, b, member, refutation, stage + 1)
    return None


def search_not_below(x: ApproxElement, y: ApproxElement, fuel: FuelLike) -> Optional[NotNotBelowCert]:
    """First certificate for ``x ⋢̸̸ y`` over stages ``0..fuel-1``."""
    _same_descriptor(x, y)
    for stage in range(as_budget(fuel)):
        cert = nnb_stage(x, y, stage)
        if cert is not None:
            logger.debug("%s ⋢̸̸ %s found at stage %d", x.label, y.label, stage)
            return cert
    return None


def _exact_below(x: ApproxElement, y: ApproxElement) -> Optional[bool]:
    descriptor = x.descriptor
    if (x.principal_code is not None and y.principal_code is not None
            and descriptor.delta_below is not None):
        return descriptor.delta_below(x.principal_code, y.principal_code)
    if x.principal_code is not None and descriptor.reflexive and y.contains is not None:
        return y.contains(x.principal_code)
    if descriptor.is_finite and x.contains is not None and y.contains is not None:
        return all(y.contains(a) for a in descriptor.all_codes() if x.contains(a))
    return None


def below(x: ApproxElement, y: ApproxElement, fuel: FuelLike) -> Answer:
    """Semi-decide ``x ⊑ y``.

    NO carries a NotNotBelowCert (a code way below ``x`` whose principal
    ideal is refuted against ``y``). YES is only given when the pair admits an
    exact decision: principal ideals with δ⊑, a compact ``x`` against a
    decidable ``y``, or finite bases.
    """
    _same_descriptor(x, y)
    if _exact_below(x, y):
        return Answer.yes('decided')
    cert = search_not_below(x, y, fuel)
    if cert is not None:
        return Answer.no(cert)
    return Answer.unknown()


def chain_monotone_check(x: ApproxElement, fuel: FuelLike) -> CheckReport:
    """Validate the chain invariant and member/refuter coherence up to ``fuel``."""
    budget = as_budget(fuel)
    descriptor = x.descriptor
    show = descriptor.serialize
    report = CheckReport(name=f"chain[{x.label}]")
    for n in range(budget):
        report.checked += 1
        if n + 1 < budget and not descriptor.prec(x.chain(n), x.chain(n + 1)):
            report.fail(f"chain not ≺-increasing at index {n}")
        if not x.member(x.chain(n), x.member_evidence_for_chain(n).chain_index + 1).is_yes:
            report.fail(f"chain entry {n} ({show(x.chain(n))}) not confirmed as member")
        for b in (x.chain(n), descriptor.enumerate(n)):
            if x.member(b, budget).is_yes and x.refute_below(b, budget) is not None:
                report.fail(f"member and refutation coexist for {show(b)} at index {n}")
    return report


def replay_member(evidence: MemberEvidence) -> bool:
    """Re-check MemberEvidence from the element's decisions and chain."""
    element = evidence.element
    descriptor = element.descriptor
    try:
        descriptor.validate(evidence.code)
    except ValueError:
        return False
    if evidence.chain_index is None:
        return element.contains is not None and bool(element.contains(evidence.code))
    return descriptor.prec(evidence.code, element.chain(evidence.chain_index))


def replay_refutation(witness: RefuteBelowWitness) -> bool:
    """Re-check a RefuteBelowWitness using descriptor decisions only."""
    element = witness.element
    descriptor = element.descriptor
    if not descriptor.prec(witness.code, witness.target):
        return False
    if witness.kind == 'excluded':
        return element.excludes is not None and bool(element.excludes(witness.code))
    if witness.kind == 'disjoint':
        blocker = witness.blocker
        return (blocker is not None and blocker.element is element
                and descriptor.refine is not None
                and replay_member(blocker)
                and not descriptor.refine(witness.code, blocker.code))
    return False
