"""Certificate-producing procedures for ⋢̸̸, #, sharpness and strong maximality.

Every positive answer produced here is a certificate that ``replay`` can
re-check using only descriptor decisions, chain entries and exact membership
decisions. ``None`` (or an UNKNOWN answer) means "not found within fuel" and
never "not apart".
"""
from dataclasses import dataclass
from typing import Any, Callable, Optional, Sequence

from errors import (DescriptorMismatch, FuelExhausted, MissingDeltaBot,
                    MissingRefineDecision, OracleFailure, PreconditionViolated)
from ideal import (ApproxElement, _same_descriptor, nnb_stage, principal,
                   replay_member, replay_refutation, search_not_below, way_below)
from models import (Answer, ApartCert, CheckReport, FuelLike, HausdorffCert,
                    MemberEvidence, NotNotBelowCert, RefuteBelowWitness,
                    SharpAnswer, SmythWitness, StrongMaxAnswer, as_budget)
from order_core import Code, diagonal, interpolate
from settings import get_logger

logger = get_logger(__name__)


class SharpOracle:
    """A total procedure answering ``a ≪ x`` or ``↓b ⋢ x`` for every ``a ≺ b``.

    Args:
        procedure: ``procedure(x, a, b)`` returning a SharpAnswer
        primitive: True when the procedure does not itself call the element's
            refuter, so the refuter may fall back on it
        name: short description for logs
    """

    def __init__(self, procedure: Callable[[ApproxElement, Code, Code], Optional[SharpAnswer]],
                 primitive: bool = False, name: str = "sharp") -> None:
        self.procedure = procedure
        self.primitive = primitive
        self.name = name

    def __call__(self, x: ApproxElement, a: Code, b: Code) -> SharpAnswer:
        _check_query(x, a, b)
        answer = self.procedure(x, a, b)
        if answer is None:
            logger.warning("%s oracle of %s gave no answer on a query", self.name, x.label)
            raise OracleFailure(f"{self.name} oracle of {x.label} did not answer")
        return answer


class StrongMaxOracle:
    """A total procedure answering ``u ≪ x`` or "``↓v`` and ``x`` are Hausdorff separated"."""

    def __init__(self, procedure: Callable[[ApproxElement, Code, Code], Optional[StrongMaxAnswer]],
                 name: str = "strongmax") -> None:
        self.procedure = procedure
        self.name = name

    def __call__(self, x: ApproxElement, u: Code, v: Code) -> StrongMaxAnswer:
        _check_query(x, u, v)
        answer = self.procedure(x, u, v)
        if answer is None:
            logger.warning("%s oracle of %s gave no answer on a query", self.name, x.label)
            raise OracleFailure(f"{self.name} oracle of {x.label} did not answer")
        return answer


def _check_query(x: ApproxElement, a: Code, b: Code) -> None:
    descriptor = x.descriptor
    descriptor.validate(a)
    descriptor.validate(b)
    if not descriptor.prec(a, b):
        raise PreconditionViolated(
            f"oracle query needs {descriptor.serialize(a)} ≺ {descriptor.serialize(b)}"
        )


# Sharpness

def sharp_probe(x: ApproxElement, a: Code, b: Code, fuel: FuelLike) -> Answer:
    """Fuel-bounded search for either disjunct of "``a ≪ x`` or ``↓b ⋢ x``".

    YES carries a left SharpAnswer, NO a right one, UNKNOWN means neither
    side was established within ``fuel``.
    """
    _check_query(x, a, b)
    member = x.member(a, fuel)
    if member.is_yes:
        return Answer.yes(SharpAnswer(x, a, b, 'left', member=member.witness))
    refutation = x.refute_below(b, fuel)
    if refutation is not None:
        return Answer.no(SharpAnswer(x, a, b, 'right', refutation=refutation))
    return Answer.unknown()


def fuel_bounded_sharp(fuel_for: Callable[[ApproxElement, Code, Code], int],
                       name: str = "sharp") -> SharpOracle:
    """A SharpOracle that runs ``sharp_probe`` at a fuel the element guarantees suffices."""

    def procedure(x: ApproxElement, a: Code, b: Code) -> Optional[SharpAnswer]:
        fuel = fuel_for(x, a, b)
        answer = sharp_probe(x, a, b, fuel)
        if answer.is_unknown:
            return None
        logger.debug("%s: sharp query answered %s at fuel %d", x.label, answer.witness.side, fuel)
        return answer.witness

    return SharpOracle(procedure, name=name)


def decidable_sharp_oracle(name: str = "decided") -> SharpOracle:
    """Sharpness oracle for elements with an exact membership decision.

    Either ``a`` is a member, or ``a`` itself is a code below ``b`` outside
    the element.
    """

    def procedure(x: ApproxElement, a: Code, b: Code) -> Optional[SharpAnswer]:
        if x.contains is None or x.excludes is None:
            return None
        if x.contains(a):
            return SharpAnswer(x, a, b, 'left', member=MemberEvidence(x, a))
        if x.excludes(a):
            return SharpAnswer(x, a, b, 'right', refutation=RefuteBelowWitness(x, b, a, 'excluded'))
        return None

    return SharpOracle(procedure, primitive=True, name=name)


def sharp_from_strongmax(oracle: StrongMaxOracle) -> SharpOracle:
    """Derive a sharpness oracle from a strong-maximality oracle.

    A Hausdorff separation of ``↓b`` from ``x`` is a code ``a' ≺ b`` that
    cannot be refined with some member of ``x``, which is exactly a disjoint
    refutation of ``↓b ⊑ x``.
    """

    def procedure(x: ApproxElement, a: Code, b: Code) -> Optional[SharpAnswer]:
        answer = oracle(x, a, b)
        if answer.side == 'left':
            return SharpAnswer(x, a, b, 'left', member=answer.member)
        separation = answer.separation
        if separation is None or separation.high.element is not x:
            return None
        refutation = RefuteBelowWitness(x, b, separation.low.code, 'disjoint', separation.high)
        return SharpAnswer(x, a, b, 'right', refutation=refutation)

    return SharpOracle(procedure, name=f"sharp<-{oracle.name}")


def strongmax_from_refuter(fuel_for: Callable[[ApproxElement, Code, Code], int],
                           name: str = "strongmax") -> StrongMaxOracle:
    """A StrongMaxOracle for elements whose refutations are disjointness-based."""

    def procedure(x: ApproxElement, u: Code, v: Code) -> Optional[StrongMaxAnswer]:
        answer = sharp_probe(x, u, v, fuel_for(x, u, v))
        if answer.is_unknown:
            return None
        sharp = answer.witness
        if sharp.side == 'left':
            return StrongMaxAnswer(x, u, v, 'left', member=sharp.member)
        refutation = sharp.refutation
        if refutation.kind != 'disjoint' or refutation.blocker is None:
            return None
        upper = principal(x.descriptor, v)
        low = MemberEvidence(upper, refutation.code)
        cert = HausdorffCert(upper, x, low, refutation.blocker, fuel_for(x, u, v))
        return StrongMaxAnswer(x, u, v, 'right', separation=cert)

    return StrongMaxOracle(procedure, name=name)


# Specialization and apartness

def not_not_below(x: ApproxElement, y: ApproxElement, fuel: FuelLike) -> Optional[NotNotBelowCert]:
    """Certificate that some Scott open contains ``x`` but not ``y``.

    Scans chain entries of ``x`` and enumerated codes below them for a code
    ``b ≪ x`` whose principal ideal is refuted against ``y``.

    Raises:
        DescriptorMismatch: if the elements live in different bases
    """
    return search_not_below(x, y, fuel)


def intrinsic_apart(x: ApproxElement, y: ApproxElement, fuel: FuelLike) -> Optional[ApartCert]:
    """Certificate for ``x # y``, alternating both directions stage by stage."""
    _same_descriptor(x, y)
    if x is y:
        return None
    for stage in range(as_budget(fuel)):
        inner = nnb_stage(x, y, stage) or nnb_stage(y, x, stage)
        if inner is not None:
            logger.debug("%s # %s at stage %d", x.label, y.label, stage)
            return ApartCert(x, y, inner)
    return None


def symmetric(cert: ApartCert) -> ApartCert:
    """The same separation read as ``y # x``."""
    return ApartCert(cert.right, cert.left, cert.inner)


def apart_from_bottom(x: ApproxElement, fuel: FuelLike,
                      bottom: Optional[ApproxElement] = None) -> Optional[ApartCert]:
    """Certificate for ``x # ⊥`` from a chain entry that is not the least code.

    Lower reals live in Idl(ℚ, <), which has no least element, so they
    raise MissingDeltaBot.

    Raises:
        MissingDeltaBot: if the descriptor cannot decide "b is the least code"
    """
    descriptor = x.descriptor
    if descriptor.delta_bot is None or descriptor.bottom is None:
        raise MissingDeltaBot(f"The {descriptor.name} basis has no δ⊥ decision")
    if bottom is None:
        bottom = principal(descriptor, descriptor.bottom)
    _same_descriptor(x, bottom)
    budget = as_budget(fuel)
    for n in range(budget):
        b = x.chain(n)
        if descriptor.delta_bot(b):
            continue
        refutation = bottom.refute_below(b, budget)
        if refutation is not None:
            inner = NotNotBelowCert(x, bottom, b, x.member_evidence_for_chain(n), refutation, n + 1)
            return ApartCert(x, bottom, inner)
    return None


@dataclass(frozen=True)
class CotransitOutcome:
    """Result of cotransitivity: ``branch`` is ``'x'`` for ``x # z`` and ``'y'`` for ``y # z``."""
    branch: str
    cert: ApartCert


def cotransit(cert: ApartCert, z: ApproxElement, fuel: FuelLike) -> CotransitOutcome:
    """From ``x # y`` and a sharp ``z``, produce ``x # z`` or ``y # z``.

    Let ``b ≪ u`` with ``↓b ⋢ w`` be the certificate's witness, where
    ``(u, w)`` is ``(x, y)`` or ``(y, x)``. Interpolating ``b ≺ c ≺ d`` with
    ``d`` a chain entry of ``u`` and asking ``z``'s oracle about ``(b, c)``
    gives either ``b ≪ z`` (so ``z ⋢̸̸ w``) or ``↓c ⋢ z`` (so ``u ⋢̸̸ z``).

    Raises:
        PreconditionViolated: if the certificate does not replay or ``z`` has no oracle
        FuelExhausted: if no chain entry of ``u`` above the witness is found within fuel
        OracleFailure: if the oracle does not answer
    """
    if z.sharp_oracle is None:
        raise PreconditionViolated(f"{z.label} carries no sharpness oracle")
    if not replay(cert):
        raise PreconditionViolated("cotransit needs a certificate that replays")
    _same_descriptor(cert.left, z)
    inner = cert.inner
    u, w, b = inner.left, inner.right, inner.code
    descriptor = u.descriptor

    index = inner.member.chain_index
    if index is None:
        index = next((n for n in range(as_budget(fuel)) if descriptor.prec(b, u.chain(n))), None)
        if index is None:
            raise FuelExhausted(f"no approximant of {u.label} above the witness within fuel")
    d = u.chain(index)
    c = interpolate(descriptor, b, d)
    answer = z.sharp_oracle(z, b, c)
    if answer.side == 'left':
        separated = NotNotBelowCert(z, w, b, answer.member, inner.refutation, inner.replay_fuel)
        result = ApartCert(w, z, separated)
        branch = 'x' if w is cert.left else 'y'
    else:
        member_c = MemberEvidence(u, c, index)
        separated = NotNotBelowCert(u, z, c, member_c, answer.refutation, inner.replay_fuel)
        result = ApartCert(u, z, separated)
        branch = 'x' if u is cert.left else 'y'
    return CotransitOutcome(branch, result)


def tight_consequence(x: ApproxElement, y: ApproxElement, fuel: FuelLike,
                      expect_equal: bool = False) -> CheckReport:
    """Consistency check for tightness on a sharp ``y``.

    Runs the ``x ⋢̸̸ y`` search and asks ``y``'s oracle about consecutive
    approximants of ``x``; each left answer confirms ``chain(n) ≪ y``. With
    ``expect_equal`` the pair is known to denote one element, so neither
    search may produce a certificate.
    """
    report = CheckReport(name=f"tight[{x.label}, {y.label}]")
    if y.sharp_oracle is None:
        report.fail(f"{y.label} carries no sharpness oracle")
        return report
    budget = as_budget(fuel)
    cert = search_not_below(x, y, budget)
    oracle_cert = None
    confirmed = 0
    for n in range(budget):
        report.checked += 1
        answer = y.sharp_oracle(y, x.chain(n), x.chain(n + 1))
        if answer.side == 'left':
            confirmed += 1
            continue
        oracle_cert = NotNotBelowCert(x, y, x.chain(n + 1), x.member_evidence_for_chain(n + 1),
                                      answer.refutation, n + 2)
        break
    report.details['confirmed_way_below'] = confirmed
    for found in (cert, oracle_cert):
        if found is not None:
            report.details.setdefault('certificates', []).append(found.to_dict())
            if not replay(found):
                report.fail("emitted certificate does not replay")
            elif expect_equal:
                report.fail(f"equal elements separated by {x.descriptor.serialize(found.code)}")
    return report


# Hausdorff separation and strong maximality

def hausdorff_separated(x: ApproxElement, y: ApproxElement, fuel: FuelLike) -> Optional[HausdorffCert]:
    """Certificate of disjoint Scott neighbourhoods: chain entries that cannot be refined.

    Raises:
        MissingRefineDecision: if the descriptor cannot decide ``a ⇈ b``
    """
    _same_descriptor(x, y)
    refine = x.descriptor.refine
    if refine is None:
        raise MissingRefineDecision(f"The {x.descriptor.name} basis has no refinement decision")
    if x is y:
        return None
    for stage in range(as_budget(fuel)):
        for i, j in diagonal(stage):
            low = x.member_evidence_for_chain(i)
            high = y.member_evidence_for_chain(j)
            if not refine(low.code, high.code):
                return HausdorffCert(x, y, low, high, stage + 1)
    return None


def _approximant_above(x: ApproxElement, evidence: MemberEvidence, fuel: FuelLike) -> MemberEvidence:
    """A chain entry ``d`` of ``x`` with ``evidence.code ≺ d``, as evidence ``d ∈ x``."""
    index = evidence.chain_index
    if index is None:
        descriptor = x.descriptor
        index = next((n for n in range(as_budget(fuel))
                      if descriptor.prec(evidence.code, x.chain(n))), None)
        if index is None:
            raise FuelExhausted(f"no approximant of {x.label} above the evidence within fuel")
    return x.member_evidence_for_chain(index)


def apart_from_hausdorff(cert: HausdorffCert, fuel: FuelLike = 64) -> ApartCert:
    """Turn disjoint neighbourhoods into an apartness certificate.

    With ``a ≪ x``, ``b ≪ y`` and ``¬(a ⇈ b)``, a chain entry ``d`` of ``x``
    above ``a`` is way below ``x`` while ``a ≺ d`` is excluded from ``y`` by
    ``b``.
    """
    x, y = cert.left, cert.right
    low = cert.low
    if x.descriptor.reflexive:
        dominating = low
    else:
        dominating = _approximant_above(x, low, fuel)
    refutation = RefuteBelowWitness(y, dominating.code, low.code, 'disjoint', cert.high)
    inner = NotNotBelowCert(x, y, dominating.code, dominating, refutation, cert.replay_fuel)
    return ApartCert(x, y, inner)


def smyth_maximal_probe(x: ApproxElement, u: Code, v: Code, fuel: FuelLike) -> SmythWitness:
    """Smyth-form witness for ``u ≺ v`` obtained from ``x``'s strong-maximality oracle.

    Raises:
        OracleFailure: if ``x`` has no strong-maximality oracle or it does not answer
    """
    oracle = x.strongmax_oracle
    if oracle is None:
        raise OracleFailure(f"{x.label} carries no strong-maximality oracle")
    answer = oracle(x, u, v)
    descriptor = x.descriptor
    if answer.side == 'left':
        approximant = _approximant_above(x, answer.member, fuel)
        return SmythWitness(x, u, v, approximant, 'below')
    separation = answer.separation
    if separation is None:
        raise OracleFailure("strong-maximality oracle returned an empty separation")
    approximant = _approximant_above(x, separation.high, fuel)
    d_ideal = principal(descriptor, approximant.code)
    high = MemberEvidence(d_ideal, separation.high.code)
    smyth = HausdorffCert(separation.left, d_ideal, separation.low, high, separation.replay_fuel)
    return SmythWitness(x, u, v, approximant, 'separated', smyth)


# Lawson subbasics

@dataclass(frozen=True, eq=False)
class LawsonSubbasic:
    """A basic Scott open ``↟b`` (``code`` set) or a co-set ``{y | z ⋢̸̸ y}`` (``element`` set)."""
    code: Any = None
    element: Optional[ApproxElement] = None

    @property
    def kind(self) -> str:
        return 'scott' if self.element is None else 'co'

    @classmethod
    def scott(cls, code: Code) -> 'LawsonSubbasic':
        return cls(code=code)

    @classmethod
    def co(cls, element: ApproxElement) -> 'LawsonSubbasic':
        return cls(element=element)


def lawson_neighbourhood_member(x: ApproxElement, sub: LawsonSubbasic, fuel: FuelLike) -> Answer:
    """Semi-decide membership of ``x`` in a subbasic Lawson open."""
    if sub.element is None:
        return way_below(x, sub.code, fuel)
    if sub.element.descriptor is not x.descriptor:
        raise DescriptorMismatch(f"{sub.element.label} and {x.label} live in different bases")
    cert = search_not_below(sub.element, x, fuel)
    return Answer.yes(cert) if cert is not None else Answer.unknown()


def lawson_intersection_member(x: ApproxElement, subs: Sequence[LawsonSubbasic],
                               fuel: FuelLike) -> Answer:
    """Membership in a finite intersection of subbasics (depth 2 in practice)."""
    witnesses = []
    unknown = False
    for sub in subs:
        answer = lawson_neighbourhood_member(x, sub, fuel)
        if answer.is_no:
            return answer
        if answer.is_unknown:
            unknown = True
        witnesses.append(answer.witness)
    return Answer.unknown() if unknown else Answer.yes(tuple(witnesses))


# Replay

def replay_not_not_below(cert: NotNotBelowCert) -> bool:
    return (cert.member.element is cert.left
            and cert.member.code == cert.code
            and replay_member(cert.member)
            and cert.refutation.element is cert.right
            and cert.refutation.target == cert.code
            and replay_refutation(cert.refutation))


def replay_apart(cert: ApartCert) -> bool:
    inner = cert.inner
    oriented = ((inner.left is cert.left and inner.right is cert.right)
                or (inner.left is cert.right and inner.right is cert.left))
    return oriented and replay_not_not_below(inner)


def replay_hausdorff(cert: HausdorffCert) -> bool:
    refine = cert.left.descriptor.refine
    return (refine is not None
            and cert.low.element is cert.left and cert.high.element is cert.right
            and replay_member(cert.low) and replay_member(cert.high)
            and not refine(cert.low.code, cert.high.code))


def replay_sharp(answer: SharpAnswer) -> bool:
    if answer.side == 'left':
        return (answer.member is not None and answer.member.element is answer.element
                and answer.member.code == answer.lower and replay_member(answer.member))
    return (answer.refutation is not None and answer.refutation.element is answer.element
            and answer.refutation.target == answer.upper and replay_refutation(answer.refutation))


def replay_strongmax(answer: StrongMaxAnswer) -> bool:
    if answer.side == 'left':
        return (answer.member is not None and answer.member.element is answer.element
                and answer.member.code == answer.lower and replay_member(answer.member))
    sep = answer.separation
    return (sep is not None and sep.right is answer.element
            and sep.left.principal_code == answer.upper and replay_hausdorff(sep))


def replay_smyth(witness: SmythWitness) -> bool:
    approximant = witness.approximant
    descriptor = witness.element.descriptor
    if approximant.element is not witness.element or not replay_member(approximant):
        return False
    if witness.branch == 'below':
        return descriptor.way_below_codes(witness.lower, approximant.code)
    sep = witness.separation
    return (sep is not None
            and sep.left.principal_code == witness.upper
            and sep.right.principal_code == approximant.code
            and replay_hausdorff(sep))


def replay(certificate: Any) -> bool:
    """Re-verify any certificate or evidence value produced by this library."""
    checks = {
        ApartCert: replay_apart,
        NotNotBelowCert: replay_not_not_below,
        HausdorffCert: replay_hausdorff,
        SharpAnswer: replay_sharp,
        StrongMaxAnswer: replay_strongmax,
        SmythWitness: replay_smyth,
        RefuteBelowWitness: replay_refutation,
        MemberEvidence: replay_member,
    }
    check = checks.get(type(certificate))
    if check is None:
        raise PreconditionViolated(f"cannot replay {type(certificate).__name__}")
    return bool(check(certificate))
