from dataclasses import dataclass, field
from enum import Enum
from typing import TYPE_CHECKING, Any, Dict, List, Optional, Union

from errors import PreconditionViolated

if TYPE_CHECKING:  # pragma: no cover
    from ideal import ApproxElement


class Verdict(Enum):
    """Outcome of a fuel-bounded semi-decision."""

    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Answer:
    """A three-valued answer with optional positive evidence.

    Attributes:
        verdict: YES, NO or UNKNOWN
        witness: evidence backing a YES or NO (``None`` for UNKNOWN)
    """
    verdict: Verdict
    witness: Any = None

    @classmethod
    def yes(cls, witness: Any = None) -> 'Answer':
        return cls(Verdict.YES, witness)

    @classmethod
    def no(cls, witness: Any = None) -> 'Answer':
        return cls(Verdict.NO, witness)

    @classmethod
    def unknown(cls) -> 'Answer':
        return cls(Verdict.UNKNOWN)

    @property
    def is_yes(self) -> bool:
        return self.verdict is Verdict.YES

    @property
    def is_no(self) -> bool:
        return self.verdict is Verdict.NO

    @property
    def is_unknown(self) -> bool:
        return self.verdict is Verdict.UNKNOWN

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {'answer': self.verdict.value}
        if self.witness is not None:
            data['witness'] = (self.witness.to_dict()
                               if hasattr(self.witness, 'to_dict')
                               else self.witness)
        return data


@dataclass(frozen=True)
class Fuel:
    """Budget bounding the enumeration indices and chain depth a search inspects.

    Attributes:
        budget: non-negative number of stages a search may run
    """
    budget: int

    def __post_init__(self) -> None:
        if self.budget < 0:
            raise PreconditionViolated("Fuel budget cannot be negative")


FuelLike = Union[int, Fuel]


def as_budget(fuel: FuelLike) -> int:
    """Normalize an ``int`` or ``Fuel`` into a validated budget."""
    if isinstance(fuel, Fuel):
        return fuel.budget
    return Fuel(int(fuel)).budget


def _ref(element: 'ApproxElement') -> str:
    return element.label


def _code(element: 'ApproxElement', code: Any) -> str:
    return element.descriptor.serialize(code)


@dataclass(frozen=True, eq=False)
class MemberEvidence:
    """Evidence that ``code`` lies in the ideal denoted by ``element``.

    Either the code sits below a chain approximant (``chain_index`` set, and
    ``code ≺ element.chain(chain_index)``) or membership was read off the
    element's exact decision procedure (``chain_index`` is ``None``).
    """
    element: 'ApproxElement'
    code: Any
    chain_index: Optional[int] = None

    @property
    def kind(self) -> str:
        return 'chain' if self.chain_index is not None else 'decided'

    @property
    def approximant(self) -> Any:
        if self.chain_index is None:
            return None
        return self.element.chain(self.chain_index)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MemberEvidence):
            return NotImplemented
        return (self.element is other.element and self.code == other.code
                and self.chain_index == other.chain_index)

    def __hash__(self) -> int:
        return hash((id(self.element), repr(self.code), self.chain_index))

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            'kind': 'member',
            'element': _ref(self.element),
            'witness': _code(self.element, self.code),
            'via': self.kind,
        }
        if self.chain_index is not None:
            data['chain_index'] = self.chain_index
            data['approximant'] = _code(self.element, self.approximant)
        return data


@dataclass(frozen=True, eq=False)
class RefuteBelowWitness:
    """Positive evidence that ``↓target ⊑ element`` fails.

    ``code`` is below ``target`` in the basis and provably outside the
    element: either the element's exclusion test says so (``kind`` is
    ``'excluded'``) or ``code`` cannot be refined together with a member of
    the element (``kind`` is ``'disjoint'``, ``blocker`` holds that member).
    """
    element: 'ApproxElement'
    target: Any
    code: Any
    kind: str
    blocker: Optional[MemberEvidence] = None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RefuteBelowWitness):
            return NotImplemented
        return (self.element is other.element and self.target == other.target
                and self.code == other.code and self.kind == other.kind
                and self.blocker == other.blocker)

    def __hash__(self) -> int:
        return hash((id(self.element), repr(self.target), repr(self.code), self.kind))

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            'kind': 'refute',
            'direction': [self.element.descriptor.serialize(self.target),
                          _ref(self.element)],
            'witness': _code(self.element, self.code),
            'via': self.kind,
        }
        if self.blocker is not None:
            data['blocker'] = self.blocker.to_dict()
        return data


@dataclass(frozen=True, eq=False)
class NotNotBelowCert:
    """Certificate for ``left ⋢̸̸ right``: ``code ≪ left`` but ``↓code ⋢ right``."""
    left: 'ApproxElement'
    right: 'ApproxElement'
    code: Any
    member: MemberEvidence
    refutation: RefuteBelowWitness
    replay_fuel: int

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NotNotBelowCert):
            return NotImplemented
        return (self.left is other.left and self.right is other.right
                and self.code == other.code and self.member == other.member
                and self.refutation == other.refutation
                and self.replay_fuel == other.replay_fuel)

    def __hash__(self) -> int:
        return hash((id(self.left), id(self.right), repr(self.code), self.replay_fuel))

    def to_dict(self) -> Dict[str, Any]:
        return {
            'kind': 'notnotbelow',
            'direction': [_ref(self.left), _ref(self.right)],
            'witness': _code(self.left, self.code),
            'replay_fuel': self.replay_fuel,
            'member': self.member.to_dict(),
            'refutation': self.refutation.to_dict(),
        }


@dataclass(frozen=True, eq=False)
class ApartCert:
    """Certificate for ``x # y`` wrapping a one-directional certificate.

    Attributes:
        left, right: the pair the certificate separates, in the caller's order
        inner: a NotNotBelowCert for (left, right) or for (right, left)
    """
    left: 'ApproxElement'
    right: 'ApproxElement'
    inner: NotNotBelowCert

    @property
    def flipped(self) -> bool:
        return self.inner.left is not self.left

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ApartCert):
            return NotImplemented
        return (self.left is other.left and self.right is other.right
                and self.inner == other.inner)

    def __hash__(self) -> int:
        return hash((id(self.left), id(self.right), hash(self.inner)))

    def to_dict(self) -> Dict[str, Any]:
        return {
            'kind': 'apart',
            'direction': [_ref(self.left), _ref(self.right)],
            'witness': _code(self.inner.left, self.inner.code),
            'replay_fuel': self.inner.replay_fuel,
            'refutation': self.inner.to_dict(),
        }


@dataclass(frozen=True, eq=False)
class HausdorffCert:
    """Certificate that ``left`` and ``right`` have disjoint Scott neighbourhoods.

    ``low.code ≪ left``, ``high.code ≪ right`` and the two codes cannot be
    refined (``¬(low.code ⇈ high.code)``).
    """
    left: 'ApproxElement'
    right: 'ApproxElement'
    low: MemberEvidence
    high: MemberEvidence
    replay_fuel: int

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HausdorffCert):
            return NotImplemented
        return (self.left is other.left and self.right is other.right
                and self.low == other.low and self.high == other.high)

    def __hash__(self) -> int:
        return hash((id(self.left), id(self.right), hash(self.low), hash(self.high)))

    def to_dict(self) -> Dict[str, Any]:
        return {
            'kind': 'hausdorff',
            'direction': [_ref(self.left), _ref(self.right)],
            'witness': [_code(self.left, self.low.code),
                        _code(self.right, self.high.code)],
            'replay_fuel': self.replay_fuel,
            'members': [self.low.to_dict(), self.high.to_dict()],
        }


@dataclass(frozen=True, eq=False)
class SharpAnswer:
    """Answer of a sharpness oracle on a basis pair ``lower ≺ upper``.

    ``side == 'left'`` carries ``member`` (``lower ≪ element``);
    ``side == 'right'`` carries ``refutation`` (``↓upper ⋢ element``).
    """
    element: 'ApproxElement'
    lower: Any
    upper: Any
    side: str
    member: Optional[MemberEvidence] = None
    refutation: Optional[RefuteBelowWitness] = None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SharpAnswer):
            return NotImplemented
        return (self.element is other.element and self.lower == other.lower
                and self.upper == other.upper and self.side == other.side
                and self.member == other.member
                and self.refutation == other.refutation)

    def __hash__(self) -> int:
        return hash((id(self.element), repr(self.lower), repr(self.upper), self.side))

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            'kind': 'sharp',
            'element': _ref(self.element),
            'query': [_code(self.element, self.lower), _code(self.element, self.upper)],
            'side': self.side,
        }
        if self.member is not None:
            data['member'] = self.member.to_dict()
        if self.refutation is not None:
            data['refutation'] = self.refutation.to_dict()
        return data


@dataclass(frozen=True, eq=False)
class StrongMaxAnswer:
    """Answer of a strong-maximality oracle on ``lower ≺ upper``.

    ``side == 'left'`` carries ``member`` (``lower ≪ element``);
    ``side == 'right'`` carries ``separation``, a HausdorffCert between
    ``↓upper`` and the element.
    """
    element: 'ApproxElement'
    lower: Any
    upper: Any
    side: str
    member: Optional[MemberEvidence] = None
    separation: Optional[HausdorffCert] = None

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            'kind': 'strongmax',
            'element': _ref(self.element),
            'query': [_code(self.element, self.lower), _code(self.element, self.upper)],
            'side': self.side,
        }
        if self.member is not None:
            data['member'] = self.member.to_dict()
        if self.separation is not None:
            data['separation'] = self.separation.to_dict()
        return data


@dataclass(frozen=True, eq=False)
class SmythWitness:
    """Smyth-form witness for a query ``lower ≺ upper`` on a strongly maximal element.

    ``approximant`` shows ``d ≪ element``. For ``branch == 'below'`` the
    query's lower code is below ``d``; for ``branch == 'separated'`` the
    ``separation`` certificate separates ``↓upper`` from ``↓d``.
    """
    element: 'ApproxElement'
    lower: Any
    upper: Any
    approximant: MemberEvidence
    branch: str
    separation: Optional[HausdorffCert] = None

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            'kind': 'smyth',
            'element': _ref(self.element),
            'query': [_code(self.element, self.lower), _code(self.element, self.upper)],
            'branch': self.branch,
            'witness': _code(self.element, self.approximant.code),
            'approximant': self.approximant.to_dict(),
        }
        if self.separation is not None:
            data['separation'] = self.separation.to_dict()
        return data


@dataclass
class CheckReport:
    """Outcome of a law check or of one theorem check.

    Attributes:
        name: what was checked
        passed: True when no counterexample was found
        checked: number of instances inspected
        failures: human-readable counterexamples
        details: additional machine-readable data
    """
    name: str
    passed: bool = True
    checked: int = 0
    failures: List[str] = field(default_factory=list)
    details: Dict[str, Any] = field(default_factory=dict)

    def fail(self, message: str) -> None:
        """Record a counterexample and mark the report failed."""
        self.passed = False
        self.failures.append(message)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'name': self.name,
            'passed': self.passed,
            'checked': self.checked,
            'failures': list(self.failures),
            'details': self.details,
        }


@dataclass
class SuiteReport:
    """A list of CheckReports with aggregate status."""
    subject: str
    checks: List[CheckReport] = field(default_factory=list)
    summary: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def get(self, name: str) -> CheckReport:
        for check in self.checks:
            if check.name == name:
                return check
        raise KeyError(name)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'subject': self.subject,
            'passed': self.passed,
            'checks': [c.to_dict() for c in self.checks],
            'summary': self.summary,
        }
