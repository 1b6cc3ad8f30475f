"""Products of bases and the step-function basis of exponentials."""
import functools
import itertools
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from domains import descriptor_from_poset
from errors import (InvalidCode, MissingBoundednessData, MissingDelta,
                    PreconditionViolated, UnboundedJoin)
from finite_oracle import FinitePoset
from ideal import ApproxElement
from order_core import AbstractBasis, BasisDescriptor, Code, cantor_unpair, interpolate
from settings import get_logger

logger = get_logger(__name__)

MAX_STEPS = 6


# Products

def _split_pair(text: str) -> Tuple[str, str]:
    """Split ``<a,b>`` at the top-level comma."""
    if not (text.startswith("<") and text.endswith(">")):
        raise InvalidCode(f"not a pair: {text!r}")
    depth = 0
    body = text[1:-1]
    for i, ch in enumerate(body):
        if ch in "(<[{":
            depth += 1
        elif ch in ")>]}":
            depth -= 1
        elif ch == "," and depth == 0:
            return body[:i], body[i + 1:]
    raise InvalidCode(f"not a pair: {text!r}")


def _both(left: Optional[object], right: Optional[object]) -> bool:
    return left is not None and right is not None


@functools.lru_cache(maxsize=None)
def product(left: BasisDescriptor, right: BasisDescriptor) -> BasisDescriptor:
    """The componentwise basis ``B_D × B_E``.

    Each decision is present exactly when both factors supply it.

    Example:
        >>> from domains import cantor_descriptor
        >>> D = product(cantor_descriptor(), cantor_descriptor())
        >>> D.prec(((0,), ()), ((0, 1), (1,)))
        True
    """

    def is_code(c: object) -> bool:
        return (isinstance(c, tuple) and len(c) == 2
                and left.basis.is_code(c[0]) and right.basis.is_code(c[1]))

    def prec(a: Code, b: Code) -> bool:
        return left.prec(a[0], b[0]) and right.prec(a[1], b[1])

    def enumerate_pair(n: int) -> Code:
        i, j = cantor_unpair(n)
        return left.enumerate(i), right.enumerate(j)

    def serialize(c: Code) -> str:
        return f"<{left.serialize(c[0])},{right.serialize(c[1])}>"

    parse = None
    if _both(left.parse, right.parse):
        def parse(text: str) -> Code:
            a, b = _split_pair(text)
            return left.parse(a), right.parse(b)

    def can_interpolate(d: BasisDescriptor) -> bool:
        return d.interpolate_fn is not None or d.reflexive

    interpolate_fn = None
    if can_interpolate(left) and can_interpolate(right):
        def interpolate_fn(a: Code, b: Code) -> Code:
            return interpolate(left, a[0], b[0]), interpolate(right, a[1], b[1])

    def can_approach(d: BasisDescriptor) -> bool:
        return d.approach is not None or d.reflexive

    approach = None
    if not (left.reflexive and right.reflexive) and can_approach(left) and can_approach(right):
        def approach(b: Code, n: int) -> Code:
            a0 = b[0] if left.approach is None else left.approach(b[0], n)
            a1 = b[1] if right.approach is None else right.approach(b[1], n)
            return a0, a1

    def pairwise(name: str):
        f, g = getattr(left, name), getattr(right, name)
        if not _both(f, g):
            return None
        return lambda a, b: f(a[0], b[0]) and g(a[1], b[1])

    delta_bot = None
    if _both(left.delta_bot, right.delta_bot):
        def delta_bot(c: Code) -> bool:
            return left.delta_bot(c[0]) and right.delta_bot(c[1])

    bounded = None
    if _both(left.bounded, right.bounded):
        def bounded(codes: Sequence[Code]) -> bool:
            return left.bounded([c[0] for c in codes]) and right.bounded([c[1] for c in codes])

    join = None
    if _both(left.join, right.join):
        def join(codes: Sequence[Code]) -> Optional[Code]:
            a = left.join([c[0] for c in codes])
            b = right.join([c[1] for c in codes])
            return None if a is None or b is None else (a, b)

    basis = AbstractBasis(name=f"{left.name}x{right.name}", prec=prec, is_code=is_code,
                          reflexive=left.reflexive and right.reflexive)
    return BasisDescriptor(
        basis=basis,
        enumerate=enumerate_pair,
        serialize=serialize,
        parse=parse,
        interpolate_fn=interpolate_fn,
        approach=approach,
        delta_bot=delta_bot,
        delta_waybelow=pairwise('delta_waybelow'),
        delta_below=pairwise('delta_below'),
        bounded=bounded,
        refine=pairwise('refine'),
        join=join,
        bottom=(left.bottom, right.bottom) if _both(left.bottom, right.bottom) else None,
        size=left.size * right.size if _both(left.size, right.size) else None,
    )


def product_element(x: ApproxElement, y: ApproxElement) -> ApproxElement:
    """The pair ``(x, y)`` as an element of the product completion."""
    descriptor = product(x.descriptor, y.descriptor)

    contains = None
    if _both(x.contains, y.contains):
        def contains(c: Code) -> bool:
            return x.contains(c[0]) and y.contains(c[1])

    excludes = None
    if x.excludes is not None or y.excludes is not None:
        def excludes(c: Code) -> bool:
            return ((x.excludes is not None and x.excludes(c[0]))
                    or (y.excludes is not None and y.excludes(c[1])))

    principal_code = None
    if _both(x.principal_code, y.principal_code):
        principal_code = (x.principal_code, y.principal_code)

    return ApproxElement(
        descriptor=descriptor,
        chain=lambda n: (x.chain(n), y.chain(n)),
        label=f"<{x.label},{y.label}>",
        contains=contains,
        excludes=excludes,
        principal_code=principal_code,
    )


# Step functions

@dataclass(frozen=True)
class SingleStep:
    """``[source ⇒ target]``: the map sending ``d ⊒ source`` to ``target`` and the rest to ⊥."""
    source: Code
    target: Code


@dataclass(frozen=True, eq=False)
class StepFunction:
    """A bounded finite join of single steps, in canonical form.

    Canonical form drops steps whose target is ⊥ and steps dominated by
    another step, and sorts the rest by serialization.
    """
    domain: BasisDescriptor
    codomain: BasisDescriptor
    steps: Tuple[SingleStep, ...]

    @property
    def key(self) -> Tuple[Tuple[str, str], ...]:
        return tuple((self.domain.serialize(s.source), self.codomain.serialize(s.target))
                     for s in self.steps)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, StepFunction):
            return NotImplemented
        return (self.domain is other.domain and self.codomain is other.codomain
                and self.key == other.key)

    def __hash__(self) -> int:
        return hash((id(self.domain), id(self.codomain), self.key))

    def serialize(self) -> str:
        return "{" + ", ".join(f"{a}=>{b}" for a, b in self.key) + "}"

    def __str__(self) -> str:
        return self.serialize()

    def __call__(self, d: Code) -> Code:
        return apply(self, d)

    def to_dict(self) -> Dict[str, object]:
        return {'kind': 'step_function', 'steps': [list(pair) for pair in self.key],
                'text': self.serialize()}


def _below(descriptor: BasisDescriptor):
    if descriptor.delta_below is None:
        raise MissingDelta(f"The {descriptor.name} basis has no δ⊑ decision")
    return descriptor.delta_below


def step_function(domain: BasisDescriptor, codomain: BasisDescriptor,
                  steps: Iterable[Tuple[Code, Code]]) -> StepFunction:
    """Build the canonical form of ``⊔{[a ⇒ b] | (a, b) ∈ steps}``."""
    below_d, below_e = _below(domain), _below(codomain)
    unique: Dict[Tuple[str, str], SingleStep] = {}
    for a, b in steps:
        domain.validate(a)
        codomain.validate(b)
        if codomain.delta_bot is not None and codomain.delta_bot(b):
            continue
        unique.setdefault((domain.serialize(a), codomain.serialize(b)), SingleStep(a, b))
    kept = []
    for key, step in unique.items():
        dominated = any(other_key != key and below_d(other.source, step.source)
                        and below_e(step.target, other.target)
                        for other_key, other in unique.items())
        if not dominated:
            kept.append((key, step))
    kept.sort(key=lambda item: item[0])
    return StepFunction(domain, codomain, tuple(step for _, step in kept))


def apply(function: StepFunction, d: Code) -> Code:
    """``⊔{b | [a ⇒ b] ∈ S, a ⊑ d}``, or ⊥ when no step applies.

    Raises:
        UnboundedJoin: if the applicable targets have no join
        PreconditionViolated: if the codomain is not pointed or has no joins
    """
    codomain = function.codomain
    below_d = _below(function.domain)
    if codomain.bottom is None or codomain.join is None:
        raise PreconditionViolated(f"The {codomain.name} basis must be pointed with finite joins")
    targets = [s.target for s in function.steps if below_d(s.source, d)]
    if not targets:
        return codomain.bottom
    result = codomain.join(targets)
    if result is None:
        raise UnboundedJoin(f"{function.serialize()} has no value at {function.domain.serialize(d)}")
    return result


def step_below(s: StepFunction, t: StepFunction) -> bool:
    """``S ⊑ T`` iff ``b ⊑ T(a)`` for every step ``[a ⇒ b]`` of ``S``."""
    below_e = _below(t.codomain)
    return all(below_e(step.target, apply(t, step.source)) for step in s.steps)


def bounded_steps(domain: BasisDescriptor, codomain: BasisDescriptor,
                  steps: Sequence[SingleStep]) -> bool:
    """Every subset whose sources are bounded must have consistent targets.

    Raises:
        MissingBoundednessData: if either basis lacks a boundedness decision
    """
    if domain.bounded is None or codomain.bounded is None:
        raise MissingBoundednessData("Both bases need a boundedness decision")
    for size in range(2, len(steps) + 1):
        for subset in itertools.combinations(steps, size):
            if domain.bounded([s.source for s in subset]) and \
                    not codomain.bounded([s.target for s in subset]):
                return False
    return True


def exp_basis_enumerate(domain: BasisDescriptor, codomain: BasisDescriptor, n: int,
                        max_steps: int = MAX_STEPS) -> List[StepFunction]:
    """Bounded step functions over codes of index ``< n``, one per equivalence class.

    Raises:
        PreconditionViolated: unless both bases are algebraic with δ⊑ and the
            codomain is pointed with joins
    """
    if not (domain.reflexive and codomain.reflexive):
        raise PreconditionViolated("step-function bases need algebraic domain and codomain")
    if codomain.bottom is None or codomain.join is None or codomain.delta_bot is None:
        raise PreconditionViolated(f"The {codomain.name} basis must be pointed with finite joins")
    _below(domain)
    _below(codomain)
    sources = domain.codes(n)
    targets = [b for b in codomain.codes(n) if not codomain.delta_bot(b)]
    candidates = [SingleStep(a, b) for a in sources for b in targets]

    classes: List[StepFunction] = []
    seen = set()
    for size in range(min(len(candidates), max_steps) + 1):
        for subset in itertools.combinations(candidates, size):
            if not bounded_steps(domain, codomain, subset):
                continue
            function = step_function(domain, codomain, ((s.source, s.target) for s in subset))
            if function in seen:
                continue
            seen.add(function)
            if any(step_below(function, c) and step_below(c, function) for c in classes):
                continue
            classes.append(function)
    classes.sort(key=lambda f: (len(f.steps), f.key))
    logger.debug("exp basis %s -> %s at n=%d: %d classes", domain.name, codomain.name, n, len(classes))
    return classes


def exponential_poset(domain: BasisDescriptor, codomain: BasisDescriptor, n: int) -> FinitePoset:
    """The enumerated classes ordered by ``step_below``."""
    classes = exp_basis_enumerate(domain, codomain, n)
    leq = np.array([[step_below(f, g) for g in classes] for f in classes], dtype=bool)
    return FinitePoset([f.serialize() for f in classes], leq,
                       name=f"[{domain.name}->{codomain.name}]")


def exponential_descriptor(domain: BasisDescriptor, codomain: BasisDescriptor,
                           n: int) -> BasisDescriptor:
    """The step-function classes as a finite algebraic basis with δ⊥, δ⊑ and δ≪."""
    return descriptor_from_poset(exponential_poset(domain, codomain, n))
