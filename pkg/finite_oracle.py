"""Classical brute-force ground truth on explicit finite posets.

Subsets are int bitmasks over element indices. Everything here is decided by
enumeration, so the module plays the role of the classical metatheory that the
certificate-producing modules must agree with.
"""
import functools
import itertools
from functools import cached_property
from typing import TYPE_CHECKING, Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

import numpy as np

from errors import InvalidPoset, SizeTooLarge
from models import CheckReport, SuiteReport
from settings import get_logger, get_settings

if TYPE_CHECKING:  # pragma: no cover
    from order_core import BasisDescriptor

logger = get_logger(__name__)


def bits(mask: int) -> List[int]:
    """Indices set in ``mask``, ascending."""
    return [i for i in range(mask.bit_length()) if mask >> i & 1]


class FinitePoset:
    """Immutable finite partial order on labelled elements.

    The main attributes are:
        - labels: element names, indices ``0..n-1``
        - leq: read-only boolean ``n×n`` matrix, ``leq[i, j]`` iff ``i ≤ j``

    Everything else is computed lazily and cached.

    Example:
        >>> S = FinitePoset.from_pairs(["bot", "top"], [("bot", "top")], name="S")
        >>> S.le("bot", "top")
        True
    """

    def __init__(self, labels: Sequence[str], leq: np.ndarray, name: str = "") -> None:
        labels = tuple(str(label) for label in labels)
        leq = np.array(leq, dtype=bool)
        n = len(labels)
        if len(set(labels)) != n:
            raise InvalidPoset("Element labels must be distinct")
        if leq.shape != (n, n):
            raise InvalidPoset(f"Order matrix has shape {leq.shape}, expected ({n}, {n})")
        if not leq.diagonal().all():
            raise InvalidPoset("Order is not reflexive")
        if ((leq & leq.T) != np.eye(n, dtype=bool)).any():
            raise InvalidPoset("Order is not antisymmetric")
        if n and ((leq.astype(np.int64) @ leq.astype(np.int64) > 0) & ~leq).any():
            raise InvalidPoset("Order is not transitive")
        leq.setflags(write=False)
        self.labels = labels
        self.leq = leq
        self.n = n
        self.name = name or f"poset{n}"
        self.index: Dict[str, int] = {label: i for i, label in enumerate(labels)}

    @classmethod
    def from_pairs(cls, labels: Sequence[str], pairs: Iterable[Tuple[str, str]],
                   name: str = "") -> 'FinitePoset':
        """Build a poset from generating pairs ``(a, b)`` meaning ``a ≤ b``.

        The reflexive-transitive closure is computed and then validated, so a
        cycle among the pairs raises InvalidPoset.
        """
        index = {str(label): i for i, label in enumerate(labels)}
        leq = np.eye(len(index), dtype=bool)
        for a, b in pairs:
            if a not in index or b not in index:
                raise InvalidPoset(f"Pair ({a}, {b}) mentions an unknown element")
            leq[index[a], index[b]] = True
        for k in range(len(index)):
            leq |= leq[:, k:k + 1] & leq[k:k + 1, :]
        return cls(labels, leq, name)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FinitePoset):
            return NotImplemented
        return self.labels == other.labels and bool((self.leq == other.leq).all())

    def __hash__(self) -> int:
        return hash((self.labels, self.leq.tobytes()))

    def __repr__(self) -> str:
        return f"FinitePoset({self.name}, n={self.n})"

    def le(self, a: str, b: str) -> bool:
        return bool(self.leq[self.index[a], self.index[b]])

    def mask_of(self, labels: Iterable[str]) -> int:
        mask = 0
        for label in labels:
            mask |= 1 << self.index[label]
        return mask

    def labels_of(self, mask: int) -> FrozenSet[str]:
        return frozenset(self.labels[i] for i in bits(mask))

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    @cached_property
    def up(self) -> Tuple[int, ...]:
        """``up[i]`` is the mask of ``↑i``."""
        return tuple(sum(1 << j for j in range(self.n) if self.leq[i, j]) for i in range(self.n))

    @cached_property
    def down(self) -> Tuple[int, ...]:
        return tuple(sum(1 << j for j in range(self.n) if self.leq[j, i]) for i in range(self.n))

    def upper_bounds(self, mask: int) -> int:
        result = self.full
        for i in bits(mask):
            result &= self.up[i]
        return result

    def least_in(self, mask: int) -> Optional[int]:
        for i in bits(mask):
            if self.up[i] & mask == mask:
                return i
        return None

    def lub(self, mask: int) -> Optional[int]:
        """Least upper bound of a subset, ``None`` if it does not exist."""
        return self.least_in(self.upper_bounds(mask))

    @cached_property
    def least(self) -> Optional[int]:
        return self.least_in(self.full)

    @cached_property
    def maximal(self) -> int:
        return sum(1 << i for i in range(self.n) if self.up[i] == 1 << i)

    def is_upper(self, mask: int) -> bool:
        return all(self.up[i] & ~mask == 0 for i in bits(mask))

    def is_lower(self, mask: int) -> bool:
        return all(self.down[i] & ~mask == 0 for i in bits(mask))

    def is_directed(self, mask: int) -> bool:
        if mask == 0:
            return False
        members = bits(mask)
        return all(self.upper_bounds((1 << a) | (1 << b)) & mask
                   for a, b in itertools.combinations(members, 2))

    @cached_property
    def directed(self) -> Tuple[Tuple[int, int], ...]:
        """Every directed subset with its supremum, as ``(mask, sup_index)``."""
        found = []
        for mask in range(1, 1 << self.n):
            if self.is_directed(mask):
                top = self.lub(mask)
                if top is None:
                    raise InvalidPoset(f"Directed subset {sorted(self.labels_of(mask))} has no supremum")
                found.append((mask, top))
        return tuple(found)

    def to_dict(self) -> Dict[str, object]:
        pairs = [[self.labels[i], self.labels[j]]
                 for i in range(self.n) for j in range(self.n) if i != j and self.leq[i, j]]
        return {'name': self.name, 'elements': list(self.labels), 'leq': pairs}


# Constructors

def chain_poset(n: int) -> FinitePoset:
    labels = [str(i) for i in range(n)]
    return FinitePoset.from_pairs(labels, zip(labels, labels[1:]), name=f"chain{n}")


def antichain_poset(n: int, lifted: bool = False) -> FinitePoset:
    labels = [str(i) for i in range(n)]
    if not lifted:
        return FinitePoset.from_pairs(labels, [], name=f"antichain{n}")
    return FinitePoset.from_pairs(["bot"] + labels, [("bot", a) for a in labels],
                                  name=f"lifted_antichain{n}")


def powerset_poset(n: int) -> FinitePoset:
    """``𝒫({0..n-1})`` ordered by inclusion; labels are ``{}``, ``{0}``, ``{0,1}``, ..."""
    subsets = sorted(range(1 << n), key=lambda m: (bin(m).count('1'), [i for i in range(n) if m >> i & 1]))
    labels = ["{" + ",".join(str(i) for i in range(n) if m >> i & 1) + "}" for m in subsets]
    leq = np.array([[a & ~b == 0 for b in subsets] for a in subsets], dtype=bool)
    return FinitePoset(labels, leq, name=f"powerset{n}")


def sierpinski_poset() -> FinitePoset:
    return FinitePoset.from_pairs(["bot", "top"], [("bot", "top")], name="sierpinski")


def diamond_poset() -> FinitePoset:
    return FinitePoset.from_pairs(["bot", "a", "b", "top"],
                                  [("bot", "a"), ("bot", "b"), ("a", "top"), ("b", "top")],
                                  name="diamond")


def three_point_poset() -> FinitePoset:
    """``⊥ ≤ 0, 1`` with ``0`` and ``1`` unrelated."""
    return FinitePoset.from_pairs(["bot", "0", "1"], [("bot", "0"), ("bot", "1")], name="P")


def catalog() -> Dict[str, FinitePoset]:
    """The named posets every theorem check is run against."""
    posets = [
        sierpinski_poset(), chain_poset(2), chain_poset(3),
        antichain_poset(2), antichain_poset(3),
        antichain_poset(2, lifted=True), antichain_poset(3, lifted=True),
        diamond_poset(), three_point_poset(), powerset_poset(2), powerset_poset(3),
    ]
    return {p.name: p for p in posets}


def random_poset(n: int, rng: np.random.Generator, density: float = 0.3) -> FinitePoset:
    """Random poset on ``n`` elements: closure of a random DAG on ``0..n-1``."""
    edges = np.triu(rng.random((n, n)) < density, k=1)
    labels = [f"e{i}" for i in range(n)]
    pairs = [(labels[i], labels[j]) for i, j in zip(*np.nonzero(edges))]
    return FinitePoset.from_pairs(labels, pairs, name=f"random{n}")


def monotone_maps(source: FinitePoset, target: FinitePoset) -> List[Tuple[int, ...]]:
    """All monotone maps as tuples of target indices, by brute force."""
    maps = []
    pairs = [(i, j) for i in range(source.n) for j in range(source.n) if i != j and source.leq[i, j]]
    for image in itertools.product(range(target.n), repeat=source.n):
        if all(target.leq[image[i], image[j]] for i, j in pairs):
            maps.append(image)
    return maps


def function_space(source: FinitePoset, target: FinitePoset) -> FinitePoset:
    """Monotone maps ordered pointwise."""
    maps = monotone_maps(source, target)
    labels = ["[" + ",".join(f"{source.labels[i]}->{target.labels[v]}" for i, v in enumerate(f)) + "]"
              for f in maps]
    leq = np.array([[all(target.leq[f[i], g[i]] for i in range(source.n)) for g in maps]
                    for f in maps], dtype=bool).reshape(len(maps), len(maps))
    return FinitePoset(labels, leq, name=f"[{source.name}->{target.name}]")


def poset_from_descriptor(descriptor: 'BasisDescriptor') -> FinitePoset:
    """The order of a finite basis as an explicit poset labelled by serialized codes.

    Raises:
        SizeTooLarge: if the basis is infinite
    """
    if not descriptor.is_finite:
        raise SizeTooLarge(f"The {descriptor.name} basis is infinite")
    codes = descriptor.all_codes()
    if descriptor.delta_below is not None:
        le = descriptor.delta_below
    else:
        def le(a, b):
            return a == b or descriptor.prec(a, b)
    leq = np.array([[bool(le(a, b)) for b in codes] for a in codes], dtype=bool)
    return FinitePoset([descriptor.serialize(c) for c in codes], leq, name=descriptor.name)


# Scott topology

def _open_masks_by_upper_sets(poset: FinitePoset) -> Tuple[int, ...]:
    return tuple(m for m in range(1 << poset.n) if poset.is_upper(m))


def _open_masks_by_definition(poset: FinitePoset) -> Tuple[int, ...]:
    opens = []
    for mask in range(1 << poset.n):
        if not poset.is_upper(mask):
            continue
        # inaccessible by directed suprema
        if all(mask & directed for directed, top in poset.directed if mask >> top & 1):
            opens.append(mask)
    return tuple(opens)


@functools.lru_cache(maxsize=256)
def open_masks(poset: FinitePoset) -> Tuple[int, ...]:
    """Scott opens as masks, computed two ways and cross-checked."""
    by_upper = _open_masks_by_upper_sets(poset)
    by_definition = _open_masks_by_definition(poset)
    if by_upper != by_definition:
        logger.error("Scott-open computations disagree on %s", poset.name)
        raise InvalidPoset(f"Scott-open computations disagree on {poset.name}")
    return by_upper


def scott_opens(poset: FinitePoset) -> List[FrozenSet[str]]:
    """All Scott open subsets, as label sets."""
    return [poset.labels_of(m) for m in open_masks(poset)]


def interior(poset: FinitePoset, mask: int) -> int:
    """Largest Scott open inside ``mask`` (union of the opens it contains)."""
    result = 0
    for u in open_masks(poset):
        if u & ~mask == 0:
            result |= u
    return result


def interior_by_upsets(poset: FinitePoset, mask: int) -> int:
    """``{y | ↑y ⊆ mask}``."""
    return sum(1 << y for y in range(poset.n) if poset.up[y] & ~mask == 0)


def is_scott_closed(poset: FinitePoset, mask: int) -> bool:
    if not poset.is_lower(mask):
        return False
    return all(mask >> top & 1 for directed, top in poset.directed if directed & ~mask == 0)


def way_below_oracle(poset: FinitePoset, x: str, y: str) -> bool:
    """``x ≪ y`` by quantifying over every directed subset."""
    i, j = poset.index[x], poset.index[y]
    for directed, top in poset.directed:
        if poset.leq[j, top] and not any(poset.leq[i, s] for s in bits(directed)):
            return False
    return True


def _separates(poset: FinitePoset, i: int, j: int) -> Optional[int]:
    for u in open_masks(poset):
        if u >> i & 1 and not u >> j & 1:
            return u
    return None


def not_not_below_oracle(poset: FinitePoset, x: str, y: str) -> Optional[FrozenSet[str]]:
    """An open containing ``x`` but not ``y``, if any."""
    u = _separates(poset, poset.index[x], poset.index[y])
    return None if u is None else poset.labels_of(u)


def apart_oracle(poset: FinitePoset, x: str, y: str) -> Tuple[bool, Optional[FrozenSet[str]]]:
    """Intrinsic apartness with the separating open as witness."""
    i, j = poset.index[x], poset.index[y]
    u = _separates(poset, i, j)
    if u is None:
        u = _separates(poset, j, i)
    return u is not None, (None if u is None else poset.labels_of(u))


class _Tables:
    """Relation tables for one poset, computed from the opens."""

    def __init__(self, poset: FinitePoset) -> None:
        n = poset.n
        self.poset = poset
        self.opens = open_masks(poset)
        self.nnb = [[_separates(poset, i, j) is not None for j in range(n)] for i in range(n)]
        self.apart = [[self.nnb[i][j] or self.nnb[j][i] for j in range(n)] for i in range(n)]
        self.apart_mask = [sum(1 << j for j in range(n) if self.apart[i][j]) for i in range(n)]
        self.way = [[way_below_oracle(poset, poset.labels[i], poset.labels[j]) for j in range(n)]
                    for i in range(n)]
        self.nbhds = [[u for u in self.opens if u >> i & 1] for i in range(n)]

    def refine(self, a: int, b: int) -> bool:
        return any(self.way[a][z] and self.way[b][z] for z in range(self.poset.n))

    def hausdorff(self, x: int, y: int) -> bool:
        return any(u & v == 0 for u in self.nbhds[x] for v in self.nbhds[y])

    def sharp(self, x: int) -> bool:
        n = self.poset.n
        return all(self.way[a][x] or not self.poset.leq[b, x]
                   for a in range(n) for b in range(n) if self.way[a][b])

    def strongly_maximal(self, x: int) -> bool:
        n = self.poset.n
        return all(self.way[u][x] or self.hausdorff(v, x)
                   for u in range(n) for v in range(n) if self.way[u][v])

    def smyth_maximal(self, x: int) -> bool:
        n = self.poset.n
        approximants = [d for d in range(n) if self.way[d][x]]

        def separated(v: int, d: int) -> bool:
            return any(not self.refine(a, b) for a in range(n) for b in range(n)
                       if self.way[a][v] and self.way[b][d])

        return all(any(self.way[u][d] or separated(v, d) for d in approximants)
                   for u in range(n) for v in range(n) if self.way[u][v])

    def lawson_subbasics(self) -> List[int]:
        n = self.poset.n
        co_sets = [sum(1 << y for y in range(n) if self.nnb[z][y]) for z in range(n)]
        subbasics = list(self.opens) + co_sets
        # depth 2; an intersection of two Scott opens is Scott open already
        subbasics += [a & b for a, b in itertools.combinations_with_replacement(co_sets, 2)]
        subbasics += [u & c for u in self.opens for c in co_sets]
        return subbasics

    def lawson_maximal(self, x: int) -> bool:
        """Sharp, and each Lawson neighbourhood of ``x`` contains a Scott neighbourhood."""
        if not self.sharp(x):
            return False
        return all(interior(self.poset, n) >> x & 1
                   for n in self.lawson_subbasics() if n >> x & 1)


@functools.lru_cache(maxsize=256)
def tables(poset: FinitePoset) -> _Tables:
    return _Tables(poset)


def strongly_maximal(poset: FinitePoset) -> FrozenSet[str]:
    t = tables(poset)
    return frozenset(poset.labels[x] for x in range(poset.n) if t.strongly_maximal(x))


def smyth_maximal(poset: FinitePoset) -> FrozenSet[str]:
    t = tables(poset)
    return frozenset(poset.labels[x] for x in range(poset.n) if t.smyth_maximal(x))


def lawson_maximal(poset: FinitePoset) -> FrozenSet[str]:
    t = tables(poset)
    return frozenset(poset.labels[x] for x in range(poset.n) if t.lawson_maximal(x))


def nearly_open_sets(poset: FinitePoset) -> Set[int]:
    """Every apartness complement ``-A = interior(∼A)``, as masks."""
    t = tables(poset)
    result = set()
    for a_mask in range(1 << poset.n):
        result.add(interior_by_upsets(poset, _apart_complement(t, a_mask)))
    return result


def _apart_complement(t: _Tables, a_mask: int) -> int:
    result = t.poset.full
    for a in bits(a_mask):
        result &= t.apart_mask[a]
    return result


# Theorem suite

def _check_complement_closed(p: FinitePoset, t: _Tables) -> CheckReport:
    report = CheckReport(name="complement_closed")
    for u in t.opens:
        report.checked += 1
        if not is_scott_closed(p, p.full & ~u):
            report.fail(f"complement of {sorted(p.labels_of(u))} is not Scott closed")
    return report


def _check_interior_of_complement(p: FinitePoset, t: _Tables) -> CheckReport:
    report = CheckReport(name="interior_of_complement")
    for y in range(p.n):
        report.checked += 1
        not_below = sum(1 << x for x in range(p.n) if not p.leq[x, y])
        nnb = sum(1 << x for x in range(p.n) if t.nnb[x][y])
        if interior(p, not_below) != nnb:
            report.fail(f"interior of the non-below set differs from ⋢̸̸ at {p.labels[y]}")
    return report


def _check_specialization(p: FinitePoset, t: _Tables) -> CheckReport:
    report = CheckReport(name="specialization_order")
    for x in range(p.n):
        for y in range(p.n):
            report.checked += 1
            specializes = all(u >> y & 1 for u in t.nbhds[x])
            if specializes != bool(p.leq[x, y]):
                report.fail(f"specialization differs from ≤ at ({p.labels[x]}, {p.labels[y]})")
    return report


def _check_nearly_open(p: FinitePoset, t: _Tables) -> CheckReport:
    report = CheckReport(name="nearly_open")
    for a_mask in range(1 << p.n):
        report.checked += 1
        neg = p.full & ~a_mask
        if interior(p, neg) != interior(p, _apart_complement(t, a_mask)):
            report.fail(f"interior(¬A) ≠ interior(∼A) for A = {sorted(p.labels_of(a_mask))}")
    nearly_open = nearly_open_sets(p)
    if nearly_open != set(t.opens):
        report.fail("nearly open sets differ from Scott opens")
    report.details['nearly_open'] = len(nearly_open)
    return report


def _check_all_sharp(p: FinitePoset, t: _Tables) -> CheckReport:
    report = CheckReport(name="all_sharp")
    for x in range(p.n):
        report.checked += 1
        if not t.sharp(x):
            report.fail(f"{p.labels[x]} is not sharp")
        # compact elements: c ⊑ x is decidable, agreeing with ≪
        for c in range(p.n):
            if t.way[c][x] != bool(p.leq[c, x]):
                report.fail(f"≪ and ⊑ disagree at ({p.labels[c]}, {p.labels[x]})")
    return report


def _check_tight_cotransitive(p: FinitePoset, t: _Tables) -> CheckReport:
    report = CheckReport(name="tight_cotransitive")
    for x, y in itertools.product(range(p.n), repeat=2):
        report.checked += 1
        if not t.apart[x][y] and x != y:
            report.fail(f"not tight at ({p.labels[x]}, {p.labels[y]})")
        if t.apart[x][y]:
            for z in range(p.n):
                if not (t.apart[x][z] or t.apart[y][z]):
                    report.fail(f"not cotransitive at ({p.labels[x]}, {p.labels[y]}, {p.labels[z]})")
    return report


def _check_strong_smyth_lawson(p: FinitePoset, t: _Tables) -> CheckReport:
    report = CheckReport(name="strong_smyth_lawson")
    strong = {x for x in range(p.n) if t.strongly_maximal(x)}
    smyth = {x for x in range(p.n) if t.smyth_maximal(x)}
    lawson = {x for x in range(p.n) if t.lawson_maximal(x)}
    report.checked = p.n
    if strong != smyth:
        report.fail("strongly maximal and Smyth maximal elements differ")
    if strong != lawson:
        report.fail("strongly maximal elements differ from the Lawson criterion")
    report.details['strongly_maximal'] = sorted(p.labels[x] for x in strong)
    return report


def _check_strongmax_consequences(p: FinitePoset, t: _Tables) -> CheckReport:
    report = CheckReport(name="strongmax_consequences")
    for x in range(p.n):
        report.checked += 1
        if t.strongly_maximal(x):
            if not p.maximal >> x & 1:
                report.fail(f"{p.labels[x]} is strongly maximal but not maximal")
            if not t.sharp(x):
                report.fail(f"{p.labels[x]} is strongly maximal but not sharp")
    return report


def _check_apart_strictly_below(p: FinitePoset, t: _Tables) -> CheckReport:
    """``x # y`` with ``x ⊑ y`` gives ``x ≠ y``, separated by an open around ``y``.

    Every apart pair must be distinct. A comparable apart pair must be
    separated by an open containing ``y`` and missing ``x``, never the
    other way round.
    """
    report = CheckReport(name="apart_strictly_below")
    below_pairs = 0
    for x, y in itertools.product(range(p.n), repeat=2):
        if not t.apart[x][y]:
            continue
        report.checked += 1
        if x == y:
            report.fail(f"{p.labels[x]} is apart from itself")
        if p.leq[x, y]:
            below_pairs += 1
            if t.nnb[x][y] or not t.nnb[y][x]:
                report.fail(f"{p.labels[x]} # {p.labels[y]} and ⊑ without ⊏")
    report.details['apart_below_pairs'] = below_pairs
    return report


def _check_basis_dense(p: FinitePoset, t: _Tables) -> CheckReport:
    """Each inhabited open contains a basis point ``c`` with ``↑c`` inside it.

    On a finite poset every element is compact, so the basis computed from
    ``≪`` is the whole poset and the density half is close to trivial. The
    check also asks that every element be the join of the basis below it.
    """
    report = CheckReport(name="basis_dense")
    basis = sum(1 << c for c in range(p.n) if t.way[c][c])
    for u in t.opens:
        report.checked += 1
        if u and not any(p.up[c] & ~u == 0 for c in bits(u & basis)):
            report.fail(f"open {sorted(p.labels_of(u))} misses the basis")
    for x in range(p.n):
        report.checked += 1
        approximants = sum(1 << c for c in bits(basis) if t.way[c][x])
        if p.lub(approximants) != x:
            report.fail(f"{p.labels[x]} is not the join of the basis below it")
    report.details['basis'] = bin(basis).count("1")
    return report


def _check_located_neighbourhoods(p: FinitePoset, t: _Tables) -> CheckReport:
    report = CheckReport(name="located_neighbourhoods")
    # ≪ in the finite lattice of opens is inclusion
    pairs = [(s, u) for s in t.opens for u in t.opens if s & ~u == 0]
    for x in range(p.n):
        report.checked += 1
        located = all(u >> x & 1 or not s >> x & 1 for s, u in pairs)
        if located != t.sharp(x):
            report.fail(f"sharpness and located neighbourhoods disagree at {p.labels[x]}")
    return report


def _check_maximal_subspace(p: FinitePoset, t: _Tables) -> CheckReport:
    """Hausdorff and regularity of the strongly maximal subspace.

    Strongly maximal points are maximal, so in a finite poset the subspace
    is discrete and the regularity half always holds. The Hausdorff half
    also requires distinct strongly maximal points to be apart.
    """
    report = CheckReport(name="maximal_subspace")
    strong = [x for x in range(p.n) if t.strongly_maximal(x)]
    sub = sum(1 << x for x in strong)
    for x in strong:
        for y in strong:
            report.checked += 1
            if x != y and not t.apart[x][y]:
                report.fail(f"strongly maximal points {p.labels[x]}, {p.labels[y]} are not apart")
            if t.apart[x][y] and not t.hausdorff(x, y):
                report.fail(f"apart points {p.labels[x]}, {p.labels[y]} are not Hausdorff separated")
        for u in t.nbhds[x]:
            # closed neighbourhood: closure of ↑x in the subspace
            closure = 0
            for m in bits(p.up[x] & sub):
                closure |= p.down[m]
            if closure & sub & ~u:
                report.fail(f"no closed neighbourhood of {p.labels[x]} inside {sorted(p.labels_of(u))}")
    return report


CHECKS = (
    _check_complement_closed, _check_interior_of_complement, _check_specialization,
    _check_nearly_open, _check_all_sharp, _check_tight_cotransitive,
    _check_strong_smyth_lawson, _check_strongmax_consequences, _check_apart_strictly_below,
    _check_basis_dense, _check_located_neighbourhoods, _check_maximal_subspace,
)


def theorem_suite(poset: FinitePoset, max_size: Optional[int] = None) -> SuiteReport:
    """Run every exhaustive check on ``poset``.

    Args:
        poset: the poset to examine
        max_size: size cap; defaults to ``APARTDOMAIN_MAX_POSET_SIZE``

    Returns:
        SuiteReport: one CheckReport per check plus a summary of the
        maximal and strongly maximal elements

    Raises:
        SizeTooLarge: if the poset exceeds the cap
    """
    cap = max_size if max_size is not None else get_settings().max_poset_size
    if poset.n > cap:
        raise SizeTooLarge(f"{poset.name} has {poset.n} elements, the cap is {cap}")
    t = tables(poset)
    report = SuiteReport(subject=poset.name)
    for check in CHECKS:
        report.checks.append(check(poset, t))
    report.summary = {
        'elements': poset.n,
        'scott_opens': len(t.opens),
        'maximal': sorted(poset.labels_of(poset.maximal)),
        'strongly_maximal': sorted(strongly_maximal(poset)),
    }
    if not report.passed:
        logger.warning("theorem suite failed on %s: %s", poset.name,
                       [c.name for c in report.checks if not c.passed])
    return report
