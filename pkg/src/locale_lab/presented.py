"""Sublocales of [0,1] presented by constructors, with open neighborhoods.

The frame here is the rational-endpoint opens of [0,1], so sublocales are
given symbolically: opens, closed complements, countable point sets and
their complements, the smallest dense sublocale, and unions/meets of
those. What makes them computable is the neighborhood stream: for each
presentation, `neighborhood(x, k)` is an open set containing x, and the
stream's measures converge down to the outer measure.

Opens come in two flavours: an exact RatOpen, or a LazyOpen whose stages
grow forever but whose unseen remainder has a certified length bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from locale_lab import intervals as ivs
from locale_lab.intervals import EMPTY, FULL_RO, Iv, RatOpen, frac, normalize


class UnsupportedConstructor(ValueError):
    pass


# -- countable point sets -----------------------------------------------------

def _stern_brocot():
    yield Fraction(0)
    yield Fraction(1)
    level = [Fraction(0), Fraction(1)]
    while True:
        mediants = [
            Fraction(a.numerator + b.numerator, a.denominator + b.denominator)
            for a, b in zip(level, level[1:])
        ]
        yield from mediants
        merged = []
        for x, m in zip(level, mediants):
            merged += [x, m]
        merged.append(level[-1])
        level = merged


def _dyadics():
    yield Fraction(0)
    yield Fraction(1)
    d = 2
    while True:
        for k in range(1, d, 2):
            yield Fraction(k, d)
        d *= 2


class Enumerator:
    """An infinite listing of rationals in [0,1] with decidable membership."""

    def __init__(self, name, factory, membership):
        self.name = name
        self._factory = factory
        self._membership = membership
        self._cache = []
        self._gen = factory()

    def prefix(self, k: int) -> list:
        while len(self._cache) < k:
            self._cache.append(next(self._gen))
        return self._cache[:k]

    def contains(self, q) -> bool:
        q = frac(q)
        return Fraction(0) <= q <= Fraction(1) and self._membership(q)

    def __repr__(self):
        return f"Enumerator({self.name})"


def _is_dyadic(q: Fraction) -> bool:
    d = q.denominator
    return d & (d - 1) == 0


RATIONALS = Enumerator("rationals-stern-brocot", _stern_brocot, lambda q: True)
DYADICS = Enumerator("dyadics", _dyadics, _is_dyadic)

ENUMERATORS = {e.name: e for e in (RATIONALS, DYADICS)}


def get_enumerator(name: str) -> Enumerator:
    try:
        return ENUMERATORS[name]
    except KeyError:
        raise UnsupportedConstructor(
            f"unknown enumerator {name!r}; know {sorted(ENUMERATORS)}"
        ) from None


# -- lazy opens ----------------------------------------------------------------

class LazyOpen:
    """An open given by increasing stages plus a length bound on the rest.

    stage(n) is a RatOpen below the limit; tail(n) bounds the total length
    of limit-minus-stage(n). may_contain is a conservative membership test:
    False only when the point is provably outside the limit.
    """

    def __init__(self, stage_fn, tail_fn, may_fn):
        self._stage_fn = stage_fn
        self._tail_fn = tail_fn
        self._may_fn = may_fn
        self._stages = {}

    def stage(self, n: int) -> RatOpen:
        if n not in self._stages:
            self._stages[n] = self._stage_fn(n)
        return self._stages[n]

    def tail(self, n: int) -> Fraction:
        return self._tail_fn(n)

    def may_contain(self, x) -> bool:
        return self._may_fn(frac(x))


def as_lazy(u: RatOpen) -> LazyOpen:
    return LazyOpen(lambda n: u, lambda n: Fraction(0), u.contains)


def lazy_cover(points: Enumerator, eps) -> LazyOpen:
    """An open covering every enumerated point, of total length below eps/2.

    Point i gets the interval (q_i - r, q_i + r) with r = eps / 2**(i+3),
    clipped to [0,1]; the pieces past stage n sum to at most eps / 2**(n+1).
    """
    eps = frac(eps)
    if eps <= 0:
        raise UnsupportedConstructor("cover needs a positive eps")

    def stage(n):
        pieces = []
        for i, q in enumerate(points.prefix(n)):
            r = eps / 2 ** (i + 3)
            lo = max(Fraction(0), q - r)
            hi = min(Fraction(1), q + r)
            pieces.append(Iv(lo, hi, q - r < 0, q + r > 1))
        return RatOpen(normalize(pieces))

    return LazyOpen(stage, lambda n: eps / 2 ** (n + 1), lambda x: True)


def lazy_join(a: LazyOpen, b: LazyOpen) -> LazyOpen:
    return LazyOpen(
        lambda n: ivs.join(a.stage(n), b.stage(n)),
        lambda n: a.tail(n) + b.tail(n),
        lambda x: a.may_contain(x) or b.may_contain(x),
    )


def lazy_meet_open(a: LazyOpen, u: RatOpen) -> LazyOpen:
    return LazyOpen(
        lambda n: ivs.meet(a.stage(n), u),
        a.tail,
        lambda x: a.may_contain(x) and u.contains(x),
    )


def points_fin(pts):
    return normalize(Iv(frac(p), frac(p), True, True) for p in pts)


def ratopen_minus_points(u: RatOpen, pts) -> RatOpen:
    return RatOpen(ivs.minus(u.fin, points_fin(pts)))


def lazy_puncture(a: LazyOpen, pts) -> LazyOpen:
    """Remove finitely many points from the limit open."""
    pts = tuple(frac(p) for p in pts)
    return LazyOpen(
        lambda n: ratopen_minus_points(a.stage(n), pts),
        a.tail,
        lambda x: a.may_contain(x) and x not in pts,
    )


def full_minus_points(pts) -> RatOpen:
    return ratopen_minus_points(FULL_RO, pts)


# -- presentations --------------------------------------------------------------

@dataclass(frozen=True)
class PresentedSublocale:
    pass


@dataclass(frozen=True)
class Open(PresentedSublocale):
    part: object  # RatOpen or LazyOpen


@dataclass(frozen=True)
class Closed(PresentedSublocale):
    """The closed complement of an open: the sublocale [0,1] minus of_open."""

    of_open: RatOpen


@dataclass(frozen=True)
class CountablePoints(PresentedSublocale):
    points: Enumerator


@dataclass(frozen=True)
class CoCountable(PresentedSublocale):
    """Everything except the enumerated points."""

    points: Enumerator


@dataclass(frozen=True)
class Generic(PresentedSublocale):
    """The smallest dense sublocale."""


@dataclass(frozen=True)
class Union(PresentedSublocale):
    parts: tuple

    def __post_init__(self):
        if not self.parts:
            raise UnsupportedConstructor("union of nothing")


@dataclass(frozen=True)
class IntersectWithOpen(PresentedSublocale):
    part: PresentedSublocale
    open_: RatOpen


@dataclass(frozen=True)
class IntersectWithClosed(PresentedSublocale):
    part: PresentedSublocale
    of_open: RatOpen  # meet with the closed complement of this open


def point_sublocale(q) -> Closed:
    return Closed(full_minus_points([q]))


def closed_neighborhood(u: RatOpen, k: int) -> RatOpen:
    """An open around the closed complement of u, shrinking as k grows.

    Each piece of u keeps a closed core, grown toward the full piece as k
    increases; the complement of the cores is the neighborhood.
    """
    cores = []
    for p in u.fin.pieces:
        d = (p.hi - p.lo) / 2 ** (k + 2)
        lo = p.lo if p.lo_in else p.lo + d
        hi = p.hi if p.hi_in else p.hi - d
        cores.append(Iv(lo, hi, True, True))
    return RatOpen(ivs.complement(normalize(cores)))


def neighborhood(x: PresentedSublocale, k: int) -> LazyOpen:
    """The k-th open neighborhood of x; measures converge down along k."""
    if isinstance(x, Open):
        return x.part if isinstance(x.part, LazyOpen) else as_lazy(x.part)
    if isinstance(x, Closed):
        return as_lazy(closed_neighborhood(x.of_open, k))
    if isinstance(x, CountablePoints):
        return lazy_cover(x.points, Fraction(1, 2 ** k))
    if isinstance(x, CoCountable):
        return as_lazy(full_minus_points(x.points.prefix(k)))
    if isinstance(x, Generic):
        return lazy_cover(RATIONALS, Fraction(1, 2 ** k))
    if isinstance(x, Union):
        acc = neighborhood(x.parts[0], k)
        for part in x.parts[1:]:
            acc = lazy_join(acc, neighborhood(part, k))
        return acc
    if isinstance(x, IntersectWithOpen):
        return lazy_meet_open(neighborhood(x.part, k), x.open_)
    if isinstance(x, IntersectWithClosed):
        return lazy_meet_open(
            neighborhood(x.part, k), closed_neighborhood(x.of_open, k)
        )
    raise UnsupportedConstructor(f"no neighborhood stream for {type(x).__name__}")


def avoids_point(x: PresentedSublocale, a) -> bool:
    """Is x provably disjoint from the point a?

    True licenses removing a from every neighborhood of x. False means
    unknown, not membership.
    """
    a = frac(a)
    if isinstance(x, Open):
        if isinstance(x.part, RatOpen):
            return not x.part.contains(a)
        return not x.part.may_contain(a)
    if isinstance(x, Closed):
        return x.of_open.contains(a)
    if isinstance(x, CountablePoints):
        return not x.points.contains(a)
    if isinstance(x, CoCountable):
        return x.points.contains(a)
    if isinstance(x, Generic):
        # the smallest dense sublocale misses every point: a dense open
        # stays dense with a point removed
        return True
    if isinstance(x, Union):
        return all(avoids_point(p, a) for p in x.parts)
    if isinstance(x, IntersectWithOpen):
        return avoids_point(x.part, a) or not x.open_.contains(a)
    if isinstance(x, IntersectWithClosed):
        return avoids_point(x.part, a) or x.of_open.contains(a)
    return False


def structural_union_is_whole(a: PresentedSublocale, b: PresentedSublocale) -> bool:
    """Certificate that a union b is all of [0,1], by shape alone."""
    pair = (a, b)
    for x, y in (pair, pair[::-1]):
        if (
            isinstance(x, CountablePoints)
            and isinstance(y, CoCountable)
            and x.points.name == y.points.name
        ):
            return True
        if (
            isinstance(x, Open)
            and isinstance(x.part, RatOpen)
            and isinstance(y, Closed)
            and x.part == y.of_open
        ):
            return True
    return False


def point_sublocale_meets_generic(q) -> bool:
    """Whether the point's sublocale meets the smallest dense sublocale.

    The meet is empty exactly when the point's open complement is dense,
    which holds for every point of [0,1].
    """
    w = full_minus_points([q])
    return not ivs.is_dense(w)
