"""Measures on frames: exact finite valuations, and certified bounds on
the rational opens of [0,1].

Finite half. A FiniteValuation assigns a rational to every element, zero
at bottom, monotone, modular. The outer measure of a sublocale is the
minimum over its open neighborhoods, attained because the neighborhoods
of X (the V with e_X(V) = top) form a filter. Reductions, restrictions,
partners and the reduced algebra are all exact.

Interval half. A descriptor (Lebesgue, a restriction of it, finitely many
atoms, or a mixture) measures RatOpens exactly; presented sublocales get
MeasureBounds whose width the caller caps with tol. Upper bounds come
from neighborhood streams, punctured at atoms the sublocale provably
avoids; lower bounds come from a partner whose union with the sublocale
is structurally all of [0,1], or are an honest zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from locale_lab import intervals as ivs
from locale_lab.frames import Frame, FrameError
from locale_lab.intervals import EMPTY_RO, FULL_RO, FinUnion, Iv, RatOpen, frac
from locale_lab.presented import (
    Closed,
    CoCountable,
    CountablePoints,
    Generic,
    IntersectWithOpen,
    LazyOpen,
    Open,
    PresentedSublocale,
    Union,
    UnsupportedConstructor,
    avoids_point,
    lazy_puncture,
    neighborhood,
    ratopen_minus_points,
    structural_union_is_whole,
)
from locale_lab.sublocales import (
    Sublocale,
    closed_sublocale,
    fixpoint_frame,
    intersect,
    is_subsublocale,
    open_sublocale,
    union as sub_union,
    whole,
)

# ---------------------------------------------------------------------------
# finite valuations
# ---------------------------------------------------------------------------


class ValuationError(FrameError):
    pass


class NotZeroAtBottom(ValuationError):
    def __init__(self, value):
        super().__init__(f"bottom carries measure {value}")


class NotMonotone(ValuationError):
    def __init__(self, a, b):
        super().__init__(f"{a!r} below {b!r} but measured above it")
        self.witness = (a, b)


class NotModular(ValuationError):
    def __init__(self, a, b):
        super().__init__(f"measure of join and meet of {a!r},{b!r} breaks modularity")
        self.witness = (a, b)


class FiniteValuation:
    __slots__ = ("frame", "mu")

    def __init__(self, frame: Frame, mu: tuple):
        self.frame = frame
        self.mu = mu

    def __call__(self, v) -> Fraction:
        return self.mu[self.frame.el(v)]

    def __repr__(self):
        pairs = ", ".join(
            f"{self.frame.elements[i]}={self.mu[i]}" for i in range(self.frame.n)
        )
        return f"FiniteValuation({pairs})"


def validate_valuation(frame: Frame, table) -> FiniteValuation:
    if isinstance(table, dict):
        mu = [None] * frame.n
        for k, v in table.items():
            mu[frame.el(k)] = frac(v)
        missing = [i for i, v in enumerate(mu) if v is None]
        if missing:
            raise ValuationError(
                f"no measure for {frame.elements[missing[0]]!r}"
            )
    else:
        mu = [frac(v) for v in table]
        if len(mu) != frame.n:
            raise ValuationError(f"{len(mu)} values for {frame.n} elements")
    mu = tuple(mu)
    if mu[frame.bottom] != 0:
        raise NotZeroAtBottom(mu[frame.bottom])
    for a in range(frame.n):
        for b in range(frame.n):
            if frame.leq(a, b) and mu[a] > mu[b]:
                raise NotMonotone(frame.elements[a], frame.elements[b])
    for a in range(frame.n):
        for b in range(a, frame.n):
            if mu[frame.join(a, b)] + mu[frame.meet(a, b)] != mu[a] + mu[b]:
                raise NotModular(frame.elements[a], frame.elements[b])
    return FiniteValuation(frame, mu)


def measure_open(val: FiniteValuation, v) -> Fraction:
    return val.mu[val.frame.el(v)]


def vstar(x: Sublocale) -> int:
    """The smallest open neighborhood: the meet of all V with e_X(V) = top."""
    f = x.frame
    return f.meet_all(v for v in range(f.n) if x.nucleus[v] == f.top)


def outer_measure_finite(val: FiniteValuation, x: Sublocale) -> Fraction:
    if x.frame is not val.frame:
        raise FrameError("sublocale and valuation live on different frames")
    return val.mu[vstar(x)]


def null_partner(val: FiniteValuation, a: Sublocale):
    """The closed complement of a's smallest neighborhood.

    Every open around both a and the partner is the top, so the union
    carries the full measure; and a stays inside [V*], so the meet with
    the partner is empty. Both facts are returned as exact certificates.
    """
    v = vstar(a)
    b = closed_sublocale(val.frame, v)
    certs = {
        "union": outer_measure_finite(val, sub_union(a, b)),
        "intersection": outer_measure_finite(val, intersect(a, b)),
        "partner": outer_measure_finite(val, b),
    }
    return b, certs


def restrict_valuation(val: FiniteValuation, a: Sublocale):
    """The induced valuation on a's fixpoint frame: an open of a measures
    as the outer measure of its trace on a. Returns (valuation, fix)."""
    omega, fix = fixpoint_frame(a)
    mu = tuple(
        outer_measure_finite(val, intersect(a, open_sublocale(val.frame, amb)))
        for amb in fix
    )
    return validate_valuation(omega, mu), fix


def mu_reduce(val: FiniteValuation, a: Sublocale | None = None, all_subs=None) -> Sublocale:
    """The smallest sublocale of a with the same outer measure as a.

    Computed from the definition: meet every sublocale of a that carries
    the full measure of a, then certify the meet still does. The family
    is meet-closed wherever additivity is strict, and the certificate
    protects the cases where it might not be.
    """
    from locale_lab.sublocales import enumerate_sublocales, intersect_all

    frame = val.frame
    if a is None:
        a = whole(frame)
    if all_subs is None:
        all_subs = enumerate_sublocales(frame)
    target = outer_measure_finite(val, a)
    family = [
        z for z in all_subs
        if is_subsublocale(z, a) and outer_measure_finite(val, z) == target
    ]
    r = intersect_all(frame, family)
    if outer_measure_finite(val, r) != target:
        raise ValuationError(
            "the full-measure sublocales of this piece have no least member"
        )
    return r


def strict_additivity_check(val: FiniteValuation, x: Sublocale, y: Sublocale) -> Fraction:
    """The exact residual mu(X u Y) + mu(X n Y) - mu(X) - mu(Y).

    Zero on every pair when the frame is boolean; can be negative on
    non-regular frames, which is the point of reporting it.
    """
    return (
        outer_measure_finite(val, sub_union(x, y))
        + outer_measure_finite(val, intersect(x, y))
        - outer_measure_finite(val, x)
        - outer_measure_finite(val, y)
    )


@dataclass(frozen=True)
class ReducedAlgebra:
    frame: Frame
    reps: tuple  # reps[i] is the ambient Sublocale behind frame element i
    quotient: object  # FrameMorphism from the ambient frame
    valuation: FiniteValuation


def reduced_algebra(val: FiniteValuation, max_size: int = 10) -> ReducedAlgebra:
    """The frame of reduced sublocales, with its quotient map and measure.

    Reduced sublocales are ordered by inclusion; unions of reduced ones
    are reduced, so joins agree, and the rebuild supplies meets (reduce
    the intersection). V -> reduce([V]) must then be a frame morphism.
    """
    from locale_lab.frames import FrameSpec, build_frame
    from locale_lab.morphisms import validate_morphism
    from locale_lab.sublocales import enumerate_sublocales

    frame = val.frame
    subs = enumerate_sublocales(frame, max_size)
    seen = {}
    for s in subs:
        r = mu_reduce(val, s, all_subs=subs)
        seen[r.nucleus] = r
    reps = sorted(seen.values(), key=lambda r: (len(r.fixpoints), r.nucleus))
    labels = [f"r{i}" for i in range(len(reps))]
    leq = [
        (labels[i], labels[j])
        for i in range(len(reps))
        for j in range(len(reps))
        if is_subsublocale(reps[i], reps[j])
    ]
    red = build_frame(FrameSpec.make(labels, leq))
    index = {reps[i].nucleus: i for i in range(len(reps))}
    fstar = tuple(
        index[mu_reduce(val, open_sublocale(frame, v), all_subs=subs).nucleus]
        for v in range(frame.n)
    )
    quotient = validate_morphism(frame, red, fstar)
    nu = validate_valuation(
        red, tuple(outer_measure_finite(val, r) for r in reps)
    )
    return ReducedAlgebra(red, tuple(reps), quotient, nu)


# ---------------------------------------------------------------------------
# interval descriptors
# ---------------------------------------------------------------------------


class UnsupportedDescriptor(ValueError):
    pass


class UnsupportedCombination(ValueError):
    pass


class TolNotReached(RuntimeError):
    def __init__(self, msg, lower=None, upper=None):
        super().__init__(msg)
        self.lower = lower
        self.upper = upper


class NoResidualBound(RuntimeError):
    pass


@dataclass(frozen=True)
class Lebesgue:
    pass


@dataclass(frozen=True)
class LebesgueRestrictedTo:
    region: FinUnion


@dataclass(frozen=True)
class Atomic:
    atoms: tuple  # ((point, weight), ...) sorted by point

    def __post_init__(self):
        last = None
        for q, w in self.atoms:
            if not (0 <= q <= 1):
                raise UnsupportedDescriptor(f"atom {q} outside [0,1]")
            if w <= 0:
                raise UnsupportedDescriptor(f"atom {q} has weight {w}")
            if last is not None and q <= last:
                raise UnsupportedDescriptor("atoms not strictly increasing")
            last = q


def atomic(pairs) -> Atomic:
    pairs = sorted((frac(q), frac(w)) for q, w in pairs)
    return Atomic(tuple(pairs))


@dataclass(frozen=True)
class Mixture:
    parts: tuple

    def __post_init__(self):
        if not self.parts:
            raise UnsupportedDescriptor("empty mixture")


def measure_fin(d, fin: FinUnion) -> Fraction:
    if isinstance(d, Lebesgue):
        return fin.length()
    if isinstance(d, LebesgueRestrictedTo):
        return ivs.intersect(fin, d.region).length()
    if isinstance(d, Atomic):
        return sum((w for q, w in d.atoms if fin.contains(q)), Fraction(0))
    if isinstance(d, Mixture):
        return sum((measure_fin(p, fin) for p in d.parts), Fraction(0))
    raise UnsupportedDescriptor(f"cannot measure with {type(d).__name__}")


def measure_ro(d, u: RatOpen) -> Fraction:
    return measure_fin(d, u.fin)


def total_measure(d) -> Fraction:
    return measure_fin(d, ivs.FULL)


def measure_closed_exact(d, u: RatOpen) -> Fraction:
    """Outer measure of the closed complement of u: total minus mu(u).

    Exact for every descriptor: the shrinking neighborhoods converge to
    it from above, and subadditivity pins it from below.
    """
    return total_measure(d) - measure_ro(d, u)


def point_mass(d, q) -> Fraction:
    q = frac(q)
    if isinstance(d, Atomic):
        for p, w in d.atoms:
            if p == q:
                return w
        return Fraction(0)
    if isinstance(d, Mixture):
        return sum((point_mass(p, q) for p in d.parts), Fraction(0))
    return Fraction(0)


def positive_atoms(d) -> list:
    if isinstance(d, Atomic):
        return list(d.atoms)
    if isinstance(d, Mixture):
        return [a for p in d.parts for a in positive_atoms(p)]
    return []


def null_open(d) -> RatOpen:
    """The largest open of measure zero: the exterior of the support."""
    if isinstance(d, Lebesgue):
        return EMPTY_RO
    if isinstance(d, LebesgueRestrictedTo):
        fat = ivs.normalize(p for p in d.region.pieces if p.lo < p.hi)
        return RatOpen(ivs.interior(ivs.complement(ivs.closure(fat))))
    if isinstance(d, Atomic):
        return ratopen_minus_points(FULL_RO, [q for q, _ in d.atoms])
    if isinstance(d, Mixture):
        acc = FULL_RO
        for p in d.parts:
            acc = ivs.meet(acc, null_open(p))
        return acc
    raise UnsupportedDescriptor(f"cannot take support of {type(d).__name__}")


def restrict_to_open(d, u: RatOpen):
    return _restrict_fin(d, u.fin)


def restrict_to_closed(d, u: RatOpen):
    """Restrict to the closed complement of u."""
    return _restrict_fin(d, ivs.complement(u.fin))


def _restrict_fin(d, fin: FinUnion):
    if isinstance(d, Lebesgue):
        return LebesgueRestrictedTo(fin)
    if isinstance(d, LebesgueRestrictedTo):
        return LebesgueRestrictedTo(ivs.intersect(d.region, fin))
    if isinstance(d, Atomic):
        kept = tuple((q, w) for q, w in d.atoms if fin.contains(q))
        return Atomic(kept) if kept else LebesgueRestrictedTo(ivs.EMPTY)
    if isinstance(d, Mixture):
        return Mixture(tuple(_restrict_fin(p, fin) for p in d.parts))
    raise UnsupportedDescriptor(f"cannot restrict {type(d).__name__}")


# -- reduction ----------------------------------------------------------------


def _absorb_null_gaps(d, u: RatOpen) -> RatOpen:
    """Fill single-point holes of zero point mass."""
    pieces = list(u.fin.pieces)
    if not pieces:
        return u
    out = [pieces[0]]
    for p in pieces[1:]:
        a = out[-1]
        if a.hi == p.lo and not a.hi_in and not p.lo_in and point_mass(d, a.hi) == 0:
            out[-1] = Iv(a.lo, p.hi, a.lo_in, p.hi_in)
        else:
            out.append(p)
    return RatOpen(FinUnion(tuple(out)))


def mu_reduce_open(d, u: RatOpen) -> RatOpen:
    """The largest open with the same measure as u: join the exterior of
    the support, then absorb massless single-point gaps."""
    return _absorb_null_gaps(d, ivs.join(u, null_open(d)))


def mu_reduce_interval(d, a: PresentedSublocale | None = None) -> PresentedSublocale:
    """The reduction of a as a presented sublocale (its closed hull shape).

    Supported for a = None (all of [0,1]), opens, and closed complements;
    anything else raises UnsupportedConstructor.
    """
    if a is None:
        return Closed(mu_reduce_open(d, EMPTY_RO))
    if isinstance(a, Open) and isinstance(a.part, RatOpen):
        if a.part == FULL_RO:
            return Closed(mu_reduce_open(d, EMPTY_RO))
        inner = restrict_to_open(d, a.part)
        return IntersectWithOpen(Closed(mu_reduce_open(inner, EMPTY_RO)), a.part)
    if isinstance(a, Closed):
        inner = restrict_to_closed(d, a.of_open)
        hull = mu_reduce_open(inner, EMPTY_RO)
        return Closed(ivs.join(a.of_open, hull))
    raise UnsupportedConstructor(
        f"reduction not supported for {type(a).__name__}"
    )


# -- certified bounds -----------------------------------------------------------


@dataclass(frozen=True)
class MeasureBounds:
    lower: Fraction
    upper: Fraction
    certificates: tuple

    @property
    def width(self) -> Fraction:
        return self.upper - self.lower

    def contains(self, x) -> bool:
        return self.lower <= frac(x) <= self.upper

    @property
    def is_exact(self) -> bool:
        return self.lower == self.upper

    def __str__(self):
        if self.is_exact:
            return f"[{self.lower}, {self.upper}] (exact)"
        return f"[{self.lower}, {self.upper}]"


def _rest_bound(d, lazy: LazyOpen, n: int) -> Fraction:
    """Bound on the descriptor measure of the limit beyond stage n."""
    if isinstance(d, (Lebesgue, LebesgueRestrictedTo)):
        return lazy.tail(n)
    if isinstance(d, Atomic):
        stage = lazy.stage(n)
        return sum(
            (w for q, w in d.atoms if not stage.contains(q) and lazy.may_contain(q)),
            Fraction(0),
        )
    if isinstance(d, Mixture):
        return sum((_rest_bound(p, lazy, n) for p in d.parts), Fraction(0))
    raise UnsupportedDescriptor(f"cannot bound tails of {type(d).__name__}")


def _lazy_upper(d, lazy: LazyOpen, inner_tol: Fraction, max_stage: int = 80) -> Fraction:
    best = None
    for n in range(max_stage + 1):
        cand = measure_fin(d, lazy.stage(n).fin) + _rest_bound(d, lazy, n)
        if best is None or cand < best:
            best = cand
        if _rest_bound(d, lazy, n) <= inner_tol:
            return best
    raise TolNotReached("stage bound did not tighten enough", upper=best)


def _partner_of(x: PresentedSublocale):
    if isinstance(x, CountablePoints):
        return CoCountable(x.points)
    if isinstance(x, CoCountable):
        return CountablePoints(x.points)
    if isinstance(x, Open) and isinstance(x.part, RatOpen):
        return Closed(x.part)
    if isinstance(x, Closed):
        return Open(x.of_open)
    return None


def _punctured_neighborhood(x, d, k) -> LazyOpen:
    nb = neighborhood(x, k)
    pts = [q for q, w in positive_atoms(d) if avoids_point(x, q)]
    return lazy_puncture(nb, pts) if pts else nb


def measure_bounds(
    x: PresentedSublocale,
    d,
    tol,
    *,
    max_k: int = 40,
    via_stream: bool = False,
) -> MeasureBounds:
    """Certified bounds on the outer measure of x, of width at most tol.

    via_stream skips the exact shortcuts for opens and closed sets, so the
    converging stream can be checked against them.
    """
    tol = frac(tol)
    total = total_measure(d)
    if not via_stream:
        if isinstance(x, Open) and isinstance(x.part, RatOpen):
            m = measure_ro(d, x.part)
            return MeasureBounds(m, m, ("exact-open",))
        if isinstance(x, Closed):
            m = measure_closed_exact(d, x.of_open)
            return MeasureBounds(m, m, ("exact-closed",))
    if isinstance(x, Union):
        for i, p in enumerate(x.parts):
            for q in x.parts[i + 1:]:
                if structural_union_is_whole(p, q):
                    return MeasureBounds(total, total, ("structural-whole",))
        if not via_stream and all(
            isinstance(p, Open) and isinstance(p.part, RatOpen) for p in x.parts
        ):
            m = measure_ro(d, ivs.join(*(p.part for p in x.parts)))
            return MeasureBounds(m, m, ("exact-open",))

    certs = ["stream-upper"]
    lower = Fraction(0)
    partner = _partner_of(x)
    if partner is not None and structural_union_is_whole(x, partner):
        certs.append("partner-lower")
    else:
        partner = None
    if isinstance(x, Generic):
        certs.append("lower-zero")
    if isinstance(x, Union):
        # any part sits inside x, so its lower bound transfers
        for p in x.parts:
            sub = measure_bounds(p, d, tol, max_k=max_k)
            if sub.lower > lower:
                lower = sub.lower
        certs.append("monotone-from-parts")

    inner = tol / 4
    upper = total
    for k in range(1, max_k + 1):
        nb = _punctured_neighborhood(x, d, k)
        try:
            upper = min(upper, _lazy_upper(d, nb, inner))
        except TolNotReached as exc:
            if exc.upper is not None:
                upper = min(upper, exc.upper)
        if partner is not None:
            pnb = _punctured_neighborhood(partner, d, k)
            try:
                lower = max(lower, total - _lazy_upper(d, pnb, inner))
            except TolNotReached as exc:
                if exc.upper is not None:
                    lower = max(lower, total - exc.upper)
        if upper - lower <= tol:
            return MeasureBounds(lower, upper, tuple(certs))
    raise TolNotReached(
        f"bounds stuck at [{lower}, {upper}] after {max_k} neighborhoods",
        lower=lower,
        upper=upper,
    )


@dataclass(frozen=True)
class ResidualBounds:
    lo: Fraction
    hi: Fraction
    union: MeasureBounds
    inter: MeasureBounds
    x: MeasureBounds
    y: MeasureBounds

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo


def strict_additivity_interval(x, y, d, tol) -> ResidualBounds:
    """Interval arithmetic on mu(XuY) + mu(XnY) - mu(X) - mu(Y).

    The union is measured as a presentation (or recognized as the whole
    space structurally); the intersection is bounded by monotonicity, or
    exactly when both arguments are plain opens.
    """
    tol = frac(tol)
    try:
        bx = measure_bounds(x, d, tol)
        by = measure_bounds(y, d, tol)
        bu = measure_bounds(Union((x, y)), d, tol)
        if isinstance(x, Open) and isinstance(y, Open) and \
                isinstance(x.part, RatOpen) and isinstance(y.part, RatOpen):
            m = measure_ro(d, ivs.meet(x.part, y.part))
            bi = MeasureBounds(m, m, ("exact-open",))
        else:
            cap = min(bx.upper, by.upper, bx.upper + by.upper - bu.lower)
            cap = max(cap, Fraction(0))
            bi = MeasureBounds(Fraction(0), cap, ("monotone-intersection",))
    except TolNotReached as exc:
        raise NoResidualBound(str(exc)) from exc
    return ResidualBounds(
        lo=bu.lower + bi.lower - bx.upper - by.upper,
        hi=bu.upper + bi.upper - bx.lower - by.lower,
        union=bu,
        inter=bi,
        x=bx,
        y=by,
    )


def null_partner_interval(x: PresentedSublocale, d, tol):
    """A partner b whose union with x carries full measure while the meet
    stays null, with certificates.

    Opens pair with their closed complement and countable-point shapes
    with their co-shape, exactly. Any other x certified null within tol
    gets the closed complement of a small neighborhood stage; a shape
    that is neither paired nor null has no partner here.
    """
    tol = frac(tol)
    total = total_measure(d)
    if isinstance(x, Open) and isinstance(x.part, RatOpen):
        # [U] u c(U) is everything and [U] n c(U) is empty, whatever the
        # boundary weighs
        u = x.part
        m = measure_ro(d, u)
        return Closed(u), {
            "union": MeasureBounds(total, total, ("structural-whole",)),
            "intersection": MeasureBounds(Fraction(0), Fraction(0), ("open-closed-disjoint",)),
            "partner": MeasureBounds(total - m, total - m, ("exact-closed",)),
        }
    if isinstance(x, Closed):
        m = measure_ro(d, x.of_open)
        return Open(x.of_open), {
            "union": MeasureBounds(total, total, ("structural-whole",)),
            "intersection": MeasureBounds(Fraction(0), Fraction(0), ("open-closed-disjoint",)),
            "partner": MeasureBounds(m, m, ("exact-open",)),
        }
    if isinstance(x, (CountablePoints, CoCountable)):
        b = _partner_of(x)
        bx = measure_bounds(x, d, tol)
        bb = measure_bounds(b, d, tol)
        inter_hi = max(Fraction(0), bx.upper + bb.upper - total)
        return b, {
            "union": MeasureBounds(total, total, ("structural-whole",)),
            "intersection": MeasureBounds(Fraction(0), inter_hi, ("additivity-accounting",)),
            "partner": bb,
        }
    bx = measure_bounds(x, d, tol)
    if bx.upper > tol:
        raise UnsupportedCombination(
            f"{type(x).__name__} is not certified null (upper {bx.upper}) "
            "and has no structural partner"
        )
    w = _small_stage(x, d, tol)
    m = measure_closed_exact(d, w)
    return Closed(w), {
        "union": MeasureBounds(m, total, ("closed-part-lower",)),
        "intersection": MeasureBounds(Fraction(0), bx.upper, ("monotone-intersection",)),
        "partner": MeasureBounds(m, m, ("exact-closed",)),
    }


def _small_stage(x, d, tol, max_k: int = 40) -> RatOpen:
    """A neighborhood stage of x with descriptor measure at most 2*tol."""
    for k in range(1, max_k + 1):
        nb = _punctured_neighborhood(x, d, k)
        for n in range(80):
            stage = nb.stage(n)
            if _rest_bound(d, nb, n) <= tol:
                if measure_ro(d, stage) <= 2 * tol:
                    return stage
                break
    raise TolNotReached("no neighborhood stage of small enough measure")


# ---------------------------------------------------------------------------
# loading
# ---------------------------------------------------------------------------


def valuation_from_json(frame: Frame, obj, where: str = "$") -> FiniteValuation:
    from locale_lab.frames import SpecError

    if not isinstance(obj, dict):
        raise SpecError("valuation must be an object", where)
    extra = set(obj) - {"frame", "mu"}
    if extra:
        raise SpecError(f"unknown keys {sorted(extra)}", where)
    mu = obj.get("mu")
    if not isinstance(mu, dict):
        raise SpecError("mu must map element names to rationals", f"{where}.mu")
    table = {}
    for k, v in mu.items():
        if k not in frame.index:
            raise SpecError(f"unknown element {k!r}", f"{where}.mu")
        try:
            table[k] = frac(v)
        except (ValueError, ZeroDivisionError, TypeError):
            raise SpecError(f"bad rational {v!r}", f"{where}.mu.{k}") from None
    return validate_valuation(frame, table)


def descriptor_from_json(obj, where: str = "$"):
    from locale_lab.frames import SpecError
    from locale_lab.intervals import parse_fin

    if obj == "lebesgue":
        return Lebesgue()
    if isinstance(obj, dict) and set(obj) == {"restrict"}:
        return LebesgueRestrictedTo(parse_fin(obj["restrict"]))
    if isinstance(obj, dict) and set(obj) == {"atoms"}:
        pairs = obj["atoms"]
        if not isinstance(pairs, list):
            raise SpecError("atoms must be a list of [point, weight]", f"{where}.atoms")
        return atomic((q, w) for q, w in pairs)
    if isinstance(obj, dict) and set(obj) == {"mix"}:
        parts = obj["mix"]
        if not isinstance(parts, list) or not parts:
            raise SpecError("mix must be a nonempty list", f"{where}.mix")
        return Mixture(tuple(
            descriptor_from_json(p, f"{where}.mix[{i}]") for i, p in enumerate(parts)
        ))
    raise SpecError(f"unrecognized descriptor {obj!r}", where)


def parse_descriptor(text: str):
    """Parse the command-line grammar:

        lebesgue
        restrict [0,1/2]|(3/4,1)
        atoms 1/2:1,3/4:1/3
        mix lebesgue + atoms 1/2:1
    """
    from locale_lab.intervals import parse_fin

    text = text.strip()
    if text == "lebesgue":
        return Lebesgue()
    if text.startswith("restrict "):
        return LebesgueRestrictedTo(parse_fin(text[len("restrict "):]))
    if text.startswith("atoms "):
        pairs = []
        for chunk in text[len("atoms "):].replace(",", " ").split():
            if ":" not in chunk:
                raise UnsupportedDescriptor(f"atom {chunk!r} is not point:weight")
            q, _, w = chunk.partition(":")
            pairs.append((q, w))
        if not pairs:
            raise UnsupportedDescriptor("no atoms given")
        return atomic(pairs)
    if text.startswith("mix "):
        parts = [p.strip() for p in text[len("mix "):].split("+")]
        if not all(parts):
            raise UnsupportedDescriptor("empty mixture component")
        return Mixture(tuple(parse_descriptor(p) for p in parts))
    raise UnsupportedDescriptor(f"unrecognized descriptor {text!r}")
