"""Finite frames: complete distributive lattices with validated axioms.

Elements are integer indexes into a label tuple; after construction every
lattice operation is a table lookup. Validation is eager and total, so a
Frame that exists has already survived the partial-order, bound, lattice
and distributivity checks and downstream law suites never re-prove them.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path


class FrameError(ValueError):
    """Base class for construction and validation failures."""


class SpecError(FrameError):
    """Malformed input spec: duplicate names, unknown keys, bad shapes."""

    def __init__(self, message: str, where: str = "$"):
        super().__init__(f"{where}: {message}")
        self.where = where


class NotAPartialOrder(FrameError):
    def __init__(self, a, b):
        super().__init__(f"antisymmetry fails after closure: {a!r} <= {b!r} <= {a!r}")
        self.witness = (a, b)


class MissingBound(FrameError):
    def __init__(self, which: str):
        super().__init__(f"no {which} element")
        self.which = which


class NotALattice(FrameError):
    def __init__(self, kind: str, a, b):
        super().__init__(f"{kind} of {a!r} and {b!r} does not exist")
        self.kind = kind
        self.witness = (a, b)


class NotDistributive(FrameError):
    def __init__(self, w, v1, v2, lhs, rhs):
        super().__init__(
            f"{w!r} meet ({v1!r} join {v2!r}) = {lhs!r} "
            f"but the join of the meets is {rhs!r}"
        )
        self.witness = (w, v1, v2)


class InvalidTopology(FrameError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class FrameSpec:
    """An order presentation: element names plus generating leq pairs."""

    elements: tuple
    leq: tuple
    labels: dict | None = None

    @staticmethod
    def make(elements, leq, labels=None) -> "FrameSpec":
        return FrameSpec(tuple(elements), tuple((a, b) for a, b in leq), labels)


@dataclass(frozen=True)
class TopologySpec:
    """A finite point set with its open-set family."""

    points: tuple
    opens: tuple  # tuple of frozensets

    @staticmethod
    def make(points, opens) -> "TopologySpec":
        return TopologySpec(tuple(points), tuple(frozenset(o) for o in opens))


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Frame:
    """A validated finite frame. Elements are 0..n-1; `elements` holds names.

    `up[i]` / `down[i]` are bitmasks of the elements above / below i, so the
    order tests used by the law suites are single AND operations.
    """

    def __init__(self, elements, up, *, opens=None, point_names=None):
        self.elements = tuple(elements)
        self.n = len(self.elements)
        self.index = {name: i for i, name in enumerate(self.elements)}
        self.up = tuple(up)
        full = (1 << self.n) - 1
        down = [0] * self.n
        for i in range(self.n):
            for j in _bits(self.up[i]):
                down[j] |= 1 << i
        self.down = tuple(down)
        self._full_mask = full

        bottom = [i for i in range(self.n) if self.up[i] == full]
        top = [i for i in range(self.n) if self.down[i] == full]
        if not bottom:
            raise MissingBound("bottom")
        if not top:
            raise MissingBound("top")
        self.bottom = bottom[0]
        self.top = top[0]

        self._meet = self._binary_table(self.down, "meet")
        self._join = self._binary_table(self.up, "join")
        self._check_distributive()
        self._heyting = None

        # Only set when the frame came from a TopologySpec: the open set
        # behind each element, aligned with `elements`.
        self.opens = opens
        self.point_names = point_names

    # -- construction -------------------------------------------------

    def _binary_table(self, cone, kind):
        # meet(i,j) is the greatest element of down[i] & down[j]; such an
        # element exists iff the intersection equals its own cone.
        n = self.n
        table = []
        for i in range(n):
            row = []
            for j in range(n):
                common = cone[i] & cone[j]
                found = -1
                for k in _bits(common):
                    if cone[k] == common:
                        found = k
                        break
                if found < 0:
                    raise NotALattice(kind, self.elements[i], self.elements[j])
                row.append(found)
            table.append(tuple(row))
        return tuple(table)

    def _check_distributive(self):
        n = self.n
        meet, join = self._meet, self._join
        for w in range(n):
            mw = meet[w]
            for v1 in range(n):
                a = mw[v1]
                for v2 in range(n):
                    lhs = mw[join[v1][v2]]
                    rhs = join[a][mw[v2]]
                    if lhs != rhs:
                        e = self.elements
                        raise NotDistributive(e[w], e[v1], e[v2], e[lhs], e[rhs])

    @classmethod
    def build(cls, spec: FrameSpec) -> "Frame":
        names = list(spec.elements)
        if len(set(names)) != len(names):
            dup = next(x for x in names if names.count(x) > 1)
            raise SpecError(f"duplicate element {dup!r}", "$.elements")
        if not names:
            raise SpecError("empty element list", "$.elements")
        index = {name: i for i, name in enumerate(names)}
        n = len(names)
        up = [1 << i for i in range(n)]
        for a, b in spec.leq:
            if a not in index:
                raise SpecError(f"unknown element {a!r}", "$.leq")
            if b not in index:
                raise SpecError(f"unknown element {b!r}", "$.leq")
            up[index[a]] |= 1 << index[b]
        # reflexive-transitive closure
        changed = True
        while changed:
            changed = False
            for i in range(n):
                acc = up[i]
                for j in _bits(up[i]):
                    acc |= up[j]
                if acc != up[i]:
                    up[i] = acc
                    changed = True
        for i in range(n):
            for j in _bits(up[i]):
                if j != i and (up[j] >> i) & 1:
                    raise NotAPartialOrder(names[i], names[j])
        return cls(names, up)

    @classmethod
    def from_topology(cls, tspec: TopologySpec) -> "Frame":
        pts = list(tspec.points)
        if len(set(pts)) != len(pts):
            raise SpecError("duplicate point", "$.points")
        pset = set(pts)
        opens = []
        for o in tspec.opens:
            if not o <= pset:
                raise InvalidTopology(
                    f"open set {sorted(o)} contains unknown points", sorted(o - pset)
                )
            opens.append(frozenset(o))
        if len(set(opens)) != len(opens):
            raise SpecError("duplicate open set", "$.opens")
        family = set(opens)
        if frozenset() not in family:
            raise InvalidTopology("the empty set is not open", [])
        if frozenset(pset) not in family:
            raise InvalidTopology("the full point set is not open", pts)
        for a in opens:
            for b in opens:
                if a | b not in family:
                    raise InvalidTopology(
                        f"not closed under union: {sorted(a)} | {sorted(b)}",
                        (sorted(a), sorted(b)),
                    )
                if a & b not in family:
                    raise InvalidTopology(
                        f"not closed under intersection: {sorted(a)} & {sorted(b)}",
                        (sorted(a), sorted(b)),
                    )
        ordered = sorted(family, key=lambda o: (len(o), tuple(sorted(o))))
        names = [open_set_name(o) for o in ordered]
        leq = [
            (names[i], names[j])
            for i in range(len(ordered))
            for j in range(len(ordered))
            if ordered[i] <= ordered[j]
        ]
        frame = cls.build(FrameSpec.make(names, leq))
        frame.opens = tuple(ordered)
        frame.point_names = tuple(pts)
        return frame

    # -- lattice operations --------------------------------------------

    def el(self, x) -> int:
        """Accept an element name or an index; return the index."""
        if isinstance(x, int):
            if not 0 <= x < self.n:
                raise FrameError(f"element index {x} out of range")
            return x
        try:
            return self.index[x]
        except KeyError:
            raise FrameError(f"unknown element {x!r}") from None

    def name(self, i: int):
        return self.elements[i]

    def leq(self, i: int, j: int) -> bool:
        return (self.up[i] >> j) & 1 == 1

    def meet(self, i: int, j: int) -> int:
        return self._meet[i][j]

    def join(self, i: int, j: int) -> int:
        return self._join[i][j]

    def meet_all(self, items) -> int:
        acc = self.top
        for i in items:
            acc = self._meet[acc][i]
        return acc

    def join_all(self, items) -> int:
        acc = self.bottom
        for i in items:
            acc = self._join[acc][i]
        return acc

    def heyting(self, u: int, h: int) -> int:
        """Largest W with W meet U <= H (right adjoint of meet by U)."""
        if self._heyting is None:
            self._heyting = [[None] * self.n for _ in range(self.n)]
        cached = self._heyting[u][h]
        if cached is not None:
            return cached
        best = self.join_all(
            w for w in range(self.n) if self.leq(self._meet[w][u], h)
        )
        # The join of all admissible W must itself be admissible; that is
        # exactly frame distributivity, already validated.
        self._heyting[u][h] = best
        return best

    def neg(self, u: int) -> int:
        return self.heyting(u, self.bottom)

    def joins_of(self, mask: int) -> int:
        return self.join_all(_bits(mask))

    # -- predicates ------------------------------------------------------

    def well_inside(self, w: int, u: int) -> bool:
        return self._join[self.neg(w)][u] == self.top

    @cached_property
    def boolean(self) -> bool:
        return all(self._join[u][self.neg(u)] == self.top for u in range(self.n))

    @cached_property
    def regular(self) -> bool:
        for u in range(self.n):
            cover = self.join_all(
                w for w in range(self.n) if self.well_inside(w, u)
            )
            if cover != u:
                return False
        return True

    @cached_property
    def join_irreducibles(self) -> tuple:
        out = []
        for x in range(self.n):
            if x == self.bottom:
                continue
            below = self.join_all(
                y for y in _bits(self.down[x]) if y != x
            )
            if below != x:
                out.append(x)
        return tuple(out)

    def points(self) -> list:
        """Frame homomorphisms to the 2-chain, as 0/1 tuples over elements.

        Computed from the prime elements (q with a&b <= q forcing a <= q or
        b <= q): the map x -> [x not below q]. Every returned map is
        re-validated against all four preservation laws.
        """
        out = []
        for q in range(self.n):
            if q == self.top:
                continue
            if self._is_prime(q):
                p = tuple(0 if self.leq(x, q) else 1 for x in range(self.n))
                assert self._point_ok(p), "prime element produced a non-point"
                out.append(p)
        return out

    def _is_prime(self, q: int) -> bool:
        for a in range(self.n):
            if self.leq(a, q):
                continue
            for b in range(a, self.n):
                if self.leq(b, q):
                    continue
                if self.leq(self._meet[a][b], q):
                    return False
        return True

    def _point_ok(self, p) -> bool:
        if p[self.bottom] != 0 or p[self.top] != 1:
            return False
        for i in range(self.n):
            for j in range(self.n):
                if p[self._meet[i][j]] != (p[i] & p[j]):
                    return False
                if p[self._join[i][j]] != (p[i] | p[j]):
                    return False
        return True

    # -- misc -----------------------------------------------------------

    def structure_key(self):
        """Hashable identity of the labelled order (for dedup and tests)."""
        return (self.elements, self.up)

    def __repr__(self):
        return f"Frame({self.n} elements, bottom={self.elements[self.bottom]!r}, top={self.elements[self.top]!r})"


def open_set_name(o) -> str:
    return "{" + ",".join(str(p) for p in sorted(o)) + "}"


# Spec-facing wrappers. These accept element names or indexes and return
# indexes; the Frame methods are the real implementation.

def build_frame(spec) -> Frame:
    if isinstance(spec, TopologySpec):
        return Frame.from_topology(spec)
    return Frame.build(spec)


def heyting(frame: Frame, u, h) -> int:
    return frame.heyting(frame.el(u), frame.el(h))


def pseudo_complement(frame: Frame, u) -> int:
    return frame.neg(frame.el(u))


def is_regular(frame: Frame) -> bool:
    return frame.regular


def is_boolean(frame: Frame) -> bool:
    return frame.boolean


def points(frame: Frame) -> list:
    return frame.points()


# -- JSON loading -------------------------------------------------------

FRAME_KEYS = {"elements", "leq", "labels"}
TOPOLOGY_KEYS = {"points", "opens"}


def _expect_list(obj, where):
    if not isinstance(obj, list):
        raise SpecError(f"expected an array, got {type(obj).__name__}", where)
    return obj


def frame_spec_from_json(obj, where="$") -> FrameSpec:
    if not isinstance(obj, dict):
        raise SpecError("expected an object", where)
    unknown = set(obj) - FRAME_KEYS
    if unknown:
        raise SpecError(f"unknown key {sorted(unknown)[0]!r}", where)
    elements = _expect_list(obj.get("elements"), f"{where}.elements")
    for i, e in enumerate(elements):
        if not isinstance(e, str):
            raise SpecError("element names must be strings", f"{where}.elements[{i}]")
    leq_raw = _expect_list(obj.get("leq"), f"{where}.leq")
    leq = []
    for i, pair in enumerate(leq_raw):
        pw = f"{where}.leq[{i}]"
        pair = _expect_list(pair, pw)
        if len(pair) != 2 or not all(isinstance(x, str) for x in pair):
            raise SpecError("expected a pair of element names", pw)
        leq.append((pair[0], pair[1]))
    labels = obj.get("labels")
    if labels is not None and not isinstance(labels, dict):
        raise SpecError("labels must be an object", f"{where}.labels")
    return FrameSpec.make(elements, leq, labels)


def topology_spec_from_json(obj, where="$") -> TopologySpec:
    if not isinstance(obj, dict):
        raise SpecError("expected an object", where)
    unknown = set(obj) - TOPOLOGY_KEYS
    if unknown:
        raise SpecError(f"unknown key {sorted(unknown)[0]!r}", where)
    pts = _expect_list(obj.get("points"), f"{where}.points")
    for i, p in enumerate(pts):
        if not isinstance(p, str):
            raise SpecError("point names must be strings", f"{where}.points[{i}]")
    opens_raw = _expect_list(obj.get("opens"), f"{where}.opens")
    opens = []
    for i, o in enumerate(opens_raw):
        ow = f"{where}.opens[{i}]"
        o = _expect_list(o, ow)
        for j, p in enumerate(o):
            if not isinstance(p, str):
                raise SpecError("point names must be strings", f"{ow}[{j}]")
        opens.append(frozenset(o))
    return TopologySpec.make(pts, opens)


def load_frame(path) -> Frame:
    """Load a frame or topology JSON file; dispatch on its keys."""
    text = Path(path).read_text()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"invalid JSON: {exc}", "$") from None
    if isinstance(obj, dict) and "points" in obj:
        return Frame.from_topology(topology_spec_from_json(obj))
    return Frame.build(frame_spec_from_json(obj))
