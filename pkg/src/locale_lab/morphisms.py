"""Frame morphisms and the pieces of locale-map calculus built on them.

A FrameMorphism stores fstar, the frame homomorphism from `source` to
`target`; read as a map of locales it points the other way, from the
locale of `target` to the locale of `source`. Everything downstream
(adjoints, images, preimages) is phrased in terms of fstar alone.
"""

from __future__ import annotations

import itertools

from locale_lab.frames import Frame, FrameError, FrameSpec, build_frame
from locale_lab.sublocales import (
    MixedFrames,
    Sublocale,
    closed_sublocale,
    intersect_all,
    open_sublocale,
    union,
    validate_nucleus,
    whole,
)


class NotAFrameMorphism(FrameError):
    def __init__(self, law: str, witness):
        super().__init__(f"fstar does not preserve {law}: witness {witness!r}")
        self.law = law
        self.witness = witness


class FrameMorphism:
    """A validated frame homomorphism fstar: source -> target."""

    __slots__ = ("source", "target", "fstar", "_adjoint")

    def __init__(self, source: Frame, target: Frame, fstar: tuple):
        self.source = source
        self.target = target
        self.fstar = fstar
        self._adjoint = None

    def __call__(self, v) -> int:
        return self.fstar[self.source.el(v)]

    def __eq__(self, other):
        if not isinstance(other, FrameMorphism):
            return NotImplemented
        return (
            self.source is other.source
            and self.target is other.target
            and self.fstar == other.fstar
        )

    def __hash__(self):
        return hash((id(self.source), id(self.target), self.fstar))

    def __repr__(self):
        pairs = ", ".join(
            f"{self.source.elements[i]}->{self.target.elements[self.fstar[i]]}"
            for i in range(self.source.n)
        )
        return f"FrameMorphism({pairs})"


def _as_fstar(source: Frame, target: Frame, mapping) -> tuple:
    if isinstance(mapping, dict):
        out = [None] * source.n
        for k, v in mapping.items():
            out[source.el(k)] = target.el(v)
        missing = [i for i, v in enumerate(out) if v is None]
        if missing:
            raise FrameError(
                f"fstar is undefined on {source.elements[missing[0]]!r}"
            )
        return tuple(out)
    mapping = tuple(target.el(x) for x in mapping)
    if len(mapping) != source.n:
        raise FrameError(
            f"fstar has {len(mapping)} entries, source has {source.n}"
        )
    return mapping


def validate_morphism(source: Frame, target: Frame, mapping) -> FrameMorphism:
    f = _as_fstar(source, target, mapping)
    if f[source.bottom] != target.bottom:
        raise NotAFrameMorphism("bottom", source.elements[source.bottom])
    if f[source.top] != target.top:
        raise NotAFrameMorphism("top", source.elements[source.top])
    for a in range(source.n):
        for b in range(a, source.n):
            w = (source.elements[a], source.elements[b])
            if f[source.meet(a, b)] != target.meet(f[a], f[b]):
                raise NotAFrameMorphism("meet", w)
            if f[source.join(a, b)] != target.join(f[a], f[b]):
                raise NotAFrameMorphism("join", w)
    return FrameMorphism(source, target, f)


def identity_morphism(frame: Frame) -> FrameMorphism:
    return FrameMorphism(frame, frame, tuple(range(frame.n)))


def compose(g: FrameMorphism, f: FrameMorphism) -> FrameMorphism:
    """(g after f) on the star maps: source of f, target of g."""
    if f.target is not g.source:
        raise MixedFrames()
    return FrameMorphism(
        f.source, g.target, tuple(g.fstar[f.fstar[v]] for v in range(f.source.n))
    )


def right_adjoint(f: FrameMorphism) -> tuple:
    """f_* : target -> source, largest V with fstar(V) below the argument."""
    if f._adjoint is None:
        src, tgt = f.source, f.target
        adj = []
        for u in range(tgt.n):
            adj.append(
                src.join_all(v for v in range(src.n) if tgt.leq(f.fstar[v], u))
            )
        f._adjoint = tuple(adj)
    return f._adjoint


def is_embedding(f: FrameMorphism) -> bool:
    """fstar surjective; equivalently f_* is injective, or fstar o f_* = id."""
    adj = right_adjoint(f)
    surj = len(set(f.fstar)) == f.target.n
    inj = len(set(adj)) == f.target.n
    section = all(f.fstar[adj[u]] == u for u in range(f.target.n))
    assert surj == inj == section
    return surj


def sublocale_embedding(x: Sublocale):
    """The embedding of a sublocale: its fixpoint frame mapped in by e.

    Returns (morphism, fixpoint_frame, fix) with fstar(v) = e(v) read in
    the fixpoint frame.
    """
    from locale_lab.sublocales import fixpoint_frame

    omega, fix = fixpoint_frame(x)
    to_om = {amb: k for k, amb in enumerate(fix)}
    fstar = tuple(to_om[x.nucleus[v]] for v in range(x.frame.n))
    return FrameMorphism(x.frame, omega, fstar), omega, fix


def image(f: FrameMorphism, x: Sublocale) -> Sublocale:
    """Forward image of a sublocale of the target locale, as a nucleus
    V -> f_*(e_x(fstar(V))) on the source frame."""
    if x.frame is not f.target:
        raise MixedFrames()
    adj = right_adjoint(f)
    e = tuple(adj[x.nucleus[f.fstar[v]]] for v in range(f.source.n))
    return validate_nucleus(f.source, e)


def preimage(f: FrameMorphism, y: Sublocale) -> Sublocale:
    """Inverse image: intersect the pullbacks of y's open-closed layers.

    y is the intersection over V of [V] union c(e_y(V)), and each layer
    pulls back to [fstar(V)] union c(fstar(e_y(V))).
    """
    if y.frame is not f.source:
        raise MixedFrames()
    src = f.source
    layers = []
    for v in range(src.n):
        layers.append(
            union(
                open_sublocale(f.target, f.fstar[v]),
                closed_sublocale(f.target, f.fstar[y.nucleus[v]]),
            )
        )
    return intersect_all(f.target, layers)


def factors_through(f: FrameMorphism, i: FrameMorphism):
    """Does f, read as a locale map, land inside the embedding i?

    f and i share their source frame. True iff the image nucleus of f
    dominates that of i pointwise; the mediating morphism g satisfies
    gstar(istar(V)) = fstar(V) and is returned validated.
    """
    if f.source is not i.source:
        raise MixedFrames()
    if not is_embedding(i):
        raise FrameError("factors_through needs an embedding to factor through")
    src = f.source
    f_adj, i_adj = right_adjoint(f), right_adjoint(i)
    for v in range(src.n):
        if not src.leq(i_adj[i.fstar[v]], f_adj[f.fstar[v]]):
            return False, None
    gstar = tuple(f.fstar[i_adj[w]] for w in range(i.target.n))
    g = validate_morphism(i.target, f.target, gstar)
    assert compose(g, i).fstar == f.fstar
    return True, g


# -- sums ---------------------------------------------------------------

def sum_frame(frames):
    """Product of the frames (the sum of their locales).

    Elements are tuples of component elements, ordered componentwise.
    Returns (frame, injections) where injections[i] is the morphism whose
    fstar projects onto component i.
    """
    frames = list(frames)
    if not frames:
        raise FrameError("sum of no frames")
    combos = list(itertools.product(*(range(f.n) for f in frames)))
    names = [tuple(f.elements[c[k]] for k, f in enumerate(frames)) for c in combos]
    leq = []
    for ia, a in enumerate(combos):
        for ib, b in enumerate(combos):
            if all(f.leq(a[k], b[k]) for k, f in enumerate(frames)):
                leq.append((names[ia], names[ib]))
    s = build_frame(FrameSpec.make(names, leq))
    # build_frame keeps element order, so sum element i is combos[i]
    injections = [
        FrameMorphism(s, f, tuple(c[k] for c in combos))
        for k, f in enumerate(frames)
    ]
    return s, injections


# -- boolean combinations -------------------------------------------------

def atoms(frame: Frame, gens=None) -> list:
    """Atoms of the boolean algebra of sublocales the opens generate.

    For each choice of side per generator, intersect the open or its
    closed complement; drop the empty cells. The nonempty cells partition
    the whole frame and every open/closed combination is a union of them.
    """
    if gens is None:
        gens = range(frame.n)
    gens = [frame.el(g) for g in gens]
    out = []
    for sides in itertools.product((True, False), repeat=len(gens)):
        parts = [
            open_sublocale(frame, g) if keep else closed_sublocale(frame, g)
            for g, keep in zip(gens, sides)
        ]
        cell = intersect_all(frame, parts)
        if not cell.is_empty and cell not in out:
            out.append(cell)
    return out


# -- enumeration ----------------------------------------------------------

def enumerate_morphisms(source: Frame, target: Frame, limit=None) -> list:
    """All frame homomorphisms source -> target.

    Every element of a finite distributive lattice is the join of the
    join-irreducibles below it, and those are join-prime, so any monotone
    assignment on the irreducibles extends uniquely to a join-preserving
    map. Assign images by DFS with monotonicity pruning, then keep the
    extensions that also preserve top and binary meets.
    """
    irr = sorted(source.join_irreducibles, key=lambda p: bin(source.down[p]).count("1"))
    below = [
        [j for j in irr if source.leq(j, p) and j != p] for p in irr
    ]
    out = []
    assignment = {}

    def extend():
        ext = [None] * source.n
        for x in range(source.n):
            ext[x] = target.join_all(assignment[p] for p in irr if source.leq(p, x))
        return tuple(ext)

    def ok(ext):
        if ext[source.top] != target.top:
            return False
        for a in range(source.n):
            for b in range(a, source.n):
                if ext[source.meet(a, b)] != target.meet(ext[a], ext[b]):
                    return False
        return True

    def dfs(k):
        if limit is not None and len(out) >= limit:
            return
        if k == len(irr):
            ext = extend()
            if ok(ext):
                out.append(FrameMorphism(source, target, ext))
            return
        p = irr[k]
        for img in range(target.n):
            if all(target.leq(assignment[q], img) for q in below[k]):
                assignment[p] = img
                dfs(k + 1)
        assignment.pop(p, None)

    dfs(0)
    return out
