import itertools

import pytest

from locale_lab.frames import Frame, FrameError, FrameSpec, TopologySpec, build_frame
from locale_lab.morphisms import (
    FrameMorphism,
    NotAFrameMorphism,
    atoms,
    compose,
    enumerate_morphisms,
    factors_through,
    identity_morphism,
    image,
    is_embedding,
    preimage,
    right_adjoint,
    sublocale_embedding,
    sum_frame,
    validate_morphism,
)
from locale_lab.sublocales import (
    closed_sublocale,
    empty,
    enumerate_sublocales,
    intersect,
    is_subsublocale,
    open_sublocale,
    union_all,
    whole,
)


def chain(n):
    names = [str(i) for i in range(n)]
    return build_frame(
        FrameSpec.make(names, [(names[i], names[i + 1]) for i in range(n - 1)])
    )


def diamond():
    return build_frame(
        FrameSpec.make(["0", "a", "b", "1"],
                       [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])
    )


def powerset(pts):
    opens = [frozenset(s) for r in range(len(pts) + 1)
             for s in itertools.combinations(pts, r)]
    return Frame.from_topology(TopologySpec.make(pts, opens))


# ---------------------------------------------------------- validation

def test_identity_and_validation():
    f = chain(3)
    m = validate_morphism(f, f, {"0": "0", "1": "1", "2": "2"})
    assert m == identity_morphism(f)


def test_validation_rejects_top_violation():
    c2, c3 = chain(2), chain(3)
    with pytest.raises(NotAFrameMorphism) as ei:
        validate_morphism(c2, c3, {"0": "0", "1": "1"})
    assert ei.value.law == "top"


def test_validation_rejects_join_violation():
    d, c2 = diamond(), chain(2)
    # send a,b to bottom but 1 to top: join(a,b)=1 maps to 1, joins of images to 0
    with pytest.raises(NotAFrameMorphism) as ei:
        validate_morphism(d, c2, {"0": "0", "a": "0", "b": "0", "1": "1"})
    assert ei.value.law == "join"


def test_validation_rejects_meet_violation():
    d, c2 = diamond(), chain(2)
    with pytest.raises(NotAFrameMorphism) as ei:
        validate_morphism(d, c2, {"0": "0", "a": "1", "b": "1", "1": "1"})
    assert ei.value.law == "meet"


# --------------------------------------------------------- enumeration

def brute_morphisms(src, tgt):
    out = []
    for fs in itertools.product(range(tgt.n), repeat=src.n):
        if fs[src.bottom] != tgt.bottom or fs[src.top] != tgt.top:
            continue
        if all(
            fs[src.meet(a, b)] == tgt.meet(fs[a], fs[b])
            and fs[src.join(a, b)] == tgt.join(fs[a], fs[b])
            for a in range(src.n)
            for b in range(src.n)
        ):
            out.append(fs)
    return sorted(out)


PAIRS = [
    (chain(2), chain(2)),
    (chain(3), chain(3)),
    (chain(3), diamond()),
    (diamond(), chain(3)),
    (diamond(), diamond()),
    (chain(4), diamond()),
    (powerset("ab"), chain(3)),
]


@pytest.mark.parametrize("src,tgt", PAIRS)
def test_enumeration_matches_brute_force(src, tgt):
    got = sorted(m.fstar for m in enumerate_morphisms(src, tgt))
    assert got == brute_morphisms(src, tgt)


def test_morphisms_from_two_chain_are_elements_not_bottom_top_degenerate():
    # a morphism from the 2-chain picks out nothing but bottom and top
    f = diamond()
    ms = enumerate_morphisms(chain(2), f)
    assert len(ms) == 1


def test_morphisms_to_two_chain_are_points():
    # frame homs to the 2-chain biject with the frame's points
    for make in (lambda: chain(3), diamond, lambda: powerset("ab")):
        f = make()
        ms = enumerate_morphisms(f, chain(2))
        assert len(ms) == len(f.points())


# ------------------------------------------------------------ adjoints

@pytest.mark.parametrize("src,tgt", PAIRS[:5])
def test_right_adjoint_is_an_adjoint(src, tgt):
    for m in enumerate_morphisms(src, tgt):
        adj = right_adjoint(m)
        for v in range(src.n):
            for u in range(tgt.n):
                assert tgt.leq(m.fstar[v], u) == src.leq(v, adj[u])


def test_embedding_of_closed_sublocale():
    f = chain(3)
    emb, omega, fix = sublocale_embedding(closed_sublocale(f, "1"))
    assert is_embedding(emb)
    assert omega.n == 2
    assert [f.elements[i] for i in fix] == ["1", "2"]


def test_non_embedding():
    c2, c3 = chain(2), chain(3)
    m = validate_morphism(c2, c3, {"0": "0", "1": "2"})
    assert not is_embedding(m)


def test_embeddings_of_all_sublocales():
    for make in (lambda: chain(4), diamond):
        f = make()
        for s in enumerate_sublocales(f):
            emb, omega, _ = sublocale_embedding(s)
            assert is_embedding(emb)
            assert omega.n == len(s.fixpoints)


# ------------------------------------------------------ image, preimage

def small_pairs():
    yield chain(3), chain(3)
    yield chain(3), diamond()
    yield diamond(), chain(3)
    yield powerset("ab"), diamond()


def test_image_preimage_adjunction():
    # image(f, x) inside y  iff  x inside preimage(f, y), over everything
    for src, tgt in small_pairs():
        xs = enumerate_sublocales(tgt)
        ys = enumerate_sublocales(src)
        for m in enumerate_morphisms(src, tgt):
            for x in xs:
                ix = image(m, x)
                for y in ys:
                    lhs = is_subsublocale(ix, y)
                    rhs = is_subsublocale(x, preimage(m, y))
                    assert lhs == rhs


def test_image_of_empty_and_whole():
    for src, tgt in small_pairs():
        for m in enumerate_morphisms(src, tgt):
            assert image(m, empty(tgt)) == empty(src)
            assert preimage(m, whole(src)) == whole(tgt)


def test_image_under_identity():
    f = diamond()
    for s in enumerate_sublocales(f):
        assert image(identity_morphism(f), s) == s
        assert preimage(identity_morphism(f), s) == s


def test_preimage_of_open_is_open():
    for src, tgt in small_pairs():
        for m in enumerate_morphisms(src, tgt):
            for v in range(src.n):
                assert preimage(m, open_sublocale(src, v)) == open_sublocale(
                    tgt, m.fstar[v]
                )
                assert preimage(m, closed_sublocale(src, v)) == closed_sublocale(
                    tgt, m.fstar[v]
                )


# ------------------------------------------------------------ factoring

def test_map_factors_through_its_image():
    for src, tgt in small_pairs():
        for m in enumerate_morphisms(src, tgt):
            img = image(m, whole(tgt))
            emb, omega, _ = sublocale_embedding(img)
            ok, g = factors_through(m, emb)
            assert ok
            assert compose(g, emb) == m


def test_factoring_fails_outside_image():
    f = chain(3)
    m = identity_morphism(f)
    emb, _, _ = sublocale_embedding(closed_sublocale(f, "1"))
    ok, g = factors_through(m, emb)
    assert not ok and g is None


def test_factoring_requires_embedding():
    c3 = chain(3)
    m = validate_morphism(c3, c3, {"0": "0", "1": "0", "2": "2"})
    assert not is_embedding(m)
    with pytest.raises(FrameError):
        factors_through(identity_morphism(c3), m)


# ----------------------------------------------------------------- sums

def test_sum_of_two_chains_is_diamond():
    s, (i1, i2) = sum_frame([chain(2), chain(2)])
    assert s.n == 4
    assert s.boolean
    assert validate_morphism(s, chain(2), i1.fstar).fstar == i1.fstar
    assert validate_morphism(s, chain(2), i2.fstar).fstar == i2.fstar


def test_sum_universal_property():
    z = diamond()
    x1, x2 = chain(3), chain(2)
    s, (i1, i2) = sum_frame([x1, x2])
    for g1 in enumerate_morphisms(z, x1):
        for g2 in enumerate_morphisms(z, x2):
            paired = tuple(
                s.index[(x1.elements[g1.fstar[v]], x2.elements[g2.fstar[v]])]
                for v in range(z.n)
            )
            g = validate_morphism(z, s, paired)
            assert compose(i1, g) == g1
            assert compose(i2, g) == g2


# ---------------------------------------------------------------- atoms

def test_atoms_chain3():
    f = chain(3)
    cells = atoms(f)
    assert len(cells) == 2
    assert set(cells) == {open_sublocale(f, "1"), closed_sublocale(f, "1")}


def test_atoms_partition_and_generate():
    for make in (lambda: chain(3), diamond, lambda: powerset("ab")):
        f = make()
        cells = atoms(f)
        assert union_all(f, cells) == whole(f)
        for a in cells:
            for b in cells:
                if a != b:
                    assert intersect(a, b) == empty(f)
        # every open is a union of the cells it contains
        for u in range(f.n):
            s = open_sublocale(f, u)
            inside = [a for a in cells if is_subsublocale(a, s)]
            assert union_all(f, inside) == s
