import itertools
from fractions import Fraction as F

import pytest

from locale_lab.frames import Frame, FrameSpec, SpecError, TopologySpec, build_frame
from locale_lab.intervals import EMPTY_RO, FULL_RO, RatOpen, parse_fin, parse_ratopen
from locale_lab.measure import (
    Atomic,
    Lebesgue,
    LebesgueRestrictedTo,
    MeasureBounds,
    Mixture,
    NoResidualBound,
    NotModular,
    NotMonotone,
    NotZeroAtBottom,
    TolNotReached,
    UnsupportedCombination,
    UnsupportedDescriptor,
    atomic,
    descriptor_from_json,
    measure_bounds,
    measure_closed_exact,
    measure_fin,
    measure_open,
    measure_ro,
    mu_reduce,
    mu_reduce_interval,
    mu_reduce_open,
    null_open,
    null_partner,
    null_partner_interval,
    outer_measure_finite,
    parse_descriptor,
    point_mass,
    reduced_algebra,
    restrict_to_closed,
    restrict_to_open,
    restrict_valuation,
    strict_additivity_check,
    strict_additivity_interval,
    total_measure,
    validate_valuation,
    valuation_from_json,
    vstar,
)
from locale_lab.presented import (
    DYADICS,
    RATIONALS,
    Closed,
    CoCountable,
    CountablePoints,
    Generic,
    IntersectWithOpen,
    Open,
    Union,
    UnsupportedConstructor,
)
from locale_lab.sublocales import (
    closed_sublocale,
    empty,
    enumerate_sublocales,
    intersect,
    is_subsublocale,
    open_sublocale,
    union,
    whole,
)

TOL = F(1, 1000)


def chain3():
    return build_frame(FrameSpec.make(["0", "u", "1"], [("0", "u"), ("u", "1")]))


def diamond():
    return build_frame(
        FrameSpec.make(["0", "a", "b", "1"],
                       [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])
    )


def powerset(pts):
    opens = [frozenset(s) for r in range(len(pts) + 1)
             for s in itertools.combinations(pts, r)]
    return Frame.from_topology(TopologySpec.make(pts, opens))


def weights_valuation(frame, w):
    # frames built from topologies measure an open by summing point weights
    table = {
        frame.elements[i]: sum((w[p] for p in frame.opens[i]), F(0))
        for i in range(frame.n)
    }
    return validate_valuation(frame, table)


def val_chain3():
    return validate_valuation(chain3(), {"0": 0, "u": F(1, 2), "1": 1})


def val_diamond():
    return validate_valuation(diamond(), {"0": 0, "a": F(1, 3), "b": F(2, 3), "1": 1})


VALS = [
    val_chain3,
    val_diamond,
    lambda: weights_valuation(powerset("ab"), {"a": F(1, 2), "b": F(1, 2)}),
    lambda: weights_valuation(powerset("abc"), {"a": F(1, 6), "b": F(1, 3), "c": F(1, 2)}),
    lambda: weights_valuation(powerset("abc"), {"a": F(1, 2), "b": F(1, 2), "c": F(0)}),
]

BOOLEAN_VALS = VALS[2:]


def brute_outer(val, x):
    f = val.frame
    return min(
        val.mu[v] for v in range(f.n)
        if is_subsublocale(x, open_sublocale(f, v))
    )


# ----------------------------------------------------------- validation

def test_validate_valuation_accepts_sequences_and_dicts():
    f = chain3()
    v = validate_valuation(f, ["0", "1/2", "1"])
    assert v("u") == F(1, 2)
    assert measure_open(val_chain3(), "u") == F(1, 2)


def test_not_zero_at_bottom():
    with pytest.raises(NotZeroAtBottom):
        validate_valuation(chain3(), {"0": F(1, 4), "u": F(1, 2), "1": 1})


def test_not_monotone():
    with pytest.raises(NotMonotone) as exc:
        validate_valuation(chain3(), {"0": 0, "u": 1, "1": F(1, 2)})
    assert exc.value.witness == ("u", "1")


def test_not_modular():
    # measures the two atoms and the top inconsistently
    with pytest.raises(NotModular):
        validate_valuation(
            diamond(), {"0": 0, "a": F(1, 2), "b": F(1, 2), "1": F(3, 4)}
        )


def test_missing_element_rejected():
    with pytest.raises(Exception):
        validate_valuation(chain3(), {"0": 0, "1": 1})


# ----------------------------------------------------------- outer measure

def test_outer_measure_extends_the_valuation():
    for make in VALS:
        val = make()
        f = val.frame
        for v in range(f.n):
            assert outer_measure_finite(val, open_sublocale(f, v)) == val.mu[v]


def test_outer_measure_matches_brute_minimum():
    for make in VALS:
        val = make()
        for x in enumerate_sublocales(val.frame):
            assert outer_measure_finite(val, x) == brute_outer(val, x)


def test_outer_measure_monotone_and_subadditive():
    for make in VALS:
        val = make()
        subs = enumerate_sublocales(val.frame)
        for x in subs:
            for y in subs:
                mx = outer_measure_finite(val, x)
                my = outer_measure_finite(val, y)
                if is_subsublocale(x, y):
                    assert mx <= my
                assert outer_measure_finite(val, union(x, y)) <= mx + my


def test_closed_complement_measure_on_boolean_frames():
    for make in BOOLEAN_VALS:
        val = make()
        f = val.frame
        top = val.mu[f.top]
        for v in range(f.n):
            got = outer_measure_finite(val, closed_sublocale(f, v))
            assert got == top - val.mu[v]


def test_closed_complement_can_overshoot_without_regularity():
    # the closed complement of the middle of the 3-chain still needs the
    # whole line as its only neighborhood
    val = val_chain3()
    f = val.frame
    assert outer_measure_finite(val, closed_sublocale(f, "u")) == 1


# ----------------------------------------------------------- additivity

def test_strict_additivity_zero_on_boolean_frames():
    for make in BOOLEAN_VALS:
        val = make()
        subs = enumerate_sublocales(val.frame)
        for x in subs:
            for y in subs:
                assert strict_additivity_check(val, x, y) == 0


def test_strict_additivity_witness_on_the_3_chain():
    val = val_chain3()
    f = val.frame
    x = open_sublocale(f, "u")
    y = closed_sublocale(f, "u")
    assert strict_additivity_check(val, x, y) == F(-1, 2)


def test_null_partner_certificates():
    for make in VALS:
        val = make()
        top = val.mu[val.frame.top]
        for a in enumerate_sublocales(val.frame):
            b, certs = null_partner(val, a)
            assert certs["union"] == top
            assert certs["intersection"] == 0
            assert outer_measure_finite(val, union(a, b)) == top
            assert outer_measure_finite(val, intersect(a, b)) == 0


def test_null_partner_measure_complements_on_boolean_frames():
    for make in BOOLEAN_VALS:
        val = make()
        top = val.mu[val.frame.top]
        for a in enumerate_sublocales(val.frame):
            b, certs = null_partner(val, a)
            assert certs["partner"] == top - outer_measure_finite(val, a)


# ----------------------------------------------------------- restriction

def test_restrict_valuation_totals():
    for make in VALS:
        val = make()
        for a in enumerate_sublocales(val.frame):
            val_a, fix = restrict_valuation(val, a)
            assert val_a.mu[val_a.frame.bottom] == 0
            assert val_a.mu[val_a.frame.top] == outer_measure_finite(val, a)


def test_restrict_valuation_to_closed_piece_of_chain():
    val = val_chain3()
    val_a, fix = restrict_valuation(val, closed_sublocale(val.frame, "u"))
    # opens of the closed piece are u and 1; the trace of u on it is empty
    assert [val_a.mu[k] for k in range(val_a.frame.n)] == [0, 1]


# ----------------------------------------------------------- reduction

def test_mu_reduce_matches_smallest_full_measure_sublocale():
    for make in VALS:
        val = make()
        subs = enumerate_sublocales(val.frame)
        for a in subs:
            target = outer_measure_finite(val, a)
            family = [
                z for z in subs
                if is_subsublocale(z, a) and outer_measure_finite(val, z) == target
            ]
            minimal = [
                z for z in family
                if all(is_subsublocale(z, w) for w in family)
            ]
            assert minimal, "the full-measure family has a least member"
            assert mu_reduce(val, a) == minimal[0]


def test_mu_reduce_is_idempotent_and_shrinking():
    for make in VALS:
        val = make()
        for a in enumerate_sublocales(val.frame):
            r = mu_reduce(val, a)
            assert is_subsublocale(r, a)
            assert outer_measure_finite(val, r) == outer_measure_finite(val, a)
            assert mu_reduce(val, r) == r


def test_mu_reduce_drops_null_atoms():
    f = powerset("abc")
    val = weights_valuation(f, {"a": F(1, 2), "b": F(1, 2), "c": F(0)})
    r = mu_reduce(val, whole(f))
    assert r == open_sublocale(f, "{a,b}")


def test_union_of_reduced_is_reduced():
    for make in BOOLEAN_VALS:
        val = make()
        reduced = {mu_reduce(val, a) for a in enumerate_sublocales(val.frame)}
        for x in reduced:
            for y in reduced:
                u = union(x, y)
                assert mu_reduce(val, u) == u


def test_reduced_algebra_is_boolean_with_matching_operations():
    for make in BOOLEAN_VALS:
        val = make()
        alg = reduced_algebra(val)
        red = alg.frame
        assert red.boolean
        # join of representatives is the representative of the join, and
        # meet is the reduction of the intersection
        for i in range(red.n):
            for j in range(red.n):
                jj = red.join(i, j)
                assert union(alg.reps[i], alg.reps[j]) == alg.reps[jj]
                mm = red.meet(i, j)
                assert mu_reduce(val, intersect(alg.reps[i], alg.reps[j])) == alg.reps[mm]
        # meets distribute over joins among reduced pieces
        for a in range(red.n):
            for b in range(red.n):
                for c in range(red.n):
                    assert red.meet(a, red.join(b, c)) == red.join(
                        red.meet(a, b), red.meet(a, c)
                    )


def test_reduced_algebra_quotient_and_measure():
    f = powerset("abc")
    val = weights_valuation(f, {"a": F(1, 2), "b": F(1, 2), "c": F(0)})
    alg = reduced_algebra(val)
    assert alg.frame.n == 4  # the null atom collapses away
    assert alg.quotient.source is f
    assert alg.quotient.target is alg.frame
    for v in range(f.n):
        assert alg.valuation.mu[alg.quotient.fstar[v]] == val.mu[v]


# ----------------------------------------------------------- descriptors

def test_measure_fin_per_descriptor():
    u = parse_fin("(0,1/4)|[1/2,3/4]")
    assert measure_fin(Lebesgue(), u) == F(1, 2)
    assert measure_fin(LebesgueRestrictedTo(parse_fin("[0,1/2]")), u) == F(1, 4)
    d = atomic([(F(1, 4), F(1, 3)), (F(1, 2), F(2, 3))])
    assert measure_fin(d, u) == F(2, 3)  # 1/4 is an excluded endpoint
    mix = Mixture((Lebesgue(), d))
    assert measure_fin(mix, u) == F(1, 2) + F(2, 3)
    assert total_measure(mix) == 2


def test_point_mass_and_atoms_validation():
    d = atomic([("1/2", "1/3"), ("1/4", "2/3")])
    assert point_mass(d, "1/2") == F(1, 3)
    assert point_mass(d, "1/3") == 0
    with pytest.raises(UnsupportedDescriptor):
        Atomic(((F(1, 2), F(0)),))
    with pytest.raises(UnsupportedDescriptor):
        Atomic(((F(3, 2), F(1)),))
    with pytest.raises(UnsupportedDescriptor):
        Atomic(((F(1, 2), F(1)), (F(1, 2), F(1))))


def test_null_open_per_descriptor():
    assert null_open(Lebesgue()) == EMPTY_RO
    d = LebesgueRestrictedTo(parse_fin("[0,1/2]|[3/4,3/4]"))
    # the isolated point at 3/4 carries no length, so it is not support
    assert null_open(d) == parse_ratopen("(1/2,1]")
    a = atomic([("1/2", "1")])
    assert null_open(a) == parse_ratopen("[0,1/2)|(1/2,1]")
    mix = Mixture((d, a))
    assert null_open(mix) == parse_ratopen("(1/2,1]")


def test_restriction_of_descriptors():
    u = parse_ratopen("(0,1/2)")
    r = restrict_to_open(Lebesgue(), u)
    assert isinstance(r, LebesgueRestrictedTo)
    assert measure_fin(r, parse_fin("[0,1]")) == F(1, 2)
    a = atomic([("1/4", "1"), ("3/4", "2")])
    assert restrict_to_open(a, u) == atomic([("1/4", "1")])
    assert restrict_to_closed(a, u) == atomic([("3/4", "2")])


def test_measure_closed_exact():
    d = Mixture((Lebesgue(), atomic([("1/2", "1")])))
    u = parse_ratopen("(1/2,1]")
    # the closed complement [0,1/2] keeps the atom sitting on its edge
    assert measure_closed_exact(d, u) == F(1, 2) + 1


# ----------------------------------------------------------- reduction on [0,1]

def test_reduce_open_fills_massless_pinholes():
    d = Lebesgue()
    u = parse_ratopen("(0,1/2)|(1/2,1)")
    assert mu_reduce_open(d, u) == parse_ratopen("(0,1)")
    # ambient endpoints are never absorbed
    assert mu_reduce_open(d, parse_ratopen("(0,1)")) == parse_ratopen("(0,1)")


def test_reduce_open_respects_atoms():
    d = atomic([("1/2", "1")])
    n = parse_ratopen("[0,1/2)|(1/2,1]")
    assert mu_reduce_open(d, EMPTY_RO) == n
    assert mu_reduce_open(d, parse_ratopen("(0,1/4)")) == n
    assert mu_reduce_open(d, parse_ratopen("(1/4,3/4)")) == FULL_RO
    # fixpoints of the reduction map: everything or everything-but-the-atom
    for s in ["[0,1/2)|(1/2,1]", "[0,1]"]:
        assert mu_reduce_open(d, parse_ratopen(s)) == parse_ratopen(s)


def test_reduce_whole_line_pinned_examples():
    assert mu_reduce_interval(Lebesgue()) == Closed(EMPTY_RO)
    r = mu_reduce_interval(atomic([("1/2", "1")]))
    assert r == Closed(parse_ratopen("[0,1/2)|(1/2,1]"))
    r2 = mu_reduce_interval(LebesgueRestrictedTo(parse_fin("[0,1/2]")))
    assert r2 == Closed(parse_ratopen("(1/2,1]"))


def test_reduce_of_open_and_closed_pieces():
    r = mu_reduce_interval(Lebesgue(), Open(parse_ratopen("(0,1/2)")))
    assert r == IntersectWithOpen(Closed(parse_ratopen("(1/2,1]")), parse_ratopen("(0,1/2)"))
    # an isolated limit point of the closed piece is null, so it drops out
    r2 = mu_reduce_interval(Lebesgue(), Closed(parse_ratopen("(1/2,1)")))
    assert r2 == Closed(parse_ratopen("(1/2,1]"))
    with pytest.raises(UnsupportedConstructor):
        mu_reduce_interval(Lebesgue(), CountablePoints(RATIONALS))


# ----------------------------------------------------------- certified bounds

def test_bounds_exact_for_opens_and_closeds():
    d = Lebesgue()
    u = parse_ratopen("(0,1/3)|(2/3,1)")
    b = measure_bounds(Open(u), d, TOL)
    assert b.is_exact and b.lower == F(2, 3)
    c = measure_bounds(Closed(u), d, TOL)
    assert c.is_exact and c.lower == F(1, 3)
    assert "exact-closed" in c.certificates


def test_stream_bounds_bracket_the_exact_values():
    import random

    from locale_lab.intervals import iv, normalize

    rng = random.Random(20260822)
    d = Mixture((Lebesgue(), atomic([("1/3", "1/2")])))
    for _ in range(25):
        ends = sorted(F(rng.randrange(0, 25), 24) for _ in range(4))
        if ends[0] == ends[1] and ends[2] == ends[3]:
            continue
        pieces = [iv(a, b) for a, b in [(ends[0], ends[1]), (ends[2], ends[3])] if a < b]
        u = RatOpen(normalize(pieces))
        for x, exact in [
            (Open(u), measure_ro(d, u)),
            (Closed(u), measure_closed_exact(d, u)),
        ]:
            b = measure_bounds(x, d, TOL, via_stream=True)
            assert b.lower <= exact <= b.upper
            assert b.width <= TOL


def test_rational_points_are_lebesgue_null():
    b = measure_bounds(CountablePoints(RATIONALS), Lebesgue(), TOL)
    assert b.upper <= TOL
    assert b.lower == 0
    assert "partner-lower" in b.certificates


def test_generic_is_null_for_every_descriptor():
    for d in [
        Lebesgue(),
        LebesgueRestrictedTo(parse_fin("[0,1/2]")),
        atomic([("1/2", "1")]),
        Mixture((Lebesgue(), atomic([("1/3", "2")]))),
    ]:
        b = measure_bounds(Generic(), d, TOL)
        assert b.lower == 0
        assert b.upper <= TOL


def test_generic_avoids_atoms_exactly():
    # with a purely atomic descriptor the punctured covers weigh nothing
    b = measure_bounds(Generic(), atomic([("1/2", "1")]), TOL)
    assert b.lower == b.upper == 0


def test_cocountable_complement_of_rationals():
    b = measure_bounds(CoCountable(RATIONALS), Lebesgue(), TOL)
    assert b.upper == 1
    assert b.lower >= 1 - TOL


def test_atoms_see_the_points_that_carry_them():
    d = atomic([("1/2", "1")])
    b = measure_bounds(CountablePoints(RATIONALS), d, TOL)
    assert b.lower == b.upper == 1
    b2 = measure_bounds(CoCountable(RATIONALS), d, TOL)
    assert b2.lower == b2.upper == 0
    # dyadic points never reach 1/3
    b3 = measure_bounds(CountablePoints(DYADICS), atomic([("1/3", "1")]), TOL)
    assert b3.upper == 0


def test_union_bounds_use_structure_and_parts():
    d = Lebesgue()
    u = Union((CountablePoints(RATIONALS), CoCountable(RATIONALS)))
    b = measure_bounds(u, d, TOL)
    assert b.lower == b.upper == 1
    assert "structural-whole" in b.certificates
    v = Union((Open(parse_ratopen("(0,1/2)")), CountablePoints(RATIONALS)))
    bv = measure_bounds(v, d, TOL)
    assert bv.lower >= F(1, 2)
    assert bv.upper <= F(1, 2) + TOL


def test_bounds_honestly_fail_when_no_lower_route_exists():
    x = IntersectWithOpen(CoCountable(RATIONALS), parse_ratopen("(0,1)"))
    with pytest.raises(TolNotReached) as exc:
        measure_bounds(x, Lebesgue(), TOL, max_k=5)
    assert exc.value.lower == 0
    assert exc.value.upper == 1


# ----------------------------------------------------------- interval additivity

def test_strict_additivity_exact_for_open_pairs():
    d = Lebesgue()
    x = Open(parse_ratopen("(0,1/2)"))
    y = Open(parse_ratopen("(1/4,3/4)"))
    r = strict_additivity_interval(x, y, d, TOL)
    assert r.lo == r.hi == 0


def test_strict_additivity_for_hidden_intersection_pair():
    d = Lebesgue()
    r = strict_additivity_interval(
        CountablePoints(RATIONALS), CoCountable(RATIONALS), d, TOL
    )
    assert r.union.lower == r.union.upper == 1
    assert r.contains_zero()
    assert r.width <= 4 * TOL


def test_strict_additivity_open_against_its_complement():
    d = Lebesgue()
    u = parse_ratopen("(0,1/2)")
    r = strict_additivity_interval(Open(u), Closed(u), d, TOL)
    assert r.contains_zero()
    assert r.union.lower == 1
    assert r.inter.upper == 0


def test_no_residual_bound_when_a_side_is_unboundable():
    x = IntersectWithOpen(CoCountable(RATIONALS), parse_ratopen("(0,1)"))
    with pytest.raises(NoResidualBound):
        strict_additivity_interval(x, Generic(), Lebesgue(), TOL)


# ----------------------------------------------------------- interval partners

def test_null_partner_for_an_open():
    b, certs = null_partner_interval(Open(parse_ratopen("(0,1/3)")), Lebesgue(), TOL)
    assert b == Closed(parse_ratopen("(0,1/3)"))
    assert certs["union"].is_exact and certs["union"].lower == 1
    assert certs["intersection"].upper == 0
    assert certs["partner"].lower == F(2, 3)


def test_null_partner_for_a_closed():
    u = parse_ratopen("(0,1/3)")
    b, certs = null_partner_interval(Closed(u), Lebesgue(), TOL)
    assert b == Open(u)
    assert certs["partner"].lower == F(1, 3)


def test_null_partner_for_countable_points():
    b, certs = null_partner_interval(CountablePoints(RATIONALS), Lebesgue(), TOL)
    assert b == CoCountable(RATIONALS)
    assert certs["union"].lower == 1
    assert certs["intersection"].upper <= 2 * TOL
    assert certs["partner"].lower >= 1 - TOL


def test_null_partner_for_the_generic_sublocale():
    b, certs = null_partner_interval(Generic(), Lebesgue(), TOL)
    assert isinstance(b, Closed)
    assert certs["partner"].lower >= 1 - 2 * TOL
    assert certs["intersection"].upper <= TOL


def test_null_partner_refuses_fat_shapes_without_structure():
    x = IntersectWithOpen(CoCountable(RATIONALS), parse_ratopen("(0,1)"))
    with pytest.raises((UnsupportedCombination, TolNotReached)):
        null_partner_interval(x, Lebesgue(), TOL)


# ----------------------------------------------------------- loading

def test_valuation_from_json():
    f = chain3()
    v = valuation_from_json(f, {"mu": {"0": "0", "u": "1/2", "1": "1"}})
    assert v("u") == F(1, 2)
    with pytest.raises(SpecError):
        valuation_from_json(f, {"mu": {"0": "0", "u": "1/2", "1": "1"}, "x": 1})
    with pytest.raises(SpecError):
        valuation_from_json(f, {"mu": {"0": "0", "w": "1/2", "1": "1"}})
    with pytest.raises(SpecError):
        valuation_from_json(f, {"mu": {"0": "0", "u": "a/b", "1": "1"}})


def test_descriptor_from_json():
    assert descriptor_from_json("lebesgue") == Lebesgue()
    d = descriptor_from_json({"restrict": "[0,1/2]"})
    assert d == LebesgueRestrictedTo(parse_fin("[0,1/2]"))
    a = descriptor_from_json({"atoms": [["1/2", "1"]]})
    assert a == atomic([("1/2", "1")])
    m = descriptor_from_json({"mix": ["lebesgue", {"atoms": [["1/2", "1"]]}]})
    assert m == Mixture((Lebesgue(), a))
    with pytest.raises(SpecError):
        descriptor_from_json({"volume": 3})


def test_parse_descriptor_grammar():
    assert parse_descriptor("lebesgue") == Lebesgue()
    assert parse_descriptor("restrict [0,1/2]|(3/4,1)") == LebesgueRestrictedTo(
        parse_fin("[0,1/2]|(3/4,1)")
    )
    assert parse_descriptor("atoms 1/2:1,3/4:1/3") == atomic(
        [("1/2", "1"), ("3/4", "1/3")]
    )
    got = parse_descriptor("mix lebesgue + atoms 1/2:1")
    assert got == Mixture((Lebesgue(), atomic([("1/2", "1")])))
    with pytest.raises(UnsupportedDescriptor):
        parse_descriptor("uniform")
    with pytest.raises(UnsupportedDescriptor):
        parse_descriptor("atoms 1/2")
