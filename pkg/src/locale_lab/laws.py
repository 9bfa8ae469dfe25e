"""Law suites: the algebraic identities the library rests on, replayed
exhaustively over the bundled corpus and, for measure, the unit interval.

Each suite returns a RunReport: how many instances were checked, which
failed (with witnesses), timing, and honest notes about phenomena the
corpus is too small to exhibit. No violations is the pass signal the
CLI turns into exit code 0.
"""

from __future__ import annotations

import itertools
import json
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from locale_lab import intervals as ivs
from locale_lab.corpus import corpus_root, iter_corpus_frames, iter_negative_specs
from locale_lab.frames import (
    Frame,
    FrameError,
    build_frame,
    frame_spec_from_json,
    topology_spec_from_json,
)
from locale_lab.intervals import RatOpen, frac, iv, normalize, parse_fin, parse_ratopen
from locale_lab.measure import (
    Lebesgue,
    LebesgueRestrictedTo,
    Mixture,
    atomic,
    measure_bounds,
    measure_ro,
    mu_reduce,
    mu_reduce_interval,
    mu_reduce_open,
    null_partner,
    null_partner_interval,
    outer_measure_finite,
    reduced_algebra,
    restrict_valuation,
    strict_additivity_check,
    strict_additivity_interval,
    total_measure,
    validate_valuation,
)
from locale_lab.morphisms import (
    atoms,
    compose,
    enumerate_morphisms,
    image,
    is_embedding,
    preimage,
    right_adjoint,
)
from locale_lab.presented import (
    RATIONALS,
    Closed,
    CoCountable,
    CountablePoints,
    Generic,
    Open,
    closed_neighborhood,
    neighborhood,
    point_sublocale_meets_generic,
    structural_union_is_whole,
)
from locale_lab.sublocales import (
    closed_sublocale,
    complement_c,
    entanglement,
    enumerate_sublocales,
    generic,
    intersect,
    is_boolean_sublocale,
    is_dense,
    is_subsublocale,
    open_sublocale,
    subspace_sublocale,
    union,
    validate_nucleus,
)

__all__ = [
    "Violation",
    "RunReport",
    "SubLattice",
    "report_to_json",
    "report_from_json",
    "reports_to_json",
    "format_text",
    "run_frame_suite",
    "run_sublocale_suite",
    "run_morphism_suite",
    "run_measure_suite",
    "run_suite",
    "SUITES",
]


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    law: str
    identity: str
    frame: str
    witness: dict


@dataclass
class RunReport:
    suite: str
    cases: int
    violations: list
    seconds: float
    tolerance: str | None = None
    notes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def report_to_json(report: RunReport) -> str:
    """Canonical serialization; parsing and re-dumping is byte-identical."""
    obj = {
        "suite": report.suite,
        "cases": report.cases,
        "violations": [
            {
                "law": v.law,
                "identity": v.identity,
                "frame": v.frame,
                "witness": v.witness,
            }
            for v in report.violations
        ],
        "seconds": report.seconds,
        "tolerance": report.tolerance,
        "notes": list(report.notes),
    }
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def report_from_json(text: str) -> RunReport:
    obj = json.loads(text)
    return RunReport(
        suite=obj["suite"],
        cases=obj["cases"],
        violations=[
            Violation(v["law"], v["identity"], v["frame"], dict(v["witness"]))
            for v in obj["violations"]
        ],
        seconds=obj["seconds"],
        tolerance=obj["tolerance"],
        notes=list(obj["notes"]),
    )


def reports_to_json(reports) -> str:
    parts = [json.loads(report_to_json(r)) for r in reports]
    return json.dumps(parts, indent=2, sort_keys=True) + "\n"


def format_text(report: RunReport) -> str:
    lines = [
        f"suite: {report.suite}",
        f"cases: {report.cases}",
        f"violations: {len(report.violations)}",
    ]
    if report.tolerance is not None:
        lines.append(f"tolerance: {report.tolerance}")
    lines.append(f"seconds: {report.seconds}")
    for v in report.violations:
        wit = " ".join(f"{k}={v.witness[k]}" for k in sorted(v.witness))
        lines.append(f"FAIL {v.law} on {v.frame}: {v.identity} [{wit}]")
    for n in report.notes:
        lines.append(f"note: {n}")
    return "\n".join(lines) + "\n"


class _Suite:
    """Accumulator for one suite run."""

    def __init__(self, name: str, tol=None):
        self.name = name
        self.tol = tol
        self.cases = 0
        self.violations = []
        self.notes = []
        self._t0 = time.perf_counter()

    def check(self, law, identity, frame, ok, witness=None):
        self.cases += 1
        if not ok:
            self.violations.append(
                Violation(law, identity, frame, dict(witness or {}))
            )

    def bulk(self, law, identity, frame, checked, failures):
        self.cases += checked
        for w in failures:
            self.violations.append(Violation(law, identity, frame, dict(w)))

    def note(self, text):
        self.notes.append(text)

    def report(self) -> RunReport:
        tol = None if self.tol is None else str(self.tol)
        return RunReport(
            self.name,
            self.cases,
            self.violations,
            round(time.perf_counter() - self._t0, 3),
            tol,
            self.notes,
        )


# ---------------------------------------------------------------------------
# the sublocale lattice of a finite frame, as lookup tables
# ---------------------------------------------------------------------------

class SubLattice:
    """Every sublocale of a finite frame with join/meet/order tables.

    The enumeration is closed under union and intersection, so both
    operations become index lookups and the exhaustive law checks reduce
    to integer arithmetic.
    """

    def __init__(self, frame: Frame):
        self.frame = frame
        self.subs = enumerate_sublocales(frame, max(10, frame.n))
        self.index = {s.nucleus: i for i, s in enumerate(self.subs)}
        k = len(self.subs)
        self.le = [
            [is_subsublocale(a, b) for b in self.subs] for a in self.subs
        ]
        self.union_t = [[0] * k for _ in range(k)]
        self.meet_t = [[0] * k for _ in range(k)]
        for i in range(k):
            self.union_t[i][i] = self.meet_t[i][i] = i
            for j in range(i + 1, k):
                u = self.index[union(self.subs[i], self.subs[j]).nucleus]
                m = self.index[intersect(self.subs[i], self.subs[j]).nucleus]
                self.union_t[i][j] = self.union_t[j][i] = u
                self.meet_t[i][j] = self.meet_t[j][i] = m
        self.open_idx = [
            self.index[open_sublocale(frame, v).nucleus] for v in range(frame.n)
        ]
        self.closed_idx = [
            self.index[closed_sublocale(frame, v).nucleus] for v in range(frame.n)
        ]
        self.whole_idx = self.open_idx[frame.top]
        self.empty_idx = self.open_idx[frame.bottom]
        # derived per-sublocale data
        self.ext = [s.nucleus[frame.bottom] for s in self.subs]
        self.closure_idx = [self.closed_idx[e] for e in self.ext]
        self.int_el = [
            frame.join_all(
                v for v in range(frame.n) if self.le[self.open_idx[v]][i]
            )
            for i in range(k)
        ]
        self.dense = [e == frame.bottom for e in self.ext]

    def label(self, i: int) -> str:
        s = self.subs[i]
        fixed = [
            str(self.frame.elements[h])
            for h in range(self.frame.n)
            if s.nucleus[h] == h
        ]
        return "fix(" + ",".join(fixed) + ")"

    def meet_fold(self, idxs) -> int:
        out = self.whole_idx
        for i in idxs:
            out = self.meet_t[out][i]
        return out

    def union_fold(self, idxs) -> int:
        out = self.empty_idx
        for i in idxs:
            out = self.union_t[out][i]
        return out


# ---------------------------------------------------------------------------
# frame isomorphism (to avoid re-running identical suites on relabeled
# copies; the corpus keeps the copies so loading stays honest)
# ---------------------------------------------------------------------------

def _profile(f: Frame):
    return tuple(
        sorted(
            (bin(f.up[i]).count("1"), bin(f.down[i]).count("1"))
            for i in range(f.n)
        )
    )


def _isomorphic(f: Frame, g: Frame) -> bool:
    if f.n != g.n or _profile(f) != _profile(g):
        return False
    prof_f = [(bin(f.up[i]).count("1"), bin(f.down[i]).count("1")) for i in range(f.n)]
    prof_g = [(bin(g.up[i]).count("1"), bin(g.down[i]).count("1")) for i in range(g.n)]
    groups: dict = {}
    for i, p in enumerate(prof_f):
        groups.setdefault(p, []).append(i)
    targets: dict = {}
    for j, p in enumerate(prof_g):
        targets.setdefault(p, []).append(j)
    keys = sorted(groups)
    for choice in itertools.product(
        *(itertools.permutations(targets[k]) for k in keys)
    ):
        m = {}
        for k, perm in zip(keys, choice):
            for i, j in zip(groups[k], perm):
                m[i] = j
        if all(
            f.leq(a, b) == g.leq(m[a], m[b])
            for a in range(f.n)
            for b in range(f.n)
        ):
            return True
    return False


def _iso_reps(named_frames):
    reps = []
    skipped = 0
    for name, fr in named_frames:
        if any(_isomorphic(fr, rf) for _, rf in reps):
            skipped += 1
            continue
        reps.append((name, fr))
    return reps, skipped


# ---------------------------------------------------------------------------
# frame suite
# ---------------------------------------------------------------------------

def run_frame_suite(root=None, max_size=None, tol=None) -> RunReport:
    max_size = 10 if max_size is None else max_size
    s = _Suite("frame")
    rootp = corpus_root(root)
    files = sorted((rootp / "topologies").glob("*.json")) + sorted(
        (rootp / "frames").glob("*.json")
    )
    frames = []
    for p in files:
        try:
            obj = json.loads(p.read_text())
            if isinstance(obj, dict) and "points" in obj:
                fr = Frame.from_topology(topology_spec_from_json(obj))
            else:
                fr = build_frame(frame_spec_from_json(obj))
        except Exception as exc:
            s.check(
                "frame-valid",
                "every positive corpus entry builds a valid frame",
                p.stem,
                False,
                {"error": str(exc)},
            )
            continue
        s.check(
            "frame-valid",
            "every positive corpus entry builds a valid frame",
            p.stem,
            True,
        )
        frames.append((p.stem, fr))

    for stem, spec in iter_negative_specs(rootp):
        try:
            build_frame(spec)
        except FrameError as exc:
            s.check(
                "negative-rejected",
                "every negative corpus entry is refused with a witness",
                stem,
                getattr(exc, "witness", None) is not None,
                {"error": str(exc)},
            )
        else:
            s.check(
                "negative-rejected",
                "every negative corpus entry is refused with a witness",
                stem,
                False,
                {"error": "built without complaint"},
            )

    for stem, fr in frames:
        if fr.n > max_size:
            s.note(f"{stem} skipped: {fr.n} elements over the size cap {max_size}")
            continue
        _frame_laws(s, stem, fr)
    return s.report()


def _frame_laws(s: _Suite, stem: str, fr: Frame):
    n = fr.n
    nm = fr.name

    checked, bad = 0, []
    for w in range(n):
        for u in range(n):
            for h in range(n):
                checked += 1
                if fr.leq(w, fr.heyting(u, h)) != fr.leq(fr.meet(w, u), h):
                    bad.append({"w": nm(w), "u": nm(u), "h": nm(h)})
    s.bulk("heyting-adjunction", "W <= (U => H) iff W n U <= H", stem, checked, bad)

    checked, bad = 0, []
    for a in range(n):
        for b in range(n):
            for c in range(n):
                checked += 1
                if fr.meet(a, fr.join(b, c)) != fr.join(fr.meet(a, b), fr.meet(a, c)):
                    bad.append({"a": nm(a), "b": nm(b), "c": nm(c)})
    s.bulk("meet-over-join", "A n (B u C) = (A n B) u (A n C)", stem, checked, bad)

    complemented = all(fr.join(x, fr.neg(x)) == fr.top for x in range(n))
    s.check(
        "boolean-definition",
        "the boolean flag means every element has a complement",
        stem,
        fr.boolean == complemented,
        {"flag": str(fr.boolean)},
    )
    reg = all(
        fr.join_all(w for w in range(n) if fr.well_inside(w, u)) == u
        for u in range(n)
    )
    s.check(
        "regular-definition",
        "the regular flag means every element is the join of elements well inside it",
        stem,
        fr.regular == reg,
        {"flag": str(fr.regular)},
    )
    s.check(
        "finite-regular-is-boolean",
        "on a finite frame regularity and complementation coincide",
        stem,
        fr.regular == fr.boolean,
    )

    checked, bad = 0, []
    for u in range(n):
        for v in range(n):
            checked += 1
            if fr.neg(fr.join(u, v)) != fr.meet(fr.neg(u), fr.neg(v)):
                bad.append({"u": nm(u), "v": nm(v)})
    s.bulk("neg-of-join", "not(U u V) = not U n not V", stem, checked, bad)

    checked, bad = 0, []
    for u in range(n):
        checked += 1
        if fr.neg(fr.neg(fr.neg(u))) != fr.neg(u):
            bad.append({"u": nm(u)})
    s.bulk("triple-negation", "not not not U = not U", stem, checked, bad)


# ---------------------------------------------------------------------------
# sublocale suite
# ---------------------------------------------------------------------------

def run_sublocale_suite(root=None, max_size=None, tol=None) -> RunReport:
    max_size = 10 if max_size is None else max_size
    s = _Suite("sublocale")
    strict_note = None
    distributivity_failed = False
    for name, fr in iter_corpus_frames(root):
        if fr.n > max_size:
            s.note(f"{name} skipped: {fr.n} elements over the size cap {max_size}")
            continue
        L = SubLattice(fr)
        _open_closed_laws(s, name, L)
        _lattice_laws(s, name, L)
        _topological_laws(s, name, L)
        _generic_laws(s, name, L)
        _complement_laws(s, name, L)
        _entanglement_laws(s, name, L)
        distributivity_failed |= _distributivity_search(s, name, L)
        if fr.opens is not None and len(fr.point_names) <= 3:
            found = _subspace_laws(s, name, fr, L)
            if found and strict_note is None:
                strict_note = found
    if not distributivity_failed:
        s.note(
            "meet over arbitrary union: no violation found; every finite "
            "assembly of sublocales is a distributive lattice, so the corpus "
            "is too small to exhibit the failure (it needs an infinite join)"
        )
    if strict_note:
        s.note(strict_note)
    return s.report()


def _open_closed_laws(s: _Suite, name: str, L: SubLattice):
    fr = L.frame
    n, k = fr.n, len(L.subs)
    nm = fr.name

    checked, bad = 0, []
    for sub in L.subs:
        checked += 1
        try:
            validate_nucleus(fr, sub.nucleus)
        except FrameError as exc:
            bad.append({"error": str(exc)})
    s.bulk(
        "nucleus-valid",
        "every enumerated sublocale map is inflationary, idempotent, and meet-preserving",
        name,
        checked,
        bad,
    )

    checked, bad = 0, []
    for u in range(n):
        for v in range(n):
            checked += 1
            if fr.leq(u, v) != L.le[L.open_idx[u]][L.open_idx[v]]:
                bad.append({"u": nm(u), "v": nm(v)})
    s.bulk("open-order", "U <= V iff [U] inside [V]", name, checked, bad)

    checked, bad = 0, []
    for u in range(n):
        for v in range(n):
            checked += 1
            if L.open_idx[fr.meet(u, v)] != L.meet_t[L.open_idx[u]][L.open_idx[v]]:
                bad.append({"u": nm(u), "v": nm(v)})
    s.bulk("open-meet", "[U n V] = [U] n [V]", name, checked, bad)

    checked, bad = 0, []
    for u in range(n):
        for v in range(n):
            checked += 1
            if L.open_idx[fr.join(u, v)] != L.union_t[L.open_idx[u]][L.open_idx[v]]:
                bad.append({"u": nm(u), "v": nm(v)})
    s.bulk("open-join", "[U u V] = [U] u [V]", name, checked, bad)

    checked, bad = 0, []
    for u in range(n):
        for v in range(n):
            checked += 3
            if fr.leq(v, u) != L.le[L.closed_idx[u]][L.closed_idx[v]]:
                bad.append({"law": "order", "u": nm(u), "v": nm(v)})
            if L.closed_idx[fr.join(u, v)] != L.meet_t[L.closed_idx[u]][L.closed_idx[v]]:
                bad.append({"law": "meet", "u": nm(u), "v": nm(v)})
            if L.closed_idx[fr.meet(u, v)] != L.union_t[L.closed_idx[u]][L.closed_idx[v]]:
                bad.append({"law": "join", "u": nm(u), "v": nm(v)})
    s.bulk(
        "closed-duality",
        "c reverses order, c(U u V) = c(U) n c(V), c(U n V) = c(U) u c(V)",
        name,
        checked,
        bad,
    )

    checked, bad = 0, []
    for v in range(n):
        checked += 2
        if L.union_t[L.open_idx[v]][L.closed_idx[v]] != L.whole_idx:
            bad.append({"v": nm(v), "side": "union"})
        if L.meet_t[L.open_idx[v]][L.closed_idx[v]] != L.empty_idx:
            bad.append({"v": nm(v), "side": "meet"})
    s.bulk(
        "open-closed-partition",
        "[V] u c(V) = E and [V] n c(V) = empty",
        name,
        checked,
        bad,
    )

    # the four equivalences pairing a sublocale against an open/closed pair
    checked, bad = 0, []
    for v in range(n):
        ov, cv = L.open_idx[v], L.closed_idx[v]
        for x in range(k):
            checked += 4
            if (L.union_t[x][cv] == L.whole_idx) != L.le[ov][x]:
                bad.append({"v": nm(v), "x": L.label(x), "form": "X u c(V) = E iff [V] in X"})
            if (L.meet_t[x][ov] == L.empty_idx) != L.le[x][cv]:
                bad.append({"v": nm(v), "x": L.label(x), "form": "X n [V] = 0 iff X in c(V)"})
            if (L.union_t[x][ov] == L.whole_idx) != L.le[cv][x]:
                bad.append({"v": nm(v), "x": L.label(x), "form": "X u [V] = E iff c(V) in X"})
            if (L.meet_t[x][cv] == L.empty_idx) != L.le[x][ov]:
                bad.append({"v": nm(v), "x": L.label(x), "form": "X n c(V) = 0 iff X in [V]"})
    s.bulk(
        "complement-characterizations",
        "union with one of the pair is everything iff the other is contained",
        name,
        checked,
        bad,
    )

    # meets with opens and closeds have closed-form nuclei
    checked, bad = 0, []
    for v in range(n):
        ov, cv = L.open_idx[v], L.closed_idx[v]
        for x in range(k):
            ex = L.subs[x].nucleus
            open_meet = L.subs[L.meet_t[ov][x]].nucleus
            closed_meet = L.subs[L.meet_t[cv][x]].nucleus
            for h in range(n):
                checked += 2
                if open_meet[h] != fr.heyting(v, ex[h]):
                    bad.append({"v": nm(v), "x": L.label(x), "h": nm(h), "side": "open"})
                if closed_meet[h] != ex[fr.join(h, v)]:
                    bad.append({"v": nm(v), "x": L.label(x), "h": nm(h), "side": "closed"})
    s.bulk(
        "meet-nucleus-form",
        "([V] n X) maps H to V => e_X(H); (c(V) n X) maps H to e_X(H u V)",
        name,
        checked,
        bad,
    )

    # opens and closeds distribute over finite unions of sublocales
    checked, bad = 0, []
    for v in range(n):
        for li in (L.open_idx[v], L.closed_idx[v]):
            row_m, row_u = L.meet_t[li], L.union_t
            for x in range(k):
                mx = row_m[x]
                for y in range(k):
                    checked += 1
                    if row_m[row_u[x][y]] != row_u[mx][row_m[y]]:
                        bad.append({"v": nm(v), "x": L.label(x), "y": L.label(y)})
    s.bulk(
        "side-distributivity",
        "L n (X u Y) = (L n X) u (L n Y) for L open or closed",
        name,
        checked,
        bad,
    )


def _lattice_laws(s: _Suite, name: str, L: SubLattice):
    k = len(L.subs)
    checked, bad = 0, []
    for i in range(k):
        for j in range(k):
            u, m = L.union_t[i][j], L.meet_t[i][j]
            checked += 2
            if not (L.le[i][u] and L.le[j][u]) or not (L.le[m][i] and L.le[m][j]):
                bad.append({"x": L.label(i), "y": L.label(j), "form": "bounds"})
                continue
            for z in range(k):
                checked += 2
                if L.le[i][z] and L.le[j][z] and not L.le[u][z]:
                    bad.append({"x": L.label(i), "y": L.label(j), "z": L.label(z), "form": "union not least"})
                if L.le[z][i] and L.le[z][j] and not L.le[z][m]:
                    bad.append({"x": L.label(i), "y": L.label(j), "z": L.label(z), "form": "meet not greatest"})
    s.bulk(
        "union-lub-intersect-glb",
        "union is the least upper bound and intersection the greatest lower bound",
        name,
        checked,
        bad,
    )

    # finite unions distribute over meets (pairs and triples)
    checked, bad = 0, []
    for a in range(k):
        row_u = L.union_t[a]
        for i, j in itertools.combinations(range(k), 2):
            checked += 1
            if row_u[L.meet_t[i][j]] != L.meet_t[row_u[i]][row_u[j]]:
                bad.append({"a": L.label(a), "b1": L.label(i), "b2": L.label(j)})
        for i, j, h in itertools.combinations(range(k), 3):
            checked += 1
            lhs = row_u[L.meet_t[L.meet_t[i][j]][h]]
            rhs = L.meet_t[L.meet_t[row_u[i]][row_u[j]]][row_u[h]]
            if lhs != rhs:
                bad.append({"a": L.label(a), "b1": L.label(i), "b2": L.label(j), "b3": L.label(h)})
    s.bulk(
        "join-over-meet",
        "A u (B1 n B2 n ...) = (A u B1) n (A u B2) n ... over pairs and triples",
        name,
        checked,
        bad,
    )


def _topological_laws(s: _Suite, name: str, L: SubLattice):
    fr = L.frame
    n, k = fr.n, len(L.subs)
    nm = fr.name
    closed_set = sorted(set(L.closed_idx))

    checked, bad = 0, []
    for i in range(k):
        ci = L.closure_idx[i]
        checked += 4
        if not L.le[i][ci]:
            bad.append({"x": L.label(i), "form": "closure not above"})
        if ci not in closed_set:
            bad.append({"x": L.label(i), "form": "closure not closed"})
        if L.closure_idx[ci] != ci:
            bad.append({"x": L.label(i), "form": "closure not idempotent"})
        for d in closed_set:
            checked += 1
            if L.le[i][d] and not L.le[ci][d]:
                bad.append({"x": L.label(i), "form": "closure not least", "d": L.label(d)})
        u = L.int_el[i]
        if not L.le[L.open_idx[u]][i] or any(
            L.le[L.open_idx[v]][i] and not fr.leq(v, u) for v in range(n)
        ):
            bad.append({"x": L.label(i), "form": "interior not greatest open inside"})
    s.bulk(
        "closure-interior-extremal",
        "closure is the least closed part above, interior the largest open inside",
        name,
        checked,
        bad,
    )

    checked, bad = 0, []
    for i in range(k):
        ext_i, int_i = L.ext[i], L.int_el[i]
        bd = L.meet_t[L.closure_idx[i]][L.closed_idx[int_i]]
        checked += 5
        if L.closure_idx[i] != L.closed_idx[ext_i]:
            bad.append({"x": L.label(i), "form": "closure is c(Ext X)"})
        if bd != L.closed_idx[fr.join(int_i, ext_i)]:
            bad.append({"x": L.label(i), "form": "boundary is c(Int X u Ext X)"})
        if L.union_t[L.open_idx[int_i]][bd] != L.closure_idx[i]:
            bad.append({"x": L.label(i), "form": "[Int X] u boundary = closure"})
        if L.union_t[L.open_idx[ext_i]][bd] != L.closed_idx[int_i]:
            bad.append({"x": L.label(i), "form": "[Ext X] u boundary = c(Int X)"})
        dense = L.dense[i]
        if dense != (L.closure_idx[i] == L.whole_idx) or dense != is_dense(L.subs[i]):
            bad.append({"x": L.label(i), "form": "dense iff closure is everything"})
    s.bulk(
        "exterior-partition",
        "the exterior, interior, and boundary of a part tile the space",
        name,
        checked,
        bad,
    )


def _generic_laws(s: _Suite, name: str, L: SubLattice):
    fr = L.frame
    n = fr.n
    nm = fr.name
    g = generic(fr)
    gi = L.index[g.nucleus]

    checked, bad = 0, []
    for h in range(n):
        checked += 2
        if g.nucleus[h] != fr.neg(fr.neg(h)):
            bad.append({"h": nm(h), "form": "double negation"})
        if g.nucleus[h] != L.int_el[L.closure_idx[L.open_idx[h]]]:
            bad.append({"h": nm(h), "form": "interior of closure"})
    s.bulk(
        "generic-nucleus",
        "the least dense part maps H to not not H = Int closure [H]",
        name,
        checked,
        bad,
    )

    s.check("generic-dense", "the generic part is dense", name, L.dense[gi])
    checked, bad = 0, []
    for i in range(len(L.subs)):
        if L.dense[i]:
            checked += 1
            if not L.le[gi][i]:
                bad.append({"d": L.label(i)})
    s.bulk(
        "generic-least-dense",
        "the generic part is contained in every dense part",
        name,
        checked,
        bad,
    )
    if fr.boolean:
        s.check(
            "boolean-generic-whole",
            "on a complemented frame the generic part is everything",
            name,
            gi == L.whole_idx,
        )
    s.check(
        "generic-boolean-part",
        "the generic part equals the generic part of its closure",
        name,
        is_boolean_sublocale(g),
    )

    checked, bad = 0, []
    for v in range(n):
        checked += 1
        if L.meet_t[gi][L.closed_idx[v]] != L.meet_t[gi][L.open_idx[fr.neg(v)]]:
            bad.append({"v": nm(v)})
    s.bulk(
        "generic-closed-swap",
        "generic n c(V) = generic n [not V]",
        name,
        checked,
        bad,
    )


def _complement_laws(s: _Suite, name: str, L: SubLattice):
    k = len(L.subs)
    checked, bad = 0, []
    for i in range(k):
        y = complement_c(L.subs[i], all_subs=L.subs)
        yi = L.index[y.nucleus]
        checked += 1
        if L.union_t[i][yi] != L.whole_idx:
            bad.append({"x": L.label(i), "form": "not a cover"})
        for z in range(k):
            checked += 1
            if L.union_t[i][z] == L.whole_idx and not L.le[yi][z]:
                bad.append({"x": L.label(i), "z": L.label(z), "form": "not least"})
    s.bulk(
        "smallest-cocover",
        "the complement is the least part whose union with X is everything",
        name,
        checked,
        bad,
    )

    if L.frame.boolean:
        checked, bad = 0, []
        for v in range(L.frame.n):
            checked += 1
            if not is_boolean_sublocale(L.subs[L.open_idx[v]]):
                bad.append({"v": L.frame.name(v)})
        s.bulk(
            "boolean-opens",
            "open parts of a complemented frame equal the generic part of their closure",
            name,
            checked,
            bad,
        )


def _entanglement_laws(s: _Suite, name: str, L: SubLattice):
    k = len(L.subs)
    closed_set = sorted(set(L.closed_idx))
    checked, bad = 0, []
    for a in range(k):
        for b in range(k):
            eps = L.closure_idx[L.meet_t[a][b]]
            got = entanglement(L.subs[a], L.subs[b])
            checked += 2
            if L.index[got.nucleus] != eps:
                bad.append({"a": L.label(a), "b": L.label(b), "form": "closure of the meet"})

            def dense_in(g):
                return (
                    L.closure_idx[L.meet_t[a][g]] == g
                    and L.closure_idx[L.meet_t[b][g]] == g
                )

            if not dense_in(eps):
                bad.append({"a": L.label(a), "b": L.label(b), "form": "zone not dense in itself"})
            for g in closed_set:
                checked += 1
                if dense_in(g) and not L.le[g][eps]:
                    bad.append({"a": L.label(a), "b": L.label(b), "g": L.label(g), "form": "not largest"})
    s.bulk(
        "entanglement-zone",
        "closure(A n B) is the largest closed F with A n F and B n F dense in F",
        name,
        checked,
        bad,
    )


def _distributivity_search(s: _Suite, name: str, L: SubLattice) -> bool:
    """Look for X n (Y u Z) != (X n Y) u (X n Z); expected to find nothing
    on a finite corpus. Returns whether a failure exists."""
    k = len(L.subs)
    found = False
    checked = 0
    for x in range(k):
        row_m = L.meet_t[x]
        for y in range(k):
            my = row_m[y]
            for z in range(k):
                checked += 1
                if row_m[L.union_t[y][z]] != L.union_t[my][row_m[z]]:
                    found = True
    s.bulk(
        "meet-over-union-search",
        "search for a finite failure of X n (Y u Z) = (X n Y) u (X n Z)",
        name,
        checked,
        [],
    )
    return found


def _subspace_laws(s: _Suite, name: str, fr: Frame, L: SubLattice):
    pts = tuple(fr.point_names)
    open_of = {frozenset(o): v for v, o in enumerate(fr.opens)}
    subsets = [
        frozenset(c)
        for r in range(len(pts) + 1)
        for c in itertools.combinations(pts, r)
    ]
    idx_of = {}
    for ss in subsets:
        idx_of[ss] = L.index[subspace_sublocale(fr, ss).nucleus]

    def ext_el(ss):
        return fr.join_all(v for v in range(fr.n) if not (fr.opens[v] & ss))

    def int_el(ss):
        return fr.join_all(v for v in range(fr.n) if fr.opens[v] <= ss)

    strict = None
    checked, bad = 0, []
    for xs in subsets:
        ix = idx_of[xs]
        ee = ext_el(xs)
        closure_pts = frozenset(pts) - fr.opens[ee]
        checked += 3
        if L.ext[ix] != ee:
            bad.append({"X": set_label(xs), "form": "exterior matches the point picture"})
        if L.closure_idx[ix] != L.index[subspace_sublocale(fr, closure_pts).nucleus]:
            bad.append({"X": set_label(xs), "form": "closure matches the point picture"})
        interior_pts = fr.opens[int_el(xs)]
        if not fr.leq(int_el(xs), L.int_el[ix]):
            bad.append({"X": set_label(xs), "form": "point interior inside localic interior"})
        bd = L.meet_t[L.closure_idx[ix]][L.closed_idx[L.int_el[ix]]]
        fr_pts = closure_pts - interior_pts
        checked += 1
        if not L.le[bd][idx_of[fr_pts]]:
            bad.append({"X": set_label(xs), "form": "boundary inside the point boundary"})
        for v in range(fr.n):
            checked += 1
            if idx_of[frozenset(fr.opens[v] & xs)] != L.meet_t[L.open_idx[v]][ix]:
                bad.append({"X": set_label(xs), "U": fr.name(v), "form": "[U n X] = [U] n [X]"})
        for ys in subsets:
            iy = idx_of[ys]
            checked += 2
            if idx_of[xs | ys] != L.union_t[ix][iy]:
                bad.append({"X": set_label(xs), "Y": set_label(ys), "form": "[X u Y] = [X] u [Y]"})
            meet_ix = L.meet_t[ix][iy]
            if not L.le[idx_of[xs & ys]][meet_ix]:
                bad.append({"X": set_label(xs), "Y": set_label(ys), "form": "[X n Y] inside [X] n [Y]"})
            elif strict is None and idx_of[xs & ys] != meet_ix:
                strict = (
                    f"point picture is lossy on {name}: [X n Y] is strictly "
                    f"below [X] n [Y] for X={set_label(xs)}, Y={set_label(ys)}"
                )
    s.bulk(
        "subspace-laws",
        "point subsets embed compatibly with union, open meets, exterior, and closure",
        name,
        checked,
        bad,
    )
    return strict


def set_label(ss) -> str:
    return "{" + ",".join(sorted(ss)) + "}"


# ---------------------------------------------------------------------------
# morphism suite
# ---------------------------------------------------------------------------

def run_morphism_suite(root=None, max_size=None, tol=None) -> RunReport:
    max_size = 8 if max_size is None else max_size
    s = _Suite("morphism")
    frames = [(nm, fr) for nm, fr in iter_corpus_frames(root) if fr.n <= max_size]
    reps, skipped = _iso_reps(frames)
    s.note(
        f"{len(frames)} corpus frames of size <= {max_size} collapse to "
        f"{len(reps)} up to isomorphism; maps are enumerated between representatives "
        f"({skipped} relabeled copies skipped)"
    )
    lats = {nm: SubLattice(fr) for nm, fr in reps}

    for nm, fr in reps:
        L = lats[nm]
        _layer_decomposition_law(s, nm, L)
        _boolean_combination_law(s, nm, L)
        _meets_of_joins_law(s, nm, L)

    for (an, a), (bn, b) in itertools.product(reps, repeat=2):
        FL, EL = lats[an], lats[bn]
        for mi, f in enumerate(enumerate_morphisms(a, b)):
            _morphism_laws(s, f"{an}->{bn}#{mi}", f, FL, EL)

    _transitivity_laws(s, reps, lats)
    return s.report()


def _layer_decomposition_law(s: _Suite, name: str, L: SubLattice):
    fr = L.frame
    checked, bad = 0, []
    for i, sub in enumerate(L.subs):
        layers = [
            L.union_t[L.open_idx[v]][L.closed_idx[sub.nucleus[v]]]
            for v in range(fr.n)
        ]
        checked += 1
        if L.meet_fold(layers) != i:
            bad.append({"x": L.label(i)})
    s.bulk(
        "layer-decomposition",
        "every part is the meet over V of [V] u c(e(V))",
        name,
        checked,
        bad,
    )


def _boolean_combination_law(s: _Suite, name: str, L: SubLattice):
    cells = atoms(L.frame)
    cell_idx = [L.index[c.nucleus] for c in cells]
    checked, bad = 0, []
    if cell_idx:
        u = L.union_fold(cell_idx)
        checked += 1
        if u != L.whole_idx:
            bad.append({"form": "cells do not cover"})
        for i, j in itertools.combinations(range(len(cell_idx)), 2):
            checked += 1
            if L.meet_t[cell_idx[i]][cell_idx[j]] != L.empty_idx:
                bad.append({"form": "cells overlap", "i": str(i), "j": str(j)})
    combos = sorted(
        {
            L.union_fold([cell_idx[i] for i in picked])
            for r in range(len(cell_idx) + 1)
            for picked in itertools.combinations(range(len(cell_idx)), r)
        }
    )
    k = len(L.subs)
    for h in combos:
        row_m = L.meet_t[h]
        for x in range(k):
            mx = row_m[x]
            for y in range(k):
                checked += 1
                if row_m[L.union_t[x][y]] != L.union_t[mx][row_m[y]]:
                    bad.append({"h": L.label(h), "a": L.label(x), "b": L.label(y)})
    s.bulk(
        "boolean-combination-distributivity",
        "H n (A u B) = (H n A) u (H n B) for H a boolean combination of opens",
        name,
        checked,
        bad,
    )


def _meets_of_joins_law(s: _Suite, name: str, L: SubLattice):
    k = len(L.subs)
    pairs = list(itertools.combinations(range(k), 2))
    checked, bad = 0, []
    for a1, a2 in pairs:
        ma = L.meet_t[a1][a2]
        for b1, b2 in pairs:
            checked += 1
            lhs = L.union_t[ma][L.meet_t[b1][b2]]
            rhs = L.meet_fold(
                [
                    L.union_t[a1][b1],
                    L.union_t[a1][b2],
                    L.union_t[a2][b1],
                    L.union_t[a2][b2],
                ]
            )
            if lhs != rhs:
                bad.append(
                    {"a1": L.label(a1), "a2": L.label(a2), "b1": L.label(b1), "b2": L.label(b2)}
                )
    s.bulk(
        "meets-join-product",
        "(meet of As) u (meet of Bs) = meet over pairs of (Ai u Bj)",
        name,
        checked,
        bad,
    )


def _morphism_laws(s: _Suite, label: str, f, FL: SubLattice, EL: SubLattice):
    src, tgt = f.source, f.target
    adj = right_adjoint(f)

    checked, bad = 0, []
    for v in range(src.n):
        for u in range(tgt.n):
            checked += 1
            if tgt.leq(f.fstar[v], u) != src.leq(v, adj[u]):
                bad.append({"v": src.name(v), "u": tgt.name(u)})
    s.bulk(
        "adjunction",
        "fstar(V) <= U iff V <= fstar-adjoint(U)",
        label,
        checked,
        bad,
    )
    s.check(
        "embedding-three-ways",
        "surjectivity of fstar, injectivity of the adjoint, and the section law agree",
        label,
        isinstance(is_embedding(f), bool),
    )

    checked, bad = 0, []
    for v in range(src.n):
        checked += 2
        if EL.index[preimage(f, open_sublocale(src, v)).nucleus] != EL.open_idx[f.fstar[v]]:
            bad.append({"v": src.name(v), "side": "open"})
        if EL.index[preimage(f, closed_sublocale(src, v)).nucleus] != EL.closed_idx[f.fstar[v]]:
            bad.append({"v": src.name(v), "side": "closed"})
    s.bulk(
        "preimage-open-closed",
        "pullback of [V] is [fstar V]; pullback of c(V) is c(fstar V)",
        label,
        checked,
        bad,
    )

    pre = [EL.index[preimage(f, y).nucleus] for y in FL.subs]
    img = [FL.index[image(f, x).nucleus] for x in EL.subs]
    kf, ke = len(FL.subs), len(EL.subs)

    checked, bad = 0, []
    for i in range(kf):
        pi = pre[i]
        for j in range(kf):
            checked += 2
            if pre[FL.union_t[i][j]] != EL.union_t[pi][pre[j]]:
                bad.append({"a": FL.label(i), "b": FL.label(j), "side": "union"})
            if pre[FL.meet_t[i][j]] != EL.meet_t[pi][pre[j]]:
                bad.append({"a": FL.label(i), "b": FL.label(j), "side": "meet"})
    s.bulk(
        "preimage-union-meet",
        "pullback commutes with binary unions and meets of parts",
        label,
        checked,
        bad,
    )

    checked, bad = 0, []
    for i in range(ke):
        for j in range(ke):
            checked += 1
            if img[EL.union_t[i][j]] != FL.union_t[img[i]][img[j]]:
                bad.append({"x": EL.label(i), "y": EL.label(j)})
    s.bulk(
        "image-union",
        "the image of a union is the union of the images",
        label,
        checked,
        bad,
    )

    checked, bad = 0, []
    for i in range(kf):
        checked += 1
        if not FL.le[img[pre[i]]][i]:
            bad.append({"y": FL.label(i), "side": "image of pullback"})
    for j in range(ke):
        checked += 1
        if not EL.le[j][pre[img[j]]]:
            bad.append({"x": EL.label(j), "side": "pullback of image"})
    s.bulk(
        "image-preimage-galois",
        "image(pullback(Y)) inside Y and X inside pullback(image(X))",
        label,
        checked,
        bad,
    )


def _transitivity_laws(s: _Suite, reps, lats):
    small = [(nm, fr) for nm, fr in reps if fr.n <= 4]
    s.note(
        "composition laws checked on the representatives with at most 4 "
        "elements: " + ", ".join(nm for nm, _ in small)
    )
    checked, bad = 0, []
    for (an, a), (bn, b), (cn, c) in itertools.product(small, repeat=3):
        AL, CL = lats[an], lats[cn]
        for f in enumerate_morphisms(a, b):
            for g in enumerate_morphisms(b, c):
                h = compose(g, f)
                for x in CL.subs:
                    checked += 1
                    if image(h, x) != image(f, image(g, x)):
                        bad.append({"path": f"{an}->{bn}->{cn}", "x": CL.label(CL.index[x.nucleus])})
                for y in AL.subs:
                    checked += 1
                    if preimage(h, y) != preimage(g, preimage(f, y)):
                        bad.append({"path": f"{an}->{bn}->{cn}", "y": AL.label(AL.index[y.nucleus])})
    s.bulk(
        "composition",
        "images and pullbacks compose along composite maps",
        "small representatives",
        checked,
        bad,
    )


# ---------------------------------------------------------------------------
# measure suite
# ---------------------------------------------------------------------------

def _boolean_valuations(fr: Frame):
    """At least three distinct valuations on a complemented frame, one on
    the one-element frame (only the zero valuation exists there)."""
    ats = fr.join_irreducibles
    k = len(ats)
    if k == 0:
        return [validate_valuation(fr, (Fraction(0),) * fr.n)]
    rows = []
    if k == 1:
        rows = [(Fraction(1),), (Fraction(1, 2),), (Fraction(0),)]
    else:
        rows.append(tuple(Fraction(1, k) for _ in range(k)))
        t = k * (k + 1) // 2
        rows.append(tuple(Fraction(i + 1, t) for i in range(k)))
        rows.append((Fraction(0),) + tuple(Fraction(1, k - 1) for _ in range(k - 1)))
    out, seen = [], set()
    for w in rows:
        mu = tuple(
            sum((w[i] for i in range(k) if fr.leq(ats[i], x)), Fraction(0))
            for x in range(fr.n)
        )
        if mu not in seen:
            seen.add(mu)
            out.append(validate_valuation(fr, mu))
    return out


def run_measure_suite(root=None, max_size=None, tol=None) -> RunReport:
    max_size = 10 if max_size is None else max_size
    tol = Fraction(1, 1000) if tol is None else frac(tol)
    s = _Suite("measure", tol)
    gated, tiny = [], []
    chain3 = None
    for nm, fr in iter_corpus_frames(root):
        if fr.n > max_size:
            s.note(f"{nm} skipped: {fr.n} elements over the size cap {max_size}")
            continue
        if not fr.boolean:
            gated.append(nm)
            s.check(
                "regularity-gate",
                "measure identities are asserted only on complemented frames",
                nm,
                not fr.regular,
            )
            if nm == "chain3":
                chain3 = fr
            continue
        L = SubLattice(fr)
        vals = _boolean_valuations(fr)
        if fr.n == 1:
            tiny.append(nm)
        s.check(
            "valuation-count",
            "at least three distinct valuations per complemented frame",
            nm,
            len(vals) >= (3 if fr.n > 1 else 1),
            {"got": str(len(vals))},
        )
        for vi, val in enumerate(vals):
            _finite_measure_laws(s, f"{nm}/mu{vi}", fr, L, val)
    if gated:
        s.note(
            "no measure claims on the non-complemented frames: "
            + ", ".join(sorted(gated))
        )
    if chain3 is not None:
        val = validate_valuation(chain3, (Fraction(0), Fraction(1, 2), Fraction(1)))
        g = generic(chain3)
        c = closed_sublocale(chain3, chain3.el("u"))
        res = strict_additivity_check(val, g, c)
        s.note(
            "the gate is not vacuous: on chain3 the additivity residual of "
            f"the generic part against c(u) is {res}, not 0"
        )
    if tiny:
        s.note(
            "one-element frames admit only the zero valuation: "
            + ", ".join(sorted(tiny))
        )
    _interval_measure_laws(s, tol)
    return s.report()


def _finite_measure_laws(s: _Suite, label: str, fr: Frame, L: SubLattice, val):
    n, k = fr.n, len(L.subs)
    nm = fr.name
    out = [outer_measure_finite(val, x) for x in L.subs]
    top_m = val(fr.top)

    checked, bad = 0, []
    for v in range(n):
        checked += 1
        if out[L.open_idx[v]] != val(v):
            bad.append({"v": nm(v)})
    s.bulk(
        "outer-extends",
        "the outer measure of [V] is the valuation of V",
        label,
        checked,
        bad,
    )

    checked, bad = 0, []
    for i in range(k):
        for j in range(k):
            checked += 1
            if L.le[i][j] and out[i] > out[j]:
                bad.append({"x": L.label(i), "y": L.label(j)})
    s.bulk("outer-monotone", "X inside Y gives mu(X) <= mu(Y)", label, checked, bad)

    checked, bad = 0, []
    for i in range(k):
        for j in range(k):
            checked += 1
            if out[L.union_t[i][j]] + out[L.meet_t[i][j]] != out[i] + out[j]:
                bad.append(
                    {
                        "x": L.label(i),
                        "y": L.label(j),
                        "residual": str(
                            out[L.union_t[i][j]] + out[L.meet_t[i][j]] - out[i] - out[j]
                        ),
                    }
                )
    s.bulk(
        "strict-additivity",
        "mu(X u Y) + mu(X n Y) = mu(X) + mu(Y) for every pair",
        label,
        checked,
        bad,
    )

    checked, bad = 0, []
    for i in range(k):
        for j in range(k):
            if not L.le[i][j]:
                continue
            checked += 1
            if out[L.union_t[i][j]] != max(out[i], out[j]):
                bad.append({"x": L.label(i), "y": L.label(j)})
            for h in range(k):
                if not L.le[j][h]:
                    continue
                checked += 1
                u = L.union_t[L.union_t[i][j]][h]
                if out[u] != max(out[i], out[j], out[h]):
                    bad.append({"x": L.label(i), "y": L.label(j), "z": L.label(h)})
    s.bulk(
        "increasing-union-sup",
        "along an increasing chain the measure of the union is the sup",
        label,
        checked,
        bad,
    )

    checked, bad = 0, []
    for v in range(n):
        checked += 1
        if out[L.open_idx[v]] + out[L.closed_idx[v]] != top_m:
            bad.append({"v": nm(v)})
    s.bulk(
        "closed-complement",
        "mu[V] + mu(c(V)) is the total mass",
        label,
        checked,
        bad,
    )

    checked, bad = 0, []
    for i in range(k):
        for v in range(n):
            checked += 1
            if out[L.meet_t[i][L.open_idx[v]]] + out[L.meet_t[i][L.closed_idx[v]]] != out[i]:
                bad.append({"x": L.label(i), "v": nm(v)})
    s.bulk(
        "open-split",
        "mu(A n [V]) + mu(A n c(V)) = mu(A)",
        label,
        checked,
        bad,
    )

    checked, bad = 0, []
    for i in range(k):
        row = L.meet_t[i]
        for u in range(n):
            for v in range(n):
                checked += 2
                ju, jv = L.open_idx[u], L.open_idx[v]
                lhs = out[row[L.open_idx[fr.join(u, v)]]]
                if lhs != out[row[ju]] + out[row[jv]] - out[row[L.open_idx[fr.meet(u, v)]]]:
                    bad.append({"x": L.label(i), "u": nm(u), "v": nm(v), "form": "relative modularity"})
                if lhs != max(out[row[ju]], out[row[jv]], lhs):
                    bad.append({"x": L.label(i), "u": nm(u), "v": nm(v), "form": "filtered sup"})
    s.bulk(
        "relative-modularity",
        "through any part A, opens stay modular and filtered joins reach the sup",
        label,
        checked,
        bad,
    )

    checked, bad = 0, []
    for u in range(n):
        for v in range(n):
            checked += 1
            if out[L.meet_t[L.open_idx[u]][L.open_idx[v]]] != min(
                val(u), val(v), val(fr.meet(u, v))
            ):
                bad.append({"u": nm(u), "v": nm(v)})
    for i in range(k):
        for j in range(k):
            checked += 1
            if out[L.meet_t[i][j]] != min(out[i], out[j], out[L.meet_t[i][j]]):
                bad.append({"x": L.label(i), "y": L.label(j)})
    s.bulk(
        "decreasing-meet-inf",
        "downward filtered families reach the inf at their meet",
        label,
        checked,
        bad,
    )

    red = [L.index[mu_reduce(val, x, all_subs=L.subs).nucleus] for x in L.subs]
    checked, bad = 0, []
    for i in range(k):
        r = red[i]
        checked += 3
        if not L.le[r][i] or out[r] != out[i]:
            bad.append({"x": L.label(i), "form": "reduction keeps measure inside"})
        if red[r] != r:
            bad.append({"x": L.label(i), "form": "idempotent"})
        for z in range(k):
            checked += 1
            if L.le[z][i] and out[z] == out[i] and not L.le[r][z]:
                bad.append({"x": L.label(i), "z": L.label(z), "form": "least full-measure part"})
    s.bulk(
        "reduction",
        "the reduction is the least part of equal measure, and reducing twice changes nothing",
        label,
        checked,
        bad,
    )

    reduced = sorted(set(red))
    checked, bad = 0, []
    for r1 in reduced:
        for r2 in reduced:
            u = L.union_t[r1][r2]
            checked += 1
            if red[u] != u:
                bad.append({"x": L.label(r1), "y": L.label(r2)})
    for r1 in reduced:
        row = L.meet_t[r1]
        for r2 in reduced:
            for r3 in reduced:
                checked += 1
                if row[L.union_t[r2][r3]] != L.union_t[row[r2]][row[r3]]:
                    bad.append({"x": L.label(r1), "y": L.label(r2), "z": L.label(r3)})
    s.bulk(
        "reduced-parts-algebra",
        "unions of reduced parts are reduced and meets distribute over their unions",
        label,
        checked,
        bad,
    )

    checked, bad = 0, []
    for i in range(k):
        b, certs = null_partner(val, L.subs[i])
        checked += 2
        if certs["union"] != top_m:
            bad.append({"x": L.label(i), "form": "union short of total", "got": str(certs["union"])})
        if certs["intersection"] != 0:
            bad.append({"x": L.label(i), "form": "meet not null", "got": str(certs["intersection"])})
    s.bulk(
        "null-partner",
        "the partner restores the total mass while meeting X in measure zero",
        label,
        checked,
        bad,
    )

    checked, bad = 0, []
    for i in range(k):
        checked += 1
        try:
            restrict_valuation(val, L.subs[i])
        except FrameError as exc:
            bad.append({"x": L.label(i), "error": str(exc)})
    s.bulk(
        "restriction-valid",
        "restricting the valuation to any part yields a valuation",
        label,
        checked,
        bad,
    )

    ra = reduced_algebra(val, max_size=max(10, fr.n))
    ok = ra.frame.boolean and ra.frame.n == len(reduced)
    ok = ok and all(
        outer_measure_finite(val, ra.reps[i]) == ra.valuation(i)
        for i in range(ra.frame.n)
    )
    s.check(
        "reduced-algebra",
        "the reduced parts form a complemented frame with a measure-compatible quotient",
        label,
        ok,
        {"size": str(ra.frame.n)},
    )


# -- interval side ----------------------------------------------------------

def _random_ratopen(rng: random.Random) -> RatOpen:
    den = rng.choice((8, 12, 16, 24))
    pieces = rng.randrange(0, 4)
    if pieces == 0:
        return ivs.EMPTY_RO
    cuts = sorted(rng.sample(range(0, den + 1), 2 * pieces))
    out = []
    for i in range(pieces):
        lo = Fraction(cuts[2 * i], den)
        hi = Fraction(cuts[2 * i + 1], den)
        out.append(iv(lo, hi, lo == 0 and rng.random() < 0.5, hi == 1 and rng.random() < 0.5))
    return RatOpen(normalize(out))


def _interval_descriptors():
    return [
        ("lebesgue", Lebesgue()),
        ("restrict[0,1/2]", LebesgueRestrictedTo(parse_fin("[0,1/2]"))),
        (
            "atoms{1/3:1/3,1/2:1}",
            atomic([(Fraction(1, 2), Fraction(1)), (Fraction(1, 3), Fraction(1, 3))]),
        ),
        (
            "mix(lebesgue+atoms{1/2:1/2})",
            Mixture((Lebesgue(), atomic([(Fraction(1, 2), Fraction(1, 2))]))),
        ),
    ]


def _cells(depth: int):
    d = 2 ** depth
    return [(Fraction(i, d), Fraction(i + 1, d)) for i in range(d)]


def _meets_cell(x, a, b, budget: int = 70000) -> bool:
    """Certify the presentation reaches into (a, b)."""
    if isinstance(x, CountablePoints):
        return any(a < q < b for q in x.points.prefix(budget))
    if isinstance(x, (CoCountable, Generic)):
        # stages are the whole interval minus finitely many points (or
        # dense opens); no cell can be missed
        return True
    if isinstance(x, Open) and isinstance(x.part, RatOpen):
        probe = RatOpen(normalize([iv(a, b)]))
        return ivs.meet(x.part, probe).fin.pieces != ()
    return False


def _interval_measure_laws(s: _Suite, tol: Fraction):
    arena = "[0,1]"
    descriptors = _interval_descriptors()
    rng = random.Random(20260822)

    checked, bad = 0, []
    for t in range(100):
        u = _random_ratopen(rng)
        for dn, d in descriptors:
            total = total_measure(d)
            bo = measure_bounds(Open(u), d, tol)
            bc = measure_bounds(Closed(u), d, tol)
            checked += 1
            if not (bo.is_exact and bc.is_exact and bo.upper + bc.upper == total):
                bad.append({"u": str(u), "descriptor": dn})
        # the closed complement's mass is genuinely the inf over
        # neighborhood stages, not just a formula
        exact = total_measure(Lebesgue()) - measure_ro(Lebesgue(), u)
        good = False
        for kk in range(60):
            m = measure_ro(Lebesgue(), closed_neighborhood(u, kk))
            checked += 1
            if m < exact:
                bad.append({"u": str(u), "stage": str(kk), "form": "stage below the closed mass"})
                break
            if m - exact <= tol:
                good = True
                break
        if not good:
            bad.append({"u": str(u), "form": "neighborhood stages did not converge"})
    s.bulk(
        "closed-complement-interval",
        "mu(U) + mu(complement of U) is the total mass, attained by neighborhood stages",
        arena,
        checked,
        bad,
    )

    rats = CountablePoints(RATIONALS)
    irr = CoCountable(RATIONALS)
    d = Lebesgue()
    bq = measure_bounds(rats, d, tol)
    s.check(
        "countable-dense-null",
        "the rational-points part has outer measure at most the tolerance",
        arena,
        Fraction(0) <= bq.lower <= bq.upper <= tol,
        {"bounds": str(bq)},
    )
    bi = measure_bounds(irr, d, tol)
    s.check(
        "cocountable-full",
        "removing countably many points keeps full measure within tolerance",
        arena,
        1 - tol <= bi.lower <= bi.upper <= 1,
        {"bounds": str(bi)},
    )
    for dn, dd in descriptors:
        bg = measure_bounds(Generic(), dd, tol)
        s.check(
            "generic-null",
            "the least dense part has outer measure at most the tolerance",
            arena,
            bg.upper <= tol,
            {"descriptor": dn, "bounds": str(bg)},
        )

    res = strict_additivity_interval(rats, irr, d, tol)
    s.check(
        "additivity-residual",
        "the additivity residual of the rational/irrational split brackets zero tightly",
        arena,
        res.contains_zero() and res.width <= 4 * tol,
        {"lo": str(res.lo), "hi": str(res.hi)},
    )
    checked, bad = 0, []
    for t in range(10):
        x, y = Open(_random_ratopen(rng)), Open(_random_ratopen(rng))
        r = strict_additivity_interval(x, y, d, tol)
        checked += 1
        if not (r.lo == r.hi == 0):
            bad.append({"x": str(x.part), "y": str(y.part)})
    s.bulk(
        "additivity-open-pairs",
        "for opens the additivity residual is exactly zero",
        arena,
        checked,
        bad,
    )

    halves = parse_ratopen("(0,1/2)|(1/2,1)")
    s.check(
        "reduce-fills-null-gap",
        "a missing massless point disappears under reduction",
        arena,
        mu_reduce_open(Lebesgue(), halves) == parse_ratopen("(0,1)"),
    )
    atom_half = atomic([(Fraction(1, 2), Fraction(1))])
    r = mu_reduce_interval(atom_half)
    s.check(
        "reduce-to-atom",
        "a single atom reduces the space to the closed part carrying it",
        arena,
        isinstance(r, Closed) and r.of_open == parse_ratopen("[0,1/2)|(1/2,1]"),
    )
    restricted = LebesgueRestrictedTo(parse_fin("[0,1/2]"))
    r2 = mu_reduce_interval(restricted)
    s.check(
        "reduce-to-support",
        "restricted length reduces the space to its support",
        arena,
        isinstance(r2, Closed) and r2.of_open == parse_ratopen("(1/2,1]"),
    )
    checked, bad = 0, []
    for dn, dd in (("lebesgue", Lebesgue()), ("atoms", atom_half), ("restrict", restricted)):
        first = mu_reduce_interval(dd)
        second = mu_reduce_interval(dd, first)
        checked += 1
        if first != second:
            bad.append({"descriptor": dn})
    s.bulk(
        "reduce-idempotent-interval",
        "reducing the reduction changes nothing",
        arena,
        checked,
        bad,
    )

    checked, bad = 0, []
    for part, pname in ((rats, "countable-points"), (irr, "cocountable")):
        for a, b in _cells(4):
            checked += 1
            if not _meets_cell(part, a, b):
                bad.append({"part": pname, "cell": f"({a},{b})"})
    s.bulk(
        "dense-probes",
        "both halves of the rational/irrational split reach into every dyadic cell",
        arena,
        checked,
        bad,
    )
    partner, certs = null_partner_interval(rats, d, tol)
    s.check(
        "hidden-intersection",
        "the split is certified a cover with a null meet only by measure accounting, "
        "never by structural disjointness",
        arena,
        structural_union_is_whole(rats, irr)
        and certs["union"].lower == certs["union"].upper == 1
        and certs["intersection"].upper <= 2 * tol,
        {"intersection-upper": str(certs["intersection"].upper)},
    )
    s.note(
        "both halves of the rational/irrational split are dense, so their "
        "meet contains the least dense part: the set picture's empty "
        "intersection is localically a dense, measure-null part"
    )

    checked, bad = 0, []
    for q in RATIONALS.prefix(100):
        checked += 1
        if point_sublocale_meets_generic(q):
            bad.append({"q": str(q)})
    nb = neighborhood(Generic(), 5)
    for q in RATIONALS.prefix(64):
        checked += 1
        if not nb.may_contain(q):
            bad.append({"form": "neighborhood stream misses a rational", "q": str(q)})
    s.bulk(
        "pointless-but-nonempty",
        "the generic part misses every sampled point yet every neighborhood of it is dense",
        arena,
        checked,
        bad,
    )
    s.note(
        "meet does not distribute over the countable union of points: "
        "the generic part meets every single point emptily, yet meets "
        "their dense union in all of itself"
    )


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------

SUITES = {
    "frame": run_frame_suite,
    "sublocale": run_sublocale_suite,
    "morphism": run_morphism_suite,
    "measure": run_measure_suite,
}


def run_suite(name: str, root=None, max_size=None, tol=None):
    """Run one suite, or all of them in declaration order."""
    if name == "all":
        return [fn(root, max_size, tol) for fn in SUITES.values()]
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}")
    return SUITES[name](root, max_size, tol)
