"""Named verification checks grouped by scope: tables, theorems, steiner.

Each check records pass/fail and a short detail string. A theorem check that
trips an InvariantError is recorded as failed with ``invariant=True`` so the
CLI can tell a broken identity from a count mismatch.
"""
from __future__ import annotations

import logging
from dataclasses import asdict, dataclass
from typing import Callable, Iterable

from . import catalog as cat
from . import cliques, cubes, inscribed, lattice, polytope, steiner
from .errors import DomainError, InvariantError
from .picard import reflect, simple_roots

log = logging.getLogger(__name__)

SCOPES = ("tables", "theorems", "steiner")
RANKS = (3, 4, 5, 6, 7, 8)
CATALOG_COUNTS = {
    "lines": {3: 6, 4: 10, 5: 16, 6: 27, 7: 56, 8: 240},
    "roots": {3: 8, 4: 20, 5: 40, 6: 72, 7: 126, 8: 240},
    "rulings": {3: 3, 4: 5, 5: 10, 6: 27, 7: 126, 8: 2160},
    "exceptional": {3: 2, 4: 5, 5: 16, 6: 72, 7: 576, 8: 17520},
}


@dataclass
class Check:
    scope: str
    name: str
    passed: bool
    detail: str = ""
    invariant: bool = False

    def to_json(self) -> dict:
        return asdict(self)


Outcome = tuple[bool, str]


class Runner:
    def __init__(self, progress: Callable[[str], None] | None = None):
        self.checks: list[Check] = []
        self.progress = progress

    def run(self, scope: str, name: str, fn: Callable[[], Outcome]) -> Check:
        if self.progress:
            self.progress(f"[{scope}] {name}")
        try:
            ok, detail = fn()
            check = Check(scope, name, bool(ok), detail)
        except InvariantError as exc:
            check = Check(scope, name, False, str(exc), invariant=True)
        except DomainError as exc:
            check = Check(scope, name, False, f"domain error: {exc}")
        self.checks.append(check)
        return check

    def equal(self, scope: str, name: str, expected: int, fn: Callable[[], int]) -> Check:
        def go() -> Outcome:
            got = fn()
            return got == expected, f"expected {expected}, computed {got}"
        return self.run(scope, name, go)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def _ranks(r: int | None) -> tuple[int, ...]:
    return RANKS if r is None else (r,)


# -- tables -------------------------------------------------------------------------

def table_checks(run: Runner, r: int | None = None, threads: int = 1) -> None:
    for rank in _ranks(r):
        for kind, counts in CATALOG_COUNTS.items():
            run.equal("tables", f"catalog {kind} r={rank}", counts[rank],
                      lambda k=kind, rk=rank: len(cat.enumerate_kind(k, rk)))
        if rank >= 4:
            report = polytope.verify_subpolytope_table(rank, threads)
            for row in report.rows:
                run.run("tables", f"subpolytope r={rank} {row.polytope}",
                        lambda row=row: (row.passed, f"expected {row.expected}, computed {row.computed}"))
        for (rr, n), exp in sorted(inscribed.CENTER_TABLE_LOW.items()):
            if rr == rank:
                run.equal("tables", f"centers A{n}^{rr}(1)", exp,
                          lambda rr=rr, n=n: len(inscribed.centers(rr, n, 1, threads)))
        for (rr, n, b), exp in sorted(inscribed.CENTER_TABLE_HIGHER.items()):
            if rr == rank:
                run.equal("tables", f"centers A{n}^{rr}({b})", exp,
                          lambda rr=rr, n=n, b=b: len(inscribed.centers(rr, n, b, threads)))
        if rank == 8:
            for n, exp in sorted(inscribed.CENTER_TABLE_R8.items()):
                run.equal("tables", f"centers A{n}^8(1)", exp,
                          lambda n=n: len(inscribed.centers(8, n, 1, threads)))
            for norm, exp in sorted(lattice.NORM_COUNTS.items()):
                run.run("tables", f"norm {norm} vectors orthogonal to K", lambda norm=norm, exp=exp: _norm(norm, exp))


def _norm(norm: int, exp: int) -> Outcome:
    routes = (lattice.count_orthogonal_vectors(norm), lattice.count_e8_vectors(norm),
              lattice.e8_theta_coefficient(norm))
    return all(x == exp for x in routes), f"expected {exp}; picard, e8, theta = {routes}"


# -- theorems -------------------------------------------------------------------

def theorem_checks(run: Runner, r: int | None = None, sample: int = 200, seed: int = 42) -> None:
    for rank in _ranks(r):
        _catalog_theorems(run, rank)
        if rank == 7:
            run.run("theorems", "A1^7(2): pairs (l, G(l)) with center -K",
                    lambda: _report(inscribed.higher_degree_reductions(7, 1, 2)))
            run.run("theorems", "3-cube on S_7", lambda: _cube3(7, sample, seed))
        if rank == 8:
            _r8_theorems(run, sample, seed)
        run.equal("theorems", f"maximal cube dimension r={rank}", cubes_expected(rank),
                  lambda rk=rank: cubes.find_cube(rk).dimension)


def cubes_expected(r: int) -> int:
    return {3: 2, 4: 2, 5: 2, 6: 2, 7: 3, 8: 4}[r]


def _report(rep) -> Outcome:
    bad = [k for k, v in rep.checks.items() if not v]
    return rep.passed, f"{rep.simplexes} simplexes, {rep.centers} centers" + (f"; failing: {bad}" if bad else "")


def _catalog_theorems(run: Runner, r: int) -> None:
    for kind in cat.KIND_NAMES:
        C = cat.enumerate_kind(kind, r)

        def closure(C=C) -> Outcome:
            bad = sum(1 for d in simple_roots(r) for D in C if reflect(d, D) not in C)
            return bad == 0, f"{bad} reflections leave the catalog"
        run.run("theorems", f"Weyl closure {kind} r={r}", closure)
        if r <= 7 or kind in ("lines", "exceptional"):
            k = cat.KIND_NAMES[kind]

            def oracle(C=C, k=k) -> Outcome:
                scanned = sorted(cat.scan_classes(r, k.square, k.k_degree))
                return scanned == list(C.classes), f"orbit {len(C)}, scan {len(scanned)}"
            run.run("theorems", f"coefficient-scan oracle {kind} r={r}", oracle)

    def rulings() -> Outcome:
        sizes = {len(cat.ruling_vertices(f)) for f in cat.enumerate_rulings(r)}
        return sizes == {r - 1}, f"bipolar pairs per ruling: {sorted(sizes)}"
    run.run("theorems", f"ruling bipolar pairs r={r}", rulings)
    if 5 <= r <= 7:
        def incidence() -> Outcome:
            hist = polytope.facet_incidence(r)
            return all(a + b == 2 for a, b in hist), f"(simplex, crosspolytope) facets per ridge: {sorted(hist.items())}"
        run.run("theorems", f"every ridge lies in two facets r={r}", incidence)
    if r >= 4:
        def blow_down() -> Outcome:
            L = cat.enumerate_lines(r)
            Lm = cat.enumerate_lines(r - 1)
            bad = 0
            for i in range(len(L)):
                bd = cat.blow_down_basis(L[i])
                image = {bd.restrict(L[j]) for j in cliques.bits(L.adjacency(0)[i])}
                bad += image != set(Lm.classes)
            return bad == 0, f"{bad} lines whose vertex figure does not blow down onto L_{r - 1}"
        run.run("theorems", f"blow-down onto L_{r - 1}", blow_down)


def _r8_theorems(run: Runner, sample: int, seed: int) -> None:
    L = cat.enumerate_lines(8)

    def profile() -> Outcome:
        B = [L.index_of(cat.bertini(l)) for l in L]

        def bert(mask: int) -> int:
            return sum(1 << B[j] for j in cliques.bits(mask))
        bad = 0
        for i in range(240):
            n = [cat.neighborhood(L, i, k) for k in range(4)]
            sizes = tuple(cliques.popcount(x) for x in n)
            bad += sizes != (56, 126, 56, 1) or bert(n[0]) != n[2] or bert(n[1]) != n[1]
        return bad == 0, f"{bad} lines break the (1,56,126,56,1) profile or Bertini symmetry"
    run.run("theorems", "neighborhood profile and Bertini symmetry", profile)

    run.run("theorems", "K + l2 + l3 is a line for all 6720 pairs with l2.l3 = 2",
            lambda: (lambda bad: (not bad, f"{len(bad)} failing pairs"))(cat.theorem_k8_failures()))

    def split() -> Outcome:
        tags = [cat.classify_exceptional_system(D) for D in cat.enumerate_exceptional_systems(8)]
        roots = sum(isinstance(t, cat.RootOrbit) for t in tags)
        return (roots, len(tags) - roots) == (240, 17280), f"{roots} root shifts, {len(tags) - roots} skew 8-line shifts"
    run.run("theorems", "exceptional systems split into root and skew orbits", split)

    def skew_unique() -> Outcome:
        counts = [len(cat.skew_a_lines(8, a)) for a in range(1, 9)]
        return counts == [240, 6720, 60480, 241920, 483840, 483840, 207360, 17280], f"counts {counts}"
    run.run("theorems", "skew a-lines on S_8 have unique witnesses", skew_unique)

    def dichotomy() -> Outcome:
        reps = inscribed.center_representatives(8, 3, 1)
        tags = [inscribed.classify(inscribed.make_simplex(8, vs, 1)) for vs in reps.values()]
        corn = sum(isinstance(t, inscribed.Cornered) for t in tags)
        return len(reps) == 17520, f"{len(reps)} centers: {corn} cornered (root), {len(reps) - corn} uncornered (skew 8-line)"
    run.run("theorems", "cornered/uncornered dichotomy over all A3 centers", dichotomy)

    cornered = inscribed.sample_cornered_A3(max(sample, 1000), seed)

    def unique_corner() -> Outcome:
        for s in cornered:
            inscribed.cornering_line(s)
            inscribed.gieser_dual(s)
        return True, f"{len(cornered)} cornered A3 with a unique cornering line"
    run.run("theorems", "unique cornering line", unique_corner)

    def swap() -> Outcome:
        done = 0
        adj1 = L.adjacency(1)
        for s in cornered[:sample]:
            common = (1 << 240) - 1
            for v in s.vertices:
                common &= adj1[v]
            for l5 in list(cliques.bits(common))[:1]:
                inscribed.swap_breaks_cornering(s.vertices, l5)
                done += 1
        return done > 0, f"{done} swaps, all uncornered with would-be pairing -1/2"
    run.run("theorems", "swapping a fifth line breaks cornering", swap)

    def a4() -> Outcome:
        decs = [inscribed.decompose_A4_center(D) for D in sorted(inscribed.centers(8, 4, 1))]
        pairs = {d.pair for d in decs}
        ordered = {(i, j) for i in range(240) for j in cliques.bits(L.adjacency(1)[i])}
        return pairs == ordered and len(decs) == 30240, f"{len(decs)} centers, {len(pairs)} distinct pairs"
    run.run("theorems", "A4 centers biject with ordered 1-intersecting pairs", a4)

    def a4_sampled() -> Outcome:
        ss = inscribed.sample_simplexes(8, 4, 1, sample, seed)
        for s in ss:
            inscribed.check_A4(s)
        return True, f"{len(ss)} A4 simplexes"
    run.run("theorems", "A4 single cornered face is D - l_D", a4_sampled)

    uncornered = [s for s in inscribed.sample_simplexes(8, 3, 1, 2 * sample, seed)
                  if not isinstance(inscribed.classify(s), inscribed.Cornered)][:sample]

    def skew_edges() -> Outcome:
        for s in uncornered:
            se = inscribed.skew_edges_of_uncornered(s)
            back = inscribed.uncornered_from_skew_edges(se.seven_simplex, se.edges)
            if back != s:
                return False, f"{s.vertices} rebuilt as {back.vertices}"
            inscribed.extend_uncornered_A3_to_A4(s)
        fams = inscribed.skew_edge_families(inscribed.skew_edges_of_uncornered(uncornered[0]).seven_simplex)
        return len(fams) == 105, f"{len(uncornered)} round trips; {len(fams)} families per 7-simplex"
    run.run("theorems", "skew-edge round trip and A4 extension", skew_edges)

    def a5() -> Outcome:
        ss = inscribed.sample_simplexes(8, 5, 1, sample, seed)
        for s in ss:
            inscribed.a5_structure(s)
        return True, f"{len(ss)} A5 simplexes with three cornered faces"
    run.run("theorems", "A5 cornered faces and cornering-line sum", a5)

    def a6() -> Outcome:
        ss = inscribed.sample_simplexes(8, 6, 1, sample, seed)
        for s in ss:
            fano = inscribed.fano_structure(s)
            rep = steiner.verify_fano_steiner(fano.lines, fano.blocks)
            if not rep.passed:
                return False, f"{s.vertices}: {rep.counterexample}"
            inscribed.extend_fano_to_A7(s, fano.blocks[0])
        return True, f"{len(ss)} A6 simplexes with Fano structure"
    run.run("theorems", "A6 Fano structure", a6)

    def a7_centers() -> Outcome:
        cs = sorted(inscribed.centers(8, 7, 1))
        for D in cs:
            f, pairs = inscribed.decompose_A7_center(D)
            if len(pairs) != 7:
                return False, f"{D}: {len(pairs)} bipolar pairs"
        return len(cs) == 2160, f"{len(cs)} centers, each D/2 + 2K a ruling with 7 bipolar pairs"
    run.run("theorems", "A7 centers are twice a ruling minus 4K", a7_centers)

    def a7() -> Outcome:
        ss = inscribed.sample_simplexes(8, 7, 1, sample, seed)
        for s in ss:
            inscribed.a7_structure(s)
        return True, f"{len(ss)} A7 simplexes"
    run.run("theorems", "A7 complementary cornered faces", a7)

    def four_cube() -> Outcome:
        for s in cornered[:sample]:
            fc = cubes.build_4cube(s)
            if len(fc.cube.vertices) != 16 or len(fc.mixed_faces) != 6:
                return False, f"{s.vertices}: malformed 4-cube"
        return True, f"{min(sample, len(cornered))} 4-cubes"
    run.run("theorems", "4-cube from cornered A3", four_cube)

    def obstruction() -> Outcome:
        for s in uncornered:
            ob = cubes.check_4cube_obstruction(s)
            if ob.facets_uncornered != 16 or ob.half_center_integral:
                return False, f"{s.vertices}: obstruction fails"
        return True, f"{len(uncornered)} uncornered A3"
    run.run("theorems", "uncornered A3 admit no 4-cube", obstruction)

    def crosspolytopes() -> Outcome:
        n = 0
        for m in range(2, 9):
            for s in inscribed.sample_simplexes(8, m - 1, 1, 20, seed):
                cubes.inscribed_crosspolytope(s)
                n += 1
        return True, f"{n} crosspolytopes with center -2K"
    run.run("theorems", "Bertini crosspolytopes", crosspolytopes)

    run.run("theorems", "3-cube on S_8", lambda: _cube3(8, sample, seed))
    for key in sorted(inscribed.CENTER_TABLE_HIGHER):
        if key[0] == 8:
            run.run("theorems", "higher degree A{1}^{0}({2})".format(*key),
                    lambda key=key: _report(inscribed.higher_degree_reductions(*key)))

    def a6_shell() -> Outcome:
        shifted = {lattice.shifted_center(D) for D in inscribed.centers(8, 6, 1)}
        ok = all(lattice.in_norm_shell(x, 14) for x in shifted)
        return ok and len(shifted) <= lattice.NORM_COUNTS[14], f"{len(shifted)} shifted A6 centers of norm 14"
    run.run("theorems", "A6 centers shift into the norm-14 shell", a6_shell)


def _cube3(r: int, sample: int, seed: int) -> Outcome:
    ss = inscribed.sample_simplexes(r, 2, 1, min(sample, 50), seed)
    for s in ss:
        cubes.build_3cube(r, s)
    return True, f"{len(ss)} 3-cubes"


# -- steiner ---------------------------------------------------------------------------

def steiner_checks(run: Runner, sample: int = 100, seed: int = 42) -> None:
    for name in steiner.STEINER_SPECS:
        sys_ = steiner.build_steiner(name)

        def design(s=sys_) -> Outcome:
            rep = steiner.verify_design(s)
            return rep.passed, rep.counterexample or f"{rep.blocks} blocks, {rep.determining_subsets} determining subsets"
        run.run("steiner", f"{name} design", design)
        run.run("steiner", f"{name} Weyl invariance", lambda s=sys_: (steiner.is_weyl_invariant(s), ""))
    run.equal("steiner", "SA2S7 block count", 28, lambda: len(steiner.build_steiner("SA2S7").blocks))

    def oracle() -> Outcome:
        brute = steiner.brute_force_triplets(6)
        built = list(steiner.build_steiner("SB3S6").blocks)
        return brute == built and len(brute) < steiner.classical_block_count(27), \
            f"{len(built)} blocks, oracle {len(brute)}, classical {steiner.classical_block_count(27)}"
    run.run("steiner", "SB3S6 matches brute force and is below 117", oracle)

    def roots() -> Outcome:
        rep = steiner.verify_design(steiner.root_steiner())
        return rep.passed, rep.counterexample or f"{rep.blocks} root triples summing to 0"
    run.run("steiner", "root triples on S_8", roots)

    def fano() -> Outcome:
        ok = steiner.verify_fano_steiner(range(7), inscribed.FANO_BLOCKS).passed
        bad = steiner.verify_fano_steiner(range(7), inscribed.FANO_BLOCKS[:6])
        return ok and not bad.passed, f"6-block subsystem: {bad.counterexample}"
    run.run("steiner", "Fano plane checker", fano)

    def sampled() -> Outcome:
        ss = inscribed.sample_simplexes(8, 6, 1, sample, seed)
        for s in ss:
            f = inscribed.fano_structure(s)
            rep = steiner.verify_fano_steiner(f.lines, f.blocks)
            if not rep.passed:
                return False, f"{s.vertices}: {rep.counterexample}"
        return True, f"{len(ss)} sampled Fano structures"
    run.run("steiner", "sampled A6 Fano structures", sampled)


def run_scopes(scopes: Iterable[str], r: int | None = None, sample: int = 200, seed: int = 42,
               threads: int = 1, progress: Callable[[str], None] | None = None) -> Runner:
    run = Runner(progress)
    for scope in scopes:
        if scope == "tables":
            table_checks(run, r, threads)
        elif scope == "theorems":
            theorem_checks(run, r, sample, seed)
        elif scope == "steiner":
            steiner_checks(run, min(sample, 100), seed)
        else:
            raise DomainError(f"unknown scope {scope!r}")
    return run
