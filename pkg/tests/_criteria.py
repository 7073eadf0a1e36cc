"""The ten acceptance checks, each returning (passed, detail).

Kept apart from the pytest module so that ``python3 tests/test_acceptance.py``
can print the same lines without pytest.
"""

from __future__ import annotations

import io
import itertools
import random
import time
from importlib import resources

from sympy import ZZ, Matrix
from sympy.matrices.normalforms import invariant_factors

from _oracles import SandwichOracle, finite_closure
from splitcalc import cli, gogfile, lattice
from splitcalc import polycyclic as pc
from splitcalc.families import (bs24_vertex_presentation, make_pn_splitting, make_theta)
from splitcalc.gog import (Abelian, Free, GraphOfGroups, Heis, InvalidInputError, RefinementData,
                           TriState, UnpresentableError, collapse, equivalent,
                           fundamental_presentation, is_minimal, is_reduced, make_edge, refine)
from splitcalc.gog.collapse import check_spanning_tree
from splitcalc.invariants import abelianization, distinguish, standard_targets

CORPUS = resources.files("splitcalc") / "corpus"
Z = Abelian(lattice.LatticeGroup.free(1))


def corpus_files():
    return sorted(p for p in CORPUS.iterdir() if p.name.endswith(".gog"))


# --- 1 ----------------------------------------------------------------------------


def criterion_1():
    t = time.perf_counter()
    bad = [n for n in range(1, 101) if make_theta(n).certificate != n]
    dt = time.perf_counter() - t
    return not bad and dt < 1.0, f"n=1..100 index==n, mismatches={bad[:5]}, {dt:.2f}s"


# --- 2 ----------------------------------------------------------------------------


def _umat(x, y, z):
    return ((1, x, z), (0, 1, y), (0, 0, 1))


def _mm(p, q):
    return tuple(tuple(sum(p[i][k] * q[k][j] for k in range(3)) for j in range(3)) for i in range(3))


def _minv(p):
    x, z, y = p[0][1], p[0][2], p[1][2]
    return _umat(-x, -y, x * y - z)


def commutator_closure_index(n: int) -> int:
    """[Z(H_n) : [H_n, H_n]] from matrices: gcd of commutator corner entries
    over a box of H_n, against the centre found by commuting with generators."""
    from math import gcd
    elems = [_umat(n * i, n * j, k) for i in range(-2, 3) for j in range(-2, 3) for k in range(-2, 3)]
    derived = 0
    for p in elems:
        for q in elems:
            c = _mm(_mm(p, q), _mm(_minv(p), _minv(q)))
            assert c[0][1] == 0 and c[1][2] == 0
            derived = gcd(derived, c[0][2])
    gens = [_umat(n, 0, 0), _umat(0, n, 0), _umat(0, 0, 1)]
    centre = 0
    for p in elems:
        if all(_mm(p, g) == _mm(g, p) for g in gens):
            assert p[0][1] == 0 and p[1][2] == 0
            centre = gcd(centre, p[0][2])
    return derived // centre


def criterion_2():
    t = time.perf_counter()
    vals = [pc.hn_center_derived_index(n) for n in range(1, 51)]
    increasing = all(a < b for a, b in zip(vals, vals[1:]))
    oracle = [commutator_closure_index(n) for n in range(1, 6)]
    dt = time.perf_counter() - t
    ok = increasing and oracle == vals[:5] and dt < 30
    return ok, f"increasing={increasing}, oracle n=1..5 {oracle} vs {vals[:5]}, {dt:.2f}s"


# --- 3 ----------------------------------------------------------------------------


def criterion_3():
    t = time.perf_counter()
    certs = [make_pn_splitting(n).certificate for n in range(1, 21)]
    distinct = len(set(certs)) == len(certs)
    mismatched = []
    for n, c in enumerate(certs, 1):
        diag = [abs(int(d)) for d in invariant_factors(Matrix([[2 ** n, 0, 0]]), domain=ZZ) if d != 0]
        if (c.free_rank, c.torsion_factors) != (3 - len(diag), tuple(d for d in diag if d != 1)):
            mismatched.append(n)
    dt = time.perf_counter() - t
    return distinct and not mismatched and dt < 1.0, \
        f"distinct={distinct}, SNF mismatches={mismatched}, {dt:.2f}s"


# --- 4 ----------------------------------------------------------------------------

# (n, n') -> (target, |Hom(P_n, Q)|, |Hom(P_n', Q)|)
BS24_GOLDENS = {
    (1, 2): ("D8", 40, 48),
    (1, 3): ("D8", 40, 48),
    (1, 4): ("D8", 40, 48),
    (2, 3): ("D16", 128, 160),
    (2, 4): ("D16", 128, 160),
    (3, 4): ("D32", 448, 576),
}


def criterion_4():
    t = time.perf_counter()
    targets = standard_targets(32)
    found = {}
    for n, m in itertools.combinations(range(1, 5), 2):
        d = distinguish(bs24_vertex_presentation(n), bs24_vertex_presentation(m), targets)
        found[(n, m)] = None if d is None or d.target is None else (d.target.label, *d.values)
    dt = time.perf_counter() - t
    small = all(v is not None and int(v[0][1:]) <= 32 for v in found.values())
    return found == BS24_GOLDENS and small and dt < 60, f"witnesses {found}, {dt:.2f}s"


# --- 5 ----------------------------------------------------------------------------


def _box_generator_sets(free, mods, radius, k):
    vs = [tuple(v) for v in itertools.product(*([range(-radius, radius + 1)] * free
                                                + [range(m) for m in mods]))]
    for j in range(k + 1):
        yield from itertools.combinations_with_replacement(vs, j)


SANDWICH_CASES = [
    # (free rank, torsion, generators of A, generator families)
    (2, (), [(2, 0)], [(4, 3, False)]),
    (2, (), [], [(2, 3, False)]),
    (2, (), [(2, 0), (0, 2)], [(2, 3, False)]),
    (2, (), [(6, 0)], [(3, 2, False), (3, 2, True)]),
    (2, (), [(1, 1)], [(2, 3, False)]),
    (2, (4,), [(2, 0, 0)], [(1, 3, False), (2, 2, True)]),
    (2, (4,), [(0, 0, 2)], [(1, 3, False), (2, 2, True)]),
]


def sandwich_case(free, mods, a, families):
    """(implementation count, brute-force count) for one (A, P)."""
    p = lattice.LatticeGroup.from_invariants(free, mods)
    reps = {}
    for radius, k, with_a in families:
        for c in _box_generator_sets(free, mods, radius, k):
            gens = tuple(a) + c if with_a else c
            reps.setdefault(lattice.canonicalize(gens, p).generator_basis, gens)
    oracle = SandwichOracle(a, free, mods, radius=6)
    ours = lattice.count_sandwich_classes(lattice.canonicalize(a, p), p).class_count
    return ours, oracle.classes(list(reps.values()))


def criterion_5():
    t = time.perf_counter()
    rows = []
    for free, mods, a, fam in SANDWICH_CASES:
        ours, brute = sandwich_case(free, mods, a, fam)
        rows.append((a, mods, ours, brute))
    dt = time.perf_counter() - t
    headline = rows[0][2] == rows[0][3] == 4
    ok = headline and all(o == b for _, _, o, b in rows) and dt < 10
    text = "; ".join(f"A={a}{'+Z/' + str(m[0]) if m else ''}: {o} vs {b}" for a, m, o, b in rows)
    return ok, f"{text}, {dt:.2f}s"


# --- 6 ----------------------------------------------------------------------------


def _ab(k):
    return Abelian(lattice.LatticeGroup.free(k))


def _cyc(n):
    return Abelian(lattice.LatticeGroup.from_invariants(0, (n,)))


HEIS = Heis(pc.HeisSubgroupDesc.full())
H2 = Heis(pc.HeisSubgroupDesc.hn(2))
CENTRE = Heis(pc.HeisSubgroupDesc.center())


def one_edge_corpus():
    """(name, graph, expected is_minimal) with the expectation written down
    from C != A, B (amalgams) and 'always' (HNN loops)."""
    z, z2, z3 = _ab(1), _ab(2), _ab(3)
    cases = []

    def amalgam(name, c, a, b, fa, fb, expected):
        e = make_edge("e", "A", "B", c, a, b, fa, fb)
        cases.append((name, GraphOfGroups((("A", a), ("B", b)), (e,)), expected))

    def hnn(name, c, a, f1, f2):
        e = make_edge("e", "A", "A", c, a, a, f1, f2)
        cases.append((name, GraphOfGroups((("A", a),), (e,)), True))

    amalgam("Z *_2Z Z", z, z, z, [(2,)], [(2,)], True)
    amalgam("Z *_Z Z (both onto)", z, z, z, [(1,)], [(-1,)], False)
    amalgam("Z *_Z Z (one onto)", z, z, z, [(1,)], [(3,)], False)
    amalgam("Z^2 *_Z Z", z, z2, z, [(1, 0)], [(2,)], True)
    amalgam("Z^2 *_Z Z (onto Z)", z, z2, z, [(0, 1)], [(1,)], False)
    amalgam("Z^2 *_Z^2 Z^2 index 2", z2, z2, z2, [(1, 0), (0, 2)], [(1, 0), (0, 1)], False)
    amalgam("Z^2 *_Z^2 Z^3", z2, z2, z3, [(2, 0), (0, 1)], [(1, 0, 0), (0, 1, 0)], True)
    amalgam("Z^2 *_Z^2 Z^2 unimodular", z2, z2, z2, [(2, 1), (1, 1)], [(3, 0), (0, 1)], False)
    amalgam("Z/6 *_Z/2 Z/4", _cyc(2), _cyc(6), _cyc(4), [(3,)], [(2,)], True)
    amalgam("Z/6 *_Z/6 Z/12", _cyc(6), _cyc(6), _cyc(12), [(1,)], [(2,)], False)
    amalgam("H *_Z(H) Z", CENTRE, HEIS, z, [pc.C], [(1,)], False)
    amalgam("H *_Z(H) Z^2", CENTRE, HEIS, z2, [pc.C], [(1, 0)], True)
    amalgam("H *_H2 H", H2, HEIS, HEIS, H2.generators(), H2.generators(), True)
    amalgam("H *_H2 H2", H2, HEIS, H2, H2.generators(), H2.generators(), False)
    amalgam("F2 *_Z Z (x1)", z, Free(2), z, [(1,)], [(2,)], True)
    amalgam("F1 *_Z Z", z, Free(1), z, [(1,)], [(3,)], False)
    hnn("Z *_Z (BS(1,2))", z, z, [(1,)], [(2,)])
    hnn("Z *_Z (identity)", z, z, [(1,)], [(1,)])
    hnn("Z^2 *_Z^2", z2, z2, [(1, 0), (0, 1)], [(1, 1), (0, 1)])
    hnn("H *_Z", z, HEIS, [pc.B], [pc.C])
    return cases


def criterion_6():
    cases = one_edge_corpus()
    wrong = [name for name, g, exp in cases
             if is_minimal(g) is not (TriState.YES if exp else TriState.NO)]
    return len(cases) == 20 and not wrong, f"{len(cases)} cases, mismatches={wrong}"


# --- 7 ----------------------------------------------------------------------------


def random_unimodular(rng, k):
    m = [[int(i == j) for j in range(k)] for i in range(k)]
    for _ in range(3 * k):
        i, j = rng.sample(range(k), 2) if k > 1 else (0, 0)
        if i == j:
            m[i][i] = -m[i][i]
            continue
        c = rng.choice([-2, -1, 1, 2])
        for r in range(k):
            m[r][i] += c * m[r][j]
    return [tuple(m[r][c] for r in range(k)) for c in range(k)]  # columns


def _combo(cols, coeffs):
    return tuple(sum(a * c[i] for a, c in zip(coeffs, cols)) for i in range(len(cols[0])))


def _nonzero(rng, k, lo=-3, hi=3):
    while True:
        v = tuple(rng.randint(lo, hi) for _ in range(k))
        if any(v):
            return v


def _heis(rng, lo=-2, hi=2):
    return pc.HeisElement(rng.randint(lo, hi), rng.randint(lo, hi), rng.randint(lo, hi))


def _heis_nontrivial(rng):
    while True:
        h = _heis(rng)
        if not h.is_identity():
            return h


def _heis_auto(rng):
    (p, q), (r, s) = random_unimodular(rng, 2)
    a = pc.HeisElement(p, q, rng.randint(-2, 2))
    b = pc.HeisElement(r, s, rng.randint(-2, 2))
    return a, b, pc.heis_comm(a, b)


def _base_graph(rng, v_label, edge_image):
    """A vertex v with one to three edges: to a vertex w and/or loops."""
    w_label = rng.choice([Z, Free(1), Free(2)])
    w_gen = (1,)  # the generator, as a vector for Z and as a word for F_k
    edges = []
    for i in range(rng.randint(1, 3)):
        if i == 0 or rng.random() < 0.6:
            edges.append(make_edge(f"e{i}", "v", "w", Z, v_label, w_label, [edge_image()], [w_gen]))
        else:
            edges.append(make_edge(f"e{i}", "v", "v", Z, v_label, v_label, [edge_image()], [edge_image()]))
    verts = [("v", v_label)]
    if any(e.terminus == "w" for e in edges):
        verts.append(("w", w_label))
    return GraphOfGroups(tuple(verts), tuple(edges))


def refinement_case(seed: int):
    rng = random.Random(seed)
    kind = ("abelian-amalgam", "abelian-hnn", "heis-amalgam", "heis-hnn")[seed % 4]
    conj = {}
    if kind == "abelian-amalgam":
        k = rng.randint(1, 3)
        lab = _ab(k)
        g = _base_graph(rng, lab, lambda: _nonzero(rng, k))
        u = random_unimodular(rng, k)
        f_p = _nonzero(rng, k)
        eps = make_edge("eps", "s", "p", Z, Z, lab, [(1,)], [f_p])
        order = rng.choice([(("s", Z), ("p", lab)), (("p", lab), ("s", Z))])
        lam = GraphOfGroups(order, (eps,))
        marking = {"p": tuple(u), "s": (_combo(u, f_p),)}
        data = RefinementData("v", lam, marking)
    elif kind == "abelian-hnn":
        k = rng.randint(1, 2)
        lab = _ab(k + 1)
        u = random_unimodular(rng, k + 1)
        base = u[:k]
        g = _base_graph(rng, lab, lambda: _combo(base, _nonzero(rng, k)))
        zk = _ab(k)
        ident = [tuple(int(i == j) for j in range(k)) for i in range(k)]
        eps = make_edge("eps", "x", "x", zk, zk, zk, ident, ident)
        lam = GraphOfGroups((("x", zk),), (eps,))
        data = RefinementData("v", lam, {"x": tuple(base)}, u[k])
    elif kind == "heis-amalgam":
        g = _base_graph(rng, HEIS, lambda: _heis_nontrivial(rng))
        psi = _heis_auto(rng)
        h = _heis_nontrivial(rng)
        eps = make_edge("eps", "s", "p", Z, Z, HEIS, [(1,)], [h])
        lam = GraphOfGroups((("p", HEIS), ("s", Z)), (eps,))
        data = RefinementData("v", lam, {"p": psi, "s": (_eval(psi, HEIS.to_word(h)),)},
                              conjugators={(e.id, end): _heis(rng) for e, end in g.incident("v")})
        conj = data.conjugators
    else:
        g = _base_graph(rng, HEIS, lambda: pc.HeisElement(0, rng.randint(-2, 2), rng.choice([-1, 1, 3])))
        lam = GraphOfGroups((("x", _ab(2)),), (make_edge("eps", "x", "x", _ab(2), _ab(2), _ab(2),
                                                          [(1, 0), (0, 1)], [(1, 1), (0, 1)]),))
        k = _heis(rng)
        conj_k = (lambda x: x.conjugate_by(k))
        data = RefinementData("v", lam, {"x": (conj_k(pc.SDP_A), conj_k(pc.SDP_B))}, conj_k(pc.SDP_T),
                              conjugators={(e.id, end): _heis(rng) for e, end in g.incident("v")})
        conj = data.conjugators
    return kind, g, data, conj


def _eval(images, word):
    out = pc.IDENTITY
    for a in word:
        out = out * (images[a - 1] if a > 0 else images[-a - 1].inverse())
    return out


def refinement_round_trip(seed):
    kind, g, data, _ = refinement_case(seed)
    h = refine(g, data)
    new = [e.id for e in h.edges if e.id not in g.edge_ids]
    back = collapse(h, new)
    return kind, equivalent(back, g)


def criterion_7(count: int = 60):
    results = {}
    failures = []
    for seed in range(count):
        kind, state = refinement_round_trip(seed)
        results[kind] = results.get(kind, 0) + 1
        if state is not TriState.YES:
            failures.append((seed, kind, state))
    ok = count >= 50 and not failures
    return ok, f"{count} cases {results}, failures={failures[:5]}"


# --- 8 ----------------------------------------------------------------------------


def lattice_oracle_check(d1: int, d2: int):
    """Mismatches between the lattice module and enumeration in Z/d1 x Z/d2."""
    p = lattice.LatticeGroup(2, ((d1, 0), (0, d2)))
    elems = [(i, j) for i in range(d1) for j in range(d2)]
    by_set: dict[frozenset, list] = {}
    canon_of_set: dict[frozenset, object] = {}
    bad = []
    for k in (0, 1, 2):
        for gens in itertools.combinations(elems, k):
            s = finite_closure(gens, d1, d2)
            sub = lattice.canonicalize(gens, p)
            if s in canon_of_set and canon_of_set[s] != sub:
                bad.append(("canonical", gens))
            canon_of_set.setdefault(s, sub)
            by_set.setdefault(s, []).append(gens)
    if len(set(canon_of_set.values())) != len(canon_of_set):
        bad.append(("distinct sets share a canonical form", None))
    subs = list(canon_of_set.items())
    for s, sub in subs:
        for v in elems:
            if lattice.membership(v, sub) != (v in s):
                bad.append(("membership", v, sorted(s)))
    for s, sub in subs:
        for t, tsub in subs:
            if s <= t:
                if lattice.index(sub, tsub) != len(t) // len(s):
                    bad.append(("index", sorted(s), sorted(t)))
                e = {x for x in t if any(((k * x[0]) % d1, (k * x[1]) % d2) in s
                                         for k in range(1, len(t) + 1))}
                rc = lattice.root_closure(sub, tsub)
                if {v for v in elems if lattice.membership(v, rc)} != e:
                    bad.append(("root_closure", sorted(s), sorted(t)))
            else:
                try:
                    lattice.index(sub, tsub)
                    bad.append(("index accepted a non-subgroup", sorted(s), sorted(t)))
                except lattice.NotASubgroupError:
                    pass
    return len(subs), bad


def criterion_8():
    t = time.perf_counter()
    total, bad = 0, []
    for d1 in range(1, 7):
        for d2 in range(1, 7):
            n, b = lattice_oracle_check(d1, d2)
            total += n
            bad += b
    dt = time.perf_counter() - t
    return not bad and dt < 60, f"{total} subgroups over 36 groups, mismatches={bad[:3]}, {dt:.2f}s"


# --- 9 ----------------------------------------------------------------------------


def spanning_trees(g: GraphOfGroups):
    proper = [e.id for e in g.edges if not e.is_loop]
    for tree in itertools.combinations(proper, len(g.vertices) - 1):
        try:
            yield check_spanning_tree(g, tree)
        except InvalidInputError:
            continue


def criterion_9():
    checked, skipped, bad = [], [], []
    for path in corpus_files():
        doc = gogfile.parse(path.read_text(encoding="utf-8"))
        if not doc.vertices:
            continue
        g = gogfile.to_graph(doc)
        if len(g.edges) > 5:
            continue
        try:
            values = {str(abelianization(fundamental_presentation(g, t))) for t in spanning_trees(g)}
        except UnpresentableError:
            skipped.append(path.name)
            continue
        checked.append(path.name)
        if len(values) != 1:
            bad.append((path.name, values))
    return not bad and checked, f"{len(checked)} graphs checked, opaque skipped={skipped}, bad={bad}"


# --- 10 ---------------------------------------------------------------------------


def run_cli(argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.main(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def c(name):
    return str(CORPUS / name)


# argv, expected exit code
CLI_GOLDENS = [
    (["validate", c("trivial_amalgam.gog")], 0),
    (["validate", c("theta0.gog")], 2),
    (["minimal", c("trivial_amalgam.gog")], 1),
    (["minimal", c("z_amalgam_2z.gog")], 0),
    (["minimal", c("bs12_hnn.gog")], 0),
    (["minimal", c("theta0.gog")], 0),
    (["reduced", c("cycle.gog")], 1),
    (["reduced", c("z_amalgam_2z.gog")], 0),
    (["reduced", c("subdivided.gog")], 1),
    (["reduced", c("finite_order_5.gog")], 0),
    (["redundant", c("subdivided.gog")], 0),
    (["redundant", c("z_amalgam_2z.gog")], 1),
    (["equivalent", c("theta0.gog"), c("theta0.gog")], 0),
    (["equivalent", c("z_amalgam_2z.gog"), c("trivial_amalgam.gog")], 1),
    (["equivalent", c("theta0.gog"), c("theta3.gog")], 0),
    (["validate", c("theta3.gog")], 2),
    (["invariants", c("theta3.gog")], 0),
    (["presentation", c("bs12_hnn.gog")], 0),
    (["presentation", c("theta0.gog")], 65),
    (["collapse", c("cycle.gog"), "--edges", "a"], 0),
    (["collapse", c("theta0.gog"), "--edges", "e1"], 65),
    (["collapse", c("theta0.gog"), "--edges", "e1", "--compose-opaque"], 0),
    (["refine", c("theta0.gog"), "--data", c("heis_refinement.gog")], 0),
    (["refine", c("cycle.gog"), "--data", c("trivial_refinement.gog")], 0),
    (["family", "theta", "--n", "5", "--invariants"], 0),
    (["family", "example-1-4"], 64),
    (["family", "bs24", "--n", "2", "--invariants"], 0),
    (["sandwich", "--ambient", "2", "--sub", "(2,0)"], 0),
    ([], 64),
    (["validate", c("no_such_file.gog")], 65),
]

PREDICATES = {"minimal": is_minimal, "reduced": is_reduced}
EXIT = {TriState.YES: 0, TriState.NO: 1, TriState.UNKNOWN: 2}


def criterion_10():
    unstable = []
    for path in corpus_files():
        text = path.read_text(encoding="utf-8")
        once = gogfile.serialize(gogfile.parse(text))
        twice = gogfile.serialize(gogfile.parse(once))
        if once != twice or gogfile.parse(once) != gogfile.parse(text):
            unstable.append(path.name)
    wrong = []
    for argv, expected in CLI_GOLDENS:
        code, out, _ = run_cli(argv)
        again = run_cli(argv)
        if code != expected or again[:2] != (code, out):
            wrong.append((argv[:2], code, expected))
        if argv and argv[0] in PREDICATES:
            g = gogfile.to_graph(gogfile.load(argv[1]))
            if EXIT[PREDICATES[argv[0]](g)] != code:
                wrong.append((argv[:2], "tristate", code))
    ok = not unstable and not wrong and len(CLI_GOLDENS) == 30
    return ok, (f"{len(corpus_files())} corpus files, unstable={unstable}; "
                f"{len(CLI_GOLDENS)} invocations, mismatches={wrong}")


CRITERIA = {i: globals()[f"criterion_{i}"] for i in range(1, 11)}
