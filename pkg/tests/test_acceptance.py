"""The twelve primary acceptance criteria.

Each test prints one PASS/FAIL line (also collected in the terminal summary)
and then asserts, so a failure shows both the line and the first violations.
"""

import inspect
import math
import random
import time
from itertools import product

import networkx as nx

from conftest import to_nx
from locald.algorithms import (
    CATALOG_VERIFIERS,
    always_accept,
    eqsize_verifier,
    fpf_trees_verifier,
    strawman_eqsize_verifier,
    strawman_tree_verifier,
    tree_t_decider,
    tree_verifier,
)
from locald.certificates import make_certificate
from locald.codes import cert_size
from locald.enumeration import canonical_form, enumerate_instances
from locald.gadgets import bound_fns, partition_gadget, psi, splice_cycle_from_path, transplant_attack, tree_pair_gadget
from locald.graphs import (
    Configuration,
    IdAssignment,
    ball,
    cycle_graph,
    has_cycle,
    path_graph,
    star_graph,
    views_isomorphic,
)
from locald.languages import EQSIZE, FPF, TREE, TREE_T, Language, member, negative_instances, positive_instances
from locald.lifts import check_lift, covering_blowup, fiber_stats, lift_verifier, quotient_cert_decoder, tree_cert_decoder
from locald.report import random_tree
from locald.runtime import IdStrategy, check_decides, check_verifies, run_decider, run_verifier
from locald.search import CertSpace, accepts_all

plain = Configuration.plain
AUTO = IdStrategy("auto", k=20, seed=0)


def _log2ceil(n):
    return math.ceil(math.log2(n)) if n > 1 else 0


def test_01_tree_t_decider_exact(criterion):
    start = time.time()
    failures, cases = [], 0
    for t in (1, 2):
        instances = [plain(g) for n in range(1, 8) for g in enumerate_instances("connectedGraphs", n)]
        report = check_decides(tree_t_decider(t), Language(TREE_T, t), instances, AUTO)
        cases += report.runs
        if not report.passed:
            failures.append((t, report.witness))
    elapsed = time.time() - start
    ok = not failures and elapsed < 300
    criterion(1, "Tree_t decider matches the oracle, t=1,2, n<=7", ok, f"{cases} runs, {elapsed:.1f}s")
    assert not failures, failures[:3]
    assert elapsed < 300


def test_02_hierarchy_witness(criterion):
    start = time.time()
    rows = []
    for t in (1, 2, 3):
        p, c = plain(path_graph(2 * t + 1)), plain(cycle_graph(2 * t + 2))
        same = views_isomorphic(
            ball(p, IdAssignment.identity(p.n), None, t, t),
            ball(c, IdAssignment.identity(c.n), None, 0, t),
        )
        dec = tree_t_decider(t)
        acc_p = run_decider(dec, p, IdAssignment.identity(p.n)).accepted
        acc_c = run_decider(dec, c, IdAssignment.identity(c.n)).accepted
        rows.append((t, same, acc_p, acc_c))
    elapsed = time.time() - start
    ok = all(same and acc_p and not acc_c for _, same, acc_p, acc_c in rows) and elapsed < 1
    criterion(2, "radius-t views of P_{2t+1} and C_{2t+2} agree; radius t+1 separates", ok, f"{elapsed:.3f}s")
    assert ok, rows


def test_03_tree_verifier(criterion):
    start = time.time()
    ver = tree_verifier()
    lang = Language(TREE)
    trees = [c for n in range(1, 8) for c in positive_instances(lang, n)]
    complete = check_verifies(ver, lang, trees, id_strategy=AUTO)
    non_trees = [c for n in range(1, 6) for c in negative_instances(lang, n)]
    sound = check_verifies(ver, lang, non_trees, soundness_space=_SizedSpace(CertSpace.distance_labels), id_strategy=AUTO)
    rng = random.Random(3)
    too_big = []
    sized = 0
    for n in range(1, 65):
        pool = [path_graph(n), star_graph(n - 1) if n > 1 else path_graph(1)]
        pool += list(enumerate_instances("trees", n)) if n <= 8 else [random_tree(n, rng) for _ in range(10)]
        for g in pool:
            sized += 1
            size = cert_size(make_certificate(lang, plain(g)))
            if size > _log2ceil(n) + 1:
                too_big.append((n, size))
    elapsed = time.time() - start
    ok = complete.passed and sound.passed and not too_big and elapsed < 600
    detail = f"{len(trees)} trees, {len(non_trees)} non-trees, {sized} sized, {elapsed:.1f}s"
    criterion(3, "Tree verifier complete, sound over distance labels <= n, size <= ceil(log2 n)+1", ok, detail)
    assert complete.passed, complete.witness
    assert sound.passed, sound.witness
    assert not too_big, too_big[:5]
    assert elapsed < 600


class _SizedSpace:
    """A certificate space whose bound is the instance size."""

    def __init__(self, make, *args):
        self.make, self.args = make, args

    def find_fooling(self, ver, config, ids):
        return self.make(config.n, *self.args).find_fooling(ver, config, ids)

    def describe(self):
        return f"{self.make.__name__}(n)"


def test_04_fpf_verifier(criterion):
    start = time.time()
    ver = fpf_trees_verifier()
    lang = Language(FPF)
    members = [c for n in range(1, 9) for c in positive_instances(lang, n)]
    complete = check_verifies(ver, lang, members, id_strategy=AUTO)
    negatives = [plain(g) for n in range(1, 8) for g in enumerate_instances("trees", n) if not member(lang, plain(g))]
    negatives += [plain(cycle_graph(n)) for n in range(3, 8)]
    space = _SizedSpace(CertSpace.structured_lift, "tree")
    sound = check_verifies(ver, lang, negatives, soundness_space=space, id_strategy=AUTO)
    too_big = [
        (c.n, cert_size(make_certificate(lang, c)))
        for c in members
        if cert_size(make_certificate(lang, c)) > 2 * c.n + _log2ceil(c.n) + 16
    ]
    elapsed = time.time() - start
    ok = complete.passed and sound.passed and not too_big and elapsed < 900
    detail = f"{len(members)} members, {len(negatives)} non-members, {elapsed:.1f}s"
    criterion(4, "FPF verifier complete n<=8, sound over lift space n<=7, size <= 2n+ceil(log2 n)+16", ok, detail)
    assert complete.passed, complete.witness
    assert sound.passed, sound.witness
    assert not too_big, too_big[:5]
    assert elapsed < 900


def test_05_eqsize_verifier(criterion):
    start = time.time()
    ver = eqsize_verifier()
    lang = Language(EQSIZE)
    members = [c for n in range(1, 7) for c in positive_instances(lang, n)]
    complete = check_verifies(ver, lang, members, id_strategy=AUTO)
    negatives = [c for n in range(1, 7) for c in negative_instances(lang, n)]
    sound = check_verifies(ver, lang, negatives, soundness_space=CertSpace.structured_lift(6), id_strategy=AUTO)
    too_big = [
        (c.n, cert_size(make_certificate(lang, c)))
        for c in members
        if cert_size(make_certificate(lang, c)) > c.n**2 + 8 * c.n + 32
    ]
    elapsed = time.time() - start
    ok = complete.passed and sound.passed and not too_big and elapsed < 1200
    detail = f"{len(members)} members, {len(negatives)} non-members, {elapsed:.1f}s"
    criterion(5, "EqSize verifier complete n<=6, sound over structuredLift(6), size <= n^2+8n+32", ok, detail)
    assert complete.passed, complete.witness
    assert sound.passed, sound.witness
    assert not too_big, too_big[:5]
    assert elapsed < 1200


def test_06_lift_properties(criterion):
    start = time.time()
    rng = random.Random(20240)
    bases = [g for n in range(1, 6) for g in enumerate_instances("connectedGraphs", n)]
    cyclic = [g for g in bases if has_cycle(g)]
    violations, built = [], 0
    while built < 500:
        l = rng.choice((1, 2, 3))
        g = rng.choice(bases if l == 1 else cyclic)
        base = Configuration(g, tuple(rng.choice(("0", "1", "", "01")) for _ in range(g.n)))
        out = covering_blowup(base, l, rng)
        if out is None:
            violations.append(("no connected cover", canonical_form(g), l))
            break
        config, lab = out
        built += 1
        if not check_lift(config, lab).accepted:
            violations.append(("rejected", canonical_form(g), l))
            continue
        st = fiber_stats(config, lab)
        scaled = {k: v * l for k, v in st.quotient_input_counts.items()}
        checks = {
            "equal fibers": set(st.fiber_sizes) == {l},
            "size": config.n == l * base.n,
            "inputs scale": st.input_counts == scaled,
            "degrees": st.degrees_constant,
            "inputs": st.inputs_constant,
            "cycle": l == 1 or has_cycle(config.graph),
        }
        bad = [k for k, v in checks.items() if not v]
        if bad:
            violations.append((bad, canonical_form(g), l))
    elapsed = time.time() - start
    ok = not violations and elapsed < 60
    criterion(6, "500 seeded covering blow-ups satisfy the fiber and cycle properties", ok, f"{built} lifts, {elapsed:.1f}s")
    assert not violations, violations[:5]
    assert elapsed < 60


def test_07_tree_rigidity(criterion):
    start = time.time()
    checkers = {
        "tree": lift_verifier(1, tree_cert_decoder, lambda q: True, "lift:tree"),
        "quotient": lift_verifier(1, quotient_cert_decoder, lambda q: True, "lift:quotient"),
    }
    decoders = {"tree": tree_cert_decoder, "quotient": quotient_cert_decoder}
    violations, accepted = [], 0
    for n in range(1, 8):
        for g in enumerate_instances("trees", n):
            config = plain(g)
            ids = IdAssignment.identity(n)
            for enc, ver in checkers.items():
                for certs in CertSpace.structured_lift(n, enc).vectors(config):
                    if not accepts_all(ver, config, ids, certs):
                        continue
                    accepted += 1
                    q, _ = decoders[enc](certs[0])
                    if q.n != n or canonical_form(q.graph) != canonical_form(g):
                        violations.append((canonical_form(g), enc, q.n))
    elapsed = time.time() - start
    ok = not violations and accepted > 0
    criterion(7, "every accepted lift of a tree n<=7 is a self-lift (l=1, quotient isomorphic)", ok, f"{accepted} accepted, {elapsed:.1f}s")
    assert not violations, violations[:5]


def test_08_splice_fooling(criterion):
    start = time.time()
    t = 1
    results = []
    for k in (0, 1):
        length = (4 * t + 4) * (2 ** ((k + 1) * (2 * t + 1)) + 1)
        ver = strawman_tree_verifier(k)
        path = plain(path_graph(length))
        certs = ver.prover(path)
        path_ok = accepts_all(ver, path, IdAssignment.identity(length), certs)
        res = splice_cycle_from_path(path, certs, t)
        fooled = (
            res is not None
            and has_cycle(res.graph.graph)
            and not member(Language(TREE), res.graph)
            and all(accepts_all(ver, res.graph, ids, res.certs) for ids in IdStrategy("sampled", k=5).assignments(res.graph.n))
        )
        results.append((k, length, path_ok, fooled))
    elapsed = time.time() - start
    ok = all(p and f for _, _, p, f in results) and elapsed < 60
    detail = ", ".join(f"k={k}: L={L}" for k, L, _, _ in results) + f", {elapsed:.1f}s"
    criterion(8, "splice turns an accepted path into an accepted cycle for k-bit strawmen", ok, detail)
    assert ok, results


def test_09_transplant_attack(criterion):
    start = time.time()
    pool = [g for n in range(1, 6) for g in enumerate_instances("connectedGraphs", n)]
    ver = strawman_eqsize_verifier(2)
    res = transplant_attack(ver, 1, pool, AUTO)
    good = (
        res is not None
        and not member(Language(EQSIZE), res.config)
        and all(accepts_all(ver, res.config, ids, res.certs) for ids in AUTO.assignments(res.config.n))
    )
    elapsed = time.time() - start
    ok = len(pool) >= 20 and good and elapsed < 120
    criterion(9, "transplant yields an accepted non-member against the 2-bit strawman", ok, f"pool {len(pool)}, {elapsed:.2f}s")
    assert ok


def _rooted(g, r):
    h = to_nx(g)
    nx.set_node_attributes(h, {v: v == r for v in h}, "root")
    return h


def test_10_gadget_iff(criterion):
    start = time.time()
    eq, fpf = Language(EQSIZE), Language(FPF)
    pool = [g for n in range(1, 6) for g in enumerate_instances("connectedGraphs", n)]
    bad, checked = [], 0
    for g1, g2 in product(pool, repeat=2):
        for v1, v2 in [(0, 0), (g1.n - 1, g2.n - 1)]:
            for i, j in product((0, 1), repeat=2):
                checked += 1
                got = member(eq, partition_gadget(g1, v1, i, g2, v2, j, 1))
                if got != (g1.n == g2.n and i != j):
                    bad.append(("partition", canonical_form(g1), canonical_form(g2), i, j))
    trees = [g for n in range(1, 7) for g in enumerate_instances("trees", n)]
    match = lambda a, b: a["root"] == b["root"]
    for t1, t2 in product(trees, repeat=2):
        if t1.n != t2.n:
            continue
        for v1 in range(t1.n):
            for v2 in range(t2.n):
                checked += 1
                want = nx.is_isomorphic(_rooted(t1, v1), _rooted(t2, v2), node_match=match)
                if member(fpf, tree_pair_gadget(t1, v1, t2, v2)) != want:
                    bad.append(("treepair", canonical_form(t1), v1, canonical_form(t2), v2))
    elapsed = time.time() - start
    ok = not bad
    criterion(10, "partition and tree-pair gadget memberships match their iff conditions", ok, f"{checked} gadgets, {elapsed:.1f}s")
    assert not bad, bad[:5]


def test_11_counting(criterion):
    counts = {n: sum(1 for _ in enumerate_instances("labeledTrees", n)) for n in range(2, 8)}
    f = bound_fns(1)
    checks = {
        "cayley": all(counts[n] == n ** (n - 2) == f.cayley(n) for n in counts),
        "psi even": all(psi(n) % 2 == 0 for n in range(1, 101)),
        "k": math.isclose(f.k(2**30), 2.0),
        "s": math.isclose(f.s(2**30), 4160.0),
    }
    ok = all(checks.values())
    criterion(11, "labeled trees n^(n-2), psi even, k=2 and s=4160 at n=2^30", ok, str(counts))
    assert ok, checks


def _catalog_instances(tag, n):
    lang = Language(tag)
    return list(positive_instances(lang, n)) + list(negative_instances(lang, n))


def test_12_id_independence(criterion):
    start = time.time()
    # generators take the configuration alone: no id parameter can reach them
    no_ids = all("ids" not in inspect.signature(f).parameters for f in (make_certificate,))
    violations, runs = [], 0
    rng = random.Random(12)
    deciders = [tree_t_decider(1), tree_t_decider(2), always_accept()]
    for n in range(1, 7):
        assignments = list(AUTO.assignments(n))
        shuffled = [IdAssignment.of(rng.sample(a.ids, n)) for a in assignments[:3]]
        assignments += shuffled
        for g in enumerate_instances("connectedGraphs", n):
            config = plain(g)
            for dec in deciders:
                verdicts = {run_decider(dec, config, ids).accepted for ids in assignments}
                runs += len(assignments)
                if len(verdicts) > 1:
                    violations.append((dec.name, canonical_form(g)))
        for name, (make, tag) in CATALOG_VERIFIERS.items():
            ver = make()
            lang = Language(tag)
            for config in _catalog_instances(tag, n):
                if member(lang, config):
                    certs = make_certificate(lang, config)
                    again = [make_certificate(lang, config) for _ in range(2)]
                    if any(c != certs for c in again):
                        violations.append(("generator", name, canonical_form(config.graph)))
                else:
                    certs = [rng.choice(("", "0", "1", "10", "11")) for _ in range(config.n)]
                verdicts = {run_verifier(ver, config, ids, certs).accepted for ids in assignments}
                runs += len(assignments)
                if len(verdicts) > 1:
                    violations.append((name, canonical_form(config.graph), config.inputs))
    elapsed = time.time() - start
    ok = no_ids and not violations
    criterion(12, "certificates and verdicts unchanged under id permutation, n<=6", ok, f"{runs} runs, {elapsed:.1f}s")
    assert no_ids
    assert not violations, violations[:5]
