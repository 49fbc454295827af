"""End-to-end acceptance suite.

Each criterion prints one PASS/FAIL line (visible with ``pytest -s``) and
asserts exact integer values plus its runtime budget.  Budgets are checked
on the best of a few repeats to damp scheduler noise.
"""

import contextlib
import random
import time

from matcyc import (
    FieldMatrix,
    Matroid,
    enumerate_cyclic_flats,
    find_uniform_minor,
    global_distance,
    is_nondegenerate,
    label_edges,
    locality_of_element,
    mds_check,
    min_distance_bruteforce,
    minor_cyclic_flats,
    punctured_params,
    restriction_uniform,
    contraction_uniform,
    combined_uniform,
    tutte_binary_test,
    uniform_parameters,
    verify_lrc,
)
from matcyc.lrc import binary_structure_check
from conftest import (
    DEMO_ROWS,
    SIMPLEX_LINES,
    SIMPLEX_ROWS,
    brute_restricted_distance,
    matrix_corpus,
    support_masks,
    vandermonde,
)

E6 = (1, 2, 3, 4, 5, 6)


@contextlib.contextmanager
def criterion(num, desc):
    try:
        yield
    except BaseException:
        print(f"ACCEPTANCE {num:2d}: FAIL - {desc}")
        raise
    print(f"ACCEPTANCE {num:2d}: PASS - {desc}")


def best_time(thunk, repeat=5):
    best = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        thunk()
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best


def fresh_demo():
    return Matroid.from_matrix(FieldMatrix(2, DEMO_ROWS))


def labels_of(mask, n):
    return tuple(i + 1 for i in range(n) if mask >> i & 1)


def test_criterion_01_demo_ranks():
    with criterion(1, "demo-matrix ranks, <1ms"):
        matrix = FieldMatrix(2, DEMO_ROWS)

        def work():
            m = Matroid.from_matrix(matrix)
            assert m.rank((1, 2, 3)) == 2
            assert m.rank((3, 4, 5)) == 2
            assert m.rank(E6) == 3
            assert m.rank(()) == 0

        work()  # warm
        assert best_time(work) < 1e-3


def test_criterion_02_minor_and_dual_ranks():
    with criterion(2, "minor/dual ranks, <1ms"):
        matrix = FieldMatrix(2, DEMO_ROWS)

        def work():
            m = Matroid.from_matrix(matrix)
            assert m.contract((1,)).rank((2, 3, 4)) == 2
            assert m.restrict((2, 3, 4, 5)).rank((2, 3, 4)) == 3
            assert m.dual().rank((2, 3, 4)) == 2

        work()
        assert best_time(work) < 1e-3


def test_criterion_03_lattice_reproduction():
    with criterion(3, "exact cyclic-flat lattice, <10ms"):
        expected_nodes = {(): 0, (5, 6): 1, (1, 2, 3): 2, (3, 4, 5, 6): 2, E6: 3}
        expected_edges = {
            ((), (5, 6)),
            ((), (1, 2, 3)),
            ((5, 6), (3, 4, 5, 6)),
            ((1, 2, 3), E6),
            ((3, 4, 5, 6), E6),
        }

        def work():
            lat = enumerate_cyclic_flats(fresh_demo())
            assert {n.elements: n.rank for n in lat.nodes} == expected_nodes
            assert {(e.lower.elements, e.upper.elements) for e in lat.edges} == expected_edges

        work()
        assert best_time(work) < 1e-2


def test_criterion_04_edge_labels():
    with criterion(4, "edge taxonomy labels, <10ms"):
        def work():
            lat = enumerate_cyclic_flats(fresh_demo())
            kinds = {
                (e.lower.elements, e.upper.elements): lab.kind
                for e, lab in label_edges(lat)
            }
            assert kinds == {
                ((), (1, 2, 3)): "rank",
                ((1, 2, 3), E6): "nullity",
                ((), (5, 6)): "elementary",
                ((5, 6), (3, 4, 5, 6)): "elementary",
                ((3, 4, 5, 6), E6): "elementary",
            }
            labels = dict(
                ((e.lower.elements, e.upper.elements), lab) for e, lab in label_edges(lat)
            )
            assert labels[((), (1, 2, 3))].drank == 2
            assert labels[((1, 2, 3), E6)].dnullity == 2

        work()
        assert best_time(work) < 1e-2


def test_criterion_05_code_parameters():
    with criterion(5, "(6,3,2) with r=2 at delta=2, <100ms"):
        def work():
            m = fresh_demo()
            lat = enumerate_cyclic_flats(m)
            assert global_distance(m, lat) == 2
            report = verify_lrc(m, 2, 2, lat)
            assert report.passed
            assert (report.n, report.k, report.d, report.achieved_r) == (6, 3, 2, 2)
            assert report.locality_of(5).r == 1
            assert report.locality_of(6).r == 1
            assert all(report.locality_of(i).r == 2 for i in (1, 2, 3, 4))

        work()
        assert best_time(work, repeat=3) < 0.1


def test_criterion_06_uniform_minor_examples():
    with criterion(6, "restriction criteria find U(3,2), U(4,3); no U(4,2), <1s"):
        def work():
            m = fresh_demo()
            lat = enumerate_cyclic_flats(m)
            w = restriction_uniform(m, (1, 2, 3), lat)
            assert w is not None and (w.n, w.k) == (3, 2)
            w = restriction_uniform(m, (1, 2, 4, 5), lat)
            assert w is not None and (w.n, w.k) == (4, 3)
            ok, witness = tutte_binary_test(m, lat)
            assert ok and witness is None
            assert find_uniform_minor(m, 4, 2) is None

        work()
        assert best_time(work, repeat=3) < 1.0


def test_criterion_07_criterion_oracle_equivalence():
    with criterion(7, "restriction/contraction/combined match direct tests, 300 matrices, <2min"):
        t0 = time.perf_counter()
        rng = random.Random(707)
        disagreements = 0
        combined_pairs = 0
        for matrix in matrix_corpus(seed=7070, count=300, nmin=3, nmax=8, kmax=4):
            m = Matroid.from_matrix(matrix)
            n = m.size
            lat = enumerate_cyclic_flats(m)
            for mask in range(1 << n):
                subset = labels_of(mask, n)
                w = restriction_uniform(m, subset, lat)
                direct = uniform_parameters(m.restrict(subset))
                if (w is None) != (direct is None) or (
                    w is not None and (w.n, w.k) != direct
                ):
                    disagreements += 1
                w = contraction_uniform(m, subset, lat)
                direct = uniform_parameters(m.contract(subset))
                if (w is None) != (direct is None) or (
                    w is not None and (w.n, w.k) != direct
                ):
                    disagreements += 1
            for _ in range(7):
                while True:
                    ymask = rng.randrange(1, 1 << n)
                    xmask = ymask & rng.randrange(1 << n)
                    if xmask != ymask:
                        break
                x, y = labels_of(xmask, n), labels_of(ymask, n)
                combined_pairs += 1
                w = combined_uniform(m, x, y, lat)
                direct = uniform_parameters(m.minor(y, x))
                if (w is None) != (direct is None) or (
                    w is not None and (w.n, w.k) != direct
                ):
                    disagreements += 1
        assert disagreements == 0
        assert combined_pairs >= 1800
        assert time.perf_counter() - t0 < 120


def test_criterion_08_minor_formula_suite():
    with criterion(8, "cyclic-flat minor formulas match direct enumeration, 500 specs, <2min"):
        t0 = time.perf_counter()
        rng = random.Random(808)
        specs = 0
        mismatches = 0
        matrices = matrix_corpus(seed=8080, count=125, nmin=3, nmax=8, kmax=4)
        for idx, matrix in enumerate(matrices):
            m = Matroid.from_matrix(matrix)
            n = m.size
            lat = enumerate_cyclic_flats(m)
            chosen = []
            # one spec per formula: restriction-only, contraction-only,
            # general, and the cyclic/flat interval shortcut
            ymask = rng.randrange(1 << n)
            chosen.append((ymask, 0))
            xmask = rng.randrange(1 << n)
            chosen.append(((1 << n) - 1, xmask))
            ymask = rng.randrange(1 << n)
            chosen.append((ymask, ymask & rng.randrange(1 << n)))
            seed_mask = rng.randrange(1 << n)
            xm = m.mask_of(m.cyc(labels_of(seed_mask, n)))
            ym = m.mask_of(m.closure(labels_of(xm | rng.randrange(1 << n), n)))
            chosen.append((ym, xm))
            for ymask, xmask in chosen:
                specs += 1
                y, x = labels_of(ymask, n), labels_of(xmask, n)
                got = dict(minor_cyclic_flats(m, y, x, lat))
                minor = m.minor(y, x)
                want = {
                    node.elements: node.rank
                    for node in enumerate_cyclic_flats(minor, max_ground=16).nodes
                }
                if got != want:
                    mismatches += 1
        assert specs == 500
        assert mismatches == 0
        assert time.perf_counter() - t0 < 120


def test_criterion_09_distance_formula_suite():
    with criterion(9, "lattice distance equals brute-force weight on all restrictions, <2min"):
        t0 = time.perf_counter()
        rng = random.Random(909)
        checked = 0
        for matrix in matrix_corpus(seed=9090, count=200, nmin=3, nmax=9, kmax=4):
            m = Matroid.from_matrix(matrix)
            n = m.size
            lat = enumerate_cyclic_flats(m)
            supports = support_masks(matrix)
            sampled = rng.sample(range(1, 1 << n), k=min(3, (1 << n) - 1))
            for mask in range(1, 1 << n):
                subset = labels_of(mask, n)
                if not is_nondegenerate(m, subset):
                    continue
                _, d = punctured_params(m, subset, lat)
                assert d == brute_restricted_distance(supports, mask)
                if mask in sampled:
                    assert d == min_distance_bruteforce(matrix, subset)
                checked += 1
        assert checked > 1000
        assert time.perf_counter() - t0 < 120


def test_criterion_10_simplex_structure():
    with criterion(10, "simplex code: d=4, line lattice, nullity top edges, LRC(2,2), <1s"):
        def work():
            matrix = FieldMatrix(2, SIMPLEX_ROWS)
            m = Matroid.from_matrix(matrix)
            lat = enumerate_cyclic_flats(m)
            assert global_distance(m, lat) == 4
            assert min_distance_bruteforce(matrix) == 4
            nodes = {n.elements: n.rank for n in lat.nodes}
            expected = {(): 0, tuple(range(1, 8)): 3}
            expected.update({line: 2 for line in SIMPLEX_LINES})
            assert nodes == expected
            for edge in lat.lower_covers(lat.top):
                assert edge.drank == 1 and edge.dnullity == 3
            report = verify_lrc(m, 2, 2, lat)
            assert report.passed
            assert all(len(loc.repair_set) == 3 for loc in report.localities)
            result = binary_structure_check(m, 2, 2, lat)
            assert result.applicable
            assert [c.passed for c in result.conditions] == [True, True, True]

        work()
        assert best_time(work, repeat=3) < 1.0


def test_criterion_11_duality_and_operator_identities():
    with criterion(11, "operator/duality identities, zero violations, <1min"):
        t0 = time.perf_counter()
        for matrix in matrix_corpus(seed=1111, count=40, nmin=3, nmax=8, kmax=4):
            m = Matroid.from_matrix(matrix)
            n = m.size
            ground = set(m.labels)
            dual = m.dual()
            dd = dual.dual()
            for mask in range(1 << n):
                y = labels_of(mask, n)
                cl = set(m.closure(y))
                cy = set(m.cyc(y))
                assert set(m.closure(m.cyc(y))) & set(y) == cy
                assert set(m.cyc(m.closure(y))) | set(y) == cl
                assert m.is_cyclic_flat(m.closure(m.cyc(y)))
                assert m.is_cyclic_flat(m.cyc(m.closure(y)))
                co = tuple(sorted(ground - set(y)))
                assert dual.rank(y) == len(y) - (m.full_rank - m.rank(co))
                assert dd.rank(y) == m.rank(y)
            primal = {node.elements for node in enumerate_cyclic_flats(m).nodes}
            flipped = {tuple(sorted(ground - set(z))) for z in primal}
            assert flipped == {node.elements for node in enumerate_cyclic_flats(dual).nodes}
        assert time.perf_counter() - t0 < 60


def test_criterion_12_mds_vandermonde():
    with criterion(12, "Vandermonde GF(7) codes are MDS with d=n-k+1, <5s"):
        t0 = time.perf_counter()
        for k, n in ((3, 5), (4, 6)):
            matrix = vandermonde(7, k, tuple(range(1, n + 1)))
            m = Matroid.from_matrix(matrix)
            assert mds_check(m)
            assert uniform_parameters(m) == (n, k)
            assert min_distance_bruteforce(matrix) == n - k + 1
            assert global_distance(m) == n - k + 1
        assert time.perf_counter() - t0 < 5
