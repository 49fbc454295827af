import random

import pytest

from matcyc import (
    FieldMatrix,
    InvalidArgumentError,
    InvalidEdgeError,
    Matroid,
    combined_uniform,
    contraction_uniform,
    edge_minor,
    enumerate_cyclic_flats,
    field_necessary_check,
    find_uniform_minor,
    forbidden_uniform_ranks,
    hasse_violations,
    restriction_uniform,
    tutte_binary_test,
    uniform_parameters,
)
from conftest import random_matrix

E6 = (1, 2, 3, 4, 5, 6)


class TestEdgeMinor:
    @pytest.mark.parametrize("lower,upper,n,k", [
        ((), (1, 2, 3), 3, 2),
        ((1, 2, 3), E6, 3, 1),
        ((), (5, 6), 2, 1),
    ])
    def test_demo_edges(self, demo_matroid, lower, upper, n, k):
        w = edge_minor(demo_matroid, lower, upper)
        assert (w.n, w.k) == (n, k)
        assert w.restrict_to == upper and w.contract_by == lower
        assert w.certificate == "edge"

    def test_non_covering_pair(self, demo_matroid):
        with pytest.raises(InvalidEdgeError):
            edge_minor(demo_matroid, (5, 6), E6)  # comparable but not covering
        with pytest.raises(InvalidEdgeError):
            edge_minor(demo_matroid, (1, 2), (1, 2, 3))  # not even a node


class TestHasseViolations:
    def test_demo_42_empty(self, demo_matroid):
        assert hasse_violations(demo_matroid, 4, 2) == ()

    def test_demo_32(self, demo_matroid):
        edges = hasse_violations(demo_matroid, 3, 2)
        assert [(e.lower.elements, e.upper.elements) for e in edges] == [((), (1, 2, 3))]
        # ... and the brute-force oracle agrees there is such a minor
        assert find_uniform_minor(demo_matroid, 3, 2) is not None

    def test_uniform(self):
        edges = hasse_violations(Matroid.uniform(4, 2), 4, 2)
        assert [(e.lower.elements, e.upper.elements) for e in edges] == [((), (1, 2, 3, 4))]


class TestRestrictionCriterion:
    def test_demo_u43(self, demo_matroid):
        w = restriction_uniform(demo_matroid, (1, 2, 4, 5))
        assert w is not None and (w.n, w.k) == (4, 3)
        assert w.certificate == "restriction"

    def test_basis_branch(self, demo_matroid):
        w = restriction_uniform(demo_matroid, (1, 2, 4))
        assert w is not None and (w.n, w.k) == (3, 3)

    def test_rejects(self, demo_matroid):
        assert restriction_uniform(demo_matroid, (3, 4, 5, 6)) is None

    def test_u32(self, demo_matroid):
        w = restriction_uniform(demo_matroid, (1, 2, 3))
        assert w is not None and (w.n, w.k) == (3, 2)


class TestContractionCriterion:
    def test_uniform_contract(self):
        w = contraction_uniform(Matroid.uniform(6, 3), (1,))
        assert w is not None and (w.n, w.k) == (5, 2)
        assert w.certificate == "contraction"

    def test_demo_rejects(self, demo_matroid):
        assert contraction_uniform(demo_matroid, (4,)) is None
        assert contraction_uniform(demo_matroid, (5,)) is None

    def test_spanning_branch(self, demo_matroid):
        w = contraction_uniform(demo_matroid, (1, 2, 4))
        assert w is not None and (w.n, w.k) == (3, 0)

    def test_duality_consistency(self):
        rng = random.Random(99)
        for _ in range(8):
            m = Matroid.from_matrix(random_matrix(rng, 2, 6, 3))
            dual = m.dual()
            for mask in range(1 << 6):
                x = tuple(i + 1 for i in range(6) if mask >> i & 1)
                co = tuple(i + 1 for i in range(6) if not mask >> i & 1)
                wc = contraction_uniform(m, x)
                wr = restriction_uniform(dual, co)
                assert (wc is None) == (wr is None)
                if wc is not None:
                    assert (wr.n, wr.k) == (wc.n, wc.n - wc.k)


class TestCombinedCriterion:
    def test_demo_examples(self, demo_matroid):
        w = combined_uniform(demo_matroid, (1,), (1, 2, 4, 5))
        assert w is not None and (w.n, w.k) == (3, 2)
        assert w.certificate == "combined"
        w = combined_uniform(demo_matroid, (), (1, 2, 4, 5))
        assert w is not None and (w.n, w.k) == (4, 3)
        assert combined_uniform(demo_matroid, (4,), E6) is None

    def test_agrees_with_contraction(self, demo_matroid):
        for mask in range(1, 1 << 6):
            x = tuple(i + 1 for i in range(6) if mask >> i & 1)
            wc = contraction_uniform(demo_matroid, x)
            wb = combined_uniform(demo_matroid, x, E6)
            assert (wc is None) == (wb is None)
            if wc is not None:
                assert (wb.n, wb.k) == (wc.n, wc.k)


class TestTutte:
    def test_demo_binary(self, demo_matroid):
        assert tutte_binary_test(demo_matroid) == (True, None)

    def test_u42(self):
        ok, w = tutte_binary_test(Matroid.uniform(4, 2))
        assert not ok
        assert w.restrict_to == (1, 2, 3, 4) and w.contract_by == ()

    def test_u63_not_binary(self):
        ok, w = tutte_binary_test(Matroid.uniform(6, 3))
        assert not ok
        assert uniform_parameters(w.minor_of(Matroid.uniform(6, 3))) == (4, 2)

    def test_gf3_matrix_needing_bruteforce(self):
        # GF(3) four points on a line: U(4,2)-isomorphic, caught by the scan
        m = Matroid.from_matrix(FieldMatrix(3, ((1, 0, 1, 1), (0, 1, 1, 2))))
        ok, w = tutte_binary_test(m)
        assert not ok and (w.n, w.k) == (4, 2)


class TestFieldCheck:
    def test_forbidden_ranks(self):
        assert forbidden_uniform_ranks(2) == (2,)
        assert forbidden_uniform_ranks(3) == (2, 3)
        assert forbidden_uniform_ranks(5) == (2, 3, 4, 5)
        assert forbidden_uniform_ranks(7) == (2, 3, 4, 5, 6, 7)

    def test_u52_over_gf3(self):
        report = field_necessary_check(Matroid.uniform(5, 2), 3)
        assert not report.clean
        assert any((w.n, w.k) == (5, 2) for w in report.witnesses)

    def test_demo_clean_over_gf3(self, demo_matroid):
        report = field_necessary_check(demo_matroid, 3)
        assert report.clean
        assert report.checked == ((5, 2), (5, 3))

    def test_tutte_instance(self):
        report = field_necessary_check(Matroid.uniform(4, 2), 2)
        assert any((w.n, w.k) == (4, 2) for w in report.witnesses)

    def test_small_ground_skips(self):
        report = field_necessary_check(Matroid.uniform(3, 2), 5)
        assert report.skipped_trivially and report.clean and report.checked == ()

    def test_non_prime_q(self, demo_matroid):
        with pytest.raises(InvalidArgumentError):
            field_necessary_check(demo_matroid, 4)


class TestWitnessValidation:
    def test_witnesses_always_revalidate(self, demo_matroid):
        # every surfaced witness must pass the direct uniformity check
        for y_mask in range(1 << 6):
            y = tuple(i + 1 for i in range(6) if y_mask >> i & 1)
            w = restriction_uniform(demo_matroid, y)
            if w is not None:
                assert uniform_parameters(w.minor_of(demo_matroid)) == (w.n, w.k)
