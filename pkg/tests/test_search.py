import os
import random
import unittest

from gallai.coloring import ColorOutOfRangeError, TargetSpec, monochromatic, two_colored
from gallai.search import (
    NodeCounter,
    OddLengthError,
    SearchBudgetExceeded,
    find_mono_cycle,
    find_mono_matching,
    find_mono_path,
    has_target,
    target_through_edge,
    twin_masks,
)
from tests.oracles import (
    all_colorings,
    naive_cycle,
    naive_matching_size,
    naive_path,
    random_coloring,
)


class PathSearchTests(unittest.TestCase):
    def test_monochromatic_clique_hosts_hamiltonian_path(self) -> None:
        found = find_mono_path(monochromatic(7), 1, 7)
        self.assertIsNotNone(found)
        self.assertEqual(found.vertices, (0, 1, 2, 3, 4, 5, 6))

    def test_too_long_path(self) -> None:
        self.assertIsNone(find_mono_path(monochromatic(5), 1, 6))

    def test_single_vertex_path(self) -> None:
        found = find_mono_path(monochromatic(3), 1, 1)
        self.assertEqual(found.vertices, (0,))

    def test_star_has_no_p4(self) -> None:
        c = two_colored(6, [(0, v) for v in range(1, 6)])
        self.assertEqual(find_mono_path(c, 1, 3).vertices, (1, 0, 2))
        self.assertIsNone(find_mono_path(c, 1, 4))

    def test_unknown_color(self) -> None:
        with self.assertRaises(ColorOutOfRangeError):
            find_mono_path(monochromatic(3), 2, 2)

    def test_budget_exhaustion_raises(self) -> None:
        with self.assertRaises(SearchBudgetExceeded):
            find_mono_path(two_colored(9, [(0, 1)]), 2, 9, budget=3)


class CycleSearchTests(unittest.TestCase):
    def test_clique_cycle(self) -> None:
        found = find_mono_cycle(monochromatic(10), 1, 10)
        self.assertEqual(found.vertices, tuple(range(10)))

    def test_nine_vertices_cannot_host_c10(self) -> None:
        self.assertIsNone(find_mono_cycle(monochromatic(9), 1, 10))

    def test_odd_length_rejected(self) -> None:
        with self.assertRaises(OddLengthError):
            find_mono_cycle(monochromatic(5), 1, 5)

    def test_complete_bipartite_cycle(self) -> None:
        # K_{3,3} in color 1 on {0,1,2} x {3,4,5}.
        c = two_colored(6, [(u, v) for u in range(3) for v in range(3, 6)])
        self.assertEqual(find_mono_cycle(c, 1, 6).vertices, (0, 3, 1, 4, 2, 5))
        self.assertIsNone(find_mono_cycle(c, 2, 4))


class MatchingSearchTests(unittest.TestCase):
    def test_perfect_matching(self) -> None:
        found = find_mono_matching(monochromatic(6), 1, 3)
        self.assertIsNotNone(found)
        self.assertTrue(found.is_valid_in(monochromatic(6)))

    def test_star_matches_one_edge(self) -> None:
        c = two_colored(5, [(0, v) for v in range(1, 5)])
        self.assertIsNotNone(find_mono_matching(c, 1, 1))
        self.assertIsNone(find_mono_matching(c, 1, 2))


class TwinTests(unittest.TestCase):
    def test_clique_vertices_are_twins(self) -> None:
        adj = monochromatic(4).color_adjacency(1)
        twins = twin_masks(adj)
        self.assertEqual(twins[0], 0)
        self.assertEqual(twins[3], 0b0111)


class OracleAgreementTests(unittest.TestCase):
    """Fast searches return exactly what naive enumeration finds first."""

    def check(self, c) -> None:
        for color in range(1, c.k + 1):
            for m in range(2, c.n + 1):
                found = find_mono_path(c, color, m)
                self.assertEqual(found.vertices if found else None, naive_path(c, color, m))
            for length in range(4, c.n + 1, 2):
                found = find_mono_cycle(c, color, length)
                self.assertEqual(found.vertices if found else None, naive_cycle(c, color, length))
            best = naive_matching_size(c, color)
            for size in range(1, c.n // 2 + 1):
                found = find_mono_matching(c, color, size)
                self.assertEqual(found is not None, size <= best)
                if found is not None:
                    self.assertTrue(found.is_valid_in(c))

    def test_every_two_coloring_of_k5(self) -> None:
        for c in all_colorings(5, 2):
            self.check(c)

    def test_every_two_coloring_of_k6(self) -> None:
        for c in all_colorings(6, 2):
            self.check(c)

    def test_sampled_colorings_of_k7(self) -> None:
        rng = random.Random(8)
        for _ in range(20):
            self.check(random_coloring(7, 3, rng))

    def test_sampled_two_colorings_of_k8(self) -> None:
        rng = random.Random(88)
        for _ in range(25):
            self.check(random_coloring(8, 2, rng))

    @unittest.skipUnless(os.getenv("GALLAI_SLOW_TESTS"), "set GALLAI_SLOW_TESTS=1 for the long K_8 sweep")
    def test_ten_thousand_colorings_of_k8(self) -> None:
        rng = random.Random(10_000)
        for _ in range(10_000):
            self.check(random_coloring(8, 2, rng))


class ThroughEdgeTests(unittest.TestCase):
    def test_new_edge_closes_cycle(self) -> None:
        # Path 0-1-2-3 plus the new edge (0, 3) makes a C4 through it.
        c = two_colored(5, [(0, 1), (1, 2), (2, 3), (0, 3)])
        adj = c.color_adjacency(1)
        found = target_through_edge(adj, TargetSpec.cycle(4), 0, 3, NodeCounter())
        self.assertIsNotNone(found)
        self.assertEqual(set(found), {0, 1, 2, 3})

    def test_path_through_edge(self) -> None:
        c = two_colored(6, [(0, 1), (1, 2), (3, 4)])
        adj = c.color_adjacency(1)
        self.assertIsNone(target_through_edge(adj, TargetSpec.path(3), 3, 4, NodeCounter()))
        found = target_through_edge(adj, TargetSpec.path(3), 1, 2, NodeCounter())
        self.assertEqual(found, (0, 1, 2))


class HasTargetTests(unittest.TestCase):
    def test_dispatch(self) -> None:
        c = monochromatic(10)
        self.assertEqual(has_target(c, 1, TargetSpec.cycle(10)).target, TargetSpec.cycle(10))
        self.assertIsNotNone(has_target(c, 1, TargetSpec.path(10)))
        self.assertIsNotNone(has_target(c, 1, TargetSpec.matching(5)))
        self.assertIsNone(has_target(monochromatic(9), 1, TargetSpec.matching(5)))


if __name__ == "__main__":
    unittest.main()
