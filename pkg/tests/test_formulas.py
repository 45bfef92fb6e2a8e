import unittest

from gallai.coloring import TargetSpec
from gallai.formulas import (
    Family,
    GRInstance,
    InvalidIVectorError,
    Provenance,
    RangeViolationError,
    TopKind,
    family_provenance,
    family_target,
    gr_all_paths,
    gr_all_paths_provenance,
    gr_k_family,
    gr_value,
    gr_value_provenance,
    iter_instances,
    r2_even_cycle,
    r3_even_cycle_lower_bound,
    r_path_cycle,
)


class GRValueTests(unittest.TestCase):
    def test_known_values(self) -> None:
        cases = [
            (5, (4, 4, 4), TopKind.EVEN_CYCLE, 18),
            (6, (5, 5), TopKind.EVEN_CYCLE, 17),
            (5, (0, 0, 0), TopKind.EVEN_CYCLE, 3),
            (5, (0, 0, 0), TopKind.ODD_PATH, 3),
            (5, (4,), TopKind.EVEN_CYCLE, 10),
            (6, (5, 5, 5), TopKind.EVEN_CYCLE, 22),
            (3, (1, 0), TopKind.ODD_PATH, 5),
        ]
        for n, i_vector, top, expected in cases:
            with self.subTest(n=n, i_vector=i_vector, top=top):
                self.assertEqual(gr_value(GRInstance(n, i_vector, top)), expected)

    def test_odd_path_top_adds_one(self) -> None:
        cycle = GRInstance(5, (4, 2), TopKind.EVEN_CYCLE)
        path = GRInstance(5, (4, 2), TopKind.ODD_PATH)
        self.assertEqual(path.n_star, 6)
        self.assertEqual(gr_value(path), gr_value(cycle) + 1)
        # The top kind only matters when i_1 = n - 1.
        self.assertEqual(gr_value(GRInstance(5, (3, 2), TopKind.ODD_PATH)), gr_value(GRInstance(5, (3, 2))))

    def test_single_color_equals_target_order(self) -> None:
        for n in range(3, 9):
            for top in TopKind:
                for i in range(n):
                    inst = GRInstance(n, (i,), top)
                    with self.subTest(n=n, i=i, top=top):
                        self.assertEqual(gr_value(inst), inst.target(1).order)

    def test_strictly_increasing_in_each_entry(self) -> None:
        for n in (5, 6):
            for k in range(1, 5):
                for inst in iter_instances(n, k):
                    value = gr_value(inst)
                    for j in range(k):
                        bumped = list(inst.i_vector)
                        bumped[j] += 1
                        if bumped[j] > n - 1 or (j and bumped[j] > bumped[j - 1]):
                            continue
                        self.assertGreater(gr_value(GRInstance(n, tuple(bumped))), value)

    def test_grid_matches_closed_form(self) -> None:
        checked = 0
        for n in (3, 4, 5, 6):
            for k in range(1, 7):
                for inst in iter_instances(n, k):
                    expected = 3 + min(inst.i_vector[0], n - 2) + sum(inst.i_vector)
                    self.assertEqual(gr_value(inst), expected)
                    checked += 1
        self.assertGreaterEqual(checked, 500)

    def test_top_row_matches_family(self) -> None:
        for n in range(3, 7):
            for k in range(1, 11):
                cycle = GRInstance(n, (n - 1,) * k, TopKind.EVEN_CYCLE)
                path = GRInstance(n, (n - 1,) * k, TopKind.ODD_PATH)
                self.assertEqual(gr_value(cycle), gr_k_family(n, k, Family.EVEN_CYCLE))
                self.assertEqual(gr_value(path), gr_k_family(n, k, Family.ODD_PATH))

    def test_provenance(self) -> None:
        self.assertEqual(gr_value_provenance(GRInstance(5, (4, 4))), Provenance.PROVEN)
        self.assertEqual(gr_value_provenance(GRInstance(7, (6, 6))), Provenance.CONJECTURAL)


class GRInstanceTests(unittest.TestCase):
    def test_targets(self) -> None:
        inst = GRInstance.parse(5, "4,1,0", "cycle")
        self.assertEqual(inst.targets(), (TargetSpec.cycle(10), TargetSpec.path(5), TargetSpec.path(3)))
        self.assertEqual(inst.describe(), "GR(C10, P5, P3)")
        top_path = GRInstance.parse(5, "4", "path")
        self.assertEqual(top_path.targets(), (TargetSpec.path(11),))

    def test_invalid_vectors(self) -> None:
        for n, raw in [(5, "3,4"), (5, "5"), (5, ""), (2, "0"), (5, "-1"), (5, "a,b")]:
            with self.subTest(n=n, raw=raw):
                with self.assertRaises(InvalidIVectorError):
                    GRInstance.parse(n, raw)

    def test_iter_instances_counts_multisets(self) -> None:
        # Non-increasing vectors of length 2 over 0..4.
        self.assertEqual(len(list(iter_instances(5, 2))), 15)


class FamilyTests(unittest.TestCase):
    def test_values(self) -> None:
        self.assertEqual(gr_k_family(6, 3, Family.EVEN_CYCLE), 22)
        self.assertLess(gr_k_family(6, 3, Family.EVEN_CYCLE), r3_even_cycle_lower_bound(6))
        self.assertEqual(gr_k_family(5, 1, Family.ODD_PATH), 11)
        self.assertEqual(gr_k_family(6, 2, Family.EVEN_CYCLE), r2_even_cycle(6))
        self.assertEqual(gr_k_family(5, 3, Family.MATCHING), gr_k_family(5, 3, Family.EVEN_PATH))

    def test_closed_forms(self) -> None:
        for n in range(3, 7):
            for k in range(1, 11):
                self.assertEqual(gr_k_family(n, k, Family.EVEN_CYCLE), (n - 1) * k + n + 1)
                self.assertEqual(gr_k_family(n, k, Family.ODD_PATH), (n - 1) * k + n + 2)

    def test_odd_path_allows_small_n(self) -> None:
        self.assertEqual(gr_k_family(1, 4, Family.ODD_PATH), 3)
        with self.assertRaises(RangeViolationError):
            gr_k_family(2, 2, Family.EVEN_CYCLE)
        with self.assertRaises(RangeViolationError):
            gr_k_family(3, 0, Family.MATCHING)

    def test_provenance_and_targets(self) -> None:
        self.assertEqual(family_provenance(6, 9, Family.EVEN_CYCLE), Provenance.PROVEN)
        self.assertEqual(family_provenance(7, 2, Family.ODD_PATH), Provenance.CONJECTURAL)
        self.assertEqual(family_target(5, Family.MATCHING).label, "M5")
        self.assertEqual(family_target(5, Family.EVEN_PATH).label, "P10")


class TwoColorRamseyTests(unittest.TestCase):
    def test_even_cycles(self) -> None:
        self.assertEqual([r2_even_cycle(n) for n in (3, 5, 6)], [8, 14, 17])
        with self.assertRaises(RangeViolationError):
            r2_even_cycle(2)

    def test_path_cycle(self) -> None:
        self.assertEqual(r_path_cycle(3, 3), 6)
        self.assertEqual(r_path_cycle(4, 3), 7)
        self.assertEqual(r_path_cycle(7, 5), 12)
        for n in range(3, 9):
            self.assertEqual(r_path_cycle(2 * n, n), r2_even_cycle(n))
        with self.assertRaises(RangeViolationError):
            r_path_cycle(8, 3)
        with self.assertRaises(RangeViolationError):
            r_path_cycle(2, 3)

    def test_two_color_gr_matches_ramsey(self) -> None:
        # GR(P_{2i+3}, C_{2n}) for two colors equals R(P_{2i+3}, C_{2n}).
        for n in (5, 6):
            for i in range(n - 1):
                inst = GRInstance(n, (n - 1, i))
                self.assertEqual(gr_value(inst), r_path_cycle(2 * i + 3, n))


class AllPathsTests(unittest.TestCase):
    def test_values(self) -> None:
        self.assertEqual(gr_all_paths([0, 0, 0]), 3)
        self.assertEqual(gr_all_paths([1, 0]), 5)
        self.assertEqual(gr_all_paths([0, 3]), 9)
        self.assertEqual(gr_all_paths_provenance([5, 1]), Provenance.PROVEN)
        self.assertEqual(gr_all_paths_provenance([6]), Provenance.CONJECTURAL)
        with self.assertRaises(InvalidIVectorError):
            gr_all_paths([])


if __name__ == "__main__":
    unittest.main()
