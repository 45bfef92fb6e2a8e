import tempfile
import unittest
from pathlib import Path

from gallai.coloring import TargetSpec
from gallai.ledger import delete_run, fetch_run, fetch_runs, init_db, record_run, render_runs
from gallai.verify import SearchStats, Verdict, VerdictReport


class LedgerTests(unittest.TestCase):
    def setUp(self) -> None:
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)
        self.path = Path(self.tmp.name) / "ledger" / "runs.db"

    def test_empty_ledger(self) -> None:
        init_db(self.path)
        self.assertTrue(self.path.exists())
        self.assertEqual(fetch_runs(self.path, 10), [])
        self.assertEqual(render_runs([]), "No runs recorded.")

    def test_record_and_fetch(self) -> None:
        report = VerdictReport(claim="R(P3, C6) = 6", verdict=Verdict.VERIFIED, stats=SearchStats(nodes=42))
        first = record_run(self.path, "search", report=report, n=6, k=2, targets=[TargetSpec.path(3), TargetSpec.cycle(6)])
        second = record_run(self.path, "construct", n=13, k=2, provenance="proven", certificate="gallai-certificate 1\n")
        runs = fetch_runs(self.path, 10)
        self.assertEqual([run.id for run in runs], [first, second])
        self.assertEqual(runs[0].targets, "P3,C6")
        self.assertEqual(runs[0].verdict, "Verified")
        self.assertEqual(runs[0].nodes, 42)
        self.assertEqual(fetch_run(self.path, second).certificate, "gallai-certificate 1\n")
        self.assertEqual([run.id for run in fetch_runs(self.path, 1)], [second])

        table = render_runs(runs)
        self.assertIn("Verdict", table.splitlines()[0])
        self.assertIn("P3,C6", table)

    def test_delete(self) -> None:
        run_id = record_run(self.path, "formula")
        self.assertTrue(delete_run(self.path, run_id))
        self.assertFalse(delete_run(self.path, run_id))
        self.assertIsNone(fetch_run(self.path, run_id))


if __name__ == "__main__":
    unittest.main()
