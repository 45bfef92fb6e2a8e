import tempfile
import unittest
from itertools import combinations
from pathlib import Path

from gallai import __version__
from gallai.certificate import (
    Certificate,
    CertificateSemanticError,
    CertificateSyntaxError,
    certificate_for,
    load_certificate,
    parse,
    save_certificate,
    serialize,
    verify_certificate,
)
from gallai.coloring import TargetSpec, monochromatic
from gallai.constructions import lower_bound_witness, witness_layers
from gallai.formulas import GRInstance, Provenance
from gallai.verify import Verdict, check_bad_coloring

NAMES = ("red", "blue", "green")


def witness_certificate(inst: GRInstance) -> Certificate:
    witness = lower_bound_witness(inst)
    report = check_bad_coloring(witness, inst.targets())
    return certificate_for(witness, inst.targets(), report, inst, NAMES)


class RoundTripTests(unittest.TestCase):
    def test_thirteen_vertex_witness(self) -> None:
        cert = witness_certificate(GRInstance(5, (4, 4)))
        data = serialize(cert)
        parsed = parse(data)
        self.assertEqual(parsed, cert)
        self.assertEqual(serialize(parsed), data)
        self.assertEqual(parsed.coloring().n, 13)

    def test_text_layout(self) -> None:
        cert = witness_certificate(GRInstance(3, (1, 0)))
        lines = serialize(cert).decode("utf-8").splitlines()
        self.assertEqual(lines[:4], ["gallai-certificate 1", "n 4", "k 2", "names 1=red 2=blue"])
        self.assertIn("provenance proven", lines)
        self.assertIn("instance 3 1,0 cycle", lines)
        self.assertIn("target 1 P5", lines)
        self.assertIn("edge 0 1 1", lines)
        self.assertIn("claim absent 2 yes", lines)
        self.assertIn(f"verify tool {__version__}", lines)
        self.assertEqual(lines[-1], "end")

    def test_single_color_clique(self) -> None:
        cert = witness_certificate(GRInstance(5, (4,)))
        parsed = parse(serialize(cert))
        self.assertEqual(parsed.coloring(), monochromatic(9))
        self.assertEqual(verify_certificate(parsed).verdict, Verdict.VERIFIED)

    def test_save_and_load(self) -> None:
        cert = witness_certificate(GRInstance(4, (3, 1)))
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "nested" / "point.cert"
            save_certificate(path, cert)
            self.assertEqual(load_certificate(path), cert)
            self.assertFalse(path.with_suffix(".cert.tmp").exists())

    def test_conjectural_instances_are_flagged(self) -> None:
        cert = witness_certificate(GRInstance(7, (6, 1)))
        self.assertEqual(cert.provenance, Provenance.CONJECTURAL)
        self.assertIn(b"provenance conjectural", serialize(cert))

    def test_plain_coloring_without_claims(self) -> None:
        cert = certificate_for(monochromatic(4))
        parsed = parse(serialize(cert))
        self.assertIsNone(parsed.claims)
        report = verify_certificate(parsed)
        self.assertEqual(report.verdict, Verdict.VERIFIED)


class ParseErrorTests(unittest.TestCase):
    def test_empty_edge_list(self) -> None:
        with self.assertRaises(CertificateSemanticError):
            parse("gallai-certificate 1\nn 2\nk 1\nend\n")

    def test_duplicate_edge(self) -> None:
        with self.assertRaises(CertificateSemanticError):
            parse("gallai-certificate 1\nn 2\nk 1\nedge 0 1 1\nedge 1 0 1\nend\n")

    def test_color_out_of_range(self) -> None:
        with self.assertRaises(CertificateSemanticError):
            parse("gallai-certificate 1\nn 2\nk 1\nedge 0 1 2\nend\n")

    def test_truncated(self) -> None:
        data = serialize(certificate_for(monochromatic(3))).decode("utf-8")
        with self.assertRaises(CertificateSyntaxError):
            parse(data.replace("end\n", ""))

    def test_bad_header(self) -> None:
        with self.assertRaises(CertificateSyntaxError):
            parse("coloring 1\nn 2\nk 1\nedge 0 1 1\nend\n")
        with self.assertRaises(CertificateSyntaxError):
            parse("gallai-certificate 2\nn 2\nk 1\nedge 0 1 1\nend\n")
        with self.assertRaises(CertificateSyntaxError):
            parse("")

    def test_binary_garbage(self) -> None:
        with self.assertRaises(CertificateSyntaxError):
            parse(b"gallai-certificate 1\n\xff\xfe\n")

    def test_unknown_line(self) -> None:
        with self.assertRaises(CertificateSyntaxError):
            parse("gallai-certificate 1\nn 2\nk 1\nedge 0 1 one\nend\n")
        with self.assertRaises(CertificateSyntaxError):
            parse("gallai-certificate 1\nn 2\nk 1\ncolour 0 1 1\nend\n")

    def test_claims_need_verification_block(self) -> None:
        data = serialize(witness_certificate(GRInstance(3, (1, 0)))).decode("utf-8")
        stripped = "\n".join(line for line in data.splitlines() if not line.startswith("verify ")) + "\n"
        with self.assertRaises(CertificateSemanticError):
            parse(stripped)

    def test_provenance_must_match_instance(self) -> None:
        data = serialize(witness_certificate(GRInstance(7, (6, 1)))).decode("utf-8")
        with self.assertRaises(CertificateSemanticError):
            parse(data.replace("provenance conjectural", "provenance proven"))

    def test_targets_cover_every_color(self) -> None:
        with self.assertRaises(CertificateSemanticError):
            parse("gallai-certificate 1\nn 2\nk 2\ntarget 1 P3\nedge 0 1 1\nend\n")

    def test_only_verified_reports_are_certified(self) -> None:
        clique = monochromatic(10)
        report = check_bad_coloring(clique, [TargetSpec.cycle(10)])
        with self.assertRaises(CertificateSemanticError):
            certificate_for(clique, [TargetSpec.cycle(10)], report)


class TamperTests(unittest.TestCase):
    def test_mutated_witnesses_are_refuted(self) -> None:
        inst = GRInstance(5, (4, 4))
        data = serialize(witness_certificate(inst)).decode("utf-8")
        layers = witness_layers(inst)
        layer_vertices = range(layers.base_order, layers.order)
        mutations = [
            (x, a, b) for x in layer_vertices for a, b in combinations(range(layers.base_order), 2)
        ][:100]
        self.assertEqual(len(mutations), 100)
        for x, a, b in mutations:
            tampered = data.replace(f"edge {a} {x} 2\n", f"edge {a} {x} 1\n").replace(
                f"edge {b} {x} 2\n", f"edge {b} {x} 1\n"
            )
            self.assertNotEqual(tampered, data)
            report = verify_certificate(parse(tampered))
            self.assertEqual(report.verdict, Verdict.REFUTED, msg=f"{x}, {a}, {b}")
            self.assertEqual(report.embedding.target, TargetSpec.cycle(10))

    def test_rainbow_triangle_is_refuted(self) -> None:
        inst = GRInstance(5, (4, 3, 2))
        data = serialize(witness_certificate(inst)).decode("utf-8")
        x = witness_layers(inst).base_order
        tampered = data.replace(f"edge 0 {x} 2\n", f"edge 0 {x} 3\n")
        report = verify_certificate(parse(tampered))
        self.assertEqual(report.verdict, Verdict.REFUTED)
        self.assertIsNotNone(report.triangle)

    def test_wrong_order_for_instance(self) -> None:
        cert = witness_certificate(GRInstance(4, (3, 1)))
        text = serialize(cert).decode("utf-8").replace("instance 4 3,1 cycle", "instance 4 3,2 cycle")
        report = verify_certificate(parse(text))
        self.assertEqual(report.verdict, Verdict.REFUTED)


if __name__ == "__main__":
    unittest.main()
