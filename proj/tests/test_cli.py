"""Command-line checks: exit codes, schema validity, determinism."""

import json
import subprocess
import sys
import tempfile
import unittest
from pathlib import Path

import jsonschema

BIN = sys.argv[1] if len(sys.argv) > 1 else "build/tools/crnosc"
ROOT = Path(sys.argv[2] if len(sys.argv) > 2 else ".")
NETS = ROOT / "data" / "networks"
SCHEMA = json.loads((ROOT / "schemas" / "report.schema.json").read_text())


def run(*args):
    return subprocess.run([BIN, *map(str, args)], capture_output=True, text=True, timeout=600)


def report(*args, code=0):
    r = run(*args)
    assert r.returncode == code, (args, r.returncode, r.stderr)
    j = json.loads(r.stdout)
    jsonschema.validate(j, SCHEMA)
    return j


class Classify(unittest.TestCase):
    def test_lotka(self):
        j = report("classify", NETS / "lotka.crn")
        self.assertEqual(j["verdict"]["summary"], "CenterForAllKappa")
        self.assertEqual(j["verdict"]["planar"]["source_case"], 7)

    def test_saddle(self):
        j = report("classify", NETS / "saddle4.crn")
        self.assertTrue(j["jacobian"]["records"][0]["saddle"])
        self.assertEqual(j["verdict"]["periodic"]["admits_periodic"], "Never")

    def test_orbit_block(self):
        j = report("classify", NETS / "lotka.crn", "--orbit")
        self.assertEqual(j["dynamics"]["orbit_structure"], "Center")

    def test_kappa_override(self):
        j = report("classify", NETS / "tetra0.crn", "--kappa", "3/2,1,1")
        self.assertEqual(j["network"]["kappa"], [1.5, 1.0, 1.0])

    def test_every_data_network_validates(self):
        for path in sorted(NETS.glob("*.crn")):
            if path.stem == "empty":
                continue
            r = run("classify", path)
            self.assertIn(r.returncode, (0, 2), path)
            jsonschema.validate(json.loads(r.stdout), SCHEMA)

    def test_precondition_failure(self):
        with tempfile.NamedTemporaryFile("w", suffix=".crn") as f:
            f.write("X -> 2X\n")
            f.flush()
            j = report("classify", f.name, code=2)
            self.assertTrue(j["errors"])

    def test_input_errors(self):
        self.assertEqual(run("classify", NETS / "empty.crn").returncode, 1)
        self.assertEqual(run("classify", NETS / "missing.crn").returncode, 1)
        self.assertEqual(run("classify", NETS / "lotka.crn", "--kappa", "1,2").returncode, 1)
        self.assertEqual(run("classify", NETS / "lotka.crn", "--kappa", "1,0,1").returncode, 1)
        with tempfile.NamedTemporaryFile("w", suffix=".crn") as f:
            f.write("X -> 2X +\n")
            f.flush()
            r = run("classify", f.name)
            self.assertEqual(r.returncode, 1)
            self.assertIn("line 1", r.stderr)

    def test_deterministic(self):
        a = run("classify", NETS / "saddle4.crn", "--seed", "5").stdout
        b = run("classify", NETS / "saddle4.crn", "--seed", "5").stdout
        self.assertEqual(a, b)


class Other(unittest.TestCase):
    def test_enumerate(self):
        j = report("enumerate", "--n-max", "4")
        self.assertEqual(len(j["networks"]), 16)
        self.assertEqual(run("enumerate", "--n-max", "6").returncode, 1)

    def test_hopf_scan(self):
        j = report("hopf-scan", "--net", NETS / "tetra0.crn", "--path", "k1=t", "--t-range", "0.5:2")
        hp = j["hopf_point"]
        self.assertAlmostEqual(hp["t_star"], 1.0, places=9)
        self.assertLess(hp["l1"], 0)
        report("hopf-scan", "--net", NETS / "tetra0.crn", "--path", "k1=t", "--t-range", "1.5:2", code=2)

    def test_expand(self):
        r = run("expand", "--net", NETS / "tetra0.crn")
        self.assertEqual(r.returncode, 0)
        lines = [l for l in r.stdout.splitlines() if l.strip()]
        self.assertEqual(len(lines), 4)

    def test_simulate(self):
        r = run("simulate", "--net", NETS / "lotka.crn", "--x0", "2,1", "--T", "1", "--samples", "4")
        self.assertEqual(r.returncode, 0)
        rows = r.stdout.splitlines()
        self.assertEqual(rows[0], "t,X,Y")
        self.assertEqual(len(rows), 6)
        self.assertEqual(run("simulate", "--net", NETS / "lotka.crn", "--x0", "2").returncode, 1)

    def test_verify_only(self):
        with tempfile.TemporaryDirectory() as d:
            out = Path(d) / "a.json"
            r = run("verify", "--only", "fold", "--out", out)
            self.assertEqual(r.returncode, 0, r.stdout)
            j = json.loads(out.read_text())
            jsonschema.validate(j, SCHEMA)
            self.assertEqual([c["id"] for c in j["criteria"]], ["A10"])
        self.assertEqual(run("verify", "--only", "nonsense").returncode, 1)


if __name__ == "__main__":
    unittest.main(argv=sys.argv[:1])
