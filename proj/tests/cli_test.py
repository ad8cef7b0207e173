"""End-to-end checks of the pgz command line: exit codes, reports, certificates."""

import argparse
import json
import os
import subprocess
import sys
import tempfile
import unittest

import jsonschema

ARGS = None
SCHEMA = None


def pgz(*args, check_schema=True):
    proc = subprocess.run([ARGS.pgz, *args], capture_output=True, text=True, timeout=300)
    report = None
    if proc.stdout.lstrip().startswith("{"):
        report = json.loads(proc.stdout)
        if check_schema:
            jsonschema.validate(report, SCHEMA)
    return proc, report


def data(name):
    return os.path.join(ARGS.data, name)


class Cli(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()

    def tearDown(self):
        self.tmp.cleanup()

    def path(self, name):
        return os.path.join(self.tmp.name, name)

    def test_rev_id_unary_equivalent_and_certificate_rechecks(self):
        cert = self.path("revid.json")
        proc, rep = pgz("equiv", data("rev.tr"), data("id.tr"), "--alphabet", "a", "--emit-certificate", cert)
        self.assertEqual(proc.returncode, 0, proc.stderr)
        self.assertEqual(rep["verdict"], "Equivalent")
        proc, rep = pgz("equiv", data("rev.tr"), data("id.tr"), "--alphabet", "a", "--check-certificate", cert)
        self.assertEqual(proc.returncode, 0)
        self.assertEqual(rep["result"]["certificate_check"]["verdict"], "zero-proved")

    def test_rev_id_binary_witness(self):
        proc, rep = pgz("equiv", data("rev.tr"), data("id.tr"), "--alphabet", "a,b")
        self.assertEqual(proc.returncode, 1)
        self.assertEqual(rep["result"]["witness"], "ab")
        self.assertNotEqual(rep["result"]["output1"], rep["result"]["output2"])
        run1, r1 = pgz("run", data("rev.tr"), "ab")
        run2, r2 = pgz("run", data("id.tr"), "ab")
        self.assertEqual(r1["result"]["output"], rep["result"]["output1"])
        self.assertEqual(r2["result"]["output"], rep["result"]["output2"])

    def test_cominj(self):
        proc, rep = pgz("cominj", "a -> bbc")
        self.assertEqual(proc.returncode, 1)
        self.assertEqual(rep["result"]["det"], "0")
        proc, rep = pgz("cominj", "a -> ab, b -> babb")
        self.assertEqual(proc.returncode, 0)
        self.assertEqual(rep["result"]["matrix"], [["1", "1"], ["1", "3"]])
        self.assertEqual(rep["result"]["det"], "2")

    def test_invert_subst(self):
        proc, rep = pgz("invert-subst", "a -> aa")
        self.assertEqual(proc.returncode, 0)
        self.assertEqual(rep["result"]["inverse"], {"ab": "ab^(1/2)", "at": "at/(ab^(1/2) + 1)"})
        self.assertTrue(rep["result"]["round_trip"])
        proc, rep = pgz("invert-subst", "a -> bbc")
        self.assertEqual(proc.returncode, 1)
        self.assertEqual(rep["verdict"], "NotComInjective")

    def test_zeroness_certificates(self):
        cert = self.path("twisted.json")
        proc, rep = pgz("zeroness", data("twisted.pg"), "--emit-certificate", cert)
        self.assertEqual(proc.returncode, 0)
        proc, rep = pgz("zeroness", data("twisted.pg"), "--check-certificate", cert)
        self.assertEqual(proc.returncode, 0)
        # A certificate for the twisted grammar does not cover the plain one.
        proc, rep = pgz("zeroness", data("twisted_plain.pg"), "--check-certificate", cert)
        self.assertEqual(proc.returncode, 2)
        proc, rep = pgz("zeroness", data("twisted_plain.pg"))
        self.assertEqual(proc.returncode, 1)
        self.assertEqual(rep["result"]["witness"]["value"], ["a"])

    def test_indep_and_chain(self):
        cert = self.path("indep.json")
        proc, rep = pgz("indep-zeroness", data("indep_A.pg"), data("indep_B.pg"), "--emit-certificate", cert)
        self.assertEqual(proc.returncode, 0)
        proc, _ = pgz("indep-zeroness", data("indep_A.pg"), data("indep_B.pg"), "--check-certificate", cert)
        self.assertEqual(proc.returncode, 0)
        proc, chain = pgz("chain-zeroness", data("indep_A.pg"), data("indep_B.pg"))
        self.assertEqual(chain["verdict"], rep["verdict"])
        self.assertEqual(chain["result"]["certificate"], rep["result"]["certificate"])

    def test_sqrev_certificate(self):
        proc, rep = pgz("equiv", data("sqrev1.tr"), data("sqrev2.tr"), "--check-certificate", data("sqrev.cert.json"))
        self.assertEqual(proc.returncode, 0)
        self.assertEqual(rep["verdict"], "Equivalent")

    def test_eqsat(self):
        proc, rep = pgz("eqsat", data("eqsat_E.pg"), data("eqsat_T_a.pg"))
        self.assertEqual(proc.returncode, 0)
        proc, rep = pgz("eqsat", data("eqsat_E.pg"), data("eqsat_T_ab.pg"))
        self.assertEqual(proc.returncode, 1)

    def test_vass(self):
        proc, _ = pgz("vass-compile", data("example.vass"))
        self.assertEqual(proc.returncode, 0)
        self.assertIn("output q0 = R1[x := S1 + S2] * R2;", proc.stdout)
        proc, rep = pgz("vass-reach", data("twostep.vass"), "--min-steps", "1")
        self.assertEqual(proc.returncode, 1)
        self.assertEqual(len(rep["result"]["run"]), 4)
        self.assertNotEqual(rep["result"]["compiled_output"], "0")
        proc, rep = pgz("vass-reach", data("twostep.vass"))
        self.assertEqual(rep["result"]["run"], "")

    def test_encode_and_run(self):
        proc, rep = pgz("encode", "abbab")
        self.assertEqual(rep["result"]["bar"], "ab^2*bb^3")
        proc, rep = pgz("run", data("revid.tr"), "abb")
        self.assertEqual(rep["result"]["output"], "bbaabb")

    def test_input_errors(self):
        bad = self.path("bad.tr")
        with open(bad, "w") as f:
            f.write("transducer {\n  state q initial;\n  on a from q to r {}\n}\n")
        proc, rep = pgz("run", bad, "a")
        self.assertEqual(proc.returncode, 3)
        self.assertEqual(rep["error"]["line"], 3)
        proc, _ = pgz("zeroness", self.path("missing.pg"))
        self.assertEqual(proc.returncode, 3)
        proc, _ = pgz("bogus", data("rev.tr"))
        self.assertEqual(proc.returncode, 3)
        proc, _ = pgz("zeroness", data("twisted.pg"), "--budget-size", "0")
        self.assertEqual(proc.returncode, 3)

    def test_parallel_schedule(self):
        proc, rep = pgz("equiv", data("rev.tr"), data("id.tr"), "--alphabet", "a,b", "--schedule", "parallel")
        self.assertEqual(proc.returncode, 1)
        self.assertEqual(rep["schedule"], "parallel")

    def test_reports_are_byte_identical(self):
        runs = [
            ("equiv", data("rev.tr"), data("id.tr"), "--alphabet", "a"),
            ("equiv", data("rev.tr"), data("id.tr"), "--alphabet", "a,b"),
            ("indep-zeroness", data("indep_A.pg"), data("indep_B.pg")),
            ("equiv", data("sqrev1.tr"), data("sqrev2.tr"), "--check-certificate", data("sqrev.cert.json")),
        ]
        for args in runs:
            a, _ = pgz(*args)
            b, _ = pgz(*args)
            self.assertEqual(a.stdout, b.stdout, args)


def main():
    global ARGS, SCHEMA
    parser = argparse.ArgumentParser()
    parser.add_argument("--pgz", required=True)
    parser.add_argument("--data", required=True)
    parser.add_argument("--schema", required=True)
    ARGS, rest = parser.parse_known_args()
    with open(ARGS.schema) as f:
        SCHEMA = json.load(f)
    unittest.main(argv=[sys.argv[0], "-v", *rest])


if __name__ == "__main__":
    main()
