#!/usr/bin/env python3
"""End-to-end checks of the rank1lab driver.

usage: cli_checks.py RANK1LAB_BINARY SCHEMA CASE
"""
import json
import os
import subprocess
import sys
import tempfile

SMALL = """\
scan.n_F = 30
scan.n_dir = 10
scan.n_refine = 2
scan.n_search_F = 1
scan.n_starts = 8
suite.identity.n = 100
suite.gradient.n = 5
suite.theorem.n = 100
suite.twins.n = 500
suite.twins.n_det = 100
"""


class Env:
    def __init__(self, binary, schema, tmp):
        self.binary = binary
        self.schema = schema
        self.tmp = tmp
        self.config = os.path.join(tmp, "small.cfg")
        with open(self.config, "w") as f:
            f.write(SMALL)

    def run(self, *args, out="out", env=None, config=True):
        cmd = [self.binary]
        if config:
            cmd += ["--config", self.config]
        if out is not None:
            cmd += ["--out", os.path.join(self.tmp, out)]
        cmd += list(args)
        full_env = dict(os.environ)
        full_env.pop("RANK1LAB_SEED", None)
        full_env.update(env or {})
        p = subprocess.run(cmd, capture_output=True, text=True, env=full_env)
        return p

    def report(self, out="out"):
        with open(os.path.join(self.tmp, out, "report.json")) as f:
            return json.load(f)

    def report_text(self, out="out"):
        with open(os.path.join(self.tmp, out, "report.json")) as f:
            return f.read()


def expect(cond, msg):
    if not cond:
        raise AssertionError(msg)


def expect_exit(p, code, what):
    expect(p.returncode == code,
           f"{what}: exit {p.returncode}, expected {code}\nstderr: {p.stderr}")


def case_exit_codes(e):
    expect_exit(e.run("ellipticity", "blatz-ko"), 0, "ellipticity blatz-ko")
    expect_exit(e.run("ellipticity", "svk"), 1, "ellipticity svk")
    expect_exit(e.run("pc-check", "volumetric-cubic"), 1, "pc-check volumetric-cubic")
    expect_exit(e.run("injectivity", "volumetric-cubic"), 1, "injectivity volumetric-cubic")
    expect_exit(e.run("identities"), 0, "identities")
    p = e.run("all")
    expect_exit(p, 0, "all")
    r = e.report()
    expect(r["verdict"] == "pass" and r["violations_found"], "all: expected pass with findings")


def case_usage_errors(e):
    expect_exit(e.run("ellipticity", "mooney-rivlin"), 2, "unknown model")
    expect_exit(e.run("ellipticity"), 2, "missing model")
    expect_exit(e.run("frobnicate"), 2, "unknown subcommand")
    expect_exit(e.run(), 2, "no subcommand")
    expect_exit(e.run("--seed", "abc", "twins"), 2, "bad --seed")
    expect_exit(e.run("--help", out=None, config=False), 0, "--help")
    bad = os.path.join(e.tmp, "bad.cfg")
    with open(bad, "w") as f:
        f.write("scan.n_F = lots\n")
    p = subprocess.run([e.binary, "--config", bad, "--out", os.path.join(e.tmp, "b"), "twins"],
                       capture_output=True, text=True)
    expect_exit(p, 2, "malformed config")
    expect("line 1" in p.stderr, "config error should name the line: " + p.stderr)
    expect_exit(e.run("twins", env={"RANK1LAB_SEED": "12x"}), 2, "bad RANK1LAB_SEED")


def case_unwritable_output(e):
    blocker = os.path.join(e.tmp, "blocker")
    with open(blocker, "w") as f:
        f.write("x")
    expect_exit(e.run("twins", out="blocker/sub"), 2, "unwritable output dir")


def case_reproducible(e):
    expect_exit(e.run("--seed", "7", "--threads", "1", "all", out="a"), 0, "run a")
    expect_exit(e.run("--seed", "7", "--threads", "3", "all", out="b"), 0, "run b")
    ra, rb = e.report("a"), e.report("b")
    ra.pop("meta")
    rb.pop("meta")
    expect(json.dumps(ra) == json.dumps(rb), "reports differ modulo meta")
    for name in ("ellipticity_violations.csv", "pressure_scan.csv", "dilation_scan.csv"):
        with open(os.path.join(e.tmp, "a", name), "rb") as fa, \
                open(os.path.join(e.tmp, "b", name), "rb") as fb:
            expect(fa.read() == fb.read(), name + " differs")
    expect_exit(e.run("--seed", "8", "ellipticity", "svk", out="c"), 1, "run c")
    expect_exit(e.run("--seed", "7", "ellipticity", "svk", out="d"), 1, "run d")
    expect(e.report("c")["suites"] != e.report("d")["suites"], "seed has no effect")


def case_seed_precedence(e):
    e.run("twins", out="cfg")
    expect(e.report("cfg")["config"]["seed"] == 42, "default seed")
    e.run("twins", out="env", env={"RANK1LAB_SEED": "5"})
    expect(e.report("env")["config"]["seed"] == 5, "env seed")
    e.run("--seed", "9", "twins", out="flag", env={"RANK1LAB_SEED": "5"})
    expect(e.report("flag")["config"]["seed"] == 9, "flag beats env")


def case_json_stdout(e):
    p = e.run("--json", "blatzko-scan")
    expect_exit(p, 0, "blatzko-scan")
    expect(p.stdout == e.report_text(), "--json output differs from report.json")
    scan = json.loads(p.stdout)["suites"]["blatzko_scan"]
    expect(not scan["is_monotone"], "pressure profile should not be monotone")
    expect(abs(scan["alpha_star"] - 6 ** 0.4) < 1e-6, "alpha*")


def case_schema(e):
    outs = []
    for i, args in enumerate([("all",), ("identities",), ("gradcheck",), ("twins",),
                              ("blatzko-scan",), ("ellipticity", "svk"),
                              ("injectivity", "volumetric-cubic"),
                              ("pc-check", "neo-hooke")]):
        out = f"s{i}"
        e.run(*args, out=out)
        outs.append(os.path.join(e.tmp, out, "report.json"))
    validator = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "tools",
                             "validate_reports.py")
    p = subprocess.run([sys.executable, validator, e.schema] + outs, capture_output=True,
                       text=True)
    expect(p.returncode == 0, p.stdout + p.stderr)


CASES = {name[5:]: fn for name, fn in globals().items() if name.startswith("case_")}


def main():
    if len(sys.argv) != 4 or sys.argv[3] not in CASES:
        print(__doc__.strip() + "\ncases: " + ", ".join(sorted(CASES)), file=sys.stderr)
        return 2
    with tempfile.TemporaryDirectory(prefix="rank1lab-cli-") as tmp:
        try:
            CASES[sys.argv[3]](Env(sys.argv[1], sys.argv[2], tmp))
        except AssertionError as err:
            print("FAIL:", err, file=sys.stderr)
            return 1
    print("ok")
    return 0


if __name__ == "__main__":
    sys.exit(main())
