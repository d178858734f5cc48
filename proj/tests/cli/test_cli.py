"""End-to-end checks of the lowzero binary: outputs, exit codes, cache reuse, determinism."""

import csv
import json
import subprocess
import sys
import tempfile
import xml.etree.ElementTree as ET
from pathlib import Path

import jsonschema

BIN = Path(sys.argv[1])
SCHEMA = json.loads(Path(sys.argv[2]).read_text())


def run(*args, cwd):
    return subprocess.run([str(BIN), *map(str, args)], cwd=cwd, capture_output=True, text=True)


def rows(path):
    with open(path, newline="") as f:
        return list(csv.reader(f))


def check(cond, what):
    if not cond:
        raise AssertionError(what)
    print("ok -", what)


def main():
    with tempfile.TemporaryDirectory() as tmp:
        tmp = Path(tmp)
        common = ["--X", 600, "--cache-dir", tmp / "cache", "--out-dir", tmp / "out", "--threads", 1]

        r = run("sieve", "--X", 100, "--v", 1, "--out-dir", tmp / "s1", cwd=tmp)
        check(r.returncode == 0, "sieve exits 0")
        p = rows(tmp / "s1" / "primes.csv")
        check(p[0] == ["p"] and len(p) - 1 == 11, "X=100, v=1 gives 11 primes")
        run("sieve", "--X", 2, "--out-dir", tmp / "s2", cwd=tmp)
        check(rows(tmp / "s2" / "primes.csv") == [["p"]], "X=2 gives a header only")
        check(run("sieve", "--v", 2, cwd=tmp).returncode == 2, "v=2 is a usage error")
        check(run("nosuch", cwd=tmp).returncode == 2, "unknown subcommand is a usage error")
        check(run("sieve", "--X", "lots", cwd=tmp).returncode == 2, "bad number is a usage error")

        r = run("formfactor", *common, cwd=tmp)
        check(r.returncode == 3, "missing cache exits 3")
        check(len(rows(tmp / "out" / "missing_primes.csv")) > 1, "missing primes are listed")

        r = run("zeros", *common, cwd=tmp)
        check(r.returncode == 0 and "failures=0" in r.stdout, "zeros populates the cache")
        r = run("zeros", *common, cwd=tmp)
        check("computed=0" in r.stdout and "hits=" in r.stdout, "rerun is all cache hits")
        r = run("zeros", *common, "--cache-version", 2, cwd=tmp)
        check("hits=0" in r.stdout, "version bump recomputes everything")
        r = run("zeros", *common, "--primes", "5,13", "--T", 5, cwd=tmp)
        check("computed=2" in r.stdout and len(rows(tmp / "out" / "zeros.csv")) == 3, "prime subset is honoured")

        for cmd, name, header in [
            ("formfactor", "formfactor.csv", ["alpha", "F", "prediction", "gap"]),
            ("density", "density.csv", ["X", "empirical", "limit", "ratios", "X_star"]),
            ("ratios", "ratios.csv", ["X", "v", "statistic", "empirical", "prediction", "gap"]),
            ("nonvanish", "nonvanish.csv", ["p", "central_value", "status"]),
        ]:
            r = run(cmd, *common, "--tf", "fejer,gauss", cwd=tmp)
            check(r.returncode == 0, f"{cmd} exits 0")
            t = rows(tmp / "out" / name)
            check(t[0] == header, f"{name} header")
            svg = tmp / "out" / name.replace(".csv", ".svg")
            ET.parse(svg)
            check(svg.read_text().count("<svg") == 1, f"{svg.name} is well-formed")
        check(len(rows(tmp / "out" / "density.csv")) - 1 == 2, "density rows match the test functions")
        check(rows(tmp / "out" / "explicit.csv")[0] == ["p", "x", "lhs_re", "rhs_re", "residual"], "explicit.csv header")
        gaps = [float(r[5]) for r in rows(tmp / "out" / "ratios.csv")[1:]]
        check(all(g == g and abs(g) != float("inf") for g in gaps), "ratios gaps are finite")
        a = rows(tmp / "out" / "formfactor.csv")
        check(len(a) - 1 == 101 and a[1][0] == "0" and a[-1][0] == "2", "default alpha grid spans [0, 2]")

        cfg = tmp / "run.cfg"
        cfg.write_text(f"X = 600\nlambda = 0.7\ncache_dir = {tmp / 'cache'}\nout-dir = {tmp / 'rep1'}\n")
        r1 = run("report", "--config", cfg, "--threads", 1, cwd=tmp)
        r2 = run("report", "--config", cfg, "--threads", 1, "--out-dir", tmp / "rep2", cwd=tmp)
        check(r1.returncode == 0 and r2.returncode == 0, "report exits 0")
        b1 = (tmp / "rep1" / "report.json").read_bytes()
        b2 = (tmp / "rep2" / "report.json").read_bytes()
        rep = json.loads(b1)
        jsonschema.validate(rep, SCHEMA)
        check(True, "report validates against the schema")
        check(rep["config"]["lambda"] == 0.7 and rep["config"]["X"] == 600, "config file values are used")
        check(rep["config"]["out_dir"].endswith("rep1"), "file value kept when no flag given")
        check(json.loads(b2)["config"]["out_dir"].endswith("rep2"), "flag overrides file")
        strip = lambda b: {k: v for k, v in json.loads(b).items() if k not in ("config", "config_hash")}
        check(strip(b1) == strip(b2), "statistics identical across runs")
        r3 = run("report", "--config", cfg, "--threads", 1, cwd=tmp)
        check((tmp / "rep1" / "report.json").read_bytes() == b1, "same config gives byte-identical report")
        check(rep["schema_version"] == "1.0.0" and len(rep["config_hash"]) == 64, "provenance fields present")
        run("ratios", *common, cwd=tmp)
        c1 = (tmp / "out" / "ratios.csv").read_bytes()
        run("ratios", *common, cwd=tmp)
        check((tmp / "out" / "ratios.csv").read_bytes() == c1, "CSV output is deterministic")


if __name__ == "__main__":
    main()
