"""End-to-end checks of the qwork command-line tool."""

import csv
import json
import math
import os
import subprocess
import sys
import tempfile
from pathlib import Path

BIN = Path(sys.argv[1])
CONFIGS = Path(sys.argv[2])
failures = []


def check(label, ok, detail=""):
    print(("PASS " if ok else "FAIL ") + label + (": " + detail if detail and not ok else ""))
    if not ok:
        failures.append(label)


def run(*args, env=None):
    e = dict(os.environ)
    e.update(env or {})
    return subprocess.run([str(BIN), *map(str, args)], capture_output=True, text=True, env=e)


def read_rows(path):
    with open(path, newline="") as f:
        return list(csv.reader(f))


def max_numeric_diff(a, b):
    ra, rb = read_rows(a), read_rows(b)
    if len(ra) != len(rb) or ra[0] != rb[0]:
        return math.inf
    worst = 0.0
    for x, y in zip(ra[1:], rb[1:]):
        if len(x) != len(y):
            return math.inf
        worst = max([worst] + [abs(float(p) - float(q)) for p, q in zip(x, y)])
    return worst


def write_config(tmp, name, doc):
    path = tmp / name
    path.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return path


with tempfile.TemporaryDirectory() as d:
    tmp = Path(d)
    three = CONFIGS / "three_level.json"
    qubit = CONFIGS / "qubit.json"

    # identical configs give identical bytes, whatever the thread count
    for cmd, cfg in [("quasiprob", three), ("charfn", three), ("joint", three), ("qubit-demo", qubit),
                     ("fluctuation", three), ("negativity", qubit)]:
        a, b = tmp / (cmd + "_a"), tmp / (cmd + "_b")
        ra = run(cmd, "--config", cfg, "--out", a, env={"QWORK_THREADS": "1"})
        rb = run(cmd, "--config", cfg, "--out", b, env={"QWORK_THREADS": "4"})
        same = ra.returncode == 0 and rb.returncode == 0
        names = sorted(p.name for p in a.iterdir()) if a.exists() else []
        same = same and names == sorted(p.name for p in b.iterdir())
        same = same and all((a / n).read_bytes() == (b / n).read_bytes() for n in names)
        same = same and not any(n.endswith(".tmp") for n in names)
        check(f"{cmd} reruns are byte-identical", same, ra.stderr + rb.stderr)

    # an incoherent state makes every p_q file equal to the TPM file
    doc = json.loads("\n".join(l for l in three.read_text().splitlines() if not l.strip().startswith("//")))
    doc["state"]["dephase"] = True
    inc = write_config(tmp, "incoherent.json", doc)
    run("tpm", "--config", inc, "--out", tmp / "inc")
    run("quasiprob", "--config", inc, "--out", tmp / "inc")
    tpm = (tmp / "inc" / "tpm.csv").read_bytes()
    files = sorted((tmp / "inc").glob("quasiprob_*.csv"))
    check("incoherent quasiprob files equal tpm", len(files) == 6 and all(f.read_bytes() == tpm for f in files))

    # resolved matrices re-ingested reproduce the analysis
    for cmd, outputs in [("quasiprob", ["quasiprob_0.csv", "quasiprob_3.csv", "quasiprob_5.csv"]),
                         ("charfn", ["charfn.csv"]), ("fluctuation", ["fluctuation.csv", "fluctuation_coherence.csv"]),
                         ("entropy-production", ["entropy_production.csv"])]:
        first = tmp / ("rt_" + cmd)
        run(cmd, "--config", three, "--out", first)
        summary = json.loads((first / (cmd.replace("-", "_") + ".json")).read_text())
        cfg = write_config(tmp, "rt_" + cmd + ".json", summary["resolved_config"])
        again = tmp / ("rt2_" + cmd)
        r = run(cmd, "--config", cfg, "--out", again)
        worst = max(max_numeric_diff(first / o, again / o) for o in outputs) if r.returncode == 0 else math.inf
        check(f"{cmd} round-trip within 1e-12", worst <= 1e-12, f"max diff {worst} {r.stderr}")

    # overrides
    r = run("quasiprob", "--config", three, "--q", "0.25,0.75", "--out", tmp / "ov")
    s = json.loads((tmp / "ov" / "quasiprob.json").read_text())
    check("--q override", r.returncode == 0 and [e["q"] for e in s["results"]] == [0.25, 0.75])
    r = run("second-law", "--beta", "2", "--out", tmp / "beta")
    s = json.loads((tmp / "beta" / "second_law.json").read_text())
    check("--beta override reaches the state", r.returncode == 0 and abs(s["results"]["gap"]) < 1e-10,
          r.stderr)

    # a little of the physics through the front end
    summary = json.loads((tmp / "qubit-demo_a" / "qubit_demo.json").read_text())
    sudden = [c for c in summary["results"] if c["sudden"]]
    check("qubit-demo sudden column equals one",
          len(sudden) == 1 and abs(sudden[0]["min"] - 1) < 1e-9 and abs(sudden[0]["max"] - 1) < 1e-9)
    rows = read_rows(tmp / "qubit-demo_a" / "fig1.csv")
    check("qubit-demo table covers the grids", rows[0] == ["tau_omega0", "sudden", "q", "value", "rhs"]
          and len(rows) == 1 + 11 * 21)

    # exit codes and diagnostics
    def expect(label, code, needle, *args):
        r = run(*args, "--out", tmp / "err")
        check(label, r.returncode == code and needle in r.stderr, f"exit {r.returncode}: {r.stderr.strip()}")

    expect("syntax error names the line", 2, "line 3",
           "tpm", "--config", write_config(tmp, "bad1.json", '{\n  "beta": 1,\n  "schedule": {]\n}'))
    expect("unknown field is named", 2, "schedule.omgea0", "tpm", "--config",
           write_config(tmp, "bad2.json", {"schedule": {"type": "qubit_example", "omgea0": 1},
                                           "state": {"type": "coherent_gibbs"}}))
    expect("non-Hermitian matrix is named", 2, "schedule.H", "tpm", "--config",
           write_config(tmp, "bad3.json", {"schedule": {"type": "constant", "H": [[0, 1], [2, 0]]},
                                           "state": {"type": "gibbs"}}))
    expect("ragged matrix row is named", 2, "state.rho[1]", "tpm", "--config",
           write_config(tmp, "bad4.json", {"schedule": {"type": "constant", "H": [[0, 1], [1, 0]]},
                                           "state": {"type": "matrix", "rho": [[1, 0], [0]]}}))
    expect("dimension mismatch", 2, "dim", "tpm", "--config",
           write_config(tmp, "bad5.json", {"dim": 3, "schedule": {"type": "constant", "H": [[0, 1], [1, 0]]},
                                           "state": {"type": "gibbs"}}))
    expect("missing file", 2, "cannot open", "tpm", "--config", tmp / "nope.json")
    expect("non-thermal populations", 3, "thermal", "second-law", "--config",
           write_config(tmp, "pre.json", {"schedule": {"type": "qubit_example"},
                                          "state": {"type": "qubit", "p": 0.4, "c": 0.1}}))
    expect("propagator non-convergence", 4, "residual", "tpm", "--config",
           write_config(tmp, "conv.json", {"schedule": {"type": "qubit_example"},
                                           "state": {"type": "coherent_gibbs"},
                                           "propagator": {"tolerance": 1e-30, "max_refinements": 2}}))
    r = run("tpm", "--bogus")
    check("unknown flag is a usage error", r.returncode == 2)

    r = run("selftest", "--out", tmp / "self")
    s = json.loads((tmp / "self" / "selftest.json").read_text()) if r.returncode == 0 else {}
    check("selftest passes", r.returncode == 0 and s.get("failed") == 0 and s.get("passed") == 10, r.stdout)

print(f"{len(failures)} failed")
sys.exit(1 if failures else 0)
