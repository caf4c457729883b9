#!/usr/bin/env python3
"""Smoke checks for the branchlie command-line tool.

Usage: cli_checks.py /path/to/branchlie

Exercises every subcommand end to end: exit codes, JSON schema shape,
TSV contracts, determinism of buffered output, and a handful of frozen
values that the unit suite pins down independently.
"""
import json
import os
import subprocess
import sys

BIN = sys.argv[1] if len(sys.argv) > 1 else "./build/branchlie"
failures = []


def run(*args, env_extra=None, expect=0):
    env = dict(os.environ)
    if env_extra:
        env.update(env_extra)
    r = subprocess.run([BIN, *args], capture_output=True, text=True, env=env)
    if r.returncode != expect:
        raise AssertionError(
            f"{' '.join(args)}: exit {r.returncode}, expected {expect}\n"
            f"stdout: {r.stdout[:400]}\nstderr: {r.stderr[:400]}"
        )
    return r


def jrun(*args, env_extra=None, expect=0):
    return json.loads(run(*args, env_extra=env_extra, expect=expect).stdout)


def check(name, fn):
    try:
        fn()
        print(f"[PASS] {name}")
    except AssertionError as e:
        failures.append(name)
        print(f"[FAIL] {name}: {e}")
    except Exception as e:  # noqa: BLE001 - report and continue
        failures.append(name)
        print(f"[FAIL] {name}: {type(e).__name__}: {e}")


def require(d, key, typ):
    assert key in d, f"missing key {key!r} in {sorted(d)}"
    assert isinstance(d[key], typ), f"{key!r} has type {type(d[key]).__name__}"


# -- classify ---------------------------------------------------------------

def t_classify_two():
    d = jrun("classify", "--rank", "3", "--p", "3", "--lambda", "1,1,0")
    require(d, "schema", str)
    assert d["schema"] == "branchlie/1"
    require(d, "outcome", str)
    require(d, "fired_condition", str)
    require(d, "completely_reducible", bool)
    require(d, "factors", list)
    assert d["outcome"] == "TwoFactors"
    assert d["fired_condition"] == "Thm1_case3"
    assert d["completely_reducible"] is True
    assert [f["coords"] for f in d["factors"]] == [[1, 1, 1], [2, 0, 0]]


def t_classify_spin():
    d = jrun("classify", "--rank", "3", "--p", "5", "--lambda", "0,0,1")
    assert d["outcome"] == "TwoFactors" and d["fired_condition"] == "Thm1_case2"


def t_classify_char0():
    d = jrun("classify", "--rank", "3", "--p", "0", "--lambda", "0,1,0")
    assert d["outcome"] == "TwoFactors" and d["fired_condition"] == "Thm1_case1"


def t_classify_unrestricted_rejected():
    run("classify", "--rank", "3", "--p", "5", "--lambda", "5,0,0", expect=2)


def t_classify_bad_rank():
    run("classify", "--rank", "2", "--p", "5", "--lambda", "1,0", expect=2)


def t_classify_general():
    d = jrun("classify", "--rank", "3", "--p", "5", "--lambda", "0,5,0", "--general")
    assert d["outcome"] == "TwoFactors" and d["fired_condition"] == "Cor2_case1"
    assert [f["coords"] for f in d["factors"]] == [[0, 5, 5], [5, 0, 0]]


def t_classify_modes():
    proof = jrun("classify", "--rank", "3", "--p", "2", "--lambda", "2,0,1", "--general")
    literal = jrun("classify", "--rank", "3", "--p", "2", "--lambda", "2,0,1",
                   "--general", "--mode", "literal")
    assert proof["outcome"] == "TwoFactors"
    assert literal["outcome"] == "NotTwo"


# -- decompose --------------------------------------------------------------

def t_decompose():
    d = jrun("decompose", "--rank", "3", "--p", "5", "--lambda", "0,1,0")
    require(d, "module_dim", int)
    require(d, "factors", list)
    require(d, "complete", bool)
    assert d["module_dim"] == 21
    assert d["factor_count"] == 2
    assert sorted(f["dim"] for f in d["factors"]) == [6, 15]
    assert d["complete"] is True


def t_decompose_char0():
    d = jrun("decompose", "--rank", "3", "--p", "0", "--lambda", "1,0,0")
    assert d["module_dim"] == 7
    assert sorted(f["dim"] for f in d["factors"]) == [1, 6]


def t_decompose_budget():
    r = run("decompose", "--rank", "3", "--p", "3", "--lambda", "2,2,0",
            "--height", "1", expect=3)
    d = json.loads(r.stdout)
    assert d["complete"] is False
    assert "budget" in d["note"]


# -- char / mult ------------------------------------------------------------

def t_char():
    r = run("char", "--type", "D", "--rank", "3", "--lambda", "0,1,1", "--p", "5")
    lines = r.stdout.splitlines()
    assert lines[0] == "mu\tmult"
    assert all(len(l.split("\t")) == 2 for l in lines)
    assert lines[-1] == "# dimension\t15"


def t_mult():
    d = jrun("mult", "--type", "B", "--rank", "3", "--lambda", "1,1,0",
             "--mu-delta", "1,2,2", "--p", "5")
    require(d, "weyl_mult", int)
    require(d, "irreducible_mult", int)
    assert d["mu"] == [1, 0, 0]
    assert d["weyl_mult"] == 5
    assert d["irreducible_mult"] == 5


# -- maxvec -----------------------------------------------------------------

def t_maxvec_hit():
    d = jrun("maxvec", "--case", "B_al1lk", "--n", "4", "--k", "3", "--a", "3",
             "--p", "3")
    require(d, "dim", int)
    require(d, "divisibility_holds", bool)
    require(d, "basis", list)
    assert d["dim"] == 1 and d["divisibility_holds"] is True
    assert len(d["basis"]) == 1
    assert len(d["basis"][0]) == len(d["basis_labels"])


def t_maxvec_miss():
    d = jrun("maxvec", "--case", "B_al1lk", "--n", "4", "--k", "3", "--a", "2",
             "--p", "5")
    assert d["dim"] == 0 and d["divisibility_holds"] is False and d["basis"] == []


def t_maxvec_quotient_precondition():
    run("maxvec", "--case", "B_al1l2", "--n", "3", "--a", "2", "--p", "5", expect=2)


# -- table ------------------------------------------------------------------

def t_table():
    r1 = run("table", "--rank", "3", "--primes", "3")
    r2 = run("table", "--rank", "3", "--primes", "3")
    assert r1.stdout == r2.stdout, "table output is not byte-identical across reruns"
    lines = r1.stdout.splitlines()
    assert lines[0] == "n\tp\tlambda\tverdict\tcondition\tomega\tomega_prime"
    assert len(lines) - 1 == 26, f"expected 26 data rows, got {len(lines) - 1}"
    assert all(len(l.split("\t")) == 7 for l in lines)


def t_table_range():
    r = run("table", "--rank", "3..4", "--primes", "3")
    lines = r.stdout.splitlines()[1:]
    assert len(lines) == 26 + 80
    assert {l.split("\t")[0] for l in lines} == {"3", "4"}


# -- verify -----------------------------------------------------------------

def t_verify_chevalley():
    d = jrun("verify", "--suite", "chevalley", "--rank-max", "3")
    require(d, "instances", list)
    require(d, "checked", int)
    require(d, "failures", int)
    assert d["failures"] == 0 and d["ok"] is True
    for inst in d["instances"]:
        require(inst, "type", str)
        require(inst, "rank", int)
        require(inst, "pairs_checked", int)
        require(inst, "violations", int)


def t_verify_table2():
    d = jrun("verify", "--suite", "table2", "--rank-max", "3")
    assert d["failures"] == 0 and d["checked"] > 0


def t_verify_appendix():
    d = jrun("verify", "--suite", "appendix", "--rank-max", "3", "--primes", "3,5")
    assert d["failures"] == 0 and d["checked"] > 0


def t_verify_branching():
    r1 = run("verify", "--suite", "branching", "--primes", "3", "--max-coeff", "1")
    d = json.loads(r1.stdout)
    assert d["failures"] == 0
    assert d["checked"] + d["skipped"] == 7
    r2 = run("verify", "--suite", "branching", "--primes", "3", "--max-coeff", "1",
             env_extra={"BRANCHLIE_THREADS": "3"})
    assert r1.stdout == r2.stdout, "suite output depends on the thread schedule"


def t_verify_unknown_suite():
    run("verify", "--suite", "nonsense", expect=2)


# ---------------------------------------------------------------------------

checks = [(n[2:], f) for n, f in sorted(globals().items()) if n.startswith("t_")]
for name, fn in checks:
    check(name, fn)

print(f"{len(checks) - len(failures)}/{len(checks)} CLI checks passed")
sys.exit(1 if failures else 0)
