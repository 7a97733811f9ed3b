"""Smoke test for the domcheck extension module.

Builds the cdylib with cargo (unless --lib points at an existing one), copies
it next to a temporary package path as ``domcheck.so`` and exercises the API.

    python3 crates/python/python/smoke_test.py [--release] [--lib PATH]
"""

import argparse
import importlib
import json
import os
import pathlib
import shutil
import subprocess
import sys
import tempfile

CRATE_DIR = pathlib.Path(__file__).resolve().parents[1]
WORKSPACE = CRATE_DIR.parents[1]


def build(release):
    cmd = ["cargo", "build", "-p", "domcheck-py"]
    if release:
        cmd.append("--release")
    env = dict(os.environ, PYO3_BUILD_EXTENSION_MODULE="1")
    subprocess.run(cmd, cwd=WORKSPACE, check=True, env=env)
    profile = "release" if release else "debug"
    for name in ("libdomcheck.so", "libdomcheck.dylib", "domcheck.dll"):
        path = WORKSPACE / "target" / profile / name
        if path.exists():
            return path
    sys.exit("built library not found under target/" + profile)


def load(lib_path):
    tmp = pathlib.Path(tempfile.mkdtemp(prefix="domcheck-py-"))
    suffix = ".pyd" if lib_path.suffix == ".dll" else ".so"
    shutil.copy(lib_path, tmp / ("domcheck" + suffix))
    sys.path.insert(0, str(tmp))
    return importlib.import_module("domcheck")


def run(dc):
    k2 = dc.Graph(2, [(0, 1)])
    assert k2.to_graph6() == "A_"
    assert dc.Graph.from_graph6("A_") == k2
    assert k2.order() == 2 and k2.edges() == [(0, 1)]

    c5 = dc.Graph.family("cycle:5")
    assert c5.neighbors(0) == [1, 4]
    assert c5.closed_neighborhood(0) == [0, 1, 4]
    assert c5.is_dominating([0, 2]) and not c5.is_dominating([0])
    assert dc.gamma(c5) == 2
    assert dc.gamma_roman(c5) == 4
    value, (v0, v1, v2) = dc.gamma_roman(c5, witness=True)
    assert value == len(v1) + 2 * len(v2)
    assert dc.is_roman_dominating(c5, v0, v1, v2)

    petersen = dc.Graph.family("petersen")
    value, witness = dc.gamma(petersen, witness=True)
    assert value == 3 and petersen.is_dominating(witness)

    square = dc.cartesian_product(k2, k2)
    assert square.order() == 4 and square.size() == 4
    assert dc.gamma_roman(square) == 3

    report, trace = dc.audit_pair(k2, k2)
    assert report["product_of_gammas"] == 1
    assert report["gamma_r_product"] == 3
    assert all(report["verdicts"].values())

    result = dc.verify_trace(trace, recheck_optimality=True)
    assert result["passed"], result

    corrupted = json.loads(trace)
    corrupted["f"]["v0"].append(corrupted["f"]["v2"].pop())
    assert not dc.verify_trace(json.dumps(corrupted))["passed"]

    remark = dc.check_remark()
    assert remark["analogue_fails"] and remark["gamma_r_k2_square"] == 3

    try:
        dc.gamma(petersen, max_nodes=0)
    except dc.BudgetExceeded:
        pass
    else:
        raise AssertionError("expected BudgetExceeded")

    try:
        dc.Graph(3, [(0, 0)])
    except ValueError:
        pass
    else:
        raise AssertionError("self-loop accepted")


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--lib", type=pathlib.Path, help="prebuilt extension library")
    parser.add_argument("--release", action="store_true")
    args = parser.parse_args()
    lib = args.lib if args.lib else build(args.release)
    dc = load(lib)
    run(dc)
    print("domcheck", dc.__version__, "python smoke test passed")


if __name__ == "__main__":
    main()
