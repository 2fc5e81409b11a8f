#!/usr/bin/env python3
"""Smoke test for the ncm_py extension module.

Builds nothing itself: expects `cargo build -p ncm-py --release` to have
produced target/release/libncm_py.so, which is copied next to this script
under the importable name ncm_py.so.
"""

import json
import pathlib
import shutil
import sys

HERE = pathlib.Path(__file__).resolve().parent
ROOT = HERE.parent


def stage_module() -> None:
    for profile in ("release", "debug"):
        built = ROOT / "target" / profile / "libncm_py.so"
        if built.exists():
            shutil.copy2(built, HERE / "ncm_py.so")
            return
    sys.exit("libncm_py.so not found; run `cargo build -p ncm-py --release` first")


def main() -> None:
    stage_module()
    sys.path.insert(0, str(HERE))
    import ncm_py

    # Magma arithmetic.
    n2 = ncm_py.Magma("N:2")
    assert n2.card() == 2
    assert n2.unit() == "0"
    assert n2.op("1", "1") == "0"
    assert n2.is_associative()

    # Enumeration matches the closed-form dimension table.
    table = [int(d) for d in ncm_py.dims(2, 5)]
    assert table == [1, 8, 48, 352, 2880]
    for arity in range(1, 5):
        assert len(n2.enumerate(arity)) == table[arity - 1]
    dual = [int(d) for d in ncm_py.dims(2, 4, dual=True)]
    assert dual == [1, 8, 80, 992]

    # Clique composition and JSON round-trip.
    p = n2.clique_from_json('{"arity":2,"arcs":[[1,2,"1"]]}')
    q = n2.clique_from_json('{"arity":3,"arcs":[]}')
    r = p.compose(2, q)
    assert r.arity == 4
    assert r == n2.clique_from_json(r.to_json())

    # Rewrite normal forms preserve evaluation.
    tree = n2.tree_from_json(
        '{"generator":["0","1","0"],'
        '"left":{"generator":["1","0","0"],"left":null,"right":null},'
        '"right":null}'
    )
    nf = tree.normal_form()
    assert nf.is_normal_form()
    assert nf.ev() == tree.ev()

    # Certificates.
    cert = json.loads(ncm_py.koszul("N:2"))
    assert (cert["dimR"], cert["dimRdual"], cert["sum"]) == (80, 48, 128)
    assert ncm_py.relation_rank("N:2") == 80

    conf = json.loads(ncm_py.confluence("N:2", 4))
    assert conf["passed"]
    assert conf["normal_form_counts"] == [1, 8, 48, 352]

    assert json.loads(ncm_py.series(2, order=8))["passed"]

    motzkin = json.loads(ncm_py.construct("MOTZKIN", nmax=7))
    assert motzkin["passed"]
    assert motzkin["dims"] == [1, 1, 2, 4, 9, 21, 51]

    for carrier in ("monoid:N:4", "select:3", "constant"):
        assert json.loads(ncm_py.algebra_check(carrier, samples=25))["passed"], carrier

    print("smoke test passed")


if __name__ == "__main__":
    main()
