#!/usr/bin/env python3
"""Smoke test for the xmodcat_py extension module.

Build the module first:

    cargo build -p xmodcat-py            # or --release

then run:

    python3 python/smoke_test.py
"""

import ctypes
import json
import pathlib
import shutil
import sys
import sysconfig
import tempfile


def load_module():
    root = pathlib.Path(__file__).resolve().parent.parent
    candidates = [
        root / "target" / profile / name
        for profile in ("release", "debug")
        for name in ("libxmodcat_py.so", "xmodcat_py.so", "libxmodcat_py.dylib")
    ]
    built = next((p for p in candidates if p.exists()), None)
    if built is None:
        sys.exit("build the extension first: cargo build -p xmodcat-py")
    tmp = pathlib.Path(tempfile.mkdtemp(prefix="xmodcat_py_"))
    suffix = sysconfig.get_config_var("EXT_SUFFIX") or ".so"
    target = tmp / f"xmodcat_py{suffix}"
    shutil.copyfile(built, target)
    sys.path.insert(0, str(tmp))
    import xmodcat_py

    return xmodcat_py


def check(label, condition):
    status = "ok" if condition else "FAIL"
    print(f"  {label}: {status}")
    if not condition:
        raise SystemExit(f"smoke test failed at: {label}")


def main():
    xm = load_module()
    print("groups")
    s3 = xm.Group.from_permutations(3, [[2, 3, 1], [2, 1, 3]])
    check("S3 has order 6", s3.order() == 6)
    check("S3 is nonabelian", not s3.is_abelian())
    check("S3 derived subgroup has order 3", len(s3.derived_subgroup()) == 3)
    k4 = xm.Group.abelian([2, 2])
    check("Klein four invariants", k4.abelian_invariants() == [2, 2])
    d4 = xm.Group.dihedral(4)
    check("D4 has order 8", d4.order() == 8)

    print("crossed modules and cat1-groups")
    x = xm.CrossedModule.conjugation(s3)
    c1 = x.to_cat1()
    check("cat1-group of (S3, S3, id) has order 36", c1.order() == 36)
    back = c1.to_crossed_module()
    check("round trip is isomorphic", xm.isomorphic(x, back))
    point = xm.CrossedModule.point_module(k4)
    check("(K4, 1, 0) is abelian", point.is_abelian())

    print("smith normal form")
    u, d, v = xm.snf([[2, 4], [6, 8]])
    check("diagonal is (2, 4)", (d[0][0], d[1][1]) == (2, 4))
    check("off-diagonal vanishes", d[0][1] == 0 and d[1][0] == 0)

    print("multiplier oracle")
    check("H2(Z/2 + Z/2) = Z/2", xm.h2([2, 2]) == "Z/2")
    check("H2(Z/6) = 0", xm.h2([6]) == "0")

    print("non-balanced certificate")
    cert = xm.certify([2, 2], 2)
    check("ker j = Z/2", cert["ker_j"] == "Z/2")
    check("N/[T,N] = Z^2 + Z/2", cert["n_mod_tn"] == "Z^2 + Z/2")
    check("schreier count = 5", cert["schreier_count"] == 5)
    check("verdict", cert["verdict"] == "J_NOT_INJECTIVE")
    check("witness has order 2", cert["witness"]["order"] == 2)
    cyc = xm.certify([7], 1)
    check("cyclic control is injective", cyc["verdict"] == "J_INJECTIVE" and cyc["witness"] is None)
    parsed = json.loads(xm.certify_json([2, 2], 2))
    check("json certificate agrees", parsed["ker_j"] == "Z/2")

    print("all smoke tests passed")


if __name__ == "__main__":
    main()
