#!/usr/bin/env python3
"""Tour of the command line tool on the d4/e8 worked examples.

Each section echoes the command it runs, so the output doubles as a crib
sheet: the three-step reversal with its grid, the e8 cube check, a
seven-move derivation replayed and then re-proved by reversing, and the
translation product identities.
"""

import os
import sys
import tempfile

from monorev.cli import main as monorev
from monorev.derivation import t_expression, verify_translation_product

DOUBLE_TWIST = """\
presentation: d4:new
start: t(1) t(0) s1 t(1) t(0) s1
expect: s1 t(1) t(0) s1 t(1) t(0)
rel translation i=2,j=1 rl @0
rel t_braid i=1,j=1 lr @1
rel t_braid i=0,j=1 rl @3
rel translation i=2,j=1 rl @2
rel t_braid i=2,j=1 lr @0
rel t_braid i=1,j=1 rl @2
rel translation i=2,j=1 lr @1
"""


def run(*argv: str) -> None:
    print(f"$ monorev {' '.join(argv)}")
    code = monorev(list(argv))
    if code != 0:
        sys.exit(f"exit code {code} from: {' '.join(argv)}")
    print()


def main() -> int:
    print("== a reversal that climbs through t(2) ==\n")
    run("reverse", "d4:new", "t(2)^-1 s3 s3")
    run("render", "d4:new", "t(2)^-1 s3 s3")

    print("== the cube condition behind e8 completeness ==\n")
    run("cube", "e8:new", "s7", "t(2)", "s8")

    print("== double twist commutes with s1, three ways ==\n")
    with tempfile.NamedTemporaryFile("w", suffix=".script", delete=False) as fh:
        fh.write(DOUBLE_TWIST)
        path = fh.name
    try:
        run("derive", path)
    finally:
        os.unlink(path)
    run("quotient", "d4:new", "t(1) t(0) s1 t(1) t(0) s1", "s1 t(1) t(0) s1 t(1) t(0)")
    run("oracle", "equal", "d4:new", "--window", "2",
        "t(1) t(0) s1 t(1) t(0) s1", "s1 t(1) t(0) s1 t(1) t(0)")

    print("== translation products collapse in the twist subgroup ==\n")
    for i in range(-3, 5):
        ok = verify_translation_product(i)
        print(f"t({i}) t({i - 1}) = t(1) t(0)   "
              f"[t({i}) = {t_expression(i)}]   {'ok' if ok else 'FAILED'}")
    return 0 if all(verify_translation_product(i) for i in range(-3, 5)) else 1


if __name__ == "__main__":
    raise SystemExit(main())
