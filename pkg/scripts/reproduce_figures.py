"""Write every figure table twice and confirm the two runs agree byte for byte."""

import argparse
import filecmp
import tempfile
from pathlib import Path

from zdaudit.cli import run_command


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="figures")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--config")
    args = ap.parse_args()

    extra = ["--config", args.config] if args.config else []
    run_command(["figures", "--out", args.out, "--seed", str(args.seed), *extra])
    with tempfile.TemporaryDirectory() as tmp:
        run_command(["figures", "--out", tmp, "--seed", str(args.seed), *extra])
        names = sorted(p.name for p in Path(args.out).iterdir())
        _, mismatch, errors = filecmp.cmpfiles(args.out, tmp, names, shallow=False)
    print(f"{len(names)} files, {len(mismatch)} differ, {len(errors)} missing")
    for name in mismatch + errors:
        print("  ", name)


if __name__ == "__main__":
    main()
