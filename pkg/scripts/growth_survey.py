#!/usr/bin/env python3
"""Emit generating-set growth CSVs for a batch of algebra files.

Writes one CSV per input to --out-dir (default: print to stdout with a
header comment per file).  Exact sizes where the search budget allows,
greedy upper bounds past it; the mode column records which.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from genpow import growth_profile, load_algebra


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("files", nargs="*", type=Path)
    parser.add_argument("--n-max", type=int, default=4)
    parser.add_argument("--mode", choices=("exact", "greedy"), default="exact")
    parser.add_argument("--out-dir", type=Path, default=None)
    args = parser.parse_args()
    files = args.files
    if not files:
        root = Path(__file__).resolve().parent.parent / "algebras"
        files = sorted(root.glob("*.json"))
    if not files:
        print("no algebra files found", file=sys.stderr)
        return 1
    for path in files:
        profile = growth_profile(load_algebra(path), args.n_max, mode=args.mode)
        if profile.note:
            print(f"{path.name}: {profile.note}", file=sys.stderr)
        if args.out_dir:
            args.out_dir.mkdir(parents=True, exist_ok=True)
            target = args.out_dir / (path.stem + "_growth.csv")
            target.write_text(profile.to_csv(), encoding="utf-8")
            print(f"wrote {target}", file=sys.stderr)
        else:
            print(f"# {path.name}")
            sys.stdout.write(profile.to_csv())
    return 0


if __name__ == "__main__":
    sys.exit(main())
