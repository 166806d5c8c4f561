#!/usr/bin/env python3
"""Rebuild the MovieLens ml-100k text files (u.user, u.item, u.data).

The GroupLens download is the canonical source. When it is unreachable, the
same tables ship inside the pytorch-widedeep wheel as parquet files; this
script downloads that wheel (no dependencies) and writes the three files in
the original ml-100k layout.

Usage: extract_ml100k.py OUT_DIR [--wheel PATH]
"""
import argparse
import glob
import math
import os
import subprocess
import sys
import tempfile
import zipfile

import pandas as pd

PREFIX = "pytorch_widedeep/datasets/data/MovieLens100k_"


def fetch_wheel(workdir):
    subprocess.run([sys.executable, "-m", "pip", "download", "--no-deps", "-q",
                    "pytorch-widedeep==1.7.0", "-d", workdir], check=True)
    return glob.glob(os.path.join(workdir, "pytorch_widedeep-*.whl"))[0]


def cell(v):
    if v is None or (isinstance(v, float) and math.isnan(v)):
        return ""
    return str(v)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("out_dir")
    ap.add_argument("--wheel")
    args = ap.parse_args()
    os.makedirs(args.out_dir, exist_ok=True)
    with tempfile.TemporaryDirectory() as tmp:
        wheel = args.wheel or fetch_wheel(tmp)
        z = zipfile.ZipFile(wheel)
        frames = {}
        for name in ("users", "items", "data"):
            member = PREFIX + name + ".parquet.brotli"
            z.extract(member, tmp)
            frames[name] = pd.read_parquet(os.path.join(tmp, member))

    with open(os.path.join(args.out_dir, "u.user"), "w", encoding="latin-1") as f:
        for r in frames["users"].itertuples(index=False):
            f.write("|".join(cell(v) for v in r) + "\n")
    with open(os.path.join(args.out_dir, "u.item"), "w", encoding="latin-1",
              errors="replace") as f:
        for r in frames["items"].itertuples(index=False):
            f.write("|".join(cell(v) for v in r) + "\n")
    with open(os.path.join(args.out_dir, "u.data"), "w") as f:
        for r in frames["data"].itertuples(index=False):
            f.write("\t".join(str(int(v)) for v in r) + "\n")
    print("wrote ml-100k files to", args.out_dir)


if __name__ == "__main__":
    main()
