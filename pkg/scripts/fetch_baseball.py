#!/usr/bin/env python3
"""Fetch the 1986/87 baseball hitters dataset and write data/hitters.csv.

The file is the classic "Hitters" table distributed with the ISLR book and
the StatLib 1988 ASA graphics exposition. This script downloads the CSV,
drops the rows with a missing salary (322 -> 263 players), keeps the 16
numeric predictor columns plus the salary response, and writes a plain CSV
that `simpca ... --response salary` can ingest directly.

Run it anywhere with general network access, then copy the output into
data/ (the sandboxed test environment only reaches a package mirror, which
is why the acceptance test for this dataset skips when the file is absent).
"""

import argparse
import csv
import io
import os
import urllib.request

URL = "https://www.statlearning.com/s/Hitters.csv"

NUMERIC = [
    "AtBat", "Hits", "HmRun", "Runs", "RBI", "Walks", "Years",
    "CAtBat", "CHits", "CHmRun", "CRuns", "CRBI", "CWalks",
    "PutOuts", "Assists", "Errors",
]


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--url", default=URL)
    parser.add_argument(
        "--out",
        default=os.path.join(
            os.path.dirname(__file__), os.pardir, "data", "hitters.csv"
        ),
    )
    args = parser.parse_args()

    with urllib.request.urlopen(args.url) as resp:
        text = resp.read().decode("utf-8")
    rows = list(csv.DictReader(io.StringIO(text)))
    kept = [r for r in rows if r.get("Salary", "").strip() not in ("", "NA")]
    print(f"read {len(rows)} rows, kept {len(kept)} with a salary")

    header = [c.lower() for c in NUMERIC] + ["salary"]
    with open(args.out, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for r in kept:
            writer.writerow([r[c] for c in NUMERIC] + [r["Salary"]])
    print(f"wrote {args.out} ({len(kept)} x {len(header)})")


if __name__ == "__main__":
    main()
