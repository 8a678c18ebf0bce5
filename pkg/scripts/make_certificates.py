#!/usr/bin/env python3
"""Emit independence certificates for the three stock parents as JSON files.

Example:
    python scripts/make_certificates.py --rank 16 --n 1000 --out certificates/
"""

import argparse
import json
import time
from pathlib import Path

from rackqm import free_quandle, free_rack, independence_certificate, trivial_product


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--rank", type=int, default=16)
    parser.add_argument("--n", type=int, default=1000)
    parser.add_argument("--out", type=Path, default=Path("certificates"))
    args = parser.parse_args()

    parents = {
        "free_rack_ab": free_rack(["a", "b"]),
        "free_quandle_ab": free_quandle(["a", "b"]),
        "trivial_t2_t3": trivial_product({"a": 2, "b": 3}),
    }
    args.out.mkdir(parents=True, exist_ok=True)
    for name, parent in parents.items():
        start = time.perf_counter()
        cert = independence_certificate(parent, args.rank, args.n)
        elapsed = time.perf_counter() - start
        path = args.out / f"{name}_rank{args.rank}.json"
        path.write_text(json.dumps(cert.to_dict(), indent=2) + "\n")
        status = "identity" if cert.verdict == args.rank else "RANK DEFECT"
        print(f"{name}: rank {cert.verdict}/{args.rank} ({status}), "
              f"{elapsed:.2f}s -> {path}")


if __name__ == "__main__":
    main()
