"""Scan one parity for Maass eigenvalues and dump roots to JSON."""

import json
import sys
import time

from hejhal import ParitySolver


def main():
    parity = int(sys.argv[1])
    r_lo, r_hi = float(sys.argv[2]), float(sys.argv[3])
    out = sys.argv[4]
    t0 = time.time()
    ps = ParitySolver(parity)
    roots = ps.scan(r_lo, r_hi, step=0.012)
    with open(out, "w") as fh:
        json.dump({"parity": parity, "roots": roots,
                   "range": [r_lo, r_hi], "seconds": time.time() - t0}, fh)
    print(f"parity {parity}: {len(roots)} roots in {time.time()-t0:.0f}s")


if __name__ == "__main__":
    main()
