"""Generate a table of Riemann zeta zero ordinates for ingestion.

Writes one positive decimal ordinate per line, strictly increasing,
with '#' comment lines, matching the format read by qtorus.load_zero_table.
Resumable: re-running with the same --out appends after the last line written.

Requires mpmath (not a runtime dependency of the package itself).
"""

import argparse
import os
import sys
import time

import mpmath as mp


def existing_count(path):
    # lines already present, ignoring comments and blanks
    if not os.path.exists(path):
        return 0
    n = 0
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if line and not line.startswith("#"):
                n += 1
    return n


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=10000)
    ap.add_argument("--out", required=True)
    ap.add_argument("--dps", type=int, default=20)
    ap.add_argument("--decimals", type=int, default=13)
    ap.add_argument("--validate", type=int, default=0, metavar="K",
                    help="check |zeta(1/2 + i tau)| < 1e-6 for the first K entries")
    args = ap.parse_args()

    mp.mp.dps = args.dps
    start = existing_count(args.out) + 1
    if start > args.count:
        print("table already has %d entries" % (start - 1))
    else:
        mode = "a" if start > 1 else "w"
        with open(args.out, mode) as fh:
            if mode == "w":
                fh.write("# imaginary parts of the first %d nontrivial zeros "
                         "of the Riemann zeta function\n" % args.count)
                fh.write("# computed with mpmath.zetazero, %d decimal digits "
                         "working precision\n" % args.dps)
            t0 = time.time()
            for n in range(start, args.count + 1):
                tau = mp.zetazero(n).imag
                fh.write(mp.nstr(tau, args.decimals + 5, strip_zeros=False))
                fh.write("\n")
                if n % 200 == 0:
                    fh.flush()
                    rate = (n - start + 1) / (time.time() - t0)
                    sys.stderr.write("  %d/%d (%.1f zeros/s)\n"
                                     % (n, args.count, rate))
        print("wrote %s" % args.out)

    if args.validate:
        bad = 0
        with open(args.out) as fh:
            taus = [line.strip() for line in fh
                    if line.strip() and not line.lstrip().startswith("#")]
        for tau in taus[:args.validate]:
            r = abs(mp.zeta(mp.mpc("0.5", tau)))
            if r >= 1e-6:
                print("FAIL tau=%s |zeta|=%s" % (tau, mp.nstr(r, 5)))
                bad += 1
        print("validated first %d entries, %d failures"
              % (min(args.validate, len(taus)), bad))
        if bad:
            sys.exit(2)


if __name__ == "__main__":
    main()
