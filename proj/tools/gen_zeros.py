#!/usr/bin/env python3
"""Write the first N ordinates of nontrivial zeta zeros to a text table.

Uses Arb (python-flint), which isolates each zero rigorously, so the table is
complete up to its last ordinate. Progress goes to OUT.partial so an
interrupted run resumes. Usage: gen_zeros.py OUT [N]
"""
import os
import sys

from flint import acb, ctx


def main():
    if len(sys.argv) < 2:
        print("usage: gen_zeros.py OUT [N]", file=sys.stderr)
        return 2
    out = sys.argv[1]
    total = int(sys.argv[2]) if len(sys.argv) > 2 else 100000
    partial = out + ".partial"
    ctx.prec = 80
    chunk = 1000
    done = 0
    if os.path.exists(partial):
        with open(partial) as f:
            done = sum(1 for _ in f)
        done -= done % chunk
        with open(partial) as f:
            keep = [next(f) for _ in range(done)]
        with open(partial, "w") as f:
            f.writelines(keep)
    n = done + 1
    with open(partial, "a") as f:
        while n <= total:
            k = min(chunk, total - n + 1)
            rows = [z.imag.mid().str(20, radius=False) for z in acb.zeta_zeros(n, k)]
            f.write("\n".join(rows) + "\n")
            f.flush()
            n += k
            print(f"{n - 1}/{total}", file=sys.stderr, flush=True)
    with open(partial) as f:
        rows = [line.strip() for line in f if line.strip()]
    with open(out, "w") as f:
        f.write("# nontrivial zeta zeros, ordinates gamma > 0, ascending\n")
        f.write(f"# count {len(rows)}\n")
        f.write(f"# height {rows[-1]}\n")
        for r in rows:
            f.write(r + "\n")
    os.remove(partial)
    return 0


if __name__ == "__main__":
    sys.exit(main())
