#!/usr/bin/env python3
"""Brute-force oracle for scenarios/worked_sl2.scn.

The scenario uses constant sl(2) data, w0 = 0 and w1 = E dx + F dy + H dz, so
every form is a dictionary from increasing index tuples to 2x2 matrices of
Fractions and the wedge product is computed term by term from permutation
signs. No code is shared with the C++ library.

    oracle_worked_sl2.py                 print the golden JSON
    oracle_worked_sl2.py --check FILE    exit 1 unless FILE equals the output
    oracle_worked_sl2.py --cli CSBF SCN  exit 1 unless the CLI reports the same values
"""

import argparse
import json
import subprocess
import sys
from fractions import Fraction
from itertools import product

NAMES = ("dx", "dy", "dz")

E = ((0, 1), (0, 0))
F = ((0, 0), (1, 0))
H = ((1, 0), (0, -1))
ZERO = ((0, 0), (0, 0))


def mat(m):
    return tuple(tuple(Fraction(v) for v in row) for row in m)


def mat_add(a, b):
    return tuple(tuple(a[i][j] + b[i][j] for j in range(2)) for i in range(2))


def mat_scale(c, a):
    return tuple(tuple(c * a[i][j] for j in range(2)) for i in range(2))


def mat_mul(a, b):
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(2)) for j in range(2)) for i in range(2))


def trace(a):
    return a[0][0] + a[1][1]


def sort_sign(indices):
    """Sign of the permutation sorting indices, or 0 on a repeated index."""
    if len(set(indices)) != len(indices):
        return 0, None
    seq = list(indices)
    sign = 1
    for i in range(len(seq)):
        for j in range(len(seq) - 1 - i):
            if seq[j] > seq[j + 1]:
                seq[j], seq[j + 1] = seq[j + 1], seq[j]
                sign = -sign
    return sign, tuple(seq)


def wedge(a, b, mul):
    out = {}
    for (ia, ca), (ib, cb) in product(a.items(), b.items()):
        sign, key = sort_sign(ia + ib)
        if sign == 0:
            continue
        term = mul(ca, cb)
        out[key] = add(out[key], scale(sign, term)) if key in out else scale(sign, term)
    return out


def add(x, y):
    return x + y if isinstance(x, Fraction) else mat_add(x, y)


def scale(c, x):
    return c * x if isinstance(x, Fraction) else mat_scale(Fraction(c), x)


def form_add(a, b):
    out = dict(a)
    for k, v in b.items():
        out[k] = add(out[k], v) if k in out else v
    return out


def form_scale(c, a):
    return {k: scale(c, v) for k, v in a.items()}


def form_trace(a):
    return {k: trace(v) for k, v in a.items()}


def fmt(form):
    terms = [(k, v) for k, v in sorted(form.items(), key=lambda kv: (len(kv[0]), kv[0])) if v != 0]
    if not terms:
        return "0"
    return " + ".join(f"{v} {'^'.join(NAMES[i] for i in k)}" for k, v in terms)


def compute():
    # a = w1 - w0 with w0 = 0; d of constant forms vanishes, so the curvature
    # of w0 and D0 a are both zero and only the cubic term is left. The
    # general expression is still assembled to keep the oracle honest.
    alpha = {(0,): mat(E), (1,): mat(F), (2,): mat(H)}
    w0 = {}
    omega0 = wedge(w0, w0, mat_mul)  # d(w0) = 0
    d0_alpha = form_add(wedge(w0, alpha, mat_mul), wedge(alpha, w0, mat_mul))  # d(alpha) = 0
    aa = wedge(alpha, alpha, mat_mul)
    aaa = wedge(aa, alpha, mat_mul)
    body = form_add(
        form_add(form_scale(2, wedge(omega0, alpha, mat_mul)), wedge(d0_alpha, alpha, mat_mul)),
        form_scale(Fraction(2, 3), aaa),
    )
    q = form_trace(body)
    chi = mat(H)
    u_chi = form_trace({k: mat_mul(v, chi) for k, v in alpha.items()})
    return {"Q": fmt(q), "Uchi": fmt(u_chi)}


def render(values):
    return json.dumps(values, indent=2, sort_keys=True) + "\n"


def main():
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--check", metavar="FILE", help="compare against a committed golden file")
    parser.add_argument("--cli", nargs=2, metavar=("CSBF", "SCENARIO"), help="compare against the CLI's report")
    args = parser.parse_args()

    values = compute()
    text = render(values)
    if args.check:
        with open(args.check, encoding="utf-8") as f:
            committed = f.read()
        if committed != text:
            sys.stderr.write(f"golden {args.check} differs from the oracle:\n{text}")
            return 1
        print("golden matches oracle")
        return 0
    if args.cli:
        csbf, scenario = args.cli
        run = subprocess.run([csbf, "scenario", scenario, "--format", "json", "--no-timing"],
                             capture_output=True, text=True, check=False)
        if run.returncode != 0:
            sys.stderr.write(run.stdout + run.stderr)
            return 1
        reported = {v["name"]: v["value"] for v in json.loads(run.stdout).get("values", [])}
        bad = [k for k in values if reported.get(k) != values[k]]
        for k in bad:
            sys.stderr.write(f"{k}: oracle {values[k]!r}, cli {reported.get(k)!r}\n")
        if not bad:
            print("cli matches oracle: " + ", ".join(f"{k} = {v}" for k, v in sorted(values.items())))
        return 1 if bad else 0
    sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
