#!/usr/bin/env python3
"""Regenerates the shipped field tables under data/.

Requires cypari2 (PARI/GP). Not needed to build or test the C++ code; the
generated files are committed.  Class numbers and units come from bnfinit
followed by bnfcertify, so the recorded h, h_plus and unit generators are
unconditional.

Usage: python3 data/curate_fields.py
"""
import json
import os

import cypari2

pari = cypari2.Pari()
pari.allocatemem(2 * 10**9)

HERE = os.path.dirname(os.path.abspath(__file__))

# Defining polynomials used for named fields instead of the reduced ones.
NAMED = {
    1600: "x^4 - 6*x^2 + 4",
    2048: "x^4 - 4*x^2 + 2",
    2624: "x^4 - 2*x^3 - 3*x^2 + 2*x + 1",
    7168: "x^4 - 6*x^2 + 7",
    10816: "x^4 - 2*x^3 - 9*x^2 + 10*x - 1",
    18432: "x^4 - 12*x^2 + 18",
    51200: "x^4 - 20*x^2 + 50",
}


def quartic_sqrt2_fields(max_disc):
    """All totally real quartic fields containing sqrt(2) up to max_disc."""
    seen = {}
    # K = Q(sqrt2)(sqrt(delta)) with delta = a + b sqrt2 totally positive and
    # balanced modulo unit squares; coordinates up to 400 cover disc <= 3e5.
    for a in range(1, 400):
        for b in range(-300, 301):
            if a * a - 2 * b * b <= 0:
                continue
            f = pari(f"x^4-{2*a}*x^2+{a*a-2*b*b}")
            if not pari.polisirreducible(f):
                continue
            g = pari.polredabs(f)
            key = str(g)
            if key in seen:
                continue
            d = int(pari.nfdisc(g))
            if d <= max_disc:
                seen[key] = d
    return sorted((d, g) for g, d in seen.items())


def coords(nf, alg):
    v = pari.nfalgtobasis(nf, alg)
    return [int(c) for c in v]


def record(label, poly, sqrt2_choice=0):
    f = pari(poly)
    fy = pari.subst(f, "x", pari("y"))
    nf = pari.nfinit(fy)
    bnf = pari.bnfinit(fy, 1)
    assert int(pari.bnfcertify(bnf)) == 1
    d = int(pari.poldegree(f))
    zk = nf.nf_get_zk()  # integral basis as polynomials in y
    basis = []
    for b in zk:
        row = []
        for j in range(d):
            c = pari.polcoef(b, j, "y")
            row.append(str(pari.numerator(c)) + "/" + str(pari.denominator(c)))
        basis.append(row)
    h = int(bnf[7][0][0])
    h_plus = int(pari.bnfnarrow(bnf)[0])
    units = [coords(nf, bnf[7][3][1])]  # torsion generator, -1
    for u in bnf[7][4]:
        units.append(coords(nf, u))
    rec = {
        "label": label,
        "degree": d,
        "poly": [int(pari.polcoef(f, j)) for j in range(d + 1)],
        "basis": basis,
        "disc": int(nf[2]),
        "h": h,
        "h_plus": h_plus,
        "units": units,
    }
    if d % 2 == 0 and d > 1:
        roots = pari.nfroots(nf, pari("x^2-2"))
        if len(roots) == 2:
            cands = sorted((coords(nf, r) for r in roots), reverse=True)
            rec["sqrt2"] = cands[sqrt2_choice]
    return rec


def write_jsonl(path, recs):
    with open(path, "w") as out:
        for r in recs:
            out.write(json.dumps(r, separators=(",", ":")) + "\n")


def main():
    fields = quartic_sqrt2_fields(260000)
    counters = {}
    small, extra = [], []
    for d, g in fields:
        counters[d] = counters.get(d, 0) + 1
        poly = NAMED.get(d, str(g))
        rec = record(f"4.4.{d}.{counters[d]}", poly)
        (small if d <= 20000 else extra).append(rec)
    write_jsonl(os.path.join(HERE, "quartic_sqrt2_20000.jsonl"), small)
    write_jsonl(os.path.join(HERE, "quartic_sqrt2_260000.jsonl"), small + extra)

    singles = {
        "q.json": ("1.1.1.1", "x"),
        "qsqrt2.json": ("2.2.8.1", "x^2 - 2"),
        "qsqrt3.json": ("2.2.12.1", "x^2 - 3"),
        "qsqrt5.json": ("2.2.5.1", "x^2 - x - 1"),
        "k1600.json": ("4.4.1600.1", NAMED[1600]),
        "k2048.json": ("4.4.2048.1", NAMED[2048]),
        "k2624.json": ("4.4.2624.1", NAMED[2624]),
        "k7168.json": ("4.4.7168.1", NAMED[7168]),
        "k51200.json": ("4.4.51200.1", NAMED[51200]),
    }
    os.makedirs(os.path.join(HERE, "fields"), exist_ok=True)
    for name, (label, poly) in singles.items():
        rec = record(label, poly)
        with open(os.path.join(HERE, "fields", name), "w") as out:
            out.write(json.dumps(rec, separators=(",", ":")) + "\n")
    # Same abstract field as K7168, with sqrt2 chosen so that 3 - sqrt2 is a
    # square (the other choice makes 3 + sqrt2 the square).
    for choice in (0, 1):
        rec = record("4.4.7168.1", NAMED[7168], sqrt2_choice=choice)
        nf = pari.nfinit(pari.subst(pari(NAMED[7168]), "x", pari("y")))
        s2 = pari.nfbasistoalg(nf, pari.Col(rec["sqrt2"]))
        if len(pari.nfroots(nf, pari("x^2") - (3 - s2))) > 0:
            with open(os.path.join(HERE, "fields", "q_sqrt_3_minus_sqrt2.json"), "w") as out:
                out.write(json.dumps(rec, separators=(",", ":")) + "\n")
            break


if __name__ == "__main__":
    main()
