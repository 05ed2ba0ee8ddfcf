"""Compare the three Q_F membership deciders on random graded fractions.

Each fraction is p/q with q a product of known irreducibles, so every
denominator prime can be flagged exactly (for a torus, (q)* is nonzero iff q
is homogeneous).  The torus test, the Krull-flag test and the colon-witness
search must agree; disagreements are printed and make the exit code 1.

    python scripts/qf_cross_oracle.py --samples 500 --seed 7
"""

import argparse
import random
import sys
from collections import Counter
from dataclasses import dataclass

from invfact import (
    FieldDescriptor,
    Grading,
    HeightOnePrime,
    LaurentPoly,
    RationalFunction,
    Ring,
    colon_witness_search,
    qf_member_krull,
    qf_member_torus,
    reduce,
)
from invfact.eqfrac import covers_denominator
from invfact.laurent import in_ring, is_homogeneous

POOLS = (
    (("x", "y"), [[1, 1]], ["x", "y", "x + y", "x - 2*y", "x + 1", "y^2 + x", "x*y + 1"]),
    (("x", "y"), [[1, 2]], ["x", "y", "x^2 + y", "x^2 - 3*y", "x + y", "y + 1"]),
    (("x", "y", "z"), [[1, 1, 1]], ["x", "z", "x + y + z", "x*y - z^2", "x + 1", "y*z + x"]),
)


@dataclass
class CrossConfig:
    samples: int = 200
    seed: int = 0
    degree_bound: int = 4
    verbose: bool = False


def sample(rng, rings):
    k = rng.randrange(len(POOLS))
    names, weights, texts = POOLS[k]
    if k not in rings:
        R = Ring(FieldDescriptor.parse("Q"), names, laurent=False)
        rings[k] = (R, [R.parse(t) for t in texts])
    R, pool = rings[k]
    n = len(names)
    num = LaurentPoly(R, {})
    while num.is_zero():
        terms = {}
        for _ in range(rng.randint(1, 4)):
            e = [0] * n
            for _ in range(rng.randint(0, 4)):
                e[rng.randrange(n)] += 1
            terms[tuple(e)] = rng.choice([-2, -1, 1, 2])
        num = LaurentPoly(R, terms)
    den = R.one
    for q in rng.sample(pool, rng.randint(1, 2)):
        den = den * q
    return reduce(RationalFunction(num, den)), Grading(weights), pool


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--samples", type=int, default=CrossConfig.samples)
    ap.add_argument("--seed", type=int, default=CrossConfig.seed)
    ap.add_argument("--degree-bound", type=int, default=CrossConfig.degree_bound)
    ap.add_argument("-v", "--verbose", action="store_true")
    cfg = CrossConfig(**vars(ap.parse_args(argv)))

    rng, rings, tally, bad = random.Random(cfg.seed), {}, Counter(), 0
    for _ in range(cfg.samples):
        f, grading, pool = sample(rng, rings)
        torus = qf_member_torus(f, grading)
        primes = [HeightOnePrime(q, is_homogeneous(q, grading)) for q in pool]
        krull = qf_member_krull(f, primes) if covers_denominator(f, primes) else None
        h = colon_witness_search(f, grading, cfg.degree_bound)
        colon = None if h is None else bool(is_homogeneous(h, grading) and in_ring(h * f))
        tally["member" if torus else "non-member"] += 1
        tally["colon conclusive"] += colon is not None
        ok = krull in (None, torus) and colon in (None, torus)
        if not ok or cfg.verbose:
            print(f"{'ok  ' if ok else 'BAD '} {f}: torus={torus} krull={krull} colon={colon}")
        bad += not ok
    print(", ".join(f"{k}: {v}" for k, v in sorted(tally.items())), f"disagreements: {bad}")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
