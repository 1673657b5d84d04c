#!/usr/bin/env python3
"""Fuzz the stabilizer machinery over random states and print a summary.

For each state: sample an invariant pair and record the worst invariance
residual, and compare the block-counting group dimension against the
lie-algebra nullspace oracle.
"""

import argparse
from collections import Counter

import numpy as np

from uli import (
    group_dimension,
    invariance_structure,
    is_invariant,
    lie_algebra_dimension,
    random_state_with_spectrum,
    sample_invariant_pair,
)


def clustered_spectrum(rng, rank):
    mults = []
    left = rank
    while left:
        k = int(rng.integers(1, left + 1))
        mults.append(k)
        left -= k
    values = [1.0]
    for _ in range(len(mults) - 1):
        values.append(values[-1] * (1.0 - rng.uniform(0.1, 0.5)))
    raw = np.repeat(values, mults)
    return raw / np.sqrt(np.sum(raw**2))


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--states", type=int, default=500)
    parser.add_argument("--pairs-per-state", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--max-dim", type=int, default=6)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    worst_residual = 0.0
    mismatches = 0
    dim_histogram = Counter()

    for _ in range(args.states):
        d1 = int(rng.integers(2, args.max_dim + 1))
        d2 = int(rng.integers(2, args.max_dim + 1))
        rank = int(rng.integers(1, min(d1, d2) + 1))
        state = random_state_with_spectrum(clustered_spectrum(rng, rank), d1, d2, rng)

        structure = invariance_structure(state)
        gdim = group_dimension(structure)
        dim_histogram[gdim] += 1
        if lie_algebra_dimension(state) != gdim:
            mismatches += 1
            print(f"oracle mismatch at d1={d1} d2={d2} rank={rank}")

        for _ in range(args.pairs_per_state):
            pair = sample_invariant_pair(structure, rng)
            worst_residual = max(worst_residual, is_invariant(pair, state).residual)

    print(f"states checked:        {args.states}")
    print(f"pairs per state:       {args.pairs_per_state}")
    print(f"worst residual:        {worst_residual:.3e}")
    print(f"oracle mismatches:     {mismatches}")
    print("group dimension histogram:")
    for dim in sorted(dim_histogram):
        print(f"  dim {dim:3d}: {dim_histogram[dim]}")


if __name__ == "__main__":
    main()
