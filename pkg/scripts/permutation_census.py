"""Census of arity-n normalized matchgates built from a small pair-value alphabet.

Counts how many stay matchgates under every variable permutation, split by
permutable type, and checks the quadruple-product test against brute force.
"""
import argparse
from collections import Counter
from itertools import combinations, product

from matchkit.classification import classify_mp_type, is_permutable_matchgate, is_permutable_matchgate_bruteforce
from matchkit.exactnum import parse_scalar
from matchkit.matchgate import generate_from_pairs


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--arity", type=int, default=4)
    ap.add_argument("--values", default="0,1,-1,i", help="comma-separated pair values")
    ap.add_argument("--brute", action="store_true", help="also run the all-permutations check")
    args = ap.parse_args()
    vals = [parse_scalar(v) for v in args.values.split(",")]
    pairs = list(combinations(range(1, args.arity + 1), 2))
    kinds = Counter()
    total = disagree = 0
    for choice in product(vals, repeat=len(pairs)):
        F = generate_from_pairs(args.arity, dict(zip(pairs, choice)))
        total += 1
        fast = bool(is_permutable_matchgate(F))
        if args.brute and fast != is_permutable_matchgate_bruteforce(F):
            disagree += 1
        if fast:
            kinds[classify_mp_type(F).kind] += 1
    print(f"arity {args.arity}, {total} matchgates, {sum(kinds.values())} permutable")
    for k, c in sorted(kinds.items()):
        print(f"  {k:<9} {c}")
    if args.brute:
        print(f"brute-force disagreements: {disagree}")


if __name__ == "__main__":
    main()
