"""Rainbows: nested-arc generating sets and their extremal combinatorics.

On the rank line of a square-free cyclic group, an arc x -> y stands for
every arrow between rank-x and rank-y subgroups, and nested arc families
("rainbows") give minimal generating sets.  The maximal rainbow size is a
complexity lower bound; grid lattices have their own simple/double rainbow
numbers.
"""
from transfer_systems import (brute_force_max_rainbow, canonical_max_rainbows,
                              cpnq_complexity, cpnq_witness_rainbow,
                              double_rainbow_augmented, dr_number,
                              is_composable, normalize_to_composable, rainbow,
                              rainbow_size, sr_number,
                              square_free_complexity_lower, trinomial)


def arcs(r):
    return " ".join(f"{a.x}->{a.y}" for a in r.arcs)


def main():
    print("arc sizes on {0..4}:",
          f"|1->4| = {trinomial(4, 1, 4)},",
          f"|2->3| = {trinomial(4, 2, 3)}")

    print("\nmaximal rainbows (brute force agrees with the closed form):")
    for n in range(2, 9):
        best = brute_force_max_rainbow(n)
        assert best.size == square_free_complexity_lower(n)
        names = "; ".join(arcs(r) for r in canonical_max_rainbows(n))
        print(f"    n={n}: size {best.size:>5}   maximizers: {names}")

    print("\nnormalizing an undersized rainbow until an arc fits:")
    r = rainbow(9, [(0, 7), (1, 5), (3, 4)])
    res = normalize_to_composable(r)
    print(f"    {arcs(r)}  --{', '.join(res.ops_used)}-->  {arcs(res.result)}")
    assert is_composable(res.result)
    assert rainbow_size(res.result) >= rainbow_size(r)

    print("\ncomplexity of the [n] x [1] grids, with witness sizes:")
    for n in range(0, 6):
        witness = cpnq_witness_rainbow(n)
        print(f"    n={n}: complexity {cpnq_complexity(n)}, witness has {len(witness)} arrows")

    print("\nsimple/double rainbow numbers on grids:")
    for n, m in [(2, 2), (4, 3), (5, 5), (6, 4)]:
        line = f"    SR({n},{m}) = {sr_number(n, m)}"
        if (n + m) % 2 == 0 and min(n, m) >= 2:
            aug = double_rainbow_augmented(max(n, m), min(n, m))
            line += f",  DR({n},{m}) = {dr_number(n, m)},  augmented size {len(aug)}"
        print(line)


if __name__ == "__main__":
    main()
