"""Closing a handful of arrows into a transfer system, step by step.

A transfer system on a subgroup lattice is a set of arrows (H, K), H < K,
closed under conjugation, restriction to smaller subgroups, and
composition.  The closure operator turns any seed set into the smallest
such system.
"""
from transfer_systems import (Arrow, build_chain_product, closure,
                              element_by_coords, precompute_tables)


def show(lattice, arrows):
    for a in sorted(arrows):
        print(f"    {lattice.elements[a.source].label} -> {lattice.elements[a.target].label}")


def main():
    # the divisor lattice of p*q: four subgroups, five possible arrows
    cpq = build_chain_product([1, 1])
    tables = precompute_tables(cpq)
    print(f"{cpq.name}: {len(cpq)} subgroups, {len(cpq.arrows)} candidate arrows")

    seed = [Arrow(cpq.bottom, cpq.top)]
    print("\nseed:")
    show(cpq, seed)
    system = closure(tables, seed)
    print("closure (restriction forces both intermediate arrows):")
    show(cpq, system.arrows())

    # a richer lattice: the [2] x [1] grid
    grid = build_chain_product([2, 1])
    tables = precompute_tables(grid)
    el = lambda a, x: element_by_coords(grid, (a, x))
    seed = [Arrow(el(0, 1), el(1, 1)), Arrow(el(1, 1), el(2, 1)), Arrow(el(2, 0), el(2, 1))]
    system = closure(tables, seed)
    print(f"\n{grid.name}: three chosen arrows already generate the complete "
          f"system ({len(system)} of {len(grid.arrows)} arrows)")


if __name__ == "__main__":
    main()
