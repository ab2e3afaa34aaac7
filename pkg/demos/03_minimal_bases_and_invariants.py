"""Minimal generating sets, width, and complexity.

Every transfer system admits minimal generating sets and they all share one
cardinality, so "size of a minimal basis" is a well-defined map.  Its value
on the complete system (the width) counts meet-irreducible conjugacy
classes; its maximum over all systems (the complexity) can be strictly
larger, as the [2] x [1] grid already shows.
"""
from transfer_systems import (all_minimal_bases, build_chain_product, complexity,
                              complete_system, level_profile, minimal_basis,
                              precompute_tables, width)


def label(lattice, arrow):
    return (f"{lattice.elements[arrow.source].label} -> "
            f"{lattice.elements[arrow.target].label}")


def main():
    chain = build_chain_product([2])
    tables = precompute_tables(chain)
    full = complete_system(tables)
    print(f"{chain.name}: the complete system has these minimal bases")
    for basis in all_minimal_bases(full, tables=tables):
        arrows = ", ".join(label(chain, a) for a in basis.sorted_arrows())
        print(f"    {{{arrows}}}   level profile {level_profile(basis)}")

    grid = build_chain_product([2, 1])
    print(f"\n{grid.name}: width {width(grid)}")
    result = complexity(grid)
    print(f"{grid.name}: complexity {result.value} "
          f"({len(result.realizers)} realizer)")
    realizer = result.realizers[0]
    basis = minimal_basis(realizer)
    print("the complexity realizer's preferred basis:")
    for a in basis.sorted_arrows():
        print(f"    {label(grid, a)}")
    print("so width and complexity genuinely differ on this lattice.")

    print("\nwidth equals the chain length on prime-power cyclic groups:")
    for n in range(1, 6):
        lat = build_chain_product([n])
        print(f"    {lat.name}: width {width(lat)}, complexity {complexity(lat).value}")


if __name__ == "__main__":
    main()
