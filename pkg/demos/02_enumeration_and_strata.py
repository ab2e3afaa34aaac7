"""Enumerating every transfer system of a lattice, layer by layer.

The search starts from the empty system and repeatedly closes single-arrow
extensions; the layer at which a system first appears equals the size of
its minimal generating sets, so the layer sizes are a meaningful statistic
(for chains they reproduce the Narayana triangle, summing to Catalan
numbers).
"""
from transfer_systems import build_chain_product, build_subspace_lattice, enumerate_systems


def report(lattice, jobs=1):
    result = enumerate_systems(lattice, store=False, jobs=jobs)
    print(f"{lattice.name:>10}: {result.total_count:>6} transfer systems, "
          f"strata {result.stratum_counts}")


def main():
    print("cyclic groups of prime-power order (Catalan counts):")
    for n in range(1, 6):
        report(build_chain_product([n]))

    print("\ntwo-prime cyclic groups:")
    for exps in ([1, 1], [2, 1], [3, 1], [2, 2]):
        report(build_chain_product(exps))

    print("\nsubspace lattices (elementary abelian groups):")
    for p, n in [(2, 2), (3, 2)]:
        report(build_subspace_lattice(p, n))

    print("\nworker count never changes the outcome:")
    lat = build_chain_product([2, 2])
    a = enumerate_systems(lat, store=False, jobs=1)
    b = enumerate_systems(lat, store=False, jobs=2)
    print(f"  jobs=1 -> {a.stratum_counts}")
    print(f"  jobs=2 -> {b.stratum_counts}")


if __name__ == "__main__":
    main()
