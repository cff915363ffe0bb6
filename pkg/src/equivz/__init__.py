"""Exact computational machinery for equivariant perturbative invariants
of 3-manifolds over the 3-torus: twisted chain complexes and combinatorial
propagators, decorated trivalent-graph quotient spaces, trace contraction,
Y-link surgery evaluation, lattice-link equivariant linking numbers, and
the Casson-invariant bridge."""

__version__ = "0.1.0"
