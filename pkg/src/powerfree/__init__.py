"""Power-free values of polynomials: Galois entropies, large-deviation
exponents, local densities and empirical surveys."""

__version__ = "0.1.0"
