"""dezaforge: exact certificates for the Berlekamp-Van Lint-Seidel graph family.

Builds the strongly regular graph SRG(243,22,1,2) from two independent
presentations (an M11 orbit connection set and the ternary Golay code),
applies dual Seidel switching and the strong product with an edge, and
certifies every parameter, spectrum, involution and group-order claim with
exact integer arithmetic.
"""

__version__ = "0.1.0"
