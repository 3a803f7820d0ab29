"""Boundary reconstruction and verification toolkit for the 3D color code.

Builds the minimal 192-qubit lattice model with Z- and X-boundaries,
assembles and checks its stabilizer code, classifies the 101 gapped
boundary types of the underlying three-sector gauge theory, and verifies
transversal S/T conjugation and boundary condensation at the operator
level, including the non-Pauli magic boundary.
"""

__version__ = "0.1.0"
