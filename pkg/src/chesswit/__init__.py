"""Chessboard-family PPT states and nonlinear entanglement-witness tooling.

Modules
-------
tensorops
    Pauli/Gell-Mann tensor algebra, partial transposes, PPT checks,
    matrix JSON wire format.
chessboard
    2x2x2 and 2x2xd chessboard-family density matrices, their
    closed-form Pauli expansion coefficients, parameter sampling and
    parameter JSON wire format.
witnesses
    The witness catalog (polygonal, conical, cylindrical, spherical and
    their phase-gate-conjugated variants), closed-form functionals,
    detection conditions, and numerical witness validation.
frgeom
    Product-state feasible-region geometry for the witness operator
    triples: containment tests and exact boundary sweeps.
optimality
    Zero-expectation product states and the orthogonality-rank test for
    witness optimality.
mcharness
    Deterministic Monte Carlo detection scans and the fixed
    one-parameter comparison study.
cli
    Command-line interface exposing all of the above.
"""

__version__ = "0.1.0"

__all__ = ["__version__"]
