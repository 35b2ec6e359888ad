"""Dense tensor-algebra primitives for three-party quantum systems.

All matrices are ``numpy.complex128``. The composite Hilbert space is
``C^{d1} (x) C^{d2} (x) C^{d3}`` with big-endian flat index
``i1*(d2*d3) + i2*d3 + i3``; parties are numbered 1..3.

Provides Pauli triple products, qudit-substituted triple products,
partial transposes, a guarded Hermitian eigensolver, a PPT check over
all nontrivial party subsets, generalized Gell-Mann matrices, and a
JSON wire format for complex matrices.
"""

from __future__ import annotations

import math
from typing import Dict, Iterable, List, Sequence, Tuple

import numpy as np

__all__ = [
    "PAULI",
    "pauli",
    "kron",
    "kron3",
    "pauli_op",
    "phase_gate",
    "partial_transpose",
    "hermitian_eigenvalues",
    "is_ppt",
    "PPT_SUBSETS",
    "qudit_substitute",
    "sym_gell_mann",
    "antisym_gell_mann",
    "diag_gell_mann",
    "gell_mann_basis",
    "gellmann_su3",
    "gen_gellmann",
    "matrix_to_json",
    "matrix_from_json",
]

# The four single-qubit basis operators sigma_0..sigma_3
# (identity, x, y, z), frozen read-only.
PAULI: Tuple[np.ndarray, ...] = tuple(
    np.array(m, dtype=np.complex128) for m in (
        [[1, 0], [0, 1]],
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    )
)
for _m in PAULI:
    _m.setflags(write=False)


def pauli(i: int) -> np.ndarray:
    """Return a copy of sigma_i for i in 0..3."""
    if i not in (0, 1, 2, 3):
        raise ValueError(f"Pauli index must be 0..3, got {i!r}")
    return PAULI[i].copy()


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product: result[(i*dimB+k),(j*dimB+l)] = A[i,j]*B[k,l]."""
    return np.kron(np.asarray(a), np.asarray(b))


def kron3(a: np.ndarray, b: np.ndarray, c: np.ndarray) -> np.ndarray:
    """Kronecker product of three matrices, first party slowest."""
    return np.kron(np.kron(np.asarray(a), np.asarray(b)), np.asarray(c))


def pauli_op(triple, j: int | None = None, k: int | None = None) -> np.ndarray:
    """8x8 three-party operator sigma_i (x) sigma_j (x) sigma_k.

    Accepts either one sequence of three indices in 0..3 or the three
    indices as separate arguments. The result is Hermitian with trace
    8*delta(triple, (0,0,0)) and squared trace norm Tr(O^2) = 8.
    """
    if j is not None or k is not None:
        if j is None or k is None:
            raise ValueError("pass a triple or all three indices")
        triple = (triple, j, k)
    i, j, k = triple
    if not all(t in (0, 1, 2, 3) for t in (i, j, k)):
        raise ValueError(f"triple entries must be 0..3, got {triple!r}")
    return kron3(PAULI[i], PAULI[j], PAULI[k])


def phase_gate() -> np.ndarray:
    """Single-qubit gate diag(1, i).

    Conjugation maps sigma_x -> sigma_y, sigma_y -> -sigma_x, and
    leaves sigma_z fixed; this generates the primed witness families.
    """
    return np.diag([1.0, 1.0j]).astype(np.complex128)


def _as_square(m: np.ndarray, dims: Sequence[int]) -> np.ndarray:
    m = np.asarray(m, dtype=np.complex128)
    size = int(np.prod(dims))
    if m.shape != (size, size):
        raise ValueError(
            f"matrix shape {m.shape} does not match dims {tuple(dims)}"
        )
    return m


def partial_transpose(
    m: np.ndarray,
    dims: Sequence[int] = (2, 2, 2),
    parties: Iterable[int] = (1,),
) -> np.ndarray:
    """Partial transpose over the given parties (1-based).

    ``dims`` lists the local dimensions; ``parties`` is an iterable of
    party numbers in 1..len(dims). Entry bookkeeping: transposing party
    p swaps its row index with its column index, so e.g. for qubits the
    ((0,0,0),(1,1,1)) entry moves to ((1,0,0),(0,1,1)) under the
    transpose of party 1.
    """
    dims = tuple(int(d) for d in dims)
    m = _as_square(m, dims)
    parties = tuple(sorted(set(int(p) for p in parties)))
    n = len(dims)
    for p in parties:
        if not 1 <= p <= n:
            raise ValueError(f"party {p} out of range 1..{n}")
    t = m.reshape(dims + dims)
    for p in parties:
        t = np.swapaxes(t, p - 1, p - 1 + n)
    size = int(np.prod(dims))
    return np.ascontiguousarray(t.reshape(size, size))


def hermitian_eigenvalues(m: np.ndarray) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix, ascending.

    Gates on Hermiticity (max |M - M^dagger| <= 1e-12 * max(1, max|M|))
    before solving, symmetrizes to suppress rounding noise, and checks
    that the spectral reconstruction matches the input to a relative
    Frobenius residual of 1e-10.
    """
    m = np.asarray(m, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    scale = max(1.0, float(np.abs(m).max()) if m.size else 0.0)
    herm_defect = float(np.abs(m - m.conj().T).max()) if m.size else 0.0
    if herm_defect > 1e-12 * scale:
        raise ValueError(
            f"matrix is not Hermitian: max |M - M^dagger| = {herm_defect:.3e}"
        )
    h = (m + m.conj().T) / 2.0
    w, v = np.linalg.eigh(h)
    norm = float(np.linalg.norm(h))
    if norm > 0.0:
        residual = float(np.linalg.norm((v * w) @ v.conj().T - h))
        if residual > 1e-10 * norm:
            raise ArithmeticError(
                f"eigendecomposition residual {residual:.3e} exceeds "
                f"1e-10 * ||M||_F = {1e-10 * norm:.3e}"
            )
    return w


# Nontrivial party subsets for a three-party PPT check; complementary
# subsets give identical spectra but all six are reported.
PPT_SUBSETS: Tuple[Tuple[str, Tuple[int, ...]], ...] = (
    ("1", (1,)),
    ("2", (2,)),
    ("3", (3,)),
    ("12", (1, 2)),
    ("13", (1, 3)),
    ("23", (2, 3)),
)


def is_ppt(
    m: np.ndarray,
    dims: Sequence[int] = (2, 2, 2),
    tol: float = 1e-10,
) -> Tuple[bool, Dict[str, float]]:
    """Whether all partial transposes of ``m`` are positive semidefinite.

    Returns ``(ppt, min_eigs)`` where ``min_eigs`` maps each subset
    label ("1", "2", "3", "12", "13", "23") to the smallest eigenvalue
    of the corresponding partial transpose. ``ppt`` is True iff every
    minimum is >= -tol.
    """
    dims = tuple(int(d) for d in dims)
    m = _as_square(m, dims)
    min_eigs: Dict[str, float] = {}
    for label, parties in PPT_SUBSETS:
        w = hermitian_eigenvalues(partial_transpose(m, dims, parties))
        min_eigs[label] = float(w[0])
    ppt = all(v >= -tol for v in min_eigs.values())
    return ppt, min_eigs


def _basis_matrix(d: int, a: int, b: int) -> np.ndarray:
    e = np.zeros((d, d), dtype=np.complex128)
    e[a, b] = 1.0
    return e


def _check_pair(d: int, a: int, b: int) -> None:
    if not (0 <= a < b < d):
        raise ValueError(
            f"need 0 <= a < b < d, got a={a}, b={b}, d={d}"
        )


def qudit_substitute(
    triple: Sequence[int], d: int, alpha: int, beta: int
) -> np.ndarray:
    """Three-party operator with the third factor embedded in dimension d.

    The first two factors are Pauli matrices; the third index k maps to
    T(0) = I_d, T(1) = E_ab + E_ba, T(2) = -i(E_ab - E_ba),
    T(3) = E_aa - E_bb, acting on the two-level subspace spanned by
    basis states ``alpha`` < ``beta`` of the third party. For d = 2,
    alpha = 0, beta = 1 this coincides with :func:`pauli_op` exactly.
    """
    i, j, k = triple
    if not all(t in (0, 1, 2, 3) for t in (i, j, k)):
        raise ValueError(f"triple entries must be 0..3, got {triple!r}")
    d = int(d)
    _check_pair(d, alpha, beta)
    if k == 0:
        t = np.eye(d, dtype=np.complex128)
    elif k == 1:
        t = _basis_matrix(d, alpha, beta) + _basis_matrix(d, beta, alpha)
    elif k == 2:
        t = -1j * (_basis_matrix(d, alpha, beta) - _basis_matrix(d, beta, alpha))
    else:
        t = _basis_matrix(d, alpha, alpha) - _basis_matrix(d, beta, beta)
    return kron3(PAULI[i], PAULI[j], t)


def sym_gell_mann(d: int, a: int, b: int) -> np.ndarray:
    """(E_ab + E_ba)/sqrt(2) for 0 <= a < b < d (unit trace norm)."""
    _check_pair(int(d), a, b)
    return (_basis_matrix(d, a, b) + _basis_matrix(d, b, a)) / math.sqrt(2.0)


def antisym_gell_mann(d: int, a: int, b: int) -> np.ndarray:
    """(E_ab - E_ba)/(i sqrt(2)) for 0 <= a < b < d (unit trace norm)."""
    _check_pair(int(d), a, b)
    return (_basis_matrix(d, a, b) - _basis_matrix(d, b, a)) / (1j * math.sqrt(2.0))


def diag_gell_mann(d: int, i: int) -> np.ndarray:
    """Diagonal generalized Gell-Mann matrix, Tr = 0, Tr(L^2) = 2.

    For 0 <= i <= d-2:
    sqrt(2/((i+1)(i+2))) * diag(1, ..., 1, -(i+1), 0, ..., 0)
    with i+1 leading ones.
    """
    d = int(d)
    if not 0 <= i <= d - 2:
        raise ValueError(f"need 0 <= i <= d-2, got i={i}, d={d}")
    v = np.zeros(d, dtype=np.complex128)
    v[: i + 1] = 1.0
    v[i + 1] = -(i + 1)
    v *= math.sqrt(2.0 / ((i + 1) * (i + 2)))
    return np.diag(v)


def gell_mann_basis(d: int) -> List[np.ndarray]:
    """The d^2 - 1 generalized Gell-Mann matrices, standard order.

    Ordering: for k = 1..d-1, the symmetric then antisymmetric matrix
    for each pair (a, k) with a < k, followed by the diagonal matrix of
    level k-1. All entries satisfy Tr(L_a L_b) = 2 delta_ab. For d = 3
    this reproduces the eight standard 3x3 matrices in their usual
    numbering.
    """
    d = int(d)
    if d < 2:
        raise ValueError(f"need d >= 2, got {d}")
    out: List[np.ndarray] = []
    s2 = math.sqrt(2.0)
    for k in range(1, d):
        for a in range(k):
            out.append(s2 * sym_gell_mann(d, a, k))
            out.append(s2 * antisym_gell_mann(d, a, k))
        out.append(diag_gell_mann(d, k - 1))
    return out


def gellmann_su3(a: int) -> np.ndarray:
    """The 3x3 matrix Lambda_a for a in 1..8 (standard numbering).

    Hermitian and traceless with Tr(Lambda_a Lambda_b) = 2 delta_ab.
    """
    if a not in range(1, 9):
        raise ValueError(f"index must be 1..8, got {a!r}")
    return gell_mann_basis(3)[a - 1]


def gen_gellmann(d: int) -> Dict[str, object]:
    """Bundle of the SU(d) generator building blocks.

    Returns a dict with keys:

    - ``"E"``: map (i, j) -> matrix unit E_ij (all d^2 pairs)
    - ``"plus"``: map (a, b) -> (E_ab + E_ba)/sqrt(2) for a < b
    - ``"minus"``: map (a, b) -> (E_ab - E_ba)/(i sqrt(2)) for a < b
    - ``"diag"``: list of the d-1 diagonal generators, levels 0..d-2

    All non-``E`` members are Hermitian and traceless; the last
    diagonal generator equals sqrt(2/(d(d-1))) diag(1, ..., 1, -d+1).
    """
    d = int(d)
    if d < 2:
        raise ValueError(f"need d >= 2, got {d}")
    e = {(i, j): _basis_matrix(d, i, j) for i in range(d) for j in range(d)}
    plus = {(a, b): sym_gell_mann(d, a, b)
            for a in range(d) for b in range(a + 1, d)}
    minus = {(a, b): antisym_gell_mann(d, a, b)
             for a in range(d) for b in range(a + 1, d)}
    diag = [diag_gell_mann(d, i) for i in range(d - 1)]
    return {"E": e, "plus": plus, "minus": minus, "diag": diag}


def matrix_to_json(m: np.ndarray) -> dict:
    """Encode a square complex matrix as {"dim", "re", "im"}."""
    m = np.asarray(m, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m.real)) or not np.all(np.isfinite(m.imag)):
        raise ValueError("matrix contains non-finite entries")
    return {
        "dim": int(m.shape[0]),
        "re": m.real.tolist(),
        "im": m.imag.tolist(),
    }


def matrix_from_json(obj: dict) -> np.ndarray:
    """Decode a matrix produced by :func:`matrix_to_json`."""
    try:
        dim = int(obj["dim"])
        re = np.asarray(obj["re"], dtype=np.float64)
        im = np.asarray(obj["im"], dtype=np.float64)
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed matrix object: {exc}") from exc
    if re.shape != (dim, dim) or im.shape != (dim, dim):
        raise ValueError(
            f"matrix parts have shapes {re.shape}/{im.shape}, expected {(dim, dim)}"
        )
    if not (np.all(np.isfinite(re)) and np.all(np.isfinite(im))):
        raise ValueError("matrix contains non-finite entries")
    return re + 1j * im
