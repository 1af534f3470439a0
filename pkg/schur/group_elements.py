"""
Group Elements
Haar sampling of SU(d), permutations of tensor factors and the action of
U^{(x)n} on state vectors.
"""

import re
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy import sparse

from utils.config import LabSettings, check_dimension_cap

Permutation = Tuple[int, ...]


def haar_su(d: int, rng: Optional[np.random.Generator] = None) -> np.ndarray:
    """
    Sample a Haar-random element of SU(d).

    QR of a complex Gaussian matrix, phases of R's diagonal moved into Q,
    then the determinant removed by a global phase.

    Args:
        d: Matrix size (>= 1)
        rng: numpy Generator (a fresh default_rng() if omitted)

    Returns:
        d x d complex unitary with determinant 1
    """
    if d < 1:
        raise ValueError(f"haar_su needs d >= 1, got {d}")
    rng = rng if rng is not None else np.random.default_rng()
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    diagonal = np.diag(r)
    q = q * (diagonal / np.abs(diagonal))
    det = np.linalg.det(q)
    return q / det ** (1.0 / d)


def is_special_unitary(g: np.ndarray, unitary_tol: float = 1e-12, det_tol: float = 1e-10) -> bool:
    """Unitarity within unitary_tol and determinant within det_tol of 1."""
    g = np.asarray(g)
    if g.ndim != 2 or g.shape[0] != g.shape[1]:
        return False
    residual = np.max(np.abs(g.conj().T @ g - np.eye(g.shape[0])))
    return bool(residual <= unitary_tol and abs(np.linalg.det(g) - 1.0) <= det_tol)


def validate_permutation(perm: Sequence[int], n: Optional[int] = None) -> Permutation:
    """Return perm as a tuple after checking it is a permutation of range(n)."""
    perm = tuple(int(p) for p in perm)
    size = len(perm) if n is None else n
    if len(perm) != size or sorted(perm) != list(range(size)):
        raise ValueError(f"{perm} is not a permutation of {size} letters")
    return perm


def random_permutation(n: int, rng: Optional[np.random.Generator] = None) -> Permutation:
    """Uniformly random permutation of n letters."""
    rng = rng if rng is not None else np.random.default_rng()
    return tuple(int(p) for p in rng.permutation(n))


def compose(first: Sequence[int], second: Sequence[int]) -> Permutation:
    """(first o second)(j) = first[second[j]]."""
    return tuple(first[j] for j in second)


def inverse(perm: Sequence[int]) -> Permutation:
    result = [0] * len(perm)
    for j, image in enumerate(perm):
        result[image] = j
    return tuple(result)


_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, n: int) -> Permutation:
    """
    Parse 0-indexed cycle notation such as "(0 1 2)(3 4)".

    The cycle (a b c) sends a -> b -> c -> a. Commas are accepted as
    separators and letters not mentioned are fixed.

    Args:
        text: Cycle notation ("" or "()" for the identity)
        n: Number of letters

    Returns:
        Permutation tuple with perm[j] = image of j
    """
    perm = list(range(n))
    stripped = text.strip()
    if _CYCLE.sub("", stripped).strip():
        raise ValueError(f"Malformed cycle notation: '{text}'")
    seen = set()
    for body in _CYCLE.findall(stripped):
        letters = [int(tok) for tok in body.replace(",", " ").split()]
        for letter in letters:
            if not 0 <= letter < n:
                raise ValueError(f"Letter {letter} out of range for n={n}")
            if letter in seen:
                raise ValueError(f"Letter {letter} appears in more than one cycle")
            seen.add(letter)
        for a, b in zip(letters, letters[1:] + letters[:1]):
            perm[a] = b
    return tuple(perm)


def permutation_operator(perm: Sequence[int], n: int, d: int, settings: Optional[LabSettings] = None) -> sparse.csr_matrix:
    """
    Sparse operator permuting the tensor factors of (C^d)^{(x)n}.

    The symbol at site j moves to site perm[j], i.e.
    |i_1 ... i_n> -> |i_{perm^-1(1)} ... i_{perm^-1(n)}>, so that
    P(perm) P(sigma) = P(perm o sigma).

    Args:
        perm: Permutation of n letters
        n: Number of sites
        d: Local dimension
        settings: Settings holding the dimension cap

    Returns:
        d^n x d^n real permutation matrix in CSR format
    """
    perm = validate_permutation(perm, n)
    dim = check_dimension_cap(n, d, settings)
    shape = (d,) * n
    digits = np.unravel_index(np.arange(dim), shape) if n else ()
    moved = [None] * n
    for j in range(n):
        moved[perm[j]] = digits[j]
    rows = np.ravel_multi_index(tuple(moved), shape) if n else np.zeros(1, dtype=np.int64)
    return sparse.csr_matrix((np.ones(dim), (rows, np.arange(dim))), shape=(dim, dim))


def permute_tensor_factors(perm: Sequence[int], vectors: np.ndarray, n: int, d: int) -> np.ndarray:
    """
    Apply the tensor-factor permutation to one vector or to the columns of a matrix.

    Args:
        perm: Permutation of n letters
        vectors: Array of shape (d^n,) or (d^n, k)
        n: Number of sites
        d: Local dimension

    Returns:
        Array of the same shape
    """
    perm = validate_permutation(perm, n)
    vectors = np.asarray(vectors)
    flat = vectors.ndim == 1
    cols = vectors.reshape(d ** n, -1)
    tensor = cols.reshape((d,) * n + (cols.shape[1],))
    axes = list(inverse(perm)) + [n]
    result = np.transpose(tensor, axes).reshape(d ** n, -1)
    return result.reshape(-1) if flat else result


def apply_tensor_power(g: np.ndarray, vectors: np.ndarray, n: int, d: int) -> np.ndarray:
    """
    Apply g^{(x)n} to one vector or to the columns of a matrix.

    Args:
        g: d x d matrix
        vectors: Array of shape (d^n,) or (d^n, k)
        n: Number of tensor factors
        d: Local dimension

    Returns:
        Complex array of the same shape
    """
    g = np.asarray(g)
    vectors = np.asarray(vectors)
    flat = vectors.ndim == 1
    cols = vectors.reshape(d ** n, -1)
    tensor = cols.reshape((d,) * n + (cols.shape[1],)).astype(complex)
    for axis in range(n):
        tensor = np.moveaxis(np.tensordot(g, tensor, axes=([1], [axis])), 0, axis)
    result = tensor.reshape(d ** n, -1)
    return result.reshape(-1) if flat else result


def tensor_power(g: np.ndarray, n: int) -> np.ndarray:
    """Dense g^{(x)n} (small n only)."""
    result = np.ones((1, 1), dtype=complex)
    for _ in range(n):
        result = np.kron(result, g)
    return result
