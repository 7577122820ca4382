"""
Truncated multimode bosonic Fock spaces and dense operators on them.

A FockSpace with n_modes modes and a per-mode cutoff holds the occupations
0..cutoff-1 of every mode. Basis states are ordered with mode 0 as the
slowest varying index, so that for two modes the flat order is
|00>, |01>, ..., |0 c-1>, |10>, ...

Operators are dense complex matrices. Exponentials of anti-Hermitian
generators are computed with scipy's scaling-and-squaring expm.
"""

import itertools
import warnings
from dataclasses import dataclass
from functools import reduce

import numpy as np
from scipy.linalg import expm

ANTI_HERMITIAN_TOLERANCE = 1e-10


class FockSpaceError(Exception):
    """
    Raised when a mode index or occupation tuple does not fit the space.
    """

    pass


class NotAntiHermitianError(Exception):
    """
    Raised when a generator handed to expm_antihermitian is not
    anti-Hermitian.
    """

    pass


class TruncationWarning(UserWarning):
    """
    Emitted when a parameter is large enough that the truncated space may
    not represent the operator faithfully.
    """

    pass


def warn_truncation(description, edge_population):
    warnings.warn(
        f"{description} approaches the Fock cutoff, "
        f"estimated edge population {edge_population:.3e}",
        TruncationWarning,
        stacklevel=3,
    )


@dataclass(frozen=True)
class FockSpace:
    """
    A truncated Fock space of n_modes bosonic modes.

    :param n_modes: Number of modes, at least one.
    :param cutoff: Dimension per mode, occupations run over 0..cutoff-1.
    """

    n_modes: int
    cutoff: int

    def __post_init__(self):
        if int(self.n_modes) != self.n_modes or self.n_modes < 1:
            raise ValueError(f"n_modes must be a positive integer, got {self.n_modes}")
        if int(self.cutoff) != self.cutoff or self.cutoff < 1:
            raise ValueError(f"cutoff must be a positive integer, got {self.cutoff}")

    @property
    def total_dim(self):
        return self.cutoff**self.n_modes

    def check_mode(self, mode):
        if not 0 <= mode < self.n_modes:
            raise FockSpaceError(
                f"Mode {mode} out of range for a space with {self.n_modes} modes"
            )

    def flat_index(self, occupations):
        """
        :param occupations: Tuple (ν_0, ..., ν_{n-1}) of mode occupations.
        :returns: The index of |ν_0 ... ν_{n-1}> in the flat basis.
        """
        if len(occupations) != self.n_modes:
            raise FockSpaceError(
                f"Expected {self.n_modes} occupations, got {tuple(occupations)}"
            )
        index = 0
        for nu in occupations:
            if not 0 <= nu < self.cutoff:
                raise FockSpaceError(
                    f"Occupation {nu} outside 0..{self.cutoff - 1}"
                    f" in {tuple(occupations)}"
                )
            index = index * self.cutoff + int(nu)
        return index

    def occupations(self, index):
        if not 0 <= index < self.total_dim:
            raise FockSpaceError(f"Flat index {index} outside the space")
        result = []
        for _ in range(self.n_modes):
            index, nu = divmod(index, self.cutoff)
            result.append(nu)
        return tuple(reversed(result))

    def basis_vector(self, occupations):
        vector = np.zeros(self.total_dim, dtype=complex)
        vector[self.flat_index(occupations)] = 1.0
        return vector

    def identity(self):
        return Operator(self, np.eye(self.total_dim, dtype=complex))

    def with_cutoff(self, cutoff):
        return FockSpace(self.n_modes, cutoff)


@dataclass(frozen=True, eq=False)
class Operator:
    """
    A dense operator on a FockSpace. The matrix is stored read-only.
    """

    space: FockSpace
    matrix: np.ndarray

    def __post_init__(self):
        matrix = np.array(self.matrix, dtype=complex)
        expected = (self.space.total_dim, self.space.total_dim)
        if matrix.shape != expected:
            raise ValueError(
                f"Operator matrix has shape {matrix.shape}, expected {expected}"
            )
        matrix.flags.writeable = False
        object.__setattr__(self, "matrix", matrix)

    def dagger(self):
        return Operator(self.space, self.matrix.conj().T)

    def __matmul__(self, other):
        if isinstance(other, Operator):
            if other.space != self.space:
                raise FockSpaceError(
                    f"Cannot multiply operators on {self.space} and {other.space}"
                )
            return Operator(self.space, self.matrix @ other.matrix)
        return self.matrix @ other

    def __add__(self, other):
        return Operator(self.space, self.matrix + other.matrix)

    def __sub__(self, other):
        return Operator(self.space, self.matrix - other.matrix)

    def scaled(self, factor):
        return Operator(self.space, factor * self.matrix)

    def unitarity_defect(self):
        """
        :returns: ‖U†U - 1‖_max
        """
        product = self.matrix.conj().T @ self.matrix
        return float(np.max(np.abs(product - np.eye(len(product)))))

    def is_unitary(self, tolerance=1e-10):
        return self.unitarity_defect() < tolerance


def commutator(first, second):
    """
    [first, second] for Operators or plain matrices.
    """
    return first @ second - second @ first


@dataclass(frozen=True)
class CodeBlock:
    """
    The degenerate logical subspace, given as an ordered tuple of occupation
    tuples with entries in {0, 1}.
    """

    basis_states: tuple

    def __post_init__(self):
        states = tuple(tuple(int(nu) for nu in state) for state in self.basis_states)
        if len(set(states)) != len(states):
            raise ValueError(f"Code block states must be distinct, got {states}")
        if not states:
            raise ValueError("Code block must contain at least one state")
        if len({len(s) for s in states}) != 1:
            raise ValueError(f"Code block states differ in mode count: {states}")
        if any(nu not in (0, 1) for state in states for nu in state):
            raise ValueError(f"Code block occupations must be 0 or 1, got {states}")
        object.__setattr__(self, "basis_states", states)

    @classmethod
    def kerr_ground(cls, n_modes):
        """
        The zero-energy Kerr eigenstates, {0,1}^n_modes in flat order, e.g.
        |00>, |01>, |10>, |11> for two modes.
        """
        return cls(tuple(itertools.product((0, 1), repeat=n_modes)))

    @property
    def dim(self):
        return len(self.basis_states)

    @property
    def n_modes(self):
        return len(self.basis_states[0])

    def indices(self, space):
        if space.n_modes != self.n_modes:
            raise FockSpaceError(
                f"Code block on {self.n_modes} modes used with {space.n_modes} modes"
            )
        if space.cutoff < 2:
            raise FockSpaceError("Code block needs a cutoff of at least 2")
        return [space.flat_index(state) for state in self.basis_states]


def ladder_matrix(cutoff):
    return np.diag(np.sqrt(np.arange(1, cutoff, dtype=float)), k=1).astype(complex)


def embed_operator(space, modes, matrix):
    """
    Embeds an operator acting on the given modes (in the given order) into
    the full space, acting as identity on the remaining modes.

    :param space: The full FockSpace.
    :param modes: Sequence of distinct mode indices.
    :param matrix: Square matrix of dimension cutoff**len(modes).
    """
    modes = list(modes)
    for mode in modes:
        space.check_mode(mode)
    if len(set(modes)) != len(modes):
        raise FockSpaceError(f"Modes must be distinct, got {modes}")
    n = space.n_modes
    cutoff = space.cutoff
    matrix = np.asarray(matrix, dtype=complex)
    if matrix.shape != (cutoff ** len(modes),) * 2:
        raise ValueError(
            f"Matrix of shape {matrix.shape} does not act on {len(modes)} modes"
            f" with cutoff {cutoff}"
        )
    rest = [m for m in range(n) if m not in modes]
    full = np.kron(matrix, np.eye(cutoff ** len(rest), dtype=complex))
    if modes + rest == list(range(n)):
        return Operator(space, full)
    order = modes + rest
    axes = [order.index(j) for j in range(n)]
    full = full.reshape((cutoff,) * (2 * n)).transpose(axes + [n + a for a in axes])
    return Operator(space, full.reshape(space.total_dim, space.total_dim))


def annihilation_op(space, mode):
    """
    The truncated annihilation operator a on the given mode,
    ⟨ν-1|a|ν⟩ = √ν, tensored with identity on the other modes.
    """
    space.check_mode(mode)
    single = ladder_matrix(space.cutoff)
    factors = [np.eye(space.cutoff, dtype=complex)] * space.n_modes
    factors[mode] = single
    return Operator(space, reduce(np.kron, factors))


def creation_op(space, mode):
    return annihilation_op(space, mode).dagger()


def number_op(space, mode):
    a = annihilation_op(space, mode)
    return a.dagger() @ a


def anti_hermitian_defect(matrix):
    matrix = matrix.matrix if isinstance(matrix, Operator) else np.asarray(matrix)
    return float(np.max(np.abs(matrix + matrix.conj().T)))


def expm_antihermitian(generator, tolerance=ANTI_HERMITIAN_TOLERANCE):
    """
    exp(G) for an anti-Hermitian G.

    :param generator: An Operator or a square complex matrix.
    :param tolerance: Largest accepted ‖G + G†‖_max.
    :returns: The exponential, of the same kind as the input.
    :raises NotAntiHermitianError: If G is not anti-Hermitian.
    """
    matrix = generator.matrix if isinstance(generator, Operator) else generator
    matrix = np.asarray(matrix, dtype=complex)
    defect = anti_hermitian_defect(matrix)
    if defect > tolerance * max(1.0, float(np.max(np.abs(matrix)))):
        raise NotAntiHermitianError(
            f"Generator is not anti-Hermitian, ‖G + G†‖_max = {defect:.3e}"
        )
    if isinstance(generator, Operator):
        return Operator(generator.space, expm(matrix))
    return expm(matrix)


def project_block(operator, block):
    """
    The matrix ⟨ρ̄|U|ρ⟩ over the code block, rows and columns in block order.
    """
    indices = block.indices(operator.space)
    return np.array(operator.matrix[np.ix_(indices, indices)])


def leakage(operator, block):
    """
    ‖(1 - P) U P‖_F, the weight the operator moves out of the block. Equals
    √(dim - ‖P U P‖_F²) for unitaries, without the cancellation.
    """
    indices = block.indices(operator.space)
    outside = np.ones(operator.space.total_dim, dtype=bool)
    outside[indices] = False
    escaped = operator.matrix[outside][:, indices]
    return float(np.linalg.norm(escaped))


def embed_block(space, block, matrix):
    """
    The operator acting as matrix on span(block) and as identity on its
    orthogonal complement.
    """
    matrix = np.asarray(matrix, dtype=complex)
    if matrix.shape != (block.dim, block.dim):
        raise ValueError(
            f"Block matrix of shape {matrix.shape} does not fit a block of"
            f" dimension {block.dim}"
        )
    indices = block.indices(space)
    full = np.eye(space.total_dim, dtype=complex)
    full[np.ix_(indices, indices)] = matrix
    return Operator(space, full)
