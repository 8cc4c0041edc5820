"""Fusion-tree (height-model) bases and the dense operators acting on them:
projectors, braid generators, spectral R-matrices and transfer matrices.

A basis state is a height sequence (h_0, ..., h_L) with every step admissible
under fusion with rho; periodic bases carry h_L = h_0 explicitly.  Operators
are dense complex matrices; column index is the input state.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .baxterize import AmplitudeSolution, amplitude_at
from .category import CategoryData, fusion_product, twist_factor
from .errors import CapabilityError, DomainError
from .report import fmt_float

OPEN = "open"
OPEN_ALL = "open_all"
PERIODIC = "periodic"


class FusionTreeBasis:
    """Lexicographically ordered admissible height sequences.

    Immutable after construction apart from an internal per-basis memo of
    projector matrices.
    """

    def __init__(self, cat: CategoryData, rho, L, bc, boundary=None):
        if cat.rules is None:
            raise CapabilityError(f"{cat.name} carries no fusion tensor")
        rho = cat.check_label(rho)
        if L < 0:
            raise DomainError("strand count must be >= 0")
        if bc not in (OPEN, OPEN_ALL, PERIODIC):
            raise DomainError(f"unknown boundary condition {bc!r}")
        if bc == OPEN:
            if boundary is None:
                raise DomainError("open boundary needs fixed (h_0, h_L)")
            boundary = (cat.check_label(boundary[0]), cat.check_label(boundary[1]))
        self.cat = cat
        self.rho = rho
        self.L = L
        self.bc = bc
        self.boundary = boundary
        self.states = tuple(self._enumerate())
        self.index = {s: i for i, s in enumerate(self.states)}
        self._projectors = {}

    def _steps(self, h):
        N = self.cat.rules.N
        return [hp for hp in range(self.cat.n_objects) if N[self.rho, h, hp]]

    def _enumerate(self):
        starts = range(self.cat.n_objects)
        if self.bc == OPEN:
            starts = [self.boundary[0]]
        out = []
        for h0 in starts:
            stack = [(h0,)]
            while stack:
                seq = stack.pop()
                if len(seq) == self.L + 1:
                    if self.bc == PERIODIC and seq[-1] != seq[0]:
                        continue
                    if self.bc == OPEN and seq[-1] != self.boundary[1]:
                        continue
                    out.append(seq)
                    continue
                for hp in reversed(self._steps(seq[-1])):
                    stack.append(seq + (hp,))
        return sorted(out)

    @property
    def size(self) -> int:
        return len(self.states)

    def site_range(self):
        return range(1, self.L + 1) if self.bc == PERIODIC else range(1, self.L)

    def check_site(self, j):
        if j not in self.site_range():
            raise DomainError(f"site {j} outside {list(self.site_range())} for bc={self.bc}")
        return j

    def neighbourhood(self, state, j):
        """(h_{j-1}, h_j, h_{j+1}) with periodic wrap-around."""
        if self.bc == PERIODIC and j == self.L:
            return state[j - 1], state[j], state[1]
        return state[j - 1], state[j], state[j + 1]

    def replace_height(self, state, j, h):
        lst = list(state)
        lst[j] = h
        if self.bc == PERIODIC and j == self.L:
            lst[0] = h
        return tuple(lst)


@dataclass(frozen=True)
class LinearOp:
    basis: FusionTreeBasis
    matrix: np.ndarray
    support: tuple
    name: str

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def to_dict(self) -> dict:
        flat = []
        for z in self.matrix.reshape(-1):
            flat.append([fmt_float(z.real), fmt_float(z.imag)])
        return {"name": self.name, "dim": self.dim, "entries_row_major": flat}


def enumerate_trees(cat: CategoryData, rho, L, bc, boundary=None) -> FusionTreeBasis:
    """Complete, duplicate-free, lexicographically ordered height basis."""
    return FusionTreeBasis(cat, rho, L, bc, boundary)


def projector_op(cat: CategoryData, rho, chi, j, basis: FusionTreeBasis) -> LinearOp:
    """Two-strand fusion-channel projector P_j^{(chi)}.

    Matrix elements come from the unitary F-block U = [F^{h- rho rho}_{h+}]:
    P_{h' h} = U_{h' chi} conj(U_{h chi}).  In the self-dual gauge this equals
    the product of the two F-moves performed on the tree.
    """
    if not cat.representable:
        raise CapabilityError(f"{cat.name} has no F-symbols; projectors unavailable")
    rho, chi = cat.check_label(rho), cat.check_label(chi)
    if chi not in fusion_product(cat, rho, rho):
        raise DomainError(f"{cat.display(chi)} is not a channel of "
                          f"{cat.display(rho)} x {cat.display(rho)}")
    basis.check_site(j)
    key = (rho, chi, j)
    cached = basis._projectors.get(key)
    if cached is not None:
        return LinearOp(basis, cached, (j,), f"P[{cat.display(chi)}]_{j}")
    n = basis.size
    P = np.zeros((n, n), dtype=complex)
    fb = cat.f.block_value
    for s in basis.states:
        hm, hj, hp = basis.neighbourhood(s, j)
        f1 = fb(hm, rho, rho, hp, hj, chi)
        if f1 is None:
            continue
        col = basis.index[s]
        for hjp in cat.rules.fusion(hm, rho):
            f2 = fb(hm, rho, rho, hp, hjp, chi)
            if f2 is None:
                continue
            s2 = basis.replace_height(s, j, hjp)
            row = basis.index.get(s2)
            if row is not None:
                P[row, col] += f2 * np.conj(f1)
    basis._projectors[key] = P
    return LinearOp(basis, P, (j,), f"P[{cat.display(chi)}]_{j}")


def braid_op(cat: CategoryData, rho, j, sense, basis: FusionTreeBasis) -> LinearOp:
    """Braid generator as the twist-weighted sum of channel projectors."""
    if sense not in ("over", "under"):
        raise DomainError(f"braid sense must be 'over' or 'under', got {sense!r}")
    rho = cat.check_label(rho)
    n = basis.size
    B = np.zeros((n, n), dtype=complex)
    for chi in fusion_product(cat, rho, rho):
        w = twist_factor(cat, chi, rho, rho)
        if sense == "under":
            w = 1 / w
        B += w * projector_op(cat, rho, chi, j, basis).matrix
    return LinearOp(basis, B, (j,), f"B{'bar' if sense == 'under' else ''}_{j}")


def r_op(solution: AmplitudeSolution, mu, j, basis: FusionTreeBasis) -> LinearOp:
    """R_j(mu) = sum_chi A_chi(mu) P_j^{(chi)}."""
    cat = solution.cat
    if basis.cat.name != cat.name:
        raise DomainError("basis and solution belong to different categories")
    n = basis.size
    R = np.zeros((n, n), dtype=complex)
    for chi in solution.channels:
        R += amplitude_at(solution, chi, mu) * projector_op(cat, solution.rho, chi, j, basis).matrix
    return LinearOp(basis, R, (j,), f"R_{j}")


def transfer_matrix(solution: AmplitudeSolution, mu, basis: FusionTreeBasis) -> LinearOp:
    """T(mu) = R_L R_{L-1} ... R_1 on a periodic basis, read helically.

    The sweep tiles one 45-degree row of diamonds: the weight at site j uses
    the already-updated height on its left, and the seam diamond (j = L,
    wrapping onto h_0) closes the helix with the new h_{L-1} and new h_1 as
    neighbours.  A naive composition of the R_j operators cannot thread the
    new h_0 back into the j = 1 factor, and the resulting torn-seam product
    does not commute at distinct mu; the helical matrix elements do.
    """
    if basis.bc != PERIODIC:
        raise DomainError("transfer matrix needs a periodic basis")
    cat = solution.cat
    rho = solution.rho
    n = basis.size
    L = basis.L
    if L == 0:
        return LinearOp(basis, np.eye(n, dtype=complex), (), "T")
    fb = cat.f.block_value
    amps = [(chi, amplitude_at(solution, chi, mu)) for chi in solution.channels]

    diamonds = {}

    def diamond(lm, m, rp, mp):
        val = diamonds.get((lm, m, rp, mp))
        if val is None:
            val = 0j
            for chi, a in amps:
                f_in = fb(lm, rho, rho, rp, m, chi)
                if f_in is None:
                    continue
                f_out = fb(lm, rho, rho, rp, mp, chi)
                if f_out is None:
                    continue
                val += a * f_out * np.conj(f_in)
            diamonds[(lm, m, rp, mp)] = val
        return val

    T = np.zeros((n, n), dtype=complex)
    for col, s in enumerate(basis.states):
        h = s[:-1]
        for row, s2 in enumerate(basis.states):
            hp = s2[:-1]
            w = 1.0 + 0j
            for j in range(L):
                w *= diamond(hp[(j - 1) % L], h[j], h[(j + 1) % L], hp[j])
                if w == 0:
                    break
            T[row, col] = w
    return LinearOp(basis, T, tuple(range(1, L + 1)), "T")
