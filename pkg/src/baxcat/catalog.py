"""Built-in category families.

Representable families (full F-symbol tables): su(2)_k, the minimal-model
twist variant A_{k+1}, and the Z_M Tambara-Yamagami clock categories.
Twist-only families (spins, signs and declared tensor-product adjacency,
no fusion tensor): so(n)_k, sp(2m)_k, (G_2)_k.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .category import (CategoryData, FSymbolTable, FusionRules, ObjectLabel,
                       QuantumDims, TwistData)
from .errors import CapabilityError, DomainError
from .sixj import su2_admissible, su2k_f_blocks

FAMILIES = ("su2", "minimal", "ty", "so", "sp", "g2")


@dataclass(frozen=True)
class FamilySpec:
    family: str
    params: tuple      # sorted (name, value) pairs

    @staticmethod
    def make(family: str, **params) -> "FamilySpec":
        if family not in FAMILIES:
            raise DomainError(f"unknown family {family!r}; know {FAMILIES}")
        return FamilySpec(family, tuple(sorted(params.items())))

    def param(self, name) -> int:
        for key, val in self.params:
            if key == name:
                return val
        raise DomainError(f"family {self.family!r} needs parameter {name!r}")


def spin_display(A: int) -> str:
    return str(A // 2) if A % 2 == 0 else f"{A}/2"


def _su2_rules(k: int) -> FusionRules:
    n = k + 1
    N = np.zeros((n, n, n), dtype=np.uint8)
    for a, b, c in itertools.product(range(n), repeat=3):
        if su2_admissible(a, b, c, k):
            N[a, b, c] = 1
    return FusionRules(n, N, tuple(range(n)))


def _su2_dims(k: int) -> QuantumDims:
    s0 = math.sin(math.pi / (k + 2))
    d = np.array([math.sin((A + 1) * math.pi / (k + 2)) / s0 for A in range(k + 1)])
    d[0] = 1.0
    return QuantumDims(d)


def _su2_nu(k: int) -> dict:
    nu = {}
    for a, b, c in itertools.product(range(k + 1), repeat=3):
        if su2_admissible(b, c, a, k):
            nu[(a, b, c)] = -1 if ((b + c - a) // 2) % 2 else 1
    return nu


def _check_level(k):
    if not isinstance(k, int) or k < 1:
        raise DomainError(f"level must be an integer >= 1, got {k!r}")


def build_su2k(k: int) -> CategoryData:
    """su(2)_k: spins 0..k/2, truncated fusion, Delta_a = a(a+1)/(k+2)."""
    _check_level(k)
    labels = tuple(ObjectLabel(A, spin_display(A)) for A in range(k + 1))
    Delta = tuple(Fraction(A * (A + 2), 4 * (k + 2)) for A in range(k + 1))
    return CategoryData(
        name=f"su2_k{k}",
        labels=labels,
        twists=TwistData(Delta, _su2_nu(k)),
        rules=_su2_rules(k),
        dims=_su2_dims(k),
        f=FSymbolTable(su2k_f_blocks(k)),
    )


def build_minimal_A(k: int) -> CategoryData:
    """A_{k+1}: same fusion/dims/F as su(2)_k, minimal-model spins, all nu=+1."""
    _check_level(k)
    labels = tuple(ObjectLabel(A, spin_display(A)) for A in range(k + 1))
    Delta = tuple(Fraction(A * A, 4) - Fraction(A * (A + 2), 4 * (k + 2))
                  for A in range(k + 1))
    nu = {key: 1 for key in _su2_nu(k)}
    return CategoryData(
        name=f"minimalA_{k + 1}",
        labels=labels,
        twists=TwistData(Delta, nu),
        rules=_su2_rules(k),
        dims=_su2_dims(k),
        f=FSymbolTable(su2k_f_blocks(k)),
    )


# ---------------------------------------------------------------------------
# Tambara-Yamagami


def _ty_fusion(a, b, M):
    X = M
    if a == X and b == X:
        return list(range(M))
    if a == X or b == X:
        return [X]
    return [(a + b) % M]


@lru_cache(maxsize=None)
def ty_f_blocks(M: int) -> dict:
    """Z_M Tambara-Yamagami F blocks, bicharacter omega^{ab}, FS indicator +1.

    Nontrivial values sit on the (a,X,c), (X,b,X) and (X,X,X) block patterns;
    the placement below passes the pentagon for every M.
    """
    X = M
    omega = np.exp(2j * np.pi / M)
    lab = range(M + 1)
    blocks = {}
    for x, y, z in itertools.product(lab, repeat=3):
        ws = set()
        for u in _ty_fusion(x, y, M):
            ws.update(_ty_fusion(u, z, M))
        for w in sorted(ws):
            us = tuple(u for u in _ty_fusion(x, y, M) if w in _ty_fusion(u, z, M))
            vs = tuple(v for v in _ty_fusion(y, z, M) if w in _ty_fusion(x, v, M))
            if not us or not vs:
                continue
            mat = np.zeros((len(us), len(vs)), dtype=complex)
            for i, u in enumerate(us):
                for j, v in enumerate(vs):
                    if x == X and y == X and z == X:
                        mat[i, j] = omega ** (-u * v) / math.sqrt(M)
                    elif x != X and y == X and z != X:
                        mat[i, j] = omega ** (x * z)
                    elif x == X and y != X and z == X:
                        mat[i, j] = omega ** (y * w)
                    else:
                        mat[i, j] = 1.0
            blocks[(x, y, z, w)] = (us, vs, mat)
    return blocks


def build_tambara_yamagami(M: int) -> CategoryData:
    """TY_M: objects 0..M-1 and X; h_a = a(M-a)/M, all nu = +1.

    Delta_X is a stored placeholder (1/16): only the clock-label spins enter
    the solver and the verifiers, and in braid generators it contributes a
    global phase that cancels in every relation.  The placeholder is flagged
    in the export notes.
    """
    if not isinstance(M, int) or M < 2:
        raise DomainError(f"TY parameter M must be an integer >= 2, got {M!r}")
    X = M
    n = M + 1
    labels = tuple(ObjectLabel(a, str(a)) for a in range(M)) + (ObjectLabel(X, "X"),)
    N = np.zeros((n, n, n), dtype=np.uint8)
    for a, b in itertools.product(range(n), repeat=2):
        for c in _ty_fusion(a, b, M):
            N[a, b, c] = 1
    dual = tuple((M - a) % M for a in range(M)) + (X,)
    rules = FusionRules(n, N, dual)
    d = np.ones(n)
    d[X] = math.sqrt(M)
    Delta = tuple(Fraction(a * (M - a), M) for a in range(M)) + (Fraction(1, 16),)
    nu = {}
    for a, b, c in itertools.product(range(n), repeat=3):
        if N[b, c, a]:
            nu[(a, b, c)] = 1
    return CategoryData(
        name=f"ty_{M}",
        labels=labels,
        twists=TwistData(Delta, nu),
        rules=rules,
        dims=QuantumDims(d),
        f=FSymbolTable(ty_f_blocks(M)),
        notes=("Delta_X is a placeholder unused by the solver; braid phases "
               "involving it are global and cancel in every relation",),
    )


# ---------------------------------------------------------------------------
# twist-only Lie families


def _lie_category(name, label_names, rho_idx, channels, casimirs, signs, denom,
                  adjacency) -> CategoryData:
    labels = tuple(ObjectLabel(i, s) for i, s in enumerate(label_names))
    Delta = []
    for i in range(len(label_names)):
        if i in casimirs:
            Delta.append(casimirs[i] / denom)
        else:
            Delta.append(None)       # not stated in the source tables
    nu = {(ch, rho_idx, rho_idx): signs[ch] for ch in channels}
    notes = ()
    if any(d is None for d in Delta):
        notes = ("spins outside the channel list are not declared by the "
                 "source tables",)
    return CategoryData(
        name=name,
        labels=labels,
        twists=TwistData(tuple(Delta), nu),
        channels=tuple(channels),
        rho_declared=rho_idx,
        tp_adjacency=adjacency,
        notes=notes,
    )


def build_lie_twist_data(spec: FamilySpec) -> CategoryData:
    """so(n)_k, sp(2m)_k and (G_2)_k twist-only data, tables copied verbatim.

    Channel order is 0, A (antisymmetric), S (symmetric); rho is the vector
    object V (for G_2, V is itself a channel).  The tensor-product graphs are
    the declared per-phi adjacency; no fusion tensor is carried.
    """
    k = spec.param("k")
    _check_level(k)
    if spec.family == "so":
        n = spec.param("n")
        if not isinstance(n, int) or n < 3:
            raise DomainError(f"so(n) needs integer n >= 3, got {n!r}")
        return _lie_category(
            name=f"so{n}_k{k}",
            label_names=("0", "A", "S", "V"),
            rho_idx=3,
            channels=(0, 1, 2),
            casimirs={0: Fraction(0), 1: Fraction(n - 2), 2: Fraction(n)},
            signs={0: 1, 1: -1, 2: 1},
            denom=n + k - 2,
            adjacency={1: ((0, 1), (1, 2)), 2: ((0, 2), (2, 1))},
        )
    if spec.family == "sp":
        m = spec.param("m")
        if not isinstance(m, int) or m < 2:
            raise DomainError(f"sp(2m) needs integer m >= 2, got {m!r}")
        return _lie_category(
            name=f"sp{2 * m}_k{k}",
            label_names=("0", "A", "S", "V"),
            rho_idx=3,
            channels=(0, 1, 2),
            casimirs={0: Fraction(0), 1: Fraction(m), 2: Fraction(m + 1)},
            signs={0: -1, 1: -1, 2: 1},
            denom=m + k + 1,
            adjacency={1: ((0, 1), (1, 2)), 2: ((0, 2), (2, 1))},
        )
    if spec.family == "g2":
        return _lie_category(
            name=f"g2_k{k}",
            label_names=("0", "V", "A", "S"),
            rho_idx=1,
            channels=(0, 1, 2, 3),
            casimirs={0: Fraction(0), 1: Fraction(2), 2: Fraction(4), 3: Fraction(14, 3)},
            signs={0: 1, 1: -1, 2: -1, 3: 1},
            denom=k + 4,
            adjacency={2: ((0, 2), (2, 3), (3, 1))},
        )
    raise CapabilityError(f"{spec.family!r} is not a twist-only family")


def build_family(family: str, **params) -> CategoryData:
    spec = FamilySpec.make(family, **params)
    if family == "su2":
        return build_su2k(spec.param("k"))
    if family == "minimal":
        return build_minimal_A(spec.param("k"))
    if family == "ty":
        return build_tambara_yamagami(spec.param("M"))
    return build_lie_twist_data(spec)


def catalog_rows():
    """One descriptor per family for `catalog list`."""
    return [
        {"family": "su2", "params": "k>=1", "objects": "spins 0..k/2",
         "baxterisable": True, "representable": True},
        {"family": "minimal", "params": "k>=1", "objects": "spins 0..k/2 (A_{k+1} twists)",
         "baxterisable": True, "representable": True},
        {"family": "ty", "params": "M>=2", "objects": "Z_M clock labels and X",
         "baxterisable": True, "representable": True},
        {"family": "so", "params": "n>=3, k>=1", "objects": "channels 0, A, S of V x V",
         "baxterisable": True, "representable": False},
        {"family": "sp", "params": "m>=2, k>=1", "objects": "channels 0, A, S of V x V",
         "baxterisable": True, "representable": False},
        {"family": "g2", "params": "k>=1", "objects": "channels 0, V, A, S of V x V",
         "baxterisable": True, "representable": False},
    ]
