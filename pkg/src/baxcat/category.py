"""Category data model: fusion rules, quantum dimensions, twist data and
F-symbols, plus the axiom/identity checks that validate them.

Conventions
-----------
Labels are dense integers 0..n-1 with 0 the identity object.  Half-integer
su(2) spins are stored as doubled integers and rendered as "1/2", "3/2", ...
by the display layer.

F-symbols are stored as unitary blocks ``[F^{xyz}_w]_{uv}`` where u runs over
x*y and v over y*z.  The two-index symbol written ``F_{tt'}[r s; a b]`` is
``[F^{a r s}_b]_{t t'}``.  The tables are kept in the gauge where the
special-value and rotation identities below hold with positive square roots;
correctness of a table means passing `check_f_identities`, not matching any
published gauge.
"""

from __future__ import annotations

import cmath
import itertools
import json
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import AxiomError, CapabilityError, DomainError
from .report import VerificationReport, fmt_float

DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class ObjectLabel:
    id: int
    display: str


@dataclass(frozen=True)
class FusionRules:
    """Multiplicity-free fusion tensor N_{ab}^c in {0,1} with duality map."""

    n_objects: int
    N: np.ndarray               # shape (n, n, n), N[a, b, c] = N_{ab}^c
    dual: tuple

    def fusion(self, a, b):
        return [c for c in range(self.n_objects) if self.N[a, b, c]]

    def admissible(self, a, b, c) -> bool:
        return bool(self.N[a, b, c])

    def nhat(self, a) -> np.ndarray:
        # (N_a)_b^c = N_{ab}^c
        return self.N[a].astype(float)


@dataclass(frozen=True)
class QuantumDims:
    d: np.ndarray

    def __getitem__(self, a) -> float:
        return float(self.d[a])


@dataclass(frozen=True)
class TwistData:
    """Topological spins as exact rationals and the sign table nu_a^{bc}.

    nu is keyed (a, b, c) exactly on the admissible triples N_{bc}^a != 0.
    A Delta entry may be None for twist-only families whose source tables do
    not state that spin; no solver path consumes it.
    """

    Delta: tuple                 # Fraction (or None) per label
    nu: dict

    def spin(self, a) -> Fraction:
        fr = self.Delta[a]
        if fr is None:
            raise CapabilityError(f"topological spin of label {a} is not declared")
        return fr


class FSymbolTable:
    """Sparse block storage for [F^{xyz}_w]_{uv}."""

    def __init__(self, blocks, present=True):
        # blocks: {(x,y,z,w): (us tuple, vs tuple, complex matrix)}
        self.blocks = blocks
        self.present = present

    def block(self, x, y, z, w):
        return self.blocks.get((x, y, z, w))

    def block_value(self, x, y, z, w, u, v):
        blk = self.blocks.get((x, y, z, w))
        if blk is None:
            return None
        us, vs, mat = blk
        if u not in us or v not in vs:
            return None
        return complex(mat[us.index(u), vs.index(v)])

    def value(self, r, s, a, b, t, tp) -> complex:
        """F_{tt'}[r s; a b]; zero when inadmissible."""
        v = self.block_value(a, r, s, b, t, tp)
        return 0j if v is None else v

    def entries(self):
        for key in sorted(self.blocks):
            us, vs, mat = self.blocks[key]
            for i, u in enumerate(us):
                for j, v in enumerate(vs):
                    yield key, u, v, complex(mat[i, j])


@dataclass
class CategoryData:
    """Everything the solver and verifier consume.

    Twist-only families (no fusion tensor, no F) instead declare the rho x rho
    channel list and the per-phi tensor-product adjacency taken verbatim from
    the source tables.
    """

    name: str
    labels: tuple
    twists: TwistData
    rules: FusionRules | None = None
    dims: QuantumDims | None = None
    f: FSymbolTable | None = None
    # declared data for twist-only families
    channels: tuple | None = None
    rho_declared: int | None = None
    tp_adjacency: dict | None = None     # phi id -> tuple of directed (a, b)
    notes: tuple = ()                    # data-provenance caveats, exported as-is

    @property
    def n_objects(self) -> int:
        return len(self.labels)

    @property
    def baxterisable(self) -> bool:
        full = self.rules is not None and self.dims is not None
        declared = self.channels is not None and self.tp_adjacency is not None
        return (full or declared) and self.twists is not None

    @property
    def representable(self) -> bool:
        return self.baxterisable and self.f is not None and self.f.present

    def capabilities(self) -> dict:
        return {"baxterisable": self.baxterisable, "representable": self.representable}

    def check_label(self, a) -> int:
        if not isinstance(a, (int, np.integer)) or not (0 <= a < self.n_objects):
            raise DomainError(f"invalid label {a!r} for {self.name}")
        return int(a)

    def display(self, a) -> str:
        return self.labels[self.check_label(a)].display

    def label_id(self, text) -> int:
        for lab in self.labels:
            if lab.display == text:
                return lab.id
        raise DomainError(f"unknown label {text!r} for {self.name}")


# ---------------------------------------------------------------------------
# operations


def fusion_product(cat: CategoryData, a, b):
    """Sorted channels of a x b."""
    a, b = cat.check_label(a), cat.check_label(b)
    if cat.rules is None:
        raise CapabilityError(f"{cat.name} carries no fusion tensor")
    return cat.rules.fusion(a, b)


def check_fusion_ring(rules: FusionRules) -> VerificationReport:
    """Identity, commutativity, duality and associativity axioms.

    The report carries the first counterexample of each failing axiom.
    """
    n = rules.n_objects
    N = rules.N
    rep = VerificationReport("fusion_ring", params={"n_objects": n})

    bad = None
    for a, b in itertools.product(range(n), repeat=2):
        if N[a, 0, b] != (1 if a == b else 0) or N[0, a, b] != (1 if a == b else 0):
            bad = (a, b)
            break
    rep.add("identity", 0.0 if bad is None else 1.0, 0.5, samples=n * n,
            **({} if bad is None else {"counterexample": list(bad)}))

    bad = None
    for a, b, c in itertools.product(range(n), repeat=3):
        if N[a, b, c] != N[b, a, c]:
            bad = (a, b, c)
            break
    rep.add("commutativity", 0.0 if bad is None else 1.0, 0.5, samples=n ** 3,
            **({} if bad is None else {"counterexample": list(bad)}))

    bad = None
    for a in range(n):
        abar = rules.dual[a]
        for b in range(n):
            want = 1 if b == abar else 0
            if N[a, b, 0] != want:
                bad = (a, b)
                break
        if bad:
            break
    rep.add("duality", 0.0 if bad is None else 1.0, 0.5, samples=n * n,
            **({} if bad is None else {"counterexample": list(bad)}))

    bad = None
    Ni = N.astype(np.int64)
    for a, b, c, d in itertools.product(range(n), repeat=4):
        lhs = int(np.dot(Ni[a, b], Ni[:, c, d]))
        rhs = int(np.dot(Ni[b, c], Ni[a, :, d]))
        if lhs != rhs:
            bad = (a, b, c, d)
            break
    rep.add("associativity", 0.0 if bad is None else 1.0, 0.5, samples=n ** 4,
            **({} if bad is None else {"counterexample": list(bad)}))
    return rep


def compute_quantum_dims(rules: FusionRules, tol: float = DEFAULT_TOL) -> QuantumDims:
    """d_a = Perron eigenvalue of the fusion matrix of a; d_0 = 1 exactly."""
    ring = check_fusion_ring(rules)
    if not ring.passed:
        failing = [c.name for c in ring.checks if not c.passed]
        raise AxiomError(f"fusion ring axioms violated: {failing}")
    d = np.empty(rules.n_objects)
    for a in range(rules.n_objects):
        ev = np.linalg.eigvals(rules.nhat(a))
        d[a] = float(np.max(ev.real))
    d[0] = 1.0
    return QuantumDims(d)


def _phase(frac: Fraction) -> complex:
    """exp(i pi frac) from an exact rational, reduced mod 2 first."""
    frac = frac % 2
    return cmath.exp(1j * math.pi * (frac.numerator / frac.denominator))


def twist_factor(cat: CategoryData, a, b, c) -> complex:
    """Omega_a^{bc} = nu_a^{bc} exp(i pi (Delta_b + Delta_c - Delta_a))."""
    a, b, c = cat.check_label(a), cat.check_label(b), cat.check_label(c)
    nu = cat.twists.nu.get((a, b, c))
    if nu is None:
        raise DomainError(
            f"triple ({cat.display(a)}; {cat.display(b)}, {cat.display(c)}) "
            f"is not admissible in {cat.name}")
    sp = cat.twists.spin
    return nu * _phase(sp(b) + sp(c) - sp(a))


def twist_edge_ratio(cat: CategoryData, rho, a, b) -> complex:
    """Omega_rho^{rho b} / Omega_rho^{rho a} in the gauge-free form
    nu_a^{rho rho} nu_b^{rho rho} exp(i pi (Delta_b - Delta_a))."""
    rho, a, b = cat.check_label(rho), cat.check_label(a), cat.check_label(b)
    nua = cat.twists.nu.get((a, rho, rho))
    nub = cat.twists.nu.get((b, rho, rho))
    if nua is None or nub is None:
        raise DomainError(
            f"missing nu entry for channels {cat.display(a)}, {cat.display(b)} "
            f"of {cat.display(rho)} x {cat.display(rho)} in {cat.name}")
    sp = cat.twists.spin
    return nua * nub * _phase(sp(b) - sp(a))


# ---------------------------------------------------------------------------
# F-symbol identity checks


def _pentagon_residual(cat: CategoryData, f: FSymbolTable):
    """Max |pentagon defect| with the offending label tuple."""
    n = cat.n_objects
    rules = cat.rules
    fv = f.block_value
    worst, where = 0.0, None
    rng = range(n)
    for a, b in itertools.product(rng, repeat=2):
        for fa in rules.fusion(a, b):
            for c in rng:
                for g in rules.fusion(fa, c):
                    for d in rng:
                        for e in rules.fusion(g, d):
                            for l in rules.fusion(c, d):
                                for kk in rules.fusion(b, l):
                                    if not rules.N[a, kk, e]:
                                        continue
                                    v1 = fv(fa, c, d, e, g, l)
                                    v2 = fv(a, b, l, e, fa, kk)
                                    lhs = (v1 or 0j) * (v2 or 0j)
                                    rhs = 0j
                                    for h in rules.fusion(b, c):
                                        t1 = fv(a, b, c, g, fa, h)
                                        if t1 is None:
                                            continue
                                        t2 = fv(a, h, d, e, g, kk)
                                        if t2 is None:
                                            continue
                                        t3 = fv(b, c, d, kk, h, l)
                                        if t3 is None:
                                            continue
                                        rhs += t1 * t2 * t3
                                    r = abs(lhs - rhs)
                                    if r > worst:
                                        worst, where = r, (a, b, c, d, e, fa, g, l, kk)
    return worst, where


def _f0_residual(cat: CategoryData, f: FSymbolTable):
    """Special values: F_{tt'}[r 0; a b] = delta_{tb} delta_{t'r} N_{ab}^r and,
    for self-dual r, F_{s0}[r r; a a] = F_{0s}[r r; a a] = sqrt(d_s/(d_a d_r)).

    The square-root identities come from closing an (r, r) bubble and so only
    make sense when 0 sits in r x r; non-self-dual labels are outside their
    domain.
    """
    n, rules, d = cat.n_objects, cat.rules, cat.dims
    worst, where = 0.0, None
    for a, r in itertools.product(range(n), repeat=2):
        for b in rules.fusion(a, r):
            blk = f.block(a, r, 0, b)
            if blk is None:
                r_ = 1.0
                wh = (a, r, b, "missing")
            else:
                us, vs, mat = blk
                tgt = np.zeros_like(mat)
                if b in us and r in vs:
                    tgt[us.index(b), vs.index(r)] = 1.0
                r_ = float(np.max(np.abs(mat - tgt)))
                wh = (a, r, b)
            if r_ > worst:
                worst, where = r_, wh
        if rules.dual[r] != r:
            continue
        for s in rules.fusion(a, r):
            v = f.block_value(a, r, r, a, s, 0)
            tgt = math.sqrt(d[s] / (d[a] * d[r]))
            r_ = abs((v if v is not None else 0.0) - tgt)
            if r_ > worst:
                worst, where = r_, (a, r, s, "s0")
    for r in range(n):
        if rules.dual[r] != r:
            continue
        for s in rules.fusion(r, r):
            v = f.block_value(r, r, r, r, 0, s)
            tgt = math.sqrt(d[s] / (d[r] * d[r]))
            r_ = abs((v if v is not None else 0.0) - tgt)
            if r_ > worst:
                worst, where = r_, (r, s, "0s")
    return worst, where


def _usefulid_residual(cat: CategoryData, f: FSymbolTable):
    """Rotation identity: sqrt(d_A d_G / d_b) F_{Bb}[G A; a c] equals
    sqrt(d_A d_B / d_c) F_{Gc}[a b; B A] equals sqrt(d_G d_B / d_a) F_{Aa}[b c; G B].

    Checked on all-self-dual label tuples, the domain of the unoriented
    triangle re-slicing it encodes.
    """
    n, rules, d = cat.n_objects, cat.rules, cat.dims
    selfdual = [x for x in range(n) if rules.dual[x] == x]
    worst, where = 0.0, None
    for a, b, c in itertools.product(selfdual, repeat=3):
        if not rules.N[a, b, c]:
            continue
        for G, A in itertools.product(selfdual, repeat=2):
            if not rules.N[G, A, b]:
                continue
            for B in rules.fusion(a, G):
                if rules.dual[B] != B or not rules.N[B, A, c]:
                    continue
                e1 = math.sqrt(d[A] * d[G] / d[b]) * f.value(G, A, a, c, B, b)
                e2 = math.sqrt(d[A] * d[B] / d[c]) * f.value(a, b, B, A, G, c)
                e3 = math.sqrt(d[G] * d[B] / d[a]) * f.value(b, c, G, B, A, a)
                r_ = max(abs(e1 - e2), abs(e1 - e3))
                if r_ > worst:
                    worst, where = r_, (a, b, c, G, A, B)
    return worst, where


def _unitarity_residual(f: FSymbolTable):
    worst, where = 0.0, None
    for key in sorted(f.blocks):
        us, vs, mat = f.blocks[key]
        if len(us) != len(vs):
            return 1.0, key
        r_ = float(np.max(np.abs(mat @ mat.conj().T - np.eye(len(us))))) if len(us) else 0.0
        if r_ > worst:
            worst, where = r_, key
    return worst, where


def check_f_identities(cat: CategoryData, tol: float = 1e-10) -> VerificationReport:
    """Pentagon, special values, rotation identity and block unitarity."""
    if not cat.representable:
        raise CapabilityError(f"{cat.name} has no F-symbol table")
    rep = VerificationReport("f_identities", params={"category": cat.name})
    r, w = _pentagon_residual(cat, cat.f)
    rep.add("pentagon", r, tol, **({"worst_tuple": list(w)} if w else {}))
    r, w = _f0_residual(cat, cat.f)
    rep.add("special_values", r, tol, **({"worst_tuple": list(w)} if w else {}))
    r, w = _usefulid_residual(cat, cat.f)
    rep.add("rotation", r, tol, **({"worst_tuple": list(w)} if w else {}))
    r, w = _unitarity_residual(cat.f)
    rep.add("unitarity", r, tol, **({"worst_block": list(w)} if w else {}))
    return rep


# ---------------------------------------------------------------------------
# JSON import/export

_SCHEMA = "baxcat-category-v1"


def _cfmt(z: complex):
    return [fmt_float(z.real), fmt_float(z.imag)]


def category_to_json(cat: CategoryData) -> str:
    doc = {
        "schema": _SCHEMA,
        "name": cat.name,
        "labels": [lab.display for lab in cat.labels],
        "Delta": [None if fr is None else f"{fr.numerator}/{fr.denominator}"
                  for fr in cat.twists.Delta],
        "nu": [[a, b, c, int(s)] for (a, b, c), s in sorted(cat.twists.nu.items())],
    }
    if cat.rules is not None:
        doc["dual"] = [int(x) for x in cat.rules.dual]
        doc["N"] = [[int(a), int(b), int(c)] for a, b, c in
                    zip(*np.nonzero(cat.rules.N))]  # sparse triples, value always 1
    if cat.dims is not None:
        doc["d"] = [fmt_float(x) for x in cat.dims.d]
    if cat.f is not None and cat.f.present:
        ftab = []
        for (x, y, z, w), u, v, val in cat.f.entries():
            ftab.append([x, y, z, w, u, v, _cfmt(val)])
        doc["F"] = ftab
    if cat.channels is not None:
        doc["channels"] = list(cat.channels)
        doc["rho"] = cat.rho_declared
        doc["tp_adjacency"] = {str(phi): [list(e) for e in edges]
                               for phi, edges in sorted(cat.tp_adjacency.items())}
    if cat.notes:
        doc["notes"] = list(cat.notes)
    return json.dumps(doc, indent=1)


def category_from_json(text: str) -> CategoryData:
    doc = json.loads(text)
    if doc.get("schema") != _SCHEMA:
        raise DomainError(f"unknown category schema {doc.get('schema')!r}")
    labels = tuple(ObjectLabel(i, s) for i, s in enumerate(doc["labels"]))
    n = len(labels)
    Delta = tuple(None if s is None else Fraction(s) for s in doc["Delta"])
    nu = {(a, b, c): s for a, b, c, s in doc["nu"]}
    twists = TwistData(Delta, nu)
    rules = None
    if "N" in doc:
        N = np.zeros((n, n, n), dtype=np.uint8)
        for a, b, c in doc["N"]:
            N[a, b, c] = 1
        rules = FusionRules(n, N, tuple(doc["dual"]))
    dims = QuantumDims(np.array([float(x) for x in doc["d"]])) if "d" in doc else None
    f = None
    if "F" in doc:
        blocks = {}
        for x, y, z, w, u, v, (re, im) in doc["F"]:
            blocks.setdefault((x, y, z, w), []).append((u, v, complex(float(re), float(im))))
        out = {}
        for key, ents in blocks.items():
            us = sorted({u for u, _, _ in ents})
            vs = sorted({v for _, v, _ in ents})
            mat = np.zeros((len(us), len(vs)), dtype=complex)
            for u, v, val in ents:
                mat[us.index(u), vs.index(v)] = val
            out[key] = (tuple(us), tuple(vs), mat)
        f = FSymbolTable(out)
    channels = tuple(doc["channels"]) if "channels" in doc else None
    tp = None
    if "tp_adjacency" in doc:
        tp = {int(phi): tuple(tuple(e) for e in edges)
              for phi, edges in doc["tp_adjacency"].items()}
    return CategoryData(doc["name"], labels, twists, rules=rules, dims=dims, f=f,
                        channels=channels, rho_declared=doc.get("rho"), tp_adjacency=tp,
                        notes=tuple(doc.get("notes", ())))
