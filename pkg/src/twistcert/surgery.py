"""Integer homology calculus on the boundary torus of a blown-up periodic
orbit: meridian/longitude classes, twist numbers, the surgery-index vs
twist-order equivalence table, the block surgery planner and the monodromy
composer.

Classes on the torus are written in a (meridian, longitude) basis; the basis
tag records whether the longitude coefficient refers to the stable longitude
or to the one traced by the fiber surface. Fiber levels are symbolic
(block index, phase), never floating point.
"""
from __future__ import annotations

from dataclasses import dataclass

from .words import (
    CurveLetter,
    TBlock,
    TDecomposition,
    TwistWord,
)

STABLE = "stable"
SURFACE = "surface"

PHASE_ZERO = "0"
PHASE_3PI2 = "3pi/2"

# (twist, index k) pairs admitting a fibration-preserving equivalence with a
# Dehn twist of order -k; twist 0 admits every k with order k.
_TWISTED_CASES = {(1, 2), (-1, -2), (2, 1), (-2, -1)}


@dataclass(frozen=True)
class TorusClass:
    """mu*meridian + lam*longitude, with the longitude basis tagged."""

    mu: int
    lam: int
    basis: str = SURFACE

    def __post_init__(self) -> None:
        if self.basis not in (STABLE, SURFACE):
            raise ValueError(f"unknown basis tag {self.basis!r}")

    def normalized(self) -> TorusClass:
        """Sign-normalize so the first nonzero coefficient is positive
        (Dehn fillings depend only on the unoriented class)."""
        lead = self.mu if self.mu != 0 else self.lam
        if lead < 0:
            return TorusClass(-self.mu, -self.lam, self.basis)
        return self


def bracket(x: TorusClass, y: TorusClass) -> int:
    """Alternating pairing mu1*lam2 - lam1*mu2 on a common basis."""
    if x.basis != y.basis:
        raise ValueError("classes use different longitude bases; convert first")
    return x.mu * y.lam - x.lam * y.mu


def intersection(x: TorusClass, y: TorusClass) -> int:
    """Oriented intersection number, oriented so Int(section, meridian) = +1
    for dynamically oriented sections."""
    return bracket(y, x)


def twist_of_orbit(curve: CurveLetter) -> int:
    """Twist number of the local stable manifold of the orbit over the curve,
    with respect to the fiber containing it: 0 for a- and b-orbits, +1 for
    c-orbits."""
    if curve.kind == "d":
        raise ValueError("d-orbits define the base monodromy; no surgeries on them")
    if curve.kind not in ("a", "b", "c"):
        raise ValueError(f"unknown orbit kind {curve.kind!r}")
    return 1 if curve.kind == "c" else 0


class TwistOrderRejection(ValueError):
    """No fibration-preserving equivalence is established for (twist, k)."""

    def __init__(self, twist: int, index_k: int):
        super().__init__(
            f"no twist-order equivalence for twist={twist}, index k={index_k}")
        self.twist = twist
        self.index_k = index_k


def dehn_fried_equivalent_twist_order(twist: int, index_k: int) -> int:
    """Dehn-twist order equivalent to the index-k surgery on an orbit with the
    given twist number: any k at twist 0 (order k); exactly the four twisted
    cases (1,2), (-1,-2), (2,1), (-2,-1) otherwise (order -k)."""
    if twist == 0:
        return index_k
    if (twist, index_k) in _TWISTED_CASES:
        return -index_k
    raise TwistOrderRejection(twist, index_k)


def stable_longitude_in_surface_basis(twist: int) -> TorusClass:
    """The stable longitude written in the (meridian, surface longitude)
    basis: (-twist, 1)."""
    return TorusClass(-twist, 1, SURFACE)


def new_meridian_class(twist: int, index_k: int) -> TorusClass:
    """Post-surgery meridian mu + k*lambda_stable, rewritten in the surface
    basis as (1 - k*twist, k) and sign-normalized."""
    return TorusClass(1 - index_k * twist, index_k, SURFACE).normalized()


def rederive_longitude_shift(twist: int) -> int:
    """Self-check: the coefficient j in lambda' = lambda + j*mu recovered from
    the intersection pairing equals -twist."""
    lam = TorusClass(0, 1, SURFACE)
    lam_prime = TorusClass(-twist, 1, SURFACE)
    assert intersection(lam_prime, lam) == twist
    return lam_prime.mu


@dataclass(frozen=True)
class OrbitSpec:
    """A periodic orbit sitting in a fiber: curve, symbolic fiber level
    (block index, phase tag) and its twist number."""

    curve: CurveLetter
    block: int
    phase: str
    twist: int

    def __post_init__(self) -> None:
        if self.curve.kind == "d":
            raise ValueError("d-orbits are not surgery sites")
        if self.phase not in (PHASE_ZERO, PHASE_3PI2):
            raise ValueError(f"unknown phase {self.phase!r}")
        if self.block < 1:
            raise ValueError("block index must be >= 1")


@dataclass(frozen=True)
class SurgeryOp:
    """One surgery: orbit, index k, and the induced twist order l; the
    triple (twist, k, l) must satisfy the equivalence table."""

    orbit: OrbitSpec
    index_k: int
    order_l: int

    def __post_init__(self) -> None:
        expected = dehn_fried_equivalent_twist_order(self.orbit.twist, self.index_k)
        if expected != self.order_l:
            raise ValueError(
                f"(twist={self.orbit.twist}, k={self.index_k}) gives order "
                f"{expected}, not {self.order_l}")


@dataclass(frozen=True)
class SurgeryPlan:
    """Surgeries grouped by block against a base of block_count copies of the
    trivial-on-homology d-twist product."""

    genus: int
    block_count: int
    ops: tuple[tuple[SurgeryOp, ...], ...]

    def __post_init__(self) -> None:
        if len(self.ops) != self.block_count:
            raise ValueError("ops must be grouped into block_count groups")
        for s, group in enumerate(self.ops, start=1):
            seen: set[tuple[str, str, int]] = set()
            for op in group:
                if op.orbit.block != s:
                    raise ValueError("op filed under the wrong block")
                if not op.orbit.curve.valid_for(self.genus):
                    raise ValueError(f"orbit {op.orbit.curve} out of range for genus {self.genus}")
                key = (op.orbit.phase, op.orbit.curve.kind, op.orbit.curve.index)
                if key in seen:
                    raise ValueError(f"duplicate orbit {op.orbit.curve} in block {s}")
                seen.add(key)

    def op_count(self) -> int:
        return sum(len(group) for group in self.ops)


def plan_from_T_word(dec: TDecomposition) -> SurgeryPlan:
    """Surgery plan realizing the decomposition: per block, an index-p_i
    surgery on each a_i orbit and an index-q_j surgery on each b_j orbit
    (twist 0), and an index +2 surgery on each c_k orbit with r_k = -2
    (twist +1, order -2)."""
    groups: list[tuple[SurgeryOp, ...]] = []
    for s, block in enumerate(dec.blocks, start=1):
        group: list[SurgeryOp] = []
        for i, p_i in enumerate(block.p, start=1):
            if p_i:
                orbit = OrbitSpec(CurveLetter("a", i), s, PHASE_ZERO, 0)
                group.append(SurgeryOp(orbit, p_i, dehn_fried_equivalent_twist_order(0, p_i)))
        for k, r_k in enumerate(block.r, start=1):
            if r_k:
                orbit = OrbitSpec(CurveLetter("c", k), s, PHASE_ZERO, 1)
                group.append(SurgeryOp(orbit, -r_k, dehn_fried_equivalent_twist_order(1, -r_k)))
        for j, q_j in enumerate(block.q, start=1):
            if q_j:
                orbit = OrbitSpec(CurveLetter("b", j), s, PHASE_3PI2, 0)
                group.append(SurgeryOp(orbit, q_j, dehn_fried_equivalent_twist_order(0, q_j)))
        groups.append(tuple(group))
    return SurgeryPlan(dec.genus, len(dec.blocks), tuple(groups))


def monodromy_from_plan(plan: SurgeryPlan) -> TwistWord:
    """The fibration monodromy after performing the plan, as a word in
    canonical block form (d-part, b-part, c-part, a-part per block)."""
    g = plan.genus
    blocks: list[TBlock] = []
    for group in plan.ops:
        p = [0] * g
        q = [0] * g
        r = [0] * (g - 1)
        for op in group:
            kind, index = op.orbit.curve.kind, op.orbit.curve.index
            if kind == "a":
                p[index - 1] = op.order_l
            elif kind == "b":
                q[index - 1] = op.order_l
            else:
                r[index - 1] = op.order_l
        blocks.append(TBlock(g, tuple(p), tuple(q), tuple(r)))
    return TDecomposition(g, tuple(blocks)).reassemble()


def plan_as_json_dict(plan: SurgeryPlan) -> dict:
    """Structured-text form: ordered blocks, each op as curve/phase/k/twist/l."""
    return {
        "genus": plan.genus,
        "block_count": plan.block_count,
        "blocks": [
            {
                "ops": [
                    {
                        "curve": str(op.orbit.curve),
                        "phase": op.orbit.phase,
                        "k": op.index_k,
                        "twist": op.orbit.twist,
                        "l": op.order_l,
                    }
                    for op in group
                ]
            }
            for group in plan.ops
        ],
    }
