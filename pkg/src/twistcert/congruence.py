"""The subgroup generated by the twist matrices A_i^{+-1}, B_i^{+-1},
C_i^{+-2}: root-subgroup matrices, machine verification of the generation
identities, constructive word synthesis, the mod-2 block obstruction, the
exact genus-2 finite-quotient membership test, and the index computation.

Generator words evaluate in literal (written) product order, unlike twist
words; every synthesized certificate is independently re-checkable by
multiplying its letters out.
"""
from __future__ import annotations

import os
import struct
from dataclasses import dataclass

import numpy as np

from .matrices import IntMatrix, ModMatrix, SpMatrix, mat_pow, reduce_mod, symplectic_form
from .words import CurveLetter, generator_matrix

ROOT_KINDS = ("V", "W", "X", "Y", "Z")

CACHE_ENV_VAR = "TWISTCERT_CACHE"
_CACHE_MAGIC = b"TWCL"
_CACHE_VERSION = 1

# |Sp(4, F_2)| = 2^4 * (2^2 - 1)(2^4 - 1)
_SP4_F2_ORDER = 720


def sp_group_order_mod(genus: int, modulus: int) -> int:
    """|Sp(2g, Z/2^k Z)| = |Sp(2g, F_2)| * 2^((k-1) * g(2g+1))."""
    if modulus & (modulus - 1) or modulus < 2:
        raise ValueError("modulus must be a power of two >= 2")
    k = modulus.bit_length() - 1
    order_f2 = 2 ** (genus * genus)
    for i in range(1, genus + 1):
        order_f2 *= 4 ** i - 1
    return order_f2 * 2 ** ((k - 1) * genus * (2 * genus + 1))


# ---------------------------------------------------------------------------
# Generator and root matrices
# ---------------------------------------------------------------------------

def twist_gen(kind: str, index: int, genus: int) -> SpMatrix:
    """A_i, B_i or C_i as a symplectic matrix."""
    return generator_matrix(CurveLetter(kind.lower(), index), genus)


@dataclass(frozen=True)
class RootSpec:
    """One-parameter root subgroup element: kind, indices, exponent t."""

    kind: str
    i: int
    j: int = 0
    t: int = 1

    def __post_init__(self) -> None:
        if self.kind not in ROOT_KINDS:
            raise ValueError(f"unknown root kind {self.kind!r}")
        if self.kind in ("V", "W") and self.j != 0:
            raise ValueError(f"{self.kind} takes a single index")

    def validate(self, genus: int) -> None:
        if self.kind in ("V", "W"):
            if not 1 <= self.i <= genus:
                raise ValueError(f"{self.kind} index {self.i} out of range")
        elif self.kind == "X":
            if not (1 <= self.i <= genus and 1 <= self.j <= genus and self.i != self.j):
                raise ValueError(f"X indices ({self.i},{self.j}) out of range")
        else:
            if not 1 <= self.i < self.j <= genus:
                raise ValueError(f"{self.kind} indices ({self.i},{self.j}) must satisfy j < k")

    def __str__(self) -> str:
        indices = str(self.i) if self.kind in ("V", "W") else f"{self.i},{self.j}"
        return f"{self.kind}{indices}^{self.t}"


def root_matrix(spec: RootSpec, genus: int) -> SpMatrix:
    """The displayed one-parameter subgroup matrix at exponent t."""
    spec.validate(genus)
    g, t = genus, spec.t
    i, j = spec.i, spec.j
    n = 2 * g
    if spec.kind == "V":
        m = IntMatrix.from_unit_entries(n, {(i, g + i): t})
    elif spec.kind == "W":
        m = IntMatrix.from_unit_entries(n, {(g + i, i): t})
    elif spec.kind == "X":
        m = IntMatrix.from_unit_entries(n, {(i, j): t, (g + j, g + i): -t})
    elif spec.kind == "Y":
        m = IntMatrix.from_unit_entries(n, {(g + i, j): t, (g + j, i): t})
    else:
        m = IntMatrix.from_unit_entries(n, {(i, g + j): t, (j, g + i): t})
    return SpMatrix(m, genus)


def rotation_matrix(i: int, genus: int) -> SpMatrix:
    """A_i B_i A_i: rotation by a quarter turn in the (e_i, e_{g+i}) plane."""
    a = twist_gen("A", i, genus)
    b = twist_gen("B", i, genus)
    return a @ b @ a


def d_matrix(i: int, genus: int) -> SpMatrix:
    """D_i := A_i^2 B_{i+1}^2 (A_{i+1} B_{i+1} A_{i+1}) C_i^2
    (A_{i+1} B_{i+1} A_{i+1})^{-1}, multiplied literally as written."""
    if not 1 <= i <= genus - 1:
        raise ValueError(f"index {i} out of range")
    a_i = twist_gen("A", i, genus)
    b_next = twist_gen("B", i + 1, genus)
    c_i = twist_gen("C", i, genus)
    rot = rotation_matrix(i + 1, genus)
    return a_i @ a_i @ b_next @ b_next @ rot @ c_i @ c_i @ rot.inverse()


def d_prime_matrix(i: int, genus: int) -> SpMatrix:
    """D'_i := (A_{i-1} B_{i-1} A_{i-1}) C_{i-1}^{-2}
    (A_{i-1} B_{i-1} A_{i-1})^{-1} B_{i-1}^{-2} A_i^{-2}."""
    if not 2 <= i <= genus:
        raise ValueError(f"index {i} out of range")
    rot = rotation_matrix(i - 1, genus)
    c_inv = twist_gen("C", i - 1, genus).inverse()
    b_inv = twist_gen("B", i - 1, genus).inverse()
    a_inv = twist_gen("A", i, genus).inverse()
    return rot @ c_inv @ c_inv @ rot.inverse() @ b_inv @ b_inv @ a_inv @ a_inv


def _commutator(p: SpMatrix, q: SpMatrix) -> SpMatrix:
    return p @ q @ p.inverse() @ q.inverse()


# ---------------------------------------------------------------------------
# Identity verification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IdentityCheck:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class IdentityReport:
    genus: int
    checks: tuple[IdentityCheck, ...]

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[IdentityCheck]:
        return [c for c in self.checks if not c.passed]


def _matrix_diff(lhs: SpMatrix, rhs: SpMatrix) -> str:
    diff = lhs.m.add(rhs.m.scale(-1))
    return f"difference rows {diff.rows}"


def verify_identities(genus: int) -> IdentityReport:
    """Machine-check every matrix identity behind the generation argument.

    The chain-relation identity is evaluated in both multiplication orders and
    under both readings of the c-twist symbol (the displayed matrix and its
    inverse); the detail string records which combination holds.
    """
    if genus < 2:
        raise ValueError("genus must be >= 2")
    g = genus
    checks: list[IdentityCheck] = []

    def check(name: str, lhs: SpMatrix, rhs: SpMatrix) -> None:
        ok = lhs == rhs
        checks.append(IdentityCheck(name, ok, "" if ok else _matrix_diff(lhs, rhs)))

    for i in range(1, g + 1):
        check(f"v_equals_a_twist[i={i}]", root_matrix(RootSpec("V", i), g),
              twist_gen("A", i, g))
        check(f"w_equals_b_twist_inverse[i={i}]", root_matrix(RootSpec("W", i), g),
              twist_gen("B", i, g).inverse())
    for i in range(1, g):
        check(f"x_up_base[i={i}]", d_matrix(i, g), root_matrix(RootSpec("X", i, i + 1, 2), g))
    for i in range(2, g + 1):
        check(f"x_down_base[i={i}]", d_prime_matrix(i, g),
              root_matrix(RootSpec("X", i, i - 1, -2), g))
    for j in range(1, g):
        for ell in range(1, g):
            if not j < j + ell <= g - 1:
                continue
            lhs = _commutator(
                root_matrix(RootSpec("X", j, j + ell, 2 ** ell), g),
                root_matrix(RootSpec("X", j + ell, j + ell + 1, 2), g))
            check(f"x_up_step[j={j},l={ell}]", lhs,
                  root_matrix(RootSpec("X", j, j + ell + 1, 2 ** (ell + 1)), g))
    for j in range(2, g + 1):
        for ell in range(1, g):
            if not 2 <= j - ell < j or j - ell - 1 < 1:
                continue
            lhs = _commutator(
                root_matrix(RootSpec("X", j, j - ell, 2 ** ell), g),
                root_matrix(RootSpec("X", j - ell, j - ell - 1, 2), g))
            check(f"x_down_step[j={j},l={ell}]", lhs,
                  root_matrix(RootSpec("X", j, j - ell - 1, 2 ** (ell + 1)), g))
    for k in range(2, g + 1):
        lhs = _commutator(root_matrix(RootSpec("V", k), g), d_matrix(k - 1, g).inverse())
        lhs = lhs @ root_matrix(RootSpec("V", k - 1, t=4), g)
        check(f"z_base[k={k}]", lhs, root_matrix(RootSpec("Z", k - 1, k, 2), g))
    for k in range(3, g + 1):
        for ell in range(2, k):
            lhs = _commutator(
                root_matrix(RootSpec("Z", k - ell + 1, k, 2 ** (ell - 1)), g),
                d_matrix(k - ell, g).inverse())
            check(f"z_step[k={k},l={ell}]", lhs,
                  root_matrix(RootSpec("Z", k - ell, k, 2 ** ell), g))

    theta = SpMatrix.identity(g)
    for i in range(1, g + 1):
        theta = theta @ rotation_matrix(i, g)
    check("rotations_give_form_matrix", theta, SpMatrix(symplectic_form(g), g))
    for jj in range(1, g + 1):
        for kk in range(jj + 1, g + 1):
            lhs = theta @ root_matrix(RootSpec("Z", jj, kk), g).inverse() @ theta.inverse()
            check(f"y_from_z_conjugation[j={jj},k={kk}]", lhs,
                  root_matrix(RootSpec("Y", jj, kk), g))
    for i in range(1, g + 1):
        rot = rotation_matrix(i, g)
        expected = IntMatrix.from_unit_entries(2 * g, {
            (i, i): -1, (g + i, g + i): -1,          # clear the two diagonal 1s
            (g + i, i): -1, (i, g + i): 1,           # e_i -> -e_{g+i}, e_{g+i} -> e_i
        })
        check(f"quarter_turn[i={i}]", rot, SpMatrix(expected, g))

    for i in range(1, g):
        checks.append(_chain_relation_check(i, g))

    return IdentityReport(genus, tuple(checks))


def _chain_relation_check(i: int, g: int) -> IdentityCheck:
    """The identity expressing the square c-twist through the generators:
    a_{i+1}^2 (a_i^-1 b_i^-1 c_i^-2)^2 a_i^-1 b_i^-1 = c_i^2.

    As a matrix identity this holds, in both multiplication orders, when the
    c-twist symbol is read as the inverse of the displayed matrix; with the
    displayed matrix itself it fails (the displayed c matrix is the
    opposite-handed transvection relative to the displayed a and b matrices,
    as the braid relation test shows).
    """
    a = twist_gen("A", i, g)
    b = twist_gen("B", i, g)
    a_next = twist_gen("A", i + 1, g)
    results = {}
    for reading in ("displayed", "inverse"):
        c = twist_gen("C", i, g)
        if reading == "inverse":
            c = c.inverse()
        c2 = c @ c
        c_m2 = c2.inverse()
        blk = a.inverse() @ b.inverse() @ c_m2
        written = a_next @ a_next @ blk @ blk @ a.inverse() @ b.inverse()
        blk_rev = c_m2 @ b.inverse() @ a.inverse()
        reverse = b.inverse() @ a.inverse() @ blk_rev @ blk_rev @ a_next @ a_next
        results[f"written,{reading}"] = written == c2
        results[f"reverse,{reading}"] = reverse == c2
    passed = any(results.values())
    holding = sorted(key for key, ok in results.items() if ok)
    detail = f"holds for (order, c-reading) in {holding}" if holding else "holds in no reading"
    return IdentityCheck(f"chain_relation[i={i}]", passed, detail)


# ---------------------------------------------------------------------------
# Generator words and synthesis
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GenWord:
    """Word over A_i^{+-1}, B_i^{+-1}, C_i^{+-2}; evaluates in literal order."""

    genus: int
    letters: tuple[tuple[str, int, int], ...]  # (kind, index, exponent)

    def __post_init__(self) -> None:
        for kind, index, exponent in self.letters:
            if kind in ("A", "B"):
                if exponent not in (1, -1):
                    raise ValueError(f"{kind}-letters carry exponent +-1, got {exponent}")
                if not 1 <= index <= self.genus:
                    raise ValueError(f"{kind}{index} out of range")
            elif kind == "C":
                if exponent not in (2, -2):
                    raise ValueError(f"C-letters carry exponent +-2, got {exponent}")
                if not 1 <= index <= self.genus - 1:
                    raise ValueError(f"C{index} out of range")
            else:
                raise ValueError(f"unknown generator kind {kind!r}")

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: GenWord) -> GenWord:
        if self.genus != other.genus:
            raise ValueError("genus mismatch")
        return GenWord(self.genus, self.letters + other.letters)

    def inverse(self) -> GenWord:
        return GenWord(self.genus, tuple(
            (kind, index, -exponent) for kind, index, exponent in reversed(self.letters)
        ))

    def repeat(self, times: int) -> GenWord:
        if times < 0:
            return self.inverse().repeat(-times)
        return GenWord(self.genus, self.letters * times)


def eval_gen_word(word: GenWord) -> SpMatrix:
    """Literal product order: eval(x_1 ... x_n) = M(x_1) ... M(x_n)."""
    acc = IntMatrix.identity(2 * word.genus)
    for kind, index, exponent in word.letters:
        gen = twist_gen(kind, index, word.genus)
        base = gen if exponent > 0 else gen.inverse()
        acc = acc @ mat_pow(base.m, abs(exponent))
    return SpMatrix(acc, word.genus)


def format_gen_word(word: GenWord) -> str:
    parts = []
    for kind, index, exponent in word.letters:
        parts.append(f"{kind}{index}" if exponent == 1 else f"{kind}{index}^{exponent}")
    return " ".join(parts)


def parse_gen_word(text: str, genus: int) -> GenWord:
    letters = []
    for token in text.split():
        body, _, exp_text = token.partition("^")
        if len(body) < 2 or body[0] not in ("A", "B", "C") or not body[1:].isdigit():
            raise ValueError(f"malformed generator token {token!r}")
        exponent = int(exp_text) if exp_text else 1
        letters.append((body[0], int(body[1:]), exponent))
    return GenWord(genus, tuple(letters))


def _letter(kind: str, index: int, exponent: int, genus: int) -> GenWord:
    return GenWord(genus, ((kind, index, exponent),))


def _d_word(i: int, genus: int) -> GenWord:
    """Generator word whose literal product is d_matrix(i)."""
    g = genus
    rot = _letter("A", i + 1, 1, g) * _letter("B", i + 1, 1, g) * _letter("A", i + 1, 1, g)
    return (
        _letter("A", i, 1, g) * _letter("A", i, 1, g)
        * _letter("B", i + 1, 1, g) * _letter("B", i + 1, 1, g)
        * rot * _letter("C", i, 2, g) * rot.inverse()
    )


def _d_prime_word(i: int, genus: int) -> GenWord:
    g = genus
    rot = _letter("A", i - 1, 1, g) * _letter("B", i - 1, 1, g) * _letter("A", i - 1, 1, g)
    return (
        rot * _letter("C", i - 1, -2, g) * rot.inverse()
        * _letter("B", i - 1, -1, g) * _letter("B", i - 1, -1, g)
        * _letter("A", i, -1, g) * _letter("A", i, -1, g)
    )


def _commutator_word(p: GenWord, q: GenWord) -> GenWord:
    return p * q * p.inverse() * q.inverse()


def _x_power_word(j: int, k: int, genus: int) -> GenWord:
    """Word for X_{j,k}^{2^|k-j|}, by the commutator induction."""
    g = genus
    if j < k:
        word = _d_word(j, g)                      # X_{j,j+1}^2
        for ell in range(1, k - j):
            word = _commutator_word(word, _d_word(j + ell, g))
    else:
        word = _d_prime_word(j, g).inverse()      # X_{j,j-1}^2
        for ell in range(1, j - k):
            word = _commutator_word(word, _d_prime_word(j - ell, g).inverse())
    return word


def _z_power_word(j: int, k: int, genus: int) -> GenWord:
    """Word for Z_{j,k}^{2^(k-j)}, from the base case and the commutator
    induction."""
    g = genus
    word = _commutator_word(_letter("A", k, 1, g), _d_word(k - 1, g).inverse())
    word = word * _letter("A", k - 1, 1, g).repeat(4)   # Z_{k-1,k}^2
    for ell in range(2, k - j + 1):
        word = _commutator_word(word, _d_word(k - ell, g).inverse())
    return word


def _theta_word(genus: int) -> GenWord:
    word = GenWord(genus, ())
    for i in range(1, genus + 1):
        word = word * _letter("A", i, 1, genus) * _letter("B", i, 1, genus) \
            * _letter("A", i, 1, genus)
    return word


def synthesize_root(spec: RootSpec, genus: int) -> GenWord:
    """Generator word whose literal product equals root_matrix(spec).

    Supports t a nonzero multiple of 2^(g-1) (and for V, W any nonzero t);
    larger multiples are produced by repetition, negatives by inversion.
    """
    spec.validate(genus)
    g, t = genus, spec.t
    if t == 0:
        raise ValueError("t must be nonzero")
    base = 2 ** (g - 1)
    if spec.kind == "V":
        word = _letter("A", spec.i, 1 if t > 0 else -1, g).repeat(abs(t))
    elif spec.kind == "W":
        word = _letter("B", spec.i, -1 if t > 0 else 1, g).repeat(abs(t))
    else:
        if t % base != 0:
            raise ValueError(f"unsupported exponent t={t}; need a multiple of {base}")
        reps = t // base
        if spec.kind == "X":
            step = 2 ** abs(spec.j - spec.i)
            word = _x_power_word(spec.i, spec.j, g).repeat(base // step * reps)
        elif spec.kind == "Z":
            step = 2 ** (spec.j - spec.i)
            word = _z_power_word(spec.i, spec.j, g).repeat(base // step * reps)
        else:  # Y via conjugation of the inverse Z word
            theta = _theta_word(g)
            z_word = synthesize_root(RootSpec("Z", spec.i, spec.j, -t), g)
            word = theta * z_word * theta.inverse()
    return word


# ---------------------------------------------------------------------------
# Mod-2 block obstruction
# ---------------------------------------------------------------------------

def mod2_block_test(m: SpMatrix, genus: int | None = None) -> bool:
    """Necessary condition for membership: the mod-2 reduction, reindexed into
    the interleaved basis (a_1, b_1, a_2, b_2, ...), is 2x2 block diagonal."""
    g = genus if genus is not None else m.genus
    if g != m.genus:
        raise ValueError("genus mismatch")
    # interleaved position 2t   <- old a-index t
    # interleaved position 2t+1 <- old b-index g+t
    order = []
    for t in range(g):
        order.append(t)
        order.append(g + t)
    rows = m.m.rows
    for r_new, r_old in enumerate(order):
        for c_new, c_old in enumerate(order):
            if r_new // 2 != c_new // 2 and rows[r_old][c_old] % 2 != 0:
                return False
    return True


# ---------------------------------------------------------------------------
# Finite-quotient closure (genus 2, modulus 4)
# ---------------------------------------------------------------------------

def closure_generators(genus: int = 2) -> list[SpMatrix]:
    """The 4g + 2(g-1) group generators with inverses: A_i^{+-1}, B_i^{+-1},
    C_i^{+-2}."""
    gens: list[SpMatrix] = []
    for i in range(1, genus + 1):
        a = twist_gen("A", i, genus)
        b = twist_gen("B", i, genus)
        gens += [a, a.inverse(), b, b.inverse()]
    for i in range(1, genus):
        c2 = twist_gen("C", i, genus).pow(2)
        gens += [c2, c2.inverse()]
    return gens


@dataclass(frozen=True)
class ClosureTable:
    """The image subgroup inside Sp(4, Z/4) as a hashed set of packed words."""

    genus: int
    modulus: int
    elements: frozenset[int]

    @property
    def size(self) -> int:
        return len(self.elements)

    def contains(self, m: SpMatrix) -> bool:
        return reduce_mod(m.m, self.modulus).packed_word() in self.elements

    def recheck_generator_closed(self) -> bool:
        """Full pass: every element times every generator stays inside."""
        packed = np.fromiter(self.elements, dtype=np.uint64, count=self.size)
        mats = _unpack_many(packed, 2 * self.genus, self.modulus)
        gens = _generator_array(self.genus, self.modulus)
        for gen in gens:
            prods = (mats @ gen) % self.modulus
            keys = _pack_many(prods, self.modulus)
            if not set(keys.tolist()) <= self.elements:
                return False
        return True


def _generator_array(genus: int, modulus: int) -> np.ndarray:
    return np.array(
        [[[x % modulus for x in row] for row in gen.m.rows]
         for gen in closure_generators(genus)],
        dtype=np.uint8,
    )


def _pack_many(mats: np.ndarray, modulus: int) -> np.ndarray:
    n = mats.shape[-1]
    bits = (modulus - 1).bit_length()
    shifts = (bits * np.arange(n * n, dtype=np.uint64)).reshape(n, n)
    return (mats.astype(np.uint64) << shifts).sum(axis=(1, 2))


def _unpack_many(keys: np.ndarray, dim: int, modulus: int) -> np.ndarray:
    bits = (modulus - 1).bit_length()
    shifts = (bits * np.arange(dim * dim, dtype=np.uint64)).reshape(dim, dim)
    mask = np.uint64(modulus - 1)
    return ((keys[:, None, None] >> shifts) & mask).astype(np.uint8)


def quotient_closure(genus: int = 2, cache_path: str | None = None) -> ClosureTable:
    """BFS closure of the generator reductions mod 2^(2g-2) under right
    multiplication. Exact mode is genus 2 (modulus 4, at most |Sp(4,Z/4)| =
    737280 elements, each packed into 32 bits).

    cache_path (or the TWISTCERT_CACHE environment variable) names a binary
    cache with a versioned header; a header mismatch forces recomputation.
    """
    if genus != 2:
        raise ValueError("exact closure mode is implemented for genus 2 only")
    modulus = 2 ** (2 * genus - 2)
    if cache_path is None:
        cache_path = os.environ.get(CACHE_ENV_VAR)
    if cache_path and os.path.exists(cache_path):
        cached = _load_closure_cache(cache_path, genus, modulus)
        if cached is not None:
            return cached

    gens = _generator_array(genus, modulus)
    identity = np.eye(2 * genus, dtype=np.uint8)[None]
    visited: set[int] = set(_pack_many(identity, modulus).tolist())
    frontier = identity
    while len(frontier):
        prods = np.einsum("nij,gjk->ngik", frontier, gens).reshape(-1, 2 * genus, 2 * genus) % modulus
        keys = _pack_many(prods, modulus)
        uniq, first_idx = np.unique(keys, return_index=True)
        fresh = [int(idx) for key, idx in zip(uniq.tolist(), first_idx.tolist())
                 if key not in visited]
        frontier = prods[fresh]
        visited.update(int(keys[idx]) for idx in fresh)

    table = ClosureTable(genus, modulus, frozenset(visited))
    if cache_path:
        _store_closure_cache(cache_path, table)
    return table


def _load_closure_cache(path: str, genus: int, modulus: int) -> ClosureTable | None:
    with open(path, "rb") as fh:
        header = fh.read(20)
        if len(header) != 20:
            return None
        magic, version, g, q, count = struct.unpack("<4sIIII", header)
        if magic != _CACHE_MAGIC or version != _CACHE_VERSION or g != genus or q != modulus:
            return None
        data = np.fromfile(fh, dtype="<u4", count=count)
    if len(data) != count:
        return None
    return ClosureTable(genus, modulus, frozenset(int(x) for x in data))


def _store_closure_cache(path: str, table: ClosureTable) -> None:
    data = np.array(sorted(table.elements), dtype="<u4")
    parent = os.path.dirname(path)
    if parent:
        os.makedirs(parent, exist_ok=True)
    with open(path, "wb") as fh:
        fh.write(struct.pack("<4sIIII", _CACHE_MAGIC, _CACHE_VERSION,
                             table.genus, table.modulus, len(data)))
        data.tofile(fh)


# ---------------------------------------------------------------------------
# Membership and index
# ---------------------------------------------------------------------------

IN_GAMMA = "InGamma"
NOT_IN_GAMMA = "NotInGamma"
UNKNOWN = "Unknown"


@dataclass(frozen=True)
class MembershipVerdict:
    verdict: str
    witness: GenWord | None = None
    detail: str = ""


def _match_root_pattern(m: SpMatrix) -> RootSpec | None:
    """Recognize m as a one-parameter root element; None if no family fits."""
    g = m.genus
    n = 2 * g
    delta = m.m.add(IntMatrix.identity(n).scale(-1))
    nonzero = [(r + 1, c + 1, x) for r, row in enumerate(delta.rows)
               for c, x in enumerate(row) if x]
    if len(nonzero) == 1:
        r, c, t = nonzero[0]
        if c == g + r:
            return RootSpec("V", r, t=t)
        if r == g + c:
            return RootSpec("W", c, t=t)
        return None
    if len(nonzero) != 2:
        return None
    (r1, c1, t1), (r2, c2, t2) = nonzero
    # X: t at (j,k), -t at (g+k, g+j) with j, k <= g
    if r1 <= g and c1 <= g and (r2, c2) == (g + c1, g + r1) and t2 == -t1:
        return RootSpec("X", r1, c1, t1)
    # Z: t at (j, g+k) and (k, g+j)
    if r1 <= g and c1 > g and (r2, c2) == (c1 - g, g + r1) and t2 == t1 and r1 < c1 - g:
        return RootSpec("Z", r1, c1 - g, t1)
    # Y: t at (g+j, k) and (g+k, j)
    if r1 > g and c1 <= g and (r2, c2) == (g + c1, r1 - g) and t2 == t1 and r1 - g < c1:
        return RootSpec("Y", r1 - g, c1, t1)
    return None


def membership(m: SpMatrix, genus: int | None = None,
               witness: GenWord | None = None,
               table: ClosureTable | None = None) -> MembershipVerdict:
    """Decide membership in the generated subgroup.

    Genus 2 is exact via the finite-quotient closure. For genus >= 3 the
    verdict is NotInGamma on a mod-2 block obstruction, InGamma when a witness
    word is supplied or synthesized (identity, single generators, root
    elements with exponent a multiple of 2^(g-1)), Unknown otherwise.
    """
    g = genus if genus is not None else m.genus
    if g != m.genus:
        raise ValueError("genus mismatch")
    if witness is not None:
        if witness.genus != g:
            raise ValueError("witness genus mismatch")
        if eval_gen_word(witness) == m:
            return MembershipVerdict(IN_GAMMA, witness, "verified supplied witness")
        raise ValueError("supplied witness does not evaluate to the matrix")
    if g == 2:
        if table is None:
            table = quotient_closure(2)
        if table.contains(m):
            return MembershipVerdict(IN_GAMMA, None, "reduction lies in the quotient image")
        return MembershipVerdict(NOT_IN_GAMMA, None, "reduction outside the quotient image")
    if not mod2_block_test(m, g):
        return MembershipVerdict(NOT_IN_GAMMA, None, "mod-2 block obstruction")
    if m.m.is_identity():
        return MembershipVerdict(IN_GAMMA, GenWord(g, ()), "identity")
    for kind in ("A", "B"):
        for i in range(1, g + 1):
            gen = twist_gen(kind, i, g)
            if m == gen:
                return MembershipVerdict(IN_GAMMA, _letter(kind, i, 1, g), "generator")
            if m == gen.inverse():
                return MembershipVerdict(IN_GAMMA, _letter(kind, i, -1, g), "generator inverse")
    for i in range(1, g):
        c2 = twist_gen("C", i, g).pow(2)
        if m == c2:
            return MembershipVerdict(IN_GAMMA, _letter("C", i, 2, g), "generator")
        if m == c2.inverse():
            return MembershipVerdict(IN_GAMMA, _letter("C", i, -2, g), "generator inverse")
    spec = _match_root_pattern(m)
    if spec is not None and spec.t % (2 ** (g - 1)) == 0:
        word = synthesize_root(spec, g)
        assert eval_gen_word(word) == m
        return MembershipVerdict(IN_GAMMA, word, f"synthesized root word for {spec}")
    return MembershipVerdict(UNKNOWN, None, "no obstruction found and no witness available")


def gamma_index(genus: int = 2, table: ClosureTable | None = None) -> int:
    """[Sp(4,Z) : subgroup] = |Sp(4, Z/4)| / |image|, exact because the
    subgroup contains the level-4 principal congruence subgroup."""
    if genus != 2:
        raise ValueError("index computation is implemented for genus 2 only")
    if table is None:
        table = quotient_closure(2)
    total = sp_group_order_mod(2, 4)
    if total % table.size != 0:
        raise ArithmeticError("closure size does not divide the group order")
    index = total // table.size
    assert index <= 2 ** 64, "index exceeds the 2^(8g^3) bound at g=2"
    assert index % 20 == 0 and index >= 20
    return index
