"""Mod-2 quadratic spaces of even lattices.

The reduction L/2L of an even lattice carries the bilinear form (x|y) =
<x,y> mod 2 and the quadratic form q(x) = <x,x>/2 mod 2, linked by the
polarization rule q(x+y) = q(x) + q(y) + (x|y).

Vectors are int bitmasks.  In the canonical *ambient* model the bits index
the ambient coordinates e_0..e_n and the pairing is the parity of the AND
popcount; a lattice of rank n reduces to the n-dimensional subspace of
even-popcount masks.  The *intrinsic* model (space_from_gram) uses basis
coordinates with the Gram matrix mod 2 as pairing; coords()/from_coords()
convert between a mask and its basis coordinates in either model.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import errors


def _parity(x):
    return x.bit_count() & 1


def _bit_indices(mask):
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


class F2QuadraticSpace:
    """A subspace of F2^width with an alternating pairing and a form q."""

    __slots__ = ("width", "basis", "qdiag", "pair_rows", "basis_lifts",
                 "ambient_k", "gram2", "_coords", "_q")

    def __init__(self, width, basis, qdiag, pair_rows, basis_lifts=None,
                 ambient_k=None):
        self.width = int(width)
        self.basis = tuple(int(b) for b in basis)
        self.qdiag = tuple(int(q) & 1 for q in qdiag)
        self.pair_rows = tuple(int(r) for r in pair_rows)
        self.basis_lifts = basis_lifts
        self.ambient_k = ambient_k
        if len(self.pair_rows) != self.width:
            raise ValueError("need one pairing row per ambient coordinate")
        gram2 = tuple(tuple(self.pair(a, b) for b in self.basis)
                      for a in self.basis)
        self.gram2 = gram2
        if any(gram2[i][i] for i in range(len(self.basis))):
            raise ValueError("pairing must be alternating on the basis")
        # span tables: mask -> basis coordinates, mask -> q value
        coords = {0: 0}
        qtab = {0: 0}
        for i, (b, qb) in enumerate(zip(self.basis, self.qdiag)):
            if b in coords:
                raise ValueError("basis masks are linearly dependent")
            for m, cm in list(coords.items()):
                nm = m ^ b
                coords[nm] = cm | (1 << i)
                qtab[nm] = qtab[m] ^ qb ^ self.pair(m, b)
        self._coords = coords
        self._q = qtab

    @property
    def dim(self):
        return len(self.basis)

    def pair(self, u, v):
        """The bilinear form of two masks."""
        t = 0
        for i in _bit_indices(u):
            t ^= _parity(self.pair_rows[i] & v)
        return t

    def contains(self, v):
        return v in self._q

    def q(self, v):
        """q(v); raises NotInSpace for masks outside the space."""
        try:
            return self._q[v]
        except KeyError:
            raise errors.NotInSpace(f"mask {v:#x} is not in the space") from None

    def coords(self, v):
        """Basis coordinate bits of a space vector."""
        try:
            return self._coords[v]
        except KeyError:
            raise errors.NotInSpace(f"mask {v:#x} is not in the space") from None

    def from_coords(self, bits):
        m = 0
        for i in _bit_indices(bits):
            m ^= self.basis[i]
        return m

    def vectors(self):
        """All space vectors, sorted (deterministic)."""
        return sorted(self._q)

    def nonzero_vectors(self):
        return [v for v in sorted(self._q) if v]

    def to_json_dict(self):
        return {
            "width": self.width,
            "dim": self.dim,
            "basis": list(self.basis),
            "qdiag": list(self.qdiag),
            "bilinear": [list(row) for row in self.gram2],
        }


@lru_cache(maxsize=None)
def reduce(L):
    """The mod-2 quadratic space of an even lattice, in the ambient model.

    Basis masks are the reductions of the lattice basis; q on a basis vector
    is half its self-pairing mod 2, and the whole form follows by
    polarization.  The space is exactly the orthogonal complement of
    k = K mod 2 (the even-popcount masks, for both lattice families).
    """
    width = L.width
    basis = tuple(_mask(row) for row in L.basis)
    qdiag = tuple((L.gram[i][i] // 2) & 1 for i in range(L.n))
    pair_rows = tuple(1 << i for i in range(width))
    k = (1 << width) - 1  # K has all coordinates odd in both families
    assert _mask(L.K) == k
    S = F2QuadraticSpace(width, basis, qdiag, pair_rows,
                         basis_lifts=L.basis, ambient_k=k)
    # the ambient pairing must agree with the Gram matrix mod 2
    assert all(S.gram2[i][j] == L.gram[i][j] & 1
               for i in range(L.n) for j in range(L.n))
    return S


def _mask(vec):
    m = 0
    for i, c in enumerate(vec):
        if c & 1:
            m |= 1 << i
    return m


def space_from_gram(gram):
    """Intrinsic model: masks are coordinate vectors over the lattice basis."""
    n = len(gram)
    if any(gram[i][i] % 2 for i in range(n)):
        raise ValueError("the lattice must be even")
    pair_rows = tuple(_mask(row) for row in gram)
    basis = tuple(1 << i for i in range(n))
    qdiag = tuple((gram[i][i] // 2) & 1 for i in range(n))
    return F2QuadraticSpace(n, basis, qdiag, pair_rows)


def eval_q(S, v):
    """q(v) for a space vector; NotInSpace otherwise."""
    return S.q(v)


def radical(S):
    """All vectors pairing to zero with the whole space (includes 0)."""
    return [v for v in S.vectors()
            if all(S.pair(v, b) == 0 for b in S.basis)]


def value_census(S):
    """(count of q=0 vectors, count of q=1 vectors), exhaustively."""
    ones = sum(S._q.values())
    return (len(S._q) - ones, ones)


@dataclass(frozen=True)
class SymplecticBasis:
    """Hyperbolic pairs (x_i, y_i): (x_i|y_j) = [i==j], all other pairings 0."""

    pairs: tuple

    def vectors(self):
        return [v for xy in self.pairs for v in xy]


def symplectic_basis(S):
    """A symplectic basis by greedy hyperbolic-pair extraction (deterministic)."""
    if radical(S) != [0]:
        raise errors.DegenerateForm("the pairing has a nontrivial radical")
    work = list(S.basis)
    pairs = []
    while work:
        x = work.pop(0)
        j = next(i for i, w in enumerate(work) if S.pair(x, w))
        y = work.pop(j)
        fixed = []
        for w in work:
            if S.pair(w, y):
                w ^= x
            if S.pair(w, x):
                w ^= y
            fixed.append(w)
        work = fixed
        pairs.append((x, y))
    return SymplecticBasis(tuple(pairs))


def arf(S):
    """The Arf invariant: sum of q(x)q(y) over a symplectic basis.

    Equals the value q takes on the majority of vectors; the census identity
    count_q1 = 2^(m-1) * (2^m - (-1)^arf) is checked in the test suite.
    """
    sb = symplectic_basis(S)
    return sum(S.q(x) & S.q(y) for x, y in sb.pairs) & 1


# -- linear maps ----------------------------------------------------------------

class _F2Linear:
    """Invertible linear self-map of a space, stored by images of the basis."""

    __slots__ = ("space", "images")

    def __init__(self, space, images):
        images = tuple(int(m) for m in images)
        if len(images) != space.dim:
            raise errors.NotIsometry("need one image per basis vector")
        seen = {0}
        acc = [0]
        for m in images:
            if m not in space._q:
                raise errors.NotIsometry("image outside the space")
            if m in seen:
                raise errors.NotIsometry("images are linearly dependent")
            for a in list(acc):
                seen.add(a ^ m)
                acc.append(a ^ m)
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "images", images)

    def __setattr__(self, *a):
        raise AttributeError("immutable")

    def apply(self, v):
        bits = self.space.coords(v)
        m = 0
        for i in _bit_indices(bits):
            m ^= self.images[i]
        return m

    def __mul__(self, other):
        """Composition: (self * other) applies other first."""
        if self.space is not other.space:
            raise errors.NotIsometry("maps on different spaces")
        return type(self)(self.space, tuple(self.apply(m) for m in other.images))

    def inverse(self):
        # invert the coordinate bit-matrix by Gaussian elimination
        n = self.space.dim
        rows = [self.space.coords(m) | (1 << (n + i))
                for i, m in enumerate(self.images)]
        for c in range(n):
            piv = next(i for i in range(c, n) if rows[i] >> c & 1)
            rows[c], rows[piv] = rows[piv], rows[c]
            for i in range(n):
                if i != c and rows[i] >> c & 1:
                    rows[i] ^= rows[c]
        inv_images = []
        for c in range(n):
            bits = rows[c] >> n
            m = 0
            for i in _bit_indices(bits):
                m ^= self.space.basis[i]
            inv_images.append(m)
        return type(self)(self.space, tuple(inv_images))

    def is_identity(self):
        return self.images == self.space.basis

    def matrix_rows(self):
        """Basis-coordinate bit rows (row i = coords of the image of b_i)."""
        return tuple(self.space.coords(m) for m in self.images)

    def __eq__(self, other):
        return (type(self) is type(other) and self.space is other.space
                and self.images == other.images)

    def __hash__(self):
        return hash((id(self.space), self.images))

    def __repr__(self):
        return f"{type(self).__name__}({self.images})"


class F2Isometry(_F2Linear):
    """A linear map preserving both the pairing and the quadratic form."""

    def __init__(self, space, images, check=True):
        super().__init__(space, images)
        if check:
            n = space.dim
            for i in range(n):
                if space.q(self.images[i]) != space.qdiag[i]:
                    raise errors.NotIsometry("q is not preserved")
                for j in range(i + 1, n):
                    if space.pair(self.images[i], self.images[j]) != space.gram2[i][j]:
                        raise errors.NotIsometry("the pairing is not preserved")

    @classmethod
    def identity(cls, space):
        return cls(space, space.basis, check=False)


class SymplecticMap(_F2Linear):
    """A linear map preserving the pairing only (an element of Sp)."""

    def __init__(self, space, images, check=True):
        super().__init__(space, images)
        if check:
            n = space.dim
            for i in range(n):
                for j in range(i + 1, n):
                    if space.pair(self.images[i], self.images[j]) != space.gram2[i][j]:
                        raise errors.NotIsometry("the pairing is not preserved")

    @classmethod
    def identity(cls, space):
        return cls(space, space.basis, check=False)


def f2_reflection(S, v):
    """The reflection x -> x + (x|v)v for a vector with q(v) = 1.

    An involutive isometry of (S, q); it is the identity exactly when v lies
    in the radical.
    """
    if S.q(v) != 1:
        raise errors.BadVector(f"q(v) must be 1, got {S.q(v)}")
    images = tuple(b ^ (v if S.pair(b, v) else 0) for b in S.basis)
    return F2Isometry(S, images, check=False)


def transvection(S, v):
    """The symplectic transvection x -> x + (x|v)v (no q constraint)."""
    if not S.contains(v) or v == 0:
        raise errors.BadVector("transvection vector must be a nonzero space vector")
    images = tuple(b ^ (v if S.pair(b, v) else 0) for b in S.basis)
    return SymplecticMap(S, images, check=False)


def orthogonal_generators(S):
    """All reflections r_v with q(v) = 1; they generate the isometry group."""
    return tuple(f2_reflection(S, v) for v in S.vectors() if S.q(v) == 1)


def isometry_count_bruteforce(S):
    """|O(S, q)| by exhaustive backtracking over basis images.

    Independent of the reflection generators and of the stabilizer-chain
    engine; exponential, intended for dim <= 5.
    """
    vecs = S.vectors()
    n = S.dim

    count = 0

    def assign(i, images, span):
        nonlocal count
        if i == n:
            count += 1
            return
        for v in vecs:
            if v in span:
                continue
            if S.q(v) != S.qdiag[i]:
                continue
            if any(S.pair(v, images[j]) != S.gram2[i][j] for j in range(i)):
                continue
            assign(i + 1, images + [v], span | {s ^ v for s in span})

    assign(0, [], frozenset({0}))
    return count


# -- structure reports and models -------------------------------------------------

@dataclass(frozen=True)
class SingularPlaneReport:
    """Outcome of the q=0-vector analysis used for the rank-4 exception."""

    nonzero_singular: tuple
    expected_singular: tuple
    matches_expected: bool
    pairings_all_one: bool
    totally_singular_plane: tuple | None

    @property
    def passed(self):
        return (self.matches_expected and self.pairings_all_one
                and self.totally_singular_plane is None)


def exception_check_n4(S):
    """Confirm the rank-4 space has no 2-dimensional subspace with q = 0.

    The nonzero singular vectors must be exactly k+e0 and e0+e_i (pairwise
    pairing 1), which rules out any totally singular plane; the plane scan is
    exhaustive and independent of that description.
    """
    sing = tuple(v for v in S.vectors() if v and S.q(v) == 0)
    k = S.ambient_k
    expected = tuple(sorted([(k ^ 1) & ((1 << S.width) - 1)]
                            + [1 | (1 << i) for i in range(1, S.width)]))
    pairings_ok = all(S.pair(u, v) == 1
                      for i, u in enumerate(sing) for v in sing[i + 1:])
    plane = None
    for i, u in enumerate(sing):
        for v in sing[i + 1:]:
            w = u ^ v
            if w and S.q(w) == 0:
                plane = (u, v)
                break
        if plane:
            break
    return SingularPlaneReport(sing, expected, sing == expected, pairings_ok, plane)


class SpModel:
    """Splitting L2 = H + F2*k for spaces with radical {0,k} and q(k) = 1.

    The pairing restricted to the hyperplane H is symplectic, and
    u -> p_H o u|_H identifies the isometry group of the whole space with
    Sp(H); the transvection at v corresponds to the reflection at
    v + (1+q(v))k.
    """

    def __init__(self, space, k, hyperplane):
        self.space = space
        self.k = k
        self.hyperplane = hyperplane

    def project(self, mask):
        """p_H: subtract k when the splitting coordinate is set."""
        return mask if self.hyperplane.contains(mask) else mask ^ self.k

    def forward(self, u):
        """The symplectic map p_H o u|_H of an isometry of the space."""
        images = tuple(self.project(u.apply(h)) for h in self.hyperplane.basis)
        return SymplecticMap(self.hyperplane, images)

    def transvection(self, v):
        return transvection(self.hyperplane, v)

    def reflection_for_transvection(self, v):
        """The space reflection corresponding to the transvection at v in H."""
        w = v if self.space.q(v) == 1 else v ^ self.k
        return f2_reflection(self.space, w)


def sp_model(S):
    """Build the Sp(H) model; WrongShape unless radical = {0,k} with q(k)=1."""
    rad = radical(S)
    if len(rad) != 2:
        raise errors.WrongShape(f"radical has {len(rad)} elements, need 2")
    k = rad[1]
    if S.q(k) != 1:
        raise errors.WrongShape("q(k) must be 1 for the Sp model")
    j = (k & -k).bit_length() - 1  # lowest coordinate not vanishing on k
    pivot = next(b for b in S.basis if b >> j & 1)
    hbasis = tuple((b if not (b >> j & 1) else b ^ pivot)
                   for b in S.basis if b != pivot)
    H = F2QuadraticSpace(S.width, hbasis, tuple(S.q(h) for h in hbasis),
                         S.pair_rows)
    return SpModel(S, k, H)


class QuotientModel:
    """The quotient of a space by its radical vector k when q(k) = 0.

    Classes are represented by the canonical section N = {x : min(x, x^k)},
    which is a subspace because k's top bit selects the representative.  The
    form descends since q(x+k) = q(x).
    """

    def __init__(self, space, k, section):
        self.space = space
        self.k = k
        self.section = section

    def project_vector(self, mask):
        return min(mask, mask ^ self.k)

    def project(self, u):
        """The induced isometry of the quotient (a homomorphism in u)."""
        images = tuple(self.project_vector(u.apply(b))
                       for b in self.section.basis)
        return F2Isometry(self.section, images)

    def kernel_maps(self):
        """All maps x -> x + l(x)k with l(k) = 0: the kernel of project()."""
        S = self.space
        kc = S.coords(self.k)
        n = S.dim
        out = []
        for lam in range(1 << n):
            if _parity(lam & kc):
                continue
            images = tuple(b ^ (self.k if lam >> i & 1 else 0)
                           for i, b in enumerate(S.basis))
            out.append(F2Isometry(S, images))
        return tuple(out)


def quotient_by_radical(S):
    """Build the radical quotient; WrongShape unless radical = {0,k}, q(k)=0."""
    rad = radical(S)
    if len(rad) != 2:
        raise errors.WrongShape(f"radical has {len(rad)} elements, need 2")
    k = rad[1]
    if S.q(k) != 0:
        raise errors.WrongShape("q(k) must be 0 for the radical quotient")
    t = k.bit_length() - 1  # representatives have k's top bit clear
    pivot = next(b for b in S.basis if b >> t & 1)
    nbasis = tuple((b if not (b >> t & 1) else b ^ pivot)
                   for b in S.basis if b != pivot)
    N = F2QuadraticSpace(S.width, nbasis, tuple(S.q(b) for b in nbasis),
                         S.pair_rows)
    return QuotientModel(S, k, N)
