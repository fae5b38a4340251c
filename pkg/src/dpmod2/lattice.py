"""Del Pezzo root lattices and plain A_n root lattices.

The del Pezzo lattice of rank n (3 <= n <= 8) is the orthogonal complement of
K = 3*E0 - E1 - ... - En inside Z^(n+1) with the Lorentzian form E0^2 = -1,
Ei^2 = 1.  It is even, positive definite, of discriminant 9 - n, and its
vectors of square 2 form a root system of type A1xA2, A4, D5, E6, E7, E8.
The plain A_n lattice is the sum-zero sublattice of Euclidean Z^(n+1); it goes
through the same machinery and serves as the counterexample family.

Ambient vectors are plain tuples of ints.  Isometries are stored by their
integer matrix on the lattice basis; this represents all of O(L), including
elements such as -1 that do not extend to the ambient lattice fixing K.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt

import numpy as np

from . import errors, intlinalg

DEL_PEZZO_TYPES = {3: "A1xA2", 4: "A4", 5: "D5", 6: "E6", 7: "E7", 8: "E8"}

# Known root counts per type, used for sanity checks downstream.
ROOT_COUNTS = {"A1xA2": 8, "A4": 20, "D5": 40, "E6": 72, "E7": 126, "E8": 240}


def inner_product(v, w):
    """Lorentzian product -v0*w0 + sum_{i>=1} vi*wi, exactly."""
    if len(v) != len(w):
        raise errors.LengthMismatch(f"lengths {len(v)} and {len(w)}")
    return -v[0] * w[0] + sum(a * b for a, b in zip(v[1:], w[1:]))


@dataclass(frozen=True)
class Lattice:
    """An even positive-definite lattice K^perp inside a diagonal Z^(n+1)."""

    kind: str                 # "delpezzo" | "plain"
    n: int                    # rank
    signs: tuple              # diagonal of the ambient form, entries +-1
    K: tuple                  # ambient vector cut out
    basis: tuple              # n ambient vectors: canonical kernel basis
    gram: tuple               # n x n Gram matrix of the basis
    root_type: str

    @property
    def width(self):
        return len(self.K)

    def dot(self, v, w):
        """Ambient bilinear form of this lattice's model."""
        if len(v) != self.width or len(w) != self.width:
            raise errors.LengthMismatch("ambient vectors must have width n+1")
        return sum(s * a * b for s, a, b in zip(self.signs, v, w))

    def contains(self, v):
        """Whether the ambient vector lies in the lattice (K^perp over Z)."""
        return len(v) == self.width and self.dot(v, self.K) == 0

    def to_json_dict(self):
        return {
            "kind": self.kind,
            "n": self.n,
            "root_type": self.root_type,
            "K": list(self.K),
            "basis": [list(b) for b in self.basis],
            "gram": [list(row) for row in self.gram],
        }


def _build(kind, n, signs, K, expected_disc, root_type):
    coeffs = tuple(s * k for s, k in zip(signs, K))
    basis = tuple(intlinalg.kernel_basis(coeffs))
    gram = tuple(
        tuple(sum(s * a * b for s, a, b in zip(signs, u, v)) for v in basis)
        for u in basis)
    lat = Lattice(kind, n, signs, K, basis, gram, root_type)
    # construction invariants: orthogonal to K, even, right discriminant
    assert all(lat.dot(b, K) == 0 for b in basis)
    assert all(gram[i][i] % 2 == 0 for i in range(n))
    assert abs(intlinalg.det(gram)) == expected_disc
    assert intlinalg.is_positive_definite(gram)
    return lat


@lru_cache(maxsize=None)
def build_del_pezzo(n):
    """The rank-n del Pezzo lattice, with its canonical basis of K^perp."""
    if not 3 <= n <= 8:
        raise errors.OutOfRange(f"n must be in [3, 8], got {n}")
    signs = (-1,) + (1,) * n
    K = (3,) + (-1,) * n
    return _build("delpezzo", n, signs, K, 9 - n, DEL_PEZZO_TYPES[n])


@lru_cache(maxsize=None)
def build_plain_root_lattice(rank):
    """The A_rank lattice: sum-zero vectors of Euclidean Z^(rank+1)."""
    if not 2 <= rank <= 10:
        raise errors.OutOfRange(f"rank must be in [2, 10], got {rank}")
    signs = (1,) * (rank + 1)
    K = (1,) * (rank + 1)
    return _build("plain", rank, signs, K, rank + 1, f"A{rank}")


# -- roots -------------------------------------------------------------------

def _bounded_vectors(count, sum_target, sq_target):
    """Integer tuples of given length, coordinate sum, and sum of squares."""
    out = []
    vec = []

    def rec(i, s, q):
        if i == count:
            if s == 0 and q == 0:
                out.append(tuple(vec))
            return
        r = count - i
        # Cauchy-Schwarz and parity pruning; x^2 == x mod 2 coordinatewise.
        if (q - s) % 2 or s * s > q * r:
            return
        b = isqrt(q)
        for x in range(-b, b + 1):
            vec.append(x)
            rec(i + 1, s - x, q - x * x)
            vec.pop()

    rec(0, sum_target, sq_target)
    return out


@lru_cache(maxsize=None)
def enumerate_roots(L):
    """All ambient vectors with <v,v> = 2 and <v,K> = 0, sorted.

    The enumeration box is exact: for the del Pezzo form, <v,K> = 0 forces
    v0^2 * (9-n) <= 2n by Cauchy-Schwarz, and then each remaining coordinate
    is bounded by the square budget 2 + v0^2.
    """
    n = L.n
    roots = []
    if L.kind == "delpezzo":
        for v0 in range(-4, 5):
            if v0 * v0 * (9 - n) > 2 * n:
                continue
            for rest in _bounded_vectors(n, -3 * v0, 2 + v0 * v0):
                roots.append((v0, *rest))
    else:
        roots = _bounded_vectors(n + 1, 0, 2)
    roots = tuple(sorted(roots))
    assert all(L.dot(v, v) == 2 and L.dot(v, L.K) == 0 for v in roots)
    return roots


def is_root(L, v):
    return (len(v) == L.width and all(isinstance(c, int) for c in v)
            and L.dot(v, v) == 2 and L.dot(v, L.K) == 0)


# -- coordinates on the canonical basis ---------------------------------------

@lru_cache(maxsize=None)
def _pivot_plan(L):
    """Basis rows ordered by pivot column (the basis is HNF up to row order)."""
    plan = []
    for i, row in enumerate(L.basis):
        c = next(j for j, x in enumerate(row) if x)
        plan.append((c, i, row))
    plan.sort()
    return tuple(plan)


def lattice_coords(L, v):
    """Integer coordinates of an ambient lattice vector on L.basis.

    Raises ValueError if v is not in the lattice.
    """
    rem = list(v)
    x = [0] * L.n
    for c, i, row in _pivot_plan(L):
        q, r = divmod(rem[c], row[c])
        if r:
            raise ValueError("vector is not in the lattice")
        x[i] = q
        if q:
            rem = [a - q * b for a, b in zip(rem, row)]
    if any(rem):
        raise ValueError("vector is not in the lattice")
    return tuple(x)


def from_coords(L, x):
    """Ambient vector with the given basis coordinates."""
    v = [0] * L.width
    for xi, row in zip(x, L.basis):
        if xi:
            v = [a + xi * b for a, b in zip(v, row)]
    return tuple(v)


# -- isometries ----------------------------------------------------------------

class LatticeIsometry:
    """Isometry of a lattice, as its integer matrix on the lattice basis.

    Row i holds the basis coordinates of the image of basis vector i, so the
    map acts on coordinate rows by x -> x @ matrix.
    """

    __slots__ = ("lattice", "matrix")

    def __init__(self, lattice, matrix, check=True):
        matrix = tuple(tuple(int(a) for a in row) for row in matrix)
        if check:
            n = lattice.n
            if len(matrix) != n or any(len(r) != n for r in matrix):
                raise errors.NotIsometry("matrix must be n x n")
            G = lattice.gram
            for i in range(n):
                for j in range(i, n):
                    v = sum(matrix[i][a] * G[a][b] * matrix[j][b]
                            for a in range(n) for b in range(n))
                    if v != G[i][j]:
                        raise errors.NotIsometry("matrix does not preserve the Gram form")
            if abs(intlinalg.det(matrix)) != 1:
                raise errors.NotIsometry("matrix is not invertible over Z")
        object.__setattr__(self, "lattice", lattice)
        object.__setattr__(self, "matrix", matrix)

    def __setattr__(self, *a):
        raise AttributeError("LatticeIsometry is immutable")

    @classmethod
    def identity(cls, L):
        return cls(L, tuple(tuple(1 if i == j else 0 for j in range(L.n))
                            for i in range(L.n)), check=False)

    @classmethod
    def minus_identity(cls, L):
        return cls(L, tuple(tuple(-1 if i == j else 0 for j in range(L.n))
                            for i in range(L.n)), check=False)

    @classmethod
    def from_ambient_images(cls, L, images):
        """Isometry sending basis vector i to the given ambient vector."""
        return cls(L, tuple(lattice_coords(L, im) for im in images))

    def apply_coords(self, x):
        M = self.matrix
        return tuple(sum(x[i] * M[i][j] for i in range(len(x)))
                     for j in range(len(x)))

    def apply_ambient(self, v):
        """Image of an ambient lattice vector."""
        return from_coords(self.lattice, self.apply_coords(lattice_coords(self.lattice, v)))

    def __mul__(self, other):
        """Composition: (self * other) applies other first."""
        if self.lattice != other.lattice:
            raise errors.NotIsometry("isometries of different lattices")
        A, B = other.matrix, self.matrix
        n = len(A)
        prod = tuple(tuple(sum(A[i][k] * B[k][j] for k in range(n))
                           for j in range(n)) for i in range(n))
        return LatticeIsometry(self.lattice, prod, check=False)

    def inverse(self):
        n = self.lattice.n
        ident = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        M = [[Fraction(a) for a in row] for row in self.matrix]
        for c in range(n):
            piv = next(i for i in range(c, n) if M[i][c])
            M[c], M[piv] = M[piv], M[c]
            ident[c], ident[piv] = ident[piv], ident[c]
            f = 1 / M[c][c]
            M[c] = [x * f for x in M[c]]
            ident[c] = [x * f for x in ident[c]]
            for i in range(n):
                if i != c and M[i][c]:
                    g = M[i][c]
                    M[i] = [a - g * b for a, b in zip(M[i], M[c])]
                    ident[i] = [a - g * b for a, b in zip(ident[i], ident[c])]
        inv = tuple(tuple(int(x) for x in row) for row in ident)
        return LatticeIsometry(self.lattice, inv, check=False)

    def is_identity(self):
        return all(self.matrix[i][j] == (1 if i == j else 0)
                   for i in range(len(self.matrix)) for j in range(len(self.matrix)))

    def __eq__(self, other):
        return (isinstance(other, LatticeIsometry)
                and self.lattice == other.lattice and self.matrix == other.matrix)

    def __hash__(self):
        return hash((self.lattice, self.matrix))

    def __repr__(self):
        return f"LatticeIsometry({self.lattice.root_type}, {self.matrix})"

    def ambient_matrix(self):
        """The (n+1) x (n+1) integer matrix on ambient coordinates fixing K.

        Exists only for isometries extending to the ambient lattice (all Weyl
        elements do; -1 does not for n <= 6).  Raises ValueError otherwise.
        """
        L = self.lattice
        span = L.basis + (L.K,)
        cols = []
        for j in range(L.width):
            e = tuple(int(i == j) for i in range(L.width))
            coeffs = intlinalg.solve_rational(span, e)
            # image of e_j under (u on L) + (identity on K), over Q
            img = [Fraction(0)] * L.width
            for c, b in zip(coeffs[:-1], L.basis):
                if c:
                    w = self.apply_ambient(b)
                    img = [a + c * x for a, x in zip(img, w)]
            img = [a + coeffs[-1] * k for a, k in zip(img, L.K)]
            if any(f.denominator != 1 for f in img):
                raise ValueError("isometry does not extend to the ambient lattice fixing K")
            cols.append(tuple(int(f) for f in img))
        # column j = image of E_j; return rows for the action v -> M @ v
        return tuple(tuple(cols[j][i] for j in range(L.width)) for i in range(L.width))


def root_reflection(L, alpha):
    """The reflection x -> x - <x, alpha> alpha in a root alpha."""
    if not is_root(L, alpha):
        raise errors.NotARoot(f"{alpha} is not a root")
    images = []
    for b in L.basis:
        t = L.dot(b, alpha)
        images.append(tuple(a - t * c for a, c in zip(b, alpha)))
    return LatticeIsometry.from_ambient_images(L, images)


# -- simple roots and generators ----------------------------------------------

_WEIGHT_BASE = 101  # exceeds twice any root coordinate, so heights are injective


def _height(v):
    return sum(c * _WEIGHT_BASE ** i for i, c in enumerate(v))


@lru_cache(maxsize=None)
def simple_roots(L):
    """Indecomposable positive roots for a fixed generic height functional."""
    roots = enumerate_roots(L)
    pos = [r for r in roots if _height(r) > 0]
    posset = set(pos)
    simple = []
    for a in pos:
        if not any(b != a and tuple(x - y for x, y in zip(a, b)) in posset
                   for b in pos):
            simple.append(a)
    assert len(simple) == L.n
    return tuple(simple)


@lru_cache(maxsize=None)
def weyl_generators(L):
    """Reflections in the simple roots; they generate the full Weyl group."""
    return tuple(root_reflection(L, s) for s in simple_roots(L))


# -- full isometry group --------------------------------------------------------

@lru_cache(maxsize=None)
def _aut_search(L):
    """Backtracking over root images of the simple roots.

    Any assignment of roots to the simple roots preserving all pairwise Gram
    values extends linearly to an isometry of L, and every isometry arises
    this way.  Level by level, the number of candidates that extend to a full
    solution is the orbit length of that simple root under the pointwise
    stabilizer of the previous ones, so the product of the counts is |O(L)|.

    Returns (order, solutions); each solution is a tuple of root indices, one
    isometry per realizable candidate that fixes the earlier simple roots.
    """
    roots = enumerate_roots(L)
    idx = {r: i for i, r in enumerate(roots)}
    nroots = len(roots)
    rmat = np.array(roots, dtype=np.int64)
    jmat = np.diag(np.array(L.signs, dtype=np.int64))
    pair = rmat @ jmat @ rmat.T                   # all pairwise products
    simple = [idx[s] for s in simple_roots(L)]
    k = len(simple)
    sgram = pair[np.ix_(simple, simple)]

    def complete(im):
        """Depth-first completion; fills `im` in place and returns success."""
        open_pos = [t for t in range(k) if im[t] < 0]
        if not open_pos:
            return True
        best_t, best_cands = None, None
        for t in open_pos:
            m = np.ones(nroots, dtype=bool)
            for s in range(k):
                if im[s] >= 0:
                    m &= pair[im[s]] == sgram[s, t]
            c = int(m.sum())
            if c == 0:
                return False
            if best_cands is None or c < len(best_cands):
                best_t, best_cands = t, np.nonzero(m)[0]
                if c == 1:
                    break
        for r in best_cands:
            im[best_t] = int(r)
            if complete(im):
                return True
            im[best_t] = -1
        return False

    order = 1
    solutions = []
    prefix = [-1] * k
    for level in range(k):
        m = np.ones(nroots, dtype=bool)
        for s in range(level):
            m &= pair[prefix[s]] == sgram[s, level]
        count = 0
        for r in np.nonzero(m)[0]:
            im = list(prefix)
            im[level] = int(r)
            if complete(im):
                count += 1
                solutions.append(tuple(im))
        assert count > 0
        order *= count
        prefix[level] = simple[level]
    return order, tuple(solutions)


@lru_cache(maxsize=None)
def _basis_on_simple(L):
    """Integer coordinates of the canonical basis on the simple roots."""
    simple = simple_roots(L)
    rows = []
    for b in L.basis:
        coeffs = intlinalg.solve_integer(simple, b)
        assert coeffs is not None
        rows.append(coeffs)
    return tuple(rows)


def _iso_from_root_images(L, image_indices):
    """Isometry determined by the images of the simple roots."""
    roots = enumerate_roots(L)
    images = []
    for coeffs in _basis_on_simple(L):
        img = [0] * L.width
        for c, ri in zip(coeffs, image_indices):
            if c:
                img = [a + c * x for a, x in zip(img, roots[ri])]
        images.append(tuple(img))
    return LatticeIsometry.from_ambient_images(L, images)


def automorphism_order(L):
    """|O(L)| by exhaustive backtracking, independent of the chain engine."""
    return _aut_search(L)[0]


@lru_cache(maxsize=None)
def automorphism_group(L):
    """Generators of the full isometry group O(L); always includes -1.

    The backtracking search yields one isometry per stabilizer-orbit element,
    which together generate O(L); the list is then pruned to the generators
    that actually grow the stabilizer chain, and the chain order is checked
    against the backtracking count.
    """
    from . import groups

    order, solutions = _aut_search(L)
    roots = enumerate_roots(L)
    idx = {r: i for i, r in enumerate(roots)}
    coords = np.array([lattice_coords(L, r) for r in roots], dtype=np.int64)
    on_simple = coords @ np.array(_basis_on_simple(L), dtype=np.int64)
    rmat = np.array(roots, dtype=np.int64)

    def perm_of(sol):
        imgs = on_simple @ rmat[list(sol)]
        return np.array([idx[tuple(int(x) for x in row)] for row in imgs],
                        dtype=np.int32)

    # -1 goes first so the pruner always keeps it
    minus = LatticeIsometry.minus_identity(L)
    neg_perm = np.array([idx[tuple(-c for c in r)] for r in roots], dtype=np.int32)
    pg = groups.PermGroup([], len(roots))
    kept = []
    if pg.extend(neg_perm):
        kept.append(minus)
    for sol in solutions:
        if pg.extend(perm_of(sol)):
            kept.append(_iso_from_root_images(L, sol))
    assert pg.order() == order
    if minus not in kept:
        kept.append(minus)
    return tuple(kept)


# -- decomposition helpers (used for the n=3 analysis) ---------------------------

def root_components(L):
    """Connected components of the root set under nonzero pairing, sorted."""
    roots = enumerate_roots(L)
    parent = list(range(len(roots)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i in range(len(roots)):
        for j in range(i + 1, len(roots)):
            if L.dot(roots[i], roots[j]) != 0:
                parent[find(i)] = find(j)
    comps = {}
    for i, r in enumerate(roots):
        comps.setdefault(find(i), []).append(r)
    return tuple(sorted((tuple(sorted(c)) for c in comps.values()),
                        key=lambda c: (len(c), c)))


def sublattice_gram(L, vectors):
    """Gram matrix of the sublattice spanned by the given ambient vectors."""
    rows = intlinalg.hermite_normal_form(vectors)
    return tuple(tuple(L.dot(u, v) for v in rows) for u in rows)


def gram_root_vectors(gram):
    """Coordinate vectors of square 2 for a positive-definite even Gram matrix."""
    n = len(gram)
    out = []
    bound = 4  # coordinates of square-2 vectors in these small lattices are tiny

    def rec(i, vec):
        if i == n:
            v = tuple(vec)
            s = sum(v[a] * gram[a][b] * v[b] for a in range(n) for b in range(n))
            if s == 2:
                out.append(v)
            return
        for x in range(-bound, bound + 1):
            vec.append(x)
            rec(i + 1, vec)
            vec.pop()

    rec(0, [])
    return tuple(sorted(out))


def gram_isometry_count(gram):
    """|O| of a small positive-definite even lattice given by its Gram matrix.

    Exhaustive backtracking over images of the basis among all lattice vectors
    of the relevant squared lengths; intended for rank <= 3 component checks.
    """
    n = len(gram)
    # candidate images must have the same square as the basis vector
    squares = sorted({gram[i][i] for i in range(n)})
    vecs = {}
    bound = 5

    def rec(i, vec):
        if i == n:
            v = tuple(vec)
            s = sum(v[a] * gram[a][b] * v[b] for a in range(n) for b in range(n))
            if s in vecs:
                vecs[s].append(v)
            return
        for x in range(-bound, bound + 1):
            vec.append(x)
            rec(i + 1, vec)
            vec.pop()

    for s in squares:
        vecs[s] = []
    rec(0, [])

    def pairing(u, v):
        return sum(u[a] * gram[a][b] * v[b] for a in range(n) for b in range(n))

    count = 0

    def assign(i, images):
        nonlocal count
        if i == n:
            M = images
            if abs(intlinalg.det(M)) == 1:
                count += 1
            return
        for v in vecs[gram[i][i]]:
            if all(pairing(v, images[j]) == gram[i][j] for j in range(i)):
                assign(i + 1, images + [v])

    assign(0, [])
    return count
