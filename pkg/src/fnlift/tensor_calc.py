"""Vector fields and vector-valued forms with polynomial coefficients.

All objects live on R^{2n} in the global chart ``(x1..xn, y1..yn)`` and store
their full coefficient tensor as a numpy object array of :class:`Poly`.
Index convention: the value (upper) index comes first, followed by the
argument slots, so ``K.coeffs[k, i, j]`` is the ``k``-th component of
``K(e_i, e_j)`` for the coordinate frame ``e``.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

from .polyring import Poly, parse_poly

__all__ = [
    "VectorTensor",
    "VecField",
    "VecForm1",
    "VecForm2",
    "Tensor13",
    "wrap",
    "coordinate_field",
    "identity_form",
    "lie_bracket",
    "apply",
    "lie_derivative",
    "lie_derivative_form",
    "fn_bracket_11",
    "fn_bracket_11_on_fields",
    "fn_bracket_form_field",
    "interior_product",
    "potential",
    "compose",
    "compose_12",
    "cyclic_sum",
    "tensor_product",
]


def _poly_array(data, nvars: int, rank: int) -> np.ndarray:
    shape = (nvars,) * (rank + 1)
    arr = np.empty(shape, dtype=object)
    src = np.asarray(data, dtype=object) if not isinstance(data, np.ndarray) else data
    if src.shape != shape:
        raise ValueError(f"expected coefficient shape {shape}, got {src.shape}")
    for idx in np.ndindex(shape):
        v = src[idx]
        if isinstance(v, Poly):
            if v.nvars != nvars:
                raise ValueError(f"coefficient at {idx} has {v.nvars} variables, expected {nvars}")
            arr[idx] = v
        elif isinstance(v, str):
            arr[idx] = parse_poly(v, nvars)
        elif v is None:
            arr[idx] = Poly.zero(nvars)
        else:
            arr[idx] = Poly.const(nvars, v)
    return arr


def _zeros(dim: int, rank: int) -> np.ndarray:
    arr = np.empty((dim,) * (rank + 1), dtype=object)
    z = Poly.zero(dim)
    for idx in np.ndindex(arr.shape):
        arr[idx] = z
    return arr


class VectorTensor:
    """Vector-valued multilinear form with ``rank`` argument slots."""

    rank: int | None = None

    __slots__ = ("coeffs",)

    def __init__(self, coeffs, dim: int | None = None):
        if isinstance(coeffs, np.ndarray) and coeffs.dtype == object and dim is None:
            dim = coeffs.shape[0]
            rank = coeffs.ndim - 1
            if self.rank is not None and rank != self.rank:
                raise ValueError(f"{type(self).__name__} needs rank {self.rank}, got {rank}")
            if any(s != dim for s in coeffs.shape):
                raise ValueError(f"coefficient tensor must be cubical, got {coeffs.shape}")
            # fast path: trust arrays of Poly produced internally, but fix stray scalars
            flat = coeffs.reshape(-1)
            if not all(isinstance(v, Poly) for v in flat):
                coeffs = _poly_array(coeffs, dim, rank)
            self.coeffs = coeffs
            return
        src = np.asarray(coeffs, dtype=object)
        dim = dim or src.shape[0]
        rank = src.ndim - 1
        if self.rank is not None and rank != self.rank:
            raise ValueError(f"{type(self).__name__} needs rank {self.rank}, got {rank}")
        self.coeffs = _poly_array(src, dim, rank)

    # -- basic structure ----------------------------------------------------

    @property
    def dim(self) -> int:
        return self.coeffs.shape[0]

    @property
    def degree(self) -> int:
        return self.coeffs.ndim - 1

    @classmethod
    def zero(cls, dim: int, rank: int | None = None):
        r = cls.rank if cls.rank is not None else rank
        return cls(_zeros(dim, r))

    def _check(self, other: "VectorTensor"):
        if not isinstance(other, VectorTensor):
            raise TypeError(f"expected a vector tensor, got {type(other).__name__}")
        if other.coeffs.shape != self.coeffs.shape:
            raise ValueError(f"shape mismatch: {self.coeffs.shape} vs {other.coeffs.shape}")

    # -- arithmetic -------------------------------------------------------------

    def __add__(self, other):
        self._check(other)
        return _like(self, other, self.coeffs + other.coeffs)

    def __sub__(self, other):
        self._check(other)
        return _like(self, other, self.coeffs - other.coeffs)

    def __neg__(self):
        return type(self)(-self.coeffs)

    def __mul__(self, scalar):
        if isinstance(scalar, VectorTensor):
            return NotImplemented
        if isinstance(scalar, (int, Fraction)):
            scalar = Poly.const(self.dim, scalar)
        return type(self)(self.coeffs * scalar)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self * (1 / Fraction(scalar))

    def __eq__(self, other):
        if not isinstance(other, VectorTensor):
            return NotImplemented
        return self.coeffs.shape == other.coeffs.shape and all(
            a == b for a, b in zip(self.coeffs.flat, other.coeffs.flat)
        )

    __hash__ = None

    def __getitem__(self, idx):
        return self.coeffs[idx]

    def map(self, fn) -> "VectorTensor":
        out = np.empty(self.coeffs.shape, dtype=object)
        for idx in np.ndindex(out.shape):
            out[idx] = fn(self.coeffs[idx])
        return type(self)(out)

    def diff(self, var: int) -> "VectorTensor":
        return self.map(lambda p: p.diff(var))

    def gradient(self) -> np.ndarray:
        """Array of partial derivatives with the differentiation index last."""
        out = np.empty(self.coeffs.shape + (self.dim,), dtype=object)
        for idx in np.ndindex(self.coeffs.shape):
            p = self.coeffs[idx]
            for m in range(self.dim):
                out[idx + (m,)] = p.diff(m)
        return out

    # -- zero tests and evaluation ----------------------------------------------------

    def is_zero(self) -> bool:
        return all(p.is_zero() for p in self.coeffs.flat)

    def nonzero_entries(self) -> Iterator[tuple[tuple, Poly]]:
        for idx in np.ndindex(self.coeffs.shape):
            p = self.coeffs[idx]
            if not p.is_zero():
                yield idx, p

    def first_nonzero(self):
        return next(self.nonzero_entries(), None)

    def eval(self, point: Sequence) -> np.ndarray:
        out = np.empty(self.coeffs.shape, dtype=object)
        for idx in np.ndindex(out.shape):
            out[idx] = self.coeffs[idx].eval(point)
        return out

    def max_degree(self) -> int:
        return max(p.degree() for p in self.coeffs.flat)

    def __call__(self, *args):
        return apply(self, *args)

    def __repr__(self):
        nz = list(itertools.islice(self.nonzero_entries(), 6))
        body = ", ".join(f"{idx}: {p}" for idx, p in nz)
        more = ", ..." if len(nz) == 6 else ""
        return f"{type(self).__name__}(dim={self.dim}, {{{body}{more}}})"

    def to_lists(self):
        """Nested lists of polynomial strings, suitable for JSON."""
        return np.vectorize(str, otypes=[object])(self.coeffs).tolist()

    def is_antisymmetric(self) -> bool:
        if self.degree < 2:
            return True
        swapped = np.swapaxes(self.coeffs, 1, 2)
        return all(a == -b for a, b in zip(self.coeffs.flat, swapped.flat))


class VecField(VectorTensor):
    """Vector field; ``comps[k]`` is the ``k``-th coordinate component."""

    rank = 0
    __slots__ = ()

    @property
    def comps(self) -> np.ndarray:
        return self.coeffs


class VecForm1(VectorTensor):
    """Vector 1-form, i.e. a field of endomorphisms; ``coeffs[k, j] = (K e_j)^k``."""

    rank = 1
    __slots__ = ()

    def __matmul__(self, other):
        if isinstance(other, VectorTensor):
            return compose(self, other)
        return NotImplemented

    def column(self, j: int) -> VecField:
        return VecField(self.coeffs[:, j].copy())

    def transpose_matrix(self) -> np.ndarray:
        return self.coeffs.T


class VecForm2(VectorTensor):
    """Vector 2-form; antisymmetric in its two argument slots."""

    rank = 2
    __slots__ = ()


class Tensor13(VectorTensor):
    """Vector-valued trilinear form with no symmetry, ``A(X, Y)Z``."""

    rank = 3
    __slots__ = ()


_BY_RANK = {0: VecField, 1: VecForm1, 2: VectorTensor, 3: Tensor13}


def wrap(coeffs: np.ndarray, antisymmetric: bool = False) -> VectorTensor:
    """Wrap a coefficient array in the class matching its rank."""
    rank = coeffs.ndim - 1
    if rank == 2 and antisymmetric:
        return VecForm2(coeffs)
    return _BY_RANK.get(rank, VectorTensor)(coeffs)


def _like(a: VectorTensor, b: VectorTensor, coeffs: np.ndarray) -> VectorTensor:
    if type(a) is type(b):
        return type(a)(coeffs)
    return wrap(coeffs)


def coordinate_field(dim: int, i: int) -> VecField:
    comps = [0] * dim
    comps[i] = 1
    return VecField(comps, dim)


def identity_form(dim: int) -> VecForm1:
    return VecForm1(np.eye(dim, dtype=int).astype(object), dim)


def _check_dims(*objs: VectorTensor):
    dims = {o.dim for o in objs}
    if len(dims) != 1:
        raise ValueError(f"dimension mismatch: {sorted(dims)}")


# -- fields ---------------------------------------------------------------------


def _directional(X: np.ndarray, T: np.ndarray) -> np.ndarray:
    """``X^m d_m T`` for a coefficient array ``T``."""
    dim = X.shape[0]
    out = np.empty(T.shape, dtype=object)
    for idx in np.ndindex(T.shape):
        p = T[idx]
        acc = Poly.zero(dim)
        if p.terms:
            for m in range(dim):
                if X[m].terms:
                    acc = acc + X[m] * p.diff(m)
        out[idx] = acc
    return out


def lie_bracket(X: VecField, Y: VecField) -> VecField:
    """``[X, Y]^k = X^i d_i Y^k - Y^i d_i X^k``."""
    _check_dims(X, Y)
    return VecField(_directional(X.coeffs, Y.coeffs) - _directional(Y.coeffs, X.coeffs))


# -- contraction ------------------------------------------------------------------


_LETTERS = "abcdefghijklmnopqrstuvw"


def apply(K: VectorTensor, *args: VecField) -> VectorTensor:
    """Contract the leading argument slots of ``K`` with vector fields.

    Supplying fewer fields than slots leaves the trailing slots free, e.g.
    ``apply(R, X, Y)`` for a :class:`Tensor13` is the endomorphism
    ``Z -> R(X, Y)Z``.
    """
    if len(args) > K.degree:
        raise ValueError(f"{K.degree}-form applied to {len(args)} arguments")
    _check_dims(K, *args)
    if not args:
        return K
    r = K.degree
    idx = _LETTERS[: r + 1]
    spec = idx + "," + ",".join(idx[1 + s] for s in range(len(args)))
    out_idx = idx[0] + idx[1 + len(args):]
    return wrap(np.einsum(f"{spec}->{out_idx}", K.coeffs, *[a.coeffs for a in args]))


def tensor_product(field: VecField, *covectors: Sequence) -> VectorTensor:
    """``field (x) a1 (x) ... (x) ak`` for constant/polynomial row vectors ``ai``."""
    out = field.coeffs
    for cov in covectors:
        cov = np.array([c if isinstance(c, Poly) else Poly.const(field.dim, c) for c in cov], dtype=object)
        out = np.multiply.outer(out, cov)
    return wrap(out)


# -- Lie derivatives and Frölicher-Nijenhuis brackets -----------------------------------


def lie_derivative(Z: VecField, K: VectorTensor) -> VectorTensor:
    """Lie derivative ``[Z, K]`` of a vector-valued form of any rank.

    ``([Z,K])(X1..Xr) = [Z, K(X1..Xr)] - sum_s K(.., [Z, Xs], ..)``.
    """
    _check_dims(Z, K)
    r = K.degree
    dZ = Z.gradient()  # dZ[k, m] = d_m Z^k
    out = _directional(Z.coeffs, K.coeffs)
    # - K^m_{I} d_m Z^k
    idx = _LETTERS[1: r + 1]
    out = out - np.einsum(f"m{idx},km->k{idx}", K.coeffs, dZ)
    for s in range(r):
        # + K^k_{..m..} d_{i_s} Z^m
        src = list(idx)
        src[s] = "m"
        out = out + np.einsum(f"k{''.join(src)},m{idx[s]}->k{idx}", K.coeffs, dZ)
    return _like(K, K, out)


def lie_derivative_form(Z: VecField, K: VectorTensor) -> VectorTensor:
    if K.degree not in (1, 2):
        raise ValueError("lie_derivative_form expects a vector 1-form or 2-form")
    return lie_derivative(Z, K)


def fn_bracket_11(K: VecForm1, L: VecForm1) -> VecForm2:
    """Frölicher-Nijenhuis bracket of two vector 1-forms.

    ``[K,L](X,Y) = [KX,LY] + [LX,KY] + KL[X,Y] + LK[X,Y]
    - K[LX,Y] - K[X,LY] - L[KX,Y] - L[X,KY]``, evaluated on the coordinate
    frame, where ``[e_i, e_j] = 0``.
    """
    _check_dims(K, L)
    dK, dL = K.gradient(), L.gradient()  # dK[k, i, m] = d_m K^k_i
    Kc, Lc = K.coeffs, L.coeffs
    # [K_i, L_j]^k = K^m_i d_m L^k_j - L^m_j d_m K^k_i
    t1 = np.einsum("mi,kjm->kij", Kc, dL) - np.einsum("mj,kim->kij", Lc, dK)
    t2 = np.einsum("mi,kjm->kij", Lc, dK) - np.einsum("mj,kim->kij", Kc, dL)
    # K(d_j L_i) - K(d_i L_j) + L(d_j K_i) - L(d_i K_j)
    t3 = np.einsum("km,mij->kij", Kc, dL) - np.einsum("km,mji->kij", Kc, dL)
    t4 = np.einsum("km,mij->kij", Lc, dK) - np.einsum("km,mji->kij", Lc, dK)
    return VecForm2(t1 + t2 + t3 + t4)


def fn_bracket_11_on_fields(K: VecForm1, L: VecForm1, X: VecField, Y: VecField) -> VecField:
    """The eight-term bracket formula evaluated literally on two fields."""
    br = lie_bracket
    XY = br(X, Y)
    return (
        br(K(X), L(Y)) + br(L(X), K(Y)) + K(L(XY)) + L(K(XY))
        - K(br(L(X), Y)) - K(br(X, L(Y))) - L(br(K(X), Y)) - L(br(X, K(Y)))
    )


def fn_bracket_form_field(K: VecForm1, S: VecField) -> VecForm1:
    """``[K, S](X) = [KX, S] - K[X, S]``; equal to ``-[S, K]``."""
    _check_dims(K, S)
    return -lie_derivative(S, K)


def interior_product(K: VecForm1, B: VectorTensor) -> VecForm2:
    """``(i_K B)(X, Y) = B(KX, Y) + B(X, KY)``."""
    _check_dims(K, B)
    Bc, Kc = B.coeffs, K.coeffs
    out = np.einsum("kab,ai->kib", Bc, Kc) + np.einsum("kib,bj->kij", Bc, Kc)
    return VecForm2(out)


def potential(K: VectorTensor, S: VecField) -> VectorTensor:
    """Insert ``S`` in the first slot: ``K°(X) = K(S, X)``, ``K° = K(S)`` for 1-forms."""
    if K.degree < 1:
        raise ValueError("the potential of a vector field is undefined")
    return apply(K, S)


def compose(A: VecForm1, B: VectorTensor) -> VectorTensor:
    """``(A o B)(args) = A(B(args))``."""
    _check_dims(A, B)
    r = B.degree
    idx = _LETTERS[1: r + 1]
    out = np.einsum(f"km,m{idx}->k{idx}", A.coeffs, B.coeffs)
    return _like(B, B, out)


def compose_12(A: VecForm1, B: VecForm2) -> VecForm2:
    return VecForm2(compose(A, B).coeffs)


def cyclic_sum(A: VectorTensor) -> VectorTensor:
    """Cyclic sum over the first three argument slots; trailing slots are kept."""
    if A.degree < 3:
        raise ValueError("cyclic sum needs at least three argument slots")
    rest = _LETTERS[3: A.degree]
    a, b, c = "xyz"
    src = A.coeffs
    out = (
        src
        + np.einsum(f"k{b}{c}{a}{rest}->k{a}{b}{c}{rest}", src)
        + np.einsum(f"k{c}{a}{b}{rest}->k{a}{b}{c}{rest}", src)
    )
    return _like(A, A, out)
