"""Independent coordinate oracles for sprays on R^{2n}.

These use the classical component formulas for a spray
``S = y^i d/dx^i - 2 G^i d/dy^i`` and never touch the Frolicher-Nijenhuis
machinery, so they cross-check the engine rather than restate it:

* nonlinear connection ``N^i_j = dG^i/dy^j``, horizontal frame
  ``delta_j = d/dx^j - N^i_j d/dy^i``;
* ``Gamma delta_j = delta_j`` and ``Gamma d/dy^j = -d/dy^j``;
* Berwald coefficients ``G^i_{jk} = d^2 G^i / dy^j dy^k`` with
  ``D_{delta_j} delta_k = G^i_{jk} delta_i``, ``D_{delta_j} d/dy^k = G^i_{jk} d/dy^i``
  and both derivatives along ``d/dy^j`` zero;
* connection map ``K(X) = D_X C`` with ``C = y^i d/dy^i``.
"""

from __future__ import annotations

import numpy as np

from fnlift.polyring import Poly


def _frames(G: list[Poly]):
    n = len(G)
    d = 2 * n
    zero = Poly.zero(d)
    N = [[G[i].diff(n + j) for j in range(n)] for i in range(n)]
    delta = []
    for j in range(n):
        comps = [Poly.const(d, int(k == j)) for k in range(n)] + [-N[i][j] for i in range(n)]
        delta.append(comps)
    vert = [[zero] * n + [Poly.const(d, int(k == j)) for k in range(n)] for j in range(n)]
    return n, d, N, delta, vert


def gamma_matrix(G: list[Poly]) -> np.ndarray:
    """``Gamma`` as a matrix ``[k, j]``: ``Gamma d/dx^j = d/dx^j - 2 N^i_j d/dy^i``."""
    n, d, N, _, _ = _frames(G)
    M = np.empty((d, d), dtype=object)
    for k in range(d):
        for j in range(d):
            M[k, j] = Poly.const(d, 1 if k == j and k < n else (-1 if k == j else 0))
    for i in range(n):
        for j in range(n):
            M[n + i, j] = -2 * N[i][j]
    return M


def berwald_christoffel(G: list[Poly]) -> np.ndarray:
    """``gamma[k, a, b]`` with ``D_{e_a} e_b = (d_a e_b^k + gamma[k, a, b]) e_k``."""
    n, d, N, delta, vert = _frames(G)
    Gijk = [[[G[i].diff(n + j).diff(n + k) for k in range(n)] for j in range(n)] for i in range(n)]

    def combo(coeffs_by_frame):
        """Vector sum of ``c * frame`` over horizontal and vertical frames."""
        out = [Poly.zero(d) for _ in range(d)]
        for c, frame in coeffs_by_frame:
            for m in range(d):
                out[m] = out[m] + c * frame[m]
        return out

    # D on the adapted frame: D_{delta_j} delta_k, D_{delta_j} dy_k; zero along dy_j
    D_hh = [[combo([(Gijk[i][j][k], delta[i]) for i in range(n)]) for k in range(n)] for j in range(n)]
    D_hv = [[combo([(Gijk[i][j][k], vert[i]) for i in range(n)]) for k in range(n)] for j in range(n)]

    # coordinate fields in the adapted frame: d/dx^j = delta_j + N^i_j dy_i, d/dy^j = dy_j
    def D(a: int, b: int) -> list[Poly]:
        """Brute-force ``D_{e_a} e_b`` by the Leibniz rule on the adapted frame."""
        out = [Poly.zero(d) for _ in range(d)]

        def add(vec, c=None):
            for m in range(d):
                out[m] = out[m] + (vec[m] if c is None else c * vec[m])

        # e_a = delta_a + N^i_a dy_i for a < n, else a dy; only the delta part acts on frames
        alpha = {a: Poly.const(d, 1)} if a < n else {}
        # e_b = sum_k (coefficients) frame_k, coefficients are functions
        if b < n:
            parts = [(Poly.const(d, 1), ("h", b))] + [(N[i][b], ("v", i)) for i in range(n)]
        else:
            parts = [(Poly.const(d, 1), ("v", b - n))]
        for f, (kind, k) in parts:
            frame = delta[k] if kind == "h" else vert[k]
            # derivative of the function f along e_a
            ea = [Poly.const(d, int(m == a)) for m in range(d)]
            df = sum((ea[m] * f.diff(m) for m in range(d)), Poly.zero(d))
            add(frame, df)
            for j, c in alpha.items():
                add(D_hh[j][k] if kind == "h" else D_hv[j][k], c * f)
            # derivatives of the frame along dy_j vanish
        return out

    gamma = np.empty((d, d, d), dtype=object)
    for a in range(d):
        for b in range(d):
            vec = D(a, b)
            for k in range(d):
                gamma[k, a, b] = vec[k]
    return gamma


def connection_map(G: list[Poly]) -> np.ndarray:
    """``K[k, a] = (D_{e_a} C)^k`` from the oracle Christoffel symbols."""
    n = len(G)
    d = 2 * n
    gamma = berwald_christoffel(G)
    C = [Poly.zero(d)] * n + [Poly.var(d, n + i) for i in range(n)]
    K = np.empty((d, d), dtype=object)
    for k in range(d):
        for a in range(d):
            acc = C[k].diff(a)
            for b in range(d):
                acc = acc + gamma[k, a, b] * C[b]
            K[k, a] = acc
    return K
