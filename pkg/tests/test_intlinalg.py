import sympy
from hypothesis import given
from hypothesis import strategies as st

from ifrob.intlinalg import Lattice, SparseEchelon, bareiss_det, hnf, integer_kernel, mat_vec

small = st.integers(-6, 6)


def matrices(rows, cols):
    return st.lists(st.lists(small, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


@given(matrices(3, 3))
def test_det_matches_sympy(m):
    assert bareiss_det(m) == sympy.Matrix(m).det()


@given(matrices(2, 4))
def test_kernel(a):
    ker = integer_kernel(a)
    assert len(ker) == 4 - sympy.Matrix(a).rank()
    for k in ker:
        assert all(x == 0 for x in mat_vec(a, k))


@given(matrices(3, 3), st.lists(small, min_size=3, max_size=3))
def test_lattice_reduce(gens, coeffs):
    lat = Lattice(gens, 3)
    assert lat.rank == sympy.Matrix(gens).rank()
    x = tuple(sum(c * g[k] for c, g in zip(coeffs, gens)) for k in range(3))
    assert x in lat
    assert lat.reduce(x) == (0, 0, 0)
    assert len(hnf(gens)) == lat.rank


@given(st.lists(st.dictionaries(st.integers(0, 6), small, max_size=4), max_size=8))
def test_sparse_echelon_rank(vecs):
    ech = SparseEchelon()
    for vec in vecs:
        ech.add(vec)
    dense = [[vec.get(j, 0) for j in range(7)] for vec in vecs] or [[0] * 7]
    assert ech.rank == sympy.Matrix(dense).rank()
