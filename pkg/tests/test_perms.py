import itertools
import random

from tautmat.corpus import builtin_matroid
from tautmat.matroid import matroid_from_bases, uniform
from tautmat.perms import all_perms, iter_perm_bases, naive_perm_bases, reversed_perm


def test_incremental_matches_naive_exhaustively(small_corpus):
    for _, m in small_corpus:
        mats = [m, m.dual()]
        fast = dict(iter_perm_bases(mats))
        perms = list(all_perms(m.n_elements))
        assert len(fast) == len(perms)
        for sigma in perms:
            assert fast[sigma] == naive_perm_bases(mats, sigma)


def test_incremental_matches_naive_sampled_on_vamos(vamos):
    fast = dict(iter_perm_bases([vamos]))
    assert len(fast) == 40320
    rng = random.Random(21)
    for _ in range(200):
        sigma = tuple(rng.sample(range(8), 8))
        assert fast[sigma] == naive_perm_bases([vamos], sigma)


def test_incremental_joint_vector():
    # several matroids scanned simultaneously stay aligned
    m1 = uniform(2, 4)
    m2 = matroid_from_bases(4, [[0, 2], [0, 3], [1, 2], [1, 3], [2, 3]])
    m3 = m1.dual()
    for sigma, bases in iter_perm_bases([m1, m2, m3]):
        assert bases == naive_perm_bases([m1, m2, m3], sigma)


def test_reversed_perm():
    assert reversed_perm((2, 0, 1)) == (1, 0, 2)
    assert reversed_perm(reversed_perm((3, 1, 0, 2))) == (3, 1, 0, 2)
