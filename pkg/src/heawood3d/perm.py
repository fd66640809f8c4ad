"""Permutations of the four corners {0, 1, 2, 3}, stored as 4-tuples of images."""
from itertools import permutations

import numpy as np

IDENTITY = (0, 1, 2, 3)
ALL_PERMS = tuple(permutations(range(4)))
PERM_ID = {p: k for k, p in enumerate(ALL_PERMS)}

# local edge k of a tetrahedron joins corners EDGE_PAIRS[k]
EDGE_PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
EDGE_INDEX = {pair: k for k, pair in enumerate(EDGE_PAIRS)}
EDGE_INDEX.update({(b, a): k for (a, b), k in list(EDGE_INDEX.items())})

# ordered corner pairs, used for edge ends (directed edges)
ORDERED_PAIRS = tuple((a, b) for a in range(4) for b in range(4) if a != b)
ORDERED_INDEX = {pair: k for k, pair in enumerate(ORDERED_PAIRS)}


def inverse(p):
    q = [0] * 4
    for i, j in enumerate(p):
        q[j] = i
    return tuple(q)


def compose(p, q):
    """Return ``p o q`` (apply ``q`` first)."""
    return tuple(p[q[i]] for i in range(4))


def sign(p):
    s = 1
    seen = [False] * 4
    for i in range(4):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length % 2 == 0:
            s = -s
    return s


def parse(text):
    if len(text) != 4 or not text.isdigit() or sorted(text) != ["0", "1", "2", "3"]:
        raise ValueError(f"not a permutation of 0123: {text!r}")
    return tuple(int(c) for c in text)


def format_perm(p):
    return "".join(str(i) for i in p)


def face_corners(i):
    """Corners of face ``i`` (the face opposite corner ``i``), ascending."""
    return tuple(c for c in range(4) if c != i)


# lookup tables indexed by permutation id
PERM_ARRAY = np.array(ALL_PERMS, dtype=np.int64)
PERM_SIGN = np.array([sign(p) for p in ALL_PERMS], dtype=np.int64)
EDGE_MAP = np.array([[EDGE_INDEX[p[a], p[b]] for a, b in EDGE_PAIRS] for p in ALL_PERMS], dtype=np.int64)
ORDERED_MAP = np.array([[ORDERED_INDEX[p[a], p[b]] for a, b in ORDERED_PAIRS] for p in ALL_PERMS],
                       dtype=np.int64)
