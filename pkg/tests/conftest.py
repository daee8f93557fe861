import pytest

from treelift import game as gamemod
from treelift.trees import TreeSpec

# The five-node example game: A..E as ids 0..4, arcs A->{B,D}, B->A,
# C->{B,D,E}, D->E, E->C; priorities 1,1,3,4,2; A and E owned by Odd.
WORKED_TEXT = """parity 4;
0 1 1 1,3 "A";
1 1 0 0 "B";
2 3 0 1,3,4 "C";
3 4 0 4 "D";
4 2 1 2 "E";
"""

# The nine-node 1-player example with four base nodes w1..w4 (C, H, E, D).
FOURBASE_TEXT = """parity 8;
0 1 0 1,5 "A";
1 1 1 2 "B";
2 2 0 0,7 "C";
3 4 1 1 "D";
4 4 0 6,8 "E";
5 3 0 0,3 "F";
6 5 1 5 "G";
7 4 1 4 "H";
8 2 1 0 "I";
"""

# The pinned initial Odd strategy for the exact phase reproduction: A->D, E->C.
WORKED_TAU = {0: 3, 4: 2}


@pytest.fixture
def worked():
    return gamemod.parse_pgsolver(WORKED_TEXT)


@pytest.fixture
def fourbase():
    return gamemod.parse_pgsolver(FOURBASE_TEXT)


@pytest.fixture
def p32():
    return TreeSpec.perfect(3, 2)


@pytest.fixture
def s32():
    return TreeSpec.succinct(3, 2)


@pytest.fixture
def s72():
    return TreeSpec.succinct(7, 2)


def materialize(spec: TreeSpec, prefix=()):
    """A TreeSpec's tree as nested lists (leaves = empty lists)."""
    from treelift import trees

    if len(prefix) == spec.height:
        return []
    return [materialize(spec, prefix + (c,))
            for c in trees.child_components(spec, prefix)]
