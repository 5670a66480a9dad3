import pytest

from phaselab.acceptance import CRITERIA

RESULTS = []


@pytest.mark.parametrize("criterion", CRITERIA, ids=[c.__name__ for c in CRITERIA])
def test_criterion(criterion):
    result = criterion()
    RESULTS.append(result)
    print(result.line(), result.measured)
    assert result.passed, result.measured
