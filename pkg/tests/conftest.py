import numpy as np
import pytest

from smibounds import SimilarityMatrix


def random_similarity(rng, n_targeted, n_untargeted, n_query, unit_diagonal=True):
    """Symmetric matrix with entries in [0, 1] over ``[T | U | Q]``."""
    n = n_targeted + n_untargeted + n_query
    m = rng.uniform(0.0, 1.0, (n, n))
    m = np.triu(m) + np.triu(m, 1).T
    if unit_diagonal:
        np.fill_diagonal(m, 1.0)
    return SimilarityMatrix(m, n_targeted, n_untargeted, n_query)


def embedded_similarity(rng, n_targeted, n_untargeted, n_query, dim=2):
    """RBF similarity of random points, closer to what the harness sees."""
    pts = rng.normal(size=(n_targeted + n_untargeted + n_query, dim))
    sq = ((pts[:, None, :] - pts[None, :, :]) ** 2).sum(-1)
    return SimilarityMatrix(np.exp(-sq / 2.0), n_targeted, n_untargeted, n_query)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import ACCEPTANCE_LINES
    except ImportError:
        return
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
