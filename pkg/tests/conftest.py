import pytest

from auctionlab import LognormalParams, _kernels


@pytest.fixture(scope="session", autouse=True)
def _warm_kernels():
    # compile the jit kernels once so no individual test pays for it
    _kernels.warm_up()


@pytest.fixture(scope="session")
def ref_params():
    """Parameterization of the bundled reference tables."""
    return LognormalParams(mu=1.102, sigma=2.524)
