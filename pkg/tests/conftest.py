import pytest

from cs_crack import MaterialParams, ProblemSetup, solver_for


def make_setup(m=0.5, h0=0.0, eta=0.0, L=1.0, T0=1.0, ell=1.0):
    """Normalized-parameter setup: G = rho = 1 so c_s = 1 and J = 4 h0^2."""
    mat = MaterialParams(G=1.0, rho=1.0, ell=ell, eta=eta, J=4.0 * (h0 * ell) ** 2)
    return ProblemSetup(material=mat, m=m, T0=T0, L=L)


@pytest.fixture(scope="session")
def solver_cache():
    """Session-wide cache of built pipelines keyed by (m, h0, eta, L)."""
    cache = {}

    def get(m=0.5, h0=0.0, eta=0.0, L=1.0):
        key = (round(m, 12), round(h0, 12), round(eta, 12), round(L, 12))
        if key not in cache:
            cache[key] = solver_for(make_setup(m=m, h0=h0, eta=eta, L=L))
        return cache[key]

    return get


@pytest.fixture(scope="session")
def default_solver(solver_cache):
    """The workhorse configuration m=0.5, h0=0, eta=0, L/ell=1."""
    return solver_cache()
