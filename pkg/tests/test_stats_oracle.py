"""Special functions against the committed numeric-integration grid.

The grid in fixtures/special_function_grid.json is produced by
tests/gen_fixtures.py from quadrature of the beta / t / F densities and is
independent of the continued-fraction implementation under test.
"""

from ahpkit.stats import f_cdf, regularized_incomplete_beta, t_cdf

TOLERANCE = 1e-9


def test_incomplete_beta_matches_quadrature(special_function_grid):
    for point in special_function_grid["beta"]:
        got = regularized_incomplete_beta(point["a"], point["b"], point["x"])
        assert abs(got - point["value"]) <= TOLERANCE, point


def test_t_cdf_matches_quadrature(special_function_grid):
    for point in special_function_grid["t"]:
        got = t_cdf(point["t"], point["df"])
        assert abs(got - point["value"]) <= TOLERANCE, point


def test_f_cdf_matches_quadrature(special_function_grid):
    for point in special_function_grid["f"]:
        got = f_cdf(point["f"], point["d1"], point["d2"])
        assert abs(got - point["value"]) <= TOLERANCE, point
