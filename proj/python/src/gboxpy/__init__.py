"""Python facade for the rotation-symmetric Bell-test toolkit."""

try:
    from . import _gbox as _core  # installed layout: extension inside the package
except ImportError:  # development layout: extension on PYTHONPATH
    import _gbox as _core

CorrelationFunction = _core.CorrelationFunction
bci_value = _core.bci_value
chsh_maximize = _core.chsh_maximize
chsh_value = _core.chsh_value
fit_trig_series = _core.fit_trig_series
gamma_j = _core.gamma_j
gamma_n = _core.gamma_n
locality_certificate = _core.locality_certificate
max_abs = _core.max_abs
max_deviation = _core.max_deviation
relational_core = _core.relational_core
sample_certified_correlation = _core.sample_certified_correlation
second_derivative_bound = _core.second_derivative_bound
werner_chsh_max = _core.werner_chsh_max
werner_correlation = _core.werner_correlation
witness_search = _core.witness_search

__all__ = [
    "CorrelationFunction",
    "bci_value",
    "chsh_maximize",
    "chsh_value",
    "fit_trig_series",
    "gamma_j",
    "gamma_n",
    "locality_certificate",
    "max_abs",
    "max_deviation",
    "relational_core",
    "sample_certified_correlation",
    "second_derivative_bound",
    "werner_chsh_max",
    "werner_correlation",
    "witness_search",
]
