import doctest

import kappa_landau


def test_docstring_examples_run():
    result = doctest.testmod(kappa_landau)
    assert result.attempted > 0 and result.failed == 0


def test_public_names_resolve():
    for name in kappa_landau.__all__:
        assert getattr(kappa_landau, name) is not None


def test_errors_share_a_base():
    from kappa_landau import errors

    for cls in (errors.ParameterError, errors.QuantizationError, errors.DomainError,
                errors.PoleError, errors.ConvergenceError, errors.ChartDomainError):
        assert issubclass(cls, errors.LandauError)
