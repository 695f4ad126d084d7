"""
Test cases for the model manifold and its symmetry algebra.

1. Model graph
2. Bracket table: Jacobi, conjugation, ad spectrum
3. Maurer-Cartan equations and d^2 = 0
4. Cartan-connection axioms with negative controls
"""

import sys
import os
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import pytest
import sympy

from errors import ManifoldFileError
from exterior import Coframe, OneForm
from expr_parser import parse_expression
from model import (
    LABELS,
    abelian_algebra,
    ad_spectrum,
    builtin_manifold,
    check_conjugation,
    check_jacobi,
    compare_templates,
    connection_axiom_check,
    d_squared,
    manifold_from_document,
    maurer_cartan_check,
    mc_structure,
    model_algebra,
    model_manifold,
    p5_template,
    verify_model,
)
from stages.invariants import INVARIANT_NAMES, InvariantSet
from symexpr import I, ZERO, Expression, conjugate

x = Expression.coordinate('x')
y = Expression.coordinate('y')
z = x + I * y
zbar = conjugate(z)


def _zero_invariants():
    return InvariantSet(dict((name, ZERO) for name in INVARIANT_NAMES))


def test_model_graph():
    """v_j written in z, zbar expands to the real graph."""
    phi = model_manifold().phi
    tests = [
        (phi[0], z * zbar),
        (phi[1], z * zbar * (z + zbar)),
        (phi[2], z * zbar * (z * z + Expression.constant('3/2') * z * zbar + zbar * zbar)),
        (phi[2], parse_expression('7/2*x^4+3*x^2*y^2-1/2*y^4')),
    ]
    for result, expected in tests:
        assert result == expected


def test_manifold_documents():
    manifold = manifold_from_document({'name': 'g', 'phi': ['x^2', '0', 'y'],
                                       'base_point': ['1', '0', '0', '0', '1/2']})
    assert manifold.name == 'g'
    assert manifold.base_point.as_strings() == ['1', '0', '0', '0', '1/2']

    bad = [
        [],
        {'phi': ['x', 'y']},
        {'phi': ['x', 'y', 3]},
        {'phi': ['x', 'y', 'w']},
        {'phi': ['x', 'y', 'i*x']},
        {'phi': ['x', 'y', 'u1'], 'base_point': ['1', '2']},
    ]
    for document in bad:
        with pytest.raises(ManifoldFileError):
            manifold_from_document(document)

    with pytest.raises(ManifoldFileError):
        builtin_manifold('nowhere')


def test_bracket_table():
    """Test the bracket table."""
    print("=== Brackets ===")

    g = model_algebra()
    tests = [
        (('alpha', 'tau'), {'tau': -4}),
        (('tau', 'alpha'), {'tau': 4}),
        (('tau', 'sigma'), {}),
        (('zeta', 'zetabar'), {'rho': -sympy.I}),
        (('sigma', 'zetabar'), {'tau': -1}),
        (('rho', 'zeta'), {'sigma': -1}),
    ]
    for (i, j), expected in tests:
        result = g.bracket_basis(i, j)
        status = "✓" if result == expected else "✗"
        print(f"{status} [e_{i}, e_{j}] = {result}")
        assert result == expected


def test_jacobi():
    report = check_jacobi(model_algebra())
    assert report.passed
    assert report.checked == 20

    assert check_jacobi(abelian_algebra()).passed

    perturbed = model_algebra().with_bracket('alpha', 'tau', {'tau': -3})
    report = check_jacobi(perturbed)
    assert not report.passed
    assert ('alpha', 'sigma', 'zeta') in [v.where for v in report.violations]


def test_conjugation_automorphism():
    assert check_conjugation(model_algebra()).passed
    broken = model_algebra().with_bracket('zeta', 'zetabar', {'rho': -1})
    assert not check_conjugation(broken).passed


def test_ad_spectrum():
    assert ad_spectrum(model_algebra()) == (0, -4, -3, -2, -1, -1)
    assert ad_spectrum(model_algebra(), 'zeta') is None


def test_maurer_cartan():
    """Test the Maurer-Cartan equations."""
    print("\n=== Maurer-Cartan ===")

    result = maurer_cartan_check(model_algebra())
    assert result['passed']
    assert result['display'].checked == 6 * 15
    st = result['structure']
    assert st.coefficient('rho', 'zeta', 'zetabar') == I
    assert st.coefficient('tau', 'alpha', 'tau') == Expression.constant(4)
    assert st.coefficient('tau', 'tau', 'alpha') == Expression.constant(-4)
    assert all(not three for three in d_squared(st).values())

    perturbed = maurer_cartan_check(model_algebra().with_bracket('alpha', 'tau', {'tau': -3}))
    assert not perturbed['passed']
    assert not perturbed['d_squared'].passed
    assert ('ddtau',) in [v.where for v in perturbed['d_squared'].violations]
    assert ('dtau', 'alpha', 'tau') in [v.where for v in perturbed['display'].violations]


def test_connection_axioms():
    """Test the three connection axioms."""
    print("\n=== Connection axioms ===")

    g = model_algebra()
    model_st = mc_structure(g)
    template = p5_template(_zero_invariants())
    tests = [
        ('model structure', model_st, g, True),
        ('zero-invariant template', template, g, True),
        ('perturbed algebra', model_st, g.with_bracket('alpha', 'rho', {'rho': -1}), False),
    ]
    for label, st, algebra, expected in tests:
        report = connection_axiom_check(st, algebra)
        status = "✓" if report.passed == expected else "✗"
        print(f"{status} {label}: {report.passed}")
        assert report.passed == expected

    report = connection_axiom_check(model_st, g.with_bracket('alpha', 'rho', {'rho': -1}))
    assert report.pairing and report.nondegeneracy
    assert not report.equivariance
    assert [component for axiom, component, _ in report.failures] == ['rho']


def test_template_matches_model():
    template = p5_template(_zero_invariants())
    model_st = mc_structure(model_algebra())
    for k in LABELS:
        for i in LABELS:
            for j in LABELS:
                assert template.coefficient(k, i, j) == model_st.coefficient(k, i, j)


def test_nondegeneracy_with_coframe():
    g = model_algebra()
    names = ('tau', 'sigma', 'rho', 'zeta', 'zetabar')
    good = Coframe([OneForm.coordinate(c) for c in ('x', 'y', 'u1', 'u2', 'u3')], names)
    assert connection_axiom_check(mc_structure(g), g, good).nondegeneracy
    dx = OneForm.coordinate('x')
    bad = Coframe([dx, dx, OneForm.coordinate('u1'), OneForm.coordinate('u2'),
                   OneForm.coordinate('u3')], names)
    assert not connection_axiom_check(mc_structure(g), g, bad).nondegeneracy


def test_verify_model():
    checks = verify_model()
    assert checks['passed']
    assert checks['axioms'].to_dict()['passed']
    assert checks['template'].passed
    assert checks['template'].checked == len(LABELS) * 15
    assert checks['template_axioms'].passed


def test_compare_templates():
    """A nonzero invariant shows up as a mismatch in exactly its slots."""
    values = dict((name, ZERO) for name in INVARIANT_NAMES)
    values['I5'] = Expression.coordinate('x')
    template = p5_template(InvariantSet(values))
    report = compare_templates('template', template, mc_structure(model_algebra()))
    assert not report.passed
    assert [v.where for v in report.violations] == [('drho', 'tau', 'sigma')]
    # the alpha slots are untouched, so the axioms still hold
    assert connection_axiom_check(template, model_algebra()).passed


def run_all_tests():
    """Run all tests."""
    print("=" * 50)
    print("Model Tests")
    print("=" * 50)

    test_model_graph()
    test_manifold_documents()
    test_bracket_table()
    test_jacobi()
    test_conjugation_automorphism()
    test_ad_spectrum()
    test_maurer_cartan()
    test_connection_axioms()
    test_template_matches_model()
    test_nondegeneracy_with_coframe()
    test_verify_model()
    test_compare_templates()

    print("\n" + "=" * 50)
    print("Tests completed!")
    print("=" * 50)


if __name__ == '__main__':
    run_all_tests()
