"""
The model manifold, its symmetry algebra and the Cartan-connection checks.

The model is the graph

    v1 = x^2 + y^2
    v2 = 2x(x^2 + y^2)
    v3 = (x^2 + y^2)(7/2 x^2 - 1/2 y^2)

whose CR-automorphism algebra is six-dimensional with basis
(e_alpha, e_tau, e_sigma, e_rho, e_zeta, e_zetabar). Its Maurer-Cartan forms
satisfy the structure equations every class III_2 manifold reduces to when
all invariants vanish.

Flow:
1. model_manifold / builtin_manifold: graphs loaded from data/*.json
2. model_algebra: bracket table, check_jacobi, check_conjugation
3. maurer_cartan_check: dw^k = -sum c^k_ij w^i ^ w^j against the display, d^2 = 0
4. p5_template + connection_axiom_check: the three connection axioms
"""

import sys
import os
import json
import logging
from itertools import combinations

sys.path.append(os.path.dirname(os.path.abspath(__file__)))

import sympy

from crgeom import GraphedManifold
from errors import CartanError, ManifoldFileError
from expr_parser import parse_expression
from stages.invariants import INVARIANT_NAMES, InvariantSet
from symexpr import I, ZERO, Expression, Point, conjugate

log = logging.getLogger(__name__)

DATA_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'data')

LABELS = ('alpha', 'tau', 'sigma', 'rho', 'zeta', 'zetabar')

# Conjugation fixes the real directions and swaps zeta with zetabar
CONJUGATE_LABEL = {'alpha': 'alpha', 'tau': 'tau', 'sigma': 'sigma', 'rho': 'rho',
                   'zeta': 'zetabar', 'zetabar': 'zeta'}

MODEL_PHI = (
    'x^2+y^2',
    '2*x*(x^2+y^2)',
    '(x^2+y^2)*(7/2*x^2-1/2*y^2)',
)

BUILTIN_MANIFOLDS = ('model', 'flat', 'levi_sphere', 'model_no_phi3', 'model_quintic')


# Manifold files

def manifold_from_document(document, source='<document>'):
    """
    Build a GraphedManifold from a parsed manifold file.

    Args:
        document: dict with 'name', 'phi' (three expression strings) and
            optionally 'base_point' (five rational strings)
        source: label used in error messages

    Returns:
        GraphedManifold

    Raises:
        ManifoldFileError: schema, parse or reality problems
    """
    if not isinstance(document, dict):
        raise ManifoldFileError("%s: top level must be an object" % source)
    phi_texts = document.get('phi')
    if not isinstance(phi_texts, list) or len(phi_texts) != 3:
        raise ManifoldFileError("%s: 'phi' must be a list of three expressions" % source)

    phi = []
    for index, text in enumerate(phi_texts):
        if not isinstance(text, str):
            raise ManifoldFileError("%s: phi_%d is not a string" % (source, index + 1))
        try:
            phi.append(parse_expression(text))
        except CartanError as error:
            raise ManifoldFileError("%s: phi_%d: %s" % (source, index + 1, error))

    base_point = None
    if document.get('base_point') is not None:
        try:
            base_point = Point(document['base_point'])
        except (TypeError, ValueError) as error:
            raise ManifoldFileError("%s: base_point: %s" % (source, error))

    name = document.get('name') or os.path.splitext(os.path.basename(source))[0]
    try:
        return GraphedManifold(name, phi, base_point)
    except CartanError as error:
        raise ManifoldFileError("%s: %s" % (source, error), error.residual)


def load_manifold(path):
    """
    Load a manifold file.

    Args:
        path: JSON file path

    Returns:
        GraphedManifold

    Raises:
        ManifoldFileError: missing file, invalid JSON or bad contents
    """
    try:
        with open(path, 'r', encoding='utf-8') as f:
            document = json.load(f)
    except OSError as error:
        raise ManifoldFileError("cannot read %s: %s" % (path, error.strerror or error))
    except ValueError as error:
        raise ManifoldFileError("%s is not valid JSON: %s" % (path, error))
    return manifold_from_document(document, path)


def builtin_manifold(name):
    """
    One of the bundled manifolds.

    Args:
        name: one of BUILTIN_MANIFOLDS

    Returns:
        GraphedManifold
    """
    if name not in BUILTIN_MANIFOLDS:
        raise ManifoldFileError("unknown builtin manifold %r (choose from %s)"
                                % (name, ', '.join(BUILTIN_MANIFOLDS)))
    if name == 'model':
        return model_manifold()
    return load_manifold(os.path.join(DATA_DIR, name + '.json'))


def model_manifold():
    """The model graph, from data/model.json or the in-code default."""
    try:
        return load_manifold(os.path.join(DATA_DIR, 'model.json'))
    except ManifoldFileError:
        log.warning("data/model.json unavailable; using the built-in model graph")
        return GraphedManifold('model', [parse_expression(text) for text in MODEL_PHI])


# Lie algebra

class LieAlgebra(object):
    """
    Finite-dimensional Lie algebra given by structure constants.

    brackets maps a label pair (i, j) to {k: c^k_ij}; [e_j, e_i] is filled in
    by antisymmetry and missing pairs are zero.
    """

    def __init__(self, labels, brackets, conjugation=None):
        self.labels = tuple(labels)
        self.conjugation = dict(conjugation or {})
        self.constants = {}
        for (i, j), image in brackets.items():
            if i == j:
                raise ValueError("[e_%s, e_%s] must vanish" % (i, j))
            image = dict((k, sympy.sympify(v)) for k, v in image.items() if v != 0)
            self.constants[(i, j)] = image
            self.constants[(j, i)] = dict((k, -v) for k, v in image.items())

    @property
    def dimension(self):
        return len(self.labels)

    def constant(self, k, i, j):
        """c^k_ij."""
        return self.constants.get((i, j), {}).get(k, sympy.Integer(0))

    def bracket_basis(self, i, j):
        return dict(self.constants.get((i, j), {}))

    def bracket(self, u, v):
        """
        Bracket of two vectors given as {label: coefficient}.
        """
        result = {}
        for i, a in u.items():
            for j, b in v.items():
                for k, c in self.constants.get((i, j), {}).items():
                    result[k] = result.get(k, 0) + a * b * c
        return dict((k, sympy.expand(c)) for k, c in result.items() if sympy.expand(c) != 0)

    def ad_matrix(self, label):
        """Matrix of ad(e_label); column i is [e_label, e_i]."""
        return sympy.Matrix(self.dimension, self.dimension,
                            lambda k, i: self.constant(self.labels[k], label, self.labels[i]))

    def with_bracket(self, i, j, image):
        """Copy of the algebra with [e_i, e_j] replaced."""
        brackets = dict(((a, b), v) for (a, b), v in self.constants.items()
                        if self.labels.index(a) < self.labels.index(b))
        if self.labels.index(i) > self.labels.index(j):
            i, j = j, i
            image = dict((k, -v) for k, v in image.items())
        brackets[(i, j)] = image
        return LieAlgebra(self.labels, brackets, self.conjugation)


def model_algebra():
    """
    CR-automorphism algebra of the model; brackets not listed vanish.

    Examples:
        >>> model_algebra().constant('tau', 'alpha', 'tau')
        -4
    """
    brackets = {
        ('alpha', 'tau'): {'tau': -4},
        ('alpha', 'sigma'): {'sigma': -3},
        ('alpha', 'rho'): {'rho': -2},
        ('alpha', 'zeta'): {'zeta': -1},
        ('alpha', 'zetabar'): {'zetabar': -1},
        ('sigma', 'zeta'): {'tau': -1},
        ('sigma', 'zetabar'): {'tau': -1},
        ('rho', 'zeta'): {'sigma': -1},
        ('rho', 'zetabar'): {'sigma': -1},
        ('zeta', 'zetabar'): {'rho': -sympy.I},
    }
    return LieAlgebra(LABELS, brackets, CONJUGATE_LABEL)


def abelian_algebra(labels=LABELS):
    return LieAlgebra(labels, {})


class Violation(object):
    """One failed identity: where it failed and what was left over."""

    def __init__(self, where, residual):
        self.where = where
        self.residual = residual

    def to_dict(self):
        return {'where': list(self.where), 'residual': _format_vector(self.residual)}

    def __repr__(self):
        return 'Violation(%s, %s)' % (self.where, self.residual)


class CheckReport(object):
    """Verdict of an algebraic check with its violations."""

    def __init__(self, name, checked, violations):
        self.name = name
        self.checked = checked
        self.violations = violations

    @property
    def passed(self):
        return not self.violations

    def to_dict(self):
        return {
            'check': self.name,
            'checked': self.checked,
            'passed': self.passed,
            'violations': [v.to_dict() for v in self.violations],
        }


def _format_vector(vector):
    if isinstance(vector, dict):
        return dict((str(k), str(v)) for k, v in sorted(vector.items(), key=lambda kv: str(kv[0])))
    return str(vector)


def check_jacobi(g):
    """
    Jacobi identity on every triple of basis elements.

    Args:
        g: LieAlgebra

    Returns:
        CheckReport over all (n choose 3) triples
    """
    violations = []
    triples = list(combinations(g.labels, 3))
    for a, b, c in triples:
        total = {}
        for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
            inner = g.bracket({y: 1}, {z: 1})
            for k, v in g.bracket({x: 1}, inner).items():
                total[k] = total.get(k, 0) + v
        total = dict((k, v) for k, v in total.items() if sympy.expand(v) != 0)
        if total:
            violations.append(Violation((a, b, c), total))
    log.debug("Jacobi: %d triples, %d violations", len(triples), len(violations))
    return CheckReport('jacobi', len(triples), violations)


def check_conjugation(g):
    """Conjugation of labels and constants is a Lie-algebra automorphism."""
    violations = []
    pairs = list(combinations(g.labels, 2))
    for i, j in pairs:
        image = g.bracket_basis(i, j)
        expected = dict((g.conjugation.get(k, k), sympy.conjugate(v)) for k, v in image.items())
        actual = g.bracket_basis(g.conjugation.get(i, i), g.conjugation.get(j, j))
        residual = dict((k, sympy.expand(expected.get(k, 0) - actual.get(k, 0)))
                        for k in set(expected) | set(actual))
        residual = dict((k, v) for k, v in residual.items() if v != 0)
        if residual:
            violations.append(Violation((i, j), residual))
    return CheckReport('conjugation', len(pairs), violations)


def ad_spectrum(g, label='alpha'):
    """
    Eigenvalues of ad(e_label) in basis order when the matrix is diagonal.

    Returns:
        tuple of sympy numbers, or None when ad(e_label) is not diagonal
    """
    matrix = g.ad_matrix(label)
    if not matrix.is_diagonal():
        return None
    return tuple(matrix[k, k] for k in range(g.dimension))


# Maurer-Cartan structure

class StructureTemplate(object):
    """
    Structure equations dw^k = sum_{i<j} coefficient w^i ^ w^j over labelled
    1-forms, with Expression coefficients keyed by label pairs in basis order.
    """

    def __init__(self, labels, equations):
        self.labels = tuple(labels)
        self.equations = {}
        for k in self.labels:
            slot = {}
            for (i, j), value in equations.get(k, {}).items():
                if not isinstance(value, Expression):
                    value = Expression.constant(value)
                if self.labels.index(i) > self.labels.index(j):
                    i, j, value = j, i, -value
                if not value.is_zero():
                    slot[(i, j)] = slot.get((i, j), ZERO) + value
            self.equations[k] = slot

    def coefficient(self, k, i, j):
        if i == j:
            return ZERO
        if self.labels.index(i) > self.labels.index(j):
            return -self.equations[k].get((j, i), ZERO)
        return self.equations[k].get((i, j), ZERO)

    def contraction(self, label, k):
        """e_label -| dw^k as {j: coefficient of w^j}."""
        result = {}
        for j in self.labels:
            value = self.coefficient(k, label, j)
            if not value.is_zero():
                result[j] = value
        return result

    def to_dict(self):
        return dict((k, dict(('%s^%s' % pair, str(value))
                             for pair, value in sorted(slot.items())))
                    for k, slot in self.equations.items())


# Alias kept for reports that speak of the Maurer-Cartan structure
MCStructure = StructureTemplate


def mc_structure(g):
    """Maurer-Cartan equations dw^k = -sum_{i<j} c^k_ij w^i ^ w^j of g."""
    equations = dict((k, {}) for k in g.labels)
    for i, j in combinations(g.labels, 2):
        for k, c in g.bracket_basis(i, j).items():
            equations[k][(i, j)] = Expression.constant(-c)
    return StructureTemplate(g.labels, equations)


def model_mc_display():
    """The model's Maurer-Cartan equations as displayed."""
    return StructureTemplate(LABELS, {
        'tau': {('alpha', 'tau'): 4, ('sigma', 'zeta'): 1, ('sigma', 'zetabar'): 1},
        'sigma': {('alpha', 'sigma'): 3, ('rho', 'zeta'): 1, ('rho', 'zetabar'): 1},
        'rho': {('alpha', 'rho'): 2, ('zeta', 'zetabar'): I},
        'zeta': {('alpha', 'zeta'): 1},
        'zetabar': {('alpha', 'zetabar'): 1},
        'alpha': {},
    })


def _add_three(result, indices, value, labels):
    """Accumulate value * w^a ^ w^b ^ w^c into a sorted-key 3-form."""
    if len(set(indices)) < 3:
        return
    positions = [labels.index(name) for name in indices]
    sign = 1
    for a in range(3):
        for b in range(a + 1, 3):
            if positions[a] > positions[b]:
                sign = -sign
    key = tuple(sorted(indices, key=labels.index))
    result[key] = result.get(key, ZERO) + (value if sign > 0 else -value)


def d_squared(st):
    """
    d(dw^k) for every k as 3-forms; all zero exactly when the structure is consistent.

    d(w^i ^ w^j) = dw^i ^ w^j - w^i ^ dw^j.

    Returns:
        dict k -> {sorted label triple: nonzero Expression}
    """
    labels = st.labels
    result = {}
    for k in labels:
        three = {}
        for (i, j), a in st.equations[k].items():
            for (p, q), b in st.equations[i].items():
                _add_three(three, (p, q, j), a * b, labels)
            for (p, q), b in st.equations[j].items():
                _add_three(three, (i, p, q), -(a * b), labels)
        result[k] = dict((key, value) for key, value in three.items() if not value.is_zero())
    return result


def compare_templates(name, st, reference):
    """Slot-by-slot comparison of two templates over the same labels."""
    mismatches = []
    checked = 0
    for k in reference.labels:
        for i, j in combinations(reference.labels, 2):
            checked += 1
            residual = st.coefficient(k, i, j) - reference.coefficient(k, i, j)
            if not residual.is_zero():
                mismatches.append(Violation(('d' + k, i, j), residual))
    return CheckReport(name, checked, mismatches)


def maurer_cartan_check(g):
    """
    Compare the Maurer-Cartan equations of g with the model's display and check d^2 = 0.

    Args:
        g: LieAlgebra

    Returns:
        dict with 'display' and 'd_squared' CheckReports and 'passed'
    """
    st = mc_structure(g)
    display_report = compare_templates('maurer_cartan_display', st, model_mc_display())

    squares = d_squared(st)
    violations = [Violation(('dd' + k,), dict(('^'.join(key), value) for key, value in three.items()))
                  for k, three in squares.items() if three]

    square_report = CheckReport('d_squared', len(LABELS), violations)
    log.debug("Maurer-Cartan: %d mismatches, %d nonzero dd",
              len(display_report.violations), len(violations))
    return {
        'display': display_report,
        'd_squared': square_report,
        'structure': st,
        'passed': display_report.passed and square_report.passed,
    }


def p5_template(invariants):
    """
    Structure equations on the section a = 1 with Lambda in the alpha slot.

    Args:
        invariants: InvariantSet

    Returns:
        StructureTemplate over LABELS
    """
    v = invariants.values
    I1 = v['I1']
    half = Expression.constant('1/2')
    zeta = {
        ('alpha', 'zeta'): 1,
        ('tau', 'sigma'): v['I10'],
        ('tau', 'rho'): v['I11'],
        ('tau', 'zeta'): v['I12'],
        ('tau', 'zetabar'): v['I13'],
        ('sigma', 'rho'): v['I14'],
        ('sigma', 'zeta'): v['I15'],
    }
    zetabar = dict(((CONJUGATE_LABEL[i], CONJUGATE_LABEL[j]),
                    conjugate(value) if isinstance(value, Expression) else value)
                   for (i, j), value in zeta.items())
    return StructureTemplate(LABELS, {
        'alpha': {},
        'tau': {
            ('alpha', 'tau'): 4,
            ('tau', 'zeta'): I1,
            ('tau', 'zetabar'): -I1,
            ('sigma', 'rho'): 3 * I1,
            ('sigma', 'zeta'): 1,
            ('sigma', 'zetabar'): 1,
        },
        'sigma': {
            ('alpha', 'sigma'): 3,
            ('tau', 'rho'): v['I2'],
            ('tau', 'zeta'): v['I3'],
            ('tau', 'zetabar'): conjugate(v['I3']),
            ('sigma', 'rho'): v['I4'],
            ('sigma', 'zeta'): -half * I1,
            ('sigma', 'zetabar'): half * I1,
            ('rho', 'zeta'): 1,
            ('rho', 'zetabar'): 1,
        },
        'rho': {
            ('alpha', 'rho'): 2,
            ('tau', 'sigma'): v['I5'],
            ('tau', 'rho'): v['I6'],
            ('tau', 'zeta'): v['I7'],
            ('tau', 'zetabar'): conjugate(v['I7']),
            ('sigma', 'rho'): v['I8'],
            ('sigma', 'zeta'): v['I9'],
            ('sigma', 'zetabar'): conjugate(v['I9']),
            ('rho', 'zeta'): -half * I1,
            ('rho', 'zetabar'): half * I1,
            ('zeta', 'zetabar'): I,
        },
        'zeta': zeta,
        'zetabar': zetabar,
    })


class AxiomReport(object):
    """The three Cartan-connection axioms with the offending components."""

    def __init__(self, pairing, equivariance, nondegeneracy, failures):
        self.pairing = pairing
        self.equivariance = equivariance
        self.nondegeneracy = nondegeneracy
        self.failures = failures

    @property
    def passed(self):
        return self.pairing and self.equivariance and self.nondegeneracy

    def to_dict(self):
        return {
            'pairing': self.pairing,
            'equivariance': self.equivariance,
            'nondegeneracy': self.nondegeneracy,
            'passed': self.passed,
            'failures': [{'axiom': axiom, 'component': component, 'detail': detail}
                         for axiom, component, detail in self.failures],
        }


def connection_axiom_check(st, g, coframe=None):
    """
    Check the Cartan-connection axioms for a structure template.

    1. Pairing: the alpha slot exists and d(alpha) has no alpha terms
    2. Equivariance: e_alpha -| dw^k equals -ad(e_alpha) w^k read from g
    3. Nondegeneracy: the labels form a basis of g and, when a coframe of
       the base is given, its determinant does not vanish identically

    Args:
        st: StructureTemplate (model Maurer-Cartan equations or p5_template)
        g: LieAlgebra
        coframe: optional Coframe of the five base forms

    Returns:
        AxiomReport
    """
    failures = []

    # Axiom 1
    pairing = 'alpha' in st.labels
    if not pairing:
        failures.append(('pairing', 'alpha', 'no alpha slot'))
    else:
        stray = st.contraction('alpha', 'alpha')
        if stray:
            pairing = False
            failures.append(('pairing', 'alpha', 'd(alpha) has alpha terms on %s'
                             % ', '.join(sorted(stray))))

    # Axiom 2
    equivariance = pairing
    if pairing:
        for k in st.labels:
            if k == 'alpha':
                continue
            actual = st.contraction('alpha', k)
            for j in st.labels:
                if j == 'alpha':
                    continue
                expected = Expression.constant(-g.constant(k, 'alpha', j))
                residual = actual.get(j, ZERO) - expected
                if not residual.is_zero():
                    equivariance = False
                    failures.append(('equivariance', k,
                                     'coefficient of %s is %s, expected %s'
                                     % (j, actual.get(j, ZERO), expected)))

    # Axiom 3
    nondegeneracy = st.labels == g.labels and len(set(st.labels)) == g.dimension
    if not nondegeneracy:
        failures.append(('nondegeneracy', 'labels', 'template labels are not a basis of g'))
    if coframe is not None:
        from linalg import determinant
        if determinant(coframe.matrix()).is_zero():
            nondegeneracy = False
            failures.append(('nondegeneracy', 'coframe', 'determinant vanishes identically'))

    report = AxiomReport(pairing, equivariance, nondegeneracy, failures)
    log.debug("connection axioms: %s", report.to_dict())
    return report


def verify_model():
    """
    Every algebra-level check on the model.

    Returns:
        dict of reports, plus an overall 'passed'
    """
    g = model_algebra()
    jacobi = check_jacobi(g)
    conjugation = check_conjugation(g)
    mc = maurer_cartan_check(g)
    axioms = connection_axiom_check(mc['structure'], g)
    spectrum = ad_spectrum(g)

    # vanishing invariants must give back the Maurer-Cartan equations
    template = p5_template(InvariantSet(dict((name, ZERO) for name in INVARIANT_NAMES)))
    template_report = compare_templates('template_at_zero', template, mc['structure'])
    template_axioms = connection_axiom_check(template, g)
    return {
        'jacobi': jacobi,
        'conjugation': conjugation,
        'maurer_cartan': mc,
        'axioms': axioms,
        'template': template_report,
        'template_axioms': template_axioms,
        'ad_alpha_spectrum': spectrum,
        'passed': (jacobi.passed and conjugation.passed and mc['passed']
                   and axioms.passed and template_report.passed and template_axioms.passed
                   and spectrum == (0, -4, -3, -2, -1, -1)),
    }


def demo():
    """Run the model through the whole pipeline and print what comes out."""
    from reducer import reduce_manifold

    result = reduce_manifold(model_manifold())
    print("Classification: %s ranks=%s" % (result.member, result.class_report.ranks))
    for name, value in sorted(result.fundamentals.as_dict().items()):
        print("  %s = %s" % (name, value))
    for name, value in sorted(result.normalizations.as_dict().items()):
        print("  %s = %s" % (name, value))
    for name, value in result.invariants.items():
        print("  %s = %s" % (name, value))
    checks = verify_model()
    print("Model algebra checks passed: %s" % checks['passed'])


if __name__ == '__main__':
    demo()
