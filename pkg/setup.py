"""Invsurf is a suite of exact tools for invariant algebraic surfaces of polynomial vector fields.

Requires:
    NumPy (http://www.numpy.org)
    SymPy (https://www.sympy.org)
    mpmath (https://mpmath.org)

Modules:

exact:
    create_tower, FieldElem, QuadExt, sqrt_in_field, rational_kernel, rank

poly:
    MPoly, PolyVectorField, lie_derivative, divergence, exact_divide,
    sylvester_resultant, char_poly

parse_io:
    parse_poly, print_poly, load_field_spec, load_gamma_spec, load_lines

transform:
    make_chart, homogenize, poincare_poly, poincare_field, reduce_dim,
    reduce_dim_alpha, reduction_infinity_free

infinity:
    verify_invariant_line, infinity_spectrum, classify_conditions,
    property_e_report

distinguished:
    construct_distinguished, seventh_idempotent, sample_genericity

darboux:
    verify_semi_invariant, search_semi_invariants, verify_jacobi_multiplier,
    bounds_report
"""

classifiers = """\
Development Status :: 4 - Beta
Environment :: Console
Intended Audience :: Science/Research
Intended Audience :: Developers
License :: OSI Approved :: BSD License
Operating System :: OS Independent
Programming Language :: Python :: 3
Topic :: Scientific/Engineering :: Mathematics
Topic :: Software Development :: Libraries :: Python Modules
"""

doclines = __doc__.split("\n")

if __name__ == '__main__':
    from setuptools import setup
    setup(name = "invsurf",
          version = '0.1.0',
          description = doclines[0],
          long_description = "\n".join(doclines[2:]),
          packages = ['invsurf', 'invsurf.test'],
          package_data = {'invsurf': ['data/*.json', 'requirements.txt']},
          license = 'BSD',
          platforms = ["any"],
          python_requires = '>=3.7',
          install_requires = ['numpy', 'sympy', 'mpmath'],
          extras_require = {'test': ['pytest']},
          entry_points = {'console_scripts': ['invsurf = invsurf.cli:main']},
          classifiers = list(filter(None, classifiers.split("\n"))),
          )
