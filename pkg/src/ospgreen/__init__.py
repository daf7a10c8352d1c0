"""Exact computations with osp(2n+1/2m), its Green generators, and U_q[osp(2n+1/2m)].

Modules:

* :mod:`ospgreen.scalars`       exact coefficients (rationals, Q(sqrt 2), Q(q))
* :mod:`ospgreen.superalg`      the free Z2-graded algebra and brackets
* :mod:`ospgreen.dsl`           a small expression language for relations
* :mod:`ospgreen.presentations` Cartan matrix, Chevalley and Green presentations
* :mod:`ospgreen.matrixrep`     the defining matrix realization (classical checks)
* :mod:`ospgreen.rewrite`       oriented rewriting and bounded completion
* :mod:`ospgreen.verify`        verification suites for the deformed algebra
* :mod:`ospgreen.cli`           the ``ospgreen`` command
"""

__version__ = "0.1.0"
