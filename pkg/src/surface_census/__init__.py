"""Census and generating-function toolkit for cubic maps and multigraphs on surfaces.

Modules: ``series`` (exact truncated series, polynomials, resultants),
``maps`` (rooted maps, surgery, census), ``graphs`` (labelled cubic
multigraphs), ``gf`` (equation systems and their solvers), ``asymptotics``
(certified singularities and transfer) and ``cli``.
"""

__version__ = "0.1.0"
