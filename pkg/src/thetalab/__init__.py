"""Workbench for finite presheaves on an iterated shape category.

Modules
-------
theta_core        shape objects and canonical morphisms
presheaf_engine   finite presheaves, maps, products, pushouts, bounded homs
upsilon           one-composable-string cell constructors, faces, shells
cat_one           finite categories, nerves, reconstruction, generation
ncat_tools        category checks, truncations, interiors, cardinality
limits_lab        diagrams, limits, pseudo-cone limits, bootstrap, sites
homotopy_loc      localization, group completion, presentation comparisons
cli               command-line front end over the fixture corpus
"""

__version__ = "0.1.0"
