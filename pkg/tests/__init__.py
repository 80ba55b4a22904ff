"""
Test suite for pybhw.

One module per library module: ordinal notations, formulas and sequents,
the Tait checker, RS* certificates and their transformations, the tree
model, the property suites and the command line.
"""
