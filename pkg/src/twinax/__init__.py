"""twinax: exact-arithmetic workbench for first-order kinematics.

Checks kinematics axioms against concrete models with certificates or
replayable counterexample witnesses, classifies Minkowski spheres, and
decides twin-paradox verdicts through their geometric characterization.
"""

__version__ = "0.1.0"
