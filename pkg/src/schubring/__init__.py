"""Exact Schubert / theta / eta polynomial calculus for the classical groups,
with a mechanical verification harness for the underlying ring identities.
"""

__version__ = "0.1.0"
